//! Choice of coefficient arithmetic for the heavy computations.
//!
//! Every quantity computed by this crate is an integer read off from
//! leading monomials, so it can be obtained modulo a large prime. The
//! modular mode runs the computation modulo two different primes and
//! accepts the answer only when both agree; otherwise, or when a
//! coefficient does not reduce, it falls back to exact rational arithmetic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{Field, Fp, Fq, Rational};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    /// Rational arithmetic throughout.
    #[default]
    Exact,
    /// Two primes near 2^61 and 2^62, with rational fallback on
    /// disagreement.
    Modular,
}

impl fmt::Display for Arithmetic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arithmetic::Exact => "exact",
            Arithmetic::Modular => "modular",
        })
    }
}

impl std::str::FromStr for Arithmetic {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(Arithmetic::Exact),
            "modular" => Ok(Arithmetic::Modular),
            _ => Err(format!("unknown arithmetic `{s}` (expected exact or modular)")),
        }
    }
}

/// A computation on one polynomial that can run over any field.
pub trait Computation {
    type Output: PartialEq;

    fn run<K: Field>(&self, f: &Polynomial<K>) -> Result<Self::Output>;
}

/// Runs `c` on `f` with the requested arithmetic.
pub fn evaluate<C: Computation>(c: &C, f: &Polynomial<Rational>, arith: Arithmetic) -> Result<C::Output> {
    if arith == Arithmetic::Modular {
        if let (Some(a), Some(b)) = (f.reduce_mod(), f.reduce_mod()) {
            let a: Polynomial<Fp> = a;
            let b: Polynomial<Fq> = b;
            let ra = c.run(&a);
            let rb = c.run(&b);
            match (ra, rb) {
                (Ok(x), Ok(y)) if x == y => return Ok(x),
                (Err(x), Err(y)) if x == y => return Err(x),
                _ => {}
            }
        }
    }
    c.run(f)
}
