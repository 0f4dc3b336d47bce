//! Coefficient fields.
//!
//! Everything user-facing is over [`Rational`]. The ideal kernel is generic
//! over [`Field`] so that the same code also runs over the prime field
//! [`Fp`], which is used to cross-check and to speed up heavy sweeps.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// Arithmetic required of a coefficient field.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    /// Image of a rational number, or `None` when its denominator is not
    /// invertible in this field.
    fn from_rational(q: &Rational) -> Option<Self>;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

/// The Mersenne prime 2^61 - 1.
pub const FP_MODULUS: u64 = (1u64 << 61) - 1;
/// The prime 2^62 - 57, used to confirm results obtained modulo
/// [`FP_MODULUS`].
pub const FQ_MODULUS: u64 = (1u64 << 62) - 57;

/// Element of the prime field of order `P` (an odd prime below 2^63).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct ModP<const P: u64>(u64);

/// Integers modulo [`FP_MODULUS`].
pub type Fp = ModP<FP_MODULUS>;
/// Integers modulo [`FQ_MODULUS`].
pub type Fq = ModP<FQ_MODULUS>;

impl<const P: u64> ModP<P> {
    pub fn new(v: u64) -> Self {
        ModP(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = ModP(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_bigint(n: &BigInt) -> Self {
        let m = BigInt::from(P);
        let r = n.mod_floor(&m);
        ModP(r.to_u64().expect("residue fits in u64"))
    }
}

#[inline]
fn reduce<const P: u64>(x: u128) -> u64 {
    if P == FP_MODULUS {
        let p = FP_MODULUS as u128;
        let folded = (x & p) + (x >> 61);
        let folded = (folded & p) + (folded >> 61);
        let r = folded as u64;
        if r >= FP_MODULUS {
            r - FP_MODULUS
        } else {
            r
        }
    } else {
        (x % P as u128) as u64
    }
}

impl<const P: u64> fmt::Display for ModP<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for ModP<P> {
    fn zero() -> Self {
        ModP(0)
    }
    fn one() -> Self {
        ModP(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        ModP(if s >= P { s - P } else { s })
    }
    fn sub(&self, other: &Self) -> Self {
        if self.0 >= other.0 {
            ModP(self.0 - other.0)
        } else {
            ModP(self.0 + P - other.0)
        }
    }
    fn mul(&self, other: &Self) -> Self {
        ModP(reduce::<P>(self.0 as u128 * other.0 as u128))
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            ModP(P - self.0)
        }
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }
    fn from_i64(v: i64) -> Self {
        if v >= 0 {
            ModP::new(v as u64)
        } else {
            ModP::new(v.unsigned_abs()).neg()
        }
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        let den = Self::from_bigint(q.denom());
        if den.is_zero() {
            return None;
        }
        Some(Self::from_bigint(q.numer()).div(&den))
    }
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn rational_string(q: &Rational) -> String {
    q.to_string()
}

/// Parses the output of [`rational_string`].
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub(crate) fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n / d` as a rational.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn abs_height(q: &Rational) -> u64 {
    q.numer().abs().bits().max(q.denom().bits())
}
