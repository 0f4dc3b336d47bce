use std::cmp::Ordering;

use crate::poly::monomial::{revlex_tail, Monomial};

/// Monomial orders understood by the kernel.
///
/// All orders except [`MonomialOrder::NegDegRevLex`] are well-orders (global).
/// `NegDegRevLex` is the local degree order in which lower total degree is
/// larger, so that `1` is the largest monomial; it computes in the local ring
/// at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Grevlex on the eliminated block, ties broken by grevlex on the rest.
    BlockElimination(Vec<usize>),
    NegDegRevLex,
    /// Global order on a ring whose last variable homogenizes the others:
    /// total degree first, then the remaining variables in the local
    /// degree order. Bases of homogenized ideals in this order become local
    /// standard bases after setting the last variable to `1`.
    HomogenizedLocal,
}

impl MonomialOrder {
    pub fn block(eliminated: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = eliminated.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        assert!(!v.is_empty(), "block elimination order needs eliminated variables");
        MonomialOrder::BlockElimination(v)
    }

    pub fn is_global(&self) -> bool {
        !matches!(self, MonomialOrder::NegDegRevLex)
    }

    /// Compares two monomials; `Greater` means `a` is the larger one.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.cmp_grevlex(b),
            MonomialOrder::Lex => a.cmp_lex(b),
            MonomialOrder::NegDegRevLex => match b.degree().cmp(&a.degree()) {
                Ordering::Equal => revlex_tail(a.exponents(), b.exponents()),
                o => o,
            },
            MonomialOrder::HomogenizedLocal => {
                let (ea, eb) = (a.exponents(), b.exponents());
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                let k = ea.len() - 1;
                let da: u32 = ea[..k].iter().map(|&x| x as u32).sum();
                let db: u32 = eb[..k].iter().map(|&x| x as u32).sum();
                match db.cmp(&da) {
                    Ordering::Equal => revlex_tail(&ea[..k], &eb[..k]),
                    o => o,
                }
            }
            MonomialOrder::BlockElimination(elim) => {
                let (ea, eb) = (a.exponents(), b.exponents());
                let da: u32 = elim.iter().map(|&i| ea[i] as u32).sum();
                let db: u32 = elim.iter().map(|&i| eb[i] as u32).sum();
                if da != db {
                    return da.cmp(&db);
                }
                for &i in elim.iter().rev() {
                    if ea[i] != eb[i] {
                        return eb[i].cmp(&ea[i]);
                    }
                }
                let rest = |e: &[u16]| -> u32 {
                    e.iter()
                        .enumerate()
                        .filter(|(i, _)| !elim.contains(i))
                        .map(|(_, &x)| x as u32)
                        .sum()
                };
                match rest(ea).cmp(&rest(eb)) {
                    Ordering::Equal => {
                        for i in (0..ea.len()).rev() {
                            if !elim.contains(&i) && ea[i] != eb[i] {
                                return eb[i].cmp(&ea[i]);
                            }
                        }
                        Ordering::Equal
                    }
                    o => o,
                }
            }
        }
    }
}
