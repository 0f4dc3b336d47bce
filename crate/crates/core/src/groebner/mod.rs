//! Ideal-theoretic kernel: Gröbner bases for global orders, standard bases
//! for the local order at the origin, and the operations built on them
//! (quotients, saturation, elimination, dimension, local lengths and
//! Hilbert–Samuel multiplicities).

mod buchberger;
pub mod hilbert;
mod ideal;
mod mora;
pub mod order;

pub use ideal::{Basis, Ideal, LocalLength};
pub use order::MonomialOrder;

use crate::field::Field;
use crate::poly::merge;
use crate::poly::Monomial;

pub(crate) type Terms<K> = Vec<(Monomial, K)>;

/// Sorts terms descending in `ord`. The input has no duplicate monomials.
pub(crate) fn sort_terms<K: Field>(mut t: Terms<K>, ord: &MonomialOrder) -> Terms<K> {
    t.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    t
}

pub(crate) fn make_monic<K: Field>(t: &mut Terms<K>) {
    if let Some((_, c)) = t.first() {
        if !c.is_one() {
            let inv = c.inv();
            for (_, a) in t.iter_mut() {
                *a = a.mul(&inv);
            }
        }
    }
}

/// Bit `i` is set when variable `i` occurs; used to reject divisibility fast.
#[inline]
pub(crate) fn support_mask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &e)| if e > 0 { acc | (1u64 << (i % 64)) } else { acc })
}

/// S-polynomial of two monic term lists.
pub(crate) fn spoly<K: Field>(f: &Terms<K>, g: &Terms<K>, ord: &MonomialOrder) -> Terms<K> {
    let lf = &f[0].0;
    let lg = &g[0].0;
    let l = lf.lcm(lg);
    let mf = l.div(lf);
    let mg = l.div(lg);
    let a: Terms<K> = f[1..].iter().map(|(m, c)| (m.mul(&mf), c.mul(&g[0].1))).collect();
    merge(&a, &g[1..], &f[0].1.neg(), Some(&mg), ord)
}

/// Full reduction of `h` by the monic term lists in `basis`.
pub(crate) fn reduce_full<K: Field>(
    h: Terms<K>,
    basis: &[&Terms<K>],
    masks: &[u64],
    ord: &MonomialOrder,
) -> Terms<K> {
    let mut rem: Terms<K> = Vec::new();
    let mut cur = h;
    let mut start = 0;
    while start < cur.len() {
        let (m, c) = &cur[start];
        let mm = support_mask(m);
        let div = basis
            .iter()
            .zip(masks)
            .position(|(g, &gm)| gm & !mm == 0 && g[0].0.divides(m));
        match div {
            Some(k) => {
                let g = basis[k];
                let q = m.div(&g[0].0);
                let coef = c.neg();
                cur = merge(&cur[start + 1..], &g[1..], &coef, Some(&q), ord);
                start = 0;
            }
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    rem
}
