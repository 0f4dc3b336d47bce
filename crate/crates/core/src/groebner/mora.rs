//! Standard bases for the local degree order via Mora's tangent cone
//! algorithm: S-polynomials are reduced with the ecart-driven weak normal
//! form, which inserts intermediate results into the reducer set.

use super::buchberger::{groebner_basis, PairSet};
use super::{make_monic, sort_terms, spoly, support_mask, MonomialOrder, Terms};
use crate::field::Field;
use crate::poly::{merge, Monomial};

fn max_degree<K>(t: &Terms<K>) -> u32 {
    t.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
}

fn ecart<K>(t: &Terms<K>) -> u32 {
    max_degree(t) - t[0].0.degree()
}

struct Reducer<'a, K: Field> {
    terms: std::borrow::Cow<'a, Terms<K>>,
    ecart: u32,
    mask: u64,
}

/// Mora's weak normal form of `h` with respect to `basis` (monic, sorted in
/// the local order). The result is zero iff `h` lies in the ideal of the
/// local ring generated by `basis`, when `basis` is a standard basis.
pub(crate) fn mora_normal_form<K: Field>(h: Terms<K>, basis: &[Terms<K>], ord: &MonomialOrder) -> Terms<K> {
    let mut t: Vec<Reducer<'_, K>> = basis
        .iter()
        .map(|g| Reducer { terms: std::borrow::Cow::Borrowed(g), ecart: ecart(g), mask: support_mask(&g[0].0) })
        .collect();
    let mut h = h;
    loop {
        if h.is_empty() {
            return h;
        }
        let lm = h[0].0.clone();
        let hm = support_mask(&lm);
        let mut best: Option<usize> = None;
        for (k, r) in t.iter().enumerate() {
            if r.mask & !hm == 0 && r.terms[0].0.divides(&lm) {
                match best {
                    Some(b) if t[b].ecart <= r.ecart => {}
                    _ => best = Some(k),
                }
                if r.ecart == 0 {
                    break;
                }
            }
        }
        let Some(b) = best else { return h };
        let eh = ecart(&h);
        if t[b].ecart > eh {
            let mut hm_terms = h.clone();
            make_monic(&mut hm_terms);
            t.push(Reducer { terms: std::borrow::Cow::Owned(hm_terms), ecart: eh, mask: hm });
        }
        let g = &t[b].terms;
        let q = lm.div(&g[0].0);
        let coef = h[0].1.div(&g[0].1).neg();
        h = merge(&h[1..], &g[1..], &coef, Some(&q), ord);
    }
}

/// Standard basis for [`MonomialOrder::NegDegRevLex`] by Lazard's method:
/// homogenize with an extra variable, compute a Gröbner basis in
/// [`MonomialOrder::HomogenizedLocal`] and dehomogenize. Elements are monic,
/// sorted in the local order, with minimal leading monomials; a unit leading
/// monomial means the ideal is the whole local ring.
pub(crate) fn standard_basis<K: Field>(gens: &[Terms<K>]) -> Vec<Terms<K>> {
    let local = MonomialOrder::NegDegRevLex;
    let homog: Vec<Terms<K>> = gens
        .iter()
        .filter(|g| !g.is_empty())
        .map(|g| {
            let d = max_degree(g);
            g.iter()
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.push((d - m.degree()) as u16);
                    (Monomial::from_exponents(&e), c.clone())
                })
                .collect()
        })
        .collect();
    let gb = groebner_basis(&homog, &MonomialOrder::HomogenizedLocal);
    let mut out: Vec<Terms<K>> = gb
        .into_iter()
        .map(|g| {
            let t: Terms<K> = g
                .into_iter()
                .map(|(m, c)| {
                    let e = m.exponents();
                    (Monomial::from_exponents(&e[..e.len() - 1]), c)
                })
                .collect();
            let mut t = sort_terms(t, &local);
            make_monic(&mut t);
            t
        })
        .collect();
    if let Some(u) = out.iter().position(|t| t[0].0.is_one()) {
        return vec![out.swap_remove(u)];
    }
    out.sort_by(|a, b| a[0].0.degree().cmp(&b[0].0.degree()));
    let mut minimal: Vec<Terms<K>> = Vec::with_capacity(out.len());
    for t in out {
        if !minimal.iter().any(|g| g[0].0.divides(&t[0].0)) {
            minimal.push(t);
        }
    }
    minimal
}

/// Standard basis for [`MonomialOrder::NegDegRevLex`] by Mora's tangent
/// cone algorithm. Same conventions as [`standard_basis`].
pub(crate) fn mora_standard_basis<K: Field>(gens: &[Terms<K>]) -> Vec<Terms<K>> {
    let ord = MonomialOrder::NegDegRevLex;
    let mut basis: Vec<Terms<K>> = Vec::new();
    let mut ps = PairSet::new(false);
    let mut input: Vec<Terms<K>> = gens
        .iter()
        .filter(|g| !g.is_empty())
        .map(|g| {
            let mut t = sort_terms(g.clone(), &ord);
            make_monic(&mut t);
            t
        })
        .collect();
    input.sort_by(|a, b| ord.cmp(&b[0].0, &a[0].0));
    for g in input {
        let mut h = mora_normal_form(g, &basis, &ord);
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        if h[0].0.is_one() {
            return vec![h];
        }
        ps.insert(h[0].0.clone());
        basis.push(h);
    }
    // Pairs are processed by ascending lcm degree (sugar-like for the
    // tangent cone), ties broken in the local order.
    while let Some(pair) = ps.pop_min(|a, b| a.degree().cmp(&b.degree()).then_with(|| ord.cmp(b, a))) {
        let s = spoly(&basis[pair.i], &basis[pair.j], &ord);
        if s.is_empty() {
            continue;
        }
        let mut h = mora_normal_form(s, &basis, &ord);
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        if h[0].0.is_one() {
            return vec![h];
        }
        ps.insert(h[0].0.clone());
        basis.push(h);
    }
    basis
        .into_iter()
        .zip(ps.alive.iter())
        .filter(|(_, &a)| a)
        .map(|(b, _)| b)
        .collect()
}
