//! Buchberger's algorithm with the Gebauer–Möller pair update. The same pair
//! machinery drives the local standard basis computation in `mora`.

use super::{make_monic, reduce_full, sort_terms, spoly, support_mask, MonomialOrder, Terms};
use crate::field::Field;
use crate::poly::Monomial;

#[derive(Clone, Debug)]
pub(crate) struct Pair {
    pub i: usize,
    pub j: usize,
    pub lcm: Monomial,
}

/// Pair bookkeeping shared by the global and local algorithms.
pub(crate) struct PairSet {
    pub lms: Vec<Monomial>,
    pub alive: Vec<bool>,
    pub pairs: Vec<Pair>,
    use_product: bool,
}

impl PairSet {
    pub fn new(use_product: bool) -> Self {
        PairSet { lms: Vec::new(), alive: Vec::new(), pairs: Vec::new(), use_product }
    }

    /// Registers a new basis element with leading monomial `lm` and updates
    /// the critical pairs (chain criterion, plus the product criterion when
    /// enabled).
    pub fn insert(&mut self, lm: Monomial) -> usize {
        let h = self.lms.len();
        struct Cand {
            i: usize,
            lcm: Monomial,
            coprime: bool,
        }
        let mut c: Vec<Cand> = (0..h)
            .filter(|&i| self.alive[i])
            .map(|i| Cand {
                i,
                lcm: self.lms[i].lcm(&lm),
                coprime: self.use_product && self.lms[i].is_coprime(&lm),
            })
            .collect();
        let mut d: Vec<Cand> = Vec::new();
        while let Some(p) = c.pop() {
            let dominated =
                c.iter().any(|q| q.lcm.divides(&p.lcm)) || d.iter().any(|q| q.lcm.divides(&p.lcm));
            if p.coprime || !dominated {
                d.push(p);
            }
        }
        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(lm.divides(&p.lcm) && lms[p.i].lcm(&lm) != p.lcm && lms[p.j].lcm(&lm) != p.lcm)
        });
        for p in d.into_iter().filter(|p| !p.coprime) {
            self.pairs.push(Pair { i: p.i, j: h, lcm: p.lcm });
        }
        for i in 0..h {
            if self.alive[i] && lm.divides(&self.lms[i]) {
                self.alive[i] = false;
            }
        }
        self.lms.push(lm);
        self.alive.push(true);
        h
    }

    /// Removes and returns the pair with the smallest lcm under `key`.
    pub fn pop_min<F: Fn(&Monomial, &Monomial) -> std::cmp::Ordering>(&mut self, key: F) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for k in 1..self.pairs.len() {
            if key(&self.pairs[k].lcm, &self.pairs[best].lcm) == std::cmp::Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` (monic, sorted by
/// ascending leading monomial). The unit ideal yields `[1]`, the zero ideal
/// an empty list.
pub(crate) fn groebner_basis<K: Field>(gens: &[Terms<K>], ord: &MonomialOrder) -> Vec<Terms<K>> {
    debug_assert!(ord.is_global());
    let mut basis: Vec<Terms<K>> = Vec::new();
    let mut masks: Vec<u64> = Vec::new();
    let mut ps = PairSet::new(true);

    let mut input: Vec<Terms<K>> = gens
        .iter()
        .filter(|g| !g.is_empty())
        .map(|g| {
            let mut t = sort_terms(g.clone(), ord);
            make_monic(&mut t);
            t
        })
        .collect();
    input.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));

    for g in input {
        let refs: Vec<&Terms<K>> = basis.iter().collect();
        let mut h = reduce_full(g, &refs, &masks, ord);
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        if h[0].0.is_one() {
            return vec![h];
        }
        masks.push(support_mask(&h[0].0));
        ps.insert(h[0].0.clone());
        basis.push(h);
    }

    while let Some(pair) = ps.pop_min(|a, b| ord.cmp(a, b)) {
        let s = spoly(&basis[pair.i], &basis[pair.j], ord);
        if s.is_empty() {
            continue;
        }
        let (refs, rmasks): (Vec<&Terms<K>>, Vec<u64>) = basis
            .iter()
            .zip(&masks)
            .zip(&ps.alive)
            .filter(|(_, &a)| a)
            .map(|((b, &m), _)| (b, m))
            .unzip();
        let mut h = reduce_full(s, &refs, &rmasks, ord);
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        if h[0].0.is_one() {
            return vec![h];
        }
        masks.push(support_mask(&h[0].0));
        ps.insert(h[0].0.clone());
        basis.push(h);
    }

    let minimal: Vec<Terms<K>> = basis
        .into_iter()
        .zip(ps.alive.iter())
        .filter(|(_, &a)| a)
        .map(|(b, _)| b)
        .collect();
    interreduce(minimal, ord)
}

/// Tail-reduces each element of a minimal Gröbner basis by the others.
fn interreduce<K: Field>(mut gb: Vec<Terms<K>>, ord: &MonomialOrder) -> Vec<Terms<K>> {
    gb.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
    let masks: Vec<u64> = gb.iter().map(|g| support_mask(&g[0].0)).collect();
    let mut out = Vec::with_capacity(gb.len());
    for k in 0..gb.len() {
        let (refs, rmasks): (Vec<&Terms<K>>, Vec<u64>) = gb
            .iter()
            .zip(&masks)
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, (g, &m))| (g, m))
            .unzip();
        let head = gb[k][0].clone();
        let tail = reduce_full(gb[k][1..].to_vec(), &refs, &rmasks, ord);
        let mut t = Vec::with_capacity(tail.len() + 1);
        t.push(head);
        t.extend(tail);
        out.push(t);
    }
    out
}
