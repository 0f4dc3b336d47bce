use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::buchberger::groebner_basis;
use super::hilbert;
use super::mora::{mora_normal_form, mora_standard_basis, standard_basis};
use super::{reduce_full, sort_terms, support_mask, MonomialOrder, Terms};
use crate::error::{Error, Result};
use crate::field::{Field, Fp, ModP, Rational};
use crate::poly::{Monomial, Polynomial, Vars};

/// Upper bound on the number of successive quotients tried by
/// [`Ideal::saturate_by_quotients`].
pub const SATURATION_LIMIT: usize = 64;

/// Length of a local quotient ring: finite, or infinite when the origin is
/// not an isolated point of the zero set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalLength {
    Finite(u64),
    Infinite,
}

impl LocalLength {
    pub fn finite(self) -> Option<u64> {
        match self {
            LocalLength::Finite(v) => Some(v),
            LocalLength::Infinite => None,
        }
    }
}

impl fmt::Display for LocalLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalLength::Finite(v) => write!(f, "{v}"),
            LocalLength::Infinite => write!(f, "inf"),
        }
    }
}

/// A Gröbner basis (global order) or standard basis (local order).
#[derive(Clone, Debug)]
pub struct Basis<K: Field = Rational> {
    vars: Vars,
    order: MonomialOrder,
    polys: Vec<Terms<K>>,
    masks: Vec<u64>,
}

impl<K: Field> Basis<K> {
    fn new(vars: Vars, order: MonomialOrder, polys: Vec<Terms<K>>) -> Self {
        let masks = polys.iter().map(|p| support_mask(&p[0].0)).collect();
        Basis { vars, order, polys, masks }
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Whether the basis generates the unit ideal (of the polynomial ring
    /// for global orders, of the local ring for the local order).
    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|p| p[0].0.is_one())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p[0].0.clone()).collect()
    }

    /// Basis elements as polynomials.
    pub fn polynomials(&self) -> Vec<Polynomial<K>> {
        self.polys.iter().map(|t| Polynomial::from_terms(self.vars.clone(), t.clone())).collect()
    }

    /// Remainder of `p` on division by a global basis.
    pub fn normal_form(&self, p: &Polynomial<K>) -> Result<Polynomial<K>> {
        if !self.order.is_global() {
            return Err(Error::LocalBasis);
        }
        let refs: Vec<&Terms<K>> = self.polys.iter().collect();
        let t = sort_terms(p.terms().to_vec(), &self.order);
        let r = reduce_full(t, &refs, &self.masks, &self.order);
        Ok(Polynomial::from_terms(self.vars.clone(), r))
    }

    /// Ideal membership; for the local order this is membership in the
    /// ideal of the local ring at the origin.
    pub fn contains(&self, p: &Polynomial<K>) -> bool {
        let t = sort_terms(p.terms().to_vec(), &self.order);
        if self.order.is_global() {
            let refs: Vec<&Terms<K>> = self.polys.iter().collect();
            reduce_full(t, &refs, &self.masks, &self.order).is_empty()
        } else {
            mora_normal_form(t, &self.polys, &self.order).is_empty()
        }
    }

    /// Dimension of the quotient by the leading ideal; `-1` when empty.
    pub fn dim(&self) -> i64 {
        hilbert::dimension_and_degree(&self.leading_monomials(), self.vars.len()).0
    }
}

/// An ideal of a polynomial ring `K[x_1..x_n]`, with cached bases.
pub struct Ideal<K: Field = Rational> {
    vars: Vars,
    gens: Vec<Polynomial<K>>,
    cache: Mutex<HashMap<MonomialOrder, Arc<OnceLock<Arc<Basis<K>>>>>>,
}

impl<K: Field> Clone for Ideal<K> {
    fn clone(&self) -> Self {
        Ideal { vars: self.vars.clone(), gens: self.gens.clone(), cache: Mutex::new(self.cache.lock().unwrap().clone()) }
    }
}

impl<K: Field> fmt::Debug for Ideal<K>
where
    Polynomial<K>: fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Ideal").field(&self.gens).finish()
    }
}

impl<K: Field> Ideal<K> {
    /// The ideal generated by `gens`; zero generators are discarded.
    pub fn new(vars: Vars, gens: Vec<Polynomial<K>>) -> Self {
        assert!(gens.iter().all(|g| g.vars() == &vars), "generators from a different ring");
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { vars, gens, cache: Mutex::new(HashMap::new()) }
    }

    pub fn zero(vars: Vars) -> Self {
        Self::new(vars, Vec::new())
    }

    pub fn unit(vars: Vars) -> Self {
        let one = Polynomial::one(vars.clone());
        Self::new(vars, vec![one])
    }

    /// The maximal ideal of the origin.
    pub fn maximal(vars: Vars) -> Self {
        let gens = (0..vars.len()).map(|i| Polynomial::var(vars.clone(), i)).collect();
        Self::new(vars, gens)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn gens(&self) -> &[Polynomial<K>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Basis for `order`, computed once and cached. Concurrent requests for
    /// the same order wait for a single computation.
    pub fn basis(&self, order: &MonomialOrder) -> Arc<Basis<K>> {
        let cell = self.cache.lock().unwrap().entry(order.clone()).or_default().clone();
        cell.get_or_init(|| {
            let polys = if order.is_global() {
                let gens: Vec<Terms<K>> = self.gens.iter().map(|g| g.terms().to_vec()).collect();
                groebner_basis(&gens, order)
            } else {
                // A grevlex basis homogenizes to generators of the full
                // homogenization of the ideal, which keeps the homogenized
                // computation free of components at infinity.
                let gb = self.groebner();
                standard_basis(&gb.polys)
            };
            Arc::new(Basis::new(self.vars.clone(), order.clone(), polys))
        })
        .clone()
    }

    /// Reduced Gröbner basis for grevlex.
    pub fn groebner(&self) -> Arc<Basis<K>> {
        self.basis(&MonomialOrder::Grevlex)
    }

    /// Standard basis for the local degree order at the origin.
    pub fn local_standard_basis(&self) -> Arc<Basis<K>> {
        self.basis(&MonomialOrder::NegDegRevLex)
    }

    pub fn contains(&self, p: &Polynomial<K>) -> bool {
        self.groebner().contains(p)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    /// Whether `other` is contained in `self`.
    pub fn contains_ideal(&self, other: &Ideal<K>) -> bool {
        let b = self.groebner();
        other.gens.iter().all(|g| b.contains(g))
    }

    pub fn same_as(&self, other: &Ideal<K>) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    /// `self + (extra)`.
    pub fn with(&self, extra: &[Polynomial<K>]) -> Self {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Self::new(self.vars.clone(), g)
    }

    pub fn sum(&self, other: &Ideal<K>) -> Self {
        self.with(&other.gens)
    }

    /// Intersection with the linear subspace `x_i = 0`, expressed in the
    /// ring without `x_i`.
    pub fn slice_coordinate(&self, i: usize) -> Self {
        let keep: Vec<bool> = (0..self.nvars()).map(|k| k != i).collect();
        let vars: Vars = self.vars.iter().zip(&keep).filter(|(_, &k)| k).map(|(v, _)| v.clone()).collect::<Vec<_>>().into();
        let gens = self.gens.iter().map(|g| g.set_zero(i).drop_vars(&keep, vars.clone())).collect();
        Self::new(vars, gens)
    }

    /// The ring with one extra variable appended, and that variable.
    fn extended(&self) -> (Vars, Polynomial<K>) {
        let mut names: Vec<String> = self.vars.to_vec();
        let mut t = String::from("_t");
        while names.contains(&t) {
            t.push('_');
        }
        names.push(t);
        let vars: Vars = names.into();
        let n = self.nvars();
        let tv = Polynomial::var(vars.clone(), n);
        (vars, tv)
    }

    /// Elements of `gens` (in the extended ring) free of the last variable,
    /// after an elimination basis has been computed.
    fn eliminate_last(&self, vars: Vars, gens: Vec<Polynomial<K>>) -> Self {
        let n = self.nvars();
        let ext = Ideal::new(vars, gens);
        let b = ext.basis(&MonomialOrder::block([n]));
        let mut keep = vec![true; n + 1];
        keep[n] = false;
        let out = b
            .polynomials()
            .into_iter()
            .filter(|p| !p.involves(n))
            .map(|p| p.drop_vars(&keep, self.vars.clone()))
            .collect();
        Self::new(self.vars.clone(), out)
    }

    /// Elimination ideal: generators of `self ∩ K[x_j : j ∉ elim]`, kept in
    /// the same ring.
    pub fn eliminate(&self, elim: &[usize]) -> Self {
        if elim.is_empty() {
            return self.clone();
        }
        let b = self.basis(&MonomialOrder::block(elim.iter().copied()));
        let out = b.polynomials().into_iter().filter(|p| elim.iter().all(|&i| !p.involves(i))).collect();
        Self::new(self.vars.clone(), out)
    }

    pub fn intersect(&self, other: &Ideal<K>) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.vars.clone());
        }
        let (vars, t) = self.extended();
        let one_minus_t = Polynomial::one(vars.clone()).sub(&t);
        let mut gens: Vec<Polynomial<K>> = self.gens.iter().map(|g| g.extend_ring(vars.clone()).mul(&t)).collect();
        gens.extend(other.gens.iter().map(|g| g.extend_ring(vars.clone()).mul(&one_minus_t)));
        self.eliminate_last(vars, gens)
    }

    /// `self : (g)`.
    pub fn quotient_principal(&self, g: &Polynomial<K>) -> Self {
        if g.is_zero() {
            return Self::unit(self.vars.clone());
        }
        let principal = Ideal::new(self.vars.clone(), vec![g.clone()]);
        let inter = self.intersect(&principal);
        let gens = inter.gens.iter().map(|h| h.div_exact(g).expect("intersection lies in (g)")).collect();
        Self::new(self.vars.clone(), gens)
    }

    /// `self : other`.
    pub fn quotient(&self, other: &Ideal<K>) -> Self {
        let mut acc: Option<Ideal<K>> = None;
        for g in &other.gens {
            let q = self.quotient_principal(g);
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q),
            });
        }
        acc.unwrap_or_else(|| Self::unit(self.vars.clone()))
    }

    /// `self : g^∞`, via the extra variable `t` and `1 - t g`.
    pub fn saturate_principal(&self, g: &Polynomial<K>) -> Self {
        if g.is_zero() {
            return Self::unit(self.vars.clone());
        }
        if g.is_constant() {
            return self.clone();
        }
        let (vars, t) = self.extended();
        let mut gens: Vec<Polynomial<K>> = self.gens.iter().map(|h| h.extend_ring(vars.clone())).collect();
        gens.push(Polynomial::one(vars.clone()).sub(&t.mul(&g.extend_ring(vars.clone()))));
        self.eliminate_last(vars, gens)
    }

    /// `self : other^∞`, as the intersection of the saturations by the
    /// generators of `other`.
    pub fn saturate(&self, other: &Ideal<K>) -> Self {
        let mut acc: Option<Ideal<K>> = None;
        for g in &other.gens {
            let q = self.saturate_principal(g);
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q),
            });
        }
        acc.unwrap_or_else(|| Self::unit(self.vars.clone()))
    }

    /// `self : other^∞` by iterated quotients, stopping when the chain
    /// becomes stationary.
    pub fn saturate_by_quotients(&self, other: &Ideal<K>) -> Result<Self> {
        let mut cur = self.clone();
        for _ in 0..SATURATION_LIMIT {
            let next = cur.quotient(other);
            if cur.contains_ideal(&next) {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::SaturationLimit(SATURATION_LIMIT))
    }

    /// Krull dimension of `K[x]/I`; `-1` for the unit ideal.
    pub fn dim(&self) -> i64 {
        self.groebner().dim()
    }

    /// Dimension of the germ of `V(I)` at the origin; `-1` when the origin
    /// is not in `V(I)`.
    pub fn local_dim(&self) -> i64 {
        self.local_standard_basis().dim()
    }

    /// Hilbert–Samuel multiplicity of the local ring at the origin; `0`
    /// when the origin is not in `V(I)`.
    pub fn hs_multiplicity(&self) -> u64 {
        let b = self.local_standard_basis();
        hilbert::dimension_and_degree(&b.leading_monomials(), self.nvars()).1
    }

    /// `dim_K O_0 / I`: the length of the local quotient ring.
    pub fn local_quotient_dim(&self) -> LocalLength {
        let b = self.local_standard_basis();
        match hilbert::dimension_and_degree(&b.leading_monomials(), self.nvars()) {
            (-1, _) => LocalLength::Finite(0),
            (0, d) => LocalLength::Finite(d),
            _ => LocalLength::Infinite,
        }
    }

    /// Independent route to the local length when the origin is an isolated
    /// point of `V(I)` (or not in it): the global colength of the component
    /// supported at the origin, `I : (I : m^∞)`.
    pub fn local_quotient_dim_by_components(&self) -> LocalLength {
        let m = Self::maximal(self.vars.clone());
        let away = self.saturate(&m);
        let local = self.quotient(&away);
        let b = local.groebner();
        match hilbert::standard_monomial_count(&b.leading_monomials(), self.nvars()) {
            Some(v) => LocalLength::Finite(v),
            None => LocalLength::Infinite,
        }
    }

    /// [`Ideal::local_quotient_dim`] from a standard basis computed by
    /// Mora's tangent cone algorithm on the raw generators, bypassing the
    /// cached (homogenization-based) local basis.
    pub fn local_quotient_dim_mora(&self) -> LocalLength {
        let gens: Vec<Terms<K>> = self.gens.iter().map(|g| g.terms().to_vec()).collect();
        let lms: Vec<Monomial> = mora_standard_basis(&gens).iter().map(|t| t[0].0.clone()).collect();
        match hilbert::standard_monomial_count(&lms, self.nvars()) {
            Some(v) => LocalLength::Finite(v),
            None => LocalLength::Infinite,
        }
    }

    /// Whether `g` vanishes on `V(I)` (over the algebraic closure).
    pub fn radical_member(&self, g: &Polynomial<K>) -> bool {
        self.saturate_principal(g).is_unit()
    }

    /// Whether `g` vanishes on the germ of `V(I)` at the origin.
    pub fn radical_member_at_origin(&self, g: &Polynomial<K>) -> bool {
        self.saturate_principal(g).local_standard_basis().is_unit()
    }
}

impl Ideal<Rational> {
    /// Reduction modulo the prime `P`.
    pub fn reduce_mod<const P: u64>(&self) -> Result<Ideal<ModP<P>>> {
        let gens = self.gens.iter().map(|g| g.reduce_mod::<P>().ok_or(Error::BadReduction)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(self.vars.clone(), gens))
    }

    /// Reduction modulo [`crate::field::FP_MODULUS`].
    pub fn to_fp(&self) -> Result<Ideal<Fp>> {
        self.reduce_mod()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, vars};

    fn ideal(gens: &[&str], v: &[&str]) -> Ideal {
        let v = vars(v);
        Ideal::new(v.clone(), gens.iter().map(|g| parse(g, &v).unwrap()).collect())
    }

    #[test]
    fn membership_and_unit() {
        let i = ideal(&["x^2 - y", "x*y - 1"], &["x", "y"]);
        assert!(i.contains(&parse("x^3 - 1", i.vars()).unwrap()));
        assert!(!i.is_unit());
        assert_eq!(i.dim(), 0);
        let u = ideal(&["x", "x - 1"], &["x", "y"]);
        assert!(u.is_unit());
        assert_eq!(u.dim(), -1);
    }

    #[test]
    fn local_lengths() {
        // (y^2, x^2 + t^2) at the origin in (t, x, y): positive dimensional
        let i = ideal(&["y^2", "2*x^2 + t^2"], &["t", "x", "y"]);
        assert_eq!(i.local_dim(), 1);
        assert_eq!(i.hs_multiplicity(), 4);
        assert_eq!(i.local_quotient_dim(), LocalLength::Infinite);
        // x^2 + y^3, x*y: Milnor-type algebra
        let j = ideal(&["x*(x - 1)", "y^2"], &["x", "y"]);
        assert_eq!(j.local_quotient_dim(), LocalLength::Finite(2));
        assert_eq!(j.local_quotient_dim_by_components(), LocalLength::Finite(2));
        let k = ideal(&["x - 1"], &["x", "y"]);
        assert_eq!(k.local_quotient_dim(), LocalLength::Finite(0));
        assert_eq!(k.local_dim(), -1);
    }

    #[test]
    fn quotient_and_saturation() {
        let i = ideal(&["x^2*y", "x*y^2"], &["x", "y"]);
        let x = parse("x", i.vars()).unwrap();
        let q = i.quotient_principal(&x);
        assert!(q.same_as(&ideal(&["x*y", "y^2"], &["x", "y"])));
        let s = i.saturate_principal(&x);
        assert!(s.same_as(&ideal(&["y"], &["x", "y"])));
        let s2 = i.saturate_by_quotients(&Ideal::new(i.vars().clone(), vec![x])).unwrap();
        assert!(s.same_as(&s2));
    }

    #[test]
    fn intersection_of_lines() {
        let a = ideal(&["x"], &["x", "y"]);
        let b = ideal(&["y"], &["x", "y"]);
        assert!(a.intersect(&b).same_as(&ideal(&["x*y"], &["x", "y"])));
    }

    #[test]
    fn radical_membership() {
        let i = ideal(&["x^3", "y*(y - 1)"], &["x", "y"]);
        let x = parse("x", i.vars()).unwrap();
        let y = parse("y", i.vars()).unwrap();
        assert!(i.radical_member(&x));
        assert!(!i.radical_member(&y));
        assert!(i.radical_member_at_origin(&y));
    }

    #[test]
    fn slicing_a_coordinate() {
        let i = ideal(&["x + y^2", "z*x"], &["x", "y", "z"]);
        let s = i.slice_coordinate(0);
        assert_eq!(&s.vars()[..], &["y".to_string(), "z".to_string()]);
        assert!(s.same_as(&ideal(&["y^2"], &["y", "z"])));
    }

    #[test]
    fn fp_agrees_on_dimension() {
        let i = ideal(&["x^2 - y*z", "y^3 - x*z^2", "z^4 - x^2*y"], &["x", "y", "z"]);
        let f = i.to_fp().unwrap();
        assert_eq!(i.dim(), f.dim());
        assert_eq!(i.local_quotient_dim(), f.local_quotient_dim());
    }
}
