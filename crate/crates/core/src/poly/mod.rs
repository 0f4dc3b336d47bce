//! Sparse multivariate polynomials with exact coefficients, the input
//! grammar, coordinate frames and the elementary constructions built on them.

pub mod frame;
pub mod monomial;
pub mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::groebner::order::MonomialOrder;
pub use frame::{iomdine, restrict, Frame};
pub use monomial::Monomial;
pub use parse::parse;

/// Ordered variable names shared by the polynomials of one ring.
pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

/// A sparse polynomial. Terms are stored with nonzero coefficients in
/// descending graded reverse lexicographic order of the declared variables.
#[derive(Clone)]
pub struct Polynomial<K: Field = Rational> {
    vars: Vars,
    terms: Vec<(Monomial, K)>,
}

impl<K: Field> PartialEq for Polynomial<K> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl<K: Field> Eq for Polynomial<K> {}

impl<K: Field> Polynomial<K> {
    pub fn zero(vars: Vars) -> Self {
        assert!(!vars.is_empty(), "a polynomial ring needs at least one variable");
        Polynomial { vars, terms: Vec::new() }
    }

    pub fn constant(vars: Vars, c: K) -> Self {
        let n = vars.len();
        Self::from_terms(vars, vec![(Monomial::one(n), c)])
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, K::one())
    }

    /// The `i`-th variable.
    pub fn var(vars: Vars, i: usize) -> Self {
        let n = vars.len();
        assert!(i < n, "variable index out of range");
        Self::from_terms(vars, vec![(Monomial::var(n, i, 1), K::one())])
    }

    pub fn monomial(vars: Vars, m: Monomial, c: K) -> Self {
        Self::from_terms(vars, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms(vars: Vars, mut terms: Vec<(Monomial, K)>) -> Self {
        assert!(!vars.is_empty(), "a polynomial ring needs at least one variable");
        assert!(terms.iter().all(|(m, _)| m.nvars() == vars.len()), "monomial length mismatch");
        terms.sort_by(|a, b| b.0.cmp_grevlex(&a.0));
        let mut out: Vec<(Monomial, K)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { vars, terms: out }
    }

    /// Wraps terms that are already sorted in descending grevlex order with
    /// no duplicates and no zeros.
    pub(crate) fn from_sorted(vars: Vars, terms: Vec<(Monomial, K)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0.cmp_grevlex(&w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { vars, terms }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &[(Monomial, K)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, K)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`Polynomial::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms
            .binary_search_by(|(t, _)| m.cmp_grevlex(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| K::zero())
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> K {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => K::zero(),
        }
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Smallest total degree of a term (order of vanishing at the origin);
    /// `None` for zero.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    pub fn with_vars(&self, vars: Vars) -> Self {
        assert_eq!(vars.len(), self.nvars());
        Polynomial { vars, terms: self.terms.clone() }
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        let terms = merge(&self.terms, &other.terms, &K::one(), None, &MonomialOrder::Grevlex);
        Polynomial { vars: self.vars.clone(), terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ring(other);
        let terms = merge(&self.terms, &other.terms, &K::one().neg(), None, &MonomialOrder::Grevlex);
        Polynomial { vars: self.vars.clone(), terms }
    }

    /// `self * c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc: Vec<(Monomial, K)> = Vec::new();
        for (m, c) in &small.terms {
            let shifted: Vec<(Monomial, K)> = big.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect();
            acc = merge(&acc, &shifted, &K::one(), None, &MonomialOrder::Grevlex);
        }
        Polynomial { vars: self.vars.clone(), terms: acc }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars(), "variable index out of range");
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[i] > 0)
            .map(|(m, c)| {
                let e = m.exponents()[i];
                let mut d = m.clone();
                d.set(i, e - 1);
                (d, c.mul(&K::from_i64(e as i64)))
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self::from_sorted(self.vars.clone(), terms)
    }

    /// All partial derivatives, in variable order.
    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars()).map(|i| self.partial(i)).collect()
    }

    /// Whether variable `i` occurs.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[i] > 0)
    }

    /// Substitutes, for each variable `x_i`, the polynomial `images[i]`
    /// (all living in one target ring).
    pub fn compose(&self, images: &[Polynomial<K>]) -> Polynomial<K> {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let target = images[0].vars.clone();
        let mut powers: Vec<Vec<Polynomial<K>>> = Vec::with_capacity(self.nvars());
        for (i, img) in images.iter().enumerate() {
            let maxe = self.terms.iter().map(|(m, _)| m.exponents()[i]).max().unwrap_or(0);
            let mut pw = vec![Polynomial::one(target.clone())];
            for _ in 0..maxe {
                let next = pw.last().unwrap().mul(img);
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut acc: Vec<(Monomial, K)> = Vec::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target.clone(), c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            acc = merge(&acc, &t.terms, &K::one(), None, &MonomialOrder::Grevlex);
        }
        Polynomial { vars: target, terms: acc }
    }

    /// Image in another field; `None` if some coefficient does not map.
    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> Option<L>) -> Option<Polynomial<L>> {
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.push((m.clone(), v));
            }
        }
        Some(Polynomial { vars: self.vars.clone(), terms })
    }

    /// Same polynomial in a larger ring with extra variables appended.
    pub fn extend_ring(&self, vars: Vars) -> Self {
        let n = self.nvars();
        assert!(vars.len() >= n && vars[..n] == self.vars[..]);
        let total = vars.len();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.resize(total, 0);
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        // appending zero exponents keeps the grevlex order
        Polynomial { vars, terms }
    }

    /// Drops the variables listed in `keep == false`; the polynomial must
    /// not involve them.
    pub fn drop_vars(&self, keep: &[bool], vars: Vars) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e: Vec<u16> = m
                    .exponents()
                    .iter()
                    .zip(keep)
                    .filter_map(|(&x, &k)| {
                        if k {
                            Some(x)
                        } else {
                            debug_assert_eq!(x, 0);
                            None
                        }
                    })
                    .collect();
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        Self::from_terms(vars, terms)
    }

    /// Sets variable `i` to zero.
    pub fn set_zero(&self, i: usize) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.exponents()[i] == 0).cloned().collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    /// Exact division by `d`; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.terms[0].clone();
        let dinv = dc.inv();
        let mut rem = self.terms.clone();
        let mut quot: Vec<(Monomial, K)> = Vec::new();
        while let Some((m, c)) = rem.first().cloned() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = m.div(&dm);
            let qc = c.mul(&dinv);
            rem = merge(&rem, &d.terms, &qc.neg(), Some(&qm), &MonomialOrder::Grevlex);
            quot.push((qm, qc));
        }
        Some(Polynomial::from_sorted(self.vars.clone(), quot))
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials from different rings"
        );
    }
}

impl Polynomial<Rational> {
    /// Multiplicity at the origin: the smallest total degree of a term.
    pub fn mult_origin(&self) -> Result<u32> {
        self.low_degree().ok_or(Error::ZeroPolynomial)
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let hi = self.degree().ok_or(Error::ZeroPolynomial)?;
        let lo = self.low_degree().unwrap();
        Ok((hi == lo).then_some(hi))
    }

    /// Largest bit length among numerators and denominators.
    pub fn height(&self) -> u64 {
        self.terms.iter().map(|(_, c)| crate::field::abs_height(c)).max().unwrap_or(0)
    }

    /// Image modulo the prime `P`; `None` if a denominator vanishes there.
    pub fn reduce_mod<const P: u64>(&self) -> Option<Polynomial<crate::field::ModP<P>>> {
        self.map_coeffs(crate::field::ModP::<P>::from_rational)
    }

    pub fn to_fp(&self) -> Option<Polynomial<crate::field::Fp>> {
        self.reduce_mod()
    }
}

/// `a + c * m * b`, for term lists sorted descending in `ord`.
pub(crate) fn merge<K: Field>(
    a: &[(Monomial, K)],
    b: &[(Monomial, K)],
    c: &K,
    m: Option<&Monomial>,
    ord: &MonomialOrder,
) -> Vec<(Monomial, K)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shift = |t: &Monomial| match m {
        Some(m) => t.mul(m),
        None => t.clone(),
    };
    let mut bj: Option<Monomial> = b.first().map(|(t, _)| shift(t));
    while i < a.len() || j < b.len() {
        let take = match (a.get(i), &bj) {
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some((am, _)), Some(bm)) => ord.cmp(am, bm),
            (None, None) => unreachable!(),
        };
        match take {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let v = b[j].1.mul(c);
                if !v.is_zero() {
                    out.push((bj.take().unwrap(), v));
                }
                j += 1;
                bj = b.get(j).map(|(t, _)| shift(t));
            }
            Ordering::Equal => {
                let v = a[i].1.add(&b[j].1.mul(c));
                if !v.is_zero() {
                    out.push((a[i].0.clone(), v));
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|(t, _)| shift(t));
            }
        }
    }
    out
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Rational, first: bool, has_mono: bool) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { '-' } else { '+' })?;
    }
    let one = num_traits::One::is_one(&a);
    if !has_mono {
        write!(f, "{a}")
    } else if one {
        Ok(())
    } else {
        write!(f, "{a}*")
    }
}

impl fmt::Display for Polynomial<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let has_mono = !m.is_one();
            write_coeff(f, c, k == 0, has_mono)?;
            let mut first = true;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.vars[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}](", self.vars.join(","))?;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){m:?}")?;
        }
        write!(f, ")")
    }
}
