//! Milnor numbers, sectional Milnor numbers `μ(f^[k])` and Teissier's chain
//! of inequalities between them.

use serde::Serialize;

use crate::arith::{evaluate, Arithmetic, Computation};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::groebner::{Ideal, LocalLength};
use crate::poly::frame::{restrict, Section, DEFAULT_BOUND, MAX_GENERICITY_RETRIES};
use crate::poly::Polynomial;

/// Milnor number at the origin in any coefficient field: the length of the
/// local Jacobian algebra, `None` when the critical point is not isolated.
/// A smooth point gives `0`.
pub fn milnor_in<K: Field>(f: &Polynomial<K>) -> Result<Option<u64>> {
    if !f.constant_term().is_zero() {
        return Err(Error::OriginNotInVariety);
    }
    if f.is_zero() {
        return Ok(None);
    }
    let jac = Ideal::new(f.vars().clone(), f.gradient());
    Ok(match jac.local_quotient_dim() {
        LocalLength::Finite(v) => Some(v),
        LocalLength::Infinite => None,
    })
}

struct Milnor;

impl Computation for Milnor {
    type Output = Option<u64>;

    fn run<K: Field>(&self, f: &Polynomial<K>) -> Result<Option<u64>> {
        milnor_in(f)
    }
}

/// Milnor number `μ(f)` at the origin, in exact arithmetic.
pub fn milnor(f: &Polynomial) -> Result<Option<u64>> {
    milnor_in(f)
}

pub fn milnor_with(f: &Polynomial, arith: Arithmetic) -> Result<Option<u64>> {
    evaluate(&Milnor, f, arith)
}

/// How generic slices are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SliceOptions {
    pub seed: u64,
    pub bound: i64,
    pub arithmetic: Arithmetic,
}

impl SliceOptions {
    pub fn new(seed: u64) -> Self {
        SliceOptions { seed, bound: DEFAULT_BOUND, arithmetic: Arithmetic::Modular }
    }

    pub fn arithmetic(self, arithmetic: Arithmetic) -> Self {
        SliceOptions { arithmetic, ..self }
    }

    pub fn bound(self, bound: i64) -> Self {
        SliceOptions { bound, ..self }
    }
}

/// Seed of trial `trial` in round `round` of the slices of dimension `k`.
pub(crate) fn slice_seed(seed: u64, k: usize, round: u32, trial: u32) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((k as u64) << 32)
        .wrapping_add((round as u64) << 8)
        .wrapping_add(trial as u64)
}

/// One sectional Milnor number with the seeds of the slices that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionalValue {
    pub k: usize,
    pub mu: Option<u64>,
    pub seeds: Vec<u64>,
}

/// `μ(f^[k])`: the Milnor number of `f` restricted to a generic
/// `k`-dimensional linear subspace through the origin, with `μ(f^[0]) = 1`.
///
/// Two random slices must agree; on disagreement the coefficient bound is
/// doubled and two fresh slices are drawn, up to the retry limit, after
/// which the smallest value seen is returned (the generic value is the
/// minimum). `None` means every slice had a non-isolated critical point.
pub fn sectional(f: &Polynomial, k: usize, opts: &SliceOptions) -> Result<SectionalValue> {
    let n1 = f.nvars();
    if k > n1 {
        return Err(Error::InvalidArgument(format!("section dimension {k} exceeds {n1}")));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::OriginNotInVariety);
    }
    if k == 0 {
        return Ok(SectionalValue { k, mu: Some(1), seeds: Vec::new() });
    }
    if k == n1 {
        return Ok(SectionalValue { k, mu: milnor_with(f, opts.arithmetic)?, seeds: Vec::new() });
    }
    let mut bound = opts.bound.max(1);
    let mut seen: Vec<u64> = Vec::new();
    let mut seeds = Vec::new();
    for round in 0..=MAX_GENERICITY_RETRIES {
        let mut vals = Vec::with_capacity(2);
        for trial in 0..2 {
            let seed = slice_seed(opts.seed, k, round, trial);
            seeds.push(seed);
            let g = restrict(f, k, &Section::Seed { seed, bound })?;
            vals.push(milnor_with(&g, opts.arithmetic)?);
        }
        match (vals[0], vals[1]) {
            (Some(a), Some(b)) if a == b => return Ok(SectionalValue { k, mu: Some(a), seeds }),
            (None, None) => return Ok(SectionalValue { k, mu: None, seeds }),
            _ => {}
        }
        seen.extend(vals.into_iter().flatten());
        bound = bound.saturating_mul(2);
    }
    Ok(SectionalValue { k, mu: seen.into_iter().min(), seeds })
}

/// `μ(f^[0]), …, μ(f^[n+1])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionalProfile {
    pub mu: Vec<Option<u64>>,
    pub seeds: Vec<Vec<u64>>,
}

impl SectionalProfile {
    pub fn get(&self, k: usize) -> Option<u64> {
        self.mu.get(k).copied().flatten()
    }

    pub fn defined(&self) -> Vec<bool> {
        self.mu.iter().map(Option::is_some).collect()
    }
}

pub fn sectional_profile(f: &Polynomial, opts: &SliceOptions) -> Result<SectionalProfile> {
    let mut mu = Vec::new();
    let mut seeds = Vec::new();
    for k in 0..=f.nvars() {
        let v = sectional(f, k, opts)?;
        mu.push(v.mu);
        seeds.push(v.seeds);
    }
    Ok(SectionalProfile { mu, seeds })
}

/// Teissier's chain for an isolated singularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeissierChain {
    pub mu: Vec<u64>,
    /// `μ(f^[j+1]) / μ(f^[j])` for `j = 0..=n`.
    pub ratios: Vec<Rational>,
    /// The ratios do not decrease with `j`.
    pub monotone: bool,
    /// `μ(f^[k+1]) ≥ (mult₀f − 1) μ(f^[k])` and
    /// `μ(f^[k+1]) ≥ (mult₀f − 1)^{k+1}` for all `k`.
    pub corollary: bool,
}

pub fn teissier_chain(f: &Polynomial, opts: &SliceOptions) -> Result<TeissierChain> {
    let profile = sectional_profile(f, opts)?;
    if profile.mu.iter().any(Option::is_none) {
        return Err(Error::Undefined("the singularity is not isolated".into()));
    }
    let mu: Vec<u64> = profile.mu.iter().map(|v| v.unwrap()).collect();
    teissier_from_profile(f, mu)
}

/// [`teissier_chain`] from known sectional Milnor numbers.
pub fn teissier_from_profile(f: &Polynomial, mu: Vec<u64>) -> Result<TeissierChain> {
    if mu.iter().skip(1).any(|&v| v == 0) {
        return Err(Error::NotCritical);
    }
    let ratios: Vec<Rational> =
        mu.windows(2).map(|w| Rational::new(w[1].into(), w[0].into())).collect();
    let monotone = ratios.windows(2).all(|w| w[1] >= w[0]);
    let m1 = f.mult_origin()? as u64 - 1;
    let corollary = mu.windows(2).enumerate().all(|(k, w)| {
        let pow = m1.checked_pow(k as u32 + 1);
        w[1] >= m1 * w[0] && pow.is_some_and(|p| w[1] >= p)
    });
    Ok(TeissierChain { mu, ratios, monotone, corollary })
}
