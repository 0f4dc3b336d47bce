//! Lê cycles and relative polar cycles realized as ideals, and the numbers
//! attached to them at the origin.
//!
//! In coordinates `z = (z₀, …, z_n)` the relative polar cycle `Γ^j` is the
//! part of `V(∂f/∂z_j, …, ∂f/∂z_n)` not contained in the critical locus
//! `Σf`; it is represented by the saturation of the partial-derivative ideal
//! by the Jacobian ideal, which keeps the multiplicities along the remaining
//! components. `Γ^{n+1}` is the whole space. The Lê cycles satisfy
//! `Λ^j + Γ^j = Γ^{j+1} · V(∂f/∂z_j)`, so with `H_j = V(z₀, …, z_{j-1})`
//!
//! ```text
//! λ^j + γ^j = (Γ^{j+1} · V(∂f/∂z_j) · H_j)₀,    γ^j = (Γ^j · H_j)₀,   γ^0 = 0.
//! ```

use std::fmt;

use crate::arith::{evaluate, Arithmetic, Computation};
use crate::error::{Error, Result};
use crate::field::{rat, Field, Rational};
use crate::groebner::{Ideal, LocalLength};
use crate::poly::frame::{apply_frame, restrict_to_first_hyperplane, DEFAULT_BOUND};
use crate::poly::{Frame, Polynomial};

/// One cut of an intersection: a coordinate hyperplane of the current ring
/// or an arbitrary hypersurface.
#[derive(Clone, Debug)]
pub enum Cut<K: Field = Rational> {
    /// `V(x_i)` for the `i`-th variable of the current ring. The variable is
    /// removed from the ring after the cut, so later indices shift down.
    Coordinate(usize),
    Hypersurface(Polynomial<K>),
}

/// Why an intersection number is not defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Improper {
    /// Index of the failing cut in the list.
    pub step: usize,
    /// Dimension at the origin expected after the cut.
    pub expected: i64,
    pub found: i64,
}

impl fmt::Display for Improper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "improper intersection at cut {}: dimension at the origin {} instead of {}",
            self.step, self.found, self.expected
        )
    }
}

/// The ideal of `Σf`, generated by all partial derivatives.
pub fn sigma_ideal<K: Field>(f: &Polynomial<K>) -> Result<Ideal<K>> {
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    Ok(Ideal::new(f.vars().clone(), f.gradient()))
}

/// Ideal of the relative polar cycle `Γ^j` in the current coordinates,
/// for `1 ≤ j ≤ n + 1`. Components inside `Σf` are removed by saturating
/// `(∂_j f, …, ∂_n f)` by the partials `∂_0 f, …, ∂_{j-1} f` (the other
/// generators of the Jacobian ideal already lie in the ideal).
pub fn polar_ideal<K: Field>(f: &Polynomial<K>, j: usize) -> Result<Ideal<K>> {
    let n1 = f.nvars();
    if j == 0 || j > n1 {
        return Err(Error::InvalidArgument(format!("polar index {j} outside 1..={n1}")));
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let grad = f.gradient();
    let vars = f.vars().clone();
    if j == n1 {
        return Ok(Ideal::zero(vars));
    }
    let base = Ideal::new(vars.clone(), grad[j..].to_vec());
    let mut acc: Option<Ideal<K>> = None;
    for g in &grad[..j] {
        if g.is_zero() {
            continue;
        }
        let part = base.saturate_principal(g);
        acc = Some(match acc {
            None => part,
            Some(a) => a.intersect(&part),
        });
    }
    // every partial below j vanishes identically: everything lies in Σf
    Ok(acc.unwrap_or_else(|| Ideal::unit(vars)))
}

/// Intersection number at the origin of the cycle of `ideal` (purely
/// `d`-dimensional at the origin) with the `d` cuts, taken one at a time.
///
/// Before each cut `h` the dimension of `V(I) ∩ V(h)` at the origin must
/// be one less than that of `V(I)`; then `I` is replaced by `(I : h^∞) + (h)`,
/// which has the same top-dimensional cycle as the proper intersection and
/// makes the next cut a nonzerodivisor. The last step is a local length.
pub fn intersection_number<K: Field>(
    ideal: &Ideal<K>,
    d: usize,
    cuts: &[Cut<K>],
) -> std::result::Result<u64, Improper> {
    assert_eq!(cuts.len(), d, "one cut per dimension");
    let mut cur = ideal.clone();
    let start = cur.local_dim();
    if start < 0 {
        return Ok(0);
    }
    if start != d as i64 {
        return Err(Improper { step: 0, expected: d as i64, found: start });
    }
    let mut dim = d as i64;
    for (step, cut) in cuts.iter().enumerate() {
        let (h, coord) = match cut {
            Cut::Coordinate(i) => (Polynomial::var(cur.vars().clone(), *i), Some(*i)),
            Cut::Hypersurface(h) => (h.clone(), None),
        };
        let touched = match coord {
            Some(i) => cur.slice_coordinate(i),
            None => cur.with(std::slice::from_ref(&h)),
        };
        let found = touched.local_dim();
        if found < 0 {
            return Ok(0);
        }
        if found != dim - 1 {
            return Err(Improper { step, expected: dim - 1, found });
        }
        let sat = cur.saturate_principal(&h);
        cur = match coord {
            Some(i) => sat.slice_coordinate(i),
            None => sat.with(std::slice::from_ref(&h)),
        };
        dim -= 1;
    }
    match cur.local_quotient_dim() {
        LocalLength::Finite(v) => Ok(v),
        LocalLength::Infinite => Err(Improper { step: cuts.len(), expected: 0, found: cur.local_dim() }),
    }
}

/// Lê numbers and relative polar numbers at the origin in one frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeRecord {
    /// Dimension of `Σf` at the origin.
    pub s: usize,
    /// `λ^0, …, λ^s`; `None` where the defining intersection is improper.
    pub lambda: Vec<Option<u64>>,
    /// `γ^0, …, γ^s` with `γ^0 = 0`.
    pub gamma: Vec<Option<u64>>,
    pub frame: Frame,
    pub seed: Option<u64>,
    pub arithmetic: Arithmetic,
}

impl LeRecord {
    pub fn defined(&self) -> Vec<bool> {
        self.lambda.iter().map(Option::is_some).collect()
    }

    pub fn all_defined(&self) -> bool {
        self.lambda.iter().all(Option::is_some)
    }

    /// `λ^j`, which is `0` for `j > s`.
    pub fn lambda(&self, j: usize) -> Option<u64> {
        self.lambda.get(j).copied().unwrap_or(Some(0))
    }

    pub fn gamma(&self, j: usize) -> Option<u64> {
        self.gamma.get(j).copied().flatten()
    }

    /// Sort key for the lexicographic order on `(…, λ^{s+1}, λ^s, …, λ^0)`
    /// with `λ^j = 0` above `s`, when every entry is defined: `s` first,
    /// then `λ^s, …, λ^0`, so records with different `s` compare as if
    /// padded with leading zeros.
    pub fn lex_key(&self) -> Option<(usize, Vec<u64>)> {
        let key: Option<Vec<u64>> = self.lambda.iter().rev().copied().collect();
        key.map(|k| (self.s, k))
    }
}

/// Lê numbers of `f` in coordinates already applied (the variables of `f`
/// are `z₀, …, z_n` in order).
pub fn lambda_numbers_in_coordinates<K: Field>(f: &Polynomial<K>) -> Result<LeData> {
    if !f.constant_term().is_zero() {
        return Err(Error::OriginNotInVariety);
    }
    let sigma = sigma_ideal(f)?;
    let s = sigma.local_dim();
    if s < 0 {
        return Err(Error::NotCritical);
    }
    let s = s as usize;
    let n1 = f.nvars();
    let grad = f.gradient();
    // polar[j] = Γ^j for j = 1..=s+1
    let mut polar: Vec<Option<Ideal<K>>> = vec![None; s + 2];
    for (j, slot) in polar.iter_mut().enumerate().skip(1) {
        if j <= n1 {
            *slot = Some(polar_ideal(f, j)?);
        }
    }
    let mut lambda = vec![None; s + 1];
    let mut gamma = vec![None; s + 1];
    gamma[0] = Some(0);
    for j in (0..=s).rev() {
        let above = polar[j + 1].as_ref().expect("Γ^{j+1} exists for j ≤ s ≤ n");
        let mut cuts = vec![Cut::Hypersurface(grad[j].clone())];
        cuts.extend(std::iter::repeat_n(Cut::Coordinate(0), j));
        let total = intersection_number(above, j + 1, &cuts).ok();
        if j >= 1 {
            let here = polar[j].as_ref().unwrap();
            let cuts: Vec<Cut<K>> = std::iter::repeat_n(Cut::Coordinate(0), j).collect();
            gamma[j] = intersection_number(here, j, &cuts).ok();
        }
        lambda[j] = match (total, gamma[j]) {
            (Some(t), Some(g)) if t >= g => Some(t - g),
            _ => None,
        };
    }
    Ok((s, lambda, gamma))
}

/// Raw Lê data `(s, λ, γ)` of a polynomial in its own coordinates.
pub type LeData = (usize, Vec<Option<u64>>, Vec<Option<u64>>);

struct LeInCoordinates;

impl Computation for LeInCoordinates {
    type Output = LeData;

    fn run<K: Field>(&self, f: &Polynomial<K>) -> Result<LeData> {
        lambda_numbers_in_coordinates(f)
    }
}

/// Lê numbers of `f` with respect to `frame`, in exact arithmetic.
pub fn lambda_numbers(f: &Polynomial, frame: &Frame) -> Result<LeRecord> {
    lambda_numbers_with(f, frame, Arithmetic::Exact)
}

/// Lê numbers of `f` with respect to `frame`.
pub fn lambda_numbers_with(f: &Polynomial, frame: &Frame, arith: Arithmetic) -> Result<LeRecord> {
    let g = apply_frame(f, frame)?;
    let (s, lambda, gamma) = evaluate(&LeInCoordinates, &g, arith)?;
    Ok(LeRecord { s, lambda, gamma, frame: frame.clone(), seed: frame.seed(), arithmetic: arith })
}

/// Seed of the `t`-th random frame of a run started with `seed`.
pub fn trial_seed(seed: u64, t: u64) -> u64 {
    seed.wrapping_add(t)
}

/// Parameters of a search for generic values over random frames.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Genericity {
    pub seed: u64,
    pub trials: u32,
    pub bound: i64,
    pub arithmetic: Arithmetic,
}

impl Genericity {
    pub fn new(seed: u64) -> Self {
        Genericity { seed, trials: 3, bound: DEFAULT_BOUND, arithmetic: Arithmetic::Modular }
    }

    pub fn trials(self, trials: u32) -> Self {
        Genericity { trials, ..self }
    }

    pub fn bound(self, bound: i64) -> Self {
        Genericity { bound, ..self }
    }

    pub fn arithmetic(self, arithmetic: Arithmetic) -> Self {
        Genericity { arithmetic, ..self }
    }

    /// The `t`-th random frame in `n` variables.
    pub fn frame(&self, n: usize, t: u64) -> Frame {
        Frame::random(n, trial_seed(self.seed, t), self.bound)
    }
}

/// Generic Lê numbers: the lexicographic minimum of `(λ^s, …, λ^0)` over
/// random frames. Ties keep the earliest trial.
pub fn generic_le(f: &Polynomial, g: &Genericity) -> Result<LeRecord> {
    if g.trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    if g.bound < 1 {
        return Err(Error::InvalidArgument("the coefficient bound must be positive".into()));
    }
    let n = f.nvars();
    let mut best: Option<((usize, Vec<u64>), LeRecord)> = None;
    for t in 0..g.trials as u64 {
        let rec = lambda_numbers_with(f, &g.frame(n, t), g.arithmetic)?;
        if let Some(key) = rec.lex_key() {
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, rec));
            }
        }
    }
    best.map(|(_, r)| r).ok_or_else(|| {
        Error::Undefined(format!(
            "no random frame gave defined Lê numbers in {} trials; try a larger coefficient bound than {}",
            g.trials, g.bound
        ))
    })
}

struct PolarMult(usize);

impl Computation for PolarMult {
    type Output = u64;

    fn run<K: Field>(&self, g: &Polynomial<K>) -> Result<u64> {
        let j = self.0;
        let gamma = polar_ideal(g, j)?;
        match gamma.local_dim() {
            -1 => Ok(0),
            d if d == j as i64 => Ok(gamma.hs_multiplicity()),
            d => Err(Error::Undefined(format!("Γ^{j} has dimension {d} at the origin"))),
        }
    }
}

/// `mult₀ Γ^j` for `1 ≤ j ≤ n`, in the coordinates of `frame`; `0` when
/// `Γ^j` is empty at the origin.
pub fn polar_mult(f: &Polynomial, frame: &Frame, j: usize, arith: Arithmetic) -> Result<u64> {
    let g = apply_frame(f, frame)?;
    evaluate(&PolarMult(j), &g, arith)
}

/// `mult₀ Γ^1`, the multiplicity of the polar curve.
pub fn polar_curve_mult(f: &Polynomial, frame: &Frame, arith: Arithmetic) -> Result<u64> {
    polar_mult(f, frame, 1, arith)
}

struct PolarNumber(usize);

impl Computation for PolarNumber {
    type Output = std::result::Result<u64, Improper>;

    fn run<K: Field>(&self, g: &Polynomial<K>) -> Result<Self::Output> {
        let j = self.0;
        let gamma = polar_ideal(g, j)?;
        let cuts: Vec<Cut<K>> = std::iter::repeat_n(Cut::Coordinate(0), j).collect();
        Ok(intersection_number(&gamma, j, &cuts))
    }
}

/// `γ^j = (Γ^j · V(z₀, …, z_{j-1}))₀` for `1 ≤ j ≤ n`, also for `j > s`.
pub fn polar_number(f: &Polynomial, frame: &Frame, j: usize, arith: Arithmetic) -> Result<Option<u64>> {
    let g = apply_frame(f, frame)?;
    Ok(evaluate(&PolarNumber(j), &g, arith)?.ok())
}

/// Outcome of comparing `λ^0` of `f|V(z₀)` with `γ^1 + λ^1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Agrees,
    Disagrees,
    /// Some quantity was undefined, or `n = 0`.
    Unavailable,
}

/// Cross-check of a Lê record: the restriction of `f` to the first
/// coordinate hyperplane has `λ^0 = γ^1 + λ^1`.
pub fn hyperplane_cross_check(f: &Polynomial, rec: &LeRecord) -> Verdict {
    if f.nvars() < 2 || rec.s == 0 {
        return Verdict::Unavailable;
    }
    let (Some(g1), Some(l1)) = (rec.gamma(1), rec.lambda(1)) else {
        return Verdict::Unavailable;
    };
    let Ok(framed) = apply_frame(f, &rec.frame) else {
        return Verdict::Unavailable;
    };
    let slice = restrict_to_first_hyperplane(&framed);
    match evaluate(&LeInCoordinates, &slice, rec.arithmetic) {
        Ok((_, lam, _)) => match lam[0] {
            Some(v) if v == g1 + l1 => Verdict::Agrees,
            Some(_) => Verdict::Disagrees,
            None => Verdict::Unavailable,
        },
        Err(_) => Verdict::Unavailable,
    }
}

/// Bounds on the maximum polar ratio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MprBounds {
    pub lower: u64,
    pub upper1: u64,
    /// `λ^0 − γ^1 + 2`, present when `γ^1 = mult₀ Γ^1`.
    pub upper2: Option<u64>,
    pub exact: Option<Rational>,
    /// `mult₀ Γ^1` when it could be computed.
    pub polar_mult: Option<u64>,
}

/// Bounds on `mpr{f, z}` from `λ^0`, `γ^1` and `mult₀ Γ^1`.
pub fn mpr_bounds(f: &Polynomial, frame: &Frame, arith: Arithmetic) -> Result<MprBounds> {
    let rec = lambda_numbers_with(f, frame, arith)?;
    mpr_bounds_from(f, &rec)
}

/// [`mpr_bounds`] reusing an already computed record.
pub fn mpr_bounds_from(f: &Polynomial, rec: &LeRecord) -> Result<MprBounds> {
    let l0 = rec.lambda(0).ok_or_else(|| Error::Undefined("λ^0 is not defined in this frame".into()))?;
    let frame = &rec.frame;
    let pm = polar_curve_mult(f, frame, rec.arithmetic).ok();
    let g1 = match rec.gamma(1) {
        Some(g) => Some(g),
        None if f.nvars() >= 2 => polar_number(f, frame, 1, rec.arithmetic)?,
        None => None,
    };
    let hyp = matches!((g1, pm), (Some(g), Some(p)) if g == p);
    let upper2 = if hyp { l0.checked_add(2).and_then(|v| v.checked_sub(g1.unwrap())) } else { None };
    let lower = if hyp && g1 != Some(0) { f.mult_origin()? as u64 } else { 1 };
    Ok(MprBounds { lower, upper1: l0 + 1, upper2, exact: None, polar_mult: pm })
}

/// Exact maximum polar ratio from a decomposition of `Γ^1` into reduced
/// components `(ideal, coefficient)`, given in the original coordinates.
pub fn mpr_exact(f: &Polynomial, frame: &Frame, components: &[(Ideal, u64)]) -> Result<Rational> {
    let g = apply_frame(f, frame)?;
    let gamma = polar_ideal(&g, 1)?;
    let framed: Vec<(Ideal, u64)> = components
        .iter()
        .map(|(c, m)| {
            let gens = c.gens().iter().map(|p| apply_frame(p, frame)).collect::<Result<Vec<_>>>()?;
            Ok((Ideal::new(g.vars().clone(), gens), *m))
        })
        .collect::<Result<_>>()?;
    let total: u64 = framed
        .iter()
        .map(|(c, m)| if c.local_dim() < 0 { 0 } else { m * c.hs_multiplicity() })
        .sum();
    let expected = match gamma.local_dim() {
        -1 => 0,
        _ => gamma.hs_multiplicity(),
    };
    for (c, _) in &framed {
        if c.local_dim() >= 0 && (c.local_dim() != 1 || !c.contains_ideal(&gamma)) {
            return Err(Error::InvalidArgument("component is not a curve inside the polar curve".into()));
        }
    }
    if total != expected {
        return Err(Error::InvalidArgument(format!(
            "components account for multiplicity {total}, the polar curve has {expected}"
        )));
    }
    let mut best = rat(1);
    for (c, _) in &framed {
        if c.local_dim() < 0 {
            continue;
        }
        let z0 = Polynomial::var(g.vars().clone(), 0);
        if c.with(std::slice::from_ref(&z0)).local_dim() == 1 {
            continue;
        }
        let num = intersection_number(c, 1, &[Cut::Hypersurface(g.clone())])
            .map_err(|e| Error::Undefined(e.to_string()))?;
        let den = intersection_number(c, 1, &[Cut::Coordinate(0)]).map_err(|e| Error::Undefined(e.to_string()))?;
        let r = Rational::new(num.into(), den.into());
        if r > best {
            best = r;
        }
    }
    Ok(best)
}
