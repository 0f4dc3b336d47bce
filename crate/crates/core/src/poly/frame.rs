//! Linear coordinate frames and the constructions that use them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{vars, Polynomial};
use crate::error::{Error, Result};
use crate::field::{rat, Field, Rational};

/// Default bound for random integer entries.
pub const DEFAULT_BOUND: i64 = 10;
/// Number of bound doublings allowed when a sample turns out non-generic.
pub const MAX_GENERICITY_RETRIES: u32 = 5;

/// An invertible linear change of coordinates `z = M x`.
///
/// Applying a frame to a polynomial `p(x)` yields `p(M⁻¹ z)` written in the
/// coordinates `z`, which keep the positional variable names of `p`. The
/// first new coordinate is `z₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    matrix: Vec<Vec<Rational>>,
    inverse: Vec<Vec<Rational>>,
    seed: Option<u64>,
}

impl Frame {
    pub fn identity(n: usize) -> Self {
        let id: Vec<Vec<Rational>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect()).collect();
        Frame { matrix: id.clone(), inverse: id, seed: None }
    }

    /// Frame from `M`, where the new coordinates are `z = M x`.
    pub fn from_matrix(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("frame matrix must be square and nonempty".into()));
        }
        let inverse = invert(&matrix).ok_or(Error::SingularFrame)?;
        Ok(Frame { matrix, inverse, seed: None })
    }

    /// The frame whose coordinates are the old ones in the order `perm`:
    /// `z_i = x_{perm[i]}`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            seen[p] = true;
        }
        let m = (0..n).map(|i| (0..n).map(|j| if perm[i] == j { rat(1) } else { rat(0) }).collect()).collect();
        Self::from_matrix(m)
    }

    /// The rotated coordinates `(z₁, …, z_n, z₀)`.
    pub fn rotation(n: usize) -> Self {
        let perm: Vec<usize> = (1..n).chain(std::iter::once(0)).collect();
        Self::permutation(&perm).expect("rotation is a permutation")
    }

    /// A random frame. The substitution matrix `M⁻¹` has integer entries
    /// drawn uniformly from `[-bound, bound]`, so framed integer polynomials
    /// stay integral.
    pub fn random(n: usize, seed: u64, bound: i64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let s: Vec<Vec<Rational>> =
                (0..n).map(|_| (0..n).map(|_| rat(rng.gen_range(-bound..=bound))).collect()).collect();
            if let Some(m) = invert(&s) {
                return Frame { matrix: m, inverse: s, seed: Some(seed) };
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn inverse(&self) -> &[Vec<Rational>] {
        &self.inverse
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn is_identity(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, c)| if i == j { c.is_one() } else { c.is_zero() }))
    }

    /// `self` followed by `next`: coordinates `next.M · self.M · x`.
    pub fn then(&self, next: &Frame) -> Frame {
        let matrix = matmul(&next.matrix, &self.matrix);
        let inverse = matmul(&self.inverse, &next.inverse);
        Frame { matrix, inverse, seed: next.seed.or(self.seed) }
    }

    pub fn inverted(&self) -> Frame {
        Frame { matrix: self.inverse.clone(), inverse: self.matrix.clone(), seed: self.seed }
    }
}

/// Rewrites `p` in the coordinates of `frame`.
pub fn apply_frame(p: &Polynomial, frame: &Frame) -> Result<Polynomial> {
    let n = p.nvars();
    if frame.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: frame.dim() });
    }
    if frame.is_identity() {
        return Ok(p.clone());
    }
    let v = p.vars().clone();
    let images: Vec<Polynomial> = frame
        .inverse
        .iter()
        .map(|row| {
            let terms = row
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (super::Monomial::var(n, j, 1), c.clone()))
                .collect();
            Polynomial::from_terms(v.clone(), terms)
        })
        .collect();
    Ok(p.compose(&images))
}

/// The Lê-Iomdine perturbation `f + a z₀^m` together with the rotated
/// frame `(z₁, …, z_n, z₀)` in which its Lê numbers are taken.
pub fn iomdine(f: &Polynomial, m: u32, a: &Rational) -> Result<(Polynomial, Frame)> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("exponent m = {m} must be at least 2")));
    }
    if a.is_zero() {
        return Err(Error::InvalidArgument("the coefficient a must be nonzero".into()));
    }
    let n = f.nvars();
    let pert = Polynomial::monomial(f.vars().clone(), super::Monomial::var(n, 0, m as u16), a.clone());
    Ok((f.add(&pert), Frame::rotation(n)))
}

/// How a generic linear section is chosen.
#[derive(Clone, Debug)]
pub enum Section {
    /// Keep the first `k` variables and replace each other variable by a
    /// random integer combination of them.
    Seed { seed: u64, bound: i64 },
    /// Restrict to `V(z_k, …, z_n)` in the given frame.
    Frame(Frame),
}

/// Restriction of `f` to a `k`-dimensional linear subspace through the
/// origin. For `k = n + 1` the polynomial is returned unchanged.
pub fn restrict(f: &Polynomial, k: usize, section: &Section) -> Result<Polynomial> {
    let n = f.nvars();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("section dimension {k} outside 1..={n}")));
    }
    if k == n {
        return Ok(f.clone());
    }
    let kept = vars(&f.vars()[..k]);
    match section {
        Section::Seed { seed, bound } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let images: Vec<Polynomial> = (0..n)
                .map(|i| {
                    if i < k {
                        Polynomial::var(kept.clone(), i)
                    } else {
                        let terms = (0..k)
                            .map(|j| (super::Monomial::var(k, j, 1), rat(rng.gen_range(-*bound..=*bound))))
                            .collect();
                        Polynomial::from_terms(kept.clone(), terms)
                    }
                })
                .collect();
            Ok(f.compose(&images))
        }
        Section::Frame(frame) => {
            let g = apply_frame(f, frame)?;
            let mut h = g;
            for i in k..n {
                h = h.set_zero(i);
            }
            let keep: Vec<bool> = (0..n).map(|i| i < k).collect();
            Ok(h.drop_vars(&keep, kept))
        }
    }
}

/// Restriction to `V(z₀)` in the current coordinates, as a polynomial in
/// `(z₁, …, z_n)`.
pub fn restrict_to_first_hyperplane(f: &Polynomial) -> Polynomial {
    let n = f.nvars();
    assert!(n >= 2, "need at least two variables");
    let keep: Vec<bool> = (0..n).map(|i| i > 0).collect();
    f.set_zero(0).drop_vars(&keep, vars(&f.vars()[1..]))
}


fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(rat(0), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse over the rationals.
pub(crate) fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { rat(1) } else { rat(0) }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].inv();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &factor * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn p(s: &str, v: &[&str]) -> Polynomial {
        parse(s, &vars(v)).unwrap()
    }

    #[test]
    fn identity_and_permutation() {
        let f = p("y^3", &["t", "x", "y"]);
        assert_eq!(apply_frame(&f, &Frame::identity(3)).unwrap(), f);
        let perm = Frame::permutation(&[2, 1, 0]).unwrap();
        assert_eq!(apply_frame(&f, &perm).unwrap(), p("t^3", &["t", "x", "y"]));
    }

    #[test]
    fn random_frame_preserves_multiplicity() {
        let f = p("x^2+y^2", &["x", "y"]);
        for seed in 0..5 {
            let fr = Frame::random(2, seed, DEFAULT_BOUND);
            let g = apply_frame(&f, &fr).unwrap();
            assert_eq!(g.mult_origin().unwrap(), 2);
            let back = apply_frame(&g, &fr.inverted()).unwrap();
            assert_eq!(back, f);
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(Frame::from_matrix(m), Err(Error::SingularFrame));
    }

    #[test]
    fn iomdine_adds_one_term() {
        let f = p("x^2+y^2", &["x", "y"]);
        let (g, rot) = iomdine(&f, 2, &rat(1)).unwrap();
        assert_eq!(g, p("2*x^2+y^2", &["x", "y"]));
        let f = p("(x^2-z^2+y^2)*(x-z)", &["x", "y", "z"]);
        let (g, _) = iomdine(&f, 9, &rat(1)).unwrap();
        assert_eq!(g.len(), f.len() + 1);
        assert_eq!(g.degree(), Some(9));
        assert_eq!(apply_frame(&p("x", &["x", "y"]), &rot).unwrap(), p("y", &["x", "y"]));
        assert!(iomdine(&f, 1, &rat(1)).is_err());
    }

    #[test]
    fn restriction_keeps_homogeneity() {
        let f = p("(x^2-z^2+y^2)*(x-z)", &["x", "y", "z"]);
        assert_eq!(restrict(&f, 3, &Section::Seed { seed: 1, bound: 10 }).unwrap(), f);
        for k in 1..3 {
            let g = restrict(&f, k, &Section::Seed { seed: 3, bound: 10 }).unwrap();
            assert_eq!(g.nvars(), k);
            assert_eq!(g.homogeneous_degree().unwrap(), Some(3));
        }
        assert!(restrict(&f, 0, &Section::Seed { seed: 1, bound: 10 }).is_err());
        assert!(restrict(&f, 4, &Section::Seed { seed: 1, bound: 10 }).is_err());
    }
}
