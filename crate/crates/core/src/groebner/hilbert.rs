//! Combinatorics of monomial ideals: Hilbert series numerators, dimension
//! and degree.

use crate::poly::Monomial;

/// Removes redundant generators (those divisible by another generator).
pub fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = gens.to_vec();
    sorted.sort_by_key(|m| m.degree());
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of
/// `K[x_1..x_n] / (gens)`, as coefficients of `1, t, t², …`.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<i64> {
    let gens = minimalize(gens);
    numerator_rec(gens)
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    // pairwise coprime generators: product of (1 - t^deg)
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut acc = vec![1i64];
        for m in &gens {
            acc = poly_mul(&acc, &one_minus_t_pow(m.degree() as usize));
        }
        return acc;
    }
    // Pivot x_v^e with v most frequent among the mixed generators and e the
    // median exponent there; both I + (p) and I : p strictly grow.
    let n = gens[0].nvars();
    let mixed: Vec<&Monomial> = gens.iter().filter(|m| m.exponents().iter().filter(|&&e| e > 0).count() > 1).collect();
    let mut best = (0usize, 0usize);
    for v in 0..n {
        let cnt = mixed.iter().filter(|m| m.exponents()[v] > 0).count();
        if cnt > best.1 {
            best = (v, cnt);
        }
    }
    let v = best.0;
    let mut exps: Vec<u16> = mixed.iter().map(|m| m.exponents()[v]).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let pivot = Monomial::var(n, v, e);
    // N(I) = N(I + (p)) + t^deg(p) N(I : p)
    let mut with_p = gens.clone();
    with_p.push(pivot.clone());
    let with_p = minimalize(&with_p);
    let colon: Vec<Monomial> = minimalize(&gens.iter().map(|m| m.colon(&pivot)).collect::<Vec<_>>());
    let a = numerator_rec(with_p);
    let b = numerator_rec(colon);
    let shifted = {
        let mut s = vec![0i64; e as usize];
        s.extend(b);
        s
    };
    poly_add(&a, &shifted)
}

fn one_minus_t_pow(d: usize) -> Vec<i64> {
    let mut v = vec![0i64; d + 1];
    v[0] = 1;
    v[d] -= 1;
    v
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Krull dimension and degree of `K[x_1..x_n] / (gens)`. The dimension is
/// `-1` and the degree `0` for the unit ideal.
pub fn dimension_and_degree(gens: &[Monomial], nvars: usize) -> (i64, u64) {
    let mut num = hilbert_numerator(gens);
    if num.iter().all(|&c| c == 0) {
        return (-1, 0);
    }
    let mut k = 0usize;
    // divide by (1 - t) while N(1) = 0
    while num.iter().sum::<i64>() == 0 {
        let mut q = vec![0i64; num.len() - 1];
        let mut acc = 0i64;
        for i in 0..num.len() - 1 {
            acc += num[i];
            q[i] = acc;
        }
        num = trim(q);
        k += 1;
    }
    let deg: i64 = num.iter().sum();
    debug_assert!(deg > 0);
    ((nvars as i64) - k as i64, deg as u64)
}

/// Dimension as the size of a largest set of variables containing the
/// support of no generator.
pub fn dimension_by_independent_sets(gens: &[Monomial], nvars: usize) -> i64 {
    let gens = minimalize(gens);
    if gens.iter().any(|m| m.is_one()) {
        return -1;
    }
    let supports: Vec<u64> = gens
        .iter()
        .map(|m| m.exponents().iter().enumerate().fold(0u64, |a, (i, &e)| if e > 0 { a | 1 << i } else { a }))
        .collect();
    fn search(v: usize, n: usize, chosen: u64, size: i64, supports: &[u64], best: &mut i64) {
        if size + (n - v) as i64 <= *best {
            return;
        }
        if v == n {
            *best = size;
            return;
        }
        let with = chosen | 1 << v;
        if supports.iter().all(|&s| s & !with != 0) {
            search(v + 1, n, with, size + 1, supports, best);
        }
        search(v + 1, n, chosen, size, supports, best);
    }
    let mut best = 0;
    search(0, nvars, 0, 0, &supports, &mut best);
    best
}

/// Number of monomials outside the ideal, when finite.
pub fn standard_monomial_count(gens: &[Monomial], nvars: usize) -> Option<u64> {
    match dimension_and_degree(gens, nvars) {
        (-1, _) => Some(0),
        (0, d) => Some(d),
        _ => None,
    }
}
