//! Reference computations that share no code with the library: fraction-free
//! elimination over big integers, invariant factors from gcds of minors, and
//! homology ranks from matrix ranks.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hfk_core::algebra::{grading, BigMatrix, GradedGroup, IntegerMatrix};
use hfk_core::knot_db;
use hfk_core::CompanionData;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn to_big(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| BigInt::from(m.get(r, c))).collect())
        .collect()
}

/// Determinant by Bareiss elimination.
pub fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Rank over the rationals by fraction-free row reduction.
pub fn rank(m: &IntegerMatrix) -> usize {
    let mut a = to_big(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let (f, g) = (a[r][c].clone(), a[i][c].clone());
                for j in 0..cols {
                    a[i][j] = &a[i][j] * &f - &a[r][j] * &g;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Nonzero invariant factors `d_k / d_{k-1}`, where `d_k` is the gcd of all
/// `k x k` minors.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<i64> {
    let a = to_big(m);
    let mut divisors = vec![BigInt::one()];
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| a[r][c].clone()).collect())
                    .collect();
                g = g.gcd(&det(minor));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors
        .windows(2)
        .map(|w| i64::try_from(&w[1] / &w[0]).unwrap())
        .collect()
}

pub fn mul(a: &IntegerMatrix, b: &IntegerMatrix) -> IntegerMatrix {
    assert_eq!(a.cols(), b.rows());
    let mut out = IntegerMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let s: i64 = (0..a.cols()).map(|k| a.get(i, k) * b.get(k, j)).sum();
            out.set(i, j, s);
        }
    }
    out
}

/// Exact product, for checking factorizations whose intermediate sums may exceed `i64`.
pub fn mul_big(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn is_unimodular(m: &BigMatrix) -> bool {
    m.rows() == m.cols() && det(m.to_rows()).abs().is_one()
}

/// Free ranks of the homology of an integer-graded complex over the
/// rationals: `b_m = n_m - rank(d out of m) - rank(d into m)`.
pub fn betti(gradings: &[i64], d: &IntegerMatrix) -> BTreeMap<i64, u64> {
    let idx = |m: i64| -> Vec<usize> { (0..gradings.len()).filter(|&i| gradings[i] == m).collect() };
    let mut out = BTreeMap::new();
    let mut levels: Vec<i64> = gradings.to_vec();
    levels.sort_unstable();
    levels.dedup();
    for m in levels {
        let here = idx(m);
        let out_rank = rank(&d.select(&idx(m - 1), &here));
        let in_rank = rank(&d.select(&here, &idx(m + 1)));
        let b = here.len() - out_rank - in_rank;
        if b > 0 {
            out.insert(m, b as u64);
        }
    }
    out
}

/// A random product of elementary operations and its inverse.
pub fn random_unimodular<R: Rng>(n: usize, steps: usize, rng: &mut R) -> (IntegerMatrix, IntegerMatrix) {
    let mut p = IntegerMatrix::identity(n);
    let mut q = IntegerMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            p.set(0, 0, -1);
            q.set(0, 0, -1);
        }
        return (p, q);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = rng.gen_range(-2..=2);
        // p <- E p with E = I + c e_ij; q <- q E^{-1}.
        let mut e = IntegerMatrix::identity(n);
        e.set(i, j, c);
        let mut einv = IntegerMatrix::identity(n);
        einv.set(i, j, -c);
        p = mul(&e, &p);
        q = mul(&q, &einv);
    }
    (p, q)
}

pub fn z(d: i64, k: u64) -> GradedGroup {
    GradedGroup::free(grading(d), k)
}

pub fn companion(key: &str) -> CompanionData {
    knot_db::load(key).unwrap().companion().unwrap()
}

pub fn bundled() -> Vec<(String, CompanionData)> {
    knot_db::bundled_keys()
        .into_iter()
        .map(|k| {
            let c = companion(&k);
            (k, c)
        })
        .collect()
}

/// `sum_d (-1)^d rank_d`, straight from the ranks.
pub fn chi(g: &GradedGroup) -> i64 {
    g.iter()
        .map(|(d, s)| {
            assert!(d.is_integer());
            let sign = if d.to_integer().rem_euclid(2) == 0 { 1 } else { -1 };
            sign * s.free as i64
        })
        .sum()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

/// A complex with known homology, conjugated by random unimodular matrices
/// that preserve the grading.
pub fn conjugated_complex<R: Rng>(rng: &mut R) -> (Vec<i64>, IntegerMatrix, IntegerMatrix) {
    let mut gradings = Vec::new();
    let mut arrows = Vec::new();
    for _ in 0..rng.gen_range(1..=6) {
        let m = rng.gen_range(-2..=2);
        if rng.gen_bool(0.5) {
            gradings.push(m);
        } else {
            let src = gradings.len();
            gradings.push(m);
            gradings.push(m - 1);
            arrows.push((src, src + 1, rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 }));
        }
    }
    let n = gradings.len();
    let mut d = IntegerMatrix::zeros(n, n);
    for &(s, t, c) in &arrows {
        d.set(t, s, c);
    }
    // Change of basis within each grading: P d P^{-1}.
    let mut p = IntegerMatrix::identity(n);
    let mut q = IntegerMatrix::identity(n);
    let mut levels = gradings.clone();
    levels.sort_unstable();
    levels.dedup();
    for m in levels {
        let idx: Vec<usize> = (0..n).filter(|&i| gradings[i] == m).collect();
        let (bp, bq) = random_unimodular(idx.len(), 6, rng);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                p.set(i, j, bp.get(a, b));
                q.set(i, j, bq.get(a, b));
            }
        }
    }
    let conj = mul(&mul(&p, &d), &q);
    (gradings, d, conj)
}
