#![allow(dead_code)]

use hermdiag::jensen::{FactoredSpec, GammaSeq, LpPlusSpec};
use hermdiag::rat::{int, rat, Rat};
use hermdiag::RatPoly;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

pub fn poly_upto(deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(small_rat(), 1..=deg + 1).prop_map(RatPoly::new)
}

pub fn nonzero_poly_upto(deg: usize) -> impl Strategy<Value = RatPoly> {
    poly_upto(deg).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn factored(sigma: Rat, zeros: Vec<Rat>) -> LpPlusSpec {
    LpPlusSpec::Factored(FactoredSpec::new(int(1), 0, sigma, zeros).unwrap())
}

pub fn zero_multisets() -> Vec<Vec<Rat>> {
    vec![vec![], vec![int(1)], vec![int(1), int(2)], vec![int(1), int(1)]]
}

pub fn named_sequences() -> Vec<(&'static str, GammaSeq)> {
    vec![
        ("const1", GammaSeq::constant(int(1))),
        ("linear3", GammaSeq::linear(int(3))),
        ("example311", GammaSeq::example311()),
        ("besselJ0", GammaSeq::bessel_j0()),
    ]
}

/// Power sums `s_0..s_{2n-2}` of the roots of `p` (degree `n ≥ 1`), by Newton's identities.
fn power_sums(p: &RatPoly) -> Vec<Rat> {
    let n = p.degree().unwrap();
    let lead = p.leading().unwrap().clone();
    // a[k] is the coefficient of x^{n-k} in the monic polynomial
    let a: Vec<Rat> = (0..=n).map(|k| p.coeff(n - k) / &lead).collect();
    let mut s = vec![int(n as i64)];
    for m in 1..=(2 * n).saturating_sub(2).max(1) {
        let mut v = Rat::zero();
        for i in 1..m.min(n + 1) {
            v -= &a[i] * &s[m - i];
        }
        if m <= n {
            v -= &a[m] * int(m as i64);
        }
        s.push(v);
    }
    s
}

/// `(positive, negative)` inertia of a symmetric rational matrix, by congruence.
fn inertia(mut m: Vec<Vec<Rat>>) -> (usize, usize) {
    let (mut pos, mut neg) = (0, 0);
    while !m.is_empty() {
        let n = m.len();
        let pivot = (0..n).find(|&i| !m[i][i].is_zero());
        let i = match pivot {
            Some(i) => i,
            None => {
                let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !m[i][j].is_zero()) else {
                    break;
                };
                // e_i <- e_i + e_j makes the diagonal entry 2 m_ij
                for c in 0..n {
                    let v = m[j][c].clone();
                    m[i][c] += v;
                }
                for r in 0..n {
                    let v = m[r][j].clone();
                    m[r][i] += v;
                }
                i
            }
        };
        let d = m[i][i].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        let row = m[i].clone();
        let mut next = Vec::with_capacity(n - 1);
        for r in (0..n).filter(|&r| r != i) {
            next.push((0..n).filter(|&c| c != i).map(|c| &m[r][c] - &m[r][i] * &row[c] / &d).collect());
        }
        m = next;
    }
    (pos, neg)
}

/// `(distinct real roots, distinct roots)` from the Hankel matrix of power sums:
/// its rank counts distinct roots and its signature counts distinct real roots.
pub fn hankel_root_counts(p: &RatPoly) -> (usize, usize) {
    let n = p.degree().expect("nonzero");
    if n == 0 {
        return (0, 0);
    }
    let s = power_sums(p);
    let h: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| s[i + j].clone()).collect()).collect();
    let (pos, neg) = inertia(h);
    (pos - neg, pos + neg)
}

pub fn hankel_real_rooted(p: &RatPoly) -> bool {
    if p.degree().is_none_or(|d| d == 0) {
        return true;
    }
    let (real, total) = hankel_root_counts(p);
    real == total
}
