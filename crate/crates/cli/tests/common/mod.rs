#![allow(dead_code)]

use hermdiag::rat::int;
use hermdiag::{Rat, RatPoly};
use num_traits::{Signed, Zero};

/// Power sums `s_0..s_{2n-2}` of the roots of `p` by Newton's identities.
fn power_sums(p: &RatPoly) -> Vec<Rat> {
    let n = p.degree().unwrap();
    let lead = p.leading().unwrap().clone();
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

/// `(positive, negative)` inertia of a symmetric rational matrix.
fn inertia(mut m: Vec<Vec<Rat>>) -> (usize, usize) {
    let (mut pos, mut neg) = (0, 0);
    while !m.is_empty() {
        let n = m.len();
        let i = match (0..n).find(|&i| !m[i][i].is_zero()) {
            Some(i) => i,
            None => {
                let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !m[i][j].is_zero()) else {
                    break;
                };
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
        m = (0..n)
            .filter(|&r| r != i)
            .map(|r| (0..n).filter(|&c| c != i).map(|c| &m[r][c] - &m[r][i] * &row[c] / &d).collect())
            .collect();
    }
    (pos, neg)
}

/// Real-rootedness from the signature of the Hankel matrix of power sums,
/// independent of Sturm sequences.
pub fn hankel_real_rooted(p: &RatPoly) -> bool {
    let Some(n) = p.degree().filter(|&n| n > 0) else {
        return true;
    };
    let s = power_sums(p);
    let h = (0..n).map(|i| (0..n).map(|j| s[i + j].clone()).collect()).collect();
    let (_, neg) = inertia(h);
    neg == 0
}
