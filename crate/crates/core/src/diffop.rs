//! Differential-operator form `T = Σ_k Q_k(x) D^k` of an operator that acts
//! diagonally on the generalized Hermite basis, `T[H_n^{(α)}] = γ_n H_n^{(α)}`.
//!
//! The coefficient polynomials have the closed form
//!
//! ```text
//! Q_{k,p}(x) = Σ_{j=0}^{⌊k/2⌋} (-α)^j / (j! (k-2j)!) · g_{k-j,p}^*(-1) · H_{k-2j}^{(α)}(x)
//! ```
//!
//! [`solve_operator_from_action`] recovers the same polynomials from the
//! eigen-relations alone and serves as an independent oracle for it.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermite::{hermite_polys, HermiteParam};
use crate::jensen::{gstar_values, GammaSeq};
use crate::poly::RatPoly;
use crate::rat::{factorial, Rat};
use crate::report::CheckReport;

/// An operator truncated to order `K = Q.len() - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermiteDiffOp {
    pub alpha: HermiteParam,
    pub p_shift: usize,
    #[serde(rename = "Q")]
    q: Vec<RatPoly>,
}

impl HermiteDiffOp {
    pub fn new(alpha: HermiteParam, p_shift: usize, q: Vec<RatPoly>) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::InvalidParameter("operator needs at least Q_0".into()));
        }
        Ok(HermiteDiffOp { alpha, p_shift, q })
    }

    /// The truncation order `K`.
    pub fn order(&self) -> usize {
        self.q.len() - 1
    }

    pub fn coefficients(&self) -> &[RatPoly] {
        &self.q
    }

    pub fn coefficient(&self, k: usize) -> Option<&RatPoly> {
        self.q.get(k)
    }
}

/// `Q_{k,p}` for a single `k`.
pub fn coefficient_polynomial(alpha: &HermiteParam, seq: &GammaSeq, k: usize, p: usize) -> RatPoly {
    let g = gstar_values(seq, k, p);
    let h = hermite_polys(k, alpha);
    q_from_parts(alpha, &g, &h, k)
}

/// `Q_{0,p}, …, Q_{k_max,p}` sharing one table of `g^*` values and Hermite polynomials.
pub fn coefficient_polynomials(
    alpha: &HermiteParam,
    seq: &GammaSeq,
    k_max: usize,
    p: usize,
) -> Vec<RatPoly> {
    let g = gstar_values(seq, k_max, p);
    let h = hermite_polys(k_max, alpha);
    (0..=k_max).map(|k| q_from_parts(alpha, &g, &h, k)).collect()
}

fn q_from_parts(alpha: &HermiteParam, g: &[Rat], h: &[RatPoly], k: usize) -> RatPoly {
    let mut acc = RatPoly::zero();
    let mut neg_alpha_pow = Rat::one();
    for j in 0..=k / 2 {
        let weight = &neg_alpha_pow * &g[k - j] / Rat::from_integer(factorial(j) * factorial(k - 2 * j));
        if !weight.is_zero() {
            acc = &acc + &h[k - 2 * j].scale(&weight);
        }
        neg_alpha_pow *= -alpha.value();
    }
    acc
}

pub fn build_operator(alpha: &HermiteParam, seq: &GammaSeq, k_max: usize, p: usize) -> HermiteDiffOp {
    HermiteDiffOp {
        alpha: alpha.clone(),
        p_shift: p,
        q: coefficient_polynomials(alpha, seq, k_max, p),
    }
}

/// Coefficient `g_k^*(-1)/k! · x^k` of the operator diagonal on `{x^n}`.
pub fn standard_coefficient(seq: &GammaSeq, k: usize) -> RatPoly {
    let g = gstar_values(seq, k, 0);
    RatPoly::monomial(&g[k] / Rat::from_integer(factorial(k)), k)
}

/// `Σ_{k=0}^{K} Q_k f^{(k)}`; exact as long as `K ≥ deg f`.
pub fn apply_operator(op: &HermiteDiffOp, f: &RatPoly) -> Result<RatPoly> {
    let deg = f.degree().unwrap_or(0);
    if op.order() < deg {
        return Err(Error::TruncationTooShort {
            order: op.order(),
            degree: deg,
        });
    }
    let mut out = RatPoly::zero();
    let mut d = f.clone();
    for q in op.q.iter().take(deg + 1) {
        out = &out + &(q * &d);
        d = d.derivative(1);
    }
    Ok(out)
}

/// Builds each `Q_n` from `T[H_n] = γ_n H_n` by forward substitution:
/// `n! Q_n = γ_n H_n - Σ_{k<n} Q_k D^k H_n`, since `D^n H_n = n!`.
pub fn solve_operator_from_action(alpha: &HermiteParam, seq: &GammaSeq, order: usize) -> Result<HermiteDiffOp> {
    alpha.require_positive("solving for the operator")?;
    let gammas = seq.values(order + 1);
    let h = hermite_polys(order, alpha);
    let mut q: Vec<RatPoly> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut rest = h[n].scale(&gammas[n]);
        let mut d = h[n].clone();
        for qk in &q {
            rest = &rest - &(qk * &d);
            d = d.derivative(1);
        }
        q.push(rest.scale(&Rat::new(BigInt::one(), factorial(n))));
    }
    Ok(HermiteDiffOp {
        alpha: alpha.clone(),
        p_shift: 0,
        q,
    })
}

/// For each `n ≤ n_max`: `T[H_n] = γ_n H_n`, with `T` truncated at order `n`.
pub fn verify_diagonal_action(alpha: &HermiteParam, seq: &GammaSeq, n_max: usize) -> Result<CheckReport> {
    alpha.require_positive("diagonal verification")?;
    let mut report = CheckReport::new("diagonal-action");
    let op = build_operator(alpha, seq, n_max, 0);
    let h = hermite_polys(n_max, alpha);
    let gammas = seq.values(n_max + 1);
    for n in 0..=n_max {
        let truncated = HermiteDiffOp {
            alpha: alpha.clone(),
            p_shift: 0,
            q: op.q[..=n].to_vec(),
        };
        let image = apply_operator(&truncated, &h[n])?;
        let residual = &image - &h[n].scale(&gammas[n]);
        report.record(residual.is_zero(), || format!("n={n}"), "eigen-relation", || format!("residual {residual}"));
    }
    Ok(report)
}

/// At `α = 0` the closed form must reduce to `g_k^*(-1)/k! x^k` exactly, and
/// every coefficient of `Q_k^α` must be a polynomial in `α` of degree at most
/// `⌊k/2⌋` whose value at `0` is that limit. The polynomial structure is
/// confirmed by interpolating through `max(4, ⌊k/2⌋ + 2)` samples
/// `α = 1, 1/2, 1/4, …`.
pub fn alpha_zero_limit_check(seq: &GammaSeq, k_max: usize) -> CheckReport {
    let mut report = CheckReport::new("alpha-zero-limit");
    let zero = HermiteParam::new(Rat::zero()).expect("zero is admissible");
    let at_zero = coefficient_polynomials(&zero, seq, k_max, 0);
    for (k, q0) in at_zero.iter().enumerate() {
        let std = standard_coefficient(seq, k);
        report.record(*q0 == std, || format!("k={k}"), "alpha=0 substitution", || format!("{q0} != {std}"));
    }

    let bound = k_max / 2;
    let samples: Vec<(Rat, Vec<RatPoly>)> = (0..(bound + 2).max(4))
        .map(|i| {
            let a = Rat::new(BigInt::one(), BigInt::one() << i);
            let qs = coefficient_polynomials(&HermiteParam::new(a.clone()).expect("positive"), seq, k_max, 0);
            (a, qs)
        })
        .collect();
    for (k, q0) in at_zero.iter().enumerate() {
        let npts = (k / 2 + 2).max(4);
        for c in 0..=k {
            let pts: Vec<(Rat, Rat)> = samples[..npts]
                .iter()
                .map(|(a, qs)| (a.clone(), qs[k].coeff(c)))
                .collect();
            let interp = RatPoly::interpolate(&pts).expect("distinct samples");
            let deg_ok = interp.degree().is_none_or(|d| d <= k / 2);
            let limit = interp.eval(&Rat::zero());
            let ok = deg_ok && limit == q0.coeff(c);
            report.record(
                ok,
                || format!("k={k},coeff=x^{c}"),
                "polynomial in alpha",
                || format!("interpolant {interp} in alpha; alpha=0 value {}", q0.coeff(c)),
            );
        }
    }
    report
}

/// `p(x) = Σ_k C(x,k) Q_k^{(k)}`, the polynomial with `p(n) = γ_n` when the
/// operator has finite order.
pub fn interpolation_poly(op: &HermiteDiffOp) -> Result<RatPoly> {
    let mut out = RatPoly::zero();
    for (k, q) in op.q.iter().enumerate() {
        let dk = q.derivative(k);
        if !dk.is_constant() {
            return Err(Error::NonConstantDerivative { k });
        }
        out = &out + &RatPoly::binomial_poly(k).scale(&dk.coeff(0));
    }
    Ok(out)
}
