//! Generalized Laguerre polynomials and the operator
//! `T = a + (x - α - 1) D - x D²`, which satisfies `T[L_n^{(α)}] = (n + a) L_n^{(α)}`.
//!
//! All three coefficient polynomials of `T` have degree at most one and are
//! therefore real-rooted for every `(a, α)`, while `{k + a}` is a Laguerre
//! multiplier sequence only for `0 ≤ a ≤ α + 1`. The demo here exhibits
//! explicit witnesses outside that range.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::classify::{ms_falsifier, Basis, Verdict};
use crate::error::{Error, Result};
use crate::jensen::GammaSeq;
use crate::poly::RatPoly;
use crate::rat::{factorial, from_usize, sign_pow, Rat};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaguerreParam {
    #[serde(with = "crate::rat::serde_rat")]
    alpha: Rat,
    #[serde(with = "crate::rat::serde_rat")]
    a: Rat,
}

impl LaguerreParam {
    pub fn new(alpha: Rat, a: Rat) -> Result<Self> {
        check_alpha(&alpha)?;
        Ok(LaguerreParam { alpha, a })
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }
}

pub(crate) fn check_alpha(alpha: &Rat) -> Result<()> {
    if *alpha > -Rat::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("Laguerre parameter must exceed -1, got {alpha}")))
    }
}

/// `L_n^{(α)}(x) = Σ_k (-1)^k C(n+α, n-k) x^k / k!`, normalized by `L_n^{(α)}(0) = C(n+α, n)`.
pub fn laguerre_poly(n: usize, alpha: &Rat) -> RatPoly {
    let coeffs = (0..=n)
        .map(|k| {
            // C(n+α, n-k) = ∏_{j=k+1}^{n} (α+j) / (n-k)!
            let rising: Rat = ((k + 1)..=n).map(|j| alpha + from_usize(j)).product();
            sign_pow(k) * rising / Rat::from_integer(factorial(n - k) * factorial(k))
        })
        .collect();
    RatPoly::new(coeffs)
}

pub fn laguerre_polys(n_max: usize, alpha: &Rat) -> Vec<RatPoly> {
    (0..=n_max).map(|n| laguerre_poly(n, alpha)).collect()
}

/// The coefficient polynomials `[a, x - α - 1, -x]` of the operator.
pub fn operator_coefficients(params: &LaguerreParam) -> [RatPoly; 3] {
    [
        RatPoly::constant(params.a.clone()),
        RatPoly::new(vec![-(&params.alpha + Rat::one()), Rat::one()]),
        RatPoly::new(vec![Rat::zero(), -Rat::one()]),
    ]
}

/// `a f + (x - α - 1) f' - x f''`.
pub fn laguerre_operator_apply(params: &LaguerreParam, f: &RatPoly) -> RatPoly {
    let [q0, q1, q2] = operator_coefficients(params);
    &(&(&q0 * f) + &(&q1 * &f.derivative(1))) + &(&q2 * &f.derivative(2))
}

pub fn verify_laguerre_eigen(params: &LaguerreParam, n_max: usize) -> CheckReport {
    let mut report = CheckReport::new("laguerre-eigen");
    for (n, l) in laguerre_polys(n_max, &params.alpha).iter().enumerate() {
        let image = laguerre_operator_apply(params, l);
        let want = l.scale(&(from_usize(n) + &params.a));
        report.record(image == want, || format!("n={n}"), "eigen-relation", || format!("{image} != {want}"));
    }
    report
}

/// Coefficients of `p` in the basis `L_k^{(α)}`, by back-substitution
/// (leading coefficient of `L_n^{(α)}` is `(-1)^n / n!`).
pub fn to_laguerre_basis(p: &RatPoly, alpha: &Rat) -> Vec<Rat> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let basis = laguerre_polys(deg, alpha);
    let mut rest = p.clone();
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for k in (0..=deg).rev() {
        let c = rest.coeff(k) * sign_pow(k) * Rat::from_integer(factorial(k));
        if !c.is_zero() {
            rest = &rest - &basis[k].scale(&c);
            coeffs[k] = c;
        }
    }
    coeffs
}

pub fn from_laguerre_basis(coeffs: &[Rat], alpha: &Rat) -> RatPoly {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(RatPoly::zero(), |acc, (k, c)| &acc + &laguerre_poly(k, alpha).scale(c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DemoEntry {
    #[serde(with = "crate::rat::serde_rat")]
    pub a: Rat,
    /// Always true: the operator's coefficients have degree at most one.
    pub coefficients_real_rooted: bool,
    /// Whether `a` lies in the multiplier-sequence range `[0, α+1]`.
    pub in_known_range: bool,
    pub verdict: Verdict,
}

/// For each `a`: confirms the operator coefficients are real-rooted and runs
/// the witness search on `{k + a}` in the `L^{(α)}` basis up to `deg_max`.
pub fn laguerre_counterexample_demo(alpha: &Rat, a_values: &[Rat], deg_max: usize) -> Result<Vec<DemoEntry>> {
    check_alpha(alpha)?;
    a_values
        .iter()
        .map(|a| {
            let params = LaguerreParam::new(alpha.clone(), a.clone())?;
            let coefficients_real_rooted = operator_coefficients(&params).iter().all(RatPoly::is_real_rooted);
            let verdict = ms_falsifier(&GammaSeq::linear(a.clone()), &Basis::laguerre(alpha.clone())?, deg_max)?;
            Ok(DemoEntry {
                a: a.clone(),
                coefficients_real_rooted,
                in_known_range: !a.is_negative() && *a <= alpha + Rat::one(),
                verdict,
            })
        })
        .collect()
}

/// `C(n + α, n)`, the value of `L_n^{(α)}` at zero.
pub fn value_at_zero(n: usize, alpha: &Rat) -> Rat {
    let rising: Rat = (1..=n).map(|j| alpha + from_usize(j)).product();
    rising / Rat::from_integer(factorial(n))
}
