//! Generalized Hermite polynomials `H_n^{(α)}`.
//!
//! `H_n^{(α)}` is monic of degree `n`,
//!
//! ```text
//! H_n^{(α)}(x) = Σ_{j=0}^{⌊n/2⌋} n! / 2^j · (-α)^j / (j! (n-2j)!) · x^{n-2j}
//! ```
//!
//! and `α = 0` is admitted as the limit `H_n^{(0)}(x) = x^n`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::rat::{self, factorial, from_usize, Rat};
use crate::report::CheckReport;

/// The Hermite parameter `α ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct HermiteParam(Rat);

impl HermiteParam {
    pub fn new(alpha: Rat) -> Result<Self> {
        if alpha.is_negative() {
            return Err(Error::InvalidParameter(format!(
                "Hermite parameter must be nonnegative, got {alpha}"
            )));
        }
        Ok(HermiteParam(alpha))
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub(crate) fn require_positive(&self, what: &str) -> Result<()> {
        if self.0.is_positive() {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{what} requires alpha > 0")))
        }
    }
}

impl TryFrom<String> for HermiteParam {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        HermiteParam::new(rat::parse_rat(&s)?)
    }
}

impl From<HermiteParam> for String {
    fn from(a: HermiteParam) -> String {
        rat::to_exact_string(&a.0)
    }
}

pub fn hermite_poly(n: usize, alpha: &HermiteParam) -> RatPoly {
    let a = alpha.value();
    let n_fact = Rat::from_integer(factorial(n));
    let mut coeffs = vec![Rat::zero(); n + 1];
    let mut two_pow = BigInt::one();
    let mut neg_alpha_pow = Rat::one();
    for j in 0..=n / 2 {
        let denom = &two_pow * factorial(j) * factorial(n - 2 * j);
        coeffs[n - 2 * j] = &n_fact * &neg_alpha_pow / Rat::from_integer(denom);
        two_pow *= 2;
        neg_alpha_pow *= -a;
    }
    RatPoly::new(coeffs)
}

/// `H_0^{(α)}, …, H_{n_max}^{(α)}`.
pub fn hermite_polys(n_max: usize, alpha: &HermiteParam) -> Vec<RatPoly> {
    (0..=n_max).map(|n| hermite_poly(n, alpha)).collect()
}

/// Classical (physicists') Hermite polynomials via `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn classical_hermite(n: usize) -> RatPoly {
    let two_x = RatPoly::monomial(rat::int(2), 1);
    let mut prev = RatPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two_x.clone();
    for k in 1..n {
        let next = &(&two_x * &cur) - &prev.scale(&rat::from_usize(2 * k));
        prev = cur;
        cur = next;
    }
    cur
}

/// A polynomial written in the basis `H_k^{(α)}`; `coeffs[k]` multiplies `H_k^{(α)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermiteExpansion {
    pub alpha: HermiteParam,
    #[serde(with = "crate::rat::serde_rat_vec")]
    coeffs: Vec<Rat>,
}

impl HermiteExpansion {
    pub fn new(alpha: HermiteParam, mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        HermiteExpansion { alpha, coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &HermiteExpansion) -> Result<HermiteExpansion> {
        if self.alpha != other.alpha {
            return Err(Error::AlphaMismatch {
                left: String::from(self.alpha.clone()),
                right: String::from(other.alpha.clone()),
            });
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(HermiteExpansion::new(
            self.alpha.clone(),
            (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect(),
        ))
    }
}

pub fn hermite_product_expand(n: usize, m: usize, alpha: &HermiteParam) -> HermiteExpansion {
    let mut coeffs = vec![Rat::zero(); n + m + 1];
    let mut alpha_pow = Rat::one();
    for i in 0..=n.min(m) {
        let c = factorial(i) * rat::binomial(m, i) * rat::binomial(n, i);
        coeffs[n + m - 2 * i] = &alpha_pow * Rat::from_integer(c);
        alpha_pow *= alpha.value();
    }
    HermiteExpansion::new(alpha.clone(), coeffs)
}

/// Back-substitution on the unit-triangular change of basis.
pub fn to_hermite_basis(p: &RatPoly, alpha: &HermiteParam) -> HermiteExpansion {
    let Some(deg) = p.degree() else {
        return HermiteExpansion::new(alpha.clone(), Vec::new());
    };
    let basis = hermite_polys(deg, alpha);
    let mut rest = p.clone();
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for k in (0..=deg).rev() {
        let c = rest.coeff(k);
        if !c.is_zero() {
            rest = &rest - &basis[k].scale(&c);
            coeffs[k] = c;
        }
    }
    debug_assert!(rest.is_zero());
    HermiteExpansion::new(alpha.clone(), coeffs)
}

pub fn from_hermite_basis(e: &HermiteExpansion) -> RatPoly {
    e.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(RatPoly::zero(), |acc, (k, c)| {
            &acc + &hermite_poly(k, &e.alpha).scale(c)
        })
}

/// Checks, for every `n ≤ n_max`:
/// `D H_n = n H_{n-1}`, `n H_n = x D H_n - α D² H_n`, and the classical relation
/// `H_n(x/√(2β)) = (2/β)^{n/2} H_n^{(β)}(x)` at `β ∈ {1/2, 2}`, where the square
/// roots are rational.
pub fn check_hermite_identities(n_max: usize, alpha: &HermiteParam) -> Result<CheckReport> {
    alpha.require_positive("the Hermite differential equation")?;
    let mut report = CheckReport::new("hermite-identities");
    let polys = hermite_polys(n_max, alpha);
    let x = RatPoly::x();

    for n in 1..=n_max {
        let lhs = polys[n].derivative(1);
        let rhs = polys[n - 1].scale(&from_usize(n));
        report.record(lhs == rhs, || format!("n={n}"), "derivative", || format!("{lhs} != {rhs}"));
    }
    for (n, h) in polys.iter().enumerate() {
        let lhs = h.scale(&from_usize(n));
        let rhs = &(&x * &h.derivative(1)) - &h.derivative(2).scale(alpha.value());
        report.record(lhs == rhs, || format!("n={n}"), "differential-equation", || format!("{lhs} != {rhs}"));
    }
    // sqrt(2β) = s for s in {1, 2}, so β = s²/2 and (2/β)^{n/2} = (2/s)^n.
    for s in [1i64, 2] {
        let beta = HermiteParam::new(rat::rat(s * s, 2))?;
        let s = rat::int(s);
        for n in 0..=n_max {
            let lhs = classical_hermite(n).scale_arg(&s.recip());
            let rhs = hermite_poly(n, &beta).scale(&rat::pow(&(rat::int(2) / &s), n));
            report.record(
                lhs == rhs,
                || format!("n={n},beta={beta}", beta = String::from(beta.clone())),
                "classical-relation",
                || format!("{lhs} != {rhs}"),
            );
        }
    }
    Ok(report)
}

/// Product formula `H_n H_m = Σ α^i i! C(m,i) C(n,i) H_{m+n-2i}` for all `n, m ≤ n_max`.
pub fn check_product_formula(n_max: usize, alpha: &HermiteParam) -> CheckReport {
    let mut report = CheckReport::new("hermite-product");
    let polys = hermite_polys(n_max, alpha);
    for n in 0..=n_max {
        for m in 0..=n_max {
            let lhs = &polys[n] * &polys[m];
            let rhs = from_hermite_basis(&hermite_product_expand(n, m, alpha));
            report.record(lhs == rhs, || format!("n={n},m={m}"), "product", || format!("{lhs} != {rhs}"));
        }
    }
    report
}
