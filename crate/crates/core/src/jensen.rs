//! Sequences `{γ_k}`, entire functions in L-P⁺ given as data, and the
//! reversed Jensen values `g_{k,p}^*(-1)` derived from them.
//!
//! The reversed Jensen polynomial of order `n` is
//! `g_n^*(x) = Σ_{k=0}^{n} C(n,k) γ_k x^{n-k}`, and its shifted value at `-1`
//! is `g_{k,p}^*(-1) = Σ_{n=0}^{k} C(k,n) γ_{n+p} (-1)^{k-n}`, the `k`-th
//! forward difference of `γ` at `p`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::rat::{self, binomial_row, factorial, sign_pow, Rat};
use crate::report::CheckReport;

/// `c x^m e^{σx} ∏ (1 + x/x_k)` with `c > 0`, `σ ≥ 0` and finitely many `x_k > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredSpec {
    #[serde(with = "crate::rat::serde_rat")]
    c: Rat,
    m: usize,
    #[serde(with = "crate::rat::serde_rat")]
    sigma: Rat,
    #[serde(with = "crate::rat::serde_rat_vec")]
    zeros: Vec<Rat>,
}

impl FactoredSpec {
    pub fn new(c: Rat, m: usize, sigma: Rat, zeros: Vec<Rat>) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
        }
        if sigma.is_negative() {
            return Err(Error::InvalidParameter(format!("sigma must be nonnegative, got {sigma}")));
        }
        if let Some(z) = zeros.iter().find(|z| !z.is_positive()) {
            return Err(Error::InvalidParameter(format!("zeros x_k must be positive, got {z}")));
        }
        Ok(FactoredSpec { c, m, sigma, zeros })
    }

    pub fn c(&self) -> &Rat {
        &self.c
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn sigma(&self) -> &Rat {
        &self.sigma
    }

    pub fn zeros(&self) -> &[Rat] {
        &self.zeros
    }

    /// Coefficients `a_j` of `∏ (1 + x/x_k) = Σ a_j x^j`.
    pub fn product_coeffs(&self) -> Vec<Rat> {
        self.zeros
            .iter()
            .fold(RatPoly::one(), |acc, z| &acc * &RatPoly::new(vec![Rat::one(), z.recip()]))
            .into_coeffs()
    }

    /// `k! [x^k] c x^m e^{s x} ∏(1 + x/x_k)` for `k < len`, at an arbitrary exponential rate `s`.
    fn scaled_taylor_prefix(&self, s: &Rat, len: usize) -> Vec<Rat> {
        let a = self.product_coeffs();
        // exp_terms[e] = s^e / e!
        let mut exp_terms = Vec::with_capacity(len);
        let mut term = Rat::one();
        for e in 0..len {
            if e > 0 {
                term = term * s / rat::from_usize(e);
            }
            exp_terms.push(term.clone());
        }
        let mut fact = BigInt::one();
        (0..len)
            .map(|k| {
                if k > 0 {
                    fact *= BigInt::from(k);
                }
                if k < self.m {
                    return Rat::zero();
                }
                let r = k - self.m;
                let sum: Rat = a.iter().enumerate().take(r + 1).map(|(j, aj)| aj * &exp_terms[r - j]).sum();
                &self.c * Rat::from_integer(fact.clone()) * sum
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesKind {
    /// `J_0(2√x) = Σ x^k / (k!)²`, so `γ_k = 1/k!`.
    BesselJ0,
    /// `e^{x/2} cosh(√(2x))`.
    ExpHalfCosh,
}

/// A function in L-P⁺ as data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpPlusSpec {
    Factored(FactoredSpec),
    Series(SeriesKind),
}

impl LpPlusSpec {
    pub fn factored(&self) -> Option<&FactoredSpec> {
        match self {
            LpPlusSpec::Factored(f) => Some(f),
            LpPlusSpec::Series(_) => None,
        }
    }
}

/// `γ_k = k! [x^k] φ(x)`.
pub fn taylor_gamma(phi: &LpPlusSpec, k: usize) -> Rat {
    taylor_prefix(phi, k + 1).pop().expect("nonempty prefix")
}

/// `γ_0, …, γ_{len-1}` of `φ`.
pub fn taylor_prefix(phi: &LpPlusSpec, len: usize) -> Vec<Rat> {
    match phi {
        LpPlusSpec::Factored(f) => {
            f.scaled_taylor_prefix(&f.sigma, len)
        }
        LpPlusSpec::Series(SeriesKind::BesselJ0) => {
            (0..len).map(|k| Rat::new(BigInt::one(), factorial(k))).collect()
        }
        LpPlusSpec::Series(SeriesKind::ExpHalfCosh) => exp_half_cosh_prefix(len),
    }
}

/// `γ_k = k! Σ_{j=0}^{k} 2^j/(2j)! · (1/2)^{k-j}/(k-j)!`: the Cauchy product of
/// `cosh(√(2x)) = Σ (2x)^j/(2j)!` with `e^{x/2}`.
fn exp_half_cosh_prefix(len: usize) -> Vec<Rat> {
    let fact: Vec<BigInt> = {
        let mut f = vec![BigInt::one()];
        for i in 1..=2 * len {
            let next = f[i - 1].clone() * BigInt::from(i);
            f.push(next);
        }
        f
    };
    let cosh: Vec<Rat> = (0..len)
        .map(|j| Rat::new(BigInt::one() << j, fact[2 * j].clone()))
        .collect();
    let exp_half: Vec<Rat> = (0..len)
        .map(|i| Rat::new(BigInt::one(), fact[i].clone() << i))
        .collect();
    (0..len)
        .map(|k| {
            let s: Rat = (0..=k).map(|j| &cosh[j] * &exp_half[k - j]).sum();
            s * Rat::from_integer(fact[k].clone())
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignPattern {
    Nonneg,
    Nonpos,
    /// `(-1)^k γ_k ≥ 0`.
    AlternatingEvenStart,
    /// `(-1)^{k+1} γ_k ≥ 0`.
    AlternatingOddStart,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaSource {
    LpPlus(LpPlusSpec),
    /// `γ_k = p(k)`.
    Polynomial(RatPoly),
    /// `γ_k = r^k / k!`.
    GeomFactorial(Rat),
    /// Finite prefix followed by a constant tail.
    Explicit { values: Vec<Rat>, tail: Rat },
    Shifted { inner: Box<GammaSeq>, by: usize },
    Negated(Box<GammaSeq>),
    /// `(-1)^k γ_k`.
    Alternated(Box<GammaSeq>),
}

/// An indexable sequence `{γ_k}_{k ≥ 0}` of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSeq {
    source: GammaSource,
}

impl GammaSeq {
    pub fn new(source: GammaSource) -> Self {
        GammaSeq { source }
    }

    pub fn source(&self) -> &GammaSource {
        &self.source
    }

    pub fn from_spec(spec: LpPlusSpec) -> Self {
        Self::new(GammaSource::LpPlus(spec))
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(GammaSource::Polynomial(RatPoly::constant(c)))
    }

    /// `γ_k = k + a`.
    pub fn linear(a: Rat) -> Self {
        Self::new(GammaSource::Polynomial(RatPoly::new(vec![a, Rat::one()])))
    }

    pub fn polynomial(p: RatPoly) -> Self {
        Self::new(GammaSource::Polynomial(p))
    }

    pub fn geom_factorial(r: Rat) -> Self {
        Self::new(GammaSource::GeomFactorial(r))
    }

    pub fn explicit(values: Vec<Rat>, tail: Rat) -> Self {
        Self::new(GammaSource::Explicit { values, tail })
    }

    /// `e^{x/2} (1+x)²`.
    pub fn example311() -> Self {
        let spec = FactoredSpec::new(Rat::one(), 0, rat::rat(1, 2), vec![Rat::one(), Rat::one()])
            .expect("valid spec");
        Self::from_spec(LpPlusSpec::Factored(spec))
    }

    pub fn bessel_j0() -> Self {
        Self::from_spec(LpPlusSpec::Series(SeriesKind::BesselJ0))
    }

    pub fn exp_half_cosh() -> Self {
        Self::from_spec(LpPlusSpec::Series(SeriesKind::ExpHalfCosh))
    }

    /// `{γ_{k+by}}`.
    pub fn shifted(&self, by: usize) -> Self {
        if by == 0 {
            return self.clone();
        }
        Self::new(GammaSource::Shifted {
            inner: Box::new(self.clone()),
            by,
        })
    }

    pub fn spec(&self) -> Option<&LpPlusSpec> {
        match &self.source {
            GammaSource::LpPlus(s) => Some(s),
            _ => None,
        }
    }

    pub fn gamma(&self, k: usize) -> Rat {
        self.values(k + 1).pop().expect("nonempty")
    }

    /// `γ_0, …, γ_{len-1}`.
    pub fn values(&self, len: usize) -> Vec<Rat> {
        match &self.source {
            GammaSource::LpPlus(spec) => taylor_prefix(spec, len),
            GammaSource::Polynomial(p) => (0..len).map(|k| p.eval(&rat::from_usize(k))).collect(),
            GammaSource::GeomFactorial(r) => {
                let mut out = Vec::with_capacity(len);
                let mut term = Rat::one();
                for k in 0..len {
                    if k > 0 {
                        term = term * r / rat::from_usize(k);
                    }
                    out.push(term.clone());
                }
                out
            }
            GammaSource::Explicit { values, tail } => (0..len)
                .map(|k| values.get(k).cloned().unwrap_or_else(|| tail.clone()))
                .collect(),
            GammaSource::Shifted { inner, by } => inner.values(len + by).split_off(*by),
            GammaSource::Negated(inner) => inner.values(len).into_iter().map(|v| -v).collect(),
            GammaSource::Alternated(inner) => inner
                .values(len)
                .into_iter()
                .enumerate()
                .map(|(k, v)| v * sign_pow(k))
                .collect(),
        }
    }

    /// Sign pattern of `γ_0, …, γ_upto`.
    pub fn sign_pattern(&self, upto: usize) -> SignPattern {
        let v = self.values(upto + 1);
        let fits = |f: &dyn Fn(usize, &Rat) -> bool| v.iter().enumerate().all(|(k, g)| f(k, g));
        if fits(&|_, g| !g.is_negative()) {
            SignPattern::Nonneg
        } else if fits(&|_, g| !g.is_positive()) {
            SignPattern::Nonpos
        } else if fits(&|k, g| !(g * sign_pow(k)).is_negative()) {
            SignPattern::AlternatingEvenStart
        } else if fits(&|k, g| !(g * sign_pow(k + 1)).is_negative()) {
            SignPattern::AlternatingOddStart
        } else {
            SignPattern::Mixed
        }
    }

    /// The nonnegative member of `{±γ_k, ±(-1)^k γ_k}`, judged on indices `≤ upto`.
    pub fn nonneg_representative(&self, upto: usize) -> Result<GammaSeq> {
        let boxed = || Box::new(self.clone());
        Ok(match self.sign_pattern(upto) {
            SignPattern::Nonneg => self.clone(),
            SignPattern::Nonpos => Self::new(GammaSource::Negated(boxed())),
            SignPattern::AlternatingEvenStart => Self::new(GammaSource::Alternated(boxed())),
            SignPattern::AlternatingOddStart => Self::new(GammaSource::Negated(Box::new(
                Self::new(GammaSource::Alternated(boxed())),
            ))),
            SignPattern::Mixed => {
                return Err(Error::Unsupported(
                    "sequence has mixed signs; no sign normalization applies".into(),
                ))
            }
        })
    }
}

pub fn jensen_reversed(seq: &GammaSeq, n: usize) -> RatPoly {
    let gammas = seq.values(n + 1);
    let row = binomial_row(n);
    let coeffs = (0..=n)
        .map(|i| {
            // coefficient of x^i comes from k = n - i
            let k = n - i;
            Rat::from_integer(row[k].clone()) * &gammas[k]
        })
        .collect();
    RatPoly::new(coeffs)
}

/// `g_{k,p}^*(-1)` by the defining alternating binomial sum.
pub fn gstar_shifted(seq: &GammaSeq, k: usize, p: usize) -> Rat {
    let gammas = seq.values(k + p + 1);
    let row = binomial_row(k);
    (0..=k)
        .map(|n| Rat::from_integer(row[n].clone()) * &gammas[n + p] * sign_pow(k - n))
        .sum()
}

/// `g_{0,p}^*(-1), …, g_{k_max,p}^*(-1)` from one forward-difference table.
pub fn gstar_values(seq: &GammaSeq, k_max: usize, p: usize) -> Vec<Rat> {
    let vals = seq.values(k_max + p + 1).split_off(p);
    // differences of integers over a common denominator avoid a gcd per step
    let den = vals.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let mut row: Vec<BigInt> = vals.iter().map(|v| v.numer() * (&den / v.denom())).collect();
    let mut out = Vec::with_capacity(k_max + 1);
    for _ in 0..=k_max {
        out.push(Rat::new(row[0].clone(), den.clone()));
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// `k! [x^k] e^{-x} φ(x)`, read off `c x^m e^{(σ-1)x} ∏(1 + x/x_k)`.
pub fn gstar_via_shift(phi: &LpPlusSpec, k: usize) -> Result<Rat> {
    let f = phi
        .factored()
        .ok_or_else(|| Error::Unsupported("gstar_via_shift needs a factored spec".into()))?;
    Ok(f.scaled_taylor_prefix(&(&f.sigma - Rat::one()), k + 1).pop().expect("nonempty"))
}

/// One entry of a ratio sequence. `value` is `None` when the denominator vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioEntry {
    pub k: usize,
    pub value: Option<Rat>,
}

/// Entries `k = 1..=k_max` with value `g_{k,p}^*(-1) / g_{k-1,p}^*(-1)`.
///
/// Label `k` pairs `g_k^*` over `g_{k-1}^*`, so for `e^{x/2}(1+x)²` the
/// entries start `3/2, 1/6, -13/2`.
pub fn ratio_sequence(seq: &GammaSeq, k_max: usize, p: usize) -> Vec<RatioEntry> {
    let g = gstar_values(seq, k_max, p);
    (1..=k_max)
        .map(|k| RatioEntry {
            k,
            value: (!g[k - 1].is_zero()).then(|| &g[k] / &g[k - 1]),
        })
        .collect()
}

/// Ratio CSV: header `k,num,den,approx`; undefined entries become `k,,,NA`.
pub fn ratio_csv(entries: &[RatioEntry]) -> String {
    let mut out = String::from("k,num,den,approx\n");
    for e in entries {
        match &e.value {
            Some(v) => out.push_str(&format!(
                "{},{},{},{}\n",
                e.k,
                v.numer(),
                v.denom(),
                rat::approx_string(v)
            )),
            None => out.push_str(&format!("{},,,NA\n", e.k)),
        }
    }
    out
}

/// One equal-width bin `[lo, hi)`; the last bin also holds `hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistBin {
    #[serde(with = "crate::rat::serde_rat")]
    pub lo: Rat,
    #[serde(with = "crate::rat::serde_rat")]
    pub hi: Rat,
    pub count: usize,
}

/// `bins` equal-width bins spanning `[min, max]` of the defined ratio values,
/// with exact bin assignment. Empty when no value is defined.
pub fn ratio_histogram(entries: &[RatioEntry], bins: usize) -> Result<Vec<HistBin>> {
    if bins == 0 {
        return Err(Error::InvalidParameter("histogram needs at least one bin".into()));
    }
    let values: Vec<&Rat> = entries.iter().filter_map(|e| e.value.as_ref()).collect();
    let (Some(min), Some(max)) = (values.iter().min(), values.iter().max()) else {
        return Ok(Vec::new());
    };
    let (min, max) = ((*min).clone(), (*max).clone());
    let width = (&max - &min) / rat::from_usize(bins);
    let mut out: Vec<HistBin> = (0..bins)
        .map(|i| HistBin {
            lo: &min + &width * rat::from_usize(i),
            hi: if i + 1 == bins { max.clone() } else { &min + &width * rat::from_usize(i + 1) },
            count: 0,
        })
        .collect();
    for v in values {
        let idx = if width.is_zero() {
            0
        } else {
            ((v - &min) / &width).floor().to_integer().to_usize().unwrap_or(bins).min(bins - 1)
        };
        out[idx].count += 1;
    }
    Ok(out)
}

/// Histogram CSV: header `bin,lo,hi,lo_approx,hi_approx,count` with exact bounds.
pub fn histogram_csv(bins: &[HistBin]) -> String {
    let mut out = String::from("bin,lo,hi,lo_approx,hi_approx,count\n");
    for (i, b) in bins.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            i,
            rat::to_exact_string(&b.lo),
            rat::to_exact_string(&b.hi),
            rat::approx_string(&b.lo),
            rat::approx_string(&b.hi),
            b.count
        ));
    }
    out
}

/// `g_{k,p}^*(-1)² + 2 g_{k,p}^*(-1) g_{k-1,p}^*(-1)`.
pub fn turan_quantity(seq: &GammaSeq, k: usize, p: usize) -> Result<Rat> {
    if k == 0 {
        return Err(Error::Precondition("turan_quantity requires k >= 1".into()));
    }
    let g = gstar_values(seq, k, p);
    Ok(&g[k] * &g[k] + Rat::from_integer(BigInt::from(2)) * &g[k] * &g[k - 1])
}

/// `γ_n = Σ_{k=0}^{n} C(n,k) g_k^*(-1)` for every `n ≤ n_max`.
pub fn check_gslem(seq: &GammaSeq, n_max: usize) -> CheckReport {
    let mut report = CheckReport::new("gamma-reconstruction");
    let gammas = seq.values(n_max + 1);
    let g: Vec<Rat> = (0..=n_max).map(|k| gstar_shifted(seq, k, 0)).collect();
    for n in 0..=n_max {
        let row = binomial_row(n);
        let rebuilt: Rat = (0..=n).map(|k| Rat::from_integer(row[k].clone()) * &g[k]).sum();
        report.record(
            rebuilt == gammas[n],
            || format!("n={n}"),
            "binomial-reconstruction",
            || format!("{rebuilt} != {}", gammas[n]),
        );
    }
    report
}

/// `g_{k,p}^* + g_{k+1,p}^* = g_{k,p+1}^*` for `2 ≤ k ≤ k_max`, `0 ≤ p ≤ p_max`,
/// every term evaluated by its own alternating sum.
pub fn check_shifty(seq: &GammaSeq, k_max: usize, p_max: usize) -> CheckReport {
    let mut report = CheckReport::new("shift-recurrence");
    for p in 0..=p_max {
        for k in 2..=k_max {
            let lhs = gstar_shifted(seq, k, p) + gstar_shifted(seq, k + 1, p);
            let rhs = gstar_shifted(seq, k, p + 1);
            report.record(lhs == rhs, || format!("k={k},p={p}"), "shift", || format!("{lhs} != {rhs}"));
        }
    }
    report
}

/// The two orders of summation
/// `Σ_{k=2j}^{n} Σ_{i=0}^{min(k-2j, n-k)} a_{k,i}` and
/// `Σ_{i=0}^{⌊n/2⌋-j} Σ_{k=i+2j}^{n-i} a_{k,i}` over a table whose missing
/// entries read as zero.
pub fn index_identity_sides(
    n: usize,
    j: usize,
    table: &BTreeMap<(usize, usize), Rat>,
) -> Result<(Rat, Rat)> {
    if n == 0 {
        return Err(Error::Precondition("index identity requires n >= 1".into()));
    }
    if j > n / 2 {
        return Err(Error::Precondition(format!("j={j} exceeds floor(n/2)={}", n / 2)));
    }
    let a = |k: usize, i: usize| table.get(&(k, i)).cloned().unwrap_or_else(Rat::zero);
    let mut lhs = Rat::zero();
    for k in 2 * j..=n {
        for i in 0..=(k - 2 * j).min(n - k) {
            lhs += a(k, i);
        }
    }
    let mut rhs = Rat::zero();
    for i in 0..=(n / 2 - j) {
        for k in (i + 2 * j)..=(n - i) {
            rhs += a(k, i);
        }
    }
    Ok((lhs, rhs))
}

pub fn check_index_identity(
    n: usize,
    j: usize,
    table: &BTreeMap<(usize, usize), Rat>,
) -> Result<CheckReport> {
    let (lhs, rhs) = index_identity_sides(n, j, table)?;
    let mut report = CheckReport::new("index-reordering");
    report.record(lhs == rhs, || format!("n={n},j={j}"), "double-sum", || format!("{lhs} != {rhs}"));
    Ok(report)
}

/// The reordering identity on `cases` seeded random tables, for every
/// `1 ≤ n ≤ n_max` and `0 ≤ j ≤ ⌊n/2⌋`.
pub fn check_index_identity_seeded(cases: usize, n_max: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("index-reordering");
    for case in 0..cases {
        let mut table = BTreeMap::new();
        for k in 0..=n_max {
            for i in 0..=n_max {
                table.insert((k, i), rat::rat(rng.random_range(-50..=50), rng.random_range(1..=9)));
            }
        }
        for n in 1..=n_max {
            for j in 0..=n / 2 {
                let (lhs, rhs) = index_identity_sides(n, j, &table).expect("valid indices");
                report.record(lhs == rhs, || format!("case={case},n={n},j={j}"), "double-sum", || format!("{lhs} != {rhs}"));
            }
        }
    }
    report
}
