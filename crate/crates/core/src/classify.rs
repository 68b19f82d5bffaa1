//! Multiplier-sequence verdicts, reality tables of `Q_{k,p}`, and a
//! deterministic search for reality-breaking witnesses.
//!
//! Affirmative verdicts come only from closed-form criteria. The witness
//! search can refute a claim but never confirms one.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diffop::coefficient_polynomial;
use crate::error::{Error, Result};
use crate::hermite::{from_hermite_basis, to_hermite_basis, HermiteExpansion, HermiteParam};
use crate::jensen::{ratio_sequence, turan_quantity, GammaSeq, GammaSource, LpPlusSpec, SignPattern};
use crate::laguerre::{self, from_laguerre_basis, laguerre_poly, to_laguerre_basis};
use crate::poly::RatPoly;
use crate::rat::{self, from_usize, int, Rat};
use crate::report::CheckReport;

/// Upper limit for the start index searched by [`ratio_limit_check`].
pub const RATIO_K0_CAP: usize = 200;

/// Seed of the witness-search corpus.
pub const FALSIFIER_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Basis {
    Standard,
    Hermite { alpha: HermiteParam },
    Laguerre {
        #[serde(with = "crate::rat::serde_rat")]
        alpha: Rat,
    },
}

impl Basis {
    pub fn hermite(alpha: HermiteParam) -> Self {
        Basis::Hermite { alpha }
    }

    pub fn laguerre(alpha: Rat) -> Result<Self> {
        laguerre::check_alpha(&alpha)?;
        Ok(Basis::Laguerre { alpha })
    }

    /// Coordinates of `p` in this basis.
    pub fn expand(&self, p: &RatPoly) -> Vec<Rat> {
        match self {
            Basis::Standard => p.coeffs().to_vec(),
            Basis::Hermite { alpha } => to_hermite_basis(p, alpha).coeffs().to_vec(),
            Basis::Laguerre { alpha } => to_laguerre_basis(p, alpha),
        }
    }

    pub fn reconstruct(&self, coeffs: &[Rat]) -> RatPoly {
        match self {
            Basis::Standard => RatPoly::new(coeffs.to_vec()),
            Basis::Hermite { alpha } => from_hermite_basis(&HermiteExpansion::new(alpha.clone(), coeffs.to_vec())),
            Basis::Laguerre { alpha } => from_laguerre_basis(coeffs, alpha),
        }
    }

    /// `Σ γ_k c_k b_k` where `p = Σ c_k b_k`.
    pub fn apply_diagonal(&self, seq: &GammaSeq, p: &RatPoly) -> RatPoly {
        let coeffs = self.expand(p);
        let gammas = seq.values(coeffs.len());
        let image: Vec<Rat> = coeffs.iter().zip(&gammas).map(|(c, g)| c * g).collect();
        self.reconstruct(&image)
    }
}

/// A real-rooted polynomial whose image under a diagonal map is not real-rooted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub basis: Basis,
    pub input: RatPoly,
    pub output: RatPoly,
    pub output_real_roots: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    IsHms,
    NotHms,
    /// Classical multiplier sequence by a closed-form rule.
    IsMs,
    NotMs,
    Falsified { witness: Box<Witness> },
    /// No conclusion; `bound` is the search depth when a search ran.
    Inconclusive { bound: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    #[serde(flatten)]
    pub status: Status,
    pub reason: String,
}

impl Verdict {
    fn new(status: Status, reason: impl Into<String>) -> Self {
        Verdict { status, reason: reason.into() }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.status {
            Status::Falsified { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self.status, Status::Inconclusive { .. })
    }
}

/// `{φ^{(k)}(0)}` is a Hermite multiplier sequence iff `σ ≥ 1`.
pub fn is_hermite_ms(phi: &LpPlusSpec) -> Verdict {
    let Some(f) = phi.factored() else {
        return Verdict::new(Status::Inconclusive { bound: None }, "series form: exponential type σ not available");
    };
    if *f.sigma() >= Rat::one() {
        return Verdict::new(Status::IsHms, format!("sigma = {} >= 1", f.sigma()));
    }
    let mut reason = format!("sigma = {} < 1", f.sigma());
    if f.sigma().is_zero() && f.zeros().is_empty() {
        reason.push_str("; phi is constant, so the sequence is (c, 0, 0, ...) and degenerate");
    }
    Verdict::new(Status::NotHms, reason)
}

/// A factored form lies in `L-P⁺` by construction, so every such spec gives
/// a classical multiplier sequence. Series forms are also `L-P⁺` members.
pub fn is_classical_ms(phi: &LpPlusSpec) -> Verdict {
    match phi {
        LpPlusSpec::Factored(_) => Verdict::new(Status::IsMs, "factored form is in L-P+"),
        LpPlusSpec::Series(kind) => Verdict::new(Status::IsMs, format!("{kind:?} is an L-P+ series")),
    }
}

/// Sequence-level classical test.
///
/// `γ_k = p(k)` with `p` real-rooted and all zeros `≤ 0` is affirmative
/// (Laguerre's theorem); a mixed sign pattern is negative; anything else is
/// inconclusive.
pub fn is_classical_ms_seq(seq: &GammaSeq, upto: usize) -> Verdict {
    if let Some(spec) = seq.spec() {
        return is_classical_ms(spec);
    }
    if seq.sign_pattern(upto) == SignPattern::Mixed {
        return Verdict::new(Status::NotMs, format!("mixed signs among gamma_0..gamma_{upto}"));
    }
    match seq.source() {
        GammaSource::Polynomial(p) if !p.is_zero() => {
            let one_sign = p.coeffs().iter().filter(|c| !c.is_zero()).all(|c| c.is_positive())
                || p.coeffs().iter().filter(|c| !c.is_zero()).all(|c| c.is_negative());
            if p.is_real_rooted() && one_sign {
                Verdict::new(Status::IsMs, format!("gamma_k = p(k) with p = {p} having only nonpositive real zeros"))
            } else {
                Verdict::new(Status::Inconclusive { bound: None }, "polynomial sequence outside the closed-form rule")
            }
        }
        GammaSource::Explicit { .. } => Verdict::new(Status::Inconclusive { bound: None }, "explicit list: no factored form"),
        _ => Verdict::new(Status::Inconclusive { bound: None }, "no closed-form rule applies"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealityRow {
    pub k: usize,
    pub real_rooted: bool,
    #[serde(skip)]
    pub degree: Option<usize>,
    #[serde(skip)]
    pub distinct_real_roots: usize,
    #[serde(skip)]
    pub squarefree_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealityTable {
    pub alpha: HermiteParam,
    pub p: usize,
    pub rows: Vec<RealityRow>,
}

impl RealityTable {
    pub fn all_real(&self) -> bool {
        self.rows.iter().all(|r| r.real_rooted)
    }

    pub fn first_nonreal(&self) -> Option<usize> {
        self.rows.iter().find(|r| !r.real_rooted).map(|r| r.k)
    }
}

fn reality_row(k: usize, q: &RatPoly) -> RealityRow {
    if q.is_zero() {
        return RealityRow { k, real_rooted: true, degree: None, distinct_real_roots: 0, squarefree_degree: 0 };
    }
    let sf = q.squarefree_part().expect("nonzero");
    let distinct = sf.count_real_roots().expect("nonzero");
    let sf_deg = sf.degree().unwrap_or(0);
    RealityRow { k, real_rooted: distinct == sf_deg, degree: q.degree(), distinct_real_roots: distinct, squarefree_degree: sf_deg }
}

pub fn q_reality_table(alpha: &HermiteParam, seq: &GammaSeq, k_max: usize, p: usize) -> Result<RealityTable> {
    alpha.require_positive("q_reality_table")?;
    let rows = (0..=k_max).map(|k| reality_row(k, &coefficient_polynomial(alpha, seq, k, p))).collect();
    Ok(RealityTable { alpha: alpha.clone(), p, rows })
}

/// For `2 ≤ k ≤ k_max`: whenever `Q_{k,p}` is real-rooted, the Turán quantity is `≥ 0`.
pub fn turanish_check(alpha: &HermiteParam, seq: &GammaSeq, k_max: usize, p: usize) -> Result<CheckReport> {
    alpha.require_positive("turanish_check")?;
    let mut report = CheckReport::new("turanish");
    for k in 2..=k_max {
        let real = coefficient_polynomial(alpha, seq, k, p).is_real_rooted();
        let t = turan_quantity(seq, k, p)?;
        report.record(
            !real || !t.is_negative(),
            || format!("k={k} p={p}"),
            "real Q_k implies turan >= 0",
            || format!("Q_k real-rooted but turan = {t}"),
        );
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioLimitReport {
    #[serde(with = "crate::rat::serde_rat")]
    pub limit: Rat,
    pub window: usize,
    #[serde(with = "crate::rat::serde_rat")]
    pub tol: Rat,
    pub cap: usize,
    /// Smallest start index whose window settles within `tol`, if any up to `cap`.
    pub k0: Option<usize>,
}

impl RatioLimitReport {
    pub fn converged(&self) -> bool {
        self.k0.is_some()
    }
}

/// Searches `K₀ ≤ 200` such that every defined ratio `g_k/g_{k-1}` with
/// `K₀ ≤ k ≤ K₀ + window` lies within `tol` of `σ - 1`.
pub fn ratio_limit_check(phi: &LpPlusSpec, window: usize, tol: &Rat) -> Result<RatioLimitReport> {
    let f = phi
        .factored()
        .ok_or_else(|| Error::Unsupported("ratio limit needs a factored spec".into()))?;
    if f.sigma().is_one() {
        return Err(Error::Precondition("ratio limit is undefined at sigma = 1".into()));
    }
    if window == 0 || !tol.is_positive() {
        return Err(Error::InvalidParameter("window and tol must be positive".into()));
    }
    let limit = f.sigma() - Rat::one();
    let entries = ratio_sequence(&GammaSeq::from_spec(phi.clone()), RATIO_K0_CAP + window, 0);
    let close: Vec<bool> = entries
        .iter()
        .map(|e| e.value.as_ref().is_none_or(|v| (v - &limit).abs() <= *tol))
        .collect();
    // entries[i] carries label k = i + 1
    let k0 = (1..=RATIO_K0_CAP).find(|&k0| close[k0 - 1..k0 + window].iter().all(|&c| c));
    Ok(RatioLimitReport { limit, window, tol: tol.clone(), cap: RATIO_K0_CAP, k0 })
}

const SHIFTS: [(i64, i64); 11] = [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1), (-3, 1), (5, 1), (10, 1)];

/// Deterministic candidate list for degree `n`; every entry is real-rooted.
fn corpus(n: usize, basis: &Basis, rng: &mut ChaCha8Rng) -> Vec<RatPoly> {
    let mut out = Vec::new();
    for &(a, b) in &SHIFTS {
        out.push(RatPoly::from_roots(&vec![-rat::rat(a, b); n]));
    }
    for j in 1..n {
        for c in [int(1), int(2), rat::rat(1, 2), int(4), int(-1)] {
            let mut roots = vec![Rat::zero(); j];
            roots.extend(std::iter::repeat_n(c, n - j));
            out.push(RatPoly::from_roots(&roots));
        }
    }
    for _ in 0..24 {
        let roots: Vec<Rat> = (0..n).map(|_| rat::rat(rng.random_range(-12..=12), rng.random_range(1..=4))).collect();
        out.push(RatPoly::from_roots(&roots));
    }
    let hermite_alpha = match basis {
        Basis::Hermite { alpha } if !alpha.is_zero() => alpha.clone(),
        _ => HermiteParam::new(Rat::one()).expect("positive"),
    };
    let laguerre_alpha = match basis {
        Basis::Laguerre { alpha } => alpha.clone(),
        _ => Rat::zero(),
    };
    let h = crate::hermite::hermite_poly(n, &hermite_alpha);
    let l = laguerre_poly(n, &laguerre_alpha);
    for c in [int(0), int(1), int(-1), int(3), int(-3)] {
        out.push(h.shift(&c));
        out.push(l.shift(&c));
    }
    out
}

/// Searches the corpus for degrees `1..=deg_max` in order and returns the
/// first real-rooted input whose image `Σ γ_k c_k b_k` is not real-rooted.
pub fn ms_falsifier(seq: &GammaSeq, basis: &Basis, deg_max: usize) -> Result<Verdict> {
    if let Basis::Laguerre { alpha } = basis {
        laguerre::check_alpha(alpha)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(FALSIFIER_SEED);
    for n in 1..=deg_max {
        for input in corpus(n, basis, &mut rng) {
            if !input.is_real_rooted() {
                continue;
            }
            let output = basis.apply_diagonal(seq, &input);
            if !output.is_real_rooted() {
                let output_real_roots = output.count_real_roots()?;
                let reason = format!("degree {n} input maps to a polynomial with non-real zeros");
                let witness = Witness { basis: basis.clone(), input, output, output_real_roots };
                return Ok(Verdict::new(Status::Falsified { witness: Box::new(witness) }, reason));
            }
        }
    }
    Ok(Verdict::new(
        Status::Inconclusive { bound: Some(deg_max) },
        format!("no witness among corpus inputs of degree <= {deg_max}"),
    ))
}

/// Reality of `Q_2` and `Q_4` for `γ_k = r^k/k!` at one `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeomFactorialRow {
    #[serde(with = "crate::rat::serde_rat")]
    pub r: Rat,
    pub q2_real: bool,
    pub q4_real: bool,
}

impl GeomFactorialRow {
    pub fn some_nonreal(&self) -> bool {
        !self.q2_real || !self.q4_real
    }
}

pub fn geom_factorial_scan(alpha: &HermiteParam, rs: &[Rat]) -> Result<Vec<GeomFactorialRow>> {
    alpha.require_positive("geom_factorial_scan")?;
    Ok(rs
        .iter()
        .map(|r| {
            let seq = GammaSeq::geom_factorial(r.clone());
            GeomFactorialRow {
                r: r.clone(),
                q2_real: coefficient_polynomial(alpha, &seq, 2, 0).is_real_rooted(),
                q4_real: coefficient_polynomial(alpha, &seq, 4, 0).is_real_rooted(),
            }
        })
        .collect())
}

/// `lo, lo + (hi-lo)/steps, …, hi`.
pub fn uniform_grid(lo: &Rat, hi: &Rat, steps: usize) -> Vec<Rat> {
    let h = (hi - lo) / from_usize(steps.max(1));
    (0..=steps).map(|i| lo + &h * from_usize(i)).collect()
}

/// Closed grid intervals `[first, last]` over maximal runs where `pred` holds.
pub fn grid_runs(rows: &[GeomFactorialRow], pred: impl Fn(&GeomFactorialRow) -> bool) -> Vec<(Rat, Rat)> {
    let mut runs: Vec<(Rat, Rat)> = Vec::new();
    let mut open = false;
    for row in rows {
        if pred(row) {
            if open {
                runs.last_mut().expect("open run").1 = row.r.clone();
            } else {
                runs.push((row.r.clone(), row.r.clone()));
                open = true;
            }
        } else {
            open = false;
        }
    }
    runs
}
