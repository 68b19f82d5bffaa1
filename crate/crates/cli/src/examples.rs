//! Packaged reproductions. Each prints one line per check:
//! `PASS`/`FAIL` for assertions, `NOTE` for reference-value divergences that
//! are logged rather than asserted, `INFO` for emitted data.

use std::io::Write;

use clap::ValueEnum;
use hermdiag::classify::{
    geom_factorial_scan, grid_runs, is_classical_ms_seq, ms_falsifier, q_reality_table, ratio_limit_check, uniform_grid,
    Basis, GeomFactorialRow, Status,
};
use hermdiag::diffop::{build_operator, coefficient_polynomial, interpolation_poly, solve_operator_from_action};
use hermdiag::hermite::HermiteParam;
use hermdiag::jensen::{check_index_identity_seeded, gstar_values, ratio_sequence, turan_quantity, GammaSeq};
use hermdiag::laguerre::{laguerre_counterexample_demo, laguerre_operator_apply, verify_laguerre_eigen, LaguerreParam};
use hermdiag::rat::{approx_string, from_usize, int, rat, Rat};
use hermdiag::{CheckReport, RatPoly};

use crate::{CliError, CliResult};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleId {
    /// Ratio table for e^{x/2}(1+x)².
    Table1,
    /// Bessel J0 sequence: g* values, Turán quantities, Q_3.
    Bessel,
    /// The operator a + xD - αD² for {k + a}.
    LinearOps,
    /// The family r^k/k!: reality of Q_2 and Q_4.
    Geomfact,
    /// Laguerre operator eigen-identity and witness search.
    Laguerre,
    All,
}

struct Lines<'a> {
    out: &'a mut dyn Write,
    id: &'static str,
    ok: bool,
}

impl Lines<'_> {
    fn put(&mut self, tag: &str, text: &str) -> CliResult<()> {
        writeln!(self.out, "{tag} {}: {text}", self.id).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
    }

    fn check(&mut self, ok: bool, text: &str) -> CliResult<()> {
        self.ok &= ok;
        self.put(if ok { "PASS" } else { "FAIL" }, text)
    }

    fn report(&mut self, r: &CheckReport) -> CliResult<()> {
        self.ok &= r.passed();
        let line = r.summary_line();
        writeln!(self.out, "{line} [{}]", self.id).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
    }

    fn note(&mut self, text: &str) -> CliResult<()> {
        self.put("NOTE", text)
    }

    fn info(&mut self, text: &str) -> CliResult<()> {
        self.put("INFO", text)
    }
}

fn alpha(v: Rat) -> HermiteParam {
    HermiteParam::new(v).expect("nonnegative")
}

fn alphas() -> Vec<HermiteParam> {
    vec![alpha(rat(1, 2)), alpha(int(1)), alpha(int(2))]
}

fn join(values: &[Rat]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// `(α, a)` pairs for the Laguerre eigen-identity.
pub(crate) fn laguerre_grid() -> Vec<(Rat, Rat)> {
    let mut out = Vec::new();
    for a in [int(0), rat(1, 2), int(1), int(2)] {
        for shift in [int(-1), int(0), int(1), &a + int(1), &a + int(2)] {
            out.push((a.clone(), shift));
        }
    }
    out
}

pub(crate) fn index_reordering_report(cases: usize, n_max: usize, seed: u64) -> CheckReport {
    check_index_identity_seeded(cases, n_max, seed)
}

pub fn run_example(id: ExampleId, out: &mut dyn Write) -> CliResult<bool> {
    let ids: &[ExampleId] = match id {
        ExampleId::All => &[ExampleId::Table1, ExampleId::Bessel, ExampleId::LinearOps, ExampleId::Geomfact, ExampleId::Laguerre],
        _ => std::slice::from_ref(&id),
    };
    let mut ok = true;
    for &id in ids {
        ok &= match id {
            ExampleId::Table1 => table1(out)?,
            ExampleId::Bessel => bessel(out)?,
            ExampleId::LinearOps => linear_ops(out)?,
            ExampleId::Geomfact => geomfact(out)?,
            ExampleId::Laguerre => laguerre(out)?,
            ExampleId::All => unreachable!(),
        };
    }
    Ok(ok)
}

fn table1(out: &mut dyn Write) -> CliResult<bool> {
    let mut l = Lines { out, id: "table1", ok: true };
    let seq = GammaSeq::example311();
    let want = [rat(3, 2), rat(1, 6), rat(-13, 2), rat(-33, 26), rat(-61, 66), rat(-97, 122), rat(-141, 194)];
    let got: Vec<Option<Rat>> = ratio_sequence(&seq, 7, 0).into_iter().map(|e| e.value).collect();
    let matches = got.iter().zip(&want).all(|(g, w)| g.as_ref() == Some(w));
    let shown: Vec<String> = got.iter().map(|g| g.as_ref().map_or("NA".into(), ToString::to_string)).collect();
    l.check(matches, &format!("g_k/g_(k-1) for k=1..7 = {}", shown.join(", ")))?;
    let r = ratio_limit_check(seq.spec().expect("factored"), 20, &rat(1, 100))?;
    match r.k0 {
        Some(k0) => l.check(true, &format!("ratios settle within 1/100 of {} from K0={k0} (window 20, cap {})", r.limit, r.cap))?,
        None => l.check(false, &format!("ratios did not settle within 1/100 of {} by cap {}", r.limit, r.cap))?,
    }
    Ok(l.ok)
}

fn bessel(out: &mut dyn Write) -> CliResult<bool> {
    let mut l = Lines { out, id: "bessel", ok: true };
    let seq = GammaSeq::bessel_j0();
    let g = gstar_values(&seq, 7, 0);
    let want = [int(1), int(0), rat(-1, 2), rat(2, 3), rat(-5, 8), rat(7, 15), rat(-37, 144), rat(17, 420)];
    l.check(g == want, &format!("g_k for k=0..7 = {}", join(&g)))?;

    let turan: Vec<Rat> = (1..=5).map(|k| turan_quantity(&seq, k, 0)).collect::<Result<_, _>>()?;
    let want = [int(0), rat(1, 4), rat(-2, 9), rat(-85, 192), rat(-329, 900)];
    l.check(turan == want, &format!("turan quantities for k=1..5 = {}", join(&turan)))?;
    l.note("reference lists 1 at k=2; the computed value is 1/4 = (g_2)² + 2 g_2 g_1 with g_1 = 0")?;

    for a in alphas() {
        let q3 = coefficient_polynomial(&a, &seq, 3, 0);
        let oracle = solve_operator_from_action(&a, &seq, 3)?;
        let closed = RatPoly::new(vec![int(0), a.value() * rat(3, 18), int(0), rat(2, 18)]);
        let roots = q3.count_real_roots()?;
        l.check(
            q3 == closed && oracle.coefficient(3) == Some(&q3) && roots == 1,
            &format!("alpha={}: Q_3 = {q3} = x(2x^2 + 3 alpha)/18, {roots} distinct real root", a.value()),
        )?;
    }
    l.note("reference form of Q_3 is (x^2 + 6 alpha)x/18; the forward-substitution oracle gives x(2x^2 + 3 alpha)/18")?;
    let table = q_reality_table(&alpha(int(1)), &seq, 6, 0)?;
    l.check(table.rows[3].real_rooted == false, "reality table row k=3 is false")?;
    Ok(l.ok)
}

fn linear_ops(out: &mut dyn Write) -> CliResult<bool> {
    let mut l = Lines { out, id: "linear-ops", ok: true };
    for a_val in [int(-1), int(0), int(3)] {
        let seq = GammaSeq::linear(a_val.clone());
        for a in alphas() {
            let op = build_operator(&a, &seq, 8, 0);
            let mut want = vec![RatPoly::constant(a_val.clone()), RatPoly::x(), RatPoly::constant(-a.value().clone())];
            want.resize(9, RatPoly::zero());
            l.check(
                op.coefficients() == &want[..],
                &format!("gamma_k = k + ({a_val}), alpha={}: operator {a_val} + xD - {}D^2", a.value(), a.value()),
            )?;
        }
    }
    let hermite1 = Basis::hermite(alpha(int(1)));
    let v = ms_falsifier(&GammaSeq::linear(int(-1)), &hermite1, 6)?;
    match v.witness() {
        Some(w) => l.check(
            w.input.is_real_rooted() && !w.output.is_real_rooted(),
            &format!("a=-1: witness {} -> {} (coefficients real-rooted, sequence is not a multiplier sequence)", w.input, w.output),
        )?,
        None => l.check(false, "a=-1: no witness found up to degree 6")?,
    }
    for a_val in [int(0), int(3)] {
        let seq = GammaSeq::linear(a_val.clone());
        let classical = is_classical_ms_seq(&seq, 20);
        let search = ms_falsifier(&seq, &hermite1, 6)?;
        l.check(
            classical.status == Status::IsMs && search.is_inconclusive(),
            &format!("a={a_val}: classical rule affirmative, no witness up to degree 6"),
        )?;
    }
    for (label, p) in [("k + 5/2", RatPoly::new(vec![rat(5, 2), int(1)])), ("k(k-1)", RatPoly::from_ints(&[0, -1, 1]))] {
        let seq = GammaSeq::polynomial(p.clone());
        let interp = interpolation_poly(&solve_operator_from_action(&alpha(int(1)), &seq, 4)?)?;
        let values_ok = (0..=10).all(|n| interp.eval(&from_usize(n)) == seq.gamma(n));
        l.check(interp == p && values_ok, &format!("gamma_k = {label}: interpolating polynomial {interp}, p(n) = gamma_n for n <= 10"))?;
    }
    Ok(l.ok)
}

/// Whether `r ∈ [0, 1/√3) ∪ (2-√2, 1]`, decided exactly.
fn in_reference_set(r: &Rat) -> bool {
    let lower = int(3) * r * r < int(1);
    let two_minus = int(2) - r;
    let upper = &two_minus * &two_minus < int(2);
    lower || upper
}

fn runs_text(runs: &[(Rat, Rat)]) -> String {
    if runs.is_empty() {
        return "none".into();
    }
    runs.iter().map(|(a, b)| format!("[{a}, {b}]")).collect::<Vec<_>>().join(" u ")
}

fn geomfact(out: &mut dyn Write) -> CliResult<bool> {
    let mut l = Lines { out, id: "geomfact", ok: true };
    let a = alpha(int(1));
    let named = [int(0), rat(1, 2), rat(4, 7), rat(3, 5), rat(9, 10), int(1)];
    for row in geom_factorial_scan(&a, &named)? {
        l.check(
            row.some_nonreal(),
            &format!("r={}: Q_2 real-rooted={}, Q_4 real-rooted={}", row.r, row.q2_real, row.q4_real),
        )?;
    }
    // Q_2 = (g_2/2) x² - (α/2)(r²/2 - 1), g_2 = r²/2 - 2r + 1
    let r = rat(1, 3);
    let g2 = &r * &r / int(2) - int(2) * &r + int(1);
    let want = RatPoly::new(vec![-(a.value() / int(2)) * (&r * &r / int(2) - int(1)), int(0), g2 / int(2)]);
    let q2 = coefficient_polynomial(&a, &GammaSeq::geom_factorial(r.clone()), 2, 0);
    l.check(q2 == want, &format!("r=1/3: Q_2 = {q2}"))?;

    let grid = uniform_grid(&int(0), &int(1), 200);
    let rows: Vec<GeomFactorialRow> = geom_factorial_scan(&a, &grid)?;
    l.info(&format!("grid step 1/200: Q_2 non-real on {}", runs_text(&grid_runs(&rows, |r| !r.q2_real))))?;
    l.info(&format!("grid step 1/200: Q_4 non-real on {}", runs_text(&grid_runs(&rows, |r| !r.q4_real))))?;
    l.info(&format!("grid step 1/200: some Q_k non-real on {}", runs_text(&grid_runs(&rows, GeomFactorialRow::some_nonreal))))?;
    let disagree: Vec<&GeomFactorialRow> = rows.iter().filter(|r| in_reference_set(&r.r) == r.q2_real).collect();
    if !disagree.is_empty() {
        let first = &disagree[0].r;
        l.note(&format!(
            "reference non-reality set [0, 1/sqrt3) u (2-sqrt2, 1] for Q_2 disagrees with the computed set at {} of {} grid points (first r={first}, about {}); the computed set is [0, 2-sqrt2)",
            disagree.len(),
            rows.len(),
            approx_string(first)
        ))?;
    }
    Ok(l.ok)
}

fn laguerre(out: &mut dyn Write) -> CliResult<bool> {
    let mut l = Lines { out, id: "laguerre", ok: true };
    let mut eigen = CheckReport::new("laguerre-eigen");
    for (a, shift) in laguerre_grid() {
        let r = verify_laguerre_eigen(&LaguerreParam::new(a.clone(), shift.clone())?, 10);
        eigen.checked += r.checked;
        if let (None, Some(f)) = (&eigen.failure, r.failure) {
            eigen.failure = Some(f);
        }
    }
    l.report(&eigen)?;
    let one = int(1);
    let demo = laguerre_counterexample_demo(&one, &[int(-1), int(0), int(1), int(2), int(3)], 6)?;
    for entry in &demo {
        let params = LaguerreParam::new(one.clone(), entry.a.clone())?;
        match &entry.verdict.status {
            Status::Falsified { witness } => {
                let sound = witness.input.is_real_rooted()
                    && !witness.output.is_real_rooted()
                    && laguerre_operator_apply(&params, &witness.input) == witness.output;
                l.check(
                    sound && !entry.in_known_range && entry.coefficients_real_rooted,
                    &format!("alpha=1, a={}: witness {} -> {}", entry.a, witness.input, witness.output),
                )?;
            }
            Status::Inconclusive { bound } => l.check(
                entry.in_known_range && entry.coefficients_real_rooted,
                &format!("alpha=1, a={}: no witness up to degree {}", entry.a, bound.unwrap_or(0)),
            )?,
            other => l.check(false, &format!("alpha=1, a={}: unexpected verdict {other:?}", entry.a))?,
        }
    }
    Ok(l.ok)
}
