//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion, with
//! NOTE lines for logged reference-value divergences.
//!
//! Criterion 2 asks for the ratios of e^{x/2}(1+x)² to settle within 1/100 of -1/2 by
//! K0 ≤ 100. For this sequence g_k = (-1/2)^k (4k² - 8k + 1), so the ratio
//! error is exactly (8k-12)/(2(4k²-16k+13)), which first drops to 1/100 at
//! k = 103. That clause cannot hold; the line reports FAIL and the run only
//! fails if the observed K0 differs from this closed form.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::hankel_real_rooted;
use hermdiag::classify::*;
use hermdiag::diffop::*;
use hermdiag::hermite::*;
use hermdiag::jensen::*;
use hermdiag::laguerre::*;
use hermdiag::rat::{from_usize, int, rat, Rat};
use hermdiag::{CheckReport, RatPoly};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into(), notes: Vec::new() }
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

fn alpha(v: Rat) -> HermiteParam {
    HermiteParam::new(v).unwrap()
}

fn alphas() -> Vec<HermiteParam> {
    vec![alpha(rat(1, 2)), alpha(int(1)), alpha(int(2))]
}

fn factored(sigma: Rat, zeros: Vec<Rat>) -> GammaSeq {
    GammaSeq::from_spec(LpPlusSpec::Factored(FactoredSpec::new(int(1), 0, sigma, zeros).unwrap()))
}

fn zero_multisets() -> Vec<Vec<Rat>> {
    vec![vec![], vec![int(1)], vec![int(1), int(2)], vec![int(1), int(1)]]
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let seqs = [
        ("const1", GammaSeq::constant(int(1))),
        ("linear(3)", GammaSeq::linear(int(3))),
        ("example311", GammaSeq::example311()),
        ("besselJ0", GammaSeq::bessel_j0()),
    ];
    for a in alphas() {
        for (name, seq) in &seqs {
            let oracle = solve_operator_from_action(&a, seq, 10).unwrap();
            if oracle.coefficients() != &coefficient_polynomials(&a, seq, 10, 0)[..] {
                return Outcome::new(false, format!("closed form differs from oracle for {name}, alpha={}", a.value()));
            }
            let r = verify_diagonal_action(&a, seq, 12).unwrap();
            if !r.passed() {
                return Outcome::new(false, format!("{name}: {}", r.summary_line()));
            }
        }
    }
    let t = start.elapsed();
    Outcome::new(
        t < Duration::from_secs(10),
        format!("closed form = oracle for k <= 10 and diagonal action exact for n <= 12 on 4 sequences x 3 alphas ({})", secs(t)),
    )
}

/// `(8k-12) / (2(4k²-16k+13))`, the exact ratio error for `e^{x/2}(1+x)²`.
fn table1_error(k: i64) -> Rat {
    rat(8 * k - 12, 2 * (4 * k * k - 16 * k + 13))
}

fn criterion2() -> (Outcome, bool) {
    let seq = GammaSeq::example311();
    let want = [rat(3, 2), rat(1, 6), rat(-13, 2), rat(-33, 26), rat(-61, 66), rat(-97, 122), rat(-141, 194)];
    let got: Vec<Option<Rat>> = ratio_sequence(&seq, 7, 0).into_iter().map(|e| e.value).collect();
    let values_ok = got.iter().zip(&want).all(|(g, w)| g.as_ref() == Some(w));
    let report = ratio_limit_check(seq.spec().unwrap(), 20, &rat(1, 100)).unwrap();
    let predicted = (1..=1000).filter(|&k| table1_error(k).abs() > rat(1, 100)).max().unwrap() as usize + 1;
    let k0_ok = report.k0.is_some_and(|k0| k0 <= 100);
    let as_analysed = report.k0 == Some(predicted);
    let detail = format!(
        "ratios k=1..7 exact: {values_ok}; limit {} within 1/100 from K0={} (required K0 <= 100; exact error stays <= 1/100 from k={predicted})",
        report.limit,
        report.k0.map_or("none".into(), |k| k.to_string()),
    );
    (Outcome::new(values_ok && k0_ok, detail), values_ok && (k0_ok || as_analysed))
}

fn criterion3() -> Outcome {
    let seq = GammaSeq::bessel_j0();
    let g = gstar_values(&seq, 7, 0);
    let g_want = [int(1), int(0), rat(-1, 2), rat(2, 3), rat(-5, 8), rat(7, 15), rat(-37, 144), rat(17, 420)];
    let turan = |k| turan_quantity(&seq, k, 0).unwrap();
    let turan_ok = turan(1) == int(0)
        && turan(3) == rat(-2, 9)
        && turan(4) == rat(-85, 192)
        && turan(5) == rat(-329, 900)
        && turan(2) == rat(1, 4);
    let mut q3_ok = true;
    for a in alphas() {
        let oracle = solve_operator_from_action(&a, &seq, 3).unwrap();
        let q3 = oracle.coefficient(3).unwrap().clone();
        q3_ok &= q3 == coefficient_polynomial(&a, &seq, 3, 0);
        q3_ok &= q3.count_real_roots().unwrap() == 1 && !q3.is_real_rooted() && !hankel_real_rooted(&q3);
        q3_ok &= q3 == RatPoly::new(vec![int(0), a.value() / int(6), int(0), rat(1, 9)]);
    }
    Outcome::new(
        g == g_want && turan_ok && q3_ok,
        format!("g_k exact: {}; turan values exact (k=2 -> 1/4): {turan_ok}; Q_3 one distinct real root for alpha in {{1/2,1,2}}: {q3_ok}", g == g_want),
    )
    .note("turan quantity at k=2: reference value 1, computed 1/4")
    .note("Q_3: reference form (x^2+6 alpha)x/18, oracle gives x(2x^2+3 alpha)/18")
}

fn criterion4() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for sigma in [int(1), rat(3, 2), int(2)] {
        for zeros in zero_multisets() {
            let seq = factored(sigma.clone(), zeros.clone());
            for a in alphas() {
                for p in 0..=2 {
                    let t = q_reality_table(&a, &seq, 10, p).unwrap();
                    if let Some(k) = t.first_nonreal() {
                        return Outcome::new(false, format!("sigma={sigma} zeros={zeros:?} alpha={} p={p}: Q_{k} non-real", a.value()));
                    }
                    count += t.rows.len();
                }
            }
        }
    }
    let t = start.elapsed();
    Outcome::new(t < Duration::from_secs(60), format!("{count} coefficient polynomials, all real-rooted ({})", secs(t)))
}

fn criterion5() -> Outcome {
    let start = Instant::now();
    let mut firsts = Vec::new();
    for sigma in [int(0), rat(1, 2), rat(9, 10)] {
        for zeros in zero_multisets() {
            let t = q_reality_table(&alpha(int(1)), &factored(sigma.clone(), zeros.clone()), 25, 0).unwrap();
            match t.first_nonreal() {
                Some(k) => firsts.push(k),
                None => return Outcome::new(false, format!("sigma={sigma} zeros={zeros:?}: all Q_k real for k <= 25")),
            }
        }
    }
    let t = start.elapsed();
    Outcome::new(
        t < Duration::from_secs(60),
        format!("12 specs each have a non-real Q_k with k <= 25 (first k: {firsts:?}) ({})", secs(t)),
    )
}

fn in_reference_set(r: &Rat) -> bool {
    let two_minus = int(2) - r;
    int(3) * r * r < int(1) || &two_minus * &two_minus < int(2)
}

fn criterion6() -> Outcome {
    let a = alpha(int(1));
    let named = [int(0), rat(1, 2), rat(4, 7), rat(3, 5), rat(9, 10), int(1)];
    let rows = geom_factorial_scan(&a, &named).unwrap();
    let all = rows.iter().all(GeomFactorialRow::some_nonreal);
    let grid = geom_factorial_scan(&a, &uniform_grid(&int(0), &int(1), 200)).unwrap();
    let fmt = |runs: Vec<(Rat, Rat)>| runs.iter().map(|(x, y)| format!("[{x}, {y}]")).collect::<Vec<_>>().join(" u ");
    let q2 = fmt(grid_runs(&grid, |r| !r.q2_real));
    let q4 = fmt(grid_runs(&grid, |r| !r.q4_real));
    let disagree = grid.iter().filter(|r| in_reference_set(&r.r) == r.q2_real).count();
    let shown: Vec<String> = rows.iter().map(|r| format!("r={}: Q2 {} Q4 {}", r.r, r.q2_real, r.q4_real)).collect();
    Outcome::new(all, format!("some Q_2/Q_4 non-real at each r ({})", shown.join("; ")))
        .note(format!("computed non-reality on grid step 1/200: Q_2 {q2}; Q_4 {q4}"))
        .note(format!(
            "divergence flagged: reference set [0,1/sqrt3) u (2-sqrt2,1] for Q_2 disagrees at {disagree} of {} grid points",
            grid.len()
        ))
}

fn random_sequence(rng: &mut ChaCha8Rng) -> GammaSeq {
    let len = rng.random_range(4..=20);
    let values = (0..len).map(|_| rat(rng.random_range(-30..=30), rng.random_range(1..=7))).collect();
    GammaSeq::explicit(values, rat(rng.random_range(-5..=5), 1))
}

fn criterion7() -> Outcome {
    let three = [GammaSeq::example311(), GammaSeq::bessel_j0(), GammaSeq::linear(int(3))];
    let mut failures: Vec<String> = Vec::new();
    let mut check = |r: CheckReport| {
        if !r.passed() {
            failures.push(r.summary_line());
        }
    };
    for seq in &three {
        check(check_gslem(seq, 10));
        check(check_shifty(seq, 8, 8));
    }
    check(check_index_identity_seeded(100, 9, 29));
    let mut rng = ChaCha8Rng::seed_from_u64(315);
    for _ in 0..100 {
        check(check_shifty(&random_sequence(&mut rng), 8, 8));
    }
    for a in alphas() {
        check(check_hermite_identities(12, &a).unwrap());
        check(check_product_formula(8, &a));
    }
    for seq in three.iter().chain([GammaSeq::constant(int(1))].iter()) {
        check(alpha_zero_limit_check(seq, 8));
    }
    Outcome::new(
        failures.is_empty(),
        if failures.is_empty() {
            "reconstruction, index reordering (100 tables), shift recurrence (3 + 100 sequences), Hermite identities, product formula, alpha=0 substitution".into()
        } else {
            failures.join("; ")
        },
    )
}

fn criterion8() -> Outcome {
    let a = alpha(int(1));
    let mut ok = true;
    let mut shown = Vec::new();
    for (seq, want) in [
        (GammaSeq::linear(int(3)), RatPoly::from_ints(&[3, 1])),
        (GammaSeq::linear(rat(-1, 2)), RatPoly::new(vec![rat(-1, 2), int(1)])),
        (GammaSeq::polynomial(RatPoly::from_ints(&[0, -1, 1])), RatPoly::from_ints(&[0, -1, 1])),
    ] {
        let p = interpolation_poly(&solve_operator_from_action(&a, &seq, 4).unwrap()).unwrap();
        ok &= p == want && (0..=10).all(|n| p.eval(&from_usize(n)) == seq.gamma(n));
        shown.push(p.to_string());
    }
    Outcome::new(ok, format!("interpolating polynomials {}; p(n) = gamma_n for n <= 10", shown.join(", ")))
}

fn criterion9() -> Outcome {
    let mut eigen_ok = true;
    for al in [int(0), rat(1, 2), int(1), int(2)] {
        for a in [int(-1), int(0), int(1), &al + int(1), &al + int(2)] {
            eigen_ok &= verify_laguerre_eigen(&LaguerreParam::new(al.clone(), a).unwrap(), 10).passed();
        }
    }
    let basis = Basis::laguerre(int(1)).unwrap();
    let mut witness_ok = true;
    let mut shown = Vec::new();
    for a in [int(-1), int(3)] {
        let v = ms_falsifier(&GammaSeq::linear(a.clone()), &basis, 6).unwrap();
        let Some(w) = v.witness() else {
            witness_ok = false;
            continue;
        };
        let params = LaguerreParam::new(int(1), a.clone()).unwrap();
        witness_ok &= w.input.degree().unwrap() <= 6
            && hankel_real_rooted(&w.input)
            && !hankel_real_rooted(&w.output)
            && laguerre_operator_apply(&params, &w.input) == w.output;
        shown.push(format!("a={a}: deg {}", w.input.degree().unwrap()));
    }
    let inconclusive = [int(0), int(1), int(2)]
        .iter()
        .all(|a| ms_falsifier(&GammaSeq::linear(a.clone()), &basis, 6).unwrap().is_inconclusive());
    Outcome::new(
        eigen_ok && witness_ok && inconclusive,
        format!(
            "eigen-identity n <= 10 on 20 (alpha, a) pairs: {eigen_ok}; verified witnesses ({}): {witness_ok}; a in {{0,1,2}} inconclusive: {inconclusive}",
            shown.join(", ")
        ),
    )
}

fn criterion10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hermdiag");
    let run = || {
        let start = Instant::now();
        let out = Command::new(bin)
            .args(["ratios", "--seq", "exp-half-cosh", "--kmax", "200", "--histogram", "20"])
            .output()
            .expect("binary runs");
        (out, start.elapsed())
    };
    let (first, t1) = run();
    let (second, t2) = run();
    if !first.status.success() {
        return Outcome::new(false, format!("exit status {:?}", first.status.code()));
    }
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    let (ratios, hist) = text.split_once("\n\n").unwrap_or((&text, ""));
    let rows: Vec<&str> = ratios.lines().skip(1).collect();
    let defined = rows.iter().filter(|r| !r.ends_with(",,,NA")).count();
    let binned: usize = hist.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse::<usize>().unwrap()).sum();
    let bins = hist.lines().skip(1).count();
    let same = first.stdout == second.stdout;
    let fast = t1 < Duration::from_secs(120) && t2 < Duration::from_secs(120);
    Outcome::new(
        rows.len() == 200 && same && binned == defined && bins == 20 && fast,
        format!(
            "{} rows ({defined} defined), byte-identical across runs: {same}, 20-bin counts sum to {binned} ({}, {})",
            rows.len(),
            secs(t1),
            secs(t2)
        ),
    )
}

fn main() -> ExitCode {
    let (c2, c2_as_analysed) = criterion2();
    let outcomes = vec![
        (1, criterion1()),
        (2, c2),
        (3, criterion3()),
        (4, criterion4()),
        (5, criterion5()),
        (6, criterion6()),
        (7, criterion7()),
        (8, criterion8()),
        (9, criterion9()),
        (10, criterion10()),
    ];
    let mut unexpected = Vec::new();
    for (n, o) in &outcomes {
        println!("{} criterion {n}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        for note in &o.notes {
            println!("NOTE criterion {n}: {note}");
        }
        let expected = o.pass || (*n == 2 && c2_as_analysed);
        if !expected {
            unexpected.push(*n);
        }
    }
    let passed = outcomes.iter().filter(|(_, o)| o.pass).count();
    println!("{passed}/{} criteria pass", outcomes.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
