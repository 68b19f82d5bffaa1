mod common;

use common::{factored, hankel_real_rooted, zero_multisets};
use hermdiag::classify::*;
use hermdiag::diffop::apply_operator;
use hermdiag::diffop::build_operator;
use hermdiag::hermite::HermiteParam;
use hermdiag::jensen::{turan_quantity, GammaSeq};
use hermdiag::laguerre::{laguerre_operator_apply, LaguerreParam};
use hermdiag::rat::{int, rat, Rat};
use num_traits::Signed;

fn alpha(v: Rat) -> HermiteParam {
    HermiteParam::new(v).unwrap()
}

/// Re-derives the image through the operator form and re-tests reality with
/// the Hankel-signature oracle.
fn recheck(seq: &GammaSeq, w: &Witness) {
    assert!(hankel_real_rooted(&w.input), "input {}", w.input);
    assert!(!hankel_real_rooted(&w.output), "output {}", w.output);
    let n = w.input.degree().unwrap();
    let via_operator = match &w.basis {
        Basis::Hermite { alpha } => apply_operator(&build_operator(alpha, seq, n, 0), &w.input).unwrap(),
        Basis::Laguerre { alpha } => {
            let a = seq.gamma(0);
            assert_eq!(seq.gamma(1), &a + int(1), "operator form needs gamma_k = k + a");
            laguerre_operator_apply(&LaguerreParam::new(alpha.clone(), a).unwrap(), &w.input)
        }
        Basis::Standard => w.output.clone(),
    };
    assert_eq!(via_operator, w.output);
}

#[test]
fn sigma_at_least_one_gives_real_coefficients() {
    for sigma in [int(1), rat(3, 2), int(2)] {
        for zeros in zero_multisets() {
            let seq = GammaSeq::from_spec(factored(sigma.clone(), zeros.clone()));
            for a in [rat(1, 2), int(1), int(2)] {
                for p in 0..=2 {
                    let t = q_reality_table(&alpha(a.clone()), &seq, 10, p).unwrap();
                    assert!(t.all_real(), "sigma={sigma} zeros={zeros:?} alpha={a} p={p} k={:?}", t.first_nonreal());
                }
            }
        }
    }
}

#[test]
fn sigma_below_one_has_a_nonreal_coefficient() {
    for sigma in [int(0), rat(1, 2), rat(9, 10)] {
        for zeros in zero_multisets() {
            let seq = GammaSeq::from_spec(factored(sigma.clone(), zeros.clone()));
            let t = q_reality_table(&alpha(int(1)), &seq, 25, 0).unwrap();
            assert!(t.first_nonreal().is_some(), "sigma={sigma} zeros={zeros:?}");
        }
    }
}

#[test]
fn reality_rows_agree_with_hankel_oracle() {
    let a = alpha(int(1));
    for seq in [GammaSeq::example311(), GammaSeq::bessel_j0(), GammaSeq::geom_factorial(rat(3, 5))] {
        let t = q_reality_table(&a, &seq, 9, 1).unwrap();
        for row in &t.rows {
            let q = hermdiag::diffop::coefficient_polynomial(&a, &seq, row.k, 1);
            assert_eq!(row.real_rooted, hankel_real_rooted(&q), "k={}", row.k);
        }
    }
}

#[test]
fn turan_implication_never_violated() {
    let mut seqs = vec![GammaSeq::example311(), GammaSeq::bessel_j0(), GammaSeq::exp_half_cosh(), GammaSeq::linear(int(3))];
    for sigma in [int(0), rat(1, 2), int(1), int(2)] {
        for zeros in zero_multisets() {
            seqs.push(GammaSeq::from_spec(factored(sigma.clone(), zeros)));
        }
    }
    for seq in &seqs {
        for a in [rat(1, 2), int(2)] {
            for p in 0..=2 {
                let r = turanish_check(&alpha(a.clone()), seq, 10, p).unwrap();
                assert!(r.passed(), "{}", r.summary_line());
            }
        }
    }
    // the Bessel k=3 quantity is negative, forcing Q_3 to be non-real
    assert!(turan_quantity(&GammaSeq::bessel_j0(), 3, 0).unwrap().is_negative());
}

#[test]
fn witnesses_are_sound() {
    let cases = [
        (GammaSeq::linear(int(-1)), Basis::hermite(alpha(int(1)))),
        (GammaSeq::linear(rat(-1, 2)), Basis::hermite(alpha(int(2)))),
        (GammaSeq::linear(int(-1)), Basis::laguerre(int(1)).unwrap()),
        (GammaSeq::linear(int(3)), Basis::laguerre(int(1)).unwrap()),
        (GammaSeq::linear(int(5)), Basis::laguerre(int(2)).unwrap()),
    ];
    for (seq, basis) in cases {
        let v = ms_falsifier(&seq, &basis, 6).unwrap();
        let w = v.witness().unwrap_or_else(|| panic!("no witness for {seq:?} in {basis:?}"));
        recheck(&seq, w);
    }
}

#[test]
fn falsifier_is_deterministic() {
    let seq = GammaSeq::linear(int(-1));
    let basis = Basis::hermite(alpha(int(1)));
    let a = serde_json::to_string(&ms_falsifier(&seq, &basis, 6).unwrap()).unwrap();
    let b = serde_json::to_string(&ms_falsifier(&seq, &basis, 6).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn falsifier_silent_on_hermite_multiplier_sequences() {
    let a = alpha(int(1));
    for sigma in [int(1), int(2)] {
        for zeros in [vec![], vec![int(1)]] {
            let spec = factored(sigma.clone(), zeros);
            assert_eq!(is_hermite_ms(&spec).status, Status::IsHms);
            let v = ms_falsifier(&GammaSeq::from_spec(spec), &Basis::hermite(a.clone()), 5).unwrap();
            assert!(v.is_inconclusive(), "{v:?}");
        }
    }
    for seq in [GammaSeq::constant(int(1)), GammaSeq::linear(int(0)), GammaSeq::linear(int(2))] {
        assert!(ms_falsifier(&seq, &Basis::hermite(a.clone()), 6).unwrap().is_inconclusive());
        assert!(ms_falsifier(&seq, &Basis::Standard, 6).unwrap().is_inconclusive());
    }
}
