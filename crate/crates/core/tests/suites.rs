use hypercone::lpm::{psd_stable_probe, LpmPolynomial};
use hypercone::poly::HomogeneousPolynomial;
use hypercone::spectral::SymmetricMatrix;
use hypercone::suite::{run_fischer, run_suite, verify_main, verify_minmax, SuiteConfig, VerificationReport, SUITES};
use hypercone::Error;

fn small(seed: u64) -> SuiteConfig {
    SuiteConfig { seed, trials: Some(20) }
}

#[test]
fn reports_are_deterministic() {
    for name in SUITES {
        let a = run_suite(name, &small(7)).unwrap();
        let b = run_suite(name, &small(7)).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    for name in ["main", "transfer", "fischer"] {
        let parallel = run_suite(name, &small(11)).unwrap();
        let serial = single.install(|| run_suite(name, &small(11)).unwrap());
        assert_eq!(parallel, serial, "{name}");
    }
}

#[test]
fn seeds_change_the_samples() {
    let a = run_suite("main", &small(1)).unwrap();
    let b = run_suite("main", &small(2)).unwrap();
    assert_ne!(
        a.iter().map(|r| r.worst_slack).collect::<Vec<_>>(),
        b.iter().map(|r| r.worst_slack).collect::<Vec<_>>()
    );
}

#[test]
fn every_suite_passes_at_small_size() {
    for name in SUITES {
        for report in run_suite(name, &small(3)).unwrap() {
            assert!(report.passed(), "{}: {:?}", report.check, report.counterexamples.first());
            // stratified reports run the override once per stratum
            let expected = match *name {
                "pinching" => 20 * 278,
                "sign" => 20 * 6,
                _ => 20,
            };
            assert_eq!(report.trials, expected, "{}", report.check);
        }
    }
}

#[test]
fn unknown_suites_are_rejected() {
    assert!(matches!(run_suite("nope", &SuiteConfig::default()), Err(Error::Domain(_))));
}

#[test]
fn reports_round_trip_through_json() {
    for report in run_suite("minmax", &small(5)).unwrap() {
        let text = serde_json::to_string(&report).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }
}

#[test]
fn fischer_can_target_one_polynomial() {
    let det = LpmPolynomial::determinant(3).unwrap();
    let reports = run_fischer(&small(9), Some(&det)).unwrap();
    assert_eq!(reports.len(), 1);
    assert!(reports[0].passed());
}

#[test]
fn minmax_reports_for_a_fixed_matrix() {
    let p = HomogeneousPolynomial::elementary_symmetric(3, 2).unwrap();
    let a = SymmetricMatrix::from_rows(&[vec![2.0, 1.0, 0.0], vec![1.0, 2.0, 0.5], vec![0.0, 0.5, 1.0]]).unwrap();
    let report = verify_minmax(&p, &a, 50, 1).unwrap();
    assert!(report.passed() && report.worst_slack >= -1e-12, "{report:?}");
    let outside = SymmetricMatrix::from_diagonal(&[1.0, -3.0, -3.0]);
    assert!(matches!(verify_minmax(&p, &outside, 5, 1), Err(Error::ConeMembership(_))));
}

#[test]
fn worked_anchor() {
    let p = HomogeneousPolynomial::elementary_symmetric(2, 2).unwrap();
    let a = SymmetricMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
    let item = verify_main(&p, &a).unwrap();
    assert!((item.lhs - 4.0).abs() < 1e-12 && (item.rhs - 3.0).abs() < 1e-12, "{item:?}");
    assert!(item.holds && item.cone_preserved);
}

#[test]
fn standard_lpm_polynomials_survive_the_psd_probe() {
    for k in 1..=4 {
        let p = LpmPolynomial::principal_minor_sum(4, k).unwrap();
        let r = psd_stable_probe(&p, 50, 4).unwrap();
        assert!(r.passed && r.failures.is_empty(), "P_{k}");
    }
}
