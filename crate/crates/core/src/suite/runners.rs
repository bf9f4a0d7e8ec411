use rand::Rng;
use serde_json::json;

use super::checks::*;
use super::sampling::*;
use super::{run_trials, FailureKind, TrialOutcome, VerificationReport};
use crate::cone::{concavity_probe, ones, Mode};
use crate::error::{Error, Result};
use crate::lpm::{
    block_pinch, lpm_cone_member, lpm_eval, random_symmetric, reynolds_sign_average, sign_conjugate,
    LpmPolynomial, SignVector,
};
use crate::majorization::{birkhoff_decompose, DEFAULT_BIRKHOFF_TOL};
use crate::partition::Partition;
use crate::poly::HomogeneousPolynomial;
use crate::rng::derive_seed;
use crate::spectral::{eigenvalues_sym, random_orthogonal_with, schur_horn_check, SymmetricMatrix};

type FamilyBuilder = Box<dyn Fn(usize) -> Family + Sync>;

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Suite names accepted by [`run_suite`], in the order [`run_all`] runs them.
pub const SUITES: &[&str] = &[
    "schur-horn",
    "main",
    "hadamard",
    "le",
    "garding",
    "birkhoff",
    "closure",
    "minmax",
    "transfer",
    "pinching",
    "fischer",
    "sign",
];

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides every report's default trial count. The stratified
    /// reports (`pinching` per partition, `sign` per dimension) run this
    /// many trials per stratum.
    pub trials: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, trials: None }
    }
}

impl SuiteConfig {
    fn trials(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    fn seed_for(&self, check: &str) -> u64 {
        derive_seed(self.seed, check)
    }
}

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    match name {
        "schur-horn" => Ok(vec![schur_horn(config)]),
        "main" => main_suite(config),
        "hadamard" => Ok(vec![hadamard(config)]),
        "le" => Ok(vec![le(config)]),
        "garding" => garding(config),
        "birkhoff" => Ok(vec![birkhoff(config)]),
        "closure" => Ok(vec![closure(config)]),
        "minmax" => minmax(config),
        "transfer" => Ok(transfer(config)),
        "pinching" => Ok(vec![pinching(config)]),
        "fischer" => run_fischer(config, None),
        "sign" => Ok(sign(config)),
        other => Err(Error::Domain(format!(
            "unknown suite {other:?}; expected one of {} or all",
            SUITES.join(", ")
        ))),
    }
}

pub fn run_all(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for name in SUITES {
        out.extend(run_suite(name, config)?);
    }
    Ok(out)
}

/// Every tenth trial samples the cone boundary.
fn boundary(trial: usize) -> bool {
    trial.is_multiple_of(10)
}

fn rows(a: &SymmetricMatrix) -> serde_json::Value {
    json!(a.to_rows())
}

/// Unwraps a sampling step or turns its error into a failed trial.
macro_rules! sample {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return TrialOutcome::from_error(&e, json!("sampling")),
        }
    };
}

fn schur_horn(config: &SuiteConfig) -> VerificationReport {
    let check = "schur_horn";
    run_trials(check, config.trials(1000), config.seed_for(check), |rng, _| {
        let n = rng.random_range(2..=8);
        let a = random_symmetric(rng, n);
        let lambda = eigenvalues_sym(&a);
        let mut d = a.diag();
        d.sort_by(|u, v| v.total_cmp(u));
        let scale = 1.0 + a.max_abs();
        let (mut sl, mut sd, mut worst) = (0.0, 0.0, f64::INFINITY);
        for i in 0..n - 1 {
            sl += lambda[i];
            sd += d[i];
            worst = worst.min((sl - sd) / scale);
        }
        if schur_horn_check(&a) {
            TrialOutcome::pass(worst)
        } else {
            TrialOutcome::fail(FailureKind::Inequality, "diag(A) is not majorized by λ(A)", rows(&a))
        }
    })
}

fn main_suite(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut families: Vec<(String, FamilyBuilder, usize)> = (2..=8)
        .map(|k| {
            let f: Box<dyn Fn(usize) -> Family + Sync> = Box::new(move |n| Family::Elementary { n, k });
            (format!("main:S_{k}"), f, k)
        })
        .collect();
    families.push(("main:S_1*S_2".into(), Box::new(|n| Family::S1S2 { n }), 2));
    Ok(families
        .into_iter()
        .map(|(check, family, min_n)| {
            run_trials(&check, config.trials(500), config.seed_for(&check), |rng, i| {
                let n = rng.random_range(min_n..=8);
                let p = sample!(family(n).build());
                let lambda = sample!(sample_cone_point(&p, rng, boundary(i)));
                let a = sample!(matrix_with_spectrum(rng, &lambda));
                TrialOutcome::from_item(verify_main(&p, &a), || json!({ "family": family(n).name(), "A": rows(&a) }))
            })
        })
        .collect())
}

fn hadamard(config: &SuiteConfig) -> VerificationReport {
    let check = "hadamard";
    run_trials(check, config.trials(500), config.seed_for(check), |rng, i| {
        let n = rng.random_range(2..=8);
        let a = sample!(random_psd(rng, n, boundary(i)));
        TrialOutcome::from_item(verify_hadamard(&a), || rows(&a))
    })
}

/// `S_k(λ) ≤ S_k(diag)` on `k`-positive matrices, cross-checked against
/// [`verify_main`] with `P = S_k` on the same input.
fn le(config: &SuiteConfig) -> VerificationReport {
    let check = "le";
    run_trials(check, config.trials(500), config.seed_for(check), |rng, i| {
        let n = rng.random_range(2..=8);
        let k = rng.random_range(1..=n);
        let p = sample!(HomogeneousPolynomial::elementary_symmetric(n, k));
        let lambda = sample!(sample_cone_point(&p, rng, boundary(i)));
        let a = sample!(matrix_with_spectrum(rng, &lambda));
        let input = || json!({ "k": k, "A": rows(&a) });
        let le = verify_le_kpositive(&a, k);
        let main_passed = verify_main(&p, &a).map(|m| m.passed()).unwrap_or(false);
        let le_passed = le.as_ref().map(|m| m.passed()).unwrap_or(false);
        TrialOutcome::from_item(le, input).require_agreement(
            le_passed == main_passed,
            "S_k recurrence and the main check disagree",
            input,
        )
    })
}

fn garding(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let families = [
        Family::Elementary { n: 3, k: 2 },
        Family::Elementary { n: 5, k: 3 },
        Family::Elementary { n: 6, k: 4 },
        Family::Elementary { n: 8, k: 5 },
        Family::S1S2 { n: 4 },
    ];
    families
        .iter()
        .map(|f| {
            let check = format!("garding:{}", f.name());
            let p = f.build()?;
            Ok(run_trials(&check, config.trials(200), config.seed_for(&check), |rng, _| {
                let x = sample!(sample_cone_point(&p, rng, false));
                let y = sample!(sample_cone_point(&p, rng, false));
                let input = || json!({ "x": x, "y": y });
                match concavity_probe(&p, &ones(p.dim()), &x, &y, 11) {
                    Ok(r) if r.passed => TrialOutcome::pass(r.worst_gap),
                    Ok(r) => TrialOutcome {
                        slack: Some(r.worst_gap),
                        ..TrialOutcome::fail(FailureKind::Inequality, "concavity violated", input())
                    },
                    Err(e) => TrialOutcome::from_error(&e, input()),
                }
            }))
        })
        .collect()
}

fn birkhoff(config: &SuiteConfig) -> VerificationReport {
    let check = "birkhoff";
    run_trials(check, config.trials(200), config.seed_for(check), |rng, _| {
        let n = rng.random_range(2..=8);
        let d = sample!(random_doubly_stochastic(rng, n));
        let input = || json!(d.matrix().to_rows());
        let b = match birkhoff_decompose(&d, DEFAULT_BIRKHOFF_TOL) {
            Ok(b) => b,
            Err(e) => return TrialOutcome::from_error(&e, input()),
        };
        let err = b.reconstruct().max_abs_diff(d.matrix());
        let sum: f64 = b.weights.iter().sum();
        let bound = (n - 1) * (n - 1) + 1;
        let slack = (1e-9 - err) / (1.0 + 1e-9);
        if err > 1e-9 {
            TrialOutcome { slack: Some(slack), ..TrialOutcome::fail(FailureKind::Inequality, format!("reconstruction error {err:e}"), input()) }
        } else if b.len() > bound {
            TrialOutcome::fail(FailureKind::Inequality, format!("{} terms exceed {bound}", b.len()), input())
        } else if (sum - 1.0).abs() > 1e-10 || b.weights.iter().any(|&w| w < 0.0) {
            TrialOutcome::fail(FailureKind::Inequality, format!("weights sum to {sum}"), input())
        } else {
            TrialOutcome::pass(slack)
        }
    })
}

fn closure(config: &SuiteConfig) -> VerificationReport {
    let check = "closure";
    run_trials(check, config.trials(500), config.seed_for(check), |rng, i| {
        let n = rng.random_range(2..=8);
        let family = random_family(rng, n);
        let p = sample!(family.build());
        let y = sample!(sample_cone_point(&p, rng, boundary(i)));
        let d = sample!(random_doubly_stochastic(rng, n));
        let x = sample!(d.apply(&y));
        TrialOutcome::from_item(verify_schur_concavity(&p, &x, &y), || {
            json!({ "family": family.name(), "x": x, "y": y, "D": d.matrix().to_rows() })
        })
    })
}

fn minmax(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let families = [
        Family::Elementary { n: 2, k: 2 },
        Family::Elementary { n: 3, k: 2 },
        Family::Elementary { n: 4, k: 3 },
        Family::Elementary { n: 6, k: 4 },
        Family::S1S2 { n: 4 },
    ];
    families
        .iter()
        .map(|f| {
            let check = format!("minmax:{}", f.name());
            let p = f.build()?;
            Ok(run_trials(&check, config.trials(100), config.seed_for(&check), |rng, i| {
                let lambda = sample!(sample_cone_point(&p, rng, boundary(i)));
                let a = sample!(matrix_with_spectrum(rng, &lambda));
                let u = random_orthogonal_with(rng, p.dim());
                TrialOutcome::from_minmax(minmax_item(&p, &a, &u), || json!({ "A": rows(&a), "U": u.to_rows() }))
            }))
        })
        .collect()
}

fn transfer(config: &SuiteConfig) -> Vec<VerificationReport> {
    let trials = config.trials(200);
    let fan_sum = run_trials("transfer:fan_sum", trials, config.seed_for("transfer:fan_sum"), |rng, i| {
        let n = rng.random_range(2..=6);
        let family = random_family(rng, n);
        let p = sample!(family.build());
        let spectrum_a = sample!(sample_cone_point(&p, rng, boundary(i)));
        let a = sample!(matrix_with_spectrum(rng, &spectrum_a));
        let spectrum_b = sample!(sample_cone_point(&p, rng, false));
        let b = sample!(matrix_with_spectrum(rng, &spectrum_b));
        TrialOutcome::from_item(verify_fan_sum(&p, &a, &b), || {
            json!({ "family": family.name(), "A": rows(&a), "B": rows(&b) })
        })
    });
    let fan_diff = run_trials("transfer:fan_diff", trials, config.seed_for("transfer:fan_diff"), |rng, i| {
        let n = rng.random_range(2..=6);
        let family = random_family(rng, n);
        let p = sample!(family.build());
        let b = random_symmetric(rng, n);
        let spectrum_c = sample!(sample_cone_point(&p, rng, boundary(i)));
        let c = sample!(matrix_with_spectrum(rng, &spectrum_c));
        let a = sample!(b.add(&c));
        TrialOutcome::from_item(verify_fan_diff(&p, &a, &b), || {
            json!({ "family": family.name(), "A": rows(&a), "B": rows(&b) })
        })
    });
    let rank_one = run_trials("transfer:rank_one", trials, config.seed_for("transfer:rank_one"), |rng, i| {
        let n = rng.random_range(2..=6);
        let family = random_family(rng, n);
        let p = sample!(family.build());
        let spectrum_a = sample!(sample_cone_point(&p, rng, boundary(i)));
        let a = sample!(matrix_with_spectrum(rng, &spectrum_a));
        let v = gaussian_vector(rng, n);
        TrialOutcome::from_item(verify_rank_one(&p, &a, &v), || {
            json!({ "family": family.name(), "A": rows(&a), "v": v })
        })
    });
    let sum_psd = run_trials("transfer:sum_psd", trials, config.seed_for("transfer:sum_psd"), |rng, i| {
        let n = rng.random_range(2..=4);
        let family = random_family(rng, 2 * n);
        let p = sample!(family.build());
        let a = sample!(random_psd(rng, n, boundary(i)));
        let b = sample!(random_psd(rng, n, false));
        TrialOutcome::from_item(verify_sum_psd_embed(&p, &a, &b), || {
            json!({ "family": family.name(), "A": rows(&a), "B": rows(&b) })
        })
    });
    let block = run_trials("transfer:block_diag", trials, config.seed_for("transfer:block_diag"), |rng, i| {
        let n = rng.random_range(2..=8);
        let family = random_family(rng, n);
        let p = sample!(family.build());
        let spectrum_a = sample!(sample_cone_point(&p, rng, boundary(i)));
        let a = sample!(matrix_with_spectrum(rng, &spectrum_a));
        let partition = random_partition(rng, n);
        TrialOutcome::from_item(verify_block_pinch(&p, &a, &partition), || {
            json!({ "family": family.name(), "A": rows(&a), "partition": partition.to_one_based() })
        })
    });
    vec![fan_sum, fan_diff, rank_one, sum_psd, block]
}

/// All partitions of `n ≤ 6`, paired with `per_partition` random matrices.
fn pinching(config: &SuiteConfig) -> VerificationReport {
    let check = "pinching";
    let per = config.trials(50);
    let cases: Vec<Partition> = (1..=6).flat_map(Partition::all).collect();
    run_trials(check, cases.len() * per, config.seed_for(check), |rng, i| {
        let partition = &cases[i / per];
        let a = random_symmetric(rng, partition.n());
        let input = || json!({ "A": rows(&a), "partition": partition.to_one_based() });
        let averaged = sample!(reynolds_sign_average(&a, partition));
        let pinched = sample!(block_pinch(&a, partition));
        let err = averaged.matrix().max_abs_diff(pinched.matrix());
        let slack = (1e-12 - err) / (1.0 + 1e-12);
        if err <= 1e-12 {
            TrialOutcome::pass(slack)
        } else {
            TrialOutcome { slack: Some(slack), ..TrialOutcome::fail(FailureKind::Inequality, format!("entrywise gap {err:e}"), input()) }
        }
    })
}

/// One report per `(𝒫, n)`; partitions cycle through every partition of `n`.
/// With `only`, runs that single polynomial instead of the default set.
pub fn run_fischer(config: &SuiteConfig, only: Option<&LpmPolynomial>) -> Result<Vec<VerificationReport>> {
    let mut cases: Vec<(String, LpmPolynomial, usize)> = Vec::new();
    match only {
        Some(p) => {
            let k = p.degree().ok_or(Error::Inhomogeneous)?;
            cases.push((format!("fischer:custom(n={})", p.n()), p.clone(), k));
        }
        None => {
            for n in [4, 5] {
                cases.push((format!("fischer:det(n={n})"), LpmPolynomial::determinant(n)?, n));
                for k in [2, 3] {
                    cases.push((format!("fischer:P_{k}(n={n})"), LpmPolynomial::principal_minor_sum(n, k)?, k));
                }
            }
        }
    }
    cases
        .into_iter()
        .map(|(check, p, k)| {
            let n = p.n();
            let partitions = Partition::all(n);
            // spectra in Γ_k give matrices in the cone of Σ_{|J|=k} det(X_J)
            let sampler = HomogeneousPolynomial::elementary_symmetric(n, k.max(1).min(n))?;
            Ok(run_trials(&check, config.trials(200), config.seed_for(&check), |rng, i| {
                let partition = &partitions[i % partitions.len()];
                let lambda = sample!(sample_cone_point(&sampler, rng, boundary(i)));
                let a = sample!(matrix_with_spectrum(rng, &lambda));
                let input = || json!({ "A": rows(&a), "partition": partition.to_one_based() });
                match verify_symmetrization(&p, &a, partition) {
                    Ok(r) => TrialOutcome::from_item(Ok(r.item), input).require_agreement(
                        r.agrees_with_fischer,
                        "group average and pinching disagree",
                        input,
                    ),
                    Err(e) => TrialOutcome::from_error(&e, input()),
                }
            }))
        })
        .collect()
}

/// A random lpm polynomial with up to eight terms on `n` indices.
fn random_lpm<R: Rng + ?Sized>(rng: &mut R, n: usize) -> LpmPolynomial {
    loop {
        let terms: Vec<(Vec<usize>, f64)> = (0..rng.random_range(1..=8))
            .map(|_| {
                let set = (0..n).filter(|_| rng.random_bool(0.5)).collect();
                (set, rng.random_range(-2.0..2.0))
            })
            .collect();
        if let Ok(p) = LpmPolynomial::new(n, terms) {
            return p;
        }
    }
}

/// Exhaustive sign-flip invariance of evaluation and of cone membership.
fn sign(config: &SuiteConfig) -> Vec<VerificationReport> {
    let per = config.trials(20);
    let check = "sign:evaluation";
    let evaluation = run_trials(check, 6 * per, config.seed_for(check), |rng, i| {
        let n = i / per + 1;
        let p = random_lpm(rng, n);
        let a = random_symmetric(rng, n);
        let base = sample!(lpm_eval(&p, &a));
        let mut worst = 0.0_f64;
        for mask in 0..1u32 << n {
            let signs: Vec<i8> = (0..n).map(|b| if mask & (1 << b) != 0 { -1 } else { 1 }).collect();
            let conj = sample!(sign_conjugate(&a, &sample!(SignVector::new(signs))));
            let v = sample!(lpm_eval(&p, &conj));
            worst = worst.max((v - base).abs() / slack_scale(v, base));
        }
        if worst <= 1e-10 {
            TrialOutcome::pass(-worst)
        } else {
            TrialOutcome {
                slack: Some(-worst),
                ..TrialOutcome::fail(
                    FailureKind::Inequality,
                    format!("relative deviation {worst:e}"),
                    json!({ "lpm": p.to_json_value(), "A": rows(&a) }),
                )
            }
        }
    });
    let check = "sign:cone";
    let cone = run_trials(check, 6 * per, config.seed_for(check), |rng, i| {
        let n = i / per + 1;
        let k = rng.random_range(1..=n);
        let p = sample!(LpmPolynomial::principal_minor_sum(n, k));
        let sampler = sample!(HomogeneousPolynomial::elementary_symmetric(n, k));
        let spectrum_a = sample!(sample_cone_point(&sampler, rng, boundary(i)));
        let a = sample!(matrix_with_spectrum(rng, &spectrum_a));
        let eps = EPS * (1.0 + a.max_abs());
        let inside = sample!(lpm_cone_member(&p, &a, Mode::Closed, eps)).member;
        for mask in 0..1u32 << n {
            let signs: Vec<i8> = (0..n).map(|b| if mask & (1 << b) != 0 { -1 } else { 1 }).collect();
            let conj = sample!(sign_conjugate(&a, &sample!(SignVector::new(signs.clone()))));
            if sample!(lpm_cone_member(&p, &conj, Mode::Closed, eps)).member != inside {
                return TrialOutcome::fail(
                    FailureKind::Cone,
                    "membership changed under sign conjugation",
                    json!({ "k": k, "A": rows(&a), "signs": signs }),
                );
            }
        }
        if inside {
            TrialOutcome::default()
        } else {
            TrialOutcome::fail(FailureKind::Precondition, "sampled A is not in the cone", json!({ "k": k, "A": rows(&a) }))
        }
    });
    vec![evaluation, cone]
}
