use hypercone::cone::{directional_eigenvalues, ones};
use hypercone::linalg::Matrix;
use hypercone::lpm::{block_pinch, lpm_eval, random_symmetric, sign_conjugate, LpmPolynomial, SignVector};
use hypercone::majorization::{
    birkhoff_decompose, default_tol, doubly_stochastic_witness, majorizes, mean_vector, DEFAULT_BIRKHOFF_TOL,
};
use hypercone::partition::Partition;
use hypercone::poly::{elementary_symmetric_values, HomogeneousPolynomial, UnivariateRestriction};
use hypercone::rng::trial_rng;
use hypercone::roots::{all_real_roots, DEFAULT_TOL_IMAG};
use hypercone::spectral::{char_poly_coefficients, eigen_sym, eigenvalues_sym, random_orthogonal, SymmetricMatrix};
use hypercone::suite::sampling::{random_doubly_stochastic, random_partition};
use proptest::prelude::*;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}

fn vec_in(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0..3.0f64, n)
}

fn sized_vec() -> impl Strategy<Value = Vec<f64>> {
    (1usize..=8).prop_flat_map(vec_in)
}

fn elementary() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=7).prop_flat_map(|n| (Just(n), 1..=n))
}

fn symmetric(seed: u64, n: usize) -> SymmetricMatrix {
    random_symmetric(&mut trial_rng(seed, 0), n)
}

proptest! {
    #[test]
    fn evaluation_is_homogeneous((n, k) in elementary(), seed in any::<u64>(), t in -3.0..3.0f64) {
        let p = HomogeneousPolynomial::elementary_symmetric(n, k).unwrap();
        let x: Vec<f64> = random_symmetric(&mut trial_rng(seed, 1), n).diag();
        let tx: Vec<f64> = x.iter().map(|v| t * v).collect();
        let lhs = p.evaluate(&tx).unwrap();
        let rhs = t.powi(k as i32) * p.evaluate(&x).unwrap();
        prop_assert!(close(lhs, rhs, 1e-12), "{lhs} vs {rhs}");
    }

    #[test]
    fn restriction_matches_evaluation((n, k) in elementary(), seed in any::<u64>(), t in -4.0..4.0f64) {
        let p = HomogeneousPolynomial::elementary_symmetric(n, k).unwrap();
        let mut rng = trial_rng(seed, 2);
        let a: Vec<f64> = random_symmetric(&mut rng, n).diag();
        let x: Vec<f64> = random_symmetric(&mut rng, n).diag();
        let r = p.restrict_to_line(&a, &x).unwrap();
        let z: Vec<f64> = a.iter().zip(&x).map(|(ai, xi)| t * ai + xi).collect();
        prop_assert!(close(r.eval(t), p.evaluate(&z).unwrap(), 1e-10));
    }

    #[test]
    fn elementary_values_match_evaluation(x in sized_vec()) {
        let s = elementary_symmetric_values(&x);
        for (k, &sk) in s.iter().enumerate().skip(1) {
            let p = HomogeneousPolynomial::elementary_symmetric(x.len(), k).unwrap();
            prop_assert!(close(sk, p.evaluate(&x).unwrap(), 1e-12));
        }
    }

    #[test]
    fn roots_reconstruct_the_polynomial(roots in prop::collection::vec(-5.0..5.0f64, 1..=8)) {
        let mut c = vec![1.0];
        for &r in &roots {
            let mut next = vec![0.0; c.len() + 1];
            for (i, &v) in c.iter().enumerate() {
                next[i] -= r * v;
                next[i + 1] += v;
            }
            c = next;
        }
        let found = all_real_roots(&UnivariateRestriction::new(c.clone()), DEFAULT_TOL_IMAG).unwrap();
        prop_assert!(found.certified, "{found:?}");
        let p = UnivariateRestriction::new(c);
        let scale = 1.0 + roots.iter().fold(0.0_f64, |m, r| m.max(r.abs()));
        for &r in &found.roots {
            // residual relative to the coefficient size at r
            let bound: f64 = p.coefficients.iter().enumerate().map(|(j, v)| v.abs() * r.abs().powi(j as i32)).sum();
            prop_assert!(p.eval(r).abs() <= 1e-6 * bound.max(1.0), "root {r} of {roots:?}");
        }
        let mut want = roots.clone();
        want.sort_by(f64::total_cmp);
        let sum_want: f64 = want.iter().sum();
        let sum_got: f64 = found.roots.iter().sum();
        prop_assert!((sum_want - sum_got).abs() <= 1e-9 * scale * roots.len() as f64);
    }

    #[test]
    fn roots_are_translation_covariant(roots in prop::collection::vec(-3.0..3.0f64, 1..=6), s in -2.0..2.0f64) {
        let build = |rs: &[f64]| {
            let mut c = vec![1.0];
            for &r in rs {
                let mut next = vec![0.0; c.len() + 1];
                for (i, &v) in c.iter().enumerate() {
                    next[i] -= r * v;
                    next[i + 1] += v;
                }
                c = next;
            }
            UnivariateRestriction::new(c)
        };
        let shifted: Vec<f64> = roots.iter().map(|r| r + s).collect();
        let a = all_real_roots(&build(&roots), DEFAULT_TOL_IMAG).unwrap();
        let b = all_real_roots(&build(&shifted), DEFAULT_TOL_IMAG).unwrap();
        let sa: f64 = a.roots.iter().sum::<f64>() + s * roots.len() as f64;
        let sb: f64 = b.roots.iter().sum();
        prop_assert!((sa - sb).abs() <= 1e-8 * (1.0 + sa.abs()));
    }

    #[test]
    fn directional_eigenvalues_shift_and_scale((n, k) in elementary(), seed in any::<u64>(), s in -2.0..2.0f64, c in 0.1..3.0f64) {
        let p = HomogeneousPolynomial::elementary_symmetric(n, k).unwrap();
        let x = random_symmetric(&mut trial_rng(seed, 3), n).diag();
        let e = ones(n);
        let base = directional_eigenvalues(&p, &e, &x).unwrap();
        prop_assume!(base.certified);
        let shifted: Vec<f64> = x.iter().map(|v| v + s).collect();
        let scaled: Vec<f64> = x.iter().map(|v| c * v).collect();
        let es = directional_eigenvalues(&p, &e, &shifted).unwrap();
        let ec = directional_eigenvalues(&p, &e, &scaled).unwrap();
        let sum: f64 = base.eigenvalues.iter().sum();
        prop_assert!(close(es.eigenvalues.iter().sum::<f64>(), sum + k as f64 * s, 1e-8));
        prop_assert!(close(ec.eigenvalues.iter().sum::<f64>(), c * sum, 1e-8));
        // Vieta: the eigenvalues of S_k in direction 1 sum to k S_1(x) / n
        let s_vals = elementary_symmetric_values(&x);
        let binom = |n: usize, k: usize| (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
        let vieta = s_vals[1] * binom(n - 1, k - 1) / binom(n, k);
        prop_assert!(close(sum, vieta, 1e-8), "{sum} vs {vieta}");
    }

    #[test]
    fn symmetric_polynomials_are_permutation_invariant((n, k) in elementary(), seed in any::<u64>()) {
        let p = HomogeneousPolynomial::elementary_product(n, &[k, 1]).unwrap();
        prop_assert!(p.is_symmetric());
        let mut rng = trial_rng(seed, 4);
        let sigma = hypercone::suite::sampling::random_permutation(&mut rng, n);
        prop_assert_eq!(&p.permute(&sigma).unwrap(), &p);
        let x = random_symmetric(&mut rng, n).diag();
        let px: Vec<f64> = sigma.iter().map(|&i| x[i]).collect();
        prop_assert!(close(p.evaluate(&x).unwrap(), p.evaluate(&px).unwrap(), 1e-12));
    }

    #[test]
    fn witness_round_trip(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = trial_rng(seed, 5);
        let y = random_symmetric(&mut rng, n).diag();
        let d = random_doubly_stochastic(&mut rng, n).unwrap();
        let x = d.apply(&y).unwrap();
        prop_assert!(majorizes(&x, &y, default_tol(&y)).unwrap());
        let w = doubly_stochastic_witness(&x, &y).unwrap();
        let wy = w.apply(&y).unwrap();
        for (a, b) in wy.iter().zip(&x) {
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn majorization_is_transitive_and_translation_invariant(seed in any::<u64>(), n in 1usize..=8, t in -5.0..5.0f64) {
        let mut rng = trial_rng(seed, 6);
        let z = random_symmetric(&mut rng, n).diag();
        let y = random_doubly_stochastic(&mut rng, n).unwrap().apply(&z).unwrap();
        let x = random_doubly_stochastic(&mut rng, n).unwrap().apply(&y).unwrap();
        let tol = default_tol(&z);
        prop_assert!(majorizes(&x, &y, tol).unwrap() && majorizes(&y, &z, tol).unwrap());
        prop_assert!(majorizes(&x, &z, tol).unwrap());
        let shift = |v: &[f64]| v.iter().map(|a| a + t).collect::<Vec<_>>();
        prop_assert!(majorizes(&shift(&x), &shift(&z), default_tol(&shift(&z))).unwrap());
        prop_assert!(majorizes(&mean_vector(&z), &x, tol).unwrap());
    }

    #[test]
    fn birkhoff_recomposes(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = trial_rng(seed, 7);
        let d = random_doubly_stochastic(&mut rng, n).unwrap();
        let b = birkhoff_decompose(&d, DEFAULT_BIRKHOFF_TOL).unwrap();
        prop_assert!(b.reconstruct().max_abs_diff(d.matrix()) <= 1e-9);
        prop_assert!(b.len() <= (n - 1) * (n - 1) + 1);
        prop_assert!((b.weights.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
        prop_assert!(b.weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn schur_horn_against_nalgebra(seed in any::<u64>(), n in 1usize..=8) {
        let a = symmetric(seed, n);
        let lambda = eigenvalues_sym(&a);
        let oracle = nalgebra::DMatrix::from_row_slice(n, n, a.matrix().entries()).symmetric_eigen();
        let mut ev: Vec<f64> = oracle.eigenvalues.iter().copied().collect();
        ev.sort_by(|u, v| v.total_cmp(u));
        for (x, y) in lambda.iter().zip(&ev) {
            prop_assert!((x - y).abs() <= 1e-10 * (1.0 + a.max_abs()));
        }
        prop_assert!(majorizes(&a.diag(), &ev, 1e-9 * (1.0 + a.max_abs())).unwrap());
    }

    #[test]
    fn eigenvectors_diagonalize(seed in any::<u64>(), n in 1usize..=8) {
        let a = symmetric(seed, n);
        let e = eigen_sym(&a);
        let back = SymmetricMatrix::from_spectrum(&e.values, &e.vectors).unwrap();
        prop_assert!(back.matrix().max_abs_diff(a.matrix()) <= 1e-12 * (1.0 + a.max_abs()) * n as f64);
    }

    #[test]
    fn characteristic_coefficients_are_principal_minor_sums(seed in any::<u64>(), n in 1usize..=6) {
        let a = symmetric(seed, n);
        let c = char_poly_coefficients(&a);
        prop_assert!(close(c.values[1], a.trace(), 1e-12));
        prop_assert!(close(c.values[n], a.matrix().determinant().unwrap(), 1e-10));
        for k in 1..=n {
            let pk = LpmPolynomial::principal_minor_sum(n, k).unwrap();
            prop_assert!(close(lpm_eval(&pk, &a).unwrap(), c.values[k], 1e-10));
        }
        let orth = random_orthogonal(n, seed);
        let conj = char_poly_coefficients(&a.conjugate(&orth).unwrap());
        for k in 1..=n {
            prop_assert!(close(conj.values[k], c.values[k], 1e-10));
        }
    }

    #[test]
    fn lpm_values_are_sign_flip_invariant(seed in any::<u64>(), n in 1usize..=6, mask in any::<u32>()) {
        let mut rng = trial_rng(seed, 8);
        let a = random_symmetric(&mut rng, n);
        let terms: Vec<(Vec<usize>, f64)> = (0..n).map(|i| ((0..=i).collect(), 1.0 + i as f64)).collect();
        let p = LpmPolynomial::new(n, terms).unwrap();
        let signs: Vec<i8> = (0..n).map(|b| if mask & (1 << b) != 0 { -1 } else { 1 }).collect();
        let d = SignVector::new(signs).unwrap();
        let conj = sign_conjugate(&a, &d).unwrap();
        prop_assert!(close(lpm_eval(&p, &conj).unwrap(), lpm_eval(&p, &a).unwrap(), 1e-10));
        prop_assert_eq!(sign_conjugate(&conj, &d).unwrap(), a);
    }

    #[test]
    fn pinching_composes_along_refinements(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = trial_rng(seed, 9);
        let a = random_symmetric(&mut rng, n);
        let fine = random_partition(&mut rng, n);
        // merge pairs of consecutive blocks into a coarser partition
        let coarse_blocks: Vec<Vec<usize>> = fine.blocks().chunks(2).map(|c| c.concat()).collect();
        let coarse = Partition::new(n, coarse_blocks).unwrap();
        prop_assert!(fine.refines(&coarse));
        let twice = block_pinch(&block_pinch(&a, &coarse).unwrap(), &fine).unwrap();
        prop_assert_eq!(&twice, &block_pinch(&a, &fine).unwrap());
        let idem = block_pinch(&block_pinch(&a, &fine).unwrap(), &fine).unwrap();
        prop_assert_eq!(idem, block_pinch(&a, &fine).unwrap());
    }

    #[test]
    fn determinant_matches_nalgebra(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = trial_rng(seed, 10);
        let noise: Vec<f64> = (0..n * n).map(|_| rand::Rng::random_range(&mut rng, -1.0..1.0)).collect();
        let m = Matrix::from_fn(n, n, |i, j| ((i * 7 + j * 3) as f64).sin() + noise[i * n + j]);
        let ours = m.determinant().unwrap();
        let theirs = nalgebra::DMatrix::from_row_slice(n, n, m.entries()).determinant();
        prop_assert!((ours - theirs).abs() <= 1e-10 * (1.0 + theirs.abs()));
    }
}
