//! Random inputs for the verification suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::cone::{directional_eigenvalues, ones};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::majorization::DoublyStochasticMatrix;
use crate::partition::Partition;
use crate::poly::HomogeneousPolynomial;
use crate::spectral::{random_orthogonal_with, SymmetricMatrix};

/// Symmetric hyperbolic polynomials on `ℝⁿ` used by the suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `S_k(n)`.
    Elementary { n: usize, k: usize },
    /// `S_1 · S_2` on `ℝⁿ`.
    S1S2 { n: usize },
    /// `S_1²` on `ℝⁿ`.
    S1Squared { n: usize },
}

impl Family {
    pub fn n(&self) -> usize {
        match *self {
            Family::Elementary { n, .. } | Family::S1S2 { n } | Family::S1Squared { n } => n,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Family::Elementary { n, k } => format!("S_{k}(n={n})"),
            Family::S1S2 { n } => format!("S_1*S_2(n={n})"),
            Family::S1Squared { n } => format!("S_1^2(n={n})"),
        }
    }

    pub fn build(&self) -> Result<HomogeneousPolynomial> {
        match *self {
            Family::Elementary { n, k } => HomogeneousPolynomial::elementary_symmetric(n, k),
            Family::S1S2 { n } => HomogeneousPolynomial::elementary_product(n, &[1, 2]),
            Family::S1Squared { n } => HomogeneousPolynomial::elementary_product(n, &[1, 1]),
        }
    }
}

/// One of `S_1, …, S_n`, `S_1·S_2` (for `n ≥ 2`) or `S_1²`, uniformly.
pub fn random_family<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Family {
    let extra = if n >= 2 { 2 } else { 1 };
    let pick = rng.random_range(0..n + extra);
    match pick {
        k if k < n => Family::Elementary { n, k: k + 1 },
        k if k == n => Family::S1Squared { n },
        _ => Family::S1S2 { n },
    }
}

/// A point of the closed cone `Γ(P; 𝟙)`.
///
/// A Gaussian vector `z` is shifted along `𝟙`; since the eigenvalues of
/// `z + s𝟙` are those of `z` plus `s`, a shift of `ρ − λ_min(z)` puts the
/// smallest eigenvalue at `ρ`. Interior samples use `ρ ~ U(0.05, 1)`,
/// boundary samples `ρ = 0`.
pub fn sample_cone_point<R: Rng + ?Sized>(
    p: &HomogeneousPolynomial,
    rng: &mut R,
    boundary: bool,
) -> Result<Vec<f64>> {
    let n = p.dim();
    let z: Vec<f64> = (0..n).map(|_| 2.0 * rng.sample::<f64, _>(StandardNormal)).collect();
    let spectrum = directional_eigenvalues(p, &ones(n), &z)?;
    let rho = if boundary { 0.0 } else { rng.random_range(0.05..1.0) };
    let shift = rho - spectrum.min();
    Ok(z.into_iter().map(|v| v + shift).collect())
}

/// `U diag(λ) Uᵀ` with Haar `U`.
pub fn matrix_with_spectrum<R: Rng + ?Sized>(rng: &mut R, lambda: &[f64]) -> Result<SymmetricMatrix> {
    let u = random_orthogonal_with(rng, lambda.len());
    SymmetricMatrix::from_spectrum(lambda, &u)
}

/// Positive semidefinite with log-normal spectrum; `singular` zeroes one
/// eigenvalue.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, n: usize, singular: bool) -> Result<SymmetricMatrix> {
    let mut lambda: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal).exp()).collect();
    if singular {
        let i = rng.random_range(0..n);
        lambda[i] = 0.0;
    }
    matrix_with_spectrum(rng, &lambda)
}

pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A convex combination of between 1 and `n²` random permutation matrices
/// with exponentially distributed weights.
pub fn random_doubly_stochastic<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<DoublyStochasticMatrix> {
    let m = rng.random_range(1..=n * n);
    let raw: Vec<f64> = (0..m).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let perms: Vec<Vec<usize>> = (0..m).map(|_| random_permutation(rng, n)).collect();
    let mut d = Matrix::zeros(n, n);
    for (w, p) in weights.iter().zip(&perms) {
        for (i, &j) in p.iter().enumerate() {
            d[(i, j)] += w;
        }
    }
    DoublyStochasticMatrix::new(d)
}

/// A uniformly labelled random partition of `0..n` (empty labels dropped).
pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Partition {
    let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &l) in labels.iter().enumerate() {
        blocks[l].push(i);
    }
    blocks.retain(|b| !b.is_empty());
    Partition::new(n, blocks).expect("labels cover 0..n")
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}
