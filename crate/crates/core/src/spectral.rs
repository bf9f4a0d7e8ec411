//! Real symmetric matrices: spectra, characteristic-polynomial coefficients,
//! `Γ_k(n)` membership and the matrix constructions used by the inequality
//! checks.
//!
//! Spectra come from the cyclic Jacobi method with eigenvector accumulation
//! and are always returned in nonincreasing order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::cone::Mode;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{norm_inf, Matrix};
use crate::majorization::{default_tol, majorizes};
use crate::partition::Partition;
use crate::poly::elementary_symmetric_values;

const SYMMETRY_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 80;

/// An `n×n` real symmetric matrix, stored exactly symmetric.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SymmetricMatrix(Matrix);

/// `values[i]` is paired with column `i` of `vectors`; values nonincreasing.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

/// `P_0(A), …, P_n(A)` with `det(tI + A) = Σ t^{n-k} P_k(A)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharPolyCoefficients {
    pub values: Vec<f64>,
}

impl SymmetricMatrix {
    /// Accepts `m` if `‖m − mᵀ‖ ≤ 1e-12 (1 + ‖m‖)` entrywise and stores
    /// `(m + mᵀ)/2`.
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        if m.rows() == 0 {
            return Err(Error::Domain("matrix must be at least 1x1".into()));
        }
        if m.entries().iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        let t = m.transpose();
        let asym = m.max_abs_diff(&t);
        if asym > SYMMETRY_TOL * (1.0 + m.max_abs()) {
            return Err(Error::Domain(format!("matrix is not symmetric (max |a_ij - a_ji| = {asym:e})")));
        }
        Ok(Self(m.add(&t)?.scale(0.5)))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        Self(Matrix::from_diagonal(d))
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    /// `U diag(λ) Uᵀ`.
    pub fn from_spectrum(lambda: &[f64], u: &Matrix) -> Result<Self> {
        check_dim(u.rows(), lambda.len())?;
        let n = lambda.len();
        let m = Matrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| u[(i, k)] * lambda[k] * u[(j, k)]).sum()
        });
        Self::symmetrize(m)
    }

    fn symmetrize(m: Matrix) -> Result<Self> {
        let t = m.transpose();
        Ok(Self(m.add(&t)?.scale(0.5)))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn diag(&self) -> Vec<f64> {
        self.0.diagonal()
    }

    pub fn trace(&self) -> f64 {
        self.diag().iter().sum()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.sub(&other.0)?))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale(s))
    }

    /// `A + s·I`.
    pub fn shift(&self, s: f64) -> Self {
        let mut m = self.0.clone();
        for i in 0..self.n() {
            m[(i, i)] += s;
        }
        Self(m)
    }

    /// `U A Uᵀ`.
    pub fn conjugate(&self, u: &Matrix) -> Result<Self> {
        let m = u.matmul(&self.0)?.matmul(&u.transpose())?;
        Self::symmetrize(m)
    }

    /// Builds `f(i, j)` for `i ≤ j` and mirrors it.
    pub fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.0.to_rows()
    }
}

impl<'de> Deserialize<'de> for SymmetricMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = Matrix::deserialize(d)?;
        SymmetricMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

/// Cyclic Jacobi eigendecomposition `A = V diag(values) Vᵀ`.
pub fn eigen_sym(a: &SymmetricMatrix) -> SymmetricEigen {
    let n = a.n();
    let mut m = a.0.clone();
    let mut v = Matrix::identity(n);
    let frob = m.frobenius();
    let target = 1e-15 * frob;

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].total_cmp(&m[(i, i)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    SymmetricEigen { values, vectors }
}

/// Spectrum of `a`, nonincreasing.
pub fn eigenvalues_sym(a: &SymmetricMatrix) -> Vec<f64> {
    eigen_sym(a).values
}

/// Whether `diag(A) ≺ λ(A)` at the default majorization tolerance.
pub fn schur_horn_check(a: &SymmetricMatrix) -> bool {
    let lambda = eigenvalues_sym(a);
    let tol = default_tol(&lambda).max(1e-9 * (1.0 + a.max_abs()));
    majorizes(&a.diag(), &lambda, tol).unwrap_or(false)
}

/// `P_k(A) = S_k(λ(A))` for `k = 0..=n`, from the spectrum.
pub fn char_poly_coefficients(a: &SymmetricMatrix) -> CharPolyCoefficients {
    CharPolyCoefficients {
        values: elementary_symmetric_values(&eigenvalues_sym(a)),
    }
}

/// Default strictness threshold for `Γ_k(n)` tests.
pub fn default_gamma_eps(lambda: &[f64]) -> f64 {
    1e-10 * (1.0 + norm_inf(lambda))
}

/// Whether `λ` lies in `Γ_k(n)` (open: `S_j > eps`) or its closure
/// (closed: `S_j ≥ -eps`) for `j = 1..=k`.
pub fn gamma_k_contains(lambda: &[f64], k: usize, mode: Mode, eps: f64) -> Result<bool> {
    if k == 0 || k > lambda.len() {
        return Err(Error::Domain(format!(
            "k = {k} must satisfy 1 <= k <= n = {}",
            lambda.len()
        )));
    }
    let s = elementary_symmetric_values(lambda);
    Ok(s[1..=k].iter().all(|&v| match mode {
        Mode::Open => v > eps,
        Mode::Closed => v >= -eps,
    }))
}

/// `A` is `k`-positive iff `S_j(λ(A)) > eps` for `j = 1..=k`.
pub fn k_positive(a: &SymmetricMatrix, k: usize, eps: f64) -> Result<bool> {
    gamma_k_contains(&eigenvalues_sym(a), k, Mode::Open, eps)
}

/// Haar-distributed orthogonal matrix from a seeded Gaussian matrix.
pub fn random_orthogonal(n: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_orthogonal_with(&mut rng, n)
}

/// Gram–Schmidt (two passes) on a Gaussian matrix. Positive `R` diagonal
/// makes the resulting `Q` Haar distributed.
pub fn random_orthogonal_with<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.sample(StandardNormal)).collect())
        .collect();
    for j in 0..n {
        for _ in 0..2 {
            for i in 0..j {
                let dot: f64 = cols[i].iter().zip(&cols[j]).map(|(a, b)| a * b).sum();
                let (done, rest) = cols.split_at_mut(j);
                for (x, q) in rest[0].iter_mut().zip(&done[i]) {
                    *x -= dot * q;
                }
            }
        }
        let norm = cols[j].iter().map(|v| v * v).sum::<f64>().sqrt();
        for x in &mut cols[j] {
            *x /= norm;
        }
    }
    Matrix::from_fn(n, n, |i, j| cols[j][i])
}

/// `(M + Mᵀ) / 2`.
pub fn symmetric_part(m: &Matrix) -> Result<SymmetricMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    SymmetricMatrix::symmetrize(m.clone())
}

/// Principal submatrices `A_{S_ℓ}` for the blocks of `partition`, in block
/// order.
pub fn block_extract(a: &SymmetricMatrix, partition: &Partition) -> Result<Vec<SymmetricMatrix>> {
    check_dim(a.n(), partition.n())?;
    Ok(partition
        .blocks()
        .iter()
        .map(|b| principal_submatrix(a, b))
        .collect())
}

pub(crate) fn principal_submatrix(a: &SymmetricMatrix, idx: &[usize]) -> SymmetricMatrix {
    SymmetricMatrix(Matrix::from_fn(idx.len(), idx.len(), |i, j| a.get(idx[i], idx[j])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(rows: &[&[f64]]) -> SymmetricMatrix {
        SymmetricMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn eigen_examples() {
        assert!(close(&eigenvalues_sym(&SymmetricMatrix::from_diagonal(&[1.0, 3.0])), &[3.0, 1.0], 0.0));
        assert!(close(&eigenvalues_sym(&sym(&[&[2.0, 1.0], &[1.0, 2.0]])), &[3.0, 1.0], 1e-14));
    }

    #[test]
    fn eigen_reconstruction_and_residual() {
        let a = sym(&[&[4.0, 1.0, -2.0], &[1.0, 0.0, 3.0], &[-2.0, 3.0, -1.0]]);
        let e = eigen_sym(&a);
        let back = SymmetricMatrix::from_spectrum(&e.values, &e.vectors).unwrap();
        assert!(back.matrix().max_abs_diff(a.matrix()) < 1e-13);
        assert!((e.values.iter().sum::<f64>() - a.trace()).abs() < 1e-12);
    }

    #[test]
    fn rejects_asymmetric_and_nonsquare() {
        assert!(SymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).is_err());
        assert!(matches!(
            SymmetricMatrix::from_rows(&[vec![1.0, 2.0]]),
            Err(Error::Dimension { .. })
        ));
        // within tolerance gets symmetrized
        let a = SymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0 + 1e-14, 1.0]]).unwrap();
        assert_eq!(a.get(0, 1), a.get(1, 0));
    }

    #[test]
    fn schur_horn_examples() {
        assert!(schur_horn_check(&sym(&[&[2.0, 1.0], &[1.0, 2.0]])));
        assert!(schur_horn_check(&SymmetricMatrix::from_diagonal(&[3.0, -1.0, 2.0])));
    }

    #[test]
    fn char_poly_examples() {
        let c = char_poly_coefficients(&SymmetricMatrix::identity(3));
        assert!(close(&c.values, &[1.0, 3.0, 3.0, 1.0], 1e-14));
        let c = char_poly_coefficients(&sym(&[&[2.0, 1.0], &[1.0, 2.0]]));
        assert!(close(&c.values, &[1.0, 4.0, 3.0], 1e-13));
        let c = char_poly_coefficients(&SymmetricMatrix::from_diagonal(&[0.0; 4]));
        assert_eq!(c.values, vec![1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn k_positive_examples() {
        let pd = sym(&[&[2.0, 1.0], &[1.0, 2.0]]);
        assert!(k_positive(&pd, 1, 1e-10).unwrap() && k_positive(&pd, 2, 1e-10).unwrap());
        let lam = [2.0, 2.0, -1.0];
        let a = SymmetricMatrix::from_diagonal(&lam);
        let eps = default_gamma_eps(&lam);
        assert!(k_positive(&a, 1, eps).unwrap());
        assert!(!k_positive(&a, 2, eps).unwrap());
        assert!(gamma_k_contains(&lam, 2, Mode::Closed, eps).unwrap());
        let neg = SymmetricMatrix::identity(3).scale(-1.0);
        assert!(!k_positive(&neg, 1, 1e-10).unwrap());
        assert!(k_positive(&pd, 3, 1e-10).is_err());
        assert!(k_positive(&pd, 0, 1e-10).is_err());
    }

    #[test]
    fn orthogonal_examples() {
        let u = random_orthogonal(1, 3);
        assert!((u[(0, 0)].abs() - 1.0).abs() < 1e-15);
        for seed in 0..100 {
            let u = random_orthogonal(8, seed);
            let g = u.transpose().matmul(&u).unwrap();
            assert!(g.max_abs_diff(&Matrix::identity(8)) <= 1e-12, "seed {seed}");
            let d = u.determinant().unwrap();
            assert!((d.abs() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn symmetric_part_examples() {
        let m = Matrix::from_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(symmetric_part(&m).unwrap().to_rows(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        let skew = Matrix::from_rows(&[vec![0.0, 3.0], vec![-3.0, 0.0]]).unwrap();
        assert_eq!(symmetric_part(&skew).unwrap().max_abs(), 0.0);
        let s = sym(&[&[1.0, 5.0], &[5.0, -2.0]]);
        assert_eq!(&symmetric_part(s.matrix()).unwrap(), &s);
        assert!(symmetric_part(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn block_extract_examples() {
        let a = sym(&[&[4.0, 1.0, 0.5, 0.2], &[1.0, 3.0, 0.1, 0.3], &[0.5, 0.1, 2.0, 0.7], &[0.2, 0.3, 0.7, 1.0]]);
        let singles = block_extract(&a, &Partition::singletons(4)).unwrap();
        assert_eq!(singles.iter().map(|b| b.get(0, 0)).collect::<Vec<_>>(), a.diag());
        let whole = block_extract(&a, &Partition::whole(4)).unwrap();
        assert_eq!(whole, vec![a.clone()]);
        let p = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let blocks = block_extract(&a, &p).unwrap();
        let mut concat: Vec<f64> = blocks.iter().flat_map(eigenvalues_sym).collect();
        concat.sort_by(|x, y| y.total_cmp(x));
        let mut pinched = a.matrix().clone();
        for (i, j) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            pinched[(i, j)] = 0.0;
            pinched[(j, i)] = 0.0;
        }
        let direct = eigenvalues_sym(&SymmetricMatrix::new(pinched).unwrap());
        assert!(close(&concat, &direct, 1e-9));
        assert!(block_extract(&a, &Partition::singletons(3)).is_err());
    }
}
