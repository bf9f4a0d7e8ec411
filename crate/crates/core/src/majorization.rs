//! Majorization order, doubly stochastic witnesses and Birkhoff–von Neumann
//! decomposition.
//!
//! Permutations are stored as index maps `p` with `(Πy)ᵢ = y_{p[i]}`, i.e.
//! the permutation matrix has a one at `(i, p[i])`.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{norm_inf, Matrix};

const ENTRY_TOL: f64 = 1e-12;
const SUM_TOL: f64 = 1e-10;

/// Entry threshold used by [`birkhoff_decompose`] callers that have no
/// better choice.
pub const DEFAULT_BIRKHOFF_TOL: f64 = 1e-12;

/// Default majorization tolerance `1e-9 · (1 + ‖y‖_∞)`.
pub fn default_tol(y: &[f64]) -> f64 {
    1e-9 * (1.0 + norm_inf(y))
}

/// A nonnegative square matrix with unit row and column sums.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DoublyStochasticMatrix(Matrix);

impl DoublyStochasticMatrix {
    /// Validates entries `≥ −1e-12` and all line sums within `1 ± 1e-10`.
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() || m.rows() == 0 {
            return Err(Error::NotDoublyStochastic(format!(
                "expected a nonempty square matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let n = m.rows();
        if let Some(v) = m.entries().iter().find(|v| v.is_nan() || **v < -ENTRY_TOL) {
            return Err(Error::NotDoublyStochastic(format!("entry {v} is negative")));
        }
        for i in 0..n {
            let r: f64 = m.row(i).iter().sum();
            let c: f64 = (0..n).map(|k| m[(k, i)]).sum();
            if (r - 1.0).abs() > SUM_TOL {
                return Err(Error::NotDoublyStochastic(format!("row {} sums to {r}", i + 1)));
            }
            if (c - 1.0).abs() > SUM_TOL {
                return Err(Error::NotDoublyStochastic(format!("column {} sums to {c}", i + 1)));
            }
        }
        Ok(Self(m))
    }

    /// `Σ wₘ Πₘ`; weights must be nonnegative and sum to one.
    pub fn from_permutations(weights: &[f64], perms: &[Vec<usize>]) -> Result<Self> {
        check_dim(weights.len(), perms.len())?;
        let n = perms
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Domain("need at least one permutation".into()))?;
        let mut m = Matrix::zeros(n, n);
        for (w, p) in weights.iter().zip(perms) {
            crate::poly::validate_permutation(p, n)?;
            for (i, &j) in p.iter().enumerate() {
                m[(i, j)] += w;
            }
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn apply(&self, y: &[f64]) -> Result<Vec<f64>> {
        self.0.mul_vec(y)
    }
}

impl<'de> Deserialize<'de> for DoublyStochasticMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = Matrix::deserialize(d)?;
        DoublyStochasticMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BirkhoffDecomposition {
    pub weights: Vec<f64>,
    pub permutations: Vec<Vec<usize>>,
}

impl BirkhoffDecomposition {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn reconstruct(&self) -> Matrix {
        let n = self.permutations.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(n, n);
        for (w, p) in self.weights.iter().zip(&self.permutations) {
            for (i, &j) in p.iter().enumerate() {
                m[(i, j)] += w;
            }
        }
        m
    }
}

/// Stable nonincreasing argsort.
fn argsort_desc(x: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&i, &j| x[j].total_cmp(&x[i]));
    idx
}

/// Whether `x ≺ y`: descending partial sums of `x` never exceed those of `y`
/// by more than `tol`, and the totals agree within `tol`.
pub fn majorizes(x: &[f64], y: &[f64], tol: f64) -> Result<bool> {
    check_dim(x.len(), y.len())?;
    let xs = crate::linalg::sorted_desc(x);
    let ys = crate::linalg::sorted_desc(y);
    let (mut sx, mut sy) = (0.0, 0.0);
    for i in 0..xs.len() {
        sx += xs[i];
        sy += ys[i];
        if i + 1 < xs.len() && sx > sy + tol {
            return Ok(false);
        }
    }
    Ok((sx - sy).abs() <= tol)
}

/// `(Σ yᵢ / n) · 𝟙`.
pub fn mean_vector(y: &[f64]) -> Vec<f64> {
    let m = y.iter().sum::<f64>() / y.len() as f64;
    vec![m; y.len()]
}

/// A doubly stochastic `D` with `D y = x`, for `x ≺ y`.
///
/// Works on the descending rearrangements: each T-transform
/// `λI + (1−λ)Q` (with `Q` a transposition) moves mass between the largest
/// index where `y` still exceeds `x` and the next index where it falls
/// short, matching one more coordinate each time. At most `n − 1` transforms
/// are needed. The sorted-space product is conjugated back by the two
/// sorting permutations.
pub fn doubly_stochastic_witness(x: &[f64], y: &[f64]) -> Result<DoublyStochasticMatrix> {
    check_dim(x.len(), y.len())?;
    let n = x.len();
    let tol = default_tol(y);
    if !majorizes(x, y, tol)? {
        return Err(Error::Majorization("x is not majorized by y".into()));
    }
    let px = argsort_desc(x);
    let py = argsort_desc(y);
    let xs: Vec<f64> = px.iter().map(|&i| x[i]).collect();
    let mut cur: Vec<f64> = py.iter().map(|&i| y[i]).collect();
    let mut ds = Matrix::identity(n);
    let tiny = 4.0 * f64::EPSILON * (1.0 + norm_inf(y));

    for _ in 0..n {
        let diff: Vec<f64> = cur.iter().zip(&xs).map(|(c, t)| c - t).collect();
        let Some(j) = (0..n).rev().find(|&i| diff[i] > tiny) else { break };
        let Some(k) = (j + 1..n).find(|&i| diff[i] < -tiny) else { break };
        let delta = diff[j].min(-diff[k]);
        let gap = cur[j] - cur[k];
        let lambda = 1.0 - delta / gap;
        for c in 0..n {
            let (rj, rk) = (ds[(j, c)], ds[(k, c)]);
            ds[(j, c)] = lambda * rj + (1.0 - lambda) * rk;
            ds[(k, c)] = (1.0 - lambda) * rj + lambda * rk;
        }
        if diff[j] <= -diff[k] {
            cur[j] = xs[j];
            cur[k] += delta;
        } else {
            cur[k] = xs[k];
            cur[j] -= delta;
        }
    }

    let mut d = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            d[(px[i], py[j])] = ds[(i, j)];
        }
    }
    let dy = d.mul_vec(y)?;
    let err = dy.iter().zip(x).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    if err > 1e-9 * (1.0 + norm_inf(y)) {
        return Err(Error::Majorization(format!("witness residual {err:e} too large")));
    }
    DoublyStochasticMatrix::new(d)
}

/// Kuhn's augmenting-path perfect matching on the bipartite graph with an
/// edge `(i, j)` wherever `allowed(i, j)`. Returns `p` with row `i` matched to
/// column `p[i]`.
fn perfect_matching(n: usize, allowed: &dyn Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    fn augment(
        i: usize,
        n: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        col_owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..n {
            if allowed(i, j) && !seen[j] {
                seen[j] = true;
                if col_owner[j].is_none_or(|o| augment(o, n, allowed, seen, col_owner)) {
                    col_owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut col_owner = vec![None; n];
    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, n, allowed, &mut seen, &mut col_owner) {
            return None;
        }
    }
    let mut p = vec![0; n];
    for (j, o) in col_owner.iter().enumerate() {
        p[o.expect("perfect matching covers every column")] = j;
    }
    Some(p)
}

/// Perfect matching maximizing the smallest matched entry among entries
/// `> tol`.
fn bottleneck_matching(r: &Matrix, tol: f64) -> Option<Vec<usize>> {
    let n = r.rows();
    let mut levels: Vec<f64> = r.entries().iter().copied().filter(|&v| v > tol).collect();
    levels.sort_by(|a, b| b.total_cmp(a));
    levels.dedup();
    // smallest prefix of levels (largest threshold) admitting a matching
    let feasible = |t: f64| perfect_matching(n, &|i, j| r[(i, j)] >= t);
    let last = *levels.last()?;
    let mut best = feasible(last)?;
    let (mut lo, mut hi) = (0usize, levels.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        match feasible(levels[mid]) {
            Some(p) => {
                best = p;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    if lo < levels.len() - 1 {
        if let Some(p) = feasible(levels[lo]) {
            best = p;
        }
    }
    Some(best)
}

/// Greedy Birkhoff peeling with bottleneck matchings.
///
/// Each step subtracts `α Π` where `Π` is a bottleneck perfect matching on
/// the residual support and `α` its smallest matched entry, zeroing at least
/// one entry. The residual support shrinks strictly, so the result has at
/// most `(n−1)² + 1` terms.
pub fn birkhoff_decompose(d: &DoublyStochasticMatrix, tol: f64) -> Result<BirkhoffDecomposition> {
    let n = d.n();
    let mut r = d.0.clone();
    let mut weights = Vec::new();
    let mut permutations = Vec::new();
    for _ in 0..=(n * n) {
        if r.max_abs() <= tol {
            break;
        }
        let p = bottleneck_matching(&r, tol).ok_or_else(|| {
            Error::NotDoublyStochastic("no perfect matching on the residual support".into())
        })?;
        let (argmin, alpha) = p
            .iter()
            .enumerate()
            .map(|(i, &j)| (i, r[(i, j)]))
            .fold((0, f64::INFINITY), |b, c| if c.1 < b.1 { c } else { b });
        for (i, &j) in p.iter().enumerate() {
            r[(i, j)] = if i == argmin { 0.0 } else { r[(i, j)] - alpha };
        }
        weights.push(alpha);
        permutations.push(p);
    }
    if r.max_abs() > tol {
        return Err(Error::NotDoublyStochastic("peeling did not terminate".into()));
    }
    Ok(BirkhoffDecomposition { weights, permutations })
}
