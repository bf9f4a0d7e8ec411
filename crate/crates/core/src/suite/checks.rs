//! Single-input inequality checks.
//!
//! Every inequality `lhs ≥ rhs` is accepted with slack `EPS · scale`, where
//! `scale = 1 + max(|lhs|, |rhs|)`. Checks that rely on a majorization first
//! confirm it with [`majorizes`] and return [`Error::Majorization`] when it
//! fails, so orientation problems never surface as inequality failures.

use serde::{Deserialize, Serialize};

use crate::cone::{cone_member, default_eps, ones, Mode};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{norm_inf, Matrix};
use crate::lpm::{fischer_check, lpm_cone_member, lpm_eval, reynolds_sign_average, FischerReport, LpmPolynomial};
use crate::majorization::{default_tol, majorizes, mean_vector};
use crate::partition::Partition;
use crate::poly::{elementary_symmetric_values, HomogeneousPolynomial};
use crate::spectral::{
    block_extract, default_gamma_eps, eigen_sym, eigenvalues_sym, gamma_k_contains, SymmetricMatrix,
};

pub const EPS: f64 = 1e-8;

/// Gap reported by [`strictness_probe`] must exceed `STRICTNESS_FLOOR · scale`.
pub const STRICTNESS_FLOOR: f64 = 1e-9;

pub fn slack_scale(lhs: f64, rhs: f64) -> f64 {
    1.0 + lhs.abs().max(rhs.abs())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckItem {
    pub check: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `(lhs − rhs) / scale`.
    pub slack: f64,
    pub holds: bool,
    /// The cone-membership conclusion attached to the inequality.
    pub cone_preserved: bool,
}

impl CheckItem {
    pub fn ge(check: &str, lhs: f64, rhs: f64, cone_preserved: bool) -> Self {
        let scale = slack_scale(lhs, rhs);
        Self {
            check: check.to_string(),
            lhs,
            rhs,
            slack: (lhs - rhs) / scale,
            holds: lhs >= rhs - EPS * scale,
            cone_preserved,
        }
    }

    pub fn passed(&self) -> bool {
        self.holds && self.cone_preserved
    }
}

fn closed_member(p: &HomogeneousPolynomial, x: &[f64]) -> Result<bool> {
    Ok(cone_member(p, &ones(p.dim()), x, Mode::Closed, default_eps(x))?.member)
}

fn require_symmetric(p: &HomogeneousPolynomial) -> Result<()> {
    if p.is_symmetric() {
        Ok(())
    } else {
        Err(Error::Symmetry)
    }
}

fn require_in_cone(p: &HomogeneousPolynomial, x: &[f64], what: &str) -> Result<()> {
    if closed_member(p, x)? {
        Ok(())
    } else {
        Err(Error::ConeMembership(format!("{what} is not in the closed cone")))
    }
}

fn require_majorized(x: &[f64], y: &[f64], what: &str) -> Result<()> {
    let tol = default_tol(y).max(default_tol(x));
    if majorizes(x, y, tol)? {
        Ok(())
    } else {
        Err(Error::Majorization(what.to_string()))
    }
}

/// `P(diag A) ≥ P(λ(A))`, with `diag A` in the closed cone.
pub fn verify_main(p: &HomogeneousPolynomial, a: &SymmetricMatrix) -> Result<CheckItem> {
    require_symmetric(p)?;
    check_dim(p.dim(), a.n())?;
    let lambda = eigenvalues_sym(a);
    require_in_cone(p, &lambda, "λ(A)")?;
    let d = a.diag();
    let cone = closed_member(p, &d)?;
    Ok(CheckItem::ge("main", p.evaluate(&d)?, p.evaluate(&lambda)?, cone))
}

/// For `x ≺ y` with `y` in the closed cone: `x` is in the closed cone and
/// `P(x) ≥ P(y)`.
pub fn verify_transfer(p: &HomogeneousPolynomial, x: &[f64], y: &[f64]) -> Result<CheckItem> {
    oriented("transfer", p, x, y, "x is not majorized by y")
}

/// [`verify_transfer`] under its Schur-concavity name.
pub fn verify_schur_concavity(p: &HomogeneousPolynomial, x: &[f64], y: &[f64]) -> Result<CheckItem> {
    oriented("schur_concavity", p, x, y, "x is not majorized by y")
}

fn oriented(check: &str, p: &HomogeneousPolynomial, x: &[f64], y: &[f64], why: &str) -> Result<CheckItem> {
    require_symmetric(p)?;
    check_dim(p.dim(), x.len())?;
    check_dim(p.dim(), y.len())?;
    require_majorized(x, y, why)?;
    require_in_cone(p, y, "the majorizing vector")?;
    let cone = closed_member(p, x)?;
    Ok(CheckItem::ge(check, p.evaluate(x)?, p.evaluate(y)?, cone))
}

fn add_vec(x: &[f64], y: &[f64], sign: f64) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + sign * b).collect()
}

/// `P(λ(A+B)) ≥ P(λ(A)↓ + λ(B)↓)`, from `λ(A+B) ≺ λ(A) + λ(B)`.
pub fn verify_fan_sum(p: &HomogeneousPolynomial, a: &SymmetricMatrix, b: &SymmetricMatrix) -> Result<CheckItem> {
    let x = eigenvalues_sym(&a.add(b)?);
    let y = add_vec(&eigenvalues_sym(a), &eigenvalues_sym(b), 1.0);
    oriented("fan_sum", p, &x, &y, "λ(A+B) is not majorized by λ(A)+λ(B)")
}

/// `P(λ(A)↓ − λ(B)↓) ≥ P(λ(A−B))`, from `λ(A) − λ(B) ≺ λ(A−B)`.
pub fn verify_fan_diff(p: &HomogeneousPolynomial, a: &SymmetricMatrix, b: &SymmetricMatrix) -> Result<CheckItem> {
    let x = add_vec(&eigenvalues_sym(a), &eigenvalues_sym(b), -1.0);
    let y = eigenvalues_sym(&a.sub(b)?);
    oriented("fan_diff", p, &x, &y, "λ(A)−λ(B) is not majorized by λ(A−B)")
}

/// `P(λ(A + vvᵀ)) ≥ P(λ₁(A) + ‖v‖², λ₂(A), …)`.
pub fn verify_rank_one(p: &HomogeneousPolynomial, a: &SymmetricMatrix, v: &[f64]) -> Result<CheckItem> {
    check_dim(a.n(), v.len())?;
    let outer = SymmetricMatrix::new(Matrix::from_fn(v.len(), v.len(), |i, j| v[i] * v[j]))?;
    let x = eigenvalues_sym(&a.add(&outer)?);
    let mut y = eigenvalues_sym(a);
    y[0] += v.iter().map(|t| t * t).sum::<f64>();
    oriented("rank_one", p, &x, &y, "λ(A+vvᵀ) is not majorized by the shifted spectrum")
}

/// For positive semidefinite `A, B` and a symmetric `P` on `ℝ²ⁿ`:
/// `v = (λ(A), λ(B)) ≺ u = (λ(A+B), 0)`, hence `P(v) ≥ P(u)`.
pub fn verify_sum_psd_embed(p: &HomogeneousPolynomial, a: &SymmetricMatrix, b: &SymmetricMatrix) -> Result<CheckItem> {
    check_dim(a.n(), b.n())?;
    check_dim(p.dim(), 2 * a.n())?;
    let (la, lb) = (eigenvalues_sym(a), eigenvalues_sym(b));
    for (name, l) in [("A", &la), ("B", &lb)] {
        if l.iter().any(|&t| t < -1e-12 * (1.0 + norm_inf(l))) {
            return Err(Error::Domain(format!("{name} is not positive semidefinite")));
        }
    }
    let v: Vec<f64> = la.iter().chain(&lb).copied().collect();
    let mut u = eigenvalues_sym(&a.add(b)?);
    u.resize(2 * a.n(), 0.0);
    oriented("sum_psd", p, &v, &u, "(λ(A), λ(B)) is not majorized by (λ(A+B), 0)")
}

/// `P(λ(A_{S₁}), …, λ(A_{S_m})) ≥ P(λ(A))`.
pub fn verify_block_pinch(p: &HomogeneousPolynomial, a: &SymmetricMatrix, partition: &Partition) -> Result<CheckItem> {
    let w: Vec<f64> = block_extract(a, partition)?
        .iter()
        .flat_map(eigenvalues_sym)
        .collect();
    let lambda = eigenvalues_sym(a);
    oriented("block_diag", p, &w, &lambda, "block spectra are not majorized by λ(A)")
}

fn normalized(x: &[f64]) -> Vec<f64> {
    let s = 1.0 + norm_inf(x);
    x.iter().map(|v| v / s).collect()
}

/// `S_k(λ(A)) ≤ S_k(diag A)` for `λ(A)` in the closure of `Γ_k`. Both sides
/// come from the product recurrence of the elementary symmetric values, not
/// from polynomial evaluation.
pub fn verify_le_kpositive(a: &SymmetricMatrix, k: usize) -> Result<CheckItem> {
    let lambda = eigenvalues_sym(a);
    let ln = normalized(&lambda);
    // Γ_k is a cone, so membership is tested on the normalized vector
    if !gamma_k_contains(&ln, k, Mode::Closed, default_gamma_eps(&ln))? {
        return Err(Error::ConeMembership(format!("A is not {k}-positive")));
    }
    let d = a.diag();
    let dn = normalized(&d);
    let cone = gamma_k_contains(&dn, k, Mode::Closed, default_gamma_eps(&dn))?;
    let lhs = elementary_symmetric_values(&d)[k];
    let rhs = elementary_symmetric_values(&lambda)[k];
    Ok(CheckItem::ge("le", lhs, rhs, cone))
}

/// `det A ≤ ∏ aᵢᵢ` for positive semidefinite `A`, with `det` by LU.
pub fn verify_hadamard(a: &SymmetricMatrix) -> Result<CheckItem> {
    let lambda = eigenvalues_sym(a);
    if lambda.iter().any(|&t| t < -1e-12 * (1.0 + norm_inf(&lambda))) {
        return Err(Error::ConeMembership("A is not positive semidefinite".into()));
    }
    let d = a.diag();
    let cone = d.iter().all(|&t| t >= -1e-12 * (1.0 + norm_inf(&d)));
    Ok(CheckItem::ge("hadamard", d.iter().product(), a.matrix().determinant()?, cone))
}

/// One instance of `P(λ(A)) ≤ P(diag(UAUᵀ)) ≤ P((tr A / n) 𝟙)`, plus the
/// equality `P(diag(VᵀAV)) = P(λ(A))` for the Jacobi eigenvectors `V`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinmaxItem {
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    /// Smaller of the two normalized margins.
    pub slack: f64,
    pub holds: bool,
    pub cone_preserved: bool,
    /// `|P(diag(VᵀAV)) − P(λ(A))| / scale`.
    pub equality_gap: f64,
    pub equality_holds: bool,
}

impl MinmaxItem {
    pub fn passed(&self) -> bool {
        self.holds && self.cone_preserved && self.equality_holds
    }
}

pub fn minmax_item(p: &HomogeneousPolynomial, a: &SymmetricMatrix, u: &Matrix) -> Result<MinmaxItem> {
    require_symmetric(p)?;
    check_dim(p.dim(), a.n())?;
    let eig = eigen_sym(a);
    require_in_cone(p, &eig.values, "λ(A)")?;
    let d = a.conjugate(u)?.diag();
    let lower = p.evaluate(&eig.values)?;
    let middle = p.evaluate(&d)?;
    let upper = p.evaluate(&mean_vector(&d))?;
    let left = CheckItem::ge("", middle, lower, true);
    let right = CheckItem::ge("", upper, middle, true);

    let diagonalized = a.conjugate(&eig.vectors.transpose())?.diag();
    let attained = p.evaluate(&diagonalized)?;
    let equality_gap = (attained - lower).abs() / slack_scale(attained, lower);
    Ok(MinmaxItem {
        lower,
        middle,
        upper,
        slack: left.slack.min(right.slack),
        holds: left.holds && right.holds,
        cone_preserved: closed_member(p, &d)?,
        equality_gap,
        equality_holds: equality_gap <= EPS,
    })
}

/// Runs [`minmax_item`] for one `A` against `trials` Haar-random `U`.
pub fn verify_minmax(
    p: &HomogeneousPolynomial,
    a: &SymmetricMatrix,
    trials: usize,
    seed: u64,
) -> Result<super::VerificationReport> {
    // surface precondition errors before sampling
    minmax_item(p, a, &Matrix::identity(a.n()))?;
    Ok(super::run_trials("minmax", trials, seed, |rng, _| {
        let u = crate::spectral::random_orthogonal_with(rng, a.n());
        super::TrialOutcome::from_minmax(minmax_item(p, a, &u), || {
            serde_json::json!({ "A": a.to_rows(), "U": u.to_rows() })
        })
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetrizationItem {
    pub item: CheckItem,
    pub fischer: FischerReport,
    /// Pass/fail of the group average and of the pinching agree.
    pub agrees_with_fischer: bool,
}

/// `𝒫(Rey(A)) ≥ 𝒫(A)` for the blockwise sign group, with `Rey(A)` in the
/// closed cone, cross-checked against [`fischer_check`].
pub fn verify_symmetrization(p: &LpmPolynomial, a: &SymmetricMatrix, partition: &Partition) -> Result<SymmetrizationItem> {
    check_dim(p.n(), a.n())?;
    let member_eps = EPS * (1.0 + a.max_abs());
    if !lpm_cone_member(p, a, Mode::Closed, member_eps)?.member {
        return Err(Error::ConeMembership("A is not in the closed hyperbolicity cone".into()));
    }
    let averaged = reynolds_sign_average(a, partition)?;
    let cone = lpm_cone_member(p, &averaged, Mode::Closed, member_eps)?.member;
    let item = CheckItem::ge("symmetrization", lpm_eval(p, &averaged)?, lpm_eval(p, a)?, cone);
    let fischer = fischer_check(p, a, partition, EPS)?;
    let agrees_with_fischer = fischer.inequality_holds == item.holds && fischer.cone_preserved == item.cone_preserved;
    Ok(SymmetrizationItem { item, fischer, agrees_with_fischer })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Strictness {
    pub strict: bool,
    pub gap: f64,
}

/// Whether `P(x) − P(y)` exceeds `STRICTNESS_FLOOR · scale` for `x ≺ y`
/// that are not rearrangements of each other. Informational only.
pub fn strictness_probe(p: &HomogeneousPolynomial, x: &[f64], y: &[f64]) -> Result<Strictness> {
    require_symmetric(p)?;
    check_dim(p.dim(), x.len())?;
    check_dim(p.dim(), y.len())?;
    require_majorized(x, y, "x is not majorized by y")?;
    require_in_cone(p, y, "y")?;
    let tol = default_tol(y);
    let xs = crate::linalg::sorted_desc(x);
    let ys = crate::linalg::sorted_desc(y);
    if xs.iter().zip(&ys).all(|(a, b)| (a - b).abs() <= tol) {
        return Err(Error::Domain("x is a rearrangement of y".into()));
    }
    let (px, py) = (p.evaluate(x)?, p.evaluate(y)?);
    let gap = px - py;
    Ok(Strictness {
        strict: gap > STRICTNESS_FLOOR * slack_scale(px, py),
        gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, k: usize) -> HomogeneousPolynomial {
        HomogeneousPolynomial::elementary_symmetric(n, k).unwrap()
    }

    fn two_by_two() -> SymmetricMatrix {
        SymmetricMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap()
    }

    #[test]
    fn worked_example() {
        let item = verify_main(&s(2, 2), &two_by_two()).unwrap();
        assert!(item.passed());
        assert!((item.lhs - 4.0).abs() < 1e-12 && (item.rhs - 3.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_matrices_give_equality() {
        let a = SymmetricMatrix::from_diagonal(&[3.0, 1.0, 2.0]);
        let item = verify_main(&s(3, 2), &a).unwrap();
        assert!(item.passed());
        assert!(item.slack.abs() < 1e-14);
        let le = verify_le_kpositive(&a, 2).unwrap();
        assert!(le.passed() && le.slack.abs() < 1e-14);
    }

    #[test]
    fn preconditions() {
        let asym = HomogeneousPolynomial::new(2, [(vec![2, 0], 1.0), (vec![1, 1], 1.0)]).unwrap();
        assert!(matches!(verify_main(&asym, &two_by_two()), Err(Error::Symmetry)));
        let outside = SymmetricMatrix::from_diagonal(&[1.0, -2.0]);
        assert!(matches!(verify_main(&s(2, 2), &outside), Err(Error::ConeMembership(_))));
        assert!(matches!(
            verify_transfer(&s(2, 2), &[2.0, 0.0], &[1.0, 1.0]),
            Err(Error::Majorization(_))
        ));
    }

    #[test]
    fn fan_examples() {
        let a = SymmetricMatrix::from_diagonal(&[1.0, 0.0]);
        let b = SymmetricMatrix::from_diagonal(&[0.0, 1.0]);
        let item = verify_fan_sum(&s(2, 1), &a, &b).unwrap();
        assert!(item.passed());
        let zero = SymmetricMatrix::from_diagonal(&[0.0, 0.0]);
        let c = SymmetricMatrix::from_diagonal(&[2.0, 1.0]);
        for item in [verify_fan_sum(&s(2, 2), &c, &zero).unwrap(), verify_fan_diff(&s(2, 2), &c, &zero).unwrap()] {
            assert!(item.passed() && item.slack.abs() < 1e-14);
        }
    }

    #[test]
    fn sum_psd_orientation() {
        let id = SymmetricMatrix::identity(2);
        let item = verify_sum_psd_embed(&s(4, 2), &id, &id).unwrap();
        assert!(item.passed());
        assert!((item.lhs - 6.0).abs() < 1e-12 && (item.rhs - 4.0).abs() < 1e-12);
    }

    #[test]
    fn block_pinch_example() {
        let item = verify_block_pinch(&s(2, 2), &two_by_two(), &Partition::singletons(2)).unwrap();
        assert!(item.passed());
        assert!((item.lhs - 4.0).abs() < 1e-12 && (item.rhs - 3.0).abs() < 1e-12);
    }

    #[test]
    fn minmax_examples() {
        let u = crate::spectral::random_orthogonal(2, 3);
        let item = minmax_item(&s(2, 2), &two_by_two(), &u).unwrap();
        assert!(item.passed());
        assert!(item.lower <= item.middle + 1e-12 && item.middle <= item.upper + 1e-12);
        assert!((item.lower - 3.0).abs() < 1e-12 && (item.upper - 4.0).abs() < 1e-12);

        let c = SymmetricMatrix::identity(3).scale(2.0);
        let item = minmax_item(&s(3, 2), &c, &crate::spectral::random_orthogonal(3, 1)).unwrap();
        assert!((item.lower - item.upper).abs() < 1e-12 && (item.middle - item.upper).abs() < 1e-12);
    }

    #[test]
    fn hadamard_and_le() {
        let a = SymmetricMatrix::from_rows(&[vec![2.0, 1.0, 0.5], vec![1.0, 3.0, 0.2], vec![0.5, 0.2, 1.0]]).unwrap();
        let h = verify_hadamard(&a).unwrap();
        assert!(h.passed());
        let le = verify_le_kpositive(&a, 3).unwrap();
        assert!((le.lhs - h.lhs).abs() < 1e-12 && (le.rhs - h.rhs).abs() < 1e-10);
        let trace = verify_le_kpositive(&a, 1).unwrap();
        assert!(trace.slack.abs() < 1e-14);
    }

    #[test]
    fn symmetrization_examples() {
        let det = LpmPolynomial::determinant(2).unwrap();
        let r = verify_symmetrization(&det, &two_by_two(), &Partition::singletons(2)).unwrap();
        assert!(r.item.passed() && r.agrees_with_fischer);
        assert!((r.item.lhs - 4.0).abs() < 1e-12);
        let r = verify_symmetrization(&det, &two_by_two(), &Partition::whole(2)).unwrap();
        assert!(r.item.slack.abs() < 1e-14);
    }

    #[test]
    fn strictness() {
        let p = s(2, 2);
        let r = strictness_probe(&p, &[1.0, 1.0], &[1.5, 0.5]).unwrap();
        assert!(r.strict && (r.gap - 0.25).abs() < 1e-12);
        let linear = strictness_probe(&s(2, 1), &[1.0, 1.0], &[1.5, 0.5]).unwrap();
        assert!(!linear.strict);
        assert!(matches!(strictness_probe(&p, &[1.0, 2.0], &[2.0, 1.0]), Err(Error::Domain(_))));
    }
}
