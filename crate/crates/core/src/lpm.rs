//! Linear principal minor polynomials `𝒫(X) = Σ_J c_J det(X_J)` on symmetric
//! matrices, the sign-flip group action, and block pinching.
//!
//! Subsets `J ⊆ {0, …, n-1}` are bitmasks, so `n ≤ 20`.

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::{ConeMembership, Mode, ProbeReport};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{lu_determinant, Matrix};
use crate::partition::Partition;
use crate::poly::UnivariateRestriction;
use crate::rng::trial_rng;
use crate::roots::{all_real_roots, DEFAULT_TOL_IMAG};
use crate::spectral::SymmetricMatrix;

pub const MAX_DIM: usize = 20;

/// Largest number of blocks for which the blockwise sign group is enumerated.
pub const MAX_GROUP_BLOCKS: usize = 20;

/// Default relative tolerance of [`fischer_check`].
pub const DEFAULT_FISCHER_EPS: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct LpmPolynomial {
    n: usize,
    coeffs: BTreeMap<u32, f64>,
    degree: Option<usize>,
}

impl LpmPolynomial {
    /// Builds `Σ c_J det(X_J)` from 0-based index sets. Duplicate sets are
    /// summed and zero coefficients dropped.
    pub fn new<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        if n == 0 || n > MAX_DIM {
            return Err(Error::Domain(format!("n must be in 1..={MAX_DIM}, got {n}")));
        }
        let mut coeffs = BTreeMap::new();
        for (idx, (set, c)) in terms.into_iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::parse(format!("terms[{idx}].c"), "coefficient is not finite"));
            }
            let mut mask = 0u32;
            for i in set {
                if i >= n {
                    return Err(Error::Domain(format!("index {} out of range for n = {n}", i + 1)));
                }
                if mask & (1 << i) != 0 {
                    return Err(Error::Domain(format!("index {} repeated in a subset", i + 1)));
                }
                mask |= 1 << i;
            }
            *coeffs.entry(mask).or_insert(0.0) += c;
        }
        coeffs.retain(|_, c| *c != 0.0);
        if coeffs.is_empty() {
            return Err(Error::Domain("the zero polynomial is not allowed".into()));
        }
        let mut sizes = coeffs.keys().map(|m| m.count_ones() as usize);
        let first = sizes.next().expect("nonempty");
        let degree = sizes.all(|s| s == first).then_some(first);
        Ok(Self { n, coeffs, degree })
    }

    /// `det(X)`.
    pub fn determinant(n: usize) -> Result<Self> {
        Self::new(n, [((0..n).collect(), 1.0)])
    }

    /// `Σ_{|J| = k} det(X_J)`, the `k`-th coefficient of the characteristic
    /// polynomial.
    pub fn principal_minor_sum(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Domain(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
        }
        Self::new(n, crate::poly::k_subsets(n, k).into_iter().map(|s| (s, 1.0)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Some(k)` when every term has `|J| = k`.
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree.is_some()
    }

    /// Terms as (sorted 0-based index set, coefficient).
    pub fn terms(&self) -> Vec<(Vec<usize>, f64)> {
        self.coeffs.iter().map(|(&m, &c)| (mask_indices(m), c)).collect()
    }

    pub fn coefficient(&self, set: &[usize]) -> f64 {
        let mask = set.iter().fold(0u32, |m, &i| m | (1 << i));
        self.coeffs.get(&mask).copied().unwrap_or(0.0)
    }

    pub fn evaluate(&self, a: &SymmetricMatrix) -> Result<f64> {
        lpm_eval(self, a)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let file = LpmFile {
            n: self.n,
            terms: self
                .coeffs
                .iter()
                .map(|(&m, &c)| LpmTerm {
                    j: mask_indices(m).into_iter().map(|i| i + 1).collect(),
                    c,
                })
                .collect(),
        };
        serde_json::to_value(file).expect("lpm polynomial serializes")
    }

    /// Parses `{"n", "terms": [{"J": [1-based indices], "c"}]}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: LpmFile = serde_json::from_str(s).map_err(|e| {
            Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        let mut terms = Vec::with_capacity(file.terms.len());
        for (idx, t) in file.terms.into_iter().enumerate() {
            if t.c == 0.0 {
                return Err(Error::parse(format!("terms[{idx}].c"), "zero coefficients are not allowed"));
            }
            let set = t
                .j
                .iter()
                .map(|&i| {
                    if i == 0 || i > file.n {
                        Err(Error::parse(
                            format!("terms[{idx}].J"),
                            format!("index {i} outside 1..={}", file.n),
                        ))
                    } else {
                        Ok(i - 1)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            terms.push((set, t.c));
        }
        Self::new(file.n, terms)
    }

    fn require_homogeneous(&self) -> Result<usize> {
        self.degree.ok_or(Error::Inhomogeneous)
    }

    fn require_direction(&self) -> Result<()> {
        let at_identity = lpm_eval(self, &SymmetricMatrix::identity(self.n))?;
        if at_identity > 0.0 {
            Ok(())
        } else {
            Err(Error::NotHyperbolicDirection { value: at_identity })
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LpmFile {
    n: usize,
    terms: Vec<LpmTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LpmTerm {
    #[serde(rename = "J")]
    j: Vec<usize>,
    c: f64,
}

fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

fn minor_by_mask(a: &SymmetricMatrix, mask: u32) -> f64 {
    let idx = mask_indices(mask);
    let k = idx.len();
    if k == 0 {
        return 1.0;
    }
    let mut data = Vec::with_capacity(k * k);
    for &i in &idx {
        for &j in &idx {
            data.push(a.get(i, j));
        }
    }
    lu_determinant(data, k)
}

/// `det(A_J)` for a 0-based index set, with `det(A_∅) = 1`.
pub fn principal_minor(a: &SymmetricMatrix, set: &[usize]) -> Result<f64> {
    let mut mask = 0u32;
    for &i in set {
        if i >= a.n() || i >= MAX_DIM {
            return Err(Error::Domain(format!("index {} out of range for n = {}", i + 1, a.n())));
        }
        if mask & (1 << i) != 0 {
            return Err(Error::Domain(format!("index {} repeated", i + 1)));
        }
        mask |= 1 << i;
    }
    Ok(minor_by_mask(a, mask))
}

pub fn lpm_eval(p: &LpmPolynomial, a: &SymmetricMatrix) -> Result<f64> {
    check_dim(p.n, a.n())?;
    Ok(p.coeffs.iter().map(|(&m, &c)| c * minor_by_mask(a, m)).sum())
}

/// Diagonal `±1` signs, optionally constant on the blocks of a partition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignVector {
    signs: Vec<i8>,
    blockwise: Option<Partition>,
}

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::Domain(format!("sign {s} is not ±1")));
        }
        Ok(Self { signs, blockwise: None })
    }

    /// Sign `block_signs[b]` on every index of block `b`.
    pub fn blockwise(partition: &Partition, block_signs: &[i8]) -> Result<Self> {
        check_dim(partition.num_blocks(), block_signs.len())?;
        let owner = partition.block_of();
        let mut v = Self::new(owner.iter().map(|&b| block_signs[b]).collect())?;
        v.blockwise = Some(partition.clone());
        Ok(v)
    }

    /// Signs from the bits of `mask`: bit `b` set means block `b` is flipped.
    pub fn from_block_mask(partition: &Partition, mask: u32) -> Self {
        let signs: Vec<i8> = (0..partition.num_blocks())
            .map(|b| if mask & (1 << b) != 0 { -1 } else { 1 })
            .collect();
        Self::blockwise(partition, &signs).expect("one sign per block")
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn partition(&self) -> Option<&Partition> {
        self.blockwise.as_ref()
    }
}

/// `DAD` with `D = diag(ε)`: entries `εᵢ εⱼ aᵢⱼ`.
pub fn sign_conjugate(a: &SymmetricMatrix, eps: &SignVector) -> Result<SymmetricMatrix> {
    check_dim(a.n(), eps.signs.len())?;
    let s = &eps.signs;
    let m = Matrix::from_fn(a.n(), a.n(), |i, j| f64::from(s[i] * s[j]) * a.get(i, j));
    SymmetricMatrix::new(m)
}

/// Zeroes every entry whose row and column lie in different blocks.
pub fn block_pinch(a: &SymmetricMatrix, partition: &Partition) -> Result<SymmetricMatrix> {
    check_dim(a.n(), partition.n())?;
    let owner = partition.block_of();
    let m = Matrix::from_fn(a.n(), a.n(), |i, j| if owner[i] == owner[j] { a.get(i, j) } else { 0.0 });
    SymmetricMatrix::new(m)
}

/// `2^{-m} Σ_D DAD` over all `2^m` blockwise sign matrices.
pub fn reynolds_sign_average(a: &SymmetricMatrix, partition: &Partition) -> Result<SymmetricMatrix> {
    check_dim(a.n(), partition.n())?;
    let m = partition.num_blocks();
    if m > MAX_GROUP_BLOCKS {
        return Err(Error::GroupTooLarge { blocks: m, max: MAX_GROUP_BLOCKS });
    }
    let n = a.n();
    let total = (0..1u32 << m)
        .into_par_iter()
        .map(|mask| {
            let d = SignVector::from_block_mask(partition, mask);
            sign_conjugate(a, &d).expect("dimensions checked").into_matrix()
        })
        .reduce(|| Matrix::zeros(n, n), |x, y| x.add(&y).expect("same shape"));
    SymmetricMatrix::new(total.scale(1.0 / f64::from(1u32 << m)))
}

/// `t ↦ 𝒫(tI + A)`, ascending coefficients of degree `k`.
///
/// Evaluated at `k + 1` Chebyshev nodes on `[−h, h]` with `h = 1 + ‖A‖`
/// (max-entry norm), interpolated in the Chebyshev basis and converted to
/// monomial coefficients.
pub fn lpm_restriction(p: &LpmPolynomial, a: &SymmetricMatrix) -> Result<UnivariateRestriction> {
    check_dim(p.n, a.n())?;
    let k = p.require_homogeneous()?;
    let h = 1.0 + a.max_abs();
    let nodes = k + 1;
    let samples: Vec<(f64, f64)> = (0..nodes)
        .map(|m| {
            let s = (std::f64::consts::PI * (m as f64 + 0.5) / nodes as f64).cos();
            lpm_eval(p, &a.shift(s * h)).map(|v| (s, v))
        })
        .collect::<Result<_>>()?;

    // Chebyshev coefficients by discrete orthogonality
    let mut cheb = vec![0.0; nodes];
    for (j, cj) in cheb.iter_mut().enumerate() {
        let sum: f64 = samples
            .iter()
            .map(|&(s, v)| v * (j as f64 * s.acos()).cos())
            .sum();
        *cj = 2.0 * sum / nodes as f64;
    }
    cheb[0] /= 2.0;

    // Σ cⱼ Tⱼ(s) in the monomial basis, then s = t / h
    let mut basis: Vec<Vec<f64>> = vec![vec![1.0], vec![0.0, 1.0]];
    while basis.len() < nodes {
        let (prev, cur) = (&basis[basis.len() - 2], &basis[basis.len() - 1]);
        let mut next = vec![0.0; cur.len() + 1];
        for (i, &v) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * v;
        }
        for (i, &v) in prev.iter().enumerate() {
            next[i] -= v;
        }
        basis.push(next);
    }
    let mut q = vec![0.0; nodes];
    for (cj, tj) in cheb.iter().zip(&basis) {
        for (qi, ti) in q.iter_mut().zip(tj) {
            *qi += cj * ti;
        }
    }
    let coefficients = q
        .iter()
        .enumerate()
        .map(|(j, v)| v / h.powi(j as i32))
        .collect();
    Ok(UnivariateRestriction::new(coefficients))
}

/// Identity-direction eigenvalues of `A` for `𝒫`, descending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpmSpectrum {
    pub eigenvalues: Vec<f64>,
    pub certified: bool,
}

impl LpmSpectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

pub fn lpm_eigenvalues(p: &LpmPolynomial, a: &SymmetricMatrix) -> Result<LpmSpectrum> {
    p.require_homogeneous()?;
    p.require_direction()?;
    let roots = all_real_roots(&lpm_restriction(p, a)?, DEFAULT_TOL_IMAG)?;
    let mut eigenvalues: Vec<f64> = roots.roots.iter().map(|t| -t).collect();
    eigenvalues.sort_by(|u, v| v.total_cmp(u));
    Ok(LpmSpectrum { eigenvalues, certified: roots.certified })
}

/// Membership of `A` in the hyperbolicity cone of `𝒫` with respect to `I`.
pub fn lpm_cone_member(p: &LpmPolynomial, a: &SymmetricMatrix, mode: Mode, eps: f64) -> Result<ConeMembership> {
    let spectrum = lpm_eigenvalues(p, a)?;
    Ok(ConeMembership::from_min(spectrum.min(), spectrum.certified, mode, eps))
}

/// Symmetric `X` with standard normal entries on and above the diagonal.
pub fn random_symmetric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SymmetricMatrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v: f64 = rng.sample(StandardNormal);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    SymmetricMatrix::new(m).expect("symmetric by construction")
}

/// Samples random symmetric `X` and checks that `t ↦ 𝒫(tI + X)` is
/// real-rooted. Passing is evidence, not proof.
pub fn psd_stable_probe(p: &LpmPolynomial, trials: usize, seed: u64) -> Result<ProbeReport> {
    p.require_homogeneous()?;
    p.require_direction()?;
    let outcomes: Vec<Result<Option<Vec<f64>>>> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let x = random_symmetric(&mut rng, p.n);
            let roots = all_real_roots(&lpm_restriction(p, &x)?, DEFAULT_TOL_IMAG)?;
            Ok((!roots.certified).then(|| x.matrix().entries().to_vec()))
        })
        .collect();
    let mut failures = Vec::new();
    for o in outcomes {
        if let Some(x) = o? {
            failures.push(x);
        }
    }
    Ok(ProbeReport { passed: failures.is_empty(), trials, failures })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FischerReport {
    pub cone_preserved: bool,
    pub inequality_holds: bool,
    /// `𝒫(π_Π(A))`.
    pub lhs: f64,
    /// `𝒫(A)`.
    pub rhs: f64,
}

/// Checks `𝒫(π_Π(A)) ≥ 𝒫(A)` and that the pinching stays in the closed cone.
///
/// `eps` is relative: membership uses `eps · (1 + max|aᵢⱼ|)` and the
/// inequality `eps · (1 + max(|lhs|, |rhs|))`.
pub fn fischer_check(p: &LpmPolynomial, a: &SymmetricMatrix, partition: &Partition, eps: f64) -> Result<FischerReport> {
    check_dim(p.n, a.n())?;
    let member_eps = eps * (1.0 + a.max_abs());
    if !lpm_cone_member(p, a, Mode::Closed, member_eps)?.member {
        return Err(Error::ConeMembership("A is not in the closed hyperbolicity cone".into()));
    }
    let pinched = block_pinch(a, partition)?;
    let cone_preserved = lpm_cone_member(p, &pinched, Mode::Closed, member_eps)?.member;
    let lhs = lpm_eval(p, &pinched)?;
    let rhs = lpm_eval(p, a)?;
    let scale = 1.0 + lhs.abs().max(rhs.abs());
    Ok(FischerReport {
        cone_preserved,
        inequality_holds: lhs >= rhs - eps * scale,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::char_poly_coefficients;

    fn sym(rows: &[&[f64]]) -> SymmetricMatrix {
        SymmetricMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn minors() {
        let a = sym(&[&[2.0, 1.0], &[1.0, 2.0]]);
        assert_eq!(principal_minor(&a, &[0]).unwrap(), 2.0);
        assert!((principal_minor(&a, &[0, 1]).unwrap() - 3.0).abs() < 1e-14);
        assert_eq!(principal_minor(&a, &[]).unwrap(), 1.0);
        assert!(matches!(principal_minor(&a, &[2]), Err(Error::Domain(_))));
    }

    #[test]
    fn evaluation() {
        let a = sym(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let det = LpmPolynomial::determinant(2).unwrap();
        assert!((lpm_eval(&det, &a).unwrap() - 3.0).abs() < 1e-14);

        let b = sym(&[&[3.0, 1.0, -0.5], &[1.0, -2.0, 0.25], &[-0.5, 0.25, 1.5]]);
        let coeffs = char_poly_coefficients(&b);
        for k in 1..=3 {
            let pk = LpmPolynomial::principal_minor_sum(3, k).unwrap();
            assert!((lpm_eval(&pk, &b).unwrap() - coeffs.values[k]).abs() < 1e-10);
        }

        let p = LpmPolynomial::new(3, [(vec![0, 2], 2.0), (vec![1], -1.0)]).unwrap();
        assert!(!p.is_homogeneous());
        let d = SymmetricMatrix::from_diagonal(&[2.0, 3.0, 5.0]);
        assert!((lpm_eval(&p, &d).unwrap() - (2.0 * 10.0 - 3.0)).abs() < 1e-14);
        assert!(matches!(lpm_eval(&p, &a), Err(Error::Dimension { .. })));
    }

    #[test]
    fn sign_examples() {
        let a = sym(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let plus = SignVector::new(vec![1, 1]).unwrap();
        let minus = SignVector::new(vec![-1, -1]).unwrap();
        assert_eq!(sign_conjugate(&a, &plus).unwrap(), a);
        assert_eq!(sign_conjugate(&a, &minus).unwrap(), a);
        let mixed = SignVector::new(vec![1, -1]).unwrap();
        assert_eq!(sign_conjugate(&a, &mixed).unwrap(), sym(&[&[2.0, -1.0], &[-1.0, 2.0]]));
        assert!(SignVector::new(vec![1, 0]).is_err());
    }

    #[test]
    fn pinching_and_reynolds() {
        let a = sym(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let diag = sym(&[&[2.0, 0.0], &[0.0, 2.0]]);
        assert_eq!(block_pinch(&a, &Partition::singletons(2)).unwrap(), diag);
        assert_eq!(block_pinch(&a, &Partition::whole(2)).unwrap(), a);
        assert_eq!(reynolds_sign_average(&a, &Partition::singletons(2)).unwrap(), diag);
        assert_eq!(reynolds_sign_average(&a, &Partition::whole(2)).unwrap(), a);

        let big = Partition::singletons(21);
        let z = SymmetricMatrix::identity(21);
        assert!(matches!(reynolds_sign_average(&z, &big), Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn restriction_of_determinant_is_the_characteristic_polynomial() {
        let a = sym(&[&[1.0, 2.0], &[2.0, -1.0]]);
        // det(tI + A) = t² + tr(A) t + det(A) = t² − 5
        let r = lpm_restriction(&LpmPolynomial::determinant(2).unwrap(), &a).unwrap();
        let want = [-5.0, 0.0, 1.0];
        for (g, w) in r.coefficients.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{:?}", r.coefficients);
        }
    }

    #[test]
    fn membership_examples() {
        let det = LpmPolynomial::determinant(3).unwrap();
        let pd = sym(&[&[2.0, 1.0, 0.0], &[1.0, 2.0, 0.0], &[0.0, 0.0, 1.0]]);
        assert!(lpm_cone_member(&det, &pd, Mode::Open, 1e-8).unwrap().member);
        let singular = SymmetricMatrix::from_diagonal(&[1.0, 2.0, 0.0]);
        assert!(!lpm_cone_member(&det, &singular, Mode::Open, 1e-8).unwrap().member);
        assert!(lpm_cone_member(&det, &singular, Mode::Closed, 1e-8).unwrap().member);

        let p2 = LpmPolynomial::principal_minor_sum(3, 2).unwrap();
        let boundary = SymmetricMatrix::from_diagonal(&[2.0, 2.0, -1.0]);
        assert!(lpm_cone_member(&p2, &boundary, Mode::Closed, 1e-8).unwrap().member);
        assert!(!lpm_cone_member(&p2, &boundary, Mode::Open, 1e-8).unwrap().member);
        let inside = SymmetricMatrix::from_diagonal(&[2.0, 2.0, -0.9]);
        assert!(lpm_cone_member(&p2, &inside, Mode::Open, 1e-8).unwrap().member);
    }

    #[test]
    fn probes() {
        assert!(psd_stable_probe(&LpmPolynomial::determinant(4).unwrap(), 100, 1).unwrap().passed);
        assert!(psd_stable_probe(&LpmPolynomial::principal_minor_sum(4, 2).unwrap(), 100, 2).unwrap().passed);
        let mixed = LpmPolynomial::new(2, [(vec![0], 1.0), (vec![0, 1], -1.0)]).unwrap();
        assert!(matches!(psd_stable_probe(&mixed, 10, 0), Err(Error::Inhomogeneous)));
        let negative = LpmPolynomial::new(2, [(vec![0], -1.0)]).unwrap();
        assert!(matches!(psd_stable_probe(&negative, 10, 0), Err(Error::NotHyperbolicDirection { .. })));
    }

    #[test]
    fn fischer_examples() {
        let det = LpmPolynomial::determinant(2).unwrap();
        let a = sym(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let r = fischer_check(&det, &a, &Partition::singletons(2), DEFAULT_FISCHER_EPS).unwrap();
        assert!(r.cone_preserved && r.inequality_holds);
        assert!((r.lhs - 4.0).abs() < 1e-14 && (r.rhs - 3.0).abs() < 1e-14);

        let blocky = SymmetricMatrix::from_diagonal(&[1.0, 3.0]);
        let r = fischer_check(&det, &blocky, &Partition::singletons(2), DEFAULT_FISCHER_EPS).unwrap();
        assert_eq!(r.lhs, r.rhs);

        let outside = sym(&[&[1.0, 2.0], &[2.0, 1.0]]);
        assert!(matches!(
            fischer_check(&det, &outside, &Partition::singletons(2), DEFAULT_FISCHER_EPS),
            Err(Error::ConeMembership(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let p = LpmPolynomial::from_json_str(r#"{"n": 3, "terms": [{"J": [1, 2], "c": 1.0}, {"J": [], "c": 2.0}]}"#).unwrap();
        assert!(!p.is_homogeneous());
        assert_eq!(p.coefficient(&[0, 1]), 1.0);
        let back = LpmPolynomial::from_json_str(&p.to_json_value().to_string()).unwrap();
        assert_eq!(back, p);
        let err = LpmPolynomial::from_json_str(r#"{"n": 2, "terms": [{"J": [3], "c": 1.0}]}"#).unwrap_err();
        assert_eq!(err, Error::parse("terms[0].J", "index 3 outside 1..=2"));
    }
}
