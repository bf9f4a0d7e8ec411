//! Directional eigenvalues, hyperbolicity cone membership and sampled
//! hyperbolicity and concavity probes.
//!
//! For a polynomial `P` with `P(a) > 0`, the `a`-eigenvalues of `x` are the
//! numbers `λᵢ` with `P(t·a + x) = P(a) ∏ (t + λᵢ)`. The point `x` lies in the
//! open cone `Γ(P; a)` when every `λᵢ` is positive.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::norm_inf;
use crate::poly::HomogeneousPolynomial;
use crate::rng::trial_rng;
use crate::roots::{all_real_roots, is_real_rooted, DEFAULT_TOL_IMAG};

/// Slack allowed in [`concavity_probe`].
pub const CONCAVITY_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Open,
    Closed,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(Mode::Open),
            "closed" => Ok(Mode::Closed),
            other => Err(Error::Domain(format!("unknown mode {other:?}; expected open or closed"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectionalSpectrum {
    /// Nonincreasing.
    pub eigenvalues: Vec<f64>,
    pub direction: Vec<f64>,
    pub point: Vec<f64>,
    pub certified: bool,
}

impl DirectionalSpectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::INFINITY)
    }
}

/// Outcome of a membership test.
///
/// `member` additionally requires `certified`: a point whose restriction is
/// not real-rooted has no real spectrum and is never reported as a member.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeMembership {
    pub member: bool,
    pub mode: Mode,
    pub min_eigenvalue: f64,
    pub eps: f64,
    pub certified: bool,
}

impl ConeMembership {
    pub(crate) fn from_min(min_eigenvalue: f64, certified: bool, mode: Mode, eps: f64) -> Self {
        let inside = match mode {
            Mode::Open => min_eigenvalue > eps,
            Mode::Closed => min_eigenvalue >= -eps,
        };
        Self {
            member: certified && inside,
            mode,
            min_eigenvalue,
            eps,
            certified,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub passed: bool,
    pub trials: usize,
    pub failures: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcavityReport {
    pub passed: bool,
    /// Most negative value of `f(θx+(1−θ)y) − θf(x) − (1−θ)f(y)` over the
    /// grid, after normalizing so that `max(f(x), f(y)) = 1`.
    pub worst_gap: f64,
}

/// The all-ones vector.
pub fn ones(n: usize) -> Vec<f64> {
    vec![1.0; n]
}

/// Default membership tolerance `1e-8 · (1 + ‖x‖_∞)`.
pub fn default_eps(x: &[f64]) -> f64 {
    1e-8 * (1.0 + norm_inf(x))
}

fn require_direction(p: &HomogeneousPolynomial, a: &[f64]) -> Result<()> {
    check_dim(p.dim(), a.len())?;
    let pa = p.evaluate(a)?;
    if pa > 0.0 {
        Ok(())
    } else {
        Err(Error::NotHyperbolicDirection { value: pa })
    }
}

pub fn directional_eigenvalues(
    p: &HomogeneousPolynomial,
    a: &[f64],
    x: &[f64],
) -> Result<DirectionalSpectrum> {
    require_direction(p, a)?;
    let restriction = p.restrict_to_line(a, x)?;
    let roots = all_real_roots(&restriction, DEFAULT_TOL_IMAG)?;
    let mut eigenvalues: Vec<f64> = roots.roots.iter().map(|t| -t).collect();
    eigenvalues.sort_by(|u, v| v.total_cmp(u));
    Ok(DirectionalSpectrum {
        eigenvalues,
        direction: a.to_vec(),
        point: x.to_vec(),
        certified: roots.certified,
    })
}

pub fn cone_member(
    p: &HomogeneousPolynomial,
    a: &[f64],
    x: &[f64],
    mode: Mode,
    eps: f64,
) -> Result<ConeMembership> {
    let spectrum = directional_eigenvalues(p, a, x)?;
    Ok(ConeMembership::from_min(spectrum.min(), spectrum.certified, mode, eps))
}

/// [`cone_member`] with `a = 𝟙` and the default tolerance.
pub fn in_cone(p: &HomogeneousPolynomial, x: &[f64], mode: Mode) -> Result<bool> {
    Ok(cone_member(p, &ones(p.dim()), x, mode, default_eps(x))?.member)
}

/// A point of the unit sphere in ℝⁿ.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return g.into_iter().map(|v| v / norm).collect();
        }
    }
}

/// Samples `trials` points of the unit sphere and checks that each line
/// restriction is real-rooted. Passing is evidence, not proof.
pub fn hyperbolicity_probe(
    p: &HomogeneousPolynomial,
    a: &[f64],
    trials: usize,
    seed: u64,
) -> Result<ProbeReport> {
    require_direction(p, a)?;
    let outcomes: Vec<Result<Option<Vec<f64>>>> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let x = random_unit_vector(&mut rng, p.dim());
            let ok = is_real_rooted(&p.restrict_to_line(a, &x)?, DEFAULT_TOL_IMAG)?;
            Ok(if ok { None } else { Some(x) })
        })
        .collect();
    let mut failures = Vec::new();
    for o in outcomes {
        if let Some(x) = o? {
            failures.push(x);
        }
    }
    Ok(ProbeReport {
        passed: failures.is_empty(),
        trials,
        failures,
    })
}

fn kth_root(p: &HomogeneousPolynomial, z: &[f64]) -> Result<f64> {
    let v = p.evaluate(z)?;
    let r = v.abs().powf(1.0 / p.degree() as f64);
    Ok(if v < 0.0 { -r } else { r })
}

/// Checks concavity of `P^{1/k}` along the segment from `y` to `x` on a
/// uniform grid of `grid` points (endpoints included).
pub fn concavity_probe(
    p: &HomogeneousPolynomial,
    a: &[f64],
    x: &[f64],
    y: &[f64],
    grid: usize,
) -> Result<ConcavityReport> {
    for (name, z) in [("x", x), ("y", y)] {
        if !cone_member(p, a, z, Mode::Open, default_eps(z))?.member {
            return Err(Error::ConeMembership(format!("{name} is not in the open cone")));
        }
    }
    if grid < 2 {
        return Err(Error::Domain("grid needs at least 2 points".into()));
    }
    let fx = kth_root(p, x)?;
    let fy = kth_root(p, y)?;
    let norm = fx.max(fy);
    let mut worst = f64::INFINITY;
    for i in 0..grid {
        let theta = i as f64 / (grid - 1) as f64;
        let z: Vec<f64> = x.iter().zip(y).map(|(u, v)| theta * u + (1.0 - theta) * v).collect();
        let gap = (kth_root(p, &z)? - theta * fx - (1.0 - theta) * fy) / norm;
        worst = worst.min(gap);
    }
    Ok(ConcavityReport {
        passed: worst >= -CONCAVITY_SLACK,
        worst_gap: worst,
    })
}
