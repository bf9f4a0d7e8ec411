//! Real roots of univariate polynomials that are expected to be real-rooted.
//!
//! All complex roots are found by Aberth–Ehrlich simultaneous iteration on a
//! normalized copy of the polynomial (monic, shifted to the root centroid,
//! scaled so every root lies in the disk of radius 2). Approximations whose
//! inclusion disks overlap are merged into clusters, which is how multiple
//! roots are recognized: a `k`-fold root spreads into a ring of radius
//! `O(ε^{1/k})`, but the centroid of the ring is accurate to working
//! precision. Each cluster centroid is then refined by complex Newton steps on
//! the `(m-1)`-th derivative, which has a simple root there, and contributes
//! its real part with multiplicity `m`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::UnivariateRestriction;

/// Imaginary-part tolerance used when certifying real-rootedness.
pub const DEFAULT_TOL_IMAG: f64 = 1e-7;

/// Roots closer than this (relative to `1 + max|root|`) are always merged.
pub const CLUSTER_RADIUS: f64 = 1e-6;

const MAX_ITERATIONS: usize = 600;

/// Real parts of all roots, ascending, with multiplicity by repetition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<f64>,
    pub certified: bool,
    /// Largest imaginary magnitude discarded when reporting real parts.
    pub max_imag_residual: f64,
}

/// Computes every root of `p` and certifies real-rootedness to `tol_imag`.
///
/// The result is certified iff the imaginary part of every root cluster is at
/// most `tol_imag · (1 + max|root|)`. An uncertified result is not an error.
pub fn all_real_roots(p: &UnivariateRestriction, tol_imag: f64) -> Result<RootSet> {
    let c = &p.coefficients;
    if c.len() < 2 {
        return Err(Error::Domain("polynomial degree must be at least 1".into()));
    }
    let lead = p.leading();
    let max = p.max_abs();
    if lead.abs().partial_cmp(&(1e-14 * max)) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::DegenerateLeadingCoefficient { leading: lead, max });
    }
    if c.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite polynomial coefficient".into()));
    }

    let monic: Vec<f64> = c.iter().map(|v| v / lead).collect();
    let zeros = monic.iter().take_while(|&&v| v == 0.0).count();
    let reduced = &monic[zeros..];

    let mut clusters: Vec<Cluster> = Vec::new();
    if zeros > 0 {
        clusters.push(Cluster {
            center: Complex64::new(0.0, 0.0),
            multiplicity: zeros,
            spread: 0.0,
        });
    }
    if reduced.len() > 1 {
        clusters.extend(nonzero_clusters(reduced).into_iter().map(|cl| Cluster {
            center: polish(reduced, cl.center, cl.multiplicity, cl.spread),
            ..cl
        }));
    }

    let max_root = clusters.iter().fold(0.0_f64, |m, cl| m.max(cl.center.norm()));
    let scale = 1.0 + max_root;
    let mut roots = Vec::with_capacity(c.len() - 1);
    let mut max_imag = 0.0_f64;
    for cl in &clusters {
        let imag = cl.center.im.abs();
        max_imag = max_imag.max(imag);
        roots.extend(std::iter::repeat_n(cl.center.re, cl.multiplicity));
    }
    roots.sort_by(f64::total_cmp);
    Ok(RootSet {
        roots,
        certified: max_imag <= tol_imag * scale,
        max_imag_residual: max_imag,
    })
}

/// The certification flag of [`all_real_roots`].
pub fn is_real_rooted(p: &UnivariateRestriction, tol_imag: f64) -> Result<bool> {
    all_real_roots(p, tol_imag).map(|r| r.certified)
}

#[derive(Clone, Copy, Debug)]
struct Cluster {
    center: Complex64,
    multiplicity: usize,
    /// Largest distance of a member approximation from the centroid.
    spread: f64,
}

/// Clusters of roots of a monic polynomial with nonzero constant term.
fn nonzero_clusters(monic: &[f64]) -> Vec<Cluster> {
    let d = monic.len() - 1;
    let shift = -monic[d - 1] / d as f64;
    let shifted = taylor_shift(monic, shift);

    let radius = (0..d).fold(0.0_f64, |m, j| m.max(shifted[j].abs().powf(1.0 / (d - j) as f64)));
    if radius == 0.0 {
        return vec![Cluster {
            center: Complex64::new(shift, 0.0),
            multiplicity: d,
            spread: 0.0,
        }];
    }
    let unit: Vec<f64> = (0..=d)
        .map(|j| shifted[j] / radius.powi((d - j) as i32))
        .collect();

    // inclusion disks are computed against the unshifted polynomial so that
    // rounding in the shift itself widens them
    let z: Vec<Complex64> = aberth(&unit)
        .into_iter()
        .map(|w| Complex64::new(shift, 0.0) + w * radius)
        .collect();
    let merge = CLUSTER_RADIUS * (1.0 + shift.abs() + radius);
    cluster(monic, &z, merge)
        .into_iter()
        .map(|members| {
            let sum: Complex64 = members.iter().map(|&i| z[i]).sum();
            let center = sum / members.len() as f64;
            let spread = members.iter().fold(0.0_f64, |m, &i| m.max((z[i] - center).norm()));
            Cluster {
                center,
                multiplicity: members.len(),
                spread: spread.max(merge),
            }
        })
        .collect()
}

/// Coefficients of `q(s + h)` given those of `q(s)`, ascending.
fn taylor_shift(c: &[f64], h: f64) -> Vec<f64> {
    let mut out = c.to_vec();
    let d = out.len() - 1;
    for i in 0..d {
        for j in (i..d).rev() {
            out[j] += h * out[j + 1];
        }
    }
    out
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    let r = z.norm();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        bound = bound * r + a.abs();
    }
    let err = 4.0 * c.len() as f64 * f64::EPSILON * bound;
    (p, dp, err)
}

fn aberth(c: &[f64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let r0 = c[0].abs().powf(1.0 / d as f64).clamp(0.1, 1.5);
    let mut z: Vec<Complex64> = (0..d)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / d as f64 + 0.4;
            Complex64::from_polar(r0, theta)
        })
        .collect();
    let mut done = vec![false; d];
    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (p, dp, err) = horner(c, z[i]);
            if p.norm() <= err {
                done[i] = true;
                continue;
            }
            all_done = false;
            let newton = if dp.norm() == 0.0 {
                Complex64::new(1e-3, 1e-3)
            } else {
                p / dp
            };
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = z[i] - z[j];
                    if diff.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() == 0.0 { newton } else { newton / denom };
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
        if all_done {
            break;
        }
    }
    z
}

/// Groups approximations whose inclusion disks overlap or which are closer
/// than `merge_radius`.
fn cluster(c: &[f64], z: &[Complex64], merge_radius: f64) -> Vec<Vec<usize>> {
    let d = z.len();
    let radii: Vec<f64> = (0..d)
        .map(|i| {
            let (p, _, err) = horner(c, z[i]);
            let denom = (0..d)
                .filter(|&j| j != i)
                .fold(1.0, |acc, j| acc * (z[i] - z[j]).norm());
            if denom == 0.0 {
                f64::INFINITY
            } else {
                d as f64 * (p.norm() + err) / denom
            }
        })
        .collect();

    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut k = i;
        while parent[k] != r {
            let next = parent[k];
            parent[k] = r;
            k = next;
        }
        r
    }
    for i in 0..d {
        for j in i + 1..d {
            let dist = (z[i] - z[j]).norm();
            let overlap = dist <= radii[i] + radii[j] || dist <= merge_radius;
            if overlap {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index_of = vec![usize::MAX; d];
    for i in 0..d {
        let r = find(&mut parent, i);
        if index_of[r] == usize::MAX {
            index_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index_of[r]].push(i);
    }
    groups
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(j, &v)| j as f64 * v).collect()
}

/// Newton refinement of a cluster of multiplicity `m` via the simple root
/// of the `(m-1)`-th derivative. The result must stay within twice the
/// cluster spread of the start and reduce the residual, otherwise `z0` is
/// returned unchanged.
fn polish(monic: &[f64], z0: Complex64, m: usize, spread: f64) -> Complex64 {
    let mut f = monic.to_vec();
    for _ in 1..m {
        f = derivative(&f);
    }
    let df = derivative(&f);
    let eval = |c: &[f64], z: Complex64| {
        c.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &v| acc * z + v)
    };
    let mut z = z0;
    let mut fz = eval(&f, z).norm();
    for _ in 0..30 {
        let slope = eval(&df, z);
        if slope.norm() == 0.0 || fz == 0.0 {
            break;
        }
        let cand = z - eval(&f, z) / slope;
        let fc = eval(&f, cand).norm();
        if (cand - z0).norm() > 2.0 * spread || fc > fz {
            break;
        }
        let step = (cand - z).norm();
        z = cand;
        fz = fc;
        if step <= 4.0 * f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

#[cfg(test)]
fn eval_real(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * x + v)
}
