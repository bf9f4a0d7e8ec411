//! Homogeneous real polynomials on ℝⁿ stored as sparse monomial maps.
//!
//! A [`HomogeneousPolynomial`] keeps its monomials in a `BTreeMap` keyed by
//! exponent vector, so iteration order is lexicographic and deterministic.
//! Homogeneity is structural: every stored exponent vector sums to the
//! declared degree, and zero coefficients are never stored.
//!
//! The central operation for the rest of the crate is
//! [`HomogeneousPolynomial::restrict_to_line`], which produces the univariate
//! polynomial `t ↦ P(t·a + x)` by exact binomial expansion of each monomial.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

/// A single term `coefficient · ∏ xᵢ^{eᵢ}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub coefficient: f64,
}

/// A nonzero homogeneous polynomial of degree `k ≥ 1` in `n` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPolynomial {
    n: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, f64>,
}

/// Coefficients `c_0, …, c_k` of a univariate polynomial in ascending powers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnivariateRestriction {
    pub coefficients: Vec<f64>,
}

impl UnivariateRestriction {
    pub fn new(coefficients: Vec<f64>) -> Self {
        Self { coefficients }
    }

    /// Formal degree (length minus one), independent of trailing zeros.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn leading(&self) -> f64 {
        self.coefficients.last().copied().unwrap_or(0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coefficients.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl HomogeneousPolynomial {
    /// Builds a polynomial from `(exponents, coefficient)` pairs.
    ///
    /// Repeated exponent vectors are summed and terms that cancel to zero are
    /// dropped. Fails if an exponent vector has the wrong length, if degrees
    /// disagree, if a coefficient is not finite, or if nothing is left.
    pub fn new<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, f64)>,
    {
        if n == 0 {
            return Err(Error::Domain("polynomial dimension must be at least 1".into()));
        }
        let mut map: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        let mut degree = None;
        for (idx, (exps, coef)) in terms.into_iter().enumerate() {
            if exps.len() != n {
                return Err(Error::parse(
                    format!("terms[{idx}].exps"),
                    format!("expected length {n}, found {}", exps.len()),
                ));
            }
            if !coef.is_finite() {
                return Err(Error::parse(
                    format!("terms[{idx}].coef"),
                    "coefficient must be finite",
                ));
            }
            let d: u32 = exps.iter().sum();
            match degree {
                None => degree = Some(d),
                Some(k) if k != d => {
                    return Err(Error::parse(
                        format!("terms[{idx}].exps"),
                        format!("degree {d} does not match degree {k} of earlier terms"),
                    ))
                }
                Some(_) => {}
            }
            *map.entry(exps).or_insert(0.0) += coef;
        }
        map.retain(|_, c| *c != 0.0);
        let degree = degree.unwrap_or(0);
        if map.is_empty() {
            return Err(Error::Domain("the zero polynomial is not allowed".into()));
        }
        if degree == 0 {
            return Err(Error::Domain("degree-0 constants are not allowed".into()));
        }
        Ok(Self { n, degree, terms: map })
    }

    /// The `k`-th elementary symmetric polynomial `S_k` on ℝⁿ.
    pub fn elementary_symmetric(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Domain(format!(
                "elementary symmetric degree k = {k} must satisfy 1 <= k <= n = {n}"
            )));
        }
        let terms = k_subsets(n, k).into_iter().map(|subset| {
            let mut exps = vec![0u32; n];
            for i in subset {
                exps[i] = 1;
            }
            (exps, 1.0)
        });
        Self::new(n, terms)
    }

    /// Product `S_{k₁} · S_{k₂} ⋯` of elementary symmetric polynomials.
    ///
    /// Products of hyperbolic polynomials sharing a direction are hyperbolic,
    /// so this gives symmetric hyperbolic examples beyond the `S_k` family.
    pub fn elementary_product(n: usize, degrees: &[usize]) -> Result<Self> {
        let (first, rest) = degrees
            .split_first()
            .ok_or_else(|| Error::Domain("empty product".into()))?;
        let mut acc = Self::elementary_symmetric(n, *first)?;
        for &k in rest {
            let factor = Self::elementary_symmetric(n, k)?;
            acc = acc.multiply(&factor);
        }
        Ok(acc)
    }

    fn multiply(&self, other: &Self) -> Self {
        let mut map: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *map.entry(e).or_insert(0.0) += ca * cb;
            }
        }
        map.retain(|_, c| *c != 0.0);
        Self {
            n: self.n,
            degree: self.degree + other.degree,
            terms: map,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Monomials in lexicographic order of their exponent vectors.
    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(e, &c)| Monomial {
            exponents: e.clone(),
            coefficient: c,
        })
    }

    pub fn coefficient(&self, exponents: &[u32]) -> f64 {
        self.terms.get(exponents).copied().unwrap_or(0.0)
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.n, x.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(exps, &c)| {
                exps.iter()
                    .zip(x)
                    .filter(|(&e, _)| e > 0)
                    .fold(c, |acc, (&e, &xi)| acc * xi.powi(e as i32))
            })
            .sum())
    }

    /// Exact test for invariance under all coordinate permutations.
    ///
    /// Monomials are grouped by the sorted multiset of their exponents. The
    /// polynomial is symmetric iff every orbit that appears is fully
    /// populated and carries a single coefficient value.
    pub fn is_symmetric(&self) -> bool {
        let mut orbits: BTreeMap<Vec<u32>, (usize, f64, bool)> = BTreeMap::new();
        for (exps, &c) in &self.terms {
            let mut key = exps.clone();
            key.sort_unstable();
            let entry = orbits.entry(key).or_insert((0, c, true));
            entry.0 += 1;
            if entry.1 != c {
                entry.2 = false;
            }
        }
        orbits
            .iter()
            .all(|(key, &(count, _, equal))| equal && count as u128 == orbit_size(key))
    }

    /// Returns `Q` with `Q(x) = P(σx)`, where `(σx)ᵢ = x_{σ(i)}` and `σ` is
    /// given 0-based.
    pub fn permute(&self, sigma: &[usize]) -> Result<Self> {
        validate_permutation(sigma, self.n)?;
        let terms = self
            .terms
            .iter()
            .map(|(exps, &c)| {
                let mut out = vec![0u32; self.n];
                for (i, &e) in exps.iter().enumerate() {
                    out[sigma[i]] = e;
                }
                (out, c)
            })
            .collect();
        Ok(Self {
            n: self.n,
            degree: self.degree,
            terms,
        })
    }

    /// Coefficients of `t ↦ P(t·a + x)`, ascending in `t`.
    ///
    /// When `‖x‖_∞ > 1` the expansion is carried out on `x / ‖x‖_∞` and the
    /// coefficients are rescaled afterwards, which keeps intermediate powers
    /// bounded for higher degrees.
    pub fn restrict_to_line(&self, a: &[f64], x: &[f64]) -> Result<UnivariateRestriction> {
        check_dim(self.n, a.len())?;
        check_dim(self.n, x.len())?;
        let k = self.degree as usize;
        let scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let (xs, s) = if scale > 1.0 {
            (x.iter().map(|v| v / scale).collect::<Vec<_>>(), scale)
        } else {
            (x.to_vec(), 1.0)
        };

        // powers[i][e] = coefficients of (a_i t + x_i)^e
        let max_exp = self.max_exponents();
        let powers: Vec<Vec<Vec<f64>>> = (0..self.n)
            .map(|i| binomial_powers(a[i], xs[i], max_exp[i] as usize))
            .collect();

        let mut out = vec![0.0; k + 1];
        let mut scratch = Vec::with_capacity(k + 1);
        for (exps, &c) in &self.terms {
            scratch.clear();
            scratch.push(c);
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    scratch = convolve(&scratch, &powers[i][e as usize]);
                }
            }
            for (o, v) in out.iter_mut().zip(&scratch) {
                *o += v;
            }
        }
        if s != 1.0 {
            for (j, c) in out.iter_mut().enumerate() {
                *c *= s.powi((k - j) as i32);
            }
        }
        Ok(UnivariateRestriction::new(out))
    }

    fn max_exponents(&self) -> Vec<u32> {
        let mut m = vec![0u32; self.n];
        for exps in self.terms.keys() {
            for (mi, &e) in m.iter_mut().zip(exps) {
                *mi = (*mi).max(e);
            }
        }
        m
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let file = PolynomialFile {
            n: self.n,
            k: self.degree as usize,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| TermRecord {
                    exps: e.clone(),
                    coef: c,
                })
                .collect(),
        };
        serde_json::to_value(file).expect("polynomial serializes")
    }

    /// Parses the `{"n", "k", "terms": [{"exps", "coef"}]}` format.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: PolynomialFile = serde_json::from_str(s).map_err(|e| {
            Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        for (idx, t) in file.terms.iter().enumerate() {
            if t.coef == 0.0 {
                return Err(Error::parse(
                    format!("terms[{idx}].coef"),
                    "zero coefficients are not allowed",
                ));
            }
            let d: u32 = t.exps.iter().sum();
            if t.exps.len() == file.n && d as usize != file.k {
                return Err(Error::parse(
                    format!("terms[{idx}].exps"),
                    format!("degree {d} does not match declared k = {}", file.k),
                ));
            }
        }
        Self::new(file.n, file.terms.into_iter().map(|t| (t.exps, t.coef)))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialFile {
    n: usize,
    k: usize,
    terms: Vec<TermRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRecord {
    exps: Vec<u32>,
    coef: f64,
}

/// Checks that `sigma` is a bijection on `0..n`.
pub fn validate_permutation(sigma: &[usize], n: usize) -> Result<()> {
    if sigma.len() != n {
        return Err(Error::Domain(format!(
            "permutation has length {}, expected {n}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::Domain(format!("{sigma:?} is not a permutation of 0..{n}")));
        }
        seen[s] = true;
    }
    Ok(())
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Number of distinct rearrangements of a sorted multiset.
fn orbit_size(sorted: &[u32]) -> u128 {
    let mut size: u128 = 1;
    let mut placed: u128 = 0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        // multiply by C(placed + run, run)
        for r in 1..=(j - i) as u128 {
            placed += 1;
            size = size * placed / r;
        }
        i = j;
    }
    size
}

fn binomial_powers(a: f64, x: f64, max_exp: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(max_exp + 1);
    out.push(vec![1.0]);
    for e in 1..=max_exp {
        let prev: &Vec<f64> = &out[e - 1];
        let mut next = vec![0.0; e + 1];
        for (j, &p) in prev.iter().enumerate() {
            next[j] += p * x;
            next[j + 1] += p * a;
        }
        out.push(next);
    }
    out
}

pub(crate) fn convolve(p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Values `S_0(x), …, S_n(x)` of every elementary symmetric function, by the
/// product recurrence on `∏ (1 + xᵢ t)`.
pub fn elementary_symmetric_values(x: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; x.len() + 1];
    e[0] = 1.0;
    for (i, &xi) in x.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] += xi * e[j - 1];
        }
    }
    e
}
