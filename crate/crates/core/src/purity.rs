//! Pure-state conditions in the SIC representation.
//!
//! A SIC probability vector `p` represents a pure state iff it satisfies the
//! quadratic condition `sum p(i)^2 = 2/(d(d+1))` and the cubic ("QBic")
//! condition `sum_ijk C_ijk p(i)p(j)p(k) = (d+7)/(d+1)^3`, where
//! `C_ijk = Re tr(Pi_i Pi_j Pi_k)`. For the Hesse SIC the triple products
//! depend only on grid geometry (`-1/8` on lines, `1/16` off lines), and on
//! the quadratic sphere the cubic condition becomes
//! `sum p(i)^3 - 3 sum_{lines} p(i)p(j)p(k) = 0`. Writing `P3 = sum p^3` and
//! `L` for the line sum, the general cubic sum equals
//! `5/32 + (3/8)(P3 - 3L)` there, so the two forms agree with tolerances in
//! the ratio `3/8`.

use rand::Rng;
use rand_distr::Exp1;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mub::{sorted, steiner_s9, Triple};
use crate::qmath::Operator;
use crate::sicgen::{SicProbVector, SicSet};

/// Default tolerance for counting an entry as zero.
pub const ZERO_TOL: f64 = 1e-9;
/// Default tolerance for the purity conditions.
pub const PURITY_TOL: f64 = 1e-10;

/// `C_jkl = Re tr(Pi_j Pi_k Pi_l)` for every ordered index triple.
#[derive(Debug, Clone)]
pub struct TripleProductTable {
    dim: usize,
    n: usize,
    values: Vec<f64>,
}

impl TripleProductTable {
    pub fn new(s: &SicSet) -> Self {
        let n = s.len();
        let mats: Vec<_> = s.projectors().iter().map(|p| p.matrix()).collect();
        let mut values = vec![0.0; n * n * n];
        for j in 0..n {
            for k in 0..n {
                let jk = mats[j] * mats[k];
                for l in 0..n {
                    values[(j * n + k) * n + l] = (&jk * mats[l]).trace().re;
                }
            }
        }
        TripleProductTable {
            dim: s.dim(),
            n,
            values,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, j: usize, k: usize, l: usize) -> Result<f64> {
        for i in [j, k, l] {
            if i >= self.n {
                return Err(Error::IndexOutOfRange { index: i, len: self.n });
            }
        }
        Ok(self.values[(j * self.n + k) * self.n + l])
    }

    /// Largest violation of permutation symmetry, `C_jjj = 1` and
    /// `C_jjk = 1/(d+1)`.
    pub fn invariant_residual(&self) -> f64 {
        let n = self.n;
        let at = |j: usize, k: usize, l: usize| self.values[(j * n + k) * n + l];
        let d = self.dim as f64;
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = at(j, k, l);
                    for p in [at(j, l, k), at(k, j, l), at(k, l, j), at(l, j, k), at(l, k, j)] {
                        worst = worst.max((v - p).abs());
                    }
                    let target = if j == k && k == l {
                        Some(1.0)
                    } else if j == k || k == l || j == l {
                        Some(1.0 / (d + 1.0))
                    } else {
                        None
                    };
                    if let Some(t) = target {
                        worst = worst.max((v - t).abs());
                    }
                }
            }
        }
        worst
    }
}

/// `Re tr(Pi_j Pi_k Pi_l)`.
pub fn triple_product(s: &SicSet, j: usize, k: usize, l: usize) -> Result<f64> {
    let (a, b, c) = (s.projector(j)?, s.projector(k)?, s.projector(l)?);
    Ok((a.matrix() * b.matrix() * c.matrix()).trace().re)
}

/// Whether three distinct grid points lie on a common line of the 3x3 grid.
pub fn collinear_in_grid(j: usize, k: usize, l: usize) -> Result<bool> {
    for i in [j, k, l] {
        if i >= 9 {
            return Err(Error::IndexOutOfRange { index: i, len: 9 });
        }
    }
    if j == k || k == l || j == l {
        return Err(Error::invalid(
            "grid triple",
            format!("({j}, {k}, {l}) has repeated points"),
        ));
    }
    Ok(steiner_s9().contains([j, k, l]))
}

/// Value of a purity functional against its pure-state target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PurityCheck {
    pub passed: bool,
    pub value: f64,
    pub target: f64,
    pub residual: f64,
    pub tol: f64,
}

impl PurityCheck {
    fn new(value: f64, target: f64, tol: f64) -> Self {
        let residual = (value - target).abs();
        PurityCheck {
            passed: residual <= tol,
            value,
            target,
            residual,
            tol,
        }
    }
}

/// `sum p(i)^2 = 2/(d(d+1))`.
pub fn quadratic_purity_check(p: &SicProbVector, tol: f64) -> PurityCheck {
    let d = p.dim() as f64;
    let value: f64 = p.entries().iter().map(|x| x * x).sum();
    PurityCheck::new(value, 2.0 / (d * (d + 1.0)), tol)
}

/// Full `d^6`-term cubic sum `sum_ijk C_ijk p(i)p(j)p(k)` against
/// `(d+7)/(d+1)^3`.
pub fn qbic_check_general(p: &SicProbVector, t: &TripleProductTable, tol: f64) -> Result<PurityCheck> {
    Error::check_dim(t.dim, p.dim())?;
    let e = p.entries();
    let n = t.n;
    if e.len() != n || t.values.len() != n * n * n {
        return Err(Error::invalid("triple product table", "incomplete table"));
    }
    let mut value = 0.0;
    for (j, pj) in e.iter().enumerate() {
        for (k, pk) in e.iter().enumerate() {
            for (l, pl) in e.iter().enumerate() {
                value += t.values[(j * n + k) * n + l] * pj * pk * pl;
            }
        }
    }
    let d = p.dim() as f64;
    Ok(PurityCheck::new(value, (d + 7.0) / (d + 1.0).powi(3), tol))
}

/// `sum p(i)^3 - 3 sum_{lines} p(i)p(j)p(k)` against 0 (Hesse SIC only).
pub fn qbic_check_hesse(p: &SicProbVector, tol: f64) -> Result<PurityCheck> {
    Error::check_dim(3, p.dim())?;
    let e = p.entries();
    let cubes: f64 = e.iter().map(|x| x * x * x).sum();
    let lines: f64 = steiner_s9()
        .triples()
        .map(|[i, j, k]| e[i] * e[j] * e[k])
        .sum();
    Ok(PurityCheck::new(cubes - 3.0 * lines, 0.0, tol))
}

/// Spread indices of a probability vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistributionIndices {
    /// `1 / sum p^2`.
    pub effective_number: f64,
    pub shannon_entropy_nats: f64,
    pub zero_count: usize,
    /// `d(d-1)/2`, the largest zero count of a quantum state.
    pub zero_bound: usize,
    pub zero_bound_violated: bool,
}

impl DistributionIndices {
    pub fn shannon_entropy_bits(&self) -> f64 {
        self.shannon_entropy_nats / std::f64::consts::LN_2
    }
}

pub fn distribution_indices(p: &SicProbVector, zero_tol: f64) -> DistributionIndices {
    let e = p.entries();
    let sq: f64 = e.iter().map(|x| x * x).sum();
    let entropy: f64 = e.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum();
    let zero_count = e.iter().filter(|&&x| x < zero_tol).count();
    let d = p.dim();
    let zero_bound = d * (d - 1) / 2;
    DistributionIndices {
        effective_number: 1.0 / sq,
        shannon_entropy_nats: entropy,
        zero_count,
        zero_bound,
        zero_bound_violated: zero_count > zero_bound,
    }
}

/// A minimal-entropy pure state: zeros on a grid line, `1/6` elsewhere.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinEntropyState {
    pub triple: Triple,
    pub probs: SicProbVector,
    pub quadratic: PurityCheck,
    pub qbic: PurityCheck,
}

/// Screens all `C(9,3) = 84` vectors with three zeros and `1/6` elsewhere
/// through both purity conditions; the survivors are the twelve lines of
/// the grid.
pub fn enumerate_min_entropy_pure_states(tol: f64) -> Vec<MinEntropyState> {
    enumerate_three_zero_candidates(tol)
        .into_iter()
        .filter(|s| s.quadratic.passed && s.qbic.passed)
        .collect()
}

/// All 84 candidates with their check results, lexicographic in the zero triple.
pub fn enumerate_three_zero_candidates(tol: f64) -> Vec<MinEntropyState> {
    let mut out = Vec::with_capacity(84);
    for i in 0..9 {
        for j in i + 1..9 {
            for k in j + 1..9 {
                let probs = SicProbVector::with_zeros(3, &[i, j, k]).expect("indices < 9");
                let quadratic = quadratic_purity_check(&probs, tol);
                let qbic = qbic_check_hesse(&probs, tol).expect("d = 3");
                out.push(MinEntropyState {
                    triple: sorted([i, j, k]),
                    probs,
                    quadratic,
                    qbic,
                });
            }
        }
    }
    out
}

/// Random probability vector of length `d^2` with `sum p^2 = target`.
///
/// Draws a uniform point on the simplex and moves it along the ray from the
/// centroid to the radius where the collision probability equals `target`;
/// draws whose rescaled point leaves the simplex are rejected. Returns
/// `None` if `max_tries` draws are all rejected.
pub fn sample_fixed_collision<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    target: f64,
    max_tries: usize,
) -> Option<SicProbVector> {
    let n = dim * dim;
    let centroid = 1.0 / n as f64;
    if target < centroid {
        return None;
    }
    for _ in 0..max_tries {
        let raw: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let total: f64 = raw.iter().sum();
        let dir: Vec<f64> = raw.iter().map(|x| x / total - centroid).collect();
        let dir_sq: f64 = dir.iter().map(|x| x * x).sum();
        if dir_sq == 0.0 {
            continue;
        }
        // sum (c + t u)^2 = 1/n + t^2 |u|^2 since sum u = 0.
        let t = ((target - centroid) / dir_sq).sqrt();
        let p: Vec<f64> = dir.iter().map(|u| centroid + t * u).collect();
        if p.iter().all(|&x| x >= 0.0) {
            if let Ok(v) = SicProbVector::new(dim, p, 1e-12) {
                return Some(v);
            }
        }
    }
    None
}
