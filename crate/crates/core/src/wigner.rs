//! Discrete Wigner function of a qutrit on the 3x3 grid.
//!
//! Phase-point operators are built from the MUB projectors as
//! `A_j = sum_{lines through j} P_line - I`. Grid point `i` is SIC index `i`,
//! which makes the Wigner function an affine image of the SIC
//! probabilities: `W(i) = 1/3 - 2 p(i)`. Summing `W` along a line gives the
//! probability of the corresponding MUB outcome.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mub::{steiner_s9, MubSet, Triple};
use crate::qmath::{trace_product, CMatrix, DensityMatrix, HermitianOp, Operator};
use crate::sicgen::SicProbVector;

/// Property tolerance for the phase-point operators.
pub const PHASE_POINT_TOL: f64 = 1e-10;
/// Per-striation normalization tolerance for line probabilities.
pub const STRIATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePointResiduals {
    /// max |tr A_j - 1|
    pub trace: f64,
    /// max |tr A_j A_k - 3 delta_jk|
    pub orthogonality: f64,
    /// max || (1/3) sum_{j in line} A_j - P_line ||
    pub lines: f64,
}

impl PhasePointResiduals {
    pub fn max(&self) -> f64 {
        self.trace.max(self.orthogonality).max(self.lines)
    }
}

#[derive(Debug, Clone)]
pub struct PhasePointOperators {
    ops: Vec<HermitianOp>,
    residuals: PhasePointResiduals,
}

impl PhasePointOperators {
    pub fn ops(&self) -> &[HermitianOp] {
        &self.ops
    }

    pub fn op(&self, j: usize) -> Result<&HermitianOp> {
        self.ops.get(j).ok_or(Error::IndexOutOfRange { index: j, len: 9 })
    }

    pub fn residuals(&self) -> PhasePointResiduals {
        self.residuals
    }
}

pub fn phase_point_operators(m: &MubSet) -> Result<PhasePointOperators> {
    let steiner = steiner_s9();
    let mut ops = Vec::with_capacity(9);
    for j in 0..9 {
        let mut a = -CMatrix::identity(3, 3);
        for line in steiner.lines_through(j) {
            let state = m
                .state(line)
                .ok_or_else(|| Error::invalid("MUB set", format!("missing line {line:?}")))?;
            Error::check_dim(3, state.projector.dim())?;
            a += state.projector.matrix();
        }
        ops.push(HermitianOp::new(a, PHASE_POINT_TOL)?);
    }

    let mut res = PhasePointResiduals {
        trace: 0.0,
        orthogonality: 0.0,
        lines: 0.0,
    };
    for (j, a) in ops.iter().enumerate() {
        res.trace = res.trace.max((a.trace() - 1.0).abs());
        for (k, b) in ops.iter().enumerate() {
            let want = if j == k { 3.0 } else { 0.0 };
            res.orthogonality = res.orthogonality.max((trace_product(a, b)? - want).abs());
        }
    }
    for line in steiner.triples() {
        let avg: CMatrix = line
            .iter()
            .map(|&j| ops[j].matrix().clone())
            .fold(CMatrix::zeros(3, 3), |acc, x| acc + x)
            / crate::qmath::c(3.0, 0.0);
        let p = m.state(line).expect("checked above").projector.matrix();
        res.lines = res.lines.max((avg - p).norm());
    }
    if res.max() > PHASE_POINT_TOL {
        return Err(Error::validation(
            "phase-point operators",
            format!(
                "trace residual {:e}, orthogonality residual {:e}, line residual {:e}",
                res.trace, res.orthogonality, res.lines
            ),
        ));
    }
    Ok(PhasePointOperators { ops, residuals: res })
}

/// Nine quasi-probabilities indexed by grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WignerFunction {
    values: [f64; 9],
}

impl WignerFunction {
    /// Requires the entries to sum to 1 within `tol`. The `-1/3` floor holds
    /// for quantum states only and is reported by [`Self::floor_violation`].
    pub fn new(values: [f64; 9], tol: f64) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("Wigner function", "non-finite entry"));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::invalid("Wigner function", format!("entries sum to {sum}")));
        }
        Ok(WignerFunction { values })
    }

    pub fn values(&self) -> &[f64; 9] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// How far the smallest entry lies below `-1/3` (0 if it does not).
    pub fn floor_violation(&self) -> f64 {
        (-1.0 / 3.0 - self.min()).max(0.0)
    }

    /// Row `r` holds grid points `3r, 3r+1, 3r+2`.
    pub fn grid(&self) -> [[f64; 3]; 3] {
        let v = &self.values;
        [[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]]
    }
}

/// `W(i) = 1/3 - 2 p(i)`.
pub fn wigner_from_sic_probabilities(p: &SicProbVector) -> Result<WignerFunction> {
    Error::check_dim(3, p.dim())?;
    let mut values = [0.0; 9];
    for (w, x) in values.iter_mut().zip(p.entries()) {
        *w = 1.0 / 3.0 - 2.0 * x;
    }
    WignerFunction::new(values, 1e-9)
}

/// `W(j) = tr(rho A_j) / 3`.
pub fn wigner_of_density(rho: &DensityMatrix, a: &PhasePointOperators) -> Result<WignerFunction> {
    Error::check_dim(3, rho.dim())?;
    let mut values = [0.0; 9];
    for (w, op) in values.iter_mut().zip(a.ops()) {
        *w = trace_product(rho, op)? / 3.0;
    }
    WignerFunction::new(values, 1e-9)
}

/// Probabilities of the twelve MUB outcomes, in striation order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineProbabilities {
    entries: Vec<(Triple, f64)>,
}

impl LineProbabilities {
    /// Accepts any ordering of the twelve lines, each exactly once.
    pub fn new(entries: Vec<(Triple, f64)>) -> Result<Self> {
        let steiner = steiner_s9();
        let mut ordered = Vec::with_capacity(12);
        for line in steiner.triples() {
            let mut hits = entries
                .iter()
                .filter(|(t, _)| steiner.locate(*t) == steiner.locate(line));
            match (hits.next(), hits.next()) {
                (Some(&(_, q)), None) => ordered.push((line, q)),
                _ => {
                    return Err(Error::invalid(
                        "line probabilities",
                        format!("line {line:?} must appear exactly once"),
                    ))
                }
            }
        }
        if entries.len() != 12 {
            return Err(Error::invalid("line probabilities", "expected 12 entries"));
        }
        Ok(LineProbabilities { entries: ordered })
    }

    pub fn entries(&self) -> &[(Triple, f64)] {
        &self.entries
    }

    pub fn get(&self, t: Triple) -> Option<f64> {
        let steiner = steiner_s9();
        let (n, k) = steiner.locate(t)?;
        Some(self.entries[3 * (n - 1) + k].1)
    }

    /// Largest deviation of a striation's total from 1.
    pub fn normalization_residual(&self) -> f64 {
        self.entries
            .chunks(3)
            .map(|s| (s.iter().map(|e| e.1).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// `q_line = sum_{i in line} W(i)`.
pub fn line_marginals(w: &WignerFunction) -> LineProbabilities {
    let entries = steiner_s9()
        .triples()
        .map(|t| (t, t.iter().map(|&i| w.values[i]).sum()))
        .collect();
    LineProbabilities { entries }
}

/// `W(i) = (sum_{lines through i} q_line - 1) / 3`.
pub fn wigner_from_line_probs(q: &LineProbabilities, tol: f64) -> Result<WignerFunction> {
    let residual = q.normalization_residual();
    if residual > tol {
        return Err(Error::invalid(
            "line probabilities",
            format!("striation totals deviate from 1 by {residual:e}"),
        ));
    }
    let mut values = [0.0; 9];
    for (i, w) in values.iter_mut().enumerate() {
        let through: f64 = q
            .entries
            .iter()
            .filter(|(t, _)| t.contains(&i))
            .map(|e| e.1)
            .sum();
        *w = (through - 1.0) / 3.0;
    }
    WignerFunction::new(values, 4.0 * tol + 1e-12)
}

/// Total magnitude of the negative entries.
pub fn negativity(w: &WignerFunction) -> f64 {
    w.values.iter().filter(|&&v| v < 0.0).map(|v| -v).sum()
}

/// `sum_j W(j) A_j`, the operator whose Wigner function is `w`. It is a
/// density matrix only if `w` comes from a quantum state.
pub fn operator_from_wigner(w: &WignerFunction, a: &PhasePointOperators) -> HermitianOp {
    let m = a
        .ops()
        .iter()
        .zip(w.values())
        .fold(CMatrix::zeros(3, 3), |acc, (op, &x)| {
            acc + op.matrix() * crate::qmath::c(x, 0.0)
        });
    HermitianOp::new(m, 1e-9).expect("real combination of Hermitian operators")
}
