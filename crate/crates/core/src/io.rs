//! JSON encodings of kets, matrices and SIC probability vectors.
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major:
//!
//! ```text
//! {"dim": 3, "kets": [[[re, im], ...], ...]}
//! {"dim": 3, "matrices": [[[[re, im], ...], ...], ...]}
//! {"dim": 3, "probs": [p0, ..., p8]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmath::{c, CMatrix, DensityMatrix, Ket, Operator, MAX_DIM};
use crate::sicgen::SicProbVector;

type Pair = [f64; 2];

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kets: Option<Vec<Vec<Pair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrices: Option<Vec<Vec<Vec<Pair>>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProbFile {
    dim: usize,
    probs: Vec<f64>,
}

/// Contents of a state file.
#[derive(Debug, Clone, PartialEq)]
pub enum StateInput {
    Kets(Vec<Ket>),
    Matrices(Vec<DensityMatrix>),
}

impl StateInput {
    pub fn dim(&self) -> usize {
        match self {
            StateInput::Kets(k) => k.first().map_or(0, Ket::dim),
            StateInput::Matrices(m) => m.first().map_or(0, |m| m.dim()),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            StateInput::Kets(k) => k.len(),
            StateInput::Matrices(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn densities(&self) -> Vec<DensityMatrix> {
        match self {
            StateInput::Kets(k) => k.iter().map(Ket::density).collect(),
            StateInput::Matrices(m) => m.clone(),
        }
    }

    pub fn kets(&self) -> Result<&[Ket]> {
        match self {
            StateInput::Kets(k) => Ok(k),
            StateInput::Matrices(_) => Err(Error::invalid("state input", "pure states (kets) required")),
        }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::invalid("JSON", e.to_string())
}

fn check_header(dim: usize) -> Result<()> {
    if !(2..=MAX_DIM).contains(&dim) {
        return Err(Error::invalid("JSON", format!("dim {dim} outside 2..={MAX_DIM}")));
    }
    Ok(())
}

/// Kets must be normalized and matrices must be density matrices, both
/// within `tol`.
pub fn parse_states(text: &str, tol: f64) -> Result<StateInput> {
    let f: StateFile = serde_json::from_str(text).map_err(parse_err)?;
    check_header(f.dim)?;
    match (f.kets, f.matrices) {
        (Some(kets), None) => {
            let mut out = Vec::with_capacity(kets.len());
            for k in kets {
                Error::check_dim(f.dim, k.len())?;
                out.push(Ket::new(k.iter().map(|p| c(p[0], p[1])).collect(), tol)?);
            }
            if out.is_empty() {
                return Err(Error::invalid("JSON", "no kets"));
            }
            Ok(StateInput::Kets(out))
        }
        (None, Some(mats)) => {
            let mut out = Vec::with_capacity(mats.len());
            for m in mats {
                Error::check_dim(f.dim, m.len())?;
                for row in &m {
                    Error::check_dim(f.dim, row.len())?;
                }
                let mat = CMatrix::from_fn(f.dim, f.dim, |i, j| c(m[i][j][0], m[i][j][1]));
                out.push(DensityMatrix::new(mat, tol)?);
            }
            if out.is_empty() {
                return Err(Error::invalid("JSON", "no matrices"));
            }
            Ok(StateInput::Matrices(out))
        }
        _ => Err(Error::invalid("JSON", "exactly one of \"kets\" or \"matrices\" is required")),
    }
}

pub fn parse_probs(text: &str, tol: f64) -> Result<SicProbVector> {
    let f: ProbFile = serde_json::from_str(text).map_err(parse_err)?;
    check_header(f.dim)?;
    SicProbVector::new(f.dim, f.probs, tol)
}

pub fn kets_to_json(kets: &[Ket]) -> serde_json::Value {
    let f = StateFile {
        dim: kets.first().map_or(0, Ket::dim),
        kets: Some(
            kets.iter()
                .map(|k| k.amplitudes().iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        ),
        matrices: None,
    };
    serde_json::to_value(f).expect("plain data serializes")
}

pub fn matrices_to_json(ms: &[&CMatrix]) -> serde_json::Value {
    let f = StateFile {
        dim: ms.first().map_or(0, |m| m.nrows()),
        kets: None,
        matrices: Some(
            ms.iter()
                .map(|m| {
                    (0..m.nrows())
                        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                        .collect()
                })
                .collect(),
        ),
    };
    serde_json::to_value(f).expect("plain data serializes")
}

pub fn probs_to_json(p: &SicProbVector) -> serde_json::Value {
    serde_json::json!({"dim": p.dim(), "probs": p.entries()})
}
