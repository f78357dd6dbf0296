//! Post-Peierls (PP) compatibility of quantum state assignments.
//!
//! A set of states is PP incompatible for a measurement `{E_i}` when every
//! outcome is assigned probability zero by at least one state, i.e. when
//! `sum_i prod_a tr(rho_a E_i) = 0`. For three pure qutrit states and
//! von Neumann measurements (ODOP) there is a closed-form test on the
//! squared overlaps `x1, x2, x3`:
//!
//! ```text
//! x1 + x2 + x3 < 1   and   (x1 + x2 + x3 - 1)^2 >= 4 x1 x2 x3
//! ```
//!
//! with a non-strict second inequality; triples whose second inequality is
//! an equality sit on the edge of incompatibility ("saturated"). The
//! closed form assumes no two states are orthogonal; orthogonal pairs are
//! decided directly (see [`qutrit_triple_criterion`]).

mod search;

pub use search::{witness_search, RestartRecord, WitnessResult, WitnessSearchConfig};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmath::{trace_product, DensityMatrix, Ket, OrthonormalBasis, Povm, C64};

/// Tie tolerance for the saturation test.
pub const SATURATION_TOL: f64 = 1e-9;

/// `N >= 2` density matrices of one dimension.
#[derive(Debug, Clone)]
pub struct StateSet {
    dim: usize,
    states: Vec<DensityMatrix>,
}

impl StateSet {
    pub fn new(states: Vec<DensityMatrix>) -> Result<Self> {
        if states.len() < 2 {
            return Err(Error::invalid(
                "state set",
                format!("{} states; need at least 2", states.len()),
            ));
        }
        let dim = crate::qmath::Operator::dim(&states[0]);
        for s in &states {
            Error::check_dim(dim, crate::qmath::Operator::dim(s))?;
        }
        Ok(StateSet { dim, states })
    }

    pub fn from_kets(kets: &[Ket]) -> Result<Self> {
        Self::new(kets.iter().map(Ket::density).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// `sum_i prod_a tr(rho_a E_i)`. Zero certifies PP incompatibility of the
/// set with respect to `m`.
pub fn pp_functional(states: &StateSet, m: &Povm) -> Result<f64> {
    Error::check_dim(states.dim, m.dim())?;
    let mut total = 0.0;
    for e in m.effects() {
        let mut prod = 1.0;
        for rho in &states.states {
            prod *= trace_product(rho, e)?.max(0.0);
        }
        total += prod;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Compatible,
    Incompatible,
}

/// Decision of the three-state qutrit criterion together with the numbers
/// it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct CompatVerdict {
    pub verdict: Verdict,
    pub saturated: bool,
    /// `[|<a|b>|^2, |<b|c>|^2, |<c|a>|^2]`.
    pub overlaps: [f64; 3],
    /// `x1 + x2 + x3`.
    pub lhs9: f64,
    /// `(x1 + x2 + x3 - 1)^2`.
    pub lhs10: f64,
    /// `4 x1 x2 x3`.
    pub rhs10: f64,
    /// Decided by an orthogonal pair rather than the inequalities.
    pub orthogonal_pair: bool,
    pub witness: Option<OrthonormalBasis>,
}

impl CompatVerdict {
    pub fn is_incompatible(&self) -> bool {
        self.verdict == Verdict::Incompatible
    }

    pub fn label(&self) -> &'static str {
        match (self.verdict, self.saturated) {
            (Verdict::Incompatible, true) => "incompatible (saturated)",
            (Verdict::Incompatible, false) => "incompatible",
            (Verdict::Compatible, _) => "compatible",
        }
    }
}

/// Hermitian-orthogonal complement of two orthonormal qutrit vectors.
fn third_vector(a: &Ket, b: &Ket) -> Result<Ket> {
    let (x, y) = (a.amplitudes(), b.amplitudes());
    let cross: Vec<C64> = (0..3)
        .map(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            (x[j] * y[k] - x[k] * y[j]).conj()
        })
        .collect();
    Ket::normalized(cross)
}

/// Exact PP-ODOP decision for three pure qutrit states.
///
/// Any pair with squared overlap `<= tol` makes the triple incompatible: a
/// basis containing both orthogonal states (completed by a third vector)
/// witnesses it, and that basis is returned. Otherwise the triple is
/// incompatible iff `x1+x2+x3 < 1` and `(x1+x2+x3-1)^2 >= 4 x1 x2 x3 - tol`;
/// it is saturated when additionally `|lhs - rhs| <= tol`.
pub fn qutrit_triple_criterion(a: &Ket, b: &Ket, c3: &Ket, tol: f64) -> Result<CompatVerdict> {
    let kets = [a, b, c3];
    for k in kets {
        Error::check_dim(3, k.dim())?;
    }
    let pairs = [(0usize, 1usize), (1, 2), (2, 0)];
    let mut overlaps = [0.0; 3];
    for (slot, &(i, j)) in pairs.iter().enumerate() {
        let x = kets[i].overlap_sq(kets[j])?;
        if x >= 1.0 - tol {
            return Err(Error::IdenticalStates(i.min(j), i.max(j)));
        }
        overlaps[slot] = x;
    }
    let [x1, x2, x3] = overlaps;
    let lhs9 = x1 + x2 + x3;
    let lhs10 = (lhs9 - 1.0).powi(2);
    let rhs10 = 4.0 * x1 * x2 * x3;

    if let Some(slot) = overlaps.iter().position(|&x| x <= tol) {
        let (i, j) = pairs[slot];
        let third = third_vector(kets[i], kets[j])?;
        let witness = OrthonormalBasis::new(vec![kets[i].clone(), kets[j].clone(), third], 1e-8).ok();
        return Ok(CompatVerdict {
            verdict: Verdict::Incompatible,
            saturated: false,
            overlaps,
            lhs9,
            lhs10,
            rhs10,
            orthogonal_pair: true,
            witness,
        });
    }

    let incompatible = lhs9 < 1.0 && lhs10 >= rhs10 - tol;
    Ok(CompatVerdict {
        verdict: if incompatible {
            Verdict::Incompatible
        } else {
            Verdict::Compatible
        },
        saturated: incompatible && (lhs10 - rhs10).abs() <= tol,
        overlaps,
        lhs9,
        lhs10,
        rhs10,
        orthogonal_pair: false,
        witness: None,
    })
}

/// Pairwise PP decision: two distinct pure states are incompatible iff they
/// are orthogonal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairVerdict {
    pub verdict: Verdict,
    pub overlap_sq: f64,
}

pub fn pairwise_pp_check(a: &Ket, b: &Ket, tol: f64) -> Result<PairVerdict> {
    let x = a.overlap_sq(b)?;
    if x >= 1.0 - tol {
        return Err(Error::IdenticalStates(0, 1));
    }
    Ok(PairVerdict {
        verdict: if x <= tol {
            Verdict::Incompatible
        } else {
            Verdict::Compatible
        },
        overlap_sq: x,
    })
}

/// `4x^3 - 9x^2 + 6x - 1`: the saturation condition for three equal
/// squared overlaps `x`.
pub fn saturation_profile(x: f64) -> f64 {
    ((4.0 * x - 9.0) * x + 6.0) * x - 1.0
}

/// A real root with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub value: f64,
    pub multiplicity: u32,
}

/// Real roots of `a x^3 + b x^2 + c x + d` (`a != 0`), ascending, with
/// multiplicities. Repeated roots are detected at the critical points of
/// the cubic, so a double root is located to full precision instead of
/// through the square root of a vanishing discriminant.
pub fn real_cubic_roots(a: f64, b: f64, c1: f64, d: f64) -> Vec<Root> {
    assert!(a != 0.0, "leading coefficient must be nonzero");
    let p = |x: f64| ((a * x + b) * x + c1) * x + d;
    let scale = a.abs() + b.abs() + c1.abs() + d.abs();
    let is_zero = |x: f64| p(x).abs() <= 1e-14 * scale * (1.0 + x.abs()).powi(3);
    let sum_of_roots = -b / a;

    // p'(x) = 3a x^2 + 2b x + c
    let disc = 4.0 * b * b - 12.0 * a * c1;
    let crit: Vec<f64> = if disc > 0.0 {
        let s = disc.sqrt();
        // Numerically stable quadratic roots.
        let q = -0.5 * (2.0 * b + (2.0 * b).signum() * s);
        let (r1, r2) = if q != 0.0 {
            (q / (3.0 * a), c1 / q)
        } else {
            (s / (6.0 * a), -s / (6.0 * a))
        };
        let mut v = vec![r1, r2];
        v.sort_by(f64::total_cmp);
        v
    } else if disc == 0.0 {
        vec![-b / (3.0 * a)]
    } else {
        Vec::new()
    };

    if crit.len() == 1 && is_zero(crit[0]) {
        return vec![Root {
            value: crit[0],
            multiplicity: 3,
        }];
    }
    for &x in &crit {
        if crit.len() == 2 && is_zero(x) {
            let other = sum_of_roots - 2.0 * x;
            let mut roots = vec![
                Root {
                    value: x,
                    multiplicity: 2,
                },
                Root {
                    value: other,
                    multiplicity: 1,
                },
            ];
            roots.sort_by(|u, v| u.value.total_cmp(&v.value));
            return roots;
        }
    }

    // Simple roots: bisect on each monotone piece that changes sign.
    let bound = 1.0 + [b, c1, d].iter().map(|x| (x / a).abs()).fold(0.0, f64::max);
    let mut knots = vec![-bound];
    knots.extend(crit.iter().copied());
    knots.push(bound);
    let mut roots = Vec::new();
    for w in knots.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (plo, phi) = (p(lo), p(hi));
        if plo == 0.0 {
            if roots.last().is_none_or(|r: &Root| r.value != lo) {
                roots.push(Root { value: lo, multiplicity: 1 });
            }
            continue;
        }
        if plo.signum() == phi.signum() {
            continue;
        }
        let rising = phi > plo;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            let pm = p(mid);
            if pm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if (pm > 0.0) == rising {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let x = if p(lo).abs() <= p(hi).abs() { lo } else { hi };
        roots.push(Root { value: x, multiplicity: 1 });
    }
    roots
}

/// Real roots of the saturation cubic `4x^3 - 9x^2 + 6x - 1`.
pub fn saturation_roots() -> Vec<Root> {
    real_cubic_roots(4.0, -9.0, 6.0, -1.0)
}

/// The three kets `(|1>+|2>)/sqrt 2`, `(|2>+|0>)/sqrt 2`, `(|0>+|1>)/sqrt 2`.
pub fn example_triple_kets() -> [Ket; 3] {
    [
        Ket::from_real(&[0.0, 1.0, 1.0]).expect("nonzero"),
        Ket::from_real(&[1.0, 0.0, 1.0]).expect("nonzero"),
        Ket::from_real(&[1.0, 1.0, 0.0]).expect("nonzero"),
    ]
}

pub fn example_triple_states() -> StateSet {
    StateSet::from_kets(&example_triple_kets()).expect("three qutrit states")
}
