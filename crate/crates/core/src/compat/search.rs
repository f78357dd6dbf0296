//! Numerical search for a von Neumann measurement that witnesses PP
//! incompatibility.
//!
//! Bases are the columns of `exp(iH)`, with `H` Hermitian and built from
//! `d^2` real parameters (diagonal entries, then real and imaginary parts of
//! the upper triangle). Each restart draws a random `H` and runs a
//! coordinate descent with three-point quadratic probes in a moving chart:
//! after each improving cycle the basis is re-centred, a pattern move
//! extends the cycle's net displacement while it keeps helping, and the
//! step shrinks when the cycle fails or only moved by a fraction of a step.
//! A restart stops on success, when the step underflows `min_step`, when
//! the value stalls over `stall_window` cycles, or at `max_iters`.
//! Restarts are independent
//! and merged by lowest value, ties to the lowest restart index, so the
//! result depends only on the configuration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::StateSet;
use crate::error::{Error, Result};
use crate::qmath::{c, unitary_exp, CMatrix, OrthonormalBasis, C64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessSearchConfig {
    pub restarts: usize,
    /// Maximum coordinate cycles per restart.
    pub max_iters: usize,
    pub seed: u64,
    /// A restart succeeds, and stops, once its value drops below this.
    pub success_threshold: f64,
    pub initial_step: f64,
    pub min_step: f64,
    pub shrink: f64,
    /// A restart stops when its value has dropped by less than a relative
    /// `1e-6` over this many cycles.
    pub stall_window: usize,
}

impl Default for WitnessSearchConfig {
    fn default() -> Self {
        WitnessSearchConfig {
            restarts: 32,
            max_iters: 5000,
            seed: 0,
            success_threshold: 1e-10,
            initial_step: 0.5,
            min_step: 1e-9,
            shrink: 0.5,
            stall_window: 100,
        }
    }
}

impl WitnessSearchConfig {
    fn validate(&self) -> Result<()> {
        let bad = |d: &str| Err(Error::invalid("witness search config", d.to_string()));
        if self.restarts == 0 {
            return bad("restarts must be positive");
        }
        if self.max_iters == 0 {
            return bad("max_iters must be positive");
        }
        if !(self.initial_step > 0.0 && self.min_step > 0.0) {
            return bad("steps must be positive");
        }
        if self.stall_window == 0 {
            return bad("stall_window must be positive");
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return bad("shrink must lie in (0, 1)");
        }
        Ok(())
    }
}

/// Summary of one restart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RestartRecord {
    pub restart: usize,
    pub start_value: f64,
    pub final_value: f64,
    pub cycles: usize,
    pub evaluations: usize,
    pub final_step: f64,
}

#[derive(Debug, Clone)]
pub struct WitnessResult {
    pub basis: OrthonormalBasis,
    pub value: f64,
    pub success: bool,
    pub best_restart: usize,
    pub history: Vec<RestartRecord>,
}

/// Cached state data for fast evaluation: `<u|rho|u>` per state.
struct Objective<'a> {
    dim: usize,
    states: Vec<&'a CMatrix>,
}

impl Objective<'_> {
    fn hermitian(&self, params: &[f64]) -> CMatrix {
        let d = self.dim;
        let mut h = CMatrix::zeros(d, d);
        for i in 0..d {
            h[(i, i)] = c(params[i], 0.0);
        }
        let mut k = d;
        for i in 0..d {
            for j in i + 1..d {
                let z = c(params[k], params[k + 1]);
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
                k += 2;
            }
        }
        h
    }

    fn unitary(&self, params: &[f64]) -> CMatrix {
        unitary_exp(&self.hermitian(params))
    }

    /// Functional for the basis `frame * exp(iH(params))`.
    fn value_at(&self, frame: &CMatrix, params: Option<&[f64]>) -> f64 {
        match params {
            Some(p) => functional_for_unitary(&self.states, &(frame * self.unitary(p))),
            None => functional_for_unitary(&self.states, frame),
        }
    }
}

fn functional_for_unitary(states: &[&CMatrix], u: &CMatrix) -> f64 {
    let d = u.nrows();
    let mut total = 0.0;
    for col in 0..d {
        let v = u.column(col);
        let mut prod = 1.0;
        for rho in states {
            // <v|rho|v>
            let mut acc: C64 = c(0.0, 0.0);
            for i in 0..d {
                let mut row = c(0.0, 0.0);
                for j in 0..d {
                    row += rho[(i, j)] * v[j];
                }
                acc += v[i].conj() * row;
            }
            if !acc.re.is_finite() {
                return f64::INFINITY;
            }
            prod *= acc.re.max(0.0);
        }
        total += prod;
    }
    total
}

/// Gram-Schmidt on the columns, removing the drift that accumulates over
/// many frame products.
fn reorthonormalize(u: &CMatrix) -> CMatrix {
    let mut q = u.clone();
    for j in 0..q.ncols() {
        for k in 0..j {
            let proj = q.column(k).dotc(&q.column(j));
            let qk = q.column(k).into_owned();
            q.column_mut(j).axpy(-proj, &qk, c(1.0, 0.0));
        }
        let norm = q.column(j).norm();
        q.column_mut(j).unscale_mut(norm);
    }
    q
}

/// Doublings allowed in one pattern move.
const MAX_EXTENSIONS: usize = 30;

fn run_restart(obj: &Objective<'_>, cfg: &WitnessSearchConfig, restart: usize) -> (CMatrix, RestartRecord) {
    let n = obj.dim * obj.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64);
    let start: Vec<f64> = (0..n)
        .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect();
    // The chart is re-centred on the current basis after every cycle, so
    // probes always act through exp(iH) near H = 0.
    let mut frame = obj.unitary(&start);
    let mut fx = obj.value_at(&frame, None);
    let start_value = fx;
    let mut evals = 1;
    let mut step = cfg.initial_step;
    let mut cycles = 0;
    let mut x = vec![0.0; n];
    let mut checkpoint = fx;

    while cycles < cfg.max_iters && step >= cfg.min_step && fx >= cfg.success_threshold {
        cycles += 1;
        if cycles % cfg.stall_window == 0 {
            if checkpoint - fx < 1e-6 * fx {
                break;
            }
            checkpoint = fx;
        }
        let mut improved = false;
        for j in 0..n {
            let x0 = x[j];
            x[j] = x0 + step;
            let fp = obj.value_at(&frame, Some(&x));
            x[j] = x0 - step;
            let fm = obj.value_at(&frame, Some(&x));
            evals += 2;

            let mut best = (fx, x0);
            if fp < best.0 {
                best = (fp, x0 + step);
            }
            if fm < best.0 {
                best = (fm, x0 - step);
            }
            let curvature = fp - 2.0 * fx + fm;
            if curvature > 0.0 {
                let t = (step * (fm - fp) / (2.0 * curvature)).clamp(-4.0 * step, 4.0 * step);
                if t != 0.0 {
                    x[j] = x0 + t;
                    let ft = obj.value_at(&frame, Some(&x));
                    evals += 1;
                    if ft < best.0 {
                        best = (ft, x0 + t);
                    }
                }
            }
            x[j] = best.1;
            if best.0 < fx {
                fx = best.0;
                improved = true;
            }
        }
        if improved {
            // Pattern move: keep extending along the cycle's net
            // displacement while the value keeps dropping.
            let mut ext = obj.unitary(&x);
            frame = reorthonormalize(&(&frame * &ext));
            fx = obj.value_at(&frame, None);
            evals += 1;
            for _ in 0..MAX_EXTENSIONS {
                let trial = reorthonormalize(&(&frame * &ext));
                let ft = obj.value_at(&trial, None);
                evals += 1;
                if ft < fx {
                    fx = ft;
                    frame = trial;
                    ext = &ext * &ext;
                } else {
                    break;
                }
            }
            let largest = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if largest < 0.25 * step {
                step *= cfg.shrink;
            }
            x.iter_mut().for_each(|v| *v = 0.0);
        } else {
            step *= cfg.shrink;
        }
    }

    let record = RestartRecord {
        restart,
        start_value,
        final_value: fx,
        cycles,
        evaluations: evals,
        final_step: step,
    };
    (frame, record)
}

/// Minimizes `pp_functional` over orthonormal bases.
pub fn witness_search(states: &StateSet, cfg: &WitnessSearchConfig) -> Result<WitnessResult> {
    cfg.validate()?;
    let dim = states.dim();
    if dim < 2 {
        return Err(Error::invalid("state set", "dimension must be at least 2"));
    }
    let obj = Objective {
        dim,
        states: states
            .states()
            .iter()
            .map(crate::qmath::Operator::matrix)
            .collect(),
    };
    let runs: Vec<(CMatrix, RestartRecord)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(&obj, cfg, r))
        .collect();

    let (best_frame, best) = runs
        .iter()
        .min_by(|a, b| {
            a.1.final_value
                .total_cmp(&b.1.final_value)
                .then(a.1.restart.cmp(&b.1.restart))
        })
        .expect("at least one restart");
    let basis = OrthonormalBasis::from_unitary_columns(best_frame);
    Ok(WitnessResult {
        value: best.final_value,
        success: best.final_value < cfg.success_threshold,
        best_restart: best.restart,
        history: runs.iter().map(|r| r.1).collect(),
        basis,
    })
}
