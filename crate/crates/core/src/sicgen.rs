//! Weyl-Heisenberg displacements, SIC construction and verification, and the
//! SIC probability representation of quantum states.
//!
//! Orbit labelling: the projector generated by `sigma_{a,b}` from the
//! fiducial gets index `i = d*b + a`. With the fiducial `(0, 1, -1)/sqrt 2`
//! this reproduces the Hesse SIC ordering of [`hesse_sic`], so index `i`
//! is also point `i` of the 3x3 grid
//!
//! ```text
//! 0 1 2
//! 3 4 5
//! 6 7 8
//! ```
//!
//! whose lines form the Steiner system used by the `mub`, `purity` and
//! `wigner` modules.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmath::{c, cis, trace_product, CMatrix, DensityMatrix, HermitianOp, Ket, Operator, C64};

/// Label `(a, b)` of the displacement `sigma_{a,b}` in dimension `dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct WeylHeisenbergLabel {
    dim: usize,
    a: usize,
    b: usize,
}

impl WeylHeisenbergLabel {
    pub fn new(dim: usize, a: usize, b: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("weyl-heisenberg label", "dimension 0"));
        }
        if a >= dim || b >= dim {
            return Err(Error::invalid(
                "weyl-heisenberg label",
                format!("({a}, {b}) not in [0, {dim})^2"),
            ));
        }
        Ok(WeylHeisenbergLabel { dim, a, b })
    }

    /// Label at orbit index `i = d*b + a`.
    pub fn from_index(dim: usize, i: usize) -> Result<Self> {
        if i >= dim * dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: dim * dim,
            });
        }
        Self::new(dim, i % dim, i / dim)
    }

    pub fn index(&self) -> usize {
        self.dim * self.b + self.a
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }
}

/// Cyclic shift `X|j> = |j+1 mod d>`.
pub fn shift(dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, dim, |r, col| {
        if r == (col + 1) % dim {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// Clock `Z|j> = omega^j |j>`, `omega = e^{2 pi i/d}`.
pub fn clock(dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, dim, |r, col| {
        if r == col {
            cis(2.0 * PI * r as f64 / dim as f64)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// `sigma_{a,b} = tau^{ab} X^a Z^b` with `tau = -e^{i pi/d}`.
pub fn wh_displacement(label: WeylHeisenbergLabel) -> CMatrix {
    let d = label.dim;
    let (a, b) = (label.a, label.b);
    // tau = e^{i pi (d+1)/d}, so tau^{ab} = e^{i pi k/d} with k = ab(d+1) mod 2d.
    let k = (a * b * (d + 1)) % (2 * d);
    let phase = cis(PI * k as f64 / d as f64);
    // (X^a Z^b)|j> = omega^{bj} |j+a>
    CMatrix::from_fn(d, d, |r, col| {
        if r == (col + a) % d {
            phase * cis(2.0 * PI * ((b * col) % d) as f64 / d as f64)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// `d^2` rank-one projectors, kept with the kets that generated them.
///
/// Equality of SIC sets is meaningful only at the projector level; see
/// [`SicSet::same_projectors`].
#[derive(Debug, Clone)]
pub struct SicSet {
    dim: usize,
    kets: Vec<Ket>,
    projectors: Vec<HermitianOp>,
    fiducial_index: Option<usize>,
}

impl SicSet {
    /// Candidate set from `d^2` kets of dimension `d`. Only the shape is
    /// checked here; use [`is_sic`] for the Gram condition.
    pub fn from_kets(kets: Vec<Ket>) -> Result<Self> {
        let Some(first) = kets.first() else {
            return Err(Error::invalid("sic set", "no vectors"));
        };
        let dim = first.dim();
        if let Some(k) = kets.iter().find(|k| k.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: k.dim(),
            });
        }
        if kets.len() != dim * dim {
            return Err(Error::invalid(
                "sic set",
                format!("{} vectors for dimension {dim}", kets.len()),
            ));
        }
        let projectors = kets.iter().map(Ket::projector).collect();
        Ok(SicSet {
            dim,
            kets,
            projectors,
            fiducial_index: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn kets(&self) -> &[Ket] {
        &self.kets
    }

    pub fn projectors(&self) -> &[HermitianOp] {
        &self.projectors
    }

    pub fn projector(&self, i: usize) -> Result<&HermitianOp> {
        self.projectors.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.len(),
        })
    }

    pub fn fiducial_index(&self) -> Option<usize> {
        self.fiducial_index
    }

    /// States `Pi_i` as density matrices.
    pub fn states(&self) -> Vec<DensityMatrix> {
        self.kets.iter().map(Ket::density).collect()
    }

    /// Largest entrywise distance between corresponding projectors.
    pub fn projector_distance(&self, other: &SicSet) -> Result<f64> {
        Error::check_dim(self.dim, other.dim)?;
        self.projectors
            .iter()
            .zip(&other.projectors)
            .map(|(p, q)| p.distance(q))
            .try_fold(0.0f64, |acc, d| Ok(acc.max(d?)))
    }

    pub fn same_projectors(&self, other: &SicSet, tol: f64) -> bool {
        matches!(self.projector_distance(other), Ok(d) if d <= tol)
    }

    /// Permutation `i -> i'` with `U Pi_i U^dagger = Pi_{i'}`, if conjugation
    /// by `unitary` maps the set onto itself. Returns the permutation and
    /// the maximum matching residual.
    pub fn conjugation_permutation(
        &self,
        unitary: &CMatrix,
        tol: f64,
    ) -> Result<Option<(Vec<usize>, f64)>> {
        let mut perm = Vec::with_capacity(self.len());
        let mut worst = 0.0f64;
        for p in &self.projectors {
            let image = p.conjugated(unitary)?;
            let (best, dist) = self
                .projectors
                .iter()
                .enumerate()
                .map(|(j, q)| (j, image.distance(q).unwrap_or(f64::INFINITY)))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .expect("non-empty set");
            if dist > tol {
                return Ok(None);
            }
            worst = worst.max(dist);
            perm.push(best);
        }
        Ok(Some((perm, worst)))
    }
}

/// Outcome of checking the SIC Gram condition
/// `tr(Pi_k Pi_l) = (d delta_kl + 1)/(d + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SicCheck {
    pub is_sic: bool,
    pub max_residual: f64,
    pub tol: f64,
}

/// Gram matrix `tr(Pi_k Pi_l)`.
pub fn gram_matrix(s: &SicSet) -> Vec<Vec<f64>> {
    s.projectors
        .iter()
        .map(|p| {
            s.projectors
                .iter()
                .map(|q| trace_product(p, q).expect("equal dims"))
                .collect()
        })
        .collect()
}

pub fn is_sic(s: &SicSet, tol: f64) -> SicCheck {
    let d = s.dim as f64;
    let gram = gram_matrix(s);
    let mut worst = 0.0f64;
    for (k, row) in gram.iter().enumerate() {
        for (l, &g) in row.iter().enumerate() {
            let target = if k == l { 1.0 } else { 1.0 / (d + 1.0) };
            worst = worst.max((g - target).abs());
        }
    }
    SicCheck {
        is_sic: worst <= tol,
        max_residual: worst,
        tol,
    }
}

/// Weyl-Heisenberg orbit of `fiducial`, ordered by `i = d*b + a`. Fails with
/// [`Error::NotSic`] when the orbit violates the Gram condition beyond `tol`.
pub fn generate_sic_orbit(fiducial: &Ket, tol: f64) -> Result<SicSet> {
    let d = fiducial.dim();
    let kets = (0..d * d)
        .map(|i| {
            let label = WeylHeisenbergLabel::from_index(d, i)?;
            fiducial.transformed(&wh_displacement(label))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut set = SicSet::from_kets(kets)?;
    set.fiducial_index = Some(0);
    let check = is_sic(&set, tol);
    if !check.is_sic {
        return Err(Error::NotSic {
            residual: check.max_residual,
        });
    }
    Ok(set)
}

/// Fiducial `(0, 1, -1)/sqrt 2` of the Hesse SIC.
pub fn hesse_fiducial() -> Ket {
    Ket::from_real(&[0.0, 1.0, -1.0]).expect("nonzero vector")
}

/// The nine Hesse SIC vectors, `omega = e^{2 pi i/3}`:
///
/// ```text
/// psi_0 = (0, 1, -1)    psi_1 = (-1, 0, 1)      psi_2 = (1, -1, 0)
/// psi_3 = (0, w, -w*)   psi_4 = (-1, 0, w*)     psi_5 = (1, -w, 0)
/// psi_6 = (0, w*, -w)   psi_7 = (-1, 0, w)      psi_8 = (1, -w*, 0)
/// ```
///
/// each divided by `sqrt 2`.
pub fn hesse_sic() -> SicSet {
    let w = cis(2.0 * PI / 3.0);
    let wb = w.conj();
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let rows: [[C64; 3]; 9] = [
        [zero, one, -one],
        [-one, zero, one],
        [one, -one, zero],
        [zero, w, -wb],
        [-one, zero, wb],
        [one, -w, zero],
        [zero, wb, -w],
        [-one, zero, w],
        [one, -wb, zero],
    ];
    let kets = rows
        .iter()
        .map(|r| {
            Ket::new(r.iter().map(|z| z * FRAC_1_SQRT_2).collect(), 1e-14)
                .expect("unit vector")
        })
        .collect();
    let mut set = SicSet::from_kets(kets).expect("nine qutrit vectors");
    set.fiducial_index = Some(0);
    set
}

/// Built-in SIC by name.
pub fn builtin_sic(name: &str) -> Result<SicSet> {
    match name {
        "hesse" => Ok(hesse_sic()),
        other => Err(Error::invalid("builtin", format!("unknown SIC '{other}'"))),
    }
}

/// Probability vector over the `d^2` outcomes of a SIC measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SicProbVector {
    dim: usize,
    entries: Vec<f64>,
}

impl SicProbVector {
    /// Accepts `d^2` entries that are `>= -tol` and sum to 1 within `tol`.
    /// Entries in `[-tol, 0)` are clipped to zero.
    pub fn new(dim: usize, entries: Vec<f64>, tol: f64) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::invalid(
                "sic probability vector",
                format!("{} entries for dimension {dim}", entries.len()),
            ));
        }
        if let Some(x) = entries.iter().find(|x| !x.is_finite() || **x < -tol || **x > 1.0 + tol) {
            return Err(Error::invalid(
                "sic probability vector",
                format!("entry {x} outside [0, 1]"),
            ));
        }
        let total: f64 = entries.iter().sum();
        if (total - 1.0).abs() > tol {
            return Err(Error::invalid(
                "sic probability vector",
                format!("entries sum to {total}"),
            ));
        }
        Ok(SicProbVector {
            dim,
            entries: entries.into_iter().map(|x| x.clamp(0.0, 1.0)).collect(),
        })
    }

    /// Every outcome equally likely (the maximally mixed state).
    pub fn uniform(dim: usize) -> Self {
        let n = dim * dim;
        SicProbVector {
            dim,
            entries: vec![1.0 / n as f64; n],
        }
    }

    /// `e_k(i) = 1/(d(d+1)) + delta_ik/(d+1)`: the SIC state `Pi_k` itself.
    pub fn sic_state(dim: usize, k: usize) -> Result<Self> {
        if k >= dim * dim {
            return Err(Error::IndexOutOfRange {
                index: k,
                len: dim * dim,
            });
        }
        let d = dim as f64;
        let entries = (0..dim * dim)
            .map(|i| 1.0 / (d * (d + 1.0)) + if i == k { 1.0 / (d + 1.0) } else { 0.0 })
            .collect();
        Ok(SicProbVector { dim, entries })
    }

    /// Zero at each index in `zeros`, uniform elsewhere.
    pub fn with_zeros(dim: usize, zeros: &[usize]) -> Result<Self> {
        let n = dim * dim;
        let mut mask = vec![false; n];
        for &z in zeros {
            if z >= n {
                return Err(Error::IndexOutOfRange { index: z, len: n });
            }
            mask[z] = true;
        }
        let live = mask.iter().filter(|m| !**m).count();
        if live == 0 {
            return Err(Error::invalid("sic probability vector", "all entries zero"));
        }
        let v = 1.0 / live as f64;
        Ok(SicProbVector {
            dim,
            entries: mask.iter().map(|&m| if m { 0.0 } else { v }).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn max_entry(&self) -> f64 {
        self.entries.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// No entry of a quantum state's SIC vector exceeds `1/d`.
    pub fn within_state_bound(&self, tol: f64) -> bool {
        self.max_entry() <= 1.0 / self.dim as f64 + tol
    }

    pub fn dot(&self, other: &SicProbVector) -> Result<f64> {
        Error::check_dim(self.dim, other.dim)?;
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).sum())
    }
}

/// `p(i) = (1/d) tr(rho Pi_i)`.
pub fn sic_probabilities(rho: &DensityMatrix, s: &SicSet) -> Result<SicProbVector> {
    Error::check_dim(s.dim, rho.dim())?;
    let d = s.dim as f64;
    let entries = s
        .projectors
        .iter()
        .map(|p| trace_product(rho, p).map(|t| t / d))
        .collect::<Result<Vec<_>>>()?;
    SicProbVector::new(s.dim, entries, 1e-9)
}

/// `sum_i [(d+1) p(i) - 1/d] Pi_i`. The result is Hermitian with unit trace;
/// it is positive only when `p` represents a state, which callers check with
/// [`crate::qmath::Validate`].
pub fn reconstruct_from_probabilities(p: &SicProbVector, s: &SicSet) -> Result<HermitianOp> {
    Error::check_dim(s.dim, p.dim)?;
    let d = s.dim as f64;
    let mut m = CMatrix::zeros(s.dim, s.dim);
    for (pi, proj) in p.entries.iter().zip(&s.projectors) {
        m += proj.matrix().scale((d + 1.0) * pi - 1.0 / d);
    }
    Ok(HermitianOp::from_hermitian_part(m))
}

/// `tr(rho sigma) = d(d+1) p.q - 1`.
pub fn hs_inner_from_probabilities(p: &SicProbVector, q: &SicProbVector) -> Result<f64> {
    let d = p.dim as f64;
    Ok(d * (d + 1.0) * p.dot(q)? - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{random, Validate};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn max_abs(m: &CMatrix) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn identity_displacement() {
        let u = wh_displacement(WeylHeisenbergLabel::new(3, 0, 0).unwrap());
        assert!(max_abs(&(u - CMatrix::identity(3, 3))) < 1e-15);
    }

    #[test]
    fn pure_shift_displacement() {
        let u = wh_displacement(WeylHeisenbergLabel::new(3, 1, 0).unwrap());
        assert!(max_abs(&(&u - shift(3))) < 1e-15);
        // X|0> = |1>
        assert_eq!(u[(1, 0)], c(1.0, 0.0));
    }

    #[test]
    fn diagonal_displacement_phase_is_omega_squared() {
        let u = wh_displacement(WeylHeisenbergLabel::new(3, 1, 1).unwrap());
        let w2 = cis(4.0 * PI / 3.0);
        let expected = (shift(3) * clock(3)).map(|z| z * w2);
        assert!(max_abs(&(u - expected)) < 1e-14);
    }

    #[test]
    fn displacements_are_unitary() {
        for d in 2..=8 {
            for i in 0..d * d {
                let u = wh_displacement(WeylHeisenbergLabel::from_index(d, i).unwrap());
                assert!(max_abs(&(&u * u.adjoint() - CMatrix::identity(d, d))) < 1e-12);
            }
        }
    }

    #[test]
    fn label_validation() {
        assert!(WeylHeisenbergLabel::new(3, 3, 0).is_err());
        assert!(WeylHeisenbergLabel::new(0, 0, 0).is_err());
        let l = WeylHeisenbergLabel::from_index(3, 7).unwrap();
        assert_eq!((l.a(), l.b(), l.index()), (1, 2, 7));
    }

    #[test]
    fn hesse_is_sic() {
        let check = is_sic(&hesse_sic(), 1e-12);
        assert!(check.is_sic, "residual {}", check.max_residual);
    }

    #[test]
    fn hesse_overlap_psi0_psi3() {
        let s = hesse_sic();
        let x = s.kets()[0].overlap_sq(&s.kets()[3]).unwrap();
        assert!(close(x, 0.25, 1e-15));
        assert!(close(trace_product(s.projector(0).unwrap(), s.projector(1).unwrap()).unwrap(), 0.25, 1e-15));
    }

    #[test]
    fn hesse_index_one_is_shifted_fiducial() {
        let s = hesse_sic();
        let x = shift(3);
        let img = s.projector(0).unwrap().conjugated(&x).unwrap();
        assert!(img.distance(s.projector(1).unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn orbit_of_hesse_fiducial_matches_printed_set() {
        let orbit = generate_sic_orbit(&hesse_fiducial(), 1e-10).unwrap();
        let d = orbit.projector_distance(&hesse_sic()).unwrap();
        assert!(d < 1e-14, "distance {d}");
        assert!(orbit.same_projectors(&hesse_sic(), 1e-12));
        assert_eq!(orbit.fiducial_index(), Some(0));
    }

    #[test]
    fn orbit_of_basis_vector_is_not_sic() {
        match generate_sic_orbit(&Ket::basis(3, 0).unwrap(), 1e-10) {
            Err(Error::NotSic { residual }) => assert!(residual > 0.1),
            other => panic!("expected NotSic, got {other:?}"),
        }
    }

    #[test]
    fn orbit_first_element_is_fiducial() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = random::ket(&mut rng, 3);
        // not a SIC fiducial; build the candidate orbit by hand
        let kets: Vec<Ket> = (0..9)
            .map(|i| f.transformed(&wh_displacement(WeylHeisenbergLabel::from_index(3, i).unwrap())).unwrap())
            .collect();
        let s = SicSet::from_kets(kets).unwrap();
        assert!(s.projector(0).unwrap().distance(&f.projector()).unwrap() < 1e-15);
    }

    #[test]
    fn broken_set_is_not_sic() {
        let mut kets = hesse_sic().kets().to_vec();
        kets[0] = Ket::basis(3, 0).unwrap();
        assert!(!is_sic(&SicSet::from_kets(kets).unwrap(), 1e-10).is_sic);
    }

    #[test]
    fn global_phase_keeps_sic() {
        let mut kets = hesse_sic().kets().to_vec();
        kets[4] = kets[4].with_phase(PI / 7.0);
        let s = SicSet::from_kets(kets).unwrap();
        assert!(is_sic(&s, 1e-12).is_sic);
        assert!(s.same_projectors(&hesse_sic(), 1e-14));
    }

    #[test]
    fn sic_state_probabilities() {
        let s = hesse_sic();
        let p = sic_probabilities(&s.kets()[0].density(), &s).unwrap();
        let e0 = SicProbVector::sic_state(3, 0).unwrap();
        assert!(close(p.entries()[0], 1.0 / 3.0, 1e-15));
        for (x, y) in p.entries().iter().zip(e0.entries()) {
            assert!(close(*x, *y, 1e-15));
        }
        for x in &p.entries()[1..] {
            assert!(close(*x, 1.0 / 12.0, 1e-15));
        }
    }

    #[test]
    fn maximally_mixed_is_uniform() {
        let p = sic_probabilities(&DensityMatrix::maximally_mixed(3), &hesse_sic()).unwrap();
        assert!(p.entries().iter().all(|x| close(*x, 1.0 / 9.0, 1e-15)));
    }

    #[test]
    fn all_ones_state_has_line_zeros() {
        let s = hesse_sic();
        let rho = Ket::from_real(&[1.0, 1.0, 1.0]).unwrap().density();
        let p = sic_probabilities(&rho, &s).unwrap();
        for (i, x) in p.entries().iter().enumerate() {
            let want = if i < 3 { 0.0 } else { 1.0 / 6.0 };
            assert!(close(*x, want, 1e-15), "entry {i}: {x}");
        }
    }

    #[test]
    fn reconstruct_sic_state() {
        let s = hesse_sic();
        let r = reconstruct_from_probabilities(&SicProbVector::sic_state(3, 0).unwrap(), &s).unwrap();
        assert!(r.distance(s.projector(0).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn reconstruct_line_vector() {
        let s = hesse_sic();
        let p = SicProbVector::with_zeros(3, &[0, 1, 2]).unwrap();
        let r = reconstruct_from_probabilities(&p, &s).unwrap();
        let want = Ket::from_real(&[1.0, 1.0, 1.0]).unwrap().projector();
        assert!(r.distance(&want).unwrap() < 1e-12);
    }

    #[test]
    fn reconstruct_uniform() {
        let r = reconstruct_from_probabilities(&SicProbVector::uniform(3), &hesse_sic()).unwrap();
        assert!(r.distance(DensityMatrix::maximally_mixed(3).as_op()).unwrap() < 1e-14);
    }

    #[test]
    fn reconstruction_of_non_state_is_flagged() {
        let p = SicProbVector::with_zeros(3, &[0, 1, 3]).unwrap();
        let r = reconstruct_from_probabilities(&p, &hesse_sic()).unwrap();
        let diag = r.validate(1e-10);
        assert!(diag.trace_residual.unwrap() < 1e-12);
        assert!(!diag.passed);
    }

    #[test]
    fn hs_inner_examples() {
        let e0 = SicProbVector::sic_state(3, 0).unwrap();
        assert!(close(hs_inner_from_probabilities(&e0, &e0).unwrap(), 1.0, 1e-14));
        let s012 = SicProbVector::with_zeros(3, &[0, 1, 2]).unwrap();
        let s345 = SicProbVector::with_zeros(3, &[3, 4, 5]).unwrap();
        let s036 = SicProbVector::with_zeros(3, &[0, 3, 6]).unwrap();
        assert!(close(hs_inner_from_probabilities(&s012, &s345).unwrap(), 0.0, 1e-14));
        assert!(close(hs_inner_from_probabilities(&s012, &s036).unwrap(), 1.0 / 3.0, 1e-14));
    }

    #[test]
    fn prob_vector_rejects_bad_input() {
        assert!(SicProbVector::new(3, vec![0.5; 9], 1e-10).is_err());
        assert!(SicProbVector::new(3, vec![0.25; 4], 1e-10).is_err());
        let mut v = vec![1.0 / 8.0; 9];
        v[0] = -1.0 / 8.0 + 0.0;
        v[1] = 0.25 + 1.0 / 8.0;
        assert!(SicProbVector::new(3, v, 1e-10).is_err());
    }

    #[test]
    fn sic_probability_dimension_mismatch() {
        assert!(matches!(
            sic_probabilities(&DensityMatrix::maximally_mixed(2), &hesse_sic()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn displacements_permute_hesse_projectors() {
        let s = hesse_sic();
        for i in 0..9 {
            let u = wh_displacement(WeylHeisenbergLabel::from_index(3, i).unwrap());
            let (perm, resid) = s.conjugation_permutation(&u, 1e-10).unwrap().expect("covariant");
            assert!(resid < 1e-10);
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..9).collect::<Vec<_>>());
        }
    }

    #[test]
    fn builtin_lookup() {
        assert!(builtin_sic("hesse").is_ok());
        assert!(builtin_sic("hoggar").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]

            #[test]
            fn sic_round_trip(seed in any::<u64>()) {
                let s = hesse_sic();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let rho = random::density(&mut rng, 3);
                let p = sic_probabilities(&rho, &s).unwrap();
                let back = reconstruct_from_probabilities(&p, &s).unwrap();
                prop_assert!(back.distance(&rho).unwrap() < 1e-10);
            }

            #[test]
            fn affine_inner_product(seed in any::<u64>()) {
                let s = hesse_sic();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let rho = random::density(&mut rng, 3);
                let sigma = random::density(&mut rng, 3);
                let p = sic_probabilities(&rho, &s).unwrap();
                let q = sic_probabilities(&sigma, &s).unwrap();
                let direct = trace_product(&rho, &sigma).unwrap();
                prop_assert!((hs_inner_from_probabilities(&p, &q).unwrap() - direct).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn max_entry_bound_for_random_pure_states() {
        let s = hesse_sic();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..1000 {
            let p = sic_probabilities(&random::ket(&mut rng, 3).density(), &s).unwrap();
            assert!(p.max_entry() <= 1.0 / 3.0 + 1e-10);
            assert!(p.within_state_bound(1e-10));
        }
    }
}
