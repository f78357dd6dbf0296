//! Small-dimension complex linear algebra: kets, Hermitian operators,
//! density matrices, POVMs, orthonormal bases and the Born rule.
//!
//! Everything here is an immutable value. Constructors validate their
//! invariants at a caller-supplied tolerance; [`Validate`] produces a
//! structured residual report without rejecting anything.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Default tolerance for validating exact constructions.
pub const VALIDATION_TOL: f64 = 1e-10;
/// Default tolerance for quantities produced by numerical search.
pub const SEARCH_TOL: f64 = 1e-8;
/// Largest dimension the crate is exercised at.
pub const MAX_DIM: usize = 8;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// `e^{i theta}`.
pub(crate) fn cis(theta: f64) -> C64 {
    Complex::from_polar(1.0, theta)
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn hermiticity_residual(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Ascending eigenvalues of the Hermitian part of `m`.
pub(crate) fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = hermitian_part(m)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amps: CVector,
}

impl Ket {
    /// Accepts `amps` if its Euclidean norm is 1 within `tol`.
    pub fn new(amps: Vec<C64>, tol: f64) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::invalid("ket", "empty amplitude list"));
        }
        let v = CVector::from_vec(amps);
        let residual = (v.norm() - 1.0).abs();
        if residual > tol {
            return Err(Error::invalid(
                "ket",
                format!("norm residual {residual:e} exceeds {tol:e}"),
            ));
        }
        Ok(Ket { amps: v })
    }

    /// Rescales `amps` to unit norm.
    pub fn normalized(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::invalid("ket", "empty amplitude list"));
        }
        let v = CVector::from_vec(amps);
        let n = v.norm();
        if !(n > 1e-300) || !n.is_finite() {
            return Err(Error::invalid("ket", "zero or non-finite norm"));
        }
        Ok(Ket { amps: v.unscale(n) })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::normalized(amps.iter().map(|&x| c(x, 0.0)).collect())
    }

    /// Computational basis state `|k>`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::IndexOutOfRange { index: k, len: dim });
        }
        let mut v = CVector::zeros(dim);
        v[k] = c(1.0, 0.0);
        Ok(Ket { amps: v })
    }

    pub(crate) fn from_vector_unchecked(amps: CVector) -> Self {
        Ket { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Ket) -> Result<C64> {
        Error::check_dim(self.dim(), other.dim())?;
        Ok(self.amps.dotc(&other.amps))
    }

    /// `|<self|other>|^2`.
    pub fn overlap_sq(&self, other: &Ket) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// `U|self>` for a unitary `U`.
    pub fn transformed(&self, unitary: &CMatrix) -> Result<Ket> {
        Error::check_dim(self.dim(), unitary.ncols())?;
        Ket::normalized((unitary * &self.amps).iter().copied().collect())
    }

    pub fn with_phase(&self, theta: f64) -> Ket {
        Ket {
            amps: self.amps.map(|z| z * cis(theta)),
        }
    }

    pub fn projector(&self) -> HermitianOp {
        HermitianOp {
            m: &self.amps * self.amps.adjoint(),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix(self.projector())
    }
}

/// Anything that exposes a square complex matrix.
pub trait Operator {
    fn matrix(&self) -> &CMatrix;

    fn dim(&self) -> usize {
        self.matrix().nrows()
    }
}

impl Operator for CMatrix {
    fn matrix(&self) -> &CMatrix {
        self
    }
}

/// Hermitian operator on `C^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOp {
    m: CMatrix,
}

impl HermitianOp {
    pub fn new(m: CMatrix, tol: f64) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::invalid(
                "hermitian operator",
                format!("matrix is {}x{}", m.nrows(), m.ncols()),
            ));
        }
        let r = hermiticity_residual(&m);
        if r > tol {
            return Err(Error::invalid(
                "hermitian operator",
                format!("hermiticity residual {r:e} exceeds {tol:e}"),
            ));
        }
        Ok(HermitianOp { m })
    }

    /// Wraps the Hermitian part of `m`. Callers guarantee `m` is square.
    pub(crate) fn from_hermitian_part(m: CMatrix) -> Self {
        HermitianOp {
            m: hermitian_part(&m),
        }
    }

    pub fn identity(dim: usize) -> Self {
        HermitianOp {
            m: CMatrix::identity(dim, dim),
        }
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.m)
    }

    /// `U self U^dagger`.
    pub fn conjugated(&self, unitary: &CMatrix) -> Result<Self> {
        Error::check_dim(self.dim(), unitary.nrows())?;
        Ok(Self::from_hermitian_part(unitary * &self.m * unitary.adjoint()))
    }

    /// Maximum entrywise distance.
    pub fn distance(&self, other: &impl Operator) -> Result<f64> {
        Error::check_dim(self.dim(), other.dim())?;
        Ok(max_abs(&(&self.m - other.matrix())))
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }
}

impl Operator for HermitianOp {
    fn matrix(&self) -> &CMatrix {
        &self.m
    }
}

/// Unit-trace positive-semidefinite Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(HermitianOp);

impl DensityMatrix {
    pub fn new(m: CMatrix, tol: f64) -> Result<Self> {
        let diag = validate_density(&m, tol);
        if !diag.passed {
            return Err(Error::validation("density matrix", diag.summary()));
        }
        Ok(DensityMatrix(HermitianOp::from_hermitian_part(m)))
    }

    pub fn try_from_op(op: HermitianOp, tol: f64) -> Result<Self> {
        Self::new(op.m, tol)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix(HermitianOp {
            m: CMatrix::identity(dim, dim).unscale(dim as f64),
        })
    }

    pub fn as_op(&self) -> &HermitianOp {
        &self.0
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.0.eigenvalues()
    }

    /// `tr rho^2`.
    pub fn purity(&self) -> f64 {
        trace_product_raw(&self.0.m, &self.0.m).re
    }

    pub fn conjugated(&self, unitary: &CMatrix) -> Result<Self> {
        Ok(DensityMatrix(self.0.conjugated(unitary)?))
    }
}

impl Operator for DensityMatrix {
    fn matrix(&self) -> &CMatrix {
        &self.0.m
    }
}

impl From<&Ket> for DensityMatrix {
    fn from(k: &Ket) -> Self {
        k.density()
    }
}

/// Positive operator-valued measure.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    effects: Vec<HermitianOp>,
}

impl Povm {
    pub fn new(effects: Vec<CMatrix>, tol: f64) -> Result<Self> {
        let diag = validate_povm(&effects, tol);
        if !diag.passed {
            return Err(Error::validation("povm", diag.summary()));
        }
        Ok(Povm {
            effects: effects
                .into_iter()
                .map(HermitianOp::from_hermitian_part)
                .collect(),
        })
    }

    /// The von Neumann measurement in `basis`.
    pub fn from_basis(basis: &OrthonormalBasis) -> Self {
        Povm {
            effects: basis.kets.iter().map(Ket::projector).collect(),
        }
    }

    pub fn computational(dim: usize) -> Self {
        Self::from_basis(&OrthonormalBasis::computational(dim))
    }

    pub fn dim(&self) -> usize {
        self.effects[0].dim()
    }

    pub fn effects(&self) -> &[HermitianOp] {
        &self.effects
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }
}

/// Orthonormal basis of `C^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis {
    kets: Vec<Ket>,
}

impl OrthonormalBasis {
    pub fn new(kets: Vec<Ket>, tol: f64) -> Result<Self> {
        let vecs: Vec<CVector> = kets.iter().map(|k| k.amps.clone()).collect();
        let diag = validate_basis(&vecs, tol);
        if !diag.passed {
            return Err(Error::validation("orthonormal basis", diag.summary()));
        }
        Ok(OrthonormalBasis { kets })
    }

    pub fn computational(dim: usize) -> Self {
        OrthonormalBasis {
            kets: (0..dim)
                .map(|k| Ket::basis(dim, k).expect("k < dim"))
                .collect(),
        }
    }

    /// Columns of a unitary matrix.
    pub(crate) fn from_unitary_columns(u: &CMatrix) -> Self {
        OrthonormalBasis {
            kets: u
                .column_iter()
                .map(|col| Ket::from_vector_unchecked(col.into_owned()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.kets[0].dim()
    }

    pub fn kets(&self) -> &[Ket] {
        &self.kets
    }

    /// Matrix whose columns are the basis kets.
    pub fn to_unitary(&self) -> CMatrix {
        let cols: Vec<CVector> = self.kets.iter().map(|k| k.amps.clone()).collect();
        CMatrix::from_columns(&cols)
    }
}

/// Structured residual report. Fields that do not apply to the validated
/// kind are `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub kind: &'static str,
    pub tol: f64,
    pub passed: bool,
    pub hermiticity_residual: Option<f64>,
    pub trace_residual: Option<f64>,
    pub min_eigenvalue: Option<f64>,
    pub completeness_residual: Option<f64>,
    pub normalization_residual: Option<f64>,
    pub orthogonality_residual: Option<f64>,
    pub failures: Vec<String>,
}

impl Diagnostics {
    fn new(kind: &'static str, tol: f64) -> Self {
        Diagnostics {
            kind,
            tol,
            passed: true,
            hermiticity_residual: None,
            trace_residual: None,
            min_eigenvalue: None,
            completeness_residual: None,
            normalization_residual: None,
            orthogonality_residual: None,
            failures: Vec::new(),
        }
    }

    fn fail(&mut self, msg: String) {
        self.passed = false;
        self.failures.push(msg);
    }

    /// Residual check: records a failure when `residual > tol`.
    fn check(&mut self, name: &str, residual: f64) {
        if !(residual <= self.tol) {
            self.fail(format!("{name} residual {residual:e} exceeds {:e}", self.tol));
        }
    }

    pub fn summary(&self) -> String {
        if self.passed {
            format!("{} ok at tol {:e}", self.kind, self.tol)
        } else {
            self.failures.join("; ")
        }
    }
}

fn check_square(d: &mut Diagnostics, m: &CMatrix) -> bool {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        d.fail(format!("matrix is {}x{}", m.nrows(), m.ncols()));
        return false;
    }
    true
}

/// Candidate density matrix: Hermitian, unit trace, eigenvalues `>= -tol`.
pub fn validate_density(m: &CMatrix, tol: f64) -> Diagnostics {
    let mut d = Diagnostics::new("density matrix", tol);
    if !check_square(&mut d, m) {
        return d;
    }
    let herm = hermiticity_residual(m);
    d.hermiticity_residual = Some(herm);
    d.check("hermiticity", herm);
    let tr = (m.trace() - c(1.0, 0.0)).norm();
    d.trace_residual = Some(tr);
    d.check("trace", tr);
    let min_ev = hermitian_eigenvalues(m)[0];
    d.min_eigenvalue = Some(min_ev);
    if min_ev < -tol {
        d.fail(format!("minimum eigenvalue {min_ev:e} below -{tol:e}"));
    }
    d
}

/// Candidate POVM: every effect Hermitian and PSD, effects sum to identity.
pub fn validate_povm(effects: &[CMatrix], tol: f64) -> Diagnostics {
    let mut d = Diagnostics::new("povm", tol);
    let Some(first) = effects.first() else {
        d.fail("no effects".into());
        return d;
    };
    if !check_square(&mut d, first) {
        return d;
    }
    let dim = first.nrows();
    let mut herm = 0.0f64;
    let mut min_ev = f64::INFINITY;
    let mut sum = CMatrix::zeros(dim, dim);
    for (i, e) in effects.iter().enumerate() {
        if e.nrows() != dim || e.ncols() != dim {
            d.fail(format!("effect {i} has shape {}x{}", e.nrows(), e.ncols()));
            return d;
        }
        herm = herm.max(hermiticity_residual(e));
        min_ev = min_ev.min(hermitian_eigenvalues(e)[0]);
        sum += e;
    }
    d.hermiticity_residual = Some(herm);
    d.check("hermiticity", herm);
    d.min_eigenvalue = Some(min_ev);
    if min_ev < -tol {
        d.fail(format!("minimum effect eigenvalue {min_ev:e} below -{tol:e}"));
    }
    let compl = max_abs(&(sum - CMatrix::identity(dim, dim)));
    d.completeness_residual = Some(compl);
    d.check("completeness", compl);
    d
}

/// Candidate orthonormal basis: `dim` unit vectors, pairwise orthogonal.
pub fn validate_basis(kets: &[CVector], tol: f64) -> Diagnostics {
    let mut d = Diagnostics::new("orthonormal basis", tol);
    let Some(first) = kets.first() else {
        d.fail("no kets".into());
        return d;
    };
    let dim = first.len();
    if kets.iter().any(|k| k.len() != dim) {
        d.fail("kets have differing dimensions".into());
        return d;
    }
    if kets.len() != dim {
        d.fail(format!("{} kets for dimension {dim}", kets.len()));
    }
    let norm = kets
        .iter()
        .map(|k| (k.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    d.normalization_residual = Some(norm);
    d.check("normalization", norm);
    let mut orth = 0.0f64;
    for i in 0..kets.len() {
        for j in i + 1..kets.len() {
            orth = orth.max(kets[i].dotc(&kets[j]).norm());
        }
    }
    d.orthogonality_residual = Some(orth);
    d.check("orthogonality", orth);
    d
}

/// Structured validation of an already-constructed value.
pub trait Validate {
    fn validate(&self, tol: f64) -> Diagnostics;
}

impl Validate for HermitianOp {
    /// Treats the operator as a candidate density matrix.
    fn validate(&self, tol: f64) -> Diagnostics {
        validate_density(&self.m, tol)
    }
}

impl Validate for DensityMatrix {
    fn validate(&self, tol: f64) -> Diagnostics {
        validate_density(&self.0.m, tol)
    }
}

impl Validate for Povm {
    fn validate(&self, tol: f64) -> Diagnostics {
        let effects: Vec<CMatrix> = self.effects.iter().map(|e| e.m.clone()).collect();
        validate_povm(&effects, tol)
    }
}

impl Validate for OrthonormalBasis {
    fn validate(&self, tol: f64) -> Diagnostics {
        let vecs: Vec<CVector> = self.kets.iter().map(|k| k.amps.clone()).collect();
        validate_basis(&vecs, tol)
    }
}

fn trace_product_raw(a: &CMatrix, b: &CMatrix) -> C64 {
    // tr(AB) = sum_ij A_ij B_ji
    let n = a.nrows();
    let mut acc = c(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// `tr(ab)` together with the magnitude of its imaginary part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceProduct {
    pub value: f64,
    pub imag_residual: f64,
}

pub fn trace_product_detailed(a: &impl Operator, b: &impl Operator) -> Result<TraceProduct> {
    Error::check_dim(a.dim(), b.dim())?;
    let t = trace_product_raw(a.matrix(), b.matrix());
    Ok(TraceProduct {
        value: t.re,
        imag_residual: t.im.abs(),
    })
}

/// `Re tr(ab)`.
pub fn trace_product(a: &impl Operator, b: &impl Operator) -> Result<f64> {
    Ok(trace_product_detailed(a, b)?.value)
}

/// Born-rule outcome probabilities `tr(rho E_i)`, clipped to `[0, 1]`
/// after checking they are `>= -tol` and sum to 1 within `tol`.
pub fn born_probabilities(rho: &DensityMatrix, m: &Povm, tol: f64) -> Result<Vec<f64>> {
    Error::check_dim(rho.dim(), m.dim())?;
    let raw: Vec<f64> = m
        .effects
        .iter()
        .map(|e| trace_product_raw(rho.matrix(), &e.m).re)
        .collect();
    if let Some(bad) = raw.iter().find(|&&p| p < -tol) {
        return Err(Error::invalid(
            "povm",
            format!("negative outcome probability {bad:e}"),
        ));
    }
    let total: f64 = raw.iter().sum();
    if (total - 1.0).abs() > tol {
        return Err(Error::invalid(
            "povm",
            format!("probabilities sum to {total}"),
        ));
    }
    Ok(raw.into_iter().map(|p| p.clamp(0.0, 1.0)).collect())
}

/// `exp(iH)` for Hermitian `H`, via its eigendecomposition.
pub fn unitary_exp(h: &CMatrix) -> CMatrix {
    let eig = SymmetricEigen::new(hermitian_part(h));
    let phases = CMatrix::from_diagonal(&eig.eigenvalues.map(cis));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// Seeded random states and unitaries (Haar measure for kets and unitaries,
/// Hilbert-Schmidt measure for mixed states).
pub mod random {
    use super::*;
    use rand::Rng;
    use rand_distr::StandardNormal;

    fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    }

    pub fn ket<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Ket {
        loop {
            let amps: Vec<C64> = (0..dim).map(|_| gaussian_c64(rng)).collect();
            if let Ok(k) = Ket::normalized(amps) {
                return k;
            }
        }
    }

    pub fn density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
        let g = CMatrix::from_fn(dim, dim, |_, _| gaussian_c64(rng));
        let m = &g * g.adjoint();
        let tr = m.trace().re;
        DensityMatrix(HermitianOp::from_hermitian_part(m.unscale(tr)))
    }

    pub fn unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
        let g = CMatrix::from_fn(dim, dim, |_, _| gaussian_c64(rng));
        let qr = g.qr();
        let (q, r) = (qr.q(), qr.r());
        // Fix column phases so the distribution is Haar.
        let phases = CMatrix::from_diagonal(&CVector::from_fn(dim, |i, _| {
            let d = r[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                c(1.0, 0.0)
            }
        }));
        q * phases
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trace_product_of_state_with_identity_is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = random::density(&mut rng, 3);
        let id = HermitianOp::identity(3);
        assert!((trace_product(&rho, &id).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_product_dimension_mismatch() {
        let a = HermitianOp::identity(2);
        let b = HermitianOp::identity(3);
        assert!(matches!(
            trace_product(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn validate_reports_trace_residual() {
        let m = CMatrix::identity(3, 3).scale(1.1 / 3.0);
        let d = validate_density(&m, 1e-10);
        assert!(!d.passed);
        assert!((d.trace_residual.unwrap() - 0.1).abs() < 1e-12);
    }

    #[test]
    fn validate_reports_missing_effect() {
        let b = OrthonormalBasis::computational(3);
        let effects: Vec<CMatrix> = b.kets()[..2]
            .iter()
            .map(|k| k.projector().into_matrix())
            .collect();
        let d = validate_povm(&effects, 1e-10);
        assert!(!d.passed);
        assert!((d.completeness_residual.unwrap() - 1.0).abs() < 1e-12);
        assert!(Povm::new(effects, 1e-10).is_err());
    }

    #[test]
    fn validate_flags_negative_eigenvalue() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![
            c(1.5, 0.0),
            c(-0.5, 0.0),
            c(0.0, 0.0),
        ]));
        let d = validate_density(&m, 1e-10);
        assert!(!d.passed);
        assert!((d.min_eigenvalue.unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn born_rule_computational_basis() {
        let k = Ket::from_real(&[0.0, 1.0, -1.0]).unwrap();
        let p = born_probabilities(&k.density(), &Povm::computational(3), 1e-10).unwrap();
        for (x, y) in p.iter().zip([0.0, 0.5, 0.5]) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn ket_rejects_unnormalized() {
        assert!(Ket::new(vec![c(1.0, 0.0), c(1.0, 0.0)], 1e-10).is_err());
        assert!(Ket::normalized(vec![c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn unitary_exp_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let h = random::density(&mut rng, 4).matrix().scale(5.0);
        let u = unitary_exp(&h);
        let err = max_abs(&(&u * u.adjoint() - CMatrix::identity(4, 4)));
        assert!(err < 1e-12);
    }

    #[test]
    fn random_unitary_columns_form_basis() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = OrthonormalBasis::from_unitary_columns(&random::unitary(&mut rng, 3));
        assert!(b.validate(1e-12).passed);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn cauchy_schwarz(seed in any::<u64>(), dim in 2usize..=8) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let u = random::ket(&mut rng, dim);
                let v = random::ket(&mut rng, dim);
                prop_assert!(u.overlap_sq(&v).unwrap() <= 1.0 + 1e-12);
            }

            #[test]
            fn projector_is_idempotent(seed in any::<u64>(), dim in 2usize..=8) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let p = random::ket(&mut rng, dim).projector();
                prop_assert!((trace_product(&p, &p).unwrap() - 1.0).abs() < 1e-12);
            }

            #[test]
            fn born_probabilities_normalized(seed in any::<u64>(), dim in 2usize..=6) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let rho = random::density(&mut rng, dim);
                let basis = OrthonormalBasis::from_unitary_columns(&random::unitary(&mut rng, dim));
                let p = born_probabilities(&rho, &Povm::from_basis(&basis), 1e-10).unwrap();
                prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-10);
            }
        }
    }
}
