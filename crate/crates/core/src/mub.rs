//! The Steiner triple system S(9) on the 3x3 grid, the twelve MUB states it
//! defines through the Hesse SIC, and the covering map from SIC triples to
//! witnessing bases.
//!
//! A MUB state is identified by its zero-triple: the state whose SIC
//! probability vector vanishes on the three indices of a grid line and is
//! `1/6` elsewhere. States are stored as projectors and probability vectors,
//! never as kets, so no phase convention enters.

use serde::Serialize;

use crate::compat::pp_functional;
use crate::error::{Error, Result};
use crate::qmath::{trace_product, DensityMatrix, Povm, Validate, VALIDATION_TOL};
use crate::sicgen::{reconstruct_from_probabilities, SicProbVector, SicSet};

/// Sorted index triple of grid points.
pub type Triple = [usize; 3];

/// Striations in row order: rows, columns, diagonals, anti-diagonals.
const S9: [[Triple; 3]; 4] = [
    [[0, 1, 2], [3, 4, 5], [6, 7, 8]],
    [[0, 3, 6], [1, 4, 7], [2, 5, 8]],
    [[0, 4, 8], [1, 5, 6], [2, 3, 7]],
    [[0, 5, 7], [1, 3, 8], [2, 4, 6]],
];

/// Twelve lines of the 3x3 grid grouped into four striations of three
/// parallel lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SteinerSystem {
    striations: [[Triple; 3]; 4],
}

pub fn steiner_s9() -> SteinerSystem {
    SteinerSystem { striations: S9 }
}

impl SteinerSystem {
    /// Striation `n` for `n` in `1..=4`.
    pub fn striation(&self, n: usize) -> Result<&[Triple; 3]> {
        if !(1..=4).contains(&n) {
            return Err(Error::IndexOutOfRange { index: n, len: 4 });
        }
        Ok(&self.striations[n - 1])
    }

    pub fn striations(&self) -> &[[Triple; 3]; 4] {
        &self.striations
    }

    /// All twelve triples in striation order.
    pub fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        self.striations.iter().flatten().copied()
    }

    /// Striation number (1-based) and position of a triple given in any order.
    pub fn locate(&self, t: Triple) -> Option<(usize, usize)> {
        let t = sorted(t);
        self.striations.iter().enumerate().find_map(|(s, lines)| {
            lines.iter().position(|l| *l == t).map(|pos| (s + 1, pos))
        })
    }

    pub fn contains(&self, t: Triple) -> bool {
        self.locate(t).is_some()
    }

    /// The unique line through two distinct points.
    pub fn line_through(&self, i: usize, j: usize) -> Option<Triple> {
        self.triples().find(|l| l.contains(&i) && l.contains(&j) && i != j)
    }

    /// Lines containing point `i`, one per striation.
    pub fn lines_through(&self, i: usize) -> Vec<Triple> {
        self.triples().filter(|l| l.contains(&i)).collect()
    }
}

pub(crate) fn sorted(mut t: Triple) -> Triple {
    t.sort_unstable();
    t
}

/// One MUB state: its zero-triple, SIC vector and projector.
#[derive(Debug, Clone)]
pub struct MubState {
    pub triple: Triple,
    pub probs: SicProbVector,
    pub projector: DensityMatrix,
}

/// Builds the probability vector vanishing on `t` and its reconstruction,
/// which must be a rank-one projector within `1e-10`.
pub fn mub_from_triple(t: Triple, s: &SicSet) -> Result<MubState> {
    let t = sorted(t);
    if !steiner_s9().contains(t) {
        return Err(Error::NotALine(t));
    }
    Error::check_dim(3, s.dim())?;
    let probs = SicProbVector::with_zeros(3, &t)?;
    let op = reconstruct_from_probabilities(&probs, s)?;
    let projector = DensityMatrix::try_from_op(op, VALIDATION_TOL)?;
    let purity_residual = (projector.purity() - 1.0).abs();
    if purity_residual > VALIDATION_TOL {
        return Err(Error::validation(
            "mub state",
            format!("reconstruction for {t:?} is not rank one (purity residual {purity_residual:e})"),
        ));
    }
    Ok(MubState {
        triple: t,
        probs,
        projector,
    })
}

/// Four orthonormal bases of three states each, keyed by striation.
#[derive(Debug, Clone)]
pub struct MubSet {
    bases: Vec<[MubState; 3]>,
}

impl MubSet {
    /// Wraps bases without verifying them; see [`verify_mub_set`].
    pub fn from_bases(bases: Vec<[MubState; 3]>) -> Self {
        MubSet { bases }
    }

    pub fn bases(&self) -> &[[MubState; 3]] {
        &self.bases
    }

    /// Basis for striation `n` in `1..=len`.
    pub fn basis(&self, n: usize) -> Result<&[MubState; 3]> {
        if n == 0 || n > self.bases.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                len: self.bases.len(),
            });
        }
        Ok(&self.bases[n - 1])
    }

    pub fn states(&self) -> impl Iterator<Item = &MubState> {
        self.bases.iter().flatten()
    }

    pub fn state(&self, t: Triple) -> Option<&MubState> {
        let t = sorted(t);
        self.states().find(|m| m.triple == t)
    }

    /// Von Neumann measurement for striation `n`.
    pub fn measurement(&self, n: usize) -> Result<Povm> {
        let effects = self
            .basis(n)?
            .iter()
            .map(|m| m.projector.as_op().clone().into_matrix())
            .collect();
        Povm::new(effects, 1e-9)
    }
}

/// Residuals of the mutual-unbiasedness conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MubReport {
    pub passed: bool,
    pub tol: f64,
    /// Largest `|tr(P P')|` for distinct states of one basis.
    pub within_residual: f64,
    /// Largest entry of `sum P - I` over bases.
    pub completeness_residual: f64,
    /// Largest `|tr(P P') - 1/d|` over cross-basis pairs.
    pub cross_residual: f64,
    /// Largest rank-one (purity) residual.
    pub purity_residual: f64,
    pub cross_pairs_checked: usize,
}

pub fn verify_mub_set(m: &MubSet, tol: f64) -> MubReport {
    let d = 3.0;
    let mut within = 0.0f64;
    let mut compl = 0.0f64;
    let mut cross = 0.0f64;
    let mut purity = 0.0f64;
    let mut pairs = 0;
    let tp = |a: &MubState, b: &MubState| {
        trace_product(&a.projector, &b.projector).unwrap_or(f64::INFINITY)
    };
    for (bi, basis) in m.bases.iter().enumerate() {
        for (i, a) in basis.iter().enumerate() {
            purity = purity.max((a.projector.purity() - 1.0).abs());
            for b in &basis[i + 1..] {
                within = within.max(tp(a, b).abs());
            }
        }
        let eff: Vec<_> = basis
            .iter()
            .map(|s| s.projector.as_op().clone().into_matrix())
            .collect();
        compl = compl.max(
            crate::qmath::validate_povm(&eff, tol)
                .completeness_residual
                .unwrap_or(f64::INFINITY),
        );
        for other in &m.bases[bi + 1..] {
            for a in basis {
                for b in other {
                    cross = cross.max((tp(a, b) - 1.0 / d).abs());
                    pairs += 1;
                }
            }
        }
    }
    MubReport {
        passed: within <= tol && compl <= tol && cross <= tol && purity <= tol,
        tol,
        within_residual: within,
        completeness_residual: compl,
        cross_residual: cross,
        purity_residual: purity,
        cross_pairs_checked: pairs,
    }
}

/// All twelve MUB states, validated as a complete set of four MUBs.
pub fn build_mub_set(s: &SicSet) -> Result<MubSet> {
    let steiner = steiner_s9();
    let bases = steiner
        .striations()
        .iter()
        .map(|lines| {
            Ok([
                mub_from_triple(lines[0], s)?,
                mub_from_triple(lines[1], s)?,
                mub_from_triple(lines[2], s)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let set = MubSet { bases };
    let report = verify_mub_set(&set, VALIDATION_TOL);
    if !report.passed {
        return Err(Error::validation(
            "mub set",
            format!(
                "within {:e}, completeness {:e}, cross {:e}, purity {:e}",
                report.within_residual,
                report.completeness_residual,
                report.cross_residual,
                report.purity_residual
            ),
        ));
    }
    Ok(set)
}

/// Tolerance below which `pp_functional` certifies a witness.
pub const WITNESS_TOL: f64 = 1e-10;

/// Every striation (1-based, ascending) whose basis measurement drives the
/// post-Peierls functional of the three SIC states `t` to zero.
pub fn covering_witness(t: Triple, m: &MubSet, s: &SicSet) -> Result<Vec<usize>> {
    covering_witness_at(t, m, s, WITNESS_TOL)
}

/// [`covering_witness`] with an explicit certification tolerance.
pub fn covering_witness_at(t: Triple, m: &MubSet, s: &SicSet, tol: f64) -> Result<Vec<usize>> {
    let states = sic_triple_states(t, s)?;
    let mut out = Vec::new();
    for n in 1..=m.bases.len() {
        if pp_functional(&states, &m.measurement(n)?)? < tol {
            out.push(n);
        }
    }
    Ok(out)
}

fn sic_triple_states(t: Triple, s: &SicSet) -> Result<crate::compat::StateSet> {
    let n = s.len();
    for &i in &t {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
    }
    if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
        return Err(Error::invalid("sic triple", format!("{t:?} has repeated indices")));
    }
    let states = t.iter().map(|&i| s.kets()[i].density()).collect();
    crate::compat::StateSet::new(states)
}

/// For a witnessing striation, the basis state that annihilates each SIC
/// state of the triple, as positions within the basis. A perfect matching
/// has three distinct positions.
pub fn witness_matching(t: Triple, striation: usize, m: &MubSet, s: &SicSet) -> Result<Vec<Vec<usize>>> {
    let basis = m.basis(striation)?;
    t.iter()
        .map(|&i| {
            let rho = s.kets().get(i).ok_or(Error::IndexOutOfRange { index: i, len: s.len() })?.density();
            let mut zeros = Vec::new();
            for (pos, b) in basis.iter().enumerate() {
                if trace_product(&rho, &b.projector)?.abs() < WITNESS_TOL {
                    zeros.push(pos);
                }
            }
            Ok(zeros)
        })
        .collect()
}

/// One row of the covering table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringRow {
    pub triple: Triple,
    pub witnesses: Vec<usize>,
}

/// Covering witnesses for all `C(9,3) = 84` SIC triples, in lexicographic order.
pub fn covering_table(m: &MubSet, s: &SicSet) -> Result<Vec<CoveringRow>> {
    covering_table_at(m, s, WITNESS_TOL)
}

pub fn covering_table_at(m: &MubSet, s: &SicSet, tol: f64) -> Result<Vec<CoveringRow>> {
    let n = s.len();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t = [i, j, k];
                rows.push(CoveringRow {
                    triple: t,
                    witnesses: covering_witness_at(t, m, s, tol)?,
                });
            }
        }
    }
    Ok(rows)
}

/// Candidate check that `p` is within `tol` of a state: its reconstruction
/// validates as a density matrix.
pub fn is_state_vector(p: &SicProbVector, s: &SicSet, tol: f64) -> Result<bool> {
    Ok(reconstruct_from_probabilities(p, s)?.validate(tol).passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{Ket, Operator};
    use crate::sicgen::hesse_sic;

    #[test]
    fn first_striation_is_rows() {
        assert_eq!(steiner_s9().striation(1).unwrap(), &[[0, 1, 2], [3, 4, 5], [6, 7, 8]]);
        assert!(steiner_s9().striation(5).is_err());
    }

    #[test]
    fn design_properties() {
        let s = steiner_s9();
        assert_eq!(s.triples().count(), 12);
        for i in 0..9 {
            assert_eq!(s.lines_through(i).len(), 4);
        }
        for i in 0..9 {
            for j in i + 1..9 {
                let n = s.triples().filter(|l| l.contains(&i) && l.contains(&j)).count();
                assert_eq!(n, 1, "pair ({i},{j})");
            }
        }
        assert_eq!(s.line_through(0, 5), Some([0, 5, 7]));
        assert_eq!(s.locate([7, 5, 0]), Some((4, 0)));
    }

    #[test]
    fn striations_partition_the_grid() {
        for lines in steiner_s9().striations() {
            let mut pts: Vec<usize> = lines.iter().flatten().copied().collect();
            pts.sort_unstable();
            assert_eq!(pts, (0..9).collect::<Vec<_>>());
        }
    }

    #[test]
    fn row_line_state_is_all_ones_vector() {
        let m = mub_from_triple([0, 1, 2], &hesse_sic()).unwrap();
        let want = Ket::from_real(&[1.0, 1.0, 1.0]).unwrap().projector();
        assert!(want.distance(m.projector.matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn column_lines_are_computational_basis() {
        let s = hesse_sic();
        for (t, k) in [([0, 3, 6], 0), ([1, 4, 7], 1), ([2, 5, 8], 2)] {
            let m = mub_from_triple(t, &s).unwrap();
            let want = Ket::basis(3, k).unwrap().projector();
            assert!(want.distance(m.projector.matrix()).unwrap() < 1e-12, "{t:?}");
        }
    }

    #[test]
    fn non_line_is_rejected() {
        assert_eq!(
            mub_from_triple([0, 1, 3], &hesse_sic()).unwrap_err(),
            Error::NotALine([0, 1, 3])
        );
    }

    #[test]
    fn hesse_mub_set_verifies() {
        let s = hesse_sic();
        let m = build_mub_set(&s).unwrap();
        assert_eq!(m.bases().len(), 4);
        let r = verify_mub_set(&m, 1e-10);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.cross_pairs_checked, 54);
    }

    #[test]
    fn each_mub_state_orthogonal_to_exactly_its_triple() {
        let s = hesse_sic();
        let m = build_mub_set(&s).unwrap();
        for st in m.states() {
            let zeros: Vec<usize> = (0..9)
                .filter(|&i| trace_product(&st.projector, s.projector(i).unwrap()).unwrap().abs() < 1e-10)
                .collect();
            assert_eq!(zeros, st.triple.to_vec());
        }
    }

    #[test]
    fn repeated_basis_fails_cross_condition() {
        let m = build_mub_set(&hesse_sic()).unwrap();
        let mut bases = m.bases().to_vec();
        bases[1] = bases[0].clone();
        let r = verify_mub_set(&MubSet::from_bases(bases), 1e-10);
        assert!(!r.passed);
        assert!((r.cross_residual - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn perturbed_state_fails() {
        let m = build_mub_set(&hesse_sic()).unwrap();
        let mut bases = m.bases().to_vec();
        let e = 1e-3f64;
        let rotated = Ket::from_real(&[e.cos(), e.sin(), 0.0]).unwrap();
        bases[1][0].projector = rotated.density();
        let r = verify_mub_set(&MubSet::from_bases(bases), 1e-6);
        assert!(!r.passed);
    }

    #[test]
    fn covering_examples() {
        let s = hesse_sic();
        let m = build_mub_set(&s).unwrap();
        assert!(covering_witness([0, 1, 4], &m, &s).unwrap().contains(&4));
        assert!(covering_witness([0, 1, 2], &m, &s).unwrap().contains(&2));
        let matching = witness_matching([0, 1, 4], 4, &m, &s).unwrap();
        // (057) kills psi_0, (138) kills psi_1, (246) kills psi_4
        assert_eq!(matching, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn every_triple_is_covered() {
        let s = hesse_sic();
        let m = build_mub_set(&s).unwrap();
        let table = covering_table(&m, &s).unwrap();
        assert_eq!(table.len(), 84);
        assert!(table.iter().all(|r| !r.witnesses.is_empty()));
    }

    #[test]
    fn covering_rejects_repeated_index() {
        let s = hesse_sic();
        let m = build_mub_set(&s).unwrap();
        assert!(covering_witness([0, 0, 1], &m, &s).is_err());
        assert!(covering_witness([0, 1, 9], &m, &s).is_err());
    }
}
