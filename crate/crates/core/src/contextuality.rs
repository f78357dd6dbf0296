//! Orthogonality graphs and their exact chromatic number.
//!
//! Vertices are pure states, edges join orthogonal pairs. A graph whose
//! chromatic number exceeds the dimension cannot be coloured by a
//! noncontextual value assignment; the 9 Hesse SIC states together with the
//! 12 MUB states give such a graph in dimension 3 (chromatic number 4).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mub::build_mub_set;
use crate::qmath::{trace_product, DensityMatrix, Operator};
use crate::sicgen::hesse_sic;

/// Orthogonality tolerance on `tr(rho sigma)`.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;
/// Largest graph accepted by the exact colouring.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthoGraph {
    labels: Vec<String>,
    adjacency: Vec<Vec<bool>>,
}

impl OrthoGraph {
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut adjacency = vec![vec![false; n]; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::IndexOutOfRange { index: w, len: n });
                }
            }
            if u == v {
                return Err(Error::invalid("graph", format!("self-loop at vertex {u}")));
            }
            adjacency[u][v] = true;
            adjacency[v][u] = true;
        }
        Ok(OrthoGraph { labels, adjacency })
    }

    /// Vertices labelled by their index.
    pub fn unlabelled(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u][v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].iter().filter(|&&b| b).count()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.adjacency[u][v])
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// One `u v` label pair per line.
    pub fn to_edge_list(&self) -> String {
        self.edges()
            .iter()
            .map(|&(u, v)| format!("{} {}\n", self.labels[u], self.labels[v]))
            .collect()
    }

    /// `{"labels": [...], "edges": [[u, v], ...], "coloring": [...]}`.
    pub fn to_json(&self, coloring: Option<&Coloring>) -> serde_json::Value {
        let mut v = serde_json::json!({
            "labels": self.labels,
            "edges": self.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
        });
        if let Some(c) = coloring {
            v["coloring"] = serde_json::json!(c.assignment);
            v["num_colors"] = serde_json::json!(c.num_colors);
        }
        v
    }

    fn masks(&self) -> Vec<u64> {
        self.adjacency
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .fold(0u64, |m, (j, _)| m | (1 << j))
            })
            .collect()
    }
}

/// Edge iff `tr(rho_u rho_v) <= tol`. All states must be pure.
pub fn build_orthogonality_graph(states: &[DensityMatrix], labels: Vec<String>, tol: f64) -> Result<OrthoGraph> {
    if states.len() != labels.len() {
        return Err(Error::invalid(
            "graph",
            format!("{} states but {} labels", states.len(), labels.len()),
        ));
    }
    if let Some(first) = states.first() {
        for s in states {
            Error::check_dim(first.dim(), s.dim())?;
        }
    }
    for (i, s) in states.iter().enumerate() {
        let purity = s.purity();
        if (purity - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(
                "graph vertex",
                format!("state {i} is not rank one (purity {purity})"),
            ));
        }
    }
    let mut edges = Vec::new();
    for u in 0..states.len() {
        for v in u + 1..states.len() {
            if trace_product(&states[u], &states[v])? <= tol {
                edges.push((u, v));
            }
        }
    }
    OrthoGraph::new(labels, &edges)
}

/// The 9 Hesse SIC states (labels `0`..`8`) followed by the 12 MUB states
/// (labelled by their zero triple, e.g. `012`).
pub fn hesse_mub_graph(tol: f64) -> Result<OrthoGraph> {
    let s = hesse_sic();
    let m = build_mub_set(&s)?;
    let mut states: Vec<DensityMatrix> = s.states();
    let mut labels: Vec<String> = (0..9).map(|i| i.to_string()).collect();
    for st in m.states() {
        states.push(st.projector.clone());
        labels.push(st.triple.iter().map(|i| i.to_string()).collect());
    }
    build_orthogonality_graph(&states, labels, tol)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub assignment: Vec<usize>,
    pub num_colors: usize,
}

impl Coloring {
    pub fn is_proper(&self, g: &OrthoGraph) -> bool {
        self.assignment.len() == g.len()
            && self.assignment.iter().all(|&c| c < self.num_colors.max(1))
            && g.edges().iter().all(|&(u, v)| self.assignment[u] != self.assignment[v])
    }
}

/// Largest clique found by greedy extension from every seed vertex.
fn greedy_clique(adj: &[u64]) -> usize {
    let n = adj.len();
    let mut best = usize::from(n > 0);
    for seed in 0..n {
        let mut clique = 1u64 << seed;
        let mut size = 1;
        for (v, &nbrs) in adj.iter().enumerate() {
            if clique & (1 << v) == 0 && nbrs & clique == clique {
                clique |= 1 << v;
                size += 1;
            }
        }
        best = best.max(size);
    }
    best
}

/// DSATUR: colour the vertex with the most distinct neighbour colours next,
/// ties to larger degree, then lower index.
fn dsatur(adj: &[u64]) -> Vec<usize> {
    let n = adj.len();
    let mut color: Vec<Option<usize>> = vec![None; n];
    let mut neighbour_colors = vec![0u64; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v].is_none())
            .max_by(|&a, &b| {
                neighbour_colors[a]
                    .count_ones()
                    .cmp(&neighbour_colors[b].count_ones())
                    .then(adj[a].count_ones().cmp(&adj[b].count_ones()))
                    .then(b.cmp(&a))
            })
            .expect("uncoloured vertex remains");
        let c = (!neighbour_colors[v]).trailing_zeros() as usize;
        color[v] = Some(c);
        for (u, nc) in neighbour_colors.iter_mut().enumerate() {
            if adj[v] & (1 << u) != 0 {
                *nc |= 1 << c;
            }
        }
    }
    color.into_iter().map(|c| c.expect("all coloured")).collect()
}

/// Backtracking search for a proper `k`-colouring.
fn k_color(adj: &[u64], k: usize) -> Option<Vec<usize>> {
    fn go(adj: &[u64], k: usize, color: &mut [Option<usize>], used: usize) -> bool {
        let n = adj.len();
        let forbidden = |v: usize, color: &[Option<usize>]| {
            (0..n)
                .filter(|&u| adj[v] & (1 << u) != 0)
                .filter_map(|u| color[u])
                .fold(0u64, |m, c| m | (1 << c))
        };
        let next = (0..n).filter(|&v| color[v].is_none()).max_by(|&a, &b| {
            forbidden(a, color)
                .count_ones()
                .cmp(&forbidden(b, color).count_ones())
                .then(adj[a].count_ones().cmp(&adj[b].count_ones()))
                .then(b.cmp(&a))
        });
        let Some(v) = next else { return true };
        let banned = forbidden(v, color);
        // Colours beyond the first unused one are interchangeable.
        for c in 0..k.min(used + 1) {
            if banned & (1 << c) == 0 {
                color[v] = Some(c);
                if go(adj, k, color, used.max(c + 1)) {
                    return true;
                }
                color[v] = None;
            }
        }
        false
    }
    let mut color = vec![None; adj.len()];
    go(adj, k, &mut color, 0).then(|| color.into_iter().map(|c| c.expect("complete")).collect())
}

/// Exact chromatic number and an optimal colouring.
pub fn chromatic_number(g: &OrthoGraph) -> Result<(usize, Coloring)> {
    if g.len() > MAX_VERTICES {
        return Err(Error::TooManyVertices(g.len(), MAX_VERTICES));
    }
    let adj = g.masks();
    if adj.is_empty() {
        return Ok((0, Coloring { assignment: vec![], num_colors: 0 }));
    }
    let lower = greedy_clique(&adj);
    let mut best = dsatur(&adj);
    let mut upper = best.iter().max().map_or(0, |c| c + 1);
    for k in lower..upper {
        if let Some(c) = k_color(&adj, k) {
            best = c;
            upper = k;
            break;
        }
    }
    let coloring = Coloring {
        assignment: best,
        num_colors: upper,
    };
    if !coloring.is_proper(g) {
        return Err(Error::validation("colouring", "solver returned an improper colouring"));
    }
    Ok((upper, coloring))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CabelloReport {
    pub holds: bool,
    pub chromatic_number: usize,
    pub dim: usize,
    pub coloring: Coloring,
}

/// Holds iff the chromatic number exceeds the dimension.
pub fn cabello_criterion(g: &OrthoGraph, dim: usize) -> Result<CabelloReport> {
    let (chi, coloring) = chromatic_number(g)?;
    Ok(CabelloReport {
        holds: chi > dim,
        chromatic_number: chi,
        dim,
        coloring,
    })
}
