//! Ribbon graphs in the permutation model, their enumeration, the Kontsevich
//! form on top-dimensional cells, and cell-by-cell volumes for small types.
//!
//! Half-edges are `0..2k`. `gamma0` rotates half-edges around vertices,
//! `gamma1` pairs them into edges, and `gamma2 = gamma0^-1 ∘ gamma1` (apply
//! `gamma1` first) walks the boundary cycles. Edges, vertices and boundaries
//! are indexed by their cycles in smallest-point order.

mod brute;
mod enumerate;
mod forms;
mod interchange;
#[allow(clippy::needless_range_loop)]
pub mod linalg;
mod perm;
#[allow(clippy::needless_range_loop)]
mod pfaffian;
mod polytope;

pub use brute::{brute_volume, brute_volume_with_limit, cell_contribution};
pub use enumerate::{
    automorphisms, candidates, canonical_code, classify, enumerate, enumerate_with_limit, half_edge_limit,
    GraphClass, LabeledGraph, DEFAULT_HALF_EDGE_LIMIT, HALF_EDGE_LIMIT_ENV,
};
pub use forms::{
    boundary_sequence, cell_form, contraction, default_starts, duality_defect, omega_matrix, perimeter_matrix, tau_vector,
    twist_vector, CellForm,
};
pub use interchange::GraphJson;
pub use perm::Permutation;
pub use pfaffian::pfaffian;
pub use polytope::{polytope_volume, HalfSpace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("permutations act on different sets ({0} and {1} points)")]
    SizeMismatch(usize, usize),
    #[error("half-edge count must be even and positive, got {0}")]
    OddHalfEdges(usize),
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("gamma1 fixes half-edge {0}")]
    Gamma1FixedPoint(usize),
    #[error("gamma1 is not an involution at half-edge {0}")]
    Gamma1NotInvolution(usize),
    #[error("gamma0 has a cycle of length {len} through half-edge {at}")]
    ShortVertexCycle { len: usize, at: usize },
    #[error("gamma0 and gamma1 do not act transitively")]
    Disconnected,
    #[error("boundary labeling is not a bijection onto 1..={0}")]
    BadLabeling(usize),
    #[error("v - e + n = {0} does not give a nonnegative integer genus")]
    InvalidType(i64),
    #[error("graph is not trivalent")]
    NotTrivalent,
}

/// A validated ribbon graph with a boundary labeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RibbonGraph {
    gamma0: Permutation,
    gamma1: Permutation,
    gamma2: Permutation,
    /// `labels[b]` is the 0-based label of boundary cycle `b`.
    labels: Vec<usize>,
}

impl RibbonGraph {
    /// Validates the pair and labels boundary cycle `b` with `labels[b]` (0-based).
    pub fn new(gamma0: Permutation, gamma1: Permutation, labels: Vec<usize>) -> Result<Self, GraphError> {
        let size = gamma0.len();
        if gamma1.len() != size {
            return Err(GraphError::SizeMismatch(size, gamma1.len()));
        }
        if size == 0 || size % 2 == 1 {
            return Err(GraphError::OddHalfEdges(size));
        }
        for h in 0..size {
            let p = gamma1.apply(h);
            if p == h {
                return Err(GraphError::Gamma1FixedPoint(h));
            }
            if gamma1.apply(p) != h {
                return Err(GraphError::Gamma1NotInvolution(h));
            }
        }
        for cycle in gamma0.cycles() {
            if cycle.len() < 3 {
                return Err(GraphError::ShortVertexCycle { len: cycle.len(), at: cycle[0] });
            }
        }
        if !is_transitive(&gamma0, &gamma1) {
            return Err(GraphError::Disconnected);
        }
        let gamma2 = gamma0.inverse().compose(&gamma1);
        let n = gamma2.cycles().len();
        let mut seen = vec![false; n];
        if labels.len() != n {
            return Err(GraphError::BadLabeling(n));
        }
        for &l in &labels {
            if l >= n || seen[l] {
                return Err(GraphError::BadLabeling(n));
            }
            seen[l] = true;
        }
        Ok(Self { gamma0, gamma1, gamma2, labels })
    }

    /// Labels boundaries in cycle order.
    pub fn with_default_labels(gamma0: Permutation, gamma1: Permutation) -> Result<Self, GraphError> {
        let n = gamma0.inverse().compose(&gamma1).cycles().len();
        Self::new(gamma0, gamma1, (0..n).collect())
    }

    pub fn relabeled(&self, labels: Vec<usize>) -> Result<Self, GraphError> {
        Self::new(self.gamma0.clone(), self.gamma1.clone(), labels)
    }

    pub fn gamma0(&self) -> &Permutation {
        &self.gamma0
    }

    pub fn gamma1(&self) -> &Permutation {
        &self.gamma1
    }

    pub fn gamma2(&self) -> &Permutation {
        &self.gamma2
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn half_edges(&self) -> usize {
        self.gamma0.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.gamma0.cycles().len()
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges() / 2
    }

    pub fn boundary_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_trivalent(&self) -> bool {
        self.gamma0.cycles().iter().all(|c| c.len() == 3)
    }

    /// Edge index of each half-edge.
    pub fn edge_index(&self) -> Vec<usize> {
        self.gamma1.cycle_index()
    }

    /// Boundary cycle index of each half-edge.
    pub fn boundary_index(&self) -> Vec<usize> {
        self.gamma2.cycle_index()
    }

    /// Label (0-based) of the boundary each half-edge lies on.
    pub fn boundary_label_of(&self) -> Vec<usize> {
        self.boundary_index().into_iter().map(|b| self.labels[b]).collect()
    }

    /// `(g, n)` with `g = 1 - (v - e + n)/2`.
    pub fn graph_type(&self) -> Result<(u32, usize), GraphError> {
        graph_type(self)
    }
}

pub fn graph_type(graph: &RibbonGraph) -> Result<(u32, usize), GraphError> {
    let v = graph.vertex_count() as i64;
    let e = graph.edge_count() as i64;
    let n = graph.boundary_count() as i64;
    let chi = v - e + n;
    if chi % 2 != 0 || chi > 2 {
        return Err(GraphError::InvalidType(chi));
    }
    Ok(((2 - chi) as u32 / 2, n as usize))
}

/// Validates and labels, the `make_graph` entry point.
pub fn make_graph(gamma0: Permutation, gamma1: Permutation, labels: Vec<usize>) -> Result<RibbonGraph, GraphError> {
    RibbonGraph::new(gamma0, gamma1, labels)
}

fn is_transitive(a: &Permutation, b: &Permutation) -> bool {
    let size = a.len();
    let mut seen = vec![false; size];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(h) = stack.pop() {
        for next in [a.apply(h), b.apply(h)] {
            if !seen[next] {
                seen[next] = true;
                count += 1;
                stack.push(next);
            }
        }
    }
    count == size
}
