//! Edge-length coordinates on a cell, the perimeter map, and the 2-form
//! `Omega = 1/2 sum_k omega_k` with `omega_k = sum_{i<j} dl_{s_i} ^ dl_{s_j}`
//! over the edge sequence `s` of boundary `k`.
//!
//! Forms are antisymmetric matrices `M` standing for `sum_{a<b} M_ab dl_a ^ dl_b`,
//! so that the top power `Omega^d / d!` has density `Pf(M)`.

use num_traits::{One, Zero};

use super::linalg::{det, inverse, mul, mul_vec, transpose, zeros, Matrix};
use super::{pfaffian, GraphError, HalfSpace, RibbonGraph};
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// `tau_i = sum_{j=1}^{d(i)-1} (-1)^j d/dl_{gamma0^j i}` as a vector over edges.
pub fn tau_vector(graph: &RibbonGraph, half_edge: usize) -> Vec<i64> {
    let edge = graph.edge_index();
    let g0 = graph.gamma0();
    let mut degree = 1;
    let mut h = g0.apply(half_edge);
    while h != half_edge {
        degree += 1;
        h = g0.apply(h);
    }
    let mut out = vec![0; graph.edge_count()];
    let mut h = half_edge;
    for j in 1..degree {
        h = g0.apply(h);
        out[edge[h]] += if j % 2 == 0 { 1 } else { -1 };
    }
    out
}

/// `T_i = tau_i + tau_{gamma1 i}`.
pub fn twist_vector(graph: &RibbonGraph, half_edge: usize) -> Vec<i64> {
    let a = tau_vector(graph, half_edge);
    let b = tau_vector(graph, graph.gamma1().apply(half_edge));
    a.iter().zip(&b).map(|(x, y)| x + y).collect()
}

/// Edge indices met walking a boundary cycle from `start`.
pub fn boundary_sequence(graph: &RibbonGraph, start: usize) -> Vec<usize> {
    let edge = graph.edge_index();
    let g2 = graph.gamma2();
    let mut out = vec![edge[start]];
    let mut h = g2.apply(start);
    while h != start {
        out.push(edge[h]);
        h = g2.apply(h);
    }
    out
}

/// Boundary starting half-edges: the smallest point of each boundary cycle, in cycle order.
pub fn default_starts(graph: &RibbonGraph) -> Vec<usize> {
    graph.gamma2().cycles().iter().map(|c| c[0]).collect()
}

/// `Omega` over all edges, with one starting half-edge per boundary cycle.
pub fn omega_matrix(graph: &RibbonGraph, starts: &[usize]) -> Result<Matrix> {
    let e = graph.edge_count();
    let boundary = graph.boundary_index();
    let mut seen = vec![false; graph.boundary_count()];
    for &s in starts {
        if s >= graph.half_edges() || seen[boundary[s]] {
            return Err(Error::Invalid(format!("starting half-edges {starts:?} must hit each boundary once")));
        }
        seen[boundary[s]] = true;
    }
    if starts.len() != graph.boundary_count() {
        return Err(Error::Invalid(format!("expected {} starting half-edges", graph.boundary_count())));
    }
    let half = Rational::new(1.into(), 2.into());
    let mut m = zeros(e, e);
    for &s in starts {
        let seq = boundary_sequence(graph, s);
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                m[seq[i]][seq[j]] += &half;
                m[seq[j]][seq[i]] -= &half;
            }
        }
    }
    Ok(m)
}

/// `n x e` matrix whose row `k` gives the perimeter of the boundary labeled `k`.
pub fn perimeter_matrix(graph: &RibbonGraph) -> Matrix {
    let mut p = zeros(graph.boundary_count(), graph.edge_count());
    let edge = graph.edge_index();
    let label = graph.boundary_label_of();
    for h in 0..graph.half_edges() {
        p[label[h]][edge[h]] += Rational::one();
    }
    p
}

/// Covector `iota_{T} Omega` for the twist field of the edge through `half_edge`.
pub fn contraction(graph: &RibbonGraph, starts: &[usize], half_edge: usize) -> Result<Vec<Rational>> {
    let m = omega_matrix(graph, starts)?;
    let t: Vec<Rational> = twist_vector(graph, half_edge).into_iter().map(|x| Rational::from_integer(x.into())).collect();
    // iota_X (dl_a ^ dl_b) = X_a dl_b - X_b dl_a
    let e = graph.edge_count();
    Ok((0..e).map(|b| (0..e).fold(Rational::zero(), |acc, a| acc + &t[a] * &m[a][b])).collect())
}

/// `iota_{T_i} Omega + 2 dl_i`; lies in the span of the `dp_k` when the duality identity holds.
pub fn duality_defect(graph: &RibbonGraph, starts: &[usize], half_edge: usize) -> Result<Vec<Rational>> {
    let mut c = contraction(graph, starts, half_edge)?;
    c[graph.edge_index()[half_edge]] += Rational::from_integer(2.into());
    Ok(c)
}

/// `Omega` restricted to the level set `{p = L}` of a trivalent cell, in the
/// chart given by the free edges. Dependent edges satisfy
/// `l_dep = base * L - slope * l_free`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellForm {
    pub free: Vec<usize>,
    pub dependent: Vec<usize>,
    pub matrix: Matrix,
    /// Inverse of the perimeter columns of the dependent edges (rows by dependent edge, columns by label).
    pub base: Matrix,
    pub slope: Matrix,
    /// Determinant of the dependent perimeter columns.
    pub chart_determinant: Rational,
}

impl CellForm {
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    pub fn pfaffian(&self) -> Result<Rational> {
        pfaffian(&self.matrix)
    }

    /// The cell `{l > 0, p = L}` as half-spaces in the free coordinates.
    pub fn halfspaces(&self, lengths: &[Rational]) -> Vec<HalfSpace> {
        let m = self.free.len();
        let mut out = Vec::with_capacity(m + self.dependent.len());
        for i in 0..m {
            let mut normal = vec![Rational::zero(); m];
            normal[i] = -Rational::one();
            out.push(HalfSpace::new(normal, Rational::zero()));
        }
        let offsets = mul_vec(&self.base, lengths);
        for (row, bound) in self.slope.iter().zip(offsets) {
            out.push(HalfSpace::new(row.clone(), bound));
        }
        out
    }
}

/// First `n`-subset of edges (in lexicographic order) with invertible perimeter columns.
fn first_chart(p: &Matrix, e: usize) -> Option<Vec<usize>> {
    let n = p.len();
    let mut pick: Vec<usize> = (0..n).collect();
    loop {
        let cols: Matrix = p.iter().map(|row| pick.iter().map(|&j| row[j].clone()).collect()).collect();
        if !det(&cols).is_zero() {
            return Some(pick);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if pick[i] < e - n + i {
                break;
            }
        }
        pick[i] += 1;
        for j in i + 1..n {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Restricts `Omega` on a trivalent graph, eliminating the edges in
/// `eliminate` (or the first admissible set when `None`).
pub fn cell_form(graph: &RibbonGraph, starts: &[usize], eliminate: Option<&[usize]>) -> Result<CellForm> {
    if !graph.is_trivalent() {
        return Err(GraphError::NotTrivalent.into());
    }
    let e = graph.edge_count();
    let n = graph.boundary_count();
    let omega = omega_matrix(graph, starts)?;
    let p = perimeter_matrix(graph);
    let dependent: Vec<usize> = match eliminate {
        Some(d) => {
            let mut d = d.to_vec();
            d.sort_unstable();
            d.dedup();
            if d.len() != n || d.iter().any(|&j| j >= e) {
                return Err(Error::Invalid(format!("eliminate exactly {n} distinct edges")));
            }
            d
        }
        None => first_chart(&p, e).ok_or(Error::DegenerateElimination)?,
    };
    let free: Vec<usize> = (0..e).filter(|j| !dependent.contains(j)).collect();
    let columns = |set: &[usize]| -> Matrix { p.iter().map(|row| set.iter().map(|&j| row[j].clone()).collect()).collect() };
    let p_dep = columns(&dependent);
    let chart_determinant = det(&p_dep);
    let base = inverse(&p_dep).ok_or(Error::DegenerateElimination)?;
    let slope = mul(&base, &columns(&free));
    let mut jacobian = zeros(e, free.len());
    for (k, &f) in free.iter().enumerate() {
        jacobian[f][k] = Rational::one();
    }
    for (i, &d) in dependent.iter().enumerate() {
        for k in 0..free.len() {
            jacobian[d][k] = -slope[i][k].clone();
        }
    }
    let matrix = mul(&mul(&transpose(&jacobian), &omega), &jacobian);
    Ok(CellForm { free, dependent, matrix, base, slope, chart_determinant })
}
