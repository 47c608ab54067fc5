//! Exact volume of a bounded polytope `{x : a_j . x <= b_j}` by vertex
//! enumeration and a pulling triangulation.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::linalg::{det, null_space, rank, solve, Matrix};
use crate::algebra::{factorial, Rational};
use crate::error::{Error, Result};

/// The closed half-space `normal . x <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: Vec<Rational>,
    pub bound: Rational,
}

impl HalfSpace {
    pub fn new(normal: Vec<Rational>, bound: Rational) -> Self {
        Self { normal, bound }
    }

    fn slack(&self, x: &[Rational]) -> Rational {
        &self.bound - dot(&self.normal, x)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn vertices(constraints: &[HalfSpace], dim: usize) -> Vec<Vec<Rational>> {
    let mut found = BTreeSet::new();
    for subset in subsets(constraints.len(), dim) {
        let a: Matrix = subset.iter().map(|&j| constraints[j].normal.clone()).collect();
        let b: Vec<Rational> = subset.iter().map(|&j| constraints[j].bound.clone()).collect();
        let Some((x, null)) = solve(&a, &b) else { continue };
        if null.is_empty() && constraints.iter().all(|h| !h.slack(&x).is_negative()) {
            found.insert(x);
        }
    }
    found.into_iter().collect()
}

fn affine_rank(points: &[&Vec<Rational>]) -> usize {
    let Some((first, rest)) = points.split_first() else { return 0 };
    let diffs: Matrix = rest.iter().map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect()).collect();
    if diffs.is_empty() {
        0
    } else {
        rank(&diffs)
    }
}

/// Simplices (as vertex indices) of a pulling triangulation of the face spanned by `face`.
fn triangulate(
    face: &[usize],
    dim: usize,
    verts: &[Vec<Rational>],
    tight: &[BTreeSet<usize>],
    constraint_count: usize,
) -> Vec<Vec<usize>> {
    if dim == 0 {
        return vec![vec![face[0]]];
    }
    let apex = face[0];
    let mut facets = BTreeSet::new();
    for j in 0..constraint_count {
        let sub: Vec<usize> = face.iter().copied().filter(|&v| tight[v].contains(&j)).collect();
        if sub.len() == face.len() || sub.contains(&apex) || sub.len() < dim {
            continue;
        }
        let pts: Vec<&Vec<Rational>> = sub.iter().map(|&v| &verts[v]).collect();
        if affine_rank(&pts) == dim - 1 {
            facets.insert(sub);
        }
    }
    let mut out = Vec::new();
    for facet in facets {
        for mut simplex in triangulate(&facet, dim - 1, verts, tight, constraint_count) {
            simplex.push(apex);
            out.push(simplex);
        }
    }
    out
}

/// Lebesgue volume of `{x in Q^dim : h.normal . x <= h.bound for all h}`.
/// A lower-dimensional polytope has volume 0.
pub fn polytope_volume(constraints: &[HalfSpace], dim: usize) -> Result<Rational> {
    if constraints.iter().any(|h| h.normal.len() != dim) {
        return Err(Error::Invalid(format!("half-space normals must have length {dim}")));
    }
    if dim == 0 {
        return if constraints.iter().all(|h| !h.bound.is_negative()) {
            Ok(Rational::from_integer(1.into()))
        } else {
            Err(Error::EmptyPolytope)
        };
    }
    let normals: Matrix = constraints.iter().map(|h| h.normal.clone()).collect();
    if normals.is_empty() || rank(&normals) < dim {
        return Err(Error::UnboundedPolytope);
    }
    let verts = vertices(constraints, dim);
    if verts.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    // extreme rays of the recession cone lie on dim-1 tight normals
    for subset in subsets(constraints.len(), dim - 1) {
        let a: Matrix = subset.iter().map(|&j| constraints[j].normal.clone()).collect();
        let null = null_space(&a, dim);
        if null.len() != 1 {
            continue;
        }
        for sign in [1, -1] {
            let y: Vec<Rational> = null[0].iter().map(|v| v * Rational::from_integer(sign.into())).collect();
            if constraints.iter().all(|h| !dot(&h.normal, &y).is_positive()) {
                return Err(Error::UnboundedPolytope);
            }
        }
    }
    let refs: Vec<&Vec<Rational>> = verts.iter().collect();
    if affine_rank(&refs) < dim {
        return Ok(Rational::zero());
    }
    let tight: Vec<BTreeSet<usize>> = verts
        .iter()
        .map(|v| (0..constraints.len()).filter(|&j| constraints[j].slack(v).is_zero()).collect())
        .collect();
    let all: Vec<usize> = (0..verts.len()).collect();
    let mut total = Rational::zero();
    for simplex in triangulate(&all, dim, &verts, &tight, constraints.len()) {
        let base = &verts[simplex[0]];
        let edges: Matrix =
            simplex[1..].iter().map(|&v| verts[v].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        total += det(&edges).abs();
    }
    Ok(total / Rational::from_integer(factorial(dim as u32)))
}
