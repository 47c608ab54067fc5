//! Volumes by integrating `e^Omega` cell by cell over the fixed-perimeter
//! ribbon graph complex. Only top-dimensional (trivalent) cells carry
//! volume; each is weighted by the inverse order of its labeled automorphism group.

use num_traits::{Signed, Zero};

use super::enumerate::{enumerate_with_limit, half_edge_limit};
use super::forms::{cell_form, default_starts, perimeter_matrix};
use super::linalg::solve;
use super::{polytope_volume, RibbonGraph};
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// `|Pf| * vol{l > 0, p = L} / aut` for one labeled trivalent graph.
pub fn cell_contribution(graph: &RibbonGraph, aut_order: usize, lengths: &[Rational]) -> Result<Rational> {
    let form = cell_form(graph, &default_starts(graph), None)?;
    let pf = form.pfaffian()?.abs();
    let region = match polytope_volume(&form.halfspaces(lengths), form.dimension()) {
        Ok(v) => v,
        Err(Error::EmptyPolytope) => return Ok(Rational::zero()),
        Err(e) => return Err(e),
    };
    Ok(pf * region / Rational::from_integer(aut_order.into()))
}

/// Whether the perimeter system has a unique, strictly positive solution.
fn has_positive_metric(graph: &RibbonGraph, lengths: &[Rational]) -> Result<bool> {
    match solve(&perimeter_matrix(graph), lengths) {
        None => Ok(false),
        Some((x, null)) if null.is_empty() => Ok(x.iter().all(Rational::is_positive)),
        Some(_) => Err(Error::Invalid("zero-dimensional cell with free edge lengths".into())),
    }
}

pub fn brute_volume(g: u32, n: usize, lengths: &[Rational]) -> Result<Rational> {
    brute_volume_with_limit(g, n, lengths, half_edge_limit())
}

/// Volume at the perimeters `lengths`. In dimension zero the complex is a
/// finite set of metric graphs, which are counted instead.
pub fn brute_volume_with_limit(g: u32, n: usize, lengths: &[Rational], limit: usize) -> Result<Rational> {
    if lengths.len() != n {
        return Err(Error::PointLength { got: lengths.len(), expected: n });
    }
    if lengths.iter().any(|l| !l.is_positive()) {
        return Err(Error::Invalid("perimeters must be positive".into()));
    }
    let zero_dimensional = 6 * g as i64 - 6 + 2 * n as i64 == 0;
    let classes = enumerate_with_limit(g, n, !zero_dimensional, limit)?;
    let mut total = Rational::zero();
    for class in &classes {
        for labeled in &class.labelings {
            if zero_dimensional {
                if has_positive_metric(&labeled.graph, lengths)? {
                    total += Rational::from_integer(1.into()) / Rational::from_integer(labeled.aut_order.into());
                }
            } else {
                total += cell_contribution(&labeled.graph, labeled.aut_order, lengths)?;
            }
        }
    }
    Ok(total)
}
