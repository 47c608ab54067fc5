//! Enumeration of ribbon graphs of a given type up to equivalence.
//!
//! Candidates fix `gamma1 = (1 2)(3 4)...` and run over every `gamma0` with
//! the right number of vertices, all of degree at least 3. Equivalence
//! classes are separated by a canonical code: for a root half-edge `r`, the
//! half-edges are renumbered in discovery order (`r`, then `gamma1 r`, then
//! the `gamma0`-images in order, each followed by its partner), and the code
//! lists the new `gamma0`. The smallest code over all roots identifies the
//! class. Because automorphisms of a connected graph act freely on
//! half-edges, the number of roots attaining the minimum is `|Aut|`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{Permutation, RibbonGraph};
use crate::error::{Error, Result};

pub const DEFAULT_HALF_EDGE_LIMIT: usize = 12;
pub const HALF_EDGE_LIMIT_ENV: &str = "SYMVOL_MAX_HALF_EDGES";

/// Half-edge limit from the environment, falling back to the default.
pub fn half_edge_limit() -> usize {
    std::env::var(HALF_EDGE_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_HALF_EDGE_LIMIT)
}

/// One boundary labeling of a class, with the order of the automorphism
/// group that also preserves labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: RibbonGraph,
    pub aut_order: usize,
}

/// An equivalence class of unlabeled graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClass {
    /// Canonical representative; boundary labels follow cycle order.
    pub graph: RibbonGraph,
    pub aut_order: usize,
    pub labelings: Vec<LabeledGraph>,
}

/// Discovery-order code from `root`, plus the relabeling old -> new.
/// With `labeled`, boundary labels of the renumbered half-edges are appended.
fn rooted_code(graph: &RibbonGraph, root: usize, labeled: Option<&[usize]>) -> (Vec<usize>, Vec<usize>) {
    let size = graph.half_edges();
    let g0 = graph.gamma0();
    let g1 = graph.gamma1();
    let mut new = vec![usize::MAX; size];
    let mut order = Vec::with_capacity(size);
    new[root] = 0;
    new[g1.apply(root)] = 1;
    order.push(root);
    order.push(g1.apply(root));
    let mut i = 0;
    while i < order.len() {
        let x = g0.apply(order[i]);
        if new[x] == usize::MAX {
            let y = g1.apply(x);
            new[x] = order.len();
            order.push(x);
            new[y] = order.len();
            order.push(y);
        }
        i += 1;
    }
    let mut code: Vec<usize> = order.iter().map(|&h| new[g0.apply(h)]).collect();
    if let Some(label_of) = labeled {
        code.extend(order.iter().map(|&h| label_of[h]));
    }
    (code, new)
}

/// Minimal code over all roots, the relabeling realizing it, and the number of roots attaining it.
fn min_code(graph: &RibbonGraph, labeled: bool) -> (Vec<usize>, Vec<usize>, usize) {
    let label_of = labeled.then(|| graph.boundary_label_of());
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut count = 0;
    for root in 0..graph.half_edges() {
        let (code, relabel) = rooted_code(graph, root, label_of.as_deref());
        match &best {
            Some((b, _)) if code > *b => {}
            Some((b, _)) if code == *b => count += 1,
            _ => {
                best = Some((code, relabel));
                count = 1;
            }
        }
    }
    let (code, relabel) = best.expect("graph has half-edges");
    (code, relabel, count)
}

/// Canonical code of the unlabeled (or labeled) graph; equal codes iff equivalent.
pub fn canonical_code(graph: &RibbonGraph, labeled: bool) -> Vec<usize> {
    min_code(graph, labeled).0
}

fn relabel(graph: &RibbonGraph, new: &[usize]) -> RibbonGraph {
    let r = Permutation::from_images(new.to_vec()).expect("relabeling is a bijection");
    let g0 = graph.gamma0().conjugate(&r);
    let g1 = graph.gamma1().conjugate(&r);
    let old_labels = graph.boundary_label_of();
    let g2 = g0.inverse().compose(&g1);
    let inv = r.inverse();
    let labels = g2.cycles().iter().map(|c| old_labels[inv.apply(c[0])]).collect();
    RibbonGraph::new(g0, g1, labels).expect("relabeling preserves validity")
}

/// All `alpha` with `alpha ∘ gamma_i = gamma_i ∘ alpha`; with `labeled`, also
/// preserving boundary labels.
pub fn automorphisms(graph: &RibbonGraph, labeled: bool) -> Vec<Permutation> {
    let size = graph.half_edges();
    let g0 = graph.gamma0();
    let g1 = graph.gamma1();
    let label_of = graph.boundary_label_of();
    let mut out = Vec::new();
    'target: for t in 0..size {
        let mut alpha = vec![usize::MAX; size];
        alpha[0] = t;
        let mut stack = vec![0];
        while let Some(h) = stack.pop() {
            for (src, dst) in [(g0.apply(h), g0.apply(alpha[h])), (g1.apply(h), g1.apply(alpha[h]))] {
                if alpha[src] == usize::MAX {
                    alpha[src] = dst;
                    stack.push(src);
                } else if alpha[src] != dst {
                    continue 'target;
                }
            }
        }
        let Some(p) = Permutation::from_images(alpha) else { continue };
        if labeled && (0..size).any(|h| label_of[p.apply(h)] != label_of[h]) {
            continue;
        }
        out.push(p);
    }
    out
}

/// Largest half-edge count a graph of type `(g, n)` can have: `12g - 12 + 6n`.
pub fn max_half_edges(g: u32, n: usize) -> usize {
    (12 * g as i64 - 12 + 6 * n as i64).max(0) as usize
}

/// Every `gamma0` on `2k` points with `v` cycles, all of length >= 3 (exactly 3 if `trivalent`).
fn vertex_rotations(size: usize, vertices: usize, trivalent: bool) -> Vec<Vec<usize>> {
    fn rec(
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        remaining: usize,
        cycles_left: usize,
        trivalent: bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cycles_left == 0 {
            if remaining == 0 {
                out.push(images.clone());
            }
            return;
        }
        let start = match used.iter().position(|u| !u) {
            Some(s) => s,
            None => return,
        };
        let (lo, hi) = if trivalent { (3, 3) } else { (3, remaining - 3 * (cycles_left - 1)) };
        if remaining < 3 * cycles_left || hi < lo {
            return;
        }
        used[start] = true;
        let mut cycle = vec![start];
        for len in lo..=hi {
            extend(images, used, &mut cycle, len, remaining, cycles_left, trivalent, out);
        }
        used[start] = false;
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        cycle: &mut Vec<usize>,
        len: usize,
        remaining: usize,
        cycles_left: usize,
        trivalent: bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cycle.len() == len {
            for k in 0..len {
                images[cycle[k]] = cycle[(k + 1) % len];
            }
            rec(images, used, remaining - len, cycles_left - 1, trivalent, out);
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cycle.push(x);
                extend(images, used, cycle, len, remaining, cycles_left, trivalent, out);
                cycle.pop();
                used[x] = false;
            }
        }
    }

    let mut out = Vec::new();
    if vertices == 0 {
        return out;
    }
    let mut images = vec![0; size];
    let mut used = vec![false; size];
    rec(&mut images, &mut used, size, vertices, trivalent, &mut out);
    out
}

/// All valid graphs of type `(g, n)` with the standard pairing as `gamma1`,
/// one per admissible `gamma0`. Duplicates up to equivalence are expected.
pub fn candidates(g: u32, n: usize, trivalent_only: bool) -> Vec<RibbonGraph> {
    let max = max_half_edges(g, n);
    // e - v = 2g - 2 + n
    let excess = 2 * g as i64 - 2 + n as i64;
    let mut out = Vec::new();
    for size in (2..=max).step_by(2) {
        if trivalent_only && size != max {
            continue;
        }
        let edges = (size / 2) as i64;
        let vertices = edges - excess;
        if vertices < 1 || 3 * vertices > size as i64 {
            continue;
        }
        let pairing = Permutation::standard_pairing(size);
        let rotations = vertex_rotations(size, vertices as usize, trivalent_only);
        let graphs: Vec<RibbonGraph> = rotations
            .into_par_iter()
            .filter_map(|images| {
                let g0 = Permutation::from_images(images)?;
                let graph = RibbonGraph::with_default_labels(g0, pairing.clone()).ok()?;
                (graph.boundary_count() == n).then_some(graph)
            })
            .collect();
        out.extend(graphs);
    }
    out
}

/// Sorts candidates into classes. The result does not depend on the order of `candidates`.
pub fn classify(candidates: &[RibbonGraph]) -> Vec<GraphClass> {
    let coded: Vec<(Vec<usize>, RibbonGraph, usize)> = candidates
        .par_iter()
        .map(|graph| {
            let (code, new, count) = min_code(graph, false);
            (code, relabel(graph, &new), count)
        })
        .collect();
    let mut classes: BTreeMap<Vec<usize>, (RibbonGraph, usize)> = BTreeMap::new();
    for (code, graph, aut) in coded {
        classes.entry(code).or_insert((graph, aut));
    }
    classes
        .into_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(graph, aut_order)| {
            let labelings = labelings(&graph);
            GraphClass { graph, aut_order, labelings }
        })
        .collect()
}

fn labelings(graph: &RibbonGraph) -> Vec<LabeledGraph> {
    let n = graph.boundary_count();
    let mut seen: BTreeMap<Vec<usize>, LabeledGraph> = BTreeMap::new();
    for labels in permutations(n) {
        let labeled = graph.relabeled(labels).expect("permutation of labels");
        let (code, new, count) = min_code(&labeled, true);
        seen.entry(code).or_insert_with(|| LabeledGraph { graph: relabel(&labeled, &new), aut_order: count });
    }
    seen.into_values().collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Equivalence classes of type `(g, n)` ribbon graphs, limited by [`half_edge_limit`].
pub fn enumerate(g: u32, n: usize, trivalent_only: bool) -> Result<Vec<GraphClass>> {
    enumerate_with_limit(g, n, trivalent_only, half_edge_limit())
}

pub fn enumerate_with_limit(g: u32, n: usize, trivalent_only: bool, limit: usize) -> Result<Vec<GraphClass>> {
    if 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(Error::Unstable { g, n });
    }
    let needed = max_half_edges(g, n);
    if needed > limit {
        return Err(Error::ResourceLimit { needed, limit });
    }
    Ok(classify(&candidates(g, n, trivalent_only)))
}
