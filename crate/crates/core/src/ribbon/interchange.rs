use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GraphError, Permutation, RibbonGraph};

/// Graph interchange record. Half-edges and labels are 1-based; `labels` maps
/// the smallest half-edge of each boundary cycle (as a string key) to its label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub half_edges: usize,
    pub gamma0: Vec<Vec<usize>>,
    pub gamma1: Vec<Vec<usize>>,
    pub labels: BTreeMap<String, usize>,
}

fn one_based(p: &Permutation) -> Vec<Vec<usize>> {
    p.cycles().into_iter().map(|c| c.into_iter().map(|i| i + 1).collect()).collect()
}

fn zero_based(size: usize, cycles: &[Vec<usize>]) -> Result<Permutation, GraphError> {
    let mut zb = Vec::with_capacity(cycles.len());
    for c in cycles {
        let mut cycle = Vec::with_capacity(c.len());
        for &i in c {
            if i == 0 || i > size {
                return Err(GraphError::NotPermutation(format!("half-edge {i} out of range 1..={size}")));
            }
            cycle.push(i - 1);
        }
        zb.push(cycle);
    }
    Permutation::from_cycles(size, &zb).ok_or_else(|| GraphError::NotPermutation(format!("{cycles:?}")))
}

impl From<&RibbonGraph> for GraphJson {
    fn from(g: &RibbonGraph) -> Self {
        let labels = g
            .gamma2()
            .cycles()
            .iter()
            .zip(g.labels())
            .map(|(c, &l)| ((c[0] + 1).to_string(), l + 1))
            .collect();
        Self { half_edges: g.half_edges(), gamma0: one_based(g.gamma0()), gamma1: one_based(g.gamma1()), labels }
    }
}

impl TryFrom<&GraphJson> for RibbonGraph {
    type Error = GraphError;

    fn try_from(j: &GraphJson) -> Result<Self, GraphError> {
        let gamma0 = zero_based(j.half_edges, &j.gamma0)?;
        let gamma1 = zero_based(j.half_edges, &j.gamma1)?;
        let gamma2 = gamma0.inverse().compose(&gamma1);
        let cycles = gamma2.cycles();
        let mut labels = Vec::with_capacity(cycles.len());
        for c in &cycles {
            // any point of the cycle may serve as its representative
            let label = c
                .iter()
                .find_map(|i| j.labels.get(&(i + 1).to_string()))
                .ok_or(GraphError::BadLabeling(cycles.len()))?;
            if *label == 0 {
                return Err(GraphError::BadLabeling(cycles.len()));
            }
            labels.push(label - 1);
        }
        if j.labels.len() != cycles.len() {
            return Err(GraphError::BadLabeling(cycles.len()));
        }
        RibbonGraph::new(gamma0, gamma1, labels)
    }
}
