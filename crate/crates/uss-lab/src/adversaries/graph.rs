//! Entanglement graphs over parties and their connected components.
//!
//! An edge `(u, v)` is present exactly when the two parties' joint reduced
//! state is not a product of the marginals (trace distance above 1e-9) —
//! which also flags purely classical correlation, by design.

use serde::Serialize;

use crate::error::Result;
use crate::qsim::{trace_distance, DensityMatrix, TOL_STRUCT};

#[derive(Debug, Clone, Serialize)]
pub struct EntanglementGraph {
    pub parties: usize,
    /// Unordered pairs, 1-based party indices, `u < v`.
    pub edges: Vec<(usize, usize)>,
}

impl EntanglementGraph {
    pub fn empty(parties: usize) -> Self {
        Self {
            parties,
            edges: Vec::new(),
        }
    }

    pub fn with_edges(parties: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Self { parties, edges }
    }

    /// Star with every other party linked to `center`.
    pub fn star(parties: usize, center: usize) -> Self {
        Self::with_edges(
            parties,
            (1..=parties)
                .filter(|&p| p != center)
                .map(|p| (p, center))
                .collect(),
        )
    }

    pub fn components(&self) -> usize {
        let mut uf: Vec<usize> = (0..=self.parties).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            if uf[x] != x {
                let root = find(uf, uf[x]);
                uf[x] = root;
            }
            uf[x]
        }
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut uf, u), find(&mut uf, v));
            if ru != rv {
                uf[ru] = rv;
            }
        }
        (1..=self.parties)
            .map(|p| find(&mut uf, p))
            .collect::<std::collections::BTreeSet<_>>()
            .len()
    }

    pub fn is_connected(&self) -> bool {
        self.components() <= 1
    }
}

/// Build the graph of a shared auxiliary state: `regs[i]` lists party
/// `i + 1`'s qubits. Returns the graph and its component count.
pub fn entanglement_components(
    aux: &DensityMatrix,
    regs: &[Vec<usize>],
) -> Result<(EntanglementGraph, usize)> {
    let n = regs.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if regs[u].is_empty() || regs[v].is_empty() {
                continue;
            }
            let mut joint_qubits = regs[u].clone();
            joint_qubits.extend(&regs[v]);
            let joint = aux.partial_trace(&joint_qubits)?;
            let mu = aux.partial_trace(&regs[u])?;
            let mv = aux.partial_trace(&regs[v])?;
            if trace_distance(&joint, &mu.tensor(&mv)?)? > TOL_STRUCT {
                edges.push((u + 1, v + 1));
            }
        }
    }
    let graph = EntanglementGraph::with_edges(n, edges);
    let components = graph.components();
    Ok((graph, components))
}
