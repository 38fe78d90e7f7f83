//! Breadth-first connection structure over the qubits of an experiment.

use serde::{Deserialize, Serialize};

use crate::coupling_map::{CouplingMap, Qubit};
use crate::error::{Error, Result};

/// One attachment step: `new_node` joins the connected set through `anchor`,
/// which is the root or an earlier `new_node`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathPair {
    pub new_node: Qubit,
    pub anchor: Qubit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionPath {
    pub root: Qubit,
    pub requested: usize,
    pub pairs: Vec<PathPair>,
}

impl ConnectionPath {
    /// Root first, then each new node in attachment order.
    pub fn involved(&self) -> Vec<Qubit> {
        std::iter::once(self.root)
            .chain(self.pairs.iter().map(|p| p.new_node))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Grows a spanning tree of `requested` qubits from `root`.
///
/// Connected qubits are processed in insertion order; each one scans its
/// undirected neighbours in ascending index order and attaches every qubit not
/// yet in the tree, until `requested - 1` pairs exist.
pub fn create_path(map: &CouplingMap, root: Qubit, requested: usize) -> Result<ConnectionPath> {
    if requested == 0 || requested > map.num_qubits() {
        return Err(Error::InvalidQubitCount {
            requested,
            num_qubits: map.num_qubits(),
        });
    }
    if !map.contains(root) {
        return Err(Error::QubitOutOfRange {
            qubit: root,
            width: map.num_qubits(),
        });
    }
    let mut budget = requested - 1;
    let mut pairs = Vec::with_capacity(budget);
    let mut connected = vec![root];
    let mut in_tree = vec![false; map.num_qubits()];
    in_tree[root] = true;
    let mut cursor = 0;
    while budget > 0 && cursor < connected.len() {
        let v = connected[cursor];
        for &x in map.neighbors(v) {
            if budget == 0 {
                break;
            }
            if !in_tree[x] {
                in_tree[x] = true;
                pairs.push(PathPair {
                    new_node: x,
                    anchor: v,
                });
                connected.push(x);
                budget -= 1;
            }
        }
        cursor += 1;
    }
    if budget > 0 {
        return Err(Error::Unreachable {
            root,
            requested,
            available: connected.len(),
        });
    }
    Ok(ConnectionPath {
        root,
        requested,
        pairs,
    })
}
