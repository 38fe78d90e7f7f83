//! Device topologies and reachability ranks.
//!
//! A [`CouplingMap`] is a directed graph over physical qubits where an edge
//! `(c, t)` means the device offers a native CNOT with control `c` and target
//! `t`. The rank of a qubit is the number of other qubits that can reach it
//! along directed edges; the highest-ranked qubit becomes the root of every
//! compiled circuit.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Qubit = usize;

const QX4: &str = include_str!("../maps/qx4.json");
const QX5: &str = include_str!("../maps/qx5.json");

/// Names accepted by [`CouplingMap::bundled`].
pub const BUNDLED: [&str; 2] = ["qx4", "qx5"];

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDocument {
    #[serde(default)]
    name: Option<String>,
    num_qubits: usize,
    edges: Vec<[Qubit; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingMap {
    name: String,
    num_qubits: usize,
    edges: Vec<(Qubit, Qubit)>,
    successors: Vec<Vec<Qubit>>,
    predecessors: Vec<Vec<Qubit>>,
    neighbors: Vec<Vec<Qubit>>,
}

impl CouplingMap {
    /// Validates the edge list and builds the adjacency views. Adjacency lists
    /// are kept in ascending qubit order.
    pub fn new(
        name: impl Into<String>,
        num_qubits: usize,
        edges: impl IntoIterator<Item = (Qubit, Qubit)>,
    ) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::EmptyMap);
        }
        let mut seen: HashMap<(Qubit, Qubit), usize> = HashMap::new();
        let mut list = Vec::new();
        let mut successors = vec![Vec::new(); num_qubits];
        let mut predecessors = vec![Vec::new(); num_qubits];
        let mut neighbors = vec![Vec::new(); num_qubits];
        for (index, (control, target)) in edges.into_iter().enumerate() {
            for qubit in [control, target] {
                if qubit >= num_qubits {
                    return Err(Error::EdgeOutOfRange {
                        index,
                        qubit,
                        num_qubits,
                    });
                }
            }
            if control == target {
                return Err(Error::SelfLoop {
                    index,
                    qubit: control,
                });
            }
            if let Some(&first) = seen.get(&(control, target)) {
                return Err(Error::DuplicateEdge {
                    index,
                    first,
                    control,
                    target,
                });
            }
            seen.insert((control, target), index);
            list.push((control, target));
            successors[control].push(target);
            predecessors[target].push(control);
            neighbors[control].push(target);
            neighbors[target].push(control);
        }
        for adj in successors
            .iter_mut()
            .chain(predecessors.iter_mut())
            .chain(neighbors.iter_mut())
        {
            adj.sort_unstable();
            adj.dedup();
        }
        Ok(Self {
            name: name.into(),
            num_qubits,
            edges: list,
            successors,
            predecessors,
            neighbors,
        })
    }

    /// Parses a JSON map document with keys `name`, `num_qubits` and `edges`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MapDocument = serde_json::from_str(text)?;
        let name = doc.name.unwrap_or_default();
        Self::new(
            name,
            doc.num_qubits,
            doc.edges.into_iter().map(|[c, t]| (c, t)),
        )
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let mut map = Self::from_json(&text)?;
        if map.name.is_empty() {
            if let Some(stem) = path.file_stem() {
                map.name = stem.to_string_lossy().into_owned();
            }
        }
        Ok(map)
    }

    pub fn bundled(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "qx4" => Self::from_json(QX4),
            "qx5" => Self::from_json(QX5),
            _ => Err(Error::UnknownMap(name.to_string())),
        }
    }

    /// Bundled map name, otherwise a path to a map file.
    pub fn resolve(name_or_path: &str) -> Result<Self> {
        if BUNDLED.contains(&name_or_path.to_ascii_lowercase().as_str()) {
            Self::bundled(name_or_path)
        } else {
            Self::from_file(name_or_path)
        }
    }

    pub fn to_json(&self) -> String {
        let doc = MapDocument {
            name: Some(self.name.clone()),
            num_qubits: self.num_qubits,
            edges: self.edges.iter().map(|&(c, t)| [c, t]).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("map document serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Edges in document order.
    pub fn edges(&self) -> &[(Qubit, Qubit)] {
        &self.edges
    }

    pub fn has_edge(&self, control: Qubit, target: Qubit) -> bool {
        self.successors
            .get(control)
            .is_some_and(|s| s.binary_search(&target).is_ok())
    }

    pub fn successors(&self, qubit: Qubit) -> &[Qubit] {
        &self.successors[qubit]
    }

    pub fn predecessors(&self, qubit: Qubit) -> &[Qubit] {
        &self.predecessors[qubit]
    }

    /// Union of predecessors and successors, ascending.
    pub fn neighbors(&self, qubit: Qubit) -> &[Qubit] {
        &self.neighbors[qubit]
    }

    pub fn contains(&self, qubit: Qubit) -> bool {
        qubit < self.num_qubits
    }

    fn check(&self, qubit: Qubit) -> Result<()> {
        if self.contains(qubit) {
            Ok(())
        } else {
            Err(Error::QubitOutOfRange {
                qubit,
                width: self.num_qubits,
            })
        }
    }
}

/// Per-qubit count of the other qubits that can reach it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RankTable(Vec<usize>);

impl RankTable {
    pub fn zeros(num_qubits: usize) -> Self {
        Self(vec![0; num_qubits])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn most_connected(&self) -> Result<Qubit> {
        most_connected(self)
    }
}

impl From<Vec<usize>> for RankTable {
    fn from(ranks: Vec<usize>) -> Self {
        Self(ranks)
    }
}

impl std::ops::Index<Qubit> for RankTable {
    type Output = usize;

    fn index(&self, qubit: Qubit) -> &usize {
        &self.0[qubit]
    }
}

/// Increments the rank of every qubit reachable from `source`, once each.
///
/// The source starts out visited, so it is never credited for its own
/// invocation even when a directed cycle leads back to it. The walk uses an
/// explicit stack; the set of credited qubits is the same as for the
/// recursive formulation.
pub fn explore(map: &CouplingMap, source: Qubit, rank: &mut RankTable) -> Result<()> {
    map.check(source)?;
    if rank.len() != map.num_qubits() {
        return Err(Error::LengthMismatch {
            expected: map.num_qubits(),
            found: rank.len(),
        });
    }
    let mut visited = vec![false; map.num_qubits()];
    visited[source] = true;
    let mut stack = vec![source];
    while let Some(v) = stack.pop() {
        // Reverse push keeps the pop order ascending.
        for &x in map.successors(v).iter().rev() {
            if !visited[x] {
                visited[x] = true;
                rank.0[x] += 1;
                stack.push(x);
            }
        }
    }
    Ok(())
}

pub fn rank_all(map: &CouplingMap) -> RankTable {
    let mut rank = RankTable::zeros(map.num_qubits());
    for source in 0..map.num_qubits() {
        explore(map, source, &mut rank).expect("source in range");
    }
    rank
}

/// Index of the highest rank; ties go to the lowest index.
pub fn most_connected(rank: &RankTable) -> Result<Qubit> {
    rank.0
        .iter()
        .enumerate()
        .fold(None, |best: Option<(Qubit, usize)>, (q, &r)| match best {
            Some((_, br)) if br >= r => best,
            _ => Some((q, r)),
        })
        .map(|(q, _)| q)
        .ok_or(Error::EmptyRankTable)
}
