//! Gate lists and the builders that turn a [`ConnectionPath`] into
//! hardware-legal circuits.
//!
//! Every logical CNOT goes through [`cnot_legal`], which emits either the
//! native gate or the Hadamard-sandwiched reverse CNOT when the coupling map
//! only offers the opposite direction.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::coupling_map::{CouplingMap, Qubit};
use crate::error::{Error, Result};
use crate::path::ConnectionPath;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "lowercase")]
pub enum Gate {
    H { qubit: Qubit },
    X { qubit: Qubit },
    Cnot { control: Qubit, target: Qubit },
    Measure { qubit: Qubit, bit: usize },
}

impl Gate {
    pub fn h(qubit: Qubit) -> Self {
        Gate::H { qubit }
    }

    pub fn x(qubit: Qubit) -> Self {
        Gate::X { qubit }
    }

    pub fn cnot(control: Qubit, target: Qubit) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn qubits(&self) -> impl Iterator<Item = Qubit> {
        let (a, b) = match *self {
            Gate::H { qubit } | Gate::X { qubit } | Gate::Measure { qubit, .. } => (qubit, None),
            Gate::Cnot { control, target } => (control, Some(target)),
        };
        std::iter::once(a).chain(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    measured: Vec<Qubit>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            gates: Vec::new(),
            measured: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Measured qubits in classical-bit order; bit 0 renders leftmost.
    pub fn measured_qubits(&self) -> &[Qubit] {
        &self.measured
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        for q in gate.qubits() {
            if q >= self.width {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    width: self.width,
                });
            }
        }
        match gate {
            Gate::Cnot { control, target } if control == target => {
                return Err(Error::InvalidArgument(format!(
                    "cnot control and target are both {control}"
                )));
            }
            Gate::Measure { qubit, bit } => {
                if bit != self.measured.len() {
                    return Err(Error::InvalidArgument(format!(
                        "measure q[{qubit}] -> c[{bit}] out of order, next bit is {}",
                        self.measured.len()
                    )));
                }
                if self.measured.contains(&qubit) {
                    return Err(Error::InvalidArgument(format!(
                        "qubit {qubit} measured twice"
                    )));
                }
                self.measured.push(qubit);
            }
            _ => {}
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.push(g))
    }

    /// Appends terminal measurements, assigning classical bits in order.
    pub fn measure_all(&mut self, qubits: &[Qubit]) -> Result<()> {
        for &qubit in qubits {
            let bit = self.measured.len();
            self.push(Gate::Measure { qubit, bit })?;
        }
        Ok(())
    }

    pub fn count(&self, pred: impl Fn(&Gate) -> bool) -> usize {
        self.gates.iter().filter(|g| pred(g)).count()
    }

    pub fn cnot_count(&self) -> usize {
        self.count(|g| matches!(g, Gate::Cnot { .. }))
    }

    pub fn h_count(&self) -> usize {
        self.count(|g| matches!(g, Gate::H { .. }))
    }

    pub fn x_count(&self) -> usize {
        self.count(|g| matches!(g, Gate::X { .. }))
    }
}

/// Which parity string the oracle encodes: `11..11`, `10..10` or `00..00`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OraclePattern {
    #[serde(rename = "11")]
    AllOnes,
    #[serde(rename = "10")]
    Half,
    #[serde(rename = "00")]
    AllZeros,
}

impl OraclePattern {
    pub fn code(self) -> &'static str {
        match self {
            OraclePattern::AllOnes => "11",
            OraclePattern::Half => "10",
            OraclePattern::AllZeros => "00",
        }
    }

    /// Number of path pairs that receive a CNOT when `involved` qubits take
    /// part (query register plus result qubit).
    pub fn placed_pairs(self, involved: usize) -> usize {
        let pairs = involved.saturating_sub(1);
        match self {
            OraclePattern::AllOnes => pairs,
            OraclePattern::Half => (involved / 2).min(pairs),
            OraclePattern::AllZeros => 0,
        }
    }
}

impl FromStr for OraclePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "11" | "ones" | "all-ones" => Ok(OraclePattern::AllOnes),
            "10" | "half" => Ok(OraclePattern::Half),
            "00" | "zeros" | "all-zeros" => Ok(OraclePattern::AllZeros),
            _ => Err(Error::InvalidArgument(format!(
                "unknown oracle pattern `{s}` (expected 11, 10 or 00)"
            ))),
        }
    }
}

impl fmt::Display for OraclePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A logical CNOT realised on the coupling map.
pub fn cnot_legal(map: &CouplingMap, control: Qubit, target: Qubit) -> Result<Vec<Gate>> {
    if map.has_edge(control, target) {
        Ok(vec![Gate::cnot(control, target)])
    } else if map.has_edge(target, control) {
        Ok(vec![
            Gate::h(control),
            Gate::h(target),
            Gate::cnot(target, control),
            Gate::h(control),
            Gate::h(target),
        ])
    } else {
        Err(Error::IllegalCoupling { control, target })
    }
}

fn check_path(map: &CouplingMap, path: &ConnectionPath) -> Result<()> {
    for q in path.involved() {
        if !map.contains(q) {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                width: map.num_qubits(),
            });
        }
    }
    Ok(())
}

fn ghz_gates(map: &CouplingMap, path: &ConnectionPath, circuit: &mut Circuit) -> Result<()> {
    circuit.push(Gate::h(path.root))?;
    for pair in &path.pairs {
        circuit.extend(cnot_legal(map, pair.anchor, pair.new_node)?)?;
    }
    Ok(())
}

/// GHZ preparation over the path's qubits, without measurements.
///
/// The already-entangled anchor is the logical control of each CNOT.
pub fn build_ghz(map: &CouplingMap, path: &ConnectionPath) -> Result<Circuit> {
    check_path(map, path)?;
    let mut circuit = Circuit::new(map.num_qubits());
    ghz_gates(map, path, &mut circuit)?;
    Ok(circuit)
}

/// GHZ preparation, an X layer on the first `ceil(n/2)` involved qubits
/// (system), an X layer on the remaining `floor(n/2)` (environment), then
/// measurement of every involved qubit in involved order.
pub fn build_envariance(map: &CouplingMap, path: &ConnectionPath) -> Result<Circuit> {
    let mut circuit = build_ghz(map, path)?;
    let involved = path.involved();
    let split = involved.len().div_ceil(2);
    let (system, environment) = involved.split_at(split);
    circuit.extend(system.iter().map(|&q| Gate::x(q)))?;
    circuit.extend(environment.iter().map(|&q| Gate::x(q)))?;
    circuit.measure_all(&involved)?;
    Ok(circuit)
}

/// Compiled parity-learning circuit together with its register layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCircuit {
    pub circuit: Circuit,
    pub pattern: OraclePattern,
    pub result_qubit: Qubit,
    pub query_qubits: Vec<Qubit>,
    /// The string actually encoded by the placed CNOTs, in query order.
    pub a: Bits,
}

/// Uniform example oracle for a parity function followed by the learner's
/// Hadamard layer.
///
/// The path root is the result qubit and the other involved qubits form the
/// query register. Layout: H on every query qubit, one logical
/// `CNOT(new_node -> anchor)` for each placed pair in path order, H on every
/// involved qubit, then measurement of the query register followed by the
/// result qubit. The pattern only decides how many leading pairs are placed.
///
/// With the surrounding H layers each placed CNOT acts as an anchor-controlled
/// CNOT, so the final state is `(|0..0,0> + |a,1>)/sqrt(2)` where `a` marks
/// the query qubits attached by placed pairs.
pub fn build_parity(
    map: &CouplingMap,
    path: &ConnectionPath,
    pattern: OraclePattern,
) -> Result<ParityCircuit> {
    check_path(map, path)?;
    let involved = path.involved();
    let query_qubits = involved[1..].to_vec();
    let placed = pattern.placed_pairs(involved.len());

    let mut a = Bits::zeros(query_qubits.len());
    for i in 0..placed {
        a.set(i, true);
    }

    let mut circuit = Circuit::new(map.num_qubits());
    circuit.extend(query_qubits.iter().map(|&q| Gate::h(q)))?;
    for pair in &path.pairs[..placed] {
        circuit.extend(cnot_legal(map, pair.new_node, pair.anchor)?)?;
    }
    circuit.extend(involved.iter().map(|&q| Gate::h(q)))?;
    circuit.measure_all(&query_qubits)?;
    circuit.measure_all(&[path.root])?;

    Ok(ParityCircuit {
        circuit,
        pattern,
        result_qubit: path.root,
        query_qubits,
        a,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub gate_index: usize,
    pub control: Qubit,
    pub target: Qubit,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gate {}: cx q[{}],q[{}] is not a coupling-map edge",
            self.gate_index, self.control, self.target
        )
    }
}

/// Every CNOT whose (control, target) is not a directed edge of `map`.
pub fn verify_legality(map: &CouplingMap, circuit: &Circuit) -> Vec<Violation> {
    circuit
        .gates()
        .iter()
        .enumerate()
        .filter_map(|(gate_index, g)| match *g {
            Gate::Cnot { control, target } if !map.has_edge(control, target) => Some(Violation {
                gate_index,
                control,
                target,
            }),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling_map::{most_connected, rank_all};
    use crate::path::{create_path, PathPair};

    fn bell_map() -> CouplingMap {
        CouplingMap::new("bell", 2, [(0, 1)]).unwrap()
    }

    fn bell_path() -> ConnectionPath {
        ConnectionPath {
            root: 0,
            requested: 2,
            pairs: vec![PathPair {
                new_node: 1,
                anchor: 0,
            }],
        }
    }

    #[test]
    fn direct_and_inverse_cnot() {
        let map = bell_map();
        assert_eq!(cnot_legal(&map, 0, 1).unwrap(), vec![Gate::cnot(0, 1)]);
        assert_eq!(
            cnot_legal(&map, 1, 0).unwrap(),
            vec![
                Gate::h(1),
                Gate::h(0),
                Gate::cnot(0, 1),
                Gate::h(1),
                Gate::h(0)
            ]
        );
        let map3 = CouplingMap::new("m", 3, [(0, 1)]).unwrap();
        assert!(matches!(
            cnot_legal(&map3, 0, 2),
            Err(Error::IllegalCoupling {
                control: 0,
                target: 2
            })
        ));
    }

    #[test]
    fn bell_ghz() {
        let c = build_ghz(&bell_map(), &bell_path()).unwrap();
        assert_eq!(c.gates(), &[Gate::h(0), Gate::cnot(0, 1)]);
        assert!(c.measured_qubits().is_empty());
    }

    #[test]
    fn bell_envariance() {
        let c = build_envariance(&bell_map(), &bell_path()).unwrap();
        assert_eq!(
            c.gates(),
            &[
                Gate::h(0),
                Gate::cnot(0, 1),
                Gate::x(0),
                Gate::x(1),
                Gate::Measure { qubit: 0, bit: 0 },
                Gate::Measure { qubit: 1, bit: 1 },
            ]
        );
    }

    #[test]
    fn qx4_envariance_structure() {
        let map = CouplingMap::bundled("qx4").unwrap();
        let root = most_connected(&rank_all(&map)).unwrap();
        let path = create_path(&map, root, 5).unwrap();
        let c = build_envariance(&map, &path).unwrap();
        assert_eq!(c.x_count(), 5);
        assert_eq!(c.cnot_count(), 4);
        assert_eq!(c.measured_qubits(), path.involved().as_slice());
        // System layer then environment layer.
        let xs: Vec<_> = c
            .gates()
            .iter()
            .filter_map(|g| match g {
                Gate::X { qubit } => Some(*qubit),
                _ => None,
            })
            .collect();
        assert_eq!(xs, path.involved());
        assert!(verify_legality(&map, &c).is_empty());
    }

    #[test]
    fn parity_patterns() {
        let map = CouplingMap::bundled("qx5").unwrap();
        let root = most_connected(&rank_all(&map)).unwrap();
        let path = create_path(&map, root, 5).unwrap();
        let zeros = build_parity(&map, &path, OraclePattern::AllZeros).unwrap();
        assert_eq!(zeros.circuit.cnot_count(), 0);
        assert!(zeros.a.is_zero());
        let half = build_parity(&map, &path, OraclePattern::Half).unwrap();
        assert_eq!(half.circuit.cnot_count(), 2);
        assert_eq!(half.a.to_string(), "1100");
        let ones = build_parity(&map, &path, OraclePattern::AllOnes).unwrap();
        assert_eq!(ones.circuit.cnot_count(), 4);
        assert_eq!(ones.a.to_string(), "1111");
        assert_eq!(ones.circuit.measured_qubits().last(), Some(&root));
        for p in [zeros, half, ones] {
            assert!(verify_legality(&map, &p.circuit).is_empty());
        }

        let path16 = create_path(&map, root, 16).unwrap();
        let full = build_parity(&map, &path16, OraclePattern::AllOnes).unwrap();
        assert_eq!(full.circuit.cnot_count(), 15);
        assert_eq!(full.query_qubits.len(), 15);
    }

    #[test]
    fn pattern_codes() {
        for p in [
            OraclePattern::AllOnes,
            OraclePattern::Half,
            OraclePattern::AllZeros,
        ] {
            assert_eq!(p.code().parse::<OraclePattern>().unwrap(), p);
        }
        assert!("01".parse::<OraclePattern>().is_err());
        assert_eq!(OraclePattern::Half.placed_pairs(5), 2);
        assert_eq!(OraclePattern::Half.placed_pairs(2), 1);
    }

    #[test]
    fn legality_flags_wrong_direction() {
        let map = CouplingMap::new("m", 2, [(1, 0)]).unwrap();
        let mut c = Circuit::new(2);
        c.push(Gate::cnot(0, 1)).unwrap();
        let v = verify_legality(&map, &c);
        assert_eq!(
            v,
            vec![Violation {
                gate_index: 0,
                control: 0,
                target: 1
            }]
        );
    }

    #[test]
    fn circuit_rejects_bad_gates() {
        let mut c = Circuit::new(2);
        assert!(c.push(Gate::h(2)).is_err());
        assert!(c.push(Gate::cnot(1, 1)).is_err());
        c.measure_all(&[0]).unwrap();
        assert!(c.measure_all(&[0]).is_err());
    }
}
