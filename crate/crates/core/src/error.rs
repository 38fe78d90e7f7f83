use thiserror::Error;

use crate::coupling_map::Qubit;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("map document: {0}")]
    MapParse(#[from] serde_json::Error),
    #[error("map must declare at least one qubit")]
    EmptyMap,
    #[error("edges[{index}]: qubit {qubit} out of range for a {num_qubits}-qubit map")]
    EdgeOutOfRange {
        index: usize,
        qubit: Qubit,
        num_qubits: usize,
    },
    #[error("edges[{index}]: self-loop on qubit {qubit}")]
    SelfLoop { index: usize, qubit: Qubit },
    #[error("edges[{index}]: duplicate edge ({control}, {target}), first seen at edges[{first}]")]
    DuplicateEdge {
        index: usize,
        first: usize,
        control: Qubit,
        target: Qubit,
    },
    #[error("unknown bundled map `{0}`")]
    UnknownMap(String),
    #[error("qubit {qubit} out of range for width {width}")]
    QubitOutOfRange { qubit: Qubit, width: usize },
    #[error("rank table is empty")]
    EmptyRankTable,
    #[error("cannot involve {requested} qubits on a {num_qubits}-qubit map")]
    InvalidQubitCount { requested: usize, num_qubits: usize },
    #[error(
        "unreachable qubits: requested {requested} but only {available} are connected to root {root} ({} short)",
        requested - available
    )]
    Unreachable {
        root: Qubit,
        requested: usize,
        available: usize,
    },
    #[error("illegal coupling: no edge between qubits {control} and {target} in either direction")]
    IllegalCoupling { control: Qubit, target: Qubit },
    #[error("circuit width {width} exceeds the simulator limit of {max} qubits")]
    WidthExceeded { width: usize, max: usize },
    #[error("circuit declares no measured qubits")]
    NoMeasurements,
    #[error("bit length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("noise rate {0} outside [0, 0.5)")]
    InvalidEta(f64),
    #[error("qasm line {line}: {message}")]
    Qasm { line: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
