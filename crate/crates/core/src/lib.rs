//! Coupling-map-aware compilation of GHZ, envariance and parity-learning
//! circuits, with an exact state-vector simulator and the analysis needed to
//! score the results.
//!
//! The pipeline is:
//!
//! 1. load a [`CouplingMap`] (bundled `qx4`/`qx5` or a JSON file),
//! 2. rank every qubit by how many others can reach it ([`rank_all`]) and pick
//!    the [`most_connected`] one as root,
//! 3. grow a breadth-first [`ConnectionPath`] over the requested number of
//!    qubits ([`create_path`]),
//! 4. turn the path into a hardware-legal [`Circuit`] ([`build_ghz`],
//!    [`build_envariance`], [`build_parity`]) and emit OpenQASM 2.0,
//! 5. simulate and sample it ([`Simulator`]), then score it with
//!    [`bhattacharyya`] fidelity or the postselected majority-vote learner
//!    ([`parity_learn`]).
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod analysis;
pub mod bits;
pub mod circuit;
pub mod coupling_map;
mod error;
pub mod experiment;
pub mod histogram;
pub mod path;
pub mod qasm;
pub mod simulator;

pub use analysis::{
    bhattacharyya, fidelity_experiment, majority_vote, parity_learn, perr_curve, total_variation,
    two_peak, EnvarianceRun, FidelityReport, LearningOutcome,
};
pub use bits::Bits;
pub use circuit::{
    build_envariance, build_ghz, build_parity, cnot_legal, verify_legality, Circuit, Gate,
    OraclePattern, ParityCircuit, Violation,
};
pub use coupling_map::{explore, most_connected, rank_all, CouplingMap, Qubit, RankTable};
pub use error::{Error, Result};
pub use histogram::{Distribution, Histogram};
pub use path::{create_path, ConnectionPath, PathPair};
pub use qasm::{emit_qasm, parse_qasm};
pub use simulator::{
    derive_seed, sample_noisy_oracle, NoisySampleConfig, OracleSample, Simulator, StateVector,
};
