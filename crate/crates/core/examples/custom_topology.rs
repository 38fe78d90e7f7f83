//! Load a coupling map from JSON, compile an envariance circuit on it and
//! show where reverse-direction CNOTs were expanded.
//!
//! ```bash
//! cargo run -p qxcompile --example custom_topology
//! ```

use qxcompile::{
    build_envariance, create_path, most_connected, rank_all, verify_legality, CouplingMap, Gate,
    Simulator,
};

const STAR: &str = r#"{
  "name": "inward-star",
  "num_qubits": 5,
  "edges": [[1, 0], [2, 0], [3, 0], [0, 4]]
}"#;

fn main() -> qxcompile::Result<()> {
    let map = CouplingMap::from_json(STAR)?;
    let ranks = rank_all(&map);
    let root = most_connected(&ranks)?;
    println!("{}: ranks {:?}, root q{root}", map.name(), ranks.as_slice());

    let path = create_path(&map, root, map.num_qubits())?;
    let circuit = build_envariance(&map, &path)?;
    for gate in circuit.gates() {
        match gate {
            Gate::Cnot { control, target } => println!("  cx q{control} -> q{target}"),
            Gate::H { qubit } => println!("  h  q{qubit}"),
            Gate::X { qubit } => println!("  x  q{qubit}"),
            Gate::Measure { qubit, bit } => println!("  measure q{qubit} -> c{bit}"),
        }
    }
    println!("violations: {}", verify_legality(&map, &circuit).len());

    let hist = Simulator::default().sample(&circuit, 1000, 1)?;
    println!("histogram: {}", serde_json::to_string(&hist).unwrap());

    // A missing coupling is reported rather than routed around.
    let sparse = CouplingMap::new("split", 3, [(0, 1)])?;
    match create_path(&sparse, 0, 3) {
        Ok(_) => unreachable!(),
        Err(e) => println!("split map: {e}"),
    }
    Ok(())
}
