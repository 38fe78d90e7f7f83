//! Compile a 16-qubit GHZ circuit for qx5, audit its gate counts and print
//! the OpenQASM.
//!
//! ```bash
//! cargo run -p qxcompile --example compile_ghz -- 16
//! ```

use qxcompile::{
    build_ghz, create_path, emit_qasm, most_connected, rank_all, verify_legality, CouplingMap,
    Simulator,
};

fn main() -> qxcompile::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("qubit count"))
        .unwrap_or(16);
    let map = CouplingMap::bundled("qx5")?;
    let root = most_connected(&rank_all(&map))?;
    let path = create_path(&map, root, n)?;

    println!("root q{root}");
    for p in &path.pairs {
        let dir = if map.has_edge(p.anchor, p.new_node) {
            "native"
        } else {
            "inverse"
        };
        println!("  q{} -> q{}  ({dir})", p.anchor, p.new_node);
    }

    let mut circuit = build_ghz(&map, &path)?;
    circuit.measure_all(&path.involved())?;
    assert!(verify_legality(&map, &circuit).is_empty());
    println!(
        "{} gates: {} h, {} cx",
        circuit.gates().len(),
        circuit.h_count(),
        circuit.cnot_count()
    );

    let dist = Simulator::default().distribution(&circuit)?;
    for (outcome, p) in dist.iter() {
        println!("  {outcome}  {p:.6}");
    }
    println!("\n{}", emit_qasm(&circuit));
    Ok(())
}
