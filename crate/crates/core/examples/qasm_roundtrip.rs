//! Emit the parity circuit for n = 15 on qx5 as OpenQASM 2.0 and read it back.
//!
//! ```bash
//! cargo run -p qxcompile --example qasm_roundtrip
//! ```

use qxcompile::experiment::{compile, Experiment};
use qxcompile::{emit_qasm, parse_qasm, CouplingMap, OraclePattern};

fn main() -> qxcompile::Result<()> {
    let map = CouplingMap::bundled("qx5")?;
    let compiled = compile(&map, Experiment::Parity, 15, Some(OraclePattern::Half))?;
    let text = emit_qasm(&compiled.circuit);
    print!("{text}");
    let reparsed = parse_qasm(&text)?;
    assert_eq!(reparsed, compiled.circuit);
    eprintln!(
        "round trip ok: {} gates, effective a = {}",
        reparsed.gates().len(),
        compiled.parity.expect("parity layout").a
    );
    Ok(())
}
