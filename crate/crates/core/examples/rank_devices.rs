//! Rank every qubit of the bundled devices and show which one becomes root.
//!
//! ```bash
//! cargo run -p qxcompile --example rank_devices
//! ```

use qxcompile::experiment::rank_report;
use qxcompile::CouplingMap;

fn main() -> qxcompile::Result<()> {
    for name in ["qx4", "qx5"] {
        let map = CouplingMap::bundled(name)?;
        println!("{} edges: {:?}", map.edges().len(), map.edges());
        println!("{}\n", rank_report(&map)?);
    }
    Ok(())
}
