//! Envariance sweep on the noiseless simulator: 8192 shots, 10 repetitions
//! per qubit count, scored with the Bhattacharyya coefficient.
//!
//! ```bash
//! cargo run --release -p qxcompile --example envariance_fidelity
//! ```

use qxcompile::{fidelity_experiment, CouplingMap};

fn main() -> qxcompile::Result<()> {
    let sweeps = [
        ("qx4", vec![2, 3, 5]),
        ("qx5", vec![2, 3, 5, 7, 9, 12, 14, 16]),
    ];
    for (name, ns) in sweeps {
        let map = CouplingMap::bundled(name)?;
        println!("{name}");
        for n in ns {
            let run = fidelity_experiment(&map, n, 8192, 10, 2018 + n as u64)?;
            let zeros = run.mean_distribution.get(&"0".repeat(n));
            let ones = run.mean_distribution.get(&"1".repeat(n));
            println!(
                "  n={n:>2}  B={:.5}  I95={:.5}  P(0..0)={zeros:.4}  P(1..1)={ones:.4}",
                run.report.b_mean, run.report.i95
            );
        }
    }
    Ok(())
}
