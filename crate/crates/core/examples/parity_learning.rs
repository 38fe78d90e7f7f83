//! Error probability of the postselected majority-vote learner for the three
//! oracle patterns compiled on qx5, with and without oracle noise.
//!
//! ```bash
//! cargo run --release -p qxcompile --example parity_learning
//! ```

use qxcompile::experiment::{compile, Experiment};
use qxcompile::{perr_curve, CouplingMap, NoisySampleConfig, OraclePattern};

fn main() -> qxcompile::Result<()> {
    let map = CouplingMap::bundled("qx5")?;
    let queries = [1, 2, 4, 8, 16, 32, 64];
    for n in [2, 8, 15] {
        for pattern in [
            OraclePattern::AllZeros,
            OraclePattern::Half,
            OraclePattern::AllOnes,
        ] {
            let compiled = compile(&map, Experiment::Parity, n, Some(pattern))?;
            let a = compiled.parity.expect("parity layout").a;
            for eta in [0.0, 0.2] {
                let config = NoisySampleConfig::new(eta, a.clone())?;
                let curve = perr_curve(&config, &queries, 200, 7)?;
                let points: Vec<String> = curve
                    .iter()
                    .map(|o| format!("{}:{:.3}", o.queries, o.p_err))
                    .collect();
                println!("n={n:>2} a={a:<15} eta={eta:.1}  {}", points.join(" "));
            }
        }
    }
    Ok(())
}
