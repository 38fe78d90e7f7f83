use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qxcompile::experiment::{
    compile, parse_queries, rank_report, run_envariance, run_parity, write_compile, CompileDumps,
    Experiment, Sweep, DEFAULT_ENVARIANCE_REPS, DEFAULT_PARITY_REPS, DEFAULT_SHOTS,
};
use qxcompile::{CouplingMap, Error, OraclePattern};

/// Coupling-map-aware GHZ, envariance and parity-learning compiler.
#[derive(Debug, Parser)]
#[command(name = "qxcompile", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the reachability rank of every qubit and the chosen root.
    Rank {
        /// Bundled map name (qx4, qx5) or path to a map JSON file.
        #[arg(long)]
        map: String,
        #[arg(long)]
        json: bool,
    },
    /// Compile a circuit and write it as OpenQASM 2.0.
    Compile {
        #[arg(long)]
        map: String,
        #[arg(long)]
        experiment: Experiment,
        /// Qubits involved (parity: size of the query register).
        #[arg(short)]
        n: usize,
        /// Parity oracle pattern: 11, 10 or 00.
        #[arg(long)]
        pattern: Option<OraclePattern>,
        #[arg(long)]
        out: PathBuf,
        /// Also write the connection path as path.json.
        #[arg(long)]
        dump_path: bool,
        /// Also write the gate list as circuit.json.
        #[arg(long)]
        dump_circuit: bool,
    },
    /// Sample the envariance circuit and score it with Bhattacharyya fidelity.
    Envariance {
        #[arg(long)]
        map: String,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SHOTS)]
        shots: u64,
        #[arg(long, default_value_t = DEFAULT_ENVARIANCE_REPS)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Error probability of the majority-vote parity learner versus queries.
    Parity {
        #[arg(long)]
        map: String,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value = "11")]
        pattern: OraclePattern,
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
        /// `start:end`, a comma list, or a single count.
        #[arg(long, default_value = "1:64")]
        queries: String,
        /// How `start:end` expands: linear or pow2.
        #[arg(long, default_value = "linear")]
        sweep: Sweep,
        #[arg(long, default_value_t = DEFAULT_PARITY_REPS)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Rank { map, json } => {
            let report = rank_report(&CouplingMap::resolve(&map)?)?;
            if json {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                println!("{report}");
            }
        }
        Command::Compile {
            map,
            experiment,
            n,
            pattern,
            out,
            dump_path,
            dump_circuit,
        } => {
            let map = CouplingMap::resolve(&map)?;
            let compiled = compile(&map, experiment, n, pattern)?;
            let dumps = CompileDumps {
                path: dump_path,
                circuit: dump_circuit,
            };
            write_compile(&map, &compiled, n, dumps, &out)?;
            println!(
                "{experiment} on {}: {} gates, {} cx, written to {}",
                map.name(),
                compiled.circuit.gates().len(),
                compiled.circuit.cnot_count(),
                out.join("circuit.qasm").display()
            );
            if let Some(p) = &compiled.parity {
                println!("effective a = {}", p.a);
            }
        }
        Command::Envariance {
            map,
            n,
            shots,
            reps,
            seed,
            out,
        } => {
            let map = CouplingMap::resolve(&map)?;
            let (result, _) = run_envariance(&map, n, shots, reps, seed, &out)?;
            println!(
                "envariance {} n={n}: B = {:.6} +/- {:.6} over {reps} repetitions",
                map.name(),
                result.report.b_mean,
                result.report.i95
            );
        }
        Command::Parity {
            map,
            n,
            pattern,
            eta,
            queries,
            sweep,
            reps,
            seed,
            out,
        } => {
            let map = CouplingMap::resolve(&map)?;
            let queries = parse_queries(&queries, sweep)?;
            let (result, _) = run_parity(&map, n, pattern, eta, &queries, reps, seed, &out)?;
            let a = &result.compiled.parity.as_ref().expect("parity layout").a;
            println!("parity {} n={n} a={a} eta={eta}", map.name());
            println!("N\tp_err");
            for o in &result.outcomes {
                println!("{}\t{}", o.queries, o.p_err);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
