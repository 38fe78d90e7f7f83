//! Reproducible experiment runs that write a self-describing output
//! directory: `manifest.json`, `results.json`, `results.csv` and
//! `circuit.qasm`.
//!
//! Everything written is a pure function of the inputs and the seed, so two
//! runs with identical arguments produce byte-identical files.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{fidelity_experiment, perr_curve, EnvarianceRun, LearningOutcome};
use crate::circuit::{
    build_envariance, build_ghz, build_parity, verify_legality, Circuit, OraclePattern,
    ParityCircuit,
};
use crate::coupling_map::{most_connected, rank_all, CouplingMap, Qubit, RankTable};
use crate::error::{Error, Result};
use crate::path::{create_path, ConnectionPath};
use crate::qasm::emit_qasm;
use crate::simulator::NoisySampleConfig;

pub const DEFAULT_SHOTS: u64 = 8192;
pub const DEFAULT_ENVARIANCE_REPS: usize = 10;
pub const DEFAULT_PARITY_REPS: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub map_name: String,
    pub parameters: BTreeMap<String, Value>,
    /// File names relative to the run directory.
    pub output_paths: Vec<String>,
}

impl RunManifest {
    fn new(command: &str, map: &CouplingMap) -> Self {
        Self {
            command: command.to_string(),
            map_name: map.name().to_string(),
            parameters: BTreeMap::new(),
            output_paths: Vec::new(),
        }
    }

    fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable"),
        );
        self
    }
}

struct RunDir<'a> {
    dir: &'a Path,
    manifest: RunManifest,
}

impl<'a> RunDir<'a> {
    fn create(dir: &'a Path, manifest: RunManifest) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self { dir, manifest })
    }

    fn write(&mut self, name: &str, contents: impl AsRef<[u8]>) -> Result<()> {
        fs::write(self.dir.join(name), contents)?;
        self.manifest.output_paths.push(name.to_string());
        Ok(())
    }

    fn write_json(&mut self, name: &str, value: &impl Serialize) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(name, text)
    }

    fn finish(mut self) -> Result<RunManifest> {
        self.manifest.output_paths.push("manifest.json".into());
        let mut text = serde_json::to_string_pretty(&self.manifest)?;
        text.push('\n');
        fs::write(self.dir.join("manifest.json"), text)?;
        Ok(self.manifest)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    pub map: String,
    pub ranks: RankTable,
    pub root: Qubit,
}

pub fn rank_report(map: &CouplingMap) -> Result<RankReport> {
    let ranks = rank_all(map);
    let root = most_connected(&ranks)?;
    Ok(RankReport {
        map: map.name().to_string(),
        ranks,
        root,
    })
}

impl fmt::Display for RankReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "map {}", self.map)?;
        writeln!(f, "qubit  rank")?;
        for (q, r) in self.ranks.as_slice().iter().enumerate() {
            writeln!(f, "{q:>5}  {r:>4}")?;
        }
        write!(f, "root {}", self.root)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Ghz,
    Envariance,
    Parity,
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ghz" => Ok(Self::Ghz),
            "envariance" => Ok(Self::Envariance),
            "parity" => Ok(Self::Parity),
            _ => Err(Error::InvalidArgument(format!(
                "unknown experiment `{s}` (expected ghz, envariance or parity)"
            ))),
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ghz => "ghz",
            Self::Envariance => "envariance",
            Self::Parity => "parity",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Compiled {
    pub experiment: Experiment,
    pub path: ConnectionPath,
    pub circuit: Circuit,
    pub parity: Option<ParityCircuit>,
}

fn ensure_legal(map: &CouplingMap, circuit: &Circuit) -> Result<()> {
    match verify_legality(map, circuit).first() {
        None => Ok(()),
        Some(v) => Err(Error::InvalidArgument(format!("illegal circuit: {v}"))),
    }
}

/// Compiles one experiment. `n` is the qubit count for GHZ and envariance
/// and the query-register size for parity (which also uses a result qubit).
/// GHZ circuits get terminal measurements on every involved qubit.
pub fn compile(
    map: &CouplingMap,
    experiment: Experiment,
    n: usize,
    pattern: Option<OraclePattern>,
) -> Result<Compiled> {
    if experiment != Experiment::Parity && pattern.is_some() {
        return Err(Error::InvalidArgument(format!(
            "--pattern only applies to parity, not {experiment}"
        )));
    }
    let requested = match experiment {
        Experiment::Parity => n + 1,
        _ => n,
    };
    let root = most_connected(&rank_all(map))?;
    let path = create_path(map, root, requested)?;
    let (circuit, parity) = match experiment {
        Experiment::Ghz => {
            let mut c = build_ghz(map, &path)?;
            c.measure_all(&path.involved())?;
            (c, None)
        }
        Experiment::Envariance => (build_envariance(map, &path)?, None),
        Experiment::Parity => {
            let p = build_parity(map, &path, pattern.unwrap_or(OraclePattern::AllOnes))?;
            (p.circuit.clone(), Some(p))
        }
    };
    ensure_legal(map, &circuit)?;
    Ok(Compiled {
        experiment,
        path,
        circuit,
        parity,
    })
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CompileDumps {
    pub path: bool,
    pub circuit: bool,
}

pub fn write_compile(
    map: &CouplingMap,
    compiled: &Compiled,
    n: usize,
    dumps: CompileDumps,
    out_dir: &Path,
) -> Result<RunManifest> {
    let mut manifest = RunManifest::new("compile", map)
        .param("experiment", compiled.experiment)
        .param("n", n);
    if let Some(p) = &compiled.parity {
        manifest = manifest
            .param("pattern", p.pattern)
            .param("effective_a", &p.a);
    }
    let mut run = RunDir::create(out_dir, manifest)?;
    run.write("circuit.qasm", emit_qasm(&compiled.circuit))?;
    if dumps.path {
        run.write_json("path.json", &compiled.path)?;
    }
    if dumps.circuit {
        run.write_json("circuit.json", &compiled.circuit)?;
    }
    run.finish()
}

pub fn run_envariance(
    map: &CouplingMap,
    n: usize,
    shots: u64,
    repetitions: usize,
    seed: u64,
    out_dir: &Path,
) -> Result<(EnvarianceRun, RunManifest)> {
    let result = fidelity_experiment(map, n, shots, repetitions, seed)?;
    let manifest = RunManifest::new("envariance", map)
        .param("n", n)
        .param("shots", shots)
        .param("repetitions", repetitions)
        .param("seed", seed);
    let mut run = RunDir::create(out_dir, manifest)?;
    run.write("circuit.qasm", emit_qasm(&result.circuit))?;
    run.write_json(
        "results.json",
        &json!({
            "experiment": "envariance",
            "map": map.name(),
            "n": n,
            "shots": shots,
            "repetitions": repetitions,
            "seed": seed,
            "involved_qubits": result.path.involved(),
            "histograms": result.histograms,
            "mean_distribution": result.mean_distribution,
            "B": result.report.b_mean,
            "I_95": result.report.i95,
            "B_per_repetition": result.report.per_repetition,
        }),
    )?;
    let mut csv = String::from("repetition,B\n");
    for (i, b) in result.report.per_repetition.iter().enumerate() {
        csv.push_str(&format!("{i},{b}\n"));
    }
    run.write("results.csv", csv)?;
    let manifest = run.finish()?;
    Ok((result, manifest))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sweep {
    /// Every integer from start to end.
    #[default]
    Linear,
    /// Powers of two from start, plus end.
    Pow2,
}

impl FromStr for Sweep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Self::Linear),
            "pow2" => Ok(Self::Pow2),
            _ => Err(Error::InvalidArgument(format!(
                "unknown sweep `{s}` (expected linear or pow2)"
            ))),
        }
    }
}

/// Parses `start:end` (expanded according to `sweep`), a comma list, or a
/// single count.
pub fn parse_queries(spec: &str, sweep: Sweep) -> Result<Vec<usize>> {
    let num = |s: &str| -> Result<usize> {
        match s.trim().parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(Error::InvalidArgument(format!(
                "query count `{s}` must be a positive integer"
            ))),
        }
    };
    if let Some((a, b)) = spec.split_once(':') {
        let (start, end) = (num(a)?, num(b)?);
        if start > end {
            return Err(Error::InvalidArgument(format!("empty query range {spec}")));
        }
        Ok(match sweep {
            Sweep::Linear => (start..=end).collect(),
            Sweep::Pow2 => {
                let mut out: Vec<usize> = std::iter::successors(Some(start), |&q| q.checked_mul(2))
                    .take_while(|&q| q <= end)
                    .collect();
                if out.last() != Some(&end) {
                    out.push(end);
                }
                out
            }
        })
    } else {
        spec.split(',').map(num).collect()
    }
}

#[derive(Debug, Clone)]
pub struct ParityRun {
    pub compiled: Compiled,
    pub outcomes: Vec<LearningOutcome>,
}

#[allow(clippy::too_many_arguments)]
pub fn run_parity(
    map: &CouplingMap,
    n: usize,
    pattern: OraclePattern,
    eta: f64,
    queries: &[usize],
    repetitions: usize,
    seed: u64,
    out_dir: &Path,
) -> Result<(ParityRun, RunManifest)> {
    let compiled = compile(map, Experiment::Parity, n, Some(pattern))?;
    let parity = compiled.parity.as_ref().expect("parity layout");
    let config = NoisySampleConfig::new(eta, parity.a.clone())?;
    let outcomes = perr_curve(&config, queries, repetitions, seed)?;

    let manifest = RunManifest::new("parity", map)
        .param("n", n)
        .param("pattern", pattern)
        .param("eta", eta)
        .param("queries", queries)
        .param("repetitions", repetitions)
        .param("seed", seed);
    let mut run = RunDir::create(out_dir, manifest)?;
    run.write("circuit.qasm", emit_qasm(&compiled.circuit))?;
    let points: Vec<_> = outcomes
        .iter()
        .map(|o| json!({ "N": o.queries, "p_err": o.p_err, "failures": o.failures }))
        .collect();
    run.write_json(
        "results.json",
        &json!({
            "experiment": "parity",
            "map": map.name(),
            "n": n,
            "pattern": pattern,
            "effective_a": parity.a,
            "result_qubit": parity.result_qubit,
            "query_qubits": parity.query_qubits,
            "eta": eta,
            "repetitions": repetitions,
            "seed": seed,
            "p_err": points,
        }),
    )?;
    let mut csv = String::from("N,p_err,repetitions\n");
    for o in &outcomes {
        csv.push_str(&format!("{},{},{}\n", o.queries, o.p_err, o.repetitions));
    }
    run.write("results.csv", csv)?;
    let manifest = run.finish()?;
    Ok((ParityRun { compiled, outcomes }, manifest))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn query_specs() {
        assert_eq!(
            parse_queries("1:4", Sweep::Linear).unwrap(),
            vec![1, 2, 3, 4]
        );
        assert_eq!(
            parse_queries("1:64", Sweep::Pow2).unwrap(),
            vec![1, 2, 4, 8, 16, 32, 64]
        );
        assert_eq!(parse_queries("3:10", Sweep::Pow2).unwrap(), vec![3, 6, 10]);
        assert_eq!(parse_queries("5,7", Sweep::Linear).unwrap(), vec![5, 7]);
        assert_eq!(parse_queries("9", Sweep::Linear).unwrap(), vec![9]);
        assert!(parse_queries("0:3", Sweep::Linear).is_err());
        assert!(parse_queries("4:3", Sweep::Linear).is_err());
        assert!(parse_queries("x", Sweep::Linear).is_err());
    }

    #[test]
    fn compile_rejects_pattern_outside_parity() {
        let map = CouplingMap::bundled("qx4").unwrap();
        assert!(compile(&map, Experiment::Ghz, 3, Some(OraclePattern::Half)).is_err());
        let ghz = compile(&map, Experiment::Ghz, 5, None).unwrap();
        assert_eq!(ghz.circuit.cnot_count(), 4);
        assert_eq!(ghz.circuit.measured_qubits().len(), 5);
        assert!(matches!(
            compile(&map, Experiment::Parity, 5, None),
            Err(Error::InvalidQubitCount { .. })
        ));
    }

    #[test]
    fn rank_report_qx4() {
        let r = rank_report(&CouplingMap::bundled("qx4").unwrap()).unwrap();
        assert_eq!(r.ranks.as_slice(), &[3, 2, 1, 0, 2]);
        assert_eq!(r.root, 0);
        assert!(r.to_string().ends_with("root 0"));
    }
}
