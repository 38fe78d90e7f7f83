//! Fidelity of envariance runs and the postselected majority-vote parity
//! learner.

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::circuit::{build_envariance, verify_legality, Circuit};
use crate::coupling_map::{most_connected, rank_all, CouplingMap};
use crate::error::{Error, Result};
use crate::histogram::{Distribution, Histogram};
use crate::path::{create_path, ConnectionPath};
use crate::simulator::{
    derive_seed, draw_oracle_sample, rng, sample_distribution, NoisySampleConfig, Simulator,
};

/// z-value of the two-sided 95% normal interval.
const Z95: f64 = 1.96;

/// Bhattacharyya coefficient `sum_x sqrt(p(x) q(x))`.
pub fn bhattacharyya(p: &Distribution, q: &Distribution) -> Result<f64> {
    if let (Some(a), Some(b)) = (p.key_len()?, q.key_len()?) {
        if a != b {
            return Err(Error::LengthMismatch {
                expected: b,
                found: a,
            });
        }
    }
    let b: f64 = p.iter().map(|(k, pk)| (pk * q.get(k)).sqrt()).sum();
    Ok(b.min(1.0))
}

/// Total-variation distance `0.5 * sum_x |p(x) - q(x)|`.
pub fn total_variation(p: &Distribution, q: &Distribution) -> f64 {
    let mut sum: f64 = p.iter().map(|(k, pk)| (pk - q.get(k)).abs()).sum();
    sum += q
        .iter()
        .filter(|(k, _)| p.get(k) == 0.0)
        .map(|(_, v)| v)
        .sum::<f64>();
    0.5 * sum
}

/// `{0^n: 1/2, 1^n: 1/2}`, the ideal GHZ/envariance outcome distribution.
pub fn two_peak(n: usize) -> Distribution {
    [("0".repeat(n), 0.5), ("1".repeat(n), 0.5)]
        .into_iter()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub b_mean: f64,
    /// Half-width of the 95% interval, `1.96 s / sqrt(m)`; zero when `m = 1`.
    pub i95: f64,
    pub repetitions: usize,
    pub per_repetition: Vec<f64>,
}

impl FidelityReport {
    pub fn from_samples(per_repetition: Vec<f64>) -> Self {
        let m = per_repetition.len();
        let mean = per_repetition.iter().sum::<f64>() / m as f64;
        let i95 = if m > 1 {
            let var = per_repetition
                .iter()
                .map(|b| (b - mean).powi(2))
                .sum::<f64>()
                / (m - 1) as f64;
            Z95 * var.sqrt() / (m as f64).sqrt()
        } else {
            0.0
        };
        Self {
            b_mean: mean,
            i95,
            repetitions: m,
            per_repetition,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EnvarianceRun {
    pub path: ConnectionPath,
    #[serde(skip)]
    pub circuit: Circuit,
    pub histograms: Vec<Histogram>,
    pub mean_distribution: Distribution,
    pub report: FidelityReport,
}

/// Compiles the envariance circuit for `n` qubits on `map`, samples it
/// `repetitions` times with `shots` shots each and scores every repetition
/// against the two-peak distribution.
pub fn fidelity_experiment(
    map: &CouplingMap,
    n: usize,
    shots: u64,
    repetitions: usize,
    seed: u64,
) -> Result<EnvarianceRun> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "envariance needs at least 2 qubits, got {n}"
        )));
    }
    if repetitions == 0 {
        return Err(Error::InvalidArgument(
            "repetitions must be positive".into(),
        ));
    }
    let root = most_connected(&rank_all(map))?;
    let path = create_path(map, root, n)?;
    let circuit = build_envariance(map, &path)?;
    if let Some(v) = verify_legality(map, &circuit).first() {
        return Err(Error::InvalidArgument(format!(
            "compiled circuit is illegal: {v}"
        )));
    }
    let exact = Simulator::default().distribution(&circuit)?;
    let ideal = two_peak(n);

    let mut histograms = Vec::with_capacity(repetitions);
    let mut fidelities = Vec::with_capacity(repetitions);
    for rep in 0..repetitions {
        let h = sample_distribution(&exact, shots, derive_seed(seed, rep as u64))?;
        fidelities.push(bhattacharyya(&h.to_distribution(), &ideal)?);
        histograms.push(h);
    }
    let freqs: Vec<_> = histograms.iter().map(Histogram::to_distribution).collect();
    Ok(EnvarianceRun {
        path,
        circuit,
        mean_distribution: Distribution::mean(&freqs),
        histograms,
        report: FidelityReport::from_samples(fidelities),
    })
}

/// Bit `j` is 1 iff strictly more than half of the samples have bit `j` set.
/// Ties and an empty sample list give 0.
pub fn majority_vote(samples: &[Bits], n: usize) -> Result<Bits> {
    let mut ones = vec![0usize; n];
    for s in samples {
        if s.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: s.len(),
            });
        }
        for (count, &bit) in ones.iter_mut().zip(s.as_slice()) {
            *count += usize::from(bit);
        }
    }
    Ok(ones
        .into_iter()
        .map(|c| 2 * c > samples.len())
        .collect::<Vec<_>>()
        .into())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearningOutcome {
    pub queries: usize,
    pub repetitions: usize,
    pub failures: usize,
    /// Fraction of repetitions whose voted string differs from `a`.
    pub p_err: f64,
    pub effective_a: Bits,
}

impl LearningOutcome {
    /// Binomial standard error of `p_err`.
    pub fn std_error(&self) -> f64 {
        (self.p_err * (1.0 - self.p_err) / self.repetitions as f64).sqrt()
    }
}

/// Runs the learner `repetitions` times: draw `queries` oracle samples, keep
/// those with result 1, majority-vote the query bits and compare with `a`.
pub fn parity_learn(
    config: &NoisySampleConfig,
    queries: usize,
    repetitions: usize,
    seed: u64,
) -> Result<LearningOutcome> {
    if queries == 0 || repetitions == 0 {
        return Err(Error::InvalidArgument(
            "queries and repetitions must be positive".into(),
        ));
    }
    let n = config.a().len();
    let mut failures = 0;
    let mut kept = Vec::with_capacity(queries);
    for rep in 0..repetitions {
        let mut rng = rng(derive_seed(seed, rep as u64));
        kept.clear();
        for _ in 0..queries {
            let s = draw_oracle_sample(config, &mut rng);
            if s.result {
                kept.push(s.query);
            }
        }
        if majority_vote(&kept, n)? != *config.a() {
            failures += 1;
        }
    }
    Ok(LearningOutcome {
        queries,
        repetitions,
        failures,
        p_err: failures as f64 / repetitions as f64,
        effective_a: config.a().clone(),
    })
}

/// One [`parity_learn`] outcome per query count. The seed for each point
/// depends only on `seed` and its query count.
pub fn perr_curve(
    config: &NoisySampleConfig,
    queries: &[usize],
    repetitions: usize,
    seed: u64,
) -> Result<Vec<LearningOutcome>> {
    if queries.is_empty() {
        return Err(Error::InvalidArgument("empty query list".into()));
    }
    queries
        .iter()
        .map(|&q| parity_learn(config, q, repetitions, derive_seed(seed, q as u64)))
        .collect()
}

/// Outcome histogram of the classical oracle sampler, keyed like the measured
/// register of a compiled parity circuit (query bits, then result bit).
pub fn oracle_histogram(config: &NoisySampleConfig, shots: usize, seed: u64) -> Histogram {
    crate::simulator::sample_noisy_oracle(config, shots, seed)
        .into_iter()
        .map(|s| (s.outcome(), 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bits(s: &str) -> Bits {
        s.parse().unwrap()
    }

    #[test]
    fn bhattacharyya_examples() {
        let p = two_peak(1);
        assert!((bhattacharyya(&p, &p).unwrap() - 1.0).abs() < 1e-12);
        let uniform: Distribution = ["00", "01", "10", "11"]
            .into_iter()
            .map(|k| (k.to_string(), 0.25))
            .collect();
        let expected = 2.0 * (0.25f64 * 0.5).sqrt();
        assert!((bhattacharyya(&uniform, &two_peak(2)).unwrap() - expected).abs() < 1e-12);
        assert!((expected - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        let single: Distribution = [("00".to_string(), 1.0)].into_iter().collect();
        assert!((bhattacharyya(&single, &two_peak(2)).unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
        assert!(matches!(
            bhattacharyya(&single, &two_peak(3)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn total_variation_examples() {
        let single: Distribution = [("00".to_string(), 1.0)].into_iter().collect();
        assert!((total_variation(&single, &two_peak(2)) - 0.5).abs() < 1e-12);
        assert_eq!(total_variation(&single, &single), 0.0);
    }

    #[test]
    fn majority_examples() {
        assert_eq!(
            majority_vote(&[bits("11"), bits("11"), bits("01")], 2).unwrap(),
            bits("11")
        );
        assert_eq!(majority_vote(&[], 3).unwrap(), bits("000"));
        assert_eq!(
            majority_vote(&[bits("10"), bits("01")], 2).unwrap(),
            bits("00")
        );
        assert!(majority_vote(&[bits("1")], 2).is_err());
    }

    #[test]
    fn single_repetition_has_zero_interval() {
        let r = FidelityReport::from_samples(vec![0.9]);
        assert_eq!(r.i95, 0.0);
        assert_eq!(r.repetitions, 1);
        let r = FidelityReport::from_samples(vec![0.9, 1.0]);
        let s = (0.005f64).sqrt();
        assert!((r.i95 - 1.96 * s / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn qx4_fidelity_noiseless() {
        let map = CouplingMap::bundled("qx4").unwrap();
        let run = fidelity_experiment(&map, 5, 8192, 10, 3).unwrap();
        assert!(run.report.b_mean >= 0.999, "{:?}", run.report);
        assert_eq!(run.histograms.len(), 10);
        assert!(run.histograms.iter().all(|h| h.total() == 8192));
        let single = fidelity_experiment(&map, 2, 100, 1, 3).unwrap();
        assert_eq!(single.report.i95, 0.0);
        assert!(fidelity_experiment(&map, 1, 100, 1, 3).is_err());
    }

    #[test]
    fn all_zero_string_never_fails() {
        let cfg = NoisySampleConfig::new(0.0, Bits::zeros(3)).unwrap();
        for q in [1, 2, 5] {
            assert_eq!(parity_learn(&cfg, q, 500, 9).unwrap().p_err, 0.0);
        }
    }

    #[test]
    fn curve_points_depend_only_on_query_count() {
        let cfg = NoisySampleConfig::new(0.1, bits("11")).unwrap();
        let full = perr_curve(&cfg, &[1, 2, 3, 4], 300, 5).unwrap();
        let single = perr_curve(&cfg, &[3], 300, 5).unwrap();
        assert_eq!(full[2], single[0]);
        assert!(perr_curve(&cfg, &[], 10, 5).is_err());
    }

    fn arb_dist() -> impl Strategy<Value = Distribution> {
        proptest::collection::vec(0.0f64..1.0, 8).prop_filter_map("nonzero", |w| {
            let total: f64 = w.iter().sum();
            (total > 0.0).then(|| {
                w.iter()
                    .enumerate()
                    .map(|(i, x)| (format!("{i:03b}"), x / total))
                    .collect()
            })
        })
    }

    proptest! {
        #[test]
        fn bhattacharyya_bounds(p in arb_dist(), q in arb_dist()) {
            prop_assert!((bhattacharyya(&p, &p).unwrap() - 1.0).abs() < 1e-12);
            let b = bhattacharyya(&p, &q).unwrap();
            prop_assert!((0.0..=1.0).contains(&b));
        }

        #[test]
        fn majority_permutation_invariant(
            samples in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 4), 0..12),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            let samples: Vec<Bits> = samples.into_iter().map(Bits::from).collect();
            let mut shuffled = samples.clone();
            shuffled.shuffle(&mut rng(seed));
            prop_assert_eq!(
                majority_vote(&samples, 4).unwrap(),
                majority_vote(&shuffled, 4).unwrap()
            );
        }
    }
}
