//! Exact state-vector simulation, shot sampling and the classical sampler for
//! the noisy parity example oracle.
//!
//! Qubit `i` is bit `i` of the amplitude index (little-endian). All sampling
//! uses [`ChaCha8Rng`] seeded with `seed_from_u64`, so results are identical
//! across platforms for a given seed.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::distributions::{Distribution as _, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::histogram::{Distribution, Histogram};

pub const DEFAULT_MAX_QUBITS: usize = 20;

/// Seed for sub-experiment `index`, mixed with SplitMix64 so neighbouring
/// indices give unrelated streams.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>` on `num_qubits` qubits.
    pub fn new(num_qubits: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Self {
            num_qubits,
            amplitudes,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check(&self, qubit: usize) -> Result<usize> {
        if qubit < self.num_qubits {
            Ok(1 << qubit)
        } else {
            Err(Error::QubitOutOfRange {
                qubit,
                width: self.num_qubits,
            })
        }
    }

    /// Applies a unitary gate in place. Measurements are terminal and leave
    /// the state untouched.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        match *gate {
            Gate::H { qubit } => {
                let mask = self.check(qubit)?;
                for i in 0..self.amplitudes.len() {
                    if i & mask == 0 {
                        let (a, b) = (self.amplitudes[i], self.amplitudes[i | mask]);
                        self.amplitudes[i] = (a + b) * FRAC_1_SQRT_2;
                        self.amplitudes[i | mask] = (a - b) * FRAC_1_SQRT_2;
                    }
                }
            }
            Gate::X { qubit } => {
                let mask = self.check(qubit)?;
                for i in 0..self.amplitudes.len() {
                    if i & mask == 0 {
                        self.amplitudes.swap(i, i | mask);
                    }
                }
            }
            Gate::Cnot { control, target } => {
                let cmask = self.check(control)?;
                let tmask = self.check(target)?;
                if cmask == tmask {
                    return Err(Error::InvalidArgument(format!(
                        "cnot control and target are both {control}"
                    )));
                }
                for i in 0..self.amplitudes.len() {
                    if i & cmask != 0 && i & tmask == 0 {
                        self.amplitudes.swap(i, i | tmask);
                    }
                }
            }
            Gate::Measure { qubit, .. } => {
                self.check(qubit)?;
            }
        }
        Ok(())
    }

    /// Exact outcome probabilities for `measured`, marginalising the rest.
    /// Outcome strings put `measured[0]` leftmost; zero-probability outcomes
    /// are omitted.
    pub fn marginal(&self, measured: &[usize]) -> Result<Distribution> {
        let masks = measured
            .iter()
            .map(|&q| self.check(q))
            .collect::<Result<Vec<_>>>()?;
        let mut acc: BTreeMap<Vec<u8>, f64> = BTreeMap::new();
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if p > 0.0 {
                let key = masks
                    .iter()
                    .map(|&m| if i & m != 0 { b'1' } else { b'0' })
                    .collect();
                *acc.entry(key).or_insert(0.0) += p;
            }
        }
        Ok(acc
            .into_iter()
            .map(|(k, p)| (String::from_utf8(k).expect("ascii"), p))
            .collect())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Simulator {
    pub max_qubits: usize,
}

impl Default for Simulator {
    fn default() -> Self {
        Self {
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

impl Simulator {
    pub fn new(max_qubits: usize) -> Self {
        Self { max_qubits }
    }

    /// State after every non-measurement gate, starting from `|0...0>`.
    pub fn run_exact(&self, circuit: &Circuit) -> Result<StateVector> {
        if circuit.width() > self.max_qubits {
            return Err(Error::WidthExceeded {
                width: circuit.width(),
                max: self.max_qubits,
            });
        }
        let mut state = StateVector::new(circuit.width());
        for gate in circuit.gates() {
            state.apply(gate)?;
        }
        Ok(state)
    }

    /// Exact distribution over the circuit's measured qubits.
    pub fn distribution(&self, circuit: &Circuit) -> Result<Distribution> {
        if circuit.measured_qubits().is_empty() {
            return Err(Error::NoMeasurements);
        }
        self.run_exact(circuit)?.marginal(circuit.measured_qubits())
    }

    pub fn sample(&self, circuit: &Circuit, shots: u64, seed: u64) -> Result<Histogram> {
        let dist = self.distribution(circuit)?;
        sample_distribution(&dist, shots, seed)
    }
}

/// Draws `shots` independent outcomes from `dist`.
pub fn sample_distribution(dist: &Distribution, shots: u64, seed: u64) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be positive".into()));
    }
    let outcomes: Vec<&str> = dist.keys().collect();
    let weights: Vec<f64> = dist.iter().map(|(_, p)| p).collect();
    let index = WeightedIndex::new(&weights)
        .map_err(|e| Error::InvalidArgument(format!("cannot sample distribution: {e}")))?;
    let mut counts = vec![0u64; outcomes.len()];
    let mut rng = rng(seed);
    for _ in 0..shots {
        counts[index.sample(&mut rng)] += 1;
    }
    Ok(outcomes
        .into_iter()
        .zip(counts)
        .filter(|&(_, c)| c > 0)
        .map(|(k, c)| (k.to_string(), c))
        .collect())
}

/// Noise rate and encoded string for the parity example oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoisySampleConfig {
    eta: f64,
    a: Bits,
}

impl NoisySampleConfig {
    pub fn new(eta: f64, a: Bits) -> Result<Self> {
        if !(0.0..0.5).contains(&eta) {
            return Err(Error::InvalidEta(eta));
        }
        Ok(Self { eta, a })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn a(&self) -> &Bits {
        &self.a
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSample {
    pub query: Bits,
    pub result: bool,
}

impl OracleSample {
    /// Query bits followed by the result bit, matching the measured order of
    /// compiled parity circuits.
    pub fn outcome(&self) -> String {
        format!("{}{}", self.query, u8::from(self.result))
    }
}

pub(crate) fn draw_oracle_sample<R: Rng>(config: &NoisySampleConfig, rng: &mut R) -> OracleSample {
    let noisy = rng.gen_bool(config.eta);
    let reveal = rng.gen_bool(0.5);
    // Clean branch: (0^n, 0) or (a, 1). Noisy branch: (0^n, 1) or (a, 0).
    let query = if reveal {
        config.a.clone()
    } else {
        Bits::zeros(config.a.len())
    };
    OracleSample {
        query,
        result: reveal != noisy,
    }
}

/// `queries` independent measurements of the noisy oracle output: the clean
/// state with probability `1 - eta`, the result-flipped one with probability
/// `eta`.
pub fn sample_noisy_oracle(
    config: &NoisySampleConfig,
    queries: usize,
    seed: u64,
) -> Vec<OracleSample> {
    let mut rng = rng(seed);
    (0..queries)
        .map(|_| draw_oracle_sample(config, &mut rng))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn hadamard_on_zero() {
        let mut s = StateVector::new(1);
        s.apply(&Gate::h(0)).unwrap();
        assert!(close(s.amplitude(0), Complex64::new(FRAC_1_SQRT_2, 0.0)));
        assert!(close(s.amplitude(1), Complex64::new(FRAC_1_SQRT_2, 0.0)));
    }

    #[test]
    fn bell_construction_little_endian() {
        let mut s = StateVector::new(2);
        s.apply(&Gate::h(0)).unwrap();
        // (|00> + |10>)/sqrt2 in q1q0 notation means amplitude at index 0 and 1.
        s.apply(&Gate::cnot(0, 1)).unwrap();
        assert!(close(s.amplitude(0), Complex64::new(FRAC_1_SQRT_2, 0.0)));
        assert!(close(s.amplitude(3), Complex64::new(FRAC_1_SQRT_2, 0.0)));
        assert!(close(s.amplitude(1), Complex64::new(0.0, 0.0)));
        let d = s.marginal(&[0, 1]).unwrap();
        assert!((d.get("00") - 0.5).abs() < 1e-12);
        assert!((d.get("11") - 0.5).abs() < 1e-12);
    }

    #[test]
    fn x_sets_little_endian_bit() {
        let mut s = StateVector::new(3);
        s.apply(&Gate::x(1)).unwrap();
        assert_eq!(s.amplitude(2), Complex64::new(1.0, 0.0));
        assert_eq!(s.marginal(&[0, 1, 2]).unwrap().get("010"), 1.0);
        assert!(s.apply(&Gate::x(3)).is_err());
    }

    #[test]
    fn run_exact_limits() {
        let c = Circuit::new(3);
        let s = Simulator::default().run_exact(&c).unwrap();
        assert_eq!(s.amplitude(0), Complex64::new(1.0, 0.0));
        assert!(matches!(
            Simulator::new(2).run_exact(&c),
            Err(Error::WidthExceeded { width: 3, max: 2 })
        ));
        assert!(matches!(
            Simulator::default().sample(&c, 10, 0),
            Err(Error::NoMeasurements)
        ));
    }

    #[test]
    fn sampling_is_seeded() {
        let mut c = Circuit::new(2);
        c.extend([Gate::h(0), Gate::cnot(0, 1)]).unwrap();
        c.measure_all(&[0, 1]).unwrap();
        let sim = Simulator::default();
        let h = sim.sample(&c, 8192, 7).unwrap();
        assert_eq!(h.total(), 8192);
        assert!(h.iter().all(|(k, _)| k == "00" || k == "11"));
        assert_eq!(h, sim.sample(&c, 8192, 7).unwrap());
        let one = sim.sample(&c, 1, 3).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.total(), 1);
    }

    #[test]
    fn noiseless_oracle_reveals_a() {
        let a: Bits = "101".parse().unwrap();
        let cfg = NoisySampleConfig::new(0.0, a.clone()).unwrap();
        let samples = sample_noisy_oracle(&cfg, 500, 1);
        assert!(samples.iter().filter(|s| s.result).all(|s| s.query == a));
        assert!(samples
            .iter()
            .filter(|s| !s.result)
            .all(|s| s.query.is_zero()));

        let zero = NoisySampleConfig::new(0.0, Bits::zeros(3)).unwrap();
        assert!(sample_noisy_oracle(&zero, 200, 2)
            .iter()
            .all(|s| s.query.is_zero()));
    }

    #[test]
    fn noisy_oracle_conditional_rate() {
        let a: Bits = "11".parse().unwrap();
        let cfg = NoisySampleConfig::new(0.25, a.clone()).unwrap();
        let samples = sample_noisy_oracle(&cfg, 200_000, 11);
        let post: Vec<_> = samples.iter().filter(|s| s.result).collect();
        let n = samples.len() as f64;
        let frac_one = post.len() as f64 / n;
        assert!((frac_one - 0.5).abs() < 4.0 * (0.25 / n).sqrt());
        let k = post.len() as f64;
        let frac_a = post.iter().filter(|s| s.query == a).count() as f64 / k;
        // P(query = a | result = 1) = 1 - eta.
        assert!((frac_a - 0.75).abs() < 4.0 * (0.75 * 0.25 / k).sqrt());
    }

    #[test]
    fn eta_validation() {
        assert!(NoisySampleConfig::new(0.5, Bits::zeros(1)).is_err());
        assert!(NoisySampleConfig::new(-0.1, Bits::zeros(1)).is_err());
        assert!(NoisySampleConfig::new(0.49, Bits::zeros(1)).is_ok());
    }

    #[test]
    fn derived_seeds_differ() {
        let seeds: std::collections::HashSet<_> = (0..1000).map(|i| derive_seed(42, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }

    fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
        prop_oneof![
            (0..n).prop_map(Gate::h),
            (0..n).prop_map(Gate::x),
            (0..n, 1..n).prop_map(move |(c, d)| Gate::cnot(c, (c + d) % n)),
        ]
    }

    proptest! {
        #[test]
        fn norm_preserved(gates in proptest::collection::vec(arb_gate(5), 0..200)) {
            let mut s = StateVector::new(5);
            for g in &gates {
                s.apply(g).unwrap();
                prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
            }
        }

        #[test]
        fn gates_are_involutions(
            prefix in proptest::collection::vec(arb_gate(4), 0..30),
            g in arb_gate(4),
        ) {
            let mut s = StateVector::new(4);
            for p in &prefix {
                s.apply(p).unwrap();
            }
            let before = s.clone();
            s.apply(&g).unwrap();
            s.apply(&g).unwrap();
            for (a, b) in s.amplitudes().iter().zip(before.amplitudes()) {
                prop_assert!((a - b).norm() < 1e-12);
            }
        }
    }
}
