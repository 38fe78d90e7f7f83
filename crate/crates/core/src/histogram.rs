//! Shot histograms and probability distributions keyed by bitstring.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shot counts keyed by measured bitstring (classical bit 0 leftmost).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Histogram(BTreeMap<String, u64>);

impl Histogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, outcome: impl Into<String>, count: u64) {
        *self.0.entry(outcome.into()).or_insert(0) += count;
    }

    pub fn get(&self, outcome: &str) -> u64 {
        self.0.get(outcome).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Relative frequencies. An empty histogram gives an empty distribution.
    pub fn to_distribution(&self) -> Distribution {
        let total = self.total() as f64;
        Distribution(
            self.0
                .iter()
                .map(|(k, &v)| (k.clone(), v as f64 / total))
                .collect(),
        )
    }
}

impl FromIterator<(String, u64)> for Histogram {
    fn from_iter<I: IntoIterator<Item = (String, u64)>>(iter: I) -> Self {
        let mut h = Histogram::new();
        for (k, v) in iter {
            h.record(k, v);
        }
        h
    }
}

/// Probabilities keyed by bitstring. Missing keys read as zero.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Distribution(BTreeMap<String, f64>);

impl Distribution {
    /// Checks uniform key length, entries in `[0, 1]` and total mass 1.
    pub fn new(probabilities: BTreeMap<String, f64>) -> Result<Self> {
        let d = Self(probabilities);
        d.key_len()?;
        if d.0.values().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::InvalidArgument("probability outside [0, 1]".into()));
        }
        let total: f64 = d.0.values().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(d)
    }

    pub fn get(&self, outcome: &str) -> f64 {
        self.0.get(outcome).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.values().sum()
    }

    /// Common key length, or `None` for an empty distribution.
    pub fn key_len(&self) -> Result<Option<usize>> {
        let mut keys = self.0.keys();
        let Some(first) = keys.next() else {
            return Ok(None);
        };
        for k in keys {
            if k.len() != first.len() {
                return Err(Error::LengthMismatch {
                    expected: first.len(),
                    found: k.len(),
                });
            }
        }
        Ok(Some(first.len()))
    }

    /// Entry-wise mean of several distributions.
    pub fn mean<'a>(items: impl IntoIterator<Item = &'a Distribution>) -> Distribution {
        let mut sum: BTreeMap<String, f64> = BTreeMap::new();
        let mut count = 0usize;
        for d in items {
            count += 1;
            for (k, v) in d.iter() {
                *sum.entry(k.to_string()).or_insert(0.0) += v;
            }
        }
        for v in sum.values_mut() {
            *v /= count as f64;
        }
        Distribution(sum)
    }
}

impl FromIterator<(String, f64)> for Distribution {
    fn from_iter<I: IntoIterator<Item = (String, f64)>>(iter: I) -> Self {
        let mut map = BTreeMap::new();
        for (k, v) in iter {
            *map.entry(k).or_insert(0.0) += v;
        }
        Distribution(map)
    }
}
