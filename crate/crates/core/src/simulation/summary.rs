use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{MetricsRecord, SimError, Strategy};
use crate::matching::GameCounters;

/// Mean, sample standard deviation and range of a per-timestep series.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SummaryStat {
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
}

impl SummaryStat {
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let std_dev = if samples.len() > 1 {
            libm::sqrt(samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0))
        } else {
            0.0
        };
        let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
        let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        SummaryStat { mean: mean.clamp(min, max), std_dev, min, max }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StrategySummary {
    pub timesteps: usize,
    /// Percentage of UEs at or above the satisfaction threshold.
    pub satisfied_percent: SummaryStat,
    /// Per-timestep mean of the satisfaction level across UEs.
    pub mean_kappa: SummaryStat,
    pub associations: SummaryStat,
    pub quota_violations: usize,
    pub counters: GameCounters,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeSummary {
    pub strategies: BTreeMap<Strategy, StrategySummary>,
}

impl EpisodeSummary {
    pub fn get(&self, strategy: Strategy) -> Option<&StrategySummary> {
        self.strategies.get(&strategy)
    }
}

/// Aggregates records per strategy over timesteps.
pub fn summarize(records: &[MetricsRecord]) -> Result<EpisodeSummary, SimError> {
    if records.is_empty() {
        return Err(SimError::EmptyRecords);
    }
    let mut groups: BTreeMap<Strategy, Vec<&MetricsRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(r.strategy).or_default().push(r);
    }
    let strategies = groups
        .into_iter()
        .map(|(strategy, rs)| {
            let percent: Vec<f64> = rs
                .iter()
                .map(|r| if r.kappa.is_empty() { 100.0 } else { 100.0 * r.satisfied_count as f64 / r.kappa.len() as f64 })
                .collect();
            let kappa: Vec<f64> = rs
                .iter()
                .map(|r| if r.kappa.is_empty() { 1.0 } else { r.kappa.iter().sum::<f64>() / r.kappa.len() as f64 })
                .collect();
            let assoc: Vec<f64> = rs.iter().map(|r| r.association_count as f64).collect();
            let mut counters = GameCounters::default();
            for r in &rs {
                counters.merge(&r.counters);
            }
            let summary = StrategySummary {
                timesteps: rs.len(),
                satisfied_percent: SummaryStat::from_samples(&percent),
                mean_kappa: SummaryStat::from_samples(&kappa),
                associations: SummaryStat::from_samples(&assoc),
                quota_violations: rs.iter().filter(|r| r.quota_violation).count(),
                counters,
            };
            (strategy, summary)
        })
        .collect();
    Ok(EpisodeSummary { strategies })
}
