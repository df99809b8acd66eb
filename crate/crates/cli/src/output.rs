use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use cellfree_core::{EpisodeSummary, GameCounters, MetricsRecord, Strategy, SummaryStat};
use serde::{Deserialize, Serialize};

use crate::run::OutputFormat;

/// One row per (timestep, strategy, UE). Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordRow {
    pub seed: u64,
    pub timestep: usize,
    pub strategy: String,
    pub kappa_0: f64,
    pub ue_index: usize,
    pub kappa: f64,
    pub rate_bps: f64,
    pub satisfied: bool,
    pub associations_total: usize,
    pub quota_violation: bool,
}

pub fn record_rows(seed: u64, kappa_0: f64, records: &[MetricsRecord]) -> Vec<RecordRow> {
    records
        .iter()
        .flat_map(|r| {
            r.kappa.iter().zip(&r.rate).enumerate().map(move |(ue, (&kappa, &rate))| RecordRow {
                seed,
                timestep: r.timestep,
                strategy: r.strategy.name().to_owned(),
                kappa_0,
                ue_index: ue,
                kappa,
                rate_bps: rate,
                satisfied: kappa >= kappa_0,
                associations_total: r.association_count,
                quota_violation: r.quota_violation,
            })
        })
        .collect()
}

pub fn write_records(path: &Path, rows: &[RecordRow], format: OutputFormat) -> std::io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            out.write_all(b"\n")?;
        }
    }
    out.flush()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyReport {
    pub strategy: String,
    /// Set for reconstructed benchmarks whose numbers are indicative only.
    pub approximate: bool,
    pub timesteps: usize,
    pub satisfied_percent: SummaryStat,
    pub mean_kappa: SummaryStat,
    pub associations: SummaryStat,
    pub quota_violations: usize,
    pub counters: GameCounters,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryReport {
    pub seed: u64,
    pub kappa_0: f64,
    pub num_aps: usize,
    pub num_ues: usize,
    pub num_steps: usize,
    pub strategies: Vec<StrategyReport>,
}

impl SummaryReport {
    /// Strategies are listed in `order`; ones absent from `summary` are skipped.
    pub fn new(seed: u64, kappa_0: f64, config: &cellfree_core::ScenarioConfig, summary: &EpisodeSummary, order: &[Strategy]) -> Self {
        let strategies = order
            .iter()
            .filter_map(|&s| {
                summary.get(s).map(|v| StrategyReport {
                    strategy: s.name().to_owned(),
                    approximate: s == Strategy::GreedyCombining,
                    timesteps: v.timesteps,
                    satisfied_percent: v.satisfied_percent,
                    mean_kappa: v.mean_kappa,
                    associations: v.associations,
                    quota_violations: v.quota_violations,
                    counters: v.counters,
                })
            })
            .collect();
        SummaryReport { seed, kappa_0, num_aps: config.num_aps, num_ues: config.num_ues, num_steps: config.num_steps, strategies }
    }

    pub fn get(&self, strategy: Strategy) -> Option<&StrategyReport> {
        self.strategies.iter().find(|r| r.strategy == strategy.name())
    }
}

pub fn write_summary(path: &Path, summary: &SummaryReport) -> std::io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut out, summary)?;
    out.write_all(b"\n")?;
    out.flush()
}
