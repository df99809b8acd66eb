use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cellfree_core::{run_episode, summarize, ConfigError, MetricsRecord, ScenarioConfig, SimError, Strategy};
use rayon::prelude::*;

use crate::output::{record_rows, write_records, write_summary, SummaryReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// A sweep: every seed is run once per satisfaction threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub config: ScenarioConfig,
    pub strategies: Vec<Strategy>,
    pub seeds: Vec<u64>,
    pub kappa0: Vec<f64>,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
}

impl RunSpec {
    /// All strategies, the config's own seed and threshold, CSV records.
    pub fn new(config: ScenarioConfig, out_dir: impl Into<PathBuf>) -> Self {
        RunSpec {
            strategies: Strategy::ALL.to_vec(),
            seeds: vec![config.seed],
            kappa0: vec![config.satisfaction_threshold],
            config,
            out_dir: out_dir.into(),
            format: OutputFormat::Csv,
        }
    }

    /// Per-job configs in output order (seed-major).
    pub fn jobs(&self) -> Result<Vec<ScenarioConfig>, RunError> {
        if self.strategies.is_empty() {
            return Err(RunError::Sim(SimError::NoStrategies));
        }
        if let Some(dup) = self.strategies.iter().enumerate().find(|(i, s)| self.strategies[..*i].contains(s)) {
            return Err(RunError::DuplicateStrategy(*dup.1));
        }
        if self.seeds.is_empty() {
            return Err(RunError::EmptyList("seeds"));
        }
        if self.kappa0.is_empty() {
            return Err(RunError::EmptyList("kappa0"));
        }
        let mut jobs = Vec::with_capacity(self.seeds.len() * self.kappa0.len());
        for &seed in &self.seeds {
            for &k0 in &self.kappa0 {
                let config = ScenarioConfig { seed, satisfaction_threshold: k0, ..self.config.clone() };
                config.validate()?;
                jobs.push(config);
            }
        }
        Ok(jobs)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("strategy `{0}` is listed twice")]
    DuplicateStrategy(Strategy),
    #[error("the {0} list is empty")]
    EmptyList(&'static str),
    #[error("seed {seed}, kappa_0 {kappa_0}")]
    Episode { seed: u64, kappa_0: f64, source: SimError },
    #[error("cannot write {path}")]
    Write { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone)]
pub struct JobResult {
    pub seed: u64,
    pub kappa_0: f64,
    pub records: Vec<MetricsRecord>,
    pub summary: SummaryReport,
}

impl JobResult {
    pub fn records_file(&self, format: OutputFormat) -> String {
        format!("records_seed{}_k0-{}.{}", self.seed, self.kappa_0, format.extension())
    }

    pub fn summary_file(&self) -> String {
        format!("summary_seed{}_k0-{}.json", self.seed, self.kappa_0)
    }
}

/// Runs every (seed, threshold) episode in parallel; results come back in
/// seed-major order regardless of scheduling.
pub fn execute(spec: &RunSpec) -> Result<Vec<JobResult>, RunError> {
    let jobs = spec.jobs()?;
    jobs.par_iter()
        .map(|config| {
            let (seed, kappa_0) = (config.seed, config.satisfaction_threshold);
            let wrap = |source| RunError::Episode { seed, kappa_0, source };
            let records = run_episode(config, &spec.strategies).map_err(wrap)?;
            let summary = summarize(&records).map_err(wrap)?;
            let summary = SummaryReport::new(seed, kappa_0, config, &summary, &spec.strategies);
            Ok(JobResult { seed, kappa_0, records, summary })
        })
        .collect()
}

fn write_outputs(spec: &RunSpec, results: &[JobResult], written: &mut Vec<PathBuf>) -> Result<(), RunError> {
    let fail = |path: &Path| {
        let path = path.to_path_buf();
        move |source| RunError::Write { path, source }
    };
    fs::create_dir_all(&spec.out_dir).map_err(fail(&spec.out_dir))?;
    for job in results {
        let path = spec.out_dir.join(job.records_file(spec.format));
        written.push(path.clone());
        write_records(&path, &record_rows(job.seed, job.kappa_0, &job.records), spec.format).map_err(fail(&path))?;
        let path = spec.out_dir.join(job.summary_file());
        written.push(path.clone());
        write_summary(&path, &job.summary).map_err(fail(&path))?;
    }
    Ok(())
}

/// Runs the sweep and writes one records file and one summary file per
/// (seed, threshold). On failure no output file of this run is left behind.
pub fn cmd_run(spec: &RunSpec) -> Result<Vec<JobResult>, RunError> {
    let results = execute(spec)?;
    let mut written = Vec::new();
    if let Err(e) = write_outputs(spec, &results, &mut written) {
        for path in &written {
            let _ = fs::remove_file(path);
        }
        return Err(e);
    }
    Ok(results)
}

/// Plain-text table of the headline metrics for each job. Approximate
/// benchmarks are marked with `*`.
pub fn render_table(results: &[JobResult]) -> String {
    let mut s = String::new();
    let mut any_approximate = false;
    for job in results {
        let _ = writeln!(s, "seed {}  kappa_0 {}", job.seed, job.kappa_0);
        let _ = writeln!(s, "  {:<8} {:>12} {:>10} {:>14}", "strategy", "% satisfied", "mean kappa", "associations");
        for r in &job.summary.strategies {
            any_approximate |= r.approximate;
            let name = if r.approximate { format!("{}*", r.strategy) } else { r.strategy.clone() };
            let _ = writeln!(
                s,
                "  {:<8} {:>12.2} {:>10.4} {:>14.1}",
                name, r.satisfied_percent.mean, r.mean_kappa.mean, r.associations.mean
            );
        }
    }
    if any_approximate {
        s.push_str("* approximate benchmark\n");
    }
    s
}
