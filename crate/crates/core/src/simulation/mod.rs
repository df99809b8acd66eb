//! Episode driver: mobility, channels and demands over time, every
//! selected clustering strategy on identical inputs, one record per
//! (timestep, strategy).

mod summary;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::baselines::{best_channel, canonical, da_m2m, gca, min_distance, swap_matching, SwapCapExceeded};
use crate::channel::{generate_layout, realize_channels, step_mobility, ChannelRealization};
use crate::config::{ConfigError, DemandPolicy, ScenarioConfig};
use crate::evaluate::{Evaluator, Matching};
use crate::matching::{ea_m2m_with, GameCounters};
use crate::rng::{substream, Stream};

pub use summary::{summarize, EpisodeSummary, StrategySummary, SummaryStat};

/// Registered clustering strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    EarlyAcceptance,
    DeferredAcceptance,
    DeferredAcceptanceSwap,
    BestChannel,
    MinDistance,
    Canonical,
    GreedyCombining,
}

impl Strategy {
    pub const ALL: [Strategy; 7] = [
        Strategy::EarlyAcceptance,
        Strategy::DeferredAcceptance,
        Strategy::DeferredAcceptanceSwap,
        Strategy::BestChannel,
        Strategy::MinDistance,
        Strategy::Canonical,
        Strategy::GreedyCombining,
    ];

    /// Identifier used on the command line and in output files.
    pub fn name(self) -> &'static str {
        match self {
            Strategy::EarlyAcceptance => "ea",
            Strategy::DeferredAcceptance => "da",
            Strategy::DeferredAcceptanceSwap => "da-smp",
            Strategy::BestChannel => "bc",
            Strategy::MinDistance => "md",
            Strategy::Canonical => "cs",
            Strategy::GreedyCombining => "gca",
        }
    }

    /// Whether the strategy is built to honor the per-AP and per-UE limits.
    pub fn enforces_quotas(self) -> bool {
        matches!(self, Strategy::EarlyAcceptance | Strategy::DeferredAcceptance | Strategy::DeferredAcceptanceSwap)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| SimError::UnknownStrategy(String::from(s)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SimError {
    Config(ConfigError),
    UnknownStrategy(String),
    NoStrategies,
    EmptyRecords,
    SwapCap { timestep: usize, source: SwapCapExceeded },
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::Config(e) => write!(f, "{e}"),
            SimError::UnknownStrategy(s) => write!(f, "unknown strategy `{s}` (expected one of ea, da, da-smp, bc, md, cs, gca)"),
            SimError::NoStrategies => f.write_str("no strategy selected"),
            SimError::EmptyRecords => f.write_str("cannot summarize an empty record set"),
            SimError::SwapCap { timestep, source } => write!(f, "timestep {timestep}: {source}"),
        }
    }
}

impl core::error::Error for SimError {}

impl From<ConfigError> for SimError {
    fn from(e: ConfigError) -> Self {
        SimError::Config(e)
    }
}

/// Output of one strategy on one channel realization.
#[derive(Debug, Clone)]
pub struct Clustering {
    pub matching: Matching,
    pub counters: GameCounters,
}

/// Runs `strategy` on one timestep's inputs.
pub fn run_strategy(
    strategy: Strategy,
    channels: &ChannelRealization,
    evaluator: &Evaluator,
    demands: &[f64],
    config: &ScenarioConfig,
) -> Result<Clustering, SwapCapExceeded> {
    let plain = |matching| Clustering { matching, counters: GameCounters::default() };
    Ok(match strategy {
        Strategy::EarlyAcceptance => {
            let out = ea_m2m_with(&channels.gains, evaluator, demands, config);
            Clustering { matching: out.matching, counters: out.counters }
        }
        Strategy::DeferredAcceptance => {
            let (matching, counters) = da_m2m(&channels.gains, config);
            Clustering { matching, counters }
        }
        Strategy::DeferredAcceptanceSwap => {
            let (matching, mut counters) = da_m2m(&channels.gains, config);
            let matching = swap_matching(matching, evaluator, demands, config, &mut counters)?;
            Clustering { matching, counters }
        }
        Strategy::BestChannel => plain(best_channel(channels)),
        Strategy::MinDistance => plain(min_distance(channels)),
        Strategy::Canonical => plain(canonical(channels)),
        Strategy::GreedyCombining => plain(gca(channels, evaluator, demands, config)),
    })
}

/// Draws one demand per UE uniformly from the configured set.
pub fn draw_demands<R: Rng + ?Sized>(config: &ScenarioConfig, rng: &mut R) -> Vec<f64> {
    (0..config.num_ues)
        .map(|_| config.demand_set[rng.random_range(0..config.demand_set.len())])
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRecord {
    pub timestep: usize,
    pub strategy: Strategy,
    pub kappa: Vec<f64>,
    pub rate: Vec<f64>,
    pub demand: Vec<f64>,
    pub satisfied_count: usize,
    pub association_count: usize,
    pub counters: GameCounters,
    /// Whether the matching breaks a per-AP or per-UE association limit.
    pub quota_violation: bool,
}

/// Simulates `config.num_steps` timesteps and evaluates every strategy.
///
/// Timesteps are numbered from 1. The first one uses the initial layout;
/// every later one first moves the UEs.
/// Channels and demands come from per-timestep substreams; the records of
/// one strategy do not depend on which other strategies run.
pub fn run_episode(config: &ScenarioConfig, strategies: &[Strategy]) -> Result<Vec<MetricsRecord>, SimError> {
    config.validate()?;
    if strategies.is_empty() {
        return Err(SimError::NoStrategies);
    }
    let seed = config.seed;
    let mut layout = generate_layout(config, &mut substream(seed, Stream::Layout, 0));
    let mut mobility = substream(seed, Stream::Mobility, 0);
    let episode_demands = draw_demands(config, &mut substream(seed, Stream::Demands, 0));

    let mut records = Vec::with_capacity(config.num_steps * strategies.len());
    for t in 1..=config.num_steps {
        if t > 1 {
            layout = step_mobility(&layout, config, &mut mobility);
        }
        let step = t as u32;
        let channels = realize_channels(
            &layout,
            config,
            &mut substream(seed, Stream::Shadowing, step),
            &mut substream(seed, Stream::Fading, step),
        );
        let demands = match config.demand_policy {
            DemandPolicy::PerTimestep => draw_demands(config, &mut substream(seed, Stream::Demands, step)),
            DemandPolicy::PerEpisode => episode_demands.clone(),
        };
        let evaluator = Evaluator::new(&channels, config);
        for &strategy in strategies {
            let out = run_strategy(strategy, &channels, &evaluator, &demands, config)
                .map_err(|source| SimError::SwapCap { timestep: t, source })?;
            let eval = evaluator.evaluate(&out.matching, &demands);
            records.push(MetricsRecord {
                timestep: t,
                strategy,
                satisfied_count: eval.satisfied_count(config.satisfaction_threshold),
                association_count: out.matching.association_count(),
                quota_violation: !out.matching.respects_quotas(config.ap_quota, config.ue_quota),
                kappa: eval.kappa,
                rate: eval.rate,
                demand: demands.clone(),
                counters: out.counters,
            });
        }
    }
    Ok(records)
}
