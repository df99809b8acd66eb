//! User-centric AP clustering for downlink cell-free MIMO networks.
//!
//! The crate is `no_std` (it needs `alloc`) and contains everything that is
//! pure computation: the stochastic channel model, SINR/QoS evaluation under
//! equal power sharing, the early-acceptance many-to-many matching game, the
//! comparison clustering schemes and the per-episode driver. File formats
//! and the command line live in the `cellfree` crate.
//!
//! ```
//! use cellfree_core::{run_episode, ScenarioConfig, Strategy};
//!
//! let config = ScenarioConfig { num_aps: 6, num_ues: 3, num_steps: 2, ..Default::default() };
//! let records = run_episode(&config, &[Strategy::EarlyAcceptance, Strategy::BestChannel]).unwrap();
//! assert_eq!(records.len(), 4);
//! ```

#![no_std]

extern crate alloc;

pub mod baselines;
pub mod channel;
pub mod config;
pub mod evaluate;
pub mod matching;
mod matrix;
pub mod rng;
pub mod simulation;

pub use channel::{ChannelRealization, Layout, Point};
pub use config::{ConfigError, DemandPolicy, ScenarioConfig, ShadowingScale};
pub use evaluate::{evaluate_network, Evaluator, Matching, NetworkEvaluation};
pub use matching::{ea_m2m, GameCounters, UePartition, UeStatus};
pub use matrix::Matrix;
pub use num_complex::Complex64;
pub use simulation::{run_episode, summarize, EpisodeSummary, MetricsRecord, SimError, Strategy, StrategySummary, SummaryStat};
