//! Early-acceptance many-to-many matching between UEs and APs.
//!
//! The game runs in two stages on preference lists built from channel gains:
//!
//! 1. [`ea_initial_association`] gives every UE at most one AP. Requests are
//!    accepted on the spot when the UE is inside the AP's quota window, and
//!    UEs nobody accepted are then forced onto their best unsaturated AP.
//! 2. [`cluster_evolution`] grows the clusters of UEs that are still below
//!    the satisfaction threshold, one favorable association at a time.
//!
//! Unlike deferred acceptance, no AP ever holds a tentative list; every
//! accepted request is final.

mod evolution;
mod initial;
mod prefs;

use alloc::vec;
use alloc::vec::Vec;

use crate::channel::ChannelRealization;
use crate::config::ScenarioConfig;
use crate::evaluate::{Evaluator, Matching};
use crate::matrix::Matrix;

pub use evolution::{cluster_evolution, is_favorable_pair, EvolutionTrace};
pub use initial::ea_initial_association;
pub use prefs::{build_preferences, AssociateError, PreferenceState};

/// Where a UE currently stands in the game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UeStatus {
    /// Not yet accepted by any AP.
    Rejected,
    /// Served and still allowed to grow its cluster.
    Associated,
    /// Could not be served at all.
    Unassociated,
    /// Reached the satisfaction threshold.
    Satisfied,
    /// Served but gave up below the threshold.
    Unsatisfied,
}

/// Assignment of every UE to exactly one [`UeStatus`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UePartition {
    status: Vec<UeStatus>,
}

impl UePartition {
    pub fn all_rejected(num_ues: usize) -> Self {
        Self { status: vec![UeStatus::Rejected; num_ues] }
    }

    pub fn status(&self, ue: usize) -> UeStatus {
        self.status[ue]
    }

    pub fn set(&mut self, ue: usize, status: UeStatus) {
        self.status[ue] = status;
    }

    pub fn members(&self, status: UeStatus) -> Vec<usize> {
        (0..self.status.len()).filter(|&k| self.status[k] == status).collect()
    }

    pub fn count(&self, status: UeStatus) -> usize {
        self.status.iter().filter(|&&s| s == status).count()
    }

    pub fn len(&self) -> usize {
        self.status.len()
    }

    pub fn is_empty(&self) -> bool {
        self.status.is_empty()
    }

    /// No UE is left in the rejected or associated working sets.
    pub fn is_terminal(&self) -> bool {
        self.status.iter().all(|s| !matches!(s, UeStatus::Rejected | UeStatus::Associated))
    }
}

/// Operation counts reported alongside each clustering result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GameCounters {
    /// Favorable-pair tests during cluster evolution.
    pub favorable_tests: usize,
    /// Largest number of favorable-pair tests in a single evolution round.
    pub max_round_tests: usize,
    pub evolution_rounds: usize,
    /// Committed associations (bookkeeping steps).
    pub association_ops: usize,
    /// Proposal rounds of deferred acceptance.
    pub da_rounds: usize,
    /// Applied swaps of the swap-matching process.
    pub swap_count: usize,
}

impl GameCounters {
    pub fn merge(&mut self, other: &GameCounters) {
        self.favorable_tests += other.favorable_tests;
        self.max_round_tests = self.max_round_tests.max(other.max_round_tests);
        self.evolution_rounds += other.evolution_rounds;
        self.association_ops += other.association_ops;
        self.da_rounds += other.da_rounds;
        self.swap_count += other.swap_count;
    }
}

#[derive(Debug, Clone)]
pub struct EaOutcome {
    pub matching: Matching,
    pub partition: UePartition,
    pub counters: GameCounters,
    /// State right after the initial association stage.
    pub initial_matching: Matching,
    pub initial_state: PreferenceState,
    pub initial_partition: UePartition,
    pub trace: EvolutionTrace,
}

/// Runs the full early-acceptance game.
pub fn ea_m2m(channels: &ChannelRealization, demands: &[f64], config: &ScenarioConfig) -> EaOutcome {
    let evaluator = Evaluator::new(channels, config);
    ea_m2m_with(&channels.gains, &evaluator, demands, config)
}

/// [`ea_m2m`] with an evaluator shared across strategies.
pub fn ea_m2m_with(gains: &Matrix<f64>, evaluator: &Evaluator, demands: &[f64], config: &ScenarioConfig) -> EaOutcome {
    let mut counters = GameCounters::default();
    let mut state = build_preferences(gains, config);
    let (mut matching, mut partition) = ea_initial_association(&mut state, &mut counters);
    let initial_matching = matching.clone();
    let initial_state = state.clone();
    let initial_partition = partition.clone();
    let trace = cluster_evolution(
        &mut state,
        &mut matching,
        &mut partition,
        evaluator,
        demands,
        config,
        &mut counters,
    );
    EaOutcome { matching, partition, counters, initial_matching, initial_state, initial_partition, trace }
}
