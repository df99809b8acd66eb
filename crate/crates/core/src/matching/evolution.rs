use alloc::vec::Vec;

use super::{GameCounters, PreferenceState, UePartition, UeStatus};
use crate::config::ScenarioConfig;
use crate::evaluate::{Evaluator, Matching};

/// Associations committed by [`cluster_evolution`], in commit order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EvolutionTrace {
    /// `(ue, ap, round)` triples.
    pub commits: Vec<(usize, usize, usize)>,
    /// Favorable-pair tests performed in each round.
    pub round_tests: Vec<usize>,
}

fn served_sum(kappa: &[f64], partition: &UePartition) -> f64 {
    kappa
        .iter()
        .enumerate()
        .filter(|&(ue, _)| partition.status(ue) != UeStatus::Unassociated)
        .map(|(_, k)| k)
        .sum()
}

/// Tests whether adding `(ue, ap)` is a favorable association.
///
/// The pair qualifies when `ue` is within the AP's quota window and the
/// association strictly raises the UE's satisfaction without lowering the
/// summed satisfaction of all UEs that are not unassociated. `current` holds
/// the satisfaction levels under `matching`. The hypothetical matching is
/// evaluated with power re-shared at `ap`.
#[allow(clippy::too_many_arguments)]
pub fn is_favorable_pair(
    ap: usize,
    ue: usize,
    state: &PreferenceState,
    matching: &Matching,
    partition: &UePartition,
    evaluator: &Evaluator,
    demands: &[f64],
    current: &[f64],
    counters: &mut GameCounters,
) -> bool {
    counters.favorable_tests += 1;
    if matching.is_associated(ue, ap) || state.ap_quota[ap] == 0 || state.ue_quota[ue] == 0 {
        return false;
    }
    if !state.in_quota_window(ue, ap) {
        return false;
    }
    if current[ue] >= 1.0 {
        return false;
    }
    let evolved = evaluator.kappa(&matching.with(ue, ap), demands);
    evolved[ue] > current[ue] && served_sum(&evolved, partition) >= served_sum(current, partition)
}

/// Grows clusters of unsatisfied UEs through favorable associations.
///
/// Each round first moves satisfied UEs out of the associated set (and
/// unsatisfied UEs with nothing left to ask for into the unsatisfied set),
/// then lets every remaining UE, in index order, scan the first
/// `min(q_k, |P_k|)` APs of its list and commit the first favorable pair.
/// The game stops once a round commits nothing or no UE remains associated;
/// leftover UEs are marked unsatisfied.
pub fn cluster_evolution(
    state: &mut PreferenceState,
    matching: &mut Matching,
    partition: &mut UePartition,
    evaluator: &Evaluator,
    demands: &[f64],
    config: &ScenarioConfig,
    counters: &mut GameCounters,
) -> EvolutionTrace {
    let num_ues = partition.len();
    let mut trace = EvolutionTrace::default();
    let mut round = 0;
    loop {
        let mut current = evaluator.kappa(matching, demands);
        for ue in partition.members(UeStatus::Associated) {
            if current[ue] >= config.satisfaction_threshold {
                partition.set(ue, UeStatus::Satisfied);
            } else if state.ue_prefs[ue].is_empty() {
                partition.set(ue, UeStatus::Unsatisfied);
            }
        }
        if partition.count(UeStatus::Associated) == 0 {
            break;
        }

        let before = counters.favorable_tests;
        let mut committed = false;
        for ue in 0..num_ues {
            if partition.status(ue) != UeStatus::Associated {
                continue;
            }
            if state.ue_prefs[ue].is_empty() {
                partition.set(ue, UeStatus::Unsatisfied);
                continue;
            }
            let window = state.ue_quota[ue].min(state.ue_prefs[ue].len());
            state.pointer[ue] = 0;
            while state.pointer[ue] < window {
                let ap = state.ue_prefs[ue][state.pointer[ue]];
                if is_favorable_pair(ap, ue, state, matching, partition, evaluator, demands, &current, counters) {
                    state.associate(ue, ap, matching).expect("favorable pair has quota");
                    counters.association_ops += 1;
                    trace.commits.push((ue, ap, round));
                    current = evaluator.kappa(matching, demands);
                    committed = true;
                    break;
                }
                state.pointer[ue] += 1;
            }
        }
        let tests = counters.favorable_tests - before;
        trace.round_tests.push(tests);
        counters.max_round_tests = counters.max_round_tests.max(tests);
        counters.evolution_rounds += 1;
        round += 1;
        if !committed {
            break;
        }
    }
    for ue in partition.members(UeStatus::Associated) {
        partition.set(ue, UeStatus::Unsatisfied);
    }
    trace
}
