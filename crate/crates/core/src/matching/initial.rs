use super::{GameCounters, PreferenceState, UePartition, UeStatus};
use crate::evaluate::Matching;

/// Gives each UE at most one serving AP.
///
/// Acceptance rounds run while some rejected UE sits inside the quota window
/// of an AP it still lists. Within a round, rejected UEs request in
/// ascending index order and every acceptance updates lists and quotas before
/// the next request. A rejected request advances the UE's pointer, wrapping
/// to the head of its (possibly shortened) list once it runs past the end.
///
/// UEs still rejected afterwards are forced onto the first AP of their
/// updated list; a UE with an empty list ends up unassociated.
pub fn ea_initial_association(state: &mut PreferenceState, counters: &mut GameCounters) -> (Matching, UePartition) {
    let num_ues = state.num_ues();
    let num_aps = state.ap_prefs.len();
    let mut matching = Matching::empty(num_ues, num_aps);
    let mut partition = UePartition::all_rejected(num_ues);
    state.pointer.iter_mut().for_each(|p| *p = 0);

    let some_rejected_in_window = |state: &PreferenceState, partition: &UePartition| {
        (0..num_ues).any(|ue| {
            partition.status(ue) == UeStatus::Rejected
                && state.ue_prefs[ue].iter().any(|&ap| state.in_quota_window(ue, ap))
        })
    };

    while some_rejected_in_window(state, &partition) {
        for ue in 0..num_ues {
            if partition.status(ue) != UeStatus::Rejected {
                continue;
            }
            if state.ue_prefs[ue].is_empty() {
                partition.set(ue, UeStatus::Unassociated);
                continue;
            }
            if state.pointer[ue] >= state.ue_prefs[ue].len() {
                state.pointer[ue] = 0;
            }
            let ap = state.ue_prefs[ue][state.pointer[ue]];
            if state.in_quota_window(ue, ap) {
                state.associate(ue, ap, &mut matching).expect("listed AP has quota");
                counters.association_ops += 1;
                partition.set(ue, UeStatus::Associated);
            } else {
                state.pointer[ue] += 1;
            }
        }
    }

    for ue in 0..num_ues {
        if partition.status(ue) != UeStatus::Rejected {
            continue;
        }
        match state.ue_prefs[ue].first().copied() {
            Some(ap) => {
                state.associate(ue, ap, &mut matching).expect("listed AP has quota");
                counters.association_ops += 1;
                partition.set(ue, UeStatus::Associated);
            }
            None => partition.set(ue, UeStatus::Unassociated),
        }
    }
    (matching, partition)
}
