//! Comparison clustering schemes.
//!
//! Best channel, min distance and canonical are legacy single-rule schemes
//! with no per-AP capacity limit. Greedy combining is a simplified AP
//! deactivation heuristic. Deferred acceptance is the classic many-to-many
//! matching, optionally followed by the swap-matching refinement.

mod da;
mod gca;
mod swap;

use crate::channel::ChannelRealization;
use crate::evaluate::Matching;

pub use da::da_m2m;
pub use gca::{gca, initial_gca_clusters};
pub use swap::{swap_matching, SwapCapExceeded};

fn argbest(values: &[f64], better: impl Fn(f64, f64) -> bool) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &v) in values.iter().enumerate() {
        match best {
            Some(b) if !better(v, values[b]) => {}
            _ => best = Some(i),
        }
    }
    best
}

/// Each UE joins the AP with the largest large-scale gain (lowest index on ties).
pub fn best_channel(channels: &ChannelRealization) -> Matching {
    let mut m = Matching::empty(channels.num_ues(), channels.num_aps());
    for ue in 0..channels.num_ues() {
        if let Some(ap) = argbest(channels.gains.row(ue), |a, b| a > b) {
            m.insert(ue, ap);
        }
    }
    m
}

/// Each UE joins the geographically closest AP (lowest index on ties).
pub fn min_distance(channels: &ChannelRealization) -> Matching {
    let mut m = Matching::empty(channels.num_ues(), channels.num_aps());
    for ue in 0..channels.num_ues() {
        if let Some(ap) = argbest(channels.distances.row(ue), |a, b| a < b) {
            m.insert(ue, ap);
        }
    }
    m
}

/// Every AP serves every UE.
pub fn canonical(channels: &ChannelRealization) -> Matching {
    Matching::full(channels.num_ues(), channels.num_aps())
}
