use crate::channel::ChannelRealization;
use crate::config::ScenarioConfig;
use crate::evaluate::{Evaluator, Matching};

/// Each UE starts with every AP whose gain is within
/// `power_diff_threshold_db` of its strongest AP.
pub fn initial_gca_clusters(channels: &ChannelRealization, config: &ScenarioConfig) -> Matching {
    let mut m = Matching::empty(channels.num_ues(), channels.num_aps());
    for ue in 0..channels.num_ues() {
        let row = channels.gains.row(ue);
        let best = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for (ap, &g) in row.iter().enumerate() {
            if 10.0 * libm::log10(best / g) <= config.power_diff_threshold_db {
                m.insert(ue, ap);
            }
        }
    }
    m
}

fn min_spectral_efficiency(evaluator: &Evaluator, matching: &Matching, demands: &[f64]) -> f64 {
    evaluator
        .evaluate(matching, demands)
        .sinr
        .iter()
        .map(|s| libm::log2(1.0 + s))
        .fold(f64::INFINITY, f64::min)
}

/// Greedy combining: starting from threshold clusters, repeatedly switch
/// off the single AP whose removal raises the minimum spectral efficiency
/// the most, while that improvement is strictly positive.
///
/// This is a reduced form of the published heuristic with the energy
/// efficiency weight set to zero; AP capacity limits are not enforced.
pub fn gca(channels: &ChannelRealization, evaluator: &Evaluator, demands: &[f64], config: &ScenarioConfig) -> Matching {
    let mut matching = initial_gca_clusters(channels, config);
    let mut current = min_spectral_efficiency(evaluator, &matching, demands);
    loop {
        let mut best: Option<(f64, Matching)> = None;
        for ap in 0..matching.num_aps() {
            if matching.load(ap).is_empty() {
                continue;
            }
            let mut candidate = matching.clone();
            for ue in matching.load(ap).to_vec() {
                candidate.remove(ue, ap);
            }
            let value = min_spectral_efficiency(evaluator, &candidate, demands);
            if best.as_ref().is_none_or(|(v, _)| value > *v) {
                best = Some((value, candidate));
            }
        }
        match best {
            Some((value, candidate)) if value > current => {
                matching = candidate;
                current = value;
            }
            _ => break,
        }
    }
    matching
}
