use alloc::vec;
use alloc::vec::Vec;

use crate::config::ScenarioConfig;
use crate::evaluate::Matching;
use crate::matching::{build_preferences, GameCounters};
use crate::matrix::Matrix;

/// Many-to-many deferred acceptance.
///
/// Every round each UE proposes to its next unproposed APs until its
/// tentative holdings fill its quota. Each AP then keeps the `ap_quota` best
/// UEs among its waiting list and the new applicants and rejects the rest.
/// Nothing is final until a round produces no new proposal.
pub fn da_m2m(gains: &Matrix<f64>, config: &ScenarioConfig) -> (Matching, GameCounters) {
    let (num_ues, num_aps) = (gains.rows(), gains.cols());
    let prefs = build_preferences(gains, config);
    let mut rank = vec![vec![usize::MAX; num_ues]; num_aps];
    for (ap, list) in prefs.ap_prefs.iter().enumerate() {
        for (pos, &ue) in list.iter().enumerate() {
            rank[ap][ue] = pos;
        }
    }

    let mut next = vec![0usize; num_ues];
    let mut held = vec![0usize; num_ues];
    let mut waiting: Vec<Vec<usize>> = vec![Vec::new(); num_aps];
    let mut counters = GameCounters::default();

    loop {
        let mut applicants: Vec<Vec<usize>> = vec![Vec::new(); num_aps];
        let mut proposed = false;
        for ue in 0..num_ues {
            let list = &prefs.ue_prefs[ue];
            while held[ue] < config.ue_quota && next[ue] < list.len() {
                applicants[list[next[ue]]].push(ue);
                next[ue] += 1;
                held[ue] += 1;
                proposed = true;
            }
        }
        if !proposed {
            break;
        }
        counters.da_rounds += 1;
        for ap in 0..num_aps {
            if applicants[ap].is_empty() {
                continue;
            }
            let mut pool = core::mem::take(&mut waiting[ap]);
            pool.append(&mut applicants[ap]);
            pool.sort_by_key(|&ue| rank[ap][ue]);
            for &ue in pool.iter().skip(config.ap_quota) {
                held[ue] -= 1;
            }
            pool.truncate(config.ap_quota);
            waiting[ap] = pool;
        }
    }

    let mut matching = Matching::empty(num_ues, num_aps);
    for (ap, list) in waiting.iter().enumerate() {
        for &ue in list {
            matching.insert(ue, ap);
        }
    }
    counters.association_ops = matching.association_count();
    (matching, counters)
}
