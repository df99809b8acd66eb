use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::config::ScenarioConfig;
use crate::evaluate::{Evaluator, Matching};
use crate::matching::GameCounters;

/// The swap process applied more swaps than the configured cap allows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapCapExceeded {
    pub cap: usize,
}

impl fmt::Display for SwapCapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "swap-matching exceeded its cap of {} swaps", self.cap)
    }
}

impl core::error::Error for SwapCapExceeded {}

fn admissible(before: &[f64], after: &[f64], a: usize, b: usize) -> bool {
    let total_before: f64 = before.iter().sum();
    let total_after: f64 = after.iter().sum();
    if total_after < total_before {
        return false;
    }
    (after[a] > before[a] && after[b] >= before[b]) || (after[b] > before[b] && after[a] >= before[a])
}

/// Replaces `drop` by `add` in one stream column at unchanged AP loads.
fn swapped_column(
    evaluator: &Evaluator,
    col: &[Complex64],
    ue: usize,
    drop: usize,
    add: usize,
    matching: &Matching,
    max_power: f64,
) -> Vec<Complex64> {
    let amp_drop = libm::sqrt(max_power / matching.load(drop).len() as f64);
    let amp_add = libm::sqrt(max_power / matching.load(add).len() as f64);
    col.iter()
        .enumerate()
        .map(|(o, &a)| a - evaluator.coupling(o, ue, drop) * amp_drop + evaluator.coupling(o, ue, add) * amp_add)
        .collect()
}

/// Swap-matching refinement.
///
/// Scans UE pairs `(k, k')` with `k < k'` and AP pairs `m in C_k \ C_k'`,
/// `m' in C_k' \ C_k` in lexicographic order. The swap `k -> m'`, `k' -> m`
/// is applied when the summed satisfaction does not drop and one of the two
/// UEs strictly gains while the other does not lose. After every applied
/// swap the scan restarts; the process ends when a full scan applies none.
///
/// Candidates are screened with incremental column updates and confirmed
/// with a full re-evaluation before being applied.
pub fn swap_matching(
    matching: Matching,
    evaluator: &Evaluator,
    demands: &[f64],
    config: &ScenarioConfig,
    counters: &mut GameCounters,
) -> Result<Matching, SwapCapExceeded> {
    let cap = config.effective_swap_cap();
    let num_ues = matching.num_ues();
    let mut matching = matching;
    let mut applied = 0usize;
    'rescan: loop {
        let amps = evaluator.amplitudes(&matching);
        let kappa = evaluator.kappa_with_columns(&amps, &[], demands);
        for a in 0..num_ues {
            let col_a = amps.column(a);
            for b in a + 1..num_ues {
                let col_b = amps.column(b);
                let only_a: Vec<usize> = matching.cluster(a).iter().copied().filter(|&m| !matching.is_associated(b, m)).collect();
                let only_b: Vec<usize> = matching.cluster(b).iter().copied().filter(|&m| !matching.is_associated(a, m)).collect();
                for &m in &only_a {
                    for &m2 in &only_b {
                        let new_a = swapped_column(evaluator, &col_a, a, m, m2, &matching, config.max_power);
                        let new_b = swapped_column(evaluator, &col_b, b, m2, m, &matching, config.max_power);
                        let screened = evaluator.kappa_with_columns(&amps, &[(a, &new_a), (b, &new_b)], demands);
                        if !admissible(&kappa, &screened, a, b) {
                            continue;
                        }
                        let mut next = matching.clone();
                        next.remove(a, m);
                        next.remove(b, m2);
                        next.insert(a, m2);
                        next.insert(b, m);
                        let exact = evaluator.kappa(&next, demands);
                        if !admissible(&kappa, &exact, a, b) {
                            continue;
                        }
                        matching = next;
                        applied += 1;
                        counters.swap_count += 1;
                        if applied > cap {
                            return Err(SwapCapExceeded { cap });
                        }
                        continue 'rescan;
                    }
                }
            }
        }
        return Ok(matching);
    }
}
