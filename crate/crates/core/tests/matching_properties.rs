mod common;

use cellfree_core::evaluate::equal_power_allocation;
use cellfree_core::matching::{ea_m2m, UeStatus};
use cellfree_core::simulation::run_strategy;
use cellfree_core::{evaluate_network, Evaluator, Matching, ScenarioConfig, Strategy};
use common::{instance, small_params};
use proptest::prelude::*;

fn check_constraints(m: &Matching, config: &ScenarioConfig) -> Result<(), TestCaseError> {
    prop_assert!(m.check_symmetry().is_ok());
    prop_assert!(m.check_quotas(config.ap_quota, config.ue_quota).is_ok());
    let mut count = 0;
    for ue in 0..m.num_ues() {
        for ap in 0..m.num_aps() {
            let served = m.cluster(ue).contains(&ap);
            prop_assert_eq!(served, m.load(ap).contains(&ue));
            prop_assert_eq!(served, m.is_associated(ue, ap));
            count += served as usize;
        }
    }
    prop_assert_eq!(count, m.association_count());
    let power = equal_power_allocation(m, config.max_power);
    for ap in 0..m.num_aps() {
        let col: Vec<f64> = (0..m.num_ues()).map(|ue| power[(ue, ap)]).collect();
        prop_assert!(col.iter().all(|&p| p >= 0.0));
        let total: f64 = col.iter().sum();
        if m.load(ap).is_empty() {
            prop_assert_eq!(total, 0.0);
        } else {
            prop_assert!((total - config.max_power).abs() <= 1e-12 * config.max_power);
        }
        for (ue, &p) in col.iter().enumerate() {
            prop_assert_eq!(p > 0.0, m.is_associated(ue, ap));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn quota_constrained_strategies_respect_constraints(p in small_params()) {
        let (config, ch, demands) = instance(&p);
        let ev = Evaluator::new(&ch, &config);
        for s in [Strategy::EarlyAcceptance, Strategy::DeferredAcceptance, Strategy::DeferredAcceptanceSwap] {
            let out = run_strategy(s, &ch, &ev, &demands, &config);
            prop_assert!(out.is_ok(), "{} exceeded the swap cap", s);
            let out = out.unwrap();
            check_constraints(&out.matching, &config)?;
            prop_assert!(out.counters.swap_count <= config.effective_swap_cap());
        }
    }

    #[test]
    fn early_acceptance_bookkeeping(p in small_params()) {
        let (config, ch, demands) = instance(&p);
        let out = ea_m2m(&ch, &demands, &config);

        // After the initial stage every UE holds exactly one AP or none.
        for ue in 0..config.num_ues {
            let held = out.initial_matching.cluster(ue).len();
            match out.initial_partition.status(ue) {
                UeStatus::Associated => prop_assert_eq!(held, 1),
                UeStatus::Unassociated => prop_assert_eq!(held, 0),
                other => prop_assert!(false, "UE {} left in {:?} after the initial stage", ue, other),
            }
        }
        prop_assert!(out.initial_state.check_consistency(&out.initial_matching, &config).is_ok());
        prop_assert!(out.partition.is_terminal());
        prop_assert_eq!(
            out.initial_partition.count(UeStatus::Unassociated),
            out.partition.count(UeStatus::Unassociated)
        );

        let bound = config.ue_quota * config.num_ues;
        for &tests in &out.trace.round_tests {
            prop_assert!(tests <= bound, "{} tests in one round, bound {}", tests, bound);
        }
        prop_assert_eq!(out.trace.round_tests.iter().sum::<usize>(), out.counters.favorable_tests);
        prop_assert_eq!(
            out.counters.association_ops,
            out.matching.association_count()
        );
    }

    /// Replays every committed association against the direct evaluator.
    #[test]
    fn committed_pairs_were_favorable(p in small_params()) {
        let (config, ch, demands) = instance(&p);
        let out = ea_m2m(&ch, &demands, &config);
        let served = |kappa: &[f64]| -> f64 {
            (0..config.num_ues)
                .filter(|&ue| out.initial_partition.status(ue) != UeStatus::Unassociated)
                .map(|ue| kappa[ue])
                .sum()
        };
        let mut state = out.initial_state.clone();
        let mut matching = out.initial_matching.clone();
        let mut kappa = evaluate_network(&matching, &ch, &demands, &config).kappa;
        let mut last_round = 0;
        for &(ue, ap, round) in &out.trace.commits {
            prop_assert!(round >= last_round);
            last_round = round;
            prop_assert_eq!(out.initial_partition.status(ue), UeStatus::Associated);
            prop_assert!(!matching.is_associated(ue, ap));
            prop_assert!(state.in_quota_window(ue, ap), "UE {} outside AP {}'s quota window", ue, ap);
            prop_assert!(state.ue_prefs[ue].contains(&ap));
            let next = evaluate_network(&matching.with(ue, ap), &ch, &demands, &config).kappa;
            prop_assert!(next[ue] > kappa[ue], "UE {}: {} -> {}", ue, kappa[ue], next[ue]);
            prop_assert!(served(&next) >= served(&kappa), "sum {} -> {}", served(&kappa), served(&next));
            prop_assert!(state.associate(ue, ap, &mut matching).is_ok());
            prop_assert!(state.check_consistency(&matching, &config).is_ok());
            kappa = next;
        }
        prop_assert_eq!(matching, out.matching);
    }

    /// Deferred acceptance leaves no AP with spare room that a UE with spare
    /// quota never reached, and no AP holding someone it ranks below an
    /// unfilled UE it does not hold.
    #[test]
    fn deferred_acceptance_is_stable(p in small_params()) {
        let (config, ch, demands) = instance(&p);
        let ev = Evaluator::new(&ch, &config);
        let m = run_strategy(Strategy::DeferredAcceptance, &ch, &ev, &demands, &config).unwrap().matching;
        let gain = |ue: usize, ap: usize| ch.gains[(ue, ap)];
        let ranks_above = |ap: usize, a: usize, b: usize| gain(a, ap) > gain(b, ap) || (gain(a, ap) == gain(b, ap) && a < b);
        let full_ues = config.ue_quota.min(config.num_aps);
        for ue in 0..config.num_ues {
            if m.cluster(ue).len() >= full_ues {
                continue;
            }
            for ap in 0..config.num_aps {
                if m.is_associated(ue, ap) {
                    continue;
                }
                prop_assert_eq!(m.load(ap).len(), config.ap_quota.min(config.num_ues));
                prop_assert!(m.load(ap).iter().all(|&held| ranks_above(ap, held, ue)));
            }
        }
        prop_assert!(m.association_count() <= config.association_bound());
    }
}
