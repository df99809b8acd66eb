//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use cellfree::{cmd_run, RunSpec};
use cellfree_core::channel::{generate_layout, realize_channels};
use cellfree_core::evaluate::equal_power_allocation;
use cellfree_core::matching::{ea_m2m, UeStatus};
use cellfree_core::rng::{substream, Stream};
use cellfree_core::simulation::{draw_demands, run_strategy};
use cellfree_core::{
    evaluate_network, run_episode, ChannelRealization, Complex64, Evaluator, Matching, Matrix, MetricsRecord,
    ScenarioConfig, Strategy,
};
use proptest::prelude::*;
use proptest::strategy::Strategy as PropStrategy;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rayon::prelude::*;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

const SEEDS: [u64; 5] = [1, 2, 3, 4, 5];
const THRESHOLDS: [f64; 3] = [0.8, 0.9, 1.0];

struct Run {
    kappa_0: f64,
    records: Vec<MetricsRecord>,
}

impl Run {
    fn of(&self, s: Strategy) -> impl Iterator<Item = &MetricsRecord> {
        self.records.iter().filter(move |r| r.strategy == s)
    }
}

/// Default scenario, T = 100, five seeds, each threshold of the sweep.
fn default_runs() -> Vec<Run> {
    let jobs: Vec<(u64, f64)> = SEEDS.iter().flat_map(|&s| THRESHOLDS.iter().map(move |&k| (s, k))).collect();
    jobs.par_iter()
        .map(|&(seed, kappa_0)| {
            let config = ScenarioConfig { seed, satisfaction_threshold: kappa_0, ..Default::default() };
            let mut strategies = vec![Strategy::EarlyAcceptance, Strategy::DeferredAcceptance, Strategy::BestChannel, Strategy::MinDistance];
            if kappa_0 == 1.0 {
                strategies.push(Strategy::DeferredAcceptanceSwap);
            }
            Run { kappa_0, records: run_episode(&config, &strategies).expect("default episode") }
        })
        .collect()
}

fn mean(values: impl IntoIterator<Item = f64>) -> f64 {
    let (sum, n) = values.into_iter().fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    sum / n as f64
}

fn percent_satisfied(r: &MetricsRecord) -> f64 {
    100.0 * r.satisfied_count as f64 / r.kappa.len() as f64
}

// ---------------------------------------------------------------- instances

#[derive(Debug, Clone)]
struct Params {
    num_aps: usize,
    num_ues: usize,
    antennas: usize,
    ap_quota: usize,
    ue_quota: usize,
    kappa0: f64,
    area: f64,
    seed: u64,
}

fn small_params() -> impl PropStrategy<Value = Params> {
    (1usize..=8, 1usize..=8, 1usize..=4, 1usize..=9, 1usize..=9, 0.3f64..=1.0, 20.0f64..200.0, any::<u64>()).prop_map(
        |(num_aps, num_ues, antennas, ap_quota, ue_quota, kappa0, area, seed)| Params {
            num_aps,
            num_ues,
            antennas,
            ap_quota,
            ue_quota,
            kappa0,
            area,
            seed,
        },
    )
}

fn instance(p: &Params) -> (ScenarioConfig, ChannelRealization, Vec<f64>) {
    let config = ScenarioConfig {
        num_aps: p.num_aps,
        num_ues: p.num_ues,
        antennas_per_ap: p.antennas,
        ap_quota: p.ap_quota,
        ue_quota: p.ue_quota,
        satisfaction_threshold: p.kappa0,
        area_width: p.area,
        area_height: p.area,
        seed: p.seed,
        ..Default::default()
    };
    let layout = generate_layout(&config, &mut substream(p.seed, Stream::Layout, 0));
    let ch = realize_channels(&layout, &config, &mut substream(p.seed, Stream::Shadowing, 1), &mut substream(p.seed, Stream::Fading, 1));
    let demands = draw_demands(&config, &mut substream(p.seed, Stream::Demands, 1));
    (config, ch, demands)
}

fn property<S: PropStrategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- criteria

fn da_count(runs: &[Run]) -> Check {
    let bound = ScenarioConfig::default().association_bound();
    let counts: Vec<usize> = runs.iter().flat_map(|r| r.of(Strategy::DeferredAcceptance)).map(|r| r.association_count).collect();
    let bad = counts.iter().filter(|&&c| c != bound).count();
    let detail = format!("{} timesteps, expected {bound} each, {bad} differ", counts.len());
    if bad == 0 && bound == 160 { Ok(detail) } else { Err(detail) }
}

fn association_reduction(runs: &[Run]) -> Check {
    let at_one: Vec<&Run> = runs.iter().filter(|r| r.kappa_0 == 1.0).collect();
    let ea = mean(at_one.iter().flat_map(|r| r.of(Strategy::EarlyAcceptance)).map(|r| r.association_count as f64));
    let smp = mean(at_one.iter().flat_map(|r| r.of(Strategy::DeferredAcceptanceSwap)).map(|r| r.association_count as f64));
    let detail = format!("EA {ea:.2} vs DA-SMP {smp:.2} associations ({:.1}% fewer, need >= 50%)", 100.0 * (1.0 - ea / smp));
    if ea <= 0.5 * smp { Ok(detail) } else { Err(detail) }
}

fn satisfaction_dominance(runs: &[Run]) -> Check {
    let mut lines = Vec::new();
    let mut ok = true;
    for k0 in THRESHOLDS {
        let at: Vec<&Run> = runs.iter().filter(|r| r.kappa_0 == k0).collect();
        let pct = |s| mean(at.iter().flat_map(|r| r.of(s)).map(percent_satisfied));
        let ea = pct(Strategy::EarlyAcceptance);
        let others = [Strategy::BestChannel, Strategy::MinDistance, Strategy::DeferredAcceptance].map(|s| (s, pct(s)));
        ok &= others.iter().all(|&(_, v)| ea >= v);
        let rest: Vec<String> = others.iter().map(|(s, v)| format!("{s} {v:.2}")).collect();
        lines.push(format!("k0={k0}: ea {ea:.2} / {}", rest.join(" ")));
    }
    let detail = lines.join("; ");
    if ok { Ok(detail) } else { Err(detail) }
}

fn satisfaction_level(runs: &[Run]) -> Check {
    let kappa = mean(
        runs.iter()
            .filter(|r| r.kappa_0 == 1.0)
            .flat_map(|r| r.of(Strategy::EarlyAcceptance))
            .flat_map(|r| r.kappa.iter().copied()),
    );
    let detail = format!("EA mean kappa {kappa:.4} (need >= 0.90)");
    if kappa >= 0.90 { Ok(detail) } else { Err(detail) }
}

fn check_constraints(m: &Matching, config: &ScenarioConfig) -> Result<(), TestCaseError> {
    prop_assert!(m.check_symmetry().is_ok());
    for ap in 0..m.num_aps() {
        prop_assert!(m.load(ap).len() <= config.ap_quota);
    }
    for ue in 0..m.num_ues() {
        prop_assert!(m.cluster(ue).len() <= config.ue_quota);
        for ap in 0..m.num_aps() {
            prop_assert_eq!(m.is_associated(ue, ap), m.cluster(ue).contains(&ap));
            prop_assert_eq!(m.is_associated(ue, ap), m.load(ap).contains(&ue));
        }
    }
    let power = equal_power_allocation(m, config.max_power);
    for ap in 0..m.num_aps() {
        let column: Vec<f64> = (0..m.num_ues()).map(|ue| power[(ue, ap)]).collect();
        prop_assert!(column.iter().all(|&p| p >= 0.0));
        let total: f64 = column.iter().sum();
        let expected = if m.load(ap).is_empty() { 0.0 } else { config.max_power };
        prop_assert!((total - expected).abs() <= 1e-12 * config.max_power);
    }
    Ok(())
}

fn constraint_suite(runs: &[Run]) -> Check {
    let flagged = runs
        .iter()
        .flat_map(|r| r.records.iter())
        .filter(|r| r.strategy.enforces_quotas() && r.quota_violation)
        .count();
    if flagged > 0 {
        return Err(format!("{flagged} default-scenario records break a quota"));
    }
    property(1000, small_params(), |p| {
        let (config, ch, demands) = instance(&p);
        let ev = Evaluator::new(&ch, &config);
        for s in [Strategy::EarlyAcceptance, Strategy::DeferredAcceptance, Strategy::DeferredAcceptanceSwap] {
            let out = run_strategy(s, &ch, &ev, &demands, &config).map_err(|e| TestCaseError::fail(e.to_string()))?;
            check_constraints(&out.matching, &config)?;
        }
        Ok(())
    })?;
    Ok("1000 random instances x 3 strategies, plus every default-scenario record".into())
}

fn favorable_soundness() -> Check {
    let commits = std::sync::atomic::AtomicUsize::new(0);
    property(300, small_params(), |p| {
        let (config, ch, demands) = instance(&p);
        let out = ea_m2m(&ch, &demands, &config);
        let served = |kappa: &[f64]| -> f64 {
            (0..config.num_ues).filter(|&u| out.initial_partition.status(u) != UeStatus::Unassociated).map(|u| kappa[u]).sum()
        };
        let mut state = out.initial_state.clone();
        let mut matching = out.initial_matching.clone();
        let mut kappa = evaluate_network(&matching, &ch, &demands, &config).kappa;
        for &(ue, ap, _) in &out.trace.commits {
            prop_assert!(state.in_quota_window(ue, ap));
            let next = evaluate_network(&matching.with(ue, ap), &ch, &demands, &config).kappa;
            prop_assert!(next[ue] > kappa[ue]);
            prop_assert!(served(&next) >= served(&kappa));
            prop_assert!(state.associate(ue, ap, &mut matching).is_ok());
            kappa = next;
        }
        prop_assert_eq!(&matching, &out.matching);
        commits.fetch_add(out.trace.commits.len(), std::sync::atomic::Ordering::Relaxed);
        Ok(())
    })?;
    Ok(format!("300 random instances, {} commits replayed", commits.into_inner()))
}

// Plain tuple arithmetic, independent of the library's complex type.
#[allow(clippy::too_many_arguments)]
fn oracle_kappa(h: &[(f64, f64)], assoc: &[bool], k: usize, m: usize, n: usize, noise: f64, pmax: f64, bw: f64, demands: &[f64]) -> Vec<(f64, f64)> {
    let hv = |u: usize, a: usize, t: usize| h[(u * m + a) * n + t];
    let load = |a: usize| (0..k).filter(|&u| assoc[u * m + a]).count();
    let v = |u: usize, a: usize, t: usize| {
        let norm: f64 = (0..n).map(|s| hv(u, a, s).0.powi(2) + hv(u, a, s).1.powi(2)).sum();
        let x = hv(u, a, t);
        (x.0 / (norm + noise), x.1 / (norm + noise))
    };
    let link = |obs: usize, j: usize| {
        let (mut re, mut im) = (0.0, 0.0);
        for a in (0..m).filter(|&a| assoc[j * m + a]) {
            let amp = (pmax / load(a) as f64).sqrt();
            for t in 0..n {
                let (hr, hi) = hv(obs, a, t);
                let (vr, vi) = v(j, a, t);
                re += amp * (hr * vr + hi * vi);
                im += amp * (hr * vi - hi * vr);
            }
        }
        re * re + im * im
    };
    (0..k)
        .map(|u| {
            let s = link(u, u);
            let i: f64 = (0..k).filter(|&j| j != u).map(|j| link(u, j)).sum();
            let sinr = s / (i + noise);
            let rate = bw * (1.0 + sinr).log2();
            (sinr, (rate / demands[u]).min(1.0))
        })
        .collect()
}

fn oracle_equivalence() -> Check {
    let inst = (1usize..=3, 1usize..=3, 1usize..=2).prop_flat_map(|(k, m, n)| {
        (
            Just((k, m, n)),
            prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0, -6i32..=0), k * m * n),
            prop::collection::vec(any::<bool>(), k * m),
            1e-6f64..1.0,
            1e-3f64..1.0,
            prop::collection::vec(1e5f64..1e8, k),
        )
    });
    property(600, inst, |((k, m, n), raw, assoc, noise, pmax, demands)| {
        let h: Vec<(f64, f64)> = raw.iter().map(|&(re, im, e)| (re * 10f64.powi(e), im * 10f64.powi(e))).collect();
        let gains = Matrix::from_fn(k, m, |u, a| (0..n).map(|t| h[(u * m + a) * n + t].0.powi(2) + h[(u * m + a) * n + t].1.powi(2)).sum::<f64>() / n as f64);
        let vectors = h.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        let ch = ChannelRealization::from_vectors(gains, Matrix::filled(k, m, 1.0), n, vectors);
        let matching = Matching::from_pairs(k, m, (0..k).flat_map(|u| (0..m).map(move |a| (u, a))).filter(|&(u, a)| assoc[u * m + a]));
        let config = ScenarioConfig { num_ues: k, num_aps: m, antennas_per_ap: n, noise_var: noise, max_power: pmax, ..Default::default() };
        let eval = evaluate_network(&matching, &ch, &demands, &config);
        let close = |a: f64, b: f64| a == b || (a - b).abs() <= 1e-10 * a.abs().max(b.abs());
        for (u, (sinr, kappa)) in oracle_kappa(&h, &assoc, k, m, n, noise, pmax, config.bandwidth, &demands).into_iter().enumerate() {
            prop_assert!(close(eval.sinr[u], sinr), "sinr {} vs {}", eval.sinr[u], sinr);
            prop_assert!(close(eval.kappa[u], kappa), "kappa {} vs {}", eval.kappa[u], kappa);
        }
        Ok(())
    })?;
    Ok("600 random instances within 1e-10 relative".into())
}

fn counter_bounds(runs: &[Run]) -> Check {
    let config = ScenarioConfig::default();
    let bound = config.ue_quota * config.num_ues;
    let worst = runs.iter().flat_map(|r| r.of(Strategy::EarlyAcceptance)).map(|r| r.counters.max_round_tests).max().unwrap_or(0);
    if worst > bound {
        return Err(format!("default scenario: {worst} tests in one round, bound {bound}"));
    }
    let cap = config.effective_swap_cap();
    let swaps = runs.iter().flat_map(|r| r.of(Strategy::DeferredAcceptanceSwap)).map(|r| r.counters.swap_count).max().unwrap_or(0);
    if swaps > cap {
        return Err(format!("default scenario: {swaps} swaps, cap {cap}"));
    }
    property(500, small_params(), |p| {
        let (config, ch, demands) = instance(&p);
        let out = ea_m2m(&ch, &demands, &config);
        prop_assert!(out.trace.round_tests.iter().all(|&t| t <= config.ue_quota * config.num_ues));
        let ev = Evaluator::new(&ch, &config);
        let smp = run_strategy(Strategy::DeferredAcceptanceSwap, &ch, &ev, &demands, &config);
        prop_assert!(smp.as_ref().is_ok_and(|c| c.counters.swap_count <= config.effective_swap_cap()));
        Ok(())
    })?;
    Ok(format!("worst round {worst} <= {bound}; most swaps {swaps} <= cap {cap}; 500 random instances"))
}

fn determinism() -> Check {
    let config = ScenarioConfig { num_steps: 10, ..Default::default() };
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    let spec = RunSpec { seeds: vec![1, 2], kappa0: vec![0.8, 1.0], ..RunSpec::new(config.clone(), a.path()) };
    cmd_run(&spec).map_err(|e| e.to_string())?;
    cmd_run(&RunSpec { out_dir: b.path().into(), ..spec }).map_err(|e| e.to_string())?;
    let mut files = 0;
    for entry in fs::read_dir(a.path()).map_err(|e| e.to_string())? {
        let name = entry.map_err(|e| e.to_string())?.file_name();
        let left = fs::read(a.path().join(&name)).map_err(|e| e.to_string())?;
        let right = fs::read(b.path().join(&name)).map_err(|e| e.to_string())?;
        if left != right {
            return Err(format!("{name:?} differs between runs"));
        }
        files += 1;
    }
    let forward = run_episode(&config, &Strategy::ALL).map_err(|e| e.to_string())?;
    let mut reversed_order = Strategy::ALL;
    reversed_order.reverse();
    let reversed = run_episode(&config, &reversed_order).map_err(|e| e.to_string())?;
    for s in Strategy::ALL {
        let x: Vec<_> = forward.iter().filter(|r| r.strategy == s).collect();
        let y: Vec<_> = reversed.iter().filter(|r| r.strategy == s).collect();
        if x != y {
            return Err(format!("strategy {s} changed when the list was permuted"));
        }
    }
    Ok(format!("{files} files byte-identical; per-strategy records unchanged under permutation"))
}

fn structural_counts() -> Check {
    let config = ScenarioConfig::default();
    let records = run_episode(&config, &[Strategy::Canonical, Strategy::BestChannel, Strategy::MinDistance]).map_err(|e| e.to_string())?;
    let (m, k) = (config.num_aps, config.num_ues);
    for r in &records {
        let expected = if r.strategy == Strategy::Canonical { m * k } else { k };
        if r.association_count != expected {
            return Err(format!("{} at t={}: {} associations, expected {expected}", r.strategy, r.timestep, r.association_count));
        }
    }
    Ok(format!("{} records: cs = {}, bc = md = {k}", records.len(), m * k))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let runs = default_runs();
    println!("default scenario: {} episodes of 100 steps in {:.1?}", runs.len(), start.elapsed());

    let criteria: Vec<Criterion> = vec![
        ("DA association count", Box::new(|| da_count(&runs))),
        ("association reduction", Box::new(|| association_reduction(&runs))),
        ("satisfaction dominance", Box::new(|| satisfaction_dominance(&runs))),
        ("per-UE satisfaction level", Box::new(|| satisfaction_level(&runs))),
        ("constraint suite", Box::new(|| constraint_suite(&runs))),
        ("favorable-pair soundness", Box::new(favorable_soundness)),
        ("evaluator oracle equivalence", Box::new(oracle_equivalence)),
        ("counter bounds", Box::new(|| counter_bounds(&runs))),
        ("determinism", Box::new(determinism)),
        ("structural counts", Box::new(structural_counts)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
