#![allow(dead_code)]

use cellfree_core::channel::{generate_layout, realize_channels};
use cellfree_core::rng::{substream, Stream};
use cellfree_core::simulation::draw_demands;
use cellfree_core::{ChannelRealization, ScenarioConfig};
use proptest::prelude::*;

#[derive(Debug, Clone)]
pub struct Params {
    pub num_aps: usize,
    pub num_ues: usize,
    pub antennas: usize,
    pub ap_quota: usize,
    pub ue_quota: usize,
    pub kappa0: f64,
    pub area: f64,
    pub seed: u64,
}

/// Small scenarios with M, K <= 8 and quotas that may or may not bind.
pub fn small_params() -> impl Strategy<Value = Params> {
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

pub fn config(p: &Params) -> ScenarioConfig {
    ScenarioConfig {
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
    }
}

pub fn instance(p: &Params) -> (ScenarioConfig, ChannelRealization, Vec<f64>) {
    let c = config(p);
    let layout = generate_layout(&c, &mut substream(p.seed, Stream::Layout, 0));
    let ch = realize_channels(&layout, &c, &mut substream(p.seed, Stream::Shadowing, 1), &mut substream(p.seed, Stream::Fading, 1));
    let demands = draw_demands(&c, &mut substream(p.seed, Stream::Demands, 1));
    (c, ch, demands)
}
