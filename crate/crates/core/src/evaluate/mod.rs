//! Downlink SINR, rate and QoS satisfaction of a given association.
//!
//! Each associated pair `(k, m)` uses the per-link regularized beamformer
//! `v = h / (|h|^2 + noise)`, every AP splits its power budget equally over
//! the UEs it serves, and UE `k` combines its serving APs coherently:
//!
//! ```text
//! S_k = | sum_{m in C_k} sqrt(P_km) h_km^H v_km |^2
//! I_k = sum_{j != k} | sum_{m in C_j} sqrt(P_jm) h_km^H v_jm |^2
//! SINR_k = S_k / (I_k + noise),  R_k = B log2(1 + SINR_k)
//! kappa_k = min(1, R_k / demand_k)
//! ```
//!
//! [`evaluate_network`] is the direct transcription used as reference;
//! [`Evaluator`] caches the matching-independent couplings `h_km^H v_jm`
//! for repeated evaluation inside the clustering algorithms.

mod assoc;
mod link;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::channel::ChannelRealization;
use crate::config::ScenarioConfig;
use crate::matrix::Matrix;

pub use assoc::{Matching, MatchingViolation};
pub use link::{Amplitudes, Evaluator};

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkEvaluation {
    /// Allocated power `P_km`, watts.
    pub power: Matrix<f64>,
    pub signal: Vec<f64>,
    pub interference: Vec<f64>,
    pub sinr: Vec<f64>,
    /// Achieved rate, bits/second.
    pub rate: Vec<f64>,
    /// QoS satisfaction in `[0, 1]`.
    pub kappa: Vec<f64>,
}

impl NetworkEvaluation {
    pub fn satisfied_count(&self, threshold: f64) -> usize {
        self.kappa.iter().filter(|&&k| k >= threshold).count()
    }
}

/// `h (h^H h + noise)^-1`; the Gram term is a scalar so no inversion is needed.
pub fn lmmse_beamformer(h: &[Complex64], noise_var: f64) -> Vec<Complex64> {
    let energy: f64 = h.iter().map(Complex64::norm_sqr).sum();
    let scale = energy + noise_var;
    if scale == 0.0 {
        return alloc::vec![Complex64::new(0.0, 0.0); h.len()];
    }
    h.iter().map(|z| z / scale).collect()
}

/// `P_km = max_power / |C_m|` for associated pairs, zero elsewhere.
pub fn equal_power_allocation(matching: &Matching, max_power: f64) -> Matrix<f64> {
    let mut power = Matrix::filled(matching.num_ues(), matching.num_aps(), 0.0);
    for ap in 0..matching.num_aps() {
        let load = matching.load(ap);
        if load.is_empty() {
            continue;
        }
        let share = max_power / load.len() as f64;
        for &ue in load {
            power[(ue, ap)] = share;
        }
    }
    power
}

/// Beamformers for associated pairs only.
#[derive(Debug, Clone)]
pub struct Beamformers {
    vectors: Matrix<Option<Vec<Complex64>>>,
}

impl Beamformers {
    pub fn for_matching(matching: &Matching, channels: &ChannelRealization, noise_var: f64) -> Self {
        let mut vectors = Matrix::filled(matching.num_ues(), matching.num_aps(), None);
        for (ue, ap) in matching.pairs() {
            vectors[(ue, ap)] = Some(lmmse_beamformer(channels.vector(ue, ap), noise_var));
        }
        Self { vectors }
    }

    pub fn get(&self, ue: usize, ap: usize) -> Option<&[Complex64]> {
        self.vectors[(ue, ap)].as_deref()
    }
}

fn inner(h: &[Complex64], v: &[Complex64]) -> Complex64 {
    h.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Coherent amplitude seen by `observer` from the transmissions intended for `target`.
fn stream_amplitude(
    observer: usize,
    target: usize,
    matching: &Matching,
    channels: &ChannelRealization,
    power: &Matrix<f64>,
    beamformers: &Beamformers,
) -> Complex64 {
    matching
        .cluster(target)
        .iter()
        .map(|&ap| {
            let v = beamformers.get(target, ap).expect("beamformer for associated pair");
            inner(channels.vector(observer, ap), v) * libm::sqrt(power[(target, ap)])
        })
        .sum()
}

pub fn received_power(
    ue: usize,
    matching: &Matching,
    channels: &ChannelRealization,
    power: &Matrix<f64>,
    beamformers: &Beamformers,
) -> f64 {
    stream_amplitude(ue, ue, matching, channels, power, beamformers).norm_sqr()
}

pub fn interference_power(
    ue: usize,
    matching: &Matching,
    channels: &ChannelRealization,
    power: &Matrix<f64>,
    beamformers: &Beamformers,
) -> f64 {
    (0..matching.num_ues())
        .filter(|&j| j != ue)
        .map(|j| stream_amplitude(ue, j, matching, channels, power, beamformers).norm_sqr())
        .sum()
}

/// Rate in bits/second for a given SINR.
pub fn shannon_rate(bandwidth: f64, sinr: f64) -> f64 {
    bandwidth * libm::log2(1.0 + sinr)
}

/// `min(1, rate / demand)`.
pub fn satisfaction(rate: f64, demand: f64) -> f64 {
    (rate / demand).min(1.0)
}

pub fn evaluate_network(
    matching: &Matching,
    channels: &ChannelRealization,
    demands: &[f64],
    config: &ScenarioConfig,
) -> NetworkEvaluation {
    let k = matching.num_ues();
    assert_eq!(demands.len(), k, "one demand per UE");
    let power = equal_power_allocation(matching, config.max_power);
    let beamformers = Beamformers::for_matching(matching, channels, config.noise_var);
    let mut eval = NetworkEvaluation {
        power: Matrix::filled(0, 0, 0.0),
        signal: Vec::with_capacity(k),
        interference: Vec::with_capacity(k),
        sinr: Vec::with_capacity(k),
        rate: Vec::with_capacity(k),
        kappa: Vec::with_capacity(k),
    };
    for (ue, &demand) in demands.iter().enumerate() {
        let s = received_power(ue, matching, channels, &power, &beamformers);
        let i = interference_power(ue, matching, channels, &power, &beamformers);
        let sinr = s / (i + config.noise_var);
        let rate = shannon_rate(config.bandwidth, sinr);
        eval.signal.push(s);
        eval.interference.push(i);
        eval.sinr.push(sinr);
        eval.rate.push(rate);
        eval.kappa.push(satisfaction(rate, demand));
    }
    eval.power = power;
    eval
}
