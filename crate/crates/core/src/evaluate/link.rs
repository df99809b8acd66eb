use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{equal_power_allocation, lmmse_beamformer, satisfaction, shannon_rate, Matching, NetworkEvaluation};
use crate::channel::ChannelRealization;
use crate::config::ScenarioConfig;

/// Network evaluator for one channel realization.
///
/// Caches the coupling `h_km^H v_jm` for every observer `k`, stream `j` and
/// AP `m`. Evaluating a matching costs `O(K * associations)`.
#[derive(Debug, Clone)]
pub struct Evaluator {
    num_ues: usize,
    num_aps: usize,
    noise_var: f64,
    bandwidth: f64,
    max_power: f64,
    coupling: Vec<Complex64>,
}

/// Received amplitudes `a[k][j] = sum_{m in C_j} sqrt(P_jm) h_km^H v_jm`.
/// The diagonal carries the useful signal, off-diagonal terms interference.
#[derive(Debug, Clone, PartialEq)]
pub struct Amplitudes {
    num_ues: usize,
    amp: Vec<Complex64>,
    interference: Vec<f64>,
}

impl Amplitudes {
    pub fn get(&self, observer: usize, stream: usize) -> Complex64 {
        self.amp[observer * self.num_ues + stream]
    }

    /// Amplitudes of one stream at every observer.
    pub fn column(&self, stream: usize) -> Vec<Complex64> {
        (0..self.num_ues).map(|o| self.get(o, stream)).collect()
    }

    pub fn signal(&self, ue: usize) -> f64 {
        self.get(ue, ue).norm_sqr()
    }

    pub fn interference(&self, ue: usize) -> f64 {
        self.interference[ue]
    }
}

impl Evaluator {
    pub fn new(channels: &ChannelRealization, config: &ScenarioConfig) -> Self {
        let k = channels.num_ues();
        let m = channels.num_aps();
        let mut coupling = vec![Complex64::new(0.0, 0.0); k * k * m];
        for target in 0..k {
            for ap in 0..m {
                let v = lmmse_beamformer(channels.vector(target, ap), config.noise_var);
                for observer in 0..k {
                    let h = channels.vector(observer, ap);
                    coupling[(observer * k + target) * m + ap] = h.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                }
            }
        }
        Self {
            num_ues: k,
            num_aps: m,
            noise_var: config.noise_var,
            bandwidth: config.bandwidth,
            max_power: config.max_power,
            coupling,
        }
    }

    pub fn num_ues(&self) -> usize {
        self.num_ues
    }

    pub fn num_aps(&self) -> usize {
        self.num_aps
    }

    /// `h_{observer,ap}^H v_{target,ap}`.
    #[inline]
    pub fn coupling(&self, observer: usize, target: usize, ap: usize) -> Complex64 {
        self.coupling[(observer * self.num_ues + target) * self.num_aps + ap]
    }

    /// Amplitudes of stream `target` at every observer when it is served by
    /// `aps`, each AP splitting its budget over `load(ap)` UEs.
    pub fn stream_column(&self, target: usize, aps: &[usize], load: impl Fn(usize) -> usize) -> Vec<Complex64> {
        let mut col = vec![Complex64::new(0.0, 0.0); self.num_ues];
        for &ap in aps {
            let amp = libm::sqrt(self.max_power / load(ap) as f64);
            for (observer, slot) in col.iter_mut().enumerate() {
                *slot += self.coupling(observer, target, ap) * amp;
            }
        }
        col
    }

    pub fn amplitudes(&self, matching: &Matching) -> Amplitudes {
        let k = self.num_ues;
        let mut amp = vec![Complex64::new(0.0, 0.0); k * k];
        for target in 0..k {
            let col = self.stream_column(target, matching.cluster(target), |ap| matching.load(ap).len());
            for (observer, a) in col.into_iter().enumerate() {
                amp[observer * k + target] = a;
            }
        }
        let interference = (0..k)
            .map(|ue| (0..k).filter(|&j| j != ue).map(|j| amp[ue * k + j].norm_sqr()).sum())
            .collect();
        Amplitudes { num_ues: k, amp, interference }
    }

    fn link(&self, signal: f64, interference: f64, demand: f64) -> (f64, f64, f64) {
        let sinr = signal / (interference + self.noise_var);
        let rate = shannon_rate(self.bandwidth, sinr);
        (sinr, rate, satisfaction(rate, demand))
    }

    pub fn evaluate(&self, matching: &Matching, demands: &[f64]) -> NetworkEvaluation {
        let k = self.num_ues;
        assert_eq!(demands.len(), k, "one demand per UE");
        let amps = self.amplitudes(matching);
        let mut eval = NetworkEvaluation {
            power: equal_power_allocation(matching, self.max_power),
            signal: Vec::with_capacity(k),
            interference: Vec::with_capacity(k),
            sinr: Vec::with_capacity(k),
            rate: Vec::with_capacity(k),
            kappa: Vec::with_capacity(k),
        };
        for (ue, &demand) in demands.iter().enumerate() {
            let s = amps.signal(ue);
            let i = amps.interference(ue);
            let (sinr, rate, kappa) = self.link(s, i, demand);
            eval.signal.push(s);
            eval.interference.push(i);
            eval.sinr.push(sinr);
            eval.rate.push(rate);
            eval.kappa.push(kappa);
        }
        eval
    }

    pub fn kappa(&self, matching: &Matching, demands: &[f64]) -> Vec<f64> {
        self.kappa_with_columns(&self.amplitudes(matching), &[], demands)
    }

    /// Satisfaction of every UE when the listed stream columns of `amps`
    /// are replaced. Interference is updated by difference and may differ
    /// from a fresh evaluation in the last bits.
    pub fn kappa_with_columns(&self, amps: &Amplitudes, replaced: &[(usize, &[Complex64])], demands: &[f64]) -> Vec<f64> {
        (0..self.num_ues)
            .map(|ue| {
                let mut s = amps.signal(ue);
                let mut i = amps.interference(ue);
                for &(j, col) in replaced {
                    if j == ue {
                        s = col[ue].norm_sqr();
                    } else {
                        i += col[ue].norm_sqr() - amps.get(ue, j).norm_sqr();
                    }
                }
                self.link(s, i.max(0.0), demands[ue]).2
            })
            .collect()
    }
}
