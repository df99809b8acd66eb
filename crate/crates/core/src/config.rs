//! Scenario parameters.
//!
//! Every quantity is in SI base units: watts, hertz, meters, seconds and
//! bits per second. [`ScenarioConfig::default`] is the reference desk-scale
//! scenario (50 APs with 16 antennas serving 20 single-antenna UEs in a
//! 200 m square).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// How the shadowing variance is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "snake_case"))]
pub enum ShadowingScale {
    /// `chi = exp(z)` with `z ~ N(0, shadow_var)`.
    #[default]
    NaturalLog,
    /// `chi = 10^(z / 10)` with `z ~ N(0, shadow_var)` in dB.
    Decibel,
}

/// When per-UE rate demands are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "snake_case"))]
pub enum DemandPolicy {
    #[default]
    PerTimestep,
    PerEpisode,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(default, deny_unknown_fields)
)]
pub struct ScenarioConfig {
    pub num_aps: usize,
    pub num_ues: usize,
    pub antennas_per_ap: usize,
    /// Maximum number of UEs one AP may serve.
    pub ap_quota: usize,
    /// Maximum number of APs one UE may be associated with.
    pub ue_quota: usize,
    /// Per-AP transmit power budget, watts.
    pub max_power: f64,
    pub bandwidth: f64,
    pub carrier_freq: f64,
    pub pathloss_exp: f64,
    /// Shadowing variance; see [`ShadowingScale`] for the domain.
    pub shadow_var: f64,
    pub shadowing_scale: ShadowingScale,
    /// Receiver noise power, watts.
    pub noise_var: f64,
    /// A UE counts as satisfied when its QoS level reaches this value.
    pub satisfaction_threshold: f64,
    pub area_width: f64,
    pub area_height: f64,
    pub ue_speed: f64,
    pub timestep_duration: f64,
    pub num_steps: usize,
    /// Candidate rate demands, bits/second; each UE draws uniformly.
    pub demand_set: Vec<f64>,
    pub demand_policy: DemandPolicy,
    /// AP selection window for the greedy combining benchmark, dB.
    pub power_diff_threshold_db: f64,
    /// Distances are clamped to at least this many meters.
    pub min_distance: f64,
    /// Upper bound on applied swaps in the swap-matching process.
    /// `None` means `ue_quota * num_ues^2`.
    pub swap_cap: Option<usize>,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            num_aps: 50,
            num_ues: 20,
            antennas_per_ap: 16,
            ap_quota: 12,
            ue_quota: 8,
            max_power: 0.2,
            bandwidth: 20e6,
            carrier_freq: 3.5e9,
            pathloss_exp: 2.0,
            shadow_var: 6.0,
            shadowing_scale: ShadowingScale::NaturalLog,
            noise_var: 1e-5,
            satisfaction_threshold: 1.0,
            area_width: 200.0,
            area_height: 200.0,
            ue_speed: 1.0,
            timestep_duration: 1.0,
            num_steps: 100,
            demand_set: vec![5e6, 30e6, 100e6],
            demand_policy: DemandPolicy::PerTimestep,
            power_diff_threshold_db: 30.0,
            min_distance: 1.0,
            swap_cap: None,
            seed: 1,
        }
    }
}

/// A configuration field that failed validation.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: &'static str,
    pub reason: &'static str,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid `{}`: {}", self.field, self.reason)
    }
}

impl core::error::Error for ConfigError {}

fn positive_count(field: &'static str, v: usize) -> Result<(), ConfigError> {
    if v == 0 {
        return Err(ConfigError { field, reason: "must be at least 1" });
    }
    Ok(())
}

fn positive(field: &'static str, v: f64) -> Result<(), ConfigError> {
    if !(v.is_finite() && v > 0.0) {
        return Err(ConfigError { field, reason: "must be finite and positive" });
    }
    Ok(())
}

fn non_negative(field: &'static str, v: f64) -> Result<(), ConfigError> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(ConfigError { field, reason: "must be finite and non-negative" });
    }
    Ok(())
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        positive_count("num_aps", self.num_aps)?;
        positive_count("num_ues", self.num_ues)?;
        positive_count("antennas_per_ap", self.antennas_per_ap)?;
        positive_count("ap_quota", self.ap_quota)?;
        positive_count("ue_quota", self.ue_quota)?;
        positive_count("num_steps", self.num_steps)?;
        positive("max_power", self.max_power)?;
        positive("bandwidth", self.bandwidth)?;
        positive("carrier_freq", self.carrier_freq)?;
        positive("pathloss_exp", self.pathloss_exp)?;
        non_negative("shadow_var", self.shadow_var)?;
        positive("noise_var", self.noise_var)?;
        if !(0.0..=1.0).contains(&self.satisfaction_threshold) {
            return Err(ConfigError { field: "satisfaction_threshold", reason: "must lie in [0, 1]" });
        }
        positive("area_width", self.area_width)?;
        positive("area_height", self.area_height)?;
        non_negative("ue_speed", self.ue_speed)?;
        positive("timestep_duration", self.timestep_duration)?;
        if self.demand_set.is_empty() {
            return Err(ConfigError { field: "demand_set", reason: "must not be empty" });
        }
        for &d in &self.demand_set {
            positive("demand_set", d)?;
        }
        if self.power_diff_threshold_db.is_nan() || self.power_diff_threshold_db < 0.0 {
            return Err(ConfigError { field: "power_diff_threshold_db", reason: "must be non-negative" });
        }
        positive("min_distance", self.min_distance)?;
        if self.swap_cap == Some(0) {
            return Err(ConfigError { field: "swap_cap", reason: "must be at least 1 when set" });
        }
        Ok(())
    }

    /// Carrier wavelength in meters.
    pub fn wavelength(&self) -> f64 {
        crate::channel::SPEED_OF_LIGHT / self.carrier_freq
    }

    pub fn effective_swap_cap(&self) -> usize {
        self.swap_cap.unwrap_or(self.ue_quota * self.num_ues * self.num_ues)
    }

    /// Largest number of associations any quota-respecting matching can hold.
    pub fn association_bound(&self) -> usize {
        core::cmp::min(self.num_aps * self.ap_quota, self.num_ues * self.ue_quota)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = ScenarioConfig::default();
        c.validate().unwrap();
        assert_eq!((c.num_aps, c.num_ues, c.antennas_per_ap), (50, 20, 16));
        assert_eq!((c.ap_quota, c.ue_quota), (12, 8));
        assert_eq!(c.association_bound(), 160);
        assert_eq!(c.effective_swap_cap(), 8 * 400);
    }

    #[test]
    fn threshold_out_of_range_names_field() {
        let c = ScenarioConfig { satisfaction_threshold: 1.5, ..Default::default() };
        assert_eq!(c.validate().unwrap_err().field, "satisfaction_threshold");
    }

    #[test]
    fn rejects_bad_demands() {
        let c = ScenarioConfig { demand_set: vec![], ..Default::default() };
        assert_eq!(c.validate().unwrap_err().field, "demand_set");
        let c = ScenarioConfig { demand_set: vec![5e6, -1.0], ..Default::default() };
        assert_eq!(c.validate().unwrap_err().field, "demand_set");
    }

    #[test]
    fn rejects_zero_counts() {
        let c = ScenarioConfig { num_ues: 0, ..Default::default() };
        assert_eq!(c.validate().unwrap_err().field, "num_ues");
        let c = ScenarioConfig { max_power: 0.0, ..Default::default() };
        assert_eq!(c.validate().unwrap_err().field, "max_power");
    }
}
