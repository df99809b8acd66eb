//! Geometry, mobility and the stochastic channel model.
//!
//! The channel between UE `k` and AP `m` is `h = alpha * sqrt(g)` where
//! `alpha ~ CN(0, I_N)` is Rayleigh small-scale fading and
//! `g = (lambda / 4pi)^2 * d^-eta * chi` combines free-space path loss with
//! log-normal shadowing `chi`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::config::{ScenarioConfig, ShadowingScale};
use crate::matrix::Matrix;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        libm::hypot(self.x - other.x, self.y - other.y)
    }

    fn uniform<R: Rng + ?Sized>(config: &ScenarioConfig, rng: &mut R) -> Self {
        Self {
            x: rng.random::<f64>() * config.area_width,
            y: rng.random::<f64>() * config.area_height,
        }
    }

    pub fn inside(self, config: &ScenarioConfig) -> bool {
        (0.0..=config.area_width).contains(&self.x) && (0.0..=config.area_height).contains(&self.y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub ap_positions: Vec<Point>,
    pub ue_positions: Vec<Point>,
    /// Current random-waypoint target of each UE.
    pub ue_waypoints: Vec<Point>,
}

/// Drops APs and UEs uniformly over the area and draws each UE's first waypoint.
pub fn generate_layout<R: Rng + ?Sized>(config: &ScenarioConfig, rng: &mut R) -> Layout {
    let ap_positions = (0..config.num_aps).map(|_| Point::uniform(config, rng)).collect();
    let ue_positions = (0..config.num_ues).map(|_| Point::uniform(config, rng)).collect();
    let ue_waypoints = (0..config.num_ues).map(|_| Point::uniform(config, rng)).collect();
    Layout { ap_positions, ue_positions, ue_waypoints }
}

/// Advances every UE by `ue_speed * timestep_duration` meters along the
/// random-waypoint model. A UE that reaches its waypoint draws a fresh one and
/// spends the rest of the step heading toward it.
pub fn step_mobility<R: Rng + ?Sized>(layout: &Layout, config: &ScenarioConfig, rng: &mut R) -> Layout {
    let mut next = layout.clone();
    let step = config.ue_speed * config.timestep_duration;
    if step <= 0.0 {
        return next;
    }
    for (pos, target) in next.ue_positions.iter_mut().zip(next.ue_waypoints.iter_mut()) {
        let mut remaining = step;
        loop {
            let gap = pos.distance(*target);
            if gap > remaining {
                let t = remaining / gap;
                pos.x += (target.x - pos.x) * t;
                pos.y += (target.y - pos.y) * t;
                break;
            }
            *pos = *target;
            remaining -= gap;
            *target = Point::uniform(config, rng);
            if remaining <= 0.0 {
                break;
            }
        }
    }
    next
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelError {
    NonPositiveDistance(f64),
    NonPositiveShadowing(f64),
}

impl fmt::Display for ChannelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonPositiveDistance(d) => write!(f, "path gain needs a positive distance, got {d}"),
            Self::NonPositiveShadowing(s) => write!(f, "shadowing factor must be positive, got {s}"),
        }
    }
}

impl core::error::Error for ChannelError {}

/// Linear large-scale gain `(lambda/4pi)^2 * d^-eta * chi`.
pub fn path_gain(distance: f64, config: &ScenarioConfig, shadowing: f64) -> Result<f64, ChannelError> {
    if distance.is_nan() || distance <= 0.0 {
        return Err(ChannelError::NonPositiveDistance(distance));
    }
    if shadowing.is_nan() || shadowing <= 0.0 {
        return Err(ChannelError::NonPositiveShadowing(shadowing));
    }
    let free_space = config.wavelength() / (4.0 * PI);
    Ok(free_space * free_space * libm::pow(distance, -config.pathloss_exp) * shadowing)
}

pub fn draw_shadowing<R: Rng + ?Sized>(config: &ScenarioConfig, rng: &mut R) -> f64 {
    let z: f64 = rng.sample::<f64, _>(StandardNormal) * libm::sqrt(config.shadow_var);
    match config.shadowing_scale {
        ShadowingScale::NaturalLog => libm::exp(z),
        ShadowingScale::Decibel => libm::pow(10.0, z / 10.0),
    }
}

/// One draw of `CN(0, 1)`: independent real and imaginary parts with variance 1/2.
pub fn draw_complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

/// Channel state for every (UE, AP) pair at one timestep.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub gains: Matrix<f64>,
    pub distances: Matrix<f64>,
    antennas: usize,
    vectors: Vec<Complex64>,
}

impl ChannelRealization {
    /// Builds `h = alpha * sqrt(g)` from given fading coefficients, laid out
    /// UE-major then AP then antenna.
    pub fn compose(gains: Matrix<f64>, distances: Matrix<f64>, antennas: usize, fading: &[Complex64]) -> Self {
        let (k, m) = (gains.rows(), gains.cols());
        assert_eq!(fading.len(), k * m * antennas, "fading length mismatch");
        let mut vectors = Vec::with_capacity(fading.len());
        for ue in 0..k {
            for ap in 0..m {
                let amp = libm::sqrt(gains[(ue, ap)]);
                let base = (ue * m + ap) * antennas;
                vectors.extend(fading[base..base + antennas].iter().map(|a| a * amp));
            }
        }
        Self { gains, distances, antennas, vectors }
    }

    /// Wraps explicit channel vectors. `gains` are kept as given and drive
    /// preference lists; the vectors drive SINR.
    pub fn from_vectors(gains: Matrix<f64>, distances: Matrix<f64>, antennas: usize, vectors: Vec<Complex64>) -> Self {
        assert_eq!(vectors.len(), gains.rows() * gains.cols() * antennas, "vector length mismatch");
        assert_eq!((gains.rows(), gains.cols()), (distances.rows(), distances.cols()));
        Self { gains, distances, antennas, vectors }
    }

    pub fn num_ues(&self) -> usize {
        self.gains.rows()
    }

    pub fn num_aps(&self) -> usize {
        self.gains.cols()
    }

    pub fn antennas(&self) -> usize {
        self.antennas
    }

    /// `h_{k,m}` as a slice of `N` complex entries.
    pub fn vector(&self, ue: usize, ap: usize) -> &[Complex64] {
        let base = (ue * self.num_aps() + ap) * self.antennas;
        &self.vectors[base..base + self.antennas]
    }
}

/// Draws shadowing from `shadow_rng` and fading from `fading_rng` for the
/// current positions.
pub fn realize_channels<R1, R2>(
    layout: &Layout,
    config: &ScenarioConfig,
    shadow_rng: &mut R1,
    fading_rng: &mut R2,
) -> ChannelRealization
where
    R1: Rng + ?Sized,
    R2: Rng + ?Sized,
{
    let k = layout.ue_positions.len();
    let m = layout.ap_positions.len();
    let distances = Matrix::from_fn(k, m, |ue, ap| {
        layout.ue_positions[ue].distance(layout.ap_positions[ap]).max(config.min_distance)
    });
    let gains = Matrix::from_fn(k, m, |ue, ap| {
        let chi = draw_shadowing(config, shadow_rng);
        path_gain(distances[(ue, ap)], config, chi).expect("clamped distance")
    });
    let n = config.antennas_per_ap;
    let fading: Vec<Complex64> = (0..k * m * n).map(|_| draw_complex_normal(fading_rng)).collect();
    ChannelRealization::compose(gains, distances, n, &fading)
}
