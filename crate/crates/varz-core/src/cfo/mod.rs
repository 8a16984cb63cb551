//! Deterministic, parameter-free Central Force Optimization.
//!
//! Probes "fly" through a box-bounded decision space under pseudo-gravity that
//! attracts them toward probes of higher fitness. No step of the algorithm is
//! random: the initial distribution is a set of axis-parallel probe lines and
//! every update is a closed-form expression, so a run is a pure function of its
//! inputs.
//!
//! The building blocks live in [`kinematics`]; [`run`] wires them into a single
//! run and the (γ × Np/Nd) sweep.

pub mod kinematics;
pub mod run;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use kinematics::{
    compute_accelerations, davg, fitness_saturated, frep_next, global_best, init_probe_lines,
    retrieve_errant_directional, retrieve_errant_simple, step_positions,
};
pub use run::{
    gamma_grid, np_per_dim_schedule, run_single, sweep, ProbeRun, RunBest, RunOutput, RunSeries,
    SweepResult,
};

/// Probe positions at one time step: `positions[p][i]` is coordinate `i` of probe `p`.
pub type Positions = Vec<Vec<f64>>;

/// A fitness function to be maximized.
///
/// Implementations must be deterministic; the sweep may call them from several
/// threads at once.
pub trait Objective: Sync {
    /// Fitness at `x`. A non-finite value aborts the run.
    fn evaluate(&self, x: &[f64]) -> Result<f64>;
}

/// Adapts an infallible closure into an [`Objective`].
#[derive(Debug, Clone, Copy)]
pub struct FnObjective<F>(pub F);

impl<F> Objective for FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        Ok((self.0)(x))
    }
}

impl<T: Objective + ?Sized> Objective for &T {
    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        (**self).evaluate(x)
    }
}

/// Box-shaped decision space with a shrinkable live copy of the bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionSpace {
    live_min: Vec<f64>,
    live_max: Vec<f64>,
    start_min: Vec<f64>,
    start_max: Vec<f64>,
}

impl DecisionSpace {
    /// Builds a space from per-dimension lower and upper bounds.
    ///
    /// Degenerate dimensions (`min == max`) are allowed; they pin a coordinate.
    pub fn new(min: Vec<f64>, max: Vec<f64>) -> Result<Self> {
        if min.is_empty() {
            return Err(Error::InvalidConfig("decision space needs at least one dimension".into()));
        }
        if min.len() != max.len() {
            return Err(Error::InvalidConfig(format!(
                "bound lengths differ: {} minima, {} maxima",
                min.len(),
                max.len()
            )));
        }
        for (i, (lo, hi)) in min.iter().zip(&max).enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(Error::InvalidConfig(format!(
                    "dimension {}: bounds [{lo}, {hi}] are not a finite interval",
                    i + 1
                )));
            }
        }
        Ok(Self { live_min: min.clone(), live_max: max.clone(), start_min: min, start_max: max })
    }

    /// Builds a space from `(min, max)` pairs.
    pub fn from_pairs(bounds: &[(f64, f64)]) -> Result<Self> {
        let (min, max) = bounds.iter().copied().unzip();
        Self::new(min, max)
    }

    /// Dimensionality Nd.
    pub fn dims(&self) -> usize {
        self.live_min.len()
    }

    pub fn live_min(&self) -> &[f64] {
        &self.live_min
    }

    pub fn live_max(&self) -> &[f64] {
        &self.live_max
    }

    pub fn start_min(&self) -> &[f64] {
        &self.start_min
    }

    pub fn start_max(&self) -> &[f64] {
        &self.start_max
    }

    /// Length of the principal diagonal of the starting box.
    pub fn start_diagonal(&self) -> f64 {
        self.start_min
            .iter()
            .zip(&self.start_max)
            .map(|(lo, hi)| (hi - lo) * (hi - lo))
            .sum::<f64>()
            .sqrt()
    }

    /// Whether `x` lies inside the live bounds.
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dims()
            && x.iter().enumerate().all(|(i, v)| *v >= self.live_min[i] && *v <= self.live_max[i])
    }

    /// Halves every live interval toward `best`.
    ///
    /// Coordinates of `best` outside the live box are clamped first, so the
    /// live box stays nested inside its predecessor unconditionally.
    pub fn shrink(&mut self, best: &[f64]) -> Result<()> {
        if best.len() != self.dims() {
            return Err(Error::InvalidInput(format!(
                "best position has {} coordinates, space has {}",
                best.len(),
                self.dims()
            )));
        }
        for (i, b) in best.iter().enumerate() {
            let (lo, hi) = (self.live_min[i], self.live_max[i]);
            let b = b.clamp(lo, hi);
            self.live_min[i] = lo + (b - lo) / 2.0;
            self.live_max[i] = hi - (hi - b) / 2.0;
        }
        Ok(())
    }

    /// Restores the live bounds to the starting bounds.
    pub fn reset(&mut self) {
        self.live_min.clone_from(&self.start_min);
        self.live_max.clone_from(&self.start_max);
    }
}

/// CFO run parameters. Defaults are the hardwired values of the reference driver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CfoParams {
    /// Maximum number of time steps per run.
    pub nt: usize,
    /// Number of γ values on the uniform [0, 1] grid.
    pub n_gamma: usize,
    /// Largest probes-per-dimension count in the sweep.
    pub max_np_per_dim: usize,
    pub frep_init: f64,
    pub frep_delta: f64,
    pub frep_min: f64,
    /// Exponent on the fitness difference.
    pub alpha_exp: f64,
    /// Exponent on the probe separation.
    pub beta_exp: f64,
    pub g_const: f64,
    pub dt: f64,
    /// Decision-space shrink interval in steps.
    pub shrink_every: usize,
    /// Number of consecutive steps averaged by the saturation test.
    pub sat_window: usize,
    pub sat_tol: f64,
}

impl Default for CfoParams {
    fn default() -> Self {
        Self {
            nt: 250,
            n_gamma: 11,
            max_np_per_dim: 8,
            frep_init: 0.5,
            frep_delta: 0.1,
            frep_min: 0.05,
            alpha_exp: 1.0,
            beta_exp: 1.0,
            g_const: 2.0,
            dt: 0.5,
            shrink_every: 20,
            sat_window: 25,
            sat_tol: 1e-6,
        }
    }
}

impl CfoParams {
    /// Checks every field against its documented domain.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n_gamma == 0 {
            return bad("n_gamma must be at least 1".into());
        }
        if self.max_np_per_dim < 2 {
            return bad(format!("max_np_per_dim must be at least 2, got {}", self.max_np_per_dim));
        }
        if !(self.frep_min > 0.0 && self.frep_min <= self.frep_init && self.frep_init <= 1.0) {
            return bad(format!(
                "need 0 < frep_min <= frep_init <= 1, got frep_min={} frep_init={}",
                self.frep_min, self.frep_init
            ));
        }
        if !(self.frep_delta.is_finite() && self.frep_delta > 0.0) {
            return bad(format!("frep_delta must be positive, got {}", self.frep_delta));
        }
        for (name, v) in [("alpha_exp", self.alpha_exp), ("beta_exp", self.beta_exp)] {
            if !(v.is_finite() && v >= 0.0) {
                return bad(format!("{name} must be finite and non-negative, got {v}"));
            }
        }
        for (name, v) in [("g_const", self.g_const), ("dt", self.dt)] {
            if !v.is_finite() {
                return bad(format!("{name} must be finite, got {v}"));
            }
        }
        if self.shrink_every == 0 {
            return bad("shrink_every must be at least 1".into());
        }
        if self.sat_window == 0 {
            return bad("sat_window must be at least 1".into());
        }
        if !(self.sat_tol.is_finite() && self.sat_tol >= 0.0) {
            return bad(format!("sat_tol must be finite and non-negative, got {}", self.sat_tol));
        }
        Ok(())
    }
}
