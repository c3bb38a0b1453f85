//! Metropolis simulated annealing with a geometric cooling schedule.
//!
//! Each restart draws from its own ChaCha8 stream: the generator is seeded
//! with the master seed and switched to stream number `r` for restart `r`.
//! ChaCha8 output is fully specified, so a seed reproduces the same samples
//! on every platform. One uniform draw is consumed per proposal, whether or
//! not the move is downhill.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Assignment, QuboModel};
use crate::sample::{Sample, SampleSet, SolverMetadata};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Schedule {
    Geometric,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnnealConfig {
    pub sweeps: usize,
    pub restarts: usize,
    /// `None` selects [`auto_temperature`].
    pub initial_temperature: Option<f64>,
    pub final_temperature: f64,
    pub schedule: Schedule,
    pub seed: u64,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            sweeps: 1000,
            restarts: 10,
            initial_temperature: None,
            final_temperature: 0.1,
            schedule: Schedule::Geometric,
            seed: 0,
        }
    }
}

impl AnnealConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_sweeps(mut self, sweeps: usize) -> Self {
        self.sweeps = sweeps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.sweeps == 0 {
            return Err(Error::Config("sweeps must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        if !(self.final_temperature > 0.0 && self.final_temperature.is_finite()) {
            return Err(Error::Config(format!(
                "final temperature must be positive, got {}",
                self.final_temperature
            )));
        }
        if let Some(t0) = self.initial_temperature {
            if !(t0.is_finite() && t0 >= self.final_temperature) {
                return Err(Error::Config(format!(
                    "initial temperature {t0} must be finite and at least the final temperature {}",
                    self.final_temperature
                )));
            }
        }
        Ok(())
    }

    /// Initial temperature actually used for `model`. The automatic value is
    /// raised to the final temperature when the model is nearly flat.
    pub fn resolved_initial_temperature(&self, model: &QuboModel) -> f64 {
        self.initial_temperature
            .unwrap_or_else(|| auto_temperature(model).max(self.final_temperature))
    }
}

/// Largest possible `|ΔE|` of a single flip: `max_i |Q_ii| + Σ_j |Q_ij|`.
/// An uphill move at this temperature is accepted with probability at least
/// `e⁻¹`. A model without terms gets 1.
pub fn auto_temperature(model: &QuboModel) -> f64 {
    let nb = model.neighborhood();
    let t = (0..model.num_variables())
        .map(|i| nb.max_flip_magnitude(i))
        .fold(0.0, f64::max);
    if t > 0.0 {
        t
    } else {
        1.0
    }
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Best assignment seen during one restart.
fn anneal_once(model: &QuboModel, cfg: &AnnealConfig, t0: f64, restart: usize) -> Vec<u8> {
    let n = model.num_variables();
    let nb = model.neighborhood();
    let mut rng = restart_rng(cfg.seed, restart);
    let mut bits: Vec<u8> = (0..n).map(|_| rng.gen::<bool>() as u8).collect();
    let mut energy = model.evaluate_bits(&bits);
    let mut best = bits.clone();
    let mut best_energy = energy;

    let cooling = (cfg.final_temperature / t0).powf(1.0 / cfg.sweeps as f64);
    let mut t = t0;
    for _ in 0..cfg.sweeps {
        for i in 0..n {
            let delta = nb.flip_delta(&bits, i);
            let u: f64 = rng.gen();
            if delta <= 0.0 || u < (-delta / t).exp() {
                bits[i] ^= 1;
                energy += delta;
                if energy < best_energy {
                    best_energy = energy;
                    best.copy_from_slice(&bits);
                }
            }
        }
        t *= cooling;
    }
    best
}

/// Runs `cfg.restarts` independent anneals and returns their best
/// assignments, deduplicated and energy-sorted.
pub fn solve_sa(model: &QuboModel, cfg: &AnnealConfig) -> Result<SampleSet> {
    cfg.validate()?;
    let t0 = cfg.resolved_initial_temperature(model);
    let bests: Vec<Vec<u8>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| anneal_once(model, cfg, t0, r))
        .collect();
    let entries = bests.into_iter().enumerate().map(|(r, bits)| {
        (
            Assignment::new(bits).expect("binary"),
            1,
            format!("sa-restart-{r}"),
        )
    });
    let mut config = serde_json::to_value(cfg).expect("config serializes");
    config["resolved_initial_temperature"] = serde_json::json!(t0);
    let metadata = SolverMetadata {
        solver: "sa".into(),
        seed: Some(cfg.seed),
        config,
    };
    SampleSet::from_assignments(model, entries, metadata)
}

/// First sample of a sorted set.
pub fn lowest(set: &SampleSet) -> Result<&Sample> {
    set.lowest()
}
