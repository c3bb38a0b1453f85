//! QAOA statevector simulation.
//!
//! The circuit is a Hadamard layer followed by `p` alternating cost and
//! mixer layers:
//!
//! ```text
//! |ψ(γ, β)⟩ = M(β_p) C(γ_p) … M(β_1) C(γ_1) H^⊗n |0…0⟩
//! C(γ) = exp(−iγ H_cost),  M(β) = Π_q RX_q(2β) = Π_q exp(−iβ X_q)
//! ```
//!
//! `H_cost` is the Ising form of the QUBO. Since it is diagonal in the
//! computational basis, the cost layer multiplies each amplitude by
//! `exp(−iγ E(z))`; this equals the RZ/ZZ gate network up to a global phase.
//!
//! Basis index `z` stores variable 0 in its least-significant bit. Bitstrings
//! in counts maps are written with variable 0 leftmost.

mod simplex;

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Assignment, IsingModel, QuboModel};
use crate::sample::{Sample, SampleSet, SolverMetadata};

pub use simplex::{minimize, SimplexOptions, SimplexResult};

pub const MAX_QUBITS: usize = 20;

/// Full vector of `2ⁿ` amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::Capacity(format!(
                "statevector is capped at {MAX_QUBITS} qubits, requested {n}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Statevector { n, amps })
    }

    /// `|z⟩`.
    pub fn basis(n: usize, z: u64) -> Result<Self> {
        let mut s = Self::zero(n)?;
        if z >= 1 << n {
            return Err(Error::Bounds {
                index: z as usize,
                n: 1 << n,
            });
        }
        s.amps[0] = Complex64::new(0.0, 0.0);
        s.amps[z as usize] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// Wraps raw amplitudes; the length must be a power of two and the norm 1
    /// within 1e-9.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Instance(format!(
                "{len} amplitudes is not a power of two"
            )));
        }
        let n = len.trailing_zeros() as usize;
        if n > MAX_QUBITS {
            return Err(Error::Capacity(format!(
                "statevector is capped at {MAX_QUBITS} qubits, got {n}"
            )));
        }
        let s = Statevector { n, amps };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::Instance(format!("state has squared norm {norm}")));
        }
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Statevector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: other.n,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Applies a 2×2 unitary `[[m00, m01], [m10, m11]]` to `qubit`.
    pub fn apply_single_qubit(&mut self, qubit: usize, m: [[Complex64; 2]; 2]) {
        let bit = 1usize << qubit;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a, b) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a + m[0][1] * b;
                self.amps[i | bit] = m[1][0] * a + m[1][1] * b;
            }
        }
    }

    pub fn apply_hadamards(&mut self) {
        for q in 0..self.n {
            let bit = 1usize << q;
            for i in 0..self.amps.len() {
                if i & bit == 0 {
                    let (a, b) = (self.amps[i], self.amps[i | bit]);
                    self.amps[i] = (a + b) * FRAC_1_SQRT_2;
                    self.amps[i | bit] = (a - b) * FRAC_1_SQRT_2;
                }
            }
        }
    }

    /// Multiplies amplitude `z` by `exp(−iγ diagonal[z])`.
    pub fn apply_phase(&mut self, diagonal: &CostDiagonal, gamma: f64) -> Result<()> {
        if diagonal.energies.len() != self.amps.len() {
            return Err(Error::Dimension {
                expected: self.n,
                actual: diagonal.num_qubits(),
            });
        }
        self.amps
            .par_iter_mut()
            .zip(&diagonal.energies)
            .for_each(|(a, &e)| *a *= Complex64::from_polar(1.0, -gamma * e));
        Ok(())
    }

    /// `RX(2β)` on every qubit.
    pub fn apply_mixer(&mut self, beta: f64) {
        let (c, s) = (beta.cos(), beta.sin());
        let diag = Complex64::new(c, 0.0);
        let off = Complex64::new(0.0, -s);
        for q in 0..self.n {
            self.apply_single_qubit(q, [[diag, off], [off, diag]]);
        }
    }
}

/// Diagonal of the cost Hamiltonian, one energy per basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct CostDiagonal {
    energies: Vec<f64>,
}

impl CostDiagonal {
    pub fn from_ising(m: &IsingModel) -> Result<Self> {
        let n = m.num_spins();
        if n > MAX_QUBITS {
            return Err(Error::Capacity(format!(
                "statevector is capped at {MAX_QUBITS} qubits, model has {n}"
            )));
        }
        Ok(CostDiagonal {
            energies: (0..1u64 << n)
                .into_par_iter()
                .map(|z| m.energy_index(z))
                .collect(),
        })
    }

    pub fn from_qubo(model: &QuboModel) -> Result<Self> {
        Self::from_ising(&model.to_ising())
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn num_qubits(&self) -> usize {
        self.energies.len().trailing_zeros() as usize
    }
}

pub fn hadamard_layer(mut s: Statevector) -> Statevector {
    s.apply_hadamards();
    s
}

pub fn cost_layer(mut s: Statevector, m: &IsingModel, gamma: f64) -> Result<Statevector> {
    if m.num_spins() != s.n {
        return Err(Error::Dimension {
            expected: s.n,
            actual: m.num_spins(),
        });
    }
    s.apply_phase(&CostDiagonal::from_ising(m)?, gamma)?;
    Ok(s)
}

pub fn mixer_layer(mut s: Statevector, beta: f64) -> Statevector {
    s.apply_mixer(beta);
    s
}

fn check_params(gammas: &[f64], betas: &[f64]) -> Result<()> {
    if gammas.len() != betas.len() {
        return Err(Error::Dimension {
            expected: gammas.len(),
            actual: betas.len(),
        });
    }
    if gammas.is_empty() {
        return Err(Error::Config("at least one QAOA layer is required".into()));
    }
    Ok(())
}

fn run_with_diagonal(
    n: usize,
    diag: &CostDiagonal,
    gammas: &[f64],
    betas: &[f64],
) -> Result<Statevector> {
    let mut s = Statevector::zero(n)?;
    s.apply_hadamards();
    for (&g, &b) in gammas.iter().zip(betas) {
        s.apply_phase(diag, g)?;
        s.apply_mixer(b);
    }
    Ok(s)
}

/// Prepares the QAOA state for `model` with per-layer angles.
pub fn run_circuit(model: &QuboModel, gammas: &[f64], betas: &[f64]) -> Result<Statevector> {
    check_params(gammas, betas)?;
    let diag = CostDiagonal::from_qubo(model)?;
    run_with_diagonal(model.num_variables(), &diag, gammas, betas)
}

/// `Σ_z |amp(z)|² E(z)`.
pub fn expectation_exact(model: &QuboModel, s: &Statevector) -> Result<f64> {
    if model.num_variables() != s.n {
        return Err(Error::Dimension {
            expected: s.n,
            actual: model.num_variables(),
        });
    }
    Ok(s.amps
        .iter()
        .enumerate()
        .map(|(z, a)| a.norm_sqr() * model.evaluate_index(z as u64))
        .sum())
}

fn expectation_diag(diag: &CostDiagonal, s: &Statevector) -> f64 {
    s.amps
        .iter()
        .zip(&diag.energies)
        .map(|(a, &e)| a.norm_sqr() * e)
        .sum()
}

/// Measurement counts keyed by basis index.
pub fn sample_indices(s: &Statevector, shots: u64, seed: u64) -> Result<BTreeMap<u64, u64>> {
    if shots == 0 {
        return Err(Error::Config("shots must be at least 1".into()));
    }
    let mut cumulative = Vec::with_capacity(s.amps.len());
    let mut acc = 0.0;
    for a in &s.amps {
        acc += a.norm_sqr();
        cumulative.push(acc);
    }
    let last_nonzero = s.amps.iter().rposition(|a| a.norm_sqr() > 0.0).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        let u = rng.gen::<f64>() * acc;
        let z = cumulative.partition_point(|&c| c <= u).min(last_nonzero);
        *counts.entry(z as u64).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Measurement counts keyed by bitstring (variable 0 leftmost).
pub fn sample(s: &Statevector, shots: u64, seed: u64) -> Result<BTreeMap<String, u64>> {
    let n = s.n;
    Ok(sample_indices(s, shots, seed)?
        .into_iter()
        .map(|(z, c)| (Assignment::from_index(z, n).to_string(), c))
        .collect())
}

/// Shot average of the energy.
pub fn expectation_sampled(
    model: &QuboModel,
    s: &Statevector,
    shots: u64,
    seed: u64,
) -> Result<f64> {
    if model.num_variables() != s.n {
        return Err(Error::Dimension {
            expected: s.n,
            actual: model.num_variables(),
        });
    }
    let counts = sample_indices(s, shots, seed)?;
    Ok(counts
        .iter()
        .map(|(&z, &c)| c as f64 * model.evaluate_index(z))
        .sum::<f64>()
        / shots as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpectationMode {
    /// Statevector expectation, deterministic.
    Exact,
    /// Average over `shots` measurements.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QaoaConfig {
    pub layers: usize,
    pub initial_gamma: f64,
    pub initial_beta: f64,
    pub shots: u64,
    pub max_iterations: usize,
    pub restarts: usize,
    pub mode: ExpectationMode,
    pub seed: u64,
    /// Half-width of the uniform perturbation applied to the start point of
    /// restarts after the first.
    pub restart_spread: f64,
    pub simplex_step: f64,
}

impl Default for QaoaConfig {
    fn default() -> Self {
        QaoaConfig {
            layers: 1,
            initial_gamma: 0.5,
            initial_beta: 0.5,
            shots: 1000,
            max_iterations: 200,
            restarts: 3,
            mode: ExpectationMode::Exact,
            seed: 0,
            restart_spread: 0.5,
            simplex_step: 0.25,
        }
    }
}

impl QaoaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.layers == 0 {
            return Err(Error::Config("layers must be at least 1".into()));
        }
        if self.shots == 0 {
            return Err(Error::Config("shots must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        if !(self.initial_gamma.is_finite() && self.initial_beta.is_finite()) {
            return Err(Error::Config("initial angles must be finite".into()));
        }
        if !(self.simplex_step.is_finite() && self.simplex_step > 0.0) {
            return Err(Error::Config("simplex step must be positive".into()));
        }
        if !(self.restart_spread.is_finite() && self.restart_spread >= 0.0) {
            return Err(Error::Config("restart spread must be non-negative".into()));
        }
        Ok(())
    }
}

/// SplitMix64 finalizer over `(master, a, b)`; gives independent sub-seeds.
fn derive_seed(master: u64, a: u64, b: u64) -> u64 {
    let mut z = master
        .wrapping_add(a.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(b.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Outcome of one optimizer restart.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartOutcome {
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
    pub expectation: f64,
    pub counts: BTreeMap<String, u64>,
    /// Lowest-energy measured bitstring.
    pub best: Sample,
    pub trace: Vec<f64>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QaoaResult {
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
    pub expectation: f64,
    pub counts: BTreeMap<String, u64>,
    pub best: Sample,
    /// Every objective value the optimizer evaluated, restarts in order.
    pub trace: Vec<f64>,
    pub restarts: Vec<RestartOutcome>,
}

impl QaoaResult {
    /// Measured bitstrings as samples with their shot counts.
    pub fn to_sample_set(&self, model: &QuboModel, cfg: &QaoaConfig) -> Result<SampleSet> {
        let entries = self
            .counts
            .iter()
            .map(|(bits, &c)| Ok((Assignment::from_bitstring(bits)?, c, "qaoa".to_string())))
            .collect::<Result<Vec<_>>>()?;
        let metadata = SolverMetadata {
            solver: "qaoa".into(),
            seed: Some(cfg.seed),
            config: serde_json::to_value(cfg).expect("config serializes"),
        };
        SampleSet::from_assignments(model, entries, metadata)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let sample_json = |s: &Sample| {
            serde_json::json!({
                "bitstring": s.assignment.to_string(),
                "energy": s.energy,
                "multiplicity": s.multiplicity,
                "source": s.source,
            })
        };
        serde_json::json!({
            "gammas": self.gammas,
            "betas": self.betas,
            "expectation": self.expectation,
            "counts": self.counts,
            "best_sample": sample_json(&self.best),
            "trace": self.trace,
            "restarts": self.restarts.iter().map(|r| serde_json::json!({
                "gammas": r.gammas,
                "betas": r.betas,
                "expectation": r.expectation,
                "iterations": r.iterations,
                "best_sample": sample_json(&r.best),
            })).collect::<Vec<_>>(),
        })
    }
}

fn best_measured(model: &QuboModel, counts: &BTreeMap<u64, u64>) -> Sample {
    let n = model.num_variables();
    counts
        .iter()
        .map(|(&z, &c)| Sample {
            assignment: Assignment::from_index(z, n),
            energy: model.evaluate_index(z),
            multiplicity: c,
            source: "qaoa".into(),
        })
        .min_by(|a, b| {
            a.energy
                .total_cmp(&b.energy)
                .then_with(|| a.assignment.cmp(&b.assignment))
        })
        .expect("at least one shot")
}

fn run_restart(
    model: &QuboModel,
    diag: &CostDiagonal,
    cfg: &QaoaConfig,
    restart: usize,
) -> Result<RestartOutcome> {
    let n = model.num_variables();
    let p = cfg.layers;
    let mut x0: Vec<f64> = std::iter::repeat_n(cfg.initial_gamma, p)
        .chain(std::iter::repeat_n(cfg.initial_beta, p))
        .collect();
    if restart > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, restart as u64, 0));
        for v in &mut x0 {
            *v += rng.gen_range(-1.0..=1.0) * cfg.restart_spread;
        }
    }

    let mut trace = Vec::new();
    let mut failure = None;
    let mut evaluation = 0u64;
    let objective = |x: &[f64]| -> f64 {
        evaluation += 1;
        let state = match run_with_diagonal(n, diag, &x[..p], &x[p..]) {
            Ok(s) => s,
            Err(e) => {
                failure.get_or_insert(e);
                return f64::INFINITY;
            }
        };
        let value = match cfg.mode {
            ExpectationMode::Exact => expectation_diag(diag, &state),
            ExpectationMode::Sampled => {
                let seed = derive_seed(cfg.seed, restart as u64, evaluation);
                let counts = sample_indices(&state, cfg.shots, seed).expect("shots validated");
                counts
                    .iter()
                    .map(|(&z, &c)| c as f64 * diag.energies[z as usize])
                    .sum::<f64>()
                    / cfg.shots as f64
            }
        };
        trace.push(value);
        value
    };
    let opts = SimplexOptions {
        max_iterations: cfg.max_iterations,
        initial_step: cfg.simplex_step,
        ..Default::default()
    };
    let result = minimize(objective, &x0, &opts);
    if let Some(e) = failure {
        return Err(e);
    }

    let (gammas, betas) = (result.x[..p].to_vec(), result.x[p..].to_vec());
    let state = run_with_diagonal(n, diag, &gammas, &betas)?;
    let counts = sample_indices(
        &state,
        cfg.shots,
        derive_seed(cfg.seed, restart as u64, u64::MAX),
    )?;
    Ok(RestartOutcome {
        best: best_measured(model, &counts),
        counts: counts
            .iter()
            .map(|(&z, &c)| (Assignment::from_index(z, n).to_string(), c))
            .collect(),
        gammas,
        betas,
        expectation: result.value,
        trace,
        iterations: result.iterations,
    })
}

/// Optimizes the `2p` angles with restarted Nelder–Mead, then samples the
/// best circuit.
pub fn optimize(model: &QuboModel, cfg: &QaoaConfig) -> Result<QaoaResult> {
    cfg.validate()?;
    let n = model.num_variables();
    if n > MAX_QUBITS {
        return Err(Error::Capacity(format!(
            "QAOA simulation is capped at {MAX_QUBITS} qubits, model has {n}"
        )));
    }
    let diag = CostDiagonal::from_qubo(model)?;
    let restarts = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(model, &diag, cfg, r))
        .collect::<Result<Vec<_>>>()?;
    let winner = restarts
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.expectation.total_cmp(&b.expectation).then(i.cmp(j)))
        .map(|(_, r)| r.clone())
        .expect("at least one restart");
    Ok(QaoaResult {
        gammas: winner.gammas,
        betas: winner.betas,
        expectation: winner.expectation,
        counts: winner.counts,
        best: winner.best,
        trace: restarts
            .iter()
            .flat_map(|r| r.trace.iter().copied())
            .collect(),
        restarts,
    })
}
