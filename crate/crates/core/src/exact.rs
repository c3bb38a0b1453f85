//! Exhaustive enumeration of all `2ⁿ` assignments.
//!
//! Assignments are visited in Gray-code order, so consecutive assignments
//! differ in one variable and each energy is an O(degree) update of the
//! previous one. The space is split into a fixed number of chunks by the
//! high-order variables; the chunk count depends only on `n`, which keeps
//! the result independent of the thread count.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::model::{Assignment, Neighborhood, QuboModel};
use crate::sample::{SampleSet, SolverMetadata};

pub const MAX_EXACT_VARIABLES: usize = 26;
pub const MAX_SPECTRUM_VARIABLES: usize = 16;
const MAX_PREFIX_BITS: usize = 6;

#[derive(Debug, Clone, Copy)]
struct Candidate {
    energy: f64,
    /// Bitstring read with variable 0 as the most significant bit.
    key: u64,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.energy
            .total_cmp(&other.energy)
            .then(self.key.cmp(&other.key))
    }
}

/// Bounded max-heap keeping the `k` smallest candidates.
struct TopK {
    k: usize,
    heap: BinaryHeap<Candidate>,
}

impl TopK {
    fn new(k: usize) -> Self {
        TopK {
            k,
            heap: BinaryHeap::with_capacity(k.min(1 << 16) + 1),
        }
    }

    #[inline]
    fn offer(&mut self, c: Candidate) {
        if self.heap.len() < self.k {
            self.heap.push(c);
        } else if let Some(top) = self.heap.peek() {
            if c < *top {
                self.heap.pop();
                self.heap.push(c);
            }
        }
    }
}

/// Walks the Gray code over the low `n − prefix_bits` variables with the
/// high variables fixed to `prefix`, calling `visit(bits, energy, key)`.
fn walk_chunk(
    model: &QuboModel,
    nb: &Neighborhood,
    prefix_bits: usize,
    prefix: u64,
    mut visit: impl FnMut(&[u8], f64, u64),
) {
    let n = model.num_variables();
    let free = n - prefix_bits;
    let mut bits = vec![0u8; n];
    let mut key = 0u64;
    for p in 0..prefix_bits {
        if (prefix >> p) & 1 == 1 {
            let var = free + p;
            bits[var] = 1;
            key |= 1 << (n - 1 - var);
        }
    }
    let mut energy = model.evaluate_bits(&bits);
    visit(&bits, energy, key);
    for g in 1..1u64 << free {
        let var = g.trailing_zeros() as usize;
        energy += nb.flip_delta(&bits, var);
        bits[var] ^= 1;
        key ^= 1 << (n - 1 - var);
        visit(&bits, energy, key);
    }
}

fn prefix_bits_for(n: usize) -> usize {
    n.min(MAX_PREFIX_BITS)
}

/// The `top_k` lowest-energy assignments, energy-sorted with the
/// lexicographic tie-break.
pub fn solve_exact(model: &QuboModel, top_k: usize) -> Result<SampleSet> {
    let n = model.num_variables();
    if n > MAX_EXACT_VARIABLES {
        return Err(Error::Capacity(format!(
            "exact enumeration is capped at {MAX_EXACT_VARIABLES} variables, model has {n}; use simulated annealing"
        )));
    }
    if top_k == 0 {
        return Err(Error::Config("top_k must be at least 1".into()));
    }
    let nb = model.neighborhood();
    let prefix_bits = prefix_bits_for(n);
    let chunks: Vec<Vec<Candidate>> = (0..1u64 << prefix_bits)
        .into_par_iter()
        .map(|prefix| {
            let mut top = TopK::new(top_k);
            walk_chunk(model, &nb, prefix_bits, prefix, |_, energy, key| {
                top.offer(Candidate { energy, key })
            });
            top.heap.into_vec()
        })
        .collect();
    let mut all: Vec<Candidate> = chunks.into_iter().flatten().collect();
    all.sort_unstable();
    all.truncate(top_k);

    let entries = all.into_iter().map(|c| {
        let bits = (0..n).map(|i| ((c.key >> (n - 1 - i)) & 1) as u8).collect();
        (
            Assignment::new(bits).expect("binary"),
            1,
            "exact".to_string(),
        )
    });
    let metadata = SolverMetadata {
        solver: "exact".into(),
        seed: None,
        config: json!({ "top_k": top_k }),
    };
    SampleSet::from_assignments(model, entries, metadata)
}

/// All `2ⁿ` energies in basis-index order (variable 0 = least-significant
/// bit), each evaluated directly.
pub fn spectrum(model: &QuboModel) -> Result<Vec<f64>> {
    let n = model.num_variables();
    if n > MAX_SPECTRUM_VARIABLES {
        return Err(Error::Capacity(format!(
            "spectrum is capped at {MAX_SPECTRUM_VARIABLES} variables, model has {n}"
        )));
    }
    Ok((0..1u64 << n).map(|z| model.evaluate_index(z)).collect())
}

/// Energies produced by the incremental Gray-code walk, in basis-index order.
pub fn gray_code_energies(model: &QuboModel) -> Result<Vec<f64>> {
    let n = model.num_variables();
    if n > 20 {
        return Err(Error::Capacity(format!(
            "incremental energy table is capped at 20 variables, model has {n}"
        )));
    }
    let nb = model.neighborhood();
    let prefix_bits = prefix_bits_for(n);
    let mut out = vec![f64::NAN; 1 << n];
    for prefix in 0..1u64 << prefix_bits {
        walk_chunk(model, &nb, prefix_bits, prefix, |bits, energy, _| {
            let z = bits
                .iter()
                .enumerate()
                .fold(0usize, |acc, (i, &b)| acc | ((b as usize) << i));
            out[z] = energy;
        });
    }
    Ok(out)
}
