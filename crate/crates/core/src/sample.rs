//! Solver output containers.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Assignment, QuboModel};

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub assignment: Assignment,
    pub energy: f64,
    pub multiplicity: u64,
    pub source: String,
}

/// Provenance echoed into every [`SampleSet`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverMetadata {
    pub solver: String,
    pub seed: Option<u64>,
    pub config: serde_json::Value,
}

/// Samples sorted ascending by energy, ties broken by the lexicographically
/// smallest bitstring, with duplicate assignments merged.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    samples: Vec<Sample>,
    fingerprint: String,
    metadata: SolverMetadata,
}

impl SampleSet {
    /// Energies are recomputed with [`QuboModel::evaluate`] so that every
    /// sample carries the canonical energy of its assignment.
    pub fn from_assignments(
        model: &QuboModel,
        entries: impl IntoIterator<Item = (Assignment, u64, String)>,
        metadata: SolverMetadata,
    ) -> Result<Self> {
        let mut merged: BTreeMap<Assignment, (u64, String)> = BTreeMap::new();
        for (assignment, multiplicity, source) in entries {
            if assignment.len() != model.num_variables() {
                return Err(Error::Dimension {
                    expected: model.num_variables(),
                    actual: assignment.len(),
                });
            }
            merged
                .entry(assignment)
                .and_modify(|(m, _)| *m += multiplicity)
                .or_insert((multiplicity, source));
        }
        let mut samples: Vec<Sample> = merged
            .into_iter()
            .map(|(assignment, (multiplicity, source))| Sample {
                energy: model.evaluate_bits(assignment.bits()),
                assignment,
                multiplicity,
                source,
            })
            .collect();
        samples.sort_by(|a, b| {
            a.energy
                .total_cmp(&b.energy)
                .then_with(|| a.assignment.cmp(&b.assignment))
        });
        Ok(SampleSet {
            samples,
            fingerprint: crate::io::fingerprint(model),
            metadata,
        })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn metadata(&self) -> &SolverMetadata {
        &self.metadata
    }

    /// The best sample ("sample first").
    pub fn lowest(&self) -> Result<&Sample> {
        lowest(self)
    }

    pub fn energies(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.energy).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct SampleJson<'a> {
            bitstring: String,
            energy: f64,
            multiplicity: u64,
            source: &'a str,
        }
        serde_json::json!({
            "fingerprint": self.fingerprint,
            "metadata": self.metadata,
            "samples": self.samples.iter().map(|s| SampleJson {
                bitstring: s.assignment.to_string(),
                energy: s.energy,
                multiplicity: s.multiplicity,
                source: &s.source,
            }).collect::<Vec<_>>(),
        })
    }
}

pub fn lowest(set: &SampleSet) -> Result<&Sample> {
    set.samples.first().ok_or(Error::Empty)
}
