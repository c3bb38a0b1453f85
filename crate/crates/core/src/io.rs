//! JSON files for QUBO and Ising models.
//!
//! QUBO: `{"n": 4, "constant": 484.0, "terms": [[i, j, coeff], ...]}` with
//! `0 <= i <= j < n`; `i == j` entries are linear terms. Unknown keys are
//! rejected and the written text is newline-terminated. Floats are written in
//! shortest round-trip form, so write-then-read is bit-exact.
//!
//! Ising: `{"n": 2, "offset": 0.0, "fields": [[i, h]], "couplings": [[i, j, J]]}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::{IsingModel, QuboBuilder, QuboModel};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuboFile {
    n: usize,
    constant: f64,
    terms: Vec<(usize, usize, f64)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IsingFile {
    n: usize,
    offset: f64,
    #[serde(default)]
    fields: Vec<(usize, f64)>,
    #[serde(default)]
    couplings: Vec<(usize, usize, f64)>,
}

/// Sign convention of an Ising file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IsingConvention {
    /// `E = Σ J σσ + Σ h σ + offset`, as stored internally.
    #[default]
    Internal,
    /// `H = −Σ J σσ − Σ h σ + offset`; `h` and `J` are negated on import.
    Negated,
}

pub fn qubo_to_json_string(model: &QuboModel) -> String {
    let file = QuboFile {
        n: model.num_variables(),
        constant: model.constant(),
        terms: model.terms(),
    };
    let mut s = serde_json::to_string(&file).expect("QUBO serialization cannot fail");
    s.push('\n');
    s
}

pub fn qubo_from_json_str(text: &str, source_name: &str) -> Result<QuboModel> {
    let file: QuboFile =
        serde_json::from_str(text).map_err(|e| Error::parse(source_name, e.to_string()))?;
    if file.n == 0 {
        return Err(Error::parse(source_name, "field \"n\": must be at least 1"));
    }
    let mut b = QuboBuilder::new(file.n);
    for (k, &(i, j, v)) in file.terms.iter().enumerate() {
        if i >= file.n || j >= file.n {
            return Err(Error::parse(
                source_name,
                format!(
                    "terms[{k}]: index {} out of range for n = {}",
                    i.max(j),
                    file.n
                ),
            ));
        }
        if i > j {
            return Err(Error::parse(
                source_name,
                format!("terms[{k}]: expected i <= j, got ({i}, {j})"),
            ));
        }
        if !v.is_finite() {
            return Err(Error::parse(
                source_name,
                format!("terms[{k}]: non-finite coefficient"),
            ));
        }
        b.add(i, j, v);
    }
    b.add_constant(file.constant);
    b.build()
        .map_err(|e| Error::parse(source_name, e.to_string()))
}

pub fn write_qubo(model: &QuboModel, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, qubo_to_json_string(model)).map_err(|e| Error::io(path, e))
}

pub fn read_qubo(path: impl AsRef<Path>) -> Result<QuboModel> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    qubo_from_json_str(&text, &path.display().to_string())
}

pub fn ising_to_json_string(model: &IsingModel) -> String {
    let file = IsingFile {
        n: model.num_spins(),
        offset: model.offset(),
        fields: model.fields().iter().map(|(&i, &v)| (i, v)).collect(),
        couplings: model
            .couplings()
            .iter()
            .map(|(&(i, j), &v)| (i, j, v))
            .collect(),
    };
    let mut s = serde_json::to_string(&file).expect("Ising serialization cannot fail");
    s.push('\n');
    s
}

pub fn ising_from_json_str(
    text: &str,
    source_name: &str,
    convention: IsingConvention,
) -> Result<IsingModel> {
    let file: IsingFile =
        serde_json::from_str(text).map_err(|e| Error::parse(source_name, e.to_string()))?;
    let built = match convention {
        IsingConvention::Internal => {
            IsingModel::new(file.n, file.fields, file.couplings, file.offset)
        }
        IsingConvention::Negated => {
            IsingModel::from_negated_convention(file.n, file.fields, file.couplings, file.offset)
        }
    };
    built.map_err(|e| Error::parse(source_name, e.to_string()))
}

pub fn read_ising(path: impl AsRef<Path>, convention: IsingConvention) -> Result<IsingModel> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ising_from_json_str(&text, &path.display().to_string(), convention)
}

pub fn write_ising(model: &IsingModel, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, ising_to_json_string(model)).map_err(|e| Error::io(path, e))
}

/// SHA-256 of the canonical JSON text, hex encoded.
pub fn fingerprint(model: &QuboModel) -> String {
    let digest = Sha256::digest(qubo_to_json_string(model).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
