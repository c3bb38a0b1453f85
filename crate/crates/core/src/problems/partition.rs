use crate::error::{Error, Result};
use crate::model::{Assignment, QuboBuilder, QuboModel};

/// A multiset of positive integers to split into two halves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInstance {
    values: Vec<u64>,
    total: u64,
}

impl PartitionInstance {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Instance(
                "number partitioning needs at least one value".into(),
            ));
        }
        if let Some(pos) = values.iter().position(|&v| v == 0) {
            return Err(Error::Instance(format!(
                "value {pos} is zero; values must be positive"
            )));
        }
        let total = values
            .iter()
            .try_fold(0u64, |acc, &v| acc.checked_add(v))
            .ok_or_else(|| Error::Instance("sum of values overflows".into()))?;
        Ok(PartitionInstance { values, total })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Builds the model whose energy is exactly `d² = (c − 2 Σ s_i x_i)²`.
///
/// Linear terms are `4 s_i (s_i − c)`, each pair contributes `8 s_i s_j`
/// (both halves of the symmetric matrix), and the constant is `c²`.
pub fn number_partitioning(inst: &PartitionInstance) -> Result<QuboModel> {
    let c = i128::from(inst.total);
    let s: Vec<i128> = inst.values.iter().map(|&v| i128::from(v)).collect();
    let mut b = QuboBuilder::new(s.len());
    for (i, &si) in s.iter().enumerate() {
        b.add_linear(i, (4 * si * (si - c)) as f64);
        for (j, &sj) in s.iter().enumerate().skip(i + 1) {
            b.add(i, j, (8 * si * sj) as f64);
        }
    }
    b.add_constant((c * c) as f64);
    b.build()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSplit {
    /// Indices with bit 1.
    pub indices_a: Vec<usize>,
    pub set_a: Vec<u64>,
    pub set_b: Vec<u64>,
    pub difference: u64,
}

pub fn decode_partition(inst: &PartitionInstance, a: &Assignment) -> Result<PartitionSplit> {
    if a.len() != inst.values.len() {
        return Err(Error::Dimension {
            expected: inst.values.len(),
            actual: a.len(),
        });
    }
    let indices_a: Vec<usize> = a.ones().collect();
    let set_a: Vec<u64> = indices_a.iter().map(|&i| inst.values[i]).collect();
    let set_b: Vec<u64> = (0..inst.values.len())
        .filter(|&i| !a.get(i))
        .map(|i| inst.values[i])
        .collect();
    let sum_a: u64 = set_a.iter().sum();
    let sum_b: u64 = set_b.iter().sum();
    Ok(PartitionSplit {
        indices_a,
        set_a,
        set_b,
        difference: sum_a.abs_diff(sum_b),
    })
}
