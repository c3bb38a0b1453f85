//! Cancer-pathway QUBOs built from the coverage matrix `D` and the
//! exclusivity matrix `A`.
//!
//! Single pathway: `xᵀAx − α xᵀDx`.
//!
//! `k` pathways over `X = [x_1 … x_k]`: `Xᵀ(Q_main + α Q_orth)X` with
//! `L = A + D`, `Q_main = −I_k ⊗ L` and `Q_orth = (J_k − I_k) ⊗ I_n`. Variable
//! `(p, i)` (pathway `p`, gene `i`) has index `p·n + i`.
//!
//! Note the sign of `Q_main`: it rewards co-mutation (`+A` inside `L`) where
//! the single-pathway objective penalizes it. The construction is kept as
//! written; `Q_orth` is what keeps pathways disjoint.

use crate::error::{Error, Result};
use crate::model::{Assignment, QuboBuilder, QuboModel};

#[derive(Debug, Clone, PartialEq)]
pub struct PathwayInstance {
    labels: Vec<String>,
    degrees: Vec<u64>,
    adjacency: Vec<Vec<u64>>,
    coverage_weight: f64,
    orthogonality_weight: f64,
    pathways: usize,
}

impl PathwayInstance {
    /// `degrees` is the diagonal of `D`; `adjacency` must be symmetric with a
    /// zero diagonal. Both weights start at `alpha`.
    pub fn new(
        labels: Vec<String>,
        degrees: Vec<u64>,
        adjacency: Vec<Vec<u64>>,
        alpha: f64,
        pathways: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Instance("pathway instance has no genes".into()));
        }
        if degrees.len() != n {
            return Err(Error::Instance(format!(
                "{} degrees for {n} genes",
                degrees.len()
            )));
        }
        if adjacency.len() != n || adjacency.iter().any(|row| row.len() != n) {
            return Err(Error::Instance(format!("adjacency matrix must be {n}×{n}")));
        }
        for i in 0..n {
            if adjacency[i][i] != 0 {
                return Err(Error::Instance(format!(
                    "adjacency diagonal entry {i} is non-zero"
                )));
            }
            for j in 0..i {
                if adjacency[i][j] != adjacency[j][i] {
                    return Err(Error::Instance(format!(
                        "adjacency is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        if pathways == 0 {
            return Err(Error::Instance("pathway count must be at least 1".into()));
        }
        check_weight(alpha)?;
        Ok(PathwayInstance {
            labels,
            degrees,
            adjacency,
            coverage_weight: alpha,
            orthogonality_weight: alpha,
            pathways,
        })
    }

    /// Overrides the weight on `Q_orth` in the multi-pathway model.
    pub fn with_orthogonality_weight(mut self, weight: f64) -> Result<Self> {
        check_weight(weight)?;
        self.orthogonality_weight = weight;
        Ok(self)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn adjacency(&self) -> &[Vec<u64>] {
        &self.adjacency
    }

    pub fn gene_count(&self) -> usize {
        self.labels.len()
    }

    pub fn pathways(&self) -> usize {
        self.pathways
    }

    pub fn coverage_weight(&self) -> f64 {
        self.coverage_weight
    }

    pub fn orthogonality_weight(&self) -> f64 {
        self.orthogonality_weight
    }

    /// Dense `L = A + D`.
    pub fn laplacian_like(&self) -> Vec<Vec<f64>> {
        let n = self.gene_count();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let d = if i == j { self.degrees[i] } else { 0 };
                        (self.adjacency[i][j] + d) as f64
                    })
                    .collect()
            })
            .collect()
    }

    /// Variable count of the model this instance generates.
    pub fn variable_count(&self) -> usize {
        self.pathways * self.gene_count()
    }
}

fn check_weight(w: f64) -> Result<()> {
    if !w.is_finite() || w < 0.0 {
        return Err(Error::Config(format!(
            "pathway weight must be a finite non-negative number, got {w}"
        )));
    }
    Ok(())
}

/// `Σ_ij a_ij x_i x_j − α Σ_i d_i x_i`, folded to `2 a_ij` per pair.
pub fn cancer_single(inst: &PathwayInstance) -> Result<QuboModel> {
    if inst.pathways != 1 {
        return Err(Error::Instance(format!(
            "single-pathway model requested for k = {}; use the multi-pathway model",
            inst.pathways
        )));
    }
    let n = inst.gene_count();
    let mut b = QuboBuilder::new(n);
    for i in 0..n {
        b.add_linear(i, -inst.coverage_weight * inst.degrees[i] as f64);
        for j in i + 1..n {
            b.add(i, j, 2.0 * inst.adjacency[i][j] as f64);
        }
    }
    b.build()
}

fn kron(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let (ra, rb) = (a.len(), b.len());
    let (ca, cb) = (a[0].len(), b[0].len());
    let mut out = vec![vec![0.0; ca * cb]; ra * rb];
    for (i, arow) in a.iter().enumerate() {
        for (j, &av) in arow.iter().enumerate() {
            for (k, brow) in b.iter().enumerate() {
                for (l, &bv) in brow.iter().enumerate() {
                    out[i * rb + k][j * cb + l] = av * bv;
                }
            }
        }
    }
    out
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// Dense `Q_main + α Q_orth` of size `k·n × k·n`.
pub(crate) fn multi_pathway_matrix(inst: &PathwayInstance) -> Vec<Vec<f64>> {
    let k = inst.pathways;
    let n = inst.gene_count();
    let l = inst.laplacian_like();
    let q_main = kron(&identity(k), &l);
    let off_diag: Vec<Vec<f64>> = (0..k)
        .map(|p| (0..k).map(|q| if p == q { 0.0 } else { 1.0 }).collect())
        .collect();
    let q_orth = kron(&off_diag, &identity(n));
    let alpha = inst.orthogonality_weight;
    q_main
        .iter()
        .zip(&q_orth)
        .map(|(mr, or)| mr.iter().zip(or).map(|(&m, &o)| -m + alpha * o).collect())
        .collect()
}

/// Symmetric fold of `Xᵀ(Q_main + α Q_orth)X`.
pub fn cancer_multi(inst: &PathwayInstance) -> Result<QuboModel> {
    if inst.pathways < 2 {
        return Err(Error::Instance(
            "multi-pathway model needs k >= 2; use the single-pathway model".into(),
        ));
    }
    let m = multi_pathway_matrix(inst);
    let size = m.len();
    let mut b = QuboBuilder::new(size);
    for (r, row) in m.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            if v != 0.0 {
                b.add(r, c, v);
            }
        }
    }
    b.build()
}

/// Splits the `k·n` bitstring into `k` gene lists in index order.
pub fn decode_pathways(inst: &PathwayInstance, a: &Assignment) -> Result<Vec<Vec<String>>> {
    let n = inst.gene_count();
    if a.len() != inst.variable_count() {
        return Err(Error::Dimension {
            expected: inst.variable_count(),
            actual: a.len(),
        });
    }
    Ok(a.bits()
        .chunks(n)
        .map(|block| {
            block
                .iter()
                .zip(&inst.labels)
                .filter(|(&b, _)| b == 1)
                .map(|(_, label)| label.clone())
                .collect()
        })
        .collect())
}
