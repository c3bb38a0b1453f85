//! Patient-mutation ingestion and the coverage (`D`) and exclusivity (`A`)
//! matrices.
//!
//! Input is a TSV with header `patient<TAB>gene` and one incidence per line.
//! Genes are indexed in order of first appearance in the file, which fixes
//! the variable ↔ gene mapping used when decoding solutions. A gene can only
//! enter the index through an incidence, so every indexed gene has a
//! non-zero degree.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use indexmap::{IndexMap, IndexSet};
use log::warn;

use crate::error::{Error, Result};
use crate::problems::PathwayInstance;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MutationTable {
    patients: IndexMap<String, BTreeSet<String>>,
    genes: IndexSet<String>,
}

impl MutationTable {
    /// Builds a table from `(patient, gene)` incidences; repeats collapse.
    pub fn from_incidences<P, G>(rows: impl IntoIterator<Item = (P, G)>) -> Result<Self>
    where
        P: Into<String>,
        G: Into<String>,
    {
        let mut table = MutationTable::default();
        for (k, (p, g)) in rows.into_iter().enumerate() {
            let (p, g) = (p.into(), g.into());
            if p.is_empty() || g.is_empty() {
                return Err(Error::Instance(format!("incidence {k} has an empty field")));
            }
            table.insert(p, g);
        }
        Ok(table)
    }

    fn insert(&mut self, patient: String, gene: String) {
        self.genes.insert(gene.clone());
        self.patients.entry(patient).or_default().insert(gene);
    }

    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.strip_suffix('\r').unwrap_or(l)));
        match lines.next() {
            Some((_, "patient\tgene")) => {}
            _ => {
                return Err(Error::parse(
                    source_name,
                    "line 1: expected header \"patient<TAB>gene\"",
                ))
            }
        }
        let mut table = MutationTable::default();
        for (line, l) in lines {
            if l.is_empty() {
                continue;
            }
            let fields: Vec<&str> = l.split('\t').collect();
            if fields.len() != 2 {
                return Err(Error::parse(
                    source_name,
                    format!(
                        "line {line}: expected 2 tab-separated fields, found {}",
                        fields.len()
                    ),
                ));
            }
            if fields.iter().any(|f| f.trim().is_empty()) {
                return Err(Error::parse(
                    source_name,
                    format!("line {line}: empty field"),
                ));
            }
            table.insert(fields[0].to_string(), fields[1].to_string());
        }
        Ok(table)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Gene labels in index order.
    pub fn genes(&self) -> Vec<String> {
        self.genes.iter().cloned().collect()
    }

    pub fn gene_index(&self, gene: &str) -> Option<usize> {
        self.genes.get_index_of(gene)
    }

    pub fn gene_count(&self) -> usize {
        self.genes.len()
    }

    pub fn patient_count(&self) -> usize {
        self.patients.len()
    }

    pub fn patient_genes(&self, patient: &str) -> Option<&BTreeSet<String>> {
        self.patients.get(patient)
    }

    pub fn patients(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.patients.iter().map(|(p, g)| (p.as_str(), g))
    }

    pub fn is_empty(&self) -> bool {
        self.patients.is_empty()
    }
}

/// `d_i` = number of patients carrying gene `i`.
pub fn degree_matrix(t: &MutationTable) -> Vec<u64> {
    let mut d = vec![0u64; t.gene_count()];
    for genes in t.patients.values() {
        for g in genes {
            d[t.genes.get_index_of(g).expect("indexed gene")] += 1;
        }
    }
    d
}

/// `a_ij` = number of patients carrying both gene `i` and gene `j`.
pub fn adjacency_matrix(t: &MutationTable) -> Vec<Vec<u64>> {
    let n = t.gene_count();
    let mut pairs: HashMap<(usize, usize), u64> = HashMap::new();
    for genes in t.patients.values() {
        let idx: Vec<usize> = genes
            .iter()
            .map(|g| t.genes.get_index_of(g).expect("indexed gene"))
            .collect();
        for (k, &i) in idx.iter().enumerate() {
            for &j in &idx[k + 1..] {
                *pairs.entry((i.min(j), i.max(j))).or_insert(0) += 1;
            }
        }
    }
    let mut a = vec![vec![0u64; n]; n];
    for ((i, j), c) in pairs {
        a[i][j] = c;
        a[j][i] = c;
    }
    a
}

/// Assembles `D`, `A` and labels into a [`PathwayInstance`].
///
/// `alpha < 1` is accepted with a warning.
pub fn build_pathway_instance(
    t: &MutationTable,
    alpha: f64,
    pathways: usize,
) -> Result<PathwayInstance> {
    if t.gene_count() == 0 {
        return Err(Error::Instance("mutation table has no genes".into()));
    }
    if alpha < 1.0 {
        warn!("alpha = {alpha} is below 1; coverage is weighted less than exclusivity");
    }
    PathwayInstance::new(
        t.genes(),
        degree_matrix(t),
        adjacency_matrix(t),
        alpha,
        pathways,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::cancer_single;

    const THREE: &str = "patient\tgene\nP1\tg1\nP2\tg1\nP2\tg2\nP3\tg3\n";

    #[test]
    fn parses_three_patient_table() {
        let t = MutationTable::parse(THREE, "m.tsv").unwrap();
        assert_eq!(t.patient_count(), 3);
        assert_eq!(t.genes(), vec!["g1", "g2", "g3"]);
        assert_eq!(t.patient_genes("P2").unwrap().len(), 2);
        let expected = MutationTable::from_incidences([
            ("P1", "g1"),
            ("P2", "g1"),
            ("P2", "g2"),
            ("P3", "g3"),
        ])
        .unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn duplicate_rows_collapse() {
        let dup = MutationTable::parse("patient\tgene\nP1\tg1\nP1\tg1\n", "m").unwrap();
        let once = MutationTable::parse("patient\tgene\nP1\tg1\n", "m").unwrap();
        assert_eq!(dup, once);
    }

    #[test]
    fn empty_data_section() {
        let t = MutationTable::parse("patient\tgene\n", "m").unwrap();
        assert!(t.is_empty());
        assert!(degree_matrix(&t).is_empty());
        assert!(adjacency_matrix(&t).is_empty());
        assert!(build_pathway_instance(&t, 1.0, 1).is_err());
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert!(MutationTable::parse("patient,gene\nP1,g1\n", "m").is_err());
        assert!(MutationTable::parse("", "m").is_err());
        let err = MutationTable::parse("patient\tgene\nP1\tg1\nP2\n", "m").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = MutationTable::parse("patient\tgene\nP1\t\n", "m").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(MutationTable::parse("patient\tgene\nP1\tg1\tx\n", "m").is_err());
    }

    #[test]
    fn degree_and_adjacency() {
        let t = MutationTable::parse(THREE, "m").unwrap();
        assert_eq!(degree_matrix(&t), vec![2, 1, 1]);
        assert_eq!(
            adjacency_matrix(&t),
            vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]
        );

        let one = MutationTable::from_incidences([("P", "x"), ("P", "y"), ("P", "z")]).unwrap();
        assert_eq!(degree_matrix(&one), vec![1, 1, 1]);
        assert_eq!(
            adjacency_matrix(&one),
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
        );

        let disjoint = MutationTable::from_incidences([("P1", "x"), ("P2", "y")]).unwrap();
        assert_eq!(adjacency_matrix(&disjoint), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn builds_instances() {
        let t = MutationTable::parse(THREE, "m").unwrap();
        let inst = build_pathway_instance(&t, 3.0, 1).unwrap();
        let q = cancer_single(&inst).unwrap();
        assert_eq!(
            q.evaluate(&crate::model::Assignment::from_bitstring("111").unwrap())
                .unwrap(),
            -10.0
        );
        let two = build_pathway_instance(&t, 3.0, 2).unwrap();
        assert_eq!(two.variable_count(), 6);
        // below-one alpha still builds
        assert!(build_pathway_instance(&t, 0.5, 1).is_ok());
    }
}
