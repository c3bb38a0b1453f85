use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Assignment, QuboBuilder, QuboModel};

/// Simple undirected graph on nodes `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges are stored as `(min, max)` in input order. Self-loops, duplicate
    /// edges and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Instance(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Instance(format!("self-loop on node {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::Instance(format!("duplicate edge ({u}, {v})")));
            }
            out.push(e);
        }
        Ok(Graph { n, edges: out })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path graph is simple")
    }

    /// Parses the text format: `#` comment lines, a header `n m`, then `m`
    /// lines `u v`.
    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        let err =
            |line: usize, msg: String| Error::parse(source_name, format!("line {line}: {msg}"));
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(source_name, "missing \"n m\" header"))?;
        let nums = parse_pair(header).map_err(|m| err(hline, m))?;
        let (n, m) = nums;

        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            if edges.len() == m {
                return Err(err(line, format!("more than the {m} declared edges")));
            }
            edges.push(parse_pair(l).map_err(|msg| err(line, msg))?);
        }
        if edges.len() != m {
            return Err(Error::parse(
                source_name,
                format!("declared {m} edges, found {}", edges.len()),
            ));
        }
        Graph::new(n, edges).map_err(|e| Error::parse(source_name, e.to_string()))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| u == i || v == i)
            .count()
    }

    fn check_len(&self, a: &Assignment) -> Result<()> {
        if a.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: a.len(),
            });
        }
        Ok(())
    }
}

fn parse_pair(line: &str) -> std::result::Result<(usize, usize), String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(format!("expected two integers, got {line:?}"));
    }
    let p = |s: &str| s.parse::<usize>().map_err(|e| format!("{s:?}: {e}"));
    Ok((p(fields[0])?, p(fields[1])?))
}

/// `Σ_(i,j)∈E 2 x_i x_j − x_i − x_j`, which equals minus the cut size.
pub fn max_cut(g: &Graph) -> Result<QuboModel> {
    let mut b = QuboBuilder::new(g.n);
    for &(u, v) in &g.edges {
        b.add(u, v, 2.0).add_linear(u, -1.0).add_linear(v, -1.0);
    }
    b.build()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    /// Nodes with bit 1.
    pub set_a: Vec<usize>,
    pub set_b: Vec<usize>,
    pub cut_size: usize,
}

pub fn decode_cut(g: &Graph, a: &Assignment) -> Result<CutResult> {
    g.check_len(a)?;
    let (set_a, set_b): (Vec<usize>, Vec<usize>) = (0..g.n).partition(|&i| a.get(i));
    let cut_size = g
        .edges
        .iter()
        .filter(|&&(u, v)| a.get(u) != a.get(v))
        .count();
    Ok(CutResult {
        set_a,
        set_b,
        cut_size,
    })
}

/// `Σ_i x_i + P Σ_(i,j)∈E (1 − x_i − x_j + x_i x_j)`.
pub fn min_vertex_cover(g: &Graph, penalty: f64) -> Result<QuboModel> {
    if !(penalty > 0.0 && penalty.is_finite()) {
        return Err(Error::Config(format!(
            "vertex cover penalty must be positive, got {penalty}"
        )));
    }
    let mut b = QuboBuilder::new(g.n);
    for i in 0..g.n {
        b.add_linear(i, 1.0);
    }
    for &(u, v) in &g.edges {
        b.add(u, v, penalty)
            .add_linear(u, -penalty)
            .add_linear(v, -penalty)
            .add_constant(penalty);
    }
    b.build()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCheck {
    pub is_cover: bool,
    pub uncovered: Vec<(usize, usize)>,
}

pub fn verify_cover(g: &Graph, a: &Assignment) -> Result<CoverCheck> {
    g.check_len(a)?;
    let uncovered: Vec<_> = g
        .edges
        .iter()
        .copied()
        .filter(|&(u, v)| !a.get(u) && !a.get(v))
        .collect();
    Ok(CoverCheck {
        is_cover: uncovered.is_empty(),
        uncovered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(n: usize) -> impl Iterator<Item = Assignment> {
        (0..1u64 << n).map(move |z| Assignment::from_index(z, n))
    }

    fn bits(s: &str) -> Assignment {
        Assignment::from_bitstring(s).unwrap()
    }

    #[test]
    fn rejects_malformed_graphs() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn parses_text_format() {
        let g = Graph::parse("# triangle\n3 3\n0 1\n0 2\n\n# closing edge\n2 1\n", "t").unwrap();
        assert_eq!(g, Graph::complete(3));
        let err = Graph::parse("3 2\n0 1\n", "t").unwrap_err();
        assert!(err.to_string().contains("declared 2 edges"));
        let err = Graph::parse("3 1\n0 x\n", "t").unwrap_err();
        assert!(err.to_string().contains("line 2"));
        assert!(Graph::parse("3 1\n0 1 2\n", "t").is_err());
        assert!(Graph::parse("2 1\n1 1\n", "t").is_err());
    }

    #[test]
    fn max_cut_coefficients() {
        let q = max_cut(&Graph::new(2, [(0, 1)]).unwrap()).unwrap();
        assert_eq!(q.quadratic_coeff(0, 1), 2.0);
        assert_eq!(q.linear_coeff(0), -1.0);
        assert_eq!(q.linear_coeff(1), -1.0);
        assert_eq!(q.constant(), 0.0);
    }

    #[test]
    fn triangle_cut() {
        let g = Graph::complete(3);
        let q = max_cut(&g).unwrap();
        let best = all(3)
            .map(|a| q.evaluate(&a).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert_eq!(best, -2.0);
        let cut = decode_cut(&g, &bits("100")).unwrap();
        assert_eq!(
            cut,
            CutResult {
                set_a: vec![0],
                set_b: vec![1, 2],
                cut_size: 2
            }
        );
        assert_eq!(decode_cut(&g, &bits("000")).unwrap().cut_size, 0);
        assert_eq!(decode_cut(&g, &bits("011")).unwrap().cut_size, 2);
    }

    #[test]
    fn single_edge_minima() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let q = max_cut(&g).unwrap();
        let energies: Vec<f64> = all(2).map(|a| q.evaluate(&a).unwrap()).collect();
        assert_eq!(energies, vec![0.0, -1.0, -1.0, 0.0]);
    }

    #[test]
    fn vertex_cover_coefficients_and_minima() {
        let g = Graph::complete(3);
        let q = min_vertex_cover(&g, 2.0).unwrap();
        assert_eq!(q.linear_coeff(0), 1.0 - 2.0 * 2.0);
        assert_eq!(q.quadratic_coeff(1, 2), 2.0);
        assert_eq!(q.constant(), 6.0);
        let best = all(3)
            .map(|a| q.evaluate(&a).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert_eq!(best, 2.0);
        for a in all(3).filter(|a| a.count_ones() == 2) {
            assert_eq!(q.evaluate(&a).unwrap(), 2.0);
        }

        let path = Graph::path(3);
        let q = min_vertex_cover(&path, 2.0).unwrap();
        let argmin: Vec<_> = all(3).filter(|a| q.evaluate(a).unwrap() == 1.0).collect();
        assert_eq!(argmin, vec![bits("010")]);

        let empty = Graph::new(4, []).unwrap();
        let q = min_vertex_cover(&empty, 5.0).unwrap();
        assert_eq!(q.evaluate(&Assignment::zeros(4)).unwrap(), 0.0);
    }

    #[test]
    fn vertex_cover_rejects_non_positive_penalty() {
        let g = Graph::complete(3);
        assert!(matches!(min_vertex_cover(&g, 0.0), Err(Error::Config(_))));
        assert!(matches!(min_vertex_cover(&g, -1.0), Err(Error::Config(_))));
        assert!(matches!(
            min_vertex_cover(&g, f64::NAN),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn verify_cover_examples() {
        let g = Graph::complete(3);
        assert!(verify_cover(&g, &bits("110")).unwrap().is_cover);
        let check = verify_cover(&g, &bits("100")).unwrap();
        assert!(!check.is_cover);
        assert_eq!(check.uncovered, vec![(1, 2)]);
        let edgeless = Graph::new(3, []).unwrap();
        assert!(all(3).all(|a| verify_cover(&edgeless, &a).unwrap().is_cover));
    }
}
