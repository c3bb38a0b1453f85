//! Canonical QUBO and Ising models.
//!
//! A [`QuboModel`] stores the strict upper triangle of the coefficient matrix:
//! diagonal entries live in `linear` (using `x² = x`), off-diagonal entries in
//! `quadratic` keyed by `(i, j)` with `i < j`. Zero coefficients are never
//! stored. The energy of an assignment `x` is
//!
//! ```text
//! E(x) = Σ_{i<j} Q_ij x_i x_j + Σ_i Q_ii x_i + c
//! ```
//!
//! [`IsingModel`] is the spin twin, related by `σ_i = 2 x_i − 1`, with the
//! positive-sign energy `E(σ) = Σ J_ij σ_i σ_j + Σ h_i σ_i + offset`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A binary assignment, one bit per variable.
///
/// Ordering is lexicographic with variable 0 as the most significant
/// position, which is the tie-break rule used by every solver.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(Vec<u8>);

impl Assignment {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::Instance(format!(
                "bit {} has value {}, expected 0 or 1",
                pos, bits[pos]
            )));
        }
        Ok(Assignment(bits))
    }

    pub fn zeros(n: usize) -> Self {
        Assignment(vec![0; n])
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Assignment(bits.iter().map(|&b| b as u8).collect())
    }

    /// Decodes a basis index where variable 0 is the least-significant bit.
    pub fn from_index(index: u64, n: usize) -> Self {
        Assignment((0..n).map(|i| ((index >> i) & 1) as u8).collect())
    }

    /// Inverse of [`Assignment::from_index`].
    pub fn index(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i))
    }

    /// Parses a bitstring written with variable 0 leftmost.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::parse(
                    "bitstring",
                    format!("unexpected character {other:?}"),
                )),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Assignment)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i] == 1
    }

    /// Spin view, `σ_i = 2 x_i − 1`.
    pub fn spins(&self) -> Vec<i8> {
        self.0.iter().map(|&b| 2 * b as i8 - 1).collect()
    }

    pub fn complement(&self) -> Self {
        Assignment(self.0.iter().map(|&b| 1 - b).collect())
    }

    /// Indices of the variables set to 1, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i)
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn check_finite(value: f64, location: impl FnOnce() -> String) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite {
            value,
            location: location(),
        })
    }
}

/// Accumulates raw QUBO terms in any orientation and folds them into the
/// canonical form on [`QuboBuilder::build`].
#[derive(Debug, Clone)]
pub struct QuboBuilder {
    n: usize,
    terms: Vec<(usize, usize, f64)>,
    constant: f64,
}

impl QuboBuilder {
    pub fn new(n: usize) -> Self {
        QuboBuilder {
            n,
            terms: Vec::new(),
            constant: 0.0,
        }
    }

    /// Adds `value · x_i · x_j`. `i == j` is a linear term; `i > j` is folded
    /// onto `(j, i)`.
    pub fn add(&mut self, i: usize, j: usize, value: f64) -> &mut Self {
        self.terms.push((i, j, value));
        self
    }

    pub fn add_linear(&mut self, i: usize, value: f64) -> &mut Self {
        self.add(i, i, value)
    }

    pub fn add_constant(&mut self, value: f64) -> &mut Self {
        self.constant += value;
        self
    }

    pub fn build(&self) -> Result<QuboModel> {
        if self.n == 0 {
            return Err(Error::Instance(
                "a model needs at least one variable".into(),
            ));
        }
        check_finite(self.constant, || "constant".into())?;
        let mut linear = BTreeMap::new();
        let mut quadratic = BTreeMap::new();
        for (k, &(i, j, v)) in self.terms.iter().enumerate() {
            for idx in [i, j] {
                if idx >= self.n {
                    return Err(Error::Bounds {
                        index: idx,
                        n: self.n,
                    });
                }
            }
            check_finite(v, || format!("term {k} ({i}, {j})"))?;
            if i == j {
                *linear.entry(i).or_insert(0.0) += v;
            } else {
                *quadratic.entry((i.min(j), i.max(j))).or_insert(0.0) += v;
            }
        }
        linear.retain(|_, v| *v != 0.0);
        quadratic.retain(|_, v| *v != 0.0);
        let model = QuboModel {
            n: self.n,
            linear,
            quadratic,
            constant: self.constant,
        };
        for (&(i, j), &v) in &model.quadratic {
            check_finite(v, || format!("folded term ({i}, {j})"))?;
        }
        for (&i, &v) in &model.linear {
            check_finite(v, || format!("folded term ({i}, {i})"))?;
        }
        Ok(model)
    }
}

/// Quadratic model over binary variables in canonical upper-triangular form.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboModel {
    n: usize,
    linear: BTreeMap<usize, f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    constant: f64,
}

impl QuboModel {
    pub fn builder(n: usize) -> QuboBuilder {
        QuboBuilder::new(n)
    }

    /// Folds arbitrary `(i, j, value)` entries into canonical form.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (usize, usize, f64)>,
        constant: f64,
    ) -> Result<Self> {
        let mut b = QuboBuilder::new(n);
        for (i, j, v) in terms {
            b.add(i, j, v);
        }
        b.add_constant(constant);
        b.build()
    }

    /// A model with no terms, evaluating to `constant` everywhere.
    pub fn constant_only(n: usize, constant: f64) -> Result<Self> {
        Self::from_terms(n, [], constant)
    }

    pub fn num_variables(&self) -> usize {
        self.n
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn linear(&self) -> &BTreeMap<usize, f64> {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    pub fn linear_coeff(&self, i: usize) -> f64 {
        self.linear.get(&i).copied().unwrap_or(0.0)
    }

    /// Coefficient of `x_i x_j` in either orientation.
    pub fn quadratic_coeff(&self, i: usize, j: usize) -> f64 {
        self.quadratic
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0.0)
    }

    /// Canonical form again: folds nothing new, drops nothing new.
    pub fn normalize(&self) -> QuboModel {
        let mut out = self.clone();
        out.linear.retain(|_, v| *v != 0.0);
        out.quadratic.retain(|_, v| *v != 0.0);
        out
    }

    /// All terms as `(i, j, value)` with `i <= j`, sorted by `(i, j)`.
    pub fn terms(&self) -> Vec<(usize, usize, f64)> {
        let mut terms: Vec<_> = self
            .linear
            .iter()
            .map(|(&i, &v)| (i, i, v))
            .chain(self.quadratic.iter().map(|(&(i, j), &v)| (i, j, v)))
            .collect();
        terms.sort_by_key(|&(i, j, _)| (i, j));
        terms
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<f64> {
        if a.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: a.len(),
            });
        }
        Ok(self.evaluate_bits(a.bits()))
    }

    /// Unchecked evaluation; `bits.len()` must equal the variable count.
    pub(crate) fn evaluate_bits(&self, bits: &[u8]) -> f64 {
        let mut e = 0.0;
        for (&(i, j), &v) in &self.quadratic {
            if bits[i] == 1 && bits[j] == 1 {
                e += v;
            }
        }
        for (&i, &v) in &self.linear {
            if bits[i] == 1 {
                e += v;
            }
        }
        e + self.constant
    }

    /// Energy of the basis index `z` (variable 0 = least-significant bit).
    pub fn evaluate_index(&self, z: u64) -> f64 {
        let bit = |i: usize| (z >> i) & 1 == 1;
        let mut e = 0.0;
        for (&(i, j), &v) in &self.quadratic {
            if bit(i) && bit(j) {
                e += v;
            }
        }
        for (&i, &v) in &self.linear {
            if bit(i) {
                e += v;
            }
        }
        e + self.constant
    }

    /// Same model with every energy shifted by `k`.
    pub fn shifted(&self, k: f64) -> QuboModel {
        let mut out = self.clone();
        out.constant += k;
        out
    }

    /// Relabels variable `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<QuboModel> {
        if perm.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: perm.len(),
            });
        }
        Self::from_terms(
            self.n,
            self.terms()
                .into_iter()
                .map(|(i, j, v)| (perm[i], perm[j], v)),
            self.constant,
        )
    }

    /// Largest absolute coefficient, constant excluded.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.linear
            .values()
            .chain(self.quadratic.values())
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn to_ising(&self) -> IsingModel {
        to_ising(self)
    }

    pub fn neighborhood(&self) -> Neighborhood {
        Neighborhood::new(self)
    }
}

/// Per-variable linear term and neighbor list, for O(degree) flip deltas.
#[derive(Debug, Clone)]
pub struct Neighborhood {
    linear: Vec<f64>,
    neighbors: Vec<Vec<(usize, f64)>>,
}

impl Neighborhood {
    pub fn new(model: &QuboModel) -> Self {
        let n = model.num_variables();
        let mut linear = vec![0.0; n];
        for (&i, &v) in model.linear() {
            linear[i] = v;
        }
        let mut neighbors = vec![Vec::new(); n];
        for (&(i, j), &v) in model.quadratic() {
            neighbors[i].push((j, v));
            neighbors[j].push((i, v));
        }
        Neighborhood { linear, neighbors }
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    /// Largest possible `|ΔE|` of flipping variable `i`.
    pub fn max_flip_magnitude(&self, i: usize) -> f64 {
        self.linear[i].abs() + self.neighbors[i].iter().map(|(_, v)| v.abs()).sum::<f64>()
    }

    /// Energy change from flipping variable `i` of `a`.
    pub fn delta(&self, a: &Assignment, i: usize) -> f64 {
        self.flip_delta(a.bits(), i)
    }

    /// Energy change from flipping variable `i` in `bits`.
    #[inline]
    pub(crate) fn flip_delta(&self, bits: &[u8], i: usize) -> f64 {
        let mut field = self.linear[i];
        for &(j, v) in &self.neighbors[i] {
            if bits[j] == 1 {
                field += v;
            }
        }
        if bits[i] == 1 {
            -field
        } else {
            field
        }
    }
}

/// Ising model with energy `Σ J_ij σ_i σ_j + Σ h_i σ_i + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    n: usize,
    fields: BTreeMap<usize, f64>,
    couplings: BTreeMap<(usize, usize), f64>,
    offset: f64,
}

impl IsingModel {
    /// Builds a model from fields `h` and couplings `J` in any orientation;
    /// duplicate couplings are summed and zeros dropped.
    pub fn new(
        n: usize,
        fields: impl IntoIterator<Item = (usize, f64)>,
        couplings: impl IntoIterator<Item = (usize, usize, f64)>,
        offset: f64,
    ) -> Result<Self> {
        check_finite(offset, || "offset".into())?;
        let mut h = BTreeMap::new();
        for (i, v) in fields {
            if i >= n {
                return Err(Error::Bounds { index: i, n });
            }
            check_finite(v, || format!("field {i}"))?;
            *h.entry(i).or_insert(0.0) += v;
        }
        let mut j_map = BTreeMap::new();
        for (i, j, v) in couplings {
            for idx in [i, j] {
                if idx >= n {
                    return Err(Error::Bounds { index: idx, n });
                }
            }
            if i == j {
                return Err(Error::Instance(format!("self-coupling on spin {i}")));
            }
            check_finite(v, || format!("coupling ({i}, {j})"))?;
            *j_map.entry((i.min(j), i.max(j))).or_insert(0.0) += v;
        }
        h.retain(|_, v: &mut f64| *v != 0.0);
        j_map.retain(|_, v: &mut f64| *v != 0.0);
        Ok(IsingModel {
            n,
            fields: h,
            couplings: j_map,
            offset,
        })
    }

    /// Imports a model written as `H = −Σ J σσ − Σ h σ`, negating `h` and `J`
    /// into the internal positive-sign convention.
    pub fn from_negated_convention(
        n: usize,
        fields: impl IntoIterator<Item = (usize, f64)>,
        couplings: impl IntoIterator<Item = (usize, usize, f64)>,
        offset: f64,
    ) -> Result<Self> {
        Self::new(
            n,
            fields.into_iter().map(|(i, v)| (i, -v)),
            couplings.into_iter().map(|(i, j, v)| (i, j, -v)),
            offset,
        )
    }

    pub fn num_spins(&self) -> usize {
        self.n
    }

    pub fn fields(&self) -> &BTreeMap<usize, f64> {
        &self.fields
    }

    pub fn couplings(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.couplings
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn field(&self, i: usize) -> f64 {
        self.fields.get(&i).copied().unwrap_or(0.0)
    }

    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        self.couplings
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn energy(&self, spins: &[i8]) -> Result<f64> {
        if spins.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: spins.len(),
            });
        }
        let mut e = 0.0;
        for (&(i, j), &v) in &self.couplings {
            e += v * f64::from(spins[i] * spins[j]);
        }
        for (&i, &v) in &self.fields {
            e += v * f64::from(spins[i]);
        }
        Ok(e + self.offset)
    }

    /// Energy of basis index `z` with `σ_i = +1` when bit `i` of `z` is set.
    pub fn energy_index(&self, z: u64) -> f64 {
        let spin = |i: usize| if (z >> i) & 1 == 1 { 1.0 } else { -1.0 };
        let mut e = 0.0;
        for (&(i, j), &v) in &self.couplings {
            e += v * spin(i) * spin(j);
        }
        for (&i, &v) in &self.fields {
            e += v * spin(i);
        }
        e + self.offset
    }

    pub fn to_qubo(&self) -> Result<QuboModel> {
        from_ising(self)
    }
}

/// Substitutes `x_i = (σ_i + 1) / 2` term by term.
pub fn to_ising(q: &QuboModel) -> IsingModel {
    let mut h: BTreeMap<usize, f64> = BTreeMap::new();
    let mut couplings = BTreeMap::new();
    let mut offset = q.constant();
    for (&(i, j), &v) in q.quadratic() {
        let quarter = v / 4.0;
        couplings.insert((i, j), quarter);
        *h.entry(i).or_insert(0.0) += quarter;
        *h.entry(j).or_insert(0.0) += quarter;
        offset += quarter;
    }
    for (&i, &v) in q.linear() {
        let half = v / 2.0;
        *h.entry(i).or_insert(0.0) += half;
        offset += half;
    }
    h.retain(|_, v| *v != 0.0);
    couplings.retain(|_, v: &mut f64| *v != 0.0);
    IsingModel {
        n: q.num_variables(),
        fields: h,
        couplings,
        offset,
    }
}

/// Substitutes `σ_i = 2 x_i − 1` term by term; inverse of [`to_ising`].
pub fn from_ising(m: &IsingModel) -> Result<QuboModel> {
    let mut b = QuboBuilder::new(m.num_spins());
    let mut constant = m.offset();
    for (&(i, j), &v) in m.couplings() {
        b.add(i, j, 4.0 * v);
        b.add_linear(i, -2.0 * v);
        b.add_linear(j, -2.0 * v);
        constant += v;
    }
    for (&i, &v) in m.fields() {
        b.add_linear(i, 2.0 * v);
        constant -= v;
    }
    b.add_constant(constant);
    b.build()
}
