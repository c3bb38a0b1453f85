//! Order partitioning: split stocks into two books with equal money and
//! balanced exposure to every risk factor.
//!
//! ```text
//! Q(x) = a (T − 2 Σ_j q_j x_j)² + b Σ_i (Σ_j p_ij (2 x_j − 1))²
//! ```

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Assignment, QuboBuilder, QuboModel};

#[derive(Debug, Clone, PartialEq)]
pub struct OrderPartitionInstance {
    names: Vec<String>,
    values: Vec<f64>,
    risks: Vec<Vec<f64>>,
    total: f64,
    money_weight: f64,
    risk_weight: f64,
}

impl OrderPartitionInstance {
    /// `risks` has one row per factor and one column per stock.
    pub fn new(
        names: Vec<String>,
        values: Vec<f64>,
        risks: Vec<Vec<f64>>,
        money_weight: f64,
        risk_weight: f64,
    ) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::Instance(
                "order partitioning needs at least one stock".into(),
            ));
        }
        if names.len() != n {
            return Err(Error::Instance(format!(
                "{} names for {n} stocks",
                names.len()
            )));
        }
        if let Some(j) = values.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Instance(format!(
                "stock {} has non-positive value {}",
                names[j], values[j]
            )));
        }
        if risks.is_empty() {
            return Err(Error::Instance(
                "at least one risk factor is required".into(),
            ));
        }
        for (i, row) in risks.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Instance(format!(
                    "risk factor {i} has {} entries for {n} stocks",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Instance(format!(
                    "risk factor {i} has a non-finite entry"
                )));
            }
        }
        for (label, w) in [("a", money_weight), ("b", risk_weight)] {
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::Config(format!(
                    "weight {label} must be finite and non-negative, got {w}"
                )));
            }
        }
        if money_weight == 0.0 && risk_weight == 0.0 {
            return Err(Error::Config("weights a and b cannot both be zero".into()));
        }
        let total = values.iter().sum();
        Ok(OrderPartitionInstance {
            names,
            values,
            risks,
            total,
            money_weight,
            risk_weight,
        })
    }

    /// Reads a `stock,value` CSV and a risk CSV whose header lists the same
    /// stocks in the same order, one row per factor.
    pub fn from_csv_files(
        stocks: impl AsRef<Path>,
        risks: impl AsRef<Path>,
        money_weight: f64,
        risk_weight: f64,
    ) -> Result<Self> {
        let (stocks, risks) = (stocks.as_ref(), risks.as_ref());
        let stock_text = fs::read_to_string(stocks).map_err(|e| Error::io(stocks, e))?;
        let risk_text = fs::read_to_string(risks).map_err(|e| Error::io(risks, e))?;
        let (names, values) = parse_stocks(&stock_text, &stocks.display().to_string())?;
        let matrix = parse_risks(&risk_text, &risks.display().to_string(), &names)?;
        Self::new(names, values, matrix, money_weight, risk_weight)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn risks(&self) -> &[Vec<f64>] {
        &self.risks
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn money_weight(&self) -> f64 {
        self.money_weight
    }

    pub fn risk_weight(&self) -> f64 {
        self.risk_weight
    }

    pub fn stock_count(&self) -> usize {
        self.values.len()
    }
}

fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

fn parse_float(field: &str, source_name: &str, line: u64, column: &str) -> Result<f64> {
    let v: f64 = field.parse().map_err(|_| {
        Error::parse(
            source_name,
            format!("line {line}: {column}: invalid number {field:?}"),
        )
    })?;
    if !v.is_finite() {
        return Err(Error::parse(
            source_name,
            format!("line {line}: {column}: non-finite value"),
        ));
    }
    Ok(v)
}

fn parse_stocks(text: &str, source_name: &str) -> Result<(Vec<String>, Vec<f64>)> {
    let mut rdr = csv_reader(text);
    let headers = rdr
        .headers()
        .map_err(|e| Error::parse(source_name, e.to_string()))?;
    if headers.iter().collect::<Vec<_>>() != ["stock", "value"] {
        return Err(Error::parse(
            source_name,
            "line 1: expected header \"stock,value\"",
        ));
    }
    let mut names = Vec::new();
    let mut values = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::parse(source_name, e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.get(0).is_none_or(str::is_empty) {
            return Err(Error::parse(
                source_name,
                format!("line {line}: empty stock name"),
            ));
        }
        names.push(rec[0].to_string());
        values.push(parse_float(&rec[1], source_name, line, "value")?);
    }
    Ok((names, values))
}

fn parse_risks(text: &str, source_name: &str, names: &[String]) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv_reader(text);
    let headers = rdr
        .headers()
        .map_err(|e| Error::parse(source_name, e.to_string()))?
        .clone();
    if headers.iter().ne(names.iter().map(String::as_str)) {
        return Err(Error::parse(
            source_name,
            format!(
                "line 1: header must list the {} stocks in order: {}",
                names.len(),
                names.join(",")
            ),
        ));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::parse(source_name, e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        let row = rec
            .iter()
            .zip(headers.iter())
            .map(|(f, col)| parse_float(f, source_name, line, col))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(source_name, "no risk factor rows"));
    }
    Ok(rows)
}

/// Expands the objective into canonical QUBO form.
pub fn order_partitioning(inst: &OrderPartitionInstance) -> Result<QuboModel> {
    let n = inst.stock_count();
    let (a, b, t) = (inst.money_weight, inst.risk_weight, inst.total);
    let q = &inst.values;
    let mut builder = QuboBuilder::new(n);

    // a (T − 2 Σ q_j x_j)² = a T² + Σ_j 4a q_j (q_j − T) x_j + Σ_{j<k} 8a q_j q_k x_j x_k
    builder.add_constant(a * t * t);
    for j in 0..n {
        builder.add_linear(j, 4.0 * a * q[j] * (q[j] - t));
        for k in j + 1..n {
            builder.add(j, k, 8.0 * a * q[j] * q[k]);
        }
    }

    // (Σ_j p_j (2 x_j − 1))² = s² + Σ_j 4 p_j (p_j − s) x_j + Σ_{j<k} 8 p_j p_k x_j x_k, s = Σ p_j
    for row in &inst.risks {
        let s: f64 = row.iter().sum();
        builder.add_constant(b * s * s);
        for j in 0..n {
            builder.add_linear(j, 4.0 * b * row[j] * (row[j] - s));
            for k in j + 1..n {
                builder.add(j, k, 8.0 * b * row[j] * row[k]);
            }
        }
    }
    builder.build()
}

/// Unexpanded objective value.
pub fn order_objective(inst: &OrderPartitionInstance, a: &Assignment) -> Result<f64> {
    let split = decode_order_partition(inst, a)?;
    let factor: f64 = split.factor_gaps.iter().map(|g| g * g).sum();
    Ok(inst.money_weight * split.money_gap * split.money_gap + inst.risk_weight * factor)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderSplit {
    /// Stock indices with bit 1.
    pub set_a: Vec<usize>,
    pub set_b: Vec<usize>,
    pub money_gap: f64,
    pub factor_gaps: Vec<f64>,
}

pub fn decode_order_partition(inst: &OrderPartitionInstance, a: &Assignment) -> Result<OrderSplit> {
    let n = inst.stock_count();
    if a.len() != n {
        return Err(Error::Dimension {
            expected: n,
            actual: a.len(),
        });
    }
    let (set_a, set_b): (Vec<usize>, Vec<usize>) = (0..n).partition(|&j| a.get(j));
    let signed = |row: &[f64]| -> f64 {
        row.iter()
            .enumerate()
            .map(|(j, &v)| if a.get(j) { v } else { -v })
            .sum::<f64>()
            .abs()
    };
    Ok(OrderSplit {
        money_gap: signed(&inst.values),
        factor_gaps: inst.risks.iter().map(|row| signed(row)).collect(),
        set_a,
        set_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(b: f64) -> OrderPartitionInstance {
        OrderPartitionInstance::new(
            ["s0", "s1", "s2", "s3"].map(String::from).to_vec(),
            vec![3.0, 1.0, 2.0, 2.0],
            vec![vec![1.0; 4]],
            1.0,
            b,
        )
        .unwrap()
    }

    #[test]
    fn toy_optimum_is_zero() {
        let inst = toy(1.0);
        assert_eq!(inst.total(), 8.0);
        let q = order_partitioning(&inst).unwrap();
        let best = Assignment::from_bitstring("1100").unwrap();
        assert_eq!(q.evaluate(&best).unwrap(), 0.0);
        let split = decode_order_partition(&inst, &best).unwrap();
        assert_eq!(split.set_a, vec![0, 1]);
        assert_eq!(split.money_gap, 0.0);
        assert_eq!(split.factor_gaps, vec![0.0]);
        let min = (0..16)
            .map(|z| q.evaluate_index(z))
            .fold(f64::INFINITY, f64::min);
        assert_eq!(min, 0.0);
    }

    #[test]
    fn all_ones_gap_is_total() {
        let inst = toy(1.0);
        let split =
            decode_order_partition(&inst, &Assignment::from_bitstring("1111").unwrap()).unwrap();
        assert_eq!(split.money_gap, 8.0);
        assert!(split.set_b.is_empty());
    }

    #[test]
    fn single_stock_gap() {
        let inst =
            OrderPartitionInstance::new(vec!["x".into()], vec![2.5], vec![vec![0.5]], 1.0, 1.0)
                .unwrap();
        let split =
            decode_order_partition(&inst, &Assignment::from_bitstring("1").unwrap()).unwrap();
        assert_eq!(split.money_gap, 2.5);
    }

    #[test]
    fn zero_risk_weight_is_number_partitioning() {
        use crate::problems::{number_partitioning, PartitionInstance};
        let op = order_partitioning(&toy(0.0)).unwrap();
        let np = number_partitioning(&PartitionInstance::new(vec![3, 1, 2, 2]).unwrap()).unwrap();
        assert_eq!(op, np);
    }

    #[test]
    fn rejects_bad_instances() {
        let names = || vec!["a".to_string(), "b".to_string()];
        assert!(OrderPartitionInstance::new(
            names(),
            vec![1.0, 0.0],
            vec![vec![1.0, 1.0]],
            1.0,
            1.0
        )
        .is_err());
        assert!(
            OrderPartitionInstance::new(names(), vec![1.0, 2.0], vec![vec![1.0]], 1.0, 1.0)
                .is_err()
        );
        assert!(OrderPartitionInstance::new(names(), vec![1.0, 2.0], vec![], 1.0, 1.0).is_err());
        assert!(OrderPartitionInstance::new(
            names(),
            vec![1.0, 2.0],
            vec![vec![1.0, 1.0]],
            -1.0,
            1.0
        )
        .is_err());
        assert!(OrderPartitionInstance::new(
            names(),
            vec![1.0, 2.0],
            vec![vec![1.0, 1.0]],
            0.0,
            0.0
        )
        .is_err());
    }

    #[test]
    fn csv_parsing() {
        let (names, values) = parse_stocks("stock,value\nAAPL,3\nMSFT, 1.5\n", "s.csv").unwrap();
        assert_eq!(names, vec!["AAPL", "MSFT"]);
        assert_eq!(values, vec![3.0, 1.5]);
        assert!(parse_stocks("name,value\nA,1\n", "s.csv").is_err());
        assert!(parse_stocks("stock,value\nA,abc\n", "s.csv")
            .unwrap_err()
            .to_string()
            .contains("line 2"));

        let rows = parse_risks("AAPL,MSFT\n0.1,0.2\n1,-1\n", "r.csv", &names).unwrap();
        assert_eq!(rows, vec![vec![0.1, 0.2], vec![1.0, -1.0]]);
        assert!(parse_risks("MSFT,AAPL\n1,1\n", "r.csv", &names).is_err());
        assert!(parse_risks("AAPL,MSFT\n1\n", "r.csv", &names).is_err());
        assert!(parse_risks("AAPL,MSFT\n", "r.csv", &names).is_err());
    }
}
