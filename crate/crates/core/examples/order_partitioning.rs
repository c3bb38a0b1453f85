//! Splitting stock orders into two books with matched value and risk.
//!
//! ```bash
//! cargo run -p qubo-forge --example order_partitioning -- \
//!     crates/core/fixtures/stocks.csv crates/core/fixtures/risks.csv
//! ```

use qubo_forge::anneal::{solve_sa, AnnealConfig};
use qubo_forge::exact::solve_exact;
use qubo_forge::problems::{
    decode_order_partition, order_objective, order_partitioning, OrderPartitionInstance,
};

fn main() -> qubo_forge::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inst = if let [stocks, risks] = args.as_slice() {
        OrderPartitionInstance::from_csv_files(stocks, risks, 1.0, 1.0)?
    } else {
        OrderPartitionInstance::new(
            ["AAA", "BBB", "CCC", "DDD", "EEE", "FFF"]
                .map(String::from)
                .to_vec(),
            vec![120.0, 80.0, 45.0, 60.0, 95.0, 40.0],
            vec![
                vec![0.9, 1.2, 0.4, 1.0, 0.7, 1.1],
                vec![0.2, -0.1, 0.5, 0.3, 0.0, 0.1],
            ],
            1.0,
            50.0,
        )?
    };
    let model = order_partitioning(&inst)?;

    for (label, set) in [
        ("exact", solve_exact(&model, 1)?),
        ("sa", solve_sa(&model, &AnnealConfig::default())?),
    ] {
        let best = set.lowest()?;
        let split = decode_order_partition(&inst, &best.assignment)?;
        let names = |ix: &[usize]| {
            ix.iter()
                .map(|&i| inst.names()[i].as_str())
                .collect::<Vec<_>>()
        };
        println!(
            "{label}: {} objective {:.4} (direct {:.4}) A = {:?} B = {:?} money gap {} factor gaps {:?}",
            best.assignment,
            best.energy,
            order_objective(&inst, &best.assignment)?,
            names(&split.set_a),
            names(&split.set_b),
            split.money_gap,
            split.factor_gaps
        );
    }
    Ok(())
}
