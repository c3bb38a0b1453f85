//! Number partitioning as a QUBO, solved exhaustively.
//!
//! ```bash
//! cargo run -p qubo-forge --example number_partitioning -- 1 5 5 11
//! ```

use qubo_forge::exact::solve_exact;
use qubo_forge::io::qubo_to_json_string;
use qubo_forge::problems::{decode_partition, number_partitioning, PartitionInstance};

fn main() -> qubo_forge::Result<()> {
    let mut values: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    if values.is_empty() {
        values = vec![1, 5, 5, 11];
    }
    let inst = PartitionInstance::new(values)?;
    let model = number_partitioning(&inst)?;
    print!("{}", qubo_to_json_string(&model));

    let set = solve_exact(&model, 4)?;
    for s in set.samples() {
        let split = decode_partition(&inst, &s.assignment)?;
        println!(
            "{}  E = {:>6}  {:?} | {:?}",
            s.assignment, s.energy, split.set_a, split.set_b
        );
    }
    Ok(())
}
