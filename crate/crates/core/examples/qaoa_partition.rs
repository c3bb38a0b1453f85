//! Vanilla QAOA on the number-partitioning instance {1, 5, 5, 11}.
//!
//! ```bash
//! cargo run -p qubo-forge --example qaoa_partition
//! ```

use qubo_forge::problems::{decode_partition, number_partitioning, PartitionInstance};
use qubo_forge::qaoa::{optimize, run_circuit, QaoaConfig};

fn main() -> qubo_forge::Result<()> {
    let inst = PartitionInstance::new(vec![1, 5, 5, 11])?;
    let model = number_partitioning(&inst)?;
    let cfg = QaoaConfig {
        layers: 2,
        ..Default::default()
    };
    let result = optimize(&model, &cfg)?;

    for (r, outcome) in result.restarts.iter().enumerate() {
        println!(
            "restart {r}: <E> = {:.4}, gammas = {:?}, betas = {:?}, best sampled {} (E = {})",
            outcome.expectation,
            outcome.gammas,
            outcome.betas,
            outcome.best.assignment,
            outcome.best.energy
        );
    }

    let state = run_circuit(&model, &result.gammas, &result.betas)?;
    let probs = state.probabilities();
    // basis index stores variable 0 in the lowest bit: 0001 -> 8, 1110 -> 7
    println!("P(optimal) = {:.4} (uniform 0.1250)", probs[7] + probs[8]);

    let mut counts: Vec<_> = result.counts.iter().collect();
    counts.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
    for (bits, c) in counts.iter().take(5) {
        println!("  {bits}: {c}");
    }

    let split = decode_partition(&inst, &result.best.assignment)?;
    println!(
        "set A = {:?}, set B = {:?}, difference = {}",
        split.set_a, split.set_b, split.difference
    );
    println!("{} objective evaluations", result.trace.len());
    Ok(())
}
