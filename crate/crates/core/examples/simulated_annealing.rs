//! Simulated annealing against exhaustive search on random QUBOs.
//!
//! ```bash
//! cargo run --release -p qubo-forge --example simulated_annealing
//! ```

use qubo_forge::anneal::{auto_temperature, solve_sa, AnnealConfig};
use qubo_forge::exact::solve_exact;
use qubo_forge::QuboModel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_model(rng: &mut ChaCha8Rng, n: usize) -> qubo_forge::Result<QuboModel> {
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i..n {
            terms.push((i, j, rng.gen_range(-10..=10) as f64));
        }
    }
    QuboModel::from_terms(n, terms, 0.0)
}

fn main() -> qubo_forge::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut hits = 0;
    let trials = 20;
    for t in 0..trials {
        let n = rng.gen_range(8..=16);
        let model = random_model(&mut rng, n)?;
        let exact = solve_exact(&model, 1)?.lowest()?.energy;
        let sa = solve_sa(&model, &AnnealConfig::default().with_seed(t))?;
        let found = sa.lowest()?.energy;
        hits += (found == exact) as u32;
        println!(
            "n = {n:2}  T0 = {:6.1}  exact {exact:7}  sa {found:7}  distinct {}",
            auto_temperature(&model),
            sa.len()
        );
    }
    println!("{hits}/{trials} optimal");
    Ok(())
}
