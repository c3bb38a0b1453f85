//! Maximum cut of a graph file, exact and annealed.
//!
//! ```bash
//! cargo run -p qubo-forge --example max_cut -- crates/core/fixtures/six_node.graph
//! ```

use qubo_forge::anneal::{solve_sa, AnnealConfig};
use qubo_forge::exact::solve_exact;
use qubo_forge::problems::{decode_cut, max_cut, Graph};

fn main() -> qubo_forge::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => Graph::read(path)?,
        None => Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])?,
    };
    let model = max_cut(&g)?;

    let exact = solve_exact(&model, 1)?;
    let best = exact.lowest()?;
    let cut = decode_cut(&g, &best.assignment)?;
    println!(
        "exact: {} cut {} of {} edges, {:?} | {:?}",
        best.assignment,
        cut.cut_size,
        g.edges().len(),
        cut.set_a,
        cut.set_b
    );

    let sa = solve_sa(&model, &AnnealConfig::default().with_seed(7))?;
    let best = sa.lowest()?;
    println!(
        "sa:    {} cut {}",
        best.assignment,
        decode_cut(&g, &best.assignment)?.cut_size
    );
    Ok(())
}
