//! Minimum vertex cover and the effect of the penalty weight.
//!
//! ```bash
//! cargo run -p qubo-forge --example vertex_cover
//! ```

use qubo_forge::exact::solve_exact;
use qubo_forge::problems::{min_vertex_cover, verify_cover, Graph};

fn main() -> qubo_forge::Result<()> {
    // a star with one extra edge between two leaves
    let g = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)])?;
    for penalty in [0.5, 1.0, 2.0, 4.0] {
        let model = min_vertex_cover(&g, penalty)?;
        let set = solve_exact(&model, 1)?;
        let best = set.lowest()?;
        let check = verify_cover(&g, &best.assignment)?;
        println!(
            "P = {penalty}: {} size {} cover = {} uncovered {:?}",
            best.assignment,
            best.assignment.count_ones(),
            check.is_cover,
            check.uncovered
        );
    }
    Ok(())
}
