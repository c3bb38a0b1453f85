//! Cancer pathway selection from a patient/gene mutation table.
//!
//! ```bash
//! cargo run -p qubo-forge --example cancer_pathways -- crates/core/fixtures/mutations_toy.tsv 2
//! ```

use qubo_forge::exact::solve_exact;
use qubo_forge::genomics::{
    adjacency_matrix, build_pathway_instance, degree_matrix, MutationTable,
};
use qubo_forge::problems::{cancer_multi, cancer_single, decode_pathways};

const TOY: &str = "patient\tgene\nP1\tFLT3\nP1\tNPM1\nP2\tTP53\nP3\tDNMT3A\nP3\tNPM1\nP4\tTP53\n";

fn main() -> qubo_forge::Result<()> {
    let mut args = std::env::args().skip(1);
    let table = match args.next() {
        Some(path) => MutationTable::read(path)?,
        None => MutationTable::parse(TOY, "toy")?,
    };
    let k: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    println!("genes {:?}", table.genes());
    println!("degrees {:?}", degree_matrix(&table));
    for row in adjacency_matrix(&table) {
        println!("  {row:?}");
    }

    let inst = build_pathway_instance(&table, 1.0, k)?;
    let (inst, model) = if k == 1 {
        let model = cancer_single(&inst)?;
        (inst, model)
    } else {
        // a heavy orthogonality weight keeps the pathways disjoint
        let inst = inst.with_orthogonality_weight(10.0)?;
        let model = cancer_multi(&inst)?;
        (inst, model)
    };
    let set = solve_exact(&model, 1)?;
    let best = set.lowest()?;
    println!("{} E = {}", best.assignment, best.energy);
    for (p, genes) in decode_pathways(&inst, &best.assignment)?.iter().enumerate() {
        println!("pathway {p}: {genes:?}");
    }
    Ok(())
}
