//! QUBO to Ising and back, with the JSON file formats.
//!
//! ```bash
//! cargo run -p qubo-forge --example ising_roundtrip
//! ```

use qubo_forge::io::{fingerprint, ising_to_json_string, qubo_from_json_str, qubo_to_json_string};
use qubo_forge::problems::{max_cut, Graph};
use qubo_forge::{from_ising, to_ising, Assignment};

fn main() -> qubo_forge::Result<()> {
    let model = max_cut(&Graph::complete(3))?;
    let ising = to_ising(&model);
    print!("qubo  {}", qubo_to_json_string(&model));
    print!("ising {}", ising_to_json_string(&ising));

    for z in 0..8 {
        let a = Assignment::from_index(z, 3);
        println!(
            "{a}  qubo {:5}  ising {:5}",
            model.evaluate(&a)?,
            ising.energy(&a.spins())?
        );
    }

    let back = from_ising(&ising)?;
    let reread = qubo_from_json_str(&qubo_to_json_string(&back), "roundtrip")?;
    println!(
        "fingerprints match: {}",
        fingerprint(&model) == fingerprint(&reread)
    );
    Ok(())
}
