//! Build QUBO models for classic and applied combinatorial problems and solve
//! them by exhaustive enumeration, simulated annealing or a QAOA statevector
//! simulation.
//!
//! ```
//! use qubo_forge::problems::{number_partitioning, decode_partition, PartitionInstance};
//! use qubo_forge::exact::solve_exact;
//!
//! let inst = PartitionInstance::new(vec![1, 5, 5, 11]).unwrap();
//! let model = number_partitioning(&inst).unwrap();
//! let best = solve_exact(&model, 1).unwrap().lowest().unwrap().clone();
//! assert_eq!(best.energy, 0.0);
//! assert_eq!(decode_partition(&inst, &best.assignment).unwrap().difference, 0);
//! ```

pub mod anneal;
pub mod cli;
pub mod error;
pub mod exact;
pub mod genomics;
pub mod io;
pub mod model;
pub mod problems;
pub mod qaoa;
pub mod sample;

pub use error::{Error, Result};
pub use model::{
    from_ising, to_ising, Assignment, IsingModel, Neighborhood, QuboBuilder, QuboModel,
};
pub use sample::{Sample, SampleSet, SolverMetadata};
