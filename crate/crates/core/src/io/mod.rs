//! Instance files (JSON and FASTA), planted-motif generation and the
//! benchmark harness.

mod bench;
mod instance_file;
mod planted;

pub use bench::{run_bench, Algo, BenchConfig, BenchReport, BenchRow, NamedInstance, CSV_HEADER};
pub use instance_file::{InputFormat, InstanceFile, PlantedMeta, SolutionReport};
pub use planted::{generate_planted, PlantedParams};
