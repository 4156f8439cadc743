//! Nilpotent limit: `rho(A) = 0`, and `rho(A_k)^p <= ||A_k^p||_1` with `p`
//! the nilpotency index shows the roots vanish.
//!
//! Run with `cargo run --example nilpotent_branch`.

use perron::harness::report::convergence_table;
use perron::harness::{run_trace, OutputFormat, Schedule, SequenceSpec};
use perron::perron::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use perron::structure::nilpotency_index;
use perron::{NonNegMatrix, RealMatrix};

fn main() -> perron::Result<()> {
    let base = NonNegMatrix::from_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])?;
    let direction = RealMatrix::from_rows(&[[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])?;
    println!("nilpotency index: {:?}", nilpotency_index(&base));

    let spec = SequenceSpec::new(base, direction, Schedule::inv_k(), 10);
    let trace = run_trace(&spec, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    println!("kind: {}", trace.kind.name());
    print!("{}", convergence_table(&trace).render(OutputFormat::Table));
    println!("all rows hold: {}", trace.all_hold());
    Ok(())
}
