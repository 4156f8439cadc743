//! `A_k = A + s_k D -> A` with `A` irreducible: the roots converge and every
//! term stays inside the continuity certificate.
//!
//! Run with `cargo run --example converge_irreducible`.

use perron::harness::report::convergence_table;
use perron::harness::{run_trace, OutputFormat, Schedule, SequenceSpec};
use perron::perron::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use perron::{NonNegMatrix, RealMatrix};

fn main() -> perron::Result<()> {
    let base = NonNegMatrix::from_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])?;
    let direction = RealMatrix::from_rows(&[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 1.0, 0.0]])?;
    let spec = SequenceSpec::new(base, direction, Schedule::inv_k(), 10);

    let trace = run_trace(&spec, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    println!(
        "kind: {}, limit rho in [{:.12}, {:.12}]",
        trace.kind.name(),
        trace.limit.lo,
        trace.limit.hi
    );
    print!("{}", convergence_table(&trace).render(OutputFormat::Table));
    println!("all rows hold: {}", trace.all_hold());
    Ok(())
}
