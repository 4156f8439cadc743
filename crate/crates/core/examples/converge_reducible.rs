//! Reducible limit: the spectral block's root `b_k` is bracketed by the
//! full root `r_k`, and both converge to `rho(A)`.
//!
//! Run with `cargo run --example converge_reducible`.

use perron::harness::report::convergence_table;
use perron::harness::{run_trace, OutputFormat, SequenceSpec};
use perron::perron::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use perron::{NonNegMatrix, RealMatrix};

fn main() -> perron::Result<()> {
    let base = NonNegMatrix::from_rows(&[[2.0, 1.0, 0.0], [0.0, 1.0, 1.0], [0.0, 1.0, 1.0]])?;
    let direction = RealMatrix::from_rows(&[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])?;
    let spec = SequenceSpec::new(base, direction, "geom:0.5".parse()?, 12);

    let trace = run_trace(&spec, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    println!(
        "kind: {}, spectral block {:?}, limit rho in [{:.12}, {:.12}]",
        trace.kind.name(),
        trace.spectral_block,
        trace.limit.lo,
        trace.limit.hi
    );
    print!("{}", convergence_table(&trace).render(OutputFormat::Table));
    println!("all rows hold: {}", trace.all_hold());
    Ok(())
}
