//! `f_m(X) = ||X^m||_1^(1/m)` tends to `rho(X)`, but not uniformly: scaling
//! `X` by `a` scales the residual `f_m - rho` by `a`.
//!
//! Run with `cargo run --example gelfand_nonuniform`.

use perron::harness::report::{demo_table, gelfand_table};
use perron::harness::{gelfand_trace, nonuniformity_demo, OutputFormat};
use perron::perron::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use perron::NonNegMatrix;

fn main() -> perron::Result<()> {
    let x = NonNegMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]])?;

    let trace = gelfand_trace(&x, 10, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    println!("rho(X) in [{:.12}, {:.12}]", trace.root.lo, trace.root.hi);
    print!("{}", gelfand_table(&trace).render(OutputFormat::Table));

    for m in [1, 5, 10] {
        let demo = nonuniformity_demo(
            &x,
            m,
            &[2.0, 10.0, 100.0, 1e6],
            DEFAULT_TOL,
            DEFAULT_MAX_ITER,
        )?;
        println!("m = {m}: residual(X) = {:.6e}", demo.base.value);
        print!("{}", demo_table(&demo).render(OutputFormat::Table));
    }
    Ok(())
}
