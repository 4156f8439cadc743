//! How tight is `||E||_F / q*`? Walk along `A + s D` and compare the bound
//! with the observed root shift.
//!
//! Run with `cargo run --example sharpness_probe`.

use perron::harness::report::probe_table;
use perron::harness::OutputFormat;
use perron::perron::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use perron::perturb::sharpness_probe;
use perron::{NonNegMatrix, RealMatrix};

fn main() -> perron::Result<()> {
    let a = NonNegMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]])?;
    // Uniform growth: the bound is attained up to the ratio ||q||_2 / q*.
    let uniform = RealMatrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]])?;
    // A single entry far from the dominant direction.
    let corner = RealMatrix::from_rows(&[[1.0, 0.0], [0.0, 0.0]])?;
    let scales = [1e-3, 1e-2, 1e-1, 1.0];

    for (name, dir) in [("uniform", &uniform), ("corner", &corner)] {
        println!("direction: {name}");
        let rows = sharpness_probe(&a, dir, &scales, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
        print!("{}", probe_table(&rows).render(OutputFormat::Table));
        for r in &rows {
            println!(
                "  s = {:e}: actual / bound = {:.4}",
                r.scale,
                r.actual / r.bound
            );
        }
    }
    Ok(())
}
