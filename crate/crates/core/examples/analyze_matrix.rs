//! Certified Perron root and Perron vectors of an irreducible matrix.
//!
//! Run with `cargo run --example analyze_matrix`.

use perron::perron::{perron_root, q_star, DEFAULT_MAX_ITER, DEFAULT_TOL};
use perron::structure::is_irreducible;
use perron::NonNegMatrix;

fn main() -> perron::Result<()> {
    let a = NonNegMatrix::from_rows(&[[2.0, 1.0, 0.0], [0.0, 1.0, 3.0], [1.0, 0.0, 1.0]])?;
    let cert = perron_root(&a, DEFAULT_TOL, DEFAULT_MAX_ITER)?;

    println!("irreducible: {}", is_irreducible(&a));
    println!(
        "rho in [{:.15}, {:.15}]  (width {:.2e})",
        cert.lo,
        cert.hi,
        cert.width()
    );
    println!("estimate:     {:.15}", cert.estimate);
    println!("iterations:   {}", cert.iterations);
    if let (Some(v), Some(q)) = (&cert.right_vector, &cert.left_vector) {
        println!("right vector: {v:.6?}");
        println!("left vector:  {q:.6?}");
    }
    println!(
        "residual ||Av - rho v||_1 = {:.2e}",
        cert.residual.unwrap_or(f64::NAN)
    );
    println!("q* = {:.6}", q_star(&cert)?);
    Ok(())
}
