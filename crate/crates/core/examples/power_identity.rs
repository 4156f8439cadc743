//! `rho(A^p) = rho(A)^p`, checked with outward-rounded enclosures.
//!
//! Run with `cargo run --example power_identity`.

use perron::perron::{power_radius_identity_check, DEFAULT_MAX_ITER, DEFAULT_TOL};
use perron::NonNegMatrix;

fn main() -> perron::Result<()> {
    let matrices = [
        ("dense", NonNegMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]])?),
        (
            "cycle",
            NonNegMatrix::from_rows(&[[0.0, 2.0, 0.0], [0.0, 0.0, 1.0], [0.5, 0.0, 0.0]])?,
        ),
        (
            "triangular",
            NonNegMatrix::from_rows(&[[1.0, 5.0], [0.0, 2.0]])?,
        ),
    ];
    for (name, a) in &matrices {
        for p in 1..=4 {
            let id = power_radius_identity_check(a, p, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
            println!(
                "{name:>10} p={p}: rho(A)^p in [{:.12}, {:.12}], rho(A^p) in [{:.12}, {:.12}]  {}",
                id.powered_root.lo,
                id.powered_root.hi,
                id.root_of_power.lo,
                id.root_of_power.hi,
                if id.holds() { "PASS" } else { "FAIL" }
            );
        }
    }
    Ok(())
}
