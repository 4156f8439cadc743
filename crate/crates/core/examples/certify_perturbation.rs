//! Continuity certificate: `|rho(A') - rho(A)| <= ||A' - A||_F / q*` for an
//! irreducible `A` and any nonnegative `A'`.
//!
//! Run with `cargo run --example certify_perturbation`.

use perron::perron::{perron_root, DEFAULT_MAX_ITER, DEFAULT_TOL};
use perron::perturb::continuity_certificate;
use perron::NonNegMatrix;

fn main() -> perron::Result<()> {
    let a = NonNegMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]])?;
    let a_prime = NonNegMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.01]])?;

    let cert = continuity_certificate(&a, &a_prime, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    let moved = perron_root(&a_prime, DEFAULT_TOL, DEFAULT_MAX_ITER)?;

    println!("q*        = {:.12}", cert.q_star);
    println!("||E||_F   = {:.12}", cert.e_norm);
    println!("bound     = {:.12}", cert.bound);
    println!("rho(A)    in [{:.12}, {:.12}]", cert.base.lo, cert.base.hi);
    println!(
        "enclosure    [{:.12}, {:.12}]",
        cert.enclosure.lo, cert.enclosure.hi
    );
    println!("rho(A')   in [{:.12}, {:.12}]", moved.lo, moved.hi);
    println!(
        "actual shift = {:.12}",
        (moved.mid() - cert.base.mid()).abs()
    );
    println!("certificate admits rho(A'): {}", cert.admits(&moved));
    Ok(())
}
