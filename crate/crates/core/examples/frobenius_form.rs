//! Strongly connected components, Frobenius normal form and the spectral
//! block of a reducible matrix.
//!
//! Run with `cargo run --example frobenius_form`.

use perron::perron::{analyze_root, DEFAULT_MAX_ITER, DEFAULT_TOL};
use perron::structure::{frobenius_normal_form, is_irreducible, spectral_block};
use perron::NonNegMatrix;

fn main() -> perron::Result<()> {
    // {0, 2} form a cycle, 1 is absorbing, 3 feeds everything.
    let a = NonNegMatrix::from_rows(&[
        [0.0, 1.0, 2.0, 0.0],
        [0.0, 3.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 1.0, 0.5],
    ])?;
    println!("irreducible: {}", is_irreducible(&a));

    let fnf = frobenius_normal_form(&a);
    println!("permutation (new -> old): {:?}", fnf.perm.as_slice());
    println!("block sizes: {:?}", fnf.block_sizes());
    let permuted = a.permute(&fnf.perm)?;
    println!(
        "P^T A P block upper triangular: {}",
        fnf.is_block_upper_triangular(&permuted)
    );
    for row in 0..permuted.n() {
        println!("  {:?}", permuted.row(row));
    }

    let analysis = analyze_root(&a, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    for (b, cert) in analysis.blocks.iter().enumerate() {
        println!(
            "block {b} (original indices {:?}): rho in [{:.12}, {:.12}]",
            fnf.block_indices(b),
            cert.lo,
            cert.hi
        );
    }
    println!("spectral block: {}", spectral_block(&a));
    println!(
        "rho(A) in [{:.12}, {:.12}]",
        analysis.root.lo, analysis.root.hi
    );
    Ok(())
}
