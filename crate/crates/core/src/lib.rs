//! Spectral analysis of nonnegative matrices.
//!
//! * [`matcore`]: dense matrices with a nonnegativity contract, norms,
//!   symmetric permutations and a plain-text file format.
//! * [`structure`]: irreducibility, Frobenius normal form, nilpotency.
//! * [`perron`]: certified Perron roots and vectors from Collatz–Wielandt
//!   bounds on a shifted power iteration.
//! * [`perturb`]: the `||E||_F / q*` continuity certificate.
//! * [`harness`]: convergence traces for `A_k -> A` and the Gelfand
//!   (`||X^m||^(1/m)`) non-uniformity demonstration.
//! * [`cli`]: the `perron` command-line tool.
//!
//! ```
//! use perron::matcore::NonNegMatrix;
//! use perron::perron::{perron_root, DEFAULT_MAX_ITER, DEFAULT_TOL};
//!
//! let a = NonNegMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
//! let cert = perron_root(&a, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
//! assert!(cert.contains((5.0 + 33f64.sqrt()) / 2.0));
//! ```

pub mod cli;
pub mod error;
pub mod harness;
pub mod matcore;
pub mod perron;
pub mod perturb;
pub mod structure;

pub use error::{Error, Result};
pub use matcore::{NonNegMatrix, Permutation, RealMatrix};
pub use perron::{Interval, PerronCertificate};
