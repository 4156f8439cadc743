//! A-priori bound on how far the Perron root can move under a perturbation.
//!
//! Let `A` be irreducible with left Perron vector `q` (`||q||_1 = 1`) and
//! `q* = min_i q_i`, and let `A' = A + E >= 0` have a right Perron vector
//! `p` (`||p||_1 = 1`). Then `q^T p >= q*` and
//!
//! ```text
//! |rho(A') - rho(A)| (q^T p) = |q^T E p| <= ||E||_2
//! ```
//!
//! so `|rho(A') - rho(A)| <= ||E||_2 / q*`. The spectral norm is replaced by
//! the Frobenius norm, which is never smaller.

use crate::error::{Error, Result};
use crate::matcore::{first_negative, frobenius_norm, offset, NonNegMatrix, RealMatrix};
use crate::perron::{perron_irreducible, perron_root, q_star, Interval, PerronCertificate};

/// Norm used to bound `||E||_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbationNorm {
    Frobenius,
}

impl PerturbationNorm {
    pub fn name(&self) -> &'static str {
        match self {
            PerturbationNorm::Frobenius => "frobenius",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationBound {
    /// Smallest entry of the left Perron vector of `A`.
    pub q_star: f64,
    /// `||A' - A||`, measured with `norm`.
    pub e_norm: f64,
    pub norm: PerturbationNorm,
    /// `e_norm / q_star`.
    pub bound: f64,
    /// `[lo(A) - bound, hi(A) + bound]`, clipped at 0.
    pub enclosure: Interval,
    /// Certificate of the unperturbed matrix.
    pub base: PerronCertificate,
}

impl PerturbationBound {
    /// Whether a certified interval for `rho(A')` is consistent with the
    /// enclosure.
    pub fn admits(&self, perturbed: &PerronCertificate) -> bool {
        self.enclosure.intersects(&perturbed.interval())
    }

    /// `|mid(A') - mid(A)| <= bound + width(A) + width(A')`.
    pub fn midpoint_within(&self, perturbed: &PerronCertificate) -> bool {
        (perturbed.mid() - self.base.mid()).abs()
            <= self.bound + self.base.width() + perturbed.width()
    }
}

/// `||E||_F / q*`.
pub fn perturbation_bound(q_star: f64, e: &RealMatrix) -> f64 {
    frobenius_norm(e) / q_star
}

fn enclosure(base: &PerronCertificate, bound: f64) -> Interval {
    Interval::new((base.lo - bound).max(0.0), base.hi + bound)
}

/// Continuity certificate for `A -> A'`. `A` must be irreducible; `A'` only
/// needs to be nonnegative.
pub fn continuity_certificate(
    a: &NonNegMatrix,
    a_prime: &NonNegMatrix,
    tol: f64,
    max_iter: usize,
) -> Result<PerturbationBound> {
    if a.n() != a_prime.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: a_prime.n(),
        });
    }
    let base = perron_irreducible(a, tol, max_iter)?;
    let q_star = q_star(&base)?;
    let e = a_prime.as_real().sub(a.as_real())?;
    let e_norm = frobenius_norm(&e);
    let bound = e_norm / q_star;
    Ok(PerturbationBound {
        q_star,
        e_norm,
        norm: PerturbationNorm::Frobenius,
        bound,
        enclosure: enclosure(&base, bound),
        base,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRow {
    pub scale: f64,
    /// `scale * ||direction||_F`.
    pub e_norm: f64,
    pub bound: f64,
    /// `|mid rho(A + s D) - mid rho(A)|`.
    pub actual: f64,
    pub root: Interval,
    /// `actual <= bound + width(A) + width(A + s D)`.
    pub holds: bool,
}

/// Compares the bound with the observed root shift along `A + s D` for each
/// scale `s`.
pub fn sharpness_probe(
    a: &NonNegMatrix,
    direction: &RealMatrix,
    scales: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<Vec<ProbeRow>> {
    if a.n() != direction.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: direction.n(),
        });
    }
    if let Some(&s) = scales.iter().find(|&&s| !(s.is_finite() && s > 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "scales must be positive, got {s}"
        )));
    }
    let base = perron_irreducible(a, tol, max_iter)?;
    let q = q_star(&base)?;
    let dir_norm = frobenius_norm(direction);

    scales
        .iter()
        .enumerate()
        .map(|(idx, &s)| {
            let m = offset(a.as_real(), direction, s)?;
            if let Some((row, col)) = first_negative(&m) {
                return Err(Error::LeavesCone {
                    k: idx + 1,
                    scale: s,
                    row,
                    col,
                });
            }
            let cert = perron_root(&NonNegMatrix::try_from_real(m)?, tol, max_iter)?;
            let e_norm = s * dir_norm;
            let bound = e_norm / q;
            let actual = (cert.mid() - base.mid()).abs();
            Ok(ProbeRow {
                scale: s,
                e_norm,
                bound,
                actual,
                root: cert.interval(),
                holds: actual <= bound + base.width() + cert.width(),
            })
        })
        .collect()
}
