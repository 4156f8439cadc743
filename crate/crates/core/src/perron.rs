//! Certified Perron roots and Perron vectors.
//!
//! For an irreducible block `B` the solver runs the power iteration on
//! `B + I` (primitive whenever `B` is irreducible, so cycles converge too)
//! from the uniform start `1/n`. Every iterate `x` is strictly positive, so
//! the Collatz–Wielandt quotients give
//!
//! ```text
//! min_i (Bx)_i / x_i  <=  rho(B)  <=  max_i (Bx)_i / x_i
//! ```
//!
//! The quotients are widened by a bound on the floating-point error of the
//! dot products, so the reported interval stays an enclosure of the exact
//! root of the stored matrix. Reducible matrices are handled block by block
//! through the Frobenius normal form: `rho(A)` is the largest block root.

use crate::error::{Error, Result};
use crate::matcore::NonNegMatrix;
use crate::structure::{frobenius_normal_form, FrobeniusNormalForm};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 1_000_000;

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// `gamma_k = k u / (1 - k u)`, the classic bound on the relative error of a
/// length-`k` floating-point sum of nonnegative products.
pub(crate) fn gamma(k: usize) -> f64 {
    let ku = k as f64 * UNIT_ROUNDOFF;
    ku / (1.0 - ku)
}

/// Closed real interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval [{lo}, {hi}] is empty");
        Self { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn mid(&self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Enclosure of `{x^p : x in self}` for `self` inside `[0, inf)`,
    /// rounded outward.
    pub fn powi(&self, p: u32) -> Interval {
        let g = 2.0 * gamma(2 * p as usize + 1);
        let lo = (self.lo.powi(p as i32) * (1.0 - g)).max(0.0);
        let hi = self.hi.powi(p as i32) * (1.0 + g);
        Interval::new(lo, hi)
    }
}

/// Certified enclosure of a Perron root, with Perron vectors when the
/// matrix is irreducible.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronCertificate {
    pub lo: f64,
    pub hi: f64,
    /// Best point estimate of the root, always inside `[lo, hi]`. For an
    /// irreducible matrix this is the two-sided Rayleigh quotient
    /// `q^T A v / q^T v`, whose error is quadratic in the vector errors and
    /// therefore much smaller than the interval's half-width.
    pub estimate: f64,
    /// Right Perron vector, `||v||_1 = 1`.
    pub right_vector: Option<Vec<f64>>,
    /// Left Perron vector (Perron vector of the transpose), `||q||_1 = 1`.
    pub left_vector: Option<Vec<f64>>,
    /// `||A v - estimate v||_1` for the right vector.
    pub residual: Option<f64>,
    pub iterations: usize,
    /// False when `max_iter` ran out before the interval reached `tol`; the
    /// interval is still a valid (wide) enclosure.
    pub converged: bool,
}

impl PerronCertificate {
    pub fn interval(&self) -> Interval {
        Interval::new(self.lo, self.hi)
    }

    pub fn mid(&self) -> f64 {
        self.interval().mid()
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.interval().contains(x)
    }
}

struct PowerRun {
    bounds: Interval,
    vector: Vec<f64>,
    iterations: usize,
    converged: bool,
}

fn check_settings(tol: f64, max_iter: usize) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tol must be > 0, got {tol}"
        )));
    }
    if max_iter == 0 {
        return Err(Error::InvalidArgument("max_iter must be >= 1".into()));
    }
    Ok(())
}

/// Shifted power iteration with Collatz–Wielandt bounds on `m` (n >= 2,
/// irreducible).
fn collatz_wielandt(m: &NonNegMatrix, tol: f64, max_iter: usize) -> PowerRun {
    let n = m.n();
    let widen = 2.0 * gamma(n + 2);
    let mut x = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    let mut lo = 0.0_f64;
    let mut hi = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iter {
        iterations += 1;
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = m.row(i).iter().zip(&x).map(|(a, b)| a * b).sum();
        }
        if x.iter().all(|&v| v > 0.0) {
            let (qmin, qmax) = y
                .iter()
                .zip(&x)
                .map(|(yi, xi)| yi / xi)
                .fold((f64::INFINITY, 0.0_f64), |(a, b), q| (a.min(q), b.max(q)));
            lo = lo.max(qmin * (1.0 - widen));
            hi = hi.min(qmax * (1.0 + widen));
        }

        // x <- (M + I) x / ||(M + I) x||_1
        let mut s = 0.0;
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi += yi;
            s += *xi;
        }
        for xi in &mut x {
            *xi /= s;
        }

        let width = hi - lo;
        // Below the floating-point resolution of the quotients no further
        // progress is possible.
        let floor = 4.0 * widen * hi;
        if width <= tol || width <= floor {
            converged = true;
            break;
        }
    }
    PowerRun {
        bounds: Interval::new(lo, hi.max(lo)),
        vector: x,
        iterations,
        converged,
    }
}

fn residual(m: &NonNegMatrix, v: &[f64], lambda: f64) -> f64 {
    (0..m.n())
        .map(|i| {
            let av: f64 = m.row(i).iter().zip(v).map(|(a, b)| a * b).sum();
            (av - lambda * v[i]).abs()
        })
        .sum()
}

/// `q^T M v / q^T v`, or `None` when the denominator vanishes.
fn rayleigh(m: &NonNegMatrix, q: &[f64], v: &[f64]) -> Option<f64> {
    let den: f64 = q.iter().zip(v).map(|(a, b)| a * b).sum();
    if den.is_nan() || den <= 0.0 {
        return None;
    }
    let num: f64 = (0..m.n())
        .map(|i| q[i] * m.row(i).iter().zip(v).map(|(a, b)| a * b).sum::<f64>())
        .sum();
    Some(num / den)
}

/// Certified Perron root and left/right Perron vectors of an irreducible
/// matrix. Fails with [`Error::Reducible`] otherwise.
pub fn perron_irreducible(
    b: &NonNegMatrix,
    tol: f64,
    max_iter: usize,
) -> Result<PerronCertificate> {
    check_settings(tol, max_iter)?;
    if !crate::structure::is_irreducible(b) {
        return Err(Error::Reducible);
    }
    if b.n() == 1 {
        let v = b.get(0, 0);
        return Ok(PerronCertificate {
            lo: v,
            hi: v,
            estimate: v,
            right_vector: Some(vec![1.0]),
            left_vector: Some(vec![1.0]),
            residual: Some(0.0),
            iterations: 0,
            converged: true,
        });
    }

    let right = collatz_wielandt(b, tol, max_iter);
    let left = collatz_wielandt(&b.transpose(), tol, max_iter);

    // Both runs enclose the same root.
    let (lo, hi) = {
        let lo = right.bounds.lo.max(left.bounds.lo);
        let hi = right.bounds.hi.min(left.bounds.hi);
        if lo <= hi {
            (lo, hi)
        } else {
            (
                right.bounds.lo.min(left.bounds.lo),
                right.bounds.hi.max(left.bounds.hi),
            )
        }
    };
    let estimate = rayleigh(b, &left.vector, &right.vector)
        .filter(|e| e.is_finite())
        .map_or(Interval::new(lo, hi).mid(), |e| e.clamp(lo, hi));
    let res = residual(b, &right.vector, estimate);
    Ok(PerronCertificate {
        lo,
        hi,
        estimate,
        residual: Some(res),
        right_vector: Some(right.vector),
        left_vector: Some(left.vector),
        iterations: right.iterations + left.iterations,
        converged: (right.converged && left.converged) || hi - lo <= tol,
    })
}

/// Root certificate together with the structure it was assembled from.
#[derive(Debug, Clone)]
pub struct RootAnalysis {
    pub fnf: FrobeniusNormalForm,
    /// One certificate per FNF diagonal block, in block order.
    pub blocks: Vec<PerronCertificate>,
    pub root: PerronCertificate,
}

pub fn analyze_root(a: &NonNegMatrix, tol: f64, max_iter: usize) -> Result<RootAnalysis> {
    check_settings(tol, max_iter)?;
    let fnf = frobenius_normal_form(a);
    let blocks = fnf
        .block_matrices
        .iter()
        .map(|b| perron_irreducible(b, tol, max_iter))
        .collect::<Result<Vec<_>>>()?;

    let root = if blocks.len() == 1 {
        blocks[0].clone()
    } else {
        let lo = blocks.iter().map(|c| c.lo).fold(0.0, f64::max);
        let hi = blocks.iter().map(|c| c.hi).fold(0.0, f64::max);
        let estimate = blocks
            .iter()
            .map(|c| c.estimate)
            .fold(0.0, f64::max)
            .clamp(lo, hi);
        PerronCertificate {
            lo,
            hi,
            estimate,
            right_vector: None,
            left_vector: None,
            residual: None,
            iterations: blocks.iter().map(|c| c.iterations).sum(),
            converged: blocks.iter().all(|c| c.converged),
        }
    };
    Ok(RootAnalysis { fnf, blocks, root })
}

/// Certified Perron root of any nonnegative matrix: `[max lo_b, max hi_b]`
/// over the FNF diagonal blocks. Vectors are only attached when `a` is
/// irreducible.
pub fn perron_root(a: &NonNegMatrix, tol: f64, max_iter: usize) -> Result<PerronCertificate> {
    Ok(analyze_root(a, tol, max_iter)?.root)
}

/// Smallest entry of the left Perron vector.
pub fn q_star(cert: &PerronCertificate) -> Result<f64> {
    let q = cert
        .left_vector
        .as_ref()
        .ok_or(Error::NoPositiveLeftVector)?;
    let min = q.iter().copied().fold(f64::INFINITY, f64::min);
    if min > 0.0 {
        Ok(min)
    } else {
        Err(Error::NoPositiveLeftVector)
    }
}

/// Both sides of `rho(A)^p = rho(A^p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIdentity {
    /// Enclosure of `rho(A)^p`.
    pub powered_root: Interval,
    /// Enclosure of `rho(A^p)`.
    pub root_of_power: Interval,
}

impl PowerIdentity {
    pub fn holds(&self) -> bool {
        self.powered_root.intersects(&self.root_of_power)
    }
}

pub fn power_radius_identity_check(
    a: &NonNegMatrix,
    p: u32,
    tol: f64,
    max_iter: usize,
) -> Result<PowerIdentity> {
    if p == 0 {
        return Err(Error::InvalidArgument("power must be >= 1".into()));
    }
    let base = perron_root(a, tol, max_iter)?;
    if base.hi > 0.0 && f64::from(p) * base.hi.ln() >= f64::MAX.ln() {
        return Err(Error::Overflow);
    }
    let powered_root = base.interval().powi(p);

    let ap = a.pow(p)?;
    let cert = perron_root(&ap, tol, max_iter)?;
    // Each computed entry of A^p is within relative gamma((p-1) n) of the
    // exact one; for nonnegative matrices the root moves by the same
    // relative amount at most.
    let g = gamma((p as usize).saturating_sub(1) * a.n() + 1);
    let root_of_power = Interval::new(
        (cert.lo / (1.0 + g) * (1.0 - 2.0 * UNIT_ROUNDOFF)).max(0.0),
        cert.hi / (1.0 - g) * (1.0 + 2.0 * UNIT_ROUNDOFF),
    );
    Ok(PowerIdentity {
        powered_root,
        root_of_power,
    })
}
