//! `f_m(X) = ||X^m||_1^(1/m)` and the homogeneity argument showing that
//! `f_m -> rho` cannot be uniform on the nonnegative cone.
//!
//! Both `f_m` and `rho` are positively homogeneous, so the residual
//! `f_m(aX) - rho(aX)` equals `a (f_m(X) - rho(X))`. Whenever the residual
//! of `X` is nonzero, scaling makes it as large as desired for that fixed
//! `m`; no single `m` serves the whole cone.

use crate::error::{Error, Result};
use crate::matcore::NonNegMatrix;
use crate::perron::{gamma, perron_root, PerronCertificate};

/// Relative slack allowed when comparing `f_m` with `lo(rho)`; covers the
/// rounding of the log-space accumulation.
pub const GELFAND_SLACK: f64 = 1e-12;

/// Relative tolerance of the homogeneity rows.
pub const HOMOGENEITY_TOL: f64 = 1e-12;

/// `[f_1, ..., f_{m_max}]`, computed by multiplying a normalized power.
/// The product of the norms, which equals `||X^m||_1`, is carried as a
/// mantissa in `[1, 2)` and an exact binary exponent, so large powers never
/// overflow and the `m`-th root loses only a few ulps.
pub fn gelfand_values(x: &NonNegMatrix, m_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(m_max);
    if m_max == 0 {
        return out;
    }
    let first = x.one_norm();
    out.push(first);
    if first == 0.0 {
        out.resize(m_max, 0.0);
        return out;
    }
    let mut product = SplitFloat::new(first);
    let mut power = x.scale(1.0 / first).expect("positive scale");
    for m in 2..=m_max {
        let next = x.matmul(&power).expect("normalized products stay finite");
        let nrm = next.one_norm();
        if nrm == 0.0 {
            out.resize(m_max, 0.0);
            break;
        }
        product.mul(nrm);
        out.push(product.root(m as i64));
        power = next.scale(1.0 / nrm).expect("positive scale");
    }
    out
}

/// `mantissa * 2^exponent` with `mantissa` in `[1, 2)`.
struct SplitFloat {
    mantissa: f64,
    exponent: i64,
}

/// `2^k` for any `k`, as a product of two in-range powers.
fn pow2(k: i64) -> f64 {
    let half = (k / 2) as i32;
    2f64.powi(half) * 2f64.powi(k as i32 - half)
}

impl SplitFloat {
    fn new(v: f64) -> Self {
        let mut s = SplitFloat {
            mantissa: 1.0,
            exponent: 0,
        };
        s.mul(v);
        s
    }

    /// Multiplies by a positive finite `v`; rescaling by powers of two is
    /// exact.
    fn mul(&mut self, v: f64) {
        let k = v.log2().floor() as i64;
        self.mantissa *= v * pow2(-k);
        self.exponent += k;
        while self.mantissa >= 2.0 {
            self.mantissa /= 2.0;
            self.exponent += 1;
        }
        while self.mantissa < 1.0 {
            self.mantissa *= 2.0;
            self.exponent -= 1;
        }
    }

    /// `(mantissa * 2^exponent)^(1/m)`, splitting `exponent = q m + r` so
    /// that `2^q` is exact and the fractional power stays in `[1, 2)`.
    fn root(&self, m: i64) -> f64 {
        let q = self.exponent.div_euclid(m);
        let r = self.exponent.rem_euclid(m);
        let frac = (self.mantissa.ln() + r as f64 * std::f64::consts::LN_2) / m as f64;
        frac.exp() * pow2(q)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GelfandRow {
    pub m: usize,
    pub f_m: f64,
    /// `f_m - rho(X)`, using the root estimate.
    pub gap: f64,
    /// `f_m >= lo(rho(X))`, up to [`GELFAND_SLACK`].
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GelfandTrace {
    pub root: PerronCertificate,
    pub rows: Vec<GelfandRow>,
}

impl GelfandTrace {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

pub fn gelfand_trace(
    x: &NonNegMatrix,
    m_max: usize,
    tol: f64,
    max_iter: usize,
) -> Result<GelfandTrace> {
    if m_max == 0 {
        return Err(Error::InvalidArgument("m_max must be >= 1".into()));
    }
    let root = perron_root(x, tol, max_iter)?;
    let mid = root.mid();
    let rows = gelfand_values(x, m_max)
        .into_iter()
        .enumerate()
        .map(|(i, f_m)| GelfandRow {
            m: i + 1,
            f_m,
            gap: f_m - mid,
            holds: f_m * (1.0 + GELFAND_SLACK) >= root.lo,
        })
        .collect();
    Ok(GelfandTrace { root, rows })
}

/// `f_m(X) - mid rho(X)` together with the quantities it was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub f_m: f64,
    /// Point estimate of `rho(X)`.
    pub root_mid: f64,
    pub root_width: f64,
    pub value: f64,
}

/// `f_m(X) - rho(X)`. The root is refined past `tol` down to the rounding
/// floor of the iteration: a residual is compared against scaled copies of
/// itself, so its error must sit at the level of round-off, not of `tol`.
pub fn residual(x: &NonNegMatrix, m: usize, tol: f64, max_iter: usize) -> Result<Residual> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be >= 1".into()));
    }
    let f_m = gelfand_values(x, m)[m - 1];
    let root = perron_root(x, tol.min(f64::MIN_POSITIVE), max_iter)?;
    Ok(Residual {
        f_m,
        root_mid: root.estimate,
        root_width: root.width(),
        value: f_m - root.estimate,
    })
}

impl Residual {
    /// The residual is indistinguishable from zero: it lies within the root
    /// certificate's width plus the rounding level of `f_m`.
    pub fn is_vacuous(&self, n: usize, m: usize) -> bool {
        let noise =
            self.root_width + 8.0 * gamma(n * m + 4) * self.f_m.abs().max(self.root_mid.abs());
        self.value.abs() <= noise
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemoRow {
    pub alpha: f64,
    /// `f_m(aX) - rho(aX)`, computed from `aX` directly.
    pub residual: f64,
    /// `a * residual(X)`.
    pub expected: f64,
    pub rel_error: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonuniformityDemo {
    pub m: usize,
    pub base: Residual,
    /// `f_m(X)` and `rho(X)` agree to rounding; the scaling rows then
    /// demonstrate nothing.
    pub vacuous: bool,
    pub rows: Vec<DemoRow>,
}

impl NonuniformityDemo {
    pub fn all_hold(&self) -> bool {
        self.vacuous || self.rows.iter().all(|r| r.holds)
    }
}

pub fn nonuniformity_demo(
    x: &NonNegMatrix,
    m: usize,
    alphas: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<NonuniformityDemo> {
    if let Some(&a) = alphas.iter().find(|&&a| !(a.is_finite() && a > 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "alpha values must be positive, got {a}"
        )));
    }
    let base = residual(x, m, tol, max_iter)?;
    let vacuous = base.is_vacuous(x.n(), m);
    let rows = alphas
        .iter()
        .map(|&alpha| {
            let scaled = x.scale(alpha)?;
            let r = residual(&scaled, m, tol, max_iter)?;
            let expected = alpha * base.value;
            let rel_error = if expected == 0.0 {
                r.value.abs()
            } else {
                ((r.value - expected) / expected).abs()
            };
            Ok(DemoRow {
                alpha,
                residual: r.value,
                expected,
                rel_error,
                holds: rel_error <= HOMOGENEITY_TOL,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NonuniformityDemo {
        m,
        base,
        vacuous,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perron::{DEFAULT_MAX_ITER as MI, DEFAULT_TOL as TOL};
    use approx::assert_relative_eq;

    fn nn(rows: &[&[f64]]) -> NonNegMatrix {
        NonNegMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn identity_values() {
        let tr = gelfand_trace(&NonNegMatrix::identity(3), 6, TOL, MI).unwrap();
        assert!(tr.all_hold());
        for r in &tr.rows {
            assert_eq!(r.f_m, 1.0);
        }
    }

    #[test]
    fn nilpotent_values() {
        let v = gelfand_values(&nn(&[&[0.0, 2.0], &[0.0, 0.0]]), 4);
        assert_eq!(v, vec![2.0, 0.0, 0.0, 0.0]);
        let tr = gelfand_trace(&nn(&[&[0.0, 2.0], &[0.0, 0.0]]), 4, TOL, MI).unwrap();
        assert_eq!(tr.root.interval().hi, 0.0);
        assert!(tr.all_hold());
    }

    #[test]
    fn rank_one_ones() {
        let tr = gelfand_trace(&nn(&[&[1.0, 1.0], &[1.0, 1.0]]), 8, TOL, MI).unwrap();
        for r in &tr.rows {
            assert_relative_eq!(r.f_m, 2.0, max_relative = 1e-15);
        }
        assert!(tr.root.contains(2.0));
        assert!(tr.all_hold());
    }

    #[test]
    fn split_accumulation_survives_huge_powers() {
        let x = nn(&[&[1e100, 1e100], &[0.0, 1e100]]);
        let v = gelfand_values(&x, 50);
        assert!(v.iter().all(|f| f.is_finite()));
        // ||X^m||_1 = 1e100^m (m + 1)
        assert_relative_eq!(v[49], 1e100 * 51f64.powf(1.0 / 50.0), max_relative = 1e-12);
    }

    #[test]
    fn split_accumulation_survives_tiny_powers() {
        let x = nn(&[&[1e-200, 1e-200], &[0.0, 1e-200]]);
        let v = gelfand_values(&x, 40);
        assert_relative_eq!(v[39], 1e-200 * 41f64.powf(1.0 / 40.0), max_relative = 1e-12);
    }

    #[test]
    fn split_float_roots() {
        let mut p = SplitFloat::new(3.0);
        p.mul(1e300);
        p.mul(1e300);
        assert_relative_eq!(p.root(2), 3f64.sqrt() * 1e300, max_relative = 1e-15);
        assert_eq!(SplitFloat::new(0.375).root(1), 0.375);
        assert_eq!(pow2(-1074), f64::from_bits(1));
        assert_eq!(pow2(1023), f64::MAX / (2.0 - f64::EPSILON));
    }

    #[test]
    fn homogeneity_rows() {
        let x = nn(&[&[0.0, 2.0], &[0.0, 0.0]]);
        let demo = nonuniformity_demo(&x, 1, &[1.0, 2.0, 10.0], TOL, MI).unwrap();
        assert!(!demo.vacuous);
        assert_eq!(demo.base.value, 2.0);
        let res: Vec<f64> = demo.rows.iter().map(|r| r.residual).collect();
        assert_eq!(res, vec![2.0, 4.0, 20.0]);
        assert!(demo.all_hold());
    }

    #[test]
    fn vacuous_demo_is_flagged() {
        let demo =
            nonuniformity_demo(&nn(&[&[1.0, 1.0], &[1.0, 1.0]]), 3, &[2.0], TOL, MI).unwrap();
        assert!(demo.vacuous);
        assert!(demo.all_hold());
    }

    #[test]
    fn demo_rejects_bad_alpha() {
        assert!(nonuniformity_demo(&NonNegMatrix::identity(2), 1, &[0.0], TOL, MI).is_err());
        assert!(gelfand_trace(&NonNegMatrix::identity(2), 0, TOL, MI).is_err());
    }
}
