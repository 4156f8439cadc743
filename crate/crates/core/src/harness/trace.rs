//! Convergence traces for `A_k -> A`.
//!
//! Three regimes, chosen by the structure of the limit `A`:
//!
//! * irreducible: every row carries the continuity bound
//!   `||A_k - A||_F / q*` and checks the observed root shift against it;
//! * reducible with `rho(A) > 0`: the permutation of the Frobenius normal
//!   form of `A` is applied to every `A_k`, and the block `B_k` sitting at
//!   the positions of the spectral block `B` of `A` gives the lower bound
//!   `rho(B_k) <= rho(A_k)` with `rho(B_k) -> rho(B) = rho(A)`;
//! * nilpotent (`A^p = 0`): `rho(A_k)^p = rho(A_k^p) <= ||A_k^p||_1 -> 0`.

use crate::error::{Error, Result};
use crate::harness::sequence::{SequenceSpec, Term};
use crate::matcore::{frobenius_norm, NonNegMatrix};
use crate::perron::{gamma, perron_irreducible, perron_root, q_star, Interval, PerronCertificate};
use crate::structure::{
    frobenius_normal_form, is_irreducible, nilpotency_index, spectral_block_of,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceKind {
    Irreducible,
    Reducible,
    Nilpotent,
}

impl TraceKind {
    pub fn name(&self) -> &'static str {
        match self {
            TraceKind::Irreducible => "irreducible",
            TraceKind::Reducible => "reducible",
            TraceKind::Nilpotent => "nilpotent",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub k: usize,
    pub scale: f64,
    /// Certified `rho(A_k)`.
    pub root: Interval,
    /// `|mid rho(A_k) - mid rho(A)|`.
    pub deviation: f64,
    /// Continuity bound (irreducible limit).
    pub bound: Option<f64>,
    /// Certified `rho(B_k)` (reducible limit).
    pub block_root: Option<Interval>,
    /// `|mid rho(B_k) - mid rho(A)|` (reducible limit).
    pub block_gap: Option<f64>,
    /// `||A_k^p||_1^(1/p)` (nilpotent limit).
    pub power_norm_root: Option<f64>,
    /// Whether the row's inequality held.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTrace {
    pub kind: TraceKind,
    /// Certificate of the limit `A`.
    pub limit: PerronCertificate,
    pub direction_norm: f64,
    /// Irreducible limit only.
    pub q_star: Option<f64>,
    /// Reducible limit only: original indices of the spectral block.
    pub spectral_block: Option<Vec<usize>>,
    /// Nilpotent limit only.
    pub nilpotency_index: Option<usize>,
    pub rows: Vec<TraceRow>,
}

impl ConvergenceTrace {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    pub fn final_row(&self) -> &TraceRow {
        self.rows.last().expect("traces have at least one row")
    }
}

fn row(term: &Term, root: &PerronCertificate, limit: &PerronCertificate) -> TraceRow {
    TraceRow {
        k: term.k,
        scale: term.scale,
        root: root.interval(),
        deviation: (root.mid() - limit.mid()).abs(),
        bound: None,
        block_root: None,
        block_gap: None,
        power_norm_root: None,
        holds: true,
    }
}

/// Trace for an irreducible limit.
pub fn run_irreducible_trace(
    spec: &SequenceSpec,
    tol: f64,
    max_iter: usize,
) -> Result<ConvergenceTrace> {
    spec.validate()?;
    let limit = perron_irreducible(&spec.base, tol, max_iter)?;
    let q = q_star(&limit)?;
    let direction_norm = frobenius_norm(&spec.direction);
    let terms = spec.terms()?;

    let rows = terms
        .iter()
        .map(|t| {
            let cert = perron_root(&t.matrix, tol, max_iter)?;
            let e_norm = if spec.clamp {
                frobenius_norm(&t.matrix.as_real().sub(spec.base.as_real())?)
            } else {
                t.scale * direction_norm
            };
            let bound = e_norm / q;
            let mut r = row(t, &cert, &limit);
            r.holds = r.deviation <= bound + cert.width() + limit.width();
            r.bound = Some(bound);
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ConvergenceTrace {
        kind: TraceKind::Irreducible,
        limit,
        direction_norm,
        q_star: Some(q),
        spectral_block: None,
        nilpotency_index: None,
        rows,
    })
}

/// Trace for a reducible limit with positive Perron root.
pub fn run_reducible_trace(
    spec: &SequenceSpec,
    tol: f64,
    max_iter: usize,
) -> Result<ConvergenceTrace> {
    spec.validate()?;
    if is_irreducible(&spec.base) {
        return Err(Error::Irreducible);
    }
    if nilpotency_index(&spec.base).is_some() {
        return Err(Error::Nilpotent);
    }
    let limit = perron_root(&spec.base, tol, max_iter)?;
    let fnf = frobenius_normal_form(&spec.base);
    let b = spectral_block_of(&fnf, tol, max_iter);
    let positions = fnf.block_indices(b).to_vec();
    let terms = spec.terms()?;

    let rows = terms
        .iter()
        .map(|t| {
            let cert = perron_root(&t.matrix, tol, max_iter)?;
            // The same positions of P^T A_k P, read straight from A_k.
            let bk = t.matrix.principal_submatrix(&positions);
            let bcert = perron_root(&bk, tol, max_iter)?;
            let mut r = row(t, &cert, &limit);
            r.holds = bcert.lo <= cert.hi;
            r.block_gap = Some((bcert.mid() - limit.mid()).abs());
            r.block_root = Some(bcert.interval());
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ConvergenceTrace {
        kind: TraceKind::Reducible,
        limit,
        direction_norm: frobenius_norm(&spec.direction),
        q_star: None,
        spectral_block: Some(positions),
        nilpotency_index: None,
        rows,
    })
}

/// `hi^p <= ||A_k^p||_1` up to rounding in the power and the interval's
/// own tolerance.
fn nilpotent_row_holds(hi: f64, norm: f64, p: usize, n: usize, tol: f64) -> bool {
    let pf = p as i32;
    let slack = f64::from(pf) * hi.max(1.0).powi(pf - 1) * tol;
    hi.powi(pf) * (1.0 - gamma(2 * p + 1)) <= norm * (1.0 + gamma(p * n + 1)) + slack
}

/// Trace for a nilpotent limit.
pub fn run_nilpotent_trace(
    spec: &SequenceSpec,
    tol: f64,
    max_iter: usize,
) -> Result<ConvergenceTrace> {
    spec.validate()?;
    let p = nilpotency_index(&spec.base).ok_or(Error::NotNilpotent)?;
    let limit = perron_root(&spec.base, tol, max_iter)?;
    let terms = spec.terms()?;
    let n = spec.base.n();

    let rows = terms
        .iter()
        .map(|t| {
            let cert = perron_root(&t.matrix, tol, max_iter)?;
            let norm = t.matrix.pow(p as u32)?.one_norm();
            let mut r = row(t, &cert, &limit);
            r.power_norm_root = Some(norm.powf(1.0 / p as f64));
            r.holds = nilpotent_row_holds(cert.hi, norm, p, n, tol);
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ConvergenceTrace {
        kind: TraceKind::Nilpotent,
        limit,
        direction_norm: frobenius_norm(&spec.direction),
        q_star: None,
        spectral_block: None,
        nilpotency_index: Some(p),
        rows,
    })
}

/// Picks the trace matching the structure of `spec.base`.
pub fn classify(base: &NonNegMatrix) -> TraceKind {
    if is_irreducible(base) {
        TraceKind::Irreducible
    } else if nilpotency_index(base).is_some() {
        TraceKind::Nilpotent
    } else {
        TraceKind::Reducible
    }
}

pub fn run_trace(spec: &SequenceSpec, tol: f64, max_iter: usize) -> Result<ConvergenceTrace> {
    match classify(&spec.base) {
        TraceKind::Irreducible => run_irreducible_trace(spec, tol, max_iter),
        TraceKind::Reducible => run_reducible_trace(spec, tol, max_iter),
        TraceKind::Nilpotent => run_nilpotent_trace(spec, tol, max_iter),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::sequence::Schedule;
    use crate::matcore::RealMatrix;
    use crate::perron::{DEFAULT_MAX_ITER as MI, DEFAULT_TOL as TOL};
    use approx::assert_relative_eq;

    fn nn(rows: &[&[f64]]) -> NonNegMatrix {
        NonNegMatrix::from_rows(rows).unwrap()
    }

    fn real(rows: &[&[f64]]) -> RealMatrix {
        RealMatrix::from_rows(rows).unwrap()
    }

    fn cycle2() -> NonNegMatrix {
        nn(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    #[test]
    fn irreducible_zero_direction() {
        let spec = SequenceSpec::new(cycle2(), RealMatrix::zeros(2), Schedule::inv_k(), 5);
        let tr = run_irreducible_trace(&spec, TOL, MI).unwrap();
        assert!(tr.all_hold());
        for r in &tr.rows {
            assert_eq!(r.root, tr.limit.interval());
            assert_eq!(r.deviation, 0.0);
            assert_eq!(r.bound, Some(0.0));
        }
    }

    #[test]
    fn irreducible_corner_direction() {
        let spec = SequenceSpec::new(
            cycle2(),
            real(&[&[0.0, 0.0], &[0.0, 1.0]]),
            Schedule::inv_k(),
            20,
        );
        let tr = run_irreducible_trace(&spec, TOL, MI).unwrap();
        assert!(tr.all_hold());
        assert_eq!(tr.rows.len(), 20);
        for r in &tr.rows {
            let s = 1.0 / r.k as f64;
            let exact = (s + (s * s + 4.0).sqrt()) / 2.0 - 1.0;
            assert_relative_eq!(r.deviation, exact, epsilon = 1e-11);
            assert_relative_eq!(r.bound.unwrap(), 2.0 * s, max_relative = 1e-12);
        }
        // deviations shrink along the sequence
        assert!(tr.rows.windows(2).all(|w| w[1].deviation < w[0].deviation));
    }

    #[test]
    fn reducible_triangular() {
        let spec = SequenceSpec::new(
            nn(&[&[1.0, 1.0], &[0.0, 2.0]]),
            real(&[&[0.0, 0.0], &[1.0, 0.0]]),
            Schedule::inv_k(),
            20,
        );
        let tr = run_reducible_trace(&spec, TOL, MI).unwrap();
        assert_eq!(tr.spectral_block.as_deref(), Some(&[1][..]));
        assert!(tr.all_hold());
        for r in &tr.rows {
            // A_k = [[1,1],[s,2]]: rho = (3 + sqrt(1 + 4s)) / 2
            let s = r.scale;
            let exact = (3.0 + (1.0 + 4.0 * s).sqrt()) / 2.0;
            assert!((r.root.mid() - exact).abs() < 1e-11);
            assert_eq!(r.block_root, Some(Interval::point(2.0)));
            assert!(r.block_root.unwrap().lo <= r.root.hi);
        }
    }

    #[test]
    fn reducible_zero_direction() {
        let spec = SequenceSpec::new(
            nn(&[&[1.0, 1.0], &[0.0, 2.0]]),
            RealMatrix::zeros(2),
            Schedule::inv_k(),
            4,
        );
        let tr = run_reducible_trace(&spec, TOL, MI).unwrap();
        for r in &tr.rows {
            assert_eq!(r.root, tr.limit.interval());
            assert_eq!(r.block_root, Some(Interval::point(2.0)));
        }
    }

    #[test]
    fn reducible_block_diagonal_limit() {
        let base = nn(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 2.0]]);
        let dir = real(&[&[0.1, 0.2, 0.3], &[0.3, 0.2, 0.1], &[0.2, 0.1, 0.3]]);
        let spec = SequenceSpec::new(base, dir, Schedule::inv_k(), 40);
        let tr = run_reducible_trace(&spec, TOL, MI).unwrap();
        assert!(tr.all_hold());
        assert_eq!(tr.spectral_block.as_deref(), Some(&[2][..]));
        let last = tr.final_row();
        assert!((last.block_root.unwrap().mid() - 2.0).abs() < 0.3 / 40.0 + 1e-12);
    }

    #[test]
    fn reducible_preconditions() {
        let spec = SequenceSpec::new(cycle2(), RealMatrix::zeros(2), Schedule::inv_k(), 2);
        assert_eq!(run_reducible_trace(&spec, TOL, MI), Err(Error::Irreducible));
        let spec = SequenceSpec::new(
            NonNegMatrix::zeros(2),
            RealMatrix::zeros(2),
            Schedule::inv_k(),
            2,
        );
        assert_eq!(run_reducible_trace(&spec, TOL, MI), Err(Error::Nilpotent));
    }

    #[test]
    fn nilpotent_two_by_two() {
        let spec = SequenceSpec::new(
            nn(&[&[0.0, 1.0], &[0.0, 0.0]]),
            real(&[&[0.0, 0.0], &[1.0, 0.0]]),
            Schedule::inv_k(),
            20,
        );
        let tr = run_nilpotent_trace(&spec, TOL, MI).unwrap();
        assert_eq!(tr.nilpotency_index, Some(2));
        assert!(tr.all_hold());
        for r in &tr.rows {
            let expected = (r.k as f64).powf(-0.5);
            assert_relative_eq!(r.root.mid(), expected, max_relative = 1e-10);
            assert_relative_eq!(r.power_norm_root.unwrap(), expected, max_relative = 1e-14);
        }
    }

    #[test]
    fn nilpotent_zero_direction() {
        let spec = SequenceSpec::new(
            nn(&[&[0.0, 1.0], &[0.0, 0.0]]),
            RealMatrix::zeros(2),
            Schedule::inv_k(),
            3,
        );
        let tr = run_nilpotent_trace(&spec, TOL, MI).unwrap();
        for r in &tr.rows {
            assert_eq!(r.root, Interval::point(0.0));
        }
    }

    #[test]
    fn nilpotent_upper_triangular_ones() {
        let base = nn(&[&[0.0, 1.0, 1.0], &[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0]]);
        let dir = real(&[&[0.5, 0.0, 0.0], &[1.0, 0.2, 0.0], &[1.0, 1.0, 0.3]]);
        let spec = SequenceSpec::new(base, dir, Schedule::inv_k(), 30);
        let tr = run_nilpotent_trace(&spec, TOL, MI).unwrap();
        assert_eq!(tr.nilpotency_index, Some(3));
        assert!(tr.all_hold());
        let first = &tr.rows[0];
        let last = tr.final_row();
        assert!(last.root.hi < first.root.hi);
        assert!(last.power_norm_root.unwrap() < first.power_norm_root.unwrap());
        assert!(last.root.hi <= last.power_norm_root.unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn nilpotent_precondition() {
        let spec = SequenceSpec::new(cycle2(), RealMatrix::zeros(2), Schedule::inv_k(), 2);
        assert_eq!(
            run_nilpotent_trace(&spec, TOL, MI),
            Err(Error::NotNilpotent)
        );
    }

    #[test]
    fn dispatch() {
        assert_eq!(classify(&cycle2()), TraceKind::Irreducible);
        assert_eq!(
            classify(&nn(&[&[1.0, 1.0], &[0.0, 2.0]])),
            TraceKind::Reducible
        );
        assert_eq!(classify(&NonNegMatrix::zeros(2)), TraceKind::Nilpotent);
        assert_eq!(classify(&NonNegMatrix::zeros(1)), TraceKind::Irreducible);
    }
}
