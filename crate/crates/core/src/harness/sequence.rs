use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matcore::{first_negative, offset, NonNegMatrix, RealMatrix};

/// Rule `k -> s_k` for `k = 1, 2, ...`; every rule decreases strictly to 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Schedule {
    /// `c / k`
    InvK { c: f64 },
    /// `c / k^2`
    InvK2 { c: f64 },
    /// `c * gamma^k`, `0 < gamma < 1`
    Geometric { c: f64, gamma: f64 },
}

impl Schedule {
    pub fn inv_k() -> Self {
        Schedule::InvK { c: 1.0 }
    }

    pub fn scale(&self, k: usize) -> f64 {
        let kf = k as f64;
        match *self {
            Schedule::InvK { c } => c / kf,
            Schedule::InvK2 { c } => c / (kf * kf),
            Schedule::Geometric { c, gamma } => c * gamma.powi(k as i32),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let c = match *self {
            Schedule::InvK { c } | Schedule::InvK2 { c } => c,
            Schedule::Geometric { c, gamma } => {
                if !(gamma > 0.0 && gamma < 1.0) {
                    return Err(Error::InvalidArgument(format!(
                        "geometric ratio must lie in (0, 1), got {gamma}"
                    )));
                }
                c
            }
        };
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "schedule constant must be positive, got {c}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Schedule::InvK { c: 1.0 } => write!(f, "inv-k"),
            Schedule::InvK2 { c: 1.0 } => write!(f, "inv-k2"),
            Schedule::Geometric { c: 1.0, gamma } => write!(f, "geom:{gamma}"),
            Schedule::InvK { c } => write!(f, "{c}*inv-k"),
            Schedule::InvK2 { c } => write!(f, "{c}*inv-k2"),
            Schedule::Geometric { c, gamma } => write!(f, "{c}*geom:{gamma}"),
        }
    }
}

/// Parses `inv-k`, `inv-k2` or `geom:<ratio>`, optionally prefixed by a
/// constant as in `0.5*inv-k`.
impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown schedule `{s}`"));
        let (c, rule) = match s.split_once('*') {
            Some((c, rule)) => (c.trim().parse::<f64>().map_err(|_| bad())?, rule.trim()),
            None => (1.0, s.trim()),
        };
        let sched = match rule {
            "inv-k" => Schedule::InvK { c },
            "inv-k2" => Schedule::InvK2 { c },
            _ => {
                let gamma = rule
                    .strip_prefix("geom:")
                    .and_then(|g| g.parse::<f64>().ok())
                    .ok_or_else(bad)?;
                Schedule::Geometric { c, gamma }
            }
        };
        sched.validate()?;
        Ok(sched)
    }
}

/// The sequence `A_k = base + s_k * direction`, `k = 1..=count`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSpec {
    /// The limit `A`.
    pub base: NonNegMatrix,
    pub direction: RealMatrix,
    pub schedule: Schedule,
    pub count: usize,
    /// Clamp negative entries of `A_k` to 0 instead of rejecting the term.
    pub clamp: bool,
}

/// One generated term of a sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub k: usize,
    pub scale: f64,
    pub matrix: NonNegMatrix,
}

impl SequenceSpec {
    pub fn new(
        base: NonNegMatrix,
        direction: RealMatrix,
        schedule: Schedule,
        count: usize,
    ) -> Self {
        Self {
            base,
            direction,
            schedule,
            count,
            clamp: false,
        }
    }

    pub fn with_clamp(mut self, clamp: bool) -> Self {
        self.clamp = clamp;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.base.n() != self.direction.n() {
            return Err(Error::DimensionMismatch {
                left: self.base.n(),
                right: self.direction.n(),
            });
        }
        if self.count == 0 {
            return Err(Error::InvalidArgument("count must be >= 1".into()));
        }
        self.schedule.validate()
    }

    pub fn term(&self, k: usize) -> Result<Term> {
        let scale = self.schedule.scale(k);
        let m = offset(self.base.as_real(), &self.direction, scale)?;
        let matrix = match first_negative(&m) {
            None => NonNegMatrix::try_from_real(m)?,
            Some(_) if self.clamp => NonNegMatrix::clamped(&m),
            Some((row, col)) => return Err(Error::LeavesCone { k, scale, row, col }),
        };
        Ok(Term { k, scale, matrix })
    }

    /// All terms in ascending `k`; the first term leaving the nonnegative
    /// cone is reported as an error.
    pub fn terms(&self) -> Result<Vec<Term>> {
        self.validate()?;
        (1..=self.count).map(|k| self.term(k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedules() {
        assert_eq!(Schedule::inv_k().scale(4), 0.25);
        assert_eq!(Schedule::InvK2 { c: 1.0 }.scale(4), 1.0 / 16.0);
        assert_eq!(Schedule::Geometric { c: 2.0, gamma: 0.5 }.scale(3), 0.25);
        for s in [
            Schedule::inv_k(),
            Schedule::InvK2 { c: 3.0 },
            Schedule::Geometric { c: 1.0, gamma: 0.9 },
        ] {
            let v: Vec<f64> = (1..30).map(|k| s.scale(k)).collect();
            assert!(v.windows(2).all(|w| w[1] < w[0] && w[1] > 0.0));
        }
    }

    #[test]
    fn schedule_parsing() {
        assert_eq!("inv-k".parse::<Schedule>().unwrap(), Schedule::inv_k());
        assert_eq!(
            "inv-k2".parse::<Schedule>().unwrap(),
            Schedule::InvK2 { c: 1.0 }
        );
        assert_eq!(
            "geom:0.5".parse::<Schedule>().unwrap(),
            Schedule::Geometric { c: 1.0, gamma: 0.5 }
        );
        assert_eq!(
            "0.1*inv-k".parse::<Schedule>().unwrap(),
            Schedule::InvK { c: 0.1 }
        );
        assert!("geom:1.5".parse::<Schedule>().is_err());
        assert!("geom:".parse::<Schedule>().is_err());
        assert!("-1*inv-k".parse::<Schedule>().is_err());
        assert!("fast".parse::<Schedule>().is_err());
        for s in ["inv-k", "inv-k2", "geom:0.25", "0.5*inv-k"] {
            assert_eq!(s.parse::<Schedule>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn leaving_the_cone() {
        let base = NonNegMatrix::from_rows(&[[1.0, 0.5], [0.0, 1.0]]).unwrap();
        let dir = RealMatrix::from_rows(&[[0.0, -1.0], [0.0, 0.0]]).unwrap();
        let spec = SequenceSpec::new(base, dir, Schedule::inv_k(), 5);
        assert_eq!(
            spec.terms(),
            Err(Error::LeavesCone {
                k: 1,
                scale: 1.0,
                row: 0,
                col: 1
            })
        );
        let terms = spec.with_clamp(true).terms().unwrap();
        assert_eq!(terms[0].matrix.get(0, 1), 0.0);
        assert_eq!(terms[2].matrix.get(0, 1), 0.5 - 1.0 / 3.0);
    }

    #[test]
    fn spec_validation() {
        let base = NonNegMatrix::identity(2);
        let spec = SequenceSpec::new(base.clone(), RealMatrix::zeros(3), Schedule::inv_k(), 2);
        assert!(spec.terms().is_err());
        let spec = SequenceSpec::new(base, RealMatrix::zeros(2), Schedule::inv_k(), 0);
        assert!(spec.terms().is_err());
    }
}
