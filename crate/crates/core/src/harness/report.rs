//! Tabular output for traces: aligned text or comma-separated values.
//!
//! CSV numbers use 17 significant digits so that every value parses back
//! to the same `f64`. Column sets are fixed per trace type.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::Error;
use crate::harness::gelfand::{GelfandTrace, NonuniformityDemo};
use crate::harness::trace::{ConvergenceTrace, TraceKind};
use crate::perturb::ProbeRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::InvalidArgument(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    Num(f64),
    Check(bool),
    Empty,
}

impl Cell {
    fn opt(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }

    fn render(&self, format: OutputFormat) -> String {
        match (self, format) {
            (Cell::Int(i), _) => i.to_string(),
            (Cell::Num(v), OutputFormat::Csv) => format!("{v:.16e}"),
            (Cell::Num(v), OutputFormat::Table) => format!("{v:.10e}"),
            (Cell::Check(true), _) => "PASS".into(),
            (Cell::Check(false), _) => "FAIL".into(),
            (Cell::Empty, OutputFormat::Csv) => String::new(),
            (Cell::Empty, OutputFormat::Table) => "-".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn render(&self, format: OutputFormat) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.render(format)).collect())
            .collect();
        let mut out = String::new();
        match format {
            OutputFormat::Csv => {
                writeln!(out, "{}", self.headers.join(",")).unwrap();
                for r in &cells {
                    writeln!(out, "{}", r.join(",")).unwrap();
                }
            }
            OutputFormat::Table => {
                let widths: Vec<usize> = (0..self.headers.len())
                    .map(|j| {
                        cells
                            .iter()
                            .map(|r| r[j].len())
                            .chain([self.headers[j].len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |items: &[String]| {
                    items
                        .iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                let headers: Vec<String> = self.headers.iter().map(|h| h.to_string()).collect();
                writeln!(out, "{}", line(&headers)).unwrap();
                for r in &cells {
                    writeln!(out, "{}", line(r)).unwrap();
                }
            }
        }
        out
    }
}

pub fn convergence_table(trace: &ConvergenceTrace) -> Table {
    let (headers, rows): (Vec<&'static str>, Vec<Vec<Cell>>) = match trace.kind {
        TraceKind::Irreducible => (
            vec!["k", "s_k", "r_lo", "r_hi", "deviation", "bound", "check"],
            trace
                .rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::Int(r.k),
                        Cell::Num(r.scale),
                        Cell::Num(r.root.lo),
                        Cell::Num(r.root.hi),
                        Cell::Num(r.deviation),
                        Cell::opt(r.bound),
                        Cell::Check(r.holds),
                    ]
                })
                .collect(),
        ),
        TraceKind::Reducible => (
            vec![
                "k",
                "s_k",
                "r_lo",
                "r_hi",
                "b_lo",
                "b_hi",
                "deviation",
                "block_gap",
                "check",
            ],
            trace
                .rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::Int(r.k),
                        Cell::Num(r.scale),
                        Cell::Num(r.root.lo),
                        Cell::Num(r.root.hi),
                        Cell::opt(r.block_root.map(|b| b.lo)),
                        Cell::opt(r.block_root.map(|b| b.hi)),
                        Cell::Num(r.deviation),
                        Cell::opt(r.block_gap),
                        Cell::Check(r.holds),
                    ]
                })
                .collect(),
        ),
        TraceKind::Nilpotent => (
            vec![
                "k",
                "s_k",
                "r_lo",
                "r_hi",
                "deviation",
                "power_norm_root",
                "check",
            ],
            trace
                .rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::Int(r.k),
                        Cell::Num(r.scale),
                        Cell::Num(r.root.lo),
                        Cell::Num(r.root.hi),
                        Cell::Num(r.deviation),
                        Cell::opt(r.power_norm_root),
                        Cell::Check(r.holds),
                    ]
                })
                .collect(),
        ),
    };
    Table { headers, rows }
}

pub fn gelfand_table(trace: &GelfandTrace) -> Table {
    Table {
        headers: vec!["m", "f_m", "gap", "check"],
        rows: trace
            .rows
            .iter()
            .map(|r| {
                vec![
                    Cell::Int(r.m),
                    Cell::Num(r.f_m),
                    Cell::Num(r.gap),
                    Cell::Check(r.holds),
                ]
            })
            .collect(),
    }
}

pub fn demo_table(demo: &NonuniformityDemo) -> Table {
    Table {
        headers: vec!["alpha", "residual", "expected", "rel_error", "check"],
        rows: demo
            .rows
            .iter()
            .map(|r| {
                vec![
                    Cell::Num(r.alpha),
                    Cell::Num(r.residual),
                    Cell::Num(r.expected),
                    Cell::Num(r.rel_error),
                    Cell::Check(r.holds),
                ]
            })
            .collect(),
    }
}

pub fn probe_table(rows: &[ProbeRow]) -> Table {
    Table {
        headers: vec!["scale", "e_norm", "bound", "actual", "check"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    Cell::Num(r.scale),
                    Cell::Num(r.e_norm),
                    Cell::Num(r.bound),
                    Cell::Num(r.actual),
                    Cell::Check(r.holds),
                ]
            })
            .collect(),
    }
}
