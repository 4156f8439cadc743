//! Replays of the convergence arguments on concrete matrix sequences.

pub mod gelfand;
pub mod report;
pub mod sequence;
pub mod trace;

pub use gelfand::{
    gelfand_trace, gelfand_values, nonuniformity_demo, GelfandRow, GelfandTrace, NonuniformityDemo,
};
pub use report::{OutputFormat, Table};
pub use sequence::{Schedule, SequenceSpec, Term};
pub use trace::{
    classify, run_irreducible_trace, run_nilpotent_trace, run_reducible_trace, run_trace,
    ConvergenceTrace, TraceKind, TraceRow,
};
