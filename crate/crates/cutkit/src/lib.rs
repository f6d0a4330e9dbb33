//! File formats, solver dispatch, reports and experiment tables behind the
//! `cutkit` command line tool.

pub mod experiment;
pub mod format;
pub mod gen;
pub mod report;
pub mod solve;

pub use format::{FileFormat, Graph, Instance};
pub use report::{CertStatus, Payload, SolutionReport};
pub use solve::{Outcome, Problem, Request, SolveError, Variant};
