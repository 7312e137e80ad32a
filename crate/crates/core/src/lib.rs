pub mod analysis;
pub mod decomposition;
pub mod error;
pub mod generator;
pub mod number;
pub mod ops;
pub mod range_set;
pub mod report;
pub mod spec;

pub use decomposition::{decompose, decompose_forced, Decomposition, Gap};
pub use error::{Error, Result};
pub use generator::{Generator, Piece, PieceExpr, Side};
pub use number::ExtRat;
pub use ops::{AssocOp, OpKind};
pub use range_set::{Interval, RangeSet};
pub use report::{run, Finding, Method, Report, RunOptions};
pub use spec::{parse_spec, Command, ScenarioSpec, SpecDoc};
