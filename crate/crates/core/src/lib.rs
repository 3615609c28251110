//! Exact dynamic time warping and geometric edit distance, with a quadratic
//! reference solver and a subquadratic boxed solver.

pub mod alignment;
pub mod compactdp;
pub mod dominance;
pub mod error;
pub mod gen;
pub mod metric;
pub mod model;
pub mod oracle;
pub mod preprocess;
pub mod scalar;
pub mod sequence;
pub mod staircase;

pub use alignment::{coupling_cost, matching_cost, Coupling, MonotoneMatching};
pub use compactdp::{
    dtw_subquadratic, ged_subquadratic, solve_preprocessed, solve_subquadratic, CompactOptions,
    CompactStats, PreprocessMode, SubquadraticOptions, SubquadraticSolution,
};
pub use error::{Error, Result};
pub use metric::{Metric, MetricKind};
pub use model::GridCostModel;
pub use oracle::{dtw_quadratic, ged_quadratic, solve_quadratic, QuadraticSolution};
pub use preprocess::{preprocess_direct, preprocess_faithful, GuessSpace, Preprocessed};
pub use scalar::{ArithMode, Ext, Float, Penalized, Rational, Scalar};
pub use sequence::{Point, PointSequence};
pub use staircase::{decompose, BoxGrid};
