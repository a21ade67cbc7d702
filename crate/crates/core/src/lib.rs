//! Exact algebra, heights, plane-curve resolution and rational-solution bounds for
//! first-order algebraic ODEs `f(t, y, y') = 0`.

pub mod algebra;
pub mod error;

pub use algebra::{rat, ratio, Field, MultiPoly, RatFunc, Rational, UniPoly};
pub use error::{Error, Result};
pub mod aode;
pub mod bounds;
pub mod curve;
pub mod heights;
pub mod text;

pub use aode::{
    degree_bound, find_rational_solutions, is_maximally_comparable, ms_index, normalize,
    verify_solution, BoundReport, DiffPoly, MSIndexReport, NormalizedAODE, SolutionSet,
};
pub use curve::{ProjPoint, ProjPoly};
pub mod corpus;
