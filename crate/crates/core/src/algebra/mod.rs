pub mod field;
pub mod irreducible;
pub mod modp;
pub mod multipoly;
pub mod qpoly;
pub mod ratfunc;
pub mod resultant;
pub mod roots;
pub mod unipoly;

pub use field::{rat, ratio, Field, Rational};
pub use multipoly::MultiPoly;
pub use ratfunc::RatFunc;
pub use unipoly::UniPoly;
