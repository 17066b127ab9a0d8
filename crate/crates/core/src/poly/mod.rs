//! Graded-commutative polynomial arithmetic.

mod context;
mod graded;
mod monomial;

pub use context::{is_identifier, Context, GradedVariable, Role, VarId};
pub use graded::{ghost_count, monomial_degree, monomial_split, DegreeSplit, GradedPoly};
pub use monomial::{Monomial, Side};
