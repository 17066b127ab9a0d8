//! Text and JSON forms of polynomials and models.

mod format;
mod model;
mod parse;

pub use format::{format_monomial, format_poly, CoeffText};
pub use model::{Model, ModelFile, ModelOptions, VarDecl};
pub use parse::{parse_poly, parse_poly_with_warnings};
