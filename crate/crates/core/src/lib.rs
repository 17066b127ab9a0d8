//! Exact engine for the BV extension of finite-dimensional gauge theories.
//!
//! Pipeline: Tate resolution of the Jacobian ring ([`tate`]), the type-β
//! extended space, the master-equation solver ([`cme`]) and the antibracket
//! ([`bracket`]). [`u2`] holds the U(2) matrix model.

pub mod bracket;
pub mod cme;
pub mod coeff;
pub mod error;
pub mod groebner;
pub mod io;
pub mod poly;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod tate;
pub mod u2;

pub use coeff::{Coefficient, ParamPoly};
pub use error::{Error, Result};
pub use poly::{Context, GradedPoly, GradedVariable, Monomial, Role, Side, VarId};
pub use scalar::{Field, Rational};

/// Polynomials over rational functions in the declared parameters.
pub type Poly = GradedPoly<Coefficient>;
/// Parameter-free polynomials.
pub type RationalPoly = GradedPoly<Rational>;
