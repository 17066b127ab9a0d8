//! Groebner bases for submodules of free modules over the bosonic ring.

mod basis;
mod ideal;
mod order;
mod vector;

pub use basis::{groebner, prune_redundant, reduce, syzygies, ModuleBasis};
pub use ideal::{is_unit, normalize_primitive, BosonicRing};
pub use order::{degrevlex, Exp, ModuleOrderKind, Ring, TermOrder};
pub use vector::{Term, Vector};

/// Element of a finite free module over the bosonic ring.
pub type FreeModuleElement<F> = Vector<F>;
