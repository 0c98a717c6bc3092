//! Finite-dimensional commutative Banach algebras: characters, Gelfand
//! transform, radical, norms, involutions, operator models and group
//! algebras.

pub mod algebra;
pub mod corpus;
pub mod exec;
pub mod group;
pub mod involution;
pub mod io;
pub mod linalg;
pub mod norms;
pub mod operator;
pub mod spectrum;
pub mod tolerance;
pub mod verify;

pub use algebra::{Algebra, AlgebraError, Element, RawAlgebra};
pub use exec::Exec;
pub use spectrum::{Character, CharacterSpace};
pub use tolerance::Tolerances;
