#![no_std]

extern crate alloc;

pub mod algebra;
pub mod duality;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod functors;
pub mod matrix;
pub mod module;
pub mod poly;
pub mod stable;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::{Matrix, Subspace};
pub use algebra::{Algebra, Quiver, Relation};
pub use module::{hom, HomSpace, Module, Morphism, Side};
