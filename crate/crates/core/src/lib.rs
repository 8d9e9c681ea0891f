//! Exact computations of cohomological support for modules over group algebras of
//! finite abelian p-groups: Koszul objects, lattices of specialization-closed sets,
//! restriction and induction of supports, F-isomorphism checks and the dg BGG
//! correspondence on finite windows.

pub mod bggdg;
pub mod error;
pub mod field;
pub mod homalg;
pub mod lattice;
pub mod matrix;
pub mod modrep;
pub mod poly;
pub mod quillen;
pub mod rankvariety;

pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use matrix::Matrix;
