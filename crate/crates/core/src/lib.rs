//! Exact computation with the mod 2 Steenrod algebra, its finite
//! subalgebras `A(n)`, and finite modules over them.

pub mod gf2;
pub mod milnor;
pub mod module;
pub mod catalogue;
pub mod resolution;
pub mod unstable;
pub mod obstruction;
pub mod suite;
