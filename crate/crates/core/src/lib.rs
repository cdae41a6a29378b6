//! Exact computational group theory for the fundamental groups of Inoue and
//! primary Kodaira surfaces.
//!
//! The crate covers the groups ℤ³⋊ℤ, H(r)⋊ℤ and H(r)×ℤ, their finite
//! quotients as explicit multiplication tables, and brute-force checks of the
//! bounds on normal abelian subgroups of those quotients.

pub mod exactmat;
pub mod heis;
pub mod numth;
pub mod quotient;
pub mod suite;
pub mod wang;
pub mod wire;
