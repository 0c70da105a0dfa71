//! Exact symbolic engine for torus-equivariant oriented cohomology of full
//! flag varieties and the multiplicative operations acting on it.
//!
//! The layers build on each other: [`scalar`] and [`ring`] give exact graded
//! coefficient rings, [`series`] truncated power series over them, [`fgl`]
//! formal group laws and their morphisms, [`roots`] root data and Weyl
//! groups, [`group_ring`] the formal group ring of the character lattice,
//! [`equivariant`] the fixed-point model with Schubert and dual bases, and
//! [`operations`] the localized operations and their coefficient tables.

pub mod error;
pub mod scalar;
mod poly;
pub mod ring;
pub mod series;
pub mod fgl;
pub mod roots;
pub mod group_ring;
pub mod equivariant;
pub mod operations;
pub mod expr;
pub mod checks;

pub use error::{Error, Result};
