//! Minimal left and right Engel sinks of elements and automorphisms of finite
//! permutation groups, with the structural and arithmetic tooling needed to
//! check statements about them exhaustively on small groups.

pub mod automorphism;
pub mod catalog;
pub mod engel;
pub mod error;
pub mod group;
pub mod harness;
pub mod io;
pub mod numtheory;
pub mod perm;
pub mod structure;

pub use automorphism::{Automorphism, ExtensionGroup, Semidirect};
pub use error::{Error, Result};
pub use group::{FiniteGroup, Group, QuotientGroup, Subgroup};
pub use perm::Perm;
