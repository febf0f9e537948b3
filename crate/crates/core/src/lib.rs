//! Partial groups, localities, partial normal subgroups and their quotients.
//!
//! Elements of every structure are dense indices `0..n` with `0` the
//! identity. Words are slices of such indices.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub type Elem = usize;

pub mod catalog;
pub mod elemset;
pub mod error;
pub mod group;
pub mod locality;
pub mod normal;
pub mod omega;
pub mod partial;
pub mod perm;
pub mod products;
pub mod quotient;
pub mod report;
pub mod suite;

pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use group::{FiniteGroup, Limits, Subgroup};
pub use locality::{build_locality, validate_locality, DeltaMode, DeltaSpec, Locality, Realization, SubId, SubLattice};
pub use omega::{compute_omega, OmegaPoset};
pub use partial::{check_axioms, AxiomReport, PartialGroup, Rule, Violation, Word, WordSummary};
pub use perm::Perm;
pub use report::{Check, Report};
