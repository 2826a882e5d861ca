//! Automorphism groups of finite relational structures.
//!
//! Structures over a fixed vocabulary are enumerated or sampled, their
//! automorphism groups computed and classified, and the results aggregated
//! into censuses keyed by support size and group class. A small exact
//! toolkit for the group-theoretic identities behind those censuses lives in
//! [`theory`].

pub mod automorphism;
pub mod census;
pub mod classify;
pub mod cli;
pub mod error;
mod format;
pub mod group;
mod iso;
mod layout;
pub mod perm;
pub mod structure;
pub mod subgroups;
pub mod theory;
pub mod vocab;

pub use automorphism::{automorphism_group, canonical_form, profile, unlabelled_count, AutProfile};
pub use census::{run_census, Census, CensusKey, CensusReport, Mode, Predicate};
pub use classify::{are_isomorphic, classify, GroupClass};
pub use error::{Error, Result};
pub use group::{OrbitStats, PermGroup};
pub use layout::{slot_count, SlotLayout};
pub use perm::Permutation;
pub use structure::{enumerate_structures, sample_structure, Structure, StructureEncoding};
pub use vocab::{StructureClass, Vocabulary};
