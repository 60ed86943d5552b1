//! The algebras `R(nu)`: diagram words, the polynomial representation, the
//! normal-form engine and graded dimensions.

mod action;
mod basis;
mod element;
mod engine;
mod idempotents;
pub mod oracle;
mod relations;
mod word;

pub use action::{act_atoms, act_on_pol, act_terms, CrossingRule, PolState, StandardRule};
pub use basis::{enumerate_basis, gdim, reduced_word_of, permutations_between};
pub use element::{BasisKey, KLRElement};
pub use engine::KlrAlgebra;
pub use idempotents::{e_block, e_block_atoms, special_idempotent};
pub use relations::{check_instance, relation_instances, verify_relations, RelationInstance, RelationRhs, Standard, Terms};
pub use word::DiagramWord;

pub use crate::nilhecke::Atom;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KlrError {
    #[error("cannot parse diagram word: {0}")]
    Parse(String),
    #[error("atom {atom} out of range for {strands} strands")]
    IndexOutOfRange { atom: String, strands: usize },
    #[error("polynomial state has no component of the word's weight")]
    WeightMismatch,
    #[error(transparent)]
    Cartan(#[from] crate::cartan::CartanError),
}
