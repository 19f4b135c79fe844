//! Exact character theory on explicit finite groups.
//!
//! Groups are multiplication tables ([`FiniteGroup`]); subgroups carry their
//! own table plus an embedding ([`Subgroup`]).  Class functions take values
//! in `Q(ζ_m)` with `m` the exponent of the ambient group.

mod character;
mod group;
pub mod modules;
mod sweeps;
pub mod zoo;

pub use character::{
    character_field, frobenius_check, induce, inner_product, irreducible_characters, linear_characters, mackey_check,
    restrict, ClassFunction, LinearCharacter,
};
pub use group::{double_cosets, FiniteGroup, Subgroup, ASSOCIATIVITY_CHECK_LIMIT};
pub use sweeps::{
    check_res_nontrivial, p_primary_part, sweep_prop_nh, sweep_prop_nh_with_primes, sweep_res_nontrivial, verify_prop_nh, CounterexampleReport,
    PropSweepReport, PropVerdict, ResSweepReport,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MackeyError {
    #[error("malformed group data: {0}")]
    Malformed(String),
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("not a normal subgroup")]
    NotNormal,
    #[error("subgroups of different groups")]
    DifferentParents,
    #[error("class function lives on a different group")]
    GroupMismatch,
    #[error("found {found} irreducible characters from monomial inductions, squared degrees do not reach {order}")]
    NotMonomial { found: usize, order: usize },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
}
