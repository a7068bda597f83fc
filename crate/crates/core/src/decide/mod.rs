//! Exact decision procedures returning checkable witnesses.

pub mod joint;
pub mod relative;
pub mod rokhlin;
pub mod single;
pub mod verdict;

pub use joint::{
    decide_commuting_joint, decide_joint_polyfamilies, decide_joint_powers,
    witness_same_modulus_triple, TripleWitness,
};
pub use relative::{decide_relative_joint_unipotent, relative_fixed_vector};
pub use rokhlin::check_rokhlin_sufficient;
pub use single::{decide_element_mixing, decide_polyfamily_mixing, element_witness, ElementWitness};
pub use verdict::{big_to_json, Answer, Reason, Verdict};
