//! Relabeling symmetries of a Rauzy class.
//!
//! Every diagram automorphism commutes with the rotation map `T` and fixes
//! the orbit of the left letters, so it lies in the centralizer built by
//! [`build_candidate_group`]. That group is a product over degree classes
//! of `(Z/(k+1))^n ⋊ S_n`; [`phi`] is the sign homomorphism on it and
//! [`verify_theorem`] compares its kernel with the automorphism group
//! actually realized by the enumerated diagram.

mod frame;
mod group;
mod verify;

pub use frame::{phi, ClassCoords, DegreeClass, OrbitFrame, SemidirectElement, Sign};
pub use group::{
    automorphism_group, build_candidate_group, candidate_order_formula, find_lemma_witness,
    LemmaWitness, SymmetryGroup, WitnessSearch, MAX_GROUP_ORDER,
};
pub use verify::{
    verify_theorem, verify_theorem_with, Check, CheckStatus, Epsilon, VerificationReport,
    VerifyOptions, WitnessReport,
};
