//! Preferences over random availability functions (RAFs).
//!
//! A RAF assigns each alternative of a finite set the probability that it
//! will be available. This crate provides
//!
//! * RAF values and the dominance predicates between them ([`raf`]);
//! * preference oracles, built-in preference families and sampled checks
//!   of the order, weak-dominance and weak-continuity axioms
//!   ([`preference`]);
//! * the diagonal-ray utility `u(A) = inf {t : tA* ≽ A}`, bracketed by
//!   bisection, with the perturbation sequences that show pointwise
//!   dominance implies weak preference ([`wold`]);
//! * choice from finite menus by tournament and by utility ([`choice`]);
//! * the `availpref` command-line front end ([`cli`]).

pub mod choice;
pub mod cli;
pub mod error;
pub mod preference;
pub mod raf;
pub mod sampling;
pub mod wold;

pub use choice::{
    choose_by_utility, cross_validate_choice, maximal_set, ChoiceMethod, ChoiceResult, ChoiceWitness,
    CrossValidation, Menu, MenuItem,
};
pub use error::{Error, Result};
pub use preference::{
    check_order_axioms, falsify_weak_continuity, falsify_weak_dominance, AxiomReport, BuiltinOracle,
    FamilyLibrary, FnOracle, PreferenceOracle, PreferenceSpec,
};
pub use raf::{AlternativeSet, Raf};
pub use sampling::{RafSampler, SamplerKind};
pub use wold::{
    check_certificate, compute_u, lemma1_sequences, membership, validate_representation,
    PerturbationSequences, RepresentationReport, UtilityResult,
};
