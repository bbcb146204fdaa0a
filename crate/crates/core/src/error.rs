use thiserror::Error;

use crate::choice::ChoiceWitness;
use crate::raf::Raf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("an alternative set needs at least two alternatives, got {0}")]
    TooFewAlternatives(usize),

    #[error("duplicate alternative label {0:?}")]
    DuplicateLabel(String),

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("value out of [0,1] at {label}: {value}")]
    OutOfRange { label: String, value: f64 },

    #[error("RAFs are defined over different alternative sets")]
    AlternativeSetMismatch,

    #[error("scale {0} is outside [0,1]")]
    ScaleOutOfRange(f64),

    #[error("invalid preference spec: {0}")]
    InvalidSpec(String),

    #[error("tolerance must lie in (0, 0.5], got {0}")]
    InvalidTolerance(f64),

    #[error("pointwise dominance fails at {label}: A = {a} < B = {b}")]
    DominanceHypothesis { label: String, a: f64, b: f64 },

    #[error("sequence terms are indexed from 1, got {0}")]
    TermIndex(u64),

    #[error("oracle violates weak dominance on the diagonal ray: {}", probes(*.member, *.non_member))]
    NonMonotoneMembership {
        member: Option<f64>,
        non_member: f64,
    },

    #[error("while computing utilities for the pair A = {a}, B = {b}: {source}")]
    InPair {
        a: Box<Raf>,
        b: Box<Raf>,
        #[source]
        source: Box<Error>,
    },

    #[error("menu must contain at least one item")]
    EmptyMenu,

    #[error("duplicate menu label {0:?}")]
    DuplicateMenuLabel(String),

    #[error("oracle violates connectedness or transitivity on this menu: {0}")]
    NoMaximalElement(ChoiceWitness),
}

fn probes(member: Option<f64>, non_member: f64) -> String {
    match member {
        Some(t) => format!("tA* ≽ A holds at t = {t} but fails at t = {non_member}"),
        None => format!("tA* ≽ A fails at t = {non_member}"),
    }
}
