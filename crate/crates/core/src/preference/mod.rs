//! Preference oracles over RAFs and sampled checks of the order and
//! regularity axioms.
//!
//! An oracle answers only the weak query `A ≽ B`; strict preference and
//! indifference are derived from two weak queries.

mod axioms;
mod builtin;
mod continuity;

pub use axioms::{
    check_order_axioms, falsify_weak_dominance, weak_continuity_outcome, weak_dominance_outcome,
    Axiom, AxiomOutcome, AxiomReport, Verdict, Witness,
};
pub use builtin::{BuiltinOracle, PreferenceSpec};
pub use continuity::{falsify_weak_continuity, ContinuityWitness, FamilyLibrary, SequenceFamily};

use crate::error::Result;
use crate::raf::{AlternativeSet, Raf};

/// A total weak-preference relation on the RAFs over one alternative set.
///
/// Implementations must be deterministic. Only [`query`](Self::query) is
/// required; the provided methods check alternative sets and derive the
/// asymmetric and symmetric parts.
pub trait PreferenceOracle {
    fn alternatives(&self) -> &AlternativeSet;

    fn name(&self) -> &str;

    /// `a ≽ b`. Both arguments are over [`alternatives`](Self::alternatives).
    fn query(&self, a: &Raf, b: &Raf) -> bool;

    fn weak_prefers(&self, a: &Raf, b: &Raf) -> Result<bool> {
        self.alternatives().ensure_same(a.alternatives())?;
        self.alternatives().ensure_same(b.alternatives())?;
        Ok(self.query(a, b))
    }

    /// `a ≻ b`: `a ≽ b` and not `b ≽ a`.
    fn strictly_prefers(&self, a: &Raf, b: &Raf) -> Result<bool> {
        Ok(self.weak_prefers(a, b)? && !self.weak_prefers(b, a)?)
    }

    /// `a ∼ b`: both weak queries hold.
    fn indifferent(&self, a: &Raf, b: &Raf) -> Result<bool> {
        Ok(self.weak_prefers(a, b)? && self.weak_prefers(b, a)?)
    }
}

impl<O: PreferenceOracle + ?Sized> PreferenceOracle for &O {
    fn alternatives(&self) -> &AlternativeSet {
        (**self).alternatives()
    }

    fn name(&self) -> &str {
        (**self).name()
    }

    fn query(&self, a: &Raf, b: &Raf) -> bool {
        (**self).query(a, b)
    }
}

impl<O: PreferenceOracle + ?Sized> PreferenceOracle for Box<O> {
    fn alternatives(&self) -> &AlternativeSet {
        (**self).alternatives()
    }

    fn name(&self) -> &str {
        (**self).name()
    }

    fn query(&self, a: &Raf, b: &Raf) -> bool {
        (**self).query(a, b)
    }
}

/// An oracle backed by a user-supplied comparison.
pub struct FnOracle<F> {
    alts: AlternativeSet,
    name: String,
    cmp: F,
}

impl<F> FnOracle<F>
where
    F: Fn(&Raf, &Raf) -> bool,
{
    pub fn new(alts: &AlternativeSet, name: impl Into<String>, cmp: F) -> Self {
        Self {
            alts: alts.clone(),
            name: name.into(),
            cmp,
        }
    }
}

impl<F> PreferenceOracle for FnOracle<F>
where
    F: Fn(&Raf, &Raf) -> bool,
{
    fn alternatives(&self) -> &AlternativeSet {
        &self.alts
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn query(&self, a: &Raf, b: &Raf) -> bool {
        (self.cmp)(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn derived_relations_from_a_closure() {
        let alts = AlternativeSet::new(["a", "b"]).unwrap();
        let by_first = FnOracle::new(&alts, "first", |a: &Raf, b: &Raf| a.get(0) >= b.get(0));
        let x = Raf::new(&alts, vec![0.5, 0.1]).unwrap();
        let y = Raf::new(&alts, vec![0.5, 0.9]).unwrap();
        let z = Raf::new(&alts, vec![0.2, 0.9]).unwrap();
        assert!(by_first.indifferent(&x, &y).unwrap());
        assert!(by_first.strictly_prefers(&x, &z).unwrap());
        assert!(!by_first.strictly_prefers(&z, &x).unwrap());
        assert_eq!(by_first.name(), "first");
    }

    #[test]
    fn foreign_rafs_are_rejected() {
        let alts = AlternativeSet::new(["a", "b"]).unwrap();
        let other = AlternativeSet::new(["a", "c"]).unwrap();
        let o = FnOracle::new(&alts, "any", |_: &Raf, _: &Raf| true);
        let r = Raf::top(&other);
        assert!(matches!(o.weak_prefers(&r, &r), Err(Error::AlternativeSetMismatch)));
    }
}
