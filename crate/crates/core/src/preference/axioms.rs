use std::fmt;

use serde::{Deserialize, Serialize};

use super::continuity::ContinuityWitness;
use super::PreferenceOracle;
use crate::error::Result;
use crate::raf::Raf;
use crate::sampling::RafSampler;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Reflexivity,
    Connectedness,
    Transitivity,
    WeakDominance,
    WeakContinuity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::Connectedness => "connectedness",
            Axiom::Transitivity => "transitivity",
            Axiom::WeakDominance => "weak dominance",
            Axiom::WeakContinuity => "weak continuity",
        })
    }
}

/// Outcome of a sampled check. Universally quantified axioms are never
/// proved by sampling: `PassedSampled` means no sample violated the axiom,
/// `NotFalsified` means a falsifier searched and found nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    PassedSampled,
    NotFalsified,
    Falsified,
}

/// A replayable counterexample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Witness {
    /// `a ≽ a` fails.
    Reflexivity { a: Raf },
    /// Neither `a ≽ b` nor `b ≽ a`.
    Connectedness { a: Raf, b: Raf },
    /// `a ≽ b`, `b ≽ c`, but not `a ≽ c`.
    Transitivity { a: Raf, b: Raf, c: Raf },
    /// `a` strictly dominates `b` but `a ≻ b` fails.
    WeakDominance { a: Raf, b: Raf },
    WeakContinuity(ContinuityWitness),
}

impl Witness {
    pub fn axiom(&self) -> Axiom {
        match self {
            Witness::Reflexivity { .. } => Axiom::Reflexivity,
            Witness::Connectedness { .. } => Axiom::Connectedness,
            Witness::Transitivity { .. } => Axiom::Transitivity,
            Witness::WeakDominance { .. } => Axiom::WeakDominance,
            Witness::WeakContinuity(_) => Axiom::WeakContinuity,
        }
    }

    /// Replays the counterexample against `oracle`; true iff the violation
    /// reproduces.
    pub fn confirm<O: PreferenceOracle + ?Sized>(&self, oracle: &O) -> Result<bool> {
        Ok(match self {
            Witness::Reflexivity { a } => !oracle.weak_prefers(a, a)?,
            Witness::Connectedness { a, b } => {
                !oracle.weak_prefers(a, b)? && !oracle.weak_prefers(b, a)?
            }
            Witness::Transitivity { a, b, c } => {
                oracle.weak_prefers(a, b)?
                    && oracle.weak_prefers(b, c)?
                    && !oracle.weak_prefers(a, c)?
            }
            Witness::WeakDominance { a, b } => {
                a.strictly_dominates(b)? && !oracle.strictly_prefers(a, b)?
            }
            Witness::WeakContinuity(w) => w.confirm(oracle)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomOutcome {
    pub axiom: Axiom,
    pub verdict: Verdict,
    /// Number of instances examined (singletons, pairs, triples, or
    /// sequence families).
    pub samples: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub oracle: String,
    pub seed: u64,
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn new(oracle: impl Into<String>, seed: u64) -> Self {
        Self {
            oracle: oracle.into(),
            seed,
            outcomes: Vec::new(),
        }
    }

    pub fn push(&mut self, outcome: AxiomOutcome) {
        self.outcomes.push(outcome);
    }

    pub fn outcome(&self, axiom: Axiom) -> Option<&AxiomOutcome> {
        self.outcomes.iter().find(|o| o.axiom == axiom)
    }

    pub fn any_falsified(&self) -> bool {
        self.outcomes.iter().any(|o| o.verdict == Verdict::Falsified)
    }
}

fn outcome(axiom: Axiom, samples: usize, witness: Option<Witness>, clean: Verdict) -> AxiomOutcome {
    AxiomOutcome {
        axiom,
        verdict: if witness.is_some() {
            Verdict::Falsified
        } else {
            clean
        },
        samples,
        witness,
    }
}

/// Returns the first witness that the oracle re-confirms.
fn first_confirmed<O, I>(oracle: &O, candidates: I) -> Result<Option<Witness>>
where
    O: PreferenceOracle + ?Sized,
    I: IntoIterator<Item = Witness>,
{
    for w in candidates {
        if w.confirm(oracle)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Samples singletons (reflexivity), pairs (connectedness) and triples
/// (transitivity, in every ordering). The sample set is drawn in full
/// before any query is made.
pub fn check_order_axioms<O: PreferenceOracle + ?Sized>(
    oracle: &O,
    sampler: &mut RafSampler,
    n_pairs: usize,
    n_triples: usize,
) -> Result<AxiomReport> {
    oracle.alternatives().ensure_same(sampler.alternatives())?;
    let singles = sampler.sample_many(n_pairs);
    let pairs = sampler.sample_pairs(n_pairs);
    let triples: Vec<[Raf; 3]> = (0..n_triples)
        .map(|_| [sampler.sample(), sampler.sample(), sampler.sample()])
        .collect();

    let mut report = AxiomReport::new(oracle.name(), sampler.seed());

    let reflexivity = first_confirmed(
        oracle,
        singles.iter().map(|a| Witness::Reflexivity { a: a.clone() }),
    )?;
    report.push(outcome(Axiom::Reflexivity, singles.len(), reflexivity, Verdict::PassedSampled));

    let connectedness = first_confirmed(
        oracle,
        pairs.iter().map(|(a, b)| Witness::Connectedness {
            a: a.clone(),
            b: b.clone(),
        }),
    )?;
    report.push(outcome(Axiom::Connectedness, pairs.len(), connectedness, Verdict::PassedSampled));

    const ORDERINGS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let transitivity = first_confirmed(
        oracle,
        triples.iter().flat_map(|t| {
            ORDERINGS.iter().map(move |&[i, j, k]| Witness::Transitivity {
                a: t[i].clone(),
                b: t[j].clone(),
                c: t[k].clone(),
            })
        }),
    )?;
    report.push(outcome(Axiom::Transitivity, triples.len(), transitivity, Verdict::PassedSampled));

    Ok(report)
}

/// Searches for a strictly dominating pair that is not strictly preferred.
/// The canonical pair `(top, bottom)` is always probed first.
pub fn falsify_weak_dominance<O: PreferenceOracle + ?Sized>(
    oracle: &O,
    sampler: &mut RafSampler,
    n_pairs: usize,
) -> Result<Option<(Raf, Raf)>> {
    let alts = oracle.alternatives();
    alts.ensure_same(sampler.alternatives())?;
    let mut pairs = vec![(Raf::top(alts), Raf::bottom(alts))];
    pairs.extend((0..n_pairs).map(|_| sampler.sample_strictly_dominated_pair()));
    let found = first_confirmed(
        oracle,
        pairs.into_iter().map(|(a, b)| Witness::WeakDominance { a, b }),
    )?;
    Ok(found.map(|w| match w {
        Witness::WeakDominance { a, b } => (a, b),
        _ => unreachable!(),
    }))
}

/// Runs [`falsify_weak_dominance`] and packages the result for an [`AxiomReport`].
pub fn weak_dominance_outcome<O: PreferenceOracle + ?Sized>(
    oracle: &O,
    sampler: &mut RafSampler,
    n_pairs: usize,
) -> Result<AxiomOutcome> {
    let witness = falsify_weak_dominance(oracle, sampler, n_pairs)?
        .map(|(a, b)| Witness::WeakDominance { a, b });
    Ok(outcome(Axiom::WeakDominance, n_pairs + 1, witness, Verdict::PassedSampled))
}

pub fn weak_continuity_outcome(families: usize, witness: Option<ContinuityWitness>) -> AxiomOutcome {
    outcome(
        Axiom::WeakContinuity,
        families,
        witness.map(Witness::WeakContinuity),
        Verdict::NotFalsified,
    )
}
