//! Falsification of weak continuity with parametric sequence families.
//!
//! Random sequences almost never land on the loci where a relation jumps,
//! so the search runs over a fixed library of closed-form families
//! `A(n) = A + dA/n`, `B(n) = B + dB/n` aimed at typical discontinuities.
//! Finding nothing means "not falsified", never "continuous".

use serde::{Deserialize, Serialize};

use super::PreferenceOracle;
use crate::error::{Error, Result};
use crate::raf::{AlternativeSet, Raf};

/// A pair of sequences converging linearly in `1/n` to `(limit_a, limit_b)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceFamily {
    pub name: String,
    pub limit_a: Raf,
    pub drift_a: Vec<f64>,
    pub limit_b: Raf,
    pub drift_b: Vec<f64>,
}

impl SequenceFamily {
    /// Fails unless every term is a valid RAF. Terms interpolate between
    /// the limit and the first term, so checking `n = 1` suffices.
    pub fn new(
        name: impl Into<String>,
        limit_a: Raf,
        drift_a: Vec<f64>,
        limit_b: Raf,
        drift_b: Vec<f64>,
    ) -> Result<Self> {
        limit_a.ensure_same_alternatives(&limit_b)?;
        let family = Self {
            name: name.into(),
            limit_a,
            drift_a,
            limit_b,
            drift_b,
        };
        family.term(1)?;
        Ok(family)
    }

    fn shifted(limit: &Raf, drift: &[f64], n: u64) -> Result<Raf> {
        if drift.len() != limit.len() {
            return Err(Error::LengthMismatch {
                expected: limit.len(),
                got: drift.len(),
            });
        }
        let n = n as f64;
        let values = limit
            .values()
            .iter()
            .zip(drift)
            .map(|(x, d)| x + d / n)
            .collect();
        Raf::new(limit.alternatives(), values)
    }

    pub fn term(&self, n: u64) -> Result<(Raf, Raf)> {
        if n == 0 {
            return Err(Error::TermIndex(n));
        }
        Ok((
            Self::shifted(&self.limit_a, &self.drift_a, n)?,
            Self::shifted(&self.limit_b, &self.drift_b, n)?,
        ))
    }
}

/// A falsifying family: the first `depth` terms all have `A(n) ≻ B(n)`,
/// yet the limits have `B ≻ A`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuityWitness {
    pub family: SequenceFamily,
    pub depth: u64,
}

impl ContinuityWitness {
    pub fn confirm<O: PreferenceOracle + ?Sized>(&self, oracle: &O) -> Result<bool> {
        violates(oracle, &self.family, self.depth)
    }
}

fn violates<O: PreferenceOracle + ?Sized>(
    oracle: &O,
    family: &SequenceFamily,
    depth: u64,
) -> Result<bool> {
    if depth == 0 {
        return Ok(false);
    }
    for n in 1..=depth {
        let (a, b) = family.term(n)?;
        if !oracle.strictly_prefers(&a, &b)? {
            return Ok(false);
        }
    }
    oracle.strictly_prefers(&family.limit_b, &family.limit_a)
}

/// The generator of candidate families.
#[derive(Clone, Debug, Default)]
pub struct FamilyLibrary {
    families: Vec<SequenceFamily>,
}

impl FamilyLibrary {
    pub fn new() -> Self {
        Self::default()
    }

    /// The built-in probes over `alts`:
    ///
    /// * diagonal approach: `(t ± 1/4n)A*` against `tA*`, from both sides;
    /// * coordinate bump: two RAFs that tie on every coordinate but `j`,
    ///   one of them nudged by `1/4n` on coordinate `i`;
    /// * straddle: a diagonal sequence `(c - δ/n)A*` or `(c + δ/n)A*`
    ///   approaching a declared locus `c`, against fixed off-diagonal RAFs,
    ///   with `δ = min(c, 1 - c)/2`.
    ///
    /// `loci` are the declared discontinuity levels; `0.5` is always
    /// probed.
    pub fn standard(alts: &AlternativeSet, loci: &[f64]) -> Self {
        let mut lib = Self::new();
        let k = alts.len();
        let diag = |t: f64| Raf::scale_top(t, alts).expect("level in [0,1]");
        let ones = |s: f64| vec![s; k];
        let zeros = || vec![0.0; k];

        for t in [0.25, 0.5, 0.75] {
            lib.add(SequenceFamily::new("diagonal-above", diag(t), ones(0.25), diag(t), zeros()));
            lib.add(SequenceFamily::new("diagonal-below", diag(t), zeros(), diag(t), ones(-0.25)));
        }

        let with = |base: f64, j: usize, v: f64| {
            let mut values = vec![base; k];
            values[j] = v;
            Raf::new(alts, values).expect("values in [0,1]")
        };
        let unit = |i: usize, s: f64| {
            let mut d = vec![0.0; k];
            d[i] = s;
            d
        };
        for i in 0..k {
            for j in (0..k).filter(|&j| j != i) {
                lib.add(SequenceFamily::new(
                    format!("bump-a[{}]-vs-{}", alts.label(i), alts.label(j)),
                    with(0.5, j, 0.0),
                    unit(i, 0.25),
                    with(0.5, j, 1.0),
                    zeros(),
                ));
                lib.add(SequenceFamily::new(
                    format!("bump-b[{}]-vs-{}", alts.label(i), alts.label(j)),
                    with(0.5, j, 0.0),
                    zeros(),
                    with(0.5, j, 1.0),
                    unit(i, -0.25),
                ));
            }
        }

        let mut levels = vec![0.5];
        for &c in loci {
            if c > 0.0 && c < 1.0 && !levels.contains(&c) {
                levels.push(c);
            }
        }
        for c in levels {
            let delta = c.min(1.0 - c) / 2.0;
            for j in 0..k {
                lib.add(SequenceFamily::new(
                    format!("straddle-below-b@{c}/{}", alts.label(j)),
                    with(1.0, j, c / 2.0),
                    zeros(),
                    diag(c),
                    ones(-delta),
                ));
                lib.add(SequenceFamily::new(
                    format!("straddle-above-a@{c}/{}", alts.label(j)),
                    diag(c),
                    ones(delta),
                    with(c - delta, j, 1.0),
                    zeros(),
                ));
                lib.add(SequenceFamily::new(
                    format!("straddle-below-a@{c}/{}", alts.label(j)),
                    diag(c),
                    ones(-delta),
                    with(c / 2.0, j, 0.0),
                    zeros(),
                ));
            }
        }
        lib
    }

    fn add(&mut self, family: Result<SequenceFamily>) {
        self.families
            .push(family.expect("built-in families have valid terms"));
    }

    pub fn push(&mut self, family: SequenceFamily) {
        self.families.push(family);
    }

    pub fn families(&self) -> &[SequenceFamily] {
        &self.families
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }
}

/// Returns the first family in `library` whose first `depth` terms are
/// strictly ordered one way while the limits are strictly ordered the
/// other way. `None` only means the library found nothing.
pub fn falsify_weak_continuity<O: PreferenceOracle + ?Sized>(
    oracle: &O,
    library: &FamilyLibrary,
    depth: u64,
) -> Result<Option<ContinuityWitness>> {
    for family in library.families() {
        oracle.alternatives().ensure_same(family.limit_a.alternatives())?;
        if violates(oracle, family, depth)? {
            let witness = ContinuityWitness {
                family: family.clone(),
                depth,
            };
            debug_assert!(witness.confirm(oracle)?);
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preference::PreferenceSpec;

    fn ab() -> AlternativeSet {
        AlternativeSet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn lexicographic_bump_family_is_a_witness() {
        let alts = ab();
        let lex = PreferenceSpec::Lexicographic {
            priority: vec!["a".into(), "b".into()],
        }
        .build(&alts)
        .unwrap();
        let family = SequenceFamily::new(
            "bump",
            Raf::new(&alts, vec![0.5, 0.0]).unwrap(),
            vec![0.25, 0.0],
            Raf::new(&alts, vec![0.5, 1.0]).unwrap(),
            vec![0.0, 0.0],
        )
        .unwrap();
        let (a1, b1) = family.term(1).unwrap();
        assert_eq!(a1.values(), [0.75, 0.0]);
        assert_eq!(b1.values(), [0.5, 1.0]);
        assert_eq!(family.term(4).unwrap().0.values(), [0.5 + 1.0 / 16.0, 0.0]);
        let w = ContinuityWitness { family, depth: 100 };
        assert!(w.confirm(&lex).unwrap());

        let lib = FamilyLibrary::standard(&alts, &[]);
        let found = falsify_weak_continuity(&lex, &lib, 100).unwrap().unwrap();
        assert!(found.confirm(&lex).unwrap());
        // the first witness the library reaches is exactly the family above
        assert_eq!(found.family.limit_a.values(), [0.5, 0.0]);
        assert_eq!(found.family.drift_a, [0.25, 0.0]);
        assert_eq!(found.family.limit_b.values(), [0.5, 1.0]);
    }

    #[test]
    fn threshold_straddle_is_a_witness() {
        let alts = ab();
        let spec = PreferenceSpec::Threshold { cutoff: 0.5 };
        let th = spec.build(&alts).unwrap();
        let lib = FamilyLibrary::standard(&alts, &spec.discontinuity_loci());
        let w = falsify_weak_continuity(&th, &lib, 10).unwrap().unwrap();
        assert!(w.confirm(&th).unwrap());
        assert!(w.family.name.starts_with("straddle"));
        // B(n) = (0.5 - 1/4n)A*
        assert_eq!(w.family.limit_b, Raf::scale_top(0.5, &alts).unwrap());
        assert_eq!(w.family.drift_b, [-0.25, -0.25]);
    }

    #[test]
    fn continuous_scores_are_not_falsified() {
        let alts = AlternativeSet::numbered(4).unwrap();
        let lib = FamilyLibrary::standard(&alts, &[0.3, 0.8]);
        for spec in [
            PreferenceSpec::equal_weights(4),
            PreferenceSpec::Additive {
                weights: vec![0.1, 0.2, 0.3, 0.4],
            },
            PreferenceSpec::Min,
            PreferenceSpec::Geometric,
            PreferenceSpec::AntiMonotone,
        ] {
            let o = spec.build(&alts).unwrap();
            assert_eq!(falsify_weak_continuity(&o, &lib, 100).unwrap(), None, "{spec:?}");
        }
    }

    #[test]
    fn invalid_families_are_rejected() {
        let alts = ab();
        let top = Raf::top(&alts);
        assert!(SequenceFamily::new("up", top.clone(), vec![0.1, 0.0], top.clone(), vec![0.0, 0.0]).is_err());
        let f = SequenceFamily::new("still", top.clone(), vec![0.0, 0.0], top, vec![0.0, 0.0]).unwrap();
        assert!(matches!(f.term(0), Err(Error::TermIndex(0))));
    }

    #[test]
    fn zero_depth_never_falsifies() {
        let alts = ab();
        let lex = PreferenceSpec::Lexicographic {
            priority: vec!["a".into(), "b".into()],
        }
        .build(&alts)
        .unwrap();
        let lib = FamilyLibrary::standard(&alts, &[]);
        assert_eq!(falsify_weak_continuity(&lex, &lib, 0).unwrap(), None);
    }
}
