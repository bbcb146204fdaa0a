use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::PreferenceOracle;
use crate::error::{Error, Result};
use crate::raf::{AlternativeSet, Raf};

const WEIGHT_SUM_SLACK: f64 = 1e-12;

/// Declarative description of a built-in preference family.
///
/// | kind            | `A ≽ B` iff                                                  |
/// |-----------------|--------------------------------------------------------------|
/// | `additive`      | `Σ w(x)A(x) >= Σ w(x)B(x)`                                   |
/// | `min`           | `min A >= min B`                                             |
/// | `geometric`     | `Π A(x) >= Π B(x)`                                           |
/// | `lexicographic` | first alternative in priority order where they differ favors A |
/// | `anti_monotone` | `-mean A >= -mean B`                                         |
/// | `threshold`     | `(min A >= c, mean A) >= (min B >= c, mean B)` lexicographically |
/// | `never`         | never (a deliberately broken relation)                       |
///
/// Score comparisons use exact `>=` on doubles so indifference stays
/// symmetric.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PreferenceSpec {
    Additive { weights: Vec<f64> },
    Min,
    Geometric,
    Lexicographic { priority: Vec<String> },
    AntiMonotone,
    Threshold { cutoff: f64 },
    Never,
}

impl PreferenceSpec {
    pub fn equal_weights(n: usize) -> Self {
        PreferenceSpec::Additive {
            weights: vec![1.0 / n as f64; n],
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            PreferenceSpec::Additive { .. } => "additive",
            PreferenceSpec::Min => "min",
            PreferenceSpec::Geometric => "geometric",
            PreferenceSpec::Lexicographic { .. } => "lexicographic",
            PreferenceSpec::AntiMonotone => "anti_monotone",
            PreferenceSpec::Threshold { .. } => "threshold",
            PreferenceSpec::Never => "never",
        }
    }

    /// Availability levels where the relation is known to jump; used to aim
    /// continuity probes.
    pub fn discontinuity_loci(&self) -> Vec<f64> {
        match self {
            PreferenceSpec::Threshold { cutoff } => vec![*cutoff],
            _ => Vec::new(),
        }
    }

    /// The alternative set implied by the spec alone, when it names or
    /// counts alternatives.
    pub fn implied_alternatives(&self) -> Option<Result<AlternativeSet>> {
        match self {
            PreferenceSpec::Additive { weights } => Some(AlternativeSet::numbered(weights.len())),
            PreferenceSpec::Lexicographic { priority } => {
                Some(AlternativeSet::new(priority.iter().cloned()))
            }
            _ => None,
        }
    }

    pub fn build(&self, alts: &AlternativeSet) -> Result<BuiltinOracle> {
        BuiltinOracle::new(self.clone(), alts)
    }

    fn validate(&self, alts: &AlternativeSet) -> Result<Rule> {
        match self {
            PreferenceSpec::Additive { weights } => {
                if weights.len() != alts.len() {
                    return Err(Error::InvalidSpec(format!(
                        "additive: {} weights for {} alternatives",
                        weights.len(),
                        alts.len()
                    )));
                }
                if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
                    return Err(Error::InvalidSpec(format!(
                        "additive: weight {w} is not strictly positive"
                    )));
                }
                let sum: f64 = weights.iter().sum();
                if (sum - 1.0).abs() > WEIGHT_SUM_SLACK {
                    return Err(Error::InvalidSpec(format!(
                        "additive: weights sum to {sum}, not 1"
                    )));
                }
                Ok(Rule::Score(Score::Weighted(weights.clone())))
            }
            PreferenceSpec::Min => Ok(Rule::Score(Score::Min)),
            PreferenceSpec::Geometric => Ok(Rule::Score(Score::Product)),
            PreferenceSpec::AntiMonotone => Ok(Rule::Score(Score::NegMean)),
            PreferenceSpec::Lexicographic { priority } => {
                if priority.len() != alts.len() {
                    return Err(Error::InvalidSpec(format!(
                        "lexicographic: priority lists {} alternatives, expected {}",
                        priority.len(),
                        alts.len()
                    )));
                }
                let mut order = Vec::with_capacity(priority.len());
                for label in priority {
                    let i = alts.index_of(label).ok_or_else(|| {
                        Error::InvalidSpec(format!("lexicographic: unknown alternative {label:?}"))
                    })?;
                    if order.contains(&i) {
                        return Err(Error::InvalidSpec(format!(
                            "lexicographic: {label:?} listed twice"
                        )));
                    }
                    order.push(i);
                }
                Ok(Rule::Lexicographic(order))
            }
            PreferenceSpec::Threshold { cutoff } => {
                if !(*cutoff > 0.0 && *cutoff < 1.0) {
                    return Err(Error::InvalidSpec(format!(
                        "threshold: cutoff {cutoff} is outside (0,1)"
                    )));
                }
                Ok(Rule::Threshold(*cutoff))
            }
            PreferenceSpec::Never => Ok(Rule::Never),
        }
    }
}

#[derive(Clone, Debug)]
enum Score {
    Weighted(Vec<f64>),
    Min,
    Product,
    NegMean,
}

impl Score {
    fn eval(&self, v: &[f64]) -> f64 {
        match self {
            Score::Weighted(w) => w.iter().zip(v).map(|(w, x)| w * x).sum(),
            Score::Min => v.iter().copied().fold(f64::INFINITY, f64::min),
            Score::Product => v.iter().product(),
            Score::NegMean => -(v.iter().sum::<f64>() / v.len() as f64),
        }
    }
}

#[derive(Clone, Debug)]
enum Rule {
    Score(Score),
    Lexicographic(Vec<usize>),
    Threshold(f64),
    Never,
}

/// Oracle for a [`PreferenceSpec`] over a fixed alternative set.
#[derive(Clone, Debug)]
pub struct BuiltinOracle {
    spec: PreferenceSpec,
    alts: AlternativeSet,
    name: String,
    rule: Rule,
}

impl BuiltinOracle {
    pub fn new(spec: PreferenceSpec, alts: &AlternativeSet) -> Result<Self> {
        let rule = spec.validate(alts)?;
        Ok(Self {
            name: spec.kind().to_owned(),
            spec,
            alts: alts.clone(),
            rule,
        })
    }

    pub fn spec(&self) -> &PreferenceSpec {
        &self.spec
    }

    /// The real-valued score for the score-based kinds (additive, min,
    /// geometric, anti_monotone); `None` otherwise. Scores order RAFs like
    /// the oracle but need not equal the utility: the geometric score is
    /// the product, whose `n`-th root is the utility.
    pub fn score(&self, raf: &Raf) -> Option<f64> {
        match &self.rule {
            Rule::Score(s) => Some(s.eval(raf.values())),
            _ => None,
        }
    }
}

impl PreferenceOracle for BuiltinOracle {
    fn alternatives(&self) -> &AlternativeSet {
        &self.alts
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn query(&self, a: &Raf, b: &Raf) -> bool {
        let (a, b) = (a.values(), b.values());
        match &self.rule {
            Rule::Score(s) => s.eval(a) >= s.eval(b),
            Rule::Lexicographic(order) => {
                for &i in order {
                    match a[i].partial_cmp(&b[i]) {
                        Some(Ordering::Greater) => return true,
                        Some(Ordering::Less) => return false,
                        _ => {}
                    }
                }
                true
            }
            Rule::Threshold(c) => {
                let key = |v: &[f64]| {
                    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
                    (min >= *c, v.iter().sum::<f64>() / v.len() as f64)
                };
                let (pass_a, mean_a) = key(a);
                let (pass_b, mean_b) = key(b);
                (pass_a, mean_a) >= (pass_b, mean_b)
            }
            Rule::Never => false,
        }
    }
}
