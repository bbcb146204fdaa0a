//! Random availability functions: maps from a finite set of alternatives
//! into `[0, 1]`, the value at `x` being the probability that `x` is
//! available.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground set of labeled alternatives.
///
/// Two sets are the same set only if they carry the same labels in the same
/// order; operations mixing RAFs over different sets are rejected.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct AlternativeSet {
    labels: Arc<[String]>,
}

impl AlternativeSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(Error::TooFewAlternatives(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    /// `x1, ..., xn`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn same_as(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }

    pub(crate) fn ensure_same(&self, other: &Self) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::AlternativeSetMismatch)
        }
    }
}

impl TryFrom<Vec<String>> for AlternativeSet {
    type Error = Error;

    fn try_from(labels: Vec<String>) -> Result<Self> {
        Self::new(labels)
    }
}

impl From<AlternativeSet> for Vec<String> {
    fn from(alts: AlternativeSet) -> Self {
        alts.labels.to_vec()
    }
}

impl fmt::Debug for AlternativeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels.iter()).finish()
    }
}

/// A random availability function over a fixed [`AlternativeSet`].
///
/// Values are validated against the closed interval `[0, 1]` with exact
/// comparisons; the boundary functions `top` and `bottom` are valid.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RafRepr", into = "RafRepr")]
pub struct Raf {
    alts: AlternativeSet,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RafRepr {
    alts: AlternativeSet,
    values: Vec<f64>,
}

impl TryFrom<RafRepr> for Raf {
    type Error = Error;

    fn try_from(repr: RafRepr) -> Result<Self> {
        Raf::new(&repr.alts, repr.values)
    }
}

impl From<Raf> for RafRepr {
    fn from(raf: Raf) -> Self {
        RafRepr {
            alts: raf.alts,
            values: raf.values,
        }
    }
}

impl Raf {
    /// Validates `values` against `alts`. NaN and infinities fall outside
    /// `[0, 1]` and are rejected like any other out-of-range value.
    pub fn new(alts: &AlternativeSet, values: Vec<f64>) -> Result<Self> {
        if values.len() != alts.len() {
            return Err(Error::LengthMismatch {
                expected: alts.len(),
                got: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::OutOfRange {
                label: alts.label(i).to_owned(),
                value: values[i],
            });
        }
        Ok(Self {
            alts: alts.clone(),
            values,
        })
    }

    /// Every alternative surely available.
    pub fn top(alts: &AlternativeSet) -> Self {
        Self::constant(alts, 1.0)
    }

    /// No alternative ever available.
    pub fn bottom(alts: &AlternativeSet) -> Self {
        Self::constant(alts, 0.0)
    }

    /// The point `t` on the diagonal ray: every alternative available with
    /// probability `t`.
    pub fn scale_top(t: f64, alts: &AlternativeSet) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::ScaleOutOfRange(t));
        }
        Ok(Self::constant(alts, t))
    }

    fn constant(alts: &AlternativeSet, v: f64) -> Self {
        Self {
            alts: alts.clone(),
            values: vec![v; alts.len()],
        }
    }

    pub fn alternatives(&self) -> &AlternativeSet {
        &self.alts
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, index: usize) -> f64 {
        self.values[index]
    }

    /// Availability of the alternative named `label`.
    pub fn at(&self, label: &str) -> Option<f64> {
        self.alts.index_of(label).map(|i| self.values[i])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.values.iter().all(|&v| v == 1.0)
    }

    pub fn is_bottom(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn ensure_same_alternatives(&self, other: &Raf) -> Result<()> {
        self.alts.ensure_same(&other.alts)
    }

    fn zip<'a>(&'a self, other: &'a Raf) -> Result<impl Iterator<Item = (f64, f64)> + 'a> {
        self.ensure_same_alternatives(other)?;
        Ok(self.values.iter().copied().zip(other.values.iter().copied()))
    }

    /// `A(x) > B(x)` at every alternative.
    ///
    /// This is also the relation called "strong" dominance in the statement
    /// of the weak-dominance axiom; the two names denote one relation.
    pub fn strictly_dominates(&self, other: &Raf) -> Result<bool> {
        Ok(self.zip(other)?.all(|(a, b)| a > b))
    }

    /// `A(x) >= B(x)` at every alternative.
    pub fn pointwise_dominates(&self, other: &Raf) -> Result<bool> {
        Ok(self.zip(other)?.all(|(a, b)| a >= b))
    }

    /// Largest coordinatewise gap. On a finite set of alternatives,
    /// convergence in this metric is coordinatewise convergence.
    pub fn sup_distance(&self, other: &Raf) -> Result<f64> {
        Ok(self.zip(other)?.map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }
}

impl fmt::Debug for Raf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Raf{self}")
    }
}

impl fmt::Display for Raf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> AlternativeSet {
        AlternativeSet::new(["a", "b"]).unwrap()
    }

    fn abc() -> AlternativeSet {
        AlternativeSet::new(["a", "b", "c"]).unwrap()
    }

    fn raf(alts: &AlternativeSet, v: &[f64]) -> Raf {
        Raf::new(alts, v.to_vec()).unwrap()
    }

    #[test]
    fn alternative_set_invariants() {
        assert!(matches!(
            AlternativeSet::new(["a"]),
            Err(Error::TooFewAlternatives(1))
        ));
        assert!(matches!(
            AlternativeSet::new(["a", "b", "a"]),
            Err(Error::DuplicateLabel(l)) if l == "a"
        ));
        assert_eq!(AlternativeSet::numbered(3).unwrap().labels(), ["x1", "x2", "x3"]);
    }

    #[test]
    fn make_raf_accepts_boundaries_and_interior() {
        let r = raf(&ab(), &[0.0, 1.0]);
        assert_eq!(r.at("a"), Some(0.0));
        assert_eq!(r.at("b"), Some(1.0));
        assert!(Raf::new(&abc(), vec![0.9, 0.5, 0.1]).is_ok());
    }

    #[test]
    fn make_raf_names_offending_alternative() {
        let err = Raf::new(&ab(), vec![0.5, 1.2]).unwrap_err();
        assert_eq!(err.to_string(), "value out of [0,1] at b: 1.2");
        assert!(matches!(
            Raf::new(&ab(), vec![f64::NAN, 0.5]),
            Err(Error::OutOfRange { label, .. }) if label == "a"
        ));
        assert!(matches!(
            Raf::new(&ab(), vec![0.5]),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn top_bottom_and_diagonal() {
        let alts = abc();
        assert_eq!(Raf::top(&ab()).values(), [1.0, 1.0]);
        assert_eq!(Raf::top(&alts).values(), [1.0, 1.0, 1.0]);
        assert_eq!(Raf::bottom(&ab()).values(), [0.0, 0.0]);
        assert!(Raf::top(&alts).strictly_dominates(&Raf::bottom(&alts)).unwrap());
        assert_eq!(Raf::bottom(&alts).sup_distance(&Raf::top(&alts)).unwrap(), 1.0);
        assert_eq!(Raf::scale_top(0.0, &alts).unwrap(), Raf::bottom(&alts));
        assert_eq!(Raf::scale_top(1.0, &alts).unwrap(), Raf::top(&alts));
        assert_eq!(Raf::scale_top(0.25, &alts).unwrap().values(), [0.25; 3]);
        assert!(matches!(Raf::scale_top(1.5, &alts), Err(Error::ScaleOutOfRange(_))));
        assert!(matches!(Raf::scale_top(-0.1, &alts), Err(Error::ScaleOutOfRange(_))));
    }

    #[test]
    fn dominance_examples() {
        let alts = ab();
        let a = raf(&alts, &[0.5, 0.9]);
        assert!(!a.strictly_dominates(&a).unwrap());
        assert!(!a.strictly_dominates(&raf(&alts, &[0.5, 0.1])).unwrap());
        assert!(a.pointwise_dominates(&a).unwrap());
        assert!(Raf::top(&alts).pointwise_dominates(&a).unwrap());
        assert!(!raf(&alts, &[0.3, 0.9])
            .pointwise_dominates(&raf(&alts, &[0.5, 0.1]))
            .unwrap());
    }

    #[test]
    fn sup_distance_examples() {
        let alts = ab();
        let a = raf(&alts, &[0.9, 0.5]);
        let b = raf(&alts, &[0.5, 0.6]);
        assert_eq!(a.sup_distance(&a).unwrap(), 0.0);
        assert!((a.sup_distance(&b).unwrap() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn cross_set_operations_are_errors() {
        let a = Raf::top(&ab());
        let b = Raf::bottom(&AlternativeSet::new(["b", "a"]).unwrap());
        assert!(matches!(a.strictly_dominates(&b), Err(Error::AlternativeSetMismatch)));
        assert!(matches!(a.pointwise_dominates(&b), Err(Error::AlternativeSetMismatch)));
        assert!(matches!(a.sup_distance(&b), Err(Error::AlternativeSetMismatch)));
        // structurally equal sets built separately are the same set
        let c = Raf::bottom(&AlternativeSet::new(["a", "b"]).unwrap());
        assert!(a.strictly_dominates(&c).unwrap());
    }

    #[test]
    fn strict_dominance_irreflexive_and_transitive_on_lattice() {
        let alts = abc();
        let levels = [0.0, 0.5, 1.0];
        let mut grid = Vec::new();
        for &x in &levels {
            for &y in &levels {
                for &z in &levels {
                    grid.push(raf(&alts, &[x, y, z]));
                }
            }
        }
        for a in &grid {
            assert!(!a.strictly_dominates(a).unwrap());
            for b in &grid {
                if a.strictly_dominates(b).unwrap() {
                    assert!(a.pointwise_dominates(b).unwrap());
                    assert!(!b.pointwise_dominates(a).unwrap());
                    for c in &grid {
                        if b.strictly_dominates(c).unwrap() {
                            assert!(a.strictly_dominates(c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let r = raf(&ab(), &[0.25, 1.0]);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"alts":["a","b"],"values":[0.25,1.0]}"#);
        let bad = r#"{"alts":["a","b"],"values":[0.25,1.5]}"#;
        assert!(serde_json::from_str::<Raf>(bad).is_err());
        let dup = r#"{"alts":["a","a"],"values":[0.25,0.5]}"#;
        assert!(serde_json::from_str::<Raf>(dup).is_err());
    }

    fn unit_vec(n: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(
            prop_oneof![Just(0.0), Just(1.0), 0.0..=1.0f64, (0u64..1 << 53).prop_map(|k| k as f64 / (1u64 << 53) as f64)],
            n,
        )
    }

    proptest! {
        #[test]
        fn json_round_trip_is_value_exact(values in unit_vec(4)) {
            let alts = AlternativeSet::numbered(4).unwrap();
            let r = Raf::new(&alts, values).unwrap();
            let back: Raf = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
            for (x, y) in r.values().iter().zip(back.values()) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }

        #[test]
        fn sup_distance_is_a_metric(a in unit_vec(3), b in unit_vec(3), c in unit_vec(3)) {
            let alts = abc();
            let (a, b, c) = (raf(&alts, &a), raf(&alts, &b), raf(&alts, &c));
            let ab = a.sup_distance(&b).unwrap();
            prop_assert_eq!(ab, b.sup_distance(&a).unwrap());
            prop_assert!(ab <= a.sup_distance(&c).unwrap() + c.sup_distance(&b).unwrap() + 1e-15);
            prop_assert_eq!(ab == 0.0, a == b);
        }

        #[test]
        fn diagonal_is_strictly_monotone(t in 0.0..=1.0f64, s in 0.0..=1.0f64) {
            prop_assume!(t < s);
            let alts = abc();
            let lo = Raf::scale_top(t, &alts).unwrap();
            let hi = Raf::scale_top(s, &alts).unwrap();
            prop_assert!(hi.strictly_dominates(&lo).unwrap());
            prop_assert!(hi.values().iter().all(|&v| v == s));
        }
    }
}
