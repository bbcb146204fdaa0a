use serde::Serialize;

use crate::error::{Error, Result};
use crate::raf::Raf;

/// Sequences `A(n) -> A`, `B(n) -> B` with `A(n)` strictly dominating
/// `B(n)` for every `n >= 1`, built from a pointwise dominating pair.
///
/// Coordinates where `B(x) < A(x)` stay constant. Tied coordinates are
/// split by value:
///
/// * `at_one` (tied at 1): `B(n)(x) = 1 - 1/2n`
/// * `at_zero` (tied at 0): `A(n)(x) = 1/2n`
/// * `interior` (tied in (0,1)): `B(n)(x) = B(x) - ε/2n`
///
/// with `ε = min over interior ties of B(x) / 2`, so `B(x) - ε > 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerturbationSequences {
    pub a: Raf,
    pub b: Raf,
    pub at_one: Vec<usize>,
    pub at_zero: Vec<usize>,
    pub interior: Vec<usize>,
    pub constant: Vec<usize>,
    pub epsilon: f64,
}

/// Placeholder `ε` when no coordinate is an interior tie.
const UNUSED_EPSILON: f64 = 0.5;

pub fn lemma1_sequences(a: &Raf, b: &Raf) -> Result<PerturbationSequences> {
    a.ensure_same_alternatives(b)?;
    let alts = a.alternatives();
    let mut seq = PerturbationSequences {
        a: a.clone(),
        b: b.clone(),
        at_one: Vec::new(),
        at_zero: Vec::new(),
        interior: Vec::new(),
        constant: Vec::new(),
        epsilon: UNUSED_EPSILON,
    };
    for (i, (&x, &y)) in a.values().iter().zip(b.values()).enumerate() {
        if x < y {
            return Err(Error::DominanceHypothesis {
                label: alts.label(i).to_owned(),
                a: x,
                b: y,
            });
        }
        let class = if y < x {
            &mut seq.constant
        } else if x == 1.0 {
            &mut seq.at_one
        } else if x == 0.0 {
            &mut seq.at_zero
        } else {
            &mut seq.interior
        };
        class.push(i);
    }
    if !seq.interior.is_empty() {
        seq.epsilon = seq
            .interior
            .iter()
            .map(|&i| b.get(i))
            .fold(f64::INFINITY, f64::min)
            / 2.0;
    }
    Ok(seq)
}

impl PerturbationSequences {
    pub fn labels(&self, indices: &[usize]) -> Vec<&str> {
        let alts = self.a.alternatives();
        indices.iter().map(|&i| alts.label(i)).collect()
    }

    /// `(A(n), B(n))` for `n >= 1`.
    pub fn term(&self, n: u64) -> Result<(Raf, Raf)> {
        if n == 0 {
            return Err(Error::TermIndex(n));
        }
        let step = 1.0 / (2.0 * n as f64);
        let mut a = self.a.values().to_vec();
        let mut b = self.b.values().to_vec();
        for &i in &self.at_one {
            // 1 - step may round away from 1; stay within step of the limit
            let mut v = 1.0 - step;
            while 1.0 - v > step {
                v = v.next_up();
            }
            b[i] = v;
        }
        for &i in &self.at_zero {
            a[i] += step;
        }
        for &i in &self.interior {
            b[i] -= self.epsilon * step;
        }
        let alts = self.a.alternatives();
        Ok((Raf::new(alts, a)?, Raf::new(alts, b)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raf::AlternativeSet;
    use crate::sampling::RafSampler;
    use proptest::prelude::*;

    fn abc() -> AlternativeSet {
        AlternativeSet::new(["a", "b", "c"]).unwrap()
    }

    fn raf(alts: &AlternativeSet, v: &[f64]) -> Raf {
        Raf::new(alts, v.to_vec()).unwrap()
    }

    fn close(x: &[f64], y: &[f64]) -> bool {
        x.iter().zip(y).all(|(p, q)| (p - q).abs() <= 1e-15)
    }

    #[test]
    fn mixed_partition_example() {
        let alts = abc();
        let seq = lemma1_sequences(&raf(&alts, &[1.0, 0.6, 0.3]), &raf(&alts, &[1.0, 0.6, 0.2])).unwrap();
        assert_eq!(seq.labels(&seq.at_one), ["a"]);
        assert_eq!(seq.labels(&seq.interior), ["b"]);
        assert_eq!(seq.labels(&seq.constant), ["c"]);
        assert!(seq.at_zero.is_empty());
        assert!((seq.epsilon - 0.3).abs() <= 1e-15);

        let (a1, b1) = seq.term(1).unwrap();
        assert_eq!(a1.values(), [1.0, 0.6, 0.3]);
        assert!(close(b1.values(), &[0.5, 0.45, 0.2]), "{b1}");
        assert!(a1.strictly_dominates(&b1).unwrap());

        let (_, b10) = seq.term(10).unwrap();
        assert!(close(b10.values(), &[0.95, 0.585, 0.2]), "{b10}");
    }

    #[test]
    fn bottom_against_itself_lifts_a() {
        let alts = AlternativeSet::new(["a", "b"]).unwrap();
        let bottom = Raf::bottom(&alts);
        let seq = lemma1_sequences(&bottom, &bottom).unwrap();
        assert_eq!(seq.at_zero, [0, 1]);
        assert_eq!(seq.epsilon, 0.5);
        let (a2, b2) = seq.term(2).unwrap();
        assert_eq!(a2.values(), [0.25, 0.25]);
        assert_eq!(b2.values(), [0.0, 0.0]);
    }

    #[test]
    fn top_over_bottom_is_constant() {
        let alts = abc();
        let (top, bottom) = (Raf::top(&alts), Raf::bottom(&alts));
        let seq = lemma1_sequences(&top, &bottom).unwrap();
        assert_eq!(seq.constant, [0, 1, 2]);
        for n in [1, 7, 1000] {
            assert_eq!(seq.term(n).unwrap(), (top.clone(), bottom.clone()));
        }
    }

    #[test]
    fn hypothesis_failure_names_the_alternative() {
        let alts = abc();
        let err = lemma1_sequences(&raf(&alts, &[0.3, 0.5, 0.5]), &raf(&alts, &[0.5, 0.5, 0.5])).unwrap_err();
        assert!(matches!(err, Error::DominanceHypothesis { ref label, .. } if label == "a"));
    }

    #[test]
    fn zero_index_is_rejected() {
        let alts = abc();
        let seq = lemma1_sequences(&Raf::top(&alts), &Raf::top(&alts)).unwrap();
        assert!(matches!(seq.term(0), Err(Error::TermIndex(0))));
    }

    proptest! {
        #[test]
        fn sequence_contract(seed in any::<u64>(), n in 1u64..=100) {
            let alts = AlternativeSet::numbered(4).unwrap();
            let (a, b) = RafSampler::uniform(&alts, seed).sample_pointwise_dominated_pair();
            let seq = lemma1_sequences(&a, &b).unwrap();
            let (an, bn) = seq.term(n).unwrap();
            let bound = 1.0 / (2.0 * n as f64);
            prop_assert!(an.strictly_dominates(&bn).unwrap());
            prop_assert!(an.sup_distance(&a).unwrap() <= bound);
            prop_assert!(bn.sup_distance(&b).unwrap() <= bound);
            prop_assert!(seq.epsilon > 0.0 && seq.epsilon < 1.0);
            for &i in &seq.interior {
                prop_assert!(b.get(i) - seq.epsilon > 0.0);
            }
        }
    }
}
