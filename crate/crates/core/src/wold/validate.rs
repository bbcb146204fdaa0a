use serde::{Deserialize, Serialize};

use super::compute_u;
use crate::error::{Error, Result};
use crate::preference::PreferenceOracle;
use crate::raf::Raf;
use crate::sampling::RafSampler;

/// One sampled pair with its bracketed utilities and the oracle's verdicts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub a: Raf,
    pub b: Raf,
    pub u_a: f64,
    pub u_b: f64,
    pub a_weak_b: bool,
    pub b_weak_a: bool,
}

impl PairRecord {
    fn is_strict(&self) -> bool {
        self.a_weak_b != self.b_weak_a
    }
}

/// Sampled check of `A ≽ B ⇔ u(A) >= u(B)`.
///
/// Pairs whose utilities are within `2 tol` of each other cannot certify a
/// strict comparison and are counted as indeterminate. Those among them
/// that the oracle ranks strictly are kept in `band_strict`: shrinking
/// `tol` does not resolve them when the relation has no utility
/// representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentationReport {
    pub oracle: String,
    pub seed: u64,
    pub tol: f64,
    pub pairs_tested: usize,
    pub confirmed: usize,
    pub indeterminate: usize,
    pub violations: Vec<PairRecord>,
    pub band_strict: Vec<PairRecord>,
}

impl RepresentationReport {
    pub fn indeterminate_fraction(&self) -> f64 {
        if self.pairs_tested == 0 {
            0.0
        } else {
            self.indeterminate as f64 / self.pairs_tested as f64
        }
    }
}

pub fn validate_representation<O: PreferenceOracle + ?Sized>(
    oracle: &O,
    sampler: &mut RafSampler,
    n_pairs: usize,
    tol: f64,
) -> Result<RepresentationReport> {
    oracle.alternatives().ensure_same(sampler.alternatives())?;
    let pairs = sampler.sample_pairs(n_pairs);
    let mut report = RepresentationReport {
        oracle: oracle.name().to_owned(),
        seed: sampler.seed(),
        tol,
        pairs_tested: 0,
        confirmed: 0,
        indeterminate: 0,
        violations: Vec::new(),
        band_strict: Vec::new(),
    };
    let band = 2.0 * tol;
    for (a, b) in pairs {
        let utilities = compute_u(oracle, &a, tol).and_then(|ua| Ok((ua, compute_u(oracle, &b, tol)?)));
        let (ua, ub) = match utilities {
            Ok(u) => u,
            Err(source) => {
                return Err(Error::InPair {
                    a: Box::new(a),
                    b: Box::new(b),
                    source: Box::new(source),
                })
            }
        };
        let record = PairRecord {
            a_weak_b: oracle.weak_prefers(&a, &b)?,
            b_weak_a: oracle.weak_prefers(&b, &a)?,
            a,
            b,
            u_a: ua.u,
            u_b: ub.u,
        };
        report.pairs_tested += 1;
        if (record.u_a - record.u_b).abs() <= band {
            report.indeterminate += 1;
            if record.is_strict() {
                report.band_strict.push(record);
            }
        } else if record.a_weak_b == (record.u_a + band >= record.u_b)
            && record.b_weak_a == (record.u_b + band >= record.u_a)
        {
            report.confirmed += 1;
        } else {
            report.violations.push(record);
        }
    }
    Ok(report)
}
