//! Utility on the diagonal ray.
//!
//! For a weakly dominant and weakly continuous preference, the utility of
//! `A` is the greatest lower bound of `U(A) = {t in [0,1] : tA* ≽ A}`, and
//! `u(A)A* ∼ A`. Weak dominance makes `U(A)` an up-set of `[0, 1]`, so
//! membership is a monotone predicate in `t` and its threshold can be
//! bracketed by bisection.

mod perturbation;
mod validate;

pub use perturbation::{lemma1_sequences, PerturbationSequences};
pub use validate::{validate_representation, PairRecord, RepresentationReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preference::PreferenceOracle;
use crate::raf::Raf;

/// Certified bracket around `u(A)`.
///
/// Membership holds at `hi` and fails at `lo`, except for the two
/// degenerate brackets: `lo = hi = 0` (membership holds at 0) and
/// `lo = hi = 1` (`A` is the top RAF, which under weak dominance is
/// strictly preferred to every other point of the ray).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UtilityResult {
    pub u: f64,
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
    pub oracle_calls: u32,
}

/// Whether `t` lies in `U(A)`, i.e. `tA* ≽ A`.
pub fn membership<O: PreferenceOracle + ?Sized>(oracle: &O, a: &Raf, t: f64) -> Result<bool> {
    let diag = Raf::scale_top(t, a.alternatives())?;
    oracle.weak_prefers(&diag, a)
}

/// Upper bound on the membership queries issued by [`compute_u`].
pub fn call_budget(tol: f64) -> u32 {
    2 + (1.0 / tol).log2().ceil() as u32
}

/// Brackets `u(A)` to within `tol` by bisection on the membership
/// predicate.
///
/// Both endpoints of the ray are probed first. Membership at 1 is required;
/// membership at 0 gives `u = 0` exactly. Otherwise the bracket `[lo, hi]`
/// is halved until `hi - lo <= 2 tol`, and `u` is its midpoint.
pub fn compute_u<O: PreferenceOracle + ?Sized>(oracle: &O, a: &Raf, tol: f64) -> Result<UtilityResult> {
    if !(tol > 0.0 && tol <= 0.5) {
        return Err(Error::InvalidTolerance(tol));
    }
    let mut calls = 0u32;
    let mut member = |t: f64| {
        calls += 1;
        membership(oracle, a, t)
    };

    let at_zero = member(0.0)?;
    let at_one = member(1.0)?;
    if !at_one {
        return Err(Error::NonMonotoneMembership {
            member: at_zero.then_some(0.0),
            non_member: 1.0,
        });
    }
    let (lo, hi) = if at_zero {
        (0.0, 0.0)
    } else if a.is_top() {
        (1.0, 1.0)
    } else {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while hi - lo > 2.0 * tol {
            let mid = lo + (hi - lo) / 2.0;
            if mid <= lo || mid >= hi {
                break;
            }
            if member(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    };
    Ok(UtilityResult {
        u: lo + (hi - lo) / 2.0,
        lo,
        hi,
        tol,
        oracle_calls: calls,
    })
}

/// Re-queries the oracle at the bracket endpoints: the finite-precision
/// stand-in for `u(A)A* ∼ A`.
pub fn check_certificate<O: PreferenceOracle + ?Sized>(
    oracle: &O,
    a: &Raf,
    result: &UtilityResult,
) -> Result<bool> {
    let UtilityResult { lo, hi, tol, u, .. } = *result;
    if !(0.0 <= lo && lo <= u && u <= hi && hi <= 1.0) || hi - lo > 2.0 * tol {
        return Ok(false);
    }
    if !membership(oracle, a, hi)? {
        return Ok(false);
    }
    if lo == hi {
        return Ok(if hi == 0.0 {
            true
        } else if hi == 1.0 && a.is_top() {
            !membership(oracle, a, 1.0 - 2.0 * tol)?
        } else {
            false
        });
    }
    Ok(!membership(oracle, a, lo)?)
}
