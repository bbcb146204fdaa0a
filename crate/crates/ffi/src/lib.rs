//! C ABI for `availpref`.
//!
//! Objects cross the boundary as opaque handles created by `avp_*_new`
//! style constructors and released by the matching `avp_*_free`. Every
//! fallible call returns an [`AvpStatus`] and writes its result through an
//! out-pointer; on failure a message is available from
//! [`avp_last_error_message`] until the next call on the same thread.
//! Strings returned by the library are released with [`avp_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, c_void, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use availpref::preference::{
    check_order_axioms, falsify_weak_continuity, weak_continuity_outcome, weak_dominance_outcome,
};
use availpref::{
    check_certificate, compute_u, cross_validate_choice, lemma1_sequences, membership, validate_representation,
    AlternativeSet, Error, FamilyLibrary, Menu, PerturbationSequences, PreferenceOracle, PreferenceSpec, Raf,
    RafSampler, SamplerKind, UtilityResult,
};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AvpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidJson = 3,
    InvalidArgument = 4,
    AlternativeMismatch = 5,
    NonMonotoneMembership = 6,
    DominanceHypothesis = 7,
    NoMaximalElement = 8,
    Panic = 9,
}

/// Alternative set handle.
pub struct AvpAlternatives(AlternativeSet);

/// RAF handle.
pub struct AvpRaf(Raf);

/// Preference oracle handle.
pub struct AvpOracle(Box<dyn PreferenceOracle>);

/// Perturbation sequences handle.
pub struct AvpSequences(PerturbationSequences);

/// Bracketed utility.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AvpUtility {
    pub u: f64,
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
    pub oracle_calls: u32,
}

impl From<UtilityResult> for AvpUtility {
    fn from(r: UtilityResult) -> Self {
        Self {
            u: r.u,
            lo: r.lo,
            hi: r.hi,
            tol: r.tol,
            oracle_calls: r.oracle_calls,
        }
    }
}

impl From<AvpUtility> for UtilityResult {
    fn from(r: AvpUtility) -> Self {
        Self {
            u: r.u,
            lo: r.lo,
            hi: r.hi,
            tol: r.tol,
            oracle_calls: r.oracle_calls,
        }
    }
}

/// Weak-preference callback: returns whether `a ≽ b`. Both arrays hold
/// `len` availabilities in alternative order. A null callback is
/// rejected with `NullPointer`.
pub type AvpPrefersFn = Option<unsafe extern "C" fn(user: *mut c_void, a: *const f64, b: *const f64, len: usize) -> bool>;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

struct Failure(AvpStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let status = match &err {
            Error::AlternativeSetMismatch => AvpStatus::AlternativeMismatch,
            Error::NonMonotoneMembership { .. } => AvpStatus::NonMonotoneMembership,
            Error::InPair { source, .. } if matches!(**source, Error::NonMonotoneMembership { .. }) => {
                AvpStatus::NonMonotoneMembership
            }
            Error::DominanceHypothesis { .. } => AvpStatus::DominanceHypothesis,
            Error::NoMaximalElement(_) => AvpStatus::NoMaximalElement,
            _ => AvpStatus::InvalidArgument,
        };
        Failure(status, err.to_string())
    }
}

fn null() -> Failure {
    Failure(AvpStatus::NullPointer, "null pointer argument".into())
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> AvpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error(String::new());
            AvpStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("panic inside availpref".into());
            AvpStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(AvpStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    write(out, Box::into_raw(Box::new(value)))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(AvpStatus::InvalidArgument, e.to_string()))?;
    write(out, c.into_raw())
}

fn parse_json<T: serde::de::DeserializeOwned>(json: &str) -> Result<T, Failure> {
    serde_json::from_str(json).map_err(|e| Failure(AvpStatus::InvalidJson, e.to_string()))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

unsafe fn free_handle<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn avp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn avp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// Alternatives

#[no_mangle]
pub unsafe extern "C" fn avp_alternatives_new(
    labels: *const *const c_char,
    len: usize,
    out: *mut *mut AvpAlternatives,
) -> AvpStatus {
    guard(|| {
        if labels.is_null() {
            return Err(null());
        }
        let labels = slice::from_raw_parts(labels, len)
            .iter()
            .map(|&p| str_arg(p).map(str::to_owned))
            .collect::<Result<Vec<_>, _>>()?;
        write_handle(out, AvpAlternatives(AlternativeSet::new(labels)?))
    })
}

/// `x1, ..., xn`.
#[no_mangle]
pub unsafe extern "C" fn avp_alternatives_numbered(n: usize, out: *mut *mut AvpAlternatives) -> AvpStatus {
    guard(|| write_handle(out, AvpAlternatives(AlternativeSet::numbered(n)?)))
}

/// Number of alternatives, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn avp_alternatives_len(alts: *const AvpAlternatives) -> usize {
    alts.as_ref().map_or(0, |a| a.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn avp_alternatives_free(alts: *mut AvpAlternatives) {
    free_handle(alts);
}

// RAFs

#[no_mangle]
pub unsafe extern "C" fn avp_raf_new(
    alts: *const AvpAlternatives,
    values: *const f64,
    len: usize,
    out: *mut *mut AvpRaf,
) -> AvpStatus {
    guard(|| {
        let alts = as_ref(alts)?;
        if values.is_null() {
            return Err(null());
        }
        let values = slice::from_raw_parts(values, len).to_vec();
        write_handle(out, AvpRaf(Raf::new(&alts.0, values)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn avp_raf_top(alts: *const AvpAlternatives, out: *mut *mut AvpRaf) -> AvpStatus {
    guard(|| write_handle(out, AvpRaf(Raf::top(&as_ref(alts)?.0))))
}

#[no_mangle]
pub unsafe extern "C" fn avp_raf_bottom(alts: *const AvpAlternatives, out: *mut *mut AvpRaf) -> AvpStatus {
    guard(|| write_handle(out, AvpRaf(Raf::bottom(&as_ref(alts)?.0))))
}

#[no_mangle]
pub unsafe extern "C" fn avp_raf_scale_top(t: f64, alts: *const AvpAlternatives, out: *mut *mut AvpRaf) -> AvpStatus {
    guard(|| write_handle(out, AvpRaf(Raf::scale_top(t, &as_ref(alts)?.0)?)))
}

/// Parses `{"alts": [...], "values": [...]}`.
#[no_mangle]
pub unsafe extern "C" fn avp_raf_from_json(json: *const c_char, out: *mut *mut AvpRaf) -> AvpStatus {
    guard(|| write_handle(out, AvpRaf(parse_json(str_arg(json)?)?)))
}

#[no_mangle]
pub unsafe extern "C" fn avp_raf_to_json(raf: *const AvpRaf, out: *mut *mut c_char) -> AvpStatus {
    guard(|| write_string(out, to_json(&as_ref(raf)?.0)))
}

#[no_mangle]
pub unsafe extern "C" fn avp_raf_len(raf: *const AvpRaf) -> usize {
    raf.as_ref().map_or(0, |r| r.0.len())
}

/// Copies the availabilities into `buf`, which must hold `avp_raf_len`
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn avp_raf_values(raf: *const AvpRaf, buf: *mut f64, cap: usize) -> AvpStatus {
    guard(|| {
        let raf = as_ref(raf)?;
        if buf.is_null() {
            return Err(null());
        }
        if cap < raf.0.len() {
            return Err(Failure(
                AvpStatus::InvalidArgument,
                format!("buffer holds {cap} values, need {}", raf.0.len()),
            ));
        }
        ptr::copy_nonoverlapping(raf.0.values().as_ptr(), buf, raf.0.len());
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn avp_raf_free(raf: *mut AvpRaf) {
    free_handle(raf);
}

#[no_mangle]
pub unsafe extern "C" fn avp_raf_strictly_dominates(a: *const AvpRaf, b: *const AvpRaf, out: *mut bool) -> AvpStatus {
    guard(|| write(out, as_ref(a)?.0.strictly_dominates(&as_ref(b)?.0)?))
}

#[no_mangle]
pub unsafe extern "C" fn avp_raf_pointwise_dominates(a: *const AvpRaf, b: *const AvpRaf, out: *mut bool) -> AvpStatus {
    guard(|| write(out, as_ref(a)?.0.pointwise_dominates(&as_ref(b)?.0)?))
}

#[no_mangle]
pub unsafe extern "C" fn avp_raf_sup_distance(a: *const AvpRaf, b: *const AvpRaf, out: *mut f64) -> AvpStatus {
    guard(|| write(out, as_ref(a)?.0.sup_distance(&as_ref(b)?.0)?))
}

// Oracles

/// Builds a built-in oracle from a spec such as `{"kind": "min"}`.
#[no_mangle]
pub unsafe extern "C" fn avp_oracle_from_spec_json(
    spec_json: *const c_char,
    alts: *const AvpAlternatives,
    out: *mut *mut AvpOracle,
) -> AvpStatus {
    guard(|| {
        let spec: PreferenceSpec = parse_json(str_arg(spec_json)?)?;
        let oracle = spec.build(&as_ref(alts)?.0)?;
        write_handle(out, AvpOracle(Box::new(oracle)))
    })
}

struct CallbackOracle {
    alts: AlternativeSet,
    name: String,
    prefers: unsafe extern "C" fn(*mut c_void, *const f64, *const f64, usize) -> bool,
    user: *mut c_void,
}

impl PreferenceOracle for CallbackOracle {
    fn alternatives(&self) -> &AlternativeSet {
        &self.alts
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn query(&self, a: &Raf, b: &Raf) -> bool {
        unsafe { (self.prefers)(self.user, a.values().as_ptr(), b.values().as_ptr(), a.len()) }
    }
}

/// Wraps a caller-supplied comparison. `user` is passed back on every
/// call and must outlive the oracle.
#[no_mangle]
pub unsafe extern "C" fn avp_oracle_from_callback(
    alts: *const AvpAlternatives,
    name: *const c_char,
    prefers: AvpPrefersFn,
    user: *mut c_void,
    out: *mut *mut AvpOracle,
) -> AvpStatus {
    guard(|| {
        let oracle = CallbackOracle {
            alts: as_ref(alts)?.0.clone(),
            name: str_arg(name)?.to_owned(),
            prefers: prefers.ok_or_else(null)?,
            user,
        };
        write_handle(out, AvpOracle(Box::new(oracle)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn avp_oracle_free(oracle: *mut AvpOracle) {
    free_handle(oracle);
}

#[no_mangle]
pub unsafe extern "C" fn avp_weak_prefers(
    oracle: *const AvpOracle,
    a: *const AvpRaf,
    b: *const AvpRaf,
    out: *mut bool,
) -> AvpStatus {
    guard(|| write(out, as_ref(oracle)?.0.weak_prefers(&as_ref(a)?.0, &as_ref(b)?.0)?))
}

#[no_mangle]
pub unsafe extern "C" fn avp_strictly_prefers(
    oracle: *const AvpOracle,
    a: *const AvpRaf,
    b: *const AvpRaf,
    out: *mut bool,
) -> AvpStatus {
    guard(|| write(out, as_ref(oracle)?.0.strictly_prefers(&as_ref(a)?.0, &as_ref(b)?.0)?))
}

#[no_mangle]
pub unsafe extern "C" fn avp_indifferent(
    oracle: *const AvpOracle,
    a: *const AvpRaf,
    b: *const AvpRaf,
    out: *mut bool,
) -> AvpStatus {
    guard(|| write(out, as_ref(oracle)?.0.indifferent(&as_ref(a)?.0, &as_ref(b)?.0)?))
}

// Utility

#[no_mangle]
pub unsafe extern "C" fn avp_membership(oracle: *const AvpOracle, raf: *const AvpRaf, t: f64, out: *mut bool) -> AvpStatus {
    guard(|| write(out, membership(&as_ref(oracle)?.0, &as_ref(raf)?.0, t)?))
}

#[no_mangle]
pub unsafe extern "C" fn avp_compute_u(
    oracle: *const AvpOracle,
    raf: *const AvpRaf,
    tol: f64,
    out: *mut AvpUtility,
) -> AvpStatus {
    guard(|| write(out, compute_u(&as_ref(oracle)?.0, &as_ref(raf)?.0, tol)?.into()))
}

#[no_mangle]
pub unsafe extern "C" fn avp_check_certificate(
    oracle: *const AvpOracle,
    raf: *const AvpRaf,
    result: *const AvpUtility,
    out: *mut bool,
) -> AvpStatus {
    guard(|| {
        let result: UtilityResult = (*as_ref(result)?).into();
        write(out, check_certificate(&as_ref(oracle)?.0, &as_ref(raf)?.0, &result)?)
    })
}

// Perturbation sequences

#[no_mangle]
pub unsafe extern "C" fn avp_lemma1_sequences(
    a: *const AvpRaf,
    b: *const AvpRaf,
    out: *mut *mut AvpSequences,
) -> AvpStatus {
    guard(|| write_handle(out, AvpSequences(lemma1_sequences(&as_ref(a)?.0, &as_ref(b)?.0)?)))
}

/// Writes the `n`-th terms (`n >= 1`) as two new RAF handles.
#[no_mangle]
pub unsafe extern "C" fn avp_sequences_term(
    seq: *const AvpSequences,
    n: u64,
    out_a: *mut *mut AvpRaf,
    out_b: *mut *mut AvpRaf,
) -> AvpStatus {
    guard(|| {
        if out_a.is_null() || out_b.is_null() {
            return Err(null());
        }
        let (a, b) = as_ref(seq)?.0.term(n)?;
        write_handle(out_a, AvpRaf(a))?;
        write_handle(out_b, AvpRaf(b))
    })
}

#[no_mangle]
pub unsafe extern "C" fn avp_sequences_epsilon(seq: *const AvpSequences, out: *mut f64) -> AvpStatus {
    guard(|| write(out, as_ref(seq)?.0.epsilon))
}

#[no_mangle]
pub unsafe extern "C" fn avp_sequences_free(seq: *mut AvpSequences) {
    free_handle(seq);
}

// Reports (JSON payloads)

/// Order axioms, weak dominance and weak continuity for a built-in spec,
/// as an axiom-report JSON string.
#[no_mangle]
pub unsafe extern "C" fn avp_check_axioms_json(
    spec_json: *const c_char,
    alts: *const AvpAlternatives,
    seed: u64,
    pairs: usize,
    triples: usize,
    depth: u64,
    out: *mut *mut c_char,
) -> AvpStatus {
    guard(|| {
        let spec: PreferenceSpec = parse_json(str_arg(spec_json)?)?;
        let alts = &as_ref(alts)?.0;
        let oracle = spec.build(alts)?;
        let mut sampler = RafSampler::uniform(alts, seed);
        let mut report = check_order_axioms(&oracle, &mut sampler, pairs, triples)?;
        report.push(weak_dominance_outcome(&oracle, &mut sampler, pairs)?);
        let library = FamilyLibrary::standard(alts, &spec.discontinuity_loci());
        let witness = falsify_weak_continuity(&oracle, &library, depth)?;
        report.push(weak_continuity_outcome(library.len(), witness));
        write_string(out, to_json(&report))
    })
}

/// Representation report JSON for `pairs` uniformly sampled pairs.
#[no_mangle]
pub unsafe extern "C" fn avp_validate_representation_json(
    oracle: *const AvpOracle,
    seed: u64,
    pairs: usize,
    tol: f64,
    out: *mut *mut c_char,
) -> AvpStatus {
    guard(|| {
        let oracle = &as_ref(oracle)?.0;
        let mut sampler = RafSampler::new(oracle.alternatives(), SamplerKind::Uniform, seed);
        let report = validate_representation(oracle, &mut sampler, pairs, tol)?;
        write_string(out, to_json(&report))
    })
}

/// Cross-validated choice for a menu given as
/// `{"alts": [...], "items": [{"label": ..., "values": [...]}, ...]}`.
#[no_mangle]
pub unsafe extern "C" fn avp_choose_json(
    oracle: *const AvpOracle,
    menu_json: *const c_char,
    tol: f64,
    out: *mut *mut c_char,
) -> AvpStatus {
    guard(|| {
        let menu: Menu = parse_json(str_arg(menu_json)?)?;
        let cv = cross_validate_choice(&as_ref(oracle)?.0, &menu, tol)?;
        write_string(out, to_json(&cv))
    })
}
