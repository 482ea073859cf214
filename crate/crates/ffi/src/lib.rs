//! C ABI over `ontolabel`.
//!
//! Every fallible call returns an [`OlStatus`]. On anything other than
//! `OL_STATUS_OK` a message is stored per thread and can be read with
//! [`ol_last_error`]. Objects cross the boundary as opaque handles that the
//! caller releases with the matching `*_free` function; strings returned by
//! the library are released with [`ol_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ontolabel::exchange::parse_modes;
use ontolabel::{
    antisymmetrize, apply_transposition, check_axiom, count_closed_form, enumerate_microstates,
    infer_scales, mean_occupation, parse_spec, render_spec, symmetrize, symmetry_class,
    theorem_macro_distinct, theorem_unitary_x_micro, validate, AxiomId, CandidateSystem, Error,
    ModeSpec, OntoSystem, StateVector, StatisticsRule, SymmetryClass, Transposition,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    AxiomViolation = 4,
    HypothesisUnmet = 5,
    InvalidArgument = 6,
    ResourceLimit = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OlRule {
    MaxwellBoltzmann = 0,
    BoseEinstein = 1,
    FermiDirac = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OlSymmetry {
    Symmetric = 0,
    Antisymmetric = 1,
    Neither = 2,
    Zero = 3,
}

/// Parsed, unvalidated system description.
pub struct OlCandidate(CandidateSystem);

/// System that satisfies every axiom.
pub struct OlSystem(OntoSystem);

/// Exact state vector over labeled slots.
pub struct OlStateVector(StateVector);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(OlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::HypothesisUnmet(_) => OlStatus::HypothesisUnmet,
            Error::BoundExceeded(_) | Error::ResourceLimit(_) => OlStatus::ResourceLimit,
            _ => OlStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> OlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            OlStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            OlStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(OlStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure(OlStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(OlStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(OlStatus::InvalidUtf8, format!("{what}: {e}")))
}

fn owned_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Failure(OlStatus::InvalidArgument, e.to_string()))
}

fn rule(r: OlRule) -> StatisticsRule {
    match r {
        OlRule::MaxwellBoltzmann => StatisticsRule::MaxwellBoltzmann,
        OlRule::BoseEinstein => StatisticsRule::BoseEinstein,
        OlRule::FermiDirac => StatisticsRule::FermiDirac,
    }
}

/// Message for the most recent failure on this thread, or null after a
/// successful call. Valid until the next call into the library.
#[no_mangle]
pub extern "C" fn ol_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ol_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a system description. On a parse failure the last error holds
/// every diagnostic, one per line.
///
/// # Safety
/// `source` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_candidate_parse(
    source: *const c_char,
    out_candidate: *mut *mut OlCandidate,
) -> OlStatus {
    guard(|| {
        let slot = out(out_candidate, "out_candidate")?;
        *slot = ptr::null_mut();
        let src = text(source, "source")?;
        let c = parse_spec(src).map_err(|e| Failure(OlStatus::Parse, e.to_string()))?;
        *slot = Box::into_raw(Box::new(OlCandidate(c)));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn ol_candidate_free(c: *mut OlCandidate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of particle declarations.
///
/// # Safety
/// `c` must be a live candidate handle.
#[no_mangle]
pub unsafe extern "C" fn ol_candidate_particle_count(
    c: *const OlCandidate,
    out_count: *mut usize,
) -> OlStatus {
    guard(|| {
        *out(out_count, "out_count")? = deref(c, "candidate")?.0.particles.len();
        Ok(())
    })
}

/// Returns a new candidate with scales inferred from shared states.
///
/// # Safety
/// `c` must be a live candidate handle; `out_candidate` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_candidate_infer_scales(
    c: *const OlCandidate,
    out_candidate: *mut *mut OlCandidate,
) -> OlStatus {
    guard(|| {
        let slot = out(out_candidate, "out_candidate")?;
        *slot = ptr::null_mut();
        let inferred = infer_scales(&deref(c, "candidate")?.0);
        *slot = Box::into_raw(Box::new(OlCandidate(inferred)));
        Ok(())
    })
}

/// Renders the candidate back to source text.
///
/// # Safety
/// `c` must be a live candidate handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_candidate_render(
    c: *const OlCandidate,
    out_text: *mut *mut c_char,
) -> OlStatus {
    guard(|| {
        let slot = out(out_text, "out_text")?;
        *slot = ptr::null_mut();
        *slot = owned_string(render_spec(&deref(c, "candidate")?.0))?;
        Ok(())
    })
}

/// Checks axiom `axiom` (1 to 7). Writes whether it holds and how many
/// witnesses refute it.
///
/// # Safety
/// `c` must be a live candidate handle; both out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_candidate_check_axiom(
    c: *const OlCandidate,
    axiom: u32,
    out_holds: *mut bool,
    out_witnesses: *mut usize,
) -> OlStatus {
    guard(|| {
        let id = usize::try_from(axiom)
            .ok()
            .and_then(|k| k.checked_sub(1))
            .and_then(|k| AxiomId::ALL.get(k).copied())
            .ok_or_else(|| Failure(OlStatus::InvalidArgument, format!("no axiom {axiom}")))?;
        let report = check_axiom(&deref(c, "candidate")?.0, id);
        *out(out_holds, "out_holds")? = report.holds;
        *out(out_witnesses, "out_witnesses")? = report.witnesses.len();
        Ok(())
    })
}

/// Validates the candidate. Returns `OL_STATUS_AXIOM_VIOLATION` with the
/// failing axioms in the last error when it does not validate.
///
/// # Safety
/// `c` must be a live candidate handle; `out_system` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_candidate_validate(
    c: *const OlCandidate,
    out_system: *mut *mut OlSystem,
) -> OlStatus {
    guard(|| {
        let slot = out(out_system, "out_system")?;
        *slot = ptr::null_mut();
        let candidate = &deref(c, "candidate")?.0;
        let system = validate(candidate).map_err(|reports| {
            let failed: Vec<String> = reports.iter().map(|r| r.axiom.to_string()).collect();
            Failure(
                OlStatus::AxiomViolation,
                format!("failing axioms: {}", failed.join(", ")),
            )
        })?;
        *slot = Box::into_raw(Box::new(OlSystem(system)));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn ol_system_free(s: *mut OlSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live system handle; `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_system_particle_count(
    s: *const OlSystem,
    out_count: *mut usize,
) -> OlStatus {
    guard(|| {
        *out(out_count, "out_count")? = deref(s, "system")?.0.particle_count();
        Ok(())
    })
}

/// Ontological and physical identity of particles at positions `i`, `j`
/// (0-based, ordered by hidden label index).
///
/// # Safety
/// `s` must be a live system handle; both out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_system_identity(
    s: *const OlSystem,
    i: usize,
    j: usize,
    out_onto: *mut bool,
    out_phys: *mut bool,
) -> OlStatus {
    guard(|| {
        let system = &deref(s, "system")?.0;
        let ps = system.particles();
        let (p, q) = match (ps.get(i), ps.get(j)) {
            (Some(p), Some(q)) => (p, q),
            _ => {
                return Err(Failure(
                    OlStatus::InvalidArgument,
                    format!(
                        "particle position out of range: ({i}, {j}) with {} particles",
                        ps.len()
                    ),
                ))
            }
        };
        *out(out_onto, "out_onto")? = system.onto_identical(p, q)?;
        *out(out_phys, "out_phys")? = system.phys_identical(p, q)?;
        Ok(())
    })
}

/// Whether no two macroscopic particles are physically identical.
///
/// # Safety
/// `s` must be a live system handle; `out_holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_system_macro_distinct(
    s: *const OlSystem,
    out_holds: *mut bool,
) -> OlStatus {
    guard(|| {
        *out(out_holds, "out_holds")? = theorem_macro_distinct(&deref(s, "system")?.0).holds;
        Ok(())
    })
}

/// Whether a single-state system with at least two particles is all
/// microscopic. Returns `OL_STATUS_HYPOTHESIS_UNMET` otherwise.
///
/// # Safety
/// `s` must be a live system handle; `out_holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_system_unitary_micro(
    s: *const OlSystem,
    out_holds: *mut bool,
) -> OlStatus {
    guard(|| {
        let slot = out(out_holds, "out_holds")?;
        *slot = theorem_unitary_x_micro(&deref(s, "system")?.0)?;
        Ok(())
    })
}

/// Product ket from a comma-separated mode list such as `"a,b,a"`.
///
/// # Safety
/// `modes` must be a nul-terminated string; `out_state` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_state_from_modes(
    modes: *const c_char,
    out_state: *mut *mut OlStateVector,
) -> OlStatus {
    guard(|| {
        let slot = out(out_state, "out_state")?;
        *slot = ptr::null_mut();
        let modes = parse_modes(text(modes, "modes")?)?;
        *slot = Box::into_raw(Box::new(OlStateVector(StateVector::from_modes(modes))));
        Ok(())
    })
}

/// # Safety
/// `v` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn ol_state_free(v: *mut OlStateVector) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

unsafe fn map_state(
    v: *const OlStateVector,
    out_state: *mut *mut OlStateVector,
    f: impl FnOnce(&StateVector) -> Result<StateVector, Failure>,
) -> OlStatus {
    guard(|| {
        let slot = out(out_state, "out_state")?;
        *slot = ptr::null_mut();
        let image = f(&deref(v, "state")?.0)?;
        *slot = Box::into_raw(Box::new(OlStateVector(image)));
        Ok(())
    })
}

/// Applies the transposition of 1-based slots `i` and `j`.
///
/// # Safety
/// `v` must be a live state handle; `out_state` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_state_swap(
    v: *const OlStateVector,
    i: usize,
    j: usize,
    out_state: *mut *mut OlStateVector,
) -> OlStatus {
    map_state(v, out_state, |v| {
        Ok(apply_transposition(Transposition::new(i, j)?, v)?)
    })
}

/// # Safety
/// `v` must be a live state handle; `out_state` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_state_symmetrize(
    v: *const OlStateVector,
    out_state: *mut *mut OlStateVector,
) -> OlStatus {
    map_state(v, out_state, |v| Ok(symmetrize(v)))
}

/// # Safety
/// `v` must be a live state handle; `out_state` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_state_antisymmetrize(
    v: *const OlStateVector,
    out_state: *mut *mut OlStateVector,
) -> OlStatus {
    map_state(v, out_state, |v| Ok(antisymmetrize(v)))
}

/// # Safety
/// `v` must be a live state handle; `out_class` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_state_classify(
    v: *const OlStateVector,
    out_class: *mut OlSymmetry,
) -> OlStatus {
    guard(|| {
        *out(out_class, "out_class")? = match symmetry_class(&deref(v, "state")?.0) {
            SymmetryClass::Symmetric => OlSymmetry::Symmetric,
            SymmetryClass::Antisymmetric => OlSymmetry::Antisymmetric,
            SymmetryClass::Neither => OlSymmetry::Neither,
            SymmetryClass::Zero => OlSymmetry::Zero,
        };
        Ok(())
    })
}

/// Canonical text such as `1/2|a,b> - 1/2|b,a>`; `0` for the zero vector.
///
/// # Safety
/// `v` must be a live state handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_state_render(
    v: *const OlStateVector,
    out_text: *mut *mut c_char,
) -> OlStatus {
    guard(|| {
        let slot = out(out_text, "out_text")?;
        *slot = ptr::null_mut();
        *slot = owned_string(deref(v, "state")?.0.to_string())?;
        Ok(())
    })
}

/// Exact closed-form microstate count as a decimal string.
///
/// # Safety
/// `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_count_closed_form(
    n: usize,
    g: usize,
    r: OlRule,
    out_text: *mut *mut c_char,
) -> OlStatus {
    guard(|| {
        let slot = out(out_text, "out_text")?;
        *slot = ptr::null_mut();
        if g == 0 {
            return Err(Failure(
                OlStatus::InvalidArgument,
                "need at least one mode".into(),
            ));
        }
        *slot = owned_string(count_closed_form(n, g, rule(r)).to_string())?;
        Ok(())
    })
}

/// Number of microstates found by explicit enumeration over `g`
/// equal-energy modes.
///
/// # Safety
/// `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ol_count_enumerated(
    n: usize,
    g: usize,
    r: OlRule,
    out_count: *mut usize,
) -> OlStatus {
    guard(|| {
        let slot = out(out_count, "out_count")?;
        let spec = ModeSpec::uniform(g)?;
        *slot = enumerate_microstates(n, &spec, rule(r))?.states.len();
        Ok(())
    })
}

/// Mean occupation of each of the `g` modes with the given energies.
/// `out_occupation` must have room for `g` values.
///
/// # Safety
/// `energies` must point to `g` readable doubles and `out_occupation` to `g`
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ol_mean_occupation(
    energies: *const f64,
    g: usize,
    n: usize,
    r: OlRule,
    beta: f64,
    out_occupation: *mut f64,
) -> OlStatus {
    guard(|| {
        if energies.is_null() || out_occupation.is_null() {
            return Err(Failure(
                OlStatus::NullPointer,
                "energies or out_occupation is null".into(),
            ));
        }
        let energies = std::slice::from_raw_parts(energies, g);
        let spec = ModeSpec::from_energies(energies)?;
        let occ = mean_occupation(n, &spec, rule(r), beta)?;
        std::slice::from_raw_parts_mut(out_occupation, g).copy_from_slice(&occ);
        Ok(())
    })
}
