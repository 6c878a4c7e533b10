//! C interface to `rtm2v`.
//!
//! Objects cross the boundary as opaque handles created by `*_parse` or by
//! constructions and released with the matching `*_free`. Every function
//! returns an [`Rtm2vStatus`]; on failure, [`rtm2v_last_error`] describes the
//! problem. Strings handed out by the library are released with
//! [`rtm2v_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rtm2v::orbit::{self, Convergence, HitVerdict};
use rtm2v::transducer::{self, Transducer};
use rtm2v::turing::{self, CodeStyle, CompileError, Mode};
use rtm2v::{DyadicPoint, OrderSearch, PatternPair, Rect, TuringMachine};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rtm2vStatus {
    Ok = 0,
    /// The query ran and its answer is "no".
    False = 1,
    ParseError = 2,
    /// Well-formed input that fails a required check.
    Invalid = 3,
    NullPointer = 4,
    /// A string argument is not UTF-8 or contains an interior NUL.
    Encoding = 5,
    /// An internal error; the library state is unaffected.
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rtm2vMode {
    Complete = 0,
    Halting = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rtm2vCodes {
    Comb = 0,
    ExampleStyle = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rtm2vHit {
    HitAt = 0,
    NoHitWithinBudget = 1,
    CycleWithoutHit = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rtm2vConvergence {
    ConvergedWitness = 0,
    DivergenceWitness = 1,
    Inconclusive = 2,
}

/// Checker verdicts of a machine; each field is 0 or 1.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rtm2vMachineReport {
    pub deterministic: u8,
    pub reversible: u8,
    pub complete: u8,
    /// Number of halting `(state, symbol)` pairs.
    pub halting_pairs: usize,
}

pub struct Rtm2vMachine(TuringMachine);
pub struct Rtm2vElement(PatternPair);
pub struct Rtm2vTransducer(Transducer);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Fail(Rtm2vStatus, String);

type Res<T> = Result<T, Fail>;

fn fail<T>(status: Rtm2vStatus, msg: impl Into<String>) -> Res<T> {
    Err(Fail(status, msg.into()))
}

/// Runs `body`, records any error message, and converts panics into a status.
fn guard(body: impl FnOnce() -> Res<Rtm2vStatus>) -> Rtm2vStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            Rtm2vStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Res<&'a str> {
    if s.is_null() {
        return fail(Rtm2vStatus::NullPointer, format!("{what} is null"));
    }
    CStr::from_ptr(s)
        .to_str()
        .or_else(|_| fail(Rtm2vStatus::Encoding, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref()
        .map_or_else(|| fail(Rtm2vStatus::NullPointer, format!("{what} is null")), Ok)
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Res<&'a mut T> {
    p.as_mut()
        .map_or_else(|| fail(Rtm2vStatus::NullPointer, format!("{what} is null")), Ok)
}

fn parse<T>(s: &str) -> Res<T>
where
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    s.parse().or_else(|e: T::Err| fail(Rtm2vStatus::ParseError, e.to_string()))
}

unsafe fn give<T>(out: *mut *mut T, value: T) -> Res<Rtm2vStatus> {
    *out_ptr(out, "output handle")? = Box::into_raw(Box::new(value));
    Ok(Rtm2vStatus::Ok)
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Res<Rtm2vStatus> {
    let c = CString::new(s).or_else(|_| fail(Rtm2vStatus::Encoding, "output contains NUL"))?;
    *out_ptr(out, "output string")? = c.into_raw();
    Ok(Rtm2vStatus::Ok)
}

fn answer(yes: bool) -> Rtm2vStatus {
    if yes {
        Rtm2vStatus::Ok
    } else {
        Rtm2vStatus::False
    }
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rtm2v_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the machine text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_machine_parse(text_: *const c_char, out: *mut *mut Rtm2vMachine) -> Rtm2vStatus {
    guard(|| {
        let m: TuringMachine = parse(text(text_, "text")?)?;
        give(out, Rtm2vMachine(m))
    })
}

/// # Safety
/// `m` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_machine_free(m: *mut Rtm2vMachine) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Fills `report`; returns `Ok` when the machine is deterministic,
/// reversible and complete, `False` otherwise.
///
/// # Safety
/// `m` must be a live handle and `report` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_machine_check(m: *const Rtm2vMachine, report: *mut Rtm2vMachineReport) -> Rtm2vStatus {
    guard(|| {
        let m = &handle(m, "machine")?.0;
        let halting = m.halting_pairs().len();
        let r = Rtm2vMachineReport {
            deterministic: m.check_deterministic().is_ok() as u8,
            reversible: m.check_reversible().is_ok() as u8,
            complete: (halting == 0) as u8,
            halting_pairs: halting,
        };
        *out_ptr(report, "report")? = r;
        Ok(answer(r.deterministic == 1 && r.reversible == 1 && r.complete == 1))
    })
}

/// Compiles a machine into an element of 2V. `Invalid` when the machine fails
/// the checks the chosen mode requires.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_machine_compile(
    m: *const Rtm2vMachine,
    mode: Rtm2vMode,
    codes: Rtm2vCodes,
    out: *mut *mut Rtm2vElement,
) -> Rtm2vStatus {
    guard(|| {
        let m = &handle(m, "machine")?.0;
        let mode = match mode {
            Rtm2vMode::Complete => Mode::Complete,
            Rtm2vMode::Halting => Mode::Halting,
        };
        let style = match codes {
            Rtm2vCodes::Comb => CodeStyle::Comb,
            Rtm2vCodes::ExampleStyle => CodeStyle::ExampleStyle,
        };
        let scheme = turing::default_scheme(m, mode, style).or_else(|e| fail(Rtm2vStatus::Invalid, e.to_string()))?;
        let f = turing::compile(m, &scheme).or_else(|e| {
            let msg = match &e {
                CompileError::Incomplete(pairs) => format!("{e}: {} halting pairs", pairs.len()),
                _ => e.to_string(),
            };
            fail(Rtm2vStatus::Invalid, msg)
        })?;
        give(out, Rtm2vElement(f))
    })
}

/// Parses and validates the element text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_element_parse(text_: *const c_char, out: *mut *mut Rtm2vElement) -> Rtm2vStatus {
    guard(|| {
        let f: PatternPair = parse(text(text_, "text")?)?;
        f.validate().or_else(|e| fail(Rtm2vStatus::Invalid, e.to_string()))?;
        give(out, Rtm2vElement(f))
    })
}

/// # Safety
/// `f` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_element_free(f: *mut Rtm2vElement) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle and `len` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_element_len(f: *const Rtm2vElement, len: *mut usize) -> Rtm2vStatus {
    guard(|| {
        *out_ptr(len, "len")? = handle(f, "element")?.0.len();
        Ok(Rtm2vStatus::Ok)
    })
}

/// The element in its text format.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_element_to_string(f: *const Rtm2vElement, out: *mut *mut c_char) -> Rtm2vStatus {
    guard(|| give_string(out, handle(f, "element")?.0.to_string()))
}

/// `f` then `g`.
///
/// # Safety
/// `f` and `g` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_element_compose(
    f: *const Rtm2vElement,
    g: *const Rtm2vElement,
    out: *mut *mut Rtm2vElement,
) -> Rtm2vStatus {
    guard(|| {
        let h = handle(f, "f")?.0.compose(&handle(g, "g")?.0);
        give(out, Rtm2vElement(h))
    })
}

/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_element_invert(f: *const Rtm2vElement, out: *mut *mut Rtm2vElement) -> Rtm2vStatus {
    guard(|| give(out, Rtm2vElement(handle(f, "element")?.0.invert())))
}

/// `Ok` if the elements are equal, `False` if not.
///
/// # Safety
/// `f` and `g` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_element_equal(f: *const Rtm2vElement, g: *const Rtm2vElement) -> Rtm2vStatus {
    guard(|| Ok(answer(handle(f, "f")?.0.equals(&handle(g, "g")?.0))))
}

/// Applies `f` to a point literal such as `(101, -)`.
///
/// # Safety
/// `f` must be a live handle, `point` a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_element_apply(
    f: *const Rtm2vElement,
    point: *const c_char,
    out: *mut *mut c_char,
) -> Rtm2vStatus {
    guard(|| {
        let f = &handle(f, "element")?.0;
        let p: DyadicPoint = parse(text(point, "point")?)?;
        let image = f.apply(&p).or_else(|e| fail(Rtm2vStatus::Invalid, e.to_string()))?;
        give_string(out, image.to_string())
    })
}

/// Searches the first `max` powers. `Ok` with `*order` set when the order is
/// found, `False` when it exceeds `max` or is infinite.
///
/// # Safety
/// `f` must be a live handle and `order` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_element_order(f: *const Rtm2vElement, max: u64, order: *mut u64) -> Rtm2vStatus {
    guard(|| {
        let f = &handle(f, "element")?.0;
        let slot = out_ptr(order, "order")?;
        Ok(match f.order_bounded(max) {
            OrderSearch::Finite(k) => {
                *slot = k;
                Rtm2vStatus::Ok
            }
            OrderSearch::UnknownBeyond(_) => {
                *slot = 0;
                Rtm2vStatus::False
            }
        })
    })
}

/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_transducer_from_element(
    f: *const Rtm2vElement,
    out: *mut *mut Rtm2vTransducer,
) -> Rtm2vStatus {
    guard(|| give(out, Rtm2vTransducer(transducer::from_element(&handle(f, "element")?.0))))
}

/// Parses the transducer text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_transducer_parse(text_: *const c_char, out: *mut *mut Rtm2vTransducer) -> Rtm2vStatus {
    guard(|| {
        let t: Transducer = parse(text(text_, "text")?)?;
        give(out, Rtm2vTransducer(t))
    })
}

/// # Safety
/// `t` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_transducer_free(t: *mut Rtm2vTransducer) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_transducer_to_string(t: *const Rtm2vTransducer, out: *mut *mut c_char) -> Rtm2vStatus {
    guard(|| give_string(out, handle(t, "transducer")?.0.to_string()))
}

/// Runs on space-separated symbols and writes the space-separated output
/// (`-` when empty).
///
/// # Safety
/// `t` must be a live handle, `input` a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_transducer_run(
    t: *const Rtm2vTransducer,
    input: *const c_char,
    out: *mut *mut c_char,
) -> Rtm2vStatus {
    guard(|| {
        let t = &handle(t, "transducer")?.0;
        let symbols: Vec<&str> = text(input, "input")?.split_whitespace().filter(|s| *s != "-").collect();
        let (output, _) = t.run_names(&symbols).or_else(|e| fail(Rtm2vStatus::ParseError, e.to_string()))?;
        give_string(out, if output.is_empty() { "-".to_string() } else { output.join(" ") })
    })
}

/// `Ok` if nondegenerate; `False` with the witness cycle as the last error.
///
/// # Safety
/// `t` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_transducer_check_nondegenerate(t: *const Rtm2vTransducer) -> Rtm2vStatus {
    guard(|| match handle(t, "transducer")?.0.check_nondegenerate() {
        Ok(()) => Ok(Rtm2vStatus::Ok),
        Err(cycle) => fail(Rtm2vStatus::False, cycle.to_string()),
    })
}

/// Whether the orbit of `start` meets `rect` within `budget` steps. Sets
/// `*step` for `HitAt`.
///
/// # Safety
/// `f` must be a live handle, `start` and `rect` NUL-terminated strings and
/// `verdict`, `step` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_orbit_hit(
    f: *const Rtm2vElement,
    start: *const c_char,
    rect: *const c_char,
    budget: usize,
    verdict: *mut Rtm2vHit,
    step: *mut usize,
) -> Rtm2vStatus {
    guard(|| {
        let f = &handle(f, "element")?.0;
        let p: DyadicPoint = parse(text(start, "start")?)?;
        let r: Rect = parse(text(rect, "rect")?)?;
        let (v, k) = match orbit::hits_rectangle(f, &p, &r, budget) {
            HitVerdict::HitAt(k) => (Rtm2vHit::HitAt, k),
            HitVerdict::NoHitWithinBudget => (Rtm2vHit::NoHitWithinBudget, 0),
            HitVerdict::CycleWithoutHit => (Rtm2vHit::CycleWithoutHit, 0),
        };
        *out_ptr(verdict, "verdict")? = v;
        *out_ptr(step, "step")? = k;
        Ok(Rtm2vStatus::Ok)
    })
}

/// Looks for a witness that the orbit of `start` converges to `target`.
/// Sets `*step` for `ConvergedWitness`.
///
/// # Safety
/// `f` must be a live handle, `start` and `target` NUL-terminated strings and
/// `verdict`, `step` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rtm2v_orbit_converge(
    f: *const Rtm2vElement,
    start: *const c_char,
    target: *const c_char,
    budget: usize,
    verdict: *mut Rtm2vConvergence,
    step: *mut usize,
) -> Rtm2vStatus {
    guard(|| {
        let f = &handle(f, "element")?.0;
        let p: DyadicPoint = parse(text(start, "start")?)?;
        let q: DyadicPoint = parse(text(target, "target")?)?;
        let (v, k) = match orbit::converges_to(f, &p, &q, budget) {
            Convergence::ConvergedWitness(k) => (Rtm2vConvergence::ConvergedWitness, k),
            Convergence::DivergenceWitness { .. } => (Rtm2vConvergence::DivergenceWitness, 0),
            Convergence::Inconclusive => (Rtm2vConvergence::Inconclusive, 0),
        };
        *out_ptr(verdict, "verdict")? = v;
        *out_ptr(step, "step")? = k;
        Ok(Rtm2vStatus::Ok)
    })
}
