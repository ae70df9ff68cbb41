//! C interface to `wreath_powers`.
//!
//! Groups are passed around as opaque `WpGroup` handles. Every fallible call
//! returns a `WpStatus`; on failure `wp_last_error_message` describes the
//! most recent error on the calling thread. Big integers and rationals come
//! back as NUL-terminated decimal strings ("81", "1/2") that the caller
//! releases with `wp_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use wreath_powers::arith::fmt_rational;
use wreath_powers::groups::{
    build_from_cayley, conjugacy_classes, nonpower_classes, ClassStructure,
};
use wreath_powers::wreath::{
    count_classes, count_power_classes_formula, count_power_elements, prob_r_wreath,
};
use wreath_powers::{oracle, Error, GroupSpec, Prime};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    NotPrime = 4,
    ParseError = 5,
    InvalidGroup = 6,
    GuardExceeded = 7,
    Hypothesis = 8,
    Internal = 9,
}

/// Opaque group handle with its conjugacy classes precomputed.
pub struct WpGroup {
    classes: ClassStructure,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(WpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::NotPrime(_) => WpStatus::NotPrime,
            Error::Parse { .. } => WpStatus::ParseError,
            Error::InvalidGroup(_) | Error::NonAssociative { .. } | Error::Catalog(_) => {
                WpStatus::InvalidGroup
            }
            Error::GuardExceeded { .. } => WpStatus::GuardExceeded,
            Error::Hypothesis(_) => WpStatus::Hypothesis,
            Error::Dimension(_) | Error::Precondition(_) | Error::Input(_) => {
                WpStatus::InvalidArgument
            }
            Error::Series(_) => WpStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(WpStatus::NullPointer, format!("{what} is null"))
}

fn guarded(body: impl FnOnce() -> Result<(), Failure>) -> WpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            WpStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WpStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(WpStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn group_ref<'a>(g: *const WpGroup) -> Result<&'a WpGroup, Failure> {
    g.as_ref().ok_or_else(|| null("group"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(WpStatus::Internal, "embedded NUL".into()))?;
    write_out(out, c.into_raw())
}

fn prime(r: u64) -> Result<Prime, Failure> {
    Ok(Prime::new(r)?)
}

unsafe fn emit_group(out: *mut *mut WpGroup, classes: ClassStructure) -> Result<(), Failure> {
    write_out(out, Box::into_raw(Box::new(WpGroup { classes })))
}

/// Builds a group from a spec string: "1", "C:m", "S:m", "D:m", or a path
/// to a group file.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_group_from_spec(
    spec: *const c_char,
    out: *mut *mut WpGroup,
) -> WpStatus {
    guarded(|| {
        let spec: GroupSpec = read_str(spec, "spec")?.parse()?;
        emit_group(out, conjugacy_classes(&spec.resolve()?))
    })
}

/// Builds a group from the text of a group file.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_group_from_cayley(
    text: *const c_char,
    out: *mut *mut WpGroup,
) -> WpStatus {
    guarded(|| {
        let g = build_from_cayley(read_str(text, "text")?)?;
        emit_group(out, conjugacy_classes(&g))
    })
}

/// Releases a handle. Passing null is a no-op.
///
/// # Safety
/// `group` must come from a `wp_group_from_*` call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wp_group_free(group: *mut WpGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// `group` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_group_order(group: *const WpGroup, out: *mut u64) -> WpStatus {
    guarded(|| write_out(out, group_ref(group)?.classes.group_order()))
}

/// Number of conjugacy classes of G.
///
/// # Safety
/// `group` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_group_num_classes(group: *const WpGroup, out: *mut usize) -> WpStatus {
    guarded(|| write_out(out, group_ref(group)?.classes.num_classes()))
}

/// Number of classes of G that are not r-th powers of a class.
///
/// # Safety
/// `group` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_nonpower_class_count(
    group: *const WpGroup,
    r: u64,
    out: *mut usize,
) -> WpStatus {
    guarded(|| {
        let lab = nonpower_classes(&group_ref(group)?.classes, prime(r)?);
        write_out(out, lab.d())
    })
}

/// Number of conjugacy classes of G wr S_n for a group with `s` classes.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_count_classes(s: usize, n: u32, out: *mut *mut c_char) -> WpStatus {
    guarded(|| {
        if s == 0 {
            return Err(Failure(
                WpStatus::InvalidArgument,
                "s must be at least 1".into(),
            ));
        }
        write_string(out, count_classes(s, n).to_string())
    })
}

/// Number of conjugacy classes of G wr S_n consisting of r-th powers.
///
/// # Safety
/// `group` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_count_power_classes(
    group: *const WpGroup,
    n: u32,
    r: u64,
    out: *mut *mut c_char,
) -> WpStatus {
    guarded(|| {
        let count = count_power_classes_formula(&group_ref(group)?.classes, n, prime(r)?);
        write_string(out, count.to_string())
    })
}

/// Number of r-th powers in G wr S_n.
///
/// # Safety
/// `group` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_count_power_elements(
    group: *const WpGroup,
    n: u32,
    r: u64,
    out: *mut *mut c_char,
) -> WpStatus {
    guarded(|| {
        let count = count_power_elements(&group_ref(group)?.classes, n, prime(r)?);
        write_string(out, count.to_string())
    })
}

/// Proportion of r-th powers in G wr S_n, as "a/b".
///
/// # Safety
/// `group` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_power_probability(
    group: *const WpGroup,
    n: u32,
    r: u64,
    out: *mut *mut c_char,
) -> WpStatus {
    guarded(|| {
        let p = prob_r_wreath(&group_ref(group)?.classes, n, prime(r)?);
        write_string(out, fmt_rational(&p))
    })
}

/// Counts the distinct m-th powers by enumerating every element. Any m >= 1
/// is accepted; large products fail with `WP_STATUS_GUARD_EXCEEDED`.
///
/// # Safety
/// `group` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_oracle_power_count(
    group: *const WpGroup,
    n: u32,
    m: u64,
    out: *mut u64,
) -> WpStatus {
    guarded(|| {
        if m == 0 {
            return Err(Failure(
                WpStatus::InvalidArgument,
                "exponent must be at least 1".into(),
            ));
        }
        let count = oracle::power_image_count(group_ref(group)?.classes.group(), n, m)?;
        write_out(out, count)
    })
}

/// Releases a string returned by this library. Passing null is a no-op.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or "" after a success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn wp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
