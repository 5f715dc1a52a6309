//! C interface to `harvest`.
//!
//! A [`HarvestSetup`] bundles detector parameters, a topology and a pair of
//! worldlines. Every function returns a [`HarvestStatus`]; on failure the
//! message is kept per thread and read with [`harvest_last_error_message`].
//! Panics are caught at the boundary and reported as `HARVEST_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use harvest::detector_matrix::{elements, DetectorParams, DEFAULT_NMAX};
use harvest::entanglement::xstate_measures;
use harvest::geometry::{worldlines_from_orientation, Topology, TopologyKind, WorldlinePair};
use harvest::special_functions::{erf_complex, faddeeva};
use harvest::wightman_oracle::{oracle, Element};
use harvest::{Complex64, HarvestError};
use nalgebra::Vector2;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarvestStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    DomainExceeded = 3,
    Overflow = 4,
    NonConvergence = 5,
    ExtrapolationDivergence = 6,
    DegenerateGeometry = 7,
    PositivityViolation = 8,
    InvalidState = 9,
    Range = 10,
    DegenerateVariance = 11,
    Config = 12,
    Panic = 13,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarvestTopology {
    Minkowski = 0,
    Cylinder = 1,
    Twisted = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarvestElement {
    A = 0,
    X = 1,
    C = 2,
}

/// Matrix elements per `eps0^2` plus image-sum diagnostics.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HarvestElements {
    pub a: f64,
    pub b: f64,
    pub x_re: f64,
    pub x_im: f64,
    pub c_re: f64,
    pub c_im: f64,
    pub e: f64,
    pub tail_estimate: f64,
    pub truncation_warning: c_int,
}

/// Entanglement measures in physical units. `corr` is NaN when undefined.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HarvestReport {
    pub negativity: f64,
    pub concurrence: f64,
    pub eof: f64,
    pub corr: f64,
    pub concurrence_leading: f64,
    pub harvested: c_int,
}

/// Opaque handle.
pub struct HarvestSetup {
    params: DetectorParams,
    topology: Topology,
    worldlines: WorldlinePair,
    nmax: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &HarvestError) -> HarvestStatus {
    match e {
        HarvestError::DomainExceeded(_) => HarvestStatus::DomainExceeded,
        HarvestError::Overflow(_) => HarvestStatus::Overflow,
        HarvestError::InvalidParameter(_) => HarvestStatus::InvalidParameter,
        HarvestError::NonConvergence(_) => HarvestStatus::NonConvergence,
        HarvestError::ExtrapolationDivergence(_) => HarvestStatus::ExtrapolationDivergence,
        HarvestError::DegenerateGeometry(_) => HarvestStatus::DegenerateGeometry,
        HarvestError::PositivityViolation(_) => HarvestStatus::PositivityViolation,
        HarvestError::InvalidState(_) => HarvestStatus::InvalidState,
        HarvestError::Range(_) => HarvestStatus::Range,
        HarvestError::DegenerateVariance(_) => HarvestStatus::DegenerateVariance,
        HarvestError::Config(_) => HarvestStatus::Config,
    }
}

enum Fail {
    Null(&'static str),
    Lib(HarvestError),
}

impl From<HarvestError> for Fail {
    fn from(e: HarvestError) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HarvestStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            HarvestStatus::Ok
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            HarvestStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            HarvestStatus::Panic
        }
    }
}

unsafe fn setup_ref<'a>(s: *const HarvestSetup) -> Result<&'a HarvestSetup, Fail> {
    s.as_ref().ok_or(Fail::Null("setup"))
}

unsafe fn setup_mut<'a>(s: *mut HarvestSetup) -> Result<&'a mut HarvestSetup, Fail> {
    s.as_mut().ok_or(Fail::Null("setup"))
}

unsafe fn write<T>(out: *mut T, v: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    out.write(v);
    Ok(())
}

/// Creates a Minkowski setup with B a distance `sigma` from A along x.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn harvest_setup_new(
    omega: f64,
    sigma: f64,
    eps0: f64,
    out: *mut *mut HarvestSetup,
) -> HarvestStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let params = DetectorParams::new(omega, sigma, eps0)?;
        let setup = HarvestSetup {
            params,
            topology: Topology::minkowski(),
            worldlines: worldlines_from_orientation(sigma, 0.0)?,
            nmax: DEFAULT_NMAX,
        };
        out.write(Box::into_raw(Box::new(setup)));
        Ok(())
    })
}

/// # Safety
/// `setup` must be null or come from [`harvest_setup_new`] and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn harvest_setup_free(setup: *mut HarvestSetup) {
    if !setup.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(setup))));
    }
}

/// `ell` is ignored for Minkowski; `eta` is +1 or -1.
///
/// # Safety
/// `setup` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn harvest_setup_set_topology(
    setup: *mut HarvestSetup,
    kind: HarvestTopology,
    ell: f64,
    eta: c_int,
) -> HarvestStatus {
    guard(|| {
        let s = setup_mut(setup)?;
        let eta = i8::try_from(eta)
            .map_err(|_| HarvestError::InvalidParameter(format!("eta must be +1 or -1, got {eta}")))?;
        s.topology = match kind {
            HarvestTopology::Minkowski => Topology::minkowski(),
            HarvestTopology::Cylinder => Topology::new(TopologyKind::Cylinder, Some(ell), eta)?,
            HarvestTopology::Twisted => Topology::new(TopologyKind::Twisted, Some(ell), eta)?,
        };
        Ok(())
    })
}

/// Places A at `(ax, ay, az)` and B at `(bx, by, bz)`; `z` is the compact direction.
///
/// # Safety
/// `setup` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn harvest_setup_set_positions(
    setup: *mut HarvestSetup,
    ax: f64,
    ay: f64,
    az: f64,
    bx: f64,
    by: f64,
    bz: f64,
) -> HarvestStatus {
    guard(|| {
        let s = setup_mut(setup)?;
        if ![ax, ay, az, bx, by, bz].iter().all(|v| v.is_finite()) {
            return Err(HarvestError::InvalidParameter("non-finite position".into()).into());
        }
        s.worldlines = WorldlinePair::new(Vector2::new(ax, ay), az, Vector2::new(bx, by), bz);
        Ok(())
    })
}

/// A at the origin, B at `(l cos theta, 0, l sin theta)`.
///
/// # Safety
/// `setup` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn harvest_setup_set_orientation(
    setup: *mut HarvestSetup,
    l: f64,
    theta: f64,
) -> HarvestStatus {
    guard(|| {
        let s = setup_mut(setup)?;
        s.worldlines = worldlines_from_orientation(l, theta)?;
        Ok(())
    })
}

/// # Safety
/// `setup` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn harvest_setup_set_nmax(setup: *mut HarvestSetup, nmax: usize) -> HarvestStatus {
    guard(|| {
        let s = setup_mut(setup)?;
        if nmax < 1 {
            return Err(HarvestError::InvalidParameter("nmax must be at least 1".into()).into());
        }
        s.nmax = nmax;
        Ok(())
    })
}

/// # Safety
/// `setup` must be a live handle or null; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn harvest_elements(
    setup: *const HarvestSetup,
    out: *mut HarvestElements,
) -> HarvestStatus {
    guard(|| {
        let s = setup_ref(setup)?;
        let q = elements(&s.params, &s.worldlines, &s.topology, s.nmax)?;
        let st = q.state;
        let v = HarvestElements {
            a: st.a,
            b: st.b,
            x_re: st.x.re,
            x_im: st.x.im,
            c_re: st.c.re,
            c_im: st.c.im,
            e: st.e,
            tail_estimate: q.diagnostics.tail_estimate,
            truncation_warning: q.diagnostics.truncation_warning as c_int,
        };
        write(out, v, "out")
    })
}

/// # Safety
/// `setup` must be a live handle or null; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn harvest_report(setup: *const HarvestSetup, out: *mut HarvestReport) -> HarvestStatus {
    guard(|| {
        let s = setup_ref(setup)?;
        let q = elements(&s.params, &s.worldlines, &s.topology, s.nmax)?;
        let r = xstate_measures(&q.state, s.params.eps0())?;
        let v = HarvestReport {
            negativity: r.negativity,
            concurrence: r.concurrence,
            eof: r.eof,
            corr: r.corr.unwrap_or(f64::NAN),
            concurrence_leading: r.concurrence_leading,
            harvested: r.harvested as c_int,
        };
        write(out, v, "out")
    })
}

/// Quadrature value of one element at image distance `l_image`, per `eps0^2`.
///
/// # Safety
/// `setup` must be a live handle or null; `re` and `im` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn harvest_oracle(
    setup: *const HarvestSetup,
    element: HarvestElement,
    l_image: f64,
    re: *mut f64,
    im: *mut f64,
) -> HarvestStatus {
    guard(|| {
        let s = setup_ref(setup)?;
        if re.is_null() || im.is_null() {
            return Err(Fail::Null("re/im"));
        }
        let which = match element {
            HarvestElement::A => Element::A,
            HarvestElement::X => Element::X,
            HarvestElement::C => Element::C,
        };
        let v = oracle(which, &s.params, l_image)?;
        re.write(v.re);
        im.write(v.im);
        Ok(())
    })
}

/// Complex error function.
///
/// # Safety
/// `re_out` and `im_out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn harvest_erf(re: f64, im: f64, re_out: *mut f64, im_out: *mut f64) -> HarvestStatus {
    guard(|| {
        if re_out.is_null() || im_out.is_null() {
            return Err(Fail::Null("re_out/im_out"));
        }
        let v = erf_complex(Complex64::new(re, im))?;
        re_out.write(v.re);
        im_out.write(v.im);
        Ok(())
    })
}

/// Faddeeva function `w(z) = exp(-z^2) erfc(-iz)`.
///
/// # Safety
/// `re_out` and `im_out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn harvest_faddeeva(re: f64, im: f64, re_out: *mut f64, im_out: *mut f64) -> HarvestStatus {
    guard(|| {
        if re_out.is_null() || im_out.is_null() {
            return Err(Fail::Null("re_out/im_out"));
        }
        let v = faddeeva(Complex64::new(re, im));
        re_out.write(v.re);
        im_out.write(v.im);
        Ok(())
    })
}

/// Bytes needed for the last error message on this thread, including the
/// terminating NUL; 0 when there is none.
#[no_mangle]
pub extern "C" fn harvest_last_error_length() -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        if e.is_empty() {
            0
        } else {
            e.len() + 1
        }
    })
}

/// Copies the last error message into `buf`, truncating to `len - 1` bytes
/// and NUL-terminating. Returns the number of bytes written without the NUL.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes of writes.
#[no_mangle]
pub unsafe extern "C" fn harvest_last_error_message(buf: *mut c_char, len: usize) -> usize {
    if buf.is_null() || len == 0 {
        return 0;
    }
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let n = e.len().min(len - 1);
        ptr::copy_nonoverlapping(e.as_ptr() as *const c_char, buf, n);
        buf.add(n).write(0);
        n
    })
}

/// NUL-terminated library version.
#[no_mangle]
pub extern "C" fn harvest_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
