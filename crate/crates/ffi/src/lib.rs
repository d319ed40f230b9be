//! C ABI for `secondlargest`.
//!
//! Every fallible function returns an [`SlStatus`]. On failure a message is
//! kept per thread and can be read with [`sl_last_error`] until the next
//! failing call on the same thread. Integer selectors (`SL_BASELINE_*`,
//! `SL_GENERATOR_*`, `SL_ORDER_*`, `SL_SIDE_*`) are plain ints so that
//! out-of-range values from C are reported rather than undefined.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use secondlargest::baseline::BaselineSpec;
use secondlargest::copula::GeneratorSpec;
use secondlargest::els::{ElsConfig, SupportMode};
use secondlargest::error::Error;
use secondlargest::grid::GridSpec;
use secondlargest::orderstats::{
    cdf_second_largest, check_order, preferred_rh_method, rh_second_largest, Order, Verdict,
};
use secondlargest::theorems::{run_theorem, Fixture, FixtureName, TheoremId};

pub const SL_BASELINE_POWER_CAP: i32 = 0;
pub const SL_BASELINE_LOGLOG: i32 = 1;
pub const SL_BASELINE_SHIFTED_WEIBULL_EXP: i32 = 2;

pub const SL_GENERATOR_INDEPENDENCE: i32 = 0;
pub const SL_GENERATOR_GUMBEL_HOUGAARD: i32 = 1;
pub const SL_GENERATOR_GUMBEL_BARNETT: i32 = 2;
pub const SL_GENERATOR_CLAYTON: i32 = 3;

pub const SL_ORDER_ST: i32 = 0;
pub const SL_ORDER_RH: i32 = 1;

pub const SL_SIDE_X: i32 = 0;
pub const SL_SIDE_Y: i32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfSupport = 3,
    EvaluationFailed = 4,
    Unknown = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlVerdict {
    Holds = 0,
    Fails = 1,
    Inconclusive = 2,
}

/// Opaque population handle. Free with [`sl_config_free`].
pub struct SlConfig {
    inner: ElsConfig,
}

struct Failure {
    status: SlStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::OutOfSupport { .. } | Error::GridBelowLocation { .. } => SlStatus::OutOfSupport,
            Error::DegenerateDenominator { .. } | Error::EvaluationFailure { .. } | Error::PolicyExhausted { .. } => {
                SlStatus::EvaluationFailed
            }
            Error::Unknown { .. } | Error::UnsupportedGenerator(_) => SlStatus::Unknown,
            _ => SlStatus::InvalidArgument,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn fail(status: SlStatus, message: impl Into<String>) -> Failure {
    Failure {
        status,
        message: message.into(),
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SlStatus::Ok,
        Ok(Err(e)) => {
            set_last_error(&e.message);
            e.status
        }
        Err(_) => {
            set_last_error("internal panic");
            SlStatus::Panic
        }
    }
}

unsafe fn slice<'a>(p: *const f64, n: usize, what: &str) -> Result<&'a [f64], Failure> {
    if p.is_null() {
        return Err(fail(SlStatus::NullPointer, format!("{what} is null")));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

unsafe fn config<'a>(p: *const SlConfig, what: &str) -> Result<&'a ElsConfig, Failure> {
    p.as_ref()
        .map(|c| &c.inner)
        .ok_or_else(|| fail(SlStatus::NullPointer, format!("{what} is null")))
}

unsafe fn string<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(SlStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(SlStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(SlStatus::NullPointer, format!("{what} is null")));
    }
    out.write(v);
    Ok(())
}

fn order(o: i32) -> Result<Order, Failure> {
    match o {
        SL_ORDER_ST => Ok(Order::St),
        SL_ORDER_RH => Ok(Order::Rh),
        _ => Err(fail(SlStatus::InvalidArgument, format!("unknown order {o}"))),
    }
}

fn boxed(cfg: ElsConfig) -> *mut SlConfig {
    Box::into_raw(Box::new(SlConfig { inner: cfg }))
}

/// Creates a population of `n` components. `a` and `c` are the baseline
/// parameters; `loglog` ignores both and `shifted_weibull_exp` ignores `c`.
///
/// # Safety
/// `lambda`, `theta` and `alpha` must each point to `n` readable doubles and
/// `out` to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_config_new(
    lambda: *const f64,
    theta: *const f64,
    alpha: *const f64,
    n: usize,
    baseline: i32,
    a: f64,
    c: f64,
    out: *mut *mut SlConfig,
) -> SlStatus {
    guard(|| {
        let b = match baseline {
            SL_BASELINE_POWER_CAP => BaselineSpec::power_cap(a, c)?,
            SL_BASELINE_LOGLOG => BaselineSpec::loglog(),
            SL_BASELINE_SHIFTED_WEIBULL_EXP => BaselineSpec::shifted_weibull_exp(a)?,
            _ => return Err(fail(SlStatus::InvalidArgument, format!("unknown baseline {baseline}"))),
        };
        let cfg = ElsConfig::new(
            slice(lambda, n, "lambda")?.to_vec(),
            slice(theta, n, "theta")?.to_vec(),
            slice(alpha, n, "alpha")?.to_vec(),
            b,
        )?;
        put(out, boxed(cfg), "out")
    })
}

/// Copies one side of a compiled-in fixture such as `"Ex3_1"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_config_from_fixture(name: *const c_char, side: i32, out: *mut *mut SlConfig) -> SlStatus {
    guard(|| {
        let fx = Fixture::get(string(name, "name")?.parse::<FixtureName>()?);
        let cfg = match side {
            SL_SIDE_X => fx.x,
            SL_SIDE_Y => fx.y,
            _ => return Err(fail(SlStatus::InvalidArgument, format!("unknown side {side}"))),
        };
        put(out, boxed(cfg), "out")
    })
}

/// Attaches an Archimedean generator. `param` is ignored for independence.
///
/// # Safety
/// `cfg` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sl_config_set_generator(cfg: *mut SlConfig, family: i32, param: f64) -> SlStatus {
    guard(|| {
        let cfg = cfg.as_mut().ok_or_else(|| fail(SlStatus::NullPointer, "cfg is null"))?;
        let g = match family {
            SL_GENERATOR_INDEPENDENCE => GeneratorSpec::Independence,
            SL_GENERATOR_GUMBEL_HOUGAARD => GeneratorSpec::gumbel_hougaard(param)?,
            SL_GENERATOR_GUMBEL_BARNETT => GeneratorSpec::gumbel_barnett(param)?,
            SL_GENERATOR_CLAYTON => GeneratorSpec::clayton(param)?,
            _ => return Err(fail(SlStatus::InvalidArgument, format!("unknown generator {family}"))),
        };
        cfg.inner.generator = Some(g);
        Ok(())
    })
}

/// Evaluates bounded baselines past their support as written instead of
/// clamping.
///
/// # Safety
/// `cfg` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sl_config_set_extrapolate(cfg: *mut SlConfig, extrapolate: bool) -> SlStatus {
    guard(|| {
        let cfg = cfg.as_mut().ok_or_else(|| fail(SlStatus::NullPointer, "cfg is null"))?;
        cfg.inner.support_mode = if extrapolate {
            SupportMode::Extrapolate
        } else {
            SupportMode::Clamp
        };
        Ok(())
    })
}

/// Number of components, or 0 for a null handle.
///
/// # Safety
/// `cfg` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sl_config_len(cfg: *const SlConfig) -> usize {
    cfg.as_ref().map_or(0, |c| c.inner.n())
}

/// # Safety
/// `cfg` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl_config_free(cfg: *mut SlConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// CDF of the second-largest component lifetime at `x`.
///
/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_cdf_second_largest(cfg: *const SlConfig, x: f64, out: *mut f64) -> SlStatus {
    guard(|| put(out, cdf_second_largest(config(cfg, "cfg")?, x)?, "out"))
}

/// Reversed hazard rate of the second-largest component lifetime at `x`.
///
/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_rh_second_largest(cfg: *const SlConfig, x: f64, out: *mut f64) -> SlStatus {
    guard(|| {
        let c = config(cfg, "cfg")?;
        put(out, rh_second_largest(c, x, preferred_rh_method(c))?, "out")
    })
}

/// Writes the CDF on `points` evenly spaced points of `[lo, hi]` to `out`.
///
/// # Safety
/// `cfg` must be a live handle and `out` must hold `points` doubles.
#[no_mangle]
pub unsafe extern "C" fn sl_cdf_grid(cfg: *const SlConfig, lo: f64, hi: f64, points: usize, out: *mut f64) -> SlStatus {
    guard(|| {
        let c = config(cfg, "cfg")?;
        let g = GridSpec::new(lo, hi, points)?;
        if out.is_null() {
            return Err(fail(SlStatus::NullPointer, "out is null"));
        }
        let dst = std::slice::from_raw_parts_mut(out, points);
        for (d, x) in dst.iter_mut().zip(g.iter()) {
            *d = cdf_second_largest(c, x)?;
        }
        Ok(())
    })
}

/// Checks `X <= Y` in the given order on a grid. `max_violation` may be null.
///
/// # Safety
/// `x`, `y` must be live handles, `verdict` writable, `max_violation` null
/// or writable.
#[no_mangle]
pub unsafe extern "C" fn sl_check_order(
    x: *const SlConfig,
    y: *const SlConfig,
    order_kind: i32,
    lo: f64,
    hi: f64,
    points: usize,
    verdict: *mut SlVerdict,
    max_violation: *mut f64,
) -> SlStatus {
    guard(|| {
        let g = GridSpec::new(lo, hi, points)?;
        let r = check_order(config(x, "x")?, config(y, "y")?, order(order_kind)?, &g)?;
        let v = match r.verdict {
            Verdict::Holds => SlVerdict::Holds,
            Verdict::Fails => SlVerdict::Fails,
            Verdict::Inconclusive => SlVerdict::Inconclusive,
        };
        put(verdict, v, "verdict")?;
        if !max_violation.is_null() {
            max_violation.write(r.max_violation);
        }
        Ok(())
    })
}

/// Runs a theorem check such as `"T3_1"`. `consistent` receives whether the
/// outcome agrees with the theorem. When `record` is non-null it receives a
/// one-line report to be released with [`sl_string_free`].
///
/// # Safety
/// `theorem` must be a NUL-terminated string, `x`, `y` live handles,
/// `consistent` writable and `record` null or writable.
#[no_mangle]
pub unsafe extern "C" fn sl_run_theorem(
    theorem: *const c_char,
    x: *const SlConfig,
    y: *const SlConfig,
    lo: f64,
    hi: f64,
    points: usize,
    consistent: *mut bool,
    record: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let id: TheoremId = string(theorem, "theorem")?.parse()?;
        let g = GridSpec::new(lo, hi, points)?;
        let v = run_theorem(id, config(x, "x")?, config(y, "y")?, &g)?;
        put(consistent, v.consistent, "consistent")?;
        if !record.is_null() {
            let s = CString::new(v.record()).map_err(|_| fail(SlStatus::EvaluationFailed, "record has NUL"))?;
            record.write(s.into_raw());
        }
        Ok(())
    })
}

/// Message of the last failure on this thread, or null. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(sl_last_error()) }
            .to_string_lossy()
            .into_owned()
    }

    fn fixture(name: &str, side: i32) -> *mut SlConfig {
        let name = CString::new(name).unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(
            unsafe { sl_config_from_fixture(name.as_ptr(), side, &mut p) },
            SlStatus::Ok
        );
        p
    }

    #[test]
    fn cdf_matches_library() {
        let l = [4.0; 3];
        let t = [5.0, 9.0, 10.0];
        let a = [4.0; 3];
        let mut cfg = ptr::null_mut();
        let s = unsafe {
            sl_config_new(
                l.as_ptr(),
                t.as_ptr(),
                a.as_ptr(),
                3,
                SL_BASELINE_POWER_CAP,
                0.2,
                100.0,
                &mut cfg,
            )
        };
        assert_eq!(s, SlStatus::Ok);
        assert_eq!(unsafe { sl_config_len(cfg) }, 3);
        let mut v = 0.0;
        assert_eq!(unsafe { sl_cdf_second_largest(cfg, 54.0, &mut v) }, SlStatus::Ok);
        let want = cdf_second_largest(&Fixture::get(FixtureName::Ex3_1).x, 54.0).unwrap();
        assert_eq!(v.to_bits(), want.to_bits());
        let mut grid = [0.0; 5];
        assert_eq!(
            unsafe { sl_cdf_grid(cfg, 5.0, 54.0, 5, grid.as_mut_ptr()) },
            SlStatus::Ok
        );
        assert_eq!(grid[4].to_bits(), want.to_bits());
        assert!(grid.windows(2).all(|w| w[0] <= w[1]));
        unsafe { sl_config_free(cfg) };
    }

    #[test]
    fn validation_errors_set_message() {
        let l = [1.0, 1.0];
        let t = [1.0, 0.0];
        let mut cfg = ptr::null_mut();
        let s = unsafe {
            sl_config_new(
                l.as_ptr(),
                t.as_ptr(),
                l.as_ptr(),
                2,
                SL_BASELINE_LOGLOG,
                0.0,
                0.0,
                &mut cfg,
            )
        };
        assert_eq!(s, SlStatus::InvalidArgument);
        assert!(cfg.is_null());
        assert!(last_error().contains("theta[1]"));
        let s = unsafe { sl_config_new(l.as_ptr(), l.as_ptr(), l.as_ptr(), 2, 9, 0.0, 0.0, &mut cfg) };
        assert_eq!(s, SlStatus::InvalidArgument);
        assert!(last_error().contains("baseline 9"));
    }

    #[test]
    fn null_pointers_are_reported() {
        let mut v = 0.0;
        assert_eq!(
            unsafe { sl_cdf_second_largest(ptr::null(), 1.0, &mut v) },
            SlStatus::NullPointer
        );
        let x = fixture("Ex3_1", SL_SIDE_X);
        assert_eq!(
            unsafe { sl_cdf_second_largest(x, 10.0, ptr::null_mut()) },
            SlStatus::NullPointer
        );
        let s = unsafe { sl_config_new(ptr::null(), ptr::null(), ptr::null(), 3, 0, 0.2, 100.0, ptr::null_mut()) };
        assert_eq!(s, SlStatus::NullPointer);
        unsafe { sl_config_free(x) };
        unsafe { sl_config_free(ptr::null_mut()) };
        unsafe { sl_string_free(ptr::null_mut()) };
    }

    #[test]
    fn order_and_theorem_checks() {
        let x = fixture("Ex3_1", SL_SIDE_X);
        let y = fixture("Ex3_1", SL_SIDE_Y);
        let mut v = SlVerdict::Inconclusive;
        let mut m = -1.0;
        // X <= Y in st for this fixture, not the reverse
        let s = unsafe { sl_check_order(x, y, SL_ORDER_ST, 4.001, 100.0, 1024, &mut v, &mut m) };
        assert_eq!(s, SlStatus::Ok);
        assert_eq!(v, SlVerdict::Holds);
        assert_eq!(m, 0.0);
        let s = unsafe { sl_check_order(y, x, SL_ORDER_ST, 4.001, 100.0, 1024, &mut v, ptr::null_mut()) };
        assert_eq!(s, SlStatus::Ok);
        assert_eq!(v, SlVerdict::Fails);
        let s = unsafe { sl_check_order(y, x, 7, 4.001, 100.0, 1024, &mut v, ptr::null_mut()) };
        assert_eq!(s, SlStatus::InvalidArgument);
        let s = unsafe { sl_check_order(y, x, SL_ORDER_ST, 1.0, 100.0, 1024, &mut v, ptr::null_mut()) };
        assert_eq!(s, SlStatus::OutOfSupport);

        let id = CString::new("T3_1").unwrap();
        let mut ok = false;
        let mut rec = ptr::null_mut();
        let s = unsafe { sl_run_theorem(id.as_ptr(), x, y, 4.001, 100.0, 1024, &mut ok, &mut rec) };
        assert_eq!(s, SlStatus::Ok);
        assert!(ok);
        let text = unsafe { CStr::from_ptr(rec) }.to_str().unwrap().to_string();
        assert!(text.starts_with("T3_1 hypotheses:"), "{text}");
        unsafe { sl_string_free(rec) };

        let bad = CString::new("T9_9").unwrap();
        let s = unsafe { sl_run_theorem(bad.as_ptr(), x, y, 4.001, 100.0, 1024, &mut ok, ptr::null_mut()) };
        assert_eq!(s, SlStatus::Unknown);
        assert!(last_error().contains("T9_9"));
        unsafe {
            sl_config_free(x);
            sl_config_free(y);
        }
    }

    #[test]
    fn generators_and_rh() {
        let x = fixture("Ex3_2", SL_SIDE_X);
        let mut r = 0.0;
        assert_eq!(unsafe { sl_rh_second_largest(x, 10.0, &mut r) }, SlStatus::Ok);
        assert!(r > 0.0);
        assert_eq!(
            unsafe { sl_config_set_generator(x, SL_GENERATOR_CLAYTON, -1.0) },
            SlStatus::InvalidArgument
        );
        assert_eq!(
            unsafe { sl_config_set_generator(x, SL_GENERATOR_CLAYTON, 1.0) },
            SlStatus::Ok
        );
        let mut dep = 0.0;
        assert_eq!(unsafe { sl_rh_second_largest(x, 10.0, &mut dep) }, SlStatus::Ok);
        assert_ne!(dep, r);
        assert_eq!(unsafe { sl_config_set_extrapolate(x, true) }, SlStatus::Ok);
        unsafe { sl_config_free(x) };
    }

    #[test]
    fn version_is_static() {
        let v = unsafe { CStr::from_ptr(sl_version()) }.to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}
