//! C ABI for `anosov-cert`.
//!
//! Jobs and certificates are opaque handles created and freed by this library.
//! Every fallible function returns an [`AnosovStatus`]; on failure a message is
//! available from [`anosov_last_error_message`] on the same thread. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`anosov_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use anosov_cert::certifier::{self, builtin_example, CertError, Certificate, JobConfig, Verdict};
use anosov_cert::criteria::eps_max;
use anosov_cert::symspace::{self, HyperplaneFlag, LineFlag, Point, Tolerances};
use nalgebra::{DMatrix, DVector};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnosovStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidConfig = 3,
    Io = 4,
    Computation = 5,
    Geometry = 6,
    Panic = 7,
}

/// Outcome of a certification run.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnosovVerdict {
    Certified = 0,
    NotCertifiedAtThisK = 1,
    RegularityObstruction = 2,
    ToleranceCollision = 3,
}

impl From<Verdict> for AnosovVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Certified => AnosovVerdict::Certified,
            Verdict::NotCertifiedAtThisK => AnosovVerdict::NotCertifiedAtThisK,
            Verdict::RegularityObstruction => AnosovVerdict::RegularityObstruction,
            Verdict::ToleranceCollision => AnosovVerdict::ToleranceCollision,
        }
    }
}

/// A validated job configuration.
pub struct AnosovJob {
    config: JobConfig,
}

/// The result of a certification run.
pub struct AnosovCertificate {
    cert: Certificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Outcome = Result<(), (AnosovStatus, String)>;

fn guard(f: impl FnOnce() -> Outcome) -> AnosovStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AnosovStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            AnosovStatus::Panic
        }
    }
}

fn null(name: &str) -> (AnosovStatus, String) {
    (AnosovStatus::NullPointer, format!("{name} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, name: &str) -> Result<&'a str, (AnosovStatus, String)> {
    if s.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (AnosovStatus::InvalidUtf8, format!("{name}: {e}")))
}

fn cert_status(e: &CertError) -> AnosovStatus {
    match e {
        CertError::Config(_) => AnosovStatus::InvalidConfig,
        CertError::Io { .. } => AnosovStatus::Io,
        CertError::Cayley(_) | CertError::Criteria(_) => AnosovStatus::Computation,
    }
}

fn into_c_string(s: String) -> Result<*mut c_char, (AnosovStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| (AnosovStatus::Computation, e.to_string()))
}

/// Message of the last failure on this thread, or null. The pointer stays valid
/// until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn anosov_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn anosov_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn anosov_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a JSON job configuration.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn anosov_job_from_json(
    json: *const c_char,
    out: *mut *mut AnosovJob,
) -> AnosovStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        let config = JobConfig::from_json(text).map_err(|e| (cert_status(&e), e.to_string()))?;
        *out = Box::into_raw(Box::new(AnosovJob { config }));
        Ok(())
    })
}

/// The built-in genus-two example with half length `k = 4`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn anosov_job_builtin_example(out: *mut *mut AnosovJob) -> AnosovStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = Box::into_raw(Box::new(AnosovJob {
            config: builtin_example(),
        }));
        Ok(())
    })
}

/// Changes the half length `k` of a job.
///
/// # Safety
/// `job` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn anosov_job_set_half_length(job: *mut AnosovJob, k: usize) -> AnosovStatus {
    guard(|| {
        let job = job.as_mut().ok_or_else(|| null("job"))?;
        let mut config = job.config.clone();
        config.half_length = k;
        config
            .validate()
            .map_err(|e| (cert_status(&e), e.to_string()))?;
        job.config = config;
        Ok(())
    })
}

/// Serializes a job configuration to JSON.
///
/// # Safety
/// `job` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn anosov_job_to_json(
    job: *const AnosovJob,
    out: *mut *mut c_char,
) -> AnosovStatus {
    guard(|| {
        let job = job.as_ref().ok_or_else(|| null("job"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = into_c_string(job.config.to_json())?;
        Ok(())
    })
}

/// # Safety
/// `job` must be null or a live handle, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn anosov_job_free(job: *mut AnosovJob) {
    if !job.is_null() {
        drop(Box::from_raw(job));
    }
}

/// Runs the certification pipeline. With a non-null `words`, pairs come from that
/// word-list text (one word of length `2k` per line) instead of the ball.
///
/// # Safety
/// `job` must be a live handle; `words` null or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn anosov_certify(
    job: *const AnosovJob,
    words: *const c_char,
    out: *mut *mut AnosovCertificate,
) -> AnosovStatus {
    guard(|| {
        let job = job.as_ref().ok_or_else(|| null("job"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let words = if words.is_null() {
            None
        } else {
            Some(read_str(words, "words")?)
        };
        let cert = match words {
            Some(text) => certifier::run_with_words(&job.config, Some(text)),
            None => certifier::run(&job.config),
        }
        .map_err(|e| (cert_status(&e), e.to_string()))?;
        *out = Box::into_raw(Box::new(AnosovCertificate { cert }));
        Ok(())
    })
}

/// # Safety
/// `cert` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn anosov_certificate_verdict(
    cert: *const AnosovCertificate,
    out: *mut AnosovVerdict,
) -> AnosovStatus {
    guard(|| {
        let cert = cert.as_ref().ok_or_else(|| null("cert"))?;
        *out.as_mut().ok_or_else(|| null("out"))? = cert.cert.verdict.into();
        Ok(())
    })
}

/// Spacing `S` and straightness `ε` of the survey.
///
/// # Safety
/// `cert` must be a live handle; `spacing` and `eps` writable.
#[no_mangle]
pub unsafe extern "C" fn anosov_certificate_stats(
    cert: *const AnosovCertificate,
    spacing: *mut f64,
    eps: *mut f64,
) -> AnosovStatus {
    guard(|| {
        let cert = cert.as_ref().ok_or_else(|| null("cert"))?;
        let survey = cert.cert.survey.as_ref().ok_or_else(|| {
            (
                AnosovStatus::Computation,
                format!("no survey statistics (verdict {})", cert.cert.verdict),
            )
        })?;
        *spacing.as_mut().ok_or_else(|| null("spacing"))? = survey.spacing;
        *eps.as_mut().ok_or_else(|| null("eps"))? = survey.eps;
        Ok(())
    })
}

/// Serializes a certificate to JSON.
///
/// # Safety
/// `cert` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn anosov_certificate_to_json(
    cert: *const AnosovCertificate,
    out: *mut *mut c_char,
) -> AnosovStatus {
    guard(|| {
        let cert = cert.as_ref().ok_or_else(|| null("cert"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = into_c_string(cert.cert.to_json())?;
        Ok(())
    })
}

/// # Safety
/// `cert` must be null or a live handle, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn anosov_certificate_free(cert: *mut AnosovCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

unsafe fn real_matrix(
    data: *const f64,
    dim: usize,
    name: &str,
) -> Result<DMatrix<f64>, (AnosovStatus, String)> {
    if data.is_null() {
        return Err(null(name));
    }
    Ok(DMatrix::from_row_slice(
        dim,
        dim,
        std::slice::from_raw_parts(data, dim * dim),
    ))
}

unsafe fn real_point(
    data: *const f64,
    dim: usize,
    name: &str,
) -> Result<Point<f64>, (AnosovStatus, String)> {
    Point::new(real_matrix(data, dim, name)?, &Tolerances::default())
        .map_err(|e| (AnosovStatus::Geometry, format!("{name}: {e}")))
}

unsafe fn real_vector(
    data: *const f64,
    dim: usize,
    name: &str,
) -> Result<DVector<f64>, (AnosovStatus, String)> {
    if data.is_null() {
        return Err(null(name));
    }
    Ok(DVector::from_row_slice(std::slice::from_raw_parts(
        data, dim,
    )))
}

fn geometry_err(e: symspace::GeometryError) -> (AnosovStatus, String) {
    (AnosovStatus::Geometry, e.to_string())
}

/// `ε_max = arccos(−1/(d−1))`; NaN for `dim < 2`.
#[no_mangle]
pub extern "C" fn anosov_eps_max(dim: usize) -> f64 {
    if dim < 2 {
        f64::NAN
    } else {
        eps_max(dim)
    }
}

/// `d_α(p, q)` for real points given as row-major `dim × dim` arrays.
///
/// # Safety
/// `p` and `q` must point to `dim * dim` doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn anosov_d_alpha(
    p: *const f64,
    q: *const f64,
    dim: usize,
    out: *mut f64,
) -> AnosovStatus {
    guard(|| {
        let p = real_point(p, dim, "p")?;
        let q = real_point(q, dim, "q")?;
        *out.as_mut().ok_or_else(|| null("out"))? =
            symspace::d_alpha(&p, &q).map_err(geometry_err)?;
        Ok(())
    })
}

/// Sorted vector-valued distance `d⃗(p, q)` written to `out[0..dim]`.
///
/// # Safety
/// `p` and `q` must point to `dim * dim` doubles; `out` to `dim` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn anosov_vec_distance(
    p: *const f64,
    q: *const f64,
    dim: usize,
    out: *mut f64,
) -> AnosovStatus {
    guard(|| {
        let p = real_point(p, dim, "p")?;
        let q = real_point(q, dim, "q")?;
        let a = symspace::vec_distance(&p, &q).map_err(geometry_err)?;
        if out.is_null() {
            return Err(null("out"));
        }
        std::slice::from_raw_parts_mut(out, dim).copy_from_slice(a.entries());
        Ok(())
    })
}

/// Distance from `p` to the parallel set of a transverse hyperplane (covector) and
/// line.
///
/// # Safety
/// `p` must point to `dim * dim` doubles, `hyperplane` and `line` to `dim`
/// doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn anosov_dist_to_parallel_set(
    p: *const f64,
    hyperplane: *const f64,
    line: *const f64,
    dim: usize,
    out: *mut f64,
) -> AnosovStatus {
    guard(|| {
        let p = real_point(p, dim, "p")?;
        let hyp = HyperplaneFlag::new(real_vector(hyperplane, dim, "hyperplane")?)
            .map_err(geometry_err)?;
        let line = LineFlag::new(real_vector(line, dim, "line")?).map_err(geometry_err)?;
        *out.as_mut().ok_or_else(|| null("out"))? =
            symspace::dist_to_parallel_set(&p, &hyp, &line).map_err(geometry_err)?;
        Ok(())
    })
}
