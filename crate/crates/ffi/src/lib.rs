//! C ABI over `mallows-binomial`.
//!
//! Datasets and results cross the boundary as opaque handles created by a
//! `mb_*_new`/`mb_fit`/`mb_bootstrap` call and released with the matching
//! `mb_*_free`. Every fallible function returns an [`MbStatus`]; on failure
//! the message is available from [`mb_last_error`] on the same thread.
//!
//! Object labels are 0-based on this interface.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use mallows_binomial::bootstrap::{bootstrap_fit, BootstrapResult};
use mallows_binomial::estimation::{fit, FitOptions, FitResult, Method};
use mallows_binomial::model::{self, Bounds, Dataset, ParamBounds, Params, Ranking};
use mallows_binomial::sampling::{sample_dataset, SimConfig};
use mallows_binomial::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    TooManyObjects = 4,
    BufferTooSmall = 5,
    Internal = 6,
}

/// Fitting method selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MbMethod {
    BestFirst = 0,
    Exhaustive = 1,
}

/// Solver settings; obtain defaults from [`mb_fit_options_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MbFitOptions {
    pub p_lower: f64,
    pub p_upper: f64,
    pub theta_lower: f64,
    pub theta_upper: f64,
    pub exhaustive_cap: usize,
    pub method: MbMethod,
}

/// Opaque dataset handle.
pub struct MbDataset(Dataset);

/// Opaque fit result handle.
pub struct MbFit(FitResult);

/// Opaque bootstrap result handle.
pub struct MbBootstrap(BootstrapResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> MbStatus {
    match err {
        Error::Domain(_) => MbStatus::Domain,
        Error::TooManyObjects { .. } => MbStatus::TooManyObjects,
        _ => MbStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), MbStatus>) -> MbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MbStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            MbStatus::Internal
        }
    }
}

fn fail(err: Error) -> MbStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

fn null(what: &str) -> MbStatus {
    set_error(format!("{what} is null"));
    MbStatus::NullPointer
}

unsafe fn input<'a, T>(ptr: *const T, len: usize, what: &str) -> Result<&'a [T], MbStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(ptr, len))
}

unsafe fn output<'a, T>(ptr: *mut T, len: usize, needed: usize, what: &str) -> Result<&'a mut [T], MbStatus> {
    if len < needed {
        set_error(format!("{what} holds {len} values but {needed} are needed"));
        return Err(MbStatus::BufferTooSmall);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts_mut(ptr, needed))
}

unsafe fn write<T>(ptr: *mut T, value: T, what: &str) -> Result<(), MbStatus> {
    if ptr.is_null() {
        return Err(null(what));
    }
    ptr.write(value);
    Ok(())
}

unsafe fn handle<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, MbStatus> {
    ptr.as_ref().ok_or_else(|| null(what))
}

fn options_from(o: &MbFitOptions) -> Result<(FitOptions, Method), MbStatus> {
    let bounds = Bounds::new(o.p_lower, o.p_upper)
        .and_then(|p| ParamBounds::new(p, Bounds::new(o.theta_lower, o.theta_upper)?))
        .map_err(fail)?;
    let method = match o.method {
        MbMethod::BestFirst => Method::BestFirst,
        MbMethod::Exhaustive => Method::Exhaustive,
    };
    Ok((FitOptions { bounds, exhaustive_cap: o.exhaustive_cap }, method))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn mb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub extern "C" fn mb_fit_options_default() -> MbFitOptions {
    let d = FitOptions::default();
    MbFitOptions {
        p_lower: d.bounds.p.lower,
        p_upper: d.bounds.p.upper,
        theta_lower: d.bounds.theta.lower,
        theta_upper: d.bounds.theta.upper,
        exhaustive_cap: d.exhaustive_cap,
        method: MbMethod::BestFirst,
    }
}

/// Builds a dataset from row-major `judges x objects` arrays. `rankings`
/// lists 0-based object indices, most preferred first.
#[no_mangle]
pub unsafe extern "C" fn mb_dataset_new(
    ratings: *const u32,
    rankings: *const u32,
    judges: usize,
    objects: usize,
    max_rating: u32,
    out: *mut *mut MbDataset,
) -> MbStatus {
    guard(|| {
        let cells = judges.checked_mul(objects).ok_or_else(|| fail(Error::InvalidArgument("size overflow".into())))?;
        let x = input(ratings, cells, "ratings")?;
        let r = input(rankings, cells, "rankings")?;
        if objects == 0 {
            return Err(fail(Error::InvalidArgument("objects must be positive".into())));
        }
        let rows: Vec<Vec<u32>> = x.chunks(objects).map(<[u32]>::to_vec).collect();
        let ranks = r
            .chunks(objects)
            .map(|c| Ranking::new(c.iter().map(|&o| o as usize).collect()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(fail)?;
        let data = Dataset::from_parts(rows, ranks, max_rating).map_err(fail)?;
        write(out, Box::into_raw(Box::new(MbDataset(data))), "out")
    })
}

/// Simulates a dataset with true qualities `p` and strength `theta`.
#[no_mangle]
pub unsafe extern "C" fn mb_dataset_simulate(
    p: *const f64,
    objects: usize,
    theta: f64,
    judges: usize,
    max_rating: u32,
    seed: u64,
    out: *mut *mut MbDataset,
) -> MbStatus {
    guard(|| {
        let p = input(p, objects, "p")?;
        let cfg = SimConfig { params: Params { p: p.to_vec(), theta }, judges, max_rating, seed };
        let data = sample_dataset(&cfg).map_err(fail)?;
        write(out, Box::into_raw(Box::new(MbDataset(data))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn mb_dataset_free(data: *mut MbDataset) {
    if !data.is_null() {
        drop(Box::from_raw(data));
    }
}

#[no_mangle]
pub unsafe extern "C" fn mb_dataset_judges(data: *const MbDataset) -> usize {
    data.as_ref().map_or(0, |d| d.0.judges())
}

#[no_mangle]
pub unsafe extern "C" fn mb_dataset_objects(data: *const MbDataset) -> usize {
    data.as_ref().map_or(0, |d| d.0.objects())
}

/// Log-likelihood of `data` at `(p, theta)`, consensus taken as the ascending order of `p`.
#[no_mangle]
pub unsafe extern "C" fn mb_log_likelihood(
    data: *const MbDataset,
    p: *const f64,
    objects: usize,
    theta: f64,
    out: *mut f64,
) -> MbStatus {
    guard(|| {
        let d = handle(data, "data")?;
        let p = input(p, objects, "p")?;
        let ll = model::log_likelihood(&d.0, &Params { p: p.to_vec(), theta }).map_err(fail)?;
        write(out, ll, "out")
    })
}

/// Exact maximum likelihood fit. `options` may be null for defaults.
#[no_mangle]
pub unsafe extern "C" fn mb_fit(data: *const MbDataset, options: *const MbFitOptions, out: *mut *mut MbFit) -> MbStatus {
    guard(|| {
        let d = handle(data, "data")?;
        let o = options.as_ref().copied().unwrap_or_else(|| mb_fit_options_default());
        let (opts, method) = options_from(&o)?;
        let result = fit(&d.0, &opts, method).map_err(fail)?;
        write(out, Box::into_raw(Box::new(MbFit(result))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn mb_fit_free(fit: *mut MbFit) {
    if !fit.is_null() {
        drop(Box::from_raw(fit));
    }
}

/// Copies `p_hat` into `out_p` (length at least `objects`).
#[no_mangle]
pub unsafe extern "C" fn mb_fit_p(fit: *const MbFit, out_p: *mut f64, len: usize) -> MbStatus {
    guard(|| {
        let f = handle(fit, "fit")?;
        output(out_p, len, f.0.params.p.len(), "out_p")?.copy_from_slice(&f.0.params.p);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mb_fit_theta(fit: *const MbFit) -> f64 {
    fit.as_ref().map_or(f64::NAN, |f| f.0.params.theta)
}

#[no_mangle]
pub unsafe extern "C" fn mb_fit_loglik(fit: *const MbFit) -> f64 {
    fit.as_ref().map_or(f64::NAN, |f| f.0.loglik)
}

#[no_mangle]
pub unsafe extern "C" fn mb_fit_nodes_explored(fit: *const MbFit) -> u64 {
    fit.as_ref().map_or(0, |f| f.0.nodes_explored)
}

/// Nonzero when theta or any p_j was pinned to its bound.
#[no_mangle]
pub unsafe extern "C" fn mb_fit_clamped(fit: *const MbFit) -> i32 {
    fit.as_ref().map_or(0, |f| i32::from(f.0.clamped.any()))
}

/// Copies the consensus (0-based objects, most preferred first) into `out`.
#[no_mangle]
pub unsafe extern "C" fn mb_fit_consensus(fit: *const MbFit, out: *mut usize, len: usize) -> MbStatus {
    guard(|| {
        let f = handle(fit, "fit")?;
        let order = f.0.consensus.order();
        output(out, len, order.len(), "out")?.copy_from_slice(order);
        Ok(())
    })
}

/// Percentile bootstrap with `replicates` resamples at level `alpha`.
#[no_mangle]
pub unsafe extern "C" fn mb_bootstrap(
    data: *const MbDataset,
    options: *const MbFitOptions,
    replicates: usize,
    alpha: f64,
    seed: u64,
    out: *mut *mut MbBootstrap,
) -> MbStatus {
    guard(|| {
        let d = handle(data, "data")?;
        let o = options.as_ref().copied().unwrap_or_else(|| mb_fit_options_default());
        let (opts, method) = options_from(&o)?;
        let res = bootstrap_fit(&d.0, replicates, alpha, seed, &opts, method).map_err(fail)?;
        write(out, Box::into_raw(Box::new(MbBootstrap(res))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn mb_bootstrap_free(boot: *mut MbBootstrap) {
    if !boot.is_null() {
        drop(Box::from_raw(boot));
    }
}

/// Interval bounds for every `p_j` (length at least `objects` each).
#[no_mangle]
pub unsafe extern "C" fn mb_bootstrap_p_intervals(
    boot: *const MbBootstrap,
    lower: *mut f64,
    upper: *mut f64,
    len: usize,
) -> MbStatus {
    guard(|| {
        let b = handle(boot, "boot")?;
        let ivs = &b.0.intervals.p;
        let lo = output(lower, len, ivs.len(), "lower")?;
        let hi = output(upper, len, ivs.len(), "upper")?;
        for (k, iv) in ivs.iter().enumerate() {
            lo[k] = iv.lower;
            hi[k] = iv.upper;
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mb_bootstrap_theta_interval(boot: *const MbBootstrap, lower: *mut f64, upper: *mut f64) -> MbStatus {
    guard(|| {
        let b = handle(boot, "boot")?;
        write(lower, b.0.intervals.theta.lower, "lower")?;
        write(upper, b.0.intervals.theta.upper, "upper")
    })
}

#[no_mangle]
pub unsafe extern "C" fn mb_bootstrap_clamp_rate(boot: *const MbBootstrap) -> f64 {
    boot.as_ref().map_or(f64::NAN, |b| b.0.clamp_rate)
}

#[no_mangle]
pub unsafe extern "C" fn mb_psi(theta: f64, objects: usize, out: *mut f64) -> MbStatus {
    guard(|| write(out, model::psi(theta, objects).map_err(fail)?, "out"))
}

#[no_mangle]
pub unsafe extern "C" fn mb_kappa(theta: f64, objects: usize, out: *mut f64) -> MbStatus {
    guard(|| write(out, model::kappa(theta, objects).map_err(fail)?, "out"))
}

#[no_mangle]
pub unsafe extern "C" fn mb_mallows_mean_var(theta: f64, objects: usize, mean: *mut f64, variance: *mut f64) -> MbStatus {
    guard(|| {
        let m = model::mallows_mean_var(theta, objects).map_err(fail)?;
        write(mean, m.mean, "mean")?;
        write(variance, m.variance, "variance")
    })
}

/// Kendall distance between two 0-based rankings of `objects` items.
#[no_mangle]
pub unsafe extern "C" fn mb_kendall_distance(a: *const u32, b: *const u32, objects: usize, out: *mut u64) -> MbStatus {
    guard(|| {
        let to_ranking = |s: &[u32]| Ranking::new(s.iter().map(|&o| o as usize).collect());
        let a = to_ranking(input(a, objects, "a")?).map_err(fail)?;
        let b = to_ranking(input(b, objects, "b")?).map_err(fail)?;
        write(out, model::kendall_distance(&a, &b).map_err(fail)?, "out")
    })
}
