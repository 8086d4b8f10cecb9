//! Nonparametric bootstrap of the exact MLE.
//!
//! Judges are resampled with replacement (each judge's ranking and ratings
//! stay together), the model is refitted on every resample, and percentile
//! intervals are read off the replicate estimates coordinate by coordinate.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::{fit, FitOptions, FitResult, Method};
use crate::model::{Dataset, Params, Ranking};
use crate::rng::{self, Domain};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Percentile intervals for every `p_j` and for `theta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamIntervals {
    pub p: Vec<Interval>,
    pub theta: Interval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Replicate {
    pub params: Params,
    pub consensus: Ranking,
    /// Any coordinate was pinned to the parameter box.
    pub clamped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapResult {
    /// Fit on the full sample.
    pub estimate: FitResult,
    pub replicates: Vec<Replicate>,
    pub intervals: ParamIntervals,
    pub alpha: f64,
    pub seed: u64,
    /// Fraction of replicates with a clamped coordinate.
    pub clamp_rate: f64,
}

impl BootstrapResult {
    pub fn len(&self) -> usize {
        self.replicates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.replicates.is_empty()
    }
}

/// Draws `I` judges uniformly with replacement.
pub fn resample<R: Rng + ?Sized>(data: &Dataset, rng: &mut R) -> Result<Dataset> {
    let n = data.judges();
    let idx: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    data.select(&idx)
}

/// Linear interpolation between order statistics (R's type 7): the
/// `q`-quantile of sorted `x_0..x_{B-1}` sits at fractional index `q (B - 1)`.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let t = pos - lo as f64;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + t * (sorted[hi] - sorted[lo])
    }
}

/// Equal-tailed `(alpha/2, 1 - alpha/2)` percentile interval.
pub fn percentile_interval(values: &[f64], alpha: f64) -> Result<Interval> {
    if values.is_empty() {
        return Err(Error::invalid("percentile interval of an empty sample"));
    }
    check_alpha(alpha)?;
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::invalid("percentile interval of a sample containing NaN"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(Interval {
        lower: quantile_sorted(&sorted, alpha / 2.0),
        upper: quantile_sorted(&sorted, 1.0 - alpha / 2.0),
    })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    Ok(())
}

/// Per-coordinate percentile intervals over a set of replicate estimates.
pub fn intervals_from(replicates: &[Params], alpha: f64) -> Result<ParamIntervals> {
    let first = replicates
        .first()
        .ok_or_else(|| Error::invalid("no bootstrap replicates"))?;
    let n = first.objects();
    let p = (0..n)
        .map(|j| {
            let v: Vec<f64> = replicates.iter().map(|r| r.p[j]).collect();
            percentile_interval(&v, alpha)
        })
        .collect::<Result<Vec<_>>>()?;
    let thetas: Vec<f64> = replicates.iter().map(|r| r.theta).collect();
    Ok(ParamIntervals { p, theta: percentile_interval(&thetas, alpha)? })
}

/// `B` resample-and-refit replicates from `seed`.
///
/// Replicate `b` draws from its own stream, so the first `B` replicates of a
/// larger run are identical to a run of size `B`.
pub fn bootstrap_replicates(
    data: &Dataset,
    replicates: usize,
    seed: u64,
    options: &FitOptions,
    method: Method,
) -> Result<Vec<Replicate>> {
    bootstrap_replicates_in(data, replicates, seed, Domain::BootstrapReplicate, options, method)
}

pub(crate) fn bootstrap_replicates_in(
    data: &Dataset,
    replicates: usize,
    seed: u64,
    domain: Domain,
    options: &FitOptions,
    method: Method,
) -> Result<Vec<Replicate>> {
    if replicates == 0 {
        return Err(Error::invalid("the number of bootstrap replicates B must be at least 1"));
    }
    (0..replicates)
        .into_par_iter()
        .map(|b| {
            let mut rng = rng::stream(seed, domain, b as u64);
            let sample = resample(data, &mut rng)?;
            let fitted = fit(&sample, options, method)?;
            Ok(Replicate {
                clamped: fitted.clamped.any(),
                params: fitted.params,
                consensus: fitted.consensus,
            })
        })
        .collect()
}

pub(crate) fn clamp_rate(replicates: &[Replicate]) -> f64 {
    replicates.iter().filter(|r| r.clamped).count() as f64 / replicates.len() as f64
}

/// Full bootstrap: point estimate, `B` replicates and their percentile intervals.
pub fn bootstrap_fit(
    data: &Dataset,
    replicates: usize,
    alpha: f64,
    seed: u64,
    options: &FitOptions,
    method: Method,
) -> Result<BootstrapResult> {
    check_alpha(alpha)?;
    let estimate = fit(data, options, method)?;
    let reps = bootstrap_replicates(data, replicates, seed, options, method)?;
    let params: Vec<Params> = reps.iter().map(|r| r.params.clone()).collect();
    let intervals = intervals_from(&params, alpha)?;
    Ok(BootstrapResult {
        estimate,
        clamp_rate: clamp_rate(&reps),
        replicates: reps,
        intervals,
        alpha,
        seed,
    })
}
