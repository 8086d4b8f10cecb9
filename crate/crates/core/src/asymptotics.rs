//! Monte Carlo checks of the estimator's large-sample behaviour.
//!
//! Within the neighbourhood where the estimated consensus equals the true
//! one, `p_hat_j` is a binomial mean with standard error
//! `sqrt(p_j (1 - p_j) / (M I))`, and `theta_hat = kappa^{-1}(D_bar)` has
//! standard error `sqrt(1 / (sigma^2_theta I))` by the delta method, since
//! `kappa' = -sigma^2_theta`. [`lan_check`] standardises simulated estimates
//! with these values; [`coverage_study`] measures how often bootstrap
//! percentile intervals cover the truth.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bootstrap::{bootstrap_replicates_in, clamp_rate, intervals_from, ParamIntervals};
use crate::error::{Error, Result};
use crate::estimation::{fit, FitOptions, FitResult, Method};
use crate::model::{kappa_unchecked, mallows_mean_var, Params, SufficientStats};
use crate::rng::{derive_seed, Domain};
use crate::sampling::{sample_dataset, SimConfig};

/// Two-sided 95% normal quantile.
pub const Z_975: f64 = 1.96;

/// Step for the central-difference check of `kappa' = -sigma^2`.
const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoreticalSe {
    pub se_p: Vec<f64>,
    pub se_theta: f64,
}

/// Central finite difference of `kappa` at `theta`.
pub fn kappa_derivative_fd(theta: f64, objects: usize) -> f64 {
    let h = FD_STEP.min(theta / 2.0);
    (kappa_unchecked(theta + h, objects) - kappa_unchecked(theta - h, objects)) / (2.0 * h)
}

/// Asymptotic standard errors of `p_hat` and `theta_hat` at `params`.
pub fn theoretical_se(params: &Params, max_rating: u32, judges: usize) -> Result<TheoreticalSe> {
    params.check_domain()?;
    if max_rating == 0 || judges == 0 {
        return Err(Error::invalid("M and I must both be positive"));
    }
    let n = params.objects();
    let sigma2 = mallows_mean_var(params.theta, n)?.variance;
    let fd = kappa_derivative_fd(params.theta, n);
    if (fd + sigma2).abs() > 1e-5 * sigma2.max(1.0) {
        return Err(Error::domain(format!(
            "kappa'({}) = {fd} disagrees with -sigma^2 = {}",
            params.theta, -sigma2
        )));
    }
    let mi = f64::from(max_rating) * judges as f64;
    Ok(TheoreticalSe {
        se_p: params.p.iter().map(|&p| (p * (1.0 - p) / mi).sqrt()).collect(),
        // sigma^2 / kappa'^2 with kappa' = -sigma^2
        se_theta: (1.0 / (sigma2 * judges as f64)).sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Study {
    LanCheck,
    Coverage,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapSettings {
    pub replicates: usize,
    pub alpha: f64,
}

/// Everything that determines a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub sim: SimConfig,
    pub replications: usize,
    pub bootstrap: Option<BootstrapSettings>,
    pub fit: FitOptions,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordinateReport {
    pub name: String,
    pub truth: f64,
    pub theoretical_se: f64,
    pub mean_estimate: f64,
    /// Fraction of replications with `|estimate - truth| / se <= 1.96`.
    pub z_coverage: f64,
    /// `z_coverage` restricted to replications that recovered the consensus.
    pub z_coverage_given_recovery: Option<f64>,
    pub z_skewness: f64,
    pub interval_coverage: Option<f64>,
    pub interval_coverage_given_recovery: Option<f64>,
    pub mean_interval_width: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub study: Study,
    pub config: StudyConfig,
    /// `p_1 .. p_J` followed by `theta`.
    pub coordinates: Vec<CoordinateReport>,
    /// Fraction of replications with `sqrt(I) |D_bar - mu| / sigma <= 1.96`,
    /// `D_bar` measured against the true consensus.
    pub dbar_z_coverage: f64,
    pub consensus_recovery: f64,
    /// Fraction of point estimates with a clamped coordinate.
    pub estimate_clamp_rate: f64,
    /// Mean over replications of the bootstrap clamp rate.
    pub bootstrap_clamp_rate: Option<f64>,
}

impl CoverageReport {
    pub fn coordinate(&self, name: &str) -> Option<&CoordinateReport> {
        self.coordinates.iter().find(|c| c.name == name)
    }

    pub fn theta(&self) -> &CoordinateReport {
        self.coordinates.last().expect("theta is always reported")
    }
}

/// One simulated dataset and everything measured on it.
struct Replication {
    estimate: FitResult,
    recovered: bool,
    dbar_z: f64,
    intervals: Vec<ParamIntervals>,
    bootstrap_clamp_rate: Option<f64>,
}

fn coordinates(params: &Params) -> Vec<(String, f64)> {
    let mut out: Vec<(String, f64)> = params
        .p
        .iter()
        .enumerate()
        .map(|(j, &p)| (format!("p{}", j + 1), p))
        .collect();
    out.push(("theta".to_string(), params.theta));
    out
}

fn values(params: &Params) -> Vec<f64> {
    let mut v = params.p.clone();
    v.push(params.theta);
    v
}

fn interval_list(iv: &ParamIntervals) -> Vec<crate::bootstrap::Interval> {
    let mut v = iv.p.clone();
    v.push(iv.theta);
    v
}

fn skewness(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 3 {
        return 0.0;
    }
    let mean = xs.iter().sum::<f64>() / n;
    let m2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let m3 = xs.iter().map(|x| (x - mean).powi(3)).sum::<f64>() / n;
    if m2 == 0.0 {
        0.0
    } else {
        m3 / m2.powf(1.5)
    }
}

fn fraction<I: Iterator<Item = bool>>(it: I) -> Option<f64> {
    let (hits, total) = it.fold((0usize, 0usize), |(h, t), b| (h + usize::from(b), t + 1));
    (total > 0).then(|| hits as f64 / total as f64)
}

fn check_study(cfg: &SimConfig, replications: usize) -> Result<()> {
    cfg.validate()?;
    if replications == 0 {
        return Err(Error::invalid("the number of replications R must be at least 1"));
    }
    Ok(())
}

fn run_replications(
    cfg: &SimConfig,
    replications: usize,
    bootstrap: Option<(usize, &[f64])>,
    options: &FitOptions,
    method: Method,
) -> Result<Vec<Replication>> {
    let truth = cfg.params.consensus();
    let n = cfg.params.objects();
    let moments = mallows_mean_var(cfg.params.theta, n)?;
    (0..replications)
        .into_par_iter()
        .map(|r| {
            let sim = cfg.with_seed(derive_seed(cfg.seed, &[Domain::Replication as u64, r as u64]));
            let data = sample_dataset(&sim)?;
            let estimate = fit(&data, options, method)?;
            let dbar = SufficientStats::new(&data).dbar(&truth);
            let dbar_z = (cfg.judges as f64).sqrt() * (dbar - moments.mean) / moments.variance.sqrt();
            let (intervals, bootstrap_clamp_rate) = match bootstrap {
                Some((b, alphas)) => {
                    let reps = bootstrap_replicates_in(
                        &data,
                        b,
                        derive_seed(cfg.seed, &[Domain::ReplicationBootstrap as u64, r as u64]),
                        Domain::BootstrapReplicate,
                        options,
                        method,
                    )?;
                    let params: Vec<Params> = reps.iter().map(|x| x.params.clone()).collect();
                    let ivs = alphas
                        .iter()
                        .map(|&a| intervals_from(&params, a))
                        .collect::<Result<Vec<_>>>()?;
                    (ivs, Some(clamp_rate(&reps)))
                }
                None => (Vec::new(), None),
            };
            Ok(Replication {
                recovered: estimate.consensus == truth,
                estimate,
                dbar_z,
                intervals,
                bootstrap_clamp_rate,
            })
        })
        .collect()
}

fn summarize(
    study: Study,
    config: StudyConfig,
    reps: &[Replication],
    alpha_index: Option<usize>,
) -> Result<CoverageReport> {
    let sim = &config.sim;
    let se = theoretical_se(&sim.params, sim.max_rating, sim.judges)?;
    let mut ses = se.se_p.clone();
    ses.push(se.se_theta);
    let names = coordinates(&sim.params);
    let estimates: Vec<Vec<f64>> = reps.iter().map(|r| values(&r.estimate.params)).collect();

    let coords = names
        .iter()
        .enumerate()
        .map(|(k, (name, truth))| {
            let z: Vec<f64> = estimates.iter().map(|e| (e[k] - truth) / ses[k]).collect();
            let inside = |x: &f64| x.abs() <= Z_975;
            let intervals = alpha_index.map(|a| {
                reps.iter()
                    .map(|r| interval_list(&r.intervals[a])[k])
                    .collect::<Vec<_>>()
            });
            CoordinateReport {
                name: name.clone(),
                truth: *truth,
                theoretical_se: ses[k],
                mean_estimate: estimates.iter().map(|e| e[k]).sum::<f64>() / reps.len() as f64,
                z_coverage: fraction(z.iter().map(inside)).unwrap_or(0.0),
                z_coverage_given_recovery: fraction(
                    z.iter().zip(reps).filter(|(_, r)| r.recovered).map(|(x, _)| inside(x)),
                ),
                z_skewness: skewness(&z),
                interval_coverage: intervals
                    .as_ref()
                    .and_then(|ivs| fraction(ivs.iter().map(|iv| iv.contains(*truth)))),
                interval_coverage_given_recovery: intervals.as_ref().and_then(|ivs| {
                    fraction(
                        ivs.iter()
                            .zip(reps)
                            .filter(|(_, r)| r.recovered)
                            .map(|(iv, _)| iv.contains(*truth)),
                    )
                }),
                mean_interval_width: intervals
                    .as_ref()
                    .map(|ivs| ivs.iter().map(|iv| iv.width()).sum::<f64>() / ivs.len() as f64),
            }
        })
        .collect();

    let boot_clamp: Vec<f64> = reps.iter().filter_map(|r| r.bootstrap_clamp_rate).collect();
    Ok(CoverageReport {
        study,
        config,
        coordinates: coords,
        dbar_z_coverage: fraction(reps.iter().map(|r| r.dbar_z.abs() <= Z_975)).unwrap_or(0.0),
        consensus_recovery: fraction(reps.iter().map(|r| r.recovered)).unwrap_or(0.0),
        estimate_clamp_rate: fraction(reps.iter().map(|r| r.estimate.clamped.any())).unwrap_or(0.0),
        bootstrap_clamp_rate: (!boot_clamp.is_empty())
            .then(|| boot_clamp.iter().sum::<f64>() / boot_clamp.len() as f64),
    })
}

/// Simulates `R` datasets, fits each, and standardises every coordinate by
/// its theoretical standard error.
pub fn lan_check(cfg: &SimConfig, replications: usize, options: &FitOptions, method: Method) -> Result<CoverageReport> {
    check_study(cfg, replications)?;
    let reps = run_replications(cfg, replications, None, options, method)?;
    let config = StudyConfig {
        sim: cfg.clone(),
        replications,
        bootstrap: None,
        fit: *options,
        method,
    };
    summarize(Study::LanCheck, config, &reps, None)
}

/// Bootstrap coverage at several `alpha` levels, sharing the simulated
/// datasets and bootstrap replicates across levels.
pub fn coverage_study_levels(
    cfg: &SimConfig,
    bootstrap_replicates: usize,
    alphas: &[f64],
    replications: usize,
    options: &FitOptions,
    method: Method,
) -> Result<Vec<CoverageReport>> {
    check_study(cfg, replications)?;
    if bootstrap_replicates == 0 {
        return Err(Error::invalid("the number of bootstrap replicates B must be at least 1"));
    }
    if alphas.is_empty() {
        return Err(Error::invalid("at least one alpha level is required"));
    }
    if let Some(a) = alphas.iter().find(|&&a| !(a > 0.0 && a < 1.0)) {
        return Err(Error::invalid(format!("alpha = {a} must lie in (0, 1)")));
    }
    let reps = run_replications(cfg, replications, Some((bootstrap_replicates, alphas)), options, method)?;
    alphas
        .iter()
        .enumerate()
        .map(|(k, &alpha)| {
            let config = StudyConfig {
                sim: cfg.clone(),
                replications,
                bootstrap: Some(BootstrapSettings { replicates: bootstrap_replicates, alpha }),
                fit: *options,
                method,
            };
            summarize(Study::Coverage, config, &reps, Some(k))
        })
        .collect()
}

/// Empirical coverage of `1 - alpha` bootstrap percentile intervals over `R` simulated datasets.
pub fn coverage_study(
    cfg: &SimConfig,
    bootstrap_replicates: usize,
    alpha: f64,
    replications: usize,
    options: &FitOptions,
    method: Method,
) -> Result<CoverageReport> {
    let mut reports = coverage_study_levels(cfg, bootstrap_replicates, &[alpha], replications, options, method)?;
    Ok(reports.remove(0))
}
