//! Command-line front end.
//!
//! Every command writes one document (JSON by default) that embeds the full
//! resolved configuration, so any output can be regenerated from itself.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::asymptotics::{coverage_study, lan_check, CoverageReport};
use crate::bootstrap::{bootstrap_fit, BootstrapResult};
use crate::estimation::{fit, FitOptions, FitResult, Method};
use crate::io;
use crate::model::{Bounds, ParamBounds, Params};
use crate::sampling::{sample_dataset, SimConfig};

#[derive(Debug, Parser)]
#[command(name = "mallows-binomial", version, about = "Fit, bootstrap and simulate the Mallows-Binomial rankings-and-ratings model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact maximum likelihood fit of a ratings file and a rankings file.
    Fit {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Draw a dataset from the model and write the two CSV files.
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        /// Ratings CSV to write.
        #[arg(long)]
        ratings: PathBuf,
        /// Rankings CSV to write.
        #[arg(long)]
        rankings: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Percentile bootstrap intervals for a fitted dataset.
    Bootstrap {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Number of bootstrap replicates.
        #[arg(long = "B", default_value_t = 1000)]
        replicates: usize,
        /// Intervals have nominal coverage 1 - alpha.
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Standardised estimates over simulated datasets.
    LanCheck {
        #[command(flatten)]
        model: ModelArgs,
        /// Monte Carlo replications.
        #[arg(long = "R", default_value_t = 500)]
        replications: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Coverage of bootstrap percentile intervals over simulated datasets.
    Coverage {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long = "B", default_value_t = 200)]
        replicates: usize,
        #[arg(long, default_value_t = 0.10)]
        alpha: f64,
        #[arg(long = "R", default_value_t = 300)]
        replications: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Ratings CSV: one row per judge, header obj_1..obj_J.
    #[arg(long)]
    pub ratings: PathBuf,
    /// Rankings CSV: one row per judge, 1-based labels, most preferred first.
    #[arg(long)]
    pub rankings: PathBuf,
    /// Maximum rating.
    #[arg(long = "M")]
    pub max_rating: u32,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// True qualities, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.2, 0.4, 0.6, 0.8])]
    pub p0: Vec<f64>,
    /// True consensus strength.
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub theta0: f64,
    /// Number of judges.
    #[arg(long = "I", default_value_t = 200)]
    pub judges: usize,
    #[arg(long = "M", default_value_t = 5)]
    pub max_rating: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Box for theta as `c,d`.
    #[arg(long, value_parser = parse_bounds, default_value = "1e-6,50")]
    pub theta_bounds: Bounds,
    /// Box for every p_j as `a,b`.
    #[arg(long, value_parser = parse_bounds, default_value = "1e-6,0.999999")]
    pub p_bounds: Bounds,
    /// Largest J the exhaustive solver accepts.
    #[arg(long, default_value_t = 8)]
    pub exhaustive_cap: usize,
    #[arg(long, value_enum, default_value_t = SolverMethod::BestFirst)]
    pub method: SolverMethod,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output document; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverMethod {
    BestFirst,
    Exhaustive,
}

impl From<SolverMethod> for Method {
    fn from(m: SolverMethod) -> Self {
        match m {
            SolverMethod::BestFirst => Method::BestFirst,
            SolverMethod::Exhaustive => Method::Exhaustive,
        }
    }
}

fn parse_bounds(s: &str) -> Result<Bounds, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [lo, hi] = parts.as_slice() else {
        return Err(format!("expected two comma-separated numbers, got '{s}'"));
    };
    let lo: f64 = lo.parse().map_err(|e| format!("'{lo}': {e}"))?;
    let hi: f64 = hi.parse().map_err(|e| format!("'{hi}': {e}"))?;
    Bounds::new(lo, hi).map_err(|e| e.to_string())
}

impl SolverArgs {
    fn options(&self) -> anyhow::Result<FitOptions> {
        Ok(FitOptions {
            bounds: ParamBounds::new(self.p_bounds, self.theta_bounds)?,
            exhaustive_cap: self.exhaustive_cap,
        })
    }
}

impl ModelArgs {
    fn sim_config(&self) -> anyhow::Result<SimConfig> {
        let cfg = SimConfig {
            params: Params { p: self.p0.clone(), theta: self.theta0 },
            judges: self.judges,
            max_rating: self.max_rating,
            seed: self.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Configuration echoed into every output document. The thread count is
/// left out because it never affects results.
#[derive(Debug, Serialize)]
struct RunConfig<'a> {
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratings: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rankings: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    objects: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    judges: Option<usize>,
    max_rating: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    fit: Option<FitOptions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<Method>,
    #[serde(skip_serializing_if = "Option::is_none")]
    simulation: Option<SimConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bootstrap_replicates: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    replications: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    format: Format,
}

impl<'a> RunConfig<'a> {
    fn new(command: &'a str, max_rating: u32, format: Format) -> Self {
        RunConfig {
            command,
            ratings: None,
            rankings: None,
            objects: None,
            judges: None,
            max_rating,
            fit: None,
            method: None,
            simulation: None,
            bootstrap_replicates: None,
            alpha: None,
            replications: None,
            seed: None,
            format,
        }
    }
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    config: RunConfig<'a>,
    result: T,
}

#[derive(Serialize)]
struct SimulationSummary {
    judges: usize,
    objects: usize,
    consensus: crate::model::Ranking,
    ratings: String,
    rankings: String,
}

fn json<T: Serialize>(config: RunConfig<'_>, result: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(&Document { config, result })?;
    s.push('\n');
    Ok(s)
}

fn fit_csv(fit: &FitResult) -> String {
    let mut s = String::from("parameter,estimate,clamped\n");
    for (j, (p, c)) in fit.params.p.iter().zip(&fit.clamped.p).enumerate() {
        let _ = writeln!(s, "p_{},{p},{c}", j + 1);
    }
    let _ = writeln!(s, "theta,{},{}", fit.params.theta, fit.clamped.theta);
    let _ = writeln!(s, "loglik,{},", fit.loglik);
    let labels: Vec<String> = fit.consensus.labels().iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "consensus,{},", labels.join(" "));
    s
}

fn bootstrap_csv(res: &BootstrapResult) -> String {
    let mut s = String::from("parameter,estimate,lower,upper\n");
    for (j, iv) in res.intervals.p.iter().enumerate() {
        let _ = writeln!(s, "p_{},{},{},{}", j + 1, res.estimate.params.p[j], iv.lower, iv.upper);
    }
    let iv = res.intervals.theta;
    let _ = writeln!(s, "theta,{},{},{}", res.estimate.params.theta, iv.lower, iv.upper);
    s
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn report_csv(rep: &CoverageReport) -> String {
    let mut s = String::from(
        "coordinate,truth,theoretical_se,mean_estimate,z_coverage,z_coverage_given_recovery,z_skewness,interval_coverage,interval_coverage_given_recovery,mean_interval_width\n",
    );
    for c in &rep.coordinates {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            c.name,
            c.truth,
            c.theoretical_se,
            c.mean_estimate,
            c.z_coverage,
            opt(c.z_coverage_given_recovery),
            c.z_skewness,
            opt(c.interval_coverage),
            opt(c.interval_coverage_given_recovery),
            opt(c.mean_interval_width),
        );
    }
    s
}

/// Runs a parsed command and returns the output document.
pub fn run(cli: &Cli) -> anyhow::Result<String> {
    match &cli.command {
        Command::Fit { data, solver, output } => {
            let dataset = io::load_dataset(&data.ratings, &data.rankings, data.max_rating)?;
            let options = solver.options()?;
            let method = solver.method.into();
            let result = fit(&dataset, &options, method)?;
            let mut config = RunConfig::new("fit", data.max_rating, output.format);
            config.ratings = Some(data.ratings.display().to_string());
            config.rankings = Some(data.rankings.display().to_string());
            config.objects = Some(dataset.objects());
            config.judges = Some(dataset.judges());
            config.fit = Some(options);
            config.method = Some(method);
            match output.format {
                Format::Json => json(config, &result),
                Format::Csv => Ok(fit_csv(&result)),
            }
        }
        Command::Simulate { model, ratings, rankings, output } => {
            let sim = model.sim_config()?;
            let dataset = sample_dataset(&sim)?;
            let mut buf = Vec::new();
            io::write_ratings(&mut buf, &dataset)?;
            fs::write(ratings, &buf).with_context(|| format!("writing {}", ratings.display()))?;
            buf.clear();
            io::write_rankings(&mut buf, &dataset)?;
            fs::write(rankings, &buf).with_context(|| format!("writing {}", rankings.display()))?;
            let summary = SimulationSummary {
                judges: dataset.judges(),
                objects: dataset.objects(),
                consensus: sim.params.consensus(),
                ratings: ratings.display().to_string(),
                rankings: rankings.display().to_string(),
            };
            let mut config = RunConfig::new("simulate", sim.max_rating, output.format);
            config.seed = Some(sim.seed);
            config.simulation = Some(sim);
            match output.format {
                Format::Json => json(config, &summary),
                Format::Csv => bail!("simulate writes its data as CSV already; use --format json for the summary"),
            }
        }
        Command::Bootstrap { data, solver, replicates, alpha, seed, output } => {
            let dataset = io::load_dataset(&data.ratings, &data.rankings, data.max_rating)?;
            let options = solver.options()?;
            let method = solver.method.into();
            let result = bootstrap_fit(&dataset, *replicates, *alpha, *seed, &options, method)?;
            let mut config = RunConfig::new("bootstrap", data.max_rating, output.format);
            config.ratings = Some(data.ratings.display().to_string());
            config.rankings = Some(data.rankings.display().to_string());
            config.objects = Some(dataset.objects());
            config.judges = Some(dataset.judges());
            config.fit = Some(options);
            config.method = Some(method);
            config.bootstrap_replicates = Some(*replicates);
            config.alpha = Some(*alpha);
            config.seed = Some(*seed);
            match output.format {
                Format::Json => json(config, &result),
                Format::Csv => Ok(bootstrap_csv(&result)),
            }
        }
        Command::LanCheck { model, replications, solver, output } => {
            let sim = model.sim_config()?;
            let options = solver.options()?;
            let method = solver.method.into();
            let report = lan_check(&sim, *replications, &options, method)?;
            let mut config = RunConfig::new("lan-check", sim.max_rating, output.format);
            config.replications = Some(*replications);
            config.seed = Some(sim.seed);
            config.fit = Some(options);
            config.method = Some(method);
            config.simulation = Some(sim);
            match output.format {
                Format::Json => json(config, &report),
                Format::Csv => Ok(report_csv(&report)),
            }
        }
        Command::Coverage { model, replicates, alpha, replications, solver, output } => {
            let sim = model.sim_config()?;
            let options = solver.options()?;
            let method = solver.method.into();
            let report = coverage_study(&sim, *replicates, *alpha, *replications, &options, method)?;
            let mut config = RunConfig::new("coverage", sim.max_rating, output.format);
            config.bootstrap_replicates = Some(*replicates);
            config.alpha = Some(*alpha);
            config.replications = Some(*replications);
            config.seed = Some(sim.seed);
            config.fit = Some(options);
            config.method = Some(method);
            config.simulation = Some(sim);
            match output.format {
                Format::Json => json(config, &report),
                Format::Csv => Ok(report_csv(&report)),
            }
        }
    }
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::Fit { output, .. }
            | Command::Simulate { output, .. }
            | Command::Bootstrap { output, .. }
            | Command::LanCheck { output, .. }
            | Command::Coverage { output, .. } => output,
        }
    }
}

/// Runs the command on a pool of `--threads` workers and writes its document.
pub fn execute(cli: &Cli) -> anyhow::Result<()> {
    let output = cli.command.output();
    let doc = match output.threads {
        Some(0) => bail!("--threads must be at least 1"),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()?
            .install(|| run(cli))?,
        None => run(cli)?,
    };
    match &output.out {
        Some(path) => fs::write(path, doc).with_context(|| format!("writing {}", path.display()))?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(doc.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
