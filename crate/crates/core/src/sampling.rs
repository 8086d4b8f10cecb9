//! Simulation of Mallows-Binomial datasets.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Dataset, Params, Ranking, RatingsRow};
use crate::rng::{self, Domain};

/// What to simulate: true parameters, sample size, rating scale and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub params: Params,
    pub judges: usize,
    pub max_rating: u32,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.judges == 0 {
            return Err(Error::invalid("the number of judges I must be at least 1"));
        }
        if self.max_rating == 0 {
            return Err(Error::invalid("the maximum rating M must be at least 1"));
        }
        self.params.check_domain()?;
        self.params.check_distinct()
    }

    /// Same configuration with the seed replaced.
    pub fn with_seed(&self, seed: u64) -> SimConfig {
        SimConfig { seed, ..self.clone() }
    }
}

/// Draws a ranking from the Mallows model centred at `center`.
///
/// Repeated insertion: the `k`-th object of the centre is inserted into the
/// partial ranking `v` places ahead of its end with probability proportional
/// to `e^{-theta v}`, each displacement adding exactly `v` discordant pairs.
pub fn sample_mallows<R: Rng + ?Sized>(center: &Ranking, theta: f64, rng: &mut R) -> Result<Ranking> {
    if theta <= 0.0 || !theta.is_finite() {
        return Err(Error::domain(format!("theta = {theta} must be positive and finite")));
    }
    let n = center.len();
    let q = (-theta).exp();
    let mut weights = Vec::with_capacity(n);
    let mut w = 1.0;
    for _ in 0..n {
        weights.push(w);
        w *= q;
    }
    let mut out: Vec<usize> = Vec::with_capacity(n);
    for (k, &obj) in center.order().iter().enumerate() {
        let total: f64 = weights[..=k].iter().sum();
        let mut u = rng.gen::<f64>() * total;
        let mut shift = k;
        for (v, &wv) in weights[..=k].iter().enumerate() {
            if u < wv {
                shift = v;
                break;
            }
            u -= wv;
        }
        out.insert(k - shift, obj);
    }
    Ok(Ranking::from_vec_unchecked(out))
}

/// `J` independent `Binomial(M, p_j)` draws, each a sum of `M` Bernoulli trials.
pub fn sample_ratings<R: Rng + ?Sized>(p: &[f64], max_rating: u32, rng: &mut R) -> Result<RatingsRow> {
    if let Some((j, &pj)) = p.iter().enumerate().find(|(_, &pj)| !(pj > 0.0 && pj < 1.0)) {
        return Err(Error::domain(format!("p[{}] = {pj} is outside (0, 1)", j + 1)));
    }
    let values = p
        .iter()
        .map(|&pj| (0..max_rating).filter(|_| rng.gen::<f64>() < pj).count() as u32)
        .collect();
    RatingsRow::new(values, max_rating)
}

/// Draws `cfg.judges` independent judges, judge `i` from its own derived stream.
pub fn sample_dataset(cfg: &SimConfig) -> Result<Dataset> {
    cfg.validate()?;
    let center = cfg.params.consensus();
    let judges: Vec<(RatingsRow, Ranking)> = (0..cfg.judges)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::stream(cfg.seed, Domain::Judge, i as u64);
            let ranking = sample_mallows(&center, cfg.params.theta, &mut rng)?;
            let ratings = sample_ratings(&cfg.params.p, cfg.max_rating, &mut rng)?;
            Ok((ratings, ranking))
        })
        .collect::<Result<_>>()?;
    let (ratings, rankings) = judges.into_iter().unzip();
    Dataset::new(ratings, rankings)
}
