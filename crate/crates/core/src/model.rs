//! Domain types and closed-form quantities of the Mallows-Binomial model.
//!
//! A judge supplies a complete ranking of `J` objects together with an
//! integer rating in `0..=M` for every object (smaller is better). Rankings
//! follow a Mallows distribution under Kendall's distance centred at the
//! ordering of the object qualities `p`; ratings are independent
//! `Binomial(M, p_j)` draws.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this value of `J * theta` the moment formulas switch to their
/// Laurent expansions, which avoid cancelling two terms of order `1/theta`.
const SERIES_THRESHOLD: f64 = 0.05;

/// A complete ranking of objects `0..J`, most preferred first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking(Vec<usize>);

impl Ranking {
    /// Builds a ranking from object indices listed most preferred first.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::invalid("a ranking must contain at least one object"));
        }
        let mut seen = vec![false; n];
        for &obj in &order {
            if obj >= n {
                return Err(Error::invalid(format!(
                    "object index {obj} out of range for a ranking of {n} objects"
                )));
            }
            if std::mem::replace(&mut seen[obj], true) {
                return Err(Error::invalid(format!("object {obj} appears more than once")));
            }
        }
        Ok(Ranking(order))
    }

    /// Builds a ranking from 1-based object labels.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let order = labels
            .iter()
            .map(|&l| {
                l.checked_sub(1)
                    .ok_or_else(|| Error::invalid("object labels are 1-based"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ranking::new(order)
    }

    pub fn identity(n: usize) -> Self {
        Ranking((0..n).collect())
    }

    pub(crate) fn from_vec_unchecked(order: Vec<usize>) -> Self {
        debug_assert!(Ranking::new(order.clone()).is_ok());
        Ranking(order)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Object indices, most preferred first.
    pub fn order(&self) -> &[usize] {
        &self.0
    }

    /// 1-based labels, most preferred first.
    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|&o| o + 1).collect()
    }

    /// `positions()[obj]` is the rank position of `obj` (0 = best).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (rank, &obj) in self.0.iter().enumerate() {
            pos[obj] = rank;
        }
        pos
    }

    pub fn reversed(&self) -> Ranking {
        Ranking(self.0.iter().rev().copied().collect())
    }

    /// Renames every object `o` to `sigma[o]`.
    pub fn relabel(&self, sigma: &[usize]) -> Ranking {
        Ranking(self.0.iter().map(|&o| sigma[o]).collect())
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

// Serialized as 1-based labels, most preferred first.
impl Serialize for Ranking {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Ranking {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        Ranking::from_labels(&labels).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ranking{:?}", self.0)
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().iter().map(ToString::to_string).collect();
        f.write_str(&labels.join(" < "))
    }
}

/// One judge's ratings of all objects.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatingsRow {
    values: Vec<u32>,
    max_rating: u32,
}

impl RatingsRow {
    pub fn new(values: Vec<u32>, max_rating: u32) -> Result<Self> {
        if max_rating == 0 {
            return Err(Error::invalid("the maximum rating M must be positive"));
        }
        if let Some((j, &x)) = values.iter().enumerate().find(|(_, &x)| x > max_rating) {
            return Err(Error::invalid(format!(
                "rating {x} for object {} exceeds the maximum rating {max_rating}",
                j + 1
            )));
        }
        Ok(RatingsRow { values, max_rating })
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn max_rating(&self) -> u32 {
        self.max_rating
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// An i.i.d. sample of judges, each contributing a ranking and a ratings row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dataset {
    ratings: Vec<RatingsRow>,
    rankings: Vec<Ranking>,
    max_rating: u32,
    objects: usize,
}

impl Dataset {
    pub fn new(ratings: Vec<RatingsRow>, rankings: Vec<Ranking>) -> Result<Self> {
        if rankings.is_empty() {
            return Err(Error::invalid("a dataset needs at least one judge"));
        }
        if ratings.len() != rankings.len() {
            return Err(Error::invalid(format!(
                "{} ratings rows but {} rankings",
                ratings.len(),
                rankings.len()
            )));
        }
        let objects = rankings[0].len();
        let max_rating = ratings[0].max_rating();
        for (i, (row, ranking)) in ratings.iter().zip(&rankings).enumerate() {
            if ranking.len() != objects {
                return Err(Error::invalid(format!(
                    "judge {} ranks {} objects, expected {objects}",
                    i + 1,
                    ranking.len()
                )));
            }
            if row.len() != objects {
                return Err(Error::invalid(format!(
                    "judge {} rates {} objects, expected {objects}",
                    i + 1,
                    row.len()
                )));
            }
            if row.max_rating() != max_rating {
                return Err(Error::invalid(format!(
                    "judge {} uses maximum rating {}, expected {max_rating}",
                    i + 1,
                    row.max_rating()
                )));
            }
        }
        Ok(Dataset {
            ratings,
            rankings,
            max_rating,
            objects,
        })
    }

    /// Builds a dataset from a dense `I x J` ratings matrix and rankings.
    pub fn from_parts(ratings: Vec<Vec<u32>>, rankings: Vec<Ranking>, max_rating: u32) -> Result<Self> {
        let rows = ratings
            .into_iter()
            .map(|r| RatingsRow::new(r, max_rating))
            .collect::<Result<Vec<_>>>()?;
        Dataset::new(rows, rankings)
    }

    pub fn judges(&self) -> usize {
        self.rankings.len()
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn max_rating(&self) -> u32 {
        self.max_rating
    }

    pub fn ratings(&self) -> &[RatingsRow] {
        &self.ratings
    }

    pub fn rankings(&self) -> &[Ranking] {
        &self.rankings
    }

    /// Judges at `indices`, repeats allowed, each keeping its own ranking and ratings.
    pub fn select(&self, indices: &[usize]) -> Result<Dataset> {
        if indices.is_empty() {
            return Err(Error::invalid("cannot select an empty set of judges"));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.judges()) {
            return Err(Error::invalid(format!("judge index {bad} out of range")));
        }
        Ok(Dataset {
            ratings: indices.iter().map(|&i| self.ratings[i].clone()).collect(),
            rankings: indices.iter().map(|&i| self.rankings[i].clone()).collect(),
            max_rating: self.max_rating,
            objects: self.objects,
        })
    }

    /// Appends the judges of `other`.
    pub fn concat(&self, other: &Dataset) -> Result<Dataset> {
        let mut ratings = self.ratings.clone();
        ratings.extend(other.ratings.iter().cloned());
        let mut rankings = self.rankings.clone();
        rankings.extend(other.rankings.iter().cloned());
        Dataset::new(ratings, rankings)
    }

    /// Renames object `o` to `sigma[o]` in every ranking and ratings row.
    pub fn relabel(&self, sigma: &[usize]) -> Result<Dataset> {
        Ranking::new(sigma.to_vec())?;
        if sigma.len() != self.objects {
            return Err(Error::invalid("relabelling must cover every object"));
        }
        let ratings = self
            .ratings
            .iter()
            .map(|row| {
                let mut values = vec![0; self.objects];
                for (o, &x) in row.values().iter().enumerate() {
                    values[sigma[o]] = x;
                }
                RatingsRow { values, max_rating: self.max_rating }
            })
            .collect();
        let rankings = self.rankings.iter().map(|r| r.relabel(sigma)).collect();
        Ok(Dataset { ratings, rankings, max_rating: self.max_rating, objects: self.objects })
    }
}

/// Closed interval used as a parameter box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl Bounds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower < upper) {
            return Err(Error::invalid(format!("invalid bounds ({lower}, {upper})")));
        }
        Ok(Bounds { lower, upper })
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lower, self.upper)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Parameter box for `p` (inside `[0, 1]`) and `theta` (inside `(0, inf)`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamBounds {
    pub p: Bounds,
    pub theta: Bounds,
}

impl Default for ParamBounds {
    fn default() -> Self {
        ParamBounds {
            p: Bounds { lower: 1e-6, upper: 1.0 - 1e-6 },
            theta: Bounds { lower: 1e-6, upper: 50.0 },
        }
    }
}

impl ParamBounds {
    pub fn new(p: Bounds, theta: Bounds) -> Result<Self> {
        if p.lower < 0.0 || p.upper > 1.0 {
            return Err(Error::invalid("p bounds must lie inside [0, 1]"));
        }
        if p.lower <= 0.0 || p.upper >= 1.0 {
            return Err(Error::invalid("p bounds must exclude 0 and 1"));
        }
        if theta.lower <= 0.0 {
            return Err(Error::invalid("theta bounds must be positive"));
        }
        Ok(ParamBounds { p, theta })
    }
}

/// Object qualities `p` and consensus strength `theta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub p: Vec<f64>,
    pub theta: f64,
}

impl Params {
    pub fn new(p: Vec<f64>, theta: f64) -> Result<Self> {
        let params = Params { p, theta };
        params.check_domain()?;
        Ok(params)
    }

    pub fn objects(&self) -> usize {
        self.p.len()
    }

    /// Errors unless every `p_j` is in `(0, 1)` and `theta > 0`.
    pub fn check_domain(&self) -> Result<()> {
        if let Some((j, &pj)) = self.p.iter().enumerate().find(|(_, &pj)| !(pj > 0.0 && pj < 1.0)) {
            return Err(Error::domain(format!("p[{}] = {pj} is outside (0, 1)", j + 1)));
        }
        if !(self.theta > 0.0 && self.theta.is_finite()) {
            return Err(Error::domain(format!("theta = {} must be positive", self.theta)));
        }
        Ok(())
    }

    /// Errors unless the parameters lie strictly inside `bounds`.
    pub fn check_bounds(&self, bounds: &ParamBounds) -> Result<()> {
        self.check_domain()?;
        if let Some((j, &pj)) = self
            .p
            .iter()
            .enumerate()
            .find(|(_, &pj)| !(pj > bounds.p.lower && pj < bounds.p.upper))
        {
            return Err(Error::domain(format!(
                "p[{}] = {pj} is outside ({}, {})",
                j + 1,
                bounds.p.lower,
                bounds.p.upper
            )));
        }
        if !(self.theta > bounds.theta.lower && self.theta < bounds.theta.upper) {
            return Err(Error::domain(format!(
                "theta = {} is outside ({}, {})",
                self.theta, bounds.theta.lower, bounds.theta.upper
            )));
        }
        Ok(())
    }

    /// Requirements on true parameters used for simulation: in bounds and pairwise distinct.
    pub fn check_true_params(&self, bounds: &ParamBounds) -> Result<()> {
        self.check_bounds(bounds)?;
        self.check_distinct()
    }

    /// Errors unless there are at least two objects with pairwise distinct qualities.
    pub fn check_distinct(&self) -> Result<()> {
        if self.p.len() < 2 {
            return Err(Error::invalid("at least two objects are required"));
        }
        let mut sorted = self.p.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("true qualities p must be pairwise distinct"));
        }
        Ok(())
    }

    pub fn consensus(&self) -> Ranking {
        order_of(&self.p)
    }
}

/// Sufficient statistics of a dataset.
///
/// The ranking part is held as pairwise preference counts, so the summed
/// Kendall distance to any candidate consensus costs `O(J^2)` regardless of
/// the number of judges.
#[derive(Debug, Clone)]
pub struct SufficientStats {
    judges: usize,
    objects: usize,
    max_rating: u32,
    /// Per-object rating totals `sum_i x_ij`.
    rating_sums: Vec<u64>,
    /// `prefer[a * J + b]` counts judges ranking `a` ahead of `b`.
    prefer: Vec<u64>,
    log_binom_total: f64,
}

impl SufficientStats {
    pub fn new(data: &Dataset) -> Self {
        let n = data.objects();
        let m = data.max_rating();
        let mut rating_sums = vec![0u64; n];
        let mut value_counts = vec![0u64; m as usize + 1];
        for row in data.ratings() {
            for (j, &x) in row.values().iter().enumerate() {
                rating_sums[j] += u64::from(x);
                value_counts[x as usize] += 1;
            }
        }
        let mut prefer = vec![0u64; n * n];
        for ranking in data.rankings() {
            let order = ranking.order();
            for (k, &a) in order.iter().enumerate() {
                for &b in &order[k + 1..] {
                    prefer[a * n + b] += 1;
                }
            }
        }
        let log_binom = log_binomial_table(m);
        let log_binom_total = value_counts
            .iter()
            .zip(&log_binom)
            .map(|(&c, &lb)| c as f64 * lb)
            .sum();
        SufficientStats {
            judges: data.judges(),
            objects: n,
            max_rating: m,
            rating_sums,
            prefer,
            log_binom_total,
        }
    }

    pub fn judges(&self) -> usize {
        self.judges
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn max_rating(&self) -> u32 {
        self.max_rating
    }

    pub fn rating_sums(&self) -> &[u64] {
        &self.rating_sums
    }

    /// Per-object mean ratings.
    pub fn xbar(&self) -> Vec<f64> {
        self.rating_sums
            .iter()
            .map(|&s| s as f64 / self.judges as f64)
            .collect()
    }

    /// Number of judges that rank `a` ahead of `b`.
    pub fn prefer(&self, a: usize, b: usize) -> u64 {
        self.prefer[a * self.objects + b]
    }

    /// `sum_i d(pi_i, consensus)`.
    pub fn total_distance(&self, consensus: &Ranking) -> u64 {
        let order = consensus.order();
        let mut total = 0;
        for (k, &a) in order.iter().enumerate() {
            for &b in &order[k + 1..] {
                total += self.prefer(b, a);
            }
        }
        total
    }

    /// Mean Kendall distance from the judges' rankings to `consensus`.
    pub fn dbar(&self, consensus: &Ranking) -> f64 {
        self.total_distance(consensus) as f64 / self.judges as f64
    }

    /// `sum_ij log C(M, x_ij)`.
    pub fn log_binom_total(&self) -> f64 {
        self.log_binom_total
    }

    /// `sum_j [S_j log p_j + (I M - S_j) log(1 - p_j)]` with `S_j` the rating totals.
    pub fn binomial_loglik(&self, p: &[f64]) -> f64 {
        let trials = self.judges as f64 * f64::from(self.max_rating);
        self.rating_sums
            .iter()
            .zip(p)
            .map(|(&s, &pj)| binomial_term(s as f64, trials, pj))
            .sum()
    }

    /// `-theta sum_i d - I log psi(theta)` at a given total distance.
    pub fn ranking_loglik(&self, theta: f64, total_distance: f64) -> f64 {
        -theta * total_distance - self.judges as f64 * log_psi_unchecked(theta, self.objects)
    }
}

#[inline]
pub(crate) fn binomial_term(successes: f64, trials: f64, p: f64) -> f64 {
    let failures = trials - successes;
    let mut v = 0.0;
    if successes > 0.0 {
        v += successes * p.ln();
    }
    if failures > 0.0 {
        v += failures * (-p).ln_1p();
    }
    v
}

/// `log C(M, x)` for `x = 0..=M`, from a table of log-factorials.
fn log_binomial_table(m: u32) -> Vec<f64> {
    let mut log_fact = Vec::with_capacity(m as usize + 1);
    let mut acc = 0.0f64;
    log_fact.push(0.0);
    for k in 1..=m {
        acc += f64::from(k).ln();
        log_fact.push(acc);
    }
    let m = m as usize;
    (0..=m).map(|x| log_fact[m] - log_fact[x] - log_fact[m - x]).collect()
}

/// Kendall's distance: the number of object pairs the two rankings order differently.
///
/// Counted as inversions with a merge sort, `O(J log J)`.
pub fn kendall_distance(a: &Ranking, b: &Ranking) -> Result<u64> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "rankings have different lengths ({} and {})",
            a.len(),
            b.len()
        )));
    }
    Ok(kendall_distance_unchecked(a.order(), b.order()))
}

pub(crate) fn kendall_distance_unchecked(a: &[usize], b: &[usize]) -> u64 {
    let n = a.len();
    let mut pos_b = vec![0usize; n];
    for (rank, &obj) in b.iter().enumerate() {
        pos_b[obj] = rank;
    }
    let mut seq: Vec<usize> = a.iter().map(|&obj| pos_b[obj]).collect();
    let mut buf = vec![0usize; n];
    count_inversions(&mut seq, &mut buf)
}

fn count_inversions(seq: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = {
        let (left, right) = seq.split_at_mut(mid);
        let (buf_l, buf_r) = buf.split_at_mut(mid);
        count_inversions(left, buf_l) + count_inversions(right, buf_r)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if seq[i] <= seq[j] {
            buf[k] = seq[i];
            i += 1;
        } else {
            buf[k] = seq[j];
            j += 1;
            inv += (mid - i) as u64;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&seq[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&seq[j..n]);
    seq.copy_from_slice(&buf[..n]);
    inv
}

/// Objects sorted by ascending quality, the lowest `p_j` first.
///
/// Equal qualities are ordered by ascending object index.
pub fn order_of(p: &[f64]) -> Ranking {
    let mut idx: Vec<usize> = (0..p.len()).collect();
    idx.sort_by(|&a, &b| p[a].total_cmp(&p[b]).then(a.cmp(&b)));
    Ranking(idx)
}

fn check_theta(theta: f64, objects: usize) -> Result<()> {
    if objects < 2 {
        return Err(Error::invalid(format!("need at least 2 objects, got {objects}")));
    }
    if theta <= 0.0 || !theta.is_finite() {
        return Err(Error::domain(format!("theta = {theta} must be positive and finite")));
    }
    Ok(())
}

/// Mallows normaliser `psi(theta) = prod_{j=1}^J (1 - e^{-j theta}) / (1 - e^{-theta})`.
pub fn psi(theta: f64, objects: usize) -> Result<f64> {
    check_theta(theta, objects)?;
    let denom = (-theta).exp_m1();
    Ok((1..=objects)
        .map(|j| (-(j as f64) * theta).exp_m1() / denom)
        .product())
}

/// `log psi(theta)`.
pub fn log_psi(theta: f64, objects: usize) -> Result<f64> {
    check_theta(theta, objects)?;
    Ok(log_psi_unchecked(theta, objects))
}

pub(crate) fn log_psi_unchecked(theta: f64, objects: usize) -> f64 {
    let denom = (-theta).exp_m1();
    (2..=objects)
        .map(|j| ((-(j as f64) * theta).exp_m1() / denom).ln())
        .sum()
}

/// `kappa(theta) = -psi'(theta) / psi(theta)`, the Mallows mean Kendall distance.
///
/// Strictly decreasing from `J(J-1)/4` at `theta -> 0` to `0` as `theta -> inf`.
pub fn kappa(theta: f64, objects: usize) -> Result<f64> {
    check_theta(theta, objects)?;
    Ok(kappa_unchecked(theta, objects))
}

pub(crate) fn kappa_unchecked(theta: f64, objects: usize) -> f64 {
    let n = objects as f64;
    if n * theta < SERIES_THRESHOLD {
        // sum_j [(j-1)/2 - (j^2-1) t/12 + (j^4-1) t^3/720 - (j^6-1) t^5/30240]
        let t = theta;
        return (1..=objects)
            .map(|j| {
                let j = j as f64;
                let j2 = j * j;
                (j - 1.0) / 2.0 - (j2 - 1.0) * t / 12.0 + (j2 * j2 - 1.0) * t.powi(3) / 720.0
                    - (j2 * j2 * j2 - 1.0) * t.powi(5) / 30240.0
            })
            .sum();
    }
    // j e^{-j theta} / (1 - e^{-j theta}) = j / (e^{j theta} - 1)
    let first = n / theta.exp_m1();
    let tail: f64 = (1..=objects)
        .map(|j| {
            let j = j as f64;
            j / (j * theta).exp_m1()
        })
        .sum();
    first - tail
}

/// Variance of the Kendall distance under Mallows, equal to `-kappa'(theta)`.
pub(crate) fn mallows_variance_unchecked(theta: f64, objects: usize) -> f64 {
    let n = objects as f64;
    if n * theta < SERIES_THRESHOLD {
        // sum_j [(j^2-1)/12 - (j^4-1) t^2/240 + (j^6-1) t^4/6048]
        let t2 = theta * theta;
        return (1..=objects)
            .map(|j| {
                let j2 = (j * j) as f64;
                (j2 - 1.0) / 12.0 - (j2 * j2 - 1.0) * t2 / 240.0
                    + (j2 * j2 * j2 - 1.0) * t2 * t2 / 6048.0
            })
            .sum();
    }
    // e^{-x} / (1 - e^{-x})^2 = e^{x} / (e^{x} - 1)^2
    let g = |x: f64| {
        let em1 = x.exp_m1();
        (em1 + 1.0) / (em1 * em1)
    };
    let first = n * g(theta);
    let tail: f64 = (1..=objects)
        .map(|j| {
            let j = j as f64;
            j * j * g(j * theta)
        })
        .sum();
    first - tail
}

/// Mean and variance of the Kendall distance from a Mallows draw to its centre.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MallowsMoments {
    pub mean: f64,
    pub variance: f64,
}

/// Mallows mean (identical to [`kappa`]) and variance of the Kendall distance.
pub fn mallows_mean_var(theta: f64, objects: usize) -> Result<MallowsMoments> {
    check_theta(theta, objects)?;
    Ok(MallowsMoments {
        mean: kappa_unchecked(theta, objects),
        variance: mallows_variance_unchecked(theta, objects),
    })
}

/// Joint log-likelihood of `data`, with the consensus taken as `order_of(params.p)`.
///
/// Includes the `sum_ij log C(M, x_ij)` constant.
pub fn log_likelihood(data: &Dataset, params: &Params) -> Result<f64> {
    log_likelihood_with_consensus(data, params, &params.consensus())
}

/// Joint log-likelihood with an explicit consensus ranking.
///
/// Agrees with [`log_likelihood`] whenever `consensus` is `order_of(params.p)`;
/// it exists for estimates whose qualities tie, where the consensus that
/// attained the maximum is not recoverable from `p` alone.
pub fn log_likelihood_with_consensus(data: &Dataset, params: &Params, consensus: &Ranking) -> Result<f64> {
    params.check_domain()?;
    if params.objects() != data.objects() || consensus.len() != data.objects() {
        return Err(Error::invalid(format!(
            "parameters cover {} objects and the consensus {}, but the dataset has {}",
            params.objects(),
            consensus.len(),
            data.objects()
        )));
    }
    check_theta(params.theta, data.objects())?;
    let total_distance: u64 = data
        .rankings()
        .iter()
        .map(|r| kendall_distance_unchecked(r.order(), consensus.order()))
        .sum();
    let stats = SufficientStats::new(data);
    Ok(joint_loglik(&stats, &params.p, params.theta, total_distance))
}

/// Shared by the likelihood and the estimators so both evaluate identically.
pub(crate) fn joint_loglik(stats: &SufficientStats, p: &[f64], theta: f64, total_distance: u64) -> f64 {
    stats.ranking_loglik(theta, total_distance as f64) + stats.binomial_loglik(p) + stats.log_binom_total()
}
