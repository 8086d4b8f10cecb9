//! Exact maximum likelihood estimation.
//!
//! The likelihood separates once the consensus ranking `pi` is fixed: the
//! ratings part is maximised over `p` subject to `p` being nondecreasing
//! along `pi` (pool-adjacent-violators), and the ranking part over `theta`
//! by inverting `kappa` at the mean distance to `pi`. The MLE is the best of
//! these profiles over all `J!` consensus rankings, found either by
//! enumeration or by a best-first branch-and-bound over ranking prefixes.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    joint_loglik, kappa_unchecked, Bounds, Dataset, ParamBounds, Params, Ranking, SufficientStats,
};

/// Bisection stops once the bracket is this narrow.
const THETA_BRACKET_WIDTH: f64 = 1e-12;

/// Relative slack on pruning decisions, absorbing rounding in bound evaluation.
const PRUNE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    BestFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    pub bounds: ParamBounds,
    /// Largest `J` that [`fit_exhaustive`] accepts.
    pub exhaustive_cap: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            bounds: ParamBounds::default(),
            exhaustive_cap: 8,
        }
    }
}

/// Which estimated coordinates were pinned to the parameter box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClampFlags {
    pub p: Vec<bool>,
    pub theta: bool,
}

impl ClampFlags {
    pub fn any(&self) -> bool {
        self.theta || self.p.iter().any(|&c| c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: Params,
    /// The consensus attaining the maximum. Equal to `order_of(p)` unless
    /// pooled qualities tie, in which case `p` is nondecreasing along it.
    pub consensus: Ranking,
    pub loglik: f64,
    pub nodes_explored: u64,
    pub method: Method,
    pub clamped: ClampFlags,
    /// Another consensus attains exactly the same log-likelihood; the
    /// lexicographically smallest one is reported.
    pub tied_optimum: bool,
}

/// `theta` estimate with a flag when it sits on the box boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEstimate {
    pub theta: f64,
    pub clamped: bool,
}

/// Profile maximum for one fixed consensus ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub loglik: f64,
    pub p: Vec<f64>,
    pub theta: f64,
    pub clamped: ClampFlags,
}

/// Pool-adjacent-violators with equal weights: the nondecreasing sequence
/// closest to `values` in least squares.
pub fn pava_nondecreasing(values: &[f64]) -> Vec<f64> {
    // (sum, count) per block
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(values.len());
    for &v in values {
        blocks.push((v, 1));
        while blocks.len() > 1 {
            let (s1, c1) = blocks[blocks.len() - 1];
            let (s0, c0) = blocks[blocks.len() - 2];
            if s0 / c0 as f64 <= s1 / c1 as f64 {
                break;
            }
            blocks.pop();
            *blocks.last_mut().unwrap() = (s0 + s1, c0 + c1);
        }
    }
    let mut out = Vec::with_capacity(values.len());
    for (s, c) in blocks {
        out.extend(std::iter::repeat(s / c as f64).take(c));
    }
    out
}

/// Order-constrained binomial MLE of `p`, indexed by object.
///
/// Maximises `sum_j [xbar_j log p_j + (M - xbar_j) log(1 - p_j)]` subject to
/// `p` nondecreasing along `pi` and `p_j` in `bounds`.
pub fn constrained_p_mle(xbar: &[f64], max_rating: u32, pi: &Ranking, bounds: Bounds) -> Result<Vec<f64>> {
    Ok(constrained_p_mle_flagged(xbar, max_rating, pi, bounds)?.0)
}

fn constrained_p_mle_flagged(
    xbar: &[f64],
    max_rating: u32,
    pi: &Ranking,
    bounds: Bounds,
) -> Result<(Vec<f64>, Vec<bool>)> {
    if pi.len() != xbar.len() {
        return Err(Error::invalid(format!(
            "ranking has {} objects but {} means were given",
            pi.len(),
            xbar.len()
        )));
    }
    if max_rating == 0 {
        return Err(Error::invalid("the maximum rating M must be positive"));
    }
    let m = f64::from(max_rating);
    if let Some(&bad) = xbar.iter().find(|&&x| !(0.0..=m).contains(&x)) {
        return Err(Error::invalid(format!("mean rating {bad} is outside [0, {max_rating}]")));
    }
    let along: Vec<f64> = pi.order().iter().map(|&o| xbar[o] / m).collect();
    let pooled = pava_nondecreasing(&along);
    let mut p = vec![0.0; xbar.len()];
    let mut clamped = vec![false; xbar.len()];
    for (&o, &v) in pi.order().iter().zip(&pooled) {
        p[o] = bounds.clamp(v);
        clamped[o] = !bounds.contains(v);
    }
    Ok((p, clamped))
}

/// Inverts `kappa` at the mean distance `dbar` by bisection on `bounds`.
///
/// When `dbar` falls outside `(kappa(upper), kappa(lower))` the nearer bound
/// is returned with `clamped` set.
pub fn theta_mle(dbar: f64, objects: usize, bounds: Bounds) -> ThetaEstimate {
    let (mut lo, mut hi) = (bounds.lower, bounds.upper);
    if dbar >= kappa_unchecked(lo, objects) {
        return ThetaEstimate { theta: lo, clamped: true };
    }
    if dbar <= kappa_unchecked(hi, objects) {
        return ThetaEstimate { theta: hi, clamped: true };
    }
    while hi - lo > THETA_BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if kappa_unchecked(mid, objects) > dbar {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ThetaEstimate { theta: 0.5 * (lo + hi), clamped: false }
}

/// Profile maximum of the likelihood over `(p, theta)` with the consensus fixed at `pi`.
pub fn profile_loglik(data: &Dataset, pi: &Ranking, bounds: &ParamBounds) -> Result<Profile> {
    if pi.len() != data.objects() {
        return Err(Error::invalid(format!(
            "ranking has {} objects but the dataset has {}",
            pi.len(),
            data.objects()
        )));
    }
    if data.objects() < 2 {
        return Err(Error::invalid("at least two objects are required"));
    }
    let stats = SufficientStats::new(data);
    Ok(Profiler::new(&stats, bounds).profile(pi))
}

struct Profiler<'a> {
    stats: &'a SufficientStats,
    bounds: ParamBounds,
    xbar: Vec<f64>,
}

impl<'a> Profiler<'a> {
    fn new(stats: &'a SufficientStats, bounds: &ParamBounds) -> Self {
        Profiler { stats, bounds: *bounds, xbar: stats.xbar() }
    }

    fn objects(&self) -> usize {
        self.stats.objects()
    }

    fn theta_for(&self, total_distance: u64) -> ThetaEstimate {
        let dbar = total_distance as f64 / self.stats.judges() as f64;
        theta_mle(dbar, self.objects(), self.bounds.theta)
    }

    fn profile(&self, pi: &Ranking) -> Profile {
        let (p, p_clamped) = constrained_p_mle_flagged(&self.xbar, self.stats.max_rating(), pi, self.bounds.p)
            .expect("sufficient statistics are consistent with the ranking");
        let total = self.stats.total_distance(pi);
        let theta = self.theta_for(total);
        let loglik = joint_loglik(self.stats, &p, theta.theta, total);
        Profile {
            loglik,
            p,
            theta: theta.theta,
            clamped: ClampFlags { p: p_clamped, theta: theta.clamped },
        }
    }

    /// Upper bound on the profile log-likelihood of every completion of `prefix`.
    ///
    /// Ratings part: pool-adjacent-violators along the prefix only, remaining
    /// objects unconstrained. Ranking part: `theta` profiled at the smallest
    /// total distance any completion can reach, which is the fixed cost of
    /// the prefix plus the cheaper orientation of every unplaced pair.
    fn bound(&self, prefix: &[usize], placed: &[bool]) -> f64 {
        let n = self.objects();
        let m = f64::from(self.stats.max_rating());
        let mut p: Vec<f64> = self.xbar.iter().map(|&x| self.bounds.p.clamp(x / m)).collect();
        let along: Vec<f64> = prefix.iter().map(|&o| self.xbar[o] / m).collect();
        for (&o, v) in prefix.iter().zip(pava_nondecreasing(&along)) {
            p[o] = self.bounds.p.clamp(v);
        }

        let mut total = 0u64;
        for (k, &a) in prefix.iter().enumerate() {
            for &b in &prefix[k + 1..] {
                total += self.stats.prefer(b, a);
            }
            for b in (0..n).filter(|&b| !placed[b]) {
                total += self.stats.prefer(b, a);
            }
        }
        for a in (0..n).filter(|&a| !placed[a]) {
            for b in (a + 1..n).filter(|&b| !placed[b]) {
                total += self.stats.prefer(a, b).min(self.stats.prefer(b, a));
            }
        }
        let theta = self.theta_for(total);
        joint_loglik(self.stats, &p, theta.theta, total)
    }
}

/// Candidate consensus with its profile, ordered best first.
struct Candidate {
    ranking: Ranking,
    profile: Profile,
}

impl Candidate {
    fn beats(&self, other: &Candidate) -> bool {
        match self.profile.loglik.total_cmp(&other.profile.loglik) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.ranking < other.ranking,
        }
    }
}

fn check_fittable(data: &Dataset) -> Result<()> {
    if data.objects() < 2 {
        return Err(Error::invalid("at least two objects are required to fit the model"));
    }
    Ok(())
}

fn finish(best: Candidate, tied: bool, nodes: u64, method: Method) -> FitResult {
    let Candidate { ranking, profile } = best;
    FitResult {
        params: Params { p: profile.p, theta: profile.theta },
        consensus: ranking,
        loglik: profile.loglik,
        nodes_explored: nodes,
        method,
        clamped: profile.clamped,
        tied_optimum: tied,
    }
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// Evaluates the profile at every one of the `J!` consensus rankings.
pub fn fit_exhaustive(data: &Dataset, options: &FitOptions) -> Result<FitResult> {
    check_fittable(data)?;
    let n = data.objects();
    if n > options.exhaustive_cap {
        return Err(Error::TooManyObjects { objects: n, cap: options.exhaustive_cap });
    }
    let stats = SufficientStats::new(data);
    let profiler = Profiler::new(&stats, &options.bounds);
    let candidates: Vec<Candidate> = all_permutations(n)
        .into_par_iter()
        .map(|order| {
            let ranking = Ranking::from_vec_unchecked(order);
            let profile = profiler.profile(&ranking);
            Candidate { ranking, profile }
        })
        .collect();
    let nodes = candidates.len() as u64;
    let mut iter = candidates.into_iter();
    let mut best = iter.next().expect("at least one permutation");
    let mut tied = false;
    for c in iter {
        if c.profile.loglik == best.profile.loglik {
            tied = true;
        }
        if c.beats(&best) {
            best = c;
        }
    }
    Ok(finish(best, tied, nodes, Method::Exhaustive))
}

/// Search node: a prefix of the consensus, most preferred first.
#[derive(Debug)]
struct SearchNode {
    bound: f64,
    prefix: Vec<usize>,
}

impl PartialEq for SearchNode {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for SearchNode {}

impl PartialOrd for SearchNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SearchNode {
    // Max-heap: larger bound first, then the lexicographically smaller prefix.
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .total_cmp(&other.bound)
            .then_with(|| other.prefix.cmp(&self.prefix))
    }
}

/// Best-first branch-and-bound over consensus prefixes.
///
/// Returns the same optimum as [`fit_exhaustive`], including its tie rule.
pub fn fit_best_first(data: &Dataset, options: &FitOptions) -> Result<FitResult> {
    check_fittable(data)?;
    let n = data.objects();
    let stats = SufficientStats::new(data);
    let profiler = Profiler::new(&stats, &options.bounds);

    let mut heap = BinaryHeap::new();
    heap.push(SearchNode { bound: f64::INFINITY, prefix: Vec::new() });
    let mut best: Option<Candidate> = None;
    let mut tied = false;
    let mut nodes = 0u64;
    let slack = |v: f64| PRUNE_SLACK * (1.0 + v.abs());

    while let Some(node) = heap.pop() {
        if let Some(b) = &best {
            if node.bound < b.profile.loglik - slack(b.profile.loglik) {
                break;
            }
        }
        let mut placed = vec![false; n];
        for &o in &node.prefix {
            placed[o] = true;
        }
        for next in 0..n {
            if placed[next] {
                continue;
            }
            let mut prefix = node.prefix.clone();
            prefix.push(next);
            placed[next] = true;
            nodes += 1;
            if prefix.len() + 1 >= n {
                prefix.extend((0..n).filter(|&o| !placed[o]));
                let ranking = Ranking::from_vec_unchecked(prefix);
                let profile = profiler.profile(&ranking);
                let cand = Candidate { ranking, profile };
                match &best {
                    None => best = Some(cand),
                    Some(b) => {
                        if cand.profile.loglik == b.profile.loglik {
                            tied = true;
                        }
                        if cand.beats(b) {
                            best = Some(cand);
                        }
                    }
                }
            } else {
                let bound = profiler.bound(&prefix, &placed);
                let keep = best
                    .as_ref()
                    .map_or(true, |b| bound >= b.profile.loglik - slack(b.profile.loglik));
                if keep {
                    heap.push(SearchNode { bound, prefix });
                }
            }
            placed[next] = false;
        }
    }
    let best = best.expect("the search visits at least one complete ranking");
    Ok(finish(best, tied, nodes, Method::BestFirst))
}

/// Fits with the chosen exact method.
pub fn fit(data: &Dataset, options: &FitOptions, method: Method) -> Result<FitResult> {
    match method {
        Method::Exhaustive => fit_exhaustive(data, options),
        Method::BestFirst => fit_best_first(data, options),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{kappa, log_likelihood_with_consensus, order_of};
    use crate::sampling::{sample_dataset, SimConfig};

    fn r(v: &[usize]) -> Ranking {
        Ranking::from_labels(v).unwrap()
    }

    fn unit() -> Bounds {
        ParamBounds::default().p
    }

    /// Maximises the binomial objective over a grid of order-respecting 2-vectors.
    fn grid_2d(mean: [f64; 2], order: [usize; 2], step: f64) -> [f64; 2] {
        let steps = (1.0 / step).round() as usize;
        let mut best = (f64::NEG_INFINITY, [0.0, 0.0]);
        for a in 1..steps {
            for b in 1..steps {
                let p = [a as f64 * step, b as f64 * step];
                if p[order[0]] > p[order[1]] {
                    continue;
                }
                let v: f64 = (0..2).map(|j| mean[j] * p[j].ln() + (1.0 - mean[j]) * (1.0 - p[j]).ln()).sum();
                if v > best.0 {
                    best = (v, p);
                }
            }
        }
        best.1
    }

    #[test]
    fn pava_examples() {
        assert_eq!(pava_nondecreasing(&[0.2, 0.4]), vec![0.2, 0.4]);
        assert_eq!(pava_nondecreasing(&[0.4, 0.2]), vec![0.30000000000000004, 0.30000000000000004]);
        assert_eq!(pava_nondecreasing(&[3.0, 1.0, 2.0, 0.0, 5.0]), vec![1.5, 1.5, 1.5, 1.5, 5.0]);
        assert!(pava_nondecreasing(&[]).is_empty());
    }

    #[test]
    fn constrained_p_inactive_constraint() {
        let p = constrained_p_mle(&[1.0, 2.0], 5, &r(&[1, 2]), unit()).unwrap();
        assert!((p[0] - 0.2).abs() < 1e-15 && (p[1] - 0.4).abs() < 1e-15);
    }

    #[test]
    fn constrained_p_pools_against_grid() {
        let p = constrained_p_mle(&[1.0, 2.0], 5, &r(&[2, 1]), unit()).unwrap();
        let g = grid_2d([0.2, 0.4], [1, 0], 1e-4);
        for j in 0..2 {
            assert!((p[j] - 0.3).abs() < 1e-12);
            assert!((p[j] - g[j]).abs() < 2e-4);
        }
    }

    #[test]
    fn constrained_p_three_objects_against_grid() {
        let mean = [0.6, 0.1, 0.2];
        let xbar: Vec<f64> = mean.iter().map(|m| m * 10.0).collect();
        let p = constrained_p_mle(&xbar, 10, &r(&[1, 2, 3]), unit()).unwrap();
        let step = 1e-3;
        let mut best = (f64::NEG_INFINITY, [0.0; 3]);
        for a in 1..1000 {
            for b in a..1000 {
                for c in b..1000 {
                    let q = [a as f64 * step, b as f64 * step, c as f64 * step];
                    let v: f64 = (0..3).map(|j| mean[j] * q[j].ln() + (1.0 - mean[j]) * (1.0 - q[j]).ln()).sum();
                    if v > best.0 {
                        best = (v, q);
                    }
                }
            }
        }
        for j in 0..3 {
            assert!((p[j] - best.1[j]).abs() < 1e-3, "{p:?} vs {:?}", best.1);
        }
    }

    #[test]
    fn constrained_p_clamps_boundary_means() {
        let b = unit();
        let (p, flags) = constrained_p_mle_flagged(&[0.0, 2.0, 5.0], 5, &r(&[1, 2, 3]), b).unwrap();
        assert_eq!(p, vec![b.lower, 0.4, b.upper]);
        assert_eq!(flags, vec![true, false, true]);
    }

    #[test]
    fn constrained_p_rejects_mismatch() {
        assert!(constrained_p_mle(&[1.0, 2.0], 5, &r(&[1, 2, 3]), unit()).is_err());
        assert!(constrained_p_mle(&[1.0, 6.0], 5, &r(&[1, 2]), unit()).is_err());
    }

    #[test]
    fn theta_round_trip() {
        let b = ParamBounds::default().theta;
        for n in [2usize, 3, 5, 8] {
            for &t in &[0.01, 0.3, 1.0, 4.0, 20.0] {
                let est = theta_mle(kappa(t, n).unwrap(), n, b);
                assert!(!est.clamped);
                assert!((est.theta - t).abs() < 1e-8, "J={n} theta={t}: {}", est.theta);
                assert!((kappa(est.theta, n).unwrap() - kappa(t, n).unwrap()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn theta_clamps_at_both_ends() {
        let b = ParamBounds::default().theta;
        assert_eq!(theta_mle(0.0, 4, b), ThetaEstimate { theta: b.upper, clamped: true });
        assert_eq!(theta_mle(3.0, 4, b), ThetaEstimate { theta: b.lower, clamped: true });
        assert_eq!(theta_mle(5.0, 4, b), ThetaEstimate { theta: b.lower, clamped: true });
    }

    #[test]
    fn profile_unanimous() {
        let data = Dataset::from_parts(vec![vec![1, 2, 4], vec![1, 3, 4]], vec![r(&[1, 2, 3]), r(&[1, 2, 3])], 5).unwrap();
        let prof = profile_loglik(&data, &r(&[1, 2, 3]), &ParamBounds::default()).unwrap();
        assert!((prof.p[0] - 0.2).abs() < 1e-15);
        assert!((prof.p[1] - 0.5).abs() < 1e-15);
        assert!((prof.p[2] - 0.8).abs() < 1e-15);
        assert_eq!(prof.theta, 50.0);
        assert!(prof.clamped.theta);
    }

    fn small_data(seed: u64, judges: usize) -> Dataset {
        sample_dataset(&SimConfig {
            params: Params::new(vec![0.5, 0.3, 0.4, 0.7], 0.6).unwrap(),
            judges,
            max_rating: 4,
            seed,
        })
        .unwrap()
    }

    #[test]
    fn profile_below_unconstrained_maximum() {
        let data = small_data(5, 30);
        let b = ParamBounds::default();
        let stats = SufficientStats::new(&data);
        let free: Vec<f64> = stats.xbar().iter().map(|x| b.p.clamp(x / 4.0)).collect();
        let free_val = stats.binomial_loglik(&free);
        for order in all_permutations(4) {
            let pi = Ranking::new(order).unwrap();
            let prof = profile_loglik(&data, &pi, &b).unwrap();
            let total = stats.total_distance(&pi);
            let theta = theta_mle(total as f64 / 30.0, 4, b.theta).theta;
            let unconstrained = joint_loglik(&stats, &free, theta, total);
            assert!(prof.loglik <= unconstrained + 1e-12);
            assert!(stats.binomial_loglik(&prof.p) <= free_val + 1e-12);
        }
    }

    #[test]
    fn exhaustive_and_best_first_agree() {
        for seed in 0..30 {
            let data = small_data(seed, 5 + seed as usize);
            let o = FitOptions::default();
            let a = fit_exhaustive(&data, &o).unwrap();
            let b = fit_best_first(&data, &o).unwrap();
            assert_eq!(a.consensus, b.consensus);
            assert_eq!(a.loglik, b.loglik);
            assert_eq!(a.params, b.params);
        }
    }

    #[test]
    fn two_objects_two_leaves() {
        let data = Dataset::from_parts(vec![vec![0, 3]], vec![r(&[2, 1])], 3).unwrap();
        let fit = fit_best_first(&data, &FitOptions::default()).unwrap();
        assert!(fit.nodes_explored <= 2);
    }

    #[test]
    fn exhaustive_cap() {
        let data = Dataset::from_parts(vec![vec![0; 9]], vec![Ranking::identity(9)], 3).unwrap();
        let err = fit_exhaustive(&data, &FitOptions::default()).unwrap_err();
        assert_eq!(err, Error::TooManyObjects { objects: 9, cap: 8 });
        assert!(fit_best_first(&data, &FitOptions::default()).is_ok());
    }

    #[test]
    fn single_judge_consensus() {
        let data = Dataset::from_parts(vec![vec![4, 0, 2]], vec![r(&[2, 3, 1])], 5).unwrap();
        for method in [Method::Exhaustive, Method::BestFirst] {
            let fit = fit(&data, &FitOptions::default(), method).unwrap();
            assert_eq!(fit.consensus, r(&[2, 3, 1]));
            assert!(fit.clamped.theta);
        }
    }

    #[test]
    fn loglik_recomputes() {
        for seed in 0..10 {
            let data = small_data(100 + seed, 25);
            let fit = fit_best_first(&data, &FitOptions::default()).unwrap();
            let again = log_likelihood_with_consensus(&data, &fit.params, &fit.consensus).unwrap();
            assert_eq!(fit.loglik, again);
            let mut along = fit.consensus.order().iter().map(|&o| fit.params.p[o]);
            let mut prev = along.next().unwrap();
            for v in along {
                assert!(prev <= v);
                prev = v;
            }
            if !fit.params.p.windows(2).any(|w| w[0] == w[1]) {
                assert_eq!(order_of(&fit.params.p), fit.consensus);
            }
        }
    }

    #[test]
    fn permutations_are_lexicographic() {
        let perms = all_permutations(4);
        assert_eq!(perms.len(), 24);
        assert!(perms.windows(2).all(|w| w[0] < w[1]));
    }
}
