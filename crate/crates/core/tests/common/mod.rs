//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's own normalizer, distance or estimator code.

#![allow(dead_code)]

/// Every permutation of `0..n`, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                go(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Number of discordant pairs between an order and the identity, by
/// checking every pair.
pub fn inversions(order: &[usize]) -> u64 {
    let mut d = 0;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a] > order[b] {
                d += 1;
            }
        }
    }
    d
}

/// Kendall distance between two orders, pair by pair.
pub fn naive_kendall(a: &[usize], b: &[usize]) -> u64 {
    let n = a.len();
    let mut pos_b = vec![0; n];
    for (k, &o) in b.iter().enumerate() {
        pos_b[o] = k;
    }
    inversions(&a.iter().map(|&o| pos_b[o]).collect::<Vec<_>>())
}

/// `counts[d]` = number of permutations of `n` objects at distance `d` from any fixed one.
pub fn distance_counts(n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n * n.saturating_sub(1) / 2 + 1];
    for p in permutations(n) {
        counts[inversions(&p) as usize] += 1;
    }
    counts
}

/// Normalizer, mean and variance of the distance, by summing over all `n!` rankings.
pub fn exhaustive_moments(theta: f64, n: usize) -> (f64, f64, f64) {
    let counts = distance_counts(n);
    let w: Vec<f64> = counts
        .iter()
        .enumerate()
        .map(|(d, &c)| c as f64 * (-theta * d as f64).exp())
        .collect();
    let z: f64 = w.iter().sum();
    let mean = w.iter().enumerate().map(|(d, x)| d as f64 * x).sum::<f64>() / z;
    let var = w
        .iter()
        .enumerate()
        .map(|(d, x)| (d as f64 - mean).powi(2) * x)
        .sum::<f64>()
        / z;
    (z, mean, var)
}

fn ln_choose(m: u32, x: u32) -> f64 {
    (1..=x).map(|k| ((m - x + k) as f64 / k as f64).ln()).sum()
}

/// Dense-grid maximum of the log-likelihood with the consensus fixed.
///
/// `p` is searched on an even grid of `steps + 1` points spanning the box,
/// with the ordering constraint along `order` enforced by dynamic
/// programming; `theta` on its own even grid. Returns `(loglik, p, theta)`.
pub fn grid_profile(
    ratings: &[Vec<u32>],
    rankings: &[Vec<usize>],
    max_rating: u32,
    order: &[usize],
    p_box: (f64, f64),
    theta_box: (f64, f64),
    steps: usize,
) -> (f64, Vec<f64>, f64) {
    let n = order.len();
    let judges = ratings.len() as f64;
    let m = max_rating as f64;
    let grid: Vec<f64> = (0..=steps)
        .map(|k| p_box.0 + (p_box.1 - p_box.0) * k as f64 / steps as f64)
        .collect();
    let sums: Vec<f64> = (0..n).map(|j| ratings.iter().map(|r| r[j] as f64).sum()).collect();
    let constant: f64 = ratings.iter().flat_map(|r| r.iter().map(|&x| ln_choose(max_rating, x))).sum();
    let term = |j: usize, p: f64| sums[j] * p.ln() + (judges * m - sums[j]) * (1.0 - p).ln();

    // best[k]: best value over the first objects in `order` with the latest at grid[k] or below.
    let mut best = vec![0.0; grid.len()];
    let mut arg: Vec<Vec<usize>> = Vec::with_capacity(n);
    for (step, &j) in order.iter().enumerate() {
        let mut cur = vec![0.0; grid.len()];
        let mut choice = vec![0usize; grid.len()];
        let mut run = f64::NEG_INFINITY;
        let mut run_at = 0;
        for k in 0..grid.len() {
            let v = term(j, grid[k]) + if step == 0 { 0.0 } else { best[k] };
            if v > run {
                run = v;
                run_at = k;
            }
            cur[k] = run;
            choice[k] = run_at;
        }
        // `best` for the next step must be the prefix max ending at or below k,
        // which `cur` already is.
        best = cur;
        arg.push(choice);
    }
    let mut p = vec![0.0; n];
    let mut k = grid.len() - 1;
    let binom = best[k];
    for step in (0..n).rev() {
        k = arg[step][k];
        p[order[step]] = grid[k];
    }

    let mut pos = vec![0; n];
    for (k, &o) in order.iter().enumerate() {
        pos[o] = k;
    }
    let total: f64 = rankings
        .iter()
        .map(|r| inversions(&r.iter().map(|&o| pos[o]).collect::<Vec<_>>()) as f64)
        .sum();
    let counts = distance_counts(n);
    let ranking_part = |theta: f64| {
        let z: f64 = counts.iter().enumerate().map(|(d, &c)| c as f64 * (-theta * d as f64).exp()).sum();
        -theta * total - judges * z.ln()
    };
    let theta_steps = steps * 10;
    let (mut best_t, mut best_v) = (theta_box.0, f64::NEG_INFINITY);
    for k in 0..=theta_steps {
        let t = theta_box.0 + (theta_box.1 - theta_box.0) * k as f64 / theta_steps as f64;
        let v = ranking_part(t);
        if v > best_v {
            best_v = v;
            best_t = t;
        }
    }
    (constant + binom + best_v, p, best_t)
}
