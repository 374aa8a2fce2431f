//! Shared helpers for the integration suite: an independent double-exponential
//! quadrature oracle for the confluent integral, χ² goodness-of-fit, log–log
//! slope fitting, and brute-force path enumerators for the urn chain and the
//! sequential attachment graph.
//!
//! Everything here is deliberately written from scratch against textbook
//! formulas — none of it calls the crate's own quadrature or DP routines — so
//! agreement between the two sides is evidence, not circularity.
#![allow(dead_code)]

use std::collections::BTreeMap;

use kslaw::Pmf;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use statrs::function::gamma::ln_gamma;

/// Reference evaluation of U(a, b, z) for a > 0, z > 0 through the Laplace
/// integral
///
/// ```text
/// U(a,b,z) = (1/Γ(a)) ∫₀^∞ e^{−zt} t^{a−1} (1+t)^{b−a−1} dt,
/// ```
///
/// computed by exp-sinh (double-exponential) quadrature: t = exp((π/2)·sinh(u))
/// turns the half-line into ℝ with super-exponentially decaying summands, so
/// the trapezoid sum converges geometrically in the level count. Step halving
/// stops when two levels agree to 1e-14 relative.
pub fn kummer_u_reference(a: f64, b: f64, z: f64) -> f64 {
    assert!(a > 0.0 && z > 0.0, "reference integral needs a > 0, z > 0");
    let half_pi = std::f64::consts::FRAC_PI_2;
    let term = |u: f64| -> f64 {
        let sh = half_pi * u.sinh();
        // t = e^{sh}; weight dt = t·(π/2)cosh(u)·du.
        let ln_t = sh;
        let t = ln_t.exp();
        let ln_f = -z * t + (a - 1.0) * ln_t + (b - a - 1.0) * t.ln_1p();
        if ln_f < -745.0 {
            return 0.0;
        }
        ln_f.exp() * t * half_pi * u.cosh()
    };

    // sinh(5.5) ≈ 122: t spans e^{±192}. The left end must be this deep so the
    // t^{a−1} head has fully decayed even at a = 1/4 (t^{a} ≈ e^{−48} there);
    // the right end stays finite in f64 and e^{−zt} kills it long before.
    let u_max = 5.5_f64;
    let mut h = 0.25_f64;
    let mut prev = f64::NAN;
    let mut total = 0.0;
    for _level in 0..12 {
        let steps = (u_max / h).ceil() as i64;
        total = term(0.0);
        for k in 1..=steps {
            total += term(k as f64 * h) + term(-(k as f64) * h);
        }
        total *= h;
        if (total - prev).abs() <= 1e-14 * total.abs() {
            break;
        }
        prev = total;
        h *= 0.5;
    }
    (-ln_gamma(a)).exp() * total
}

/// χ² goodness-of-fit p-value of observed integer counts against an exact
/// pmf. Support points are merged left-to-right until each bin expects at
/// least five observations (the classical validity rule); the tail beyond the
/// pmf's support is folded into the last bin. Degrees of freedom =
/// bins − 1.
pub fn chi_square_pvalue(counts: &BTreeMap<i64, u64>, expected: &Pmf, total: u64) -> f64 {
    let n = total as f64;
    let mut bins: Vec<(f64, f64)> = Vec::new(); // (observed, expected)
    let mut acc_obs = 0.0;
    let mut acc_exp = 0.0;
    for (v, p) in expected.support() {
        acc_obs += counts.get(&v).copied().unwrap_or(0) as f64;
        acc_exp += p * n;
        if acc_exp >= 5.0 {
            bins.push((acc_obs, acc_exp));
            acc_obs = 0.0;
            acc_exp = 0.0;
        }
    }
    if acc_exp > 0.0 || acc_obs > 0.0 {
        if let Some(last) = bins.last_mut() {
            last.0 += acc_obs;
            last.1 += acc_exp;
        } else {
            bins.push((acc_obs, acc_exp));
        }
    }
    assert!(bins.len() >= 2, "χ² needs at least two merged bins");
    let stat: f64 = bins.iter().map(|&(o, e)| (o - e) * (o - e) / e).sum();
    let df = (bins.len() - 1) as f64;
    1.0 - ChiSquared::new(df).unwrap().cdf(stat)
}

/// Tally integer samples into a count map.
pub fn tally(samples: impl IntoIterator<Item = i64>) -> BTreeMap<i64, u64> {
    let mut counts = BTreeMap::new();
    for v in samples {
        *counts.entry(v).or_insert(0u64) += 1;
    }
    counts
}

/// Empirical pmf from a count map.
pub fn counts_to_pmf(counts: &BTreeMap<i64, u64>, total: u64) -> Pmf {
    let lo = *counts.keys().next().expect("empty sample");
    let hi = *counts.keys().next_back().unwrap();
    let mut probs = vec![0.0; (hi - lo + 1) as usize];
    for (&v, &c) in counts {
        probs[(v - lo) as usize] = c as f64 / total as f64;
    }
    Pmf::new(lo, probs).expect("empirical pmf")
}

/// Ordinary least-squares slope of ln y against ln x.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Sample mean and standard error of the mean.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Exact degree law of one vertex in the two-vertex-seed attachment graph
/// (single edge 2→1, each new vertex attaches once, probability proportional
/// to degree), by exhaustive enumeration of every attachment history. The
/// graph with n vertices has ∏_{m=2}^{n−1} m histories, so keep n small.
pub fn model1_degree_by_enumeration(n: u64, vertex: u64) -> BTreeMap<i64, f64> {
    assert!(n >= 2 && vertex >= 1 && vertex <= n);
    let mut law = BTreeMap::new();
    let mut degrees = vec![1u64, 1u64];
    recurse_model1(&mut degrees, 1.0, n, vertex, &mut law);
    let mass: f64 = law.values().sum();
    assert!((mass - 1.0).abs() < 1e-12, "history probabilities sum to {mass}");
    law
}

fn recurse_model1(
    degrees: &mut Vec<u64>,
    prob: f64,
    n: u64,
    vertex: u64,
    law: &mut BTreeMap<i64, f64>,
) {
    let m = degrees.len() as u64;
    if m == n {
        *law.entry(degrees[(vertex - 1) as usize] as i64).or_insert(0.0) += prob;
        return;
    }
    // Adding vertex m+1: total degree mass is 2(m−1) over the m vertices.
    let total = 2.0 * (m as f64 - 1.0);
    for target in 0..degrees.len() {
        let p = degrees[target] as f64 / total;
        degrees[target] += 1;
        degrees.push(1);
        recurse_model1(degrees, prob * p, n, vertex, law);
        degrees.pop();
        degrees[target] -= 1;
    }
}

/// Visit every white/black draw path of the single-white-start attachment urn
/// (two blacks added on a black draw, one of each on a white draw, i initial
/// blacks): calls `visit(path_prob, whites)` where whites[l] is the white
/// count after l draws (whites[0] = 1). 2^n paths — keep n ≤ ~16.
pub fn for_each_urn_path(i: u64, n: u64, mut visit: impl FnMut(f64, &[u64])) {
    assert!(n <= 20, "2^n paths; n = {n} is too large");
    let mut whites = vec![0u64; n as usize + 1];
    for mask in 0u64..(1 << n) {
        whites[0] = 1;
        let mut prob = 1.0;
        for l in 1..=n {
            let w = whites[(l - 1) as usize];
            let p_white = w as f64 / (i + 2 * l - 1) as f64;
            if mask >> (l - 1) & 1 == 1 {
                prob *= p_white;
                whites[l as usize] = w + 1;
            } else {
                prob *= 1.0 - p_white;
                whites[l as usize] = w;
            }
        }
        visit(prob, &whites);
    }
}

/// Kolmogorov distance between a sorted sample and an exact integer pmf
/// (both read as laws on ℝ): sup over atoms of |F̂ − F|.
pub fn kolmogorov_sample_vs_pmf(sorted: &[i64], pmf: &Pmf) -> f64 {
    let n = sorted.len() as f64;
    let mut worst = 0.0_f64;
    for (v, _) in pmf.support() {
        let below = sorted.partition_point(|&x| x < v) as f64 / n;
        let at_or_below = sorted.partition_point(|&x| x <= v) as f64 / n;
        let f = pmf.cdf(v);
        let f_minus = f - pmf.prob(v);
        worst = worst.max((below - f_minus).abs()).max((at_or_below - f).abs());
    }
    worst
}
