//! Urn dynamics against independent oracles: closed-form moments vs the DP,
//! the DP vs simulation (χ²), the one-step mixture decomposition, the
//! conditional-mixture identities over the three-white-start chain, the
//! conditioned draw laws by exhaustive path enumeration, the index-pair
//! sampler, and the couplings with their almost-sure pin bounds.

mod support;

use std::collections::BTreeMap;

use kslaw::rng::stream_rng;
use kslaw::transform::square_bias_pmf;
use kslaw::urn::{
    self, conditioned_pmf, joint_xjxk, mean_white, mixture_check, polya_coupling_nm,
    second_moment_white, simulate_m_jk, CoupledSampler, JkSampler, MaximalRw2,
};
use kslaw::{Error, Pmf, UrnSpec};
use rand::Rng;

const SQRT_2PI: f64 = 2.5066282746310002;

/// Closed-form mean/second moment against hand values and the DP.
#[test]
fn moment_formulas_match_dp() {
    assert!((mean_white(1, 1) - 1.5).abs() < 1e-12);
    assert!((mean_white(1, 2) - 1.875).abs() < 1e-12);
    assert!((second_moment_white(1, 1) - 2.5).abs() < 1e-12);

    for (i, n) in [(1u64, 5u64), (3, 10), (3, 7), (0, 8), (7, 25)] {
        let pmf = UrnSpec::attachment(i).exact_pmf(n).unwrap();
        let mean = pmf.mean();
        let m2 = pmf.moment(2);
        assert!(
            (mean - mean_white(i, n)).abs() < 1e-10,
            "mean mismatch at (i={i}, n={n}): {mean}"
        );
        assert!(
            (m2 - second_moment_white(i, n)).abs() < 1e-10,
            "second moment mismatch at (i={i}, n={n}): {m2}"
        );
    }
}

/// E W_n ≤ √(2π)·√(n/(i+2)+1/2) and the second-moment sandwich
/// (2−√π)·(i+2n+1)/(i+1) ≤ E W_n² ≤ 2·(i+2n+1)/(i+1).
#[test]
fn moment_bounds_hold() {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    for i in [0u64, 1, 2, 5, 11] {
        for n in [1u64, 4, 16, 64, 256, 1024] {
            let mean = mean_white(i, n);
            let cap = SQRT_2PI * (n as f64 / (i as f64 + 2.0) + 0.5).sqrt();
            assert!(mean <= cap, "mean bound fails at (i={i}, n={n}): {mean} > {cap}");

            let m2 = second_moment_white(i, n);
            let frame = (i as f64 + 2.0 * n as f64 + 1.0) / (i as f64 + 1.0);
            assert!(
                (2.0 - sqrt_pi) * frame <= m2 && m2 <= 2.0 * frame,
                "second-moment sandwich fails at (i={i}, n={n}): {m2} vs frame {frame}"
            );
        }
    }
}

/// The growth product ∏_{t=1}^n (i+2t)/(i+2t−1) (which is E W_n) is bracketed
/// by (1/√π)·√(2n/(i+2)+1) and √π·√(2n/(i+2)+1).
#[test]
fn growth_product_sandwich() {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    for i in [0u64, 1, 3, 8] {
        for n in [1u64, 10, 100, 1000] {
            let mut product = 1.0_f64;
            for t in 1..=n {
                product *= (i + 2 * t) as f64 / (i + 2 * t - 1) as f64;
            }
            assert!(
                (product - mean_white(i, n)).abs() < 1e-9 * product,
                "product is not the mean at (i={i}, n={n})"
            );
            let root = (2.0 * n as f64 / (i as f64 + 2.0) + 1.0).sqrt();
            assert!(
                root / sqrt_pi <= product && product <= sqrt_pi * root,
                "product sandwich fails at (i={i}, n={n}): {product} vs √ = {root}"
            );
        }
    }
}

/// Simulation vs exact DP: χ² goodness of fit at the 1% level,
/// 10^5 trajectories of the single-white-start urn at n = 20.
#[test]
fn simulation_matches_dp_chi_square() {
    const N: usize = 100_000;
    let spec = UrnSpec::attachment(1);
    let exact = spec.exact_pmf(20).unwrap();
    let mut rng = stream_rng(0xca11_ab1e, 0);
    let counts = support::tally((0..N).map(|_| spec.simulate(20, &mut rng) as i64));
    let p = support::chi_square_pvalue(&counts, &exact, N as u64);
    assert!(p > 0.01, "χ² rejects the DP law: p = {p}");
}

/// One-step mixture decomposition: the single-white-start law after n draws
/// equals the (1/(1+i), i/(1+i)) mixture of the two one-draw-advanced urns,
/// in total variation, across an (i, n) grid including the degenerate i = 0.
#[test]
fn one_step_mixture_decomposition() {
    assert_eq!(mixture_check(1, 1).unwrap(), 0.0);
    for i in [0u64, 1, 2, 3, 6] {
        for n in [1u64, 2, 5, 10, 25, 50] {
            let tv = mixture_check(i, n).unwrap();
            assert!(tv <= 1e-12, "mixture gap {tv} at (i={i}, n={n})");
        }
    }
}

/// Conditional mixture over the three-white-start count R: each branch of the
/// one-step decomposition is itself a classical-Pólya mixture driven by R.
/// With R ~ (2,0;1,1)^{n−1}_{i,3},
///   (2,0;1,1)^{n−1}_{i+1,2} = Σ_R P(R)·(1,0;0,1)^{R−3}_{1,2}
///   (2,0;1,1)^{n−1}_{i+2,1} = Σ_R P(R)·(1,0;0,1)^{R−3}_{2,1}
/// — all sides by exact DP, TV ≤ 1e-12.
#[test]
fn conditional_mixture_over_three_white_start() {
    for i in [0u64, 1, 3] {
        for n in [5u64, 12, 27, 50] {
            let r_law = UrnSpec::attachment_counts(i, 3).exact_pmf(n - 1).unwrap();

            for (extra_black, polya_white, lhs_spec) in [
                (1u64, 2u64, UrnSpec::attachment_counts(i + 1, 2)),
                (2, 1, UrnSpec::attachment_counts(i + 2, 1)),
            ] {
                let lhs = lhs_spec.exact_pmf(n - 1).unwrap();
                let branches: Vec<(f64, Pmf)> = r_law
                    .support()
                    .map(|(r, p)| {
                        let polya = UrnSpec::classic_polya(extra_black, polya_white)
                            .exact_pmf(r as u64 - 3)
                            .unwrap();
                        (p, polya)
                    })
                    .collect();
                let refs: Vec<(f64, &Pmf)> =
                    branches.iter().map(|(p, pmf)| (*p, pmf)).collect();
                let rhs = Pmf::mix(&refs).unwrap();
                let tv = lhs.tv(&rhs);
                assert!(
                    tv <= 1e-12,
                    "conditional mixture gap {tv} at (i={i}, n={n}, branch +{extra_black})"
                );
            }
        }
    }
}

/// The two conditional draw laws, against exhaustive path enumeration of the
/// unconditioned chain (2^n paths):
///   P(X_j=1 | X_k=1, W_{j−1}=w)        = (1+w)/(i+2j)        for j < k,
///   P(X_l=1 | X_j=X_k=1, W_{l−1}=w)    = (2+w)/(i+2l+1)      for l < j < k.
#[test]
fn conditional_draw_laws_by_enumeration() {
    let n = 10u64;
    for i in [1u64, 2] {
        for (j, k) in [(2u64, 5u64), (3, 7), (1, 9)] {
            // joint[w] = P(X_j=1, X_k=1, W_{j−1}=w); base[w] = P(X_k=1, W_{j−1}=w).
            let mut joint: BTreeMap<u64, f64> = BTreeMap::new();
            let mut base: BTreeMap<u64, f64> = BTreeMap::new();
            support::for_each_urn_path(i, n, |prob, whites| {
                let xj = whites[j as usize] > whites[j as usize - 1];
                let xk = whites[k as usize] > whites[k as usize - 1];
                let w = whites[j as usize - 1];
                if xk {
                    *base.entry(w).or_insert(0.0) += prob;
                    if xj {
                        *joint.entry(w).or_insert(0.0) += prob;
                    }
                }
            });
            for (&w, &denom) in &base {
                let got = joint.get(&w).copied().unwrap_or(0.0) / denom;
                let want = (1 + w) as f64 / (i + 2 * j) as f64;
                assert!(
                    (got - want).abs() < 1e-10,
                    "single-condition law at (i={i}, j={j}, k={k}, w={w}): {got} vs {want}"
                );
            }
        }

        for (l, j, k) in [(1u64, 4u64, 8u64), (2, 5, 9), (3, 6, 8)] {
            let mut joint: BTreeMap<u64, f64> = BTreeMap::new();
            let mut base: BTreeMap<u64, f64> = BTreeMap::new();
            support::for_each_urn_path(i, n, |prob, whites| {
                let xl = whites[l as usize] > whites[l as usize - 1];
                let xj = whites[j as usize] > whites[j as usize - 1];
                let xk = whites[k as usize] > whites[k as usize - 1];
                let w = whites[l as usize - 1];
                if xj && xk {
                    *base.entry(w).or_insert(0.0) += prob;
                    if xl {
                        *joint.entry(w).or_insert(0.0) += prob;
                    }
                }
            });
            for (&w, &denom) in &base {
                let got = joint.get(&w).copied().unwrap_or(0.0) / denom;
                let want = (2 + w) as f64 / (i + 2 * l + 1) as f64;
                assert!(
                    (got - want).abs() < 1e-10,
                    "double-condition law at (i={i}, l={l}, j={j}, k={k}, w={w}): {got} vs {want}"
                );
            }
        }
    }
}

/// The conditioned-chain DP reproduces exhaustive enumeration of
/// law(W_n | the forced draws are white), and the empty conditioning is the
/// plain law.
#[test]
fn conditioned_pmf_matches_enumeration() {
    for (i, n, forced) in [
        (1u64, 10u64, vec![2u64, 5]),
        (2, 8, vec![1]),
        (1, 4, vec![1, 3]),
        (3, 9, vec![4, 9]),
    ] {
        let dp = conditioned_pmf(i, n, &forced).unwrap();
        let mut law: BTreeMap<i64, f64> = BTreeMap::new();
        let mut mass = 0.0;
        support::for_each_urn_path(i, n, |prob, whites| {
            let all_forced_white = forced
                .iter()
                .all(|&m| whites[m as usize] > whites[m as usize - 1]);
            if all_forced_white {
                mass += prob;
                *law.entry(whites[n as usize] as i64).or_insert(0.0) += prob;
            }
        });
        let mut tv = 0.0;
        for (v, p) in dp.support() {
            tv += (p - law.get(&v).copied().unwrap_or(0.0) / mass).abs();
        }
        assert!(
            tv / 2.0 <= 1e-12,
            "conditioned law mismatch at (i={i}, n={n}, forced {forced:?}): TV = {}",
            tv / 2.0
        );
    }

    let plain = UrnSpec::attachment(2).exact_pmf(12).unwrap();
    let empty = conditioned_pmf(2, 12, &[]).unwrap();
    assert!(plain.tv(&empty) <= 1e-13);

    assert!(matches!(conditioned_pmf(1, 5, &[0]), Err(Error::Domain(_))));
    assert!(matches!(conditioned_pmf(1, 5, &[3, 3]), Err(Error::Domain(_))));
}

/// The literal two-blacks-added process simulation has the conditioned law:
/// start at 3 whites, skip the white indicator at the two special draws.
#[test]
fn m_process_matches_conditioned_law() {
    const N: usize = 100_000;
    let (i, n, j, k) = (1u64, 4u64, 1u64, 3u64);
    let target = conditioned_pmf(i, n, &[j, k]).unwrap();
    let mut rng = stream_rng(0x0e57_ee83, 0);
    let mut counts = BTreeMap::new();
    for _ in 0..N {
        let m = simulate_m_jk(i, n, j, k, &mut rng).unwrap();
        assert!(m >= 3, "conditioned white count {m} below its floor");
        *counts.entry(m as i64).or_insert(0u64) += 1;
    }
    let empirical = support::counts_to_pmf(&counts, N as u64);
    let tv = empirical.tv(&target);
    assert!(tv <= 0.01, "process law TV = {tv}");

    let p = support::chi_square_pvalue(&counts, &target, N as u64);
    assert!(p > 0.01, "χ² rejects the conditioned law: p = {p}");

    assert!(matches!(simulate_m_jk(1, 6, 3, 3, &mut rng), Err(Error::Domain(_))));
    assert!(matches!(simulate_m_jk(1, 6, 4, 2, &mut rng), Err(Error::Domain(_))));
}

/// Pairwise indicator moments: exact enumeration oracle on a full (j,k) grid,
/// a Monte Carlo spot check, and the closed-form upper bound.
#[test]
fn pairwise_indicator_moments() {
    assert_eq!(joint_xjxk(1, 0, 0, 5).unwrap(), 1.0);

    // Enumeration oracle at n = 9.
    let n = 9u64;
    for i in [1u64, 3] {
        let mut table: BTreeMap<(u64, u64), f64> = BTreeMap::new();
        support::for_each_urn_path(i, n, |prob, whites| {
            for j in 0..=n {
                let xj = j == 0 || whites[j as usize] > whites[j as usize - 1];
                if !xj {
                    continue;
                }
                for k in j..=n {
                    let xk = k == 0 || whites[k as usize] > whites[k as usize - 1];
                    if xk {
                        *table.entry((j, k)).or_insert(0.0) += prob;
                    }
                }
            }
        });
        for j in 0..=n {
            for k in j..=n {
                let got = joint_xjxk(i, j, k, n).unwrap();
                let want = table[&(j, k)];
                assert!(
                    (got - want).abs() <= 1e-12,
                    "E(X_{j} X_{k}) at i = {i}: {got} vs enumeration {want}"
                );
            }
        }
    }

    // Monte Carlo: E(X_1 X_2) at i = 1 over 10^6 two-draw runs.
    let mut rng = stream_rng(0x0e57_ee84, 0);
    const REPS: usize = 1_000_000;
    let mut hits = 0u64;
    for _ in 0..REPS {
        let w1 = rng.random::<f64>() < 0.5; // 1/(i+1) with i = 1
        let w = if w1 { 2.0 } else { 1.0 };
        let w2 = rng.random::<f64>() < w / 4.0; // i + 2·2 − 1 = 4
        if w1 && w2 {
            hits += 1;
        }
    }
    let est = hits as f64 / REPS as f64;
    let want = joint_xjxk(1, 1, 2, 2).unwrap();
    let se = (want * (1.0 - want) / REPS as f64).sqrt();
    assert!((est - want).abs() <= 4.0 * se, "MC joint moment: {est} vs {want}");

    // Closed-form caps: E X_j ≤ √π/√((i+1)(i+2j−1)) for j ≥ 1, and the pair
    // cap for strictly ordered indices 1 ≤ j < k (it fails on the diagonal,
    // where E(X_j²) = E X_j).
    let sqrt_pi = std::f64::consts::PI.sqrt();
    for i in [1u64, 2, 5] {
        for j in 1..=20u64 {
            let ex = joint_xjxk(i, j, j, 20).unwrap();
            let cap = sqrt_pi / (((i + 1) * (i + 2 * j - 1)) as f64).sqrt();
            assert!(ex <= cap + 1e-12, "single-moment cap at (i={i}, j={j}): {ex} > {cap}");
            for k in (j + 1)..=20u64 {
                let got = joint_xjxk(i, j, k, 20).unwrap();
                let cap = SQRT_2PI * (1.0 + sqrt_pi)
                    / ((i as f64 + 2.0) * (((i + 2 * j) * (i + 2 * k - 1)) as f64).sqrt());
                assert!(
                    got <= cap + 1e-12,
                    "pair-moment cap fails at (i={i}, j={j}, k={k}): {got} > {cap}"
                );
            }
        }
    }
}

/// The index-pair law: normalization, the (0,0) atom, marginal agreement
/// with simulation, and sampler/table consistency.
#[test]
fn index_pair_sampler() {
    let (i, n) = (1u64, 15u64);
    let jk = JkSampler::new(i, n).unwrap();
    let b2 = second_moment_white(i, n);
    assert!((jk.b2() - b2).abs() < 1e-12);
    assert!((jk.prob(0, 0).unwrap() - 1.0 / b2).abs() < 1e-14);

    // Σ over ordered pairs = 1 (off-diagonal entries counted twice).
    let mut total = 0.0;
    for j in 0..=n {
        for k in j..=n {
            let p = jk.prob(j, k).unwrap();
            total += if j == k { p } else { 2.0 * p };
        }
    }
    assert!((total - 1.0).abs() <= 1e-9, "index law mass {total}");

    // Empirical unordered-pair frequencies vs the table.
    const REPS: usize = 200_000;
    let mut rng = stream_rng(0x0e57_ee85, 0);
    let mut counts: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    for _ in 0..REPS {
        let (j, k) = jk.sample(&mut rng);
        assert!(j <= k && k <= n);
        *counts.entry((j, k)).or_insert(0) += 1;
    }
    for j in 0..=n {
        for k in j..=n {
            let p = jk.prob(j, k).unwrap();
            let p_unordered = if j == k { p } else { 2.0 * p };
            let est = counts.get(&(j, k)).copied().unwrap_or(0) as f64 / REPS as f64;
            let se = (p_unordered * (1.0 - p_unordered) / REPS as f64).sqrt();
            assert!(
                (est - p_unordered).abs() <= 5.0 * se + 2e-4,
                "pair ({j},{k}): {est} vs {p_unordered}"
            );
        }
    }

    let (j, k) = urn::sample_jk(i, n, &mut rng).unwrap();
    assert!(j <= k && k <= n);
}

/// The overlap coupling is exactly maximal: its disagreement probability
/// equals the total-variation distance between the three-white-start law and
/// the square bias of the single-white-start law — and the exact TV decays
/// like n^{−1/2}.
#[test]
fn maximal_coupling_is_tight_and_decays() {
    let (i, n) = (1u64, 50u64);
    let mx = MaximalRw2::new(i, n).unwrap();
    let r_law = UrnSpec::attachment_counts(i, 3).exact_pmf(n - 1).unwrap();
    let w2_law = square_bias_pmf(&UrnSpec::attachment(i).exact_pmf(n).unwrap()).unwrap();
    assert!((mx.tv() - r_law.tv(&w2_law)).abs() < 1e-12);

    // Empirical disagreement sits on the exact TV; both marginals check out.
    const REPS: usize = 40_000;
    let mut rng = stream_rng(0x0e57_ee86, 0);
    let mut disagree = 0u64;
    let mut r_counts = BTreeMap::new();
    let mut w2_counts = BTreeMap::new();
    for _ in 0..REPS {
        let (r, w2) = mx.draw(&mut rng);
        disagree += u64::from(r != w2);
        *r_counts.entry(r as i64).or_insert(0u64) += 1;
        *w2_counts.entry(w2 as i64).or_insert(0u64) += 1;
    }
    let est = disagree as f64 / REPS as f64;
    let se = (mx.tv() * (1.0 - mx.tv()) / REPS as f64).sqrt();
    assert!((est - mx.tv()).abs() <= 4.0 * se, "disagreement {est} vs TV {}", mx.tv());
    assert!(support::counts_to_pmf(&r_counts, REPS as u64).kolmogorov(&r_law) <= 0.015);
    assert!(support::counts_to_pmf(&w2_counts, REPS as u64).kolmogorov(&w2_law) <= 0.015);

    // Exact TV over a dyadic n-range: slope −1/2 ± 0.2.
    let pts: Vec<(f64, f64)> = [64u64, 256, 1024]
        .iter()
        .map(|&nn| (nn as f64, MaximalRw2::new(1, nn).unwrap().tv()))
        .collect();
    let slope = support::loglog_slope(&pts);
    assert!(
        (slope + 0.5).abs() <= 0.2,
        "exact disagreement decay slope {slope}"
    );
}

/// The shared-uniform chain coupling has the right marginals on both sides.
#[test]
fn chain_coupling_marginals() {
    const REPS: usize = 100_000;
    let (i, n) = (1u64, 50u64);
    let sampler = CoupledSampler::new(i, n).unwrap();
    let mut rng = stream_rng(0x0e57_ee87, 0);
    let mut r_counts = BTreeMap::new();
    let mut w2_counts = BTreeMap::new();
    for _ in 0..REPS {
        let draw = sampler.draw(&mut rng);
        assert_eq!(draw.agree, draw.r == draw.w2);
        assert!(draw.j <= draw.k);
        *r_counts.entry(draw.r as i64).or_insert(0u64) += 1;
        *w2_counts.entry(draw.w2 as i64).or_insert(0u64) += 1;
    }
    let r_law = UrnSpec::attachment_counts(i, 3).exact_pmf(n - 1).unwrap();
    let w2_law = square_bias_pmf(&UrnSpec::attachment(i).exact_pmf(n).unwrap()).unwrap();
    let dk_r = support::counts_to_pmf(&r_counts, REPS as u64).kolmogorov(&r_law);
    let dk_w2 = support::counts_to_pmf(&w2_counts, REPS as u64).kolmogorov(&w2_law);
    assert!(dk_r <= 0.01, "three-white-start marginal d_K = {dk_r}");
    assert!(dk_w2 <= 0.01, "square-bias marginal d_K = {dk_w2}");
}

/// Mean growth of the three-white-start count: E R_n ~ C·√n, checked as the
/// scale-free doubling ratio E R_{4n}/E R_n → 2 (exact DP means).
#[test]
fn three_white_start_mean_grows_like_sqrt() {
    for i in [1u64, 4] {
        let mean_at = |n: u64| {
            UrnSpec::attachment_counts(i, 3)
                .exact_pmf(n)
                .unwrap()
                .mean()
        };
        let (m64, m256, m1024) = (mean_at(64), mean_at(256), mean_at(1024));
        let r1 = m256 / m64;
        let r2 = m1024 / m256;
        assert!(
            (r1 - 2.0).abs() < 0.3 && (r2 - 2.0).abs() < 0.15,
            "doubling ratios at i = {i}: {r1}, {r2}"
        );
    }
}

/// The two-uniform classical-Pólya coupling: exact CDF, the almost-sure
/// within-3 pins, and law(M) = law(n−N).
#[test]
fn two_uniform_polya_coupling() {
    let mut rng = stream_rng(0x0e57_ee88, 0);

    // P(N ≤ 3) at n = 5 is F(3) = 3·2/(4·3) = 1/2: exactly, then empirically.
    const REPS: usize = 200_000;
    let mut le3 = 0u64;
    for _ in 0..REPS {
        let nm = polya_coupling_nm(5, &mut rng).unwrap();
        le3 += u64::from(nm.n_max <= 3);
    }
    let est = le3 as f64 / REPS as f64;
    assert!((est - 0.5).abs() <= 4.0 * (0.25 / REPS as f64).sqrt(), "P(N ≤ 3) = {est}");

    // Almost-sure pins at a large n, plus full CDF and reflection law checks.
    let n = 1000u64;
    let mut n_counts = BTreeMap::new();
    let mut m_counts = BTreeMap::new();
    const PIN_REPS: usize = 1_000_000;
    for _ in 0..PIN_REPS {
        let nm = polya_coupling_nm(n, &mut rng).unwrap();
        let gap_n = (nm.n_max as f64 - n as f64 * nm.u1.max(nm.u2)).abs();
        let gap_m = (nm.m_min as f64 - n as f64 * nm.u1.min(nm.u2)).abs();
        assert!(gap_n < 3.0, "max-side pin broke: {gap_n}");
        assert!(gap_m < 3.0, "min-side pin broke: {gap_m}");
        *n_counts.entry(nm.n_max as i64).or_insert(0u64) += 1;
        *m_counts.entry(nm.m_min as i64).or_insert(0u64) += 1;
    }

    // Exact pmf of N from F(k) = k(k−1)/((n−1)(n−2)) on 1..n−1.
    let denom = ((n - 1) * (n - 2)) as f64;
    let n_pmf = Pmf::new(
        1,
        (1..n).map(|k| 2.0 * (k - 1) as f64 / denom).collect(),
    )
    .unwrap();
    let m_pmf = Pmf::new(
        1,
        (1..n).map(|m| 2.0 * (n - m - 1) as f64 / denom).collect(),
    )
    .unwrap();
    let dk_n = support::counts_to_pmf(&n_counts, PIN_REPS as u64).kolmogorov(&n_pmf);
    let dk_m = support::counts_to_pmf(&m_counts, PIN_REPS as u64).kolmogorov(&m_pmf);
    assert!(dk_n <= 0.005, "N CDF mismatch: {dk_n}");
    assert!(dk_m <= 0.005, "law(M) ≠ law(n−N): {dk_m}");

    assert!(matches!(polya_coupling_nm(2, &mut rng), Err(Error::Domain(_))));
}

/// DP error contract: unbalanced urns are unsupported, the size guard names
/// the offending dimensions, and the classical uniform law comes out exact.
#[test]
fn dp_contract() {
    let unbalanced = UrnSpec::new(1, 1, 0, 1, 1, 1).unwrap();
    assert!(matches!(unbalanced.exact_pmf(3), Err(Error::Unsupported(_))));

    match UrnSpec::attachment(1).exact_pmf(60_000) {
        Err(Error::Resource(msg)) => assert!(msg.contains("60000"), "guard message: {msg}"),
        other => panic!("expected resource error, got {other:?}"),
    }

    // Single-extra-ball classical urn: white count uniform on 1..=n+1.
    let pmf = UrnSpec::classic_polya(1, 1).exact_pmf(10).unwrap();
    for v in 1..=11i64 {
        assert!((pmf.prob(v) - 1.0 / 11.0).abs() < 1e-13);
    }
    let two = UrnSpec::classic_polya(1, 2).exact_pmf(2).unwrap();
    assert!((two.prob(2) - 1.0 / 6.0).abs() < 1e-14);
    assert!((two.prob(3) - 1.0 / 3.0).abs() < 1e-14);
    assert!((two.prob(4) - 0.5).abs() < 1e-14);
}
