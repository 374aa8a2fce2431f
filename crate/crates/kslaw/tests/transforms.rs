//! Distributional transforms: the mixing variable V, size and square bias on
//! finite pmfs (with property-based checks of the defining identities), the
//! square-bias recipe for indicator sums against exact enumeration, and the
//! fixed-point characterization of the limit family.

mod support;

use std::collections::BTreeMap;

use kslaw::metric::kolmogorov_two_sample;
use kslaw::rng::stream_rng;
use kslaw::transform::{
    size_bias_pmf, square_bias_pmf, tdsb_sample_discrete, BernoulliIndicators, DoubleSizeBias,
    UrnIndicators, VMixer,
};
use kslaw::urn::second_moment_white;
use kslaw::{Error, KsDist, Pmf, UrnSpec};
use proptest::prelude::*;
use rand::Rng;

/// d_K between a sample and a continuous CDF given as a closure.
fn kolmogorov_vs_cdf(xs: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut worst = 0.0_f64;
    for (idx, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        worst = worst
            .max((idx as f64 / n - f).abs())
            .max(((idx + 1) as f64 / n - f).abs());
    }
    worst
}

/// V's density is (2−1/s) − 2x(1−1/s) on (0,1): the sampler matches the
/// implied CDF, the mean matches the integral, and the two closed-form
/// members come out right (uniform at s = 1, max of two uniforms at s = 1/2).
#[test]
fn v_mixer_law() {
    const N: usize = 1_000_000;
    for (si, s) in [0.5, 1.0, 2.0, 5.0].into_iter().enumerate() {
        let m = VMixer::new(s).unwrap();
        let lin = 2.0 - 1.0 / s;
        let quad = 1.0 - 1.0 / s;

        // Density endpoints and normalization, analytically.
        assert!((m.density(0.25) - (lin - 0.5 * quad)).abs() < 1e-12);
        let mass = lin - quad; // ∫₀¹ density
        assert!((mass - 1.0).abs() < 1e-12);
        let want_mean = lin / 2.0 - 2.0 * quad / 3.0;
        assert!((m.mean() - want_mean).abs() < 1e-12);

        let mut rng = stream_rng(0x7d5b_0001, si as u64);
        let mut draws: Vec<f64> = (0..N).map(|_| m.sample_v(&mut rng)).collect();
        assert!(draws.iter().all(|&v| (0.0..1.0).contains(&v)));

        let (mean, se) = support::mean_se(&draws);
        assert!(
            (mean - want_mean).abs() <= 4.0 * se,
            "E V at s = {s}: {mean} vs {want_mean}"
        );

        let dk = kolmogorov_vs_cdf(&mut draws, |x| lin * x - quad * x * x);
        assert!(dk <= 0.005, "V CDF mismatch at s = {s}: d_K = {dk}");
    }

    assert!(matches!(VMixer::new(0.3), Err(Error::Domain(_))));
}

#[test]
fn bias_transform_examples() {
    let p = Pmf::new(1, vec![0.5, 0.5]).unwrap();

    let sb = size_bias_pmf(&p).unwrap();
    assert!((sb.prob(1) - 1.0 / 3.0).abs() < 1e-14);
    assert!((sb.prob(2) - 2.0 / 3.0).abs() < 1e-14);

    let qb = square_bias_pmf(&p).unwrap();
    assert!((qb.prob(1) - 0.2).abs() < 1e-14);
    assert!((qb.prob(2) - 0.8).abs() < 1e-14);

    let point = Pmf::point_mass(3);
    assert_eq!(size_bias_pmf(&point).unwrap().prob(3), 1.0);

    let degenerate = Pmf::point_mass(0);
    assert!(matches!(size_bias_pmf(&degenerate), Err(Error::Domain(_))));
    assert!(matches!(square_bias_pmf(&degenerate), Err(Error::Domain(_))));
}

/// Random-pmf strategy: nonnegative support with some mass above zero.
fn arb_pmf() -> impl Strategy<Value = Pmf> {
    (0i64..3, proptest::collection::vec(0.01f64..1.0, 2..8)).prop_map(|(offset, raw)| {
        let total: f64 = raw.iter().sum();
        let probs: Vec<f64> = raw.iter().map(|w| w / total).collect();
        Pmf::new(offset.max(if offset == 0 { 0 } else { offset }), probs).unwrap()
    })
}

proptest! {
    /// Applying size bias twice is exactly the square bias.
    #[test]
    fn square_bias_is_size_bias_twice(p in arb_pmf()) {
        // Guard: double size bias needs positive mean and second moment;
        // offset ≥ 0 with ≥ 2 atoms of positive mass guarantees both.
        let twice = size_bias_pmf(&size_bias_pmf(&p).unwrap()).unwrap();
        let direct = square_bias_pmf(&p).unwrap();
        prop_assert!(twice.tv(&direct) <= 1e-12);
    }

    /// The defining identity E{W²·f(W)} = E W²·E f(W″) for a battery of test
    /// functions, exactly on finite support.
    #[test]
    fn square_bias_expectation_identity(p in arb_pmf()) {
        let m2 = p.moment(2);
        let q = square_bias_pmf(&p).unwrap();
        let battery: Vec<Box<dyn Fn(f64) -> f64>> = vec![
            Box::new(|x| x),
            Box::new(|x| x * x),
            Box::new(|x| f64::from(x <= 1.5)),
            Box::new(|x| f64::from(x <= 3.0)),
            Box::new(|x| (-x).exp()),
        ];
        for f in &battery {
            let lhs = p.expect(|w| w * w * f(w));
            let rhs = m2 * q.expect(f);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
        }
        // Mean of the square bias is the moment ratio E W³/E W².
        prop_assert!((q.mean() - p.moment(3) / m2).abs() <= 1e-12);
    }
}

/// V times the square bias of a unit point mass is uniform on (0,1) at s = 1.
#[test]
fn discrete_transform_of_point_mass() {
    const N: usize = 100_000;
    let p = Pmf::point_mass(1);
    let mut rng = stream_rng(0x7d5b_0002, 0);
    let mut draws: Vec<f64> = (0..N)
        .map(|_| tdsb_sample_discrete(&p, 1.0, &mut rng).unwrap())
        .collect();
    let dk = kolmogorov_vs_cdf(&mut draws, |x| x.clamp(0.0, 1.0));
    assert!(dk <= 0.01, "transform of point mass: d_K = {dk}");
}

/// The transform leaves the limit family fixed: V·Z″ has the same law as Z,
/// two-sample Kolmogorov ≤ 0.005 at 10^6 draws each, for s spanning the
/// family.
#[test]
fn limit_family_is_fixed_point() {
    const N: usize = 1_000_000;
    for (si, s) in [0.5, 1.0, 2.0, 5.0].into_iter().enumerate() {
        let d = KsDist::new(s).unwrap();
        let v = VMixer::new(s).unwrap();
        let mut rng = stream_rng(0x7d5b_0003, si as u64);
        let transformed: Vec<f64> = (0..N)
            .map(|_| v.sample_v(&mut rng) * d.sample_square_bias(&mut rng))
            .collect();
        let plain: Vec<f64> = (0..N).map(|_| d.sample(&mut rng)).collect();
        let dk = kolmogorov_two_sample(&transformed, &plain).unwrap();
        assert!(dk <= 0.005, "fixed point fails at s = {s}: d_K = {dk}");
    }
}

/// The exponential counterpart: U·W′ with W′ the size bias (sum of two unit
/// exponentials) returns Exp(1) exactly.
#[test]
fn exponential_size_bias_analog() {
    const N: usize = 1_000_000;
    let mut rng = stream_rng(0x7d5b_0004, 0);
    let exp = |rng: &mut rand_chacha::ChaCha12Rng| -(1.0 - rng.random::<f64>()).ln();
    let transformed: Vec<f64> = (0..N)
        .map(|_| rng.random::<f64>() * (exp(&mut rng) + exp(&mut rng)))
        .collect();
    let plain: Vec<f64> = (0..N).map(|_| exp(&mut rng)).collect();
    let dk = kolmogorov_two_sample(&transformed, &plain).unwrap();
    assert!(dk <= 0.005, "exponential analog: d_K = {dk}");
}

/// The indicator-sum recipe on a fully enumerable family: one constant
/// indicator plus two Bernoulli(1/2). The pair table, its total, and the
/// sampled law all match hand enumeration.
#[test]
fn indicator_recipe_fully_enumerated() {
    let fam = BernoulliIndicators { count: 2, p: 0.5 };
    let dsb = DoubleSizeBias::new(fam).unwrap();

    // W = 1 + B₁ + B₂: E W² = (1 + 4·2 + 9)/4 = 4.5.
    assert!((dsb.b2() - 4.5).abs() < 1e-14);

    // Unordered index-pair probabilities: diagonal E X_j², off-diagonal
    // 2·E(X_j X_k), all over E W².
    assert!((dsb.pair_prob(0, 0).unwrap() - 1.0 / 4.5).abs() < 1e-14);
    assert!((dsb.pair_prob(0, 1).unwrap() - 1.0 / 4.5).abs() < 1e-14);
    assert!((dsb.pair_prob(1, 1).unwrap() - 0.5 / 4.5).abs() < 1e-14);
    assert!((dsb.pair_prob(1, 2).unwrap() - 0.5 / 4.5).abs() < 1e-14);
    assert!((dsb.pair_prob(2, 1).unwrap() - dsb.pair_prob(1, 2).unwrap()).abs() < 1e-16);

    // Target law: square bias of {1: 1/4, 2: 1/2, 3: 1/4}.
    let w_law = Pmf::new(1, vec![0.25, 0.5, 0.25]).unwrap();
    let target = square_bias_pmf(&w_law).unwrap();
    assert!((target.prob(1) - 1.0 / 18.0).abs() < 1e-14);
    assert!((target.prob(2) - 8.0 / 18.0).abs() < 1e-14);
    assert!((target.prob(3) - 9.0 / 18.0).abs() < 1e-14);

    const N: usize = 200_000;
    let mut rng = stream_rng(0x7d5b_0005, 0);
    let mut counts = BTreeMap::new();
    for _ in 0..N {
        let w = dsb.sample(&mut rng).unwrap();
        *counts.entry(w as i64).or_insert(0u64) += 1;
    }
    let p = support::chi_square_pvalue(&counts, &target, N as u64);
    assert!(p > 0.01, "recipe law χ² p = {p}");
}

/// The same recipe over the attachment urn's indicators reproduces the square
/// bias of the exact white-count law.
#[test]
fn indicator_recipe_matches_urn_square_bias() {
    const N: usize = 100_000;
    let (i, n) = (1u64, 30u64);
    let dsb = DoubleSizeBias::new(UrnIndicators { i, n }).unwrap();
    assert!(
        ((dsb.b2() - second_moment_white(i, n)) / dsb.b2()).abs() < 1e-9,
        "pair-table total disagrees with E W²"
    );

    let target = square_bias_pmf(&UrnSpec::attachment(i).exact_pmf(n).unwrap()).unwrap();
    let mut rng = stream_rng(0x7d5b_0006, 0);
    let mut counts = BTreeMap::new();
    for _ in 0..N {
        let w = dsb.sample(&mut rng).unwrap();
        *counts.entry(w as i64).or_insert(0u64) += 1;
    }
    let empirical = support::counts_to_pmf(&counts, N as u64);
    let tv = empirical.tv(&target);
    assert!(tv <= 0.01, "urn recipe TV = {tv}");
}

/// Applying the transform to the exact scaled urn law moves it less and less
/// as n grows — the discrete law approaches the transform's fixed point.
#[test]
fn discrete_transform_contracts_along_urn_laws() {
    const N: usize = 100_000;
    let s = 1.0; // matches the i = 1 urn's limit index
    let mut dks = Vec::new();
    for (ni, n) in [16u64, 256].into_iter().enumerate() {
        let p = UrnSpec::attachment(1).exact_pmf(n).unwrap();
        let b = second_moment_white(1, n).sqrt();
        let mut rng = stream_rng(0x7d5b_0007, ni as u64);
        let transformed: Vec<f64> = (0..N)
            .map(|_| tdsb_sample_discrete(&p, s, &mut rng).unwrap() / b)
            .collect();
        let scaled: Vec<f64> = (0..N).map(|_| p.sample(&mut rng) as f64 / b).collect();
        dks.push(kolmogorov_two_sample(&transformed, &scaled).unwrap());
    }
    assert!(
        dks[1] < dks[0] && dks[1] <= 0.05,
        "transform distance did not shrink: {dks:?}"
    );
}
