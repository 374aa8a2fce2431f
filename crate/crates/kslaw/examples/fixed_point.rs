//! The distributional transform whose unique fixed point is K_s.
//!
//! For a nonnegative W with E W² = 1, the transform is W* = V·W″, where
//! W″ is the square bias of W (reweight the law by w²) and V is an
//! independent mixer: V = max(U₁,U₂) with probability 1/(2s), otherwise
//! min(U₁,U₂). The map law(W) ↦ law(W*) has exactly one fixed point — the
//! K_s member — and distributions nearly fixed by it are near K_s.
//!
//! Three demonstrations:
//!
//! 1. Fixed point: draw Z ~ K_s and Z* = V·Z″; a two-sample Kolmogorov
//!    distance at 10⁵ replicates cannot tell them apart.
//! 2. Not-fixed input: feed Exp(1)/√2 (unit second moment) through the
//!    same transform; the output visibly differs from the input.
//! 3. Indicator sums: for W = Σ X_j with X_j ∈ {0,1}, the square bias has
//!    an explicit recipe — pick indices (J,K) ∝ E(X_J X_K), condition both
//!    on. For the attachment urn this recipe must reproduce the directly
//!    square-biased DP law; checked in total variation.
//!
//! Run with: `cargo run --example fixed_point`

use kslaw::metric::kolmogorov_two_sample;
use kslaw::pmf::Pmf;
use kslaw::rng::parallel_replicates;
use kslaw::transform::{square_bias_pmf, DoubleSizeBias, UrnIndicators, VMixer};
use kslaw::{KsDist, UrnSpec};
use rand::Rng;

const SEED: u64 = 404;
const REPLICATES: usize = 100_000;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // 1. K_s is fixed: Z and V·Z″ are equal in law.
    println!("fixed-point property of W* = V·W\"");
    println!("{:>6} {:>14} {:>10}", "s", "two-sample d_K", "verdict");
    for s in [0.5, 1.0, 2.0] {
        let dist = KsDist::new(s)?;
        let mixer = VMixer::new(s)?;
        let direct: Vec<f64> = parallel_replicates(SEED, REPLICATES, |rng| dist.sample(rng));
        let transformed: Vec<f64> = parallel_replicates(SEED + 1, REPLICATES, |rng| {
            mixer.sample_v(rng) * dist.sample_square_bias(rng)
        });
        let dk = kolmogorov_two_sample(&direct, &transformed)?;
        let ok = dk < 0.01;
        println!("{s:>6} {dk:>14.5} {:>10}", if ok { "fixed" } else { "MOVED" });
        assert!(ok, "K_s must be fixed by its own transform");
    }

    // 2. A non-member moves: Exp(1)/√2 has E W² = 1 but is not K_s.
    let mixer = VMixer::new(1.0)?;
    let exp = |rng: &mut rand_chacha::ChaCha12Rng| -> f64 {
        // 1 − U ∈ (0, 1] keeps the logarithm finite.
        -(1.0 - rng.random::<f64>()).ln()
    };
    let exp_draws: Vec<f64> =
        parallel_replicates(SEED + 2, REPLICATES, |rng| exp(rng) / 2.0_f64.sqrt());
    // Square bias of Exp(rate λ) is Gamma(3, λ): sum of three exponentials.
    let transformed: Vec<f64> = parallel_replicates(SEED + 3, REPLICATES, |rng| {
        let g = exp(rng) + exp(rng) + exp(rng);
        mixer.sample_v(rng) * g / 2.0_f64.sqrt()
    });
    let dk_moved = kolmogorov_two_sample(&exp_draws, &transformed)?;
    println!("\nexponential input: two-sample d_K(W, W*) = {dk_moved:.4} (should be ≫ 0)");
    assert!(dk_moved > 0.05, "the transform must move a non-member");

    // 3. Explicit indicator-sum recipe vs direct square bias (urn case).
    let (i, n) = (1u64, 25u64);
    let base = UrnSpec::attachment(i).exact_pmf(n)?;
    let direct_sqb = square_bias_pmf(&base)?;
    let dsb = DoubleSizeBias::new(UrnIndicators { i, n })?;
    println!("\nindicator-sum square bias, attachment urn (i = {i}, n = {n})");
    println!("  E W² from index-pair table: {:.8}", dsb.b2());
    println!("  E W² from DP law:           {:.8}", base.moment(2));
    assert!((dsb.b2() - base.moment(2)).abs() < 1e-8);

    let recipe_draws: Vec<f64> = parallel_replicates(SEED + 4, REPLICATES, |rng| {
        dsb.sample(rng).expect("conditioned urn simulation")
    });
    let lo = recipe_draws.iter().cloned().fold(f64::INFINITY, f64::min) as i64;
    let hi = recipe_draws.iter().cloned().fold(f64::NEG_INFINITY, f64::max) as i64;
    let mut mass = vec![0.0_f64; (hi - lo + 1) as usize];
    for &d in &recipe_draws {
        mass[(d as i64 - lo) as usize] += 1.0 / REPLICATES as f64;
    }
    let empirical = Pmf::new(lo, mass)?;
    let tv = direct_sqb.tv(&empirical);
    println!("  TV(recipe draws, direct square-bias law) = {tv:.5}");
    assert!(tv < 0.01, "the indicator recipe must match direct square bias");

    println!("\nall checks passed");
    Ok(())
}
