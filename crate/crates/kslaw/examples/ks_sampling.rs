//! Sample the K_s family and confirm the draws match the analytic law.
//!
//! Sampling goes through the quantile function (inverse CDF applied to a
//! uniform), so this doubles as an end-to-end test of density → survival →
//! quantile. Three empirical checks run at s = 2.5:
//!
//! 1. Kolmogorov distance between the empirical CDF of 200 000 draws and
//!    the exact CDF (should be ≈ 1/√replicates, far below 0.01).
//! 2. Sample moments r = 1..4 against the closed form
//!    E Z^r = (s/2)^{r/2} Γ(s) Γ(r+1) / Γ(r/2+s), each within 4 standard
//!    errors.
//! 3. The square-bias sampler: Z″ has density x²κ_s(x)/E Z², so
//!    E f(Z″) = E[Z² f(Z)] for any f; checked with f(x) = e^{−x}.
//!
//! Run with: `cargo run --example ks_sampling`

use kslaw::metric::kolmogorov_sample_vs_ks;
use kslaw::rng::parallel_replicates;
use kslaw::KsDist;

const S: f64 = 2.5;
const REPLICATES: usize = 200_000;
const SEED: u64 = 2025;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dist = KsDist::new(S)?;
    let draws: Vec<f64> = parallel_replicates(SEED, REPLICATES, |rng| dist.sample(rng));

    // 1. Empirical CDF vs exact CDF.
    let dk = kolmogorov_sample_vs_ks(&draws, &dist)?;
    println!("s = {S}, replicates = {REPLICATES}");
    println!("Kolmogorov distance (empirical vs exact): {dk:.6}");
    assert!(dk < 0.01, "sampler drifted from the analytic CDF");

    // 2. Sample moments vs Mellin closed form.
    println!("\n{:>3} {:>12} {:>12} {:>8}", "r", "sample", "exact", "z-score");
    for r in 1..=4 {
        let rf = r as f64;
        let sample_r: f64 = draws.iter().map(|x| x.powf(rf)).sum::<f64>() / draws.len() as f64;
        let exact = dist.moment(rf)?;
        // Var(Z^r) = E Z^{2r} − (E Z^r)²; standard error of the mean.
        let var = dist.moment(2.0 * rf)? - exact * exact;
        let se = (var / draws.len() as f64).sqrt();
        let z = (sample_r - exact) / se;
        println!("{r:>3} {sample_r:>12.6} {exact:>12.6} {z:>8.2}");
        assert!(z.abs() < 4.0, "moment r = {r} outside 4 standard errors");
    }

    // 3. Square-bias identity E f(Z″) = E[Z² f(Z)] with f(x) = e^{−x}.
    let biased: Vec<f64> = parallel_replicates(SEED + 1, REPLICATES, |rng| {
        dist.sample_square_bias(rng)
    });
    let lhs: f64 = biased.iter().map(|x| (-x).exp()).sum::<f64>() / biased.len() as f64;
    let rhs: f64 = draws.iter().map(|x| x * x * (-x).exp()).sum::<f64>() / draws.len() as f64;
    println!("\nsquare-bias identity with f(x) = e^(-x)");
    println!("  E f(Z\")      = {lhs:.6}");
    println!("  E[Z^2 f(Z)]  = {rhs:.6}");
    assert!((lhs - rhs).abs() < 0.01, "square-bias identity violated");

    println!("\nall checks passed");
    Ok(())
}
