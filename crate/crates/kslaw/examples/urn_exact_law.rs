//! Exact white-count law of a generalized Pólya urn by dynamic programming.
//!
//! The urn starts with `i` black and 1 white ball. Each draw is uniform
//! over the current contents; drawing black adds 2 black, drawing white
//! adds 1 black and 1 white (replacement matrix (2,0;1,1), total count
//! grows by 2 per draw). The white count after n draws, W_n, is the number
//! of "successes" of a preferential-attachment degree evolution.
//!
//! The balanced scheme makes the state space one-dimensional — black count
//! is determined by white count and time — so the full law is an O(n²) DP.
//! The example prints the exact pmf at (i = 1, n = 30), verifies the
//! closed-form moments
//!
//!   E W_n  = Γ((i+1)/2) Γ(n + i/2 + 1) / (Γ(i/2 + 1) Γ(n + (i+1)/2)),
//!   E W_n² = 2(i + 2n + 1)/(i + 1) − E W_n,
//!
//! and cross-checks 50 000 simulated urns against the DP law in total
//! variation.
//!
//! Run with: `cargo run --example urn_exact_law`

use kslaw::pmf::Pmf;
use kslaw::rng::parallel_replicates;
use kslaw::urn::{mean_white, second_moment_white};
use kslaw::UrnSpec;

const I: u64 = 1;
const N: u64 = 30;
const REPLICATES: usize = 50_000;
const SEED: u64 = 11;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let urn = UrnSpec::attachment(I);
    let law = urn.exact_pmf(N)?;

    println!("attachment urn (2,0;1,1), i = {I}, n = {N} draws");
    println!("{:>6} {:>12}", "W", "P(W_n = W)");
    for (v, p) in law.support().filter(|&(_, p)| p > 1e-4) {
        println!("{v:>6} {p:>12.6}");
    }

    // Closed-form moments vs the DP law.
    let dp_mean = law.mean();
    let dp_second = law.moment(2);
    let cf_mean = mean_white(I, N);
    let cf_second = second_moment_white(I, N);
    println!("\nmoments        {:>12} {:>12}", "DP", "closed form");
    println!("mean           {dp_mean:>12.8} {cf_mean:>12.8}");
    println!("second moment  {dp_second:>12.8} {cf_second:>12.8}");
    assert!((dp_mean - cf_mean).abs() < 1e-8);
    assert!((dp_second - cf_second).abs() < 1e-7);

    // Monte Carlo cross-check: histogram of simulated urns vs DP law.
    let draws: Vec<u64> = parallel_replicates(SEED, REPLICATES, |rng| urn.simulate(N, rng));
    let lo = *draws.iter().min().expect("nonempty") as i64;
    let hi = *draws.iter().max().expect("nonempty") as i64;
    let mut counts = vec![0.0_f64; (hi - lo + 1) as usize];
    for &d in &draws {
        counts[(d as i64 - lo) as usize] += 1.0 / REPLICATES as f64;
    }
    let empirical = Pmf::new(lo, counts)?;
    let tv = law.tv(&empirical);
    println!("\nTV(DP law, {REPLICATES}-replicate histogram) = {tv:.5}");
    assert!(tv < 0.02, "simulation drifted from the exact law");

    // A second scheme: the classic Pólya urn (1,0;0,1) stays exactly
    // enumerable too; its white fraction is uniform when starting 1-1.
    let classic = UrnSpec::classic_polya(1, 1);
    let claw = classic.exact_pmf(10)?;
    println!("\nclassic Pólya (1,0;0,1) from 1 black / 1 white, n = 10:");
    let probs: Vec<f64> = claw.support().map(|(_, p)| p).collect();
    println!("  pmf = {probs:.3?}  (uniform over 1..=11)");
    for p in &probs {
        assert!((p - 1.0 / 11.0).abs() < 1e-12, "classic Pólya law must be uniform");
    }

    println!("\nall checks passed");
    Ok(())
}
