//! How fast can R and W″ be made to agree? Coupling disagreement vs n.
//!
//! W_n is the attachment-urn white count, W″ its square bias, and R the
//! white count of the *same* urn run with 3 starting whites and n−1 draws.
//! The convergence-rate argument hinges on law(R) ≈ law(W″): any coupling's
//! disagreement probability P(R ≠ W″) upper-bounds nothing less than the
//! total-variation distance TV(law R, law W″), and TV itself decays like
//! 1/√n.
//!
//! Two couplings are compared:
//!
//! * maximal — achieves P(R ≠ W″) = TV exactly (built from the two exact
//!   DP laws), so its disagreement shows the true 1/√n decay;
//! * shared-uniform chain — runs both laws off one uniform stream; it is
//!   the coupling that also yields the pathwise bound |W − V·W″| < 3, but
//!   once the chains diverge they never re-merge, so its disagreement
//!   carries an extra log factor and decays visibly slower.
//!
//! The table prints exact TV (deterministic DP), the Monte Carlo
//! disagreement of both couplings, and log–log slope fits.
//!
//! Run with: `cargo run --release --example coupling_decay`

use kslaw::metric::rate_fit;
use kslaw::rng::parallel_replicates_from;
use kslaw::urn::{CoupledSampler, MaximalRw2};

const I: u64 = 1;
const NS: [u64; 4] = [64, 256, 1024, 4096];
const REPLICATES: usize = 30_000;
const SEED: u64 = 2024;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("attachment urn i = {I}, {REPLICATES} replicates per n\n");
    println!(
        "{:>6} {:>12} {:>14} {:>14}",
        "n", "exact TV", "maximal P(≠)", "chain P(≠)"
    );

    let mut tv_table = Vec::new();
    let mut maximal_table = Vec::new();
    let mut chain_table = Vec::new();
    for (idx, &n) in NS.iter().enumerate() {
        let maximal = MaximalRw2::new(I, n)?;
        let chain = CoupledSampler::new(I, n)?;
        let base = (2 * idx as u64) << 32;

        let neq_max: u64 = parallel_replicates_from(SEED, base, REPLICATES, |rng| {
            let (r, w2) = maximal.draw(rng);
            u64::from(r != w2)
        })
        .into_iter()
        .sum();
        let neq_chain: u64 =
            parallel_replicates_from(SEED, base + (1 << 32), REPLICATES, |rng| {
                let rw = chain.draw(rng);
                u64::from(rw.r != rw.w2)
            })
            .into_iter()
            .sum();

        let tv = maximal.tv();
        let p_max = neq_max as f64 / REPLICATES as f64;
        let p_chain = neq_chain as f64 / REPLICATES as f64;
        println!("{n:>6} {tv:>12.6} {p_max:>14.6} {p_chain:>14.6}");

        tv_table.push((n, tv));
        maximal_table.push((n, p_max));
        chain_table.push((n, p_chain));
    }

    let tv_fit = rate_fit(&tv_table)?;
    let max_fit = rate_fit(&maximal_table)?;
    let chain_fit = rate_fit(&chain_table)?;
    println!("\nlog–log slopes (−0.5 = the 1/√n rate)");
    println!("  exact TV:          {:>8.4}", tv_fit.slope);
    println!("  maximal coupling:  {:>8.4}", max_fit.slope);
    println!("  chain coupling:    {:>8.4}  (slower: log-factor overhead)", chain_fit.slope);

    assert!(
        (tv_fit.slope + 0.5).abs() < 0.1,
        "TV must decay at the square-root rate"
    );
    assert!(
        (max_fit.slope - tv_fit.slope).abs() < 0.1,
        "maximal coupling must track TV"
    );
    assert!(
        chain_fit.slope > tv_fit.slope + 0.1,
        "chain coupling is expected to decay strictly slower"
    );

    // Sanity: no coupling can beat TV.
    for ((&(_, tv), &(_, pm)), &(_, pc)) in
        tv_table.iter().zip(&maximal_table).zip(&chain_table)
    {
        let mc_band = 3.0 * (0.25 / REPLICATES as f64).sqrt();
        assert!(pm + mc_band >= tv, "maximal coupling dipped below the TV floor");
        assert!(pc + mc_band >= tv, "chain coupling dipped below the TV floor");
    }

    println!("\nall checks passed");
    Ok(())
}
