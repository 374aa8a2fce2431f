//! Evaluate the limit-distribution family K_s across its index range.
//!
//! The family has density κ_s(x) ∝ e^{−x²/(2s)} U(s−1, 1/2, x²/(2s)) on
//! x ≥ 0, where U is the confluent hypergeometric function of the second
//! kind. Two members reduce to elementary laws and serve as live oracles:
//!
//! * s = 1/2:  κ(x) = 2x e^{−x²}            (Rayleigh with σ² = 1/2)
//! * s = 1:    κ(x) = √(2/π) e^{−x²/2}      (half-normal)
//!
//! This example prints a density/CDF/survival table for several s, checks
//! the two closed forms pointwise, round-trips quantile ∘ CDF, and compares
//! raw moments against the closed-form moment formula
//! E Z^r = (s/2)^{r/2} Γ(s) Γ(r+1) / Γ(r/2 + s), which gives E Z² = 1 for
//! every s (the family is normalized to unit second moment).
//!
//! Run with: `cargo run --example ks_table`

use kslaw::KsDist;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s_values = [0.5, 0.75, 1.0, 2.0, 5.0];
    let xs = [0.25, 0.5, 1.0, 1.5, 2.0, 3.0];

    println!("density κ_s(x)");
    print!("{:>6}", "x\\s");
    for s in s_values {
        print!("{s:>12}");
    }
    println!();
    for x in xs {
        print!("{x:>6.2}");
        for s in s_values {
            let d = KsDist::new(s)?;
            print!("{:>12.6}", d.density(x)?);
        }
        println!();
    }

    println!("\nsurvival P(Z > x)");
    for x in xs {
        print!("{x:>6.2}");
        for s in s_values {
            let d = KsDist::new(s)?;
            print!("{:>12.6}", d.survival(x)?);
        }
        println!();
    }

    // Closed-form checks at the two elementary members.
    println!("\nclosed-form members");
    let mut worst = 0.0_f64;
    for x in xs {
        let rayleigh = 2.0 * x * (-x * x).exp();
        let half_normal = (2.0 / std::f64::consts::PI).sqrt() * (-x * x / 2.0).exp();
        let d_half = KsDist::new(0.5)?.density(x)?;
        let d_one = KsDist::new(1.0)?.density(x)?;
        worst = worst.max((d_half - rayleigh).abs()).max((d_one - half_normal).abs());
    }
    println!("  max |κ − closed form| over grid: {worst:.3e}");
    assert!(worst < 1e-10, "closed-form members disagree");

    // Quantile/CDF round trip.
    println!("\nquantile round trip (s = 2)");
    let d = KsDist::new(2.0)?;
    for p in [0.01, 0.25, 0.5, 0.75, 0.99] {
        let q = d.quantile(p)?;
        let back = d.cdf(q)?;
        println!("  p = {p:>5.2}  quantile = {q:>9.6}  cdf(quantile) = {back:>9.6}");
        assert!((back - p).abs() < 1e-9);
    }

    // Moments against the Mellin closed form; E Z² = 1 identically.
    println!("\nraw moments E Z^r");
    print!("{:>6}", "r\\s");
    for s in s_values {
        print!("{s:>12}");
    }
    println!();
    for r in 1..=4 {
        print!("{r:>6}");
        for s in s_values {
            let m = KsDist::new(s)?.moment(r as f64)?;
            print!("{m:>12.6}");
            if r == 2 {
                assert!((m - 1.0).abs() < 1e-9, "second moment must be 1");
            }
        }
        println!();
    }

    println!("\nall checks passed");
    Ok(())
}
