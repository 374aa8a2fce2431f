//! Evaluating the confluent hypergeometric function U(a, b, z) in log form.
//!
//! Everything in the distribution family reduces to U with b ∈ {−1/2, 1/2,
//! 3/2} and a moving with the family index, so the crate carries its own
//! evaluator built on the Laplace integral
//!
//!   U(a, b, z) = 1/Γ(a) ∫₀^∞ t^{a−1} (1+t)^{b−a−1} e^{−zt} dt   (a > 0),
//!
//! computed in log space so that z in the thousands (far tails) and a in
//! the hundreds (large s) stay finite. a ≤ 0 is reached by the recurrence
//! U(a−1,b,z) = (z + 2a − b)·U(a,b,z) − a(1 + a − b)·U(a+1,b,z).
//!
//! This example exercises the identities a numerical evaluator must obey:
//!
//! * U(0, b, z) = 1 exactly;
//! * U(a, b, 0) = Γ(1−b) / Γ(a+1−b) for b < 1;
//! * the three-term recurrence at interior points;
//! * the derivative relation d/dz U(a,b,z) = −a·U(a+1, b+1, z);
//! * U(a, b, z) ~ z^{−a} as z → ∞.
//!
//! Run with: `cargo run --example kummer_u`

use kslaw::special::{kummer_u, kummer_u_deriv, ln_kummer_u, log_gamma};
use kslaw::QuadratureConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = QuadratureConfig::default();

    println!("value table U(a, 1/2, z)");
    print!("{:>8}", "z\\a");
    let a_values = [0.5, 1.0, 2.5, 9.0];
    for a in a_values {
        print!("{a:>14}");
    }
    println!();
    for z in [0.1, 1.0, 10.0] {
        print!("{z:>8.1}");
        for a in a_values {
            print!("{:>14.6e}", kummer_u(a, 0.5, z, &cfg)?);
        }
        println!();
    }

    // U(0, b, z) = 1 for any b, z.
    let at_zero = kummer_u(0.0, 0.5, 3.7, &cfg)?;
    println!("\nU(0, 1/2, 3.7) = {at_zero} (exactly 1)");
    assert_eq!(at_zero, 1.0);

    // Boundary value U(a, b, 0) = Γ(1−b)/Γ(a+1−b), b < 1.
    let mut worst = 0.0_f64;
    for (a, b) in [(1.5, 0.5), (3.0, 0.5), (2.0, -0.5)] {
        let lhs = ln_kummer_u(a, b, 0.0, &cfg)?;
        let rhs = log_gamma(1.0 - b)? - log_gamma(a + 1.0 - b)?;
        worst = worst.max((lhs - rhs).abs());
    }
    println!("boundary identity max |ln U(a,b,0) − ln Γ(1−b)/Γ(a+1−b)| = {worst:.3e}");
    assert!(worst < 1e-10);

    // Three-term recurrence in a (relative residual).
    println!("\nrecurrence residuals U(a−1) − (z+2a−b)U(a) + a(1+a−b)U(a+1)");
    let mut worst_rec = 0.0_f64;
    for a in [0.75, 1.5, 4.0] {
        for z in [0.2, 2.0, 25.0] {
            let b = 0.5;
            let um = kummer_u(a - 1.0, b, z, &cfg)?;
            let u0 = kummer_u(a, b, z, &cfg)?;
            let up = kummer_u(a + 1.0, b, z, &cfg)?;
            let res = (um - (z + 2.0 * a - b) * u0 + a * (1.0 + a - b) * up).abs() / um.abs();
            worst_rec = worst_rec.max(res);
        }
    }
    println!("  max relative residual: {worst_rec:.3e}");
    assert!(worst_rec < 1e-8);

    // Derivative relation against a central difference.
    let (a, b, z) = (2.5, 0.5, 1.5);
    let analytic = kummer_u_deriv(a, b, z, &cfg)?;
    let h = 1e-5;
    let numeric = (kummer_u(a, b, z + h, &cfg)? - kummer_u(a, b, z - h, &cfg)?) / (2.0 * h);
    println!("\nd/dz U({a},{b},{z}): analytic {analytic:.10}, central diff {numeric:.10}");
    assert!((analytic - numeric).abs() < 1e-6);

    // Large-z asymptotics: ln U ≈ −a ln z.
    let z_big = 1.0e4;
    let lnu = ln_kummer_u(3.0, 0.5, z_big, &cfg)?;
    let asym = -3.0 * z_big.ln();
    println!("ln U(3, 1/2, 1e4) = {lnu:.6} vs −a·ln z = {asym:.6}");
    assert!((lnu - asym).abs() / asym.abs() < 0.05);

    // Log form keeps extreme regimes finite where the plain value cannot.
    let extreme = ln_kummer_u(200.0, 0.5, 4.0e3, &cfg)?;
    println!("ln U(200, 1/2, 4000) = {extreme:.4} (plain value would underflow)");
    assert!(extreme.is_finite());

    println!("\nall checks passed");
    Ok(())
}
