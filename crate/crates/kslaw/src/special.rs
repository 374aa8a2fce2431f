//! Log-gamma and the confluent hypergeometric function of the second kind
//! (Kummer U), evaluated on the parameter family the K_s machinery needs.
//!
//! U(a,b,z) is computed from its Laplace-type integral representation
//!
//! ```text
//! U(a,b,z) = (1/Γ(a)) ∫₀^∞ e^{-zt} t^{a-1} (1+t)^{b-a-1} dt      (a > 0, z > 0)
//! ```
//!
//! split at t = 1. On (0,1] the substitution u = z·t turns the e^{-zt}
//! spike (width ~√a/z, arbitrarily narrow for large z) into the fixed-width
//! factor u^{a-1}e^{-u} peaked at u = a−1, so adaptive quadrature resolves
//! it for every z; a further power substitution u = v^{1/a} removes the
//! endpoint singularity when a < 1. On [1,∞) the map t = 1 + u/(1-u)
//! compresses the tail. Both pieces are integrated as exp(ln-integrand − m)
//! with m the log-integrand at an estimated peak, and recombined by
//! log-sum-exp: for jointly large (a, z) the pieces themselves leave the
//! f64 range (U(200, 1/2, 4000) ≈ e^{-1668}) while their logs do not.
//!
//! Parameters outside the directly integrable region are reached through two
//! exact identities:
//!
//! * a = 0: U(0,b,z) = 1;
//! * a < 0 with z > 0: U(a,b,z) = z^{1-b}·U(1+a-b, 2-b, z), accepted only when
//!   the transformed first parameter is ≥ 0 (this covers the K_s family for
//!   1/2 < s < 1, where a = s-1 ∈ (-1/2, 0));
//! * z = 0 with b < 1, a+1-b > 0: U(a,b,0) = Γ(1-b)/Γ(a+1-b).
//!
//! Everything else is rejected as unsupported rather than approximated.
//!
//! For very large first parameters (the s → ∞ limit checks use s = 200) the
//! value of U leaves the f64 range while its logarithm does not, so the
//! primary entry point is [`ln_kummer_u`]; [`kummer_u`] exponentiates it.

use crate::error::{Error, Result};
use crate::quad::{integrate, QuadratureConfig};

/// Natural log of Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "log_gamma requires a strictly positive argument, got {x}"
        )));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// Argument triple for U(a,b,z), with the reachability check for the
/// evaluation paths implemented here.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KummerArgs {
    pub a: f64,
    pub b: f64,
    pub z: f64,
}

impl KummerArgs {
    pub fn new(a: f64, b: f64, z: f64) -> Self {
        Self { a, b, z }
    }

    /// Errors unless (a,b,z) is reachable: a ≥ 0 with z > 0, the z = 0
    /// special value, or a < 0 reducible to a ≥ 0 via the z^{1-b} transform.
    pub fn check(&self) -> Result<()> {
        let Self { a, b, z } = *self;
        if !a.is_finite() || !b.is_finite() || !z.is_finite() {
            return Err(Error::Domain(format!(
                "kummer_u arguments must be finite, got ({a}, {b}, {z})"
            )));
        }
        if z < 0.0 {
            return Err(Error::Domain(format!(
                "kummer_u requires z ≥ 0, got z = {z}"
            )));
        }
        if z == 0.0 {
            if b < 1.0 && a + 1.0 - b > 0.0 {
                return Ok(());
            }
            return Err(Error::Unsupported(format!(
                "kummer_u at z = 0 needs b < 1 and a+1-b > 0; got (a={a}, b={b})"
            )));
        }
        if a >= 0.0 {
            return Ok(());
        }
        let a2 = 1.0 + a - b;
        if a2 >= 0.0 {
            return Ok(());
        }
        Err(Error::Unsupported(format!(
            "kummer_u parameter region (a={a}, b={b}, z={z}) is unreachable: \
             a < 0 and the transform 1+a-b = {a2} is still negative"
        )))
    }
}

/// ln U(a,b,z) on the supported family. See the module docs for the paths.
pub fn ln_kummer_u(a: f64, b: f64, z: f64, cfg: &QuadratureConfig) -> Result<f64> {
    KummerArgs::new(a, b, z).check()?;
    cfg.validate()?;

    if z == 0.0 {
        // U(a,b,0) = Γ(1-b)/Γ(a+1-b) for b < 1.
        return Ok(statrs::function::gamma::ln_gamma(1.0 - b)
            - statrs::function::gamma::ln_gamma(a + 1.0 - b));
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    if a < 0.0 {
        let a2 = 1.0 + a - b;
        let b2 = 2.0 - b;
        let rest = if a2 == 0.0 {
            0.0
        } else {
            ln_kummer_u(a2, b2, z, cfg)?
        };
        return Ok((1.0 - b) * z.ln() + rest);
    }

    let ln_integral = laplace_integral_ln(a, b, z, cfg)?;
    if !ln_integral.is_finite() {
        return Err(Error::Inconsistent(format!(
            "kummer_u integral for (a={a}, b={b}, z={z}) evaluated to exp({ln_integral})"
        )));
    }
    Ok(ln_integral - statrs::function::gamma::ln_gamma(a))
}

/// U(a,b,z). Callers probing the extreme-s regime should prefer
/// [`ln_kummer_u`]; this exponentiated form can underflow there.
pub fn kummer_u(a: f64, b: f64, z: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(ln_kummer_u(a, b, z, cfg)?.exp())
}

/// U′(a,b,z) = −a·U(a+1, b+1, z) (derivative in z).
pub fn kummer_u_deriv(a: f64, b: f64, z: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if a == 0.0 {
        return Ok(0.0);
    }
    Ok(-a * kummer_u(a + 1.0, b + 1.0, z, cfg)?)
}

/// c·l with the convention 0·(±∞) = 0, for exponent assembly.
fn xlog(c: f64, l: f64) -> f64 {
    if c == 0.0 {
        0.0
    } else {
        c * l
    }
}

/// ln(a + b) from ln a and ln b, tolerating −∞ pieces.
fn ln_sum_exp(la: f64, lb: f64) -> f64 {
    let (hi, lo) = if la >= lb { (la, lb) } else { (lb, la) };
    if hi == f64::NEG_INFINITY {
        f64::NEG_INFINITY
    } else {
        hi + (lo - hi).exp().ln_1p()
    }
}

/// ln ∫₀^∞ e^{-zt} t^{a-1} (1+t)^{b-a-1} dt for a > 0, z > 0.
fn laplace_integral_ln(a: f64, b: f64, z: f64, cfg: &QuadratureConfig) -> Result<f64> {
    // In u = z·t coordinates the head factor u^{a-1}e^{-u} peaks at a−1
    // and is spent beyond u_cut (relative remainder < e^{-80}); never
    // integrate past that.
    let u_cut = a.max(1.0) + 30.0 * a.max(1.0).sqrt() + 80.0;
    let u_hi = z.min(u_cut);

    // Head (0,1] in t, i.e. (0, u_hi] in u (u_hi < z means the rest of the
    // head is negligible by choice of u_cut).
    let ln_head = if a < 1.0 {
        // Power substitution u = v^{1/a} absorbs the endpoint singularity:
        // t^{a-1} dt = dv/(a z^a). The remaining integrand is ≤ 2^{b-a-1}.
        let inv_a = 1.0 / a;
        let head = integrate(
            |v| {
                let u = v.powf(inv_a);
                (xlog(b - a - 1.0, (u / z).ln_1p()) - u).exp()
            },
            0.0,
            u_hi.powf(a),
            cfg,
        )?;
        if head > 0.0 {
            head.ln() - a * z.ln() - a.ln()
        } else {
            f64::NEG_INFINITY
        }
    } else {
        let ln_f =
            |u: f64| xlog(a - 1.0, (u / z).ln()) + xlog(b - a - 1.0, (u / z).ln_1p()) - u;
        // Normalize by the log-integrand near its peak so the scaled
        // integrand is O(1) no matter how huge the exponents are.
        let m = if a > 1.0 {
            ln_f((a - 1.0).min(u_hi)).max(ln_f(u_hi))
        } else {
            0.0 // a = 1: ln_f(u) = (b-2)·ln1p(u/z) − u ≤ ln_f(0) = 0.
        };
        let head = integrate(|u| (ln_f(u) - m).exp(), 0.0, u_hi, cfg)?;
        if head > 0.0 {
            m + head.ln() - z.ln()
        } else {
            f64::NEG_INFINITY
        }
    };

    // Tail [1,∞): t = 1 + u/(1-u). Group the powers as (t/(1+t))^{a-1} ·
    // (1+t)^{b-2} so each log stays moderate, and write ln(t/(1+t)) as
    // -ln1p(1/t) for precision at large t.
    let ln_g = |t: f64| -xlog(a - 1.0, (1.0 / t).ln_1p()) + xlog(b - 2.0, t.ln_1p()) - z * t;
    // Peak candidates: the boundary t = 1 and the interior stationary
    // points of each log term against −z·t ((a−1)/t² ≈ z from the first,
    // (b−2)/t ≈ z from the second when b > 2).
    let mut m_t = ln_g(1.0);
    if a > 1.0 {
        m_t = m_t.max(ln_g(1.0_f64.max(((a - 1.0) / z).sqrt())));
    }
    if b > 2.0 {
        m_t = m_t.max(ln_g(1.0_f64.max((b - 2.0) / z)));
    }
    let tail = integrate(
        |u| {
            let w = 1.0 - u;
            let t = 1.0 + u / w;
            let f = (ln_g(t) - m_t).exp();
            if f == 0.0 {
                0.0
            } else {
                f / (w * w)
            }
        },
        0.0,
        1.0,
        cfg,
    )?;
    let ln_tail = if tail > 0.0 {
        m_t + tail.ln()
    } else {
        f64::NEG_INFINITY
    };

    Ok(ln_sum_exp(ln_head, ln_tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn log_gamma_known_values() {
        assert_relative_eq!(log_gamma(1.0).unwrap(), 0.0, epsilon = 1e-14);
        assert_relative_eq!(
            log_gamma(0.5).unwrap(),
            std::f64::consts::PI.sqrt().ln(),
            max_relative = 1e-13
        );
        assert_relative_eq!(log_gamma(5.0).unwrap(), 24.0_f64.ln(), max_relative = 1e-13);
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-2.5).is_err());
    }

    #[test]
    fn kummer_u_exact_points() {
        // U(0,b,z) = 1 for any b, z.
        assert_relative_eq!(kummer_u(0.0, 0.5, 3.7, &cfg()).unwrap(), 1.0, epsilon = 1e-14);
        // U(-1/2, 1/2, z²) = z at z = 2.
        assert_relative_eq!(kummer_u(-0.5, 0.5, 4.0, &cfg()).unwrap(), 2.0, max_relative = 1e-12);
        // U(a, b, 0) = Γ(1-b)/Γ(a+1-b); (1, 1/2) gives √π/(√π/2) = 2.
        assert_relative_eq!(kummer_u(1.0, 0.5, 0.0, &cfg()).unwrap(), 2.0, max_relative = 1e-13);
        // (1, -1/2) gives Γ(3/2)/Γ(5/2) = 2/3.
        assert_relative_eq!(
            kummer_u(1.0, -0.5, 0.0, &cfg()).unwrap(),
            2.0 / 3.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn closed_form_u_half_half() {
        // U(1/2, 1/2, z) = √π e^z erfc(√z) — an independent closed form.
        for &z in &[0.1_f64, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let expected = std::f64::consts::PI.sqrt()
                * z.exp()
                * statrs::function::erf::erfc(z.sqrt());
            let got = kummer_u(0.5, 0.5, z, &cfg()).unwrap();
            assert_relative_eq!(got, expected, max_relative = 1e-10);
        }
    }

    #[test]
    fn unreachable_regions_rejected() {
        // z < 0.
        assert!(kummer_u(1.0, 0.5, -1.0, &cfg()).is_err());
        // z = 0 with b ≥ 1 is out of scope.
        assert!(kummer_u(1.0, 1.5, 0.0, &cfg()).is_err());
        // a < 0 with a transform that stays negative.
        assert!(kummer_u(-2.0, 0.5, 1.0, &cfg()).is_err());
    }

    #[test]
    fn deriv_matches_identity() {
        // U′ = -a U(a+1, b+1, z); a = 0 gives zero.
        assert_eq!(kummer_u_deriv(0.0, 0.5, 2.0, &cfg()).unwrap(), 0.0);
        let d = kummer_u_deriv(1.0, 0.5, 1.0, &cfg()).unwrap();
        let u = kummer_u(2.0, 1.5, 1.0, &cfg()).unwrap();
        assert_relative_eq!(d, -u, max_relative = 1e-12);
    }
}
