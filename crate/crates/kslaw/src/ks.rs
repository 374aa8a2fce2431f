//! The K_s distribution family.
//!
//! For s ≥ 1/2, K_s is the law on [0,∞) with density
//!
//! ```text
//! κ_s(x) = Γ(s) √(2/(sπ)) · e^{-x²/(2s)} · U(s-1, 1/2, x²/(2s))
//! ```
//!
//! where U is the Kummer U function. Special members: K_{1/2} is the square
//! root of a unit exponential (density 2x·e^{-x²}), K_1 is the absolute value
//! of a standard normal, and K_s converges to Exp(√2) as s → ∞. All members
//! are normalized so that E Z² = 1.
//!
//! The survival function has the closed form
//! `Γ(s)/√π · e^{-x²/(2s)} · U(s-1/2, 1/2, x²/(2s))`, and the Mellin
//! transform is `E Z^r = (s/2)^{r/2} Γ(s) Γ(r+1) / Γ(r/2+s)` for r > -1.
//! Exact samplers come from the product representation Z = √(2s·X·Y) with
//! independent beta and gamma/exponential factors; the square-bias sampler
//! (density x²κ_s(x)) size-biases each factor of the same product.
//!
//! Internally everything is assembled in log space: for large s both Γ(s)
//! and U(·) individually overflow f64 while the density and survival values
//! stay moderate.

use rand::Rng;
use rand_distr::{Beta, Distribution, Exp1, Gamma};
use statrs::function::erf::erfc;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::quad::QuadratureConfig;
use crate::special::ln_kummer_u;

const LN_PI: f64 = 1.144_729_885_849_400_2; // ln π

/// Factor samplers behind Z = √(2s·X·Y); which pair applies depends on s.
#[derive(Clone, Debug)]
enum ProductSampler {
    /// √Y with Y ~ Exp(1)  (the s = 1/2 base case).
    SqrtExp,
    /// √Y with Y ~ Gamma(2,1)  (the s = 1/2 square-bias case).
    SqrtGamma(Gamma<f64>),
    /// √(2s·X·Y) with X ~ Beta, Y ~ Exp(1)  (1/2 < s ≤ 1).
    BetaExp(Beta<f64>),
    /// √(2s·X·Y) with X ~ Beta, Y ~ Gamma  (s > 1, and all square-bias cases).
    BetaGamma(Beta<f64>, Gamma<f64>),
}

impl ProductSampler {
    fn draw<R: Rng + ?Sized>(&self, two_s: f64, rng: &mut R) -> f64 {
        match self {
            ProductSampler::SqrtExp => {
                let y: f64 = Exp1.sample(rng);
                y.sqrt()
            }
            ProductSampler::SqrtGamma(g) => g.sample(rng).sqrt(),
            ProductSampler::BetaExp(b) => {
                let x = b.sample(rng);
                let y: f64 = Exp1.sample(rng);
                (two_s * x * y).sqrt()
            }
            ProductSampler::BetaGamma(b, g) => {
                let x = b.sample(rng);
                let y = g.sample(rng);
                (two_s * x * y).sqrt()
            }
        }
    }
}

/// The distribution K_s with cached constants and samplers.
#[derive(Clone, Debug)]
pub struct KsDist {
    s: f64,
    /// ln Γ(s).
    ln_gamma_s: f64,
    /// ln C_s where C_s = Γ(s)·√(2/(sπ)) is the density prefactor.
    ln_c: f64,
    base: ProductSampler,
    biased: ProductSampler,
    cfg: QuadratureConfig,
}

impl KsDist {
    /// Build K_s; requires s ≥ 1/2.
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() || s < 0.5 {
            return Err(Error::Domain(format!(
                "KsDist requires s ≥ 1/2, got {s}"
            )));
        }
        let ln_gamma_s = ln_gamma(s);
        let ln_c = ln_gamma_s + 0.5 * ((2.0 / s).ln() - LN_PI);

        // Base sampler (Prop.-1 style product) and its factor-wise square
        // bias. The beta/gamma constructors only fail on non-positive shape
        // parameters, which the s-ranges below rule out.
        let dist_err = |what: &str| Error::Domain(format!("cannot build {what} sampler for s = {s}"));
        let (base, biased) = if s == 0.5 {
            (
                ProductSampler::SqrtExp,
                ProductSampler::SqrtGamma(Gamma::new(2.0, 1.0).map_err(|_| dist_err("gamma"))?),
            )
        } else if s <= 1.0 {
            (
                ProductSampler::BetaExp(Beta::new(0.5, s - 0.5).map_err(|_| dist_err("beta"))?),
                ProductSampler::BetaGamma(
                    Beta::new(1.5, s - 0.5).map_err(|_| dist_err("beta"))?,
                    Gamma::new(2.0, 1.0).map_err(|_| dist_err("gamma"))?,
                ),
            )
        } else {
            (
                ProductSampler::BetaGamma(
                    Beta::new(1.0, s - 1.0).map_err(|_| dist_err("beta"))?,
                    Gamma::new(0.5, 1.0).map_err(|_| dist_err("gamma"))?,
                ),
                ProductSampler::BetaGamma(
                    Beta::new(2.0, s - 1.0).map_err(|_| dist_err("beta"))?,
                    Gamma::new(1.5, 1.0).map_err(|_| dist_err("gamma"))?,
                ),
            )
        };

        Ok(Self {
            s,
            ln_gamma_s,
            ln_c,
            base,
            biased,
            cfg: QuadratureConfig::default(),
        })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// The Kummer argument z = x²/(2s).
    fn z(&self, x: f64) -> f64 {
        x * x / (2.0 * self.s)
    }

    fn require_nonneg(&self, x: f64, what: &str) -> Result<()> {
        if !(x >= 0.0) {
            return Err(Error::Domain(format!("{what} requires x ≥ 0, got {x}")));
        }
        Ok(())
    }

    /// ln κ_s(x) for x ≥ 0 (−∞ where the density vanishes).
    pub(crate) fn ln_density(&self, x: f64) -> Result<f64> {
        self.require_nonneg(x, "density")?;
        if self.s == 0.5 {
            // κ = 2x e^{-x²}
            return Ok(if x == 0.0 {
                f64::NEG_INFINITY
            } else {
                (2.0 * x).ln() - x * x
            });
        }
        if self.s == 1.0 {
            return Ok(0.5 * (2.0_f64.ln() - LN_PI) - 0.5 * x * x);
        }
        let z = self.z(x);
        Ok(self.ln_c - z + ln_kummer_u(self.s - 1.0, 0.5, z, &self.cfg)?)
    }

    /// Density κ_s(x).
    pub fn density(&self, x: f64) -> Result<f64> {
        Ok(self.ln_density(x)?.exp())
    }

    /// ln of the survival function P(Z > x).
    pub(crate) fn ln_survival(&self, x: f64) -> Result<f64> {
        self.require_nonneg(x, "survival")?;
        if self.s == 0.5 {
            return Ok(-x * x);
        }
        if self.s == 1.0 {
            return Ok(erfc(x / std::f64::consts::SQRT_2).ln());
        }
        let z = self.z(x);
        let ln_s = self.ln_gamma_s - 0.5 * LN_PI - z
            + ln_kummer_u(self.s - 0.5, 0.5, z, &self.cfg)?;
        Ok(ln_s.min(0.0))
    }

    /// Survival function P(Z > x) ∈ [0, 1], strictly decreasing in x.
    pub fn survival(&self, x: f64) -> Result<f64> {
        Ok(self.ln_survival(x)?.exp())
    }

    /// CDF P(Z ≤ x) = 1 − survival(x).
    pub fn cdf(&self, x: f64) -> Result<f64> {
        Ok(1.0 - self.survival(x)?)
    }

    /// Quantile by bracketed bisection: returns x with |cdf(x) − p| ≤ 1e-10.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!(
                "quantile requires p ∈ (0,1), got {p}"
            )));
        }
        let mut hi = 1.0;
        let mut doublings = 0;
        while self.cdf(hi)? < p {
            hi *= 2.0;
            doublings += 1;
            if doublings > 200 {
                return Err(Error::Inconsistent(format!(
                    "quantile bracket did not close for p = {p}"
                )));
            }
        }
        let mut lo = 0.0;
        let mut mid = 0.5 * hi;
        for _ in 0..200 {
            mid = 0.5 * (lo + hi);
            let c = self.cdf(mid)?;
            if (c - p).abs() <= 1e-11 || (hi - lo) < 1e-14 * (1.0 + mid) {
                return Ok(mid);
            }
            if c < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(mid)
    }

    /// E Z^r = (s/2)^{r/2} Γ(s) Γ(r+1) / Γ(r/2 + s), for r > −1.
    pub fn moment(&self, r: f64) -> Result<f64> {
        if !(r > -1.0) {
            return Err(Error::Domain(format!(
                "moment requires r > -1, got {r}"
            )));
        }
        let s = self.s;
        Ok((0.5 * r * (s.ln() - std::f64::consts::LN_2) + self.ln_gamma_s
            + ln_gamma(r + 1.0)
            - ln_gamma(0.5 * r + s))
            .exp())
    }

    /// Draw Z ~ K_s.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.base.draw(2.0 * self.s, rng)
    }

    /// Draw Z″ with the square-bias density x²·κ_s(x) (E Z² = 1 normalizer).
    pub fn sample_square_bias<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.biased.draw(2.0 * self.s, rng)
    }

    /// Mills ratio survival(x)/density(x); the min{√(π/2), s/x} bound backing
    /// it is only proven for s ≥ 1, so smaller s is rejected.
    pub fn mills_ratio(&self, x: f64) -> Result<f64> {
        if self.s < 1.0 {
            return Err(Error::Unsupported(format!(
                "mills_ratio bound applies for s ≥ 1 only, got s = {}",
                self.s
            )));
        }
        if !(x > 0.0) {
            return Err(Error::Domain(format!(
                "mills_ratio requires x > 0, got {x}"
            )));
        }
        Ok((self.ln_survival(x)? - self.ln_density(x)?).exp())
    }

    /// ln V_s(x) where V_s(x) = U(s-1, 1/2, x²/(2s)) (Stein-solver kernel).
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn ln_v(&self, x: f64) -> Result<f64> {
        ln_kummer_u(self.s - 1.0, 0.5, self.z(x), &self.cfg)
    }

    /// ln κ_s(x) assembled from a precomputed ln V_s(x): the density is
    /// exp(ln c − z + ln V) for every s ≥ 1/2 (both closed-form members
    /// included), so grid sweeps can reuse one Kummer evaluation per point.
    pub(crate) fn ln_density_from_ln_v(&self, x: f64, ln_v: f64) -> f64 {
        self.ln_c - self.z(x) + ln_v
    }

    /// Quadrature settings this distribution was built with.
    pub(crate) fn quad_cfg(&self) -> &crate::quad::QuadratureConfig {
        &self.cfg
    }

    /// Partial first moment T₁(x) = ∫ₓ^∞ y·κ_s(y) dy
    ///                          = √(2s/π)·Γ(s)·e^{-z}·U(s-1, -1/2, z).
    ///
    /// (Antiderivative from d/dz[e^{-z}U(a,b,z)] = -e^{-z}U(a,b+1,z) with
    /// y·dy = s·dz.) Used by the exact Wasserstein integration.
    pub(crate) fn tail_first_moment(&self, x: f64) -> Result<f64> {
        self.require_nonneg(x, "tail_first_moment")?;
        if self.s == 0.5 {
            // ∫ₓ^∞ 2y²e^{-y²} dy = x·e^{-x²} + (√π/2)·erfc(x)
            return Ok(x * (-x * x).exp() + 0.5 * std::f64::consts::PI.sqrt() * erfc(x));
        }
        if self.s == 1.0 {
            return Ok((2.0 / std::f64::consts::PI).sqrt() * (-0.5 * x * x).exp());
        }
        let z = self.z(x);
        let ln_t1 = 0.5 * ((2.0 * self.s).ln() - LN_PI) + self.ln_gamma_s - z
            + ln_kummer_u(self.s - 1.0, -0.5, z, &self.cfg)?;
        Ok(ln_t1.exp())
    }
}
