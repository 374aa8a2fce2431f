//! Distributional transforms: size bias, square (double-size) bias, the V
//! mixing variable, and the combined transform whose unique fixed point is
//! the K_s law.
//!
//! For a nonnegative W with E W² < ∞, the square-bias law W″ reweights by
//! w², so E[W² f(W)] = E W² · E f(W″); it equals size biasing applied twice.
//! The mixer V = Y·max(U₁,U₂) + (1−Y)·min(U₁,U₂) with Y ~ Bernoulli(1/(2s))
//! (U₁, U₂ independent uniforms) has density (2 − 1/s) − 2x(1 − 1/s) on
//! (0,1). The transformed variable is W* = V·W″ with V independent of W″;
//! in the normalization E W² = 1, W* =_law W exactly when W ~ K_s, and a
//! distribution close to its own transform is close to K_s.
//!
//! For sums of indicators W = Σ_j X_j there is an explicit recipe for W″:
//! pick an index pair with probability P(J=j, K=k) = E(X_j X_k)/E W², then
//! sum the whole family conditioned on X_J = X_K = 1. The
//! [`IndicatorFamily`] trait captures exactly the two ingredients (joint
//! moments and a conditioned sampler); the attachment urn implements it via
//! its closed-form cross moments and conditioned chain.

use rand::Rng;

use crate::error::{Error, Result};
use crate::pmf::Pmf;
use crate::urn;

/// The mixing variable V of the transform, parameterized by s ≥ 1/2.
#[derive(Clone, Copy, Debug)]
pub struct VMixer {
    s: f64,
    /// Bernoulli parameter p = 1/(2s) of the max/min choice.
    p: f64,
}

impl VMixer {
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() || s < 0.5 {
            return Err(Error::Domain(format!("VMixer needs s ≥ 1/2, got {s}")));
        }
        Ok(Self { s, p: 1.0 / (2.0 * s) })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// P(Y = 1), the weight of the max branch.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Density (2 − 1/s) − 2x(1 − 1/s) on (0,1); zero outside.
    pub fn density(&self, x: f64) -> f64 {
        if !(0.0..=1.0).contains(&x) {
            return 0.0;
        }
        (2.0 - 1.0 / self.s) - 2.0 * x * (1.0 - 1.0 / self.s)
    }

    /// E V = (2 − 1/s)/2 − 2(1 − 1/s)/3.
    pub fn mean(&self) -> f64 {
        (2.0 - 1.0 / self.s) / 2.0 - 2.0 * (1.0 - 1.0 / self.s) / 3.0
    }

    /// Draw V = Y·max(U₁,U₂) + (1−Y)·min(U₁,U₂).
    pub fn sample_v<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u1: f64 = rng.random();
        let u2: f64 = rng.random();
        let y = rng.random::<f64>() < self.p;
        if y {
            u1.max(u2)
        } else {
            u1.min(u2)
        }
    }
}

fn check_nonnegative_support(p: &Pmf, what: &str) -> Result<()> {
    if p.offset() < 0 {
        return Err(Error::Domain(format!(
            "{what} needs nonnegative support; smallest value is {}",
            p.offset()
        )));
    }
    Ok(())
}

/// Size-bias a pmf: q(w) = w·p(w)/E W. Needs nonnegative support, E W > 0.
pub fn size_bias_pmf(p: &Pmf) -> Result<Pmf> {
    check_nonnegative_support(p, "size bias")?;
    let mean = p.mean();
    if mean <= 0.0 {
        return Err(Error::Domain(format!(
            "size bias needs a positive mean, got {mean}"
        )));
    }
    let probs: Vec<f64> = p
        .support()
        .map(|(v, pr)| v as f64 * pr / mean)
        .collect();
    Pmf::new(p.offset(), probs)
}

/// Square-bias (double-size-bias) a pmf: q(w) = w²·p(w)/E W².
pub fn square_bias_pmf(p: &Pmf) -> Result<Pmf> {
    check_nonnegative_support(p, "square bias")?;
    let m2 = p.moment(2);
    if m2 <= 0.0 {
        return Err(Error::Domain(format!(
            "square bias needs a positive second moment, got {m2}"
        )));
    }
    let probs: Vec<f64> = p
        .support()
        .map(|(v, pr)| (v as f64) * (v as f64) * pr / m2)
        .collect();
    Pmf::new(p.offset(), probs)
}

/// Reusable W* = V·W″ sampler for a fixed discrete base law and index s.
#[derive(Clone, Debug)]
pub struct TdsbDiscrete {
    square_biased: Pmf,
    mixer: VMixer,
}

impl TdsbDiscrete {
    pub fn new(p: &Pmf, s: f64) -> Result<Self> {
        Ok(Self {
            square_biased: square_bias_pmf(p)?,
            mixer: VMixer::new(s)?,
        })
    }

    /// The square-biased law W″ used internally.
    pub fn square_biased(&self) -> &Pmf {
        &self.square_biased
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.mixer.sample_v(rng) * self.square_biased.sample(rng) as f64
    }
}

/// One draw of W* = V·W″ from a discrete base law (builds the square-biased
/// table; reuse [`TdsbDiscrete`] in loops).
pub fn tdsb_sample_discrete<R: Rng + ?Sized>(p: &Pmf, s: f64, rng: &mut R) -> Result<f64> {
    Ok(TdsbDiscrete::new(p, s)?.sample(rng))
}

/// A finite family of 0/1 summands W = Σ_{j=0}^{max_index} X_j described by
/// its joint moments and conditioned sampler — the two ingredients of the
/// explicit square-bias recipe for sums.
pub trait IndicatorFamily {
    /// Largest index (indices run 0..=max_index).
    fn max_index(&self) -> u64;

    /// E(X_j X_k) for j ≤ k.
    fn joint(&self, j: u64, k: u64) -> Result<f64>;

    /// Sample the full sum Σ_j X_j conditioned on X_j = X_k = 1 (j ≤ k; the
    /// forced indicators are included in the sum, contributing 2 − 1[j=k]).
    fn sample_conditioned<R: Rng + ?Sized>(&self, j: u64, k: u64, rng: &mut R) -> Result<f64>;
}

/// Square-bias sampler for an indicator sum: index pair (J,K) with
/// probability E(X_J X_K)/E W², then the conditioned sum.
#[derive(Clone, Debug)]
pub struct DoubleSizeBias<F: IndicatorFamily> {
    family: F,
    pairs: Vec<(u64, u64)>,
    cum: Vec<f64>,
    b2: f64,
}

impl<F: IndicatorFamily> DoubleSizeBias<F> {
    pub fn new(family: F) -> Result<Self> {
        let m = family.max_index();
        let mut pairs = Vec::new();
        let mut cum = Vec::new();
        let mut acc = 0.0_f64;
        for j in 0..=m {
            for k in j..=m {
                let mass = family.joint(j, k)?;
                if !mass.is_finite() || mass < 0.0 {
                    return Err(Error::Inconsistent(format!(
                        "joint moment E(X_{j} X_{k}) = {mass} is not a weight"
                    )));
                }
                // Unordered pair (j,k) carries both orders' probability.
                acc += if j == k { mass } else { 2.0 * mass };
                pairs.push((j, k));
                cum.push(acc);
            }
        }
        if !(acc.is_finite() && acc > 0.0) {
            return Err(Error::Inconsistent(format!(
                "index-pair table has total mass {acc}; cannot normalize"
            )));
        }
        Ok(Self { family, pairs, cum, b2: acc })
    }

    /// E W² recovered as the table total Σ E(X_j X_k).
    pub fn b2(&self) -> f64 {
        self.b2
    }

    pub fn family(&self) -> &F {
        &self.family
    }

    /// P(unordered pair = (j,k)) under the index law.
    pub fn pair_prob(&self, j: u64, k: u64) -> Result<f64> {
        let (j, k) = (j.min(k), j.max(k));
        let mass = self.family.joint(j, k)?;
        Ok(if j == k { mass } else { 2.0 * mass } / self.b2)
    }

    /// One square-biased realization of the sum.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        let u = rng.random::<f64>() * self.b2;
        let idx = self.cum.partition_point(|&c| c <= u).min(self.pairs.len() - 1);
        let (j, k) = self.pairs[idx];
        self.family.sample_conditioned(j, k, rng)
    }
}

/// One square-biased indicator-sum draw.
pub fn double_size_bias_sum<F: IndicatorFamily, R: Rng + ?Sized>(
    dsb: &DoubleSizeBias<F>,
    rng: &mut R,
) -> Result<f64> {
    dsb.sample(rng)
}

/// The attachment urn (2,0;1,1)_{i,1} as an indicator family: X_0 = 1 and
/// X_j the j-th white-draw indicator, with closed-form joint moments and the
/// conditioned chain as sampler. `DoubleSizeBias` over this family samples
/// the square bias of the white-count law.
#[derive(Clone, Copy, Debug)]
pub struct UrnIndicators {
    pub i: u64,
    pub n: u64,
}

impl IndicatorFamily for UrnIndicators {
    fn max_index(&self) -> u64 {
        self.n
    }

    fn joint(&self, j: u64, k: u64) -> Result<f64> {
        urn::joint_xjxk(self.i, j, k, self.n)
    }

    fn sample_conditioned<R: Rng + ?Sized>(&self, j: u64, k: u64, rng: &mut R) -> Result<f64> {
        let mut forced = [0u64; 2];
        let mut len = 0;
        for idx in [j, k] {
            if idx >= 1 && (len == 0 || forced[len - 1] != idx) {
                forced[len] = idx;
                len += 1;
            }
        }
        Ok(urn::simulate_conditioned(self.i, self.n, &forced[..len], rng)? as f64)
    }
}

/// X_0 = 1 plus `count` i.i.d. Bernoulli(p) indicators — a fully enumerable
/// family for oracle tests of the square-bias recipe.
#[derive(Clone, Copy, Debug)]
pub struct BernoulliIndicators {
    pub count: u64,
    pub p: f64,
}

impl IndicatorFamily for BernoulliIndicators {
    fn max_index(&self) -> u64 {
        self.count
    }

    fn joint(&self, j: u64, k: u64) -> Result<f64> {
        if j > k || k > self.count {
            return Err(Error::Domain(format!(
                "joint needs 0 ≤ j ≤ k ≤ {}, got ({j},{k})",
                self.count
            )));
        }
        Ok(match (j == 0, j == k) {
            (true, true) => 1.0,
            (true, false) | (false, true) => self.p,
            (false, false) => self.p * self.p,
        })
    }

    fn sample_conditioned<R: Rng + ?Sized>(&self, j: u64, k: u64, rng: &mut R) -> Result<f64> {
        let forced: u64 = u64::from(j >= 1) + u64::from(k >= 1 && k != j);
        let mut sum = 1 + forced;
        for idx in 1..=self.count {
            if idx == j || idx == k {
                continue;
            }
            if rng.random::<f64>() < self.p {
                sum += 1;
            }
        }
        Ok(sum as f64)
    }
}
