//! Exact finite probability mass functions on integer support.
//!
//! `Pmf` is the crate's noise-free currency: urn dynamic programming emits
//! one, the distributional transforms reweight one, and the metrics module
//! compares one against K_s. Probabilities are plain f64 — the dynamic
//! programs behind them only add and multiply probabilities, so the mass sums
//! stay within a few ulps of 1, which the constructor enforces.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance on Σp = 1 for anything claiming to be exact.
const MASS_TOL: f64 = 1e-12;

/// A probability mass function on consecutive integers starting at `offset`
/// (entries may be zero; support need not be contiguous).
#[derive(Clone, Debug, PartialEq)]
pub struct Pmf {
    offset: i64,
    probs: Vec<f64>,
}

/// One support point, for serialization.
#[derive(Serialize)]
struct PmfRow {
    value: i64,
    probability: f64,
}

impl Pmf {
    /// Validates non-negativity and total mass 1 (within 1e-12).
    pub fn new(offset: i64, probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Domain("pmf needs at least one mass point".into()));
        }
        if probs.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::Domain(
                "pmf entries must be finite and non-negative".into(),
            ));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > MASS_TOL {
            return Err(Error::Inconsistent(format!(
                "pmf mass sums to {sum}, expected 1 within {MASS_TOL:e}"
            )));
        }
        Ok(Self { offset, probs })
    }

    pub fn point_mass(value: i64) -> Self {
        Self {
            offset: value,
            probs: vec![1.0],
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Iterator over (value, probability) pairs.
    pub fn support(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(idx, &p)| (self.offset + idx as i64, p))
    }

    /// P(X = v); zero off-support.
    pub fn prob(&self, v: i64) -> f64 {
        let idx = v - self.offset;
        if idx < 0 || idx as usize >= self.probs.len() {
            0.0
        } else {
            self.probs[idx as usize]
        }
    }

    /// P(X ≤ v).
    pub fn cdf(&self, v: i64) -> f64 {
        let idx = v - self.offset;
        if idx < 0 {
            return 0.0;
        }
        let end = ((idx as usize) + 1).min(self.probs.len());
        self.probs[..end].iter().sum()
    }

    /// E f(X).
    pub fn expect<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.support().map(|(v, p)| p * f(v as f64)).sum()
    }

    pub fn mean(&self) -> f64 {
        self.expect(|v| v)
    }

    /// E X^k.
    pub fn moment(&self, k: u32) -> f64 {
        self.expect(|v| v.powi(k as i32))
    }

    /// Total variation distance ½ Σ|p − q|.
    pub fn tv(&self, other: &Pmf) -> f64 {
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.probs.len() as i64)
            .max(other.offset + other.probs.len() as i64);
        let mut acc = 0.0;
        for v in lo..hi {
            acc += (self.prob(v) - other.prob(v)).abs();
        }
        0.5 * acc
    }

    /// Kolmogorov distance between two integer-supported laws:
    /// max over v of |F(v) − G(v)|.
    pub fn kolmogorov(&self, other: &Pmf) -> f64 {
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.probs.len() as i64)
            .max(other.offset + other.probs.len() as i64);
        let (mut f, mut g, mut sup) = (0.0_f64, 0.0_f64, 0.0_f64);
        for v in lo..hi {
            f += self.prob(v);
            g += other.prob(v);
            sup = sup.max((f - g).abs());
        }
        sup
    }

    /// Mixture Σ wᵢ·pᵢ; weights must be non-negative and sum to 1.
    pub fn mix(components: &[(f64, &Pmf)]) -> Result<Pmf> {
        if components.is_empty() {
            return Err(Error::Domain("mixture needs at least one component".into()));
        }
        let wsum: f64 = components.iter().map(|(w, _)| *w).sum();
        if components.iter().any(|(w, _)| *w < 0.0) || (wsum - 1.0).abs() > MASS_TOL {
            return Err(Error::Domain(format!(
                "mixture weights must be non-negative and sum to 1, got {wsum}"
            )));
        }
        let lo = components.iter().map(|(_, p)| p.offset).min().unwrap();
        let hi = components
            .iter()
            .map(|(_, p)| p.offset + p.probs.len() as i64)
            .max()
            .unwrap();
        let mut probs = vec![0.0; (hi - lo) as usize];
        for (w, p) in components {
            for (v, q) in p.support() {
                probs[(v - lo) as usize] += w * q;
            }
        }
        Pmf::new(lo, probs)
    }

    /// Inverse-CDF draw.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (v, p) in self.support() {
            acc += p;
            if u < acc {
                return v;
            }
        }
        self.offset + self.probs.len() as i64 - 1
    }

    /// CSV with a schema header comment: `value,probability` rows.
    pub fn to_csv<W: std::io::Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# pmf v1")?;
        writeln!(out, "value,probability")?;
        for (v, p) in self.support() {
            writeln!(out, "{v},{p:.17e}")?;
        }
        Ok(())
    }

    /// JSON array of `{value, probability}` objects.
    pub fn to_json(&self) -> String {
        let rows: Vec<PmfRow> = self
            .support()
            .map(|(value, probability)| PmfRow { value, probability })
            .collect();
        serde_json::to_string_pretty(&rows).expect("pmf rows serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constructor_guards() {
        assert!(Pmf::new(0, vec![]).is_err());
        assert!(Pmf::new(0, vec![0.5, 0.6]).is_err());
        assert!(Pmf::new(0, vec![-0.1, 1.1]).is_err());
        assert!(Pmf::new(0, vec![0.25, 0.75]).is_ok());
    }

    #[test]
    fn moments_and_lookup() {
        let p = Pmf::new(1, vec![0.5, 0.5]).unwrap();
        assert_relative_eq!(p.mean(), 1.5);
        assert_relative_eq!(p.moment(2), 2.5);
        assert_eq!(p.prob(0), 0.0);
        assert_eq!(p.prob(2), 0.5);
        assert_relative_eq!(p.cdf(1), 0.5);
        assert_relative_eq!(p.cdf(7), 1.0);
    }

    #[test]
    fn tv_and_kolmogorov() {
        let p = Pmf::new(0, vec![0.5, 0.5]).unwrap();
        let q = Pmf::new(1, vec![0.5, 0.5]).unwrap();
        assert_relative_eq!(p.tv(&q), 0.5);
        assert_relative_eq!(p.kolmogorov(&q), 0.5);
        assert_relative_eq!(p.tv(&p), 0.0);
    }

    #[test]
    fn mixing() {
        let p = Pmf::point_mass(0);
        let q = Pmf::point_mass(2);
        let m = Pmf::mix(&[(0.25, &p), (0.75, &q)]).unwrap();
        assert_relative_eq!(m.prob(0), 0.25);
        assert_relative_eq!(m.prob(2), 0.75);
        assert!(Pmf::mix(&[(0.5, &p)]).is_err());
    }

    #[test]
    fn csv_roundtrip_shape() {
        let p = Pmf::new(2, vec![1.0 / 6.0, 1.0 / 3.0, 0.5]).unwrap();
        let mut buf = Vec::new();
        p.to_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# pmf v1\nvalue,probability\n2,"));
        assert_eq!(text.lines().count(), 5);
    }
}
