//! Probability metrics between discrete laws and K_s, empirical two-sample
//! variants, and the log–log rate fit.
//!
//! The headline computation is exact: for a pmf P with atoms at vᵢ/scale and
//! the continuous K_s CDF G,
//!
//! * the Kolmogorov distance sup|F−G| is attained at an atom (F is a step
//!   function, G is increasing), so it is a finite max over one-sided gaps;
//! * the Wasserstein distance is ∫|F−G| dt, integrated in closed form on
//!   each constant piece of F using ∫ S(t) dt = t·S(t) + ∫ t·κ(t) dt with
//!   the partial first moment of K_s — the only numerics are the crossing
//!   points G(t*) = F, located by safeguarded Newton. (The same value could
//!   be obtained by brute quadrature per segment; the closed form is cheaper
//!   and its accuracy is pinned against quadrature in tests.)
//!
//! The rate fit regresses ln d against ln n and reports the per-n constants
//! d_n·√n, whose spread across the n-range is the observable form of a
//! two-sided c/√n ≤ d_n ≤ C/√n statement.

use std::io::Write as IoWrite;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ks::KsDist;
use crate::pmf::Pmf;

/// CDF extended by G(t) = 0 for t ≤ 0.
fn cdf0(d: &KsDist, t: f64) -> Result<f64> {
    if t <= 0.0 {
        Ok(0.0)
    } else {
        d.cdf(t)
    }
}

/// ∫_a^c S(t) dt for the K_s survival S, any a ≤ c (S ≡ 1 on t ≤ 0):
/// on the positive axis ∫ S = c·S(c) − a·S(a) + T₁(a) − T₁(c) with
/// T₁(x) = ∫ₓ^∞ t κ(t) dt.
fn integral_survival(d: &KsDist, a: f64, c: f64) -> Result<f64> {
    debug_assert!(a <= c);
    if c <= 0.0 {
        return Ok(c - a);
    }
    if a < 0.0 {
        return Ok(-a + integral_survival(d, 0.0, c)?);
    }
    Ok(c * d.survival(c)? - a * d.survival(a)? + d.tail_first_moment(a)?
        - d.tail_first_moment(c)?)
}

/// ∫_a^c G(t) dt = (c−a) − ∫_a^c S(t) dt.
fn integral_cdf(d: &KsDist, a: f64, c: f64) -> Result<f64> {
    Ok((c - a) - integral_survival(d, a, c)?)
}

/// Locate t* ∈ (lo, hi) with G(t*) = f, given G(lo) < f < G(hi).
/// Newton steps with a bisection safeguard; both converge on this smooth,
/// strictly increasing G.
fn crossing(d: &KsDist, mut lo: f64, mut hi: f64, f: f64) -> Result<f64> {
    let mut t = 0.5 * (lo + hi);
    for _ in 0..100 {
        let g = cdf0(d, t)? - f;
        if g.abs() < 1e-13 || (hi - lo) < 1e-12 * (1.0 + hi.abs()) {
            return Ok(t);
        }
        if g < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let dens = if t > 0.0 { d.density(t)? } else { 0.0 };
        let newton = t - g / dens;
        t = if dens > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(t)
}

/// Atoms of a step CDF: strictly increasing positions with the cumulative
/// value attained *at* each position. The final cumulative must be 1.
fn pmf_atoms(p: &Pmf, scale: f64) -> Result<Vec<(f64, f64)>> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::Domain(format!(
            "scale must be a positive real, got {scale}"
        )));
    }
    let mut atoms = Vec::new();
    let mut acc = 0.0;
    for (v, pr) in p.support() {
        if pr == 0.0 {
            continue;
        }
        acc += pr;
        atoms.push((v as f64 / scale, acc));
    }
    if let Some(last) = atoms.last_mut() {
        last.1 = 1.0; // clamp accumulated rounding
    }
    Ok(atoms)
}

fn kolmogorov_atoms_vs_ks(atoms: &[(f64, f64)], d: &KsDist) -> Result<f64> {
    let mut sup: f64 = 0.0;
    let mut prev = 0.0;
    for &(x, f) in atoms {
        let g = cdf0(d, x)?;
        sup = sup.max((prev - g).abs()).max((f - g).abs());
        prev = f;
    }
    Ok(sup)
}

/// ∫_x^∞ S in closed form: T₁(x) − x·S(x) (plus the flat S ≡ 1 piece when
/// x < 0).
fn tail_survival_integral(d: &KsDist, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Ok(-x + d.moment(1.0)?);
    }
    Ok(d.tail_first_moment(x)? - x * d.survival(x)?)
}

/// Exact Kolmogorov distance between a pmf scaled by `scale` and K_s.
pub fn kolmogorov_pmf_vs_ks(p: &Pmf, scale: f64, d: &KsDist) -> Result<f64> {
    kolmogorov_atoms_vs_ks(&pmf_atoms(p, scale)?, d)
}

/// Exact Wasserstein distance ∫|F−G| between a scaled pmf and K_s.
pub fn wasserstein_pmf_vs_ks(p: &Pmf, scale: f64, d: &KsDist) -> Result<f64> {
    let atoms = pmf_atoms(p, scale)?;
    let first = atoms
        .first()
        .ok_or_else(|| Error::Domain("empty atom list".into()))?;
    // Head: F = 0 below the first atom; G contributes only on t > 0.
    let mut total = if first.0 > 0.0 {
        integral_cdf(d, 0.0, first.0)?
    } else {
        0.0
    };
    // Interior segments [x_m, x_{m+1}] with F = F_m constant.
    for w in atoms.windows(2) {
        let (a, f) = w[0];
        let c = w[1].0;
        let ga = cdf0(d, a)?;
        let gc = cdf0(d, c)?;
        total += if gc <= f {
            // F above G on the whole segment.
            f * (c - a) - integral_cdf(d, a, c)?
        } else if ga >= f {
            integral_cdf(d, a, c)? - f * (c - a)
        } else {
            let t = crossing(d, a, c, f)?;
            (f * (t - a) - integral_cdf(d, a, t)?) + (integral_cdf(d, t, c)? - f * (c - t))
        };
    }
    // Tail: F = 1 above the last atom.
    total += tail_survival_integral(d, atoms.last().unwrap().0)?;
    Ok(total)
}

/// One-sample Kolmogorov distance between an empirical sample and K_s.
pub fn kolmogorov_sample_vs_ks(xs: &[f64], d: &KsDist) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::Domain("empty sample".into()));
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let atoms: Vec<(f64, f64)> = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, (i + 1) as f64 / n))
        .collect();
    kolmogorov_atoms_vs_ks(&atoms, d)
}

/// Two-sample Kolmogorov distance between empirical CDFs.
pub fn kolmogorov_two_sample(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::Domain("two-sample distance needs nonempty samples".into()));
    }
    let mut a = xs.to_vec();
    let mut b = ys.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j) = (0usize, 0usize);
    let mut sup: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let t = a[i].min(b[j]);
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        let diff = (i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs();
        sup = sup.max(diff);
    }
    Ok(sup)
}

/// Two-sample Wasserstein distance ∫|F₁−F₂| between empirical CDFs
/// (arbitrary sizes, merged-grid exact).
pub fn wasserstein_two_sample(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::Domain("two-sample distance needs nonempty samples".into()));
    }
    let mut a = xs.to_vec();
    let mut b = ys.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j) = (0usize, 0usize);
    let mut total = 0.0;
    let mut prev: Option<f64> = None;
    while i < a.len() || j < b.len() {
        let t = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        if let Some(p) = prev {
            let fa = i as f64 / a.len() as f64;
            let fb = j as f64 / b.len() as f64;
            total += (fa - fb).abs() * (t - p);
        }
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        prev = Some(t);
    }
    Ok(total)
}

/// Exact Wasserstein distance between two pmfs on the same `scale`.
pub fn wasserstein_pmf_pair(p: &Pmf, q: &Pmf, scale: f64) -> Result<f64> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::Domain(format!(
            "scale must be a positive real, got {scale}"
        )));
    }
    let lo = p.offset().min(q.offset());
    let hi = p.offset() + p.probs().len() as i64 - 1;
    let hi = hi.max(q.offset() + q.probs().len() as i64 - 1);
    let mut total = 0.0;
    let mut fp = 0.0;
    let mut fq = 0.0;
    for v in lo..hi {
        fp += p.prob(v);
        fq += q.prob(v);
        total += (fp - fq).abs() / scale; // segment [v, v+1) has width 1/scale
    }
    Ok(total)
}

/// How a distance row was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    ExactDp,
    Empirical,
}

/// One row of a rate experiment. Serializes to the fixed CSV schema
/// `model,i,n,b,kolmogorov,wasserstein,slope`.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceReport {
    /// "model1", "model2", or "urn".
    pub model: String,
    pub i: u64,
    pub n: u64,
    /// The normalizer b = (E W²)^{1/2}.
    pub b: f64,
    pub kolmogorov: f64,
    pub wasserstein: f64,
    /// Fitted log–log slope of the experiment this row belongs to.
    pub slope: f64,
    #[serde(skip)]
    pub method: DistanceMethod,
}

/// CSV schema version line written ahead of the header.
pub const RATE_CSV_VERSION: &str = "# rate v1";

/// Write reports as versioned CSV (comment line, header, rows).
pub fn write_reports_csv<W: IoWrite>(mut out: W, rows: &[DistanceReport]) -> Result<()> {
    writeln!(out, "{RATE_CSV_VERSION}")?;
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(e.into()))?;
    }
    w.flush()?;
    Ok(())
}

/// Reports as a pretty JSON array.
pub fn reports_to_json(rows: &[DistanceReport]) -> Result<String> {
    serde_json::to_string_pretty(rows)
        .map_err(|e| Error::Inconsistent(format!("JSON serialization failed: {e}")))
}

/// Least-squares fit of ln d against ln n, with per-n constants d·√n.
#[derive(Clone, Debug, Serialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    /// (n, d_n·√n) per input point.
    pub constants: Vec<(u64, f64)>,
    pub c_min: f64,
    pub c_max: f64,
}

impl RateFit {
    /// Ratio of the largest to the smallest constant d_n·√n — the
    /// "constants vary by less than a factor r" observable.
    pub fn constant_spread(&self) -> f64 {
        self.c_max / self.c_min
    }
}

/// Fit d_n ≈ exp(intercept)·n^slope from ≥ 3 (n, d_n) points, d_n > 0.
pub fn rate_fit(table: &[(u64, f64)]) -> Result<RateFit> {
    if table.len() < 3 {
        return Err(Error::Domain(format!(
            "rate fit needs at least 3 points, got {}",
            table.len()
        )));
    }
    let mut xs = Vec::with_capacity(table.len());
    let mut ys = Vec::with_capacity(table.len());
    let mut constants = Vec::with_capacity(table.len());
    for &(n, dist) in table {
        if n == 0 || !(dist > 0.0) {
            return Err(Error::Domain(format!(
                "rate fit needs n ≥ 1 and distance > 0, got ({n}, {dist})"
            )));
        }
        xs.push((n as f64).ln());
        ys.push(dist.ln());
        constants.push((n, dist * (n as f64).sqrt()));
    }
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("rate fit needs at least two distinct n".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let c_min = constants.iter().map(|&(_, c)| c).fold(f64::INFINITY, f64::min);
    let c_max = constants.iter().map(|&(_, c)| c).fold(0.0, f64::max);
    Ok(RateFit { slope, intercept, constants, c_min, c_max })
}
