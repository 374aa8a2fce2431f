//! Generalized Pólya urns: simulation, exact laws by dynamic programming,
//! closed-form moments for the attachment urn, conditioned chains, and the
//! (J,K) index distribution behind the double-size-bias construction.
//!
//! An urn (α,β;γ,δ) with initial counts (i black, j white) evolves by drawing
//! a ball uniformly: drawing black returns it with α extra black and β extra
//! white; drawing white returns it with γ extra black and δ extra white. The
//! urn is *balanced* when α+β = γ+δ, making the total count deterministic —
//! exactly the case where the white-count law is a small dynamic program.
//!
//! The central family here is the attachment urn (2,0;1,1)_{i,1}: its white
//! count after n draws is the degree law of a fixed vertex in the
//! preferential-attachment graphs (see the `graph` module), and the white
//! count W_n = Σ_{j=0}^n X_j decomposes into draw indicators X_j (X_0 = 1 for
//! the initial white ball). For it we also provide:
//!
//! * exact moments: E W_n = Π_{t=1..n} (i+2t)/(i+2t−1) (a Γ-ratio) and
//!   E W_n² = 2(i+2n+1)/(i+1) − E W_n;
//! * the joint indicator moments E(X_j X_k) and an O(log n) sampler for the
//!   index pair (J,K) with P(J=j, K=k) = E(X_j X_k)/E W_n² — the mixing law
//!   of the double-size-bias decomposition;
//! * the chain conditioned on forced white draws (the law of W_n given
//!   X_m = 1 for m in a small set), both as exact DP and as a sampler; the
//!   M^{j,k} process (start 3 white, draws j and k add a single black) is the
//!   same chain in different bookkeeping, which tests verify;
//! * the shared-uniform coupling of the (2,0;1,1)_{i,3} urn R with the
//!   conditioned chain W″, whose disagreement probability decays like 1/√n;
//! * the maximal coupling of the same pair, built from the two exact DP
//!   laws, which attains the total-variation optimum P(R ≠ W″) = d_TV —
//!   the cleanest way to observe the 1/√n decay at practical n, where the
//!   step-by-step chain coupling still carries slowly-vanishing ln n/√n
//!   contributions;
//! * the max/min coupling of classical Pólya urns to order statistics of two
//!   uniforms (the last step that turns urn counts into the V·W″ form).
//!
//! All closed-form moment work happens in log space via `ln_gamma` so the
//! formulas stay finite for n up to 10⁴ and beyond.

use rand::Rng;
use rand_distr::{Distribution, Open01};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::pmf::Pmf;

/// State/step budget for the exact DP (states × steps).
const DP_GUARD: u64 = 100_000_000;

/// A generalized urn (α,β;γ,δ) with initial counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UrnSpec {
    pub alpha: u64,
    pub beta: u64,
    pub gamma: u64,
    pub delta: u64,
    /// Initial black count (the paper-side subscript i ≥ 0).
    pub black: u64,
    /// Initial white count (the paper-side subscript j ≥ 1).
    pub white: u64,
}

impl UrnSpec {
    pub fn new(alpha: u64, beta: u64, gamma: u64, delta: u64, black: u64, white: u64) -> Result<Self> {
        if white < 1 {
            return Err(Error::Domain(
                "urn needs at least one initial white ball (white-count chain)".into(),
            ));
        }
        Ok(Self { alpha, beta, gamma, delta, black, white })
    }

    /// The attachment urn (2,0;1,1) with i black and one white ball.
    pub fn attachment(i: u64) -> Self {
        Self { alpha: 2, beta: 0, gamma: 1, delta: 1, black: i, white: 1 }
    }

    /// Attachment dynamics (2,0;1,1) with arbitrary initial counts.
    pub fn attachment_counts(black: u64, white: u64) -> Self {
        Self { alpha: 2, beta: 0, gamma: 1, delta: 1, black, white }
    }

    /// Classical Pólya urn (1,0;0,1): the drawn color is duplicated.
    pub fn classic_polya(black: u64, white: u64) -> Self {
        Self { alpha: 1, beta: 0, gamma: 0, delta: 1, black, white }
    }

    /// Whether the total ball count grows deterministically.
    pub fn balanced(&self) -> bool {
        self.alpha + self.beta == self.gamma + self.delta
    }

    /// One trajectory of n draws; returns the terminal white count.
    pub fn simulate<R: Rng + ?Sized>(&self, n: u64, rng: &mut R) -> u64 {
        let mut white = self.white;
        let mut total = self.black + self.white;
        for _ in 0..n {
            let u: f64 = rng.random();
            if u < white as f64 / total as f64 {
                white += self.delta;
                total += self.gamma + self.delta;
            } else {
                white += self.beta;
                total += self.alpha + self.beta;
            }
        }
        white
    }

    /// Exact law of the white count after n draws, by forward DP over the
    /// white-count Markov chain. Requires a balanced urn (deterministic
    /// total); guarded by states×steps ≤ 10⁸.
    pub fn exact_pmf(&self, n: u64) -> Result<Pmf> {
        if !self.balanced() {
            return Err(Error::Unsupported(format!(
                "exact_pmf needs a balanced urn (α+β = γ+δ); got ({},{};{},{})",
                self.alpha, self.beta, self.gamma, self.delta
            )));
        }
        let lo_inc = self.beta.min(self.delta);
        let hi_inc = self.beta.max(self.delta);
        let states = n * (hi_inc - lo_inc) + 1;
        if states.saturating_mul(n.max(1)) > DP_GUARD {
            return Err(Error::Resource(format!(
                "urn DP would need {states} states × {n} steps (limit {DP_GUARD})"
            )));
        }

        // probs[idx] = P(white = self.white + lo_inc·t + idx) is the tight
        // indexing; simpler and still small: index by white − white₀ over the
        // full [0, n·hi_inc] range.
        let span = (n * hi_inc) as usize;
        let mut cur = vec![0.0_f64; span + 1];
        let mut nxt = vec![0.0_f64; span + 1];
        cur[0] = 1.0;
        let per_draw = self.alpha + self.beta; // = γ+δ, balanced
        for t in 0..n {
            let total = (self.black + self.white + t * per_draw) as f64;
            for x in nxt.iter_mut() {
                *x = 0.0;
            }
            let max_idx = (t * hi_inc) as usize;
            for idx in 0..=max_idx {
                let p = cur[idx];
                if p == 0.0 {
                    continue;
                }
                let white = self.white + idx as u64;
                let pw = white as f64 / total;
                nxt[idx + self.delta as usize] += p * pw;
                nxt[idx + self.beta as usize] += p * (1.0 - pw);
            }
            std::mem::swap(&mut cur, &mut nxt);
        }
        Pmf::new(self.white as i64, cur)
    }
}

// ---------------------------------------------------------------------------
// Closed-form moments for the attachment urn (2,0;1,1)_{i,1}.
// ---------------------------------------------------------------------------

/// ln E W_n for (2,0;1,1)_{i,1}:
/// E W_n = Γ((i+1)/2)·Γ(n+i/2+1) / (Γ(i/2+1)·Γ(n+(i+1)/2)).
fn ln_mean_white(i: u64, n: u64) -> f64 {
    let i = i as f64;
    let n = n as f64;
    ln_gamma((i + 1.0) / 2.0) + ln_gamma(n + i / 2.0 + 1.0)
        - ln_gamma(i / 2.0 + 1.0)
        - ln_gamma(n + (i + 1.0) / 2.0)
}

/// E W_n for the attachment urn (2,0;1,1)_{i,1}.
pub fn mean_white(i: u64, n: u64) -> f64 {
    ln_mean_white(i, n).exp()
}

/// E W_n² = 2(i+2n+1)/(i+1) − E W_n for the attachment urn.
pub fn second_moment_white(i: u64, n: u64) -> f64 {
    2.0 * (i + 2 * n + 1) as f64 / (i + 1) as f64 - mean_white(i, n)
}

/// ln E X_j (draw-j white indicator; X_0 ≡ 1): E X_j = E W_{j−1}/(i+2j−1).
fn ln_ex(i: u64, j: u64) -> f64 {
    if j == 0 {
        0.0
    } else {
        ln_mean_white(i, j - 1) - ((i + 2 * j - 1) as f64).ln()
    }
}

/// E(X_j X_k) for the attachment urn with 0 ≤ j ≤ k ≤ n:
///
/// ```text
/// E(X_j X_k) = E[(1+W_{j-1}) X_j] / (i+2k-1) · Π_{t=j+1}^{k-1} (i+2t)/(i+2t-1)
/// ```
///
/// for 1 ≤ j < k, with the conventions E(X_0 X_k) = E X_k and
/// E(X_j X_j) = E X_j (indicators are idempotent). The leading expectation
/// collapses via the second-moment identity:
/// E[(1+W_{j-1}) X_j] = (E W_{j-1} + E W_{j-1}²)/(i+2j-1) = 2/(i+1),
/// and the partial product telescopes to E W_{k-1}/E W_j.
pub fn joint_xjxk(i: u64, j: u64, k: u64, n: u64) -> Result<f64> {
    if j > k || k > n {
        return Err(Error::Domain(format!(
            "joint_xjxk needs 0 ≤ j ≤ k ≤ n, got j={j}, k={k}, n={n}"
        )));
    }
    if j == 0 && k == 0 {
        return Ok(1.0);
    }
    if j == 0 || j == k {
        return Ok(ln_ex(i, k.max(j)).exp());
    }
    Ok(((2.0 / (i + 1) as f64).ln() - ln_mean_white(i, j)
        + ln_mean_white(i, k - 1)
        - ((i + 2 * k - 1) as f64).ln())
    .exp())
}

// ---------------------------------------------------------------------------
// The (J,K) index distribution: P(J=j, K=k) = E(X_j X_k)/b², b² = E W_n².
// ---------------------------------------------------------------------------

/// Precomputed sampler for the index pair (J,K).
///
/// On the off-diagonal the joint moment factorizes, E(X_j X_k) = α_j·β_k for
/// j < k with α_j = (2/(i+1))/E W_j (α_0 = 1) and β_k = E X_k, so after an
/// O(n) table build each draw is two binary searches. Returns the unordered
/// representative (j ≤ k); the diagonal carries its own mass E X_j / b².
#[derive(Clone, Debug)]
pub struct JkSampler {
    i: u64,
    n: u64,
    b2: f64,
    /// Cumulative diagonal masses E X_j, j = 0..=n.
    cum_diag: Vec<f64>,
    /// Cumulative q_k = β_k·A_{k-1} (mass of pairs with max index k), k = 0..=n.
    cum_q: Vec<f64>,
    /// Cumulative α_j prefix (for sampling j | k).
    cum_alpha: Vec<f64>,
    diag_total: f64,
    off_total: f64,
}

impl JkSampler {
    pub fn new(i: u64, n: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("JkSampler needs n ≥ 1".into()));
        }
        let len = (n + 1) as usize;
        let mut alpha = vec![0.0_f64; len];
        let mut cum_diag = vec![0.0_f64; len];
        let mut cum_q = vec![0.0_f64; len];
        let mut cum_alpha = vec![0.0_f64; len];

        let mut diag_acc = 0.0;
        let mut alpha_acc = 0.0;
        let mut q_acc = 0.0;
        for idx in 0..len {
            let j = idx as u64;
            let ex = ln_ex(i, j).exp();
            alpha[idx] = if j == 0 {
                1.0
            } else {
                2.0 / ((i + 1) as f64 * mean_white(i, j))
            };
            // Pairs with max index k = j draw their partner from α_0..α_{j-1}.
            if j >= 1 {
                q_acc += ex * alpha_acc;
            }
            cum_q[idx] = q_acc;
            alpha_acc += alpha[idx];
            cum_alpha[idx] = alpha_acc;
            diag_acc += ex;
            cum_diag[idx] = diag_acc;
        }

        let b2 = second_moment_white(i, n);
        let total = diag_acc + 2.0 * q_acc;
        if ((total - b2) / b2).abs() > 1e-9 {
            return Err(Error::Inconsistent(format!(
                "(J,K) table mass {total} disagrees with E W² = {b2}"
            )));
        }
        Ok(Self {
            i,
            n,
            b2,
            cum_diag,
            cum_q,
            cum_alpha,
            diag_total: diag_acc,
            off_total: q_acc,
        })
    }

    pub fn i(&self) -> u64 {
        self.i
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// b² = E W_n², the normalizer of the index law.
    pub fn b2(&self) -> f64 {
        self.b2
    }

    /// P(J = j, K = k) for an ordered pair (both orders carry equal mass).
    pub fn prob(&self, j: u64, k: u64) -> Result<f64> {
        Ok(joint_xjxk(self.i, j.min(k), j.max(k), self.n)? / self.b2)
    }

    /// Draw the unordered pair (j ≤ k).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> (u64, u64) {
        let total = self.diag_total + 2.0 * self.off_total;
        let u: f64 = rng.random::<f64>() * total;
        if u < self.diag_total {
            let j = search_cum(&self.cum_diag, u);
            return (j, j);
        }
        let u_off = 0.5 * (u - self.diag_total);
        let k = search_cum(&self.cum_q, u_off.min(self.off_total * (1.0 - 1e-16)));
        // j | k is proportional to α_j on 0..k.
        let bound = self.cum_alpha[(k - 1) as usize];
        let u_j: f64 = rng.random::<f64>() * bound;
        let j = search_cum(&self.cum_alpha, u_j.min(bound * (1.0 - 1e-16)));
        (j.min(k - 1), k)
    }
}

/// First index whose cumulative value exceeds u.
fn search_cum(cum: &[f64], u: f64) -> u64 {
    cum.partition_point(|&c| c <= u) as u64
}

/// One-shot (J,K) draw (builds the table; reuse [`JkSampler`] in loops).
pub fn sample_jk<R: Rng + ?Sized>(i: u64, n: u64, rng: &mut R) -> Result<(u64, u64)> {
    Ok(JkSampler::new(i, n)?.sample(rng))
}

// ---------------------------------------------------------------------------
// Conditioned chains: law(W_n | X_m = 1 for m ∈ forced).
// ---------------------------------------------------------------------------

fn check_forced(n: u64, forced: &[u64]) -> Result<()> {
    for (idx, &m) in forced.iter().enumerate() {
        if m < 1 || m > n {
            return Err(Error::Domain(format!(
                "forced white draw at index {m} outside 1..={n}"
            )));
        }
        if idx > 0 && forced[idx - 1] >= m {
            return Err(Error::Domain(
                "forced indices must be strictly increasing".into(),
            ));
        }
    }
    Ok(())
}

/// Conditioned transition: with `remaining` forced white draws strictly ahead
/// and white count w before draw l, the draw is white with probability
/// (remaining + w) / (i + 2l − 1 + remaining). With nothing forced this is
/// the plain attachment-urn law w/(i+2l−1).
fn conditioned_p_white(i: u64, l: u64, w: u64, remaining: u64) -> f64 {
    (remaining + w) as f64 / (i + 2 * l - 1 + remaining) as f64
}

/// Exact law of W_n for the attachment urn (2,0;1,1)_{i,1} conditioned on
/// drawing white at each index in `forced` (strictly increasing, within
/// 1..=n; empty means the unconditional law).
pub fn conditioned_pmf(i: u64, n: u64, forced: &[u64]) -> Result<Pmf> {
    check_forced(n, forced)?;
    let states = n + 1;
    if states.saturating_mul(n.max(1)) > DP_GUARD {
        return Err(Error::Resource(format!(
            "conditioned DP would need {states} states × {n} steps (limit {DP_GUARD})"
        )));
    }
    let mut cur = vec![0.0_f64; states as usize];
    let mut nxt = vec![0.0_f64; states as usize];
    cur[0] = 1.0; // white = 1 + idx
    for l in 1..=n {
        let remaining = forced.iter().filter(|&&m| m > l).count() as u64;
        let is_forced = forced.binary_search(&l).is_ok();
        for x in nxt.iter_mut() {
            *x = 0.0;
        }
        for idx in 0..l as usize {
            let p = cur[idx];
            if p == 0.0 {
                continue;
            }
            if is_forced {
                nxt[idx + 1] += p;
            } else {
                let pw = conditioned_p_white(i, l, 1 + idx as u64, remaining);
                nxt[idx + 1] += p * pw;
                nxt[idx] += p * (1.0 - pw);
            }
        }
        std::mem::swap(&mut cur, &mut nxt);
    }
    Pmf::new(1, cur)
}

/// Sample W_n conditioned on forced white draws (same chain as
/// [`conditioned_pmf`]).
pub fn simulate_conditioned<R: Rng + ?Sized>(
    i: u64,
    n: u64,
    forced: &[u64],
    rng: &mut R,
) -> Result<u64> {
    check_forced(n, forced)?;
    let mut w = 1u64;
    for l in 1..=n {
        if forced.binary_search(&l).is_ok() {
            w += 1;
            continue;
        }
        let remaining = forced.iter().filter(|&&m| m > l).count() as u64;
        let u: f64 = rng.random();
        if u < conditioned_p_white(i, l, w, remaining) {
            w += 1;
        }
    }
    Ok(w)
}

/// The M^{j,k} process of the double-size-bias construction, simulated
/// literally: start with 3 white among i+3 balls; draws j and k add a single
/// black ball (no white indicator); all other draws follow attachment-urn
/// growth. Terminal white count has law(W_n | X_j = X_k = 1); requires
/// 1 ≤ j < k ≤ n.
pub fn simulate_m_jk<R: Rng + ?Sized>(
    i: u64,
    n: u64,
    j: u64,
    k: u64,
    rng: &mut R,
) -> Result<u64> {
    if !(1 <= j && j < k && k <= n) {
        return Err(Error::Domain(format!(
            "simulate_m_jk needs 1 ≤ j < k ≤ n, got j={j}, k={k}, n={n}"
        )));
    }
    let mut m = 3u64;
    for t in 1..=n {
        if t == j || t == k {
            continue; // one black ball enters; no white indicator
        }
        let den = i + 2 * t + 1 - u64::from(t > j) - u64::from(t > k);
        let u: f64 = rng.random();
        if u < m as f64 / den as f64 {
            m += 1;
        }
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// Couplings.
// ---------------------------------------------------------------------------

/// Joint draw of the (2,0;1,1)_{i,3} white count R (n−1 draws) and the
/// double-size-bias variable W″ from shared uniforms.
#[derive(Clone, Copy, Debug)]
pub struct CoupledRw {
    pub r: u64,
    pub w2: u64,
    /// Whether the two chains agreed (R = W″).
    pub agree: bool,
    /// The index pair behind W″.
    pub j: u64,
    pub k: u64,
}

/// Reusable sampler for the (R, W″) coupling at fixed (i, n).
#[derive(Clone, Debug)]
pub struct CoupledSampler {
    i: u64,
    n: u64,
    jk: JkSampler,
}

impl CoupledSampler {
    pub fn new(i: u64, n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("coupling needs n ≥ 2".into()));
        }
        Ok(Self { i, n, jk: JkSampler::new(i, n)? })
    }

    pub fn jk(&self) -> &JkSampler {
        &self.jk
    }

    /// Draw (R, W″) with a fresh (J,K) pair.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> CoupledRw {
        let (j, k) = self.jk.sample(rng);
        self.draw_given(j, k, rng)
    }

    /// Draw (R, W″) given the index pair. For 0 < j < k this is the paper
    /// construction: one uniform per draw feeds both the R-chain
    /// (threshold R_{t-1}/(i+2t+1)) and the M-chain (threshold
    /// M_{t-1}/(i+2t+1−[t>j]−[t>k]), forced zeros at t = j,k). Degenerate
    /// pairs (j = 0 and/or j = k) run the conditioned chain on the same
    /// uniforms — their total probability is O(1/n), so any joint law
    /// preserving the marginals keeps the coupling rate.
    pub fn draw_given<R: Rng + ?Sized>(&self, j: u64, k: u64, rng: &mut R) -> CoupledRw {
        let (i, n) = (self.i, self.n);
        let mut r = 3u64;
        let main_case = 1 <= j && j < k;
        let mut m = 3u64; // M-chain (main case)
        let mut w = 1u64; // conditioned chain (degenerate case)
        let forced: &[u64] = match (j == 0, j == k) {
            (true, true) => &[],
            (true, false) => std::slice::from_ref(&k),
            (false, true) => std::slice::from_ref(&j),
            (false, false) => &[], // main case; unused
        };
        for t in 1..=n {
            let u: f64 = rng.random();
            if t <= n - 1 && u < r as f64 / (i + 2 * t + 1) as f64 {
                r += 1;
            }
            if main_case {
                if t != j && t != k {
                    let den = i + 2 * t + 1 - u64::from(t > j) - u64::from(t > k);
                    if u < m as f64 / den as f64 {
                        m += 1;
                    }
                }
            } else if forced.binary_search(&t).is_ok() {
                w += 1;
            } else {
                let remaining = forced.iter().filter(|&&f| f > t).count() as u64;
                if u < conditioned_p_white(i, t, w, remaining) {
                    w += 1;
                }
            }
        }
        let w2 = if main_case { m } else { w };
        CoupledRw { r, w2, agree: r == w2, j, k }
    }
}

/// One-shot (R, W″) draw (builds tables; reuse [`CoupledSampler`] in loops).
pub fn coupled_r_w2<R: Rng + ?Sized>(i: u64, n: u64, rng: &mut R) -> Result<CoupledRw> {
    Ok(CoupledSampler::new(i, n)?.draw(rng))
}

/// One replicate of the complete four-variable coupling used for the
/// distributional bounds: W is a plain attachment-urn white count after n
/// draws, W″ its square bias, R the three-white-start count after n−1
/// draws, and V the min/max uniform mixture. Always |W − V·R| < 3, so
/// {|W − V·W″| > 3} ⊆ {R ≠ W″}.
#[derive(Clone, Copy, Debug)]
pub struct JointCoupling {
    pub w: u64,
    pub r: u64,
    pub w2: u64,
    pub v: f64,
}

impl JointCoupling {
    /// |W − V·W″|, the gap the tail bound is stated in.
    pub fn gap(&self) -> f64 {
        (self.w as f64 - self.v * self.w2 as f64).abs()
    }
}

impl CoupledSampler {
    /// Extend a coupled (R, W″) draw to (W, R, W″, V): the mixture branch
    /// Y ~ Bernoulli(1/(1+i)) picks between the two classical Pólya reps
    /// of the conditional urn laws, each pinned within 3 of R·max(U₁,U₂)
    /// (resp. R·min) by the ceiling construction.
    pub fn draw_joint<G: Rng + ?Sized>(&self, rng: &mut G) -> Result<JointCoupling> {
        let rw = self.draw(rng);
        let nm = polya_coupling_nm(rw.r, rng)?;
        let y = rng.random::<f64>() < 1.0 / (1.0 + self.i as f64);
        let (w, v) = if y {
            (nm.n_max, nm.u1.max(nm.u2))
        } else {
            (nm.m_min, nm.u1.min(nm.u2))
        };
        Ok(JointCoupling { w, r: rw.r, w2: rw.w2, v })
    }
}

/// Maximal coupling of law(R) = (2,0;1,1)^{n−1}_{i,3} and the square-bias
/// law of (2,0;1,1)^n_{i,1}: both pmfs come from exact DP, the shared
/// overlap min(p, q) is sampled as a common value, and the two residuals
/// (which have disjoint supports) are sampled independently otherwise, so
/// P(R ≠ W″) equals the total-variation distance — the optimum over all
/// couplings of these marginals.
#[derive(Clone, Debug)]
pub struct MaximalRw2 {
    lo: i64,
    overlap_cum: Vec<f64>,
    p_res_cum: Vec<f64>,
    q_res_cum: Vec<f64>,
    /// Total overlap mass (agreement probability).
    omega: f64,
}

impl MaximalRw2 {
    pub fn new(i: u64, n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("maximal coupling needs n ≥ 2".into()));
        }
        let p = UrnSpec::attachment_counts(i, 3).exact_pmf(n - 1)?;
        let q = crate::transform::square_bias_pmf(&UrnSpec::attachment(i).exact_pmf(n)?)?;
        let lo = p.offset().min(q.offset());
        let hi = (p.offset() + p.probs().len() as i64).max(q.offset() + q.probs().len() as i64);
        let mut overlap_cum = Vec::with_capacity((hi - lo) as usize);
        let mut p_res_cum = Vec::with_capacity((hi - lo) as usize);
        let mut q_res_cum = Vec::with_capacity((hi - lo) as usize);
        let (mut co, mut cp, mut cq) = (0.0, 0.0, 0.0);
        for v in lo..hi {
            let (pv, qv) = (p.prob(v), q.prob(v));
            let o = pv.min(qv);
            co += o;
            cp += pv - o;
            cq += qv - o;
            overlap_cum.push(co);
            p_res_cum.push(cp);
            q_res_cum.push(cq);
        }
        Ok(Self { lo, overlap_cum, p_res_cum, q_res_cum, omega: co })
    }

    /// Total-variation distance between the two marginals, which is also
    /// the exact disagreement probability of this coupling.
    pub fn tv(&self) -> f64 {
        1.0 - self.omega
    }

    /// Draw (R, W″); the two values agree with probability 1 − tv().
    pub fn draw<G: Rng + ?Sized>(&self, rng: &mut G) -> (u64, u64) {
        let u: f64 = rng.random();
        if u < self.omega {
            // Reuse the branch uniform as the overlap coordinate.
            let v = self.lo + search_cum(&self.overlap_cum, u) as i64;
            return (v as u64, v as u64);
        }
        let total_p = *self.p_res_cum.last().unwrap();
        let total_q = *self.q_res_cum.last().unwrap();
        if total_p <= 0.0 || total_q <= 0.0 {
            // Identical marginals (TV = 0): the residual branch is a
            // floating-point sliver; fall back to the overlap table.
            let v = self.lo + search_cum(&self.overlap_cum, rng.random::<f64>() * self.omega) as i64;
            return (v as u64, v as u64);
        }
        let up: f64 = rng.random::<f64>() * total_p;
        let uq: f64 = rng.random::<f64>() * total_q;
        let r = self.lo + search_cum(&self.p_res_cum, up.min(total_p * (1.0 - 1e-16))) as i64;
        let w2 = self.lo + search_cum(&self.q_res_cum, uq.min(total_q * (1.0 - 1e-16))) as i64;
        (r as u64, w2 as u64)
    }
}

/// Max/min coupling of the classical Pólya urns to two uniforms.
#[derive(Clone, Copy, Debug)]
pub struct PolyaNm {
    /// N ~ (1,0;0,1)_{1,2}^{n-3}, coupled to n·max(U₁,U₂) within 3.
    pub n_max: u64,
    /// M with law(M) = law(n−N) ~ (1,0;0,1)_{2,1}^{n-3}, coupled to
    /// n·min(U₁,U₂) within 3.
    pub m_min: u64,
    pub u1: f64,
    pub u2: f64,
}

/// Draw (N, M, U₁, U₂): N = max(⌈(n−1)U₁⌉, 1+⌈(n−2)U₂⌉) has CDF
/// F(k) = k(k−1)/((n−1)(n−2)) on 1..n−1, and M = min(⌈(n−1)U₁⌉, ⌈(n−2)U₂⌉)
/// satisfies law(M) = law(n−N). Both sit within 3 of n·(max/min)(U₁,U₂).
pub fn polya_coupling_nm<R: Rng + ?Sized>(n: u64, rng: &mut R) -> Result<PolyaNm> {
    if n < 3 {
        return Err(Error::Domain(format!("polya_coupling_nm needs n ≥ 3, got {n}")));
    }
    let u1: f64 = Open01.sample(rng);
    let u2: f64 = Open01.sample(rng);
    let a = ((n - 1) as f64 * u1).ceil() as u64;
    let b = ((n - 2) as f64 * u2).ceil() as u64;
    Ok(PolyaNm {
        n_max: a.max(1 + b),
        m_min: a.min(b),
        u1,
        u2,
    })
}

/// Total-variation gap of the one-step mixture decomposition
///
/// ```text
/// (2,0;1,1)^n_{i,1} = 1/(1+i)·(2,0;1,1)^{n-1}_{i+1,2} ⊕ i/(1+i)·(2,0;1,1)^{n-1}_{i+2,1}
/// ```
///
/// computed from exact DP on both sides (expect ≤ 1e-12).
pub fn mixture_check(i: u64, n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("mixture_check needs n ≥ 1".into()));
    }
    let lhs = UrnSpec::attachment(i).exact_pmf(n)?;
    let first = UrnSpec::attachment_counts(i + 1, 2).exact_pmf(n - 1)?;
    let w1 = 1.0 / (1.0 + i as f64);
    let rhs = if i == 0 {
        first
    } else {
        let second = UrnSpec::attachment_counts(i + 2, 1).exact_pmf(n - 1)?;
        Pmf::mix(&[(w1, &first), (1.0 - w1, &second)])?
    };
    Ok(lhs.tv(&rhs))
}
