//! Batch experiment runner: the user-facing command surface over the
//! library (`ks`, `urn`, `rate`, `coupling`, `stein-check`).
//!
//! Contract highlights:
//!
//! * **Exit codes**: 0 success; 1 a verified bound failed its check;
//!   2 usage (bad flags, out-of-domain or unsupported parameters);
//!   3 resource (DP guard, quadrature budget, I/O).
//! * **Reproducibility**: a (config, seed) pair determines every emitted
//!   byte. Replicate batches derive ChaCha streams from the master seed by
//!   task index, so thread count never changes output.
//! * **Output**: CSV schemas carry a version comment line (`# rate v1`,
//!   `# coupling v1`, `# pmf v1`, `# stein-check v1`). JSON mirrors the
//!   same rows. The environment variable `KSLAW_OUT_DIR` overrides the
//!   *directory* of any `--out` path (and nothing else).
//! * **Config**: `rate` and `coupling` accept `--config <file.json>`
//!   holding an [`ExperimentConfig`]; explicit flags override config
//!   fields.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DegreeLawQuery, Model};
use crate::ks::KsDist;
use crate::metric::{
    kolmogorov_pmf_vs_ks, rate_fit, reports_to_json, wasserstein_pmf_vs_ks, write_reports_csv,
    DistanceMethod, DistanceReport,
};
use crate::pmf::Pmf;
use crate::rng::{parallel_replicates_from, stream_rng};
use crate::stein::grid_bound_checks;
use crate::urn::{
    mean_white, second_moment_white, CoupledSampler, MaximalRw2, UrnSpec,
};

/// Version comment written ahead of coupling CSV output.
pub const COUPLING_CSV_VERSION: &str = "# coupling v1";
/// Version comment written ahead of stein-check output.
pub const STEIN_CSV_VERSION: &str = "# stein-check v1";

// ---------------------------------------------------------------------------
// Experiment configuration.
// ---------------------------------------------------------------------------

/// Which law family a rate experiment measures distances for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RateModel {
    /// Fixed-vertex degrees in the no-self-loop graph (vertices i ≥ 2).
    #[serde(rename = "1", alias = "model1")]
    One,
    /// Fixed-vertex degrees in the self-loop graph (vertices i ≥ 1).
    #[serde(rename = "2", alias = "model2")]
    Two,
    /// The attachment urn white count directly (i ≥ 0 allowed).
    #[serde(rename = "urn")]
    Urn,
}

impl FromStr for RateModel {
    type Err = Error;

    fn from_str(raw: &str) -> Result<Self> {
        match raw {
            "1" | "model1" => Ok(Self::One),
            "2" | "model2" => Ok(Self::Two),
            "urn" => Ok(Self::Urn),
            other => Err(Error::Domain(format!(
                "unknown model '{other}' (expected 1, 2, or urn)"
            ))),
        }
    }
}

impl fmt::Display for RateModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::One => write!(f, "model1"),
            Self::Two => write!(f, "model2"),
            Self::Urn => write!(f, "urn"),
        }
    }
}

/// Output encoding for tabular results.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(raw: &str) -> Result<Self> {
        match raw {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::Domain(format!(
                "unknown format '{other}' (expected csv or json)"
            ))),
        }
    }
}

fn default_i_list() -> Vec<u64> {
    vec![1, 3, 7]
}

fn default_n_list() -> Vec<u64> {
    vec![64, 128, 256, 512, 1024, 2048]
}

fn default_replicates() -> u64 {
    100_000
}

fn default_model() -> RateModel {
    RateModel::Urn
}

/// One experiment description; JSON config files deserialize into this and
/// command-line flags override individual fields.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_model")]
    pub model: RateModel,
    #[serde(default = "default_i_list")]
    pub i_list: Vec<u64>,
    #[serde(default = "default_n_list")]
    pub n_list: Vec<u64>,
    #[serde(default = "default_replicates")]
    pub replicates: u64,
    /// Scaled tail threshold β for coupling-tail reports; when absent each
    /// n uses the canonical β = 3/b.
    #[serde(default)]
    pub beta_threshold: Option<f64>,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            model: default_model(),
            i_list: default_i_list(),
            n_list: default_n_list(),
            replicates: default_replicates(),
            beta_threshold: None,
            output_path: None,
            format: OutputFormat::Csv,
        }
    }
}

impl ExperimentConfig {
    /// Read a config from a JSON file.
    pub fn load(path: &Path) -> Result<Self> {
        let raw = fs::read_to_string(path)?;
        let cfg: Self = serde_json::from_str(&raw)
            .map_err(|e| Error::Domain(format!("config {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Enforce the structural invariants: nonempty lists, n strictly
    /// increasing, replicates ≥ 1, a usable β.
    pub fn validate(&self) -> Result<()> {
        if self.i_list.is_empty() || self.n_list.is_empty() {
            return Err(Error::Domain("i_list and n_list must be nonempty".into()));
        }
        if !self.n_list.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "n_list must be strictly increasing, got {:?}",
                self.n_list
            )));
        }
        if self.replicates < 1 {
            return Err(Error::Domain("replicates must be ≥ 1".into()));
        }
        if let Some(beta) = self.beta_threshold {
            if !(beta > 0.0) {
                return Err(Error::Domain(format!("beta_threshold must be > 0, got {beta}")));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Rate experiment (exact DP route).
// ---------------------------------------------------------------------------

/// Exact law, normalizer, and limit index for one (model, i, n) cell.
fn rate_cell(model: RateModel, i: u64, n: u64) -> Result<(Pmf, f64, f64)> {
    match model {
        RateModel::Urn => {
            let law = UrnSpec::attachment(i).exact_pmf(n)?;
            let b = second_moment_white(i, n).sqrt();
            Ok((law, b, (i as f64 + 1.0) / 2.0))
        }
        RateModel::One => {
            let q = DegreeLawQuery::new(Model::One, n, i)?;
            Ok((q.degree_law_exact()?, q.scaling_b(), q.limit_s()))
        }
        RateModel::Two => {
            let q = DegreeLawQuery::new(Model::Two, n, i)?;
            Ok((q.degree_law_exact()?, q.scaling_b(), q.limit_s()))
        }
    }
}

/// Exact-DP distance rows for every (i, n) pair, with the per-i fitted
/// log–log slope stamped onto that i's rows. Needs ≥ 3 n values for the
/// fit. Deterministic: no randomness is involved.
pub fn rate_reports(model: RateModel, i_list: &[u64], n_list: &[u64]) -> Result<Vec<DistanceReport>> {
    if n_list.len() < 3 {
        return Err(Error::Domain(format!(
            "rate needs at least 3 n values to fit a slope, got {}",
            n_list.len()
        )));
    }
    let mut rows = Vec::with_capacity(i_list.len() * n_list.len());
    for &i in i_list {
        let mut batch = Vec::with_capacity(n_list.len());
        let mut table = Vec::with_capacity(n_list.len());
        for &n in n_list {
            let (law, b, s) = rate_cell(model, i, n).map_err(|e| match e {
                Error::Resource(msg) => {
                    Error::Resource(format!("(i = {i}, n = {n}): {msg}"))
                }
                other => other,
            })?;
            let dist = KsDist::new(s)?;
            let kolmogorov = kolmogorov_pmf_vs_ks(&law, b, &dist)?;
            let wasserstein = wasserstein_pmf_vs_ks(&law, b, &dist)?;
            table.push((n, kolmogorov));
            batch.push(DistanceReport {
                model: model.to_string(),
                i,
                n,
                b,
                kolmogorov,
                wasserstein,
                slope: f64::NAN,
                method: DistanceMethod::ExactDp,
            });
        }
        let fit = rate_fit(&table)?;
        for row in &mut batch {
            row.slope = fit.slope;
        }
        rows.extend(batch);
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Coupling experiment.
// ---------------------------------------------------------------------------

/// One row of a coupling experiment at fixed (i, n).
#[derive(Clone, Debug, Serialize)]
pub struct CouplingRow {
    pub i: u64,
    pub n: u64,
    pub replicates: u64,
    /// Disagreement frequency of the maximal coupling (estimates the
    /// total-variation distance, the floor for every coupling).
    pub p_neq: f64,
    pub p_neq_ci95: f64,
    /// Disagreement frequency of the shared-uniform chain coupling.
    pub p_neq_chain: f64,
    pub p_chain_ci95: f64,
    /// Scaled tail threshold β used for this row.
    pub beta: f64,
    /// P(|W − V·W″| > β·b) under the full joint construction.
    pub p_tail: f64,
    pub p_tail_ci95: f64,
    /// E|W − V·W″|/b, the scaled mean coupling gap.
    pub mean_abs_gap: f64,
}

fn ci95(p: f64, n: f64) -> f64 {
    1.96 * (p * (1.0 - p) / n).sqrt()
}

/// Monte Carlo coupling summary per n. Each n uses two dedicated stream
/// blocks under the master seed (maximal draws, then joint draws), so rows
/// are reproducible independently of thread count and of each other.
pub fn coupling_rows(
    i: u64,
    n_list: &[u64],
    replicates: u64,
    beta_threshold: Option<f64>,
    seed: u64,
) -> Result<Vec<CouplingRow>> {
    if replicates < 1 {
        return Err(Error::Domain("coupling needs replicates ≥ 1".into()));
    }
    let reps = replicates as usize;
    let mut rows = Vec::with_capacity(n_list.len());
    for (idx, &n) in n_list.iter().enumerate() {
        let maximal = MaximalRw2::new(i, n)?;
        let chain = CoupledSampler::new(i, n)?;
        let b = second_moment_white(i, n).sqrt();
        let beta = beta_threshold.unwrap_or(3.0 / b);
        let gap_cut = beta * b;

        let base = (2 * idx as u64) << 32;
        let neq: u64 = parallel_replicates_from(seed, base, reps, |rng| {
            let (r, w2) = maximal.draw(rng);
            u64::from(r != w2)
        })
        .into_iter()
        .sum();

        let joint: Vec<(bool, f64)> = parallel_replicates_from(seed, base + (1 << 32), reps, |rng| {
            let jc = chain.draw_joint(rng).expect("joint draw cannot fail for n ≥ 2");
            (jc.r != jc.w2, jc.gap())
        });
        let chain_neq = joint.iter().filter(|&&(ne, _)| ne).count() as f64;
        let tail = joint.iter().filter(|&&(_, g)| g > gap_cut).count() as f64;
        let gap_sum: f64 = joint.iter().map(|&(_, g)| g).sum();

        let rf = reps as f64;
        let p_neq = neq as f64 / rf;
        let p_neq_chain = chain_neq / rf;
        let p_tail = tail / rf;
        rows.push(CouplingRow {
            i,
            n,
            replicates,
            p_neq,
            p_neq_ci95: ci95(p_neq, rf),
            p_neq_chain,
            p_chain_ci95: ci95(p_neq_chain, rf),
            beta,
            p_tail,
            p_tail_ci95: ci95(p_tail, rf),
            mean_abs_gap: gap_sum / rf / b,
        });
    }
    Ok(rows)
}

fn coupling_csv<W: std::io::Write>(mut out: W, rows: &[CouplingRow]) -> Result<()> {
    writeln!(out, "{COUPLING_CSV_VERSION}")?;
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(e.into()))?;
    }
    w.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Argument surface.
// ---------------------------------------------------------------------------

/// Distribution family, urn dynamics, and convergence-rate experiments.
#[derive(Parser, Debug)]
#[command(name = "kslaw", version, about)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate or sample the limit distribution family.
    Ks {
        #[command(subcommand)]
        op: KsOp,
    },
    /// Simulate urns, compute exact laws, or print closed-form moments.
    Urn {
        #[command(subcommand)]
        op: UrnOp,
    },
    /// Exact-DP convergence-rate table with fitted log–log slope.
    Rate(RateArgs),
    /// Monte Carlo coupling disagreement and tail reports.
    Coupling(CouplingArgs),
    /// Verify the analytic grid bounds for one s (exit 0 iff all hold).
    SteinCheck(SteinCheckArgs),
}

#[derive(Subcommand, Debug)]
enum KsOp {
    /// Density at x.
    Density {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        x: f64,
    },
    /// Cumulative distribution function at x.
    Cdf {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        x: f64,
    },
    /// Quantile at probability p.
    Quantile {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        p: f64,
    },
    /// Raw moment of order r (real r > −1).
    Moment {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        r: f64,
    },
    /// Draw samples, one per line.
    Sample {
        #[arg(long)]
        s: f64,
        /// Number of samples.
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Urn scheme and starting counts shared by the urn subcommands. The
/// default scheme (2,0;1,1) is the attachment urn.
#[derive(Args, Debug)]
struct UrnSpecArgs {
    /// Black balls added when black is drawn.
    #[arg(long, default_value_t = 2)]
    alpha: u64,
    /// White balls added when black is drawn.
    #[arg(long, default_value_t = 0)]
    beta: u64,
    /// Black balls added when white is drawn.
    #[arg(long, default_value_t = 1)]
    gamma: u64,
    /// White balls added when white is drawn.
    #[arg(long, default_value_t = 1)]
    delta: u64,
    /// Initial black count.
    #[arg(long)]
    i: u64,
    /// Initial white count.
    #[arg(long, default_value_t = 1)]
    j: u64,
}

impl UrnSpecArgs {
    fn spec(&self) -> Result<UrnSpec> {
        UrnSpec::new(self.alpha, self.beta, self.gamma, self.delta, self.i, self.j)
    }

    fn is_attachment_default(&self) -> bool {
        (self.alpha, self.beta, self.gamma, self.delta, self.j) == (2, 0, 1, 1, 1)
    }
}

#[derive(Subcommand, Debug)]
enum UrnOp {
    /// Simulate the white count after n draws, one value per line.
    Simulate {
        #[command(flatten)]
        spec: UrnSpecArgs,
        /// Number of draws.
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        replicates: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact white-count law by dynamic programming (balanced urns).
    Exact {
        #[command(flatten)]
        spec: UrnSpecArgs,
        /// Number of draws.
        #[arg(long)]
        n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
    },
    /// Closed-form mean and second moment (attachment urn only).
    Moments {
        #[command(flatten)]
        spec: UrnSpecArgs,
        /// Number of draws.
        #[arg(long)]
        n: u64,
    },
}

#[derive(Args, Debug)]
struct RateArgs {
    /// JSON experiment config; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Law family: 1, 2, or urn.
    #[arg(long)]
    model: Option<RateModel>,
    /// Vertex/initial-black indices (repeat or comma-separate).
    #[arg(long = "i", value_delimiter = ',', num_args = 1..)]
    i_list: Option<Vec<u64>>,
    /// Graph/urn sizes, strictly increasing (repeat or comma-separate).
    #[arg(long = "n", value_delimiter = ',', num_args = 1..)]
    n_list: Option<Vec<u64>>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Args, Debug)]
struct CouplingArgs {
    /// JSON experiment config; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Initial black count of the attachment urn.
    #[arg(long)]
    i: Option<u64>,
    /// Urn sizes (repeat or comma-separate).
    #[arg(long = "n", value_delimiter = ',', num_args = 1..)]
    n_list: Option<Vec<u64>>,
    #[arg(long)]
    replicates: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Scaled tail threshold β (default: 3/b per n).
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Args, Debug)]
struct SteinCheckArgs {
    /// Distribution index s (must be ≥ 1; smaller s are out of scope).
    #[arg(long)]
    s: f64,
    /// Positive evaluation grid as MAX:COUNT (x_k = k·MAX/COUNT).
    #[arg(long, default_value = "6:60")]
    grid: String,
}

// ---------------------------------------------------------------------------
// Dispatch.
// ---------------------------------------------------------------------------

/// Map library errors onto the exit-code contract.
fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Domain(_) | Error::Unsupported(_) => 2,
        Error::Inconsistent(_) => 1,
        Error::Quadrature { .. } | Error::Resource(_) | Error::Io(_) => 3,
    }
}

/// Apply the output-directory override: if `KSLAW_OUT_DIR` is set, files go
/// into that directory under their original file name.
fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os("KSLAW_OUT_DIR") {
        Some(dir) if !dir.is_empty() => match path.file_name() {
            Some(name) => Path::new(&dir).join(name),
            None => path.to_path_buf(),
        },
        _ => path.to_path_buf(),
    }
}

/// Write `payload` to the resolved path, or to stdout when no path given.
fn emit(out: Option<&Path>, payload: &[u8]) -> Result<()> {
    match out {
        Some(path) => {
            let resolved = resolve_out(path);
            fs::write(&resolved, payload)?;
            Ok(())
        }
        None => {
            use std::io::Write as _;
            std::io::stdout().write_all(payload)?;
            Ok(())
        }
    }
}

fn run_ks(op: KsOp) -> Result<i32> {
    match op {
        KsOp::Density { s, x } => println!("{}", KsDist::new(s)?.density(x)?),
        KsOp::Cdf { s, x } => println!("{}", KsDist::new(s)?.cdf(x)?),
        KsOp::Quantile { s, p } => println!("{}", KsDist::new(s)?.quantile(p)?),
        KsOp::Moment { s, r } => println!("{}", KsDist::new(s)?.moment(r)?),
        KsOp::Sample { s, n, seed } => {
            let dist = KsDist::new(s)?;
            let mut rng = stream_rng(seed, 0);
            for _ in 0..n {
                println!("{}", dist.sample(&mut rng));
            }
        }
    }
    Ok(0)
}

fn run_urn(op: UrnOp) -> Result<i32> {
    match op {
        UrnOp::Simulate { spec, n, replicates, seed } => {
            let urn = spec.spec()?;
            let values = parallel_replicates_from(seed, 0, replicates as usize, |rng| {
                urn.simulate(n, rng)
            });
            let mut out = String::with_capacity(values.len() * 4);
            for v in values {
                out.push_str(&v.to_string());
                out.push('\n');
            }
            print!("{out}");
        }
        UrnOp::Exact { spec, n, out, format } => {
            let pmf = spec.spec()?.exact_pmf(n)?;
            let payload = match format {
                OutputFormat::Csv => {
                    let mut buf = Vec::new();
                    pmf.to_csv(&mut buf)?;
                    buf
                }
                OutputFormat::Json => {
                    let mut text = pmf.to_json();
                    text.push('\n');
                    text.into_bytes()
                }
            };
            emit(out.as_deref(), &payload)?;
        }
        UrnOp::Moments { spec, n } => {
            if !spec.is_attachment_default() {
                return Err(Error::Unsupported(
                    "closed-form moments exist for the attachment urn \
                     (2,0;1,1) with one initial white ball only"
                        .into(),
                ));
            }
            println!("mean {}", mean_white(spec.i, n));
            println!("second {}", second_moment_white(spec.i, n));
        }
    }
    Ok(0)
}

fn run_rate(args: RateArgs) -> Result<i32> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(m) = args.model {
        cfg.model = m;
    }
    if let Some(i) = args.i_list {
        cfg.i_list = i;
    }
    if let Some(n) = args.n_list {
        cfg.n_list = n;
    }
    if let Some(out) = args.out {
        cfg.output_path = Some(out);
    }
    if let Some(f) = args.format {
        cfg.format = f;
    }
    cfg.validate()?;

    let rows = rate_reports(cfg.model, &cfg.i_list, &cfg.n_list)?;
    let payload = match cfg.format {
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            write_reports_csv(&mut buf, &rows)?;
            buf
        }
        OutputFormat::Json => {
            let mut text = reports_to_json(&rows)?;
            text.push('\n');
            text.into_bytes()
        }
    };
    emit(cfg.output_path.as_deref(), &payload)?;
    Ok(0)
}

fn run_coupling(args: CouplingArgs) -> Result<i32> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    // Coupling is an urn-side experiment: a single i, a list of n.
    let i = args.i.unwrap_or_else(|| cfg.i_list.first().copied().unwrap_or(1));
    if let Some(n) = args.n_list {
        cfg.n_list = n;
    }
    if let Some(r) = args.replicates {
        cfg.replicates = r;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(b) = args.beta {
        cfg.beta_threshold = Some(b);
    }
    if let Some(out) = args.out {
        cfg.output_path = Some(out);
    }
    if let Some(f) = args.format {
        cfg.format = f;
    }
    cfg.validate()?;

    let rows = coupling_rows(i, &cfg.n_list, cfg.replicates, cfg.beta_threshold, cfg.seed)?;
    let payload = match cfg.format {
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            coupling_csv(&mut buf, &rows)?;
            buf
        }
        OutputFormat::Json => {
            let mut text = serde_json::to_string_pretty(&rows)
                .map_err(|e| Error::Inconsistent(format!("JSON serialization failed: {e}")))?;
            text.push('\n');
            text.into_bytes()
        }
    };
    emit(cfg.output_path.as_deref(), &payload)?;
    Ok(0)
}

fn run_stein_check(args: SteinCheckArgs) -> Result<i32> {
    let (max, count) = parse_grid(&args.grid)?;
    let xs: Vec<f64> = (1..=count).map(|k| k as f64 * max / count as f64).collect();
    let checks = grid_bound_checks(args.s, &xs)?;
    println!("{STEIN_CSV_VERSION}");
    println!("name,holds,margin");
    let mut all_hold = true;
    for c in &checks {
        println!("{},{},{}", c.name, c.holds, c.margin);
        all_hold &= c.holds;
    }
    Ok(if all_hold { 0 } else { 1 })
}

fn parse_grid(raw: &str) -> Result<(f64, usize)> {
    let mut parts = raw.splitn(2, ':');
    let bad = || Error::Domain(format!("grid must be MAX:COUNT with MAX > 0, COUNT ≥ 1, got '{raw}'"));
    let max: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let count: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if !(max > 0.0) || count < 1 {
        return Err(bad());
    }
    Ok((max, count))
}

/// Parse argv, execute, and return the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Ks { op } => run_ks(op),
        Cmd::Urn { op } => run_urn(op),
        Cmd::Rate(args) => run_rate(args),
        Cmd::Coupling(args) => run_coupling(args),
        Cmd::SteinCheck(args) => run_stein_check(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}
