//! Preferential-attachment graph growth and the exact degree laws of fixed
//! vertices.
//!
//! Two sequential models are implemented. In model 1 the seed graph has
//! vertices 1 and 2 joined by a single edge (directed 2 → 1); each new vertex
//! m+1 sends one edge to an existing vertex chosen with probability
//! proportional to its current degree (degree = in-degree + out-degree). In
//! model 2 the seed is a single vertex with a self-loop; the new vertex m+1
//! may also attach to itself with probability 1/(2m+1), and a loop adds two
//! to the degree.
//!
//! The degree W_{n,i} of a fixed vertex i evolves as an attachment urn from
//! the `urn` module:
//!
//! * model 1, 2 ≤ i ≤ n:  W_{n,i} ~ (2,0;1,1)^{n−i}_{2i−3, 1},
//! * model 2, 1 ≤ i ≤ n:  W_{n,i} ~ (2,0;1,1)^{n−i+1}_{2i−2, 1}:
//!
//! at the moment vertex i appears it has degree 1 (model 1) and the remaining
//! degree mass is 2i−3; each later edge either hits vertex i (white draw:
//! degree +1, one unit of other mass enters) or not (black draw: two units of
//! other mass). Normalized by b = (E W²)^{1/2}, the degree converges to the
//! K_s law with s = i−1 (model 1), s = i−1/2 (model 2) — both instances of
//! s = (i_urn+1)/2 for the mapped urn.
//!
//! Growth uses the endpoint-multiset trick: keep every edge endpoint in a
//! flat list; a uniform entry is exactly a degree-proportional vertex, and
//! model 2's extra self-loop slot makes the total 2m+1.

use std::io::Write as IoWrite;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pmf::Pmf;
use crate::urn::{self, UrnSpec};

/// Which attachment model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    /// Seed: edge 2 → 1; no self-loops; n vertices carry n−1 edges.
    One,
    /// Seed: self-loop at vertex 1; self-loops allowed; n vertices, n edges.
    Two,
}

impl Model {
    /// Smallest legal vertex count.
    pub fn min_n(self) -> u64 {
        match self {
            Model::One => 2,
            Model::Two => 1,
        }
    }

    /// Smallest vertex whose degree law maps to an urn.
    pub fn min_i(self) -> u64 {
        match self {
            Model::One => 2,
            Model::Two => 1,
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Model::One => write!(f, "model1"),
            Model::Two => write!(f, "model2"),
        }
    }
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "model1" => Ok(Model::One),
            "2" | "model2" => Ok(Model::Two),
            other => Err(Error::Domain(format!(
                "unknown model '{other}' (expected 1, 2, model1, or model2)"
            ))),
        }
    }
}

/// A grown graph: degrees by vertex label plus the edge list.
#[derive(Clone, Debug)]
pub struct GraphTrace {
    pub model: Model,
    pub n: u64,
    /// degrees[v-1] is the degree of vertex v.
    degrees: Vec<u64>,
    /// (source, target) pairs in creation order; source is the newer vertex.
    edges: Vec<(u64, u64)>,
}

impl GraphTrace {
    /// Degree of vertex v (1-based label).
    pub fn degree(&self, v: u64) -> u64 {
        self.degrees[(v - 1) as usize]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn edges(&self) -> &[(u64, u64)] {
        &self.edges
    }

    /// Write the edge list as CSV (`source,target` header included).
    pub fn edges_csv<W: IoWrite>(&self, mut out: W) -> Result<()> {
        writeln!(out, "source,target")?;
        for &(s, t) in &self.edges {
            writeln!(out, "{s},{t}")?;
        }
        Ok(())
    }
}

/// Grow a graph with n vertices (model 1 needs n ≥ 2, model 2 needs n ≥ 1).
pub fn grow<R: Rng + ?Sized>(model: Model, n: u64, rng: &mut R) -> Result<GraphTrace> {
    if n < model.min_n() {
        return Err(Error::Domain(format!(
            "{model} needs at least {} vertices, got {n}",
            model.min_n()
        )));
    }
    let mut degrees: Vec<u64>;
    let mut edges: Vec<(u64, u64)>;
    // Flat multiset of edge endpoints; uniform pick = degree-proportional vertex.
    let mut endpoints: Vec<u64>;
    match model {
        Model::One => {
            degrees = vec![1, 1];
            edges = vec![(2, 1)];
            endpoints = vec![2, 1];
            degrees.reserve(n as usize);
            endpoints.reserve(2 * n as usize);
            for m in 2..n {
                // Adding vertex m+1 to G_m: 2(m-1) endpoints, all existing.
                let slot = rng.random_range(0..endpoints.len());
                let target = endpoints[slot];
                degrees[(target - 1) as usize] += 1;
                degrees.push(1);
                edges.push((m + 1, target));
                endpoints.push(target);
                endpoints.push(m + 1);
            }
        }
        Model::Two => {
            degrees = vec![2];
            edges = vec![(1, 1)];
            endpoints = vec![1, 1];
            degrees.reserve(n as usize);
            endpoints.reserve(2 * n as usize + 1);
            for m in 1..n {
                // 2m endpoint slots plus one extra; the extra slot (index 2m)
                // is the self-loop, hit with probability 1/(2m+1).
                let slot = rng.random_range(0..=endpoints.len());
                if slot == endpoints.len() {
                    degrees.push(2);
                    edges.push((m + 1, m + 1));
                    endpoints.push(m + 1);
                    endpoints.push(m + 1);
                } else {
                    let target = endpoints[slot];
                    degrees[(target - 1) as usize] += 1;
                    degrees.push(1);
                    edges.push((m + 1, target));
                    endpoints.push(target);
                    endpoints.push(m + 1);
                }
            }
        }
    }
    Ok(GraphTrace { model, n, degrees, edges })
}

/// A fixed-vertex degree question: which model, how many vertices, which
/// vertex — with the mapped urn exposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeLawQuery {
    pub model: Model,
    pub n: u64,
    pub i: u64,
}

impl DegreeLawQuery {
    pub fn new(model: Model, n: u64, i: u64) -> Result<Self> {
        if i < model.min_i() || i > n {
            return Err(Error::Domain(format!(
                "{model} degree law needs {} ≤ i ≤ n, got i={i}, n={n}",
                model.min_i()
            )));
        }
        Ok(Self { model, n, i })
    }

    /// Initial black-ball count of the mapped urn.
    pub fn urn_black(&self) -> u64 {
        match self.model {
            Model::One => 2 * self.i - 3,
            Model::Two => 2 * self.i - 2,
        }
    }

    /// Number of urn draws (non-negative by the range precondition).
    pub fn draws(&self) -> u64 {
        match self.model {
            Model::One => self.n - self.i,
            Model::Two => self.n - self.i + 1,
        }
    }

    /// The mapped attachment urn (always a single initial white ball).
    pub fn urn(&self) -> UrnSpec {
        UrnSpec::attachment(self.urn_black())
    }

    /// Exact law of W_{n,i} via the urn DP.
    pub fn degree_law_exact(&self) -> Result<Pmf> {
        self.urn().exact_pmf(self.draws())
    }

    /// E W_{n,i} in closed form.
    pub fn mean(&self) -> f64 {
        urn::mean_white(self.urn_black(), self.draws())
    }

    /// b² = E W_{n,i}² in closed form.
    pub fn b_squared(&self) -> f64 {
        urn::second_moment_white(self.urn_black(), self.draws())
    }

    /// The normalization b = (E W_{n,i}²)^{1/2}.
    pub fn scaling_b(&self) -> f64 {
        self.b_squared().sqrt()
    }

    /// Index of the limiting K_s law: i−1 (model 1), i−1/2 (model 2); equals
    /// (i_urn+1)/2 for the mapped urn.
    pub fn limit_s(&self) -> f64 {
        (self.urn_black() + 1) as f64 / 2.0
    }
}
