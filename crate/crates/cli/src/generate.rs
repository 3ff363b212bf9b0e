//! Seeded synthetic graphs.
//!
//! Node ids are `0..n`. Edges are emitted in ascending `(u, v)` order and
//! weights are drawn afterwards in that same order, so the output depends only
//! on the parameters and the seed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Erdős–Rényi G(n, p).
    Gnp,
    /// Barabási–Albert preferential attachment.
    PowerLaw,
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gnp" => Ok(Model::Gnp),
            "powerlaw" => Ok(Model::PowerLaw),
            _ => Err(Error::Usage(format!("unknown model {s:?} (expected gnp or powerlaw)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightModel {
    /// Uniform on (0, 1].
    Uniform01,
    /// Uniform integers in `lo..=hi`, `lo >= 1`.
    Integer { lo: u32, hi: u32 },
}

impl FromStr for WeightModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "uniform01" {
            return Ok(WeightModel::Uniform01);
        }
        let bad = || Error::Usage(format!("bad weight model {s:?} (expected uniform01 or integer:lo:hi with 1 <= lo <= hi)"));
        let rest = s.strip_prefix("integer:").ok_or_else(bad)?;
        let (lo, hi) = rest.split_once(':').ok_or_else(bad)?;
        let lo: u32 = lo.parse().map_err(|_| bad())?;
        let hi: u32 = hi.parse().map_err(|_| bad())?;
        if lo == 0 || lo > hi {
            return Err(bad());
        }
        Ok(WeightModel::Integer { lo, hi })
    }
}

impl fmt::Display for WeightModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightModel::Uniform01 => f.write_str("uniform01"),
            WeightModel::Integer { lo, hi } => write!(f, "integer:{lo}:{hi}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub nodes: usize,
    pub model: Model,
    pub seed: u64,
    pub weights: WeightModel,
    /// Edges added per new node (power-law); also sets the default gnp
    /// density so both models have about `m * n` edges.
    pub m: usize,
    /// Explicit gnp edge probability.
    pub p: Option<f64>,
}

impl GenConfig {
    pub fn new(nodes: usize, model: Model, seed: u64) -> Self {
        GenConfig { nodes, model, seed, weights: WeightModel::Uniform01, m: 3, p: None }
    }

    /// Edge probability used by the gnp model.
    pub fn gnp_p(&self) -> f64 {
        match self.p {
            Some(p) => p,
            None if self.nodes < 2 => 0.0,
            None => (2.0 * self.m as f64 / (self.nodes - 1) as f64).min(1.0),
        }
    }
}

pub fn generate(cfg: &GenConfig) -> Result<Vec<(u64, u64, f64)>> {
    if let Some(p) = cfg.p {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Usage(format!("edge probability {p} is outside [0, 1]")));
        }
    }
    if cfg.model == Model::PowerLaw && cfg.m == 0 {
        return Err(Error::Usage("power-law model needs m >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pairs = match cfg.model {
        Model::Gnp => gnp(cfg.nodes, cfg.gnp_p(), &mut rng),
        Model::PowerLaw => barabasi_albert(cfg.nodes, cfg.m, &mut rng),
    };
    pairs.sort_unstable();
    Ok(pairs.into_iter().map(|(u, v)| (u, v, draw_weight(cfg.weights, &mut rng))).collect())
}

pub fn format_edges(edges: &[(u64, u64, f64)]) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    for (u, v, w) in edges {
        writeln!(out, "{u} {v} {w}").unwrap();
    }
    out
}

fn draw_weight(model: WeightModel, rng: &mut ChaCha8Rng) -> f64 {
    match model {
        // gen::<f64>() is in [0, 1); flip it so zero is impossible
        WeightModel::Uniform01 => 1.0 - rng.gen::<f64>(),
        WeightModel::Integer { lo, hi } => f64::from(rng.gen_range(lo..=hi)),
    }
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for u in 0..n as u64 {
        for v in (u + 1)..n as u64 {
            if rng.gen_bool(p) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Starts from a clique on `m + 1` nodes; every later node attaches to `m`
/// distinct earlier nodes chosen with probability proportional to degree.
fn barabasi_albert(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<(u64, u64)> {
    let seed_size = (m + 1).min(n);
    let mut out = Vec::new();
    // every edge endpoint, so a uniform pick is a degree-weighted pick
    let mut endpoints: Vec<u64> = Vec::new();
    for u in 0..seed_size as u64 {
        for v in (u + 1)..seed_size as u64 {
            out.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for new in seed_size as u64..n as u64 {
        targets.clear();
        while targets.len() < m {
            let t = *endpoints.choose(rng).expect("seed clique has edges");
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            out.push((t, new));
            endpoints.extend([t, new]);
        }
    }
    out
}
