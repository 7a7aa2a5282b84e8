//! Generic rigidity matrices and the predicates built on them.
//!
//! For a `d`-embedding `f` of a graph on `n` vertices the rigidity matrix has
//! `d * n` rows (vertex-major, coordinate-minor) and one column per edge. The
//! column of `{v < u}` carries `f(v) - f(u)` on the rows of `v` and
//! `f(u) - f(v)` on the rows of `u`. A stress is a kernel vector. For the
//! complete graph on `n >= d + 1` vertices the image has codimension
//! `d(d+1)/2` (the infinitesimal isometries), which gives [`target_rank`].
//!
//! "Generic" is realized as the maximum rank over seeded random
//! configurations; each trial can only under-estimate the generic rank.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::field::{FieldMatrix, GenericConfiguration, PrimeField};
use crate::graph::Graph;
use crate::trial_seeds;

pub fn rigidity_matrix(g: &Graph, cfg: &GenericConfiguration) -> Result<FieldMatrix> {
    if cfg.n != g.n() {
        return invalid(format!("configuration has {} vertices, graph has {}", cfg.n, g.n()));
    }
    let d = cfg.d;
    let f = cfg.field();
    let mut m = FieldMatrix::zeros(f, d * g.n(), g.edge_count());
    for (col, e) in g.edges().enumerate() {
        let (v, u) = (e.u(), e.v());
        for i in 0..d {
            let diff = f.sub(cfg.coord(i, v), cfg.coord(i, u));
            m.set((v - 1) * d + i, col, diff);
            m.set((u - 1) * d + i, col, f.neg(diff));
        }
    }
    Ok(m)
}

/// Generic rank of the rigidity matrix of the complete graph on `n` vertices.
pub fn target_rank(n: usize, d: usize) -> usize {
    if n > d {
        d * n - d * (d + 1) / 2
    } else {
        n * n.saturating_sub(1) / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityReport {
    pub d: usize,
    pub n: usize,
    pub e: usize,
    pub rank: usize,
    /// Dimension of the space of stresses, `e - rank`.
    pub stress_dim: usize,
    pub target_rank: usize,
    pub is_stress_free: bool,
    pub is_rigid: bool,
    pub seeds: Vec<u64>,
    /// Rank observed in each trial, in seed order.
    pub trial_ranks: Vec<usize>,
    pub trials: usize,
}

impl RigidityReport {
    pub fn trials_agree(&self) -> bool {
        self.trial_ranks.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn analyze_rigidity(g: &Graph, d: usize, trials: usize, base_seed: u64) -> Result<RigidityReport> {
    if trials == 0 {
        return invalid("at least one trial is required");
    }
    analyze_rigidity_with_seeds(g, d, &trial_seeds(base_seed, trials), PrimeField::DEFAULT)
}

/// One trial per seed; the reported rank is the maximum.
pub fn analyze_rigidity_with_seeds(
    g: &Graph,
    d: usize,
    seeds: &[u64],
    field: PrimeField,
) -> Result<RigidityReport> {
    if d == 0 {
        return invalid("dimension d must be at least 1");
    }
    if seeds.is_empty() {
        return invalid("at least one seed is required");
    }
    let trial_ranks = seeds
        .iter()
        .map(|&s| {
            let cfg = GenericConfiguration::with_field(field, s, g.n(), d);
            rigidity_matrix(g, &cfg).map(|m| m.rank())
        })
        .collect::<Result<Vec<_>>>()?;
    let rank = trial_ranks.iter().copied().max().unwrap_or(0);
    let e = g.edge_count();
    let target = target_rank(g.n(), d);
    Ok(RigidityReport {
        d,
        n: g.n(),
        e,
        rank,
        stress_dim: e - rank,
        target_rank: target,
        is_stress_free: rank == e,
        is_rigid: rank == target,
        seeds: seeds.to_vec(),
        trial_ranks,
        trials: seeds.len(),
    })
}

/// Convenience: stress dimension with the default trials and seed.
pub fn stress_dimension(g: &Graph, d: usize) -> Result<usize> {
    Ok(analyze_rigidity(g, d, crate::DEFAULT_TRIALS, crate::DEFAULT_SEED)?.stress_dim)
}

pub fn is_stress_free(g: &Graph, d: usize) -> Result<bool> {
    Ok(stress_dimension(g, d)? == 0)
}
