//! Seeded random graphs for property checks.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::array::key;

use super::{Graph, GraphBuilder};

#[derive(Debug, Clone, PartialEq)]
pub struct RandomGraphConfig {
    /// Vertex count is drawn uniformly from `1..=max_vertices`.
    pub max_vertices: usize,
    /// Edge count is drawn uniformly from `0..=max_edges`.
    pub max_edges: usize,
    /// Chance that an edge receives one extra source and, independently,
    /// one extra target.
    pub hyperedge_probability: f64,
}

impl Default for RandomGraphConfig {
    fn default() -> Self {
        RandomGraphConfig {
            max_vertices: 8,
            max_edges: 20,
            hyperedge_probability: 0.1,
        }
    }
}

/// Draws one graph. Self-loops and parallel edges occur naturally; weights
/// are nonzero draws from `alg`.
///
/// # Panics
/// If the algebra has no nonzero member.
pub fn random_graph(alg: &Algebra, cfg: &RandomGraphConfig, rng: &mut dyn RngCore) -> Graph {
    let vertices = rng.gen_range(1..=cfg.max_vertices.max(1));
    let edges = rng.gen_range(0..=cfg.max_edges);
    let weight = |rng: &mut dyn RngCore| {
        alg.sample_nonzero(rng)
            .expect("algebra has a nonzero member")
    };
    let mut builder = GraphBuilder::new();
    for e in 0..edges {
        let edge = key(&format!("e{e:02}"));
        let endpoint = |rng: &mut dyn RngCore| key(&format!("v{}", rng.gen_range(0..vertices)));
        let (src, dst) = (endpoint(rng), endpoint(rng));
        let (w_out, w_in) = (weight(rng), weight(rng));
        builder
            .add(
                edge.clone(),
                src.clone(),
                dst.clone(),
                w_out.clone(),
                w_in.clone(),
            )
            .expect("fresh edge");
        if rng.gen_bool(cfg.hyperedge_probability) {
            let extra = endpoint(rng);
            if extra != src {
                // Reuse the first target so only the source set grows.
                let w = weight(rng);
                builder
                    .add(edge.clone(), extra, dst.clone(), w, w_in.clone())
                    .expect("new source");
            }
        }
        if rng.gen_bool(cfg.hyperedge_probability) {
            let extra = endpoint(rng);
            if extra != dst {
                let w = weight(rng);
                builder
                    .add(edge.clone(), src.clone(), extra, w_out.clone(), w)
                    .expect("new target");
            }
        }
    }
    builder.build()
}

/// `count` graphs from a generator seeded with `seed`.
pub fn corpus(alg: &Algebra, cfg: &RandomGraphConfig, count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_graph(alg, cfg, &mut rng))
        .collect()
}
