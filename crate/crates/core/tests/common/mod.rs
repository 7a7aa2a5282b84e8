#![allow(dead_code)]

use minorstress::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph on `n` vertices with edge probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.random_bool(p) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    perm
}

/// Graph on `n` vertices whose edges are the set bits of `mask` over the
/// lexicographic list of pairs.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n);
    let mut bit = 0;
    for a in 1..=n {
        for b in a + 1..=n {
            if mask >> bit & 1 == 1 {
                g.add_edge(a, b).unwrap();
            }
            bit += 1;
        }
    }
    g
}

pub fn edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().map(|e| (e.u(), e.v())).collect()
}
