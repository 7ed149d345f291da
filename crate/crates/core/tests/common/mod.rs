//! Seeded graph corpora shared by the integration tests.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepkit::generators::{complete, complete_bipartite, connected_gnp, cycle, grid, path};
use sepkit::Graph;

pub const SEED: u64 = 0x5eb_a12a;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

/// Paths, cycles, grids up to 3x4, cliques and complete bipartite graphs.
pub fn families() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=12 {
        out.push((format!("P{n}"), path(n)));
    }
    for n in 3..=12 {
        out.push((format!("C{n}"), cycle(n).unwrap()));
    }
    for r in 1..=3 {
        for c in r..=4 {
            out.push((format!("grid{r}x{c}"), grid(r, c)));
        }
    }
    for n in 1..=8 {
        out.push((format!("K{n}"), complete(n)));
    }
    for a in 1..=4 {
        for b in a..=(10 - a).min(6) {
            out.push((format!("K{a},{b}"), complete_bipartite(a, b)));
        }
    }
    out
}

/// `per_p` connected `G(n, p)` graphs for each `p` in {0.2, 0.4, 0.6}, with
/// `n` cycling through `4..=12`.
pub fn random_connected(per_p: usize) -> Vec<(String, Graph)> {
    let mut r = rng(1);
    let mut out = Vec::new();
    for p in [0.2, 0.4, 0.6] {
        for i in 0..per_p {
            let n = 4 + i % 9;
            out.push((format!("gnp({n},{p})#{i}"), connected_gnp(n, p, &mut r).unwrap()));
        }
    }
    out
}

/// The solver corpus: 210 random connected graphs plus the families.
pub fn solver_corpus() -> Vec<(String, Graph)> {
    let mut out = random_connected(70);
    out.extend(families());
    out
}

pub fn random_weights(g: &Graph, r: &mut ChaCha8Rng) -> Graph {
    let w = (0..g.n()).map(|_| r.gen_range(1..=5)).collect();
    g.clone().with_weights(w).unwrap()
}
