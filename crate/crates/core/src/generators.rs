//! Standard graph families and seeded random generators.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges")
}

/// `C_n` for `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Precondition(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    Ok(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges"))
}

/// `rows x cols` grid; vertex `(r, c)` has id `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, edges).expect("grid edges")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("clique edges")
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).expect("biclique edges")
}

/// Triangular prism `C3 x K2`.
pub fn prism() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
        .expect("prism edges")
}

/// The 3-cube `Q3`.
pub fn cube() -> Graph {
    let edges = (0..8usize).flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b)))).filter(|&(u, v)| u < v);
    Graph::from_edges(8, edges.collect::<Vec<_>>()).expect("cube edges")
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("gnp edges")
}

/// `G(n, p)` resampled until connected.
pub fn connected_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if n > 1 && p <= 0.0 {
        return Err(Error::Precondition("p = 0 never yields a connected graph".into()));
    }
    loop {
        let g = gnp(n, p, rng);
        if g.is_connected() {
            return Ok(g);
        }
    }
}

/// Random bipartite graph with sides `0..a`, `a..a+b`, each cross pair kept
/// with probability `p`.
pub fn random_bipartite<R: Rng + ?Sized>(a: usize, b: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(a + b, edges).expect("bipartite edges")
}

const CUBIC_ATTEMPTS: usize = 100_000;

/// Connected simple 3-regular graph from the pairing model: three points per
/// vertex are matched uniformly and the matching is rejected until it yields a
/// simple connected graph.
pub fn random_cubic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Graph> {
    if n % 2 == 1 || n < 4 {
        return Err(Error::Precondition(format!(
            "a cubic graph needs an even vertex count of at least 4, got {n}"
        )));
    }
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    'attempt: for _ in 0..CUBIC_ATTEMPTS {
        points.shuffle(rng);
        let mut g = Graph::empty(n);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.has_edge(u, v) {
                continue 'attempt;
            }
            g.add_edge(u, v)?;
        }
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Internal(format!("no simple connected pairing after {CUBIC_ATTEMPTS} attempts")))
}

/// Proper 2-colouring, each component's smallest vertex on side A. `None` when
/// the graph has an odd cycle.
pub fn bipartition(g: &Graph) -> Option<(VertexSet, VertexSet)> {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u).iter() {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    stack.push(w);
                } else if side[w] == side[u] {
                    return None;
                }
            }
        }
    }
    let a = (0..n).filter(|&v| side[v] == 0).collect();
    let b = (0..n).filter(|&v| side[v] == 1).collect();
    Some((a, b))
}
