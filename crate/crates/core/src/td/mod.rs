//! Tree decompositions: assembly from a recursion tree, validation, a simple
//! elimination heuristic, PACE-style text I/O and the separator DP.

mod dp;

pub use dp::max_minimal_separator_dp;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpt::DecompNode;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    /// Vertex count of the decomposed graph.
    pub n: usize,
    pub bags: Vec<VertexSet>,
    /// Tree edges between bag indices.
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Largest bag size minus one; zero for an empty decomposition.
    pub fn width(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// One bag holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition {
            n: g.n(),
            bags: if g.n() == 0 { Vec::new() } else { vec![g.vertices()] },
            edges: Vec::new(),
        }
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// Checks vertex cover, edge cover and the subtree property, and that the
/// bag graph is a tree.
pub fn validate_td(g: &Graph, t: &TreeDecomposition) -> bool {
    let nb = t.bags.len();
    if t.n != g.n() || t.bags.iter().any(|b| b.last().is_some_and(|v| v >= g.n())) {
        return false;
    }
    if nb == 0 {
        return g.n() == 0;
    }
    if t.edges.len() != nb - 1 || t.edges.iter().any(|&(a, b)| a >= nb || b >= nb || a == b) {
        return false;
    }
    let mut uf = UnionFind::new(nb);
    for &(a, b) in &t.edges {
        if !uf.union(a, b) {
            return false;
        }
    }
    let mut covered = VertexSet::new(g.n());
    for b in &t.bags {
        covered.union_with(b);
    }
    if covered != g.vertices() {
        return false;
    }
    if !g.edges().all(|(u, v)| t.bags.iter().any(|b| b.contains(u) && b.contains(v))) {
        return false;
    }
    // In a tree, the bags holding v are connected iff they span |bags| - 1 edges.
    (0..g.n()).all(|v| {
        let holding = t.bags.iter().filter(|b| b.contains(v)).count();
        let linking = t
            .edges
            .iter()
            .filter(|&&(a, b)| t.bags[a].contains(v) && t.bags[b].contains(v))
            .count();
        linking + 1 == holding
    })
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    /// False if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Smaller root wins so results do not depend on call order.
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

/// Builds the decomposition described by a recursion tree: leaves become
/// bags, each separator node becomes a bag linked to the first bag of every
/// child decomposition that contains it.
pub fn assemble_td(tree: &DecompNode, n: usize) -> Result<TreeDecomposition> {
    let mut t = TreeDecomposition {
        n,
        bags: Vec::new(),
        edges: Vec::new(),
    };
    assemble_into(tree, &mut t)?;
    Ok(t)
}

/// Appends the subtree's bags and returns the index range they occupy.
fn assemble_into(node: &DecompNode, t: &mut TreeDecomposition) -> Result<std::ops::Range<usize>> {
    let start = t.bags.len();
    match node {
        DecompNode::Leaf(bag) => t.bags.push(bag.clone()),
        DecompNode::Separator { separator, children } => {
            let own = t.bags.len();
            t.bags.push(separator.clone());
            for child in children {
                let range = assemble_into(child, t)?;
                let attach = range
                    .clone()
                    .find(|&i| separator.is_subset(&t.bags[i]))
                    .ok_or_else(|| Error::Internal(format!("no child bag contains separator {separator}")))?;
                t.edges.push((own, attach));
            }
        }
    }
    Ok(start..t.bags.len())
}

/// `g` with every separator node of the recursion tree completed to a clique.
pub fn filled_graph(g: &Graph, tree: &DecompNode) -> Graph {
    let mut filled = g.clone();
    for s in tree.separators() {
        let members = s.to_vec();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if u < g.n() && v < g.n() {
                    let _ = filled.add_edge(u, v);
                }
            }
        }
    }
    filled
}

/// Decomposition from a minimum-degree elimination order; ties go to the
/// smallest id. Used as an independent second decomposition in tests.
pub fn min_degree_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::trivial(g);
    }
    let mut adj: Vec<VertexSet> = (0..n).map(|v| g.neighbors(v).clone()).collect();
    let mut alive = g.vertices();
    let mut order = Vec::with_capacity(n);
    let mut bag_of = vec![usize::MAX; n];
    let mut bags = Vec::with_capacity(n);
    while let Some(v) = alive.iter().min_by_key(|&v| (adj[v].len(), v)) {
        let nb = adj[v].clone();
        for u in nb.iter() {
            adj[u].union_with(&nb);
            adj[u].remove(u);
            adj[u].remove(v);
        }
        let mut bag = nb;
        bag.insert(v);
        bag_of[v] = bags.len();
        bags.push(bag);
        order.push(v);
        alive.remove(v);
    }
    let position: Vec<usize> = {
        let mut p = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    // Bag of v hangs off the bag of its earliest-eliminated later neighbour.
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let parent = bags[i].iter().filter(|&u| u != v).min_by_key(|&u| position[u]);
        match parent {
            Some(u) => edges.push((i, bag_of[u])),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition { n, bags, edges }
}

/// PACE text: `s td <bags> <width+1> <n>`, then `b <id> <vertices..>`, then
/// one line per tree edge. All ids are 1-based.
pub fn to_pace(t: &TreeDecomposition) -> String {
    let mut out = String::new();
    let max_bag = t.bags.iter().map(VertexSet::len).max().unwrap_or(0);
    let _ = writeln!(out, "s td {} {} {}", t.bags.len(), max_bag, t.n);
    for (i, b) in t.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in b.iter() {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for &(a, b) in &t.edges {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

pub fn parse_pace(text: &str) -> Result<TreeDecomposition> {
    let perr = |line: usize, message: String| Error::Parse { line, message };
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<VertexSet>> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let nums = |from: usize| -> Result<Vec<usize>> {
            toks[from..]
                .iter()
                .map(|t| t.parse::<usize>().map_err(|_| perr(line, format!("expected an integer, found `{t}`"))))
                .collect()
        };
        match toks[0] {
            "s" => {
                if toks.get(1) != Some(&"td") || toks.len() != 5 || header.is_some() {
                    return Err(perr(line, "expected a single `s td <bags> <width+1> <n>` line".into()));
                }
                let v = nums(2)?;
                header = Some((v[0], v[2]));
                bags = vec![None; v[0]];
            }
            "b" => {
                let (nb, n) = header.ok_or_else(|| perr(line, "bag before the header".into()))?;
                let v = nums(1)?;
                let id = *v.first().ok_or_else(|| perr(line, "bag line without an id".into()))?;
                if id == 0 || id > nb || bags[id - 1].is_some() {
                    return Err(perr(line, format!("bad or repeated bag id {id}")));
                }
                if let Some(&x) = v[1..].iter().find(|&&x| x == 0 || x > n) {
                    return Err(perr(line, format!("vertex {x} outside 1..={n}")));
                }
                bags[id - 1] = Some(v[1..].iter().map(|&x| x - 1).collect());
            }
            _ => {
                let (nb, _) = header.ok_or_else(|| perr(line, "edge before the header".into()))?;
                let v = nums(0)?;
                if v.len() != 2 || v.iter().any(|&x| x == 0 || x > nb) {
                    return Err(perr(line, format!("cannot read tree edge `{body}`")));
                }
                edges.push((v[0] - 1, v[1] - 1));
            }
        }
    }
    let (_, n) = header.ok_or_else(|| perr(0, "missing `s td` header".into()))?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| perr(0, format!("bag {} is never listed", i + 1))))
        .collect::<Result<_>>()?;
    Ok(TreeDecomposition { n, bags, edges })
}
