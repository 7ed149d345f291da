use serde::{Deserialize, Serialize};

use super::{Graph, VertexSet};
use crate::error::{contract, Error, Result};

/// Connected components of `g - removed`, each sorted set, listed by smallest
/// member. Members of `removed` outside the vertex range are ignored.
pub fn components(g: &Graph, removed: &VertexSet) -> Vec<VertexSet> {
    let mut remaining = g.vertices();
    remaining.difference_with(removed);
    let mut out = Vec::new();
    while let Some(v) = remaining.first() {
        let comp = flood(g, v, &remaining);
        remaining.difference_with(&comp);
        out.push(comp);
    }
    out
}

/// Vertices reachable from `start` inside `allowed`.
pub(crate) fn flood(g: &Graph, start: usize, allowed: &VertexSet) -> VertexSet {
    let mut comp = VertexSet::new(g.n());
    comp.insert(start);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for w in g.neighbors(u).iter() {
            if allowed.contains(w) && comp.insert(w) {
                stack.push(w);
            }
        }
    }
    comp
}

/// `N(X)`: vertices outside `x` adjacent to some member of `x`.
pub fn neighborhood(g: &Graph, x: &VertexSet) -> VertexSet {
    let mut nb = VertexSet::new(g.n());
    for v in x.iter().filter(|&v| v < g.n()) {
        nb.union_with(g.neighbors(v));
    }
    nb.difference_with(x);
    nb
}

/// Components `C` of `g - s` with `N(C) = s`.
pub fn full_components(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    components(g, s)
        .into_iter()
        .filter(|c| neighborhood(g, c) == *s)
        .collect()
}

pub fn is_clique(g: &Graph, x: &VertexSet) -> bool {
    x.iter().all(|v| {
        let mut rest = x.clone();
        rest.remove(v);
        rest.is_subset(g.neighbors(v))
    })
}

/// A vertex set together with the full components that certify it is a
/// minimal separator of its host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separator {
    set: VertexSet,
    full_components: Vec<VertexSet>,
    host: u64,
}

impl Separator {
    pub fn set(&self) -> &VertexSet {
        &self.set
    }

    /// All full components, at least two, ordered by smallest member.
    pub fn full_components(&self) -> &[VertexSet] {
        &self.full_components
    }

    pub fn size(&self) -> usize {
        self.set.len()
    }

    /// Fingerprint of the graph this separator was certified against.
    pub fn host(&self) -> u64 {
        self.host
    }

    /// Re-runs the full-component test on `g`.
    pub fn certify(&self, g: &Graph) -> bool {
        g.fingerprint() == self.host
            && is_minimal_separator(g, &self.set).is_some_and(|s| s.full_components == self.full_components)
    }

    pub fn into_set(self) -> VertexSet {
        self.set
    }

    pub fn to_json(&self, g: &Graph) -> SeparatorJson {
        SeparatorJson {
            separator: self.set.to_vec(),
            full_components: self.full_components.iter().map(VertexSet::to_vec).collect(),
            size: self.size(),
            weight: g.set_weight(&self.set),
        }
    }
}

/// Serialized certificate: `{separator, full_components, size, weight}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorJson {
    pub separator: Vec<usize>,
    pub full_components: Vec<Vec<usize>>,
    pub size: usize,
    pub weight: u64,
}

/// Returns the certified separator when `s` has at least two full components.
pub fn is_minimal_separator(g: &Graph, s: &VertexSet) -> Option<Separator> {
    if s.iter().any(|v| v >= g.n()) {
        return None;
    }
    let full = full_components(g, s);
    (full.len() >= 2).then(|| Separator {
        set: s.iter().collect(),
        full_components: full,
        host: g.fingerprint(),
    })
}

/// The minimal `a,b`-separator `N(C_b)`, where `C_b` is the component of `b`
/// in `g - N(a)`. Every vertex of it is adjacent to `a`.
pub fn close_minimal_separator(g: &Graph, a: usize, b: usize) -> Result<Separator> {
    let n = g.n();
    if a >= n || b >= n {
        return Err(contract(format!("vertex out of range 0..{n}")));
    }
    if a == b {
        return Err(contract("a and b must be distinct"));
    }
    if g.has_edge(a, b) {
        return Err(Error::NoSeparator(format!("{a} and {b} are adjacent")));
    }
    if !flood(g, a, &g.vertices()).contains(b) {
        return Err(Error::NoSeparator(format!("{a} and {b} lie in different components")));
    }
    let na = g.neighbors(a).clone();
    let mut allowed = g.vertices();
    allowed.difference_with(&na);
    let cb = flood(g, b, &allowed);
    let s = neighborhood(g, &cb);
    is_minimal_separator(g, &s)
        .ok_or_else(|| Error::Internal(format!("close separator {s} failed the full-component test")))
}

/// `G(C, S)`: the induced subgraph on `C ∪ S` with `S` completed to a clique.
#[derive(Debug, Clone)]
pub struct Saturation {
    pub graph: Graph,
    /// New id -> id in the parent graph (increasing).
    pub to_parent: Vec<usize>,
    /// Edges added inside `S`, in new ids.
    pub fill_edges: Vec<(usize, usize)>,
}

impl Saturation {
    pub fn is_fill_edge(&self, u: usize, v: usize) -> bool {
        let e = (u.min(v), u.max(v));
        self.fill_edges.binary_search(&e).is_ok()
    }
}

pub fn saturate(g: &Graph, c: &VertexSet, s: &VertexSet) -> Result<Saturation> {
    let all = g.vertices();
    if !c.is_subset(&all) || !s.is_subset(&all) {
        return Err(contract("component or separator outside the vertex range"));
    }
    let start = c.first().ok_or_else(|| contract("empty component"))?;
    if c.intersects(s) {
        return Err(contract("component meets the separator"));
    }
    let outside = all.difference(s);
    if flood(g, start, &outside) != *c {
        return Err(contract(format!("{c} is not a component of G - {s}")));
    }
    let keep = c.union(s);
    let (mut graph, to_parent) = g.induced(&keep);
    let local_s: Vec<usize> = to_parent
        .iter()
        .enumerate()
        .filter(|(_, &v)| s.contains(v))
        .map(|(i, _)| i)
        .collect();
    let mut fill_edges = Vec::new();
    for (i, &x) in local_s.iter().enumerate() {
        for &y in &local_s[i + 1..] {
            if !graph.has_edge(x, y) {
                graph.add_edge(x, y)?;
                fill_edges.push((x, y));
            }
        }
    }
    Ok(Saturation {
        graph,
        to_parent,
        fill_edges,
    })
}

/// A bipartition `(side_a, side_b)` of the vertex set with its cut statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    side_a: VertexSet,
    side_b: VertexSet,
    cutset_size: usize,
    connected: bool,
    nontrivial: bool,
}

impl Cut {
    pub fn new(g: &Graph, side_a: &VertexSet) -> Result<Cut> {
        if !side_a.is_subset(&g.vertices()) {
            return Err(contract("cut side outside the vertex range"));
        }
        let side_a: VertexSet = side_a.iter().collect();
        let side_b = g.vertices().difference(&side_a);
        let cutset_size = side_a
            .iter()
            .map(|v| g.neighbors(v).intersection(&side_b).len())
            .sum();
        let induces_connected = |x: &VertexSet| x.first().is_some_and(|v| flood(g, v, x) == *x);
        let connected = induces_connected(&side_a) && induces_connected(&side_b);
        let nontrivial = side_a.len() >= 2 && side_b.len() >= 2;
        Ok(Cut {
            side_a,
            side_b,
            cutset_size,
            connected,
            nontrivial,
        })
    }

    pub fn side_a(&self) -> &VertexSet {
        &self.side_a
    }

    pub fn side_b(&self) -> &VertexSet {
        &self.side_b
    }

    pub fn cutset_size(&self) -> usize {
        self.cutset_size
    }

    /// Both sides nonempty and inducing connected subgraphs.
    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn is_nontrivial(&self) -> bool {
        self.nontrivial
    }

    /// Crossing edges `(u, v)` with `u < v`, lexicographic.
    pub fn cutset(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.edges()
            .filter(|&(u, v)| self.side_a.contains(u) != self.side_a.contains(v))
            .collect()
    }
}
