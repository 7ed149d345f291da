//! Simple undirected graphs on dense vertex ids, plus the separator and cut
//! primitives everything else is built from.

mod io;
mod separator;
mod vertex_set;

pub use io::{parse_graph, to_dimacs, to_edge_list, Format};
pub use separator::{
    close_minimal_separator, components, full_components, is_clique, is_minimal_separator,
    neighborhood, saturate, Cut, Saturation, Separator,
};
pub use vertex_set::VertexSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Optional positive vertex weights (missing means every weight is 1) and
/// optional string labels travel with the graph through induced subgraphs and
/// saturation. Values are immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    weights: Option<Vec<u64>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: (0..n).map(|_| VertexSet::new(n)).collect(),
            weights: None,
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::Validation(format!(
                "edge {{{u},{v}}} references a vertex outside 0..{n}"
            )));
        }
        if u == v {
            return Err(Error::Validation(format!("self-loop on vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    /// Attaches vertex weights; every weight must be at least 1.
    pub fn with_weights(mut self, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != self.n() {
            return Err(Error::Validation(format!(
                "{} weights given for {} vertices",
                weights.len(),
                self.n()
            )));
        }
        if let Some(v) = weights.iter().position(|&w| w < 1) {
            return Err(Error::Validation(format!("vertex {v} has weight 0")));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::Validation(format!(
                "{} labels given for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_weights(mut self) -> Self {
        self.weights = None;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn weights(&self) -> Option<&[u64]> {
        self.weights.as_deref()
    }

    #[inline]
    pub fn weight(&self, v: usize) -> u64 {
        self.weights.as_ref().map_or(1, |w| w[v])
    }

    pub fn total_weight(&self) -> u64 {
        (0..self.n()).map(|v| self.weight(v)).sum()
    }

    pub fn set_weight(&self, s: &VertexSet) -> u64 {
        s.iter().map(|v| self.weight(v)).sum()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The label of `v`, or its id when the graph carries no labels.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|nb| nb.len() + 1 == n)
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || components(self, &VertexSet::new(0)).len() == 1
    }

    /// Induced subgraph on `keep`, renumbered densely in increasing id order.
    /// Returns the subgraph and the map from new ids to ids of `self`.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = keep.iter().filter(|&v| v < self.n()).collect();
        let mut back = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            back[v] = i;
        }
        let mut sub = Graph::empty(map.len());
        for (i, &v) in map.iter().enumerate() {
            for u in self.adj[v].iter() {
                if back[u] != usize::MAX {
                    sub.adj[i].insert(back[u]);
                }
            }
        }
        sub.weights = self
            .weights
            .as_ref()
            .map(|w| map.iter().map(|&v| w[v]).collect());
        sub.labels = self
            .labels
            .as_ref()
            .map(|l| map.iter().map(|&v| l[v].clone()).collect());
        (sub, map)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let n = off + other.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + off, v + off)));
        let mut g = Graph::from_edges(n, edges.collect::<Vec<_>>()).expect("shifted edges are in range");
        if self.is_weighted() || other.is_weighted() {
            let w = (0..off)
                .map(|v| self.weight(v))
                .chain((0..other.n()).map(|v| other.weight(v)))
                .collect();
            g.weights = Some(w);
        }
        if self.labels.is_some() || other.labels.is_some() {
            let l = (0..off)
                .map(|v| self.label(v))
                .chain((0..other.n()).map(|v| other.label(v)))
                .collect();
            g.labels = Some(l);
        }
        g
    }

    /// Complement graph on the same vertex set.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let full = VertexSet::full(n);
        let mut g = Graph::empty(n);
        for v in 0..n {
            let mut nb = full.difference(&self.adj[v]);
            nb.remove(v);
            g.adj[v] = nb;
        }
        g.weights = self.weights.clone();
        g.labels = self.labels.clone();
        g
    }

    /// Stable 64-bit FNV-1a digest of the vertex count and canonical edge list.
    pub fn fingerprint(&self) -> u64 {
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(PRIME);
            }
        };
        feed(self.n() as u64);
        for (u, v) in self.edges() {
            feed(u as u64);
            feed(v as u64);
        }
        h
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .field("weights", &self.weights)
            .finish()
    }
}

/// JSON shape used for graphs inside certificates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().collect(),
            weights: g.weights.clone(),
            labels: g.labels.clone(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let mut g = Graph::from_edges(j.n, j.edges)?;
        if let Some(w) = j.weights {
            g = g.with_weights(w)?;
        }
        if let Some(l) = j.labels {
            g = g.with_labels(l)?;
        }
        Ok(g)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        Graph::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops_and_bad_weights() {
        assert!(Graph::from_edges(2, [(1, 1)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(g.clone().with_weights(vec![1, 0]).is_err());
        assert!(g.with_weights(vec![1]).is_err());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn induced_keeps_weights_and_order() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)])
            .unwrap()
            .with_weights(vec![1, 2, 3, 4])
            .unwrap();
        let keep: VertexSet = [1, 2, 3].into_iter().collect();
        let (sub, map) = g.induced(&keep);
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(sub.weights(), Some(&[2, 3, 4][..]));
    }

    #[test]
    fn complement_of_path() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.complement().edges().collect::<Vec<_>>(), vec![(0, 2)]);
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap().with_labels(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
    }
}
