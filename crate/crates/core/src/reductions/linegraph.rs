//! Line graphs, and the pendant-plus-line-graph reduction from connected cuts.

use super::{Checks, Detail, Kind, ReductionCertificate, SourceSolution, ThresholdCheck, ThresholdMap};
use crate::error::{Error, Result};
use crate::graph::{is_minimal_separator, Cut, Graph, Separator, VertexSet};
use crate::oracle::max_connected_cut_bruteforce;

/// A line graph together with the edge each of its vertices stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGraph {
    pub graph: Graph,
    /// Vertex `i` is the `i`-th edge of the input in canonical order.
    pub edge_of: Vec<(usize, usize)>,
}

/// Vertices are the edges of `g`, adjacent when they share an endpoint;
/// labelled `u-v` from the endpoint labels.
pub fn line_graph(g: &Graph) -> Result<LineGraph> {
    let edge_of: Vec<(usize, usize)> = g.edges().collect();
    if edge_of.is_empty() {
        return Err(Error::Precondition("the graph has no edges".into()));
    }
    let mut incident = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in edge_of.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut edges = Vec::new();
    for at in &incident {
        for (x, &e) in at.iter().enumerate() {
            edges.extend(at[x + 1..].iter().map(|&f| (e, f)));
        }
    }
    let labels = edge_of.iter().map(|&(u, v)| format!("{}-{}", g.label(u), g.label(v))).collect();
    let graph = Graph::from_edges(edge_of.len(), edges)?.with_labels(labels)?;
    Ok(LineGraph { graph, edge_of })
}

/// Target is the line graph of `g` with one pendant `pendant(v)` hung on each
/// vertex `v`, at augmented id `n + v`.
pub fn linegraph_reduction(g: &Graph) -> Result<ReductionCertificate> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Precondition("needs at least 2 vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("not connected".into()));
    }
    let edges: Vec<_> = g.edges().chain((0..n).map(|v| (v, n + v))).collect();
    let labels = (0..n)
        .map(|v| g.label(v))
        .chain((0..n).map(|v| format!("pendant({})", g.label(v))))
        .collect();
    let augmented = Graph::from_edges(2 * n, edges)?.with_labels(labels)?;
    let LineGraph { graph, edge_of } = line_graph(&augmented)?;
    Ok(ReductionCertificate {
        kind: Kind::Linegraph,
        source: g.clone(),
        target: graph,
        detail: Detail::Linegraph {
            augmented,
            pendant_of: (n..2 * n).collect(),
            edge_of,
        },
        threshold_map: ThresholdMap::Identity,
    })
}

fn parts(cert: &ReductionCertificate) -> (&Graph, &[(usize, usize)]) {
    match &cert.detail {
        Detail::Linegraph { augmented, edge_of, .. } => (augmented, edge_of),
        _ => unreachable!("line-graph detail"),
    }
}

/// A connected cut of the source (pendants follow their vertex) or a
/// non-trivial connected cut of the augmented graph ↦ its crossing edges.
pub(super) fn forward(cert: &ReductionCertificate, cut: &Cut) -> Result<Separator> {
    let (aug, edge_of) = parts(cert);
    let n = cert.source.n();
    let width = cut.side_a().len() + cut.side_b().len();
    let side = if width == n {
        cut.side_a().iter().chain(cut.side_a().iter().map(|v| v + n)).collect()
    } else if width == aug.n() {
        cut.side_a().clone()
    } else {
        return Err(Error::Precondition(format!("cut over {width} vertices fits neither graph")));
    };
    let lifted = Cut::new(aug, &side)?;
    if !lifted.is_connected() || !lifted.is_nontrivial() {
        return Err(Error::Precondition("the cut is not a non-trivial connected cut".into()));
    }
    let u: VertexSet = edge_of
        .iter()
        .enumerate()
        .filter(|&(_, &(x, y))| side.contains(x) != side.contains(y))
        .map(|(i, _)| i)
        .collect();
    is_minimal_separator(&cert.target, &u)
        .ok_or_else(|| Error::Internal(format!("{u} is not a minimal separator of the line graph")))
}

/// The edges of one full component span one side of a connected cut; its
/// original vertices form the source cut.
pub(super) fn back(cert: &ReductionCertificate, sep: &VertexSet) -> Result<SourceSolution> {
    let (_, edge_of) = parts(cert);
    let n = cert.source.n();
    let s = is_minimal_separator(&cert.target, sep).ok_or_else(|| Error::Internal("not minimal".into()))?;
    let side: VertexSet = s.full_components()[0]
        .iter()
        .flat_map(|e| [edge_of[e].0, edge_of[e].1])
        .filter(|&v| v < n)
        .collect();
    let cut = Cut::new(&cert.source, &side)?;
    if !cut.is_connected() {
        return Err(Error::Internal(format!("{sep} read back as a disconnected cut")));
    }
    Ok(SourceSolution::Cut(cut))
}

/// Main rows compare the augmented graph's best non-trivial connected cut
/// with the target, for `k >= 2`. Auxiliary rows check that the pendants do
/// not change the optimum: source connected cut against augmented
/// non-trivial connected cut.
pub(super) fn checks(cert: &ReductionCertificate, max_n: usize, target_at: &dyn Fn(Option<u64>) -> bool) -> Result<Checks> {
    let (aug, edge_of) = parts(cert);
    let cut_value = |c: Option<Cut>| c.map(|c| c.cutset_size() as u64);
    let source_best = cut_value(max_connected_cut_bruteforce(&cert.source, false, max_n)?);
    let aug_best = cut_value(max_connected_cut_bruteforce(aug, true, max_n)?);
    let at_least = |best: Option<u64>, k: u64| best.is_some_and(|b| b >= k);
    let max_k = edge_of.len() as u64 + 1;
    let rows = (0..=max_k)
        .map(|k| ThresholdCheck {
            k,
            source: at_least(aug_best, k),
            target: target_at(cert.threshold_map.apply(k)),
            in_range: k >= 2,
        })
        .collect();
    let auxiliary = (0..=max_k)
        .map(|k| ThresholdCheck {
            k,
            source: at_least(source_best, k),
            target: at_least(aug_best, k),
            in_range: k >= 2,
        })
        .collect();
    Ok((aug_best, rows, auxiliary))
}

/// An induced `K_{1,3}`: a centre with three pairwise nonadjacent neighbours.
pub fn find_claw(g: &Graph) -> Option<[usize; 4]> {
    (0..g.n()).find_map(|c| {
        let nb = g.neighbors(c).to_vec();
        for (i, &x) in nb.iter().enumerate() {
            for (j, &y) in nb.iter().enumerate().skip(i + 1) {
                if g.has_edge(x, y) {
                    continue;
                }
                if let Some(&z) = nb[j + 1..].iter().find(|&&z| !g.has_edge(x, z) && !g.has_edge(y, z)) {
                    return Some([c, x, y, z]);
                }
            }
        }
        None
    })
}
