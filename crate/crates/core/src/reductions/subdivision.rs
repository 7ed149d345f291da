//! Subdividing every edge of a connected cubic graph once: connected cuts of
//! the source and minimal separators of the subdivision have the same optimum.

use super::{max_rows, Checks, Detail, Kind, ReductionCertificate, SourceSolution, ThresholdMap};
use crate::error::{Error, Result};
use crate::graph::{is_minimal_separator, Cut, Graph, Separator, VertexSet};
use crate::oracle::max_connected_cut_bruteforce;

/// Source vertices keep their ids; edge number `i` in canonical order becomes
/// target vertex `n + i`, labelled `e(u,v)`.
pub fn subdivide_cubic(g: &Graph) -> Result<ReductionCertificate> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) != 3) {
        return Err(Error::Precondition(format!("not cubic: vertex {v} has degree {}", g.degree(v))));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("not connected".into()));
    }
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut target_edges = Vec::with_capacity(2 * edges.len());
    let mut edge_vertex = Vec::with_capacity(edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        target_edges.push((u, n + i));
        target_edges.push((v, n + i));
        edge_vertex.push((u, v, n + i));
    }
    let labels = (0..n)
        .map(|v| g.label(v))
        .chain(edges.iter().map(|&(u, v)| format!("e({},{})", g.label(u), g.label(v))))
        .collect();
    let target = Graph::from_edges(n + edges.len(), target_edges)?.with_labels(labels)?;
    Ok(ReductionCertificate {
        kind: Kind::Subdivision,
        source: g.clone(),
        target,
        detail: Detail::Subdivision { edge_vertex },
        threshold_map: ThresholdMap::Identity,
    })
}

fn edge_vertices(cert: &ReductionCertificate) -> &[(usize, usize, usize)] {
    match &cert.detail {
        Detail::Subdivision { edge_vertex } => edge_vertex,
        _ => unreachable!("subdivision detail"),
    }
}

/// Crossing edges of a connected cut ↦ their subdivision vertices.
pub(super) fn forward(cert: &ReductionCertificate, cut: &Cut) -> Result<Separator> {
    let cut = Cut::new(&cert.source, cut.side_a())?;
    if !cut.is_connected() {
        return Err(Error::Precondition("the cut is not connected".into()));
    }
    let a = cut.side_a();
    let u: VertexSet = edge_vertices(cert)
        .iter()
        .filter(|&&(x, y, _)| a.contains(x) != a.contains(y))
        .map(|&(_, _, w)| w)
        .collect();
    is_minimal_separator(&cert.target, &u)
        .ok_or_else(|| Error::Internal(format!("{u} is not a minimal separator of the subdivision")))
}

/// Pushes original vertices out of the separator one at a time (smallest
/// first): an original vertex `v` in it has exactly one neighbour `v_e` in
/// some full component, and swapping `v` for `v_e` keeps two full components.
/// The read-off cut is then the original vertices of the first full component.
pub(super) fn back(cert: &ReductionCertificate, sep: &VertexSet) -> Result<SourceSolution> {
    let (g, t) = (&cert.source, &cert.target);
    let n = g.n();
    let mut u = sep.clone();
    while let Some(v) = u.iter().find(|&x| x < n) {
        let s = is_minimal_separator(t, &u)
            .ok_or_else(|| Error::Internal(format!("{u} stopped being a minimal separator")))?;
        let swap = s.full_components().iter().find_map(|c| {
            let inside = t.neighbors(v).intersection(c);
            (inside.len() == 1 && c.len() > 1).then(|| inside.first().expect("one member"))
        });
        match swap {
            Some(ve) => {
                u.remove(v);
                u.insert(ve);
            }
            None => return Ok(SourceSolution::Cut(fallback_cut(g, &u)?)),
        }
    }
    let s = is_minimal_separator(t, &u).ok_or_else(|| Error::Internal(format!("{u} is not minimal")))?;
    let side: VertexSet = s.full_components()[0].iter().filter(|&x| x < n).collect();
    Ok(SourceSolution::Cut(Cut::new(g, &side)?))
}

/// The exchange cannot apply when the separator is `{v, w}` for an edge `vw`
/// and one full component is just `v_e`. A connected cut of size at least 2
/// still exists: `({v, w}, rest)` when the rest is connected, else a single
/// non-cut vertex against the rest (size 3).
fn fallback_cut(g: &Graph, u: &VertexSet) -> Result<Cut> {
    let pair: VertexSet = u.iter().filter(|&x| x < g.n()).collect();
    let cut = Cut::new(g, &pair)?;
    if cut.is_connected() {
        return Ok(cut);
    }
    (0..g.n())
        .map(|v| Cut::new(g, &VertexSet::singleton(v)))
        .find(|c| c.as_ref().is_ok_and(Cut::is_connected))
        .unwrap_or_else(|| Err(Error::Internal("no non-cut vertex".into())))
}

pub(super) fn checks(cert: &ReductionCertificate, max_n: usize, target_at: &dyn Fn(Option<u64>) -> bool) -> Result<Checks> {
    let best = max_connected_cut_bruteforce(&cert.source, false, max_n)?.map(|c| c.cutset_size() as u64);
    let max_k = cert.source.edge_count() as u64 + 1;
    Ok((best, max_rows(cert, best, max_k, |_| true, target_at), Vec::new()))
}

/// Two-colouring check used by tests: original vertices on one side.
#[cfg(test)]
pub(super) fn is_bipartite_split(cert: &ReductionCertificate) -> bool {
    let n = cert.source.n();
    cert.target.edges().all(|(u, v)| (u < n) != (v < n))
}
