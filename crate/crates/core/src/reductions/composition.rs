//! Disjoint union plus a universal vertex: the best minimal separator over the
//! parts grows by exactly one.

use super::{Checks, Detail, Kind, ReductionCertificate, SourceSolution, ThresholdCheck, ThresholdMap};
use crate::error::{Error, Result};
use crate::graph::{is_minimal_separator, Graph, Separator, VertexSet};
use crate::oracle::max_minimal_separator_bruteforce;

/// Parts keep their order; part `i` vertex `v` is labelled `part{i}:{v}` and
/// the universal vertex, last, is labelled `r`.
pub fn compose_universal(parts: &[Graph]) -> Result<ReductionCertificate> {
    if parts.is_empty() {
        return Err(Error::Precondition("no graphs to compose".into()));
    }
    let mut offsets = Vec::with_capacity(parts.len());
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut at = 0;
    for (i, p) in parts.iter().enumerate() {
        offsets.push(at);
        edges.extend(p.edges().map(|(u, v)| (u + at, v + at)));
        labels.extend((0..p.n()).map(|v| format!("part{i}:{}", p.label(v))));
        at += p.n();
    }
    let source = Graph::from_edges(at, edges.clone())?.with_labels(labels.clone())?;
    edges.extend((0..at).map(|v| (v, at)));
    labels.push("r".into());
    let target = Graph::from_edges(at + 1, edges)?.with_labels(labels)?;
    Ok(ReductionCertificate {
        kind: Kind::Composition,
        source,
        target,
        detail: Detail::Composition {
            parts: parts.iter().map(|p| p.clone().without_weights()).collect(),
            offsets,
            universal: at,
        },
        threshold_map: ThresholdMap::Shift { by: 1 },
    })
}

fn detail(cert: &ReductionCertificate) -> (&[Graph], &[usize], usize) {
    match &cert.detail {
        Detail::Composition { parts, offsets, universal } => (parts, offsets, *universal),
        _ => unreachable!("composition detail"),
    }
}

/// `S` in part `i` ↦ `S ∪ {r}` in the target.
pub(super) fn forward(cert: &ReductionCertificate, part: usize, sep: &VertexSet) -> Result<Separator> {
    let (parts, offsets, r) = detail(cert);
    let g = parts
        .get(part)
        .ok_or_else(|| Error::Precondition(format!("no part {part}")))?;
    if is_minimal_separator(g, sep).is_none() {
        return Err(Error::Precondition(format!("{sep} is not a minimal separator of part {part}")));
    }
    let mut s: VertexSet = sep.iter().map(|v| v + offsets[part]).collect();
    s.insert(r);
    is_minimal_separator(&cert.target, &s).ok_or_else(|| Error::Internal(format!("{s} lost minimality")))
}

/// Drops `r` and localises the rest to the part holding it. `{r}` alone
/// separates the parts from each other and has no counterpart.
pub(super) fn back(cert: &ReductionCertificate, sep: &VertexSet) -> Result<Option<SourceSolution>> {
    let (parts, offsets, r) = detail(cert);
    let mut rest = sep.clone();
    rest.remove(r);
    let Some(first) = rest.first() else { return Ok(None) };
    let part = offsets.partition_point(|&o| o <= first) - 1;
    let (lo, hi) = (offsets[part], offsets[part] + parts[part].n());
    if rest.iter().any(|v| v < lo || v >= hi) {
        return Err(Error::Internal(format!("{sep} spans several parts")));
    }
    let local: VertexSet = rest.iter().map(|v| v - lo).collect();
    if is_minimal_separator(&parts[part], &local).is_none() {
        return Err(Error::Internal(format!("{local} is not a minimal separator of part {part}")));
    }
    Ok(Some(SourceSolution::PartSeparator { part, separator: local }))
}

/// For `k >= 1`, some part has a minimal separator of size at least `k` iff
/// the target has one of size at least `k + 1`. At `k = 0` the target also
/// has `{r}` whenever two parts are nonempty, so the source side there reads
/// "two nonempty parts, or some part has a minimal separator".
pub(super) fn checks(cert: &ReductionCertificate, max_n: usize, target_at: &dyn Fn(Option<u64>) -> bool) -> Result<Checks> {
    let (parts, _, r) = detail(cert);
    let mut best: Option<u64> = None;
    for p in parts {
        if let Some((_, v)) = max_minimal_separator_bruteforce(p, false, max_n)? {
            best = best.max(Some(v));
        }
    }
    let nonempty = parts.iter().filter(|p| p.n() > 0).count();
    let rows = (0..=r as u64)
        .map(|k| ThresholdCheck {
            k,
            source: if k == 0 { nonempty >= 2 || best.is_some() } else { best.is_some_and(|b| b >= k) },
            target: target_at(cert.threshold_map.apply(k)),
            in_range: true,
        })
        .collect();
    Ok((best, rows, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};
    use crate::reductions::verify_reduction;

    #[test]
    fn two_squares() {
        let c4 = cycle(4).unwrap();
        let cert = compose_universal(&[c4.clone(), c4]).unwrap();
        assert_eq!(cert.target.n(), 9);
        assert_eq!((cert.target.label(5), cert.target.label(8)), ("part1:1".to_string(), "r".to_string()));
        let r = verify_reduction(&cert, 20).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!((r.source_optimum, r.target_optimum), (Some(2), Some(3)));
    }

    #[test]
    fn single_triangle_is_vacuous() {
        let cert = compose_universal(&[complete(3)]).unwrap();
        assert!(cert.target.is_complete() && cert.target.n() == 4);
        let r = verify_reduction(&cert, 20).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!((r.source_optimum, r.target_optimum), (None, None));
    }

    #[test]
    fn path_and_clique() {
        let cert = compose_universal(&[path(3), complete(5)]).unwrap();
        let r = verify_reduction(&cert, 20).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!((r.source_optimum, r.target_optimum), (Some(1), Some(2)));
    }

    #[test]
    fn two_triangles_separated_by_r() {
        let cert = compose_universal(&[complete(3), complete(3)]).unwrap();
        let r = verify_reduction(&cert, 20).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!((r.source_optimum, r.target_optimum), (None, Some(1)));
        assert_eq!(cert.translate_back(&VertexSet::singleton(6)).unwrap(), None);
    }

    #[test]
    fn translations_round_trip() {
        let cert = compose_universal(&[path(3), cycle(4).unwrap()]).unwrap();
        let sep: VertexSet = [1, 3].into_iter().collect();
        let t = cert.translate_forward(&SourceSolution::PartSeparator { part: 1, separator: sep.clone() }).unwrap();
        assert_eq!(t.set().to_vec(), vec![4, 6, 7]);
        assert_eq!(
            cert.translate_back(t.set()).unwrap(),
            Some(SourceSolution::PartSeparator { part: 1, separator: sep })
        );
        assert!(compose_universal(&[]).is_err());
    }
}
