//! Bipartite graph to co-bipartite graph: maximal independent sets hitting both
//! sides are exactly the complements of minimal separators once both sides are
//! completed to cliques.

use super::{Checks, Detail, Kind, ReductionCertificate, SourceSolution, ThresholdCheck, ThresholdMap};
use crate::error::{Error, Result};
use crate::generators::bipartition;
use crate::graph::{is_minimal_separator, Graph, Separator, VertexSet};
use crate::oracle::{check_bipartition, min_independent_dominating_set_bruteforce};

/// Builds the co-bipartite target. Without an explicit bipartition, the
/// canonical 2-colouring is used.
///
/// Preprocessing deletes, until nothing changes, vertices isolated in `g`
/// (`forced`) and vertices adjacent to the whole other side (`irrelevant`).
/// When the remaining instance might have a one-sided maximal independent set
/// smaller than every two-sided one, a guard edge `a* b*` is added.
pub fn cobipartite_reduction(g: &Graph, sides: Option<(&VertexSet, &VertexSet)>) -> Result<ReductionCertificate> {
    let (a, b) = match sides {
        Some((a, b)) => {
            check_bipartition(g, a, b)?;
            (a.clone(), b.clone())
        }
        None => bipartition(g).ok_or_else(|| Error::Precondition("not bipartite".into()))?,
    };
    if let Some((u, v)) = g.edges().find(|&(u, v)| a.contains(u) == a.contains(v)) {
        return Err(Error::Precondition(format!("not bipartite: edge {u}-{v} inside one side")));
    }

    let mut alive = g.vertices();
    let (mut forced, mut irrelevant) = (Vec::new(), Vec::new());
    loop {
        let other_side = |v: usize| if a.contains(v) { b.intersection(&alive) } else { a.intersection(&alive) };
        let drop = alive.iter().find_map(|v| {
            let nb = g.neighbors(v).intersection(&alive);
            if nb.is_empty() {
                Some((v, true))
            } else if nb == other_side(v) {
                Some((v, false))
            } else {
                None
            }
        });
        let Some((v, isolated)) = drop else { break };
        alive.remove(v);
        if isolated {
            forced.push(v);
        } else {
            irrelevant.push(v);
        }
    }
    forced.sort_unstable();
    irrelevant.sort_unstable();
    if alive.is_disjoint(&a) || alive.is_disjoint(&b) {
        return Err(Error::Degenerate("a side is empty after preprocessing".into()));
    }

    let (core, map) = g.induced(&alive);
    let core = core.without_weights();
    let core_a: VertexSet = (0..core.n()).filter(|&i| a.contains(map[i])).collect();
    let mut instance_to_source: Vec<Option<usize>> = map.iter().copied().map(Some).collect();
    let mut labels: Vec<String> = map.iter().map(|&v| g.label(v)).collect();
    let (instance, instance_a, guard) = if needs_guard(&core, &core_a) {
        let (ga, gb) = (core.n(), core.n() + 1);
        let edges: Vec<_> = core.edges().chain([(ga, gb)]).collect();
        instance_to_source.extend([None, None]);
        labels.extend(["guard(a)".to_string(), "guard(b)".to_string()]);
        let mut side = core_a.clone();
        side.insert(ga);
        (Graph::from_edges(core.n() + 2, edges)?, side, Some((ga, gb)))
    } else {
        (core, core_a, None)
    };
    let instance = instance.with_labels(labels.clone())?;

    let n = instance.n();
    let mut edges: Vec<(usize, usize)> = instance.edges().collect();
    for u in 0..n {
        for v in u + 1..n {
            if instance_a.contains(u) == instance_a.contains(v) {
                edges.push((u, v));
            }
        }
    }
    let target = Graph::from_edges(n, edges)?.with_labels(labels)?;
    Ok(ReductionCertificate {
        kind: Kind::Cobipartite,
        source: g.clone(),
        target,
        detail: Detail::Cobipartite {
            side_a: a.to_vec(),
            side_b: b.to_vec(),
            forced,
            irrelevant,
            instance,
            instance_to_source,
            instance_side_a: instance_a.to_vec(),
            guard,
        },
        threshold_map: ThresholdMap::Complement { total: n as u64 },
    })
}

/// The separators only see maximal independent sets meeting both sides. The
/// one-sided ones are `A` and `B` themselves, so a two-sided set of size at
/// most `min(|A|, |B|)` settles that the minimum is two-sided. Greedy search
/// from every nonadjacent cross pair; if it finds none small enough the guard
/// is added.
fn needs_guard(g: &Graph, a: &VertexSet) -> bool {
    let b = g.vertices().difference(a);
    let bound = a.len().min(b.len());
    let best = a
        .iter()
        .flat_map(|x| b.iter().filter(move |&y| !g.has_edge(x, y)).map(move |y| (x, y)))
        .map(|(x, y)| greedy_maximal_independent(g, [x, y]))
        .min();
    best.is_none_or(|s| s > bound)
}

fn greedy_maximal_independent(g: &Graph, seed: [usize; 2]) -> usize {
    let mut dominated = VertexSet::new(g.n());
    let mut size = 0;
    let mut take = |v: usize, dominated: &mut VertexSet| {
        dominated.insert(v);
        dominated.union_with(g.neighbors(v));
        size += 1;
    };
    for v in seed {
        take(v, &mut dominated);
    }
    loop {
        let free = g.vertices().difference(&dominated);
        let pick = free
            .iter()
            .max_by_key(|&v| (g.neighbors(v).intersection(&free).len(), std::cmp::Reverse(v)));
        match pick {
            Some(v) => take(v, &mut dominated),
            None => return size,
        }
    }
}

fn instance_of(cert: &ReductionCertificate) -> &Graph {
    match &cert.detail {
        Detail::Cobipartite { instance, .. } => instance,
        _ => unreachable!("co-bipartite detail"),
    }
}

/// A maximal independent set of the instance meeting both sides ↦ its
/// complement.
pub(super) fn forward(cert: &ReductionCertificate, u: &VertexSet) -> Result<Separator> {
    let inst = instance_of(cert);
    if !u.is_subset(&inst.vertices()) {
        return Err(Error::Precondition("independent set outside the instance".into()));
    }
    let independent = u.iter().all(|v| inst.neighbors(v).is_disjoint(u));
    let dominating = inst.vertices().iter().all(|v| u.contains(v) || inst.neighbors(v).intersects(u));
    if !independent || !dominating {
        return Err(Error::Precondition(format!("{u} is not a maximal independent set of the instance")));
    }
    let s = inst.vertices().difference(u);
    is_minimal_separator(&cert.target, &s)
        .ok_or_else(|| Error::Precondition(format!("{u} misses one side, so its complement separates nothing")))
}

pub(super) fn back(cert: &ReductionCertificate, sep: &VertexSet) -> Result<SourceSolution> {
    Ok(SourceSolution::IndependentSet(cert.target.vertices().difference(sep)))
}

/// Row `k`: the instance has a maximal independent set of size at most `k`
/// iff the target has a minimal separator of size at least `total - k`.
pub(super) fn checks(cert: &ReductionCertificate, max_n: usize, target_at: &dyn Fn(Option<u64>) -> bool) -> Result<Checks> {
    let inst = instance_of(cert);
    let best = min_independent_dominating_set_bruteforce(inst, max_n)?.len() as u64;
    let rows = (0..=inst.n() as u64)
        .map(|k| ThresholdCheck {
            k,
            source: best <= k,
            target: target_at(cert.threshold_map.apply(k)),
            in_range: true,
        })
        .collect();
    Ok((Some(best), rows, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_bipartite, cycle, path, random_bipartite};
    use crate::graph::is_clique;
    use crate::reductions::verify_reduction;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sides_are_cliques(cert: &ReductionCertificate) -> bool {
        let Detail::Cobipartite { instance_side_a, .. } = &cert.detail else { panic!() };
        let a: VertexSet = instance_side_a.iter().copied().collect();
        is_clique(&cert.target, &a) && is_clique(&cert.target, &cert.target.vertices().difference(&a))
    }

    #[test]
    fn c6_gives_the_octahedron() {
        let cert = cobipartite_reduction(&cycle(6).unwrap(), None).unwrap();
        assert!((0..6).all(|v| cert.target.degree(v) == 4));
        assert!(sides_are_cliques(&cert));
        let Detail::Cobipartite { guard, forced, irrelevant, .. } = &cert.detail else { panic!() };
        assert!(guard.is_none() && forced.is_empty() && irrelevant.is_empty());
        let r = verify_reduction(&cert, 20).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!((r.source_optimum, r.target_optimum), (Some(2), Some(4)));
    }

    #[test]
    fn c8_passes() {
        let cert = cobipartite_reduction(&cycle(8).unwrap(), None).unwrap();
        assert_eq!(cert.target.n(), 8);
        let r = verify_reduction(&cert, 20).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.target_optimum.unwrap(), 8 - r.source_optimum.unwrap());
    }

    #[test]
    fn assumption_violations_are_removed() {
        // Vertex 6 is isolated; vertex 7 is adjacent to all of A = {0,2,4}.
        let mut edges: Vec<_> = cycle(6).unwrap().edges().collect();
        edges.extend([(0, 7), (2, 7), (4, 7)]);
        let g = Graph::from_edges(8, edges).unwrap();
        let a: VertexSet = [0, 2, 4, 6].into_iter().collect();
        let b: VertexSet = [1, 3, 5, 7].into_iter().collect();
        let cert = cobipartite_reduction(&g, Some((&a, &b))).unwrap();
        let Detail::Cobipartite { forced, irrelevant, instance, .. } = &cert.detail else { panic!() };
        assert_eq!((forced.as_slice(), irrelevant.as_slice()), (&[6][..], &[7][..]));
        assert_eq!(instance.n(), 6);
        assert!(verify_reduction(&cert, 20).unwrap().pass);
    }

    #[test]
    fn guard_closes_the_one_sided_gap() {
        // The only maximal independent set of size 2 is A itself.
        let g = Graph::from_edges(6, [(0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let a: VertexSet = [0, 1].into_iter().collect();
        let b: VertexSet = (2..6).collect();
        let cert = cobipartite_reduction(&g, Some((&a, &b))).unwrap();
        let Detail::Cobipartite { guard, .. } = &cert.detail else { panic!() };
        assert_eq!(*guard, Some((6, 7)));
        assert!(sides_are_cliques(&cert));
        let r = verify_reduction(&cert, 20).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.source_optimum, Some(3));
    }

    #[test]
    fn rejections() {
        let err = cobipartite_reduction(&cycle(5).unwrap(), None).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)), "{err}");
        let err = cobipartite_reduction(&complete_bipartite(2, 3), None).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)), "{err}");
        let a: VertexSet = [0, 1].into_iter().collect();
        let b: VertexSet = [2, 3].into_iter().collect();
        assert!(cobipartite_reduction(&path(4), Some((&a, &b))).is_err());
    }

    #[test]
    fn random_bipartite_graphs_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        for _ in 0..40 {
            let g = random_bipartite(4, 5, 0.5, &mut rng);
            let Ok(cert) = cobipartite_reduction(&g, None) else { continue };
            assert!(sides_are_cliques(&cert));
            let r = verify_reduction(&cert, 20).unwrap();
            assert!(r.pass, "{r:?}");
            checked += 1;
        }
        assert!(checked >= 20, "{checked}");
    }

    #[test]
    fn translations_round_trip() {
        let cert = cobipartite_reduction(&cycle(6).unwrap(), None).unwrap();
        let u: VertexSet = [0, 3].into_iter().collect();
        let sep = cert.translate_forward(&SourceSolution::IndependentSet(u.clone())).unwrap();
        assert_eq!(sep.size(), 4);
        assert_eq!(cert.translate_back(sep.set()).unwrap(), Some(SourceSolution::IndependentSet(u)));
        let one_sided: VertexSet = [0, 2, 4].into_iter().collect();
        assert!(cert.translate_forward(&SourceSolution::IndependentSet(one_sided)).is_err());
    }
}
