//! Reference answers: exhaustive subset scans for small graphs and a
//! polynomial-delay enumerator of all minimal separators.
//!
//! Every brute-force routine takes an explicit `max_n` guard and refuses larger
//! inputs instead of truncating. Scans run on `u64` masks, so the guard can
//! never exceed [`MASK_LIMIT`].

use std::collections::{HashSet, VecDeque};

use crate::error::{contract, Error, Result};
use crate::graph::{components, is_minimal_separator, neighborhood, Cut, Graph, Separator, VertexSet};

pub const DEFAULT_MAX_N: usize = 20;
pub const MASK_LIMIT: usize = 63;

fn guard(g: &Graph, max_n: usize) -> Result<()> {
    let limit = max_n.min(MASK_LIMIT);
    if g.n() > limit {
        return Err(Error::ScaleGuard { n: g.n(), max_n: limit });
    }
    Ok(())
}

/// Adjacency as bit masks, for graphs with fewer than 64 vertices.
pub(crate) struct Masks {
    adj: Vec<u64>,
    all: u64,
}

impl Masks {
    pub(crate) fn new(g: &Graph) -> Self {
        debug_assert!(g.n() <= MASK_LIMIT);
        let all = if g.n() == 0 { 0 } else { (1u64 << g.n()) - 1 };
        Masks {
            adj: (0..g.n()).map(|v| g.neighbors(v).to_mask()).collect(),
            all,
        }
    }

    fn neighborhood(&self, x: u64) -> u64 {
        let mut nb = 0;
        let mut rest = x;
        while rest != 0 {
            nb |= self.adj[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        nb & !x
    }

    fn flood(&self, start: usize, allowed: u64) -> u64 {
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let next = self.neighborhood(frontier) & allowed & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    fn is_connected_set(&self, x: u64) -> bool {
        x != 0 && self.flood(x.trailing_zeros() as usize, x) == x
    }

    /// Number of full components of `s`, stopping once two are found.
    fn has_two_full_components(&self, s: u64) -> bool {
        let mut remaining = self.all & !s;
        let mut full = 0;
        while remaining != 0 {
            let comp = self.flood(remaining.trailing_zeros() as usize, remaining);
            remaining &= !comp;
            if self.neighborhood(comp) == s {
                full += 1;
                if full == 2 {
                    return true;
                }
            }
        }
        false
    }
}

/// Masks with exactly `k` of the low `n` bits set, ascending.
fn masks_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = if k > n { None } else { Some(first) };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < limit).then_some(nxt)
        };
        Some(cur)
    })
}

fn certify(g: &Graph, mask: u64) -> Result<Separator> {
    is_minimal_separator(g, &VertexSet::from_mask(mask))
        .ok_or_else(|| Error::Internal(format!("mask {mask:#x} passed the scan but not the certificate")))
}

/// Every subset with at least two full components, in canonical order.
pub fn enum_minimal_separators_bruteforce(g: &Graph, max_n: usize) -> Result<Vec<Separator>> {
    guard(g, max_n)?;
    let m = Masks::new(g);
    let mut found = Vec::new();
    for s in 0..=m.all {
        if m.has_two_full_components(s) {
            found.push(certify(g, s)?);
        }
    }
    found.sort_by(|a, b| a.set().cmp(b.set()));
    Ok(found)
}

/// A minimal separator of maximum cardinality (or weight), with its value.
pub fn max_minimal_separator_bruteforce(
    g: &Graph,
    weighted: bool,
    max_n: usize,
) -> Result<Option<(Separator, u64)>> {
    guard(g, max_n)?;
    let m = Masks::new(g);
    let n = g.n();
    if !weighted {
        for size in (0..=n).rev() {
            let best = masks_of_size(n, size)
                .filter(|&s| m.has_two_full_components(s))
                .map(VertexSet::from_mask)
                .min();
            if let Some(s) = best {
                let sep = certify(g, s.to_mask())?;
                return Ok(Some((sep, size as u64)));
            }
        }
        return Ok(None);
    }
    // Two nonempty full components lie outside any minimal separator.
    let min_w = (0..n).map(|v| g.weight(v)).min().unwrap_or(0);
    let bound = g.total_weight().saturating_sub(2 * min_w);
    let mut best: Option<(u64, u64)> = None;
    'scan: for size in 0..=n {
        for s in masks_of_size(n, size) {
            let w: u64 = VertexSet::from_mask(s).iter().map(|v| g.weight(v)).sum();
            if best.is_some_and(|(bw, _)| bw >= w) || !m.has_two_full_components(s) {
                continue;
            }
            best = Some((w, s));
            if w >= bound {
                break 'scan;
            }
        }
    }
    best.map(|(w, s)| Ok((certify(g, s)?, w))).transpose()
}

/// Best cut with both sides connected (and, optionally, both of size >= 2).
pub fn max_connected_cut_bruteforce(g: &Graph, require_nontrivial: bool, max_n: usize) -> Result<Option<Cut>> {
    guard(g, max_n)?;
    if !g.is_connected() {
        return Err(contract("connected cut oracle needs a connected graph"));
    }
    let n = g.n();
    if n < 2 {
        return Ok(None);
    }
    let m = Masks::new(g);
    let mut best: Option<(usize, u64)> = None;
    // Fix vertex 0 on side A to skip mirrored cuts.
    for rest in 0..(1u64 << (n - 1)) {
        let a = (rest << 1) | 1;
        let b = m.all & !a;
        if b == 0 {
            continue;
        }
        if require_nontrivial && (a.count_ones() < 2 || b.count_ones() < 2) {
            continue;
        }
        let size: usize = VertexSet::from_mask(a)
            .iter()
            .map(|v| (m.adj[v] & b).count_ones() as usize)
            .sum();
        if best.is_some_and(|(bs, _)| bs >= size) {
            continue;
        }
        if m.is_connected_set(a) && m.is_connected_set(b) {
            best = Some((size, a));
        }
    }
    best.map(|(_, a)| Cut::new(g, &VertexSet::from_mask(a))).transpose()
}

/// A smallest maximal independent set.
pub fn min_independent_dominating_set_bruteforce(g: &Graph, max_n: usize) -> Result<VertexSet> {
    guard(g, max_n)?;
    let m = Masks::new(g);
    let n = g.n();
    for size in 0..=n {
        for s in masks_of_size(n, size) {
            let independent = VertexSet::from_mask(s).iter().all(|v| m.adj[v] & s == 0);
            if independent && (s | m.neighborhood(s)) == m.all {
                return Ok(VertexSet::from_mask(s));
            }
        }
    }
    Err(Error::Internal("no maximal independent set found".into()))
}

/// An inclusion-maximal vertex set that is complete between its two sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biclique {
    pub vertices: VertexSet,
    /// Set when one side of the bipartition is not hit.
    pub one_sided: bool,
}

pub fn maximal_bicliques_bruteforce(
    g: &Graph,
    bipartition: (&VertexSet, &VertexSet),
    max_n: usize,
) -> Result<Vec<Biclique>> {
    guard(g, max_n)?;
    let (a_set, b_set) = bipartition;
    check_bipartition(g, a_set, b_set)?;
    let m = Masks::new(g);
    let (a, b) = (a_set.to_mask(), b_set.to_mask());
    let complete_to = |side: u64, other: u64| {
        VertexSet::from_mask(side)
            .iter()
            .all(|v| other & !m.adj[v] == 0)
    };
    let mut out = Vec::new();
    for u in 0..=m.all {
        let (ua, ub) = (u & a, u & b);
        if !complete_to(ua, ub) {
            continue;
        }
        let extendable = VertexSet::from_mask(m.all & !u).iter().any(|v| {
            if a >> v & 1 == 1 {
                ub & !m.adj[v] == 0
            } else {
                ua & !m.adj[v] == 0
            }
        });
        if !extendable {
            out.push(Biclique {
                vertices: VertexSet::from_mask(u),
                one_sided: ua == 0 || ub == 0,
            });
        }
    }
    out.sort_by(|x, y| x.vertices.cmp(&y.vertices));
    Ok(out)
}

pub(crate) fn check_bipartition(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<()> {
    if !a.is_disjoint(b) || a.union(b) != g.vertices() {
        return Err(contract("sides must partition the vertex set"));
    }
    for side in [a, b] {
        if side.iter().any(|v| g.neighbors(v).intersects(side)) {
            return Err(contract("an edge lies inside one side of the bipartition"));
        }
    }
    Ok(())
}

/// Streams every minimal separator exactly once.
///
/// Seeds are the close separators `N(C)` for components `C` of `G - N[v]`;
/// each discovered separator `S` is then expanded through every `x` in `S`
/// into `N(C)` for the components `C` of `G - (S ∪ N(x))`, until no new set
/// appears. Work between two outputs is polynomial.
pub struct MinimalSeparators<'g> {
    g: &'g Graph,
    seen: HashSet<VertexSet>,
    queue: VecDeque<VertexSet>,
    ready: VecDeque<Separator>,
    next_seed: usize,
}

pub fn enum_minimal_separators_delay(g: &Graph) -> MinimalSeparators<'_> {
    MinimalSeparators {
        g,
        seen: HashSet::new(),
        queue: VecDeque::new(),
        ready: VecDeque::new(),
        next_seed: 0,
    }
}

impl MinimalSeparators<'_> {
    fn offer(&mut self, blocked: &VertexSet) {
        for c in components(self.g, blocked) {
            let s = neighborhood(self.g, &c);
            if self.seen.contains(&s) {
                continue;
            }
            if let Some(sep) = is_minimal_separator(self.g, &s) {
                self.seen.insert(s.clone());
                self.queue.push_back(s);
                self.ready.push_back(sep);
            }
        }
    }

    /// One unit of work; false once the closure is complete.
    fn advance(&mut self) -> bool {
        if self.next_seed < self.g.n() {
            let v = self.next_seed;
            self.next_seed += 1;
            let mut closed = self.g.neighbors(v).clone();
            closed.insert(v);
            self.offer(&closed);
            return true;
        }
        let Some(s) = self.queue.pop_front() else {
            return false;
        };
        for x in s.iter() {
            let blocked = s.union(self.g.neighbors(x));
            self.offer(&blocked);
        }
        true
    }
}

impl Iterator for MinimalSeparators<'_> {
    type Item = Separator;

    fn next(&mut self) -> Option<Separator> {
        loop {
            if let Some(sep) = self.ready.pop_front() {
                return Some(sep);
            }
            if !self.advance() {
                return None;
            }
        }
    }
}

/// Maximum over the enumerated separators; ties go to the canonically smallest
/// set. No scale guard: the cost is polynomial in the number of separators.
pub fn max_minimal_separator_enumerated(g: &Graph, weighted: bool) -> Option<(Separator, u64)> {
    let value = |s: &Separator| if weighted { g.set_weight(s.set()) } else { s.size() as u64 };
    enum_minimal_separators_delay(g)
        .map(|s| (value(&s), s))
        .max_by(|(va, a), (vb, b)| va.cmp(vb).then_with(|| b.set().cmp(a.set())))
        .map(|(v, s)| (s, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, grid, path};

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn sets(seps: &[Separator]) -> Vec<VertexSet> {
        seps.iter().map(|s| s.set().clone()).collect()
    }

    #[test]
    fn gosper_counts() {
        assert_eq!(masks_of_size(5, 2).count(), 10);
        assert_eq!(masks_of_size(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(masks_of_size(3, 3).collect::<Vec<_>>(), vec![7]);
        assert_eq!(masks_of_size(3, 4).count(), 0);
    }

    #[test]
    fn bruteforce_enumeration_examples() {
        let c5 = enum_minimal_separators_bruteforce(&cycle(5).unwrap(), DEFAULT_MAX_N).unwrap();
        assert_eq!(
            sets(&c5),
            vec![set(&[0, 2]), set(&[0, 3]), set(&[1, 3]), set(&[1, 4]), set(&[2, 4])]
        );
        let p4 = enum_minimal_separators_bruteforce(&path(4), DEFAULT_MAX_N).unwrap();
        assert_eq!(sets(&p4), vec![set(&[1]), set(&[2])]);
        assert!(enum_minimal_separators_bruteforce(&complete(4), DEFAULT_MAX_N).unwrap().is_empty());
    }

    #[test]
    fn scale_guard_refuses() {
        let err = enum_minimal_separators_bruteforce(&path(21), DEFAULT_MAX_N).unwrap_err();
        assert_eq!(err, Error::ScaleGuard { n: 21, max_n: 20 });
        assert!(max_minimal_separator_bruteforce(&path(5), false, 4).is_err());
        assert!(max_minimal_separator_bruteforce(&path(70), false, 100).is_err());
    }

    #[test]
    fn delay_enumeration_examples() {
        let c5 = cycle(5).unwrap();
        let mut got = sets(&enum_minimal_separators_delay(&c5).collect::<Vec<_>>());
        got.sort();
        assert_eq!(got, sets(&enum_minimal_separators_bruteforce(&c5, 20).unwrap()));
        assert_eq!(enum_minimal_separators_delay(&complete(4)).count(), 0);
        let p3: Vec<_> = enum_minimal_separators_delay(&path(3)).collect();
        assert_eq!(sets(&p3), vec![set(&[1])]);
    }

    #[test]
    fn delay_enumeration_on_disconnected_graph() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let mut got = sets(&enum_minimal_separators_delay(&g).collect::<Vec<_>>());
        got.sort();
        assert_eq!(got, vec![set(&[]), set(&[1])]);
    }

    #[test]
    fn max_separator_examples() {
        let v = |g: &Graph| max_minimal_separator_bruteforce(g, false, 20).unwrap().map(|(_, v)| v);
        assert_eq!(v(&cycle(4).unwrap()), Some(2));
        assert_eq!(v(&grid(3, 3)), Some(3));
        let (sep, val) = max_minimal_separator_bruteforce(&complete_bipartite(2, 3), false, 20)
            .unwrap()
            .unwrap();
        // Both sides separate: {2,3,4} leaves {0} and {1} as full components.
        assert_eq!(val, 3);
        assert_eq!(sep.set(), &set(&[2, 3, 4]));
        assert_eq!(v(&complete(5)), None);
        assert_eq!(max_minimal_separator_enumerated(&grid(3, 3), false).map(|(_, v)| v), Some(3));
    }

    #[test]
    fn weighted_max_prefers_heavy_separator() {
        // P4 with the inner vertex 2 heavy: {2} beats {1}.
        let g = path(4).with_weights(vec![1, 1, 5, 1]).unwrap();
        let (sep, w) = max_minimal_separator_bruteforce(&g, true, 20).unwrap().unwrap();
        assert_eq!((sep.set().clone(), w), (set(&[2]), 5));
        let (sep, w) = max_minimal_separator_enumerated(&g, true).unwrap();
        assert_eq!((sep.set().clone(), w), (set(&[2]), 5));
    }

    #[test]
    fn connected_cut_examples() {
        let k4 = max_connected_cut_bruteforce(&complete(4), false, 20).unwrap().unwrap();
        assert_eq!(k4.cutset_size(), 4);
        let c4 = max_connected_cut_bruteforce(&cycle(4).unwrap(), true, 20).unwrap().unwrap();
        assert_eq!(c4.cutset_size(), 2);
        assert!(max_connected_cut_bruteforce(&path(2), true, 20).unwrap().is_none());
        assert_eq!(max_connected_cut_bruteforce(&path(2), false, 20).unwrap().unwrap().cutset_size(), 1);
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(max_connected_cut_bruteforce(&two, false, 20), Err(Error::Contract(_))));
    }

    #[test]
    fn independent_dominating_examples() {
        assert_eq!(min_independent_dominating_set_bruteforce(&cycle(6).unwrap(), 20).unwrap().len(), 2);
        assert_eq!(min_independent_dominating_set_bruteforce(&path(4), 20).unwrap().len(), 2);
        assert_eq!(min_independent_dominating_set_bruteforce(&complete(3), 20).unwrap().len(), 1);
        // Two adjacent centres dominate, but an independent choice needs three.
        let double_star = Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        assert_eq!(min_independent_dominating_set_bruteforce(&double_star, 20).unwrap().len(), 3);
    }

    #[test]
    fn biclique_examples() {
        // 3K2: a_i = i, b_i = 3 + i.
        let g = Graph::from_edges(6, [(0, 3), (1, 4), (2, 5)]).unwrap();
        let (a, b) = (set(&[0, 1, 2]), set(&[3, 4, 5]));
        let bc = maximal_bicliques_bruteforce(&g, (&a, &b), 20).unwrap();
        let two_sided: Vec<_> = bc.iter().filter(|x| !x.one_sided).map(|x| x.vertices.clone()).collect();
        assert_eq!(two_sided, vec![set(&[0, 3]), set(&[1, 4]), set(&[2, 5])]);
        let one_sided: Vec<_> = bc.iter().filter(|x| x.one_sided).map(|x| x.vertices.clone()).collect();
        assert_eq!(one_sided, vec![a.clone(), b.clone()]);

        let k22 = complete_bipartite(2, 2);
        let bc = maximal_bicliques_bruteforce(&k22, (&set(&[0, 1]), &set(&[2, 3])), 20).unwrap();
        assert_eq!(bc, vec![Biclique { vertices: set(&[0, 1, 2, 3]), one_sided: false }]);

        let empty = Graph::empty(4);
        let bc = maximal_bicliques_bruteforce(&empty, (&set(&[0, 1]), &set(&[2, 3])), 20).unwrap();
        let got: Vec<_> = bc.iter().map(|x| (x.vertices.clone(), x.one_sided)).collect();
        assert_eq!(got, vec![(set(&[0, 1]), true), (set(&[2, 3]), true)]);

        assert!(maximal_bicliques_bruteforce(&g, (&set(&[0, 3]), &set(&[1, 2, 4, 5])), 20).is_err());
    }
}
