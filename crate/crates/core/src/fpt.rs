//! The fixed-parameter decision procedure.
//!
//! [`find_sep`] walks down a chain of saturations `G_0, G_1, ...`. At each
//! graph it either stops with a small leaf, finds a separator that is already
//! large enough, splits along a small one and recurses, or hits a complete
//! graph. In the last case the chain is used to either dig out a large
//! separator of the original graph or to hand back a clique separator along
//! which the whole problem splits. [`solve`] drives all of this and falls back
//! to the tree-decomposition dynamic program when the recursion bottoms out.

use std::sync::Arc;

use crate::error::{contract, Error, Result};
use crate::graph::{
    close_minimal_separator, components, full_components, is_clique, is_minimal_separator, saturate, Graph,
    Separator, VertexSet,
};
use crate::td::{assemble_td, filled_graph, max_minimal_separator_dp, validate_td, TreeDecomposition};

/// The bound `k` a separator has to reach, by size or by weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threshold {
    pub k: u64,
    pub weighted: bool,
}

impl Threshold {
    pub fn value(&self, g: &Graph, s: &VertexSet) -> u64 {
        if self.weighted {
            g.set_weight(s)
        } else {
            s.len() as u64
        }
    }

    pub fn met_by(&self, g: &Graph, s: &VertexSet) -> bool {
        self.value(g, s) >= self.k
    }
}

/// A graph in the saturation chain, with its vertices named in the root.
#[derive(Debug, Clone)]
pub struct Frame {
    pub graph: Arc<Graph>,
    pub to_root: Arc<[usize]>,
}

impl Frame {
    fn root(g: Graph) -> Frame {
        let ids: Vec<usize> = (0..g.n()).collect();
        Frame {
            graph: Arc::new(g),
            to_root: ids.into(),
        }
    }

    pub fn lift(&self, local: &VertexSet) -> VertexSet {
        local.iter().map(|v| self.to_root[v]).collect()
    }

    /// Local ids of root vertices; `None` if one is missing from this frame.
    pub fn localize(&self, root_ids: &VertexSet) -> Option<VertexSet> {
        root_ids
            .iter()
            .map(|r| self.to_root.binary_search(&r).ok())
            .collect()
    }
}

/// One recorded split: `G_{j+1} = saturate(G_j, C_j, S_j)`, sets in `G_j` ids.
#[derive(Debug)]
pub struct LineageStep {
    pub frame: Frame,
    pub separator: VertexSet,
    pub component: VertexSet,
}

/// The saturation chain along one recursion path. Cloning is cheap and each
/// branch of the recursion extends its own copy.
#[derive(Debug, Clone)]
pub struct Lineage {
    root: Arc<Graph>,
    steps: Vec<Arc<LineageStep>>,
    head: Frame,
}

impl Lineage {
    pub fn new(root: Graph) -> Lineage {
        let head = Frame::root(root);
        Lineage {
            root: Arc::clone(&head.graph),
            steps: Vec::new(),
            head,
        }
    }

    pub fn root(&self) -> &Graph {
        &self.root
    }

    pub fn steps(&self) -> &[Arc<LineageStep>] {
        &self.steps
    }

    /// The last graph of the chain.
    pub fn head(&self) -> &Frame {
        &self.head
    }

    /// Records `(separator, component)` on the head and saturates.
    pub fn extend(&self, separator: &VertexSet, component: &VertexSet) -> Result<Lineage> {
        if is_minimal_separator(&self.head.graph, separator).is_none() {
            return Err(contract(format!("{separator} is not a minimal separator of the head graph")));
        }
        let sat = saturate(&self.head.graph, component, separator)?;
        let to_root: Vec<usize> = sat.to_parent.iter().map(|&v| self.head.to_root[v]).collect();
        let mut steps = self.steps.clone();
        steps.push(Arc::new(LineageStep {
            frame: self.head.clone(),
            separator: separator.clone(),
            component: component.clone(),
        }));
        Ok(Lineage {
            root: Arc::clone(&self.root),
            steps,
            head: Frame {
                graph: Arc::new(sat.graph),
                to_root: to_root.into(),
            },
        })
    }

    fn frame(&self, j: usize) -> &Frame {
        self.steps.get(j).map_or(&self.head, |s| &s.frame)
    }
}

/// Recursion tree of a run that never found a large separator. Vertex sets
/// are in root ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompNode {
    Leaf(VertexSet),
    Separator {
        separator: VertexSet,
        children: Vec<DecompNode>,
    },
}

impl DecompNode {
    /// All separator-node sets, preorder.
    pub fn separators(&self) -> Vec<&VertexSet> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            if let DecompNode::Separator { separator, children } = node {
                out.push(separator);
                stack.extend(children.iter().rev());
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FindSepOutcome {
    /// Certified against the root graph of the lineage.
    LargeSeparator(Separator),
    DecompositionTree(DecompNode),
    /// A clique minimal separator of the root and one of its full components.
    CliqueSplit {
        separator: VertexSet,
        component: VertexSet,
    },
}

/// One run of the recursive procedure on the head of `lineage`.
///
/// `h` must be the head graph and `s` the separator it was split off by
/// (empty at the root); `s` has to stay below the threshold.
pub fn find_sep(h: &Graph, s: &VertexSet, threshold: Threshold, lineage: &Lineage) -> Result<FindSepOutcome> {
    if *h != *lineage.head().graph {
        return Err(contract("graph does not match the head of the lineage"));
    }
    if threshold.k == 0 {
        return Err(contract("threshold must be at least 1"));
    }
    if !s.is_subset(&h.vertices()) {
        return Err(contract("s is not a subset of V(h)"));
    }
    if threshold.met_by(h, s) {
        return Err(contract(format!("s = {s} already meets the threshold {}", threshold.k)));
    }
    if lineage.steps().is_empty() && h.is_complete() {
        return Err(contract("the root graph is complete and has no minimal separator"));
    }
    step(lineage, threshold)
}

fn step(lineage: &Lineage, thr: Threshold) -> Result<FindSepOutcome> {
    let head = lineage.head();
    let h = &*head.graph;
    if (h.n() as u64) < 2 * thr.k {
        return Ok(FindSepOutcome::DecompositionTree(DecompNode::Leaf(head.lift(&h.vertices()))));
    }
    let Some(split) = any_minimal_separator(h)? else {
        return complete_head(lineage, thr);
    };
    if thr.met_by(h, &split) {
        let lifted = head.lift(&split);
        let sep = is_minimal_separator(lineage.root(), &lifted)
            .ok_or_else(|| Error::Internal(format!("{lifted} does not lift to the root graph")))?;
        return Ok(FindSepOutcome::LargeSeparator(sep));
    }
    let mut children = Vec::new();
    for c in components(h, &split) {
        let child = lineage.extend(&split, &c)?;
        match step(&child, thr)? {
            FindSepOutcome::DecompositionTree(node) => children.push(node),
            other => return Ok(other),
        }
    }
    Ok(FindSepOutcome::DecompositionTree(DecompNode::Separator {
        separator: head.lift(&split),
        children,
    }))
}

/// `∅` for a disconnected graph, else the close separator of the smallest
/// nonadjacent pair; `None` when the graph is complete.
fn any_minimal_separator(h: &Graph) -> Result<Option<VertexSet>> {
    if !h.is_connected() {
        return Ok(Some(VertexSet::new(h.n())));
    }
    match first_nonadjacent_pair(h, &h.vertices()) {
        Some((u, v)) => Ok(Some(close_minimal_separator(h, u, v)?.into_set())),
        None => Ok(None),
    }
}

fn first_nonadjacent_pair(g: &Graph, within: &VertexSet) -> Option<(usize, usize)> {
    within.iter().find_map(|u| {
        let mut rest = within.difference(g.neighbors(u));
        rest.remove(u);
        rest.iter().find(|&v| v > u).map(|v| (u, v))
    })
}

fn complete_head(lineage: &Lineage, thr: Threshold) -> Result<FindSepOutcome> {
    let k_clique = lineage.head().lift(&lineage.head().graph.vertices());
    let root = lineage.root();
    if !is_clique(root, &k_clique) {
        let sep = extract_large_separator(lineage, &k_clique, root, thr)?;
        return Ok(FindSepOutcome::LargeSeparator(sep));
    }
    let last = lineage
        .steps()
        .last()
        .ok_or_else(|| contract("the root graph is complete"))?;
    let separator = last.frame.lift(&last.separator);
    let component = full_components(root, &separator)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal(format!("{separator} has no full component in the root")))?;
    Ok(FindSepOutcome::CliqueSplit { separator, component })
}

/// Digs a separator meeting the threshold out of a head clique `k_clique`
/// (root ids) that is not a clique of `original`.
///
/// Takes the last graph `G_j` of the chain in which the set is not yet a
/// clique. Its smallest nonadjacent pair `u, v` was joined by fill, so both
/// lie in `S_j`, and every other member of the set is a common neighbour.
/// The close `u,v`-separator contains all common neighbours and stays a
/// minimal separator all the way back to `original`.
pub fn extract_large_separator(
    lineage: &Lineage,
    k_clique: &VertexSet,
    original: &Graph,
    threshold: Threshold,
) -> Result<Separator> {
    if *original != *lineage.root() {
        return Err(contract("original graph differs from the lineage root"));
    }
    let head = lineage.head();
    let local = head
        .localize(k_clique)
        .ok_or_else(|| contract(format!("{k_clique} is not inside the head graph")))?;
    if !is_clique(&head.graph, &local) {
        return Err(contract(format!("{k_clique} is not a clique in the head graph")));
    }
    if is_clique(original, k_clique) {
        return Err(contract(format!("{k_clique} is already a clique in the original graph")));
    }
    let m = lineage.steps().len();
    let (frame, pair) = (0..m)
        .rev()
        .find_map(|j| {
            let frame = lineage.frame(j);
            let local = frame.localize(k_clique)?;
            first_nonadjacent_pair(&frame.graph, &local).map(|p| (frame, p))
        })
        .ok_or_else(|| Error::Internal("no graph in the chain breaks the clique".into()))?;
    let sep = close_minimal_separator(&frame.graph, pair.0, pair.1)?;
    let lifted = frame.lift(sep.set());
    let sep = is_minimal_separator(original, &lifted)
        .ok_or_else(|| Error::Internal(format!("{lifted} does not lift to the original graph")))?;
    if !threshold.met_by(original, sep.set()) {
        return Err(contract(format!(
            "extracted separator {} misses the threshold {}; the clique was too small",
            sep.set(),
            threshold.k
        )));
    }
    Ok(sep)
}

/// Validation record for one decomposition that reached the DP.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdRecord {
    pub k: u64,
    pub n: usize,
    pub bags: usize,
    pub width: usize,
    /// Valid for the graph plus cliques on every separator node.
    pub valid_filled: bool,
    pub valid_original: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub clique_splits: usize,
    pub decompositions: Vec<TdRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub decision: bool,
    /// Certified against the input graph whenever the decision is yes.
    pub certificate: Option<Separator>,
    pub stats: SolveStats,
}

/// Decides whether `g` has a minimal separator of size (or weight) at least `k`.
pub fn solve(g: &Graph, k: u64, weighted: bool) -> Result<SolveReport> {
    let mut stats = SolveStats::default();
    let certificate = if k == 0 {
        any_separator_anywhere(g)
    } else {
        drive(g, Threshold { k, weighted }, &mut stats)?
    };
    if let Some(sep) = &certificate {
        if !sep.certify(g) || (weighted && g.set_weight(sep.set()) < k) || (!weighted && (sep.size() as u64) < k) {
            return Err(Error::Internal(format!("certificate {} failed re-certification", sep.set())));
        }
    }
    Ok(SolveReport {
        decision: certificate.is_some(),
        certificate,
        stats,
    })
}

fn any_separator_anywhere(g: &Graph) -> Option<Separator> {
    if !g.is_connected() {
        return is_minimal_separator(g, &VertexSet::new(g.n()));
    }
    let (u, v) = first_nonadjacent_pair(g, &g.vertices())?;
    close_minimal_separator(g, u, v).ok()
}

/// Work list of induced subgraphs, each with its map to the ids of `g`.
fn drive(g: &Graph, thr: Threshold, stats: &mut SolveStats) -> Result<Option<Separator>> {
    let mut stack: Vec<(Graph, Vec<usize>)> = vec![(g.clone(), (0..g.n()).collect())];
    while let Some((part, to_g)) = stack.pop() {
        let comps = components(&part, &VertexSet::new(0));
        if comps.len() > 1 {
            for c in comps.iter().rev() {
                let (sub, map) = part.induced(c);
                stack.push((sub, map.iter().map(|&v| to_g[v]).collect()));
            }
            continue;
        }
        if part.is_complete() {
            continue;
        }
        let lineage = Lineage::new(part.clone());
        let found = match find_sep(&part, &VertexSet::new(0), thr, &lineage)? {
            FindSepOutcome::LargeSeparator(sep) => Some(sep),
            FindSepOutcome::DecompositionTree(tree) => {
                let td = assemble_td(&tree, part.n())?;
                stats.decompositions.push(record(&part, &tree, &td, thr.k));
                max_minimal_separator_dp(&part, &td, thr.weighted)?
                    .filter(|(_, value)| *value >= thr.k)
                    .map(|(sep, _)| sep)
            }
            FindSepOutcome::CliqueSplit { separator, component } => {
                stats.clique_splits += 1;
                let rest = part.vertices().difference(&component);
                for keep in [rest, component.union(&separator)] {
                    let (sub, map) = part.induced(&keep);
                    stack.push((sub, map.iter().map(|&v| to_g[v]).collect()));
                }
                None
            }
        };
        if let Some(sep) = found {
            let lifted: VertexSet = sep.set().iter().map(|v| to_g[v]).collect();
            return is_minimal_separator(g, &lifted)
                .map(Some)
                .ok_or_else(|| Error::Internal(format!("{lifted} is not a minimal separator of the input")));
        }
    }
    Ok(None)
}

fn record(part: &Graph, tree: &DecompNode, td: &TreeDecomposition, k: u64) -> TdRecord {
    TdRecord {
        k,
        n: part.n(),
        bags: td.bags.len(),
        width: td.width(),
        valid_filled: validate_td(&filled_graph(part, tree), td),
        valid_original: validate_td(part, td),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, grid, path};

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn thr(k: u64) -> Threshold {
        Threshold { k, weighted: false }
    }

    fn run(g: &Graph, k: u64) -> FindSepOutcome {
        let lin = Lineage::new(g.clone());
        find_sep(g, &VertexSet::default(), thr(k), &lin).unwrap()
    }

    #[test]
    fn c4_large_separator() {
        match run(&cycle(4).unwrap(), 2) {
            FindSepOutcome::LargeSeparator(s) => assert_eq!(s.set(), &set(&[1, 3])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn p4_single_leaf() {
        assert_eq!(
            run(&path(4), 3),
            FindSepOutcome::DecompositionTree(DecompNode::Leaf(set(&[0, 1, 2, 3])))
        );
    }

    #[test]
    fn c5_at_three_is_a_single_leaf() {
        assert_eq!(
            run(&cycle(5).unwrap(), 3),
            FindSepOutcome::DecompositionTree(DecompNode::Leaf(set(&[0, 1, 2, 3, 4])))
        );
    }

    #[test]
    fn c7_at_three_splits_twice() {
        // Close separator of (0, 2) is {1, 6}; the saturated far side is a
        // 6-cycle 1..6 that splits again on {2, 6}.
        let expected = DecompNode::Separator {
            separator: set(&[1, 6]),
            children: vec![
                DecompNode::Leaf(set(&[0, 1, 6])),
                DecompNode::Separator {
                    separator: set(&[2, 6]),
                    children: vec![DecompNode::Leaf(set(&[1, 2, 6])), DecompNode::Leaf(set(&[2, 3, 4, 5, 6]))],
                },
            ],
        };
        assert_eq!(run(&cycle(7).unwrap(), 3), FindSepOutcome::DecompositionTree(expected));
    }

    #[test]
    fn complete_root_is_rejected() {
        let k5 = complete(5);
        let lin = Lineage::new(k5.clone());
        assert!(matches!(
            find_sep(&k5, &VertexSet::default(), thr(1), &lin),
            Err(Error::Contract(_))
        ));
        assert!(!solve(&k5, 1, false).unwrap().decision);
        assert!(!solve(&k5, 0, false).unwrap().decision);
    }

    #[test]
    fn extraction_examples() {
        let c4 = cycle(4).unwrap();
        let lin = Lineage::new(c4.clone()).extend(&set(&[1, 3]), &set(&[0])).unwrap();
        assert!(lin.head().graph.is_complete());
        let sep = extract_large_separator(&lin, &set(&[0, 1, 3]), &c4, thr(2)).unwrap();
        assert_eq!(sep.set(), &set(&[0, 2]));

        // A clique already present in G_0.
        assert!(matches!(
            extract_large_separator(&lin, &set(&[0, 1]), &c4, thr(1)),
            Err(Error::Contract(_))
        ));

        let c5 = cycle(5).unwrap();
        let lin = Lineage::new(c5.clone()).extend(&set(&[1, 4]), &set(&[2, 3])).unwrap();
        assert!(matches!(
            extract_large_separator(&lin, &set(&[1, 2, 3, 4]), &c5, thr(2)),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn solve_examples() {
        let g = grid(3, 3);
        assert!(solve(&g, 3, false).unwrap().decision);
        assert!(!solve(&g, 4, false).unwrap().decision);

        let two = cycle(4).unwrap().disjoint_union(&cycle(4).unwrap());
        let r = solve(&two, 2, false).unwrap();
        assert!(r.decision);
        assert_eq!(r.certificate.unwrap().size(), 2);

        for n in 1..6 {
            assert!(!solve(&complete(n), 0, false).unwrap().decision);
        }
        assert!(solve(&Graph::empty(2), 0, false).unwrap().decision);
    }

    #[test]
    fn weighted_threshold_counts_weight() {
        let g = path(4).with_weights(vec![1, 1, 5, 1]).unwrap();
        let r = solve(&g, 5, true).unwrap();
        assert_eq!(r.certificate.unwrap().set(), &set(&[2]));
        assert!(!solve(&g, 6, true).unwrap().decision);
        assert!(!solve(&g, 2, false).unwrap().decision);
    }

    #[test]
    fn lineage_rejects_non_separators() {
        let lin = Lineage::new(path(4));
        assert!(lin.extend(&set(&[0]), &set(&[1, 2, 3])).is_err());
        assert!(lin.extend(&set(&[1]), &set(&[2])).is_err());
    }
}
