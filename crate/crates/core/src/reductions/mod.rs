//! Constructive reductions with certificates.
//!
//! Each constructor returns a [`ReductionCertificate`] holding both graphs, the
//! correspondence data, and how thresholds move between the two problems.
//! [`verify_reduction`] rebuilds the target from the source and checks the
//! reduction's biconditional at every threshold with the oracles.

mod cobipartite;
mod composition;
mod linegraph;
mod subdivision;

pub use cobipartite::cobipartite_reduction;
pub use composition::compose_universal;
pub use linegraph::{find_claw, line_graph, linegraph_reduction, LineGraph};
pub use subdivision::subdivide_cubic;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cut, Graph, Separator, VertexSet};
use crate::oracle::max_minimal_separator_enumerated;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Subdivision,
    Cobipartite,
    Linegraph,
    Composition,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Kind::Subdivision => "subdivision",
            Kind::Cobipartite => "cobipartite",
            Kind::Linegraph => "linegraph",
            Kind::Composition => "composition",
        };
        f.write_str(s)
    }
}

/// How a source threshold `k` becomes a target threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum ThresholdMap {
    /// `k ↦ k`.
    Identity,
    /// `k ↦ total - k`; the source minimises while the target maximises.
    Complement { total: u64 },
    /// `k ↦ k + by`.
    Shift { by: u64 },
}

impl ThresholdMap {
    pub fn apply(&self, k: u64) -> Option<u64> {
        match *self {
            ThresholdMap::Identity => Some(k),
            ThresholdMap::Complement { total } => total.checked_sub(k),
            ThresholdMap::Shift { by } => Some(k + by),
        }
    }
}

/// Kind-specific correspondence data. Vertex ids refer to the graph named in
/// each field's comment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Detail {
    Subdivision {
        /// `(u, v, w)`: source edge `{u,v}` is subdivided by target vertex `w`.
        edge_vertex: Vec<(usize, usize, usize)>,
    },
    Cobipartite {
        /// The source bipartition.
        side_a: Vec<usize>,
        side_b: Vec<usize>,
        /// Source vertices isolated in the source; they sit in every maximal
        /// independent set and are counted as an offset.
        forced: Vec<usize>,
        /// Source vertices adjacent to the whole other side.
        irrelevant: Vec<usize>,
        /// The preprocessed instance; the target shares its vertex ids.
        instance: Graph,
        /// Instance id ↦ source id; `None` marks a guard vertex.
        instance_to_source: Vec<Option<usize>>,
        instance_side_a: Vec<usize>,
        /// Instance ids of the guard edge, when one was added.
        guard: Option<(usize, usize)>,
    },
    Linegraph {
        /// Source plus one pendant per vertex.
        augmented: Graph,
        /// Augmented id of the pendant attached to each source vertex.
        pendant_of: Vec<usize>,
        /// Target vertex ↦ edge of the augmented graph.
        edge_of: Vec<(usize, usize)>,
    },
    Composition {
        parts: Vec<Graph>,
        /// Target id of vertex 0 of each part.
        offsets: Vec<usize>,
        universal: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub kind: Kind,
    pub source: Graph,
    pub target: Graph,
    pub detail: Detail,
    pub threshold_map: ThresholdMap,
}

/// A solution on the source side of a reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceSolution {
    Cut(Cut),
    /// Maximal independent set, in instance ids for the co-bipartite kind.
    IndependentSet(VertexSet),
    PartSeparator { part: usize, separator: VertexSet },
}

impl ReductionCertificate {
    /// Maps a source solution to a minimal separator certified in the target.
    pub fn translate_forward(&self, sol: &SourceSolution) -> Result<Separator> {
        match (&self.detail, sol) {
            (Detail::Subdivision { .. }, SourceSolution::Cut(cut)) => subdivision::forward(self, cut),
            (Detail::Cobipartite { .. }, SourceSolution::IndependentSet(u)) => cobipartite::forward(self, u),
            (Detail::Linegraph { .. }, SourceSolution::Cut(cut)) => linegraph::forward(self, cut),
            (Detail::Composition { .. }, SourceSolution::PartSeparator { part, separator }) => {
                composition::forward(self, *part, separator)
            }
            _ => Err(Error::Precondition(format!("solution type does not fit a {} certificate", self.kind))),
        }
    }

    /// Maps a minimal separator of the target back to a source solution.
    /// `None` when the separator has no source counterpart (the universal
    /// vertex alone, in a composition).
    pub fn translate_back(&self, sep: &VertexSet) -> Result<Option<SourceSolution>> {
        if crate::graph::is_minimal_separator(&self.target, sep).is_none() {
            return Err(Error::Precondition(format!("{sep} is not a minimal separator of the target")));
        }
        match &self.detail {
            Detail::Subdivision { .. } => subdivision::back(self, sep).map(Some),
            Detail::Cobipartite { .. } => cobipartite::back(self, sep).map(Some),
            Detail::Linegraph { .. } => linegraph::back(self, sep).map(Some),
            Detail::Composition { .. } => composition::back(self, sep),
        }
    }

    /// Runs the kind's construction on the stored source again.
    pub fn rebuild(&self) -> Result<ReductionCertificate> {
        match &self.detail {
            Detail::Subdivision { .. } => subdivide_cubic(&self.source),
            Detail::Cobipartite { side_a, side_b, .. } => {
                let a: VertexSet = side_a.iter().copied().collect();
                let b: VertexSet = side_b.iter().copied().collect();
                cobipartite_reduction(&self.source, Some((&a, &b)))
            }
            Detail::Linegraph { .. } => linegraph_reduction(&self.source),
            Detail::Composition { parts, .. } => compose_universal(parts),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdCheck {
    pub k: u64,
    /// Source side of the biconditional at `k`.
    pub source: bool,
    /// Target side, at the mapped threshold.
    pub target: bool,
    /// False where the reduction makes no claim; such rows never fail.
    pub in_range: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub kind: Kind,
    /// The stored target equals a fresh construction from the source.
    pub reconstructs: bool,
    pub source_optimum: Option<u64>,
    pub target_optimum: Option<u64>,
    pub checks: Vec<ThresholdCheck>,
    /// Extra biconditionals the reduction relies on (the pendant step of the
    /// line-graph chain), in the same shape.
    pub auxiliary: Vec<ThresholdCheck>,
    pub first_violation: Option<u64>,
    pub pass: bool,
}

/// Checks the certificate's biconditional at every threshold.
///
/// Source optima come from the exhaustive oracles under the `max_n` guard.
/// Target optima come from the polynomial-delay enumerator, which needs no
/// guard and keeps larger targets (subdivisions, line graphs) in reach.
pub fn verify_reduction(cert: &ReductionCertificate, max_n: usize) -> Result<VerifyReport> {
    let reconstructs = cert.rebuild().is_ok_and(|fresh| fresh == *cert);
    let target_optimum = max_minimal_separator_enumerated(&cert.target, false).map(|(_, v)| v);
    let target_at = |k: Option<u64>| k.is_some_and(|k| target_optimum.is_some_and(|t| t >= k));
    let (source_optimum, checks, auxiliary) = match &cert.detail {
        Detail::Subdivision { .. } => subdivision::checks(cert, max_n, &target_at)?,
        Detail::Cobipartite { .. } => cobipartite::checks(cert, max_n, &target_at)?,
        Detail::Linegraph { .. } => linegraph::checks(cert, max_n, &target_at)?,
        Detail::Composition { .. } => composition::checks(cert, max_n, &target_at)?,
    };
    let first_violation = checks
        .iter()
        .chain(&auxiliary)
        .filter(|c| c.in_range && c.source != c.target)
        .map(|c| c.k)
        .min();
    Ok(VerifyReport {
        kind: cert.kind,
        reconstructs,
        source_optimum,
        target_optimum,
        pass: reconstructs && first_violation.is_none(),
        checks,
        auxiliary,
        first_violation,
    })
}

type Checks = (Option<u64>, Vec<ThresholdCheck>, Vec<ThresholdCheck>);

/// Rows `k = 0..=max_k` comparing "source optimum >= k" with the target at
/// the mapped threshold.
fn max_rows(
    cert: &ReductionCertificate,
    source_optimum: Option<u64>,
    max_k: u64,
    in_range: impl Fn(u64) -> bool,
    target_at: &dyn Fn(Option<u64>) -> bool,
) -> Vec<ThresholdCheck> {
    (0..=max_k)
        .map(|k| ThresholdCheck {
            k,
            source: source_optimum.is_some_and(|s| s >= k),
            target: target_at(cert.threshold_map.apply(k)),
            in_range: in_range(k),
        })
        .collect()
}
