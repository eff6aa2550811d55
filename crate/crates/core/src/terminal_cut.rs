//! 2-approximate minimum k-terminal cuts built from two-terminal min cuts:
//! the isolating construction (each group versus the union of the others)
//! and the pairwise construction (one cut per group pair), plus repair of
//! cut sets that shatter the graph into more than k parts.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::flow::min_cut_st;
use crate::graph::{CutSet, DisjointSet, NodeId, Partition, WeightedGraph};

/// k vertex groups to separate pairwise. Groups must be nonempty with
/// k >= 2; disjointness is checked by the operations (the pairwise cut
/// treats overlapping groups as a skip, not an error).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalSpec {
    groups: Vec<BTreeSet<NodeId>>,
}

impl TerminalSpec {
    pub fn new(g: &WeightedGraph, groups: Vec<Vec<NodeId>>) -> Result<Self> {
        if groups.len() < 2 {
            return Err(Error::InvalidTerminals(
                "need at least two terminal groups".into(),
            ));
        }
        let mut sets = Vec::with_capacity(groups.len());
        for (i, members) in groups.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::InvalidTerminals(format!("group {i} is empty")));
            }
            for &v in members {
                if v >= g.node_count() {
                    return Err(Error::InvalidNode(v));
                }
            }
            sets.push(members.iter().copied().collect::<BTreeSet<_>>());
        }
        Ok(Self { groups: sets })
    }

    /// One singleton group per terminal node.
    pub fn singletons(g: &WeightedGraph, terminals: &[NodeId]) -> Result<Self> {
        Self::new(g, terminals.iter().map(|&v| vec![v]).collect())
    }

    pub fn k(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[BTreeSet<NodeId>] {
        &self.groups
    }

    pub fn is_pairwise_disjoint(&self) -> bool {
        for i in 0..self.groups.len() {
            for j in (i + 1)..self.groups.len() {
                if !self.groups[i].is_disjoint(&self.groups[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Union of the k isolating cuts: for each group, the minimum cut
/// separating it from the union of the remaining groups. The result
/// separates all groups pairwise at no more than twice the weight of the
/// optimal k-terminal cut.
pub fn isolating_kcut(g: &WeightedGraph, spec: &TerminalSpec) -> Result<CutSet> {
    if !spec.is_pairwise_disjoint() {
        return Err(Error::InvalidTerminals(
            "groups overlap; isolating cuts need disjoint groups".into(),
        ));
    }
    let mut union = CutSet::empty();
    for i in 0..spec.k() {
        let side: Vec<NodeId> = spec.groups[i].iter().copied().collect();
        let others: Vec<NodeId> = spec
            .groups
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .flat_map(|(_, s)| s.iter().copied())
            .collect();
        let cut = min_cut_st(g, &side, &others)?;
        union = union.union(g, &cut)?;
    }
    Ok(union)
}

/// Outcome of the pairwise construction: overlapping groups make a
/// candidate unusable rather than erroneous.
#[derive(Debug, Clone, PartialEq)]
pub enum PairwiseCut {
    Cut(CutSet),
    /// Some pair of groups intersects; the candidate cannot certify a
    /// k-way separation.
    Skip,
}

/// Union of minimum cuts over all group pairs. Emits [`PairwiseCut::Skip`]
/// when any two groups intersect.
pub fn pairwise_kcut(g: &WeightedGraph, spec: &TerminalSpec) -> Result<PairwiseCut> {
    if !spec.is_pairwise_disjoint() {
        return Ok(PairwiseCut::Skip);
    }
    let mut union = CutSet::empty();
    for i in 0..spec.k() {
        for j in (i + 1)..spec.k() {
            let a: Vec<NodeId> = spec.groups[i].iter().copied().collect();
            let b: Vec<NodeId> = spec.groups[j].iter().copied().collect();
            let cut = min_cut_st(g, &a, &b)?;
            union = union.union(g, &cut)?;
        }
    }
    Ok(PairwiseCut::Cut(union))
}

/// Restores edges from `cut` until removing the rest leaves exactly `k`
/// connected components.
///
/// Removed edges are offered back in decreasing weight order and accepted
/// while they merge two distinct components and more than `k` components
/// remain, so the largest possible weight returns to the graph. Cut edges
/// that end up inside a final component are dropped from the returned set:
/// the result is exactly the crossing-edge set of the returned partition.
pub fn repair_to_k_parts(
    g: &WeightedGraph,
    cut: &CutSet,
    k: usize,
) -> Result<(CutSet, Partition)> {
    if k < 1 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    let start = g.components_after_removal(cut)?;
    if start.k() < k {
        return Err(Error::CannotReachK {
            wanted: k,
            got: start.k(),
        });
    }

    let mut dsu = DisjointSet::new(g.node_count());
    for &(u, v, _) in g.edges() {
        if !cut.contains(u, v) {
            dsu.union(u, v);
        }
    }
    let mut parts = start.k();
    let mut removed: Vec<(NodeId, NodeId, f64)> = cut
        .edges()
        .iter()
        .map(|&(u, v)| (u, v, g.edge_weight(u, v).expect("cut edge exists")))
        .collect();
    removed.sort_by(|a, b| {
        b.2.partial_cmp(&a.2)
            .expect("finite weights")
            .then((a.0, a.1).cmp(&(b.0, b.1)))
    });
    for &(u, v, _) in &removed {
        if parts == k {
            break;
        }
        if dsu.union(u, v) {
            parts -= 1;
        }
    }
    if parts > k {
        // The graph itself has more components than k; no amount of
        // restoring reaches k parts.
        return Err(Error::CannotReachK { wanted: k, got: parts });
    }

    let partition = Partition::from_root_labels(
        (0..g.node_count()).map(|v| dsu.find(v)).collect(),
    );
    debug_assert_eq!(partition.k(), k);
    let remaining: BTreeSet<(NodeId, NodeId)> = cut
        .edges()
        .iter()
        .filter(|&&(u, v)| partition.community_of(u) != partition.community_of(v))
        .copied()
        .collect();
    let repaired = CutSet::from_edges(g, remaining)?;
    Ok((repaired, partition))
}
