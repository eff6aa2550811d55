//! Weighted undirected graph with the primitives shared by every detection
//! algorithm: weighted degrees, hop distances, local areas, closeness-style
//! centrality, cut sets and component extraction after edge removal.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Dense node identifier in `0..n`.
pub type NodeId = usize;

/// Immutable undirected weighted graph. Edge weights are nonnegative
/// similarities; unit weights model unweighted networks.
///
/// The adjacency is symmetric, free of self-loops and duplicates, and sorted
/// by neighbor id, so every traversal is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    adj: Vec<Vec<(NodeId, f64)>>,
    /// Canonical edge list, sorted by (min endpoint, max endpoint).
    edges: Vec<(NodeId, NodeId, f64)>,
    degrees: Vec<f64>,
    total_weight: f64,
}

impl WeightedGraph {
    /// Builds a graph on `n` nodes from undirected edges `(u, v, w)`.
    ///
    /// Rejects self-loops, out-of-range endpoints, duplicate edges and
    /// negative or non-finite weights.
    pub fn from_edges(n: usize, input: &[(NodeId, NodeId, f64)]) -> Result<Self> {
        let mut edges: Vec<(NodeId, NodeId, f64)> = Vec::with_capacity(input.len());
        for &(u, v, w) in input {
            if u >= n {
                return Err(Error::InvalidNode(u));
            }
            if v >= n {
                return Err(Error::InvalidNode(v));
            }
            if u == v {
                return Err(Error::InvalidEdge {
                    u,
                    v,
                    reason: "self-loop".into(),
                });
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidEdge {
                    u,
                    v,
                    reason: format!("weight {w} is not a nonnegative finite number"),
                });
            }
            edges.push((u.min(v), u.max(v), w));
        }
        edges.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        for pair in edges.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                return Err(Error::InvalidEdge {
                    u: pair[0].0,
                    v: pair[0].1,
                    reason: "duplicate edge".into(),
                });
            }
        }

        let mut adj = vec![Vec::new(); n];
        let mut degrees = vec![0.0; n];
        let mut total_weight = 0.0;
        for &(u, v, w) in &edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
            degrees[u] += w;
            degrees[v] += w;
            total_weight += w;
        }
        for list in &mut adj {
            list.sort_by_key(|&(v, _)| v);
        }
        Ok(Self {
            adj,
            edges,
            degrees,
            total_weight,
        })
    }

    /// Unit-weight convenience constructor.
    pub fn unit_from_edges(n: usize, input: &[(NodeId, NodeId)]) -> Result<Self> {
        let weighted: Vec<_> = input.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        Self::from_edges(n, &weighted)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sum of all edge weights (each undirected edge counted once).
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Canonical edge list sorted by endpoints, each edge once with u < v.
    pub fn edges(&self) -> &[(NodeId, NodeId, f64)] {
        &self.edges
    }

    /// Index of the undirected edge `{u, v}` in [`Self::edges`].
    pub fn edge_index(&self, u: NodeId, v: NodeId) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges
            .binary_search_by(|&(a, b, _)| (a, b).cmp(&key))
            .ok()
    }

    /// Weight of the edge `{u, v}`, if present.
    pub fn edge_weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        self.edge_index(u, v).map(|i| self.edges[i].2)
    }

    pub fn neighbors(&self, u: NodeId) -> &[(NodeId, f64)] {
        &self.adj[u]
    }

    fn check_node(&self, u: NodeId) -> Result<()> {
        if u >= self.node_count() {
            return Err(Error::InvalidNode(u));
        }
        Ok(())
    }

    /// Weighted degree d(u): the sum of weights on edges incident to `u`.
    pub fn degree(&self, u: NodeId) -> Result<f64> {
        self.check_node(u)?;
        Ok(self.degrees[u])
    }

    /// Degree without the bounds check, for hot loops over known-valid ids.
    pub(crate) fn degree_unchecked(&self, u: NodeId) -> f64 {
        self.degrees[u]
    }

    /// Breadth-first hop distances from `u`. Unreachable nodes are `None`.
    ///
    /// Distances are hop counts: edge weights are similarities, so weighted
    /// shortest paths would invert the notion of closeness.
    pub fn hop_distances(&self, u: NodeId) -> Result<Vec<Option<usize>>> {
        self.check_node(u)?;
        let mut dist = vec![None; self.node_count()];
        dist[u] = Some(0);
        let mut frontier = vec![u];
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &x in &frontier {
                for &(y, _) in &self.adj[x] {
                    if dist[y].is_none() {
                        dist[y] = Some(d);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(dist)
    }

    /// The l-local area of `u`: `u` plus its `l` nearest nodes by hop
    /// distance.
    ///
    /// Within the hop layer that overflows the budget, nodes are admitted
    /// greedily by (weight of edges into the already-selected area,
    /// weighted degree, smaller id). Preferring locally attached nodes keeps
    /// the area inside one dense region instead of leaking through the few
    /// long-range edges every node has.
    pub fn local_area(&self, u: NodeId, l: usize) -> Result<LocalArea> {
        self.check_node(u)?;
        let dist = self.hop_distances(u)?;
        let mut layers: Vec<Vec<NodeId>> = Vec::new();
        for (v, d) in dist.iter().enumerate() {
            if let Some(d) = *d {
                if d > 0 {
                    if layers.len() < d {
                        layers.resize(d, Vec::new());
                    }
                    layers[d - 1].push(v);
                }
            }
        }

        let mut members: BTreeSet<NodeId> = BTreeSet::new();
        members.insert(u);
        let mut budget = l;
        for layer in &layers {
            if budget == 0 {
                break;
            }
            if layer.len() <= budget {
                budget -= layer.len();
                members.extend(layer.iter().copied());
                continue;
            }
            // Partial layer: greedy accretion by attachment to the area.
            let mut cohesion: Vec<f64> = layer
                .iter()
                .map(|&v| {
                    self.adj[v]
                        .iter()
                        .filter(|(w, _)| members.contains(w))
                        .map(|&(_, wt)| wt)
                        .sum()
                })
                .collect();
            let mut taken = vec![false; layer.len()];
            for _ in 0..budget {
                let mut best: Option<usize> = None;
                for (i, &v) in layer.iter().enumerate() {
                    if taken[i] {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some(j) => {
                            let (bc, bv) = (cohesion[j], layer[j]);
                            (cohesion[i], self.degrees[v], std::cmp::Reverse(v))
                                > (bc, self.degrees[bv], std::cmp::Reverse(bv))
                        }
                    };
                    if better {
                        best = Some(i);
                    }
                }
                let i = best.expect("layer has untaken nodes");
                taken[i] = true;
                let v = layer[i];
                members.insert(v);
                for &(w, wt) in &self.adj[v] {
                    if let Some(pos) = layer.iter().position(|&x| x == w) {
                        if !taken[pos] {
                            cohesion[pos] += wt;
                        }
                    }
                }
            }
            budget = 0;
        }

        Ok(LocalArea {
            center: u,
            radius_l: l,
            members,
        })
    }

    /// Closeness-style centrality over the h-local area:
    /// `Cen(u) = 1 / sum of hop distances from u to the members of V_u^h`.
    pub fn centrality(&self, u: NodeId, h: usize) -> Result<f64> {
        self.check_node(u)?;
        if h < 1 {
            return Err(Error::InvalidConfig("centrality requires h >= 1".into()));
        }
        let area = self.local_area(u, h)?;
        let dist = self.hop_distances(u)?;
        let sum: usize = area
            .members
            .iter()
            .filter(|&&v| v != u)
            .map(|&v| dist[v].expect("area members are reachable"))
            .sum();
        if sum == 0 {
            return Err(Error::UndefinedCentrality(u));
        }
        Ok(1.0 / sum as f64)
    }

    /// Connected components of `(V, E \ cut)`, indexed by smallest member id.
    pub fn components_after_removal(&self, cut: &CutSet) -> Result<Partition> {
        for &(u, v) in &cut.edges {
            if self.edge_index(u, v).is_none() {
                return Err(Error::InvalidEdge {
                    u,
                    v,
                    reason: "cut edge is not an edge of the graph".into(),
                });
            }
        }
        let mut dsu = DisjointSet::new(self.node_count());
        for &(u, v, _) in &self.edges {
            if !cut.contains(u, v) {
                dsu.union(u, v);
            }
        }
        Ok(Partition::from_root_labels(
            (0..self.node_count()).map(|v| dsu.find(v)).collect(),
        ))
    }

    /// True when every node is reachable from node 0.
    pub fn is_connected(&self) -> bool {
        if self.node_count() == 0 {
            return true;
        }
        self.hop_distances(0)
            .map(|d| d.iter().all(|x| x.is_some()))
            .unwrap_or(false)
    }

    /// The doubled k-way cut objective: `sum_i cut(S_i, complement of S_i)`.
    /// Every crossing edge is counted from both sides.
    pub fn kway_cut_weight(&self, p: &Partition) -> Result<f64> {
        Ok(2.0 * self.crossing_weight(p)?)
    }

    /// Undoubled total weight of edges whose endpoints lie in different
    /// communities; the quantity used everywhere as "weight of cut-edges".
    pub fn crossing_weight(&self, p: &Partition) -> Result<f64> {
        self.check_partition(p)?;
        Ok(self
            .edges
            .iter()
            .filter(|&&(u, v, _)| p.community_of(u) != p.community_of(v))
            .map(|&(_, _, w)| w)
            .sum())
    }

    /// The crossing edges of `p` as a [`CutSet`].
    pub fn crossing_edges(&self, p: &Partition) -> Result<CutSet> {
        self.check_partition(p)?;
        let edges: BTreeSet<(NodeId, NodeId)> = self
            .edges
            .iter()
            .filter(|&&(u, v, _)| p.community_of(u) != p.community_of(v))
            .map(|&(u, v, _)| (u, v))
            .collect();
        CutSet::from_edges(self, edges)
    }

    fn check_partition(&self, p: &Partition) -> Result<()> {
        if p.len() != self.node_count() {
            return Err(Error::PartitionMismatch(format!(
                "partition covers {} nodes, graph has {}",
                p.len(),
                self.node_count()
            )));
        }
        Ok(())
    }
}

/// The l-local area `V_u^l = {u} ∪ N_u^l` of a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalArea {
    pub center: NodeId,
    pub radius_l: usize,
    pub members: BTreeSet<NodeId>,
}

impl LocalArea {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_disjoint(&self, other: &LocalArea) -> bool {
        self.members.is_disjoint(&other.members)
    }
}

/// A k-way division of the vertex set. Community indices are canonical:
/// community `i` has the i-th smallest minimum member id, so two partitions
/// are equal iff they group nodes identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    k: usize,
}

impl Partition {
    /// Canonicalizes arbitrary per-node labels into community indices
    /// `0..k`, ordered by smallest contained node id.
    pub fn from_root_labels(labels: Vec<usize>) -> Self {
        let mut remap: Vec<Option<usize>> = vec![None; labels.len()];
        let mut next = 0;
        let mut assignment = vec![0; labels.len()];
        for (v, &label) in labels.iter().enumerate() {
            let slot = remap
                .get_mut(label)
                .expect("labels must be < node count; use from_communities otherwise");
            if slot.is_none() {
                *slot = Some(next);
                next += 1;
            }
            assignment[v] = slot.unwrap();
        }
        Self {
            assignment,
            k: next,
        }
    }

    /// Builds a partition from explicit community member lists covering
    /// `0..n` exactly once each.
    pub fn from_communities(n: usize, communities: &[Vec<NodeId>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (i, members) in communities.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::PartitionMismatch(format!("community {i} is empty")));
            }
            for &v in members {
                if v >= n {
                    return Err(Error::InvalidNode(v));
                }
                if labels[v] != usize::MAX {
                    return Err(Error::PartitionMismatch(format!(
                        "node {v} assigned to more than one community"
                    )));
                }
                labels[v] = i;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::PartitionMismatch(format!("node {v} is unassigned")));
        }
        Ok(Self::from_root_labels(labels))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of nodes covered.
    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn community_of(&self, v: NodeId) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Member lists, indexed by community; members ascend within each list.
    pub fn communities(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn community_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.assignment {
            sizes[c] += 1;
        }
        sizes
    }
}

/// A set of undirected edges with their total weight; the result of every
/// cut computation. Edges are stored as normalized `(min, max)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct CutSet {
    edges: BTreeSet<(NodeId, NodeId)>,
    total_weight: f64,
}

impl CutSet {
    /// An empty cut.
    pub fn empty() -> Self {
        Self {
            edges: BTreeSet::new(),
            total_weight: 0.0,
        }
    }

    /// Builds a cut set from edges of `g`, recomputing the total weight.
    pub fn from_edges(g: &WeightedGraph, edges: BTreeSet<(NodeId, NodeId)>) -> Result<Self> {
        let mut total = 0.0;
        let mut normalized = BTreeSet::new();
        for &(u, v) in &edges {
            let w = g.edge_weight(u, v).ok_or(Error::InvalidEdge {
                u,
                v,
                reason: "not an edge of the graph".into(),
            })?;
            normalized.insert((u.min(v), u.max(v)));
            total += w;
        }
        Ok(Self {
            edges: normalized,
            total_weight: total,
        })
    }

    pub fn edges(&self) -> &BTreeSet<(NodeId, NodeId)> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn contains(&self, u: NodeId, v: NodeId) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Union of two cuts over the same graph.
    pub fn union(&self, g: &WeightedGraph, other: &CutSet) -> Result<CutSet> {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().copied());
        CutSet::from_edges(g, edges)
    }
}

/// Union-find over dense node ids.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        match self.rank[rx].cmp(&self.rank[ry]) {
            std::cmp::Ordering::Less => self.parent[rx] = ry,
            std::cmp::Ordering::Greater => self.parent[ry] = rx,
            std::cmp::Ordering::Equal => {
                self.parent[ry] = rx;
                self.rank[rx] += 1;
            }
        }
        true
    }
}
