//! s-t maximum flow / minimum cut with set-valued terminals: the
//! two-terminal cut primitive behind every flow-based algorithm here.
//!
//! Augmenting paths are found breadth-first (shortest first), which
//! terminates on real-valued capacities and meets the usual O(m^2 n) bound.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{CutSet, NodeId, WeightedGraph};

/// Residual network with paired arcs; arc `i`'s reverse is `i ^ 1`.
struct FlowNetwork {
    first: Vec<i32>,
    to: Vec<u32>,
    next: Vec<i32>,
    cap: Vec<f64>,
    eps: f64,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        Self {
            first: vec![-1; nodes],
            to: Vec::new(),
            next: Vec::new(),
            cap: Vec::new(),
            eps: 1e-12,
        }
    }

    fn add_pair(&mut self, u: usize, v: usize, cap_uv: f64, cap_vu: f64) {
        for (a, b, c) in [(u, v, cap_uv), (v, u, cap_vu)] {
            let idx = self.to.len() as i32;
            self.to.push(b as u32);
            self.cap.push(c);
            self.next.push(self.first[a]);
            self.first[a] = idx;
        }
    }

    /// Edmonds-Karp: repeatedly augment along a shortest residual path.
    fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        let n = self.first.len();
        let mut flow = 0.0;
        let mut parent_arc = vec![-1i32; n];
        loop {
            parent_arc.fill(-1);
            parent_arc[s] = -2;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                let mut a = self.first[u];
                while a >= 0 {
                    let v = self.to[a as usize] as usize;
                    if parent_arc[v] == -1 && self.cap[a as usize] > self.eps {
                        parent_arc[v] = a;
                        if v == t {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                    a = self.next[a as usize];
                }
            }
            if parent_arc[t] == -1 {
                return flow;
            }
            let mut bottleneck = f64::INFINITY;
            let mut v = t;
            while v != s {
                let a = parent_arc[v] as usize;
                bottleneck = bottleneck.min(self.cap[a]);
                v = self.to[a ^ 1] as usize;
            }
            let mut v = t;
            while v != s {
                let a = parent_arc[v] as usize;
                self.cap[a] -= bottleneck;
                self.cap[a ^ 1] += bottleneck;
                v = self.to[a ^ 1] as usize;
            }
            flow += bottleneck;
        }
    }

    /// Nodes reachable from `s` in the residual network.
    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.first.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let mut a = self.first[u];
            while a >= 0 {
                let v = self.to[a as usize] as usize;
                if !seen[v] && self.cap[a as usize] > self.eps {
                    seen[v] = true;
                    stack.push(v);
                }
                a = self.next[a as usize];
            }
        }
        seen
    }
}

fn validate_terminals(g: &WeightedGraph, s: &[NodeId], t: &[NodeId]) -> Result<()> {
    if s.is_empty() || t.is_empty() {
        return Err(Error::InvalidTerminals(
            "terminal sets must be nonempty".into(),
        ));
    }
    for &v in s.iter().chain(t.iter()) {
        if v >= g.node_count() {
            return Err(Error::InvalidNode(v));
        }
    }
    let s_set: BTreeSet<_> = s.iter().collect();
    if s_set.len() != s.len() {
        return Err(Error::InvalidTerminals("duplicate node in S".into()));
    }
    let t_set: BTreeSet<_> = t.iter().collect();
    if t_set.len() != t.len() {
        return Err(Error::InvalidTerminals("duplicate node in T".into()));
    }
    if !s_set.is_disjoint(&t_set) {
        return Err(Error::InvalidTerminals("S and T overlap".into()));
    }
    Ok(())
}

fn build_network(g: &WeightedGraph, s: &[NodeId], t: &[NodeId]) -> (FlowNetwork, usize, usize) {
    let n = g.node_count();
    let super_source = n;
    let super_sink = n + 1;
    let mut net = FlowNetwork::new(n + 2);
    for &(u, v, w) in g.edges() {
        // An undirected edge carries capacity w in each direction; the two
        // directions double as each other's residual arcs.
        net.add_pair(u, v, w, w);
    }
    // A finite stand-in for infinity: no minimum cut ever needs it.
    let inf = g.total_weight() + 1.0;
    for &v in s {
        net.add_pair(super_source, v, inf, 0.0);
    }
    for &v in t {
        net.add_pair(v, super_sink, inf, 0.0);
    }
    net.eps = 1e-12 * inf.max(1.0);
    (net, super_source, super_sink)
}

/// Maximum flow value from the set `S` to the set `T`; by duality this is
/// the minimum total weight of edges separating them.
pub fn max_flow_value(g: &WeightedGraph, s: &[NodeId], t: &[NodeId]) -> Result<f64> {
    validate_terminals(g, s, t)?;
    let (mut net, source, sink) = build_network(g, s, t);
    Ok(net.max_flow(source, sink))
}

/// Minimum-weight edge set whose removal disconnects every node of `S` from
/// every node of `T`. Cut edges are the graph edges leaving the source-side
/// residual-reachable set, so the result is deterministic.
pub fn min_cut_st(g: &WeightedGraph, s: &[NodeId], t: &[NodeId]) -> Result<CutSet> {
    validate_terminals(g, s, t)?;
    let (mut net, source, sink) = build_network(g, s, t);
    net.max_flow(source, sink);
    let reachable = net.residual_reachable(source);
    let edges: BTreeSet<(NodeId, NodeId)> = g
        .edges()
        .iter()
        .filter(|&&(u, v, _)| reachable[u] != reachable[v])
        .map(|&(u, v, _)| (u, v))
        .collect();
    CutSet::from_edges(g, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disconnected_terminals_need_no_cut() {
        let g = WeightedGraph::unit_from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let cut = min_cut_st(&g, &[0], &[2]).unwrap();
        assert!(cut.is_empty());
        assert_eq!(max_flow_value(&g, &[0], &[2]).unwrap(), 0.0);
    }

    #[test]
    fn single_edge_is_the_only_cut() {
        let g = WeightedGraph::from_edges(2, &[(0, 1, 3.0)]).unwrap();
        let cut = min_cut_st(&g, &[0], &[1]).unwrap();
        assert_eq!(cut.len(), 1);
        assert_eq!(cut.total_weight(), 3.0);
    }

    #[test]
    fn two_parallel_paths() {
        // 0-2-1 and 0-3-1, unit weights: two unit augmenting paths.
        let g = WeightedGraph::unit_from_edges(4, &[(0, 2), (2, 1), (0, 3), (3, 1)]).unwrap();
        assert_eq!(max_flow_value(&g, &[0], &[1]).unwrap(), 2.0);
    }

    #[test]
    fn complete_graph_attains_degree_bound() {
        let mut edges = Vec::new();
        for u in 0..4 {
            for v in (u + 1)..4 {
                edges.push((u, v));
            }
        }
        let g = WeightedGraph::unit_from_edges(4, &edges).unwrap();
        assert_eq!(max_flow_value(&g, &[0], &[1]).unwrap(), 3.0);
    }

    #[test]
    fn terminal_validation() {
        let g = WeightedGraph::unit_from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(min_cut_st(&g, &[], &[1]).is_err());
        assert!(min_cut_st(&g, &[0], &[0]).is_err());
        assert!(min_cut_st(&g, &[0, 0], &[1]).is_err());
        assert!(min_cut_st(&g, &[9], &[1]).is_err());
    }

    #[test]
    fn set_terminals_prefer_true_boundary() {
        // Two unit communities joined by 6 cut-edges. A single low-degree
        // node u gets isolated by M2TC({u},{v}); its whole local area does
        // not, because the area has more out-edges than the boundary.
        let mut edges = Vec::new();
        // Community A: nodes 0..8, a ring with chords (sparse on purpose).
        for i in 0..8 {
            edges.push((i, (i + 1) % 8));
        }
        for i in 0..4 {
            edges.push((i, i + 4));
        }
        // Community B: nodes 8..16, complete-ish.
        for u in 8..16 {
            for v in (u + 1)..16 {
                edges.push((u, v));
            }
        }
        // Six cut edges.
        for i in 0..6 {
            edges.push((i, 8 + i));
        }
        let g = WeightedGraph::unit_from_edges(16, &edges).unwrap();

        // Node 6 has degree 3 < 6: the singleton cut isolates it.
        let single = min_cut_st(&g, &[6], &[12]).unwrap();
        assert_eq!(single.total_weight(), 3.0);

        // The whole community as terminal set recovers the 6 true cut-edges.
        let area: Vec<_> = (0..8).collect();
        let set_cut = min_cut_st(&g, &area, &[12]).unwrap();
        assert_eq!(set_cut.total_weight(), 6.0);
        assert_eq!(set_cut.len(), 6);
    }

    #[test]
    fn duality_and_separation_on_weighted_instance() {
        let g = WeightedGraph::from_edges(
            5,
            &[
                (0, 1, 2.5),
                (1, 2, 1.0),
                (0, 2, 0.5),
                (2, 3, 1.5),
                (3, 4, 2.0),
                (2, 4, 0.25),
            ],
        )
        .unwrap();
        let flow = max_flow_value(&g, &[0], &[4]).unwrap();
        let cut = min_cut_st(&g, &[0], &[4]).unwrap();
        assert!((flow - cut.total_weight()).abs() < 1e-9 * flow.max(1.0));

        // Removing the cut leaves no 0 -> 4 path.
        let p = g.components_after_removal(&cut).unwrap();
        assert_ne!(p.community_of(0), p.community_of(4));
    }

    #[test]
    fn symmetry_of_cut_weight() {
        let g = WeightedGraph::from_edges(
            4,
            &[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0), (0, 2, 1.0), (1, 3, 1.0)],
        )
        .unwrap();
        let a = min_cut_st(&g, &[0], &[3]).unwrap().total_weight();
        let b = min_cut_st(&g, &[3], &[0]).unwrap().total_weight();
        assert!((a - b).abs() < 1e-12);
    }
}
