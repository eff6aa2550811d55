//! Exact reference implementations by exhaustive enumeration, for
//! validating the production algorithms on tiny instances. Everything here
//! is deliberately independent of the flow/cut code paths: weights are
//! recomputed straight from the adjacency and connectivity is checked by
//! plain search. Each function asserts a small-size guard; none of this is
//! meant for real inputs.

use crate::equal_size::ShiftedCompleteGraph;
use crate::graph::{NodeId, Partition, WeightedGraph};

/// Crossing weight of a labeling, recomputed directly from the edges.
fn crossing_weight_of_labels(g: &WeightedGraph, labels: &[usize]) -> f64 {
    g.edges()
        .iter()
        .filter(|&&(u, v, _)| labels[u] != labels[v])
        .map(|&(_, _, w)| w)
        .sum()
}

/// Exact minimum s-t separating weight by enumerating vertex sides: every
/// minimal separating edge set is the boundary of a side containing S and
/// excluding T.
pub fn min_st_cut_weight(g: &WeightedGraph, s: &[NodeId], t: &[NodeId]) -> f64 {
    let n = g.node_count();
    let free: Vec<NodeId> = (0..n)
        .filter(|v| !s.contains(v) && !t.contains(v))
        .collect();
    assert!(free.len() <= 20, "oracle only enumerates small instances");
    let mut best = f64::INFINITY;
    for mask in 0..(1u64 << free.len()) {
        let mut labels = vec![1usize; n];
        for &v in s {
            labels[v] = 0;
        }
        for (i, &v) in free.iter().enumerate() {
            if mask & (1 << i) != 0 {
                labels[v] = 0;
            }
        }
        best = best.min(crossing_weight_of_labels(g, &labels));
    }
    best
}

/// Exact minimum separating weight by enumerating *edge subsets* and
/// checking reachability after removal. Exponential in the edge count; the
/// slowest but most literal oracle.
pub fn min_separating_subset_weight(g: &WeightedGraph, s: &[NodeId], t: &[NodeId]) -> f64 {
    let m = g.edge_count();
    assert!(m <= 16, "edge-subset oracle needs m <= 16");
    let edges = g.edges();
    let mut best = f64::INFINITY;
    'subset: for mask in 0..(1u64 << m) {
        let weight: f64 = (0..m)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| edges[i].2)
            .sum();
        if weight >= best {
            continue;
        }
        // Reachability from S avoiding removed edges.
        let n = g.node_count();
        let mut seen = vec![false; n];
        let mut stack: Vec<NodeId> = s.to_vec();
        for &v in s {
            seen[v] = true;
        }
        while let Some(u) = stack.pop() {
            for (i, &(a, b, _)) in edges.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    continue;
                }
                let other = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        if t.iter().any(|&v| seen[v]) {
            continue 'subset;
        }
        best = weight;
    }
    best
}

/// Exact minimum k-terminal cut weight: enumerate every assignment of the
/// free nodes to the k groups and take the cheapest crossing weight.
pub fn mktc_optimum(g: &WeightedGraph, groups: &[Vec<NodeId>]) -> f64 {
    let n = g.node_count();
    let k = groups.len();
    let mut labels = vec![usize::MAX; n];
    for (i, group) in groups.iter().enumerate() {
        for &v in group {
            assert!(labels[v] == usize::MAX, "groups must be disjoint");
            labels[v] = i;
        }
    }
    let free: Vec<NodeId> = (0..n).filter(|&v| labels[v] == usize::MAX).collect();
    assert!(
        (k as f64).powi(free.len() as i32) <= 2e6,
        "oracle only enumerates small instances"
    );
    let mut best = f64::INFINITY;
    let mut assign = vec![0usize; free.len()];
    loop {
        let mut full = labels.clone();
        for (i, &v) in free.iter().enumerate() {
            full[v] = assign[i];
        }
        best = best.min(crossing_weight_of_labels(g, &full));
        // Odometer increment.
        let mut pos = 0;
        loop {
            if pos == free.len() {
                return best;
            }
            assign[pos] += 1;
            if assign[pos] < k {
                break;
            }
            assign[pos] = 0;
            pos += 1;
        }
    }
}

/// Enumerates every partition of `0..n` into exactly `k` nonempty blocks
/// as restricted-growth labelings.
pub fn partitions_into_k(n: usize, k: usize) -> Vec<Vec<usize>> {
    assert!(n <= 12, "oracle only enumerates small instances");
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(v: usize, used: usize, n: usize, k: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == n {
            if used == k {
                out.push(labels.clone());
            }
            return;
        }
        // Unused blocks left must still fit in the remaining nodes.
        for label in 0..=used.min(k - 1) {
            let next_used = if label == used { used + 1 } else { used };
            if next_used + (n - v - 1) < k {
                continue;
            }
            labels[v] = label;
            rec(v + 1, next_used, n, k, labels, out);
        }
    }
    if k >= 1 && k <= n {
        rec(0, 0, n, k, &mut labels, &mut out);
    }
    out
}

/// Exact minimum k-way cut: the cheapest partition of V into exactly k
/// nonempty parts, by full enumeration.
pub fn mkwc_optimum(g: &WeightedGraph, k: usize) -> (f64, Partition) {
    let n = g.node_count();
    let mut best_weight = f64::INFINITY;
    let mut best_labels = None;
    for labels in partitions_into_k(n, k) {
        let w = crossing_weight_of_labels(g, &labels);
        if w < best_weight {
            best_weight = w;
            best_labels = Some(labels);
        }
    }
    (
        best_weight,
        Partition::from_root_labels(best_labels.expect("k <= n")),
    )
}

/// Enumerates every equal-sized partition labeling (all blocks of size
/// n/k).
pub fn equal_partitions(n: usize, k: usize) -> Vec<Vec<usize>> {
    assert!(n % k == 0);
    partitions_into_k(n, k)
        .into_iter()
        .filter(|labels| {
            let mut sizes = vec![0usize; k];
            for &l in labels {
                sizes[l] += 1;
            }
            sizes.iter().all(|&s| s == n / k)
        })
        .collect()
}

/// Crossing weight of a labeling in the shifted complete graph.
pub fn shifted_crossing_weight(sg: &ShiftedCompleteGraph<'_>, labels: &[usize]) -> f64 {
    let n = sg.node_count();
    let mut total = 0.0;
    for u in 0..n {
        for v in (u + 1)..n {
            if labels[u] != labels[v] {
                total += sg.weight(u, v);
            }
        }
    }
    total
}

/// Exact min-star optimum by enumerating capacity-respecting assignments
/// of non-terminals to terminals. Returns the optimal objective.
pub fn min_star_optimum(sg: &ShiftedCompleteGraph<'_>, terminals: &[NodeId]) -> f64 {
    let n = sg.node_count();
    let k = terminals.len();
    assert!(n % k == 0, "oracle needs k | n");
    let non_terminals: Vec<NodeId> = (0..n).filter(|v| !terminals.contains(v)).collect();
    let nt = non_terminals.len();
    assert!(nt <= 10, "oracle only enumerates small instances");
    let cap = n / k - 1;
    let scale = n as f64 / k as f64;
    let cost = |j: usize, i: usize| -> f64 {
        let a = non_terminals[j];
        scale
            * terminals
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, &t)| sg.weight(t, a))
                .sum::<f64>()
    };
    let mut best = f64::INFINITY;
    let mut remaining = vec![cap; k];
    fn rec(
        j: usize,
        nt: usize,
        k: usize,
        acc: f64,
        remaining: &mut Vec<usize>,
        best: &mut f64,
        cost: &dyn Fn(usize, usize) -> f64,
    ) {
        if acc >= *best {
            return;
        }
        if j == nt {
            *best = acc;
            return;
        }
        for i in 0..k {
            if remaining[i] == 0 {
                continue;
            }
            remaining[i] -= 1;
            rec(j + 1, nt, k, acc + cost(j, i), remaining, best, cost);
            remaining[i] += 1;
        }
    }
    rec(0, nt, k, 0.0, &mut remaining, &mut best, &cost);
    best
}

/// The unrestricted terminal-set enumeration: run the isolating-cut
/// construction over *every* k-subset of singleton terminals and return
/// the lightest partition found. Exponentially many max-flow calls; a
/// reference twice-optimal baseline for the pooled search.
pub fn exhaustive_terminal_search(g: &WeightedGraph, k: usize) -> crate::error::Result<(f64, Partition)> {
    use crate::graph::CutSet;
    use crate::terminal_cut::{isolating_kcut, repair_to_k_parts, TerminalSpec};
    let n = g.node_count();
    assert!(n <= 10 && k <= 3, "oracle only enumerates small instances");
    let mut best: Option<(f64, Partition)> = None;
    let mut pick = vec![0usize; k];
    fn subsets(start: usize, n: usize, k: usize, pick: &mut Vec<usize>, depth: usize, out: &mut Vec<Vec<usize>>) {
        if depth == k {
            out.push(pick[..k].to_vec());
            return;
        }
        for v in start..n {
            pick[depth] = v;
            subsets(v + 1, n, k, pick, depth + 1, out);
        }
    }
    let mut all = Vec::new();
    subsets(0, n, k, &mut pick, 0, &mut all);
    for terminals in all {
        let spec = TerminalSpec::singletons(g, &terminals)?;
        let cut: CutSet = isolating_kcut(g, &spec)?;
        let parts = g.components_after_removal(&cut)?;
        if parts.k() < k {
            continue;
        }
        let (_, partition) = repair_to_k_parts(g, &cut, k)?;
        let weight = g.crossing_weight(&partition)?;
        let better = match &best {
            None => true,
            Some((bw, _)) => weight < *bw,
        };
        if better {
            best = Some((weight, partition));
        }
    }
    Ok(best.expect("some terminal set yields k parts"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn st_cut_oracles_agree() {
        let g = WeightedGraph::from_edges(
            4,
            &[(0, 1, 2.0), (1, 2, 1.0), (2, 3, 2.0), (0, 2, 1.0)],
        )
        .unwrap();
        let a = min_st_cut_weight(&g, &[0], &[3]);
        let b = min_separating_subset_weight(&g, &[0], &[3]);
        assert_eq!(a, b);
        assert_eq!(a, 2.0);
    }

    #[test]
    fn partitions_counts() {
        // Stirling numbers of the second kind: S(4,2) = 7, S(5,3) = 25.
        assert_eq!(partitions_into_k(4, 2).len(), 7);
        assert_eq!(partitions_into_k(5, 3).len(), 25);
        assert_eq!(equal_partitions(4, 2).len(), 3);
        assert_eq!(equal_partitions(6, 2).len(), 10);
    }

    #[test]
    fn mkwc_on_two_triangles() {
        let g = WeightedGraph::unit_from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
        )
        .unwrap();
        let (w, p) = mkwc_optimum(&g, 2);
        assert_eq!(w, 1.0);
        assert_eq!(
            p,
            Partition::from_communities(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap()
        );
    }

    #[test]
    fn mktc_with_fixed_groups() {
        let g = WeightedGraph::unit_from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
        )
        .unwrap();
        assert_eq!(mktc_optimum(&g, &[vec![0], vec![5]]), 1.0);
        assert_eq!(mktc_optimum(&g, &[vec![0], vec![1], vec![4]]), 3.0);
    }
}
