//! Equal-sized community detection: shift all pair weights up by the
//! maximum edge weight so the completed graph satisfies the triangle
//! inequality, sample terminal sets, and assign the remaining nodes by an
//! exact min-star (transportation) solve.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::contraction::derive_seed;
use crate::error::{Error, Result};
use crate::graph::{NodeId, Partition, WeightedGraph};

/// View of the completed graph with every pair weight shifted up by the
/// base graph's maximum edge weight: `w'(u,v) = w(u,v) + w*`, absent pairs
/// contributing `w*`. All shifted weights lie in `[w*, 2 w*]`, so the
/// triangle inequality holds.
#[derive(Debug, Clone, Copy)]
pub struct ShiftedCompleteGraph<'a> {
    base: &'a WeightedGraph,
    w_star: f64,
}

impl<'a> ShiftedCompleteGraph<'a> {
    pub fn base(&self) -> &WeightedGraph {
        self.base
    }

    pub fn w_star(&self) -> f64 {
        self.w_star
    }

    pub fn node_count(&self) -> usize {
        self.base.node_count()
    }

    /// Shifted weight of the (possibly absent) pair `{u, v}`.
    pub fn weight(&self, u: NodeId, v: NodeId) -> f64 {
        debug_assert_ne!(u, v);
        self.base.edge_weight(u, v).unwrap_or(0.0) + self.w_star
    }

    /// Undoubled crossing weight of a partition in the shifted complete
    /// graph.
    pub fn crossing_weight(&self, p: &Partition) -> f64 {
        let n = self.node_count();
        let mut total = 0.0;
        for u in 0..n {
            for v in (u + 1)..n {
                if p.community_of(u) != p.community_of(v) {
                    total += self.weight(u, v);
                }
            }
        }
        total
    }

    /// Checks `w'(u,v) <= w'(u,x) + w'(x,v)` for all triples.
    pub fn triangle_inequality_holds(&self) -> bool {
        let n = self.node_count();
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                for x in 0..n {
                    if x == u || x == v {
                        continue;
                    }
                    if self.weight(u, v) > self.weight(u, x) + self.weight(x, v) + 1e-9 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Builds the shifted complete view. Errors on an edgeless graph, where
/// the maximum weight is undefined.
pub fn shift_weights(g: &WeightedGraph) -> Result<ShiftedCompleteGraph<'_>> {
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let w_star = g
        .edges()
        .iter()
        .map(|&(_, _, w)| w)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(ShiftedCompleteGraph { base: g, w_star })
}

/// Assignment of non-terminal nodes to terminals: `assigned[j]` is the
/// terminal index that non-terminal `j` joins.
#[derive(Debug, Clone, PartialEq)]
pub struct StarAssignment {
    pub terminals: Vec<NodeId>,
    pub non_terminals: Vec<NodeId>,
    pub assigned: Vec<usize>,
    /// Optimal min-star objective value.
    pub objective: f64,
}

/// Per-terminal capacities: how many non-terminals each terminal absorbs.
fn star_capacities(n: usize, k: usize, allow_near_equal: bool) -> Result<Vec<usize>> {
    if k == 0 || k > n {
        return Err(Error::InvalidConfig(format!(
            "k = {k} must be between 1 and n = {n}"
        )));
    }
    if n % k == 0 {
        return Ok(vec![n / k - 1; k]);
    }
    if !allow_near_equal {
        return Err(Error::SizeNotDivisible { n, k });
    }
    // Near-equal mode: community sizes differ by at most one. The first
    // `n mod k` terminals take the larger share.
    let q = n / k;
    let r = n % k;
    Ok((0..k).map(|i| if i < r { q } else { q - 1 }).collect())
}

/// Exact min-star solve: assigns each non-terminal `a_j` to a terminal
/// `v_i`, paying `(n/k) * sum_{r != i} w'(v_r, a_j)`, with every terminal
/// receiving exactly `n/k - 1` nodes. Solved as a min-cost transportation
/// problem by successive shortest augmenting paths.
pub fn min_star_solve(sg: &ShiftedCompleteGraph<'_>, terminals: &[NodeId]) -> Result<StarAssignment> {
    min_star_solve_with(sg, terminals, false)
}

/// As [`min_star_solve`], optionally allowing community sizes to differ by
/// one when k does not divide n. The near-equal mode has no approximation
/// guarantee.
pub fn min_star_solve_with(
    sg: &ShiftedCompleteGraph<'_>,
    terminals: &[NodeId],
    allow_near_equal: bool,
) -> Result<StarAssignment> {
    let n = sg.node_count();
    let k = terminals.len();
    let mut seen = vec![false; n];
    for &t in terminals {
        if t >= n {
            return Err(Error::InvalidNode(t));
        }
        if seen[t] {
            return Err(Error::InvalidTerminals(format!("terminal {t} repeated")));
        }
        seen[t] = true;
    }
    let capacities = star_capacities(n, k, allow_near_equal)?;
    let non_terminals: Vec<NodeId> = (0..n).filter(|&v| !seen[v]).collect();
    let nt = non_terminals.len();
    debug_assert_eq!(capacities.iter().sum::<usize>(), nt);

    if nt == 0 {
        return Ok(StarAssignment {
            terminals: terminals.to_vec(),
            non_terminals,
            assigned: Vec::new(),
            objective: 0.0,
        });
    }

    // Cost of placing a_j with terminal i: similarity to every *other*
    // star center is paid, scaled by the community size.
    let scale = n as f64 / k as f64;
    let mut cost = vec![vec![0.0f64; k]; nt];
    for (j, &a) in non_terminals.iter().enumerate() {
        let total: f64 = terminals.iter().map(|&t| sg.weight(t, a)).sum();
        for (i, &t) in terminals.iter().enumerate() {
            cost[j][i] = scale * (total - sg.weight(t, a));
        }
    }

    let assigned = transportation_assign(&cost, &capacities);
    let objective = assigned
        .iter()
        .enumerate()
        .map(|(j, &i)| cost[j][i])
        .sum();
    Ok(StarAssignment {
        terminals: terminals.to_vec(),
        non_terminals,
        assigned,
        objective,
    })
}

/// Min-cost transportation: each source j (supply 1) ships to a sink i
/// (capacity `capacities[i]`) at `cost[j][i]`. Successive shortest paths
/// with potentials; costs must be nonnegative and finite.
fn transportation_assign(cost: &[Vec<f64>], capacities: &[usize]) -> Vec<usize> {
    let nt = cost.len();
    let k = capacities.len();
    // Node layout: 0 = source, 1..=nt = supplies, nt+1..=nt+k = sinks,
    // nt+k+1 = target.
    let nodes = nt + k + 2;
    let source = 0;
    let target = nodes - 1;
    let supply_node = |j: usize| 1 + j;
    let sink_node = |i: usize| 1 + nt + i;

    #[derive(Clone)]
    struct Arc {
        to: usize,
        cap: i64,
        cost: f64,
    }
    let mut arcs: Vec<Arc> = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let push_arc = |arcs: &mut Vec<Arc>, adj: &mut Vec<Vec<usize>>, u: usize, v: usize, cap: i64, cost: f64| {
        adj[u].push(arcs.len());
        arcs.push(Arc { to: v, cap, cost });
        adj[v].push(arcs.len());
        arcs.push(Arc {
            to: u,
            cap: 0,
            cost: -cost,
        });
    };
    for j in 0..nt {
        push_arc(&mut arcs, &mut adj, source, supply_node(j), 1, 0.0);
        for i in 0..k {
            push_arc(&mut arcs, &mut adj, supply_node(j), sink_node(i), 1, cost[j][i]);
        }
    }
    for (i, &c) in capacities.iter().enumerate() {
        push_arc(&mut arcs, &mut adj, sink_node(i), target, c as i64, 0.0);
    }

    // Successive shortest paths with Bellman-Ford (handles the negative
    // reduced costs on residual arcs without potentials; sizes here are
    // small).
    let mut flow_left = nt;
    while flow_left > 0 {
        let mut dist = vec![f64::INFINITY; nodes];
        let mut parent: Vec<Option<usize>> = vec![None; nodes];
        dist[source] = 0.0;
        let mut changed = true;
        while changed {
            changed = false;
            for u in 0..nodes {
                if dist[u].is_infinite() {
                    continue;
                }
                for &ai in &adj[u] {
                    let arc = &arcs[ai];
                    if arc.cap > 0 && dist[u] + arc.cost < dist[arc.to] - 1e-12 {
                        dist[arc.to] = dist[u] + arc.cost;
                        parent[arc.to] = Some(ai);
                        changed = true;
                    }
                }
            }
        }
        let mut v = target;
        debug_assert!(parent[v].is_some(), "transportation network is feasible");
        while v != source {
            let ai = parent[v].expect("path reaches source");
            arcs[ai].cap -= 1;
            arcs[ai ^ 1].cap += 1;
            v = arcs[ai ^ 1].to;
        }
        flow_left -= 1;
    }

    // Read the assignment off the saturated supply->sink arcs.
    let mut assigned = vec![usize::MAX; nt];
    for j in 0..nt {
        for &ai in &adj[supply_node(j)] {
            let arc = &arcs[ai];
            if arc.cap == 0 && arc.cost >= 0.0 {
                if let Some(i) = (0..k).find(|&i| sink_node(i) == arc.to) {
                    assigned[j] = i;
                    break;
                }
            }
        }
        debug_assert_ne!(assigned[j], usize::MAX);
    }
    assigned
}

/// Builds the partition `S_i = {v_i} ∪ {a_j : assigned[j] = i}`.
pub fn assignment_to_partition(n: usize, x: &StarAssignment) -> Result<Partition> {
    if x.assigned.len() != x.non_terminals.len() {
        return Err(Error::InvalidConfig(
            "incomplete assignment: every non-terminal needs a terminal".into(),
        ));
    }
    let mut communities: Vec<Vec<NodeId>> = x.terminals.iter().map(|&t| vec![t]).collect();
    for (j, &i) in x.assigned.iter().enumerate() {
        communities[i].push(x.non_terminals[j]);
    }
    Partition::from_communities(n, &communities)
}

/// Number of crossing vertex pairs of any equal k-partition of the
/// complete graph on n nodes: `n (n - n/k) / 2`.
pub fn equal_cut_edge_count(n: usize, k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    if n % k != 0 {
        return Err(Error::SizeNotDivisible { n, k });
    }
    let n = n as u64;
    let part = n / k as u64;
    Ok(n * (n - part) / 2)
}

/// Probability that a uniformly random k-subset of V picks exactly one
/// node from each part of a fixed equal k-partition: `(n/k)^k / C(n, k)`,
/// exact. Always at least `(1/k)^k`.
pub fn sample_probability(n: usize, k: usize) -> Result<BigRational> {
    if k == 0 || n % k != 0 {
        return Err(Error::SizeNotDivisible { n, k });
    }
    let part = BigInt::from(n / k);
    let mut numer = BigInt::one();
    for _ in 0..k {
        numer *= &part;
    }
    let mut binom = BigInt::one();
    for i in 0..k {
        binom = binom * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Ok(BigRational::new(numer, binom))
}

/// Stop criterion for [`detect_equal`]: a fixed iteration budget with an
/// optional early exit once some sampled partition reaches the target
/// crossing weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualStop {
    pub iterations: usize,
    pub target_cut: Option<f64>,
}

impl EqualStop {
    pub fn iterations(iterations: usize) -> Self {
        Self {
            iterations,
            target_cut: None,
        }
    }
}

/// Result of an equal-size detection.
#[derive(Debug, Clone)]
pub struct EqualOutcome {
    pub partition: Partition,
    /// Undoubled crossing weight on the original graph.
    pub cut_weight: f64,
    /// Iteration (0-based) that produced the winner.
    pub iteration: usize,
    pub iterations_run: usize,
}

/// Repeats {uniform terminal sample, min-star solve, partition} and keeps
/// the sampled partition with minimum crossing weight on the original
/// graph. The ranking is shift-invariant among equal partitions, so
/// scoring on the original weights is sound.
pub fn detect_equal(
    g: &WeightedGraph,
    k: usize,
    stop: EqualStop,
    master_seed: u64,
) -> Result<EqualOutcome> {
    detect_equal_with(g, k, stop, master_seed, false)
}

/// As [`detect_equal`] with an opt-in near-equal mode for k not dividing
/// n (no approximation guarantee there).
pub fn detect_equal_with(
    g: &WeightedGraph,
    k: usize,
    stop: EqualStop,
    master_seed: u64,
    allow_near_equal: bool,
) -> Result<EqualOutcome> {
    let n = g.node_count();
    if k == 0 || k > n {
        return Err(Error::InvalidConfig(format!(
            "k = {k} must be between 1 and n = {n}"
        )));
    }
    if n % k != 0 && !allow_near_equal {
        return Err(Error::SizeNotDivisible { n, k });
    }
    if stop.iterations == 0 {
        return Err(Error::InvalidConfig("iteration budget must be positive".into()));
    }
    let sg = shift_weights(g)?;
    let all: Vec<NodeId> = (0..n).collect();

    let run_one = |iter: usize| -> Result<(f64, usize, Partition)> {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(master_seed, iter));
        let mut terminals: Vec<NodeId> =
            all.choose_multiple(&mut rng, k).copied().collect();
        terminals.sort_unstable();
        let x = min_star_solve_with(&sg, &terminals, allow_near_equal)?;
        let p = assignment_to_partition(n, &x)?;
        let w = g.crossing_weight(&p)?;
        Ok((w, iter, p))
    };

    let better =
        |a: &(f64, usize, Partition), b: &(f64, usize, Partition)| -> bool {
            b.0 < a.0 || (b.0 == a.0 && b.1 < a.1)
        };

    // Evaluate in deterministic chunks so a target cut can stop early
    // without depending on thread timing.
    let chunk = 64usize;
    let mut best: Option<(f64, usize, Partition)> = None;
    let mut done = 0usize;
    while done < stop.iterations {
        let end = (done + chunk).min(stop.iterations);
        let results: Vec<(f64, usize, Partition)> = (done..end)
            .into_par_iter()
            .map(run_one)
            .collect::<Result<_>>()?;
        for r in results {
            if best.as_ref().is_none_or(|b| better(b, &r)) {
                best = Some(r);
            }
        }
        done = end;
        if let (Some(target), Some(b)) = (stop.target_cut, &best) {
            if b.0 <= target + 1e-9 {
                break;
            }
        }
    }
    let (cut_weight, iteration, partition) = best.expect("at least one iteration ran");
    Ok(EqualOutcome {
        partition,
        cut_weight,
        iteration,
        iterations_run: done,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles_bridge() -> WeightedGraph {
        WeightedGraph::unit_from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
        )
        .unwrap()
    }

    #[test]
    fn shift_unit_graph() {
        let g = two_triangles_bridge();
        let sg = shift_weights(&g).unwrap();
        assert_eq!(sg.w_star(), 1.0);
        assert_eq!(sg.weight(0, 1), 2.0);
        assert_eq!(sg.weight(0, 5), 1.0);
        assert!(sg.triangle_inequality_holds());
    }

    #[test]
    fn shift_single_edge() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 5.0)]).unwrap();
        let sg = shift_weights(&g).unwrap();
        assert_eq!(sg.weight(0, 1), 10.0);
        assert_eq!(sg.weight(0, 2), 5.0);
        assert_eq!(sg.weight(1, 2), 5.0);
        assert!(sg.triangle_inequality_holds());
    }

    #[test]
    fn shift_edgeless_errors() {
        let g = WeightedGraph::unit_from_edges(3, &[]).unwrap();
        assert!(matches!(shift_weights(&g), Err(Error::EdgelessGraph)));
    }

    #[test]
    fn min_star_no_non_terminals() {
        let g = WeightedGraph::unit_from_edges(2, &[(0, 1)]).unwrap();
        let sg = shift_weights(&g).unwrap();
        let x = min_star_solve(&sg, &[0, 1]).unwrap();
        assert!(x.assigned.is_empty());
        assert_eq!(x.objective, 0.0);
        let p = assignment_to_partition(2, &x).unwrap();
        assert_eq!(p.k(), 2);
    }

    #[test]
    fn min_star_two_by_two_picks_cheaper_matching() {
        // Nodes: terminals 0, 1; non-terminals 2, 3. Edges chosen so that
        // 2 is similar to 1 and 3 to 0: assigning a_j to the terminal it is
        // similar to is penalized, grouping it with the *other* star.
        let g = WeightedGraph::from_edges(4, &[(1, 2, 3.0), (0, 3, 3.0), (0, 1, 1.0)]).unwrap();
        let sg = shift_weights(&g).unwrap();
        let x = min_star_solve(&sg, &[0, 1]).unwrap();
        // cost(2 -> 0) = 2*w'(1,2) = 12; cost(2 -> 1) = 2*w'(0,2) = 6.
        assert_eq!(x.assigned, vec![1, 0]);
        assert_eq!(x.objective, 12.0);
        let p = assignment_to_partition(4, &x).unwrap();
        assert_eq!(p.community_sizes(), vec![2, 2]);
        assert_eq!(p.community_of(0), p.community_of(3));
    }

    #[test]
    fn min_star_groups_with_near_terminal() {
        // Two tight clusters {0,2,3} and {1,4,5}; terminals 0 and 1.
        let g = WeightedGraph::from_edges(
            6,
            &[
                (0, 2, 5.0),
                (0, 3, 5.0),
                (2, 3, 5.0),
                (1, 4, 5.0),
                (1, 5, 5.0),
                (4, 5, 5.0),
                (0, 1, 1.0),
            ],
        )
        .unwrap();
        let sg = shift_weights(&g).unwrap();
        let x = min_star_solve(&sg, &[0, 1]).unwrap();
        let p = assignment_to_partition(6, &x).unwrap();
        let expected =
            Partition::from_communities(6, &[vec![0, 2, 3], vec![1, 4, 5]]).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn min_star_size_error() {
        let g = two_triangles_bridge();
        let sg = shift_weights(&g).unwrap();
        assert!(matches!(
            min_star_solve(&sg, &[0, 1, 2, 3]),
            Err(Error::SizeNotDivisible { n: 6, k: 4 })
        ));
        // Near-equal mode accepts it.
        let x = min_star_solve_with(&sg, &[0, 1, 2, 3], true).unwrap();
        let p = assignment_to_partition(6, &x).unwrap();
        let mut sizes = p.community_sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2]);
    }

    #[test]
    fn equal_cut_edge_count_examples() {
        assert_eq!(equal_cut_edge_count(4, 2).unwrap(), 4);
        assert_eq!(equal_cut_edge_count(6, 3).unwrap(), 12);
        assert_eq!(equal_cut_edge_count(6, 1).unwrap(), 0);
        assert!(equal_cut_edge_count(7, 2).is_err());
    }

    #[test]
    fn sample_probability_examples() {
        let p = sample_probability(4, 2).unwrap();
        assert_eq!(p, BigRational::new(BigInt::from(2), BigInt::from(3)));
        let p = sample_probability(6, 2).unwrap();
        assert_eq!(p, BigRational::new(BigInt::from(3), BigInt::from(5)));
        let p = sample_probability(5, 5).unwrap();
        assert_eq!(p, BigRational::one());
        assert!(sample_probability(5, 2).is_err());
    }

    #[test]
    fn detect_equal_identity_when_k_equals_n() {
        let g = two_triangles_bridge();
        let out = detect_equal(&g, 6, EqualStop::iterations(1), 0).unwrap();
        assert_eq!(out.partition.k(), 6);
    }

    #[test]
    fn detect_equal_finds_triangle_split() {
        let g = two_triangles_bridge();
        let out = detect_equal(&g, 2, EqualStop::iterations(40), 11).unwrap();
        let expected =
            Partition::from_communities(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(out.partition, expected);
        assert_eq!(out.cut_weight, 1.0);
    }

    #[test]
    fn detect_equal_guards() {
        let g = two_triangles_bridge();
        assert!(matches!(
            detect_equal(&g, 4, EqualStop::iterations(5), 0),
            Err(Error::SizeNotDivisible { .. })
        ));
        assert!(detect_equal(&g, 2, EqualStop::iterations(0), 0).is_err());
    }

    #[test]
    fn detect_equal_target_short_circuits() {
        let g = two_triangles_bridge();
        let stop = EqualStop {
            iterations: 100_000,
            target_cut: Some(1.0),
        };
        let out = detect_equal(&g, 2, stop, 3).unwrap();
        assert_eq!(out.cut_weight, 1.0);
        assert!(out.iterations_run < 100_000);
    }

    #[test]
    fn detect_equal_deterministic() {
        let g = two_triangles_bridge();
        let a = detect_equal(&g, 3, EqualStop::iterations(25), 9).unwrap();
        let b = detect_equal(&g, 3, EqualStop::iterations(25), 9).unwrap();
        assert_eq!(a.partition, b.partition);
        assert_eq!(a.iteration, b.iteration);
    }
}
