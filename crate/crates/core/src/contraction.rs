//! Node-merging-based community detection: repeatedly merge a uniformly
//! random pair of supernodes until k remain, plus the multi-run driver with
//! its run-count budget and feasibility predicates for customized
//! detection.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{DisjointSet, NodeId, Partition, WeightedGraph};

/// Contraction state: a disjoint-set over the original nodes, the list of
/// active supernodes, and the weighted inter-supernode edges (self-loops
/// discarded, parallel edges accumulated).
#[derive(Debug, Clone)]
pub struct ContractionState {
    n: usize,
    dsu: DisjointSet,
    active: Vec<NodeId>,
    inter: HashMap<NodeId, HashMap<NodeId, f64>>,
}

impl ContractionState {
    pub fn new(g: &WeightedGraph) -> Self {
        let n = g.node_count();
        let mut inter: HashMap<NodeId, HashMap<NodeId, f64>> = HashMap::with_capacity(n);
        for v in 0..n {
            inter.insert(v, g.neighbors(v).iter().copied().collect());
        }
        Self {
            n,
            dsu: DisjointSet::new(n),
            active: (0..n).collect(),
            inter,
        }
    }

    pub fn active_count(&self) -> usize {
        self.active.len()
    }

    /// Weight between two supernodes, identified by any of their members.
    pub fn inter_weight(&mut self, a: NodeId, b: NodeId) -> f64 {
        let (ra, rb) = (self.dsu.find(a), self.dsu.find(b));
        self.inter
            .get(&ra)
            .and_then(|adj| adj.get(&rb))
            .copied()
            .unwrap_or(0.0)
    }

    /// Merges the supernodes at positions `i` and `j` of the active list.
    pub fn merge_positions(&mut self, i: usize, j: usize) {
        debug_assert_ne!(i, j);
        let (keep, drop) = (self.active[i], self.active[j]);
        self.dsu.union(keep, drop);
        let root = self.dsu.find(keep);
        let other = if root == keep { drop } else { keep };
        // The non-root's edges fold into the root; the root-to-other edge
        // becomes a self-loop and disappears.
        let moved = self.inter.remove(&other).unwrap_or_default();
        let root_adj = self.inter.entry(root).or_default();
        root_adj.remove(&other);
        for (nbr, w) in moved {
            if nbr == root {
                continue;
            }
            *root_adj.entry(nbr).or_insert(0.0) += w;
        }
        // Repoint neighbors of the dropped supernode.
        let neighbors: Vec<NodeId> = self
            .inter
            .get(&root)
            .map(|adj| adj.keys().copied().collect())
            .unwrap_or_default();
        for nbr in neighbors {
            let adj = self.inter.get_mut(&nbr).expect("neighbor exists");
            let w = adj.remove(&other).unwrap_or(0.0);
            if w != 0.0 {
                *adj.entry(root).or_insert(0.0) += w;
            }
        }
        // Keep the active list consistent: remove whichever id is no
        // longer a root.
        let gone_pos = if root == keep { j } else { i };
        self.active.swap_remove(gone_pos);
    }

    pub fn partition(&mut self) -> Partition {
        let labels = (0..self.n).map(|v| self.dsu.find(v)).collect();
        Partition::from_root_labels(labels)
    }
}

/// One contraction run: performs n - k merges, each of a uniformly random
/// unordered pair of active supernodes (adjacent or not), and returns the
/// resulting k-community partition. Pure function of (graph, k, seed).
pub fn single_run(g: &WeightedGraph, k: usize, seed: u64) -> Result<Partition> {
    let n = g.node_count();
    if k > n {
        return Err(Error::InvalidConfig(format!(
            "k = {k} exceeds node count {n}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dsu = DisjointSet::new(n);
    let mut active: Vec<NodeId> = (0..n).collect();
    while active.len() > k {
        let i = rng.gen_range(0..active.len());
        let mut j = rng.gen_range(0..active.len() - 1);
        if j >= i {
            j += 1;
        }
        dsu.union(active[i], active[j]);
        // Drop whichever of the two ids stopped being its set's root.
        let gone = if dsu.find(active[i]) == active[i] { j } else { i };
        active.swap_remove(gone);
    }
    Ok(Partition::from_root_labels(
        (0..n).map(|v| dsu.find(v)).collect(),
    ))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut result = BigInt::one();
    for i in 0..k {
        result = result * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    result
}

/// Lower bound on the probability that one contraction run recovers the
/// optimal partition: `k / (C(n, k-1) * C(n-1, k-1))`, exact.
///
/// The bound is tight when the optimal partition is maximally unbalanced
/// (k-1 singleton communities); balanced optima can fall below it.
pub fn success_bound(n: usize, k: usize) -> Result<BigRational> {
    if k < 2 || k > n {
        return Err(Error::InvalidConfig(format!(
            "success bound needs 2 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let denom = binomial(n, k - 1) * binomial(n - 1, k - 1);
    Ok(BigRational::new(BigInt::from(k), denom))
}

/// Run count and implied guarantee for a target per-run success
/// probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunBudget {
    pub p_bar: f64,
    pub c: f64,
    pub runs: usize,
}

impl RunBudget {
    /// Fixed run count with no probability interpretation.
    pub fn fixed(runs: usize) -> Result<Self> {
        if runs == 0 {
            return Err(Error::InvalidConfig("need at least one run".into()));
        }
        Ok(Self {
            p_bar: f64::NAN,
            c: f64::NAN,
            runs,
        })
    }

    /// The guaranteed overall success probability, `1 - p_bar^(c/2)`.
    pub fn guarantee(&self) -> f64 {
        1.0 - self.p_bar.powf(self.c / 2.0)
    }
}

/// Budget of `ceil(-c ln(p_bar) / (2 p_bar))` runs (at least one), which
/// finds the optimum with probability at least `1 - p_bar^(c/2)` when each
/// run succeeds with probability `p_bar`.
pub fn run_budget(p_bar: f64, c: f64) -> Result<RunBudget> {
    if !(p_bar > 0.0 && p_bar <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "p_bar must be in (0, 1], got {p_bar}"
        )));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidConfig(format!("c must be positive, got {c}")));
    }
    let raw = -c * p_bar.ln() / (2.0 * p_bar);
    let runs = (raw.ceil() as usize).max(1);
    Ok(RunBudget { p_bar, c, runs })
}

/// Acceptance test a customized detection places on candidate partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityPredicate {
    /// Every partition is feasible (the original detection problem).
    AlwaysTrue,
    /// The listed nodes must land in pairwise-distinct communities.
    DesignatedSeparation(Vec<NodeId>),
    /// Every community must have at least this many nodes.
    MinSize(usize),
}

impl FeasibilityPredicate {
    pub fn accepts(&self, p: &Partition) -> bool {
        match self {
            FeasibilityPredicate::AlwaysTrue => true,
            FeasibilityPredicate::DesignatedSeparation(nodes) => {
                let mut seen = std::collections::BTreeSet::new();
                nodes.iter().all(|&v| seen.insert(p.community_of(v)))
            }
            FeasibilityPredicate::MinSize(t) => {
                p.community_sizes().iter().all(|&s| s >= *t)
            }
        }
    }

    fn validate(&self, g: &WeightedGraph) -> Result<()> {
        if let FeasibilityPredicate::DesignatedSeparation(nodes) = self {
            for &v in nodes {
                if v >= g.node_count() {
                    return Err(Error::InvalidNode(v));
                }
            }
        }
        Ok(())
    }
}

/// Best feasible partition found by repeated contraction runs.
#[derive(Debug, Clone)]
pub struct CustomizedOutcome {
    pub partition: Partition,
    /// Undoubled crossing weight of the partition.
    pub cut_weight: f64,
    /// Index of the run (0-based) that produced it.
    pub run_index: usize,
    pub feasible_runs: usize,
}

/// Per-run seed derivation: runs are reproducible independently of any
/// thread schedule.
pub fn derive_seed(master: u64, index: usize) -> u64 {
    master.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Executes `budget.runs` independent contraction runs and returns the
/// feasible partition with minimum crossing weight (ties: first run).
/// `None` when no run satisfies the predicate.
pub fn detect_customized(
    g: &WeightedGraph,
    k: usize,
    pred: &FeasibilityPredicate,
    budget: &RunBudget,
    master_seed: u64,
) -> Result<Option<CustomizedOutcome>> {
    if budget.runs == 0 {
        return Err(Error::InvalidConfig("need at least one run".into()));
    }
    pred.validate(g)?;

    let results: Vec<Option<(f64, usize, Partition)>> = (0..budget.runs)
        .into_par_iter()
        .map(|i| -> Result<Option<(f64, usize, Partition)>> {
            let p = single_run(g, k, derive_seed(master_seed, i))?;
            if !pred.accepts(&p) {
                return Ok(None);
            }
            let w = g.crossing_weight(&p)?;
            Ok(Some((w, i, p)))
        })
        .collect::<Result<_>>()?;

    let feasible_runs = results.iter().flatten().count();
    let best = results
        .into_iter()
        .flatten()
        .min_by(|a, b| a.0.partial_cmp(&b.0).expect("finite").then(a.1.cmp(&b.1)));
    Ok(best.map(|(cut_weight, run_index, partition)| CustomizedOutcome {
        partition,
        cut_weight,
        run_index,
        feasible_runs,
    }))
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
    fn single_run_identity_and_total_merge() {
        let g = two_triangles_bridge();
        let p = single_run(&g, 6, 1).unwrap();
        assert_eq!(p.k(), 6);
        let p = single_run(&g, 1, 1).unwrap();
        assert_eq!(p.k(), 1);
    }

    #[test]
    fn single_run_is_pure_in_seed() {
        let g = two_triangles_bridge();
        let a = single_run(&g, 2, 99).unwrap();
        let b = single_run(&g, 2, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_run_produces_k_communities() {
        let g = two_triangles_bridge();
        for seed in 0..50 {
            for k in 1..=6 {
                let p = single_run(&g, k, seed).unwrap();
                assert_eq!(p.k(), k);
                assert_eq!(p.len(), 6);
            }
        }
    }

    #[test]
    fn single_run_rejects_large_k() {
        let g = two_triangles_bridge();
        assert!(single_run(&g, 7, 0).is_err());
    }

    #[test]
    fn some_seed_recovers_the_two_communities() {
        let g = two_triangles_bridge();
        let expected =
            Partition::from_communities(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let hit = (0..500).any(|seed| single_run(&g, 2, seed).unwrap() == expected);
        assert!(hit, "no seed out of 500 recovered the planted partition");
    }

    #[test]
    fn contraction_state_tracks_inter_weights() {
        let g = two_triangles_bridge();
        let mut st = ContractionState::new(&g);
        assert_eq!(st.active_count(), 6);
        // Merge 0 and 1: the supernode keeps one edge to 2 of weight 2.
        let (i, j) = (0, 1);
        st.merge_positions(i, j);
        assert_eq!(st.active_count(), 5);
        assert_eq!(st.inter_weight(0, 2), 2.0);
        assert_eq!(st.inter_weight(1, 2), 2.0);
        assert_eq!(st.inter_weight(0, 5), 0.0);
    }

    #[test]
    fn success_bound_examples() {
        let b = success_bound(4, 2).unwrap();
        assert_eq!(b, BigRational::new(BigInt::from(1), BigInt::from(6)));
        let b = success_bound(2, 2).unwrap();
        assert_eq!(b, BigRational::from(BigInt::from(1)));
        let b = success_bound(5, 3).unwrap();
        assert_eq!(b, BigRational::new(BigInt::from(1), BigInt::from(20)));
        assert!(success_bound(3, 1).is_err());
        assert!(success_bound(3, 4).is_err());
    }

    #[test]
    fn run_budget_examples() {
        let b = run_budget(0.5, 2.0).unwrap();
        assert_eq!(b.runs, 2);
        assert!(b.guarantee() >= 0.5 - 1e-12);

        let b = run_budget(1.0, 2.0).unwrap();
        assert_eq!(b.runs, 1);

        let b = run_budget(1.0 / 6.0, 2.0).unwrap();
        assert_eq!(b.runs, 11);

        assert!(run_budget(0.0, 2.0).is_err());
        assert!(run_budget(0.5, 0.0).is_err());
        assert!(run_budget(1.5, 1.0).is_err());
    }

    #[test]
    fn customized_finds_bridge_partition() {
        let g = two_triangles_bridge();
        let budget = RunBudget::fixed(300).unwrap();
        let out = detect_customized(&g, 2, &FeasibilityPredicate::AlwaysTrue, &budget, 12345)
            .unwrap()
            .expect("some run is feasible");
        let expected =
            Partition::from_communities(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(out.partition, expected);
        assert_eq!(out.cut_weight, 1.0);
    }

    #[test]
    fn customized_infeasible_predicate_returns_none() {
        // Three designated nodes can never land in two distinct
        // communities, so every sampled partition is rejected.
        let g = two_triangles_bridge();
        let budget = RunBudget::fixed(20).unwrap();
        let pred = FeasibilityPredicate::DesignatedSeparation(vec![0, 1, 2]);
        let out = detect_customized(&g, 2, &pred, &budget, 7).unwrap();
        assert!(out.is_none());
    }

    #[test]
    fn customized_min_size_respects_predicate() {
        let g = two_triangles_bridge();
        let budget = RunBudget::fixed(100).unwrap();
        let pred = FeasibilityPredicate::MinSize(2);
        let out = detect_customized(&g, 2, &pred, &budget, 3)
            .unwrap()
            .expect("feasible run exists");
        assert!(out.partition.community_sizes().iter().all(|&s| s >= 2));
        // Constrained optimum can never beat the unconstrained one.
        assert!(out.cut_weight >= 1.0);
    }

    #[test]
    fn customized_cut_is_monotone_in_runs() {
        let g = two_triangles_bridge();
        let master = 5;
        let mut prev = f64::INFINITY;
        for runs in [1usize, 5, 25, 125] {
            let budget = RunBudget::fixed(runs).unwrap();
            let out =
                detect_customized(&g, 2, &FeasibilityPredicate::AlwaysTrue, &budget, master)
                    .unwrap()
                    .unwrap();
            assert!(out.cut_weight <= prev + 1e-12);
            prev = out.cut_weight;
        }
    }

    #[test]
    fn designated_separation_validation() {
        let g = two_triangles_bridge();
        let budget = RunBudget::fixed(1).unwrap();
        let pred = FeasibilityPredicate::DesignatedSeparation(vec![99]);
        assert!(detect_customized(&g, 2, &pred, &budget, 0).is_err());
    }
}
