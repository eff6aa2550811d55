//! Terminal-set-enhanced community detection: pick a pool of promising
//! nodes, enumerate k-subsets as terminal candidates, separate each
//! candidate's local areas with two-terminal minimum cuts, and keep the
//! partition with the smallest conductance.
//!
//! Overlapping areas are the norm rather than the exception: every node
//! carries a few long-range edges, so areas of terminals in different
//! communities often share a node or two, and large radii make any two
//! areas overlap outright. A candidate is therefore not discarded on
//! overlap; each cut runs between the two areas' set differences, leaving
//! the shared nodes free for the minimum cut to place on their natural
//! side. A pair is unusable only when one area swallows the other
//! entirely, and only such candidates are skipped.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flow::min_cut_st;
use crate::graph::{CutSet, DisjointSet, LocalArea, NodeId, Partition, WeightedGraph};
use crate::metrics::{misclassification, partition_report, AggregateRule, QualityReport};

/// Which score ranks nodes for the terminal pool.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PoolRule {
    /// Highest weighted degree first.
    Degree,
    /// Highest h-local closeness centrality first.
    Centrality { h: usize },
}

/// How each candidate's local areas are separated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutRule {
    /// One minimum cut per pair of areas, as in the enumeration with two
    /// parameters; the default.
    Pairwise,
    /// One minimum cut per area against the union of the others.
    Isolating,
}

/// Full parameter set for a detection run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TsecdConfig {
    /// Number of communities.
    pub k: usize,
    /// Pool size: how many nodes are considered as terminals.
    pub p: usize,
    /// Local-area radius: each terminal is expanded to itself plus its `l`
    /// nearest nodes.
    pub l: usize,
    pub pool_rule: PoolRule,
    pub cut_rule: CutRule,
    pub aggregate: AggregateRule,
}

impl TsecdConfig {
    pub fn new(k: usize, p: usize, l: usize) -> Self {
        Self {
            k,
            p,
            l,
            pool_rule: PoolRule::Degree,
            cut_rule: CutRule::Pairwise,
            aggregate: AggregateRule::Mean,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidConfig("k must be at least 2".into()));
        }
        if self.p < self.k {
            return Err(Error::InvalidConfig(format!(
                "pool size {} is smaller than k = {}",
                self.p, self.k
            )));
        }
        if self.p > n {
            return Err(Error::InvalidConfig(format!(
                "pool size {} exceeds node count {}",
                self.p, n
            )));
        }
        if let PoolRule::Centrality { h } = self.pool_rule {
            if h < 1 {
                return Err(Error::InvalidConfig("centrality h must be >= 1".into()));
            }
        }
        Ok(())
    }
}

/// The four standard (p, l) derivations. The pool size is clamped to the
/// node count so the presets stay usable on small graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SettingPreset {
    Setting1,
    Setting2,
    Setting3,
    Setting4,
}

impl SettingPreset {
    pub const ALL: [SettingPreset; 4] = [
        SettingPreset::Setting1,
        SettingPreset::Setting2,
        SettingPreset::Setting3,
        SettingPreset::Setting4,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SettingPreset::Setting1 => "setting1",
            SettingPreset::Setting2 => "setting2",
            SettingPreset::Setting3 => "setting3",
            SettingPreset::Setting4 => "setting4",
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i.checked_sub(1)?).copied()
    }

    /// Derives (p, l) from the node count and k.
    pub fn params(&self, n: usize, k: usize) -> (usize, usize) {
        let (p, l) = match self {
            SettingPreset::Setting1 => (10 * k, n / k),
            SettingPreset::Setting2 => (10 * k, n / (8 * k)),
            SettingPreset::Setting3 => (2 * k, n / (2 * k)),
            SettingPreset::Setting4 => (10 * k, n / (2 * k)),
        };
        (p.min(n), l)
    }

    pub fn config(&self, n: usize, k: usize) -> TsecdConfig {
        let (p, l) = self.params(n, k);
        TsecdConfig::new(k, p, l)
    }
}

/// Counters describing one detection run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct TsecdDiagnostics {
    /// C(p, k): every k-subset of the pool.
    pub candidates_total: usize,
    /// Candidates skipped because one local area fully contains another.
    pub skipped_overlap: usize,
    /// Candidates whose cut left fewer than k components.
    pub discarded_too_few_parts: usize,
    /// Candidates that produced a scored partition.
    pub evaluated: usize,
}

/// Result of a detection run.
#[derive(Debug, Clone)]
pub struct TsecdOutcome {
    pub partition: Partition,
    pub report: QualityReport,
    /// The aggregate conductance that won the selection.
    pub score: f64,
    /// Crossing edges of the winning partition.
    pub cut: CutSet,
    /// The winning terminal nodes, ascending.
    pub terminals: Vec<NodeId>,
    pub pool: Vec<NodeId>,
    pub diagnostics: TsecdDiagnostics,
}

/// Top-p nodes under the pool rule; ties go to the smaller node id.
/// Nodes with undefined centrality (no reachable neighbor) rank last.
pub fn select_pool(g: &WeightedGraph, cfg: &TsecdConfig) -> Result<Vec<NodeId>> {
    cfg.validate(g.node_count())?;
    let scores: Vec<Option<f64>> = match cfg.pool_rule {
        PoolRule::Degree => (0..g.node_count())
            .map(|v| Some(g.degree_unchecked(v)))
            .collect(),
        PoolRule::Centrality { h } => (0..g.node_count())
            .map(|v| g.centrality(v, h).ok())
            .collect(),
    };
    let mut order: Vec<NodeId> = (0..g.node_count()).collect();
    order.sort_by(|&a, &b| {
        match (scores[a], scores[b]) {
            (Some(x), Some(y)) => y.partial_cmp(&x).expect("finite scores"),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => std::cmp::Ordering::Equal,
        }
        .then(a.cmp(&b))
    });
    order.truncate(cfg.p);
    Ok(order)
}

/// Fixed-width bitset over edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}

fn cut_bits(g: &WeightedGraph, cut: &CutSet) -> Bits {
    let mut bits = Bits::new(g.edge_count());
    for &(u, v) in cut.edges() {
        bits.set(g.edge_index(u, v).expect("cut edge in graph"));
    }
    bits
}

/// Scored evaluation of one candidate, shared by the scan and the final
/// materialization of the winner.
struct Evaluated {
    score: f64,
    roots: Vec<usize>,
}

enum CandidateOutcome {
    SkippedOverlap,
    TooFewParts,
    Scored(Evaluated),
}

struct Evaluator<'a> {
    g: &'a WeightedGraph,
    cfg: TsecdConfig,
    pool: Vec<NodeId>,
    areas: Vec<LocalArea>,
    /// Pairwise cut between pool entries i < j, indexed i * p + j, each
    /// between the areas' set differences; `None` when one area contains
    /// the other. Unused by the isolating rule.
    pair_cuts: Vec<Option<Bits>>,
}

/// The two sides of a pair cut: the set differences of the areas. `None`
/// when either difference is empty.
fn pair_sides(a: &LocalArea, b: &LocalArea) -> Option<(Vec<NodeId>, Vec<NodeId>)> {
    let left: Vec<NodeId> = a.members.difference(&b.members).copied().collect();
    let right: Vec<NodeId> = b.members.difference(&a.members).copied().collect();
    if left.is_empty() || right.is_empty() {
        return None;
    }
    Some((left, right))
}

impl<'a> Evaluator<'a> {
    fn new(g: &'a WeightedGraph, cfg: TsecdConfig) -> Result<Self> {
        let pool = select_pool(g, &cfg)?;
        let areas: Vec<LocalArea> = pool
            .iter()
            .map(|&v| g.local_area(v, cfg.l))
            .collect::<Result<_>>()?;

        let p = pool.len();
        let mut pair_cuts = Vec::new();
        if cfg.cut_rule == CutRule::Pairwise {
            // Every candidate pair reuses these cuts, so the flow work is
            // O(p^2) instead of O(C(p, k) * k^2).
            let indexed: Vec<(usize, usize)> = (0..p)
                .flat_map(|i| ((i + 1)..p).map(move |j| (i, j)))
                .collect();
            let computed: Vec<Option<Bits>> = indexed
                .par_iter()
                .map(|&(i, j)| {
                    let Some((left, right)) = pair_sides(&areas[i], &areas[j]) else {
                        return Ok(None);
                    };
                    let cut = min_cut_st(g, &left, &right)?;
                    Ok(Some(cut_bits(g, &cut)))
                })
                .collect::<Result<_>>()?;
            pair_cuts = vec![None; p * p];
            for (&(i, j), bits) in indexed.iter().zip(computed) {
                pair_cuts[i * p + j] = bits;
            }
        }

        Ok(Self {
            g,
            cfg,
            pool,
            areas,
            pair_cuts,
        })
    }

    /// A candidate is unusable when some pair of its areas is fully
    /// nested, leaving nothing to cut between.
    fn candidate_unusable(&self, candidate: &[usize]) -> bool {
        let p = self.pool.len();
        for (a, &i) in candidate.iter().enumerate() {
            for &j in &candidate[a + 1..] {
                let usable = match self.cfg.cut_rule {
                    CutRule::Pairwise => {
                        let (lo, hi) = (i.min(j), i.max(j));
                        self.pair_cuts[lo * p + hi].is_some()
                    }
                    CutRule::Isolating => {
                        pair_sides(&self.areas[i], &self.areas[j]).is_some()
                    }
                };
                if !usable {
                    return true;
                }
            }
        }
        false
    }

    fn candidate_cut(&self, candidate: &[usize]) -> Result<Bits> {
        let mut union = Bits::new(self.g.edge_count());
        match self.cfg.cut_rule {
            CutRule::Pairwise => {
                let p = self.pool.len();
                for (a, &i) in candidate.iter().enumerate() {
                    for &j in &candidate[a + 1..] {
                        let (lo, hi) = (i.min(j), i.max(j));
                        let bits = self.pair_cuts[lo * p + hi]
                            .as_ref()
                            .expect("usable pair has a cached cut");
                        union.or_assign(bits);
                    }
                }
            }
            CutRule::Isolating => {
                for (a, &i) in candidate.iter().enumerate() {
                    let mut others = std::collections::BTreeSet::new();
                    for (b, &j) in candidate.iter().enumerate() {
                        if a != b {
                            others.extend(self.areas[j].members.iter().copied());
                        }
                    }
                    let side: Vec<NodeId> = self.areas[i]
                        .members
                        .iter()
                        .filter(|v| !others.contains(v))
                        .copied()
                        .collect();
                    let sink: Vec<NodeId> = others
                        .iter()
                        .filter(|v| !self.areas[i].members.contains(v))
                        .copied()
                        .collect();
                    if side.is_empty() || sink.is_empty() {
                        continue;
                    }
                    let cut = min_cut_st(self.g, &side, &sink)?;
                    union.or_assign(&cut_bits(self.g, &cut));
                }
            }
        }
        Ok(union)
    }

    fn evaluate(&self, candidate: &[usize]) -> Result<CandidateOutcome> {
        if self.candidate_unusable(candidate) {
            return Ok(CandidateOutcome::SkippedOverlap);
        }
        let cut = self.candidate_cut(candidate)?;

        let n = self.g.node_count();
        let edges = self.g.edges();
        let mut dsu = DisjointSet::new(n);
        let mut parts = n;
        for (idx, &(u, v, _)) in edges.iter().enumerate() {
            if !cut.get(idx) && dsu.union(u, v) {
                parts -= 1;
            }
        }
        if parts < self.cfg.k {
            return Ok(CandidateOutcome::TooFewParts);
        }
        if parts > self.cfg.k {
            // Give back the heaviest removed edges while more than k parts
            // remain.
            let mut removed: Vec<usize> = (0..edges.len()).filter(|&i| cut.get(i)).collect();
            removed.sort_by(|&a, &b| {
                edges[b].2.partial_cmp(&edges[a].2).expect("finite").then(a.cmp(&b))
            });
            for idx in removed {
                if parts == self.cfg.k {
                    break;
                }
                let (u, v, _) = edges[idx];
                if dsu.union(u, v) {
                    parts -= 1;
                }
            }
        }

        // Per-community conductance from one pass over the edges.
        let mut dsu = dsu;
        let mut comp_of_root: Vec<usize> = vec![usize::MAX; n];
        let mut comp_count = 0;
        let mut roots = vec![0usize; n];
        for v in 0..n {
            let r = dsu.find(v);
            if comp_of_root[r] == usize::MAX {
                comp_of_root[r] = comp_count;
                comp_count += 1;
            }
            roots[v] = comp_of_root[r];
        }
        debug_assert_eq!(comp_count, self.cfg.k);
        let mut internal = vec![0.0f64; comp_count];
        let mut boundary = vec![0.0f64; comp_count];
        for &(u, v, w) in edges {
            if roots[u] == roots[v] {
                internal[roots[u]] += w;
            } else {
                boundary[roots[u]] += w;
                boundary[roots[v]] += w;
            }
        }
        let conductances = internal.iter().zip(&boundary).map(|(&m_s, &c_s)| {
            if c_s == 0.0 {
                0.0
            } else {
                c_s / (2.0 * m_s + c_s)
            }
        });
        let score = match self.cfg.aggregate {
            AggregateRule::Mean => conductances.sum::<f64>() / comp_count as f64,
            AggregateRule::Max => conductances.fold(0.0f64, f64::max),
        };
        Ok(CandidateOutcome::Scored(Evaluated { score, roots }))
    }
}

fn combinations(p: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, p: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = k - current.len();
        for i in start..=(p - remaining) {
            current.push(i);
            rec(i + 1, p, k, current, out);
            current.pop();
        }
    }
    if k <= p {
        rec(0, p, k, &mut current, &mut out);
    }
    out
}

/// Runs the full detection: pool selection, candidate enumeration, cuts,
/// and conductance-minimizing selection. Deterministic for a fixed config;
/// ties between equal scores go to the lexicographically smallest terminal
/// set.
pub fn detect(g: &WeightedGraph, cfg: &TsecdConfig) -> Result<TsecdOutcome> {
    cfg.validate(g.node_count())?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let eval = Evaluator::new(g, *cfg)?;
    let candidates = combinations(eval.pool.len(), cfg.k);
    let candidates_total = candidates.len();

    struct Best {
        score: f64,
        terminals: Vec<NodeId>,
        candidate: Vec<usize>,
    }
    struct Scan {
        skipped: usize,
        discarded: usize,
        evaluated: usize,
        best: Option<Best>,
    }
    let empty = || Scan {
        skipped: 0,
        discarded: 0,
        evaluated: 0,
        best: None,
    };
    let merge_best = |a: Option<Best>, b: Option<Best>| match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            let x_key = (x.score, &x.terminals);
            let y_key = (y.score, &y.terminals);
            if y_key.0 < x_key.0 || (y_key.0 == x_key.0 && y_key.1 < x_key.1) {
                Some(y)
            } else {
                Some(x)
            }
        }
    };

    let scan = candidates
        .par_iter()
        .map(|candidate| -> Result<Scan> {
            let mut scan = empty();
            match eval.evaluate(candidate)? {
                CandidateOutcome::SkippedOverlap => scan.skipped = 1,
                CandidateOutcome::TooFewParts => scan.discarded = 1,
                CandidateOutcome::Scored(e) => {
                    scan.evaluated = 1;
                    let mut terminals: Vec<NodeId> =
                        candidate.iter().map(|&i| eval.pool[i]).collect();
                    terminals.sort_unstable();
                    scan.best = Some(Best {
                        score: e.score,
                        terminals,
                        candidate: candidate.clone(),
                    });
                }
            }
            Ok(scan)
        })
        .try_reduce(empty, |a, b| {
            Ok(Scan {
                skipped: a.skipped + b.skipped,
                discarded: a.discarded + b.discarded,
                evaluated: a.evaluated + b.evaluated,
                best: merge_best(a.best, b.best),
            })
        })?;

    let diagnostics = TsecdDiagnostics {
        candidates_total,
        skipped_overlap: scan.skipped,
        discarded_too_few_parts: scan.discarded,
        evaluated: scan.evaluated,
    };
    let best = scan.best.ok_or(Error::NoFeasibleCandidate)?;

    // Materialize the winner.
    let evaluated = match eval.evaluate(&best.candidate)? {
        CandidateOutcome::Scored(e) => e,
        _ => unreachable!("winner evaluated once already"),
    };
    let partition = Partition::from_root_labels(evaluated.roots);
    let cut = g.crossing_edges(&partition)?;
    let report = partition_report(g, &partition)?;
    Ok(TsecdOutcome {
        partition,
        report,
        score: best.score,
        cut,
        terminals: best.terminals,
        pool: eval.pool,
        diagnostics,
    })
}

/// One row of a setting sweep. A preset that cannot produce a partition
/// (every candidate skipped) is recorded as a failed row instead of
/// aborting the sweep.
#[derive(Debug)]
pub struct SweepRow {
    pub setting: SettingPreset,
    pub config: TsecdConfig,
    pub outcome: std::result::Result<SweepOutcome, Error>,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub partition: Partition,
    pub report: QualityReport,
    pub score: f64,
    pub misclassified: Option<usize>,
}

#[derive(Debug)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    /// Scores of the reference partition, when one was supplied.
    pub truth: Option<QualityReport>,
}

/// Runs [`detect`] once per preset and tabulates the reports, plus the
/// ground-truth row when a reference partition is supplied.
pub fn detect_sweep(
    g: &WeightedGraph,
    presets: &[SettingPreset],
    k: usize,
    truth: Option<&Partition>,
) -> Result<SweepTable> {
    let mut rows = Vec::with_capacity(presets.len());
    for &preset in presets {
        let config = preset.config(g.node_count(), k);
        let outcome = detect(g, &config).and_then(|o| {
            let misclassified = truth.map(|t| misclassification(&o.partition, t)).transpose()?;
            Ok(SweepOutcome {
                partition: o.partition,
                report: o.report,
                score: o.score,
                misclassified,
            })
        });
        rows.push(SweepRow {
            setting: preset,
            config,
            outcome,
        });
    }
    let truth_report = truth.map(|t| partition_report(g, t)).transpose()?;
    Ok(SweepTable {
        rows,
        truth: truth_report,
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
    fn pool_whole_graph_and_star() {
        let g = two_triangles_bridge();
        let cfg = TsecdConfig::new(2, 6, 1);
        assert_eq!(select_pool(&g, &cfg).unwrap().len(), 6);

        let star =
            WeightedGraph::unit_from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let pool = select_pool(&star, &TsecdConfig::new(2, 2, 1)).unwrap();
        assert_eq!(pool[0], 0);
    }

    #[test]
    fn pool_centrality_prefers_path_middle() {
        let path = WeightedGraph::unit_from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let cfg = TsecdConfig {
            pool_rule: PoolRule::Centrality { h: 2 },
            ..TsecdConfig::new(2, 2, 1)
        };
        let pool = select_pool(&path, &cfg).unwrap();
        assert_eq!(pool[0], 1);
    }

    #[test]
    fn pool_size_validation() {
        let g = two_triangles_bridge();
        let cfg = TsecdConfig::new(2, 7, 1);
        assert!(select_pool(&g, &cfg).is_err());
    }

    #[test]
    fn setting_presets_derive_params() {
        let s1 = SettingPreset::Setting1.params(340, 2);
        assert_eq!(s1, (20, 170));
        let s2 = SettingPreset::Setting2.params(340, 2);
        assert_eq!(s2, (20, 21));
        let s3 = SettingPreset::Setting3.params(340, 2);
        assert_eq!(s3, (4, 85));
        let s4 = SettingPreset::Setting4.params(340, 2);
        assert_eq!(s4, (20, 85));
        // Pool clamps to n on small graphs.
        assert_eq!(SettingPreset::Setting4.params(6, 2).0, 6);
    }

    #[test]
    fn detect_two_triangles() {
        let g = two_triangles_bridge();
        let cfg = SettingPreset::Setting4.config(6, 2);
        let out = detect(&g, &cfg).unwrap();
        let expected =
            Partition::from_communities(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(out.partition, expected);
        assert!((out.score - 1.0 / 7.0).abs() < 1e-12);
        assert_eq!(out.cut.total_weight(), 1.0);
        assert_eq!(
            out.diagnostics.candidates_total,
            out.diagnostics.skipped_overlap
                + out.diagnostics.discarded_too_few_parts
                + out.diagnostics.evaluated
        );
    }

    #[test]
    fn detect_all_presets_agree_on_toy_graph() {
        let g = two_triangles_bridge();
        let expected =
            Partition::from_communities(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        for preset in SettingPreset::ALL {
            let cfg = preset.config(6, 2);
            match detect(&g, &cfg) {
                Ok(out) => assert_eq!(out.partition, expected, "{preset:?}"),
                // Large-l presets may skip every candidate on 6 nodes.
                Err(Error::NoFeasibleCandidate) => {}
                Err(other) => panic!("unexpected error {other:?}"),
            }
        }
    }

    #[test]
    fn detect_isolating_rule_matches_on_toy_graph() {
        let g = two_triangles_bridge();
        let cfg = TsecdConfig {
            cut_rule: CutRule::Isolating,
            ..SettingPreset::Setting4.config(6, 2)
        };
        let out = detect(&g, &cfg).unwrap();
        assert_eq!(out.partition.k(), 2);
        assert_eq!(out.cut.total_weight(), 1.0);
    }

    #[test]
    fn detect_rejects_disconnected() {
        let g = WeightedGraph::unit_from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let cfg = TsecdConfig::new(2, 4, 1);
        assert!(matches!(detect(&g, &cfg), Err(Error::Disconnected)));
    }

    #[test]
    fn detect_no_feasible_candidate() {
        // l large enough that every pair of areas covers the whole graph.
        let g = two_triangles_bridge();
        let cfg = TsecdConfig::new(2, 6, 6);
        assert!(matches!(
            detect(&g, &cfg),
            Err(Error::NoFeasibleCandidate)
        ));
    }

    #[test]
    fn detect_is_deterministic() {
        let g = two_triangles_bridge();
        let cfg = SettingPreset::Setting4.config(6, 2);
        let a = detect(&g, &cfg).unwrap();
        let b = detect(&g, &cfg).unwrap();
        assert_eq!(a.partition, b.partition);
        assert_eq!(a.terminals, b.terminals);
        assert_eq!(a.score, b.score);
    }

    #[test]
    fn sweep_single_preset_matches_detect() {
        let g = two_triangles_bridge();
        let truth = Partition::from_communities(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let table =
            detect_sweep(&g, &[SettingPreset::Setting4], 2, Some(&truth)).unwrap();
        assert_eq!(table.rows.len(), 1);
        let row = table.rows[0].outcome.as_ref().unwrap();
        let direct = detect(&g, &SettingPreset::Setting4.config(6, 2)).unwrap();
        assert_eq!(row.partition, direct.partition);
        assert_eq!(row.misclassified, Some(0));
        assert!(table.truth.is_some());
    }

    #[test]
    fn combinations_enumerates_choose() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(6, 3).len(), 20);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }
}
