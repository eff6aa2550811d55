//! Community quality scoring: the six per-community metrics (conductance,
//! expansion, cut ratio, normalized cut, average out-degree fraction,
//! internal density), the volume-based conductance variant, partition-level
//! aggregation and ground-truth comparison.
//!
//! All counts generalize to weights; on unit-weight graphs every statistic
//! is an integer and every metric an exact rational.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{NodeId, Partition, WeightedGraph};

/// Raw statistics of a community `S`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommunityStats {
    /// Node count n_S.
    pub n_s: usize,
    /// Internal edge weight m_S (edges with both endpoints in S).
    pub m_s: f64,
    /// Boundary edge weight c_S (edges with exactly one endpoint in S).
    pub c_s: f64,
    /// Volume: sum of weighted degrees over S. Equals 2 m_S + c_S.
    pub vol_s: f64,
}

/// The six quality scores of one community. `None` marks a cell whose
/// denominator is undefined (for example internal density of a singleton);
/// aggregates skip such cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricSuite {
    pub conductance: Option<f64>,
    pub expansion: Option<f64>,
    pub cut_ratio: Option<f64>,
    pub normalized_cut: Option<f64>,
    pub avg_odf: Option<f64>,
    pub internal_density: Option<f64>,
}

impl MetricSuite {
    pub const NAMES: [&'static str; 6] = [
        "conductance",
        "expansion",
        "cut_ratio",
        "normalized_cut",
        "avg_odf",
        "internal_density",
    ];

    pub fn values(&self) -> [Option<f64>; 6] {
        [
            self.conductance,
            self.expansion,
            self.cut_ratio,
            self.normalized_cut,
            self.avg_odf,
            self.internal_density,
        ]
    }
}

/// Computes n_S, m_S, c_S and the volume of a community.
pub fn community_stats(g: &WeightedGraph, members: &[NodeId]) -> Result<CommunityStats> {
    if members.is_empty() {
        return Err(Error::PartitionMismatch("empty community".into()));
    }
    let mut inside = vec![false; g.node_count()];
    for &v in members {
        if v >= g.node_count() {
            return Err(Error::InvalidNode(v));
        }
        inside[v] = true;
    }
    let mut m_s = 0.0;
    let mut c_s = 0.0;
    for &(u, v, w) in g.edges() {
        match (inside[u], inside[v]) {
            (true, true) => m_s += w,
            (true, false) | (false, true) => c_s += w,
            _ => {}
        }
    }
    let vol_s = members.iter().map(|&v| g.degree_unchecked(v)).sum();
    Ok(CommunityStats {
        n_s: members.len(),
        m_s,
        c_s,
        vol_s,
    })
}

/// Volume-form conductance: boundary weight over the smaller of Vol(S) and
/// Vol(V \ S). `None` when the smaller volume is zero.
pub fn conductance_eq1(g: &WeightedGraph, members: &[NodeId]) -> Result<Option<f64>> {
    let stats = community_stats(g, members)?;
    let vol_rest = 2.0 * g.total_weight() - stats.vol_s;
    let denom = stats.vol_s.min(vol_rest);
    if denom <= 0.0 {
        return Ok(None);
    }
    Ok(Some(stats.c_s / denom))
}

/// Evaluates the six metrics for one community.
///
/// Conventions: a community with no boundary scores zero on the boundary
/// metrics regardless of degenerate denominators; internal density needs
/// n_S >= 2; the average out-degree fraction needs every member to have a
/// positive degree.
pub fn metric_suite(g: &WeightedGraph, members: &[NodeId]) -> Result<MetricSuite> {
    let stats = community_stats(g, members)?;
    Ok(metric_suite_from_stats(g, members, &stats))
}

fn metric_suite_from_stats(
    g: &WeightedGraph,
    members: &[NodeId],
    stats: &CommunityStats,
) -> MetricSuite {
    let n = g.node_count();
    let m = g.total_weight();
    let (n_s, m_s, c_s) = (stats.n_s, stats.m_s, stats.c_s);

    let conductance = if c_s == 0.0 {
        Some(0.0)
    } else {
        Some(c_s / (2.0 * m_s + c_s))
    };
    let expansion = Some(c_s / n_s as f64);
    let cut_ratio = if c_s == 0.0 {
        Some(0.0)
    } else {
        Some(c_s / (n_s as f64 * (n - n_s) as f64))
    };
    // Both denominators are the volume of a side: 2 m_S + c_S for S and
    // 2 m_{S̄} + c_S for its complement.
    let m_rest = m - m_s - c_s;
    let normalized_cut = if c_s == 0.0 {
        Some(0.0)
    } else {
        Some(c_s / (2.0 * m_s + c_s) + c_s / (2.0 * m_rest + c_s))
    };

    let mut inside = vec![false; n];
    for &v in members {
        inside[v] = true;
    }
    let mut odf_sum = 0.0;
    let mut odf_defined = true;
    for &v in members {
        let d = g.degree_unchecked(v);
        if d <= 0.0 {
            odf_defined = false;
            break;
        }
        let out: f64 = g
            .neighbors(v)
            .iter()
            .filter(|&&(w, _)| !inside[w])
            .map(|&(_, wt)| wt)
            .sum();
        odf_sum += out / d;
    }
    let avg_odf = odf_defined.then(|| odf_sum / n_s as f64);

    let internal_density = (n_s >= 2).then(|| {
        1.0 - 2.0 * m_s / (n_s as f64 * (n_s - 1) as f64)
    });

    MetricSuite {
        conductance,
        expansion,
        cut_ratio,
        normalized_cut,
        avg_odf,
        internal_density,
    }
}

/// One row of a [`QualityReport`]: a community with its statistics and
/// scores.
#[derive(Debug, Clone, Serialize)]
pub struct CommunityRow {
    pub community: usize,
    pub stats: CommunityStats,
    pub metrics: MetricSuite,
    pub phi_eq1: Option<f64>,
}

/// Mean, max and sum of each metric over the defined cells of all
/// communities. `defined` counts the cells that entered each aggregate.
#[derive(Debug, Clone, Serialize)]
pub struct MetricAggregate {
    pub mean: MetricSuite,
    pub max: MetricSuite,
    pub sum: MetricSuite,
    pub phi_eq1_mean: Option<f64>,
    pub phi_eq1_max: Option<f64>,
    pub phi_eq1_sum: Option<f64>,
    pub defined: [usize; 6],
}

/// Per-community scores plus aggregates for a whole partition.
#[derive(Debug, Clone, Serialize)]
pub struct QualityReport {
    pub rows: Vec<CommunityRow>,
    pub aggregate: MetricAggregate,
}

impl QualityReport {
    /// Partition-level conductance under a given aggregation rule.
    pub fn conductance_score(&self, rule: AggregateRule) -> Option<f64> {
        match rule {
            AggregateRule::Mean => self.aggregate.mean.conductance,
            AggregateRule::Max => self.aggregate.max.conductance,
        }
    }
}

/// How per-community conductances combine into a partition score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AggregateRule {
    Mean,
    Max,
}

/// Scores every community of `p` and aggregates.
pub fn partition_report(g: &WeightedGraph, p: &Partition) -> Result<QualityReport> {
    if p.len() != g.node_count() {
        return Err(Error::PartitionMismatch(format!(
            "partition covers {} nodes, graph has {}",
            p.len(),
            g.node_count()
        )));
    }
    let mut rows = Vec::with_capacity(p.k());
    for (i, members) in p.communities().iter().enumerate() {
        let stats = community_stats(g, members)?;
        let metrics = metric_suite_from_stats(g, members, &stats);
        let phi_eq1 = conductance_eq1(g, members)?;
        rows.push(CommunityRow {
            community: i,
            stats,
            metrics,
            phi_eq1,
        });
    }
    let aggregate = aggregate_rows(&rows);
    Ok(QualityReport { rows, aggregate })
}

fn fold_cells(cells: &[Option<f64>]) -> (Option<f64>, Option<f64>, Option<f64>, usize) {
    let defined: Vec<f64> = cells.iter().filter_map(|&x| x).collect();
    if defined.is_empty() {
        return (None, None, None, 0);
    }
    let sum: f64 = defined.iter().sum();
    let max = defined.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (
        Some(sum / defined.len() as f64),
        Some(max),
        Some(sum),
        defined.len(),
    )
}

fn aggregate_rows(rows: &[CommunityRow]) -> MetricAggregate {
    let mut mean = [None; 6];
    let mut max = [None; 6];
    let mut sum = [None; 6];
    let mut defined = [0usize; 6];
    for idx in 0..6 {
        let cells: Vec<Option<f64>> = rows.iter().map(|r| r.metrics.values()[idx]).collect();
        let (m, mx, s, d) = fold_cells(&cells);
        mean[idx] = m;
        max[idx] = mx;
        sum[idx] = s;
        defined[idx] = d;
    }
    let from = |v: [Option<f64>; 6]| MetricSuite {
        conductance: v[0],
        expansion: v[1],
        cut_ratio: v[2],
        normalized_cut: v[3],
        avg_odf: v[4],
        internal_density: v[5],
    };
    let phi_cells: Vec<Option<f64>> = rows.iter().map(|r| r.phi_eq1).collect();
    let (phi_mean, phi_max, phi_sum, _) = fold_cells(&phi_cells);
    MetricAggregate {
        mean: from(mean),
        max: from(max),
        sum: from(sum),
        phi_eq1_mean: phi_mean,
        phi_eq1_max: phi_max,
        phi_eq1_sum: phi_sum,
        defined,
    }
}

/// Minimum number of disagreeing nodes between two partitions over all
/// injective mappings between their community labels, found by maximizing
/// total label overlap.
pub fn misclassification(pred: &Partition, truth: &Partition) -> Result<usize> {
    if pred.len() != truth.len() {
        return Err(Error::PartitionMismatch(format!(
            "partitions cover {} and {} nodes",
            pred.len(),
            truth.len()
        )));
    }
    let n = pred.len();
    // Overlap matrix; rows = the smaller side so the bitmask stays narrow.
    let (rows_p, cols_p, swapped) = if pred.k() <= truth.k() {
        (pred, truth, false)
    } else {
        (truth, pred, true)
    };
    let _ = swapped; // overlap is symmetric; orientation only sizes the DP
    let (rk, ck) = (rows_p.k(), cols_p.k());
    let mut overlap = vec![vec![0usize; ck]; rk];
    for v in 0..n {
        overlap[rows_p.community_of(v)][cols_p.community_of(v)] += 1;
    }
    assert!(
        rk <= 20,
        "label matching supports up to 20 communities on the smaller side"
    );
    // DP over subsets of rows: best overlap assigning rows injectively to
    // columns, processing columns one at a time.
    let full = 1usize << rk;
    let mut best = vec![0usize; full];
    for col in 0..ck {
        let prev = best.clone();
        for mask in 0..full {
            for row in 0..rk {
                if mask & (1 << row) != 0 {
                    let cand = prev[mask ^ (1 << row)] + overlap[row][col];
                    if cand > best[mask] {
                        best[mask] = cand;
                    }
                }
            }
        }
    }
    Ok(n - best[full - 1])
}
