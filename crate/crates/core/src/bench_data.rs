//! Benchmark inputs: a planted-partition generator, edge-list and
//! community-file loaders (the format produced by the common LFR tooling),
//! matching writers, and the embedded Zachary karate club fixture.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{NodeId, Partition, WeightedGraph};

/// Configuration of a planted-partition graph: `communities` blocks of
/// `size` nodes, intra-block edges drawn with probability `z_in/(size-1)`
/// and inter-block edges with `z_out/(size*(communities-1))`, so `z_in` and
/// `z_out` are the expected intra- and inter-community degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantedConfig {
    pub communities: usize,
    pub size: usize,
    pub z_in: f64,
    pub z_out: f64,
    pub seed: u64,
}

impl PlantedConfig {
    pub fn node_count(&self) -> usize {
        self.communities * self.size
    }

    fn probabilities(&self) -> Result<(f64, f64)> {
        if self.communities == 0 || self.size == 0 {
            return Err(Error::InvalidConfig(
                "need at least one community of at least one node".into(),
            ));
        }
        let p_in = if self.size == 1 {
            if self.z_in != 0.0 {
                return Err(Error::InvalidConfig(
                    "z_in must be 0 for single-node communities".into(),
                ));
            }
            0.0
        } else {
            self.z_in / (self.size - 1) as f64
        };
        let p_out = if self.communities == 1 {
            if self.z_out != 0.0 {
                return Err(Error::InvalidConfig(
                    "z_out must be 0 for a single community".into(),
                ));
            }
            0.0
        } else {
            self.z_out / (self.size * (self.communities - 1)) as f64
        };
        for (name, p) in [("p_in", p_in), ("p_out", p_out)] {
            if !(0.0..=1.0).contains(&p) || !p.is_finite() {
                return Err(Error::InvalidConfig(format!(
                    "{name} = {p} is not a probability; adjust z_in/z_out"
                )));
            }
        }
        Ok((p_in, p_out))
    }
}

/// A reference partition with a provenance label.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub partition: Partition,
    pub label: String,
}

/// Samples a planted-partition graph with unit weights. Deterministic in
/// the seed; the ground truth is the planted block structure.
pub fn generate_planted(cfg: &PlantedConfig) -> Result<(WeightedGraph, GroundTruth)> {
    let (p_in, p_out) = cfg.probabilities()?;
    let n = cfg.node_count();
    let block = |v: usize| v / cfg.size;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let p = if block(u) == block(v) { p_in } else { p_out };
            if p > 0.0 && rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let graph = WeightedGraph::unit_from_edges(n, &edges)?;
    let truth = GroundTruth {
        partition: Partition::from_root_labels((0..n).map(|v| block(v) * cfg.size).collect()),
        label: format!(
            "planted(k={}, s={}, z_in={}, z_out={}, seed={})",
            cfg.communities, cfg.size, cfg.z_in, cfg.z_out, cfg.seed
        ),
    };
    Ok((graph, truth))
}

/// Mapping between original file node ids and the dense internal ids.
/// Dense ids are assigned in ascending original-id order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IdMap {
    dense_to_orig: Vec<u64>,
    orig_to_dense: BTreeMap<u64, usize>,
}

impl IdMap {
    pub fn identity(n: usize) -> Self {
        let mut map = Self::default();
        for v in 0..n {
            map.dense_to_orig.push(v as u64);
            map.orig_to_dense.insert(v as u64, v);
        }
        map
    }

    fn from_sorted_ids(ids: Vec<u64>) -> Self {
        let orig_to_dense = ids.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        Self {
            dense_to_orig: ids,
            orig_to_dense,
        }
    }

    pub fn len(&self) -> usize {
        self.dense_to_orig.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dense_to_orig.is_empty()
    }

    pub fn original(&self, dense: NodeId) -> u64 {
        self.dense_to_orig[dense]
    }

    pub fn dense(&self, original: u64) -> Option<NodeId> {
        self.orig_to_dense.get(&original).copied()
    }
}

/// A graph loaded from disk together with its id mapping.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedGraph {
    pub graph: WeightedGraph,
    pub ids: IdMap,
}

fn parse_err(path: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        line,
        message: message.into(),
    }
}

/// Parses edge-list text: one `u v [w]` per line, `#` starts a comment,
/// missing weights default to 1. Node ids are arbitrary nonnegative
/// integers remapped densely in ascending order.
///
/// Each undirected edge may be listed once, or twice in opposite directions
/// with the same weight (the convention of LFR `network.dat` files). Any
/// other repetition is collapsed by summing weights, with a warning.
pub fn parse_edge_list(text: &str, path: &str) -> Result<LoadedGraph> {
    struct Entry {
        forward: bool,
        weight: f64,
    }
    let mut pairs: BTreeMap<(u64, u64), Vec<Entry>> = BTreeMap::new();
    let mut ids: std::collections::BTreeSet<u64> = Default::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(parse_err(
                path,
                line_no,
                format!("expected `u v [w]`, found {} fields", fields.len()),
            ));
        }
        let u: u64 = fields[0]
            .parse()
            .map_err(|_| parse_err(path, line_no, format!("bad node id {:?}", fields[0])))?;
        let v: u64 = fields[1]
            .parse()
            .map_err(|_| parse_err(path, line_no, format!("bad node id {:?}", fields[1])))?;
        let w: f64 = match fields.get(2) {
            Some(s) => s
                .parse()
                .map_err(|_| parse_err(path, line_no, format!("bad weight {:?}", s)))?,
            None => 1.0,
        };
        if u == v {
            return Err(parse_err(path, line_no, format!("self-loop at node {u}")));
        }
        ids.insert(u);
        ids.insert(v);
        pairs.entry((u.min(v), u.max(v))).or_default().push(Entry {
            forward: u < v,
            weight: w,
        });
    }

    let map = IdMap::from_sorted_ids(ids.into_iter().collect());
    let mut edges = Vec::with_capacity(pairs.len());
    for (&(a, b), entries) in &pairs {
        let weight = match entries.as_slice() {
            [only] => only.weight,
            [x, y] if x.forward != y.forward && x.weight == y.weight => x.weight,
            many => {
                let sum: f64 = many.iter().map(|e| e.weight).sum();
                log::warn!(
                    "{path}: edge ({a}, {b}) listed {} times; weights summed to {sum}",
                    many.len()
                );
                sum
            }
        };
        edges.push((map.dense(a).unwrap(), map.dense(b).unwrap(), weight));
    }
    let graph = WeightedGraph::from_edges(map.len(), &edges)?;
    Ok(LoadedGraph { graph, ids: map })
}

/// Loads an edge-list file from disk. See [`parse_edge_list`].
pub fn load_graph(path: impl AsRef<Path>) -> Result<LoadedGraph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_edge_list(&text, &path.display().to_string())
}

/// Parses a community file (`node_id community_id` per line) against a
/// graph's id mapping. Every graph node must receive exactly one label.
pub fn parse_ground_truth(text: &str, path: &str, ids: &IdMap) -> Result<GroundTruth> {
    let mut labels: Vec<Option<u64>> = vec![None; ids.len()];
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(
                path,
                line_no,
                format!("expected `node community`, found {} fields", fields.len()),
            ));
        }
        let node: u64 = fields[0]
            .parse()
            .map_err(|_| parse_err(path, line_no, format!("bad node id {:?}", fields[0])))?;
        let community: u64 = fields[1]
            .parse()
            .map_err(|_| parse_err(path, line_no, format!("bad community id {:?}", fields[1])))?;
        let dense = ids.dense(node).ok_or_else(|| {
            parse_err(path, line_no, format!("node {node} is not in the graph"))
        })?;
        if labels[dense].is_some() {
            return Err(parse_err(path, line_no, format!("node {node} labeled twice")));
        }
        labels[dense] = Some(community);
    }
    if let Some(missing) = labels.iter().position(|l| l.is_none()) {
        return Err(Error::PartitionMismatch(format!(
            "node {} (original id {}) has no community label",
            missing,
            ids.original(missing)
        )));
    }
    // Canonicalize arbitrary community ids.
    let mut remap: BTreeMap<u64, usize> = BTreeMap::new();
    let mut dense_labels = vec![0usize; ids.len()];
    for (v, label) in labels.iter().enumerate() {
        let label = label.unwrap();
        let next = remap.len();
        let id = *remap.entry(label).or_insert(next);
        dense_labels[v] = id;
    }
    let k = remap.len();
    let communities = {
        let mut out = vec![Vec::new(); k];
        for (v, &c) in dense_labels.iter().enumerate() {
            out[c].push(v);
        }
        out
    };
    Ok(GroundTruth {
        partition: Partition::from_communities(ids.len(), &communities)?,
        label: path.to_string(),
    })
}

/// Loads a community file from disk. See [`parse_ground_truth`].
pub fn load_ground_truth(path: impl AsRef<Path>, ids: &IdMap) -> Result<GroundTruth> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_ground_truth(&text, &path.display().to_string(), ids)
}

/// Writes a graph as edge-list text, one `u v w` line per edge in canonical
/// order, using original ids.
pub fn write_edge_list(g: &WeightedGraph, ids: &IdMap, out: &mut impl Write) -> std::io::Result<()> {
    for &(u, v, w) in g.edges() {
        writeln!(out, "{} {} {}", ids.original(u), ids.original(v), w)?;
    }
    Ok(())
}

/// Writes a partition as community-file text (`node community` per line),
/// using original node ids in ascending dense order.
pub fn write_community_file(
    p: &Partition,
    ids: &IdMap,
    out: &mut impl Write,
) -> std::io::Result<()> {
    for v in 0..p.len() {
        writeln!(out, "{} {}", ids.original(v), p.community_of(v))?;
    }
    Ok(())
}

/// The 78 edges of the Zachary karate club network, 0-based.
const KARATE_EDGES: [(usize, usize); 78] = [
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8), (0, 10), (0, 11),
    (0, 12), (0, 13), (0, 17), (0, 19), (0, 21), (0, 31), (1, 2), (1, 3), (1, 7), (1, 13),
    (1, 17), (1, 19), (1, 21), (1, 30), (2, 3), (2, 7), (2, 8), (2, 9), (2, 13), (2, 27),
    (2, 28), (2, 32), (3, 7), (3, 12), (3, 13), (4, 6), (4, 10), (5, 6), (5, 10), (5, 16),
    (6, 16), (8, 30), (8, 32), (8, 33), (9, 33), (13, 33), (14, 32), (14, 33), (15, 32),
    (15, 33), (18, 32), (18, 33), (19, 33), (20, 32), (20, 33), (22, 32), (22, 33), (23, 25),
    (23, 27), (23, 29), (23, 32), (23, 33), (24, 25), (24, 27), (24, 31), (25, 31), (26, 29),
    (26, 33), (27, 33), (28, 31), (28, 33), (29, 32), (29, 33), (30, 32), (30, 33), (31, 32),
    (31, 33), (32, 33),
];

/// Members of the 16-node faction in the standard two-faction split.
const KARATE_FACTION_A: [usize; 16] = [0, 1, 2, 3, 4, 5, 6, 7, 10, 11, 12, 13, 16, 17, 19, 21];

/// The Zachary karate club network (34 nodes, 78 unit edges) with its
/// two-faction ground truth of 16 and 18 members, from the public dataset.
pub fn karate_fixture() -> (WeightedGraph, GroundTruth) {
    let graph = WeightedGraph::unit_from_edges(34, &KARATE_EDGES).expect("fixture is valid");
    let mut labels = vec![1usize; 34];
    for &v in &KARATE_FACTION_A {
        labels[v] = 0;
    }
    let communities = {
        let mut out = vec![Vec::new(); 2];
        for (v, &c) in labels.iter().enumerate() {
            out[c].push(v);
        }
        out
    };
    let partition = Partition::from_communities(34, &communities).expect("fixture is valid");
    (
        graph,
        GroundTruth {
            partition,
            label: "zachary-karate-club".into(),
        },
    )
}

/// The karate fixture with its conventional 1-based node ids, for code that
/// round-trips through files.
pub fn karate_fixture_loaded() -> (LoadedGraph, GroundTruth) {
    let (graph, truth) = karate_fixture();
    let ids = IdMap::from_sorted_ids((1..=34).collect());
    (LoadedGraph { graph, ids }, truth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_extremes() {
        let cliques = PlantedConfig {
            communities: 3,
            size: 4,
            z_in: 3.0,
            z_out: 0.0,
            seed: 7,
        };
        let (g, truth) = generate_planted(&cliques).unwrap();
        assert_eq!(g.node_count(), 12);
        assert_eq!(g.edge_count(), 3 * 6);
        assert_eq!(truth.partition.k(), 3);
        assert_eq!(g.crossing_weight(&truth.partition).unwrap(), 0.0);

        let empty = PlantedConfig {
            communities: 2,
            size: 3,
            z_in: 0.0,
            z_out: 0.0,
            seed: 7,
        };
        let (g, _) = generate_planted(&empty).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn planted_is_deterministic_in_seed() {
        let cfg = PlantedConfig {
            communities: 2,
            size: 20,
            z_in: 8.0,
            z_out: 1.0,
            seed: 42,
        };
        let (a, _) = generate_planted(&cfg).unwrap();
        let (b, _) = generate_planted(&cfg).unwrap();
        assert_eq!(a, b);
        let (c, _) = generate_planted(&PlantedConfig { seed: 43, ..cfg }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn planted_intra_degree_statistics() {
        // Mean intra-community degree over several seeds stays within 3
        // sigma of z_in.
        let cfg = PlantedConfig {
            communities: 4,
            size: 42,
            z_in: 14.0,
            z_out: 2.0,
            seed: 0,
        };
        let mut total_intra = 0.0;
        let mut nodes = 0usize;
        for seed in 0..10 {
            let (g, truth) = generate_planted(&PlantedConfig { seed, ..cfg }).unwrap();
            for &(u, v, _) in g.edges() {
                if truth.partition.community_of(u) == truth.partition.community_of(v) {
                    total_intra += 2.0;
                }
            }
            nodes += g.node_count();
        }
        let mean = total_intra / nodes as f64;
        // Var of a node's intra degree is ~ z_in; the mean over `nodes`
        // samples concentrates much harder.
        let sigma = (cfg.z_in / nodes as f64).sqrt();
        assert!(
            (mean - cfg.z_in).abs() < 3.0 * sigma.max(0.05),
            "mean intra degree {mean} too far from {}",
            cfg.z_in
        );
    }

    #[test]
    fn planted_rejects_bad_probabilities() {
        let cfg = PlantedConfig {
            communities: 2,
            size: 4,
            z_in: 5.0, // p_in = 5/3 > 1
            z_out: 0.0,
            seed: 0,
        };
        assert!(generate_planted(&cfg).is_err());
    }

    #[test]
    fn parse_triangle_with_comments() {
        let text = "# a triangle\n1 2\n2 3 # trailing comment\n1 3\n\n";
        let loaded = parse_edge_list(text, "test").unwrap();
        assert_eq!(loaded.graph.node_count(), 3);
        assert_eq!(loaded.graph.edge_count(), 3);
        assert_eq!(loaded.ids.original(0), 1);
    }

    #[test]
    fn parse_lfr_style_double_listing() {
        let text = "1 2 1\n2 1 1\n2 3 1\n3 2 1\n";
        let loaded = parse_edge_list(text, "test").unwrap();
        assert_eq!(loaded.graph.edge_count(), 2);
        assert_eq!(loaded.graph.total_weight(), 2.0);
    }

    #[test]
    fn parse_sums_true_duplicates() {
        let text = "0 1 1.5\n0 1 2.5\n";
        let loaded = parse_edge_list(text, "test").unwrap();
        assert_eq!(loaded.graph.edge_count(), 1);
        assert_eq!(loaded.graph.total_weight(), 4.0);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = parse_edge_list("0 1\nbogus line here extra\n", "f").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn ground_truth_roundtrip() {
        let graph_text = "10 20\n20 30\n";
        let loaded = parse_edge_list(graph_text, "g").unwrap();
        let truth = parse_ground_truth("10 7\n20 7\n30 9\n", "t", &loaded.ids).unwrap();
        assert_eq!(truth.partition.k(), 2);
        assert_eq!(truth.partition.community_of(0), 0);
        assert_eq!(truth.partition.community_of(2), 1);
    }

    #[test]
    fn ground_truth_missing_label_errors() {
        let loaded = parse_edge_list("0 1\n1 2\n", "g").unwrap();
        assert!(parse_ground_truth("0 1\n1 1\n", "t", &loaded.ids).is_err());
    }

    #[test]
    fn edge_list_roundtrip_is_identity() {
        let cfg = PlantedConfig {
            communities: 2,
            size: 10,
            z_in: 4.0,
            z_out: 1.0,
            seed: 5,
        };
        let (g, _) = generate_planted(&cfg).unwrap();
        let ids = IdMap::identity(g.node_count());
        let mut buf = Vec::new();
        write_edge_list(&g, &ids, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let loaded = parse_edge_list(&text, "roundtrip").unwrap();
        assert_eq!(loaded.graph, g);
    }

    #[test]
    fn karate_shape_and_truth() {
        let (g, truth) = karate_fixture();
        assert_eq!(g.node_count(), 34);
        assert_eq!(g.edge_count(), 78);
        assert_eq!(truth.partition.k(), 2);
        let mut sizes = truth.partition.community_sizes();
        sizes.sort();
        assert_eq!(sizes, vec![16, 18]);
        assert!(g.is_connected());
        // The factional split cuts 10 edges.
        assert_eq!(g.crossing_weight(&truth.partition).unwrap(), 10.0);
    }
}
