//! Input resolution: graphs and reference partitions come from edge-list /
//! community files or from the built-in `fixture:karate` dataset.

use terminalcut_core::bench_data::{
    karate_fixture_loaded, load_graph, load_ground_truth, GroundTruth, IdMap, LoadedGraph,
};
use terminalcut_core::{Error, Result};

pub const KARATE: &str = "fixture:karate";

pub struct GraphInput {
    pub loaded: LoadedGraph,
    /// sha256 of the input bytes (file contents, or the fixture's canonical
    /// edge list).
    pub hash: String,
    pub source: String,
}

pub fn resolve_graph(spec: &str) -> Result<GraphInput> {
    if spec == KARATE {
        let (loaded, _) = karate_fixture_loaded();
        let mut bytes = Vec::new();
        terminalcut_core::bench_data::write_edge_list(&loaded.graph, &loaded.ids, &mut bytes)
            .expect("in-memory write");
        return Ok(GraphInput {
            loaded,
            hash: crate::manifest::sha256_hex(&bytes),
            source: spec.to_string(),
        });
    }
    if let Some(rest) = spec.strip_prefix("fixture:") {
        return Err(Error::InvalidConfig(format!("unknown fixture {rest:?}")));
    }
    let bytes = std::fs::read(spec).map_err(|source| Error::Io {
        path: spec.to_string(),
        source,
    })?;
    let loaded = load_graph(spec)?;
    Ok(GraphInput {
        loaded,
        hash: crate::manifest::sha256_hex(&bytes),
        source: spec.to_string(),
    })
}

pub struct TruthInput {
    pub truth: GroundTruth,
    pub hash: String,
}

pub fn resolve_truth(spec: &str, ids: &IdMap) -> Result<TruthInput> {
    if spec == KARATE {
        let (loaded, truth) = karate_fixture_loaded();
        if ids.len() != loaded.graph.node_count() {
            return Err(Error::PartitionMismatch(
                "karate ground truth only matches the karate graph".into(),
            ));
        }
        let mut bytes = Vec::new();
        terminalcut_core::bench_data::write_community_file(
            &truth.partition,
            &loaded.ids,
            &mut bytes,
        )
        .expect("in-memory write");
        return Ok(TruthInput {
            truth,
            hash: crate::manifest::sha256_hex(&bytes),
        });
    }
    if let Some(rest) = spec.strip_prefix("fixture:") {
        return Err(Error::InvalidConfig(format!("unknown fixture {rest:?}")));
    }
    let bytes = std::fs::read(spec).map_err(|source| Error::Io {
        path: spec.to_string(),
        source,
    })?;
    let truth = load_ground_truth(spec, ids)?;
    Ok(TruthInput {
        truth,
        hash: crate::manifest::sha256_hex(&bytes),
    })
}
