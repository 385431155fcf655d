//! Loading real-world-shaped datasets: edge lists, check-in files, and
//! item-category pair lists, plus the on-disk layout for generated networks.
//!
//! External ids are arbitrary strings; every loader remaps them to dense
//! integers in first-seen order and emits the mapping. Directed inputs are
//! symmetrized (each arc becomes an undirected edge, duplicates collapse).

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph, TwoLayerNetwork};
use crate::vertex_sampler::{GeoVenue, Region};

/// Dense-id mapping in first-seen order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdMap {
    to_external: Vec<String>,
    to_dense: HashMap<String, usize>,
}

impl IdMap {
    pub fn intern(&mut self, external: &str) -> usize {
        if let Some(&id) = self.to_dense.get(external) {
            return id;
        }
        let id = self.to_external.len();
        self.to_external.push(external.to_string());
        self.to_dense.insert(external.to_string(), id);
        id
    }

    pub fn dense(&self, external: &str) -> Option<usize> {
        self.to_dense.get(external).copied()
    }

    pub fn external(&self, dense: usize) -> Option<&str> {
        self.to_external.get(dense).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.to_external.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_external.is_empty()
    }

    /// `external_id,dense_id` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("external_id,dense_id\n");
        for (dense, ext) in self.to_external.iter().enumerate() {
            out.push_str(&format!("{ext},{dense}\n"));
        }
        out
    }
}

/// Result of loading a raw edge list.
#[derive(Debug, Clone)]
pub struct EdgeListLoad {
    pub graph: Graph,
    pub ids: IdMap,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse { path: path.display().to_string(), line, message: message.into() }
}

/// Load a whitespace-separated `src dst` edge list. Lines starting with `#`
/// are comments. `directed` inputs are symmetrized on the fly; either way
/// self-loops and duplicate edges are dropped and counted.
pub fn load_edge_list(path: &Path, directed: bool) -> Result<EdgeListLoad> {
    let text = fs::read_to_string(path)?;
    let mut ids = IdMap::default();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut self_loops = 0usize;
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let src = fields.next().ok_or_else(|| parse_error(path, idx + 1, "missing source id"))?;
        let dst = fields
            .next()
            .ok_or_else(|| parse_error(path, idx + 1, "missing destination id"))?;
        let a = ids.intern(src);
        let b = ids.intern(dst);
        if a == b {
            self_loops += 1;
            continue;
        }
        pairs.push((a.min(b), a.max(b)));
    }
    let _ = directed; // symmetrization is how undirected graphs are built
    let raw = pairs.len();
    pairs.sort_unstable();
    pairs.dedup();
    let duplicates = raw - pairs.len();
    let graph = Graph::from_edges(ids.len(), pairs)?;
    Ok(EdgeListLoad { graph, ids, self_loops_dropped: self_loops, duplicates_dropped: duplicates })
}

/// One check-in: a user at a venue, with coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckinRecord {
    pub user: String,
    pub lat: f64,
    pub lon: f64,
    pub venue: String,
}

/// Load check-ins in the SNAP layout `user time lat lon venue_id`; the
/// timestamp column is parsed and discarded.
pub fn load_checkins(path: &Path) -> Result<Vec<CheckinRecord>> {
    let text = fs::read_to_string(path)?;
    let mut records = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(parse_error(
                path,
                idx + 1,
                format!("expected 5 fields (user time lat lon venue), got {}", fields.len()),
            ));
        }
        let lat: f64 = fields[2]
            .parse()
            .map_err(|e| parse_error(path, idx + 1, format!("latitude: {e}")))?;
        let lon: f64 = fields[3]
            .parse()
            .map_err(|e| parse_error(path, idx + 1, format!("longitude: {e}")))?;
        if !(-90.0..=90.0).contains(&lat) || !(-180.0..=180.0).contains(&lon) {
            return Err(parse_error(path, idx + 1, format!("coordinates out of range: {lat}, {lon}")));
        }
        records.push(CheckinRecord {
            user: fields[0].to_string(),
            lat,
            lon,
            venue: fields[4].to_string(),
        });
    }
    Ok(records)
}

/// A region-restricted two-layer network built from check-ins.
#[derive(Debug, Clone)]
pub struct CheckinNetwork {
    pub net: TwoLayerNetwork,
    pub venues: Vec<GeoVenue>,
    /// Dense ids of the region's users (a subset of the social graph).
    pub user_ids: IdMap,
    pub venue_ids: IdMap,
    pub raw_checkin_pairs: usize,
    pub dedup_checkin_pairs: usize,
}

/// Restrict a social graph to the users with at least one check-in inside
/// `region`. Venues inside the region become the auxiliary nodes (with an
/// empty auxiliary edge set), distinct in-region `(user, venue)` pairs
/// become the bridge, and the target graph is the induced subgraph on the
/// region's users.
pub fn build_two_layer_from_checkins(
    social: &Graph,
    social_ids: &IdMap,
    checkins: &[CheckinRecord],
    region: Region,
) -> Result<CheckinNetwork> {
    let mut user_ids = IdMap::default();
    let mut venue_ids = IdMap::default();
    let mut venues: Vec<GeoVenue> = Vec::new();
    let mut social_dense_of_user: Vec<usize> = Vec::new();
    let mut bridge_pairs: Vec<(usize, usize)> = Vec::new();

    for record in checkins {
        if !region.contains(record.lat, record.lon) {
            continue;
        }
        let social_u = social_ids
            .dense(&record.user)
            .ok_or_else(|| Error::UnknownExternalId(record.user.clone()))?;
        let u = user_ids.intern(&record.user);
        if u == social_dense_of_user.len() {
            social_dense_of_user.push(social_u);
        }
        let v = venue_ids.intern(&record.venue);
        if v == venues.len() {
            venues.push(GeoVenue::new(v, record.lat, record.lon)?);
        }
        bridge_pairs.push((u, v));
    }
    if venues.is_empty() {
        return Err(Error::NoVenuesInRegion);
    }

    let raw = bridge_pairs.len();
    bridge_pairs.sort_unstable();
    bridge_pairs.dedup();
    let dedup = bridge_pairs.len();

    // Induced subgraph on the in-region users.
    let mut induced: Vec<(usize, usize)> = Vec::new();
    let mut region_user_of_social: HashMap<usize, usize> = HashMap::new();
    for (u, &social_u) in social_dense_of_user.iter().enumerate() {
        region_user_of_social.insert(social_u, u);
    }
    for (u, &social_u) in social_dense_of_user.iter().enumerate() {
        for &nbr in social.neighbors(social_u) {
            if let Some(&other) = region_user_of_social.get(&nbr) {
                if u < other {
                    induced.push((u, other));
                }
            }
        }
    }

    let target = Graph::from_edges(user_ids.len(), induced)?;
    let auxiliary = Graph::from_edges(venues.len(), [])?;
    let bridge = BipartiteGraph::from_pairs(user_ids.len(), venues.len(), bridge_pairs)?;
    let net = TwoLayerNetwork::new(target, auxiliary, bridge)?;
    Ok(CheckinNetwork {
        net,
        venues,
        user_ids,
        venue_ids,
        raw_checkin_pairs: raw,
        dedup_checkin_pairs: dedup,
    })
}

/// Load a `u v` pair list (e.g. item-category associations) with string ids
/// on both sides; duplicates collapse.
pub fn load_bipartite_pairs(path: &Path) -> Result<(BipartiteGraph, IdMap, IdMap)> {
    let text = fs::read_to_string(path)?;
    let mut u_ids = IdMap::default();
    let mut v_ids = IdMap::default();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let u = fields.next().ok_or_else(|| parse_error(path, idx + 1, "missing u id"))?;
        let v = fields.next().ok_or_else(|| parse_error(path, idx + 1, "missing v id"))?;
        pairs.push((u_ids.intern(u), v_ids.intern(v)));
    }
    let bipartite = BipartiteGraph::from_pairs(u_ids.len(), v_ids.len(), pairs)?;
    Ok((bipartite, u_ids, v_ids))
}

/// Render a graph as a dense-id edge list, one `u v` line per edge.
pub fn edge_list_string(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Metadata for a network directory; node counts cannot be recovered from
/// edge files alone when isolated nodes exist.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetworkManifest {
    pub target_nodes: usize,
    pub auxiliary_nodes: usize,
    pub target_edges: usize,
    pub auxiliary_edges: usize,
    pub bridge_edges: usize,
}

const NETWORK_FILE: &str = "network.json";
const TARGET_FILE: &str = "target.edges";
const AUXILIARY_FILE: &str = "auxiliary.edges";
const BRIDGE_FILE: &str = "bridge.pairs";
const VENUES_FILE: &str = "venues.txt";

/// Write a network directory: `network.json`, `target.edges`,
/// `auxiliary.edges`, `bridge.pairs`.
pub fn save_network(net: &TwoLayerNetwork, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let manifest = NetworkManifest {
        target_nodes: net.target.node_count(),
        auxiliary_nodes: net.auxiliary.node_count(),
        target_edges: net.target.edge_count(),
        auxiliary_edges: net.auxiliary.edge_count(),
        bridge_edges: net.bridge.edge_count(),
    };
    let mut json = serde_json::to_string_pretty(&manifest)?;
    json.push('\n');
    fs::write(dir.join(NETWORK_FILE), json)?;
    fs::write(dir.join(TARGET_FILE), edge_list_string(&net.target))?;
    fs::write(dir.join(AUXILIARY_FILE), edge_list_string(&net.auxiliary))?;
    let mut bridge = String::new();
    for (u, v) in net.bridge.pairs() {
        bridge.push_str(&format!("{u} {v}\n"));
    }
    fs::write(dir.join(BRIDGE_FILE), bridge)?;
    Ok(())
}

/// Load a network directory written by [`save_network`]. Ids are dense
/// integers already; no remapping happens.
pub fn load_network(dir: &Path) -> Result<TwoLayerNetwork> {
    let manifest: NetworkManifest =
        serde_json::from_str(&fs::read_to_string(dir.join(NETWORK_FILE))?)?;
    let target = load_dense_graph(&dir.join(TARGET_FILE), manifest.target_nodes)?;
    let auxiliary = load_dense_graph(&dir.join(AUXILIARY_FILE), manifest.auxiliary_nodes)?;
    let bridge_path = dir.join(BRIDGE_FILE);
    let text = fs::read_to_string(&bridge_path)?;
    let mut pairs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (u, v) = parse_dense_pair(&bridge_path, idx + 1, line)?;
        pairs.push((u, v));
    }
    let bridge = BipartiteGraph::from_pairs(manifest.target_nodes, manifest.auxiliary_nodes, pairs)?;
    TwoLayerNetwork::new(target, auxiliary, bridge)
}

fn load_dense_graph(path: &Path, node_count: usize) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    let mut pairs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        pairs.push(parse_dense_pair(path, idx + 1, line)?);
    }
    Graph::from_edges(node_count, pairs)
}

fn parse_dense_pair(path: &Path, line_no: usize, line: &str) -> Result<(usize, usize)> {
    let mut fields = line.split_whitespace();
    let a = fields
        .next()
        .ok_or_else(|| parse_error(path, line_no, "missing first id"))?
        .parse::<usize>()
        .map_err(|e| parse_error(path, line_no, format!("first id: {e}")))?;
    let b = fields
        .next()
        .ok_or_else(|| parse_error(path, line_no, "missing second id"))?
        .parse::<usize>()
        .map_err(|e| parse_error(path, line_no, format!("second id: {e}")))?;
    Ok((a, b))
}

/// Write venues as `venue_id lat lon` lines.
pub fn save_venues(venues: &[GeoVenue], dir: &Path) -> Result<()> {
    let mut out = String::new();
    for v in venues {
        out.push_str(&format!("{} {} {}\n", v.id, v.lat, v.lon));
    }
    fs::write(dir.join(VENUES_FILE), out)?;
    Ok(())
}

/// Load a `venue_id lat lon` file.
pub fn load_venues(path: &Path) -> Result<Vec<GeoVenue>> {
    let text = fs::read_to_string(path)?;
    let mut venues = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_error(path, idx + 1, "expected `venue_id lat lon`"));
        }
        let id = fields[0]
            .parse::<usize>()
            .map_err(|e| parse_error(path, idx + 1, format!("venue id: {e}")))?;
        let lat = fields[1]
            .parse::<f64>()
            .map_err(|e| parse_error(path, idx + 1, format!("latitude: {e}")))?;
        let lon = fields[2]
            .parse::<f64>()
            .map_err(|e| parse_error(path, idx + 1, format!("longitude: {e}")))?;
        venues.push(GeoVenue::new(id, lat, lon)?);
    }
    Ok(venues)
}

/// Path of the venues file inside a network directory, if present.
pub fn venues_path(dir: &Path) -> std::path::PathBuf {
    dir.join(VENUES_FILE)
}
