//! JSON instance files.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "name": "reflection-c4",
//!   "group": { "permutations": { "degree": 4, "generators": [{ "label": "g", "images": [0, 3, 2, 1] }] } },
//!   "graph": { "vertices": ["0", "1", "2", "3"], "edges": [["0", "1"], ["1", "2"], ["2", "3"], ["3", "0"]] },
//!   "action": [{ "generator": "g", "images": ["0", "3", "2", "1"] }],
//!   "grid": 2,
//!   "basepoints": [{ "name": "x", "vertex": "0" }],
//!   "paths": [{ "name": "arc", "vertices": ["0", "1", "2"] }],
//!   "gpaths": [{ "name": "jump", "cuts": [0, 1, 1],
//!                "pieces": [{ "start": 0, "vertices": ["0", "1"] }, { "start": 1, "vertices": ["3"] }],
//!                "connectors": ["g"] }],
//!   "maps": [{ "name": "flip", "hom": { "e": "e", "g": "g" }, "carrier": { "0": "0", "1": "3", "2": "2", "3": "1" } }]
//! }
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use grpd_core::gpath::GPath;
use grpd_core::graph::{check_atom_label, Vertex};
use grpd_core::morphism::EquivariantMap;
use grpd_core::space::{DiscretePath, GridSubdivision};
use grpd_core::{FiniteGroup, GroupAction, SpaceGraph};
use serde::Deserialize;

pub const SCHEMA_VERSION: u32 = 1;
/// Largest grid any command will enumerate.
pub const MAX_GRID: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

type Res<T> = std::result::Result<T, InputError>;

fn at(field: &str, e: impl std::fmt::Display) -> InputError {
    InputError(format!("{field}: {e}"))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub schema_version: u32,
    pub name: String,
    pub group: GroupSpec,
    pub graph: GraphSpec,
    #[serde(default)]
    pub action: Vec<GeneratorImage>,
    pub grid: Option<usize>,
    #[serde(default)]
    pub basepoints: Vec<NamedVertex>,
    #[serde(default)]
    pub paths: Vec<NamedPath>,
    #[serde(default)]
    pub gpaths: Vec<GPathSpec>,
    #[serde(default)]
    pub maps: Vec<MapSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
pub enum GroupSpec {
    Cayley { labels: Vec<String>, table: Vec<Vec<String>> },
    Permutations { degree: usize, generators: Vec<Permutation> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Permutation {
    pub label: String,
    pub images: Vec<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

/// `images[i]` is the image of the `i`-th listed vertex.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorImage {
    pub generator: String,
    pub images: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedVertex {
    pub name: String,
    pub vertex: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedPath {
    pub name: String,
    pub vertices: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub start: usize,
    pub vertices: Vec<String>,
}

/// The grid of a G-path is its last cut.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GPathSpec {
    pub name: String,
    pub cuts: Vec<usize>,
    pub pieces: Vec<PieceSpec>,
    #[serde(default)]
    pub connectors: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetSpec {
    pub group: GroupSpec,
    pub graph: GraphSpec,
    #[serde(default)]
    pub action: Vec<GeneratorImage>,
    /// G-paths in the target, for `lift`.
    #[serde(default)]
    pub gpaths: Vec<GPathSpec>,
}

/// An equivariant map out of the instance. Without `target` it is an
/// endomorphism.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub name: String,
    pub target: Option<TargetSpec>,
    pub hom: BTreeMap<String, String>,
    pub carrier: BTreeMap<String, String>,
}

#[derive(Debug, Clone)]
pub struct LoadedMap {
    pub name: String,
    pub map: EquivariantMap,
    pub target_gpaths: Vec<(String, GPath)>,
}

/// A resolved instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub action: Arc<GroupAction>,
    pub grid: usize,
    pub basepoints: Vec<(String, Vertex)>,
    pub paths: Vec<(String, DiscretePath)>,
    pub gpaths: Vec<(String, GPath)>,
    pub maps: Vec<LoadedMap>,
}

impl Instance {
    pub fn gpath(&self, name: &str) -> Res<&GPath> {
        self.gpaths
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| InputError(format!("no G-path named `{name}`")))
    }

    /// A named map, or `id` for the identity when no map has that name.
    pub fn map(&self, name: &str) -> Res<LoadedMap> {
        if let Some(m) = self.maps.iter().find(|m| m.name == name) {
            return Ok(m.clone());
        }
        if name == "id" {
            let map = EquivariantMap::identity(self.action.clone());
            return Ok(LoadedMap { name: "id".into(), map, target_gpaths: self.gpaths.clone() });
        }
        Err(InputError(format!("no map named `{name}`")))
    }

    pub fn basepoint(&self, name: &str) -> Res<Vertex> {
        self.basepoints
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
            .ok_or_else(|| InputError(format!("no basepoint named `{name}`")))
    }
}

pub fn check_grid(t: usize) -> Res<usize> {
    if t > MAX_GRID {
        return Err(InputError(format!("grid {t} exceeds the enumeration bound {MAX_GRID}")));
    }
    Ok(t)
}

pub fn load(path: &Path) -> Res<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn parse(text: &str) -> Res<Instance> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let spec: InstanceSpec = serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        InputError(format!("line {} column {}: at `{}`: {inner}", inner.line(), inner.column(), e.path()))
    })?;
    resolve(&spec)
}

fn build_group(g: &GroupSpec, field: &str) -> Res<FiniteGroup> {
    match g {
        GroupSpec::Cayley { labels, table } => {
            FiniteGroup::from_label_table(labels.clone(), table.clone()).map_err(|e| at(&format!("{field}.cayley"), e))
        }
        GroupSpec::Permutations { degree, generators } => {
            let gens: Vec<(String, Vec<usize>)> =
                generators.iter().map(|p| (p.label.clone(), p.images.clone())).collect();
            FiniteGroup::from_permutations(*degree, &gens).map_err(|e| at(&format!("{field}.permutations"), e))
        }
    }
}

fn build_graph(g: &GraphSpec, field: &str) -> Res<SpaceGraph> {
    for (i, v) in g.vertices.iter().enumerate() {
        check_atom_label(v).map_err(|e| at(&format!("{field}.vertices[{i}]"), e))?;
    }
    SpaceGraph::new(g.vertices.clone(), &g.edges).map_err(|e| at(&format!("{field}.edges"), e))
}

fn build_action(group: FiniteGroup, graph: SpaceGraph, images: &[GeneratorImage], field: &str) -> Res<GroupAction> {
    let mut resolved = Vec::with_capacity(images.len());
    for (i, gi) in images.iter().enumerate() {
        let f = format!("{field}[{i}]");
        let s = group.index_of(&gi.generator).map_err(|e| at(&format!("{f}.generator"), e))?;
        let perm = gi
            .images
            .iter()
            .enumerate()
            .map(|(j, l)| graph.index_of(l).map_err(|e| at(&format!("{f}.images[{j}]"), e)))
            .collect::<Res<Vec<_>>>()?;
        resolved.push((s, perm));
    }
    if graph.len() == 1 && resolved.is_empty() {
        return Ok(GroupAction::trivial(group, graph));
    }
    GroupAction::from_generators(group, graph, &resolved).map_err(|e| at(field, e))
}

fn vertices(graph: &SpaceGraph, labels: &[String], field: &str) -> Res<Vec<Vertex>> {
    labels.iter().enumerate().map(|(j, l)| graph.index_of(l).map_err(|e| at(&format!("{field}[{j}]"), e))).collect()
}

fn build_gpath(action: &GroupAction, g: &GPathSpec, field: &str) -> Res<GPath> {
    let t = *g.cuts.last().ok_or_else(|| at(&format!("{field}.cuts"), "empty"))?;
    check_grid(t).map_err(|e| at(&format!("{field}.cuts"), e))?;
    let sub = GridSubdivision::new(t, g.cuts.clone()).map_err(|e| at(&format!("{field}.cuts"), e))?;
    let mut pieces = Vec::with_capacity(g.pieces.len());
    for (i, p) in g.pieces.iter().enumerate() {
        let f = format!("{field}.pieces[{i}]");
        let v = vertices(action.graph(), &p.vertices, &format!("{f}.vertices"))?;
        pieces.push(DiscretePath::new(action.graph(), p.start, v).map_err(|e| at(&f, e))?);
    }
    let connectors = g
        .connectors
        .iter()
        .enumerate()
        .map(|(i, l)| action.group().index_of(l).map_err(|e| at(&format!("{field}.connectors[{i}]"), e)))
        .collect::<Res<Vec<_>>>()?;
    GPath::new(action, sub, pieces, connectors).map_err(|e| at(field, e))
}

fn build_map(source: &Arc<GroupAction>, m: &MapSpec, field: &str) -> Res<LoadedMap> {
    let (target, target_gpaths) = match &m.target {
        None => (source.clone(), Vec::new()),
        Some(t) => {
            let group = build_group(&t.group, &format!("{field}.target.group"))?;
            let graph = build_graph(&t.graph, &format!("{field}.target.graph"))?;
            let action = Arc::new(build_action(group, graph, &t.action, &format!("{field}.target.action"))?);
            let gp = t
                .gpaths
                .iter()
                .enumerate()
                .map(|(i, g)| Ok((g.name.clone(), build_gpath(&action, g, &format!("{field}.target.gpaths[{i}]"))?)))
                .collect::<Res<Vec<_>>>()?;
            (action, gp)
        }
    };
    let hom = total(source.group().labels(), &m.hom, |l| target.group().index_of(l), &format!("{field}.hom"))?;
    let carrier =
        total(source.graph().labels(), &m.carrier, |l| target.graph().index_of(l), &format!("{field}.carrier"))?;
    let map = EquivariantMap::new(source.clone(), target, hom, carrier).map_err(|e| at(field, e))?;
    Ok(LoadedMap { name: m.name.clone(), map, target_gpaths })
}

/// Resolves a label-to-label table that must cover `domain` exactly.
fn total(
    domain: &[String],
    table: &BTreeMap<String, String>,
    resolve: impl Fn(&str) -> grpd_core::Result<usize>,
    field: &str,
) -> Res<Vec<usize>> {
    if let Some(k) = table.keys().find(|k| !domain.contains(k)) {
        return Err(at(&format!("{field}.{k}"), "unknown label"));
    }
    domain
        .iter()
        .map(|d| {
            let img = table.get(d).ok_or_else(|| at(field, format!("no image for `{d}`")))?;
            resolve(img).map_err(|e| at(&format!("{field}.{d}"), e))
        })
        .collect()
}

fn unique<'a>(names: impl Iterator<Item = &'a str>, field: &str) -> Res<()> {
    let mut seen = std::collections::BTreeSet::new();
    for n in names {
        check_atom_label(n).map_err(|e| at(field, e))?;
        if !seen.insert(n) {
            return Err(at(field, format!("duplicate name `{n}`")));
        }
    }
    Ok(())
}

pub fn resolve(spec: &InstanceSpec) -> Res<Instance> {
    if spec.schema_version != SCHEMA_VERSION {
        return Err(at("schema_version", format!("expected {SCHEMA_VERSION}, found {}", spec.schema_version)));
    }
    let group = build_group(&spec.group, "group")?;
    let graph = build_graph(&spec.graph, "graph")?;
    let action = Arc::new(build_action(group, graph, &spec.action, "action")?);
    let grid = check_grid(spec.grid.unwrap_or(2)).map_err(|e| at("grid", e))?;
    unique(spec.basepoints.iter().map(|b| b.name.as_str()), "basepoints")?;
    unique(spec.paths.iter().map(|b| b.name.as_str()), "paths")?;
    unique(spec.gpaths.iter().map(|b| b.name.as_str()), "gpaths")?;
    unique(spec.maps.iter().map(|b| b.name.as_str()), "maps")?;
    let basepoints = spec
        .basepoints
        .iter()
        .enumerate()
        .map(|(i, b)| {
            Ok((
                b.name.clone(),
                action.graph().index_of(&b.vertex).map_err(|e| at(&format!("basepoints[{i}].vertex"), e))?,
            ))
        })
        .collect::<Res<Vec<_>>>()?;
    let paths = spec
        .paths
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let f = format!("paths[{i}]");
            let v = vertices(action.graph(), &p.vertices, &format!("{f}.vertices"))?;
            Ok((p.name.clone(), DiscretePath::new(action.graph(), 0, v).map_err(|e| at(&f, e))?))
        })
        .collect::<Res<Vec<_>>>()?;
    let gpaths = spec
        .gpaths
        .iter()
        .enumerate()
        .map(|(i, g)| Ok((g.name.clone(), build_gpath(&action, g, &format!("gpaths[{i}]"))?)))
        .collect::<Res<Vec<_>>>()?;
    let maps = spec
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| build_map(&action, m, &format!("maps[{i}]")))
        .collect::<Res<Vec<_>>>()?;
    Ok(Instance { name: spec.name.clone(), action, grid, basepoints, paths, gpaths, maps })
}
