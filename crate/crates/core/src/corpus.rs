//! The worked examples: point groupoids, the reflected and rotated circles,
//! the plus graph, and the quotient of the rotated hexagon.

use std::sync::Arc;

use crate::action::GroupAction;
use crate::error::Result;
use crate::gpath::GPath;
use crate::graph::{SpaceGraph, Vertex};
use crate::group::FiniteGroup;
use crate::loopbase::quotient_by_free_action;
use crate::morphism::EquivariantMap;
use crate::space::{DiscretePath, GridSubdivision};

#[derive(Clone, Debug)]
pub struct NamedMap {
    pub name: String,
    pub map: EquivariantMap,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: &'static str,
    pub action: Arc<GroupAction>,
    pub grid: usize,
    pub basepoints: Vec<(String, Vertex)>,
    pub gpaths: Vec<(String, GPath)>,
    pub maps: Vec<NamedMap>,
}

impl Instance {
    fn bare(name: &'static str, action: GroupAction) -> Self {
        let basepoints = vec![("x".to_string(), 0)];
        Self { name, action: Arc::new(action), grid: 2, basepoints, gpaths: Vec::new(), maps: Vec::new() }
    }

    pub fn gpath(&self, name: &str) -> Option<&GPath> {
        self.gpaths.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn map(&self, name: &str) -> Option<&EquivariantMap> {
        self.maps.iter().find(|m| m.name == name).map(|m| &m.map)
    }
}

pub fn point_z3() -> Instance {
    Instance::bare("point-z3", GroupAction::point(FiniteGroup::cyclic(3)))
}

pub fn point_s3() -> Instance {
    Instance::bare("point-s3", GroupAction::point(FiniteGroup::symmetric(3)))
}

pub fn reflection_action() -> GroupAction {
    GroupAction::from_generators(FiniteGroup::cyclic(2), SpaceGraph::cycle(4), &[(1, vec![0, 3, 2, 1])])
        .expect("reflection of the square")
}

/// `Z₂` reflecting the 4-cycle across the axis through 0 and 2, with the
/// two shipped pairs of G-paths.
pub fn reflection_c4() -> Result<Instance> {
    let a = reflection_action();
    let g = a.graph();
    let p = |labels: &[&str]| DiscretePath::from_labels(g, labels);
    let on = |start: usize, labels: &[&str]| -> Result<DiscretePath> {
        let v = labels.iter().map(|l| g.index_of(l)).collect::<Result<Vec<_>>>()?;
        DiscretePath::new(g, start, v)
    };
    // (0,1) followed by the jump g at 1 to the stationary piece at 3.
    let broken =
        GPath::new(&a, GridSubdivision::new(1, vec![0, 1, 1])?, vec![p(&["0", "1"])?, on(1, &["3"])?], vec![1])?;
    let straight = GPath::single(p(&["0", "1"])?)?;
    let bent =
        GPath::new(&a, GridSubdivision::new(2, vec![0, 2, 2])?, vec![p(&["0", "1", "0"])?, on(2, &["0"])?], vec![1])?;
    let back = GPath::single(p(&["0", "1", "0"])?)?;
    let mut inst = Instance::bare("reflection-c4", a);
    inst.basepoints = vec![("x".into(), 0), ("y".into(), 1)];
    inst.gpaths =
        vec![("jump".into(), broken), ("plain".into(), straight), ("bent".into(), bent), ("back".into(), back)];
    Ok(inst)
}

pub fn free_rotation_action() -> GroupAction {
    GroupAction::from_generators(FiniteGroup::cyclic(2), SpaceGraph::cycle(6), &[(1, vec![3, 4, 5, 0, 1, 2])])
        .expect("half turn of the hexagon")
}

pub fn free_rotation_c6() -> Instance {
    Instance::bare("free-rotation-c6", free_rotation_action())
}

/// The plus graph: a centre `c` with arms `n`, `s`, `e`, `w`; `u` swaps
/// `n` and `s`, `v` swaps `e` and `w`.
pub fn plus_graph() -> Result<Instance> {
    let labels = ["c", "n", "s", "e", "w"].map(String::from).to_vec();
    let edges: Vec<(String, String)> = ["n", "s", "e", "w"].iter().map(|&a| ("c".to_string(), a.to_string())).collect();
    let graph = SpaceGraph::new(labels, &edges)?;
    let u = vec![0, 2, 1, 3, 4];
    let v = vec![0, 1, 2, 4, 3];
    let group = FiniteGroup::from_permutations(5, &[("u".into(), u.clone()), ("v".into(), v.clone())])?;
    let action =
        GroupAction::from_generators(group.clone(), graph, &[(group.index_of("u")?, u), (group.index_of("v")?, v)])?;
    let mut inst = Instance::bare("plus-graph", action);
    inst.basepoints = vec![("x".into(), 0), ("y".into(), 1)];
    Ok(inst)
}

/// The rotated hexagon with its quotient map onto the 3-cycle.
pub fn quotient_c6_c3() -> Result<Instance> {
    let mut inst = free_rotation_c6();
    inst.name = "quotient-c6-c3";
    let (_, map) = quotient_by_free_action(&inst.action)?;
    inst.maps = vec![NamedMap { name: "quotient".into(), map }];
    Ok(inst)
}

pub fn all() -> Result<Vec<Instance>> {
    Ok(vec![point_z3(), point_s3(), reflection_c4()?, free_rotation_c6(), plus_graph()?, quotient_c6_c3()?])
}
