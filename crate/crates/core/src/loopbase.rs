//! Free loop groupoids, based path and loop groupoids, the evaluation and
//! diagonal maps, and the path-loop morphism.
//!
//! Each construction is built twice: as a translation pullback (structure
//! group a product) and in reduced form, linked by an explicit equivariant
//! reduction map that is checked to be an essential equivalence.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::graph::{SpaceGraph, Vertex};
use crate::group::{Elem, FiniteGroup, ProductGroup};
use crate::groupoid::FiniteGroupoid;
use crate::morphism::{
    are_equivalent, groupoid_pullback, is_essential_equivalence, natural_transformation_exists, translation_pullback,
    EquivalenceCertificate, EquivariantMap, EssentialEquivalenceReport, StrictMorphism, TranslationPullback,
};
use crate::space::PathSpace;

/// The action, its path space on grid `T`, and the square `(G×G) ⋉ (X×X)`.
#[derive(Clone, Debug)]
pub struct LoopContext {
    pub base: Arc<GroupAction>,
    pub paths: Arc<PathSpace>,
    pub path_action: Arc<GroupAction>,
    pub square: Arc<GroupAction>,
    pub square_group: ProductGroup,
    /// `ev(α) = (α(0), α(T))`, `g ↦ (g, g)`.
    pub ev: EquivariantMap,
    /// `Δ(x) = (x, x)`, `g ↦ (g, g)`.
    pub delta: EquivariantMap,
}

impl LoopContext {
    pub fn new(action: &GroupAction, t: usize) -> Result<Self> {
        let base = Arc::new(action.clone());
        let paths = Arc::new(PathSpace::new(action, t)?);
        let path_action = Arc::new(paths.action().clone());
        let (sq, square_group) = action.product(action);
        let square = Arc::new(sq);
        let n = action.carrier_len();
        let diag_hom: Vec<Elem> = action.group().elements().map(|g| square_group.pair(g, g)).collect();
        let ev = EquivariantMap::new(
            path_action.clone(),
            square.clone(),
            diag_hom.clone(),
            paths.paths().iter().map(|p| p.first() * n + p.last()).collect(),
        )?;
        let delta = EquivariantMap::new(base.clone(), square.clone(), diag_hom, (0..n).map(|x| x * n + x).collect())?;
        Ok(Self { base, paths, path_action, square, square_group, ev, delta })
    }

    pub fn grid(&self) -> usize {
        self.paths.grid()
    }

    pub fn group(&self) -> &FiniteGroup {
        self.base.group()
    }

    /// The constant map from the one-point trivial action onto `(x, y)`.
    pub fn constant_pair(&self, x: Vertex, y: Vertex) -> Result<EquivariantMap> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        EquivariantMap::new(
            Arc::new(GroupAction::point(FiniteGroup::trivial())),
            self.square.clone(),
            vec![0],
            vec![x * self.base.carrier_len() + y],
        )
    }

    /// The constant map from the one-point trivial action onto `x`.
    pub fn constant_point(&self, x: Vertex) -> Result<EquivariantMap> {
        self.check_vertex(x)?;
        EquivariantMap::new(Arc::new(GroupAction::point(FiniteGroup::trivial())), self.base.clone(), vec![0], vec![x])
    }

    fn check_vertex(&self, x: Vertex) -> Result<()> {
        if x >= self.base.carrier_len() {
            return Err(Error::UnknownLabel(format!("vertex #{x}")));
        }
        Ok(())
    }

    /// `k: x ↦` constant path at `x`.
    pub fn constant_paths(&self) -> Result<EquivariantMap> {
        let carrier = self
            .base
            .graph()
            .vertices()
            .map(|x| self.paths.index_of(&crate::space::DiscretePath::constant(x, 0, self.grid())))
            .collect::<Result<Vec<_>>>()?;
        EquivariantMap::new(self.base.clone(), self.path_action.clone(), self.group().elements().collect(), carrier)
    }
}

pub fn evaluation_map(action: &GroupAction, t: usize) -> Result<EquivariantMap> {
    Ok(LoopContext::new(action, t)?.ev)
}

pub fn diagonal_map(action: &GroupAction) -> Result<EquivariantMap> {
    let base = Arc::new(action.clone());
    let (sq, pg) = action.product(action);
    let n = action.carrier_len();
    EquivariantMap::new(
        base,
        Arc::new(sq),
        action.group().elements().map(|g| pg.pair(g, g)).collect(),
        (0..n).map(|x| x * n + x).collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub witness_found: bool,
    pub components: Vec<String>,
}

/// Checks that `ev ∘ k` and `Δ` are related by a natural transformation.
pub fn verify_diagonal_factorization(action: &GroupAction, t: usize) -> Result<FactorizationReport> {
    let ctx = LoopContext::new(action, t)?;
    let k = ctx.constant_paths()?;
    let evk = k.then(&ctx.ev)?;
    let square = Arc::new(FiniteGroupoid::translation(&ctx.square));
    let base = Arc::new(FiniteGroupoid::translation(&ctx.base));
    let found = natural_transformation_exists(
        &evk.strict_between(base.clone(), square.clone()),
        &ctx.delta.strict_between(base, square.clone()),
    )?;
    Ok(FactorizationReport {
        witness_found: found.is_some(),
        components: found
            .map(|t| t.component.iter().map(|&a| square.arrow_label(a).to_string()).collect())
            .unwrap_or_default(),
    })
}

/// Summary of a pullback form, its reduced form and their comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub pullback_objects: usize,
    pub pullback_arrows: usize,
    pub structure_group_order: usize,
    pub reduced_objects: usize,
    pub reduced_arrows: usize,
    pub classes: usize,
    pub isotropy_orders: Vec<usize>,
    pub certificate: EquivalenceCertificate,
    pub reduction: EssentialEquivalenceReport,
    /// `Some(true)` when the translation pullback was checked to be
    /// isomorphic to the general groupoid pullback.
    pub matches_groupoid_pullback: Option<bool>,
}

impl ConstructionReport {
    pub fn holds(&self) -> bool {
        self.certificate.equivalent && self.reduction.holds() && self.matches_groupoid_pullback != Some(false)
    }
}

/// A pullback form, a reduced form and the reduction between them.
#[derive(Clone, Debug)]
pub struct Construction {
    pub pullback: TranslationPullback,
    pub pullback_groupoid: Arc<FiniteGroupoid>,
    pub reduced: Arc<GroupAction>,
    pub reduced_groupoid: Arc<FiniteGroupoid>,
    pub rho: EquivariantMap,
    pub report: ConstructionReport,
}

fn assemble(
    pullback: TranslationPullback,
    reduced: Arc<GroupAction>,
    rho_hom: Vec<Elem>,
    rho_map: Vec<Vertex>,
    legs: Option<(&EquivariantMap, &EquivariantMap)>,
) -> Result<Construction> {
    let pullback_groupoid = Arc::new(FiniteGroupoid::translation(&pullback.action));
    let reduced_groupoid = Arc::new(FiniteGroupoid::translation(&reduced));
    let rho = EquivariantMap::new(pullback.action.clone(), reduced.clone(), rho_hom, rho_map)?;
    let reduction = is_essential_equivalence(&rho.strict_between(pullback_groupoid.clone(), reduced_groupoid.clone()));
    let certificate = are_equivalent(&pullback_groupoid, &reduced_groupoid)?;
    let matches_groupoid_pullback = match legs {
        Some((psi, phi)) => {
            let gp = groupoid_pullback(&psi.strict(), &phi.strict())?;
            Some(pullback.isomorphism_to(psi, phi, &gp).map(|m| m.is_isomorphism()).unwrap_or(false))
        }
        None => None,
    };
    let skeleton = reduced_groupoid.skeleton();
    let report = ConstructionReport {
        pullback_objects: pullback_groupoid.object_count(),
        pullback_arrows: pullback_groupoid.arrow_count(),
        structure_group_order: pullback.action.group().order(),
        reduced_objects: reduced_groupoid.object_count(),
        reduced_arrows: reduced_groupoid.arrow_count(),
        classes: skeleton.len(),
        isotropy_orders: skeleton.iter().map(|e| e.isotropy.order()).collect(),
        certificate,
        reduction,
        matches_groupoid_pullback,
    };
    Ok(Construction { pullback, pullback_groupoid, reduced, reduced_groupoid, rho, report })
}

/// Builds an action on `points` with the given rule, joining two points when
/// `adjacent` says so.
fn action_on_points<P>(
    group: FiniteGroup,
    points: &[P],
    label: impl Fn(&P) -> String,
    adjacent: impl Fn(&P, &P) -> bool,
    act: impl Fn(Elem, &P) -> P,
) -> Result<Arc<GroupAction>>
where
    P: Eq + std::hash::Hash + Clone,
{
    let index: HashMap<P, usize> = points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let mut edges = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate().skip(i + 1) {
            if adjacent(p, q) {
                edges.push((i, j));
            }
        }
    }
    let graph = SpaceGraph::from_indices(points.iter().map(label).collect(), &edges)?;
    let mut table = Vec::with_capacity(group.order() * points.len());
    for g in group.elements() {
        for p in points {
            let y = index
                .get(&act(g, p))
                .ok_or_else(|| Error::InvalidAction("reduced action leaves the carrier".into()))?;
            table.push(*y);
        }
    }
    let n = points.len();
    Ok(Arc::new(GroupAction::new(group, graph, |g, x| table[g * n + x])?))
}

/// A reduced action and the data behind each of its points.
type Reduced<P> = Result<(Arc<GroupAction>, Vec<P>)>;

/// The reduced free loop space `L = {(α, g) : α(0) = g α(T)}` with
/// `k (α, g) = (kα, k g k^-1)`. Points are (path index, element).
pub fn reduced_loop_action(ctx: &LoopContext) -> Reduced<(usize, Elem)> {
    let (a, g, ps) = (&ctx.base, ctx.group(), &ctx.paths);
    let pa = ps.action();
    let points: Vec<(usize, Elem)> = (0..ps.len())
        .flat_map(|p| g.elements().map(move |x| (p, x)))
        .filter(|&(p, x)| ps.path(p).first() == a.act(x, ps.path(p).last()))
        .collect();
    let action = action_on_points(
        g.clone(),
        &points,
        |&(p, x)| format!("({},{})", ps.path(p).label(a.graph()), g.label(x)),
        |&(p, x), &(q, y)| x == y && pa.graph().is_adjacent(p, q),
        |k, &(p, x)| (pa.act(k, p), g.conj(k, x)),
    )?;
    Ok((action, points))
}

/// The free loop groupoid: translation pullback of `ev` against `Δ`, the
/// reduced form `G ⋉ L`, and the reduction `(β, (h, l), x) ↦ (h^-1 β, l^-1 h)`.
pub fn free_loop_groupoid(action: &GroupAction, t: usize) -> Result<Construction> {
    free_loop_with(&LoopContext::new(action, t)?, true)
}

pub fn free_loop_with(ctx: &LoopContext, cross_check: bool) -> Result<Construction> {
    let tp = translation_pullback(&ctx.ev, &ctx.delta)?;
    let (reduced, points) = reduced_loop_action(ctx)?;
    let index: HashMap<(usize, Elem), usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let (g, sg, pa) = (ctx.group(), &ctx.square_group, ctx.paths.action());
    let rho_map = tp
        .points
        .iter()
        .map(|&(beta, hl, _)| {
            let (h, l) = sg.split(hl);
            index[&(pa.act(g.inv(h), beta), g.mul(g.inv(l), h))]
        })
        .collect();
    let rho_hom = tp.product.right_projection();
    assemble(tp, reduced, rho_hom, rho_map, cross_check.then_some((&ctx.ev, &ctx.delta)))
}

/// Result of projecting loops to their underlying paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub loop_classes: usize,
    pub path_classes: usize,
    pub image_classes: usize,
    pub injective_on_classes: bool,
    /// Two non-isomorphic loops over isomorphic paths, if any.
    pub example: Option<(String, String)>,
}

/// `(α, g) ↦ α` from the reduced loop groupoid to `G ⋉ X^I`.
pub fn loop_to_path_projection(ctx: &LoopContext, loops: &Construction) -> Result<(StrictMorphism, ProjectionReport)> {
    let (reduced, points) = reduced_loop_action(ctx)?;
    if *reduced != *loops.reduced {
        return Err(Error::ContextMismatch("loop groupoid was built over a different context".into()));
    }
    let proj = EquivariantMap::new(
        loops.reduced.clone(),
        ctx.path_action.clone(),
        ctx.group().elements().collect(),
        points.iter().map(|p| p.0).collect(),
    )?;
    let path_gpd = Arc::new(FiniteGroupoid::translation(&ctx.path_action));
    let m = proj.strict_between(loops.reduced_groupoid.clone(), path_gpd.clone());
    let loop_comp = component_ids(&loops.reduced_groupoid);
    let path_comp = component_ids(&path_gpd);
    let mut over: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &(p, _)) in points.iter().enumerate() {
        over.entry(path_comp[p]).or_default().push(i);
    }
    let mut example = None;
    let mut keys: Vec<_> = over.keys().copied().collect();
    keys.sort_unstable();
    for key in &keys {
        let members = &over[key];
        if let Some(&b) = members.iter().find(|&&b| loop_comp[b] != loop_comp[members[0]]) {
            example = Some((
                loops.reduced_groupoid.object_label(members[0]).to_string(),
                loops.reduced_groupoid.object_label(b).to_string(),
            ));
            break;
        }
    }
    let report = ProjectionReport {
        loop_classes: loop_comp.iter().collect::<HashSet<_>>().len(),
        path_classes: path_comp.iter().collect::<HashSet<_>>().len(),
        image_classes: keys.len(),
        injective_on_classes: example.is_none(),
        example,
    };
    Ok((m, report))
}

fn component_ids(g: &FiniteGroupoid) -> Vec<usize> {
    let mut out = vec![0; g.object_count()];
    for (i, c) in g.components().iter().enumerate() {
        for &x in c {
            out[x] = i;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BasedKind {
    /// `Ω_{x,y}`: paths from the orbit of `x` to the orbit of `y`.
    Between(Vertex, Vertex),
    /// `Ω_x`: based loops.
    Loops(Vertex),
    /// `P_x`: paths leaving `x`.
    From(Vertex),
}

/// A based groupoid in both forms, plus the checks specific to its kind.
#[derive(Clone, Debug)]
pub struct Based {
    pub kind: BasedKind,
    pub construction: Construction,
    /// For `Ω` variants: every isotropy group of both forms is trivial.
    pub trivial_isotropy: Option<bool>,
    /// For `Ω` variants: the reduction is constant on orbits, `ρ(k o) = ρ(o)`.
    pub reduction_invariant: Option<bool>,
    /// For `Ω_x`: comparison with the pullback of `ev_0` on the loop groupoid.
    pub second_presentation: Option<EquivalenceCertificate>,
}

impl Based {
    pub fn holds(&self) -> bool {
        self.construction.report.holds()
            && self.trivial_isotropy != Some(false)
            && self.reduction_invariant != Some(false)
            && self.second_presentation.as_ref().is_none_or(|c| c.equivalent)
    }
}

/// `P_{x,y} = {(α, m) : α(0) = x, α(T) = m y}` with the trivial group.
fn reduced_between(ctx: &LoopContext, x: Vertex, y: Vertex) -> Reduced<(usize, Elem)> {
    let (a, g, ps) = (&ctx.base, ctx.group(), &ctx.paths);
    let points: Vec<(usize, Elem)> = (0..ps.len())
        .filter(|&p| ps.path(p).first() == x)
        .flat_map(|p| g.elements().map(move |m| (p, m)))
        .filter(|&(p, m)| ps.path(p).last() == a.act(m, y))
        .collect();
    let pa = ps.action();
    let action = action_on_points(
        FiniteGroup::trivial(),
        &points,
        |&(p, m)| format!("({},{})", ps.path(p).label(a.graph()), g.label(m)),
        |&(p, m), &(q, n)| m == n && pa.graph().is_adjacent(p, q),
        |_, &pt| pt,
    )?;
    Ok((action, points))
}

fn all_isotropy_trivial(g: &FiniteGroupoid) -> bool {
    g.objects().all(|x| g.isotropy_arrows(x).len() == 1)
}

pub fn based_groupoid(kind: BasedKind, action: &GroupAction, t: usize) -> Result<Based> {
    based_with(&LoopContext::new(action, t)?, kind, true)
}

pub fn based_with(ctx: &LoopContext, kind: BasedKind, cross_check: bool) -> Result<Based> {
    let g = ctx.group();
    let pa = ctx.paths.action();
    let sg = &ctx.square_group;
    match kind {
        BasedKind::Between(x, y) => omega_based(ctx, kind, x, y, cross_check),
        BasedKind::Loops(x) => omega_based(ctx, kind, x, x, cross_check),
        BasedKind::From(x) => {
            let (tp, inclusion) = path_space_pullback(ctx, x)?;
            let (reduced, points) = reduced_from(ctx, x)?;
            let index: HashMap<(usize, Elem, Vertex), usize> =
                points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
            let rho_map = tp
                .points
                .iter()
                .map(|&(beta, hl, z)| {
                    let (h, l) = sg.split(hl);
                    index[&(pa.act(g.inv(h), beta), g.mul(g.inv(h), l), z)]
                })
                .collect();
            let rho_hom = tp.product.right_projection();
            let construction = assemble(tp, reduced, rho_hom, rho_map, cross_check.then_some((&ctx.ev, &inclusion)))?;
            Ok(Based {
                kind,
                construction,
                trivial_isotropy: None,
                reduction_invariant: None,
                second_presentation: None,
            })
        }
    }
}

fn omega_based(ctx: &LoopContext, kind: BasedKind, x: Vertex, y: Vertex, cross_check: bool) -> Result<Based> {
    let g = ctx.group();
    let pa = ctx.paths.action();
    let sg = &ctx.square_group;
    let c = ctx.constant_pair(x, y)?;
    let tp = translation_pullback(&ctx.ev, &c)?;
    let (reduced, points) = reduced_between(ctx, x, y)?;
    let index: HashMap<(usize, Elem), usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let rho_map: Vec<usize> = tp
        .points
        .iter()
        .map(|&(beta, hl, _)| {
            let (h, l) = sg.split(hl);
            index[&(pa.act(g.inv(h), beta), g.mul(g.inv(h), l))]
        })
        .collect();
    let rho_hom = vec![0; tp.action.group().order()];
    let reduction_invariant =
        tp.action.group().elements().all(|k| (0..tp.points.len()).all(|o| rho_map[tp.action.act(k, o)] == rho_map[o]));
    let construction = assemble(tp, reduced, rho_hom, rho_map, cross_check.then_some((&ctx.ev, &c)))?;
    let trivial_isotropy =
        all_isotropy_trivial(&construction.pullback_groupoid) && all_isotropy_trivial(&construction.reduced_groupoid);
    let second_presentation = match kind {
        BasedKind::Loops(_) => Some(loops_via_ev0(ctx, x, &construction.pullback_groupoid)?),
        _ => None,
    };
    Ok(Based {
        kind,
        construction,
        trivial_isotropy: Some(trivial_isotropy),
        reduction_invariant: Some(reduction_invariant),
        second_presentation,
    })
}

/// `z ↦ (x, z)`, `k ↦ (e, k)` from `G ⋉ X` into the square.
fn based_inclusion(ctx: &LoopContext, x: Vertex) -> Result<EquivariantMap> {
    ctx.check_vertex(x)?;
    let n = ctx.base.carrier_len();
    EquivariantMap::new(
        ctx.base.clone(),
        ctx.square.clone(),
        ctx.group().elements().map(|k| ctx.square_group.pair(0, k)).collect(),
        (0..n).map(|z| x * n + z).collect(),
    )
}

/// The pullback form of `P_x`: `ev` against `z ↦ (x, z)`.
pub fn path_space_pullback(ctx: &LoopContext, x: Vertex) -> Result<(TranslationPullback, EquivariantMap)> {
    let inclusion = based_inclusion(ctx, x)?;
    Ok((translation_pullback(&ctx.ev, &inclusion)?, inclusion))
}

/// `P = {(α, g, w) : α(0) = x, α(T) = g w}` with `k (α, g, w) = (α, g k^-1, k w)`.
fn reduced_from(ctx: &LoopContext, x: Vertex) -> Reduced<(usize, Elem, Vertex)> {
    let (a, g, ps) = (&ctx.base, ctx.group(), &ctx.paths);
    let mut points = Vec::new();
    for p in (0..ps.len()).filter(|&p| ps.path(p).first() == x) {
        for m in g.elements() {
            for w in a.graph().vertices() {
                if ps.path(p).last() == a.act(m, w) {
                    points.push((p, m, w));
                }
            }
        }
    }
    let pa = ps.action();
    let action = action_on_points(
        g.clone(),
        &points,
        |&(p, m, w)| format!("({},{},{})", ps.path(p).label(a.graph()), g.label(m), a.graph().label(w)),
        |&(p, m, w), &(q, n, v)| m == n && pa.graph().adjacent_or_equal(p, q) && a.graph().adjacent_or_equal(w, v),
        |k, &(p, m, w)| (p, g.mul(m, g.inv(k)), a.act(k, w)),
    )?;
    Ok((action, points))
}

/// `Ω_x` as the pullback of `ev_0: G ⋉ L -> G ⋉ X` against the point `x`,
/// compared with the first presentation.
fn loops_via_ev0(ctx: &LoopContext, x: Vertex, first: &FiniteGroupoid) -> Result<EquivalenceCertificate> {
    let (loops, points) = reduced_loop_action(ctx)?;
    let ev0 = EquivariantMap::new(
        loops,
        ctx.base.clone(),
        ctx.group().elements().collect(),
        points.iter().map(|&(p, _)| ctx.paths.path(p).first()).collect(),
    )?;
    let tp = translation_pullback(&ev0, &ctx.constant_point(x)?)?;
    are_equivalent(&FiniteGroupoid::translation(&tp.action), first)
}

/// The path-loop morphism `p_1: P_x -> G ⋉ X`, `(β, (h, l), z) ↦ β(T)`,
/// `(g, k) ↦ g`, and the comparison of its fibre over `y` with `Ω_{x,y}`.
#[derive(Clone, Debug)]
pub struct PathLoop {
    pub p1: EquivariantMap,
    pub fibre: TranslationPullback,
    pub certificate: EquivalenceCertificate,
}

pub fn path_loop_morphism(ctx: &LoopContext, x: Vertex, y: Vertex) -> Result<PathLoop> {
    ctx.check_vertex(y)?;
    let (px, _) = path_space_pullback(ctx, x)?;
    let p1 = EquivariantMap::new(
        px.action.clone(),
        ctx.base.clone(),
        px.product.left_projection(),
        px.points.iter().map(|&(beta, _, _)| ctx.paths.path(beta).last()).collect(),
    )?;
    let fibre = translation_pullback(&p1, &ctx.constant_point(y)?)?;
    let direct = based_with(ctx, BasedKind::Between(x, y), false)?;
    let certificate =
        are_equivalent(&FiniteGroupoid::translation(&fibre.action), &direct.construction.pullback_groupoid)?;
    Ok(PathLoop { p1, fibre, certificate })
}

/// The orbit graph of a free action, with the trivial group, and the
/// quotient map onto it. Orbits are labelled by their smallest member.
pub fn quotient_by_free_action(action: &Arc<GroupAction>) -> Result<(Arc<GroupAction>, EquivariantMap)> {
    if !action.is_free() {
        return Err(Error::Precondition("the action is not free".into()));
    }
    let orbits = action.orbits();
    let mut orbit_of = vec![0; action.carrier_len()];
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_of[x] = i;
        }
    }
    let mut edges = Vec::new();
    for &(a, b) in action.graph().edges() {
        if orbit_of[a] == orbit_of[b] {
            return Err(Error::DegenerateQuotient(format!(
                "edge {}-{} collapses to a loop",
                action.graph().label(a),
                action.graph().label(b)
            )));
        }
        edges.push((orbit_of[a], orbit_of[b]));
    }
    let labels = orbits.iter().map(|o| o.iter().map(|&x| action.graph().label(x)).min().unwrap().to_string()).collect();
    let quotient = Arc::new(GroupAction::trivial(FiniteGroup::trivial(), SpaceGraph::from_indices(labels, &edges)?));
    let map = EquivariantMap::new(action.clone(), quotient.clone(), vec![0; action.group().order()], orbit_of)?;
    Ok((quotient, map))
}

/// Equivalences between the constructions on a free action and on its quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseReport {
    pub grid: usize,
    pub paths: bool,
    pub loops: bool,
    pub based: Vec<(String, bool)>,
}

impl CollapseReport {
    pub fn holds(&self) -> bool {
        self.paths && self.loops && self.based.iter().all(|b| b.1)
    }
}

pub fn free_action_collapse(action: &Arc<GroupAction>, t: usize) -> Result<CollapseReport> {
    let (quotient, map) = quotient_by_free_action(action)?;
    let up = LoopContext::new(action, t)?;
    let down = LoopContext::new(&quotient, t)?;
    let paths =
        are_equivalent(&FiniteGroupoid::translation(&up.path_action), &FiniteGroupoid::translation(&down.path_action))?
            .equivalent;
    let loops =
        are_equivalent(&free_loop_with(&up, false)?.reduced_groupoid, &free_loop_with(&down, false)?.reduced_groupoid)?
            .equivalent;
    let mut based = Vec::new();
    let lbl = |v: Vertex| action.graph().label(v).to_string();
    for x in action.graph().vertices() {
        for y in action.graph().vertices() {
            let kinds = if x == y {
                vec![BasedKind::Between(x, y), BasedKind::From(x)]
            } else {
                vec![BasedKind::Between(x, y)]
            };
            for kind in kinds {
                let down_kind = match kind {
                    BasedKind::Between(a, b) => BasedKind::Between(map.map(a), map.map(b)),
                    BasedKind::Loops(a) => BasedKind::Loops(map.map(a)),
                    BasedKind::From(a) => BasedKind::From(map.map(a)),
                };
                let u = based_with(&up, kind, false)?;
                let d = based_with(&down, down_kind, false)?;
                let ok = are_equivalent(&u.construction.reduced_groupoid, &d.construction.reduced_groupoid)?.equivalent;
                let name = match kind {
                    BasedKind::Between(a, b) => format!("Omega({},{})", lbl(a), lbl(b)),
                    BasedKind::Loops(a) => format!("Omega({})", lbl(a)),
                    BasedKind::From(a) => format!("P({})", lbl(a)),
                };
                based.push((name, ok));
            }
        }
    }
    Ok(CollapseReport { grid: t, paths, loops, based })
}
