//! Natural transformations between equivariant maps, homotopies through the
//! path space, the contraction of `G ⋉ X^I` onto `G ⋉ X`, and checking of
//! supplied fibration lifts.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::group::Elem;
use crate::groupoid::{Arrow, FiniteGroupoid};
use crate::morphism::{
    is_essential_equivalence, natural_transformation_exists, same_groupoid, EquivariantMap, NaturalTransformation,
    StrictMorphism,
};
use crate::space::{DiscretePath, PathSpace};

fn check_parallel(f: &EquivariantMap, g: &EquivariantMap) -> Result<()> {
    if *f.source != *g.source || *f.target != *g.target {
        return Err(Error::Mismatch("the two maps do not share source and target actions".into()));
    }
    Ok(())
}

/// First reason why `gamma` fails to carry `f` to `g`, if any: either an
/// object where `γ(z) f(z) != g(z)`, an arrow `(k, z)` where
/// `γ(kz) != ψ(k) γ(z) φ(k)^-1`, or an edge along which `γ` jumps.
pub fn gamma_failure(f: &EquivariantMap, g: &EquivariantMap, gamma: &[Elem]) -> Option<String> {
    let (src, tgt) = (&*f.source, &*f.target);
    let (kg, gg) = (src.group(), tgt.group());
    if gamma.len() != src.carrier_len() || gamma.iter().any(|&h| h >= gg.order()) {
        return Some("γ has the wrong shape".into());
    }
    for z in src.graph().vertices() {
        if tgt.act(gamma[z], f.map(z)) != g.map(z) {
            return Some(format!(
                "object {}: γ = {} sends {} to {}, not {}",
                src.graph().label(z),
                gg.label(gamma[z]),
                tgt.graph().label(f.map(z)),
                tgt.graph().label(tgt.act(gamma[z], f.map(z))),
                tgt.graph().label(g.map(z))
            ));
        }
    }
    for k in kg.elements() {
        for z in src.graph().vertices() {
            let want = gg.mul(gg.mul(g.hom(k), gamma[z]), gg.inv(f.hom(k)));
            if gamma[src.act(k, z)] != want {
                return Some(format!("naturality fails on arrow ({},{})", kg.label(k), src.graph().label(z)));
            }
        }
    }
    for &(a, b) in src.graph().edges() {
        if gamma[a] != gamma[b] {
            return Some(format!("γ jumps along the edge {}-{}", src.graph().label(a), src.graph().label(b)));
        }
    }
    None
}

/// `h` with `γ ≡ h` on a connected carrier, and what it says about the homs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectedCase {
    pub h: Elem,
    /// `g = h·f` pointwise.
    pub translates: bool,
    /// `ψ(k) = h φ(k) h^-1` for every `k`.
    pub conjugates: bool,
}

/// A continuous `K`-map `γ: Z -> G` with `γ(z) f(z) = g(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantNt {
    pub gamma: Vec<Elem>,
    pub connected: Option<ConnectedCase>,
}

impl EquivariantNt {
    /// The corresponding natural transformation between the strict morphisms.
    pub fn to_natural_transformation(&self, f: &EquivariantMap, g: &EquivariantMap) -> Result<NaturalTransformation> {
        let fs = f.strict();
        let gs = g.strict_between(fs.source.clone(), fs.target.clone());
        let n = f.target.carrier_len();
        let component = self.gamma.iter().zip(&f.carrier_map).map(|(&h, &x)| h * n + x).collect();
        NaturalTransformation::new(fs, gs, component)
    }

    pub fn inverse(&self, f: &EquivariantMap) -> EquivariantNt {
        let gg = f.target.group();
        EquivariantNt {
            gamma: self.gamma.iter().map(|&h| gg.inv(h)).collect(),
            connected: self.connected.as_ref().map(|c| ConnectedCase { h: gg.inv(c.h), ..c.clone() }),
        }
    }
}

/// Searches for `γ` carrying `f` to `g`. The carrier splits into the classes
/// generated by edges and by the `K`-action; on each class `γ` is pinned by
/// its value at one point, so every candidate there is propagated and checked.
pub fn equivariant_nt_exists(f: &EquivariantMap, g: &EquivariantMap) -> Result<Option<EquivariantNt>> {
    check_parallel(f, g)?;
    let (src, tgt) = (&*f.source, &*f.target);
    let (kg, gg) = (src.group(), tgt.group());
    let n = src.carrier_len();
    let mut gamma = vec![usize::MAX; n];
    let mut done = vec![false; n];
    for root in 0..n {
        if done[root] {
            continue;
        }
        let mut found = None;
        for cand in gg.elements().filter(|&h| tgt.act(h, f.map(root)) == g.map(root)) {
            let mut local = vec![usize::MAX; n];
            let mut members = vec![root];
            local[root] = cand;
            let mut queue = VecDeque::from([root]);
            let mut ok = true;
            'bfs: while let Some(z) = queue.pop_front() {
                let step = src.graph().neighbors(z).iter().map(|&w| (w, local[z])).chain(
                    kg.elements().map(|k| (src.act(k, z), gg.mul(gg.mul(g.hom(k), local[z]), gg.inv(f.hom(k))))),
                );
                for (w, val) in step.collect::<Vec<_>>() {
                    if local[w] == usize::MAX {
                        if tgt.act(val, f.map(w)) != g.map(w) {
                            ok = false;
                            break 'bfs;
                        }
                        local[w] = val;
                        members.push(w);
                        queue.push_back(w);
                    } else if local[w] != val {
                        ok = false;
                        break 'bfs;
                    }
                }
            }
            if ok {
                found = Some((local, members));
                break;
            }
        }
        let Some((local, members)) = found else {
            return Ok(None);
        };
        for z in members {
            gamma[z] = local[z];
            done[z] = true;
        }
    }
    debug_assert!(gamma_failure(f, g, &gamma).is_none());
    let connected = src.graph().is_connected().then(|| {
        let h = gamma[0];
        ConnectedCase {
            h,
            translates: src.graph().vertices().all(|z| g.map(z) == tgt.act(h, f.map(z))),
            conjugates: kg.elements().all(|k| g.hom(k) == gg.conj(h, f.hom(k))),
        }
    });
    Ok(Some(EquivariantNt { gamma, connected }))
}

/// `H: K ⋉ Z -> G ⋉ X^I` given stage by stage, with the two end cells:
/// `γ₀(z)·H(z)(0) = f(z)` and `γ₁(z)·H(z)(T) = g(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub grid: usize,
    pub hom: Vec<Elem>,
    /// `stages[z][s] = H(z)(s)`.
    pub stages: Vec<Vec<Vertex>>,
    pub gamma0: Vec<Elem>,
    pub gamma1: Vec<Elem>,
}

impl HomotopyWitness {
    /// `ev_s ∘ H`, assuming the stage data is equivariant and continuous.
    pub fn evaluate(&self, source: &Arc<GroupAction>, target: &Arc<GroupAction>, s: usize) -> EquivariantMap {
        EquivariantMap {
            source: source.clone(),
            target: target.clone(),
            hom: self.hom.clone(),
            carrier_map: self.stages.iter().map(|st| st[s]).collect(),
        }
    }

    /// `H` as a map into an enumerated path space.
    pub fn into_path_space(&self, source: &Arc<GroupAction>, paths: &PathSpace) -> Result<EquivariantMap> {
        let carrier = self
            .stages
            .iter()
            .map(|st| paths.index_of(&DiscretePath::new(paths.base().graph(), 0, st.clone())?))
            .collect::<Result<Vec<_>>>()?;
        EquivariantMap::new(source.clone(), Arc::new(paths.action().clone()), self.hom.clone(), carrier)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomotopyCheck {
    pub stages_valid: bool,
    pub equivariant: bool,
    pub continuous: bool,
    pub start: bool,
    pub end: bool,
    pub diagnostics: Vec<String>,
}

impl HomotopyCheck {
    pub fn holds(&self) -> bool {
        self.stages_valid && self.equivariant && self.continuous && self.start && self.end
    }
}

/// Checks that `w` is a homotopy from `f` to `g`.
pub fn check_homotopy(f: &EquivariantMap, g: &EquivariantMap, w: &HomotopyWitness) -> Result<HomotopyCheck> {
    check_parallel(f, g)?;
    let (src, tgt) = (&f.source, &f.target);
    let (kg, gg) = (src.group(), tgt.group());
    let graph = tgt.graph();
    let t = w.grid;
    if w.stages.len() != src.carrier_len()
        || w.stages.iter().any(|st| st.len() != t + 1)
        || w.hom.len() != kg.order()
        || w.gamma0.len() != src.carrier_len()
        || w.gamma1.len() != src.carrier_len()
    {
        return Err(Error::Mismatch("homotopy data has the wrong shape".into()));
    }
    let stages_valid = w
        .stages
        .iter()
        .all(|st| st.iter().all(|&v| v < graph.len()) && st.windows(2).all(|p| graph.adjacent_or_equal(p[0], p[1])));
    let mut out = HomotopyCheck { stages_valid, ..HomotopyCheck::default() };
    if !out.stages_valid {
        out.diagnostics.push("some stage is not a stay-or-step path".into());
        return Ok(out);
    }
    if !kg.is_homomorphism(gg, &w.hom) {
        out.diagnostics.push("group component of H is not a homomorphism".into());
    } else {
        out.equivariant = kg.elements().all(|k| {
            src.graph().vertices().all(|z| {
                let moved = &w.stages[src.act(k, z)];
                w.stages[z].iter().zip(moved).all(|(&v, &m)| tgt.act(w.hom[k], v) == m)
            })
        });
        if !out.equivariant {
            out.diagnostics.push("H(kz) != φ(k)·H(z) somewhere".into());
        }
    }
    out.continuous = src
        .graph()
        .edges()
        .iter()
        .all(|&(a, b)| w.stages[a].iter().zip(&w.stages[b]).all(|(&u, &v)| graph.adjacent_or_equal(u, v)));
    if !out.continuous {
        out.diagnostics.push("H tears an edge of the source apart".into());
    }
    if out.equivariant {
        let ev0 = w.evaluate(src, tgt, 0);
        let ev1 = w.evaluate(src, tgt, t);
        match gamma_failure(&ev0, f, &w.gamma0) {
            None => out.start = true,
            Some(m) => out.diagnostics.push(format!("start: {m}")),
        }
        match gamma_failure(&ev1, g, &w.gamma1) {
            None => out.end = true,
            Some(m) => out.diagnostics.push(format!("end: {m}")),
        }
    }
    Ok(out)
}

/// The constant-path homotopy `H = i_X ∘ f` from `f` to `g`, for a `γ`
/// carrying `f` to `g`.
pub fn constant_path_witness(f: &EquivariantMap, gamma: &[Elem], t: usize) -> HomotopyWitness {
    HomotopyWitness {
        grid: t,
        hom: f.hom.clone(),
        stages: f.carrier_map.iter().map(|&x| vec![x; t + 1]).collect(),
        gamma0: vec![f.target.group().identity(); f.carrier_map.len()],
        gamma1: gamma.to_vec(),
    }
}

/// `i_X: x ↦` constant path at `x`.
pub fn constant_path_map(action: &Arc<GroupAction>, paths: &PathSpace) -> Result<EquivariantMap> {
    let carrier = action
        .graph()
        .vertices()
        .map(|x| paths.index_of(&DiscretePath::constant(x, 0, paths.grid())))
        .collect::<Result<Vec<_>>>()?;
    EquivariantMap::new(action.clone(), Arc::new(paths.action().clone()), action.group().elements().collect(), carrier)
}

/// `ev_s: α ↦ α(s)` from the path space onto its base.
pub fn evaluation_at(paths: &PathSpace, s: usize) -> Result<EquivariantMap> {
    if s > paths.grid() {
        return Err(Error::Precondition(format!("time {s} is past the grid {}", paths.grid())));
    }
    EquivariantMap::new(
        Arc::new(paths.action().clone()),
        Arc::new(paths.base().clone()),
        paths.base().group().elements().collect(),
        paths.paths().iter().map(|p| p.at(s)).collect(),
    )
}

/// `λ_s(i) = α(s + ⌊i (T - s) / T⌋)`.
pub fn contraction_stage(alpha: &DiscretePath, t: usize, s: usize) -> Vec<Vertex> {
    (0..=t).map(|i| alpha.at(s + (i * (t - s)).checked_div(t).unwrap_or(0))).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    pub stages_valid: bool,
    pub starts_at_alpha: bool,
    pub ends_constant: bool,
    pub adjacent_stages: bool,
    pub equivariant: bool,
    pub check: HomotopyCheck,
}

impl ContractionReport {
    pub fn holds(&self) -> bool {
        self.stages_valid
            && self.starts_at_alpha
            && self.ends_constant
            && self.adjacent_stages
            && self.equivariant
            && self.check.holds()
    }
}

/// The homotopy `id ≃ i ∘ ev_1` on `G ⋉ X^I`.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub paths: Arc<PathSpace>,
    pub identity: EquivariantMap,
    pub collapse: EquivariantMap,
    pub witness: Option<HomotopyWitness>,
    pub report: ContractionReport,
}

pub fn contraction_homotopy(action: &GroupAction, t: usize) -> Result<Contraction> {
    let paths = Arc::new(PathSpace::new(action, t)?);
    let pa = Arc::new(paths.action().clone());
    let base = Arc::new(action.clone());
    let identity = EquivariantMap::identity(pa.clone());
    let collapse = evaluation_at(&paths, t)?.then(&constant_path_map(&base, &paths)?)?;
    let mut report = ContractionReport::default();
    let mut stages = Vec::with_capacity(paths.len());
    for alpha in paths.paths() {
        let mut row = Vec::with_capacity(t + 1);
        for s in 0..=t {
            let Ok(i) =
                DiscretePath::new(action.graph(), 0, contraction_stage(alpha, t, s)).and_then(|p| paths.index_of(&p))
            else {
                return Ok(Contraction { paths, identity, collapse, witness: None, report });
            };
            row.push(i);
        }
        stages.push(row);
    }
    report.stages_valid = true;
    report.starts_at_alpha = stages.iter().enumerate().all(|(p, row)| row[0] == p);
    report.ends_constant = stages.iter().enumerate().all(|(p, row)| row[t] == collapse.map(p));
    report.adjacent_stages = stages.iter().all(|row| row.windows(2).all(|w| pa.graph().adjacent_or_equal(w[0], w[1])));
    report.equivariant = action.group().elements().all(|g| {
        (0..paths.len()).all(|p| stages[pa.act(g, p)].iter().zip(&stages[p]).all(|(&m, &v)| m == pa.act(g, v)))
    });
    let e = vec![action.group().identity(); paths.len()];
    let witness = HomotopyWitness { grid: t, hom: identity.hom.clone(), stages, gamma0: e.clone(), gamma1: e };
    report.check = check_homotopy(&identity, &collapse, &witness)?;
    Ok(Contraction { paths, identity, collapse, witness: Some(witness), report })
}

/// Homotopy of spans `(σ, f) ≃ (τ, g)` through `(ε, H)`, with every leg and
/// every 2-cell supplied. Cells run from the `H` side to the `f`/`g` side and
/// from the `ε` side to the `σ`/`τ` side:
/// `ev_0 H u_0 ⇒ f v_0`, `ev_T H u_1 ⇒ g v_1`, `ε u_0 ⇒ σ v_0`, `ε u_1 ⇒ τ v_1`.
#[derive(Clone, Debug)]
pub struct SpanHomotopy {
    pub sigma: EquivariantMap,
    pub f: EquivariantMap,
    pub tau: EquivariantMap,
    pub g: EquivariantMap,
    pub epsilon: EquivariantMap,
    /// Source of `H`; stages live in the common target of `f` and `g`.
    pub h: HomotopyWitness,
    pub u0: EquivariantMap,
    pub v0: EquivariantMap,
    pub u1: EquivariantMap,
    pub v1: EquivariantMap,
    pub cells: [Vec<Elem>; 4],
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SpanHomotopyCheck {
    pub h_valid: bool,
    pub legs_essential: bool,
    pub cells: [bool; 4],
    pub diagnostics: Vec<String>,
}

impl SpanHomotopyCheck {
    pub fn holds(&self) -> bool {
        self.h_valid && self.legs_essential && self.cells.iter().all(|&c| c)
    }
}

pub fn check_span_homotopy(w: &SpanHomotopy) -> Result<SpanHomotopyCheck> {
    let mut out = SpanHomotopyCheck::default();
    let hsrc = &w.epsilon.source;
    let target = &w.f.target;
    // H as a homotopy between its own ends.
    let e = vec![target.group().identity(); hsrc.carrier_len()];
    let ends = HomotopyWitness { gamma0: e.clone(), gamma1: e, ..w.h.clone() };
    if ends.stages.len() != hsrc.carrier_len() || ends.stages.iter().any(|st| st.len() != ends.grid + 1) {
        return Err(Error::Mismatch("homotopy data has the wrong shape".into()));
    }
    let ev0 = ends.evaluate(hsrc, target, 0);
    let ev1 = ends.evaluate(hsrc, target, ends.grid);
    let h_check = check_homotopy(&ev0, &ev1, &ends)?;
    out.h_valid = h_check.holds();
    out.diagnostics.extend(h_check.diagnostics.into_iter().map(|m| format!("H: {m}")));
    let legs =
        [("σ", &w.sigma), ("τ", &w.tau), ("ε", &w.epsilon), ("u0", &w.u0), ("v0", &w.v0), ("u1", &w.u1), ("v1", &w.v1)];
    out.legs_essential = true;
    for (name, m) in legs {
        let r = is_essential_equivalence(&m.strict());
        if !r.holds() {
            out.legs_essential = false;
            out.diagnostics.push(format!("{name} is not an essential equivalence"));
        }
    }
    if !out.h_valid {
        return Ok(out);
    }
    let squares = [
        ("ev0 H u0 => f v0", w.u0.then(&ev0)?, w.v0.then(&w.f)?),
        ("evT H u1 => g v1", w.u1.then(&ev1)?, w.v1.then(&w.g)?),
        ("ε u0 => σ v0", w.u0.then(&w.epsilon)?, w.v0.then(&w.sigma)?),
        ("ε u1 => τ v1", w.u1.then(&w.epsilon)?, w.v1.then(&w.tau)?),
    ];
    for (i, (name, a, b)) in squares.iter().enumerate() {
        check_parallel(a, b)?;
        match gamma_failure(a, b, &w.cells[i]) {
            None => out.cells[i] = true,
            Some(m) => out.diagnostics.push(format!("{name}: {m}")),
        }
    }
    Ok(out)
}

/// The groupoids and maps around a strict map `f: G ⋉ X -> H ⋉ Y` that a
/// lifting problem refers to.
#[derive(Clone, Debug)]
pub struct FibrationSetting {
    pub f: EquivariantMap,
    pub source_paths: Arc<PathSpace>,
    pub target_paths: Arc<PathSpace>,
    pub source: Arc<FiniteGroupoid>,
    pub target: Arc<FiniteGroupoid>,
    pub source_path_groupoid: Arc<FiniteGroupoid>,
    pub target_path_groupoid: Arc<FiniteGroupoid>,
    pub f_strict: StrictMorphism,
    pub f_star: StrictMorphism,
    pub ev0_source: StrictMorphism,
    pub ev0_target: StrictMorphism,
    pub const_source: StrictMorphism,
    pub const_target: StrictMorphism,
}

impl FibrationSetting {
    pub fn new(f: &EquivariantMap, t: usize) -> Result<Self> {
        let source_paths = Arc::new(PathSpace::new(&f.source, t)?);
        let target_paths = Arc::new(PathSpace::new(&f.target, t)?);
        let source = Arc::new(FiniteGroupoid::translation(&f.source));
        let target = Arc::new(FiniteGroupoid::translation(&f.target));
        let source_path_groupoid = Arc::new(source_paths.groupoid());
        let target_path_groupoid = Arc::new(target_paths.groupoid());
        let f_strict = f.strict_between(source.clone(), target.clone());
        let star = crate::gpath::induced_map_between(f, source_paths.clone(), target_paths.clone())?;
        let f_star = star.map.strict_between(source_path_groupoid.clone(), target_path_groupoid.clone());
        let ev0_source = evaluation_at(&source_paths, 0)?.strict_between(source_path_groupoid.clone(), source.clone());
        let ev0_target = evaluation_at(&target_paths, 0)?.strict_between(target_path_groupoid.clone(), target.clone());
        let const_source =
            constant_path_map(&f.source, &source_paths)?.strict_between(source.clone(), source_path_groupoid.clone());
        let const_target =
            constant_path_map(&f.target, &target_paths)?.strict_between(target.clone(), target_path_groupoid.clone());
        Ok(Self {
            f: f.clone(),
            source_paths,
            target_paths,
            source,
            target,
            source_path_groupoid,
            target_path_groupoid,
            f_strict,
            f_star,
            ev0_source,
            ev0_target,
            const_source,
            const_target,
        })
    }
}

/// `(Ω, K): L⋉U <- 𝓛 -> H⋉Y^I` and `(ω, k): L⋉U <- ℓ -> G⋉X`, joined over `M`
/// by `η: M -> 𝓛`, `ν: M -> ℓ`, with cells `Ωη ⇒ ων` and `ev₀Kη ⇒ fkν`.
/// A cell left as `None` is searched for.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub big_omega: StrictMorphism,
    pub big_k: StrictMorphism,
    pub small_omega: StrictMorphism,
    pub small_k: StrictMorphism,
    pub eta: StrictMorphism,
    pub nu: StrictMorphism,
    pub cells: [Option<Vec<Arrow>>; 2],
}

/// `(Ω̃, K̃): L⋉U <- 𝓛̃ -> G⋉X^I` with `η': M' -> 𝓛̃`, `ν': M' -> ℓ`,
/// `η'': M'' -> 𝓛̃`, `ν'': M'' -> 𝓛` and the cells
/// `Ω̃η' ⇒ ων'`, `ev₀K̃η' ⇒ kν'`, `Ω̃η'' ⇒ Ων''`, `f_*K̃η'' ⇒ Kν''`.
#[derive(Clone, Debug)]
pub struct LiftCandidate {
    pub omega_tilde: StrictMorphism,
    pub k_tilde: StrictMorphism,
    pub eta1: StrictMorphism,
    pub nu1: StrictMorphism,
    pub eta2: StrictMorphism,
    pub nu2: StrictMorphism,
    pub cells: [Option<Vec<Arrow>>; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareCheck {
    pub name: String,
    pub holds: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FibrationLiftReport {
    pub hypotheses: Vec<SquareCheck>,
    pub squares: Vec<SquareCheck>,
    pub essential: Vec<SquareCheck>,
}

impl FibrationLiftReport {
    pub fn holds(&self) -> bool {
        self.hypotheses.iter().chain(&self.squares).chain(&self.essential).all(|c| c.holds)
    }
}

fn check_cell(
    name: &str,
    from: &StrictMorphism,
    to: &StrictMorphism,
    cell: &Option<Vec<Arrow>>,
) -> Result<SquareCheck> {
    if !same_groupoid(&from.source, &to.source) || !same_groupoid(&from.target, &to.target) {
        return Err(Error::Mismatch(format!("{name}: the two sides do not share source and target")));
    }
    let (holds, detail) = match cell {
        Some(component) => match NaturalTransformation::new(from.clone(), to.clone(), component.clone()) {
            Ok(_) => (true, None),
            Err(e) => (false, Some(e.to_string())),
        },
        None => match natural_transformation_exists(from, to)? {
            Some(_) => (true, None),
            None => (false, Some("no natural transformation exists".into())),
        },
    };
    Ok(SquareCheck { name: name.into(), holds, detail })
}

/// Checks a supplied lift against a lifting problem for `setting.f`. No
/// search over lifts happens here.
pub fn verify_fibration_lift(
    setting: &FibrationSetting,
    problem: &LiftingProblem,
    candidate: &LiftCandidate,
) -> Result<FibrationLiftReport> {
    let s = setting;
    let (p, c) = (problem, candidate);
    let mut report = FibrationLiftReport::default();
    report.hypotheses.push(check_cell(
        "Ωη => ων",
        &p.eta.then(&p.big_omega)?,
        &p.nu.then(&p.small_omega)?,
        &p.cells[0],
    )?);
    report.hypotheses.push(check_cell(
        "ev0 K η => f k ν",
        &p.eta.then(&p.big_k)?.then(&s.ev0_target)?,
        &p.nu.then(&p.small_k)?.then(&s.f_strict)?,
        &p.cells[1],
    )?);
    report.squares.push(check_cell(
        "Ω~η' => ων'",
        &c.eta1.then(&c.omega_tilde)?,
        &c.nu1.then(&p.small_omega)?,
        &c.cells[0],
    )?);
    report.squares.push(check_cell(
        "ev0 K~ η' => k ν'",
        &c.eta1.then(&c.k_tilde)?.then(&s.ev0_source)?,
        &c.nu1.then(&p.small_k)?,
        &c.cells[1],
    )?);
    report.squares.push(check_cell(
        "Ω~η'' => Ων''",
        &c.eta2.then(&c.omega_tilde)?,
        &c.nu2.then(&p.big_omega)?,
        &c.cells[2],
    )?);
    report.squares.push(check_cell(
        "f* K~ η'' => K ν''",
        &c.eta2.then(&c.k_tilde)?.then(&s.f_star)?,
        &c.nu2.then(&p.big_k)?,
        &c.cells[3],
    )?);
    let legs = [
        ("η", &p.eta),
        ("ν", &p.nu),
        ("ω", &p.small_omega),
        ("Ω", &p.big_omega),
        ("η'", &c.eta1),
        ("ν'", &c.nu1),
        ("η''", &c.eta2),
        ("ν''", &c.nu2),
        ("Ω~", &c.omega_tilde),
    ];
    for (name, m) in legs {
        let r = is_essential_equivalence(m);
        report.essential.push(SquareCheck { name: name.into(), holds: r.holds(), detail: r.counterexample });
    }
    Ok(report)
}

/// The lifting problem of a constant homotopy `K = i ∘ f` over the identity
/// span on `G ⋉ X`, with its evident lift `K̃ = i`. All cells are identities.
pub fn constant_lifting_problem(setting: &FibrationSetting) -> Result<(LiftingProblem, LiftCandidate)> {
    let s = setting;
    let id = StrictMorphism::identity(s.source.clone());
    let big_k = s.f_strict.then(&s.const_target)?;
    let units = |m: &StrictMorphism| -> Vec<Arrow> { m.obj_map.iter().map(|&x| m.target.unit(x)).collect() };
    let problem = LiftingProblem {
        big_omega: id.clone(),
        big_k: big_k.clone(),
        small_omega: id.clone(),
        small_k: id.clone(),
        eta: id.clone(),
        nu: id.clone(),
        cells: [Some(units(&id)), Some(units(&s.f_strict))],
    };
    let candidate = LiftCandidate {
        omega_tilde: id.clone(),
        k_tilde: s.const_source.clone(),
        eta1: id.clone(),
        nu1: id.clone(),
        eta2: id.clone(),
        nu2: id.clone(),
        cells: [Some(units(&id)), Some(units(&id)), Some(units(&id)), Some(units(&big_k))],
    };
    Ok((problem, candidate))
}
