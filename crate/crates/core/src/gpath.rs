//! G-paths: pieces of paths on a subdivision joined by group elements,
//! their normal forms, the explicit equivalences with `G ⋉ X^I`, the space
//! `Y_α`, functoriality, and lifting along essential equivalences.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::graph::{SpaceGraph, Vertex};
use crate::group::{Elem, FiniteGroup};
use crate::groupoid::FiniteGroupoid;
use crate::morphism::{is_essential_equivalence, EquivariantMap, EssentialEquivalenceReport, StrictMorphism};
use crate::space::{act_on_path, concat, interval_groupoid, tagged_label, DiscretePath, GridSubdivision, PathSpace};

/// `(α_0, k_0, α_1, ..., k_{n-2}, α_{n-1})` with piece `i` on
/// `[cuts[i], cuts[i+1]]` and `k_i α_i(c) = α_{i+1}(c)` at each inner cut.
/// Pieces and connectors are numbered from 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GPath {
    subdivision: GridSubdivision,
    pieces: Vec<DiscretePath>,
    connectors: Vec<Elem>,
}

impl GPath {
    pub fn new(
        action: &GroupAction,
        subdivision: GridSubdivision,
        pieces: Vec<DiscretePath>,
        connectors: Vec<Elem>,
    ) -> Result<Self> {
        let p = Self { subdivision, pieces, connectors };
        p.validate(action)?;
        Ok(p)
    }

    fn new_unchecked(subdivision: GridSubdivision, pieces: Vec<DiscretePath>, connectors: Vec<Elem>) -> Self {
        Self { subdivision, pieces, connectors }
    }

    /// A one-piece G-path on `[0, T]`.
    pub fn single(path: DiscretePath) -> Result<Self> {
        if path.start() != 0 {
            return Err(Error::InvalidGPath("a one-piece G-path must start at sample 0".into()));
        }
        Ok(Self { subdivision: GridSubdivision::trivial(path.end()), pieces: vec![path], connectors: Vec::new() })
    }

    pub fn validate(&self, action: &GroupAction) -> Result<()> {
        let cuts = self.subdivision.cuts();
        let n = self.subdivision.pieces();
        if self.pieces.len() != n || self.connectors.len() + 1 != n {
            return Err(Error::InvalidGPath(format!(
                "{} cuts need {n} pieces and {} connectors, got {} and {}",
                cuts.len(),
                n - 1,
                self.pieces.len(),
                self.connectors.len()
            )));
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if p.start() != cuts[i] || p.end() != cuts[i + 1] {
                return Err(Error::InvalidGPath(format!(
                    "piece {i} spans [{}, {}] but the cuts say [{}, {}]",
                    p.start(),
                    p.end(),
                    cuts[i],
                    cuts[i + 1]
                )));
            }
            if !p.is_valid(action.graph()) {
                return Err(Error::InvalidGPath(format!("piece {i} is not a stay-or-step path")));
            }
        }
        for (i, &k) in self.connectors.iter().enumerate() {
            if k >= action.group().order() {
                return Err(Error::InvalidGPath(format!("connector {i} is not a group element")));
            }
            let c = cuts[i + 1];
            if action.act(k, self.pieces[i].at(c)) != self.pieces[i + 1].at(c) {
                return Err(Error::InvalidGPath(format!(
                    "at cut {i} (sample {c}): {}·{} != {}",
                    action.group().label(k),
                    action.graph().label(self.pieces[i].at(c)),
                    action.graph().label(self.pieces[i + 1].at(c))
                )));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> usize {
        self.subdivision.grid()
    }

    pub fn subdivision(&self) -> &GridSubdivision {
        &self.subdivision
    }

    pub fn cuts(&self) -> &[usize] {
        self.subdivision.cuts()
    }

    pub fn pieces(&self) -> &[DiscretePath] {
        &self.pieces
    }

    pub fn connectors(&self) -> &[Elem] {
        &self.connectors
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// Pieces separated by their connectors, e.g. `(0,1)|g|(3,2)`.
    pub fn label(&self, action: &GroupAction) -> String {
        let mut s = self.pieces[0].label(action.graph());
        for (k, p) in self.connectors.iter().zip(&self.pieces[1..]) {
            s.push('|');
            s.push_str(action.group().label(*k));
            s.push('|');
            s.push_str(&p.label(action.graph()));
        }
        s
    }
}

/// The element `(g_0, ..., g_{n-1})` of `G^n` acting on n-piece G-paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GPathArrow {
    pub tuple: Vec<Elem>,
}

impl GPathArrow {
    /// Target `(g_0 α_0, ..., g_{i+1} k_i g_i^-1, ...)`.
    pub fn apply(&self, action: &GroupAction, p: &GPath) -> Result<GPath> {
        if self.tuple.len() != p.piece_count() {
            return Err(Error::Mismatch(format!(
                "tuple of length {} on a {}-piece G-path",
                self.tuple.len(),
                p.piece_count()
            )));
        }
        let g = action.group();
        let pieces = p.pieces.iter().zip(&self.tuple).map(|(a, &x)| act_on_path(action, x, a)).collect();
        let connectors = p
            .connectors
            .iter()
            .enumerate()
            .map(|(i, &k)| g.mul(g.mul(self.tuple[i + 1], k), g.inv(self.tuple[i])))
            .collect();
        Ok(GPath::new_unchecked(p.subdivision.clone(), pieces, connectors))
    }

    /// `self` after `first`, coordinatewise.
    pub fn after(&self, group: &FiniteGroup, first: &GPathArrow) -> GPathArrow {
        GPathArrow { tuple: self.tuple.iter().zip(&first.tuple).map(|(&a, &b)| group.mul(a, b)).collect() }
    }
}

/// Splits piece `piece` at sample `cut`, inserting an identity connector.
pub fn refine(p: &GPath, cut: usize, piece: usize) -> Result<GPath> {
    let cuts = p.cuts();
    if piece >= p.piece_count() {
        return Err(Error::InvalidGPath(format!("no piece {piece}")));
    }
    let (lo, hi) = (cuts[piece], cuts[piece + 1]);
    if cut < lo || cut > hi {
        return Err(Error::CutOutsidePiece { cut, piece, lo, hi });
    }
    let mut new_cuts = cuts.to_vec();
    new_cuts.insert(piece + 1, cut);
    let mut pieces = p.pieces.clone();
    let whole = pieces.remove(piece);
    pieces.insert(piece, whole.restrict(cut, hi)?);
    pieces.insert(piece, whole.restrict(lo, cut)?);
    let mut connectors = p.connectors.clone();
    connectors.insert(piece, 0);
    Ok(GPath::new_unchecked(GridSubdivision::new(p.grid(), new_cuts)?, pieces, connectors))
}

/// Merges every cut whose connector is the identity. The result is the
/// unique representative without identity connectors.
pub fn colimit_normal_form(action: &GroupAction, p: &GPath) -> GPath {
    let mut cuts = vec![0];
    let mut pieces: Vec<DiscretePath> = vec![p.pieces[0].clone()];
    let mut connectors = Vec::new();
    for (i, &k) in p.connectors.iter().enumerate() {
        let next = &p.pieces[i + 1];
        if k == 0 {
            let last = pieces.pop().unwrap();
            pieces.push(concat(action.graph(), &last, next).expect("identity connector joins equal samples"));
        } else {
            cuts.push(p.cuts()[i + 1]);
            connectors.push(k);
            pieces.push(next.clone());
        }
    }
    cuts.push(p.grid());
    GPath::new_unchecked(GridSubdivision::new(p.grid(), cuts).unwrap(), pieces, connectors)
}

/// Refines `p` to the cut list `target`, whose inner cuts must contain those
/// of `p` as a multiset. New cuts at an existing position come after the old
/// ones and carry identity connectors.
pub fn refine_to(p: &GPath, target: &[usize]) -> Result<GPath> {
    let t = p.grid();
    let old = &p.cuts()[1..p.cuts().len() - 1];
    let new = &target[1..target.len() - 1];
    let mut is_old = Vec::with_capacity(new.len());
    let mut j = 0;
    for &c in new {
        if j < old.len() && old[j] == c {
            is_old.push(Some(j));
            j += 1;
        } else {
            is_old.push(None);
        }
    }
    if j != old.len() {
        return Err(Error::InvalidGPath("target subdivision does not refine the G-path".into()));
    }
    let mut pieces = Vec::with_capacity(new.len() + 1);
    let mut connectors = Vec::with_capacity(new.len());
    let mut source_piece = 0;
    for k in 0..=new.len() {
        let (lo, hi) = (target[k], target[k + 1]);
        pieces.push(p.pieces[source_piece].restrict(lo, hi)?);
        if k < new.len() {
            match is_old[k] {
                Some(q) => {
                    connectors.push(p.connectors[q]);
                    source_piece += 1;
                }
                None => connectors.push(0),
            }
        }
    }
    Ok(GPath::new_unchecked(GridSubdivision::new(t, target.to_vec())?, pieces, connectors))
}

/// Smallest cut list whose inner cuts contain those of both `a` and `b`.
pub fn common_cuts(a: &GPath, b: &GPath) -> Vec<usize> {
    let (ia, ib) = (&a.cuts()[1..a.cuts().len() - 1], &b.cuts()[1..b.cuts().len() - 1]);
    let mut out = vec![0];
    let (mut i, mut j) = (0, 0);
    while i < ia.len() || j < ib.len() {
        let c = match (ia.get(i), ib.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        let (mut ma, mut mb) = (0, 0);
        while i < ia.len() && ia[i] == c {
            ma += 1;
            i += 1;
        }
        while j < ib.len() && ib[j] == c {
            mb += 1;
            j += 1;
        }
        out.extend(std::iter::repeat_n(c, ma.max(mb)));
    }
    out.push(a.grid());
    out
}

/// Witness of isomorphy found by [`gpath_equivalent_direct`]: an arrow of
/// the common refinement taking `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectWitness {
    pub source: GPath,
    pub target: GPath,
    pub arrow: GPathArrow,
}

impl DirectWitness {
    pub fn validate(&self, action: &GroupAction) -> Result<()> {
        self.source.validate(action)?;
        self.target.validate(action)?;
        if self.arrow.apply(action, &self.source)? != self.target {
            return Err(Error::Mismatch("witness tuple does not carry source to target".into()));
        }
        Ok(())
    }
}

fn same_context(a: &GPath, b: &GPath) -> Result<()> {
    if a.grid() != b.grid() {
        return Err(Error::ContextMismatch(format!("grids {} and {}", a.grid(), b.grid())));
    }
    Ok(())
}

/// Decides isomorphy of two G-paths directly on a common refinement,
/// returning the lexicographically first witness tuple.
pub fn gpath_equivalent_direct(action: &GroupAction, a: &GPath, b: &GPath) -> Result<Option<DirectWitness>> {
    same_context(a, b)?;
    let cuts = common_cuts(a, b);
    let (ra, rb) = (refine_to(a, &cuts)?, refine_to(b, &cuts)?);
    let g = action.group();
    let n = ra.piece_count();
    let maps_onto = |x: Elem, p: &DiscretePath, q: &DiscretePath| {
        p.samples().iter().zip(q.samples()).all(|(&u, &v)| action.act(x, u) == v)
    };
    // g_0 is free; each later g_{i+1} = k'_i g_i k_i^-1 is forced.
    'first: for g0 in g.elements() {
        if !maps_onto(g0, &ra.pieces[0], &rb.pieces[0]) {
            continue;
        }
        let mut tuple = Vec::with_capacity(n);
        tuple.push(g0);
        for i in 0..n - 1 {
            let next = g.mul(g.mul(rb.connectors[i], tuple[i]), g.inv(ra.connectors[i]));
            if !maps_onto(next, &ra.pieces[i + 1], &rb.pieces[i + 1]) {
                continue 'first;
            }
            tuple.push(next);
        }
        return Ok(Some(DirectWitness { source: ra, target: rb, arrow: GPathArrow { tuple } }));
    }
    Ok(None)
}

/// `P_i = k_{i-1} ... k_0`, with `P_0 = e`.
pub fn connector_prefixes(group: &FiniteGroup, connectors: &[Elem]) -> Vec<Elem> {
    let mut out = vec![0];
    for &k in connectors {
        let last = *out.last().unwrap();
        out.push(group.mul(k, last));
    }
    out
}

/// The honest path `c(r) = P_i^-1 α_i(r)` for `r` in piece `i`.
pub fn chi(action: &GroupAction, p: &GPath) -> DiscretePath {
    let g = action.group();
    let pre = connector_prefixes(g, &p.connectors);
    let mut samples = vec![0; p.grid() + 1];
    for (i, piece) in p.pieces.iter().enumerate() {
        let inv = g.inv(pre[i]);
        for (r, &v) in piece.samples().iter().enumerate() {
            samples[piece.start() + r] = action.act(inv, v);
        }
    }
    DiscretePath::new(action.graph(), 0, samples).expect("chi of a valid G-path is a path")
}

pub fn chi_inverse(c: &DiscretePath) -> GPath {
    GPath::single(c.clone()).expect("paths on [0, T] start at 0")
}

/// The tuple `(e, k_0^-1, (k_1 k_0)^-1, ...)` carrying `p` to the refinement
/// of `chi_inverse(chi(p))` along the cuts of `p`.
pub fn chi_round_trip_witness(action: &GroupAction, p: &GPath) -> Result<DirectWitness> {
    let g = action.group();
    let tuple = connector_prefixes(g, &p.connectors).into_iter().map(|x| g.inv(x)).collect();
    let arrow = GPathArrow { tuple };
    let target = refine_to(&chi_inverse(&chi(action, p)), p.cuts())?;
    let w = DirectWitness { source: p.clone(), target, arrow };
    w.validate(action)?;
    Ok(w)
}

/// First `g` with `g · chi(a) = chi(b)`.
pub fn iso_check(action: &GroupAction, a: &GPath, b: &GPath) -> Result<Option<Elem>> {
    same_context(a, b)?;
    let (ca, cb) = (chi(action, a), chi(action, b));
    Ok(iso_check_paths(action, &ca, &cb))
}

pub(crate) fn iso_check_paths(action: &GroupAction, ca: &DiscretePath, cb: &DiscretePath) -> Option<Elem> {
    action.group().elements().find(|&g| ca.samples().iter().zip(cb.samples()).all(|(&u, &v)| action.act(g, u) == v))
}

/// A multiple G-path, stored by its branch over the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipleGPath {
    pub e_branch: DiscretePath,
}

impl MultipleGPath {
    /// `σ(g, r) = g^-1 · e_branch(r)`.
    pub fn sigma(&self, action: &GroupAction, g: Elem, r: usize) -> Vertex {
        action.act(action.group().inv(g), self.e_branch.at(r))
    }

    /// Checks `σ(g h^-1, r) = h σ(g, r)` for every `g`, `h`, `r`.
    pub fn check_equivariance(&self, action: &GroupAction) -> bool {
        let grp = action.group();
        grp.elements().all(|g| {
            grp.elements().all(|h| {
                (self.e_branch.start()..=self.e_branch.end())
                    .all(|r| self.sigma(action, grp.mul(g, grp.inv(h)), r) == action.act(h, self.sigma(action, g, r)))
            })
        })
    }
}

pub fn xi(m: &MultipleGPath) -> DiscretePath {
    m.e_branch.clone()
}

pub fn xi_inverse(c: &DiscretePath) -> MultipleGPath {
    MultipleGPath { e_branch: c.clone() }
}

/// The space `Y_α = (G × tagged samples)/∼` with its translation groupoid,
/// the functor `ν` from the interval groupoid and the bijection `γ` onto `G × {0..T}`.
#[derive(Clone, Debug)]
pub struct YAlpha {
    pub action: Arc<GroupAction>,
    pub groupoid: Arc<FiniteGroupoid>,
    pub nu: StrictMorphism,
    /// `γ(y) = (g, r)` per class.
    pub gamma: Vec<(Elem, usize)>,
    /// `φ_α([g,(r,i)]) = g^-1 α_i(r)`, an equivariant map `Y_α -> X`.
    pub phi_alpha: Vec<Vertex>,
    tagged: Vec<(usize, usize)>,
    class_of: Vec<usize>,
    prefixes: Vec<Elem>,
}

impl YAlpha {
    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    /// Class of `[g, (r, i)]`.
    pub fn class(&self, g: Elem, r: usize, piece: usize) -> Option<usize> {
        let t = self.tagged.iter().position(|&x| x == (r, piece))?;
        Some(self.class_of[g * self.tagged.len() + t])
    }

    /// `γ^-1(h, r) = [P_i h, (r, i)]` for any piece `i` containing `r`.
    pub fn gamma_inverse(&self, group: &FiniteGroup, h: Elem, r: usize) -> usize {
        let (t, &(_, i)) = self.tagged.iter().enumerate().find(|(_, x)| x.0 == r).expect("sample on the grid");
        self.class_of[group.mul(self.prefixes[i], h) * self.tagged.len() + t]
    }
}

/// Checks performed on a built [`YAlpha`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YAlphaReport {
    pub size: usize,
    pub expected_size: usize,
    pub gamma_bijective: bool,
    pub gamma_equivariant: bool,
    pub gamma_inverse_agrees: bool,
    pub nu_valid: bool,
    pub nu: EssentialEquivalenceReport,
    pub phi_alpha_matches_chi: bool,
}

impl YAlphaReport {
    pub fn holds(&self) -> bool {
        self.size == self.expected_size
            && self.gamma_bijective
            && self.gamma_equivariant
            && self.gamma_inverse_agrees
            && self.nu_valid
            && self.nu.holds()
            && self.phi_alpha_matches_chi
    }
}

pub fn build_y_alpha(action: &GroupAction, p: &GPath) -> Result<YAlpha> {
    p.validate(action)?;
    let g = action.group();
    let sub = p.subdivision();
    let tagged = sub.tagged_samples(); // pieces numbered from 1
    let nt = tagged.len();
    let t_index: HashMap<(usize, usize), usize> = tagged.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let total = g.order() * nt;
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    // (g, (c_i, i+1)) ~ (k_i^-1 g, (c_i, i)), tags numbered from 1
    for (i, &k) in p.connectors.iter().enumerate() {
        let c = p.cuts()[i + 1];
        let (left, right) = (t_index[&(c, i + 1)], t_index[&(c, i + 2)]);
        for x in g.elements() {
            let a = find(&mut parent, x * nt + right);
            let b = find(&mut parent, g.mul(g.inv(k), x) * nt + left);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut class_of = vec![usize::MAX; total];
    let mut reps = Vec::new();
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    for (m, slot) in class_of.iter_mut().enumerate() {
        let r = find(&mut parent, m);
        let next = reps.len();
        let c = *root_class.entry(r).or_insert(next);
        if c == next {
            reps.push(m);
        }
        *slot = c;
    }
    let labels: Vec<String> = reps
        .iter()
        .map(|&m| {
            let (r, i) = tagged[m % nt];
            format!("[{},{}]", g.label(m / nt), tagged_label(r, i))
        })
        .collect();
    let mut edges = Vec::new();
    for x in g.elements() {
        for (t, &(r, i)) in tagged.iter().enumerate() {
            if let Some(&t2) = t_index.get(&(r + 1, i)) {
                let (a, b) = (class_of[x * nt + t], class_of[x * nt + t2]);
                if a != b {
                    edges.push((a, b));
                }
            }
        }
    }
    let graph = SpaceGraph::from_indices(labels, &edges)?;
    let y_action = Arc::new(GroupAction::new(g.clone(), graph, |h, y| {
        let m = reps[y];
        class_of[g.mul(m / nt, g.inv(h)) * nt + m % nt]
    })?);
    let groupoid = Arc::new(FiniteGroupoid::translation(&y_action));
    let prefixes = connector_prefixes(g, &p.connectors);
    // tags use 1-based piece numbers, prefixes are indexed by 0-based piece
    let prefix_for_tag = |i: usize| prefixes[i - 1];
    let gamma: Vec<(Elem, usize)> = reps
        .iter()
        .map(|&m| {
            let (r, i) = tagged[m % nt];
            (g.mul(g.inv(prefix_for_tag(i)), m / nt), r)
        })
        .collect();
    let phi_alpha = reps
        .iter()
        .map(|&m| {
            let (r, i) = tagged[m % nt];
            action.act(g.inv(m / nt), p.pieces[i - 1].at(r))
        })
        .collect();
    // ν: interval groupoid -> G ⋉ Y_α
    let interval = Arc::new(interval_groupoid(sub));
    let ny = reps.len();
    let obj_map: Vec<usize> = (0..nt).map(|t| class_of[t]).collect();
    let arr_map = interval
        .arrows()
        .map(|a| {
            let (s, d) = (interval.src(a), interval.tgt(a));
            let (i, j) = (tagged[s].1, tagged[d].1);
            // k_{j-1} ... k_i for i < j, tags from 1 so connector index is tag - 1
            let mut h = 0;
            for q in i.min(j)..i.max(j) {
                h = g.mul(p.connectors[q - 1], h);
            }
            if j < i {
                h = g.inv(h);
            }
            h * ny + obj_map[s]
        })
        .collect();
    let nu = StrictMorphism { source: interval, target: groupoid.clone(), obj_map, arr_map };
    let shifted_prefixes = std::iter::once(0).chain(prefixes.iter().copied()).collect();
    Ok(YAlpha { action: y_action, groupoid, nu, gamma, phi_alpha, tagged, class_of, prefixes: shifted_prefixes })
}

/// Builds `Y_α` and checks `γ`, `γ^-1`, `ν` and `φ_α` exhaustively.
pub fn certify_y_alpha(action: &GroupAction, p: &GPath) -> Result<(YAlpha, YAlphaReport)> {
    let y = build_y_alpha(action, p)?;
    let g = action.group();
    let t = p.grid();
    let mut hit = vec![false; g.order() * (t + 1)];
    let mut bijective = y.gamma.len() == hit.len();
    for &(x, r) in &y.gamma {
        bijective &= !std::mem::replace(&mut hit[x * (t + 1) + r], true);
    }
    let gamma_equivariant = g.elements().all(|h| {
        (0..y.len()).all(|c| {
            let (x, r) = y.gamma[c];
            y.gamma[y.action.act(h, c)] == (g.mul(x, g.inv(h)), r)
        })
    });
    let gamma_inverse_agrees = (0..y.len()).all(|c| {
        let (x, r) = y.gamma[c];
        y.gamma_inverse(g, x, r) == c
    });
    let nu_valid = y.nu.validate().is_ok();
    let nu = is_essential_equivalence(&y.nu);
    let honest = chi(action, p);
    let phi_alpha_matches_chi = (0..=t).all(|r| y.phi_alpha[y.gamma_inverse(g, 0, r)] == honest.at(r))
        && g.elements().all(|h| (0..y.len()).all(|c| y.phi_alpha[y.action.act(h, c)] == action.act(h, y.phi_alpha[c])));
    let report = YAlphaReport {
        size: y.len(),
        expected_size: g.order() * (t + 1),
        gamma_bijective: bijective,
        gamma_equivariant,
        gamma_inverse_agrees,
        nu_valid,
        nu,
        phi_alpha_matches_chi,
    };
    Ok((y, report))
}

/// `f_*` on a G-path: pieces composed with `f`, connectors mapped by `φ`.
pub fn push_forward(f: &EquivariantMap, p: &GPath) -> GPath {
    GPath::new_unchecked(
        p.subdivision.clone(),
        p.pieces.iter().map(|a| a.map(|v| f.map(v))).collect(),
        p.connectors.iter().map(|&k| f.hom(k)).collect(),
    )
}

/// The map of path spaces `α ↦ f ∘ α` induced by an equivariant map.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: Arc<PathSpace>,
    pub target: Arc<PathSpace>,
    pub map: EquivariantMap,
}

pub fn induced_map(f: &EquivariantMap, t: usize) -> Result<InducedMap> {
    let source = Arc::new(PathSpace::new(&f.source, t)?);
    let target = Arc::new(PathSpace::new(&f.target, t)?);
    induced_map_between(f, source, target)
}

pub fn induced_map_between(f: &EquivariantMap, source: Arc<PathSpace>, target: Arc<PathSpace>) -> Result<InducedMap> {
    let carrier_map =
        source.paths().iter().map(|a| target.index_of(&a.map(|v| f.map(v)))).collect::<Result<Vec<_>>>()?;
    let map = EquivariantMap::new(
        Arc::new(source.action().clone()),
        Arc::new(target.action().clone()),
        f.hom.clone(),
        carrier_map,
    )?;
    Ok(InducedMap { source, target, map })
}

/// A G-path in the source of an essential equivalence whose image is
/// isomorphic to a given G-path in the target.
#[derive(Clone, Debug)]
pub struct Lift {
    /// Unit-step lift, one piece per grid step of each original piece.
    pub raw: GPath,
    pub normal_form: GPath,
    /// Tuple of target-group elements carrying the unit-step refinement of
    /// the original G-path to `f_*(raw)`.
    pub witness: GPathArrow,
    /// Element found by `iso_check(f_*(lift), γ)` in the target.
    pub iso_check: Elem,
}

/// Lifts `gamma` along an essential equivalence `f: G⋉X -> H⋉Y`.
pub fn lift_gpath(f: &EquivariantMap, gamma: &GPath) -> Result<Lift> {
    let (src, tgt) = (&*f.source, &*f.target);
    gamma.validate(tgt)?;
    let report = is_essential_equivalence(&f.strict());
    if !report.holds() {
        return Err(Error::Precondition(format!(
            "map is not an essential equivalence (fully faithful: {}, essentially surjective: {})",
            report.fully_faithful, report.essentially_surjective
        )));
    }
    let (g, h) = (src.group(), tgt.group());
    // unit-step cut list
    let mut cuts = vec![0];
    for w in gamma.cuts().windows(2) {
        if w[0] == w[1] {
            cuts.push(w[1]);
        } else {
            cuts.extend(w[0] + 1..=w[1]);
        }
    }
    let refined = refine_to(gamma, &cuts)?;
    let steps = step_table(src.graph());
    let mut pieces = Vec::with_capacity(refined.piece_count());
    let mut hs = Vec::with_capacity(refined.piece_count());
    let mut prev: Option<(Elem, Vertex)> = None;
    for (j, piece) in refined.pieces.iter().enumerate() {
        let y0 = piece.first();
        let y1 = piece.last();
        let try_lift = |hh: Elem, x: Vertex| -> Option<Vertex> {
            if f.map(x) != tgt.act(hh, y0) {
                return None;
            }
            if piece.start() == piece.end() {
                return Some(x);
            }
            steps[x].iter().copied().find(|&x2| f.map(x2) == tgt.act(hh, y1))
        };
        let mut chosen = None;
        if let Some((hp, xp)) = prev {
            if let Some(x2) = try_lift(hp, xp) {
                chosen = Some((hp, xp, x2));
            } else {
                chosen = src.graph().vertices().find_map(|x| try_lift(hp, x).map(|x2| (hp, x, x2)));
            }
        }
        if chosen.is_none() {
            chosen =
                h.elements().find_map(|hh| src.graph().vertices().find_map(|x| try_lift(hh, x).map(|x2| (hh, x, x2))));
        }
        let (hh, x, x2) = chosen
            .ok_or_else(|| Error::Precondition(format!("no local lift of piece {j} ({})", piece.label(tgt.graph()))))?;
        let samples = if piece.start() == piece.end() { vec![x] } else { vec![x, x2] };
        let lifted = DiscretePath::new(src.graph(), piece.start(), samples)?;
        prev = Some((hh, lifted.last()));
        pieces.push(lifted);
        hs.push(hh);
    }
    let mut connectors = Vec::with_capacity(refined.connectors.len());
    for (j, &k) in refined.connectors.iter().enumerate() {
        let need = h.mul(h.mul(hs[j + 1], k), h.inv(hs[j]));
        let (xl, xr) = (pieces[j].last(), pieces[j + 1].first());
        let c = g
            .elements()
            .find(|&c| f.hom(c) == need && src.act(c, xl) == xr)
            .ok_or_else(|| Error::Precondition(format!("no connector lifts {} at cut {j}", h.label(need))))?;
        connectors.push(c);
    }
    let raw = GPath::new(src, GridSubdivision::new(gamma.grid(), cuts)?, pieces, connectors)?;
    let witness = GPathArrow { tuple: hs };
    let image = push_forward(f, &raw);
    if witness.apply(tgt, &refined)? != image {
        return Err(Error::Mismatch("lift witness does not carry the refinement to the image".into()));
    }
    let found = iso_check(tgt, &image, gamma)?.ok_or_else(|| Error::Mismatch("iso_check rejects the lift".into()))?;
    let normal_form = colimit_normal_form(src, &raw);
    Ok(Lift { raw, normal_form, witness, iso_check: found })
}

fn step_table(graph: &SpaceGraph) -> Vec<Vec<Vertex>> {
    graph
        .vertices()
        .map(|v| {
            let mut s = graph.neighbors(v).to_vec();
            s.push(v);
            s.sort_unstable();
            s
        })
        .collect()
}

/// Stay-or-step paths on `[lo, hi]` starting at `v`.
fn paths_from(steps: &[Vec<Vertex>], v: Vertex, lo: usize, hi: usize) -> Vec<DiscretePath> {
    let mut out = Vec::new();
    let mut cur = vec![v];
    fn go(steps: &[Vec<Vertex>], len: usize, lo: usize, cur: &mut Vec<Vertex>, out: &mut Vec<DiscretePath>) {
        if cur.len() == len {
            out.push(DiscretePath::new_unchecked(lo, cur.clone()));
            return;
        }
        for &w in &steps[*cur.last().unwrap()] {
            cur.push(w);
            go(steps, len, lo, cur, out);
            cur.pop();
        }
    }
    go(steps, hi - lo + 1, lo, &mut cur, &mut out);
    out
}

/// Every G-path on `[0, T]` with at most two pieces.
pub fn enumerate_gpaths(action: &GroupAction, t: usize) -> Vec<GPath> {
    let steps = step_table(action.graph());
    let mut out = Vec::new();
    for v in action.graph().vertices() {
        for p in paths_from(&steps, v, 0, t) {
            out.push(GPath::new_unchecked(GridSubdivision::trivial(t), vec![p], Vec::new()));
        }
    }
    for c in 0..=t {
        let sub = GridSubdivision::new(t, vec![0, c, t]).unwrap();
        for v in action.graph().vertices() {
            for first in paths_from(&steps, v, 0, c) {
                for k in action.group().elements() {
                    let w = action.act(k, first.last());
                    for second in paths_from(&steps, w, c, t) {
                        out.push(GPath::new_unchecked(sub.clone(), vec![first.clone(), second], vec![k]));
                    }
                }
            }
        }
    }
    out
}

fn random_walk(rng: &mut impl Rng, steps: &[Vec<Vertex>], v: Vertex, lo: usize, hi: usize) -> DiscretePath {
    let mut samples = vec![v];
    for _ in lo..hi {
        let s = &steps[*samples.last().unwrap()];
        samples.push(s[rng.gen_range(0..s.len())]);
    }
    DiscretePath::new_unchecked(lo, samples)
}

/// A uniformly built random G-path with between 1 and `max_pieces` pieces.
pub fn random_gpath(action: &GroupAction, t: usize, max_pieces: usize, rng: &mut impl Rng) -> GPath {
    let steps = step_table(action.graph());
    let n = rng.gen_range(1..=max_pieces.max(1));
    let mut cuts: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(0..=t)).collect();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(t);
    let mut pieces = Vec::with_capacity(n);
    let mut connectors = Vec::with_capacity(n - 1);
    let mut v = rng.gen_range(0..action.carrier_len());
    for i in 0..n {
        let p = random_walk(rng, &steps, v, cuts[i], cuts[i + 1]);
        if i + 1 < n {
            let k = rng.gen_range(0..action.group().order());
            connectors.push(k);
            v = action.act(k, p.last());
        }
        pieces.push(p);
    }
    GPath::new_unchecked(GridSubdivision::new(t, cuts).unwrap(), pieces, connectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reflection() -> GroupAction {
        GroupAction::from_generators(FiniteGroup::cyclic(2), SpaceGraph::cycle(4), &[(1, vec![0, 3, 2, 1])]).unwrap()
    }

    fn path(a: &GroupAction, start: usize, labels: &[usize]) -> DiscretePath {
        DiscretePath::new(a.graph(), start, labels.to_vec()).unwrap()
    }

    #[test]
    fn refine_splits_with_identity() {
        let a = reflection();
        let p = chi_inverse(&path(&a, 0, &[0, 1, 2]));
        let r = refine(&p, 1, 0).unwrap();
        assert_eq!(r.cuts(), &[0, 1, 2]);
        assert_eq!(r.pieces()[0].samples(), &[0, 1]);
        assert_eq!(r.pieces()[1].samples(), &[1, 2]);
        assert_eq!(r.connectors(), &[0]);
        r.validate(&a).unwrap();
        assert_eq!(colimit_normal_form(&a, &r), p);
        assert!(matches!(refine(&r, 2, 0), Err(Error::CutOutsidePiece { cut: 2, piece: 0, lo: 0, hi: 1 })));
    }

    #[test]
    fn chi_of_reflected_piece() {
        let a = reflection();
        let p = GPath::new(
            &a,
            GridSubdivision::new(2, vec![0, 1, 2]).unwrap(),
            vec![path(&a, 0, &[0, 1]), path(&a, 1, &[3, 2])],
            vec![1],
        )
        .unwrap();
        assert_eq!(chi(&a, &p).samples(), &[0, 1, 2]);
        let w = chi_round_trip_witness(&a, &p).unwrap();
        assert_eq!(w.arrow.tuple, vec![0, 1]);
    }

    #[test]
    fn example_pair_is_equivalent() {
        let a = reflection();
        let left = GPath::new(
            &a,
            GridSubdivision::new(1, vec![0, 1, 1]).unwrap(),
            vec![path(&a, 0, &[0, 1]), path(&a, 1, &[3])],
            vec![1],
        )
        .unwrap();
        let right = chi_inverse(&path(&a, 0, &[0, 1]));
        let w = gpath_equivalent_direct(&a, &left, &right).unwrap().unwrap();
        w.validate(&a).unwrap();
        assert_eq!(iso_check(&a, &left, &right).unwrap(), Some(0));
    }

    #[test]
    fn no_element_maps_0_to_2() {
        let a = reflection();
        let x = chi_inverse(&path(&a, 0, &[0, 1]));
        let y = chi_inverse(&path(&a, 0, &[2, 1]));
        assert_eq!(iso_check(&a, &x, &y).unwrap(), None);
        assert!(gpath_equivalent_direct(&a, &x, &y).unwrap().is_none());
    }

    #[test]
    fn common_refinement_multiplicities() {
        let a = reflection();
        let p = GPath::new(
            &a,
            GridSubdivision::new(2, vec![0, 1, 1, 2]).unwrap(),
            vec![path(&a, 0, &[0, 1]), path(&a, 1, &[3]), path(&a, 1, &[1, 2])],
            vec![1, 1],
        )
        .unwrap();
        let q = chi_inverse(&path(&a, 0, &[0, 1, 2]));
        let cuts = common_cuts(&p, &q);
        assert_eq!(cuts, vec![0, 1, 1, 2]);
        let rq = refine_to(&q, &cuts).unwrap();
        rq.validate(&a).unwrap();
        assert_eq!(rq.connectors(), &[0, 0]);
        assert!(gpath_equivalent_direct(&a, &p, &q).unwrap().is_some());
    }

    #[test]
    fn enumeration_is_valid() {
        let a = reflection();
        let all = enumerate_gpaths(&a, 2);
        assert!(all.iter().all(|p| p.validate(&a).is_ok()));
        // 1-piece: 36; 2-piece: sum over c of 4*3^c * 2 * 3^(2-c) = 3 * 72
        assert_eq!(all.len(), 36 + 216);
    }

    #[test]
    fn y_alpha_on_a_two_piece_path() {
        let a = reflection();
        let p = GPath::new(
            &a,
            GridSubdivision::new(2, vec![0, 1, 2]).unwrap(),
            vec![path(&a, 0, &[0, 1]), path(&a, 1, &[3, 2])],
            vec![1],
        )
        .unwrap();
        let (y, report) = certify_y_alpha(&a, &p).unwrap();
        assert_eq!(y.len(), 6);
        assert!(report.holds(), "{report:?}");
    }
}
