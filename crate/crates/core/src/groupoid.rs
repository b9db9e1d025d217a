//! Finite groupoids with explicit object and arrow sets.

use std::collections::HashMap;

use serde::Serialize;

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

pub type Object = usize;
pub type Arrow = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowData {
    pub label: String,
    pub src: Object,
    pub tgt: Object,
}

/// A groupoid with finitely many objects and arrows. Composition is stored
/// for every composable pair; `comp[(b, a)]` is `b ∘ a` (first `a`, then `b`).
#[derive(Clone, Debug)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    object_index: HashMap<String, Object>,
    arrows: Vec<ArrowData>,
    arrow_index: HashMap<String, Arrow>,
    unit: Vec<Arrow>,
    inverse: Vec<Arrow>,
    comp: HashMap<(Arrow, Arrow), Arrow>,
    outgoing: Vec<Vec<Arrow>>,
}

impl FiniteGroupoid {
    /// Assembles a groupoid from its parts. Only shape is checked here; call
    /// [`FiniteGroupoid::validate`] for the axioms.
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<ArrowData>,
        unit: Vec<Arrow>,
        inverse: Vec<Arrow>,
        comp: HashMap<(Arrow, Arrow), Arrow>,
    ) -> Result<Self> {
        let object_index: HashMap<String, Object> = objects.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        if object_index.len() != objects.len() {
            return Err(Error::InvalidGroupoid("duplicate object label".into()));
        }
        let arrow_index: HashMap<String, Arrow> =
            arrows.iter().enumerate().map(|(i, a)| (a.label.clone(), i)).collect();
        if arrow_index.len() != arrows.len() {
            return Err(Error::InvalidGroupoid("duplicate arrow label".into()));
        }
        if unit.len() != objects.len() || inverse.len() != arrows.len() {
            return Err(Error::InvalidGroupoid("unit or inverse table has the wrong length".into()));
        }
        let n = objects.len();
        let m = arrows.len();
        if arrows.iter().any(|a| a.src >= n || a.tgt >= n)
            || unit.iter().any(|&u| u >= m)
            || inverse.iter().any(|&i| i >= m)
            || comp.iter().any(|(&(b, a), &c)| a >= m || b >= m || c >= m)
        {
            return Err(Error::InvalidGroupoid("index out of range".into()));
        }
        let mut outgoing = vec![Vec::new(); n];
        for (i, a) in arrows.iter().enumerate() {
            outgoing[a.src].push(i);
        }
        Ok(Self { objects, object_index, arrows, arrow_index, unit, inverse, comp, outgoing })
    }

    /// The translation groupoid `G ⋉ X`: arrow `(g, x): x -> gx` has index
    /// `g * |X| + x` and label `(g,x)`.
    pub fn translation(action: &GroupAction) -> Self {
        let group = action.group();
        let graph = action.graph();
        let n = graph.len();
        let idx = |g: Elem, x: usize| g * n + x;
        let mut arrows = Vec::with_capacity(group.order() * n);
        for g in group.elements() {
            for x in graph.vertices() {
                arrows.push(ArrowData {
                    label: format!("({},{})", group.label(g), graph.label(x)),
                    src: x,
                    tgt: action.act(g, x),
                });
            }
        }
        let unit = graph.vertices().map(|x| idx(0, x)).collect();
        let inverse = arrows.iter().enumerate().map(|(i, a)| idx(group.inv(i / n), a.tgt)).collect();
        let mut comp = HashMap::with_capacity(arrows.len() * group.order());
        for g in group.elements() {
            for x in graph.vertices() {
                let gx = action.act(g, x);
                for h in group.elements() {
                    comp.insert((idx(h, gx), idx(g, x)), idx(group.mul(h, g), x));
                }
            }
        }
        Self::from_parts(graph.labels().to_vec(), arrows, unit, inverse, comp)
            .expect("translation groupoid is well formed")
    }

    pub fn standard(kind: &StandardKind) -> Result<Self> {
        Ok(Self::translation(&kind.action()?))
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> std::ops::Range<Object> {
        0..self.objects.len()
    }

    pub fn arrows(&self) -> std::ops::Range<Arrow> {
        0..self.arrows.len()
    }

    pub fn object_label(&self, x: Object) -> &str {
        &self.objects[x]
    }

    pub fn object_labels(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow_label(&self, a: Arrow) -> &str {
        &self.arrows[a].label
    }

    pub fn object_index(&self, label: &str) -> Result<Object> {
        self.object_index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn arrow_index(&self, label: &str) -> Result<Arrow> {
        self.arrow_index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn src(&self, a: Arrow) -> Object {
        self.arrows[a].src
    }

    pub fn tgt(&self, a: Arrow) -> Object {
        self.arrows[a].tgt
    }

    pub fn unit(&self, x: Object) -> Arrow {
        self.unit[x]
    }

    pub fn inv(&self, a: Arrow) -> Arrow {
        self.inverse[a]
    }

    /// `b ∘ a`, defined when `tgt(a) = src(b)`.
    pub fn comp(&self, b: Arrow, a: Arrow) -> Option<Arrow> {
        self.comp.get(&(b, a)).copied()
    }

    /// Like [`FiniteGroupoid::comp`] but for pairs already known to compose.
    pub fn compose(&self, b: Arrow, a: Arrow) -> Arrow {
        self.comp(b, a)
            .unwrap_or_else(|| panic!("arrows {} and {} do not compose", self.arrow_label(b), self.arrow_label(a)))
    }

    pub fn outgoing(&self, x: Object) -> &[Arrow] {
        &self.outgoing[x]
    }

    pub fn hom(&self, x: Object, y: Object) -> Vec<Arrow> {
        self.outgoing[x].iter().copied().filter(|&a| self.tgt(a) == y).collect()
    }

    /// At most one arrow between any two objects.
    pub fn is_thin(&self) -> bool {
        self.objects().all(|x| {
            let mut t: Vec<Object> = self.outgoing[x].iter().map(|&a| self.tgt(a)).collect();
            let len = t.len();
            t.sort_unstable();
            t.dedup();
            t.len() == len
        })
    }

    /// Exhaustive check of every groupoid axiom.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGroupoid(m));
        for x in self.objects() {
            let u = self.unit(x);
            if self.src(u) != x || self.tgt(u) != x {
                return bad(format!("unit at {} is not an endo-arrow", self.objects[x]));
            }
        }
        let mut expected = 0usize;
        for x in self.objects() {
            let incoming = self.arrows.iter().filter(|a| a.tgt == x).count();
            expected += incoming * self.outgoing[x].len();
        }
        for (&(b, a), &c) in &self.comp {
            if self.tgt(a) != self.src(b) {
                return bad(format!(
                    "composite {} ∘ {} stored for a non-composable pair",
                    self.arrow_label(b),
                    self.arrow_label(a)
                ));
            }
            if self.src(c) != self.src(a) || self.tgt(c) != self.tgt(b) {
                return bad(format!(
                    "composite {} ∘ {} has the wrong endpoints",
                    self.arrow_label(b),
                    self.arrow_label(a)
                ));
            }
        }
        if self.comp.len() != expected {
            return bad(format!("composition defined on {} pairs, expected {expected}", self.comp.len()));
        }
        for a in self.arrows() {
            let (s, t) = (self.src(a), self.tgt(a));
            if self.comp(self.unit(t), a) != Some(a) || self.comp(a, self.unit(s)) != Some(a) {
                return bad(format!("units fail at {}", self.arrow_label(a)));
            }
            let i = self.inv(a);
            if self.comp(i, a) != Some(self.unit(s)) || self.comp(a, i) != Some(self.unit(t)) {
                return bad(format!("inverse fails at {}", self.arrow_label(a)));
            }
        }
        for a in self.arrows() {
            for &b in &self.outgoing[self.tgt(a)] {
                let ba = self.compose(b, a);
                for &c in &self.outgoing[self.tgt(b)] {
                    if self.compose(c, ba) != self.compose(self.compose(c, b), a) {
                        return bad(format!(
                            "composition not associative on {}, {}, {}",
                            self.arrow_label(a),
                            self.arrow_label(b),
                            self.arrow_label(c)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Endo-arrows at `x`, ascending.
    pub fn isotropy_arrows(&self, x: Object) -> Vec<Arrow> {
        self.hom(x, x)
    }

    /// The isotropy group at `x`, labelled by arrow labels.
    pub fn isotropy(&self, x: Object) -> Result<FiniteGroup> {
        if x >= self.object_count() {
            return Err(Error::UnknownLabel(format!("object #{x}")));
        }
        let endo = self.isotropy_arrows(x);
        let pos: HashMap<Arrow, usize> = endo.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let table = endo.iter().map(|&a| endo.iter().map(|&b| pos[&self.compose(a, b)]).collect()).collect();
        FiniteGroup::from_table(endo.iter().map(|&a| self.arrow_label(a).to_string()).collect(), table)
    }

    /// Connected components as sorted object lists, ordered by smallest object.
    pub fn components(&self) -> Vec<Vec<Object>> {
        let mut parent: Vec<usize> = self.objects().collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in &self.arrows {
            let (r1, r2) = (find(&mut parent, a.src), find(&mut parent, a.tgt));
            if r1 != r2 {
                parent[r1.max(r2)] = r1.min(r2);
            }
        }
        let mut groups: HashMap<usize, Vec<Object>> = HashMap::new();
        for x in self.objects() {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        let mut out: Vec<Vec<Object>> = groups.into_values().collect();
        out.sort_by_key(|c| c[0]);
        out
    }

    /// One entry per component, represented by its lexicographically
    /// smallest object label, ordered by that label.
    pub fn skeleton(&self) -> Vec<SkeletonEntry> {
        let mut out: Vec<SkeletonEntry> = self
            .components()
            .into_iter()
            .map(|members| {
                let rep = *members.iter().min_by(|&&a, &&b| self.objects[a].cmp(&self.objects[b])).unwrap();
                SkeletonEntry {
                    representative: rep,
                    label: self.objects[rep].clone(),
                    isotropy: self.isotropy(rep).expect("endo-arrows form a group"),
                    members,
                }
            })
            .collect();
        out.sort_by(|a, b| a.label.cmp(&b.label));
        out
    }
}

#[derive(Clone, Debug)]
pub struct SkeletonEntry {
    pub representative: Object,
    pub label: String,
    pub members: Vec<Object>,
    pub isotropy: FiniteGroup,
}

/// Compact serializable form of a skeleton entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonSummary {
    pub representative: String,
    pub size: usize,
    pub isotropy_order: usize,
}

impl From<&SkeletonEntry> for SkeletonSummary {
    fn from(e: &SkeletonEntry) -> Self {
        Self { representative: e.label.clone(), size: e.members.len(), isotropy_order: e.isotropy.order() }
    }
}

/// The example groupoids, each realised as a translation groupoid.
#[derive(Clone, Debug)]
pub enum StandardKind {
    Unit(Vec<String>),
    Point(FiniteGroup),
    Multiplication { group: FiniteGroup, subgroup: Vec<Elem> },
    Conjugation { group: FiniteGroup, subgroup: Vec<Elem> },
}

impl StandardKind {
    pub fn action(&self) -> Result<GroupAction> {
        match self {
            StandardKind::Unit(labels) => GroupAction::unit(labels.clone()),
            StandardKind::Point(g) => Ok(GroupAction::point(g.clone())),
            StandardKind::Multiplication { group, subgroup } => GroupAction::multiplication(group, subgroup),
            StandardKind::Conjugation { group, subgroup } => GroupAction::conjugation(group, subgroup),
        }
    }
}

pub fn standard_groupoid(kind: &StandardKind) -> Result<FiniteGroupoid> {
    FiniteGroupoid::standard(kind)
}

pub fn translation_groupoid(action: &GroupAction) -> FiniteGroupoid {
    FiniteGroupoid::translation(action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SpaceGraph;

    fn reflection() -> GroupAction {
        GroupAction::from_generators(FiniteGroup::cyclic(2), SpaceGraph::cycle(4), &[(1, vec![0, 3, 2, 1])]).unwrap()
    }

    #[test]
    fn point_z2_has_one_object_two_endo_arrows() {
        let g = FiniteGroupoid::translation(&GroupAction::point(FiniteGroup::cyclic(2)));
        assert_eq!((g.object_count(), g.arrow_count()), (1, 2));
        assert!(g.arrows().all(|a| g.src(a) == 0 && g.tgt(a) == 0));
        g.validate().unwrap();
    }

    #[test]
    fn reflection_groupoid() {
        let g = FiniteGroupoid::translation(&reflection());
        assert_eq!(g.arrow_count(), 8);
        let a = g.arrow_index("(g,1)").unwrap();
        assert_eq!(g.object_label(g.tgt(a)), "3");
        g.validate().unwrap();
        assert_eq!(g.isotropy(0).unwrap().order(), 2);
        assert_eq!(g.isotropy(1).unwrap().order(), 1);
        let sk: Vec<(String, usize)> = g.skeleton().iter().map(|e| (e.label.clone(), e.isotropy.order())).collect();
        assert_eq!(sk, vec![("0".into(), 2), ("1".into(), 1), ("2".into(), 2)]);
    }

    #[test]
    fn unit_and_conjugation() {
        let u = standard_groupoid(&StandardKind::Unit(vec!["a".into(), "b".into()])).unwrap();
        assert_eq!((u.object_count(), u.arrow_count()), (2, 2));
        let s3 = FiniteGroup::symmetric(3);
        let s = s3.index_of("s").unwrap();
        let c = standard_groupoid(&StandardKind::Conjugation { group: s3.clone(), subgroup: vec![0, s] }).unwrap();
        assert_eq!((c.object_count(), c.arrow_count()), (6, 12));
        c.validate().unwrap();
        let bad = standard_groupoid(&StandardKind::Multiplication { group: s3, subgroup: vec![s] });
        assert!(matches!(bad, Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn validate_catches_broken_inverse() {
        let g = FiniteGroupoid::translation(&GroupAction::point(FiniteGroup::cyclic(3)));
        let mut broken = g.clone();
        broken.inverse[1] = 1;
        assert!(broken.validate().is_err());
    }
}
