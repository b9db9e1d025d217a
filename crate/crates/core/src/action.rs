//! Finite groups acting on graphs by automorphisms.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{SpaceGraph, Vertex};
use crate::group::{Elem, FiniteGroup, ProductGroup};

/// A left action of a finite group on the vertices of a graph, by graph
/// automorphisms. A plain set is an edgeless graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    graph: SpaceGraph,
    // table[g * |X| + x] = g x
    table: Vec<Vertex>,
}

/// The space-module name for an action on a graph.
pub type GraphAction = GroupAction;

impl GroupAction {
    /// Builds an action from a full table `act(g, x)` and checks the action
    /// laws and that every element is a graph automorphism.
    pub fn new(group: FiniteGroup, graph: SpaceGraph, act: impl Fn(Elem, Vertex) -> Vertex) -> Result<Self> {
        let n = graph.len();
        let mut table = Vec::with_capacity(group.order() * n);
        for g in group.elements() {
            for x in graph.vertices() {
                let y = act(g, x);
                if y >= n {
                    return Err(Error::InvalidAction(format!(
                        "{} sends {} outside the carrier",
                        group.label(g),
                        graph.label(x)
                    )));
                }
                table.push(y);
            }
        }
        let action = Self { group, graph, table };
        action.validate()?;
        Ok(action)
    }

    /// Builds an action from vertex permutations for a generating set,
    /// extending along words. Fails if the images are inconsistent or the
    /// listed elements do not generate the group.
    pub fn from_generators(group: FiniteGroup, graph: SpaceGraph, images: &[(Elem, Vec<Vertex>)]) -> Result<Self> {
        let n = graph.len();
        for (s, perm) in images {
            if perm.len() != n {
                return Err(Error::InvalidAction(format!(
                    "image of {} has {} entries, expected {n}",
                    group.label(*s),
                    perm.len()
                )));
            }
        }
        let mut known: Vec<Option<Vec<Vertex>>> = vec![None; group.order()];
        known[0] = Some(graph.vertices().collect());
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (s, perm) in images {
                let y = group.mul(x, *s);
                // (x s) v = x (s v)
                let base = known[x].as_ref().unwrap();
                let img: Vec<Vertex> = perm.iter().map(|&v| base[v]).collect();
                match &known[y] {
                    None => {
                        known[y] = Some(img);
                        queue.push_back(y);
                    }
                    Some(prev) if *prev != img => {
                        return Err(Error::InvalidAction(format!(
                            "generator images are inconsistent at {}",
                            group.label(y)
                        )));
                    }
                    _ => {}
                }
            }
        }
        if known.iter().any(Option::is_none) {
            return Err(Error::InvalidAction("listed elements do not generate the group".into()));
        }
        let table: Vec<Vertex> = known.into_iter().flatten().flatten().collect();
        let action = Self { group, graph, table };
        action.validate()?;
        Ok(action)
    }

    /// Exhaustive check of identity, compatibility and the automorphism condition.
    pub fn validate(&self) -> Result<()> {
        let (g_ord, n) = (self.group.order(), self.graph.len());
        if self.table.len() != g_ord * n || self.table.iter().any(|&y| y >= n) {
            return Err(Error::InvalidAction("action table has the wrong shape".into()));
        }
        for x in self.graph.vertices() {
            if self.act(0, x) != x {
                return Err(Error::InvalidAction(format!("identity moves {}", self.graph.label(x))));
            }
        }
        for g in self.group.elements() {
            for h in self.group.elements() {
                for x in self.graph.vertices() {
                    if self.act(g, self.act(h, x)) != self.act(self.group.mul(g, h), x) {
                        return Err(Error::InvalidAction(format!(
                            "g(hx) != (gh)x for g={}, h={}, x={}",
                            self.group.label(g),
                            self.group.label(h),
                            self.graph.label(x)
                        )));
                    }
                }
            }
            for &(a, b) in self.graph.edges() {
                if !self.graph.is_adjacent(self.act(g, a), self.act(g, b)) {
                    return Err(Error::InvalidAction(format!(
                        "{} does not preserve the edge {}-{}",
                        self.group.label(g),
                        self.graph.label(a),
                        self.graph.label(b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The trivial action of `group` on `graph`.
    pub fn trivial(group: FiniteGroup, graph: SpaceGraph) -> Self {
        let table = group.elements().flat_map(|_| graph.vertices()).collect();
        Self { group, graph, table }
    }

    /// The unit groupoid's action: trivial group on a discrete set.
    pub fn unit(labels: Vec<String>) -> Result<Self> {
        Ok(Self::trivial(FiniteGroup::trivial(), SpaceGraph::discrete(labels)?))
    }

    /// `G` acting on a single point `•`.
    pub fn point(group: FiniteGroup) -> Self {
        Self::trivial(group, SpaceGraph::point())
    }

    /// `H` acting on `G` by left multiplication, for `H` given as a subset of `G`.
    pub fn multiplication(group: &FiniteGroup, subgroup: &[Elem]) -> Result<Self> {
        let (h, emb) = group.subgroup(subgroup)?;
        let carrier = SpaceGraph::discrete(group.labels().to_vec())?;
        Self::new(h, carrier, |a, x| group.mul(emb[a], x))
    }

    /// `H` acting on `G` by conjugation `h x h^-1`.
    pub fn conjugation(group: &FiniteGroup, subgroup: &[Elem]) -> Result<Self> {
        let (h, emb) = group.subgroup(subgroup)?;
        let carrier = SpaceGraph::discrete(group.labels().to_vec())?;
        Self::new(h, carrier, |a, x| group.conj(emb[a], x))
    }

    /// `G x H` acting coordinatewise on the strong product graph.
    pub fn product(&self, other: &GroupAction) -> (Self, ProductGroup) {
        let pg = self.group.product(&other.group);
        let graph = self.graph.strong_product(&other.graph);
        let m = other.graph.len();
        let mut table = Vec::with_capacity(pg.group.order() * graph.len());
        for p in pg.group.elements() {
            let (g, h) = pg.split(p);
            for v in graph.vertices() {
                table.push(self.act(g, v / m) * m + other.act(h, v % m));
            }
        }
        (Self { group: pg.group.clone(), graph, table }, pg)
    }

    /// Builds an action whose table is known to satisfy the laws.
    pub(crate) fn from_table_unchecked(group: FiniteGroup, graph: SpaceGraph, table: Vec<Vertex>) -> Self {
        debug_assert_eq!(table.len(), group.order() * graph.len());
        Self { group, graph, table }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn graph(&self) -> &SpaceGraph {
        &self.graph
    }

    pub fn carrier_len(&self) -> usize {
        self.graph.len()
    }

    pub fn act(&self, g: Elem, x: Vertex) -> Vertex {
        self.table[g * self.graph.len() + x]
    }

    pub fn orbit(&self, x: Vertex) -> Vec<Vertex> {
        let mut o: Vec<Vertex> = self.group.elements().map(|g| self.act(g, x)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// Orbits as sorted vertex lists, ordered by smallest vertex.
    pub fn orbits(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.carrier_len()];
        let mut out = Vec::new();
        for x in self.graph.vertices() {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn stabilizer(&self, x: Vertex) -> Vec<Elem> {
        self.group.elements().filter(|&g| self.act(g, x) == x).collect()
    }

    /// Every stabilizer is trivial.
    pub fn is_free(&self) -> bool {
        self.graph.vertices().all(|x| self.stabilizer(x).len() == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reflection() -> GroupAction {
        GroupAction::from_generators(FiniteGroup::cyclic(2), SpaceGraph::cycle(4), &[(1, vec![0, 3, 2, 1])]).unwrap()
    }

    #[test]
    fn reflection_orbits_and_stabilizers() {
        let a = reflection();
        assert_eq!(a.orbits(), vec![vec![0], vec![1, 3], vec![2]]);
        assert_eq!(a.stabilizer(0), vec![0, 1]);
        assert_eq!(a.stabilizer(1), vec![0]);
        assert!(!a.is_free());
    }

    #[test]
    fn rejects_non_automorphism() {
        // swapping 0 and 1 on C4 breaks the edge 1-2
        let r = GroupAction::from_generators(FiniteGroup::cyclic(2), SpaceGraph::cycle(4), &[(1, vec![1, 0, 2, 3])]);
        assert!(matches!(r, Err(Error::InvalidAction(_))));
    }

    #[test]
    fn rejects_inconsistent_generators() {
        // a 3-cycle image for an element of order 2
        let r = GroupAction::from_generators(
            FiniteGroup::cyclic(2),
            SpaceGraph::discrete(vec!["a".into(), "b".into(), "c".into()]).unwrap(),
            &[(1, vec![1, 2, 0])],
        );
        assert!(r.is_err());
    }

    #[test]
    fn conjugation_and_multiplication() {
        let s3 = FiniteGroup::symmetric(3);
        let conj = GroupAction::conjugation(&s3, &s3.elements().collect::<Vec<_>>()).unwrap();
        assert_eq!(conj.orbits().len(), 3);
        let mult = GroupAction::multiplication(&s3, &s3.elements().collect::<Vec<_>>()).unwrap();
        assert!(mult.is_free());
        assert_eq!(mult.orbits().len(), 1);
    }

    #[test]
    fn product_action_is_valid() {
        let a = reflection();
        let (p, pg) = a.product(&a);
        p.validate().unwrap();
        assert_eq!(pg.group.order(), 4);
        assert_eq!(p.carrier_len(), 16);
    }
}
