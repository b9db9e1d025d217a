//! Discrete paths on an integer grid, subdivisions of the grid, interval
//! groupoids, and the finite path space `X^I`.

use std::collections::HashMap;

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::graph::{SpaceGraph, Vertex};
use crate::group::Elem;
use crate::groupoid::{ArrowData, FiniteGroupoid};

/// Default cap on the estimated number of enumerated paths.
pub const DEFAULT_PATH_LIMIT: u128 = 1_000_000;

/// A stay-or-step vertex sequence sampled at `start, start+1, ..., end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscretePath {
    start: usize,
    samples: Vec<Vertex>,
}

impl DiscretePath {
    pub fn new(graph: &SpaceGraph, start: usize, samples: Vec<Vertex>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidPath("a path needs at least one sample".into()));
        }
        if let Some(&v) = samples.iter().find(|&&v| v >= graph.len()) {
            return Err(Error::InvalidPath(format!("vertex #{v} does not exist")));
        }
        for (i, w) in samples.windows(2).enumerate() {
            if !graph.adjacent_or_equal(w[0], w[1]) {
                return Err(Error::InvalidPath(format!(
                    "samples {} and {} ({} -> {}) are neither equal nor adjacent",
                    start + i,
                    start + i + 1,
                    graph.label(w[0]),
                    graph.label(w[1])
                )));
            }
        }
        Ok(Self { start, samples })
    }

    /// A path on `[0, T]` given by vertex labels.
    pub fn from_labels(graph: &SpaceGraph, labels: &[&str]) -> Result<Self> {
        let samples = labels.iter().map(|l| graph.index_of(l)).collect::<Result<Vec<_>>>()?;
        Self::new(graph, 0, samples)
    }

    pub(crate) fn new_unchecked(start: usize, samples: Vec<Vertex>) -> Self {
        debug_assert!(!samples.is_empty());
        Self { start, samples }
    }

    pub fn constant(v: Vertex, lo: usize, hi: usize) -> Self {
        assert!(lo <= hi);
        Self { start: lo, samples: vec![v; hi - lo + 1] }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.start + self.samples.len() - 1
    }

    pub fn samples(&self) -> &[Vertex] {
        &self.samples
    }

    /// Sample at absolute grid position `r`.
    pub fn at(&self, r: usize) -> Vertex {
        assert!(r >= self.start && r <= self.end(), "sample {r} outside [{}, {}]", self.start, self.end());
        self.samples[r - self.start]
    }

    pub fn first(&self) -> Vertex {
        self.samples[0]
    }

    pub fn last(&self) -> Vertex {
        *self.samples.last().unwrap()
    }

    pub fn is_valid(&self, graph: &SpaceGraph) -> bool {
        self.samples.iter().all(|&v| v < graph.len())
            && self.samples.windows(2).all(|w| graph.adjacent_or_equal(w[0], w[1]))
    }

    pub fn restrict(&self, lo: usize, hi: usize) -> Result<Self> {
        if lo > hi || lo < self.start || hi > self.end() {
            return Err(Error::InvalidPath(format!(
                "cannot restrict [{}, {}] to [{lo}, {hi}]",
                self.start,
                self.end()
            )));
        }
        Ok(Self { start: lo, samples: self.samples[lo - self.start..=hi - self.start].to_vec() })
    }

    /// Moves the path so that it starts at `start`.
    pub fn shifted(&self, start: usize) -> Self {
        Self { start, samples: self.samples.clone() }
    }

    pub fn label(&self, graph: &SpaceGraph) -> String {
        let parts: Vec<&str> = self.samples.iter().map(|&v| graph.label(v)).collect();
        format!("({})", parts.join(","))
    }

    /// Applies `f` to every sample.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Self {
        Self { start: self.start, samples: self.samples.iter().map(|&v| f(v)).collect() }
    }
}

/// Pointwise action `g · p`.
pub fn act_on_path(action: &GroupAction, g: Elem, p: &DiscretePath) -> DiscretePath {
    p.map(|v| action.act(g, v))
}

/// Concatenation on `[a, c]` of paths on `[a, b]` and `[b, c]`, sharing the sample at `b`.
pub fn concat(graph: &SpaceGraph, p: &DiscretePath, q: &DiscretePath) -> Result<DiscretePath> {
    if p.end() != q.start() || p.last() != q.first() {
        return Err(Error::EndpointMismatch {
            left: graph.label(p.last()).to_string(),
            left_at: p.end(),
            right: graph.label(q.first()).to_string(),
            right_at: q.start(),
        });
    }
    let mut samples = p.samples.clone();
    samples.extend_from_slice(&q.samples[1..]);
    Ok(DiscretePath { start: p.start, samples })
}

/// Cuts `0 = c_0 <= c_1 <= ... <= c_n = T`, repeats allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridSubdivision {
    t: usize,
    cuts: Vec<usize>,
}

impl GridSubdivision {
    pub fn new(t: usize, cuts: Vec<usize>) -> Result<Self> {
        if cuts.len() < 2 || cuts[0] != 0 || *cuts.last().unwrap() != t {
            return Err(Error::InvalidGPath(format!("cuts {cuts:?} must run from 0 to {t}")));
        }
        if cuts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidGPath(format!("cuts {cuts:?} are not monotone")));
        }
        Ok(Self { t, cuts })
    }

    /// The one-piece subdivision `{0, T}`.
    pub fn trivial(t: usize) -> Self {
        Self { t, cuts: vec![0, t] }
    }

    pub fn grid(&self) -> usize {
        self.t
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn pieces(&self) -> usize {
        self.cuts.len() - 1
    }

    /// Tagged samples `(r, i)` with `c_{i-1} <= r <= c_i`, pieces numbered from 1,
    /// in piece-then-sample order.
    pub fn tagged_samples(&self) -> Vec<(usize, usize)> {
        (1..=self.pieces()).flat_map(|i| (self.cuts[i - 1]..=self.cuts[i]).map(move |r| (r, i))).collect()
    }
}

/// Label of a tagged sample.
pub fn tagged_label(r: usize, i: usize) -> String {
    format!("({r},{i})")
}

/// The thin groupoid on tagged samples: `(r,i) -> (r,j)` exists iff every cut
/// between pieces `i` and `j` equals `r`.
pub fn interval_groupoid(s: &GridSubdivision) -> FiniteGroupoid {
    let objects = s.tagged_samples();
    let labels: Vec<String> = objects.iter().map(|&(r, i)| tagged_label(r, i)).collect();
    let linked =
        |(r, i): (usize, usize), (r2, j): (usize, usize)| r == r2 && (i.min(j)..i.max(j)).all(|k| s.cuts[k] == r);
    let mut arrows = Vec::new();
    let mut between: HashMap<(usize, usize), usize> = HashMap::new();
    for (a, &oa) in objects.iter().enumerate() {
        for (b, &ob) in objects.iter().enumerate() {
            if linked(oa, ob) {
                between.insert((a, b), arrows.len());
                arrows.push(ArrowData { label: format!("{}>{}", labels[a], labels[b]), src: a, tgt: b });
            }
        }
    }
    let unit = (0..objects.len()).map(|a| between[&(a, a)]).collect();
    let inverse = arrows.iter().map(|ar| between[&(ar.tgt, ar.src)]).collect();
    let mut comp = HashMap::new();
    for (x, ax) in arrows.iter().enumerate() {
        for (y, ay) in arrows.iter().enumerate() {
            if ax.tgt == ay.src {
                comp.insert((y, x), between[&(ax.src, ay.tgt)]);
            }
        }
    }
    FiniteGroupoid::from_parts(labels, arrows, unit, inverse, comp).expect("interval groupoid is well formed")
}

/// `|V| * (maxdeg + 1)^T`, saturating.
pub fn path_count_estimate(graph: &SpaceGraph, t: usize) -> u128 {
    let base = graph.max_degree() as u128 + 1;
    let mut est = graph.len() as u128;
    for _ in 0..t {
        est = est.saturating_mul(base);
    }
    est
}

/// All stay-or-step paths on `[0, T]`, in lexicographic order of samples.
pub fn enumerate_paths(graph: &SpaceGraph, t: usize, limit: u128) -> Result<Vec<DiscretePath>> {
    let estimate = path_count_estimate(graph, t);
    if estimate > limit {
        return Err(Error::BoundExceeded { estimate, limit });
    }
    let steps: Vec<Vec<Vertex>> = graph
        .vertices()
        .map(|v| {
            let mut s = graph.neighbors(v).to_vec();
            s.push(v);
            s.sort_unstable();
            s
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(t + 1);
    fn extend(steps: &[Vec<Vertex>], t: usize, current: &mut Vec<Vertex>, out: &mut Vec<DiscretePath>) {
        if current.len() == t + 1 {
            out.push(DiscretePath { start: 0, samples: current.clone() });
            return;
        }
        let last = *current.last().unwrap();
        for &w in &steps[last] {
            current.push(w);
            extend(steps, t, current, out);
            current.pop();
        }
    }
    for v in graph.vertices() {
        current.push(v);
        extend(&steps, t, &mut current, &mut out);
        current.pop();
    }
    Ok(out)
}

/// The finite path space `X^I` on grid `T`, with `G` acting pointwise. Its
/// graph joins two paths when they are pointwise equal-or-adjacent.
#[derive(Clone, Debug)]
pub struct PathSpace {
    base: GroupAction,
    t: usize,
    paths: Vec<DiscretePath>,
    index: HashMap<Vec<Vertex>, usize>,
    action: GroupAction,
}

impl PathSpace {
    pub fn new(base: &GroupAction, t: usize) -> Result<Self> {
        Self::with_limit(base, t, DEFAULT_PATH_LIMIT)
    }

    pub fn with_limit(base: &GroupAction, t: usize, limit: u128) -> Result<Self> {
        let graph = base.graph();
        let paths = enumerate_paths(graph, t, limit)?;
        let index: HashMap<Vec<Vertex>, usize> =
            paths.iter().enumerate().map(|(i, p)| (p.samples.clone(), i)).collect();
        let labels: Vec<String> = paths.iter().map(|p| p.label(graph)).collect();
        let mut edges = Vec::new();
        for (i, p) in paths.iter().enumerate() {
            for (j, q) in paths.iter().enumerate().skip(i + 1) {
                if p.samples.iter().zip(&q.samples).all(|(&a, &b)| graph.adjacent_or_equal(a, b)) {
                    edges.push((i, j));
                }
            }
        }
        let path_graph = SpaceGraph::from_indices(labels, &edges)?;
        let group = base.group().clone();
        let mut table = Vec::with_capacity(group.order() * paths.len());
        for g in group.elements() {
            for p in &paths {
                table.push(index[&act_on_path(base, g, p).samples]);
            }
        }
        let action = GroupAction::from_table_unchecked(group, path_graph, table);
        Ok(Self { base: base.clone(), t, paths, index, action })
    }

    pub fn base(&self) -> &GroupAction {
        &self.base
    }

    pub fn grid(&self) -> usize {
        self.t
    }

    pub fn paths(&self) -> &[DiscretePath] {
        &self.paths
    }

    pub fn path(&self, i: usize) -> &DiscretePath {
        &self.paths[i]
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Index of a path on `[0, T]`.
    pub fn index_of(&self, p: &DiscretePath) -> Result<usize> {
        if p.start != 0 || p.samples.len() != self.t + 1 {
            return Err(Error::InvalidPath(format!(
                "path on [{}, {}] is not on the grid [0, {}]",
                p.start,
                p.end(),
                self.t
            )));
        }
        self.index
            .get(&p.samples)
            .copied()
            .ok_or_else(|| Error::InvalidPath(format!("{} is not a stay-or-step path", p.label(self.base.graph()))))
    }

    /// `G` acting on the path set.
    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn groupoid(&self) -> FiniteGroupoid {
        FiniteGroupoid::translation(&self.action)
    }
}

/// `G ⋉ X^I` on grid `T`.
pub fn free_path_translation_groupoid(action: &GroupAction, t: usize) -> Result<(PathSpace, FiniteGroupoid)> {
    let ps = PathSpace::new(action, t)?;
    let g = ps.groupoid();
    Ok((ps, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn reflection() -> GroupAction {
        GroupAction::from_generators(FiniteGroup::cyclic(2), SpaceGraph::cycle(4), &[(1, vec![0, 3, 2, 1])]).unwrap()
    }

    #[test]
    fn action_on_paths() {
        let a = reflection();
        let p = DiscretePath::from_labels(a.graph(), &["0", "1", "2"]).unwrap();
        assert_eq!(act_on_path(&a, 1, &p).samples(), &[0, 3, 2]);
        assert_eq!(act_on_path(&a, 0, &p), p);
    }

    #[test]
    fn concat_and_mismatch() {
        let c4 = SpaceGraph::cycle(4);
        let p = DiscretePath::new(&c4, 0, vec![0, 1]).unwrap();
        let q = DiscretePath::new(&c4, 1, vec![1, 2]).unwrap();
        assert_eq!(concat(&c4, &p, &q).unwrap().samples(), &[0, 1, 2]);
        let r = DiscretePath::new(&c4, 1, vec![2, 3]).unwrap();
        assert!(matches!(concat(&c4, &p, &r), Err(Error::EndpointMismatch { .. })));
    }

    #[test]
    fn path_counts() {
        assert_eq!(enumerate_paths(&SpaceGraph::point(), 5, DEFAULT_PATH_LIMIT).unwrap().len(), 1);
        assert_eq!(enumerate_paths(&SpaceGraph::cycle(4), 1, DEFAULT_PATH_LIMIT).unwrap().len(), 12);
        assert_eq!(enumerate_paths(&SpaceGraph::cycle(6), 2, DEFAULT_PATH_LIMIT).unwrap().len(), 54);
        assert!(matches!(
            enumerate_paths(&SpaceGraph::cycle(6), 20, DEFAULT_PATH_LIMIT),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn interval_groupoids() {
        let g = interval_groupoid(&GridSubdivision::trivial(3));
        assert_eq!((g.object_count(), g.arrow_count()), (4, 4));
        let s2 = interval_groupoid(&GridSubdivision::new(2, vec![0, 1, 2]).unwrap());
        assert_eq!(s2.object_labels(), &["(0,1)", "(1,1)", "(1,2)", "(2,2)"]);
        assert_eq!(s2.arrow_count(), 6);
        s2.validate().unwrap();
        let deg = interval_groupoid(&GridSubdivision::new(2, vec![0, 2, 2]).unwrap());
        deg.validate().unwrap();
        assert!(deg.is_thin());
        let a = deg.object_index("(2,1)").unwrap();
        let b = deg.object_index("(2,2)").unwrap();
        assert_eq!(deg.hom(a, b).len(), 1);
    }

    #[test]
    fn reflection_path_groupoid() {
        let (ps, g) = free_path_translation_groupoid(&reflection(), 1).unwrap();
        assert_eq!(ps.len(), 12);
        assert_eq!(g.arrow_count(), 24);
        g.validate().unwrap();
        ps.action().validate().unwrap();
    }
}
