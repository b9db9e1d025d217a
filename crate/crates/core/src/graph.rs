//! Finite simple graphs standing in for the space being acted on.
//!
//! Staying in place is modelled by repeated samples in a path, so graphs
//! never carry self-loops.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Vertex index into a [`SpaceGraph`].
pub type Vertex = usize;

/// Characters reserved by the structured labels the crate builds itself
/// (`(a,b)`, `(0,1,2)`, `(k;g;l)`), so user-facing labels may not use them.
pub const RESERVED_LABEL_CHARS: &[char] = &['(', ')', ',', ';', '|', '[', ']', '>'];

/// Rejects labels that would be ambiguous inside a structured label.
pub fn check_atom_label(label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(Error::InvalidGraph("empty label".into()));
    }
    if let Some(c) = label.chars().find(|c| c.is_whitespace() || RESERVED_LABEL_CHARS.contains(c)) {
        return Err(Error::InvalidGraph(format!("label `{label}` contains reserved character {c:?}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceGraph {
    labels: Vec<String>,
    index: HashMap<String, Vertex>,
    adjacency: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl SpaceGraph {
    pub fn new(vertices: Vec<String>, edges: &[(String, String)]) -> Result<Self> {
        let index: HashMap<String, Vertex> = vertices.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        if index.len() != vertices.len() {
            return Err(Error::InvalidGraph("duplicate vertex label".into()));
        }
        let mut numeric = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let ia = *index.get(a).ok_or_else(|| Error::UnknownLabel(a.clone()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownLabel(b.clone()))?;
            numeric.push((ia, ib));
        }
        Self::from_indices(vertices, &numeric)
    }

    pub fn from_indices(vertices: Vec<String>, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let n = vertices.len();
        if vertices.iter().any(|l| l.is_empty()) {
            return Err(Error::InvalidGraph("empty vertex label".into()));
        }
        let index: HashMap<String, Vertex> = vertices.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        if index.len() != n {
            return Err(Error::InvalidGraph("duplicate vertex label".into()));
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) references a missing vertex")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at `{}`", vertices[a])));
            }
            let e = (a.min(b), a.max(b));
            if !list.contains(&e) {
                list.push(e);
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        list.sort_unstable();
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        Ok(Self { labels: vertices, index, adjacency, edges: list })
    }

    /// Graph with no edges.
    pub fn discrete(vertices: Vec<String>) -> Result<Self> {
        Self::from_indices(vertices, &[])
    }

    /// Single vertex labelled `•`.
    pub fn point() -> Self {
        Self::discrete(vec!["•".into()]).unwrap()
    }

    /// Cycle graph on vertices `0..n`, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_indices((0..n).map(|i| i.to_string()).collect(), &edges).unwrap()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.len()
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<Vertex> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn is_adjacent(&self, a: Vertex, b: Vertex) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// The stay-or-step relation.
    pub fn adjacent_or_equal(&self, a: Vertex, b: Vertex) -> bool {
        a == b || self.is_adjacent(a, b)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Strong product: `(a,b) ~ (a',b')` when both coordinates are equal or
    /// adjacent and the pairs differ. Vertex `(a,b)` has index `a * |other| + b`.
    pub fn strong_product(&self, other: &SpaceGraph) -> SpaceGraph {
        let m = other.len();
        let labels = self.labels.iter().flat_map(|a| other.labels.iter().map(move |b| format!("({a},{b})"))).collect();
        let mut edges = Vec::new();
        for a in self.vertices() {
            for b in other.vertices() {
                for a2 in self.vertices().filter(|&a2| self.adjacent_or_equal(a, a2)) {
                    for b2 in other.vertices().filter(|&b2| other.adjacent_or_equal(b, b2)) {
                        let (u, v) = (a * m + b, a2 * m + b2);
                        if u < v {
                            edges.push((u, v));
                        }
                    }
                }
            }
        }
        Self::from_indices(labels, &edges).expect("product labels are distinct")
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for start in self.vertices() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut i = 0;
            while i < members.len() {
                for &w in &self.adjacency[members[i]] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.len() <= 1 || self.components().len() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_basics() {
        let c4 = SpaceGraph::cycle(4);
        assert_eq!(c4.edges().len(), 4);
        assert!(c4.is_adjacent(0, 3));
        assert!(!c4.is_adjacent(0, 2));
        assert_eq!(c4.max_degree(), 2);
        assert!(c4.is_connected());
    }

    #[test]
    fn rejects_self_loops_and_unknown_vertices() {
        let v = vec!["a".to_string(), "b".to_string()];
        assert!(SpaceGraph::new(v.clone(), &[("a".into(), "a".into())]).is_err());
        assert!(matches!(SpaceGraph::new(v, &[("a".into(), "z".into())]), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn strong_product_of_edges() {
        let k2 = SpaceGraph::from_indices(vec!["0".into(), "1".into()], &[(0, 1)]).unwrap();
        let sq = k2.strong_product(&k2);
        // K2 x K2 strong product is K4
        assert_eq!(sq.edges().len(), 6);
        assert_eq!(sq.label(2), "(1,0)");
    }

    #[test]
    fn atom_labels() {
        assert!(check_atom_label("n").is_ok());
        assert!(check_atom_label("(a").is_err());
        assert!(check_atom_label("a b").is_err());
    }
}
