//! Finite groups stored as explicit multiplication tables.
//!
//! Elements are `usize` indices. Index 0 is always the identity and the
//! remaining elements are sorted by label, so "first in index order" is the
//! canonical deterministic choice used by every search in the crate.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

/// Element of a [`FiniteGroup`], as an index into its table.
pub type Elem = usize;

/// Largest group order accepted by [`find_isomorphism`].
pub const MAX_ISO_ORDER: usize = 24;

/// Largest group accepted when closing permutation generators.
pub const MAX_CLOSURE_ORDER: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    index: HashMap<String, Elem>,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
}

impl FiniteGroup {
    /// Builds a group from labels and a full Cayley table of label indices,
    /// `table[a][b] = a * b`, checking every group axiom exhaustively.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidGroup("a group needs at least one element".into()));
        }
        check_labels(&labels).map_err(Error::InvalidGroup)?;
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup(format!("table must be {n} x {n}")));
        }
        if let Some(bad) = table.iter().flatten().find(|&&c| c >= n) {
            return Err(Error::InvalidGroup(format!("table entry {bad} out of range")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity && table[b][a] == identity) {
                return Err(Error::InvalidGroup(format!("`{}` has no inverse", labels[a])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative on ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(Self::canonical(labels, identity, |a, b| table[a][b]))
    }

    /// Same as [`FiniteGroup::from_table`] but with the table written in labels.
    pub fn from_label_table(labels: Vec<String>, table: Vec<Vec<String>>) -> Result<Self> {
        let pos: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut numeric = Vec::with_capacity(table.len());
        for row in &table {
            let mut out = Vec::with_capacity(row.len());
            for entry in row {
                out.push(*pos.get(entry.as_str()).ok_or_else(|| Error::UnknownLabel(entry.clone()))?);
            }
            numeric.push(out);
        }
        Self::from_table(labels, numeric)
    }

    /// Closes a set of named permutations of `0..degree` under composition.
    ///
    /// Elements are labelled by their shortest word in the generators (ties
    /// broken by generator order); the identity is `e`. Composition applies
    /// the right factor first.
    pub fn from_permutations(degree: usize, generators: &[(String, Vec<usize>)]) -> Result<Self> {
        for (name, perm) in generators {
            if name.is_empty() || name == "e" {
                return Err(Error::InvalidGroup(format!("bad generator name `{name}`")));
            }
            let mut seen = vec![false; degree];
            if perm.len() != degree || perm.iter().any(|&p| p >= degree || std::mem::replace(&mut seen[p], true)) {
                return Err(Error::InvalidGroup(format!("generator `{name}` is not a permutation of {degree} points")));
            }
        }
        let sep = if generators.iter().all(|(n, _)| n.chars().count() == 1) { "" } else { "*" };
        let identity: Vec<usize> = (0..degree).collect();
        let mut perms = vec![identity.clone()];
        let mut words = vec!["e".to_string()];
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (name, s) in generators {
                let y: Vec<usize> = (0..degree).map(|i| perms[x][s[i]]).collect();
                if seen.contains_key(&y) {
                    continue;
                }
                if perms.len() >= MAX_CLOSURE_ORDER {
                    return Err(Error::BoundExceeded {
                        estimate: perms.len() as u128 + 1,
                        limit: MAX_CLOSURE_ORDER as u128,
                    });
                }
                let word = if x == 0 { name.clone() } else { format!("{}{sep}{name}", words[x]) };
                seen.insert(y.clone(), perms.len());
                queue.push_back(perms.len());
                perms.push(y);
                words.push(word);
            }
        }
        let mul = |a: usize, b: usize| {
            let p: Vec<usize> = (0..degree).map(|i| perms[a][perms[b][i]]).collect();
            seen[&p]
        };
        check_labels(&words).map_err(Error::InvalidGroup)?;
        Ok(Self::canonical(words.clone(), 0, mul))
    }

    /// Reorders so that the identity comes first and the rest sort by label.
    fn canonical(labels: Vec<String>, identity: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let n = labels.len();
        let mut order: Vec<usize> = (0..n).filter(|&i| i != identity).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        order.insert(0, identity);
        let mut new_of_old = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        let mut table = vec![0; n * n];
        for (a, &oa) in order.iter().enumerate() {
            for (b, &ob) in order.iter().enumerate() {
                table[a * n + b] = new_of_old[mul(oa, ob)];
            }
        }
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("inverse exists")).collect();
        let labels: Vec<String> = order.iter().map(|&o| labels[o].clone()).collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Self { labels, index, table, inverse }
    }

    pub fn trivial() -> Self {
        Self::canonical(vec!["e".into()], 0, |_, _| 0)
    }

    /// Cyclic group of order `n`: `{e, g}` for `n = 2`, `{e, r, r2, ...}` otherwise.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let labels = (0..n)
            .map(|i| match (n, i) {
                (_, 0) => "e".to_string(),
                (2, _) => "g".to_string(),
                (_, 1) => "r".to_string(),
                _ => format!("r{i}"),
            })
            .collect();
        Self::canonical(labels, 0, |a, b| (a + b) % n)
    }

    /// Symmetric group on `n` points generated by `r = (0 1 ... n-1)` and `s = (0 1)`.
    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 1);
        if n == 1 {
            return Self::trivial();
        }
        let r: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let mut s: Vec<usize> = (0..n).collect();
        s.swap(0, 1);
        let gens = if n == 2 { vec![("s".to_string(), s)] } else { vec![("r".to_string(), r), ("s".to_string(), s)] };
        Self::from_permutations(n, &gens).expect("symmetric group generators are valid")
    }

    /// Direct product with elements labelled `(a,b)`.
    pub fn product(&self, other: &FiniteGroup) -> ProductGroup {
        let (n, m) = (self.order(), other.order());
        let labels: Vec<String> =
            (0..n * m).map(|i| format!("({},{})", self.labels[i / m], other.labels[i % m])).collect();
        let group = Self::canonical(labels.clone(), 0, |a, b| {
            let (a1, a2) = (a / m, a % m);
            let (b1, b2) = (b / m, b % m);
            self.mul(a1, b1) * m + other.mul(a2, b2)
        });
        let pair = (0..n * m).map(|i| group.index[&labels[i]]).collect::<Vec<_>>();
        let mut split = vec![(0, 0); n * m];
        for (i, &p) in pair.iter().enumerate() {
            split[p] = (i / m, i % m);
        }
        ProductGroup { group, left_order: n, right_order: m, pair, split }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    /// `a * b * a^-1`.
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<Elem> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exhaustive check of the group axioms on the stored table.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order();
        let rows = (0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect();
        Self::from_table(self.labels.clone(), rows).map(|_| ())
    }

    pub fn is_subgroup(&self, subset: &[Elem]) -> bool {
        !subset.is_empty()
            && subset.iter().all(|&a| a < self.order())
            && subset.iter().all(|&a| subset.iter().all(|&b| subset.contains(&self.mul(a, self.inv(b)))))
    }

    /// Subgroup on `subset`, keeping labels. Returns the group and the
    /// embedding of its elements into `self`.
    pub fn subgroup(&self, subset: &[Elem]) -> Result<(FiniteGroup, Vec<Elem>)> {
        if !self.is_subgroup(subset) {
            let names: Vec<&str> = subset.iter().filter(|&&a| a < self.order()).map(|&a| self.label(a)).collect();
            return Err(Error::NotSubgroup(format!("{{{}}}", names.join(", "))));
        }
        let mut elems = subset.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos: HashMap<Elem, usize> = elems.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let labels = elems.iter().map(|&a| self.labels[a].clone()).collect();
        let sub = Self::canonical(labels, pos[&0], |a, b| pos[&self.mul(elems[a], elems[b])]);
        let embedding = sub.labels.iter().map(|l| self.index[l]).collect();
        Ok((sub, embedding))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        self.elements().filter(|&a| seen[a]).collect()
    }

    /// Sorted histogram of element orders, an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Checks that `map` is a homomorphism from `self` into `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, map: &[Elem]) -> bool {
        map.len() == self.order()
            && map.iter().all(|&x| x < target.order())
            && self.elements().all(|a| self.elements().all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }
}

/// A direct product `G x H` together with its coordinate bookkeeping.
#[derive(Clone, Debug)]
pub struct ProductGroup {
    pub group: FiniteGroup,
    left_order: usize,
    right_order: usize,
    pair: Vec<Elem>,
    split: Vec<(Elem, Elem)>,
}

impl ProductGroup {
    pub fn pair(&self, a: Elem, b: Elem) -> Elem {
        self.pair[a * self.right_order + b]
    }

    pub fn split(&self, x: Elem) -> (Elem, Elem) {
        self.split[x]
    }

    pub fn left_projection(&self) -> Vec<Elem> {
        self.split.iter().map(|p| p.0).collect()
    }

    pub fn right_projection(&self) -> Vec<Elem> {
        self.split.iter().map(|p| p.1).collect()
    }

    pub fn left_order(&self) -> usize {
        self.left_order
    }

    pub fn right_order(&self) -> usize {
        self.right_order
    }
}

pub(crate) fn check_labels(labels: &[String]) -> std::result::Result<(), String> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if l.is_empty() {
            return Err("empty label".into());
        }
        if !seen.insert(l.as_str()) {
            return Err(format!("duplicate label `{l}`"));
        }
    }
    Ok(())
}

/// A group isomorphism found by [`find_isomorphism`], as label pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCertificate {
    pub pairs: Vec<(String, String)>,
}

/// Brute-force isomorphism search over generator images.
///
/// Returns `Ok(None)` when the groups are not isomorphic. Groups above
/// [`MAX_ISO_ORDER`] that pass the cheap invariants are rejected.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Vec<Elem>>> {
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return Ok(None);
    }
    if g.order() == 1 {
        return Ok(Some(vec![0]));
    }
    if g.order() > MAX_ISO_ORDER {
        return Err(Error::GroupTooLarge { order: g.order(), limit: MAX_ISO_ORDER });
    }
    if g.is_abelian() != h.is_abelian() {
        return Ok(None);
    }
    // Greedy generating set, largest element orders first.
    let mut by_order: Vec<Elem> = g.elements().skip(1).collect();
    by_order.sort_by_key(|&a| (std::cmp::Reverse(g.element_order(a)), a));
    let mut gens = Vec::new();
    let mut span = vec![0];
    for a in by_order {
        if !span.contains(&a) {
            gens.push(a);
            span = g.generated(&gens);
            if span.len() == g.order() {
                break;
            }
        }
    }
    let candidates: Vec<Vec<Elem>> =
        gens.iter().map(|&s| h.elements().filter(|&t| h.element_order(t) == g.element_order(s)).collect()).collect();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<Elem> = choice.iter().zip(&candidates).map(|(&c, cand)| cand[c]).collect();
        if let Some(map) = extend_to_isomorphism(g, h, &gens, &images) {
            return Ok(Some(map));
        }
        // odometer over the candidate lists
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(None);
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn extend_to_isomorphism(g: &FiniteGroup, h: &FiniteGroup, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
    let mut map = vec![usize::MAX; g.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0]);
    // consistency on every Cayley-graph edge x -> x*s makes the map a homomorphism
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push_back(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    let mut hit = vec![false; h.order()];
    for &m in &map {
        if m == usize::MAX || std::mem::replace(&mut hit[m], true) {
            return None;
        }
    }
    Some(map)
}
