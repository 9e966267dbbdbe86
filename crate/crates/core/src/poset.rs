//! Finite posets stored as a cover DAG plus a dense reachability cache.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<Option<String>>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    /// `up[x]` holds every `y` with `x <= y`.
    up: Vec<FixedBitSet>,
    /// `down[y]` holds every `x` with `x <= y`.
    down: Vec<FixedBitSet>,
    heights: Vec<usize>,
}

/// Kahn's algorithm, smallest ready vertex first. Returns `Err(v)` with some
/// vertex on a cycle when the digraph is cyclic.
pub(crate) fn topo_sort_min_first(succ: &[Vec<usize>]) -> std::result::Result<Vec<usize>, usize> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for out in succ {
        for &w in out {
            indeg[w] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).find(|&v| indeg[v] > 0).unwrap())
    }
}

impl Poset {
    /// Builds the poset generated by `a < b` for every `(a, b)` in
    /// `relations`. Redundant relations are fine; the covers are the
    /// transitive reduction.
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in relations {
            Error::check_id(a, n)?;
            Error::check_id(b, n)?;
            if a == b {
                return Err(Error::CyclicRelation(a));
            }
            succ[a].push(b);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        let order = topo_sort_min_first(&succ).map_err(Error::CyclicRelation)?;

        let mut up: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
        for &x in order.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(x);
            for &y in &succ[x] {
                set.union_with(&up[y]);
            }
            up[x] = set;
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, ups) in up.iter().enumerate() {
            for y in ups.ones() {
                down[y].insert(x);
            }
        }

        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for x in 0..n {
            let mut strict = up[x].clone();
            strict.set(x, false);
            for y in strict.ones() {
                // y covers x iff nothing strictly above x sits strictly below y
                if strict.intersection_count(&down[y]) == 1 {
                    upper[x].push(y);
                    lower[y].push(x);
                }
            }
        }

        let mut heights = vec![1usize; n];
        for &x in &order {
            for &y in &upper[x] {
                heights[y] = heights[y].max(heights[x] + 1);
            }
        }

        Ok(Poset {
            labels: vec![None; n],
            upper,
            lower,
            up,
            down,
            heights,
        })
    }

    pub fn with_labels<I, S>(mut self, labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        for (slot, l) in self.labels.iter_mut().zip(labels) {
            *slot = Some(l.into());
        }
        self
    }

    pub fn set_label(&mut self, x: usize, label: impl Into<String>) -> Result<()> {
        Error::check_id(x, self.len())?;
        self.labels[x] = Some(label.into());
        Ok(())
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels.get(x).and_then(|l| l.as_deref())
    }

    /// Label if present, otherwise the decimal id.
    pub fn name(&self, x: usize) -> String {
        self.label(x).map_or_else(|| x.to_string(), str::to_owned)
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn try_leq(&self, x: usize, y: usize) -> Result<bool> {
        Error::check_id(x, self.len())?;
        Error::check_id(y, self.len())?;
        Ok(self.leq(x, y))
    }

    /// `x <= y`. Panics on out-of-range ids; see [`Poset::try_leq`].
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    #[inline]
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.comparable(x, y)
    }

    pub fn upset(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn downset(&self, y: usize) -> &FixedBitSet {
        &self.down[y]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    /// Cover relations `(a, b)` with `a < b`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.upper
            .iter()
            .enumerate()
            .flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
            .collect()
    }

    /// Size of a longest chain ending in `x`.
    pub fn element_height(&self, x: usize) -> Result<usize> {
        Error::check_id(x, self.len())?;
        Ok(self.heights[x])
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lower[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper[x].is_empty()).collect()
    }

    pub fn cover_graph(&self) -> Graph {
        let mut g = Graph::new(self.len(), &self.covers()).expect("covers form a simple graph");
        for x in 0..self.len() {
            if let Some(l) = self.label(x) {
                g.set_label(x, l).unwrap();
            }
        }
        g
    }

    /// All ordered pairs `(x, y)` of incomparable elements, sorted.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.incomparable(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Critical pairs: incomparable `(x, y)` with every element strictly
    /// below `x` also below `y`, and every element strictly above `y` also
    /// above `x`. A family of linear extensions reversing all of them is a
    /// realizer.
    pub fn critical_pairs(&self) -> Vec<(usize, usize)> {
        self.incomparable_pairs()
            .into_iter()
            .filter(|&(x, y)| {
                self.lower[x].iter().all(|&z| self.leq(z, y))
                    && self.upper[y].iter().all(|&z| self.leq(x, z))
            })
            .collect()
    }

    /// Smallest-id-first topological order of the elements.
    pub fn default_extension(&self) -> LinearExtension {
        LinearExtension(topo_sort_min_first(&self.upper).expect("poset is acyclic"))
    }

    /// The subposet induced on `elements` (renumbered in the given order).
    pub fn induced(&self, elements: &[usize]) -> Result<Poset> {
        let mut rels = Vec::new();
        for (i, &a) in elements.iter().enumerate() {
            Error::check_id(a, self.len())?;
            for (j, &b) in elements.iter().enumerate() {
                if i != j && a == b {
                    return Err(Error::arg(format!("element {a} listed twice")));
                }
                if self.lt(a, b) {
                    rels.push((i, j));
                }
            }
        }
        let mut sub = Poset::from_relations(elements.len(), &rels)?;
        for (i, &a) in elements.iter().enumerate() {
            if let Some(l) = self.label(a) {
                sub.labels[i] = Some(l.to_owned());
            }
        }
        Ok(sub)
    }

    /// Same order relation, ignoring labels.
    pub fn same_order(&self, other: &Poset) -> bool {
        self.len() == other.len() && self.up == other.up
    }
}

/// A linear order on the ground set, listed from bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearExtension(pub Vec<usize>);

impl LinearExtension {
    pub fn order(&self) -> &[usize] {
        &self.0
    }

    /// `pos[x]` is the index of `x` in the order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            if x < pos.len() {
                pos[x] = i;
            }
        }
        pos
    }

    /// Checks that this is a permutation of the ground set respecting every
    /// cover relation of `p`.
    pub fn check(&self, p: &Poset) -> Result<()> {
        let n = p.len();
        if self.0.len() != n {
            return Err(Error::NotLinearExtension(format!(
                "length {} but poset has {n} elements",
                self.0.len()
            )));
        }
        let mut seen = vec![false; n];
        for &x in &self.0 {
            if x >= n || seen[x] {
                return Err(Error::NotLinearExtension(format!(
                    "element {x} repeated or out of range"
                )));
            }
            seen[x] = true;
        }
        let pos = self.positions();
        for (a, b) in p.covers() {
            if pos[a] > pos[b] {
                return Err(Error::NotLinearExtension(format!(
                    "{a} < {b} in the poset but {b} comes first"
                )));
            }
        }
        Ok(())
    }
}
