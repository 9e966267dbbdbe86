//! Vertex colorings, the p-centered property, and elimination forests.
//!
//! A coloring is p-centered when every connected subgraph either uses some
//! color exactly once or uses at least `p` colors. Depth labels of an
//! elimination forest are centered for every `p`: the shallowest vertex of
//! any connected subgraph is unique.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Limit on the number of colors for [`is_p_centered`]; it enumerates up to
/// `2^color_count` color subsets.
pub const SUBSET_CHECK_MAX_COLORS: usize = 20;
/// Limit on vertices for [`is_p_centered_literal`].
pub const LITERAL_CHECK_MAX_VERTICES: usize = 10;
/// Limit on vertices for [`ForestMode::ExactSmall`].
pub const EXACT_FOREST_MAX_VERTICES: usize = 12;
/// Limit on vertices for [`exact_min_p_centered`].
pub const EXACT_COLORING_MAX_VERTICES: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
    color_count: usize,
}

impl Coloring {
    /// Color count is one more than the largest color used.
    pub fn new(colors: Vec<usize>) -> Self {
        let color_count = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        Coloring {
            colors,
            color_count,
        }
    }

    pub fn with_count(colors: Vec<usize>, color_count: usize) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c >= color_count) {
            return Err(Error::arg(format!(
                "color {c} out of range for {color_count} colors"
            )));
        }
        if !colors.is_empty() && color_count == 0 {
            return Err(Error::arg("nonempty coloring needs at least one color"));
        }
        Ok(Coloring {
            colors,
            color_count,
        })
    }

    pub fn constant(n: usize) -> Self {
        Coloring::new(vec![0; n])
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors actually used.
    pub fn used_colors(&self) -> usize {
        let mut seen = vec![false; self.color_count];
        for &c in &self.colors {
            seen[c] = true;
        }
        seen.into_iter().filter(|&s| s).count()
    }

    /// Product coloring: two vertices share a color iff they share it in both
    /// inputs. New ids are assigned in order of first appearance.
    pub fn refine(&self, other: &Coloring) -> Result<Coloring> {
        if self.len() != other.len() {
            return Err(Error::arg("refining colorings of different sizes"));
        }
        let mut ids = HashMap::new();
        let colors = self
            .colors
            .iter()
            .zip(&other.colors)
            .map(|pair| {
                let next = ids.len();
                *ids.entry(pair).or_insert(next)
            })
            .collect();
        Ok(Coloring::new(colors))
    }

    fn covers(&self, g: &Graph) -> Result<()> {
        if self.len() < g.len() {
            return Err(Error::Uncolored(self.len()));
        }
        if self.len() > g.len() {
            return Err(Error::arg(format!(
                "coloring has {} entries for a graph on {} vertices",
                self.len(),
                g.len()
            )));
        }
        Ok(())
    }
}

/// Outcome of a p-centered check. A violation carries the vertex set of a
/// connected subgraph with fewer than `p` colors and no unique color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CenteredVerdict {
    Centered,
    Violation(Vec<usize>),
}

impl CenteredVerdict {
    pub fn is_centered(&self) -> bool {
        matches!(self, CenteredVerdict::Centered)
    }
}

fn check_p(p: usize) -> Result<()> {
    if p == 0 {
        Err(Error::arg("p must be at least 1"))
    } else {
        Ok(())
    }
}

/// Subset method: for every set `C` of fewer than `p` colors, each component
/// of the subgraph induced by the vertices colored from `C` must contain a
/// color exactly once. Witnesses are taken from the numerically smallest
/// color subset, then the component with the smallest vertex.
pub fn is_p_centered(g: &Graph, col: &Coloring, p: usize) -> Result<CenteredVerdict> {
    check_p(p)?;
    col.covers(g)?;
    let c = col.color_count();
    if c > SUBSET_CHECK_MAX_COLORS {
        return Err(Error::Capacity {
            what: "p-centered subset check (colors)",
            limit: SUBSET_CHECK_MAX_COLORS,
            got: c,
        });
    }
    let n = g.len();
    let mut comp = vec![usize::MAX; n];
    let mut counts = vec![0usize; c];
    let mut stack = Vec::new();
    for mask in 1u32..(1u32 << c) {
        if mask.count_ones() as usize >= p {
            continue;
        }
        let inside = |v: usize| mask & (1 << col.color(v)) != 0;
        comp.iter_mut().for_each(|x| *x = usize::MAX);
        for s in 0..n {
            if !inside(s) || comp[s] != usize::MAX {
                continue;
            }
            let mut members = vec![s];
            comp[s] = s;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if inside(w) && comp[w] == usize::MAX {
                        comp[w] = s;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            for &v in &members {
                counts[col.color(v)] += 1;
            }
            let unique = members.iter().any(|&v| counts[col.color(v)] == 1);
            for &v in &members {
                counts[col.color(v)] = 0;
            }
            if !unique {
                members.sort_unstable();
                return Ok(CenteredVerdict::Violation(members));
            }
        }
    }
    Ok(CenteredVerdict::Centered)
}

/// Literal definition: enumerates every connected vertex subset. Witness is
/// the numerically smallest offending subset bitmask.
pub fn is_p_centered_literal(g: &Graph, col: &Coloring, p: usize) -> Result<CenteredVerdict> {
    check_p(p)?;
    col.covers(g)?;
    let n = g.len();
    if n > LITERAL_CHECK_MAX_VERTICES {
        return Err(Error::Capacity {
            what: "p-centered literal check (vertices)",
            limit: LITERAL_CHECK_MAX_VERTICES,
            got: n,
        });
    }
    let adj = g.adjacency_masks();
    let mut counts = vec![0usize; col.color_count()];
    for mask in 1u64..(1u64 << n) {
        if !mask_connected(&adj, mask) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        counts.iter_mut().for_each(|x| *x = 0);
        for &v in &members {
            counts[col.color(v)] += 1;
        }
        let used = counts.iter().filter(|&&k| k > 0).count();
        let unique = counts.contains(&1);
        if used < p && !unique {
            return Ok(CenteredVerdict::Violation(members));
        }
    }
    Ok(CenteredVerdict::Centered)
}

pub(crate) fn mask_connected(adj: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let mut reached = mask & mask.wrapping_neg();
    loop {
        let mut next = reached;
        let mut rest = reached;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next |= adj[v] & mask;
        }
        if next == reached {
            return reached == mask;
        }
        reached = next;
    }
}

/// Rooted forest on the vertices; `depth` of a root is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationForest {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl EliminationForest {
    /// Validates that `parent` describes a forest and computes depths.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        let mut depth = vec![0usize; n];
        for start in 0..n {
            let mut path = Vec::new();
            let mut v = start;
            while depth[v] == 0 {
                if path.len() > n {
                    return Err(Error::arg(format!("parent cycle through vertex {start}")));
                }
                path.push(v);
                match parent[v] {
                    None => break,
                    Some(p) => {
                        Error::check_id(p, n)?;
                        v = p;
                    }
                }
            }
            let mut d = if depth[v] == 0 { 0 } else { depth[v] };
            for &u in path.iter().rev() {
                d += 1;
                depth[u] = d;
            }
        }
        Ok(EliminationForest { parent, depth })
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn depth_of(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Depth of the forest (0 when empty).
    pub fn depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn is_ancestor(&self, a: usize, mut v: usize) -> bool {
        loop {
            if v == a {
                return true;
            }
            match self.parent[v] {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    /// Every edge of `g` must join an ancestor-descendant pair.
    pub fn check_for(&self, g: &Graph) -> Result<()> {
        if self.len() != g.len() {
            return Err(Error::arg(format!(
                "forest has {} vertices, graph has {}",
                self.len(),
                g.len()
            )));
        }
        for &(u, v) in g.edges() {
            if !(self.is_ancestor(u, v) || self.is_ancestor(v, u)) {
                return Err(Error::EliminationViolation(u, v));
            }
        }
        Ok(())
    }
}

/// `color(v) = depth(v) - 1`.
pub fn coloring_from_forest(g: &Graph, f: &EliminationForest) -> Result<Coloring> {
    f.check_for(g)?;
    Ok(Coloring::new(f.depth.iter().map(|d| d - 1).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForestMode {
    /// Minimum depth; at most [`EXACT_FOREST_MAX_VERTICES`] vertices.
    ExactSmall,
    /// Root each component at a vertex of maximum degree (smallest id on
    /// ties) and recurse on what remains.
    Heuristic,
}

pub fn build_elimination_forest(g: &Graph, mode: ForestMode) -> Result<EliminationForest> {
    let n = g.len();
    let mut parent = vec![None; n];
    match mode {
        ForestMode::ExactSmall => {
            if n > EXACT_FOREST_MAX_VERTICES {
                return Err(Error::Capacity {
                    what: "exact elimination forest",
                    limit: EXACT_FOREST_MAX_VERTICES,
                    got: n,
                });
            }
            let mut solver = TreedepthSolver::new(g);
            let all = if n == 0 { 0 } else { (1u64 << n) - 1 };
            solver.assign(all, None, &mut parent);
        }
        ForestMode::Heuristic => {
            let alive = vec![true; n];
            heuristic_forest(g, alive, None, &mut parent);
        }
    }
    let forest = EliminationForest::from_parents(parent)?;
    debug_assert!(forest.check_for(g).is_ok());
    Ok(forest)
}

fn components_within(g: &Graph, alive: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.len()];
    let mut out = Vec::new();
    for s in 0..g.len() {
        if !alive[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &w in g.neighbors(u) {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn heuristic_forest(g: &Graph, alive: Vec<bool>, root_parent: Option<usize>, parent: &mut [Option<usize>]) {
    for comp in components_within(g, &alive) {
        let inner_degree =
            |v: usize| g.neighbors(v).iter().filter(|&&w| alive[w]).count();
        let root = *comp
            .iter()
            .max_by_key(|&&v| (inner_degree(v), std::cmp::Reverse(v)))
            .unwrap();
        parent[root] = root_parent;
        let mut sub = vec![false; g.len()];
        for &v in &comp {
            sub[v] = v != root;
        }
        heuristic_forest(g, sub, Some(root), parent);
    }
}

/// Treedepth by memoized search over vertex subsets.
struct TreedepthSolver {
    adj: Vec<u64>,
    memo: HashMap<u64, u32>,
}

impl TreedepthSolver {
    fn new(g: &Graph) -> Self {
        TreedepthSolver {
            adj: g.adjacency_masks(),
            memo: HashMap::new(),
        }
    }

    fn components(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            loop {
                let mut next = comp;
                let mut it = comp;
                while it != 0 {
                    let v = it.trailing_zeros() as usize;
                    it &= it - 1;
                    next |= self.adj[v] & mask;
                }
                if next == comp {
                    break;
                }
                comp = next;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    fn depth(&mut self, mask: u64) -> u32 {
        if mask == 0 {
            return 0;
        }
        if let Some(&d) = self.memo.get(&mask) {
            return d;
        }
        let comps = self.components(mask);
        let d = if comps.len() > 1 {
            comps.into_iter().map(|c| self.depth(c)).max().unwrap()
        } else {
            1 + self.best_root(mask).1
        };
        self.memo.insert(mask, d);
        d
    }

    /// Root of minimum remaining depth for a connected `mask`; smallest id on
    /// ties.
    fn best_root(&mut self, mask: u64) -> (usize, u32) {
        let mut best = (usize::MAX, u32::MAX);
        let mut it = mask;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            let d = self.depth(mask & !(1 << v));
            if d < best.1 {
                best = (v, d);
            }
        }
        best
    }

    fn assign(&mut self, mask: u64, root_parent: Option<usize>, parent: &mut [Option<usize>]) {
        for comp in self.components(mask) {
            let (root, _) = self.best_root(comp);
            parent[root] = root_parent;
            self.assign(comp & !(1 << root), Some(root), parent);
        }
    }
}

/// Exhaustive search for a p-centered coloring with as few colors as
/// possible; colorings are enumerated as restricted growth strings.
pub fn exact_min_p_centered(g: &Graph, p: usize) -> Result<Coloring> {
    check_p(p)?;
    let n = g.len();
    if n > EXACT_COLORING_MAX_VERTICES {
        return Err(Error::Capacity {
            what: "exact minimum p-centered coloring",
            limit: EXACT_COLORING_MAX_VERTICES,
            got: n,
        });
    }
    if n == 0 {
        return Ok(Coloring::new(Vec::new()));
    }
    for k in 1..=n {
        let mut colors = vec![0usize; n];
        if let Some(found) = search_rgs(g, p, k, &mut colors, 1, 1)? {
            return Ok(found);
        }
    }
    unreachable!("an injective coloring is p-centered")
}

fn search_rgs(
    g: &Graph,
    p: usize,
    k: usize,
    colors: &mut [usize],
    i: usize,
    used: usize,
) -> Result<Option<Coloring>> {
    if i == colors.len() {
        let col = Coloring::with_count(colors.to_vec(), k)?;
        return Ok(is_p_centered(g, &col, p)?.is_centered().then_some(col));
    }
    for c in 0..used.min(k - 1) + 1 {
        colors[i] = c;
        let next_used = used.max(c + 1);
        if let Some(found) = search_rgs(g, p, k, colors, i + 1, next_used)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Depth coloring of a minimum-depth forest for small graphs, of the
/// heuristic forest otherwise.
pub fn auto_coloring(g: &Graph) -> Coloring {
    let mode = if g.len() <= EXACT_FOREST_MAX_VERTICES {
        ForestMode::ExactSmall
    } else {
        ForestMode::Heuristic
    };
    let forest = build_elimination_forest(g, mode).expect("mode fits the graph");
    coloring_from_forest(g, &forest).expect("built forests are valid")
}
