//! Finite simple undirected graphs on dense vertex ids.

use std::collections::VecDeque;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Largest graph accepted by [`Graph::grad`].
pub const GRAD_MAX_VERTICES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<Option<String>>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Loops, repeated edges and out-of-range
    /// endpoints are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            Error::check_id(u, n)?;
            Error::check_id(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if adj[u].contains(&v) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
            adj[u].push(v);
            adj[v].push(u);
            list.push(e);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        list.sort_unstable();
        Ok(Graph {
            labels: vec![None; n],
            adj,
            edges: list,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            labels: vec![None; n],
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) -> Result<()> {
        Error::check_id(v, self.len())?;
        self.labels[v] = Some(label.into());
        Ok(())
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(v).and_then(|l| l.as_deref())
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path distance; `None` when `u` and `v` lie in different
    /// components.
    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>> {
        Error::check_id(u, self.len())?;
        Error::check_id(v, self.len())?;
        Ok(self.bfs(u)[v])
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.len();
        let mut best: Option<usize> = None;
        for root in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] >= b) {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut parts = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut part = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        part.push(w);
                        stack.push(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.len()];
        for s in 0..self.len() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            stack.push(w);
                        }
                        Some(sw) if sw == su => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Neighbourhood bitmasks; only meaningful for graphs with at most 64
    /// vertices.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        self.adj
            .iter()
            .map(|nb| nb.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect()
    }

    /// Greatest reduced average density: the maximum of `|E(H)| / |V(H)|`
    /// over all minors `H` whose branch sets induce connected subgraphs of
    /// radius at most `r`. Exhaustive; limited to [`GRAD_MAX_VERTICES`].
    pub fn grad(&self, r: usize) -> Result<Ratio<u64>> {
        let n = self.len();
        if n > GRAD_MAX_VERTICES {
            return Err(Error::Capacity {
                what: "grad",
                limit: GRAD_MAX_VERTICES,
                got: n,
            });
        }
        if n == 0 {
            return Ok(Ratio::from_integer(0));
        }
        let adj = self.adjacency_masks();
        // branch sets grouped by their smallest vertex
        let mut by_min: Vec<Vec<(u64, u64)>> = vec![Vec::new(); n];
        for mask in 1u64..(1 << n) {
            if branch_set_ok(&adj, mask, r) {
                let nbhd = ones(mask).fold(0, |m, v| m | adj[v]) & !mask;
                by_min[mask.trailing_zeros() as usize].push((mask, nbhd));
            }
        }
        let mut search = GradSearch {
            by_min: &by_min,
            parts: Vec::new(),
            best: Ratio::from_integer(0),
        };
        search.run(0, 0, 0);
        Ok(search.best)
    }
}

struct GradSearch<'a> {
    by_min: &'a [Vec<(u64, u64)>],
    parts: Vec<(u64, u64)>,
    best: Ratio<u64>,
}

impl GradSearch<'_> {
    fn run(&mut self, v: usize, used: u64, edges: u64) {
        if v == self.by_min.len() {
            if !self.parts.is_empty() {
                let ratio = Ratio::new(edges, self.parts.len() as u64);
                if ratio > self.best {
                    self.best = ratio;
                }
            }
            return;
        }
        if used & (1 << v) != 0 {
            self.run(v + 1, used, edges);
            return;
        }
        self.run(v + 1, used, edges);
        for &(mask, nbhd) in &self.by_min[v] {
            if mask & used != 0 {
                continue;
            }
            let added = self.parts.iter().filter(|&&(m, _)| m & nbhd != 0).count() as u64;
            self.parts.push((mask, nbhd));
            self.run(v + 1, used | mask, edges + added);
            self.parts.pop();
        }
    }
}

fn ones(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask & (1 << i) != 0)
}

/// Connected within `mask` and some center reaches every vertex of `mask`
/// within `r` steps inside `mask`.
fn branch_set_ok(adj: &[u64], mask: u64, r: usize) -> bool {
    ones(mask).any(|c| {
        let mut reached = 1u64 << c;
        let mut frontier = reached;
        for _ in 0..r {
            let next = ones(frontier).fold(0, |m, v| m | adj[v]) & mask & !reached;
            if next == 0 {
                break;
            }
            reached |= next;
            frontier = next;
        }
        reached == mask
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::new(2, &[(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(matches!(
            Graph::new(2, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::new(2, &[(0, 2)]),
            Err(Error::InvalidId { id: 2, size: 2 })
        ));
    }

    #[test]
    fn distances() {
        let k3 = complete(3);
        assert_eq!(k3.distance(0, 2).unwrap(), Some(1));
        assert_eq!(k3.distance(1, 1).unwrap(), Some(0));
        assert_eq!(path(3).distance(0, 2).unwrap(), Some(2));
        assert_eq!(Graph::empty(2).distance(0, 1).unwrap(), None);
        assert!(Graph::empty(2).distance(0, 5).is_err());
    }

    #[test]
    fn girth_and_degree() {
        assert_eq!(complete(3).girth(), Some(3));
        assert_eq!(cycle(5).girth(), Some(5));
        assert_eq!(path(6).girth(), None);
        assert_eq!(complete(4).max_degree(), 3);
        let star = Graph::new(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert_eq!(star.max_degree(), 5);
        assert_eq!(star.girth(), None);
        assert_eq!(Graph::empty(3).max_degree(), 0);
    }

    #[test]
    fn components() {
        let sizes = |g: &Graph| {
            g.connected_components()
                .iter()
                .map(Vec::len)
                .collect::<Vec<_>>()
        };
        assert_eq!(sizes(&complete(3)), vec![3]);
        assert_eq!(
            sizes(&Graph::new(4, &[(0, 1), (2, 3)]).unwrap()),
            vec![2, 2]
        );
        assert_eq!(
            sizes(&Graph::new(4, &[(1, 2), (2, 3), (1, 3)]).unwrap()),
            vec![1, 3]
        );
    }

    #[test]
    fn grad_examples() {
        assert_eq!(complete(4).grad(0).unwrap(), Ratio::new(3, 2));
        assert_eq!(cycle(4).grad(1).unwrap(), Ratio::from_integer(1));
        for r in 0..3 {
            let g = path(6).grad(r).unwrap();
            assert!(g <= Ratio::new(5, 6), "r={r} grad={g}");
        }
        // contracting a perfect matching of C6 at depth 1 gives a triangle
        assert_eq!(cycle(6).grad(1).unwrap(), Ratio::from_integer(1));
        assert!(matches!(
            Graph::empty(11).grad(0),
            Err(Error::Capacity { limit: 10, .. })
        ));
    }

    #[test]
    fn grad_of_wheel() {
        // W5: hub 0 and rim 1..5, 10 edges on 6 vertices
        let w = Graph::new(
            6,
            &[
                (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
                (1, 2), (2, 3), (3, 4), (4, 5), (5, 1),
            ],
        )
        .unwrap();
        assert_eq!(w.grad(0).unwrap(), Ratio::new(10, 6));
        assert!(w.grad(1).unwrap() >= w.grad(0).unwrap());
    }
}
