//! Witness posets and graph families.
//!
//! Label conventions: standard examples use `a1..ad`, `b1..bd`; Kelly's
//! construction adds `u1..u{d-1}` and `v1..v{d-1}`; incidence posets label
//! edge points `e_{u,v}`; adjacency posets use `a<v>` and `b<v>` for vertex
//! `v`; boolean lattices label each subset by its bit string.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poset::Poset;

/// Environment variable fixing the seed of [`random_poset_from_env`].
pub const SEED_ENV: &str = "POSETDIM_SEED";

fn positive(what: &str, d: usize) -> Result<()> {
    if d == 0 {
        Err(Error::arg(format!("{what} needs a parameter >= 1")))
    } else {
        Ok(())
    }
}

/// `S_d`: `a_i` is id `i - 1`, `b_j` is id `d + j - 1`, and `a_i < b_j`
/// exactly when `i != j`.
pub fn standard_example(d: usize) -> Result<Poset> {
    positive("standard_example", d)?;
    let mut rels = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                rels.push((i, d + j));
            }
        }
    }
    let labels = (1..=d)
        .map(|i| format!("a{i}"))
        .chain((1..=d).map(|j| format!("b{j}")));
    Ok(Poset::from_relations(2 * d, &rels)?.with_labels(labels))
}

/// Kelly's planar poset on `4d - 2` points containing `S_d`.
///
/// Ids: `a_i = i-1`, `b_i = d+i-1`, `u_i = 2d+i-1`, `v_i = 3d+i-2`. Two
/// chains `u_1 < ... < u_{d-1}` and `v_{d-1} < ... < v_1` carry `a_i` up to
/// the `b_k` with `k > i` (through `u`) and `k < i` (through `v`).
pub fn kelly(d: usize) -> Result<Poset> {
    positive("kelly", d)?;
    let a = |i: usize| i - 1;
    let b = |i: usize| d + i - 1;
    let u = |i: usize| 2 * d + i - 1;
    let v = |i: usize| 3 * d + i - 2;
    let mut rels = Vec::new();
    for i in 1..d.saturating_sub(1) {
        rels.push((u(i), u(i + 1)));
        rels.push((v(i + 1), v(i)));
    }
    for i in 1..d {
        rels.push((a(i), u(i)));
        rels.push((u(i), b(i + 1)));
        rels.push((a(i + 1), v(i)));
        rels.push((v(i), b(i)));
    }
    let labels = (1..=d)
        .map(|i| format!("a{i}"))
        .chain((1..=d).map(|i| format!("b{i}")))
        .chain((1..d).map(|i| format!("u{i}")))
        .chain((1..d).map(|i| format!("v{i}")));
    Ok(Poset::from_relations(4 * d - 2, &rels)?.with_labels(labels))
}

fn vertex_name(g: &Graph, v: usize) -> String {
    g.label(v).map_or_else(|| v.to_string(), str::to_owned)
}

/// Vertices of `g` (ids `0..n`) below edge points (ids `n..n+m`, in the
/// graph's edge order); each edge point covers its two endpoints.
pub fn incidence_poset(g: &Graph) -> Poset {
    let n = g.len();
    let mut rels = Vec::new();
    for (k, &(u, v)) in g.edges().iter().enumerate() {
        rels.push((u, n + k));
        rels.push((v, n + k));
    }
    let labels = (0..n).map(|v| vertex_name(g, v)).chain(
        g.edges()
            .iter()
            .map(|&(u, v)| format!("e_{{{},{}}}", vertex_name(g, u), vertex_name(g, v))),
    );
    Poset::from_relations(n + g.edge_count(), &rels)
        .expect("incidence relations are acyclic")
        .with_labels(labels)
}

/// `a_v` (id `v`) below `b_w` (id `n + w`) exactly when `vw` is an edge.
pub fn adjacency_poset(g: &Graph) -> Poset {
    let n = g.len();
    let mut rels = Vec::new();
    for &(u, v) in g.edges() {
        rels.push((u, n + v));
        rels.push((v, n + u));
    }
    let labels = (0..n)
        .map(|v| format!("a{}", vertex_name(g, v)))
        .chain((0..n).map(|v| format!("b{}", vertex_name(g, v))));
    Poset::from_relations(2 * n, &rels)
        .expect("adjacency relations are acyclic")
        .with_labels(labels)
}

pub fn chain(n: usize) -> Result<Poset> {
    positive("chain", n)?;
    let rels: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_relations(n, &rels)
}

pub fn antichain(n: usize) -> Result<Poset> {
    positive("antichain", n)?;
    Poset::from_relations(n, &[])
}

pub const BOOLEAN_LATTICE_MAX: usize = 4;

/// Subsets of an `n`-set under inclusion; subset ids are their bitmasks.
pub fn boolean_lattice(n: usize) -> Result<Poset> {
    positive("boolean_lattice", n)?;
    if n > BOOLEAN_LATTICE_MAX {
        return Err(Error::Capacity {
            what: "boolean_lattice",
            limit: BOOLEAN_LATTICE_MAX,
            got: n,
        });
    }
    let size = 1usize << n;
    let mut rels = Vec::new();
    for s in 0..size {
        for bit in 0..n {
            if s & (1 << bit) == 0 {
                rels.push((s, s | (1 << bit)));
            }
        }
    }
    let labels = (0..size).map(|s| format!("{s:0n$b}"));
    Ok(Poset::from_relations(size, &rels)?.with_labels(labels))
}

pub fn complete_graph(n: usize) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    Graph::new(n, &e).unwrap()
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::arg("cycle needs at least 3 vertices"));
    }
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &e)
}

pub fn path_graph(n: usize) -> Result<Graph> {
    positive("path", n)?;
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &e)
}

/// Center 0 with `leaves` leaves.
pub fn star_graph(leaves: usize) -> Graph {
    let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::new(leaves + 1, &e).unwrap()
}

/// The `2 x k` grid; vertex `(r, c)` has id `r * k + c`.
pub fn grid_2xk(k: usize) -> Result<Graph> {
    positive("grid", k)?;
    let mut e = Vec::new();
    for c in 0..k {
        e.push((c, k + c));
        if c + 1 < k {
            e.push((c, c + 1));
            e.push((k + c, k + c + 1));
        }
    }
    Graph::new(2 * k, &e)
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((5 + i, 5 + (i + 2) % 5));
        e.push((i, i + 5));
    }
    Graph::new(10, &e).unwrap()
}

/// Graph families addressable by a short name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    Star(usize),
    Grid2(usize),
    Petersen,
}

impl NamedGraph {
    pub fn build(self) -> Result<Graph> {
        match self {
            NamedGraph::Complete(n) => Ok(complete_graph(n)),
            NamedGraph::Cycle(n) => cycle_graph(n),
            NamedGraph::Path(n) => path_graph(n),
            NamedGraph::Star(k) => Ok(star_graph(k)),
            NamedGraph::Grid2(k) => grid_2xk(k),
            NamedGraph::Petersen => Ok(petersen()),
        }
    }
}

impl FromStr for NamedGraph {
    type Err = Error;

    /// Accepts `K5`, `C5`, `P4`, `star5`, `grid2x3`, `petersen`.
    fn from_str(s: &str) -> Result<Self> {
        let num = |rest: &str| {
            rest.parse::<usize>()
                .map_err(|_| Error::arg(format!("bad graph name {s:?}")))
        };
        let lower = s.to_ascii_lowercase();
        if lower == "petersen" {
            Ok(NamedGraph::Petersen)
        } else if let Some(rest) = lower.strip_prefix("star") {
            Ok(NamedGraph::Star(num(rest)?))
        } else if let Some(rest) = lower.strip_prefix("grid2x") {
            Ok(NamedGraph::Grid2(num(rest)?))
        } else if let Some(rest) = s.strip_prefix('K') {
            Ok(NamedGraph::Complete(num(rest)?))
        } else if let Some(rest) = s.strip_prefix('C') {
            Ok(NamedGraph::Cycle(num(rest)?))
        } else if let Some(rest) = s.strip_prefix('P') {
            Ok(NamedGraph::Path(num(rest)?))
        } else {
            Err(Error::arg(format!("unknown graph name {s:?}")))
        }
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::Complete(n) => write!(f, "K{n}"),
            NamedGraph::Cycle(n) => write!(f, "C{n}"),
            NamedGraph::Path(n) => write!(f, "P{n}"),
            NamedGraph::Star(k) => write!(f, "star{k}"),
            NamedGraph::Grid2(k) => write!(f, "grid2x{k}"),
            NamedGraph::Petersen => f.write_str("petersen"),
        }
    }
}

pub fn named_graph(name: &str) -> Result<Graph> {
    name.parse::<NamedGraph>()?.build()
}

/// Poset families addressable from the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedFamily {
    StandardExample(usize),
    Kelly(usize),
    Incidence(NamedGraph),
    Adjacency(NamedGraph),
    Chain(usize),
    Antichain(usize),
    BooleanLattice(usize),
}

impl NamedFamily {
    /// Parses a family name and its parameter, e.g. `("kelly", "3")` or
    /// `("incidence", "K4")`.
    pub fn parse(family: &str, param: &str) -> Result<Self> {
        let num = || {
            param
                .parse::<usize>()
                .map_err(|_| Error::arg(format!("{family} expects a number, got {param:?}")))
        };
        Ok(match family {
            "standard_example" | "standard-example" | "S" => NamedFamily::StandardExample(num()?),
            "kelly" => NamedFamily::Kelly(num()?),
            "incidence" => NamedFamily::Incidence(param.parse()?),
            "adjacency" => NamedFamily::Adjacency(param.parse()?),
            "chain" => NamedFamily::Chain(num()?),
            "antichain" => NamedFamily::Antichain(num()?),
            "boolean_lattice" | "boolean-lattice" => NamedFamily::BooleanLattice(num()?),
            _ => return Err(Error::arg(format!("unknown family {family:?}"))),
        })
    }

    pub fn build(&self) -> Result<Poset> {
        match self {
            NamedFamily::StandardExample(d) => standard_example(*d),
            NamedFamily::Kelly(d) => kelly(*d),
            NamedFamily::Incidence(g) => Ok(incidence_poset(&g.build()?)),
            NamedFamily::Adjacency(g) => Ok(adjacency_poset(&g.build()?)),
            NamedFamily::Chain(n) => chain(*n),
            NamedFamily::Antichain(n) => antichain(*n),
            NamedFamily::BooleanLattice(n) => boolean_lattice(*n),
        }
    }
}

impl fmt::Display for NamedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedFamily::StandardExample(d) => write!(f, "standard_example {d}"),
            NamedFamily::Kelly(d) => write!(f, "kelly {d}"),
            NamedFamily::Incidence(g) => write!(f, "incidence {g}"),
            NamedFamily::Adjacency(g) => write!(f, "adjacency {g}"),
            NamedFamily::Chain(n) => write!(f, "chain {n}"),
            NamedFamily::Antichain(n) => write!(f, "antichain {n}"),
            NamedFamily::BooleanLattice(n) => write!(f, "boolean_lattice {n}"),
        }
    }
}

/// Random poset on `n` points: each pair `i < j` is related independently
/// with probability `density`, then closed transitively.
pub fn random_poset(n: usize, density: f64, seed: u64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rels.push((i, j));
            }
        }
    }
    Poset::from_relations(n, &rels).expect("forward relations are acyclic")
}

/// Seed from [`SEED_ENV`] if set and numeric, otherwise `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

pub fn random_poset_from_env(n: usize, density: f64, default_seed: u64) -> Poset {
    random_poset(n, density, seed_from_env(default_seed))
}
