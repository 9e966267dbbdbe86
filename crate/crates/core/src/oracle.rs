//! Exact brute-force ground truth for small instances: dimension, chromatic
//! number, and standard-example containment.

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::generators::{complete_graph, incidence_poset};
use crate::graph::Graph;
use crate::poset::{LinearExtension, Poset};
use crate::reversal::extend_reversed;

pub const DIMENSION_MAX_ELEMENTS: usize = 16;
/// Hard ceiling for [`exact_dimension_capped`]; the search packs closures
/// into 64-bit words.
pub const DIMENSION_ABSOLUTE_MAX_ELEMENTS: usize = 64;
pub const EXTENSION_TUPLE_MAX_ELEMENTS: usize = 8;
pub const CHROMATIC_MAX_VERTICES: usize = 16;
pub const STANDARD_EXAMPLE_MAX_D: usize = 4;
pub const LOGLOG_MAX_N: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionCertificate {
    pub value: usize,
    /// Upper witness: `value` linear extensions realizing the poset.
    pub realizer: Vec<LinearExtension>,
    /// Lower witness: the critical pairs, which the search showed cannot be
    /// split into `value - 1` reversible sets. `None` when `value == 1`.
    pub hard_core: Option<Vec<(usize, usize)>>,
}

fn capacity(what: &'static str, limit: usize, got: usize) -> Error {
    Error::Capacity { what, limit, got }
}

fn up_masks(p: &Poset) -> Vec<u64> {
    (0..p.len())
        .map(|x| p.upset(x).ones().fold(0u64, |m, y| m | (1 << y)))
        .collect()
}

/// Minimum number of reversible sets partitioning the critical pairs (a
/// realizer only has to reverse those), found by backtracking over class
/// assignments in `(x, y)` order. Each class keeps the reachability closure
/// of the poset plus its reversed pairs, so a pair `(x, y)` fits a class iff
/// `y` is not reachable from `x` there.
pub fn exact_dimension(p: &Poset) -> Result<DimensionCertificate> {
    exact_dimension_capped(p, DIMENSION_MAX_ELEMENTS)
}

pub fn exact_dimension_capped(p: &Poset, max_elements: usize) -> Result<DimensionCertificate> {
    let limit = max_elements.min(DIMENSION_ABSOLUTE_MAX_ELEMENTS);
    if p.len() > limit {
        return Err(capacity("exact dimension", limit, p.len()));
    }
    let critical = p.critical_pairs();
    if critical.is_empty() {
        return Ok(DimensionCertificate {
            value: 1,
            realizer: vec![p.default_extension()],
            hard_core: None,
        });
    }
    let base = up_masks(p);
    for k in 2.. {
        let mut search = PartitionSearch {
            pairs: &critical,
            classes: vec![base.clone(); k],
            assignment: vec![0; critical.len()],
        };
        if search.assign(0, 0) {
            let mut groups = vec![Vec::new(); k];
            for (pair, &c) in critical.iter().zip(&search.assignment) {
                groups[c].push(*pair);
            }
            let realizer = groups
                .iter()
                .map(|g| extend_reversed(p, g))
                .collect::<Result<Vec<_>>>()?;
            return Ok(DimensionCertificate {
                value: k,
                realizer,
                hard_core: Some(critical),
            });
        }
    }
    unreachable!()
}

struct PartitionSearch<'a> {
    pairs: &'a [(usize, usize)],
    /// Per class, `reach[u]` is the set reachable from `u`.
    classes: Vec<Vec<u64>>,
    assignment: Vec<usize>,
}

impl PartitionSearch<'_> {
    fn assign(&mut self, i: usize, used: usize) -> bool {
        if i == self.pairs.len() {
            return true;
        }
        let (x, y) = self.pairs[i];
        let open = (used + 1).min(self.classes.len());
        for c in 0..open {
            let reach = &self.classes[c];
            if reach[x] & (1 << y) != 0 {
                continue;
            }
            let saved = reach.clone();
            let from_x = reach[x];
            for r in self.classes[c].iter_mut() {
                if *r & (1 << y) != 0 {
                    *r |= from_x;
                }
            }
            self.assignment[i] = c;
            if self.assign(i + 1, used.max(c + 1)) {
                return true;
            }
            self.classes[c] = saved;
        }
        false
    }
}

/// Every linear extension of `p`, in lexicographic order.
pub fn linear_extensions(p: &Poset) -> Result<Vec<LinearExtension>> {
    let n = p.len();
    if n > EXTENSION_TUPLE_MAX_ELEMENTS {
        return Err(capacity("linear extension enumeration", EXTENSION_TUPLE_MAX_ELEMENTS, n));
    }
    let below: Vec<u64> = (0..n)
        .map(|y| p.downset(y).ones().filter(|&x| x != y).fold(0u64, |m, x| m | (1 << x)))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(below: &[u64], placed: u64, current: &mut Vec<usize>, out: &mut Vec<LinearExtension>) {
        let n = below.len();
        if current.len() == n {
            out.push(LinearExtension(current.clone()));
            return;
        }
        for v in 0..n {
            if placed & (1 << v) == 0 && below[v] & !placed == 0 {
                current.push(v);
                rec(below, placed | (1 << v), current, out);
                current.pop();
            }
        }
    }
    rec(&below, 0, &mut current, &mut out);
    Ok(out)
}

/// Dimension as the smallest number of linear extensions whose intersection
/// is the poset, searching over tuples of extensions. Independent of
/// [`exact_dimension`]; only for very small posets.
pub fn dimension_by_extensions(p: &Poset) -> Result<usize> {
    let n = p.len();
    let exts = linear_extensions(p)?;
    // before[e][x]: elements after x in extension e
    let before: Vec<Vec<u64>> = exts
        .iter()
        .map(|e| {
            let mut masks = vec![0u64; n];
            let order = e.order();
            for i in 0..n {
                for &later in &order[i + 1..] {
                    masks[order[i]] |= 1 << later;
                }
            }
            masks
        })
        .collect();
    let target: Vec<u64> = up_masks(p)
        .into_iter()
        .enumerate()
        .map(|(x, m)| m & !(1 << x))
        .collect();

    fn search(before: &[Vec<u64>], target: &[u64], start: usize, left: usize, acc: &[u64]) -> bool {
        if left == 0 {
            return acc == target;
        }
        for e in start..before.len() {
            let next: Vec<u64> = acc.iter().zip(&before[e]).map(|(a, b)| a & b).collect();
            if search(before, target, e + 1, left - 1, &next) {
                return true;
            }
        }
        false
    }

    let all = vec![u64::MAX; n];
    for d in 1..=exts.len().max(1) {
        if search(&before, &target, 0, d, &all) {
            return Ok(d);
        }
    }
    unreachable!("the set of all linear extensions realizes the poset")
}

/// Chromatic number with a witness proper coloring, by backtracking over
/// vertices in decreasing degree order.
pub fn exact_chromatic_number(g: &Graph) -> Result<(usize, Coloring)> {
    let n = g.len();
    if n > CHROMATIC_MAX_VERTICES {
        return Err(capacity("chromatic number", CHROMATIC_MAX_VERTICES, n));
    }
    if n == 0 {
        return Ok((0, Coloring::new(Vec::new())));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    fn color(g: &Graph, order: &[usize], k: usize, i: usize, used: usize, colors: &mut [usize]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for c in 0..(used + 1).min(k) {
            if g.neighbors(v).iter().any(|&w| colors[w] == c) {
                continue;
            }
            colors[v] = c;
            if color(g, order, k, i + 1, used.max(c + 1), colors) {
                return true;
            }
            colors[v] = usize::MAX;
        }
        false
    }

    for k in 1..=n {
        let mut colors = vec![usize::MAX; n];
        if color(g, &order, k, 0, 0, &mut colors) {
            return Ok((k, Coloring::new(colors)));
        }
    }
    unreachable!()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardExampleWitness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl StandardExampleWitness {
    /// Induced subposet on the witness is `S_d` under `a_i -> a[i]`,
    /// `b_j -> b[j]`.
    pub fn is_valid_for(&self, p: &Poset) -> bool {
        let d = self.a.len();
        let mut all: Vec<usize> = self.a.iter().chain(&self.b).copied().collect();
        all.sort_unstable();
        all.dedup();
        if self.b.len() != d || all.len() != 2 * d || all.iter().any(|&x| x >= p.len()) {
            return false;
        }
        for i in 0..d {
            for j in 0..d {
                if i != j
                    && !(p.incomparable(self.a[i], self.a[j]) && p.incomparable(self.b[i], self.b[j]))
                {
                    return false;
                }
                let want = i != j;
                if p.lt(self.a[i], self.b[j]) != want || p.leq(self.b[j], self.a[i]) {
                    return false;
                }
            }
        }
        true
    }
}

/// First copy of `S_d` (with the `a` ids increasing) found by backtracking,
/// or `None`.
pub fn contains_standard_example(p: &Poset, d: usize) -> Result<Option<StandardExampleWitness>> {
    if d == 0 {
        return Err(Error::arg("d must be at least 1"));
    }
    if d > STANDARD_EXAMPLE_MAX_D {
        return Err(capacity("standard example search (d)", STANDARD_EXAMPLE_MAX_D, d));
    }
    let mut w = StandardExampleWitness {
        a: Vec::with_capacity(d),
        b: Vec::with_capacity(d),
    };
    Ok(extend_witness(p, d, &mut w).then_some(w))
}

fn extend_witness(p: &Poset, d: usize, w: &mut StandardExampleWitness) -> bool {
    let k = w.a.len();
    if k == d {
        return true;
    }
    let n = p.len();
    let first = w.a.last().map_or(0, |&a| a + 1);
    for a in first..n {
        if w.b.contains(&a)
            || !w.a.iter().all(|&a2| p.incomparable(a, a2))
            || !w.b.iter().all(|&b2| p.lt(a, b2))
        {
            continue;
        }
        for b in 0..n {
            if b == a
                || w.a.contains(&b)
                || w.b.contains(&b)
                || !p.incomparable(a, b)
                || !w.a.iter().all(|&a2| p.lt(a2, b))
                || !w.b.iter().all(|&b2| p.incomparable(b, b2))
            {
                continue;
            }
            w.a.push(a);
            w.b.push(b);
            if extend_witness(p, d, w) {
                return true;
            }
            w.a.pop();
            w.b.pop();
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogLogCheck {
    pub n: usize,
    pub dimension: usize,
    /// `log2 log2 n`.
    pub bound: f64,
    pub holds: bool,
}

/// Compares the dimension of the incidence poset of `K_n` with
/// `log2 log2 n`.
pub fn loglog_check(n: usize) -> Result<LogLogCheck> {
    if n == 0 {
        return Err(Error::arg("n must be at least 1"));
    }
    if n > LOGLOG_MAX_N {
        return Err(capacity("log-log check (n)", LOGLOG_MAX_N, n));
    }
    let dimension = exact_dimension(&incidence_poset(&complete_graph(n)))?.value;
    let bound = (n as f64).log2().log2();
    Ok(LogLogCheck {
        n,
        dimension,
        bound,
        holds: dimension as f64 >= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{antichain, boolean_lattice, chain, cycle_graph, kelly, petersen, standard_example};
    use crate::reversal::validate_realizer;

    #[test]
    fn small_dimensions() {
        let s3 = standard_example(3).unwrap();
        let cert = exact_dimension(&s3).unwrap();
        assert_eq!(cert.value, 3);
        assert_eq!(cert.realizer.len(), 3);
        assert!(validate_realizer(&s3, &cert.realizer).unwrap().is_valid());

        let c = exact_dimension(&chain(5).unwrap()).unwrap();
        assert_eq!(c.value, 1);
        assert!(c.hard_core.is_none());

        assert_eq!(exact_dimension(&antichain(4).unwrap()).unwrap().value, 2);
        assert!(exact_dimension(&antichain(17).unwrap()).is_err());
    }

    #[test]
    fn boolean_lattice_has_dimension_three() {
        let b = boolean_lattice(3).unwrap();
        assert_eq!(exact_dimension(&b).unwrap().value, 3);
    }

    #[test]
    fn extension_tuple_oracle() {
        assert_eq!(dimension_by_extensions(&chain(4).unwrap()).unwrap(), 1);
        assert_eq!(dimension_by_extensions(&antichain(3).unwrap()).unwrap(), 2);
        assert_eq!(dimension_by_extensions(&standard_example(3).unwrap()).unwrap(), 3);
        assert_eq!(linear_extensions(&antichain(4).unwrap()).unwrap().len(), 24);
        assert!(linear_extensions(&antichain(9).unwrap()).is_err());
    }

    #[test]
    fn chromatic_numbers() {
        let chi = |g: &Graph| exact_chromatic_number(g).unwrap().0;
        assert_eq!(chi(&complete_graph(4)), 4);
        assert_eq!(chi(&cycle_graph(5).unwrap()), 3);
        assert_eq!(chi(&petersen()), 3);
        assert_eq!(chi(&Graph::empty(3)), 1);
        let (_, col) = exact_chromatic_number(&petersen()).unwrap();
        assert!(petersen().edges().iter().all(|&(u, v)| col.color(u) != col.color(v)));
    }

    #[test]
    fn standard_example_search() {
        let k3 = kelly(3).unwrap();
        let w = contains_standard_example(&k3, 3).unwrap().unwrap();
        assert!(w.is_valid_for(&k3));
        assert_eq!(w.a, vec![0, 1, 2]);
        assert_eq!(w.b, vec![3, 4, 5]);
        assert!(contains_standard_example(&chain(4).unwrap(), 2).unwrap().is_none());
        let s4 = standard_example(4).unwrap();
        let w = contains_standard_example(&s4, 4).unwrap().unwrap();
        assert_eq!((w.a, w.b), (vec![0, 1, 2, 3], vec![4, 5, 6, 7]));
        assert!(contains_standard_example(&s4, 5).is_err());
    }

    #[test]
    fn loglog() {
        let c = loglog_check(2).unwrap();
        assert!(c.holds);
        assert_eq!(c.bound, 0.0);
        let c = loglog_check(4).unwrap();
        assert!(c.holds && c.dimension == 3);
        assert!(loglog_check(6).is_err());
    }
}
