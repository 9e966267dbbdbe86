//! Reversibility of sets of incomparable pairs.
//!
//! A set of incomparable pairs can be reversed by a single linear extension
//! exactly when it contains no alternating cycle, i.e. no sequence
//! `(x_1, y_1), ..., (x_k, y_k)` with `x_i <= y_{i+1}` cyclically.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::poset::{topo_sort_min_first, LinearExtension, Poset};

/// Pairs listed so that `x_i <= y_{i+1}` holds cyclically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingCycle(pub Vec<(usize, usize)>);

impl AlternatingCycle {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks the defining condition against `p`.
    pub fn is_valid_for(&self, p: &Poset) -> bool {
        let k = self.0.len();
        k >= 2
            && self.0.iter().all(|&(x, y)| p.incomparable(x, y))
            && (0..k).all(|i| p.leq(self.0[i].0, self.0[(i + 1) % k].1))
    }
}

impl fmt::Display for AlternatingCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, y)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({x},{y})")?;
        }
        Ok(())
    }
}

fn check_pairs(p: &Poset, pairs: &[(usize, usize)]) -> Result<()> {
    for &(x, y) in pairs {
        Error::check_id(x, p.len())?;
        Error::check_id(y, p.len())?;
        if !p.incomparable(x, y) {
            return Err(Error::NotIncomparable(x, y));
        }
    }
    Ok(())
}

/// Shortest alternating cycle among `pairs`, found by breadth-first search
/// over the digraph with an arc `i -> j` whenever `x_i <= y_j`. Ties go to
/// the cycle through the earliest pair.
pub fn find_alternating_cycle(
    p: &Poset,
    pairs: &[(usize, usize)],
) -> Result<Option<AlternatingCycle>> {
    check_pairs(p, pairs)?;
    let m = pairs.len();
    // pairs grouped by their y
    let mut by_top = vec![FixedBitSet::with_capacity(m); p.len()];
    for (j, &(_, y)) in pairs.iter().enumerate() {
        by_top[y].insert(j);
    }
    let succ: Vec<FixedBitSet> = pairs
        .iter()
        .map(|&(x, _)| {
            let mut s = FixedBitSet::with_capacity(m);
            for y in p.upset(x).ones() {
                s.union_with(&by_top[y]);
            }
            s
        })
        .collect();

    let mut best: Option<Vec<usize>> = None;
    for start in 0..m {
        let limit = best.as_ref().map_or(usize::MAX, Vec::len);
        if let Some(cycle) = shortest_cycle_through(&succ, start, limit) {
            best = Some(cycle);
            if best.as_ref().unwrap().len() == 2 {
                break;
            }
        }
    }
    Ok(best.map(|c| AlternatingCycle(c.into_iter().map(|i| pairs[i]).collect())))
}

/// Shortest directed cycle through `start` strictly shorter than `limit`.
fn shortest_cycle_through(succ: &[FixedBitSet], start: usize, limit: usize) -> Option<Vec<usize>> {
    let m = succ.len();
    let mut prev = vec![usize::MAX; m];
    let mut dist = vec![usize::MAX; m];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if dist[u] + 1 >= limit {
            return None;
        }
        if succ[u].contains(start) {
            let mut cycle = vec![u];
            let mut v = u;
            while v != start {
                v = prev[v];
                cycle.push(v);
            }
            cycle.reverse();
            return Some(cycle);
        }
        for w in succ[u].ones() {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Cover arcs of `p` plus an arc `y -> x` for each pair.
fn reversal_digraph(p: &Poset, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut succ: Vec<Vec<usize>> = (0..p.len()).map(|x| p.upper_covers(x).to_vec()).collect();
    for &(x, y) in pairs {
        succ[y].push(x);
    }
    succ
}

/// True iff some linear extension puts `y` below `x` for every `(x, y)` in
/// `pairs`. Decided by acyclicity of the cover DAG with every pair's arc
/// reversed; agrees with [`find_alternating_cycle`] returning `None`.
pub fn is_reversible(p: &Poset, pairs: &[(usize, usize)]) -> Result<bool> {
    check_pairs(p, pairs)?;
    Ok(topo_sort_min_first(&reversal_digraph(p, pairs)).is_ok())
}

/// A linear extension with `y` before `x` for each `(x, y)` in `pairs`.
/// Smallest available element first.
pub fn extend_reversed(p: &Poset, pairs: &[(usize, usize)]) -> Result<LinearExtension> {
    check_pairs(p, pairs)?;
    match topo_sort_min_first(&reversal_digraph(p, pairs)) {
        Ok(order) => Ok(LinearExtension(order)),
        Err(_) => {
            let cycle = find_alternating_cycle(p, pairs)?
                .expect("cyclic reversal digraph implies an alternating cycle");
            Err(Error::NotReversible(cycle))
        }
    }
}

/// Why a list of linear extensions fails to realize a poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizerFailure {
    /// `x` precedes `y` in every extension although `x` and `y` are
    /// incomparable.
    NeverReversed { x: usize, y: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizerVerdict {
    Valid,
    Invalid(RealizerFailure),
}

impl RealizerVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, RealizerVerdict::Valid)
    }
}

/// Checks that the intersection of `exts` is exactly `p`. Each extension
/// must itself be a linear extension of `p`.
pub fn validate_realizer(p: &Poset, exts: &[LinearExtension]) -> Result<RealizerVerdict> {
    for e in exts {
        e.check(p)?;
    }
    let positions: Vec<Vec<usize>> = exts.iter().map(LinearExtension::positions).collect();
    let n = p.len();
    for x in 0..n {
        for y in 0..n {
            if x == y || p.lt(x, y) {
                continue;
            }
            if positions.iter().all(|pos| pos[x] < pos[y]) {
                return Ok(RealizerVerdict::Invalid(RealizerFailure::NeverReversed {
                    x,
                    y,
                }));
            }
        }
    }
    Ok(RealizerVerdict::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn antichain(n: usize) -> Poset {
        Poset::from_relations(n, &[]).unwrap()
    }

    /// a1=0, a2=1, b1=2, b2=3
    fn s2() -> Poset {
        Poset::from_relations(4, &[(0, 3), (1, 2)]).unwrap()
    }

    #[test]
    fn two_cycle_on_antichain() {
        let p = antichain(2);
        let c = find_alternating_cycle(&p, &[(0, 1), (1, 0)]).unwrap().unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.is_valid_for(&p));
        assert!(find_alternating_cycle(&p, &[(0, 1)]).unwrap().is_none());
    }

    #[test]
    fn standard_example_cycle() {
        let p = s2();
        let c = find_alternating_cycle(&p, &[(0, 2), (1, 3)]).unwrap().unwrap();
        assert_eq!(c.pairs(), &[(0, 2), (1, 3)]);
        assert!(c.is_valid_for(&p));
        assert!(!is_reversible(&p, &[(0, 2), (1, 3)]).unwrap());
        assert!(is_reversible(&p, &[(0, 2), (3, 1)]).unwrap());
        assert!(is_reversible(&p, &[]).unwrap());
    }

    #[test]
    fn rejects_comparable_pairs() {
        let p = s2();
        assert!(matches!(
            is_reversible(&p, &[(0, 3)]),
            Err(Error::NotIncomparable(0, 3))
        ));
        assert!(find_alternating_cycle(&p, &[(2, 2)]).is_err());
    }

    #[test]
    fn reversing_extensions() {
        let chain = Poset::from_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(extend_reversed(&chain, &[]).unwrap().order(), &[0, 1, 2]);
        assert_eq!(extend_reversed(&antichain(2), &[(0, 1)]).unwrap().order(), &[1, 0]);

        let p = s2();
        let e = extend_reversed(&p, &[(0, 2), (3, 1)]).unwrap();
        e.check(&p).unwrap();
        let pos = e.positions();
        assert!(pos[2] < pos[0] && pos[1] < pos[3]);
        match extend_reversed(&p, &[(0, 2), (1, 3)]) {
            Err(Error::NotReversible(c)) => assert!(c.is_valid_for(&p)),
            other => panic!("expected NotReversible, got {other:?}"),
        }
    }

    #[test]
    fn realizers() {
        let chain = Poset::from_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(validate_realizer(&chain, &[chain.default_extension()])
            .unwrap()
            .is_valid());

        let p = s2();
        let l1 = extend_reversed(&p, &[(0, 2), (3, 1)]).unwrap();
        let l2 = extend_reversed(&p, &[(1, 3), (2, 0)]).unwrap();
        assert!(validate_realizer(&p, &[l1.clone(), l2]).unwrap().is_valid());
        assert!(!validate_realizer(&p, &[l1]).unwrap().is_valid());

        let a = antichain(2);
        assert_eq!(
            validate_realizer(&a, &[LinearExtension(vec![0, 1])]).unwrap(),
            RealizerVerdict::Invalid(RealizerFailure::NeverReversed { x: 0, y: 1 })
        );
        assert!(matches!(
            validate_realizer(&chain, &[LinearExtension(vec![2, 1, 0])]),
            Err(Error::NotLinearExtension(_))
        ));
    }
}
