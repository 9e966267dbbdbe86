//! Property tests: invariants across random posets, graphs and colorings,
//! each checked against an independent brute-force route.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use posetdim::coloring::{
    auto_coloring, build_elimination_forest, coloring_from_forest, exact_min_p_centered,
    is_p_centered, is_p_centered_literal, Coloring, ForestMode,
};
use posetdim::generators::{adjacency_poset, random_poset};
use posetdim::oracle::{
    dimension_by_extensions, exact_chromatic_number, exact_dimension, linear_extensions,
};
use posetdim::realizer::{
    build_realizer_from_partition, compute_signature_table, run_partition, signature_count_bound,
    star_coloring, PartitionOptions, StarredColor,
};
use posetdim::reversal::{extend_reversed, find_alternating_cycle, is_reversible, validate_realizer};
use posetdim::{Error, Graph, Poset};

fn random_graph(n: usize, density: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn random_coloring(n: usize, colors: usize, seed: u64) -> Coloring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Coloring::new((0..n).map(|_| rng.gen_range(0..colors)).collect())
}

fn poset_strategy(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n, 0.0f64..0.7, any::<u64>()).prop_map(|(n, d, s)| random_poset(n, d, s))
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0f64..0.8, any::<u64>()).prop_map(|(n, d, s)| random_graph(n, d, s))
}

/// Reversible iff some linear extension puts every `y` before its `x`.
fn reversible_by_brute_force(exts: &[posetdim::LinearExtension], pairs: &[(usize, usize)]) -> bool {
    exts.iter().any(|e| {
        let pos = e.positions();
        pairs.iter().all(|&(x, y)| pos[y] < pos[x])
    })
}

/// `(x, signature, y)` for every covering chain from `x` to `y`, by explicit
/// path enumeration.
fn chain_signatures(p: &Poset, star: &[StarredColor]) -> BTreeSet<(usize, Vec<StarredColor>, usize)> {
    fn walk(
        p: &Poset,
        star: &[StarredColor],
        start: usize,
        path: &mut Vec<usize>,
        out: &mut BTreeSet<(usize, Vec<StarredColor>, usize)>,
    ) {
        let last = *path.last().unwrap();
        out.insert((start, path.iter().map(|&z| star[z]).collect(), last));
        for &z in p.upper_covers(last) {
            path.push(z);
            walk(p, star, start, path, out);
            path.pop();
        }
    }
    let mut out = BTreeSet::new();
    for x in 0..p.len() {
        walk(p, star, x, &mut vec![x], &mut out);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_is_a_metric(g in graph_strategy(7)) {
        let n = g.len();
        let d = |u, v| g.distance(u, v).unwrap();
        for u in 0..n {
            prop_assert_eq!(d(u, u), Some(0));
            for v in 0..n {
                prop_assert_eq!(d(u, v), d(v, u));
                for w in 0..n {
                    if let (Some(a), Some(b)) = (d(u, v), d(v, w)) {
                        prop_assert!(d(u, w).unwrap() <= a + b);
                    }
                }
            }
        }
    }

    #[test]
    fn girth_detects_cycles(g in graph_strategy(9)) {
        let forest = g.edge_count() + g.connected_components().len() <= g.len();
        prop_assert_eq!(g.girth().is_none(), forest);
    }

    #[test]
    fn grad_bounds(g in graph_strategy(7)) {
        let base = num_rational::Ratio::new(g.edge_count() as u64, g.len() as u64);
        let mut prev = g.grad(0).unwrap();
        prop_assert!(prev >= base);
        for r in 1..3 {
            let next = g.grad(r).unwrap();
            prop_assert!(next >= prev);
            prev = next;
        }
    }

    #[test]
    fn order_trichotomy(p in poset_strategy(9)) {
        for x in 0..p.len() {
            for y in 0..p.len() {
                let cases = [x == y, p.lt(x, y), p.lt(y, x), p.incomparable(x, y)];
                prop_assert_eq!(cases.iter().filter(|&&c| c).count(), 1);
            }
        }
    }

    #[test]
    fn covers_are_irreducible(p in poset_strategy(9)) {
        for (a, b) in p.covers() {
            let others: Vec<_> = p.covers().into_iter().filter(|&c| c != (a, b)).collect();
            let reduced = Poset::from_relations(p.len(), &others).unwrap();
            prop_assert!(!reduced.leq(a, b));
        }
    }

    #[test]
    fn reversibility_matches_brute_force(p in poset_strategy(6), seed in any::<u64>()) {
        let inc = p.incomparable_pairs();
        prop_assume!(!inc.is_empty());
        let exts = linear_extensions(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let k = rng.gen_range(0..=4.min(inc.len()));
            let pairs: Vec<_> = (0..k).map(|_| inc[rng.gen_range(0..inc.len())]).collect();
            let fast = is_reversible(&p, &pairs).unwrap();
            prop_assert_eq!(fast, reversible_by_brute_force(&exts, &pairs));
            match find_alternating_cycle(&p, &pairs).unwrap() {
                Some(c) => {
                    prop_assert!(!fast);
                    prop_assert!(c.is_valid_for(&p));
                }
                None => prop_assert!(fast),
            }
            match extend_reversed(&p, &pairs) {
                Ok(e) => {
                    prop_assert!(e.check(&p).is_ok());
                    let pos = e.positions();
                    prop_assert!(pairs.iter().all(|&(x, y)| pos[y] < pos[x]));
                }
                Err(Error::NotReversible(c)) => {
                    prop_assert!(!fast);
                    prop_assert!(c.is_valid_for(&p));
                }
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }

    #[test]
    fn subset_and_literal_verifiers_agree(
        g in graph_strategy(8), colors in 1usize..=4, seed in any::<u64>(), p in 1usize..=5
    ) {
        let col = random_coloring(g.len(), colors, seed);
        prop_assert_eq!(
            is_p_centered(&g, &col, p).unwrap().is_centered(),
            is_p_centered_literal(&g, &col, p).unwrap().is_centered()
        );
    }

    #[test]
    fn refinements_stay_centered(g in graph_strategy(8), seed in any::<u64>()) {
        for p in 2..=4 {
            let col = exact_min_p_centered(&g, p).unwrap();
            prop_assert!(is_p_centered(&g, &col, p).unwrap().is_centered());
            let refined = col.refine(&random_coloring(g.len(), 3, seed)).unwrap();
            prop_assert!(is_p_centered_literal(&g, &refined, p).unwrap().is_centered());
        }
    }

    #[test]
    fn forest_colorings_are_centered(g in graph_strategy(10)) {
        for mode in [ForestMode::ExactSmall, ForestMode::Heuristic] {
            let f = build_elimination_forest(&g, mode).unwrap();
            f.check_for(&g).unwrap();
            let col = coloring_from_forest(&g, &f).unwrap();
            for p in 2..=f.depth() + 1 {
                prop_assert!(is_p_centered(&g, &col, p).unwrap().is_centered());
            }
        }
    }

    #[test]
    fn signature_table_matches_chain_enumeration(p in poset_strategy(10), seed in any::<u64>()) {
        let col = random_coloring(p.len(), 2, seed);
        let star = star_coloring(&p, &col).unwrap();
        let table = compute_signature_table(&p, &star);
        table.check_invariants().unwrap();

        let chains = chain_signatures(&p, &star);
        let mut expected: BTreeMap<(usize, Vec<StarredColor>), BTreeSet<usize>> = BTreeMap::new();
        for (x, sig, y) in chains {
            expected.entry((x, sig)).or_default().insert(y);
        }
        let mut actual = BTreeMap::new();
        for x in 0..p.len() {
            for (&sigma, ups) in table.upsets_of(x) {
                let sig = table.signature(sigma).colors().to_vec();
                actual.insert((x, sig), ups.ones().collect::<BTreeSet<_>>());
            }
        }
        prop_assert_eq!(actual, expected);

        let h = p.height() as u32;
        let bound = signature_count_bound(h, col.color_count() as u32);
        prop_assert!(num_bigint::BigUint::from(table.signatures().len()) <= bound);
    }

    /// Tight colorings: minimum 2h-centered colorings rather than fully
    /// centered ones, with the up-front check off so only the structural
    /// checks guard the construction.
    #[test]
    fn tight_centered_colorings_certify(p in poset_strategy(9)) {
        let g = p.cover_graph();
        let col = exact_min_p_centered(&g, 2 * p.height()).unwrap();
        let run = run_partition(&p, &col, PartitionOptions { verify_coloring: false }).unwrap();
        prop_assert!(run.partition.covers_exactly(&p));
        let exts = build_realizer_from_partition(&p, &run.partition).unwrap();
        prop_assert!(validate_realizer(&p, &exts).unwrap().is_valid());
        for block in run.index.blocks() {
            for set in 0..block.family().len() {
                prop_assert_eq!(block.leaves_under(set), block.family()[set].clone());
            }
        }
        prop_assert!(exact_dimension(&p).unwrap().value <= exts.len());
    }

    #[test]
    fn oracles_agree(p in poset_strategy(6)) {
        let cert = exact_dimension(&p).unwrap();
        prop_assert_eq!(cert.value, dimension_by_extensions(&p).unwrap());
        prop_assert_eq!(cert.realizer.len(), cert.value);
        prop_assert!(validate_realizer(&p, &cert.realizer).unwrap().is_valid());
    }

    #[test]
    fn dimension_is_monotone(p in poset_strategy(12), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let subset: Vec<usize> = (0..p.len()).filter(|_| rng.gen_bool(0.6)).collect();
        prop_assume!(!subset.is_empty());
        let sub = p.induced(&subset).unwrap();
        prop_assert!(exact_dimension(&sub).unwrap().value <= exact_dimension(&p).unwrap().value);
    }

    #[test]
    fn adjacency_dimension_at_least_chromatic(g in graph_strategy(7)) {
        let p = adjacency_poset(&g);
        prop_assert!(p.cover_graph().is_bipartite());
        let chi = exact_chromatic_number(&g).unwrap().0;
        prop_assert!(exact_dimension(&p).unwrap().value >= chi);
    }

    #[test]
    fn auto_coloring_pipeline(p in poset_strategy(14)) {
        let col = auto_coloring(&p.cover_graph());
        let run = run_partition(&p, &col, PartitionOptions::default()).unwrap();
        prop_assert!(run.partition.covers_exactly(&p));
        let exts = build_realizer_from_partition(&p, &run.partition).unwrap();
        prop_assert!(validate_realizer(&p, &exts).unwrap().is_valid());
    }
}

#[test]
fn adjacency_cover_graph_keeps_degree_below_girth() {
    for seed in 0..200u64 {
        let g = random_graph(8, 0.25, seed);
        let Some(girth) = g.girth() else { continue };
        if g.max_degree() > girth {
            continue;
        }
        let cg = adjacency_poset(&g).cover_graph();
        assert!(cg.max_degree() <= cg.girth().unwrap_or(usize::MAX), "seed {seed}");
    }
}

#[test]
fn treedepth_matches_exhaustive_forest_search() {
    // every parent array on the path P7, keeping valid elimination forests
    let g = posetdim::generators::path_graph(7).unwrap();
    let n = g.len();
    let mut best = usize::MAX;
    let mut parents = vec![0usize; n];
    loop {
        let candidate: Vec<Option<usize>> =
            parents.iter().map(|&q| if q == n { None } else { Some(q) }).collect();
        if candidate.iter().enumerate().all(|(v, q)| *q != Some(v)) {
            if let Ok(f) = posetdim::EliminationForest::from_parents(candidate) {
                if f.check_for(&g).is_ok() {
                    best = best.min(f.depth());
                }
            }
        }
        let mut i = 0;
        while i < n && parents[i] == n {
            parents[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        parents[i] += 1;
    }
    let exact = build_elimination_forest(&g, ForestMode::ExactSmall).unwrap();
    assert_eq!(best, 3);
    assert_eq!(exact.depth(), best);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn formats_roundtrip(p in poset_strategy(12), g in graph_strategy(9), seed in any::<u64>()) {
        use posetdim::formats::*;
        prop_assert!(parse_poset(&write_poset(&p)).unwrap().same_order(&p));
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g.clone());
        let col = random_coloring(g.len(), 3, seed);
        prop_assert_eq!(parse_coloring(&write_coloring(&col)).unwrap(), col);
        let exts = exact_dimension(&p).unwrap().realizer;
        prop_assert_eq!(parse_realizer(&write_realizer(&exts)).unwrap(), exts);
    }

    #[test]
    fn uncentered_colorings_are_rejected(p in poset_strategy(10), seed in any::<u64>()) {
        let col = random_coloring(p.len(), 2, seed);
        let centered = is_p_centered_literal(&p.cover_graph(), &col, 2 * p.height())
            .unwrap()
            .is_centered();
        let run = run_partition(&p, &col, PartitionOptions::default());
        if centered {
            prop_assert!(run.is_ok());
        } else {
            prop_assert!(matches!(run, Err(Error::Certification(_))));
        }
    }
}
