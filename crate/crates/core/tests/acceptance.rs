//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use posetdim::coloring::{auto_coloring, exact_min_p_centered, is_p_centered, is_p_centered_literal};
use posetdim::generators::*;
use posetdim::oracle::{
    contains_standard_example, dimension_by_extensions, exact_chromatic_number, exact_dimension,
    loglog_check,
};
use posetdim::realizer::{
    build_realizer_from_partition, dimension_bound, run_partition, within_dimension_bound,
    CertificationCounts, PartitionOptions, UpfrontCheck,
};
use posetdim::reversal::{is_reversible, validate_realizer};
use posetdim::{Coloring, Error, Graph, Poset};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> Vec<(String, Poset)> {
    let mut out = Vec::new();
    for d in 1..=4 {
        out.push((format!("S{d}"), standard_example(d).unwrap()));
    }
    for d in 2..=4 {
        out.push((format!("kelly{d}"), kelly(d).unwrap()));
    }
    for n in 3..=5 {
        out.push((format!("I_K{n}"), incidence_poset(&complete_graph(n))));
    }
    out.push(("P_C5".into(), adjacency_poset(&cycle_graph(5).unwrap())));
    out.push(("P_P4".into(), adjacency_poset(&path_graph(4).unwrap())));
    out.push(("B3".into(), boolean_lattice(3).unwrap()));
    for i in 0..100u64 {
        let n = 1 + (i as usize % 12);
        let density = [0.15, 0.3, 0.5][i as usize % 3];
        out.push((format!("random{i}"), random_poset(n, density, 1000 + i)));
    }
    out
}

fn standard_examples() -> Outcome {
    let start = Instant::now();
    let mut dims = Vec::new();
    for d in 1..=5 {
        dims.push(exact_dimension(&standard_example(d).unwrap()).map_err(|e| e.to_string())?.value);
    }
    let elapsed = start.elapsed();
    let report = (1..=5).map(|d| format!("dim(S{d})={}", dims[d - 1])).collect::<Vec<_>>().join(" ");
    // S1 has no comparable pairs, so it is a two-point antichain
    let mismatched: Vec<usize> = (1..=5).filter(|&d| dims[d - 1] != d).collect();
    check(mismatched.is_empty(), || format!("{report}; expected dim = d, mismatch at d in {mismatched:?}"))?;
    check(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{report} in {elapsed:.2?}"))
}

fn kelly_instances() -> Outcome {
    let mut dims = Vec::new();
    for d in 2..=4 {
        let p = kelly(d).unwrap();
        check(p.len() == 4 * d - 2, || format!("kelly({d}) has {} points", p.len()))?;
        let w = contains_standard_example(&p, d).map_err(|e| e.to_string())?;
        check(w.as_ref().is_some_and(|w| w.is_valid_for(&p)), || {
            format!("no S{d} inside kelly({d})")
        })?;
        let dim = exact_dimension(&p).map_err(|e| e.to_string())?.value;
        check(dim >= d, || format!("dim(kelly({d})) = {dim}"))?;
        dims.push(format!("dim(kelly{d})={dim}"));
    }
    Ok(dims.join(" "))
}

struct PipelineStats {
    counts: CertificationCounts,
    classes: usize,
}

fn certify(name: &str, p: &Poset) -> Result<PipelineStats, String> {
    let col = auto_coloring(&p.cover_graph());
    let run = run_partition(p, &col, PartitionOptions::default()).map_err(|e| format!("{name}: {e}"))?;
    check(run.upfront == UpfrontCheck::Verified, || format!("{name}: coloring not verified"))?;
    for (key, pairs) in run.partition.classes() {
        check(is_reversible(p, pairs).unwrap(), || format!("{name}: class {key} not reversible"))?;
    }
    check(run.partition.covers_exactly(p), || format!("{name}: classes do not partition Inc(P)"))?;
    check(
        within_dimension_bound(run.partition.len(), run.height as u32, run.colors as u32),
        || format!("{name}: {} classes exceed the bound", run.partition.len()),
    )?;
    let exts = build_realizer_from_partition(p, &run.partition).map_err(|e| format!("{name}: {e}"))?;
    check(validate_realizer(p, &exts).unwrap().is_valid(), || format!("{name}: invalid realizer"))?;
    Ok(PipelineStats {
        counts: run.counts,
        classes: run.partition.len(),
    })
}

fn end_to_end() -> Outcome {
    let start = Instant::now();
    let corpus = corpus();
    let mut classes = 0;
    for (name, p) in &corpus {
        classes += certify(name, p)?.classes;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{} posets, {classes} classes, 0 failures in {elapsed:.2?}", corpus.len()))
}

/// A poset whose cover graph is `g`, from a seeded orientation of its edges;
/// orientations that make some edge transitive are redrawn.
fn oriented(g: &Graph, rng: &mut ChaCha8Rng) -> Poset {
    loop {
        let rels: Vec<_> = g
            .edges()
            .iter()
            .map(|&(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) })
            .collect();
        if let Ok(p) = Poset::from_relations(g.len(), &rels) {
            if p.cover_graph().edges() == g.edges() {
                return p;
            }
        }
    }
}

fn runtime_checks() -> Outcome {
    let mut total = CertificationCounts::default();
    for (name, p) in corpus() {
        let c = certify(&name, &p)?.counts;
        total.upset_equality += c.upset_equality;
        total.laminar_pairs += c.laminar_pairs;
        total.intervals += c.intervals;
        total.downset_sides += c.downset_sides;
        total.reversible_classes += c.reversible_classes;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut bad, mut caught, mut structural) = (0, 0, 0);
    for case in 0..50 {
        let len = rng.gen_range(4..=10);
        let g = if case % 2 == 0 { path_graph(len) } else { cycle_graph(len) }.unwrap();
        let p = oriented(&g, &mut rng);
        let col = Coloring::constant(p.len());
        if is_p_centered_literal(&g, &col, 2 * p.height()).unwrap().is_centered() {
            continue;
        }
        bad += 1;
        if matches!(run_partition(&p, &col, PartitionOptions::default()), Err(Error::Certification(_))) {
            caught += 1;
        }
        let unguarded = run_partition(&p, &col, PartitionOptions { verify_coloring: false });
        if matches!(unguarded, Err(Error::Certification(_))) {
            structural += 1;
        }
    }
    check(caught == bad, || format!("only {caught} of {bad} bad colorings rejected"))?;
    Ok(format!(
        "checks passed: {} upset, {} laminar, {} interval, {} downset, {} reversible; \
         rejected {caught}/{bad} bad colorings ({structural} without the up-front check)",
        total.upset_equality, total.laminar_pairs, total.intervals, total.downset_sides, total.reversible_classes
    ))
}

/// Set partitions of `0..n` as restricted growth strings.
fn all_colorings(n: usize) -> Vec<Coloring> {
    fn grow(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Coloring>) {
        if prefix.len() == n {
            out.push(Coloring::new(prefix.clone()));
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for c in 0..=next {
            prefix.push(c);
            grow(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), n, &mut out);
    out
}

fn verifier_equivalence() -> Outcome {
    let mut checks = 0usize;
    let mut compare = |g: &Graph, col: &Coloring| -> Result<(), String> {
        for p in 2..=4 {
            checks += 1;
            let a = is_p_centered(g, col, p).unwrap().is_centered();
            let b = is_p_centered_literal(g, col, p).unwrap().is_centered();
            check(a == b, || format!("disagree on {:?} colored {:?}, p={p}", g.edges(), col.colors()))?;
        }
        Ok(())
    };
    for n in 1..=5 {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let colorings = all_colorings(n);
        for mask in 0u32..1 << slots.len() {
            let edges: Vec<_> = (0..slots.len()).filter(|i| mask >> i & 1 == 1).map(|i| slots[i]).collect();
            let g = Graph::new(n, &edges).unwrap();
            for col in &colorings {
                compare(&g, col)?;
            }
        }
    }
    let mut graphs: Vec<Graph> = corpus().iter().map(|(_, p)| p.cover_graph()).filter(|g| g.len() <= 8).collect();
    graphs.extend([
        cycle_graph(5).unwrap(),
        cycle_graph(7).unwrap(),
        path_graph(6).unwrap(),
        complete_graph(5),
        grid_2xk(3).unwrap(),
        star_graph(5),
    ]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for g in &graphs {
        compare(g, &auto_coloring(g))?;
        for p in 2..=4 {
            compare(g, &exact_min_p_centered(g, p).unwrap())?;
        }
        for _ in 0..20 {
            let k = rng.gen_range(1..=4);
            compare(g, &Coloring::new((0..g.len()).map(|_| rng.gen_range(0..k)).collect()))?;
        }
    }
    Ok(format!("{checks} verdicts agree"))
}

fn adjacency_instances() -> Outcome {
    let mut notes = Vec::new();
    for name in ["C5", "C7", "P6", "petersen"] {
        let g = match name {
            "C5" => cycle_graph(5).unwrap(),
            "C7" => cycle_graph(7).unwrap(),
            "P6" => path_graph(6).unwrap(),
            _ => petersen(),
        };
        let p = adjacency_poset(&g);
        let cg = p.cover_graph();
        check(cg.max_degree() == g.max_degree(), || format!("{name}: degree changed"))?;
        let girth_ok = match (g.girth(), cg.girth()) {
            (Some(a), Some(b)) => b >= a,
            (_, None) => true,
            (None, Some(_)) => false,
        };
        check(girth_ok, || format!("{name}: girth dropped"))?;
        if name == "petersen" {
            notes.push("petersen degree/girth only".to_string());
            continue;
        }
        let chi = exact_chromatic_number(&g).unwrap().0;
        let dim = exact_dimension(&p).map_err(|e| e.to_string())?.value;
        check(dim >= chi, || format!("{name}: dim {dim} < chi {chi}"))?;
        notes.push(format!("{name} dim={dim} chi={chi}"));
    }
    Ok(notes.join(", "))
}

fn incidence_instances() -> Outcome {
    let k4 = exact_dimension(&incidence_poset(&complete_graph(4))).map_err(|e| e.to_string())?.value;
    let k5 = exact_dimension(&incidence_poset(&complete_graph(5))).map_err(|e| e.to_string())?.value;
    check(k4 <= 3, || format!("dim(I_K4) = {k4}"))?;
    check(k5 == 4, || format!("dim(I_K5) = {k5}"))?;
    for n in 2..=5 {
        let c = loglog_check(n).map_err(|e| e.to_string())?;
        check(c.holds, || format!("loglog fails at n={n}"))?;
    }
    Ok(format!("dim(I_K4)={k4} dim(I_K5)={k5}, loglog holds for n=2..5"))
}

fn oracle_consistency() -> Outcome {
    for i in 0..500u64 {
        let n = 1 + (i as usize % 6);
        let density = (i % 7) as f64 / 7.0;
        let p = random_poset(n, density, 8000 + i);
        let a = exact_dimension(&p).map_err(|e| e.to_string())?.value;
        let b = dimension_by_extensions(&p).map_err(|e| e.to_string())?;
        check(a == b, || format!("seed {}: partition {a} vs extensions {b}", 8000 + i))?;
    }
    Ok("500 of 500 agree".into())
}

fn bound_arithmetic() -> Outcome {
    let small = dimension_bound(1, 1).map_err(|e| e.to_string())?;
    check(small == BigUint::from(4u32), || format!("bound(1,1) = {small}"))?;
    let big = dimension_bound(2, 2).map_err(|e| e.to_string())?.to_string();
    check(big == "18446744073709551616", || format!("bound(2,2) = {big}"))?;
    Ok(format!("bound(1,1)=4 bound(2,2)={big}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("standard examples", standard_examples),
        ("kelly instances", kelly_instances),
        ("end-to-end certification", end_to_end),
        ("runtime checks and bad-coloring fuzz", runtime_checks),
        ("centered-coloring verifier equivalence", verifier_equivalence),
        ("adjacency posets", adjacency_instances),
        ("incidence posets", incidence_instances),
        ("dimension oracle consistency", oracle_consistency),
        ("bound arithmetic", bound_arithmetic),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
