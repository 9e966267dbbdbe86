//! Batch runs over a manifest. Each non-comment manifest line is either a
//! generator spec (`kelly 3`, `incidence K4`) or a poset file path, relative
//! to the manifest's directory.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use posetdim::coloring::auto_coloring;
use posetdim::formats::parse_poset;
use posetdim::generators::NamedFamily;
use posetdim::oracle::{exact_dimension, DIMENSION_MAX_ELEMENTS};
use posetdim::realizer::{
    build_realizer_from_partition, dimension_bound_display, run_partition, PartitionOptions,
    StageTimings, UpfrontCheck,
};
use posetdim::reversal::validate_realizer;
use posetdim::{Error, Poset};

use super::{timing_fields, witness_line, CmdResult, Io, EXIT_FAILED, EXIT_OK};

/// Names of the per-row checks, in pipeline order.
const CHECKS: [&str; 7] = [
    "coloring",
    "upset-equality",
    "laminarity",
    "interval",
    "downset-side",
    "reversibility",
    "realizer",
];

#[derive(Clone, Debug)]
enum Source {
    Family(NamedFamily),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Status {
    Certified,
    ParseError(String),
    CertificationFailed(String),
    Error(String),
}

impl Status {
    fn tag(&self) -> &'static str {
        match self {
            Status::Certified => "certified",
            Status::ParseError(_) => "parse-error",
            Status::CertificationFailed(_) => "certification-failed",
            Status::Error(_) => "error",
        }
    }
}

#[derive(Clone, Debug, Default)]
struct Stats {
    n: usize,
    height: usize,
    colors: usize,
    signatures: usize,
    fingerprints: usize,
    classes: usize,
    bound: String,
}

/// One manifest row.
#[derive(Clone, Debug)]
pub(crate) struct RunReport {
    name: String,
    status: Status,
    stats: Option<Stats>,
    oracle_dimension: Option<usize>,
    checks: Vec<(&'static str, String)>,
    timings: Option<StageTimings>,
}

impl RunReport {
    fn failed(name: String, status: Status) -> Self {
        RunReport {
            name,
            status,
            stats: None,
            oracle_dimension: None,
            checks: Vec::new(),
            timings: None,
        }
    }

    fn passed(&self) -> bool {
        self.status == Status::Certified
    }

    fn machine_line(&self, timings: bool) -> String {
        let mut line = format!("row name={} status={}", self.name, self.status.tag());
        match &self.status {
            Status::Certified => {}
            Status::ParseError(why) | Status::CertificationFailed(why) | Status::Error(why) => {
                write!(line, " reason={why:?}").unwrap();
            }
        }
        if let Some(s) = &self.stats {
            write!(
                line,
                " n={} height={} colors={} signatures={} fingerprints={} classes={} bound={}",
                s.n, s.height, s.colors, s.signatures, s.fingerprints, s.classes, s.bound
            )
            .unwrap();
        }
        if self.stats.is_some() || self.oracle_dimension.is_some() {
            match self.oracle_dimension {
                Some(d) => write!(line, " dim={d}").unwrap(),
                None => line.push_str(" dim=-"),
            }
        }
        for (name, verdict) in &self.checks {
            write!(line, " {name}={verdict}").unwrap();
        }
        if timings {
            if let Some(t) = &self.timings {
                write!(line, " time-ms {}", timing_fields(t)).unwrap();
            }
        }
        line
    }
}

fn parse_manifest(text: &str, base: &Path) -> Vec<(String, Result<Source, String>)> {
    let mut rows = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[..] {
            [family, param] => {
                let name = format!("{family}:{param}");
                rows.push((name, NamedFamily::parse(family, param).map(Source::Family).map_err(|e| e.to_string())));
            }
            [path] => rows.push((path.to_string(), Ok(Source::File(base.join(path))))),
            _ => rows.push((line.replace(' ', "_"), Err(format!("cannot read manifest line {line:?}")))),
        }
    }
    rows
}

fn load(source: &Source) -> Result<Poset, Status> {
    match source {
        Source::Family(f) => f.build().map_err(|e| Status::Error(e.to_string())),
        Source::File(path) => {
            let text = fs::read_to_string(path).map_err(|e| Status::ParseError(format!("{}: {e}", path.display())))?;
            parse_poset(&text).map_err(|e| Status::ParseError(e.to_string()))
        }
    }
}

fn run_row(name: String, source: Result<Source, String>) -> RunReport {
    let p = match source.map_err(Status::ParseError).and_then(|s| load(&s)) {
        Ok(p) => p,
        Err(status) => return RunReport::failed(name, status),
    };
    let oracle_dimension = if p.len() <= DIMENSION_MAX_ELEMENTS {
        exact_dimension(&p).ok().map(|c| c.value)
    } else {
        None
    };
    let col = auto_coloring(&p.cover_graph());
    let run = match run_partition(&p, &col, PartitionOptions::default()) {
        Ok(run) => run,
        Err(Error::Certification(e)) => {
            let checks = CHECKS
                .iter()
                .map(|&c| (c, if c == e.check_name() { "fail" } else { "-" }.to_string()))
                .collect();
            return RunReport {
                checks,
                oracle_dimension,
                ..RunReport::failed(name, Status::CertificationFailed(witness_line(&e)))
            };
        }
        Err(e) => return RunReport::failed(name, Status::Error(e.to_string())),
    };
    let stats = Stats {
        n: p.len(),
        height: run.height,
        colors: run.colors,
        signatures: run.table.signatures().len(),
        fingerprints: run.index.blocks().len(),
        classes: run.partition.len(),
        bound: dimension_bound_display(run.height as u32, run.colors as u32),
    };
    let realizer_ok = build_realizer_from_partition(&p, &run.partition)
        .and_then(|exts| validate_realizer(&p, &exts))
        .is_ok_and(|v| v.is_valid());
    let c = run.counts;
    let upfront = match &run.upfront {
        UpfrontCheck::Verified => "verified".to_string(),
        UpfrontCheck::Skipped(_) => "skipped".to_string(),
    };
    let checks = vec![
        ("coloring", upfront),
        ("upset-equality", format!("ok:{}", c.upset_equality)),
        ("laminarity", format!("ok:{}", c.laminar_pairs)),
        ("interval", format!("ok:{}", c.intervals)),
        ("downset-side", format!("ok:{}", c.downset_sides)),
        ("reversibility", format!("ok:{}", c.reversible_classes)),
        ("realizer", if realizer_ok { "valid" } else { "invalid" }.to_string()),
    ];
    let consistent = oracle_dimension.is_none_or(|d| d <= stats.classes);
    let status = match (realizer_ok, consistent) {
        (true, true) => Status::Certified,
        (false, _) => Status::Error("assembled realizer is invalid".into()),
        (true, false) => Status::Error("oracle dimension exceeds class count".into()),
    };
    RunReport {
        name,
        status,
        stats: Some(stats),
        oracle_dimension,
        checks,
        timings: Some(run.timings),
    }
}

fn table(rows: &[RunReport]) -> String {
    let header = ["name", "status", "n", "h", "c", "sigs", "fps", "classes", "dim"];
    let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for r in rows {
        let dash = || "-".to_string();
        let s = r.stats.as_ref();
        cells.push(vec![
            r.name.clone(),
            r.status.tag().to_string(),
            s.map_or_else(dash, |s| s.n.to_string()),
            s.map_or_else(dash, |s| s.height.to_string()),
            s.map_or_else(dash, |s| s.colors.to_string()),
            s.map_or_else(dash, |s| s.signatures.to_string()),
            s.map_or_else(dash, |s| s.fingerprints.to_string()),
            s.map_or_else(dash, |s| s.classes.to_string()),
            r.oracle_dimension.map_or_else(dash, |d| d.to_string()),
        ]);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|i| cells.iter().map(|row| row[i].len()).max().unwrap())
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (cell, w))| if i < 2 { format!("{cell:<w$}") } else { format!("{cell:>w$}") })
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
    }
    out
}

pub(crate) fn report(io: &mut Io, manifest: &str, timings: bool) -> CmdResult {
    let text = io.read(manifest)?;
    let base = match manifest {
        "-" => PathBuf::from("."),
        path => Path::new(path).parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    let rows: Vec<RunReport> = parse_manifest(&text, &base)
        .into_iter()
        .map(|(name, source)| run_row(name, source))
        .collect();
    let mut out = String::new();
    for r in &rows {
        writeln!(out, "{}", r.machine_line(timings)).unwrap();
    }
    out.push_str(&table(&rows));
    let passed = rows.iter().filter(|r| r.passed()).count();
    writeln!(out, "summary rows={} certified={passed} failed={}", rows.len(), rows.len() - passed).unwrap();
    io.emit(&out)?;
    Ok(if passed == rows.len() { EXIT_OK } else { EXIT_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_lines() {
        let rows = parse_manifest("# corpus\nkelly 3\n\nposets/a.txt # file\nwhat is this\n", Path::new("base"));
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].0, "kelly:3");
        assert!(matches!(rows[0].1, Ok(Source::Family(NamedFamily::Kelly(3)))));
        assert!(matches!(&rows[1].1, Ok(Source::File(p)) if p == Path::new("base/posets/a.txt")));
        assert!(rows[2].1.is_err());
    }

    #[test]
    fn unknown_family_is_a_parse_error() {
        let r = run_row("nope:3".into(), parse_manifest("nope 3", Path::new(".")).remove(0).1);
        assert_eq!(r.status.tag(), "parse-error");
        assert!(r.machine_line(false).starts_with("row name=nope:3 status=parse-error reason="));
    }
}
