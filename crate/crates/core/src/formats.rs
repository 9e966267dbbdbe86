//! Line-based ASCII formats for graphs, posets, colorings, realizers and
//! partitions. `#` starts a comment; blank lines are ignored.
//!
//! ```text
//! graph 3            poset 3          coloring 3 2      ext 0 1 2
//! label 0 hub        label 0 bottom   col 0 0           ext 1 0 2
//! edge 0 1           rel 0 1          col 1 1
//! edge 0 2           rel 0 2          col 2 1
//! ```

use std::fmt::Write as _;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poset::{LinearExtension, Poset};
use crate::realizer::IncPartition;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-empty lines with comments stripped, as `(line number, tokens)`.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap().trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn num(line: usize, tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} {tok:?}")))
}

fn no_more<'a>(line: usize, mut toks: impl Iterator<Item = &'a str>) -> Result<()> {
    match toks.next() {
        Some(t) => Err(parse_err(line, format!("unexpected token {t:?}"))),
        None => Ok(()),
    }
}

fn header(text: &str, keyword: &str) -> Result<(usize, Vec<usize>)> {
    let (line, content) = lines(text)
        .next()
        .ok_or_else(|| parse_err(1, format!("empty input, expected `{keyword} <n>`")))?;
    let mut toks = content.split_whitespace();
    if toks.next() != Some(keyword) {
        return Err(parse_err(line, format!("expected `{keyword}` header")));
    }
    let values = toks
        .map(|t| t.parse().map_err(|_| parse_err(line, format!("bad number {t:?}"))))
        .collect::<Result<Vec<usize>>>()?;
    Ok((line, values))
}

fn split_label(line: usize, rest: &str, n: usize) -> Result<(usize, String)> {
    let rest = rest.trim_start();
    let (id, label) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let id = num(line, Some(id), "id")?;
    if id >= n {
        return Err(parse_err(line, format!("id {id} out of range")));
    }
    let label = label.trim();
    if label.is_empty() {
        return Err(parse_err(line, "empty label"));
    }
    Ok((id, label.to_owned()))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let (hline, values) = header(text, "graph")?;
    let [n] = values[..] else {
        return Err(parse_err(hline, "expected `graph <n>`"));
    };
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (line, content) in lines(text).skip(1) {
        let (kw, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match kw {
            "label" => labels.push(split_label(line, rest, n)?),
            "edge" => {
                let mut toks = rest.split_whitespace();
                let u = num(line, toks.next(), "vertex")?;
                let v = num(line, toks.next(), "vertex")?;
                no_more(line, toks)?;
                if u >= n || v >= n {
                    return Err(parse_err(line, format!("edge {u} {v} out of range")));
                }
                if u == v {
                    return Err(parse_err(line, format!("loop at {u}")));
                }
                if edges.iter().any(|&e| e == (u.min(v), u.max(v))) {
                    return Err(parse_err(line, format!("duplicate edge {u} {v}")));
                }
                edges.push((u.min(v), u.max(v)));
            }
            other => return Err(parse_err(line, format!("unknown directive {other:?}"))),
        }
    }
    let mut g = Graph::new(n, &edges)?;
    for (id, l) in labels {
        g.set_label(id, l)?;
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("graph {}\n", g.len());
    for v in 0..g.len() {
        if let Some(l) = g.label(v) {
            writeln!(out, "label {v} {l}").unwrap();
        }
    }
    for &(u, v) in g.edges() {
        writeln!(out, "edge {u} {v}").unwrap();
    }
    out
}

/// `rel a b` lines mean `a < b`; any relation set generating a partial
/// order is accepted.
pub fn parse_poset(text: &str) -> Result<Poset> {
    let (hline, values) = header(text, "poset")?;
    let [n] = values[..] else {
        return Err(parse_err(hline, "expected `poset <n>`"));
    };
    let mut rels = Vec::new();
    let mut labels = Vec::new();
    for (line, content) in lines(text).skip(1) {
        let (kw, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match kw {
            "label" => labels.push(split_label(line, rest, n)?),
            "rel" => {
                let mut toks = rest.split_whitespace();
                let a = num(line, toks.next(), "element")?;
                let b = num(line, toks.next(), "element")?;
                no_more(line, toks)?;
                if a >= n || b >= n {
                    return Err(parse_err(line, format!("relation {a} {b} out of range")));
                }
                rels.push((a, b));
            }
            other => return Err(parse_err(line, format!("unknown directive {other:?}"))),
        }
    }
    let mut p = Poset::from_relations(n, &rels)?;
    for (id, l) in labels {
        p.set_label(id, l)?;
    }
    Ok(p)
}

/// Writes labels and the cover relations.
pub fn write_poset(p: &Poset) -> String {
    let mut out = format!("poset {}\n", p.len());
    for x in 0..p.len() {
        if let Some(l) = p.label(x) {
            writeln!(out, "label {x} {l}").unwrap();
        }
    }
    for (a, b) in p.covers() {
        writeln!(out, "rel {a} {b}").unwrap();
    }
    out
}

pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let (hline, values) = header(text, "coloring")?;
    let [n, c] = values[..] else {
        return Err(parse_err(hline, "expected `coloring <n> <c>`"));
    };
    let mut colors = vec![None; n];
    for (line, content) in lines(text).skip(1) {
        let mut toks = content.split_whitespace();
        if toks.next() != Some("col") {
            return Err(parse_err(line, "expected `col <vertex> <color>`"));
        }
        let v = num(line, toks.next(), "vertex")?;
        let k = num(line, toks.next(), "color")?;
        no_more(line, toks)?;
        if v >= n {
            return Err(parse_err(line, format!("vertex {v} out of range")));
        }
        if k >= c {
            return Err(parse_err(line, format!("color {k} out of range")));
        }
        if colors[v].replace(k).is_some() {
            return Err(parse_err(line, format!("vertex {v} colored twice")));
        }
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or(Error::Uncolored(v)))
        .collect::<Result<Vec<_>>>()?;
    Coloring::with_count(colors, c)
}

pub fn write_coloring(col: &Coloring) -> String {
    let mut out = format!("coloring {} {}\n", col.len(), col.color_count());
    for (v, c) in col.colors().iter().enumerate() {
        writeln!(out, "col {v} {c}").unwrap();
    }
    out
}

/// An optional leading line holding only the number of extensions, then one
/// `ext <ids...>` line per extension.
pub fn parse_realizer(text: &str) -> Result<Vec<LinearExtension>> {
    let mut exts = Vec::new();
    let mut declared = None;
    for (idx, (line, content)) in lines(text).enumerate() {
        let mut toks = content.split_whitespace();
        let first = toks.next().unwrap();
        if idx == 0 && content.chars().all(|ch| ch.is_ascii_digit()) {
            declared = Some((line, num(line, Some(first), "extension count")?));
            continue;
        }
        if first != "ext" {
            return Err(parse_err(line, "expected `ext <ids...>`"));
        }
        let order = toks
            .map(|t| num(line, Some(t), "element"))
            .collect::<Result<Vec<_>>>()?;
        exts.push(LinearExtension(order));
    }
    if let Some((line, count)) = declared {
        if count != exts.len() {
            return Err(parse_err(
                line,
                format!("header declares {count} extensions, found {}", exts.len()),
            ));
        }
    }
    Ok(exts)
}

/// One `ext` line per extension, no count line.
pub fn write_realizer(exts: &[LinearExtension]) -> String {
    let mut out = String::new();
    for e in exts {
        out.push_str("ext");
        for x in e.order() {
            write!(out, " {x}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// `class sigma-set=<ids> v=<bits> pairs=(x,y),(x,y)...` per class.
pub fn write_partition(part: &IncPartition) -> String {
    let mut out = String::new();
    for (key, pairs) in part.classes() {
        write!(out, "class {key} pairs=").unwrap();
        for (i, (x, y)) in pairs.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "({x},{y})").unwrap();
        }
        out.push('\n');
    }
    out
}
