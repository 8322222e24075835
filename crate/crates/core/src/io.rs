//! Text formats: `.kit` instances, PACE `.td` decompositions and modulator
//! lists. Files are 1-based; everything in memory is 0-based.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::generators::ColoredGraph;
use crate::graph::{Graph, Instance};
use crate::structure::TreeDecomposition;

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim_end_matches('\r');
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((i + 1, toks)),
        }
    })
}

fn number(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("expected a number, found `{tok}`")))
}

fn vertex(tok: &str, n: usize, line: usize) -> Result<usize> {
    let v = number(tok, line)?;
    if v == 0 || v > n {
        return Err(Error::parse(
            line,
            format!("vertex {v} out of range 1..={n}"),
        ));
    }
    Ok(v - 1)
}

/// Parses a `.kit` instance.
///
/// ```text
/// c optional comments
/// p kit <n> <m> <k>
/// e <u> <v>      (m lines)
/// t <v>          (k lines)
/// ```
pub fn read_instance(text: &str) -> Result<Instance> {
    let (g, terminals, hline) = parse_kit(text)?;
    Instance::new(g, terminals).map_err(|e| Error::parse(hline, e.to_string()))
}

/// The graph of a `.kit` file; terminal lines are checked but dropped, and
/// may be absent.
pub fn read_graph(text: &str) -> Result<Graph> {
    Ok(parse_kit(text)?.0)
}

fn parse_kit(text: &str) -> Result<(Graph, Vec<usize>, usize)> {
    let mut it = lines(text);
    let (hline, header) = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing `p kit` header"))?;
    if header.len() != 5 || header[0] != "p" || header[1] != "kit" {
        return Err(Error::parse(hline, "expected `p kit <n> <m> <k>`"));
    }
    let n = number(header[2], hline)?;
    let m = number(header[3], hline)?;
    let k = number(header[4], hline)?;
    let mut g = Graph::new(n);
    let mut terminals = Vec::with_capacity(k);
    let mut seen_terminal = false;
    for (line, toks) in it {
        match toks[0] {
            "e" => {
                if toks.len() != 3 {
                    return Err(Error::parse(line, "expected `e <u> <v>`"));
                }
                if seen_terminal {
                    return Err(Error::parse(line, "edge line after terminal lines"));
                }
                let u = vertex(toks[1], n, line)?;
                let v = vertex(toks[2], n, line)?;
                if u == v {
                    return Err(Error::parse(line, format!("self-loop at vertex {}", u + 1)));
                }
                if g.has_edge(u, v) {
                    return Err(Error::parse(
                        line,
                        format!("duplicate edge {} {}", u + 1, v + 1),
                    ));
                }
                g.add_edge(u, v)
                    .map_err(|e| Error::parse(line, e.to_string()))?;
            }
            "t" => {
                if toks.len() != 2 {
                    return Err(Error::parse(line, "expected `t <v>`"));
                }
                seen_terminal = true;
                let v = vertex(toks[1], n, line)?;
                if terminals.contains(&v) {
                    return Err(Error::parse(line, format!("duplicate terminal {}", v + 1)));
                }
                terminals.push(v);
            }
            "p" => return Err(Error::parse(line, "duplicate header")),
            other => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
        }
    }
    if g.m() != m {
        return Err(Error::parse(
            hline,
            format!("header announces {m} edges, found {}", g.m()),
        ));
    }
    if terminals.len() != k {
        return Err(Error::parse(
            hline,
            format!("header announces {k} terminals, found {}", terminals.len()),
        ));
    }
    Ok((g, terminals, hline))
}

/// Parses a colored graph.
///
/// ```text
/// p col <n> <m> <l>
/// e <u> <v>      (m lines)
/// k <v> <v>...   (l lines, one color class each)
/// ```
pub fn read_colored(text: &str) -> Result<ColoredGraph> {
    let mut it = lines(text);
    let (hline, header) = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing `p col` header"))?;
    if header.len() != 5 || header[0] != "p" || header[1] != "col" {
        return Err(Error::parse(hline, "expected `p col <n> <m> <l>`"));
    }
    let n = number(header[2], hline)?;
    let m = number(header[3], hline)?;
    let l = number(header[4], hline)?;
    let mut g = Graph::new(n);
    let mut classes = Vec::new();
    for (line, toks) in it {
        match toks[0] {
            "e" if toks.len() == 3 => {
                let u = vertex(toks[1], n, line)?;
                let v = vertex(toks[2], n, line)?;
                if u == v || g.has_edge(u, v) {
                    return Err(Error::parse(line, "self-loop or duplicate edge"));
                }
                g.add_edge(u, v)
                    .map_err(|e| Error::parse(line, e.to_string()))?;
            }
            "k" => classes.push(
                toks[1..]
                    .iter()
                    .map(|t| vertex(t, n, line))
                    .collect::<Result<Vec<_>>>()?,
            ),
            _ => return Err(Error::parse(line, "expected `e <u> <v>` or `k <v>...`")),
        }
    }
    if g.m() != m || classes.len() != l {
        return Err(Error::parse(
            hline,
            "edge or class count differs from the header",
        ));
    }
    ColoredGraph::new(g, classes).map_err(|e| Error::parse(hline, e.to_string()))
}

pub fn write_colored(cg: &ColoredGraph) -> String {
    let g = cg.graph();
    let mut out = String::new();
    let _ = writeln!(out, "p col {} {} {}", g.n(), g.m(), cg.classes().len());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    for c in cg.classes() {
        let vs: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(out, "k {}", vs.join(" "));
    }
    out
}

/// Canonical `.kit` text: edges in lexicographic order, terminals ascending.
pub fn write_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    let _ = writeln!(out, "p kit {} {} {}", g.n(), g.m(), inst.k());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    for &t in inst.terminals() {
        let _ = writeln!(out, "t {}", t + 1);
    }
    out
}

/// Parses a PACE `.td` file for a graph on `n` vertices.
pub fn read_td(text: &str, n: usize) -> Result<TreeDecomposition> {
    let mut it = lines(text);
    let (hline, header) = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing `s td` header"))?;
    if header.len() != 5 || header[0] != "s" || header[1] != "td" {
        return Err(Error::parse(hline, "expected `s td <bags> <width+1> <n>`"));
    }
    let nbags = number(header[2], hline)?;
    let max_bag = number(header[3], hline)?;
    let nv = number(header[4], hline)?;
    if nv != n {
        return Err(Error::parse(
            hline,
            format!("decomposition is for {nv} vertices, graph has {n}"),
        ));
    }
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; nbags];
    let mut edges = Vec::new();
    for (line, toks) in it {
        if toks[0] == "b" {
            let id = number(
                toks.get(1)
                    .ok_or_else(|| Error::parse(line, "expected `b <id> ...`"))?,
                line,
            )?;
            if id == 0 || id > nbags {
                return Err(Error::parse(line, format!("bag id {id} out of range")));
            }
            if bags[id - 1].is_some() {
                return Err(Error::parse(line, format!("bag {id} defined twice")));
            }
            let mut bag = toks[2..]
                .iter()
                .map(|t| vertex(t, n, line))
                .collect::<Result<Vec<_>>>()?;
            bag.sort_unstable();
            bag.dedup();
            if bag.len() > max_bag {
                return Err(Error::parse(line, "bag larger than announced width"));
            }
            bags[id - 1] = Some(bag);
        } else {
            if toks.len() != 2 {
                return Err(Error::parse(line, "expected a tree edge `<i> <j>`"));
            }
            let i = number(toks[0], line)?;
            let j = number(toks[1], line)?;
            if i == 0 || i > nbags || j == 0 || j > nbags {
                return Err(Error::parse(line, "tree edge references unknown bag"));
            }
            edges.push((i - 1, j - 1));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::parse(hline, format!("bag {} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeDecomposition::new(bags, edges))
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "s td {} {} {}",
        td.bags().len(),
        td.bags().iter().map(Vec::len).max().unwrap_or(0),
        n
    );
    for (i, bag) in td.bags().iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for &(i, j) in td.tree_edges() {
        let _ = writeln!(out, "{} {}", i + 1, j + 1);
    }
    out
}

/// A modulator file: whitespace-separated 1-based vertex indices.
pub fn read_modulator(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (line, toks) in lines(text) {
        for t in toks {
            out.push(vertex(t, n, line)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn write_modulator(set: &[usize]) -> String {
    let mut out = set
        .iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ");
    out.push('\n');
    out
}
