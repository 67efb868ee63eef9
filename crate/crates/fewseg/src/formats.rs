//! Graph, tree and path files.
//!
//! Edge lists hold one `u v` pair of 1-based labels per line; `#` starts a
//! comment. Three comment annotations are understood:
//!
//! ```text
//! # vertices: 20
//! # root: 1
//! # generator: tree size=1 depth=wide seed=7
//! ```
//!
//! Without a `vertices` annotation the labels that occur are renumbered
//! densely in increasing order. Path files hold one path per line as
//! whitespace-separated labels.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::Path;

use fewseg_core::{Graph, PathSet};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GraphFile {
    pub graph: Graph,
    /// Root vertex (0-based) when the file marks one.
    pub root: Option<usize>,
    pub generator: Option<String>,
}

fn annotation<'a>(comment: &'a str, key: &str) -> Option<&'a str> {
    let rest = comment.trim_start_matches('#').trim_start();
    let rest = rest.strip_prefix(key)?.trim_start();
    Some(rest.strip_prefix(':')?.trim())
}

fn parse_label(tok: &str, origin: &str, line: usize) -> Result<usize> {
    match tok.parse::<usize>() {
        Ok(l) if l >= 1 => Ok(l),
        _ => Err(CliError::parse(origin, line, format!("expected a positive integer label, found {tok:?}"))),
    }
}

pub fn parse_edge_list(text: &str, origin: &str) -> Result<GraphFile> {
    let mut declared_n = None;
    let mut root_label = None;
    let mut generator = None;
    let mut raw: Vec<(usize, usize, usize)> = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.starts_with('#') {
            if let Some(v) = annotation(trimmed, "vertices") {
                declared_n = Some(v.parse::<usize>().map_err(|_| {
                    CliError::parse(origin, lineno, format!("bad vertex count {v:?}"))
                })?);
            } else if let Some(v) = annotation(trimmed, "root") {
                root_label = Some((parse_label(v, origin, lineno)?, lineno));
            } else if let Some(v) = annotation(trimmed, "generator") {
                generator = Some(v.to_string());
            }
            continue;
        }
        let body = trimmed.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(CliError::parse(
                origin,
                lineno,
                format!("expected \"u v\", found {body:?}"),
            ));
        }
        let u = parse_label(toks[0], origin, lineno)?;
        let v = parse_label(toks[1], origin, lineno)?;
        if u == v {
            return Err(CliError::parse(origin, lineno, format!("self-loop at {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(CliError::parse(origin, lineno, format!("duplicate edge {u} {v}")));
        }
        raw.push((u, v, lineno));
    }

    let relabel: BTreeMap<usize, usize> = match declared_n {
        Some(n) => {
            if let Some(&(u, v, lineno)) = raw.iter().find(|&&(u, v, _)| u > n || v > n) {
                return Err(CliError::parse(
                    origin,
                    lineno,
                    format!("label {} exceeds the declared {n} vertices", u.max(v)),
                ));
            }
            (1..=n).map(|l| (l, l - 1)).collect()
        }
        None => {
            let mut labels: BTreeSet<usize> = raw.iter().flat_map(|&(u, v, _)| [u, v]).collect();
            if let Some((r, _)) = root_label {
                labels.insert(r);
            }
            labels.into_iter().enumerate().map(|(i, l)| (l, i)).collect()
        }
    };
    let n = relabel.len();
    let root = match root_label {
        Some((r, lineno)) => Some(*relabel.get(&r).ok_or_else(|| {
            CliError::parse(origin, lineno, format!("root {r} is not a vertex"))
        })?),
        None => None,
    };
    let edges = raw.iter().map(|&(u, v, _)| (relabel[&u], relabel[&v])).collect();
    let graph = Graph::new(n, edges).map_err(|e| CliError::parse(origin, 0, e.to_string()))?;
    Ok(GraphFile {
        graph,
        root,
        generator,
    })
}

pub fn write_edge_list(file: &GraphFile) -> String {
    let mut out = String::new();
    if let Some(g) = &file.generator {
        out.push_str(&format!("# generator: {g}\n"));
    }
    out.push_str(&format!("# vertices: {}\n", file.graph.n()));
    if let Some(r) = file.root {
        out.push_str(&format!("# root: {}\n", r + 1));
    }
    for &(u, v) in file.graph.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

/// Undirected GraphML subset: `node` ids in document order become 1..n.
pub fn parse_graphml(text: &str, origin: &str) -> Result<GraphFile> {
    let doc = roxmltree::Document::parse(text).map_err(|e| {
        let pos = e.pos();
        CliError::parse(origin, pos.row as usize, e.to_string())
    })?;
    let line_of = |node: roxmltree::Node| doc.text_pos_at(node.range().start).row as usize;
    let graph_el = doc
        .descendants()
        .find(|n| n.has_tag_name("graph"))
        .ok_or_else(|| CliError::parse(origin, 1, "no <graph> element"))?;
    let mut ids: BTreeMap<&str, usize> = BTreeMap::new();
    for node in graph_el.children().filter(|n| n.has_tag_name("node")) {
        let id = node
            .attribute("id")
            .ok_or_else(|| CliError::parse(origin, line_of(node), "node without id"))?;
        let next = ids.len();
        if ids.insert(id, next).is_some() {
            return Err(CliError::parse(origin, line_of(node), format!("duplicate node id {id:?}")));
        }
    }
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    for edge in graph_el.children().filter(|n| n.has_tag_name("edge")) {
        let line = line_of(edge);
        let end = |attr: &str| -> Result<usize> {
            let id = edge
                .attribute(attr)
                .ok_or_else(|| CliError::parse(origin, line, format!("edge without {attr}")))?;
            ids.get(id)
                .copied()
                .ok_or_else(|| CliError::parse(origin, line, format!("unknown node {id:?}")))
        };
        let (u, v) = (end("source")?, end("target")?);
        if u == v {
            return Err(CliError::parse(origin, line, "self-loop"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(CliError::parse(origin, line, "duplicate edge"));
        }
        edges.push((u, v));
    }
    let graph = Graph::new(ids.len(), edges).map_err(|e| CliError::parse(origin, 0, e.to_string()))?;
    Ok(GraphFile {
        graph,
        root: None,
        generator: None,
    })
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Edge list or GraphML, chosen by the `.graphml` / `.xml` extension.
pub fn load_graph_file(path: &Path) -> Result<GraphFile> {
    let text = read_text(path)?;
    let origin = path.display().to_string();
    match path.extension().and_then(|e| e.to_str()) {
        Some("graphml") | Some("xml") => parse_graphml(&text, &origin),
        _ => parse_edge_list(&text, &origin),
    }
}

pub fn parse_paths(text: &str, origin: &str, n: usize) -> Result<PathSet> {
    let mut paths = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let path = body
            .split_whitespace()
            .map(|t| {
                let l = parse_label(t, origin, i + 1)?;
                if l > n {
                    return Err(CliError::parse(origin, i + 1, format!("label {l} exceeds {n} vertices")));
                }
                Ok(l - 1)
            })
            .collect::<Result<Vec<_>>>()?;
        paths.push(path);
    }
    Ok(PathSet::new(paths))
}

pub fn write_paths(paths: &PathSet) -> String {
    let mut out = String::new();
    for p in paths.iter() {
        let labels: Vec<String> = p.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}
