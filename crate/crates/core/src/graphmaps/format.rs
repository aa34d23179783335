//! Line-based graph-map files:
//!
//! ```text
//! # Fibonacci rose
//! vertices 1
//! base 0
//! edge a: 0 0 stratum=top
//! edge b: 0 0 stratum=top
//! image a: a b
//! image b: a
//! vimage 0: 0
//! mark a: a
//! mark b: b
//! ```
//!
//! Paths are space-separated edge names, `~e` traversing `e` backwards and
//! `1` the trivial path. `vimage`, `base`, `mark` and `retract` lines are
//! optional; missing vertex images are read off the edge images.

use std::fmt::Write as _;

use super::{DirEdge, EdgeData, EdgePath, Graph, GraphError, GraphMap, StratumLabel};
use crate::words::Letter;

fn err(line: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Format { line, reason: reason.into() }
}

fn parse_path(g: &Graph, text: &str, empty_at: Option<usize>, line: usize) -> Result<EdgePath, GraphError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() || tokens == ["1"] {
        return empty_at.map(EdgePath::trivial).ok_or_else(|| err(line, "trivial path has no start vertex here"));
    }
    let mut edges = Vec::with_capacity(tokens.len());
    for t in tokens {
        let (name, rev) = match t.strip_prefix('~') {
            Some(n) => (n, true),
            None => (t, false),
        };
        let e = g.edge_by_name(name).ok_or_else(|| err(line, format!("unknown edge {name:?}")))?;
        edges.push(DirEdge::new(e, rev));
    }
    let p = EdgePath { start: g.origin(edges[0]), edges };
    p.validate(g).map_err(|_| err(line, "consecutive edges do not meet"))?;
    Ok(p)
}

fn parse_vertex(s: &str, n: usize, line: usize) -> Result<usize, GraphError> {
    let v: usize = s.trim().parse().map_err(|_| err(line, format!("bad vertex {s:?}")))?;
    if v >= n {
        return Err(err(line, format!("vertex {v} out of range")));
    }
    Ok(v)
}

impl GraphMap {
    pub fn from_text(text: &str) -> Result<GraphMap, GraphError> {
        let mut vertices: Option<usize> = None;
        let mut base = 0;
        let mut edges: Vec<EdgeData> = Vec::new();
        let mut rest: Vec<(usize, &str, &str, &str)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (keyword, tail) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            match keyword {
                "vertices" => {
                    let n: usize = tail.trim().parse().map_err(|_| err(line, "vertex count must be an integer"))?;
                    if n == 0 || vertices.replace(n).is_some() {
                        return Err(err(line, "vertex count must be positive and given once"));
                    }
                }
                "base" => base = parse_vertex(tail, vertices.ok_or_else(|| err(line, "base before vertices"))?, line)?,
                "edge" => {
                    let n = vertices.ok_or_else(|| err(line, "edge before vertices"))?;
                    let (name, spec) = tail.split_once(':').ok_or_else(|| err(line, "expected `edge e: u v`"))?;
                    let name = name.trim();
                    if name.is_empty() || name == "1" || name.starts_with('~') || name.contains(char::is_whitespace) {
                        return Err(err(line, format!("bad edge name {name:?}")));
                    }
                    if edges.iter().any(|e| e.name == name) {
                        return Err(err(line, format!("edge {name} given twice")));
                    }
                    let parts: Vec<&str> = spec.split_whitespace().collect();
                    let label = match parts.get(2).copied() {
                        None | Some("stratum=top") => StratumLabel::Top,
                        Some("stratum=zero") => StratumLabel::Zero,
                        Some(other) => return Err(err(line, format!("bad stratum {other:?}"))),
                    };
                    if parts.len() < 2 || parts.len() > 3 {
                        return Err(err(line, "expected `edge e: u v [stratum=top|zero]`"));
                    }
                    let tail_v = parse_vertex(parts[0], n, line)?;
                    let head_v = parse_vertex(parts[1], n, line)?;
                    edges.push(EdgeData { name: name.to_string(), tail: tail_v, head: head_v, label });
                }
                "image" | "vimage" | "mark" | "retract" => {
                    let (lhs, rhs) = tail.split_once(':').ok_or_else(|| err(line, format!("expected `{keyword} x: ...`")))?;
                    rest.push((line, keyword, lhs.trim(), rhs));
                }
                other => return Err(err(line, format!("unknown keyword {other:?}"))),
            }
        }
        let n = vertices.ok_or_else(|| err(0, "missing `vertices n`"))?;
        let graph = Graph::new(n, edges);
        let mut vimages: Vec<Option<usize>> = vec![None; n];
        for &(line, kw, lhs, rhs) in &rest {
            if kw == "vimage" {
                let v = parse_vertex(lhs, n, line)?;
                vimages[v] = Some(parse_vertex(rhs, n, line)?);
            }
        }
        let mut images: Vec<Option<(usize, &str)>> = vec![None; graph.num_edges()];
        for &(line, kw, lhs, rhs) in &rest {
            if kw == "image" {
                let e = graph.edge_by_name(lhs).ok_or_else(|| err(line, format!("unknown edge {lhs:?}")))?;
                if images[e].replace((line, rhs)).is_some() {
                    return Err(err(line, format!("image of {lhs} given twice")));
                }
                let p = parse_path(&graph, rhs, None, line).ok();
                if let Some(p) = p {
                    let data = graph.edge(e);
                    vimages[data.tail].get_or_insert(p.start);
                    vimages[data.head].get_or_insert(p.end(&graph));
                }
            }
        }
        let vertex_images: Vec<usize> = vimages
            .into_iter()
            .enumerate()
            .map(|(v, x)| x.ok_or_else(|| err(0, format!("image of vertex {v} is not determined"))))
            .collect::<Result<_, _>>()?;
        let mut edge_images = Vec::with_capacity(graph.num_edges());
        for (e, entry) in images.iter().enumerate() {
            let (line, rhs) = entry.ok_or_else(|| err(0, format!("missing image of edge {}", graph.edge(e).name)))?;
            edge_images.push(parse_path(&graph, rhs, Some(vertex_images[graph.edge(e).tail]), line)?);
        }
        let mut marking: Vec<Option<EdgePath>> = Vec::new();
        let mut retractions = Vec::new();
        for &(line, kw, lhs, rhs) in &rest {
            match kw {
                "mark" => {
                    let mut chars = lhs.chars();
                    let gen = match (chars.next().and_then(Letter::from_char), chars.next()) {
                        (Some(l), None) if !l.is_inverse() => l.generator(),
                        _ => return Err(err(line, format!("bad generator {lhs:?}"))),
                    };
                    if marking.len() <= gen {
                        marking.resize(gen + 1, None);
                    }
                    if marking[gen].replace(parse_path(&graph, rhs, Some(base), line)?).is_some() {
                        return Err(err(line, format!("marking of {lhs} given twice")));
                    }
                }
                "retract" => {
                    let e = graph.edge_by_name(lhs).ok_or_else(|| err(line, format!("unknown edge {lhs:?}")))?;
                    retractions.push((e, parse_path(&graph, rhs, None, line)?));
                }
                _ => {}
            }
        }
        let marking: Vec<EdgePath> = marking
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| err(0, format!("generator {i} has no marking"))))
            .collect::<Result<_, _>>()?;
        let mut map = GraphMap::new(graph, vertex_images, edge_images, base, marking)?;
        map.retractions = retractions;
        Ok(map)
    }

    pub fn to_text(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        let _ = writeln!(out, "vertices {}", g.num_vertices());
        let _ = writeln!(out, "base {}", self.base);
        for e in g.edges() {
            let label = match e.label {
                StratumLabel::Top => "top",
                StratumLabel::Zero => "zero",
            };
            let _ = writeln!(out, "edge {}: {} {} stratum={label}", e.name, e.tail, e.head);
        }
        for (e, img) in self.edge_images.iter().enumerate() {
            let _ = writeln!(out, "image {}: {}", g.edge(e).name, img.display(g));
        }
        for (v, w) in self.vertex_images.iter().enumerate() {
            let _ = writeln!(out, "vimage {v}: {w}");
        }
        for (i, m) in self.marking.iter().enumerate() {
            let name = Letter::new(i, false).to_char().map_or_else(|| i.to_string(), String::from);
            let _ = writeln!(out, "mark {name}: {}", m.display(g));
        }
        for (e, p) in &self.retractions {
            let _ = writeln!(out, "retract {}: {}", g.edge(*e).name, p.display(g));
        }
        out
    }
}
