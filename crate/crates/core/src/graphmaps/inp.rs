use rayon::prelude::*;
use serde::Serialize;

use super::{DirEdge, EdgeData, EdgePath, GraphError, GraphMap, StratumLabel, TurnStructure};

/// A path fixed by the map up to tightening, with fixed endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NielsenPath {
    pub path: EdgePath,
    pub illegal_turns: usize,
}

/// All tightened paths of length `1..=len_budget` between fixed vertices
/// with at most one illegal turn and `f(ρ) = ρ` after tightening, that do
/// not split at an interior fixed vertex into two such paths. Paths are
/// listed by start edge, then lexicographically.
pub fn find_inps(f: &GraphMap, len_budget: usize) -> Result<Vec<NielsenPath>, GraphError> {
    let ts = f.turn_structure()?;
    let g = f.graph();
    let fixed: Vec<bool> = (0..g.num_vertices()).map(|v| f.vertex_image(v) == v).collect();
    let starts: Vec<DirEdge> = g.all_directions().filter(|&d| fixed[g.origin(d)]).collect();
    let found: Vec<Vec<NielsenPath>> = starts
        .par_iter()
        .map(|&d| {
            let mut out = Vec::new();
            let mut path = EdgePath::single(g, d);
            search(f, &ts, &fixed, len_budget, &mut path, &mut out);
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

fn search(
    f: &GraphMap,
    ts: &TurnStructure,
    fixed: &[bool],
    len_budget: usize,
    path: &mut EdgePath,
    out: &mut Vec<NielsenPath>,
) {
    let g = f.graph();
    let illegal = ts.ilt_count(path);
    if illegal > 1 {
        return;
    }
    let end = path.end(g);
    if fixed[end] && f.image_untightened(path).tighten() == *path && indivisible(f, fixed, path) {
        out.push(NielsenPath { path: path.clone(), illegal_turns: illegal });
    }
    if path.len() == len_budget {
        return;
    }
    let last = *path.edges.last().expect("nonempty");
    for d in g.directions_at(end) {
        if d == last.reverse() {
            continue;
        }
        path.edges.push(d);
        search(f, ts, fixed, len_budget, path, out);
        path.edges.pop();
    }
}

fn indivisible(f: &GraphMap, fixed: &[bool], path: &EdgePath) -> bool {
    let g = f.graph();
    (1..path.len()).all(|i| {
        let head = EdgePath { start: path.start, edges: path.edges[..i].to_vec() };
        !(fixed[head.end(g)] && f.image_untightened(&head).tighten() == head)
    })
}

impl GraphMap {
    /// Adds a zero edge with the endpoints of `inp`, fixed by the map and
    /// retracting onto `inp`.
    pub fn with_shortcut(&self, inp: &EdgePath) -> Result<GraphMap, GraphError> {
        add_shortcut(self, inp)
    }
}

/// Adds a zero edge `e` with the endpoints of the Nielsen path `inp`;
/// `f(e) = e` and the retraction `e ↦ inp` is recorded.
pub fn add_shortcut(f: &GraphMap, inp: &EdgePath) -> Result<GraphMap, GraphError> {
    let g = f.graph();
    let bad = |why: &str| Err(GraphError::InvalidInp(why.into()));
    if inp.is_empty() {
        return bad("path is trivial");
    }
    if inp.validate(g).is_err() || !inp.is_tight() {
        return bad("path is not a tight edge path");
    }
    let (u, v) = (inp.start, inp.end(g));
    if f.vertex_image(u) != u || f.vertex_image(v) != v {
        return bad("endpoints are not fixed");
    }
    if f.image_untightened(inp).tighten() != *inp {
        return bad("path is not fixed by the map");
    }
    if f.turn_structure()?.ilt_count(inp) > 1 {
        return bad("path has more than one illegal turn");
    }
    let mut out = f.clone();
    let e = g.num_edges();
    let name = g.fresh_name("s");
    out.graph.edges.push(EdgeData { name, tail: u, head: v, label: StratumLabel::Zero });
    out.edge_images.push(EdgePath::single(&out.graph, DirEdge::new(e, false)));
    out.retractions.push((e, inp.clone()));
    Ok(out)
}
