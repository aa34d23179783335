use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{omega_limit_boundary, DynError, OmegaConfig, OmegaLimit, Point};
use crate::automorphisms::Automorphism;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaVertex {
    pub id: usize,
    pub point: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaEdge {
    /// Index into `repelling`.
    pub from: usize,
    /// Index into `attracting`.
    pub to: usize,
    pub seeds: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unresolved {
    pub seed: String,
    pub reason: String,
}

/// Bipartite graph with an edge `X₁ → X₂` whenever some seed has backward
/// limit `X₁` and forward limit `X₂`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaGraph {
    pub repelling: Vec<GammaVertex>,
    pub attracting: Vec<GammaVertex>,
    pub edges: Vec<GammaEdge>,
    pub unresolved: Vec<Unresolved>,
}

fn fixed_limit(limit: Result<OmegaLimit, DynError>) -> Result<Point, String> {
    match limit {
        Ok(lim) if lim.period == 1 => Ok(lim.points.into_iter().next().expect("one point")),
        Ok(lim) => Err(format!("limit has period {}; raise the map to a power first", lim.period)),
        Err(e) => Err(e.to_string()),
    }
}

fn vertex_id(vertices: &mut Vec<GammaVertex>, p: Point, cert_depth: usize) -> usize {
    if let Some(v) = vertices.iter().find(|v| v.point.same_limit(&p, cert_depth)) {
        return v.id;
    }
    let id = vertices.len();
    vertices.push(GammaVertex { id, point: p });
    id
}

/// Builds the graph from the forward and backward limits of each seed.
/// Seeds whose limits do not certify, or are not fixed, are listed in
/// `unresolved`.
pub fn gamma_graph(alpha: &Automorphism, seeds: &[Point], cfg: &OmegaConfig) -> GammaGraph {
    let inverse = alpha.inverse();
    let limits: Vec<(Result<Point, String>, Result<Point, String>)> = seeds
        .par_iter()
        .map(|s| {
            (
                fixed_limit(omega_limit_boundary(&inverse, s, cfg)),
                fixed_limit(omega_limit_boundary(alpha, s, cfg)),
            )
        })
        .collect();
    let mut graph = GammaGraph { repelling: Vec::new(), attracting: Vec::new(), edges: Vec::new(), unresolved: Vec::new() };
    for (seed, (back, fwd)) in seeds.iter().zip(limits) {
        let (back, fwd) = match (back, fwd) {
            (Ok(b), Ok(f)) => (b, f),
            (Err(e), _) => {
                graph.unresolved.push(Unresolved { seed: seed.to_string(), reason: format!("backward: {e}") });
                continue;
            }
            (_, Err(e)) => {
                graph.unresolved.push(Unresolved { seed: seed.to_string(), reason: format!("forward: {e}") });
                continue;
            }
        };
        let from = vertex_id(&mut graph.repelling, back, cfg.cert_depth);
        let to = vertex_id(&mut graph.attracting, fwd, cfg.cert_depth);
        match graph.edges.iter_mut().find(|e| e.from == from && e.to == to) {
            Some(e) => e.seeds.push(seed.to_string()),
            None => graph.edges.push(GammaEdge { from, to, seeds: vec![seed.to_string()] }),
        }
    }
    graph
}

impl GammaGraph {
    /// Graphviz rendering; vertices are labeled by prefix snippets and
    /// edges by their witness seeds.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph gamma {\n  rankdir=LR;\n");
        for v in &self.repelling {
            let _ = writeln!(out, "  r{} [label=\"{}\", shape=box];", v.id, v.point.snippet(16));
        }
        for v in &self.attracting {
            let _ = writeln!(out, "  a{} [label=\"{}\", shape=ellipse];", v.id, v.point.snippet(16));
        }
        for e in &self.edges {
            let _ = writeln!(out, "  r{} -> a{} [label=\"{}\"];", e.from, e.to, e.seeds.join(" "));
        }
        out.push_str("}\n");
        out
    }
}
