//! Graph self-maps representing automorphisms: tightening, transition
//! matrices, strata, Perron–Frobenius data, gates and illegal turns,
//! elementary folding moves, and Nielsen path search.

mod format;
mod inp;
mod moves;
mod pf;
mod turns;

pub use inp::{add_shortcut, find_inps, NielsenPath};
pub use moves::{try_make_train_track, Move, TrainTrackOutcome};
pub use pf::{pf_data, PfData, PfError};
pub use turns::{is_train_track, TurnStructure};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::automorphisms::{Automorphism, Endomorphism};
use crate::words::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid site for {0}")]
    InvalidSite(String),
    #[error("not an indivisible Nielsen path: {0}")]
    InvalidInp(String),
    #[error("path is not connected at position {0}")]
    Disconnected(usize),
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
    #[error("derivative map did not stabilize within {0} iterations")]
    GatesUnstable(usize),
    #[error("marking loop {0} does not start and end at the base vertex")]
    BadMarking(usize),
}

/// An edge traversed forward (`rev == false`) or backward.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct DirEdge {
    pub edge: usize,
    pub rev: bool,
}

impl DirEdge {
    pub fn new(edge: usize, rev: bool) -> Self {
        DirEdge { edge, rev }
    }

    pub fn reverse(self) -> Self {
        DirEdge { edge: self.edge, rev: !self.rev }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StratumLabel {
    Top,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeData {
    pub name: String,
    pub tail: usize,
    pub head: usize,
    pub label: StratumLabel,
}

/// A finite connected graph; every edge has an orientation and a reverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    vertices: usize,
    edges: Vec<EdgeData>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<EdgeData>) -> Self {
        Graph { vertices, edges }
    }

    /// The rose with one petal per generator, named `a`, `b`, ...
    pub fn rose(rank: usize) -> Self {
        let edges = (0..rank)
            .map(|i| EdgeData {
                name: Letter::new(i, false).to_char().map_or_else(|| format!("e{i}"), String::from),
                tail: 0,
                head: 0,
                label: StratumLabel::Top,
            })
            .collect();
        Graph { vertices: 1, edges }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: usize) -> &EdgeData {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[EdgeData] {
        &self.edges
    }

    pub fn origin(&self, d: DirEdge) -> usize {
        let e = &self.edges[d.edge];
        if d.rev {
            e.head
        } else {
            e.tail
        }
    }

    pub fn terminus(&self, d: DirEdge) -> usize {
        self.origin(d.reverse())
    }

    /// Every direction (oriented edge) leaving `v`.
    pub fn directions_at(&self, v: usize) -> Vec<DirEdge> {
        self.all_directions().filter(|&d| self.origin(d) == v).collect()
    }

    pub fn all_directions(&self) -> impl Iterator<Item = DirEdge> + '_ {
        (0..self.edges.len()).flat_map(|e| [DirEdge::new(e, false), DirEdge::new(e, true)])
    }

    pub fn valence(&self, v: usize) -> usize {
        self.directions_at(v).len()
    }

    /// `E − V + 1` (the graph is assumed connected).
    pub fn betti_number(&self) -> usize {
        self.edges.len() + 1 - self.vertices
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for d in self.directions_at(v) {
                let w = self.terminus(d);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn dir_name(&self, d: DirEdge) -> String {
        let n = &self.edges[d.edge].name;
        if d.rev {
            format!("~{n}")
        } else {
            n.clone()
        }
    }

    pub fn edge_by_name(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    fn fresh_name(&self, base: &str) -> String {
        let root = base.trim_end_matches(|c: char| c.is_ascii_digit());
        (1..)
            .map(|i| format!("{root}{i}"))
            .find(|n| self.edge_by_name(n).is_none())
            .expect("infinitely many candidates")
    }
}

/// An edge path from vertex `start`. Empty paths are the trivial path at
/// `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgePath {
    pub start: usize,
    pub edges: Vec<DirEdge>,
}

impl EdgePath {
    pub fn trivial(v: usize) -> Self {
        EdgePath { start: v, edges: Vec::new() }
    }

    pub fn single(g: &Graph, d: DirEdge) -> Self {
        EdgePath { start: g.origin(d), edges: vec![d] }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn end(&self, g: &Graph) -> usize {
        self.edges.last().map_or(self.start, |&d| g.terminus(d))
    }

    pub fn is_closed(&self, g: &Graph) -> bool {
        self.end(g) == self.start
    }

    /// Checks that consecutive edges share endpoints.
    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        let mut at = self.start;
        for (i, &d) in self.edges.iter().enumerate() {
            if d.edge >= g.num_edges() || g.origin(d) != at {
                return Err(GraphError::Disconnected(i));
            }
            at = g.terminus(d);
        }
        Ok(())
    }

    pub fn reverse(&self, g: &Graph) -> EdgePath {
        EdgePath { start: self.end(g), edges: self.edges.iter().rev().map(|d| d.reverse()).collect() }
    }

    /// Removes backtracks `e ē`.
    pub fn tighten(&self) -> EdgePath {
        EdgePath { start: self.start, edges: tighten_dirs(&self.edges) }
    }

    pub fn is_tight(&self) -> bool {
        self.edges.windows(2).all(|w| w[1] != w[0].reverse())
    }

    /// Concatenation; the caller guarantees `other` starts where `self` ends.
    pub fn concat(&self, other: &EdgePath) -> EdgePath {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        EdgePath { start: self.start, edges }
    }

    /// Tightens a closed path as a loop: backtracks across the basepoint
    /// are cancelled too, which may move the basepoint.
    pub fn cyclic_tighten(&self, g: &Graph) -> EdgePath {
        let mut edges = tighten_dirs(&self.edges);
        let mut start = self.start;
        while edges.len() >= 2 && edges[0] == edges[edges.len() - 1].reverse() {
            start = g.terminus(edges[0]);
            edges.pop();
            edges.remove(0);
        }
        EdgePath { start, edges }
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            return "1".into();
        }
        self.edges.iter().map(|&d| g.dir_name(d)).collect::<Vec<_>>().join(" ")
    }
}

fn tighten_dirs(dirs: &[DirEdge]) -> Vec<DirEdge> {
    let mut out: Vec<DirEdge> = Vec::with_capacity(dirs.len());
    for &d in dirs {
        if out.last() == Some(&d.reverse()) {
            out.pop();
        } else {
            out.push(d);
        }
    }
    out
}

/// A graph self-map sending vertices to vertices and edges to edge paths,
/// together with a marking: generator `i` of `F_k` is the loop
/// `marking[i]` at `base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphMap {
    graph: Graph,
    vertex_images: Vec<usize>,
    edge_images: Vec<EdgePath>,
    base: usize,
    marking: Vec<EdgePath>,
    /// Shortcut edges and the paths they retract onto.
    retractions: Vec<(usize, EdgePath)>,
}

impl GraphMap {
    /// Validates and assembles a graph map. Every edge image must run from
    /// the image of the edge's tail to the image of its head.
    pub fn new(
        graph: Graph,
        vertex_images: Vec<usize>,
        edge_images: Vec<EdgePath>,
        base: usize,
        marking: Vec<EdgePath>,
    ) -> Result<Self, GraphError> {
        let m = GraphMap { graph, vertex_images, edge_images, base, marking, retractions: Vec::new() };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<(), GraphError> {
        let g = &self.graph;
        let bad = |what: String| Err(GraphError::InvalidSite(what));
        if self.vertex_images.len() != g.num_vertices() || self.edge_images.len() != g.num_edges() {
            return bad("image table sizes".into());
        }
        if self.vertex_images.iter().any(|&v| v >= g.num_vertices()) || self.base >= g.num_vertices().max(1) {
            return bad("vertex index out of range".into());
        }
        for (e, img) in self.edge_images.iter().enumerate() {
            img.validate(g)?;
            let data = g.edge(e);
            if img.start != self.vertex_images[data.tail] || img.end(g) != self.vertex_images[data.head] {
                return bad(format!("image of edge {} has the wrong endpoints", data.name));
            }
        }
        for (i, loop_) in self.marking.iter().enumerate() {
            loop_.validate(g)?;
            if loop_.start != self.base || !loop_.is_closed(g) {
                return Err(GraphError::BadMarking(i));
            }
        }
        if !g.is_connected() {
            return bad("graph is disconnected".into());
        }
        Ok(())
    }

    /// The rose map of an automorphism: petal `i` maps to the path
    /// spelling `α(a_i)`.
    pub fn rose_from_automorphism(alpha: &Automorphism) -> Self {
        Self::rose_from_endomorphism(alpha.forward())
    }

    /// The rose map of any endomorphism, for experiments on maps that are
    /// not invertible.
    pub fn rose_from_endomorphism(phi: &Endomorphism) -> Self {
        let k = phi.rank();
        let graph = Graph::rose(k);
        let edge_images = phi.images().iter().map(word_to_rose_path).collect();
        let marking = (0..k).map(|i| EdgePath::single(&graph, DirEdge::new(i, false))).collect();
        GraphMap { graph, vertex_images: vec![0], edge_images, base: 0, marking, retractions: Vec::new() }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_image(&self, v: usize) -> usize {
        self.vertex_images[v]
    }

    pub fn edge_image(&self, e: usize) -> &EdgePath {
        &self.edge_images[e]
    }

    pub fn edge_images(&self) -> &[EdgePath] {
        &self.edge_images
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn marking(&self) -> &[EdgePath] {
        &self.marking
    }

    pub fn retractions(&self) -> &[(usize, EdgePath)] {
        &self.retractions
    }

    pub fn label(&self, e: usize) -> StratumLabel {
        self.graph.edge(e).label
    }

    /// Image of a single direction.
    pub fn dir_image(&self, d: DirEdge) -> EdgePath {
        let img = &self.edge_images[d.edge];
        if d.rev {
            img.reverse(&self.graph)
        } else {
            img.clone()
        }
    }

    /// `f(p)` before tightening.
    pub fn image_untightened(&self, p: &EdgePath) -> EdgePath {
        let mut edges = Vec::new();
        for &d in &p.edges {
            edges.extend(self.dir_image(d).edges);
        }
        EdgePath { start: self.vertex_images[p.start], edges }
    }

    /// Tightened `f^n(p)`, tightening after every application.
    pub fn map_path(&self, p: &EdgePath, n: usize) -> EdgePath {
        let mut cur = p.tighten();
        for _ in 0..n {
            cur = self.image_untightened(&cur).tighten();
        }
        cur
    }

    /// The loop at the base vertex representing a group element.
    pub fn loop_for_word(&self, w: &Word) -> EdgePath {
        let mut path = EdgePath::trivial(self.base);
        for l in w.letters() {
            let m = &self.marking[l.generator()];
            let piece = if l.is_inverse() { m.reverse(&self.graph) } else { m.clone() };
            path = path.concat(&piece);
        }
        path.tighten()
    }

    /// The endomorphism of `F_k` induced through the marking, determined
    /// up to an inner automorphism. Loops are written in the free basis
    /// of non-tree edges of a breadth-first spanning tree; `None` when the
    /// marking is absent or is not a basis of the fundamental group.
    pub fn induced_endomorphism(&self) -> Option<Endomorphism> {
        let g = &self.graph;
        let k = self.marking.len();
        if k == 0 {
            return None;
        }
        let mut tree_path: Vec<Option<Vec<DirEdge>>> = vec![None; g.num_vertices()];
        let mut in_tree = vec![false; g.num_edges()];
        tree_path[self.base] = Some(Vec::new());
        let mut queue = std::collections::VecDeque::from([self.base]);
        while let Some(v) = queue.pop_front() {
            for d in g.directions_at(v) {
                let w = g.terminus(d);
                if tree_path[w].is_none() {
                    let mut p = tree_path[v].clone().expect("visited");
                    p.push(d);
                    tree_path[w] = Some(p);
                    in_tree[d.edge] = true;
                    queue.push_back(w);
                }
            }
        }
        let basis: Vec<usize> = (0..g.num_edges()).filter(|&e| !in_tree[e]).collect();
        if basis.len() != k {
            return None;
        }
        let as_word = |dirs: &[DirEdge]| -> Word {
            let letters: Vec<Letter> = dirs
                .iter()
                .filter(|d| !in_tree[d.edge])
                .map(|d| Letter::new(basis.iter().position(|&e| e == d.edge).expect("non-tree edge"), d.rev))
                .collect();
            Word::reduce(&letters, k).expect("in rank")
        };
        let mu = Endomorphism::new(self.marking.iter().map(|m| as_word(&m.edges)).collect()).ok()?;
        let mu_inv = Automorphism::verify_and_invert(&mu).ok()?;
        let images = self
            .marking
            .iter()
            .map(|m| mu_inv.inverse_map().apply(&as_word(&self.image_untightened(m).edges)).expect("in rank"))
            .collect();
        Endomorphism::new(images).ok()
    }

    /// Occurrences of each edge (either direction) in each edge image;
    /// row `e` describes `f(e)`. Restricted to `edges` when given.
    pub fn transition_matrix(&self, edges: Option<&[usize]>) -> Vec<Vec<u64>> {
        let all: Vec<usize> = (0..self.graph.num_edges()).collect();
        let idx = edges.unwrap_or(&all);
        idx.iter()
            .map(|&e| {
                idx.iter()
                    .map(|&e2| self.edge_images[e].edges.iter().filter(|d| d.edge == e2).count() as u64)
                    .collect()
            })
            .collect()
    }

    /// Composite `self ∘ other` on the same graph.
    pub fn compose(&self, other: &GraphMap) -> GraphMap {
        let edge_images = other.edge_images.iter().map(|p| self.image_untightened(p).tighten()).collect();
        let vertex_images = other.vertex_images.iter().map(|&v| self.vertex_images[v]).collect();
        GraphMap { edge_images, vertex_images, ..self.clone() }
    }

    /// Vertices `v` with `f(v) = v`.
    pub fn fixed_vertices(&self) -> Vec<usize> {
        (0..self.graph.num_vertices()).filter(|&v| self.vertex_images[v] == v).collect()
    }
}

/// Spells a word as a loop on the rose.
pub fn word_to_rose_path(w: &Word) -> EdgePath {
    EdgePath { start: 0, edges: w.letters().iter().map(|l| DirEdge::new(l.generator(), l.is_inverse())).collect() }
}

/// Reads a loop on the rose back as a word.
pub fn rose_path_to_word(p: &EdgePath, rank: usize) -> Word {
    let letters: Vec<Letter> = p.edges.iter().map(|d| Letter::new(d.edge, d.rev)).collect();
    Word::reduce(&letters, rank).expect("edges index generators")
}

/// Class of a stratum in the filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StratumClass {
    Exponential,
    Polynomial,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stratum {
    pub edges: Vec<usize>,
    pub class: StratumClass,
    pub pf: Option<PfData>,
}

/// Strongly connected components of the edge-transition digraph, lowest
/// first (an edge's image only involves its own and earlier strata).
pub fn strata(f: &GraphMap, tol: f64) -> Vec<Stratum> {
    use petgraph::algo::tarjan_scc;
    use petgraph::graph::DiGraph;
    let m = f.transition_matrix(None);
    let n = m.len();
    let mut dg: DiGraph<usize, ()> = DiGraph::new();
    let nodes: Vec<_> = (0..n).map(|e| dg.add_node(e)).collect();
    for i in 0..n {
        for j in 0..n {
            if m[i][j] > 0 {
                dg.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    // tarjan_scc lists a component after every component it reaches
    tarjan_scc(&dg)
        .into_iter()
        .map(|comp| {
            let mut edges: Vec<usize> = comp.into_iter().map(|nx| dg[nx]).collect();
            edges.sort_unstable();
            let sub = f.transition_matrix(Some(&edges));
            let (class, pf) = if edges.len() == 1 && sub[0][0] == 0 {
                (StratumClass::Zero, None)
            } else if sub.iter().all(|row| row.iter().sum::<u64>() == 1) {
                (StratumClass::Polynomial, pf_data(&sub, tol).ok())
            } else {
                (StratumClass::Exponential, pf_data(&sub, tol).ok())
            };
            Stratum { edges, class, pf }
        })
        .collect()
}

impl fmt::Display for GraphMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rose(images: &[&str]) -> GraphMap {
        GraphMap::rose_from_automorphism(&Automorphism::from_strs(images).unwrap())
    }

    #[test]
    fn rose_transcription() {
        let f = rose(&["ab", "a"]);
        assert_eq!(f.edge_image(0).display(f.graph()), "a b");
        assert_eq!(f.edge_image(1).display(f.graph()), "a");
        let id = rose(&["a", "b", "c"]);
        for e in 0..3 {
            assert_eq!(id.edge_image(e).edges, vec![DirEdge::new(e, false)]);
        }
    }

    #[test]
    fn tighten_and_iterate() {
        let f = rose(&["ab", "a"]);
        let g = f.graph();
        let p = EdgePath { start: 0, edges: vec![DirEdge::new(0, false), DirEdge::new(0, true)] };
        assert!(p.tighten().is_empty());
        let a = EdgePath::single(g, DirEdge::new(0, false));
        assert_eq!(f.map_path(&a, 2).display(g), "a b a");
        assert_eq!(f.map_path(&p, 0), EdgePath::trivial(0));
    }

    #[test]
    fn transition_matrices() {
        assert_eq!(rose(&["ab", "a"]).transition_matrix(None), vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(rose(&["a", "b"]).transition_matrix(None), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(rose(&["b", "c", "a"]).transition_matrix(None), vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
    }

    #[test]
    fn strata_examples() {
        let s = strata(&rose(&["ab", "a"]), 1e-9);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].class, StratumClass::Exponential);
        let s = strata(&rose(&["b", "c", "a"]), 1e-9);
        assert!(s.iter().all(|st| st.class == StratumClass::Polynomial));
        let s = strata(&rose(&["a", "aba"]), 1e-9);
        assert_eq!(s.iter().map(|st| (st.edges.clone(), st.class)).collect::<Vec<_>>(), [
            (vec![0], StratumClass::Polynomial),
            (vec![1], StratumClass::Polynomial)
        ]);
    }

    #[test]
    fn squaring_a_positive_map_squares_its_matrix() {
        let f = GraphMap::rose_from_endomorphism(&Endomorphism::from_strs(&["ab", "cb", "acc"]).unwrap());
        let m = f.transition_matrix(None);
        let m2 = f.compose(&f).transition_matrix(None);
        for i in 0..3 {
            for j in 0..3 {
                let expect: u64 = (0..3).map(|k| m[i][k] * m[k][j]).sum();
                assert_eq!(m2[i][j], expect);
            }
        }
    }

    #[test]
    fn cyclic_tightening() {
        let f = rose(&["ab", "a"]);
        let g = f.graph();
        let loop_ = f.loop_for_word(&Word::parse("abA", 2).unwrap());
        assert_eq!(loop_.cyclic_tighten(g).display(g), "b");
        let w = Word::parse("ab", 2).unwrap();
        assert_eq!(rose_path_to_word(&f.loop_for_word(&w), 2), w);
    }
}
