use serde::Serialize;

use super::turns::first_violation;
use super::{DirEdge, EdgeData, EdgePath, Graph, GraphError, GraphMap, StratumLabel};

/// An elementary move on a graph map. Each is a homotopy equivalence of
/// the underlying graph; the marking is carried along.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Move {
    /// Split `edge` at a new vertex so its image splits after `at` edges.
    Subdivide { edge: usize, at: usize },
    /// Identify the initial segments of two directions at one vertex
    /// whose images share a prefix.
    Fold { first: DirEdge, second: DirEdge },
    /// Contract an invariant forest.
    CollapseForest { edges: Vec<usize> },
    /// Delete a vertex of valence one together with its edge.
    ValenceOne { vertex: usize },
    /// Merge the two edges at a vertex of valence two.
    ValenceTwo { vertex: usize },
    /// Homotope the map so that the image of `vertex` slides along
    /// `direction`, which must leave the current image of `vertex`.
    Slide { vertex: usize, direction: DirEdge },
}

fn invalid(what: impl Into<String>) -> GraphError {
    GraphError::InvalidSite(what.into())
}

fn substitute(h: &[Vec<DirEdge>], dirs: &[DirEdge]) -> Vec<DirEdge> {
    let mut out = Vec::new();
    for d in dirs {
        let piece = &h[d.edge];
        if d.rev {
            out.extend(piece.iter().rev().map(|x| x.reverse()));
        } else {
            out.extend_from_slice(piece);
        }
    }
    out
}

impl GraphMap {
    fn ensure_plain(&self) -> Result<(), GraphError> {
        if self.retractions.is_empty() {
            Ok(())
        } else {
            Err(invalid("moves on a map with shortcut edges"))
        }
    }

    pub fn apply_move(&self, m: &Move) -> Result<GraphMap, GraphError> {
        match m {
            Move::Subdivide { edge, at } => self.subdivide(*edge, *at),
            Move::Fold { first, second } => self.fold(*first, *second),
            Move::CollapseForest { edges } => self.collapse_forest(edges),
            Move::ValenceOne { vertex } => self.remove_valence_one(*vertex),
            Move::ValenceTwo { vertex } => self.remove_valence_two(*vertex),
            Move::Slide { vertex, direction } => self.slide(*vertex, *direction),
        }
    }

    /// Moves `f(v)` across the edge `d`: images of edges leaving `v` gain
    /// `d̄` in front, images of edges entering `v` gain `d` at the end.
    pub fn slide(&self, v: usize, d: DirEdge) -> Result<GraphMap, GraphError> {
        self.ensure_plain()?;
        let g = &self.graph;
        if v >= g.num_vertices() || d.edge >= g.num_edges() || g.origin(d) != self.vertex_images[v] {
            return Err(invalid(format!("slide of vertex {v}")));
        }
        let mut out = self.clone();
        for (e, img) in out.edge_images.iter_mut().enumerate() {
            let data = g.edge(e);
            let mut edges = Vec::with_capacity(img.len() + 2);
            let mut start = img.start;
            if data.tail == v {
                edges.push(d.reverse());
                start = g.terminus(d);
            }
            edges.extend_from_slice(&img.edges);
            if data.head == v {
                edges.push(d);
            }
            *img = EdgePath { start, edges }.tighten();
        }
        out.vertex_images[v] = g.terminus(d);
        Ok(out)
    }

    fn total_image_length(&self) -> usize {
        self.edge_images.iter().map(EdgePath::len).sum()
    }

    /// Splits `e` at a new vertex mapped to the point of `f(e)` after `at`
    /// edges; `0 < at < |f(e)|`.
    pub fn subdivide(&self, e: usize, at: usize) -> Result<GraphMap, GraphError> {
        self.ensure_plain()?;
        let g = &self.graph;
        if e >= g.num_edges() || at == 0 || at >= self.edge_images[e].len() {
            return Err(invalid(format!("subdivision of edge {e} at {at}")));
        }
        let v = g.num_vertices();
        let e2 = g.num_edges();
        let mut edges = g.edges.clone();
        let old = edges[e].clone();
        edges[e].head = v;
        edges.push(EdgeData { name: g.fresh_name(&old.name), tail: v, head: old.head, label: old.label });
        let graph = Graph::new(v + 1, edges);
        let mut h: Vec<Vec<DirEdge>> = (0..e2).map(|i| vec![DirEdge::new(i, false)]).collect();
        h[e] = vec![DirEdge::new(e, false), DirEdge::new(e2, false)];
        let img = &self.edge_images[e];
        let mut edge_images: Vec<EdgePath> = self
            .edge_images
            .iter()
            .map(|p| EdgePath { start: p.start, edges: substitute(&h, &p.edges) })
            .collect();
        let (first, second) = img.edges.split_at(at);
        let mid = EdgePath { start: img.start, edges: first.to_vec() }.end(g);
        edge_images[e] = EdgePath { start: img.start, edges: substitute(&h, first) };
        edge_images.push(EdgePath { start: mid, edges: substitute(&h, second) });
        let mut vertex_images = self.vertex_images.clone();
        vertex_images.push(mid);
        let marking =
            self.marking.iter().map(|p| EdgePath { start: p.start, edges: substitute(&h, &p.edges) }).collect();
        Ok(GraphMap { graph, vertex_images, edge_images, base: self.base, marking, retractions: Vec::new() })
    }

    /// Contraction along `h`: edges flagged in `removed` disappear,
    /// vertex `v` becomes `hv[v]` (a surviving representative), and a
    /// surviving edge `E` gets image `h(f(hbar(E)))`.
    fn contract(
        &self,
        removed: &[bool],
        hv: &[usize],
        h: &[Vec<DirEdge>],
        hbar: &dyn Fn(usize) -> Vec<DirEdge>,
    ) -> GraphMap {
        let g = &self.graph;
        let mut edge_index = vec![usize::MAX; g.num_edges()];
        let mut n_edges = 0;
        for e in 0..g.num_edges() {
            if !removed[e] {
                edge_index[e] = n_edges;
                n_edges += 1;
            }
        }
        let mut vertex_index = vec![usize::MAX; g.num_vertices()];
        let mut n_vertices = 0;
        for v in 0..g.num_vertices() {
            if hv[v] == v {
                vertex_index[v] = n_vertices;
                n_vertices += 1;
            }
        }
        let vmap = |v: usize| vertex_index[hv[v]];
        let translate = |start: usize, dirs: &[DirEdge]| -> EdgePath {
            let mapped = substitute(h, dirs);
            let edges = mapped.into_iter().map(|d| DirEdge::new(edge_index[d.edge], d.rev)).collect();
            EdgePath { start: vmap(start), edges }.tighten()
        };
        let mut edges = Vec::with_capacity(n_edges);
        let mut edge_images = Vec::with_capacity(n_edges);
        for e in (0..g.num_edges()).filter(|&e| !removed[e]) {
            let data = g.edge(e);
            edges.push(EdgeData { name: data.name.clone(), tail: vmap(data.tail), head: vmap(data.head), label: data.label });
            let pre = hbar(e);
            let start = g.origin(pre[0]);
            let image = self.image_untightened(&EdgePath { start, edges: pre });
            edge_images.push(translate(image.start, &image.edges));
        }
        let vertex_images = (0..g.num_vertices()).filter(|&v| hv[v] == v).map(|v| vmap(self.vertex_images[v])).collect();
        let marking = self.marking.iter().map(|p| translate(p.start, &p.edges)).collect();
        GraphMap {
            graph: Graph::new(n_vertices, edges),
            vertex_images,
            edge_images,
            base: vmap(self.base),
            marking,
            retractions: Vec::new(),
        }
    }

    /// Folds the initial segments of directions `d1`, `d2` at a common
    /// vertex whose images start with the same edge, subdividing first
    /// where an image is longer than the common prefix.
    pub fn fold(&self, d1: DirEdge, d2: DirEdge) -> Result<GraphMap, GraphError> {
        self.ensure_plain()?;
        let g = &self.graph;
        if d1.edge >= g.num_edges() || d2.edge >= g.num_edges() || d1 == d2 || g.origin(d1) != g.origin(d2) {
            return Err(invalid(format!("fold of {} and {}", g.dir_name(d1), g.dir_name(d2))));
        }
        let (mut map, mut d1, mut d2) = (self.clone(), d1, d2);
        // subdividing one edge may lengthen the other image, so repeat
        // until both images are exactly the common prefix
        loop {
            let (i1, i2) = (map.dir_image(d1), map.dir_image(d2));
            let c = i1.edges.iter().zip(&i2.edges).take_while(|(x, y)| x == y).count();
            if c == 0 {
                let g = &map.graph;
                return Err(invalid(format!("fold of {} and {}: images diverge at once", g.dir_name(d1), g.dir_name(d2))));
            }
            let d = if i1.len() > c {
                d1
            } else if i2.len() > c {
                d2
            } else {
                break;
            };
            let len = map.edge_images[d.edge].len();
            let at = if d.rev { len - c } else { c };
            let new_edge = map.graph.num_edges();
            map = map.subdivide(d.edge, at)?;
            // after splitting e into e·e2 the reverse direction starts on e2
            let moved = |x: DirEdge| if x.edge == d.edge && x.rev { DirEdge::new(new_edge, true) } else { x };
            d1 = moved(d1);
            d2 = moved(d2);
        }
        let g = &map.graph;
        let (t1, t2) = (g.terminus(d1), g.terminus(d2));
        if t1 == t2 {
            return Err(invalid("fold of two edges with the same endpoints"));
        }
        let mut removed = vec![false; g.num_edges()];
        removed[d2.edge] = true;
        let hv: Vec<usize> = (0..g.num_vertices()).map(|v| if v == t2 { t1 } else { v }).collect();
        let mut h: Vec<Vec<DirEdge>> = (0..g.num_edges()).map(|e| vec![DirEdge::new(e, false)]).collect();
        h[d2.edge] = vec![if d2.rev { d1.reverse() } else { d1 }];
        Ok(map.contract(&removed, &hv, &h, &|e| vec![DirEdge::new(e, false)]))
    }

    /// Contracts a forest `F` with `f(F) ⊆ F`.
    pub fn collapse_forest(&self, forest: &[usize]) -> Result<GraphMap, GraphError> {
        self.ensure_plain()?;
        let g = &self.graph;
        let mut in_forest = vec![false; g.num_edges()];
        for &e in forest {
            if e >= g.num_edges() {
                return Err(invalid(format!("edge {e} out of range")));
            }
            in_forest[e] = true;
        }
        let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
        fn root(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for e in (0..g.num_edges()).filter(|&e| in_forest[e]) {
            let (a, b) = (root(&mut parent, g.edge(e).tail), root(&mut parent, g.edge(e).head));
            if a == b {
                return Err(invalid("collapse set contains a cycle"));
            }
            parent[a.max(b)] = a.min(b);
            if self.edge_images[e].edges.iter().any(|d| !in_forest[d.edge]) {
                return Err(invalid(format!("forest is not invariant at edge {}", g.edge(e).name)));
            }
        }
        let hv: Vec<usize> = (0..g.num_vertices()).map(|v| root(&mut parent, v)).collect();
        let h: Vec<Vec<DirEdge>> =
            (0..g.num_edges()).map(|e| if in_forest[e] { Vec::new() } else { vec![DirEdge::new(e, false)] }).collect();
        Ok(self.contract(&in_forest, &hv, &h, &|e| vec![DirEdge::new(e, false)]))
    }

    /// Contracts the non-loop edge of `toward` (a direction ending at
    /// `gone`), merging `gone` into the origin of `toward`. Edges at
    /// `gone` are pulled back across the contracted edge.
    fn collapse_edge(&self, toward: DirEdge) -> GraphMap {
        let g = &self.graph;
        let (keep, gone) = (g.origin(toward), g.terminus(toward));
        let mut removed = vec![false; g.num_edges()];
        removed[toward.edge] = true;
        let hv: Vec<usize> = (0..g.num_vertices()).map(|v| if v == gone { keep } else { v }).collect();
        let mut h: Vec<Vec<DirEdge>> = (0..g.num_edges()).map(|e| vec![DirEdge::new(e, false)]).collect();
        h[toward.edge] = Vec::new();
        let hbar = |e: usize| {
            let data = g.edge(e);
            let mut path = Vec::new();
            if data.tail == gone {
                path.push(toward);
            }
            path.push(DirEdge::new(e, false));
            if data.head == gone {
                path.push(toward.reverse());
            }
            path
        };
        self.contract(&removed, &hv, &h, &hbar)
    }

    /// Removes a valence-one vertex and its edge.
    pub fn remove_valence_one(&self, v: usize) -> Result<GraphMap, GraphError> {
        self.ensure_plain()?;
        let dirs = if v < self.graph.num_vertices() { self.graph.directions_at(v) } else { Vec::new() };
        if dirs.len() != 1 {
            return Err(invalid(format!("vertex {v} does not have valence one")));
        }
        Ok(self.collapse_edge(dirs[0].reverse()))
    }

    /// Replaces the two edges at a valence-two vertex by one edge.
    pub fn remove_valence_two(&self, v: usize) -> Result<GraphMap, GraphError> {
        self.ensure_plain()?;
        let dirs = if v < self.graph.num_vertices() { self.graph.directions_at(v) } else { Vec::new() };
        if dirs.len() != 2 || dirs[0].edge == dirs[1].edge {
            return Err(invalid(format!("vertex {v} does not have valence two")));
        }
        let mut out = self.collapse_edge(dirs[0].reverse());
        if self.label(dirs[0].edge) == StratumLabel::Top {
            let kept = dirs[1].edge - (dirs[1].edge > dirs[0].edge) as usize;
            out.graph.edges[kept].label = StratumLabel::Top;
        }
        Ok(out)
    }

    /// Edges some iterate of which is trivial, found by closing the set of
    /// edges with trivial image under "image lies in the set".
    pub fn pretrivial_edges(&self) -> Vec<usize> {
        let n = self.graph.num_edges();
        let mut set = vec![false; n];
        loop {
            let mut changed = false;
            for e in 0..n {
                if !set[e] && self.edge_images[e].edges.iter().all(|d| set[d.edge]) {
                    set[e] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (0..n).filter(|&e| set[e]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum TrainTrackOutcome {
    Success { map: GraphMap, trace: Vec<Move> },
    /// The search stopped; `map` is the last map reached.
    Unresolved { map: GraphMap, trace: Vec<Move>, reason: String },
}

impl TrainTrackOutcome {
    pub fn map(&self) -> &GraphMap {
        match self {
            TrainTrackOutcome::Success { map, .. } | TrainTrackOutcome::Unresolved { map, .. } => map,
        }
    }

    pub fn trace(&self) -> &[Move] {
        match self {
            TrainTrackOutcome::Success { trace, .. } | TrainTrackOutcome::Unresolved { trace, .. } => trace,
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, TrainTrackOutcome::Success { .. })
    }
}

/// Cleans up (pretrivial forests, valence-one vertices, slides that
/// shorten the images, valence-two vertices) and folds at the
/// first illegal turn met by an edge iterate, until every edge stays legal
/// for `depth` iterations or `budget` folds have been spent.
pub fn try_make_train_track(f: &GraphMap, budget: usize, depth: usize) -> TrainTrackOutcome {
    let mut map = f.clone();
    let mut trace = Vec::new();
    let stop = |map: GraphMap, trace: Vec<Move>, reason: String| TrainTrackOutcome::Unresolved { map, trace, reason };
    let mut seen = std::collections::HashSet::new();
    for _ in 0..=budget {
        loop {
            let forest = map.pretrivial_edges();
            if !forest.is_empty() {
                let mv = Move::CollapseForest { edges: forest };
                match map.apply_move(&mv) {
                    Ok(m) => {
                        map = m;
                        trace.push(mv);
                        continue;
                    }
                    Err(e) => return stop(map, trace, e.to_string()),
                }
            }
            let g = map.graph();
            if let Some(v) = (0..g.num_vertices()).find(|&v| g.valence(v) == 1) {
                let mv = Move::ValenceOne { vertex: v };
                map = map.apply_move(&mv).expect("valence checked");
                trace.push(mv);
                continue;
            }
            let slide = (0..g.num_vertices()).find_map(|v| {
                g.directions_at(map.vertex_images[v])
                    .into_iter()
                    .map(|d| Move::Slide { vertex: v, direction: d })
                    .find(|mv| map.apply_move(mv).is_ok_and(|m| m.total_image_length() < map.total_image_length()))
            });
            if let Some(mv) = slide {
                map = map.apply_move(&mv).expect("slide checked");
                trace.push(mv);
                continue;
            }
            let two = (0..g.num_vertices()).find(|&v| {
                let dirs = g.directions_at(v);
                dirs.len() == 2 && dirs[0].edge != dirs[1].edge
            });
            if let Some(v) = two {
                let mv = Move::ValenceTwo { vertex: v };
                map = map.apply_move(&mv).expect("valence checked");
                trace.push(mv);
                continue;
            }
            break;
        }
        if !seen.insert(map.to_text()) {
            return stop(map, trace, "moves returned to an earlier map".into());
        }
        let ts = match map.turn_structure() {
            Ok(ts) => ts,
            Err(e) => return stop(map, trace, e.to_string()),
        };
        let Some((_, _, path)) = first_violation(&map, &ts, depth) else {
            return TrainTrackOutcome::Success { map, trace };
        };
        if trace.iter().filter(|m| matches!(m, Move::Fold { .. })).count() >= budget {
            break;
        }
        let Some(&i) = ts.illegal_turns(&path).first() else {
            return stop(map, trace, "violation without an illegal turn".into());
        };
        let (d1, d2) = (path.edges[i].reverse(), path.edges[i + 1]);
        let Some(n) = ts.identifying_power(d1, d2) else {
            return stop(map, trace, "turn is not identified by the derivative".into());
        };
        let (mut a, mut b) = (d1, d2);
        for _ in 1..n {
            a = ts.derivative(a).expect("identified");
            b = ts.derivative(b).expect("identified");
        }
        let mv = Move::Fold { first: a, second: b };
        match map.apply_move(&mv) {
            Ok(m) => {
                map = m;
                trace.push(mv);
            }
            Err(e) => return stop(map, trace, e.to_string()),
        }
    }
    stop(map, trace, format!("fold budget of {budget} exhausted"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::Automorphism;

    fn rose(images: &[&str]) -> GraphMap {
        GraphMap::rose_from_automorphism(&Automorphism::from_strs(images).unwrap())
    }

    /// Outer classes agree when every short word has conjugate images.
    fn same_outer_class(f: &GraphMap, alpha: &Automorphism) {
        let induced = f.induced_endomorphism().expect("marked");
        for w in crate::words::all_reduced_words(alpha.rank(), 3) {
            let x = induced.apply(&w).unwrap().conjugacy_key();
            let y = alpha.apply(&w).unwrap().conjugacy_key();
            assert_eq!(x, y, "{w}");
        }
    }

    fn total_image_length(f: &GraphMap) -> usize {
        f.edge_images().iter().map(EdgePath::len).sum()
    }

    #[test]
    fn subdivision_preserves_the_induced_map() {
        let f = rose(&["ab", "a"]);
        let s = f.subdivide(0, 1).unwrap();
        assert_eq!(s.graph().num_vertices(), 2);
        assert_eq!(s.graph().num_edges(), 3);
        assert_eq!(s.graph().betti_number(), 2);
        let back = s.remove_valence_two(1).unwrap();
        assert_eq!(back.graph().num_edges(), 2);
        let alpha = Automorphism::from_strs(&["ab", "a"]).unwrap();
        same_outer_class(&s, &alpha);
        same_outer_class(&back, &alpha);
        assert!(f.subdivide(1, 1).is_err());
        let lambda = |m: &GraphMap| crate::graphmaps::pf_data(&m.transition_matrix(None), 1e-12).unwrap().lambda;
        assert!((lambda(&s) - lambda(&f)).abs() < 1e-9);
    }

    #[test]
    fn folding_a_conjugated_map() {
        // f(a) = ba, f(b) = baB share the prefix "ba"
        let alpha = Automorphism::from_strs(&["ba", "baB"]).unwrap();
        let f = GraphMap::rose_from_automorphism(&alpha);
        let folded = f.fold(DirEdge::new(0, false), DirEdge::new(1, false)).unwrap();
        assert_eq!(folded.graph().betti_number(), 2);
        assert!(folded.graph().is_connected());
        same_outer_class(&folded, &alpha);
        // a slide turns this map into the Fibonacci rose, lowering the PF bound
        let out = try_make_train_track(&f, 10, 5);
        assert!(out.is_success());
        let lambda = |m: &GraphMap| crate::graphmaps::pf_data(&m.transition_matrix(None), 1e-12).unwrap().lambda;
        assert!(lambda(out.map()) < lambda(&f) - 0.5);
    }

    #[test]
    fn folding_an_illegal_turn_shortens_images() {
        let alpha = Automorphism::from_strs(&["bACAB", "Ba", "bacaBa"]).unwrap();
        let f = GraphMap::rose_from_automorphism(&alpha);
        let folded = f.fold(DirEdge::new(2, false), DirEdge::new(0, true)).unwrap();
        assert_eq!((total_image_length(&f), total_image_length(&folded)), (13, 7));
        same_outer_class(&folded, &alpha);
    }

    #[test]
    fn train_track_search() {
        let fib = rose(&["ab", "a"]);
        let out = try_make_train_track(&fib, 10, 6);
        assert!(out.is_success() && out.trace().is_empty());
        let alpha = Automorphism::from_strs(&["ba", "baB"]).unwrap();
        let out = try_make_train_track(&GraphMap::rose_from_automorphism(&alpha), 100, 6);
        assert!(out.map().graph().betti_number() == 2);
        if let TrainTrackOutcome::Success { map, .. } = &out {
            assert!(map.is_train_track(6).unwrap());
        }
    }

    #[test]
    fn driver_keeps_the_outer_class() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut solved = 0;
        for i in 0..30 {
            let alpha = crate::automorphisms::random_automorphism(2 + i % 2, 6, &mut rng);
            let out = try_make_train_track(&GraphMap::rose_from_automorphism(&alpha), 100, 5);
            let map = out.map();
            assert_eq!(map.graph().betti_number(), alpha.rank());
            same_outer_class(map, &alpha);
            if let TrainTrackOutcome::Success { map, .. } = &out {
                assert!(map.is_train_track(5).unwrap());
                solved += 1;
            }
        }
        assert!(solved > 0);
    }

    #[test]
    fn forest_and_valence_one_moves() {
        // a two-vertex graph: loop a at 0, edge t from 0 to 1, loop b at 1
        let text = "vertices 2\nedge a: 0 0\nedge t: 0 1\nedge b: 1 1\n\
                    image a: t b ~t\nimage t: 1\nimage b: a\nvimage 1: 0\n\
                    mark a: a\nmark b: t b ~t\n";
        let f = GraphMap::from_text(text).unwrap();
        let alpha = Automorphism::from_strs(&["b", "a"]).unwrap();
        same_outer_class(&f, &alpha);
        assert_eq!(f.pretrivial_edges(), [1]);
        let c = f.collapse_forest(&[1]).unwrap();
        assert_eq!(c.graph().num_vertices(), 1);
        same_outer_class(&c, &alpha);
        // a hair at vertex 1 of the Fibonacci rose is removed by valence one
        let hair = "vertices 2\nedge a: 0 0\nedge b: 0 0\nedge h: 0 1\n\
                    image a: a b\nimage b: a\nimage h: h\nmark a: a\nmark b: b\n";
        let f = GraphMap::from_text(hair).unwrap();
        let r = f.remove_valence_one(1).unwrap();
        assert_eq!(r.graph().num_edges(), 2);
        same_outer_class(&r, &Automorphism::from_strs(&["ab", "a"]).unwrap());
    }

    #[test]
    fn invalid_sites() {
        let f = rose(&["ab", "a"]);
        assert!(f.fold(DirEdge::new(0, false), DirEdge::new(0, false)).is_err());
        assert!(f.remove_valence_one(0).is_err());
        assert!(f.collapse_forest(&[0]).is_err());
        assert!(f.fold(DirEdge::new(0, true), DirEdge::new(1, true)).is_err());
        // folding the Fibonacci rose at its illegal turn gives the same map back
        let folded = f.fold(DirEdge::new(0, false), DirEdge::new(1, false)).unwrap();
        assert_eq!(folded.graph().num_edges(), 2);
        assert_eq!(folded.transition_matrix(None), f.transition_matrix(None));
    }
}
