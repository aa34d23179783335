use std::collections::HashMap;

use serde::Serialize;

use super::{DirEdge, EdgePath, GraphError, GraphMap, StratumLabel};

fn index(d: DirEdge) -> usize {
    2 * d.edge + d.rev as usize
}

fn dir(i: usize) -> DirEdge {
    DirEdge::new(i / 2, i % 2 == 1)
}

/// The derivative map on directions and the gates it induces: two
/// directions at a vertex share a gate when some iterate of the
/// derivative identifies them. A turn inside a gate is illegal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TurnStructure {
    derivative: Vec<Option<DirEdge>>,
    gate: Vec<usize>,
    top: Vec<bool>,
}

impl TurnStructure {
    pub fn new(f: &GraphMap) -> Result<Self, GraphError> {
        let g = f.graph();
        let n = 2 * g.num_edges();
        let derivative: Vec<Option<DirEdge>> = (0..n).map(|i| f.dir_image(dir(i)).edges.first().copied()).collect();
        let step = |cur: &[Option<DirEdge>]| -> Vec<Option<DirEdge>> {
            cur.iter().map(|d| d.and_then(|d| derivative[index(d)])).collect()
        };
        // the image sets of Df^n shrink, so once Df^{n+1} induces the
        // same partition as Df^n it never changes again
        let partition = |vals: &[Option<DirEdge>]| -> Vec<usize> {
            let mut ids: HashMap<(usize, Option<DirEdge>), usize> = HashMap::new();
            (0..n)
                .map(|i| {
                    let key = (g.origin(dir(i)), vals[i]);
                    let fresh = ids.len();
                    // undefined images never identify two directions
                    let key = if vals[i].is_none() { (usize::MAX - i, None) } else { key };
                    *ids.entry(key).or_insert(fresh)
                })
                .collect()
        };
        let mut cur = derivative.clone();
        let mut gate = partition(&cur);
        let limit = n * n + 2;
        let mut stable = false;
        for _ in 0..limit {
            cur = step(&cur);
            let next = partition(&cur);
            if next == gate {
                stable = true;
                break;
            }
            gate = next;
        }
        if !stable {
            return Err(GraphError::GatesUnstable(limit));
        }
        let top = (0..g.num_edges()).map(|e| f.label(e) == StratumLabel::Top).collect();
        Ok(TurnStructure { derivative, gate, top })
    }

    pub fn derivative(&self, d: DirEdge) -> Option<DirEdge> {
        self.derivative[index(d)]
    }

    pub fn gate(&self, d: DirEdge) -> usize {
        self.gate[index(d)]
    }

    /// Directions grouped by gate.
    pub fn gates(&self) -> Vec<Vec<DirEdge>> {
        let mut groups: Vec<Vec<DirEdge>> = Vec::new();
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for i in 0..self.gate.len() {
            let slot = *seen.entry(self.gate[i]).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[slot].push(dir(i));
        }
        groups
    }

    /// A turn `(d1, d2)` of two directions at the same vertex is illegal
    /// when they lie in one gate. Turns involving a zero-stratum edge are
    /// treated as legal.
    pub fn is_illegal(&self, d1: DirEdge, d2: DirEdge) -> bool {
        self.top[d1.edge] && self.top[d2.edge] && self.gate(d1) == self.gate(d2)
    }

    /// Least `n ≥ 1` with `Df^n(d1) = Df^n(d2)`.
    pub fn identifying_power(&self, d1: DirEdge, d2: DirEdge) -> Option<usize> {
        let (mut a, mut b) = (Some(d1), Some(d2));
        for n in 1..=self.derivative.len() + 1 {
            a = a.and_then(|d| self.derivative(d));
            b = b.and_then(|d| self.derivative(d));
            if a.is_some() && a == b {
                return Some(n);
            }
        }
        None
    }

    /// Positions `i` such that the turn between edges `i` and `i + 1` of
    /// the path is illegal.
    pub fn illegal_turns(&self, p: &EdgePath) -> Vec<usize> {
        p.edges
            .windows(2)
            .enumerate()
            .filter(|(_, w)| self.is_illegal(w[0].reverse(), w[1]))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn ilt_count(&self, p: &EdgePath) -> usize {
        self.illegal_turns(p).len()
    }

    /// Illegal turns of a closed path read as a loop, including the turn
    /// at the basepoint.
    pub fn cyclic_ilt_count(&self, p: &EdgePath) -> usize {
        let wrap = match (p.edges.last(), p.edges.first()) {
            (Some(&l), Some(&f)) if p.len() > 1 || l != f.reverse() => self.is_illegal(l.reverse(), f) as usize,
            _ => 0,
        };
        self.ilt_count(p) + wrap
    }

    pub fn is_legal(&self, p: &EdgePath) -> bool {
        self.ilt_count(p) == 0
    }
}

/// The first edge iterate that fails to stay legal: `(edge, power,
/// tightened path)` where `power ≤ depth`.
pub(crate) fn first_violation(f: &GraphMap, ts: &TurnStructure, depth: usize) -> Option<(usize, usize, EdgePath)> {
    let g = f.graph();
    let mut worst: Option<(usize, usize, EdgePath)> = None;
    for e in 0..g.num_edges() {
        if f.label(e) != StratumLabel::Top {
            continue;
        }
        let mut cur = EdgePath::single(g, DirEdge::new(e, false));
        for m in 1..=depth {
            let raw = f.image_untightened(&cur);
            let tight = raw.tighten();
            if tight.len() != raw.len() {
                // cancellation means the previous path had an illegal turn
                if worst.as_ref().is_none_or(|w| cur.len() < w.2.len()) {
                    worst = Some((e, m - 1, cur.clone()));
                }
                break;
            }
            if !ts.is_legal(&tight) {
                if worst.as_ref().is_none_or(|w| tight.len() < w.2.len()) {
                    worst = Some((e, m, tight));
                }
                break;
            }
            cur = tight;
        }
    }
    worst
}

/// True when `f^m(e)` is tight and legal for every top edge `e` and every
/// `m ≤ depth`.
pub fn is_train_track(f: &GraphMap, depth: usize) -> Result<bool, GraphError> {
    let ts = TurnStructure::new(f)?;
    Ok(first_violation(f, &ts, depth).is_none())
}

impl GraphMap {
    pub fn turn_structure(&self) -> Result<TurnStructure, GraphError> {
        TurnStructure::new(self)
    }

    pub fn is_train_track(&self, depth: usize) -> Result<bool, GraphError> {
        is_train_track(self, depth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::Automorphism;
    use crate::graphmaps::word_to_rose_path;
    use crate::words::Word;

    fn rose(images: &[&str]) -> GraphMap {
        GraphMap::rose_from_automorphism(&Automorphism::from_strs(images).unwrap())
    }

    fn path(s: &str) -> EdgePath {
        word_to_rose_path(&Word::parse(s, 3).unwrap())
    }

    #[test]
    fn fibonacci_gates() {
        let f = rose(&["ab", "a"]);
        let ts = f.turn_structure().unwrap();
        let a = DirEdge::new(0, false);
        let b = DirEdge::new(1, false);
        assert_eq!(ts.gate(a), ts.gate(b));
        assert_ne!(ts.gate(a.reverse()), ts.gate(b.reverse()));
        assert_eq!(ts.gates().len(), 3);
        assert!(ts.is_illegal(a, b));
        assert_eq!(ts.ilt_count(&path("Ab")), 1);
        assert_eq!(ts.ilt_count(&path("Ba")), 1);
        assert_eq!(ts.ilt_count(&path("abaab")), 0);
        assert!(f.is_train_track(6).unwrap());
    }

    #[test]
    fn fibonacci_inverse_is_a_train_track() {
        let fib = Automorphism::from_strs(&["ab", "a"]).unwrap();
        let f = GraphMap::rose_from_automorphism(&fib.inverse());
        let ts = f.turn_structure().unwrap();
        assert_eq!(ts.gates().len(), 2);
        assert!(f.is_train_track(8).unwrap());
    }

    #[test]
    fn a_map_with_cancellation_is_not() {
        // f(b a) = baB ba tightens to bba
        let f = rose(&["ba", "baB"]);
        assert!(!f.is_train_track(4).unwrap());
    }

    #[test]
    fn non_invertible_map_with_cancellation() {
        let phi = crate::automorphisms::Endomorphism::from_strs(&["ab", "Ab"]).unwrap();
        let f = GraphMap::rose_from_endomorphism(&phi);
        assert!(!f.is_train_track(5).unwrap());
        let ts = f.turn_structure().unwrap();
        assert_eq!(ts.ilt_count(&path("ab")), 1);
    }

    #[test]
    fn legal_paths_stay_legal() {
        let f = rose(&["ab", "a"]);
        let ts = f.turn_structure().unwrap();
        for w in crate::words::all_reduced_words(2, 6) {
            let p = word_to_rose_path(&w);
            if ts.is_legal(&p) {
                let raw = f.image_untightened(&p);
                assert!(raw.is_tight() && ts.is_legal(&raw), "{w}");
            }
        }
    }

    #[test]
    fn identifying_power_of_fibonacci_inverse() {
        let fib = Automorphism::from_strs(&["ab", "a"]).unwrap();
        let f = GraphMap::rose_from_automorphism(&fib.inverse());
        let ts = f.turn_structure().unwrap();
        let a = DirEdge::new(0, false);
        let bb = DirEdge::new(1, true);
        assert_eq!(ts.identifying_power(a, bb), Some(2));
        assert_eq!(ts.identifying_power(a, DirEdge::new(1, false)), None);
    }
}
