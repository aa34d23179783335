//! Orbits of automorphisms on `F_k ∪ ∂F_k`: limit-cycle detection,
//! fixed-point classification, twisted products, period censuses and the
//! repeller/attractor graph.

mod census;
mod fixed;
mod gamma;
mod omega;
mod orbit;

pub use census::{attraction_rate, periods_census, positive_index_search, CensusEntry, CensusReport, IndexHit};
pub use fixed::{classify_fixed_point, fixed_words, periodic_words, FixedPointClass, FixedPointKind, Perturbation};
pub use gamma::{gamma_graph, GammaEdge, GammaGraph, GammaVertex, Unresolved};
pub use omega::{
    omega_limit, omega_limit_boundary, verify_cycle, w_sequence_limit, LimitCertificate, LimitKind, OmegaLimit,
};
pub use orbit::{orbit, w_sequence, OrbitTrace};

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::automorphisms::AutError;
use crate::words::{gromov_product, BoundaryPrefixOracle, EpWord, GromovProduct, Letter, PrefixSource, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error("no limit cycle certified after {iterations} iterations ({reason})")]
    NoConvergenceDetected { iterations: usize, reason: String },
    #[error("the sequence is periodic with period {period}")]
    SequencePeriodic { period: usize, cycle: Vec<Word> },
    #[error("growth is not exponential (length ratio estimate {estimate})")]
    NonExponential { estimate: f64 },
    #[error("no twist with {wanted} fixed boundary points within budget ({tried} candidates tried)")]
    NotFoundWithinBudget { wanted: usize, tried: usize },
    #[error("point {0} is not fixed at the requested depth")]
    NotFixed(String),
}

/// Budgets shared by every limit computation. Failures to certify within
/// these budgets are reported as inconclusive, never as negative results.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OmegaConfig {
    /// Maximum number of iterations.
    pub n_max: usize,
    /// Largest period tried.
    pub q_max: usize,
    /// Prefix depth at which samples must agree.
    pub cert_depth: usize,
    /// Number of consecutive agreeing samples required per residue.
    pub window: usize,
    /// Exact words are kept until they exceed this length.
    pub exact_cap: usize,
    /// Certified prefix length tracked once a term stops being exact.
    pub prefix_keep: usize,
    /// Longest period tried when recognizing eventually periodic limits.
    pub ep_max_period: usize,
}

impl Default for OmegaConfig {
    fn default() -> Self {
        OmegaConfig {
            n_max: 400,
            q_max: 60,
            cert_depth: 64,
            window: 8,
            exact_cap: 1 << 16,
            prefix_keep: 1 << 12,
            ep_max_period: 256,
        }
    }
}

/// A point of `F_k ∪ ∂F_k`: a group element, an eventually periodic
/// boundary point, or a boundary point known through a certified prefix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(Word),
    Periodic(EpWord),
    Prefix(BoundaryPrefixOracle),
}

impl Point {
    /// Parses `u(c)^inf` as a boundary point and anything else as a word.
    pub fn parse(text: &str, rank: usize) -> Result<Point, WordError> {
        if text.contains('(') {
            Ok(Point::Periodic(EpWord::parse(text, rank)?))
        } else {
            Ok(Point::Finite(Word::parse(text, rank)?))
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Point::Finite(w) => w.rank(),
            Point::Periodic(x) => x.rank(),
            Point::Prefix(o) => o.rank(),
        }
    }

    pub fn is_boundary(&self) -> bool {
        !matches!(self, Point::Finite(_))
    }

    /// Number of letters known exactly; `None` for exact infinite words.
    pub fn known_depth(&self) -> Option<usize> {
        match self {
            Point::Finite(w) => Some(w.len()),
            Point::Periodic(_) => None,
            Point::Prefix(o) => Some(o.stabilization_depth()),
        }
    }

    /// The first `n` letters, when known.
    pub fn prefix(&self, n: usize) -> Option<Word> {
        match self {
            Point::Finite(w) => (n <= w.len()).then(|| w.prefix(n)),
            Point::Periodic(x) => Some(x.prefix_word(n)),
            Point::Prefix(o) => o.prefix(n),
        }
    }

    pub fn gromov(&self, other: &Point) -> GromovProduct {
        gromov_product(self, other)
    }

    /// Whether two points should be treated as the same limit point.
    /// Exact points compare exactly; a prefix-only point must agree with
    /// the other to `min(2 · cert_depth, known depth)` letters, and that
    /// depth must be at least `cert_depth`.
    pub fn same_limit(&self, other: &Point, cert_depth: usize) -> bool {
        match (self, other) {
            (Point::Prefix(_), _) | (_, Point::Prefix(_)) => {
                let known = match (self.known_depth(), other.known_depth()) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => unreachable!(),
                };
                let need = (2 * cert_depth).min(known);
                need >= cert_depth && self.gromov(other).at_least(need)
            }
            _ => self == other,
        }
    }

    /// Short label: the word, the `u(c)^inf` form, or a prefix followed by `...`.
    pub fn snippet(&self, max_letters: usize) -> String {
        match self {
            Point::Prefix(o) => format!("{}...", o.certified().prefix(max_letters)),
            other => other.to_string(),
        }
    }
}

impl PrefixSource for Point {
    fn rank(&self) -> usize {
        Point::rank(self)
    }
    fn letter_at(&self, i: usize) -> Option<Letter> {
        match self {
            Point::Finite(w) => w.letter_at(i),
            Point::Periodic(x) => x.letter_at(i),
            Point::Prefix(o) => o.letter_at(i),
        }
    }
    fn finite_len(&self) -> Option<usize> {
        match self {
            Point::Finite(w) => Some(w.len()),
            Point::Periodic(_) => None,
            Point::Prefix(o) => o.finite_len(),
        }
    }
    fn periodic_shape(&self) -> Option<(usize, usize)> {
        match self {
            Point::Periodic(x) => x.periodic_shape(),
            _ => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(w) => w.fmt(f),
            Point::Periodic(x) => x.fmt(f),
            Point::Prefix(o) => o.fmt(f),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point({self})")
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<Word> for Point {
    fn from(w: Word) -> Self {
        Point::Finite(w)
    }
}

impl From<EpWord> for Point {
    fn from(x: EpWord) -> Self {
        Point::Periodic(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_points() {
        assert_eq!(Point::parse("b(A)^inf", 2).unwrap(), Point::Periodic(EpWord::parse("b(A)^inf", 2).unwrap()));
        assert_eq!(Point::parse("abA", 2).unwrap(), Point::Finite(Word::parse("abA", 2).unwrap()));
    }

    #[test]
    fn same_limit_rules() {
        let x = Point::parse("(ab)^inf", 2).unwrap();
        let near = Point::Prefix(BoundaryPrefixOracle::from_prefix(x.prefix(200).unwrap()));
        let shallow = Point::Prefix(BoundaryPrefixOracle::from_prefix(x.prefix(20).unwrap()));
        assert!(x.same_limit(&near, 64));
        assert!(near.same_limit(&x, 64));
        assert!(!x.same_limit(&shallow, 64));
        assert!(!x.same_limit(&Point::parse("(ba)^inf", 2).unwrap(), 64));
    }
}
