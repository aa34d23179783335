//! Translation lengths in the tree of a train-track map: the limit of
//! `λ^{-p}` times the PF-length of the tightened `f^p` image of a loop,
//! ellipticity tests, and the comparison of the trees of `α` and `α⁻¹`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::automorphisms::Automorphism;
use crate::graphmaps::{strata, try_make_train_track, EdgePath, GraphError, GraphMap, PfData, StratumClass, TurnStructure};
use crate::words::Word;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TreeError {
    #[error("no exponentially growing stratum")]
    NoExponentialStratum,
    #[error("map is not a train track")]
    NotTrainTrack,
    #[error("no convergence within {p_max} iterations (last estimate {last})")]
    NotConverged { p_max: usize, last: f64 },
    #[error("length {value} with enclosure width {width} does not decide ellipticity")]
    Undetermined { value: f64, width: f64 },
    #[error("length criterion says {length}, invariance criterion says elliptic")]
    CriteriaDisagree { length: String },
    #[error("prerequisite unresolved: {0}")]
    PrerequisiteUnresolved(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Loops longer than this end the iteration in [`TreeContext::translation_length`].
const LOOP_LENGTH_CAP: usize = 1 << 22;

/// Consecutive deficits that must agree before extrapolating.
const DEFICIT_RUN: usize = 3;

/// A train-track map together with the PF data of its top exponential
/// stratum. Edges outside that stratum have length zero.
#[derive(Clone, Debug)]
pub struct TreeContext {
    map: GraphMap,
    turns: TurnStructure,
    pf: PfData,
    lengths: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LengthMethod {
    /// The loop is trivial after tightening.
    Trivial,
    /// The loop became legal, so later images scale exactly by `λ`.
    Legal,
    /// The per-step loss `λ·L_p − L_{p+1}` settled to a constant and the
    /// geometric tail was summed.
    Deficit,
    /// Successive estimates agreed to the tolerance.
    Tolerance,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LengthReport {
    /// Least cyclic rotation of the cyclically reduced word, when the loop
    /// came from a group element.
    pub class: Option<Word>,
    pub estimates: Vec<f64>,
    pub value: f64,
    pub width: f64,
    pub legal_at: Option<usize>,
    pub method: LengthMethod,
}

/// One JSON row of a length report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LengthRow {
    pub class: String,
    pub value: f64,
    pub enclosure: [f64; 2],
    pub legal_at: Option<usize>,
}

impl LengthReport {
    pub fn row(&self) -> LengthRow {
        LengthRow {
            class: self.class.as_ref().map_or_else(|| "loop".into(), Word::to_string),
            value: self.value,
            enclosure: [(self.value - self.width).max(0.0), self.value + self.width],
            legal_at: self.legal_at,
        }
    }
}

impl TreeContext {
    /// Requires `f` to stay legal for `depth` iterations and to have an
    /// exponentially growing stratum; the highest such stratum is used.
    pub fn new(f: &GraphMap, depth: usize, tol: f64) -> Result<Self, TreeError> {
        if !f.is_train_track(depth)? {
            return Err(TreeError::NotTrainTrack);
        }
        let top = strata(f, tol)
            .into_iter().rfind(|s| s.class == StratumClass::Exponential)
            .ok_or(TreeError::NoExponentialStratum)?;
        let pf = top.pf.ok_or(TreeError::NoExponentialStratum)?;
        let mut lengths = vec![0.0; f.graph().num_edges()];
        for (i, &e) in top.edges.iter().enumerate() {
            lengths[e] = pf.lengths[i];
        }
        Ok(TreeContext { map: f.clone(), turns: f.turn_structure()?, pf, lengths })
    }

    /// Builds the rose of `α` and runs the train-track search on it.
    pub fn for_automorphism(alpha: &Automorphism, budget: usize, depth: usize, tol: f64) -> Result<Self, TreeError> {
        let out = try_make_train_track(&GraphMap::rose_from_automorphism(alpha), budget, depth);
        match out {
            crate::graphmaps::TrainTrackOutcome::Success { map, .. } => TreeContext::new(&map, depth, tol),
            crate::graphmaps::TrainTrackOutcome::Unresolved { reason, .. } => {
                Err(TreeError::PrerequisiteUnresolved(format!("no train track for {alpha}: {reason}")))
            }
        }
    }

    pub fn map(&self) -> &GraphMap {
        &self.map
    }

    pub fn pf(&self) -> &PfData {
        &self.pf
    }

    pub fn turns(&self) -> &TurnStructure {
        &self.turns
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.lengths
    }

    /// Sum of the PF-lengths of the edges of `p`.
    pub fn pf_length(&self, p: &EdgePath) -> f64 {
        p.edges.iter().map(|d| self.lengths[d.edge]).sum()
    }

    /// The smallest PF-length of a top-stratum edge.
    pub fn min_top_length(&self) -> f64 {
        self.lengths.iter().copied().filter(|&l| l > 0.0).fold(f64::INFINITY, f64::min)
    }

    pub fn word_length(&self, g: &Word, p_max: usize, tol: f64) -> Result<LengthReport, TreeError> {
        let mut report = self.translation_length(&self.map.loop_for_word(g), p_max, tol)?;
        report.class = Some(g.conjugacy_key());
        Ok(report)
    }

    /// Limit of `λ^{-p}·|f^p(loop)|` with the loop cyclically tightened at
    /// every step.
    pub fn translation_length(&self, loop_: &EdgePath, p_max: usize, tol: f64) -> Result<LengthReport, TreeError> {
        let g = self.map.graph();
        let lambda = self.pf.lambda;
        let rel = (self.pf.hi - self.pf.lo) / self.pf.lo;
        let mut cur = loop_.cyclic_tighten(g);
        let mut estimates = Vec::new();
        let mut pf_lengths: Vec<f64> = Vec::new();
        let mut ilts: Vec<usize> = Vec::new();
        let finish = |estimates: Vec<f64>, value: f64, width: f64, legal_at, method| LengthReport {
            class: None,
            estimates,
            value: value.max(0.0),
            width,
            legal_at,
            method,
        };
        for p in 0..=p_max {
            let scale = lambda.powi(p as i32);
            let len = self.pf_length(&cur);
            let est = len / scale;
            estimates.push(est);
            pf_lengths.push(len);
            ilts.push(self.turns.cyclic_ilt_count(&cur));
            if cur.is_empty() {
                return Ok(finish(estimates, 0.0, 0.0, Some(p), LengthMethod::Trivial));
            }
            if ilts[p] == 0 {
                let width = est * (p as f64 * rel + 4.0 * f64::EPSILON * (cur.len() as f64 + 1.0));
                return Ok(finish(estimates, est, width, Some(p), LengthMethod::Legal));
            }
            if p >= DEFICIT_RUN {
                let deficit = |i: usize| lambda * pf_lengths[i - 1] - pf_lengths[i];
                let slack = tol * len.max(1.0);
                let settled = (p + 1 - DEFICIT_RUN..p).all(|i| (deficit(i + 1) - deficit(i)).abs() <= slack)
                    && ilts[p + 1 - DEFICIT_RUN..=p].iter().all(|&c| c == ilts[p]);
                if settled && lambda > 1.0 {
                    let value = (len - deficit(p) / (lambda - 1.0)) / scale;
                    let width = slack / scale + value.abs() * p as f64 * rel;
                    return Ok(finish(estimates, value, width, None, LengthMethod::Deficit));
                }
            }
            if p >= 1 && (est - estimates[p - 1]).abs() < tol * est.max(1.0) {
                let width = tol * est.max(1.0) + est * p as f64 * rel;
                return Ok(finish(estimates, est, width, None, LengthMethod::Tolerance));
            }
            if p == p_max || cur.len() > LOOP_LENGTH_CAP {
                break;
            }
            cur = self.map.image_untightened(&cur).cyclic_tighten(g);
        }
        Err(TreeError::NotConverged { p_max, last: *estimates.last().unwrap_or(&f64::NAN) })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ellipticity {
    Elliptic,
    Hyperbolic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EllipticityReport {
    pub verdict: Ellipticity,
    pub length: LengthReport,
    /// Least `p` with `α^p(g)` conjugate to `g`, if one was found.
    pub invariant_power: Option<usize>,
}

/// Powers of `α` tried when looking for an invariant conjugacy class.
const INVARIANCE_POWERS: usize = 12;

/// Words longer than this end the invariance search.
const INVARIANCE_LENGTH_CAP: usize = 1 << 16;

fn invariant_power(alpha: &Automorphism, g: &Word) -> Option<usize> {
    let key = g.conjugacy_key();
    let mut cur = g.clone();
    for p in 1..=INVARIANCE_POWERS {
        cur = alpha.apply_letters(cur.letters()).cyclic_reduce().1;
        if cur.len() > INVARIANCE_LENGTH_CAP {
            return None;
        }
        if cur.conjugacy_key() == key {
            return Some(p);
        }
    }
    None
}

/// Elliptic when the translation length vanishes. A conjugacy class
/// fixed by a power of `α` must be elliptic; a length that says otherwise
/// is reported as a disagreement.
pub fn ellipticity_check(
    ctx: &TreeContext,
    alpha: &Automorphism,
    g: &Word,
    p_max: usize,
    tol: f64,
) -> Result<EllipticityReport, TreeError> {
    let length = ctx.word_length(g, p_max, tol)?;
    let invariant = if g.is_empty() { Some(1) } else { invariant_power(alpha, g) };
    let verdict = if length.value <= length.width + tol {
        Ellipticity::Elliptic
    } else if length.value - length.width > tol {
        Ellipticity::Hyperbolic
    } else {
        return Err(TreeError::Undetermined { value: length.value, width: length.width });
    };
    if invariant.is_some() && verdict == Ellipticity::Hyperbolic {
        return Err(TreeError::CriteriaDisagree { length: "hyperbolic".into() });
    }
    Ok(EllipticityReport { verdict, length, invariant_power: invariant })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductRow {
    pub class: String,
    pub length: Option<f64>,
    pub length_inverse: Option<f64>,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductReport {
    pub lambda: f64,
    pub lambda_inverse: f64,
    pub rows: Vec<ProductRow>,
    /// Classes elliptic in exactly one tree.
    pub mismatches: usize,
    pub undecided: usize,
    /// Minimum over classes hyperbolic in both trees of `max(ℓ, ℓ′)`.
    pub epsilon: Option<f64>,
}

/// Compares the trees of `α` and `α⁻¹` on a sample of classes: each class
/// should be elliptic in both or hyperbolic in both.
pub fn product_trees_check(
    alpha: &Automorphism,
    sample: &[Word],
    p_max: usize,
    tol: f64,
) -> Result<ProductReport, TreeError> {
    let inverse = alpha.inverse();
    let forward_ctx = TreeContext::for_automorphism(alpha, 100, 6, tol)?;
    let inverse_ctx = TreeContext::for_automorphism(&inverse, 100, 6, tol)?;
    let mut rows: Vec<(Word, ProductRow, Option<(Ellipticity, Ellipticity)>)> = sample
        .par_iter()
        .map(|g| {
            let a = ellipticity_check(&forward_ctx, alpha, g, p_max, tol);
            let b = ellipticity_check(&inverse_ctx, &inverse, g, p_max, tol);
            let key = g.conjugacy_key();
            let (length, length_inverse) = (
                a.as_ref().ok().map(|r| r.length.value),
                b.as_ref().ok().map(|r| r.length.value),
            );
            let (status, verdicts) = match (&a, &b) {
                (Ok(x), Ok(y)) if x.verdict == y.verdict => {
                    let both = if x.verdict == Ellipticity::Elliptic { "elliptic in both" } else { "hyperbolic in both" };
                    (both.to_string(), Some((x.verdict, y.verdict)))
                }
                (Ok(x), Ok(y)) => (format!("mismatch: {:?} / {:?}", x.verdict, y.verdict), Some((x.verdict, y.verdict))),
                (Err(e), _) | (_, Err(e)) => (format!("undecided: {e}"), None),
            };
            (key.clone(), ProductRow { class: key.to_string(), length, length_inverse, status }, verdicts)
        })
        .collect();
    rows.sort_by(|x, y| x.0.cmp(&y.0));
    rows.dedup_by(|x, y| x.0 == y.0);
    let mismatches = rows.iter().filter(|r| matches!(r.2, Some((a, b)) if a != b)).count();
    let undecided = rows.iter().filter(|r| r.2.is_none()).count();
    let epsilon = rows
        .iter()
        .filter(|r| r.2 == Some((Ellipticity::Hyperbolic, Ellipticity::Hyperbolic)))
        .filter_map(|r| Some(r.1.length?.max(r.1.length_inverse?)))
        .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.min(x))));
    Ok(ProductReport {
        lambda: forward_ctx.pf.lambda,
        lambda_inverse: inverse_ctx.pf.lambda,
        rows: rows.into_iter().map(|r| r.1).collect(),
        mismatches,
        undecided,
        epsilon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib() -> Automorphism {
        Automorphism::from_strs(&["ab", "a"]).unwrap()
    }

    fn ctx() -> TreeContext {
        TreeContext::for_automorphism(&fib(), 100, 6, 1e-12).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn legal_loop_scales_by_lambda() {
        let c = ctx();
        let a = c.word_length(&w("a"), 40, 1e-12).unwrap();
        let image = c.word_length(&fib().apply(&w("a")).unwrap(), 40, 1e-12).unwrap();
        assert_eq!(a.method, LengthMethod::Legal);
        assert!((image.value / a.value - c.pf().lambda).abs() < 1e-9);
    }

    #[test]
    fn class_function_and_powers() {
        let c = ctx();
        let g = w("abB").mul(&w("aaB"));
        let base = c.word_length(&g, 40, 1e-12).unwrap().value;
        let conj = c.word_length(&w("b").mul(&g).mul(&w("B")), 40, 1e-12).unwrap().value;
        assert_eq!(base, conj);
        for n in 1..=4 {
            let v = c.word_length(&g.pow(n), 40, 1e-12).unwrap().value;
            assert!((v - n as f64 * base).abs() < 1e-9 * n as f64, "{n}");
        }
    }

    #[test]
    fn commutator_is_elliptic() {
        let c = ctx();
        let r = ellipticity_check(&c, &fib(), &w("abAB"), 40, 1e-9).unwrap();
        assert_eq!(r.verdict, Ellipticity::Elliptic);
        let r = ellipticity_check(&c, &fib(), &Word::identity(2), 40, 1e-9).unwrap();
        assert_eq!(r.verdict, Ellipticity::Elliptic);
        let r = ellipticity_check(&c, &fib(), &w("a"), 40, 1e-9).unwrap();
        assert_eq!(r.verdict, Ellipticity::Hyperbolic);
    }

    #[test]
    fn fibonacci_trees_agree() {
        let sample: Vec<Word> = ["a", "b", "ab", "abAB", "aB", "aab"].iter().map(|s| w(s)).collect();
        let report = product_trees_check(&fib(), &sample, 40, 1e-9).unwrap();
        assert_eq!(report.mismatches, 0);
        assert_eq!(report.undecided, 0);
        assert!(report.epsilon.unwrap() > 0.0);
    }
}
