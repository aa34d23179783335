use rayon::prelude::*;
use serde::Serialize;

use super::{omega_limit, verify_cycle, DynError, LimitCertificate, LimitKind, OmegaConfig, OmegaLimit, Point};
use crate::automorphisms::Automorphism;
use crate::words::{all_reduced_words, push_reduced, Letter, Word};

/// All `w` with `|w| ≤ max_len` and `α(w) = w`, in shortlex order.
///
/// Depth-first over reduced words. A prefix `v` is abandoned when no
/// extension can be fixed: for `w = v·y`, the image `α(w)` begins with
/// `α(v)` minus at most `cancellation_bound` letters, and that part must
/// match `w` and fit in `max_len`.
pub fn fixed_words(alpha: &Automorphism, max_len: usize) -> Vec<Word> {
    let rank = alpha.rank();
    let bcc = alpha.cancellation_bound();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
    while let Some(v) = stack.pop() {
        let img = alpha.apply_letters(&v);
        if img.letters() == v.as_slice() {
            out.push(Word::from_letters(rank, v.clone()).expect("reduced"));
        }
        if v.len() == max_len {
            continue;
        }
        for code in (0..2 * rank).rev() {
            let l = Letter::from_code(code);
            if v.last() == Some(&l.inverse()) {
                continue;
            }
            let mut next = v.clone();
            next.push(l);
            let img = alpha.apply_letters(&next);
            let certain = img.len().saturating_sub(bcc);
            let m = certain.min(next.len());
            if certain <= max_len && img.letters()[..m] == next[..m] {
                stack.push(next);
            }
        }
    }
    out.sort();
    out
}

/// Words of length at most `max_len` with `α^p(w) = w` for some
/// `p ≤ p_max`, paired with their minimal period.
pub fn periodic_words(alpha: &Automorphism, max_len: usize, p_max: usize) -> Vec<(Word, usize)> {
    all_reduced_words(alpha.rank(), max_len)
        .into_par_iter()
        .filter_map(|w| {
            let mut cur = w.clone();
            for p in 1..=p_max {
                cur = alpha.apply_letters(cur.letters());
                if cur == w {
                    return Some((w, p));
                }
            }
            None
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FixedPointKind {
    Attracting,
    Repelling,
    HalfHalf,
    InBoundaryOfFixedSubgroup,
    Undetermined,
}

/// Where the orbit of a perturbed seed went.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Returns,
    Elsewhere { period: usize, point: String },
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Perturbation {
    pub depth: usize,
    pub seed: Word,
    pub forward: Outcome,
    pub backward: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointClass {
    pub kind: FixedPointKind,
    pub evidence: Vec<Perturbation>,
    /// A fixed element `w` with `X = w^{+∞}`, when there is one.
    pub fixed_element: Option<Word>,
}

/// Depths at which a fixed point is perturbed.
pub const PERTURBATION_DEPTHS: [usize; 4] = [4, 8, 16, 32];

fn outcome(alpha: &Automorphism, seed: &Word, x: &Point, cfg: &OmegaConfig) -> Outcome {
    match omega_limit(alpha, seed, cfg) {
        Ok(lim) if lim.period == 1 && lim.points[0].same_limit(x, cfg.cert_depth) => Outcome::Returns,
        Ok(lim) => Outcome::Elsewhere { period: lim.period, point: lim.points[0].snippet(24) },
        Err(e) => Outcome::Inconclusive(e.to_string()),
    }
}

/// For `X = u·c^∞`, the stabilizer of `X` in `F_k` is generated by
/// `u c u⁻¹`; `X` lies in the boundary of the fixed subgroup exactly when
/// that element is fixed.
fn fixed_generator(alpha: &Automorphism, x: &Point) -> Option<Word> {
    let Point::Periodic(ep) = x else { return None };
    let u = ep.prefix();
    let w = u.mul(ep.period()).mul(&u.invert());
    (alpha.apply_letters(w.letters()) == w).then_some(w)
}

/// Classifies a fixed boundary point by perturbing it: at each depth `d`
/// in [`PERTURBATION_DEPTHS`] (up to `max_depth`), every one-letter
/// deviation `X[..d]·ℓ` is iterated forward under `α` and under `α⁻¹`.
pub fn classify_fixed_point(
    alpha: &Automorphism,
    x: &Point,
    max_depth: usize,
    cfg: &OmegaConfig,
) -> Result<FixedPointClass, DynError> {
    let as_cycle = OmegaLimit {
        kind: LimitKind::Converged,
        period: 1,
        points: vec![x.clone()],
        certificate: LimitCertificate { exact: false, depth: cfg.cert_depth, start_index: 0, window: 0, iterations: 0 },
    };
    if !x.is_boundary() || !verify_cycle(alpha, &as_cycle, cfg.cert_depth) {
        return Err(DynError::NotFixed(x.snippet(32)));
    }
    let rank = alpha.rank();
    let known = x.known_depth().unwrap_or(usize::MAX);
    let mut seeds = Vec::new();
    for d in PERTURBATION_DEPTHS.into_iter().filter(|&d| d <= max_depth && d < known) {
        let pre = x.prefix(d + 1).expect("depth is known");
        let (next, prev) = (pre.letters()[d], pre.letters().get(d.wrapping_sub(1)).copied());
        for code in 0..2 * rank {
            let l = Letter::from_code(code);
            if l == next || Some(l.inverse()) == prev {
                continue;
            }
            let mut letters = pre.letters()[..d].to_vec();
            push_reduced(&mut letters, l);
            seeds.push((d, Word::from_letters(rank, letters).expect("reduced")));
        }
    }
    let inverse = alpha.inverse();
    let evidence: Vec<Perturbation> = seeds
        .into_par_iter()
        .map(|(depth, seed)| Perturbation {
            depth,
            forward: outcome(alpha, &seed, x, cfg),
            backward: outcome(&inverse, &seed, x, cfg),
            seed,
        })
        .collect();
    let fwd = |p: &Perturbation| p.forward == Outcome::Returns;
    let bwd = |p: &Perturbation| p.backward == Outcome::Returns;
    let fixed_element = fixed_generator(alpha, x);
    let kind = if evidence.is_empty() {
        FixedPointKind::Undetermined
    } else if evidence.iter().all(fwd) {
        FixedPointKind::Attracting
    } else if evidence.iter().all(bwd) {
        FixedPointKind::Repelling
    } else if evidence.iter().all(|p| fwd(p) || bwd(p))
        && evidence.iter().any(|p| fwd(p) && !bwd(p))
        && evidence.iter().any(|p| bwd(p) && !fwd(p))
    {
        FixedPointKind::HalfHalf
    } else if fixed_element.is_some() {
        FixedPointKind::InBoundaryOfFixedSubgroup
    } else {
        FixedPointKind::Undetermined
    };
    Ok(FixedPointClass { kind, evidence, fixed_element })
}
