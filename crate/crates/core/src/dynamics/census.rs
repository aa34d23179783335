use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{fixed_words, omega_limit_boundary, DynError, LimitKind, OmegaConfig, Point};
use crate::automorphisms::Automorphism;
use crate::words::{all_reduced_words, EpWord, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub seed: String,
    /// Period of the seed (if periodic) or of its certified limit cycle.
    pub period: Option<usize>,
    /// True when the seed itself is periodic, so the period is exact.
    pub exact: bool,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub periods: BTreeSet<usize>,
    pub entries: Vec<CensusEntry>,
    pub bound: Option<usize>,
    /// Observed periods above `bound`.
    pub violations: Vec<usize>,
    pub inconclusive: usize,
}

/// Periods seen among all words of length at most `word_len_max` and the
/// extra `seeds`: exact periods of periodic seeds, certified periods of
/// the limit cycles of the others.
pub fn periods_census(
    alpha: &Automorphism,
    word_len_max: usize,
    seeds: &[Point],
    cfg: &OmegaConfig,
    bound: Option<usize>,
) -> CensusReport {
    let mut all: Vec<Point> = all_reduced_words(alpha.rank(), word_len_max).into_iter().map(Point::Finite).collect();
    all.extend(seeds.iter().cloned());
    let entries: Vec<CensusEntry> = all
        .par_iter()
        .map(|seed| match omega_limit_boundary(alpha, seed, cfg) {
            Ok(lim) => CensusEntry {
                seed: seed.to_string(),
                period: Some(lim.period),
                exact: lim.kind == LimitKind::PeriodicSeed,
                status: "certified".into(),
            },
            Err(e) => CensusEntry { seed: seed.to_string(), period: None, exact: false, status: e.to_string() },
        })
        .collect();
    let periods: BTreeSet<usize> = entries.iter().filter_map(|e| e.period).collect();
    let violations: Vec<usize> = match bound {
        Some(b) => periods.iter().copied().filter(|&p| p > b).collect(),
        None => Vec::new(),
    };
    for p in &violations {
        log::warn!("observed period {p} exceeds the configured bound {}", bound.unwrap_or(0));
    }
    let inconclusive = entries.iter().filter(|e| e.period.is_none()).count();
    CensusReport { periods, entries, bound, violations, inconclusive }
}

/// Words longer than this stop the length sequence in [`attraction_rate`].
const RATE_LENGTH_CAP: usize = 1 << 22;

/// Growth rate of `|α^n(g)|`: the geometric mean of successive length
/// ratios over the last `window` iterations.
///
/// Fails with [`DynError::NonExponential`] when `n · log(rate)` stays below
/// `2k`: polynomial growth of degree `d < k` gives `n · log(rate) ≈ d`.
pub fn attraction_rate(alpha: &Automorphism, g: &Word, n_max: usize, window: usize) -> Result<f64, DynError> {
    let window = window.max(1);
    let mut lengths = vec![g.len()];
    let mut cur = g.clone();
    while lengths.len() <= n_max && cur.len() <= RATE_LENGTH_CAP {
        cur = alpha.apply_letters(cur.letters());
        lengths.push(cur.len());
    }
    let n = lengths.len() - 1;
    if n < window || lengths[n - window] == 0 {
        return Err(DynError::NonExponential { estimate: 1.0 });
    }
    let estimate = (lengths[n] as f64 / lengths[n - window] as f64).powf(1.0 / window as f64);
    if n as f64 * estimate.ln() <= 2.0 * alpha.rank() as f64 {
        return Err(DynError::NonExponential { estimate });
    }
    Ok(estimate)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexHit {
    pub q: usize,
    pub w: Word,
    pub fixed_points: Vec<Point>,
    pub tried: usize,
}

/// Longest fixed word enumerated when collecting fixed boundary points.
const INDEX_FIXED_LEN: usize = 3;

/// Distinct fixed boundary points of `beta` found from fixed words and
/// from period-one limits of short seeds under `beta` and its inverse.
fn fixed_boundary_points(beta: &Automorphism, cfg: &OmegaConfig) -> Vec<Point> {
    let rank = beta.rank();
    let mut found: Vec<Point> = Vec::new();
    let add = |p: Point, found: &mut Vec<Point>| {
        if !found.iter().any(|q| q.same_limit(&p, cfg.cert_depth)) {
            found.push(p);
        }
    };
    for w in fixed_words(beta, INDEX_FIXED_LEN).into_iter().filter(|w| !w.is_empty()) {
        add(Point::Periodic(EpWord::power_limit(&w).expect("nontrivial")), &mut found);
    }
    let seeds: Vec<Word> = all_reduced_words(rank, 2).into_iter().filter(|w| !w.is_empty()).collect();
    let inverse = beta.inverse();
    let limits: Vec<Point> = seeds
        .par_iter()
        .flat_map_iter(|s| {
            [beta, &inverse]
                .into_iter()
                .filter_map(|m| omega_limit_boundary(m, &Point::Finite(s.clone()), cfg).ok())
                .filter(|lim| lim.period == 1 && lim.points[0].is_boundary())
                .map(|lim| lim.points[0].clone())
                .collect::<Vec<_>>()
        })
        .collect();
    for p in limits {
        add(p, &mut found);
    }
    found
}

/// Searches twists `i_w ∘ α^q` (by `q`, then `w` in shortlex order) for one
/// with at least four distinct fixed boundary points. `budget` caps the
/// number of twists examined.
pub fn positive_index_search(
    alpha: &Automorphism,
    q_max: usize,
    w_len_max: usize,
    budget: usize,
    cfg: &OmegaConfig,
) -> Result<IndexHit, DynError> {
    let words = all_reduced_words(alpha.rank(), w_len_max);
    let mut tried = 0;
    for q in 1..=q_max {
        for w in &words {
            if tried == budget {
                return Err(DynError::NotFoundWithinBudget { wanted: 4, tried });
            }
            tried += 1;
            let beta = alpha.twist(w, q as i64)?;
            let fixed_points = fixed_boundary_points(&beta, cfg);
            if fixed_points.len() >= 4 {
                return Ok(IndexHit { q, w: w.clone(), fixed_points, tried });
            }
        }
    }
    Err(DynError::NotFoundWithinBudget { wanted: 4, tried })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_of_permutations() {
        let sigma = Automorphism::from_strs(&["b", "a", "d", "e", "c"]).unwrap();
        let seeds: Vec<Point> = ["(a)^inf", "(c)^inf", "(ac)^inf"].iter().map(|s| Point::parse(s, 5).unwrap()).collect();
        let report = periods_census(&sigma, 2, &seeds, &OmegaConfig::default(), Some(60));
        assert_eq!(report.periods.into_iter().collect::<Vec<_>>(), [1, 2, 3, 6]);
        assert!(report.violations.is_empty());
        let id = Automorphism::identity(2);
        let report = periods_census(&id, 2, &[], &OmegaConfig::default(), None);
        assert_eq!(report.periods.into_iter().collect::<Vec<_>>(), [1]);
    }

    #[test]
    fn census_flags_periods_over_the_bound() {
        let sigma = Automorphism::from_strs(&["b", "a", "d", "e", "c"]).unwrap();
        let report = periods_census(&sigma, 1, &[], &OmegaConfig::default(), Some(2));
        assert_eq!(report.violations, [3]);
    }

    #[test]
    fn rates() {
        let fib = Automorphism::from_strs(&["ab", "a"]).unwrap();
        let rate = attraction_rate(&fib, &Word::parse("a", 2).unwrap(), 400, 8).unwrap();
        assert!((rate - 1.618_034).abs() < 0.01, "{rate}");
        let lin = Automorphism::from_strs(&["a", "aba"]).unwrap();
        assert!(matches!(
            attraction_rate(&lin, &Word::parse("b", 2).unwrap(), 400, 8),
            Err(DynError::NonExponential { .. })
        ));
        let id = Automorphism::identity(2);
        assert!(attraction_rate(&id, &Word::parse("ab", 2).unwrap(), 50, 8).is_err());
    }

    #[test]
    fn index_search_on_a_finite_order_map() {
        let sigma = Automorphism::from_strs(&["b", "a"]).unwrap();
        let hit = positive_index_search(&sigma, 2, 0, 10, &OmegaConfig::default()).unwrap();
        assert!(hit.fixed_points.len() >= 4);
        assert_eq!(hit.q, 2);
    }
}
