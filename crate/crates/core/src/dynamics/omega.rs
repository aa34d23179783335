use std::collections::VecDeque;

use serde::Serialize;

use super::{w_sequence, DynError, OmegaConfig, Point};
use crate::automorphisms::Automorphism;
use crate::words::{push_reduced, BoundaryPrefixOracle, EpWord, GromovProduct, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LimitKind {
    /// The seed itself is periodic; `points` is its exact orbit.
    PeriodicSeed,
    /// The orbit converges to a cycle of boundary points.
    Converged,
}

/// Evidence behind an [`OmegaLimit`]: for each residue `r`, the prefixes of
/// length `depth` of the `window` samples at indices `start_index + r + jq`
/// agree. Exact certificates come from detected periodicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitCertificate {
    pub exact: bool,
    pub depth: usize,
    pub start_index: usize,
    pub window: usize,
    pub iterations: usize,
}

/// A limit cycle `{X_0, ..., X_{q-1}}` with `∂α(X_r) = X_{r+1 mod q}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaLimit {
    pub kind: LimitKind,
    pub period: usize,
    pub points: Vec<Point>,
    pub certificate: LimitCertificate,
}

enum Term {
    Finite(Word),
    Periodic(EpWord),
    /// A certified prefix of a term too long to keep exactly.
    Prefix(Vec<Letter>),
}

struct Sample {
    letters: Vec<Letter>,
}

/// Applies `α` to a certified prefix. At most `slack` trailing letters of
/// the image can be wrong, because the rest of the word may cancel into
/// them; those are dropped, and the result is capped at `keep` letters.
fn certified_image(alpha: &Automorphism, prefix: &[Letter], slack: usize, keep: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    for &l in prefix {
        for &x in alpha.forward().letter_image(l) {
            push_reduced(&mut out, x);
        }
        if out.len() >= keep + slack {
            break;
        }
    }
    let certified = out.len().saturating_sub(slack).min(keep);
    out.truncate(certified);
    out
}

struct Engine<'a> {
    alpha: &'a Automorphism,
    // right factor for twisted products w_{p+1} = α(w_p)·w
    tail: Option<&'a Word>,
    cfg: &'a OmegaConfig,
}

impl Engine<'_> {
    fn slack(&self) -> usize {
        self.alpha.cancellation_bound() + self.tail.map_or(0, Word::len)
    }

    fn step(&self, term: Term) -> Term {
        let keep = self.cfg.prefix_keep;
        match term {
            Term::Finite(u) => {
                let mut v = self.alpha.apply_letters(u.letters());
                if let Some(w) = self.tail {
                    v = v.mul(w);
                }
                if v.len() > self.cfg.exact_cap {
                    Term::Prefix(v.letters()[..keep.min(v.len())].to_vec())
                } else {
                    Term::Finite(v)
                }
            }
            Term::Periodic(x) => {
                let y = self.alpha.apply_ep(&x).expect("ranks agree");
                if y.size() > self.cfg.exact_cap {
                    Term::Prefix(y.prefix_word(keep).into_letters())
                } else {
                    Term::Periodic(y)
                }
            }
            Term::Prefix(p) => Term::Prefix(certified_image(self.alpha, &p, self.slack(), keep)),
        }
    }

    fn sample(&self, term: &Term) -> Sample {
        let keep = self.cfg.prefix_keep;
        let letters = match term {
            Term::Finite(u) => u.letters()[..u.len().min(keep)].to_vec(),
            Term::Periodic(x) => x.prefix_word(keep).into_letters(),
            Term::Prefix(p) => p.clone(),
        };
        Sample { letters }
    }

    /// Iterates from `first` until a limit cycle certifies.
    fn run(&self, first: Term) -> Result<OmegaLimit, DynError> {
        let cfg = self.cfg;
        let depth = cfg.cert_depth;
        let (w, q_max) = (cfg.window.max(2), cfg.q_max.max(1));
        let history_len = w * q_max;
        let mut history: VecDeque<Sample> = VecDeque::with_capacity(history_len + 1);
        let mut runs = vec![0usize; q_max + 1];
        let first_exact = match &first {
            Term::Finite(u) => Some(Point::Finite(u.clone())),
            Term::Periodic(x) => Some(Point::Periodic(x.clone())),
            Term::Prefix(_) => None,
        };
        let mut term = first;
        for t in 0..=cfg.n_max {
            if t > 0 {
                term = self.step(term);
            }
            if let Some(limit) = self.periodicity(&term, first_exact.as_ref(), t)? {
                return Ok(limit);
            }
            if let Term::Prefix(p) = &term {
                if p.len() < depth {
                    return Err(DynError::NoConvergenceDetected {
                        iterations: t,
                        reason: format!("certified prefix shrank to {} letters", p.len()),
                    });
                }
            }
            history.push_back(self.sample(&term));
            if history.len() > history_len {
                history.pop_front();
            }
            let last = history.len() - 1;
            for q in 1..=q_max {
                let agree = q <= last && {
                    let (a, b) = (&history[last].letters, &history[last - q].letters);
                    a.len() >= depth && b.len() >= depth && a[..depth] == b[..depth]
                };
                runs[q] = if agree { runs[q] + 1 } else { 0 };
            }
            for q in 1..=q_max {
                if runs[q] >= (w - 1) * q {
                    if let Some(limit) = self.build_limit(&history, q, t) {
                        return Ok(limit);
                    }
                }
            }
        }
        Err(DynError::NoConvergenceDetected {
            iterations: cfg.n_max,
            reason: format!("no period up to {q_max} stabilized at depth {depth}"),
        })
    }

    fn periodicity(&self, term: &Term, first: Option<&Point>, t: usize) -> Result<Option<OmegaLimit>, DynError> {
        if let Some(w) = self.tail {
            // w_r = w_s forces w_{|r-s|} = 1, so a trivial term is the only
            // way the twisted products can repeat
            if matches!(term, Term::Finite(u) if u.is_empty()) {
                let cycle = w_sequence(self.alpha, w, t + 1);
                return Err(DynError::SequencePeriodic { period: t + 1, cycle });
            }
            return Ok(None);
        }
        if t == 0 {
            return Ok(None);
        }
        let points = match (term, first) {
            (Term::Finite(u), Some(Point::Finite(g))) if u == g => {
                let mut pts = vec![Point::Finite(g.clone())];
                for _ in 1..t {
                    let Point::Finite(prev) = pts.last().unwrap() else { unreachable!() };
                    pts.push(Point::Finite(self.alpha.apply_letters(prev.letters())));
                }
                pts
            }
            (Term::Periodic(x), Some(Point::Periodic(x0))) if x == x0 => {
                let mut pts = vec![Point::Periodic(x0.clone())];
                for _ in 1..t {
                    let Point::Periodic(prev) = pts.last().unwrap() else { unreachable!() };
                    pts.push(Point::Periodic(self.alpha.apply_ep(prev)?));
                }
                pts
            }
            _ => return Ok(None),
        };
        Ok(Some(OmegaLimit {
            kind: LimitKind::PeriodicSeed,
            period: t,
            points,
            certificate: LimitCertificate { exact: true, depth: 0, start_index: 0, window: 1, iterations: t },
        }))
    }

    fn build_limit(&self, history: &VecDeque<Sample>, q: usize, t: usize) -> Option<OmegaLimit> {
        let cfg = self.cfg;
        let w = cfg.window.max(2);
        let last = history.len() - 1;
        let mut prefixes = Vec::with_capacity(q);
        for i in 0..q {
            let newest = last + 1 - q + i;
            let samples: Vec<&[Letter]> = (0..w).map(|j| history[newest - j * q].letters.as_slice()).collect();
            let mut lcp = samples[0].len();
            for s in &samples[1..] {
                lcp = lcp.min(s.iter().zip(samples[0]).take_while(|(a, b)| a == b).count());
            }
            prefixes.push(samples[0][..lcp].to_vec());
        }
        let certificate = LimitCertificate {
            exact: false,
            depth: cfg.cert_depth,
            start_index: t + 1 - w * q,
            window: w,
            iterations: t,
        };
        let rank = self.alpha.rank();
        if let Some(points) = promote_periodic(self.alpha, &prefixes, cfg.ep_max_period) {
            return Some(OmegaLimit {
                kind: LimitKind::Converged,
                period: q,
                points: points.into_iter().map(Point::Periodic).collect(),
                certificate,
            });
        }
        let points: Vec<Point> = prefixes
            .into_iter()
            .map(|p| Point::Prefix(BoundaryPrefixOracle::from_prefix(Word::from_letters(rank, p).expect("reduced"))))
            .collect();
        let limit = OmegaLimit { kind: LimitKind::Converged, period: q, points, certificate };
        verify_cycle(self.alpha, &limit, cfg.cert_depth).then_some(limit)
    }
}

/// Tries to read the cycle as eventually periodic words: the first prefix
/// must end in at least three repetitions of a period, and pushing the
/// candidate through `∂α` must reproduce every other prefix and close up
/// exactly after `q` steps.
fn promote_periodic(alpha: &Automorphism, prefixes: &[Vec<Letter>], max_period: usize) -> Option<Vec<EpWord>> {
    let rank = alpha.rank();
    let p0 = &prefixes[0];
    let d = p0.len();
    for p in 1..=max_period.min(d / 3) {
        let start = (0..d - p).rev().find(|&i| p0[i] != p0[i + p]).map_or(0, |i| i + 1);
        if d - start < 3 * p {
            continue;
        }
        let u = Word::from_letters(rank, p0[..start].to_vec()).ok()?;
        let c = Word::from_letters(rank, p0[start..start + p].to_vec()).ok()?;
        let Ok(x0) = EpWord::normalize(&u, &c) else { continue };
        let mut xs = vec![x0];
        let mut ok = true;
        for pre in &prefixes[1..] {
            let x = alpha.apply_ep(xs.last().unwrap()).ok()?;
            let pw = Word::from_letters(rank, pre.clone()).ok()?;
            if !x.prefix_word(pw.len()).eq(&pw) {
                ok = false;
                break;
            }
            xs.push(x);
        }
        if ok && alpha.apply_ep(xs.last().unwrap()).ok()? == xs[0] {
            return Some(xs);
        }
    }
    None
}

/// `Some(true)` if the certified image of a prefix of `x` agrees with `y` to
/// `depth` letters, `Some(false)` if it disagrees, `None` if the image is
/// too short to tell.
fn image_agrees(alpha: &Automorphism, x: &Point, y: &Point, depth: usize) -> Option<bool> {
    let px = x.prefix(x.known_depth().unwrap_or(4 * depth.max(1)))?;
    let img = certified_image(alpha, px.letters(), alpha.cancellation_bound(), usize::MAX / 2);
    let img = Word::from_letters(alpha.rank(), img).expect("reduced");
    let known = y.known_depth().map_or(img.len(), |d| d.min(img.len()));
    if known < depth {
        return None;
    }
    Some(matches!(y.gromov(&Point::Finite(img)), GromovProduct::Finite(n) if n >= depth))
}

/// Checks `∂α(X_r) = X_{r+1}` for every point of the cycle: exactly for
/// words and eventually periodic points, to `depth` letters otherwise.
/// When `α` shortens the known prefix too much, the equivalent
/// `∂α⁻¹(X_{r+1}) = X_r` is checked instead.
pub fn verify_cycle(alpha: &Automorphism, limit: &OmegaLimit, depth: usize) -> bool {
    let q = limit.points.len();
    if q != limit.period || q == 0 {
        return false;
    }
    let inverse = alpha.inverse();
    (0..q).all(|r| {
        let (x, y) = (&limit.points[r], &limit.points[(r + 1) % q]);
        match (x, y) {
            (Point::Finite(u), Point::Finite(v)) => alpha.apply_letters(u.letters()) == *v,
            (Point::Periodic(a), Point::Periodic(b)) => alpha.apply_ep(a).is_ok_and(|img| img == *b),
            _ => image_agrees(alpha, x, y, depth)
                .or_else(|| image_agrees(&inverse, y, x, depth))
                .unwrap_or(false),
        }
    })
}

/// Limit cycle of the forward orbit of `g`.
pub fn omega_limit(alpha: &Automorphism, g: &Word, cfg: &OmegaConfig) -> Result<OmegaLimit, DynError> {
    if g.rank() != alpha.rank() {
        return Err(crate::words::WordError::RankMismatch(alpha.rank(), g.rank()).into());
    }
    Engine { alpha, tail: None, cfg }.run(Term::Finite(g.clone()))
}

/// Limit cycle of the forward orbit of any point of `F_k ∪ ∂F_k`.
pub fn omega_limit_boundary(alpha: &Automorphism, x: &Point, cfg: &OmegaConfig) -> Result<OmegaLimit, DynError> {
    if x.rank() != alpha.rank() {
        return Err(crate::words::WordError::RankMismatch(alpha.rank(), x.rank()).into());
    }
    let first = match x {
        Point::Finite(w) => Term::Finite(w.clone()),
        Point::Periodic(e) => Term::Periodic(e.clone()),
        Point::Prefix(o) => Term::Prefix(o.certified().letters().to_vec()),
    };
    Engine { alpha, tail: None, cfg }.run(first)
}

/// Limit cycle of the twisted products `w_p`. Fails with
/// [`DynError::SequencePeriodic`] when the sequence repeats.
pub fn w_sequence_limit(alpha: &Automorphism, w: &Word, cfg: &OmegaConfig) -> Result<OmegaLimit, DynError> {
    if w.rank() != alpha.rank() {
        return Err(crate::words::WordError::RankMismatch(alpha.rank(), w.rank()).into());
    }
    Engine { alpha, tail: Some(w), cfg }.run(Term::Finite(w.clone()))
}
