use serde::Serialize;

use crate::automorphisms::Automorphism;
use crate::words::Word;

/// The first terms `g, α(g), α²(g), ...` of a forward orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitTrace {
    pub automorphism: String,
    pub start: Word,
    pub terms: Vec<Word>,
    pub lengths: Vec<usize>,
}

/// The first `n_max` terms of the orbit of `g`, starting with `g` itself.
pub fn orbit(alpha: &Automorphism, g: &Word, n_max: usize) -> OrbitTrace {
    let mut terms = Vec::with_capacity(n_max);
    let mut cur = g.clone();
    for i in 0..n_max {
        if i > 0 {
            cur = alpha.apply_letters(cur.letters());
        }
        terms.push(cur.clone());
    }
    OrbitTrace {
        automorphism: alpha.to_string(),
        start: g.clone(),
        lengths: terms.iter().map(Word::len).collect(),
        terms,
    }
}

/// `w_1, ..., w_{p_max}` with `w_p = α^{p-1}(w) ⋯ α(w) w`.
///
/// Computed by the recursion `w_{p+1} = α(w_p) · w`, which follows from
/// applying `α` to the defining product and appending `w`.
pub fn w_sequence(alpha: &Automorphism, w: &Word, p_max: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(p_max);
    let mut cur = w.clone();
    for p in 0..p_max {
        if p > 0 {
            cur = alpha.apply_letters(cur.letters()).mul(w);
        }
        out.push(cur.clone());
    }
    out
}
