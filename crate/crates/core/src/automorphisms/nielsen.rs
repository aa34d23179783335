use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{AutError, Automorphism, Certificate, Endomorphism};
use crate::words::Word;

/// Which side of the target the source is multiplied on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// An elementary Nielsen transformation of a tuple `(T_1, ..., T_k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NielsenMove {
    /// `T_i ← T_i⁻¹`
    Invert(usize),
    /// `T_target ← T_target · T_source^{±1}` or `T_source^{±1} · T_target`.
    Multiply { target: usize, source: usize, side: Side, inverse: bool },
}

impl NielsenMove {
    /// Applies the move to a tuple in place.
    pub fn apply(&self, tuple: &mut [Word]) {
        match *self {
            NielsenMove::Invert(i) => tuple[i] = tuple[i].invert(),
            NielsenMove::Multiply { target, .. } => tuple[target] = self.result(tuple),
        }
    }

    /// The new value of the target entry, without modifying the tuple.
    fn result(&self, tuple: &[Word]) -> Word {
        match *self {
            NielsenMove::Invert(i) => tuple[i].invert(),
            NielsenMove::Multiply { target, source, side, inverse } => {
                let s = if inverse { tuple[source].invert() } else { tuple[source].clone() };
                match side {
                    Side::Right => tuple[target].mul(&s),
                    Side::Left => s.mul(&tuple[target]),
                }
            }
        }
    }

    fn target(&self) -> usize {
        match *self {
            NielsenMove::Invert(i) => i,
            NielsenMove::Multiply { target, .. } => target,
        }
    }
}

/// States visited while searching among equal-length tuples for a
/// length-reducing move.
const PLATEAU_BUDGET: usize = 50_000;

fn multiply_moves(rank: usize) -> Vec<NielsenMove> {
    let mut moves = Vec::with_capacity(4 * rank * rank);
    for target in 0..rank {
        for source in (0..rank).filter(|&s| s != target) {
            for side in [Side::Right, Side::Left] {
                for inverse in [false, true] {
                    moves.push(NielsenMove::Multiply { target, source, side, inverse });
                }
            }
        }
    }
    moves
}

/// The best length-reducing move, if any: smallest resulting entry, ties
/// by shortlex of that entry, then by enumeration order.
fn best_reduction(tuple: &[Word], moves: &[NielsenMove]) -> Option<(NielsenMove, Word)> {
    let mut best: Option<(NielsenMove, Word)> = None;
    for mv in moves {
        let w = mv.result(tuple);
        if w.len() >= tuple[mv.target()].len() {
            continue;
        }
        if best.as_ref().is_none_or(|(_, b)| w < *b) {
            best = Some((*mv, w));
        }
    }
    best
}

fn tuple_text(tuple: &[Word]) -> String {
    tuple.iter().map(Word::to_string).collect::<Vec<_>>().join(", ")
}

/// Returns `(p, s)` with `tuple[j] = a_{p[j]}^{s[j]}` if the tuple is a
/// signed permutation of the basis.
fn signed_permutation(tuple: &[Word]) -> Option<Vec<(usize, bool)>> {
    let mut seen = vec![false; tuple.len()];
    let mut out = Vec::with_capacity(tuple.len());
    for w in tuple {
        if w.len() != 1 {
            return None;
        }
        let l = w.letters()[0];
        if seen[l.generator()] {
            return None;
        }
        seen[l.generator()] = true;
        out.push((l.generator(), l.is_inverse()));
    }
    Some(out)
}

/// Breadth-first search over length-preserving moves for a tuple that
/// admits a length-reducing move. Returns the path of moves to it, or
/// `Ok(None)` when the whole equal-length component has been explored.
fn search_plateau(start: &[Word], moves: &[NielsenMove]) -> Result<Option<Vec<NielsenMove>>, AutError> {
    let mut parent: HashMap<Vec<Word>, Option<(Vec<Word>, NielsenMove)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(start.to_vec(), None);
    queue.push_back(start.to_vec());
    while let Some(state) = queue.pop_front() {
        if best_reduction(&state, moves).is_some() || signed_permutation(&state).is_some() {
            let mut path = Vec::new();
            let mut cur = state;
            while let Some(Some((prev, mv))) = parent.get(&cur) {
                path.push(*mv);
                cur = prev.clone();
            }
            path.reverse();
            return Ok(Some(path));
        }
        for mv in moves {
            let w = mv.result(&state);
            if w.len() != state[mv.target()].len() {
                continue;
            }
            let mut next = state.clone();
            next[mv.target()] = w;
            if !parent.contains_key(&next) {
                if parent.len() >= PLATEAU_BUDGET {
                    return Err(AutError::ReductionBudgetExhausted(tuple_text(start)));
                }
                parent.insert(next.clone(), Some((state.clone(), *mv)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

pub(super) fn verify_and_invert(phi: &Endomorphism) -> Result<Automorphism, AutError> {
    let rank = phi.rank();
    let det = phi.abelianization().determinant();
    if det != 1 && det != -1 {
        return Err(AutError::DeterminantObstruction(det));
    }
    let moves = multiply_moves(rank);
    let mut tuple = phi.images().to_vec();
    let mut basis: Vec<Word> = (0..rank).map(|i| Word::generator(rank, i)).collect();
    let mut record = Vec::new();
    let perm = loop {
        if tuple.iter().any(Word::is_empty) {
            return Err(AutError::NotSurjective(tuple_text(&tuple)));
        }
        if let Some(perm) = signed_permutation(&tuple) {
            break perm;
        }
        let step = match best_reduction(&tuple, &moves) {
            Some((mv, _)) => vec![mv],
            None => match search_plateau(&tuple, &moves)? {
                Some(path) => path,
                None => return Err(AutError::NotSurjective(tuple_text(&tuple))),
            },
        };
        for mv in step {
            mv.apply(&mut tuple);
            mv.apply(&mut basis);
            record.push(mv);
        }
    };
    // φ ∘ N sends a_j to a_{p(j)}^{±1}, where N is the composite of the moves
    // (its images are `basis`); so φ⁻¹(a_{p(j)}) = N(a_j)^{±1}.
    let mut inverse = vec![Word::identity(rank); rank];
    for (j, &(p, inv)) in perm.iter().enumerate() {
        inverse[p] = if inv { basis[j].invert() } else { basis[j].clone() };
    }
    Automorphism::from_pair(phi.clone(), Endomorphism::new(inverse)?, Certificate::Nielsen(record))
}
