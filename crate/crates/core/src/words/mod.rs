//! Freely reduced words in a free group `F_k` and right-infinite words on its
//! boundary.
//!
//! Text syntax: generator `i` is the `i`-th lowercase letter, its inverse the
//! matching uppercase letter, and the empty word is spelled `1`. Text I/O is
//! therefore limited to rank 26; the in-memory form has no such bound.

mod ep;
mod oracle;

pub use ep::EpWord;
pub use oracle::BoundaryPrefixOracle;

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("generator index {index} out of range for rank {rank}")]
    OutOfRank { index: usize, rank: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank must be at least 1, got {0}")]
    BadRank(usize),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("word {0:?} is not freely reduced")]
    NotReduced(String),
    #[error("period of a boundary word must be nontrivial")]
    EmptyPeriod,
}

/// A generator or its inverse, packed as `2 * generator + inverse`.
///
/// The derived order is `a < A < b < B < ...`, which is the letter order used
/// for shortlex comparisons and canonical rotations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Dense index in `0..2k`, usable as an array offset.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_code(code: usize) -> Self {
        Letter(code as u32)
    }

    pub fn to_char(self) -> Option<char> {
        let g = self.generator();
        if g >= 26 {
            return None;
        }
        let base = if self.is_inverse() { b'A' } else { b'a' };
        Some((base + g as u8) as char)
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a'..='z' => Some(Letter::new(c as usize - 'a' as usize, false)),
            'A'..='Z' => Some(Letter::new(c as usize - 'A' as usize, true)),
            _ => None,
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_char() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "x{}{}", self.generator(), if self.is_inverse() { "^-1" } else { "" }),
        }
    }
}

/// Appends `letter` to a reduced letter stack, cancelling if needed.
#[inline]
pub(crate) fn push_reduced(stack: &mut Vec<Letter>, letter: Letter) {
    if stack.last() == Some(&letter.inverse()) {
        stack.pop();
    } else {
        stack.push(letter);
    }
}

/// A freely reduced word of `F_k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, index: usize) -> Self {
        assert!(index < rank, "generator {index} out of rank {rank}");
        Word { rank, letters: vec![Letter::new(index, false)] }
    }

    /// Freely reduces `raw`. Fails if a letter is out of rank.
    pub fn reduce(raw: &[Letter], rank: usize) -> Result<Self, WordError> {
        if rank == 0 {
            return Err(WordError::BadRank(rank));
        }
        let mut letters = Vec::with_capacity(raw.len());
        for &l in raw {
            if l.generator() >= rank {
                return Err(WordError::OutOfRank { index: l.generator(), rank });
            }
            push_reduced(&mut letters, l);
        }
        Ok(Word { rank, letters })
    }

    /// Builds a word from letters already known to be reduced and in rank.
    pub(crate) fn from_reduced(rank: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != w[1].inverse()));
        debug_assert!(letters.iter().all(|l| l.generator() < rank));
        Word { rank, letters }
    }

    /// Accepts `raw` only if it is already reduced.
    pub fn from_letters(rank: usize, raw: Vec<Letter>) -> Result<Self, WordError> {
        let w = Word::reduce(&raw, rank)?;
        if w.letters.len() != raw.len() {
            return Err(WordError::NotReduced(format!("{raw:?}")));
        }
        Ok(w)
    }

    /// Parses `abA`-style text, reducing it. `1` is the empty word.
    pub fn parse(text: &str, rank: usize) -> Result<Self, WordError> {
        let raw = parse_letters(text)?;
        Word::reduce(&raw, rank)
    }

    /// Parses text and rejects input that is not already freely reduced.
    pub fn parse_reduced(text: &str, rank: usize) -> Result<Self, WordError> {
        let raw = parse_letters(text)?;
        let w = Word::reduce(&raw, rank)?;
        if w.len() != raw.len() {
            return Err(WordError::NotReduced(text.trim().to_string()));
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    fn check_rank(&self, other: &Word) -> Result<(), WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    /// Group law: the reduced form of `self · other`.
    pub fn multiply(&self, other: &Word) -> Result<Word, WordError> {
        self.check_rank(other)?;
        Ok(self.mul(other))
    }

    /// `multiply` for callers that already know the ranks agree.
    pub fn mul(&self, other: &Word) -> Word {
        debug_assert_eq!(self.rank, other.rank);
        let mut cancel = 0;
        let (a, b) = (&self.letters, &other.letters);
        while cancel < a.len() && cancel < b.len() && a[a.len() - 1 - cancel] == b[cancel].inverse() {
            cancel += 1;
        }
        let mut letters = Vec::with_capacity(a.len() + b.len() - 2 * cancel);
        letters.extend_from_slice(&a[..a.len() - cancel]);
        letters.extend_from_slice(&b[cancel..]);
        Word { rank: self.rank, letters }
    }

    pub fn invert(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// The first `n` letters (or the whole word if shorter).
    pub fn prefix(&self, n: usize) -> Word {
        Word { rank: self.rank, letters: self.letters[..n.min(self.len())].to_vec() }
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word { rank: self.rank, letters: self.letters[start.min(self.len())..].to_vec() }
    }

    /// Writes `self = s · c · s⁻¹` with `c` cyclically reduced and `|s|` minimal.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let l = &self.letters;
        let mut k = 0;
        while 2 * k + 1 < l.len() && l[k] == l[l.len() - 1 - k].inverse() {
            k += 1;
        }
        (
            Word { rank: self.rank, letters: l[..k].to_vec() },
            Word { rank: self.rank, letters: l[k..l.len() - k].to_vec() },
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() == 1 || f != l.inverse(),
            _ => true,
        }
    }

    /// Canonical key of the conjugacy class: the least rotation of the
    /// cyclically reduced core.
    pub fn conjugacy_key(&self) -> Word {
        let (_, core) = self.cyclic_reduce();
        Word { rank: self.rank, letters: least_rotation(&core.letters) }
    }

    /// Rewrites letters into a larger rank (used when embedding `F_k` in `F_m`).
    pub fn with_rank(&self, rank: usize) -> Result<Word, WordError> {
        Word::reduce(&self.letters, rank)
    }

    /// Signed letter counts per generator.
    pub fn abelianize(&self) -> Vec<i64> {
        let mut counts = vec![0; self.rank];
        for l in &self.letters {
            counts[l.generator()] += l.sign();
        }
        counts
    }
}

/// Shortlex order: shorter words first, then letterwise.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub(crate) fn write_letters(f: &mut impl fmt::Write, letters: &[Letter]) -> fmt::Result {
    if letters.is_empty() {
        return f.write_char('1');
    }
    for l in letters {
        match l.to_char() {
            Some(c) => f.write_char(c)?,
            None => write!(f, "[{l:?}]")?,
        }
    }
    Ok(())
}

fn parse_letters(text: &str) -> Result<Vec<Letter>, WordError> {
    let t = text.trim();
    if t == "1" || t.is_empty() || t == "ε" {
        return Ok(Vec::new());
    }
    t.chars()
        .map(|c| {
            Letter::from_char(c).ok_or_else(|| WordError::Parse {
                input: t.to_string(),
                reason: format!("unexpected character {c:?}"),
            })
        })
        .collect()
}

/// Every reduced word of length at most `max_len`, in shortlex order.
pub fn all_reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::identity(rank)];
    let mut frontier = vec![Word::identity(rank)];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * (2 * rank - 1).max(1));
        for u in &frontier {
            for code in 0..2 * rank {
                let l = Letter::from_code(code);
                if u.last() == Some(l.inverse()) {
                    continue;
                }
                let mut letters = Vec::with_capacity(u.len() + 1);
                letters.extend_from_slice(u.letters());
                letters.push(l);
                next.push(Word { rank, letters });
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Least rotation of a cyclic sequence (Booth's algorithm would do; sizes
/// here are small enough for the quadratic scan).
pub(crate) fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best = 0;
    for start in 1..n {
        let better = (0..n)
            .map(|i| letters[(start + i) % n].cmp(&letters[(best + i) % n]))
            .find(|o| *o != Ordering::Equal)
            == Some(Ordering::Less);
        if better {
            best = start;
        }
    }
    (0..n).map(|i| letters[(best + i) % n]).collect()
}

/// Length of the longest common prefix of two points of `F̄_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum GromovProduct {
    Finite(usize),
    Infinite,
}

impl GromovProduct {
    pub fn at_least(self, n: usize) -> bool {
        match self {
            GromovProduct::Finite(m) => m >= n,
            GromovProduct::Infinite => true,
        }
    }
}

/// Anything that can be read letter by letter: finite words, eventually
/// periodic infinite words, certified prefixes.
pub trait PrefixSource {
    fn rank(&self) -> usize;
    /// Letter at position `i`, or `None` past the end of a finite word.
    fn letter_at(&self, i: usize) -> Option<Letter>;
    /// `Some(n)` for finite words of length `n`.
    fn finite_len(&self) -> Option<usize>;
    /// For eventually periodic words, `(preperiod, period)` lengths.
    fn periodic_shape(&self) -> Option<(usize, usize)> {
        None
    }
}

impl PrefixSource for Word {
    fn rank(&self) -> usize {
        self.rank
    }
    fn letter_at(&self, i: usize) -> Option<Letter> {
        self.letters.get(i).copied()
    }
    fn finite_len(&self) -> Option<usize> {
        Some(self.len())
    }
}

/// Gromov product `(X|Y)`: the length of the maximal common initial subword.
///
/// Two eventually periodic words that agree on `max(|u|,|u'|) + |c| + |c'|`
/// letters agree everywhere (Fine–Wilf), which bounds the scan.
pub fn gromov_product<A: PrefixSource + ?Sized, B: PrefixSource + ?Sized>(x: &A, y: &B) -> GromovProduct {
    let limit = match (x.finite_len(), y.finite_len()) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (Some(a), None) | (None, Some(a)) => Some(a),
        (None, None) => match (x.periodic_shape(), y.periodic_shape()) {
            (Some((u1, c1)), Some((u2, c2))) => Some(u1.max(u2) + c1 + c2),
            _ => None,
        },
    };
    let mut i = 0;
    loop {
        if let Some(lim) = limit {
            if i >= lim {
                return if x.finite_len().is_none() && y.finite_len().is_none() {
                    GromovProduct::Infinite
                } else {
                    GromovProduct::Finite(i)
                };
            }
        }
        match (x.letter_at(i), y.letter_at(i)) {
            (Some(a), Some(b)) if a == b => i += 1,
            _ => return GromovProduct::Finite(i),
        }
    }
}
