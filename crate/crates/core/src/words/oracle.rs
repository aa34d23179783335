use std::fmt;

use serde::Serialize;

use super::{Letter, PrefixSource, Word, WordError};

/// A boundary point known only through a certified prefix.
///
/// Points produced by orbit iteration that do not match an eventually
/// periodic pattern are reported this way: `prefix(n)` is defined for
/// `n <= stabilization_depth()` and consistent across depths.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BoundaryPrefixOracle {
    #[serde(rename = "prefix")]
    certified: Word,
}

impl BoundaryPrefixOracle {
    pub fn from_prefix(certified: Word) -> Self {
        BoundaryPrefixOracle { certified }
    }

    /// Samples `prefix_fn` at `depth` and checks that every shorter sample
    /// at the given `checkpoints` is a prefix of it.
    pub fn certify(
        rank: usize,
        depth: usize,
        checkpoints: &[usize],
        prefix_fn: impl Fn(usize) -> Word,
    ) -> Result<Self, WordError> {
        let full = prefix_fn(depth);
        if full.rank() != rank || full.len() != depth {
            return Err(WordError::Parse {
                input: full.to_string(),
                reason: format!("prefix function returned a word of length {} at depth {depth}", full.len()),
            });
        }
        for &m in checkpoints.iter().filter(|&&m| m <= depth) {
            let shorter = prefix_fn(m);
            if shorter.letters() != &full.letters()[..m] {
                return Err(WordError::Parse {
                    input: shorter.to_string(),
                    reason: format!("prefix at depth {m} is not a prefix of the depth-{depth} sample"),
                });
            }
        }
        Ok(BoundaryPrefixOracle { certified: full })
    }

    pub fn rank(&self) -> usize {
        self.certified.rank()
    }

    pub fn stabilization_depth(&self) -> usize {
        self.certified.len()
    }

    pub fn prefix(&self, n: usize) -> Option<Word> {
        (n <= self.certified.len()).then(|| self.certified.prefix(n))
    }

    pub fn certified(&self) -> &Word {
        &self.certified
    }
}

impl PrefixSource for BoundaryPrefixOracle {
    fn rank(&self) -> usize {
        self.rank()
    }
    fn letter_at(&self, i: usize) -> Option<Letter> {
        self.certified.letter_at(i)
    }
    // Past the certified depth nothing is known; treat as finite for
    // comparison purposes.
    fn finite_len(&self) -> Option<usize> {
        Some(self.certified.len())
    }
}

impl fmt::Display for BoundaryPrefixOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}...", self.certified)
    }
}

impl fmt::Debug for BoundaryPrefixOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Oracle({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::EpWord;

    #[test]
    fn certify_accepts_consistent_prefixes() {
        let x = EpWord::parse("b(aB)^inf", 2).unwrap();
        let o = BoundaryPrefixOracle::certify(2, 20, &[0, 3, 7, 19], |n| x.prefix_word(n)).unwrap();
        assert_eq!(o.stabilization_depth(), 20);
        assert_eq!(o.prefix(5).unwrap().to_string(), "baBaB");
        assert!(o.prefix(21).is_none());
    }

    #[test]
    fn certify_rejects_inconsistent_prefixes() {
        let r = BoundaryPrefixOracle::certify(2, 4, &[2], |n| {
            if n == 4 {
                Word::parse("abab", 2).unwrap()
            } else {
                Word::parse("bb", 2).unwrap().prefix(n)
            }
        });
        assert!(r.is_err());
    }
}
