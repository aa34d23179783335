//! Line-based automorphism files:
//!
//! ```text
//! # comments and blank lines are ignored
//! rank 3
//! a -> cb
//! b -> a
//! c -> ba
//! ```

use super::{AutError, Endomorphism};
use crate::words::{Letter, Word, WordError};

fn format_err(line: usize, reason: impl Into<String>) -> AutError {
    AutError::Format { line, reason: reason.into() }
}

impl Endomorphism {
    /// Parses the automorphism file format. Images must be freely reduced,
    /// in rank, and every generator must appear exactly once.
    pub fn from_text(text: &str) -> Result<Endomorphism, AutError> {
        let mut rank: Option<usize> = None;
        let mut images: Vec<Option<Word>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("rank") {
                if rank.is_some() {
                    return Err(format_err(line_no, "duplicate rank header"));
                }
                let k: usize = rest.trim().parse().map_err(|_| format_err(line_no, "rank must be an integer"))?;
                if k == 0 || k > 26 {
                    return Err(format_err(line_no, format!("rank {k} outside 1..=26")));
                }
                rank = Some(k);
                images = vec![None; k];
                continue;
            }
            let k = rank.ok_or_else(|| format_err(line_no, "missing `rank k` header"))?;
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| format_err(line_no, "expected `<generator> -> <word>`"))?;
            let lhs = lhs.trim();
            let mut chars = lhs.chars();
            let gen = match (chars.next().and_then(Letter::from_char), chars.next()) {
                (Some(l), None) if !l.is_inverse() => l.generator(),
                _ => return Err(format_err(line_no, format!("bad generator name {lhs:?}"))),
            };
            if gen >= k {
                return Err(WordError::OutOfRank { index: gen, rank: k }.into());
            }
            if images[gen].is_some() {
                return Err(format_err(line_no, format!("generator {lhs} given twice")));
            }
            let w = Word::parse_reduced(rhs, k).map_err(|e| format_err(line_no, e.to_string()))?;
            images[gen] = Some(w);
        }
        let k = rank.ok_or_else(|| format_err(0, "missing `rank k` header"))?;
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| format_err(0, format!("no image for generator {:?}", Letter::new(i, false))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        debug_assert_eq!(images.len(), k);
        Endomorphism::new(images)
    }

    /// Inverse of [`Endomorphism::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = format!("rank {}\n", self.rank());
        for (i, w) in self.images().iter().enumerate() {
            out.push_str(&format!("{:?} -> {}\n", Letter::new(i, false), w));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_intro_file() {
        let text = "# intro map\nrank 3\na -> cb\nb -> a\n\nc -> ba  # last\n";
        let f = Endomorphism::from_text(text).unwrap();
        assert_eq!(f, Endomorphism::from_strs(&["cb", "a", "ba"]).unwrap());
        assert_eq!(Endomorphism::from_text(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn rejects_bad_files() {
        let cases = [
            "a -> b\n",
            "rank 2\na -> aA\nb -> b\n",
            "rank 2\na -> c\nb -> b\n",
            "rank 2\na -> b\n",
            "rank 2\na -> b\na -> a\nb -> a\n",
            "rank 2\nc -> b\na -> a\nb -> b\n",
            "rank 2\nA -> b\nb -> a\n",
            "rank x\n",
        ];
        for text in cases {
            assert!(Endomorphism::from_text(text).is_err(), "{text:?}");
        }
    }
}
