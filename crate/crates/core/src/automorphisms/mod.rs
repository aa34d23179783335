//! Endomorphisms and certified automorphisms of `F_k`.

mod format;
mod matrix;
mod nielsen;
mod random;

pub use matrix::IntegerMatrix;
pub use nielsen::{NielsenMove, Side};
pub use random::{random_automorphism, random_nielsen_product};

use std::fmt;

use thiserror::Error;

use crate::words::{push_reduced, EpWord, Letter, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("abelianization has determinant {0}, so the map is not invertible")]
    DeterminantObstruction(i128),
    #[error("images do not Nielsen-reduce to a basis (reduced tuple: {0})")]
    NotSurjective(String),
    #[error("Nielsen reduction exceeded its search budget at tuple {0}")]
    ReductionBudgetExhausted(String),
    #[error("inverse failed the round-trip check on generator {0}")]
    RoundTrip(usize),
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
}

/// A homomorphism `F_k → F_k`, given by the images of the generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    rank: usize,
    images: Vec<Word>,
    // image of every letter, indexed by Letter::code
    table: Vec<Vec<Letter>>,
}

impl Endomorphism {
    pub fn new(images: Vec<Word>) -> Result<Self, AutError> {
        let rank = images.len();
        if rank == 0 {
            return Err(WordError::BadRank(0).into());
        }
        if let Some(w) = images.iter().find(|w| w.rank() != rank) {
            return Err(AutError::RankMismatch(rank, w.rank()));
        }
        let mut table = Vec::with_capacity(2 * rank);
        for w in &images {
            table.push(w.letters().to_vec());
            table.push(w.invert().into_letters());
        }
        Ok(Endomorphism { rank, images, table })
    }

    pub fn identity(rank: usize) -> Self {
        Self::new((0..rank).map(|i| Word::generator(rank, i)).collect()).unwrap()
    }

    /// Parses images given as text, e.g. `["cb", "a", "ba"]`.
    pub fn from_strs(images: &[&str]) -> Result<Self, AutError> {
        let rank = images.len();
        let words = images.iter().map(|s| Word::parse_reduced(s, rank)).collect::<Result<Vec<_>, _>>()?;
        Self::new(words)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Word {
        &self.images[generator]
    }

    pub(crate) fn letter_image(&self, l: Letter) -> &[Letter] {
        &self.table[l.code()]
    }

    /// `φ(w)`, reduced.
    pub fn apply(&self, w: &Word) -> Result<Word, AutError> {
        if w.rank() != self.rank {
            return Err(AutError::RankMismatch(self.rank, w.rank()));
        }
        Ok(self.apply_letters(w.letters()))
    }

    pub(crate) fn apply_letters(&self, letters: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(letters.len() * 2);
        for &l in letters {
            for &x in &self.table[l.code()] {
                push_reduced(&mut out, x);
            }
        }
        Word::from_reduced(self.rank, out)
    }

    /// `(self ∘ other)(g) = self(other(g))`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism, AutError> {
        if other.rank != self.rank {
            return Err(AutError::RankMismatch(self.rank, other.rank));
        }
        Endomorphism::new(other.images.iter().map(|w| self.apply_letters(w.letters())).collect())
    }

    /// Non-negative power by repeated squaring.
    pub fn pow(&self, n: u64) -> Endomorphism {
        let mut result = Endomorphism::identity(self.rank);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.compose(&base).unwrap();
            }
            n >>= 1;
            if n > 0 {
                base = base.compose(&base).unwrap();
            }
        }
        result
    }

    /// Row `i` holds the signed letter counts of the image of generator `i`.
    /// With this convention `ab(φ ∘ ψ) = ab(ψ) · ab(φ)`.
    pub fn abelianization(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(&self.images.iter().map(|w| w.abelianize()).collect::<Vec<_>>())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, w)| w.len() == 1 && w.letters()[0] == Letter::new(i, false))
    }

    /// Longest generator image.
    pub fn lipschitz(&self) -> usize {
        self.images.iter().map(Word::len).max().unwrap_or(0)
    }

    /// True if no image contains an inverse letter.
    pub fn is_positive(&self) -> bool {
        self.images.iter().all(|w| w.letters().iter().all(|l| !l.is_inverse()))
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match Letter::new(i, false).to_char() {
                Some(c) => write!(f, "{c}->{w}")?,
                None => write!(f, "x{i}->{w}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endomorphism({self})")
    }
}

/// How an [`Automorphism`]'s inverse was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Elementary moves carrying the image tuple to a signed permutation of
    /// the basis.
    Nielsen(Vec<NielsenMove>),
    /// Built from already-certified automorphisms (composition, powers,
    /// inner automorphisms).
    Composite,
}

/// An automorphism together with its inverse. Both compositions fix every
/// generator; constructors check this.
#[derive(Clone)]
pub struct Automorphism {
    forward: Endomorphism,
    inverse: Endomorphism,
    certificate: Certificate,
    cancellation_bound: usize,
}

impl Automorphism {
    /// Pairs a map with a claimed inverse, checking the round trip.
    pub fn from_pair(forward: Endomorphism, inverse: Endomorphism, certificate: Certificate) -> Result<Self, AutError> {
        if forward.rank != inverse.rank {
            return Err(AutError::RankMismatch(forward.rank, inverse.rank));
        }
        for (a, b) in [(&forward, &inverse), (&inverse, &forward)] {
            let round = a.compose(b)?;
            if let Some(i) = (0..round.rank).find(|&i| round.images[i] != Word::generator(round.rank, i)) {
                return Err(AutError::RoundTrip(i));
            }
        }
        let lip = forward.lipschitz();
        let cancellation_bound = lip * inverse.lipschitz() * (lip / 2);
        Ok(Automorphism { forward, inverse, certificate, cancellation_bound })
    }

    /// Decides invertibility by Nielsen reduction and builds the inverse.
    pub fn verify_and_invert(phi: &Endomorphism) -> Result<Self, AutError> {
        nielsen::verify_and_invert(phi)
    }

    /// Parses images as text and certifies them.
    pub fn from_strs(images: &[&str]) -> Result<Self, AutError> {
        Self::verify_and_invert(&Endomorphism::from_strs(images)?)
    }

    pub fn identity(rank: usize) -> Self {
        let id = Endomorphism::identity(rank);
        Self::from_pair(id.clone(), id, Certificate::Nielsen(Vec::new())).unwrap()
    }

    /// Conjugation `i_w : g ↦ w g w⁻¹`.
    pub fn inner(w: &Word) -> Self {
        let rank = w.rank();
        let conj = |x: &Word| {
            Endomorphism::new((0..rank).map(|i| x.mul(&Word::generator(rank, i)).mul(&x.invert())).collect()).unwrap()
        };
        Self::from_pair(conj(w), conj(&w.invert()), Certificate::Composite).unwrap()
    }

    /// `i_w ∘ α^q`.
    pub fn twist(&self, w: &Word, q: i64) -> Result<Self, AutError> {
        Self::inner(w).compose(&self.power(q))
    }

    pub fn rank(&self) -> usize {
        self.forward.rank
    }

    pub fn forward(&self) -> &Endomorphism {
        &self.forward
    }

    pub fn inverse_map(&self) -> &Endomorphism {
        &self.inverse
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// The inverse as a certified automorphism.
    pub fn inverse(&self) -> Automorphism {
        let lip = self.inverse.lipschitz();
        Automorphism {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            certificate: Certificate::Composite,
            cancellation_bound: lip * self.forward.lipschitz() * (lip / 2),
        }
    }

    /// Upper bound on cancellation in `α(u)·α(v)` whenever `u·v` is reduced,
    /// including infinite `v`.
    pub fn cancellation_bound(&self) -> usize {
        self.cancellation_bound
    }

    pub fn apply(&self, w: &Word) -> Result<Word, AutError> {
        self.forward.apply(w)
    }

    pub(crate) fn apply_letters(&self, letters: &[Letter]) -> Word {
        self.forward.apply_letters(letters)
    }

    /// `∂α(u · c^∞) = α(u) · α(c)^∞`, renormalized.
    pub fn apply_ep(&self, x: &EpWord) -> Result<EpWord, AutError> {
        if x.rank() != self.rank() {
            return Err(AutError::RankMismatch(self.rank(), x.rank()));
        }
        let u = self.forward.apply_letters(x.prefix().letters());
        let c = self.forward.apply_letters(x.period().letters());
        Ok(EpWord::normalize(&u, &c)?)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism, AutError> {
        let forward = self.forward.compose(&other.forward)?;
        let inverse = other.inverse.compose(&self.inverse)?;
        Self::from_pair(forward, inverse, Certificate::Composite)
    }

    /// `α^n` for any integer `n`; negative powers use the certified inverse.
    pub fn power(&self, n: i64) -> Automorphism {
        if n == 0 {
            return Automorphism::identity(self.rank());
        }
        let (f, g) = if n > 0 { (&self.forward, &self.inverse) } else { (&self.inverse, &self.forward) };
        let k = n.unsigned_abs();
        Self::from_pair(f.pow(k), g.pow(k), Certificate::Composite).expect("powers of inverse maps are inverse")
    }

    pub fn abelianization(&self) -> IntegerMatrix {
        self.forward.abelianization()
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.forward == other.forward
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.forward.fmt(f)
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism({}; inverse {})", self.forward, self.inverse)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn intro() -> Automorphism {
        Automorphism::from_strs(&["cb", "a", "ba"]).unwrap()
    }

    fn w(s: &str, rank: usize) -> Word {
        Word::parse(s, rank).unwrap()
    }

    #[test]
    fn apply_examples() {
        let a = intro();
        assert_eq!(a.apply(&w("a", 3)).unwrap().to_string(), "cb");
        assert_eq!(a.apply(&w("A", 3)).unwrap().to_string(), "BC");
        let g = w("abCaB", 3);
        assert_eq!(Automorphism::identity(3).apply(&g).unwrap(), g);
        assert!(a.apply(&w("a", 2)).is_err());
    }

    #[test]
    fn apply_is_a_homomorphism() {
        let a = intro();
        let (u, v) = (w("abC", 3), w("cAb", 3));
        assert_eq!(a.apply(&u.mul(&v)).unwrap(), a.apply(&u).unwrap().mul(&a.apply(&v).unwrap()));
    }

    #[test]
    fn apply_ep_examples() {
        let alpha = Automorphism::from_strs(&["a", "aba"]).unwrap();
        let beta = Automorphism::from_strs(&["A", "AB"]).unwrap();
        let a_inf = EpWord::parse("(a)^inf", 2).unwrap();
        assert_eq!(alpha.apply_ep(&a_inf).unwrap(), a_inf);
        assert_eq!(beta.apply_ep(&a_inf).unwrap(), EpWord::parse("(A)^inf", 2).unwrap());
        let b_a_inf = EpWord::parse("b(a)^inf", 2).unwrap();
        assert_eq!(alpha.apply_ep(&b_a_inf).unwrap(), EpWord::parse("ab(a)^inf", 2).unwrap());
    }

    #[test]
    fn compose_and_power_examples() {
        let alpha = intro();
        assert!(alpha.power(0).forward().is_identity());
        let beta = Automorphism::from_strs(&["A", "AB"]).unwrap();
        let sq = beta.compose(&beta).unwrap();
        assert_eq!(sq.forward(), &Endomorphism::from_strs(&["a", "aba"]).unwrap());
        assert_eq!(alpha.power(2).apply(&w("a", 3)).unwrap().to_string(), "baa");
        assert_eq!(alpha.power(-1).forward(), alpha.inverse_map());
        assert_eq!(alpha.power(3).compose(&alpha.power(-5)).unwrap(), alpha.power(-2));
    }

    #[test]
    fn verify_and_invert_examples() {
        let inv = intro();
        assert_eq!(inv.inverse_map(), &Endomorphism::from_strs(&["b", "cB", "abC"]).unwrap());
        let bad = Endomorphism::from_strs(&["ab", "ba"]).unwrap();
        assert_eq!(Automorphism::verify_and_invert(&bad).unwrap_err(), AutError::DeterminantObstruction(0));
        let id = Automorphism::verify_and_invert(&Endomorphism::identity(3)).unwrap();
        assert!(id.inverse_map().is_identity());
    }

    #[test]
    fn inner_and_twist() {
        let id = Automorphism::inner(&Word::identity(2));
        assert!(id.forward().is_identity());
        let ia = Automorphism::inner(&w("a", 2));
        assert_eq!(ia.apply(&w("b", 2)).unwrap().to_string(), "abA");
        let alpha = Automorphism::from_strs(&["ab", "a"]).unwrap();
        let t = alpha.twist(&w("bA", 2), 1).unwrap();
        for g in ["a", "b", "aB"] {
            let g = w(g, 2);
            let expect = w("bA", 2).mul(&alpha.apply(&g).unwrap()).mul(&w("aB", 2));
            assert_eq!(t.apply(&g).unwrap(), expect);
        }
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(Endomorphism::identity(3).abelianization(), IntegerMatrix::identity(3));
        let f = Endomorphism::from_strs(&["ab", "a"]).unwrap();
        assert_eq!(f.abelianization().rows(), vec![vec![1, 1], vec![1, 0]]);
        let g = Endomorphism::from_strs(&["bAb", "aab"]).unwrap();
        assert_eq!(f.compose(&g).unwrap().abelianization(), g.abelianization().mul(&f.abelianization()));
    }

    #[test]
    fn cancellation_bound_covers_observed_cancellation() {
        let alpha = intro();
        let bound = alpha.cancellation_bound();
        let mut worst = 0;
        let words = crate::words::all_reduced_words(3, 4);
        for u in &words {
            for v in &words {
                if let (Some(x), Some(y)) = (u.last(), v.first()) {
                    if x == y.inverse() {
                        continue;
                    }
                }
                let (au, av) = (alpha.apply(u).unwrap(), alpha.apply(v).unwrap());
                let joined = au.mul(&av);
                worst = worst.max((au.len() + av.len() - joined.len()) / 2);
            }
        }
        assert!(worst <= bound, "observed {worst} > bound {bound}");
    }
}
