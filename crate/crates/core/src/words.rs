//! Letters, words, the binary encoding, and the desynchronization morphisms.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::pcp::{PcpError, PcpInstance};

/// The five-letter universe. `a` and `b` form the base alphabet of normal
/// systems and binary PCP instances; `c`, `d` and `f` are reserved markers
/// introduced by the reductions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
    C,
    D,
    F,
}

impl Letter {
    pub const ALL: [Letter; 5] = [Letter::A, Letter::B, Letter::C, Letter::D, Letter::F];

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            'd' => Some(Letter::D),
            'f' => Some(Letter::F),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
            Letter::D => 'd',
            Letter::F => 'f',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word over [`Letter`], possibly empty. Concatenation is
/// associative with the empty word as identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(l: Letter) -> Word {
        Word(vec![l])
    }

    /// The word `l^n`.
    pub fn repeated(l: Letter, n: usize) -> Word {
        Word(vec![l; n])
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The letters of `self` in reverse order.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.0.contains(&l)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// Removes `prefix` from the front, or `None` if it is not a prefix.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|rest| Word(rest.to_vec()))
    }

    /// The suffix starting at letter position `n` (clamped to the length).
    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n.min(self.0.len())..].to_vec())
    }
}

impl fmt::Display for Word {
    /// The file serialization: plain contiguous letters, with the empty word
    /// written as the visible token `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordParseError {
    #[error("empty word must be written as `()`")]
    EmptyToken,
    #[error("invalid letter {0:?}, expected one of a, b, c, d, f")]
    InvalidLetter(char),
}

impl FromStr for Word {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Word, WordParseError> {
        if s == "()" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err(WordParseError::EmptyToken);
        }
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            letters.push(Letter::from_char(c).ok_or(WordParseError::InvalidLetter(c))?);
        }
        Ok(Word(letters))
    }
}

/// Attempted to desynchronize a word that already contains the marker `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("word contains the reserved desynchronization marker `d`")]
pub struct MarkerCollision;

/// `ell_d(a_1 a_2 ... a_t) = d a_1 d a_2 ... d a_t`: interleaves `d` before
/// each letter. Rejects input already containing `d`.
pub fn ell_d(v: &Word) -> Result<Word, MarkerCollision> {
    if v.contains(Letter::D) {
        return Err(MarkerCollision);
    }
    let mut out = Vec::with_capacity(2 * v.len());
    for &l in v.letters() {
        out.push(Letter::D);
        out.push(l);
    }
    Ok(Word(out))
}

/// `r_d(a_1 a_2 ... a_t) = a_1 d a_2 d ... a_t d`: interleaves `d` after
/// each letter. Rejects input already containing `d`.
pub fn r_d(v: &Word) -> Result<Word, MarkerCollision> {
    if v.contains(Letter::D) {
        return Err(MarkerCollision);
    }
    let mut out = Vec::with_capacity(2 * v.len());
    for &l in v.letters() {
        out.push(l);
        out.push(Letter::D);
    }
    Ok(Word(out))
}

/// Inverse of [`ell_d`]: `None` if the word is not an `ell_d` image.
pub(crate) fn ell_d_decode(v: &Word) -> Option<Word> {
    if v.len() % 2 != 0 {
        return None;
    }
    let mut out = Vec::with_capacity(v.len() / 2);
    for pair in v.letters().chunks(2) {
        if pair[0] != Letter::D || pair[1] == Letter::D {
            return None;
        }
        out.push(pair[1]);
    }
    Some(Word(out))
}

/// Inverse of [`r_d`]: `None` if the word is not an `r_d` image.
pub(crate) fn r_d_decode(v: &Word) -> Option<Word> {
    if v.len() % 2 != 0 {
        return None;
    }
    let mut out = Vec::with_capacity(v.len() / 2);
    for pair in v.letters().chunks(2) {
        if pair[0] == Letter::D || pair[1] != Letter::D {
            return None;
        }
        out.push(pair[0]);
    }
    Some(Word(out))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexedAlphabetError {
    #[error("indexed alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error("symbol index {index} outside alphabet a_1..a_{size}")]
    SymbolOutOfRange { index: usize, size: usize },
    #[error("alphabet size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

/// A word over an indexed alphabet `a_1..a_k`, the domain of the binary
/// encoding. The alphabet size `k` travels with the word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexedWord {
    alphabet_size: usize,
    symbols: Vec<usize>, // 1-based indices into a_1..a_k
}

impl IndexedWord {
    pub fn new(alphabet_size: usize, symbols: Vec<usize>) -> Result<IndexedWord, IndexedAlphabetError> {
        if alphabet_size == 0 {
            return Err(IndexedAlphabetError::EmptyAlphabet);
        }
        for &s in &symbols {
            if s == 0 || s > alphabet_size {
                return Err(IndexedAlphabetError::SymbolOutOfRange {
                    index: s,
                    size: alphabet_size,
                });
            }
        }
        Ok(IndexedWord {
            alphabet_size,
            symbols,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }
}

/// The binary encoding `a_i -> a^i b`. Injective on words: the images form a
/// prefix code.
pub fn phi_encode(v: &IndexedWord) -> Word {
    let mut out = Vec::new();
    for &i in v.symbols() {
        out.extend(std::iter::repeat(Letter::A).take(i));
        out.push(Letter::B);
    }
    Word(out)
}

/// A PCP instance over an indexed alphabet, prior to binary encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedPcpInstance {
    alphabet_size: usize,
    pairs: Vec<(IndexedWord, IndexedWord)>,
}

impl IndexedPcpInstance {
    pub fn new(
        alphabet_size: usize,
        pairs: Vec<(IndexedWord, IndexedWord)>,
    ) -> Result<IndexedPcpInstance, IndexedAlphabetError> {
        if alphabet_size == 0 {
            return Err(IndexedAlphabetError::EmptyAlphabet);
        }
        for (u, v) in &pairs {
            if u.alphabet_size != alphabet_size {
                return Err(IndexedAlphabetError::SizeMismatch(u.alphabet_size, alphabet_size));
            }
            if v.alphabet_size != alphabet_size {
                return Err(IndexedAlphabetError::SizeMismatch(v.alphabet_size, alphabet_size));
            }
        }
        Ok(IndexedPcpInstance {
            alphabet_size,
            pairs,
        })
    }

    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(IndexedWord, IndexedWord)] {
        &self.pairs
    }

    /// Whether the nonempty index sequence makes the two concatenations of
    /// indexed symbols equal. Same contract as `PcpInstance::verify_solution`.
    pub fn solves(&self, indices: &[usize]) -> Result<bool, PcpError> {
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for &i in indices {
            if i == 0 || i > self.pairs.len() {
                return Err(PcpError::IndexOutOfRange {
                    index: i,
                    size: self.pairs.len(),
                });
            }
            let (u, v) = &self.pairs[i - 1];
            top.extend_from_slice(u.symbols());
            bottom.extend_from_slice(v.symbols());
        }
        Ok(!indices.is_empty() && top == bottom)
    }
}

/// Applies [`phi_encode`] to both words of every pair. An index sequence
/// solves the image exactly when it solves the original.
pub fn phi_encode_instance(inst: &IndexedPcpInstance) -> PcpInstance {
    let pairs = inst
        .pairs()
        .iter()
        .map(|(u, v)| (phi_encode(u), phi_encode(v)))
        .collect();
    PcpInstance::new(pairs).expect("image instance has the same positive size")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(Word::empty().reversed(), Word::empty());
        assert_eq!(w("abb").reversed(), w("bba"));
        assert_eq!(w("aac").reversed(), w("caa"));
    }

    #[test]
    fn ell_d_examples() {
        assert_eq!(ell_d(&Word::empty()).unwrap(), Word::empty());
        assert_eq!(ell_d(&w("abc")).unwrap(), w("dadbdc"));
        assert_eq!(ell_d(&w("faa")).unwrap(), w("dfdada"));
    }

    #[test]
    fn r_d_examples() {
        assert_eq!(r_d(&Word::empty()).unwrap(), Word::empty());
        assert_eq!(r_d(&w("abc")).unwrap(), w("adbdcd"));
        assert_eq!(r_d(&w("fbb")).unwrap(), w("fdbdbd"));
    }

    #[test]
    fn desync_rejects_marker() {
        assert_eq!(ell_d(&w("ad")), Err(MarkerCollision));
        assert_eq!(r_d(&w("da")), Err(MarkerCollision));
    }

    #[test]
    fn desync_decode_inverts() {
        for s in ["", "a", "abc", "faab"] {
            let v = s.parse::<Word>().or_else(|_| "()".parse()).unwrap();
            let v = if s.is_empty() { Word::empty() } else { v };
            assert_eq!(ell_d_decode(&ell_d(&v).unwrap()), Some(v.clone()));
            assert_eq!(r_d_decode(&r_d(&v).unwrap()), Some(v.clone()));
        }
        assert_eq!(ell_d_decode(&w("ad")), None);
        assert_eq!(ell_d_decode(&w("d")), None);
        assert_eq!(ell_d_decode(&w("dd")), None);
        assert_eq!(r_d_decode(&w("da")), None);
        assert_eq!(r_d_decode(&w("dd")), None);
    }

    #[test]
    fn phi_examples() {
        let a1a3 = IndexedWord::new(3, vec![1, 3]).unwrap();
        assert_eq!(phi_encode(&a1a3), w("abaaab"));
        let empty = IndexedWord::new(3, vec![]).unwrap();
        assert_eq!(phi_encode(&empty), Word::empty());
        let a2a2 = IndexedWord::new(2, vec![2, 2]).unwrap();
        assert_eq!(phi_encode(&a2a2), w("aabaab"));
    }

    #[test]
    fn phi_instance_examples() {
        let iw = |k, s: &[usize]| IndexedWord::new(k, s.to_vec()).unwrap();
        let ident = IndexedPcpInstance::new(1, vec![(iw(1, &[1]), iw(1, &[1]))]).unwrap();
        let image = phi_encode_instance(&ident);
        assert_eq!(image.pairs(), &[(w("ab"), w("ab"))]);
        assert!(ident.solves(&[1]).unwrap());
        assert!(image.verify_solution(&[1]).unwrap());

        let inst = IndexedPcpInstance::new(2, vec![(iw(2, &[1, 2]), iw(2, &[1]))]).unwrap();
        let image = phi_encode_instance(&inst);
        assert_eq!(image.pairs(), &[(w("abaab"), w("ab"))]);
    }

    #[test]
    fn word_serialization_round_trip() {
        assert_eq!(Word::empty().to_string(), "()");
        assert_eq!("()".parse::<Word>().unwrap(), Word::empty());
        assert_eq!(w("abba").to_string(), "abba");
        assert!("".parse::<Word>().is_err());
        assert!("axb".parse::<Word>().is_err());
    }

    #[test]
    fn letter_order_is_total() {
        let mut sorted = Letter::ALL;
        sorted.sort();
        assert_eq!(sorted, Letter::ALL);
        assert!(Letter::A < Letter::B && Letter::B < Letter::C);
        assert!(Letter::C < Letter::D && Letter::D < Letter::F);
    }

    #[test]
    fn shift_identity_small() {
        // d r_d(v) = ell_d(v) d, the identity both reductions close over.
        for s in ["", "a", "bc", "fab", "ccc"] {
            let v = if s.is_empty() { Word::empty() } else { w(s) };
            let lhs = Word::single(Letter::D).concat(&r_d(&v).unwrap());
            let rhs = ell_d(&v).unwrap().concat(&Word::single(Letter::D));
            assert_eq!(lhs, rhs);
        }
    }
}
