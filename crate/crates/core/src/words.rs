//! Positive words, signed (group) words, free reduction and symmetrized
//! relator sets.
//!
//! Generators are numbered from 1. A [`Word`] holds positive letters only; a
//! [`GroupWord`] stores each letter as a non-zero `i32`, negative for the
//! inverse letter.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Generator identity, always `>= 1`.
pub type Generator = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet size must be between 1 and {max}, got {got}")]
    AlphabetSize { got: usize, max: usize },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(char),
    #[error("relator reduces to the empty word")]
    EmptyRelator,
}

/// A finite alphabet `a_1..a_n`, printed as `a..z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    n: usize,
}

impl Alphabet {
    pub const MAX: usize = 26;

    pub fn new(n: usize) -> Result<Self, WordError> {
        if n == 0 || n > Self::MAX {
            return Err(WordError::AlphabetSize {
                got: n,
                max: Self::MAX,
            });
        }
        Ok(Self { n })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, g: Generator) -> bool {
        g >= 1 && (g as usize) <= self.n
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        1..=self.n as Generator
    }

    /// Maps `a..z` to `1..26`, rejecting letters outside the alphabet.
    pub fn generator_of(&self, c: char) -> Result<Generator, WordError> {
        if c.is_ascii_lowercase() {
            let g = (c as u8 - b'a') as Generator + 1;
            if self.contains(g) {
                return Ok(g);
            }
        }
        Err(WordError::UnknownGenerator(c))
    }
}

fn letter_char(g: Generator) -> Option<char> {
    (1..=26)
        .contains(&g)
        .then(|| (b'a' + (g - 1) as u8) as char)
}

/// A word over positive generators. Structural equality is graphical
/// equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(letters: Vec<Generator>) -> Self {
        debug_assert!(letters.iter().all(|&g| g >= 1));
        Self(letters)
    }

    /// Parses `a..z` letters; `-` (or an empty string) is the empty word.
    pub fn parse(s: &str, alphabet: &Alphabet) -> Result<Self, WordError> {
        if s == "-" {
            return Ok(Self::empty());
        }
        s.chars()
            .map(|c| alphabet.generator_of(c))
            .collect::<Result<_, _>>()
            .map(Self)
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Generator> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn is_over(&self, alphabet: &Alphabet) -> bool {
        self.0.iter().all(|&g| alphabet.contains(g))
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Whether the last `k` letters equal the first `k` for some
    /// `0 < k < len`.
    pub fn has_proper_border(&self) -> bool {
        let w = &self.0;
        (1..w.len()).any(|k| w[w.len() - k..] == w[..k])
    }

    pub fn to_group_word(&self) -> GroupWord {
        GroupWord(self.0.iter().map(|&g| g as i32).collect())
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word::new(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &g in &self.0 {
            match letter_char(g) {
                Some(c) => write!(f, "{c}")?,
                None => write!(f, "[{g}]")?,
            }
        }
        Ok(())
    }
}

/// A word over generators and their inverses.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord(Vec<i32>);

impl GroupWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&x| x != 0));
        Self(letters)
    }

    /// Lowercase letters are generators, uppercase letters their inverses.
    pub fn parse(s: &str, alphabet: &Alphabet) -> Result<Self, WordError> {
        if s == "-" {
            return Ok(Self::empty());
        }
        s.chars()
            .map(|c| {
                if c.is_ascii_uppercase() {
                    alphabet
                        .generator_of(c.to_ascii_lowercase())
                        .map(|g| -(g as i32))
                        .map_err(|_| WordError::UnknownGenerator(c))
                } else {
                    alphabet.generator_of(c).map(|g| g as i32)
                }
            })
            .collect::<Result<_, _>>()
            .map(Self)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_generator(&self) -> Generator {
        self.0.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != -p[1])
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&x), Some(&y)) => self.0.len() == 1 || x != -y,
                _ => true,
            }
    }

    /// The cyclic permutation starting at position `k`.
    pub fn rotate(&self, k: usize) -> GroupWord {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        GroupWord(v)
    }

    /// Smallest `p >= 1` with `rotate(p) == self`; equals `len` unless the
    /// word is a proper power.
    pub fn rotation_period(&self) -> usize {
        let n = self.0.len();
        (1..=n)
            .find(|&p| n % p == 0 && self.0[p..] == self.0[..n - p])
            .unwrap_or(n)
    }

    /// Interprets a word without inverse letters as a positive word.
    pub fn to_positive(&self) -> Option<Word> {
        self.0
            .iter()
            .map(|&x| (x > 0).then_some(x as Generator))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }
}

impl From<&Word> for GroupWord {
    fn from(w: &Word) -> Self {
        w.to_group_word()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &x in &self.0 {
            match letter_char(x.unsigned_abs()) {
                Some(c) if x > 0 => write!(f, "{c}")?,
                Some(c) => write!(f, "{}", c.to_ascii_uppercase())?,
                None if x > 0 => write!(f, "[{x}]")?,
                None => write!(f, "[{}^-1]", -x)?,
            }
        }
        Ok(())
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(w: &GroupWord) -> GroupWord {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in &w.0 {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    GroupWord(out)
}

/// Letters reversed with every sign flipped.
pub fn inverse(w: &GroupWord) -> GroupWord {
    GroupWord(w.0.iter().rev().map(|&x| -x).collect())
}

/// Freely reduces, then strips matching inverse letters from both ends.
pub fn cyclic_reduce(w: &GroupWord) -> GroupWord {
    let r = free_reduce(w);
    let v = &r.0;
    let (mut i, mut j) = (0, v.len());
    while j - i >= 2 && v[i] == -v[j - 1] {
        i += 1;
        j -= 1;
    }
    GroupWord(v[i..j].to_vec())
}

/// A finite relator set closed under inverses and cyclic permutations, all
/// members cyclically reduced and non-empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetrizedSet {
    relators: Vec<GroupWord>,
    max_len: usize,
}

impl SymmetrizedSet {
    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupWord> {
        self.relators.iter()
    }

    pub fn len(&self) -> usize {
        self.relators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relators.is_empty()
    }

    /// Length of the longest relator (`d`).
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn min_len(&self) -> usize {
        self.relators.iter().map(GroupWord::len).min().unwrap_or(0)
    }

    pub fn contains(&self, w: &GroupWord) -> bool {
        self.relators.binary_search(w).is_ok()
    }

    pub fn max_generator(&self) -> Generator {
        self.relators
            .iter()
            .map(GroupWord::max_generator)
            .max()
            .unwrap_or(0)
    }
}

/// Cyclically reduces each relator, then closes the set under inverses and
/// cyclic permutations.
pub fn symmetrize<'a, I>(relators: I) -> Result<SymmetrizedSet, WordError>
where
    I: IntoIterator<Item = &'a GroupWord>,
{
    let mut set = BTreeSet::new();
    for r in relators {
        let r = cyclic_reduce(r);
        if r.is_empty() {
            return Err(WordError::EmptyRelator);
        }
        let inv = inverse(&r);
        for k in 0..r.len() {
            set.insert(r.rotate(k));
            set.insert(inv.rotate(k));
        }
    }
    let relators: Vec<GroupWord> = set.into_iter().collect();
    let max_len = relators.iter().map(GroupWord::len).max().unwrap_or(0);
    Ok(SymmetrizedSet { relators, max_len })
}
