//! List reduction, the overlap relation, the list parameter and the
//! division algorithm that splits overlapping words until none remain.

use std::collections::HashSet;

use thiserror::Error;

use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OverlapError {
    #[error("word list contains an empty word")]
    EmptyWordInList,
    #[error("word list is not reduced (empty or repeated entries)")]
    NotReduced,
}

/// An ordered list of words.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct WordList(Vec<Word>);

impl WordList {
    pub fn new(items: Vec<Word>) -> Self {
        Self(items)
    }

    pub fn items(&self) -> &[Word] {
        &self.0
    }

    pub fn into_items(self) -> Vec<Word> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Word> {
        self.0.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.0.iter()
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.0.iter().position(|x| x == w)
    }

    /// No empty word and no two graphically equal entries.
    pub fn is_reduced(&self) -> bool {
        let mut seen = HashSet::new();
        self.0.iter().all(|w| !w.is_empty() && seen.insert(w))
    }
}

impl FromIterator<Word> for WordList {
    fn from_iter<I: IntoIterator<Item = Word>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a WordList {
    type Item = &'a Word;
    type IntoIter = std::slice::Iter<'a, Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Drops empty words and later duplicates, keeping first occurrences in
/// order.
pub fn reduce_list(xs: &WordList) -> WordList {
    let mut seen = HashSet::new();
    xs.0.iter()
        .filter(|w| !w.is_empty() && seen.insert(*w))
        .cloned()
        .collect()
}

/// `Σ (|Y_i| - 1)` over the list.
pub fn omega(xs: &WordList) -> Result<usize, OverlapError> {
    xs.0.iter().try_fold(0, |acc, w| {
        if w.is_empty() {
            Err(OverlapError::EmptyWordInList)
        } else {
            Ok(acc + w.len() - 1)
        }
    })
}

/// A witness `x ≗ MN`, `y ≗ NL` with `N` and `ML` non-empty. `n` is `|N|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overlap {
    pub n: usize,
}

impl Overlap {
    /// Splits `(x, y)` into `(M, N, L)`.
    pub fn split(&self, x: &Word, y: &Word) -> (Word, Word, Word) {
        let m = x.subword(0, x.len() - self.n);
        let n = x.subword(x.len() - self.n, x.len());
        let l = y.subword(self.n, y.len());
        (m, n, l)
    }
}

/// All overlaps of the ordered pair `(x, y)`, longest `N` first.
pub fn overlaps<'a>(x: &'a Word, y: &'a Word) -> impl Iterator<Item = Overlap> + 'a {
    let (xs, ys) = (x.letters(), y.letters());
    let max = xs.len().min(ys.len());
    (1..=max).rev().filter_map(move |n| {
        // ML empty means x ≗ y ≗ N
        if n == xs.len() && n == ys.len() {
            return None;
        }
        (xs[xs.len() - n..] == ys[..n]).then_some(Overlap { n })
    })
}

/// The longest overlap of `(x, y)`, if any.
pub fn find_overlap(x: &Word, y: &Word) -> Option<Overlap> {
    overlaps(x, y).next()
}

/// Whether the ordered pair `(x, y)` overlaps.
pub fn overlap(x: &Word, y: &Word) -> bool {
    find_overlap(x, y).is_some()
}

/// Whether any ordered pair of the list, including a word with itself,
/// overlaps.
pub fn has_overlapping_pair(words: &[Word]) -> bool {
    first_overlapping_pair(words).is_some()
}

fn first_overlapping_pair(words: &[Word]) -> Option<(usize, usize, Overlap)> {
    for (i, x) in words.iter().enumerate() {
        for (j, y) in words.iter().enumerate() {
            if let Some(o) = find_overlap(x, y) {
                return Some((i, j, o));
            }
        }
    }
    None
}

/// One splitting step of the division algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaStep {
    pub pair: (usize, usize),
    pub m: Word,
    pub n: Word,
    pub l: Word,
    /// Parameter of the list after the step.
    pub omega_after: usize,
}

/// The output of [`delta_traced`]: the final list and every step taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaRun {
    pub initial_omega: usize,
    pub steps: Vec<DeltaStep>,
    pub result: WordList,
}

/// Runs the division algorithm and records each split.
///
/// Pairs `(i, j)` are scanned lexicographically over list positions,
/// `i == j` included; the first overlapping pair is split into
/// `M, N, L`, both originals are removed, `M, N, L` are appended and the list
/// is reduced again.
pub fn delta_traced(xs: &WordList) -> Result<DeltaRun, OverlapError> {
    if !xs.is_reduced() {
        return Err(OverlapError::NotReduced);
    }
    let initial_omega = omega(xs)?;
    let mut current = xs.0.clone();
    let mut steps = Vec::new();
    while let Some((i, j, o)) = first_overlapping_pair(&current) {
        let (m, n, l) = o.split(&current[i], &current[j]);
        let mut next: Vec<Word> = current
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, w)| w.clone())
            .collect();
        next.extend([m.clone(), n.clone(), l.clone()]);
        current = reduce_list(&WordList(next)).0;
        let omega_after = omega(&WordList(current.clone()))?;
        steps.push(DeltaStep {
            pair: (i, j),
            m,
            n,
            l,
            omega_after,
        });
    }
    Ok(DeltaRun {
        initial_omega,
        steps,
        result: WordList(current),
    })
}

/// The fixpoint of the division algorithm on a reduced list.
pub fn delta(xs: &WordList) -> Result<WordList, OverlapError> {
    delta_traced(xs).map(|run| run.result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn w(s: &str) -> Word {
        Word::parse(s, &Alphabet::new(6).unwrap()).unwrap()
    }

    fn list(items: &[&str]) -> WordList {
        items
            .iter()
            .map(|s| if *s == "1" { Word::empty() } else { w(s) })
            .collect()
    }

    #[test]
    fn reduce_list_examples() {
        assert_eq!(
            reduce_list(&list(&["ab", "1", "ab", "c"])),
            list(&["ab", "c"])
        );
        assert_eq!(reduce_list(&WordList::default()), WordList::default());
        assert_eq!(reduce_list(&list(&["a", "b"])), list(&["a", "b"]));
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(&list(&["ab", "abc"])), Ok(3));
        assert_eq!(omega(&list(&["a"])), Ok(0));
        assert_eq!(omega(&list(&["a", "b", "c"])), Ok(0));
        assert_eq!(
            omega(&list(&["a", "1"])),
            Err(OverlapError::EmptyWordInList)
        );
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&list(&["ab", "bc"])).unwrap(), list(&["a", "b", "c"]));
        assert_eq!(delta(&list(&["abab"])).unwrap(), list(&["ab"]));
        assert_eq!(delta(&list(&["a", "b"])).unwrap(), list(&["a", "b"]));
    }

    #[test]
    fn delta_rejects_unreduced() {
        assert_eq!(delta(&list(&["a", "a"])), Err(OverlapError::NotReduced));
        assert_eq!(delta(&list(&["a", "1"])), Err(OverlapError::NotReduced));
    }

    #[test]
    fn overlap_includes_prefix_and_suffix_containment() {
        assert!(overlap(&w("a"), &w("ab")));
        assert!(overlap(&w("ab"), &w("b")));
        assert!(!overlap(&w("ab"), &w("ab")));
        assert!(!overlap(&w("abc"), &w("b")));
        assert!(overlap(&w("aba"), &w("aba")));
    }

    #[test]
    fn middle_factor_is_not_an_overlap() {
        assert_eq!(
            delta(&list(&["ab", "aabb"])).unwrap(),
            list(&["ab", "aabb"])
        );
    }
}
