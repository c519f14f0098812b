//! Tuples (a presentation together with its C-words), the c-word families
//! generated from them, the tuple index, and the loop that rewrites a tuple
//! until its families are length-preserving, disjoint and overlap-free.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::oracle::{select_oracle, Budget, OracleHandle, Verdict};
use crate::overlap::{delta, omega, overlap, reduce_list, WordList};
use crate::presentation::{
    b_words, derived_group, factor_over, format_indexed, BWordList, GroupPresentation,
    SpecialPresentation,
};
use crate::words::{Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CWordError {
    #[error("oracle inconclusive: {0}")]
    OracleInconclusive(String),
    #[error("the given words are not C-words of the presentation")]
    InvalidCWords,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

/// Orders words by length, then lexicographically.
pub fn shortlex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// `(α, β)`: total relation length and the parameter of the C-word list,
/// compared lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TupleIndex {
    pub alpha: usize,
    pub beta: usize,
}

impl fmt::Display for TupleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

/// A presentation with a C-word list and the group derived from it.
#[derive(Debug, Clone)]
pub struct Tuple {
    presentation: SpecialPresentation,
    cwords: BWordList,
    gamma: GroupPresentation,
    oracle: Arc<OracleHandle>,
}

/// Builds the tuple whose C-words are the B-words of `p`.
pub fn make_tuple(p: &SpecialPresentation, budget: Budget) -> Result<Tuple, CWordError> {
    Tuple::build(p.clone(), b_words(p), budget)
}

impl Tuple {
    /// Builds a tuple from an explicit C-word list.
    pub fn from_cwords(
        p: SpecialPresentation,
        words: WordList,
        budget: Budget,
    ) -> Result<Self, CWordError> {
        let bs = BWordList::from_words(words, p.relations()).ok_or(CWordError::InvalidCWords)?;
        Self::build(p, bs, budget)
    }

    fn build(
        p: SpecialPresentation,
        cwords: BWordList,
        budget: Budget,
    ) -> Result<Self, CWordError> {
        let gamma = derived_group(&p, &cwords);
        if let Some(g) = uncertified_generator(&gamma) {
            return Err(CWordError::OracleInconclusive(format!(
                "cannot certify that δ{g} is invertible"
            )));
        }
        let oracle = Arc::new(select_oracle(&gamma, budget));
        Ok(Self {
            presentation: p,
            cwords,
            gamma,
            oracle,
        })
    }

    pub fn presentation(&self) -> &SpecialPresentation {
        &self.presentation
    }

    pub fn cwords(&self) -> &WordList {
        self.cwords.words()
    }

    pub fn cword_list(&self) -> &BWordList {
        &self.cwords
    }

    pub fn gamma(&self) -> &GroupPresentation {
        &self.gamma
    }

    pub fn oracle(&self) -> &OracleHandle {
        &self.oracle
    }

    pub fn budget(&self) -> Budget {
        *self.oracle.budget()
    }

    pub fn index(&self) -> TupleIndex {
        tuple_index(self)
    }

    /// The product of the C-words named by a word over `1..=s`.
    pub fn expand(&self, idx: &Word) -> Word {
        let cs = self.cwords.words().items();
        Word::new(
            idx.letters()
                .iter()
                .flat_map(|&j| cs[j as usize - 1].letters().iter().copied())
                .collect(),
        )
    }
}

pub fn tuple_index(t: &Tuple) -> TupleIndex {
    TupleIndex {
        alpha: t.presentation.relations().iter().map(Word::len).sum(),
        beta: omega(t.cwords.words()).expect("C-words are non-empty"),
    }
}

/// The first generator of `g` not shown to be two-sided invertible.
///
/// Every relator is invertible; overlapping invertible words split into
/// invertible pieces; an invertible letter can be stripped from either end
/// of an invertible word; the first letter of an invertible word has a right
/// inverse and the last letter a left inverse.
pub fn uncertified_generator(g: &GroupPresentation) -> Option<Generator> {
    let mut units: BTreeSet<Word> = g
        .relations()
        .iter()
        .filter(|r| !r.is_empty())
        .cloned()
        .collect();
    let mut letters: BTreeSet<Generator> = BTreeSet::new();
    loop {
        let before = (units.len(), letters.len());
        let list = reduce_list(&units.iter().cloned().collect());
        units.extend(delta(&list).expect("reduced list").into_items());
        let mut stripped = Vec::new();
        for w in &units {
            let l = w.letters();
            let start = l.iter().take_while(|x| letters.contains(x)).count();
            let end = l.len() - l.iter().rev().take_while(|x| letters.contains(x)).count();
            if start < end && (start > 0 || end < l.len()) {
                stripped.push(w.subword(start, end));
            }
        }
        units.extend(stripped);
        let firsts: HashSet<Generator> = units.iter().map(|w| w.letters()[0]).collect();
        let lasts: HashSet<Generator> =
            units.iter().map(|w| *w.letters().last().unwrap()).collect();
        letters.extend(
            units
                .iter()
                .filter(|w| w.len() == 1)
                .map(|w| w.letters()[0]),
        );
        letters.extend(firsts.intersection(&lasts));
        if (units.len(), letters.len()) == before {
            break;
        }
    }
    (1..=g.generators() as Generator).find(|x| !letters.contains(x))
}

/// For each C-word `C_i`, the family of c-words generated from it, sorted by
/// [`shortlex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CWordSets {
    families: Vec<Vec<Word>>,
}

impl CWordSets {
    pub fn families(&self) -> &[Vec<Word>] {
        &self.families
    }

    pub fn family(&self, i: usize) -> &[Word] {
        &self.families[i]
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    /// Every c-word with the index of its family.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Word)> {
        self.families
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.iter().map(move |w| (i, w)))
    }

    pub fn family_of(&self, w: &Word) -> Option<usize> {
        self.families
            .iter()
            .position(|f| f.binary_search_by(|x| shortlex(x, w)).is_ok())
    }
}

/// Index words over the C-words whose products have at most a given length.
struct Products {
    lengths: Vec<usize>,
    cache: HashMap<usize, Vec<Word>>,
}

impl Products {
    fn new(words: &[Word]) -> Self {
        Self {
            lengths: words.iter().map(Word::len).collect(),
            cache: HashMap::new(),
        }
    }

    fn up_to(&mut self, budget: usize) -> &[Word] {
        let lengths = &self.lengths;
        self.cache.entry(budget).or_insert_with(|| {
            let mut out = vec![Vec::new()];
            let mut frontier = vec![(Vec::<Generator>::new(), 0usize)];
            while let Some((seq, used)) = frontier.pop() {
                for (j, &l) in lengths.iter().enumerate() {
                    if used + l <= budget {
                        let mut next = seq.clone();
                        next.push(j as Generator + 1);
                        out.push(next.clone());
                        frontier.push((next, used + l));
                    }
                }
            }
            out.into_iter().map(Word::new).collect()
        })
    }
}

fn inconclusive(t: &Tuple, u: &Word, v: &Word) -> CWordError {
    CWordError::OracleInconclusive(format!(
        "cannot decide {} = {} in {}",
        format_indexed(u, "δ"),
        format_indexed(v, "δ"),
        t.gamma
    ))
}

/// All words one generating step away from `u`.
fn generating_step(t: &Tuple, u: &Word, products: &mut Products) -> Result<Vec<Word>, CWordError> {
    let l = u.letters();
    let mut out = Vec::new();
    for start in 1..l.len() {
        for end in start..l.len() {
            let middle = u.subword(start, end);
            let Some(f) = factor_over(&middle, &t.cwords) else {
                continue;
            };
            let from = Word::new(f.iter().map(|&j| j as Generator + 1).collect());
            for to in products.up_to(middle.len()).to_vec() {
                if to == from {
                    continue;
                }
                let verdict = t
                    .oracle
                    .decide_equal_words(&from, &to)
                    .map_err(|e| CWordError::InvariantViolation(e.to_string()))?;
                match verdict {
                    Verdict::Yes => {
                        let mut w = l[..start].to_vec();
                        w.extend_from_slice(t.expand(&to).letters());
                        w.extend_from_slice(&l[end..]);
                        out.push(Word::new(w));
                    }
                    Verdict::No => {}
                    Verdict::Unknown => return Err(inconclusive(t, &from, &to)),
                }
            }
        }
    }
    Ok(out)
}

/// Closes each C-word under the generating operation.
pub fn generate_c_words(t: &Tuple) -> Result<CWordSets, CWordError> {
    let cs = t.cwords.words().items();
    let mut products = Products::new(cs);
    let mut families = Vec::with_capacity(cs.len());
    for c in cs {
        let mut seen: HashSet<Word> = HashSet::from([c.clone()]);
        let mut queue = vec![c.clone()];
        while let Some(u) = queue.pop() {
            for v in generating_step(t, &u, &mut products)? {
                if seen.insert(v.clone()) {
                    queue.push(v);
                }
            }
        }
        let mut family: Vec<Word> = seen.into_iter().collect();
        family.sort_by(shortlex);
        families.push(family);
    }
    Ok(CWordSets { families })
}

/// I: members keep the length of their C-word. II: families are disjoint.
/// III: no two c-words overlap, a word with itself included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Properties {
    pub length_preserving: bool,
    pub disjoint: bool,
    pub overlap_free: bool,
}

impl Properties {
    pub fn all(&self) -> bool {
        self.length_preserving && self.disjoint && self.overlap_free
    }
}

pub fn check_properties(t: &Tuple, cs: &CWordSets) -> Properties {
    let cws = t.cwords.words().items();
    let length_preserving = cs
        .families
        .iter()
        .zip(cws)
        .all(|(f, c)| f.iter().all(|w| w.len() == c.len()));
    let mut owners: HashMap<&Word, usize> = HashMap::new();
    let mut disjoint = true;
    for (i, w) in cs.iter() {
        if *owners.entry(w).or_insert(i) != i {
            disjoint = false;
        }
    }
    let all: Vec<&Word> = cs.iter().map(|(_, w)| w).collect();
    let overlap_free = all.iter().all(|x| all.iter().all(|y| !overlap(x, y)));
    Properties {
        length_preserving,
        disjoint,
        overlap_free,
    }
}

/// One rewriting step of [`distinguish`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveKind {
    /// A member shorter than its C-word replaced it.
    Shorten { family: usize, word: Word },
    /// Two families shared a member; `dropped` was replaced by the C-word of
    /// `kept` and removed from the list.
    Merge { dropped: usize, kept: usize },
    /// The C-word of `with` overlapped `word` from `family`, which replaced
    /// that family's C-word.
    Overlap {
        family: usize,
        word: Word,
        with: usize,
    },
    /// `word` from `family` overlapped itself and replaced that family's
    /// C-word.
    SelfOverlap { family: usize, word: Word },
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveKind::Shorten { family, word } => {
                write!(f, "replace C{} by shorter c-word {word}", family + 1)
            }
            MoveKind::Merge { dropped, kept } => {
                write!(f, "merge family {} into family {}", dropped + 1, kept + 1)
            }
            MoveKind::Overlap { family, word, with } => {
                write!(
                    f,
                    "replace C{} by {word}, which overlaps C{}",
                    family + 1,
                    with + 1
                )
            }
            MoveKind::SelfOverlap { family, word } => {
                write!(f, "replace C{} by self-overlapping {word}", family + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub kind: MoveKind,
    pub before: TupleIndex,
    pub after: TupleIndex,
}

/// A tuple with all three properties, its families, and how it was reached.
#[derive(Debug, Clone)]
pub struct Distinguished {
    pub tuple: Tuple,
    pub families: CWordSets,
    pub moves: Vec<Move>,
}

/// The relations of the derived presentation with `word` in place of the
/// C-word of `family`, reduced as a list.
fn substituted_relations(t: &Tuple, family: usize, word: &Word) -> Vec<Word> {
    let cs = t.cwords.words().items();
    let rels: WordList = t
        .gamma
        .relations()
        .iter()
        .map(|r| {
            Word::new(
                r.letters()
                    .iter()
                    .flat_map(|&j| {
                        let j = j as usize - 1;
                        if j == family {
                            word.letters()
                        } else {
                            cs[j].letters()
                        }
                        .iter()
                        .copied()
                    })
                    .collect(),
            )
        })
        .collect();
    reduce_list(&rels).into_items()
}

fn derived_presentation(t: &Tuple, family: usize, word: &Word) -> SpecialPresentation {
    let rels = substituted_relations(t, family, word);
    SpecialPresentation::with_ell(
        t.presentation.alphabet().clone(),
        rels,
        t.presentation.ell(),
    )
    .expect("substituted words are no longer than the C-words they replace")
}

fn shorten_move(t: &Tuple, cs: &CWordSets) -> Result<(MoveKind, Tuple), CWordError> {
    let cws = t.cwords.words().items();
    let (family, word) = cs
        .families
        .iter()
        .enumerate()
        .find_map(|(i, f)| {
            f.iter()
                .find(|w| w.len() < cws[i].len())
                .map(|w| (i, w.clone()))
        })
        .expect("property I fails");
    let p = derived_presentation(t, family, &word);
    let next = make_tuple(&p, t.budget())?;
    Ok((MoveKind::Shorten { family, word }, next))
}

fn merge_move(t: &Tuple, cs: &CWordSets) -> Result<(MoveKind, Tuple), CWordError> {
    let n = cs.families.len();
    let (dropped, kept) = (0..n)
        .flat_map(|i| (0..n).map(move |m| (i, m)))
        .find(|&(i, m)| {
            i != m
                && cs.families[i]
                    .iter()
                    .any(|w| cs.families[m].binary_search_by(|x| shortlex(x, w)).is_ok())
        })
        .expect("property II fails");
    if cs.families[dropped] != cs.families[kept] {
        return Err(CWordError::InvariantViolation(format!(
            "families {} and {} share a word but differ",
            dropped + 1,
            kept + 1
        )));
    }
    let cws = t.cwords.words().items();
    let p = derived_presentation(t, dropped, &cws[kept]);
    let list: WordList = cws
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != dropped)
        .map(|(_, w)| w.clone())
        .collect();
    let next = Tuple::from_cwords(p, list, t.budget()).map_err(|e| match e {
        CWordError::InvalidCWords => {
            CWordError::InvariantViolation("merged list is not a C-word list".into())
        }
        other => other,
    })?;
    Ok((MoveKind::Merge { dropped, kept }, next))
}

fn overlap_move(t: &Tuple, cs: &CWordSets) -> Result<(MoveKind, Tuple), CWordError> {
    let cws = t.cwords.words().items();
    let cross = cws.iter().enumerate().find_map(|(p, cp)| {
        cs.iter()
            .find(|&(m, w)| m != p && (overlap(cp, w) || overlap(w, cp)))
            .map(|(m, w)| MoveKind::Overlap {
                family: m,
                word: w.clone(),
                with: p,
            })
    });
    let kind = match cross {
        Some(k) => k,
        None => cs
            .iter()
            .find(|(_, w)| overlap(w, w))
            .map(|(m, w)| MoveKind::SelfOverlap {
                family: m,
                word: w.clone(),
            })
            .ok_or_else(|| {
                CWordError::InvariantViolation(
                    "property III fails but no overlapping C-word or c-word found".into(),
                )
            })?,
    };
    let (family, word) = match &kind {
        MoveKind::Overlap { family, word, .. } | MoveKind::SelfOverlap { family, word } => {
            (*family, word)
        }
        _ => unreachable!(),
    };
    let p = derived_presentation(t, family, word);
    let replaced: WordList = cws
        .iter()
        .enumerate()
        .map(|(j, c)| if j == family { word.clone() } else { c.clone() })
        .collect();
    let list = delta(&reduce_list(&replaced)).expect("reduced list");
    let next = Tuple::from_cwords(p, list, t.budget()).map_err(|e| match e {
        CWordError::InvalidCWords => {
            CWordError::InvariantViolation("split list is not a C-word list".into())
        }
        other => other,
    })?;
    Ok((kind, next))
}

/// Rewrites `t` into an equivalent tuple with properties I, II and III,
/// checking that every move strictly lowers the index.
pub fn distinguish(t: &Tuple) -> Result<Distinguished, CWordError> {
    let mut current = t.clone();
    let mut moves = Vec::new();
    loop {
        let families = generate_c_words(&current)?;
        let props = check_properties(&current, &families);
        if props.all() {
            return Ok(Distinguished {
                tuple: current,
                families,
                moves,
            });
        }
        let (kind, next) = if !props.length_preserving {
            shorten_move(&current, &families)?
        } else if !props.disjoint {
            merge_move(&current, &families)?
        } else {
            overlap_move(&current, &families)?
        };
        let (before, after) = (current.index(), next.index());
        if after >= before {
            return Err(CWordError::InvariantViolation(format!(
                "move {kind} did not lower the index: {before} -> {after}"
            )));
        }
        moves.push(Move {
            kind,
            before,
            after,
        });
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn tuple(text: &str) -> Tuple {
        make_tuple(&parse_presentation(text).unwrap(), Budget::default()).unwrap()
    }

    fn words(t: &Tuple, ws: &[&str]) -> Vec<Word> {
        ws.iter()
            .map(|s| t.presentation().word(s).unwrap())
            .collect()
    }

    #[test]
    fn make_tuple_examples() {
        let t = tuple("generators: a b\nrelation: ab\n");
        assert_eq!(t.cwords().items(), &words(&t, &["ab"])[..]);
        assert_eq!(
            t.gamma(),
            &GroupPresentation::new(1, vec![Word::new(vec![1])])
        );

        let t = tuple("generators: a b\nrelation: abab\n");
        assert_eq!(
            t.gamma(),
            &GroupPresentation::new(1, vec![Word::new(vec![1, 1])])
        );

        let t = tuple("generators: a b\n");
        assert!(t.cwords().is_empty());
        assert_eq!(t.gamma().generators(), 0);
    }

    #[test]
    fn c_word_examples() {
        let t = tuple("generators: a b\nrelation: ab\n");
        let cs = generate_c_words(&t).unwrap();
        assert_eq!(cs.families(), &[words(&t, &["ab"])]);

        let t = tuple("generators: a b\nrelation: ab\nrelation: aabb\n");
        let cs = generate_c_words(&t).unwrap();
        assert!(cs.family(1).contains(&words(&t, &["ab"])[0]));
        let props = check_properties(&t, &cs);
        assert!(!props.length_preserving);
    }

    #[test]
    fn index_examples() {
        assert_eq!(
            tuple("generators: a b\nrelation: ab\n").index(),
            TupleIndex { alpha: 2, beta: 1 }
        );
        assert_eq!(
            tuple("generators: a b c\nrelation: ab\nrelation: bc\n").index(),
            TupleIndex { alpha: 4, beta: 0 }
        );
        assert_eq!(
            tuple("generators: a\n").index(),
            TupleIndex { alpha: 0, beta: 0 }
        );
        assert!(TupleIndex { alpha: 2, beta: 9 } < TupleIndex { alpha: 3, beta: 0 });
    }

    #[test]
    fn distinguish_examples() {
        let t = tuple("generators: a b\nrelation: ab\n");
        let d = distinguish(&t).unwrap();
        assert!(d.moves.is_empty());

        let t = tuple("generators: a b\nrelation: ab\nrelation: aabb\n");
        assert_eq!(t.index(), TupleIndex { alpha: 6, beta: 4 });
        let d = distinguish(&t).unwrap();
        assert_eq!(d.tuple.index(), TupleIndex { alpha: 2, beta: 1 });
        assert!(check_properties(&d.tuple, &d.families).all());
        assert!(d.moves.windows(2).all(|m| m[1].before == m[0].after));
    }

    #[test]
    fn units_are_certified() {
        let g = GroupPresentation::new(3, vec![Word::new(vec![1, 2]), Word::new(vec![2, 3])]);
        assert_eq!(uncertified_generator(&g), None);
        let g = GroupPresentation::new(2, vec![Word::new(vec![1])]);
        assert_eq!(uncertified_generator(&g), Some(2));
        let g = GroupPresentation::new(2, vec![Word::new(vec![1, 2])]);
        assert_eq!(uncertified_generator(&g), Some(1));
    }
}
