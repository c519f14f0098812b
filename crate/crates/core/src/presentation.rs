//! Special monoid presentations `⟨a_1..a_n | A_1 = 1, ..., A_k = 1⟩`, their
//! B-word bases and the derived group presentation.

use std::fmt;

use thiserror::Error;

use crate::overlap::{delta, has_overlapping_pair, reduce_list, WordList};
use crate::words::{Alphabet, Generator, GroupWord, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown generator {found:?}")]
    UnknownGenerator { line: usize, found: char },
    #[error("line {line}: relation of length {len} exceeds ell = {ell}")]
    RelationTooLong { line: usize, len: usize, ell: usize },
}

impl ParseError {
    fn syntax(line: usize, message: impl Into<String>) -> Self {
        Self::Syntax {
            line,
            message: message.into(),
        }
    }
}

/// A `(k, ℓ)`-semigroup: relations `A_i = 1` with `|A_i| <= ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialPresentation {
    alphabet: Alphabet,
    relations: Vec<Word>,
    ell: usize,
}

impl SpecialPresentation {
    /// `ℓ` defaults to the longest relation.
    pub fn new(alphabet: Alphabet, relations: Vec<Word>) -> Self {
        let ell = relations.iter().map(Word::len).max().unwrap_or(0);
        debug_assert!(relations.iter().all(|r| r.is_over(&alphabet)));
        Self {
            alphabet,
            relations,
            ell,
        }
    }

    pub fn with_ell(alphabet: Alphabet, relations: Vec<Word>, ell: usize) -> Option<Self> {
        relations.iter().all(|r| r.len() <= ell).then(|| Self {
            alphabet,
            relations,
            ell,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &[Word] {
        &self.relations
    }

    pub fn k(&self) -> usize {
        self.relations.len()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Parses a word over this presentation's alphabet.
    pub fn word(&self, s: &str) -> Result<Word, WordError> {
        Word::parse(s, &self.alphabet)
    }
}

impl fmt::Display for SpecialPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .alphabet
            .generators()
            .map(|g| Word::new(vec![g]).to_string())
            .collect();
        let rels: Vec<String> = self.relations.iter().map(|r| format!("{r} = 1")).collect();
        write!(f, "⟨{} | {}⟩", gens.join(", "), rels.join(", "))
    }
}

/// Lines of a presentation file after comments and blank lines are dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_generators(line: usize, rest: &str) -> Result<Alphabet, ParseError> {
    let mut n = 0usize;
    for (i, tok) in rest.split_whitespace().enumerate() {
        let expected = (b'a' + i as u8) as char;
        let mut chars = tok.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if c == expected => n += 1,
            _ => {
                return Err(ParseError::syntax(
                    line,
                    format!("generators must be listed as consecutive letters from 'a'; expected {expected:?}, found {tok:?}"),
                ))
            }
        }
    }
    Alphabet::new(n).map_err(|e| ParseError::syntax(line, e.to_string()))
}

struct RawFile<'a> {
    alphabet: Alphabet,
    relations: Vec<(usize, &'a str)>,
    ell: Option<usize>,
}

fn parse_raw(text: &str) -> Result<RawFile<'_>, ParseError> {
    let mut lines = content_lines(text);
    let (first, header) = lines
        .next()
        .ok_or_else(|| ParseError::syntax(1, "missing `generators:` line"))?;
    let alphabet = match header.split_once(':') {
        Some((key, rest)) if key.trim() == "generators" => parse_generators(first, rest)?,
        _ => {
            return Err(ParseError::syntax(
                first,
                "first line must be `generators: ...`",
            ))
        }
    };
    let mut relations = Vec::new();
    let mut ell = None;
    for (line, content) in lines {
        let (key, rest) = content.split_once(':').ok_or_else(|| {
            ParseError::syntax(line, format!("expected `key: value`, found {content:?}"))
        })?;
        let value = rest.trim();
        match key.trim() {
            "relation" => {
                if value.is_empty() || value.contains(char::is_whitespace) {
                    return Err(ParseError::syntax(line, "relation must be a single word"));
                }
                relations.push((line, value));
            }
            "ell" => {
                let v = value.parse::<usize>().map_err(|_| {
                    ParseError::syntax(line, format!("invalid ell value {value:?}"))
                })?;
                ell = Some(v);
            }
            other => return Err(ParseError::syntax(line, format!("unknown key {other:?}"))),
        }
    }
    Ok(RawFile {
        alphabet,
        relations,
        ell,
    })
}

fn word_error(line: usize, e: WordError) -> ParseError {
    match e {
        WordError::UnknownGenerator(found) => ParseError::UnknownGenerator { line, found },
        other => ParseError::syntax(line, other.to_string()),
    }
}

/// Parses the text presentation format:
///
/// ```text
/// generators: a b
/// relation: ab
/// # optional explicit length cap
/// ell: 4
/// ```
pub fn parse_presentation(text: &str) -> Result<SpecialPresentation, ParseError> {
    let raw = parse_raw(text)?;
    let mut relations = Vec::with_capacity(raw.relations.len());
    for &(line, s) in &raw.relations {
        let w = Word::parse(s, &raw.alphabet).map_err(|e| word_error(line, e))?;
        if let Some(ell) = raw.ell {
            if w.len() > ell {
                return Err(ParseError::RelationTooLong {
                    line,
                    len: w.len(),
                    ell,
                });
            }
        }
        relations.push(w);
    }
    Ok(match raw.ell {
        Some(ell) => SpecialPresentation {
            alphabet: raw.alphabet,
            relations,
            ell,
        },
        None => SpecialPresentation::new(raw.alphabet, relations),
    })
}

/// Parses a group relator file: same format, uppercase letters are inverses.
pub fn parse_group_relators(text: &str) -> Result<(Alphabet, Vec<GroupWord>), ParseError> {
    let raw = parse_raw(text)?;
    let relators = raw
        .relations
        .iter()
        .map(|&(line, s)| GroupWord::parse(s, &raw.alphabet).map_err(|e| word_error(line, e)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((raw.alphabet, relators))
}

/// A group presentation on generators `1..=p` with positive relators
/// `M_i = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    generators: usize,
    relations: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relations: Vec<Word>) -> Self {
        debug_assert!(relations.iter().all(|r| r
            .letters()
            .iter()
            .all(|&g| g >= 1 && g as usize <= generators)));
        Self {
            generators,
            relations,
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[Word] {
        &self.relations
    }

    pub fn group_relators(&self) -> Vec<GroupWord> {
        self.relations
            .iter()
            .filter(|r| !r.is_empty())
            .map(Word::to_group_word)
            .collect()
    }

    pub fn has_relations(&self) -> bool {
        self.relations.iter().any(|r| !r.is_empty())
    }
}

/// Formats a word over the derived alphabet as `δ1δ2...`.
pub fn format_indexed(w: &Word, symbol: &str) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.letters().iter().map(|g| format!("{symbol}{g}")).collect()
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generators).map(|g| format!("δ{g}")).collect();
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| format_indexed(r, "δ"))
            .collect();
        write!(f, "⟨{} | {}⟩", gens.join(", "), rels.join(", "))
    }
}

/// A B-word basis together with the factorization of each relation over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BWordList {
    words: WordList,
    factorizations: Vec<Vec<usize>>,
}

impl BWordList {
    /// Builds the list from explicit words, factoring every relation. Returns
    /// `None` unless the words form a reduced non-overlapping list that
    /// factors every relation and each word is used at least once.
    pub fn from_words(words: WordList, relations: &[Word]) -> Option<Self> {
        if !words.is_reduced() || has_overlapping_pair(words.items()) {
            return None;
        }
        let factorizations = relations
            .iter()
            .map(|r| factor_words(r, words.items()))
            .collect::<Option<Vec<_>>>()?;
        let mut used = vec![false; words.len()];
        factorizations
            .iter()
            .flatten()
            .for_each(|&j| used[j] = true);
        used.iter().all(|&u| u).then_some(Self {
            words,
            factorizations,
        })
    }

    pub fn words(&self) -> &WordList {
        &self.words
    }

    /// 0-based indices of the B-words in each relation's factorization.
    pub fn factorizations(&self) -> &[Vec<usize>] {
        &self.factorizations
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// `Δ[T₁(A_1..A_k)]` plus the factorization of each relation.
pub fn b_words(p: &SpecialPresentation) -> BWordList {
    let base = reduce_list(&p.relations.iter().cloned().collect());
    let words = delta(&base).expect("reduced by construction");
    BWordList::from_words(words, &p.relations).expect("division output is a B-word list")
}

fn factor_words(w: &Word, bs: &[Word]) -> Option<Vec<usize>> {
    let letters = w.letters();
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < letters.len() {
        let rest = &letters[pos..];
        let j = bs
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_empty() && rest.starts_with(b.letters()))
            .max_by_key(|(_, b)| b.len())
            .map(|(j, _)| j)?;
        out.push(j);
        pos += bs[j].len();
    }
    Some(out)
}

/// The factorization of `w` as a graphical product of B-words (0-based
/// indices), or `None` when no such product exists.
pub fn factor_over(w: &Word, bs: &BWordList) -> Option<Vec<usize>> {
    factor_words(w, bs.words.items())
}

/// Replaces each B-word in each relation by its own generator.
pub fn derived_group(p: &SpecialPresentation, bs: &BWordList) -> GroupPresentation {
    debug_assert_eq!(p.relations.len(), bs.factorizations.len());
    let relations = bs
        .factorizations
        .iter()
        .map(|f| Word::new(f.iter().map(|&j| j as Generator + 1).collect()))
        .collect();
    GroupPresentation::new(bs.len(), relations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> SpecialPresentation {
        parse_presentation(text).unwrap()
    }

    #[test]
    fn parse_examples() {
        let p = pres("generators: a b\nrelation: ab\n");
        assert_eq!(p.alphabet().size(), 2);
        assert_eq!(p.relations(), &[p.word("ab").unwrap()]);

        let p = pres("generators: a b\nrelation: ab\nrelation: aabb\n");
        assert_eq!((p.k(), p.ell()), (2, 4));

        assert_eq!(
            parse_presentation("generators: a\nrelation: ax\n"),
            Err(ParseError::UnknownGenerator {
                line: 2,
                found: 'x'
            })
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(
            parse_presentation("# c\n\ngenerators: a b\nrelation ab\n"),
            Err(ParseError::Syntax { line: 4, .. })
        ));
        assert_eq!(
            parse_presentation("generators: a b\nell: 2\nrelation: aba\n"),
            Err(ParseError::RelationTooLong {
                line: 3,
                len: 3,
                ell: 2
            })
        );
        assert!(matches!(
            parse_presentation("relation: ab\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_presentation("generators: a c\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn explicit_ell_is_kept() {
        let p = pres("generators: a b\nell: 6\nrelation: ab\n");
        assert_eq!(p.ell(), 6);
    }

    #[test]
    fn group_relators_allow_uppercase() {
        let (a, rs) = parse_group_relators("generators: a b\nrelation: abAB\n").unwrap();
        assert_eq!(a.size(), 2);
        assert_eq!(rs[0].letters(), &[1, 2, -1, -2]);
        assert!(parse_presentation("generators: a b\nrelation: abAB\n").is_err());
    }

    #[test]
    fn b_word_examples() {
        let p = pres("generators: a b\nrelation: ab\n");
        let bs = b_words(&p);
        assert_eq!(bs.words().items(), &[p.word("ab").unwrap()]);
        assert_eq!(bs.factorizations(), &[vec![0]]);
        assert_eq!(
            derived_group(&p, &bs),
            GroupPresentation::new(1, vec![Word::new(vec![1])])
        );

        let p = pres("generators: a b\nrelation: abab\n");
        let bs = b_words(&p);
        assert_eq!(bs.words().items(), &[p.word("ab").unwrap()]);
        assert_eq!(bs.factorizations(), &[vec![0, 0]]);
        assert_eq!(
            derived_group(&p, &bs),
            GroupPresentation::new(1, vec![Word::new(vec![1, 1])])
        );

        let p = pres("generators: a b c\nrelation: ab\nrelation: bc\n");
        let bs = b_words(&p);
        let abc: Vec<Word> = ["a", "b", "c"].iter().map(|s| p.word(s).unwrap()).collect();
        assert_eq!(bs.words().items(), &abc[..]);
        assert_eq!(bs.factorizations(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(
            derived_group(&p, &bs),
            GroupPresentation::new(3, vec![Word::new(vec![1, 2]), Word::new(vec![2, 3])])
        );
    }

    #[test]
    fn factor_over_examples() {
        let p = pres("generators: a b\nrelation: ab\n");
        let bs = b_words(&p);
        assert_eq!(factor_over(&p.word("abab").unwrap(), &bs), Some(vec![0, 0]));
        assert_eq!(factor_over(&Word::empty(), &bs), Some(vec![]));
        assert_eq!(factor_over(&p.word("a").unwrap(), &bs), None);
    }

    #[test]
    fn free_monoid_has_no_b_words() {
        let p = pres("generators: a b\n");
        let bs = b_words(&p);
        assert!(bs.is_empty());
        assert_eq!(derived_group(&p, &bs).generators(), 0);
    }
}
