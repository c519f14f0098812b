//! Word problem, divisibility, invertibility and the maximal subgroup for the
//! monoid of a distinguished tuple.
//!
//! Everything rests on the closure `𝔗(w)`: the words reachable from `w` by
//! deleting relation words and by replacing an integral subword with an
//! integral word that is no longer and has the same image in the derived
//! group. Two words are equal in the monoid exactly when their closures meet.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::cwords::{shortlex, CWordSets, Distinguished, Tuple};
use crate::oracle::Verdict;
use crate::presentation::{format_indexed, GroupPresentation};
use crate::words::{Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecisionError {
    #[error("oracle inconclusive: {0}")]
    OracleInconclusive(String),
    #[error("{0} is not a final word")]
    NotFinal(Word),
    #[error("{0} is not invertible")]
    NotInvertible(Word),
}

/// A graphical product of c-words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegralWord {
    word: Word,
    // (family, member) pairs, 0-based
    factors: Vec<(usize, usize)>,
}

impl IntegralWord {
    pub fn word(&self) -> &Word {
        &self.word
    }

    /// `(family, member)` of each factor, both 0-based; members are indexed
    /// in the family's shortlex order.
    pub fn factors(&self) -> &[(usize, usize)] {
        &self.factors
    }
}

/// The words of a closure `𝔗(w)`, in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TSet {
    seed: Word,
    members: Vec<Word>,
}

impl TSet {
    pub fn seed(&self) -> &Word {
        &self.seed
    }

    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.binary_search_by(|x| shortlex(x, w)).is_ok()
    }

    /// The shortlex-least member; it has minimal length, so it is final.
    pub fn shortest(&self) -> &Word {
        &self.members[0]
    }

    pub fn meets(&self, other: &TSet) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.members.iter().any(|w| large.contains(w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Part {
    Stable(Generator),
    Integral(IntegralWord),
}

/// A final word split into stable letters and maximal runs of c-words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub parts: Vec<Part>,
}

impl Representation {
    pub fn stable_letters(&self) -> Word {
        Word::new(
            self.parts
                .iter()
                .filter_map(|p| match p {
                    Part::Stable(x) => Some(*x),
                    Part::Integral(_) => None,
                })
                .collect(),
        )
    }

    pub fn integral_words(&self) -> Vec<&IntegralWord> {
        self.parts
            .iter()
            .filter_map(|p| match p {
                Part::Integral(w) => Some(w),
                Part::Stable(_) => None,
            })
            .collect()
    }

    pub fn word(&self) -> Word {
        Word::new(
            self.parts
                .iter()
                .flat_map(|p| match p {
                    Part::Stable(x) => vec![*x],
                    Part::Integral(w) => w.word.letters().to_vec(),
                })
                .collect(),
        )
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| match p {
                Part::Stable(x) => Word::new(vec![*x]).to_string(),
                Part::Integral(w) => format!("[{}]", w.word),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Decision procedures over a distinguished tuple. Closures and the
/// replacement candidates found through the oracle are cached.
#[derive(Debug)]
pub struct Decider<'a> {
    tuple: &'a Tuple,
    families: &'a CWordSets,
    lookup: HashMap<Word, (usize, usize)>,
    lengths: Vec<usize>,
    letters_integral: bool,
    prefixes: HashSet<Word>,
    suffixes: HashSet<Word>,
    equivalents: Mutex<HashMap<(Word, usize), Arc<Vec<Word>>>>,
    replacements: Mutex<HashMap<(Word, usize), Arc<Vec<Word>>>>,
    closures: Mutex<HashMap<Word, Arc<TSet>>>,
}

impl<'a> Decider<'a> {
    pub fn new(d: &'a Distinguished) -> Self {
        let families = &d.families;
        let mut lookup = HashMap::new();
        let mut prefixes = HashSet::new();
        let mut suffixes = HashSet::new();
        for (i, f) in families.families().iter().enumerate() {
            for (j, w) in f.iter().enumerate() {
                lookup.insert(w.clone(), (i, j));
                for k in 1..=w.len() {
                    prefixes.insert(w.subword(0, k));
                    suffixes.insert(w.subword(w.len() - k, w.len()));
                }
            }
        }
        let lengths = d.tuple.cwords().items().iter().map(Word::len).collect();
        let letters_integral = d
            .tuple
            .presentation()
            .alphabet()
            .generators()
            .all(|g| lookup.contains_key(&Word::new(vec![g])));
        Self {
            tuple: &d.tuple,
            families,
            lookup,
            lengths,
            letters_integral,
            prefixes,
            suffixes,
            equivalents: Mutex::new(HashMap::new()),
            replacements: Mutex::new(HashMap::new()),
            closures: Mutex::new(HashMap::new()),
        }
    }

    pub fn tuple(&self) -> &Tuple {
        self.tuple
    }

    pub fn families(&self) -> &CWordSets {
        self.families
    }

    /// The factorization of `w` into c-words, if there is one. No c-word is a
    /// prefix of another, so at most one c-word starts each factor.
    pub fn integral_decompose(&self, w: &Word) -> Option<IntegralWord> {
        let letters = w.letters();
        let mut factors = Vec::new();
        let mut pos = 0;
        while pos < letters.len() {
            let found = self
                .lengths
                .iter()
                .filter(|&&n| pos + n <= letters.len())
                .find_map(|&n| {
                    self.lookup
                        .get(&Word::new(letters[pos..pos + n].to_vec()))
                        .map(|&f| (f, n))
                });
            let (f, n) = found?;
            factors.push(f);
            pos += n;
        }
        Some(IntegralWord {
            word: w.clone(),
            factors,
        })
    }

    /// `f`: each factor from family `i` becomes `δ_{i+1}`.
    pub fn f_map(&self, a: &IntegralWord) -> Word {
        Word::new(a.factors.iter().map(|&(i, _)| i as Generator + 1).collect())
    }

    /// Index words over the families whose c-word products have length at
    /// most `budget`, equal in the derived group to `fa`.
    fn equivalents(&self, fa: &Word, budget: usize) -> Result<Arc<Vec<Word>>, DecisionError> {
        let key = (fa.clone(), budget);
        if let Some(v) = self.equivalents.lock().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let mut candidates = Vec::new();
        let mut stack = vec![(Vec::<Generator>::new(), 0usize)];
        while let Some((idx, used)) = stack.pop() {
            for (i, &n) in self.lengths.iter().enumerate() {
                if used + n <= budget {
                    let mut next = idx.clone();
                    next.push(i as Generator + 1);
                    stack.push((next, used + n));
                }
            }
            candidates.push(Word::new(idx));
        }
        let oracle = self.tuple.oracle();
        let mut out = Vec::new();
        for v in candidates {
            let verdict = oracle
                .decide_equal_words(fa, &v)
                .map_err(|e| DecisionError::OracleInconclusive(e.to_string()))?;
            match verdict {
                Verdict::Yes => out.push(v),
                Verdict::No => {}
                Verdict::Unknown => {
                    return Err(DecisionError::OracleInconclusive(format!(
                        "cannot decide {} = {} in the derived group",
                        format_indexed(fa, "δ"),
                        format_indexed(&v, "δ")
                    )))
                }
            }
        }
        let out = Arc::new(out);
        let mut memo = self.equivalents.lock().expect("memo lock");
        for v in out.iter() {
            memo.insert((v.clone(), budget), out.clone());
        }
        memo.insert(key, out.clone());
        Ok(out)
    }

    /// Every integral word with index word `v`.
    fn expansions(&self, v: &Word) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        for &i in v.letters() {
            let family = self.families.family(i as usize - 1);
            out = out
                .iter()
                .flat_map(|prefix: &Vec<Generator>| {
                    family.iter().map(move |w| {
                        let mut next = prefix.clone();
                        next.extend_from_slice(w.letters());
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(Word::new).collect()
    }

    /// Every integral word of length at most `budget` whose `f`-image equals
    /// `fa` in the derived group.
    fn replacements(&self, fa: &Word, budget: usize) -> Result<Arc<Vec<Word>>, DecisionError> {
        let key = (fa.clone(), budget);
        if let Some(v) = self.replacements.lock().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let out: Vec<Word> = self
            .equivalents(fa, budget)?
            .iter()
            .flat_map(|v| self.expansions(v))
            .collect();
        let out = Arc::new(out);
        self.replacements
            .lock()
            .expect("memo lock")
            .insert(key, out.clone());
        Ok(out)
    }

    fn successors(&self, u: &Word) -> Result<Vec<Word>, DecisionError> {
        let l = u.letters();
        let splice = |s: usize, e: usize, b: &[Generator]| {
            let mut v = Vec::with_capacity(l.len() - (e - s) + b.len());
            v.extend_from_slice(&l[..s]);
            v.extend_from_slice(b);
            v.extend_from_slice(&l[e..]);
            Word::new(v)
        };
        let mut out = Vec::new();
        for r in self.tuple.presentation().relations() {
            let n = r.len();
            if n == 0 || n > l.len() {
                continue;
            }
            for s in 0..=l.len() - n {
                if &l[s..s + n] == r.letters() {
                    out.push(splice(s, s + n, &[]));
                }
            }
        }
        for s in 0..l.len() {
            for e in s + 1..=l.len() {
                if !self.prefixes.contains(&Word::new(l[s..s + 1].to_vec())) {
                    break;
                }
                let Some(a) = self.integral_decompose(&u.subword(s, e)) else {
                    continue;
                };
                let fa = self.f_map(&a);
                for b in self.replacements(&fa, e - s)?.iter() {
                    if b.letters() != &l[s..e] {
                        out.push(splice(s, e, b.letters()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `𝔗(w)`.
    pub fn t_set(&self, w: &Word) -> Result<Arc<TSet>, DecisionError> {
        if let Some(t) = self.closures.lock().expect("memo lock").get(w) {
            return Ok(t.clone());
        }
        let mut seen: HashSet<Word> = HashSet::from([w.clone()]);
        if self.letters_integral {
            // every word is integral: one replacement of the whole word
            // reaches everything
            let a = self.integral_decompose(w).expect("letters are c-words");
            seen.extend(self.replacements(&self.f_map(&a), w.len())?.iter().cloned());
        } else {
            let mut queue = VecDeque::from([w.clone()]);
            while let Some(u) = queue.pop_front() {
                for v in self.successors(&u)? {
                    if seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
        }
        let mut members: Vec<Word> = seen.into_iter().collect();
        members.sort_by(shortlex);
        let t = Arc::new(TSet {
            seed: w.clone(),
            members,
        });
        self.closures
            .lock()
            .expect("memo lock")
            .insert(w.clone(), t.clone());
        Ok(t)
    }

    /// Whether no member of `𝔗(w)` is shorter than `w`.
    pub fn is_final(&self, w: &Word) -> Result<bool, DecisionError> {
        Ok(self.t_set(w)?.shortest().len() == w.len())
    }

    /// Splits a final word into stable letters and maximal runs of c-word
    /// occurrences not contained in a longer occurrence.
    pub fn representation(&self, w: &Word) -> Result<Representation, DecisionError> {
        if !self.is_final(w)? {
            return Err(DecisionError::NotFinal(w.clone()));
        }
        let l = w.letters();
        let mut occurrences = Vec::new();
        for s in 0..l.len() {
            for &n in &self.lengths {
                if s + n <= l.len() {
                    if let Some(&f) = self.lookup.get(&w.subword(s, s + n)) {
                        occurrences.push((s, s + n, f));
                    }
                }
            }
        }
        occurrences.sort();
        occurrences.dedup();
        let maximal: Vec<_> = occurrences
            .iter()
            .filter(|&&(s, e, _)| {
                !occurrences
                    .iter()
                    .any(|&(s2, e2, _)| s2 <= s && e <= e2 && (s2, e2) != (s, e))
            })
            .copied()
            .collect();
        debug_assert!(
            maximal.windows(2).all(|p| p[0].1 <= p[1].0),
            "c-words do not overlap"
        );
        let mut parts = Vec::new();
        let mut pos = 0;
        let mut it = maximal.iter().peekable();
        while pos < l.len() {
            match it.peek() {
                Some(&&(s, _, _)) if s == pos => {
                    let start = pos;
                    let mut factors = Vec::new();
                    while let Some(&&(s, e, f)) = it.peek() {
                        if s != pos {
                            break;
                        }
                        factors.push(f);
                        pos = e;
                        it.next();
                    }
                    parts.push(Part::Integral(IntegralWord {
                        word: w.subword(start, pos),
                        factors,
                    }));
                }
                _ => {
                    parts.push(Part::Stable(l[pos]));
                    pos += 1;
                }
            }
        }
        Ok(Representation { parts })
    }

    /// Whether `x = y` in the monoid.
    pub fn words_equal(&self, x: &Word, y: &Word) -> Result<bool, DecisionError> {
        if x == y {
            return Ok(true);
        }
        Ok(self.t_set(x)?.meets(&*self.t_set(y)?))
    }

    /// Whether `x = yz` for some word `z`.
    pub fn divides_left(&self, x: &Word, y: &Word) -> Result<bool, DecisionError> {
        let mut core = self.t_set(y)?.shortest().clone();
        while let Some(k) = (1..=core.len()).rev().find(|&k| {
            self.prefixes
                .contains(&core.subword(core.len() - k, core.len()))
        }) {
            core = core.subword(0, core.len() - k);
        }
        if core.is_empty() {
            return Ok(true);
        }
        let target = self.t_set(&core)?;
        for p in 0..=x.len() {
            if target.meets(&*self.t_set(&x.subword(0, p))?) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Whether `x = zy` for some word `z`.
    pub fn divides_right(&self, x: &Word, y: &Word) -> Result<bool, DecisionError> {
        let mut core = self.t_set(y)?.shortest().clone();
        while let Some(k) = (1..=core.len())
            .rev()
            .find(|&k| self.suffixes.contains(&core.subword(0, k)))
        {
            core = core.subword(k, core.len());
        }
        if core.is_empty() {
            return Ok(true);
        }
        let target = self.t_set(&core)?;
        for p in (0..=x.len()).rev() {
            if target.meets(&*self.t_set(&x.subword(p, x.len()))?) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The shortlex-least integral member of `𝔗(x)`.
    fn integral_member(&self, x: &Word) -> Result<Option<IntegralWord>, DecisionError> {
        Ok(self
            .t_set(x)?
            .members()
            .iter()
            .find_map(|w| self.integral_decompose(w)))
    }

    /// Whether `x` has a two-sided inverse.
    pub fn is_invertible(&self, x: &Word) -> Result<bool, DecisionError> {
        Ok(self.integral_member(x)?.is_some())
    }

    /// The derived group, isomorphic to the group of units.
    pub fn maximal_subgroup(&self) -> &GroupPresentation {
        self.tuple.gamma()
    }

    /// The image of an invertible word in the derived group.
    pub fn mu(&self, x: &Word) -> Result<Word, DecisionError> {
        let z = self
            .integral_member(x)?
            .ok_or_else(|| DecisionError::NotInvertible(x.clone()))?;
        Ok(self.f_map(&z))
    }
}
