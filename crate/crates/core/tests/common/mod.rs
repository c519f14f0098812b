//! Independent oracles shared by the integration tests. None of them call
//! into the decision procedures under test.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::Rng;
use special_monoid::words::Generator;
use special_monoid::{Alphabet, GroupWord, SpecialPresentation, Word};

pub fn word(s: &str) -> Word {
    Word::parse(s, &Alphabet::new(26).unwrap()).unwrap()
}

pub fn group_word(s: &str) -> GroupWord {
    GroupWord::parse(s, &Alphabet::new(26).unwrap()).unwrap()
}

pub fn presentation(n: usize, rels: &[&str]) -> SpecialPresentation {
    SpecialPresentation::new(
        Alphabet::new(n).unwrap(),
        rels.iter().map(|r| word(r)).collect(),
    )
}

/// All words over `n` letters of length at most `max`, shortest first.
pub fn all_words(n: usize, max: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for g in 1..=n as Generator {
                let mut v: Vec<Generator> = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.into_iter().map(Word::new).collect()
}

pub fn random_word(rng: &mut impl Rng, n: usize, min: usize, max: usize) -> Word {
    let len = rng.gen_range(min..=max);
    Word::new(
        (0..len)
            .map(|_| rng.gen_range(1..=n as Generator))
            .collect(),
    )
}

/// The words reachable from a seed by inserting or deleting relation words,
/// never exceeding `cap` letters.
#[derive(Debug, Clone)]
pub struct Component {
    pub words: HashSet<Vec<Generator>>,
    /// The state limit stopped the search early.
    pub truncated: bool,
}

impl Component {
    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w.letters())
    }

    pub fn has_prefix(&self, y: &Word) -> bool {
        self.words.iter().any(|w| w.starts_with(y.letters()))
    }

    pub fn has_suffix(&self, y: &Word) -> bool {
        self.words.iter().any(|w| w.ends_with(y.letters()))
    }
}

pub fn component(seed: &Word, relations: &[Word], cap: usize, max_states: usize) -> Component {
    search(seed, None, relations, cap, max_states)
}

fn search(
    seed: &Word,
    target: Option<&Word>,
    relations: &[Word],
    cap: usize,
    max_states: usize,
) -> Component {
    let mut words = HashSet::from([seed.letters().to_vec()]);
    let mut queue = VecDeque::from([seed.letters().to_vec()]);
    let mut truncated = false;
    while let Some(w) = queue.pop_front() {
        let mut next = Vec::new();
        for r in relations {
            let r = r.letters();
            if r.is_empty() {
                continue;
            }
            for i in 0..=w.len() {
                if w.len() + r.len() <= cap {
                    let mut v = w[..i].to_vec();
                    v.extend_from_slice(r);
                    v.extend_from_slice(&w[i..]);
                    next.push(v);
                }
                if w[i..].starts_with(r) {
                    let mut v = w[..i].to_vec();
                    v.extend_from_slice(&w[i + r.len()..]);
                    next.push(v);
                }
            }
        }
        for v in next {
            if words.contains(&v) {
                continue;
            }
            if words.len() >= max_states {
                truncated = true;
                continue;
            }
            if target.is_some_and(|t| t.letters() == v.as_slice()) {
                words.insert(v);
                return Component { words, truncated };
            }
            words.insert(v.clone());
            queue.push_back(v);
        }
    }
    Component { words, truncated }
}

/// Bounded equality oracle: `Some(true)` if a path of words no longer than
/// `cap` joins `x` and `y`, `Some(false)` if the whole component was
/// explored without meeting `y`, `None` if the state limit cut it short.
pub fn bfs_equal(
    x: &Word,
    y: &Word,
    relations: &[Word],
    cap: usize,
    max_states: usize,
) -> Option<bool> {
    if x == y {
        return Some(true);
    }
    let cx = search(x, Some(y), relations, cap, max_states);
    if cx.contains(y) {
        return Some(true);
    }
    (!cx.truncated).then_some(false)
}

/// Free reduction written out directly.
pub fn reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Group-side search: whether `w` can be brought to the empty word by
/// inserting relators (and their cyclic conjugates and inverses, given in
/// `relators`) and freely reducing, through words of length at most `cap`.
pub fn group_bfs_trivial(
    w: &GroupWord,
    relators: &[GroupWord],
    cap: usize,
    max_states: usize,
) -> Option<bool> {
    let start = reduce(w.letters());
    if start.is_empty() {
        return Some(true);
    }
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut truncated = false;
    while let Some(u) = queue.pop_front() {
        for r in relators {
            for i in 0..=u.len() {
                let mut v = u[..i].to_vec();
                v.extend_from_slice(r.letters());
                v.extend_from_slice(&u[i..]);
                let v = reduce(&v);
                if v.is_empty() {
                    return Some(true);
                }
                if v.len() > cap || seen.contains(&v) {
                    continue;
                }
                if seen.len() >= max_states {
                    truncated = true;
                    continue;
                }
                seen.insert(v.clone());
                queue.push_back(v);
            }
        }
    }
    (!truncated).then_some(false)
}

/// A finite group given by permutations of `0..degree`, one per generator.
pub struct PermutationGroup {
    pub gens: Vec<Vec<usize>>,
}

impl PermutationGroup {
    fn apply(&self, w: &GroupWord) -> Vec<usize> {
        let degree = self.gens[0].len();
        let mut p: Vec<usize> = (0..degree).collect();
        for &x in w.letters() {
            let g = &self.gens[x.unsigned_abs() as usize - 1];
            let step: Vec<usize> = if x > 0 {
                g.clone()
            } else {
                let mut inv = vec![0; degree];
                for (i, &j) in g.iter().enumerate() {
                    inv[j] = i;
                }
                inv
            };
            p = p.iter().map(|&i| step[i]).collect();
        }
        p
    }

    pub fn is_identity(&self, w: &GroupWord) -> bool {
        self.apply(w).iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// A presentation on at most `n` letters with at most `k` relations of
/// length at most `ell`.
pub fn random_presentation(
    rng: &mut impl Rng,
    n: usize,
    k: usize,
    ell: usize,
) -> SpecialPresentation {
    let n = rng.gen_range(1..=n);
    let k = rng.gen_range(1..=k);
    let rels = (0..k).map(|_| random_word(rng, n, 1, ell)).collect();
    SpecialPresentation::new(Alphabet::new(n).unwrap(), rels)
}

/// A word equal to `x` in the monoid, reached by random insertions and
/// deletions of relation words.
pub fn random_walk(
    rng: &mut impl Rng,
    x: &Word,
    relations: &[Word],
    steps: usize,
    max_len: usize,
) -> Word {
    let mut w = x.letters().to_vec();
    for _ in 0..steps {
        let r = relations[rng.gen_range(0..relations.len())].letters();
        let spots: Vec<usize> = (0..=w.len()).filter(|&i| w[i..].starts_with(r)).collect();
        if !spots.is_empty() && (rng.gen_bool(0.6) || w.len() + r.len() > max_len) {
            let i = spots[rng.gen_range(0..spots.len())];
            w.drain(i..i + r.len());
        } else if w.len() + r.len() <= max_len {
            let i = rng.gen_range(0..=w.len());
            w.splice(i..i, r.iter().copied());
        }
    }
    Word::new(w)
}
