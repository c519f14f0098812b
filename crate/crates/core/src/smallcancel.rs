//! Small-cancellation machinery: the `K_α` cancellation check, the
//! generalized Dehn rewriting (free reduction plus two shortening rules), the
//! certificate length bound and the identity decision built on them.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use thiserror::Error;

use crate::oracle::{Budget, Verdict};
use crate::search::{search_trivial, SearchOutcome};
use crate::words::{free_reduce, inverse, GroupWord, SymmetrizedSet};

/// The threshold of the class handled by [`decide_identity`].
pub fn two_elevenths() -> Ratio<u64> {
    Ratio::new(2, 11)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmallCancelError {
    #[error("relator set is not in K(2/11): {0}")]
    NotK211(KAlphaReport),
}

/// A pair of relators and the number of letters cancelled in their product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cancellation {
    pub left: GroupWord,
    pub right: GroupWord,
    pub cancelled: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KAlphaReport {
    pub alpha: Ratio<u64>,
    pub passed: bool,
    /// The pair with the largest cancelled fraction of its left member.
    pub worst: Option<Cancellation>,
}

impl fmt::Display for KAlphaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "passed" } else { "failed" };
        write!(f, "alpha = {}: {status}", self.alpha)?;
        if let Some(w) = &self.worst {
            write!(
                f,
                "; worst pair {} * {} cancels {} of {}",
                w.left,
                w.right,
                w.cancelled,
                w.left.len()
            )?;
        }
        Ok(())
    }
}

/// Letters deleted when freely reducing `x·y`, counted on each side.
pub fn cancellation(x: &GroupWord, y: &GroupWord) -> usize {
    (x.len() + y.len() - free_reduce(&x.concat(y)).len()) / 2
}

/// Checks that every product `R_i R_j` of members that are not mutually
/// inverse cancels fewer than `alpha·|R_i|` letters.
pub fn k_alpha_check(m: &SymmetrizedSet, alpha: Ratio<u64>) -> KAlphaReport {
    let (p, q) = (*alpha.numer() as u128, *alpha.denom() as u128);
    let mut worst: Option<Cancellation> = None;
    let mut passed = true;
    for x in m.iter() {
        let x_inv = inverse(x);
        for y in m.iter() {
            if *y == x_inv {
                continue;
            }
            let c = cancellation(x, y);
            if c as u128 * q >= p * x.len() as u128 {
                passed = false;
            }
            let better = match &worst {
                None => true,
                Some(w) => c * w.left.len() > w.cancelled * x.len(),
            };
            if better {
                worst = Some(Cancellation {
                    left: x.clone(),
                    right: y.clone(),
                    cancelled: c,
                });
            }
        }
    }
    KAlphaReport {
        alpha,
        passed,
        worst,
    }
}

/// Length of the longest common prefix of two distinct members.
pub fn max_piece(m: &SymmetrizedSet) -> usize {
    let rs = m.relators();
    let mut best = 0;
    // sorted order: the longest common prefix is attained by neighbours
    for pair in rs.windows(2) {
        let l = pair[0]
            .letters()
            .iter()
            .zip(pair[1].letters())
            .take_while(|(a, b)| a == b)
            .count();
        best = best.max(l);
    }
    best
}

/// `max_piece < min_len / 6`, the metric condition under which a non-empty
/// Dehn fixpoint is never trivial.
pub fn greendlinger_condition(m: &SymmetrizedSet) -> bool {
    !m.is_empty() && 6 * max_piece(m) < m.min_len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DehnStep {
    /// Cancelled the inverse pair at `at`, `at + 1`.
    Free { at: usize },
    /// Replaced `S` at `at` by `T` with `S·T⁻¹` a relator.
    Beta {
        at: usize,
        removed: GroupWord,
        inserted: GroupWord,
    },
    /// Replaced `S₁S₂` at `at` by `T₁T₂` using two relators sharing `X`.
    Gamma {
        at: usize,
        removed: GroupWord,
        inserted: GroupWord,
    },
}

impl fmt::Display for DehnStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DehnStep::Free { at } => write!(f, "free reduction at {at}"),
            DehnStep::Beta {
                at,
                removed,
                inserted,
            } => write!(f, "beta at {at}: {removed} -> {inserted}"),
            DehnStep::Gamma {
                at,
                removed,
                inserted,
            } => write!(f, "gamma at {at}: {removed} -> {inserted}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DehnState {
    pub word: GroupWord,
    pub log: Vec<DehnStep>,
}

struct Rewrite {
    at: usize,
    len: usize,
    inserted: Vec<i32>,
    gamma: bool,
}

/// Members of `m` grouped by first letter.
struct RelatorIndex<'a> {
    by_first: HashMap<i32, Vec<&'a [i32]>>,
}

impl<'a> RelatorIndex<'a> {
    fn new(m: &'a SymmetrizedSet) -> Self {
        let mut by_first: HashMap<i32, Vec<&[i32]>> = HashMap::new();
        for r in m.iter() {
            by_first
                .entry(r.letters()[0])
                .or_default()
                .push(r.letters());
        }
        Self { by_first }
    }

    fn starting_with(&self, x: i32) -> &[&'a [i32]] {
        self.by_first.get(&x).map(Vec::as_slice).unwrap_or(&[])
    }
}

fn inverse_letters(xs: &[i32]) -> Vec<i32> {
    xs.iter().rev().map(|&x| -x).collect()
}

fn find_beta(w: &[i32], idx: &RelatorIndex) -> Option<Rewrite> {
    for at in 0..w.len() {
        let candidates = idx.starting_with(w[at]);
        for s in (1..=w.len() - at).rev() {
            let sw = &w[at..at + s];
            for r in candidates {
                // |T| = |R| - s < s
                if r.len() >= s && r.len() < 2 * s && r.starts_with(sw) {
                    return Some(Rewrite {
                        at,
                        len: s,
                        inserted: inverse_letters(&r[s..]),
                        gamma: false,
                    });
                }
            }
        }
    }
    None
}

fn find_gamma(w: &[i32], idx: &RelatorIndex) -> Option<Rewrite> {
    // split point between S₁ and S₂
    for p in 1..w.len() {
        for s1 in 1..=p {
            let start = p - s1;
            let s1w = &w[start..p];
            for r1 in idx.starting_with(s1w[0]) {
                if r1.len() <= s1 || !r1.starts_with(s1w) {
                    continue;
                }
                for x in 1..r1.len() - s1 + 1 {
                    let t1_len = r1.len() - s1 - x;
                    let xw = &r1[s1..s1 + x];
                    let x_inv = inverse_letters(xw);
                    for r2 in idx.starting_with(x_inv[0]) {
                        if r2.len() <= x || !r2.starts_with(&x_inv) {
                            continue;
                        }
                        let max_s2 = (r2.len() - x).min(w.len() - p);
                        for s2 in (1..=max_s2).rev() {
                            let t2_len = r2.len() - x - s2;
                            if s1 + s2 <= t1_len + t2_len {
                                break;
                            }
                            if w[p..p + s2] == r2[x..x + s2] {
                                let mut inserted = inverse_letters(&r1[s1 + x..]);
                                inserted.extend(inverse_letters(&r2[x + s2..]));
                                return Some(Rewrite {
                                    at: start,
                                    len: s1 + s2,
                                    inserted,
                                    gamma: true,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn free_reduce_logged(w: &mut Vec<i32>, log: &mut Vec<DehnStep>) {
    while let Some(at) = w.windows(2).position(|p| p[0] == -p[1]) {
        w.drain(at..at + 2);
        log.push(DehnStep::Free { at });
    }
}

/// Applies free reduction and the two shortening replacements until none
/// applies.
pub fn dehn_reduce(w: &GroupWord, m: &SymmetrizedSet) -> DehnState {
    let idx = RelatorIndex::new(m);
    let mut word = w.letters().to_vec();
    let mut log = Vec::new();
    loop {
        free_reduce_logged(&mut word, &mut log);
        let Some(rw) = find_beta(&word, &idx).or_else(|| find_gamma(&word, &idx)) else {
            break;
        };
        debug_assert!(rw.inserted.len() < rw.len);
        let removed = GroupWord::new(word[rw.at..rw.at + rw.len].to_vec());
        let inserted = GroupWord::new(rw.inserted.clone());
        word.splice(rw.at..rw.at + rw.len, rw.inserted);
        log.push(if rw.gamma {
            DehnStep::Gamma {
                at: rw.at,
                removed,
                inserted,
            }
        } else {
            DehnStep::Beta {
                at: rw.at,
                removed,
                inserted,
            }
        });
    }
    DehnState {
        word: GroupWord::new(word),
        log,
    }
}

/// Whether any of the three operations still applies to `w`.
pub fn admits_rewrite(w: &GroupWord, m: &SymmetrizedSet) -> bool {
    let idx = RelatorIndex::new(m);
    !w.is_reduced()
        || find_beta(w.letters(), &idx).is_some()
        || find_gamma(w.letters(), &idx).is_some()
}

/// `27·e³·(d+1)^(6e)`.
pub fn certificate_bound(e: u32, d: u32) -> BigUint {
    let e_big = BigUint::from(e);
    BigUint::from(27u32) * e_big.pow(3) * BigUint::from(d + 1).pow(6 * e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityMethod {
    /// The rewriting reached the empty word.
    Dehn,
    /// The metric condition turned a non-empty fixpoint into `No`.
    Greendlinger,
    /// The bounded search settled it (or ran out of states).
    Search,
    /// The certificate bound exceeded the budget.
    OverBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityDecision {
    pub verdict: Verdict,
    pub method: IdentityMethod,
    pub dehn: DehnState,
    /// The certificate bound for the fixpoint, when one was computed.
    pub bound: Option<BigUint>,
}

/// Decides whether `w = 1` in the group with symmetrized relators `m`.
pub fn decide_identity(
    w: &GroupWord,
    m: &SymmetrizedSet,
    budget: &Budget,
) -> Result<IdentityDecision, SmallCancelError> {
    let report = k_alpha_check(m, two_elevenths());
    if !report.passed {
        return Err(SmallCancelError::NotK211(report));
    }
    let dehn = dehn_reduce(w, m);
    if dehn.word.is_empty() {
        return Ok(IdentityDecision {
            verdict: Verdict::Yes,
            method: IdentityMethod::Dehn,
            dehn,
            bound: None,
        });
    }
    if budget.greendlinger && greendlinger_condition(m) {
        return Ok(IdentityDecision {
            verdict: Verdict::No,
            method: IdentityMethod::Greendlinger,
            dehn,
            bound: None,
        });
    }
    let bound = certificate_bound(dehn.word.len() as u32, m.max_len() as u32);
    if bound > BigUint::from(budget.certificate) {
        return Ok(IdentityDecision {
            verdict: Verdict::Unknown,
            method: IdentityMethod::OverBudget,
            dehn,
            bound: Some(bound),
        });
    }
    let cap = usize::try_from(&bound).unwrap_or(usize::MAX);
    let verdict = match search_trivial(&dehn.word, m, cap, budget.max_states) {
        SearchOutcome::Reached => Verdict::Yes,
        SearchOutcome::Unreachable => Verdict::No,
        SearchOutcome::Truncated => Verdict::Unknown,
    };
    Ok(IdentityDecision {
        verdict,
        method: IdentityMethod::Search,
        dehn,
        bound: Some(bound),
    })
}
