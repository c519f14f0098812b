//! Word-problem oracles for the derived groups.
//!
//! An [`OracleHandle`] answers `u = v?` with a three-valued [`Verdict`]. `Yes`
//! and `No` are always sound; `Unknown` means the budget ran out.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::abelian::RelatorLattice;
use crate::presentation::GroupPresentation;
use crate::search::{ball_radius, BallClosure};
use crate::smallcancel::{dehn_reduce, greendlinger_condition, k_alpha_check, two_elevenths};
use crate::words::{
    cyclic_reduce, free_reduce, inverse, symmetrize, GroupWord, SymmetrizedSet, Word,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Resource limits shared by the oracles and the identity decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Longest word explored by the bounded searches.
    pub max_len: usize,
    /// Largest number of words a bounded search may hold.
    pub max_states: usize,
    /// Largest certificate bound the identity decision will search up to.
    pub certificate: u64,
    /// Answer `No` on a non-empty Dehn fixpoint when the relators satisfy the
    /// `C'(1/6)` metric condition.
    pub greendlinger: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_len: 16,
            max_states: 100_000,
            certificate: 1_000_000,
            greendlinger: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("generator {generator} is not among the group's {available} generators")]
    AlphabetMismatch { generator: u32, available: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendKind {
    FreeGroup,
    Dehn,
    BoundedBfs,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendKind::FreeGroup => "free group",
            BackendKind::Dehn => "Dehn rewriting",
            BackendKind::BoundedBfs => "bounded search",
        })
    }
}

#[derive(Debug)]
pub struct OracleHandle {
    target: GroupPresentation,
    kind: BackendKind,
    budget: Budget,
    relators: Option<SymmetrizedSet>,
    metric: bool,
    lattice: Option<RelatorLattice>,
    ball: OnceLock<BallClosure>,
    memo: Mutex<HashMap<GroupWord, Verdict>>,
}

/// Picks the free-group backend for relator-free groups, Dehn rewriting when
/// the symmetrized relators pass the `K(2/11)` check, and the bounded search
/// otherwise.
pub fn select_oracle(g: &GroupPresentation, budget: Budget) -> OracleHandle {
    let rels = g.group_relators();
    let (kind, relators) = if rels.is_empty() {
        (BackendKind::FreeGroup, None)
    } else {
        let m = symmetrize(rels.iter()).expect("positive relators never reduce to 1");
        let kind = if k_alpha_check(&m, two_elevenths()).passed {
            BackendKind::Dehn
        } else {
            BackendKind::BoundedBfs
        };
        (kind, Some(m))
    };
    let metric = budget.greendlinger && relators.as_ref().is_some_and(greendlinger_condition);
    OracleHandle {
        target: g.clone(),
        kind,
        budget,
        relators,
        metric,
        lattice: RelatorLattice::new(g),
        ball: OnceLock::new(),
        memo: Mutex::new(HashMap::new()),
    }
}

/// The lexicographically least cyclic permutation of `w` or of `w⁻¹`.
fn canonical_conjugate(w: &GroupWord) -> GroupWord {
    let w = cyclic_reduce(w);
    let inv = inverse(&w);
    (0..w.len().max(1))
        .flat_map(|k| [w.rotate(k), inv.rotate(k)])
        .min()
        .unwrap_or_default()
}

impl OracleHandle {
    pub fn target(&self) -> &GroupPresentation {
        &self.target
    }

    pub fn kind(&self) -> BackendKind {
        self.kind
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    fn check_alphabet(&self, w: &GroupWord) -> Result<(), OracleError> {
        let g = w.max_generator();
        if g as usize > self.target.generators() {
            return Err(OracleError::AlphabetMismatch {
                generator: g,
                available: self.target.generators(),
            });
        }
        Ok(())
    }

    /// Whether `u = v` in the target group.
    pub fn decide_equal(&self, u: &GroupWord, v: &GroupWord) -> Result<Verdict, OracleError> {
        self.check_alphabet(u)?;
        self.check_alphabet(v)?;
        Ok(self.decide_trivial_unchecked(&free_reduce(&u.concat(&inverse(v)))))
    }

    /// [`decide_equal`](Self::decide_equal) for positive words.
    pub fn decide_equal_words(&self, u: &Word, v: &Word) -> Result<Verdict, OracleError> {
        self.decide_equal(&u.to_group_word(), &v.to_group_word())
    }

    /// Whether `w = 1` in the target group.
    pub fn decide_trivial(&self, w: &GroupWord) -> Result<Verdict, OracleError> {
        self.check_alphabet(w)?;
        Ok(self.decide_trivial_unchecked(w))
    }

    fn decide_trivial_unchecked(&self, w: &GroupWord) -> Verdict {
        let key = canonical_conjugate(w);
        if key.is_empty() {
            return Verdict::Yes;
        }
        if let Some(&v) = self.memo.lock().expect("memo lock").get(&key) {
            return v;
        }
        let verdict = self.compute(&key);
        self.memo.lock().expect("memo lock").insert(key, verdict);
        verdict
    }

    fn compute(&self, w: &GroupWord) -> Verdict {
        let Some(m) = &self.relators else {
            return Verdict::No;
        };
        if self.kind == BackendKind::Dehn {
            if dehn_reduce(w, m).word.is_empty() {
                return Verdict::Yes;
            }
            if self.metric {
                return Verdict::No;
            }
        }
        if self.lattice.as_ref().and_then(|l| l.contains_word(w)) == Some(false) {
            return Verdict::No;
        }
        self.ball().decide_trivial(w)
    }

    fn ball(&self) -> &BallClosure {
        self.ball.get_or_init(|| {
            let p = self.target.generators();
            let m = self
                .relators
                .as_ref()
                .expect("ball built only with relators");
            BallClosure::new(
                p,
                m,
                ball_radius(p, self.budget.max_len, self.budget.max_states),
            )
        })
    }
}
