//! Bounded exhaustive searches in finitely presented groups.
//!
//! [`BallClosure`] identifies freely reduced words inside a ball of the free
//! group when relators force them equal, and reads off a finite permutation
//! action once every class has all generator translates. [`search_trivial`]
//! explores relator insertions on reduced words up to a length cap.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::oracle::Verdict;
use crate::words::{free_reduce, GroupWord, SymmetrizedSet};

const NONE: u32 = u32::MAX;

fn letter_index(x: i32) -> usize {
    if x > 0 {
        2 * (x as usize - 1)
    } else {
        2 * ((-x) as usize - 1) + 1
    }
}

/// Number of freely reduced words of length at most `r` on `p` generators,
/// saturating.
pub fn ball_size(p: usize, r: usize) -> usize {
    if p == 0 {
        return 1;
    }
    let mut total: usize = 1;
    let mut layer: usize = 2 * p;
    for _ in 0..r {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(2 * p - 1);
    }
    total
}

/// Largest radius `r <= max_len` whose ball has at most `max_states` words.
pub fn ball_radius(p: usize, max_len: usize, max_states: usize) -> usize {
    if p == 0 {
        return max_len;
    }
    (0..=max_len)
        .take_while(|&r| ball_size(p, r) <= max_states.max(1))
        .last()
        .unwrap_or(0)
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    let mut root = x;
    while parent[root as usize] != root {
        root = parent[root as usize];
    }
    while parent[x as usize] != root {
        let next = parent[x as usize];
        parent[x as usize] = root;
        x = next;
    }
    root
}

/// Equality classes of reduced words of length at most `radius`.
#[derive(Debug, Clone)]
pub struct BallClosure {
    width: usize,
    radius: usize,
    classes: usize,
    root: u32,
    // class representative -> letter -> class representative
    action: Vec<u32>,
    complete: bool,
}

impl BallClosure {
    pub fn new(generators: usize, relators: &SymmetrizedSet, radius: usize) -> Self {
        let width = 2 * generators;
        let size = ball_size(generators, radius);
        let mut next = vec![NONE; size * width];
        let mut count = 1usize;
        let mut frontier = vec![(0u32, None::<usize>)];
        for _ in 0..radius {
            let mut layer = Vec::new();
            for &(u, last) in &frontier {
                for x in 0..width {
                    if last.is_some_and(|l| l ^ 1 == x) {
                        continue;
                    }
                    let v = count as u32;
                    count += 1;
                    next[u as usize * width + x] = v;
                    next[v as usize * width + (x ^ 1)] = u;
                    layer.push((v, Some(x)));
                }
            }
            frontier = layer;
        }
        debug_assert_eq!(count, size);

        let rels: Vec<Vec<usize>> = relators
            .iter()
            .map(|r| r.letters().iter().map(|&x| letter_index(x)).collect())
            .collect();
        let mut parent: Vec<u32> = (0..size as u32).collect();
        let mut action = vec![NONE; size * width];
        loop {
            let mut changed = false;
            action.iter_mut().for_each(|a| *a = NONE);
            for u in 0..size {
                for x in 0..width {
                    let v = next[u * width + x];
                    if v == NONE {
                        continue;
                    }
                    let (ru, rv) = (find(&mut parent, u as u32), find(&mut parent, v));
                    let slot = ru as usize * width + x;
                    if action[slot] == NONE {
                        action[slot] = rv;
                    } else {
                        let prev = find(&mut parent, action[slot]);
                        if prev != rv {
                            parent[prev.max(rv) as usize] = prev.min(rv);
                            action[slot] = prev.min(rv);
                            changed = true;
                        }
                    }
                }
            }
            for u in 0..size as u32 {
                if find(&mut parent, u) != u {
                    continue;
                }
                for r in &rels {
                    let mut c = u;
                    let mut defined = true;
                    for &x in r {
                        let a = action[c as usize * width + x];
                        if a == NONE {
                            defined = false;
                            break;
                        }
                        c = find(&mut parent, a);
                    }
                    let cu = find(&mut parent, u);
                    if defined && c != cu {
                        parent[c.max(cu) as usize] = c.min(cu);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut classes = 0;
        let mut complete = true;
        for u in 0..size as u32 {
            if find(&mut parent, u) == u {
                classes += 1;
                for x in 0..width {
                    let slot = u as usize * width + x;
                    if action[slot] == NONE {
                        complete = false;
                    } else {
                        action[slot] = find(&mut parent, action[slot]);
                    }
                }
            }
        }
        let root = find(&mut parent, 0);
        Self {
            width,
            radius,
            classes,
            root,
            action,
            complete,
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Number of equality classes found.
    pub fn classes(&self) -> usize {
        self.classes
    }

    /// Whether every class has every generator translate, so that the classes
    /// carry an action of the group.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    fn trace(&self, w: &GroupWord) -> Option<u32> {
        let mut c = self.root;
        for &x in w.letters() {
            let i = letter_index(x);
            if i >= self.width {
                return None;
            }
            c = self.action[c as usize * self.width + i];
            if c == NONE {
                return None;
            }
        }
        Some(c)
    }

    /// Whether `w` is trivial: `Yes` when it lands in the identity class, `No`
    /// when it lands elsewhere under a complete action.
    pub fn decide_trivial(&self, w: &GroupWord) -> Verdict {
        match self.trace(w) {
            Some(c) if c == self.root => Verdict::Yes,
            Some(_) if self.complete => Verdict::No,
            _ => Verdict::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOutcome {
    /// The empty word was reached.
    Reached,
    /// Every reachable word was explored without touching the cap.
    Unreachable,
    /// The length cap or the state budget cut the search short.
    Truncated,
}

/// Best-first search from `start` over freely reduced words, inserting any
/// member of `relators` at any position and reducing. Words longer than
/// `max_len` are discarded.
pub fn search_trivial(
    start: &GroupWord,
    relators: &SymmetrizedSet,
    max_len: usize,
    max_states: usize,
) -> SearchOutcome {
    let start = free_reduce(start);
    if start.is_empty() {
        return SearchOutcome::Reached;
    }
    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    let mut queue = BinaryHeap::new();
    let mut truncated = false;
    seen.insert(start.letters().to_vec());
    queue.push(Reverse((start.len(), start.letters().to_vec())));
    while let Some(Reverse((_, w))) = queue.pop() {
        for i in 0..=w.len() {
            for r in relators.iter() {
                let mut v = Vec::with_capacity(w.len() + r.len());
                v.extend_from_slice(&w[..i]);
                v.extend_from_slice(r.letters());
                v.extend_from_slice(&w[i..]);
                let v = free_reduce(&GroupWord::new(v));
                if v.is_empty() {
                    return SearchOutcome::Reached;
                }
                if v.len() > max_len {
                    truncated = true;
                    continue;
                }
                if seen.contains(v.letters()) {
                    continue;
                }
                if seen.len() >= max_states {
                    return SearchOutcome::Truncated;
                }
                seen.insert(v.letters().to_vec());
                queue.push(Reverse((v.len(), v.letters().to_vec())));
            }
        }
    }
    if truncated {
        SearchOutcome::Truncated
    } else {
        SearchOutcome::Unreachable
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::symmetrize;

    fn gw(v: &[i32]) -> GroupWord {
        GroupWord::new(v.to_vec())
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(ball_size(1, 3), 7);
        assert_eq!(ball_size(2, 2), 1 + 4 + 12);
        assert_eq!(ball_size(0, 5), 1);
        assert_eq!(ball_radius(2, 16, 17), 2);
    }

    #[test]
    fn order_two_group_is_enumerated() {
        let m = symmetrize([&gw(&[1, 1])]).unwrap();
        let b = BallClosure::new(1, &m, 2);
        assert!(b.is_complete());
        assert_eq!(b.classes(), 2);
        assert_eq!(b.decide_trivial(&gw(&[1])), Verdict::No);
        assert_eq!(b.decide_trivial(&gw(&[1, 1, 1, -1])), Verdict::Yes);
    }

    #[test]
    fn symmetric_group_on_three_letters() {
        // a^2 = b^2 = (ab)^3 = 1
        let rels = [gw(&[1, 1]), gw(&[2, 2]), gw(&[1, 2, 1, 2, 1, 2])];
        let m = symmetrize(rels.iter()).unwrap();
        let b = BallClosure::new(2, &m, 6);
        assert!(b.is_complete());
        assert_eq!(b.classes(), 6);
        assert_eq!(b.decide_trivial(&gw(&[1, 2, 1, -2, -1, -2])), Verdict::Yes);
        assert_eq!(b.decide_trivial(&gw(&[1, 2])), Verdict::No);
    }

    #[test]
    fn infinite_group_stays_open() {
        let m = symmetrize([&gw(&[1, 2, -1, -2])]).unwrap();
        let b = BallClosure::new(2, &m, 4);
        assert!(!b.is_complete());
        assert_eq!(b.decide_trivial(&gw(&[2, 1, -2, -1])), Verdict::Yes);
        assert_eq!(b.decide_trivial(&gw(&[1])), Verdict::Unknown);
    }

    #[test]
    fn word_search() {
        let m = symmetrize([&gw(&[1, 2, -1, -2])]).unwrap();
        assert_eq!(
            search_trivial(&gw(&[2, 1, -2, -1]), &m, 8, 1000),
            SearchOutcome::Reached
        );
        assert_eq!(
            search_trivial(&gw(&[1]), &m, 8, 1000),
            SearchOutcome::Truncated
        );
    }
}
