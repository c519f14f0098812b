//! Integer linear algebra on exponent-sum vectors: lattice membership via an
//! echelon form, and abelian invariants via a Smith normal form.
//!
//! If two words have exponent-sum difference outside the relator lattice they
//! are distinct in the abelianization, hence distinct in the group.

use crate::presentation::GroupPresentation;
use crate::words::GroupWord;

/// Exponent sums of `w` over generators `1..=p`.
pub fn exponent_vector(w: &GroupWord, p: usize) -> Vec<i128> {
    let mut v = vec![0i128; p];
    for &x in w.letters() {
        let g = x.unsigned_abs() as usize;
        if g >= 1 && g <= p {
            v[g - 1] += x.signum() as i128;
        }
    }
    v
}

/// The row lattice of the relator exponent vectors, kept in echelon form.
#[derive(Debug, Clone)]
pub struct RelatorLattice {
    dim: usize,
    // (pivot column, row); pivots strictly increasing, pivot entries positive
    rows: Vec<(usize, Vec<i128>)>,
}

impl RelatorLattice {
    /// `None` if intermediate values overflow.
    pub fn new(g: &GroupPresentation) -> Option<Self> {
        let p = g.generators();
        let rows: Vec<Vec<i128>> = g
            .group_relators()
            .iter()
            .map(|r| exponent_vector(r, p))
            .collect();
        Self::from_rows(p, rows)
    }

    pub fn from_rows(dim: usize, mut rows: Vec<Vec<i128>>) -> Option<Self> {
        let mut echelon = Vec::new();
        let mut top = 0;
        for col in 0..dim {
            loop {
                let nonzero: Vec<usize> =
                    (top..rows.len()).filter(|&r| rows[r][col] != 0).collect();
                let Some(&best) = nonzero.iter().min_by_key(|&&r| rows[r][col].abs()) else {
                    break;
                };
                rows.swap(top, best);
                let mut done = true;
                for r in top + 1..rows.len() {
                    if rows[r][col] != 0 {
                        let q = rows[r][col] / rows[top][col];
                        let pivot = rows[top].clone();
                        for (c, pv) in pivot.iter().enumerate() {
                            rows[r][c] = rows[r][c].checked_sub(q.checked_mul(*pv)?)?;
                        }
                        if rows[r][col] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    if rows[top][col] < 0 {
                        rows[top].iter_mut().for_each(|x| *x = -*x);
                    }
                    echelon.push((col, rows[top].clone()));
                    top += 1;
                    break;
                }
            }
        }
        Some(Self { dim, rows: echelon })
    }

    /// Whether `v` is an integer combination of the relator vectors.
    pub fn contains(&self, v: &[i128]) -> Option<bool> {
        debug_assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        let mut pivots = self.rows.iter().peekable();
        for col in 0..self.dim {
            match pivots.peek() {
                Some((pc, row)) if *pc == col => {
                    if v[col] % row[col] != 0 {
                        return Some(false);
                    }
                    let q = v[col] / row[col];
                    for (c, rv) in row.iter().enumerate() {
                        v[c] = v[c].checked_sub(q.checked_mul(*rv)?)?;
                    }
                    pivots.next();
                }
                _ => {
                    if v[col] != 0 {
                        return Some(false);
                    }
                }
            }
        }
        Some(true)
    }

    /// Whether `w` is trivial in the abelianization.
    pub fn contains_word(&self, w: &GroupWord) -> Option<bool> {
        self.contains(&exponent_vector(w, self.dim))
    }
}

/// `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_m` with `t_1 | t_2 | ...`, all `t_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u128>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        parts.extend(std::iter::repeat("Z".to_string()).take(self.free_rank));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smith normal form of the relator matrix. `None` on overflow.
pub fn abelian_invariants(g: &GroupPresentation) -> Option<AbelianInvariants> {
    let p = g.generators();
    let mut m: Vec<Vec<i128>> = g
        .group_relators()
        .iter()
        .map(|r| exponent_vector(r, p))
        .collect();
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(p) {
        // smallest non-zero entry in the remaining block
        let Some((r, c)) = (t..rows)
            .flat_map(|r| (t..p).map(move |c| (r, c)))
            .filter(|&(r, c)| m[r][c] != 0)
            .min_by_key(|&(r, c)| m[r][c].abs())
        else {
            break;
        };
        m.swap(t, r);
        for row in m.iter_mut() {
            row.swap(t, c);
        }
        let mut clean = true;
        for r in t + 1..rows {
            let q = m[r][t] / m[t][t];
            if q != 0 {
                for c in t..p {
                    m[r][c] = m[r][c].checked_sub(q.checked_mul(m[t][c])?)?;
                }
            }
            if m[r][t] != 0 {
                clean = false;
            }
        }
        for c in t + 1..p {
            let q = m[t][c] / m[t][t];
            if q != 0 {
                for row in m.iter_mut().skip(t) {
                    row[c] = row[c].checked_sub(q.checked_mul(row[t])?)?;
                }
            }
            if m[t][c] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        if let Some(r) = (t + 1..rows).find(|&r| (t + 1..p).any(|c| m[r][c] % m[t][t] != 0)) {
            for c in t..p {
                m[t][c] = m[t][c].checked_add(m[r][c])?;
            }
            continue;
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    let free_rank = p - diag.len();
    let mut torsion: Vec<u128> = diag
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| d as u128)
        .collect();
    torsion.sort_unstable();
    debug_assert!(torsion
        .windows(2)
        .all(|w| gcd(w[1] as i128, w[0] as i128) == w[0] as i128));
    Some(AbelianInvariants { free_rank, torsion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    fn group(p: usize, rels: &[&[u32]]) -> GroupPresentation {
        GroupPresentation::new(p, rels.iter().map(|r| Word::new(r.to_vec())).collect())
    }

    #[test]
    fn invariants_of_small_groups() {
        let z = group(2, &[&[1, 2], &[2, 1]]);
        assert!(abelian_invariants(&z).unwrap().is_infinite_cyclic());
        let trivial = group(1, &[&[1]]);
        assert!(abelian_invariants(&trivial).unwrap().is_trivial());
        let z2 = group(1, &[&[1, 1]]);
        assert_eq!(abelian_invariants(&z2).unwrap().torsion, vec![2]);
        let z2z3 = group(2, &[&[1, 1], &[2, 2, 2]]);
        assert_eq!(abelian_invariants(&z2z3).unwrap().torsion, vec![6]);
        let free = group(2, &[]);
        assert_eq!(abelian_invariants(&free).unwrap().free_rank, 2);
    }

    #[test]
    fn lattice_membership() {
        let z = group(3, &[&[1, 2], &[2, 3]]);
        let lat = RelatorLattice::new(&z).unwrap();
        assert_eq!(lat.contains(&[1, 1, 0]), Some(true));
        assert_eq!(lat.contains(&[1, 0, -1]), Some(true));
        assert_eq!(lat.contains(&[1, 0, 0]), Some(false));
        let z2 = group(1, &[&[1, 1]]);
        let lat = RelatorLattice::new(&z2).unwrap();
        assert_eq!(lat.contains(&[4]), Some(true));
        assert_eq!(lat.contains(&[3]), Some(false));
    }
}
