//! Abstract finite groups given by multiplication tables.

use thiserror::Error;

use crate::perm::PermutationGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty multiplication table")]
    Empty,
    #[error("row {row} has length {len}, expected {m}")]
    NotSquare { row: usize, len: usize, m: usize },
    #[error("entry ({row}, {col}) = {value} out of range for order {m}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        m: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

/// A finite group as an `m × m` table over element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    mul: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
}

impl FiniteGroupTable {
    /// Checks the group axioms exhaustively.
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let m = mul.len();
        if m == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in mul.iter().enumerate() {
            if r.len() != m {
                return Err(GroupError::NotSquare {
                    row,
                    len: r.len(),
                    m,
                });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= m) {
                return Err(GroupError::OutOfRange { row, col, value, m });
            }
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or(GroupError::NoIdentity)?;
        let mut inv = Vec::with_capacity(m);
        for g in 0..m {
            let h = (0..m)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or(GroupError::NoInverse(g))?;
            inv.push(h);
        }
        for a in 0..m {
            for b in 0..m {
                let ab = mul[a][b];
                for c in 0..m {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroupTable { mul, identity, inv })
    }

    fn from_parts_unchecked(mul: Vec<Vec<usize>>, identity: usize) -> Self {
        let m = mul.len();
        let inv = (0..m)
            .map(|g| {
                (0..m)
                    .find(|&h| mul[g][h] == identity)
                    .expect("group element without inverse")
            })
            .collect();
        FiniteGroupTable { mul, identity, inv }
    }

    /// `Z_n` with element `k` at index `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroupTable {
            mul,
            identity: 0,
            inv: (0..n).map(|a| (n - a) % n).collect(),
        }
    }

    /// `Z_{q1} × ... × Z_{qk}` in mixed radix, first factor most significant.
    pub fn abelian(factors: &[usize]) -> Self {
        factors.iter().fold(FiniteGroupTable::cyclic(1), |acc, &q| {
            acc.direct_product(&FiniteGroupTable::cyclic(q))
        })
    }

    /// `self × other` with `(a, b)` at index `a·|other| + b`.
    pub fn direct_product(&self, other: &FiniteGroupTable) -> Self {
        let (m1, m2) = (self.order(), other.order());
        let m = m1 * m2;
        let mut mul = vec![vec![0; m]; m];
        for a1 in 0..m1 {
            for a2 in 0..m2 {
                let row = &mut mul[a1 * m2 + a2];
                for b1 in 0..m1 {
                    for b2 in 0..m2 {
                        row[b1 * m2 + b2] = self.mul(a1, b1) * m2 + other.mul(a2, b2);
                    }
                }
            }
        }
        let inv = (0..m)
            .map(|g| self.inv(g / m2) * m2 + other.inv(g % m2))
            .collect();
        FiniteGroupTable {
            mul,
            identity: self.identity * m2 + other.identity,
            inv,
        }
    }

    /// The abstract group of a permutation group; index `i` stands for
    /// `group.elements()[i]`, so the ordering is lexicographic on images.
    pub fn from_permutation_group(group: &PermutationGroup) -> Self {
        let elements = group.elements();
        let mul = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        group
                            .index_of(&a.then_unchecked(b))
                            .expect("permutation group is closed")
                    })
                    .collect()
            })
            .collect();
        // the identity sorts first
        FiniteGroupTable::from_parts_unchecked(mul, 0)
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inv
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn is_abelian(&self) -> bool {
        let m = self.order();
        (0..m).all(|a| (a + 1..m).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}
