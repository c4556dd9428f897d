//! Quandles as Cayley tables.
//!
//! Storage convention: `table[x][y] = s_x(y)`, the symmetry at `x` applied to
//! `y`. Rows are the symmetries; this is not the `y ∗ x` operator layout.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::perm::Permutation;

/// Input that is not even a square table over `{0..n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MalformedTable {
    #[error("empty table: quandles must have at least one element")]
    Empty,
    #[error("row {row} has length {len}, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry ({row}, {col}) = {value} is out of range for n = {n}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
}

/// A single failed axiom together with its witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom")]
pub enum AxiomViolation {
    /// `s_x(x) != x`.
    #[serde(rename = "Q1")]
    Idempotency { x: usize },
    /// Row `x` is not a bijection; `value` is hit at both `y1` and `y2`.
    #[serde(rename = "Q2")]
    NotBijective {
        x: usize,
        y1: usize,
        y2: usize,
        value: usize,
    },
    /// `s_x(s_y(z)) != s_{s_x(y)}(s_x(z))`.
    #[serde(rename = "Q3")]
    SelfDistributivity { x: usize, y: usize, z: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomViolation::Idempotency { x } => write!(f, "(Q1) fails at x={x}"),
            AxiomViolation::NotBijective { x, y1, y2, value } => {
                write!(f, "(Q2) row {x} sends both {y1} and {y2} to {value}")
            }
            AxiomViolation::SelfDistributivity { x, y, z } => {
                write!(f, "(Q3) fails at (x,y,z)=({x},{y},{z})")
            }
        }
    }
}

/// Outcome of [`validate_quandle`] on a well-formed table.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub valid: bool,
    pub violations: Vec<AxiomViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuandleError {
    #[error(transparent)]
    Malformed(#[from] MalformedTable),
    #[error("quandle axioms fail: {}", .0.first().map(ToString::to_string).unwrap_or_default())]
    Axioms(Vec<AxiomViolation>),
    #[error("affine multiplier {t} is not a unit modulo {n}")]
    NonUnitMultiplier { n: usize, t: usize },
}

fn check_shape(rows: &[Vec<usize>]) -> Result<usize, MalformedTable> {
    let n = rows.len();
    if n == 0 {
        return Err(MalformedTable::Empty);
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(MalformedTable::NotSquare {
                row,
                len: r.len(),
                n,
            });
        }
        if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(MalformedTable::OutOfRange { row, col, value, n });
        }
    }
    Ok(n)
}

/// Checks (Q1), (Q2) and (Q3), reporting every violation found.
///
/// Shape problems are rejected before any axiom is looked at.
pub fn validate_quandle(rows: &[Vec<usize>]) -> Result<AxiomReport, MalformedTable> {
    let n = check_shape(rows)?;
    let mut violations = Vec::new();

    for (x, row) in rows.iter().enumerate() {
        if row[x] != x {
            violations.push(AxiomViolation::Idempotency { x });
        }
    }
    for (x, row) in rows.iter().enumerate() {
        let mut first_hit = vec![None; n];
        for (y, &v) in row.iter().enumerate() {
            match first_hit[v] {
                Some(y1) => {
                    violations.push(AxiomViolation::NotBijective {
                        x,
                        y1,
                        y2: y,
                        value: v,
                    });
                    break;
                }
                None => first_hit[v] = Some(y),
            }
        }
    }
    for x in 0..n {
        let sx = &rows[x];
        for y in 0..n {
            let sy = &rows[y];
            let st = &rows[sx[y]];
            for z in 0..n {
                if sx[sy[z]] != st[sx[z]] {
                    violations.push(AxiomViolation::SelfDistributivity { x, y, z });
                }
            }
        }
    }

    Ok(AxiomReport {
        valid: violations.is_empty(),
        violations,
    })
}

/// A finite quandle, guaranteed to satisfy the axioms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuandleTable {
    rows: Vec<Vec<usize>>,
}

impl QuandleTable {
    /// Validates `rows` and wraps them.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, QuandleError> {
        let report = validate_quandle(&rows)?;
        if !report.valid {
            return Err(QuandleError::Axioms(report.violations));
        }
        Ok(QuandleTable { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        debug_assert!(validate_quandle(&rows).map(|r| r.valid).unwrap_or(false));
        QuandleTable { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `s_x(y)`.
    #[inline]
    pub fn act(&self, x: usize, y: usize) -> usize {
        self.rows[x][y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// The symmetry `s_x` as a permutation.
    pub fn symmetry(&self, x: usize) -> Permutation {
        Permutation::from_images_unchecked(self.rows[x].clone())
    }

    pub fn symmetries(&self) -> Vec<Permutation> {
        (0..self.len()).map(|x| self.symmetry(x)).collect()
    }

    /// The isomorphic copy obtained by renaming each `x` to `perm(x)`.
    pub fn relabel(&self, perm: &Permutation) -> QuandleTable {
        assert_eq!(perm.degree(), self.len(), "relabeling degree mismatch");
        let n = self.len();
        let mut rows = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                rows[perm.apply(x)][perm.apply(y)] = perm.apply(self.rows[x][y]);
            }
        }
        QuandleTable { rows }
    }

    pub fn trivial(n: usize) -> Result<Self, QuandleError> {
        trivial_quandle(n)
    }

    pub fn dihedral(n: usize) -> Result<Self, QuandleError> {
        dihedral_quandle(n)
    }

    pub fn product(&self, other: &QuandleTable) -> QuandleTable {
        direct_product(self, other)
    }
}

impl fmt::Debug for QuandleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuandleTable{:?}", self.rows)
    }
}

impl Serialize for QuandleTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuandleTable", 2)?;
        st.serialize_field("n", &self.len())?;
        st.serialize_field("table", &self.rows)?;
        st.end()
    }
}

/// `s_x = id` for every `x`.
pub fn trivial_quandle(n: usize) -> Result<QuandleTable, QuandleError> {
    if n == 0 {
        return Err(MalformedTable::Empty.into());
    }
    let row: Vec<usize> = (0..n).collect();
    Ok(QuandleTable::from_rows_unchecked(vec![row; n]))
}

/// `Z_n` with `s_x(y) = 2x - y mod n`.
pub fn dihedral_quandle(n: usize) -> Result<QuandleTable, QuandleError> {
    if n == 0 {
        return Err(MalformedTable::Empty.into());
    }
    let rows = (0..n)
        .map(|x| (0..n).map(|y| (2 * x + n - y) % n).collect())
        .collect();
    Ok(QuandleTable::from_rows_unchecked(rows))
}

/// The affine quandle on `Z_n` with `s_x(y) = t·y + (1 - t)·x mod n`.
///
/// `t` must be a unit mod `n`; `t = n - 1` gives the dihedral quandle.
pub fn affine_quandle(n: usize, t: usize) -> Result<QuandleTable, QuandleError> {
    if n == 0 {
        return Err(MalformedTable::Empty.into());
    }
    let t = t % n;
    if n > 1 && (1..n).all(|u| (t * u) % n != 1) {
        return Err(QuandleError::NonUnitMultiplier { n, t });
    }
    let one_minus_t = (1 + n - t) % n;
    let rows = (0..n)
        .map(|x| (0..n).map(|y| (t * y + one_minus_t * x) % n).collect())
        .collect();
    Ok(QuandleTable::from_rows_unchecked(rows))
}

/// `X × Y` with `(x, y)` flattened to `x·|Y| + y`.
pub fn direct_product(left: &QuandleTable, right: &QuandleTable) -> QuandleTable {
    let (a, b) = (left.len(), right.len());
    let n = a * b;
    let mut rows = Vec::with_capacity(n);
    for x in 0..a {
        for y in 0..b {
            let mut row = Vec::with_capacity(n);
            for x2 in 0..a {
                for y2 in 0..b {
                    row.push(left.act(x, x2) * b + right.act(y, y2));
                }
            }
            rows.push(row);
        }
    }
    QuandleTable::from_rows_unchecked(rows)
}

/// Left fold of [`direct_product`]; the empty product is the singleton.
pub fn product_of<'a, I>(factors: I) -> QuandleTable
where
    I: IntoIterator<Item = &'a QuandleTable>,
{
    let singleton = QuandleTable::from_rows_unchecked(vec![vec![0]]);
    factors
        .into_iter()
        .fold(singleton, |acc, q| direct_product(&acc, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn valid(rows: &[Vec<usize>]) -> bool {
        validate_quandle(rows).unwrap().valid
    }

    #[test]
    fn validate_examples() {
        assert!(valid(&[vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]));
        assert!(valid(&[vec![0, 1], vec![0, 1]]));
        // the trivial quandle written in the transposed `y ∗ x` layout is not
        // a table of symmetries: row 0 is constant
        let report = validate_quandle(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(
            report.violations,
            vec![
                AxiomViolation::NotBijective {
                    x: 0,
                    y1: 0,
                    y2: 1,
                    value: 0
                },
                AxiomViolation::NotBijective {
                    x: 1,
                    y1: 0,
                    y2: 1,
                    value: 1
                },
            ]
        );
        let report = validate_quandle(&[vec![1, 0], vec![1, 0]]).unwrap();
        assert!(!report.valid);
        assert!(report
            .violations
            .contains(&AxiomViolation::Idempotency { x: 0 }));
    }

    #[test]
    fn malformed_rejected_before_axioms() {
        assert_eq!(validate_quandle(&[]), Err(MalformedTable::Empty));
        assert_eq!(
            validate_quandle(&[vec![0, 1], vec![0]]),
            Err(MalformedTable::NotSquare {
                row: 1,
                len: 1,
                n: 2
            })
        );
        assert_eq!(
            validate_quandle(&[vec![0, 2], vec![0, 1]]),
            Err(MalformedTable::OutOfRange {
                row: 0,
                col: 1,
                value: 2,
                n: 2
            })
        );
    }

    #[test]
    fn bijectivity_and_distributivity_witnesses() {
        let report = validate_quandle(&[vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]]).unwrap();
        assert!(report.violations.contains(&AxiomViolation::NotBijective {
            x: 0,
            y1: 0,
            y2: 1,
            value: 0
        }));
        // permutation rows fixing the diagonal, but (Q3) fails
        let rows = vec![vec![0, 2, 1], vec![2, 1, 0], vec![0, 1, 2]];
        let report = validate_quandle(&rows).unwrap();
        assert!(!report.valid);
        assert!(report
            .violations
            .iter()
            .all(|v| matches!(v, AxiomViolation::SelfDistributivity { .. })));
        for v in &report.violations {
            if let AxiomViolation::SelfDistributivity { x, y, z } = *v {
                assert_ne!(rows[x][rows[y][z]], rows[rows[x][y]][rows[x][z]]);
            }
        }
    }

    #[test]
    fn trivial_examples() {
        assert_eq!(trivial_quandle(1).unwrap().rows(), &[vec![0]]);
        assert_eq!(
            trivial_quandle(2).unwrap().rows(),
            &[vec![0, 1], vec![0, 1]]
        );
        assert_eq!(
            trivial_quandle(3).unwrap().rows(),
            &[vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]]
        );
        assert!(trivial_quandle(0).is_err());
    }

    #[test]
    fn dihedral_examples() {
        assert_eq!(
            dihedral_quandle(3).unwrap().rows(),
            &[vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]
        );
        assert_eq!(dihedral_quandle(1).unwrap().rows(), &[vec![0]]);
        assert_eq!(dihedral_quandle(4).unwrap().row(1), &[2, 1, 0, 3]);
        assert!(dihedral_quandle(0).is_err());
    }

    #[test]
    fn affine_quandle_cases() {
        assert_eq!(affine_quandle(7, 6).unwrap(), dihedral_quandle(7).unwrap());
        let q = affine_quandle(5, 2).unwrap();
        // s_x(y) = 2y - x
        assert_eq!(q.act(0, 1), 2);
        assert_eq!(q.act(3, 1), 4);
        assert!(affine_quandle(6, 2).is_err());
    }

    #[test]
    fn constructors_are_quandles() {
        for n in 1..=20 {
            assert!(valid(trivial_quandle(n).unwrap().rows()));
            assert!(valid(dihedral_quandle(n).unwrap().rows()));
        }
        for n in 2..=12 {
            for t in 1..n {
                if let Ok(q) = affine_quandle(n, t) {
                    assert!(valid(q.rows()), "affine({n},{t})");
                }
            }
        }
    }

    #[test]
    fn product_examples() {
        let x = dihedral_quandle(5).unwrap();
        let one = trivial_quandle(1).unwrap();
        assert_eq!(direct_product(&one, &x), x);
        assert_eq!(direct_product(&x, &one), x);
        let t = direct_product(&trivial_quandle(2).unwrap(), &trivial_quandle(2).unwrap());
        assert_eq!(t, trivial_quandle(4).unwrap());
        let p = direct_product(&dihedral_quandle(3).unwrap(), &x);
        assert_eq!(p.len(), 15);
        assert!(valid(p.rows()));
        // (x, y) = (1, 2) acting on (2, 4): (2·1-2, 2·2-4) = (0, 0)
        assert_eq!(p.act(5 + 2, 2 * 5 + 4), 0);
    }

    #[test]
    fn relabel_preserves_axioms() {
        let q = affine_quandle(5, 3).unwrap();
        let perm = Permutation::new(vec![3, 0, 4, 1, 2]).unwrap();
        let r = q.relabel(&perm);
        assert!(valid(r.rows()));
        assert_eq!(r.relabel(&perm.inverse()), q);
    }

    #[test]
    fn table_json_shape() {
        let json = serde_json::to_string(&dihedral_quandle(3).unwrap()).unwrap();
        assert_eq!(json, r#"{"n":3,"table":[[0,2,1],[2,1,0],[1,0,2]]}"#);
    }
}
