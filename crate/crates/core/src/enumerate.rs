//! Exhaustive enumeration of quandles of small order.
//!
//! Rows are filled in index order; candidate rows are the permutations
//! fixing the diagonal entry, in lexicographic order, so tables come out in
//! lexicographic order. After each row the pairs `(x, y)` whose rows `x`,
//! `y` and `s_x(y)` are all known are checked against
//! `s_x ∘ s_y = s_{s_x(y)} ∘ s_x`. The same identity determines the row of
//! `s_x(y)` (and of `s_x⁻¹(t)` for known `t`) ahead of time; such forced rows
//! are the only candidate tried and conflicting forcings prune early.
//!
//! This is the brute-force reference for the classification and shares no
//! code with it beyond the final iso-class reduction.

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::analysis::{is_connected, is_flat};
use crate::iso::are_isomorphic;
use crate::quandle::QuandleTable;

pub const DEFAULT_MAX_ORDER: usize = 6;
pub const DEFAULT_BUDGET: u64 = 20_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("order must be positive")]
    ZeroOrder,
    #[error("order {order} exceeds the enumeration cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Limit on candidate rows tried, across all workers.
    pub budget: u64,
    /// Largest order accepted.
    pub max_order: usize,
    /// Worker threads; the search is split by the choice of row 0.
    pub threads: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            budget: DEFAULT_BUDGET,
            max_order: DEFAULT_MAX_ORDER,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl EnumerationOptions {
    pub fn with_budget(budget: u64) -> Self {
        EnumerationOptions {
            budget,
            ..Default::default()
        }
    }
}

/// Permutations of `0..n` with `p[fixed] = fixed`, lexicographic.
fn rows_fixing(n: usize, fixed: usize) -> Vec<Vec<u8>> {
    fn go(n: usize, fixed: usize, prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        let pos = prefix.len();
        if pos == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if used[v] || (pos == fixed) != (v == fixed) {
                continue;
            }
            used[v] = true;
            prefix.push(v as u8);
            go(n, fixed, prefix, used, out);
            prefix.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    go(
        n,
        fixed,
        &mut Vec::with_capacity(n),
        &mut vec![false; n],
        &mut out,
    );
    out
}

struct Searcher<'a> {
    n: usize,
    candidates: Vec<Vec<Vec<u8>>>,
    rows: Vec<Vec<u8>>,
    inverses: Vec<Vec<u8>>,
    nodes: &'a AtomicU64,
    budget: u64,
}

impl Searcher<'_> {
    fn tick(&self) -> Result<(), EnumerationError> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            Err(EnumerationError::BudgetExhausted {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    /// `a ∘ b ∘ c⁻¹` given `c⁻¹`.
    fn conj(&self, a: &[u8], b: &[u8], c_inv: &[u8]) -> Vec<u8> {
        c_inv.iter().map(|&z| a[b[z as usize] as usize]).collect()
    }

    /// With rows `0..=r` set, checks every newly decidable pair and returns
    /// the forced value of each later row, or `None` on a conflict.
    fn check_and_force(&self, r: usize) -> Option<Vec<Option<Vec<u8>>>> {
        let n = self.n;
        let rows = &self.rows;
        let mut forced: Vec<Option<Vec<u8>>> = vec![None; n];
        let mut force = |t: usize, row: Vec<u8>| -> bool {
            match &forced[t] {
                Some(prev) => *prev == row,
                None => {
                    forced[t] = Some(row);
                    true
                }
            }
        };
        for x in 0..=r {
            for y in 0..=r {
                // s_t = s_x s_y s_x⁻¹ for t = s_x(y)
                let t = rows[x][y] as usize;
                if t <= r {
                    if (x == r || y == r || t == r)
                        && self.conj(&rows[x], &rows[y], &self.inverses[x]) != rows[t]
                    {
                        return None;
                    }
                } else if !force(t, self.conj(&rows[x], &rows[y], &self.inverses[x])) {
                    return None;
                }
            }
            // s_x(u) = t with t known and u not: s_u = s_x⁻¹ s_t s_x
            for t in 0..=r {
                let u = self.inverses[x][t] as usize;
                if u > r {
                    let row: Vec<u8> = (0..n)
                        .map(|z| self.inverses[x][rows[t][rows[x][z] as usize] as usize])
                        .collect();
                    if !force(u, row) {
                        return None;
                    }
                }
            }
        }
        Some(forced)
    }

    fn run(
        &mut self,
        r: usize,
        forced_here: Option<Vec<u8>>,
        emit: &mut dyn FnMut(&[Vec<u8>]),
    ) -> Result<(), EnumerationError> {
        let n = self.n;
        let options: Vec<Vec<u8>> = match forced_here {
            Some(row) => {
                if row[r] as usize == r {
                    vec![row]
                } else {
                    Vec::new()
                }
            }
            None => self.candidates[r].clone(),
        };
        for cand in options {
            self.tick()?;
            let mut inv = vec![0u8; n];
            for (i, &v) in cand.iter().enumerate() {
                inv[v as usize] = i as u8;
            }
            self.rows[r] = cand;
            self.inverses[r] = inv;
            let Some(mut forced) = self.check_and_force(r) else {
                continue;
            };
            if r + 1 == n {
                emit(&self.rows);
            } else {
                let next = forced[r + 1].take();
                self.run(r + 1, next, emit)?;
            }
        }
        Ok(())
    }
}

fn to_table(rows: &[Vec<u8>]) -> QuandleTable {
    QuandleTable::from_rows_unchecked(
        rows.iter()
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect(),
    )
}

fn check_order(n: usize, opts: &EnumerationOptions) -> Result<(), EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::ZeroOrder);
    }
    if n > opts.max_order || n > u8::MAX as usize {
        return Err(EnumerationError::OrderTooLarge {
            order: n,
            cap: opts.max_order.min(u8::MAX as usize),
        });
    }
    Ok(())
}

fn search_branch(
    n: usize,
    first_rows: &[Vec<u8>],
    nodes: &AtomicU64,
    budget: u64,
) -> Result<Vec<QuandleTable>, EnumerationError> {
    let candidates: Vec<Vec<Vec<u8>>> = (0..n).map(|r| rows_fixing(n, r)).collect();
    let mut searcher = Searcher {
        n,
        candidates,
        rows: vec![vec![0; n]; n],
        inverses: vec![vec![0; n]; n],
        nodes,
        budget,
    };
    searcher.candidates[0] = first_rows.to_vec();
    let mut out = Vec::new();
    searcher.run(0, None, &mut |rows| out.push(to_table(rows)))?;
    Ok(out)
}

/// Every quandle on `{0..n-1}`, each exactly once, in lexicographic order.
///
/// The search is split by row 0 across `opts.threads` workers and merged
/// back in order, so the output does not depend on scheduling. On budget
/// exhaustion nothing is returned.
pub fn enumerate_quandles(
    n: usize,
    opts: &EnumerationOptions,
) -> Result<Vec<QuandleTable>, EnumerationError> {
    check_order(n, opts)?;
    let first_rows = rows_fixing(n, 0);
    let threads = opts.threads.clamp(1, first_rows.len());
    let nodes = AtomicU64::new(0);
    if threads == 1 {
        return search_branch(n, &first_rows, &nodes, opts.budget);
    }
    let chunk = first_rows.len().div_ceil(threads);
    let results: Vec<Result<Vec<QuandleTable>, EnumerationError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = first_rows
            .chunks(chunk)
            .map(|part| {
                let nodes = &nodes;
                scope.spawn(move || search_branch(n, part, nodes, opts.budget))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Sequential enumeration that hands each table to `visit` as it is found.
pub fn for_each_quandle(
    n: usize,
    opts: &EnumerationOptions,
    mut visit: impl FnMut(QuandleTable),
) -> Result<(), EnumerationError> {
    check_order(n, opts)?;
    let nodes = AtomicU64::new(0);
    let candidates: Vec<Vec<Vec<u8>>> = (0..n).map(|r| rows_fixing(n, r)).collect();
    let mut searcher = Searcher {
        n,
        candidates,
        rows: vec![vec![0; n]; n],
        inverses: vec![vec![0; n]; n],
        nodes: &nodes,
        budget: opts.budget,
    };
    searcher.run(0, None, &mut |rows| visit(to_table(rows)))
}

/// Representatives of the isomorphism classes in `tables`, keeping the
/// first member of each class.
pub fn isomorphism_classes(tables: &[QuandleTable]) -> Vec<QuandleTable> {
    let mut reps: Vec<QuandleTable> = Vec::new();
    for t in tables {
        if !reps.iter().any(|r| are_isomorphic(r, t)) {
            reps.push(t.clone());
        }
    }
    reps
}

/// One representative per isomorphism class of flat connected quandles of
/// order `n`, the lexicographically smallest table of its class.
pub fn enumerate_flat_connected_classes(
    n: usize,
    opts: &EnumerationOptions,
) -> Result<Vec<QuandleTable>, EnumerationError> {
    let all = enumerate_quandles(n, opts)?;
    let flat_connected: Vec<QuandleTable> = all
        .into_iter()
        .filter(|q| is_connected(q) && is_flat(q))
        .collect();
    Ok(isomorphism_classes(&flat_connected))
}

/// All quandles of order `n` reduced to isomorphism classes.
pub fn enumerate_classes(
    n: usize,
    opts: &EnumerationOptions,
) -> Result<Vec<QuandleTable>, EnumerationError> {
    Ok(isomorphism_classes(&enumerate_quandles(n, opts)?))
}
