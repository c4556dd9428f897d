//! Homomorphisms, isomorphism search and automorphism groups.
//!
//! The search is plain backtracking over partial maps. Each new pair
//! `x ↦ u` is propagated through the homomorphism equation
//! `f(s_a(b)) = s_{f(a)}(f(b))` until a fixpoint or a conflict, so a
//! generating set of the source determines the rest of the map. Elements
//! may only be sent to elements with the same invariant vector: the cycle
//! type of their row, the number of symmetries fixing them, and the size of
//! their orbit under the inner group.

use std::collections::HashMap;

use thiserror::Error;

use crate::perm::{self, Permutation, PermutationGroup};
use crate::quandle::QuandleTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("map has {len} entries but the source has {expected} elements")]
    WrongLength { len: usize, expected: usize },
    #[error("image {value} of {point} is outside the target (size {target})")]
    OutOfRange {
        point: usize,
        value: usize,
        target: usize,
    },
}

/// Whether `f(s_x(y)) = s_{f(x)}(f(y))` for all `x, y`.
pub fn is_homomorphism(f: &[usize], x: &QuandleTable, y: &QuandleTable) -> Result<bool, IsoError> {
    if f.len() != x.len() {
        return Err(IsoError::WrongLength {
            len: f.len(),
            expected: x.len(),
        });
    }
    if let Some((point, &value)) = f.iter().enumerate().find(|(_, &v)| v >= y.len()) {
        return Err(IsoError::OutOfRange {
            point,
            value,
            target: y.len(),
        });
    }
    Ok((0..x.len()).all(|a| (0..x.len()).all(|b| f[x.act(a, b)] == y.act(f[a], f[b]))))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct ElementInvariant {
    cycle_type: Vec<usize>,
    fixers: usize,
    inner_orbit: usize,
}

fn invariants(q: &QuandleTable) -> Vec<ElementInvariant> {
    let n = q.len();
    let symmetries = q.symmetries();
    let mut orbit_size = vec![0; n];
    for x in 0..n {
        if orbit_size[x] == 0 {
            let orb = perm::orbit(&symmetries, x);
            for &i in &orb {
                orbit_size[i] = orb.len();
            }
        }
    }
    (0..n)
        .map(|x| ElementInvariant {
            cycle_type: symmetries[x].cycle_type(),
            fixers: (0..n).filter(|&y| q.act(y, x) == x).count(),
            inner_orbit: orbit_size[x],
        })
        .collect()
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    src: &'a QuandleTable,
    dst: &'a QuandleTable,
    class_src: Vec<u32>,
    class_dst: Vec<u32>,
    map: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl<'a> Search<'a> {
    /// `None` when the invariant multisets already differ.
    fn new(src: &'a QuandleTable, dst: &'a QuandleTable) -> Option<Self> {
        if src.len() != dst.len() {
            return None;
        }
        let mut ids: HashMap<ElementInvariant, u32> = HashMap::new();
        let mut classify = |invs: Vec<ElementInvariant>| -> Vec<u32> {
            invs.into_iter()
                .map(|inv| {
                    let next = ids.len() as u32;
                    *ids.entry(inv).or_insert(next)
                })
                .collect()
        };
        let class_src = classify(invariants(src));
        let class_dst = if std::ptr::eq(src, dst) {
            class_src.clone()
        } else {
            classify(invariants(dst))
        };
        let mut a = class_src.clone();
        let mut b = class_dst.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
        let n = src.len();
        Some(Search {
            src,
            dst,
            class_src,
            class_dst,
            map: vec![UNSET; n],
            used: vec![false; n],
            trail: Vec::with_capacity(n),
        })
    }

    fn set(&mut self, a: usize, u: usize) -> bool {
        if self.used[u] || self.class_src[a] != self.class_dst[u] {
            return false;
        }
        self.map[a] = u;
        self.used[u] = true;
        self.trail.push(a);
        true
    }

    fn undo(&mut self, len: usize) {
        while self.trail.len() > len {
            let a = self.trail.pop().unwrap();
            self.used[self.map[a]] = false;
            self.map[a] = UNSET;
        }
    }

    /// Assigns `a ↦ u` and propagates; on conflict the caller undoes.
    fn assign(&mut self, a: usize, u: usize) -> bool {
        if !self.set(a, u) {
            return false;
        }
        let mut next = self.trail.len() - 1;
        while next < self.trail.len() {
            let a = self.trail[next];
            next += 1;
            let known = self.trail.len();
            for i in 0..known {
                let b = self.trail[i];
                for (p, q) in [(a, b), (b, a)] {
                    let c = self.src.act(p, q);
                    let v = self.dst.act(self.map[p], self.map[q]);
                    if self.map[c] == UNSET {
                        if !self.set(c, v) {
                            return false;
                        }
                    } else if self.map[c] != v {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Depth-first over completions; `visit` returns false to stop.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let Some(a) = self.map.iter().position(|&m| m == UNSET) else {
            return visit(&self.map);
        };
        for u in 0..self.dst.len() {
            if self.used[u] || self.class_src[a] != self.class_dst[u] {
                continue;
            }
            let mark = self.trail.len();
            let keep_going = !self.assign(a, u) || self.run(visit);
            self.undo(mark);
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// A bijection `X → Y` that is a homomorphism, if one exists.
///
/// Candidates are tried in ascending index order, so `X` against itself
/// yields the identity.
pub fn find_isomorphism(x: &QuandleTable, y: &QuandleTable) -> Option<Permutation> {
    let mut search = Search::new(x, y)?;
    let mut found = None;
    search.run(&mut |m| {
        found = Some(m.to_vec());
        false
    });
    found.map(|m| {
        debug_assert_eq!(is_homomorphism(&m, x, y), Ok(true));
        Permutation::from_images_unchecked(m)
    })
}

pub fn are_isomorphic(x: &QuandleTable, y: &QuandleTable) -> bool {
    find_isomorphism(x, y).is_some()
}

/// An automorphism sending `from` to `to`, if any.
pub fn find_automorphism_mapping(q: &QuandleTable, from: usize, to: usize) -> Option<Permutation> {
    let mut search = Search::new(q, q)?;
    if !search.assign(from, to) {
        return None;
    }
    let mut found = None;
    search.run(&mut |m| {
        found = Some(m.to_vec());
        false
    });
    found.map(Permutation::from_images_unchecked)
}

/// Every automorphism, in lexicographic order.
pub fn automorphisms(q: &QuandleTable) -> Vec<Permutation> {
    let mut out = Vec::new();
    if let Some(mut search) = Search::new(q, q) {
        search.run(&mut |m| {
            out.push(Permutation::from_images_unchecked(m.to_vec()));
            true
        });
    }
    out
}

/// `Aut(X)` with its full element set.
pub fn automorphism_group(q: &QuandleTable) -> PermutationGroup {
    PermutationGroup::from_closed_set(q.len(), automorphisms(q))
}

/// The orbit of `point` under `Aut(X)`, found one target at a time without
/// enumerating the whole group.
pub fn automorphism_orbit(q: &QuandleTable, point: usize) -> Vec<usize> {
    let n = q.len();
    let mut gens = vec![Permutation::identity(n)];
    let mut orbit = vec![point];
    for target in 0..n {
        if orbit.binary_search(&target).is_ok() {
            continue;
        }
        if let Some(f) = find_automorphism_mapping(q, point, target) {
            gens.push(f);
            orbit = perm::orbit(&gens, point);
        }
    }
    orbit
}
