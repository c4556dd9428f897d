//! Inner and displacement groups, and the structural predicates built on them.

use serde::{Deserialize, Serialize};

use crate::iso;
use crate::perm::{self, Permutation, PermutationGroup};
use crate::quandle::QuandleTable;

/// `Inn(X)`, generated by the symmetries `s_x`.
pub fn inner_group(q: &QuandleTable) -> PermutationGroup {
    perm::closure(&q.symmetries()).expect("symmetries generate a subgroup of S_n")
}

/// The products `s_x ∘ s_y` over all pairs, deduplicated.
pub fn displacement_generators(q: &QuandleTable) -> Vec<Permutation> {
    let s = q.symmetries();
    let mut gens: Vec<Permutation> = s
        .iter()
        .flat_map(|a| s.iter().map(move |b| a.then_unchecked(b)))
        .collect();
    gens.sort_unstable();
    gens.dedup();
    gens
}

/// The group of displacements `G⁰(X)`, generated by all `s_x ∘ s_y`.
pub fn displacement_group(q: &QuandleTable) -> PermutationGroup {
    perm::closure(&displacement_generators(q)).expect("displacements generate a subgroup of S_n")
}

/// Transitivity of `Inn(X)`.
///
/// Panics if the displacement group disagrees, since the two are equivalent
/// for every quandle.
pub fn is_connected(q: &QuandleTable) -> bool {
    let inner = perm::orbit(&q.symmetries(), 0).len() == q.len();
    let displaced = perm::orbit(&displacement_generators(q), 0).len() == q.len();
    assert_eq!(
        inner, displaced,
        "inner and displacement transitivity disagree on {q:?}"
    );
    inner
}

pub fn is_flat(q: &QuandleTable) -> bool {
    displacement_group(q).is_abelian()
}

pub fn is_involutive(q: &QuandleTable) -> bool {
    (0..q.len()).all(|x| (0..q.len()).all(|y| q.act(x, q.act(x, y)) == y))
}

/// Transitivity of `Aut(X)`.
pub fn is_homogeneous(q: &QuandleTable) -> bool {
    iso::automorphism_orbit(q, 0).len() == q.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub connected: bool,
    pub flat: bool,
    pub involutive: bool,
    pub homogeneous: bool,
    pub inn_order: usize,
    pub dis_order: usize,
}

pub fn analyze(q: &QuandleTable) -> AnalysisReport {
    let dis = displacement_group(q);
    AnalysisReport {
        n: q.len(),
        connected: is_connected(q),
        flat: dis.is_abelian(),
        involutive: is_involutive(q),
        homogeneous: is_homogeneous(q),
        inn_order: inner_group(q).order(),
        dis_order: dis.order(),
    }
}
