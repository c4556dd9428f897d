//! Classification of flat connected finite quandles.
//!
//! A flat connected finite quandle is isomorphic to a product of dihedral
//! quandles `R_q` of odd prime-power orders. [`classify_flat_connected`]
//! reads the orders off the primary decomposition of the displacement group
//! and returns an explicit isomorphism onto the product, checking every
//! intermediate certificate along the way.
//!
//! [`predicted_count`] assumes that different factor multisets give
//! non-isomorphic products; the test suite checks this order by order
//! rather than taking it for granted.

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{displacement_group, is_connected};
use crate::group::FiniteGroupTable;
use crate::io::to_json;
use crate::iso::{find_isomorphism, is_homomorphism};
use crate::perm::Permutation;
use crate::quandle::{dihedral_quandle, product_of, QuandleTable};
use crate::triplet::{triplet_from_quandle, FlatCertificates};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("not-flat: the displacement group is not commutative")]
    NotFlat,
    #[error("not-connected: the inner group is not transitive")]
    NotConnected,
    #[error("non-abelian group passed to abelian_invariants")]
    NonAbelian,
    #[error("even-factor-found: factors {factors:?} of a flat connected quandle; table: {dump}")]
    EvenFactor { factors: Vec<usize>, dump: String },
    #[error("internal error ({stage}) on a certified flat connected quandle; table: {dump}")]
    Internal { stage: &'static str, dump: String },
    #[error("order must be positive")]
    ZeroOrder,
}

impl ClassifyError {
    /// Short name of the certificate that failed.
    pub fn certificate(&self) -> &'static str {
        match self {
            ClassifyError::NotFlat => "not-flat",
            ClassifyError::NotConnected => "not-connected",
            ClassifyError::EvenFactor { .. } => "even-factor-found",
            ClassifyError::NonAbelian => "non-abelian",
            ClassifyError::Internal { .. } => "internal",
            ClassifyError::ZeroOrder => "zero-order",
        }
    }
}

/// Prime factorization as `(p, exponent)` pairs, ascending in `p`.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Some `(p, k)` with `q = p^k`, `k ≥ 1`.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    match factorize(q).as_slice() {
        &[(p, k)] => Some((p, k)),
        _ => None,
    }
}

pub fn is_odd_prime_power(q: usize) -> bool {
    matches!(prime_power(q), Some((p, _)) if p != 2)
}

/// The prime-power orders `q_i` with `G ≅ ∏ Z_{q_i}`, in descending order.
///
/// For each prime `p`, `c_k = #{g : g^(p^k) = e}` is `p^(e_k)`, and
/// `e_k - e_{k-1}` counts the cyclic factors of order at least `p^k`.
pub fn abelian_invariants(group: &FiniteGroupTable) -> Result<Vec<usize>, ClassifyError> {
    if !group.is_abelian() {
        return Err(ClassifyError::NonAbelian);
    }
    let e = group.identity();
    let mut factors = Vec::new();
    for (p, a) in factorize(group.order()) {
        // at_least[k-1] = number of factors of order >= p^k
        let mut at_least = Vec::new();
        let mut powers: Vec<usize> = (0..group.order()).collect();
        let mut prev = 0;
        while prev < a {
            powers = powers.iter().map(|&g| group.pow(g, p)).collect();
            let count = powers.iter().filter(|&&g| g == e).count();
            let exp = exact_log(count, p).expect("p-torsion of an abelian group is a p-group");
            at_least.push(exp - prev);
            prev = exp;
        }
        for (k, &n_k) in at_least.iter().enumerate() {
            let n_next = at_least.get(k + 1).copied().unwrap_or(0);
            let q = p.pow(k as u32 + 1);
            factors.extend(std::iter::repeat_n(q, (n_k - n_next) as usize));
        }
    }
    factors.sort_unstable_by(|a, b| b.cmp(a));
    Ok(factors)
}

fn exact_log(mut x: usize, p: usize) -> Option<u32> {
    let mut k = 0;
    while x > 1 {
        if !x.is_multiple_of(p) {
            return None;
        }
        x /= p;
        k += 1;
    }
    (x == 1).then_some(k)
}

/// Prime-power factors and an explicit isomorphism `X → ∏ R_{q_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatDecomposition {
    /// Descending; empty for the one-element quandle.
    pub factors: Vec<usize>,
    pub witness: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub factors: Vec<usize>,
    pub witness: Vec<usize>,
}

impl FlatDecomposition {
    pub fn report(&self) -> ClassificationReport {
        ClassificationReport {
            n: self.witness.degree(),
            factors: self.factors.clone(),
            witness: self.witness.images().to_vec(),
        }
    }
}

/// The product `R_{q_1} × ... × R_{q_k}` in the given order.
pub fn dihedral_product(factors: &[usize]) -> QuandleTable {
    let parts: Vec<QuandleTable> = factors
        .iter()
        .map(|&q| dihedral_quandle(q).expect("factors are positive"))
        .collect();
    product_of(&parts)
}

fn internal(stage: &'static str, q: &QuandleTable) -> ClassifyError {
    ClassifyError::Internal {
        stage,
        dump: to_json(q),
    }
}

/// Certifies `q` flat and connected, then decomposes it.
///
/// A failure after both certificates pass would contradict the
/// classification theorem; such failures come back as
/// [`ClassifyError::EvenFactor`] or [`ClassifyError::Internal`] carrying the
/// offending table.
pub fn classify_flat_connected(q: &QuandleTable) -> Result<FlatDecomposition, ClassifyError> {
    let n = q.len();
    let dis = displacement_group(q);
    if !dis.is_abelian() {
        return Err(ClassifyError::NotFlat);
    }
    if !is_connected(q) {
        return Err(ClassifyError::NotConnected);
    }

    let derived = triplet_from_quandle(q, 0, &dis).map_err(|_| internal("triplet", q))?;
    if derived.witness.is_none() {
        return Err(internal("triplet witness", q));
    }
    let FlatCertificates {
        group_abelian,
        subgroup_trivial,
        sigma_involutive,
        fix_trivial,
        sigma_is_inversion,
    } = derived.triplet.certificates();
    if !group_abelian {
        return Err(internal("G abelian", q));
    }
    if !subgroup_trivial {
        return Err(internal("K trivial", q));
    }
    if !sigma_involutive {
        return Err(internal("sigma involutive", q));
    }
    if !fix_trivial {
        return Err(internal("Fix(sigma) trivial", q));
    }
    if !sigma_is_inversion {
        return Err(internal("sigma is inversion", q));
    }

    let factors = abelian_invariants(derived.triplet.group())?;
    if factors.iter().product::<usize>() != n {
        return Err(internal("factor product", q));
    }
    if !factors.iter().all(|&f| is_odd_prime_power(f)) {
        return Err(ClassifyError::EvenFactor {
            factors,
            dump: to_json(q),
        });
    }

    let target = dihedral_product(&factors);
    let witness = find_isomorphism(q, &target).ok_or_else(|| internal("isomorphism", q))?;
    let back = witness.inverse();
    let forward_ok = is_homomorphism(witness.images(), q, &target) == Ok(true);
    let backward_ok = is_homomorphism(back.images(), &target, q) == Ok(true);
    if !(forward_ok && backward_ok) {
        return Err(internal("witness check", q));
    }
    Ok(FlatDecomposition { factors, witness })
}

/// Number of integer partitions of `a`.
pub fn partitions(a: usize) -> u64 {
    let mut ways = vec![0u64; a + 1];
    ways[0] = 1;
    for part in 1..=a {
        for total in part..=a {
            ways[total] += ways[total - part];
        }
    }
    ways[a]
}

/// How many flat connected quandles of order `n` there are up to isomorphism.
pub fn predicted_count(n: usize) -> Result<u64, ClassifyError> {
    if n == 0 {
        return Err(ClassifyError::ZeroOrder);
    }
    if n.is_multiple_of(2) {
        return Ok(0);
    }
    Ok(factorize(n)
        .into_iter()
        .map(|(_, a)| partitions(a as usize))
        .product())
}

/// Partitions of `a` with parts in descending order.
fn partition_list(a: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(a, a, &mut Vec::new(), &mut out);
    out
}

/// Every multiset of odd prime powers with product `n`.
///
/// Each multiset is sorted descending and the list is in descending
/// lexicographic order, e.g. `45 → [[9, 5], [5, 3, 3]]`. Even `n` gives an
/// empty list and `n = 1` the single empty multiset.
pub fn factor_multisets(n: usize) -> Vec<Vec<usize>> {
    if n == 0 || n.is_multiple_of(2) {
        return Vec::new();
    }
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, a) in factorize(n) {
        let choices: Vec<Vec<usize>> = partition_list(a as usize)
            .into_iter()
            .map(|parts| parts.into_iter().map(|k| p.pow(k as u32)).collect())
            .collect();
        acc = acc
            .iter()
            .flat_map(|base| {
                choices.iter().map(move |c| {
                    let mut m = base.clone();
                    m.extend_from_slice(c);
                    m
                })
            })
            .collect();
    }
    for m in &mut acc {
        m.sort_unstable_by(|a, b| b.cmp(a));
    }
    acc.sort_unstable_by(|a, b| b.cmp(a));
    acc
}

/// One product of dihedral quandles per multiset of [`factor_multisets`].
pub fn build_representatives(n: usize) -> Vec<QuandleTable> {
    factor_multisets(n)
        .iter()
        .map(|f| dihedral_product(f))
        .collect()
}
