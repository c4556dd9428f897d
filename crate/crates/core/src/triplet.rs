//! Quandle triplets `(G, K, σ)` and the coset quandles they define.
//!
//! A triplet is a finite group `G`, a subgroup `K` and an automorphism `σ`
//! fixing `K` pointwise. On the left cosets `G/K` the rule
//! `s_[g]([h]) = [g·σ(g⁻¹h)]` is a homogeneous quandle. Conversely a
//! quandle with a transitive group of automorphisms that is stable under
//! conjugation by a symmetry gives a triplet back, and the orbit map is an
//! isomorphism.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroupTable, GroupError};
use crate::iso::is_homomorphism;
use crate::perm::{Permutation, PermutationGroup};
use crate::quandle::{QuandleError, QuandleTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripletError {
    #[error("group table: {0}")]
    Group(#[from] GroupError),
    #[error("subgroup index {index} out of range for order {order}")]
    SubgroupOutOfRange { index: usize, order: usize },
    #[error("automorphism has {len} entries, group has order {order}")]
    SigmaLength { len: usize, order: usize },
    #[error("automorphism image {value} out of range for order {order}")]
    SigmaOutOfRange { value: usize, order: usize },
    #[error("not a quandle triplet: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<TripletViolation>),
    #[error("group degree {group} does not match quandle order {quandle}")]
    DegreeMismatch { group: usize, quandle: usize },
    #[error("basepoint {0} out of range")]
    BasepointOutOfRange(usize),
    #[error("generator {0:?} is not an automorphism of the quandle")]
    NotAutomorphism(Permutation),
    #[error("conjugating generator {0:?} by the basepoint symmetry leaves the group")]
    NotConjugationStable(Permutation),
    #[error("group does not act transitively, so there is no isomorphism witness")]
    NotTransitive,
    #[error("coset table failed the quandle axioms: {0}")]
    NotAQuandle(QuandleError),
    #[error("orbit map is not an isomorphism onto the quandle")]
    WitnessFailed,
    #[error("phi map needs {0}")]
    PhiHypothesis(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum TripletViolation {
    SubgroupMissingIdentity,
    SubgroupNotClosed { a: usize, b: usize },
    SubgroupMissingInverse { a: usize },
    SigmaNotBijective { value: usize },
    SigmaNotHomomorphism { g: usize, h: usize },
    SubgroupNotFixed { k: usize },
}

impl std::fmt::Display for TripletViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            TripletViolation::SubgroupMissingIdentity => write!(f, "K does not contain e"),
            TripletViolation::SubgroupNotClosed { a, b } => {
                write!(f, "K not closed: {a}·{b} is outside K")
            }
            TripletViolation::SubgroupMissingInverse { a } => {
                write!(f, "K lacks the inverse of {a}")
            }
            TripletViolation::SigmaNotBijective { value } => {
                write!(f, "sigma hits {value} twice")
            }
            TripletViolation::SigmaNotHomomorphism { g, h } => {
                write!(f, "sigma(g·h) != sigma(g)·sigma(h) at ({g}, {h})")
            }
            TripletViolation::SubgroupNotFixed { k } => write!(f, "sigma moves {k} in K"),
        }
    }
}

/// An automorphism of a [`FiniteGroupTable`], as an image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupAutomorphism {
    map: Vec<usize>,
}

impl GroupAutomorphism {
    /// Unchecked; [`validate_triplet`] or [`GroupAutomorphism::violations`]
    /// decide validity.
    pub fn from_map(map: Vec<usize>) -> Self {
        GroupAutomorphism { map }
    }

    pub fn identity(order: usize) -> Self {
        GroupAutomorphism {
            map: (0..order).collect(),
        }
    }

    /// `g ↦ g⁻¹`, an automorphism exactly when the group is abelian.
    pub fn inversion(group: &FiniteGroupTable) -> Self {
        GroupAutomorphism {
            map: group.inverses().to_vec(),
        }
    }

    /// `g ↦ a·g·a⁻¹`.
    pub fn conjugation(group: &FiniteGroupTable, a: usize) -> Self {
        let ai = group.inv(a);
        GroupAutomorphism {
            map: (0..group.order())
                .map(|g| group.mul(group.mul(a, g), ai))
                .collect(),
        }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn is_involutive(&self) -> bool {
        self.map.iter().enumerate().all(|(g, &h)| self.map[h] == g)
    }

    /// `σ₁ × σ₂` with the flattening of [`FiniteGroupTable::direct_product`].
    pub fn product(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        let m2 = other.map.len();
        GroupAutomorphism {
            map: (0..self.map.len() * m2)
                .map(|g| self.map[g / m2] * m2 + other.map[g % m2])
                .collect(),
        }
    }

    pub fn violations(
        &self,
        group: &FiniteGroupTable,
    ) -> Result<Vec<TripletViolation>, TripletError> {
        let m = group.order();
        check_sigma_shape(&self.map, m)?;
        let mut out = Vec::new();
        let mut hit = vec![false; m];
        for &v in &self.map {
            if std::mem::replace(&mut hit[v], true) {
                out.push(TripletViolation::SigmaNotBijective { value: v });
                break;
            }
        }
        'outer: for g in 0..m {
            for h in 0..m {
                if self.map[group.mul(g, h)] != group.mul(self.map[g], self.map[h]) {
                    out.push(TripletViolation::SigmaNotHomomorphism { g, h });
                    break 'outer;
                }
            }
        }
        Ok(out)
    }
}

fn check_sigma_shape(map: &[usize], order: usize) -> Result<(), TripletError> {
    if map.len() != order {
        return Err(TripletError::SigmaLength {
            len: map.len(),
            order,
        });
    }
    if let Some(&value) = map.iter().find(|&&v| v >= order) {
        return Err(TripletError::SigmaOutOfRange { value, order });
    }
    Ok(())
}

/// `Fix(σ, G)`, ascending.
pub fn fix_set(sigma: &GroupAutomorphism, group: &FiniteGroupTable) -> Vec<usize> {
    (0..group.order())
        .filter(|&g| sigma.apply(g) == g)
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TripletReport {
    pub valid: bool,
    pub violations: Vec<TripletViolation>,
}

/// Checks that `K` is a subgroup, `σ` an automorphism, and `K ⊆ Fix(σ, G)`.
///
/// Index-range problems are errors; failed axioms are listed in the report.
pub fn validate_triplet(
    group: &FiniteGroupTable,
    subgroup: &[usize],
    sigma: &GroupAutomorphism,
) -> Result<TripletReport, TripletError> {
    let m = group.order();
    if let Some(&index) = subgroup.iter().find(|&&k| k >= m) {
        return Err(TripletError::SubgroupOutOfRange { index, order: m });
    }
    let mut in_k = vec![false; m];
    for &k in subgroup {
        in_k[k] = true;
    }
    let mut violations = Vec::new();
    if !in_k[group.identity()] {
        violations.push(TripletViolation::SubgroupMissingIdentity);
    }
    'closed: for &a in subgroup {
        for &b in subgroup {
            if !in_k[group.mul(a, b)] {
                violations.push(TripletViolation::SubgroupNotClosed { a, b });
                break 'closed;
            }
        }
    }
    if let Some(&a) = subgroup.iter().find(|&&a| !in_k[group.inv(a)]) {
        violations.push(TripletViolation::SubgroupMissingInverse { a });
    }
    violations.extend(sigma.violations(group)?);
    if let Some(&k) = subgroup.iter().find(|&&k| sigma.apply(k) != k) {
        violations.push(TripletViolation::SubgroupNotFixed { k });
    }
    Ok(TripletReport {
        valid: violations.is_empty(),
        violations,
    })
}

/// A validated quandle triplet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuandleTriplet {
    group: FiniteGroupTable,
    subgroup: Vec<usize>,
    sigma: GroupAutomorphism,
}

impl QuandleTriplet {
    pub fn new(
        group: FiniteGroupTable,
        mut subgroup: Vec<usize>,
        sigma: GroupAutomorphism,
    ) -> Result<Self, TripletError> {
        subgroup.sort_unstable();
        subgroup.dedup();
        let report = validate_triplet(&group, &subgroup, &sigma)?;
        if !report.valid {
            return Err(TripletError::Invalid(report.violations));
        }
        Ok(QuandleTriplet {
            group,
            subgroup,
            sigma,
        })
    }

    /// `(Z_{q1} × ... × Z_{qk}, {0}, -id)`.
    pub fn abelian_negation(factors: &[usize]) -> Self {
        let group = FiniteGroupTable::abelian(factors);
        let sigma = GroupAutomorphism::inversion(&group);
        QuandleTriplet {
            subgroup: vec![group.identity()],
            group,
            sigma,
        }
    }

    pub fn group(&self) -> &FiniteGroupTable {
        &self.group
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn sigma(&self) -> &GroupAutomorphism {
        &self.sigma
    }

    pub fn fix_set(&self) -> Vec<usize> {
        fix_set(&self.sigma, &self.group)
    }

    pub fn has_trivial_subgroup(&self) -> bool {
        self.subgroup == [self.group.identity()]
    }

    /// The properties a triplet derived from a flat connected finite quandle
    /// must have.
    pub fn certificates(&self) -> FlatCertificates {
        let g = &self.group;
        FlatCertificates {
            group_abelian: g.is_abelian(),
            subgroup_trivial: self.has_trivial_subgroup(),
            sigma_involutive: self.sigma.is_involutive(),
            fix_trivial: self.fix_set() == [g.identity()],
            sigma_is_inversion: (0..g.order()).all(|x| self.sigma.apply(x) == g.inv(x)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatCertificates {
    pub group_abelian: bool,
    pub subgroup_trivial: bool,
    pub sigma_involutive: bool,
    pub fix_trivial: bool,
    pub sigma_is_inversion: bool,
}

impl FlatCertificates {
    pub fn all(&self) -> bool {
        self.group_abelian
            && self.subgroup_trivial
            && self.sigma_involutive
            && self.fix_trivial
            && self.sigma_is_inversion
    }
}

/// The coset quandle `Q(G, K, σ)` together with its labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetQuandle {
    pub table: QuandleTable,
    /// `representatives[c]` is the smallest group index in coset `c`.
    pub representatives: Vec<usize>,
    /// `coset_of[g]` is the coset containing `g`.
    pub coset_of: Vec<usize>,
}

/// Builds `Q(G, K, σ)` on left cosets, numbered by smallest representative.
pub fn quandle_from_triplet(t: &QuandleTriplet) -> Result<CosetQuandle, TripletError> {
    let g = &t.group;
    let m = g.order();
    let mut coset_of = vec![usize::MAX; m];
    let mut representatives = Vec::new();
    for a in 0..m {
        if coset_of[a] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(a);
        for &k in &t.subgroup {
            coset_of[g.mul(a, k)] = c;
        }
    }
    let rows = representatives
        .iter()
        .map(|&a| {
            let ai = g.inv(a);
            representatives
                .iter()
                .map(|&b| coset_of[g.mul(a, t.sigma.apply(g.mul(ai, b)))])
                .collect()
        })
        .collect();
    let table = QuandleTable::new(rows).map_err(TripletError::NotAQuandle)?;
    Ok(CosetQuandle {
        table,
        representatives,
        coset_of,
    })
}

/// A triplet recovered from a quandle and a group of its automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripletDerivation {
    pub triplet: QuandleTriplet,
    /// The permutation behind each abstract group index.
    pub elements: Vec<Permutation>,
    pub basepoint: usize,
    /// `witness[c] = g_c(basepoint)`: an isomorphism from `Q(G, K, σ)` onto
    /// the quandle, present when the group is transitive.
    pub witness: Option<Permutation>,
}

/// `(G, G_x, g ↦ s_x g s_x⁻¹)` for a group `G` of automorphisms.
///
/// The automorphism and conjugation-stability hypotheses are checked on the
/// generators. When `G` is transitive the orbit map is also built and
/// checked to be an isomorphism.
pub fn triplet_from_quandle(
    q: &QuandleTable,
    basepoint: usize,
    group: &PermutationGroup,
) -> Result<TripletDerivation, TripletError> {
    if group.degree() != q.len() {
        return Err(TripletError::DegreeMismatch {
            group: group.degree(),
            quandle: q.len(),
        });
    }
    if basepoint >= q.len() {
        return Err(TripletError::BasepointOutOfRange(basepoint));
    }
    let sx = q.symmetry(basepoint);
    for gen in group.generators() {
        if !is_homomorphism(gen.images(), q, q).expect("degrees already match") {
            return Err(TripletError::NotAutomorphism(gen.clone()));
        }
        if !group.contains(&sx.conjugate(gen)) {
            return Err(TripletError::NotConjugationStable(gen.clone()));
        }
    }

    let elements = group.elements().to_vec();
    let table = FiniteGroupTable::from_permutation_group(group);
    let subgroup: Vec<usize> = (0..elements.len())
        .filter(|&i| elements[i].apply(basepoint) == basepoint)
        .collect();
    let sigma = GroupAutomorphism::from_map(
        elements
            .iter()
            .map(|g| group.index_of(&sx.conjugate(g)).expect("stability checked"))
            .collect(),
    );
    let triplet = QuandleTriplet::new(table, subgroup, sigma)?;

    let witness = if group.is_transitive() {
        let coset = quandle_from_triplet(&triplet)?;
        let images: Vec<usize> = coset
            .representatives
            .iter()
            .map(|&r| elements[r].apply(basepoint))
            .collect();
        let witness = Permutation::new(images).map_err(|_| TripletError::WitnessFailed)?;
        if !is_homomorphism(witness.images(), &coset.table, q).unwrap_or(false) {
            return Err(TripletError::WitnessFailed);
        }
        Some(witness)
    } else {
        None
    };

    Ok(TripletDerivation {
        triplet,
        elements,
        basepoint,
        witness,
    })
}

/// Like [`triplet_from_quandle`], but a missing witness is an error.
pub fn triplet_with_witness(
    q: &QuandleTable,
    basepoint: usize,
    group: &PermutationGroup,
) -> Result<(TripletDerivation, Permutation), TripletError> {
    let d = triplet_from_quandle(q, basepoint, group)?;
    let w = d.witness.clone().ok_or(TripletError::NotTransitive)?;
    Ok((d, w))
}

/// The triplet of a quandle from its displacement group.
pub fn displacement_triplet(
    q: &QuandleTable,
    basepoint: usize,
) -> Result<TripletDerivation, TripletError> {
    triplet_from_quandle(q, basepoint, &crate::analysis::displacement_group(q))
}

/// `(G₁ × G₂, K₁ × K₂, σ₁ × σ₂)`.
pub fn triplet_product(a: &QuandleTriplet, b: &QuandleTriplet) -> QuandleTriplet {
    let m2 = b.group.order();
    let mut subgroup: Vec<usize> = a
        .subgroup
        .iter()
        .flat_map(|&k1| b.subgroup.iter().map(move |&k2| k1 * m2 + k2))
        .collect();
    subgroup.sort_unstable();
    QuandleTriplet {
        group: a.group.direct_product(&b.group),
        subgroup,
        sigma: a.sigma.product(&b.sigma),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiMap {
    /// `image[g] = g·σ(g⁻¹)`.
    pub values: Vec<usize>,
    /// The distinct values, ascending.
    pub image: Vec<usize>,
    pub surjective: bool,
}

/// `g ↦ g·σ(g⁻¹)` for triplets with `K = {e}`, `G` abelian and `σ²= id`.
pub fn phi_map(t: &QuandleTriplet) -> Result<PhiMap, TripletError> {
    let g = &t.group;
    if !t.has_trivial_subgroup() {
        return Err(TripletError::PhiHypothesis("a trivial subgroup K"));
    }
    if !g.is_abelian() {
        return Err(TripletError::PhiHypothesis("an abelian group"));
    }
    if !t.sigma.is_involutive() {
        return Err(TripletError::PhiHypothesis("an involutive automorphism"));
    }
    let values: Vec<usize> = (0..g.order())
        .map(|x| g.mul(x, t.sigma.apply(g.inv(x))))
        .collect();
    let mut image = values.clone();
    image.sort_unstable();
    image.dedup();
    let surjective = image.len() == g.order();
    Ok(PhiMap {
        values,
        image,
        surjective,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripletParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("bad triplet description: {0}")]
    Schema(String),
    #[error("declared order {declared} but the table has {rows} rows")]
    OrderMismatch { declared: usize, rows: usize },
    #[error(transparent)]
    Triplet(#[from] TripletError),
}

/// The explicit serial form of a triplet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripletJson {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(rename = "K")]
    pub subgroup: Vec<usize>,
    pub sigma: Vec<usize>,
}

impl From<&QuandleTriplet> for TripletJson {
    fn from(t: &QuandleTriplet) -> Self {
        TripletJson {
            order: t.group.order(),
            mul: t.group.table().to_vec(),
            subgroup: t.subgroup.clone(),
            sigma: t.sigma.map.clone(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AbelianShorthand {
    cyclic_factors: Vec<usize>,
    #[serde(rename = "K")]
    subgroup: String,
    sigma: String,
}

/// Parses the explicit `{"order", "mul", "K", "sigma"}` form or the
/// shorthand `{"cyclic_factors": [...], "K": "trivial", "sigma": "negation"}`.
pub fn parse_triplet(input: &str) -> Result<QuandleTriplet, TripletParseError> {
    let value: serde_json::Value =
        serde_json::from_str(input).map_err(|e| TripletParseError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
    let schema = |e: serde_json::Error| TripletParseError::Schema(e.to_string());
    if value.get("cyclic_factors").is_some() {
        let s: AbelianShorthand = serde_json::from_value(value).map_err(schema)?;
        if s.subgroup != "trivial" {
            return Err(TripletParseError::Schema(format!(
                "shorthand K must be \"trivial\", found {:?}",
                s.subgroup
            )));
        }
        if s.sigma != "negation" {
            return Err(TripletParseError::Schema(format!(
                "shorthand sigma must be \"negation\", found {:?}",
                s.sigma
            )));
        }
        if s.cyclic_factors.contains(&0) {
            return Err(TripletParseError::Schema(
                "cyclic factors must be positive".into(),
            ));
        }
        return Ok(QuandleTriplet::abelian_negation(&s.cyclic_factors));
    }
    let e: TripletJson = serde_json::from_value(value).map_err(schema)?;
    if e.mul.len() != e.order {
        return Err(TripletParseError::OrderMismatch {
            declared: e.order,
            rows: e.mul.len(),
        });
    }
    let group = FiniteGroupTable::new(e.mul).map_err(TripletError::from)?;
    Ok(QuandleTriplet::new(
        group,
        e.subgroup,
        GroupAutomorphism::from_map(e.sigma),
    )?)
}

pub fn triplet_to_json(t: &QuandleTriplet) -> String {
    serde_json::to_string(&TripletJson::from(t)).expect("triplets always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{displacement_group, is_connected, is_involutive};
    use crate::iso::{automorphism_group, find_isomorphism};
    use crate::quandle::{dihedral_quandle, direct_product, trivial_quandle};

    fn negation(n: usize) -> QuandleTriplet {
        QuandleTriplet::abelian_negation(&[n])
    }

    #[test]
    fn fix_set_examples() {
        let z5 = FiniteGroupTable::cyclic(5);
        assert_eq!(
            fix_set(&GroupAutomorphism::identity(5), &z5),
            vec![0, 1, 2, 3, 4]
        );
        assert_eq!(fix_set(&GroupAutomorphism::inversion(&z5), &z5), vec![0]);
        let z6 = FiniteGroupTable::cyclic(6);
        assert_eq!(fix_set(&GroupAutomorphism::inversion(&z6), &z6), vec![0, 3]);
    }

    #[test]
    fn validate_examples() {
        for n in 1..10 {
            let z = FiniteGroupTable::cyclic(n);
            let report = validate_triplet(&z, &[0], &GroupAutomorphism::inversion(&z)).unwrap();
            assert!(report.valid);
        }
        let z6 = FiniteGroupTable::cyclic(6);
        assert!(
            validate_triplet(&z6, &[0, 3], &GroupAutomorphism::inversion(&z6))
                .unwrap()
                .valid
        );

        let z5 = FiniteGroupTable::cyclic(5);
        let report = validate_triplet(&z5, &[0, 1], &GroupAutomorphism::inversion(&z5)).unwrap();
        assert!(!report.valid);
        assert!(report
            .violations
            .contains(&TripletViolation::SubgroupNotClosed { a: 1, b: 1 }));
    }

    #[test]
    fn validate_structural_errors() {
        let z5 = FiniteGroupTable::cyclic(5);
        assert_eq!(
            validate_triplet(&z5, &[7], &GroupAutomorphism::identity(5)),
            Err(TripletError::SubgroupOutOfRange { index: 7, order: 5 })
        );
        assert_eq!(
            validate_triplet(&z5, &[0], &GroupAutomorphism::identity(4)),
            Err(TripletError::SigmaLength { len: 4, order: 5 })
        );
        // doubling is an automorphism of Z_5, but does not fix 1
        let double = GroupAutomorphism::from_map(vec![0, 2, 4, 1, 3]);
        let report = validate_triplet(&z5, &[0, 1, 2, 3, 4], &double).unwrap();
        assert_eq!(
            report.violations,
            vec![TripletViolation::SubgroupNotFixed { k: 1 }]
        );
        let squash = GroupAutomorphism::from_map(vec![0, 0, 0, 0, 0]);
        let report = validate_triplet(&z5, &[0], &squash).unwrap();
        assert!(report
            .violations
            .contains(&TripletViolation::SigmaNotBijective { value: 0 }));
        // inversion on S_3 is not a homomorphism
        let s3 = FiniteGroupTable::from_permutation_group(&automorphism_group(
            &dihedral_quandle(3).unwrap(),
        ));
        let report = validate_triplet(&s3, &[0], &GroupAutomorphism::inversion(&s3)).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, TripletViolation::SigmaNotHomomorphism { .. })));
    }

    #[test]
    fn cyclic_negation_gives_dihedral() {
        for n in 1..=12 {
            let q = quandle_from_triplet(&negation(n)).unwrap();
            // K = {0}: coset labels coincide with group elements
            assert_eq!(q.representatives, (0..n).collect::<Vec<_>>());
            assert_eq!(q.table, dihedral_quandle(n).unwrap());
        }
    }

    #[test]
    fn whole_group_gives_singleton() {
        let g = FiniteGroupTable::abelian(&[2, 3]);
        let t = QuandleTriplet::new(g, (0..6).collect(), GroupAutomorphism::identity(6)).unwrap();
        let q = quandle_from_triplet(&t).unwrap();
        assert_eq!(q.table, trivial_quandle(1).unwrap());
        assert_eq!(q.representatives, vec![0]);
    }

    #[test]
    fn z3_times_z5_matches_product() {
        let q = quandle_from_triplet(&QuandleTriplet::abelian_negation(&[3, 5])).unwrap();
        let prod = direct_product(&dihedral_quandle(3).unwrap(), &dihedral_quandle(5).unwrap());
        assert!(find_isomorphism(&q.table, &prod).is_some());
    }

    #[test]
    fn nonabelian_triplet() {
        // S_3 with σ = conjugation by a transposition and K = ⟨τ⟩ gives R_3
        let s3 = FiniteGroupTable::from_permutation_group(&automorphism_group(
            &dihedral_quandle(3).unwrap(),
        ));
        let tau = (0..6).find(|&g| g != 0 && s3.mul(g, g) == 0).unwrap();
        let sigma = GroupAutomorphism::conjugation(&s3, tau);
        let t = QuandleTriplet::new(s3.clone(), vec![0, tau], sigma.clone()).unwrap();
        let q = quandle_from_triplet(&t).unwrap();
        assert_eq!(q.table.len(), 3);
        assert!(find_isomorphism(&q.table, &dihedral_quandle(3).unwrap()).is_some());
        // with K trivial the result is a 6-element homogeneous quandle
        let t1 = QuandleTriplet::new(s3, vec![0], sigma).unwrap();
        let q1 = quandle_from_triplet(&t1).unwrap();
        assert!(crate::analysis::is_homogeneous(&q1.table));
    }

    #[test]
    fn reverse_construction_on_dihedral5() {
        let d5 = dihedral_quandle(5).unwrap();
        let (d, w) = triplet_with_witness(&d5, 0, &displacement_group(&d5)).unwrap();
        let t = &d.triplet;
        assert_eq!(t.group().order(), 5);
        assert!(t.group().is_abelian());
        assert!(t.has_trivial_subgroup());
        assert_eq!(t.sigma(), &GroupAutomorphism::inversion(t.group()));
        let coset = quandle_from_triplet(t).unwrap();
        assert_eq!(is_homomorphism(w.images(), &coset.table, &d5), Ok(true));
    }

    #[test]
    fn reverse_construction_edge_cases() {
        let one = trivial_quandle(1).unwrap();
        let d = displacement_triplet(&one, 0).unwrap();
        assert_eq!(d.triplet.group().order(), 1);
        assert!(d.witness.is_some());

        let d3x3 = direct_product(&dihedral_quandle(3).unwrap(), &dihedral_quandle(3).unwrap());
        let d = displacement_triplet(&d3x3, 4).unwrap();
        assert_eq!(d.triplet.group().order(), 9);
        assert!(d.triplet.certificates().all());

        // R_4 is disconnected: the triplet exists but there is no witness
        let d4 = dihedral_quandle(4).unwrap();
        let g = displacement_group(&d4);
        assert!(triplet_from_quandle(&d4, 0, &g).unwrap().witness.is_none());
        assert_eq!(
            triplet_with_witness(&d4, 0, &g).unwrap_err(),
            TripletError::NotTransitive
        );
        assert_eq!(
            triplet_from_quandle(&d4, 9, &g).unwrap_err(),
            TripletError::BasepointOutOfRange(9)
        );
    }

    #[test]
    fn reverse_construction_checks_hypotheses() {
        let d3 = dihedral_quandle(3).unwrap();
        let t3 =
            crate::quandle::QuandleTable::new(vec![vec![0, 2, 1], vec![0, 1, 2], vec![0, 1, 2]])
                .unwrap();
        let not_aut = crate::perm::closure(&[Permutation::new(vec![1, 0, 2]).unwrap()]).unwrap();
        assert!(matches!(
            triplet_from_quandle(&t3, 0, &not_aut),
            Err(TripletError::NotAutomorphism(_))
        ));
        let rotation = crate::perm::closure(&[Permutation::new(vec![1, 2, 0]).unwrap()]).unwrap();
        assert!(triplet_from_quandle(&d3, 0, &rotation).is_ok());
        // the stabilizer of 0 in Aut(R_3) is not stable under s_1-conjugation
        let stab = automorphism_group(&d3).stabilizer(0).unwrap();
        assert!(matches!(
            triplet_from_quandle(&d3, 1, &stab),
            Err(TripletError::NotConjugationStable(_))
        ));
    }

    #[test]
    fn aut_triplet_round_trip() {
        for q in [dihedral_quandle(6).unwrap(), trivial_quandle(3).unwrap()] {
            let aut = automorphism_group(&q);
            let (d, _) = triplet_with_witness(&q, 0, &aut).unwrap();
            let back = quandle_from_triplet(&d.triplet).unwrap();
            assert!(find_isomorphism(&back.table, &q).is_some());
        }
    }

    #[test]
    fn product_triplets() {
        let p = triplet_product(&negation(3), &negation(5));
        let q = quandle_from_triplet(&p).unwrap();
        assert!(find_isomorphism(&q.table, &dihedral_quandle(15).unwrap()).is_some());

        let one = negation(1);
        let p = triplet_product(&negation(4), &one);
        let q = quandle_from_triplet(&p).unwrap();
        assert!(find_isomorphism(&q.table, &dihedral_quandle(4).unwrap()).is_some());

        let p = triplet_product(&negation(3), &negation(3));
        let q = quandle_from_triplet(&p).unwrap();
        let d3 = dihedral_quandle(3).unwrap();
        assert!(find_isomorphism(&q.table, &direct_product(&d3, &d3)).is_some());
        assert!(find_isomorphism(&q.table, &dihedral_quandle(9).unwrap()).is_none());

        // Fix(σ₁ × σ₂) = Fix(σ₁) × Fix(σ₂)
        let p = triplet_product(&negation(6), &negation(4));
        let expected: Vec<usize> = [0, 3]
            .iter()
            .flat_map(|&a| [0, 2].iter().map(move |&b| a * 4 + b))
            .collect();
        assert_eq!(p.fix_set(), expected);
        assert!(
            validate_triplet(p.group(), p.subgroup(), p.sigma())
                .unwrap()
                .valid
        );
    }

    #[test]
    fn phi_examples() {
        let phi = phi_map(&negation(5)).unwrap();
        assert_eq!(phi.values, vec![0, 2, 4, 1, 3]);
        assert!(phi.surjective);
        let phi = phi_map(&negation(6)).unwrap();
        assert_eq!(phi.image, vec![0, 2, 4]);
        assert!(!phi.surjective);
        let z1 = QuandleTriplet::new(
            FiniteGroupTable::cyclic(1),
            vec![0],
            GroupAutomorphism::identity(1),
        )
        .unwrap();
        assert!(phi_map(&z1).unwrap().surjective);

        let z6 = FiniteGroupTable::cyclic(6);
        let t =
            QuandleTriplet::new(z6.clone(), vec![0, 3], GroupAutomorphism::inversion(&z6)).unwrap();
        assert!(matches!(phi_map(&t), Err(TripletError::PhiHypothesis(_))));
        let z7 = FiniteGroupTable::cyclic(7);
        let times2 = GroupAutomorphism::from_map((0..7).map(|g| 2 * g % 7).collect());
        let t = QuandleTriplet::new(z7, vec![0], times2).unwrap();
        assert!(matches!(phi_map(&t), Err(TripletError::PhiHypothesis(_))));
    }

    #[test]
    fn phi_criterion_and_commuting_symmetries() {
        for factors in [
            vec![5],
            vec![6],
            vec![2, 4],
            vec![3, 3],
            vec![9],
            vec![2, 3, 5],
            vec![8],
        ] {
            let t = QuandleTriplet::abelian_negation(&factors);
            let q = quandle_from_triplet(&t).unwrap().table;
            assert_eq!(
                phi_map(&t).unwrap().surjective,
                is_connected(&q),
                "{factors:?}"
            );
            assert!(is_involutive(&q));
            // s_[g] s_[h] [e] = s_[g h⁻¹] [e]
            let g = t.group();
            let e = g.identity();
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(q.act(a, q.act(b, e)), q.act(g.mul(a, g.inv(b)), e));
                }
            }
        }
    }

    #[test]
    fn json_forms() {
        let t = negation(3);
        let json = triplet_to_json(&t);
        assert_eq!(
            json,
            r#"{"order":3,"mul":[[0,1,2],[1,2,0],[2,0,1]],"K":[0],"sigma":[0,2,1]}"#
        );
        assert_eq!(parse_triplet(&json).unwrap(), t);
        let short =
            parse_triplet(r#"{"cyclic_factors":[3,5],"K":"trivial","sigma":"negation"}"#).unwrap();
        assert_eq!(short, QuandleTriplet::abelian_negation(&[3, 5]));
        assert!(matches!(
            parse_triplet(r#"{"cyclic_factors":[3],"K":"all","sigma":"negation"}"#),
            Err(TripletParseError::Schema(_))
        ));
        assert!(matches!(
            parse_triplet(r#"{"order":2,"mul":[[0,1],[1,0]],"K":[0,1],"sigma":[1,0]}"#),
            Err(TripletParseError::Triplet(TripletError::Invalid(_)))
        ));
        assert!(matches!(
            parse_triplet(r#"{"order":2,"mul":[[0,1],[1,1]],"K":[0],"sigma":[0,1]}"#),
            Err(TripletParseError::Triplet(TripletError::Group(_)))
        ));
        assert!(matches!(
            parse_triplet("{\n\"order\": }"),
            Err(TripletParseError::Syntax { line: 2, .. })
        ));
    }
}
