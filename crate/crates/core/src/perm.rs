//! Permutations of `{0..n-1}` and the finite groups they generate.
//!
//! Groups here are small (a few thousand elements at most), so a group is
//! stored with its full element set, computed by breadth-first closure.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a permutation: {0:?}")]
    NotBijective(Vec<usize>),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("empty generator list")]
    NoGenerators,
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
}

/// A bijection of `{0..n-1}`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijective(images));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation(images)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then_unchecked(other))
    }

    #[inline]
    pub(crate) fn then_unchecked(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    /// `self ∘ g ∘ self⁻¹`.
    pub fn conjugate(&self, g: &Permutation) -> Self {
        let mut out = vec![0; self.degree()];
        for (i, &j) in g.0.iter().enumerate() {
            out[self.0[i]] = self.0[j];
        }
        Permutation(out)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| other.0[a] == self.0[b])
    }

    /// Cycle lengths, sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }

    pub fn into_images(self) -> Vec<usize> {
        self.0
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::new(images).map_err(serde::de::Error::custom)
    }
}

/// `p ∘ q` on permutations of equal degree.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation, PermError> {
    p.compose(q)
}

fn factorial_saturating(n: usize) -> usize {
    (1..=n)
        .try_fold(1usize, |acc, k| acc.checked_mul(k))
        .unwrap_or(usize::MAX)
}

/// A finite permutation group with its generators and full element set.
///
/// `elements` is sorted lexicographically by image array, so the identity
/// always comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermutationGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Index of `p` in [`Self::elements`].
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// Builds a group from a set already known to be closed; generators are
    /// the elements themselves.
    pub(crate) fn from_closed_set(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        PermutationGroup {
            degree,
            generators: elements.clone(),
            elements,
        }
    }

    pub fn is_transitive(&self) -> bool {
        is_transitive(self)
    }

    pub fn is_abelian(&self) -> bool {
        is_abelian(self)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit(&self.generators, point)
    }

    pub fn stabilizer(&self, point: usize) -> Result<PermutationGroup, PermError> {
        stabilizer(self, point)
    }
}

/// The group generated by `generators`, with the default cap of `degree!`.
pub fn closure(generators: &[Permutation]) -> Result<PermutationGroup, PermError> {
    closure_with_cap(generators, None)
}

/// Breadth-first closure of `generators` under composition.
///
/// In a finite group closure under products already gives inverses, so only
/// left multiplication by generators is explored.
pub fn closure_with_cap(
    generators: &[Permutation],
    cap: Option<usize>,
) -> Result<PermutationGroup, PermError> {
    let first = generators.first().ok_or(PermError::NoGenerators)?;
    let degree = first.degree();
    if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
        return Err(PermError::DegreeMismatch {
            left: degree,
            right: bad.degree(),
        });
    }
    let cap = cap.unwrap_or_else(|| factorial_saturating(degree));

    let mut gens: Vec<Permutation> = generators.to_vec();
    gens.sort_unstable();
    gens.dedup();
    let movers: Vec<&Permutation> = gens.iter().filter(|g| !g.is_identity()).collect();

    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = VecDeque::from([identity]);
    while let Some(current) = queue.pop_front() {
        for g in &movers {
            let next = g.then_unchecked(&current);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(PermError::CapExceeded { cap });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }

    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(PermutationGroup {
        degree,
        generators: gens,
        elements,
    })
}

/// Smallest generator-stable set containing `point`, sorted ascending.
pub fn orbit(generators: &[Permutation], point: usize) -> Vec<usize> {
    let Some(degree) = generators.first().map(Permutation::degree) else {
        return vec![point];
    };
    let mut seen = vec![false; degree.max(point + 1)];
    seen[point] = true;
    let mut stack = vec![point];
    while let Some(i) = stack.pop() {
        for g in generators {
            let j = g.apply(i);
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter()
        .enumerate()
        .filter_map(|(i, &s)| s.then_some(i))
        .collect()
}

pub fn is_transitive(group: &PermutationGroup) -> bool {
    group.degree <= 1 || orbit(&group.generators, 0).len() == group.degree
}

/// Generator-pairwise commutation.
pub fn is_abelian(group: &PermutationGroup) -> bool {
    let gens = &group.generators;
    gens.iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
}

/// The subgroup fixing `point`; its generators are all of its elements.
pub fn stabilizer(group: &PermutationGroup, point: usize) -> Result<PermutationGroup, PermError> {
    if point >= group.degree {
        return Err(PermError::PointOutOfRange {
            point,
            degree: group.degree,
        });
    }
    let fixing: Vec<Permutation> = group
        .elements
        .iter()
        .filter(|g| g.apply(point) == point)
        .cloned()
        .collect();
    Ok(PermutationGroup::from_closed_set(group.degree, fixing))
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    degree: usize,
    generators: Vec<Permutation>,
}

impl Serialize for PermutationGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GroupRepr {
            degree: self.degree,
            generators: self.generators.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PermutationGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = GroupRepr::deserialize(d)?;
        if repr.generators.is_empty() {
            return closure(&[Permutation::identity(repr.degree)]).map_err(D::Error::custom);
        }
        if let Some(g) = repr.generators.iter().find(|g| g.degree() != repr.degree) {
            return Err(D::Error::custom(PermError::DegreeMismatch {
                left: repr.degree,
                right: g.degree(),
            }));
        }
        closure(&repr.generators).map_err(D::Error::custom)
    }
}
