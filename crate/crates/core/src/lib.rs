//! Finite quandles and the classification of the flat connected ones.
//!
//! A quandle on `{0..n-1}` is stored as its table of symmetries,
//! `table[x][y] = s_x(y)`. On top of that the crate provides:
//!
//! - the inner group `Inn(X)`, the displacement group `G⁰(X)` and the
//!   predicates connected, flat, involutive and homogeneous ([`analysis`]);
//! - isomorphism search and automorphism groups ([`iso`]);
//! - quandle triplets `(G, K, σ)` and their coset quandles ([`triplet`]);
//! - the decomposition of a flat connected finite quandle into dihedral
//!   quandles of odd prime-power order ([`classify`]);
//! - brute-force enumeration of all quandles of small order, used to check
//!   the classification independently ([`enumerate`]).
//!
//! ```
//! use quandle::{classify_flat_connected, dihedral_quandle};
//!
//! let r45 = dihedral_quandle(45).unwrap();
//! let d = classify_flat_connected(&r45).unwrap();
//! assert_eq!(d.factors, vec![9, 5]);
//! ```

pub mod analysis;
pub mod classify;
pub mod enumerate;
pub mod group;
pub mod io;
pub mod iso;
pub mod perm;
pub mod quandle;
pub mod triplet;

pub use analysis::{
    analyze, displacement_group, inner_group, is_connected, is_flat, is_homogeneous, is_involutive,
    AnalysisReport,
};
pub use classify::{
    abelian_invariants, build_representatives, classify_flat_connected, factor_multisets,
    predicted_count, ClassificationReport, ClassifyError, FlatDecomposition,
};
pub use enumerate::{
    enumerate_flat_connected_classes, enumerate_quandles, EnumerationError, EnumerationOptions,
};
pub use group::{FiniteGroupTable, GroupError};
pub use io::{parse_quandle, parse_table, ParseError};
pub use iso::{automorphism_group, find_isomorphism, is_homomorphism, IsoError};
pub use perm::{closure, compose, orbit, stabilizer, PermError, Permutation, PermutationGroup};
pub use quandle::{
    affine_quandle, dihedral_quandle, direct_product, trivial_quandle, validate_quandle,
    AxiomReport, AxiomViolation, MalformedTable, QuandleError, QuandleTable,
};
pub use triplet::{
    fix_set, phi_map, quandle_from_triplet, triplet_from_quandle, triplet_product,
    validate_triplet, CosetQuandle, GroupAutomorphism, QuandleTriplet, TripletDerivation,
    TripletError,
};
