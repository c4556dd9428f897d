use proptest::prelude::*;

use quandle::analysis::displacement_group;
use quandle::triplet::{displacement_triplet, triplet_from_quandle};
use quandle::{
    affine_quandle, analyze, automorphism_group, classify_flat_connected, dihedral_quandle,
    direct_product, find_isomorphism, inner_group, is_homomorphism, is_involutive,
    quandle_from_triplet, trivial_quandle, Permutation, QuandleTable, QuandleTriplet,
};

fn corpus() -> Vec<QuandleTable> {
    let mut out: Vec<QuandleTable> = (1..=4).map(|n| trivial_quandle(n).unwrap()).collect();
    out.extend((1..=9).map(|n| dihedral_quandle(n).unwrap()));
    for a in 3..=7 {
        for b in 3..=7 {
            out.push(direct_product(
                &dihedral_quandle(a).unwrap(),
                &dihedral_quandle(b).unwrap(),
            ));
        }
    }
    out.push(affine_quandle(5, 2).unwrap());
    out.push(affine_quandle(7, 3).unwrap());
    out
}

#[test]
fn inner_group_lies_in_automorphisms() {
    for q in corpus().into_iter().filter(|q| q.len() <= 16) {
        let aut = automorphism_group(&q);
        for g in inner_group(&q).elements() {
            assert!(aut.contains(g));
        }
    }
}

#[test]
fn coset_quandle_round_trip() {
    // every homogeneous corpus member against its full automorphism group
    for q in corpus().into_iter().filter(|q| q.len() <= 12) {
        let aut = automorphism_group(&q);
        if !aut.is_transitive() {
            continue;
        }
        for basepoint in [0, q.len() - 1] {
            let d = triplet_from_quandle(&q, basepoint, &aut).unwrap();
            let coset = quandle_from_triplet(&d.triplet).unwrap().table;
            let w = d.witness.expect("transitive group gives a witness");
            assert!(is_homomorphism(w.images(), &coset, &q).unwrap());
            assert!(find_isomorphism(&coset, &q).is_some());
        }
    }
}

#[test]
fn displacement_triplets_of_connected_quandles() {
    for q in corpus() {
        let d = displacement_triplet(&q, 0).unwrap();
        assert_eq!(d.witness.is_some(), displacement_group(&q).is_transitive());
        if let Some(w) = &d.witness {
            let coset = quandle_from_triplet(&d.triplet).unwrap().table;
            assert!(is_homomorphism(w.images(), &coset, &q).unwrap());
        }
    }
}

#[test]
fn involutive_sigma_gives_involutive_quandle() {
    for factors in [vec![3], vec![4], vec![3, 5], vec![9, 3], vec![2, 2]] {
        let t = QuandleTriplet::abelian_negation(&factors);
        assert!(t.sigma().is_involutive());
        assert!(is_involutive(&quandle_from_triplet(&t).unwrap().table));
    }
}

#[test]
fn coset_symmetries_compose_as_differences() {
    // s_[g] s_[h] [e] = s_[g h⁻¹] [e] when K is trivial
    for factors in [vec![5], vec![3, 3], vec![9]] {
        let t = QuandleTriplet::abelian_negation(&factors);
        let g = t.group();
        let c = quandle_from_triplet(&t).unwrap();
        let e = c.coset_of[g.identity()];
        for a in 0..g.order() {
            for b in 0..g.order() {
                let lhs = c.table.act(c.coset_of[a], c.table.act(c.coset_of[b], e));
                let rhs = c.table.act(c.coset_of[g.mul(a, g.inv(b))], e);
                assert_eq!(lhs, rhs);
            }
        }
    }
}

fn relabeling(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn flat_connected() -> impl Strategy<Value = (Vec<usize>, QuandleTable)> {
    prop_oneof![
        Just(vec![3]),
        Just(vec![5]),
        Just(vec![9]),
        Just(vec![3, 3]),
        Just(vec![5, 3]),
        Just(vec![7, 3]),
        Just(vec![9, 3]),
        Just(vec![3, 3, 3]),
    ]
    .prop_map(|f| {
        let q = f
            .iter()
            .map(|&k| dihedral_quandle(k).unwrap())
            .reduce(|a, b| direct_product(&a, &b))
            .unwrap();
        (f, q)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classification_ignores_labels(((factors, q), seed) in flat_connected().prop_flat_map(|fq| {
        let n = fq.1.len();
        (Just(fq), relabeling(n))
    })) {
        let relabeled = q.relabel(&seed);
        let d = classify_flat_connected(&relabeled).unwrap();
        prop_assert_eq!(&d.factors, &factors);
        prop_assert_eq!(d.witness.degree(), q.len());
    }

    #[test]
    fn analysis_is_an_isomorphism_invariant((q, p) in (0usize..40).prop_flat_map(|i| {
        let q = corpus().swap_remove(i);
        let n = q.len();
        (Just(q), relabeling(n))
    })) {
        prop_assert_eq!(analyze(&q), analyze(&q.relabel(&p)));
    }
}
