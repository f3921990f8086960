use std::collections::{BTreeMap, BTreeSet, HashMap};

use kstat_core::combinatorics::{
    bell, coarsenings, enumerate_set_partitions, integer_partitions, mobius_weight_coarsening,
    mobius_weight_refinement, quotient_family, refines, stirling2, stirling2_alternating,
    SetPartition,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn all(k: usize) -> Vec<SetPartition> {
    enumerate_set_partitions(k).unwrap().collect()
}

/// Bell numbers from the Bell triangle, independent of Stirling numbers.
fn bell_triangle(n: usize) -> BigUint {
    let mut row = vec![BigUint::from(1u32)];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

#[test]
fn counts_by_block_number_match_stirling_and_bell() {
    for k in 1..=8 {
        let mut by_blocks: BTreeMap<usize, u64> = BTreeMap::new();
        let mut total = 0u64;
        for pi in all(k) {
            *by_blocks.entry(pi.size()).or_default() += 1;
            total += 1;
        }
        for j in 1..=k {
            assert_eq!(
                BigUint::from(by_blocks[&j]),
                stirling2(k, j).unwrap(),
                "S({k},{j})"
            );
        }
        assert_eq!(BigUint::from(total), bell(k));
        assert_eq!(bell(k), bell_triangle(k));
    }
}

#[test]
fn stirling_forms_agree() {
    for n in 1..=20 {
        for k in 1..=n {
            assert_eq!(
                stirling2(n, k).unwrap(),
                stirling2_alternating(n, k).unwrap()
            );
        }
        assert!(stirling2(n, 0).is_err());
        assert!(stirling2(n, n + 1).is_err());
    }
}

#[test]
fn profiles_cover_integer_partitions() {
    for k in 1..=8 {
        let seen: BTreeSet<_> = all(k).iter().map(SetPartition::profile).collect();
        let expected: BTreeSet<_> = integer_partitions(k).unwrap().into_iter().collect();
        assert_eq!(seen, expected);
        for p in &expected {
            assert!(p.sizes().windows(2).all(|w| w[0] >= w[1]));
            assert_eq!(p.sizes().iter().sum::<usize>(), k);
        }
    }
}

#[test]
fn refinement_is_a_partial_order_on_pi4() {
    let parts = all(4);
    for a in &parts {
        assert!(refines(a, a).unwrap());
        for b in &parts {
            let ab = refines(a, b).unwrap();
            if ab && refines(b, a).unwrap() {
                assert_eq!(a, b);
            }
            for c in &parts {
                if ab && refines(b, c).unwrap() {
                    assert!(refines(a, c).unwrap());
                }
            }
        }
    }
}

#[test]
fn coarsenings_are_exactly_the_upper_set() {
    for k in 1..=5 {
        let parts = all(k);
        for pi in &parts {
            let up: Vec<_> = parts
                .iter()
                .filter(|r| refines(pi, r).unwrap())
                .cloned()
                .collect();
            let mut sorted = up.clone();
            sorted.sort();
            assert_eq!(coarsenings(pi), sorted);
            assert_eq!(BigUint::from(up.len()), bell(pi.size()));
        }
    }
}

#[test]
fn quotient_family_reconstructs() {
    for k in 1..=5 {
        let parts = all(k);
        for pi in &parts {
            for rho in coarsenings(pi) {
                let fam = quotient_family(pi, &rho).unwrap();
                assert_eq!(fam.sub_partitions().len(), rho.size());
                assert_eq!(&fam.reconstruct(), pi);
            }
        }
    }
}

fn small_rationals(len: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-20i64..=20, 1i64..=6), len).prop_map(|v| {
        v.into_iter()
            .map(|(n, d)| BigRational::new(n.into(), d.into()))
            .collect()
    })
}

fn lattice_sizes() -> impl Strategy<Value = usize> {
    1usize..=5
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // f(π) = Σ_{ρ≤π} g(ρ); inverting at the one-block partition recovers g there.
    #[test]
    fn mobius_refinement_round_trip((k, g) in lattice_sizes().prop_flat_map(|k| {
        let b = all(k).len();
        (Just(k), small_rationals(b))
    })) {
        let parts = all(k);
        let f: Vec<BigRational> = parts
            .iter()
            .map(|pi| {
                parts.iter().zip(&g).filter(|(r, _)| refines(r, pi).unwrap()).map(|(_, v)| v.clone()).sum()
            })
            .collect();
        let top = parts.iter().position(|p| p.size() == 1).unwrap();
        let recovered: BigRational = parts
            .iter()
            .zip(&f)
            .map(|(rho, fv)| BigRational::from_integer(mobius_weight_refinement(rho)) * fv)
            .sum();
        prop_assert_eq!(&recovered, &g[top]);
    }

    // f(π) = Σ_{ρ≥π} g(ρ) inverts at every π.
    #[test]
    fn mobius_coarsening_round_trip((k, g) in lattice_sizes().prop_flat_map(|k| {
        let b = all(k).len();
        (Just(k), small_rationals(b))
    })) {
        let parts = all(k);
        let pos: HashMap<SetPartition, usize> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let f: Vec<BigRational> = parts
            .iter()
            .map(|pi| coarsenings(pi).iter().map(|r| g[pos[r]].clone()).sum())
            .collect();
        for (i, pi) in parts.iter().enumerate() {
            let mut recovered = BigRational::zero();
            for rho in coarsenings(pi) {
                let w: BigInt = mobius_weight_coarsening(pi, &rho).unwrap();
                recovered += BigRational::from_integer(w) * &f[pos[&rho]];
            }
            prop_assert_eq!(&recovered, &g[i]);
        }
    }

    #[test]
    fn display_round_trips(k in 1usize..=6, pick in any::<prop::sample::Index>()) {
        let parts = all(k);
        let pi = &parts[pick.index(parts.len())];
        let parsed: SetPartition = pi.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, pi);
    }

    #[test]
    fn from_blocks_is_order_insensitive(k in 1usize..=6, pick in any::<prop::sample::Index>()) {
        let parts = all(k);
        let pi = &parts[pick.index(parts.len())];
        let mut blocks = pi.blocks();
        blocks.reverse();
        for b in &mut blocks {
            b.reverse();
        }
        prop_assert_eq!(&SetPartition::from_blocks(k, &blocks).unwrap(), pi);
    }
}

#[test]
fn mobius_weight_examples() {
    let s2 = SetPartition::singletons(2).unwrap();
    let s3 = SetPartition::singletons(3).unwrap();
    assert_eq!(
        mobius_weight_coarsening(&s2, &SetPartition::one_block(2).unwrap()).unwrap(),
        BigInt::from(-1)
    );
    assert_eq!(
        mobius_weight_coarsening(&s3, &SetPartition::one_block(3).unwrap()).unwrap(),
        BigInt::from(2)
    );
    assert_eq!(mobius_weight_coarsening(&s3, &s3).unwrap(), BigInt::from(1));
    let half: SetPartition = "{{1},{2,3}}".parse().unwrap();
    assert!(mobius_weight_coarsening(&half, &s3).is_err());
}
