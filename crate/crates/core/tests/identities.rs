//! Exact counting identities across shapes: closed forms against each
//! other at large sizes and against enumeration at desk scale.

use annular_core::annular::{
    enumerate_nc2, enumerate_nc2_through, nc2_through2_count, nc2_through2_count_binomial,
};
use annular_core::graphs::{
    classify, count_limit_graphs_closed, count_limit_graphs_enumerated, pairing_to_partition,
    LimitClass,
};
use annular_core::partitioned::{enumerate_family, family_count, PsFamily};
use annular_core::{AnnulusShape, SetPartition};
use num_bigint::BigInt;

fn sorted_shapes(total: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(rest: usize, left: usize, min: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 1 {
            if rest >= min {
                let mut v = acc.clone();
                v.push(rest);
                out.push(v);
            }
            return;
        }
        for p in min..=rest.saturating_sub(left - 1) {
            acc.push(p);
            rec(rest - p, left - 1, p, acc, out);
            acc.pop();
        }
    }
    rec(total, r, 1, &mut Vec::new(), &mut out);
    out
}

fn shape(parts: &[usize]) -> AnnulusShape {
    AnnulusShape::new(parts.to_vec()).unwrap()
}

/// `12 |J3p| + 4 |J2x2p| - |J2p with two throughs| = 0` for every all-even
/// shape with total up to eighteen, from closed forms.
#[test]
fn pairing_family_cancellation_closed_forms_to_eighteen() {
    let mut checked = 0;
    for m in (6..=18).step_by(2) {
        for parts in sorted_shapes(m, 3) {
            if parts.iter().any(|p| p % 2 != 0) {
                continue;
            }
            let sh = shape(&parts);
            let r = BigInt::from(12) * family_count(PsFamily::JoinThreePairings, &sh, usize::MAX).unwrap()
                + BigInt::from(4)
                    * family_count(PsFamily::JoinTwoTwicePairings, &sh, usize::MAX).unwrap()
                - family_count(PsFamily::JoinTwoPairingsTwoThrough, &sh, usize::MAX).unwrap();
            assert_eq!(r, BigInt::from(0), "shape {parts:?}");
            checked += 1;
        }
    }
    assert!(checked >= 10, "swept {checked} shapes");
}

/// The same combination from full enumerations at desk scale.
#[test]
fn pairing_family_cancellation_enumerated_to_ten() {
    for m in (6..=10).step_by(2) {
        for parts in sorted_shapes(m, 3) {
            if parts.iter().any(|p| p % 2 != 0) {
                continue;
            }
            let sh = shape(&parts);
            let j3 = enumerate_family(PsFamily::JoinThreePairings, &sh, 14).unwrap().len();
            let j22 = enumerate_family(PsFamily::JoinTwoTwicePairings, &sh, 14).unwrap().len();
            let j2t = enumerate_family(PsFamily::JoinTwoPairingsTwoThrough, &sh, 14).unwrap().len();
            assert_eq!(12 * j3 + 4 * j22, j2t, "shape {parts:?}");
        }
    }
}

/// Two routes to the two-through pairing count agree up to eighteen and
/// match enumeration up to ten.
#[test]
fn two_through_count_identity() {
    for m in (4..=18).step_by(2) {
        for parts in sorted_shapes(m, 2) {
            let (m1, m2) = (parts[0], parts[1]);
            if m1 % 2 != 0 || m2 % 2 != 0 {
                continue;
            }
            assert_eq!(
                nc2_through2_count(m1, m2),
                nc2_through2_count_binomial(m1, m2),
                "closed forms at ({m1},{m2})"
            );
            if m <= 10 {
                let sh = shape(&parts);
                assert_eq!(
                    nc2_through2_count(m1, m2),
                    BigInt::from(enumerate_nc2_through(&sh, 2).len()),
                    "enumeration at ({m1},{m2})"
                );
            }
        }
    }
}

/// The single-through joined family and the near-pairing family have the
/// same cardinality for every shape with exactly one even part, up to
/// thirteen by closed forms and up to ten by enumeration.
#[test]
fn through_block_equals_near_pairings() {
    for m in 4..=13 {
        for parts in sorted_shapes(m, 3) {
            if parts.iter().filter(|p| *p % 2 == 0).count() != 1 {
                continue;
            }
            let sh = shape(&parts);
            let a = family_count(PsFamily::JoinTwoPairingsThroughBlock, &sh, usize::MAX).unwrap();
            let b = family_count(PsFamily::JoinThreeNearPairings, &sh, usize::MAX).unwrap();
            assert_eq!(a, b, "closed forms on {parts:?}");
            if m <= 10 {
                let ea = enumerate_family(PsFamily::JoinTwoPairingsThroughBlock, &sh, 14).unwrap();
                let eb = enumerate_family(PsFamily::JoinThreeNearPairings, &sh, 14).unwrap();
                assert_eq!(BigInt::from(ea.len()), a, "enumerated lhs on {parts:?}");
                assert_eq!(BigInt::from(eb.len()), b, "enumerated rhs on {parts:?}");
            }
        }
    }
}

/// The pairing count equals the limit-graph count plus the two fiber-two
/// classes, and the closed counts match enumeration, for all shapes up to
/// ten.
#[test]
fn pairings_split_into_limit_graphs() {
    for m in 3..=10 {
        for parts in sorted_shapes(m, 3) {
            let sh = shape(&parts);
            let counts = count_limit_graphs_enumerated(&sh).unwrap();
            let nc2 = BigInt::from(enumerate_nc2(&sh).len());
            assert_eq!(
                nc2,
                counts.total() + &counts.uniloop24 + &counts.tree26,
                "shape {parts:?}"
            );
            let closed = count_limit_graphs_closed(&sh).unwrap();
            assert_eq!(closed, counts, "closed vs enumerated on {parts:?}");
        }
    }
}

/// Fibers of the pairing-to-partition map: two over glue-six trees and
/// uniloops, one over the other classes.
#[test]
fn fiber_sizes_up_to_ten() {
    for m in 3..=10 {
        for parts in sorted_shapes(m, 3) {
            let sh = shape(&parts);
            let mut fibers: std::collections::BTreeMap<SetPartition, (LimitClass, usize)> =
                Default::default();
            for sigma in enumerate_nc2(&sh) {
                let pi = pairing_to_partition(&sigma, &sh).unwrap();
                let class = classify(&sh, &pi)
                    .unwrap()
                    .limit()
                    .unwrap_or_else(|| panic!("non-limit image on {parts:?}"));
                fibers.entry(pi).and_modify(|e| e.1 += 1).or_insert((class, 1));
            }
            for (pi, (class, count)) in fibers {
                let expect = match class {
                    LimitClass::Tree26 | LimitClass::Uniloop24 => 2,
                    _ => 1,
                };
                assert_eq!(count, expect, "fiber of {pi} ({class:?}) on {parts:?}");
            }
        }
    }
}
