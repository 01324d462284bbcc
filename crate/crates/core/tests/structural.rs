//! Structural graph theorems as property tests over random quotients:
//! degree parity, cutting-class parity, circuit propagation, and the
//! order bound behind the limit classification.

use annular_core::graphs::{classify, AnnulusGraph};
use annular_core::rgs::random_partition;
use annular_core::AnnulusShape;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

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

const SAMPLES: usize = 1000;

#[test]
fn degree_and_cutting_parity_over_random_quotients() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for r in 1..=3usize {
        for m in r..=10 {
            for parts in sorted_shapes(m, r) {
                let shape = AnnulusShape::new(parts.clone()).unwrap();
                for _ in 0..SAMPLES {
                    let pi = random_partition(m, &mut rng);
                    let qg = AnnulusGraph::build(shape.clone()).quotient(&pi).unwrap();
                    for vertex in qg.degree_profile() {
                        for (rdg, ldg) in vertex {
                            assert_eq!(rdg, ldg, "degree split on {parts:?} at {pi}");
                        }
                    }
                    let el = qg.elementarize();
                    for class in el.classes.iter().filter(|c| c.is_cutting) {
                        for (j, &count) in class.per_circle.iter().enumerate() {
                            assert_eq!(count % 2, 0, "cutting parity on {parts:?} at {pi}");
                            let (f, b) = class.orientation_split[j];
                            assert_eq!(f, b, "cutting orientation on {parts:?} at {pi}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn circuit_odd_count_propagates_over_random_quotients() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut unicircuits = 0usize;
    for r in 2..=3usize {
        for m in r..=10 {
            for parts in sorted_shapes(m, r) {
                let shape = AnnulusShape::new(parts.clone()).unwrap();
                for _ in 0..SAMPLES {
                    let pi = random_partition(m, &mut rng);
                    let el = AnnulusGraph::build(shape.clone()).quotient(&pi).unwrap().elementarize();
                    if !el.is_connected() || el.q1() != 0 {
                        continue;
                    }
                    let circuit = el.circuit_classes();
                    if circuit.is_empty() {
                        continue;
                    }
                    unicircuits += 1;
                    for j in 0..shape.r() {
                        let odd: Vec<bool> = circuit
                            .iter()
                            .map(|&c| el.classes[c].per_circle[j] % 2 == 1)
                            .collect();
                        assert!(
                            odd.iter().all(|&o| o) || odd.iter().all(|&o| !o),
                            "circuit propagation on {parts:?} at {pi} circle {j}"
                        );
                    }
                    // all-double circuits: one cross-circle opposite pair
                    // forces all circuit classes to be cross-circle pairs
                    if circuit.iter().all(|&c| el.classes[c].multiplicity() == 2) {
                        let cross: Vec<bool> = circuit
                            .iter()
                            .map(|&c| {
                                el.classes[c].circles().len() == 2
                                    && el.classes[c].orientation_balanced_total()
                            })
                            .collect();
                        if cross.iter().any(|&x| x) {
                            assert!(
                                cross.iter().all(|&x| x),
                                "mixed all-double circuit on {parts:?} at {pi}"
                            );
                        }
                    }
                }
            }
        }
    }
    assert!(unicircuits > 100, "only {unicircuits} unicircuit draws");
}

#[test]
fn classification_respects_the_order_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for m in 3..=10usize {
        for parts in sorted_shapes(m, 3) {
            let shape = AnnulusShape::new(parts.clone()).unwrap();
            for _ in 0..SAMPLES {
                let pi = random_partition(m, &mut rng);
                let class = classify(&shape, &pi).unwrap();
                let twice_q = 2 * pi.num_blocks() as i64 - m as i64;
                if class.limit().is_some() {
                    assert_eq!(twice_q, -2, "limit partition off the order line: {pi}");
                }
                // 2q in {2, 1, 0, -1} can never contribute
                if (-1..=2).contains(&twice_q) {
                    assert!(class.limit().is_none(), "q too large accepted: {pi} on {parts:?}");
                }
            }
        }
    }
}
