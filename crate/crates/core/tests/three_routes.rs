//! The central cross-check: three independent computations of the
//! third-order moment agree as exact polynomials for every shape within
//! the desk-scale bound.

use annular_core::moments::{
    alpha_from_cumulants, alpha_second, alpha_third_closed, alpha_third_graphsum, wigner_cumulants,
};
use annular_core::AnnulusShape;

fn ordered_shapes(total: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(rest: usize, left: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 1 {
            acc.push(rest);
            out.push(acc.clone());
            acc.pop();
            return;
        }
        for p in 1..=rest.saturating_sub(left - 1) {
            acc.push(p);
            rec(rest - p, left - 1, acc, out);
            acc.pop();
        }
    }
    if total >= r {
        rec(total, r, &mut Vec::new(), &mut out);
    }
    out
}

fn sweep(max_m: usize) {
    let wigner = wigner_cumulants();
    for m in 3..=max_m {
        for parts in ordered_shapes(m, 3) {
            let shape = AnnulusShape::new(parts.clone()).unwrap();
            let closed = alpha_third_closed(&shape, max_m).unwrap();
            let graph = alpha_third_graphsum(&shape, max_m).unwrap();
            let ps = alpha_from_cumulants(&shape, &wigner, max_m).unwrap();
            assert_eq!(closed, graph, "closed vs graph sum on {parts:?}");
            assert_eq!(closed, ps, "closed vs partitioned sum on {parts:?}");
        }
    }
}

#[test]
fn three_routes_agree_up_to_eight() {
    sweep(8);
}

/// Slow mode; run with `--release -- --ignored`.
#[test]
#[ignore = "slow sweep to total size ten"]
fn three_routes_agree_up_to_ten() {
    sweep(10);
}

#[test]
fn second_order_agrees_up_to_ten() {
    let wigner = wigner_cumulants();
    for m in 2..=10 {
        for parts in ordered_shapes(m, 2) {
            let shape = AnnulusShape::new(parts.clone()).unwrap();
            let via_ps = alpha_from_cumulants(&shape, &wigner, 14).unwrap();
            assert_eq!(via_ps, alpha_second(parts[0], parts[1]), "shape {parts:?}");
        }
    }
}

/// Slow mode: the two-circle consistency extended to total size twelve,
/// where the annular enumeration filters all of `S_12`.
#[test]
#[ignore = "slow sweep to total size twelve"]
fn second_order_agrees_up_to_twelve() {
    let wigner = wigner_cumulants();
    for m in 11..=12 {
        for parts in ordered_shapes(m, 2) {
            let shape = AnnulusShape::new(parts.clone()).unwrap();
            let via_ps = alpha_from_cumulants(&shape, &wigner, 14).unwrap();
            assert_eq!(via_ps, alpha_second(parts[0], parts[1]), "shape {parts:?}");
        }
    }
}
