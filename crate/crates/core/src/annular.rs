//! Non-crossing classes on one, two and three circles.
//!
//! Membership is the metric characterization: `p` lies in the non-crossing
//! class of `gamma` with `r` circles when `|p| + |p^-1 gamma| = |gamma| +
//! 2(r-1)` and `p ∨ gamma = 1_m`. Pairing classes are enumerated by
//! backtracking over perfect matchings; the general annular class filters
//! `S_m`, which is only viable at desk scale (`m <= 12`).

use crate::perm::Permutation;
use crate::setpart::SetPartition;
use crate::shape::AnnulusShape;
use crate::{check_bound, Error, Result, SNC_MAX_M};
use num_bigint::BigInt;
use rayon::prelude::*;

/// Names a finite class of permutations on an annulus shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnularClass {
    pub shape: AnnulusShape,
    pub kind: ClassKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    /// Non-crossing permutations of the disc (`r = 1`).
    Nc,
    /// Non-crossing pairings of the shape.
    Nc2,
    /// All annular non-crossing permutations of the shape.
    Snc,
    /// Non-crossing pairings with exactly `k` through strings (`r = 2`).
    Nc2Through(usize),
}

impl AnnularClass {
    pub fn enumerate(&self, bound: usize) -> Result<Vec<Permutation>> {
        let m = self.shape.m();
        check_bound(m, bound)?;
        match self.kind {
            ClassKind::Nc => {
                if self.shape.r() != 1 {
                    return Err(Error::InvalidClass("nc requires one circle".into()));
                }
                Ok(enumerate_nc_perms(m))
            }
            ClassKind::Nc2 => Ok(enumerate_nc2(&self.shape)),
            ClassKind::Snc => enumerate_snc(&self.shape),
            ClassKind::Nc2Through(k) => {
                if self.shape.r() != 2 {
                    return Err(Error::InvalidClass("through grading requires two circles".into()));
                }
                Ok(enumerate_nc2_through(&self.shape, k))
            }
        }
    }

    /// Cardinality; closed forms are used where available and must agree
    /// with enumeration whenever both run.
    pub fn count(&self, bound: usize) -> Result<BigInt> {
        match self.kind {
            ClassKind::Nc => Ok(catalan(self.shape.m())),
            ClassKind::Nc2 if self.shape.r() == 1 => Ok(nc2_count(self.shape.m())),
            ClassKind::Nc2Through(1) => {
                let (m1, m2) = two_parts(&self.shape)?;
                Ok(nc2_through1_count(m1, m2))
            }
            ClassKind::Nc2Through(2) => {
                let (m1, m2) = two_parts(&self.shape)?;
                Ok(nc2_through2_count(m1, m2))
            }
            _ => Ok(BigInt::from(self.enumerate(bound)?.len())),
        }
    }
}

fn two_parts(shape: &AnnulusShape) -> Result<(usize, usize)> {
    if shape.r() != 2 {
        return Err(Error::InvalidClass("through grading requires two circles".into()));
    }
    Ok((shape.parts()[0], shape.parts()[1]))
}

/// `|p| + |p^-1 gamma| + |gamma| = 2 |p ∨ gamma|`: the permutation can be
/// drawn without crossings on the circles of the shape (no connectivity
/// requirement).
pub fn is_planar_relative(p: &Permutation, shape: &AnnulusShape) -> bool {
    assert_eq!(p.n(), shape.m(), "permutation size must match shape");
    let gamma = shape.gamma();
    let other = p.inverse().compose(&gamma).expect("same size");
    let join = p
        .cycle_partition()
        .join(&gamma.cycle_partition())
        .expect("same size");
    p.length() + other.length() + gamma.length() == 2 * join.length()
}

/// Number of 2-cycles of a pairing whose elements lie on distinct circles.
pub fn through_strings(p: &Permutation, shape: &AnnulusShape) -> Result<usize> {
    if p.n() != shape.m() {
        return Err(Error::SizeMismatch(p.n(), shape.m()));
    }
    if !p.is_pairing() {
        return Err(Error::NotAPairing);
    }
    let mut count = 0;
    for i in 0..p.n() {
        let j = p.apply(i);
        if i < j && shape.circle_of(i) != shape.circle_of(j) {
            count += 1;
        }
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// Disc enumeration
// ---------------------------------------------------------------------------

/// All non-crossing partitions of `[n]`, canonically ordered.
pub fn enumerate_nc_partitions(n: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(SetPartition::singletons(0));
        return out;
    }
    let mut labels = vec![0usize; n];
    // Stack of currently open block labels. Element i either opens a new
    // block or joins an open one, closing everything above it.
    let mut stack = vec![0usize];
    nc_rec(&mut labels, &mut stack, 1, 1, &mut out);
    out.sort();
    out
}

fn nc_rec(
    labels: &mut Vec<usize>,
    stack: &mut Vec<usize>,
    i: usize,
    next_label: usize,
    out: &mut Vec<SetPartition>,
) {
    if i == labels.len() {
        out.push(SetPartition::from_raw_labels(labels.clone()));
        return;
    }
    for depth in 0..stack.len() {
        let keep: Vec<usize> = stack[..=depth].to_vec();
        labels[i] = keep[depth];
        let mut reduced = keep;
        let saved = std::mem::replace(stack, reduced.clone());
        nc_rec(labels, stack, i + 1, next_label, out);
        reduced = saved;
        *stack = reduced;
    }
    labels[i] = next_label;
    stack.push(next_label);
    nc_rec(labels, stack, i + 1, next_label + 1, out);
    stack.pop();
}

/// Non-crossing permutations of the disc: each non-crossing partition with
/// every block traversed in increasing order.
pub fn enumerate_nc_perms(n: usize) -> Vec<Permutation> {
    let mut perms: Vec<Permutation> = enumerate_nc_partitions(n)
        .iter()
        .map(|part| Permutation::from_cycles(n, &part.blocks()).expect("blocks are disjoint"))
        .collect();
    perms.sort();
    perms
}

// ---------------------------------------------------------------------------
// Pairing enumeration
// ---------------------------------------------------------------------------

/// Visit all perfect matchings of `[m]` as involution image maps.
pub fn for_each_pairing(m: usize, mut f: impl FnMut(&[usize])) {
    if m % 2 != 0 {
        return;
    }
    let mut partner = vec![usize::MAX; m];
    pair_rec(&mut partner, &mut f);
}

fn pair_rec(partner: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    let m = partner.len();
    let Some(a) = partner.iter().position(|&p| p == usize::MAX) else {
        f(partner);
        return;
    };
    for b in a + 1..m {
        if partner[b] == usize::MAX {
            partner[a] = b;
            partner[b] = a;
            pair_rec(partner, f);
            partner[a] = usize::MAX;
            partner[b] = usize::MAX;
        }
    }
}

fn cycle_count_of_map(map: impl Fn(usize) -> usize, m: usize, seen: &mut [bool]) -> usize {
    seen.fill(false);
    let mut count = 0;
    for start in 0..m {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = map(j);
        }
    }
    count
}

/// Allocation-free check that the cycles of `map` merge all circles.
fn circles_connected(map: &[usize], circle: &[usize], r: usize) -> bool {
    debug_assert!(r <= 8);
    let mut comp = [0usize; 8];
    for (i, slot) in comp.iter_mut().enumerate().take(r) {
        *slot = i;
    }
    for (i, &v) in map.iter().enumerate() {
        let a = comp[circle[i]];
        let b = comp[circle[v]];
        if a != b {
            for slot in comp.iter_mut().take(r) {
                if *slot == b {
                    *slot = a;
                }
            }
        }
    }
    comp[..r].iter().all(|&c| c == comp[0])
}

/// Annular membership test shared by the pairing and full enumerations:
/// `#(p) + #(p^-1 gamma) = m - r + 2` and `p ∨ gamma = 1_m`.
fn in_annular_class(
    map: &[usize],
    inv: &[usize],
    gamma_map: &[usize],
    circle: &[usize],
    r: usize,
    seen: &mut [bool],
) -> bool {
    let m = map.len();
    if !circles_connected(map, circle, r) {
        return false;
    }
    let cp = cycle_count_of_map(|i| map[i], m, seen);
    if cp + 1 > m + 2 - r {
        // the second factor has at least one cycle
        return false;
    }
    let cq = cycle_count_of_map(|i| inv[gamma_map[i]], m, seen);
    cp + cq == m + 2 - r
}

/// Non-crossing pairings of the shape (all cycles of size two, metric
/// condition, connects every circle when `r > 1`). For `r = 1` the
/// connectivity condition is vacuous and the class is the classical one.
pub fn enumerate_nc2(shape: &AnnulusShape) -> Vec<Permutation> {
    let m = shape.m();
    let gamma = shape.gamma();
    let gamma_map = gamma.images().to_vec();
    let circle: Vec<usize> = (0..m).map(|i| shape.circle_of(i)).collect();
    let r = shape.r();
    let mut out = Vec::new();
    let mut seen = vec![false; m];
    for_each_pairing(m, |partner| {
        if in_annular_class(partner, partner, &gamma_map, &circle, r, &mut seen) {
            out.push(Permutation::new(partner.to_vec()).expect("involution map"));
        }
    });
    out.sort();
    out
}

/// Pairings graded by through-string count (`r = 2`).
pub fn enumerate_nc2_through(shape: &AnnulusShape, k: usize) -> Vec<Permutation> {
    enumerate_nc2(shape)
        .into_iter()
        .filter(|p| through_strings(p, shape).expect("pairing") == k)
        .collect()
}

// ---------------------------------------------------------------------------
// Full annular class
// ---------------------------------------------------------------------------

/// All annular non-crossing permutations of the shape. Filters `S_m`
/// in parallel over the image of the first point; hard-capped at
/// `m = `[`SNC_MAX_M`].
pub fn enumerate_snc(shape: &AnnulusShape) -> Result<Vec<Permutation>> {
    let m = shape.m();
    check_bound(m, SNC_MAX_M)?;
    if shape.r() == 1 {
        return Ok(enumerate_nc_perms(m));
    }
    let gamma = shape.gamma();
    let gamma_map = gamma.images().to_vec();
    let circle: Vec<usize> = (0..m).map(|i| shape.circle_of(i)).collect();
    let r = shape.r();
    let mut all: Vec<Permutation> = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut found = Vec::new();
            let mut map: Vec<usize> = (0..m).collect();
            map.swap(0, first);
            let mut inv = vec![0usize; m];
            let mut seen = vec![false; m];
            snc_visit(&mut map, 1, &mut |candidate| {
                for (i, &v) in candidate.iter().enumerate() {
                    inv[v] = i;
                }
                if in_annular_class(candidate, &inv, &gamma_map, &circle, r, &mut seen) {
                    found.push(Permutation::new(candidate.to_vec()).expect("bijection"));
                }
            });
            found
        })
        .reduce(Vec::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });
    all.sort();
    Ok(all)
}

fn snc_visit(map: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    let n = map.len();
    if k == n {
        f(map);
        return;
    }
    for i in k..n {
        map.swap(k, i);
        snc_visit(map, k + 1, f);
        map.swap(k, i);
    }
}

// ---------------------------------------------------------------------------
// Closed-form counts
// ---------------------------------------------------------------------------

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut num = BigInt::from(1);
    for i in 0..k.min(n - k) {
        num = num * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    num
}

pub fn catalan(k: usize) -> BigInt {
    binomial(2 * k, k) / BigInt::from(k + 1)
}

/// `|NC_2(n)|`: the Catalan number of `n/2`, zero for odd `n`, one for
/// `n = 0` (the empty pairing).
pub fn nc2_count(n: usize) -> BigInt {
    if n % 2 != 0 {
        BigInt::from(0)
    } else {
        catalan(n / 2)
    }
}

/// Pairings of a two-circle shape with exactly one through string; both
/// circle sizes must be odd for the class to be nonempty.
pub fn nc2_through1_count(m1: usize, m2: usize) -> BigInt {
    if m1 % 2 == 0 || m2 % 2 == 0 {
        return BigInt::from(0);
    }
    BigInt::from(m1) * BigInt::from(m2) * nc2_count(m1 - 1) * nc2_count(m2 - 1)
}

/// Pairings of a two-circle shape with exactly two through strings:
/// `(m1 m2 / 2) |NC_2(m1)| |NC_2(m2)|`, zero unless both sizes are even.
pub fn nc2_through2_count(m1: usize, m2: usize) -> BigInt {
    if m1 % 2 != 0 || m2 % 2 != 0 {
        return BigInt::from(0);
    }
    BigInt::from(m1) * BigInt::from(m2) * nc2_count(m1) * nc2_count(m2) / BigInt::from(2)
}

/// Independent route to the two-through count via point selections:
/// `2 binom(m1, m1/2 - 1) binom(m2, m2/2 - 1)`.
pub fn nc2_through2_count_binomial(m1: usize, m2: usize) -> BigInt {
    if m1 % 2 != 0 || m2 % 2 != 0 {
        return BigInt::from(0);
    }
    BigInt::from(2) * binomial(m1, m1 / 2 - 1) * binomial(m2, m2 / 2 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::for_each_permutation;

    #[test]
    fn nc3_has_five_elements() {
        let perms = enumerate_nc_perms(3);
        assert_eq!(perms.len(), 5);
        let strings: Vec<String> = perms.iter().map(|p| p.to_string()).collect();
        for want in ["(1,2,3)", "(1)(2,3)", "(1,3)(2)", "(1,2)(3)", "(1)(2)(3)"] {
            assert!(strings.contains(&want.to_string()), "missing {want}");
        }
    }

    #[test]
    fn nc_counts_are_catalan() {
        for n in 1..=7 {
            assert_eq!(BigInt::from(enumerate_nc_partitions(n).len()), catalan(n));
        }
    }

    #[test]
    fn nc2_counts_are_catalan() {
        for k in 1..=7usize {
            let shape = AnnulusShape::new(vec![2 * k]).unwrap();
            assert_eq!(BigInt::from(enumerate_nc2(&shape).len()), catalan(k));
        }
        // odd sizes are empty
        let odd = AnnulusShape::new(vec![5]).unwrap();
        assert!(enumerate_nc2(&odd).is_empty());
        let odd3 = AnnulusShape::new(vec![1, 1, 1]).unwrap();
        assert!(enumerate_nc2(&odd3).is_empty());
    }

    #[test]
    fn crossing_bound_with_equality_exactly_on_nc() {
        for n in 1..=6usize {
            let shape = AnnulusShape::new(vec![n]).unwrap();
            let gamma = shape.gamma();
            let nc = enumerate_nc_perms(n);
            for_each_permutation(n, |map| {
                let p = Permutation::new(map.to_vec()).unwrap();
                let q = p.inverse().compose(&gamma).unwrap();
                let total = p.num_cycles() + q.num_cycles();
                assert!(total <= n + 1);
                assert_eq!(total == n + 1, nc.binary_search(&p).is_ok());
            });
        }
    }

    #[test]
    fn planarity_identity_examples() {
        let shape = AnnulusShape::new(vec![4, 3, 4, 3]).unwrap();
        let pi = Permutation::parse("(1,3,5,6)(2)(4)(7,8,9)(10,11)(12,13)(14)", 14).unwrap();
        assert!(is_planar_relative(&pi, &shape));
        // identity is planar for every shape
        for parts in [vec![5], vec![2, 3], vec![2, 2, 2]] {
            let shape = AnnulusShape::new(parts).unwrap();
            assert!(is_planar_relative(&Permutation::identity(shape.m()), &shape));
        }
        // exhaustive on S_4 against two circles of size 2: some full cycles fail
        let shape22 = AnnulusShape::new(vec![2, 2]).unwrap();
        let bad = Permutation::parse("(1,3,2,4)", 4).unwrap();
        assert!(!is_planar_relative(&bad, &shape22));
        let good = Permutation::parse("(1,2,3,4)", 4).unwrap();
        assert!(is_planar_relative(&good, &shape22));
    }

    #[test]
    fn annular_metric_holds_on_pairing_class() {
        for (m1, m2) in [(2, 2), (2, 4), (4, 4), (3, 3), (1, 3)] {
            let shape = AnnulusShape::new(vec![m1, m2]).unwrap();
            let gamma = shape.gamma();
            for p in enumerate_nc2(&shape) {
                let q = p.inverse().compose(&gamma).unwrap();
                assert_eq!(p.length() + q.length(), gamma.length() + 2);
            }
        }
    }

    #[test]
    fn nc2_annulus_small_cases() {
        let shape = AnnulusShape::new(vec![2, 2]).unwrap();
        let got = enumerate_nc2(&shape);
        assert_eq!(got.len(), 2);
        let strings: Vec<String> = got.iter().map(|p| p.to_string()).collect();
        assert!(strings.contains(&"(1,3)(2,4)".to_string()));
        assert!(strings.contains(&"(1,4)(2,3)".to_string()));
        let shape222 = AnnulusShape::new(vec![2, 2, 2]).unwrap();
        assert_eq!(enumerate_nc2(&shape222).len(), 8);
        let shape112 = AnnulusShape::new(vec![1, 1, 2]).unwrap();
        assert_eq!(enumerate_nc2(&shape112).len(), 2);
    }

    #[test]
    fn through_string_examples() {
        let shape = AnnulusShape::new(vec![2, 2]).unwrap();
        let p = Permutation::parse("(1,3)(2,4)", 4).unwrap();
        assert_eq!(through_strings(&p, &shape).unwrap(), 2);
        let q = Permutation::parse("(1,2)(3,4)", 4).unwrap();
        assert_eq!(through_strings(&q, &shape).unwrap(), 0);
        let not_pairing = Permutation::parse("(1,2,3)(4)", 4).unwrap();
        assert!(through_strings(&not_pairing, &shape).is_err());
    }

    #[test]
    fn through_grading_partitions_the_class() {
        for (m1, m2) in [(2, 2), (4, 4), (3, 3), (2, 4), (5, 3), (6, 4)] {
            let shape = AnnulusShape::new(vec![m1, m2]).unwrap();
            let all = enumerate_nc2(&shape).len();
            let mut by_k = 0;
            for k in 1..=m1.min(m2) {
                by_k += enumerate_nc2_through(&shape, k).len();
            }
            assert_eq!(all, by_k, "shape ({m1},{m2})");
        }
    }

    #[test]
    fn through_count_closed_forms_match_enumeration() {
        for (m1, m2) in [(2, 2), (2, 4), (4, 4), (3, 3), (1, 3), (5, 3), (6, 2)] {
            let shape = AnnulusShape::new(vec![m1, m2]).unwrap();
            assert_eq!(
                nc2_through1_count(m1, m2),
                BigInt::from(enumerate_nc2_through(&shape, 1).len()),
                "k=1 ({m1},{m2})"
            );
            assert_eq!(
                nc2_through2_count(m1, m2),
                BigInt::from(enumerate_nc2_through(&shape, 2).len()),
                "k=2 ({m1},{m2})"
            );
            assert_eq!(nc2_through2_count(m1, m2), nc2_through2_count_binomial(m1, m2));
        }
    }

    #[test]
    fn snc_small_classes() {
        let shape11 = AnnulusShape::new(vec![1, 1]).unwrap();
        let got = enumerate_snc(&shape11).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].to_string(), "(1,2)");

        let shape12 = AnnulusShape::new(vec![1, 2]).unwrap();
        let got = enumerate_snc(&shape12).unwrap();
        let strings: Vec<String> = got.iter().map(|p| p.to_string()).collect();
        assert_eq!(got.len(), 4);
        for want in ["(1,2,3)", "(1,3,2)", "(1,2)(3)", "(1,3)(2)"] {
            assert!(strings.contains(&want.to_string()), "missing {want}");
        }

        let shape111 = AnnulusShape::new(vec![1, 1, 1]).unwrap();
        let got = enumerate_snc(&shape111).unwrap();
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn snc_contains_nc2_as_pairings() {
        let shape = AnnulusShape::new(vec![2, 4]).unwrap();
        let snc = enumerate_snc(&shape).unwrap();
        for p in enumerate_nc2(&shape) {
            assert!(snc.binary_search(&p).is_ok());
        }
    }
}
