//! Moment/cumulant calculus up to order three.
//!
//! Moments of order `r` are sums of multiplicative cumulant products over
//! the non-crossing partitioned permutations of the `r`-circle shape: each
//! overlay block containing cycles of sizes `s_1 <= .. <= s_l` contributes
//! the order-`l` cumulant at those indices. The map from cumulants to
//! moments is unitriangular, so it inverts exactly by processing keys in
//! increasing total size.
//!
//! Three independent routes compute the third-order moment of a Wigner
//! matrix: the partitioned-permutation sum against the Wigner cumulant
//! table, the closed counting formula, and the sweep over all quotient
//! graphs weighted by their limit class.

use crate::annular::{enumerate_nc2, nc2_count};
use crate::graphs::{fold_classified, weight};
use crate::partitioned::{enumerate_ps_nc, family_count, PartitionedPermutation, PsFamily};
use crate::poly::{CumulantPolynomial, EntrySym, MPoly, Sym};
use crate::shape::AnnulusShape;
use crate::{check_bound, Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;

/// Formal cumulant or moment symbol indexed by one, two or three sizes.
/// Indices are kept sorted, matching the symmetry of the sequences.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CumSym {
    One(usize),
    Two(usize, usize),
    Three(usize, usize, usize),
}

impl CumSym {
    pub fn one(m: usize) -> Self {
        CumSym::One(m)
    }

    pub fn two(p: usize, q: usize) -> Self {
        CumSym::Two(p.min(q), p.max(q))
    }

    pub fn three(p: usize, q: usize, r: usize) -> Self {
        let mut v = [p, q, r];
        v.sort_unstable();
        CumSym::Three(v[0], v[1], v[2])
    }
}

impl Sym for CumSym {
    fn render(&self) -> String {
        match self {
            CumSym::One(m) => format!("k{m}"),
            CumSym::Two(p, q) => format!("k{{{p},{q}}}"),
            CumSym::Three(p, q, r) => format!("k{{{p},{q},{r}}}"),
        }
    }
}

/// Keyed polynomial values for the three cumulant (or moment) orders.
/// Keys are stored sorted; lookups normalize, matching the symmetry of
/// the sequences under argument permutation.
#[derive(Clone, Debug)]
pub struct SymTable<V: Sym> {
    pub order1: BTreeMap<usize, MPoly<V>>,
    pub order2: BTreeMap<(usize, usize), MPoly<V>>,
    pub order3: BTreeMap<(usize, usize, usize), MPoly<V>>,
}

/// Cumulant values keyed by order; missing entries read as zero.
pub type CumulantTable<V> = SymTable<V>;
/// Moment values keyed by order; entries must be present to invert.
pub type MomentTable<V> = SymTable<V>;

impl<V: Sym> Default for SymTable<V> {
    fn default() -> Self {
        SymTable {
            order1: BTreeMap::new(),
            order2: BTreeMap::new(),
            order3: BTreeMap::new(),
        }
    }
}

impl<V: Sym> SymTable<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set1(&mut self, m: usize, val: MPoly<V>) {
        self.order1.insert(m, val);
    }

    pub fn set2(&mut self, p: usize, q: usize, val: MPoly<V>) {
        self.order2.insert((p.min(q), p.max(q)), val);
    }

    pub fn set3(&mut self, p: usize, q: usize, r: usize, val: MPoly<V>) {
        let mut k = [p, q, r];
        k.sort_unstable();
        self.order3.insert((k[0], k[1], k[2]), val);
    }

    /// Sparse read: absent keys are zero.
    pub fn get1(&self, m: usize) -> MPoly<V> {
        self.order1.get(&m).cloned().unwrap_or_else(MPoly::zero)
    }

    pub fn get2(&self, p: usize, q: usize) -> MPoly<V> {
        self.order2
            .get(&(p.min(q), p.max(q)))
            .cloned()
            .unwrap_or_else(MPoly::zero)
    }

    pub fn get3(&self, p: usize, q: usize, r: usize) -> MPoly<V> {
        let mut k = [p, q, r];
        k.sort_unstable();
        self.order3
            .get(&(k[0], k[1], k[2]))
            .cloned()
            .unwrap_or_else(MPoly::zero)
    }

    fn get1_strict(&self, m: usize) -> Result<MPoly<V>> {
        self.order1
            .get(&m)
            .cloned()
            .ok_or_else(|| Error::MissingMoment(format!("order 1 index {m}")))
    }

    fn get2_strict(&self, p: usize, q: usize) -> Result<MPoly<V>> {
        self.order2
            .get(&(p.min(q), p.max(q)))
            .cloned()
            .ok_or_else(|| Error::MissingMoment(format!("order 2 index ({p},{q})")))
    }

    fn get3_strict(&self, p: usize, q: usize, r: usize) -> Result<MPoly<V>> {
        let mut k = [p, q, r];
        k.sort_unstable();
        self.order3
            .get(&(k[0], k[1], k[2]))
            .cloned()
            .ok_or_else(|| Error::MissingMoment(format!("order 3 index ({p},{q},{r})")))
    }
}

/// The cumulants of a Wigner ensemble up to order three: second order-one
/// cumulant one, `2 k4` at `(2,2)`, `4 k6` at `(2,2,2)`, `kdiag4 - 2 k4`
/// at `(2,1,1)` and its permutations, zero everywhere else.
pub fn wigner_cumulants() -> CumulantTable<EntrySym> {
    let mut t = SymTable::new();
    t.set1(2, CumulantPolynomial::one());
    t.set2(
        2,
        2,
        CumulantPolynomial::var(EntrySym::K4).scale(&BigRational::from_integer(BigInt::from(2))),
    );
    t.set3(
        2,
        2,
        2,
        CumulantPolynomial::var(EntrySym::K6).scale(&BigRational::from_integer(BigInt::from(4))),
    );
    t.set3(
        2,
        1,
        1,
        CumulantPolynomial::var(EntrySym::KDiag4)
            - CumulantPolynomial::var(EntrySym::K4).scale(&BigRational::from_integer(BigInt::from(2))),
    );
    t
}

/// A table sending every key up to the total-size ceiling to its own
/// formal symbol; moment sums against it come out fully symbolic.
pub fn symbolic_table(max_total: usize) -> SymTable<CumSym> {
    let mut t = SymTable::new();
    for m in 1..=max_total {
        t.set1(m, MPoly::var(CumSym::one(m)));
    }
    for p in 1..=max_total {
        for q in p..=max_total {
            if p + q <= max_total {
                t.set2(p, q, MPoly::var(CumSym::two(p, q)));
            }
        }
    }
    for p in 1..=max_total {
        for q in p..=max_total {
            for r in q..=max_total {
                if p + q + r <= max_total {
                    t.set3(p, q, r, MPoly::var(CumSym::three(p, q, r)));
                }
            }
        }
    }
    t
}

/// Multiplicative extension: the product over overlay blocks of the
/// cumulant at the sorted cycle sizes inside the block.
fn block_product<V: Sym>(pp: &PartitionedPermutation, table: &SymTable<V>) -> Result<MPoly<V>> {
    let cycles = pp.perm().cycles();
    let overlay = pp.overlay();
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for cycle in &cycles {
        groups.entry(overlay.block_of(cycle[0])).or_default().push(cycle.len());
    }
    let mut acc = MPoly::one();
    for sizes in groups.values_mut() {
        sizes.sort_unstable();
        let factor = match sizes.len() {
            1 => table.get1(sizes[0]),
            2 => table.get2(sizes[0], sizes[1]),
            3 => table.get3(sizes[0], sizes[1], sizes[2]),
            l => return Err(Error::InvalidClass(format!("cumulant order {l} unsupported"))),
        };
        if factor.is_zero() {
            return Ok(MPoly::zero());
        }
        acc = acc * factor;
    }
    Ok(acc)
}

/// Moment of order `shape.r()` as the partitioned-permutation sum against
/// a cumulant table.
pub fn alpha_from_cumulants<V: Sym>(
    shape: &AnnulusShape,
    table: &CumulantTable<V>,
    bound: usize,
) -> Result<MPoly<V>> {
    let mut total = MPoly::zero();
    for pp in enumerate_ps_nc(shape, bound)? {
        total = total + block_product(&pp, table)?;
    }
    Ok(total)
}

fn is_top(pp: &PartitionedPermutation, gamma: &crate::perm::Permutation) -> bool {
    pp.overlay().is_full() && pp.perm() == gamma
}

/// Invert the moment sums: solve for the cumulants of every key present
/// in the moment table, in increasing total size. All lower-order moments
/// a key depends on must be present.
pub fn cumulants_from_moments<V: Sym>(
    moments: &MomentTable<V>,
    bound: usize,
) -> Result<CumulantTable<V>> {
    let mut out: CumulantTable<V> = SymTable::new();
    // order one, ascending
    for (&n, alpha) in &moments.order1 {
        let shape = AnnulusShape::new(vec![n])?;
        let gamma = shape.gamma();
        let mut rest = MPoly::zero();
        for pp in enumerate_ps_nc(&shape, bound)? {
            if is_top(&pp, &gamma) {
                continue;
            }
            rest = rest + block_product_strict(&pp, &out)?;
        }
        out.set1(n, alpha.clone() - rest);
    }
    // order two by total size
    let mut keys2: Vec<(usize, usize)> = moments.order2.keys().copied().collect();
    keys2.sort_by_key(|&(p, q)| (p + q, p, q));
    for (p, q) in keys2 {
        let alpha = moments.get2_strict(p, q)?;
        let shape = AnnulusShape::new(vec![p, q])?;
        let gamma = shape.gamma();
        let mut rest = MPoly::zero();
        for pp in enumerate_ps_nc(&shape, bound)? {
            if is_top(&pp, &gamma) {
                continue;
            }
            rest = rest + block_product_strict(&pp, &out)?;
        }
        out.set2(p, q, alpha - rest);
    }
    // order three by total size
    let mut keys3: Vec<(usize, usize, usize)> = moments.order3.keys().copied().collect();
    keys3.sort_by_key(|&(p, q, r)| (p + q + r, p, q, r));
    for (p, q, r) in keys3 {
        let alpha = moments.get3_strict(p, q, r)?;
        let shape = AnnulusShape::new(vec![p, q, r])?;
        let gamma = shape.gamma();
        let mut rest = MPoly::zero();
        for pp in enumerate_ps_nc(&shape, bound)? {
            if is_top(&pp, &gamma) {
                continue;
            }
            rest = rest + block_product_strict(&pp, &out)?;
        }
        out.set3(p, q, r, alpha - rest);
    }
    Ok(out)
}

/// Like [`block_product`] against a partially built cumulant table:
/// referencing a key that is not yet solved is an error, not a zero.
fn block_product_strict<V: Sym>(
    pp: &PartitionedPermutation,
    table: &CumulantTable<V>,
) -> Result<MPoly<V>> {
    let cycles = pp.perm().cycles();
    let overlay = pp.overlay();
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for cycle in &cycles {
        groups.entry(overlay.block_of(cycle[0])).or_default().push(cycle.len());
    }
    let mut acc = MPoly::one();
    for sizes in groups.values_mut() {
        sizes.sort_unstable();
        let factor = match sizes.len() {
            1 => table.get1_strict(sizes[0])?,
            2 => table.get2_strict(sizes[0], sizes[1])?,
            3 => table.get3_strict(sizes[0], sizes[1], sizes[2])?,
            l => return Err(Error::InvalidClass(format!("cumulant order {l} unsupported"))),
        };
        acc = acc * factor;
    }
    Ok(acc)
}

/// First-order limiting moment: the number of non-crossing pairings.
pub fn alpha_first(m: usize) -> BigInt {
    nc2_count(m)
}

/// Second-order limiting moment:
/// `|NC_2(m1,m2)| + 2 k4 (m1 m2 / 4) |NC_2(m1)| |NC_2(m2)|`.
pub fn alpha_second(m1: usize, m2: usize) -> CumulantPolynomial {
    if (m1 + m2) % 2 != 0 {
        return CumulantPolynomial::zero();
    }
    let shape = AnnulusShape::new(vec![m1, m2]).expect("positive parts");
    let pairings = BigInt::from(enumerate_nc2(&shape).len());
    let coeff = BigRational::new(
        BigInt::from(2 * m1 * m2) * nc2_count(m1) * nc2_count(m2),
        BigInt::from(4),
    );
    CumulantPolynomial::constant_int(pairings) + CumulantPolynomial::var(EntrySym::K4).scale(&coeff)
}

/// Third-order limiting moment from the counting formulas:
/// `|NC_2| + 4 k6 |J3p| + 4 k4^2 |J2x2p| + 2 k4 |J2p| + (kdiag4 - 2 k4) |J3np|`.
pub fn alpha_third_closed(shape: &AnnulusShape, bound: usize) -> Result<CumulantPolynomial> {
    if shape.r() != 3 {
        return Err(Error::InvalidClass("third-order moments need three circles".into()));
    }
    check_bound(shape.m(), bound)?;
    if shape.m() % 2 != 0 {
        return Ok(CumulantPolynomial::zero());
    }
    let int = |b: BigInt| BigRational::from_integer(b);
    let pairings = BigInt::from(enumerate_nc2(shape).len());
    let j3 = family_count(PsFamily::JoinThreePairings, shape, bound)?;
    let j22 = family_count(PsFamily::JoinTwoTwicePairings, shape, bound)?;
    let j2 = family_count(PsFamily::JoinTwoPairings, shape, bound)?;
    let near = family_count(PsFamily::JoinThreeNearPairings, shape, bound)?;
    let k4 = CumulantPolynomial::var(EntrySym::K4);
    let k6 = CumulantPolynomial::var(EntrySym::K6);
    let kd = CumulantPolynomial::var(EntrySym::KDiag4);
    let mut total = CumulantPolynomial::constant_int(pairings);
    total = total + k6.scale(&int(BigInt::from(4) * j3));
    total = total + k4.pow(2).scale(&int(BigInt::from(4) * j22));
    total = total + k4.scale(&int(BigInt::from(2) * &j2 - BigInt::from(2) * &near));
    total = total + kd.scale(&int(near));
    Ok(total)
}

/// Third-order limiting moment as the sweep over all quotient partitions,
/// adding each limit class's weight.
pub fn alpha_third_graphsum(shape: &AnnulusShape, bound: usize) -> Result<CumulantPolynomial> {
    if shape.r() != 3 {
        return Err(Error::InvalidClass("third-order moments need three circles".into()));
    }
    check_bound(shape.m(), bound)?;
    Ok(fold_classified(
        shape,
        CumulantPolynomial::zero(),
        |_, class| match class.limit() {
            Some(c) => weight(c),
            None => CumulantPolynomial::zero(),
        },
        |a, b| a + b,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_MAX_M;

    fn shape(parts: &[usize]) -> AnnulusShape {
        AnnulusShape::new(parts.to_vec()).unwrap()
    }

    fn sym(max: usize) -> SymTable<CumSym> {
        symbolic_table(max)
    }

    fn var(k: CumSym) -> MPoly<CumSym> {
        MPoly::var(k)
    }

    fn n(c: i64) -> MPoly<CumSym> {
        MPoly::constant_i64(c)
    }

    #[test]
    fn wigner_table_entries() {
        let t = wigner_cumulants();
        assert_eq!(t.get1(2), CumulantPolynomial::one());
        assert_eq!(t.get1(3), CumulantPolynomial::zero());
        assert!(t.get3(1, 2, 2).is_zero());
        // symmetry through key normalization
        let expect = CumulantPolynomial::var(EntrySym::KDiag4)
            - CumulantPolynomial::var(EntrySym::K4).scale(&BigRational::from_integer(BigInt::from(2)));
        assert_eq!(t.get3(1, 2, 1), expect);
        assert_eq!(t.get3(2, 1, 1), expect);
    }

    #[test]
    fn symbolic_first_order_sums() {
        let t = sym(6);
        let a1 = alpha_from_cumulants(&shape(&[1]), &t, DEFAULT_MAX_M).unwrap();
        assert_eq!(a1, var(CumSym::one(1)));
        let a2 = alpha_from_cumulants(&shape(&[2]), &t, DEFAULT_MAX_M).unwrap();
        assert_eq!(a2, var(CumSym::one(2)) + var(CumSym::one(1)).pow(2));
        let a3 = alpha_from_cumulants(&shape(&[3]), &t, DEFAULT_MAX_M).unwrap();
        let expect = var(CumSym::one(3))
            + var(CumSym::one(2)) * var(CumSym::one(1)) * n(3)
            + var(CumSym::one(1)).pow(3);
        assert_eq!(a3, expect);
    }

    #[test]
    fn symbolic_second_order_sums() {
        let t = sym(6);
        let a11 = alpha_from_cumulants(&shape(&[1, 1]), &t, DEFAULT_MAX_M).unwrap();
        assert_eq!(a11, var(CumSym::one(2)) + var(CumSym::two(1, 1)));
        let a12 = alpha_from_cumulants(&shape(&[1, 2]), &t, DEFAULT_MAX_M).unwrap();
        let expect = var(CumSym::one(3)) * n(2)
            + var(CumSym::one(2)) * var(CumSym::one(1)) * n(2)
            + var(CumSym::two(1, 2))
            + var(CumSym::one(1)) * var(CumSym::two(1, 1)) * n(2);
        assert_eq!(a12, expect);
    }

    #[test]
    fn symbolic_third_order_sum_smallest() {
        let t = sym(6);
        let a111 = alpha_from_cumulants(&shape(&[1, 1, 1]), &t, DEFAULT_MAX_M).unwrap();
        let expect = var(CumSym::one(3)) * n(2)
            + var(CumSym::two(1, 2)) * n(3)
            + var(CumSym::three(1, 1, 1));
        assert_eq!(a111, expect);
    }

    #[test]
    fn inversion_golden_formulas() {
        // moments as their own symbols, cumulants solved in terms of them
        let mut moments: MomentTable<CumSym> = SymTable::new();
        for m in 1..=3 {
            moments.set1(m, var(CumSym::one(m)));
        }
        moments.set2(1, 1, var(CumSym::two(1, 1)));
        moments.set2(1, 2, var(CumSym::two(1, 2)));
        moments.set3(1, 1, 1, var(CumSym::three(1, 1, 1)));
        let k = cumulants_from_moments(&moments, DEFAULT_MAX_M).unwrap();
        let a1 = var(CumSym::one(1));
        let a2 = var(CumSym::one(2));
        let a3 = var(CumSym::one(3));
        let a11 = var(CumSym::two(1, 1));
        let a12 = var(CumSym::two(1, 2));
        let a111 = var(CumSym::three(1, 1, 1));
        assert_eq!(k.get1(2), a2.clone() - a1.clone().pow(2));
        assert_eq!(
            k.get1(3),
            a3.clone() - a1.clone() * a2.clone() * n(3) + a1.clone().pow(3) * n(2)
        );
        assert_eq!(k.get2(1, 1), a11.clone() - a2.clone() + a1.clone().pow(2));
        assert_eq!(
            k.get2(1, 2),
            a12.clone() - a1.clone() * a11.clone() * n(2) - a3.clone() * n(2)
                + a1.clone() * a2.clone() * n(6)
                - a1.clone().pow(3) * n(4)
        );
        assert_eq!(
            k.get3(1, 1, 1),
            a111 - a12 * n(3) + a1.clone() * a11 * n(6) + a3 * n(4) - a1.clone() * a2 * n(12)
                + a1.pow(3) * n(8)
        );
    }

    #[test]
    fn forward_then_invert_is_identity_on_random_tables() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        let mut rational = |rng: &mut rand_chacha::ChaCha8Rng| {
            let num = rng.gen_range(-6i64..=6);
            let den = rng.gen_range(1i64..=4);
            MPoly::<CumSym>::constant(BigRational::new(BigInt::from(num), BigInt::from(den)))
        };
        // inverting a key of total size m consumes lower-order entries up
        // to total m, so the table is closed downward in totals
        let max_total = 7;
        let mut table: CumulantTable<CumSym> = SymTable::new();
        for m in 1..=max_total {
            table.set1(m, rational(&mut rng));
        }
        for p in 1..=max_total {
            for q in p..=max_total {
                if p + q <= max_total {
                    table.set2(p, q, rational(&mut rng));
                }
            }
        }
        for p in 1..=4usize {
            for q in p..=4 {
                for r in q..=4 {
                    if p + q + r <= max_total {
                        table.set3(p, q, r, rational(&mut rng));
                    }
                }
            }
        }
        // forward: moments for exactly the same keys
        let mut moments: MomentTable<CumSym> = SymTable::new();
        for &m in table.order1.keys() {
            moments.set1(m, alpha_from_cumulants(&shape(&[m]), &table, DEFAULT_MAX_M).unwrap());
        }
        let keys2: Vec<(usize, usize)> = table.order2.keys().copied().collect();
        for (p, q) in keys2 {
            moments.set2(p, q, alpha_from_cumulants(&shape(&[p, q]), &table, DEFAULT_MAX_M).unwrap());
        }
        let keys3: Vec<(usize, usize, usize)> = table.order3.keys().copied().collect();
        for (p, q, r) in keys3 {
            moments.set3(p, q, r, alpha_from_cumulants(&shape(&[p, q, r]), &table, DEFAULT_MAX_M).unwrap());
        }
        let back = cumulants_from_moments(&moments, DEFAULT_MAX_M).unwrap();
        assert_eq!(back.order1, table.order1);
        assert_eq!(back.order2, table.order2);
        assert_eq!(back.order3, table.order3);
    }

    #[test]
    fn missing_moment_is_an_error() {
        let mut moments: MomentTable<CumSym> = SymTable::new();
        moments.set1(3, var(CumSym::one(3))); // alpha_1, alpha_2 absent
        assert!(matches!(
            cumulants_from_moments(&moments, DEFAULT_MAX_M),
            Err(Error::MissingMoment(_))
        ));
    }

    #[test]
    fn first_and_second_order_wigner_values() {
        assert_eq!(alpha_first(4), BigInt::from(2));
        assert_eq!(alpha_first(6), BigInt::from(5));
        assert_eq!(alpha_first(3), BigInt::from(0));
        let a22 = alpha_second(2, 2);
        let expect = CumulantPolynomial::constant_i64(2)
            + CumulantPolynomial::var(EntrySym::K4).scale(&BigRational::from_integer(BigInt::from(2)));
        assert_eq!(a22, expect);
        assert!(alpha_second(2, 3).is_zero());
    }

    #[test]
    fn second_order_routes_agree() {
        let w = wigner_cumulants();
        for (m1, m2) in [(1, 1), (1, 3), (2, 2), (2, 4), (3, 3), (4, 4), (1, 5), (2, 6)] {
            let via_ps = alpha_from_cumulants(&shape(&[m1, m2]), &w, DEFAULT_MAX_M).unwrap();
            assert_eq!(via_ps, alpha_second(m1, m2), "shape ({m1},{m2})");
        }
    }

    #[test]
    fn third_order_routes_agree_on_small_shapes() {
        let w = wigner_cumulants();
        for parts in [
            vec![1, 1, 1],
            vec![1, 1, 2],
            vec![2, 1, 1],
            vec![2, 2, 2],
            vec![1, 2, 3],
            vec![2, 2, 4],
        ] {
            let sh = shape(&parts);
            let closed = alpha_third_closed(&sh, DEFAULT_MAX_M).unwrap();
            let graph = alpha_third_graphsum(&sh, DEFAULT_MAX_M).unwrap();
            let ps = alpha_from_cumulants(&sh, &w, DEFAULT_MAX_M).unwrap();
            assert_eq!(closed, graph, "closed vs graph on {parts:?}");
            assert_eq!(closed, ps, "closed vs ps on {parts:?}");
        }
    }

    #[test]
    fn third_order_small_values() {
        // odd total vanishes
        assert!(alpha_third_closed(&shape(&[1, 1, 1]), DEFAULT_MAX_M).unwrap().is_zero());
        // (2,2,2): 8 + 24 k4 + 4 k6
        let a222 = alpha_third_closed(&shape(&[2, 2, 2]), DEFAULT_MAX_M).unwrap();
        let k4 = CumulantPolynomial::var(EntrySym::K4);
        let k6 = CumulantPolynomial::var(EntrySym::K6);
        let expect = CumulantPolynomial::constant_i64(8)
            + k4.scale(&BigRational::from_integer(BigInt::from(24)))
            + k6.scale(&BigRational::from_integer(BigInt::from(4)));
        assert_eq!(a222, expect);
        // (2,1,1): 2 + kdiag4, the diagonal statistic enters
        let a211 = alpha_third_closed(&shape(&[2, 1, 1]), DEFAULT_MAX_M).unwrap();
        let expect = CumulantPolynomial::constant_i64(2) + CumulantPolynomial::var(EntrySym::KDiag4);
        assert_eq!(a211, expect);
    }

    #[test]
    fn moments_are_symmetric_in_their_arguments() {
        let w = wigner_cumulants();
        let a = alpha_from_cumulants(&shape(&[1, 2, 3]), &w, DEFAULT_MAX_M).unwrap();
        for parts in [[2, 1, 3], [3, 2, 1], [1, 3, 2]] {
            let b = alpha_from_cumulants(&shape(&parts), &w, DEFAULT_MAX_M).unwrap();
            assert_eq!(a, b, "{parts:?}");
        }
        assert_eq!(alpha_second(2, 4), alpha_second(4, 2));
    }
}
