//! Partitioned permutations `(V, p)` and the non-crossing families on one,
//! two and three circles.
//!
//! A partitioned permutation overlays a partition `V` on the cycles of `p`
//! (every cycle inside a block) and has length `2|V| - |p|`. The
//! three-circle family splits into four disjoint pieces depending on how
//! many circles the permutation itself connects and how the overlay joins
//! cycles across circles; enumeration is constructive per piece rather
//! than by filtering all pairs, whose raw space is doubly exponential.

use crate::annular::{
    enumerate_nc2, enumerate_nc2_through, enumerate_nc_perms, enumerate_snc, nc2_count,
    nc2_through1_count, nc2_through2_count,
};
use crate::perm::Permutation;
use crate::setpart::SetPartition;
use crate::shape::AnnulusShape;
use crate::{check_bound, Error, Result};
use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartitionedPermutation {
    v: SetPartition,
    p: Permutation,
}

impl PartitionedPermutation {
    pub fn new(v: SetPartition, p: Permutation) -> Result<Self> {
        if v.n() != p.n() {
            return Err(Error::SizeMismatch(v.n(), p.n()));
        }
        if !p.cycle_partition().leq(&v)? {
            return Err(Error::CyclesNotWithinBlocks);
        }
        Ok(PartitionedPermutation { v, p })
    }

    /// `(0_p, p)`: the overlay is exactly the cycle partition.
    pub fn from_perm(p: Permutation) -> Self {
        PartitionedPermutation { v: p.cycle_partition(), p }
    }

    pub fn overlay(&self) -> &SetPartition {
        &self.v
    }

    pub fn perm(&self) -> &Permutation {
        &self.p
    }

    pub fn n(&self) -> usize {
        self.p.n()
    }

    /// `2|V| - |p|`.
    pub fn length(&self) -> usize {
        2 * self.v.length() - self.p.length()
    }

    fn sort_key(&self) -> (String, String) {
        (self.p.to_string(), self.v.to_string())
    }
}

impl std::fmt::Debug for PartitionedPermutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(v={}, pi={})", self.v, self.p)
    }
}

impl Serialize for PartitionedPermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PartitionedPermutation", 2)?;
        s.serialize_field("pi", &self.p.to_string())?;
        s.serialize_field("v", &self.v.to_string())?;
        s.end()
    }
}

/// The bipartite graph with one black vertex per block of `v`, one white
/// vertex per block of `p ∨ gamma`, and one edge per cycle of `p`.
#[derive(Clone, Debug)]
pub struct OverlayGraph {
    pub black: usize,
    pub white: usize,
    /// `(black, white)` endpoint per cycle of `p`, cycles in canonical order.
    pub edges: Vec<(usize, usize)>,
    pub is_forest: bool,
}

/// Build the overlay graph for `(v, p)` against an arbitrary reference
/// permutation. The graph is a union of trees exactly when
/// `|v ∨ gamma| - |p ∨ gamma| = |v| - |p|`.
pub fn overlay_graph(v: &SetPartition, p: &Permutation, gamma: &Permutation) -> Result<OverlayGraph> {
    if v.n() != p.n() || p.n() != gamma.n() {
        return Err(Error::SizeMismatch(v.n(), p.n().max(gamma.n())));
    }
    if !p.cycle_partition().leq(v)? {
        return Err(Error::CyclesNotWithinBlocks);
    }
    let join = p.cycle_partition().join(&gamma.cycle_partition())?;
    let edges: Vec<(usize, usize)> = p
        .cycles()
        .iter()
        .map(|cycle| (v.block_of(cycle[0]), join.block_of(cycle[0])))
        .collect();
    let v_join_gamma = v.join(&gamma.cycle_partition())?;
    let lhs = v_join_gamma.length() as isize - join.length() as isize;
    let rhs = v.length() as isize - p.length() as isize;
    Ok(OverlayGraph {
        black: v.num_blocks(),
        white: join.num_blocks(),
        edges,
        is_forest: lhs == rhs,
    })
}

/// Shape convenience wrapper around [`overlay_graph`].
pub fn gamma_forest(v: &SetPartition, p: &Permutation, shape: &AnnulusShape) -> Result<OverlayGraph> {
    overlay_graph(v, p, &shape.gamma())
}

/// Partial order on partitioned permutations: `(V,p) <= (U,g)` when
/// `V <= U`, the overlay graph of `(V,p)` against `g` is a union of trees,
/// and `|p| + |p^-1 g| + |g| = 2 |p ∨ g|`.
pub fn pp_leq(a: &PartitionedPermutation, b: &PartitionedPermutation) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    if !a.overlay().leq(b.overlay())? {
        return Ok(false);
    }
    let gamma = b.perm();
    let graph = overlay_graph(a.overlay(), a.perm(), gamma)?;
    if !graph.is_forest {
        return Ok(false);
    }
    let other = a.perm().inverse().compose(gamma)?;
    let join = a.perm().cycle_partition().join(&gamma.cycle_partition())?;
    Ok(a.perm().length() + other.length() + gamma.length() == 2 * join.length())
}

// ---------------------------------------------------------------------------
// Families on three circles
// ---------------------------------------------------------------------------

/// The disjoint pieces of the three-circle family plus the pairing-restricted
/// subfamilies used by the counting identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PsFamily {
    /// Permutations connecting all three circles, trivial overlay.
    Snc,
    /// One overlay block joins three cycles, one per circle.
    JoinThree,
    /// Two overlay blocks each join two cycles across circles.
    JoinTwoTwice,
    /// The permutation connects two circles; one overlay block joins one of
    /// its cycles with a cycle on the third circle.
    JoinTwo,
    /// [`PsFamily::JoinThree`] with every circle carrying a pairing.
    JoinThreePairings,
    /// [`PsFamily::JoinTwoTwice`] with every circle carrying a pairing.
    JoinTwoTwicePairings,
    /// [`PsFamily::JoinTwo`] with both parts pairings.
    JoinTwoPairings,
    /// [`PsFamily::JoinTwoPairings`] with exactly two through strings.
    JoinTwoPairingsTwoThrough,
    /// [`PsFamily::JoinTwoPairings`] with exactly one through string which
    /// is itself the joined cycle.
    JoinTwoPairingsThroughBlock,
    /// [`PsFamily::JoinThree`] where the two odd circles carry a
    /// near-pairing (one fixed point each), the even circle a pairing, and
    /// the joining block merges the two fixed points with a pair.
    JoinThreeNearPairings,
}

impl PsFamily {
    pub const ALL: [PsFamily; 10] = [
        PsFamily::Snc,
        PsFamily::JoinThree,
        PsFamily::JoinTwoTwice,
        PsFamily::JoinTwo,
        PsFamily::JoinThreePairings,
        PsFamily::JoinTwoTwicePairings,
        PsFamily::JoinTwoPairings,
        PsFamily::JoinTwoPairingsTwoThrough,
        PsFamily::JoinTwoPairingsThroughBlock,
        PsFamily::JoinThreeNearPairings,
    ];

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "snc" => PsFamily::Snc,
            "join-three" => PsFamily::JoinThree,
            "join-two-twice" => PsFamily::JoinTwoTwice,
            "join-two" => PsFamily::JoinTwo,
            "join-three-pairings" => PsFamily::JoinThreePairings,
            "join-two-twice-pairings" => PsFamily::JoinTwoTwicePairings,
            "join-two-pairings" => PsFamily::JoinTwoPairings,
            "join-two-pairings-two-through" => PsFamily::JoinTwoPairingsTwoThrough,
            "join-two-pairings-through-block" => PsFamily::JoinTwoPairingsThroughBlock,
            "join-three-near-pairings" => PsFamily::JoinThreeNearPairings,
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            PsFamily::Snc => "snc",
            PsFamily::JoinThree => "join-three",
            PsFamily::JoinTwoTwice => "join-two-twice",
            PsFamily::JoinTwo => "join-two",
            PsFamily::JoinThreePairings => "join-three-pairings",
            PsFamily::JoinTwoTwicePairings => "join-two-twice-pairings",
            PsFamily::JoinTwoPairings => "join-two-pairings",
            PsFamily::JoinTwoPairingsTwoThrough => "join-two-pairings-two-through",
            PsFamily::JoinTwoPairingsThroughBlock => "join-two-pairings-through-block",
            PsFamily::JoinThreeNearPairings => "join-three-near-pairings",
        }
    }
}

fn sort_canonical(mut pps: Vec<PartitionedPermutation>) -> Vec<PartitionedPermutation> {
    pps.sort_by_cached_key(|pp| pp.sort_key());
    pps
}

/// Relabel a permutation on `0..positions.len()` through an increasing
/// position list into `[m]`; unmentioned points stay fixed.
fn embed(p: &Permutation, positions: &[usize], m: usize) -> Permutation {
    let mut map: Vec<usize> = (0..m).collect();
    for (i, &pos) in positions.iter().enumerate() {
        map[pos] = positions[p.apply(i)];
    }
    Permutation::new(map).expect("embedding preserves bijection")
}

/// Combine permutations supported on disjoint position sets.
fn combine(parts: &[Permutation], positions: &[Vec<usize>], m: usize) -> Permutation {
    let mut map: Vec<usize> = (0..m).collect();
    for (p, pos) in parts.iter().zip(positions) {
        for (i, &at) in pos.iter().enumerate() {
            map[at] = pos[p.apply(i)];
        }
    }
    Permutation::new(map).expect("disjoint supports")
}

/// Overlay that merges the given groups of cycles of `p` (each group a list
/// of cycle representatives) and keeps all other cycles as blocks.
fn overlay_merging(p: &Permutation, groups: &[Vec<usize>]) -> SetPartition {
    let base = p.cycle_partition();
    let mut raw: Vec<usize> = base.labels().to_vec();
    for group in groups {
        let target = base.block_of(group[0]);
        for &rep in &group[1..] {
            let from = base.block_of(rep);
            for slot in raw.iter_mut() {
                if *slot == from {
                    *slot = target;
                }
            }
        }
    }
    // raw still uses base labels; positions with merged labels share them
    let relabel: Vec<usize> = {
        let tmp: Vec<usize> = (0..p.n()).map(|i| raw[i]).collect();
        tmp
    };
    SetPartition::from_raw_labels(relabel)
}

/// Non-crossing partitions of an odd-size circle into pairs plus exactly
/// one fixed point, as permutations.
fn near_pairings(n: usize) -> Vec<Permutation> {
    if n % 2 == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let inner_shape = AnnulusShape::new(vec![n.max(2) - 1]);
    for s in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&i| i != s).collect();
        if n == 1 {
            out.push(Permutation::identity(1));
            continue;
        }
        let shape = inner_shape.as_ref().expect("n-1 >= 1 here").clone();
        for mu in enumerate_nc2(&shape) {
            out.push(embed(&mu, &rest, n));
        }
    }
    out.sort();
    out
}

fn splits_of_three() -> [(usize, usize, usize); 3] {
    // (a, b, c): the annular pair lives on circles a and b, the disc on c.
    [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
}

/// Enumerate one family on a three-circle shape.
pub fn enumerate_family(family: PsFamily, shape: &AnnulusShape, bound: usize) -> Result<Vec<PartitionedPermutation>> {
    if shape.r() != 3 {
        return Err(Error::InvalidClass("families are defined on three circles".into()));
    }
    let m = shape.m();
    check_bound(m, bound)?;
    let intervals: Vec<Vec<usize>> = (0..3).map(|j| shape.interval(j).collect()).collect();
    let mut out = Vec::new();
    match family {
        PsFamily::Snc => {
            for p in enumerate_snc(shape)? {
                out.push(PartitionedPermutation::from_perm(p));
            }
        }
        PsFamily::JoinThree | PsFamily::JoinThreePairings => {
            let per_circle: Vec<Vec<Permutation>> = (0..3)
                .map(|j| match family {
                    PsFamily::JoinThree => enumerate_nc_perms(shape.parts()[j]),
                    _ => enumerate_nc2(&AnnulusShape::new(vec![shape.parts()[j]]).expect("positive part")),
                })
                .collect();
            for p1 in &per_circle[0] {
                for p2 in &per_circle[1] {
                    for p3 in &per_circle[2] {
                        let p = combine(&[p1.clone(), p2.clone(), p3.clone()], &intervals, m);
                        let cycles = p.cycles();
                        for c1 in cycles.iter().filter(|c| shape.circle_of(c[0]) == 0) {
                            for c2 in cycles.iter().filter(|c| shape.circle_of(c[0]) == 1) {
                                for c3 in cycles.iter().filter(|c| shape.circle_of(c[0]) == 2) {
                                    let v = overlay_merging(&p, &[vec![c1[0], c2[0], c3[0]]]);
                                    out.push(PartitionedPermutation::new(v, p.clone())?);
                                }
                            }
                        }
                    }
                }
            }
        }
        PsFamily::JoinThreeNearPairings => {
            let evens: Vec<usize> = (0..3).filter(|&j| shape.parts()[j] % 2 == 0).collect();
            if evens.len() != 1 {
                return Ok(Vec::new());
            }
            let e = evens[0];
            let odds: Vec<usize> = (0..3).filter(|&j| j != e).collect();
            let even_parts = enumerate_nc2(&AnnulusShape::new(vec![shape.parts()[e]]).expect("positive"));
            let near1 = near_pairings(shape.parts()[odds[0]]);
            let near2 = near_pairings(shape.parts()[odds[1]]);
            for pe in &even_parts {
                for p1 in &near1 {
                    for p2 in &near2 {
                        let mut parts = vec![Permutation::identity(0); 3];
                        parts[e] = pe.clone();
                        parts[odds[0]] = p1.clone();
                        parts[odds[1]] = p2.clone();
                        let p = combine(&parts, &intervals, m);
                        let fix1 = intervals[odds[0]]
                            .iter()
                            .copied()
                            .find(|&i| p.apply(i) == i)
                            .expect("near-pairing has one fixed point");
                        let fix2 = intervals[odds[1]]
                            .iter()
                            .copied()
                            .find(|&i| p.apply(i) == i)
                            .expect("near-pairing has one fixed point");
                        let cycles = p.cycles();
                        for ce in cycles.iter().filter(|c| shape.circle_of(c[0]) == e) {
                            let v = overlay_merging(&p, &[vec![fix1, fix2, ce[0]]]);
                            out.push(PartitionedPermutation::new(v, p.clone())?);
                        }
                    }
                }
            }
        }
        PsFamily::JoinTwoTwice | PsFamily::JoinTwoTwicePairings => {
            let per_circle: Vec<Vec<Permutation>> = (0..3)
                .map(|j| match family {
                    PsFamily::JoinTwoTwice => enumerate_nc_perms(shape.parts()[j]),
                    _ => enumerate_nc2(&AnnulusShape::new(vec![shape.parts()[j]]).expect("positive part")),
                })
                .collect();
            let patterns = [((0usize, 1usize), (0usize, 2usize)), ((0, 1), (1, 2)), ((0, 2), (1, 2))];
            for p1 in &per_circle[0] {
                for p2 in &per_circle[1] {
                    for p3 in &per_circle[2] {
                        let p = combine(&[p1.clone(), p2.clone(), p3.clone()], &intervals, m);
                        let cycles = p.cycles();
                        let on = |j: usize| -> Vec<usize> {
                            cycles
                                .iter()
                                .filter(|c| shape.circle_of(c[0]) == j)
                                .map(|c| c[0])
                                .collect()
                        };
                        let reps: Vec<Vec<usize>> = (0..3).map(on).collect();
                        for &((a1, b1), (a2, b2)) in &patterns {
                            for &x in &reps[a1] {
                                for &y in &reps[b1] {
                                    for &z in &reps[a2] {
                                        for &w in &reps[b2] {
                                            // the shared circle must contribute two distinct cycles
                                            if (a1 == a2 && x == z)
                                                || (a1 == b2 && x == w)
                                                || (b1 == a2 && y == z)
                                                || (b1 == b2 && y == w)
                                            {
                                                continue;
                                            }
                                            let v = overlay_merging(&p, &[vec![x, y], vec![z, w]]);
                                            out.push(PartitionedPermutation::new(v, p.clone())?);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        PsFamily::JoinTwo
        | PsFamily::JoinTwoPairings
        | PsFamily::JoinTwoPairingsTwoThrough
        | PsFamily::JoinTwoPairingsThroughBlock => {
            for (a, b, c) in splits_of_three() {
                let pair_shape = AnnulusShape::new(vec![shape.parts()[a], shape.parts()[b]])?;
                let annular: Vec<Permutation> = match family {
                    PsFamily::JoinTwo => enumerate_snc(&pair_shape)?,
                    PsFamily::JoinTwoPairings => enumerate_nc2(&pair_shape),
                    PsFamily::JoinTwoPairingsTwoThrough => enumerate_nc2_through(&pair_shape, 2),
                    _ => enumerate_nc2_through(&pair_shape, 1),
                };
                if annular.is_empty() {
                    continue;
                }
                let disc: Vec<Permutation> = match family {
                    PsFamily::JoinTwo => enumerate_nc_perms(shape.parts()[c]),
                    _ => enumerate_nc2(&AnnulusShape::new(vec![shape.parts()[c]]).expect("positive part")),
                };
                let pair_positions: Vec<usize> =
                    intervals[a].iter().chain(intervals[b].iter()).copied().collect();
                for ann in &annular {
                    for d in &disc {
                        let p = combine(&[ann.clone(), d.clone()], &[pair_positions.clone(), intervals[c].clone()], m);
                        let cycles = p.cycles();
                        let annular_reps: Vec<usize> = cycles
                            .iter()
                            .filter(|cyc| shape.circle_of(cyc[0]) != c)
                            .map(|cyc| cyc[0])
                            .collect();
                        let disc_reps: Vec<usize> = cycles
                            .iter()
                            .filter(|cyc| shape.circle_of(cyc[0]) == c)
                            .map(|cyc| cyc[0])
                            .collect();
                        for &x in &annular_reps {
                            if family == PsFamily::JoinTwoPairingsThroughBlock {
                                // the joined cycle must be the unique through string
                                let partner = p.apply(x);
                                if shape.circle_of(x) == shape.circle_of(partner) {
                                    continue;
                                }
                            }
                            for &y in &disc_reps {
                                let v = overlay_merging(&p, &[vec![x, y]]);
                                out.push(PartitionedPermutation::new(v, p.clone())?);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(sort_canonical(out))
}

/// The full non-crossing partitioned-permutation family of a shape with
/// one, two or three circles.
pub fn enumerate_ps_nc(shape: &AnnulusShape, bound: usize) -> Result<Vec<PartitionedPermutation>> {
    let m = shape.m();
    check_bound(m, bound)?;
    match shape.r() {
        1 => Ok(sort_canonical(
            enumerate_nc_perms(m).into_iter().map(PartitionedPermutation::from_perm).collect(),
        )),
        2 => {
            let mut out: Vec<PartitionedPermutation> = enumerate_snc(shape)?
                .into_iter()
                .map(PartitionedPermutation::from_perm)
                .collect();
            let intervals: Vec<Vec<usize>> = (0..2).map(|j| shape.interval(j).collect()).collect();
            for p1 in enumerate_nc_perms(shape.parts()[0]) {
                for p2 in enumerate_nc_perms(shape.parts()[1]) {
                    let p = combine(&[p1.clone(), p2.clone()], &intervals, m);
                    let cycles = p.cycles();
                    for c1 in cycles.iter().filter(|c| shape.circle_of(c[0]) == 0) {
                        for c2 in cycles.iter().filter(|c| shape.circle_of(c[0]) == 1) {
                            let v = overlay_merging(&p, &[vec![c1[0], c2[0]]]);
                            out.push(PartitionedPermutation::new(v, p.clone())?);
                        }
                    }
                }
            }
            Ok(sort_canonical(out))
        }
        3 => {
            let mut out = Vec::new();
            for family in [PsFamily::Snc, PsFamily::JoinThree, PsFamily::JoinTwoTwice, PsFamily::JoinTwo] {
                out.extend(enumerate_family(family, shape, bound)?);
            }
            Ok(sort_canonical(out))
        }
        r => Err(Error::InvalidClass(format!("{r} circles unsupported"))),
    }
}

/// Which of the four disjoint pieces an element of the three-circle family
/// belongs to.
pub fn classify_ps_family(pp: &PartitionedPermutation, shape: &AnnulusShape) -> PsFamily {
    let gamma = shape.gamma();
    let join = pp
        .perm()
        .cycle_partition()
        .join(&gamma.cycle_partition())
        .expect("same size");
    match join.num_blocks() {
        1 => PsFamily::Snc,
        2 => PsFamily::JoinTwo,
        _ => {
            let cycles = pp.perm().cycle_partition();
            let mut merged = std::collections::BTreeMap::new();
            for i in 0..pp.n() {
                merged
                    .entry(pp.overlay().block_of(i))
                    .or_insert_with(std::collections::BTreeSet::new)
                    .insert(cycles.block_of(i));
            }
            let triples = merged.values().filter(|s| s.len() == 3).count();
            if triples == 1 {
                PsFamily::JoinThree
            } else {
                PsFamily::JoinTwoTwice
            }
        }
    }
}

/// Exact family cardinality. Closed forms where they exist; enumeration
/// otherwise. Empty families return zero.
pub fn family_count(family: PsFamily, shape: &AnnulusShape, bound: usize) -> Result<BigInt> {
    if shape.r() != 3 {
        return Err(Error::InvalidClass("families are defined on three circles".into()));
    }
    let parts = shape.parts();
    let (m1, m2, m3) = (parts[0], parts[1], parts[2]);
    let m = shape.m();
    let all_even = parts.iter().all(|p| p % 2 == 0);
    let halves = BigInt::from(m1) * BigInt::from(m2) * BigInt::from(m3) / BigInt::from(8);
    let pair_product = nc2_count(m1) * nc2_count(m2) * nc2_count(m3);
    match family {
        PsFamily::JoinThreePairings => {
            if !all_even {
                return Ok(BigInt::from(0));
            }
            Ok(halves * pair_product)
        }
        PsFamily::JoinTwoTwicePairings => {
            if !all_even {
                return Ok(BigInt::from(0));
            }
            Ok(halves * pair_product * BigInt::from(m as i64 / 2 - 3))
        }
        PsFamily::JoinTwoPairings => {
            let mut total = BigInt::from(0);
            for (a, b, c) in splits_of_three() {
                let (ma, mb, mc) = (parts[a], parts[b], parts[c]);
                if (ma + mb) % 2 != 0 || mc % 2 != 0 {
                    continue;
                }
                let pair_shape = AnnulusShape::new(vec![ma, mb])?;
                let annular = BigInt::from(enumerate_nc2(&pair_shape).len());
                total += annular
                    * nc2_count(mc)
                    * BigInt::from((ma + mb) / 2)
                    * BigInt::from(mc / 2);
            }
            Ok(total)
        }
        PsFamily::JoinTwoPairingsTwoThrough => {
            let mut total = BigInt::from(0);
            for (a, b, c) in splits_of_three() {
                let (ma, mb, mc) = (parts[a], parts[b], parts[c]);
                if mc % 2 != 0 {
                    continue;
                }
                total += nc2_through2_count(ma, mb)
                    * nc2_count(mc)
                    * BigInt::from((ma + mb) / 2)
                    * BigInt::from(mc / 2);
            }
            Ok(total)
        }
        PsFamily::JoinTwoPairingsThroughBlock => {
            let mut total = BigInt::from(0);
            for (a, b, c) in splits_of_three() {
                let (ma, mb, mc) = (parts[a], parts[b], parts[c]);
                if mc % 2 != 0 {
                    continue;
                }
                total += nc2_through1_count(ma, mb) * nc2_count(mc) * BigInt::from(mc / 2);
            }
            Ok(total)
        }
        PsFamily::JoinThreeNearPairings => {
            let evens: Vec<usize> = parts.iter().copied().filter(|p| p % 2 == 0).collect();
            if evens.len() != 1 {
                return Ok(BigInt::from(0));
            }
            let e = evens[0];
            let odds: Vec<usize> = parts.iter().copied().filter(|p| p % 2 != 0).collect();
            Ok(BigInt::from(m1) * BigInt::from(m2) * BigInt::from(m3) / BigInt::from(2)
                * nc2_count(e)
                * nc2_count(odds[0] - 1)
                * nc2_count(odds[1] - 1))
        }
        _ => Ok(BigInt::from(enumerate_family(family, shape, bound)?.len())),
    }
}
