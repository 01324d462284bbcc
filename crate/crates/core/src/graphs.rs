//! Quotients of the annulus graph, their elementarizations, and the
//! classification of third-order limit graphs.
//!
//! The annulus graph of a shape has one oriented `m_j`-gon per circle with
//! edges `e_i = (gamma(i), i)`. Quotienting by a partition of the points
//! keeps all `m` edges; the elementarization groups edges joining the same
//! unordered vertex pair into classes, which is again a partition `pi_bar`
//! of the edge indices. Five families of quotients survive in the
//! third-order limit; everything else is rejected with a reason code.

use crate::annular::enumerate_nc2;
use crate::perm::Permutation;
use crate::poly::CumulantPolynomial;
use crate::rgs::par_fold_partitions;
use crate::setpart::{SetPartition, UnionFind};
use crate::shape::AnnulusShape;
use crate::{Error, Result};
use num_bigint::BigInt;

/// The disjoint union of oriented basic cycles described by a shape.
#[derive(Clone, Debug)]
pub struct AnnulusGraph {
    shape: AnnulusShape,
}

/// An edge of the annulus graph or one of its quotients, identified by its
/// index `i` with source `gamma(i)` and target `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub index: usize,
    pub source: usize,
    pub target: usize,
    pub circle: usize,
}

impl AnnulusGraph {
    pub fn build(shape: AnnulusShape) -> Self {
        AnnulusGraph { shape }
    }

    pub fn shape(&self) -> &AnnulusShape {
        &self.shape
    }

    pub fn m(&self) -> usize {
        self.shape.m()
    }

    /// Edges on the original vertex set `[m]`.
    pub fn edges(&self) -> Vec<Edge> {
        let gamma = self.shape.gamma();
        (0..self.m())
            .map(|i| Edge {
                index: i,
                source: gamma.apply(i),
                target: i,
                circle: self.shape.circle_of(i),
            })
            .collect()
    }

    pub fn quotient(&self, pi: &SetPartition) -> Result<QuotientGraph> {
        if pi.n() != self.m() {
            return Err(Error::SizeMismatch(pi.n(), self.m()));
        }
        Ok(QuotientGraph {
            shape: self.shape.clone(),
            pi: pi.clone(),
        })
    }
}

/// The annulus graph with vertices merged along the blocks of `pi`.
/// Vertices are block indices of `pi`; all `m` edges survive, loops allowed.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    shape: AnnulusShape,
    pi: SetPartition,
}

impl QuotientGraph {
    pub fn shape(&self) -> &AnnulusShape {
        &self.shape
    }

    pub fn pi(&self) -> &SetPartition {
        &self.pi
    }

    pub fn num_vertices(&self) -> usize {
        self.pi.num_blocks()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let gamma = self.shape.gamma();
        (0..self.shape.m())
            .map(|i| Edge {
                index: i,
                source: self.pi.block_of(gamma.apply(i)),
                target: self.pi.block_of(i),
                circle: self.shape.circle_of(i),
            })
            .collect()
    }

    /// Per-vertex, per-circle incoming/outgoing degree `(rdg, ldg)`.
    /// A loop contributes one to each.
    pub fn degree_profile(&self) -> Vec<Vec<(usize, usize)>> {
        let mut prof = vec![vec![(0usize, 0usize); self.shape.r()]; self.num_vertices()];
        for e in self.edges() {
            prof[e.target][e.circle].0 += 1;
            prof[e.source][e.circle].1 += 1;
        }
        prof
    }

    pub fn elementarize(&self) -> Elementarization {
        Elementarization::new(self)
    }

    /// Graphviz rendering for debugging; edge labels are 1-based indices,
    /// colors follow the basic cycle.
    pub fn to_dot(&self) -> String {
        const COLORS: [&str; 6] = ["black", "blue", "red", "green", "orange", "purple"];
        let blocks = self.pi.blocks();
        let mut s = String::from("digraph quotient {\n");
        for (b, block) in blocks.iter().enumerate() {
            let label: Vec<String> = block.iter().map(|e| (e + 1).to_string()).collect();
            s.push_str(&format!("  v{b} [label=\"{{{}}}\"];\n", label.join(",")));
        }
        for e in self.edges() {
            s.push_str(&format!(
                "  v{} -> v{} [label=\"{}\", color={}];\n",
                e.source,
                e.target,
                e.index + 1,
                COLORS[e.circle % COLORS.len()]
            ));
        }
        s.push_str("}\n");
        s
    }
}

/// An equivalence class of quotient edges joining the same vertex pair.
#[derive(Clone, Debug)]
pub struct EdgeClass {
    /// Edge indices in the class, ascending.
    pub edges: Vec<usize>,
    /// Unordered endpoints as `(min, max)` vertex indices.
    pub endpoints: (usize, usize),
    pub is_loop: bool,
    /// Number of class edges from each basic cycle.
    pub per_circle: Vec<usize>,
    /// Per circle, the split of non-loop edges by direction
    /// (`endpoints.0 -> endpoints.1` vs reverse).
    pub orientation_split: Vec<(usize, usize)>,
    /// Whether removing the whole class disconnects the elementarization.
    pub is_cutting: bool,
}

impl EdgeClass {
    pub fn multiplicity(&self) -> usize {
        self.edges.len()
    }

    /// Loops count as balanced; otherwise both directions must agree
    /// circle by circle.
    pub fn orientation_balanced_per_circle(&self) -> bool {
        self.is_loop || self.orientation_split.iter().all(|&(f, b)| f == b)
    }

    pub fn orientation_balanced_total(&self) -> bool {
        if self.is_loop {
            return true;
        }
        let f: usize = self.orientation_split.iter().map(|&(f, _)| f).sum();
        let b: usize = self.orientation_split.iter().map(|&(_, b)| b).sum();
        f == b
    }

    /// Circles contributing at least one edge.
    pub fn circles(&self) -> Vec<usize> {
        self.per_circle
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(j, _)| j)
            .collect()
    }
}

/// All edge classes of a quotient graph plus the edge partition `pi_bar`.
#[derive(Clone, Debug)]
pub struct Elementarization {
    pub pi_bar: SetPartition,
    pub classes: Vec<EdgeClass>,
    pub num_vertices: usize,
    shape: AnnulusShape,
}

impl Elementarization {
    fn new(qg: &QuotientGraph) -> Self {
        let shape = qg.shape().clone();
        let m = shape.m();
        let edges = qg.edges();
        let mut class_of_pair: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
        let mut raw_labels = vec![0usize; m];
        let mut classes: Vec<EdgeClass> = Vec::new();
        for e in &edges {
            let key = (e.source.min(e.target), e.source.max(e.target));
            let id = *class_of_pair.entry(key).or_insert_with(|| {
                classes.push(EdgeClass {
                    edges: Vec::new(),
                    endpoints: key,
                    is_loop: key.0 == key.1,
                    per_circle: vec![0; shape.r()],
                    orientation_split: vec![(0, 0); shape.r()],
                    is_cutting: false,
                });
                classes.len() - 1
            });
            raw_labels[e.index] = id;
            let class = &mut classes[id];
            class.edges.push(e.index);
            class.per_circle[e.circle] += 1;
            if !class.is_loop {
                if e.source == class.endpoints.0 {
                    class.orientation_split[e.circle].0 += 1;
                } else {
                    class.orientation_split[e.circle].1 += 1;
                }
            }
        }
        let num_vertices = qg.num_vertices();
        let cutting = cutting_classes(num_vertices, &classes);
        for (c, class) in classes.iter_mut().enumerate() {
            class.is_cutting = cutting[c];
        }
        Elementarization {
            pi_bar: SetPartition::from_raw_labels(raw_labels),
            classes,
            num_vertices,
            shape,
        }
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// `q1 = #(pi) - #(pi_bar)`, the vertex/edge defect of the graph.
    pub fn q1(&self) -> i64 {
        self.num_vertices as i64 - self.num_classes() as i64
    }

    /// `2 q2 = 2 #(pi_bar) - m`.
    pub fn twice_q2(&self) -> i64 {
        2 * self.num_classes() as i64 - self.shape.m() as i64
    }

    /// `2 q = 2 #(pi) - m`.
    pub fn twice_q(&self) -> i64 {
        2 * self.num_vertices as i64 - self.shape.m() as i64
    }

    /// Do the edge classes tie every circle into one component? This is the
    /// join of `pi_bar` with the circle partition of the edge indices being
    /// full; it also implies the elementarized graph is connected.
    pub fn connects_all_circles(&self) -> bool {
        let r = self.shape.r();
        if r == 1 {
            return true;
        }
        let mut uf = UnionFind::new(r);
        for class in &self.classes {
            let circles = class.circles();
            for w in circles.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        uf.num_roots() == 1
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.num_vertices.max(1));
        for class in &self.classes {
            uf.union(class.endpoints.0, class.endpoints.1);
        }
        uf.num_roots() == 1
    }

    /// Class indices on the circuits, found by pruning degree-one vertices.
    /// Empty for forests; for a unicircuit graph exactly the unique circuit.
    pub fn circuit_classes(&self) -> Vec<usize> {
        let n = self.num_vertices;
        let mut alive = vec![true; self.classes.len()];
        let mut degree = vec![0usize; n];
        for class in &self.classes {
            if class.is_loop {
                degree[class.endpoints.0] += 2;
            } else {
                degree[class.endpoints.0] += 1;
                degree[class.endpoints.1] += 1;
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            for (c, class) in self.classes.iter().enumerate() {
                if !alive[c] || class.is_loop {
                    continue;
                }
                let (a, b) = class.endpoints;
                if degree[a] == 1 || degree[b] == 1 {
                    alive[c] = false;
                    degree[a] -= 1;
                    degree[b] -= 1;
                    changed = true;
                }
            }
        }
        (0..self.classes.len()).filter(|&c| alive[c]).collect()
    }

    pub fn multiplicity_profile(&self) -> Vec<usize> {
        let mut mults: Vec<usize> = self.classes.iter().map(|c| c.multiplicity()).collect();
        mults.sort_unstable_by(|a, b| b.cmp(a));
        mults
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph elementarization {\n");
        for v in 0..self.num_vertices {
            s.push_str(&format!("  v{v};\n"));
        }
        for class in &self.classes {
            let labels: Vec<String> = class.edges.iter().map(|e| (e + 1).to_string()).collect();
            s.push_str(&format!(
                "  v{} -- v{} [label=\"{} (x{})\"];\n",
                class.endpoints.0,
                class.endpoints.1,
                labels.join(","),
                class.multiplicity()
            ));
        }
        s.push_str("}\n");
        s
    }
}

fn cutting_classes(num_vertices: usize, classes: &[EdgeClass]) -> Vec<bool> {
    let base_components = {
        let mut uf = UnionFind::new(num_vertices.max(1));
        for class in classes {
            uf.union(class.endpoints.0, class.endpoints.1);
        }
        uf.num_roots()
    };
    (0..classes.len())
        .map(|skip| {
            if classes[skip].is_loop {
                return false;
            }
            let mut uf = UnionFind::new(num_vertices.max(1));
            for (c, class) in classes.iter().enumerate() {
                if c != skip {
                    uf.union(class.endpoints.0, class.endpoints.1);
                }
            }
            uf.num_roots() > base_components
        })
        .collect()
}

/// `(q1, 2*q2)` for a partition against a shape; `q2` is doubled to stay
/// in integers for odd `m`.
pub fn q_vec(shape: &AnnulusShape, pi: &SetPartition) -> Result<(i64, i64)> {
    let el = AnnulusGraph::build(shape.clone()).quotient(pi)?.elementarize();
    Ok((el.q1(), el.twice_q2()))
}

/// Why a partition fails to contribute in the limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotLimitReason {
    /// Some edge class has multiplicity one.
    SingletonBlock,
    /// A multiplicity-two class pairs equally oriented non-loop edges.
    OrientationMismatch,
    /// The edge classes do not tie all circles together.
    Disconnected,
    /// `q > -1`: the graph keeps too many vertices.
    QTooLarge,
    /// `q < -1`: the contribution vanishes in the limit.
    QTooSmall,
    /// A tree or unicircuit profile with an odd multiplicity.
    OddMultiplicity,
    /// A circuit whose classes cannot reach the remaining circle.
    CircuitNonConnecting,
}

impl NotLimitReason {
    pub fn code(&self) -> &'static str {
        match self {
            NotLimitReason::SingletonBlock => "singleton-block",
            NotLimitReason::OrientationMismatch => "orientation-mismatch",
            NotLimitReason::Disconnected => "disconnected",
            NotLimitReason::QTooLarge => "q-too-large",
            NotLimitReason::QTooSmall => "q-too-small",
            NotLimitReason::OddMultiplicity => "odd-multiplicity",
            NotLimitReason::CircuitNonConnecting => "circuit-nonconnecting",
        }
    }
}

/// The five families of three-circle quotients surviving in the limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LimitClass {
    /// Three double trees glued along one class of multiplicity six.
    Tree26,
    /// Three double trees glued along two classes of multiplicity four.
    Tree244,
    /// A multiplicity-four loop class carrying two loops from one circle
    /// and one from each other circle; a double tree elsewhere.
    Uniloop24,
    /// A double unicircuit on two circles glued to a double tree on the
    /// third along a multiplicity-four class.
    Unicircuit24,
    /// Everything paired: all classes of multiplicity two in opposite
    /// orientations, two independent circuits.
    DoubleBicircuit,
}

impl LimitClass {
    pub fn name(&self) -> &'static str {
        match self {
            LimitClass::Tree26 => "tree-2-6",
            LimitClass::Tree244 => "tree-2-4-4",
            LimitClass::Uniloop24 => "uniloop-2-4",
            LimitClass::Unicircuit24 => "unicircuit-2-4",
            LimitClass::DoubleBicircuit => "double-bicircuit",
        }
    }

    pub const ALL: [LimitClass; 5] = [
        LimitClass::Tree26,
        LimitClass::Tree244,
        LimitClass::Uniloop24,
        LimitClass::Unicircuit24,
        LimitClass::DoubleBicircuit,
    ];
}

/// Outcome of classifying a partition on a three-circle shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Limit(LimitClass),
    NotLimit(NotLimitReason),
}

impl Classification {
    pub fn limit(&self) -> Option<LimitClass> {
        match self {
            Classification::Limit(c) => Some(*c),
            Classification::NotLimit(_) => None,
        }
    }
}

/// Classify the quotient of a three-circle shape by `pi`.
pub fn classify(shape: &AnnulusShape, pi: &SetPartition) -> Result<Classification> {
    if shape.r() != 3 {
        return Err(Error::InvalidClass("limit classification is for three circles".into()));
    }
    let el = AnnulusGraph::build(shape.clone()).quotient(pi)?.elementarize();
    Ok(classify_elementarization(&el))
}

fn classify_elementarization(el: &Elementarization) -> Classification {
    use Classification::{Limit, NotLimit};
    if !el.connects_all_circles() {
        return NotLimit(NotLimitReason::Disconnected);
    }
    if el.classes.iter().any(|c| c.multiplicity() == 1) {
        return NotLimit(NotLimitReason::SingletonBlock);
    }
    if el
        .classes
        .iter()
        .any(|c| c.multiplicity() == 2 && !c.orientation_balanced_total())
    {
        return NotLimit(NotLimitReason::OrientationMismatch);
    }
    let twice_q = el.twice_q();
    if twice_q > -2 {
        return NotLimit(NotLimitReason::QTooLarge);
    }
    if twice_q < -2 {
        return NotLimit(NotLimitReason::QTooSmall);
    }
    match (el.q1(), el.twice_q2()) {
        (1, -4) => {
            // connected with one more vertex than classes: a tree. Every
            // class is cutting, hence of even multiplicity balanced circle
            // by circle; the profile can only be one six or two fours.
            let profile = el.multiplicity_profile();
            if profile.iter().any(|&m| m % 2 != 0) {
                return NotLimit(NotLimitReason::OddMultiplicity);
            }
            if profile[0] == 6 {
                let six = el.classes.iter().find(|c| c.multiplicity() == 6).expect("profile");
                debug_assert!(six.per_circle.iter().all(|&c| c == 2));
                debug_assert!(six.orientation_balanced_per_circle());
                Limit(LimitClass::Tree26)
            } else {
                debug_assert_eq!(&profile[..2], &[4, 4]);
                for class in el.classes.iter().filter(|c| c.multiplicity() == 4) {
                    debug_assert_eq!(class.circles().len(), 2);
                    debug_assert!(class.orientation_balanced_per_circle());
                }
                Limit(LimitClass::Tree244)
            }
        }
        (0, -2) => {
            let profile = el.multiplicity_profile();
            if profile.iter().any(|&m| m % 2 != 0) {
                return NotLimit(NotLimitReason::OddMultiplicity);
            }
            debug_assert_eq!(profile[0], 4);
            let four = el.classes.iter().find(|c| c.multiplicity() == 4).expect("profile");
            if four.is_loop {
                let mut split = four.per_circle.clone();
                split.sort_unstable();
                if split == [1, 1, 2] {
                    Limit(LimitClass::Uniloop24)
                } else {
                    NotLimit(NotLimitReason::CircuitNonConnecting)
                }
            } else {
                Limit(LimitClass::Unicircuit24)
            }
        }
        (-1, 0) => {
            // no singletons and #(pi_bar) = m/2 force all classes to pairs
            debug_assert!(el.classes.iter().all(|c| c.multiplicity() == 2));
            Limit(LimitClass::DoubleBicircuit)
        }
        other => unreachable!("q split {other:?} with 2q = -2"),
    }
}

/// Weight of a limit class as a polynomial in the entry cumulants.
pub fn weight(class: LimitClass) -> CumulantPolynomial {
    use crate::poly::EntrySym::{K4, K6, KDiag4};
    let k4 = CumulantPolynomial::var(K4);
    let k6 = CumulantPolynomial::var(K6);
    let kd = CumulantPolynomial::var(KDiag4);
    let one = CumulantPolynomial::constant_i64(1);
    match class {
        LimitClass::Tree26 => k6 + k4 * CumulantPolynomial::constant_i64(6) + CumulantPolynomial::constant_i64(2),
        LimitClass::Tree244 => {
            let f = k4 + one;
            f.clone() * f
        }
        LimitClass::Uniloop24 => kd + CumulantPolynomial::constant_i64(2),
        LimitClass::Unicircuit24 => k4 + one,
        LimitClass::DoubleBicircuit => one,
    }
}

/// Map a non-crossing pairing of the shape to its limit partition: the
/// cycle partition of `gamma . sigma`.
pub fn pairing_to_partition(sigma: &Permutation, shape: &AnnulusShape) -> Result<SetPartition> {
    if sigma.n() != shape.m() {
        return Err(Error::SizeMismatch(sigma.n(), shape.m()));
    }
    if !sigma.is_pairing() {
        return Err(Error::NotAPairing);
    }
    let gamma = shape.gamma();
    Ok(gamma.compose(sigma)?.cycle_partition())
}

/// Per-class limit-graph counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitCounts {
    pub tree26: BigInt,
    pub tree244: BigInt,
    pub uniloop24: BigInt,
    pub unicircuit24: BigInt,
    pub double_bicircuit: BigInt,
}

impl LimitCounts {
    pub fn total(&self) -> BigInt {
        &self.tree26 + &self.tree244 + &self.uniloop24 + &self.unicircuit24 + &self.double_bicircuit
    }

    pub fn get(&self, class: LimitClass) -> &BigInt {
        match class {
            LimitClass::Tree26 => &self.tree26,
            LimitClass::Tree244 => &self.tree244,
            LimitClass::Uniloop24 => &self.uniloop24,
            LimitClass::Unicircuit24 => &self.unicircuit24,
            LimitClass::DoubleBicircuit => &self.double_bicircuit,
        }
    }
}

/// Count limit graphs by classifying the image of every non-crossing
/// pairing and deduplicating the resulting partitions.
pub fn count_limit_graphs_enumerated(shape: &AnnulusShape) -> Result<LimitCounts> {
    if shape.r() != 3 {
        return Err(Error::InvalidClass("limit counts are for three circles".into()));
    }
    let mut seen: std::collections::BTreeMap<SetPartition, LimitClass> = Default::default();
    for sigma in enumerate_nc2(shape) {
        let pi = pairing_to_partition(&sigma, shape)?;
        let class = classify(shape, &pi)?
            .limit()
            .expect("pairing images are limit partitions");
        if let Some(prev) = seen.insert(pi, class) {
            debug_assert_eq!(prev, class);
        }
    }
    let mut counts = LimitCounts {
        tree26: BigInt::from(0),
        tree244: BigInt::from(0),
        uniloop24: BigInt::from(0),
        unicircuit24: BigInt::from(0),
        double_bicircuit: BigInt::from(0),
    };
    for class in seen.values() {
        match class {
            LimitClass::Tree26 => counts.tree26 += 1,
            LimitClass::Tree244 => counts.tree244 += 1,
            LimitClass::Uniloop24 => counts.uniloop24 += 1,
            LimitClass::Unicircuit24 => counts.unicircuit24 += 1,
            LimitClass::DoubleBicircuit => counts.double_bicircuit += 1,
        }
    }
    Ok(counts)
}

/// Count limit graphs from the partitioned-permutation formulas. The
/// double-bicircuit count is the pairing total minus the other classes
/// weighted by the fiber sizes two/two/one/one/one.
pub fn count_limit_graphs_closed(shape: &AnnulusShape) -> Result<LimitCounts> {
    use crate::partitioned::{family_count, PsFamily};
    if shape.r() != 3 {
        return Err(Error::InvalidClass("limit counts are for three circles".into()));
    }
    let bound = usize::MAX;
    let four = BigInt::from(4);
    let two = BigInt::from(2);
    let tree26 = &four * family_count(PsFamily::JoinThreePairings, shape, bound)?;
    let tree244 = &four * family_count(PsFamily::JoinTwoTwicePairings, shape, bound)?;
    let uniloop24 = family_count(PsFamily::JoinThreeNearPairings, shape, bound)?;
    let unicircuit24 = &two
        * (family_count(PsFamily::JoinTwoPairings, shape, bound)?
            - family_count(PsFamily::JoinTwoPairingsTwoThrough, shape, bound)?
            - family_count(PsFamily::JoinTwoPairingsThroughBlock, shape, bound)?);
    let nc2_total = BigInt::from(enumerate_nc2(shape).len());
    let double_bicircuit =
        nc2_total - &unicircuit24 - &tree244 - &two * &uniloop24 - &two * &tree26;
    Ok(LimitCounts {
        tree26,
        tree244,
        uniloop24,
        unicircuit24,
        double_bicircuit,
    })
}

// ---------------------------------------------------------------------------
// One- and two-circle double structures
// ---------------------------------------------------------------------------

/// Every class has multiplicity two with opposite orientations and the
/// elementarization is a tree.
pub fn is_double_tree(shape: &AnnulusShape, pi: &SetPartition) -> Result<bool> {
    let el = AnnulusGraph::build(shape.clone()).quotient(pi)?.elementarize();
    Ok(el.is_connected()
        && el.q1() == 1
        && el
            .classes
            .iter()
            .all(|c| c.multiplicity() == 2 && c.orientation_balanced_total()))
}

/// Two loops at one vertex whose removal leaves a double tree (`r = 1`).
pub fn is_double_uniloop(shape: &AnnulusShape, pi: &SetPartition) -> Result<bool> {
    if shape.r() != 1 {
        return Err(Error::InvalidClass("uniloop graphs live on one circle".into()));
    }
    let el = AnnulusGraph::build(shape.clone()).quotient(pi)?.elementarize();
    if !el.is_connected() || el.q1() != 0 {
        return Ok(false);
    }
    if !el
        .classes
        .iter()
        .all(|c| c.multiplicity() == 2 && c.orientation_balanced_total())
    {
        return Ok(false);
    }
    let circuit = el.circuit_classes();
    Ok(circuit.len() == 1 && el.classes[circuit[0]].is_loop)
}

/// Connected, one circuit, all classes paired in opposite orientations,
/// and every circuit class joins the two circles (`r = 2`).
pub fn is_double_unicircuit(shape: &AnnulusShape, pi: &SetPartition) -> Result<bool> {
    if shape.r() != 2 {
        return Err(Error::InvalidClass("unicircuit graphs live on two circles".into()));
    }
    let el = AnnulusGraph::build(shape.clone()).quotient(pi)?.elementarize();
    if !el.is_connected() || el.q1() != 0 {
        return Ok(false);
    }
    if !el
        .classes
        .iter()
        .all(|c| c.multiplicity() == 2 && c.orientation_balanced_total())
    {
        return Ok(false);
    }
    let circuit = el.circuit_classes();
    Ok(!circuit.is_empty()
        && circuit
            .iter()
            .all(|&c| el.classes[c].per_circle == vec![1, 1]))
}

/// Circuit length (class count) of a double unicircuit quotient.
pub fn unicircuit_length(shape: &AnnulusShape, pi: &SetPartition) -> Result<Option<usize>> {
    if !is_double_unicircuit(shape, pi)? {
        return Ok(None);
    }
    let el = AnnulusGraph::build(shape.clone()).quotient(pi)?.elementarize();
    Ok(Some(el.circuit_classes().len()))
}

#[derive(Clone, Copy, Debug)]
pub enum DoubleKind {
    Tree,
    Uniloop,
    Unicircuit { length: Option<usize> },
}

/// Count one- and two-circle double structures by sweeping all partitions.
pub fn count_double_structures(shape: &AnnulusShape, kind: DoubleKind) -> Result<BigInt> {
    let m = shape.m();
    match kind {
        DoubleKind::Tree | DoubleKind::Uniloop => {
            if shape.r() != 1 {
                return Err(Error::InvalidClass("double trees and uniloops live on one circle".into()));
            }
        }
        DoubleKind::Unicircuit { .. } => {
            if shape.r() != 2 {
                return Err(Error::InvalidClass("unicircuit graphs live on two circles".into()));
            }
        }
    }
    let shape = shape.clone();
    let count = par_fold_partitions(
        m,
        4,
        0u64,
        move |labels| {
            let pi = SetPartition::from_raw_labels(labels.to_vec());
            let hit = match kind {
                DoubleKind::Tree => is_double_tree(&shape, &pi).expect("sizes match"),
                DoubleKind::Uniloop => is_double_uniloop(&shape, &pi).expect("sizes match"),
                DoubleKind::Unicircuit { length } => unicircuit_length(&shape, &pi)
                    .expect("sizes match")
                    .map_or(false, |k| length.map_or(true, |want| k == want)),
            };
            u64::from(hit)
        },
        |a, b| a + b,
    );
    Ok(BigInt::from(count))
}

/// Sweep every partition of the shape's points and fold the classification.
pub fn fold_classified<T, M, R>(shape: &AnnulusShape, identity: T, map: M, reduce: R) -> T
where
    T: Send + Sync + Clone,
    M: Fn(&SetPartition, &Classification) -> T + Sync,
    R: Fn(T, T) -> T + Sync + Send,
{
    let shape = shape.clone();
    par_fold_partitions(
        shape.m(),
        4,
        identity,
        move |labels| {
            let pi = SetPartition::from_raw_labels(labels.to_vec());
            let class = classify(&shape, &pi).expect("three circles");
            map(&pi, &class)
        },
        reduce,
    )
}

/// All limit partitions of a shape, classified, by exhaustive sweep.
pub fn limit_partitions_by_sweep(shape: &AnnulusShape) -> Vec<(SetPartition, LimitClass)> {
    let mut out = fold_classified(
        shape,
        Vec::new(),
        |pi, class| match class.limit() {
            Some(c) => vec![(pi.clone(), c)],
            None => Vec::new(),
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    out.sort_by_key(|(pi, _)| pi.clone());
    out
}
