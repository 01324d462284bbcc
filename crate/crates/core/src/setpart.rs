//! Set partitions of `[n]` in restricted-growth canonical form.

use crate::{Error, Result};
use std::fmt;

/// A partition of `{0, .., n-1}` stored as a restricted growth string:
/// `labels[0] = 0` and each next label is at most `max_so_far + 1`.
///
/// Blocks listed by [`SetPartition::blocks`] come out sorted by minimum
/// element with elements ascending, which is the canonical form used for
/// dedup and golden output. The partition lattice order is refinement;
/// `join` is the least upper bound. Rendering is 1-based: `{1,3,5|2|4}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    labels: Vec<usize>,
}

impl SetPartition {
    /// Normalize arbitrary block labels to a restricted growth string.
    pub fn from_raw_labels(raw: Vec<usize>) -> Self {
        let mut rename: Vec<Option<usize>> = vec![None; raw.len().max(raw.iter().map(|&l| l + 1).max().unwrap_or(0))];
        let mut labels = Vec::with_capacity(raw.len());
        let mut next = 0;
        for &l in &raw {
            let id = match rename[l] {
                Some(id) => id,
                None => {
                    rename[l] = Some(next);
                    next += 1;
                    next - 1
                }
            };
            labels.push(id);
        }
        SetPartition { labels }
    }

    /// The discrete partition `0_n` (all singletons).
    pub fn singletons(n: usize) -> Self {
        SetPartition { labels: (0..n).collect() }
    }

    /// The one-block partition `1_n`.
    pub fn full(n: usize) -> Self {
        SetPartition { labels: vec![0; n] }
    }

    /// Build from explicit blocks over `0..n`; they must be disjoint and cover.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut raw = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= n || raw[e] != usize::MAX {
                    return Err(Error::NotAPartition);
                }
                raw[e] = b;
            }
        }
        if raw.iter().any(|&l| l == usize::MAX) {
            return Err(Error::NotAPartition);
        }
        Ok(Self::from_raw_labels(raw))
    }

    /// Group positions carrying equal values: `u ~ v` iff `xs[u] == xs[v]`.
    pub fn kernel<T: PartialEq>(xs: &[T]) -> Self {
        let n = xs.len();
        let mut raw = vec![usize::MAX; n];
        let mut next = 0;
        for i in 0..n {
            if raw[i] != usize::MAX {
                continue;
            }
            raw[i] = next;
            for j in i + 1..n {
                if raw[j] == usize::MAX && xs[j] == xs[i] {
                    raw[j] = next;
                }
            }
            next += 1;
        }
        SetPartition { labels: raw }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m + 1)
    }

    /// `|U| = n - #(U)`, the number of joins needed to reach `U` from `0_n`.
    pub fn length(&self) -> usize {
        self.n() - self.num_blocks()
    }

    #[inline]
    pub fn block_of(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &l) in self.labels.iter().enumerate() {
            blocks[l].push(i);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.num_blocks()];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    /// Least upper bound in the partition lattice.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        let n = self.n();
        let mut uf = UnionFind::new(n);
        let mut first_a = vec![usize::MAX; self.num_blocks()];
        let mut first_b = vec![usize::MAX; other.num_blocks()];
        for i in 0..n {
            let a = self.labels[i];
            if first_a[a] == usize::MAX {
                first_a[a] = i;
            } else {
                uf.union(first_a[a], i);
            }
            let b = other.labels[i];
            if first_b[b] == usize::MAX {
                first_b[b] = i;
            } else {
                uf.union(first_b[b], i);
            }
        }
        Ok(SetPartition::from_raw_labels((0..n).map(|i| uf.find(i)).collect()))
    }

    /// Refinement order: every block of `self` inside some block of `other`.
    pub fn leq(&self, other: &SetPartition) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        let mut image = vec![usize::MAX; self.num_blocks()];
        for i in 0..self.n() {
            let a = self.labels[i];
            let b = other.labels[i];
            if image[a] == usize::MAX {
                image[a] = b;
            } else if image[a] != b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_full(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// Restriction to a subset of positions, relabelled to `0..subset.len()`
    /// in the induced order.
    pub fn restrict(&self, subset: &[usize]) -> SetPartition {
        SetPartition::from_raw_labels(subset.iter().map(|&i| self.labels[i]).collect())
    }

    /// No `a < b < c < d` with `a,c` in one block and `b,d` in another.
    pub fn is_noncrossing(&self) -> bool {
        // Stack discipline: a block may only be extended while no block opened
        // after it is still open.
        let mut stack: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.num_blocks()];
        for &l in &self.labels {
            if seen[l] {
                while let Some(&top) = stack.last() {
                    if top == l {
                        break;
                    }
                    stack.pop();
                }
                if stack.last() != Some(&l) {
                    return false;
                }
            } else {
                seen[l] = true;
                stack.push(l);
            }
        }
        true
    }

    /// Parse 1-based block notation, e.g. `{1,3,5|2|4}`. Elements of `1..=n`
    /// not mentioned become singleton blocks.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected {{..}} in {s:?}")))?;
        let mut raw = vec![usize::MAX; n];
        let mut next = 0;
        if !inner.trim().is_empty() {
            for block in inner.split('|') {
                let mut any = false;
                for tok in block.split(',') {
                    let tok = tok.trim();
                    if tok.is_empty() {
                        continue;
                    }
                    let v: usize = tok
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad element {tok:?}")))?;
                    if v == 0 || v > n {
                        return Err(Error::Parse(format!("element {v} out of range 1..={n}")));
                    }
                    if raw[v - 1] != usize::MAX {
                        return Err(Error::NotAPartition);
                    }
                    raw[v - 1] = next;
                    any = true;
                }
                if any {
                    next += 1;
                }
            }
        }
        for slot in raw.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        Ok(Self::from_raw_labels(raw))
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                write!(f, "|")?;
            }
            for (k, e) in block.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", e + 1)?;
            }
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn num_roots(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}
