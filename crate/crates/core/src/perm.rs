//! Permutations of `[n]` with the transposition length `|p| = n - #(p)`.

use crate::setpart::SetPartition;
use crate::{Error, Result};
use std::fmt;

/// A permutation of `{0, .., n-1}` stored by its image map.
///
/// Values are immutable; composition is right-to-left, so
/// `a.compose(&b)` applies `b` first. Rendering and parsing use 1-based
/// cycle notation like `(1,3,5)(2)(4)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::NotABijection);
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    /// Build from disjoint cycles over `0..n`; elements not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n || used[a] {
                    return Err(Error::NotABijection);
                }
                used[a] = true;
                map[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { map })
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(Permutation {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    /// Cycles in canonical order: each cycle starts at its minimum element,
    /// cycles sorted by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.map[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.map[j];
            }
            out.push(cycle);
        }
        out
    }

    /// The partition whose blocks are the orbits of the permutation.
    pub fn cycle_partition(&self) -> SetPartition {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut j = self.map[start];
            while j != start {
                label[j] = next;
                j = self.map[j];
            }
            next += 1;
        }
        SetPartition::from_raw_labels(label)
    }

    pub fn num_cycles(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.map[j];
            }
        }
        count
    }

    /// Minimal number of transpositions: `n - #(cycles)`.
    pub fn length(&self) -> usize {
        self.n() - self.num_cycles()
    }

    /// True when every cycle has exactly two elements.
    pub fn is_pairing(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| v != i && self.map[v] == i)
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| v == i)
    }

    /// Parse 1-based cycle notation, e.g. `(1,3,5,6)(2)(4)`. Elements of
    /// `1..=n` not mentioned become fixed points.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let cycles = parse_cycle_groups(s)?;
        let mut zero_based = Vec::with_capacity(cycles.len());
        for cycle in cycles {
            let mut c = Vec::with_capacity(cycle.len());
            for v in cycle {
                if v == 0 || v > n {
                    return Err(Error::Parse(format!("element {v} out of range 1..={n}")));
                }
                c.push(v - 1);
            }
            zero_based.push(c);
        }
        Permutation::from_cycles(n, &zero_based)
    }
}

fn parse_cycle_groups(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("expected '(' in {s:?}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?;
        let inner = &rest[1..close];
        let mut cycle = Vec::new();
        for tok in inner.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            cycle.push(
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad element {tok:?}")))?,
            );
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (k, v) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", v + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Visit every permutation of `[n]` exactly once. The callback receives the
/// image map; returning from it continues the sweep.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut map: Vec<usize> = (0..n).collect();
    visit(&mut map, 0, &mut f);
}

fn visit(map: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    let n = map.len();
    if k == n {
        f(map);
        return;
    }
    for i in k..n {
        map.swap(k, i);
        visit(map, k + 1, f);
        map.swap(k, i);
    }
}
