//! Annulus shapes `(m_1, .., m_r)` and their reference permutations.

use crate::perm::Permutation;
use crate::setpart::SetPartition;
use crate::{Error, Result};
use std::fmt;

/// The tuple of circle sizes. `gamma()` is the permutation whose j-th cycle
/// is the j-th interval of `[m]` in increasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnnulusShape {
    parts: Vec<usize>,
}

impl AnnulusShape {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidShape);
        }
        Ok(AnnulusShape { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Total number of points.
    pub fn m(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of circles.
    pub fn r(&self) -> usize {
        self.parts.len()
    }

    /// Start offset of circle `j`.
    pub fn offset(&self, j: usize) -> usize {
        self.parts[..j].iter().sum()
    }

    /// Half-open point range of circle `j`.
    pub fn interval(&self, j: usize) -> std::ops::Range<usize> {
        let start = self.offset(j);
        start..start + self.parts[j]
    }

    /// Circle index containing point `i`.
    pub fn circle_of(&self, i: usize) -> usize {
        let mut acc = 0;
        for (j, &p) in self.parts.iter().enumerate() {
            acc += p;
            if i < acc {
                return j;
            }
        }
        panic!("point {i} outside shape of size {}", self.m());
    }

    /// The permutation with one increasing cycle per circle.
    pub fn gamma(&self) -> Permutation {
        let cycles: Vec<Vec<usize>> = (0..self.r()).map(|j| self.interval(j).collect()).collect();
        Permutation::from_cycles(self.m(), &cycles).expect("intervals are disjoint")
    }

    /// The circles as a partition of `[m]`.
    pub fn circles_partition(&self) -> SetPartition {
        let mut raw = vec![0usize; self.m()];
        for j in 0..self.r() {
            for i in self.interval(j) {
                raw[i] = j;
            }
        }
        SetPartition::from_raw_labels(raw)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad shape part {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        AnnulusShape::new(parts)
    }
}

impl fmt::Display for AnnulusShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl fmt::Debug for AnnulusShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_cycles_are_intervals() {
        let shape = AnnulusShape::new(vec![4, 3, 4, 3]).unwrap();
        let gamma = shape.gamma();
        assert_eq!(
            gamma.to_string(),
            "(1,2,3,4)(5,6,7)(8,9,10,11)(12,13,14)"
        );
        assert_eq!(gamma.num_cycles(), 4);
        assert_eq!(shape.circle_of(0), 0);
        assert_eq!(shape.circle_of(6), 1);
        assert_eq!(shape.circle_of(13), 3);
    }

    #[test]
    fn rejects_zero_parts() {
        assert!(AnnulusShape::new(vec![2, 0]).is_err());
        assert!(AnnulusShape::new(vec![]).is_err());
    }
}
