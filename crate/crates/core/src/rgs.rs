//! Exhaustive and random generation of set partitions via restricted
//! growth strings.

use crate::setpart::SetPartition;
use rand::Rng;
use rayon::prelude::*;

/// Visit every restricted growth string of length `n` (every set partition).
pub fn for_each_rgs(n: usize, mut f: impl FnMut(&[usize])) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut labels = vec![0usize; n];
    rec(&mut labels, 1, 0, &mut f);
}

fn rec(labels: &mut [usize], i: usize, max: usize, f: &mut impl FnMut(&[usize])) {
    if i == labels.len() {
        f(labels);
        return;
    }
    for l in 0..=max + 1 {
        labels[i] = l;
        rec(labels, i + 1, max.max(l), f);
    }
}

/// Map-reduce over all set partitions of `[n]`, parallelized over string
/// prefixes. `map` must be pure; `reduce` must be associative and
/// commutative so the result does not depend on scheduling.
pub fn par_fold_partitions<T, M, R>(n: usize, depth: usize, identity: T, map: M, reduce: R) -> T
where
    T: Send + Sync + Clone,
    M: Fn(&[usize]) -> T + Sync,
    R: Fn(T, T) -> T + Sync + Send,
{
    let depth = depth.min(n);
    if depth <= 1 || n == 0 {
        let mut acc = identity;
        for_each_rgs(n, |labels| {
            acc = reduce(acc.clone(), map(labels));
        });
        return acc;
    }
    let mut prefixes: Vec<Vec<usize>> = Vec::new();
    let mut head = vec![0usize; depth];
    collect_prefixes(&mut head, 1, 0, &mut prefixes);
    prefixes
        .par_iter()
        .map(|prefix| {
            let mut labels = vec![0usize; n];
            labels[..depth].copy_from_slice(prefix);
            let max = *prefix.iter().max().unwrap();
            let mut acc = identity.clone();
            rec(&mut labels, depth, max, &mut |full| {
                acc = reduce(acc.clone(), map(full));
            });
            acc
        })
        .reduce(|| identity.clone(), &reduce)
}

fn collect_prefixes(head: &mut [usize], i: usize, max: usize, out: &mut Vec<Vec<usize>>) {
    if i == head.len() {
        out.push(head.to_vec());
        return;
    }
    for l in 0..=max + 1 {
        head[i] = l;
        collect_prefixes(head, i + 1, max.max(l), out);
    }
}

/// A random set partition of `[n]` drawn by uniform label growth. Not the
/// uniform distribution on partitions, but it covers the whole space and is
/// deterministic for a fixed RNG stream.
pub fn random_partition(n: usize, rng: &mut impl Rng) -> SetPartition {
    let mut labels = vec![0usize; n];
    let mut max = 0usize;
    for slot in labels.iter_mut().skip(1) {
        let l = rng.gen_range(0..=max + 1);
        *slot = l;
        max = max.max(l);
    }
    SetPartition::from_raw_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell(n: usize) -> usize {
        let mut count = 0;
        for_each_rgs(n, |_| count += 1);
        count
    }

    #[test]
    fn counts_are_bell_numbers() {
        assert_eq!(bell(1), 1);
        assert_eq!(bell(3), 5);
        assert_eq!(bell(5), 52);
        assert_eq!(bell(8), 4140);
    }

    #[test]
    fn parallel_fold_matches_serial() {
        let serial = {
            let mut acc = 0usize;
            for_each_rgs(7, |labels| acc += labels.iter().max().unwrap() + 1);
            acc
        };
        let parallel = par_fold_partitions(7, 3, 0usize, |l| l.iter().max().unwrap() + 1, |a, b| a + b);
        assert_eq!(serial, parallel);
    }
}
