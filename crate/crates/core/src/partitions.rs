//! Set partitions of a subset of marks and the search for a partition into at
//! least three blocks with a prescribed `sigma`-sum.
//!
//! [`SetPartitions`] walks restricted-growth strings and costs `Bell(|S|)`.
//! [`find_partition`] answers the existence question by a dynamic program over
//! the subsets of `S` instead, which costs `3^|S|` small steps.

use crate::error::Result;
use crate::limits::Limits;
use crate::lincore::MarkedSubset;

/// Every set partition of `set`, as restricted-growth strings.
///
/// ```
/// use vgit::partitions::SetPartitions;
/// use vgit::MarkedSubset;
/// assert_eq!(SetPartitions::new(MarkedSubset::first(4)).count(), 15);
/// ```
pub struct SetPartitions {
    marks: Vec<usize>,
    rgs: Vec<usize>,
    maxes: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    pub fn new(set: MarkedSubset) -> Self {
        let marks = set.to_vec();
        let len = marks.len();
        SetPartitions { marks, rgs: vec![0; len], maxes: vec![0; len], done: len == 0 }
    }

    fn blocks(&self) -> Vec<MarkedSubset> {
        let count = self.rgs.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![MarkedSubset::EMPTY; count];
        for (&mark, &b) in self.marks.iter().zip(&self.rgs) {
            out[b] = out[b].union(MarkedSubset::from_marks([mark]));
        }
        out
    }

    fn advance(&mut self) {
        // rgs[i] <= 1 + max(rgs[..i]); maxes[i] caches that prefix maximum
        let len = self.rgs.len();
        let mut i = len;
        while i > 1 {
            i -= 1;
            if self.rgs[i] <= self.maxes[i - 1] {
                self.rgs[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.rgs[i]);
                for j in i + 1..len {
                    self.rgs[j] = 0;
                    self.maxes[j] = self.maxes[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<MarkedSubset>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = self.blocks();
        self.advance();
        Some(out)
    }
}

/// A partition of `set` into at least `min_blocks` blocks whose `weight`s sum
/// to `target`, if one exists.
///
/// Weights must be nonnegative. `set` may have at most `limits.partition`
/// elements.
pub fn find_partition(
    set: MarkedSubset,
    min_blocks: usize,
    target: u32,
    limits: &Limits,
    weight: impl Fn(MarkedSubset) -> u32,
) -> Result<Option<Vec<MarkedSubset>>> {
    let marks = set.to_vec();
    let s = marks.len();
    limits.check_partition(s)?;
    if s < min_blocks || target > 127 {
        return Ok(None);
    }
    let sat = min_blocks.min(3);
    let full = (1usize << s) - 1;
    let lift = |local: usize| {
        let mut m = MarkedSubset::EMPTY;
        let mut bits = local;
        while bits != 0 {
            m = m.union(MarkedSubset::from_marks([marks[bits.trailing_zeros() as usize]]));
            bits &= bits - 1;
        }
        m
    };
    let w: Vec<u32> = (0..=full).map(|b| if b == 0 { 0 } else { weight(lift(b)) }).collect();
    // reach[r][c]: bit t set iff the set r splits into blocks with weight sum t
    // and min(block count, sat) == c
    let mut reach = vec![[0u128; 4]; full + 1];
    reach[0][0] = 1;
    for r in 1..=full {
        let low = r & r.wrapping_neg();
        let others = r ^ low;
        // blocks containing the lowest element of r
        let mut sub = others;
        loop {
            let block = sub | low;
            let bw = w[block];
            if bw <= target {
                let rest = reach[r ^ block];
                for c in 0..=sat {
                    let bits = rest[c] << bw;
                    if bits != 0 {
                        let c2 = (c + 1).min(sat);
                        reach[r][c2] |= bits & mask(target);
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    if reach[full][sat] >> target & 1 == 0 {
        return Ok(None);
    }
    // walk back down, always choosing a block that keeps the target reachable
    let mut blocks = Vec::new();
    let (mut r, mut t, mut c) = (full, target, sat);
    while r != 0 {
        let low = r & r.wrapping_neg();
        let others = r ^ low;
        let mut sub = others;
        let mut chosen = None;
        loop {
            let block = sub | low;
            let bw = w[block];
            if bw <= t {
                let rest = r ^ block;
                let prev: &[usize] = match (c, sat) {
                    (_, 0) => &[0],
                    (c, s) if c == s => &[s - 1, s],
                    (0, _) => &[],
                    _ => &[c - 1],
                };
                for &pc in prev {
                    if reach[rest][pc] >> (t - bw) & 1 == 1 {
                        chosen = Some((block, pc));
                        break;
                    }
                }
            }
            if chosen.is_some() || sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
        let (block, pc) = chosen.expect("reachable state has a predecessor");
        blocks.push(lift(block));
        t -= w[block];
        r ^= block;
        c = pc;
    }
    Ok(Some(blocks))
}

fn mask(target: u32) -> u128 {
    if target >= 127 {
        u128::MAX
    } else {
        (1u128 << (target + 1)) - 1
    }
}

/// Like [`find_partition`] when the weight of a block depends only on its
/// size. Searches integer partitions of `|set|`; blocks are consecutive runs
/// of the sorted marks.
pub fn find_partition_by_size(
    set: MarkedSubset,
    min_blocks: usize,
    target: u32,
    weight: impl Fn(usize) -> u32,
) -> Option<Vec<MarkedSubset>> {
    let marks = set.to_vec();
    let total = marks.len();
    let mut parts = Vec::new();
    if !size_search(total, total, min_blocks, target, &weight, &mut parts) {
        return None;
    }
    let mut blocks = Vec::new();
    let mut at = 0;
    for p in parts {
        blocks.push(MarkedSubset::from_marks(marks[at..at + p].iter().copied()));
        at += p;
    }
    Some(blocks)
}

fn size_search(
    left: usize,
    max_part: usize,
    min_blocks: usize,
    target: u32,
    weight: &impl Fn(usize) -> u32,
    parts: &mut Vec<usize>,
) -> bool {
    if left == 0 {
        return target == 0 && parts.len() >= min_blocks;
    }
    for p in (1..=max_part.min(left)).rev() {
        let w = weight(p);
        if w > target {
            continue;
        }
        parts.push(p);
        if size_search(left - p, p, min_blocks, target - w, weight, parts) {
            return true;
        }
        parts.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell(n: usize) -> usize {
        // Bell triangle
        let mut row = vec![1usize];
        for _ in 0..n {
            let mut next = vec![*row.last().unwrap()];
            for x in &row {
                next.push(next.last().unwrap() + x);
            }
            row = next;
        }
        row[0]
    }

    #[test]
    fn counts_are_bell_numbers() {
        for n in 1..=8 {
            assert_eq!(SetPartitions::new(MarkedSubset::first(n)).count(), bell(n), "n = {n}");
        }
    }

    #[test]
    fn partitions_cover_exactly() {
        let set = MarkedSubset::from_marks([2, 5, 7, 9]);
        for p in SetPartitions::new(set) {
            let mut u = MarkedSubset::EMPTY;
            for b in &p {
                assert!(!b.is_empty());
                assert!(u.is_disjoint(*b));
                u = u.union(*b);
            }
            assert_eq!(u, set);
        }
    }

    #[test]
    fn dp_agrees_with_enumeration() {
        let lim = Limits::default();
        // an arbitrary deterministic weight
        let weight = |b: MarkedSubset| ((b.bits().wrapping_mul(0x9E37_79B9) >> 7) % 4) as u32 * (b.len() as u32 / 2);
        for n in 1..=7 {
            let set = MarkedSubset::first(n);
            for target in 0..8 {
                for min_blocks in [1, 3] {
                    let brute = SetPartitions::new(set)
                        .any(|p| p.len() >= min_blocks && p.iter().map(|&b| weight(b)).sum::<u32>() == target);
                    let found = find_partition(set, min_blocks, target, &lim, weight).unwrap();
                    assert_eq!(found.is_some(), brute, "n={n} t={target} m={min_blocks}");
                    if let Some(p) = found {
                        assert!(p.len() >= min_blocks);
                        assert_eq!(p.iter().map(|&b| weight(b)).sum::<u32>(), target);
                        assert_eq!(p.iter().fold(MarkedSubset::EMPTY, |a, &b| a.union(b)), set);
                    }
                }
            }
        }
    }

    #[test]
    fn size_search_finds_five_one_one() {
        let sigma = |m: usize| [0, 0, 0, 0, 0, 1, 1, 1][m];
        let p = find_partition_by_size(MarkedSubset::first(7), 3, 1, sigma).unwrap();
        let sizes: Vec<usize> = p.iter().map(|b| b.len()).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 7);
        assert_eq!(sizes.iter().map(|&s| sigma(s)).sum::<u32>(), 1);
    }
}
