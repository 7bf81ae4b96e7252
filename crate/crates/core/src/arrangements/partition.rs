use std::fmt;

use itertools::Itertools;

use super::ArrangementError;

/// A set partition of `{1, ..., n}`, blocks sorted by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Builds a canonical partition; blocks must be disjoint, nonempty and cover `1..=n`.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self, ArrangementError> {
        let mut seen = vec![false; n + 1];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(ArrangementError::InvalidPartition("empty block".into()));
            }
            b.sort_unstable();
            for &e in b.iter() {
                if e == 0 || e > n || std::mem::replace(&mut seen[e], true) {
                    return Err(ArrangementError::InvalidPartition(format!("element {e} repeated or out of range")));
                }
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(ArrangementError::InvalidPartition("blocks do not cover 1..n".into()));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    fn from_growth_string(rgs: &[usize], nblocks: usize) -> Self {
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        SetPartition { n: rgs.len(), blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.blocks.iter().any(|b| b.contains(&i) && b.contains(&j))
    }

    /// Pairs `i < j` lying in a common block.
    pub fn within_block_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            self.blocks.iter().flat_map(|b| b.iter().copied().tuple_combinations()).collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "{{{}}}", b.iter().join(","))?;
        }
        Ok(())
    }
}

/// All partitions of `[n]` into exactly `blocks` blocks, in lexicographic
/// order of their restricted growth strings.
pub fn partitions(n: usize, blocks: usize) -> Result<Vec<SetPartition>, ArrangementError> {
    if blocks == 0 || blocks > n {
        return Err(ArrangementError::OutOfRange(format!("{blocks} blocks for n = {n}")));
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(k: usize, max: usize, rgs: &mut [usize], blocks: usize, out: &mut Vec<SetPartition>) {
        let n = rgs.len();
        // blocks still to open must fit in the remaining positions
        if blocks > max + 1 + (n - k) {
            return;
        }
        if k == n {
            if max + 1 == blocks {
                out.push(SetPartition::from_growth_string(rgs, blocks));
            }
            return;
        }
        for v in 0..=(max + 1).min(blocks - 1) {
            rgs[k] = v;
            rec(k + 1, max.max(v), rgs, blocks, out);
        }
    }
    rec(1, 0, &mut rgs, blocks, &mut out);
    Ok(out)
}

/// Partitions whose only nonsingleton block has `size` elements.
pub fn unique_block_partitions(n: usize, size: usize) -> Result<Vec<SetPartition>, ArrangementError> {
    if size < 2 || size > n {
        return Err(ArrangementError::OutOfRange(format!("block size {size} for n = {n}")));
    }
    Ok(subsets(n, size)
        .into_iter()
        .map(|big| {
            let mut blocks = vec![big.clone()];
            blocks.extend((1..=n).filter(|i| !big.contains(i)).map(|i| vec![i]));
            SetPartition::new(n, blocks).expect("valid by construction")
        })
        .collect())
}

/// `k`-subsets of `{1, ..., n}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (1..=n).combinations(k).collect()
}
