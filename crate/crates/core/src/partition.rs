//! Set partitions of `{0, …, n-1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Disjoint nonempty blocks covering `0..n`, each sorted ascending.
///
/// Externally (JSON, CLI) blocks use 1-based indices; see
/// [`Partition::from_one_based`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::Domain("partition blocks must be nonempty".into()));
            }
            block.sort_unstable();
            for &i in block.iter() {
                if i >= n {
                    return Err(Error::Domain(format!("index {i} out of range for n = {n}")));
                }
                if seen[i] {
                    return Err(Error::Domain(format!("index {i} appears in two blocks")));
                }
                seen[i] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Domain(format!("index {missing} is not covered")));
        }
        Ok(Self { n, blocks })
    }

    pub fn from_one_based(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let shifted = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&i| {
                        i.checked_sub(1)
                            .ok_or_else(|| Error::Domain("indices are 1-based".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, shifted)
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            n,
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn whole(n: usize) -> Self {
        Self {
            n,
            blocks: vec![(0..n).collect()],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// `block_of()[i]` is the index of the block containing `i`.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                out[i] = b;
            }
        }
        out
    }

    /// True if every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let owner = coarser.block_of();
        self.n == coarser.n
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&i| owner[i] == owner[b[0]]))
    }

    /// Every partition of `0..n`, enumerated by restricted growth strings.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let mut labels = vec![0usize; n];
        loop {
            let m = labels.iter().max().copied().unwrap_or(0) + 1;
            let mut blocks = vec![Vec::new(); m];
            for (i, &l) in labels.iter().enumerate() {
                blocks[l].push(i);
            }
            out.push(Partition { n, blocks });

            // next restricted growth string: a[i] <= 1 + max(a[..i])
            let mut i = n - 1;
            loop {
                if i == 0 {
                    return out;
                }
                let prefix_max = labels[..i].iter().max().copied().unwrap_or(0);
                if labels[i] <= prefix_max {
                    labels[i] += 1;
                    for l in labels.iter_mut().skip(i + 1) {
                        *l = 0;
                    }
                    break;
                }
                i -= 1;
            }
        }
    }

    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|i| i + 1).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let bell = [1, 2, 5, 15, 52, 203];
        for (n, &b) in (1..=6).zip(&bell) {
            let all = Partition::all(n);
            assert_eq!(all.len(), b, "n = {n}");
            for p in &all {
                Partition::new(n, p.blocks().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn validation() {
        assert!(Partition::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 5], vec![1]]).is_err());
        assert!(Partition::from_one_based(2, &[vec![0], vec![1]]).is_err());
        let p = Partition::from_one_based(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(p.to_one_based(), vec![vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn refinement() {
        let coarse = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(Partition::singletons(4).refines(&coarse));
        assert!(coarse.refines(&Partition::whole(4)));
        assert!(!Partition::whole(4).refines(&coarse));
        let cross = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert!(!cross.refines(&coarse));
    }
}
