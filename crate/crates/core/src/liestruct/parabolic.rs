use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::algebra::{elementary, Mat};
use super::partition::{parse_usize_list, Partition};
use crate::error::{Error, Result};
use crate::exactalg::Field;

/// Standard parabolic of `GL_n` / `SL_n`, given by its ordered diagonal block sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParabolicComposition {
    blocks: Vec<usize>,
}

impl ParabolicComposition {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidComposition("no blocks".into()));
        }
        if blocks.contains(&0) {
            return Err(Error::InvalidComposition(format!("{blocks:?} has a zero block")));
        }
        Ok(Self { blocks })
    }

    /// `(1, ..., 1)`.
    pub fn borel(n: usize) -> Self {
        Self { blocks: vec![1; n] }
    }

    /// `(n)`: the whole group.
    pub fn full(n: usize) -> Self {
        Self { blocks: vec![n] }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Block index of each position `0..n`.
    pub fn block_of(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(b, &size)| std::iter::repeat_n(b, size))
            .collect()
    }

    /// Half-open position ranges of the blocks.
    pub fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|&b| {
                let r = start..start + b;
                start += b;
                r
            })
            .collect()
    }

    /// `dim n_P = (n^2 - sum b_i^2) / 2`.
    pub fn nilradical_dim(&self) -> usize {
        let n = self.n();
        (n * n - self.blocks.iter().map(|b| b * b).sum::<usize>()) / 2
    }

    /// Positions `(i, j)` of the block-strictly-upper-triangular entries, row-major.
    pub fn nilradical_positions(&self) -> Vec<(usize, usize)> {
        let block = self.block_of();
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| block[i] < block[j])
            .collect()
    }

    /// Positions of the block-upper-triangular entries (the parabolic in `gl_n`), row-major.
    pub fn parabolic_positions(&self) -> Vec<(usize, usize)> {
        let block = self.block_of();
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| block[i] <= block[j])
            .collect()
    }

    /// All compositions of `n` (there are `2^(n-1)` for `n >= 1`).
    pub fn all(n: usize) -> Vec<Self> {
        if n == 0 {
            return Vec::new();
        }
        (0..1u32 << (n - 1))
            .map(|mask| {
                let mut blocks = Vec::new();
                let mut size = 1;
                for k in 0..n - 1 {
                    if mask >> k & 1 == 1 {
                        blocks.push(size);
                        size = 1;
                    } else {
                        size += 1;
                    }
                }
                blocks.push(size);
                Self { blocks }
            })
            .collect()
    }
}

/// Elementary-matrix basis of the nilradical `n_P`.
pub fn nilradical_basis<F: Field>(field: &F, p: &ParabolicComposition) -> Vec<Mat<F>> {
    let n = p.n();
    p.nilradical_positions()
        .into_iter()
        .map(|(i, j)| elementary(field, n, i, j))
        .collect()
}

/// Jordan type of the Richardson orbit of `P`: the transpose of the sorted blocks.
pub fn richardson_partition(p: &ParabolicComposition) -> Partition {
    Partition::from_unsorted(p.blocks.clone()).transpose()
}

impl fmt::Display for ParabolicComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.blocks.iter().map(usize::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for ParabolicComposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_usize_list(s).map_err(Error::InvalidComposition)?)
    }
}

impl Serialize for ParabolicComposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParabolicComposition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<usize>::deserialize(d)?;
        ParabolicComposition::new(blocks).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rationals;

    fn comp(v: &[usize]) -> ParabolicComposition {
        ParabolicComposition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn nilradical_examples() {
        let f = Rationals;
        assert_eq!(nilradical_basis(&f, &comp(&[1, 1])), vec![elementary(&f, 2, 0, 1)]);
        assert!(nilradical_basis(&f, &comp(&[3])).is_empty());
        assert_eq!(
            nilradical_basis(&f, &comp(&[2, 1])),
            vec![elementary(&f, 3, 0, 2), elementary(&f, 3, 1, 2)]
        );
    }

    #[test]
    fn richardson_examples() {
        for n in 1..=6 {
            assert_eq!(richardson_partition(&ParabolicComposition::borel(n)), Partition::regular(n));
            assert_eq!(richardson_partition(&ParabolicComposition::full(n)), Partition::zero_orbit(n));
        }
        assert_eq!(richardson_partition(&comp(&[2, 1])).to_string(), "2,1");
        assert_eq!(richardson_partition(&comp(&[1, 3])).to_string(), "2,1,1");
    }

    #[test]
    fn composition_enumeration() {
        for n in 1..=6 {
            let all = ParabolicComposition::all(n);
            assert_eq!(all.len(), 1 << (n - 1));
            assert!(all.iter().all(|c| c.n() == n));
        }
        assert!(ParabolicComposition::new(vec![2, 0]).is_err());
        assert!(ParabolicComposition::new(vec![]).is_err());
    }

    #[test]
    fn dims() {
        for n in 1..=6 {
            for p in ParabolicComposition::all(n) {
                assert_eq!(p.nilradical_positions().len(), p.nilradical_dim());
                assert_eq!(p.parabolic_positions().len(), n * n - p.nilradical_dim());
            }
        }
    }
}
