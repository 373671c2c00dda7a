use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer partition, parts weakly decreasing. Labels nilpotent orbits of
/// `gl_n` / `sl_n` by Jordan type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// `(1, ..., 1)`: the zero orbit.
    pub fn zero_orbit(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    /// `(n)`: the regular orbit.
    pub fn regular(n: usize) -> Self {
        Self {
            parts: if n == 0 { vec![] } else { vec![n] },
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_zero_orbit(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    pub fn transpose(&self) -> Self {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|k| self.parts.iter().filter(|&&p| p >= k).count())
            .collect();
        Self { parts }
    }

    /// `n^2 - sum_i (lambda'_i)^2`, the dimension of the nilpotent orbit.
    pub fn orbit_dim(&self) -> usize {
        let n = self.n();
        let s: usize = self.transpose().parts.iter().map(|c| c * c).sum();
        n * n - s
    }

    /// `rank(x^k)` for a nilpotent `x` of this Jordan type.
    pub fn power_rank(&self, k: usize) -> usize {
        self.parts.iter().map(|&p| p.saturating_sub(k)).sum()
    }

    /// All partitions of `n` in reverse lexicographic order, starting with `(n)`.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: current.clone() });
                return;
            }
            for part in (1..=remaining.min(max)).rev() {
                current.push(part);
                rec(remaining - part, part, current, out);
                current.pop();
            }
        }
        rec(n, n, &mut current, &mut out);
        out
    }
}

/// `true` iff every partial sum of `lambda` is at most that of `mu`, i.e. the
/// orbit of `lambda` lies in the closure of the orbit of `mu`.
pub fn dominance_leq(lambda: &Partition, mu: &Partition) -> Result<bool> {
    if lambda.n() != mu.n() {
        return Err(Error::InvalidPartition(format!(
            "cannot compare partitions of {} and {}",
            lambda.n(),
            mu.n()
        )));
    }
    let len = lambda.len().max(mu.len());
    let (mut a, mut b) = (0usize, 0usize);
    for k in 0..len {
        a += lambda.parts.get(k).copied().unwrap_or(0);
        b += mu.parts.get(k).copied().unwrap_or(0);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_usize_list(s).map_err(Error::InvalidPartition)?;
        Self::new(parts)
    }
}

pub(crate) fn parse_usize_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn counts() {
        let counts: Vec<usize> = (0..=7).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn transpose_involution() {
        for n in 0..=8 {
            for l in Partition::all(n) {
                assert_eq!(l.transpose().transpose(), l);
                assert_eq!(l.transpose().n(), n);
            }
        }
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
    }

    #[test]
    fn orbit_dims() {
        assert_eq!(Partition::zero_orbit(4).orbit_dim(), 0);
        assert_eq!(p(&[2]).orbit_dim(), 2);
        assert_eq!(p(&[2, 1]).orbit_dim(), 4);
        assert_eq!(p(&[3]).orbit_dim(), 6);
        for n in 1..=7 {
            for l in Partition::all(n) {
                assert_eq!(l.orbit_dim() % 2, 0);
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[1, 1, 1]), &p(&[2, 1])).unwrap());
        assert!(dominance_leq(&p(&[2, 1]), &p(&[3])).unwrap());
        assert!(dominance_leq(&p(&[2, 1]), &p(&[2, 1])).unwrap());
        assert!(!dominance_leq(&p(&[2, 2, 2]), &p(&[3, 1, 1, 1])).unwrap());
        assert!(!dominance_leq(&p(&[3, 1, 1, 1]), &p(&[2, 2, 2])).unwrap());
        assert!(dominance_leq(&p(&[2]), &p(&[2, 1])).is_err());
    }

    #[test]
    fn parse_and_validate() {
        assert_eq!("2,1".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
        assert_eq!(p(&[3, 2]).to_string(), "3,2");
    }
}
