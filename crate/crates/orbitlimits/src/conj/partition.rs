//! Integer partitions with transpose and the dominance order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Parts must be positive and weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Input("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Input(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Drops zeros and sorts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn single(n: usize) -> Self {
        Partition::from_unsorted(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// `γ_i = |{j : α_j ≥ i}|`.
    pub fn transpose(&self) -> Self {
        let top = self.part(0);
        Partition((1..=top).map(|i| self.0.iter().filter(|&&a| a >= i).count()).collect())
    }

    /// Partial sums `α_1, α_1+α_2, …` up to `len` terms (padded).
    pub fn prefix_sums(&self, len: usize) -> Vec<usize> {
        let mut acc = 0;
        (0..len)
            .map(|i| {
                acc += self.part(i);
                acc
            })
            .collect()
    }

    /// `self ⊵ other`.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::Dimension(format!("partitions of {} and {}", self.n(), other.n())));
        }
        let len = self.len().max(other.len());
        Ok(self.prefix_sums(len).iter().zip(other.prefix_sums(len)).all(|(a, b)| *a >= b))
    }

    /// Partwise sum `(α_1+β_1, α_2+β_2, …)`.
    pub fn add(&self, other: &Partition) -> Self {
        let len = self.len().max(other.len());
        Partition((0..len).map(|i| self.part(i) + other.part(i)).collect())
    }

    /// Rank of `J_α^k`: `Σ_{α_i > k} (α_i − k)`.
    pub fn nilpotent_power_rank(&self, k: usize) -> usize {
        self.0.iter().map(|&a| a.saturating_sub(k)).sum()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(n, n, &mut vec![], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn transposes() {
        assert_eq!(p(&[3]).transpose(), p(&[1, 1, 1]));
        assert_eq!(p(&[2, 1]).transpose(), p(&[2, 1]));
        assert_eq!(p(&[4, 2, 1]).transpose(), p(&[3, 2, 1, 1]));
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[3]).dominates(&p(&[2, 1])).unwrap());
        assert!(p(&[3, 1]).dominates(&p(&[2, 2])).unwrap());
        assert!(!p(&[2, 2]).dominates(&p(&[3, 1])).unwrap());
        assert!(!p(&[2, 1]).dominates(&p(&[3])).unwrap());
        assert!(p(&[2]).dominates(&p(&[1, 1, 1])).is_err());
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn sum_and_ranks() {
        assert_eq!(p(&[2, 1]).add(&p(&[1])), p(&[3, 1]));
        assert_eq!(p(&[3, 1]).nilpotent_power_rank(1), 2);
        assert_eq!(p(&[3, 1]).nilpotent_power_rank(3), 0);
    }

    #[test]
    fn dominance_is_a_partial_order_and_transpose_antitone() {
        for n in 1..=8 {
            let ps = partitions_of(n);
            for a in &ps {
                assert!(a.dominates(a).unwrap());
                assert_eq!(a.transpose().transpose(), *a);
                for b in &ps {
                    let ab = a.dominates(b).unwrap();
                    if ab && b.dominates(a).unwrap() {
                        assert_eq!(a, b);
                    }
                    assert_eq!(ab, b.transpose().dominates(&a.transpose()).unwrap());
                    if ab {
                        for c in &ps {
                            if b.dominates(c).unwrap() {
                                assert!(a.dominates(c).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
}
