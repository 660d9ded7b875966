//! Partitions, compositions, padding `λ ↦ λ(n)`, dominance and stable orders.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime::Prime;

/// A weakly decreasing sequence of positive integers. The empty sequence is ∅.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

/// A finite sequence of nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Composition(pub Vec<usize>);

/// Outcome of comparing two partitions in a partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    LessOrEqual,
    Greater,
    Incomparable,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// The column partition (1^d).
    pub fn column(d: usize) -> Self {
        Partition(vec![1; d])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// λ(n) = (n - |λ|, λ_1, ..., λ_k).
    pub fn pad(&self, n: usize) -> Result<Partition> {
        let size = self.size();
        if n < size || n - size < self.first() {
            return Err(Error::PadTooSmall { n, size, first: self.first() });
        }
        let mut parts = Vec::with_capacity(self.len() + 1);
        if n > size {
            parts.push(n - size);
        }
        parts.extend_from_slice(&self.0);
        Ok(Partition(parts))
    }

    /// Inverse of `pad`: drops the first row.
    pub fn depad(&self) -> Partition {
        Partition(self.0.iter().skip(1).copied().collect())
    }

    /// Smallest n for which `pad` succeeds.
    pub fn pad_threshold(&self) -> usize {
        self.size() + self.first()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        Partition((0..cols).map(|j| self.0.iter().filter(|&&x| x > j).count()).collect())
    }

    /// No p parts of equal size.
    pub fn is_p_regular(&self, p: Prime) -> bool {
        let p = p.get() as usize;
        let mut i = 0;
        while i < self.0.len() {
            let j = self.0[i..].iter().take_while(|&&x| x == self.0[i]).count();
            if j >= p {
                return false;
            }
            i += j;
        }
        true
    }

    /// |λ|! / Π λ_i!.
    pub fn perm_module_dim(&self) -> BigUint {
        let mut acc = BigUint::one();
        let mut seen = 0u64;
        for &part in &self.0 {
            for k in 1..=part as u64 {
                seen += 1;
                acc = acc * seen / k;
            }
        }
        acc
    }

    /// Parts of both, merged and re-sorted.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_unsorted(parts)
    }

    fn partial_sums_leq(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0, 0);
        let len = self.len().max(other.len());
        for i in 0..len {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }

    /// Dominance order: `LessOrEqual` when every partial sum of `self` is at most that of `other`.
    pub fn dominance_cmp(&self, other: &Partition) -> Result<Comparison> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        Ok(if self.partial_sums_leq(other) {
            Comparison::LessOrEqual
        } else if other.partial_sums_leq(self) {
            Comparison::Greater
        } else {
            Comparison::Incomparable
        })
    }

    /// Stable order: λ ⪯ μ iff λ(N) dominates μ(N) for large N.
    pub fn stable_cmp(&self, other: &Partition) -> Comparison {
        let n = 2 * (self.size() + other.size()) + self.first().max(other.first()) + 1;
        self.stable_cmp_at(other, n).expect("witness level pads both")
    }

    /// The stable comparison read off at an explicit level `n`.
    pub fn stable_cmp_at(&self, other: &Partition, n: usize) -> Result<Comparison> {
        let (a, b) = (self.pad(n)?, other.pad(n)?);
        Ok(match b.dominance_cmp(&a)? {
            Comparison::LessOrEqual => Comparison::LessOrEqual,
            Comparison::Greater => Comparison::Greater,
            Comparison::Incomparable => Comparison::Incomparable,
        })
    }

    /// All partitions of `n`, in reverse lexicographic order (largest first).
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for part in (1..=rest.min(max)).rev() {
                cur.push(part);
                rec(rest - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of size at most `r`, by size then reverse lexicographic.
    pub fn all_up_to(r: usize) -> Vec<Partition> {
        (0..=r).flat_map(Partition::all_of_size).collect()
    }
}

impl Composition {
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn to_partition(&self) -> Partition {
        Partition::from_unsorted(self.0.clone())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// "a,b,c"; the empty string (or "0") is ∅.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() || s == "0" || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

/// Shorthand for tests and examples: `part(&[2, 1])`.
pub fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pad_examples() {
        assert_eq!(part(&[2, 1]).pad(7).unwrap(), part(&[4, 2, 1]));
        assert_eq!(Partition::empty().pad(5).unwrap(), part(&[5]));
        assert_eq!(part(&[3]).pad(6).unwrap(), part(&[3, 3]));
        assert!(matches!(part(&[3]).pad(5), Err(Error::PadTooSmall { .. })));
        assert_eq!(Partition::empty().pad(0).unwrap(), Partition::empty());
    }

    #[test]
    fn dominance_examples() {
        use Comparison::*;
        assert_eq!(part(&[2, 2]).dominance_cmp(&part(&[3, 1])).unwrap(), LessOrEqual);
        assert_eq!(part(&[3, 1]).dominance_cmp(&part(&[2, 2])).unwrap(), Greater);
        assert_eq!(part(&[3, 3]).dominance_cmp(&part(&[4, 1, 1])).unwrap(), Incomparable);
        assert!(part(&[3]).dominance_cmp(&part(&[2])).is_err());
    }

    #[test]
    fn stable_examples() {
        use Comparison::*;
        assert_eq!(Partition::empty().stable_cmp(&part(&[1])), LessOrEqual);
        assert_eq!(part(&[1]).stable_cmp(&part(&[2])), LessOrEqual);
        assert_eq!(part(&[1]).stable_cmp(&part(&[1, 1])), LessOrEqual);
        assert_eq!(part(&[1, 1]).stable_cmp(&part(&[1])), Greater);
    }

    #[test]
    fn regularity_examples() {
        let (two, three) = (Prime::new(2).unwrap(), Prime::new(3).unwrap());
        assert!(!part(&[2, 2]).is_p_regular(two));
        assert!(part(&[2, 2]).is_p_regular(three));
        assert!(!part(&[1, 1, 1]).is_p_regular(three));
        assert!(Partition::empty().is_p_regular(two));
    }

    #[test]
    fn conjugate_and_dims() {
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert_eq!(part(&[3, 1]).perm_module_dim(), BigUint::from(4u32));
        assert_eq!(part(&[2, 2]).perm_module_dim(), BigUint::from(6u32));
        assert_eq!(Partition::empty().perm_module_dim(), BigUint::from(1u32));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3,1".parse::<Partition>().unwrap(), part(&[3, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,3".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(part(&[4, 2, 1]).to_string(), "4,2,1");
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn conjugate_is_involution() {
        for n in 0..=12 {
            for lam in Partition::all_of_size(n) {
                assert_eq!(lam.conjugate().conjugate(), lam);
            }
        }
    }

    #[test]
    fn stable_order_matches_padded_dominance() {
        for r in 0..=4 {
            let parts = Partition::all_up_to(r);
            for a in &parts {
                for b in &parts {
                    let stable = a.stable_cmp(b);
                    for n in (2 * r + 1)..=14 {
                        if a.pad(n).is_ok() && b.pad(n).is_ok() {
                            assert_eq!(a.stable_cmp_at(b, n).unwrap(), stable, "{a} vs {b} at {n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stable_order_extends_containment() {
        for a in Partition::all_up_to(4) {
            for b in Partition::all_up_to(4) {
                let contained = a.len() <= b.len() && a.parts().iter().zip(b.parts()).all(|(x, y)| x <= y);
                if contained {
                    assert_eq!(a.stable_cmp(&b), Comparison::LessOrEqual, "{a} ⊂ {b}");
                }
            }
            assert_eq!(Partition::empty().stable_cmp(&a), Comparison::LessOrEqual);
        }
    }

    proptest! {
        #[test]
        fn pad_shape(parts in proptest::collection::vec(1usize..5, 0..4), extra in 0usize..10) {
            let lam = Partition::from_unsorted(parts);
            let n = lam.pad_threshold() + extra;
            let padded = lam.pad(n).unwrap();
            prop_assert_eq!(padded.size(), n);
            prop_assert_eq!(padded.depad(), lam);
        }

        #[test]
        fn stable_witness_is_not_special(a in proptest::collection::vec(1usize..4, 0..3),
                                         b in proptest::collection::vec(1usize..4, 0..3),
                                         extra in 0usize..20) {
            let (a, b) = (Partition::from_unsorted(a), Partition::from_unsorted(b));
            let n = 2 * (a.size() + b.size()) + a.first().max(b.first()) + 1 + extra;
            prop_assert_eq!(a.stable_cmp_at(&b, n).unwrap(), a.stable_cmp(&b));
        }
    }
}
