//! Integer partitions: the index set for both conjugacy classes (cycle types)
//! and irreducible characters of the symmetric group.
//!
//! Canonical text form is `5+5+3+2` (parts joined by `+`, nonincreasing);
//! the empty partition prints as `0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Doubles as a cycle type: `sign()` and `multiplicities()` read it that way.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    parts: Vec<u32>,
}

/// Cycle type of a permutation: multiset of cycle lengths, stored nonincreasing.
pub type CycleType = Partition;

impl Partition {
    /// Builds a partition from parts in any order; zero parts are rejected.
    pub fn from_parts(mut parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Parts already sorted nonincreasing; debug-checked.
    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.last().is_none_or(|&p| p > 0));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty for n = 0.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The rectangular partition `r^m` (m parts equal to r).
    pub fn rectangle(r: u32, m: u32) -> Self {
        assert!(r > 0 || m == 0);
        Partition {
            parts: vec![r; m as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |λ| = Σ parts.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn first(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Conjugate (transposed Young diagram).
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let m = self.parts[0] as usize;
        let mut conj = vec![0u32; m];
        for &p in &self.parts {
            for c in conj.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition { parts: conj }
    }

    /// Multiplicity vector a_i = number of parts equal to i, as (i, a_i) pairs
    /// with a_i > 0, in increasing i.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((q, a)) if *q == p => *a += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Sign of a permutation with this cycle type: (−1)^(N − number of cycles).
    pub fn sign(&self) -> i8 {
        if (self.size() as usize - self.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// z_λ = ∏ i^{a_i} a_i!, the centralizer order of the cycle type.
    pub fn centralizer_order(&self) -> BigUint {
        let mut z = BigUint::one();
        for (i, a) in self.multiplicities() {
            for _ in 0..a {
                z *= BigUint::from(i);
            }
            for j in 2..=a {
                z *= BigUint::from(j);
            }
        }
        z
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s = self
            .parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("+");
        write!(f, "{s}")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split('+')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::InvalidPartition(format!("bad part `{tok}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::from_parts(parts)
    }
}

/// Iterator over all partitions of `n` in reverse lexicographic order:
/// `(n)` first, `(1,…,1)` last. Each partition of `n` appears exactly once.
pub fn partitions(n: u32) -> PartitionIter {
    PartitionIter {
        current: if n == 0 { None } else { Some(vec![n]) },
        emitted_empty: n != 0,
    }
}

pub struct PartitionIter {
    current: Option<Vec<u32>>,
    emitted_empty: bool,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if !self.emitted_empty {
            self.emitted_empty = true;
            return Some(Partition::empty());
        }
        let cur = self.current.take()?;
        let out = Partition::from_sorted_unchecked(cur.clone());
        // successor in reverse-lex: find rightmost part > 1, decrement it and
        // redistribute the tail greedily.
        let mut parts = cur;
        let mut rem: u32 = 0;
        while let Some(&last) = parts.last() {
            if last == 1 {
                rem += 1;
                parts.pop();
            } else {
                break;
            }
        }
        if let Some(last) = parts.last_mut() {
            *last -= 1;
            rem += 1;
            let cap = *last;
            while rem > 0 {
                let take = rem.min(cap);
                parts.push(take);
                rem -= take;
            }
            self.current = Some(parts);
        }
        Some(out)
    }
}

/// p(n) via the Euler pentagonal-number recurrence, exact.
pub fn partition_count(n: u32) -> BigUint {
    let n = n as usize;
    let mut table: Vec<BigUint> = Vec::with_capacity(n + 1);
    table.push(BigUint::one());
    for i in 1..=n {
        let mut acc_pos = BigUint::zero();
        let mut acc_neg = BigUint::zero();
        let mut k: usize = 1;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let positive = k % 2 == 1;
            let tgt = if positive { &mut acc_pos } else { &mut acc_neg };
            *tgt += &table[i - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= i {
                let tgt = if positive { &mut acc_pos } else { &mut acc_neg };
                *tgt += &table[i - g2];
            }
            k += 1;
        }
        // p(i) = acc_pos - acc_neg, always nonnegative
        table.push(acc_pos - acc_neg);
    }
    table.pop().unwrap()
}
