//! The Murnaghan–Nakayama rule: χ^λ(μ) = Σ_T (−1)^{ht(T)} over rim-hook
//! tableaux of shape λ and type μ, evaluated by recursive strip removal.
//!
//! Rim hooks are manipulated through beta-numbers (first-column hook lengths):
//! removing an r-rim hook from λ is moving one bead down r slots, and the
//! height of the strip is the number of beads jumped over.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{partitions, Partition};

/// Beta-set of λ padded to `len` beads: {λ_i + len − 1 − i}, strictly decreasing.
fn beta_numbers(lambda: &Partition, len: usize) -> Vec<u32> {
    debug_assert!(len >= lambda.len());
    let mut b = Vec::with_capacity(len);
    let pad = len - lambda.len();
    for (i, &p) in lambda.parts().iter().enumerate() {
        b.push(p + (len - 1 - i) as u32);
    }
    for i in 0..pad {
        b.push((pad - 1 - i) as u32);
    }
    b
}

fn partition_from_beta(mut beta: Vec<u32>) -> Partition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let len = beta.len();
    let parts: Vec<u32> = beta
        .into_iter()
        .enumerate()
        .map(|(i, b)| b - (len - 1 - i) as u32)
        .filter(|&p| p > 0)
        .collect();
    Partition::from_sorted_unchecked(parts)
}

/// All ways to remove an r-rim hook from λ, as (remaining shape, strip height).
pub(crate) fn rim_hook_removals(lambda: &Partition, r: u32) -> Vec<(Partition, u32)> {
    if lambda.size() < r as u64 {
        return Vec::new();
    }
    let len = lambda.len().max(r as usize);
    let beta = beta_numbers(lambda, len);
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&x| target < x && x < b).count() as u32;
        let mut nb = beta.clone();
        nb[i] = target;
        out.push((partition_from_beta(nb), height));
    }
    out
}

/// Memoized Murnaghan–Nakayama evaluator. Strips are removed for the largest
/// remaining part of μ first; the memo key is (shape, remaining parts) since
/// the character value does not depend on the order parts are consumed.
#[derive(Default)]
pub struct MnEvaluator {
    memo: HashMap<(Partition, Vec<u32>), BigInt>,
}

impl MnEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// χ^λ(μ); requires |λ| = |μ|.
    pub fn character(&mut self, lambda: &Partition, mu: &Partition) -> Result<BigInt> {
        if lambda.size() != mu.size() {
            return Err(Error::InvalidParameter(format!(
                "character size mismatch: |{lambda}| = {} vs |{mu}| = {}",
                lambda.size(),
                mu.size()
            )));
        }
        Ok(self.eval(lambda, mu.parts()))
    }

    fn eval(&mut self, lambda: &Partition, remaining: &[u32]) -> BigInt {
        if remaining.is_empty() {
            return BigInt::one();
        }
        let key = (lambda.clone(), remaining.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let r = remaining[0];
        let rest = &remaining[1..];
        let mut total = BigInt::zero();
        for (shape, height) in rim_hook_removals(lambda, r) {
            let term = self.eval(&shape, rest);
            if height % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// One-shot χ^λ(μ) with a fresh memo table.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    MnEvaluator::new().character(lambda, mu)
}

/// Full character column: χ^λ(μ) for every λ ⊢ n at a fixed class μ,
/// computed in one shared bottom-up pass over strip removals.
pub fn character_column(n: u32, mu: &Partition) -> Result<HashMap<Partition, BigInt>> {
    if mu.size() != n as u64 {
        return Err(Error::InvalidParameter(format!(
            "class {mu} is not a partition of {n}"
        )));
    }
    // process parts smallest-last: level t holds χ^ν(suffix_t) for ν ⊢ |suffix_t|
    let mut level: HashMap<Partition, BigInt> = HashMap::new();
    level.insert(Partition::empty(), BigInt::one());
    let mut size = 0u32;
    for &r in mu.parts().iter().rev() {
        size += r;
        let mut next: HashMap<Partition, BigInt> = HashMap::new();
        for lam in partitions(size) {
            let mut total = BigInt::zero();
            for (shape, height) in rim_hook_removals(&lam, r) {
                if let Some(v) = level.get(&shape) {
                    if height % 2 == 0 {
                        total += v;
                    } else {
                        total -= v;
                    }
                }
            }
            if !total.is_zero() {
                next.insert(lam, total);
            }
        }
        level = next;
    }
    Ok(level)
}

/// Rim-hook tableaux of shape λ and type μ counted by height parity:
/// (even-height count, odd-height count). χ is their difference, the plain
/// tableau count their sum.
pub fn rim_hook_sign_split(lambda: &Partition, mu: &Partition) -> Result<(BigUint, BigUint)> {
    if lambda.size() != mu.size() {
        return Err(Error::InvalidParameter(format!(
            "size mismatch: |{lambda}| vs |{mu}|"
        )));
    }
    fn go(
        lambda: &Partition,
        remaining: &[u32],
        memo: &mut HashMap<(Partition, Vec<u32>), (BigUint, BigUint)>,
    ) -> (BigUint, BigUint) {
        if remaining.is_empty() {
            return (BigUint::one(), BigUint::zero());
        }
        let key = (lambda.clone(), remaining.to_vec());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let (mut even, mut odd) = (BigUint::zero(), BigUint::zero());
        for (shape, height) in rim_hook_removals(lambda, remaining[0]) {
            let (e, o) = go(&shape, &remaining[1..], memo);
            if height % 2 == 0 {
                even += e;
                odd += o;
            } else {
                even += o;
                odd += e;
            }
        }
        memo.insert(key, (even.clone(), odd.clone()));
        (even, odd)
    }
    Ok(go(lambda, mu.parts(), &mut HashMap::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions;
    use crate::perm::class_size;
    use crate::symrep::hook::dimension;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts.to_vec()).unwrap()
    }

    #[test]
    fn trivial_class_gives_dimension() {
        let ones = Partition::rectangle(1, 8);
        let mut ev = MnEvaluator::new();
        for lam in partitions(8) {
            assert_eq!(
                ev.character(&lam, &ones).unwrap(),
                BigInt::from(dimension(&lam).unwrap()),
                "{lam}"
            );
        }
    }

    #[test]
    fn standard_rep_on_three_cycle() {
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[3])).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn size_mismatch_rejected() {
        assert!(mn_character(&p(&[2, 1]), &p(&[2])).is_err());
    }

    #[test]
    fn column_orthogonality_exact_up_to_10() {
        for n in 1u32..=10 {
            let classes: Vec<Partition> = partitions(n).collect();
            let irreps = classes.clone();
            let mut ev = MnEvaluator::new();
            let mut fact = BigInt::one();
            for i in 2..=n as u64 {
                fact *= BigInt::from(i);
            }
            for (i, l1) in irreps.iter().enumerate() {
                for l2 in irreps.iter().skip(i) {
                    let mut s = BigInt::zero();
                    for mu in &classes {
                        let c = BigInt::from(class_size(mu));
                        s += c * ev.character(l1, mu).unwrap() * ev.character(l2, mu).unwrap();
                    }
                    let want = if l1 == l2 { fact.clone() } else { BigInt::zero() };
                    assert_eq!(s, want, "N={n} {l1} {l2}");
                }
            }
        }
    }

    #[test]
    fn conjugate_twists_by_sign() {
        let mut ev = MnEvaluator::new();
        for n in 2u32..=10 {
            for lam in partitions(n) {
                for mu in partitions(n) {
                    let a = ev.character(&lam, &mu).unwrap();
                    let b = ev.character(&lam.conjugate(), &mu).unwrap();
                    let want = if mu.sign() == 1 { a.clone() } else { -a.clone() };
                    assert_eq!(b, want, "N={n} {lam} {mu}");
                }
            }
        }
    }

    #[test]
    fn column_evaluator_agrees_with_scalar_route() {
        for (n, r) in [(8u32, 2u32), (9, 3), (12, 4)] {
            let mu = Partition::rectangle(r, n / r);
            let col = character_column(n, &mu).unwrap();
            let mut ev = MnEvaluator::new();
            for lam in partitions(n) {
                let want = ev.character(&lam, &mu).unwrap();
                let got = col.get(&lam).cloned().unwrap_or_else(BigInt::zero);
                assert_eq!(got, want, "{lam} at {mu}");
            }
        }
    }

    #[test]
    fn rectangular_classes_never_mix_signs() {
        for k in [2u32, 3, 4] {
            let mu = Partition::rectangle(k, 12 / k);
            for lam in partitions(12) {
                let (even, odd) = rim_hook_sign_split(&lam, &mu).unwrap();
                assert!(
                    even.is_zero() || odd.is_zero(),
                    "mixed signs for {lam} at {mu}: +{even} -{odd}"
                );
                let chi = mn_character(&lam, &mu).unwrap();
                assert_eq!(
                    chi,
                    BigInt::from(even) - BigInt::from(odd),
                    "{lam} at {mu}"
                );
            }
        }
    }
}
