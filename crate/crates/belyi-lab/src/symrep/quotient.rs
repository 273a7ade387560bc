//! k-cores and k-quotients via the abacus, and the rim-hook tableau count
//! f_k^λ they yield: a route to |χ^λ(C_k)| independent of the signed
//! Murnaghan–Nakayama recursion.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::partition::Partition;
use crate::symrep::hook::dimension;

/// (k-core, k-quotient) of λ. The quotient is returned as k partitions whose
/// sizes sum to (|λ| − |core|)/k.
pub fn core_and_quotient(lambda: &Partition, k: u32) -> (Partition, Vec<Partition>) {
    assert!(k >= 1);
    let k = k as usize;
    // pad bead count to a multiple of k so runner assignment is canonical
    let len = lambda.len().div_ceil(k).max(1) * k;
    let mut beta: Vec<u32> = Vec::with_capacity(len);
    let pad = len - lambda.len();
    for (i, &p) in lambda.parts().iter().enumerate() {
        beta.push(p + (len - 1 - i) as u32);
    }
    for i in 0..pad {
        beta.push((pad - 1 - i) as u32);
    }
    // runner j collects positions (b - j)/k of beads with b ≡ j (mod k)
    let mut runners: Vec<Vec<u32>> = vec![Vec::new(); k];
    for &b in &beta {
        runners[(b as usize) % k].push(b / k as u32);
    }
    let quotient: Vec<Partition> = runners
        .iter()
        .map(|pos| {
            let mut pos = pos.clone();
            pos.sort_unstable_by(|a, b| b.cmp(a));
            let m = pos.len();
            let parts: Vec<u32> = pos
                .iter()
                .enumerate()
                .map(|(i, &b)| b - (m - 1 - i) as u32)
                .filter(|&p| p > 0)
                .collect();
            Partition::from_sorted_unchecked(parts)
        })
        .collect();
    // core: push every bead on each runner down to the bottom
    let mut core_beta: Vec<u32> = Vec::with_capacity(len);
    for (j, pos) in runners.iter().enumerate() {
        for slot in 0..pos.len() as u32 {
            core_beta.push(slot * k as u32 + j as u32);
        }
    }
    core_beta.sort_unstable_by(|a, b| b.cmp(a));
    let m = core_beta.len();
    let core_parts: Vec<u32> = core_beta
        .into_iter()
        .enumerate()
        .map(|(i, b)| b - (m - 1 - i) as u32)
        .filter(|&p| p > 0)
        .collect();
    (Partition::from_sorted_unchecked(core_parts), quotient)
}

/// f_k^λ, the number of k-rim hook tableaux of shape λ: zero unless the
/// k-core is empty, else multinomial(n; |λ⁽⁰⁾|,…,|λ⁽ᵏ⁻¹⁾|)·∏ f^{λ⁽ⁱ⁾}
/// with n = |λ|/k.
pub fn rim_hook_count(lambda: &Partition, k: u32) -> BigUint {
    if k == 0 || lambda.size() % k as u64 != 0 {
        return BigUint::zero();
    }
    if lambda.is_empty() {
        return BigUint::one();
    }
    let (core, quotient) = core_and_quotient(lambda, k);
    if !core.is_empty() {
        return BigUint::zero();
    }
    let n = lambda.size() / k as u64;
    let mut result = BigUint::one();
    // multinomial coefficient, built incrementally as C(s_1+...+s_j, s_j) products
    let mut consumed = 0u64;
    for q in &quotient {
        let s = q.size();
        result *= binomial(consumed + s, s);
        consumed += s;
        result *= dimension(q).expect("quotient dimension");
    }
    debug_assert_eq!(consumed, n);
    result
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}
