//! Hook lengths, the hook length formula, and a standard-Young-tableaux
//! enumeration that serves as an independent route to the dimension.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Per-cell hook lengths h(i,j) = λ_i + λ'_j − i − j + 1 (1-based i, j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookGrid {
    rows: Vec<Vec<u32>>,
}

impl HookGrid {
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Product of all hook lengths; equals N!/f^λ.
    pub fn product(&self) -> BigUint {
        let mut p = BigUint::one();
        for row in &self.rows {
            for &h in row {
                p *= BigUint::from(h);
            }
        }
        p
    }

    /// All hook lengths as a sorted multiset.
    pub fn multiset(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.rows.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }
}

pub fn hook_grid(lambda: &Partition) -> HookGrid {
    let conj = lambda.conjugate();
    let rows = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &len)| {
            (0..len as usize)
                .map(|j| lambda.parts()[i] + conj.parts()[j] - i as u32 - j as u32 - 1)
                .collect()
        })
        .collect();
    HookGrid { rows }
}

/// f^λ = N!/∏ hooks; the division is exact by construction and checked.
pub fn dimension(lambda: &Partition) -> Result<BigUint> {
    let n = lambda.size();
    let mut fact = BigUint::one();
    for i in 2..=n {
        fact *= BigUint::from(i);
    }
    let hooks = hook_grid(lambda).product();
    let (q, r) = num_integer::Integer::div_rem(&fact, &hooks);
    if !num_traits::Zero::is_zero(&r) {
        return Err(Error::InvariantViolation(format!(
            "hook product does not divide {n}! for {lambda}"
        )));
    }
    Ok(q)
}

/// Number of standard Young tableaux of shape λ, counted by peeling removable
/// corners (where the largest entry must sit). Independent of the hook route.
pub fn syt_count(lambda: &Partition) -> BigUint {
    fn go(shape: &mut Vec<u32>, memo: &mut HashMap<Vec<u32>, BigUint>) -> BigUint {
        if shape.is_empty() {
            return BigUint::one();
        }
        if let Some(c) = memo.get(shape.as_slice()) {
            return c.clone();
        }
        let mut total = BigUint::from(0u32);
        for i in 0..shape.len() {
            let removable = shape[i] > 0 && (i + 1 == shape.len() || shape[i] > shape[i + 1]);
            if removable {
                shape[i] -= 1;
                let popped = if shape[i] == 0 {
                    shape.pop();
                    true
                } else {
                    false
                };
                total += go(shape, memo);
                if popped {
                    shape.push(0);
                }
                shape[i] += 1;
            }
        }
        memo.insert(shape.clone(), total.clone());
        total
    }
    let mut shape = lambda.parts().to_vec();
    go(&mut shape, &mut HashMap::new())
}
