//! Permutation algebra: representation, composition, cycle extraction, and
//! uniform sampling from rectangular conjugacy classes.
//!
//! Composition order is right-to-left: `compose(p, q)` applies `q` first,
//! then `p`. This is the convention that makes the vertex-rotation /
//! edge-matching product trace left-hand-turn faces; the opposite order
//! silently yields right-hand-turn paths. Indices are 0-based internally and
//! 1-based in cycle notation.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::partition::{CycleType, Partition};

/// A permutation of {0..N−1}, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// Validates that `images` is a bijection on {0..N−1}.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            let im = im as usize;
            if im >= n {
                return Err(Error::InvalidImages(format!(
                    "image {im} out of range for degree {n}"
                )));
            }
            if seen[im] {
                return Err(Error::InvalidImages(format!("image {im} repeated")));
            }
            seen[im] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// g · self · g⁻¹.
    pub fn conjugated_by(&self, g: &Permutation) -> Result<Permutation> {
        let gi = g.inverse();
        compose(g, &compose(self, &gi)?)
    }

    /// Cycles in canonical order: each cycle rotated to start at its smallest
    /// element, cycles sorted by smallest element. Fixed points included.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut j = start as u32;
            while !seen[j as usize] {
                seen[j as usize] = true;
                cyc.push(j);
                j = self.images[j as usize];
            }
            out.push(cyc);
        }
        out
    }

    /// Orbit lengths, sorted nonincreasing; Σ = N.
    pub fn cycle_type(&self) -> CycleType {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                len += 1;
                j = self.images[j] as usize;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_sorted_unchecked(lens)
    }

    /// sign = (−1)^(N − number of cycles).
    pub fn sign(&self) -> i8 {
        self.cycle_type().sign()
    }

    /// Canonical 1-based cycle notation, e.g. `(1,3,5)(2,12,8)`; fixed points
    /// omitted; the identity prints as `()`. Round-trips via [`from_cycle_string`].
    pub fn to_cycle_string(&self) -> String {
        let mut s = String::new();
        for cyc in self.cycles() {
            if cyc.len() == 1 {
                continue;
            }
            s.push('(');
            for (i, x) in cyc.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&(x + 1).to_string());
            }
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }

    /// Parses 1-based cycle notation. Elements not mentioned are fixed;
    /// `degree` sets N. Accepts any rotation/cycle order, canonicalizes on print.
    pub fn from_cycle_string(degree: usize, s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::ParseCycles {
            input: s.into(),
            reason: reason.into(),
        };
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        let body = s.trim();
        let mut rest = body;
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad("expected `(`"));
            }
            let close = rest.find(')').ok_or_else(|| bad("unbalanced `(`"))?;
            let inner = &rest[1..close];
            rest = rest[close + 1..].trim_start();
            if inner.trim().is_empty() {
                continue; // "()" — identity fragment
            }
            let elems = inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|e| bad(&format!("bad element `{t}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            for &e in &elems {
                if e == 0 || e as usize > degree {
                    return Err(bad(&format!("element {e} outside 1..={degree}")));
                }
                if touched[(e - 1) as usize] {
                    return Err(bad(&format!("element {e} appears twice")));
                }
                touched[(e - 1) as usize] = true;
            }
            for i in 0..elems.len() {
                let from = elems[i] - 1;
                let to = elems[(i + 1) % elems.len()] - 1;
                images[from as usize] = to;
            }
        }
        Permutation::from_images(images)
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

/// result(i) = p(q(i)) — `q` applied first.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    let images = q.images.iter().map(|&i| p.images[i as usize]).collect();
    Ok(Permutation { images })
}

/// Number of elements of S_N with cycle type `t`: N!/∏ i^{a_i} a_i!.
pub fn class_size(t: &CycleType) -> BigUint {
    let n = t.size();
    let mut fact = BigUint::one();
    for i in 2..=n {
        fact *= BigUint::from(i);
    }
    fact / t.centralizer_order()
}

/// Number of elements of A_N with cycle type `t`: equals the S_N class size
/// when the type is even, 0 otherwise. Under uniform measure on A_N the type
/// probability is 2·class_size(t)/N! for even types — the factor 2 is the
/// normalization, not an element count.
pub fn alternating_class_count(t: &CycleType) -> BigUint {
    if t.sign() == 1 {
        class_size(t)
    } else {
        BigUint::zero()
    }
}

/// Uniform sample from the conjugacy class of type r^{N/r}: shuffle 0..N−1,
/// chop into consecutive blocks of r, read each block as an r-cycle.
pub fn sample_uniform_class<R: Rng + ?Sized>(
    n: usize,
    r: usize,
    rng: &mut R,
) -> Result<Permutation> {
    if r == 0 || n % r != 0 {
        return Err(Error::InvalidParameter(format!(
            "part size {r} does not divide degree {n}"
        )));
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(rng);
    let mut images = vec![0u32; n];
    for block in order.chunks(r) {
        for i in 0..r {
            images[block[i] as usize] = block[(i + 1) % r];
        }
    }
    Ok(Permutation { images })
}

/// All permutations of degree n by Heap's algorithm. Brute-force scale only.
pub fn all_of_degree(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut a: Vec<u32> = (0..n as u32).collect();
    let mut c = vec![0usize; n];
    out.push(Permutation { images: a.clone() });
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(Permutation { images: a.clone() });
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::derive_stream;
    use proptest::prelude::*;

    fn fig3_beta() -> Permutation {
        Permutation::from_cycle_string(12, "(1,3,5)(2,12,8)(4,7,9)(6,10,11)").unwrap()
    }

    fn fig3_alpha() -> Permutation {
        Permutation::from_cycle_string(12, "(1,2)(3,4)(5,6)(7,8)(9,10)(11,12)").unwrap()
    }

    #[test]
    fn rotation_product_reproduces_reference_faces() {
        let phi = compose(&fig3_beta(), &fig3_alpha()).unwrap();
        assert_eq!(phi.to_cycle_string(), "(1,12,6)(2,3,7)(4,5,10)(8,9,11)");
        assert_eq!(phi.cycle_type().parts(), &[3, 3, 3, 3]);
    }

    #[test]
    fn identity_composition_and_inverse() {
        let mut rng = derive_stream(7, 0);
        let id = Permutation::identity(50);
        for trial in 0..100 {
            let mut order: Vec<u32> = (0..50).collect();
            order.shuffle(&mut rng);
            let p = Permutation::from_images(order).unwrap();
            assert_eq!(compose(&id, &p).unwrap(), p, "trial {trial}");
            assert_eq!(compose(&p, &p.inverse()).unwrap(), id);
        }
    }

    #[test]
    fn degree_mismatch_rejected() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert!(matches!(
            compose(&p, &q),
            Err(Error::DegreeMismatch(3, 4))
        ));
    }

    /// Independent orbit-traversal oracle: mark visited indices walking the
    /// image table backwards through the inverse.
    fn cycle_type_oracle(p: &Permutation) -> Vec<u32> {
        let inv = p.inverse();
        let n = p.degree();
        let mut visited = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n as u32 {
            if visited[s as usize] {
                continue;
            }
            let mut len = 0;
            let mut j = s;
            loop {
                visited[j as usize] = true;
                len += 1;
                j = inv.apply(j);
                if j == s {
                    break;
                }
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    #[test]
    fn cycle_type_matches_independent_traversal() {
        let mut rng = derive_stream(11, 3);
        for _ in 0..50 {
            let mut order: Vec<u32> = (0..20).collect();
            order.shuffle(&mut rng);
            let p = Permutation::from_images(order).unwrap();
            assert_eq!(p.cycle_type().parts(), cycle_type_oracle(&p).as_slice());
        }
        let id5 = Permutation::identity(5);
        assert_eq!(id5.cycle_type().parts(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn class_size_type_3_3_in_s6_is_40() {
        let t = Partition::from_parts(vec![3, 3]).unwrap();
        assert_eq!(class_size(&t), BigUint::from(40u32));
        // brute force over all 720 elements
        let count = all_of_degree(6)
            .iter()
            .filter(|p| p.cycle_type() == t)
            .count();
        assert_eq!(count, 40);
        let ones = Partition::rectangle(1, 9);
        assert_eq!(class_size(&ones), BigUint::one());
    }

    #[test]
    fn class_sizes_match_enumeration_up_to_8() {
        use std::collections::HashMap;
        for n in 1..=8u32 {
            let mut counts: HashMap<Partition, u64> = HashMap::new();
            for p in all_of_degree(n as usize) {
                *counts.entry(p.cycle_type()).or_insert(0) += 1;
            }
            for t in crate::partition::partitions(n) {
                let want = counts.get(&t).copied().unwrap_or(0);
                assert_eq!(class_size(&t), BigUint::from(want), "N={n} type {t}");
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=10u32 {
            let mut total = BigUint::zero();
            let mut even_total = BigUint::zero();
            for t in crate::partition::partitions(n) {
                total += class_size(&t);
                even_total += alternating_class_count(&t);
            }
            let mut fact = BigUint::one();
            for i in 2..=n {
                fact *= BigUint::from(i);
            }
            assert_eq!(total, fact, "N={n}");
            if n >= 2 {
                assert_eq!(even_total * BigUint::from(2u32), fact, "A_N count, N={n}");
            }
        }
    }

    #[test]
    fn alternating_counts_in_s3() {
        let three = Partition::row(3);
        assert_eq!(alternating_class_count(&three), BigUint::from(2u32));
        let t21 = Partition::from_parts(vec![2, 1]).unwrap();
        assert_eq!(alternating_class_count(&t21), BigUint::zero());
        // oracle: A_3 = {id, (123), (132)}
        let a3: Vec<_> = all_of_degree(3)
            .into_iter()
            .filter(|p| p.sign() == 1)
            .collect();
        assert_eq!(a3.len(), 3);
        assert_eq!(
            a3.iter().filter(|p| p.cycle_type() == three).count(),
            2
        );
    }

    #[test]
    fn uniform_class_sampler_respects_type_and_degenerate_cases() {
        let mut rng = derive_stream(5, 9);
        for &(n, r) in &[(12usize, 2usize), (12, 3), (12, 4)] {
            let want = Partition::rectangle(r as u32, (n / r) as u32);
            for _ in 0..1000 {
                let p = sample_uniform_class(n, r, &mut rng).unwrap();
                assert_eq!(p.cycle_type(), want);
            }
        }
        for _ in 0..20 {
            let p = sample_uniform_class(4, 1, &mut rng).unwrap();
            assert_eq!(p, Permutation::identity(4));
        }
        assert!(sample_uniform_class(10, 3, &mut rng).is_err());
    }

    #[test]
    fn sampler_is_uniform_on_class_chi_square() {
        // class 3^2 in S6 has 40 elements; chi-square over 40,000 samples
        // must stay below the 99.9% quantile for 39 degrees of freedom.
        let t = Partition::from_parts(vec![3, 3]).unwrap();
        let class: Vec<Permutation> = all_of_degree(6)
            .into_iter()
            .filter(|p| p.cycle_type() == t)
            .collect();
        assert_eq!(class.len(), 40);
        let index = |p: &Permutation| class.iter().position(|q| q == p).unwrap();
        let mut counts = vec![0u64; 40];
        let mut rng = derive_stream(2024, 0);
        let trials = 40_000;
        for _ in 0..trials {
            counts[index(&sample_uniform_class(6, 3, &mut rng).unwrap())] += 1;
        }
        assert!(counts.iter().all(|&c| c > 0), "every class element appears");
        let expected = trials as f64 / 40.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        const CHI2_999_DF39: f64 = 72.0546629519878;
        assert!(chi2 < CHI2_999_DF39, "chi2={chi2}");
    }

    #[test]
    fn conjugation_preserves_class_membership() {
        let t = Partition::from_parts(vec![3, 3]).unwrap();
        let class: Vec<Permutation> = all_of_degree(6)
            .into_iter()
            .filter(|p| p.cycle_type() == t)
            .collect();
        let mut rng = derive_stream(31, 4);
        for _ in 0..200 {
            let p = sample_uniform_class(6, 3, &mut rng).unwrap();
            let mut order: Vec<u32> = (0..6).collect();
            order.shuffle(&mut rng);
            let g = Permutation::from_images(order).unwrap();
            let q = p.conjugated_by(&g).unwrap();
            assert!(class.contains(&q));
        }
    }

    #[test]
    fn cycle_string_canonicalization() {
        // arbitrary rotations and cycle order parse to the same permutation
        let a = Permutation::from_cycle_string(6, "(5,1,3)(6,2)").unwrap();
        let b = Permutation::from_cycle_string(6, "(2,6)(1,3,5)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_cycle_string(), "(1,3,5)(2,6)");
        assert_eq!(Permutation::identity(4).to_cycle_string(), "()");
        assert_eq!(
            Permutation::from_cycle_string(4, "()").unwrap(),
            Permutation::identity(4)
        );
        assert!(Permutation::from_cycle_string(4, "(1,5)").is_err());
        assert!(Permutation::from_cycle_string(4, "(1,2)(2,3)").is_err());
        assert!(Permutation::from_cycle_string(4, "(1,2").is_err());
    }

    proptest! {
        #[test]
        fn composition_associative(seed in 0u64..1000) {
            let mut rng = derive_stream(seed, 77);
            let n = 24;
            let mut mk = || {
                let mut v: Vec<u32> = (0..n).collect();
                v.shuffle(&mut rng);
                Permutation::from_images(v).unwrap()
            };
            let (p, q, s) = (mk(), mk(), mk());
            let lhs = compose(&p, &compose(&q, &s).unwrap()).unwrap();
            let rhs = compose(&compose(&p, &q).unwrap(), &s).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn sign_is_multiplicative(seed in 0u64..1000) {
            let mut rng = derive_stream(seed, 78);
            let n = 16;
            let mut mk = || {
                let mut v: Vec<u32> = (0..n).collect();
                v.shuffle(&mut rng);
                Permutation::from_images(v).unwrap()
            };
            let (p, q) = (mk(), mk());
            let pq = compose(&p, &q).unwrap();
            prop_assert_eq!(pq.sign(), p.sign() * q.sign());
        }

        #[test]
        fn cycle_string_round_trips(seed in 0u64..1000) {
            let mut rng = derive_stream(seed, 79);
            let n = 40;
            let mut v: Vec<u32> = (0..n).collect();
            v.shuffle(&mut rng);
            let p = Permutation::from_images(v).unwrap();
            let s = p.to_cycle_string();
            let q = Permutation::from_cycle_string(n as usize, &s).unwrap();
            prop_assert_eq!(p, q);
        }
    }
}
