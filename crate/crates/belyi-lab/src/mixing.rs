//! The exact law of βα for β uniform on the class of k-cycles and α uniform
//! on the fixed-point-free involutions, its total variation distance to the
//! uniform measure on the parity coset it lives in, and the
//! Diaconis–Shahshahani character-ratio upper bound on that distance.
//!
//! The law is P(μ) = |C_μ|/N! · Σ_λ χ^λ(C_k)χ^λ(C_2)χ^λ(μ)/f^λ (Frobenius).
//! Rather than evaluating χ^λ(μ) per pair, the whole family {Σ_λ u_λ χ^λ(μ)}_μ
//! is computed in one pass: starting from the weight vector u_λ =
//! χ^λ(C_k)χ^λ(C_2)·∏hooks(λ) in the Schur basis, parts of μ are peeled with
//! the adjoint power-sum operator (rim-hook removal with signs), sharing all
//! descending prefixes across classes. Everything stays in big integers; each
//! P(μ) is the exact rational S(μ)/(N!·z_μ).

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::partition::{partitions, Partition};
use crate::perm::{all_of_degree, compose, sample_uniform_class};
use crate::symrep::{character_column, dimension, hook_grid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Coset of A_N carrying βα: determined by sign(β)·sign(α) for β of type
/// k^{N/k} and α of type 2^{N/2}.
pub fn target_coset(degree: u32, k: u32) -> Result<Parity> {
    check_degree(degree, k)?;
    let s = Partition::rectangle(k, degree / k).sign()
        * Partition::rectangle(2, degree / 2).sign();
    Ok(if s == 1 { Parity::Even } else { Parity::Odd })
}

fn check_degree(degree: u32, k: u32) -> Result<()> {
    if k == 0 || degree == 0 || degree % k != 0 || degree % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "need k | N and 2 | N; got N={degree}, k={k}"
        )));
    }
    Ok(())
}

/// Exact probability law over cycle types of a fixed degree, supported on one
/// parity coset. Probabilities are exact rationals summing to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDistribution {
    degree: u32,
    parity: Parity,
    probs: BTreeMap<Partition, BigRational>,
}

impl ClassDistribution {
    fn new(degree: u32, parity: Parity, probs: BTreeMap<Partition, BigRational>) -> Result<Self> {
        let mut total = BigRational::zero();
        for (mu, p) in &probs {
            if p.is_negative() {
                return Err(Error::InvariantViolation(format!(
                    "negative probability {p} at type {mu}"
                )));
            }
            if !p.is_zero() && (mu.sign() == 1) != (parity == Parity::Even) {
                return Err(Error::InvariantViolation(format!(
                    "mass {p} on type {mu} outside the {parity:?} coset"
                )));
            }
            total += p;
        }
        if !total.is_one() {
            return Err(Error::InvariantViolation(format!(
                "law sums to {total}, not 1"
            )));
        }
        Ok(ClassDistribution {
            degree,
            parity,
            probs,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn probability(&self, mu: &Partition) -> BigRational {
        self.probs.get(mu).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Support with probabilities, in increasing partition order.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.probs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.probs.len()
    }
}

struct Arena {
    by_size: Vec<Vec<Partition>>,
    index: Vec<HashMap<Partition, u32>>,
    // (m, r) -> per from-index list of (to-index in size m-r, height parity odd)
    trans: HashMap<(u32, u32), Vec<Vec<(u32, bool)>>>,
}

impl Arena {
    fn new(n: u32) -> Self {
        let mut by_size = Vec::with_capacity(n as usize + 1);
        let mut index = Vec::with_capacity(n as usize + 1);
        for m in 0..=n {
            let parts: Vec<Partition> = partitions(m).collect();
            let idx = parts
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i as u32))
                .collect();
            by_size.push(parts);
            index.push(idx);
        }
        Arena {
            by_size,
            index,
            trans: HashMap::new(),
        }
    }

    fn ensure_transitions(&mut self, m: u32, r: u32) {
        if self.trans.contains_key(&(m, r)) {
            return;
        }
        let built: Vec<Vec<(u32, bool)>> = self.by_size[m as usize]
            .iter()
            .map(|lam| {
                crate::symrep::rim_hook_removals(lam, r)
                    .into_iter()
                    .map(|(shape, height)| {
                        let to = self.index[(m - r) as usize][&shape];
                        (to, height % 2 == 1)
                    })
                    .collect()
            })
            .collect();
        self.trans.insert((m, r), built);
    }
}

/// Exact law of the cycle type of βα; N ≤ 36 (character budget).
pub fn exact_convolution_law(degree: u32, k: u32) -> Result<ClassDistribution> {
    check_degree(degree, k)?;
    if degree > 36 {
        return Err(Error::InvalidParameter(format!(
            "exact law limited to N ≤ 36, got {degree}"
        )));
    }
    let parity = target_coset(degree, k)?;
    let col_k = character_column(degree, &Partition::rectangle(k, degree / k))?;
    let col_2 = character_column(degree, &Partition::rectangle(2, degree / 2))?;

    let mut arena = Arena::new(degree);
    let top = arena.by_size[degree as usize].clone();
    let mut root: Vec<BigInt> = vec![BigInt::zero(); top.len()];
    for (i, lam) in top.iter().enumerate() {
        let (Some(xk), Some(x2)) = (col_k.get(lam), col_2.get(lam)) else {
            continue;
        };
        // u_λ = χ^λ(C_k)·χ^λ(C_2)·(N!/f^λ), and N!/f^λ is the hook product
        root[i] = xk * x2 * BigInt::from(hook_grid(lam).product());
    }

    let mut n_fact = BigInt::one();
    for i in 2..=degree as u64 {
        n_fact *= BigInt::from(i);
    }

    let mut probs = BTreeMap::new();
    let mut prefix: Vec<u32> = Vec::new();
    peel(
        &mut arena,
        degree,
        degree,
        &root,
        &mut prefix,
        &n_fact,
        &mut probs,
    )?;
    ClassDistribution::new(degree, parity, probs)
}

/// Depth-first peeling over descending part sequences. `vec` holds
/// Σ_λ u_λ·(signed paths λ → ·) in the Schur basis over partitions of `m`.
fn peel(
    arena: &mut Arena,
    m: u32,
    max_part: u32,
    vec: &[BigInt],
    prefix: &mut Vec<u32>,
    n_fact: &BigInt,
    out: &mut BTreeMap<Partition, BigRational>,
) -> Result<()> {
    if m == 0 {
        let s = &vec[0];
        if s.is_zero() {
            return Ok(());
        }
        if s.is_negative() {
            return Err(Error::InvariantViolation(format!(
                "negative class weight at type {}",
                Partition::from_sorted_unchecked(prefix.clone())
            )));
        }
        let mu = Partition::from_sorted_unchecked(prefix.clone());
        let z = BigInt::from(mu.centralizer_order());
        out.insert(mu, BigRational::new(s.clone(), n_fact * z));
        return Ok(());
    }
    for r in (1..=max_part.min(m)).rev() {
        let mut child: Vec<BigInt> = vec![BigInt::zero(); arena.by_size[(m - r) as usize].len()];
        arena.ensure_transitions(m, r);
        {
            let trans = &arena.trans[&(m, r)];
            for (from, val) in vec.iter().enumerate() {
                if val.is_zero() {
                    continue;
                }
                for &(to, odd) in &trans[from] {
                    if odd {
                        child[to as usize] -= val;
                    } else {
                        child[to as usize] += val;
                    }
                }
            }
        }
        if child.iter().all(|c| c.is_zero()) {
            continue;
        }
        prefix.push(r);
        peel(arena, m - r, r, &child, prefix, n_fact, out)?;
        prefix.pop();
    }
    Ok(())
}

/// (1/2)·Σ_μ |P(μ) − U(μ)| against the uniform measure on the law's coset,
/// U(μ) = 2·|C_μ|/N! = 2/z_μ there.
pub fn tv_to_uniform(law: &ClassDistribution) -> BigRational {
    let even = law.parity == Parity::Even;
    let two = BigInt::from(2);
    let mut acc = BigRational::zero();
    for mu in partitions(law.degree) {
        if (mu.sign() == 1) != even {
            continue;
        }
        let u = BigRational::new(two.clone(), BigInt::from(mu.centralizer_order()));
        let d = law.probability(&mu) - u;
        acc += d.abs();
    }
    acc / BigRational::from(BigInt::from(2))
}

/// (1/2)·Σ |P − Q| between two laws of the same degree.
pub fn tv_between(a: &ClassDistribution, b: &ClassDistribution) -> Result<BigRational> {
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch(a.degree as usize, b.degree as usize));
    }
    let mut acc = BigRational::zero();
    let mut keys: Vec<&Partition> = a.probs.keys().chain(b.probs.keys()).collect();
    keys.sort();
    keys.dedup();
    for mu in keys {
        acc += (a.probability(mu) - b.probability(mu)).abs();
    }
    Ok(acc / BigRational::from(BigInt::from(2)))
}

/// Exact square of the character-ratio bound:
/// (1/2) Σ_{λ ∉ {(N),(1^N)}} (χ^λ(C_k)·χ^λ(C_2)/f^λ)².
pub fn ds_upper_bound_squared(degree: u32, k: u32) -> Result<BigRational> {
    check_degree(degree, k)?;
    if degree > 36 {
        return Err(Error::InvalidParameter(format!(
            "bound limited to N ≤ 36, got {degree}"
        )));
    }
    let col_k = character_column(degree, &Partition::rectangle(k, degree / k))?;
    let col_2 = character_column(degree, &Partition::rectangle(2, degree / 2))?;
    let row = Partition::row(degree);
    let column = Partition::rectangle(1, degree);
    let mut acc = BigRational::zero();
    for lam in partitions(degree) {
        if lam == row || lam == column {
            continue;
        }
        let (Some(xk), Some(x2)) = (col_k.get(&lam), col_2.get(&lam)) else {
            continue;
        };
        let f = BigInt::from(dimension(&lam)?);
        let ratio = BigRational::new(xk * x2, f);
        acc += &ratio * &ratio;
    }
    Ok(acc / BigRational::from(BigInt::from(2)))
}

/// √ of [`ds_upper_bound_squared`], evaluated in logs for range safety.
pub fn ds_upper_bound(degree: u32, k: u32) -> Result<f64> {
    let sq = ds_upper_bound_squared(degree, k)?;
    Ok(rational_to_f64(&sq).sqrt())
}

/// BigRational → f64 through log space; exact enough for reporting (the
/// rational itself stays available for exact comparisons).
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let ln = crate::symrep::ln_big(x.numer().magnitude()) - crate::symrep::ln_big(x.denom().magnitude());
    let v = ln.exp();
    if x.is_negative() {
        -v
    } else {
        v
    }
}

/// Empirical law of cycle_type(βα) from independent samples.
pub fn mc_convolution_law<R: Rng + ?Sized>(
    degree: u32,
    k: u32,
    trials: u64,
    rng: &mut R,
) -> Result<ClassDistribution> {
    check_degree(degree, k)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be ≥ 1".into()));
    }
    let parity = target_coset(degree, k)?;
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    for _ in 0..trials {
        let beta = sample_uniform_class(degree as usize, k as usize, rng)?;
        let alpha = sample_uniform_class(degree as usize, 2, rng)?;
        let t = compose(&beta, &alpha)?.cycle_type();
        *counts.entry(t).or_insert(0) += 1;
    }
    let probs = counts
        .into_iter()
        .map(|(mu, c)| {
            (
                mu,
                BigRational::new(BigInt::from(c), BigInt::from(trials)),
            )
        })
        .collect();
    ClassDistribution::new(degree, parity, probs)
}

/// Exhaustive law over all |C_k|·|C_2| products (β, α); brute-force degrees only.
pub fn brute_force_product_law(degree: u32, k: u32) -> Result<ClassDistribution> {
    check_degree(degree, k)?;
    if degree > 8 {
        return Err(Error::InvalidParameter(format!(
            "full enumeration limited to N ≤ 8, got {degree}"
        )));
    }
    let parity = target_coset(degree, k)?;
    let type_k = Partition::rectangle(k, degree / k);
    let type_2 = Partition::rectangle(2, degree / 2);
    let everyone = all_of_degree(degree as usize);
    let betas: Vec<_> = everyone
        .iter()
        .filter(|p| p.cycle_type() == type_k)
        .collect();
    let alphas: Vec<_> = everyone
        .iter()
        .filter(|p| p.cycle_type() == type_2)
        .collect();
    let total = (betas.len() * alphas.len()) as u64;
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    for b in &betas {
        for a in &alphas {
            *counts.entry(compose(b, a)?.cycle_type()).or_insert(0) += 1;
        }
    }
    let probs = counts
        .into_iter()
        .map(|(mu, c)| {
            (
                mu,
                BigRational::new(BigInt::from(c), BigInt::from(total)),
            )
        })
        .collect();
    ClassDistribution::new(degree, parity, probs)
}
