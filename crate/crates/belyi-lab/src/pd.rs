//! The Poisson–Dirichlet side: stick-breaking (GEM) samples, ranked mass
//! vectors, the limiting mean of the largest normalized cycle, and the
//! comparisons between sampled face spectra and PD(θ) predictions.
//!
//! Face lengths live in half-edge units, so a spectrum of total kn normalizes
//! by kn; the largest-face ratio compared against the stick-breaking constant
//! is L/(kn).

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::stats::{
    exp_integral_e1, integrate, ks_one_sample, ks_two_sample, moments, normal_cdf, wasserstein1,
};
use crate::stream::{derive_stream, trial_seed};
use crate::surface::{faces, sample_oriented_graph};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// A finite prefix of a point in the infinite simplex: ranked nonincreasing
/// masses plus the unbroken residual; masses + residual = 1.
#[derive(Debug, Clone, Serialize)]
pub struct RankedMassVector {
    pub masses: Vec<f64>,
    pub residual: f64,
}

impl RankedMassVector {
    pub fn largest(&self) -> f64 {
        self.masses.first().copied().unwrap_or(0.0)
    }

    /// j-th ranked mass (1-based), 0 beyond the truncation.
    pub fn ranked(&self, j: usize) -> f64 {
        assert!(j >= 1);
        self.masses.get(j - 1).copied().unwrap_or(0.0)
    }
}

/// Unranked stick-breaking masses G_i = (1−B_1)⋯(1−B_{i−1})B_i with
/// B_i ~ beta(1,θ) (density θ(1−x)^{θ−1}, sampled as 1 − U^{1/θ}), plus the
/// residual ∏(1−B_i).
pub fn gem_sample_unranked<R: Rng + ?Sized>(
    theta: f64,
    trunc: usize,
    rng: &mut R,
) -> Result<(Vec<f64>, f64)> {
    if !(theta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "theta must be > 0, got {theta}"
        )));
    }
    if trunc == 0 {
        return Err(Error::InvalidParameter("trunc must be ≥ 1".into()));
    }
    let mut masses = Vec::with_capacity(trunc);
    let mut remaining = 1.0f64;
    for _ in 0..trunc {
        let u: f64 = rng.gen::<f64>();
        let b = if theta == 1.0 {
            u
        } else {
            1.0 - (1.0 - u).powf(1.0 / theta)
        };
        masses.push(remaining * b);
        remaining *= 1.0 - b;
    }
    Ok((masses, remaining))
}

/// Ranked stick-breaking sample.
pub fn gem_sample<R: Rng + ?Sized>(
    theta: f64,
    trunc: usize,
    rng: &mut R,
) -> Result<RankedMassVector> {
    let (mut masses, residual) = gem_sample_unranked(theta, trunc, rng)?;
    masses.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(RankedMassVector { masses, residual })
}

/// ∫₀^∞ exp(−x − E₁(x)) dx to absolute accuracy 1e-8 (E₁ the exponential
/// integral). The integrand tends to x·e^γ at 0 and to e^{−x} at ∞; the tail
/// beyond 40 is below e^{−40} ≈ 4e−18.
pub fn golomb_dickman_constant() -> Result<f64> {
    let f = |x: f64| {
        if x <= 0.0 {
            0.0
        } else {
            (-x - exp_integral_e1(x)).exp()
        }
    };
    let head = integrate(&f, 0.0, 1.0, 1e-11)?;
    let tail = integrate(&f, 1.0, 40.0, 1e-11)?;
    Ok(head + tail)
}

/// One sampled face record.
#[derive(Debug, Clone, Serialize)]
pub struct FaceRecord {
    pub trial: u64,
    pub seed: u64,
    pub face_count: u64,
    pub largest_face: u64,
    pub genus: u64,
    pub components: u64,
    pub face_lengths: Vec<u32>,
}

/// Per-trial records for fixed (n, k).
#[derive(Debug, Clone)]
pub struct FaceCountSample {
    pub n: usize,
    pub k: usize,
    pub master_seed: u64,
    pub records: Vec<FaceRecord>,
}

/// Samples `trials` oriented graphs with per-trial derived streams
/// (trial index i uses stream (master_seed, i)); order of records is by
/// trial index regardless of scheduling.
pub fn collect_face_samples(
    n: usize,
    k: usize,
    trials: u64,
    master_seed: u64,
) -> Result<FaceCountSample> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be ≥ 1".into()));
    }
    let records: Result<Vec<FaceRecord>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = derive_stream(master_seed, trial);
            let model = sample_oriented_graph(n, k, &mut rng)?;
            let spec = faces(&model)?;
            Ok(FaceRecord {
                trial,
                seed: trial_seed(master_seed, trial),
                face_count: spec.face_count,
                largest_face: spec.largest_face,
                genus: spec.genus,
                components: spec.components,
                face_lengths: spec.face_lengths.parts().to_vec(),
            })
        })
        .collect();
    Ok(FaceCountSample {
        n,
        k,
        master_seed,
        records: records?,
    })
}

/// Summary of face counts against the log(kn) + γ predictions.
#[derive(Debug, Clone, Serialize)]
pub struct FaceStatsSummary {
    pub n: usize,
    pub k: usize,
    pub trials: u64,
    pub mean_faces: f64,
    pub var_faces: f64,
    pub mean_std_error: f64,
    pub predicted_mean: f64,
    pub predicted_var: f64,
    pub mean_largest_ratio: f64,
    pub mean_genus: f64,
}

pub fn face_count_stats(sample: &FaceCountSample) -> FaceStatsSummary {
    let ls: Vec<f64> = sample.records.iter().map(|r| r.face_count as f64).collect();
    let m = moments(&ls);
    let kn = (sample.n * sample.k) as f64;
    let ratio = sample
        .records
        .iter()
        .map(|r| r.largest_face as f64 / kn)
        .sum::<f64>()
        / ls.len() as f64;
    let genus_mean = sample.records.iter().map(|r| r.genus as f64).sum::<f64>() / ls.len() as f64;
    FaceStatsSummary {
        n: sample.n,
        k: sample.k,
        trials: m.count,
        mean_faces: m.mean,
        var_faces: m.variance,
        mean_std_error: m.std_error,
        predicted_mean: kn.ln() + EULER_GAMMA,
        predicted_var: kn.ln() + EULER_GAMMA - std::f64::consts::PI.powi(2) / 6.0,
        mean_largest_ratio: ratio,
        mean_genus: genus_mean,
    }
}

/// Central-limit check of the standardized face count (l − log kn)/√(log kn)
/// against N(0,1).
///
/// The face count is integer-valued, so the raw KS statistic is dominated by
/// the lattice (atom spacing 1/√log(kn)); the corrected statistic compares
/// the lattice CDF at atom midpoints, sup_m |P(l ≤ m) − Φ((m+0.5−log kn)/σ)|,
/// and is the meaningful normality measure. Both are reported.
#[derive(Debug, Clone, Serialize)]
pub struct CltReport {
    pub trials: u64,
    pub ks_corrected: f64,
    pub ks_raw: f64,
    /// mean of (l − log kn)/σ; sits near γ/σ at finite n
    pub standardized_mean: f64,
    /// mean of (l − log kn − γ)/σ; near 0
    pub standardized_mean_centered: f64,
    pub standardized_se: f64,
    pub genus_mean_empirical: f64,
    pub genus_mean_predicted: f64,
    pub genus_sd_predicted: f64,
}

pub fn clt_check(sample: &FaceCountSample) -> Result<CltReport> {
    if sample.records.len() < 10_000 {
        return Err(Error::InvalidParameter(format!(
            "clt check needs ≥ 10^4 trials, got {}",
            sample.records.len()
        )));
    }
    let kn = (sample.n * sample.k) as f64;
    let center = kn.ln();
    let sigma = center.sqrt();
    let mut zs: Vec<f64> = sample
        .records
        .iter()
        .map(|r| (r.face_count as f64 - center) / sigma)
        .collect();
    let ks_raw = ks_one_sample(&mut zs, normal_cdf);
    // corrected: empirical CDF of the integer counts vs Φ at atom midpoints
    let mut counts: std::collections::BTreeMap<u64, u64> = std::collections::BTreeMap::new();
    for r in &sample.records {
        *counts.entry(r.face_count).or_insert(0) += 1;
    }
    let total = sample.records.len() as f64;
    let mut cum = 0u64;
    let mut ks_corrected: f64 = 0.0;
    for (&l, &c) in &counts {
        cum += c;
        let phi = normal_cdf((l as f64 + 0.5 - center) / sigma);
        ks_corrected = ks_corrected.max((cum as f64 / total - phi).abs());
    }
    let zm = moments(&zs);
    let centered_mean = zm.mean - EULER_GAMMA / sigma;
    // genus ≈ 1 + n/4 − l/2 in distribution; predicted mean uses E l = log kn + γ
    let genus_mean_pred = 1.0 + sample.n as f64 / 4.0 - (center + EULER_GAMMA) / 2.0;
    let genus_mean_emp =
        sample.records.iter().map(|r| r.genus as f64).sum::<f64>() / total;
    Ok(CltReport {
        trials: sample.records.len() as u64,
        ks_corrected,
        ks_raw,
        standardized_mean: zm.mean,
        standardized_mean_centered: centered_mean,
        standardized_se: zm.std_error,
        genus_mean_empirical: genus_mean_emp,
        genus_mean_predicted: genus_mean_pred,
        genus_sd_predicted: sigma / 2.0,
    })
}

/// Mean of L/(kn) with its standard error.
#[derive(Debug, Clone, Serialize)]
pub struct LargestFaceReport {
    pub trials: u64,
    pub mean_ratio: f64,
    pub std_error: f64,
}

pub fn largest_face_ratio(sample: &FaceCountSample) -> LargestFaceReport {
    let kn = (sample.n * sample.k) as f64;
    let ratios: Vec<f64> = sample
        .records
        .iter()
        .map(|r| r.largest_face as f64 / kn)
        .collect();
    let m = moments(&ratios);
    LargestFaceReport {
        trials: m.count,
        mean_ratio: m.mean,
        std_error: m.std_error,
    }
}

/// Two-sample comparison of ranked normalized face masses against PD(θ).
#[derive(Debug, Clone, Serialize)]
pub struct PdDistanceReport {
    pub ks: f64,
    pub ks_null_99: f64,
    pub wasserstein_1: f64,
    pub wasserstein_2: f64,
    pub wasserstein_3: f64,
    /// bootstrap 95% intervals for the three Wasserstein distances
    pub wasserstein_ci: [(f64, f64); 3],
    pub trials: u64,
    pub theta: f64,
}

const GEM_TRUNC: usize = 200;

/// Compares the j-th ranked normalized face coordinates (j = 1,2,3) of the
/// sampled spectra with matched-size PD(θ) stick-breaking samples: two-sample
/// KS on the largest coordinate, Wasserstein-1 per rank, with bootstrap CIs.
pub fn pd_distance(
    sample: &FaceCountSample,
    theta: f64,
    master_seed: u64,
) -> Result<PdDistanceReport> {
    if sample.records.len() < 10_000 {
        return Err(Error::InvalidParameter(format!(
            "pd comparison needs ≥ 10^4 spectra, got {}",
            sample.records.len()
        )));
    }
    let kn = (sample.n * sample.k) as f64;
    let trials = sample.records.len();
    let ranked_faces: Vec<[f64; 3]> = sample
        .records
        .iter()
        .map(|r| {
            let get = |j: usize| r.face_lengths.get(j).copied().unwrap_or(0) as f64 / kn;
            [get(0), get(1), get(2)]
        })
        .collect();
    let ranked_pd: Vec<[f64; 3]> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = derive_stream(master_seed, i);
            let g = gem_sample(theta, GEM_TRUNC, &mut rng)?;
            Ok([g.ranked(1), g.ranked(2), g.ranked(3)])
        })
        .collect::<Result<_>>()?;

    let mut xs: Vec<f64> = ranked_faces.iter().map(|r| r[0]).collect();
    let mut ys: Vec<f64> = ranked_pd.iter().map(|r| r[0]).collect();
    let ks = ks_two_sample(&mut xs, &mut ys);

    let mut w = [0.0f64; 3];
    for j in 0..3 {
        let mut a: Vec<f64> = ranked_faces.iter().map(|r| r[j]).collect();
        let mut b: Vec<f64> = ranked_pd.iter().map(|r| r[j]).collect();
        w[j] = wasserstein1(&mut a, &mut b);
    }

    // percentile bootstrap over paired resampling of both samples
    let boot = 200;
    let mut ci = [(f64::MAX, f64::MIN); 3];
    let mut boots: Vec<[f64; 3]> = Vec::with_capacity(boot);
    let mut rng = derive_stream(master_seed, u64::MAX / 2);
    for _ in 0..boot {
        let mut re_f: [Vec<f64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        let mut re_p: [Vec<f64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for _ in 0..trials {
            let rf = ranked_faces[rng.gen_range(0..trials)];
            let rp = ranked_pd[rng.gen_range(0..trials)];
            for j in 0..3 {
                re_f[j].push(rf[j]);
                re_p[j].push(rp[j]);
            }
        }
        let mut row = [0.0f64; 3];
        for j in 0..3 {
            row[j] = wasserstein1(&mut re_f[j], &mut re_p[j]);
        }
        boots.push(row);
    }
    for j in 0..3 {
        let mut col: Vec<f64> = boots.iter().map(|b| b[j]).collect();
        col.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        ci[j] = (col[(boot as f64 * 0.025) as usize], col[(boot as f64 * 0.975) as usize]);
    }

    Ok(PdDistanceReport {
        ks,
        ks_null_99: crate::stats::ks_two_sample_critical(trials, trials, 0.01),
        wasserstein_1: w[0],
        wasserstein_2: w[1],
        wasserstein_3: w[2],
        wasserstein_ci: ci,
        trials: trials as u64,
        theta,
    })
}

/// Largest-cycle fraction and cycle count of a uniform random permutation of
/// size n, sampled through the exact uniform stick-chop of cycle lengths
/// (the first cycle's length is uniform on 1..=n, then recurse).
pub fn uniform_permutation_cycle_stats<R: Rng + ?Sized>(n: u64, rng: &mut R) -> (f64, u64) {
    let mut remaining = n;
    let mut largest = 0u64;
    let mut count = 0u64;
    while remaining > 0 {
        let c = rng.gen_range(1..=remaining);
        largest = largest.max(c);
        count += 1;
        remaining -= c;
    }
    (largest as f64 / n as f64, count)
}
