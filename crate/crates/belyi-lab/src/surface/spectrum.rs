//! Adjacency spectra of sampled multigraphs and the limiting spectral
//! density of random k-regular graphs on [−2√(k−1), 2√(k−1)].

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::stats::integrate;
use crate::surface::OrientedGraphModel;

/// All n eigenvalues of the multigraph adjacency matrix, nonincreasing.
/// Dense symmetric eigensolve; n ≤ 4096.
pub fn adjacency_spectrum(model: &OrientedGraphModel) -> Result<Vec<f64>> {
    let n = model.vertices();
    if n > 4096 {
        return Err(Error::InvalidParameter(format!(
            "dense eigensolve limited to n ≤ 4096, got {n}"
        )));
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (u, v, _, _) in model.edges() {
        if u == v {
            a[(u as usize, u as usize)] += 2.0;
        } else {
            a[(u as usize, v as usize)] += 1.0;
            a[(v as usize, u as usize)] += 1.0;
        }
    }
    let mut ev: Vec<f64> = a.symmetric_eigenvalues().as_slice().to_vec();
    ev.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(ev)
}

/// λ₂ of the adjacency matrix.
pub fn second_eigenvalue(model: &OrientedGraphModel) -> Result<f64> {
    let ev = adjacency_spectrum(model)?;
    ev.get(1).copied().ok_or_else(|| {
        Error::InvalidParameter("second eigenvalue needs at least two vertices".into())
    })
}

/// Limiting spectral density ν_k(t) = (k/2π)·√(4(k−1) − t²)/(k² − t²),
/// zero outside |t| ≤ 2√(k−1).
pub fn kesten_mckay_density(k: u32, t: f64) -> f64 {
    let km1 = (k as f64) - 1.0;
    let disc = 4.0 * km1 - t * t;
    if disc <= 0.0 {
        return 0.0;
    }
    (k as f64) / (2.0 * std::f64::consts::PI) * disc.sqrt() / ((k * k) as f64 - t * t)
}

/// Reference mass of ν_k per bin over `bins` equal bins spanning the support.
/// The square-root edge is handled by the t = 2√(k−1)·sin u substitution.
pub fn kesten_mckay_bin_masses(k: u32, bins: usize) -> Result<Vec<f64>> {
    let edge = 2.0 * ((k as f64) - 1.0).sqrt();
    let density_sub = |u: f64| {
        let t = edge * u.sin();
        kesten_mckay_density(k, t) * edge * u.cos()
    };
    let mut masses = Vec::with_capacity(bins);
    for b in 0..bins {
        let a = -edge + 2.0 * edge * b as f64 / bins as f64;
        let c = -edge + 2.0 * edge * (b + 1) as f64 / bins as f64;
        let (ua, uc) = ((a / edge).asin(), (c / edge).asin());
        masses.push(integrate(&density_sub, ua, uc, 1e-11)?);
    }
    Ok(masses)
}

/// L1 distance between the empirical per-bin eigenvalue mass of `spectra`
/// (normalized by the total eigenvalue count, so mass outside the support is
/// charged against the reference) and the ν_k bin masses.
pub fn spectral_l1_vs_kesten_mckay(k: u32, spectra: &[Vec<f64>], bins: usize) -> Result<f64> {
    let total: usize = spectra.iter().map(|s| s.len()).sum();
    if total == 0 {
        return Err(Error::InvalidParameter("no spectra supplied".into()));
    }
    let edge = 2.0 * ((k as f64) - 1.0).sqrt();
    let mut hist = vec![0u64; bins];
    for s in spectra {
        for &t in s {
            if t < -edge || t > edge {
                continue;
            }
            let mut b = ((t + edge) / (2.0 * edge) * bins as f64) as usize;
            if b == bins {
                b = bins - 1;
            }
            hist[b] += 1;
        }
    }
    let masses = kesten_mckay_bin_masses(k, bins)?;
    Ok(hist
        .iter()
        .zip(masses.iter())
        .map(|(&h, &m)| (h as f64 / total as f64 - m).abs())
        .sum())
}
