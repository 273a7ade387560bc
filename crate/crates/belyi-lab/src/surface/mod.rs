//! The graph/surface side: random regular graphs with random orientation in
//! half-edge form, their left-hand-turn faces, genus, and configuration
//! counts.
//!
//! Vertex v owns half-edges {k·v, …, k·v+k−1}. The rotation β permutes each
//! vertex block cyclically; the matching α is a fixed-point-free involution
//! pairing half-edges into edges. Faces are the cycles of βα, measured in
//! half-edge units.

mod cycles;
mod spectrum;

pub use cycles::short_cycle_counts;
pub use spectrum::{adjacency_spectrum, kesten_mckay_density, second_eigenvalue, spectral_l1_vs_kesten_mckay};

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::{compose, Permutation};

/// A k-regular multigraph with orientation, as the pair (β, α) on N = k·n
/// half-edges. Loops and multi-edges are allowed and never simplified.
#[derive(Debug, Clone)]
pub struct OrientedGraphModel {
    vertices: usize,
    regularity: usize,
    beta: Permutation,
    alpha: Permutation,
}

impl OrientedGraphModel {
    pub fn new(
        vertices: usize,
        regularity: usize,
        beta: Permutation,
        alpha: Permutation,
    ) -> Result<Self> {
        let n = vertices;
        let k = regularity;
        let half = k
            .checked_mul(n)
            .ok_or_else(|| Error::InvalidParameter("k·n overflows".into()))?;
        if half % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "k·n = {half} must be even for a matching to exist"
            )));
        }
        if beta.degree() != half || alpha.degree() != half {
            return Err(Error::DegreeMismatch(beta.degree(), half));
        }
        // β: each vertex block is one k-cycle
        let mut block_seen = vec![false; half];
        for v in 0..n {
            let start = (k * v) as u32;
            let mut j = start;
            for _ in 0..k {
                if j as usize / k != v || block_seen[j as usize] {
                    return Err(Error::InvalidParameter(format!(
                        "rotation does not cycle vertex {v}'s half-edge block"
                    )));
                }
                block_seen[j as usize] = true;
                j = beta.apply(j);
            }
            if j != start {
                return Err(Error::InvalidParameter(format!(
                    "rotation at vertex {v} is not a single {k}-cycle"
                )));
            }
        }
        // α: fixed-point-free involution
        for h in 0..half as u32 {
            let a = alpha.apply(h);
            if a == h || alpha.apply(a) != h {
                return Err(Error::InvalidParameter(format!(
                    "matching is not a fixed-point-free involution at half-edge {h}"
                )));
            }
        }
        Ok(OrientedGraphModel {
            vertices: n,
            regularity: k,
            beta,
            alpha,
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn regularity(&self) -> usize {
        self.regularity
    }

    pub fn half_edges(&self) -> usize {
        self.vertices * self.regularity
    }

    pub fn beta(&self) -> &Permutation {
        &self.beta
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    #[inline]
    pub fn vertex_of(&self, half_edge: u32) -> u32 {
        half_edge / self.regularity as u32
    }

    /// Edges as (u, v, h_u, h_v) with h_u < h_v, sorted by h_u.
    pub fn edges(&self) -> Vec<(u32, u32, u32, u32)> {
        let mut out = Vec::with_capacity(self.half_edges() / 2);
        for h in 0..self.half_edges() as u32 {
            let a = self.alpha.apply(h);
            if h < a {
                out.push((self.vertex_of(h), self.vertex_of(a), h, a));
            }
        }
        out
    }

    /// Edge-list text: one line `u v h_u h_v` per edge (vertices and
    /// half-edges 0-based).
    pub fn write_edge_list<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "# n={} k={} half_edges={}", self.vertices, self.regularity, self.half_edges())?;
        for (u, v, hu, hv) in self.edges() {
            writeln!(w, "{u} {v} {hu} {hv}")?;
        }
        Ok(())
    }

    /// Degree-respecting adjacency: parallel edges add 1 per endpoint, loops
    /// add 2 on the diagonal, so every row sums to k.
    pub fn adjacency_counts(&self) -> Vec<Vec<u32>> {
        let n = self.vertices;
        let mut a = vec![vec![0u32; n]; n];
        for (u, v, _, _) in self.edges() {
            a[u as usize][v as usize] += 1;
            a[v as usize][u as usize] += 1;
        }
        a
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Connected components of the underlying multigraph.
    pub fn component_count(&self) -> usize {
        let n = self.vertices;
        let mut seen = vec![false; n];
        let mut stack: Vec<u32> = Vec::new();
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            stack.push(start as u32);
            while let Some(v) = stack.pop() {
                for i in 0..self.regularity as u32 {
                    let h = v * self.regularity as u32 + i;
                    let u = self.vertex_of(self.alpha.apply(h));
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        stack.push(u);
                    }
                }
            }
        }
        components
    }
}

/// Samples the model: α uniform over perfect matchings of the k·n half-edge
/// points, β an independent uniform cyclic order per vertex block.
pub fn sample_oriented_graph<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<OrientedGraphModel> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("k must be ≥ 3, got {k}")));
    }
    if (k * n) % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "k·n = {} must be even",
            k * n
        )));
    }
    let half = k * n;
    let mut beta_images = vec![0u32; half];
    let mut block: Vec<u32> = Vec::with_capacity(k);
    for v in 0..n {
        let base = (k * v) as u32;
        // uniform cyclic order: keep the block head first, shuffle the rest
        block.clear();
        block.extend((1..k as u32).map(|i| base + i));
        block.shuffle(rng);
        let mut prev = base;
        for &h in &block {
            beta_images[prev as usize] = h;
            prev = h;
        }
        beta_images[prev as usize] = base;
    }
    let mut points: Vec<u32> = (0..half as u32).collect();
    points.shuffle(rng);
    let mut alpha_images = vec![0u32; half];
    for pair in points.chunks_exact(2) {
        alpha_images[pair[0] as usize] = pair[1];
        alpha_images[pair[1] as usize] = pair[0];
    }
    OrientedGraphModel::new(
        n,
        k,
        Permutation::from_images(beta_images)?,
        Permutation::from_images(alpha_images)?,
    )
}

/// Face data of a model: the cycle type of βα in half-edge units, plus the
/// derived face count, largest face, and genus.
///
/// `genus` is the total genus over connected components,
/// c − (V − E + F)/2; for connected models (the typical case) this is
/// exactly [`genus`]`(n, l)`. The configuration model is disconnected with
/// probability Θ(1/n), and those samples would otherwise make the formula
/// negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSpectrum {
    pub n: usize,
    pub k: usize,
    pub face_lengths: Partition,
    pub face_count: u64,
    pub largest_face: u64,
    pub genus: u64,
    pub components: u64,
}

impl FaceSpectrum {
    pub fn face_lengths_joined(&self) -> String {
        self.face_lengths
            .parts()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Faces of the model: cycles of compose(β, α).
pub fn faces(model: &OrientedGraphModel) -> Result<FaceSpectrum> {
    let phi = compose(&model.beta, &model.alpha)?;
    let t = phi.cycle_type();
    let l = t.len() as u64;
    let largest = t.first() as u64;
    let c = model.component_count() as u64;
    let g = component_genus(model.vertices as u64, model.regularity as u64, l, c)?;
    Ok(FaceSpectrum {
        n: model.vertices,
        k: model.regularity,
        face_lengths: t,
        face_count: l,
        largest_face: largest,
        genus: g,
        components: c,
    })
}

/// Genus of the cubic-graph surface: 1 + (n − 2l)/4; n − 2l must be ≡ 0
/// (mod 4) and the result nonnegative, else an upstream bug is signalled.
pub fn genus(n: u64, l: u64) -> Result<u64> {
    euler_genus(n, 3, l)
}

/// Euler-formula genus for a connected k-regular model: the c = 1 case of
/// [`component_genus`].
pub fn euler_genus(n: u64, k: u64, l: u64) -> Result<u64> {
    component_genus(n, k, l, 1)
}

/// Total genus over c components: c − (V − E + F)/2 with V = n, E = kn/2,
/// F = l. Must come out a nonnegative integer, else an upstream bug.
pub fn component_genus(n: u64, k: u64, l: u64, c: u64) -> Result<u64> {
    let v_e_f = n as i64 - (k * n / 2) as i64 + l as i64;
    let g2 = 2 * c as i64 - v_e_f;
    if g2 % 2 != 0 || g2 < 0 {
        return Err(Error::InvariantViolation(format!(
            "impossible face count l={l} for n={n}, k={k}, components={c} (Euler characteristic {v_e_f})"
        )));
    }
    Ok((g2 / 2) as u64)
}

/// Number of perfect matchings of 2m points: (2m)!/(2^m·m!) = (2m−1)!!.
pub fn configuration_count(m: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut i = 1u64;
    while i < 2 * m {
        acc *= BigUint::from(i);
        i += 2;
    }
    acc
}

/// Number of matchings of 2m points containing a given disjoint set of l
/// edges: N(m)/((2m−1)(2m−3)⋯(2m−2l+1)).
pub fn configuration_count_fixed_edges(m: u64, l: u64) -> Result<BigUint> {
    if l > m {
        return Err(Error::InvalidParameter(format!(
            "fixed edge count {l} exceeds pair count {m}"
        )));
    }
    let mut den = BigUint::one();
    for j in 0..l {
        den *= BigUint::from(2 * m - 2 * j - 1);
    }
    Ok(configuration_count(m) / den)
}

/// The cube skeleton with the planar rotation system: 6 faces, genus 0.
///
/// Vertices: outer square 0–3 (0 top-left, clockwise), inner square 4–7
/// aligned under it, spokes i—(i+4); rotations are counterclockwise in the
/// drawing.
pub fn cube_fixture() -> OrientedGraphModel {
    let beta = Permutation::from_cycle_string(
        24,
        "(1,2,3)(4,5,6)(7,8,9)(10,11,12)(13,14,15)(16,17,18)(19,20,21)(22,23,24)",
    )
    .unwrap();
    let alpha = Permutation::from_cycle_string(
        24,
        "(1,12)(2,15)(3,6)(4,17)(5,7)(8,19)(9,10)(11,22)(13,24)(14,18)(16,20)(21,23)",
    )
    .unwrap();
    OrientedGraphModel::new(8, 3, beta, alpha).unwrap()
}

/// The cube with the upper-right vertex's cyclic order reversed: the three
/// faces at that corner merge, leaving 4 faces and genus 1.
pub fn cube_fixture_flipped() -> OrientedGraphModel {
    let beta = Permutation::from_cycle_string(
        24,
        "(1,2,3)(4,6,5)(7,8,9)(10,11,12)(13,14,15)(16,17,18)(19,20,21)(22,23,24)",
    )
    .unwrap();
    let alpha = cube_fixture().alpha().clone();
    OrientedGraphModel::new(8, 3, beta, alpha).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::derive_stream;
    use std::collections::BTreeMap;

    #[test]
    fn cube_has_six_square_faces_and_genus_zero() {
        let spec = faces(&cube_fixture()).unwrap();
        assert_eq!(spec.face_count, 6);
        assert_eq!(spec.face_lengths.parts(), &[4, 4, 4, 4, 4, 4]);
        assert_eq!(spec.genus, 0);
        assert_eq!(genus(8, 6).unwrap(), 0);
    }

    #[test]
    fn flipped_cube_merges_three_faces() {
        let spec = faces(&cube_fixture_flipped()).unwrap();
        assert_eq!(spec.face_count, 4);
        assert_eq!(spec.face_lengths.parts(), &[12, 4, 4, 4]);
        assert_eq!(spec.genus, 1);
        assert_eq!(genus(8, 4).unwrap(), 1);
    }

    #[test]
    fn genus_rejects_impossible_counts() {
        assert!(genus(8, 5).is_err());
        assert!(genus(8, 8).is_err());
    }

    #[test]
    fn sampled_models_have_consistent_spectra() {
        let mut rng = derive_stream(1, 1);
        let mut disconnected = 0u32;
        for trial in 0..1000 {
            let m = sample_oriented_graph(64, 3, &mut rng).unwrap();
            let spec = faces(&m).unwrap();
            assert_eq!(spec.face_lengths.size(), 3 * 64, "trial {trial}");
            // component_genus already asserts integrality and nonnegativity
            if spec.components == 1 {
                assert_eq!(
                    spec.genus,
                    genus(64, spec.face_count).unwrap(),
                    "trial {trial}"
                );
            } else {
                disconnected += 1;
            }
        }
        // disconnection is rare but real at this size
        assert!(disconnected < 30, "{disconnected} disconnected of 1000");
    }

    #[test]
    fn sampling_rejects_bad_parameters() {
        let mut rng = derive_stream(1, 2);
        assert!(sample_oriented_graph(5, 3, &mut rng).is_err());
        assert!(sample_oriented_graph(4, 2, &mut rng).is_err());
        assert!(sample_oriented_graph(4, 3, &mut rng).is_ok());
    }

    #[test]
    fn configuration_counts() {
        assert_eq!(configuration_count(1), BigUint::from(1u32));
        assert_eq!(configuration_count(2), BigUint::from(3u32));
        assert_eq!(configuration_count(6), BigUint::from(10395u32));
        assert_eq!(
            configuration_count_fixed_edges(2, 0).unwrap(),
            configuration_count(2)
        );
        assert_eq!(
            configuration_count_fixed_edges(2, 1).unwrap(),
            BigUint::from(1u32)
        );
        assert!(configuration_count_fixed_edges(2, 3).is_err());
    }

    /// Recursive enumeration oracle for perfect matchings of {0..2m−1}.
    fn enumerate_matchings(points: &mut Vec<u32>, fixed: &[(u32, u32)]) -> u64 {
        if points.is_empty() {
            return 1;
        }
        let a = points[0];
        let mut count = 0;
        for i in 1..points.len() {
            let b = points[i];
            let mut rest: Vec<u32> = points
                .iter()
                .copied()
                .filter(|&x| x != a && x != b)
                .collect();
            // when checking fixed-edge counts, only recurse if consistent
            let pair_ok = fixed.iter().all(|&(x, y)| {
                let involves = x == a || y == a || x == b || y == b;
                !involves || (x == a && y == b) || (x == b && y == a)
            });
            if pair_ok {
                count += enumerate_matchings(&mut rest, fixed);
            }
        }
        count
    }

    #[test]
    fn matching_counts_match_enumeration() {
        let mut pts: Vec<u32> = (0..12).collect();
        assert_eq!(enumerate_matchings(&mut pts, &[]), 10395);
        // matchings of 8 points containing 2 fixed disjoint edges
        let mut pts8: Vec<u32> = (0..8).collect();
        assert_eq!(enumerate_matchings(&mut pts8, &[]), 105);
        let fixed = [(0u32, 1u32), (2, 3)];
        let with_fixed = enumerate_matchings(&mut pts8, &fixed);
        assert_eq!(
            BigUint::from(with_fixed),
            configuration_count_fixed_edges(4, 2).unwrap()
        );
    }

    #[test]
    fn matching_sampler_uniform_over_15_matchings_chi_square() {
        // k=3, n=2: 6 half-edges, 15 matchings
        let mut rng = derive_stream(88, 0);
        let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        let trials = 15_000u64;
        for _ in 0..trials {
            let m = sample_oriented_graph(2, 3, &mut rng).unwrap();
            let key: Vec<u32> = (0..6).map(|h| m.alpha().apply(h)).collect();
            *counts.entry(key).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 15);
        let expected = trials as f64 / 15.0;
        let chi2: f64 = counts
            .values()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        const CHI2_999_DF14: f64 = 36.12327368039813;
        assert!(chi2 < CHI2_999_DF14, "chi2={chi2}");
    }

    #[test]
    fn rotation_sampler_uniform_over_four_betas() {
        // k=3, n=2: 2 cyclic orders per vertex → 4 equally likely rotations
        let mut rng = derive_stream(88, 1);
        let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        let trials = 10_000u64;
        for _ in 0..trials {
            let m = sample_oriented_graph(2, 3, &mut rng).unwrap();
            let key: Vec<u32> = (0..6).map(|h| m.beta().apply(h)).collect();
            *counts.entry(key).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 4);
        for &c in counts.values() {
            let freq = c as f64 / trials as f64;
            assert!((freq - 0.25).abs() < 0.02, "freq={freq}");
        }
    }

    #[test]
    fn vertex_grouped_and_free_class_samplers_share_the_face_law_at_n2() {
        // full enumeration: the law of cycle_type(βα) over the 4×15
        // vertex-grouped models equals the law over the 40×15 free products
        let exact = crate::mixing::brute_force_product_law(6, 3).unwrap();
        let betas = [
            "(1,2,3)(4,5,6)",
            "(1,3,2)(4,5,6)",
            "(1,2,3)(4,6,5)",
            "(1,3,2)(4,6,5)",
        ];
        let everyone = crate::perm::all_of_degree(6);
        let alphas: Vec<_> = everyone
            .iter()
            .filter(|p| p.cycle_type() == Partition::rectangle(2, 3))
            .collect();
        assert_eq!(alphas.len(), 15);
        let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
        for b in betas {
            let beta = Permutation::from_cycle_string(6, b).unwrap();
            for a in &alphas {
                *counts
                    .entry(compose(&beta, a).unwrap().cycle_type())
                    .or_insert(0) += 1;
            }
        }
        let total = 60u64;
        for (mu, c) in counts {
            let grouped = num_rational::BigRational::new(c.into(), total.into());
            assert_eq!(grouped, exact.probability(&mu), "type {mu}");
        }
    }

    #[test]
    fn face_count_parity_follows_genus_integrality() {
        let mut rng = derive_stream(4, 4);
        for _ in 0..200 {
            let m = sample_oriented_graph(10, 3, &mut rng).unwrap();
            let spec = faces(&m).unwrap();
            // l ≡ n/2 (mod 2) for k=3
            assert_eq!(spec.face_count % 2, (10 / 2) % 2);
        }
    }

    #[test]
    fn edge_list_round_trip_shape() {
        let m = cube_fixture();
        let edges = m.edges();
        assert_eq!(edges.len(), 12);
        for (u, v, hu, hv) in edges {
            assert_eq!(m.vertex_of(hu), u);
            assert_eq!(m.vertex_of(hv), v);
            assert_eq!(m.alpha().apply(hu), hv);
        }
        let mut buf = Vec::new();
        m.write_edge_list(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 13);
        assert!(text.starts_with("# n=8 k=3"));
    }
}
