//! Short cycle counts in the underlying multigraph: loops (length 1),
//! parallel-edge pairs (length 2), and vertex-disjoint cycles of length ≥ 3,
//! with parallel edges counted as distinct circuits.

use crate::error::{Error, Result};
use crate::surface::OrientedGraphModel;

/// counts[i−1] = number of cycles of length i, for i = 1..=max_len.
pub fn short_cycle_counts(model: &OrientedGraphModel, max_len: usize) -> Result<Vec<u64>> {
    if max_len == 0 || max_len > 12 {
        return Err(Error::InvalidParameter(format!(
            "max_len must be in 1..=12, got {max_len}"
        )));
    }
    let n = model.vertices();
    // multiplicity adjacency: loops kept separately
    let mut mult = vec![std::collections::HashMap::<u32, u64>::new(); n];
    let mut loops = vec![0u64; n];
    for (u, v, _, _) in model.edges() {
        if u == v {
            loops[u as usize] += 1;
        } else {
            *mult[u as usize].entry(v).or_insert(0) += 1;
            *mult[v as usize].entry(u).or_insert(0) += 1;
        }
    }
    let mut counts = vec![0u64; max_len];
    counts[0] = loops.iter().sum();
    if max_len >= 2 {
        counts[1] = mult
            .iter()
            .enumerate()
            .map(|(u, adj)| {
                adj.iter()
                    .filter(|&(&v, _)| (u as u32) < v)
                    .map(|(_, &m)| m * (m - 1) / 2)
                    .sum::<u64>()
            })
            .sum();
    }
    if max_len >= 3 {
        // DFS over ascending-start simple paths; each cycle found once with
        // start = min vertex and direction fixed by second < last.
        let mut path: Vec<u32> = Vec::with_capacity(max_len);
        let mut on_path = vec![false; n];
        for s in 0..n as u32 {
            path.push(s);
            on_path[s as usize] = true;
            dfs(s, s, 1, &mut path, &mut on_path, &mult, max_len, &mut counts);
            on_path[s as usize] = false;
            path.pop();
        }
    }
    Ok(counts)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    s: u32,
    at: u32,
    weight: u64,
    path: &mut Vec<u32>,
    on_path: &mut [bool],
    mult: &[std::collections::HashMap<u32, u64>],
    max_len: usize,
    counts: &mut [u64],
) {
    let depth = path.len();
    for (&next, &m) in &mult[at as usize] {
        if next == s && depth >= 3 {
            // close the cycle; direction dedup: second vertex < last vertex
            if path[1] < path[depth - 1] {
                counts[depth - 1] += weight * m;
            }
            continue;
        }
        if depth < max_len && next > s && !on_path[next as usize] {
            path.push(next);
            on_path[next as usize] = true;
            dfs(s, next, weight * m, path, on_path, mult, max_len, counts);
            on_path[next as usize] = false;
            path.pop();
        }
    }
}
