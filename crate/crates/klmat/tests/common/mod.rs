//! Helpers shared by the integration suites.
#![allow(dead_code)] // each test target uses a subset of these

use klmat::matroid::{FlatLattice, MatroidSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic stream of loopless matrix matroids over GF(2) and GF(3)
/// with at most `max_cols` elements.
pub fn random_matrix_specs(seed: u64, count: usize, max_cols: usize) -> Vec<MatroidSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p: u64 = if rng.random_bool(0.5) { 2 } else { 3 };
        let rows = rng.random_range(1..=4usize);
        let cols = rng.random_range(1..=max_cols);
        let mut entries: Vec<u64> = (0..rows * cols).map(|_| rng.random_range(0..p)).collect();
        // keep every column nonzero so the matroid is loopless
        for c in 0..cols {
            if (0..rows).all(|r| entries[r * cols + c] == 0) {
                let r = rng.random_range(0..rows);
                entries[r * cols + c] = rng.random_range(1..p);
            }
        }
        out.push(MatroidSpec::Matrix {
            p,
            rows,
            cols,
            entries,
        });
    }
    out
}

/// Exact isomorphism test for ranked posets, by color refinement plus
/// backtracking. Small lattices only; used as a test oracle.
pub fn poset_isomorphic(a: &FlatLattice, b: &FlatLattice) -> bool {
    let (n, ranks_a, leq_a) = poset_tables(a);
    let (m, ranks_b, leq_b) = poset_tables(b);
    if n != m {
        return false;
    }
    let colors_a = refine_colors(&ranks_a, &leq_a);
    let colors_b = refine_colors(&ranks_b, &leq_b);
    let mut sorted_a = colors_a.clone();
    let mut sorted_b = colors_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return false;
    }
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    backtrack(0, &mut mapping, &mut used, &colors_a, &colors_b, &leq_a, &leq_b)
}

fn poset_tables(lat: &FlatLattice) -> (usize, Vec<usize>, Vec<Vec<bool>>) {
    let flats: Vec<_> = lat.flats().collect();
    let n = flats.len();
    let ranks = flats.iter().map(|f| lat.rank_of(f).unwrap()).collect();
    let leq = flats
        .iter()
        .map(|f| flats.iter().map(|g| lat.leq(f, g)).collect())
        .collect();
    (n, ranks, leq)
}

fn refine_colors(ranks: &[usize], leq: &[Vec<bool>]) -> Vec<u64> {
    let n = ranks.len();
    let mut colors: Vec<u64> = ranks.iter().map(|&r| r as u64).collect();
    for _ in 0..n.min(8) {
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let mut ups: Vec<u64> = (0..n).filter(|&j| leq[i][j]).map(|j| colors[j]).collect();
            let mut downs: Vec<u64> = (0..n).filter(|&j| leq[j][i]).map(|j| colors[j]).collect();
            ups.sort_unstable();
            downs.sort_unstable();
            let mut hasher = std::collections::hash_map::DefaultHasher::new();
            use std::hash::{Hash, Hasher};
            (colors[i], &ups, &downs).hash(&mut hasher);
            next.push(hasher.finish());
        }
        if next == colors {
            break;
        }
        colors = next;
    }
    colors
}

fn backtrack(
    i: usize,
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
    colors_a: &[u64],
    colors_b: &[u64],
    leq_a: &[Vec<bool>],
    leq_b: &[Vec<bool>],
) -> bool {
    let n = colors_a.len();
    if i == n {
        return true;
    }
    for cand in 0..n {
        if used[cand] || colors_b[cand] != colors_a[i] {
            continue;
        }
        let consistent = (0..i).all(|j| {
            leq_a[i][j] == leq_b[cand][mapping[j]] && leq_a[j][i] == leq_b[mapping[j]][cand]
        });
        if !consistent {
            continue;
        }
        mapping[i] = cand;
        used[cand] = true;
        if backtrack(i + 1, mapping, used, colors_a, colors_b, leq_a, leq_b) {
            return true;
        }
        used[cand] = false;
        mapping[i] = usize::MAX;
    }
    false
}
