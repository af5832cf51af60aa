//! Shared test oracles and helpers. Compiled only for tests.
//!
//! Everything here is deliberately *independent* of the production code
//! paths it checks: brute-force searches and naive definitions, written
//! once and reused by the per-module test suites.

use crate::tournament::{mask_to_vertices, Tournament, Vertex};

/// Oracle: exhaustive DFS for a directed cycle of *any* length within
/// `mask`. Independent of the score-sequence criterion.
pub(crate) fn has_dicycle_brute(t: &Tournament, mask: u64) -> bool {
    let verts = mask_to_vertices(mask);
    // colour: 0 = unvisited, 1 = on stack, 2 = done
    fn dfs(t: &Tournament, verts: &[Vertex], colour: &mut [u8], i: usize) -> bool {
        colour[i] = 1;
        for (j, &w) in verts.iter().enumerate() {
            if j != i && t.beats(verts[i], w) {
                if colour[j] == 1 {
                    return true;
                }
                if colour[j] == 0 && dfs(t, verts, colour, j) {
                    return true;
                }
            }
        }
        colour[i] = 2;
        false
    }
    let mut colour = vec![0u8; verts.len()];
    for i in 0..verts.len() {
        if colour[i] == 0 && dfs(t, &verts, &mut colour, i) {
            return true;
        }
    }
    false
}

/// Oracle: `mask` is an equivalent set iff every outside vertex relates
/// uniformly to all of it.
pub(crate) fn is_equivalent_set(t: &Tournament, mask: u64) -> bool {
    let inside = mask_to_vertices(mask);
    for q in 1..=t.order() as Vertex {
        if mask >> (q - 1) & 1 == 1 {
            continue;
        }
        let beats_all = inside.iter().all(|&p| t.beats(q, p));
        let loses_all = inside.iter().all(|&p| t.beats(p, q));
        if !beats_all && !loses_all {
            return false;
        }
    }
    true
}

/// Uniformly random tournament on `n` vertices from a fixed seed.
pub(crate) fn random_tournament(n: usize, seed: u64) -> Tournament {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    Tournament::from_orientation(n, |_, _| rng.gen_bool(0.5)).unwrap()
}

/// Compact face literal for golden tables: each ASCII digit is a vertex,
/// so `fs("679")` is the set {6, 7, 9}. Only usable while labels stay
/// single-digit, which covers every worked example.
pub(crate) fn fs(digits: &str) -> u32 {
    let mut m = 0u32;
    for c in digits.chars() {
        let v = c.to_digit(10).expect("face literal digit");
        assert!((1..=9).contains(&v));
        m |= 1 << (v - 1);
    }
    m
}

/// Batch form of [`fs`]: `fset(&["67", "167"])` etc.
pub(crate) fn fset(faces: &[&str]) -> Vec<u32> {
    faces.iter().map(|s| fs(s)).collect()
}

/// Oracle: reduced Betti numbers by plain Gaussian elimination over exact
/// rationals — separate arithmetic, separate pivoting, separate matrix
/// assembly from the production fraction-free path.
pub(crate) fn naive_betti(family: &crate::complex::FaceFamily) -> Vec<i64> {
    use num_rational::BigRational;
    use num_traits::Zero;

    // faces grouped by size, any stable order
    let mut levels: Vec<Vec<u32>> = Vec::new();
    let mut members: Vec<u32> = family.iter().collect();
    members.sort_unstable();
    for f in members {
        let s = f.count_ones() as usize;
        while levels.len() <= s {
            levels.push(Vec::new());
        }
        levels[s].push(f);
    }

    // boundary of `upper` faces expressed over `lower` via vertex deletion
    let matrix = |lower: &[u32], upper: &[u32]| -> Vec<Vec<BigRational>> {
        let zero = BigRational::zero();
        let mut m = vec![vec![zero; upper.len()]; lower.len()];
        for (j, &f) in upper.iter().enumerate() {
            let verts: Vec<u32> = (0..32).filter(|b| f >> b & 1 == 1).collect();
            for (pos, &b) in verts.iter().enumerate() {
                let facet = f & !(1 << b);
                let i = lower.iter().position(|&g| g == facet).expect("closed");
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                m[i][j] = BigRational::from_integer(sign.into());
            }
        }
        m
    };

    let rank = |mut m: Vec<Vec<BigRational>>| -> usize {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][c].clone();
            for j in c..cols {
                m[rank][j] = &m[rank][j] / &pivot;
            }
            for i in 0..rows {
                if i != rank && !m[i][c].is_zero() {
                    let factor = m[i][c].clone();
                    for j in c..cols {
                        m[i][j] = &m[i][j] - &factor * &m[rank][j];
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    };

    let dims = levels.len().saturating_sub(1);
    let mut ranks = Vec::with_capacity(dims);
    for d in 0..dims {
        ranks.push(rank(matrix(&levels[d], &levels[d + 1])));
    }
    (0..dims)
        .map(|i| {
            let above = if i + 1 < dims { ranks[i + 1] } else { 0 };
            levels[i + 1].len() as i64 - ranks[i] as i64 - above as i64
        })
        .collect()
}
