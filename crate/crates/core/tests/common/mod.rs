#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use toeprank::{LaurentPattern, WeightedBipartiteGraph};

pub fn ex_a() -> LaurentPattern {
    LaurentPattern::from_positions(2, 2, [(0, vec![(0, 0)]), (1, vec![(0, 1), (1, 0)])]).unwrap()
}

pub fn ex_b() -> LaurentPattern {
    LaurentPattern::from_positions(
        2,
        2,
        [(0, vec![(0, 0), (0, 1), (1, 0), (1, 1)]), (1, vec![(0, 0), (1, 1)])],
    )
    .unwrap()
}

/// Pattern with each entry of each coefficient `0..=max_index` present with
/// probability `density`.
pub fn random_pattern(
    rng: &mut ChaCha8Rng,
    nrows: usize,
    ncols: usize,
    max_index: usize,
    density: f64,
) -> LaurentPattern {
    let coeffs: Vec<(usize, Vec<(usize, usize)>)> = (0..=max_index)
        .map(|i| {
            let nz = (0..nrows)
                .flat_map(|r| (0..ncols).map(move |c| (r, c)))
                .filter(|_| rng.gen_bool(density))
                .collect();
            (i, nz)
        })
        .collect();
    LaurentPattern::from_positions(nrows, ncols, coeffs).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, max_side: usize, min_weight: i64) -> WeightedBipartiteGraph {
    let n = rng.gen_range(1..=max_side);
    let m = rng.gen_range(1..=max_side);
    let p = rng.gen_range(0.05..0.5);
    let mut edges = Vec::new();
    for e in (0..n).flat_map(|r| (0..m).map(move |c| (r, c))) {
        if rng.gen_bool(p) {
            edges.push((e, rng.gen_range(min_weight..=0)));
        }
    }
    WeightedBipartiteGraph::new(n, m, edges).unwrap()
}

/// Pattern on `2 x 2` with `H_0`, `H_1` given as 4-bit masks.
pub fn two_by_two(h0: u8, h1: u8) -> LaurentPattern {
    let bits = |mask: u8| -> Vec<(usize, usize)> {
        (0..4).filter(|b| mask >> b & 1 == 1).map(|b| (b / 2, b % 2)).collect()
    };
    LaurentPattern::from_positions(2, 2, [(0, bits(h0)), (1, bits(h1))]).unwrap()
}
