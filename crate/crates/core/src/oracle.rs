//! Brute-force ground truth for small instances.
//!
//! Nothing here calls into `matching`, `lift` or `exact_rank`: the matching
//! search, the assignment enumeration, the weighted assignment and the GF(2)
//! elimination are all written out again so that agreement means something.

use crate::error::{Error, Result};
use crate::matching::WeightedBipartiteGraph;
use crate::pattern::{LaurentPattern, ToeplitzPattern};

pub const MAX_BRUTE_EDGES: usize = 20;
pub const MAX_EXHAUSTIVE_PARAMS: usize = 16;

/// Maximum matching of the expanded support by plain augmenting-path search.
pub fn term_rank_direct(t: &ToeplitzPattern) -> usize {
    let mut adj = vec![Vec::new(); t.total_rows()];
    for &(row, col) in t.nonzeros() {
        adj[t.flat_row(row)].push(t.flat_col(col));
    }
    let mut owner: Vec<Option<usize>> = vec![None; t.total_cols()];
    let mut size = 0;
    for r in 0..adj.len() {
        let mut seen = vec![false; owner.len()];
        if try_kuhn(r, &adj, &mut owner, &mut seen) {
            size += 1;
        }
    }
    size
}

fn try_kuhn(r: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &c in &adj[r] {
        if seen[c] {
            continue;
        }
        seen[c] = true;
        if owner[c].map_or(true, |r2| try_kuhn(r2, adj, owner, seen)) {
            owner[c] = Some(r);
            return true;
        }
    }
    false
}

/// Best total weight over all matchings with exactly `mu` edges, or `None`
/// when there is no such matching.
pub fn assignment_brute(g: &WeightedBipartiteGraph, mu: usize) -> Result<Option<i64>> {
    Ok(assignment_brute_all(g)?.get(mu).copied())
}

/// `best[μ]` for every cardinality that some matching attains, found by
/// enumerating every matching of `g` edge by edge.
pub fn assignment_brute_all(g: &WeightedBipartiteGraph) -> Result<Vec<i64>> {
    let edges: Vec<_> = g.edges().collect();
    if edges.len() > MAX_BRUTE_EDGES {
        return Err(Error::GuardExceeded {
            what: "edge count",
            actual: edges.len(),
            limit: MAX_BRUTE_EDGES,
        });
    }
    let mut best = vec![0i64];
    let mut row_used = vec![false; g.nrows()];
    let mut col_used = vec![false; g.ncols()];
    enumerate(&edges, 0, 0, 0, &mut row_used, &mut col_used, &mut best);
    Ok(best)
}

fn enumerate(
    edges: &[((usize, usize), i64)],
    from: usize,
    size: usize,
    total: i64,
    row_used: &mut [bool],
    col_used: &mut [bool],
    best: &mut Vec<i64>,
) {
    if best.len() <= size {
        best.push(total);
    } else {
        best[size] = best[size].max(total);
    }
    for e in from..edges.len() {
        let ((r, c), w) = edges[e];
        if row_used[r] || col_used[c] {
            continue;
        }
        row_used[r] = true;
        col_used[c] = true;
        enumerate(edges, e + 1, size + 1, total + w, row_used, col_used, best);
        row_used[r] = false;
        col_used[c] = false;
    }
}

/// `max_{p ∈ GF(2)^q} rk T_k(H)(p)` by sweeping every 0/1 assignment.
pub fn max_rank_exhaustive_gf2(h: &LaurentPattern, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::ZeroBlocks);
    }
    let (n, m) = (h.nrows(), h.ncols());
    // one entry per parameter: every flat position it is copied to
    let mut params: Vec<Vec<(usize, usize)>> = Vec::new();
    for (d, support) in h.coefficients() {
        if d >= k {
            continue;
        }
        for &(r, c) in support.nonzeros() {
            let cells = (1..=k)
                .flat_map(|i| (1..=k).map(move |j| (i, j)))
                .filter(|&(i, j)| i >= j && i - j == d)
                .map(|(i, j)| ((i - 1) * n + r, (j - 1) * m + c))
                .collect();
            params.push(cells);
        }
    }
    if params.len() > MAX_EXHAUSTIVE_PARAMS {
        return Err(Error::GuardExceeded {
            what: "parameter count q",
            actual: params.len(),
            limit: MAX_EXHAUSTIVE_PARAMS,
        });
    }
    let words = (k * m).div_ceil(64).max(1);
    let full = (k * n).min(k * m);
    let mut best = 0;
    for assignment in 0u32..(1 << params.len()) {
        let mut rows = vec![vec![0u64; words]; k * n];
        for (b, cells) in params.iter().enumerate() {
            if assignment >> b & 1 == 1 {
                for &(i, j) in cells {
                    rows[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        best = best.max(gf2_rank(rows, k * m));
        if best == full {
            break;
        }
    }
    Ok(best)
}

fn gf2_rank(mut rows: Vec<Vec<u64>>, ncols: usize) -> usize {
    let mut rank = 0;
    for c in 0..ncols {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] & bit != 0 {
                row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

/// Maximum weight matching value under weights `max(k + w, 0)`, by the
/// O(n^3) Hungarian method on a square zero-padded cost matrix.
pub fn term_rank_closed_form(g: &WeightedBipartiteGraph, k: usize) -> i64 {
    let size = g.nrows().max(g.ncols());
    if size == 0 {
        return 0;
    }
    let mut cost = vec![vec![0i64; size]; size];
    for ((r, c), w) in g.edges() {
        cost[r][c] = -(k as i64 + w).max(0);
    }
    -hungarian_min_cost(&cost)
}

fn hungarian_min_cost(a: &[Vec<i64>]) -> i64 {
    // 1-based potentials/arrays, column 0 is the virtual start
    let n = a.len();
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n).map(|j| a[p[j] - 1][j - 1]).sum()
}
