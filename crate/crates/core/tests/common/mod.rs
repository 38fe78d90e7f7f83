//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use qxcompile::CouplingMap;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Column counts of the boolean transitive closure (Floyd–Warshall),
/// diagonal excluded.
pub fn closure_counts(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in edges {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                let via = reach[k].clone();
                for (dst, r) in reach[i].iter_mut().zip(via) {
                    *dst |= r;
                }
            }
        }
    }
    (0..n)
        .map(|x| (0..n).filter(|&y| y != x && reach[y][x]).count())
        .collect()
}

pub fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Exact failure probability of the postselected majority-vote learner for a
/// nonzero `a`: K ~ Bin(N, 1/2) samples survive postselection, C ~ Bin(K,
/// 1 - eta) of them equal `a`, and the vote fails iff C <= K/2.
pub fn exact_perr(eta: f64, queries: usize) -> f64 {
    let mut total = 0.0;
    for k in 0..=queries {
        let pk = binomial(queries, k) / 2f64.powi(queries as i32);
        for c in 0..=k {
            if 2 * c <= k {
                total +=
                    pk * binomial(k, c) * (1.0 - eta).powi(c as i32) * eta.powi((k - c) as i32);
            }
        }
    }
    total
}

/// Weakly connected digraph: a random spanning tree with random edge
/// directions, plus extra random edges.
pub fn random_connected_map(rng: &mut ChaCha8Rng, n: usize) -> CouplingMap {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let a = order[i];
        let b = order[rng.gen_range(0..i)];
        edges.push(if rng.gen_bool(0.5) { (a, b) } else { (b, a) });
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b && !edges.contains(&(a, b)) {
            edges.push((a, b));
        }
    }
    CouplingMap::new(format!("random{n}"), n, edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn line_map(n: usize) -> CouplingMap {
    CouplingMap::new(format!("line{n}"), n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
}
