//! Standard graph families and seeded random graphs.

use super::Graph;
use crate::error::{Error, Result};
use rand::Rng;

/// `C_k` on `0..k` with `i ~ i+1 mod k`.
pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::param(format!("cycle length must be at least 3, got {k}")));
    }
    Ok(Graph::build(k, (0..k).map(|i| (i, (i + 1) % k))))
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    Graph::build(n, (1..n).map(|i| (i - 1, i)))
}

/// `K_{1,d}` with centre `0`.
pub fn star(d: usize) -> Graph {
    Graph::build(d + 1, (1..=d).map(|i| (0, i)))
}

pub fn complete(n: usize) -> Graph {
    Graph::build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::build(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::build(10, outer.chain(spokes).chain(inner))
}

/// `k x k` rook's graph; vertex `r*k + c`.
pub fn rook(k: usize) -> Graph {
    let mut edges = Vec::new();
    for a in 0..k * k {
        for b in a + 1..k * k {
            if a / k == b / k || a % k == b % k {
                edges.push((a, b));
            }
        }
    }
    Graph::build(k * k, edges)
}

/// Cayley graph on `Z_4 x Z_4` with connection set `±(1,0), ±(0,1), ±(1,1)`.
pub fn shrikhande() -> Graph {
    let id = |x: i32, y: i32| (x.rem_euclid(4) * 4 + y.rem_euclid(4)) as usize;
    let mut edges = Vec::new();
    for x in 0..4 {
        for y in 0..4 {
            for (dx, dy) in [(1, 0), (0, 1), (1, 1)] {
                edges.push((id(x, y), id(x + dx, y + dy)));
            }
        }
    }
    Graph::build(16, edges)
}

/// `G(n, p)`.
pub fn random_gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, edges)
}

/// Uniform random labelled tree (random attachment) plus `G(n, p)` extra edges.
pub fn random_connected(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, edges)
}
