//! Parity-twisted lifts of a graph.
//!
//! For a loopless graph `G` and a vertex set `U`, the lift `G_U` has a vertex
//! `(v, S)` for every set `S` of edges at `v` whose size is odd exactly when
//! `v ∈ U`. Two vertices `(v, S)` and `(u, T)` are adjacent when `uv` is an
//! edge of `G` and either both or neither of `S`, `T` contain it.

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::{is_connected, Graph, GraphData, VertexMap};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Largest vertex count any lift may have.
pub const LIFT_GUARD: usize = 1 << 14;

/// Vertex `(head, tail)` of a lift; `tail` is a set of edge indices of the base graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GuVertex {
    pub head: usize,
    pub tail: BitSet,
}

/// A lift together with its vertex labels and the projection onto the base graph.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<GuVertex>,
    pub projection: VertexMap,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct LabelData {
    pub head: usize,
    pub tail: Vec<usize>,
}

/// JSON description of a lift.
#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct LabeledGraphData {
    pub vertices: Vec<LabelData>,
    pub graph: GraphData,
    pub projection: VertexMap,
}

impl LabeledGraph {
    pub fn to_data(&self) -> LabeledGraphData {
        LabeledGraphData {
            vertices: self
                .labels
                .iter()
                .map(|l| LabelData {
                    head: l.head,
                    tail: l.tail.to_vec(),
                })
                .collect(),
            graph: self.graph.to_data(),
            projection: self.projection.clone(),
        }
    }

    /// Vertex id of `(head, tail)`.
    pub fn index_of(&self, head: usize, tail: &BitSet) -> Option<usize> {
        self.labels
            .binary_search_by(|l| (l.head, &l.tail).cmp(&(head, tail)))
            .ok()
    }
}

fn check_base(g: &Graph, u: &[usize]) -> Result<BitSet> {
    if g.has_loops() {
        return Err(Error::input("the base graph must be loopless"));
    }
    let mut set = BitSet::new(g.n());
    for &x in u {
        if x >= g.n() {
            return Err(Error::input(format!("vertex {x} of U out of range")));
        }
        set.insert(x);
    }
    let size: usize = (0..g.n())
        .map(|v| {
            let d = g.degree(v);
            if d == 0 {
                1
            } else {
                1usize.checked_shl(d as u32 - 1).unwrap_or(usize::MAX)
            }
        })
        .fold(0usize, |a, b| a.saturating_add(b));
    Error::guard("lift order", LIFT_GUARD, size)?;
    Ok(set)
}

// Vertex labels of the lift in (head, tail-mask) order: bit i of the mask is
// the i-th smallest edge index at the head.
fn lift_labels(g: &Graph, u: &BitSet) -> Vec<GuVertex> {
    let mut labels = Vec::new();
    for v in 0..g.n() {
        let inc = g.incident_edges(v);
        let parity = u32::from(u.contains(v));
        let mut tails: Vec<BitSet> = (0u64..1 << inc.len())
            .filter(|m| m.count_ones() % 2 == parity)
            .map(|m| {
                BitSet::from_indices(
                    g.m(),
                    inc.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e),
                )
            })
            .collect();
        tails.sort();
        labels.extend(tails.into_iter().map(|tail| GuVertex { head: v, tail }));
    }
    labels
}

fn lift(g: &Graph, u: &BitSet, tilde: bool) -> LabeledGraph {
    let labels = lift_labels(g, u);
    let mut fibers = vec![Vec::new(); g.n()];
    for (i, l) in labels.iter().enumerate() {
        fibers[l.head].push(i);
    }
    let mut edges = Vec::new();
    for v in 0..g.n() {
        for w in v..g.n() {
            let base_edge = g.edge_index(v, w);
            for &a in &fibers[v] {
                for &b in &fibers[w] {
                    if a >= b {
                        continue;
                    }
                    let adj = match base_edge {
                        Some(e) => labels[a].tail.contains(e) == labels[b].tail.contains(e),
                        None => tilde,
                    };
                    if adj {
                        edges.push((a, b));
                    }
                }
            }
        }
    }
    let n = labels.len();
    let loops: Vec<usize> = if tilde { (0..n).collect() } else { Vec::new() };
    let graph = Graph::with_loops(n, edges, loops).expect("lift edges are valid");
    let projection = VertexMap(labels.iter().map(|l| l.head).collect());
    LabeledGraph {
        graph,
        labels,
        projection,
    }
}

/// `G_U`. Vertices with no edges contribute a single vertex `(v, ∅)` when
/// `v ∉ U` and nothing when `v ∈ U`.
pub fn build_gu(g: &Graph, u: &[usize]) -> Result<LabeledGraph> {
    let set = check_base(g, u)?;
    Ok(lift(g, &set, false))
}

/// The pair `(G_∅, G_{0})` for a connected graph.
pub fn build_g01(g: &Graph) -> Result<(LabeledGraph, LabeledGraph)> {
    if g.n() == 0 || !is_connected(g) {
        return Err(Error::input("the base graph must be nonempty and connected"));
    }
    Ok((build_gu(g, &[])?, build_gu(g, &[0])?))
}

/// The looped lift: same vertices as `G_U`; vertices over equal or
/// non-adjacent heads are always adjacent, and every vertex has a loop.
pub fn build_tilde_gu(g: &Graph, u: &[usize]) -> Result<LabeledGraph> {
    let set = check_base(g, u)?;
    Ok(lift(g, &set, true))
}

/// Isomorphism `G_U -> G_{U △ {u, v}}` for an edge `uv`, toggling that edge
/// in the tails over `u` and `v`.
#[derive(Clone, Debug)]
pub struct ShiftIsomorphism {
    pub target_u: Vec<usize>,
    pub map: Vec<usize>,
}

pub fn shift_isomorphism(g: &Graph, u_set: &[usize], u: usize, v: usize) -> Result<ShiftIsomorphism> {
    let e = g
        .edge_index(u, v)
        .ok_or_else(|| Error::input(format!("({u},{v}) is not an edge of the base graph")))?;
    let src = build_gu(g, u_set)?;
    let mut target = BitSet::from_indices(g.n(), u_set.iter().copied());
    target.toggle(u);
    target.toggle(v);
    let target_u = target.to_vec();
    let dst = build_gu(g, &target_u)?;
    let index: HashMap<&GuVertex, usize> = dst.labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let map = src
        .labels
        .iter()
        .map(|l| {
            let mut t = l.clone();
            if l.head == u || l.head == v {
                t.tail.toggle(e);
            }
            index[&t]
        })
        .collect();
    Ok(ShiftIsomorphism { target_u, map })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum StarLabel {
    Leaf(usize),
    Subset(Vec<usize>),
}

/// Bipartite graph on `[d]` and the subsets of `[d]` of size `≡ i (mod 2)`,
/// with `j ~ S` iff `j ∉ S`. Leaves come first, then subsets by bitmask.
pub fn build_star_simplified(d: usize, i: usize) -> Result<(Graph, Vec<StarLabel>)> {
    Error::guard("star lift degree", 20, d)?;
    if i > 1 {
        return Err(Error::param(format!("parity must be 0 or 1, got {i}")));
    }
    let mut labels: Vec<StarLabel> = (0..d).map(StarLabel::Leaf).collect();
    let masks: Vec<u32> = (0u32..1 << d).filter(|m| m.count_ones() as usize % 2 == i).collect();
    let mut edges = Vec::new();
    for (k, &m) in masks.iter().enumerate() {
        labels.push(StarLabel::Subset((0..d).filter(|j| m >> j & 1 == 1).collect()));
        for j in 0..d {
            if m >> j & 1 == 0 {
                edges.push((j, d + k));
            }
        }
    }
    Ok((Graph::build(d + masks.len(), edges), labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    fn lift_order(g: &Graph) -> usize {
        (0..g.n()).map(|v| 1usize.max((1 << g.degree(v)) / 2)).sum()
    }

    #[test]
    fn cycles_lift_to_two_cycles_or_a_long_cycle() {
        for k in 3..=8 {
            let c = cycle(k).unwrap();
            let (g0, g1) = build_g01(&c).unwrap();
            let two = c.disjoint_union(&c);
            assert!(is_isomorphic(&g0.graph, &two).is_some());
            assert!(is_isomorphic(&g1.graph, &cycle(2 * k).unwrap()).is_some());
        }
    }

    #[test]
    fn order_and_projection() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4), (2, 3)]).unwrap();
        let l = build_gu(&g, &[2, 4]).unwrap();
        assert_eq!(l.graph.n(), lift_order(&g));
        assert!(l.graph.is_homomorphism(&g, l.projection.as_slice()));
        for w in l.labels.windows(2) {
            assert!((w[0].head, &w[0].tail) < (w[1].head, &w[1].tail));
        }
    }

    #[test]
    fn isolated_vertices() {
        let g = Graph::empty(1);
        assert_eq!(build_gu(&g, &[]).unwrap().graph.n(), 1);
        assert_eq!(build_gu(&g, &[0]).unwrap().graph.n(), 0);
    }

    #[test]
    fn rejects_bad_input() {
        let looped = Graph::with_loops(2, [(0, 1)], [0]).unwrap();
        assert!(build_gu(&looped, &[]).is_err());
        assert!(build_g01(&Graph::empty(2)).is_err());
        assert!(shift_isomorphism(&path(3), &[], 0, 2).is_err());
    }

    #[test]
    fn shift_is_an_isomorphism() {
        let g = complete(4);
        for &(u, v) in g.edges() {
            let s = shift_isomorphism(&g, &[0], u, v).unwrap();
            let src = build_gu(&g, &[0]).unwrap().graph;
            let dst = build_gu(&g, &s.target_u).unwrap().graph;
            assert_eq!(src.permute(&s.map), dst);
        }
    }

    #[test]
    fn star_variant_matches_star_lift() {
        for d in 1..=5 {
            for i in 0..2 {
                let (simple, _) = build_star_simplified(d, i).unwrap();
                let u: Vec<usize> = if i == 1 { vec![0] } else { vec![] };
                let lifted = build_gu(&star(d), &u).unwrap().graph;
                assert!(is_isomorphic(&simple, &lifted).is_some(), "d={d} i={i}");
            }
        }
    }

    #[test]
    fn tilde_lift_has_loops_and_fibre_cliques() {
        let t = build_tilde_gu(&star(2), &[0]).unwrap();
        assert!((0..t.graph.n()).all(|v| t.graph.has_loop(v)));
        let fibres = t.projection.fibers(3);
        for f in fibres {
            for &a in &f {
                for &b in &f {
                    assert!(t.graph.adjacent(a, b));
                }
            }
        }
    }
}
