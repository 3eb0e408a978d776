//! Finite simple graphs with optional loops, stored as bit-packed adjacency rows.
//!
//! Vertices are `0..n`. Non-loop edges are kept as pairs `(u, v)` with `u < v`,
//! sorted lexicographically; the position of a pair in that list is its edge
//! index. Loops live in a separate set and carry no edge index.

mod enumerate;
mod format;
mod generate;
mod iso;
mod minor;
mod structure;

pub use enumerate::{enumerate_graphs, enumerate_graphs_with_loops, EnumerateOptions, GraphStream};
pub use format::{parse_edge_list, parse_graph6, write_edge_list, write_graph6};
pub use generate::*;
pub use iso::{canonical_form, find_embedding, is_isomorphic, Canon, CanonicalForm};
pub use minor::{has_minor, has_minor_with, is_minor_model, MinorGuard};
pub use structure::*;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
    loops: BitSet,
    edges: Vec<(usize, usize)>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?}", self.n, self.edges)?;
        if !self.loops.is_empty() {
            write!(f, ", loops={:?}", self.loops)?;
        }
        write!(f, ")")
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![BitSet::new(n); n],
            loops: BitSet::new(n),
            edges: Vec::new(),
        }
    }

    /// Builds a loopless graph. Duplicate pairs collapse; a pair `(v, v)` is rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        Graph::with_loops(n, edges, [])
    }

    pub fn with_loops(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        loops: impl IntoIterator<Item = usize>,
    ) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::input(format!("edge ({u},{v}) is a loop; pass loops separately")));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        for v in loops {
            if v >= n {
                return Err(Error::input(format!("loop at {v} out of range for n={n}")));
            }
            g.loops.insert(v);
            g.adj[v].insert(v);
        }
        g.rebuild_edges();
        Ok(g)
    }

    /// Internal constructor for edge lists already known to be valid.
    pub(crate) fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            debug_assert!(u != v && u < n && v < n);
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        g.rebuild_edges();
        g
    }

    fn rebuild_edges(&mut self) {
        self.edges.clear();
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    self.edges.push((u, v));
                }
            }
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of non-loop edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Non-loop edges in edge-index order.
    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn loops(&self) -> &BitSet {
        &self.loops
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        self.loops.contains(v)
    }

    pub fn has_loops(&self) -> bool {
        !self.loops.is_empty()
    }

    /// Adjacency; `adjacent(v, v)` reports a loop.
    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Neighbourhood row. Contains `v` itself iff `v` carries a loop.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    /// Neighbours other than `v` itself, ascending.
    pub fn neighbors_iter(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().filter(move |&u| u != v)
    }

    /// Number of non-loop neighbours.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count() - usize::from(self.has_loop(v))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Index of the edge `{u, v}` in `edges()`.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        if u == v {
            return None;
        }
        self.edges.binary_search(&key).ok()
    }

    /// Edge indices of the non-loop edges at `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .neighbors_iter(v)
            .map(|u| self.edge_index(u, v).expect("adjacent pair has an index"))
            .collect();
        out.sort_unstable();
        out
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        Graph::with_loops(
            self.n + other.n,
            self.edges
                .iter()
                .copied()
                .chain(other.edges.iter().map(|&(u, v)| (u + off, v + off))),
            self.loops.iter().chain(other.loops.iter().map(|v| v + off)),
        )
        .expect("union of valid graphs")
    }

    /// Subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        let loops = vertices
            .iter()
            .enumerate()
            .filter(|(_, &v)| self.has_loop(v))
            .map(|(i, _)| i);
        Graph::with_loops(vertices.len(), edges, loops).expect("induced subgraph")
    }

    /// Subgraph on `vertices` (kept in the given order) with the listed edge indices.
    /// Loops are dropped. Errors if an edge leaves the vertex set.
    pub fn subgraph(&self, vertices: &[usize], edge_ids: &[usize]) -> Result<Graph> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(Error::input(format!("vertex {v} out of range")));
            }
            pos[v] = i;
        }
        let mut edges = Vec::with_capacity(edge_ids.len());
        for &e in edge_ids {
            let &(u, v) = self
                .edges
                .get(e)
                .ok_or_else(|| Error::input(format!("edge index {e} out of range")))?;
            if pos[u] == usize::MAX || pos[v] == usize::MAX {
                return Err(Error::input(format!("edge ({u},{v}) leaves the vertex set")));
            }
            edges.push((pos[u], pos[v]));
        }
        Ok(Graph::build(vertices.len(), edges))
    }

    /// Spanning subgraph keeping only the listed edge indices (and no loops).
    pub fn spanning_subgraph(&self, edge_ids: &[usize]) -> Result<Graph> {
        let all: Vec<usize> = (0..self.n).collect();
        self.subgraph(&all, edge_ids)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::with_loops(
            self.n,
            self.edges.iter().map(|&(u, v)| (perm[u], perm[v])),
            self.loops.iter().map(|v| perm[v]),
        )
        .expect("permutation of a valid graph")
    }

    pub fn without_loops(&self) -> Graph {
        Graph::build(self.n, self.edges.iter().copied())
    }

    pub fn with_all_loops(&self) -> Graph {
        Graph::with_loops(self.n, self.edges.iter().copied(), 0..self.n).expect("valid")
    }

    pub fn remove_edges(&self, edge_ids: &[usize]) -> Graph {
        let drop = BitSet::from_indices(self.m(), edge_ids.iter().copied());
        Graph::with_loops(
            self.n,
            self.edges
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(*i))
                .map(|(_, &e)| e),
            self.loops.iter(),
        )
        .expect("valid")
    }

    pub fn delete_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Contracts the edge `{u, v}`. The merged vertex takes the smaller label and
    /// labels above the larger one shift down by one. Returns the new graph and
    /// the old-to-new vertex map. No loop is created by the contraction itself.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<(Graph, Vec<usize>)> {
        if u == v || !self.adjacent(u, v) {
            return Err(Error::input(format!("({u},{v}) is not an edge")));
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let map: Vec<usize> = (0..self.n)
            .map(|x| match x.cmp(&gone) {
                std::cmp::Ordering::Less => x,
                std::cmp::Ordering::Equal => keep,
                std::cmp::Ordering::Greater => x - 1,
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (map[a], map[b]))
            .filter(|(a, b)| a != b)
            .collect::<Vec<_>>();
        let loops = self.loops.iter().map(|x| map[x]);
        let g = Graph::with_loops(self.n - 1, edges, loops).expect("contraction");
        Ok((g, map))
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adjacent(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::build(self.n, edges)
    }

    /// Whether `map` sends every edge and loop of `self` onto an edge or loop of `target`.
    pub fn is_homomorphism(&self, target: &Graph, map: &[usize]) -> bool {
        map.len() == self.n
            && map.iter().all(|&x| x < target.n)
            && self.edges.iter().all(|&(a, b)| target.adjacent(map[a], map[b]))
            && self.loops.iter().all(|a| target.has_loop(map[a]))
    }

    /// Serializable edge-list form that keeps loops.
    pub fn to_data(&self) -> GraphData {
        GraphData {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            loops: self.loops.to_vec(),
        }
    }

    pub fn from_data(d: &GraphData) -> Result<Graph> {
        Graph::with_loops(d.n, d.edges.iter().map(|e| (e[0], e[1])), d.loops.iter().copied())
    }
}

/// Plain JSON shape of a graph: vertex count, edge pairs and looped vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphData {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub loops: Vec<usize>,
}

/// A map `V(F) -> V(G)` stored as the image of each source vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexMap(pub Vec<usize>);

impl VertexMap {
    pub fn identity(n: usize) -> VertexMap {
        VertexMap((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Preimages of each target vertex, each ascending.
    pub fn fibers(&self, target_n: usize) -> Vec<Vec<usize>> {
        let mut f = vec![Vec::new(); target_n];
        for (a, &x) in self.0.iter().enumerate() {
            f[x].push(a);
        }
        f
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &VertexMap) -> VertexMap {
        VertexMap(self.0.iter().map(|&x| other.0[x]).collect())
    }

    /// Checks range and that every edge of `source` lands on an edge of `target`.
    pub fn check_homomorphism(&self, source: &Graph, target: &Graph) -> Result<()> {
        if self.0.len() != source.n() {
            return Err(Error::input(format!(
                "map has {} entries, source has {} vertices",
                self.0.len(),
                source.n()
            )));
        }
        if let Some(&x) = self.0.iter().find(|&&x| x >= target.n()) {
            return Err(Error::input(format!("image {x} out of range")));
        }
        if !source.is_homomorphism(target, &self.0) {
            return Err(Error::input("map is not a homomorphism"));
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for VertexMap {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_index_is_lexicographic() {
        let g = Graph::from_edges(4, [(2, 3), (0, 2), (1, 0), (1, 3)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(g.edge_index(3, 1), Some(2));
        assert_eq!(g.incident_edges(3), vec![2, 3]);
        assert_eq!(g.edge_index(0, 3), None);
    }

    #[test]
    fn loops_are_separate_from_edges() {
        let g = Graph::with_loops(3, [(0, 1)], [1]).unwrap();
        assert_eq!(g.m(), 1);
        assert!(g.adjacent(1, 1));
        assert_eq!(g.degree(1), 1);
        assert_eq!(g.edge_index(1, 1), None);
        assert!(Graph::from_edges(2, [(1, 1)]).is_err());
    }

    #[test]
    fn contraction_merges_neighbourhoods() {
        let c4 = cycle(4).unwrap();
        let (g, map) = c4.contract_edge(1, 2).unwrap();
        assert_eq!(map, vec![0, 1, 1, 2]);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn fibers_group_preimages() {
        let m = VertexMap(vec![1, 0, 1, 2]);
        assert_eq!(m.fibers(3), vec![vec![1], vec![0, 2], vec![3]]);
    }
}
