//! One graph per isomorphism class, level by level in vertex count.

use super::{canonical_form, is_connected, Graph};
use crate::error::{Error, Result};
use std::collections::HashSet;

/// Default cap on the number of vertices.
pub const ENUMERATION_GUARD: usize = 8;

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    pub n_max: usize,
    pub connected_only: bool,
    /// Lifts the vertex-count guard.
    pub allow_large: bool,
}

/// Graphs on `1..=n_max` vertices, one per isomorphism class, in a fixed order.
/// Each graph is returned in canonical labelling.
pub fn enumerate_graphs(n_max: usize, connected_only: bool) -> Result<GraphStream> {
    GraphStream::new(EnumerateOptions {
        n_max,
        connected_only,
        allow_large: false,
    })
}

/// Lazily generated stream of class representatives.
pub struct GraphStream {
    opts: EnumerateOptions,
    level: Vec<Graph>,
    n: usize,
    idx: usize,
}

impl GraphStream {
    pub fn new(opts: EnumerateOptions) -> Result<GraphStream> {
        if !opts.allow_large {
            Error::guard("enumeration order", ENUMERATION_GUARD, opts.n_max)?;
        }
        Ok(GraphStream {
            opts,
            level: Vec::new(),
            n: 0,
            idx: 0,
        })
    }

    // Every graph on n vertices is a graph on n-1 vertices plus one vertex,
    // and every connected graph has a vertex whose removal keeps it connected.
    fn next_level(&mut self) {
        let n = self.n + 1;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        if n == 1 {
            out.push(Graph::empty(1));
        } else {
            for g in &self.level {
                for mask in 0u32..1 << (n - 1) {
                    if self.opts.connected_only && mask == 0 {
                        continue;
                    }
                    let edges = g
                        .edges()
                        .iter()
                        .copied()
                        .chain((0..n - 1).filter(|&u| mask >> u & 1 == 1).map(|u| (u, n - 1)));
                    let h = Graph::build(n, edges);
                    let form = canonical_form(&h).form;
                    if seen.insert(form.clone()) {
                        out.push(form.to_graph());
                    }
                }
            }
        }
        debug_assert!(!self.opts.connected_only || out.iter().all(is_connected));
        self.level = out;
        self.n = n;
        self.idx = 0;
    }
}

impl Iterator for GraphStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            if self.idx < self.level.len() {
                self.idx += 1;
                return Some(self.level[self.idx - 1].clone());
            }
            if self.n >= self.opts.n_max {
                return None;
            }
            self.next_level();
        }
    }
}

/// Graphs with loops allowed on `1..=n_max` vertices, one per class.
pub fn enumerate_graphs_with_loops(n_max: usize, connected_only: bool) -> Result<Vec<Graph>> {
    Error::guard("looped enumeration order", 6, n_max)?;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for g in enumerate_graphs(n_max, connected_only)? {
        let n = g.n();
        for mask in 0u32..1 << n {
            let h =
                Graph::with_loops(n, g.edges().iter().copied(), (0..n).filter(|&v| mask >> v & 1 == 1)).expect("valid");
            let form = canonical_form(&h).form;
            if seen.insert(form.clone()) {
                out.push(form.to_graph());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{components, is_isomorphic};

    // Independent oracle: all labelled graphs on exactly n vertices, grouped by
    // pairwise isomorphism tests rather than canonical forms.
    fn brute_classes(n: usize, connected_only: bool) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut reps: Vec<Graph> = Vec::new();
        for mask in 0u64..1 << pairs.len() {
            let g = Graph::from_edges(
                n,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e),
            )
            .unwrap();
            if connected_only && components(&g).len() != 1 {
                continue;
            }
            if !reps.iter().any(|r| is_isomorphic(r, &g).is_some()) {
                reps.push(g);
            }
        }
        reps.len()
    }

    fn count_exact(n: usize, connected: bool) -> usize {
        enumerate_graphs(n, connected).unwrap().filter(|g| g.n() == n).count()
    }

    #[test]
    fn counts_match_brute_force() {
        for n in 1..=5 {
            assert_eq!(count_exact(n, false), brute_classes(n, false), "n={n}");
            assert_eq!(count_exact(n, true), brute_classes(n, true), "n={n}");
        }
    }

    #[test]
    fn cumulative_counts() {
        assert_eq!(enumerate_graphs(0, true).unwrap().count(), 0);
        assert_eq!(enumerate_graphs(3, true).unwrap().count(), 4);
        assert_eq!(enumerate_graphs(4, true).unwrap().count(), 10);
        assert_eq!(count_exact(4, true), 6);
        assert_eq!(count_exact(6, false), 156);
        assert_eq!(count_exact(6, true), 112);
    }

    #[test]
    fn guard_and_determinism() {
        assert!(enumerate_graphs(9, false).is_err());
        let a: Vec<Graph> = enumerate_graphs(5, false).unwrap().collect();
        let b: Vec<Graph> = enumerate_graphs(5, false).unwrap().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn looped_counts() {
        // One and two vertices: K_1 with/without loop; 2K_1 and K_2 with 0, 1 or 2 loops.
        assert_eq!(enumerate_graphs_with_loops(2, false).unwrap().len(), 2 + 6);
    }
}
