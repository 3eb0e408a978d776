//! Minor containment by contraction search with memoised canonical forms.

use super::{canonical_form, find_embedding, Graph};
use crate::error::{Error, Result};
use std::collections::HashSet;

#[derive(Clone, Copy, Debug)]
pub struct MinorGuard {
    pub max_vertices: usize,
}

impl Default for MinorGuard {
    fn default() -> Self {
        MinorGuard { max_vertices: 12 }
    }
}

/// Whether `pattern` is a minor of `host`.
pub fn has_minor(host: &Graph, pattern: &Graph) -> Result<bool> {
    Ok(has_minor_with(host, pattern, MinorGuard::default())?.is_some())
}

/// Searches for a minor model: one connected branch set of `host` vertices per
/// `pattern` vertex, pairwise disjoint, with an edge between the branch sets of
/// every `pattern` edge. Loops are ignored on both sides.
pub fn has_minor_with(host: &Graph, pattern: &Graph, guard: MinorGuard) -> Result<Option<Vec<Vec<usize>>>> {
    Error::guard("minor search host order", guard.max_vertices, host.n())?;
    let host = host.without_loops();
    let pattern = pattern.without_loops();
    let sets: Vec<Vec<usize>> = (0..host.n()).map(|v| vec![v]).collect();
    let mut seen = HashSet::new();
    Ok(search(&host, sets, &pattern, &mut seen))
}

// Every minor is a subgraph of some contraction, so only contractions branch.
fn search(
    g: &Graph,
    sets: Vec<Vec<usize>>,
    pattern: &Graph,
    seen: &mut HashSet<super::CanonicalForm>,
) -> Option<Vec<Vec<usize>>> {
    if g.n() < pattern.n() || g.m() < pattern.m() {
        return None;
    }
    if !seen.insert(canonical_form(g).form) {
        return None;
    }
    if let Some(emb) = find_embedding(pattern, g, false) {
        return Some(emb.iter().map(|&x| sets[x].clone()).collect());
    }
    if g.n() == pattern.n() {
        return None;
    }
    for &(u, v) in g.edges() {
        let (h, map) = g.contract_edge(u, v).expect("edge of g");
        let mut merged = vec![Vec::new(); h.n()];
        for (old, set) in sets.iter().enumerate() {
            merged[map[old]].extend_from_slice(set);
        }
        for s in merged.iter_mut() {
            s.sort_unstable();
        }
        if let Some(found) = search(&h, merged, pattern, seen) {
            return Some(found);
        }
    }
    None
}

/// Checks a minor model against both graphs.
pub fn is_minor_model(host: &Graph, pattern: &Graph, sets: &[Vec<usize>]) -> bool {
    if sets.len() != pattern.n() {
        return false;
    }
    let mut owner = vec![usize::MAX; host.n()];
    for (i, s) in sets.iter().enumerate() {
        if s.is_empty() {
            return false;
        }
        for &v in s {
            if v >= host.n() || owner[v] != usize::MAX {
                return false;
            }
            owner[v] = i;
        }
        if super::components(&host.induced_subgraph(s)).len() != 1 {
            return false;
        }
    }
    pattern.edges().iter().all(|&(a, b)| {
        host.edges()
            .iter()
            .any(|&(x, y)| (owner[x] == a && owner[y] == b) || (owner[x] == b && owner[y] == a))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    #[test]
    fn petersen_has_k5_and_k33_minors() {
        let p = petersen();
        let m = has_minor_with(&p, &complete(5), MinorGuard::default())
            .unwrap()
            .unwrap();
        assert!(is_minor_model(&p, &complete(5), &m));
        assert!(has_minor(&p, &complete_bipartite(3, 3)).unwrap());
    }

    #[test]
    fn outerplanar_cases() {
        let c6 = cycle(6).unwrap();
        assert!(has_minor(&c6, &cycle(4).unwrap()).unwrap());
        assert!(!has_minor(&c6, &complete(4)).unwrap());
        assert!(has_minor(&complete(4), &complete(4)).unwrap());
    }

    #[test]
    fn guard_refuses_large_hosts() {
        let err = has_minor(&Graph::empty(13), &complete(3)).unwrap_err();
        assert!(err.is_refusal());
    }
}
