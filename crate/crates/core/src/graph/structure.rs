//! Structural queries used by the graph families. Each answer that asserts
//! existence carries a witness that can be checked independently.

use super::{complete, complete_bipartite, has_minor_with, Graph, MinorGuard};
use crate::error::{Error, Result};
use serde::Serialize;

/// Size limit for the exponential queries in this module.
pub const STRUCTURE_GUARD: usize = 16;

pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![s];
        comp[s] = id;
        let mut members = Vec::new();
        while let Some(v) = stack.pop() {
            members.push(v);
            for u in g.neighbors_iter(v) {
                if comp[u] == usize::MAX {
                    comp[u] = id;
                    stack.push(u);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    components(g).len() <= 1
}

/// A proper 2-colouring, or an odd cycle as a vertex sequence.
pub fn bipartition(g: &Graph) -> std::result::Result<Vec<bool>, Vec<usize>> {
    let n = g.n();
    let mut side = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let sv = side[v].expect("visited");
            for u in g.neighbors_iter(v) {
                match side[u] {
                    None => {
                        side[u] = Some(!sv);
                        parent[u] = v;
                        queue.push_back(u);
                    }
                    Some(su) if su == sv => return Err(odd_cycle(&parent, u, v)),
                    _ => {}
                }
            }
        }
    }
    Ok(side.into_iter().map(|s| s.expect("all visited")).collect())
}

// Joins the BFS-tree paths of two same-side adjacent vertices.
fn odd_cycle(parent: &[usize], a: usize, b: usize) -> Vec<usize> {
    let up = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let (pa, pb) = (up(a), up(b));
    let mut i = pa.len();
    let mut j = pb.len();
    while i > 0 && j > 0 && pa[i - 1] == pb[j - 1] {
        i -= 1;
        j -= 1;
    }
    let mut cyc: Vec<usize> = pa[..=i].to_vec();
    cyc.extend(pb[..j].iter().rev());
    cyc
}

pub fn is_bipartite(g: &Graph) -> bool {
    bipartition(g).is_ok()
}

/// Every cycle of `g` once, as a vertex sequence starting at its smallest
/// vertex with the second vertex smaller than the last.
pub fn all_cycles(g: &Graph, max_cycles: usize) -> Result<Vec<Vec<usize>>> {
    Error::guard("cycle enumeration order", STRUCTURE_GUARD, g.n())?;
    let mut out = Vec::new();
    let n = g.n();
    for s in 0..n {
        let mut path = vec![s];
        let mut on = vec![false; n];
        on[s] = true;
        extend_paths(g, s, &mut path, &mut on, &mut |p: &[usize]| {
            if p.len() >= 3 && p[1] < p[p.len() - 1] && g.adjacent(p[p.len() - 1], s) {
                out.push(p.to_vec());
            }
            out.len() <= max_cycles
        });
        if out.len() > max_cycles {
            return Err(Error::Guard {
                what: "cycle count",
                limit: max_cycles,
                actual: out.len(),
            });
        }
    }
    Ok(out)
}

// Walks every simple path from `path[0]` through vertices larger than it.
fn extend_paths(
    g: &Graph,
    s: usize,
    path: &mut Vec<usize>,
    on: &mut [bool],
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if !visit(path) {
        return false;
    }
    let last = *path.last().expect("nonempty path");
    for u in g.neighbors_iter(last) {
        if u > s && !on[u] {
            on[u] = true;
            path.push(u);
            let go_on = extend_paths(g, s, path, on, visit);
            path.pop();
            on[u] = false;
            if !go_on {
                return false;
            }
        }
    }
    true
}

/// A longest cycle, or `None` for forests.
pub fn longest_cycle(g: &Graph) -> Result<Option<Vec<usize>>> {
    Error::guard("circumference order", STRUCTURE_GUARD, g.n())?;
    let mut best: Option<Vec<usize>> = None;
    for s in 0..g.n() {
        let mut path = vec![s];
        let mut on = vec![false; g.n()];
        on[s] = true;
        extend_paths(g, s, &mut path, &mut on, &mut |p: &[usize]| {
            if p.len() >= 3 && g.adjacent(p[p.len() - 1], s) && best.as_ref().is_none_or(|b| p.len() > b.len()) {
                best = Some(p.to_vec());
            }
            true
        });
    }
    Ok(best)
}

/// Length of a longest cycle; 0 for forests.
pub fn circumference(g: &Graph) -> Result<usize> {
    Ok(longest_cycle(g)?.map_or(0, |c| c.len()))
}

pub fn is_chordless_cycle(g: &Graph, cyc: &[usize]) -> bool {
    let k = cyc.len();
    if k < 3 {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if cyc[i] == cyc[j] || g.adjacent(cyc[i], cyc[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// First chordless cycle (in search order) whose length satisfies `want`.
pub fn find_chordless_cycle(g: &Graph, want: impl Fn(usize) -> bool) -> Result<Option<Vec<usize>>> {
    Error::guard("induced cycle search order", STRUCTURE_GUARD, g.n())?;
    fn go(g: &Graph, path: &mut Vec<usize>, want: &dyn Fn(usize) -> bool) -> Option<Vec<usize>> {
        let s = path[0];
        let last = *path.last().expect("nonempty");
        for x in g.neighbors_iter(last) {
            if x <= s || path.contains(&x) {
                continue;
            }
            // x may touch only `last` among interior path vertices.
            let interior = &path[1.min(path.len() - 1)..path.len() - 1];
            if interior.iter().any(|&p| g.adjacent(p, x)) {
                continue;
            }
            path.push(x);
            if path.len() >= 3 && g.adjacent(x, s) {
                if want(path.len()) {
                    return Some(path.clone());
                }
            } else if let Some(c) = go(g, path, want) {
                return Some(c);
            }
            path.pop();
        }
        None
    }
    for s in 0..g.n() {
        if let Some(c) = go(g, &mut vec![s], &want) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// An induced odd cycle of length at least 5.
pub fn find_odd_hole(g: &Graph) -> Result<Option<Vec<usize>>> {
    find_chordless_cycle(g, |k| k >= 5 && k % 2 == 1)
}

/// An induced `K_{1,d}` as `(centre, leaves)`.
pub fn find_induced_star(g: &Graph, d: usize) -> Option<(usize, Vec<usize>)> {
    fn pick(g: &Graph, cand: &[usize], need: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == need {
            return true;
        }
        for (i, &x) in cand.iter().enumerate() {
            if chosen.iter().all(|&c| !g.adjacent(c, x)) {
                chosen.push(x);
                if pick(g, &cand[i + 1..], need, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    for v in 0..g.n() {
        let nb: Vec<usize> = g.neighbors_iter(v).collect();
        let mut chosen = Vec::new();
        if nb.len() >= d && pick(g, &nb, d, &mut chosen) {
            return Some((v, chosen));
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NonPlanarWitness {
    /// Too many edges for a planar graph on the reduced vertex set.
    EdgeBound { vertices: usize, edges: usize },
    /// Branch sets (in the input's labels) of a `K_5` minor.
    K5Minor(Vec<Vec<usize>>),
    /// Branch sets of a `K_{3,3}` minor.
    K33Minor(Vec<Vec<usize>>),
}

/// Planarity by series reduction, the Euler edge bounds, then a `K_5` /
/// `K_{3,3}` minor search on what is left.
pub fn planarity(g: &Graph) -> Result<Option<NonPlanarWitness>> {
    Error::guard("planarity order", STRUCTURE_GUARD, g.n())?;
    for comp in components(g) {
        let (h, labels) = series_reduce(&g.induced_subgraph(&comp).without_loops());
        let (n, m) = (h.n(), h.m());
        if n >= 3 && m > 3 * n - 6 {
            return Ok(Some(NonPlanarWitness::EdgeBound { vertices: n, edges: m }));
        }
        if n >= 3 && m > 2 * n - 4 && find_chordless_cycle(&h, |k| k == 3)?.is_none() {
            return Ok(Some(NonPlanarWitness::EdgeBound { vertices: n, edges: m }));
        }
        let lift = |sets: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
            sets.into_iter()
                .map(|s| s.into_iter().map(|x| comp[labels[x]]).collect())
                .collect()
        };
        let guard = MinorGuard { max_vertices: 12 };
        if let Some(s) = has_minor_with(&h, &complete(5), guard)? {
            return Ok(Some(NonPlanarWitness::K5Minor(lift(s))));
        }
        if let Some(s) = has_minor_with(&h, &complete_bipartite(3, 3), guard)? {
            return Ok(Some(NonPlanarWitness::K33Minor(lift(s))));
        }
    }
    Ok(None)
}

pub fn is_planar(g: &Graph) -> Result<bool> {
    Ok(planarity(g)?.is_none())
}

// Deletes vertices of degree <= 1 and suppresses degree-2 vertices. Returns the
// reduced graph and, per reduced vertex, its original label.
fn series_reduce(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.n();
    let mut adj: Vec<std::collections::BTreeSet<usize>> = (0..n).map(|v| g.neighbors_iter(v).collect()).collect();
    let mut alive = vec![true; n];
    while let Some(v) = (0..n).find(|&v| alive[v] && adj[v].len() <= 2) {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &u in &nb {
            adj[u].remove(&v);
        }
        if let [a, b] = nb[..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj[v].clear();
        alive[v] = false;
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        pos[v] = i;
    }
    let edges = keep
        .iter()
        .flat_map(|&v| adj[v].iter().filter(move |&&u| u > v).map(move |&u| (v, u)))
        .map(|(a, b)| (pos[a], pos[b]))
        .collect::<Vec<_>>();
    (Graph::build(keep.len(), edges), keep)
}

/// Treewidth at most 2, decided by the same series reduction: a graph has
/// treewidth at most 2 iff the reduction deletes every vertex.
pub fn treewidth_at_most_2(g: &Graph) -> bool {
    series_reduce(&g.without_loops()).0.n() == 0
}

/// Smallest `k` admitting a proper `k`-colouring, with the colouring.
/// Graphs with a loop have no proper colouring and return `None`.
pub fn chromatic_number(g: &Graph) -> Result<Option<(usize, Vec<usize>)>> {
    Error::guard("chromatic number order", STRUCTURE_GUARD, g.n())?;
    if g.has_loops() {
        return Ok(None);
    }
    let n = g.n();
    if n == 0 {
        return Ok(Some((0, Vec::new())));
    }
    fn color(g: &Graph, v: usize, k: usize, col: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return true;
        }
        // Symmetry break: a vertex may open at most one new colour.
        let used = col[..v].iter().copied().max().map_or(0, |m| m + 1);
        for c in 0..k.min(used + 1) {
            if g.neighbors_iter(v).all(|u| u >= v || col[u] != c) {
                col[v] = c;
                if color(g, v + 1, k, col) {
                    return true;
                }
            }
        }
        false
    }
    for k in 1..=n {
        let mut col = vec![0; n];
        if color(g, 0, k, &mut col) {
            return Ok(Some((k, col)));
        }
    }
    unreachable!("n colours always suffice")
}

/// One-shot summary used by the command line.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub m: usize,
    pub components: Vec<Vec<usize>>,
    pub bipartite: bool,
    pub odd_cycle: Option<Vec<usize>>,
    pub max_degree: usize,
    pub longest_cycle: Option<Vec<usize>>,
    pub odd_hole: Option<Vec<usize>>,
    pub planar: bool,
    pub nonplanar_witness: Option<NonPlanarWitness>,
}

pub fn structure_queries(g: &Graph) -> Result<StructureReport> {
    let bip = bipartition(g);
    let np = planarity(g)?;
    Ok(StructureReport {
        n: g.n(),
        m: g.m(),
        components: components(g),
        bipartite: bip.is_ok(),
        odd_cycle: bip.err(),
        max_degree: g.max_degree(),
        longest_cycle: longest_cycle(g)?,
        odd_hole: find_odd_hole(g)?,
        planar: np.is_none(),
        nonplanar_witness: np,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    fn is_cycle_in(g: &Graph, c: &[usize]) -> bool {
        let k = c.len();
        k >= 3 && (0..k).all(|i| g.adjacent(c[i], c[(i + 1) % k]))
    }

    #[test]
    fn odd_cycle_witness() {
        let g = petersen();
        let c = bipartition(&g).unwrap_err();
        assert!(c.len() % 2 == 1 && is_cycle_in(&g, &c));
        assert!(bipartition(&cycle(6).unwrap()).is_ok());
    }

    #[test]
    fn circumference_and_holes() {
        assert_eq!(circumference(&petersen()).unwrap(), 9);
        assert_eq!(circumference(&path(5)).unwrap(), 0);
        let h = find_odd_hole(&cycle(7).unwrap()).unwrap().unwrap();
        assert_eq!(h.len(), 7);
        assert!(find_odd_hole(&complete(6)).unwrap().is_none());
        assert!(find_odd_hole(&cycle(6).unwrap()).unwrap().is_none());
    }

    #[test]
    fn cycle_counts() {
        // K_4: four triangles and three 4-cycles.
        assert_eq!(all_cycles(&complete(4), 1000).unwrap().len(), 7);
        // Petersen: 12 five-cycles, 10 six-cycles, 15 eight-cycles, 20 nine-cycles.
        assert_eq!(all_cycles(&petersen(), 10_000).unwrap().len(), 57);
    }

    #[test]
    fn induced_stars() {
        assert!(find_induced_star(&star(3), 3).is_some());
        assert!(find_induced_star(&complete(5), 2).is_none());
        assert!(find_induced_star(&path(5), 2).is_some());
    }

    #[test]
    fn planarity_cases() {
        assert!(!is_planar(&petersen()).unwrap());
        assert!(!is_planar(&complete(5)).unwrap());
        assert!(!is_planar(&complete_bipartite(3, 3)).unwrap());
        assert!(is_planar(&complete(4)).unwrap());
        assert!(is_planar(&rook(2)).unwrap());
        let cube = Graph::from_edges(
            8,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        )
        .unwrap();
        assert!(is_planar(&cube).unwrap());
    }

    #[test]
    fn treewidth_two_matches_k4_minor_freeness() {
        for g in enumerate_graphs(6, false).unwrap() {
            let minor = has_minor(&g, &complete(4)).unwrap();
            assert_eq!(treewidth_at_most_2(&g), !minor, "{g:?}");
        }
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&petersen()).unwrap().unwrap().0, 3);
        assert_eq!(chromatic_number(&cycle(6).unwrap()).unwrap().unwrap().0, 2);
        assert_eq!(chromatic_number(&complete(5)).unwrap().unwrap().0, 5);
        assert_eq!(chromatic_number(&Graph::empty(3)).unwrap().unwrap().0, 1);
    }
}
