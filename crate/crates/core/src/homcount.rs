//! Homomorphism counts: direct backtracking, per-map counts through the
//! fibered linear system, and closed-walk counts.

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2System};
use crate::graph::{components, Graph, VertexMap};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::ops::ControlFlow;

pub type HomCount = BigUint;

#[derive(Clone, Copy, Debug)]
pub struct HomGuard {
    pub max_source: usize,
    pub max_target: usize,
}

impl Default for HomGuard {
    fn default() -> Self {
        HomGuard {
            max_source: 10,
            max_target: 64,
        }
    }
}

impl HomGuard {
    fn check(&self, f: &Graph, g: &Graph) -> Result<()> {
        Error::guard("hom source order", self.max_source, f.n())?;
        Error::guard("hom target order", self.max_target, g.n())
    }
}

/// Placement order and, per position, the earlier positions adjacent to it.
struct Plan {
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
}

fn plan(f: &Graph) -> Plan {
    let n = f.n();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for u in f.neighbors_iter(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let back = order
        .iter()
        .map(|&v| {
            let mut b: Vec<usize> = f.neighbors_iter(v).filter(|&u| pos[u] < pos[v]).collect();
            b.sort_by_key(|&u| pos[u]);
            b
        })
        .collect();
    Plan { order, back }
}

fn candidates(f: &Graph, g: &Graph, v: usize, back: &[usize], img: &[usize], out: &mut BitSet) {
    if back.is_empty() {
        *out = BitSet::full(g.n());
    } else {
        out.clone_from(g.neighbors(img[back[0]]));
        for &u in &back[1..] {
            out.intersect_with(g.neighbors(img[u]));
        }
    }
    if f.has_loop(v) {
        out.intersect_with(g.loops());
    }
}

/// Calls `visit` on every homomorphism `f -> g`, in backtracking order, until
/// it breaks. Returns whether it stopped early. No guard is applied.
pub fn for_each_hom(f: &Graph, g: &Graph, mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) -> bool {
    fn go(
        i: usize,
        f: &Graph,
        g: &Graph,
        p: &Plan,
        img: &mut [usize],
        bufs: &mut [BitSet],
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> bool {
        let Some((cur, rest)) = bufs.split_first_mut() else {
            return visit(img).is_break();
        };
        let v = p.order[i];
        candidates(f, g, v, &p.back[i], img, cur);
        for x in cur.iter() {
            img[v] = x;
            if go(i + 1, f, g, p, img, rest, visit) {
                return true;
            }
        }
        false
    }
    let p = plan(f);
    let mut img = vec![0usize; f.n()];
    let mut bufs = vec![BitSet::new(g.n()); f.n()];
    go(0, f, g, &p, &mut img, &mut bufs, &mut visit)
}

fn count_connected(f: &Graph, g: &Graph) -> u64 {
    fn go(i: usize, f: &Graph, g: &Graph, p: &Plan, img: &mut [usize], bufs: &mut [BitSet]) -> u64 {
        let (cur, rest) = bufs.split_first_mut().expect("one buffer per vertex");
        let v = p.order[i];
        candidates(f, g, v, &p.back[i], img, cur);
        if rest.is_empty() {
            return cur.count() as u64;
        }
        let mut total = 0;
        for x in cur.iter() {
            img[v] = x;
            total += go(i + 1, f, g, p, img, rest);
        }
        total
    }
    if f.n() == 0 {
        return 1;
    }
    let p = plan(f);
    let mut img = vec![0usize; f.n()];
    let mut bufs = vec![BitSet::new(g.n()); f.n()];
    go(0, f, g, &p, &mut img, &mut bufs)
}

/// `hom(F, G)`, factorised over the components of `F`.
pub fn hom_count(f: &Graph, g: &Graph) -> Result<HomCount> {
    hom_count_with(f, g, HomGuard::default())
}

pub fn hom_count_with(f: &Graph, g: &Graph, guard: HomGuard) -> Result<HomCount> {
    guard.check(f, g)?;
    let mut total = HomCount::one();
    for comp in components(f) {
        let c = count_connected(&f.induced_subgraph(&comp), g);
        if c == 0 {
            return Ok(HomCount::zero());
        }
        total *= c;
    }
    Ok(total)
}

/// All homomorphisms `f -> g`, sorted lexicographically. Refuses with the
/// number found so far once more than `limit` exist.
pub fn hom_enumerate(f: &Graph, g: &Graph, limit: usize) -> Result<Vec<VertexMap>> {
    HomGuard::default().check(f, g)?;
    let mut out = Vec::new();
    let stopped = for_each_hom(f, g, |m| {
        if out.len() == limit {
            return ControlFlow::Break(());
        }
        out.push(VertexMap(m.to_vec()));
        ControlFlow::Continue(())
    });
    if stopped {
        return Err(Error::LimitExceeded {
            limit,
            found: out.len(),
        });
    }
    out.sort();
    Ok(out)
}

/// The linear system whose solutions are the lifts of one map `F -> G` to `G_U`.
///
/// Variables are pairs `(a, e)` with `a ∈ V(F)` and `e` an edge at `ψ(a)`, in
/// lexicographic order. Rows `0..|V(F)|` are the parity rows; the remaining rows
/// are agreement rows, one per edge of `F` whose image is an edge of `G`, in
/// edge-index order.
#[derive(Clone, Debug)]
pub struct FiberedSystem {
    pub system: Gf2System,
    pub variables: Vec<(usize, usize)>,
    /// Edge index in `F` of each agreement row.
    pub edge_rows: Vec<usize>,
}

impl FiberedSystem {
    pub fn vertex_rows(&self) -> usize {
        self.system.matrix.nrows() - self.edge_rows.len()
    }
}

/// Fibered system for a homomorphism `psi: F -> G`.
pub fn build_fibered_system(f: &Graph, g: &Graph, u: &[usize], psi: &VertexMap) -> Result<FiberedSystem> {
    psi.check_homomorphism(f, g)?;
    fibered_system_any(f, g, u, psi)
}

/// Fibered system for an arbitrary map `psi: V(F) -> V(G)`. Edges of `F` whose
/// image is not an edge of `G` (including loops) get no row.
pub fn fibered_system_any(f: &Graph, g: &Graph, u: &[usize], psi: &VertexMap) -> Result<FiberedSystem> {
    if g.has_loops() {
        return Err(Error::input("target graph must be loopless"));
    }
    if psi.len() != f.n() || psi.0.iter().any(|&x| x >= g.n()) {
        return Err(Error::input("map does not match the graphs"));
    }
    let in_u = BitSet::from_indices(g.n(), u.iter().copied().filter(|&x| x < g.n()));
    if u.iter().any(|&x| x >= g.n()) {
        return Err(Error::input("U out of range"));
    }
    let mut variables = Vec::new();
    let mut var_start = Vec::with_capacity(f.n());
    for a in 0..f.n() {
        var_start.push(variables.len());
        variables.extend(g.incident_edges(psi[a]).into_iter().map(|e| (a, e)));
    }
    let nv = variables.len();
    let var_of = |a: usize, e: usize| -> usize {
        let lo = var_start[a];
        lo + variables[lo..]
            .iter()
            .position(|&(b, x)| b == a && x == e)
            .expect("edge at image")
    };
    let mut matrix = Gf2Matrix::zeros(0, nv);
    for a in 0..f.n() {
        let end = var_start.get(a + 1).copied().unwrap_or(nv);
        matrix.push_row(BitSet::from_indices(nv, var_start[a]..end));
    }
    let mut edge_rows = Vec::new();
    for (idx, &(a, b)) in f.edges().iter().enumerate() {
        let Some(e) = g.edge_index(psi[a], psi[b]) else {
            continue;
        };
        matrix.push_row(BitSet::from_indices(nv, [var_of(a, e), var_of(b, e)]));
        edge_rows.push(idx);
    }
    let rhs = BitSet::from_indices(matrix.nrows(), (0..f.n()).filter(|&a| in_u.contains(psi[a])));
    Ok(FiberedSystem {
        system: Gf2System::new(matrix, rhs)?,
        variables,
        edge_rows,
    })
}

/// Number of homomorphisms `F -> G_U` lying over `psi`.
pub fn hom_count_fibered(f: &Graph, g: &Graph, u: &[usize], psi: &VertexMap) -> Result<HomCount> {
    let sys = build_fibered_system(f, g, u, psi)?;
    Ok(match sys.system.solution_count_log2() {
        Some(k) => HomCount::one() << k,
        None => HomCount::zero(),
    })
}

/// `hom(C_k, G)` for `k = 3..=max_len`, as traces of adjacency powers
/// (loops count as diagonal ones).
pub fn hom_vector_cycles(g: &Graph, max_len: usize) -> Result<Vec<HomCount>> {
    Error::guard("cycle length", 16, max_len)?;
    Error::guard("closed-walk target order", 256, g.n())?;
    let n = g.n();
    let mut power: Vec<Vec<BigUint>> = (0..n)
        .map(|i| (0..n).map(|j| BigUint::from(u8::from(g.adjacent(i, j)))).collect())
        .collect();
    let mut out = Vec::new();
    for k in 2..=max_len {
        // power = A^k
        let mut next = vec![vec![BigUint::zero(); n]; n];
        for i in 0..n {
            for (m, pm) in power[i].iter().enumerate() {
                if pm.is_zero() {
                    continue;
                }
                for j in g.neighbors(m).iter() {
                    next[i][j] += pm;
                }
            }
        }
        power = next;
        if k >= 3 {
            out.push((0..n).map(|i| power[i][i].clone()).sum());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_gu;
    use crate::graph::*;

    // Oracle: try every map.
    fn brute(f: &Graph, g: &Graph) -> u64 {
        let (n, k) = (f.n(), g.n() as u64);
        let mut count = 0;
        for code in 0..k.pow(n as u32) {
            let mut c = code;
            let map: Vec<usize> = (0..n)
                .map(|_| {
                    let x = (c % k) as usize;
                    c /= k;
                    x
                })
                .collect();
            if f.is_homomorphism(g, &map) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let targets = [
            complete(3),
            cycle(5).unwrap(),
            Graph::with_loops(3, [(0, 1), (1, 2)], [1]).unwrap(),
        ];
        for f in enumerate_graphs(4, false).unwrap() {
            for g in &targets {
                assert_eq!(hom_count(&f, g).unwrap(), BigUint::from(brute(&f, g)), "{f:?} -> {g:?}");
            }
        }
        let looped = Graph::with_loops(2, [(0, 1)], [0]).unwrap();
        assert_eq!(hom_count(&looped, &complete(3)).unwrap(), BigUint::zero());
    }

    #[test]
    fn cherry_counts_sum_squared_degrees() {
        let cherry = path(3);
        assert_eq!(hom_count(&cherry, &path(4)).unwrap(), BigUint::from(10u32));
        let k3k1 = complete(3).disjoint_union(&Graph::empty(1));
        assert_eq!(hom_count(&cherry, &k3k1).unwrap(), BigUint::from(12u32));
    }

    #[test]
    fn enumerate_respects_limit() {
        let all = hom_enumerate(&path(2), &complete(3), 100).unwrap();
        assert_eq!(all.len(), 6);
        assert!(matches!(
            hom_enumerate(&path(3), &complete(3), 5),
            Err(Error::LimitExceeded { limit: 5, found: 5 })
        ));
    }

    #[test]
    fn fibered_triangle() {
        let c3 = complete(3);
        let id = VertexMap::identity(3);
        assert_eq!(hom_count_fibered(&c3, &c3, &[], &id).unwrap(), BigUint::from(2u32));
        assert_eq!(hom_count_fibered(&c3, &c3, &[0], &id).unwrap(), BigUint::zero());
        assert!(build_fibered_system(&c3, &path(3), &[], &id).is_err());
    }

    #[test]
    fn fibered_counts_partition_the_lift() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        for u in [vec![], vec![0], vec![3]] {
            let lift = build_gu(&g, &u).unwrap().graph;
            for f in enumerate_graphs(4, false).unwrap() {
                let mut sum = BigUint::zero();
                for psi in hom_enumerate(&f, &g, 10_000).unwrap() {
                    sum += hom_count_fibered(&f, &g, &u, &psi).unwrap();
                }
                assert_eq!(sum, hom_count(&f, &lift).unwrap());
            }
        }
    }

    #[test]
    fn cycle_vector_is_a_hom_count() {
        let g = petersen();
        let v = hom_vector_cycles(&g, 7).unwrap();
        for (i, k) in (3..=7).enumerate() {
            assert_eq!(v[i], hom_count(&cycle(k).unwrap(), &g).unwrap());
        }
        // Triangle: tr(A^k) = 2^k + 2(-1)^k.
        let t = hom_vector_cycles(&complete(3), 5).unwrap();
        assert_eq!(t, vec![BigUint::from(6u32), BigUint::from(18u32), BigUint::from(30u32)]);
    }
}
