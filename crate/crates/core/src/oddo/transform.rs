//! Ways to build new oddomorphisms from old ones.

use super::{check_oddomorphism, CertificateKind, OddoCertificate, Witness};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::{components, Graph, VertexMap};
use rand::seq::SliceRandom;
use rand::Rng;

fn require_oddo(f: &Graph, psi: &VertexMap, g: &Graph, what: &str) -> Result<Vec<usize>> {
    check_oddomorphism(f, psi, g).map_err(|v| Error::input(format!("{what} is not an oddomorphism: {v}")))
}

/// Composite `ψ2 ∘ ψ1` with its odd set, which is the set of vertices odd
/// under `ψ1` whose image is odd under `ψ2`.
pub fn compose_oddo(
    f: &Graph,
    psi1: &VertexMap,
    g: &Graph,
    psi2: &VertexMap,
    h: &Graph,
) -> Result<(VertexMap, Vec<usize>)> {
    let odd1 = BitSet::from_indices(f.n(), require_oddo(f, psi1, g, "first map")?);
    let odd2 = BitSet::from_indices(g.n(), require_oddo(g, psi2, h, "second map")?);
    let comp = psi1.then(psi2);
    let odd: Vec<usize> = (0..f.n())
        .filter(|&a| odd1.contains(a) && odd2.contains(psi1[a]))
        .collect();
    Ok((comp, odd))
}

/// Composite of two weak oddomorphisms `F -> G -> H`. The witness is the part
/// of the first witness lying over the second witness.
pub fn compose_weak(first: &OddoCertificate, second: &OddoCertificate) -> Result<OddoCertificate> {
    if first.target != second.source {
        return Err(Error::input("certificates do not compose: middle graphs differ"));
    }
    let g = &first.target;
    let over_v = BitSet::from_indices(g.n(), second.witness.vertices.iter().copied());
    let over_e = BitSet::from_indices(g.m(), second.witness.edges.iter().copied());
    let (f, psi1) = (&first.source, &first.psi);
    let vertices: Vec<usize> = first
        .witness
        .vertices
        .iter()
        .copied()
        .filter(|&a| over_v.contains(psi1[a]))
        .collect();
    let edges: Vec<usize> = first
        .witness
        .edges
        .iter()
        .copied()
        .filter(|&e| {
            let (a, b) = f.edges()[e];
            g.edge_index(psi1[a], psi1[b]).is_some_and(|x| over_e.contains(x))
        })
        .collect();
    let odd1 = BitSet::from_indices(f.n(), first.witness.odd_set.iter().copied());
    let odd2 = BitSet::from_indices(g.n(), second.witness.odd_set.iter().copied());
    let odd_set = vertices
        .iter()
        .copied()
        .filter(|&a| odd1.contains(a) && odd2.contains(psi1[a]))
        .collect();
    let cert = OddoCertificate {
        kind: CertificateKind::WeakOddomorphism,
        source: f.clone(),
        target: second.target.clone(),
        psi: psi1.then(&second.psi),
        witness: Witness {
            vertices,
            edges,
            odd_set,
        },
        connected_witness: None,
    };
    cert.verify()
        .map_err(|v| Error::input(format!("composed witness fails: {v}")))?;
    Ok(cert)
}

/// Preimage of a subgraph `G'` of `G` (given by sorted vertex ids and edge
/// indices of `G`): the vertices over `V(G')` and the edges over `E(G')`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub graph: Graph,
    /// Original vertex id of each vertex of `graph`.
    pub source_ids: Vec<usize>,
    /// The subgraph `G'` in its own labels.
    pub target: Graph,
    /// Restricted map into the labels of `target`.
    pub psi: VertexMap,
}

pub fn restrict_oddo(
    f: &Graph,
    psi: &VertexMap,
    g: &Graph,
    sub_vertices: &[usize],
    sub_edges: &[usize],
) -> Result<Restriction> {
    psi.check_homomorphism(f, g)?;
    let target = g.subgraph(sub_vertices, sub_edges)?;
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in sub_vertices.iter().enumerate() {
        pos[v] = i;
    }
    let keep_e = BitSet::from_indices(g.m(), sub_edges.iter().copied());
    let source_ids: Vec<usize> = (0..f.n()).filter(|&a| pos[psi[a]] != usize::MAX).collect();
    let f_edges: Vec<usize> = (0..f.m())
        .filter(|&e| {
            let (a, b) = f.edges()[e];
            keep_e.contains(g.edge_index(psi[a], psi[b]).expect("homomorphism"))
        })
        .collect();
    let graph = f.subgraph(&source_ids, &f_edges)?;
    let map = VertexMap(source_ids.iter().map(|&a| pos[psi[a]]).collect());
    Ok(Restriction {
        graph,
        source_ids,
        target,
        psi: map,
    })
}

/// Transport of an oddomorphism along the contraction of a target edge.
#[derive(Clone, Debug)]
pub struct MinorTransport {
    /// The new source, a minor of the old one.
    pub graph: Graph,
    /// Branch set in the old source for each new vertex.
    pub branch_sets: Vec<Vec<usize>>,
    /// `G / uv`.
    pub target: Graph,
    /// Old target vertex -> vertex of `G / uv`.
    pub target_map: Vec<usize>,
    pub psi: VertexMap,
    /// Odd set predicted by the construction.
    pub odd_set: Vec<usize>,
}

/// Contracting `uv` in `G` for an oddomorphism `ψ: F -> G`. Edges from the
/// `v`-fibre to fibres over common neighbours of `u` and `v` are dropped, each
/// component of the subgraph induced on the `u`- and `v`-fibres is contracted,
/// and an outside vertex is joined to a contracted component exactly when it
/// has an odd number of neighbours in it.
pub fn minor_oddo(f: &Graph, psi: &VertexMap, g: &Graph, u: usize, v: usize) -> Result<MinorTransport> {
    let odd = BitSet::from_indices(f.n(), require_oddo(f, psi, g, "input map")?);
    let (target, target_map) = g.contract_edge(u, v)?;
    let common: Vec<usize> = g.neighbors_iter(u).filter(|&x| x != v && g.adjacent(x, v)).collect();
    let is_common = BitSet::from_indices(g.n(), common);
    // F'': drop v-fibre edges toward common neighbours.
    let trimmed: Vec<(usize, usize)> = f
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| {
            let (x, y) = (psi[a], psi[b]);
            !((x == v && is_common.contains(y)) || (y == v && is_common.contains(x)))
        })
        .collect();
    let f2 = Graph::from_edges(f.n(), trimmed).expect("subgraph");
    let inside: Vec<usize> = (0..f.n()).filter(|&a| psi[a] == u || psi[a] == v).collect();
    let parts: Vec<Vec<usize>> = components(&f.induced_subgraph(&inside))
        .into_iter()
        .map(|c| c.into_iter().map(|i| inside[i]).collect())
        .collect();
    let outside: Vec<usize> = (0..f.n()).filter(|&a| psi[a] != u && psi[a] != v).collect();
    let mut new_id = vec![usize::MAX; f.n()];
    for (i, &a) in outside.iter().enumerate() {
        new_id[a] = i;
    }
    let mut edges = Vec::new();
    for &(a, b) in f2.edges() {
        if new_id[a] != usize::MAX && new_id[b] != usize::MAX {
            edges.push((new_id[a], new_id[b]));
        }
    }
    let mut branch_sets: Vec<Vec<usize>> = outside.iter().map(|&a| vec![a]).collect();
    let mut odd_set: Vec<usize> = outside
        .iter()
        .enumerate()
        .filter(|(_, &a)| odd.contains(a))
        .map(|(i, _)| i)
        .collect();
    let mut images: Vec<usize> = outside.iter().map(|&a| target_map[psi[a]]).collect();
    for part in parts {
        let c = branch_sets.len();
        let members = BitSet::from_indices(f.n(), part.iter().copied());
        for (i, &a) in outside.iter().enumerate() {
            if f2.neighbors(a).intersection_count(&members) % 2 == 1 {
                edges.push((i, c));
            }
        }
        let odd_over_u = part.iter().filter(|&&a| psi[a] == u && odd.contains(a)).count();
        if odd_over_u % 2 == 1 {
            odd_set.push(c);
        }
        images.push(target_map[u]);
        branch_sets.push(part);
    }
    let graph = Graph::from_edges(branch_sets.len(), edges)?;
    Ok(MinorTransport {
        graph,
        branch_sets,
        target,
        target_map,
        psi: VertexMap(images),
        odd_set,
    })
}

/// Replaces each edge `ij` (`i < j`) of `G` by a path of odd length
/// `lengths[e]`. The map sends the `k`-th vertex along the path from `i` to
/// `i` when `k` is even and to `j` when `k` is odd. Internal vertices are
/// numbered after the original ones, edge by edge.
pub fn odd_subdivision(g: &Graph, lengths: &[usize]) -> Result<(Graph, VertexMap)> {
    if lengths.len() != g.m() {
        return Err(Error::param(format!("need {} lengths, got {}", g.m(), lengths.len())));
    }
    if let Some(&l) = lengths.iter().find(|&&l| l % 2 == 0) {
        return Err(Error::param(format!("subdivision lengths must be odd, got {l}")));
    }
    let mut psi: Vec<usize> = (0..g.n()).collect();
    let mut edges = Vec::new();
    for (&(i, j), &len) in g.edges().iter().zip(lengths) {
        let mut prev = i;
        for k in 1..len {
            let x = psi.len();
            psi.push(if k % 2 == 0 { i } else { j });
            edges.push((prev, x));
            prev = x;
        }
        edges.push((prev, j));
    }
    Ok((Graph::from_edges(psi.len(), edges)?, VertexMap(psi)))
}

/// Odd cover on `V(G) x [k]`: vertex `(v, i)` is `v*k + i`, and each edge
/// `uv` (`u < v`) with permutation `π` joins `(u, i)` to `(v, π(i))`.
pub fn odd_cover(g: &Graph, k: usize, voltages: &[Vec<usize>]) -> Result<(Graph, VertexMap)> {
    if k % 2 == 0 {
        return Err(Error::param(format!("cover degree must be odd, got {k}")));
    }
    if voltages.len() != g.m() {
        return Err(Error::param(format!(
            "need {} permutations, got {}",
            g.m(),
            voltages.len()
        )));
    }
    let mut edges = Vec::new();
    for (&(u, v), pi) in g.edges().iter().zip(voltages) {
        let mut sorted = pi.clone();
        sorted.sort_unstable();
        if sorted != (0..k).collect::<Vec<_>>() {
            return Err(Error::param(format!("{pi:?} is not a permutation of 0..{k}")));
        }
        for (i, &j) in pi.iter().enumerate() {
            edges.push((u * k + i, v * k + j));
        }
    }
    let psi = VertexMap((0..g.n() * k).map(|x| x / k).collect());
    Ok((Graph::from_edges(g.n() * k, edges)?, psi))
}

/// One uniformly random permutation per edge.
pub fn random_voltages(g: &Graph, k: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    (0..g.m())
        .map(|_| {
            let mut p: Vec<usize> = (0..k).collect();
            p.shuffle(rng);
            p
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use crate::oddo::{find_weak_oddo, is_oddomorphism};

    #[test]
    fn subdivided_triangle() {
        let (f, psi) = odd_subdivision(&complete(3), &[3, 1, 1]).unwrap();
        assert!(is_isomorphic(&f, &cycle(5).unwrap()).is_some());
        assert!(is_oddomorphism(&f, &psi, &complete(3)));
        assert!(odd_subdivision(&complete(3), &[2, 1, 1]).is_err());
    }

    #[test]
    fn cyclic_cover_of_triangle() {
        let shift = vec![1, 2, 0];
        let id = vec![0, 1, 2];
        let (f, psi) = odd_cover(&complete(3), 3, &[shift, id.clone(), id]).unwrap();
        assert!(is_isomorphic(&f, &cycle(9).unwrap()).is_some());
        assert!(is_oddomorphism(&f, &psi, &complete(3)));
        assert!(odd_cover(&complete(3), 2, &[]).is_err());
    }

    #[test]
    fn composition_of_subdivisions() {
        let (f1, p1) = odd_subdivision(&complete(4), &[1, 3, 1, 1, 5, 1]).unwrap();
        let (f2, p2) = odd_subdivision(&f1, &vec![3; f1.m()]).unwrap();
        let (comp, odd) = compose_oddo(&f2, &p2, &f1, &p1, &complete(4)).unwrap();
        assert_eq!(check_oddomorphism(&f2, &comp, &complete(4)).unwrap(), odd);
    }

    #[test]
    fn restriction_to_a_triangle() {
        let k4 = complete(4);
        let (f, psi) = odd_subdivision(&k4, &[3, 1, 1, 1, 1, 1]).unwrap();
        let tri_edges: Vec<usize> = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(a, b)| k4.edge_index(a, b).unwrap())
            .collect();
        let r = restrict_oddo(&f, &psi, &k4, &[0, 1, 2], &tri_edges).unwrap();
        assert!(is_oddomorphism(&r.graph, &r.psi, &r.target));
    }

    #[test]
    fn contracting_a_cycle_edge() {
        let c5 = cycle(5).unwrap();
        let (f, psi) = odd_subdivision(&c5, &[3, 1, 1, 1, 1]).unwrap();
        let t = minor_oddo(&f, &psi, &c5, 0, 1).unwrap();
        assert_eq!(check_oddomorphism(&t.graph, &t.psi, &t.target).unwrap(), t.odd_set);
        assert!(is_minor_model(&f, &t.graph, &t.branch_sets));
    }

    #[test]
    fn weak_composition() {
        let c3 = cycle(3).unwrap();
        let c5 = cycle(5).unwrap();
        let c7 = cycle(7).unwrap();
        let a = find_weak_oddo(&c7, &c5).unwrap().unwrap();
        let b = find_weak_oddo(&c5, &c3).unwrap().unwrap();
        let ab = compose_weak(&a, &b).unwrap();
        assert_eq!(ab.verify(), Ok(()));
    }
}
