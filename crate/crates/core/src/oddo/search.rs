//! Certificate search: enumerate candidate maps once and, per map, read an
//! odd set and a witness edge set off the inconsistency certificate of the
//! fibered system with `U = {û}`.

use super::{check_oddomorphism, CertificateKind, OddoCertificate, Witness};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::{components, Graph, VertexMap};
use crate::homcount::{fibered_system_any, for_each_hom, HomGuard};
use std::ops::ControlFlow;

#[derive(Clone, Copy, Debug)]
pub struct SearchGuard {
    pub hom: HomGuard,
    /// Most candidate maps examined before refusing.
    pub max_maps: usize,
}

impl Default for SearchGuard {
    fn default() -> Self {
        SearchGuard {
            hom: HomGuard::default(),
            max_maps: 5_000_000,
        }
    }
}

fn check_inputs(f: &Graph, g: &Graph, guard: &SearchGuard, source_loops_ok: bool) -> Result<()> {
    Error::guard("search source order", guard.hom.max_source, f.n())?;
    Error::guard("search target order", guard.hom.max_target, g.n())?;
    if g.has_loops() {
        return Err(Error::input("target must be loopless"));
    }
    if !source_loops_ok && f.has_loops() {
        return Err(Error::input("source must be loopless"));
    }
    Ok(())
}

/// Dual solution restricted to the preimage of one component of `G`, rooted
/// at the component's smallest vertex. Returns the odd set and witness edges.
fn dual_for_component(f: &Graph, g: &Graph, psi: &VertexMap, comp: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let sys = fibered_system_any(f, g, &[comp[0]], psi).expect("inputs were validated");
    let y = sys.system.fredholm_certificate()?;
    let in_comp = BitSet::from_indices(g.n(), comp.iter().copied());
    let nv = sys.vertex_rows();
    let odd: Vec<usize> = y
        .iter()
        .take_while(|&r| r < nv)
        .filter(|&a| in_comp.contains(psi[a]))
        .collect();
    let mut edges: Vec<usize> = y
        .iter()
        .filter(|&r| r >= nv)
        .map(|r| sys.edge_rows[r - nv])
        .filter(|&e| in_comp.contains(psi[f.edges()[e].0]))
        .collect();
    edges.sort_unstable();
    Some((odd, edges))
}

fn witness_from(f: &Graph, odd: Vec<usize>, edges: Vec<usize>) -> Witness {
    let mut vs = BitSet::from_indices(f.n(), odd.iter().copied());
    for &e in &edges {
        let (a, b) = f.edges()[e];
        vs.insert(a);
        vs.insert(b);
    }
    let mut odd_set = odd;
    odd_set.sort_unstable();
    Witness {
        vertices: vs.to_vec(),
        edges,
        odd_set,
    }
}

/// The component of the witness holding an odd number of odd vertices over
/// `root`; the one containing the smallest vertex wins.
fn connected_part(f: &Graph, psi: &VertexMap, w: &Witness, root: usize) -> Option<Witness> {
    let sub = f.subgraph(&w.vertices, &w.edges).expect("witness is a subgraph");
    let odd = BitSet::from_indices(f.n(), w.odd_set.iter().copied());
    for comp in components(&sub) {
        let members: Vec<usize> = comp.iter().map(|&i| w.vertices[i]).collect();
        let over_root = members.iter().filter(|&&a| psi[a] == root && odd.contains(a)).count();
        if over_root % 2 == 1 {
            let mset = BitSet::from_indices(f.n(), members.iter().copied());
            let edges: Vec<usize> = w
                .edges
                .iter()
                .copied()
                .filter(|&e| mset.contains(f.edges()[e].0))
                .collect();
            let odd_set = members.iter().copied().filter(|&a| odd.contains(a)).collect();
            return Some(Witness {
                vertices: members,
                edges,
                odd_set,
            });
        }
    }
    None
}

/// Certificate for one fixed map, if it has one. `psi` must be a homomorphism
/// unless `kind` is [`CertificateKind::WeakOddism`].
pub fn certificate_for_map(
    f: &Graph,
    g: &Graph,
    psi: &VertexMap,
    kind: CertificateKind,
) -> Result<Option<OddoCertificate>> {
    if kind != CertificateKind::WeakOddism {
        psi.check_homomorphism(f, g)?;
    } else if psi.len() != f.n() || psi.0.iter().any(|&x| x >= g.n()) {
        return Err(Error::input("map does not match the graphs"));
    }
    let comps = components(g);
    let mut odd = Vec::new();
    let mut edges = Vec::new();
    for comp in &comps {
        let Some((o, e)) = dual_for_component(f, g, psi, comp) else {
            return Ok(None);
        };
        odd.extend(o);
        edges.extend(e);
    }
    edges.sort_unstable();
    let witness = witness_from(f, odd, edges);
    let connected_witness = if comps.len() == 1 {
        connected_part(f, psi, &witness, 0)
    } else {
        None
    };
    Ok(Some(OddoCertificate {
        kind,
        source: f.clone(),
        target: g.clone(),
        psi: psi.clone(),
        witness,
        connected_witness,
    }))
}

fn first_hom<T>(
    f: &Graph,
    g: &Graph,
    guard: &SearchGuard,
    mut probe: impl FnMut(&VertexMap) -> Option<T>,
) -> Result<Option<T>> {
    let mut seen = 0usize;
    let mut found = None;
    let mut refused = false;
    for_each_hom(f, g, |m| {
        seen += 1;
        if seen > guard.max_maps {
            refused = true;
            return ControlFlow::Break(());
        }
        match probe(&VertexMap(m.to_vec())) {
            Some(t) => {
                found = Some(t);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    if refused {
        return Err(Error::Guard {
            what: "candidate maps",
            limit: guard.max_maps,
            actual: seen,
        });
    }
    Ok(found)
}

/// A weak oddomorphism `F -> G` with witness, or `None` if none exists.
/// Disconnected targets are handled one component at a time.
pub fn find_weak_oddo(f: &Graph, g: &Graph) -> Result<Option<OddoCertificate>> {
    find_weak_oddo_with(f, g, &SearchGuard::default())
}

pub fn find_weak_oddo_with(f: &Graph, g: &Graph, guard: &SearchGuard) -> Result<Option<OddoCertificate>> {
    check_inputs(f, g, guard, false)?;
    first_hom(f, g, guard, |psi| {
        certificate_for_map(f, g, psi, CertificateKind::WeakOddomorphism).expect("psi is a homomorphism")
    })
}

/// An oddomorphism of the whole of `F` onto `G`.
pub fn find_oddomorphism(f: &Graph, g: &Graph) -> Result<Option<OddoCertificate>> {
    let guard = SearchGuard::default();
    check_inputs(f, g, &guard, false)?;
    first_hom(f, g, &guard, |psi| {
        let odd_set = check_oddomorphism(f, psi, g).ok()?;
        let cert = OddoCertificate {
            kind: CertificateKind::Oddomorphism,
            source: f.clone(),
            target: g.clone(),
            psi: psi.clone(),
            witness: Witness {
                vertices: (0..f.n()).collect(),
                edges: (0..f.m()).collect(),
                odd_set,
            },
            connected_witness: None,
        };
        Some(cert)
    })
}

/// A weak oddism `F -> G`: some map whose restriction to a subgraph of `F`
/// is an oddism. `F` may carry loops; `G` must be loopless and connected.
pub fn find_weak_oddism(f: &Graph, g: &Graph) -> Result<Option<OddoCertificate>> {
    let guard = SearchGuard::default();
    check_inputs(f, g, &guard, true)?;
    if g.n() == 0 || components(g).len() != 1 {
        return Err(Error::input("target must be nonempty and connected"));
    }
    let total = (g.n() as f64).powi(f.n() as i32);
    if total > guard.max_maps as f64 {
        return Err(Error::Guard {
            what: "candidate maps",
            limit: guard.max_maps,
            actual: total.min(usize::MAX as f64) as usize,
        });
    }
    let mut map = vec![0usize; f.n()];
    loop {
        let psi = VertexMap(map.clone());
        if let Some(c) = certificate_for_map(f, g, &psi, CertificateKind::WeakOddism)? {
            return Ok(Some(c));
        }
        // Next map in lexicographic order.
        let mut i = f.n();
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            map[i] += 1;
            if map[i] < g.n() {
                break;
            }
            map[i] = 0;
        }
    }
}

/// Drops edges inside fibres and edges between fibres over non-adjacent
/// vertices; `ψ` becomes a homomorphism from what is left.
pub fn oddism_to_oddomorphism(f: &Graph, psi: &VertexMap, g: &Graph) -> Graph {
    let keep: Vec<(usize, usize)> = f
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| g.adjacent(psi[a], psi[b]))
        .collect();
    Graph::from_edges(f.n(), keep).expect("subgraph of a valid graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_g01;
    use crate::graph::*;
    use crate::homcount::hom_count;

    #[test]
    fn cycles_into_cycles() {
        let c3 = cycle(3).unwrap();
        let c5 = cycle(5).unwrap();
        let cert = find_weak_oddo(&c5, &c3).unwrap().unwrap();
        assert_eq!(cert.verify(), Ok(()));
        assert!(cert.connected_witness.is_some());
        assert!(find_weak_oddo(&cycle(4).unwrap(), &c3).unwrap().is_none());
        assert!(find_weak_oddo(&c3, &c5).unwrap().is_none());
    }

    #[test]
    fn duality_on_small_pairs() {
        let targets: Vec<Graph> = enumerate_graphs(4, true).unwrap().collect();
        for g in &targets {
            let (g0, g1) = build_g01(g).unwrap();
            for f in enumerate_graphs(4, false).unwrap() {
                let h0 = hom_count(&f, &g0.graph).unwrap();
                let h1 = hom_count(&f, &g1.graph).unwrap();
                assert!(h1 <= h0);
                let cert = find_weak_oddo(&f, g).unwrap();
                assert_eq!(h0 > h1, cert.is_some(), "{f:?} -> {g:?}");
                if let Some(c) = cert {
                    assert_eq!(c.verify(), Ok(()));
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let cert = find_weak_oddo(&petersen(), &complete(3)).unwrap();
        if let Some(c) = cert {
            let back = OddoCertificate::from_json(&c.to_json()).unwrap();
            assert_eq!(back, c);
        }
        let c = find_weak_oddo(&cycle(7).unwrap(), &cycle(5).unwrap()).unwrap().unwrap();
        assert_eq!(OddoCertificate::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn tampered_certificates_fail() {
        let mut c = find_weak_oddo(&cycle(5).unwrap(), &cycle(3).unwrap()).unwrap().unwrap();
        c.witness.odd_set.pop();
        assert!(matches!(
            c.verify(),
            Err(super::super::Violation::OddSetMismatch { .. })
        ));
    }

    #[test]
    fn oddism_into_star() {
        // A looped vertex with two other neighbours maps onto K_{1,2}.
        let f = Graph::with_loops(3, [(0, 1), (0, 2)], [0]).unwrap();
        let c = find_weak_oddism(&f, &star(2)).unwrap().unwrap();
        assert_eq!(c.verify(), Ok(()));
        let f = Graph::with_loops(2, [(0, 1)], [0, 1]).unwrap();
        assert!(find_weak_oddism(&f, &star(2)).unwrap().is_none());
    }
}
