//! Winding numbers of closed walks over a cycle target, and extraction of a
//! chordless cycle that winds an odd number of times.
//!
//! Targets are `C_k` labelled `0..k` with `i ~ i+1 mod k`. A step from `a` to
//! `b` has length `+1` when `ψ(b) = ψ(a) + 1` and `-1` when `ψ(b) = ψ(a) - 1`;
//! a closed walk of total length `m·k` winds `m` times.

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::{all_cycles, cycle, is_chordless_cycle, Graph, VertexMap};
use crate::oddo::{check_oddomorphism, CertificateKind, OddoCertificate};
use serde::Serialize;

/// A closed walk `v_0, ..., v_{l-1}` with steps `v_i -> v_{i+1}` and `v_{l-1} -> v_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Walk {
    pub vertices: Vec<usize>,
}

impl Walk {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let l = self.vertices.len();
        (0..l).map(move |i| (self.vertices[i], self.vertices[(i + 1) % l]))
    }
}

fn step_sign(psi: &VertexMap, k: usize, a: usize, b: usize) -> Result<i64> {
    let (x, y) = (psi[a], psi[b]);
    if y == (x + 1) % k {
        Ok(1)
    } else if x == (y + 1) % k {
        Ok(-1)
    } else {
        Err(Error::input(format!("step {a}->{b} does not follow an edge of C_{k}")))
    }
}

/// Sum of step lengths of a closed walk in `f`.
pub fn psi_length(f: &Graph, walk: &Walk, psi: &VertexMap, k: usize) -> Result<i64> {
    let mut total = 0;
    for (a, b) in walk.steps() {
        if !f.adjacent(a, b) {
            return Err(Error::input(format!("({a},{b}) is not an edge")));
        }
        total += step_sign(psi, k, a, b)?;
    }
    Ok(total)
}

/// A closed walk with its winding number and, per target edge `i -> i+1`, the
/// number of forward and backward traversals.
#[derive(Clone, Debug, Serialize)]
pub struct TourWitness {
    pub walk: Walk,
    pub winding: i64,
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
}

fn tally(walk: Walk, psi: &VertexMap, k: usize) -> Result<TourWitness> {
    let mut forward = vec![0usize; k];
    let mut backward = vec![0usize; k];
    let mut total = 0i64;
    for (a, b) in walk.steps() {
        let s = step_sign(psi, k, a, b)?;
        total += s;
        if s == 1 {
            forward[psi[a]] += 1;
        } else {
            backward[psi[b]] += 1;
        }
    }
    let winding = total / k as i64;
    debug_assert_eq!(winding * k as i64, total);
    debug_assert!((0..k).all(|i| forward[i] as i64 - backward[i] as i64 == winding));
    Ok(TourWitness {
        walk,
        winding,
        forward,
        backward,
    })
}

fn check_cycle_target(f: &Graph, psi: &VertexMap, k: usize) -> Result<Vec<usize>> {
    let ck = cycle(k)?;
    check_oddomorphism(f, psi, &ck).map_err(|v| Error::input(format!("not an oddomorphism onto C_{k}: {v}")))
}

/// A nonempty closed trail from an odd vertex over `0`, built by the status
/// walk: odd-status vertices are passed straight through (and become even),
/// even-status vertices turn the walk around, unused edges only, lowest
/// neighbour first, stopping on re-entering the start from the fibre over `k-1`.
pub fn find_tour_nonzero(f: &Graph, psi: &VertexMap, k: usize) -> Result<TourWitness> {
    let odd = BitSet::from_indices(f.n(), check_cycle_target(f, psi, k)?);
    let start = (0..f.n())
        .find(|&a| psi[a] == 0 && odd.contains(a))
        .expect("every fibre of an oddomorphism has an odd vertex");
    let mut status = odd;
    let mut used = BitSet::new(f.m());
    let mut walk = vec![start];
    let mut cur = start;
    let mut dir: i64 = 1;
    status.remove(start);
    for _ in 0..=f.m() {
        let want = (psi[cur] as i64 + dir).rem_euclid(k as i64) as usize;
        let next = f
            .neighbors_iter(cur)
            .find(|&b| psi[b] == want && !used.contains(f.edge_index(cur, b).expect("edge")))
            .ok_or_else(|| Error::input(format!("status walk stuck at vertex {cur}")))?;
        used.insert(f.edge_index(cur, next).expect("edge"));
        let from = psi[cur];
        cur = next;
        if cur == start && from == k - 1 && psi[cur] == 0 {
            return tally(Walk { vertices: walk }, psi, k);
        }
        walk.push(cur);
        if status.contains(cur) {
            status.remove(cur);
        } else {
            dir = -dir;
        }
    }
    Err(Error::input("status walk did not close"))
}

/// Repeatedly peels off tours of even winding until one of odd winding appears.
pub fn find_odd_winding_tour(f: &Graph, psi: &VertexMap, k: usize) -> Result<TourWitness> {
    let mut cur = f.clone();
    loop {
        let t = find_tour_nonzero(&cur, psi, k)?;
        if t.winding % 2 != 0 {
            return Ok(t);
        }
        let ids: Vec<usize> = t
            .walk
            .steps()
            .map(|(a, b)| cur.edge_index(a, b).expect("tour edge"))
            .collect();
        cur = cur.remove_edges(&ids);
    }
}

/// Result of [`extract_chordless_odd_cycle`].
#[derive(Clone, Debug, Serialize)]
pub struct OddCycle {
    pub cycle: Vec<usize>,
    pub winding: i64,
    pub k: usize,
}

impl OddCycle {
    /// Chordless in `f`, odd winding, length at least `k` and of the same
    /// parity, and some step over every edge of `C_k`.
    pub fn check(&self, f: &Graph, psi: &VertexMap) -> std::result::Result<(), String> {
        let k = self.k;
        let l = self.cycle.len();
        if !is_chordless_cycle(f, &self.cycle) {
            return Err("not a chordless cycle".into());
        }
        let w = Walk {
            vertices: self.cycle.clone(),
        };
        let len = psi_length(f, &w, psi, k).map_err(|e| e.to_string())?;
        if len != self.winding * k as i64 || self.winding % 2 == 0 {
            return Err(format!("winding {} with length {len}", self.winding));
        }
        if l < k || l % 2 != k % 2 {
            return Err(format!("length {l} against k={k}"));
        }
        let mut covered = vec![false; k];
        for (a, b) in w.steps() {
            let (x, y) = (psi[a], psi[b]);
            covered[if y == (x + 1) % k { x } else { y }] = true;
        }
        if let Some(i) = covered.iter().position(|&c| !c) {
            return Err(format!("target edge {i}-{} not covered", (i + 1) % k));
        }
        Ok(())
    }
}

fn winding_of(f: &Graph, w: &[usize], psi: &VertexMap, k: usize) -> i64 {
    psi_length(f, &Walk { vertices: w.to_vec() }, psi, k).expect("closed walk in f") / k as i64
}

/// Shortens a closed walk of odd winding until it is a chordless cycle.
fn shorten(f: &Graph, mut w: Vec<usize>, psi: &VertexMap, k: usize) -> Vec<usize> {
    'outer: loop {
        let l = w.len();
        // Split at a repeated vertex.
        for i in 0..l {
            for j in i + 1..l {
                if w[i] == w[j] {
                    let inner = w[i..j].to_vec();
                    let mut outer = w[..i].to_vec();
                    outer.extend_from_slice(&w[j..]);
                    w = if winding_of(f, &inner, psi, k) % 2 != 0 {
                        inner
                    } else {
                        outer
                    };
                    continue 'outer;
                }
            }
        }
        // Split at a chord.
        for i in 0..l {
            for j in i + 2..l {
                if (i == 0 && j == l - 1) || !f.adjacent(w[i], w[j]) {
                    continue;
                }
                let mut outer = w[..=i].to_vec();
                outer.extend_from_slice(&w[j..]);
                let inner = w[i..=j].to_vec();
                w = if winding_of(f, &inner, psi, k) % 2 != 0 {
                    inner
                } else {
                    outer
                };
                continue 'outer;
            }
        }
        return w;
    }
}

/// From a certificate onto `C_k`, a chordless cycle of the source with odd
/// winding.
pub fn extract_chordless_odd_cycle(cert: &OddoCertificate) -> Result<OddCycle> {
    if cert.kind == CertificateKind::WeakOddism {
        return Err(Error::input("cycle extraction needs a homomorphism"));
    }
    let k = cert.target.n();
    if k < 3 || cert.target != cycle(k)? {
        return Err(Error::input(
            "certificate target must be C_k labelled 0..k in cyclic order",
        ));
    }
    cert.verify()
        .map_err(|v| Error::input(format!("certificate fails verification: {v}")))?;
    let w = cert.connected_witness.as_ref().unwrap_or(&cert.witness);
    let (sub, sub_psi) = w.restrict(&cert.source, &cert.psi)?;
    let tour = find_odd_winding_tour(&sub, &sub_psi, k)?;
    let walk: Vec<usize> = tour.walk.vertices.iter().map(|&i| w.vertices[i]).collect();
    let cyc = shorten(&cert.source, walk, &cert.psi, k);
    let winding = winding_of(&cert.source, &cyc, &cert.psi, k);
    let out = OddCycle { cycle: cyc, winding, k };
    out.check(&cert.source, &cert.psi).map_err(Error::InvalidInput)?;
    Ok(out)
}

/// A pattern graph `R` with, per vertex, a chordless flag and a minimum length.
#[derive(Clone, Debug)]
pub struct CycleStructureSpec {
    pub pattern: Graph,
    pub chordless: Vec<bool>,
    pub min_len: Vec<usize>,
}

/// Distinct cycles `C_u` (one per pattern vertex) with length at least
/// `min_len[u]` and of the same parity, chordless where flagged, and
/// vertex-disjoint along pattern edges.
pub fn has_cycle_structure(g: &Graph, spec: &CycleStructureSpec) -> Result<Option<Vec<Vec<usize>>>> {
    let r = &spec.pattern;
    if spec.chordless.len() != r.n() || spec.min_len.len() != r.n() {
        return Err(Error::param("one flag and one length per pattern vertex"));
    }
    let cycles = all_cycles(g, 200_000)?;
    let sets: Vec<BitSet> = cycles
        .iter()
        .map(|c| BitSet::from_indices(g.n(), c.iter().copied()))
        .collect();
    let chordless: Vec<bool> = cycles.iter().map(|c| is_chordless_cycle(g, c)).collect();
    let cands: Vec<Vec<usize>> = (0..r.n())
        .map(|u| {
            (0..cycles.len())
                .filter(|&i| {
                    let l = cycles[i].len();
                    l >= spec.min_len[u] && l % 2 == spec.min_len[u] % 2 && (!spec.chordless[u] || chordless[i])
                })
                .collect()
        })
        .collect();
    fn go(u: usize, r: &Graph, cands: &[Vec<usize>], sets: &[BitSet], pick: &mut Vec<usize>) -> bool {
        if u == r.n() {
            return true;
        }
        for &c in &cands[u] {
            if pick.contains(&c) {
                continue;
            }
            if r.neighbors_iter(u)
                .filter(|&x| x < u)
                .any(|x| !sets[pick[x]].is_disjoint(&sets[c]))
            {
                continue;
            }
            pick.push(c);
            if go(u + 1, r, cands, sets, pick) {
                return true;
            }
            pick.pop();
        }
        false
    }
    let mut pick = Vec::new();
    Ok(go(0, r, &cands, &sets, &mut pick).then(|| pick.iter().map(|&i| cycles[i].clone()).collect()))
}
