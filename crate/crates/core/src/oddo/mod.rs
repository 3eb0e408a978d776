//! Oddomorphisms, their weak and looped variants, and certificates.
//!
//! For a map `ψ: V(F) -> V(G)`, a vertex `a` of `F` is *odd* when every
//! neighbour `v` of `ψ(a)` in `G` sees an odd number of `F`-neighbours of `a`
//! in its fibre, and *even* when every such count is even. An oddomorphism is
//! a homomorphism in which every vertex is odd or even and every fibre holds an
//! odd number of odd vertices.

mod certificate;
mod search;
mod transform;

pub use certificate::*;
pub use search::*;
pub use transform::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMap};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityClassification {
    pub tags: Vec<Parity>,
}

impl ParityClassification {
    pub fn odd_set(&self) -> Vec<usize> {
        self.tags
            .iter()
            .enumerate()
            .filter(|(_, &t)| t == Parity::Odd)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_total(&self) -> bool {
        self.tags.iter().all(|&t| t != Parity::Neither)
    }
}

/// First clause of the definition that a map fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// Wrong length or an image out of range.
    MalformedMap,
    /// An edge of the source lands on a non-edge.
    NotHomomorphism { edge: (usize, usize) },
    /// Mixed parities at `vertex`: `odd_toward` sees an odd count, `even_toward` an even one.
    MixedParity {
        vertex: usize,
        odd_toward: usize,
        even_toward: usize,
    },
    /// The fibre over `target` holds an even number of odd vertices.
    EvenOddCount { target: usize, odd: usize },
    /// A declared odd set disagrees with the computed one.
    OddSetMismatch { vertex: usize },
    /// A witness is not a subgraph of the source, or is empty where it must not be.
    BadWitness(String),
    /// A witness that must be connected is not.
    Disconnected,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::MalformedMap => write!(f, "map has the wrong length or an out-of-range image"),
            Violation::NotHomomorphism { edge } => write!(f, "edge {edge:?} is not mapped to an edge"),
            Violation::MixedParity {
                vertex,
                odd_toward,
                even_toward,
            } => write!(
                f,
                "vertex {vertex} is neither odd nor even (odd toward {odd_toward}, even toward {even_toward})"
            ),
            Violation::EvenOddCount { target, odd } => {
                write!(f, "fibre over {target} has {odd} odd vertices, an even number")
            }
            Violation::OddSetMismatch { vertex } => write!(f, "declared odd set is wrong at vertex {vertex}"),
            Violation::BadWitness(m) => write!(f, "bad witness: {m}"),
            Violation::Disconnected => write!(f, "witness is not connected"),
        }
    }
}

fn check_map(f: &Graph, g: &Graph, psi: &VertexMap) -> std::result::Result<(), Violation> {
    if psi.len() != f.n() || psi.0.iter().any(|&x| x >= g.n()) {
        return Err(Violation::MalformedMap);
    }
    Ok(())
}

/// Per-vertex parity; the first offending pair is kept for error reports.
fn tags_with_reasons(f: &Graph, psi: &VertexMap, g: &Graph) -> Vec<(Parity, Option<(usize, usize)>)> {
    let fibre_of = psi.as_slice();
    (0..f.n())
        .map(|a| {
            let mut counts = vec![0usize; g.n()];
            for b in f.neighbors_iter(a) {
                counts[fibre_of[b]] += 1;
            }
            let mut odd_at = None;
            let mut even_at = None;
            for v in g.neighbors_iter(psi[a]) {
                if counts[v] % 2 == 1 {
                    odd_at.get_or_insert(v);
                } else {
                    even_at.get_or_insert(v);
                }
            }
            match (odd_at, even_at) {
                (Some(o), Some(e)) => (Parity::Neither, Some((o, e))),
                (_, Some(_)) => (Parity::Even, None),
                // No neighbours of the image at all: "odd" holds vacuously.
                _ => (Parity::Odd, None),
            }
        })
        .collect()
}

/// Classifies the vertices of `F` with respect to the spanning subgraph on
/// `witness_edges` (edge indices of `F`).
pub fn classify_parity(f: &Graph, witness_edges: &[usize], psi: &VertexMap, g: &Graph) -> Result<ParityClassification> {
    if let Some(&e) = witness_edges.iter().find(|&&e| e >= f.m()) {
        return Err(Error::input(format!("witness edge {e} is not an edge of F")));
    }
    check_map(f, g, psi).map_err(|v| Error::input(v.to_string()))?;
    let sub = f.spanning_subgraph(witness_edges)?;
    Ok(ParityClassification {
        tags: tags_with_reasons(&sub, psi, g).into_iter().map(|t| t.0).collect(),
    })
}

fn check_parities(f: &Graph, psi: &VertexMap, g: &Graph) -> std::result::Result<Vec<usize>, Violation> {
    let tags = tags_with_reasons(f, psi, g);
    if let Some((a, (_, Some((o, e))))) = tags.iter().enumerate().find(|(_, t)| t.0 == Parity::Neither) {
        return Err(Violation::MixedParity {
            vertex: a,
            odd_toward: *o,
            even_toward: *e,
        });
    }
    let mut odd_per_fibre = vec![0usize; g.n()];
    let mut odd = Vec::new();
    for (a, t) in tags.iter().enumerate() {
        if t.0 == Parity::Odd {
            odd_per_fibre[psi[a]] += 1;
            odd.push(a);
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| odd_per_fibre[v] % 2 == 0) {
        return Err(Violation::EvenOddCount {
            target: v,
            odd: odd_per_fibre[v],
        });
    }
    Ok(odd)
}

/// Checks the oddomorphism conditions; on success returns the odd set.
pub fn check_oddomorphism(f: &Graph, psi: &VertexMap, g: &Graph) -> std::result::Result<Vec<usize>, Violation> {
    check_map(f, g, psi)?;
    if let Some(&edge) = f.edges().iter().find(|&&(a, b)| !g.adjacent(psi[a], psi[b])) {
        return Err(Violation::NotHomomorphism { edge });
    }
    check_parities(f, psi, g)
}

pub fn is_oddomorphism(f: &Graph, psi: &VertexMap, g: &Graph) -> bool {
    check_oddomorphism(f, psi, g).is_ok()
}

/// Oddism conditions: `ψ` is any map; loops of `F` never count because `G`
/// is loopless, and edges onto non-edges of `G` are invisible to the counts.
pub fn check_oddism(f: &Graph, psi: &VertexMap, g: &Graph) -> std::result::Result<Vec<usize>, Violation> {
    check_map(f, g, psi)?;
    check_parities(f, psi, g)
}

pub fn is_oddism(f: &Graph, psi: &VertexMap, g: &Graph) -> bool {
    check_oddism(f, psi, g).is_ok()
}
