use super::{check_map, check_oddism, check_oddomorphism, Violation};
use crate::error::{Error, Result};
use crate::graph::{is_connected, Graph, GraphData, VertexMap};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    /// The whole source is the witness.
    Oddomorphism,
    /// A homomorphism whose restriction to the witness is an oddomorphism.
    WeakOddomorphism,
    /// Any map whose restriction to the witness is an oddism.
    WeakOddism,
}

/// A subgraph of the source: sorted vertex ids, edge indices of the source,
/// and the vertices that are odd in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub odd_set: Vec<usize>,
}

impl Witness {
    /// The witness as a graph in its own labels, with the restricted map.
    pub fn restrict(&self, source: &Graph, psi: &VertexMap) -> Result<(Graph, VertexMap)> {
        let g = source.subgraph(&self.vertices, &self.edges)?;
        let map = VertexMap(self.vertices.iter().map(|&a| psi[a]).collect());
        Ok((g, map))
    }
}

/// Self-contained evidence that a source graph maps to a target graph with
/// the stated parity structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddoCertificate {
    pub kind: CertificateKind,
    pub source: Graph,
    pub target: Graph,
    pub psi: VertexMap,
    pub witness: Witness,
    /// A connected witness, present when the target is connected.
    pub connected_witness: Option<Witness>,
}

fn check_witness(
    kind: CertificateKind,
    source: &Graph,
    target: &Graph,
    psi: &VertexMap,
    w: &Witness,
) -> std::result::Result<(), Violation> {
    let increasing = |v: &[usize]| v.windows(2).all(|p| p[0] < p[1]);
    if !increasing(&w.vertices) || !increasing(&w.edges) || !increasing(&w.odd_set) {
        return Err(Violation::BadWitness("lists must be strictly increasing".into()));
    }
    let (sub, map) = w
        .restrict(source, psi)
        .map_err(|e| Violation::BadWitness(e.to_string()))?;
    let odd_local = match kind {
        CertificateKind::WeakOddism => check_oddism(&sub, &map, target)?,
        _ => check_oddomorphism(&sub, &map, target)?,
    };
    let actual: BTreeSet<usize> = odd_local.iter().map(|&i| w.vertices[i]).collect();
    let declared: BTreeSet<usize> = w.odd_set.iter().copied().collect();
    if let Some(&vertex) = actual.symmetric_difference(&declared).next() {
        return Err(Violation::OddSetMismatch { vertex });
    }
    Ok(())
}

impl OddoCertificate {
    /// Re-checks every clause from scratch.
    pub fn verify(&self) -> std::result::Result<(), Violation> {
        check_map(&self.source, &self.target, &self.psi)?;
        match self.kind {
            CertificateKind::Oddomorphism => {
                let all: Vec<usize> = (0..self.source.n()).collect();
                let edges: Vec<usize> = (0..self.source.m()).collect();
                if self.witness.vertices != all || self.witness.edges != edges {
                    return Err(Violation::BadWitness(
                        "an oddomorphism witness is the whole source".into(),
                    ));
                }
            }
            CertificateKind::WeakOddomorphism => {
                if let Some(&edge) = self
                    .source
                    .edges()
                    .iter()
                    .find(|&&(a, b)| !self.target.adjacent(self.psi[a], self.psi[b]))
                {
                    return Err(Violation::NotHomomorphism { edge });
                }
            }
            CertificateKind::WeakOddism => {}
        }
        check_witness(self.kind, &self.source, &self.target, &self.psi, &self.witness)?;
        if let Some(c) = &self.connected_witness {
            check_witness(self.kind, &self.source, &self.target, &self.psi, c)?;
            let (sub, _) = c
                .restrict(&self.source, &self.psi)
                .map_err(|e| Violation::BadWitness(e.to_string()))?;
            if !is_connected(&sub) {
                return Err(Violation::Disconnected);
            }
        }
        Ok(())
    }

    /// The witness subgraph with the restricted map.
    pub fn witness_graph(&self) -> (Graph, VertexMap) {
        self.witness
            .restrict(&self.source, &self.psi)
            .expect("certificate witness is a subgraph")
    }

    pub fn to_data(&self) -> CertificateData {
        CertificateData {
            schema_version: 1,
            kind: self.kind,
            source: self.source.to_data(),
            target: self.target.to_data(),
            psi: self.psi.clone(),
            y_support: self.witness.odd_set.clone(),
            z_support: self.edge_pairs(&self.witness.edges),
            witness_vertices: self.witness.vertices.clone(),
            connected_witness: self.connected_witness.as_ref().map(|w| WitnessData {
                vertices: w.vertices.clone(),
                edges: self.edge_pairs(&w.edges),
                odd_set: w.odd_set.clone(),
            }),
        }
    }

    fn edge_pairs(&self, ids: &[usize]) -> Vec<[usize; 2]> {
        ids.iter()
            .map(|&e| {
                let (a, b) = self.source.edges()[e];
                [a, b]
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_data()).expect("certificate serialises")
    }

    /// Parses and structurally validates a certificate. Parity clauses are
    /// left to [`OddoCertificate::verify`].
    pub fn from_json(s: &str) -> Result<OddoCertificate> {
        let d: CertificateData = serde_json::from_str(s).map_err(|e| Error::input(format!("certificate JSON: {e}")))?;
        OddoCertificate::from_data(&d)
    }

    pub fn from_data(d: &CertificateData) -> Result<OddoCertificate> {
        if d.schema_version != 1 {
            return Err(Error::input(format!("unsupported schema version {}", d.schema_version)));
        }
        let source = Graph::from_data(&d.source)?;
        let target = Graph::from_data(&d.target)?;
        let ids = |pairs: &[[usize; 2]]| -> Result<Vec<usize>> {
            let mut v = pairs
                .iter()
                .map(|p| {
                    source
                        .edge_index(p[0], p[1])
                        .ok_or_else(|| Error::input(format!("witness edge {p:?} is not an edge of the source")))
                })
                .collect::<Result<Vec<_>>>()?;
            v.sort_unstable();
            Ok(v)
        };
        let witness = Witness {
            vertices: d.witness_vertices.clone(),
            edges: ids(&d.z_support)?,
            odd_set: d.y_support.clone(),
        };
        let connected_witness = match &d.connected_witness {
            Some(w) => Some(Witness {
                vertices: w.vertices.clone(),
                edges: ids(&w.edges)?,
                odd_set: w.odd_set.clone(),
            }),
            None => None,
        };
        Ok(OddoCertificate {
            kind: d.kind,
            source,
            target,
            psi: d.psi.clone(),
            witness,
            connected_witness,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessData {
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
    pub odd_set: Vec<usize>,
}

/// JSON form. `y_support` is the odd set and `z_support` the witness edges,
/// i.e. the supports of the two halves of the dual solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateData {
    pub schema_version: u32,
    pub kind: CertificateKind,
    pub source: GraphData,
    pub target: GraphData,
    pub psi: VertexMap,
    pub y_support: Vec<usize>,
    pub z_support: Vec<[usize; 2]>,
    pub witness_vertices: Vec<usize>,
    pub connected_witness: Option<WitnessData>,
}
