//! Certificate sidecars: an edge-json document listing the certificate's own
//! edges, tagged with its kind. Loading a sidecar as a plain graph yields the
//! certified spanning subgraph.

use serde::{Deserialize, Serialize};

use super::{GoodLinearForest, HamiltonCycle, HamiltonError, TwoFactor};
use crate::bigraph::{BipartiteGraph, Part, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Cycle,
    TwoFactor,
    Forest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Cycle(HamiltonCycle),
    TwoFactor(TwoFactor),
    Forest(GoodLinearForest),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub nx: usize,
    pub ny: usize,
    pub edges: Vec<[usize; 2]>,
    pub certificate: CertificateKind,
    /// Vertex sequences: the cycle, the factor's cycles, or the forest's paths.
    #[serde(default)]
    pub paths: Vec<Vec<Vertex>>,
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Certificate::Cycle(_) => CertificateKind::Cycle,
            Certificate::TwoFactor(_) => CertificateKind::TwoFactor,
            Certificate::Forest(_) => CertificateKind::Forest,
        }
    }

    pub fn verify(&self, g: &BipartiteGraph) -> Result<(), HamiltonError> {
        match self {
            Certificate::Cycle(c) => c.verify(g),
            Certificate::TwoFactor(f) => f.verify(g),
            Certificate::Forest(f) => f.verify(g),
        }
    }

    pub fn to_document(&self, host: &BipartiteGraph) -> CertificateDocument {
        let (mut edges, paths): (Vec<[usize; 2]>, Vec<Vec<Vertex>>) = match self {
            Certificate::Cycle(c) => (
                c.edges().into_iter().map(|(x, y)| [x, y]).collect(),
                vec![c.order.clone()],
            ),
            Certificate::TwoFactor(f) => (
                f.edges.iter().map(|&(x, y)| [x, y]).collect(),
                f.cycles(),
            ),
            Certificate::Forest(f) => (
                f.paths
                    .iter()
                    .flat_map(|p| p.windows(2).map(|w| xy(w[0], w[1])))
                    .collect(),
                f.paths.clone(),
            ),
        };
        edges.sort_unstable();
        CertificateDocument {
            nx: host.nx(),
            ny: host.ny(),
            edges,
            certificate: self.kind(),
            paths,
        }
    }

    pub fn from_document(doc: &CertificateDocument) -> Result<Self, HamiltonError> {
        let bad = |m: &str| HamiltonError::InvalidCertificate(m.to_string());
        Ok(match doc.certificate {
            CertificateKind::Cycle => {
                let [order] = doc.paths.as_slice() else {
                    return Err(bad("a cycle certificate carries exactly one path"));
                };
                Certificate::Cycle(HamiltonCycle::new(order.clone()))
            }
            CertificateKind::TwoFactor => Certificate::TwoFactor(TwoFactor {
                edges: doc.edges.iter().map(|&[x, y]| (x, y)).collect(),
            }),
            CertificateKind::Forest => {
                let ys: Vec<usize> = doc
                    .paths
                    .iter()
                    .flatten()
                    .filter(|v| v.part == Part::Y)
                    .map(|v| v.index)
                    .collect();
                let special: [usize; 3] = ys
                    .try_into()
                    .map_err(|_| bad("a forest certificate covers exactly 3 Y-vertices"))?;
                Certificate::Forest(GoodLinearForest {
                    paths: doc.paths.clone(),
                    special,
                })
            }
        })
    }
}

fn xy(a: Vertex, b: Vertex) -> [usize; 2] {
    if a.part == Part::X {
        [a.index, b.index]
    } else {
        [b.index, a.index]
    }
}
