//! Labeled oriented graphs and trees.
//!
//! A LOT edge `e: s -> t` with label `l` stands for the relation
//! `s l = l t`; its presentation complex has one vertex, one edge per LOT
//! vertex and one square `s l t- l-` per LOT edge.

mod biforest;
mod decide;
mod properties;
mod reduce;
mod sub;

pub use biforest::{bi_forest_orientation, zero_one_from_biforest, BiForestStructure, Sign};
pub use decide::{
    decide_locally_indicable, verify_li_tree, DecideOptions, LiCertificateTree, LiEvidence, LiNode,
    LiVerifyError, AMALGAM_AXIOM,
};
pub use properties::{check_properties, LotProperties, PropertyWitness};
pub use reduce::{reduce_lot, replay, ReductionLog, ReductionMove};
pub use sub::{
    boundary_reducible_sub_lot, enumerate_sub_lots, maximal_proper_sub_lot, quotient, Quotient,
    SubLot,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{build_complex, RawCell, RawComplex, RawEdge, TwoComplex};
use crate::dsu::Dsu;

/// Name of the single vertex of a LOT complex.
pub const BASE_VERTEX: &str = "v";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LotError {
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge {0}")]
    DuplicateEdge(String),
    #[error("edge {edge} references unknown {role} vertex {vertex}")]
    UnknownVertex {
        edge: String,
        role: &'static str,
        vertex: String,
    },
    #[error("not a tree")]
    NotATree,
    #[error("not a sub-LOT: {0}")]
    NotSubLot(String),
    #[error("collapse vertex is not unique: non-label vertices {0:?}")]
    AmbiguousCollapseVertex(Vec<String>),
    #[error("labels are not injective: {label} labels both {first} and {second}")]
    NotInjective {
        label: String,
        first: String,
        second: String,
    },
    #[error("{what} needs {size} but the search cap is {cap}")]
    SearchCapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("reduction move does not apply: {0}")]
    BadMove(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LotEdge {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub label: usize,
}

/// A labeled oriented graph; `is_tree` tells whether it is a LOT.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawLot", try_from = "RawLot")]
pub struct Lot {
    vertices: Vec<String>,
    edges: Vec<LotEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawLot {
    pub vertices: Vec<String>,
    pub edges: Vec<RawLotEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawLotEdge {
    pub name: String,
    pub source: String,
    pub target: String,
    pub label: String,
}

impl From<Lot> for RawLot {
    fn from(l: Lot) -> Self {
        RawLot {
            edges: l
                .edges
                .iter()
                .map(|e| RawLotEdge {
                    name: e.name.clone(),
                    source: l.vertices[e.source].clone(),
                    target: l.vertices[e.target].clone(),
                    label: l.vertices[e.label].clone(),
                })
                .collect(),
            vertices: l.vertices,
        }
    }
}

impl TryFrom<RawLot> for Lot {
    type Error = LotError;

    fn try_from(raw: RawLot) -> Result<Self, LotError> {
        let find = |edge: &str, role: &'static str, name: &str| {
            raw.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| LotError::UnknownVertex {
                    edge: edge.to_string(),
                    role,
                    vertex: name.to_string(),
                })
        };
        let edges = raw
            .edges
            .iter()
            .map(|e| {
                Ok(LotEdge {
                    name: e.name.clone(),
                    source: find(&e.name, "source", &e.source)?,
                    target: find(&e.name, "target", &e.target)?,
                    label: find(&e.name, "label", &e.label)?,
                })
            })
            .collect::<Result<Vec<_>, LotError>>()?;
        Lot::new(raw.vertices.clone(), edges)
    }
}

impl Lot {
    pub fn new(vertices: Vec<String>, edges: Vec<LotEdge>) -> Result<Self, LotError> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(LotError::DuplicateVertex(v.clone()));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if edges[..i].iter().any(|o| o.name == e.name) {
                return Err(LotError::DuplicateEdge(e.name.clone()));
            }
            for (role, v) in [
                ("source", e.source),
                ("target", e.target),
                ("label", e.label),
            ] {
                if v >= vertices.len() {
                    return Err(LotError::UnknownVertex {
                        edge: e.name.clone(),
                        role,
                        vertex: v.to_string(),
                    });
                }
            }
        }
        Ok(Lot { vertices, edges })
    }

    /// Builds from `(name, source, target, label)` name tuples.
    pub fn from_names(
        vertices: &[&str],
        edges: &[(&str, &str, &str, &str)],
    ) -> Result<Self, LotError> {
        RawLot {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(n, s, t, l)| RawLotEdge {
                    name: n.to_string(),
                    source: s.to_string(),
                    target: t.to_string(),
                    label: l.to_string(),
                })
                .collect(),
        }
        .try_into()
    }

    pub fn single_vertex(name: &str) -> Self {
        Lot {
            vertices: vec![name.to_string()],
            edges: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[LotEdge] {
        &self.edges
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_id(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn valency(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.source == v) as usize + (e.target == v) as usize)
            .sum()
    }

    pub fn is_label(&self, v: usize) -> bool {
        self.edges.iter().any(|e| e.label == v)
    }

    pub fn is_connected(&self) -> bool {
        let mut d = Dsu::new(self.vertices.len());
        for e in &self.edges {
            d.union(e.source, e.target);
        }
        (1..self.vertices.len()).all(|v| d.same(0, v))
    }

    pub fn is_tree(&self) -> bool {
        !self.vertices.is_empty()
            && self.edges.len() + 1 == self.vertices.len()
            && self.is_connected()
    }

    pub fn require_tree(&self) -> Result<(), LotError> {
        if self.is_tree() {
            Ok(())
        } else {
            Err(LotError::NotATree)
        }
    }

    /// First pair of edges sharing a label.
    pub fn repeated_label(&self) -> Option<(usize, usize)> {
        (0..self.edges.len()).find_map(|j| {
            (0..j)
                .find(|i| self.edges[*i].label == self.edges[j].label)
                .map(|i| (i, j))
        })
    }

    pub fn is_injective(&self) -> bool {
        self.repeated_label().is_none()
    }

    pub fn require_injective(&self) -> Result<(), LotError> {
        match self.repeated_label() {
            None => Ok(()),
            Some((i, j)) => Err(LotError::NotInjective {
                label: self.vertices[self.edges[i].label].clone(),
                first: self.edges[i].name.clone(),
                second: self.edges[j].name.clone(),
            }),
        }
    }

    /// The sub-LOG on `vertices` (sorted indices) using `edges`.
    pub fn restrict(&self, vertices: &[usize], edges: &[usize]) -> Lot {
        let index = |v: usize| {
            vertices
                .iter()
                .position(|w| *w == v)
                .expect("vertex in subset")
        };
        Lot {
            vertices: vertices.iter().map(|v| self.vertices[*v].clone()).collect(),
            edges: edges
                .iter()
                .map(|e| {
                    let e = &self.edges[*e];
                    LotEdge {
                        name: e.name.clone(),
                        source: index(e.source),
                        target: index(e.target),
                        label: index(e.label),
                    }
                })
                .collect(),
        }
    }

    /// Edge `name` in `s -> t (label)` form.
    pub fn edge_text(&self, e: usize) -> String {
        let e = &self.edges[e];
        format!(
            "{}: {} -> {} ({})",
            e.name, self.vertices[e.source], self.vertices[e.target], self.vertices[e.label]
        )
    }
}

/// The presentation complex: one vertex, an edge per LOT vertex, and a
/// square `s l t- l-` per LOT edge.
pub fn lot_complex(l: &Lot) -> TwoComplex {
    let raw = RawComplex {
        vertices: vec![BASE_VERTEX.to_string()],
        edges: l
            .vertices
            .iter()
            .map(|v| RawEdge {
                name: v.clone(),
                source: BASE_VERTEX.to_string(),
                target: BASE_VERTEX.to_string(),
            })
            .collect(),
        cells: l
            .edges
            .iter()
            .map(|e| {
                let (s, t, lab) = (
                    &l.vertices[e.source],
                    &l.vertices[e.target],
                    &l.vertices[e.label],
                );
                RawCell {
                    name: e.name.clone(),
                    boundary: vec![s.clone(), lab.clone(), format!("{t}-"), format!("{lab}-")],
                }
            })
            .collect(),
    };
    build_complex(&raw).expect("LOT complexes are well formed")
}

/// A vertex bijection `a -> b` preserving sources, targets and labels of
/// edges, or `None`. Edge names are ignored.
pub fn lot_isomorphism(a: &Lot, b: &Lot) -> Option<Vec<usize>> {
    let n = a.vertices.len();
    if n != b.vertices.len() || a.edges.len() != b.edges.len() {
        return None;
    }
    let signature = |l: &Lot, v: usize| {
        let out = l.edges.iter().filter(|e| e.source == v).count();
        let inn = l.edges.iter().filter(|e| e.target == v).count();
        let lab = l.edges.iter().filter(|e| e.label == v).count();
        (out, inn, lab)
    };
    let sa: Vec<_> = (0..n).map(|v| signature(a, v)).collect();
    let sb: Vec<_> = (0..n).map(|v| signature(b, v)).collect();
    let mut b_edges: Vec<(usize, usize, usize)> = b
        .edges
        .iter()
        .map(|e| (e.source, e.target, e.label))
        .collect();
    b_edges.sort_unstable();

    fn go(
        a: &Lot,
        sa: &[(usize, usize, usize)],
        sb: &[(usize, usize, usize)],
        b_edges: &[(usize, usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let v = map.len();
        if v == sa.len() {
            let mut image: Vec<_> = a
                .edges
                .iter()
                .map(|e| (map[e.source], map[e.target], map[e.label]))
                .collect();
            image.sort_unstable();
            return image == b_edges;
        }
        for w in 0..sb.len() {
            if used[w] || sa[v] != sb[w] {
                continue;
            }
            map.push(w);
            used[w] = true;
            // every edge whose three ends are now mapped must exist in b
            let consistent = a.edges.iter().all(|e| {
                let m = map.len();
                if e.source >= m || e.target >= m || e.label >= m {
                    return true;
                }
                b_edges
                    .binary_search(&(map[e.source], map[e.target], map[e.label]))
                    .is_ok()
            });
            if consistent && go(a, sa, sb, b_edges, map, used) {
                return true;
            }
            map.pop();
            used[w] = false;
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    go(a, &sa, &sb, &b_edges, &mut map, &mut used).then_some(map)
}

pub fn is_isomorphic(a: &Lot, b: &Lot) -> bool {
    lot_isomorphism(a, b).is_some()
}
