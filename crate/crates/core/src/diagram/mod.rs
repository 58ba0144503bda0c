//! Spherical diagrams over a 2-complex: validation, folding edges,
//! pulled-back curvature and a bounded search for reduced diagrams.
//!
//! A face is mapped to a cell by a rotation and an orientation. With
//! orientation `+` face letter `k` carries the label of cell letter
//! `(r + k) mod n`; with `-` the face reads the inverse cell word, so face
//! letter `k` corresponds to cell letter `n - 1 - ((r + k) mod n)` inverted.

mod search;

pub use search::{enumerate_diagrams, search_reduced_diagram, SearchOptions};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{split_letter, CellId, CornerRef, EdgeId, SignedEdge, TwoComplex};
use crate::curvature::{AngleAssignment, CurvatureError, CurvatureReport, NamedValue};
use crate::dsu::Dsu;
use crate::rational::{int, Q};
use crate::verdict::{TestVerdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("duplicate face id {0}")]
    DuplicateFace(String),
    #[error("face {0} has an empty boundary")]
    EmptyFace(String),
    #[error("sphere edge {0} has no label")]
    MissingLabel(String),
    #[error("label {label} of sphere edge {edge} is not an edge of the complex")]
    UnknownLabel { edge: String, label: String },
    #[error("label given for unknown sphere edge {0}")]
    UnknownSphereEdge(String),
    #[error("face {0} has no cell")]
    MissingFaceMap(String),
    #[error("cell map given for unknown face {0}")]
    UnknownFace(String),
    #[error("face {face} maps to unknown cell {cell}")]
    UnknownCell { face: String, cell: String },
    #[error("face {face} has {face_len} letters but cell {cell} has {cell_len}")]
    LengthMismatch {
        face: String,
        cell: String,
        face_len: usize,
        cell_len: usize,
    },
    #[error("rotation {rotation} out of range for face {face}")]
    RotationOutOfRange { face: String, rotation: usize },
    #[error("ill-formed map: face {face} letter {position} is labeled {found} but the cell reads {expected}")]
    IllFormedMap {
        face: String,
        position: usize,
        expected: String,
        found: String,
    },
    #[error("sphere vertex {0} maps to several vertices of the complex")]
    InconsistentVertex(usize),
    #[error("not a sphere: {0:?}")]
    NotASphere(Box<Witness>),
    #[error("search with {requested} faces exceeds the cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereFace {
    pub id: String,
    /// Letters over sphere edge indices.
    pub boundary: Vec<SignedEdge>,
}

/// A cell structure on a closed surface given by face boundary words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereComplex {
    edges: Vec<String>,
    faces: Vec<SphereFace>,
}

/// Position of a letter within the faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Side {
    pub face: usize,
    pub position: usize,
}

impl SphereComplex {
    /// Builds from `(face id, letters)`; sphere edges are numbered in order
    /// of first appearance.
    pub fn new(faces: &[(String, Vec<String>)]) -> Result<Self, DiagramError> {
        let mut edges: Vec<String> = Vec::new();
        let mut out = Vec::with_capacity(faces.len());
        for (i, (id, word)) in faces.iter().enumerate() {
            if faces[..i].iter().any(|(o, _)| o == id) {
                return Err(DiagramError::DuplicateFace(id.clone()));
            }
            if word.is_empty() {
                return Err(DiagramError::EmptyFace(id.clone()));
            }
            let boundary = word
                .iter()
                .map(|letter| {
                    let (name, inverse) = split_letter(letter);
                    let edge = match edges.iter().position(|e| e == name) {
                        Some(e) => e,
                        None => {
                            edges.push(name.to_string());
                            edges.len() - 1
                        }
                    };
                    SignedEdge { edge, inverse }
                })
                .collect();
            out.push(SphereFace {
                id: id.clone(),
                boundary,
            });
        }
        Ok(SphereComplex { edges, faces: out })
    }

    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn faces(&self) -> &[SphereFace] {
        &self.faces
    }

    pub fn letter_name(&self, l: SignedEdge) -> String {
        if l.inverse {
            format!("{}-", self.edges[l.edge])
        } else {
            self.edges[l.edge].clone()
        }
    }

    pub fn face_words(&self) -> Vec<(String, Vec<String>)> {
        self.faces
            .iter()
            .map(|f| {
                (
                    f.id.clone(),
                    f.boundary.iter().map(|l| self.letter_name(*l)).collect(),
                )
            })
            .collect()
    }

    fn corner_offsets(&self) -> (Vec<usize>, usize) {
        let mut offsets = Vec::with_capacity(self.faces.len());
        let mut total = 0;
        for f in &self.faces {
            offsets.push(total);
            total += f.boundary.len();
        }
        (offsets, total)
    }

    /// The `+` and `-` occurrence of every edge, if each occurs exactly once
    /// with each sign; otherwise the first offending edge and its counts.
    pub fn edge_sides(&self) -> Result<Vec<(Side, Side)>, (usize, usize, usize)> {
        let mut plus: Vec<Vec<Side>> = vec![Vec::new(); self.edges.len()];
        let mut minus: Vec<Vec<Side>> = vec![Vec::new(); self.edges.len()];
        for (face, f) in self.faces.iter().enumerate() {
            for (position, l) in f.boundary.iter().enumerate() {
                let side = Side { face, position };
                if l.inverse {
                    minus[l.edge].push(side);
                } else {
                    plus[l.edge].push(side);
                }
            }
        }
        (0..self.edges.len())
            .map(|e| match (&plus[e][..], &minus[e][..]) {
                ([p], [m]) => Ok((*p, *m)),
                (p, m) => Err((e, p.len(), m.len())),
            })
            .collect()
    }

    /// Vertex class of every face corner (corner `k` of a face sits between
    /// letters `k` and `k + 1`), given a valid edge pairing.
    fn vertex_classes(&self, sides: &[(Side, Side)]) -> (Vec<usize>, usize) {
        let (offsets, total) = self.corner_offsets();
        let corner = |face: usize, k: isize| {
            let n = self.faces[face].boundary.len() as isize;
            offsets[face] + k.rem_euclid(n) as usize
        };
        let mut dsu = Dsu::new(total);
        for (p, m) in sides {
            let (i, j) = (p.position as isize, m.position as isize);
            // head of the edge: after the + letter, before the - letter
            dsu.union(corner(p.face, i), corner(m.face, j - 1));
            // tail: before the + letter, after the - letter
            dsu.union(corner(p.face, i - 1), corner(m.face, j));
        }
        let labels = dsu.labels();
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        (labels, count)
    }

    pub fn euler_characteristic(&self) -> Option<i64> {
        let sides = self.edge_sides().ok()?;
        let (_, v) = self.vertex_classes(&sides);
        Some(v as i64 - self.edges.len() as i64 + self.faces.len() as i64)
    }
}

/// Edge pairing with opposite signs, connectivity and `chi = 2`.
pub fn validate_sphere(s: &SphereComplex) -> TestVerdict {
    let sides = match s.edge_sides() {
        Ok(sides) => sides,
        Err((e, plus, minus)) => {
            return TestVerdict::fail(Witness::EdgePairing {
                edge: s.edges[e].clone(),
                plus,
                minus,
            })
        }
    };
    let mut faces = Dsu::new(s.faces.len());
    for (p, m) in &sides {
        faces.union(p.face, m.face);
    }
    let components = faces.labels().into_iter().max().map_or(0, |m| m + 1);
    if components != 1 {
        return TestVerdict::fail(Witness::Disconnected { components });
    }
    let (_, v) = s.vertex_classes(&sides);
    let chi = v as i64 - s.edges.len() as i64 + s.faces.len() as i64;
    if chi != 2 {
        return TestVerdict::fail(Witness::EulerCharacteristic { chi });
    }
    TestVerdict::pass()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaceMap {
    pub cell: CellId,
    pub rotation: usize,
    pub orientation: Orientation,
}

impl FaceMap {
    /// Cell letter index and label of face letter `k`.
    fn letter(&self, x: &TwoComplex, k: usize) -> (usize, SignedEdge) {
        let w = &x.cells()[self.cell].boundary;
        let n = w.len();
        let m = (self.rotation + k) % n;
        match self.orientation {
            Orientation::Plus => (m, w[m]),
            Orientation::Minus => (n - 1 - m, w[n - 1 - m].inv()),
        }
    }

    /// Cell corner under face corner `k`, and whether its sides are swapped.
    fn corner(&self, x: &TwoComplex, k: usize) -> (CornerRef, bool) {
        let n = x.cells()[self.cell].boundary.len();
        let m = (self.rotation + k) % n;
        match self.orientation {
            Orientation::Plus => (
                CornerRef {
                    cell: self.cell,
                    position: m,
                },
                false,
            ),
            Orientation::Minus => (
                CornerRef {
                    cell: self.cell,
                    position: (2 * n - 2 - m) % n,
                },
                true,
            ),
        }
    }
}

/// A combinatorial map from a sphere to a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramMap {
    /// Complex edge per sphere edge.
    pub labels: Vec<EdgeId>,
    /// Cell, rotation and orientation per face.
    pub faces: Vec<FaceMap>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub sphere: SphereComplex,
    pub map: DiagramMap,
}

/// JSON form: face words over sphere edge names, edge labels and the cell
/// map, keyed by names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDiagram {
    pub faces: Vec<RawFace>,
    pub labels: BTreeMap<String, String>,
    pub cellmap: BTreeMap<String, RawFaceMap>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFace {
    pub id: String,
    pub boundary: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFaceMap {
    pub cell: String,
    pub rotation: usize,
    pub orientation: Orientation,
}

impl Diagram {
    /// Resolves names and checks that the map commutes with boundaries.
    pub fn from_raw(raw: &RawDiagram, x: &TwoComplex) -> Result<Self, DiagramError> {
        let sphere = SphereComplex::new(
            &raw.faces
                .iter()
                .map(|f| (f.id.clone(), f.boundary.clone()))
                .collect::<Vec<_>>(),
        )?;
        for name in raw.labels.keys() {
            if !sphere.edges.contains(name) {
                return Err(DiagramError::UnknownSphereEdge(name.clone()));
            }
        }
        for id in raw.cellmap.keys() {
            if !sphere.faces.iter().any(|f| &f.id == id) {
                return Err(DiagramError::UnknownFace(id.clone()));
            }
        }
        let labels = sphere
            .edges
            .iter()
            .map(|s| {
                let label = raw
                    .labels
                    .get(s)
                    .ok_or_else(|| DiagramError::MissingLabel(s.clone()))?;
                x.edge_id(label).ok_or_else(|| DiagramError::UnknownLabel {
                    edge: s.clone(),
                    label: label.clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let faces = sphere
            .faces
            .iter()
            .map(|f| {
                let m = raw
                    .cellmap
                    .get(&f.id)
                    .ok_or_else(|| DiagramError::MissingFaceMap(f.id.clone()))?;
                let cell = x
                    .cell_id(&m.cell)
                    .ok_or_else(|| DiagramError::UnknownCell {
                        face: f.id.clone(),
                        cell: m.cell.clone(),
                    })?;
                Ok(FaceMap {
                    cell,
                    rotation: m.rotation,
                    orientation: m.orientation,
                })
            })
            .collect::<Result<Vec<_>, DiagramError>>()?;
        let d = Diagram {
            sphere,
            map: DiagramMap { labels, faces },
        };
        d.check_map(x)?;
        Ok(d)
    }

    pub fn to_raw(&self, x: &TwoComplex) -> RawDiagram {
        RawDiagram {
            faces: self
                .sphere
                .face_words()
                .into_iter()
                .map(|(id, boundary)| RawFace { id, boundary })
                .collect(),
            labels: self
                .sphere
                .edges
                .iter()
                .zip(&self.map.labels)
                .map(|(s, e)| (s.clone(), x.edges()[*e].name.clone()))
                .collect(),
            cellmap: self
                .sphere
                .faces
                .iter()
                .zip(&self.map.faces)
                .map(|(f, m)| {
                    (
                        f.id.clone(),
                        RawFaceMap {
                            cell: x.cells()[m.cell].name.clone(),
                            rotation: m.rotation,
                            orientation: m.orientation,
                        },
                    )
                })
                .collect(),
        }
    }

    /// Labels commute with boundaries, lengths agree, rotations are in
    /// range.
    pub fn check_map(&self, x: &TwoComplex) -> Result<(), DiagramError> {
        let s = &self.sphere;
        if self.map.labels.len() != s.edges.len() {
            return Err(DiagramError::MissingLabel(
                s.edges
                    .get(self.map.labels.len())
                    .cloned()
                    .unwrap_or_default(),
            ));
        }
        if let Some((i, _)) = self
            .map
            .labels
            .iter()
            .enumerate()
            .find(|(_, e)| **e >= x.edges().len())
        {
            return Err(DiagramError::UnknownLabel {
                edge: s.edges[i].clone(),
                label: self.map.labels[i].to_string(),
            });
        }
        if self.map.faces.len() != s.faces.len() {
            return Err(DiagramError::MissingFaceMap(
                s.faces
                    .get(self.map.faces.len())
                    .map(|f| f.id.clone())
                    .unwrap_or_default(),
            ));
        }
        for (f, m) in s.faces.iter().zip(&self.map.faces) {
            let Some(cell) = x.cells().get(m.cell) else {
                return Err(DiagramError::UnknownCell {
                    face: f.id.clone(),
                    cell: m.cell.to_string(),
                });
            };
            let n = cell.boundary.len();
            if f.boundary.len() != n {
                return Err(DiagramError::LengthMismatch {
                    face: f.id.clone(),
                    cell: cell.name.clone(),
                    face_len: f.boundary.len(),
                    cell_len: n,
                });
            }
            if m.rotation >= n {
                return Err(DiagramError::RotationOutOfRange {
                    face: f.id.clone(),
                    rotation: m.rotation,
                });
            }
            for (k, l) in f.boundary.iter().enumerate() {
                let found = SignedEdge {
                    edge: self.map.labels[l.edge],
                    inverse: l.inverse,
                };
                let (_, expected) = m.letter(x, k);
                if found != expected {
                    return Err(DiagramError::IllFormedMap {
                        face: f.id.clone(),
                        position: k,
                        expected: x.letter_name(expected),
                        found: x.letter_name(found),
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldingEdge {
    pub edge: String,
    pub label: String,
}

/// An immediate backtrack of a sphere vertex link mapped into the complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkBacktrack {
    /// Sphere edge whose end is the link node where the path turns back.
    pub edge: String,
    /// `+` for the head end, `-` for the tail end.
    pub end: char,
    pub corner: CornerRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldingReport {
    pub folding_edges: Vec<FoldingEdge>,
    /// Distinct labels used by the diagram, sorted.
    pub labels: Vec<String>,
    /// Distinct labels of folding edges, sorted.
    pub folding_labels: Vec<String>,
    pub backtracks: Vec<LinkBacktrack>,
    /// No link backtracks.
    pub reduced: bool,
}

fn folding(x: &TwoComplex, d: &Diagram, p: Side, m: Side) -> bool {
    let (fp, fm) = (&d.map.faces[p.face], &d.map.faces[m.face]);
    fp.cell == fm.cell && fp.letter(x, p.position).0 == fm.letter(x, m.position).0
}

/// Cell corner under face corner `(face, k)` and the side on which the
/// face's letter `side_letter` (`k` or `k + 1`) sits.
fn corner_side(
    x: &TwoComplex,
    d: &Diagram,
    face: usize,
    k: usize,
    first: bool,
) -> (CornerRef, bool) {
    let (c, swapped) = d.map.faces[face].corner(x, k);
    (c, first != swapped)
}

pub(crate) fn analyse(x: &TwoComplex, d: &Diagram, sides: &[(Side, Side)]) -> FoldingReport {
    let s = &d.sphere;
    let len = |f: usize| s.faces[f].boundary.len();
    let mut folding_edges = Vec::new();
    let mut backtracks = Vec::new();
    for (e, (p, m)) in sides.iter().enumerate() {
        let label = x.edges()[d.map.labels[e]].name.clone();
        if folding(x, d, *p, *m) {
            folding_edges.push(FoldingEdge {
                edge: s.edges[e].clone(),
                label,
            });
        }
        // head: corner after the + letter (its first side) meets the
        // corner before the - letter (its second side)
        let head_a = corner_side(x, d, p.face, p.position, true);
        let head_b = corner_side(
            x,
            d,
            m.face,
            (m.position + len(m.face) - 1) % len(m.face),
            false,
        );
        if head_a == head_b {
            backtracks.push(LinkBacktrack {
                edge: s.edges[e].clone(),
                end: '+',
                corner: head_a.0,
            });
        }
        let tail_a = corner_side(
            x,
            d,
            p.face,
            (p.position + len(p.face) - 1) % len(p.face),
            false,
        );
        let tail_b = corner_side(x, d, m.face, m.position, true);
        if tail_a == tail_b {
            backtracks.push(LinkBacktrack {
                edge: s.edges[e].clone(),
                end: '-',
                corner: tail_a.0,
            });
        }
    }
    let mut labels: Vec<String> = d
        .map
        .labels
        .iter()
        .map(|e| x.edges()[*e].name.clone())
        .collect();
    labels.sort();
    labels.dedup();
    let mut folding_labels: Vec<String> = folding_edges.iter().map(|f| f.label.clone()).collect();
    folding_labels.sort();
    folding_labels.dedup();
    FoldingReport {
        reduced: backtracks.is_empty(),
        folding_edges,
        labels,
        folding_labels,
        backtracks,
    }
}

/// Checks the map, then reports link backtracks and folding edges.
pub fn check_diagram(x: &TwoComplex, d: &Diagram) -> Result<FoldingReport, DiagramError> {
    let v = validate_sphere(&d.sphere);
    if let Some(w) = v.witness {
        return Err(DiagramError::NotASphere(Box::new(w)));
    }
    d.check_map(x)?;
    let sides = d.sphere.edge_sides().expect("validated");
    check_vertices(x, d, &sides)?;
    Ok(analyse(x, d, &sides))
}

fn check_vertices(x: &TwoComplex, d: &Diagram, sides: &[(Side, Side)]) -> Result<(), DiagramError> {
    let (classes, count) = d.sphere.vertex_classes(sides);
    let mut image = vec![None; count];
    let mut i = 0;
    for (f, face) in d.sphere.faces.iter().enumerate() {
        for k in 0..face.boundary.len() {
            let (c, _) = d.map.faces[f].corner(x, k);
            let v = x.corner_vertex(c);
            match image[classes[i]] {
                None => image[classes[i]] = Some(v),
                Some(w) if w != v => return Err(DiagramError::InconsistentVertex(classes[i])),
                _ => {}
            }
            i += 1;
        }
    }
    Ok(())
}

/// A diagram carrying at least `k` distinct labels must have folding edges
/// with at least `k` distinct labels; fewer labels pass vacuously.
pub fn drk_witness_check(report: &FoldingReport, k: usize) -> TestVerdict {
    if report.labels.len() < k {
        return TestVerdict::pass().with_note("vacuous: fewer than k distinct labels");
    }
    if report.folding_labels.len() >= k {
        TestVerdict::pass()
    } else {
        TestVerdict::fail(Witness::FewFoldingLabels {
            k,
            labels: report.labels.clone(),
            folding_labels: report.folding_labels.clone(),
        })
    }
}

/// Pulls angles back to the sphere and computes curvature there; the total
/// must be `2 chi(S) = 4`.
pub fn diagram_gauss_bonnet(
    x: &TwoComplex,
    d: &Diagram,
    angles: &AngleAssignment,
) -> Result<CurvatureReport, DiagramError> {
    angles.check_shape(x)?;
    let v = validate_sphere(&d.sphere);
    if let Some(w) = v.witness {
        return Err(DiagramError::NotASphere(Box::new(w)));
    }
    d.check_map(x)?;
    let s = &d.sphere;
    let sides = s.edge_sides().expect("validated");
    let (classes, count) = s.vertex_classes(&sides);
    let mut sums = vec![int(0); count];
    let mut corner_counts = vec![0i64; count];
    let mut cells = Vec::with_capacity(s.faces.len());
    let mut i = 0;
    for (f, face) in s.faces.iter().enumerate() {
        let mut total = int(0);
        for k in 0..face.boundary.len() {
            let (c, _) = d.map.faces[f].corner(x, k);
            let w = angles.get(c);
            sums[classes[i]] += w;
            corner_counts[classes[i]] += 1;
            total += w;
            i += 1;
        }
        cells.push(NamedValue {
            name: face.id.clone(),
            value: total - int(face.boundary.len() as i64 - 2),
        });
    }
    // every edge end lies at one vertex: the end of the letter's corner
    let mut node_counts = vec![0i64; count];
    let (offsets, _) = s.corner_offsets();
    for (p, _) in &sides {
        let n = s.faces[p.face].boundary.len();
        node_counts[classes[offsets[p.face] + p.position]] += 1;
        node_counts[classes[offsets[p.face] + (p.position + n - 1) % n]] += 1;
    }
    let vertices: Vec<NamedValue> = (0..count)
        .map(|v| NamedValue {
            name: format!("s{v}"),
            value: int(2) - int(node_counts[v] - corner_counts[v]) - sums[v],
        })
        .collect();
    let total: Q = vertices.iter().chain(&cells).map(|nv| nv.value).sum();
    let chi = count as i64 - s.edges.len() as i64 + s.faces.len() as i64;
    Ok(CurvatureReport {
        vertices,
        cells,
        total,
        euler_characteristic: chi,
        holds: total == int(2 * chi),
    })
}
