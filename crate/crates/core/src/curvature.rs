//! Angle structures, curvature, the Gauss-Bonnet identity, the weight test
//! and the zero/one coloring test.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::caps::SearchCaps;
use crate::complex::{
    all_links, euler_characteristic, link_graph, CellId, CornerRef, Dart, LinkGraph, LinkNode,
    TwoComplex, VertexId,
};
use crate::cycles::{min_weight_cycle, WeightedWalk};
use crate::dsu::Dsu;
use crate::rational::{self, format_q, int, Q};
use crate::verdict::{LinkWalk, TestVerdict, Witness};

/// Recorded in verdicts that depend on how loop corners are counted.
pub const LOOP_CONVENTION: &str =
    "a loop corner is never its own reversal: a single loop is a reduced cycle of length 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("no weight for corner {position} of cell {cell:?}")]
    MissingWeight { cell: String, position: usize },
    #[error("unknown cell {0:?}")]
    UnknownCell(String),
    #[error("corner position {position} out of range for cell {cell:?}")]
    PositionOutOfRange { cell: String, position: usize },
    #[error("duplicate weight for corner {position} of cell {cell:?}")]
    DuplicateEntry { cell: String, position: usize },
    #[error("assignment does not match the complex's corner set")]
    ShapeMismatch,
    #[error("negative weight {weight} at corner {position} of cell {cell:?} is not supported")]
    UnsupportedWeights {
        cell: String,
        position: usize,
        weight: String,
    },
    #[error("weight {weight} at corner {position} of cell {cell:?} is not 0 or 1")]
    NotZeroOne {
        cell: String,
        position: usize,
        weight: String,
    },
    #[error("zero/one search needs {corners} corners but the cap is {cap}; use the LOT bi-forest search instead")]
    SearchCapExceeded { corners: usize, cap: usize },
}

/// One line of an angle file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleEntry {
    pub cell: String,
    pub position: usize,
    #[serde(with = "rational::as_string")]
    pub weight: Q,
}

/// A rational angle on every corner, indexed `[cell][position]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AngleAssignment {
    #[serde(with = "rational::nested_string")]
    angles: Vec<Vec<Q>>,
}

impl AngleAssignment {
    pub fn uniform(x: &TwoComplex, value: Q) -> Self {
        AngleAssignment {
            angles: x
                .cells()
                .iter()
                .map(|c| vec![value; c.boundary.len()])
                .collect(),
        }
    }

    pub fn from_fn(x: &TwoComplex, mut f: impl FnMut(CornerRef) -> Q) -> Self {
        AngleAssignment {
            angles: x
                .cells()
                .iter()
                .enumerate()
                .map(|(cell, c)| {
                    (0..c.boundary.len())
                        .map(|position| f(CornerRef { cell, position }))
                        .collect()
                })
                .collect(),
        }
    }

    /// Builds a total assignment; every corner must be listed exactly once.
    pub fn from_entries(x: &TwoComplex, entries: &[AngleEntry]) -> Result<Self, CurvatureError> {
        let mut slots: Vec<Vec<Option<Q>>> = x
            .cells()
            .iter()
            .map(|c| vec![None; c.boundary.len()])
            .collect();
        for e in entries {
            let cell = x
                .cell_id(&e.cell)
                .ok_or_else(|| CurvatureError::UnknownCell(e.cell.clone()))?;
            let slot = slots[cell].get_mut(e.position).ok_or_else(|| {
                CurvatureError::PositionOutOfRange {
                    cell: e.cell.clone(),
                    position: e.position,
                }
            })?;
            if slot.replace(e.weight).is_some() {
                return Err(CurvatureError::DuplicateEntry {
                    cell: e.cell.clone(),
                    position: e.position,
                });
            }
        }
        let angles = slots
            .into_iter()
            .enumerate()
            .map(|(cell, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(position, w)| {
                        w.ok_or_else(|| CurvatureError::MissingWeight {
                            cell: x.cells()[cell].name.clone(),
                            position,
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AngleAssignment { angles })
    }

    pub fn from_rows(x: &TwoComplex, angles: Vec<Vec<Q>>) -> Result<Self, CurvatureError> {
        let a = AngleAssignment { angles };
        a.check_shape(x)?;
        Ok(a)
    }

    pub fn entries(&self, x: &TwoComplex) -> Vec<AngleEntry> {
        x.corners()
            .map(|at| AngleEntry {
                cell: x.cells()[at.cell].name.clone(),
                position: at.position,
                weight: self.get(at),
            })
            .collect()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.angles
    }

    pub fn get(&self, at: CornerRef) -> Q {
        self.angles[at.cell][at.position]
    }

    pub fn set(&mut self, at: CornerRef, value: Q) {
        self.angles[at.cell][at.position] = value;
    }

    pub fn check_shape(&self, x: &TwoComplex) -> Result<(), CurvatureError> {
        let fits = self.angles.len() == x.cells().len()
            && self
                .angles
                .iter()
                .zip(x.cells())
                .all(|(row, c)| row.len() == c.boundary.len());
        if fits {
            Ok(())
        } else {
            Err(CurvatureError::ShapeMismatch)
        }
    }

    /// Rejects negative weights, which the automated tests do not handle.
    pub fn check_nonnegative(&self, x: &TwoComplex) -> Result<(), CurvatureError> {
        for at in x.corners() {
            let w = self.get(at);
            if w < int(0) {
                return Err(CurvatureError::UnsupportedWeights {
                    cell: x.cells()[at.cell].name.clone(),
                    position: at.position,
                    weight: format_q(&w),
                });
            }
        }
        Ok(())
    }

    /// Weights in the order of the link's corner list.
    pub fn link_weights(&self, g: &LinkGraph) -> Vec<Q> {
        g.corners.iter().map(|c| self.get(c.at)).collect()
    }

    pub fn add(&self, other: &AngleAssignment) -> AngleAssignment {
        AngleAssignment {
            angles: self
                .angles
                .iter()
                .zip(&other.angles)
                .map(|(a, b)| a.iter().zip(b).map(|(p, q)| p + q).collect())
                .collect(),
        }
    }
}

/// Angles restricted to {0, 1}; `true` means angle 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroOneAssignment {
    ones: Vec<Vec<bool>>,
}

impl Serialize for ZeroOneAssignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.bits().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZeroOneAssignment {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<u8>>::deserialize(d)?;
        let ones = rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|b| match b {
                        0 => Ok(false),
                        1 => Ok(true),
                        other => Err(serde::de::Error::custom(format!(
                            "zero/one angle must be 0 or 1, got {other}"
                        ))),
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Ok(ZeroOneAssignment { ones })
    }
}

impl ZeroOneAssignment {
    pub fn from_fn(x: &TwoComplex, mut f: impl FnMut(CornerRef) -> bool) -> Self {
        ZeroOneAssignment {
            ones: x
                .cells()
                .iter()
                .enumerate()
                .map(|(cell, c)| {
                    (0..c.boundary.len())
                        .map(|position| f(CornerRef { cell, position }))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_angles(x: &TwoComplex, a: &AngleAssignment) -> Result<Self, CurvatureError> {
        a.check_shape(x)?;
        let mut err = None;
        let z = ZeroOneAssignment::from_fn(x, |at| {
            let w = a.get(at);
            if w != int(0) && w != int(1) && err.is_none() {
                err = Some(CurvatureError::NotZeroOne {
                    cell: x.cells()[at.cell].name.clone(),
                    position: at.position,
                    weight: format_q(&w),
                });
            }
            w == int(1)
        });
        match err {
            Some(e) => Err(e),
            None => Ok(z),
        }
    }

    pub fn check_shape(&self, x: &TwoComplex) -> Result<(), CurvatureError> {
        self.to_angles().check_shape(x)
    }

    pub fn is_one(&self, at: CornerRef) -> bool {
        self.ones[at.cell][at.position]
    }

    pub fn to_angles(&self) -> AngleAssignment {
        AngleAssignment {
            angles: self
                .ones
                .iter()
                .map(|row| row.iter().map(|b| int(*b as i64)).collect())
                .collect(),
        }
    }

    pub fn bits(&self) -> Vec<Vec<u8>> {
        self.ones
            .iter()
            .map(|row| row.iter().map(|b| *b as u8).collect())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    #[serde(with = "rational::as_string")]
    pub value: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub vertices: Vec<NamedValue>,
    pub cells: Vec<NamedValue>,
    #[serde(with = "rational::as_string")]
    pub total: Q,
    pub euler_characteristic: i64,
    /// `total == 2 * chi`.
    pub holds: bool,
}

/// `kappa(v) = 2 - chi(lk(v)) - sum of corner angles at v`.
pub fn vertex_curvature(
    x: &TwoComplex,
    angles: &AngleAssignment,
    v: VertexId,
) -> Result<Q, CurvatureError> {
    angles.check_shape(x)?;
    Ok(link_curvature(&link_graph(x, v), angles))
}

fn link_curvature(g: &LinkGraph, angles: &AngleAssignment) -> Q {
    let sum: Q = g.corners.iter().map(|c| angles.get(c.at)).sum();
    int(2) - int(g.euler_characteristic()) - sum
}

/// `kappa(d) = sum of corner angles in d - (|boundary d| - 2)`.
pub fn cell_curvature(
    x: &TwoComplex,
    angles: &AngleAssignment,
    d: CellId,
) -> Result<Q, CurvatureError> {
    angles.check_shape(x)?;
    Ok(cell_curvature_unchecked(x, angles, d))
}

fn cell_curvature_unchecked(x: &TwoComplex, angles: &AngleAssignment, d: CellId) -> Q {
    let n = x.cells()[d].boundary.len();
    let sum: Q = angles.angles[d].iter().sum();
    sum - int(n as i64 - 2)
}

pub fn check_gauss_bonnet(
    x: &TwoComplex,
    angles: &AngleAssignment,
) -> Result<CurvatureReport, CurvatureError> {
    angles.check_shape(x)?;
    let vertices: Vec<NamedValue> = all_links(x)
        .iter()
        .map(|g| NamedValue {
            name: x.vertices()[g.base].clone(),
            value: link_curvature(g, angles),
        })
        .collect();
    let cells: Vec<NamedValue> = (0..x.cells().len())
        .map(|d| NamedValue {
            name: x.cells()[d].name.clone(),
            value: cell_curvature_unchecked(x, angles, d),
        })
        .collect();
    let total: Q = vertices.iter().chain(&cells).map(|nv| nv.value).sum();
    let chi = euler_characteristic(x);
    Ok(CurvatureReport {
        vertices,
        cells,
        total,
        euler_characteristic: chi,
        holds: total == int(2 * chi),
    })
}

pub(crate) fn walk_of(x: &TwoComplex, g: &LinkGraph, w: &WeightedWalk) -> LinkWalk {
    walk_from_darts(x, g, &w.darts, w.weight)
}

pub(crate) fn walk_from_darts(
    x: &TwoComplex,
    g: &LinkGraph,
    darts: &[Dart],
    weight: Q,
) -> LinkWalk {
    let mut nodes = Vec::with_capacity(darts.len() + 1);
    if let Some(first) = darts.first() {
        nodes.push(x.node_name(g.nodes[g.dart_tail(*first)]));
    }
    for d in darts {
        nodes.push(x.node_name(g.nodes[g.dart_head(*d)]));
    }
    LinkWalk {
        vertex: x.vertices()[g.base].clone(),
        darts: darts.to_vec(),
        corners: darts.iter().map(|d| g.corners[d.corner].at).collect(),
        nodes,
        weight,
    }
}

/// Minimum weight over reduced cycles of `g`, with a witness cycle.
pub fn min_reduced_cycle_weight(
    x: &TwoComplex,
    g: &LinkGraph,
    angles: &AngleAssignment,
) -> Result<Option<LinkWalk>, CurvatureError> {
    angles.check_shape(x)?;
    angles.check_nonnegative(x)?;
    let w = angles.link_weights(g);
    Ok(min_weight_cycle(g, &w).map(|c| walk_of(x, g, &c)))
}

fn first_positive_cell(x: &TwoComplex, angles: &AngleAssignment) -> Option<Witness> {
    (0..x.cells().len()).find_map(|d| {
        let k = cell_curvature_unchecked(x, angles, d);
        (k > int(0)).then(|| Witness::PositiveCellCurvature {
            cell: x.cells()[d].name.clone(),
            curvature: k,
        })
    })
}

/// Gersten's weight test for non-negative weights.
pub fn weight_test(
    x: &TwoComplex,
    angles: &AngleAssignment,
) -> Result<TestVerdict, CurvatureError> {
    angles.check_shape(x)?;
    angles.check_nonnegative(x)?;
    if let Some(w) = first_positive_cell(x, angles) {
        return Ok(TestVerdict::fail(w).with_note(LOOP_CONVENTION));
    }
    for g in all_links(x) {
        if let Some(c) = min_reduced_cycle_weight(x, &g, angles)? {
            if c.weight < int(2) {
                return Ok(TestVerdict::fail(Witness::LightCycle(c)).with_note(LOOP_CONVENTION));
            }
        }
    }
    Ok(TestVerdict::pass().with_note(LOOP_CONVENTION))
}

/// Components of `lk0(v)`: all link nodes plus the angle-0 corners.
/// Returned as node lists, ordered by their first node.
pub fn lk0_components(x: &TwoComplex, v: VertexId, z: &ZeroOneAssignment) -> Vec<Vec<LinkNode>> {
    let g = link_graph(x, v);
    let labels = lk0_labels(&g, z);
    group_by_label(&g, &labels)
}

pub(crate) fn lk0_labels(g: &LinkGraph, z: &ZeroOneAssignment) -> Vec<usize> {
    let mut dsu = Dsu::new(g.nodes.len());
    for c in &g.corners {
        if !z.is_one(c.at) {
            dsu.union(c.nodes[0], c.nodes[1]);
        }
    }
    dsu.labels()
}

pub(crate) fn group_by_label(g: &LinkGraph, labels: &[usize]) -> Vec<Vec<LinkNode>> {
    let count = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut groups = vec![Vec::new(); count];
    for (i, l) in labels.iter().enumerate() {
        groups[*l].push(g.nodes[i]);
    }
    groups
}

/// A cycle among angle-0 corners, if `lk0` is not a forest.
fn lk0_cycle(g: &LinkGraph, z: &ZeroOneAssignment) -> Option<Vec<usize>> {
    let mut dsu = Dsu::new(g.nodes.len());
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.nodes.len()];
    for (ci, c) in g.corners.iter().enumerate() {
        if z.is_one(c.at) {
            continue;
        }
        let [p, q] = c.nodes;
        if !dsu.union(p, q) {
            // path p -> q through the forest built so far
            let mut prev = vec![None; g.nodes.len()];
            let mut seen = vec![false; g.nodes.len()];
            let mut queue = std::collections::VecDeque::from([p]);
            seen[p] = true;
            while let Some(u) = queue.pop_front() {
                for &(w, via) in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        prev[w] = Some((u, via));
                        queue.push_back(w);
                    }
                }
            }
            let mut cycle = vec![ci];
            let mut at = q;
            while at != p {
                let (u, via) = prev[at].expect("p and q are connected");
                cycle.push(via);
                at = u;
            }
            return Some(cycle);
        }
        adj[p].push((q, ci));
        adj[q].push((p, ci));
    }
    None
}

/// The coloring test, decided through its three combinatorial conditions:
/// non-positive cells, `lk0` a forest, and no angle-1 corner inside one
/// `lk0` component.
pub fn coloring_test(x: &TwoComplex, z: &ZeroOneAssignment) -> Result<TestVerdict, CurvatureError> {
    z.check_shape(x)?;
    let angles = z.to_angles();
    if let Some(w) = first_positive_cell(x, &angles) {
        return Ok(TestVerdict::fail(w));
    }
    let links = all_links(x);
    for g in &links {
        if let Some(cycle) = lk0_cycle(g, z) {
            return Ok(TestVerdict::fail(Witness::Lk0Cycle {
                vertex: x.vertices()[g.base].clone(),
                corners: cycle.iter().map(|ci| g.corners[*ci].at).collect(),
            }));
        }
    }
    for g in &links {
        let labels = lk0_labels(g, z);
        for c in &g.corners {
            if z.is_one(c.at) && labels[c.nodes[0]] == labels[c.nodes[1]] {
                return Ok(TestVerdict::fail(Witness::OneCornerInComponent {
                    vertex: x.vertices()[g.base].clone(),
                    corner: c.at,
                    nodes: [x.node_name(c.ends[0]), x.node_name(c.ends[1])],
                }));
            }
        }
    }
    Ok(TestVerdict::pass())
}

/// Searches zero/one structures in lexicographic order (angle 0 first) for
/// one that passes the coloring test, and, with `split_edge_ends`, also
/// separates `e+` from `e-` in `lk0` for every edge.
pub fn find_coloring_structure(
    x: &TwoComplex,
    split_edge_ends: bool,
    caps: &SearchCaps,
) -> Result<Option<ZeroOneAssignment>, CurvatureError> {
    let corners: Vec<CornerRef> = x.corners().collect();
    if corners.len() > caps.zero_one_corners {
        return Err(CurvatureError::SearchCapExceeded {
            corners: corners.len(),
            cap: caps.zero_one_corners,
        });
    }
    // Global node numbering: (vertex, local node).
    let links = all_links(x);
    let mut offset = Vec::with_capacity(links.len());
    let mut total = 0;
    for g in &links {
        offset.push(total);
        total += g.nodes.len();
    }
    let mut corner_nodes: BTreeMap<CornerRef, [usize; 2]> = BTreeMap::new();
    for (gi, g) in links.iter().enumerate() {
        for c in &g.corners {
            corner_nodes.insert(c.at, [offset[gi] + c.nodes[0], offset[gi] + c.nodes[1]]);
        }
    }
    let ends: Vec<[usize; 2]> = corners.iter().map(|c| corner_nodes[c]).collect();
    let budget: Vec<i64> = x
        .cells()
        .iter()
        .map(|c| c.boundary.len() as i64 - 2)
        .collect();
    let mut edge_pairs = Vec::new();
    if split_edge_ends {
        for (gi, g) in links.iter().enumerate() {
            for (i, n) in g.nodes.iter().enumerate() {
                if n.end == crate::complex::End::Plus {
                    if let Some(j) = g.node_index(n.opposite()) {
                        edge_pairs.push((offset[gi] + i, offset[gi] + j));
                    }
                }
            }
        }
    }

    struct Search<'a> {
        corners: &'a [CornerRef],
        ends: &'a [[usize; 2]],
        budget: Vec<i64>,
        edge_pairs: &'a [(usize, usize)],
        ones: Vec<bool>,
    }

    impl Search<'_> {
        fn go(&mut self, i: usize, dsu: &Dsu) -> bool {
            if i == self.corners.len() {
                let mut dsu = dsu.clone();
                let one_ok = (0..self.corners.len())
                    .filter(|k| self.ones[*k])
                    .all(|k| !dsu.same(self.ends[k][0], self.ends[k][1]));
                return one_ok && self.edge_pairs.iter().all(|(p, m)| !dsu.same(*p, *m));
            }
            let cell = self.corners[i].cell;
            // angle 0: must keep lk0 a forest
            let mut next = dsu.clone();
            if next.union(self.ends[i][0], self.ends[i][1]) {
                self.ones[i] = false;
                if self.go(i + 1, &next) {
                    return true;
                }
            }
            // angle 1: spends cell budget
            if self.budget[cell] > 0 {
                self.budget[cell] -= 1;
                self.ones[i] = true;
                let found = self.go(i + 1, dsu);
                self.budget[cell] += 1;
                if found {
                    return true;
                }
                self.ones[i] = false;
            }
            false
        }
    }

    if budget.iter().any(|b| *b < 0) {
        // a monogon always has positive curvature
        return Ok(None);
    }
    let mut s = Search {
        corners: &corners,
        ends: &ends,
        budget,
        edge_pairs: &edge_pairs,
        ones: vec![false; corners.len()],
    };
    if !s.go(0, &Dsu::new(total)) {
        return Ok(None);
    }
    let mut k = 0;
    Ok(Some(ZeroOneAssignment::from_fn(x, |_| {
        k += 1;
        s.ones[k - 1]
    })))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use crate::rational::q;

    /// The bi-forest structure on K(T): angle 0 on {c+,b+}, {a+,c+},
    /// {c-,a-}, {a-,b-}.
    pub fn kt_biforest(x: &TwoComplex) -> ZeroOneAssignment {
        let zero: [(usize, usize); 4] = [(0, 1), (1, 1), (0, 3), (1, 3)];
        ZeroOneAssignment::from_fn(x, |at| !zero.contains(&(at.cell, at.position)))
    }

    fn names(x: &TwoComplex, comps: &[Vec<LinkNode>]) -> Vec<Vec<String>> {
        comps
            .iter()
            .map(|c| c.iter().map(|n| x.node_name(*n)).collect())
            .collect()
    }

    #[test]
    fn vertex_curvatures() {
        let x = torus();
        assert_eq!(
            vertex_curvature(&x, &AngleAssignment::uniform(&x, q(1, 2)), 0).unwrap(),
            int(0)
        );
        let bare = one_vertex(&["a", "b", "c"], &[]);
        assert_eq!(
            vertex_curvature(&bare, &AngleAssignment::uniform(&bare, int(0)), 0).unwrap(),
            int(2 - 6)
        );
        let kt = kt();
        let z = kt_biforest(&kt);
        assert_eq!(vertex_curvature(&kt, &z.to_angles(), 0).unwrap(), int(0));
    }

    #[test]
    fn cell_curvatures() {
        let x = torus();
        assert_eq!(
            cell_curvature(&x, &AngleAssignment::uniform(&x, q(1, 2)), 0).unwrap(),
            int(0)
        );
        let kt = kt();
        let a = kt_biforest(&kt).to_angles();
        assert_eq!(cell_curvature(&kt, &a, 0).unwrap(), int(0));
        assert_eq!(cell_curvature(&kt, &a, 1).unwrap(), int(0));
        let mono = one_vertex(&["a"], &[("D", "a")]);
        assert_eq!(
            cell_curvature(&mono, &AngleAssignment::uniform(&mono, int(1)), 0).unwrap(),
            int(2)
        );
    }

    #[test]
    fn gauss_bonnet_examples() {
        let x = torus();
        let r = check_gauss_bonnet(&x, &AngleAssignment::uniform(&x, q(1, 2))).unwrap();
        assert!(r.holds);
        assert_eq!(r.total, int(0));
        let m = m2();
        let r = check_gauss_bonnet(&m, &AngleAssignment::uniform(&m, int(1))).unwrap();
        assert_eq!(r.vertices[0].value, int(0));
        assert_eq!(r.cells[0].value, int(2));
        assert_eq!(r.total, int(4));
        assert!(r.holds);
    }

    #[test]
    fn entries_must_cover_every_corner() {
        let x = torus();
        let mut entries = AngleAssignment::uniform(&x, q(1, 2)).entries(&x);
        entries.pop();
        assert!(matches!(
            AngleAssignment::from_entries(&x, &entries),
            Err(CurvatureError::MissingWeight { .. })
        ));
        let mut entries = AngleAssignment::uniform(&x, q(1, 2)).entries(&x);
        entries.push(entries[0].clone());
        assert!(matches!(
            AngleAssignment::from_entries(&x, &entries),
            Err(CurvatureError::DuplicateEntry { .. })
        ));
    }

    #[test]
    fn min_cycle_weights() {
        let x = torus();
        let g = link_graph(&x, 0);
        let c = min_reduced_cycle_weight(&x, &g, &AngleAssignment::uniform(&x, q(1, 2)))
            .unwrap()
            .unwrap();
        assert_eq!(c.weight, int(2));
        let tree = one_vertex(&["a", "b"], &[("R", "a b")]);
        let g = link_graph(&tree, 0);
        assert!(
            min_reduced_cycle_weight(&tree, &g, &AngleAssignment::uniform(&tree, int(1)))
                .unwrap()
                .is_none()
        );
        let mut neg = AngleAssignment::uniform(&x, q(1, 2));
        neg.set(
            CornerRef {
                cell: 0,
                position: 1,
            },
            q(-1, 2),
        );
        assert!(matches!(
            min_reduced_cycle_weight(&x, &link_graph(&x, 0), &neg),
            Err(CurvatureError::UnsupportedWeights { .. })
        ));
    }

    #[test]
    fn weight_test_examples() {
        let x = torus();
        assert!(
            weight_test(&x, &AngleAssignment::uniform(&x, q(1, 2)))
                .unwrap()
                .pass
        );
        let v = weight_test(&x, &AngleAssignment::uniform(&x, q(1, 4))).unwrap();
        assert!(!v.pass);
        match v.witness.unwrap() {
            Witness::LightCycle(c) => {
                assert_eq!(c.darts.len(), 4);
                assert_eq!(c.weight, int(1));
            }
            other => panic!("unexpected witness {other:?}"),
        }
        let kt = kt();
        assert!(
            weight_test(&kt, &kt_biforest(&kt).to_angles())
                .unwrap()
                .pass
        );
    }

    #[test]
    fn coloring_test_examples() {
        let kt = kt();
        assert!(coloring_test(&kt, &kt_biforest(&kt)).unwrap().pass);

        let x = torus();
        let zeros = ZeroOneAssignment::from_fn(&x, |_| false);
        let v = coloring_test(&x, &zeros).unwrap();
        match v.witness.unwrap() {
            Witness::Lk0Cycle { corners, .. } => assert_eq!(corners.len(), 4),
            other => panic!("unexpected witness {other:?}"),
        }
        let ones = ZeroOneAssignment::from_fn(&x, |_| true);
        let v = coloring_test(&x, &ones).unwrap();
        assert!(matches!(
            v.witness.unwrap(),
            Witness::PositiveCellCurvature { curvature, .. } if curvature == int(2)
        ));
    }

    #[test]
    fn lk0_component_examples() {
        let kt = kt();
        let comps = lk0_components(&kt, 0, &kt_biforest(&kt));
        let mut got = names(&kt, &comps);
        for c in &mut got {
            c.sort();
        }
        got.sort();
        assert_eq!(got, vec![vec!["a+", "b+", "c+"], vec!["a-", "b-", "c-"]]);

        let x = torus();
        assert_eq!(
            lk0_components(&x, 0, &ZeroOneAssignment::from_fn(&x, |_| true)).len(),
            4
        );
        assert_eq!(
            lk0_components(&x, 0, &ZeroOneAssignment::from_fn(&x, |_| false)).len(),
            1
        );
    }

    #[test]
    fn generic_search_finds_structures() {
        let caps = SearchCaps::default();
        let x = torus();
        let z = find_coloring_structure(&x, true, &caps).unwrap().unwrap();
        assert!(coloring_test(&x, &z).unwrap().pass);
        let kt = kt();
        let z = find_coloring_structure(&kt, true, &caps).unwrap().unwrap();
        assert!(coloring_test(&kt, &z).unwrap().pass);
        // monogons have positive curvature under any angles
        assert!(find_coloring_structure(&m2(), false, &caps)
            .unwrap()
            .is_none());
        let tight = SearchCaps {
            zero_one_corners: 3,
            ..caps
        };
        assert!(matches!(
            find_coloring_structure(&x, false, &tight),
            Err(CurvatureError::SearchCapExceeded { .. })
        ));
    }

    #[test]
    fn zero_one_rejects_other_values() {
        let x = torus();
        assert!(
            ZeroOneAssignment::from_angles(&x, &AngleAssignment::uniform(&x, q(1, 2))).is_err()
        );
        let z = ZeroOneAssignment::from_angles(&x, &AngleAssignment::uniform(&x, int(1))).unwrap();
        assert!(z.is_one(CornerRef {
            cell: 0,
            position: 3
        }));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn assignment(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
            prop::collection::vec((-12i64..=24, 1i64..=12), n)
        }

        proptest! {
            #[test]
            fn gauss_bonnet_holds_on_trefoil(ws in assignment(8)) {
                let x = kt();
                let mut it = ws.iter();
                let a = AngleAssignment::from_fn(&x, |_| {
                    let (n, d) = it.next().unwrap();
                    q(*n, *d)
                });
                prop_assert!(check_gauss_bonnet(&x, &a).unwrap().holds);
            }

            #[test]
            fn curvature_is_affine(ws1 in assignment(8), ws2 in assignment(8)) {
                let x = kt();
                let mut i1 = ws1.iter();
                let a1 = AngleAssignment::from_fn(&x, |_| { let (n, d) = i1.next().unwrap(); q(*n, *d) });
                let mut i2 = ws2.iter();
                let a2 = AngleAssignment::from_fn(&x, |_| { let (n, d) = i2.next().unwrap(); q(*n, *d) });
                let zero = AngleAssignment::uniform(&x, int(0));
                let sum = a1.add(&a2);
                let kv = |a: &AngleAssignment| vertex_curvature(&x, a, 0).unwrap();
                prop_assert_eq!(kv(&sum) - kv(&zero), (kv(&a1) - kv(&zero)) + (kv(&a2) - kv(&zero)));
                for d in 0..2 {
                    let kc = |a: &AngleAssignment| cell_curvature(&x, a, d).unwrap();
                    prop_assert_eq!(kc(&sum) - kc(&zero), (kc(&a1) - kc(&zero)) + (kc(&a2) - kc(&zero)));
                }
            }

            #[test]
            fn coloring_implies_weight_test(bits in prop::collection::vec(any::<bool>(), 8)) {
                let x = kt();
                let mut it = bits.iter();
                let z = ZeroOneAssignment::from_fn(&x, |_| *it.next().unwrap());
                if coloring_test(&x, &z).unwrap().pass {
                    prop_assert!(weight_test(&x, &z.to_angles()).unwrap().pass);
                }
            }
        }
    }
}
