//! Finite combinatorial 2-complexes and their vertex links.
//!
//! A complex is stored with dense integer ids. Boundary words are kept exactly
//! as given; positions in a word are stable and corners refer to them.
//!
//! Corner convention: the corner between consecutive letters `u`, `w` of a
//! boundary word joins `H(u)` and `T(w)`, where `H(e) = e+`, `H(e-) = e-`,
//! `T(e) = e-`, `T(e-) = e+`. Here `e+` is the head end of the edge and `e-`
//! its tail end.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type CellId = usize;

/// An edge of the complex traversed forwards or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedEdge {
    pub edge: EdgeId,
    pub inverse: bool,
}

impl SignedEdge {
    pub fn plus(edge: EdgeId) -> Self {
        SignedEdge {
            edge,
            inverse: false,
        }
    }

    pub fn minus(edge: EdgeId) -> Self {
        SignedEdge {
            edge,
            inverse: true,
        }
    }

    pub fn inv(self) -> Self {
        SignedEdge {
            edge: self.edge,
            inverse: !self.inverse,
        }
    }

    /// Link node where a traversal of this letter arrives.
    pub fn head_node(self) -> LinkNode {
        LinkNode {
            edge: self.edge,
            end: if self.inverse { End::Minus } else { End::Plus },
        }
    }

    /// Link node where a traversal of this letter departs.
    pub fn tail_node(self) -> LinkNode {
        LinkNode {
            edge: self.edge,
            end: if self.inverse { End::Plus } else { End::Minus },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub name: String,
    pub boundary: Vec<SignedEdge>,
}

/// Unvalidated complex description, using names instead of ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComplex {
    pub vertices: Vec<String>,
    pub edges: Vec<RawEdge>,
    pub cells: Vec<RawCell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEdge {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// A cell boundary as letters `name` or `name-`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCell {
    pub name: String,
    pub boundary: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("duplicate {kind} id {name:?}")]
    DuplicateId { kind: &'static str, name: String },
    #[error("edge {edge:?} references unknown vertex {vertex:?}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("cell {cell:?} references unknown edge {edge:?}")]
    UnknownEdge { cell: String, edge: String },
    #[error("cell {cell:?} has an empty boundary")]
    EmptyBoundary { cell: String },
    #[error("cell {cell:?} boundary is not a closed path: letter {position} ends where letter {next} does not start")]
    NonClosedPath {
        cell: String,
        position: usize,
        next: usize,
    },
}

/// Non-fatal findings from validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValidationFlag {
    /// Letters at `positions` (0-based, adjacent) cancel.
    NonReduced {
        cell: CellId,
        positions: (usize, usize),
    },
    /// The last and first letters cancel.
    NotCyclicallyReduced {
        cell: CellId,
        positions: (usize, usize),
    },
}

impl fmt::Display for ValidationFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFlag::NonReduced { cell, positions } => write!(
                f,
                "non-reduced boundary word at cell {} position ({},{})",
                cell + 1,
                positions.0 + 1,
                positions.1 + 1
            ),
            ValidationFlag::NotCyclicallyReduced { cell, positions } => write!(
                f,
                "boundary word at cell {} not cyclically reduced at position ({},{})",
                cell + 1,
                positions.0 + 1,
                positions.1 + 1
            ),
        }
    }
}

/// A validated finite combinatorial 2-complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoComplex {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    cells: Vec<Cell>,
    flags: Vec<ValidationFlag>,
}

/// Parses a letter `a` or `a-` into (name, inverse).
pub fn split_letter(letter: &str) -> (&str, bool) {
    match letter.strip_suffix('-') {
        Some(name) => (name, true),
        None => (letter, false),
    }
}

pub fn build_complex(raw: &RawComplex) -> Result<TwoComplex, ComplexError> {
    let mut vertex_ids = BTreeMap::new();
    for (i, v) in raw.vertices.iter().enumerate() {
        if vertex_ids.insert(v.as_str(), i).is_some() {
            return Err(ComplexError::DuplicateId {
                kind: "vertex",
                name: v.clone(),
            });
        }
    }
    let mut edge_ids = BTreeMap::new();
    let mut edges = Vec::with_capacity(raw.edges.len());
    for (i, e) in raw.edges.iter().enumerate() {
        if edge_ids.insert(e.name.as_str(), i).is_some() {
            return Err(ComplexError::DuplicateId {
                kind: "edge",
                name: e.name.clone(),
            });
        }
        let lookup = |v: &String| {
            vertex_ids
                .get(v.as_str())
                .copied()
                .ok_or_else(|| ComplexError::UnknownVertex {
                    edge: e.name.clone(),
                    vertex: v.clone(),
                })
        };
        edges.push(Edge {
            name: e.name.clone(),
            source: lookup(&e.source)?,
            target: lookup(&e.target)?,
        });
    }
    let mut cell_names = BTreeSet::new();
    let mut cells = Vec::with_capacity(raw.cells.len());
    for c in &raw.cells {
        if !cell_names.insert(c.name.as_str()) {
            return Err(ComplexError::DuplicateId {
                kind: "cell",
                name: c.name.clone(),
            });
        }
        if c.boundary.is_empty() {
            return Err(ComplexError::EmptyBoundary {
                cell: c.name.clone(),
            });
        }
        let mut boundary = Vec::with_capacity(c.boundary.len());
        for letter in &c.boundary {
            let (name, inverse) = split_letter(letter);
            let edge = *edge_ids
                .get(name)
                .ok_or_else(|| ComplexError::UnknownEdge {
                    cell: c.name.clone(),
                    edge: name.to_string(),
                })?;
            boundary.push(SignedEdge { edge, inverse });
        }
        cells.push(Cell {
            name: c.name.clone(),
            boundary,
        });
    }
    TwoComplex::from_parts(raw.vertices.clone(), edges, cells)
}

impl TwoComplex {
    /// Validates id-based parts directly.
    pub fn from_parts(
        vertices: Vec<String>,
        edges: Vec<Edge>,
        cells: Vec<Cell>,
    ) -> Result<Self, ComplexError> {
        let mut x = TwoComplex {
            vertices,
            edges,
            cells,
            flags: Vec::new(),
        };
        for (ci, cell) in x.cells.iter().enumerate() {
            if cell.boundary.is_empty() {
                return Err(ComplexError::EmptyBoundary {
                    cell: cell.name.clone(),
                });
            }
            let n = cell.boundary.len();
            for i in 0..n {
                let (u, w) = (cell.boundary[i], cell.boundary[(i + 1) % n]);
                if x.letter_end(u) != x.letter_start(w) {
                    return Err(ComplexError::NonClosedPath {
                        cell: cell.name.clone(),
                        position: i + 1,
                        next: (i + 1) % n + 1,
                    });
                }
                if n > 1 && u.inv() == w {
                    let positions = (i, (i + 1) % n);
                    x.flags.push(if i + 1 < n {
                        ValidationFlag::NonReduced {
                            cell: ci,
                            positions,
                        }
                    } else {
                        ValidationFlag::NotCyclicallyReduced {
                            cell: ci,
                            positions,
                        }
                    });
                }
            }
        }
        Ok(x)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn flags(&self) -> &[ValidationFlag] {
        &self.flags
    }

    pub fn is_single_vertex(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn cell_id(&self, name: &str) -> Option<CellId> {
        self.cells.iter().position(|c| c.name == name)
    }

    /// Vertex where the traversal of `letter` starts.
    pub fn letter_start(&self, letter: SignedEdge) -> VertexId {
        let e = &self.edges[letter.edge];
        if letter.inverse {
            e.target
        } else {
            e.source
        }
    }

    pub fn letter_end(&self, letter: SignedEdge) -> VertexId {
        let e = &self.edges[letter.edge];
        if letter.inverse {
            e.source
        } else {
            e.target
        }
    }

    /// All boundary words reduced, including cyclically.
    pub fn is_cyclically_reduced(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn corner_count(&self) -> usize {
        self.cells.iter().map(|c| c.boundary.len()).sum()
    }

    /// Every corner of every cell, in cell/position order.
    pub fn corners(&self) -> impl Iterator<Item = CornerRef> + '_ {
        self.cells.iter().enumerate().flat_map(|(cell, c)| {
            (0..c.boundary.len()).map(move |position| CornerRef { cell, position })
        })
    }

    /// The two letters meeting at a corner.
    pub fn corner_letters(&self, at: CornerRef) -> (SignedEdge, SignedEdge) {
        let b = &self.cells[at.cell].boundary;
        (b[at.position], b[(at.position + 1) % b.len()])
    }

    /// Link nodes joined by a corner: `[H(u), T(w)]`.
    pub fn corner_ends(&self, at: CornerRef) -> [LinkNode; 2] {
        let (u, w) = self.corner_letters(at);
        [u.head_node(), w.tail_node()]
    }

    pub fn corner_vertex(&self, at: CornerRef) -> VertexId {
        self.letter_end(self.corner_letters(at).0)
    }

    pub fn node_vertex(&self, node: LinkNode) -> VertexId {
        let e = &self.edges[node.edge];
        match node.end {
            End::Plus => e.target,
            End::Minus => e.source,
        }
    }

    pub fn letter_name(&self, letter: SignedEdge) -> String {
        let name = &self.edges[letter.edge].name;
        if letter.inverse {
            format!("{name}-")
        } else {
            name.clone()
        }
    }

    pub fn word_text(&self, word: &[SignedEdge]) -> String {
        word.iter()
            .map(|l| self.letter_name(*l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn node_name(&self, node: LinkNode) -> String {
        let sign = match node.end {
            End::Plus => '+',
            End::Minus => '-',
        };
        format!("{}{}", self.edges[node.edge].name, sign)
    }

    pub fn to_raw(&self) -> RawComplex {
        RawComplex {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge {
                    name: e.name.clone(),
                    source: self.vertices[e.source].clone(),
                    target: self.vertices[e.target].clone(),
                })
                .collect(),
            cells: self
                .cells
                .iter()
                .map(|c| RawCell {
                    name: c.name.clone(),
                    boundary: c.boundary.iter().map(|l| self.letter_name(*l)).collect(),
                })
                .collect(),
        }
    }
}

/// `|V| - |E| + |F|`.
pub fn euler_characteristic(x: &TwoComplex) -> i64 {
    x.vertices.len() as i64 - x.edges.len() as i64 + x.cells.len() as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum End {
    /// Head end of the edge.
    Plus,
    /// Tail end of the edge.
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinkNode {
    pub edge: EdgeId,
    pub end: End,
}

impl LinkNode {
    pub fn plus(edge: EdgeId) -> Self {
        LinkNode {
            edge,
            end: End::Plus,
        }
    }

    pub fn minus(edge: EdgeId) -> Self {
        LinkNode {
            edge,
            end: End::Minus,
        }
    }

    pub fn opposite(self) -> Self {
        LinkNode {
            edge: self.edge,
            end: match self.end {
                End::Plus => End::Minus,
                End::Minus => End::Plus,
            },
        }
    }
}

/// Identifies the corner between letters `position` and `position + 1`
/// (cyclically) of a cell's boundary word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CornerRef {
    pub cell: CellId,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corner {
    pub at: CornerRef,
    /// `[H(u), T(w)]` as link nodes.
    pub ends: [LinkNode; 2],
    /// Indices of `ends` in the link's node list.
    pub nodes: [usize; 2],
}

impl Corner {
    pub fn is_loop(&self) -> bool {
        self.nodes[0] == self.nodes[1]
    }
}

/// A directed traversal of a corner. Forward runs `ends[0] -> ends[1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub corner: usize,
    pub reversed: bool,
}

impl Dart {
    pub fn reverse(self) -> Self {
        Dart {
            corner: self.corner,
            reversed: !self.reversed,
        }
    }

    pub fn index(self) -> usize {
        2 * self.corner + self.reversed as usize
    }

    pub fn from_index(i: usize) -> Self {
        Dart {
            corner: i / 2,
            reversed: i % 2 == 1,
        }
    }
}

/// The link `lk(v, X)`: nodes are edge ends at `v`, edges are corners at `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkGraph {
    pub base: VertexId,
    pub nodes: Vec<LinkNode>,
    pub corners: Vec<Corner>,
}

impl LinkGraph {
    pub fn node_index(&self, node: LinkNode) -> Option<usize> {
        self.nodes.iter().position(|n| *n == node)
    }

    pub fn corner_index(&self, at: CornerRef) -> Option<usize> {
        self.corners.iter().position(|c| c.at == at)
    }

    pub fn dart_tail(&self, d: Dart) -> usize {
        let c = &self.corners[d.corner];
        c.nodes[d.reversed as usize]
    }

    pub fn dart_head(&self, d: Dart) -> usize {
        let c = &self.corners[d.corner];
        c.nodes[1 - d.reversed as usize]
    }

    pub fn dart_count(&self) -> usize {
        2 * self.corners.len()
    }

    /// `nodes - corners`.
    pub fn euler_characteristic(&self) -> i64 {
        self.nodes.len() as i64 - self.corners.len() as i64
    }

    /// Outgoing darts per node, in dart index order.
    pub fn out_darts(&self) -> Vec<Vec<Dart>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for i in 0..self.dart_count() {
            let d = Dart::from_index(i);
            out[self.dart_tail(d)].push(d);
        }
        out
    }
}

pub fn link_graph(x: &TwoComplex, v: VertexId) -> LinkGraph {
    let mut nodes = Vec::new();
    for (id, e) in x.edges.iter().enumerate() {
        if e.target == v {
            nodes.push(LinkNode::plus(id));
        }
        if e.source == v {
            nodes.push(LinkNode::minus(id));
        }
    }
    nodes.sort();
    let index: BTreeMap<LinkNode, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let corners = x
        .corners()
        .filter(|at| x.corner_vertex(*at) == v)
        .map(|at| {
            let ends = x.corner_ends(at);
            Corner {
                at,
                ends,
                nodes: [index[&ends[0]], index[&ends[1]]],
            }
        })
        .collect();
    LinkGraph {
        base: v,
        nodes,
        corners,
    }
}

/// Links at every vertex, indexed by vertex id.
pub fn all_links(x: &TwoComplex) -> Vec<LinkGraph> {
    (0..x.vertices.len()).map(|v| link_graph(x, v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("dart {step} does not start where dart {prev} ends")]
    NotAWalk { prev: usize, step: usize },
    #[error("cycle does not close up")]
    NotClosed,
    #[error("dart {0} references a corner outside the link")]
    UnknownCorner(usize),
}

/// True when no dart is immediately followed by its own reversal. With
/// `cyclic`, the wrap-around step from last to first dart is checked too.
pub fn is_reduced_path(path: &[Dart], g: &LinkGraph, cyclic: bool) -> Result<bool, PathError> {
    for (i, d) in path.iter().enumerate() {
        if d.corner >= g.corners.len() {
            return Err(PathError::UnknownCorner(i));
        }
    }
    for i in 1..path.len() {
        if g.dart_head(path[i - 1]) != g.dart_tail(path[i]) {
            return Err(PathError::NotAWalk {
                prev: i - 1,
                step: i,
            });
        }
    }
    if cyclic && !path.is_empty() && g.dart_head(path[path.len() - 1]) != g.dart_tail(path[0]) {
        return Err(PathError::NotClosed);
    }
    let backtrack = path.windows(2).any(|w| w[1] == w[0].reverse());
    let wrap = cyclic && path.len() > 1 && path[0] == path[path.len() - 1].reverse();
    Ok(!backtrack && !wrap)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn corner_set(x: &TwoComplex, g: &LinkGraph) -> Vec<BTreeSet<String>> {
        g.corners
            .iter()
            .map(|c| c.ends.iter().map(|n| x.node_name(*n)).collect())
            .collect()
    }

    fn pair(a: &str, b: &str) -> BTreeSet<String> {
        [a.to_string(), b.to_string()].into_iter().collect()
    }

    #[test]
    fn torus_is_valid_without_flags() {
        let x = torus();
        assert!(x.flags().is_empty());
        assert_eq!(euler_characteristic(&x), 0);
    }

    #[test]
    fn dh_is_flagged_not_rejected() {
        let x = one_vertex(&["a"], &[("D", "a a a-")]);
        let texts: Vec<String> = x.flags().iter().map(|f| f.to_string()).collect();
        assert!(texts.contains(&"non-reduced boundary word at cell 1 position (2,3)".to_string()));
        assert!(!x.is_cyclically_reduced());
    }

    #[test]
    fn non_closed_boundary_is_an_error() {
        let r = raw(
            &["v", "w"],
            &[("a", "v", "w"), ("b", "v", "w")],
            &[("R", "a b")],
        );
        assert!(matches!(
            build_complex(&r),
            Err(ComplexError::NonClosedPath { .. })
        ));
    }

    #[test]
    fn unknown_and_duplicate_ids() {
        let r = raw(&["v"], &[("a", "v", "v")], &[("R", "a z")]);
        assert!(matches!(
            build_complex(&r),
            Err(ComplexError::UnknownEdge { .. })
        ));
        let r = raw(&["v"], &[("a", "v", "v"), ("a", "v", "v")], &[]);
        assert!(matches!(
            build_complex(&r),
            Err(ComplexError::DuplicateId { .. })
        ));
        let r = raw(&["v"], &[("a", "v", "w")], &[]);
        assert!(matches!(
            build_complex(&r),
            Err(ComplexError::UnknownVertex { .. })
        ));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&kt()), 0);
        let point = build_complex(&raw(&["v"], &[], &[])).unwrap();
        assert_eq!(euler_characteristic(&point), 1);
    }

    #[test]
    fn torus_link_is_a_four_cycle() {
        let x = torus();
        let g = link_graph(&x, 0);
        assert_eq!(g.nodes.len(), 4);
        assert_eq!(
            corner_set(&x, &g),
            vec![
                pair("a+", "b-"),
                pair("b+", "a+"),
                pair("a-", "b+"),
                pair("b-", "a-")
            ]
        );
        // every node has degree 2
        let mut deg = vec![0; 4];
        for c in &g.corners {
            deg[c.nodes[0]] += 1;
            deg[c.nodes[1]] += 1;
        }
        assert_eq!(deg, vec![2; 4]);
    }

    #[test]
    fn trefoil_link_corners() {
        let x = kt();
        let g = link_graph(&x, 0);
        assert_eq!(g.nodes.len(), 6);
        let expected = vec![
            pair("a+", "c-"),
            pair("c+", "b+"),
            pair("b-", "c+"),
            pair("c-", "a-"),
            pair("b+", "a-"),
            pair("a+", "c+"),
            pair("c-", "a+"),
            pair("a-", "b-"),
        ];
        assert_eq!(corner_set(&x, &g), expected);
    }

    #[test]
    fn link_without_cells_has_only_nodes() {
        let x = one_vertex(&["a", "b"], &[]);
        let g = link_graph(&x, 0);
        assert_eq!(g.nodes.len(), 4);
        assert!(g.corners.is_empty());
    }

    #[test]
    fn multi_vertex_links_split_ends() {
        let r = raw(
            &["v", "w"],
            &[("a", "v", "w"), ("b", "w", "v")],
            &[("R", "a b")],
        );
        let x = build_complex(&r).unwrap();
        let lv = link_graph(&x, 0);
        let lw = link_graph(&x, 1);
        assert_eq!(lv.nodes.len() + lw.nodes.len(), 2 * x.edges().len());
        assert_eq!(lv.corners.len() + lw.corners.len(), x.corner_count());
        assert_eq!(corner_set(&x, &lw), vec![pair("a+", "b-")]);
    }

    #[test]
    fn reduced_paths() {
        let x = torus();
        let g = link_graph(&x, 0);
        let d = Dart {
            corner: 0,
            reversed: false,
        };
        assert!(!is_reduced_path(&[d, d.reverse()], &g, false).unwrap());
        // walk around the 4-cycle: a+ -> b- -> a- -> b+ -> a+
        let cycle = [
            Dart {
                corner: 0,
                reversed: false,
            },
            Dart {
                corner: 3,
                reversed: false,
            },
            Dart {
                corner: 2,
                reversed: false,
            },
            Dart {
                corner: 1,
                reversed: false,
            },
        ];
        assert!(is_reduced_path(&cycle, &g, true).unwrap());
        assert!(matches!(
            is_reduced_path(&[cycle[0], cycle[2]], &g, false),
            Err(PathError::NotAWalk { .. })
        ));
    }

    #[test]
    fn loop_corner_is_a_reduced_one_cycle() {
        // the pair (a-, a) joins H(a-) = a- to T(a) = a-
        let x = one_vertex(&["a", "b"], &[("R", "a b- a- a b")]);
        let g = link_graph(&x, 0);
        let li = g.corners.iter().position(|c| c.is_loop()).unwrap();
        let d = Dart {
            corner: li,
            reversed: false,
        };
        assert!(is_reduced_path(&[d], &g, true).unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn word_strategy() -> impl Strategy<Value = Vec<(usize, bool)>> {
            prop::collection::vec((0usize..3, any::<bool>()), 1..7)
        }

        proptest! {
            #[test]
            fn link_counts_match(words in prop::collection::vec(word_strategy(), 0..4)) {
                let gens = ["a", "b", "c"];
                let texts: Vec<String> = words.iter().map(|w| w.iter().map(|(g, inv)| {
                    format!("{}{}", gens[*g], if *inv { "-" } else { "" })
                }).collect::<Vec<_>>().join(" ")).collect();
                let names: Vec<String> = (0..texts.len()).map(|i| format!("R{i}")).collect();
                let cells: Vec<(&str, &str)> = names.iter().map(String::as_str).zip(texts.iter().map(String::as_str)).collect();
                let x = one_vertex(&gens, &cells);
                let links = all_links(&x);
                let nodes: usize = links.iter().map(|l| l.nodes.len()).sum();
                let corners: usize = links.iter().map(|l| l.corners.len()).sum();
                prop_assert_eq!(nodes, 2 * x.edges().len());
                prop_assert_eq!(corners, x.corner_count());
            }

            #[test]
            fn rotation_invariance(word in word_strategy(), shift in 0usize..7) {
                let gens = ["a", "b", "c"];
                let letters: Vec<String> = word.iter().map(|(g, inv)| {
                    format!("{}{}", gens[*g], if *inv { "-" } else { "" })
                }).collect();
                let k = shift % letters.len();
                let mut rotated = letters.clone();
                rotated.rotate_left(k);
                let x1 = one_vertex(&gens, &[("R", &letters.join(" "))]);
                let x2 = one_vertex(&gens, &[("R", &rotated.join(" "))]);
                let mut c1: Vec<_> = link_graph(&x1, 0).corners.iter().map(|c| {
                    let mut e = c.ends; e.sort(); e
                }).collect();
                let mut c2: Vec<_> = link_graph(&x2, 0).corners.iter().map(|c| {
                    let mut e = c.ends; e.sort(); e
                }).collect();
                c1.sort();
                c2.sort();
                prop_assert_eq!(c1, c2);
            }
        }
    }
}
