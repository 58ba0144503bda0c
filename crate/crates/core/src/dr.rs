//! DR(2) certificates from three sufficient conditions:
//!
//! * weighted: non-negative angles passing the weight test, with every
//!   reduced link path from `e+` to `e-` of weight at least 2;
//! * zero/one: a coloring-test structure separating `e+` from `e-` in `lk0`;
//! * C(4)-T(4): every relator needs four pieces, the link has no reduced
//!   cycle shorter than 4, and no boundary word contains `e e`.
//!
//! The last two also conclude local indicability. Each certificate carries
//! the data needed to re-check it without repeating a search.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{link_graph, LinkNode, TwoComplex};
use crate::curvature::{
    self, coloring_test, group_by_label, lk0_labels, walk_of, weight_test, AngleAssignment,
    CurvatureError, ZeroOneAssignment,
};
use crate::cycles::{min_weight_path, reduced_girth};
use crate::dsu::Dsu;
use crate::pieces::{compute_pieces, PieceDecomposition, PieceError};
use crate::rational::{self, int, Q};
use crate::verdict::{TestVerdict, Witness};

pub const PATH_CONVENTION: &str =
    "edge-end paths are minimized over reduced paths; with non-negative weights this bounds all paths";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrError {
    #[error("the complex has {0} vertices; these criteria need a single vertex")]
    MultiVertex(usize),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Pieces(#[from] PieceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dr2Method {
    Weighted,
    ZeroOne,
    C4t4,
}

impl Dr2Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Dr2Method::Weighted => "weighted",
            Dr2Method::ZeroOne => "zero_one",
            Dr2Method::C4t4 => "c4t4",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub dr2: bool,
    /// `false` means "not concluded", never "disproved".
    pub locally_indicable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePathBound {
    pub edge: String,
    /// `None` when no path joins the two ends.
    #[serde(with = "rational::opt_string")]
    pub min_weight: Option<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedHypotheses {
    pub angles: AngleAssignment,
    #[serde(with = "rational::opt_string")]
    pub min_cycle_weight: Option<Q>,
    pub edge_paths: Vec<EdgePathBound>,
    pub conventions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSplit {
    pub edge: String,
    pub plus_component: usize,
    pub minus_component: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroOneHypotheses {
    pub zero_one: ZeroOneAssignment,
    /// Partition of link nodes (`e+`/`e-` names) into lk0 components.
    pub components: Vec<Vec<String>>,
    pub edge_splits: Vec<EdgeSplit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct C4t4Hypotheses {
    pub pieces: PieceDecomposition,
    /// Shortest reduced link cycle; `None` for a forest.
    pub link_girth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Hypotheses {
    Weighted(WeightedHypotheses),
    ZeroOne(ZeroOneHypotheses),
    C4t4(C4t4Hypotheses),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dr2Certificate {
    pub method: Dr2Method,
    pub hypotheses: Hypotheses,
    pub conclusion: Conclusion,
}

/// A failed attempt: which hypothesis broke and where.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dr2Failure {
    pub method: Dr2Method,
    pub witness: Witness,
}

pub type Dr2Outcome = Result<Dr2Certificate, Dr2Failure>;

fn single_vertex(x: &TwoComplex) -> Result<(), DrError> {
    if x.is_single_vertex() {
        Ok(())
    } else {
        Err(DrError::MultiVertex(x.vertices().len()))
    }
}

fn fail(method: Dr2Method, v: TestVerdict) -> Dr2Failure {
    Dr2Failure {
        method,
        witness: v.witness.expect("failed verdict carries a witness"),
    }
}

fn edge_path_bounds(
    x: &TwoComplex,
    angles: &AngleAssignment,
) -> Vec<(EdgePathBound, Option<crate::verdict::LinkWalk>)> {
    let g = link_graph(x, 0);
    let w = angles.link_weights(&g);
    x.edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let from = g.node_index(LinkNode::plus(e)).expect("single vertex");
            let to = g.node_index(LinkNode::minus(e)).expect("single vertex");
            let path = min_weight_path(&g, &w, from, to).map(|p| walk_of(x, &g, &p));
            (
                EdgePathBound {
                    edge: edge.name.clone(),
                    min_weight: path.as_ref().map(|p| p.weight),
                },
                path,
            )
        })
        .collect()
}

/// Weighted criterion. Concludes DR(2) only.
pub fn check_dr2_weighted(x: &TwoComplex, angles: &AngleAssignment) -> Result<Dr2Outcome, DrError> {
    single_vertex(x)?;
    let verdict = weight_test(x, angles)?;
    if !verdict.pass {
        return Ok(Err(fail(Dr2Method::Weighted, verdict)));
    }
    let bounds = edge_path_bounds(x, angles);
    for (b, path) in &bounds {
        if let Some(p) = path {
            if p.weight < int(2) {
                return Ok(Err(Dr2Failure {
                    method: Dr2Method::Weighted,
                    witness: Witness::LightEdgePath {
                        edge: b.edge.clone(),
                        path: p.clone(),
                    },
                }));
            }
        }
    }
    let g = link_graph(x, 0);
    let min_cycle = curvature::min_reduced_cycle_weight(x, &g, angles)?.map(|c| c.weight);
    Ok(Ok(Dr2Certificate {
        method: Dr2Method::Weighted,
        hypotheses: Hypotheses::Weighted(WeightedHypotheses {
            angles: angles.clone(),
            min_cycle_weight: min_cycle,
            edge_paths: bounds.into_iter().map(|(b, _)| b).collect(),
            conventions: vec![
                PATH_CONVENTION.to_string(),
                curvature::LOOP_CONVENTION.to_string(),
            ],
        }),
        conclusion: Conclusion {
            dr2: true,
            locally_indicable: false,
        },
    }))
}

/// Zero/one criterion. Concludes DR(2) and local indicability.
pub fn check_dr2_zero_one(x: &TwoComplex, z: &ZeroOneAssignment) -> Result<Dr2Outcome, DrError> {
    single_vertex(x)?;
    let verdict = coloring_test(x, z)?;
    if !verdict.pass {
        return Ok(Err(fail(Dr2Method::ZeroOne, verdict)));
    }
    let g = link_graph(x, 0);
    let labels = lk0_labels(&g, z);
    let mut splits = Vec::with_capacity(x.edges().len());
    for (e, edge) in x.edges().iter().enumerate() {
        let p = labels[g.node_index(LinkNode::plus(e)).expect("single vertex")];
        let m = labels[g.node_index(LinkNode::minus(e)).expect("single vertex")];
        if p == m {
            return Ok(Err(Dr2Failure {
                method: Dr2Method::ZeroOne,
                witness: Witness::EdgeEndsJoined {
                    edge: edge.name.clone(),
                },
            }));
        }
        splits.push(EdgeSplit {
            edge: edge.name.clone(),
            plus_component: p,
            minus_component: m,
        });
    }
    let components = group_by_label(&g, &labels)
        .iter()
        .map(|c| c.iter().map(|n| x.node_name(*n)).collect())
        .collect();
    Ok(Ok(Dr2Certificate {
        method: Dr2Method::ZeroOne,
        hypotheses: Hypotheses::ZeroOne(ZeroOneHypotheses {
            zero_one: z.clone(),
            components,
            edge_splits: splits,
        }),
        conclusion: Conclusion {
            dr2: true,
            locally_indicable: true,
        },
    }))
}

/// C(4) through piece counts and T(4) through the reduced link girth.
pub fn check_c4t4(x: &TwoComplex) -> Result<TestVerdict, DrError> {
    single_vertex(x)?;
    let pieces = compute_pieces(x)?;
    for c in &pieces.cells {
        if let Some(n) = c.min_count.filter(|n| *n < 4) {
            return Ok(TestVerdict::fail(Witness::FewPieces {
                cell: c.cell.clone(),
                count: n,
                decomposition: c.decomposition.clone(),
            }));
        }
    }
    let g = link_graph(x, 0);
    if let Some(c) = reduced_girth(&g) {
        if c.darts.len() < 4 {
            let mut walk = walk_of(x, &g, &c);
            walk.weight = int(c.darts.len() as i64);
            return Ok(TestVerdict::fail(Witness::ShortLinkCycle {
                length: c.darts.len(),
                walk,
            }));
        }
    }
    Ok(TestVerdict::pass())
}

/// First `e e` or `e- e-` in a boundary word, cyclically.
fn repeated_letter(x: &TwoComplex) -> Option<Witness> {
    x.cells().iter().find_map(|c| {
        let n = c.boundary.len();
        (0..n)
            .find(|i| n > 1 && c.boundary[*i] == c.boundary[(i + 1) % n])
            .map(|i| Witness::RepeatedLetter {
                cell: c.name.clone(),
                positions: (i, (i + 1) % n),
            })
    })
}

/// C(4)-T(4) criterion. Concludes DR(2) and local indicability.
pub fn check_dr2_c4t4(x: &TwoComplex) -> Result<Dr2Outcome, DrError> {
    single_vertex(x)?;
    if let Some(flag) = x.flags().first() {
        let cell = match flag {
            crate::complex::ValidationFlag::NonReduced { cell, .. }
            | crate::complex::ValidationFlag::NotCyclicallyReduced { cell, .. } => *cell,
        };
        return Ok(Err(Dr2Failure {
            method: Dr2Method::C4t4,
            witness: Witness::NotCyclicallyReduced {
                cell: x.cells()[cell].name.clone(),
            },
        }));
    }
    if let Some(w) = repeated_letter(x) {
        return Ok(Err(Dr2Failure {
            method: Dr2Method::C4t4,
            witness: w,
        }));
    }
    let verdict = check_c4t4(x)?;
    if !verdict.pass {
        return Ok(Err(fail(Dr2Method::C4t4, verdict)));
    }
    let g = link_graph(x, 0);
    Ok(Ok(Dr2Certificate {
        method: Dr2Method::C4t4,
        hypotheses: Hypotheses::C4t4(C4t4Hypotheses {
            pieces: compute_pieces(x)?,
            link_girth: reduced_girth(&g).map(|c| c.darts.len()),
        }),
        conclusion: Conclusion {
            dr2: true,
            locally_indicable: true,
        },
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate rejected: {0}")]
pub struct VerifyError(pub String);

fn reject<T>(msg: impl Into<String>) -> Result<T, VerifyError> {
    Err(VerifyError(msg.into()))
}

/// Re-checks a certificate against its complex from the embedded data.
pub fn verify_dr2(x: &TwoComplex, cert: &Dr2Certificate) -> Result<(), VerifyError> {
    if !x.is_single_vertex() {
        return reject("complex is not single-vertex");
    }
    if !cert.conclusion.dr2 {
        return reject("certificate does not conclude DR(2)");
    }
    match (&cert.method, &cert.hypotheses) {
        (Dr2Method::Weighted, Hypotheses::Weighted(h)) => verify_weighted(x, cert, h),
        (Dr2Method::ZeroOne, Hypotheses::ZeroOne(h)) => verify_zero_one(x, h),
        (Dr2Method::C4t4, Hypotheses::C4t4(h)) => verify_c4t4(x, h),
        _ => reject("method does not match hypotheses"),
    }
}

fn verify_weighted(
    x: &TwoComplex,
    cert: &Dr2Certificate,
    h: &WeightedHypotheses,
) -> Result<(), VerifyError> {
    if cert.conclusion.locally_indicable {
        return reject("the weighted criterion does not conclude local indicability");
    }
    let angles = &h.angles;
    angles
        .check_shape(x)
        .map_err(|e| VerifyError(e.to_string()))?;
    angles
        .check_nonnegative(x)
        .map_err(|e| VerifyError(e.to_string()))?;
    for d in 0..x.cells().len() {
        let n = x.cells()[d].boundary.len() as i64;
        let sum: Q = angles.rows()[d].iter().sum();
        if sum > int(n - 2) {
            return reject(format!("cell {} has positive curvature", x.cells()[d].name));
        }
    }
    let g = link_graph(x, 0);
    let recomputed = curvature::min_reduced_cycle_weight(x, &g, angles)
        .map_err(|e| VerifyError(e.to_string()))?
        .map(|c| c.weight);
    if recomputed != h.min_cycle_weight {
        return reject("recorded minimum cycle weight does not match");
    }
    if recomputed.is_some_and(|w| w < int(2)) {
        return reject("a reduced link cycle is lighter than 2");
    }
    let bounds = edge_path_bounds(x, angles);
    if bounds.len() != h.edge_paths.len() {
        return reject("edge path list has the wrong length");
    }
    for ((b, _), rec) in bounds.iter().zip(&h.edge_paths) {
        if b != rec {
            return reject(format!("edge {} path bound does not match", rec.edge));
        }
        if b.min_weight.is_some_and(|w| w < int(2)) {
            return reject(format!("edge {} ends are joined by a light path", rec.edge));
        }
    }
    Ok(())
}

/// Checks the recorded partition directly: each block must be a tree of
/// angle-0 corners, angle-1 corners must cross blocks, and `e+`, `e-` must
/// lie in different blocks.
fn verify_zero_one(x: &TwoComplex, h: &ZeroOneHypotheses) -> Result<(), VerifyError> {
    let z = &h.zero_one;
    z.check_shape(x).map_err(|e| VerifyError(e.to_string()))?;
    for (d, c) in x.cells().iter().enumerate() {
        let ones = (0..c.boundary.len())
            .filter(|p| {
                z.is_one(crate::complex::CornerRef {
                    cell: d,
                    position: *p,
                })
            })
            .count() as i64;
        if ones > c.boundary.len() as i64 - 2 {
            return reject(format!("cell {} has positive curvature", c.name));
        }
    }
    let g = link_graph(x, 0);
    let names: Vec<String> = g.nodes.iter().map(|n| x.node_name(*n)).collect();
    let mut block = vec![usize::MAX; names.len()];
    for (b, members) in h.components.iter().enumerate() {
        for m in members {
            let Some(i) = names.iter().position(|n| n == m) else {
                return reject(format!("unknown link node {m}"));
            };
            if block[i] != usize::MAX {
                return reject(format!("link node {m} listed twice"));
            }
            block[i] = b;
        }
    }
    if block.contains(&usize::MAX) {
        return reject("partition misses a link node");
    }
    let mut zero_edges = vec![0usize; h.components.len()];
    let mut dsu = Dsu::new(names.len());
    for c in &g.corners {
        let [p, q] = c.nodes;
        if z.is_one(c.at) {
            if block[p] == block[q] {
                return reject("an angle-1 corner lies inside one component");
            }
        } else {
            if block[p] != block[q] {
                return reject("an angle-0 corner joins two components");
            }
            zero_edges[block[p]] += 1;
            dsu.union(p, q);
        }
    }
    for (b, members) in h.components.iter().enumerate() {
        if members.is_empty() || zero_edges[b] + 1 != members.len() {
            return reject(format!("component {b} is not a tree"));
        }
        let first = names
            .iter()
            .position(|n| *n == members[0])
            .expect("checked above");
        for m in &members[1..] {
            let i = names.iter().position(|n| n == m).expect("checked above");
            if !dsu.same(first, i) {
                return reject(format!("component {b} is not connected"));
            }
        }
    }
    if h.edge_splits.len() != x.edges().len() {
        return reject("edge split list has the wrong length");
    }
    for (e, edge) in x.edges().iter().enumerate() {
        let p = block[g.node_index(LinkNode::plus(e)).expect("single vertex")];
        let m = block[g.node_index(LinkNode::minus(e)).expect("single vertex")];
        if p == m {
            return reject(format!("{0}+ and {0}- share a component", edge.name));
        }
        let rec = &h.edge_splits[e];
        if rec.edge != edge.name || rec.plus_component != p || rec.minus_component != m {
            return reject(format!("edge split for {} does not match", edge.name));
        }
    }
    Ok(())
}

fn verify_c4t4(x: &TwoComplex, h: &C4t4Hypotheses) -> Result<(), VerifyError> {
    if !x.is_cyclically_reduced() {
        return reject("a boundary word is not cyclically reduced");
    }
    if repeated_letter(x).is_some() {
        return reject("a boundary word contains e e");
    }
    let pieces = compute_pieces(x).map_err(|e| VerifyError(e.to_string()))?;
    if pieces != h.pieces {
        return reject("piece decomposition does not match");
    }
    for c in &h.pieces.cells {
        let ci = x
            .cell_id(&c.cell)
            .ok_or_else(|| VerifyError(format!("unknown cell {}", c.cell)))?;
        if let Some(n) = c.min_count {
            if n < 4 {
                return reject(format!("cell {} splits into {n} pieces", c.cell));
            }
            // the recorded segments tile the cyclic word
            let len = x.cells()[ci].boundary.len();
            let total: usize = c.segments.iter().map(|s| s.len).sum();
            let contiguous = c
                .segments
                .windows(2)
                .all(|w| (w[0].start + w[0].len) % len == w[1].start);
            if total != len || !contiguous || c.segments.len() != n {
                return reject(format!(
                    "cell {} decomposition does not tile the word",
                    c.cell
                ));
            }
        }
    }
    let g = link_graph(x, 0);
    let girth = reduced_girth(&g).map(|c| c.darts.len());
    if girth != h.link_girth {
        return reject("recorded link girth does not match");
    }
    if girth.is_some_and(|n| n < 4) {
        return reject("link has a reduced cycle shorter than 4");
    }
    Ok(())
}

/// Runs every criterion that applies and returns the first certificate
/// (zero/one, then C(4)-T(4), then weighted) plus all failures.
pub fn certify_dr2(
    x: &TwoComplex,
    zero_one: Option<&ZeroOneAssignment>,
    weights: Option<&AngleAssignment>,
) -> Result<(Option<Dr2Certificate>, Vec<Dr2Failure>), DrError> {
    single_vertex(x)?;
    let mut failures = Vec::new();
    let mut found = None;
    let mut take = |outcome: Dr2Outcome| match outcome {
        Ok(c) => {
            if found.is_none() {
                found = Some(c);
            }
        }
        Err(f) => failures.push(f),
    };
    if let Some(z) = zero_one {
        take(check_dr2_zero_one(x, z)?);
    }
    match check_dr2_c4t4(x) {
        Ok(o) => take(o),
        Err(DrError::Pieces(_)) => {}
        Err(e) => return Err(e),
    }
    if let Some(w) = weights {
        take(check_dr2_weighted(x, w)?);
    }
    Ok((found, failures))
}
