//! Reduction moves: compression, interior folding and boundary pruning.
//! Each move preserves the presentation group up to isomorphism.

use serde::{Deserialize, Serialize};

use super::properties::{boundary_reducible_vertex, interior_reducible_pair, uncompressed_edge};
use super::{Lot, LotEdge, LotError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum ReductionMove {
    /// Contract `edge` (its label is one of its ends), merging `removed`
    /// into `kept`.
    Compress {
        edge: String,
        removed: String,
        kept: String,
    },
    /// `first` and `second` share `vertex`, direction and label; their far
    /// ends are identified (`removed` into `kept`) and `second` is dropped.
    InteriorFold {
        first: String,
        second: String,
        vertex: String,
        removed: String,
        kept: String,
    },
    /// Remove a valency-1 vertex that labels nothing, with its edge.
    BoundaryPrune { vertex: String, edge: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionLog {
    pub moves: Vec<ReductionMove>,
}

/// Removes edge `drop`, then replaces vertex `from` by `into` everywhere.
fn merge(l: &Lot, drop: Option<usize>, from: usize, into: usize) -> Lot {
    let renumber = |v: usize| {
        let v = if v == from { into } else { v };
        if v > from {
            v - 1
        } else {
            v
        }
    };
    let mut vertices = l.vertices().to_vec();
    if from != into {
        vertices.remove(from);
    }
    let edges = l
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != drop)
        .map(|(_, e)| {
            if from == into {
                e.clone()
            } else {
                LotEdge {
                    name: e.name.clone(),
                    source: renumber(e.source),
                    target: renumber(e.target),
                    label: renumber(e.label),
                }
            }
        })
        .collect();
    Lot::new(vertices, edges).expect("merging keeps a valid graph")
}

fn compress(l: &Lot, e: usize) -> (Lot, ReductionMove) {
    let edge = &l.edges()[e];
    let (kept, removed) = if edge.label == edge.source {
        (edge.source, edge.target)
    } else {
        (edge.target, edge.source)
    };
    let mv = ReductionMove::Compress {
        edge: edge.name.clone(),
        removed: l.vertices()[removed].clone(),
        kept: l.vertices()[kept].clone(),
    };
    (merge(l, Some(e), removed, kept), mv)
}

fn fold(l: &Lot, i: usize, j: usize, v: usize) -> (Lot, ReductionMove) {
    let far = |e: &LotEdge| if e.source == v { e.target } else { e.source };
    let (kept, removed) = (far(&l.edges()[i]), far(&l.edges()[j]));
    let mv = ReductionMove::InteriorFold {
        first: l.edges()[i].name.clone(),
        second: l.edges()[j].name.clone(),
        vertex: l.vertices()[v].clone(),
        removed: l.vertices()[removed].clone(),
        kept: l.vertices()[kept].clone(),
    };
    (merge(l, Some(j), removed, kept), mv)
}

fn prune(l: &Lot, v: usize) -> (Lot, ReductionMove) {
    let e = l
        .edges()
        .iter()
        .position(|e| e.source == v || e.target == v)
        .expect("valency-1 vertex has an edge");
    let mv = ReductionMove::BoundaryPrune {
        vertex: l.vertices()[v].clone(),
        edge: l.edges()[e].name.clone(),
    };
    let mut vertices = l.vertices().to_vec();
    vertices.remove(v);
    let shift = |w: usize| if w > v { w - 1 } else { w };
    let edges = l
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != e)
        .map(|(_, x)| LotEdge {
            name: x.name.clone(),
            source: shift(x.source),
            target: shift(x.target),
            label: shift(x.label),
        })
        .collect();
    (
        Lot::new(vertices, edges).expect("pruning keeps a valid graph"),
        mv,
    )
}

fn step(l: &Lot) -> Option<(Lot, ReductionMove)> {
    if let Some(e) = uncompressed_edge(l) {
        return Some(compress(l, e));
    }
    if let Some((i, j, v)) = interior_reducible_pair(l) {
        return Some(fold(l, i, j, v));
    }
    boundary_reducible_vertex(l).map(|v| prune(l, v))
}

/// Applies reduction moves until none applies, always preferring a
/// compression, then an interior fold, then a boundary pruning; within a
/// kind the first candidate in edge (or vertex) order is used.
pub fn reduce_lot(l: &Lot) -> (Lot, ReductionLog) {
    let mut cur = l.clone();
    let mut log = ReductionLog::default();
    while let Some((next, mv)) = step(&cur) {
        log.moves.push(mv);
        cur = next;
    }
    (cur, log)
}

/// Re-applies a logged sequence of moves, checking each one is legal.
pub fn replay(l: &Lot, log: &ReductionLog) -> Result<Lot, LotError> {
    let mut cur = l.clone();
    for mv in &log.moves {
        let bad = || LotError::BadMove(format!("{mv:?}"));
        let vid = |c: &Lot, n: &str| c.vertex_id(n).ok_or_else(bad);
        let eid = |c: &Lot, n: &str| c.edge_id(n).ok_or_else(bad);
        let (next, redone) = match mv {
            ReductionMove::Compress { edge, .. } => {
                let e = eid(&cur, edge)?;
                let x = &cur.edges()[e];
                if x.label != x.source && x.label != x.target {
                    return Err(bad());
                }
                compress(&cur, e)
            }
            ReductionMove::InteriorFold {
                first,
                second,
                vertex,
                ..
            } => {
                let (i, j, v) = (eid(&cur, first)?, eid(&cur, second)?, vid(&cur, vertex)?);
                let (a, b) = (&cur.edges()[i], &cur.edges()[j]);
                let same_side =
                    (a.source == v && b.source == v) || (a.target == v && b.target == v);
                if i == j || a.label != b.label || !same_side {
                    return Err(bad());
                }
                fold(&cur, i, j, v)
            }
            ReductionMove::BoundaryPrune { vertex, .. } => {
                let v = vid(&cur, vertex)?;
                if cur.valency(v) != 1 || cur.is_label(v) {
                    return Err(bad());
                }
                prune(&cur, v)
            }
        };
        if &redone != mv {
            return Err(bad());
        }
        cur = next;
    }
    Ok(cur)
}
