//! Sub-LOTs and quotients.
//!
//! In a tree a subtree is determined by its vertex set, so sub-LOTs are
//! enumerated as connected vertex sets of size at least 2 whose induced
//! edges have all their labels inside the set.

use serde::{Deserialize, Serialize};

use super::properties::boundary_reducible_vertex;
use super::{Lot, LotEdge, LotError};
use crate::caps::SearchCaps;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubLot {
    /// Sorted vertex indices into the parent.
    pub vertices: Vec<usize>,
    /// Edge indices into the parent.
    pub edges: Vec<usize>,
    pub proper: bool,
    pub lot: Lot,
}

fn adjacency(l: &Lot) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); l.vertices().len()];
    for e in l.edges() {
        adj[e.source].push(e.target);
        adj[e.target].push(e.source);
    }
    adj
}

/// Every connected vertex set, each reported once (sorted), via extension
/// from its smallest vertex.
fn connected_sets(adj: &[Vec<usize>], mut visit: impl FnMut(&[usize])) {
    fn extend(
        adj: &[Vec<usize>],
        root: usize,
        set: &mut Vec<usize>,
        frontier: &[usize],
        banned: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let mut sorted = set.clone();
        sorted.sort_unstable();
        visit(&sorted);
        let mut local_bans = Vec::new();
        for (k, &w) in frontier.iter().enumerate() {
            // choose w as the next vertex; frontier vertices before it are excluded
            set.push(w);
            let mut next: Vec<usize> = frontier[k + 1..].to_vec();
            for &u in &adj[w] {
                if u > root && !banned[u] && !set.contains(&u) && !next.contains(&u) {
                    next.push(u);
                }
            }
            banned[w] = true;
            local_bans.push(w);
            extend(adj, root, set, &next, banned, visit);
            set.pop();
        }
        for w in local_bans {
            banned[w] = false;
        }
    }

    let n = adj.len();
    for root in 0..n {
        let mut banned = vec![false; n];
        banned[root] = true;
        let frontier: Vec<usize> = adj[root].iter().copied().filter(|u| *u > root).collect();
        extend(
            adj,
            root,
            &mut vec![root],
            &frontier,
            &mut banned,
            &mut visit,
        );
    }
}

fn induced_edges(l: &Lot, set: &[usize]) -> Vec<usize> {
    (0..l.edges().len())
        .filter(|e| {
            let e = &l.edges()[*e];
            set.contains(&e.source) && set.contains(&e.target)
        })
        .collect()
}

fn as_sub_lot(l: &Lot, set: &[usize]) -> Option<SubLot> {
    if set.len() < 2 {
        return None;
    }
    let edges = induced_edges(l, set);
    if edges.iter().any(|e| !set.contains(&l.edges()[*e].label)) {
        return None;
    }
    Some(SubLot {
        vertices: set.to_vec(),
        lot: l.restrict(set, &edges),
        edges,
        proper: set.len() < l.vertices().len(),
    })
}

/// All sub-LOTs, including the LOT itself, sorted by size and then vertex
/// indices.
pub fn enumerate_sub_lots(l: &Lot, caps: &SearchCaps) -> Result<Vec<SubLot>, LotError> {
    l.require_tree()?;
    if l.vertices().len() > caps.sub_lot_vertices {
        return Err(LotError::SearchCapExceeded {
            what: "sub-LOT enumeration",
            size: l.vertices().len(),
            cap: caps.sub_lot_vertices,
        });
    }
    let mut out = Vec::new();
    connected_sets(&adjacency(l), |set| {
        if let Some(s) = as_sub_lot(l, set) {
            out.push(s);
        }
    });
    out.sort_by(|a, b| (a.vertices.len(), &a.vertices).cmp(&(b.vertices.len(), &b.vertices)));
    Ok(out)
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.contains(v))
}

/// An inclusion-maximal proper sub-LOT; among several, the one with the
/// lexicographically smallest sorted vertex-index list.
pub fn maximal_proper_sub_lot(l: &Lot, caps: &SearchCaps) -> Result<Option<SubLot>, LotError> {
    let proper: Vec<SubLot> = enumerate_sub_lots(l, caps)?
        .into_iter()
        .filter(|s| s.proper)
        .collect();
    let mut maximal: Vec<&SubLot> = proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|o| o.vertices.len() > s.vertices.len() && is_subset(&s.vertices, &o.vertices))
        })
        .collect();
    maximal.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(maximal.first().map(|s| (*s).clone()))
}

/// A sub-LOT (possibly the LOT itself) that is not boundary reduced.
pub fn boundary_reducible_sub_lot(l: &Lot, caps: &SearchCaps) -> Result<Option<SubLot>, LotError> {
    Ok(enumerate_sub_lots(l, caps)?
        .into_iter()
        .find(|s| boundary_reducible_vertex(&s.lot).is_some()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quotient {
    pub lot: Lot,
    /// The vertex of the collapsed sub-LOT that labels none of its edges.
    pub collapse_vertex: String,
}

/// Collapses the sub-LOT on `sub_vertices` to its unique non-label vertex.
/// Edges outside keep their names and labels; the remaining vertices keep
/// their order.
pub fn quotient(l: &Lot, sub_vertices: &[usize]) -> Result<Quotient, LotError> {
    let mut set = sub_vertices.to_vec();
    set.sort_unstable();
    set.dedup();
    let sub = as_sub_lot(l, &set).ok_or_else(|| {
        LotError::NotSubLot(
            set.iter()
                .map(|v| {
                    l.vertices()
                        .get(*v)
                        .cloned()
                        .unwrap_or_else(|| v.to_string())
                })
                .collect::<Vec<_>>()
                .join(" "),
        )
    })?;
    if !sub.lot.is_connected() {
        return Err(LotError::NotSubLot("vertex set is not connected".into()));
    }
    let non_labels: Vec<usize> = set
        .iter()
        .copied()
        .filter(|v| !sub.edges.iter().any(|e| l.edges()[*e].label == *v))
        .collect();
    let [y] = non_labels[..] else {
        return Err(LotError::AmbiguousCollapseVertex(
            non_labels
                .iter()
                .map(|v| l.vertices()[*v].clone())
                .collect(),
        ));
    };
    let kept: Vec<usize> = (0..l.vertices().len())
        .filter(|v| *v == y || !set.contains(v))
        .collect();
    let image = |v: usize| {
        let v = if set.contains(&v) { y } else { v };
        kept.iter().position(|k| *k == v).expect("kept vertex")
    };
    let edges = (0..l.edges().len())
        .filter(|e| !sub.edges.contains(e))
        .map(|e| {
            let e = &l.edges()[e];
            LotEdge {
                name: e.name.clone(),
                source: image(e.source),
                target: image(e.target),
                label: image(e.label),
            }
        })
        .collect();
    Ok(Quotient {
        lot: Lot::new(
            kept.iter().map(|v| l.vertices()[*v].clone()).collect(),
            edges,
        )?,
        collapse_vertex: l.vertices()[y].clone(),
    })
}
