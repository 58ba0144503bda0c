//! The bi-forest orientation search on the link of a LOT complex.
//!
//! A sign per generator `x` puts `x+` into the first node class and `x-`
//! into the second (or the reverse for `-`). Each class spans a subgraph of
//! the link; the search looks for signs making both spanned subgraphs
//! forests. Corners inside a class get angle 0, the others angle 1.

use serde::{Deserialize, Serialize};

use super::{lot_complex, Lot, LotError};
use crate::caps::SearchCaps;
use crate::complex::{link_graph, CornerRef, End, LinkGraph, LinkNode};
use crate::curvature::ZeroOneAssignment;
use crate::dsu::Dsu;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiForestStructure {
    /// One sign per LOT vertex, in vertex order.
    pub signs: Vec<Sign>,
    /// Link nodes of the first class (`x+` for `+`, `x-` for `-`).
    pub lambda1: Vec<String>,
    pub lambda2: Vec<String>,
    /// Corners spanned by each class.
    pub lambda1_corners: Vec<CornerRef>,
    pub lambda2_corners: Vec<CornerRef>,
    pub zero_one: ZeroOneAssignment,
}

/// 0 for the first class, 1 for the second.
fn class(signs: &[Sign], n: LinkNode) -> u8 {
    match (signs[n.edge], n.end) {
        (Sign::Plus, End::Plus) | (Sign::Minus, End::Minus) => 0,
        _ => 1,
    }
}

fn node_slot(n: LinkNode) -> usize {
    2 * n.edge + (n.end == End::Minus) as usize
}

/// Both spanned subgraphs are forests under `signs`.
fn is_bi_forest(g: &LinkGraph, signs: &[Sign]) -> bool {
    let mut dsu = Dsu::new(2 * signs.len());
    g.corners.iter().all(|c| {
        let [p, q] = c.ends;
        class(signs, p) != class(signs, q) || dsu.union(node_slot(p), node_slot(q))
    })
}

fn structure(l: &Lot, g: &LinkGraph, signs: Vec<Sign>) -> BiForestStructure {
    let x = lot_complex(l);
    let mut lambda = [Vec::new(), Vec::new()];
    for n in &g.nodes {
        lambda[class(&signs, *n) as usize].push(x.node_name(*n));
    }
    let mut corners = [Vec::new(), Vec::new()];
    for c in &g.corners {
        let [p, q] = c.ends;
        if class(&signs, p) == class(&signs, q) {
            corners[class(&signs, p) as usize].push(c.at);
        }
    }
    let zero_one = zero_one_for(l, &signs);
    let [lambda1, lambda2] = lambda;
    let [lambda1_corners, lambda2_corners] = corners;
    BiForestStructure {
        signs,
        lambda1,
        lambda2,
        lambda1_corners,
        lambda2_corners,
        zero_one,
    }
}

fn zero_one_for(l: &Lot, signs: &[Sign]) -> ZeroOneAssignment {
    let x = lot_complex(l);
    ZeroOneAssignment::from_fn(&x, |at| {
        let [p, q] = x.corner_ends(at);
        class(signs, p) != class(signs, q)
    })
}

/// First sign vector, in lexicographic order over generators with `+`
/// before `-`, whose two classes both span forests.
pub fn bi_forest_orientation(
    l: &Lot,
    caps: &SearchCaps,
) -> Result<Option<BiForestStructure>, LotError> {
    let n = l.vertices().len();
    if n > caps.biforest_generators {
        return Err(LotError::SearchCapExceeded {
            what: "bi-forest search",
            size: n,
            cap: caps.biforest_generators,
        });
    }
    let x = lot_complex(l);
    let g = link_graph(&x, 0);
    // corners become decidable once their larger generator has a sign
    let mut ready: Vec<Vec<[LinkNode; 2]>> = vec![Vec::new(); n];
    for c in &g.corners {
        ready[c.ends[0].edge.max(c.ends[1].edge)].push(c.ends);
    }

    fn go(i: usize, signs: &mut Vec<Sign>, dsu: &Dsu, ready: &[Vec<[LinkNode; 2]>]) -> bool {
        if i == ready.len() {
            return true;
        }
        for s in [Sign::Plus, Sign::Minus] {
            signs.push(s);
            let mut next = dsu.clone();
            let ok = ready[i].iter().all(|[p, q]| {
                class(signs, *p) != class(signs, *q) || next.union(node_slot(*p), node_slot(*q))
            });
            if ok && go(i + 1, signs, &next, ready) {
                return true;
            }
            signs.pop();
        }
        false
    }

    let mut signs = Vec::with_capacity(n);
    if !go(0, &mut signs, &Dsu::new(2 * n), &ready) {
        return Ok(None);
    }
    debug_assert!(is_bi_forest(&g, &signs));
    Ok(Some(structure(l, &g, signs)))
}

/// Angle 0 on corners inside a class, 1 on corners between classes.
pub fn zero_one_from_biforest(l: &Lot, bf: &BiForestStructure) -> ZeroOneAssignment {
    zero_one_for(l, &bf.signs)
}

/// Recomputes the structure from its signs and compares.
pub(crate) fn check_biforest(l: &Lot, bf: &BiForestStructure) -> Result<(), String> {
    if bf.signs.len() != l.vertices().len() {
        return Err("sign vector has the wrong length".into());
    }
    let g = link_graph(&lot_complex(l), 0);
    if !is_bi_forest(&g, &bf.signs) {
        return Err("a class spans a cycle".into());
    }
    if structure(l, &g, bf.signs.clone()) != *bf {
        return Err("recorded classes or angles do not match the signs".into());
    }
    Ok(())
}
