//! The recursive local-indicability procedure and its certificate trees.
//!
//! Every node holds a reduced injective LOT. Leaves are a single vertex
//! (group Z) or a LOT without proper sub-LOTs carrying a bi-forest
//! structure. Inner nodes either split the LOT into two sub-LOTs meeting in
//! one vertex or collapse a maximal proper sub-LOT and carry a DR(2)
//! certificate for the quotient. Anything else is `UNKNOWN`, which never
//! means "not locally indicable".

use serde::{Deserialize, Serialize};

use super::biforest::{bi_forest_orientation, check_biforest, BiForestStructure};
use super::properties::{boundary_reducible_vertex, check_properties};
use super::reduce::{reduce_lot, replay, ReductionLog};
use super::sub::{
    boundary_reducible_sub_lot, enumerate_sub_lots, maximal_proper_sub_lot, quotient, Quotient,
};
use super::{lot_complex, Lot, LotError};
use crate::caps::SearchCaps;
use crate::dr::{check_dr2_c4t4, check_dr2_zero_one, verify_dr2, Dr2Certificate, Hypotheses};

/// Cited, not re-proved.
pub const AMALGAM_AXIOM: &str =
    "an amalgamated free product of locally indicable groups over an infinite cyclic subgroup is locally indicable";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LiEvidence {
    SingleVertex,
    HuckRoseBase {
        bi_forest: BiForestStructure,
        dr2: Dr2Certificate,
        /// Whether "no sub-LOT is boundary reducible" was also checked.
        boundary_reducible_sub_lots_excluded: bool,
    },
    /// The LOT is the union of the sub-LOTs on `sub_lot` and `complement`
    /// (vertex names), which share exactly `shared_vertex`.
    Amalgam {
        sub_lot: Vec<String>,
        complement: Vec<String>,
        shared_vertex: String,
        axiom: String,
    },
    QuotientStep {
        sub_lot: Vec<String>,
        quotient: Quotient,
        bi_forest: Option<BiForestStructure>,
        dr2: Dr2Certificate,
    },
    Unknown {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiNode {
    /// Reduced LOT this node is about.
    pub lot: Lot,
    /// Moves from the part handed to this node down to `lot`.
    pub reduction: ReductionLog,
    pub evidence: LiEvidence,
    pub children: Vec<LiNode>,
    pub locally_indicable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiCertificateTree {
    pub input: Lot,
    pub root: LiNode,
    pub locally_indicable: bool,
}

impl LiNode {
    pub fn kind(&self) -> &'static str {
        match self.evidence {
            LiEvidence::SingleVertex => "SINGLE_VERTEX",
            LiEvidence::HuckRoseBase { .. } => "HUCK_ROSE_BASE",
            LiEvidence::Amalgam { .. } => "AMALGAM",
            LiEvidence::QuotientStep { .. } => "QUOTIENT_STEP",
            LiEvidence::Unknown { .. } => "UNKNOWN",
        }
    }

    /// Number of nodes of each kind, in a fixed order.
    pub fn kind_counts(&self) -> std::collections::BTreeMap<&'static str, usize> {
        let mut out = std::collections::BTreeMap::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            *out.entry(n.kind()).or_insert(0) += 1;
            stack.extend(&n.children);
        }
        out
    }
}

fn names(l: &Lot, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|v| l.vertices()[*v].clone()).collect()
}

fn ids(l: &Lot, ns: &[String]) -> Option<Vec<usize>> {
    let mut v: Vec<usize> = ns.iter().map(|n| l.vertex_id(n)).collect::<Option<_>>()?;
    v.sort_unstable();
    Some(v)
}

fn unknown(lot: Lot, reduction: ReductionLog, reason: impl Into<String>) -> LiNode {
    LiNode {
        lot,
        reduction,
        evidence: LiEvidence::Unknown {
            reason: reason.into(),
        },
        children: Vec::new(),
        locally_indicable: false,
    }
}

fn with_children(
    lot: Lot,
    reduction: ReductionLog,
    evidence: LiEvidence,
    children: Vec<LiNode>,
) -> LiNode {
    let locally_indicable = children.iter().all(|c| c.locally_indicable);
    LiNode {
        lot,
        reduction,
        evidence,
        children,
        locally_indicable,
    }
}

/// The vertex where the edges outside `inner` attach to it, if there is
/// exactly one such edge.
fn attachment(l: &Lot, inner: &[usize], inner_edges: &[usize]) -> Option<usize> {
    let mut touching = (0..l.edges().len())
        .filter(|e| !inner_edges.contains(e))
        .filter(|e| {
            let e = &l.edges()[*e];
            inner.contains(&e.source) || inner.contains(&e.target)
        });
    let e = touching.next()?;
    if touching.next().is_some() {
        return None;
    }
    let e = &l.edges()[e];
    Some(if inner.contains(&e.source) {
        e.source
    } else {
        e.target
    })
}

/// Complement part of an amalgam split: the edges outside `inner` on the
/// vertices outside `inner` plus the attaching vertex.
fn complement(l: &Lot, inner: &[usize], x: usize) -> (Vec<usize>, Vec<usize>) {
    let vs: Vec<usize> = (0..l.vertices().len())
        .filter(|v| *v == x || !inner.contains(v))
        .collect();
    let es: Vec<usize> = (0..l.edges().len())
        .filter(|e| {
            let e = &l.edges()[*e];
            !(inner.contains(&e.source) && inner.contains(&e.target))
        })
        .collect();
    (vs, es)
}

fn is_sub_lot_part(l: &Lot, vs: &[usize], es: &[usize]) -> bool {
    let part = l.restrict(vs, es);
    vs.len() >= 2 && part.is_tree() && es.iter().all(|e| vs.contains(&l.edges()[*e].label))
}

fn dr2_for_quotient(
    q: &Lot,
    caps: &SearchCaps,
) -> Result<(Option<BiForestStructure>, Dr2Certificate), String> {
    let x = lot_complex(q);
    let mut notes = Vec::new();
    match bi_forest_orientation(q, caps) {
        Ok(Some(bf)) => match check_dr2_zero_one(&x, &bf.zero_one) {
            Ok(Ok(cert)) => return Ok((Some(bf), cert)),
            Ok(Err(f)) => notes.push(format!(
                "bi-forest structure failed the component check: {:?}",
                f.witness
            )),
            Err(e) => notes.push(e.to_string()),
        },
        Ok(None) => notes.push("no bi-forest structure".to_string()),
        Err(e) => notes.push(e.to_string()),
    }
    match check_dr2_c4t4(&x) {
        Ok(Ok(cert)) => Ok((None, cert)),
        Ok(Err(f)) => {
            notes.push(format!("C(4)-T(4) fails: {:?}", f.witness));
            Err(notes.join("; "))
        }
        Err(e) => {
            notes.push(e.to_string());
            Err(notes.join("; "))
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DecideOptions {
    pub caps: SearchCaps,
    /// Require that no sub-LOT is boundary reducible at base-case nodes.
    pub huck_rose_hypothesis: bool,
}

fn decide_node(given: &Lot, opts: &DecideOptions) -> LiNode {
    let (l, log) = reduce_lot(given);
    if !l.is_injective() {
        return unknown(l, log, "labels are not injective after reduction");
    }
    if l.vertices().len() == 1 {
        return with_children(l, log, LiEvidence::SingleVertex, Vec::new());
    }
    let caps = &opts.caps;
    let sub = match maximal_proper_sub_lot(&l, caps) {
        Ok(s) => s,
        Err(e) => return unknown(l, log, e.to_string()),
    };
    let Some(sub) = sub else {
        let bf = match bi_forest_orientation(&l, caps) {
            Ok(Some(bf)) => bf,
            Ok(None) => return unknown(l, log, "no proper sub-LOT and no bi-forest structure"),
            Err(e) => return unknown(l, log, e.to_string()),
        };
        if opts.huck_rose_hypothesis {
            match boundary_reducible_sub_lot(&l, caps) {
                Ok(None) => {}
                Ok(Some(s)) => {
                    let reason = format!(
                        "sub-LOT on {:?} is boundary reducible",
                        names(&l, &s.vertices)
                    );
                    return unknown(l, log, reason);
                }
                Err(e) => return unknown(l, log, e.to_string()),
            }
        }
        let dr2 = match check_dr2_zero_one(&lot_complex(&l), &bf.zero_one) {
            Ok(Ok(c)) => c,
            Ok(Err(f)) => {
                return unknown(
                    l,
                    log,
                    format!(
                        "bi-forest structure failed the component check: {:?}",
                        f.witness
                    ),
                )
            }
            Err(e) => return unknown(l, log, e.to_string()),
        };
        let evidence = LiEvidence::HuckRoseBase {
            bi_forest: bf,
            dr2,
            boundary_reducible_sub_lots_excluded: opts.huck_rose_hypothesis,
        };
        return with_children(l, log, evidence, Vec::new());
    };

    let q = match quotient(&l, &sub.vertices) {
        Ok(q) => q,
        Err(e) => return unknown(l, log, e.to_string()),
    };
    if boundary_reducible_vertex(&q.lot).is_some() {
        let Some(x) = attachment(&l, &sub.vertices, &sub.edges) else {
            return unknown(
                l,
                log,
                "quotient is not boundary reduced but the sub-LOT is attached along several edges",
            );
        };
        let (vs, es) = complement(&l, &sub.vertices, x);
        if !is_sub_lot_part(&l, &vs, &es) {
            return unknown(l, log, "complement of the sub-LOT is not a sub-LOT");
        }
        let part = l.restrict(&vs, &es);
        let children = vec![decide_node(&sub.lot, opts), decide_node(&part, opts)];
        let evidence = LiEvidence::Amalgam {
            sub_lot: names(&l, &sub.vertices),
            complement: names(&l, &vs),
            shared_vertex: l.vertices()[x].clone(),
            axiom: AMALGAM_AXIOM.to_string(),
        };
        return with_children(l, log, evidence, children);
    }
    let p = check_properties(&q.lot);
    if !(p.injective && p.compressed && p.interior_reduced) {
        return unknown(
            l,
            log,
            format!("quotient properties fail: {:?}", p.witnesses),
        );
    }
    let (bi_forest, dr2) = match dr2_for_quotient(&q.lot, caps) {
        Ok(v) => v,
        Err(reason) => {
            return unknown(
                l,
                log,
                format!("no DR(2) certificate for the quotient: {reason}"),
            )
        }
    };
    let child = decide_node(&sub.lot, opts);
    let evidence = LiEvidence::QuotientStep {
        sub_lot: names(&l, &sub.vertices),
        quotient: q,
        bi_forest,
        dr2,
    };
    with_children(l, log, evidence, vec![child])
}

/// Reduces the LOT and runs the recursive procedure.
pub fn decide_locally_indicable(
    l: &Lot,
    opts: &DecideOptions,
) -> Result<LiCertificateTree, LotError> {
    l.require_tree()?;
    let (reduced, _) = reduce_lot(l);
    reduced.require_injective()?;
    let root = decide_node(l, opts);
    Ok(LiCertificateTree {
        input: l.clone(),
        locally_indicable: root.locally_indicable,
        root,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("certificate tree rejected at {path}: {reason}")]
pub struct LiVerifyError {
    pub path: String,
    pub reason: String,
}

fn check_child(part: &Lot, child: &LiNode) -> Result<(), String> {
    let replayed = replay(part, &child.reduction).map_err(|e| e.to_string())?;
    if replayed != child.lot {
        return Err("reduction log does not replay to the node's LOT".into());
    }
    if reduce_lot(part).0 != child.lot {
        return Err("node's LOT is not the reduction of its part".into());
    }
    Ok(())
}

fn check_zero_one_cert(
    l: &Lot,
    bf: &BiForestStructure,
    cert: &Dr2Certificate,
) -> Result<(), String> {
    check_biforest(l, bf)?;
    match &cert.hypotheses {
        Hypotheses::ZeroOne(h) if h.zero_one == bf.zero_one => Ok(()),
        _ => Err("DR(2) certificate does not use the bi-forest angles".into()),
    }
}

fn verify_node(n: &LiNode, path: &str, caps: &SearchCaps) -> Result<(), LiVerifyError> {
    let fail = |reason: String| LiVerifyError {
        path: path.to_string(),
        reason,
    };
    let l = &n.lot;
    let expected_li = !matches!(n.evidence, LiEvidence::Unknown { .. })
        && n.children.iter().all(|c| c.locally_indicable);
    if n.locally_indicable != expected_li {
        return Err(fail(
            "conclusion flag does not follow from the evidence".into(),
        ));
    }
    let leaf = |n: &LiNode| {
        if n.children.is_empty() {
            Ok(())
        } else {
            Err(fail("leaf evidence with children".into()))
        }
    };
    let reduced_injective = |l: &Lot| {
        let p = check_properties(l);
        if p.tree && p.reduced && p.injective {
            Ok(())
        } else {
            Err(fail("node LOT is not a reduced injective tree".into()))
        }
    };
    match &n.evidence {
        LiEvidence::Unknown { .. } => leaf(n),
        LiEvidence::SingleVertex => {
            leaf(n)?;
            if l.vertices().len() == 1 && l.edges().is_empty() {
                Ok(())
            } else {
                Err(fail("not a single vertex".into()))
            }
        }
        LiEvidence::HuckRoseBase {
            bi_forest,
            dr2,
            boundary_reducible_sub_lots_excluded,
        } => {
            leaf(n)?;
            reduced_injective(l)?;
            let subs = enumerate_sub_lots(l, caps).map_err(|e| fail(e.to_string()))?;
            if subs.iter().any(|s| s.proper) {
                return Err(fail("the LOT has a proper sub-LOT".into()));
            }
            if *boundary_reducible_sub_lots_excluded
                && subs
                    .iter()
                    .any(|s| boundary_reducible_vertex(&s.lot).is_some())
            {
                return Err(fail("a sub-LOT is boundary reducible".into()));
            }
            check_zero_one_cert(l, bi_forest, dr2).map_err(fail)?;
            verify_dr2(&lot_complex(l), dr2).map_err(|e| fail(e.to_string()))?;
            if !dr2.conclusion.locally_indicable {
                return Err(fail(
                    "certificate does not conclude local indicability".into(),
                ));
            }
            Ok(())
        }
        LiEvidence::Amalgam {
            sub_lot,
            complement: comp,
            shared_vertex,
            ..
        } => {
            reduced_injective(l)?;
            let (Some(a), Some(b), Some(x)) =
                (ids(l, sub_lot), ids(l, comp), l.vertex_id(shared_vertex))
            else {
                return Err(fail("unknown vertex in the split".into()));
            };
            let shared: Vec<usize> = a.iter().copied().filter(|v| b.contains(v)).collect();
            if shared != vec![x] || a.len() + b.len() != l.vertices().len() + 1 {
                return Err(fail(
                    "parts do not meet in exactly the shared vertex".into(),
                ));
            }
            let inside = |vs: &[usize]| -> Vec<usize> {
                (0..l.edges().len())
                    .filter(|e| {
                        vs.contains(&l.edges()[*e].source) && vs.contains(&l.edges()[*e].target)
                    })
                    .collect()
            };
            let (ea, eb) = (inside(&a), inside(&b));
            if ea.len() + eb.len() != l.edges().len() {
                return Err(fail("parts do not cover every edge".into()));
            }
            if !is_sub_lot_part(l, &a, &ea) || !is_sub_lot_part(l, &b, &eb) {
                return Err(fail("a part is not a sub-LOT".into()));
            }
            if a.len() == l.vertices().len() || b.len() == l.vertices().len() {
                return Err(fail("a part is not proper".into()));
            }
            if n.children.len() != 2 {
                return Err(fail("an amalgam needs two children".into()));
            }
            check_child(&l.restrict(&a, &ea), &n.children[0]).map_err(fail)?;
            check_child(&l.restrict(&b, &eb), &n.children[1]).map_err(fail)?;
            verify_node(&n.children[0], &format!("{path}/0"), caps)?;
            verify_node(&n.children[1], &format!("{path}/1"), caps)
        }
        LiEvidence::QuotientStep {
            sub_lot,
            quotient: q,
            bi_forest,
            dr2,
        } => {
            reduced_injective(l)?;
            let Some(a) = ids(l, sub_lot) else {
                return Err(fail("unknown vertex in the sub-LOT".into()));
            };
            let subs = enumerate_sub_lots(l, caps).map_err(|e| fail(e.to_string()))?;
            let Some(s) = subs.iter().find(|s| s.vertices == a && s.proper) else {
                return Err(fail("recorded vertex set is not a proper sub-LOT".into()));
            };
            if subs.iter().any(|o| {
                o.proper && o.vertices.len() > a.len() && a.iter().all(|v| o.vertices.contains(v))
            }) {
                return Err(fail("the sub-LOT is not maximal".into()));
            }
            let recomputed = quotient(l, &a).map_err(|e| fail(e.to_string()))?;
            if &recomputed != q {
                return Err(fail("recorded quotient does not match".into()));
            }
            let p = check_properties(&q.lot);
            if !(p.boundary_reduced && p.injective && p.compressed && p.interior_reduced) {
                return Err(fail("quotient is not reduced and injective".into()));
            }
            if let Some(bf) = bi_forest {
                check_zero_one_cert(&q.lot, bf, dr2).map_err(fail)?;
            }
            verify_dr2(&lot_complex(&q.lot), dr2).map_err(|e| fail(e.to_string()))?;
            if n.children.len() != 1 {
                return Err(fail("a quotient step needs one child".into()));
            }
            check_child(&s.lot, &n.children[0]).map_err(fail)?;
            verify_node(&n.children[0], &format!("{path}/0"), caps)
        }
    }
}

/// Re-checks every node of a certificate tree from its recorded evidence.
pub fn verify_li_tree(t: &LiCertificateTree, caps: &SearchCaps) -> Result<(), LiVerifyError> {
    check_child(&t.input, &t.root).map_err(|reason| LiVerifyError {
        path: "root".into(),
        reason,
    })?;
    if t.locally_indicable != t.root.locally_indicable {
        return Err(LiVerifyError {
            path: "root".into(),
            reason: "tree conclusion differs from the root".into(),
        });
    }
    verify_node(&t.root, "root", caps)
}
