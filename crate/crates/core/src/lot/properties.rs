use serde::{Deserialize, Serialize};

use super::Lot;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PropertyWitness {
    /// A valency-1 vertex that labels no edge.
    BoundaryReducible {
        vertex: String,
    },
    /// Two edges both leaving (or both entering) `vertex` with one label.
    InteriorReducible {
        vertex: String,
        edges: [String; 2],
        label: String,
    },
    /// An edge whose label is its own source or target.
    NotCompressed {
        edge: String,
        vertex: String,
    },
    RepeatedLabel {
        label: String,
        edges: [String; 2],
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LotProperties {
    pub tree: bool,
    pub boundary_reduced: bool,
    pub interior_reduced: bool,
    pub compressed: bool,
    pub injective: bool,
    /// Boundary reduced, interior reduced and compressed.
    pub reduced: bool,
    pub witnesses: Vec<PropertyWitness>,
}

pub(crate) fn boundary_reducible_vertex(l: &Lot) -> Option<usize> {
    (0..l.vertices().len()).find(|v| l.valency(*v) == 1 && !l.is_label(*v))
}

/// Edges `(i, j)` with `i < j`, the shared vertex, and the far endpoints.
pub(crate) fn interior_reducible_pair(l: &Lot) -> Option<(usize, usize, usize)> {
    let es = l.edges();
    for j in 0..es.len() {
        for i in 0..j {
            let (a, b) = (&es[i], &es[j]);
            if a.label != b.label {
                continue;
            }
            if a.source == b.source {
                return Some((i, j, a.source));
            }
            if a.target == b.target {
                return Some((i, j, a.target));
            }
        }
    }
    None
}

pub(crate) fn uncompressed_edge(l: &Lot) -> Option<usize> {
    l.edges()
        .iter()
        .position(|e| e.label == e.source || e.label == e.target)
}

pub fn check_properties(l: &Lot) -> LotProperties {
    let name = |v: usize| l.vertices()[v].clone();
    let mut witnesses = Vec::new();

    let leaves: Vec<usize> = (0..l.vertices().len())
        .filter(|v| l.valency(*v) == 1 && !l.is_label(*v))
        .collect();
    for v in &leaves {
        witnesses.push(PropertyWitness::BoundaryReducible { vertex: name(*v) });
    }

    let interior = interior_reducible_pair(l);
    if let Some((i, j, v)) = interior {
        witnesses.push(PropertyWitness::InteriorReducible {
            vertex: name(v),
            edges: [l.edges()[i].name.clone(), l.edges()[j].name.clone()],
            label: name(l.edges()[i].label),
        });
    }

    let uncompressed: Vec<usize> = (0..l.edges().len())
        .filter(|e| {
            let e = &l.edges()[*e];
            e.label == e.source || e.label == e.target
        })
        .collect();
    for e in &uncompressed {
        witnesses.push(PropertyWitness::NotCompressed {
            edge: l.edges()[*e].name.clone(),
            vertex: name(l.edges()[*e].label),
        });
    }

    let repeated = l.repeated_label();
    if let Some((i, j)) = repeated {
        witnesses.push(PropertyWitness::RepeatedLabel {
            label: name(l.edges()[i].label),
            edges: [l.edges()[i].name.clone(), l.edges()[j].name.clone()],
        });
    }

    let boundary_reduced = leaves.is_empty();
    let interior_reduced = interior.is_none();
    let compressed = uncompressed.is_empty();
    LotProperties {
        tree: l.is_tree(),
        boundary_reduced,
        interior_reduced,
        compressed,
        injective: repeated.is_none(),
        reduced: boundary_reduced && interior_reduced && compressed,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn trefoil_is_reduced_and_injective() {
        let p = check_properties(&trefoil());
        assert!(p.reduced && p.injective && p.tree);
        assert!(p.witnesses.is_empty());
        assert!(check_properties(&w5()).reduced);
    }

    #[test]
    fn single_edge_with_source_label() {
        let l = Lot::from_names(&["a", "b"], &[("e", "a", "b", "a")]).unwrap();
        let p = check_properties(&l);
        assert!(!p.compressed);
        assert!(!p.boundary_reduced);
        assert!(p.injective);
        assert!(p
            .witnesses
            .contains(&PropertyWitness::BoundaryReducible { vertex: "b".into() }));
        assert!(!p
            .witnesses
            .contains(&PropertyWitness::BoundaryReducible { vertex: "a".into() }));
    }

    #[test]
    fn shared_label_at_a_vertex() {
        let l = Lot::from_names(
            &["a", "b", "c", "d"],
            &[
                ("e1", "a", "b", "c"),
                ("e2", "a", "d", "c"),
                ("e3", "c", "a", "b"),
            ],
        )
        .unwrap();
        let p = check_properties(&l);
        assert!(!p.interior_reduced);
        assert!(!p.injective);
        assert!(p.witnesses.contains(&PropertyWitness::InteriorReducible {
            vertex: "a".into(),
            edges: ["e1".into(), "e2".into()],
            label: "c".into()
        }));
    }

    #[test]
    fn opposite_directions_are_not_interior_reducible() {
        // same label, but one edge enters b and the other leaves it
        let l = Lot::from_names(
            &["a", "b", "c"],
            &[("e1", "a", "b", "c"), ("e2", "b", "c", "c")],
        )
        .unwrap();
        assert!(check_properties(&l).interior_reduced);
    }
}
