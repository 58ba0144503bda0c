//! Pass/fail verdicts with re-checkable witnesses.

use serde::{Deserialize, Serialize};

use crate::complex::{CornerRef, Dart};
use crate::rational::{self, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestVerdict {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    /// Conventions the verdict depends on.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl TestVerdict {
    pub fn pass() -> Self {
        TestVerdict {
            pass: true,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn fail(witness: Witness) -> Self {
        TestVerdict {
            pass: false,
            witness: Some(witness),
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.notes.push(note.to_string());
        self
    }
}

/// A path or cycle in a link graph, kept both as darts and as node names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkWalk {
    pub vertex: String,
    pub darts: Vec<Dart>,
    pub corners: Vec<CornerRef>,
    pub nodes: Vec<String>,
    #[serde(with = "rational::as_string")]
    pub weight: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Condition `kappa(d) <= 0` fails.
    PositiveCellCurvature {
        cell: String,
        #[serde(with = "rational::as_string")]
        curvature: Q,
    },
    /// A reduced link cycle of weight below 2.
    LightCycle(LinkWalk),
    /// A cycle made of angle-0 corners.
    Lk0Cycle {
        vertex: String,
        corners: Vec<CornerRef>,
    },
    /// An angle-1 corner whose ends share an lk0 component.
    OneCornerInComponent {
        vertex: String,
        corner: CornerRef,
        nodes: [String; 2],
    },
    /// `e+` and `e-` share an lk0 component.
    EdgeEndsJoined {
        edge: String,
    },
    /// A reduced path from `e+` to `e-` of weight below 2.
    LightEdgePath {
        edge: String,
        path: LinkWalk,
    },
    /// A relator decomposes into fewer than 4 pieces.
    FewPieces {
        cell: String,
        count: usize,
        decomposition: Vec<String>,
    },
    /// A reduced link cycle of length below 4.
    ShortLinkCycle {
        length: usize,
        walk: LinkWalk,
    },
    /// A boundary word contains `e e` or `e- e-` (0-based positions).
    RepeatedLetter {
        cell: String,
        positions: (usize, usize),
    },
    NotCyclicallyReduced {
        cell: String,
    },
    /// Sphere edge does not occur exactly once with each sign.
    EdgePairing {
        edge: String,
        plus: usize,
        minus: usize,
    },
    Disconnected {
        components: usize,
    },
    EulerCharacteristic {
        chi: i64,
    },
    /// A diagram with at least `k` labels but fewer distinct folding labels.
    FewFoldingLabels {
        k: usize,
        labels: Vec<String>,
        folding_labels: Vec<String>,
    },
}
