//! Whole-input analysis reports and corpus runs.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::{
    parse_lot_file, parse_presentation, serialize_lot, serialize_presentation, ParseError,
    WeightSpec,
};
use crate::caps::SearchCaps;
use crate::complex::TwoComplex;
use crate::curvature::{
    check_gauss_bonnet, coloring_test, find_coloring_structure, weight_test, ZeroOneAssignment,
};
use crate::diagram::search_reduced_diagram;
use crate::dr::{check_c4t4, check_dr2_c4t4, check_dr2_weighted, check_dr2_zero_one};
use crate::lot::{
    bi_forest_orientation, check_properties, decide_locally_indicable, lot_complex, DecideOptions,
};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnalyzeOptions {
    pub caps: SearchCaps,
    pub weights: Option<WeightSpec>,
    /// Run the reduced diagram search up to this many faces.
    pub max_faces: Option<usize>,
    pub huck_rose_hypothesis: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputKind {
    Lot,
    Presentation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputIdentity {
    pub kind: InputKind,
    /// Hex SHA-256 of the canonical text.
    pub sha256: String,
    pub canonical: String,
}

/// Everything learned about one input. Maps are ordered so the JSON form is
/// byte-stable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool: String,
    pub version: String,
    pub input: InputIdentity,
    pub properties: BTreeMap<String, Value>,
    pub certificates: BTreeMap<String, Value>,
    pub diagnostics: Vec<String>,
}

struct Builder {
    properties: BTreeMap<String, Value>,
    certificates: BTreeMap<String, Value>,
    diagnostics: Vec<String>,
}

impl Builder {
    fn prop(&mut self, key: &str, v: impl Serialize) {
        self.properties
            .insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }

    fn cert(&mut self, key: &str, v: impl Serialize) {
        self.certificates
            .insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }

    fn diag(&mut self, what: &str, e: impl std::fmt::Display) {
        self.diagnostics.push(format!("{what}: {e}"));
    }

    /// Weight test, Gauss-Bonnet, DR(2) certificate attempts and the optional
    /// diagram search.
    fn complex_checks(
        &mut self,
        x: &TwoComplex,
        zero_one: Option<&ZeroOneAssignment>,
        opts: &AnalyzeOptions,
    ) {
        let weights = match opts.weights.as_ref().map(|w| w.resolve(x)) {
            Some(Ok(w)) => Some(w),
            Some(Err(e)) => {
                self.diag("weights", e);
                None
            }
            None => None,
        };
        if let Some(w) = &weights {
            match weight_test(x, w) {
                Ok(v) => self.prop("weight_test", v),
                Err(e) => self.diag("weight test", e),
            }
            match check_gauss_bonnet(x, w) {
                Ok(r) => self.prop("gauss_bonnet", r),
                Err(e) => self.diag("gauss-bonnet", e),
            }
        }
        if let Some(z) = zero_one {
            match coloring_test(x, z) {
                Ok(v) => self.prop("coloring_test", v),
                Err(e) => self.diag("coloring test", e),
            }
        }
        if x.is_single_vertex() {
            match check_c4t4(x) {
                Ok(v) => self.prop("c4t4", v),
                Err(e) => self.diag("c4t4", e),
            }
            let mut outcomes = Vec::new();
            if let Some(z) = zero_one {
                outcomes.push(check_dr2_zero_one(x, z));
            }
            outcomes.push(check_dr2_c4t4(x));
            if let Some(w) = &weights {
                outcomes.push(check_dr2_weighted(x, w));
            }
            let mut failures = Vec::new();
            let mut any = false;
            for outcome in outcomes {
                match outcome {
                    Ok(Ok(c)) => {
                        any = true;
                        self.cert(&format!("dr2_{}", c.method.as_str()), c);
                    }
                    Ok(Err(f)) => failures.push(f),
                    Err(e) => self.diag("dr2", e),
                }
            }
            self.prop("dr2", any);
            self.prop("dr2_failures", failures);
        } else {
            self.diagnostics
                .push("dr2: certificates need a single-vertex complex".into());
        }
        if let Some(n) = opts.max_faces {
            match search_reduced_diagram(x, n, &opts.caps) {
                Ok(d) => {
                    self.prop("diagram_search_faces", n);
                    self.prop("reduced_diagram", d.map(|d| d.to_raw(x)));
                }
                Err(e) => self.diag("diagram search", e),
            }
        }
    }
}

fn header(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
}

/// Analyzes LOT or presentation text, chosen by its header. Module errors
/// become diagnostics; only unparseable input is an error.
pub fn analyze_text(text: &str, opts: &AnalyzeOptions) -> Result<AnalysisReport, ParseError> {
    let mut b = Builder {
        properties: BTreeMap::new(),
        certificates: BTreeMap::new(),
        diagnostics: Vec::new(),
    };
    let (kind, canonical) = match header(text) {
        Some("lot" | "log") => {
            let file = parse_lot_file(text)?;
            let l = &file.lot;
            b.prop("lot", check_properties(l));
            let x = lot_complex(l);
            b.prop("complex_flags", x.flags());
            let zero_one = match bi_forest_orientation(l, &opts.caps) {
                Ok(Some(bf)) => {
                    let z = bf.zero_one.clone();
                    b.cert("bi_forest", bf);
                    Some(z)
                }
                Ok(None) => {
                    b.diagnostics.push("bi-forest: no orientation found".into());
                    None
                }
                Err(e) => {
                    b.diag("bi-forest", e);
                    None
                }
            };
            b.complex_checks(&x, zero_one.as_ref(), opts);
            let decide = DecideOptions {
                caps: opts.caps,
                huck_rose_hypothesis: opts.huck_rose_hypothesis,
            };
            match decide_locally_indicable(l, &decide) {
                Ok(tree) => {
                    b.prop(
                        "locally_indicable",
                        if tree.locally_indicable {
                            "certified"
                        } else {
                            "unknown"
                        },
                    );
                    b.prop("li_node_kinds", tree.root.kind_counts());
                    b.cert("local_indicability", tree);
                }
                Err(e) => {
                    b.prop("locally_indicable", "unknown");
                    b.diag("local indicability", e);
                }
            }
            (InputKind::Lot, serialize_lot(l, file.header))
        }
        Some("presentation") => {
            let x = parse_presentation(text)?;
            b.prop("edges", x.edges().len());
            b.prop("cells", x.cells().len());
            b.prop(
                "euler_characteristic",
                crate::complex::euler_characteristic(&x),
            );
            b.prop("flags", x.flags());
            let zero_one = match find_coloring_structure(&x, true, &opts.caps) {
                Ok(z) => {
                    if z.is_none() {
                        b.diagnostics.push("zero/one: no structure found".into());
                    }
                    z
                }
                Err(e) => {
                    b.diag("zero/one", e);
                    None
                }
            };
            if let Some(z) = &zero_one {
                b.prop("zero_one", z);
            }
            b.complex_checks(&x, zero_one.as_ref(), opts);
            (
                InputKind::Presentation,
                serialize_presentation(&x).expect("presentations have one vertex"),
            )
        }
        _ => return Err(ParseError::MissingHeader("lot` or `presentation")),
    };
    Ok(AnalysisReport {
        tool: "drtool".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        input: InputIdentity {
            kind,
            sha256: hex::encode(Sha256::digest(canonical.as_bytes())),
            canonical,
        },
        properties: b.properties,
        certificates: b.certificates,
        diagnostics: b.diagnostics,
    })
}

#[derive(Debug, thiserror::Error)]
pub enum AnalyzeError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

pub fn analyze(path: &Path, opts: &AnalyzeOptions) -> Result<AnalysisReport, AnalyzeError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| AnalyzeError::Io {
        path: shown.clone(),
        source,
    })?;
    analyze_text(&text, opts).map_err(|source| AnalyzeError::Parse {
        path: shown,
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<AnalysisReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub files: Vec<CorpusEntry>,
    /// Counts of certificate kinds and outcomes.
    pub summary: BTreeMap<String, usize>,
}

const CORPUS_EXTENSIONS: [&str; 2] = ["lot", "pres"];

/// Analyzes every `.lot` and `.pres` file directly inside `dir`, in file
/// name order.
pub fn corpus(dir: &Path, opts: &AnalyzeOptions) -> std::io::Result<CorpusReport> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && p.extension()
                    .and_then(|e| e.to_str())
                    .is_some_and(|e| CORPUS_EXTENSIONS.contains(&e))
        })
        .collect();
    paths.sort();
    let files: Vec<CorpusEntry> = paths
        .par_iter()
        .map(|p| {
            let file = p
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            match analyze(p, opts) {
                Ok(r) => CorpusEntry {
                    file,
                    report: Some(r),
                    error: None,
                },
                Err(e) => CorpusEntry {
                    file,
                    report: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let mut summary = BTreeMap::new();
    let mut bump = |k: String| *summary.entry(k).or_insert(0) += 1;
    for f in &files {
        bump("files".into());
        let Some(r) = &f.report else {
            bump("errors".into());
            continue;
        };
        for key in r.certificates.keys().filter(|k| k.starts_with("dr2_")) {
            bump(format!("dr2:{}", &key[4..]));
        }
        if let Some(kind) = r
            .certificates
            .get("local_indicability")
            .and_then(|t| t.pointer("/root/evidence/kind"))
            .and_then(Value::as_str)
        {
            bump(format!("li:{kind}"));
        }
        if r.properties
            .get("locally_indicable")
            .and_then(Value::as_str)
            == Some("certified")
        {
            bump("li:certified".into());
        }
        if r.properties
            .get("reduced_diagram")
            .is_some_and(|d| !d.is_null())
        {
            bump("reduced_diagram_found".into());
        }
    }
    Ok(CorpusReport { files, summary })
}
