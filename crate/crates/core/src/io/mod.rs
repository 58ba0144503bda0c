//! Text grammars, JSON formats and certificate files.
//!
//! LOT files start with a `lot` header (the edges must form a tree) or a
//! `log` header (any labeled oriented graph), followed by `vertex` and
//! `edge <name> <source> <target> <label>` lines. Presentation files start
//! with `presentation`, then `gens` and `rel` lines. `#` starts a comment.

mod dot;
mod report;

pub use dot::{export_link_dot, export_lot_dot};
pub use report::{
    analyze, analyze_text, corpus, AnalysisReport, AnalyzeError, AnalyzeOptions, CorpusEntry,
    CorpusReport, InputIdentity, InputKind,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::caps::SearchCaps;
use crate::complex::{build_complex, ComplexError, RawCell, RawComplex, RawEdge, TwoComplex};
use crate::curvature::{AngleAssignment, AngleEntry, CurvatureError};
use crate::diagram::{Diagram, DiagramError, RawDiagram};
use crate::dr::{verify_dr2, Dr2Certificate};
use crate::lot::{verify_li_tree, LiCertificateTree, Lot, LotEdge, LotError};
use crate::rational::{parse_q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{message} (line {line}, column {column})")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error("unknown {role} vertex {vertex} (line {line})")]
    UnknownVertex {
        role: &'static str,
        vertex: String,
        line: usize,
    },
    #[error("duplicate {what} {name} (line {line})")]
    Duplicate {
        what: &'static str,
        name: String,
        line: usize,
    },
    #[error("unknown generator {name} (line {line}, column {column})")]
    UnknownGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("empty relator (line {0})")]
    EmptyRelator(usize),
    #[error("not a tree")]
    NotATree,
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Lot(#[from] LotError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Json(e.to_string())
    }
}

/// A non-blank line with its tokens and their 1-based columns.
struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let code = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (j, ch) in code.char_indices() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(j),
                (true, Some(s)) => {
                    tokens.push((code[..s].chars().count() + 1, &code[s..j]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            tokens.push((code[..s].chars().count() + 1, &code[s..]));
        }
        (!tokens.is_empty()).then_some(Line {
            number: i + 1,
            tokens,
        })
    })
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '.' || c == '\'')
}

fn syntax(line: &Line, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line: line.number,
        column,
        message: message.into(),
    }
}

fn identifier<'a>(line: &Line, token: (usize, &'a str)) -> Result<&'a str, ParseError> {
    if is_identifier(token.1) {
        Ok(token.1)
    } else {
        Err(syntax(
            line,
            token.0,
            format!("invalid identifier `{}`", token.1),
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LotHeader {
    /// Edges must form a tree.
    Lot,
    /// Any labeled oriented graph.
    Log,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LotFile {
    pub header: LotHeader,
    pub lot: Lot,
}

pub fn parse_lot_file(text: &str) -> Result<LotFile, ParseError> {
    let mut it = lines(text);
    let first = it.next().ok_or(ParseError::MissingHeader("lot"))?;
    let header = match first.tokens[..] {
        [(_, "lot")] => LotHeader::Lot,
        [(_, "log")] => LotHeader::Log,
        [(c, t), ..] if t == "lot" || t == "log" => {
            return Err(syntax(
                &first,
                c + t.len() + 1,
                "unexpected text after header",
            ))
        }
        [(c, _), ..] => return Err(syntax(&first, c, "expected `lot` or `log` header")),
        [] => unreachable!("blank lines are skipped"),
    };
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<LotEdge> = Vec::new();
    for line in it {
        let (col, keyword) = line.tokens[0];
        match keyword {
            "vertex" => {
                if line.tokens.len() == 1 {
                    return Err(syntax(&line, col, "`vertex` needs at least one name"));
                }
                for t in &line.tokens[1..] {
                    let name = identifier(&line, *t)?;
                    if vertices.iter().any(|v| v == name) {
                        return Err(ParseError::Duplicate {
                            what: "vertex",
                            name: name.into(),
                            line: line.number,
                        });
                    }
                    vertices.push(name.into());
                }
            }
            "edge" => {
                let [_, name, source, target, label] = line.tokens[..] else {
                    let c = line.tokens.get(5).map_or(col, |t| t.0);
                    return Err(syntax(
                        &line,
                        c,
                        "expected `edge <name> <source> <target> <label>`",
                    ));
                };
                let name = identifier(&line, name)?;
                if edges.iter().any(|e| e.name == name) {
                    return Err(ParseError::Duplicate {
                        what: "edge",
                        name: name.into(),
                        line: line.number,
                    });
                }
                let mut ends = [0; 3];
                for (slot, (role, tok)) in
                    ends.iter_mut()
                        .zip([("source", source), ("target", target), ("label", label)])
                {
                    let v = identifier(&line, tok)?;
                    *slot = vertices.iter().position(|w| w == v).ok_or_else(|| {
                        ParseError::UnknownVertex {
                            role,
                            vertex: v.into(),
                            line: line.number,
                        }
                    })?;
                }
                edges.push(LotEdge {
                    name: name.into(),
                    source: ends[0],
                    target: ends[1],
                    label: ends[2],
                });
            }
            other => return Err(syntax(&line, col, format!("unknown keyword `{other}`"))),
        }
    }
    let lot = Lot::new(vertices, edges)?;
    if header == LotHeader::Lot && !lot.is_tree() {
        return Err(ParseError::NotATree);
    }
    Ok(LotFile { header, lot })
}

pub fn parse_lot(text: &str) -> Result<Lot, ParseError> {
    parse_lot_file(text).map(|f| f.lot)
}

/// Canonical text: header, one `vertex` line, one line per edge.
pub fn serialize_lot(l: &Lot, header: LotHeader) -> String {
    let mut out = String::from(match header {
        LotHeader::Lot => "lot\n",
        LotHeader::Log => "log\n",
    });
    if !l.vertices().is_empty() {
        out.push_str(&format!("vertex {}\n", l.vertices().join(" ")));
    }
    for e in l.edges() {
        let v = |i: usize| &l.vertices()[i];
        out.push_str(&format!(
            "edge {} {} {} {}\n",
            e.name,
            v(e.source),
            v(e.target),
            v(e.label)
        ));
    }
    out
}

/// One-vertex complex with an edge per generator and a cell `R<i>` per
/// relator.
pub fn parse_presentation(text: &str) -> Result<TwoComplex, ParseError> {
    let mut it = lines(text);
    let first = it.next().ok_or(ParseError::MissingHeader("presentation"))?;
    match first.tokens[..] {
        [(_, "presentation")] => {}
        [(c, _), ..] => return Err(syntax(&first, c, "expected `presentation` header")),
        [] => unreachable!("blank lines are skipped"),
    }
    let mut gens: Vec<String> = Vec::new();
    let mut cells = Vec::new();
    for line in it {
        let (col, keyword) = line.tokens[0];
        match keyword {
            "gens" => {
                for t in &line.tokens[1..] {
                    let name = identifier(&line, *t)?;
                    if gens.iter().any(|g| g == name) {
                        return Err(ParseError::Duplicate {
                            what: "generator",
                            name: name.into(),
                            line: line.number,
                        });
                    }
                    gens.push(name.into());
                }
            }
            "rel" => {
                if line.tokens.len() == 1 {
                    return Err(ParseError::EmptyRelator(line.number));
                }
                let mut word = Vec::new();
                for &(c, tok) in &line.tokens[1..] {
                    let name = tok.strip_suffix('-').unwrap_or(tok);
                    if !is_identifier(name) {
                        return Err(syntax(&line, c, format!("invalid letter `{tok}`")));
                    }
                    if !gens.iter().any(|g| g == name) {
                        return Err(ParseError::UnknownGenerator {
                            name: name.into(),
                            line: line.number,
                            column: c,
                        });
                    }
                    word.push(tok.to_string());
                }
                cells.push(RawCell {
                    name: format!("R{}", cells.len() + 1),
                    boundary: word,
                });
            }
            other => return Err(syntax(&line, col, format!("unknown keyword `{other}`"))),
        }
    }
    let raw = RawComplex {
        vertices: vec!["v".into()],
        edges: gens
            .iter()
            .map(|g| RawEdge {
                name: g.clone(),
                source: "v".into(),
                target: "v".into(),
            })
            .collect(),
        cells,
    };
    Ok(build_complex(&raw)?)
}

/// Canonical presentation text of a single-vertex complex; `None` for
/// complexes with several vertices.
pub fn serialize_presentation(x: &TwoComplex) -> Option<String> {
    if !x.is_single_vertex() {
        return None;
    }
    let mut out = String::from("presentation\n");
    let gens: Vec<&str> = x.edges().iter().map(|e| e.name.as_str()).collect();
    if !gens.is_empty() {
        out.push_str(&format!("gens {}\n", gens.join(" ")));
    }
    for c in x.cells() {
        out.push_str(&format!("rel {}\n", x.word_text(&c.boundary)));
    }
    Some(out)
}

/// Angle file: a JSON list of `{cell, position, weight}`.
pub fn parse_angles(text: &str, x: &TwoComplex) -> Result<AngleAssignment, ParseError> {
    let entries: Vec<AngleEntry> = serde_json::from_str(text)?;
    Ok(AngleAssignment::from_entries(x, &entries)?)
}

pub fn serialize_angles(a: &AngleAssignment, x: &TwoComplex) -> String {
    to_json(&a.entries(x))
}

/// A `--weights` argument: `uniform p/q` or angle file contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightSpec {
    Uniform(Q),
    Entries(Vec<AngleEntry>),
}

impl WeightSpec {
    /// `Ok(None)` when `arg` is not of the `uniform` form.
    pub fn parse_uniform(arg: &str) -> Result<Option<Self>, ParseError> {
        let Some(rest) = arg.trim().strip_prefix("uniform") else {
            return Ok(None);
        };
        let rest = rest.trim_start_matches([' ', ':', '=']).trim();
        parse_q(rest)
            .map(|v| Some(WeightSpec::Uniform(v)))
            .map_err(|_| ParseError::Syntax {
                line: 1,
                column: arg.len() - rest.len() + 1,
                message: format!("bad uniform weight `{rest}`"),
            })
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        Ok(WeightSpec::Entries(serde_json::from_str(text)?))
    }

    pub fn resolve(&self, x: &TwoComplex) -> Result<AngleAssignment, ParseError> {
        match self {
            WeightSpec::Uniform(v) => Ok(AngleAssignment::uniform(x, *v)),
            WeightSpec::Entries(e) => Ok(AngleAssignment::from_entries(x, e)?),
        }
    }
}

pub fn parse_diagram(text: &str, x: &TwoComplex) -> Result<Diagram, ParseError> {
    let raw: RawDiagram = serde_json::from_str(text)?;
    Ok(Diagram::from_raw(&raw, x)?)
}

pub fn serialize_diagram(d: &Diagram, x: &TwoComplex) -> String {
    to_json(&d.to_raw(x))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// A certificate together with the object it speaks about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateFile {
    Dr2 {
        complex: RawComplex,
        certificate: Dr2Certificate,
    },
    LocalIndicability {
        certificate: Box<LiCertificateTree>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("certificate rejected: {0}")]
    Rejected(String),
}

/// What a certificate file established after re-verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedCertificate {
    pub kind: String,
    pub method: String,
    pub dr2: bool,
    pub locally_indicable: bool,
}

pub fn verify_certificate(text: &str, caps: &SearchCaps) -> Result<VerifiedCertificate, CertError> {
    let file: CertificateFile = serde_json::from_str(text).map_err(ParseError::from)?;
    match file {
        CertificateFile::Dr2 {
            complex,
            certificate,
        } => {
            let x = build_complex(&complex).map_err(ParseError::from)?;
            verify_dr2(&x, &certificate).map_err(|e| CertError::Rejected(e.to_string()))?;
            Ok(VerifiedCertificate {
                kind: "dr2".into(),
                method: certificate.method.as_str().into(),
                dr2: certificate.conclusion.dr2,
                locally_indicable: certificate.conclusion.locally_indicable,
            })
        }
        CertificateFile::LocalIndicability { certificate } => {
            verify_li_tree(&certificate, caps).map_err(|e| CertError::Rejected(e.to_string()))?;
            Ok(VerifiedCertificate {
                kind: "local_indicability".into(),
                method: certificate.root.kind().into(),
                dr2: false,
                locally_indicable: certificate.locally_indicable,
            })
        }
    }
}
