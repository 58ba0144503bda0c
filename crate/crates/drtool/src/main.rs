//! `drtool`: certify DR, DR(2) and local indicability from the command line.
//!
//! Exit codes: 0 when the analysis completed (whatever its verdict), 1 for
//! bad input, 2 when an internal consistency check fails.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use drtool_core::caps::SearchCaps;
use drtool_core::complex::{all_links, TwoComplex};
use drtool_core::curvature::{
    check_gauss_bonnet, coloring_test, find_coloring_structure, weight_test, AngleAssignment,
    ZeroOneAssignment,
};
use drtool_core::diagram::{
    check_diagram, diagram_gauss_bonnet, drk_witness_check, search_reduced_diagram,
};
use drtool_core::dr::{
    certify_dr2, check_c4t4, check_dr2_c4t4, check_dr2_weighted, check_dr2_zero_one, verify_dr2,
    Dr2Certificate,
};
use drtool_core::io::{
    analyze, corpus, export_link_dot, export_lot_dot, parse_angles, parse_diagram, parse_lot_file,
    parse_presentation, serialize_diagram, to_json, verify_certificate, AnalyzeOptions, CertError,
    CertificateFile, LotFile, WeightSpec,
};
use drtool_core::lot::{
    check_properties, decide_locally_indicable, lot_complex, verify_li_tree, DecideOptions,
};
use drtool_core::rational::{format_q, int};
use drtool_core::verdict::TestVerdict;

#[derive(Parser)]
#[command(
    name = "drtool",
    version,
    about = "Certificates for DR, DR(2) and local indicability"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Labeled oriented trees.
    #[command(subcommand)]
    Lot(LotCommand),
    /// 2-complexes given as presentations or LOTs.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Spherical diagrams.
    #[command(subcommand)]
    Diagram(DiagramCommand),
    /// Analyze every `.lot` and `.pres` file in a directory.
    Corpus { dir: PathBuf },
    /// Re-check a certificate file.
    VerifyCert { file: PathBuf },
    /// Full JSON analysis report for one input.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long)]
        max_faces: Option<usize>,
        #[arg(long)]
        huck_rose_hypothesis: bool,
    },
}

#[derive(Subcommand)]
enum LotCommand {
    /// Tree, reduction and injectivity properties.
    Check {
        file: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decide local indicability and build a certificate tree.
    Decide {
        file: PathBuf,
        #[arg(long)]
        emit_cert: Option<PathBuf>,
        /// Also require that no sub-LOT is boundary reducible at base nodes.
        #[arg(long)]
        huck_rose_hypothesis: bool,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct WeightArgs {
    /// Angle file, or `uniform p/q`.
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Subcommand)]
enum ComplexCommand {
    /// Weight test for an angle assignment.
    Weighttest {
        file: PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Coloring test for a zero/one structure, searched for when not given.
    Coloringtest {
        file: PathBuf,
        /// Zero/one angle file.
        #[arg(long)]
        angles: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// C(4)-T(4) small cancellation check.
    C4t4 { file: PathBuf },
    /// Try the DR(2) criteria and keep the first certificate.
    Dr2 {
        file: PathBuf,
        /// Only try this criterion.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long)]
        angles: Option<PathBuf>,
        #[arg(long)]
        emit_cert: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    ZeroOne,
    C4t4,
    Weighted,
}

#[derive(Subcommand)]
enum DiagramCommand {
    /// Folding edges, reducedness and the DR(k) condition for one diagram.
    Verify {
        complex: PathBuf,
        diagram: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Angles to pull back for the curvature check.
        #[arg(long)]
        angles: Option<PathBuf>,
    },
    /// Bounded search for a reduced spherical diagram.
    Search {
        complex: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_faces: usize,
        /// Write the diagram found here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn internal(e: impl Display) -> Failure {
    Failure::Internal(anyhow!("internal check failed: {e}"))
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn caps() -> anyhow::Result<SearchCaps> {
    Ok(SearchCaps::from_env()?)
}

fn load_lot(path: &Path) -> anyhow::Result<LotFile> {
    parse_lot_file(&read(path)?).with_context(|| path.display().to_string())
}

/// A presentation, or the complex of a LOT file.
fn load_complex(path: &Path) -> anyhow::Result<TwoComplex> {
    let text = read(path)?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first == "lot" || first == "log" {
        Ok(lot_complex(
            &parse_lot_file(&text)
                .with_context(|| path.display().to_string())?
                .lot,
        ))
    } else {
        parse_presentation(&text).with_context(|| path.display().to_string())
    }
}

fn load_angles(path: &Path, x: &TwoComplex) -> anyhow::Result<AngleAssignment> {
    parse_angles(&read(path)?, x).with_context(|| path.display().to_string())
}

fn load_weights(w: &WeightArgs, x: &TwoComplex) -> anyhow::Result<Option<AngleAssignment>> {
    let Some(arg) = &w.weights else {
        return Ok(None);
    };
    let spec = match WeightSpec::parse_uniform(arg)? {
        Some(spec) => spec,
        None => WeightSpec::from_json(&read(Path::new(arg))?).with_context(|| arg.clone())?,
    };
    Ok(Some(spec.resolve(x)?))
}

fn link_dot(x: &TwoComplex, angles: Option<&AngleAssignment>) -> String {
    all_links(x)
        .iter()
        .map(|g| export_link_dot(x, g, angles))
        .collect::<Vec<_>>()
        .join("\n")
}

fn verdict_line(name: &str, v: &TestVerdict) -> String {
    if v.pass {
        if v.notes.is_empty() {
            format!("{name}: pass")
        } else {
            format!("{name}: pass ({})", v.notes.join("; "))
        }
    } else {
        let w = v
            .witness
            .as_ref()
            .map(|w| serde_json::to_string(w).expect("json"));
        format!("{name}: fail {}", w.unwrap_or_default())
    }
}

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, value: serde_json::Value, text: impl FnOnce() -> String) {
        if self.json {
            print!("{}", to_json(&value));
        } else {
            println!("{}", text());
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let out = Out { json: cli.json };
    match cli.command {
        Command::Lot(c) => run_lot(c, &out),
        Command::Complex(c) => run_complex(c, &out),
        Command::Diagram(c) => run_diagram(c, &out),
        Command::Corpus { dir } => {
            let opts = AnalyzeOptions {
                caps: caps()?,
                ..AnalyzeOptions::default()
            };
            let report =
                corpus(&dir, &opts).with_context(|| format!("cannot read {}", dir.display()))?;
            if out.json {
                print!("{}", to_json(&report));
            } else {
                for f in &report.files {
                    match (&f.report, &f.error) {
                        (Some(r), _) => {
                            let mut certs: Vec<&str> =
                                r.certificates.keys().map(String::as_str).collect();
                            certs.sort_unstable();
                            println!("{:<28} {}", f.file, certs.join(" "));
                        }
                        (None, e) => {
                            println!("{:<28} error: {}", f.file, e.clone().unwrap_or_default())
                        }
                    }
                }
                println!();
                for (k, v) in &report.summary {
                    println!("{k:<28} {v}");
                }
            }
            Ok(())
        }
        Command::VerifyCert { file } => match verify_certificate(&read(&file)?, &caps()?) {
            Ok(v) => {
                out.emit(serde_json::to_value(&v).expect("json"), || {
                    format!(
                        "certificate ok: {} via {} (dr2={}, locally_indicable={})",
                        v.kind, v.method, v.dr2, v.locally_indicable
                    )
                });
                Ok(())
            }
            Err(CertError::Parse(e)) => Err(Failure::Input(
                anyhow!(e).context(file.display().to_string()),
            )),
            Err(e) => Err(Failure::Input(anyhow!(e))),
        },
        Command::Analyze {
            file,
            weights,
            max_faces,
            huck_rose_hypothesis,
        } => {
            let spec = match &weights.weights {
                None => None,
                Some(arg) => Some(
                    match WeightSpec::parse_uniform(arg).map_err(anyhow::Error::from)? {
                        Some(s) => s,
                        None => WeightSpec::from_json(&read(Path::new(arg))?)
                            .map_err(anyhow::Error::from)?,
                    },
                ),
            };
            let opts = AnalyzeOptions {
                caps: caps()?,
                weights: spec,
                max_faces,
                huck_rose_hypothesis,
            };
            let report = analyze(&file, &opts).map_err(anyhow::Error::from)?;
            print!("{}", to_json(&report));
            Ok(())
        }
    }
}

fn run_lot(c: LotCommand, out: &Out) -> Outcome {
    match c {
        LotCommand::Check { file, dot } => {
            let f = load_lot(&file)?;
            if let Some(p) = dot {
                write(&p, &export_lot_dot(&f.lot))?;
            }
            let p = check_properties(&f.lot);
            out.emit(serde_json::to_value(&p).expect("json"), || {
                let mut lines = vec![
                    format!("tree: {}", p.tree),
                    format!("boundary_reduced: {}", p.boundary_reduced),
                    format!("interior_reduced: {}", p.interior_reduced),
                    format!("compressed: {}", p.compressed),
                    format!("injective: {}", p.injective),
                    format!("reduced: {}", p.reduced),
                ];
                lines.extend(
                    p.witnesses
                        .iter()
                        .map(|w| format!("witness: {}", serde_json::to_string(w).expect("json"))),
                );
                lines.join("\n")
            });
            Ok(())
        }
        LotCommand::Decide {
            file,
            emit_cert,
            huck_rose_hypothesis,
            dot,
        } => {
            let f = load_lot(&file)?;
            if let Some(p) = dot {
                write(&p, &export_lot_dot(&f.lot))?;
            }
            let opts = DecideOptions {
                caps: caps()?,
                huck_rose_hypothesis,
            };
            let tree = decide_locally_indicable(&f.lot, &opts)
                .with_context(|| file.display().to_string())?;
            verify_li_tree(&tree, &opts.caps).map_err(internal)?;
            if let Some(p) = emit_cert {
                write(
                    &p,
                    &to_json(&CertificateFile::LocalIndicability {
                        certificate: Box::new(tree.clone()),
                    }),
                )?;
            }
            let counts = tree.root.kind_counts();
            out.emit(
                json!({
                    "locally_indicable": tree.locally_indicable,
                    "root": tree.root.kind(),
                    "node_kinds": counts,
                    "certificate": tree,
                }),
                || {
                    let kinds: Vec<String> =
                        counts.iter().map(|(k, n)| format!("{k}={n}")).collect();
                    format!(
                        "{}\nlocally_indicable: {}\nnodes: {}",
                        tree.root.kind(),
                        if tree.locally_indicable {
                            "certified"
                        } else {
                            "unknown"
                        },
                        kinds.join(" ")
                    )
                },
            );
            Ok(())
        }
    }
}

fn emit_dr2(x: &TwoComplex, cert: &Dr2Certificate, path: &Path) -> Outcome {
    verify_dr2(x, cert).map_err(internal)?;
    write(
        path,
        &to_json(&CertificateFile::Dr2 {
            complex: x.to_raw(),
            certificate: cert.clone(),
        }),
    )?;
    Ok(())
}

fn search_zero_one(x: &TwoComplex) -> anyhow::Result<Option<ZeroOneAssignment>> {
    Ok(find_coloring_structure(x, true, &caps()?)?)
}

fn run_complex(c: ComplexCommand, out: &Out) -> Outcome {
    match c {
        ComplexCommand::Weighttest { file, weights, dot } => {
            let x = load_complex(&file)?;
            let w = load_weights(&weights, &x)?.ok_or_else(|| anyhow!("--weights is required"))?;
            if let Some(p) = dot {
                write(&p, &link_dot(&x, Some(&w)))?;
            }
            let v = weight_test(&x, &w).map_err(anyhow::Error::from)?;
            let gb = check_gauss_bonnet(&x, &w).map_err(anyhow::Error::from)?;
            if !gb.holds {
                return Err(internal("curvature does not sum to 2 chi"));
            }
            out.emit(json!({ "weight_test": v, "gauss_bonnet": gb }), || {
                format!(
                    "{}\ncurvature total: {} (2 chi = {})",
                    verdict_line("weight test", &v),
                    format_q(&gb.total),
                    2 * gb.euler_characteristic
                )
            });
            Ok(())
        }
        ComplexCommand::Coloringtest { file, angles, dot } => {
            let x = load_complex(&file)?;
            let z = match angles {
                Some(p) => Some(
                    ZeroOneAssignment::from_angles(&x, &load_angles(&p, &x)?)
                        .map_err(anyhow::Error::from)?,
                ),
                None => search_zero_one(&x)?,
            };
            let Some(z) = z else {
                out.emit(json!({ "zero_one": null }), || {
                    "no zero/one structure found".into()
                });
                return Ok(());
            };
            if let Some(p) = dot {
                write(&p, &link_dot(&x, Some(&z.to_angles())))?;
            }
            let v = coloring_test(&x, &z).map_err(anyhow::Error::from)?;
            out.emit(json!({ "zero_one": z, "coloring_test": v }), || {
                verdict_line("coloring test", &v)
            });
            Ok(())
        }
        ComplexCommand::C4t4 { file } => {
            let x = load_complex(&file)?;
            let v = check_c4t4(&x).map_err(anyhow::Error::from)?;
            out.emit(json!({ "c4t4": v }), || verdict_line("c4t4", &v));
            Ok(())
        }
        ComplexCommand::Dr2 {
            file,
            method,
            weights,
            angles,
            emit_cert,
        } => {
            let x = load_complex(&file)?;
            let w = load_weights(&weights, &x)?;
            let z = match angles {
                Some(p) => Some(
                    ZeroOneAssignment::from_angles(&x, &load_angles(&p, &x)?)
                        .map_err(anyhow::Error::from)?,
                ),
                None if matches!(method, None | Some(MethodArg::ZeroOne)) => search_zero_one(&x)?,
                None => None,
            };
            let (cert, failures) = match method {
                None => certify_dr2(&x, z.as_ref(), w.as_ref()).map_err(anyhow::Error::from)?,
                Some(m) => {
                    let outcome = match m {
                        MethodArg::ZeroOne => {
                            let z = z.ok_or_else(|| anyhow!("no zero/one structure found"))?;
                            check_dr2_zero_one(&x, &z)
                        }
                        MethodArg::C4t4 => check_dr2_c4t4(&x),
                        MethodArg::Weighted => {
                            let w = w.ok_or_else(|| {
                                anyhow!("--weights is required for the weighted method")
                            })?;
                            check_dr2_weighted(&x, &w)
                        }
                    }
                    .map_err(anyhow::Error::from)?;
                    match outcome {
                        Ok(c) => (Some(c), Vec::new()),
                        Err(f) => (None, vec![f]),
                    }
                }
            };
            if let (Some(c), Some(p)) = (&cert, &emit_cert) {
                emit_dr2(&x, c, p)?;
            }
            out.emit(json!({ "certificate": cert, "failures": failures }), || {
                let mut lines = vec![match &cert {
                    Some(c) => format!("DR(2) certified by {}", c.method.as_str()),
                    None => "DR(2) not certified".into(),
                }];
                for f in &failures {
                    lines.push(format!(
                        "{} failed: {}",
                        f.method.as_str(),
                        serde_json::to_string(&f.witness).expect("json")
                    ));
                }
                lines.join("\n")
            });
            Ok(())
        }
    }
}

fn run_diagram(c: DiagramCommand, out: &Out) -> Outcome {
    match c {
        DiagramCommand::Verify {
            complex,
            diagram,
            k,
            angles,
        } => {
            let x = load_complex(&complex)?;
            let d = parse_diagram(&read(&diagram)?, &x)
                .with_context(|| diagram.display().to_string())?;
            let report = check_diagram(&x, &d).map_err(anyhow::Error::from)?;
            if report.reduced != report.folding_edges.is_empty() {
                return Err(internal("link backtracks and folding edges disagree"));
            }
            let drk = drk_witness_check(&report, k);
            let gb = match angles {
                Some(p) => {
                    let a = load_angles(&p, &x)?;
                    let gb = diagram_gauss_bonnet(&x, &d, &a).map_err(anyhow::Error::from)?;
                    if !gb.holds {
                        return Err(internal("curvature of the sphere does not sum to 4"));
                    }
                    Some(gb)
                }
                None => None,
            };
            out.emit(
                json!({ "folding": report, "drk": drk, "k": k, "gauss_bonnet": gb }),
                || {
                    let labels: Vec<String> = report
                        .folding_edges
                        .iter()
                        .map(|f| format!("{}:{}", f.edge, f.label))
                        .collect();
                    let mut lines = vec![
                        format!("reduced: {}", report.reduced),
                        if labels.is_empty() {
                            "folding edges: none".to_string()
                        } else {
                            format!("folding edges: {}", labels.join(" "))
                        },
                        verdict_line(&format!("DR({k}) condition"), &drk),
                    ];
                    if let Some(gb) = &gb {
                        let positive: Vec<&str> = gb
                            .vertices
                            .iter()
                            .filter(|v| v.value > int(0))
                            .map(|v| v.name.as_str())
                            .collect();
                        lines.push(format!(
                            "curvature total: {}; positive vertices: {}",
                            format_q(&gb.total),
                            positive.join(" ")
                        ));
                    }
                    lines.join("\n")
                },
            );
            Ok(())
        }
        DiagramCommand::Search {
            complex,
            max_faces,
            emit,
        } => {
            let x = load_complex(&complex)?;
            let found =
                search_reduced_diagram(&x, max_faces, &caps()?).map_err(anyhow::Error::from)?;
            if let Some(d) = &found {
                let r = check_diagram(&x, d).map_err(internal)?;
                if !r.reduced {
                    return Err(internal("search returned a diagram with a folding edge"));
                }
                if let Some(p) = &emit {
                    write(p, &serialize_diagram(d, &x))?;
                }
            }
            out.emit(
                json!({ "max_faces": max_faces, "diagram": found.as_ref().map(|d| d.to_raw(&x)) }),
                || match &found {
                    Some(d) => format!(
                        "reduced diagram with {} faces\n{}",
                        d.sphere.faces().len(),
                        serialize_diagram(d, &x).trim_end()
                    ),
                    None => format!("NONE (no reduced diagram with at most {max_faces} faces)"),
                },
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
