//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion with
//! its runtime against the pinned limit, then fails if any line is red.
//! All comparisons are exact rational equality.

mod common;

use std::io::Write;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use drtool_core::caps::SearchCaps;
use drtool_core::complex::link_graph;
use drtool_core::curvature::{
    check_gauss_bonnet, coloring_test, min_reduced_cycle_weight, weight_test, AngleAssignment,
};
use drtool_core::cycles::reduced_girth;
use drtool_core::diagram::{
    check_diagram, diagram_gauss_bonnet, enumerate_diagrams, search_reduced_diagram, Diagram,
    SearchOptions,
};
use drtool_core::dr::{
    check_c4t4, check_dr2_c4t4, check_dr2_weighted, check_dr2_zero_one, verify_dr2, Dr2Method,
};
use drtool_core::io::{
    corpus, parse_angles, parse_diagram, parse_lot, parse_lot_file, parse_presentation,
    serialize_angles, serialize_diagram, serialize_lot, serialize_presentation, to_json,
    AnalyzeOptions,
};
use drtool_core::lot::{
    bi_forest_orientation, check_properties, decide_locally_indicable, is_isomorphic, lot_complex,
    reduce_lot, replay, verify_li_tree, DecideOptions, LiEvidence, Lot, Sign,
};
use drtool_core::pieces::compute_pieces;
use drtool_core::verdict::Witness;
use drtool_core::{TwoComplex, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(n: usize, title: &str, limit: Duration, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let (ok, detail) = match result {
        Ok(d) if in_time => (true, d),
        Ok(d) => (false, format!("{d}; over time limit")),
        Err(e) => (false, e),
    };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(
        out,
        "criterion {n:>2} {} {title}: {detail} [{} ms / limit {} ms]",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_millis(),
        limit.as_millis()
    );
    ok
}

fn fixture_complex(name: &str) -> TwoComplex {
    parse_presentation(&fixture(name)).expect("fixture parses")
}

fn fixture_lot(name: &str) -> Lot {
    parse_lot(&fixture(name)).expect("fixture parses")
}

/// Every glued sphere over `x` with at most `max_faces` faces.
fn all_diagrams(x: &TwoComplex, max_faces: usize) -> Vec<Diagram> {
    let opts = SearchOptions {
        max_faces,
        reduced_only: false,
        symmetry_pruning: false,
    };
    let mut out = Vec::new();
    enumerate_diagrams(x, opts, &SearchCaps::default(), |d| {
        out.push(d.clone());
        ControlFlow::Continue(())
    })
    .expect("within caps");
    out
}

fn gauss_bonnet() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..200 {
        let x = random_complex(&mut rng, 6, 6);
        let a = random_angles(&mut rng, &x, 12);
        let r = check_gauss_bonnet(&x, &a).map_err(|e| e.to_string())?;
        let o = gauss_bonnet_oracle(&x, &a);
        let vertices: Vec<_> = r.vertices.iter().map(|v| v.value).collect();
        let cells: Vec<_> = r.cells.iter().map(|c| c.value).collect();
        ensure(vertices == o.vertices && cells == o.cells, || {
            format!("complex {i}: curvatures differ from the oracle")
        })?;
        let total: Q = o.vertices.iter().chain(&o.cells).sum();
        ensure(
            total == Q::from_integer(2 * o.chi) && r.total == total && r.holds,
            || format!("complex {i}: total {} vs 2chi {}", total, 2 * o.chi),
        )?;
    }
    let mut diagrams: Vec<(TwoComplex, Diagram)> = Vec::new();
    let m2 = fixture_complex("m2.pres");
    let torus = fixture_complex("torus.pres");
    for (x, name) in [
        (&m2, "m2_reduced.diagram.json"),
        (&m2, "m2_folded.diagram.json"),
        (&torus, "torus_folded.diagram.json"),
    ] {
        diagrams.push((
            x.clone(),
            parse_diagram(&fixture(name), x).map_err(|e| e.to_string())?,
        ));
    }
    for (x, faces) in [(m2, 3), (torus, 3), (fixture_complex("kt.pres"), 2)] {
        for d in all_diagrams(&x, faces) {
            diagrams.push((x.clone(), d));
        }
    }
    for (i, (x, d)) in diagrams.iter().enumerate() {
        let a = random_angles(&mut rng, x, 12);
        let r = diagram_gauss_bonnet(x, d, &a).map_err(|e| e.to_string())?;
        let total: Q = r.vertices.iter().chain(&r.cells).map(|v| v.value).sum();
        ensure(total == Q::from_integer(4) && r.holds, || {
            format!("diagram {i}: total {total}")
        })?;
    }
    Ok(format!(
        "exact on 200 random complexes and {} diagrams",
        diagrams.len()
    ))
}

fn trefoil() -> Check {
    let t = fixture_lot("trefoil.lot");
    let caps = SearchCaps::default();
    let bf = bi_forest_orientation(&t, &caps)
        .map_err(|e| e.to_string())?
        .ok_or("no bi-forest")?;
    ensure(bf.signs == vec![Sign::Plus; 3], || {
        format!("signs {:?}", bf.signs)
    })?;
    let x = lot_complex(&t);
    ensure(
        coloring_test(&x, &bf.zero_one)
            .map_err(|e| e.to_string())?
            .pass,
        || "coloring test failed".into(),
    )?;
    let cert = check_dr2_zero_one(&x, &bf.zero_one)
        .map_err(|e| e.to_string())?
        .map_err(|f| format!("zero/one criterion failed: {:?}", f.witness))?;
    verify_dr2(&x, &cert).map_err(|e| e.to_string())?;
    let tree =
        decide_locally_indicable(&t, &DecideOptions::default()).map_err(|e| e.to_string())?;
    ensure(tree.root.kind() == "HUCK_ROSE_BASE", || {
        format!("root {}", tree.root.kind())
    })?;
    verify_li_tree(&tree, &caps).map_err(|e| e.to_string())?;
    Ok("signs (+,+,+), coloring and per-edge component conditions hold, HUCK_ROSE_BASE re-verifies".into())
}

fn five_vertex() -> Check {
    let w = fixture_lot("w5.lot");
    let caps = SearchCaps::default();
    let tree =
        decide_locally_indicable(&w, &DecideOptions::default()).map_err(|e| e.to_string())?;
    let LiEvidence::QuotientStep { quotient, dr2, .. } = &tree.root.evidence else {
        return Err(format!("root {}", tree.root.kind()));
    };
    ensure(
        is_isomorphic(&quotient.lot, &fixture_lot("trefoil.lot")),
        || "quotient is not the trefoil".into(),
    )?;
    ensure(dr2.method == Dr2Method::ZeroOne, || {
        format!("quotient certificate {:?}", dr2.method)
    })?;
    verify_dr2(&lot_complex(&quotient.lot), dr2).map_err(|e| e.to_string())?;
    let [child] = &tree.root.children[..] else {
        return Err("expected one child".into());
    };
    ensure(
        child.locally_indicable && child.kind() == "HUCK_ROSE_BASE",
        || format!("child {}", child.kind()),
    )?;
    verify_li_tree(&tree, &caps).map_err(|e| e.to_string())?;
    Ok(
        "QUOTIENT_STEP, quotient isomorphic to T with a zero/one certificate, child HUCK_ROSE_BASE"
            .into(),
    )
}

fn torus() -> Check {
    let x = fixture_complex("torus.pres");
    let half = AngleAssignment::uniform(&x, q(1, 2));
    ensure(
        weight_test(&x, &half).map_err(|e| e.to_string())?.pass,
        || "weight test failed".into(),
    )?;
    let pieces = compute_pieces(&x).map_err(|e| e.to_string())?;
    ensure(pieces.cells[0].min_count == Some(4), || {
        format!("pieces {:?}", pieces.cells[0].min_count)
    })?;
    let girth = reduced_girth(&link_graph(&x, 0)).ok_or("no reduced cycle")?;
    ensure(girth.weight == Q::from_integer(4), || {
        format!("girth {}", girth.weight)
    })?;
    ensure(check_c4t4(&x).map_err(|e| e.to_string())?.pass, || {
        "c4t4 failed".into()
    })?;
    let cert = check_dr2_c4t4(&x)
        .map_err(|e| e.to_string())?
        .map_err(|_| "no c4t4 certificate")?;
    verify_dr2(&x, &cert).map_err(|e| e.to_string())?;
    let failure = match check_dr2_weighted(&x, &half).map_err(|e| e.to_string())? {
        Ok(_) => return Err("weighted criterion unexpectedly certified".into()),
        Err(f) => f,
    };
    let Witness::LightEdgePath { path, .. } = &failure.witness else {
        return Err(format!("witness {:?}", failure.witness));
    };
    ensure(
        path.nodes == ["a+", "b-", "a-"] && path.weight == Q::from_integer(1),
        || format!("path {:?} weight {}", path.nodes, path.weight),
    )?;
    Ok("weight test passes, 4 pieces, girth 4, c4t4 certificate, weighted fails on a+ b- a- (weight 1)".into())
}

fn cycle_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    let mut dfs_checked = 0;
    while done < 50 {
        let x = {
            let (gens, cells) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            random_presentation(&mut rng, gens, cells, 5)
        };
        let corners: usize = x.cells().iter().map(|c| c.boundary.len()).sum();
        if corners > 12 {
            continue;
        }
        let a = AngleAssignment::from_fn(&x, |_| random_q(&mut rng, 4, 2));
        let g = link_graph(&x, 0);
        let got = min_reduced_cycle_weight(&x, &g, &a)
            .map_err(|e| e.to_string())?
            .map(|w| w.weight);
        let weights = a.link_weights(&g);
        let want = min_reduced_cycle_dp(&g, &weights, 2 * corners);
        ensure(got == want, || {
            format!("link {done}: {got:?} vs oracle {want:?}")
        })?;
        if corners <= 4 {
            let brute = min_reduced_cycle_dfs(&g, &weights, 2 * corners);
            ensure(brute == want, || {
                format!("link {done}: enumeration {brute:?} vs dp {want:?}")
            })?;
            dfs_checked += 1;
        }
        done += 1;
    }
    Ok(format!(
        "50 links agree ({dfs_checked} also by literal enumeration)"
    ))
}

fn piece_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut relators = 0;
    for i in 0..30 {
        let x = {
            let (gens, cells) = (rng.gen_range(2..=3), rng.gen_range(1..=3));
            random_presentation(&mut rng, gens, cells, 8)
        };
        let p = compute_pieces(&x).map_err(|e| e.to_string())?;
        for c in 0..x.cells().len() {
            let want = min_piece_count_brute(&x, c);
            ensure(p.cells[c].min_count == want, || {
                format!(
                    "presentation {i} cell {}: {:?} vs brute {:?}",
                    x.word_text(&x.cells()[c].boundary),
                    p.cells[c].min_count,
                    want
                )
            })?;
            relators += 1;
        }
    }
    Ok(format!("{relators} relators from 30 presentations agree"))
}

fn diagram_oracle() -> Check {
    let caps = SearchCaps::default();
    let m2 = fixture_complex("m2.pres");
    let d = search_reduced_diagram(&m2, 2, &caps)
        .map_err(|e| e.to_string())?
        .ok_or("M2: no diagram")?;
    let r = check_diagram(&m2, &d).map_err(|e| e.to_string())?;
    ensure(r.reduced && r.folding_edges.is_empty(), || {
        "M2 diagram folds".into()
    })?;
    for name in ["kt.pres", "torus.pres"] {
        let x = fixture_complex(name);
        let found = search_reduced_diagram(&x, 4, &caps).map_err(|e| e.to_string())?;
        ensure(found.is_none(), || format!("{name}: reduced diagram found"))?;
    }
    Ok("M2 has a reduced 2-face diagram; K(T) and torus have none up to 4 faces".into())
}

fn small_lot_sweep() -> Check {
    let caps = SearchCaps::default();
    let mut reps: Vec<Lot> = Vec::new();
    let mut candidates = 0usize;
    for n in 2..=6 {
        let start = reps.len();
        for_each_injective_lot(n, |l| {
            candidates += 1;
            if check_properties(&l).reduced
                && !has_proper_sub_lot_brute(&l)
                && !reps[start..].iter().any(|r| is_isomorphic(r, &l))
            {
                reps.push(l);
            }
        });
    }
    for l in &reps {
        let text = serialize_lot(l, drtool_core::io::LotHeader::Lot);
        let bf = bi_forest_orientation(l, &caps)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no bi-forest for\n{text}"))?;
        let x = lot_complex(l);
        ensure(
            coloring_test(&x, &bf.zero_one)
                .map_err(|e| e.to_string())?
                .pass,
            || format!("coloring test fails for\n{text}"),
        )?;
        check_dr2_zero_one(&x, &bf.zero_one)
            .map_err(|e| e.to_string())?
            .map_err(|f| format!("component condition fails for\n{text}{:?}", f.witness))?;
    }
    Ok(format!(
        "{} classes from {candidates} labeled candidates, zero failures",
        reps.len()
    ))
}

fn reduction() -> Check {
    let l = fixture_lot("collapse.lot");
    let (r, log) = reduce_lot(&l);
    ensure(r.vertices().len() == 1 && r.edges().is_empty(), || {
        format!("reduced to {r:?}")
    })?;
    ensure(replay(&l, &log).map_err(|e| e.to_string())? == r, || {
        "replay differs".into()
    })?;
    let tree =
        decide_locally_indicable(&l, &DecideOptions::default()).map_err(|e| e.to_string())?;
    ensure(
        tree.root.kind() == "SINGLE_VERTEX" && tree.locally_indicable,
        || tree.root.kind().into(),
    )?;
    verify_li_tree(&tree, &SearchCaps::default()).map_err(|e| e.to_string())?;
    Ok(format!(
        "single vertex after {} move(s), replay agrees, SINGLE_VERTEX",
        log.moves.len()
    ))
}

fn determinism() -> Check {
    let dir = fixtures_dir();
    let opts = AnalyzeOptions {
        max_faces: Some(2),
        ..AnalyzeOptions::default()
    };
    let a = to_json(&corpus(&dir, &opts).map_err(|e| e.to_string())?);
    let b = to_json(&corpus(&dir, &opts).map_err(|e| e.to_string())?);
    ensure(a == b, || "corpus reports differ between runs".into())?;
    let mut files = 0;
    let mut names: Vec<_> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.file_name().to_string_lossy().into_owned()))
        .collect();
    names.sort();
    for name in &names {
        let text = fixture(name);
        if name.ends_with(".lot") {
            let f = parse_lot_file(&text).map_err(|e| e.to_string())?;
            let s = serialize_lot(&f.lot, f.header);
            let g = parse_lot_file(&s).map_err(|e| e.to_string())?;
            ensure(g == f && serialize_lot(&g.lot, g.header) == s, || {
                format!("{name} does not round-trip")
            })?;
        } else if name.ends_with(".pres") {
            let x = parse_presentation(&text).map_err(|e| e.to_string())?;
            let s = serialize_presentation(&x).ok_or("multi-vertex")?;
            let y = parse_presentation(&s).map_err(|e| e.to_string())?;
            ensure(
                x == y && serialize_presentation(&y).as_deref() == Some(s.as_str()),
                || format!("{name} does not round-trip"),
            )?;
        } else if name.ends_with(".diagram.json") {
            let x = fixture_complex(if name.starts_with("m2") {
                "m2.pres"
            } else {
                "torus.pres"
            });
            let d = parse_diagram(&text, &x).map_err(|e| e.to_string())?;
            ensure(
                parse_diagram(&serialize_diagram(&d, &x), &x).ok() == Some(d),
                || format!("{name} does not round-trip"),
            )?;
        } else if name.ends_with(".angles.json") {
            let x = fixture_complex("torus.pres");
            let a = parse_angles(&text, &x).map_err(|e| e.to_string())?;
            ensure(
                parse_angles(&serialize_angles(&a, &x), &x).ok() == Some(a),
                || format!("{name} does not round-trip"),
            )?;
        } else {
            continue;
        }
        files += 1;
    }
    Ok(format!(
        "corpus reports byte-identical ({} bytes), {files} fixtures round-trip",
        a.len()
    ))
}

#[test]
fn acceptance_criteria() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "gauss-bonnet identity", secs(5), gauss_bonnet),
        run(2, "trefoil LOT", secs(1), trefoil),
        run(3, "five-vertex LOT", secs(1), five_vertex),
        run(4, "torus", secs(1), torus),
        run(5, "reduced cycle oracle", secs(30), cycle_oracle),
        run(6, "piece oracle", secs(30), piece_oracle),
        run(7, "diagram oracle", secs(60), diagram_oracle),
        run(8, "small LOT sweep", secs(300), small_lot_sweep),
        run(9, "reduction semantics", secs(1), reduction),
        run(10, "determinism and round-trip", secs(60), determinism),
    ];
    let failed: Vec<usize> = (1..=10).filter(|i| !results[i - 1]).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
