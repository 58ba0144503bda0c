//! Bounded search over spherical diagrams.
//!
//! Faces are chosen as a multiset of (cell, orientation) types, each at
//! rotation 0. Sides are then glued greedily: the lowest unmatched side is
//! paired with some later unmatched side carrying the inverse label.

use std::ops::ControlFlow;

use rayon::prelude::*;

use super::{
    validate_sphere, Diagram, DiagramError, DiagramMap, FaceMap, Orientation, SphereComplex,
};
use crate::caps::SearchCaps;
use crate::complex::{SignedEdge, TwoComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_faces: usize,
    /// Skip gluings that create a folding edge.
    pub reduced_only: bool,
    /// Glue into only the first untouched face of each type.
    pub symmetry_pruning: bool,
}

impl SearchOptions {
    pub fn reduced(max_faces: usize) -> Self {
        SearchOptions {
            max_faces,
            reduced_only: true,
            symmetry_pruning: true,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct SideInfo {
    face: usize,
    position: usize,
    label: SignedEdge,
    cell: usize,
    letter: usize,
}

fn face_map(t: usize) -> FaceMap {
    FaceMap {
        cell: t / 2,
        rotation: 0,
        orientation: if t.is_multiple_of(2) {
            Orientation::Plus
        } else {
            Orientation::Minus
        },
    }
}

fn multisets(types: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(types: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().copied().unwrap_or(0);
        for t in start..types {
            cur.push(t);
            go(types, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for len in 1..=max {
        go(types, len, &mut Vec::new(), &mut out);
    }
    out
}

struct Gluer<'a> {
    opts: SearchOptions,
    types: &'a [usize],
    sides: Vec<SideInfo>,
    face_start: Vec<usize>,
    partner: Vec<Option<usize>>,
    touched: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

impl Gluer<'_> {
    fn run(&mut self, visit: &mut dyn FnMut(&Diagram) -> ControlFlow<()>) -> ControlFlow<()> {
        let Some(i) = self.partner.iter().position(Option::is_none) else {
            return match self.finish() {
                Some(d) => visit(&d),
                None => ControlFlow::Continue(()),
            };
        };
        let want = self.sides[i].label.inv();
        let mut skip_type: Vec<usize> = Vec::new();
        for j in i + 1..self.sides.len() {
            if self.partner[j].is_some() || self.sides[j].label != want {
                continue;
            }
            let (a, b) = (self.sides[i], self.sides[j]);
            if self.opts.reduced_only && a.cell == b.cell && a.letter == b.letter {
                continue;
            }
            let fj = b.face;
            let fresh = fj != a.face && self.touched[fj] == 0;
            if self.opts.symmetry_pruning && fresh {
                if skip_type.contains(&self.types[fj]) {
                    continue;
                }
                skip_type.push(self.types[fj]);
            }
            self.partner[i] = Some(j);
            self.partner[j] = Some(i);
            self.touched[a.face] += 1;
            self.touched[fj] += 1;
            self.pairs.push((i, j));
            let flow = self.run(visit);
            self.pairs.pop();
            self.touched[a.face] -= 1;
            self.touched[fj] -= 1;
            self.partner[i] = None;
            self.partner[j] = None;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn finish(&self) -> Option<Diagram> {
        let mut words: Vec<Vec<String>> = self
            .face_start
            .iter()
            .enumerate()
            .map(|(f, _)| vec![String::new(); self.sides.iter().filter(|s| s.face == f).count()])
            .collect();
        let mut labels = Vec::with_capacity(self.pairs.len());
        for (k, (i, j)) in self.pairs.iter().enumerate() {
            let name = format!("s{k}");
            for s in [i, j] {
                let side = self.sides[*s];
                words[side.face][side.position] = if side.label.inverse {
                    format!("{name}-")
                } else {
                    name.clone()
                };
            }
            labels.push(self.sides[*i].label.edge);
        }
        let faces: Vec<(String, Vec<String>)> = words
            .into_iter()
            .enumerate()
            .map(|(f, w)| (format!("F{}", f + 1), w))
            .collect();
        let sphere = SphereComplex::new(&faces).ok()?;
        if !validate_sphere(&sphere).pass {
            return None;
        }
        // sphere edges are renumbered by first appearance
        let labels = sphere
            .edges()
            .iter()
            .map(|name| labels[name[1..].parse::<usize>().expect("generated name")])
            .collect();
        Some(Diagram {
            sphere,
            map: DiagramMap {
                labels,
                faces: self.types.iter().map(|t| face_map(*t)).collect(),
            },
        })
    }
}

fn balanced(x: &TwoComplex, types: &[usize]) -> bool {
    let mut count = vec![0i64; x.edges().len()];
    for t in types {
        for l in &x.cells()[t / 2].boundary {
            count[l.edge] += if l.inverse == (t % 2 == 0) { -1 } else { 1 };
        }
    }
    count.iter().all(|c| *c == 0)
}

fn glue_multiset(
    x: &TwoComplex,
    opts: SearchOptions,
    types: &[usize],
    visit: &mut dyn FnMut(&Diagram) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if !balanced(x, types) {
        return ControlFlow::Continue(());
    }
    let mut sides = Vec::new();
    let mut face_start = Vec::new();
    for (face, t) in types.iter().enumerate() {
        face_start.push(sides.len());
        let m = face_map(*t);
        for position in 0..x.cells()[m.cell].boundary.len() {
            let (letter, label) = m.letter(x, position);
            sides.push(SideInfo {
                face,
                position,
                label,
                cell: m.cell,
                letter,
            });
        }
    }
    let n = sides.len();
    Gluer {
        opts,
        types,
        sides,
        face_start,
        partner: vec![None; n],
        touched: vec![0; types.len()],
        pairs: Vec::new(),
    }
    .run(visit)
}

fn check_cap(opts: &SearchOptions, caps: &SearchCaps) -> Result<(), DiagramError> {
    if opts.max_faces > caps.diagram_faces {
        return Err(DiagramError::CapExceeded {
            requested: opts.max_faces,
            cap: caps.diagram_faces,
        });
    }
    Ok(())
}

/// Visits every glued sphere with at most `max_faces` faces, smaller face
/// counts first. Returns the number of diagrams visited.
pub fn enumerate_diagrams(
    x: &TwoComplex,
    opts: SearchOptions,
    caps: &SearchCaps,
    mut visit: impl FnMut(&Diagram) -> ControlFlow<()>,
) -> Result<usize, DiagramError> {
    check_cap(&opts, caps)?;
    let mut count = 0;
    let mut counted = |d: &Diagram| {
        count += 1;
        visit(d)
    };
    for types in multisets(2 * x.cells().len(), opts.max_faces) {
        if glue_multiset(x, opts, &types, &mut counted).is_break() {
            break;
        }
    }
    Ok(count)
}

/// The first reduced spherical diagram with at most `max_faces` faces in
/// enumeration order, searching face multisets in parallel.
pub fn search_reduced_diagram(
    x: &TwoComplex,
    max_faces: usize,
    caps: &SearchCaps,
) -> Result<Option<Diagram>, DiagramError> {
    let opts = SearchOptions::reduced(max_faces);
    check_cap(&opts, caps)?;
    let found = multisets(2 * x.cells().len(), max_faces)
        .into_par_iter()
        .find_map_first(|types| {
            let mut found = None;
            let _ = glue_multiset(x, opts, &types, &mut |d| {
                found = Some(d.clone());
                ControlFlow::Break(())
            });
            found
        });
    Ok(found)
}
