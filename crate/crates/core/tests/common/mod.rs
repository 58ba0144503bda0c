//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use drtool_core::complex::{
    build_complex, LinkGraph, RawCell, RawComplex, RawEdge, SignedEdge, TwoComplex,
};
use drtool_core::curvature::AngleAssignment;
use drtool_core::lot::{Lot, LotEdge};
use drtool_core::Q;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixtures_dir() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "fixtures"].iter().collect()
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixtures_dir().join(name)).expect("fixture exists")
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn random_q(rng: &mut impl Rng, max_den: i64, max_value: i64) -> Q {
    let d = rng.gen_range(1..=max_den);
    q(rng.gen_range(0..=max_value * d), d)
}

fn letter_text(name: &str, inverse: bool) -> String {
    if inverse {
        format!("{name}-")
    } else {
        name.to_string()
    }
}

/// A random valid complex: up to 3 vertices, every cell a closed walk in
/// the 1-skeleton.
pub fn random_complex(rng: &mut impl Rng, max_cells: usize, max_len: usize) -> TwoComplex {
    let nv = rng.gen_range(1..=3);
    let ne = rng.gen_range(1..=4);
    let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let ends: Vec<(usize, usize)> = (0..ne)
        .map(|_| (rng.gen_range(0..nv), rng.gen_range(0..nv)))
        .collect();
    let edges: Vec<RawEdge> = ends
        .iter()
        .enumerate()
        .map(|(i, (s, t))| RawEdge {
            name: format!("e{i}"),
            source: vertices[*s].clone(),
            target: vertices[*t].clone(),
        })
        .collect();
    let nc = rng.gen_range(1..=max_cells);
    let mut cells = Vec::new();
    for c in 0..nc {
        let mut word = None;
        for _ in 0..50 {
            let start = rng.gen_range(0..nv);
            let len = rng.gen_range(1..=max_len);
            let mut at = start;
            let mut w = Vec::new();
            for _ in 0..len {
                let options: Vec<(usize, bool)> = (0..ne)
                    .flat_map(|e| [(e, false), (e, true)])
                    .filter(|(e, inv)| {
                        if *inv {
                            ends[*e].1 == at
                        } else {
                            ends[*e].0 == at
                        }
                    })
                    .collect();
                let Some(&(e, inv)) = options.choose(rng) else {
                    break;
                };
                at = if inv { ends[e].0 } else { ends[e].1 };
                w.push(letter_text(&format!("e{e}"), inv));
            }
            if !w.is_empty() && at == start {
                word = Some(w);
                break;
            }
        }
        let word = word.unwrap_or_else(|| vec!["e0".into(), "e0-".into()]);
        cells.push(RawCell {
            name: format!("D{c}"),
            boundary: word,
        });
    }
    build_complex(&RawComplex {
        vertices,
        edges,
        cells,
    })
    .expect("closed walks")
}

/// A random single-vertex complex whose words are cyclically reduced.
pub fn random_presentation(
    rng: &mut impl Rng,
    gens: usize,
    cells: usize,
    max_len: usize,
) -> TwoComplex {
    let names: Vec<String> = (0..gens)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let mut raw_cells = Vec::new();
    for c in 0..cells {
        let word = loop {
            let len = rng.gen_range(1..=max_len);
            let w: Vec<(usize, bool)> = (0..len)
                .map(|_| (rng.gen_range(0..gens), rng.gen_bool(0.5)))
                .collect();
            let reduced = (0..len).all(|i| {
                let (a, b) = (w[i], w[(i + 1) % len]);
                len == 1 || !(a.0 == b.0 && a.1 != b.1)
            });
            if reduced {
                break w;
            }
        };
        raw_cells.push(RawCell {
            name: format!("R{}", c + 1),
            boundary: word
                .iter()
                .map(|(g, inv)| letter_text(&names[*g], *inv))
                .collect(),
        });
    }
    build_complex(&RawComplex {
        vertices: vec!["v".into()],
        edges: names
            .iter()
            .map(|n| RawEdge {
                name: n.clone(),
                source: "v".into(),
                target: "v".into(),
            })
            .collect(),
        cells: raw_cells,
    })
    .expect("one vertex")
}

pub fn random_angles(rng: &mut impl Rng, x: &TwoComplex, max_den: i64) -> AngleAssignment {
    AngleAssignment::from_fn(x, |_| random_q(rng, max_den, 2))
}

fn start_vertex(x: &TwoComplex, l: SignedEdge) -> usize {
    let e = &x.edges()[l.edge];
    if l.inverse {
        e.target
    } else {
        e.source
    }
}

/// Curvatures recomputed from the raw words: for each vertex `2 - (ends at
/// v - corners at v) - angle sum`, for each cell `angle sum - (n - 2)`.
pub struct GaussBonnetOracle {
    pub vertices: Vec<Q>,
    pub cells: Vec<Q>,
    pub chi: i64,
}

pub fn gauss_bonnet_oracle(x: &TwoComplex, angles: &AngleAssignment) -> GaussBonnetOracle {
    let nv = x.vertices().len();
    let mut ends = vec![0i64; nv];
    for e in x.edges() {
        ends[e.source] += 1;
        ends[e.target] += 1;
    }
    let mut corners = vec![0i64; nv];
    let mut sums = vec![Q::from_integer(0); nv];
    let mut cells = Vec::new();
    for (c, cell) in x.cells().iter().enumerate() {
        let n = cell.boundary.len();
        let mut total = Q::from_integer(0);
        for (p, row) in angles.rows()[c].iter().enumerate() {
            // corner p sits where letter p ends and letter p + 1 starts
            let v = start_vertex(x, cell.boundary[(p + 1) % n]);
            corners[v] += 1;
            sums[v] += *row;
            total += *row;
        }
        cells.push(total - Q::from_integer(n as i64 - 2));
    }
    let vertices = (0..nv)
        .map(|v| Q::from_integer(2 - (ends[v] - corners[v])) - sums[v])
        .collect();
    GaussBonnetOracle {
        vertices,
        cells,
        chi: nv as i64 - x.edges().len() as i64 + x.cells().len() as i64,
    }
}

/// Traversal `(corner, reversed)`: from `ends[reversed]` to the other end.
type Step = (usize, bool);

fn tail(g: &LinkGraph, s: Step) -> drtool_core::complex::LinkNode {
    g.corners[s.0].ends[s.1 as usize]
}

fn head(g: &LinkGraph, s: Step) -> drtool_core::complex::LinkNode {
    g.corners[s.0].ends[1 - s.1 as usize]
}

fn follows(g: &LinkGraph, a: Step, b: Step) -> bool {
    head(g, a) == tail(g, b) && !(a.0 == b.0 && a.1 != b.1)
}

fn steps(g: &LinkGraph) -> Vec<Step> {
    (0..g.corners.len())
        .flat_map(|c| [(c, false), (c, true)])
        .collect()
}

/// Minimum weight of a closed non-backtracking walk (cyclically, too) with
/// at most `max_len` steps, by dynamic programming over walk length.
pub fn min_reduced_cycle_dp(g: &LinkGraph, weights: &[Q], max_len: usize) -> Option<Q> {
    let all = steps(g);
    let mut best: Option<Q> = None;
    for &first in &all {
        // cur[i]: lightest walk starting with `first` and ending with all[i]
        let mut cur: Vec<Option<Q>> = all
            .iter()
            .map(|s| (*s == first).then(|| weights[first.0]))
            .collect();
        for _len in 1..=max_len {
            for (i, s) in all.iter().enumerate() {
                if let Some(w) = cur[i] {
                    if follows(g, *s, first) && best.is_none_or(|b| w < b) {
                        best = Some(w);
                    }
                }
            }
            let mut next: Vec<Option<Q>> = vec![None; all.len()];
            for (i, s) in all.iter().enumerate() {
                let Some(w) = cur[i] else { continue };
                for (j, t) in all.iter().enumerate() {
                    if follows(g, *s, *t) {
                        let nw = w + weights[t.0];
                        if next[j].is_none_or(|o| nw < o) {
                            next[j] = Some(nw);
                        }
                    }
                }
            }
            cur = next;
        }
    }
    best
}

/// Literal enumeration of every closed non-backtracking walk with at most
/// `max_len` steps.
pub fn min_reduced_cycle_dfs(g: &LinkGraph, weights: &[Q], max_len: usize) -> Option<Q> {
    fn go(
        g: &LinkGraph,
        weights: &[Q],
        walk: &mut Vec<Step>,
        w: Q,
        max_len: usize,
        all: &[Step],
        best: &mut Option<Q>,
    ) {
        let (first, last) = (walk[0], *walk.last().expect("non-empty"));
        if follows(g, last, first) && best.is_none_or(|b| w < b) {
            *best = Some(w);
        }
        if walk.len() == max_len {
            return;
        }
        for &t in all {
            if follows(g, last, t) {
                walk.push(t);
                go(g, weights, walk, w + weights[t.0], max_len, all, best);
                walk.pop();
            }
        }
    }
    let all = steps(g);
    let mut best = None;
    for &s in &all {
        go(
            g,
            weights,
            &mut vec![s],
            weights[s.0],
            max_len,
            &all,
            &mut best,
        );
    }
    best
}

/// Every reading of length `len` at every (cell, direction, start).
fn readings(x: &TwoComplex, len: usize) -> Vec<((usize, bool, usize), Vec<SignedEdge>)> {
    let mut out = Vec::new();
    for (c, cell) in x.cells().iter().enumerate() {
        let m = cell.boundary.len();
        if len > m {
            continue;
        }
        let inverse: Vec<SignedEdge> = cell.boundary.iter().rev().map(|l| l.inv()).collect();
        for (dir, word) in [(false, &cell.boundary), (true, &inverse)] {
            for s in 0..m {
                out.push(((c, dir, s), (0..len).map(|k| word[(s + k) % m]).collect()));
            }
        }
    }
    out
}

fn is_piece(x: &TwoComplex, word: &[SignedEdge]) -> bool {
    readings(x, word.len())
        .iter()
        .filter(|(_, w)| w == word)
        .count()
        >= 2
}

/// Fewest pieces over every way of cutting the cyclic word of `cell`.
pub fn min_piece_count_brute(x: &TwoComplex, cell: usize) -> Option<usize> {
    let w = &x.cells()[cell].boundary;
    let n = w.len();
    let mut best: Option<usize> = None;
    for cuts in 1u32..(1 << n) {
        let points: Vec<usize> = (0..n).filter(|i| cuts >> i & 1 == 1).collect();
        let ok = points.iter().enumerate().all(|(k, &start)| {
            let end = points.get(k + 1).copied().unwrap_or(points[0] + n);
            let seg: Vec<SignedEdge> = (start..end).map(|i| w[i % n]).collect();
            is_piece(x, &seg)
        });
        if ok && best.is_none_or(|b| points.len() < b) {
            best = Some(points.len());
        }
    }
    best
}

/// Canonical string of a rooted tree (AHU).
fn rooted_form(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|u| **u != parent)
        .map(|u| rooted_form(adj, *u, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn tree_form(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for (a, b) in edges {
        adj[*a].push(*b);
        adj[*b].push(*a);
    }
    (0..n)
        .map(|r| rooted_form(&adj, r, usize::MAX))
        .min()
        .unwrap_or_default()
}

fn prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1; n];
    for s in seq {
        degree[*s] += 1;
    }
    let mut edges = Vec::new();
    for s in seq {
        let leaf = (0..n).find(|v| degree[*v] == 1).expect("a leaf");
        edges.push((leaf, *s));
        degree[leaf] -= 1;
        degree[*s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|v| degree[*v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// One edge list per unlabeled tree on `n >= 2` vertices.
pub fn unlabeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let total = n.pow(n as u32 - 2);
    for code in 0..total {
        let mut c = code;
        let seq: Vec<usize> = (0..n - 2)
            .map(|_| {
                let d = c % n;
                c /= n;
                d
            })
            .collect();
        let edges = prufer_edges(&seq, n);
        if seen.insert(tree_form(n, &edges)) {
            out.push(edges);
        }
    }
    out
}

fn injective_labelings(n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        visit(cur);
        return;
    }
    for v in 0..n {
        if !cur.contains(&v) {
            cur.push(v);
            injective_labelings(n, k, cur, visit);
            cur.pop();
        }
    }
}

/// Every oriented, injectively labeled tree on `n` vertices (one tree per
/// isomorphism class of the underlying unlabeled tree).
pub fn for_each_injective_lot(n: usize, mut visit: impl FnMut(Lot)) {
    let names: Vec<String> = (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    for tree in unlabeled_trees(n) {
        for flips in 0u32..(1 << tree.len()) {
            let oriented: Vec<(usize, usize)> = tree
                .iter()
                .enumerate()
                .map(|(i, (a, b))| {
                    if flips >> i & 1 == 1 {
                        (*b, *a)
                    } else {
                        (*a, *b)
                    }
                })
                .collect();
            injective_labelings(n, tree.len(), &mut Vec::new(), &mut |labels| {
                let edges = oriented
                    .iter()
                    .zip(labels)
                    .enumerate()
                    .map(|(i, ((s, t), l))| LotEdge {
                        name: format!("e{}", i + 1),
                        source: *s,
                        target: *t,
                        label: *l,
                    })
                    .collect();
                visit(Lot::new(names.clone(), edges).expect("valid"));
            });
        }
    }
}

/// Whether some connected proper vertex set of size at least 2 carries all
/// labels of its induced edges, by scanning every subset.
pub fn has_proper_sub_lot_brute(l: &Lot) -> bool {
    let n = l.vertices().len();
    (1u32..(1 << n) - 1).any(|mask| {
        let inside = |v: usize| mask >> v & 1 == 1;
        let size = mask.count_ones() as usize;
        let edges: Vec<&LotEdge> = l
            .edges()
            .iter()
            .filter(|e| inside(e.source) && inside(e.target))
            .collect();
        size >= 2 && edges.len() + 1 == size && edges.iter().all(|e| inside(e.label))
    })
}

/// A random labeled oriented tree on `n` vertices (labels may repeat).
pub fn random_lot(rng: &mut impl Rng, n: usize) -> Lot {
    let names: Vec<String> = (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let edges = (1..n)
        .map(|v| {
            let parent = rng.gen_range(0..v);
            let (source, target) = if rng.gen() { (parent, v) } else { (v, parent) };
            LotEdge {
                name: format!("e{v}"),
                source,
                target,
                label: rng.gen_range(0..n),
            }
        })
        .collect();
    Lot::new(names, edges).expect("valid")
}

/// Like [`random_lot`] but with distinct labels.
pub fn random_injective_lot(rng: &mut impl Rng, n: usize) -> Lot {
    let l = random_lot(rng, n);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let edges = l
        .edges()
        .iter()
        .zip(labels)
        .map(|(e, label)| LotEdge { label, ..e.clone() })
        .collect();
    Lot::new(l.vertices().to_vec(), edges).expect("valid")
}
