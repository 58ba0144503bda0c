//! Pieces of cyclic relators and minimal piece decompositions.
//!
//! A reading position is a cell, a direction (the boundary word or its
//! inverse) and a start offset. A word is a piece when it can be read at two
//! distinct reading positions; its length is at most the length of both
//! cyclic words involved. Proper powers are not special-cased, so shifts of
//! a periodic word count as distinct positions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{CellId, SignedEdge, TwoComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PieceError {
    #[error("boundary word of cell {0:?} is not cyclically reduced")]
    NonReducedRelator(String),
}

/// A contiguous segment of a cyclic boundary word (0-based start).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellPieces {
    pub cell: String,
    /// Fewest pieces the cyclic word splits into; `None` when some letter
    /// is not part of any piece.
    pub min_count: Option<usize>,
    pub segments: Vec<Segment>,
    pub decomposition: Vec<String>,
    /// Smallest period of the cyclic word; less than its length for a
    /// proper power.
    pub period: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceDecomposition {
    pub cells: Vec<CellPieces>,
    /// Maximal pieces as letter strings.
    pub pieces: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Reading {
    cell: CellId,
    inverse: bool,
    start: usize,
}

fn letter_at(x: &TwoComplex, r: Reading, k: usize) -> SignedEdge {
    let w = &x.cells()[r.cell].boundary;
    let n = w.len();
    let i = (r.start + k) % n;
    if r.inverse {
        w[n - 1 - i].inv()
    } else {
        w[i]
    }
}

fn readings(x: &TwoComplex) -> Vec<Reading> {
    let mut out = Vec::new();
    for (cell, c) in x.cells().iter().enumerate() {
        for inverse in [false, true] {
            for start in 0..c.boundary.len() {
                out.push(Reading {
                    cell,
                    inverse,
                    start,
                });
            }
        }
    }
    out
}

/// Longest common prefix of two readings, capped by both word lengths.
fn common_extension(x: &TwoComplex, a: Reading, b: Reading) -> usize {
    let cap = x.cells()[a.cell]
        .boundary
        .len()
        .min(x.cells()[b.cell].boundary.len());
    (0..cap)
        .take_while(|k| letter_at(x, a, *k) == letter_at(x, b, *k))
        .count()
}

fn smallest_period(w: &[SignedEdge]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|p| n.is_multiple_of(*p) && (0..n).all(|i| w[i] == w[(i + p) % n]))
        .unwrap_or(n)
}

/// Longest piece starting at each forward position of each cell.
fn max_piece_lengths(x: &TwoComplex) -> Vec<Vec<usize>> {
    let all = readings(x);
    x.cells()
        .iter()
        .enumerate()
        .map(|(cell, c)| {
            (0..c.boundary.len())
                .map(|start| {
                    let me = Reading {
                        cell,
                        inverse: false,
                        start,
                    };
                    all.iter()
                        .filter(|r| **r != me)
                        .map(|r| common_extension(x, me, *r))
                        .max()
                        .unwrap_or(0)
                })
                .collect()
        })
        .collect()
}

fn segment_text(x: &TwoComplex, cell: CellId, s: Segment) -> String {
    let w = &x.cells()[cell].boundary;
    let letters: Vec<SignedEdge> = (0..s.len).map(|k| w[(s.start + k) % w.len()]).collect();
    x.word_text(&letters)
}

/// Minimal decomposition of one cyclic word given the longest piece at
/// each start. Cut points are tried in increasing order; ties keep the
/// first found.
fn min_decomposition(max_len: &[usize]) -> Option<Vec<Segment>> {
    let n = max_len.len();
    let mut best: Option<Vec<Segment>> = None;
    for cut in 0..n {
        // dp[k]: fewest pieces covering letters cut..cut+k
        let mut dp: Vec<Option<usize>> = vec![None; n + 1];
        let mut from = vec![0usize; n + 1];
        dp[0] = Some(0);
        for k in 1..=n {
            for j in 0..k {
                let Some(prev) = dp[j] else { continue };
                if k - j <= max_len[(cut + j) % n] && dp[k].is_none_or(|cur| prev + 1 < cur) {
                    dp[k] = Some(prev + 1);
                    from[k] = j;
                }
            }
        }
        let Some(count) = dp[n] else { continue };
        if best.as_ref().is_some_and(|b| b.len() <= count) {
            continue;
        }
        let mut segs = Vec::with_capacity(count);
        let mut k = n;
        while k > 0 {
            let j = from[k];
            segs.push(Segment {
                start: (cut + j) % n,
                len: k - j,
            });
            k = j;
        }
        segs.reverse();
        best = Some(segs);
    }
    best
}

fn is_subword(needle: &[SignedEdge], hay: &[SignedEdge]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

pub fn compute_pieces(x: &TwoComplex) -> Result<PieceDecomposition, PieceError> {
    if let Some(flag) = x.flags().first() {
        let cell = match flag {
            crate::complex::ValidationFlag::NonReduced { cell, .. }
            | crate::complex::ValidationFlag::NotCyclicallyReduced { cell, .. } => *cell,
        };
        return Err(PieceError::NonReducedRelator(x.cells()[cell].name.clone()));
    }
    let max_len = max_piece_lengths(x);
    let cells = x
        .cells()
        .iter()
        .enumerate()
        .map(|(cell, c)| {
            let segments = min_decomposition(&max_len[cell]).unwrap_or_default();
            CellPieces {
                cell: c.name.clone(),
                min_count: (!segments.is_empty()).then_some(segments.len()),
                decomposition: segments.iter().map(|s| segment_text(x, cell, *s)).collect(),
                segments,
                period: smallest_period(&c.boundary),
            }
        })
        .collect();

    // maximal pieces: longest common extensions between distinct readings
    let all = readings(x);
    let mut words: Vec<Vec<SignedEdge>> = Vec::new();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            let len = common_extension(x, *a, *b);
            if len > 0 {
                let w: Vec<SignedEdge> = (0..len).map(|k| letter_at(x, *a, k)).collect();
                if !words.contains(&w) {
                    words.push(w);
                }
            }
        }
    }
    // a piece and its inverse are the same piece read backwards
    let canonical = |w: &Vec<SignedEdge>| {
        let inv: Vec<SignedEdge> = w.iter().rev().map(|l| l.inv()).collect();
        std::cmp::min(w.clone(), inv)
    };
    let mut maximal: Vec<Vec<SignedEdge>> = Vec::new();
    for w in &words {
        let inv: Vec<SignedEdge> = w.iter().rev().map(|l| l.inv()).collect();
        let dominated = words
            .iter()
            .any(|o| o.len() > w.len() && (is_subword(w, o) || is_subword(&inv, o)));
        if !dominated {
            let c = canonical(w);
            if !maximal.contains(&c) {
                maximal.push(c);
            }
        }
    }
    maximal.sort();
    Ok(PieceDecomposition {
        cells,
        pieces: maximal.iter().map(|w| x.word_text(w)).collect(),
    })
}
