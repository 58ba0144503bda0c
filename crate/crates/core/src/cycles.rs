//! Minimum-weight reduced cycles and paths in link graphs.
//!
//! Reduced walks in a link are exactly the walks in the directed state graph
//! whose states are darts (directed corner traversals) and whose transitions
//! join consecutive darts sharing a node, excluding a dart followed by its
//! own reversal. A loop corner has two distinct darts, so a single loop is a
//! reduced cycle of length 1. Weights must be non-negative.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::complex::{Dart, LinkGraph};
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedWalk {
    pub darts: Vec<Dart>,
    pub weight: Q,
}

struct StateGraph {
    /// Successor dart indices per dart index.
    succ: Vec<Vec<usize>>,
    /// Weight per dart index.
    weight: Vec<Q>,
}

impl StateGraph {
    fn new(g: &LinkGraph, corner_weights: &[Q]) -> Self {
        assert_eq!(corner_weights.len(), g.corners.len());
        let out = g.out_darts();
        let n = g.dart_count();
        let succ = (0..n)
            .map(|i| {
                let d = Dart::from_index(i);
                out[g.dart_head(d)]
                    .iter()
                    .filter(|next| **next != d.reverse())
                    .map(|next| next.index())
                    .collect()
            })
            .collect();
        let weight = (0..n).map(|i| corner_weights[i / 2]).collect();
        StateGraph { succ, weight }
    }
}

fn unwind(parent: &[usize], mut at: usize) -> Vec<Dart> {
    let mut darts = vec![Dart::from_index(at)];
    while parent[at] != usize::MAX {
        at = parent[at];
        darts.push(Dart::from_index(at));
    }
    darts.reverse();
    darts
}

/// Minimum total weight over all reduced cycles, or `None` for a forest.
///
/// Runs Dijkstra in the state graph from every dart and keeps the lightest
/// return to the start. Ties go to the lowest starting dart.
pub fn min_weight_cycle(g: &LinkGraph, corner_weights: &[Q]) -> Option<WeightedWalk> {
    let sg = StateGraph::new(g, corner_weights);
    let n = sg.succ.len();
    let mut best: Option<WeightedWalk> = None;
    for start in 0..n {
        let mut dist: Vec<Option<Q>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[start] = Some(sg.weight[start]);
        heap.push(Reverse((sg.weight[start], start)));
        while let Some(Reverse((d, x))) = heap.pop() {
            if done[x] {
                continue;
            }
            if best.as_ref().is_some_and(|b| d >= b.weight) {
                break;
            }
            done[x] = true;
            if sg.succ[x].contains(&start) {
                best = Some(WeightedWalk {
                    darts: unwind(&parent, x),
                    weight: d,
                });
                break;
            }
            for &y in &sg.succ[x] {
                let nd = d + sg.weight[y];
                if !done[y] && dist[y].is_none_or(|old| nd < old) {
                    dist[y] = Some(nd);
                    parent[y] = x;
                    heap.push(Reverse((nd, y)));
                }
            }
        }
    }
    best
}

/// Minimum-weight reduced path from node `from` to node `to` (`from != to`).
/// Ties go to the path with the lowest first dart.
pub fn min_weight_path(
    g: &LinkGraph,
    corner_weights: &[Q],
    from: usize,
    to: usize,
) -> Option<WeightedWalk> {
    let sg = StateGraph::new(g, corner_weights);
    let n = sg.succ.len();
    let mut key: Vec<Option<(Q, usize)>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    for (i, k) in key.iter_mut().enumerate() {
        if g.dart_tail(Dart::from_index(i)) == from {
            *k = Some((sg.weight[i], i));
            heap.push(Reverse((sg.weight[i], i, i)));
        }
    }
    while let Some(Reverse((d, origin, x))) = heap.pop() {
        if done[x] {
            continue;
        }
        done[x] = true;
        if g.dart_head(Dart::from_index(x)) == to {
            return Some(WeightedWalk {
                darts: unwind(&parent, x),
                weight: d,
            });
        }
        for &y in &sg.succ[x] {
            let nk = (d + sg.weight[y], origin);
            if !done[y] && key[y].is_none_or(|old| nk < old) {
                key[y] = Some(nk);
                parent[y] = x;
                heap.push(Reverse((nk.0, origin, y)));
            }
        }
    }
    None
}

/// Length of the shortest reduced cycle, `None` for a forest.
pub fn reduced_girth(g: &LinkGraph) -> Option<WeightedWalk> {
    let ones = vec![Q::from_integer(1); g.corners.len()];
    min_weight_cycle(g, &ones)
}
