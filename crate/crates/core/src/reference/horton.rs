//! Horton's candidate-set algorithm for minimum cycle bases.
//!
//! Shortest paths are made unique by comparing paths first by weight and
//! then by their edge sets read as binary numbers (bit `e` for edge `e`).
//! This is the order induced by adding `2^e * eps` to every edge weight,
//! so the candidate set contains a minimum basis for the perturbed and
//! hence for the original weights.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::gf2::Gf2Basis;
use super::{check_size, ReferenceError};
use crate::cycle::Cycle;
use crate::graph::{cycle_space_dimension_any, EdgeId, VertexId, WeightedGraph};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
struct EdgeBits(Vec<u64>);

impl EdgeBits {
    fn empty(m: usize) -> Self {
        EdgeBits(vec![0; m.div_ceil(64).max(1)])
    }

    fn with(&self, e: EdgeId) -> Self {
        let mut b = self.clone();
        b.0[e / 64] |= 1 << (e % 64);
        b
    }

    fn union(&self, other: &EdgeBits) -> Self {
        EdgeBits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn ids(&self) -> Vec<EdgeId> {
        let mut out = Vec::new();
        for (i, &w) in self.0.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(i * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }
}

impl Ord for EdgeBits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for EdgeBits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Key = (Weight, EdgeBits);

struct ShortestPathTree {
    key: Vec<Option<Key>>,
    parent_edge: Vec<Option<EdgeId>>,
}

fn perturbed_dijkstra(g: &WeightedGraph, root: VertexId) -> ShortestPathTree {
    let n = g.n();
    let mut key: Vec<Option<Key>> = vec![None; n];
    let mut parent_edge = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    key[root] = Some((Weight::ZERO, EdgeBits::empty(g.m())));
    heap.push(Reverse((key[root].clone().expect("set"), root)));
    while let Some(Reverse((k, x))) = heap.pop() {
        if done[x] {
            continue;
        }
        done[x] = true;
        for e in g.incident(x) {
            let y = g.edge(e).other(x);
            if done[y] {
                continue;
            }
            let cand = (k.0 + g.edge(e).w, k.1.with(e));
            if key[y].as_ref().is_none_or(|cur| cand < *cur) {
                key[y] = Some(cand.clone());
                parent_edge[y] = Some(e);
                heap.push(Reverse((cand, y)));
            }
        }
    }
    ShortestPathTree { key, parent_edge }
}

fn path_vertices(g: &WeightedGraph, t: &ShortestPathTree, mut x: VertexId) -> Vec<VertexId> {
    let mut out = vec![x];
    while let Some(e) = t.parent_edge[x] {
        x = g.edge(e).other(x);
        out.push(x);
    }
    out
}

/// Minimum cycle basis of `g` (any connectivity) by Horton's method.
/// Refuses graphs with more than `bound` vertices.
pub fn horton_mcb_bounded(g: &WeightedGraph, bound: usize) -> Result<Vec<Cycle>, ReferenceError> {
    check_size(g, bound)?;
    let n = g.n();
    let mut candidates: Vec<Key> = Vec::new();
    let mut mark = vec![usize::MAX; n];
    for root in 0..n {
        let t = perturbed_dijkstra(g, root);
        for (e, r) in g.edges().iter().enumerate() {
            let (x, y) = (r.u, r.v);
            let (Some(kx), Some(ky)) = (&t.key[x], &t.key[y]) else {
                continue;
            };
            if t.parent_edge[x] == Some(e) || t.parent_edge[y] == Some(e) {
                continue;
            }
            let px = path_vertices(g, &t, x);
            for &v in &px {
                mark[v] = e * n + root;
            }
            let py = path_vertices(g, &t, y);
            if py.iter().filter(|&&v| mark[v] == e * n + root).count() != 1 {
                continue;
            }
            candidates.push((kx.0 + ky.0 + r.w, kx.1.union(&ky.1).with(e)));
        }
        mark.iter_mut().for_each(|m| *m = usize::MAX);
    }
    candidates.sort();
    candidates.dedup();

    let target = cycle_space_dimension_any(g);
    let mut basis = Gf2Basis::new(g.m());
    let mut out = Vec::with_capacity(target);
    for (_, bits) in candidates {
        if out.len() == target {
            break;
        }
        let ids = bits.ids();
        if basis.insert_edges(&ids) {
            out.push(Cycle::from_edges(g, &ids).expect("candidate is a simple cycle"));
        }
    }
    debug_assert_eq!(out.len(), target);
    Ok(out)
}

pub fn horton_mcb(g: &WeightedGraph) -> Result<Vec<Cycle>, ReferenceError> {
    horton_mcb_bounded(g, super::DEFAULT_BOUND)
}

/// Total weight of a minimum cycle basis.
pub fn horton_weight(g: &WeightedGraph, bound: usize) -> Result<Weight, ReferenceError> {
    Ok(horton_mcb_bounded(g, bound)?
        .iter()
        .map(|c| c.weight(g))
        .sum())
}
