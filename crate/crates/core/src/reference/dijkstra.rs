//! Textbook single-source shortest paths.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{EdgeKind, VertexId, WeightedGraph};
use crate::weight::Weight;

/// Distances from `source`; unreachable vertices get `Weight::INFINITE`.
pub fn dijkstra(g: &WeightedGraph, source: VertexId) -> Vec<Weight> {
    let mut dist = vec![Weight::INFINITE; g.n()];
    let mut heap = BinaryHeap::new();
    dist[source] = Weight::ZERO;
    heap.push(Reverse((Weight::ZERO, source)));
    while let Some(Reverse((d, x))) = heap.pop() {
        if d > dist[x] {
            continue;
        }
        for e in g.incident(x) {
            let r = g.edge(e);
            let y = r.other(x);
            let nd = d + r.w;
            if nd < dist[y] {
                dist[y] = nd;
                heap.push(Reverse((nd, y)));
            }
        }
    }
    dist
}

/// Copy of `g` in which every edge weight is replaced by the distance
/// between its endpoints. Distances are unchanged and every edge is tight.
pub fn make_tight(g: &WeightedGraph) -> WeightedGraph {
    let mut out = WeightedGraph::new(g.n(), g.scale());
    let dist: Vec<Vec<Weight>> = (0..g.n()).map(|s| dijkstra(g, s)).collect();
    for e in g.edges() {
        out.add_edge(e.u, e.v, dist[e.u][e.v], EdgeKind::Original)
            .expect("same edge set");
    }
    out
}

/// True iff every edge of `g` is a shortest path between its endpoints.
pub fn all_edges_tight(g: &WeightedGraph) -> bool {
    (0..g.n()).all(|s| {
        let d = dijkstra(g, s);
        g.adjacency(s)
            .iter()
            .all(|a| g.edge(a.edge()).w == d[a.vertex()])
    })
}
