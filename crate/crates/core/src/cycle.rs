//! Simple cycles as vertex rings plus edge-id sets.

use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::weight::Weight;

/// A simple cycle of some graph. `vertices` is the ring in traversal order,
/// `edges[i]` joins `vertices[i]` and `vertices[(i + 1) % k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn weight(&self, g: &WeightedGraph) -> Weight {
        self.edges.iter().map(|&e| g.edge(e).w).sum()
    }

    /// Edge ids, ascending.
    pub fn edge_set(&self) -> Vec<EdgeId> {
        let mut s = self.edges.clone();
        s.sort_unstable();
        s
    }

    /// Builds a cycle from a closed vertex ring; `None` if a vertex repeats,
    /// the ring has fewer than three vertices, or a consecutive pair is not
    /// an edge of `g`.
    pub fn from_vertices(g: &WeightedGraph, ring: &[VertexId]) -> Option<Cycle> {
        let k = ring.len();
        if k < 3 || ring.iter().any(|&v| v >= g.n()) {
            return None;
        }
        let mut sorted = ring.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let edges = (0..k)
            .map(|i| g.edge_between(ring[i], ring[(i + 1) % k]))
            .collect::<Option<Vec<_>>>()?;
        Some(
            Cycle {
                vertices: ring.to_vec(),
                edges,
            }
            .canonical(),
        )
    }

    /// Orders an edge set into a ring; `None` unless the edges form exactly
    /// one simple cycle of `g`.
    pub fn from_edges(g: &WeightedGraph, edge_ids: &[EdgeId]) -> Option<Cycle> {
        let k = edge_ids.len();
        if k < 3 || edge_ids.iter().any(|&e| e >= g.m()) {
            return None;
        }
        let mut ids = edge_ids.to_vec();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        // each vertex must see exactly two of the edges
        let mut inc: rustc_hash::FxHashMap<VertexId, [Option<EdgeId>; 2]> = Default::default();
        for &e in &ids {
            let r = g.edge(e);
            for x in [r.u, r.v] {
                let slot = inc.entry(x).or_default();
                if slot[0].is_none() {
                    slot[0] = Some(e);
                } else if slot[1].is_none() {
                    slot[1] = Some(e);
                } else {
                    return None;
                }
            }
        }
        if inc.len() != k || inc.values().any(|s| s[1].is_none()) {
            return None;
        }
        let start_edge = ids[0];
        let mut vertices = Vec::with_capacity(k);
        let mut edges = Vec::with_capacity(k);
        let start = g.edge(start_edge).u;
        let (mut x, mut e) = (start, start_edge);
        loop {
            vertices.push(x);
            edges.push(e);
            x = g.edge(e).other(x);
            if x == start {
                break;
            }
            let s = inc[&x];
            e = if s[0] == Some(e) { s[1] } else { s[0] }.expect("degree two");
        }
        if edges.len() != k {
            return None; // several disjoint cycles
        }
        Some(Cycle { vertices, edges }.canonical())
    }

    /// Rotation starting at the smallest vertex, continuing towards its
    /// smaller ring neighbour.
    pub fn canonical(mut self) -> Cycle {
        let k = self.vertices.len();
        if k == 0 {
            return self;
        }
        let i = (0..k).min_by_key(|&i| self.vertices[i]).expect("non-empty");
        self.vertices.rotate_left(i);
        self.edges.rotate_left(i);
        if self.vertices[k - 1] < self.vertices[1] {
            self.vertices[1..].reverse();
            self.edges.reverse();
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consistent(g: &WeightedGraph, c: &Cycle) -> bool {
        let k = c.len();
        (0..k).all(|i| g.edge_between(c.vertices[i], c.vertices[(i + 1) % k]) == Some(c.edges[i]))
    }

    #[test]
    fn square_roundtrip() {
        let g =
            WeightedGraph::from_edges(5, &[(3, 1, 1), (1, 2, 1), (2, 4, 1), (4, 3, 1), (0, 1, 1)])
                .unwrap();
        let c = Cycle::from_edges(&g, &[2, 0, 3, 1]).unwrap();
        assert_eq!(c.vertices, vec![1, 2, 4, 3]);
        assert!(consistent(&g, &c));
        let d = Cycle::from_vertices(&g, &[4, 2, 1, 3]).unwrap();
        assert_eq!(c, d);
        assert_eq!(c.weight(&g), Weight::from_units(4));
    }

    #[test]
    fn rejects_non_cycles() {
        let g = WeightedGraph::from_edges(
            6,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (2, 0, 1),
                (3, 4, 1),
                (4, 5, 1),
                (5, 3, 1),
            ],
        )
        .unwrap();
        assert!(Cycle::from_edges(&g, &[0, 1, 2, 3, 4, 5]).is_none());
        assert!(Cycle::from_edges(&g, &[0, 1]).is_none());
        assert!(Cycle::from_edges(&g, &[0, 1, 1]).is_none());
        assert!(Cycle::from_edges(&g, &[0, 1, 9]).is_none());
        assert!(Cycle::from_vertices(&g, &[0, 1, 3]).is_none());
        assert!(Cycle::from_vertices(&g, &[0, 1, 0]).is_none());
    }
}
