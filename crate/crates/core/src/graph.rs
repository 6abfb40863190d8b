//! Simple undirected graphs with exact non-negative weights.

use std::collections::hash_map::Entry;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weight::Weight;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Original,
    /// Placeholder for a shortest path removed by a separator split.
    Green,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: VertexId,
    pub v: VertexId,
    pub w: Weight,
    pub kind: EdgeKind,
}

impl EdgeRecord {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(VertexId, VertexId),
}

/// One entry of a vertex's adjacency list: the neighbour and the joining edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Adjacent {
    vertex: u32,
    edge: u32,
}

impl Adjacent {
    #[inline]
    pub fn vertex(self) -> VertexId {
        self.vertex as VertexId
    }

    #[inline]
    pub fn edge(self) -> EdgeId {
        self.edge as EdgeId
    }
}

#[inline]
pub(crate) fn pair_key(u: VertexId, v: VertexId) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    ((a as u64) << 32) | b as u64
}

/// Vertex/edge store. Vertices are dense ids `0..n`; edge ids follow
/// insertion order. `scale` is the number of fractional decimal digits the
/// weight units represent.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    n: usize,
    scale: u32,
    edges: Vec<EdgeRecord>,
    adjacency: Vec<Vec<Adjacent>>,
    index: FxHashMap<u64, EdgeId>,
}

impl WeightedGraph {
    pub fn new(n: usize, scale: u32) -> Self {
        assert!(n < u32::MAX as usize, "vertex ids must fit in 32 bits");
        WeightedGraph {
            n,
            scale,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            index: FxHashMap::default(),
        }
    }

    /// Empty graph whose adjacency lists and edge index are sized for the
    /// given vertex degrees.
    pub fn with_degrees(degree: &[usize], scale: u32) -> Self {
        assert!(
            degree.len() < u32::MAX as usize,
            "vertex ids must fit in 32 bits"
        );
        let m = degree.iter().sum::<usize>() / 2;
        let mut index = FxHashMap::default();
        index.reserve(m);
        WeightedGraph {
            n: degree.len(),
            scale,
            edges: Vec::with_capacity(m),
            adjacency: degree.iter().map(|&d| Vec::with_capacity(d)).collect(),
            index,
        }
    }

    /// Builds an all-original graph from integer-weighted edges.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId, u64)]) -> Result<Self, GraphError> {
        let mut g = WeightedGraph::new(n, 0);
        for &(u, v, w) in edges {
            g.add_edge(u, v, Weight::from_units(u128::from(w)), EdgeKind::Original)?;
        }
        Ok(g)
    }

    pub fn add_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        w: Weight,
        kind: EdgeKind,
    ) -> Result<EdgeId, GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let id = self.edges.len();
        assert!(id < u32::MAX as usize, "edge ids must fit in 32 bits");
        match self.index.entry(pair_key(u, v)) {
            Entry::Occupied(_) => return Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Entry::Vacant(slot) => {
                slot.insert(id);
            }
        }
        self.edges.push(EdgeRecord { u, v, w, kind });
        self.adjacency[u].push(Adjacent {
            vertex: v as u32,
            edge: id as u32,
        });
        self.adjacency[v].push(Adjacent {
            vertex: u as u32,
            edge: id as u32,
        });
        Ok(id)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeRecord {
        &self.edges[e]
    }

    /// Neighbours of `v` with the joining edges, in edge insertion order.
    pub fn adjacency(&self, v: VertexId) -> &[Adjacent] {
        &self.adjacency[v]
    }

    pub fn incident(&self, v: VertexId) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        self.adjacency[v].iter().map(|a| a.edge())
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency[v].iter().map(|a| a.vertex())
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if u == v {
            return None;
        }
        self.index.get(&pair_key(u, v)).copied()
    }

    pub fn total_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// Connected component label per vertex, labels in order of smallest vertex.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for y in self.neighbors(x) {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().1 <= 1
    }

    /// Subgraph spanned by `edge_ids` (vertices = their endpoints), with
    /// vertices relabelled in increasing original-id order.
    pub fn edge_subgraph(&self, edge_ids: &[EdgeId]) -> Subgraph {
        let mut vertices: Vec<VertexId> = edge_ids
            .iter()
            .flat_map(|&e| [self.edges[e].u, self.edges[e].v])
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        self.subgraph_on(vertices, edge_ids)
    }

    /// Subgraph on the sorted vertex list `vertices` carrying `edge_ids`,
    /// whose endpoints must all lie in `vertices`.
    pub fn subgraph_on(&self, vertices: Vec<VertexId>, edge_ids: &[EdgeId]) -> Subgraph {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut degree = vec![0usize; vertices.len()];
        let mut ends = Vec::with_capacity(edge_ids.len());
        // a dense map pays off once the subgraph is a sizeable share of the host
        if vertices.len() * 8 >= self.n {
            let mut local = vec![usize::MAX; self.n];
            for (i, &v) in vertices.iter().enumerate() {
                local[v] = i;
            }
            ends.extend(
                edge_ids
                    .iter()
                    .map(|&e| (local[self.edges[e].u], local[self.edges[e].v])),
            );
        } else {
            let local: FxHashMap<VertexId, VertexId> =
                vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            ends.extend(
                edge_ids
                    .iter()
                    .map(|&e| (local[&self.edges[e].u], local[&self.edges[e].v])),
            );
        }
        for &(u, v) in &ends {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut graph = WeightedGraph::with_degrees(&degree, self.scale);
        for (&e, (u, v)) in edge_ids.iter().zip(ends) {
            let r = &self.edges[e];
            graph
                .add_edge(u, v, r.w, r.kind)
                .expect("subgraph of a simple graph is simple");
        }
        Subgraph {
            graph,
            vertex_map: vertices,
            edge_map: edge_ids.to_vec(),
        }
    }
}

/// A relabelled subgraph together with the maps back to its host graph.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: WeightedGraph,
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
}

/// Dimension of the cycle space of a connected graph: `m - n + 1`.
pub fn cycle_space_dimension(g: &WeightedGraph) -> usize {
    debug_assert!(g.is_connected());
    (g.m() + 1).saturating_sub(g.n())
}

/// `m - n + c` for a graph with `c` connected components.
pub fn cycle_space_dimension_any(g: &WeightedGraph) -> usize {
    let (_, c) = g.component_labels();
    g.m() + c - g.n()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_graph_invariants() {
        let mut g = WeightedGraph::new(3, 0);
        g.add_edge(0, 1, Weight::from_units(1), EdgeKind::Original)
            .unwrap();
        assert_eq!(
            g.add_edge(1, 0, Weight::from_units(2), EdgeKind::Green),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            g.add_edge(2, 2, Weight::ZERO, EdgeKind::Original),
            Err(GraphError::SelfLoop(2))
        );
        assert!(matches!(
            g.add_edge(0, 3, Weight::ZERO, EdgeKind::Original),
            Err(GraphError::VertexOutOfRange { vertex: 3, .. })
        ));
        assert_eq!(g.edge_between(1, 0), Some(0));
        assert_eq!(g.edge_between(1, 2), None);
        for v in 0..g.n() {
            for e in g.incident(v) {
                let r = g.edge(e);
                assert!(r.u == v || r.v == v);
            }
        }
    }

    #[test]
    fn dimensions() {
        let tri = WeightedGraph::from_edges(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(cycle_space_dimension(&tri), 1);
        let k23 = WeightedGraph::from_edges(
            5,
            &[
                (0, 2, 1),
                (0, 3, 1),
                (0, 4, 1),
                (1, 2, 1),
                (1, 3, 1),
                (1, 4, 1),
            ],
        )
        .unwrap();
        assert_eq!(cycle_space_dimension(&k23), 2);
        let path = WeightedGraph::from_edges(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        assert_eq!(cycle_space_dimension(&path), 0);
        let two =
            WeightedGraph::from_edges(6, &[(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1)]).unwrap();
        assert_eq!(cycle_space_dimension_any(&two), 1);
    }

    #[test]
    fn subgraph_maps() {
        let g =
            WeightedGraph::from_edges(5, &[(0, 4, 1), (4, 2, 2), (2, 0, 3), (1, 3, 1)]).unwrap();
        let s = g.edge_subgraph(&[1, 2, 0]);
        assert_eq!(s.vertex_map, vec![0, 2, 4]);
        assert_eq!(s.graph.m(), 3);
        let r = s.graph.edge(0);
        assert_eq!((s.vertex_map[r.u], s.vertex_map[r.v]), (4, 2));
    }
}
