//! Long-edge detection and the `K_{2,k}` separator decomposition.
//!
//! A pair `{u, v}` contained in three or more bags of a suitable
//! decomposition is the branch pair of a `K_{2,3}` subdivision. All such
//! bags hang off one parent `Y1`; cutting the links to its children
//! `Y2..Yk` splits the graph along `{u, v}`. When `uv` is not an edge, one
//! part keeps a shortest `u`-`v` path and every other part receives a green
//! edge of the same weight in its place. What remains is a forest whose
//! components induce outerplanar part graphs.

use thiserror::Error;

use crate::graph::{EdgeId, EdgeKind, VertexId, WeightedGraph};
use crate::oracle::{DistanceOracle, OracleError};
use crate::treedec::BagId;
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("no intermediate vertex for the non-adjacent pair {{{0}, {1}}}")]
    MissingIntermediate(VertexId, VertexId),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Edges strictly heavier than the distance between their endpoints.
pub fn find_long_edges(g: &WeightedGraph, o: &DistanceOracle) -> Result<Vec<EdgeId>, OracleError> {
    let mut long = Vec::new();
    for (e, r) in g.edges().iter().enumerate() {
        let bag = o.edge_bag(e).ok_or(OracleError::MissingEdge(r.u, r.v))?;
        if r.w > o.distance(r.u, r.v, bag)? {
            long.push(e);
        }
    }
    Ok(long)
}

/// One cut along a separator pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorEvent {
    pub u: VertexId,
    pub v: VertexId,
    pub parent_bag: BagId,
    pub child_bags: Vec<BagId>,
    pub had_edge: bool,
    /// `dist(u, v)` when `uv` is not an edge.
    pub path_weight: Option<Weight>,
    /// 1-based index among `parent_bag, child_bags...` of the bag whose
    /// part keeps the shortest path; absent when `uv` is an edge.
    pub j: Option<usize>,
    pub green_edges: Vec<usize>,
}

impl SeparatorEvent {
    /// Number of bags containing the pair.
    pub fn k(&self) -> usize {
        self.child_bags.len() + 1
    }

    /// Bag with 1-based index `i` in `parent_bag, child_bags...`.
    pub fn bag_at(&self, i: usize) -> BagId {
        if i == 1 {
            self.parent_bag
        } else {
            self.child_bags[i - 2]
        }
    }
}

/// A placeholder for a shortest `u`-`v` path, attached to `bag`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: Weight,
    pub event: usize,
    pub bag: BagId,
    /// Bag holding `{u, v}` in which the path is extracted.
    pub source_bag: BagId,
}

/// Result of the separator loop on one 2-connected graph.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub events: Vec<SeparatorEvent>,
    pub greens: Vec<GreenEdge>,
    /// Parent of each bag after the cuts.
    pub forest_parent: Vec<Option<BagId>>,
    /// Root bag of each part; the original root comes first, then the
    /// detached children in cut order.
    pub part_roots: Vec<BagId>,
    pub part_of_bag: Vec<usize>,
    pub ops: usize,
}

impl Decomposition {
    pub fn part_count(&self) -> usize {
        self.part_roots.len()
    }
}

/// Runs the separator loop over the oracle's decomposition of `g`, visiting
/// bags in preorder and each bag's child labels in ascending order.
pub fn run_decomposition(
    g: &WeightedGraph,
    o: &DistanceOracle,
) -> Result<Decomposition, DecomposeError> {
    let t = o.tree();
    let mut forest_parent: Vec<Option<BagId>> = (0..t.len()).map(|b| t.parent(b)).collect();
    let mut events = Vec::new();
    let mut greens = Vec::new();
    let mut part_roots = vec![t.root()];
    let mut ops = 0;
    let order = t.preorder();

    for &y1 in &order {
        let bag = t.bag(y1);
        // children grouped by the vertex of y1 their label leaves out
        let mut groups: [Vec<BagId>; 3] = Default::default();
        for &c in t.children(y1) {
            ops += 1;
            let (a, b) = t.label(c).expect("child has a label");
            let out = bag
                .iter()
                .position(|&x| x != a && x != b)
                .expect("label is a pair of the parent");
            groups[out].push(c);
        }
        // slots 2, 1, 0 give the labels in ascending order
        for out in [2, 1, 0] {
            let kids = std::mem::take(&mut groups[out]);
            if kids.len() < 2 {
                continue;
            }
            let (u, v) = match out {
                0 => (bag[1], bag[2]),
                1 => (bag[0], bag[2]),
                _ => (bag[0], bag[1]),
            };
            for &c in &kids {
                forest_parent[c] = None;
                part_roots.push(c);
            }
            ops += kids.len();
            let id = events.len();
            let mut event = SeparatorEvent {
                u,
                v,
                parent_bag: y1,
                child_bags: kids,
                had_edge: g.edge_between(u, v).is_some(),
                path_weight: None,
                j: None,
                green_edges: Vec::new(),
            };
            if !event.had_edge {
                let w = o.distance(u, v, y1)?;
                let (y, _) = o
                    .intermediate_vertex(u, v, y1)?
                    .ok_or(DecomposeError::MissingIntermediate(u, v))?;
                let j = if t.contains(y1, y) {
                    1
                } else {
                    let next = o.route_toward(y1, y)?;
                    let pos = event.child_bags.iter().position(|&c| c == next);
                    pos.ok_or(DecomposeError::MissingIntermediate(u, v))? + 2
                };
                for h in (1..=event.k()).filter(|&h| h != j) {
                    event.green_edges.push(greens.len());
                    greens.push(GreenEdge {
                        u,
                        v,
                        w,
                        event: id,
                        bag: event.bag_at(h),
                        source_bag: y1,
                    });
                }
                ops += event.k();
                event.path_weight = Some(w);
                event.j = Some(j);
            }
            events.push(event);
        }
    }

    let mut part_of_bag = vec![usize::MAX; t.len()];
    for (i, &r) in part_roots.iter().enumerate() {
        part_of_bag[r] = i;
    }
    for &b in &order {
        if let Some(p) = forest_parent[b] {
            part_of_bag[b] = part_of_bag[p];
        }
    }
    ops += order.len();
    Ok(Decomposition {
        events,
        greens,
        forest_parent,
        part_roots,
        part_of_bag,
        ops,
    })
}

/// Where an edge of a part graph comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrigin {
    /// Edge id in the decomposed graph.
    Original(EdgeId),
    /// Index into [`Decomposition::greens`].
    Green(usize),
}

/// One outerplanar piece, relabelled to dense ids.
#[derive(Clone, Debug)]
pub struct PartGraph {
    pub graph: WeightedGraph,
    /// Part vertex -> vertex of the decomposed graph (ascending).
    pub vertex_map: Vec<VertexId>,
    /// Part edge -> origin. Original edges come first in id order.
    pub edge_origin: Vec<EdgeOrigin>,
    /// Bags of the part in preorder of the original tree.
    pub bags: Vec<BagId>,
}

/// Builds the part graph of every forest component: vertices of its bags,
/// the edges of `g` lying inside one of its bags, and its green edges.
pub fn extract_part_graphs(
    g: &WeightedGraph,
    o: &DistanceOracle,
    d: &Decomposition,
) -> Vec<PartGraph> {
    let t = o.tree();
    let parts = d.part_count();
    let mut bags_of: Vec<Vec<BagId>> = vec![Vec::new(); parts];
    for b in t.preorder() {
        bags_of[d.part_of_bag[b]].push(b);
    }
    let mut greens_of: Vec<Vec<usize>> = vec![Vec::new(); parts];
    for (i, ge) in d.greens.iter().enumerate() {
        greens_of[d.part_of_bag[ge.bag]].push(i);
    }

    let mut local = vec![usize::MAX; g.n()];
    let mut edge_seen = vec![usize::MAX; g.m()];
    let mut out = Vec::with_capacity(parts);
    for (p, bags) in bags_of.into_iter().enumerate() {
        let mut vertices: Vec<VertexId> = bags.iter().flat_map(|&b| *t.bag(b)).collect();
        vertices.sort_unstable();
        vertices.dedup();
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for &b in &bags {
            let [x, y, z] = *t.bag(b);
            for (a, c) in [(x, y), (x, z), (y, z)] {
                if let Some(e) = g.edge_between(a, c) {
                    if edge_seen[e] != p {
                        edge_seen[e] = p;
                        edges.push(e);
                    }
                }
            }
        }
        edges.sort_unstable();
        let greens = &greens_of[p];
        let mut degree = vec![0usize; vertices.len()];
        for &e in &edges {
            let r = g.edge(e);
            degree[local[r.u]] += 1;
            degree[local[r.v]] += 1;
        }
        for &gi in greens {
            let ge = &d.greens[gi];
            degree[local[ge.u]] += 1;
            degree[local[ge.v]] += 1;
        }
        let mut graph = WeightedGraph::with_degrees(&degree, g.scale());
        let mut edge_origin = Vec::with_capacity(edges.len() + greens.len());
        for e in edges {
            let r = g.edge(e);
            graph
                .add_edge(local[r.u], local[r.v], r.w, EdgeKind::Original)
                .expect("part of a simple graph");
            edge_origin.push(EdgeOrigin::Original(e));
        }
        for &gi in greens {
            let ge = &d.greens[gi];
            graph
                .add_edge(local[ge.u], local[ge.v], ge.w, EdgeKind::Green)
                .expect("green edges replace missing edges only");
            edge_origin.push(EdgeOrigin::Green(gi));
        }
        out.push(PartGraph {
            graph,
            vertex_map: vertices,
            edge_origin,
            bags,
        });
    }
    out
}

/// True iff no pair of vertices lies in three or more bags of one part,
/// i.e. no part contains a `K_{2,3}` subdivision.
pub fn parts_are_outerplanar(o: &DistanceOracle, d: &Decomposition) -> bool {
    let t = o.tree();
    // within a part the bags holding a pair form a star around one bag, so
    // it suffices to count same-label children per bag
    (0..t.len()).all(|b| {
        let mut count = [0usize; 3];
        let bag = t.bag(b);
        for &c in t.children(b) {
            if d.forest_parent[c] != Some(b) {
                continue;
            }
            let (x, y) = t.label(c).expect("child has a label");
            let out = bag
                .iter()
                .position(|&z| z != x && z != y)
                .expect("label inside parent");
            count[out] += 1;
        }
        count.iter().all(|&k| k < 2)
    })
}
