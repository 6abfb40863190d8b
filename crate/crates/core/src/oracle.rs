//! Distance oracle over a suitable tree decomposition.
//!
//! For every pair of vertices sharing a bag the oracle stores the exact
//! shortest-path distance and, unless a single edge realizes it, an
//! intermediate vertex `w` together with a bag holding `{u, v, w}`. Shortest
//! paths are then extracted by bisection in time linear in their length.
//!
//! Paths are compared by `(weight, edge count)`. Minimal paths under that key
//! are simple even with zero-weight edges, and every bisection step strictly
//! shortens both halves, so extraction always terminates.

use std::sync::OnceLock;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::graph::{pair_key, EdgeId, VertexId, WeightedGraph};
use crate::treedec::{
    check_decomposition, other_slots, BagId, SuitableTreeDecomposition, ValidationError,
};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("cannot build oracle: {0}")]
    Build(#[from] ValidationError),
    #[error("vertex {vertex} lies in bag {bag}; routing is undefined")]
    VertexInBag { vertex: VertexId, bag: BagId },
    #[error("vertices {u} and {v} are not a pair of bag {bag}")]
    PairNotInBag {
        u: VertexId,
        v: VertexId,
        bag: BagId,
    },
    #[error("no edge realizes the tight pair {{{0}, {1}}}")]
    MissingEdge(VertexId, VertexId),
}

/// Length of a path: total weight, then number of edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathKey {
    pub weight: Weight,
    pub hops: u32,
}

impl PathKey {
    pub const INFINITE: PathKey = PathKey {
        weight: Weight::INFINITE,
        hops: u32::MAX,
    };

    pub fn edge(w: Weight) -> PathKey {
        PathKey { weight: w, hops: 1 }
    }

    pub fn is_infinite(self) -> bool {
        self.weight.is_infinite()
    }

    fn join(self, other: PathKey) -> PathKey {
        if self.is_infinite() || other.is_infinite() {
            return PathKey::INFINITE;
        }
        PathKey {
            weight: self.weight + other.weight,
            hops: self.hops + other.hops,
        }
    }
}

/// Preorder numbering of the decomposition tree with subtree intervals,
/// answering "which neighbour of bag `A` leads towards vertex `v`".
#[derive(Clone, Debug)]
pub struct RoutingIndex {
    dfs_number: Vec<u32>,
    /// Last preorder number inside each bag's subtree.
    subtree_end: Vec<u32>,
    /// One bag containing each vertex.
    vertex_home: Vec<BagId>,
}

impl RoutingIndex {
    pub fn build(t: &SuitableTreeDecomposition, n: usize) -> Self {
        let order = t.preorder();
        let mut dfs_number = vec![0u32; t.len()];
        for (i, &b) in order.iter().enumerate() {
            dfs_number[b] = i as u32;
        }
        let mut subtree_end = dfs_number.clone();
        for &b in order.iter().rev() {
            if let Some(p) = t.parent(b) {
                subtree_end[p] = subtree_end[p].max(subtree_end[b]);
            }
        }
        let mut vertex_home = vec![usize::MAX; n];
        for &b in &order {
            for &v in t.bag(b) {
                if vertex_home[v] == usize::MAX {
                    vertex_home[v] = b;
                }
            }
        }
        RoutingIndex {
            dfs_number,
            subtree_end,
            vertex_home,
        }
    }

    pub fn dfs_number(&self, b: BagId) -> u32 {
        self.dfs_number[b]
    }

    pub fn subtree_interval(&self, b: BagId) -> (u32, u32) {
        (self.dfs_number[b], self.subtree_end[b])
    }

    pub fn vertex_home(&self, v: VertexId) -> BagId {
        self.vertex_home[v]
    }

    /// The neighbour of `a` on the tree path towards the bags holding `v`.
    /// Binary search over the children's intervals; everything outside
    /// `a`'s own interval lies beyond its parent.
    pub fn route(
        &self,
        t: &SuitableTreeDecomposition,
        a: BagId,
        v: VertexId,
    ) -> Result<BagId, OracleError> {
        if t.contains(a, v) {
            return Err(OracleError::VertexInBag { vertex: v, bag: a });
        }
        let target = self.dfs_number[self.vertex_home[v]];
        let (lo, hi) = self.subtree_interval(a);
        if target < lo || target > hi {
            return Ok(t.parent(a).expect("the root interval spans every bag"));
        }
        let kids = t.children(a);
        let idx = kids.partition_point(|&c| self.dfs_number[c] <= target);
        debug_assert!(idx > 0);
        Ok(kids[idx - 1])
    }
}

/// Per-bag distances and intermediate vertices. Slot `i` of a bag stands for
/// the pair formed by the two vertices other than the bag's `i`-th vertex.
#[derive(Clone, Debug)]
pub struct PairTable {
    keys: Vec<[PathKey; 3]>,
    via: Vec<[Option<(VertexId, BagId)>; 3]>,
}

#[derive(Clone, Debug)]
pub struct DistanceOracle {
    tree: SuitableTreeDecomposition,
    table: PairTable,
    routing: RoutingIndex,
    /// A bag holding both ends of each graph edge.
    edge_home: Vec<BagId>,
    /// A bag holding each vertex pair, built on first use.
    pair_home: OnceLock<FxHashMap<u64, BagId>>,
    ops: usize,
}

/// Slot of the vertex of `a` missing from the adjacent bag `b`.
fn private_slot(a: &[VertexId; 3], b: &[VertexId; 3]) -> usize {
    a.iter()
        .position(|x| !b.contains(x))
        .expect("adjacent bags differ by one vertex")
}

/// Closes a bag's three pair distances under concatenation through its
/// third vertex (Floyd-Warshall on three nodes).
fn close_bag(
    bag: &[VertexId; 3],
    keys: &mut [PathKey; 3],
    mids: &mut [Option<VertexId>; 3],
    ops: &mut usize,
) {
    for k in 0..3 {
        let (i, j) = other_slots(k);
        let cand = keys[i].join(keys[j]);
        *ops += 1;
        if cand < keys[k] {
            keys[k] = cand;
            mids[k] = Some(bag[k]);
        }
    }
}

/// Builds the oracle in time linear in the number of bags. The decomposition
/// is validated first and owned by the oracle afterwards.
pub fn build_oracle(
    g: &WeightedGraph,
    t: SuitableTreeDecomposition,
) -> Result<DistanceOracle, OracleError> {
    check_decomposition(g, &t)?;
    Ok(build_oracle_trusted(g, t))
}

/// [`build_oracle`] for a decomposition produced by this crate's builder;
/// validation only runs in debug builds.
pub(crate) fn build_oracle_trusted(
    g: &WeightedGraph,
    t: SuitableTreeDecomposition,
) -> DistanceOracle {
    debug_assert_eq!(check_decomposition(g, &t), Ok(()));
    let count = t.len();
    let mut ops = 0usize;

    let mut keys = vec![[PathKey::INFINITE; 3]; count];
    let mut mids: Vec<[Option<VertexId>; 3]> = vec![[None; 3]; count];
    let mut edge_home = vec![BagId::MAX; g.m()];
    for (b, (key, vs)) in keys.iter_mut().zip(t.bags()).enumerate() {
        for (s, k) in key.iter_mut().enumerate() {
            let e = t.slot_edge(b, s).unwrap_or_else(|| {
                let (i, j) = other_slots(s);
                g.edge_between(vs[i], vs[j])
            });
            if let Some(e) = e {
                *k = PathKey::edge(g.edge(e).w);
                edge_home[e] = b;
            }
        }
    }

    let order = t.preorder();
    // upward: a bag learns the best paths through its children's subtrees
    for &b in order.iter().rev() {
        for &c in t.children(b) {
            let sb = private_slot(t.bag(b), t.bag(c));
            let sc = private_slot(t.bag(c), t.bag(b));
            ops += 1;
            if keys[c][sc] < keys[b][sb] {
                keys[b][sb] = keys[c][sc];
                mids[b][sb] = mids[c][sc];
            }
        }
        close_bag(t.bag(b), &mut keys[b], &mut mids[b], &mut ops);
    }
    // downward: a bag learns the global distance of its parent label
    for &b in &order {
        let Some(p) = t.parent(b) else { continue };
        let sb = private_slot(t.bag(b), t.bag(p));
        let sp = private_slot(t.bag(p), t.bag(b));
        ops += 1;
        if keys[p][sp] < keys[b][sb] {
            keys[b][sb] = keys[p][sp];
            mids[b][sb] = mids[p][sp];
        }
        close_bag(t.bag(b), &mut keys[b], &mut mids[b], &mut ops);
    }

    let routing = RoutingIndex::build(&t, g.n());
    let mut via = vec![[None; 3]; count];
    for b in 0..count {
        for s in 0..3 {
            if let Some(z) = mids[b][s] {
                let (i, j) = other_slots(s);
                let (u, v) = (t.bag(b)[i], t.bag(b)[j]);
                via[b][s] = Some(localize(&t, &routing, b, u, v, z, &mut ops));
            }
        }
    }

    DistanceOracle {
        tree: t,
        table: PairTable { keys, via },
        routing,
        edge_home,
        pair_home: OnceLock::new(),
        ops,
    }
}

/// Turns an intermediate vertex `z` of a shortest `u`-`v` path into one that
/// shares a bag with `u` and `v`. Starting at a bag `x` holding `u, v`, route
/// towards `z`; if the next bag still holds both `u` and `v` move there (at
/// most twice in a suitable decomposition), otherwise the third vertex of `x`
/// separates `z` from one endpoint and thus lies on the path.
fn localize(
    t: &SuitableTreeDecomposition,
    routing: &RoutingIndex,
    start: BagId,
    u: VertexId,
    v: VertexId,
    z: VertexId,
    ops: &mut usize,
) -> (VertexId, BagId) {
    let mut x = start;
    loop {
        *ops += 1;
        if t.contains(x, z) {
            return (z, x);
        }
        let a = routing.route(t, x, z).expect("z is not in x");
        if t.contains(a, u) && t.contains(a, v) {
            x = a;
            continue;
        }
        let r = t
            .bag(x)
            .iter()
            .copied()
            .find(|&r| r != u && r != v)
            .expect("bag has three vertices");
        return (r, x);
    }
}

impl DistanceOracle {
    pub fn tree(&self) -> &SuitableTreeDecomposition {
        &self.tree
    }

    pub fn routing(&self) -> &RoutingIndex {
        &self.routing
    }

    /// Elementary steps spent during preprocessing.
    pub fn build_ops(&self) -> usize {
        self.ops
    }

    fn slot(&self, u: VertexId, v: VertexId, x: BagId) -> Result<usize, OracleError> {
        let err = OracleError::PairNotInBag { u, v, bag: x };
        if x >= self.tree.len() || u == v {
            return Err(err);
        }
        match (self.tree.slot(x, u), self.tree.slot(x, v)) {
            (Some(i), Some(j)) => Ok(3 - i - j),
            _ => Err(err),
        }
    }

    /// A bag containing both ends of edge `e` of the graph the oracle was
    /// built on.
    pub fn edge_bag(&self, e: EdgeId) -> Option<BagId> {
        self.edge_home.get(e).copied().filter(|&b| b != BagId::MAX)
    }

    /// Some bag containing both `u` and `v`, if any.
    pub fn bag_containing(&self, u: VertexId, v: VertexId) -> Option<BagId> {
        let homes = self.pair_home.get_or_init(|| {
            let mut m = FxHashMap::default();
            m.reserve(2 * self.tree.len() + 1);
            for (b, vs) in self.tree.bags().iter().enumerate() {
                for s in 0..3 {
                    let (i, j) = other_slots(s);
                    m.entry(pair_key(vs[i], vs[j])).or_insert(b);
                }
            }
            m
        });
        homes.get(&pair_key(u, v)).copied()
    }

    pub fn path_key(&self, u: VertexId, v: VertexId, x: BagId) -> Result<PathKey, OracleError> {
        Ok(self.table.keys[x][self.slot(u, v, x)?])
    }

    /// Exact shortest-path distance between two vertices of bag `x`.
    pub fn distance(&self, u: VertexId, v: VertexId, x: BagId) -> Result<Weight, OracleError> {
        self.path_key(u, v, x).map(|k| k.weight)
    }

    /// `None` iff the edge `{u, v}` is a shortest path; otherwise a vertex `w`
    /// on a shortest path and a bag holding `u`, `v` and `w`.
    pub fn intermediate_vertex(
        &self,
        u: VertexId,
        v: VertexId,
        x: BagId,
    ) -> Result<Option<(VertexId, BagId)>, OracleError> {
        Ok(self.table.via[x][self.slot(u, v, x)?])
    }

    /// The neighbour of bag `a` leading towards the bags holding `v`.
    pub fn route_toward(&self, a: BagId, v: VertexId) -> Result<BagId, OracleError> {
        self.routing.route(&self.tree, a, v)
    }

    /// A shortest `u`-`v` path as a vertex sequence, by repeated
    /// intermediate-vertex bisection. Deterministic.
    pub fn extract_shortest_path(
        &self,
        u: VertexId,
        v: VertexId,
        x: BagId,
    ) -> Result<Vec<VertexId>, OracleError> {
        let hops = self.path_key(u, v, x)?.hops as usize;
        let mut path = Vec::with_capacity(hops + 1);
        path.push(u);
        self.bisect(u, v, x, |_, b| path.push(b))?;
        Ok(path)
    }

    /// Like [`extract_shortest_path`](Self::extract_shortest_path) but returns
    /// the edge ids of `g`, the graph the oracle was built on.
    pub fn extract_path_edges(
        &self,
        g: &WeightedGraph,
        u: VertexId,
        v: VertexId,
        x: BagId,
    ) -> Result<Vec<EdgeId>, OracleError> {
        let mut edges = Vec::new();
        let mut missing = None;
        self.bisect(u, v, x, |a, b| match g.edge_between(a, b) {
            Some(e) => edges.push(e),
            None => missing = Some((a, b)),
        })?;
        match missing {
            Some((a, b)) => Err(OracleError::MissingEdge(a, b)),
            None => Ok(edges),
        }
    }

    /// Visits the edges of the extracted path in order from `u` to `v`.
    fn bisect(
        &self,
        u: VertexId,
        v: VertexId,
        x: BagId,
        mut visit: impl FnMut(VertexId, VertexId),
    ) -> Result<(), OracleError> {
        self.slot(u, v, x)?;
        let mut stack = vec![(u, v, x)];
        while let Some((a, b, bag)) = stack.pop() {
            match self.table.via[bag][self.slot(a, b, bag)?] {
                None => visit(a, b),
                Some((w, y)) => {
                    stack.push((w, b, y));
                    stack.push((a, w, y));
                }
            }
        }
        Ok(())
    }
}
