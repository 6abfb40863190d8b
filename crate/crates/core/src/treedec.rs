//! Smooth, rooted, suitable tree decompositions of 2-connected partial 2-trees.
//!
//! Every bag holds exactly three vertices, adjacent bags share exactly two
//! (the link label), and after [`make_suitable`] all links carrying the same
//! label hang off the same parent bag.

use std::fmt::Write as _;

use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::biconnected::is_biconnected;
use crate::elimination::elimination_order;
use crate::graph::{pair_key, EdgeId, VertexId, WeightedGraph};

pub type BagId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("graph is not a partial 2-tree")]
    NotPartial2Tree,
    #[error("graph is not 2-connected")]
    NotBiconnected,
    #[error("graph has {0} vertices; at least 3 are needed")]
    TooSmall(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuitableTreeDecomposition {
    /// Vertices of each bag, ascending.
    bags: Vec<[VertexId; 3]>,
    root: BagId,
    parent: Vec<Option<BagId>>,
    /// Children of bag `b` are `child_list[child_start[b]..child_start[b + 1]]`.
    child_start: Vec<usize>,
    child_list: Vec<BagId>,
    /// Graph edge joining the pair of each slot, or `NO_EDGE`; known when
    /// the decomposition comes from the elimination builder.
    slot_edges: Option<Vec<[u32; 3]>>,
}

const NO_EDGE: u32 = u32::MAX;

/// The two bag positions other than `slot`.
pub(crate) fn other_slots(slot: usize) -> (usize, usize) {
    match slot {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Child lists in flat form from `(parent, child)` pairs; each parent keeps
/// its children in pair order.
fn flatten_children(count: usize, pairs: &[(BagId, BagId)]) -> (Vec<usize>, Vec<BagId>) {
    let mut start = vec![0usize; count + 1];
    for &(p, _) in pairs {
        start[p + 1] += 1;
    }
    for b in 0..count {
        start[b + 1] += start[b];
    }
    let mut fill = start.clone();
    let mut list = vec![0; pairs.len()];
    for &(p, c) in pairs {
        list[fill[p]] = c;
        fill[p] += 1;
    }
    (start, list)
}

impl SuitableTreeDecomposition {
    /// Assembles a decomposition from raw parts; `children` is derived from
    /// `parent` in increasing bag order. Nothing is validated.
    pub fn from_parts(bags: Vec<[VertexId; 3]>, root: BagId, parent: Vec<Option<BagId>>) -> Self {
        let pairs: Vec<(BagId, BagId)> = parent
            .iter()
            .enumerate()
            .filter_map(|(b, p)| p.map(|p| (p, b)))
            .collect();
        let (child_start, child_list) = flatten_children(bags.len(), &pairs);
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        SuitableTreeDecomposition {
            bags,
            root,
            parent,
            child_start,
            child_list,
            slot_edges: None,
        }
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn root(&self) -> BagId {
        self.root
    }

    pub fn bag(&self, b: BagId) -> &[VertexId; 3] {
        &self.bags[b]
    }

    pub fn bags(&self) -> &[[VertexId; 3]] {
        &self.bags
    }

    pub fn parent(&self, b: BagId) -> Option<BagId> {
        self.parent[b]
    }

    pub fn children(&self, b: BagId) -> &[BagId] {
        &self.child_list[self.child_start[b]..self.child_start[b + 1]]
    }

    pub fn contains(&self, b: BagId, v: VertexId) -> bool {
        self.bags[b].contains(&v)
    }

    /// The graph edge joining the two vertices of bag `b` other than its
    /// `s`-th, if recorded by the builder: `Some(None)` means no such edge.
    pub fn slot_edge(&self, b: BagId, s: usize) -> Option<Option<EdgeId>> {
        let e = self.slot_edges.as_ref()?[b][s];
        Some((e != NO_EDGE).then_some(e as EdgeId))
    }

    /// Position (0..3) of `v` inside bag `b`.
    pub fn slot(&self, b: BagId, v: VertexId) -> Option<usize> {
        self.bags[b].iter().position(|&x| x == v)
    }

    /// Label of the link from `b` to its parent, ascending.
    pub fn label(&self, b: BagId) -> Option<(VertexId, VertexId)> {
        self.parent[b].map(|p| shared_pair(&self.bags[b], &self.bags[p]))
    }

    /// Bags in root-first depth-first order; children in list order.
    pub fn preorder(&self) -> Vec<BagId> {
        let mut order = Vec::with_capacity(self.bags.len());
        if self.bags.is_empty() {
            return order;
        }
        let mut stack = vec![self.root];
        while let Some(b) = stack.pop() {
            order.push(b);
            stack.extend(self.children(b).iter().rev());
        }
        order
    }

    /// Debug dump, one line per bag:
    /// `b <id> <v1> <v2> <v3> parent=<id|->, label=<a,b|->`.
    pub fn dump(&self) -> String {
        self.dump_with(|v| v)
    }

    /// Like [`dump`](Self::dump) with vertex ids passed through `map`.
    pub fn dump_with(&self, map: impl Fn(VertexId) -> VertexId) -> String {
        let mut s = String::new();
        for (b, vs) in self.bags.iter().enumerate() {
            let parent = self.parent[b].map_or("-".to_string(), |p| p.to_string());
            let label = self
                .label(b)
                .map_or("-".to_string(), |(x, y)| format!("{},{}", map(x), map(y)));
            writeln!(
                s,
                "b {} {} {} {} parent={}, label={}",
                b,
                map(vs[0]),
                map(vs[1]),
                map(vs[2]),
                parent,
                label
            )
            .unwrap();
        }
        s
    }
}

/// The two vertices common to adjacent bags of a smooth decomposition.
fn shared_pair(a: &[VertexId; 3], b: &[VertexId; 3]) -> (VertexId, VertexId) {
    let mut it = a.iter().copied().filter(|x| b.contains(x));
    let x = it.next().expect("adjacent bags share two vertices");
    let y = it.next().expect("adjacent bags share two vertices");
    (x, y)
}

/// Smooth rooted decomposition with `n - 2` bags, built by replaying the
/// degree-2 elimination order: eliminating `x` with neighbours `{a, b}`
/// creates bag `{x, a, b}`, whose parent is the next bag created that
/// contains both `a` and `b`. The last bag is the root. Not yet suitable.
pub fn build_smooth_decomposition(
    g: &WeightedGraph,
) -> Result<SuitableTreeDecomposition, DecompositionError> {
    if g.n() >= 3 && elimination_order(g).complete && !is_biconnected(g) {
        return Err(DecompositionError::NotBiconnected);
    }
    build_smooth_unchecked(g)
}

/// As [`build_smooth_decomposition`] for a graph the caller knows to be
/// 2-connected; other inputs may be rejected or decomposed incorrectly.
pub(crate) fn build_smooth_unchecked(
    g: &WeightedGraph,
) -> Result<SuitableTreeDecomposition, DecompositionError> {
    const NONE: u32 = u32::MAX;
    let n = g.n();
    if n < 3 {
        return Err(DecompositionError::TooSmall(n));
    }
    let order = elimination_order(g);
    if !order.complete {
        return Err(DecompositionError::NotPartial2Tree);
    }

    let count = n - 2;
    let real = |p: usize| order.edge_of(p).map_or(NO_EDGE, |e| e as u32);
    let mut bags = Vec::with_capacity(count);
    let mut slot_edges = Vec::with_capacity(count);
    let mut parent: Vec<Option<BagId>> = vec![None; count];
    // bags waiting for a parent holding their label: list head per pair,
    // chained through `next_waiter`
    let mut waiting = vec![NONE; g.m() + n];
    let mut next_waiter = vec![NONE; count];
    for (id, step) in order.steps.iter().take(count).enumerate() {
        let (&[a, b], &[pa, pb], Some(pab)) = (&step.neighbors[..], &step.links[..], step.closing)
        else {
            // 2-connectivity keeps every degree at two until two vertices remain
            return Err(DecompositionError::NotBiconnected);
        };
        for p in [pa, pb, pab] {
            let mut w = std::mem::replace(&mut waiting[p], NONE);
            while w != NONE {
                parent[w as usize] = Some(id);
                w = next_waiter[w as usize];
            }
        }
        next_waiter[id] = std::mem::replace(&mut waiting[pab], id as u32);
        // slot i holds the pair of the other two vertices; a < b already
        let (x, mut bag, mut edges) = (
            step.vertex,
            [step.vertex, a, b],
            [real(pab), real(pb), real(pa)],
        );
        if x > a {
            bag.swap(0, 1);
            edges.swap(0, 1);
            if x > b {
                bag.swap(1, 2);
                edges.swap(1, 2);
            }
        }
        bags.push(bag);
        slot_edges.push(edges);
    }
    let root = count - 1;
    if parent[..root].iter().any(Option::is_none) {
        return Err(DecompositionError::NotBiconnected);
    }
    let mut t = SuitableTreeDecomposition::from_parts(bags, root, parent);
    t.slot_edges = Some(slot_edges);
    Ok(t)
}

/// Makes a smooth rooted decomposition suitable: walking from the root,
/// whenever the links `(A, B)` and `(B, C)` carry the same label, `C` and its
/// subtree are reattached to `A`. Linear time.
pub fn make_suitable(mut t: SuitableTreeDecomposition) -> SuitableTreeDecomposition {
    if t.bags.is_empty() {
        return t;
    }
    // final (parent, child) links; a bag's kept children are emitted before
    // any child moved up to it, since parents are visited first
    let mut links = Vec::with_capacity(t.bags.len() - 1);
    let mut stack = vec![t.root];
    while let Some(b) = stack.pop() {
        let kids = &t.child_list[t.child_start[b]..t.child_start[b + 1]];
        match t.parent[b] {
            Some(a) => {
                let label = shared_pair(&t.bags[b], &t.bags[a]);
                for &c in kids {
                    if shared_pair(&t.bags[c], &t.bags[b]) == label {
                        t.parent[c] = Some(a);
                        links.push((a, c));
                    } else {
                        links.push((b, c));
                    }
                }
            }
            None => links.extend(kids.iter().map(|&c| (b, c))),
        }
        // moved children are visited too: their own children may repeat the label
        stack.extend(kids.iter().rev());
    }
    (t.child_start, t.child_list) = flatten_children(t.bags.len(), &links);
    t
}

/// Builds the smooth decomposition and makes it suitable.
pub fn suitable_decomposition(
    g: &WeightedGraph,
) -> Result<SuitableTreeDecomposition, DecompositionError> {
    build_smooth_decomposition(g).map(make_suitable)
}

/// [`suitable_decomposition`] without the 2-connectivity check.
pub(crate) fn suitable_decomposition_unchecked(
    g: &WeightedGraph,
) -> Result<SuitableTreeDecomposition, DecompositionError> {
    build_smooth_unchecked(g).map(make_suitable)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("malformed tree: {0}")]
    Tree(String),
    #[error("bag {0} does not hold three distinct graph vertices")]
    BagShape(BagId),
    #[error("expected {expected} bags, found {found}")]
    BagCount { expected: usize, found: usize },
    #[error("vertex {0} is in no bag")]
    Uncovered(VertexId),
    #[error("edge {{{0}, {1}}} is in no bag")]
    EdgeUncovered(VertexId, VertexId),
    #[error("bags containing vertex {0} are not connected")]
    NotSubtree(VertexId),
    #[error("link above bag {0} does not share exactly two vertices")]
    NotSmooth(BagId),
    #[error("links below bags {0} and {1} share a label but not a parent")]
    NotSuitable(BagId, BagId),
    #[error("recorded edges of bag {0} do not match the graph")]
    SlotEdges(BagId),
}

/// Checks tree shape, coverage, edge containment, the subtree property,
/// smoothness, suitability and the `n - 2` bag count.
pub fn check_decomposition(
    g: &WeightedGraph,
    t: &SuitableTreeDecomposition,
) -> Result<(), ValidationError> {
    let n = g.n();
    let count = t.bags.len();
    if n >= 3 && count != n - 2 {
        return Err(ValidationError::BagCount {
            expected: n - 2,
            found: count,
        });
    }
    if count == 0 {
        return if n == 0 {
            Ok(())
        } else {
            Err(ValidationError::Uncovered(0))
        };
    }
    if t.parent.len() != count || t.child_start.len() != count + 1 || t.root >= count {
        return Err(ValidationError::Tree("inconsistent array lengths".into()));
    }
    if t.parent[t.root].is_some() {
        return Err(ValidationError::Tree("root has a parent".into()));
    }
    for b in 0..count {
        match t.parent[b] {
            None if b != t.root => {
                return Err(ValidationError::Tree(format!("bag {b} has no parent")))
            }
            Some(p) if p >= count || !t.children(p).contains(&b) => {
                return Err(ValidationError::Tree(format!(
                    "parent of bag {b} does not list it"
                )))
            }
            _ => {}
        }
        if t.children(b)
            .iter()
            .any(|&c| c >= count || t.parent[c] != Some(b))
        {
            return Err(ValidationError::Tree(format!(
                "child list of bag {b} is inconsistent"
            )));
        }
    }
    if t.preorder().len() != count {
        return Err(ValidationError::Tree(
            "not all bags reachable from the root".into(),
        ));
    }

    let mut covered = vec![false; n];
    let mut pairs = FxHashSet::default();
    for (b, vs) in t.bags.iter().enumerate() {
        if vs.iter().any(|&v| v >= n) || vs[0] == vs[1] || vs[1] == vs[2] || vs[0] == vs[2] {
            return Err(ValidationError::BagShape(b));
        }
        for &v in vs {
            covered[v] = true;
        }
        pairs.insert(pair_key(vs[0], vs[1]));
        pairs.insert(pair_key(vs[0], vs[2]));
        pairs.insert(pair_key(vs[1], vs[2]));
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return Err(ValidationError::Uncovered(v));
    }
    if let Some(se) = &t.slot_edges {
        if se.len() != count {
            return Err(ValidationError::Tree("inconsistent array lengths".into()));
        }
        for (b, vs) in t.bags.iter().enumerate() {
            for s in 0..3 {
                let (i, j) = other_slots(s);
                if t.slot_edge(b, s) != Some(g.edge_between(vs[i], vs[j])) {
                    return Err(ValidationError::SlotEdges(b));
                }
            }
        }
    }
    for e in g.edges() {
        if !pairs.contains(&pair_key(e.u, e.v)) {
            return Err(ValidationError::EdgeUncovered(e.u.min(e.v), e.u.max(e.v)));
        }
    }

    // a vertex's bags form a subtree iff exactly one of them has a parent
    // bag not containing the vertex (or is the root)
    let mut tops = vec![0u32; n];
    for (b, vs) in t.bags.iter().enumerate() {
        for &v in vs {
            if t.parent[b].is_none_or(|p| !t.bags[p].contains(&v)) {
                tops[v] += 1;
            }
        }
    }
    if let Some(v) = tops.iter().position(|&c| c != 1) {
        return Err(ValidationError::NotSubtree(v));
    }

    let mut label_parent: FxHashMap<u64, BagId> = FxHashMap::default();
    for b in 0..count {
        let Some(p) = t.parent[b] else { continue };
        let shared = t.bags[b].iter().filter(|x| t.bags[p].contains(x)).count();
        if shared != 2 {
            return Err(ValidationError::NotSmooth(b));
        }
        let (x, y) = shared_pair(&t.bags[b], &t.bags[p]);
        match label_parent.get(&pair_key(x, y)) {
            Some(&q) if q != p => {
                let other = t
                    .children(q)
                    .iter()
                    .copied()
                    .find(|&c| t.label(c) == Some((x, y)))
                    .unwrap_or(q);
                return Err(ValidationError::NotSuitable(other, b));
            }
            Some(_) => {}
            None => {
                label_parent.insert(pair_key(x, y), p);
            }
        }
    }
    Ok(())
}

pub fn validate_decomposition(g: &WeightedGraph, t: &SuitableTreeDecomposition) -> bool {
    check_decomposition(g, t).is_ok()
}
