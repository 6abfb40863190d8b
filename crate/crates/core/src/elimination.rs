//! Elimination of vertices of degree at most two.
//!
//! Removing a degree-2 vertex `x` with neighbours `a, b` and inserting the
//! (virtual) edge `{a, b}` if absent keeps treewidth at most two; a graph is
//! a partial 2-tree iff repeated elimination empties it. The same order seeds
//! the tree-decomposition builder and the outer-cycle finder.

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::graph::{pair_key, VertexId, WeightedGraph};

/// Identity of a vertex pair that is adjacent at some point of the
/// elimination: ids below `m` are the graph's edge ids, larger ids are
/// virtual edges in creation order.
pub type PairId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationStep {
    pub vertex: VertexId,
    /// Live neighbours at elimination time, at most two, ascending.
    pub neighbors: SmallVec<[VertexId; 2]>,
    /// Pair joining `vertex` to each neighbour, aligned with `neighbors`.
    pub links: SmallVec<[PairId; 2]>,
    /// Pair joining the two neighbours after the step, if there are two.
    pub closing: Option<PairId>,
}

#[derive(Clone, Debug)]
pub struct EliminationOrder {
    pub steps: Vec<EliminationStep>,
    /// True iff every vertex was eliminated.
    pub complete: bool,
    /// Edge count of the graph; pair ids from here on are virtual.
    pub real_pairs: usize,
}

impl EliminationOrder {
    /// The edge id behind a pair, or `None` for a virtual pair.
    pub fn edge_of(&self, p: PairId) -> Option<usize> {
        (p < self.real_pairs).then_some(p)
    }
}

const DEAD: u32 = u32::MAX;

/// Eliminates degree-<=2 vertices until none is left or the remaining graph
/// has minimum degree three. Deterministic: the worklist is a stack seeded
/// in decreasing id order.
///
/// A vertex never gains degree (it loses `x` whenever it gains the virtual
/// edge), so adjacency lives in one flat half-edge array sized by the initial
/// degrees, and a new virtual edge reuses the two half-edges freed by `x`.
pub fn elimination_order(g: &WeightedGraph) -> EliminationOrder {
    let n = g.n();
    let m = g.m();
    assert!(
        2 * m < DEAD as usize,
        "too many edges for 32-bit half-edge ids"
    );
    let mut start = Vec::with_capacity(n + 1);
    start.push(0u32);
    for v in 0..n {
        start.push(start[v] + g.degree(v) as u32);
    }
    // half-edge h sits in the list of one endpoint and points at the other
    let mut to = vec![0u32; 2 * m];
    let mut twin = vec![0u32; 2 * m];
    let mut pair = vec![0u32; 2 * m];
    let mut fill = start[..n].to_vec();
    for (e, r) in g.edges().iter().enumerate() {
        let (hu, hv) = (fill[r.u], fill[r.v]);
        fill[r.u] += 1;
        fill[r.v] += 1;
        to[hu as usize] = r.v as u32;
        to[hv as usize] = r.u as u32;
        twin[hu as usize] = hv;
        twin[hv as usize] = hu;
        pair[hu as usize] = e as u32;
        pair[hv as usize] = e as u32;
    }
    let mut degree: Vec<u32> = (0..n).map(|v| start[v + 1] - start[v]).collect();
    let mut virtual_pairs: FxHashMap<u64, u32> = FxHashMap::default();
    let mut alive = vec![true; n];
    let mut work: Vec<u32> = (0..n as u32)
        .rev()
        .filter(|&v| degree[v as usize] <= 2)
        .collect();
    let mut steps = Vec::with_capacity(n);

    while let Some(x) = work.pop() {
        let x = x as usize;
        // degrees never grow, so a listed vertex stays eligible
        if !alive[x] {
            continue;
        }
        let mut live: SmallVec<[(VertexId, u32); 2]> = (start[x]..start[x + 1])
            .filter(|&h| to[h as usize] != DEAD)
            .map(|h| (to[h as usize] as usize, h))
            .collect();
        debug_assert_eq!(live.len(), degree[x] as usize);
        live.sort_unstable();
        alive[x] = false;
        let neighbors: SmallVec<[VertexId; 2]> = live.iter().map(|&(y, _)| y).collect();
        let links: SmallVec<[PairId; 2]> = live
            .iter()
            .map(|&(_, h)| pair[h as usize] as usize)
            .collect();
        let mut closing = None;
        match live[..] {
            [(a, ha), (b, hb)] => {
                let (ta, tb) = (twin[ha as usize], twin[hb as usize]);
                let existing = g
                    .edge_between(a, b)
                    .or_else(|| virtual_pairs.get(&pair_key(a, b)).map(|&p| p as usize));
                match existing {
                    Some(p) => {
                        to[ta as usize] = DEAD;
                        to[tb as usize] = DEAD;
                        degree[a] -= 1;
                        degree[b] -= 1;
                        closing = Some(p);
                    }
                    None => {
                        let p = (m + virtual_pairs.len()) as u32;
                        virtual_pairs.insert(pair_key(a, b), p);
                        to[ta as usize] = b as u32;
                        to[tb as usize] = a as u32;
                        twin[ta as usize] = tb;
                        twin[tb as usize] = ta;
                        pair[ta as usize] = p;
                        pair[tb as usize] = p;
                        closing = Some(p as usize);
                    }
                }
            }
            [(a, ha)] => {
                to[twin[ha as usize] as usize] = DEAD;
                degree[a] -= 1;
            }
            _ => {}
        }
        for &y in &neighbors {
            if degree[y] <= 2 {
                work.push(y as u32);
            }
        }
        steps.push(EliminationStep {
            vertex: x,
            neighbors,
            links,
            closing,
        });
    }
    let complete = steps.len() == n;
    EliminationOrder {
        steps,
        complete,
        real_pairs: m,
    }
}

/// True iff `g` has treewidth at most two.
pub fn recognize_partial_2tree(g: &WeightedGraph) -> bool {
    elimination_order(g).complete
}
