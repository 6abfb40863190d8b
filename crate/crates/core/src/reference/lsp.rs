//! Lexicographically shortest paths and lex short cycles by exhaustive
//! enumeration.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_size, ReferenceError};
use crate::cycle::Cycle;
use crate::graph::{VertexId, WeightedGraph};
use crate::weight::Weight;

/// A bijection from vertex ids onto `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexOrder {
    rank: Vec<usize>,
}

impl LexOrder {
    pub fn identity(n: usize) -> Self {
        LexOrder {
            rank: (1..=n).collect(),
        }
    }

    pub fn from_ranks(rank: Vec<usize>) -> Result<Self, ReferenceError> {
        let n = rank.len();
        let mut seen = vec![false; n + 1];
        for &r in &rank {
            if r == 0 || r > n || std::mem::replace(&mut seen[r], true) {
                return Err(ReferenceError::InvalidOrder);
            }
        }
        Ok(LexOrder { rank })
    }

    pub fn random(n: usize, seed: u64) -> Self {
        let mut rank: Vec<usize> = (1..=n).collect();
        rank.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        LexOrder { rank }
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, v: VertexId) -> usize {
        self.rank[v]
    }

    fn min_rank(&self, mut set: u64) -> usize {
        let mut best = usize::MAX;
        while set != 0 {
            let v = set.trailing_zeros() as usize;
            best = best.min(self.rank[v]);
            set &= set - 1;
        }
        best
    }
}

#[derive(Clone, Debug)]
struct Candidate {
    weight: Weight,
    vertices: Vec<VertexId>,
    vertex_mask: u64,
    edge_mask: u128,
}

impl Candidate {
    fn hops(&self) -> usize {
        self.vertices.len() - 1
    }

    /// True iff `self` is lexicographically shorter than `other`.
    fn beats(&self, other: &Candidate, sigma: &LexOrder) -> bool {
        if self.weight != other.weight {
            return self.weight < other.weight;
        }
        if self.hops() != other.hops() {
            return self.hops() < other.hops();
        }
        let mine = self.vertex_mask & !other.vertex_mask;
        let theirs = other.vertex_mask & !self.vertex_mask;
        if theirs == 0 {
            return false;
        }
        sigma.min_rank(theirs) > sigma.min_rank(mine)
    }
}

/// A lex shortest path as vertex sequence and edge mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexPath {
    pub weight: Weight,
    pub vertices: Vec<VertexId>,
    pub edge_mask: u128,
}

/// Lex shortest paths between all ordered pairs of one graph.
#[derive(Clone, Debug)]
pub struct LspTable {
    n: usize,
    paths: Vec<Option<LexPath>>,
}

impl LspTable {
    /// `None` for `u == v` or disconnected pairs.
    pub fn get(&self, u: VertexId, v: VertexId) -> Option<&LexPath> {
        self.paths[u * self.n + v].as_ref()
    }
}

fn validate(g: &WeightedGraph, sigma: &LexOrder, bound: usize) -> Result<(), ReferenceError> {
    check_size(g, bound)?;
    // vertex and edge sets are held in u64 / u128 masks
    if g.n() > 64 || g.m() > 128 {
        return Err(ReferenceError::TooLarge {
            n: g.n(),
            bound: bound.min(64),
        });
    }
    if sigma.len() != g.n() {
        return Err(ReferenceError::InvalidOrder);
    }
    Ok(())
}

/// All minimum (weight, hop) simple paths from `source`, grouped by target.
fn minimal_paths_from(g: &WeightedGraph, source: VertexId) -> Vec<Vec<Candidate>> {
    let mut best: Vec<Vec<Candidate>> = vec![Vec::new(); g.n()];
    let mut path = vec![source];
    let mut edge_mask = 0u128;
    let mut weight = Weight::ZERO;
    // (vertex, next incident index) frames
    let mut stack: Vec<(VertexId, usize)> = vec![(source, 0)];
    let mut on_path = 1u64 << source;
    while let Some(&mut (x, ref mut next)) = stack.last_mut() {
        let Some(e) = g.adjacency(x).get(*next).map(|a| a.edge()) else {
            stack.pop();
            path.pop();
            on_path &= !(1 << x);
            if let Some(&(p, i)) = stack.last() {
                let pe = g.adjacency(p)[i - 1].edge();
                edge_mask &= !(1 << pe);
                weight = Weight::from_units(weight.units() - g.edge(pe).w.units());
            }
            continue;
        };
        *next += 1;
        let y = g.edge(e).other(x);
        if on_path & (1 << y) != 0 {
            continue;
        }
        weight += g.edge(e).w;
        edge_mask |= 1 << e;
        on_path |= 1 << y;
        path.push(y);
        let cand = Candidate {
            weight,
            vertices: path.clone(),
            vertex_mask: on_path,
            edge_mask,
        };
        let slot = &mut best[y];
        match slot
            .first()
            .map(|c| (c.weight, c.hops()).cmp(&(cand.weight, cand.hops())))
        {
            None | Some(std::cmp::Ordering::Equal) => slot.push(cand),
            Some(std::cmp::Ordering::Greater) => *slot = vec![cand],
            Some(std::cmp::Ordering::Less) => {}
        }
        stack.push((y, 0));
    }
    best
}

fn tournament(
    cands: &[Candidate],
    sigma: &LexOrder,
    u: VertexId,
    v: VertexId,
) -> Result<LexPath, ReferenceError> {
    let winner = cands
        .iter()
        .enumerate()
        .find(|(i, c)| {
            cands
                .iter()
                .enumerate()
                .all(|(j, d)| *i == j || c.beats(d, sigma))
        })
        .map(|(_, c)| c)
        .ok_or(ReferenceError::Ambiguous { u, v })?;
    Ok(LexPath {
        weight: winner.weight,
        vertices: winner.vertices.clone(),
        edge_mask: winner.edge_mask,
    })
}

/// The lex shortest `u`-`v` path; `Ok(None)` if `v` is unreachable.
pub fn lex_shortest_path(
    g: &WeightedGraph,
    u: VertexId,
    v: VertexId,
    sigma: &LexOrder,
) -> Result<Option<LexPath>, ReferenceError> {
    validate(g, sigma, super::DEFAULT_BOUND)?;
    assert!(u != v, "lex shortest path needs distinct endpoints");
    let cands = &minimal_paths_from(g, u)[v];
    if cands.is_empty() {
        return Ok(None);
    }
    tournament(cands, sigma, u, v).map(Some)
}

pub fn all_lex_shortest_paths(
    g: &WeightedGraph,
    sigma: &LexOrder,
) -> Result<LspTable, ReferenceError> {
    validate(g, sigma, super::DEFAULT_BOUND)?;
    let n = g.n();
    let mut paths = vec![None; n * n];
    for u in 0..n {
        let best = minimal_paths_from(g, u);
        for v in 0..n {
            if v != u && !best[v].is_empty() {
                paths[u * n + v] = Some(tournament(&best[v], sigma, u, v)?);
            }
        }
    }
    Ok(LspTable { n, paths })
}

/// Every simple cycle of `g`, each once, in canonical rotation.
pub fn all_simple_cycles(g: &WeightedGraph) -> Result<Vec<Cycle>, ReferenceError> {
    validate(g, &LexOrder::identity(g.n()), super::DEFAULT_BOUND)?;
    let mut out = Vec::new();
    for s in 0..g.n() {
        let mut path = vec![s];
        let mut stack: Vec<(VertexId, usize)> = vec![(s, 0)];
        let mut on_path = 1u64 << s;
        while let Some(&mut (x, ref mut next)) = stack.last_mut() {
            let Some(e) = g.adjacency(x).get(*next).map(|a| a.edge()) else {
                stack.pop();
                path.pop();
                on_path &= !(1 << x);
                continue;
            };
            *next += 1;
            let y = g.edge(e).other(x);
            if y == s && path.len() >= 3 && path[1] < path[path.len() - 1] {
                out.push(Cycle::from_vertices(g, &path).expect("closed simple ring"));
            }
            if y <= s || on_path & (1 << y) != 0 {
                continue;
            }
            on_path |= 1 << y;
            path.push(y);
            stack.push((y, 0));
        }
    }
    Ok(out)
}

/// Cycles containing the lex shortest path of every pair of their vertices.
pub fn enumerate_lsc(g: &WeightedGraph, sigma: &LexOrder) -> Result<Vec<Cycle>, ReferenceError> {
    let table = all_lex_shortest_paths(g, sigma)?;
    let cycles = all_simple_cycles(g)?;
    Ok(cycles
        .into_iter()
        .filter(|c| {
            let mask: u128 = c.edges.iter().fold(0, |m, &e| m | 1 << e);
            c.vertices.iter().all(|&a| {
                c.vertices
                    .iter()
                    .all(|&b| a >= b || table.get(a, b).is_some_and(|p| p.edge_mask & !mask == 0))
            })
        })
        .collect())
}

/// Cycles without chords.
pub fn induced_cycles(g: &WeightedGraph) -> Result<Vec<Cycle>, ReferenceError> {
    Ok(all_simple_cycles(g)?
        .into_iter()
        .filter(|c| {
            let inside: u64 = c.vertices.iter().fold(0, |m, &v| m | 1 << v);
            let spanned = g
                .edges()
                .iter()
                .filter(|e| inside & (1 << e.u) != 0 && inside & (1 << e.v) != 0)
                .count();
            spanned == c.len()
        })
        .collect())
}
