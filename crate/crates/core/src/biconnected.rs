//! Articulation-point split into 2-connected components.

use crate::graph::{EdgeId, VertexId, WeightedGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiconnectedComponent {
    /// Sorted.
    pub vertices: Vec<VertexId>,
    /// Sorted.
    pub edges: Vec<EdgeId>,
}

impl BiconnectedComponent {
    /// A bridge: one edge, two vertices, no cycle.
    pub fn is_trivial(&self) -> bool {
        self.edges.len() == 1
    }
}

#[derive(Clone, Debug, Default)]
pub struct BiconnectedSplit {
    /// Ordered by smallest contained edge id. Bridges appear as trivial
    /// components; isolated vertices appear nowhere.
    pub components: Vec<BiconnectedComponent>,
}

struct Frame {
    v: VertexId,
    /// Tree edge and vertex above `v`.
    parent: Option<(EdgeId, VertexId)>,
    next: usize,
}

/// Edge-stack Tarjan, iterative so that long paths do not exhaust the call
/// stack. Works on disconnected graphs as well.
pub fn biconnected_components(g: &WeightedGraph) -> BiconnectedSplit {
    split(g, |_| true)
}

/// Components of the spanning subgraph keeping the edges `e` with `keep[e]`.
pub fn biconnected_components_of(g: &WeightedGraph, keep: &[bool]) -> BiconnectedSplit {
    split(g, |e| keep[e])
}

/// Labels every kept edge with its component during an edge-stack DFS, then
/// lists each component's edges and vertices in ascending order with
/// counting passes, so the whole split is linear.
fn split(g: &WeightedGraph, keep: impl Fn(EdgeId) -> bool) -> BiconnectedSplit {
    const UNSEEN: usize = usize::MAX;
    const NONE: u32 = u32::MAX;
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    // edges with their endpoints, so components need no edge lookups
    let mut edge_stack: Vec<(EdgeId, VertexId, VertexId)> = Vec::new();
    let mut frames: Vec<Frame> = Vec::new();
    let mut comp_of_edge = vec![NONE; g.m()];
    let mut stamp = vec![NONE; n];
    // (component, vertex) memberships and sizes per component
    let mut members: Vec<(u32, u32)> = Vec::with_capacity(n);
    let mut sizes: Vec<(u32, u32)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        frames.push(Frame {
            v: root,
            parent: None,
            next: 0,
        });

        while let Some(frame) = frames.last_mut() {
            let v = frame.v;
            if let Some(&a) = g.adjacency(v).get(frame.next) {
                frame.next += 1;
                let (e, y) = (a.edge(), a.vertex());
                if frame.parent.is_some_and(|(pe, _)| pe == e) || !keep(e) {
                    continue;
                }
                if disc[y] == UNSEEN {
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    edge_stack.push((e, v, y));
                    frames.push(Frame {
                        v: y,
                        parent: Some((e, v)),
                        next: 0,
                    });
                } else if disc[y] < disc[v] {
                    edge_stack.push((e, v, y));
                    low[v] = low[v].min(disc[y]);
                }
                continue;
            }
            let done = frames.pop().expect("non-empty");
            let Some((pe, parent)) = done.parent else {
                continue;
            };
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                let c = sizes.len() as u32;
                let (mut count, mut edges) = (0, 0);
                while let Some((e, a, b)) = edge_stack.pop() {
                    comp_of_edge[e] = c;
                    edges += 1;
                    for x in [a, b] {
                        if stamp[x] != c {
                            stamp[x] = c;
                            members.push((c, x as u32));
                            count += 1;
                        }
                    }
                    if e == pe {
                        break;
                    }
                }
                sizes.push((count, edges));
            }
        }
    }

    // number components by smallest edge and fill their edge lists
    let mut rank = vec![NONE; sizes.len()];
    let mut components: Vec<BiconnectedComponent> = Vec::with_capacity(sizes.len());
    for (e, &c) in comp_of_edge.iter().enumerate() {
        if c == NONE {
            continue;
        }
        if rank[c as usize] == NONE {
            rank[c as usize] = components.len() as u32;
            let (nv, ne) = sizes[c as usize];
            components.push(BiconnectedComponent {
                vertices: Vec::with_capacity(nv as usize),
                edges: Vec::with_capacity(ne as usize),
            });
        }
        components[rank[c as usize] as usize].edges.push(e);
    }
    // vertices in ascending order: bucket memberships by vertex first
    let mut start = vec![0u32; n + 1];
    for &(_, x) in &members {
        start[x as usize + 1] += 1;
    }
    for v in 0..n {
        start[v + 1] += start[v];
    }
    let mut by_vertex = vec![0u32; members.len()];
    for &(c, x) in &members {
        by_vertex[start[x as usize] as usize] = c;
        start[x as usize] += 1;
    }
    let mut i = 0;
    for (v, &end) in start[..n].iter().enumerate() {
        for &c in &by_vertex[i..end as usize] {
            components[rank[c as usize] as usize].vertices.push(v);
        }
        i = end as usize;
    }
    BiconnectedSplit { components }
}

/// True iff `g` is connected, has at least three vertices and no articulation point.
pub fn is_biconnected(g: &WeightedGraph) -> bool {
    g.n() >= 3 && g.is_connected() && biconnected_components(g).components.len() == 1
}
