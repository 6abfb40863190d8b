//! Internal faces of outerplanar graphs.
//!
//! For an outerplanar graph whose edges are all tight, the internal faces
//! are exactly the induced cycles and form a minimum cycle basis. Each
//! 2-connected component has a unique Hamiltonian outer cycle; the chords
//! then nest, and a single stack sweep along the outer cycle emits every
//! internal face once.

use std::cmp::Reverse;

use thiserror::Error;

use crate::biconnected::biconnected_components;
use crate::cycle::Cycle;
use crate::elimination::{elimination_order, EliminationStep};
use crate::graph::{EdgeId, VertexId, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OuterplanarError {
    #[error("graph is not outerplanar (component containing vertex {0})")]
    NotOuterplanar(VertexId),
}

/// Internal faces of every 2-connected component of `g`, as cycles of `g`.
/// Their number is `m - n + c` with `c` the number of connected components.
pub fn internal_faces(g: &WeightedGraph) -> Result<Vec<Cycle>, OuterplanarError> {
    if g.n() == 3 && g.m() == 3 {
        return Ok(vec![triangle(g, &[0, 1, 2], &[0, 1, 2])]);
    }
    let mut faces = Vec::with_capacity((g.m() + 1).saturating_sub(g.n()));
    for comp in biconnected_components(g).components {
        if comp.is_trivial() {
            continue;
        }
        if comp.edges.len() == 3 {
            faces.push(triangle(g, &comp.vertices, &comp.edges));
            continue;
        }
        let err = OuterplanarError::NotOuterplanar(comp.vertices[0]);
        if comp.vertices.len() == g.n() && comp.edges.len() == g.m() {
            let (ring, ring_edges) = outer_ring(g).ok_or(err.clone())?;
            faces.extend(sweep(g, &ring, &ring_edges).ok_or(err)?);
            continue;
        }
        let sub = g.subgraph_on(comp.vertices, &comp.edges);
        let (ring, ring_edges) = outer_ring(&sub.graph).ok_or(err.clone())?;
        for face in sweep(&sub.graph, &ring, &ring_edges).ok_or(err)? {
            let vertices = face.vertices.iter().map(|&v| sub.vertex_map[v]).collect();
            let edges = face.edges.iter().map(|&e| sub.edge_map[e]).collect();
            faces.push(Cycle { vertices, edges }.canonical());
        }
    }
    Ok(faces)
}

/// The canonical cycle of a triangle component with ascending `vertices`.
fn triangle(g: &WeightedGraph, vertices: &[VertexId], edges: &[EdgeId]) -> Cycle {
    let &[a, b, c] = vertices else {
        unreachable!("a 3-edge block is a triangle")
    };
    let find = |x: VertexId, y: VertexId| {
        *edges
            .iter()
            .find(|&&e| {
                let r = g.edge(e);
                (r.u == x && r.v == y) || (r.u == y && r.v == x)
            })
            .expect("triangle edge")
    };
    Cycle {
        vertices: vec![a, b, c],
        edges: vec![find(a, b), find(b, c), find(c, a)],
    }
}

/// Hamiltonian outer cycle of a 2-connected outerplanar graph, or `None`.
///
/// Degree-2 vertices are absorbed one by one, each contributing a (possibly
/// virtual) edge between its neighbours, until a triangle is left. Going
/// back, every absorbed vertex is spliced between its two neighbours, which
/// must be consecutive on the cycle built so far.
pub fn outer_cycle(g: &WeightedGraph) -> Option<Vec<VertexId>> {
    outer_ring(g).map(|(ring, _)| ring)
}

/// The outer cycle together with the edge leaving each ring position.
fn outer_ring(g: &WeightedGraph) -> Option<(Vec<VertexId>, Vec<EdgeId>)> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let order = elimination_order(g);
    if !order.complete {
        return None;
    }
    let steps = &order.steps;
    if steps[..n - 2].iter().any(|s| s.neighbors.len() != 2) || steps[n - 2].neighbors.len() != 1 {
        return None;
    }
    // doubly linked ring; `out[v]` is the pair joining `v` to `next[v]`
    let mut next = vec![usize::MAX; n];
    let mut prev = vec![usize::MAX; n];
    let mut out = vec![usize::MAX; n];
    let (t, u) = (&steps[n - 3], &steps[n - 2]);
    let (x, y, z) = (t.vertex, u.vertex, steps[n - 1].vertex);
    let link_to = |s: &EliminationStep, v: VertexId| s.links[usize::from(s.neighbors[0] != v)];
    for (p, q, pair) in [
        (x, y, link_to(t, y)),
        (y, z, u.links[0]),
        (z, x, link_to(t, z)),
    ] {
        next[p] = q;
        prev[q] = p;
        out[p] = pair;
    }
    for s in steps[..n - 3].iter().rev() {
        let (a, b) = (s.neighbors[0], s.neighbors[1]);
        let (a, b, la, lb) = if next[a] == b {
            (a, b, s.links[0], s.links[1])
        } else if next[b] == a {
            (b, a, s.links[1], s.links[0])
        } else {
            return None;
        };
        next[a] = s.vertex;
        prev[s.vertex] = a;
        out[a] = la;
        next[s.vertex] = b;
        prev[b] = s.vertex;
        out[s.vertex] = lb;
    }
    let mut ring = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n);
    let mut v = 0;
    loop {
        ring.push(v);
        // every ring step must be a real edge
        edges.push(order.edge_of(out[v])?);
        v = next[v];
        if v == 0 {
            break;
        }
    }
    (ring.len() == n).then_some((ring, edges))
}

/// Emits the bounded faces given the outer ring and its edges; `None` if
/// chords cross.
fn sweep(g: &WeightedGraph, ring: &[VertexId], ring_edges: &[EdgeId]) -> Option<Vec<Cycle>> {
    let n = ring.len();
    let mut pos = vec![0usize; n];
    for (i, &v) in ring.iter().enumerate() {
        pos[v] = i;
    }
    let ring_edge = |i: usize| ring_edges[i];
    // chords by later endpoint, earlier endpoints descending
    let mut chords: Vec<(usize, Reverse<usize>, EdgeId)> = Vec::with_capacity(g.m() - n);
    for (e, r) in g.edges().iter().enumerate() {
        let (i, j) = (pos[r.u].min(pos[r.v]), pos[r.u].max(pos[r.v]));
        if j == i + 1 || (i == 0 && j == n - 1) {
            continue;
        }
        chords.push((j, Reverse(i), e));
    }
    chords.sort_unstable();
    let mut next_chord = 0;

    let mut faces = Vec::with_capacity(g.m() + 1 - n);
    // (ring position, edge joining it to the entry below)
    let mut stack: Vec<(usize, Option<EdgeId>)> = vec![(0, None)];
    let mut on_stack = vec![false; n];
    on_stack[0] = true;
    for i in 1..n {
        stack.push((i, Some(ring_edge(i - 1))));
        on_stack[i] = true;
        while let Some(&(_, Reverse(j), chord)) = chords.get(next_chord).filter(|c| c.0 == i) {
            next_chord += 1;
            if !on_stack[j] {
                return None;
            }
            let top = stack.pop().expect("holds i");
            let mut vertices = vec![ring[i]];
            let mut edges = vec![top.1.expect("not the base")];
            while let Some(&(p, e)) = stack.last() {
                vertices.push(ring[p]);
                if p == j {
                    break;
                }
                edges.push(e.expect("above the base"));
                on_stack[p] = false;
                stack.pop();
            }
            edges.push(chord);
            faces.push(Cycle { vertices, edges }.canonical());
            stack.push((i, Some(chord)));
        }
    }
    // what is left closes with the ring edge back to position 0
    let mut vertices = Vec::with_capacity(stack.len());
    let mut edges = Vec::with_capacity(stack.len());
    vertices.push(ring[0]);
    edges.push(ring_edge(n - 1));
    while let Some((p, e)) = stack.pop() {
        if p == 0 {
            break;
        }
        vertices.push(ring[p]);
        edges.push(e.expect("above the base"));
    }
    if vertices.len() >= 3 {
        faces.push(Cycle { vertices, edges }.canonical());
    }
    Some(faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::gen_random_outerplanar;
    use crate::graph::cycle_space_dimension_any;
    use crate::reference::lsp::induced_cycles;

    fn consistent(g: &WeightedGraph, c: &Cycle) -> bool {
        let k = c.len();
        Cycle::from_edges(g, &c.edges).is_some_and(|d| d == *c)
            && (0..k)
                .all(|i| g.edge_between(c.vertices[i], c.vertices[(i + 1) % k]) == Some(c.edges[i]))
    }

    fn face_sets(g: &WeightedGraph) -> Vec<Vec<EdgeId>> {
        let mut f: Vec<_> = internal_faces(g)
            .unwrap()
            .iter()
            .map(Cycle::edge_set)
            .collect();
        f.sort();
        f
    }

    #[test]
    fn triangle_and_chorded_square() {
        let tri = WeightedGraph::from_edges(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(face_sets(&tri), vec![vec![0, 1, 2]]);
        let sq =
            WeightedGraph::from_edges(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (1, 3, 1)])
                .unwrap();
        assert_eq!(face_sets(&sq), vec![vec![0, 3, 4], vec![1, 2, 4]]);
        for c in internal_faces(&sq).unwrap() {
            assert!(consistent(&sq, &c));
        }
    }

    #[test]
    fn rejects_non_outerplanar() {
        let k23 = crate::generator::complete_bipartite_2k(3);
        assert!(internal_faces(&k23).is_err());
        let k4 = crate::generator::complete_graph(4);
        assert!(internal_faces(&k4).is_err());
    }

    #[test]
    fn trees_and_bowties() {
        let path = WeightedGraph::from_edges(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(internal_faces(&path).unwrap().is_empty());
        let bowtie = WeightedGraph::from_edges(
            5,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (0, 2, 1),
                (2, 3, 1),
                (3, 4, 1),
                (2, 4, 1),
            ],
        )
        .unwrap();
        assert_eq!(face_sets(&bowtie), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn faces_are_the_induced_cycles() {
        for seed in 0..300 {
            let g = gen_random_outerplanar(11, 0.25, (1, 1), seed).unwrap();
            let faces = internal_faces(&g).unwrap();
            assert_eq!(faces.len(), cycle_space_dimension_any(&g), "seed {seed}");
            for c in &faces {
                assert!(consistent(&g, c), "seed {seed}: {c:?}");
            }
            let mut induced: Vec<_> = induced_cycles(&g)
                .unwrap()
                .iter()
                .map(Cycle::edge_set)
                .collect();
            induced.sort();
            assert_eq!(face_sets(&g), induced, "seed {seed}");
        }
    }

    #[test]
    fn large_outerplanar_face_count() {
        let g = gen_random_outerplanar(2000, 0.1, (1, 1), 5).unwrap();
        assert_eq!(
            internal_faces(&g).unwrap().len(),
            cycle_space_dimension_any(&g)
        );
    }
}
