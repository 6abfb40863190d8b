//! Seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{EdgeKind, VertexId, WeightedGraph};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

fn check_params(n: usize, delete_prob: f64, weight_range: (u64, u64)) -> Result<(), GenError> {
    if n < 3 {
        return Err(GenError::InvalidParam(format!(
            "n must be at least 3, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&delete_prob) {
        return Err(GenError::InvalidParam(format!(
            "delete probability {delete_prob} outside [0, 1]"
        )));
    }
    if weight_range.0 > weight_range.1 {
        return Err(GenError::InvalidParam(format!(
            "empty weight range [{}, {}]",
            weight_range.0, weight_range.1
        )));
    }
    Ok(())
}

/// Random 2-tree on `n` vertices (a triangle grown by attaching each new
/// vertex to both ends of a uniformly chosen existing edge), thinned by
/// independent edge deletion, restricted to its largest connected component
/// and given uniform integer weights from the inclusive `weight_range`.
pub fn gen_random_partial_2tree(
    n: usize,
    delete_prob: f64,
    weight_range: (u64, u64),
    seed: u64,
) -> Result<WeightedGraph, GenError> {
    check_params(n, delete_prob, weight_range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(2 * n - 3);
    edges.extend([(0, 1), (1, 2), (0, 2)]);
    for x in 3..n {
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        edges.push((a, x));
        edges.push((b, x));
    }
    Ok(thin_and_weigh(
        n,
        edges,
        delete_prob,
        weight_range,
        &mut rng,
    ))
}

/// Random outerplanar graph: a triangle grown by inserting each new vertex
/// next to a uniformly chosen edge of the current outer cycle, then thinned
/// and weighted like [`gen_random_partial_2tree`]. Quadratic; meant for
/// test-sized instances.
pub fn gen_random_outerplanar(
    n: usize,
    delete_prob: f64,
    weight_range: (u64, u64),
    seed: u64,
) -> Result<WeightedGraph, GenError> {
    check_params(n, delete_prob, weight_range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(VertexId, VertexId)> = vec![(0, 1), (1, 2), (0, 2)];
    let mut ring: Vec<VertexId> = vec![0, 1, 2];
    for x in 3..n {
        let i = rng.gen_range(0..ring.len());
        let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
        edges.push((a, x));
        edges.push((b, x));
        ring.insert(i + 1, x);
    }
    Ok(thin_and_weigh(
        n,
        edges,
        delete_prob,
        weight_range,
        &mut rng,
    ))
}

fn thin_and_weigh(
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    delete_prob: f64,
    (lo, hi): (u64, u64),
    rng: &mut ChaCha8Rng,
) -> WeightedGraph {
    let kept: Vec<(VertexId, VertexId)> = edges
        .into_iter()
        .filter(|_| rng.gen::<f64>() >= delete_prob)
        .collect();

    let mut skeleton = WeightedGraph::new(n, 0);
    for &(u, v) in &kept {
        skeleton
            .add_edge(u, v, Weight::ZERO, EdgeKind::Original)
            .expect("2-tree edges are simple");
    }
    let (label, count) = skeleton.component_labels();
    let mut size = vec![0usize; count];
    for &l in &label {
        size[l] += 1;
    }
    // first maximum wins, i.e. the component with the smallest vertex
    let best = (0..count).fold(0, |best, c| if size[c] > size[best] { c } else { best });

    let mut relabel = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if label[v] == best {
            relabel[v] = next;
            next += 1;
        }
    }
    let mut g = WeightedGraph::new(next, 0);
    for (u, v) in kept {
        if label[u] == best {
            let w = rng.gen_range(lo..=hi);
            g.add_edge(
                relabel[u],
                relabel[v],
                Weight::from_units(u128::from(w)),
                EdgeKind::Original,
            )
            .expect("relabelled subgraph is simple");
        }
    }
    g
}

/// Unit-weight complete graph.
pub fn complete_graph(n: usize) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v, 1));
        }
    }
    WeightedGraph::from_edges(n, &edges).expect("simple")
}

/// Unit-weight `K_{2,k}` with branch vertices 0 and 1 and legs `2..k+2`.
pub fn complete_bipartite_2k(k: usize) -> WeightedGraph {
    let mut edges = Vec::new();
    for x in 2..k + 2 {
        edges.push((0, x, 1));
        edges.push((1, x, 1));
    }
    WeightedGraph::from_edges(k + 2, &edges).expect("simple")
}
