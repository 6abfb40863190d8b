//! The full pipeline and its implicit / explicit output.
//!
//! For each 2-connected block `B` of the input: build a decomposition and
//! distance oracle, mark the long edges `L`, split `B - L` into 2-connected
//! components `C`, decompose each `C` into outerplanar parts and take their
//! internal faces. A basis cycle is either a face (with green edges standing
//! for shortest paths of `C`) or a long edge closed by a shortest path of
//! `B`. The implicit form stores linear size; expansion writes the cycles
//! out over original edges.

use thiserror::Error;

use crate::biconnected::{biconnected_components, biconnected_components_of};
use crate::cycle::Cycle;
use crate::decomposer::{
    extract_part_graphs, find_long_edges, run_decomposition, DecomposeError, Decomposition,
    EdgeOrigin, PartGraph,
};
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::oracle::{build_oracle_trusted, DistanceOracle, OracleError};
use crate::outerplanar::{internal_faces, OuterplanarError};
use crate::treedec::{
    suitable_decomposition_unchecked, BagId, DecompositionError, SuitableTreeDecomposition,
};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McbError {
    #[error("input graph is not a partial 2-tree")]
    NotPartial2Tree,
    #[error("decomposition failed: {0}")]
    Decomposition(#[from] DecompositionError),
    #[error("distance oracle failed: {0}")]
    Oracle(#[from] OracleError),
    #[error("separator decomposition failed: {0}")]
    Decompose(#[from] DecomposeError),
    #[error("face extraction failed: {0}")]
    Outerplanar(#[from] OuterplanarError),
    #[error("expanded cycle through vertex {0} is not simple")]
    ExpansionNotSimple(VertexId),
}

impl McbError {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        !matches!(self, McbError::NotPartial2Tree)
    }
}

/// An outerplanar part and its internal faces (in part-local ids).
#[derive(Clone, Debug)]
pub struct Part {
    pub graph: PartGraph,
    pub faces: Vec<Cycle>,
}

/// A 2-connected component of a block without its long edges.
#[derive(Clone, Debug)]
pub struct ComponentMcb {
    pub graph: WeightedGraph,
    /// Component vertex -> input vertex.
    pub vertex_map: Vec<VertexId>,
    /// Component edge -> input edge.
    pub edge_map: Vec<EdgeId>,
    pub oracle: DistanceOracle,
    pub decomposition: Decomposition,
    pub parts: Vec<Part>,
}

impl ComponentMcb {
    /// Input vertex of a part-local vertex.
    pub fn global_vertex(&self, part: &PartGraph, x: VertexId) -> VertexId {
        self.vertex_map[part.vertex_map[x]]
    }
}

/// A long edge, to be closed by a shortest path of its block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongEdge {
    pub edge: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub w: Weight,
    /// Distance between the endpoints, and the edge count of the path used.
    pub dist: Weight,
    pub hops: u32,
    pub block: usize,
    /// Block-local endpoints and a block-oracle bag holding both.
    local: (VertexId, VertexId, BagId),
}

#[derive(Clone, Debug)]
pub struct BlockMcb {
    /// Block vertex -> input vertex.
    pub vertex_map: Vec<VertexId>,
    /// Kept only when the block has long edges.
    pub oracle: Option<DistanceOracle>,
    pub components: Vec<ComponentMcb>,
}

/// Totals describing an implicit basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McbStats {
    pub n: usize,
    pub m: usize,
    pub long_edges: usize,
    pub parts: usize,
    pub events: usize,
    pub cycles: usize,
    pub total_weight: Weight,
    /// Face lengths + trace events + long-edge stubs.
    pub implicit_size: usize,
    /// Edge count of the expanded basis.
    pub explicit_size: usize,
}

/// Linear-size description of a minimum cycle basis.
#[derive(Clone, Debug)]
pub struct ImplicitMcb {
    pub n: usize,
    pub m: usize,
    pub scale: u32,
    pub blocks: Vec<BlockMcb>,
    pub long_edges: Vec<LongEdge>,
    /// Elementary steps spent by the oracles and the separator loops.
    pub ops: usize,
}

/// Decomposition of a 2-connected component produced by the pipeline. A
/// graph has treewidth at most two iff all its blocks do, so a failed
/// elimination here is the recognition verdict.
fn decompose_block(g: &WeightedGraph) -> Result<SuitableTreeDecomposition, McbError> {
    suitable_decomposition_unchecked(g).map_err(|e| match e {
        DecompositionError::NotPartial2Tree => McbError::NotPartial2Tree,
        other => McbError::Decomposition(other),
    })
}

/// Computes an implicit minimum cycle basis of a partial 2-tree.
pub fn compute_mcb(g: &WeightedGraph) -> Result<ImplicitMcb, McbError> {
    let mut out = ImplicitMcb {
        n: g.n(),
        m: g.m(),
        scale: g.scale(),
        blocks: Vec::new(),
        long_edges: Vec::new(),
        ops: 0,
    };
    for comp in biconnected_components(g).components {
        if comp.is_trivial() {
            continue;
        }
        let block_id = out.blocks.len();
        let block = g.subgraph_on(comp.vertices, &comp.edges);
        let block_oracle = build_oracle_trusted(&block.graph, decompose_block(&block.graph)?);
        out.ops += block_oracle.build_ops();
        let long = find_long_edges(&block.graph, &block_oracle)?;

        let mut record = BlockMcb {
            vertex_map: block.vertex_map.clone(),
            oracle: None,
            components: Vec::new(),
        };
        if long.is_empty() {
            // B - L = B: reuse the block's decomposition and oracle
            let c = finish_component(block.graph, block.vertex_map, block.edge_map, block_oracle)?;
            out.ops += c.decomposition.ops;
            record.components.push(c);
            out.blocks.push(record);
            continue;
        }

        for &e in &long {
            let r = block.graph.edge(e);
            let bag = block_oracle.edge_bag(e).expect("every edge lies in a bag");
            let key = block_oracle.path_key(r.u, r.v, bag)?;
            out.long_edges.push(LongEdge {
                edge: block.edge_map[e],
                u: block.vertex_map[r.u],
                v: block.vertex_map[r.v],
                w: r.w,
                dist: key.weight,
                hops: key.hops,
                block: block_id,
                local: (r.u, r.v, bag),
            });
        }
        let mut keep = vec![true; block.graph.m()];
        for &e in &long {
            keep[e] = false;
        }
        for sub in biconnected_components_of(&block.graph, &keep).components {
            if sub.is_trivial() {
                continue;
            }
            let c = block.graph.subgraph_on(sub.vertices, &sub.edges);
            let vertex_map = c.vertex_map.iter().map(|&x| block.vertex_map[x]).collect();
            let edge_map = c.edge_map.iter().map(|&e| block.edge_map[e]).collect();
            let oracle = build_oracle_trusted(&c.graph, decompose_block(&c.graph)?);
            out.ops += oracle.build_ops();
            let c = finish_component(c.graph, vertex_map, edge_map, oracle)?;
            out.ops += c.decomposition.ops;
            record.components.push(c);
        }
        record.oracle = Some(block_oracle);
        out.blocks.push(record);
    }
    Ok(out)
}

fn finish_component(
    graph: WeightedGraph,
    vertex_map: Vec<VertexId>,
    edge_map: Vec<EdgeId>,
    oracle: DistanceOracle,
) -> Result<ComponentMcb, McbError> {
    let decomposition = run_decomposition(&graph, &oracle)?;
    let parts = extract_part_graphs(&graph, &oracle, &decomposition)
        .into_iter()
        .map(|p| {
            Ok(Part {
                faces: internal_faces(&p.graph)?,
                graph: p,
            })
        })
        .collect::<Result<Vec<_>, McbError>>()?;
    Ok(ComponentMcb {
        graph,
        vertex_map,
        edge_map,
        oracle,
        decomposition,
        parts,
    })
}

impl ImplicitMcb {
    /// Every component with its block index, in output order.
    pub fn components(&self) -> impl Iterator<Item = (usize, &ComponentMcb)> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.components.iter().map(move |c| (i, c)))
    }

    /// Every part with its component, in output order.
    pub fn parts(&self) -> impl Iterator<Item = (&ComponentMcb, &Part)> {
        self.components()
            .flat_map(|(_, c)| c.parts.iter().map(move |p| (c, p)))
    }

    pub fn cycle_count(&self) -> usize {
        self.parts().map(|(_, p)| p.faces.len()).sum::<usize>() + self.long_edges.len()
    }

    pub fn stats(&self) -> McbStats {
        let mut s = McbStats {
            n: self.n,
            m: self.m,
            long_edges: self.long_edges.len(),
            parts: 0,
            events: 0,
            cycles: self.long_edges.len(),
            total_weight: Weight::ZERO,
            implicit_size: self.long_edges.len(),
            explicit_size: 0,
        };
        for (_, c) in self.components() {
            s.events += c.decomposition.events.len();
            s.implicit_size += c.decomposition.events.len();
            s.parts += c.parts.len();
            for p in &c.parts {
                for f in &p.faces {
                    s.cycles += 1;
                    s.implicit_size += f.len();
                    s.total_weight += f.weight(&p.graph.graph);
                    s.explicit_size += f
                        .edges
                        .iter()
                        .map(|&e| match p.graph.edge_origin[e] {
                            EdgeOrigin::Original(_) => 1,
                            EdgeOrigin::Green(gi) => {
                                let ge = &c.decomposition.greens[gi];
                                c.oracle
                                    .path_key(ge.u, ge.v, ge.source_bag)
                                    .map_or(0, |k| k.hops as usize)
                            }
                        })
                        .sum::<usize>();
                }
            }
        }
        for l in &self.long_edges {
            s.total_weight += l.w + l.dist;
            s.explicit_size += 1 + l.hops as usize;
        }
        s
    }

    /// Writes one face out over input edges, replacing each green edge by
    /// the oracle's shortest path.
    pub fn expand_face(
        &self,
        g: &WeightedGraph,
        c: &ComponentMcb,
        p: &Part,
        face: &Cycle,
    ) -> Result<Cycle, McbError> {
        let k = face.len();
        let mut ring = Vec::with_capacity(k);
        for i in 0..k {
            let a = p.graph.vertex_map[face.vertices[i]];
            let b = p.graph.vertex_map[face.vertices[(i + 1) % k]];
            ring.push(c.vertex_map[a]);
            if let EdgeOrigin::Green(gi) = p.graph.edge_origin[face.edges[i]] {
                let path =
                    c.oracle
                        .extract_shortest_path(a, b, c.decomposition.greens[gi].source_bag)?;
                ring.extend(path[1..path.len() - 1].iter().map(|&x| c.vertex_map[x]));
            }
        }
        Cycle::from_vertices(g, &ring).ok_or(McbError::ExpansionNotSimple(ring[0]))
    }

    /// The cycle `{e} + shortest path` of a long edge.
    pub fn expand_long_edge(&self, g: &WeightedGraph, l: &LongEdge) -> Result<Cycle, McbError> {
        let block = &self.blocks[l.block];
        let o = block
            .oracle
            .as_ref()
            .expect("blocks with long edges keep their oracle");
        let (u, v, bag) = l.local;
        let path = o.extract_shortest_path(u, v, bag)?;
        let ring: Vec<VertexId> = path.iter().map(|&x| block.vertex_map[x]).collect();
        Cycle::from_vertices(g, &ring).ok_or(McbError::ExpansionNotSimple(l.u))
    }

    /// All basis cycles over input edges: faces in part order, then long-edge
    /// cycles. `g` must be the graph the basis was computed for.
    pub fn report_explicit(&self, g: &WeightedGraph) -> Result<Vec<Cycle>, McbError> {
        let mut out = Vec::with_capacity(self.cycle_count());
        for (c, p) in self.parts() {
            for f in &p.faces {
                out.push(self.expand_face(g, c, p, f)?);
            }
        }
        for l in &self.long_edges {
            out.push(self.expand_long_edge(g, l)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{complete_bipartite_2k, complete_graph, gen_random_partial_2tree};
    use crate::graph::cycle_space_dimension_any;
    use crate::reference::verify::verify_basis;

    fn explicit_weight(g: &WeightedGraph) -> (usize, Weight) {
        let mcb = compute_mcb(g).unwrap();
        let cycles = mcb.report_explicit(g).unwrap();
        (cycles.len(), cycles.iter().map(|c| c.weight(g)).sum())
    }

    #[test]
    fn worked_examples() {
        let tri = WeightedGraph::from_edges(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(explicit_weight(&tri), (1, Weight::from_units(3)));
        let mcb = compute_mcb(&tri).unwrap();
        assert_eq!(
            mcb.report_explicit(&tri).unwrap()[0].vertices,
            vec![0, 1, 2]
        );

        let k23 = complete_bipartite_2k(3);
        let mcb = compute_mcb(&k23).unwrap();
        let s = mcb.stats();
        assert_eq!(
            (s.cycles, s.total_weight, s.long_edges, s.parts, s.events),
            (2, Weight::from_units(8), 0, 3, 1)
        );
        let cycles = mcb.report_explicit(&k23).unwrap();
        assert!(cycles
            .iter()
            .all(|c| c.weight(&k23) == Weight::from_units(4)));
        assert_eq!(s.explicit_size, 8);

        let heavy = WeightedGraph::from_edges(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 3)]).unwrap();
        let mcb = compute_mcb(&heavy).unwrap();
        assert_eq!(mcb.long_edges.len(), 1);
        assert_eq!(mcb.parts().map(|(_, p)| p.faces.len()).sum::<usize>(), 0);
        assert_eq!(explicit_weight(&heavy), (1, Weight::from_units(5)));
        assert_eq!(mcb.stats().total_weight, Weight::from_units(5));
    }

    #[test]
    fn rejects_k4() {
        assert_eq!(
            compute_mcb(&complete_graph(4)).unwrap_err(),
            McbError::NotPartial2Tree
        );
    }

    #[test]
    fn forests_and_empty_graphs() {
        let g = WeightedGraph::from_edges(5, &[(0, 1, 1), (1, 2, 1), (3, 4, 1)]).unwrap();
        let mcb = compute_mcb(&g).unwrap();
        assert_eq!(mcb.cycle_count(), 0);
        assert!(compute_mcb(&WeightedGraph::new(0, 0))
            .unwrap()
            .report_explicit(&WeightedGraph::new(0, 0))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn random_instances_verify() {
        for seed in 0..200 {
            let g = gen_random_partial_2tree(11, 0.15, (1, 20), seed).unwrap();
            let mcb = compute_mcb(&g).unwrap();
            let cycles = mcb.report_explicit(&g).unwrap();
            let sets: Vec<_> = cycles.iter().map(|c| c.edges.clone()).collect();
            let report = verify_basis(&g, &sets, 14);
            assert!(report.passed(), "seed {seed}: {report:?}");
            let s = mcb.stats();
            assert_eq!(s.cycles, cycle_space_dimension_any(&g));
            assert_eq!(s.total_weight, report.total_weight, "seed {seed}");
            assert_eq!(
                s.explicit_size,
                sets.iter().map(Vec::len).sum::<usize>(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn zero_weights() {
        for seed in 0..100 {
            let g = gen_random_partial_2tree(10, 0.1, (0, 2), 1000 + seed).unwrap();
            let mcb = compute_mcb(&g).unwrap();
            let sets: Vec<_> = mcb
                .report_explicit(&g)
                .unwrap()
                .iter()
                .map(|c| c.edges.clone())
                .collect();
            let report = verify_basis(&g, &sets, 14);
            assert!(report.passed(), "seed {seed}: {report:?}");
        }
    }
}
