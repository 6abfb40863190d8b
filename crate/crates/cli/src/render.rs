//! Text and JSON renderings of a basis.
//!
//! Implicit text grammar:
//!
//! ```text
//! PART <i> n=<n> m=<m>
//! G <u> <v> <w>                      green edges of the part
//! f <k> <v1> .. <vk> [G <u> <v>]* w=<w>
//! TRACE
//! s u=<u> v=<v> k=<k> edge=<0|1> w=<dist|-> j=<idx|->
//! LONG
//! l <u> <v> w=<edge weight> d=<distance>
//! ```
//!
//! Explicit cycles are written as `c <k> <v1> .. <vk> w=<w>`.

use std::io::{self, Write};

use mcb_core::assembly::{ComponentMcb, Part};
use mcb_core::decomposer::{EdgeOrigin, SeparatorEvent};
use mcb_core::{Cycle, EdgeKind, ImplicitMcb, McbStats, WeightedGraph};
use serde::Serialize;

fn face_greens(c: &ComponentMcb, p: &Part, f: &Cycle) -> Vec<(usize, usize)> {
    let k = f.len();
    (0..k)
        .filter(|&i| matches!(p.graph.edge_origin[f.edges[i]], EdgeOrigin::Green(_)))
        .map(|i| {
            (
                c.global_vertex(&p.graph, f.vertices[i]),
                c.global_vertex(&p.graph, f.vertices[(i + 1) % k]),
            )
        })
        .collect()
}

fn part_greens<'a>(
    c: &'a ComponentMcb,
    p: &'a Part,
) -> impl Iterator<Item = (usize, usize, mcb_core::Weight)> + 'a {
    p.graph
        .graph
        .edges()
        .iter()
        .filter(|e| e.kind == EdgeKind::Green)
        .map(move |e| {
            (
                c.global_vertex(&p.graph, e.u),
                c.global_vertex(&p.graph, e.v),
                e.w,
            )
        })
}

fn event_fields(c: &ComponentMcb, e: &SeparatorEvent) -> (usize, usize) {
    let (u, v) = (c.vertex_map[e.u], c.vertex_map[e.v]);
    (u.min(v), u.max(v))
}

pub fn implicit_text(mcb: &ImplicitMcb, out: &mut impl Write) -> io::Result<()> {
    let scale = mcb.scale;
    for (i, (c, p)) in mcb.parts().enumerate() {
        writeln!(
            out,
            "PART {} n={} m={}",
            i,
            p.graph.graph.n(),
            p.graph.graph.m()
        )?;
        for (u, v, w) in part_greens(c, p) {
            writeln!(out, "G {} {} {}", u, v, w.display(scale))?;
        }
        for f in &p.faces {
            write!(out, "f {}", f.len())?;
            for &x in &f.vertices {
                write!(out, " {}", c.global_vertex(&p.graph, x))?;
            }
            for (u, v) in face_greens(c, p, f) {
                write!(out, " G {u} {v}")?;
            }
            writeln!(out, " w={}", f.weight(&p.graph.graph).display(scale))?;
        }
    }
    writeln!(out, "TRACE")?;
    for (_, c) in mcb.components() {
        for e in &c.decomposition.events {
            let (u, v) = event_fields(c, e);
            let w = e
                .path_weight
                .map_or("-".to_string(), |w| w.display(scale).to_string());
            let j = e.j.map_or("-".to_string(), |j| j.to_string());
            writeln!(
                out,
                "s u={} v={} k={} edge={} w={} j={}",
                u,
                v,
                e.k(),
                u8::from(e.had_edge),
                w,
                j
            )?;
        }
    }
    writeln!(out, "LONG")?;
    for l in &mcb.long_edges {
        writeln!(
            out,
            "l {} {} w={} d={}",
            l.u.min(l.v),
            l.u.max(l.v),
            l.w.display(scale),
            l.dist.display(scale)
        )?;
    }
    Ok(())
}

pub fn explicit_text(g: &WeightedGraph, cycles: &[Cycle], out: &mut impl Write) -> io::Result<()> {
    for c in cycles {
        write!(out, "c {}", c.len())?;
        for v in &c.vertices {
            write!(out, " {v}")?;
        }
        writeln!(out, " w={}", c.weight(g).display(g.scale()))?;
    }
    Ok(())
}

pub fn stats_text(s: &McbStats, scale: u32, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "STATS")?;
    writeln!(out, "n={}", s.n)?;
    writeln!(out, "m={}", s.m)?;
    writeln!(out, "long_edges={}", s.long_edges)?;
    writeln!(out, "parts={}", s.parts)?;
    writeln!(out, "cycles={}", s.cycles)?;
    writeln!(out, "total_weight={}", s.total_weight.display(scale))?;
    writeln!(out, "implicit_size={}", s.implicit_size)?;
    writeln!(out, "explicit_size={}", s.explicit_size)
}

pub fn decomposition_text(mcb: &ImplicitMcb, out: &mut impl Write) -> io::Result<()> {
    let scale = mcb.scale;
    for (i, (block, c)) in mcb.components().enumerate() {
        let t = c.oracle.tree();
        writeln!(
            out,
            "COMPONENT {} block={} n={} m={} bags={}",
            i,
            block,
            c.graph.n(),
            c.graph.m(),
            t.len()
        )?;
        write!(out, "{}", t.dump_with(|v| c.vertex_map[v]))?;
        for e in &c.decomposition.events {
            let (u, v) = event_fields(c, e);
            let w = e
                .path_weight
                .map_or("-".to_string(), |w| w.display(scale).to_string());
            let j = e.j.map_or("-".to_string(), |j| j.to_string());
            writeln!(
                out,
                "s u={} v={} k={} edge={} w={} j={}",
                u,
                v,
                e.k(),
                u8::from(e.had_edge),
                w,
                j
            )?;
        }
        for (pi, p) in c.parts.iter().enumerate() {
            write!(out, "part {} bags", pi)?;
            for b in &p.graph.bags {
                write!(out, " {b}")?;
            }
            writeln!(out, " faces={}", p.faces.len())?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonGreen {
    u: usize,
    v: usize,
    w: String,
}

#[derive(Serialize)]
struct JsonFace {
    k: usize,
    vertices: Vec<usize>,
    green: Vec<[usize; 2]>,
    w: String,
}

#[derive(Serialize)]
struct JsonPart {
    index: usize,
    n: usize,
    m: usize,
    green_edges: Vec<JsonGreen>,
    faces: Vec<JsonFace>,
}

#[derive(Serialize)]
struct JsonEvent {
    u: usize,
    v: usize,
    k: usize,
    edge: bool,
    w: Option<String>,
    j: Option<usize>,
}

#[derive(Serialize)]
struct JsonLong {
    u: usize,
    v: usize,
    w: String,
    d: String,
}

#[derive(Serialize)]
struct JsonCycle {
    k: usize,
    vertices: Vec<usize>,
    w: String,
}

#[derive(Serialize)]
struct JsonStats {
    n: usize,
    m: usize,
    long_edges: usize,
    parts: usize,
    cycles: usize,
    total_weight: String,
    implicit_size: usize,
    explicit_size: usize,
}

#[derive(Serialize)]
pub struct JsonDocument {
    parts: Vec<JsonPart>,
    trace: Vec<JsonEvent>,
    long: Vec<JsonLong>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycles: Option<Vec<JsonCycle>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<JsonStats>,
}

pub fn json_document(
    g: &WeightedGraph,
    mcb: &ImplicitMcb,
    explicit: Option<&[Cycle]>,
    stats: Option<&McbStats>,
) -> JsonDocument {
    let scale = mcb.scale;
    let ws = |w: mcb_core::Weight| w.display(scale).to_string();
    let parts = mcb
        .parts()
        .enumerate()
        .map(|(index, (c, p))| JsonPart {
            index,
            n: p.graph.graph.n(),
            m: p.graph.graph.m(),
            green_edges: part_greens(c, p)
                .map(|(u, v, w)| JsonGreen { u, v, w: ws(w) })
                .collect(),
            faces: p
                .faces
                .iter()
                .map(|f| JsonFace {
                    k: f.len(),
                    vertices: f
                        .vertices
                        .iter()
                        .map(|&x| c.global_vertex(&p.graph, x))
                        .collect(),
                    green: face_greens(c, p, f)
                        .into_iter()
                        .map(|(u, v)| [u, v])
                        .collect(),
                    w: ws(f.weight(&p.graph.graph)),
                })
                .collect(),
        })
        .collect();
    let trace = mcb
        .components()
        .flat_map(|(_, c)| {
            c.decomposition.events.iter().map(move |e| {
                let (u, v) = event_fields(c, e);
                JsonEvent {
                    u,
                    v,
                    k: e.k(),
                    edge: e.had_edge,
                    w: e.path_weight.map(ws),
                    j: e.j,
                }
            })
        })
        .collect();
    let long = mcb
        .long_edges
        .iter()
        .map(|l| JsonLong {
            u: l.u.min(l.v),
            v: l.u.max(l.v),
            w: ws(l.w),
            d: ws(l.dist),
        })
        .collect();
    let cycles = explicit.map(|cs| {
        cs.iter()
            .map(|c| JsonCycle {
                k: c.len(),
                vertices: c.vertices.clone(),
                w: ws(c.weight(g)),
            })
            .collect()
    });
    let stats = stats.map(|s| JsonStats {
        n: s.n,
        m: s.m,
        long_edges: s.long_edges,
        parts: s.parts,
        cycles: s.cycles,
        total_weight: ws(s.total_weight),
        implicit_size: s.implicit_size,
        explicit_size: s.explicit_size,
    });
    JsonDocument {
        parts,
        trace,
        long,
        cycles,
        stats,
    }
}
