//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails. Run with `cargo test --release -p mcb-core --test acceptance`
//! for representative timings.

use std::process::ExitCode;
use std::time::Instant;

use mcb_core::assembly::ComponentMcb;
use mcb_core::biconnected::biconnected_components;
use mcb_core::decomposer::parts_are_outerplanar;
use mcb_core::generator::{
    complete_bipartite_2k, gen_random_outerplanar, gen_random_partial_2tree,
};
use mcb_core::graph::cycle_space_dimension_any;
use mcb_core::oracle::build_oracle;
use mcb_core::outerplanar::internal_faces;
use mcb_core::reference::dijkstra::{dijkstra, make_tight};
use mcb_core::reference::gf2::Gf2Basis;
use mcb_core::reference::horton::horton_weight;
use mcb_core::reference::lsp::{enumerate_lsc, induced_cycles, LexOrder};
use mcb_core::treedec::{check_decomposition, suitable_decomposition};
use mcb_core::{compute_mcb, Cycle, EdgeId, Weight, WeightedGraph};

const MINIMALITY_INSTANCES: u64 = 500;
const MINIMALITY_MAX_N: usize = 12;
const DIMENSION_INSTANCES: u64 = 1000;
const DIMENSION_MAX_N: usize = 2000;
const FACE_INSTANCES: u64 = 200;
const FACE_MAX_N: usize = 12;
const ORACLE_INSTANCES: u64 = 200;
const ORACLE_MAX_N: usize = 500;
const STRUCTURE_INSTANCES: u64 = 300;
const TIGHTNESS_MAX_N: usize = 500;
/// Parts up to this size are compared with brute-force induced cycles.
const INDUCED_MAX_N: usize = 12;
const SCALING_SIZES: [usize; 3] = [10_000, 100_000, 1_000_000];
/// Timing rounds; each round runs every size once, so slow drift of the
/// machine hits all sizes alike.
const SCALING_ROUNDS: usize = 5;
/// Largest allowed wall-time growth per tenfold increase of n.
const SCALING_MAX_RATIO: f64 = 15.0;
/// Implicit size bound `c * n`; measured around 1.65 on these instances.
const IMPLICIT_PER_VERTEX: f64 = 2.0;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

/// Size for the `i`-th of `count` instances, spread evenly over `lo..=hi`.
fn spread(i: u64, count: u64, lo: usize, hi: usize) -> usize {
    lo + ((hi - lo) as u64 * i / (count - 1).max(1)) as usize
}

fn explicit_cycles(g: &WeightedGraph) -> Result<Vec<Cycle>, String> {
    let mcb = compute_mcb(g).map_err(|e| e.to_string())?;
    mcb.report_explicit(g).map_err(|e| e.to_string())
}

fn minimality() -> Outcome {
    let mut failures = Vec::new();
    let mut cyclic = 0;
    for seed in 0..MINIMALITY_INSTANCES {
        let n = 3 + (seed as usize % (MINIMALITY_MAX_N - 2));
        let p = [0.0, 0.1, 0.2, 0.3][(seed / 10 % 4) as usize];
        let g = gen_random_partial_2tree(n, p, (1, 20), seed).expect("valid parameters");
        let ours: Result<Weight, String> =
            explicit_cycles(&g).map(|cs| cs.iter().map(|c| c.weight(&g)).sum());
        let reference = horton_weight(&g, MINIMALITY_MAX_N).map_err(|e| e.to_string());
        if cycle_space_dimension_any(&g) > 0 {
            cyclic += 1;
        }
        if ours.is_err() || ours != reference {
            failures.push(format!("seed {seed}: {ours:?} vs {reference:?}"));
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{} instances (n<=12, {cyclic} with cycles), exact weight match; {} mismatches {}",
            MINIMALITY_INSTANCES,
            failures.len(),
            failures.first().map(String::as_str).unwrap_or("")
        ),
    )
}

fn dimension_and_rank() -> Outcome {
    let mut failures = Vec::new();
    let mut total_cycles = 0usize;
    for i in 0..DIMENSION_INSTANCES {
        let n = spread(i, DIMENSION_INSTANCES, 10, DIMENSION_MAX_N);
        let g = gen_random_partial_2tree(n, 0.2, (1, 20), 10_000 + i).expect("valid parameters");
        let cycles = match explicit_cycles(&g) {
            Ok(c) => c,
            Err(e) => {
                failures.push(format!("instance {i}: {e}"));
                continue;
            }
        };
        let (_, components) = g.component_labels();
        let expected = g.m() + components - g.n();
        let mut basis = Gf2Basis::new(g.m());
        let simple = cycles
            .iter()
            .all(|c| Cycle::from_edges(&g, &c.edges).is_some());
        for c in &cycles {
            basis.insert_edges(&c.edges);
        }
        total_cycles += cycles.len();
        if !simple || cycles.len() != expected || basis.rank() != expected {
            failures.push(format!(
                "instance {i}: count {} rank {} expected {expected} simple {simple}",
                cycles.len(),
                basis.rank()
            ));
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{DIMENSION_INSTANCES} instances (n<={DIMENSION_MAX_N}, {total_cycles} cycles), count = m-n+c = GF(2) rank; {} failures {}",
            failures.len(),
            failures.first().map(String::as_str).unwrap_or("")
        ),
    )
}

fn edge_sets(cycles: &[Cycle]) -> Vec<Vec<EdgeId>> {
    let mut sets: Vec<_> = cycles.iter().map(Cycle::edge_set).collect();
    sets.sort();
    sets
}

fn face_equality() -> Outcome {
    let mut failures = Vec::new();
    let mut faces_total = 0;
    for seed in 0..FACE_INSTANCES {
        let n = 3 + (seed as usize % (FACE_MAX_N - 2));
        let raw = gen_random_outerplanar(n, 0.2, (1, 20), 20_000 + seed).expect("valid parameters");
        let g = make_tight(&raw);
        let faces = internal_faces(&g)
            .map(|f| edge_sets(&f))
            .map_err(|e| e.to_string());
        let lsc = enumerate_lsc(&g, &LexOrder::random(g.n(), seed))
            .map(|c| edge_sets(&c))
            .map_err(|e| e.to_string());
        let induced = induced_cycles(&g)
            .map(|c| edge_sets(&c))
            .map_err(|e| e.to_string());
        if let Ok(f) = &faces {
            faces_total += f.len();
        }
        if faces.is_err() || faces != lsc || faces != induced {
            failures.push(format!("seed {seed}"));
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{FACE_INSTANCES} tight outerplanar instances (n<={FACE_MAX_N}, {faces_total} faces), faces = LSC = induced cycles; {} failures {}",
            failures.len(),
            failures.first().map(String::as_str).unwrap_or("")
        ),
    )
}

/// Checks every in-bag pair of every block of `g`; returns (pairs checked, first failure).
fn check_block_oracles(g: &WeightedGraph) -> Result<usize, String> {
    let mut pairs = 0;
    for comp in biconnected_components(g).components {
        if comp.is_trivial() {
            continue;
        }
        let b = g.subgraph_on(comp.vertices, &comp.edges).graph;
        let t = suitable_decomposition(&b).map_err(|e| e.to_string())?;
        let o = build_oracle(&b, t).map_err(|e| e.to_string())?;
        let dist: Vec<Vec<Weight>> = (0..b.n()).map(|s| dijkstra(&b, s)).collect();
        for (x, bag) in o.tree().bags().iter().enumerate() {
            for (u, v) in [(bag[0], bag[1]), (bag[0], bag[2]), (bag[1], bag[2])] {
                pairs += 1;
                let d = o.distance(u, v, x).map_err(|e| e.to_string())?;
                if d != dist[u][v] {
                    return Err(format!(
                        "bag {x} pair ({u},{v}): oracle {d:?}, dijkstra {:?}",
                        dist[u][v]
                    ));
                }
                let path = o
                    .extract_shortest_path(u, v, x)
                    .map_err(|e| e.to_string())?;
                let mut seen = path.clone();
                seen.sort_unstable();
                seen.dedup();
                let steps: Option<Weight> = path
                    .windows(2)
                    .map(|w| b.edge_between(w[0], w[1]).map(|e| b.edge(e).w))
                    .sum();
                let ends_ok = path.first() == Some(&u) && path.last() == Some(&v);
                if !ends_ok || seen.len() != path.len() || steps != Some(d) {
                    return Err(format!("bag {x} pair ({u},{v}): bad path {path:?}"));
                }
            }
        }
    }
    Ok(pairs)
}

fn oracle_correctness() -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for i in 0..ORACLE_INSTANCES {
        let n = spread(i, ORACLE_INSTANCES, 5, ORACLE_MAX_N);
        // odd instances use small weights including zero, to exercise ties
        let weights = if i % 2 == 0 { (1, 20) } else { (0, 3) };
        let g = gen_random_partial_2tree(n, 0.15, weights, 30_000 + i).expect("valid parameters");
        match check_block_oracles(&g) {
            Ok(k) => pairs += k,
            Err(e) => failures.push(format!("instance {i}: {e}")),
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{ORACLE_INSTANCES} instances (n<={ORACLE_MAX_N}, {pairs} in-bag pairs), distances and path weights = Dijkstra; {} failures {}",
            failures.len(),
            failures.first().map(String::as_str).unwrap_or("")
        ),
    )
}

fn worked_examples() -> Outcome {
    let k23 = complete_bipartite_2k(3);
    let k23_ok = explicit_cycles(&k23).is_ok_and(|cs| {
        cs.len() == 2
            && cs.iter().all(|c| c.weight(&k23) == Weight::from_units(4))
            && cs.iter().map(|c| c.weight(&k23)).sum::<Weight>() == Weight::from_units(8)
    });
    let tri =
        WeightedGraph::from_edges(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 3)]).expect("valid triangle");
    let tri_ok = compute_mcb(&tri).is_ok_and(|mcb| {
        let cycles = mcb.report_explicit(&tri).unwrap_or_default();
        mcb.long_edges.len() == 1
            && cycles.len() == 1
            && cycles[0].weight(&tri) == Weight::from_units(5)
    });
    Outcome::new(
        k23_ok && tri_ok,
        format!("unit K2,3 -> 2 cycles of weight 4 (total 8): {k23_ok}; triangle (1,1,3) -> one cycle of weight 5 via its long edge: {tri_ok}"),
    )
}

fn scaling() -> Outcome {
    let graphs: Vec<_> = SCALING_SIZES
        .iter()
        .map(|&n| gen_random_partial_2tree(n, 0.2, (1, 20), 0).expect("valid parameters"))
        .collect();
    let mut times = vec![Vec::with_capacity(SCALING_ROUNDS); graphs.len()];
    let mut stats = vec![None; graphs.len()];
    for _ in 0..SCALING_ROUNDS {
        for (i, g) in graphs.iter().enumerate() {
            let start = Instant::now();
            let mcb = compute_mcb(g);
            times[i].push(start.elapsed().as_secs_f64() * 1e3);
            stats[i] = mcb.ok().map(|m| m.stats());
        }
    }
    let mut rows = Vec::new();
    let mut pass = true;
    let mut last: Option<f64> = None;
    for ((g, times), s) in graphs.iter().zip(&mut times).zip(stats) {
        let Some(s) = s else {
            return Outcome::new(false, format!("pipeline failed at n={}", g.n()));
        };
        times.sort_by(f64::total_cmp);
        let t = times[times.len() / 2];
        let per_vertex = s.implicit_size as f64 / g.n() as f64;
        pass &= per_vertex <= IMPLICIT_PER_VERTEX;
        let ratio = last.map(|p| t / p);
        if let Some(r) = ratio {
            pass &= r <= SCALING_MAX_RATIO;
        }
        rows.push(format!(
            "n={} {:.1}ms{} implicit={} ({:.2}n) explicit={}",
            g.n(),
            t,
            ratio.map_or(String::new(), |r| format!(" x{r:.2}")),
            s.implicit_size,
            per_vertex,
            s.explicit_size
        ));
        last = Some(t);
    }
    Outcome::new(
        pass,
        format!(
            "median of {SCALING_ROUNDS} interleaved rounds, growth <= {SCALING_MAX_RATIO} per 10x, implicit <= {IMPLICIT_PER_VERTEX}n: {}",
            rows.join("; ")
        ),
    )
}

fn check_component(c: &ComponentMcb, tightness: bool) -> Result<(), String> {
    check_decomposition(&c.graph, c.oracle.tree())
        .map_err(|e| format!("component decomposition: {e}"))?;
    if !parts_are_outerplanar(&c.oracle, &c.decomposition) {
        return Err("a part holds a K2,3 separator".into());
    }
    for (pi, p) in c.parts.iter().enumerate() {
        let pg = &p.graph.graph;
        // a successful sweep certifies an outer ring whose chords do not cross
        let faces = internal_faces(pg).map_err(|e| format!("part {pi}: {e}"))?;
        if faces.len() != cycle_space_dimension_any(pg) {
            return Err(format!(
                "part {pi}: {} faces, dimension {}",
                faces.len(),
                cycle_space_dimension_any(pg)
            ));
        }
        if pg.n() <= INDUCED_MAX_N {
            let induced = induced_cycles(pg).map_err(|e| e.to_string())?;
            if edge_sets(&faces) != edge_sets(&induced) {
                return Err(format!("part {pi}: faces differ from the induced cycles"));
            }
        }
        if tightness {
            for s in 0..pg.n() {
                let dist = dijkstra(pg, s);
                for e in pg.incident(s) {
                    let r = pg.edge(e);
                    if r.w != dist[r.other(s)] {
                        return Err(format!("part {pi}: edge {e} is not tight"));
                    }
                }
            }
        }
    }
    for (ei, ev) in c.decomposition.events.iter().enumerate() {
        let Some(j) = ev.j else { continue };
        let part = &c.parts[c.decomposition.part_of_bag[ev.bag_at(j)]].graph;
        let (Ok(u), Ok(v)) = (
            part.vertex_map.binary_search(&ev.u),
            part.vertex_map.binary_search(&ev.v),
        ) else {
            continue;
        };
        let shared = biconnected_components(&part.graph)
            .components
            .iter()
            .any(|b| {
                !b.is_trivial()
                    && b.vertices.binary_search(&u).is_ok()
                    && b.vertices.binary_search(&v).is_ok()
            });
        if shared {
            return Err(format!(
                "event {ei}: part j has a cycle through both separator vertices"
            ));
        }
    }
    Ok(())
}

fn check_structure(g: &WeightedGraph) -> Result<usize, String> {
    let mcb = compute_mcb(g).map_err(|e| e.to_string())?;
    let tightness = g.n() <= TIGHTNESS_MAX_N;
    let mut parts = 0;
    for block in &mcb.blocks {
        if let Some(o) = &block.oracle {
            // blocks are induced subgraphs on their vertex sets
            let local = |x: usize| block.vertex_map.binary_search(&x).ok();
            let mut b = WeightedGraph::new(block.vertex_map.len(), g.scale());
            for e in g.edges() {
                if let (Some(u), Some(v)) = (local(e.u), local(e.v)) {
                    b.add_edge(u, v, e.w, e.kind)
                        .expect("copy of a simple graph");
                }
            }
            check_decomposition(&b, o.tree()).map_err(|e| format!("block decomposition: {e}"))?;
        }
        for c in &block.components {
            check_component(c, tightness)?;
            parts += c.parts.len();
        }
    }
    Ok(parts)
}

fn structural() -> Outcome {
    let mut failures = Vec::new();
    let mut parts = 0;
    let sizes = (0..STRUCTURE_INSTANCES)
        .map(|i| (i, spread(i, STRUCTURE_INSTANCES, 5, TIGHTNESS_MAX_N)))
        .chain((0..5).map(|i| (STRUCTURE_INSTANCES + i, 20_000)));
    for (i, n) in sizes {
        let weights = if i % 3 == 2 { (0, 4) } else { (1, 20) };
        let g = gen_random_partial_2tree(n, 0.15, weights, 40_000 + i).expect("valid parameters");
        match check_structure(&g) {
            Ok(k) => parts += k,
            Err(e) => failures.push(format!("instance {i} (n={n}): {e}")),
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{} instances ({parts} parts): decompositions valid, parts outerplanar with faces = induced cycles (n<=12), parts tight (n<={TIGHTNESS_MAX_N}), part j separates each event pair; {} failures {}",
            STRUCTURE_INSTANCES + 5,
            failures.len(),
            failures.first().map(String::as_str).unwrap_or("")
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 minimality vs Horton", minimality),
        ("2 dimension and independence", dimension_and_rank),
        ("3 faces = LSC = induced cycles", face_equality),
        ("4 distance oracle vs Dijkstra", oracle_correctness),
        ("5 worked examples", worked_examples),
        ("6 linear scaling", scaling),
        ("7 structural suite", structural),
    ];
    let mut all = true;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        all &= outcome.pass;
        println!(
            "{} criterion {name} [{:.1}s]: {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            outcome.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
