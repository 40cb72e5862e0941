use crate::error::Result;
use crate::graph::{edge_triangle_counts, set_distances, vertex_triangle_counts, EdgeSet, Graph, VertexSet};
use crate::properties::{ProblemSpec, Variant};

use super::KernelTrace;

/// Removes, to a fixpoint, every vertex that lies in no triangle.
pub fn rr1_vertex_triangle_prune(g: &Graph) -> (Graph, KernelTrace) {
    let n = g.n();
    let mut alive = VertexSet::full(n);
    let mut trace = KernelTrace::default();
    loop {
        let counts = vertex_triangle_counts(g, Some(&alive));
        let drop: Vec<_> = alive.iter().filter(|&v| counts[v] == 0).collect();
        if drop.is_empty() {
            break;
        }
        trace.per_round.push(drop.len());
        for v in drop {
            alive.remove(v);
            trace.removed_vertices.push(v);
        }
    }
    trace.removed_vertices.sort_unstable();
    let mut dead = VertexSet::full(n);
    dead.difference_with(&alive);
    (g.isolate(&dead), trace)
}

/// Removes, to a fixpoint, every edge that lies in no triangle. Vertices
/// left without edges stay in the graph and are listed in the trace.
pub fn rr2_edge_triangle_prune(g: &Graph) -> (Graph, KernelTrace) {
    let mut live = EdgeSet::all(g);
    let mut trace = KernelTrace::default();
    loop {
        let drop: Vec<_> = edge_triangle_counts(g, None, Some(&live))
            .into_iter()
            .filter(|&(_, c)| c == 0)
            .map(|(e, _)| e)
            .collect();
        if drop.is_empty() {
            break;
        }
        trace.per_round.push(drop.len());
        for (u, v) in drop {
            live.remove(u, v);
            trace.removed_edges.push((u, v));
        }
    }
    trace.removed_edges.sort_unstable();
    let reduced = g.with_edges(&live);
    trace.isolated_vertices = reduced
        .vertices()
        .filter(|&v| reduced.degree(v) == 0 && g.degree(v) > 0)
        .collect();
    (reduced, trace)
}

/// Removes, to a fixpoint, every vertex at distance more than `s` from some
/// seed. Losing a seed marks the instance infeasible.
pub fn rr3_seed_distance_prune(g: &Graph, seeds: &VertexSet, s: usize) -> (Graph, KernelTrace) {
    let n = g.n();
    let mut alive = VertexSet::full(n);
    let mut trace = KernelTrace::default();
    loop {
        let mut keep = alive.clone();
        for w in seeds.iter() {
            let dist = set_distances(g, &VertexSet::singleton(n, w), Some(&alive));
            for v in alive.iter() {
                if dist[v].is_none_or(|d| d > s) {
                    keep.remove(v);
                }
            }
        }
        let drop: Vec<_> = alive.iter().filter(|&v| !keep.contains(v)).collect();
        if drop.is_empty() {
            break;
        }
        trace.per_round.push(drop.len());
        trace.removed_vertices.extend(drop);
        alive = keep;
        if !seeds.is_subset(&alive) {
            trace.infeasible = true;
            break;
        }
    }
    trace.removed_vertices.sort_unstable();
    let mut dead = VertexSet::full(n);
    dead.difference_with(&alive);
    (g.isolate(&dead), trace)
}

/// Applies the rule that matches the variant (none for plain clubs).
pub fn reduce(g: &Graph, spec: &ProblemSpec) -> Result<(Graph, KernelTrace)> {
    spec.validate(Some(g.n()))?;
    Ok(match spec.variant {
        Variant::VertexTriangle => rr1_vertex_triangle_prune(g),
        Variant::EdgeTriangle => rr2_edge_triangle_prune(g),
        Variant::Seeded => rr3_seed_distance_prune(g, &spec.seed_set(g.n())?, spec.s),
        Variant::Club => (g.clone(), KernelTrace::default()),
    })
}
