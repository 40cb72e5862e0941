//! Exact maximum / decision search for all variants, plus the desk-scale
//! oracles used to cross-check it.

mod oracle;
mod search;

pub use oracle::{brute_force_max, clique_max, BRUTE_FORCE_LIMIT, CLIQUE_LIMIT};

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::dense::DenseGraph;
use crate::error::{Error, Result};
use crate::graph::{bfs_distances, EdgeSet, Graph, Vertex, VertexSet};
use crate::kernel::{
    et_shortcut, reduce, seeded_shortcut, vt_shortcut, KernelTrace,
};
use crate::properties::{check_certificate, Certificate, ProblemSpec, Variant};

use search::{Limits, Search, SearchState};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Worker threads for universe solving; `None` or 1 runs sequentially.
    /// Results do not depend on this value.
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubinstanceStats {
    /// Center vertex; `None` for the single seeded universe.
    pub center: Option<Vertex>,
    pub universe_size: usize,
    pub nodes: u64,
    /// Size of the best solution found in this universe (0 if none beat
    /// the bound it was searched under).
    pub best_size: usize,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub best: Option<Certificate>,
    pub optimum_size: usize,
    pub nodes_explored: u64,
    pub used_shortcut: bool,
    pub per_subinstance_stats: Vec<SubinstanceStats>,
    pub trace: KernelTrace,
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub yes: bool,
    /// A solution of size ≥ k when `yes`.
    pub certificate: Option<Certificate>,
    pub nodes_explored: u64,
    pub used_shortcut: bool,
    pub per_subinstance_stats: Vec<SubinstanceStats>,
    pub trace: KernelTrace,
}

pub fn solve_max(g: &Graph, spec: &ProblemSpec) -> Result<SolveResult> {
    solve_max_with(g, spec, &SolveOptions::default())
}

pub fn solve_max_with(g: &Graph, spec: &ProblemSpec, opts: &SolveOptions) -> Result<SolveResult> {
    let out = drive(g, spec, None, opts)?;
    Ok(SolveResult {
        optimum_size: out.best.as_ref().map_or(0, Certificate::len),
        best: out.best,
        nodes_explored: out.nodes,
        used_shortcut: out.used_shortcut,
        per_subinstance_stats: out.stats,
        trace: out.trace,
    })
}

pub fn solve_decision(g: &Graph, spec: &ProblemSpec) -> Result<Decision> {
    solve_decision_with(g, spec, &SolveOptions::default())
}

pub fn solve_decision_with(g: &Graph, spec: &ProblemSpec, opts: &SolveOptions) -> Result<Decision> {
    let out = drive(g, spec, Some(spec.k), opts)?;
    let yes = out.best.as_ref().is_some_and(|c| c.len() >= spec.k);
    Ok(Decision {
        yes,
        certificate: out.best.filter(|_| yes),
        nodes_explored: out.nodes,
        used_shortcut: out.used_shortcut,
        per_subinstance_stats: out.stats,
        trace: out.trace,
    })
}

struct Outcome {
    best: Option<Certificate>,
    nodes: u64,
    used_shortcut: bool,
    stats: Vec<SubinstanceStats>,
    trace: KernelTrace,
}

struct Universe {
    center: Option<Vertex>,
    members: Vec<Vertex>,
    forced: Vec<usize>,
}

struct UniverseResult {
    best: Option<SearchState>,
    nodes: u64,
    ran: bool,
}

/// The shortcut lemmas that hold for this spec, run on the reduced graph.
fn try_shortcut(reduced: &Graph, spec: &ProblemSpec) -> Result<Option<Certificate>> {
    let (k, s) = (spec.k, spec.s);
    match spec.variant {
        Variant::VertexTriangle if spec.threshold() == 1 && s >= 4 => vt_shortcut(reduced, k, s),
        Variant::EdgeTriangle if spec.threshold() == 1 => et_shortcut(reduced, k, s),
        Variant::Seeded if crate::kernel::is_clique(reduced, &spec.seeds) => {
            Ok(seeded_shortcut(reduced, &spec.seed_set(reduced.n())?, k, s)?.map(|(c, _)| c))
        }
        _ => Ok(None),
    }
}

fn universes(reduced: &Graph, spec: &ProblemSpec, trace: &KernelTrace) -> Vec<Universe> {
    let n = reduced.n();
    let alive = trace.alive(n);
    if spec.variant == Variant::Seeded {
        let members = alive.to_vec();
        let forced = spec
            .seeds
            .iter()
            .map(|w| members.binary_search(w).expect("seeds survive a feasible reduction"))
            .collect();
        return vec![Universe {
            center: None,
            members,
            forced,
        }];
    }
    // solved-center elimination: universe i avoids centers 0..i
    let mut open = alive;
    let mut out = Vec::new();
    for c in reduced.vertices() {
        if !open.contains(c) {
            continue;
        }
        let eligible = match spec.variant {
            Variant::VertexTriangle | Variant::EdgeTriangle => reduced.degree(c) > 0,
            _ => true,
        };
        if eligible {
            let dist = bfs_distances(reduced, c, Some(&open), None);
            let members: Vec<Vertex> = (0..n).filter(|&v| dist[v].is_some_and(|d| d <= spec.s)).collect();
            let forced = vec![members.binary_search(&c).expect("center is in its ball")];
            out.push(Universe {
                center: Some(c),
                members,
                forced,
            });
        }
        open.remove(c);
    }
    out
}

fn solve_universe(
    reduced: &Graph,
    spec: &ProblemSpec,
    u: &Universe,
    floor: usize,
    limits: Limits<'_>,
) -> UniverseResult {
    let dg = DenseGraph::induced(reduced, &u.members);
    let mut search = Search::new(&dg, spec.variant, spec.s, spec.threshold(), floor, limits);
    search.run(&u.forced);
    UniverseResult {
        best: search.best,
        nodes: search.nodes,
        ran: true,
    }
}

fn to_certificate(g: &Graph, u: &Universe, st: &SearchState) -> Result<Certificate> {
    let n = g.n();
    let vertices = VertexSet::from_members(n, st.candidate.ones().map(|i| u.members[i]))?;
    Ok(match &st.live {
        Some(live) => {
            let edges: EdgeSet = live.edges().map(|(a, b)| (u.members[a], u.members[b])).collect();
            Certificate::with_edges(vertices, edges)
        }
        None => Certificate::new(vertices),
    })
}

fn drive(g: &Graph, spec: &ProblemSpec, target: Option<usize>, opts: &SolveOptions) -> Result<Outcome> {
    spec.validate(Some(g.n()))?;
    let (reduced, trace) = reduce(g, spec)?;
    let mut out = Outcome {
        best: None,
        nodes: 0,
        used_shortcut: false,
        stats: Vec::new(),
        trace,
    };
    if out.trace.infeasible || g.n() == 0 {
        return Ok(out);
    }
    let satisfied = |best: &Option<Certificate>| target.is_some_and(|k| best.as_ref().is_some_and(|c| c.len() >= k));

    // singletons: a lone vertex is a 1-club and vacuously edge-triangle
    if matches!(spec.variant, Variant::Club | Variant::EdgeTriangle) {
        let v = out.trace.alive(g.n()).first().expect("graph is non-empty");
        out.best = Some(match spec.variant {
            Variant::EdgeTriangle => Certificate::with_edges(VertexSet::singleton(g.n(), v), EdgeSet::new()),
            _ => Certificate::new(VertexSet::singleton(g.n(), v)),
        });
    }
    if !satisfied(&out.best) {
        if let Some(w) = try_shortcut(&reduced, spec)? {
            if out.best.as_ref().is_none_or(|b| w.len() > b.len()) {
                out.best = Some(w);
                out.used_shortcut = true;
            }
        }
    }
    if satisfied(&out.best) {
        return finish(g, spec, out);
    }

    let units = universes(&reduced, spec, &out.trace);
    let init = out.best.as_ref().map_or(0, Certificate::len);
    let results: Vec<UniverseResult> = match target {
        None => {
            let shared = AtomicUsize::new(init + 1);
            let never = || false;
            let work = |u: &Universe| {
                if u.members.len() <= init || u.members.len() < shared.load(Ordering::Relaxed) {
                    return UniverseResult { best: None, nodes: 0, ran: false };
                }
                let limits = Limits {
                    shared_min: Some(&shared),
                    target: None,
                    cancelled: &never,
                };
                solve_universe(&reduced, spec, u, init, limits)
            };
            run_all(&units, opts, work)?
        }
        Some(k) => {
            let found = AtomicUsize::new(usize::MAX);
            let indexed: Vec<(usize, &Universe)> = units.iter().enumerate().collect();
            let work = |&(i, u): &(usize, &Universe)| {
                if u.members.len() < k || found.load(Ordering::Relaxed) < i {
                    return UniverseResult { best: None, nodes: 0, ran: false };
                }
                let cancelled = || found.load(Ordering::Relaxed) < i;
                let limits = Limits {
                    shared_min: None,
                    target: Some(k),
                    cancelled: &cancelled,
                };
                let r = solve_universe(&reduced, spec, u, k - 1, limits);
                if r.best.is_some() {
                    found.fetch_min(i, Ordering::Relaxed);
                }
                r
            };
            run_all(&indexed, opts, work)?
        }
    };

    let mut winner: Option<(usize, usize)> = None;
    for (i, (u, r)) in units.iter().zip(&results).enumerate() {
        let size = r.best.as_ref().map_or(0, |st| st.candidate.count_ones(..));
        out.nodes += r.nodes;
        out.stats.push(SubinstanceStats {
            center: u.center,
            universe_size: u.members.len(),
            nodes: r.nodes,
            best_size: size,
        });
        let _ = r.ran;
        let better = match (target, winner) {
            (Some(_), None) => size > 0,
            (Some(_), Some(_)) => false,
            (None, None) => size > init,
            (None, Some((_, ws))) => size > ws,
        };
        if better {
            winner = Some((i, size));
        }
    }
    if let Some((i, _)) = winner {
        let st = results[i].best.as_ref().expect("winner has a state");
        out.best = Some(to_certificate(g, &units[i], st)?);
        out.used_shortcut = false;
    }
    finish(g, spec, out)
}

fn run_all<T, F>(items: &[T], opts: &SolveOptions, work: F) -> Result<Vec<UniverseResult>>
where
    T: Sync,
    F: Fn(&T) -> UniverseResult + Sync + Send,
{
    match opts.threads {
        Some(t) if t > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
            Ok(pool.install(|| items.par_iter().map(&work).collect()))
        }
        _ => Ok(items.iter().map(work).collect()),
    }
}

/// Final gate: nothing leaves the solver without passing the verifier.
fn finish(g: &Graph, spec: &ProblemSpec, out: Outcome) -> Result<Outcome> {
    if let Some(cert) = &out.best {
        if let Err(v) = check_certificate(g, spec, cert)? {
            return Err(Error::Internal(format!("solver produced an invalid certificate: {v}")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_k4_bridge() -> Graph {
        let mut edges = vec![(3, 4)];
        for base in [0, 4] {
            for a in 0..4 {
                for b in a + 1..4 {
                    edges.push((base + a, base + b));
                }
            }
        }
        Graph::new(8, edges).unwrap()
    }

    #[test]
    fn clique_vertex_variant() {
        let r = solve_max(&Graph::complete(5), &ProblemSpec::vertex_triangle(2, 1, 1)).unwrap();
        assert_eq!(r.optimum_size, 5);
    }

    #[test]
    fn bridge_edge_variant() {
        let r = solve_max(&two_k4_bridge(), &ProblemSpec::edge_triangle(3, 1, 1)).unwrap();
        assert_eq!(r.optimum_size, 4);
        let cert = r.best.unwrap();
        assert_eq!(cert.edges.unwrap().len(), 6);
    }

    #[test]
    fn empty_graph_vertex_variant() {
        let r = solve_max(&Graph::empty(6), &ProblemSpec::vertex_triangle(3, 1, 1)).unwrap();
        assert_eq!(r.optimum_size, 0);
        assert!(r.best.is_none());
    }

    #[test]
    fn decision_examples() {
        let k5 = Graph::complete(5);
        assert!(solve_decision(&k5, &ProblemSpec::vertex_triangle(2, 1, 5)).unwrap().yes);
        assert!(!solve_decision(&k5, &ProblemSpec::vertex_triangle(2, 1, 6)).unwrap().yes);
        let p5 = Graph::path(5);
        assert!(!solve_decision(&p5, &ProblemSpec::seeded(3, 2, [0, 4])).unwrap().yes);
    }

    #[test]
    fn seeded_path() {
        let r = solve_max(&Graph::path(3), &ProblemSpec::seeded(2, 3, [0, 2])).unwrap();
        assert_eq!(r.optimum_size, 3);
    }

    #[test]
    fn threads_do_not_change_the_answer() {
        let g = two_k4_bridge();
        for spec in [ProblemSpec::vertex_triangle(3, 1, 1), ProblemSpec::edge_triangle(2, 1, 1), ProblemSpec::club(2, 1)] {
            let a = solve_max(&g, &spec).unwrap();
            let b = solve_max_with(&g, &spec, &SolveOptions { threads: Some(4) }).unwrap();
            assert_eq!(a.optimum_size, b.optimum_size);
            assert_eq!(a.best, b.best);
        }
    }
}
