//! Data reduction: the three pruning rules, the yes-instance shortcuts with
//! constructive witnesses, and the decomposition into bounded per-vertex
//! universes.

mod rules;
mod shortcuts;

pub use rules::{reduce, rr1_vertex_triangle_prune, rr2_edge_triangle_prune, rr3_seed_distance_prune};
pub use shortcuts::{et_shortcut, seeded_shortcut, vt_shortcut, SeededCase};

use crate::error::{Error, Result};
use crate::graph::{ball, neighborhood, Edge, Graph, Vertex, VertexSet};
use crate::properties::{Certificate, ProblemSpec, Variant};

/// What a reduction pass did to an instance. Removed vertices stay in the
/// returned graph as isolated ids so that vertex ids never shift.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KernelTrace {
    pub removed_vertices: Vec<Vertex>,
    pub removed_edges: Vec<Edge>,
    /// Vertices the edge rule left without incident edges; they remain
    /// usable as size-1 solutions and are not counted as removed.
    pub isolated_vertices: Vec<Vertex>,
    /// Removals (vertices or edges) per round; its length is the round count.
    pub per_round: Vec<usize>,
    pub shortcut_witness: Option<Certificate>,
    pub infeasible: bool,
}

impl KernelTrace {
    pub fn rounds(&self) -> usize {
        self.per_round.len()
    }

    /// Vertices that survived the pass.
    pub fn alive(&self, n: usize) -> VertexSet {
        let mut set = VertexSet::full(n);
        for &v in &self.removed_vertices {
            set.remove(v);
        }
        set
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Center {
    Vertex(Vertex),
    Seeds(Vec<Vertex>),
}

/// One bounded piece of a Turing kernel: every solution through `center`
/// lies inside `vertex_universe`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringSubinstance {
    pub center: Center,
    pub vertex_universe: VertexSet,
    /// The size bound the decomposition theorem gives for this case.
    pub bound: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TuringOutcome {
    Shortcut(Certificate),
    Subinstances(Vec<TuringSubinstance>),
}

/// Result of [`kernelize`]: reduced graph, trace, and either a shortcut
/// witness or the bounded universes.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub graph: Graph,
    pub trace: KernelTrace,
    pub outcome: TuringOutcome,
}

fn pow(k: usize, e: u32) -> u128 {
    (k as u128).saturating_pow(e)
}

/// Rejects (variant, s, ℓ, seed) combinations no kernel covers, with the
/// reason.
pub fn check_kernel_applicable(g: &Graph, spec: &ProblemSpec) -> Result<()> {
    spec.validate(Some(g.n()))?;
    let ell = spec.threshold();
    match spec.variant {
        Variant::Club => Err(Error::Inapplicable(
            "plain s-club has no triangle or seed reduction; use solve".into(),
        )),
        Variant::VertexTriangle if ell >= 2 => Err(Error::Inapplicable(format!(
            "vertex-triangle s-club with l = {ell} >= 2 is W[1]-hard for k; no Turing kernel exists unless FPT = W[1]"
        ))),
        Variant::VertexTriangle if spec.s <= 3 => Err(Error::Inapplicable(format!(
            "vertex-triangle s-club with l = 1 and s = {} is W[1]-hard for k (only s >= 4 has a Turing kernel)",
            spec.s
        ))),
        Variant::EdgeTriangle if ell >= 2 => Err(Error::Inapplicable(format!(
            "edge-triangle s-club with l = {ell} >= 2 is W[1]-hard for k; only l = 1 has a Turing kernel"
        ))),
        Variant::Seeded if !is_clique(g, &spec.seeds) => Err(Error::Inapplicable(
            "seed set does not induce a clique; the kernel needs a clique seed (non-clique seeds are W[1]-hard for s = 2, and for s >= 3 when disconnected)".into(),
        )),
        _ => Ok(()),
    }
}

pub(crate) fn is_clique(g: &Graph, members: &[Vertex]) -> bool {
    members
        .iter()
        .enumerate()
        .all(|(i, &a)| members[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

/// Universe size bound of the decomposition theorem for `spec`.
pub fn theorem_bound(spec: &ProblemSpec) -> Result<u128> {
    let k = spec.k;
    let s = spec.s;
    match spec.variant {
        Variant::VertexTriangle => match s {
            4 | 7 => Ok(pow(k, 4)),
            5 => Ok(pow(k, 5)),
            s if s == 6 || s >= 8 => Ok(pow(k, 3)),
            _ => Err(Error::Inapplicable(format!("no universe bound for vertex variant with s = {s}"))),
        },
        Variant::EdgeTriangle => Ok(if s % 2 == 0 { pow(k, 2) } else { pow(k, 3) }),
        Variant::Seeded => {
            let e = 2 * spec.seeds.len() as u32 + 1;
            Ok(pow(k, 2).saturating_add(pow(k, e)))
        }
        Variant::Club => Err(Error::Inapplicable("no universe bound for plain s-club".into())),
    }
}

/// Expects `g` already reduced by the matching rule. Returns the shortcut
/// certificate if it fires, else one universe `N_s[v]` per vertex that can
/// lie in a solution of size ≥ 2 (seeded: the single universe `N_s[W]`).
pub fn turing_subinstances(g: &Graph, spec: &ProblemSpec) -> Result<TuringOutcome> {
    check_kernel_applicable(g, spec)?;
    let (k, s) = (spec.k, spec.s);
    let bound = theorem_bound(spec)?;
    let shortcut = match spec.variant {
        Variant::VertexTriangle => vt_shortcut(g, k, s)?,
        Variant::EdgeTriangle => et_shortcut(g, k, s)?,
        Variant::Seeded => seeded_shortcut(g, &spec.seed_set(g.n())?, k, s)?.map(|(c, _)| c),
        Variant::Club => unreachable!("rejected by check_kernel_applicable"),
    };
    if let Some(cert) = shortcut {
        return Ok(TuringOutcome::Shortcut(cert));
    }
    let universes: Vec<TuringSubinstance> = if spec.variant == Variant::Seeded {
        let seeds = spec.seed_set(g.n())?;
        vec![TuringSubinstance {
            center: Center::Seeds(spec.seeds.clone()),
            vertex_universe: neighborhood(g, &seeds, s, true),
            bound,
        }]
    } else {
        g.vertices()
            .filter(|&v| g.degree(v) > 0)
            .map(|v| TuringSubinstance {
                center: Center::Vertex(v),
                vertex_universe: ball(g, v, s),
                bound,
            })
            .collect()
    };
    if let Some(bad) = universes.iter().find(|u| u.vertex_universe.len() as u128 > u.bound) {
        return Err(Error::Internal(format!(
            "universe around {:?} has {} vertices, above the bound {}",
            bad.center,
            bad.vertex_universe.len(),
            bad.bound
        )));
    }
    Ok(TuringOutcome::Subinstances(universes))
}

/// Applies the matching reduction rule, then the shortcut / decomposition.
/// Fails for combinations no kernel covers.
pub fn kernelize(g: &Graph, spec: &ProblemSpec) -> Result<Kernel> {
    check_kernel_applicable(g, spec)?;
    let (graph, mut trace) = reduce(g, spec)?;
    if trace.infeasible {
        return Ok(Kernel {
            graph,
            trace,
            outcome: TuringOutcome::Subinstances(Vec::new()),
        });
    }
    let outcome = turing_subinstances(&graph, spec)?;
    if let TuringOutcome::Shortcut(c) = &outcome {
        trace.shortcut_witness = Some(c.clone());
    }
    Ok(Kernel { graph, trace, outcome })
}
