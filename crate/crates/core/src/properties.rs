//! Independent verifiers for the three solution notions plus the
//! edge-deletion robustness check. Solver output is only trusted after it
//! passes these.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dense::DenseGraph;
use crate::error::{Error, Result};
use crate::graph::{
    diameter, edge_triangle_counts, truss_peel, vertex_triangle_counts, Diameter, Edge, EdgeSet,
    Graph, Vertex, VertexSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Plain s-club, no triangle constraint.
    Club,
    /// Every vertex of `G[S]` lies in at least ℓ triangles.
    #[serde(rename = "vt")]
    VertexTriangle,
    /// A spanning subgraph of `G[S]` with diameter ≤ s has every edge in ≥ ℓ triangles.
    #[serde(rename = "et")]
    EdgeTriangle,
    /// s-club containing the seed set.
    Seeded,
}

impl Variant {
    pub fn tag(self) -> &'static str {
        match self {
            Variant::Club => "club",
            Variant::VertexTriangle => "vt",
            Variant::EdgeTriangle => "et",
            Variant::Seeded => "seeded",
        }
    }

    pub fn is_triangle(self) -> bool {
        matches!(self, Variant::VertexTriangle | Variant::EdgeTriangle)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "club" => Ok(Variant::Club),
            "vt" => Ok(Variant::VertexTriangle),
            "et" => Ok(Variant::EdgeTriangle),
            "seeded" => Ok(Variant::Seeded),
            other => Err(Error::InvalidSpec(format!(
                "unknown variant {other:?} (expected club, vt, et or seeded)"
            ))),
        }
    }
}

/// One problem instance's parameters: variant, diameter bound `s`, triangle
/// threshold `ell` (triangle variants only), target size `k`, seeds (seeded
/// only).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub variant: Variant,
    pub s: usize,
    pub ell: Option<usize>,
    pub k: usize,
    pub seeds: Vec<Vertex>,
}

impl ProblemSpec {
    pub fn club(s: usize, k: usize) -> Self {
        ProblemSpec {
            variant: Variant::Club,
            s,
            ell: None,
            k,
            seeds: Vec::new(),
        }
    }

    pub fn vertex_triangle(s: usize, ell: usize, k: usize) -> Self {
        ProblemSpec {
            variant: Variant::VertexTriangle,
            s,
            ell: Some(ell),
            k,
            seeds: Vec::new(),
        }
    }

    pub fn edge_triangle(s: usize, ell: usize, k: usize) -> Self {
        ProblemSpec {
            variant: Variant::EdgeTriangle,
            s,
            ell: Some(ell),
            k,
            seeds: Vec::new(),
        }
    }

    pub fn seeded(s: usize, k: usize, seeds: impl IntoIterator<Item = Vertex>) -> Self {
        let mut seeds: Vec<Vertex> = seeds.into_iter().collect();
        seeds.sort_unstable();
        seeds.dedup();
        ProblemSpec {
            variant: Variant::Seeded,
            s,
            ell: None,
            k,
            seeds,
        }
    }

    /// Triangle threshold, 0 for the variants without one.
    pub fn threshold(&self) -> usize {
        self.ell.unwrap_or(0)
    }

    pub fn seed_set(&self, n: usize) -> Result<VertexSet> {
        VertexSet::from_members(n, self.seeds.iter().copied())
    }

    /// Checks the field invariants; with `n` also checks seed ids.
    pub fn validate(&self, n: Option<usize>) -> Result<()> {
        if self.s < 1 {
            return Err(Error::InvalidSpec("s must be at least 1".into()));
        }
        if self.k < 1 {
            return Err(Error::InvalidSpec("k must be at least 1".into()));
        }
        match (self.variant.is_triangle(), self.ell) {
            (true, None) | (true, Some(0)) => {
                return Err(Error::InvalidSpec(format!(
                    "variant {} needs a triangle threshold l >= 1",
                    self.variant
                )))
            }
            (false, Some(_)) => {
                return Err(Error::InvalidSpec(format!(
                    "variant {} takes no triangle threshold",
                    self.variant
                )))
            }
            _ => {}
        }
        match (self.variant == Variant::Seeded, self.seeds.is_empty()) {
            (true, true) => return Err(Error::InvalidSpec("seeded variant needs a non-empty seed set".into())),
            (false, false) => {
                return Err(Error::InvalidSpec(format!(
                    "variant {} takes no seed set",
                    self.variant
                )))
            }
            _ => {}
        }
        if let Some(n) = n {
            if let Some(&bad) = self.seeds.iter().find(|&&w| w >= n) {
                return Err(Error::VertexOutOfRange { vertex: bad, n });
            }
        }
        Ok(())
    }
}

/// A claimed solution. `edges` is the witness spanning subgraph of the edge
/// variant; the other variants leave it empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub vertices: VertexSet,
    pub edges: Option<EdgeSet>,
}

impl Certificate {
    pub fn new(vertices: VertexSet) -> Self {
        Certificate {
            vertices,
            edges: None,
        }
    }

    pub fn with_edges(vertices: VertexSet, edges: EdgeSet) -> Self {
        Certificate {
            vertices,
            edges: Some(edges),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn non_empty(set: &VertexSet, what: &'static str) -> Result<()> {
    if set.is_empty() {
        Err(Error::Empty(what))
    } else {
        Ok(())
    }
}

pub fn is_s_club(g: &Graph, set: &VertexSet, s: usize) -> Result<bool> {
    non_empty(set, "solution set")?;
    Ok(diameter(g, Some(set), None)?.at_most(s))
}

pub fn verify_vertex_triangle_club(g: &Graph, set: &VertexSet, s: usize, ell: usize) -> Result<bool> {
    if !is_s_club(g, set, s)? {
        return Ok(false);
    }
    let counts = vertex_triangle_counts(g, Some(set));
    Ok(set.iter().all(|v| counts[v] >= ell))
}

/// Returns the maximal witness edge set when `set` is an edge-ℓ-triangle
/// s-club, `None` otherwise.
pub fn verify_edge_triangle_club(
    g: &Graph,
    set: &VertexSet,
    s: usize,
    ell: usize,
) -> Result<Option<EdgeSet>> {
    non_empty(set, "solution set")?;
    let witness = truss_peel(g, ell, Some(set));
    Ok(diameter(g, Some(set), Some(&witness))?
        .at_most(s)
        .then_some(witness))
}

pub fn verify_seeded_club(g: &Graph, set: &VertexSet, s: usize, seeds: &VertexSet) -> Result<bool> {
    non_empty(set, "solution set")?;
    non_empty(seeds, "seed set")?;
    Ok(seeds.is_subset(set) && is_s_club(g, set, s)?)
}

/// The first condition a certificate fails, in human-readable form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptySet,
    DiameterTooLarge { diameter: Diameter, s: usize },
    VertexTriangles { vertex: Vertex, count: usize, ell: usize },
    WitnessEdgeOutside(Edge),
    WitnessEdgeTriangles { edge: Edge, count: usize, ell: usize },
    MissingSeed(Vertex),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptySet => f.write_str("certificate vertex set is empty"),
            Violation::DiameterTooLarge { diameter, s } => {
                write!(f, "diameter {diameter} exceeds s = {s}")
            }
            Violation::VertexTriangles { vertex, count, ell } => write!(
                f,
                "vertex {vertex} lies in {count} triangles of G[S], fewer than l = {ell}"
            ),
            Violation::WitnessEdgeOutside((u, v)) => {
                write!(f, "witness edge ({u}, {v}) is not an edge of G[S]")
            }
            Violation::WitnessEdgeTriangles { edge: (u, v), count, ell } => write!(
                f,
                "witness edge ({u}, {v}) lies in {count} witness triangles, fewer than l = {ell}"
            ),
            Violation::MissingSeed(w) => write!(f, "seed vertex {w} is not in S"),
        }
    }
}

/// Checks `cert` against `spec` (size is not checked). For the edge variant
/// an explicit witness is checked as given; without one the maximal witness
/// is used.
pub fn check_certificate(
    g: &Graph,
    spec: &ProblemSpec,
    cert: &Certificate,
) -> Result<std::result::Result<(), Violation>> {
    let set = &cert.vertices;
    if set.is_empty() {
        return Ok(Err(Violation::EmptySet));
    }
    if let Some(v) = set.iter().find(|&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let s = spec.s;
    let ell = spec.threshold();
    match spec.variant {
        Variant::Club | Variant::Seeded | Variant::VertexTriangle => {
            if spec.variant == Variant::Seeded {
                if let Some(&w) = spec.seeds.iter().find(|&&w| !set.contains(w)) {
                    return Ok(Err(Violation::MissingSeed(w)));
                }
            }
            let d = diameter(g, Some(set), None)?;
            if !d.at_most(s) {
                return Ok(Err(Violation::DiameterTooLarge { diameter: d, s }));
            }
            if spec.variant == Variant::VertexTriangle {
                let counts = vertex_triangle_counts(g, Some(set));
                if let Some(v) = set.iter().find(|&v| counts[v] < ell) {
                    return Ok(Err(Violation::VertexTriangles {
                        vertex: v,
                        count: counts[v],
                        ell,
                    }));
                }
            }
            Ok(Ok(()))
        }
        Variant::EdgeTriangle => {
            let witness = match &cert.edges {
                Some(f) => {
                    if let Some(e) = f
                        .iter()
                        .find(|&(u, v)| !(set.contains(u) && set.contains(v) && g.has_edge(u, v)))
                    {
                        return Ok(Err(Violation::WitnessEdgeOutside(e)));
                    }
                    let counts = edge_triangle_counts(g, Some(set), Some(f));
                    if let Some((&e, &c)) = counts.iter().find(|&(_, &c)| c < ell) {
                        return Ok(Err(Violation::WitnessEdgeTriangles { edge: e, count: c, ell }));
                    }
                    f.clone()
                }
                None => truss_peel(g, ell, Some(set)),
            };
            let d = diameter(g, Some(set), Some(&witness))?;
            if !d.at_most(s) {
                return Ok(Err(Violation::DiameterTooLarge { diameter: d, s }));
            }
            Ok(Ok(()))
        }
    }
}

/// Whether `cert` is a valid solution of `spec` (size not checked).
pub fn verify(g: &Graph, spec: &ProblemSpec, cert: &Certificate) -> Result<bool> {
    Ok(check_certificate(g, spec, cert)?.is_ok())
}

/// Exhaustive sweeps are used up to this many deletion sets.
pub const EXHAUSTIVE_LIMIT: u128 = 100_000;
/// Sample count beyond [`EXHAUSTIVE_LIMIT`].
pub const SAMPLE_COUNT: usize = 1000;
pub const DEFAULT_ROBUSTNESS_SEED: u64 = 0x5c1b;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobustnessReport {
    pub holds: bool,
    /// Largest diameter allowed after the deletions: `min(s + budget, 2s)`.
    pub bound: usize,
    pub exhaustive: bool,
    pub deletion_sets_checked: usize,
    /// Seed of the sampler when the sweep was not exhaustive.
    pub rng_seed: Option<u64>,
    pub counterexample: Option<Vec<Edge>>,
}

fn binomial(n: usize, r: usize) -> u128 {
    let r = r.min(n.saturating_sub(r).max(0));
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return acc;
        }
    }
    acc
}

/// Checks that deleting any `budget` edges from the certificate's witness
/// keeps every pair of `S` within `min(s + budget, 2s)`. Deleting fewer
/// edges can only shorten distances, so sets of exactly `budget` edges (or
/// all of them, if fewer) are enumerated.
pub fn robustness_check(
    g: &Graph,
    cert: &Certificate,
    s: usize,
    ell: usize,
    budget: usize,
) -> Result<RobustnessReport> {
    robustness_check_seeded(g, cert, s, ell, budget, DEFAULT_ROBUSTNESS_SEED)
}

pub fn robustness_check_seeded(
    g: &Graph,
    cert: &Certificate,
    s: usize,
    ell: usize,
    budget: usize,
    rng_seed: u64,
) -> Result<RobustnessReport> {
    if budget > ell {
        return Err(Error::Inapplicable(format!(
            "deletion budget {budget} exceeds the triangle threshold l = {ell}"
        )));
    }
    let spec = ProblemSpec::edge_triangle(s, ell.max(1), 1);
    let spec = ProblemSpec { ell: Some(ell), ..spec };
    if let Err(v) = check_certificate(g, &spec, cert)? {
        return Err(Error::Unverified(v.to_string()));
    }
    let witness = match &cert.edges {
        Some(f) => f.clone(),
        None => truss_peel(g, ell, Some(&cert.vertices)),
    };
    let members = cert.vertices.to_vec();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in members.iter().enumerate() {
        local[v] = i;
    }
    let edges: Vec<Edge> = witness.iter().map(|(u, v)| (local[u], local[v])).collect();
    let mut dg = DenseGraph::from_edges(members.len(), edges.iter().copied());
    let mut mask = fixedbitset::FixedBitSet::with_capacity(members.len());
    mask.insert_range(..);
    let bound = (s + budget).min(2 * s);
    let take = budget.min(edges.len());
    let total = binomial(edges.len(), take);

    let check = |idx: &[usize], dg: &mut DenseGraph| -> bool {
        for &i in idx {
            dg.remove_edge(edges[i].0, edges[i].1);
        }
        let ok = dg.diameter_at_most(&mask, bound);
        for &i in idx {
            dg.add_edge(edges[i].0, edges[i].1);
        }
        ok
    };
    let global = |idx: &[usize]| -> Vec<Edge> {
        idx.iter()
            .map(|&i| {
                let (a, b) = edges[i];
                crate::graph::edge(members[a], members[b])
            })
            .collect()
    };

    let mut report = RobustnessReport {
        holds: true,
        bound,
        exhaustive: total <= EXHAUSTIVE_LIMIT,
        deletion_sets_checked: 0,
        rng_seed: None,
        counterexample: None,
    };
    if report.exhaustive {
        let mut idx: Vec<usize> = (0..take).collect();
        loop {
            report.deletion_sets_checked += 1;
            if !check(&idx, &mut dg) {
                report.holds = false;
                report.counterexample = Some(global(&idx));
                break;
            }
            // next combination in lexicographic order
            let mut i = take;
            while i > 0 && idx[i - 1] == edges.len() - take + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..take {
                idx[j] = idx[j - 1] + 1;
            }
        }
    } else {
        report.rng_seed = Some(rng_seed);
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        for _ in 0..SAMPLE_COUNT {
            let mut idx = sample(&mut rng, edges.len(), take).into_vec();
            idx.sort_unstable();
            report.deletion_sets_checked += 1;
            if !check(&idx, &mut dg) {
                report.holds = false;
                report.counterexample = Some(global(&idx));
                break;
            }
        }
    }
    Ok(report)
}
