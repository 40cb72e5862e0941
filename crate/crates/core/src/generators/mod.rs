//! Builders for the five hardness gadgets (each encodes a Clique instance
//! `(G, k)`) and a seeded G(n, p) sampler.
//!
//! Every generated vertex carries a [`Label`]; [`GadgetInstance::rebuild`]
//! re-derives the edge set from labels alone, independently of the builder.
//! Vertices are emitted in a fixed order per construction (documented on
//! each `gen_*`), so output is byte-reproducible.

mod build;
mod label;
mod rules;

pub use build::{gen_et, gen_seeded2, gen_seededs, gen_vt2, gen_vts};
pub use label::Label;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::properties::ProblemSpec;

/// How ring sub-indices wrap in the edge-variant gadget. The rings hold
/// `x + 1` vertices `0..=x`; `Literal` reduces indices modulo `x` as
/// written, `Cyclic` modulo `x + 1` (a true cycle).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RingModulus {
    Literal,
    #[default]
    Cyclic,
}

impl RingModulus {
    pub fn of(self, x: usize) -> usize {
        match self {
            RingModulus::Literal => x,
            RingModulus::Cyclic => x + 1,
        }
    }
}

/// Which construction produced an instance, with everything the label rules
/// need besides the source graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Vertex variant, s = 2.
    Vt2 { ell: usize },
    /// Vertex variant, s >= 3.
    Vts { s: usize, ell: usize },
    /// Edge variant, l >= 2.
    Et { s: usize, ell: usize, modulus: RingModulus },
    /// Seeded, s = 2; `u`, `v` is the chosen non-edge of `h`.
    Seeded2 { h: Graph, u: Vertex, v: Vertex },
    /// Seeded, s >= 3; `d1` is the component of `h` joined to the first copy.
    Seededs { h: Graph, s: usize, d1: Vec<Vertex> },
}

impl Construction {
    pub fn tag(&self) -> &'static str {
        match self {
            Construction::Vt2 { .. } => "vt2",
            Construction::Vts { .. } => "vts",
            Construction::Et { .. } => "et",
            Construction::Seeded2 { .. } => "seeded2",
            Construction::Seededs { .. } => "seededs",
        }
    }
}

/// Derived size parameters; fields a construction does not use stay `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GadgetParams {
    /// Smallest `c` with `C(c−1, 2) >= l`.
    pub c: Option<usize>,
    /// `⌊(s−1)/2⌋`.
    pub s_star: Option<usize>,
    /// `⌈l/2⌉`.
    pub ell_star: Option<usize>,
    /// `6·l*·(s−1) + ⌊l/2⌋`; rings are indexed `0..=x`.
    pub x: Option<usize>,
}

impl GadgetParams {
    pub fn clique_size(ell: usize) -> usize {
        let mut c = 3;
        while (c - 1) * (c - 2) / 2 < ell {
            c += 1;
        }
        c
    }

    pub fn s_star(s: usize) -> usize {
        (s - 1) / 2
    }

    pub fn ell_star(ell: usize) -> usize {
        ell.div_ceil(2)
    }

    pub fn ring_x(s: usize, ell: usize) -> usize {
        6 * Self::ell_star(ell) * (s - 1) + ell / 2
    }
}

#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub k_prime: usize,
    /// The target problem at size `k_prime`.
    pub spec: ProblemSpec,
    /// `layout[v]` is the role of vertex `v`.
    pub layout: Vec<Label>,
    pub source: Graph,
    pub source_k: usize,
    pub construction: Construction,
    pub params: GadgetParams,
}

impl GadgetInstance {
    /// Whether the label rules put an edge between `a` and `b`.
    pub fn label_adjacent(&self, a: &Label, b: &Label) -> bool {
        a != b && (rules::sourced(self, a, b) || rules::sourced(self, b, a))
    }

    /// The graph re-derived from `layout` by the label rules alone.
    pub fn rebuild(&self) -> Graph {
        let n = self.layout.len();
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.label_adjacent(&self.layout[u], &self.layout[v]));
        Graph::new(n, edges.collect::<Vec<_>>()).expect("label rules give a simple graph")
    }

    /// Vertex id of `label`, if present.
    pub fn vertex_of(&self, label: &Label) -> Option<Vertex> {
        self.layout.iter().position(|l| l == label)
    }
}

/// Erdős–Rényi G(n, p), deterministic in `rng_seed`; pairs are visited in
/// lexicographic order.
pub fn gen_random_gnp(n: usize, p: f64, rng_seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidSpec(format!("edge probability {p} is outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}
