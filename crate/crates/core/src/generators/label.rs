use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Vertex;

/// Role of a generated vertex. `owner` is the source-graph vertex whose
/// gadget holds it. Gadget coordinates follow the constructions: clique,
/// p/q and cascade indices are 1-based, ring indices run over `0..=x`,
/// seed (`W`) and copy indices are 0-based ids of `H` and the source graph.
///
/// Text form (used in instance files): the tag followed by its numbers,
/// e.g. `T 3 2`, `x 0 1 2`, `apex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// Vertex `i` of the clique `T^owner` (vertex variant, s = 2).
    T { owner: Vertex, i: usize },
    /// Vertex `i` of the shared clique `Y`.
    Y { i: usize },
    P { owner: Vertex, i: usize },
    Q { owner: Vertex, i: usize },
    /// Cascade vertex `x_{layer, i}`.
    X { owner: Vertex, layer: usize, i: usize },
    /// Cascade vertex `y_{layer, i}`.
    Yc { owner: Vertex, layer: usize, i: usize },
    /// Cascade vertex `z_{layer, i}`.
    Zc { owner: Vertex, layer: usize, i: usize },
    A { owner: Vertex, i: usize },
    B { owner: Vertex, i: usize },
    C { owner: Vertex, i: usize },
    /// Seed vertex standing for vertex `h` of the seed shape.
    Seed { h: Vertex },
    /// Copy of source vertex `x` on side 1 or 2.
    Copy { side: u8, x: Vertex },
    /// The vertex adjacent to every seed (s = 2).
    Apex,
    /// `u*` (side 1) or `v*` (side 2).
    Star { side: u8 },
    /// Bridge path vertex `p_i`.
    Path { i: usize },
    /// Internal vertex `q^x_i` of the path between the copies of `x`.
    Link { x: Vertex, i: usize },
}

impl Label {
    /// Gadget owner, for labels that live inside a per-vertex gadget.
    pub fn owner(&self) -> Option<Vertex> {
        match *self {
            Label::T { owner, .. }
            | Label::P { owner, .. }
            | Label::Q { owner, .. }
            | Label::X { owner, .. }
            | Label::Yc { owner, .. }
            | Label::Zc { owner, .. }
            | Label::A { owner, .. }
            | Label::B { owner, .. }
            | Label::C { owner, .. } => Some(owner),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Label::T { owner, i } => write!(f, "T {owner} {i}"),
            Label::Y { i } => write!(f, "Y {i}"),
            Label::P { owner, i } => write!(f, "p {owner} {i}"),
            Label::Q { owner, i } => write!(f, "q {owner} {i}"),
            Label::X { owner, layer, i } => write!(f, "x {owner} {layer} {i}"),
            Label::Yc { owner, layer, i } => write!(f, "y {owner} {layer} {i}"),
            Label::Zc { owner, layer, i } => write!(f, "z {owner} {layer} {i}"),
            Label::A { owner, i } => write!(f, "a {owner} {i}"),
            Label::B { owner, i } => write!(f, "b {owner} {i}"),
            Label::C { owner, i } => write!(f, "c {owner} {i}"),
            Label::Seed { h } => write!(f, "w {h}"),
            Label::Copy { side, x } => write!(f, "g {side} {x}"),
            Label::Apex => f.write_str("apex"),
            Label::Star { side } => write!(f, "star {side}"),
            Label::Path { i } => write!(f, "path {i}"),
            Label::Link { x, i } => write!(f, "link {x} {i}"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Label> {
        let bad = || Error::InvalidSpec(format!("malformed layout label {s:?}"));
        let mut parts = s.split_whitespace();
        let tag = parts.next().ok_or_else(bad)?;
        let nums: Vec<usize> = parts.map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?;
        let side = |v: usize| u8::try_from(v).ok().filter(|s| (1..=2).contains(s)).ok_or_else(bad);
        let label = match (tag, nums.as_slice()) {
            ("T", &[owner, i]) => Label::T { owner, i },
            ("Y", &[i]) => Label::Y { i },
            ("p", &[owner, i]) => Label::P { owner, i },
            ("q", &[owner, i]) => Label::Q { owner, i },
            ("x", &[owner, layer, i]) => Label::X { owner, layer, i },
            ("y", &[owner, layer, i]) => Label::Yc { owner, layer, i },
            ("z", &[owner, layer, i]) => Label::Zc { owner, layer, i },
            ("a", &[owner, i]) => Label::A { owner, i },
            ("b", &[owner, i]) => Label::B { owner, i },
            ("c", &[owner, i]) => Label::C { owner, i },
            ("w", &[h]) => Label::Seed { h },
            ("g", &[sd, x]) => Label::Copy { side: side(sd)?, x },
            ("apex", &[]) => Label::Apex,
            ("star", &[sd]) => Label::Star { side: side(sd)? },
            ("path", &[i]) => Label::Path { i },
            ("link", &[x, i]) => Label::Link { x, i },
            _ => return Err(bad()),
        };
        Ok(label)
    }
}
