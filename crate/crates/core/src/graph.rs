//! Immutable simple undirected graphs and the distance / triangle / peeling
//! primitives the rest of the crate is built on.
//!
//! Vertices are dense ids `0..n`. Every operation optionally works on a
//! vertex mask (the induced subgraph) and, where it makes sense, an edge mask
//! (a spanning subgraph of the masked part).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

/// Normalizes an unordered pair so the smaller endpoint comes first.
#[inline]
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate pairs (in either
    /// orientation) collapse; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect();
        Graph {
            adj,
            m: n * n.saturating_sub(1) / 2,
        }
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as normalized pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Copy of this graph with every edge incident to a vertex of `drop`
    /// deleted. Vertex ids are preserved.
    pub fn isolate(&self, drop: &VertexSet) -> Graph {
        let edges = self
            .edges()
            .filter(|&(u, v)| !drop.contains(u) && !drop.contains(v));
        Graph::new(self.n(), edges).expect("subset of valid edges")
    }

    /// Copy of this graph restricted to the given edges (ids preserved).
    pub fn with_edges(&self, edges: &EdgeSet) -> Graph {
        Graph::new(self.n(), edges.iter()).expect("subset of valid edges")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// A subset of the vertex ids of some graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn singleton(n: usize, v: Vertex) -> Self {
        let mut s = Self::new(n);
        s.insert(v);
        s
    }

    /// Checked constructor; every member must be `< n`.
    pub fn from_members<I>(n: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut s = Self::new(n);
        for v in members {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Size of the id universe this set lives in.
    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: Vertex) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: Vertex) {
        self.bits.set(v, false);
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.ones()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.bits.minimum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A set of unordered vertex pairs, stored normalized and ordered.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    edges: BTreeSet<Edge>,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an edge set, rejecting pairs that are not edges of `host`.
    pub fn for_graph<I>(host: &Graph, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut set = EdgeSet::new();
        for (u, v) in pairs {
            if !host.has_edge(u, v) {
                return Err(Error::NotAnEdge(u, v));
            }
            set.insert(u, v);
        }
        Ok(set)
    }

    pub fn all(g: &Graph) -> Self {
        EdgeSet {
            edges: g.edges().collect(),
        }
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex) -> bool {
        self.edges.insert(edge(u, v))
    }

    pub fn remove(&mut self, u: Vertex, v: Vertex) -> bool {
        self.edges.remove(&edge(u, v))
    }

    #[inline]
    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&edge(u, v))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.edges.is_subset(&other.edges)
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<T: IntoIterator<Item = Edge>>(iter: T) -> Self {
        EdgeSet {
            edges: iter.into_iter().map(|(u, v)| edge(u, v)).collect(),
        }
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Diameter of a (masked) graph. Disconnected graphs are `Unbounded`, never a
/// large finite stand-in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diameter {
    Finite(usize),
    Unbounded,
}

impl Diameter {
    pub fn at_most(self, bound: usize) -> bool {
        matches!(self, Diameter::Finite(d) if d <= bound)
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[inline]
fn in_mask(mask: Option<&VertexSet>, v: Vertex) -> bool {
    mask.is_none_or(|m| m.contains(v))
}

#[inline]
fn edge_alive(edge_mask: Option<&EdgeSet>, u: Vertex, v: Vertex) -> bool {
    edge_mask.is_none_or(|e| e.contains(u, v))
}

fn multi_source_bfs<I>(
    g: &Graph,
    sources: I,
    mask: Option<&VertexSet>,
    edge_mask: Option<&EdgeSet>,
    limit: Option<usize>,
) -> Vec<Option<usize>>
where
    I: IntoIterator<Item = Vertex>,
{
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::new();
    for s in sources {
        if in_mask(mask, s) && dist[s].is_none() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        if limit.is_some_and(|l| du >= l) {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w].is_none() && in_mask(mask, w) && edge_alive(edge_mask, u, w) {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Shortest-path distances from `source` inside the masked subgraph.
/// `None` means unreachable (including every vertex outside the mask, and
/// everything when `source` itself is masked out).
pub fn bfs_distances(
    g: &Graph,
    source: Vertex,
    mask: Option<&VertexSet>,
    edge_mask: Option<&EdgeSet>,
) -> Vec<Option<usize>> {
    multi_source_bfs(g, [source], mask, edge_mask, None)
}

/// Distance from the nearest member of `sources` inside the masked subgraph.
pub fn set_distances(g: &Graph, sources: &VertexSet, mask: Option<&VertexSet>) -> Vec<Option<usize>> {
    multi_source_bfs(g, sources.iter(), mask, None, None)
}

/// `N_i(S)` (`closed == false`: distance exactly `radius`) or `N_i[S]`
/// (`closed == true`: distance at most `radius`).
pub fn neighborhood(g: &Graph, set: &VertexSet, radius: usize, closed: bool) -> VertexSet {
    let dist = multi_source_bfs(g, set.iter(), None, None, Some(radius));
    let mut out = VertexSet::new(g.n());
    for (v, d) in dist.into_iter().enumerate() {
        match d {
            Some(d) if d == radius || (closed && d < radius) => out.insert(v),
            _ => {}
        }
    }
    out
}

/// Closed `radius`-ball around a single vertex.
pub fn ball(g: &Graph, center: Vertex, radius: usize) -> VertexSet {
    neighborhood(g, &VertexSet::singleton(g.n(), center), radius, true)
}

/// Largest pairwise distance in the masked subgraph.
pub fn diameter(g: &Graph, mask: Option<&VertexSet>, edge_mask: Option<&EdgeSet>) -> Result<Diameter> {
    let members: Vec<Vertex> = match mask {
        Some(m) => m.iter().filter(|&v| v < g.n()).collect(),
        None => g.vertices().collect(),
    };
    if members.is_empty() {
        return Err(Error::Empty("vertex set for diameter"));
    }
    let mut best = 0;
    for &s in &members {
        let dist = bfs_distances(g, s, mask, edge_mask);
        for &t in &members {
            match dist[t] {
                Some(d) => best = best.max(d),
                None => return Ok(Diameter::Unbounded),
            }
        }
    }
    Ok(Diameter::Finite(best))
}

fn common_count(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    mask: Option<&VertexSet>,
    edge_mask: Option<&EdgeSet>,
) -> usize {
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let w = a[i];
                if in_mask(mask, w) && edge_alive(edge_mask, u, w) && edge_alive(edge_mask, v, w) {
                    c += 1;
                }
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Number of triangles of the masked induced subgraph through each vertex
/// (zero for vertices outside the mask).
pub fn vertex_triangle_counts(g: &Graph, mask: Option<&VertexSet>) -> Vec<usize> {
    let mut counts = vec![0; g.n()];
    for (u, v) in g.edges() {
        if in_mask(mask, u) && in_mask(mask, v) {
            let c = common_count(g, u, v, mask, None);
            counts[u] += c;
            counts[v] += c;
        }
    }
    // each triangle at v is seen once through each of its two edges at v
    counts.iter_mut().for_each(|c| *c /= 2);
    counts
}

/// `|N(u) ∩ N(v)|` for every surviving edge of the masked, edge-restricted
/// subgraph.
pub fn edge_triangle_counts(
    g: &Graph,
    mask: Option<&VertexSet>,
    edge_mask: Option<&EdgeSet>,
) -> BTreeMap<Edge, usize> {
    g.edges()
        .filter(|&(u, v)| in_mask(mask, u) && in_mask(mask, v) && edge_alive(edge_mask, u, v))
        .map(|(u, v)| ((u, v), common_count(g, u, v, mask, edge_mask)))
        .collect()
}

/// The unique edge-maximal set of edges of the masked induced subgraph in
/// which every edge lies in at least `ell` triangles formed by the set itself.
pub fn truss_peel(g: &Graph, ell: usize, mask: Option<&VertexSet>) -> EdgeSet {
    truss_peel_from(g, ell, mask, None)
}

/// As [`truss_peel`], starting from the edges of `start` instead of all
/// masked edges.
pub fn truss_peel_from(
    g: &Graph,
    ell: usize,
    mask: Option<&VertexSet>,
    start: Option<&EdgeSet>,
) -> EdgeSet {
    let mut counts = edge_triangle_counts(g, mask, start);
    let mut live: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); g.n()];
    for &(u, v) in counts.keys() {
        live[u].insert(v);
        live[v].insert(u);
    }
    let mut queue: Vec<Edge> = counts
        .iter()
        .filter(|&(_, &c)| c < ell)
        .map(|(&e, _)| e)
        .collect();
    let mut queued: BTreeSet<Edge> = queue.iter().copied().collect();
    while let Some((u, v)) = queue.pop() {
        live[u].remove(&v);
        live[v].remove(&u);
        counts.remove(&(u, v));
        let common: Vec<Vertex> = live[u].intersection(&live[v]).copied().collect();
        for w in common {
            for e in [edge(u, w), edge(v, w)] {
                let c = counts.get_mut(&e).expect("live edge has a count");
                *c -= 1;
                if *c < ell && queued.insert(e) {
                    queue.push(e);
                }
            }
        }
    }
    counts.into_keys().collect()
}

/// Result of [`induced_subgraph`]: the new graph plus both id maps.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Graph,
    pub old_to_new: Vec<Option<Vertex>>,
    pub new_to_old: Vec<Vertex>,
}

pub fn induced_subgraph(g: &Graph, set: &VertexSet) -> Result<Induced> {
    if set.is_empty() {
        return Err(Error::Empty("vertex set for induced subgraph"));
    }
    let new_to_old: Vec<Vertex> = set.iter().collect();
    let mut old_to_new = vec![None; g.n()];
    for (i, &v) in new_to_old.iter().enumerate() {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        old_to_new[v] = Some(i);
    }
    let edges = g.edges().filter_map(|(u, v)| Some((old_to_new[u]?, old_to_new[v]?)));
    let graph = Graph::new(new_to_old.len(), edges)?;
    Ok(Induced {
        graph,
        old_to_new,
        new_to_old,
    })
}
