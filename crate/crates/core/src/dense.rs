//! Bitset adjacency for small local graphs (search universes, robustness
//! sweeps). Rows are kept symmetric by every mutator.

use fixedbitset::FixedBitSet;

use crate::graph::{Edge, Graph, Vertex};

#[derive(Clone, Debug)]
pub(crate) struct DenseGraph {
    rows: Vec<FixedBitSet>,
}

/// Outcome of a bitset BFS restricted to a vertex mask.
pub(crate) struct Sweep {
    pub reached: FixedBitSet,
    pub eccentricity: usize,
}

impl DenseGraph {
    pub fn empty(n: usize) -> Self {
        DenseGraph {
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// Local copy of `g[set]`; local id `i` is the `i`-th member of `set`.
    pub fn induced(g: &Graph, members: &[Vertex]) -> Self {
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in members.iter().enumerate() {
            local[v] = i;
        }
        let mut dg = DenseGraph::empty(members.len());
        for (i, &v) in members.iter().enumerate() {
            for &w in g.neighbors(v) {
                let j = local[w];
                if j != usize::MAX {
                    dg.rows[i].insert(j);
                }
            }
        }
        dg
    }

    pub fn from_edges<I: IntoIterator<Item = Edge>>(n: usize, edges: I) -> Self {
        let mut dg = DenseGraph::empty(n);
        for (u, v) in edges {
            dg.add_edge(u, v);
        }
        dg
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u].set(v, false);
        self.rows[v].set(u, false);
    }

    /// Deletes every edge at `v`.
    pub fn isolate(&mut self, v: usize) {
        let nbrs: Vec<usize> = self.rows[v].ones().collect();
        for u in nbrs {
            self.rows[u].set(v, false);
        }
        self.rows[v].clear();
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, r)| r.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// BFS from `source` over vertices of `mask`.
    pub fn sweep(&self, source: usize, mask: &FixedBitSet) -> Sweep {
        let n = self.n();
        let mut reached = FixedBitSet::with_capacity(n);
        reached.insert(source);
        let mut frontier = reached.clone();
        let mut next = FixedBitSet::with_capacity(n);
        let mut ecc = 0;
        loop {
            next.clear();
            for v in frontier.ones() {
                next.union_with(&self.rows[v]);
            }
            next.intersect_with(mask);
            next.difference_with(&reached);
            if next.is_clear() {
                break;
            }
            ecc += 1;
            reached.union_with(&next);
            std::mem::swap(&mut frontier, &mut next);
        }
        Sweep {
            reached,
            eccentricity: ecc,
        }
    }

    /// Vertices of `mask` within `radius` of `source` (BFS inside `mask`).
    pub fn ball(&self, source: usize, mask: &FixedBitSet, radius: usize) -> FixedBitSet {
        let n = self.n();
        let mut reached = FixedBitSet::with_capacity(n);
        reached.insert(source);
        let mut frontier = reached.clone();
        let mut next = FixedBitSet::with_capacity(n);
        for _ in 0..radius {
            next.clear();
            for v in frontier.ones() {
                next.union_with(&self.rows[v]);
            }
            next.intersect_with(mask);
            next.difference_with(&reached);
            if next.is_clear() {
                break;
            }
            reached.union_with(&next);
            std::mem::swap(&mut frontier, &mut next);
        }
        reached
    }

    /// Per-vertex distances from `source` inside `mask` (`None` = unreachable).
    pub fn distances(&self, source: usize, mask: &FixedBitSet) -> Vec<Option<usize>> {
        let n = self.n();
        let mut dist = vec![None; n];
        let mut reached = FixedBitSet::with_capacity(n);
        reached.insert(source);
        dist[source] = Some(0);
        let mut frontier = reached.clone();
        let mut next = FixedBitSet::with_capacity(n);
        let mut d = 0;
        loop {
            next.clear();
            for v in frontier.ones() {
                next.union_with(&self.rows[v]);
            }
            next.intersect_with(mask);
            next.difference_with(&reached);
            if next.is_clear() {
                break;
            }
            d += 1;
            for v in next.ones() {
                dist[v] = Some(d);
            }
            reached.union_with(&next);
            std::mem::swap(&mut frontier, &mut next);
        }
        dist
    }

    /// Whether every pair of `mask` is within distance `bound`.
    pub fn diameter_at_most(&self, mask: &FixedBitSet, bound: usize) -> bool {
        let size = mask.count_ones(..);
        mask.ones().all(|v| {
            let sw = self.sweep(v, mask);
            sw.eccentricity <= bound && sw.reached.count_ones(..) == size
        })
    }
}
