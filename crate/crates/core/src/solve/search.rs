//! Depth-first branch-and-bound inside one universe, on local ids.
//!
//! Each node peels the candidate set to the greatest fixpoint of the
//! variant's triangle condition and the "within s of every forced vertex"
//! condition, then either accepts the candidate (diameter ≤ s) or branches
//! on the farthest pair. Both peels only drop vertices/edges that no
//! solution inside the candidate can use, so the fixpoint is order-free.

use std::sync::atomic::{AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;

use crate::dense::DenseGraph;
use crate::properties::Variant;

/// Bounds imposed from outside the universe.
pub(crate) struct Limits<'a> {
    /// Candidates smaller than this value are pruned (shared by workers).
    pub shared_min: Option<&'a AtomicUsize>,
    /// Decision mode: stop at the first solution of at least this size.
    pub target: Option<usize>,
    pub cancelled: &'a (dyn Fn() -> bool + Sync),
}

#[derive(Clone, Debug)]
pub(crate) struct SearchState {
    pub candidate: FixedBitSet,
    /// Seeds and branching commitments; always a subset of `candidate`.
    pub forced: FixedBitSet,
    /// Edge variant only: the surviving witness edges. Vertices dropped
    /// from `candidate` are isolated here.
    pub live: Option<DenseGraph>,
}

pub(crate) struct Search<'a> {
    graph: &'a DenseGraph,
    variant: Variant,
    s: usize,
    ell: usize,
    floor: usize,
    limits: Limits<'a>,
    pub best: Option<SearchState>,
    pub nodes: u64,
    done: bool,
}

impl<'a> Search<'a> {
    /// `floor`: only solutions strictly larger are reported.
    pub fn new(graph: &'a DenseGraph, variant: Variant, s: usize, ell: usize, floor: usize, limits: Limits<'a>) -> Self {
        Search {
            graph,
            variant,
            s,
            ell,
            floor,
            limits,
            best: None,
            nodes: 0,
            done: false,
        }
    }

    pub fn run(&mut self, forced: &[usize]) {
        let n = self.graph.n();
        let mut candidate = FixedBitSet::with_capacity(n);
        candidate.insert_range(..);
        let mut fixed = FixedBitSet::with_capacity(n);
        for &f in forced {
            fixed.insert(f);
        }
        let live = (self.variant == Variant::EdgeTriangle).then(|| self.graph.clone());
        self.node(SearchState {
            candidate,
            forced: fixed,
            live,
        });
    }

    fn rows<'s>(&'s self, st: &'s SearchState) -> &'s DenseGraph {
        st.live.as_ref().unwrap_or(self.graph)
    }

    fn floor(&self) -> usize {
        let mut f = self.floor;
        if let Some(t) = self.limits.target {
            f = f.max(t.saturating_sub(1));
        }
        if let Some(shared) = self.limits.shared_min {
            f = f.max(shared.load(Ordering::Relaxed).saturating_sub(1));
        }
        f
    }

    fn node(&mut self, mut st: SearchState) {
        if self.done || (self.limits.cancelled)() {
            self.done = true;
            return;
        }
        self.nodes += 1;
        if !self.peel(&mut st) {
            return;
        }
        let size = st.candidate.count_ones(..);
        if size <= self.floor() {
            return;
        }
        let Some((a, b)) = self.far_pair(&st) else {
            self.record(st, size);
            return;
        };
        let (fa, fb) = (st.forced.contains(a), st.forced.contains(b));
        match (fa, fb) {
            (true, true) => {}
            (true, false) | (false, true) => {
                let drop = if fa { b } else { a };
                remove(&mut st, drop);
                self.node(st);
            }
            (false, false) => {
                let rows = self.rows(&st);
                let deg = |v: usize| rows.row(v).intersection_count(&st.candidate);
                let (first, other) = if deg(b) > deg(a) { (b, a) } else { (a, b) };
                // every solution misses `first`, or keeps it and so misses `other`
                let mut without = st.clone();
                remove(&mut without, first);
                self.node(without);
                if self.done {
                    return;
                }
                st.forced.insert(first);
                remove(&mut st, other);
                self.node(st);
            }
        }
    }

    fn record(&mut self, st: SearchState, size: usize) {
        if let Some(shared) = self.limits.shared_min {
            shared.fetch_max(size, Ordering::Relaxed);
        }
        self.floor = size;
        self.best = Some(st);
        if self.limits.target.is_some() {
            self.done = true;
        }
    }

    /// Returns false when a forced vertex had to go.
    fn peel(&self, st: &mut SearchState) -> bool {
        loop {
            let ok = match self.variant {
                Variant::VertexTriangle => self.peel_vertices(st),
                Variant::EdgeTriangle => self.peel_edges(st),
                Variant::Club | Variant::Seeded => true,
            };
            if !ok {
                return false;
            }
            match self.peel_distance(st) {
                None => return false,
                Some(false) => return true,
                Some(true) => {}
            }
        }
    }

    fn triangles_at(&self, st: &SearchState, v: usize) -> usize {
        let mut nv = self.graph.row(v).clone();
        nv.intersect_with(&st.candidate);
        nv.ones().map(|u| nv.intersection_count(self.graph.row(u))).sum::<usize>() / 2
    }

    fn peel_vertices(&self, st: &mut SearchState) -> bool {
        let mut queue: Vec<usize> = st
            .candidate
            .ones()
            .filter(|&v| self.triangles_at(st, v) < self.ell)
            .collect();
        let mut queued = FixedBitSet::with_capacity(self.graph.n());
        queue.iter().for_each(|&v| queued.insert(v));
        while let Some(x) = queue.pop() {
            if st.forced.contains(x) {
                return false;
            }
            st.candidate.set(x, false);
            let mut touched = self.graph.row(x).clone();
            touched.intersect_with(&st.candidate);
            for u in touched.ones() {
                if !queued.contains(u) && self.triangles_at(st, u) < self.ell {
                    queued.insert(u);
                    queue.push(u);
                }
            }
        }
        true
    }

    fn peel_edges(&self, st: &mut SearchState) -> bool {
        let ell = self.ell;
        let live = st.live.as_mut().expect("edge variant keeps live edges");
        let common = |live: &DenseGraph, u: usize, v: usize| live.row(u).intersection_count(live.row(v));
        let mut queue: Vec<(usize, usize)> = live.edges().filter(|&(u, v)| common(live, u, v) < ell).collect();
        while let Some((u, v)) = queue.pop() {
            if !live.has_edge(u, v) {
                continue;
            }
            let mut shared = live.row(u).clone();
            shared.intersect_with(live.row(v));
            live.remove_edge(u, v);
            for w in shared.ones() {
                for (a, b) in [(u, w), (v, w)] {
                    if common(live, a, b) < ell {
                        queue.push((a, b));
                    }
                }
            }
        }
        // a vertex without witness edges is disconnected from the rest
        let bare: Vec<usize> = st.candidate.ones().filter(|&v| live.row(v).is_clear()).collect();
        for v in bare {
            if st.forced.contains(v) {
                return false;
            }
            st.candidate.set(v, false);
        }
        true
    }

    /// `None` if forced vertices drifted apart; otherwise whether anything
    /// was removed.
    fn peel_distance(&self, st: &mut SearchState) -> Option<bool> {
        let rows = self.rows(st);
        let mut keep = st.candidate.clone();
        for f in st.forced.ones() {
            keep.intersect_with(&rows.ball(f, &st.candidate, self.s));
        }
        if !st.forced.is_subset(&keep) {
            return None;
        }
        if keep == st.candidate {
            return Some(false);
        }
        let gone: Vec<usize> = st.candidate.difference(&keep).collect();
        for v in gone {
            remove(st, v);
        }
        Some(true)
    }

    /// The pair at maximum distance (> s), smallest ids first on ties.
    fn far_pair(&self, st: &SearchState) -> Option<(usize, usize)> {
        let rows = self.rows(st);
        let mut best: Option<(usize, usize, usize)> = None;
        for u in st.candidate.ones() {
            let dist = rows.distances(u, &st.candidate);
            for v in st.candidate.ones().filter(|&v| v > u) {
                let d = dist[v].unwrap_or(usize::MAX);
                if d > self.s && best.is_none_or(|(bd, _, _)| d > bd) {
                    best = Some((d, u, v));
                }
            }
        }
        best.map(|(_, u, v)| (u, v))
    }
}

fn remove(st: &mut SearchState, v: usize) {
    st.candidate.set(v, false);
    if let Some(live) = st.live.as_mut() {
        live.isolate(v);
    }
}
