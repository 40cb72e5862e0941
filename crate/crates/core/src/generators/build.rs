use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{set_distances, Edge, Graph, Vertex, VertexSet};
use crate::properties::ProblemSpec;

use super::{Construction, GadgetInstance, GadgetParams, Label, RingModulus};

#[derive(Default)]
struct Builder {
    layout: Vec<Label>,
    ids: HashMap<Label, Vertex>,
    edges: Vec<Edge>,
}

impl Builder {
    fn add(&mut self, label: Label) {
        let id = self.layout.len();
        let clash = self.ids.insert(label, id);
        debug_assert!(clash.is_none(), "duplicate label {label}");
        self.layout.push(label);
    }

    fn id(&self, label: &Label) -> Vertex {
        self.ids[label]
    }

    fn join(&mut self, a: Label, b: Label) {
        let (u, v) = (self.id(&a), self.id(&b));
        if u != v {
            self.edges.push((u, v));
        }
    }

    fn finish(
        self,
        source: &Graph,
        k: usize,
        k_prime: usize,
        spec: ProblemSpec,
        construction: Construction,
        params: GadgetParams,
    ) -> Result<GadgetInstance> {
        let graph = Graph::new(self.layout.len(), self.edges)?;
        Ok(GadgetInstance {
            graph,
            k_prime,
            spec,
            layout: self.layout,
            source: source.clone(),
            source_k: k,
            construction,
            params,
        })
    }
}

fn need(ok: bool, why: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidSpec(why()))
    }
}

/// Vertex variant, s = 2. Order: `T^0 (x_1..x_c), T^1, …, Y (y_1..y_c)`.
/// `k' = c(k+1)`.
pub fn gen_vt2(source: &Graph, k: usize, ell: usize) -> Result<GadgetInstance> {
    need(k >= 1 && ell >= 1, || format!("need k >= 1 and l >= 1 (got k = {k}, l = {ell})"))?;
    let c = GadgetParams::clique_size(ell);
    let mut b = Builder::default();
    for owner in source.vertices() {
        for i in 1..=c {
            b.add(Label::T { owner, i });
        }
    }
    for i in 1..=c {
        b.add(Label::Y { i });
    }
    for owner in source.vertices() {
        for i in 1..=c {
            for j in i + 1..=c {
                b.join(Label::T { owner, i }, Label::T { owner, i: j });
            }
            b.join(Label::T { owner, i }, Label::Y { i });
        }
    }
    for i in 1..=c {
        for j in i + 1..=c {
            b.join(Label::Y { i }, Label::Y { i: j });
        }
    }
    for (v, w) in source.edges() {
        for i in 1..=c / 2 {
            b.join(Label::T { owner: v, i: 2 * i - 1 }, Label::T { owner: w, i: 2 * i });
            b.join(Label::T { owner: w, i: 2 * i - 1 }, Label::T { owner: v, i: 2 * i });
        }
    }
    let k_prime = c * (k + 1);
    let params = GadgetParams {
        c: Some(c),
        ..Default::default()
    };
    b.finish(
        source,
        k,
        k_prime,
        ProblemSpec::vertex_triangle(2, ell, k_prime),
        Construction::Vt2 { ell },
        params,
    )
}

/// Vertex variant, s = 3 (any l) or s >= 4 (l >= 2). Per owner, in order:
/// `p_1..p_l, q_1..q_l, x_{j,i}, y_{t,i}, z_{t,i}` (layer-major).
/// `k' = 3·l·k·s*`.
pub fn gen_vts(source: &Graph, k: usize, ell: usize, s: usize) -> Result<GadgetInstance> {
    need(k >= 1, || "need k >= 1".into())?;
    need((s == 3 && ell >= 1) || (s >= 4 && ell >= 2), || {
        format!("the cascade gadget needs s = 3 and l >= 1, or s >= 4 and l >= 2 (got s = {s}, l = {ell})")
    })?;
    let ss = GadgetParams::s_star(s);
    let mut b = Builder::default();
    for owner in source.vertices() {
        for i in 1..=ell {
            b.add(Label::P { owner, i });
        }
        for i in 1..=ell {
            b.add(Label::Q { owner, i });
        }
        for layer in 1..=ss {
            for i in 1..=ell {
                b.add(Label::X { owner, layer, i });
            }
        }
        for layer in 1..ss {
            for i in 1..=ell {
                b.add(Label::Yc { owner, layer, i });
            }
        }
        for layer in 1..ss {
            for i in 1..=ell {
                b.add(Label::Zc { owner, layer, i });
            }
        }
    }
    for owner in source.vertices() {
        for i in 1..=ell {
            b.join(Label::P { owner, i }, Label::Q { owner, i });
            let layer = if i < ell { 1 } else { ss };
            for j in 1..=ell {
                b.join(Label::P { owner, i }, Label::X { owner, layer, i: j });
                b.join(Label::Q { owner, i }, Label::X { owner, layer, i: j });
            }
        }
        for t in 1..ss {
            for i in 1..=ell {
                let (y, z) = (Label::Yc { owner, layer: t, i }, Label::Zc { owner, layer: t, i });
                b.join(y, z);
                b.join(y, Label::X { owner, layer: t, i });
                b.join(z, Label::X { owner, layer: t, i });
                for j in (1..=ell).filter(|&j| j != i) {
                    b.join(y, Label::X { owner, layer: t + 1, i: j });
                    b.join(z, Label::X { owner, layer: t + 1, i: j });
                }
            }
        }
    }
    for (v, w) in source.edges() {
        let pq = |b: &mut Builder, i: usize| {
            b.join(Label::P { owner: v, i }, Label::Q { owner: w, i });
            b.join(Label::Q { owner: v, i }, Label::P { owner: w, i });
        };
        if s % 2 == 1 {
            for i in 1..=ell {
                pq(&mut b, i);
            }
        } else if ell >= 3 {
            pq(&mut b, 1);
            pq(&mut b, ell);
        } else {
            b.join(Label::P { owner: v, i: 1 }, Label::X { owner: w, layer: ss, i: 1 });
            b.join(Label::P { owner: w, i: 1 }, Label::X { owner: v, layer: ss, i: 1 });
        }
    }
    let k_prime = 3 * ell * k * ss;
    let params = GadgetParams {
        s_star: Some(ss),
        ..Default::default()
    };
    b.finish(
        source,
        k,
        k_prime,
        ProblemSpec::vertex_triangle(s, ell, k_prime),
        Construction::Vts { s, ell },
        params,
    )
}

/// Edge variant, l >= 2, k >= 3. Per owner: `a_0..a_x, b_0..b_x`, then (odd
/// l) `c_i` for `i ≡ 0 (mod l*)`. Edges are generated from each source index
/// `i` to `(i + j) mod m`, `m` per `modulus`.
/// `k' = 2(x+1)k` (even l) or `(2(x+1) + 6s−5)k` (odd l).
pub fn gen_et(source: &Graph, k: usize, ell: usize, s: usize, modulus: RingModulus) -> Result<GadgetInstance> {
    need(k >= 3, || format!("the ring gadget needs a Clique instance with k >= 3 (got k = {k})"))?;
    need(ell >= 2, || format!("the ring gadget needs l >= 2 (got l = {ell})"))?;
    need(s >= 2, || format!("the ring gadget needs s >= 2 (got s = {s})"))?;
    let ls = GadgetParams::ell_star(ell);
    let x = GadgetParams::ring_x(s, ell);
    let m = modulus.of(x);
    let odd = ell % 2 == 1;
    let band = 3 * ls as isize;
    let wrap = |i: usize, j: isize| (i as isize + j).rem_euclid(m as isize) as usize;
    let c_indices: Vec<usize> = if odd { (0..=x).filter(|i| i % ls == 0).collect() } else { Vec::new() };

    let mut b = Builder::default();
    for owner in source.vertices() {
        for i in 0..=x {
            b.add(Label::A { owner, i });
        }
        for i in 0..=x {
            b.add(Label::B { owner, i });
        }
        for &i in &c_indices {
            b.add(Label::C { owner, i });
        }
    }
    let has_c = |i: usize| odd && i % ls == 0 && i <= x;
    for owner in source.vertices() {
        for i in 0..=x {
            for j in -band..=band {
                let t = wrap(i, j);
                if j != 0 {
                    b.join(Label::A { owner, i }, Label::A { owner, i: t });
                    b.join(Label::B { owner, i }, Label::B { owner, i: t });
                }
                b.join(Label::A { owner, i }, Label::B { owner, i: t });
            }
        }
        for &i in &c_indices {
            for j in -band..=band {
                let t = wrap(i, j);
                b.join(Label::C { owner, i }, Label::A { owner, i: t });
                b.join(Label::C { owner, i }, Label::B { owner, i: t });
                if j != 0 && has_c(t) {
                    b.join(Label::C { owner, i }, Label::C { owner, i: t });
                }
            }
        }
    }
    for (u, v) in source.edges() {
        for (p, q) in [(v, u), (u, v)] {
            for i in 0..=x {
                for j in 0..=(ell / 2) as isize {
                    let t = wrap(i, j);
                    b.join(Label::A { owner: p, i }, Label::B { owner: q, i: t });
                    if has_c(i) {
                        b.join(Label::C { owner: p, i }, Label::B { owner: q, i: t });
                    }
                }
            }
        }
    }
    let per_vertex = 2 * (x + 1) + c_indices.len();
    let k_prime = per_vertex * k;
    let params = GadgetParams {
        ell_star: Some(ls),
        x: Some(x),
        ..Default::default()
    };
    b.finish(
        source,
        k,
        k_prime,
        ProblemSpec::edge_triangle(s, ell, k_prime),
        Construction::Et { s, ell, modulus },
        params,
    )
}

fn add_seeds(b: &mut Builder, h: &Graph) {
    for v in h.vertices() {
        b.add(Label::Seed { h: v });
    }
    for (p, q) in h.edges() {
        b.join(Label::Seed { h: p }, Label::Seed { h: q });
    }
}

fn add_copies(b: &mut Builder, source: &Graph) {
    for side in [1, 2] {
        for x in source.vertices() {
            b.add(Label::Copy { side, x });
        }
    }
    for side in [1, 2] {
        for (x, y) in source.edges() {
            b.join(Label::Copy { side, x }, Label::Copy { side, x: y });
        }
    }
}

/// Seeded, s = 2; `h` must have a non-edge (the lexicographically first one
/// is used). Order: `W` (one vertex per vertex of `h`), `G_u`, `G_v`, `p`,
/// `u*`, `v*`. `k' = 2k + |W| + 3`.
pub fn gen_seeded2(source: &Graph, k: usize, h: &Graph) -> Result<GadgetInstance> {
    need(k >= 1, || "need k >= 1".into())?;
    let (u, v) = h
        .vertices()
        .flat_map(|a| (a + 1..h.n()).map(move |b| (a, b)))
        .find(|&(a, b)| !h.has_edge(a, b))
        .ok_or_else(|| Error::InvalidSpec("the seed shape must contain two non-adjacent vertices".into()))?;
    let mut b = Builder::default();
    add_seeds(&mut b, h);
    add_copies(&mut b, source);
    b.add(Label::Apex);
    b.add(Label::Star { side: 1 });
    b.add(Label::Star { side: 2 });
    for x in source.vertices() {
        b.join(Label::Seed { h: u }, Label::Copy { side: 1, x });
        b.join(Label::Seed { h: v }, Label::Copy { side: 2, x });
        b.join(Label::Copy { side: 1, x }, Label::Copy { side: 2, x });
        for side in [1, 2] {
            b.join(Label::Star { side }, Label::Copy { side, x });
        }
    }
    for w in h.vertices() {
        b.join(Label::Apex, Label::Seed { h: w });
        if w != u && w != v {
            b.join(Label::Star { side: 1 }, Label::Seed { h: w });
            b.join(Label::Star { side: 2 }, Label::Seed { h: w });
        }
    }
    b.join(Label::Apex, Label::Star { side: 1 });
    b.join(Label::Apex, Label::Star { side: 2 });
    let k_prime = 2 * k + h.n() + 3;
    b.finish(
        source,
        k,
        k_prime,
        ProblemSpec::seeded(2, k_prime, 0..h.n()),
        Construction::Seeded2 { h: h.clone(), u, v },
        GadgetParams::default(),
    )
}

/// Seeded, s >= 3; `h` must be disconnected (`D_1` is the component of
/// vertex 0). Order: `W`, `G_1`, `G_2`, `p_1..p_{s−1}`, then `q^x_1..q^x_{s−2}`
/// per source vertex `x`. `k' = sk + |W| + s − 1`.
pub fn gen_seededs(source: &Graph, k: usize, h: &Graph, s: usize) -> Result<GadgetInstance> {
    need(k >= 1, || "need k >= 1".into())?;
    need(s >= 3, || format!("this seeded gadget needs s >= 3 (got s = {s})"))?;
    need(h.n() > 0, || "the seed shape must be non-empty".into())?;
    let dist = set_distances(h, &VertexSet::singleton(h.n(), 0), None);
    let d1: Vec<Vertex> = h.vertices().filter(|&w| dist[w].is_some()).collect();
    need(d1.len() < h.n(), || "the seed shape must have at least two connected components".into())?;
    let mut b = Builder::default();
    add_seeds(&mut b, h);
    add_copies(&mut b, source);
    for i in 1..s {
        b.add(Label::Path { i });
    }
    for x in source.vertices() {
        for i in 1..=s - 2 {
            b.add(Label::Link { x, i });
        }
    }
    for w in h.vertices() {
        let side = if d1.binary_search(&w).is_ok() { 1 } else { 2 };
        for x in source.vertices() {
            b.join(Label::Seed { h: w }, Label::Copy { side, x });
        }
        let end = if side == 1 { 1 } else { s - 1 };
        b.join(Label::Seed { h: w }, Label::Path { i: end });
    }
    for i in 1..s - 1 {
        b.join(Label::Path { i }, Label::Path { i: i + 1 });
    }
    for x in source.vertices() {
        b.join(Label::Copy { side: 1, x }, Label::Link { x, i: 1 });
        for i in 1..s - 2 {
            b.join(Label::Link { x, i }, Label::Link { x, i: i + 1 });
        }
        b.join(Label::Link { x, i: s - 2 }, Label::Copy { side: 2, x });
    }
    let k_prime = s * k + h.n() + s - 1;
    b.finish(
        source,
        k,
        k_prime,
        ProblemSpec::seeded(s, k_prime, 0..h.n()),
        Construction::Seededs { h: h.clone(), s, d1 },
        GadgetParams::default(),
    )
}
