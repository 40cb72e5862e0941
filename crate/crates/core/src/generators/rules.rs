//! Edge rules stated per label pair, written from the construction
//! definitions rather than from the builder loops. `sourced(a, b)` says
//! whether the construction adds an edge "from" `a` to `b`; adjacency is
//! the symmetric closure.

use crate::graph::Vertex;

use super::{Construction, GadgetInstance, GadgetParams, Label};

pub(super) fn sourced(inst: &GadgetInstance, a: &Label, b: &Label) -> bool {
    let src = &inst.source;
    let linked = |v: Vertex, w: Vertex| v != w && src.has_edge(v, w);
    match &inst.construction {
        Construction::Vt2 { ell } => {
            let c = GadgetParams::clique_size(*ell);
            match (*a, *b) {
                (Label::T { owner: v, i }, Label::T { owner: w, i: j }) => {
                    (v == w && i < j) || (linked(v, w) && i % 2 == 1 && j == i + 1 && j <= 2 * (c / 2))
                }
                (Label::Y { i }, Label::Y { i: j }) => i < j,
                (Label::T { i, .. }, Label::Y { i: j }) => i == j,
                _ => false,
            }
        }
        Construction::Vts { s, ell } => {
            let (s, ell) = (*s, *ell);
            let ss = GadgetParams::s_star(s);
            match (*a, *b) {
                (Label::P { owner: v, i }, Label::Q { owner: w, i: j }) => {
                    if v == w {
                        return i == j;
                    }
                    let case_one = s % 2 == 1;
                    let case_two = s % 2 == 0 && ell >= 3 && (i == 1 || i == ell);
                    linked(v, w) && i == j && (case_one || case_two)
                }
                (Label::P { owner: v, i }, Label::X { owner: w, layer, i: j })
                | (Label::Q { owner: v, i }, Label::X { owner: w, layer, i: j }) => {
                    if v == w {
                        return (i < ell && layer == 1) || (i == ell && layer == ss);
                    }
                    let is_p = matches!(a, Label::P { .. });
                    is_p && s % 2 == 0 && ell == 2 && linked(v, w) && i == 1 && layer == ss && j == 1
                }
                (Label::Yc { owner: v, layer: t, i }, Label::Zc { owner: w, layer: t2, i: i2 }) => {
                    v == w && t == t2 && i == i2
                }
                (Label::Yc { owner: v, layer: t, i }, Label::X { owner: w, layer, i: j })
                | (Label::Zc { owner: v, layer: t, i }, Label::X { owner: w, layer, i: j }) => {
                    v == w && ((layer == t && j == i) || (layer == t + 1 && j != i))
                }
                _ => false,
            }
        }
        Construction::Et { s, ell, modulus } => {
            let ls = GadgetParams::ell_star(*ell);
            let x = GadgetParams::ring_x(*s, *ell);
            let m = modulus.of(x) as isize;
            let band = 3 * ls as isize;
            // some offset j in lo..=hi (j = 0 excluded when `skip_zero`) maps i onto t
            let hits = |i: usize, t: usize, lo: isize, hi: isize, skip_zero: bool| {
                (lo..=hi).any(|j| !(skip_zero && j == 0) && (i as isize + j).rem_euclid(m) == t as isize)
            };
            let cross = *ell as isize / 2;
            match (*a, *b) {
                (Label::A { owner: v, i }, Label::A { owner: w, i: t })
                | (Label::B { owner: v, i }, Label::B { owner: w, i: t }) => v == w && hits(i, t, -band, band, true),
                (Label::A { owner: v, i }, Label::B { owner: w, i: t }) => {
                    (v == w && hits(i, t, -band, band, false)) || (linked(v, w) && hits(i, t, 0, cross, false))
                }
                (Label::C { owner: v, i }, Label::A { owner: w, i: t }) => v == w && hits(i, t, -band, band, false),
                (Label::C { owner: v, i }, Label::B { owner: w, i: t }) => {
                    (v == w && hits(i, t, -band, band, false)) || (linked(v, w) && hits(i, t, 0, cross, false))
                }
                (Label::C { owner: v, i }, Label::C { owner: w, i: t }) => v == w && hits(i, t, -band, band, true),
                _ => false,
            }
        }
        Construction::Seeded2 { h, u, v } => match (*a, *b) {
            (Label::Seed { h: p }, Label::Seed { h: q }) => h.has_edge(p, q),
            (Label::Copy { side, x }, Label::Copy { side: side2, x: y }) => {
                (side == side2 && linked(x, y)) || (side == 1 && side2 == 2 && x == y)
            }
            (Label::Seed { h: w }, Label::Copy { side, .. }) => (w == *u && side == 1) || (w == *v && side == 2),
            (Label::Apex, Label::Seed { .. }) | (Label::Apex, Label::Star { .. }) => true,
            (Label::Star { side }, Label::Copy { side: side2, .. }) => side == side2,
            (Label::Star { .. }, Label::Seed { h: w }) => w != *u && w != *v,
            _ => false,
        },
        Construction::Seededs { h, s, d1 } => {
            let in_d1 = |w: Vertex| d1.contains(&w);
            match (*a, *b) {
                (Label::Seed { h: p }, Label::Seed { h: q }) => h.has_edge(p, q),
                (Label::Copy { side, x }, Label::Copy { side: side2, x: y }) => side == side2 && linked(x, y),
                (Label::Seed { h: w }, Label::Copy { side, .. }) => (side == 1) == in_d1(w),
                (Label::Seed { h: w }, Label::Path { i }) => (in_d1(w) && i == 1) || (!in_d1(w) && i == s - 1),
                (Label::Path { i }, Label::Path { i: j }) => j == i + 1,
                (Label::Copy { side: 1, x }, Label::Link { x: y, i: 1 }) => x == y,
                (Label::Link { x, i }, Label::Link { x: y, i: j }) => x == y && j == i + 1,
                (Label::Link { x, i }, Label::Copy { side: 2, x: y }) => x == y && i == s - 2,
                _ => false,
            }
        }
    }
}
