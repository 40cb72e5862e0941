//! Acceptance suite: one PASS/FAIL line per criterion. Runs as a plain
//! binary (`harness = false`) so the report is printed unconditionally:
//!
//!     cargo test --release -p sclub-core --test acceptance
//!
//! The process exits non-zero only on an unexpected failure; the one known
//! construction defect (cascade gadget at s = 4, l >= 3) is reported as FAIL
//! but does not fail the build as long as every mismatch falls inside it.

use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;
use sclub::generators::{
    gen_et, gen_random_gnp, gen_seeded2, gen_seededs, gen_vt2, gen_vts, Construction, GadgetInstance, RingModulus,
};
use sclub::graph::{bfs_distances, vertex_triangle_counts};
use sclub::kernel::{
    et_shortcut, kernelize, reduce, seeded_shortcut, theorem_bound, vt_shortcut, SeededCase, TuringOutcome,
};
use sclub::properties::{check_certificate, robustness_check};
use sclub::solve::{brute_force_max, clique_max, solve_decision, solve_max};
use sclub::{Certificate, Error, Graph, ProblemSpec, Variant};

// pinned parameters
const C1_GRAPHS: u64 = 200;
const C1_MAX_N: usize = 12;
const C1_PROBS: [f64; 3] = [0.2, 0.4, 0.6];
const C2_SAMPLES: u64 = 50;
const C2_MAX_N: usize = 8;
const C5_PER_BRANCH: usize = 100;
const TOLERANCE: usize = 0;

struct Report {
    unexpected: usize,
}

impl Report {
    fn line(&mut self, id: u32, pass: bool, expected_fail: bool, what: &str, detail: String, t: Instant) {
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("criterion {id}: {verdict} - {what}: {detail} [{:.1}s]", t.elapsed().as_secs_f64());
        if !pass && !expected_fail {
            self.unexpected += 1;
        }
    }
}

/// One edge-variant certificate to re-check for robustness.
struct EtCert {
    graph: Graph,
    cert: Certificate,
    s: usize,
    ell: usize,
}

struct C1Instance {
    graph: Graph,
    spec: ProblemSpec,
}

fn c1_corpus() -> Vec<C1Instance> {
    let mut out = Vec::new();
    for i in 0..C1_GRAPHS {
        let n = 4 + (i as usize % (C1_MAX_N - 3));
        let p = C1_PROBS[i as usize % 3];
        let g = gen_random_gnp(n, p, 0xACCE_0000 + i).unwrap();
        for s in 2..=4 {
            for ell in 1..=2 {
                out.push(C1Instance { graph: g.clone(), spec: ProblemSpec::vertex_triangle(s, ell, 1) });
                out.push(C1Instance { graph: g.clone(), spec: ProblemSpec::edge_triangle(s, ell, 1) });
            }
            // single seed, an adjacent pair (clique) or an arbitrary pair
            let a = i as usize % n;
            let seeds = match (i / 3) % 3 {
                0 => vec![a],
                1 => g.edges().nth(i as usize % g.m().max(1)).map_or(vec![a], |(u, v)| vec![u, v]),
                _ => vec![a, (a + 1 + i as usize / 7 % (n - 1)) % n],
            };
            out.push(C1Instance { graph: g.clone(), spec: ProblemSpec::seeded(s, 1, seeds) });
        }
    }
    out
}

fn criterion_1(rep: &mut Report, corpus: &[C1Instance], et_certs: &mut Vec<EtCert>) {
    let t = Instant::now();
    let results: Vec<(usize, usize, Option<Certificate>)> = corpus
        .par_iter()
        .map(|c| {
            let got = solve_max(&c.graph, &c.spec).unwrap();
            let (want, _) = brute_force_max(&c.graph, &c.spec).unwrap();
            (got.optimum_size, want, got.best)
        })
        .collect();
    let mut bad = 0;
    for (c, (got, want, best)) in corpus.iter().zip(results) {
        if got.abs_diff(want) > TOLERANCE {
            bad += 1;
            println!("  mismatch: n={} {:?}: solve {got}, brute force {want}", c.graph.n(), c.spec);
        }
        if c.spec.variant == Variant::EdgeTriangle {
            if let Some(cert) = best {
                et_certs.push(EtCert { graph: c.graph.clone(), cert, s: c.spec.s, ell: c.spec.threshold() });
            }
        }
    }
    rep.line(
        1,
        bad == 0,
        false,
        "oracle equivalence",
        format!("{} instances from {C1_GRAPHS} graphs, {bad} mismatches (tolerance {TOLERANCE})", corpus.len()),
        t,
    );
}

fn c2_sources(salt: u64) -> impl Iterator<Item = (u64, Graph)> {
    (0..C2_SAMPLES).map(move |i| {
        let n = 3 + (i as usize % (C2_MAX_N - 2));
        let p = [0.3, 0.5, 0.7, 0.9][i as usize % 4];
        (i, gen_random_gnp(n, p, salt + i).unwrap())
    })
}

fn c2_corpus() -> Vec<GadgetInstance> {
    let mut out = Vec::new();
    let pair = Graph::empty(2);
    for ell in [1, 2] {
        out.extend(c2_sources(0x1000 + ell as u64).map(|(i, src)| gen_vt2(&src, 2 + i as usize % 3, ell).unwrap()));
    }
    for (s, ell) in [(3, 1), (4, 2), (5, 2), (4, 3)] {
        out.extend(
            c2_sources(0x2000 + 16 * s as u64 + ell as u64).map(|(i, src)| gen_vts(&src, 2 + i as usize % 3, ell, s).unwrap()),
        );
    }
    for (s, ell) in [(2, 2), (3, 2), (2, 3)] {
        out.extend(c2_sources(0x3000 + 16 * s as u64 + ell as u64).map(|(i, src)| {
            gen_et(&src, 3 + i as usize % 2, ell, s, RingModulus::Cyclic).unwrap()
        }));
    }
    out.extend(c2_sources(0x4000).map(|(i, src)| gen_seeded2(&src, 2 + i as usize % 3, &pair).unwrap()));
    out.extend(c2_sources(0x5000).map(|(i, src)| gen_seededs(&src, 2 + i as usize % 3, &pair, 3).unwrap()));
    out
}

fn label(c: &Construction) -> String {
    match c {
        Construction::Vt2 { ell } => format!("vt2 l={ell}"),
        Construction::Vts { s, ell } => format!("vts s={s} l={ell}"),
        Construction::Et { s, ell, .. } => format!("et s={s} l={ell}"),
        Construction::Seeded2 { .. } => "seeded2".into(),
        Construction::Seededs { s, .. } => format!("seededs s={s}"),
    }
}

fn is_known_defect(c: &Construction) -> bool {
    matches!(c, Construction::Vts { s: 4, ell } if *ell >= 3)
}

fn criterion_2(rep: &mut Report, corpus: &[GadgetInstance], et_certs: &mut Vec<EtCert>) {
    let t = Instant::now();
    let results: Vec<(bool, bool, Option<Certificate>)> = corpus
        .par_iter()
        .map(|g| {
            let want = clique_max(&g.source).unwrap().0 >= g.source_k;
            let d = solve_decision(&g.graph, &g.spec).unwrap();
            (want, d.yes, d.certificate)
        })
        .collect();
    let mut groups: Vec<(String, usize, usize, usize)> = Vec::new(); // (name, samples, yes, mismatches)
    let mut stray = 0;
    for (g, (want, got, cert)) in corpus.iter().zip(results) {
        let name = label(&g.construction);
        if groups.last().is_none_or(|(n, ..)| *n != name) {
            groups.push((name, 0, 0, 0));
        }
        let entry = groups.last_mut().unwrap();
        entry.1 += 1;
        entry.2 += usize::from(want);
        if want != got {
            entry.3 += 1;
            if !is_known_defect(&g.construction) {
                stray += 1;
            }
        }
        if let (Construction::Et { s, ell, .. }, Some(cert)) = (&g.construction, cert) {
            et_certs.push(EtCert { graph: g.graph.clone(), cert, s: *s, ell: *ell });
        }
    }
    let total: usize = groups.iter().map(|g| g.3).sum();
    for (name, samples, yes, bad) in &groups {
        println!("  {name}: {samples} samples ({yes} yes), {bad} mismatches");
    }
    let detail = if total == 0 {
        format!("{} gadget instances, 0 mismatches", corpus.len())
    } else if stray == 0 {
        format!(
            "{} gadget instances, {total} mismatches, all in the cascade gadget at s = 4, l >= 3 \
             (its connector edges leave adjacent gadgets at distance 5; see README)",
            corpus.len()
        )
    } else {
        format!("{} gadget instances, {total} mismatches, {stray} outside the known defect", corpus.len())
    };
    rep.line(2, total == 0, stray == 0, "gadget fidelity", detail, t);
}

fn literal_modulus_info() {
    let mut bad = 0;
    let mut total = 0;
    for (s, ell) in [(2, 2), (3, 2), (2, 3)] {
        for (i, src) in c2_sources(0x3000 + 16 * s as u64 + ell as u64) {
            let k = 3 + i as usize % 2;
            let g = gen_et(&src, k, ell, s, RingModulus::Literal).unwrap();
            let want = clique_max(&src).unwrap().0 >= k;
            total += 1;
            bad += usize::from(solve_decision(&g.graph, &g.spec).unwrap().yes != want);
        }
    }
    println!("  info: ring indices reduced mod x (literal reading) instead of mod x+1: {bad}/{total} mismatches");
}

fn criterion_3(rep: &mut Report, certs: &[EtCert]) {
    let t = Instant::now();
    let outcomes: Vec<(bool, bool)> = certs
        .par_iter()
        .map(|c| {
            let r = robustness_check(&c.graph, &c.cert, c.s, c.ell, c.ell).unwrap();
            (r.holds, r.exhaustive)
        })
        .collect();
    let failures = outcomes.iter().filter(|o| !o.0).count();
    let sampled = outcomes.iter().filter(|o| !o.1).count();
    rep.line(
        3,
        failures == 0 && !certs.is_empty(),
        false,
        "robustness of edge-variant certificates (budget = l, bound min(s+l, 2s))",
        format!("{} certificates, {sampled} sampled (1000 draws), {failures} failures", certs.len()),
        t,
    );
}

fn criterion_4(rep: &mut Report, corpus: &[C1Instance]) {
    let t = Instant::now();
    let mut checked = 0;
    let mut universes = 0;
    let mut violations = 0;
    for c in corpus {
        let eligible = match c.spec.variant {
            Variant::Seeded => sclub::kernel::check_kernel_applicable(&c.graph, &c.spec).is_ok(),
            _ => c.spec.threshold() == 1,
        };
        if !eligible {
            continue;
        }
        for k in 2..=6 {
            let spec = ProblemSpec { k, ..c.spec.clone() };
            match kernelize(&c.graph, &spec) {
                Ok(kern) => {
                    if let TuringOutcome::Subinstances(subs) = kern.outcome {
                        if kern.trace.infeasible {
                            continue;
                        }
                        checked += 1;
                        let bound = theorem_bound(&spec).unwrap();
                        universes += subs.len();
                        violations += subs.iter().filter(|u| u.vertex_universe.len() as u128 > bound).count();
                    }
                }
                Err(Error::Inapplicable(_)) => {}
                Err(e) => {
                    println!("  {:?} k={k}: {e}", c.spec);
                    violations += 1;
                }
            }
        }
    }
    rep.line(
        4,
        violations == 0 && checked > 0,
        false,
        "universe size bounds",
        format!("{checked} shortcut-negative instances, {universes} universes, {violations} violations"),
        t,
    );
}

fn lcg(state: &mut u64) -> u64 {
    *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    *state >> 33
}

/// A seed `0` hanging off a chain of `tail` vertices whose end carries `fan`
/// leaves (with some leaf-leaf edges): only the counting branch fires.
fn broom(tail: usize, fan: usize, rng: &mut u64) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..tail).map(|i| (i, i + 1)).collect();
    let first = tail + 1;
    for j in 0..fan {
        edges.push((tail, first + j));
        if j > 0 && lcg(rng) % 3 == 0 {
            edges.push((first + j - 1, first + j));
        }
    }
    Graph::new(first + fan, edges).unwrap()
}

/// Seed `0` attached only to vertex 1 of a dense random graph.
fn lollipop(n: usize, seed: u64) -> Graph {
    let body = gen_random_gnp(n, 0.6, seed).unwrap();
    let edges = body.edges().map(|(u, v)| (u + 1, v + 1)).chain([(0, 1)]);
    Graph::new(n + 1, edges.collect::<Vec<_>>()).unwrap()
}

fn criterion_5(rep: &mut Report) {
    let t = Instant::now();
    let mut counts = [0usize; 6]; // vt, et, seeded a, b, c, d
    let mut bad = 0;
    let mut check = |g: &Graph, spec: &ProblemSpec, cert: &Certificate, slot: usize, counts: &mut [usize; 6]| {
        counts[slot] += 1;
        if cert.len() < spec.k || check_certificate(g, spec, cert).unwrap().is_err() {
            bad += 1;
        }
    };
    let mut rng = 0x5eed_u64;
    let mut attempt = 0u64;
    while counts.iter().any(|&c| c < C5_PER_BRANCH) && attempt < 20_000 {
        attempt += 1;
        let n = 8 + (lcg(&mut rng) % 15) as usize;
        let g = gen_random_gnp(n, 0.6 + 0.3 * (lcg(&mut rng) % 4) as f64 / 3.0, attempt).unwrap();
        let k = 2 + (lcg(&mut rng) as usize % (n / 2));
        if counts[0] < C5_PER_BRANCH {
            let s = 4 + (lcg(&mut rng) % 3) as usize;
            let spec = ProblemSpec::vertex_triangle(s, 1, k);
            let (h, _) = reduce(&g, &spec).unwrap();
            if let Some(c) = vt_shortcut(&h, k, s).unwrap() {
                check(&g, &spec, &c, 0, &mut counts);
            }
        }
        if counts[1] < C5_PER_BRANCH {
            let s = 2 + (lcg(&mut rng) % 4) as usize;
            let spec = ProblemSpec::edge_triangle(s, 1, k);
            let (h, _) = reduce(&g, &spec).unwrap();
            if let Some(c) = et_shortcut(&h, k, s).unwrap() {
                check(&g, &spec, &c, 1, &mut counts);
            }
        }
        // seeded branches, each on instances shaped for it
        let (g, s, k, seeds) = match attempt % 4 {
            0 => {
                let w = g.edges().next().map_or(vec![0], |(u, v)| vec![u, v]);
                (g, 2, k, w)
            }
            1 => (g, 3 + (lcg(&mut rng) % 3) as usize, k, vec![0]),
            2 => {
                let h = lollipop(n, attempt);
                let k = 3 + lcg(&mut rng) as usize % h.degree(1).saturating_sub(2).max(1);
                (h, 3, k, vec![0])
            }
            _ => {
                let s = 2 + (lcg(&mut rng) % 2) as usize;
                let fan = 27 + (lcg(&mut rng) % 14) as usize;
                (broom(s - 1, fan, &mut rng), s, 3, vec![0])
            }
        };
        let spec = ProblemSpec::seeded(s, k, seeds);
        let w = spec.seed_set(g.n()).unwrap();
        let (h, trace) = reduce(&g, &spec).unwrap();
        if trace.infeasible {
            continue;
        }
        if let Some((c, case)) = seeded_shortcut(&h, &w, k, s).unwrap() {
            let slot = match case {
                SeededCase::A => 2,
                SeededCase::B => 3,
                SeededCase::C => 4,
                SeededCase::D => 5,
            };
            if counts[slot] < C5_PER_BRANCH {
                check(&g, &spec, &c, slot, &mut counts);
            }
        }
    }
    let short = counts.iter().any(|&c| c < C5_PER_BRANCH);
    rep.line(
        5,
        bad == 0 && !short,
        false,
        "shortcut witnesses",
        format!(
            "witnesses per branch vt {} / et {} / seeded a {} b {} c {} d {}, {bad} invalid",
            counts[0], counts[1], counts[2], counts[3], counts[4], counts[5]
        ),
        t,
    );
}

fn criterion_6(rep: &mut Report, corpus: &[GadgetInstance]) {
    let t = Instant::now();
    let mut cascade = 0;
    let mut bad_counts = 0;
    let mut bad_owners = 0;
    for g in corpus {
        let Construction::Vts { ell, .. } = g.construction else { continue };
        cascade += 1;
        bad_counts += vertex_triangle_counts(&g.graph, None).iter().filter(|&&c| c != ell).count();
        for (u, v) in g.graph.edges() {
            for &w in g.graph.neighbors(v) {
                if w > v && g.graph.has_edge(u, w) {
                    let o = g.layout[u].owner();
                    if o.is_none() || g.layout[v].owner() != o || g.layout[w].owner() != o {
                        bad_owners += 1;
                    }
                }
            }
        }
    }
    // ring gadget: for non-adjacent source vertices, shifted ring pairs stay far apart
    let mut pairs = 0;
    let mut near = 0;
    for g in corpus {
        let Construction::Et { s, ell, .. } = g.construction else { continue };
        let x = g.params.x.unwrap();
        let shift = ell / 2 + 3 * g.params.ell_star.unwrap() * (s - 1);
        let src = &g.source;
        for v in src.vertices() {
            for u in src.vertices().filter(|&u| u != v && !src.has_edge(u, v)) {
                for i in (0..=x).step_by(3) {
                    let a = g.vertex_of(&sclub::generators::Label::A { owner: v, i }).unwrap();
                    let b = g.vertex_of(&sclub::generators::Label::B { owner: u, i: (i + shift) % (x + 1) }).unwrap();
                    pairs += 1;
                    if bfs_distances(&g.graph, a, None, None)[b].is_some_and(|d| d <= s) {
                        near += 1;
                    }
                }
            }
        }
    }
    // the figure's case: s = 3, l = 2, P3 source u - w - v
    let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
    let fig = gen_et(&p3, 3, 2, 3, RingModulus::Cyclic).unwrap();
    let a = fig.vertex_of(&sclub::generators::Label::A { owner: 2, i: 0 }).unwrap();
    let b = fig.vertex_of(&sclub::generators::Label::B { owner: 0, i: 7 }).unwrap();
    let fig_d = bfs_distances(&fig.graph, a, None, None)[b];
    let fig_ok = fig_d.is_none_or(|d| d >= 4);
    let pass = bad_counts == 0 && bad_owners == 0 && near == 0 && pairs > 0 && fig_ok;
    rep.line(
        6,
        pass,
        false,
        "gadget structure",
        format!(
            "{cascade} cascade instances: {bad_counts} vertices off l triangles, {bad_owners} cross-gadget triangles; \
             ring gadget: {near}/{pairs} sampled non-edge pairs within s; figure case distance {}",
            fig_d.map_or("inf".into(), |d| d.to_string())
        ),
        t,
    );
}

fn criterion_7(rep: &mut Report, corpus: &[C1Instance]) {
    let t = Instant::now();
    let bad: usize = corpus
        .par_iter()
        .map(|c| {
            let (h, trace) = reduce(&c.graph, &c.spec).unwrap();
            let before = brute_force_max(&c.graph, &c.spec).unwrap().0;
            let after = if trace.infeasible { 0 } else { brute_force_max(&h, &c.spec).unwrap().0 };
            usize::from(before != after)
        })
        .sum();
    rep.line(
        7,
        bad == 0,
        false,
        "reduction-rule soundness",
        format!("{} instances, {bad} optimum changes (infeasible counted as 0)", corpus.len()),
        t,
    );
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags such as `--list`; there is nothing to list
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut rep = Report { unexpected: 0 };
    let c1 = c1_corpus();
    let c2 = c2_corpus();
    let mut et_certs = Vec::new();
    criterion_1(&mut rep, &c1, &mut et_certs);
    criterion_2(&mut rep, &c2, &mut et_certs);
    literal_modulus_info();
    criterion_3(&mut rep, &et_certs);
    criterion_4(&mut rep, &c1);
    criterion_5(&mut rep);
    criterion_6(&mut rep, &c2);
    criterion_7(&mut rep, &c1);
    if rep.unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} unexpected failure(s)", rep.unexpected);
        ExitCode::FAILURE
    }
}
