//! Brute-force references. Deliberately naive: they share nothing with the
//! search except the certificate checker.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::properties::{check_certificate, Certificate, ProblemSpec, Variant};

pub const BRUTE_FORCE_LIMIT: usize = 20;
pub const CLIQUE_LIMIT: usize = 25;

/// Largest solution by trying every vertex subset, biggest first and
/// lexicographically within a size. The edge variant gets its maximal
/// witness attached.
pub fn brute_force_max(g: &Graph, spec: &ProblemSpec) -> Result<(usize, Option<Certificate>)> {
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge { n, limit: BRUTE_FORCE_LIMIT });
    }
    spec.validate(Some(n))?;
    for size in (1..=n).rev() {
        for combo in Combinations::new(n, size) {
            let vertices = VertexSet::from_members(n, combo.iter().copied())?;
            let cert = Certificate::new(vertices);
            if check_certificate(g, spec, &cert)?.is_ok() {
                let cert = match spec.variant {
                    Variant::EdgeTriangle => {
                        let w = crate::graph::truss_peel(g, spec.threshold(), Some(&cert.vertices));
                        Certificate::with_edges(cert.vertices, w)
                    }
                    _ => cert,
                };
                return Ok((size, Some(cert)));
            }
        }
    }
    Ok((0, None))
}

/// Lexicographic k-subsets of `0..n`.
struct Combinations {
    n: usize,
    cur: Vec<usize>,
    first: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            cur: (0..k).collect(),
            first: true,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let k = self.cur.len();
        if self.first {
            self.first = false;
            return (k <= self.n).then(|| self.cur.clone());
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.cur[i] < self.n - k + i {
                self.cur[i] += 1;
                for j in i + 1..k {
                    self.cur[j] = self.cur[j - 1] + 1;
                }
                return Some(self.cur.clone());
            }
        }
        None
    }
}

/// Maximum clique by bitmask branch and bound; the smallest-id clique
/// among the maximum ones is not guaranteed, only its size.
pub fn clique_max(g: &Graph) -> Result<(usize, VertexSet)> {
    let n = g.n();
    if n > CLIQUE_LIMIT {
        return Err(Error::TooLarge { n, limit: CLIQUE_LIMIT });
    }
    let adj: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let mut best = 0u32;
    let all = ((1u64 << n) - 1) as u32;
    expand(&adj, 0, all, &mut best);
    Ok((best.count_ones() as usize, VertexSet::from_members(n, (0..n).filter(|&v| best >> v & 1 == 1))?))
}

fn expand(adj: &[u32], chosen: u32, mut cand: u32, best: &mut u32) {
    if cand == 0 {
        if chosen.count_ones() > best.count_ones() {
            *best = chosen;
        }
        return;
    }
    while cand != 0 {
        if chosen.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        let v = cand.trailing_zeros();
        cand &= !(1 << v);
        expand(adj, chosen | 1 << v, cand & adj[v as usize], best);
    }
}
