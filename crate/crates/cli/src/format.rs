//! Instance and certificate text formats.
//!
//! Instances: either a plain edge list (`u v` per line, 0-based) or DIMACS
//! (`p edge n m`, then `e u v`, 1-based). In both, comment lines carry
//! metadata:
//!
//! ```text
//! c vertices 5                        plain format only: vertex count
//! c spec variant=vt s=3 l=1 k=4       problem (seed=0,2 for seeded)
//! c label 3 a 0 7                     role of vertex 3 (generated instances)
//! ```
//!
//! Other `c ...` lines and lines starting with `#` are ignored. Seeds and
//! label ids are always 0-based. Certificates: one vertex id per line,
//! optionally followed by a line `edges` and `u v` pairs (edge variant).

use std::fmt::Write as _;

use sclub::generators::Label;
use sclub::{Certificate, EdgeSet, Graph, ProblemSpec, Variant, VertexSet};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub spec: Option<ProblemSpec>,
    /// Per-vertex roles; empty when the file has none.
    pub layout: Vec<Label>,
}

impl Instance {
    pub fn new(graph: Graph) -> Self {
        Instance {
            graph,
            spec: None,
            layout: Vec::new(),
        }
    }
}

fn parse_num(tok: &str, line: usize) -> Result<usize, FormatError> {
    tok.parse()
        .or_else(|_| err(line, format!("expected a non-negative integer, found {tok:?}")))
}

fn parse_spec(fields: &[&str], line: usize) -> Result<ProblemSpec, FormatError> {
    let (mut variant, mut s, mut ell, mut k, mut seeds) = (None, None, None, None, Vec::new());
    for field in fields {
        let Some((key, value)) = field.split_once('=') else {
            return err(line, format!("spec field {field:?} is not key=value"));
        };
        match key {
            "variant" => {
                variant = Some(value.parse::<Variant>().or_else(|e| err(line, e.to_string()))?);
            }
            "s" => s = Some(parse_num(value, line)?),
            "l" => ell = Some(parse_num(value, line)?),
            "k" => k = Some(parse_num(value, line)?),
            "seed" => {
                seeds = value
                    .split(',')
                    .filter(|t| !t.is_empty())
                    .map(|t| parse_num(t, line))
                    .collect::<Result<_, _>>()?;
            }
            other => return err(line, format!("unknown spec field {other:?}")),
        }
    }
    let Some(variant) = variant else {
        return err(line, "spec needs variant=");
    };
    let Some(s) = s else {
        return err(line, "spec needs s=");
    };
    let mut spec = ProblemSpec {
        variant,
        s,
        ell,
        k: k.unwrap_or(1),
        seeds,
    };
    if variant == Variant::Seeded {
        spec = ProblemSpec::seeded(s, spec.k, spec.seeds);
        spec.ell = ell;
    }
    spec.validate(None).or_else(|e| err(line, e.to_string()))?;
    Ok(spec)
}

/// Parses an instance in either format (detected by a `p` line).
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let mut declared: Option<(usize, usize)> = None; // (line, n)
    let mut dimacs = false;
    let mut spec = None;
    let mut labels: Vec<(usize, usize, Label)> = Vec::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            [first, ..] if first.starts_with('#') => {}
            ["c", "vertices", n] => declared = Some((line, parse_num(n, line)?)),
            ["c", "spec", rest @ ..] => spec = Some(parse_spec(rest, line)?),
            ["c", "label", v, rest @ ..] => {
                let v = parse_num(v, line)?;
                let label = rest.join(" ").parse::<Label>().or_else(|e| err(line, e.to_string()))?;
                labels.push((line, v, label));
            }
            ["c", ..] => {}
            ["p", kind, n, _m] => {
                if *kind != "edge" && *kind != "col" {
                    return err(line, format!("unsupported problem line kind {kind:?}"));
                }
                dimacs = true;
                declared = Some((line, parse_num(n, line)?));
            }
            ["e", u, v] => {
                if !dimacs {
                    return err(line, "'e' line before the 'p edge n m' header");
                }
                let (u, v) = (parse_num(u, line)?, parse_num(v, line)?);
                if u == 0 || v == 0 {
                    return err(line, "DIMACS vertex ids are 1-based");
                }
                edges.push((line, u - 1, v - 1));
            }
            [u, v] if !dimacs => edges.push((line, parse_num(u, line)?, parse_num(v, line)?)),
            _ => return err(line, format!("cannot parse {raw:?}")),
        }
    }

    let n = match declared {
        Some((_, n)) => n,
        None => edges.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    for &(line, u, v) in &edges {
        if u == v {
            return err(line, format!("self-loop on vertex {u}"));
        }
        if u >= n || v >= n {
            return err(line, format!("endpoint out of range for {n} vertices"));
        }
    }
    let graph = Graph::new(n, edges.iter().map(|&(_, u, v)| (u, v))).or_else(|e| err(0, e.to_string()))?;
    if let Some(spec) = &spec {
        if let Some(&w) = spec.seeds.iter().find(|&&w| w >= n) {
            return err(0, format!("seed {w} out of range for {n} vertices"));
        }
    }
    let layout = if labels.is_empty() {
        Vec::new()
    } else {
        let mut slots: Vec<Option<Label>> = vec![None; n];
        for (line, v, label) in labels {
            if v >= n {
                return err(line, format!("label for vertex {v} out of range"));
            }
            if slots[v].replace(label).is_some() {
                return err(line, format!("vertex {v} labelled twice"));
            }
        }
        match slots.iter().position(Option::is_none) {
            Some(v) => return err(0, format!("vertex {v} has no label")),
            None => slots.into_iter().flatten().collect(),
        }
    };
    Ok(Instance { graph, spec, layout })
}

pub fn spec_line(spec: &ProblemSpec) -> String {
    let mut out = format!("c spec variant={} s={}", spec.variant, spec.s);
    if let Some(l) = spec.ell {
        let _ = write!(out, " l={l}");
    }
    let _ = write!(out, " k={}", spec.k);
    if !spec.seeds.is_empty() {
        let ids: Vec<String> = spec.seeds.iter().map(ToString::to_string).collect();
        let _ = write!(out, " seed={}", ids.join(","));
    }
    out
}

/// Plain 0-based form; `parse_instance` reads it back unchanged.
pub fn serialize(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = format!("c vertices {}\n", g.n());
    if let Some(spec) = &inst.spec {
        out.push_str(&spec_line(spec));
        out.push('\n');
    }
    for (v, label) in inst.layout.iter().enumerate() {
        let _ = writeln!(out, "c label {v} {label}");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_certificate(text: &str, n: usize) -> Result<Certificate, FormatError> {
    let mut vertices = Vec::new();
    let mut edges: Option<Vec<(usize, usize)>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match (toks.as_slice(), edges.as_mut()) {
            ([], _) => {}
            ([first, ..], _) if first.starts_with('#') => {}
            (["edges"], None) => edges = Some(Vec::new()),
            ([v], None) => {
                let v = parse_num(v, line)?;
                if v >= n {
                    return err(line, format!("vertex {v} out of range for {n} vertices"));
                }
                vertices.push(v);
            }
            ([u, v], Some(list)) => list.push((parse_num(u, line)?, parse_num(v, line)?)),
            _ => return err(line, format!("cannot parse {raw:?}")),
        }
    }
    let set = VertexSet::from_members(n, vertices).or_else(|e| err(0, e.to_string()))?;
    Ok(match edges {
        Some(list) => Certificate::with_edges(set, list.into_iter().map(|(u, v)| sclub::graph::edge(u, v)).collect::<EdgeSet>()),
        None => Certificate::new(set),
    })
}

pub fn serialize_certificate(cert: &Certificate) -> String {
    let mut out = String::new();
    for v in cert.vertices.iter() {
        let _ = writeln!(out, "{v}");
    }
    if let Some(edges) = &cert.edges {
        out.push_str("edges\n");
        for (u, v) in edges.iter() {
            let _ = writeln!(out, "{u} {v}");
        }
    }
    out
}
