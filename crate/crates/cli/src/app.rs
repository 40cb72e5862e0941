use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use sclub::generators::{self, GadgetInstance, RingModulus};
use sclub::kernel::{self, KernelTrace, TuringOutcome};
use sclub::properties::{check_certificate, robustness_check_seeded, DEFAULT_ROBUSTNESS_SEED};
use sclub::solve::{self, SolveOptions};
use sclub::{Certificate, Graph, ProblemSpec, Variant};

use crate::format::{self, FormatError, Instance};

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] sclub::Error),
}

/// Result of one invocation: exit code plus the two output streams.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(yes: bool, stdout: String) -> Self {
        Outcome {
            code: if yes { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "sclub", version, about = "Triangle-constrained and seeded s-club solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find a maximum solution, or decide whether one of size >= k exists.
    Solve(SolveArgs),
    /// Check a certificate file against an instance.
    Verify(VerifyArgs),
    /// Apply the reduction rules and print the reduced instance and trace.
    Kernelize(KernelizeArgs),
    /// Emit a hardness-gadget instance for a Clique source graph.
    Generate(GenerateArgs),
    /// Exhaustive maximum (small instances only).
    Oracle(OracleArgs),
}

#[derive(Args, Debug, Default)]
struct SpecArgs {
    /// Problem variant; overrides the instance's `c spec` line.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Diameter bound.
    #[arg(short = 's')]
    s: Option<usize>,
    /// Triangle threshold (vt / et).
    #[arg(short = 'l')]
    ell: Option<usize>,
    /// Target size.
    #[arg(short = 'k')]
    k: Option<usize>,
    /// Seed vertices, 0-based, comma separated.
    #[arg(long, value_delimiter = ',')]
    seed: Vec<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VariantArg {
    Club,
    Vt,
    Et,
    Seeded,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Club => Variant::Club,
            VariantArg::Vt => Variant::VertexTriangle,
            VariantArg::Et => Variant::EdgeTriangle,
            VariantArg::Seeded => Variant::Seeded,
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Instance file (`-` for stdin).
    instance: PathBuf,
    #[command(flatten)]
    spec: SpecArgs,
    /// Report a maximum solution (default).
    #[arg(long, conflicts_with = "decide")]
    max: bool,
    /// Stop at the first solution of size >= k.
    #[arg(long)]
    decide: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    instance: PathBuf,
    certificate: PathBuf,
    #[command(flatten)]
    spec: SpecArgs,
    /// Also check robustness under deletion of this many witness edges (et).
    #[arg(long)]
    robust: Option<usize>,
    /// Sampler seed for large robustness sweeps.
    #[arg(long, default_value_t = DEFAULT_ROBUSTNESS_SEED)]
    rng_seed: u64,
}

#[derive(Args, Debug)]
struct KernelizeArgs {
    instance: PathBuf,
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ConstructionArg {
    Vt2,
    Vts,
    Et,
    Seeded2,
    Seededs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModulusArg {
    Literal,
    Cyclic,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    construction: ConstructionArg,
    /// Clique source graph; without it a G(n, p) graph is drawn.
    #[arg(long, conflicts_with_all = ["n", "p"])]
    source: Option<PathBuf>,
    /// Vertices of the random source graph.
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Edge probability of the random source graph.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    /// Clique size asked of the source graph.
    #[arg(short = 'k')]
    k: usize,
    #[arg(short = 'l', default_value_t = 1)]
    ell: usize,
    #[arg(short = 's', default_value_t = 3)]
    s: usize,
    /// Seed shape for the seeded constructions (default: two isolated vertices).
    #[arg(long)]
    shape: Option<PathBuf>,
    /// Ring index wrap-around for the et construction.
    #[arg(long, value_enum, default_value_t = ModulusArg::Cyclic)]
    ring_modulus: ModulusArg,
}

#[derive(Args, Debug)]
struct OracleArgs {
    instance: PathBuf,
    #[command(flatten)]
    spec: SpecArgs,
    /// Maximum clique instead of the instance's problem.
    #[arg(long)]
    clique: bool,
}

fn read(path: &Path, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Result<String, CliError> {
    let res = if path.as_os_str() == "-" {
        stdin()
    } else {
        std::fs::read_to_string(path)
    };
    res.map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Result<Instance, CliError> {
    format::parse_instance(&read(path, stdin)?).map_err(|source| CliError::Format {
        path: path.display().to_string(),
        source,
    })
}

/// File spec with command-line overrides. Changing the variant drops the
/// file's threshold and seeds.
fn resolve_spec(file: Option<&ProblemSpec>, args: &SpecArgs, n: usize) -> Result<ProblemSpec, CliError> {
    let variant = args
        .variant
        .map(Variant::from)
        .or(file.map(|f| f.variant))
        .ok_or_else(|| CliError::Usage("no problem given: pass --variant or add a `c spec` line".into()))?;
    let base = file.filter(|f| f.variant == variant);
    let s = args
        .s
        .or(base.map(|f| f.s))
        .or(file.map(|f| f.s))
        .ok_or_else(|| CliError::Usage("no diameter bound given: pass -s".into()))?;
    let k = args.k.or(base.map(|f| f.k)).unwrap_or(1);
    let ell = args.ell.or(base.and_then(|f| f.ell));
    let seeds = if args.seed.is_empty() {
        base.map(|f| f.seeds.clone()).unwrap_or_default()
    } else {
        args.seed.clone()
    };
    let spec = match variant {
        Variant::Seeded => ProblemSpec { ell, ..ProblemSpec::seeded(s, k, seeds) },
        _ => ProblemSpec { variant, s, ell, k, seeds },
    };
    spec.validate(Some(n))?;
    Ok(spec)
}

fn spec_summary(spec: &ProblemSpec) -> String {
    format::spec_line(spec).trim_start_matches("c spec ").to_string()
}

#[derive(Serialize)]
struct CertJson {
    size: usize,
    vertices: Vec<usize>,
    edges: Option<Vec<[usize; 2]>>,
}

impl CertJson {
    fn of(c: &Certificate) -> Self {
        CertJson {
            size: c.len(),
            vertices: c.vertices.to_vec(),
            edges: c.edges.as_ref().map(|e| e.iter().map(|(u, v)| [u, v]).collect()),
        }
    }
}

#[derive(Serialize)]
struct TraceJson {
    rounds: usize,
    removed_vertices: usize,
    removed_edges: usize,
    isolated_vertices: usize,
    infeasible: bool,
    shortcut_fired: bool,
}

impl TraceJson {
    fn of(t: &KernelTrace, shortcut: bool) -> Self {
        TraceJson {
            rounds: t.rounds(),
            removed_vertices: t.removed_vertices.len(),
            removed_edges: t.removed_edges.len(),
            isolated_vertices: t.isolated_vertices.len(),
            infeasible: t.infeasible,
            shortcut_fired: shortcut,
        }
    }
}

#[derive(Serialize)]
struct SolveJson {
    spec: ProblemSpec,
    mode: &'static str,
    /// Whether a solution of size >= k exists.
    answer: bool,
    /// `null` in decision mode.
    optimum_size: Option<usize>,
    certificate: Option<CertJson>,
    nodes_explored: u64,
    used_shortcut: bool,
    subinstances: usize,
    kernel: TraceJson,
    wall_clock_ms: f64,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn cmd_solve(a: SolveArgs, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Result<Outcome, CliError> {
    let inst = load(&a.instance, stdin)?;
    let spec = resolve_spec(inst.spec.as_ref(), &a.spec, inst.graph.n())?;
    let opts = SolveOptions { threads: a.threads };
    let start = Instant::now();
    let (answer, optimum, cert, nodes, shortcut, subs, trace) = if a.decide {
        let d = solve::solve_decision_with(&inst.graph, &spec, &opts)?;
        let subs = d.per_subinstance_stats.len();
        (d.yes, None, d.certificate, d.nodes_explored, d.used_shortcut, subs, d.trace)
    } else {
        let r = solve::solve_max_with(&inst.graph, &spec, &opts)?;
        let subs = r.per_subinstance_stats.len();
        (r.optimum_size >= spec.k, Some(r.optimum_size), r.best, r.nodes_explored, r.used_shortcut, subs, r.trace)
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let mode = if a.decide { "decide" } else { "max" };
    let stdout = if a.json {
        to_json(&SolveJson {
            spec: spec.clone(),
            mode,
            answer,
            optimum_size: optimum,
            certificate: cert.as_ref().map(CertJson::of),
            nodes_explored: nodes,
            used_shortcut: shortcut,
            subinstances: subs,
            kernel: TraceJson::of(&trace, shortcut),
            wall_clock_ms: elapsed,
        })
    } else {
        let mut out = format!("# {} ({mode})\n", spec_summary(&spec));
        let _ = writeln!(out, "# answer {}", if answer { "yes" } else { "no" });
        if let Some(o) = optimum {
            let _ = writeln!(out, "# optimum {o}");
        }
        let _ = writeln!(out, "# nodes {nodes} shortcut {shortcut} subinstances {subs}");
        if let Some(c) = &cert {
            out.push_str(&format::serialize_certificate(c));
        }
        out
    };
    Ok(Outcome::ok(answer, stdout))
}

fn cmd_verify(a: VerifyArgs, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Result<Outcome, CliError> {
    let inst = load(&a.instance, stdin)?;
    let spec = resolve_spec(inst.spec.as_ref(), &a.spec, inst.graph.n())?;
    let text = read(&a.certificate, stdin)?;
    let cert = format::parse_certificate(&text, inst.graph.n()).map_err(|source| CliError::Format {
        path: a.certificate.display().to_string(),
        source,
    })?;
    if let Err(v) = check_certificate(&inst.graph, &spec, &cert)? {
        return Ok(Outcome::ok(false, format!("violated: {v}\n")));
    }
    if cert.len() < spec.k {
        return Ok(Outcome::ok(false, format!("violated: size {} is below k = {}\n", cert.len(), spec.k)));
    }
    let mut out = format!("ok: {} vertices satisfy {}\n", cert.len(), spec_summary(&spec));
    if let Some(budget) = a.robust {
        if spec.variant != Variant::EdgeTriangle {
            return Err(CliError::Usage("--robust applies to the et variant only".into()));
        }
        let r = robustness_check_seeded(&inst.graph, &cert, spec.s, spec.threshold(), budget, a.rng_seed)?;
        let how = if r.exhaustive {
            "exhaustive".to_string()
        } else {
            format!("sampled, rng seed {}", a.rng_seed)
        };
        if let Some(ce) = r.counterexample {
            let ce: Vec<String> = ce.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            let _ = writeln!(
                out,
                "violated: deleting {} leaves a pair farther apart than {}",
                ce.join(" "),
                r.bound
            );
            return Ok(Outcome::ok(false, out));
        }
        let _ = writeln!(
            out,
            "robust: {} deletion sets of {budget} edges keep diameter <= {} ({how})",
            r.deletion_sets_checked, r.bound
        );
    }
    Ok(Outcome::ok(true, out))
}

#[derive(Serialize)]
struct UniverseJson {
    center: String,
    size: usize,
    bound: String,
}

#[derive(Serialize)]
struct KernelJson {
    spec: ProblemSpec,
    kernel: TraceJson,
    removed_vertices: Vec<usize>,
    removed_edges: Vec<[usize; 2]>,
    shortcut: Option<CertJson>,
    universes: Vec<UniverseJson>,
}

fn cmd_kernelize(a: KernelizeArgs, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Result<Outcome, CliError> {
    let inst = load(&a.instance, stdin)?;
    let spec = resolve_spec(inst.spec.as_ref(), &a.spec, inst.graph.n())?;
    let k = kernel::kernelize(&inst.graph, &spec)?;
    let universes: Vec<UniverseJson> = match &k.outcome {
        TuringOutcome::Subinstances(subs) => subs
            .iter()
            .map(|u| UniverseJson {
                center: match &u.center {
                    kernel::Center::Vertex(v) => v.to_string(),
                    kernel::Center::Seeds(w) => format!("{w:?}"),
                },
                size: u.vertex_universe.len(),
                bound: u.bound.to_string(),
            })
            .collect(),
        TuringOutcome::Shortcut(_) => Vec::new(),
    };
    let shortcut = match &k.outcome {
        TuringOutcome::Shortcut(c) => Some(c),
        TuringOutcome::Subinstances(_) => None,
    };
    let feasible = !k.trace.infeasible;
    if a.json {
        return Ok(Outcome::ok(
            feasible,
            to_json(&KernelJson {
                spec,
                kernel: TraceJson::of(&k.trace, shortcut.is_some()),
                removed_vertices: k.trace.removed_vertices.clone(),
                removed_edges: k.trace.removed_edges.iter().map(|&(u, v)| [u, v]).collect(),
                shortcut: shortcut.map(CertJson::of),
                universes,
            }),
        ));
    }
    let reduced = Instance {
        graph: k.graph.clone(),
        spec: Some(spec),
        layout: inst.layout,
    };
    let mut out = String::new();
    let t = &k.trace;
    let _ = writeln!(
        out,
        "c kernel rounds={} removed_vertices={} removed_edges={} isolated={} infeasible={}",
        t.rounds(),
        t.removed_vertices.len(),
        t.removed_edges.len(),
        t.isolated_vertices.len(),
        t.infeasible
    );
    if let Some(c) = shortcut {
        let ids: Vec<String> = c.vertices.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "c kernel shortcut {}", ids.join(" "));
    }
    for u in &universes {
        let _ = writeln!(out, "c kernel universe center={} size={} bound={}", u.center, u.size, u.bound);
    }
    out.push_str(&format::serialize(&reduced));
    Ok(Outcome::ok(feasible, out))
}

fn cmd_generate(a: GenerateArgs, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Result<Outcome, CliError> {
    let source = match &a.source {
        Some(p) => load(p, stdin)?.graph,
        None => generators::gen_random_gnp(a.n, a.p, a.rng_seed)?,
    };
    let shape = match &a.shape {
        Some(p) => load(p, stdin)?.graph,
        None => Graph::empty(2),
    };
    let modulus = match a.ring_modulus {
        ModulusArg::Literal => RingModulus::Literal,
        ModulusArg::Cyclic => RingModulus::Cyclic,
    };
    let g: GadgetInstance = match a.construction {
        ConstructionArg::Vt2 => generators::gen_vt2(&source, a.k, a.ell)?,
        ConstructionArg::Vts => generators::gen_vts(&source, a.k, a.ell, a.s)?,
        ConstructionArg::Et => generators::gen_et(&source, a.k, a.ell, a.s, modulus)?,
        ConstructionArg::Seeded2 => generators::gen_seeded2(&source, a.k, &shape)?,
        ConstructionArg::Seededs => generators::gen_seededs(&source, a.k, &shape, a.s)?,
    };
    let mut out = format!(
        "c generated {} from a source on {} vertices and {} edges, source k = {}, k' = {}\n",
        g.construction.tag(),
        source.n(),
        source.m(),
        g.source_k,
        g.k_prime
    );
    out.push_str(&format::serialize(&Instance {
        graph: g.graph,
        spec: Some(g.spec),
        layout: g.layout,
    }));
    Ok(Outcome::ok(true, out))
}

fn cmd_oracle(a: OracleArgs, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Result<Outcome, CliError> {
    let inst = load(&a.instance, stdin)?;
    if a.clique {
        let (size, set) = solve::clique_max(&inst.graph)?;
        let k = a.spec.k.unwrap_or(1);
        let mut out = format!("# clique optimum {size}\n");
        out.push_str(&format::serialize_certificate(&Certificate::new(set)));
        return Ok(Outcome::ok(size >= k, out));
    }
    let spec = resolve_spec(inst.spec.as_ref(), &a.spec, inst.graph.n())?;
    let (size, cert) = solve::brute_force_max(&inst.graph, &spec)?;
    let mut out = format!("# {} (brute force)\n# optimum {size}\n", spec_summary(&spec));
    if let Some(c) = &cert {
        out.push_str(&format::serialize_certificate(c));
    }
    Ok(Outcome::ok(size >= spec.k, out))
}

/// Runs one command line (`argv[0]` is the program name). Input files named
/// `-` are read through `stdin`.
pub fn run_with<I, T>(argv: I, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let res = match cli.command {
        Command::Solve(a) => cmd_solve(a, stdin),
        Command::Verify(a) => cmd_verify(a, stdin),
        Command::Kernelize(a) => cmd_kernelize(a, stdin),
        Command::Generate(a) => cmd_generate(a, stdin),
        Command::Oracle(a) => cmd_oracle(a, stdin),
    };
    res.unwrap_or_else(|e| Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    })
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut || std::io::read_to_string(std::io::stdin()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_stdin() -> std::io::Result<String> {
        Ok(String::new())
    }

    #[test]
    fn spec_flags_override_the_file() {
        let file = ProblemSpec::vertex_triangle(3, 2, 5);
        let args = SpecArgs { k: Some(7), ..Default::default() };
        assert_eq!(resolve_spec(Some(&file), &args, 10).unwrap(), ProblemSpec::vertex_triangle(3, 2, 7));
        let args = SpecArgs {
            variant: Some(VariantArg::Seeded),
            seed: vec![4, 1],
            ..Default::default()
        };
        assert_eq!(resolve_spec(Some(&file), &args, 10).unwrap(), ProblemSpec::seeded(3, 1, [1, 4]));
        assert!(resolve_spec(None, &SpecArgs::default(), 3).is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        let out = run_with(["sclub", "solve"], &mut no_stdin);
        assert_eq!(out.code, 2);
        let out = run_with(["sclub", "--help"], &mut no_stdin);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("kernelize"));
    }

    #[test]
    fn stdin_instance() {
        let mut k4 = || Ok("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n".to_string());
        let out = run_with(["sclub", "solve", "-", "--variant", "vt", "-s", "1", "-l", "3", "-k", "4"], &mut k4);
        assert_eq!(out.code, 0, "{out:?}");
        assert!(out.stdout.contains("# optimum 4"));
    }
}
