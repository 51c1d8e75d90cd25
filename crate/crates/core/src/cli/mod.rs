//! Command-line front end.
//!
//! [`run`] takes the full argument vector (program name first) and returns
//! the exit code together with the report text, so the binary stays a thin
//! wrapper and tests can drive every subcommand in-process.
//!
//! Exit codes: `0` success, `1` a mathematical negative verdict (the report
//! names a witness), `2` input errors (unreadable files, parse errors,
//! bad arguments).

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::boundary::{
    check_partial_action, max_commutativity_probe, monomial_image_rank, skew_generators, CommutativityVerdict,
};
use crate::branching::{
    build_covering_system, build_identity_system, build_rotation_system, build_standard_system, check_axioms,
    faithfulness_conditions, injectivity_rank_check, parse_system, BranchingSystem, DEFAULT_DEG_BOUND,
    DEFAULT_M_BOUND,
};
use crate::cohn::{dimension_if_finite, parse_element, Dimension, Element};
use crate::graph::{parse_graph, write_graph, Graph};
use crate::sampling::{rng_with_seed, seed_from_env, ElementSampler};
use crate::transform::{
    check_ck_uniqueness, check_graded_uniqueness, check_relative_ck_uniqueness, identity_assignment,
    leavitt_assignment, reduce, reduce_homogeneous, Certificate, GeneratorAssignment, Isomorphism, TargetRing,
    UniquenessError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cohnpath", version, about = "Exact computations in relative Cohn path algebras")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graph files: validation and the extended graph.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Arithmetic in C_K^X(E).
    #[command(subcommand)]
    Alg(AlgCmd),
    /// The isomorphism with the Leavitt path algebra of E(X).
    #[command(subcommand)]
    Iso(IsoCmd),
    /// Injectivity certificates.
    #[command(subcommand)]
    Unique(UniqueCmd),
    /// The partial skew group ring model on the boundary path space.
    #[command(subcommand)]
    Skew(SkewCmd),
    /// Branching systems and their representations.
    #[command(subcommand)]
    Branch(BranchCmd),
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Validate a graph and summarize its vertex classes and cycles.
    Check { graph: String },
    /// Print the extended graph E(X).
    Extend { graph: String },
}

#[derive(Subcommand, Debug)]
enum AlgCmd {
    /// Normal form of an element.
    Eval { graph: String, expr: String },
    /// Product of one or more elements, left to right.
    Mul {
        graph: String,
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Run the reduction algorithm and print its certificate.
    Reduce {
        graph: String,
        expr: String,
        /// Use the variant for homogeneous elements.
        #[arg(long)]
        homogeneous: bool,
    },
    /// Dimension of the algebra when finite.
    Dim {
        graph: String,
        /// Path-length cap for the search.
        #[arg(long, default_value_t = 12)]
        cap: usize,
    },
}

#[derive(Subcommand, Debug)]
enum IsoCmd {
    /// Check psi∘phi = id and phi∘psi = id on an element or on random samples.
    Roundtrip {
        graph: String,
        /// Element to push through phi; samples are used when omitted.
        expr: Option<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Sampler seed (defaults to COHNPATH_SEED).
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct UniqueArgs {
    graph: String,
    /// Ring receiving the generators.
    #[arg(long, value_enum, default_value_t = Target::Identity)]
    target: Target,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    /// C_K^X(E) itself.
    Identity,
    /// The Leavitt path algebra L_K(E), killing every gap.
    Leavitt,
    /// The partial skew group ring on the boundary path space.
    Skew,
}

#[derive(Subcommand, Debug)]
enum UniqueCmd {
    Graded(UniqueArgs),
    Ck(UniqueArgs),
    Relck(UniqueArgs),
}

#[derive(Subcommand, Debug)]
enum SkewCmd {
    /// Partial action axioms and the defining relations of the skew generators.
    Relations {
        graph: String,
        /// Maximal word length.
        #[arg(long, default_value_t = 4)]
        len: usize,
    },
    /// Whether the diagonal is maximal commutative, up to a word-length bound.
    Maxcomm {
        graph: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Exact rank of the skew images of normal monomials.
    Rank {
        graph: String,
        /// Bound on |α| and |β|.
        #[arg(long, default_value_t = 3)]
        len: usize,
        /// Sampling depth in the boundary path space.
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
}

#[derive(Args, Debug)]
struct SystemArgs {
    graph: String,
    /// Built-in construction.
    #[arg(long, value_enum, default_value_t = SystemKind::Rotation, conflicts_with = "system_file")]
    system: SystemKind,
    /// Read the system from a file instead.
    #[arg(long)]
    system_file: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SystemKind {
    /// Translations between the unit intervals.
    Standard,
    /// Translations composed with an irrational rotation.
    Rotation,
    /// Identity maps onto whole vertex intervals where possible.
    Identity,
    /// Ranges covering single-edge Y-vertices.
    Covering,
}

#[derive(Subcommand, Debug)]
enum BranchCmd {
    /// Print a branching system in the text format.
    Build(SystemArgs),
    /// Check the five branching-system axioms.
    Axioms(SystemArgs),
    /// Check the faithfulness conditions.
    Faithful {
        #[command(flatten)]
        sys: SystemArgs,
        /// Largest cycle power examined.
        #[arg(long, default_value_t = DEFAULT_M_BOUND)]
        m: usize,
    },
    /// Exact rank of the representation on normal monomials.
    Rank {
        #[command(flatten)]
        sys: SystemArgs,
        /// Bound on |α| and |β|.
        #[arg(long, default_value_t = DEFAULT_DEG_BOUND)]
        deg: usize,
        #[arg(long, default_value_t = DEFAULT_M_BOUND)]
        m: usize,
    },
}

/// What a subcommand produced.
struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn new(code: i32, text: String, json: Value) -> Self {
        Report { code, text, json }
    }
}

/// An input error (exit code 2).
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<Report, InputError>;

/// Parses `argv` and runs the subcommand.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    let json = cli.json;
    match dispatch(cli.command) {
        Ok(r) if json => (r.code, format!("{:#}\n", r.json)),
        Ok(r) => (r.code, ensure_newline(r.text)),
        Err(InputError(msg)) if json => (EXIT_INPUT, format!("{:#}\n", json!({ "error": msg }))),
        Err(InputError(msg)) => (EXIT_INPUT, format!("error: {msg}\n")),
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Graph(c) => graph_cmd(c),
        Command::Alg(c) => alg_cmd(c),
        Command::Iso(IsoCmd::Roundtrip { graph, expr, samples, seed }) => {
            iso_roundtrip(&graph, expr.as_deref(), samples, seed)
        }
        Command::Unique(c) => unique_cmd(c),
        Command::Skew(c) => skew_cmd(c),
        Command::Branch(c) => branch_cmd(c),
    }
}

fn load_graph(path: &str) -> Result<Arc<Graph>, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read `{path}`: {e}")))?;
    parse_graph(&text)
        .map(Arc::new)
        .map_err(|e| InputError(format!("{path}: {e}")))
}

fn parse_expr(graph: &Arc<Graph>, text: &str) -> Result<Element, InputError> {
    parse_element(graph, text).map_err(|e| InputError(format!("in `{text}`: {e}")))
}

fn names(g: &Graph, vs: impl Iterator<Item = crate::graph::VertexId>) -> Vec<String> {
    vs.map(|v| g.vertex_name(v).to_string()).collect()
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".into()
    } else {
        items.join(" ")
    }
}

fn graph_cmd(cmd: GraphCmd) -> Outcome {
    match cmd {
        GraphCmd::Check { graph } => {
            let g = load_graph(&graph)?;
            let x = names(&g, g.x_vertices());
            let y = names(&g, g.y_vertices());
            let sinks = names(&g, g.vertices().filter(|&v| g.is_sink(v)));
            let cycles: Vec<String> = g
                .exit_free_cycles()
                .iter()
                .map(|c| c.path().display(&g).to_string())
                .collect();
            let (l, rel_l) = (g.condition_l(), g.relative_condition_l());
            let holds = |b: bool| if b { "holds" } else { "fails" };
            let mut text = String::new();
            writeln!(text, "vertices: {}", g.vertex_count()).unwrap();
            writeln!(text, "edges: {}", g.edge_count()).unwrap();
            writeln!(text, "X: {}", list(&x)).unwrap();
            writeln!(text, "Y: {}", list(&y)).unwrap();
            writeln!(text, "sinks: {}", list(&sinks)).unwrap();
            writeln!(text, "exit-free cycles: {}", list(&cycles)).unwrap();
            writeln!(text, "condition (L): {}", holds(l)).unwrap();
            writeln!(text, "relative condition (L): {}", holds(rel_l)).unwrap();
            text.push_str("VALID");
            let json = json!({
                "vertices": g.vertex_count(), "edges": g.edge_count(),
                "x": x, "y": y, "sinks": sinks, "exit_free_cycles": cycles,
                "condition_l": l, "relative_condition_l": rel_l, "valid": true,
            });
            Ok(Report::new(EXIT_OK, text, json))
        }
        GraphCmd::Extend { graph } => {
            let g = load_graph(&graph)?;
            let text = write_graph(g.extended_graph().graph());
            Ok(Report::new(EXIT_OK, text.clone(), json!({ "graph": text })))
        }
    }
}

fn element_report(x: &Element) -> Report {
    let s = x.to_string();
    Report::new(EXIT_OK, s.clone(), json!({ "element": s, "degrees": x.degrees() }))
}

fn alg_cmd(cmd: AlgCmd) -> Outcome {
    match cmd {
        AlgCmd::Eval { graph, expr } => {
            let g = load_graph(&graph)?;
            Ok(element_report(&parse_expr(&g, &expr)?))
        }
        AlgCmd::Mul { graph, exprs } => {
            let g = load_graph(&graph)?;
            let mut acc = Element::unit(&g);
            for e in &exprs {
                acc = acc.mul(&parse_expr(&g, e)?);
            }
            Ok(element_report(&acc))
        }
        AlgCmd::Reduce { graph, expr, homogeneous } => {
            let g = load_graph(&graph)?;
            let x = parse_expr(&g, &expr)?;
            let out = if homogeneous { reduce_homogeneous(&x)? } else { reduce(&x)? };
            let mut text = out.report(&g);
            write!(text, "result: {}\nREPLAYED", out.shape).unwrap();
            let json = json!({
                "mu": out.mu.display(&g).to_string(),
                "eta": out.eta.display(&g).to_string(),
                "shape": out.shape.to_string(),
                "claimed": out.claimed(&g).to_string(),
                "replayed": true,
            });
            Ok(Report::new(EXIT_OK, text, json))
        }
        AlgCmd::Dim { graph, cap } => {
            let g = load_graph(&graph)?;
            let (text, dim) = match dimension_if_finite(&g, cap) {
                Dimension::Finite(n) => (format!("dimension: {n}"), json!(n)),
                Dimension::Unbounded => (format!("dimension: infinite (paths of length {cap} exist)"), Value::Null),
            };
            Ok(Report::new(EXIT_OK, text, json!({ "dimension": dim, "cap": cap })))
        }
    }
}

fn iso_roundtrip(graph: &str, expr: Option<&str>, samples: usize, seed: Option<u64>) -> Outcome {
    let g = load_graph(graph)?;
    let iso = Isomorphism::new(&g);
    if let Some(expr) = expr {
        let x = parse_expr(&g, expr)?;
        let y = iso.phi(&x)?;
        let back = iso.psi(&y)?;
        let ok = back == x;
        let text = format!(
            "phi: {y}\npsi(phi): {back}\n{}",
            if ok { "ROUNDTRIP OK" } else { "ROUNDTRIP FAILED" }
        );
        let json = json!({ "phi": y.to_string(), "psi_phi": back.to_string(), "ok": ok });
        return Ok(Report::new(if ok { EXIT_OK } else { EXIT_NEGATIVE }, text, json));
    }
    let seed = seed.unwrap_or_else(seed_from_env);
    let mut rng = rng_with_seed(seed);
    let forward = ElementSampler::new(&g, 3, 4);
    let backward = ElementSampler::new(iso.target(), 3, 4);
    let mut failure: Option<String> = None;
    for _ in 0..samples {
        let x = forward.sample(&mut rng);
        if iso.psi(&iso.phi(&x)?)? != x {
            failure = Some(format!("psi(phi(x)) != x for x = {x}"));
            break;
        }
        let y = backward.sample(&mut rng);
        if iso.phi(&iso.psi(&y)?)? != y {
            failure = Some(format!("phi(psi(y)) != y for y = {y}"));
            break;
        }
    }
    let (code, verdict) = match &failure {
        None => (EXIT_OK, format!("ROUNDTRIP OK ({samples} samples each way, seed {seed})")),
        Some(w) => (EXIT_NEGATIVE, format!("ROUNDTRIP FAILED: {w}")),
    };
    let json = json!({ "samples": samples, "seed": seed, "ok": failure.is_none(), "witness": failure });
    Ok(Report::new(code, verdict, json))
}

fn certificate_report(cert: Result<Certificate, UniquenessError>) -> Report {
    match cert {
        Ok(c) => {
            let hyps: Vec<Value> = c
                .hypotheses
                .iter()
                .map(|h| json!({ "statement": h.statement, "holds": h.holds, "witness": h.witness }))
                .collect();
            let json = json!({ "check": c.check.to_string(), "hypotheses": hyps, "injective": c.injective() });
            let code = if c.injective() { EXIT_OK } else { EXIT_NEGATIVE };
            Report::new(code, c.to_string(), json)
        }
        Err(e) => {
            let text = format!("hypothesis fails: {e}\nNOT CERTIFIED");
            Report::new(EXIT_NEGATIVE, text, json!({ "injective": Value::Null, "error": e.to_string() }))
        }
    }
}

fn run_check<T: TargetRing>(kind: &str, a: Result<GeneratorAssignment<T>, UniquenessError>) -> Report {
    let a = match a {
        Ok(a) => a,
        Err(e) => return certificate_report(Err(e)),
    };
    certificate_report(match kind {
        "graded" => check_graded_uniqueness(&a),
        "ck" => check_ck_uniqueness(&a),
        _ => check_relative_ck_uniqueness(&a),
    })
}

fn unique_cmd(cmd: UniqueCmd) -> Outcome {
    let (kind, args) = match cmd {
        UniqueCmd::Graded(a) => ("graded", a),
        UniqueCmd::Ck(a) => ("ck", a),
        UniqueCmd::Relck(a) => ("relck", a),
    };
    let g = load_graph(&args.graph)?;
    Ok(match args.target {
        Target::Identity => run_check(kind, Ok(identity_assignment(&g))),
        Target::Leavitt => run_check(kind, Ok(leavitt_assignment(&g))),
        Target::Skew => run_check(kind, skew_generators(&g)),
    })
}

fn skew_cmd(cmd: SkewCmd) -> Outcome {
    match cmd {
        SkewCmd::Relations { graph, len } => {
            let g = load_graph(&graph)?;
            let action = check_partial_action(&g, len);
            let relations = skew_generators(&g).map(|_| ());
            let mut text = String::new();
            match &action {
                Ok(n) => writeln!(text, "partial action axioms: hold on {n} words of length <= {len}"),
                Err(w) => writeln!(text, "partial action axioms: FAIL {w}"),
            }
            .unwrap();
            match &relations {
                Ok(()) => writeln!(text, "skew generator relations: hold"),
                Err(e) => writeln!(text, "skew generator relations: FAIL {e}"),
            }
            .unwrap();
            let ok = action.is_ok() && relations.is_ok();
            text.push_str(if ok { "RELATIONS HOLD" } else { "RELATIONS FAIL" });
            let json = json!({
                "words": action.as_ref().ok(),
                "action_failure": action.as_ref().err(),
                "relation_failure": relations.as_ref().err().map(|e| e.to_string()),
                "ok": ok,
            });
            Ok(Report::new(if ok { EXIT_OK } else { EXIT_NEGATIVE }, text, json))
        }
        SkewCmd::Maxcomm { graph, bound } => {
            let g = load_graph(&graph)?;
            let verdict = max_commutativity_probe(&g, bound);
            let witness = match &verdict {
                CommutativityVerdict::NotMaximal { witness, .. } => Some(witness.display(&g).to_string()),
                CommutativityVerdict::MaximalUpToBound { .. } => None,
            };
            let json = json!({
                "maximal": verdict.is_maximal(), "bound": bound, "witness": witness,
                "relative_condition_l": g.relative_condition_l(),
            });
            let code = if verdict.is_maximal() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Report::new(code, verdict.describe(&g), json))
        }
        SkewCmd::Rank { graph, len, depth } => {
            let g = load_graph(&graph)?;
            let r = monomial_image_rank(&g, len, depth);
            let mut text = format!(
                "rank {} of {} monomials at {} sample points\n",
                r.rank, r.monomials, r.sample_points
            );
            if let Some(k) = &r.kernel_witness {
                writeln!(text, "kernel witness: {k}").unwrap();
            }
            text.push_str(if r.independent() { "INDEPENDENT" } else { "DEPENDENT" });
            let json = json!({
                "monomials": r.monomials, "rank": r.rank, "sample_points": r.sample_points,
                "kernel_witness": r.kernel_witness, "independent": r.independent(),
            });
            Ok(Report::new(if r.independent() { EXIT_OK } else { EXIT_NEGATIVE }, text, json))
        }
    }
}

fn load_system(args: &SystemArgs) -> Result<BranchingSystem, InputError> {
    let g = load_graph(&args.graph)?;
    if let Some(path) = &args.system_file {
        let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read `{path}`: {e}")))?;
        return parse_system(&g, &text).map_err(|e| InputError(format!("{path}: {e}")));
    }
    Ok(match args.system {
        SystemKind::Standard => build_standard_system(&g),
        SystemKind::Rotation => build_rotation_system(&g),
        SystemKind::Identity => build_identity_system(&g),
        SystemKind::Covering => build_covering_system(&g),
    })
}

fn branch_cmd(cmd: BranchCmd) -> Outcome {
    match cmd {
        BranchCmd::Build(args) => {
            let sys = load_system(&args)?;
            let text = sys.to_string();
            Ok(Report::new(EXIT_OK, text.clone(), json!({ "system": text })))
        }
        BranchCmd::Axioms(args) => {
            let sys = load_system(&args)?;
            let report = check_axioms(&sys);
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| json!({ "axiom": v.axiom(), "message": v.to_string() }))
                .collect();
            let json = json!({ "ok": report.ok(), "violations": violations });
            Ok(Report::new(if report.ok() { EXIT_OK } else { EXIT_NEGATIVE }, report.to_string(), json))
        }
        BranchCmd::Faithful { sys, m } => {
            let sys = load_system(&sys)?;
            let f = faithfulness_conditions(&sys, m);
            let json = json!({ "faithful": f.is_faithful(), "failed_condition": f.condition(), "message": f.to_string() });
            Ok(Report::new(if f.is_faithful() { EXIT_OK } else { EXIT_NEGATIVE }, f.to_string(), json))
        }
        BranchCmd::Rank { sys, deg, m } => {
            let sys = load_system(&sys)?;
            let r = injectivity_rank_check(&sys, deg, m);
            let json = json!({
                "monomials": r.monomials, "test_functions": r.test_functions, "rank": r.rank,
                "kernel_witness": r.kernel_witness.as_ref().map(|k| k.to_string()),
                "faithful": r.faithfulness.is_faithful(), "full_rank": r.full_rank(), "consistent": r.consistent(),
            });
            let code = if r.full_rank() && r.consistent() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Report::new(code, r.to_string(), json))
        }
    }
}
