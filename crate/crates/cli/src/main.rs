//! `kroman`: batch front end for the solvers, verifiers, bounds and
//! snark constructions.
//!
//! Exit codes: 0 ok, 1 failure, 2 usage error, 3 budget exhausted (the
//! incumbent is still printed).

use std::collections::BTreeSet;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kroman::bounds::{self, BoundReport, Quantity, Sense, Variant};
use kroman::families::{self, fixtures, BlanusaDescriptor, Construction, LoupekineDescriptor};
use kroman::graph::{graph_stats, Graph, VertexId};
use kroman::io::{graph_to_json, parse_graph, to_edge_list};
use kroman::labeling::{verify_kirdf, verify_krdf, weight, KLabeling, Violation};
use kroman::reduction::{build_reduction, gadget_weight_audit, vc_to_irdf};
use kroman::solvers::{self, Mode, SolveBudget, SolveError, SolveOptions, SolveResult, Witness};

#[derive(Parser)]
#[command(name = "kroman", version, about = "[k]-Roman domination toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format. bound and table default to csv, the rest to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Wall-clock limit per solver call, in seconds.
    #[arg(long, global = true, value_parser = parse_secs)]
    time_limit: Option<Duration>,
    /// Search-node limit per solver call.
    #[arg(long, global = true)]
    node_limit: Option<u64>,
    /// Worker threads inside each solver call.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    threads: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a family graph, optionally with its constructed labeling.
    Gen(GenArgs),
    /// Solve one problem exactly on a graph file.
    Solve(SolveArgs),
    /// Check a labeling file against a graph file.
    Verify(VerifyArgs),
    /// Closed-form bounds for a family or a graph file.
    Bound(BoundArgs),
    /// Build the vertex-cover reduction instance for a source graph.
    Reduce(ReduceArgs),
    /// Build a family labeling, verify it and compare with its predicted weight.
    Construct(ConstructArgs),
    /// Sweep a parameter grid: constructions, bounds and exact values.
    Table(TableArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Edges,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Path,
    Cycle,
    Complete,
    /// P2 x C_{4p}
    Product,
    Blanusa,
    Loupekine,
    /// Small hand-made example graphs.
    Fixture,
}

#[derive(Clone, Copy, ValueEnum)]
enum Layout {
    /// ell blocks, all laminar, triples first (needs --ell, --sigma)
    Lp0,
    /// the five-block example with an intersecting plug pair
    FiveLp1,
    /// the five-block LP0 example
    FiveLp0,
}

#[derive(Clone, Copy, ValueEnum)]
enum Recipe {
    /// [k]-IRDF of weight 2(k+1)ell + k sigma
    Lp1,
    /// [k]-IRDF of weight 2(k+1)ell + (k-1) sigma
    Lp0,
    /// [k]-RDF of weight 2(k+1)ell
    Lp0Rdf,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureName {
    P2OneK,
    DoubleStar,
    P2ZeroTop,
    Spider,
    C6Pair,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    /// Order for path, cycle and complete.
    #[arg(long)]
    n: Option<usize>,
    /// Product P2 x C_{4p}.
    #[arg(long)]
    p: Option<usize>,
    /// Blanusa base (1 or 2).
    #[arg(long)]
    t: Option<u8>,
    /// Blanusa index.
    #[arg(long)]
    i: Option<usize>,
    /// Loupekine block count.
    #[arg(long)]
    ell: Option<usize>,
    /// Loupekine triple count.
    #[arg(long)]
    sigma: Option<usize>,
    #[arg(long, value_enum)]
    layout: Option<Layout>,
    /// Which Loupekine labeling to build (default lp0 on LP0 layouts, else lp1).
    #[arg(long, value_enum)]
    recipe: Option<Recipe>,
    #[arg(long, value_enum)]
    name: Option<FixtureName>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    fam: FamilyArgs,
    /// Also build the family labeling for this k.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, value_enum, default_value = "edges")]
    graph_format: GraphFormat,
    /// Where to write the labeling JSON (needs --k).
    #[arg(long)]
    labeling_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    /// gamma_[kR], minimum [k]-RDF weight
    Gkr,
    /// i_[kR], minimum [k]-IRDF weight
    Ikr,
    /// independent domination number
    I,
    /// domination number
    Gamma,
    /// vertex cover number
    Tau,
    /// gamma_[kR] by exhaustive enumeration (small graphs)
    BruteGkr,
    /// i_[kR] by exhaustive enumeration (small graphs)
    BruteIkr,
    /// whether i_[kR] = (k+1) i
    IndependentRoman,
}

impl Problem {
    fn name(self) -> &'static str {
        match self {
            Problem::Gkr => "gkr",
            Problem::Ikr => "ikr",
            Problem::I => "i",
            Problem::Gamma => "gamma",
            Problem::Tau => "tau",
            Problem::BruteGkr => "brute-gkr",
            Problem::BruteIkr => "brute-ikr",
            Problem::IndependentRoman => "independent-roman",
        }
    }

    fn needs_k(self) -> bool {
        !matches!(self, Problem::I | Problem::Gamma | Problem::Tau)
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Rdf,
    Irdf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Defaults to the k stored in the labeling file; must match it if given.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    labeling: PathBuf,
    #[arg(long, value_enum, default_value = "irdf")]
    check: Check,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundFamily {
    Blanusa,
    Loupekine,
    /// generic degree bounds for a graph file
    Graph,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Lp0,
    Lp1,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Lp0 => Variant::LP0,
            VariantArg::Lp1 => Variant::LP1,
        }
    }
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, value_enum)]
    family: BoundFamily,
    #[arg(long)]
    k: i64,
    #[arg(long)]
    t: Option<i64>,
    #[arg(long)]
    i: Option<i64>,
    #[arg(long)]
    ell: Option<i64>,
    #[arg(long, default_value_t = 1)]
    sigma: i64,
    #[arg(long, value_enum, default_value = "lp0")]
    variant: VariantArg,
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: u32,
    /// Allow k < 3 (the instance is still built, with a note).
    #[arg(long)]
    allow_small_k: bool,
    /// Comma-separated vertex cover of the source; adds its [k]-IRDF to the output.
    #[arg(long)]
    cover: Option<String>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    fam: FamilyArgs,
    #[arg(long)]
    k: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFamily {
    Blanusa,
    Loupekine,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    family: TableFamily,
    /// Comma-separated k values; an empty list gives an empty table.
    #[arg(long)]
    k: String,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    i: Option<String>,
    #[arg(long)]
    ell: Option<String>,
    #[arg(long, default_value = "1")]
    sigma: String,
    #[arg(long, value_enum, default_value = "lp0")]
    variant: VariantArg,
    /// Skip the exact i_[kR] solves.
    #[arg(long)]
    no_solve: bool,
}

enum Fail {
    Usage(String),
    Budget,
    Other(String),
}

impl<E: Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail::Other(e.to_string())
    }
}

type Run = Result<(), Fail>;

fn parse_secs(s: &str) -> Result<Duration, String> {
    let x: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if !x.is_finite() || x <= 0.0 {
        return Err("time limit must be a positive number of seconds".into());
    }
    Ok(Duration::from_secs_f64(x))
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Fail> {
    v.ok_or_else(|| Fail::Usage(format!("missing {flag}")))
}

fn read_graph(path: &Path) -> Result<Graph, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail::Other(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Fail::Other(format!("{}: {e}", path.display())))
}

fn json_line<T: Serialize>(v: &T) -> Result<(), Fail> {
    println!("{}", serde_json::to_string(v)?);
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt<T: Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

struct Ctx {
    format: Option<Format>,
    opts: SolveOptions,
}

impl Ctx {
    fn json(&self) -> bool {
        self.format != Some(Format::Csv)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Rdf,
    Irdf,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Rdf => "rdf",
            Kind::Irdf => "irdf",
        }
    }

    fn verify(self, g: &Graph, f: &KLabeling) -> kroman::VerifyReport {
        match self {
            Kind::Rdf => verify_krdf(g, f),
            Kind::Irdf => verify_kirdf(g, f),
        }
    }
}

struct Built {
    graph: Graph,
    label: String,
    construction: Option<(Construction, Kind)>,
}

fn loupekine_descriptor(fa: &FamilyArgs) -> Result<LoupekineDescriptor, Fail> {
    Ok(match fa.layout.unwrap_or(Layout::Lp0) {
        Layout::Lp0 => LoupekineDescriptor::lp0(need(fa.ell, "--ell")?, fa.sigma.unwrap_or(1))?,
        Layout::FiveLp1 => LoupekineDescriptor::five_block_lp1(),
        Layout::FiveLp0 => LoupekineDescriptor::five_block_lp0(),
    })
}

fn fixture(name: FixtureName, k: u32) -> (Graph, KLabeling, Kind) {
    let (g, f) = match name {
        FixtureName::P2OneK => fixtures::p2_one_k(k),
        FixtureName::DoubleStar => fixtures::double_star(k),
        FixtureName::P2ZeroTop => fixtures::p2_zero_top(k),
        FixtureName::Spider => fixtures::spider(k),
        FixtureName::C6Pair => fixtures::c6_pair(k),
    };
    let kind = match name {
        FixtureName::P2OneK | FixtureName::DoubleStar => Kind::Rdf,
        _ => Kind::Irdf,
    };
    (g, f, kind)
}

fn build_family(fa: &FamilyArgs, k: Option<u32>) -> Result<Built, Fail> {
    if k == Some(0) {
        return Err(Fail::Usage("k must be at least 1".into()));
    }
    let none = |graph: Graph, label: String| Built { graph, label, construction: None };
    Ok(match fa.family {
        FamilyKind::Path => {
            let n = need(fa.n, "--n")?;
            none(families::path(n)?, format!("path n={n}"))
        }
        FamilyKind::Cycle => {
            let n = need(fa.n, "--n")?;
            none(families::cycle(n)?, format!("cycle n={n}"))
        }
        FamilyKind::Complete => {
            let n = need(fa.n, "--n")?;
            none(families::complete(n)?, format!("complete n={n}"))
        }
        FamilyKind::Product => {
            let p = need(fa.p, "--p")?;
            let (graph, c) = families::p2_cycle_with_irdf(p, k.unwrap_or(1))?;
            let construction = k.map(|_| (c, Kind::Irdf));
            Built { graph, label: format!("product p={p}"), construction }
        }
        FamilyKind::Blanusa => {
            let d = BlanusaDescriptor::new(need(fa.t, "--t")?, need(fa.i, "--i")?)?;
            let graph = families::blanusa(d)?;
            let construction = match k {
                Some(k) => Some((families::blanusa_special_irdf(d, k)?, Kind::Irdf)),
                None => None,
            };
            Built { graph, label: format!("blanusa t={} i={}", d.t, d.i), construction }
        }
        FamilyKind::Loupekine => {
            let d = loupekine_descriptor(fa)?;
            let graph = families::loupekine(&d)?;
            let recipe = fa.recipe.unwrap_or(if d.is_lp0() { Recipe::Lp0 } else { Recipe::Lp1 });
            let construction = match k {
                Some(k) => Some(match recipe {
                    Recipe::Lp1 => (families::lp1_irdf(&d, k)?, Kind::Irdf),
                    Recipe::Lp0 => (families::lp0_irdf(&d, k)?, Kind::Irdf),
                    Recipe::Lp0Rdf => (families::lp0_krdf(&d, k)?, Kind::Rdf),
                }),
                None => None,
            };
            Built { graph, label: format!("loupekine ell={} sigma={}", d.ell, d.sigma()), construction }
        }
        FamilyKind::Fixture => {
            let name = need(fa.name, "--name")?;
            let (graph, f, kind) = fixture(name, k.unwrap_or(1));
            let label = format!("fixture {}", name.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default());
            let construction = k.map(|_| (Construction { predicted: weight(&f), labeling: f }, kind));
            Built { graph, label, construction }
        }
    })
}

fn gen(a: GenArgs) -> Run {
    let b = build_family(&a.fam, a.k)?;
    if a.labeling_out.is_some() && b.construction.is_none() {
        return Err(Fail::Usage("--labeling-out needs --k and a family with a labeling".into()));
    }
    match a.graph_format {
        GraphFormat::Edges => {
            print!("# {}\n{}", b.label, to_edge_list(&b.graph));
            if let Some((c, _)) = &b.construction {
                println!("# predicted weight {}", c.predicted);
            }
        }
        GraphFormat::Json => {
            println!("{}", graph_to_json(&b.graph));
            if let Some((c, _)) = &b.construction {
                eprintln!("predicted weight {}", c.predicted);
            }
        }
    }
    if let (Some(path), Some((c, _))) = (&a.labeling_out, &b.construction) {
        fs::write(path, c.labeling.to_json() + "\n").map_err(|e| Fail::Other(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

struct Outcome {
    optimum: Option<u64>,
    witness: Option<Witness>,
    proven: bool,
    canonical: bool,
    nodes: u64,
    exhausted: bool,
}

fn outcome<W>(r: Result<SolveResult<W>, SolveError>, wrap: fn(W) -> Witness) -> Result<Outcome, Fail> {
    match r {
        Ok(s) => Ok(Outcome {
            optimum: Some(s.optimum),
            witness: Some(wrap(s.witness)),
            proven: s.proven_optimal,
            canonical: s.canonical,
            nodes: s.nodes_explored,
            exhausted: false,
        }),
        Err(SolveError::BudgetExhausted { best, witness, nodes_explored }) => Ok(Outcome {
            optimum: best,
            witness,
            proven: false,
            canonical: false,
            nodes: nodes_explored,
            exhausted: true,
        }),
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct SolveOut<'a> {
    problem: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    n: usize,
    optimum: Option<u64>,
    proven_optimal: bool,
    canonical: bool,
    status: &'static str,
    witness: &'a Option<Witness>,
}

#[derive(Serialize)]
struct IndependentRomanOut {
    problem: &'static str,
    k: u32,
    n: usize,
    status: &'static str,
    #[serde(flatten)]
    report: Option<solvers::IndependentRomanReport>,
}

fn witness_csv(w: &Option<Witness>) -> String {
    match w {
        Some(Witness::Labeling(f)) => f.labels.iter().map(|(v, l)| format!("{v}={l}")).collect::<Vec<_>>().join(";"),
        Some(Witness::Set(s)) => s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";"),
        None => String::new(),
    }
}

fn status(exhausted: bool) -> &'static str {
    if exhausted {
        "budget_exhausted"
    } else {
        "optimal"
    }
}

fn solve(a: SolveArgs, ctx: &Ctx) -> Run {
    let g = read_graph(&a.graph)?;
    let k = if a.problem.needs_k() { Some(need(a.k, "--k")?) } else { None };
    if k == Some(0) {
        return Err(Fail::Usage("k must be at least 1".into()));
    }
    let o = &ctx.opts;
    let start = Instant::now();
    let lab = Witness::Labeling;
    let set = Witness::Set;
    let res = match a.problem {
        Problem::Gkr => outcome(solvers::solve_gamma_krdf_with(&g, k.unwrap(), o), lab)?,
        Problem::Ikr => outcome(solvers::solve_i_krdf_with(&g, k.unwrap(), o), lab)?,
        Problem::I => outcome(solvers::solve_i_with(&g, o), set)?,
        Problem::Gamma => outcome(solvers::solve_gamma_with(&g, o), set)?,
        Problem::Tau => outcome(solvers::solve_tau_with(&g, o), set)?,
        Problem::BruteGkr => outcome(solvers::brute_force(&g, k.unwrap(), Mode::Rdf), lab)?,
        Problem::BruteIkr => outcome(solvers::brute_force(&g, k.unwrap(), Mode::Irdf), lab)?,
        Problem::IndependentRoman => return independent_roman(&g, k.unwrap(), ctx, start),
    };
    eprintln!("{}: {} nodes, {:.3}s", a.problem.name(), res.nodes, start.elapsed().as_secs_f64());
    let st = status(res.exhausted);
    if ctx.json() {
        json_line(&SolveOut {
            problem: a.problem.name(),
            k,
            n: g.n(),
            optimum: res.optimum,
            proven_optimal: res.proven,
            canonical: res.canonical,
            status: st,
            witness: &res.witness,
        })?;
    } else {
        println!("problem,k,n,optimum,proven_optimal,canonical,status,witness");
        println!(
            "{},{},{},{},{},{},{},{}",
            a.problem.name(),
            opt(k),
            g.n(),
            opt(res.optimum),
            res.proven,
            res.canonical,
            st,
            csv_field(&witness_csv(&res.witness))
        );
    }
    if res.exhausted {
        Err(Fail::Budget)
    } else {
        Ok(())
    }
}

fn independent_roman(g: &Graph, k: u32, ctx: &Ctx, start: Instant) -> Run {
    let (report, exhausted) = match solvers::is_independent_k_roman_with(g, k, &ctx.opts) {
        Ok(r) => (Some(r), false),
        Err(SolveError::BudgetExhausted { .. }) => (None, true),
        Err(e) => return Err(e.into()),
    };
    eprintln!("independent-roman: {:.3}s", start.elapsed().as_secs_f64());
    let out = IndependentRomanOut { problem: "independent-roman", k, n: g.n(), status: status(exhausted), report };
    if ctx.json() {
        json_line(&out)?;
    } else {
        println!("problem,k,n,status,flag,i_kr,i_val,i_kr_without_k,agree");
        let r = out.report.as_ref();
        println!(
            "independent-roman,{k},{},{},{},{},{},{},{}",
            g.n(),
            out.status,
            opt(r.map(|r| r.flag)),
            opt(r.map(|r| r.i_kr)),
            opt(r.map(|r| r.i_val)),
            opt(r.map(|r| r.i_kr_without_k)),
            opt(r.map(|r| r.agree)),
        );
    }
    if exhausted {
        Err(Fail::Budget)
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
struct VerifyOut {
    valid: bool,
    check: &'static str,
    k: u32,
    weight: u64,
    violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

fn verify(a: VerifyArgs, ctx: &Ctx) -> Run {
    let g = read_graph(&a.graph)?;
    let text = fs::read_to_string(&a.labeling).map_err(|e| Fail::Other(format!("{}: {e}", a.labeling.display())))?;
    let f = KLabeling::from_json(&text)?;
    if let Some(k) = a.k {
        if k != f.k {
            return Err(Fail::Other(format!("--k {k} but the labeling file has k = {}", f.k)));
        }
    }
    let kind = match a.check {
        Check::Rdf => Kind::Rdf,
        Check::Irdf => Kind::Irdf,
    };
    let rep = kind.verify(&g, &f);
    let out = VerifyOut {
        valid: rep.valid,
        check: kind.name(),
        k: f.k,
        weight: weight(&f),
        violations: rep.violations,
        notes: rep.notes,
    };
    if ctx.json() {
        json_line(&out)?;
    } else {
        println!("valid,check,k,weight,violations");
        println!("{},{},{},{},{}", out.valid, out.check, out.k, out.weight, out.violations.len());
    }
    Ok(())
}

fn bound(a: BoundArgs, ctx: &Ctx) -> Run {
    let reports = match a.family {
        BoundFamily::Blanusa => bounds::blanusa_bounds(need(a.t, "--t")?, need(a.i, "--i")?, a.k)?,
        BoundFamily::Loupekine => bounds::loupekine_bounds(need(a.ell, "--ell")?, a.sigma, a.k, a.variant.into())?,
        BoundFamily::Graph => {
            let g = read_graph(&need(a.graph, "--graph")?)?;
            if a.k < 1 {
                return Err(Fail::Usage("k must be at least 1".into()));
            }
            let st = graph_stats(&g);
            let (n, d) = (st.n as i64, st.max_degree as i64);
            vec![
                bounds::lb_degree(n, d, a.k, st.is_connected, st.n > 1),
                bounds::lb_degree_gamma(n, d, a.k, st.is_connected, st.n > 1),
            ]
        }
    };
    if ctx.format == Some(Format::Json) {
        json_line(&reports)?;
    } else {
        print!("{}", bounds::reports_to_csv(&reports));
    }
    Ok(())
}

fn reduce(a: ReduceArgs, ctx: &Ctx) -> Run {
    if ctx.format == Some(Format::Csv) {
        return Err(Fail::Usage("reduce only writes json".into()));
    }
    let g = read_graph(&a.graph)?;
    let r = build_reduction(&g, a.k, a.allow_small_k)?;
    for note in &r.notes {
        eprintln!("note: {note}");
    }
    let Some(cover) = a.cover else {
        println!("{}", r.to_json());
        return Ok(());
    };
    let c: BTreeSet<VertexId> = cover.split(',').map(str::trim).filter(|s| !s.is_empty()).map(VertexId::from).collect();
    let f = vc_to_irdf(&r, &c)?;
    let mut out: serde_json::Value = serde_json::from_str(&r.to_json())?;
    let obj = out.as_object_mut().expect("instance is an object");
    obj.insert("cover".into(), serde_json::to_value(&c)?);
    obj.insert("labeling".into(), serde_json::to_value(&f)?);
    obj.insert("weight".into(), weight(&f).into());
    obj.insert("formula".into(), r.formula(c.len()).into());
    obj.insert("audit".into(), serde_json::to_value(gadget_weight_audit(&r, &f))?);
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

#[derive(Serialize)]
struct ConstructOut<'a> {
    family: &'a str,
    k: u32,
    kind: &'static str,
    n: usize,
    predicted: u64,
    weight: u64,
    valid: bool,
    labeling: &'a KLabeling,
}

fn construct(a: ConstructArgs, ctx: &Ctx) -> Run {
    let b = build_family(&a.fam, Some(a.k))?;
    let Some((c, kind)) = &b.construction else {
        return Err(Fail::Usage(format!("{} has no labeling construction", b.label)));
    };
    let rep = kind.verify(&b.graph, &c.labeling);
    let w = weight(&c.labeling);
    let out = ConstructOut {
        family: &b.label,
        k: a.k,
        kind: kind.name(),
        n: b.graph.n(),
        predicted: c.predicted,
        weight: w,
        valid: rep.valid,
        labeling: &c.labeling,
    };
    if ctx.json() {
        json_line(&out)?;
    } else {
        println!("family,k,kind,n,predicted,weight,valid");
        println!("{},{},{},{},{},{},{}", csv_field(out.family), out.k, out.kind, out.n, out.predicted, w, rep.valid);
    }
    if !rep.valid || w != c.predicted {
        return Err(Fail::Other(format!("construction check failed for {} k={}", b.label, a.k)));
    }
    Ok(())
}

#[derive(Serialize)]
struct Row {
    family: String,
    params: String,
    k: u32,
    n: usize,
    constructed: Option<u64>,
    predicted: Option<u64>,
    lower: Option<i64>,
    upper: Option<i64>,
    exact: Option<u64>,
    proven: bool,
    agree: bool,
}

const TABLE_HEADER: &str = "family,params,k,n,constructed,predicted,lower,upper,exact,proven,agree";

impl Row {
    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.family,
            self.params,
            self.k,
            self.n,
            opt(self.constructed),
            opt(self.predicted),
            opt(self.lower),
            opt(self.upper),
            opt(self.exact),
            self.proven,
            self.agree
        )
    }
}

fn grid<T: FromStr>(s: &str, flag: &str) -> Result<Vec<T>, Fail> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Fail::Usage(format!("bad value '{x}' in {flag}"))))
        .collect()
}

struct Instance {
    family: String,
    params: String,
    graph: Graph,
    k: u32,
    construction: Option<Construction>,
    predicted: Option<u64>,
    reports: Vec<BoundReport>,
}

/// Fills in one table row; returns whether the solve ran out of budget.
fn table_row(inst: Instance, ctx: &Ctx, solve: bool) -> Result<(Row, bool), Fail> {
    let g = &inst.graph;
    let mut reports = inst.reports;
    reports.push(bounds::lb_degree(g.n() as i64, g.max_degree() as i64, inst.k as i64, g.is_connected(), g.n() > 1));
    let ikr: Vec<&BoundReport> = reports.iter().filter(|r| r.quantity == Quantity::IKr && r.applicable).collect();

    let mut agree = true;
    let mut constructed = None;
    if let Some(c) = &inst.construction {
        let w = weight(&c.labeling);
        agree &= verify_kirdf(g, &c.labeling).valid && Some(w) == inst.predicted;
        constructed = Some(w);
    }
    let lower = ikr.iter().filter(|r| r.sense != Sense::Upper).filter_map(|r| r.value).max();
    let upper = ikr.iter().filter(|r| r.sense != Sense::Lower).filter_map(|r| r.value).min();
    if let (Some(lo), Some(hi)) = (lower, upper) {
        agree &= lo <= hi;
    }
    if let (Some(lo), Some(w)) = (lower, constructed) {
        agree &= lo <= w as i64;
    }

    let (mut exact, mut proven, mut exhausted) = (None, false, false);
    if solve {
        let start = Instant::now();
        let res = outcome(solvers::solve_i_krdf_with(g, inst.k, &ctx.opts), Witness::Labeling)?;
        eprintln!(
            "{} {} k={}: {} nodes, {:.3}s",
            inst.family,
            inst.params,
            inst.k,
            res.nodes,
            start.elapsed().as_secs_f64()
        );
        exact = res.optimum;
        proven = res.proven;
        exhausted = res.exhausted;
        if let Some(x) = exact {
            if proven {
                agree &= ikr.iter().all(|r| r.admits(x as i64)) && constructed.map_or(true, |w| x <= w);
            } else {
                agree &= lower.map_or(true, |lo| lo <= x as i64);
            }
        }
    }
    let row = Row {
        family: inst.family,
        params: inst.params,
        k: inst.k,
        n: g.n(),
        constructed,
        predicted: inst.predicted,
        lower,
        upper,
        exact,
        proven,
        agree,
    };
    Ok((row, exhausted))
}

fn table(a: TableArgs, ctx: &Ctx) -> Run {
    let ks: Vec<u32> = grid(&a.k, "--k")?;
    if ks.contains(&0) {
        return Err(Fail::Usage("k must be at least 1".into()));
    }
    let mut insts = Vec::new();
    match a.family {
        TableFamily::Blanusa => {
            let ts: Vec<u8> = grid(&need(a.t, "--t")?, "--t")?;
            let is: Vec<usize> = grid(&need(a.i, "--i")?, "--i")?;
            for &t in &ts {
                for &i in &is {
                    let d = BlanusaDescriptor::new(t, i)?;
                    let g = families::blanusa(d)?;
                    for &k in &ks {
                        let construction = if k >= 2 { Some(families::blanusa_special_irdf(d, k)?) } else { None };
                        insts.push(Instance {
                            family: "blanusa".into(),
                            params: format!("t={t};i={i}"),
                            graph: g.clone(),
                            k,
                            predicted: construction.as_ref().map(|c| c.predicted),
                            construction,
                            reports: bounds::blanusa_bounds(t as i64, i as i64, k as i64)?,
                        });
                    }
                }
            }
        }
        TableFamily::Loupekine => {
            let ells: Vec<usize> = grid(&need(a.ell, "--ell")?, "--ell")?;
            let sigmas: Vec<usize> = grid(&a.sigma, "--sigma")?;
            let variant: Variant = a.variant.into();
            let name = match variant {
                Variant::LP0 => "loupekine-lp0",
                Variant::LP1 => "loupekine-lp1",
            };
            for &ell in &ells {
                for &sigma in &sigmas {
                    let d = LoupekineDescriptor::lp0(ell, sigma)?;
                    let g = families::loupekine(&d)?;
                    for &k in &ks {
                        let c = match variant {
                            Variant::LP0 => families::lp0_irdf(&d, k)?,
                            Variant::LP1 => families::lp1_irdf(&d, k)?,
                        };
                        insts.push(Instance {
                            family: name.into(),
                            params: format!("ell={ell};sigma={sigma}"),
                            graph: g.clone(),
                            k,
                            predicted: Some(c.predicted),
                            construction: Some(c),
                            reports: bounds::loupekine_bounds(ell as i64, sigma as i64, k as i64, variant)?,
                        });
                    }
                }
            }
        }
    }

    let mut rows = Vec::new();
    let mut any_exhausted = false;
    for inst in insts {
        let (row, ex) = table_row(inst, ctx, !a.no_solve)?;
        any_exhausted |= ex;
        rows.push(row);
    }
    if ctx.format == Some(Format::Json) {
        json_line(&rows)?;
    } else {
        println!("{TABLE_HEADER}");
        for r in &rows {
            println!("{}", r.csv());
        }
    }
    if any_exhausted {
        Err(Fail::Budget)
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|info| {
        eprintln!("kroman: internal error: {info}");
    }));
    let cli = Cli::parse();
    let mut budget = SolveBudget::default();
    if let Some(t) = cli.time_limit {
        budget.time = t;
    }
    if let Some(n) = cli.node_limit {
        budget.nodes = n;
    }
    let ctx = Ctx {
        format: cli.format,
        opts: SolveOptions { threads: cli.threads as usize, ..SolveOptions::with_budget(budget) },
    };
    let run = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| match cli.cmd {
        Cmd::Gen(a) => gen(a),
        Cmd::Solve(a) => solve(a, &ctx),
        Cmd::Verify(a) => verify(a, &ctx),
        Cmd::Bound(a) => bound(a, &ctx),
        Cmd::Reduce(a) => reduce(a, &ctx),
        Cmd::Construct(a) => construct(a, &ctx),
        Cmd::Table(a) => table(a, &ctx),
    }));
    match run {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Fail::Budget)) => {
            eprintln!("kroman: budget exhausted, printed the best solution found");
            ExitCode::from(3)
        }
        Ok(Err(Fail::Usage(msg))) => {
            eprintln!("kroman: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Fail::Other(msg))) => {
            eprintln!("kroman: {msg}");
            ExitCode::from(1)
        }
        Err(_) => ExitCode::from(1),
    }
}
