//! Batch command-line surface over `skelgb-core`. [`run`] parses arguments,
//! executes one subcommand and returns the process exit status.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use skelgb_core::arrangements::{
    components, family_generators, integer_point, truncation, truncation_rank_test, verify_family,
};
use skelgb_core::dodeca::{dodeca_report, DEFAULT_STEP_BUDGET};
use skelgb_core::groebner::{
    buchberger_with, format_ideal, hilbert, intersect_all, is_groebner, normal_form, parse_ideal,
};
use skelgb_core::invariants::{betti_table, skeleton_invariants, InvariantError};
use skelgb_core::{
    Coeff, Family, FamilySpec, GroebnerConfig, GroebnerError, Ideal, LinearSubspace, MonomialOrder, Polynomial,
    VarRing, VerificationReport,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "skelgb", version, about = "Exact Groebner bases and invariants of subspace arrangements")]
struct Cli {
    /// Emit a JSON report on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum S-pair reductions per Groebner computation.
    #[arg(long, global = true, value_name = "PAIRS")]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the generators of a family instance as an ideal file.
    Construct(SpecArgs),
    /// Reduced Groebner basis of an ideal file.
    Gb {
        #[command(flatten)]
        input: IdealArg,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Ideal membership of a polynomial.
    Member {
        #[command(flatten)]
        input: IdealArg,
        /// Polynomial in the ring of the ideal file.
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Intersection of several ideal files over the same ring.
    Intersect {
        /// Ideal files, folded left to right; `-` reads stdin.
        #[arg(long = "ideal", required = true, num_args = 1..)]
        ideals: Vec<String>,
    },
    /// Hilbert series data and Hilbert function values.
    Hilbert {
        #[command(flatten)]
        input: IdealArg,
        #[command(flatten)]
        order: OrderArgs,
        /// Print Hilbert function values in degrees 0 to D.
        #[arg(long, default_value_t = 10, value_name = "D")]
        max_degree: u32,
    },
    /// Graded Betti table of a homogeneous ideal.
    Betti {
        #[command(flatten)]
        input: IdealArg,
        /// Largest internal degree; defaults to twice the number of variables plus two.
        #[arg(long, value_name = "D")]
        max_degree: Option<u32>,
    },
    /// Verify the generator identity of a family instance.
    VerifyFamily {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Check the counterexample point for the truncation rank test.
    VerifyTruncExample,
    /// Dodecahedron edge lines, facet covers and the ideal of the 30 lines.
    Dodeca,
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// LiLi, KL, Skeleton or StanleyReisner (SR).
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value_t = 1)]
    m: u32,
}

#[derive(Args, Debug)]
struct IdealArg {
    /// Ideal file; `-` reads stdin.
    #[arg(long)]
    ideal: String,
}

#[derive(Args, Debug)]
struct OrderArgs {
    /// `lex`, `grevlex`, `weight:w0,w1,...` or `block:K`, optionally
    /// followed by `@v1,v2,...` from most to least significant.
    #[arg(long)]
    order: Option<String>,
    /// Also check the generators against K seeded random weight orders.
    #[arg(long, value_name = "K")]
    sample_orders: Option<usize>,
    #[arg(long, default_value_t = 0, value_name = "S")]
    seed: u64,
}

/// A failure that stops a subcommand before it produces a report.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Budget(m) => m,
        }
    }
}

impl From<GroebnerError> for CliError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Groebner(g) => g.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

/// What a subcommand prints, in both formats, and its exit status.
struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn report(report: &VerificationReport, extra: Value) -> Self {
        let mut json = json!({ "report": report, "overall": if report.passed() { "pass" } else { "fail" } });
        if let (Value::Object(map), Value::Object(more)) = (&mut json, extra) {
            map.extend(more);
        }
        let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
        Output { text: report.to_string(), json, code }
    }
}

/// Runs the command line `argv` (including the program name), reading
/// stdin for `-` inputs and writing to the given streams.
pub fn run_with<I, S>(argv: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let cfg = GroebnerConfig { max_pairs: cli.budget, ..GroebnerConfig::default() };
    let mut stdin_text = None;
    let mut read = |path: &str| -> Result<String, CliError> {
        if path == "-" {
            if stdin_text.is_none() {
                let mut s = String::new();
                stdin.read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
                stdin_text = Some(s);
            }
            return Ok(stdin_text.clone().unwrap_or_default());
        }
        std::fs::read_to_string(Path::new(path)).map_err(|e| usage(format!("{path}: {e}")))
    };
    match execute(cli.command, &cfg, &mut read) {
        Ok(o) => {
            let body = if cli.json {
                let mut s = serde_json::to_string_pretty(&o.json).expect("serializable");
                s.push('\n');
                s
            } else {
                o.text
            };
            let _ = out.write_all(body.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

/// [`run_with`] on the process streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut io::stdin().lock(), &mut stdout.lock(), &mut stderr.lock())
}

type Reader<'a> = dyn FnMut(&str) -> Result<String, CliError> + 'a;

fn execute(cmd: Command, cfg: &GroebnerConfig, read: &mut Reader<'_>) -> Result<Output, CliError> {
    match cmd {
        Command::Construct(spec) => construct(&spec),
        Command::Gb { input, order } => gb(&load(read, &input.ideal)?, &order, cfg),
        Command::Member { input, poly, order } => member(&load(read, &input.ideal)?, &poly, &order, cfg),
        Command::Intersect { ideals } => {
            let ideals = ideals.iter().map(|p| load(read, p)).collect::<Result<Vec<_>, _>>()?;
            intersect(&ideals, cfg)
        }
        Command::Hilbert { input, order, max_degree } => {
            hilbert_cmd(&load(read, &input.ideal)?, &order, max_degree, cfg)
        }
        Command::Betti { input, max_degree } => betti(&load(read, &input.ideal)?, max_degree),
        Command::VerifyFamily { spec, order } => verify(&spec, &order),
        Command::VerifyTruncExample => trunc_example(),
        Command::Dodeca => dodeca(cfg),
    }
}

fn load(read: &mut Reader<'_>, path: &str) -> Result<Ideal, CliError> {
    parse_ideal(&read(path)?).map_err(|e| usage(format!("{path}: {e}")))
}

fn parse_spec(args: &SpecArgs) -> Result<FamilySpec, CliError> {
    let family: Family = args.family.parse().map_err(usage)?;
    FamilySpec::new(family, args.n, args.p, args.m).map_err(usage)
}

fn resolve_order(args: &OrderArgs, ring: &VarRing) -> Result<MonomialOrder, CliError> {
    match &args.order {
        Some(text) => MonomialOrder::parse(text, ring).map_err(usage),
        None => Ok(ring.canonical_order().clone()),
    }
}

fn sampled_orders(args: &OrderArgs, ring: &VarRing) -> Vec<MonomialOrder> {
    let least = ring.index_of("x0");
    MonomialOrder::sample_weights(ring.count(), args.sample_orders.unwrap_or(0), args.seed, least)
}

fn text_list(polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(Polynomial::to_string).collect()
}

fn basis_checks(report: &mut VerificationReport, gens: &[Polynomial], ring: &VarRing, orders: &[MonomialOrder]) {
    for o in orders {
        report.check(format!("generators form a Groebner basis under {}", o.describe(ring)), is_groebner(gens, o));
    }
}

fn construct(args: &SpecArgs) -> Result<Output, CliError> {
    let spec = parse_spec(args)?;
    let ring = spec.ring();
    let gens = family_generators(&spec);
    let text = format!("# {spec}\n{}", format_ideal(&ring, &gens));
    let json = json!({ "spec": spec.to_string(), "ring": ring.names(), "generators": text_list(&gens) });
    Ok(Output { text, json, code: EXIT_PASS })
}

fn gb(ideal: &Ideal, args: &OrderArgs, cfg: &GroebnerConfig) -> Result<Output, CliError> {
    let ring = ideal.ring();
    let order = resolve_order(args, ring)?;
    let basis = buchberger_with(ideal.gens(), &order, cfg)?;
    let desc = order.describe(ring);
    if args.sample_orders.is_none() {
        let text = format!("# reduced basis, order {desc}\n{}", format_ideal(ring, &basis));
        let json = json!({ "order": desc, "ring": ring.names(), "basis": text_list(&basis) });
        return Ok(Output { text, json, code: EXIT_PASS });
    }
    let mut report = VerificationReport::new(format!("universal basis check, seed {}", args.seed));
    let mut orders = vec![order];
    orders.extend(sampled_orders(args, ring));
    basis_checks(&mut report, ideal.gens(), ring, &orders);
    let mut out = Output::report(&report, json!({ "order": desc, "seed": args.seed, "basis": text_list(&basis) }));
    out.text =
        format!("{}{}", format_ideal(ring, &basis).lines().map(|l| format!("# {l}\n")).collect::<String>(), out.text);
    Ok(out)
}

fn member(ideal: &Ideal, poly: &str, args: &OrderArgs, cfg: &GroebnerConfig) -> Result<Output, CliError> {
    let ring = ideal.ring();
    let f = Polynomial::parse(poly, ring).map_err(usage)?;
    let order = resolve_order(args, ring)?;
    let gb = ideal.groebner_with(&order, cfg)?;
    let rem = normal_form(&f, &gb, &order);
    let inside = rem.is_zero();
    let text = if inside { "true\n".to_string() } else { format!("false\nremainder: {rem}\n") };
    let json = json!({
        "poly": f.to_string(),
        "order": order.describe(ring),
        "member": inside,
        "remainder": rem.to_string(),
    });
    Ok(Output { text, json, code: if inside { EXIT_PASS } else { EXIT_FAIL } })
}

fn intersect(ideals: &[Ideal], cfg: &GroebnerConfig) -> Result<Output, CliError> {
    let fold = intersect_all(ideals, cfg)?;
    let ring = fold.ideal.ring();
    let gens = fold.ideal.gens();
    let mut text = String::new();
    if !fold.is_complete() {
        let _ = writeln!(text, "# partial: first {} of {} ideals", fold.completed, fold.total);
    }
    text.push_str(&format_ideal(ring, gens));
    let json = json!({
        "ring": ring.names(),
        "completed": fold.completed,
        "total": fold.total,
        "generators": text_list(gens),
    });
    Ok(Output { text, json, code: if fold.is_complete() { EXIT_PASS } else { EXIT_BUDGET } })
}

fn series_text(coeffs: &[skelgb_core::BigInt]) -> String {
    let ring = VarRing::new(["t"]).expect("one variable");
    let t = Polynomial::var(&ring, 0);
    let p = coeffs
        .iter()
        .enumerate()
        .fold(Polynomial::zero(&ring), |acc, (k, c)| &acc + &t.pow(k as u32).scale(&Coeff::from_integer(c.clone())));
    p.to_string()
}

fn hilbert_cmd(ideal: &Ideal, args: &OrderArgs, max_degree: u32, cfg: &GroebnerConfig) -> Result<Output, CliError> {
    let ring = ideal.ring();
    let order = resolve_order(args, ring)?;
    ideal.groebner_with(&order, cfg)?;
    let h = hilbert(ideal, &order)?;
    let values = h.values(max_degree);
    let shown: Vec<String> = values.iter().map(u64::to_string).collect();
    let text = format!(
        "dim: {}\ncodim: {}\ndegree: {}\nnumerator: {}\nreduced numerator: {}\nvalues: {}\n",
        h.dim,
        h.codim,
        h.degree,
        series_text(&h.numerator),
        series_text(&h.reduced_numerator),
        shown.join(" ")
    );
    let json = json!({ "order": order.describe(ring), "hilbert": h, "values": values });
    Ok(Output { text, json, code: EXIT_PASS })
}

fn betti(ideal: &Ideal, max_degree: Option<u32>) -> Result<Output, CliError> {
    let maxdeg = max_degree.unwrap_or(2 * ideal.ring().count() as u32 + 2);
    let table = betti_table(ideal, maxdeg)?;
    Ok(Output { text: table.to_staircase(), json: table.to_json(), code: EXIT_PASS })
}

fn verify(args: &SpecArgs, order: &OrderArgs) -> Result<Output, CliError> {
    let spec = parse_spec(args)?;
    let mut report = verify_family(&spec);
    let ring = spec.ring();
    if spec.family == Family::Skeleton {
        let gens = family_generators(&spec);
        let nv = ring.count();
        let mut orders = vec![MonomialOrder::grevlex(nv).with_least(0), MonomialOrder::lex(nv).with_least(0)];
        if order.order.is_some() {
            orders.push(resolve_order(order, &ring)?);
        }
        orders.extend(sampled_orders(order, &ring));
        basis_checks(&mut report, &gens, &ring, &orders);
        if spec.n <= 4 {
            report.extend(skeleton_invariants(spec.n, spec.p)?);
        } else {
            report.skip("Betti table invariants", "computed for n <= 4 only");
        }
    }
    Ok(Output::report(&report, json!({ "spec": spec, "seed": order.seed })))
}

fn trunc_example() -> Result<Output, CliError> {
    let mut report = VerificationReport::new("truncation rank test at (0, 0, 1), n=3 m=2 p=1");
    let ring: Arc<VarRing> = VarRing::affine(3);
    let form = |t: &str| Polynomial::parse(t, &ring).expect("valid form");
    let hyperplanes: Vec<Polynomial> =
        ["x1 - x2", "x1 + x2", "x1 - x3", "x1 + x3", "x2 - x3", "x2 + x3"].iter().map(|t| form(t)).collect();
    let pt = integer_point(&[0, 0, 1]);
    let flats = truncation(&ring, &hyperplanes, 2).map_err(usage)?;
    let xy = LinearSubspace::implicit(&ring, vec![form("x1"), form("x2")]).map_err(usage)?;
    let on_xy = flats.iter().any(|c| c.same_subspace(&xy)) && xy.contains(&pt);
    report
        .check("(0, 0, 1) lies on the codimension-2 flat <x1, x2>", on_xy)
        .detail(format!("{} codimension-2 flats", flats.len()));
    let accepted = truncation_rank_test(3, 2, 1, &pt).map_err(usage)?;
    report.check("rank test rejects (0, 0, 1)", !accepted);
    let spec = FamilySpec::new(Family::KL, 3, 1, 2).expect("valid spec");
    let gens = family_generators(&spec);
    let minus_one = -Coeff::from_integer(1.into());
    let hit = gens.iter().find(|g| g.evaluate(&pt).expect("length") == minus_one);
    let c = report.check("a KL(3,1,2) generator takes the value -1 there", hit.is_some());
    if let Some(g) = hit {
        c.witness(g.to_string());
    }
    let on_component = components(&spec).map_err(usage)?.iter().any(|c| c.contains(&pt));
    report.check("(0, 0, 1) lies on no KL(3,1,2) component", !on_component);
    Ok(Output::report(&report, json!({})))
}

fn dodeca(cfg: &GroebnerConfig) -> Result<Output, CliError> {
    let cfg = GroebnerConfig { max_pairs: cfg.max_pairs.or(Some(DEFAULT_STEP_BUDGET)), ..cfg.clone() };
    let (report, summary) = dodeca_report(&cfg).map_err(usage)?;
    let complete = summary["fold"]["completed"] == summary["fold"]["total"];
    let timings = serde_json::to_value(&report.timings).expect("serializable");
    let mut out = Output::report(&report, summary);
    out.json["timings"] = timings;
    out.json["open_question"] =
        Value::from("the 60 non-parallel facet pairs meet in 60 lines; the 30 that support edges are used");
    if !complete {
        out.code = EXIT_BUDGET;
    }
    Ok(out)
}
