mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use grs_hull::construct::{ternary_codes, Choices, ReductionPlan, Route, SeedCode, TernaryKind};
use grs_hull::families::{build, Family, FamilyParams, Variant};
use grs_hull::gf::prime_power;
use grs_hull::oracle::{ternary_4_2_census, OracleBudget, ENV_MAX_CODEWORDS, ENV_MAX_MINOR_K};
use grs_hull::selftest::{self, SelftestOptions};
use grs_hull::{Elem, Error, Field, GrsSpec};

use report::{CodeJson, GeneratorJson, Report, SCHEMA};

#[derive(Parser)]
#[command(
    name = "grs-hull",
    version,
    about = "MDS codes with prescribed Euclidean hull dimension"
)]
struct Cli {
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest q^k enumerated when computing minimum distances.
    #[arg(long, global = true, env = ENV_MAX_CODEWORDS, default_value_t = 1_000_000)]
    max_codewords: u64,
    /// Largest k for which MDS is decided through k x k minors.
    #[arg(long, global = true, env = ENV_MAX_MINOR_K, default_value_t = 5)]
    max_minor_k: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build one code with hull dimension l and verify it.
    Construct(ConstructArgs),
    /// Recompute the report for a code given as JSON.
    Verify {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build and verify every advertised (k, l) pair of a family.
    Enumerate(EnumerateArgs),
    /// Hull dimensions of all ternary [4, 2, 3] codes.
    Census {
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Randomized invariant suites over GF(5) to GF(27).
    Selftest(SelftestArgs),
}

#[derive(Args, Default, Clone)]
struct FamilyArgs {
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    variant: Option<Variant>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    /// Coset exponents, comma separated.
    #[arg(long, value_delimiter = ',')]
    mu: Option<Vec<u32>>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    e: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    /// Non-square used by twisted_pair, as an element encoding.
    #[arg(long)]
    omega: Option<u32>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// One of the explicit ternary codes: n2k1, n3k1, n4k1, n4k2.
    #[arg(long, conflicts_with_all = ["family", "seed"])]
    ternary: Option<TernaryKind>,
    /// Multipliers for --ternary, comma separated (default all ones).
    #[arg(long, value_delimiter = ',', requires = "ternary")]
    v: Option<Vec<u32>>,
    /// Self-orthogonal seed as GRS JSON.
    #[arg(long, conflicts_with = "family")]
    seed: Option<PathBuf>,
    /// Reduction route for --seed (default grs or egrs by seed type).
    #[arg(long, requires = "seed")]
    route: Option<Route>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    alpha: Option<u32>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Random cases per field and suite.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Field orders, comma separated.
    #[arg(long, value_delimiter = ',')]
    fields: Option<Vec<u32>>,
    #[arg(long, hide = true)]
    inject_fault: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Exit 1: a check ran and failed. Exit 2: the request itself is invalid.
enum Failure {
    Verification(anyhow::Error),
    Invalid(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        match e.downcast_ref::<Error>() {
            Some(Error::Unreachable(_) | Error::BudgetExceeded(_) | Error::QrCheckFailed(_)) => {
                Failure::Verification(e)
            }
            _ => Failure::Invalid(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::from(anyhow::Error::new(e))
    }
}

type CmdResult = Result<(), Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(anyhow!(msg.into()))
}

fn emit(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

impl FamilyArgs {
    fn params(&self, variant: Variant) -> Result<FamilyParams, Failure> {
        let family = self.family.ok_or_else(|| invalid("--family is required"))?;
        let need = |x: Option<u32>, name: &str| {
            x.ok_or_else(|| invalid(format!("--{name} is required for {family}")))
        };
        let params = match family {
            Family::EvenCosets | Family::OddCosets => {
                let r = match (self.r, self.q) {
                    (Some(r), _) => r,
                    (None, Some(q)) => {
                        isqrt(q).ok_or_else(|| invalid(format!("q = {q} is not a square")))?
                    }
                    (None, None) => {
                        return Err(invalid(format!("--r or --q is required for {family}")))
                    }
                };
                if let (Some(q), Some(r)) = (self.q, self.r) {
                    if r.checked_mul(r) != Some(q) {
                        return Err(invalid(format!("--q {q} does not equal r^2 for --r {r}")));
                    }
                }
                let (m, t) = (need(self.m, "m")?, need(self.t, "t")?);
                let p = if family == Family::EvenCosets {
                    FamilyParams::even_cosets(r, m, t, variant)
                } else {
                    FamilyParams::odd_cosets(r, m, t, variant)
                };
                match &self.mu {
                    Some(mu) => p.with_mu(mu.clone()),
                    None => p,
                }
            }
            Family::Additive => {
                let (p, s) = match (self.p, self.s, self.q) {
                    (Some(p), Some(s), _) => (p, s),
                    (_, _, Some(q)) => match prime_power(q) {
                        Some((p, m)) if m % 2 == 0 => (p, m / 2),
                        _ => {
                            return Err(invalid(format!("q = {q} is not an even power of a prime")))
                        }
                    },
                    _ => return Err(invalid("--p and --s (or --q) are required for additive")),
                };
                FamilyParams::additive(p, s, need(self.e, "e")?, variant)
            }
            Family::TwistedPair => {
                let p = FamilyParams::twisted_pair(need(self.q, "q")?, need(self.t, "t")?);
                match self.omega {
                    Some(w) => p.with_omega(Elem(w)),
                    None => p,
                }
            }
        };
        Ok(params)
    }
}

fn isqrt(q: u32) -> Option<u32> {
    let r = (q as f64).sqrt().round() as u32;
    (r * r == q).then_some(r)
}

fn construct(args: &ConstructArgs, budget: &OracleBudget) -> CmdResult {
    if let Some(kind) = args.ternary {
        let f = Field::with_order(3)?;
        let v: Vec<Elem> = match &args.v {
            Some(v) => v.iter().map(|&x| Elem(x)).collect(),
            None => vec![Elem::ONE; kind.multipliers()],
        };
        let code = ternary_codes(&f, kind, &v)?;
        let report = Report::for_code(&code, budget);
        let ok = report.oracle_agrees && report.mds == Some(true);
        let doc = json!({
            "schema": SCHEMA,
            "ternary": kind,
            "code": GeneratorJson::from_code(&code),
            "report": report,
        });
        emit(args.output.as_deref(), &to_json(&doc)?)?;
        return verdict(ok, "ternary code failed verification");
    }

    let (k, l) = match (args.k, args.l) {
        (Some(k), Some(l)) => (k, l),
        _ => return Err(invalid("--k and --l are required")),
    };
    if l > k {
        return Err(invalid(format!("l = {l} exceeds k = {k}")));
    }
    let choices = Choices {
        alpha: args.alpha.map(Elem),
        b: args.b.map(Elem),
    };

    let (seed, route, family) = if let Some(path) = &args.seed {
        let spec = read_grs(path)?;
        let route = args.route.unwrap_or(if spec.extended() {
            Route::Egrs
        } else {
            Route::Grs
        });
        let seed = SeedCode::new(spec)?;
        if !route.targets(seed.m()).contains(&(k, l)) {
            return Err(invalid(format!(
                "(k, l) = ({k}, {l}) is outside the {route} range for m = {}",
                seed.m()
            )));
        }
        (seed, route, None)
    } else {
        let variant = args.family.variant.unwrap_or(Variant::I);
        let params = args.family.params(variant)?;
        let adv = params.advertised()?;
        if !adv.targets().contains(&(k, l)) {
            return Err(invalid(format!(
                "(k, l) = ({k}, {l}) is outside the advertised range k <= {} of {} ({})",
                adv.k_max, params.family, params.variant
            )));
        }
        let fs = build(&params)?;
        let route = fs.route();
        (fs.seed, route, Some(params))
    };

    let plan = ReductionPlan::new(&seed, route, k, l, choices)?;
    let spec = plan.apply(&seed)?;
    let report = Report::for_grs(&spec, budget);
    let ok = report.hull_dim == l && report.oracle_agrees && report.mds == Some(true);
    let doc = json!({
        "schema": SCHEMA,
        "family": family,
        "route": route,
        "target": { "k": k, "l": l },
        "plan": {
            "alpha": plan.alpha,
            "b": plan.b,
            "s": plan.s,
            "pi": plan.pi.coeffs(),
        },
        "seed": {
            "code": seed.spec(),
            "certificate": seed.certificate().to_json(),
            "classification": seed.classification(),
        },
        "code": spec,
        "report": report,
    });
    emit(args.output.as_deref(), &to_json(&doc)?)?;
    let why = match report.mds {
        None => "MDS status exceeds the oracle budget".to_string(),
        Some(false) => "code is not MDS".to_string(),
        Some(true) => format!("hull dimension {} instead of {l}", report.hull_dim),
    };
    verdict(ok, &why)
}

fn verdict(ok: bool, why: &str) -> CmdResult {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification(anyhow!(why.to_string())))
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Invalid)?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// Accepts bare GRS JSON or an envelope with a `code` member.
fn code_value(v: Value) -> Value {
    match v {
        Value::Object(mut map) if map.contains_key("code") && !map.contains_key("a") => {
            map.remove("code").unwrap()
        }
        other => other,
    }
}

fn parse_code(v: Value) -> Result<CodeJson, Failure> {
    let is_matrix = v.get("generator").is_some();
    let parsed = if is_matrix {
        serde_json::from_value(v).map(CodeJson::Matrix)
    } else {
        serde_json::from_value(v).map(CodeJson::Grs)
    };
    parsed.map_err(|e| invalid(format!("malformed code: {e}")))
}

fn read_grs(path: &Path) -> Result<GrsSpec, Failure> {
    match parse_code(code_value(read_json(path)?))? {
        CodeJson::Grs(spec) => Ok(spec),
        CodeJson::Matrix(_) => Err(invalid("a seed must be given as GRS parameters")),
    }
}

fn verify(input: &Path, output: Option<&Path>, budget: &OracleBudget) -> CmdResult {
    let doc = read_json(input)?;
    let recorded: Option<Report> = doc
        .get("report")
        .cloned()
        .and_then(|r| serde_json::from_value(r).ok());
    let code = parse_code(code_value(doc))?;
    let report = code.report(budget)?;
    let out = json!({ "schema": SCHEMA, "code": code, "report": report });
    emit(output, &to_json(&out)?)?;
    if !report.oracle_agrees {
        return verdict(false, "hull formulas disagree");
    }
    if matches!(code, CodeJson::Grs(_)) && report.mds == Some(false) {
        return verdict(false, "GRS code is not MDS");
    }
    match recorded {
        Some(r) if r != report => verdict(false, "recorded report differs from the recomputed one"),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
struct Row {
    family: String,
    variant: String,
    q: u32,
    n: usize,
    k: usize,
    l: usize,
    classification: String,
    mds_verified: bool,
    hull_verified: bool,
}

fn enumerate(args: &EnumerateArgs, budget: &OracleBudget) -> CmdResult {
    let mut rows: Vec<Row> = Vec::new();
    let mut problems: Vec<String> = Vec::new();
    match args.family.family {
        None => {
            if args.family.q != Some(3) {
                return Err(invalid("--family is required unless --q 3"));
            }
            let f = Field::with_order(3)?;
            for kind in TernaryKind::ALL {
                let code = ternary_codes(&f, kind, &vec![Elem::ONE; kind.multipliers()])?;
                let r = Report::for_code(&code, budget);
                rows.push(Row {
                    family: "ternary".into(),
                    variant: kind.to_string(),
                    q: 3,
                    n: r.length,
                    k: r.dimension,
                    l: r.hull_dim,
                    classification: r.classification.as_str().into(),
                    mds_verified: r.mds == Some(true),
                    hull_verified: r.oracle_agrees,
                });
            }
        }
        Some(family) => {
            let variants: Vec<Variant> = match args.family.variant {
                Some(v) => vec![v],
                None => family.variants().to_vec(),
            };
            // Validate every requested range before constructing anything.
            let mut jobs = Vec::new();
            let mut rejected = Vec::new();
            for v in variants {
                let params = args.family.params(v)?;
                match params.advertised() {
                    Ok(adv) => jobs.push((params, adv)),
                    Err(e) => rejected.push(format!("{family} ({v}): {e}")),
                }
            }
            if jobs.is_empty() {
                return Err(invalid(rejected.join("; ")));
            }
            for r in &rejected {
                eprintln!("skipped: {r}");
            }
            for (params, adv) in jobs {
                let targets = adv.targets();
                if targets.is_empty() {
                    continue;
                }
                let fs = match build(&params) {
                    Ok(fs) => fs,
                    Err(e) => {
                        problems.push(format!("{family} ({}): {e}", params.variant));
                        continue;
                    }
                };
                let q = fs.seed.field().q();
                let results: Vec<Result<Row, String>> = targets
                    .par_iter()
                    .map(|&(k, l)| {
                        let spec =
                            ReductionPlan::new(&fs.seed, fs.route(), k, l, Choices::default())
                                .and_then(|p| p.apply(&fs.seed))
                                .map_err(|e| {
                                    format!("{family} ({}) k={k} l={l}: {e}", params.variant)
                                })?;
                        let r = Report::for_grs(&spec, budget);
                        Ok(Row {
                            family: family.to_string(),
                            variant: params.variant.to_string(),
                            q,
                            n: r.length,
                            k,
                            l,
                            classification: r.classification.as_str().into(),
                            mds_verified: r.mds == Some(true),
                            hull_verified: r.hull_dim == l && r.oracle_agrees,
                        })
                    })
                    .collect();
                for res in results {
                    match res {
                        Ok(row) if row.mds_verified && row.hull_verified => rows.push(row),
                        Ok(row) => problems.push(format!(
                            "{family} ({}) k={} l={}: mds {}, hull {}",
                            row.variant, row.k, row.l, row.mds_verified, row.hull_verified
                        )),
                        Err(e) => problems.push(e),
                    }
                }
            }
        }
    }
    rows.sort_by(|a, b| {
        (a.n, a.k, a.l, &a.variant, &a.family).cmp(&(b.n, b.k, b.l, &b.variant, &b.family))
    });
    let text = match args.format {
        Format::Json => to_json(&json!({ "schema": SCHEMA, "rows": rows }))?,
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(Vec::new());
            w.write_record([
                "family",
                "variant",
                "q",
                "n",
                "k",
                "l",
                "classification",
                "mds_verified",
                "hull_verified",
            ])
            .map_err(anyhow::Error::from)?;
            for row in &rows {
                w.serialize(row).map_err(anyhow::Error::from)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)
                .map_err(anyhow::Error::from)?
        }
    };
    emit(args.output.as_deref(), &text)?;
    if problems.is_empty() {
        Ok(())
    } else {
        for p in &problems {
            eprintln!("not achieved: {p}");
        }
        Err(Failure::Verification(anyhow!(
            "{} advertised cells were not achieved",
            problems.len()
        )))
    }
}

fn census(output: Option<&Path>) -> CmdResult {
    let c = ternary_4_2_census();
    emit(output, &to_json(&json!({ "schema": SCHEMA, "census": c }))?)?;
    verdict(
        !c.hull_dims.contains_key(&1),
        "an MDS [4, 2, 3] ternary code with hull dimension 1 was found",
    )
}

fn run_selftest(args: &SelftestArgs) -> CmdResult {
    let mut opts = SelftestOptions {
        seed: args.seed,
        trials: args.trials,
        inject_fault: args.inject_fault,
        ..SelftestOptions::default()
    };
    if let Some(fields) = &args.fields {
        opts.fields = fields.clone();
    }
    let report = selftest::run(&opts)?;
    emit(
        args.output.as_deref(),
        &to_json(&json!({ "schema": SCHEMA, "selftest": report }))?,
    )?;
    for s in report.suites.iter().filter(|s| !s.passed()) {
        for f in &s.failures {
            eprintln!("{}: {f}", s.name);
        }
    }
    verdict(report.passed(), "self-test failures")
}

fn run(cli: Cli) -> CmdResult {
    let budget = OracleBudget::new(cli.budget.max_codewords, cli.budget.max_minor_k)?;
    match &cli.command {
        Command::Construct(a) => construct(a, &budget),
        Command::Verify { input, output } => verify(input, output.as_deref(), &budget),
        Command::Enumerate(a) => enumerate(a, &budget),
        Command::Census { output } => census(output.as_deref()),
        Command::Selftest(a) => run_selftest(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(e)) => {
            eprintln!("verification failed: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("invalid input: {e:#}");
            ExitCode::from(2)
        }
    }
}
