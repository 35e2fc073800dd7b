//! The `hecke` command line: argument parsing and output formatting over
//! `hecke-core`. No computation happens here beyond dispatch.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use hecke_core::algebra::{coset_product, element_json};
use hecke_core::catalog::{self, af_filtration_check, heisenberg_chain, AnyPair, CatalogEntry, PairFamily, DEFAULT_SUBGROUP_BUDGET};
use hecke_core::certify::{certificate_json, l1_certificate};
use hecke_core::commutator::{
    chain_condition_b, directed_test, protonormal_falsifier, quadratic_relation_test, stabilization_probe,
    ProbeReport, SubnormalChain,
};
use hecke_core::graph::{closure, closure_json, export_dot, ClosureStatus, DEFAULT_CLOSURE_BUDGET};
use hecke_core::group::{verify_coset_invariants, verify_oracle, CheckOutcome, GroupOracle, HeckePair, DEFAULT_COSET_BUDGET};
use hecke_core::rational::rational_string;
use hecke_core::{with_pair, HeckeError};
use serde::Serialize;
use serde_json::{json, Value};

pub const DEFAULT_SEED: u64 = 0xC05E7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16).map_err(|e| e.to_string()),
        None => s.parse().map_err(|e: std::num::ParseIntError| e.to_string()),
    }
}

#[derive(Debug, Parser)]
#[command(name = "hecke", version, about = "Exact Hecke-pair arithmetic, closures and norm certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Catalog pair name (see `hecke catalog`).
    #[arg(long, global = true)]
    pub pair: Option<String>,
    /// Prime parameter for quasicyclic-dihedral and sl2-localized.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Element in the pair's syntax.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub elem: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Vertex budget for closures.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_BUDGET, value_parser = clap::value_parser!(usize))]
    pub budget: usize,
    /// Left-coset budget per double coset.
    #[arg(long, global = true, default_value_t = DEFAULT_COSET_BUDGET)]
    pub coset_budget: usize,
    /// Element budget for generated subgroups.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBGROUP_BUDGET)]
    pub subgroup_budget: usize,
    #[arg(long, global = true, default_value = "0xC05E7", value_parser = parse_seed)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Treat budget exhaustion as the expected outcome (exit 0).
    #[arg(long, global = true)]
    pub expect_exhausted: bool,
    #[arg(long, global = true, default_value_t = 100)]
    pub samples: usize,
    /// Longest commutator sequence for the stabilization probe.
    #[arg(long, global = true, default_value_t = 4)]
    pub horizon: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// List the catalog pairs.
    Catalog,
    /// L, R, Δ and left-coset representatives of ΓgΓ.
    Coset,
    /// Expansion of ΓaΓ * ΓbΓ.
    Product,
    /// Co-hereditary closure of ΓgΓ.
    Closure,
    /// Closure, then the L¹ certificate and β².
    Certify,
    /// Family probes for an element.
    Classify,
    /// Oracle and double-coset invariant suites.
    Selftest,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(HeckeError),
}

impl From<HeckeError> for Failure {
    fn from(e: HeckeError) -> Self {
        Failure::Domain(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// Output text and exit code of a successful command.
struct Rendered {
    text: String,
    code: i32,
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn require<'a>(value: &'a Option<String>, flag: &str) -> Run<&'a str> {
    value.as_deref().ok_or_else(|| Failure::Usage(format!("this command needs --{flag}")))
}

fn no_dot(cli: &Cli) -> Run<()> {
    if cli.format == Format::Dot {
        return Err(Failure::Usage("--format dot is only available for closure".into()));
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(r) => Outcome { code: r.code, stdout: r.text, stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Domain(e)) => {
            let code = if e.is_budget_exhausted() {
                if cli.expect_exhausted {
                    0
                } else {
                    2
                }
            } else {
                1
            };
            let body = json_text(&json!({ "error": e.code(), "detail": e.to_string() }));
            Outcome { code, stdout: body, stderr: String::new() }
        }
    }
}

fn dispatch(cli: &Cli) -> Run<Rendered> {
    if cli.budget == 0 || cli.coset_budget == 0 || cli.subgroup_budget == 0 {
        return Err(Failure::Usage("budgets must be at least 1".into()));
    }
    match (cli.command, cli.pair.as_deref()) {
        (Command::Catalog, _) => catalog_listing(cli),
        (Command::Selftest, None) => {
            let mut all = Vec::new();
            for name in catalog::PAIR_NAMES {
                let (pair, entry) = catalog::build_with_budget(name, None, cli.coset_budget)?;
                all.push(with_pair!(&pair, p => selftest(p, &entry, cli))?);
            }
            render_selftest(cli, all)
        }
        (_, None) => Err(Failure::Usage("this command needs --pair".into())),
        (_, Some(name)) => {
            let (pair, entry) = catalog::build_with_budget(name, cli.p, cli.coset_budget)?;
            if cli.command == Command::Selftest {
                let report = with_pair!(&pair, p => selftest(p, &entry, cli))?;
                return render_selftest(cli, vec![report]);
            }
            if cli.command == Command::Classify {
                return classify(&pair, &entry, cli);
            }
            with_pair!(&pair, p => pair_command(p, &entry, cli))
        }
    }
}

fn catalog_listing(cli: &Cli) -> Run<Rendered> {
    no_dot(cli)?;
    let entries = match cli.pair.as_deref() {
        Some(name) => vec![catalog::entry(name, cli.p)?],
        None => catalog::listing(),
    };
    let text = match cli.format {
        Format::Text => {
            let mut s = String::new();
            for e in &entries {
                let tags: Vec<String> = e.tags.iter().map(|t| format!("{:?}", t.family)).collect();
                let _ = writeln!(s, "{:<22} {}", e.name, e.description);
                let _ = writeln!(s, "{:<22} elements: {}", "", e.element_syntax);
                let _ = writeln!(s, "{:<22} tags: {}; seed coset: {}", "", tags.join(", "), e.seed_coset);
            }
            s
        }
        _ => json_text(&entries),
    };
    Ok(Rendered { text, code: 0 })
}

fn pair_command<O: GroupOracle>(pair: &HeckePair<O>, entry: &CatalogEntry, cli: &Cli) -> Run<Rendered> {
    match cli.command {
        Command::Coset => coset(pair, entry, cli),
        Command::Product => product(pair, cli),
        Command::Closure => closure_cmd(pair, cli),
        Command::Certify => certify(pair, cli),
        Command::Catalog | Command::Classify | Command::Selftest => unreachable!("handled by dispatch"),
    }
}

#[derive(Serialize)]
struct CosetJson {
    pair: String,
    element: String,
    key: String,
    #[serde(rename = "L")]
    l: u64,
    #[serde(rename = "R")]
    r: u64,
    delta: String,
    left_reps: Vec<String>,
}

pub fn coset_json<O: GroupOracle>(pair: &HeckePair<O>, entry: &CatalogEntry, g: &O::Element) -> hecke_core::Result<Value> {
    let c = pair.double_coset(g)?;
    Ok(serde_json::to_value(CosetJson {
        pair: entry.name.clone(),
        element: pair.fmt(g),
        key: pair.fmt(c.key()),
        l: c.l(),
        r: c.r(),
        delta: rational_string(c.delta()),
        left_reps: c.left_reps().iter().map(|w| pair.fmt(w)).collect(),
    })
    .expect("coset JSON"))
}

fn coset<O: GroupOracle>(pair: &HeckePair<O>, entry: &CatalogEntry, cli: &Cli) -> Run<Rendered> {
    no_dot(cli)?;
    let g = pair.parse(require(&cli.elem, "elem")?)?;
    let value = coset_json(pair, entry, &g)?;
    let text = match cli.format {
        Format::Text => format!(
            "element {}\nkey {}\nL = {}  R = {}  delta = {}\nleft cosets: {}\n",
            value["element"].as_str().unwrap_or_default(),
            value["key"].as_str().unwrap_or_default(),
            value["L"],
            value["R"],
            value["delta"].as_str().unwrap_or_default(),
            value["left_reps"].as_array().map(|v| v.iter().filter_map(|x| x.as_str()).collect::<Vec<_>>().join("  ")).unwrap_or_default()
        ),
        _ => json_text(&value),
    };
    Ok(Rendered { text, code: 0 })
}

fn product<O: GroupOracle>(pair: &HeckePair<O>, cli: &Cli) -> Run<Rendered> {
    no_dot(cli)?;
    let a = pair.double_coset(&pair.parse(require(&cli.a, "a")?)?)?;
    let b = pair.double_coset(&pair.parse(require(&cli.b, "b")?)?)?;
    let f = coset_product(pair, &a, &b)?;
    let doc = element_json(pair, &f);
    let text = match cli.format {
        Format::Text => {
            let mut s = String::new();
            for t in f.terms() {
                let _ = writeln!(s, "{} * [{}]  (L={})", rational_string(&t.coeff.re), pair.fmt(t.coset.key()), t.coset.l());
            }
            s
        }
        _ => json_text(&doc),
    };
    Ok(Rendered { text, code: 0 })
}

fn exhaustion_code(cli: &Cli, status: ClosureStatus) -> i32 {
    match status {
        ClosureStatus::BudgetExhausted if !cli.expect_exhausted => 2,
        _ => 0,
    }
}

fn closure_cmd<O: GroupOracle>(pair: &HeckePair<O>, cli: &Cli) -> Run<Rendered> {
    let root = pair.double_coset(&pair.parse(require(&cli.elem, "elem")?)?)?;
    let report = closure(pair, &root, cli.budget)?;
    let text = match cli.format {
        Format::Json => json_text(&closure_json(pair, &report)),
        Format::Dot => export_dot(pair, &report),
        Format::Text => {
            let mut s = format!("status {:?}, {} vertices (budget {})\n", report.status, report.len(), report.budget);
            for v in &report.vertices {
                let _ = writeln!(s, "  level {:>3}  L={:<6} {}", report.levels[v.key()], v.l(), pair.fmt(v.key()));
            }
            s
        }
    };
    Ok(Rendered { text, code: exhaustion_code(cli, report.status) })
}

fn certify<O: GroupOracle>(pair: &HeckePair<O>, cli: &Cli) -> Run<Rendered> {
    no_dot(cli)?;
    let root = pair.double_coset(&pair.parse(require(&cli.elem, "elem")?)?)?;
    let report = closure(pair, &root, cli.budget)?;
    if !report.is_complete() {
        let body = json!({
            "error": HeckeError::NotComplete.code(),
            "detail": format!("closure exhausted its budget of {} vertices", report.budget),
        });
        return Ok(Rendered { text: json_text(&body), code: exhaustion_code(cli, report.status) });
    }
    let cert = l1_certificate(pair, &report)?;
    let doc = certificate_json(pair, &cert);
    let text = match cli.format {
        Format::Text => {
            let mut s = format!("checks: {:?}\nbeta^2 <= {}\n", doc.checks, doc.beta_squared);
            for (k, v) in &doc.bounds {
                let _ = writeln!(s, "  ||{k}||_u <= {v}");
            }
            s
        }
        _ => json_text(&doc),
    };
    Ok(Rendered { text, code: 0 })
}

#[derive(Serialize)]
struct ClassifyJson {
    pair: String,
    element: String,
    reports: Vec<Value>,
}

fn generic_probes<O: GroupOracle>(
    pair: &HeckePair<O>,
    entry: &CatalogEntry,
    cli: &Cli,
) -> hecke_core::Result<(String, Vec<Value>)> {
    let g = pair.parse(cli.elem.as_deref().unwrap_or_default())?;
    let c = pair.double_coset(&g)?;
    let mut reports: Vec<ProbeReport> = vec![
        directed_test(pair, &g)?,
        quadratic_relation_test(pair, &c)?,
        protonormal_falsifier(pair, &g, cli.samples, cli.seed)?,
        stabilization_probe(pair, &g, cli.samples, cli.horizon, cli.seed)?,
    ];
    let mut values: Vec<Value> = reports.drain(..).map(|r| serde_json::to_value(r).expect("report JSON")).collect();
    if entry.has_tag(PairFamily::LocallyFiniteFiniteGamma) {
        let af = af_filtration_check(pair, entry, &g, cli.subgroup_budget)?;
        values.push(json!({ "test": "af_filtration_check", "input": pair.fmt(&g), "verdict": format!("dimension {}", af.dimension), "report": af }));
    }
    Ok((pair.fmt(&g), values))
}

fn classify(pair: &AnyPair, entry: &CatalogEntry, cli: &Cli) -> Run<Rendered> {
    no_dot(cli)?;
    let elem = require(&cli.elem, "elem")?;
    let (element, mut reports) = with_pair!(pair, p => generic_probes(p, entry, cli))?;
    let chain_report = match pair {
        AnyPair::Heisenberg(p) => Some(chain_condition_b(p, &p.parse(elem)?, &heisenberg_chain(), cli.samples, cli.seed)),
        AnyPair::Perm(p) if entry.chain.is_some() => {
            let chain = SubnormalChain::trivial(Box::new(|g: &catalog::Perm| g.0.iter().enumerate().all(|(i, &x)| i == x as usize)));
            Some(chain_condition_b(p, &p.parse(elem)?, &chain, cli.samples, cli.seed))
        }
        _ => None,
    };
    if let Some(r) = chain_report {
        reports.push(serde_json::to_value(r).expect("report JSON"));
    }
    let doc = ClassifyJson { pair: entry.name.clone(), element, reports };
    let text = match cli.format {
        Format::Text => {
            let mut s = String::new();
            for r in &doc.reports {
                let _ = writeln!(s, "{:<24} {}", r["test"].as_str().unwrap_or_default(), r["verdict"].as_str().unwrap_or_default());
            }
            s
        }
        _ => json_text(&doc),
    };
    Ok(Rendered { text, code: 0 })
}

#[derive(Serialize)]
struct SelftestJson {
    pair: String,
    passed: bool,
    checks: Vec<CheckOutcome>,
}

fn selftest<O: GroupOracle>(pair: &HeckePair<O>, entry: &CatalogEntry, cli: &Cli) -> hecke_core::Result<SelftestJson> {
    let mut checks = verify_oracle(pair, cli.samples, cli.seed);
    checks.extend(verify_coset_invariants(pair, cli.samples, cli.seed)?);
    if entry.positive {
        let root = pair.double_coset(&pair.parse(&entry.seed_coset)?)?;
        let report = closure(pair, &root, cli.budget)?;
        let outcome = if report.is_complete() {
            l1_certificate(pair, &report).map(|_| ()).err().map(|e| e.to_string())
        } else {
            Some("seed closure exhausted its budget".to_string())
        };
        checks.push(CheckOutcome {
            name: "seed closure certifies".into(),
            passed: outcome.is_none(),
            detail: outcome.unwrap_or_else(|| format!("{} vertices", report.len())),
        });
    }
    Ok(SelftestJson { pair: entry.name.clone(), passed: checks.iter().all(|c| c.passed), checks })
}

fn render_selftest(cli: &Cli, reports: Vec<SelftestJson>) -> Run<Rendered> {
    no_dot(cli)?;
    let code = if reports.iter().all(|r| r.passed) { 0 } else { 1 };
    let text = match cli.format {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                for c in &r.checks {
                    let _ = writeln!(s, "{} {:<22} {:<36} {}", if c.passed { "ok  " } else { "FAIL" }, r.pair, c.name, c.detail);
                }
            }
            s
        }
        _ => json_text(&reports),
    };
    Ok(Rendered { text, code })
}
