//! The `khopf` command-line front end.
//!
//! Exit codes: 0 on success, 1 when an identity fails (the witness is
//! printed), 2 for usage, adequacy and other errors.

mod cache;
mod expr;
mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{KhopfError, Result};
use crate::exactpoly::{coeff_to_string, TruncPoly, TruncationContext};
use crate::peakalg::{convert, project_to_sym, realize, PeakElement};
use crate::qsymbases::{expand_in, index_text, BasisExpansion};
use crate::shapes::{Composition, Partition, PeakComposition};
use crate::shiftedsym::{
    expand_in_family, expansion_table, kcoeff_table, positivity_scan, structure_coeffs, CoeffKind, CoeffTable,
    Conjecture, IdentityReport, SymFamily,
};

pub use cache::{CacheEntry, Store, CACHE_VERSION};
pub use expr::{factor_poly, parse_expr, parse_index, Expr, Factor, Family, Skew, Value};
pub use suites::{run_suite, transcript, Suite};

#[derive(Parser, Debug)]
#[command(name = "khopf", version, about = "Exact computations with K-theoretic shifted symmetric functions and peak algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Number of variables N.
    #[arg(long, global = true, value_name = "N")]
    pub vars: Option<usize>,
    /// Degree cap D.
    #[arg(long, global = true, value_name = "D")]
    pub deg: Option<usize>,
    /// Cap on the power of beta (defaults to D).
    #[arg(long = "beta-cap", global = true, value_name = "B")]
    pub beta_cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Cache directory (default: the user cache directory).
    #[arg(long = "cache-dir", global = true, env = "KHOPF_CACHE_DIR", value_name = "PATH")]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long = "no-cache", global = true)]
    pub no_cache: bool,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "KHOPF_THREADS")]
    pub threads: Option<usize>,
    /// Seed for randomized property checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a basis element.
    Basis {
        #[arg(long)]
        family: String,
        /// Index such as `3,1`; empty for the unit.
        #[arg(long, allow_hyphen_values = true)]
        index: String,
        /// Inner shape for a skew element.
        #[arg(long)]
        skew: Option<String>,
    },
    /// Expand a product of (skew) basis elements in a family.
    Expand {
        /// Target family.
        #[arg(long)]
        family: String,
        /// Expression such as `GQ[3,2]`, `GP[2]*GP[1]` or `GQ[3,1]//[1]`.
        #[arg(long)]
        of: String,
    },
    /// Structure-constant and expansion tables.
    Coeffs {
        /// One of a, b, a_hat, b_hat, kcoeff, schur, family-change.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        bound: u32,
        /// Source family for schur and family-change tables.
        #[arg(long)]
        source: Option<String>,
        /// Target family for family-change tables.
        #[arg(long)]
        target: Option<String>,
    },
    /// Run a named identity suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        bound: u32,
    },
    /// Scan a positivity conjecture (or `all`).
    Conjecture {
        name: String,
        #[arg(long)]
        bound: u32,
    },
    /// Inspect or evict the cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum CacheAction {
    List,
    Clear,
    Path,
}

/// What a command produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn exit_code(e: &KhopfError) -> i32 {
    match e {
        KhopfError::IdentityViolation(_) => 1,
        _ => 2,
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let o = run_captured(args);
    let _ = out.write_all(o.stdout.as_bytes());
    let _ = err.write_all(o.stderr.as_bytes());
    o.code
}

/// Like [`run`], returning the output instead of writing it.
pub fn run_captured<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stderr: text, code: 2, ..Default::default() }
            } else {
                Outcome { stdout: text, code: 0, ..Default::default() }
            };
        }
    };
    execute(&cli)
}

/// Run a parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => return Outcome { stderr: format!("error: cannot start worker threads: {e}\n"), code: 2, ..Default::default() },
    };
    let mut warnings = Vec::new();
    let res = pool.install(|| dispatch(cli, &mut warnings));
    let mut stderr: String = warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    match res {
        Ok((stdout, code, extra)) => {
            stderr.push_str(&extra);
            Outcome { stdout, stderr, code }
        }
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Outcome { stdout: String::new(), stderr, code: exit_code(&e) }
        }
    }
}

impl GlobalOpts {
    fn ctx(&self, n: usize, d: usize) -> Result<TruncationContext> {
        let n = self.vars.unwrap_or(n);
        let d = self.deg.unwrap_or(d);
        match self.beta_cap {
            Some(b) => TruncationContext::with_beta_cap(n, d, b),
            None => TruncationContext::new(n, d),
        }
    }

    /// The context for a bounded job; defaults to `N = D = bound`.
    fn bound_ctx(&self, bound: u32) -> Result<TruncationContext> {
        let b = (bound as usize).max(1);
        let ctx = self.ctx(b, b)?;
        if !ctx.adequate_for(bound as usize) {
            return Err(KhopfError::Inadequate(format!("bound {bound} needs N >= {bound} and D >= {bound}, have {ctx}")));
        }
        Ok(ctx)
    }

    fn store(&self) -> Option<Store> {
        if self.no_cache {
            return None;
        }
        self.cache_dir.clone().or_else(Store::default_dir).map(Store::new)
    }
}

type Dispatched = (String, i32, String);

fn dispatch(cli: &Cli, warnings: &mut Vec<String>) -> Result<Dispatched> {
    let g = &cli.global;
    let ok = |s: String| Ok((s, 0, String::new()));
    match &cli.command {
        Command::Basis { family, index, skew } => ok(basis_cmd(g, family, index, skew.as_deref())?),
        Command::Expand { family, of } => ok(expand_cmd(g, family, of, warnings)?),
        Command::Coeffs { kind, bound, source, target } => {
            ok(coeffs_cmd(g, kind, *bound, source.as_deref(), target.as_deref(), warnings)?)
        }
        Command::Verify { suite, bound } => verify_cmd(g, *suite, *bound, warnings),
        Command::Conjecture { name, bound } => ok(conjecture_cmd(g, name, *bound)?),
        Command::Cache { action } => ok(cache_cmd(g, *action)?),
    }
}

fn with_cache<T>(
    g: &GlobalOpts,
    descriptor: &str,
    warnings: &mut Vec<String>,
    encode: impl Fn(&T) -> Result<String>,
    decode: impl Fn(&str) -> Result<T>,
    compute: impl FnOnce() -> Result<T>,
) -> Result<T> {
    match g.store() {
        Some(store) => store.get_or_compute(descriptor, warnings, encode, decode, compute),
        None => compute(),
    }
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| KhopfError::Io(std::io::Error::other(e));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| KhopfError::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn line(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn render_poly(f: &TruncPoly, format: Format) -> Result<String> {
    Ok(line(match format {
        Format::Text => f.to_text(),
        Format::Json => f.to_json(),
        Format::Csv => csv_text(
            &["monomial", "coefficient"],
            f.terms().map(|(m, c)| vec![m.to_string(), coeff_to_string(c)]),
        )?,
    }))
}

fn render_expansion<I: Ord + Clone + std::fmt::Display>(e: &BasisExpansion<I>, format: Format) -> Result<String> {
    Ok(line(match format {
        Format::Text => e.to_text(),
        Format::Json => e.to_json(),
        Format::Csv => csv_text(
            &["index", "beta_exp", "value"],
            e.coeffs.iter().flat_map(|(i, c)| {
                let idx = index_text(&i.to_string());
                c.terms().map(move |(k, v)| vec![idx.clone(), k.to_string(), coeff_to_string(v)]).collect::<Vec<_>>()
            }),
        )?,
    }))
}

fn render_peak(x: &PeakElement, format: Format) -> Result<String> {
    Ok(line(match format {
        Format::Text => x.to_text(),
        Format::Json => json!({
            "basis": x.basis().name(),
            "coeffs": x.coeffs().iter().map(|(a, c)| json!({"index": index_text(&a.to_string()), "beta": c.to_strings()})).collect::<Vec<_>>(),
        })
        .to_string(),
        Format::Csv => csv_text(
            &["index", "beta_exp", "value"],
            x.coeffs().iter().flat_map(|(a, c)| {
                let idx = index_text(&a.to_string());
                c.terms().map(move |(k, v)| vec![idx.clone(), k.to_string(), coeff_to_string(v)]).collect::<Vec<_>>()
            }),
        )?,
    }))
}

fn basis_cmd(g: &GlobalOpts, family: &str, index: &str, skew: Option<&str>) -> Result<String> {
    let fam = Family::parse(family)?;
    let parts = expr::parse_index(index)?;
    let size: u32 = parts.iter().sum();
    if let Family::Peak(b) = fam {
        if skew.is_some() {
            return Err(KhopfError::InvalidIndex("multipeak elements take no skew index".into()));
        }
        let x = PeakElement::basis_element(b, PeakComposition::new(parts)?);
        let r = realize(&x)?;
        return Ok(line(match g.format {
            Format::Text => r.to_string(),
            Format::Json => json!({
                "basis": b.name(),
                "index": index_text(&x.coeffs().keys().next().map(|a| a.to_string()).unwrap_or_default()),
                "realization": r.iter().map(|(a, c)| json!({"term": a.to_string(), "beta": c.to_strings()})).collect::<Vec<_>>(),
            })
            .to_string(),
            Format::Csv => csv_text(
                &["term", "beta_exp", "value"],
                r.iter().flat_map(|(a, c)| {
                    c.terms().map(|(k, v)| vec![a.to_string(), k.to_string(), coeff_to_string(v)]).collect::<Vec<_>>()
                }),
            )?,
        }));
    }
    let d = size as usize + 1;
    let ctx = g.ctx(d, d)?;
    let skew = match skew {
        Some(s) => Some((Skew::Single, expr::parse_index(s)?)),
        None => None,
    };
    let f = expr::factor_poly(&Factor { family: fam, index: parts, skew }, ctx)?;
    render_poly(&f, g.format)
}

fn expand_cmd(g: &GlobalOpts, family: &str, of: &str, warnings: &mut Vec<String>) -> Result<String> {
    let target = Family::parse(family)?;
    let e = parse_expr(of)?;
    let d = (e.size() + e.max_len()).max(1);
    let ctx = g.ctx(d, d)?;
    let value = e.eval(ctx)?;
    match (value, target) {
        (Value::Peak(x), Family::Peak(b)) => render_peak(&convert(&x, b), g.format),
        (Value::Peak(x), Family::Sym(t @ (SymFamily::SmallGP | SymFamily::SmallGQ))) => {
            render_expansion(&project_to_sym(&x, t)?, g.format)
        }
        (Value::Peak(_), t) => Err(KhopfError::InvalidIndex(format!(
            "multipeak expressions expand in tpeak, opeak, gp or gq, not {t}"
        ))),
        (Value::Poly(f), Family::Sym(t)) => {
            let descriptor = format!("expand|{t}|{of}|{ctx}");
            let exp = with_cache(
                g,
                &descriptor,
                warnings,
                |x: &BasisExpansion<Partition>| Ok(x.to_json()),
                BasisExpansion::<Partition>::from_json,
                || expand_in_family(&f, t),
            )?;
            render_expansion(&exp, g.format)
        }
        (Value::Poly(f), Family::Qsym(t)) => {
            let descriptor = format!("expand|{t}|{of}|{ctx}");
            let exp = with_cache(
                g,
                &descriptor,
                warnings,
                |x: &BasisExpansion<Composition>| Ok(x.to_json()),
                BasisExpansion::<Composition>::from_json,
                || expand_in(&f, t),
            )?;
            render_expansion(&exp, g.format)
        }
        (Value::Poly(_), Family::Peak(b)) => {
            Err(KhopfError::InvalidIndex(format!("{b} expansions take multipeak expressions")))
        }
    }
}

fn sym_family(s: Option<&str>, what: &str) -> Result<SymFamily> {
    s.ok_or_else(|| KhopfError::Parse(format!("this table needs --{what}")))?.parse()
}

fn render_table(t: &CoeffTable, format: Format) -> Result<String> {
    Ok(line(match format {
        Format::Text => t.to_text(),
        Format::Json => t.to_json()?,
        Format::Csv => t.to_csv()?,
    }))
}

fn coeffs_cmd(
    g: &GlobalOpts,
    kind: &str,
    bound: u32,
    source: Option<&str>,
    target: Option<&str>,
    warnings: &mut Vec<String>,
) -> Result<String> {
    let kind: CoeffKind = kind.parse()?;
    let ctx = g.bound_ctx(bound)?;
    let descriptor = format!("coeffs|{kind}|{}|{}|{bound}|{ctx}", source.unwrap_or(""), target.unwrap_or(""));
    let table = with_cache(g, &descriptor, warnings, CoeffTable::to_json, CoeffTable::from_json, || match kind {
        CoeffKind::A | CoeffKind::B | CoeffKind::AHat | CoeffKind::BHat => structure_coeffs(kind, bound),
        CoeffKind::Kcoeff => kcoeff_table(bound),
        CoeffKind::Schur => expansion_table(sym_family(source, "source")?, SymFamily::S, bound, ctx),
        CoeffKind::FamilyChange => {
            expansion_table(sym_family(source, "source")?, sym_family(target, "target")?, bound, ctx)
        }
    })?;
    render_table(&table, g.format)
}

fn verify_cmd(g: &GlobalOpts, suite: Suite, bound: u32, warnings: &mut Vec<String>) -> Result<Dispatched> {
    let ctx = g.bound_ctx(bound)?;
    let descriptor = format!("verify|{}|{bound}|seed={}|{ctx}", suite.name(), g.seed);
    let reports = with_cache(
        g,
        &descriptor,
        warnings,
        |r: &Vec<IdentityReport>| Ok(serde_json::to_string(r)?),
        |s| Ok(serde_json::from_str(s)?),
        || run_suite(suite, bound, ctx, g.seed),
    )?;
    let ok = reports.iter().all(|r| r.ok());
    let stdout = match g.format {
        Format::Text => transcript(suite, bound, ctx, &reports),
        Format::Json => line(
            json!({"suite": suite.name(), "bound": bound, "ctx": ctx, "ok": ok, "reports": reports}).to_string(),
        ),
        Format::Csv => csv_text(
            &["report", "instance"],
            reports.iter().flat_map(|r| r.details.iter().map(|d| vec![r.name.clone(), d.clone()])),
        )?,
    };
    let stderr: String = reports.iter().flat_map(|r| r.failures.iter()).map(|f| format!("witness: {f}\n")).collect();
    Ok((stdout, if ok { 0 } else { 1 }, stderr))
}

fn conjecture_cmd(g: &GlobalOpts, name: &str, bound: u32) -> Result<String> {
    g.bound_ctx(bound)?;
    let list: Vec<Conjecture> = if name == "all" { Conjecture::ALL.to_vec() } else { vec![name.parse()?] };
    let scans = list.into_iter().map(|c| positivity_scan(c, bound)).collect::<Result<Vec<_>>>()?;
    Ok(line(match g.format {
        Format::Text => {
            let mut s = String::new();
            for r in &scans {
                s.push_str(&r.summary());
                s.push('\n');
                for c in &r.counterexamples {
                    s.push_str(&format!("  counterexample: {c}\n"));
                }
            }
            s
        }
        Format::Json => {
            let v = scans
                .iter()
                .map(|r| {
                    let tables = r
                        .tables
                        .iter()
                        .map(|t| Ok(serde_json::from_str::<serde_json::Value>(&t.to_json()?)?))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(json!({
                        "conjecture": r.conjecture.name(),
                        "bound": r.bound,
                        "verdict": r.verdict,
                        "integral": r.integral,
                        "counterexamples": r.counterexamples,
                        "tables": tables,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            serde_json::Value::Array(v).to_string()
        }
        Format::Csv => csv_text(
            &["conjecture", "bound", "verdict", "coefficients", "counterexamples"],
            scans.iter().map(|r| {
                vec![
                    r.conjecture.name().to_string(),
                    r.bound.to_string(),
                    if r.verdict { "holds" } else { "fails" }.to_string(),
                    r.tables.iter().map(|t| t.entries.len()).sum::<usize>().to_string(),
                    r.counterexamples.len().to_string(),
                ]
            }),
        )?,
    }))
}

fn cache_cmd(g: &GlobalOpts, action: CacheAction) -> Result<String> {
    let dir = g.cache_dir.clone().or_else(Store::default_dir);
    let Some(dir) = dir else {
        return Err(KhopfError::Cache("no cache directory: pass --cache-dir or set KHOPF_CACHE_DIR".into()));
    };
    let store = Store::new(&dir);
    Ok(match action {
        CacheAction::Path => line(dir.display().to_string()),
        CacheAction::Clear => line(format!("removed {} entries", store.clear()?)),
        CacheAction::List => {
            let entries = store.list()?;
            match g.format {
                Format::Json => line(serde_json::to_string(
                    &entries
                        .iter()
                        .map(|e| json!({"key": e.key, "descriptor": e.descriptor, "version": e.version, "created": e.created}))
                        .collect::<Vec<_>>(),
                )?),
                Format::Csv => csv_text(
                    &["key", "descriptor", "version", "created"],
                    entries.iter().map(|e| vec![e.key.clone(), e.descriptor.clone(), e.version.clone(), e.created.to_string()]),
                )?,
                Format::Text => entries.iter().map(|e| format!("{}  {}\n", e.key, e.descriptor)).collect(),
            }
        }
    })
}
