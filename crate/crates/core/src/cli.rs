//! The `qshuffle` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::QuasiShuffle;
use crate::axioms::{run_suite, AxiomReport, Backend, SuiteConfig};
use crate::error::{Error, Result};
use crate::linear::parse_terms;
use crate::prelie::{
    brace_poly, display_poly, flavored, magnus, magnus_study, star, Driver, Flavor, FreeMagma, MagmaDisplay, MagnusConfig,
    MagnusStudy, Monomial, Poly,
};
use crate::process::{integer_path, sample_path, write_csv, Grid, JumpPattern, PathKind};
use crate::words::{LetterMonoid, Word, WordAlgebra, WordSeries};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qshuffle", version, about = "Quasi-shuffle identities, expansions and Magnus experiments")]
pub struct Cli {
    /// Worker threads (default: all cores). Outputs do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the identity catalog on a backend.
    Axioms(AxiomsArgs),
    /// Print a product or expansion on words.
    Expand(ExpandArgs),
    /// Magnus truncation error against the exact exponential.
    Magnus(MagnusArgs),
    /// Dump a sample path as CSV.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

#[derive(Debug, Args)]
pub struct AxiomsArgs {
    /// words, words-regular, jump, continuous, mixed or rb
    #[arg(long)]
    pub backend: String,
    /// `all`, a group name, or check ids, comma separated.
    #[arg(long, default_value = "all")]
    pub catalog: String,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Grid sizes for asymptotic checks.
    #[arg(long, value_delimiter = ',')]
    pub refine: Option<Vec<usize>>,
    /// Seeds per grid size in refinement studies (default: min(trials, 50)).
    #[arg(long)]
    pub refine_seeds: Option<usize>,
    /// Tolerance for floating-point checks.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Prec,
    Succ,
    Bracket,
    Product,
    Star,
    Brace,
    Magnus,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long, value_enum)]
    pub op: Op,
    #[arg(long)]
    pub lhs: Option<String>,
    #[arg(long)]
    pub rhs: Option<String>,
    /// Magnus input: `X` for the universal formula, or a word series.
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long, default_value = "ito")]
    pub flavor: String,
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    /// integer, shuffle, truncated:N or units:N
    #[arg(long, default_value = "integer")]
    pub monoid: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DriverArg {
    Integer,
    Brownian,
    Zero,
}

#[derive(Debug, Args)]
pub struct MagnusArgs {
    #[arg(long, default_value = "ito")]
    pub flavor: String,
    #[arg(long, value_enum, default_value_t = DriverArg::Integer)]
    pub driver: DriverArg,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// Grid size K.
    #[arg(long, default_value_t = 8)]
    pub steps: usize,
    /// Highest truncation order N.
    #[arg(long, default_value_t = 6)]
    pub order: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.1)]
    pub scale: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a log-scale plot here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// brownian, fv, jump, mixed or integer
    #[arg(long, default_value = "brownian")]
    pub kind: String,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 256)]
    pub steps: usize,
    #[arg(long, default_value_t = 1.0)]
    pub horizon: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub path_id: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.threads {
        Some(0) => Err(Error::Config("--threads must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(&cli.command))),
        None => dispatch(&cli.command),
    };
    match result {
        Ok(out) => match emit(&out, stdout) {
            Ok(()) => out.code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

struct Output {
    text: String,
    path: Option<PathBuf>,
    extra: Vec<(PathBuf, String)>,
    code: i32,
}

impl Output {
    fn new(text: String, path: Option<PathBuf>, code: i32) -> Self {
        Output { text, path, extra: Vec::new(), code }
    }
}

fn emit(out: &Output, stdout: &mut dyn Write) -> Result<()> {
    match &out.path {
        Some(p) => std::fs::write(p, &out.text)?,
        None => stdout.write_all(out.text.as_bytes())?,
    }
    for (p, body) in &out.extra {
        std::fs::write(p, body)?;
    }
    Ok(())
}

fn dispatch(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Axioms(a) => cmd_axioms(a),
        Command::Expand(a) => cmd_expand(a),
        Command::Magnus(a) => cmd_magnus(a),
        Command::Simulate(a) => cmd_simulate(a),
    }
}

fn cmd_axioms(a: &AxiomsArgs) -> Result<Output> {
    let backend: Backend = a.backend.parse()?;
    if a.trials == 0 {
        return Err(Error::Config("--trials must be positive".into()));
    }
    if let Some(ks) = &a.refine {
        if ks.is_empty() || ks.contains(&0) {
            return Err(Error::Config("--refine needs positive grid sizes".into()));
        }
    }
    let cfg = SuiteConfig {
        backend,
        catalog: a.catalog.clone(),
        seed: a.seed,
        trials: a.trials,
        tol: a.tol,
        refine: a.refine.clone(),
        refine_seeds: a.refine_seeds,
    };
    let report = run_suite(&cfg)?;
    let text = match a.format {
        Format::Json => report.to_json()? + "\n",
        Format::Csv => report_csv(&report)?,
        Format::Text => report_text(&report),
        Format::Svg => return Err(Error::Config("axioms supports json, csv or text".into())),
    };
    Ok(Output::new(text, a.out.clone(), if report.pass { EXIT_OK } else { EXIT_FAIL }))
}

fn report_csv(r: &AxiomReport) -> Result<String> {
    let mut out = r.to_csv()?;
    for c in &r.checks {
        if let Some(rows) = &c.refinement {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "k", "median"])?;
            for row in rows {
                w.write_record([c.id.clone(), row.k.to_string(), format!("{:.16e}", row.median)])?;
            }
            out.push('\n');
            out.push_str(&String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Io(e.to_string()))?);
        }
    }
    Ok(out)
}

fn report_text(r: &AxiomReport) -> String {
    let mut s = format!("backend {} seed {} trials {}\n", r.backend, r.seed, r.trials);
    for c in &r.checks {
        let status = match (&c.skipped, c.pass) {
            (Some(_), _) => "SKIP",
            (None, true) => "PASS",
            (None, false) => "FAIL",
        };
        let _ = write!(s, "{status} {:<13} {:<32} {:.3e}", c.id, c.class, c.max_residual);
        if let Some(why) = &c.skipped {
            let _ = write!(s, "  ({why})");
        }
        if let Some(t) = c.failing_trial {
            let _ = write!(s, "  first failure at trial {t}");
        }
        s.push('\n');
        for row in c.refinement.iter().flatten() {
            let _ = writeln!(s, "    K={:<7} median {:.6e}", row.k, row.median);
        }
    }
    let _ = writeln!(s, "{}", if r.pass { "all checks pass" } else { "some checks failed" });
    s
}

pub fn parse_series(s: &str) -> Result<WordSeries> {
    parse_terms(s, |k| k.parse::<Word>())
}

/// Parses a polynomial: monomials are `(w₁) ⊙ (w₂) ⊙ …`, or `1` for the unit.
/// Input without parentheses is read as a single element.
pub fn parse_poly(s: &str) -> Result<Poly<Word>> {
    if !s.contains('(') {
        return Ok(crate::prelie::poly_linear(&parse_series(s)?));
    }
    parse_terms(s, |k| {
        if k == "1" {
            return Ok(Monomial::unit());
        }
        let factors = k
            .split('\u{2299}')
            .map(|f| {
                let f = f.trim();
                f.strip_prefix('(')
                    .and_then(|f| f.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("factor `{f}` must be parenthesized")))?
                    .parse::<Word>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::new(factors))
    })
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Config(format!("--{flag} is required for this operation")))
}

fn cmd_expand(a: &ExpandArgs) -> Result<Output> {
    let flavor: Flavor = a.flavor.parse()?;
    let monoid = a.monoid.trim();
    let text = if monoid == "integer" {
        expand_on(&WordAlgebra::integer(), a, flavor)?
    } else if monoid == "shuffle" {
        expand_on(&WordAlgebra::shuffle(), a, flavor)?
    } else if let Some(cap) = monoid.strip_prefix("truncated:") {
        let cap: u32 = cap.parse().map_err(|_| Error::Config(format!("bad truncation cap `{cap}`")))?;
        if cap == 0 {
            return Err(Error::Config("truncation cap must be positive".into()));
        }
        expand_on(&WordAlgebra::truncated(cap), a, flavor)?
    } else if let Some(n) = monoid.strip_prefix("units:") {
        let n: u32 = n.parse().map_err(|_| Error::Config(format!("bad matrix size `{n}`")))?;
        if !(2..=64).contains(&n) {
            return Err(Error::Config("matrix size must be between 2 and 64".into()));
        }
        expand_on(&WordAlgebra::upper_units(n), a, flavor)?
    } else {
        return Err(Error::Config(format!("unknown monoid `{monoid}` (expected integer, shuffle, truncated:N or units:N)")));
    };
    Ok(Output::new(text + "\n", a.out.clone(), EXIT_OK))
}

fn expand_on<M: LetterMonoid + Sync>(b: &WordAlgebra<M>, a: &ExpandArgs, flavor: Flavor) -> Result<String> {
    let binary = || -> Result<(WordSeries, WordSeries)> { Ok((parse_series(required(&a.lhs, "lhs")?)?, parse_series(required(&a.rhs, "rhs")?)?)) };
    Ok(match a.op {
        Op::Prec => {
            let (x, y) = binary()?;
            b.prec(&x, &y)?.to_string()
        }
        Op::Succ => {
            let (x, y) = binary()?;
            b.succ(&x, &y)?.to_string()
        }
        Op::Bracket => {
            let (x, y) = binary()?;
            b.bracket(&x, &y)?.to_string()
        }
        Op::Product => {
            let (x, y) = binary()?;
            b.product(&x, &y)?.to_string()
        }
        Op::Star => {
            let p = flavored(b, flavor);
            let (x, y) = (parse_poly(required(&a.lhs, "lhs")?)?, parse_poly(required(&a.rhs, "rhs")?)?);
            display_poly(&star(&p, &x, &y)?)
        }
        Op::Brace => {
            let p = flavored(b, flavor);
            let slots = parse_poly(required(&a.lhs, "lhs")?)?;
            let x = parse_series(required(&a.rhs, "rhs")?)?;
            brace_poly(&p, &slots, &x)?.to_string()
        }
        Op::Magnus => {
            if a.order == 0 {
                return Err(Error::Config("--order must be positive".into()));
            }
            let input = required(&a.input, "input")?.trim();
            if input == "X" {
                let m = FreeMagma;
                let omega = magnus(&m, &m.generator(), a.order)?.total(&m)?;
                MagmaDisplay { series: &omega, name: "X", op: flavor.symbol() }.to_string()
            } else {
                let p = flavored(b, flavor);
                let x = parse_series(input)?;
                magnus(&p, &x, a.order)?.total(&p)?.to_string()
            }
        }
    })
}

fn cmd_magnus(a: &MagnusArgs) -> Result<Output> {
    let flavor: Flavor = a.flavor.parse()?;
    if !(a.scale.is_finite() && a.scale >= 0.0) || a.steps == 0 {
        return Err(Error::Config("--scale must be finite and non-negative, --steps positive".into()));
    }
    let cfg = MagnusConfig {
        flavor,
        driver: match a.driver {
            DriverArg::Integer => Driver::Integer,
            DriverArg::Brownian => Driver::Brownian,
            DriverArg::Zero => Driver::Zero,
        },
        dim: a.dim,
        steps: a.steps,
        max_order: a.order,
        trials: a.trials,
        seed: a.seed,
        scale: a.scale,
    };
    let study = magnus_study(&cfg)?;
    let ok = study.strictly_decreasing() || study.rows.iter().all(|r| r.mean == 0.0);
    let text = match a.format {
        Format::Csv => study.to_csv()?,
        Format::Json => magnus_json(&study)? + "\n",
        Format::Svg => magnus_svg(&study),
        Format::Text => return Err(Error::Config("magnus supports csv, json or svg".into())),
    };
    let mut out = Output::new(text, a.out.clone(), if ok { EXIT_OK } else { EXIT_FAIL });
    if let Some(p) = &a.svg {
        out.extra.push((p.clone(), magnus_svg(&study)));
    }
    Ok(out)
}

fn magnus_json(s: &MagnusStudy) -> Result<String> {
    let rows: Vec<_> = s.rows.iter().map(|r| serde_json::json!({"order": r.order, "mean_err": r.mean, "std": r.std})).collect();
    let mut v = serde_json::json!({ "rows": rows, "strictly_decreasing": s.strictly_decreasing() });
    if let Some((k, k4)) = s.floor {
        v["floor"] = serde_json::json!({ "k": k, "k4": k4 });
    }
    serde_json::to_string_pretty(&v).map_err(|e| Error::Io(e.to_string()))
}

/// Mean error against order on a log axis, as a standalone SVG document.
pub fn magnus_svg(s: &MagnusStudy) -> String {
    let (w, h, pad) = (480.0, 320.0, 48.0);
    let positive: Vec<f64> = s.rows.iter().map(|r| r.mean).filter(|v| *v > 0.0).collect();
    let lo = positive.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = positive.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if positive.is_empty() { (-1.0, 0.0) } else { (lo.log10().floor(), hi.log10().ceil().max(lo.log10().floor() + 1.0)) };
    let n = s.rows.len().max(2) as f64;
    let x = |order: usize| pad + (order as f64 - 1.0) / (n - 1.0) * (w - 2.0 * pad);
    let y = |v: f64| pad + (hi - v.log10()) / (hi - lo) * (h - 2.0 * pad);
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <line x1=\"{pad}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{pad}\" y1=\"{pad}\" x2=\"{pad}\" y2=\"{b}\" stroke=\"black\"/>\n",
        b = h - pad,
        r = w - pad
    );
    for e in (lo as i64)..=(hi as i64) {
        let yy = y(10f64.powi(e as i32));
        let _ = writeln!(svg, "<text x=\"{}\" y=\"{:.2}\" font-size=\"10\" text-anchor=\"end\">1e{e}</text>", pad - 4.0, yy + 3.0);
    }
    for r in &s.rows {
        let _ = writeln!(svg, "<text x=\"{:.2}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>", x(r.order), h - pad + 14.0, r.order);
    }
    let pts: Vec<String> = s.rows.iter().filter(|r| r.mean > 0.0).map(|r| format!("{:.2},{:.2}", x(r.order), y(r.mean))).collect();
    if !pts.is_empty() {
        let _ = writeln!(svg, "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"{}\"/>", pts.join(" "));
    }
    if let Some((_, k4)) = s.floor.filter(|(_, k4)| *k4 > 0.0) {
        let yy = y(k4);
        let _ = writeln!(svg, "<line x1=\"{pad}\" y1=\"{yy:.2}\" x2=\"{}\" y2=\"{yy:.2}\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>", w - pad);
    }
    let _ = writeln!(svg, "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">order N</text>", w / 2.0, h - 8.0);
    svg.push_str("</svg>\n");
    svg
}

fn cmd_simulate(a: &SimulateArgs) -> Result<Output> {
    if a.dim == 0 {
        return Err(Error::Config("--dim must be positive".into()));
    }
    let grid = Arc::new(Grid::uniform(a.steps, a.horizon)?);
    let path = if a.kind == "integer" {
        integer_path(&grid, a.dim, a.seed, a.path_id, 3, JumpPattern::None)?
    } else {
        sample_path(a.kind.parse::<PathKind>()?, a.dim, &grid, a.seed, a.path_id)?
    };
    let mut buf = Vec::new();
    write_csv(&path, &mut buf)?;
    Ok(Output::new(String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))?, a.out.clone(), EXIT_OK))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["qshuffle"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn prec_example() {
        let (code, out, _) = call(&["expand", "--op", "prec", "--lhs", "2 3", "--rhs", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "2 3 1 + 2 1 3 + 2 4\n");
    }

    #[test]
    fn magnus_formula() {
        let (_, out, _) = call(&["expand", "--op", "magnus", "--flavor", "strat", "--order", "1", "--input", "X"]);
        assert_eq!(out, "X\n");
        let (_, out, _) = call(&["expand", "--op", "magnus", "--flavor", "strat", "--order", "3", "--input", "X"]);
        assert_eq!(out, "X \u{2212} 1/2·X▷X + 1/4·(X▷X)▷X + 1/12·X▷(X▷X)\n");
    }

    #[test]
    fn bad_backend_is_usage_error() {
        let (code, _, err) = call(&["axioms", "--backend", "bogus"]);
        assert_eq!(code, 2);
        assert!(err.contains("unknown backend"));
        assert_eq!(call(&["frobnicate"]).0, 2);
    }

    #[test]
    fn poly_parsing() {
        let p = parse_poly("(1) ⊙ (2 3) + 1/2·1").unwrap();
        assert_eq!(display_poly(&p), "1/2·1 + (2 3) ⊙ (1)");
        assert_eq!(parse_poly("1 2").unwrap().len(), 1);
    }
}
