//! Command-line front end: argument parsing, reports, cache and the
//! named checks. The binary only calls [`main`].

pub mod cache;
pub mod checks;
pub mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{CommandFactory, Parser, Subcommand};

use crate::cochain::{chain_boundary, pair, parse_catalog, parse_chain};
use crate::cohomology::{default_truncations, DEFAULT_MARGIN};
use crate::deformation::{classify, integrate, CoefficientPolicy, Integration, IntegrationOptions, PrimitiveSource};
use crate::error::Error;
use crate::exact::Rational;
use cache::Cache;
use checks::{closed_form_dim, error_report, Context, Settings, CHECK_IDS};
pub use report::{Format, Report, Status};

#[derive(Debug, Parser)]
#[command(name = "l1deform", version, about = "Exact cohomology and formal deformations of L1")]
pub struct Cli {
    /// Truncation N of the dual chain complex.
    #[arg(short = 'N', long = "truncation", global = true, default_value_t = checks::DEFAULT_TRUNCATION)]
    pub truncation: i64,
    /// Deformation order K.
    #[arg(short = 'K', long = "order", global = true, default_value_t = checks::DEFAULT_ORDER)]
    pub order: usize,
    /// Largest index of evaluation windows.
    #[arg(long, global = true, default_value_t = checks::DEFAULT_WINDOW)]
    pub window: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Cache directory; defaults to $L1DEFORM_CACHE_DIR, then the user data dir.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for randomized choices.
    #[arg(long, global = true, default_value_t = checks::DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimensions of H^q_(k)(L1; L1).
    Cohomology {
        #[arg(long = "q")]
        q: usize,
        /// `k` or `k1..k2`.
        #[arg(long)]
        weight: WeightRange,
        /// Increasing truncations; default 2k+4, 2k+6, 2k+8.
        #[arg(long, value_delimiter = ',')]
        truncations: Option<Vec<i64>>,
    },
    /// Runs named checks.
    Verify {
        ids: Vec<String>,
        #[arg(long, conflicts_with = "ids")]
        all: bool,
    },
    /// Integrates from alpha_1 = c2 dmu2 + c3 dmu3 + c4 dmu4.
    Integrate {
        #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
        alpha1: Vec<Rational>,
        /// Carry the free coefficients as unknowns.
        #[arg(long)]
        generic: bool,
    },
    /// Both homogeneous branches and the final determinants.
    Classify,
    /// Pairs a catalog cochain with a cycle.
    Pair {
        #[arg(long)]
        cochain: String,
        #[arg(long)]
        cycle: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightRange(pub i64, pub i64);

impl FromStr for WeightRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let p = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("bad weight `{x}`: {e}"));
        match s.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (p(a)?, p(b.trim_start_matches('='))?);
                if a > b {
                    return Err(format!("empty range {s}"));
                }
                Ok(WeightRange(a, b))
            }
            None => p(s).map(|k| WeightRange(k, k)),
        }
    }
}

/// Rendered output and exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

fn usage_error(msg: impl std::fmt::Display) -> Output {
    let usage = Cli::command().render_usage();
    Output { stdout: String::new(), stderr: format!("error: {msg}\n\n{usage}\n\nchecks: {}\n", CHECK_IDS.join(", ")), code: 2 }
}

fn is_usage(e: &Error) -> bool {
    matches!(e, Error::Parse(_) | Error::UnknownCatalog(_) | Error::InvalidParameter(_) | Error::Arity { .. } | Error::GradingMismatch(_))
}

fn finish(reports: Vec<Report>, format: Format) -> Output {
    let code = report::overall(&reports).exit_code();
    Output { stdout: report::render(&reports, format), stderr: String::new(), code }
}

impl Cli {
    fn settings(&self) -> Settings {
        Settings { truncation: self.truncation, order: self.order, window: self.window, seed: self.seed }
    }

    fn context(&self) -> (Context, String) {
        let mut warn = String::new();
        let cache = if self.no_cache {
            None
        } else {
            cache::resolve_dir(self.cache_dir.as_deref()).and_then(|d| match Cache::open(&d) {
                Ok(c) => Some(c),
                Err(e) => {
                    warn = format!("warning: cache disabled ({}): {e}\n", d.display());
                    None
                }
            })
        };
        (Context::new(self.settings()).with_cache(cache), warn)
    }

    pub fn execute(&self) -> Output {
        let (ctx, warn) = self.context();
        let mut out = match &self.command {
            Command::Verify { ids, all } => {
                let ids: Vec<String> = if *all { CHECK_IDS.iter().map(|s| s.to_string()).collect() } else { ids.clone() };
                if ids.is_empty() {
                    return usage_error("no check given");
                }
                match checks::run_checks(&ids, &ctx) {
                    Ok(reports) => finish(reports, self.format),
                    Err(e) => usage_error(e),
                }
            }
            Command::Cohomology { q, weight, truncations } => match cohomology(&ctx, *q, *weight, truncations.as_deref()) {
                Ok(r) => finish(vec![r], self.format),
                Err(e) => usage_error(e),
            },
            Command::Integrate { alpha1, generic } => run_or_usage(integrate_cmd(&ctx, alpha1, *generic), self.format),
            Command::Classify => run_or_usage(classify_cmd(&ctx), self.format),
            Command::Pair { cochain, cycle } => run_or_usage(pair_cmd(cochain, cycle), self.format),
        };
        out.stderr.insert_str(0, &warn);
        out
    }
}

fn run_or_usage(r: Result<Report, Error>, format: Format) -> Output {
    match r {
        Ok(r) => finish(vec![r], format),
        Err(e) => usage_error(e),
    }
}

fn cohomology(ctx: &Context, q: usize, w: WeightRange, truncations: Option<&[i64]>) -> Result<Report, Error> {
    if !(1..=3).contains(&q) || w.0 < 0 || w.1 > 20 {
        return Err(Error::InvalidParameter(format!("need 1 <= q <= 3 and weights within 0..=20, got q={q}, {}..{}", w.0, w.1)));
    }
    let mut r = Report::new("cohomology").param("q", q).param("weight", format!("{}..{}", w.0, w.1)).param("margin", DEFAULT_MARGIN);
    if let Some(t) = truncations {
        r = r.param("truncations", t.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
    }
    let mut unsettled = Vec::new();
    for k in w.0..=w.1 {
        let ts = truncations.map_or_else(|| default_truncations(k), <[i64]>::to_vec);
        let rep = match ctx.cohomology(q, k, &ts) {
            Ok(rep) => rep,
            Err(e @ Error::Truncation(_)) => {
                unsettled.push(e.to_string());
                continue;
            }
            Err(e) => return Err(e),
        };
        for (n, d) in &rep.dims {
            r.item(format!("H^{q}_({k}) at N={n}"), "", d);
        }
        match rep.value {
            Some(v) => r.item(format!("H^{q}_({k})"), closed_form_dim(q, k), v),
            None => unsettled.push(format!("k={k} not stabilized")),
        }
        if let Some(cc) = &rep.cross_check {
            r.item(format!("H^{q}_({k}) cross-check at N={}", cc.truncation), rep.dims.last().map_or(0, |d| d.1), cc.dim);
        }
    }
    let r = r.finish();
    Ok(if unsettled.is_empty() { r } else { r.inconclusive(unsettled.join("; ")) })
}

fn source(s: &PrimitiveSource) -> String {
    match s {
        PrimitiveSource::ClosedForm(l) => format!("closed form {l}"),
        PrimitiveSource::Windowed(n) => format!("solved on index sums <= {n}"),
    }
}

fn integrate_cmd(ctx: &Context, alpha1: &[Rational], generic: bool) -> Result<Report, Error> {
    let [c2, c3, c4] = alpha1 else {
        return Err(Error::InvalidParameter(format!("--alpha1 takes three coefficients, got {}", alpha1.len())));
    };
    let s = &ctx.settings;
    let mut opts = IntegrationOptions::new(s.truncation);
    if generic {
        opts.policy = CoefficientPolicy::Generic;
    }
    let base = Report::new("integrate").param("alpha1", format!("{c2},{c3},{c4}")).param("K", s.order).param("N", s.truncation).param("generic", generic);
    let res = match integrate([c2.clone(), c3.clone(), c4.clone()], s.order, &opts) {
        Ok(res) => res,
        Err(e) if is_usage(&e) => return Err(e),
        Err(e) => return Ok(error_report(base, &e)),
    };
    let mut r = base;
    for st in res.steps() {
        r.item(format!("alpha_{} weight {} [{}]", st.order, st.weight, st.monomial), "", source(&st.source));
    }
    match &res {
        Integration::Complete { deformation, .. } => r.item("reached order", s.order, deformation.order()),
        Integration::Obstructed { report, .. } => {
            let pairing = match &report.certificate {
                crate::cohomology::ClassCertificate::NonzeroViaCycle { pairing, .. } => pairing.to_string(),
                _ => "-".into(),
            };
            r.item("obstruction", "none", format!("order {}, weight {}, pairing {pairing}", report.order, report.weight));
            r.item("certificate re-verifies", true, report.verify().is_ok());
        }
        Integration::Constraint { constraints, .. } => {
            for c in constraints {
                r.item(format!("constraint at order {}, weight {}", c.order, c.weight), "", format!("{} = 0", c.polynomial));
            }
        }
    }
    Ok(r.finish())
}

fn classify_cmd(ctx: &Context) -> Result<Report, Error> {
    let s = &ctx.settings;
    let base = Report::new("classify").param("K", s.order).param("N", s.truncation);
    let c = match classify(s.order, s.truncation) {
        Ok(c) => c,
        Err(e) if is_usage(&e) => return Err(e),
        Err(e) => return Ok(error_report(base, &e)),
    };
    let mut r = base;
    for k in &c.branch_a.constraints {
        r.item(format!("branch A constraint at order {}, weight {}", k.order, k.weight), "", format!("{} = 0", k.polynomial));
    }
    r.item("branch A roots", "[-1/5, 0]", format!("[{}]", c.branch_a.roots.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")));
    for e in &c.branch_a.extensions {
        r.item(format!("branch A x = {} reaches order", e.x), s.order, e.reached);
    }
    for k in c.branch_b.x_constraints.iter().chain(&c.branch_b.y_constraints) {
        r.item(format!("branch B constraint at order {}, weight {}", k.order, k.weight), "", format!("{} = 0", k.polynomial));
    }
    r.item("branch B x", "119/845", &c.branch_b.x);
    r.item("branch B y^2", "432/2197", &c.branch_b.y_squared);
    r.item("branch B reaches order", s.order, c.branch_b.reached);
    for d in &c.determinants {
        r.item(format!("determinant at x = {}, y^2 = {}", d.x, d.y_squared), "", &d.determinant);
        r.item(format!("determinant at x = {}, y^2 = {} nonzero", d.x, d.y_squared), true, d.nonzero());
    }
    Ok(r.finish())
}

fn pair_cmd(cochain: &str, cycle: &str) -> Result<Report, Error> {
    let c = parse_catalog(cochain)?;
    let z = parse_chain(cycle)?;
    let mut r = Report::new("pair").param("cochain", cochain).param("cycle", cycle);
    r.item("boundary of cycle", "0", if chain_boundary(&z)?.is_zero() { "0" } else { "nonzero" });
    r.item(format!("<{}, {cycle}>", c.label()), "", pair(&c, &z)?);
    Ok(r.finish())
}

/// Parses the process arguments, runs, prints and returns the exit code.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(j) = cli.jobs {
        if j == 0 {
            let o = usage_error("--jobs must be positive");
            eprint!("{}", o.stderr);
            return ExitCode::from(o.code);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let out = cli.execute();
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Output {
        let mut v = vec!["l1deform", "--no-cache"];
        v.extend_from_slice(args);
        Cli::try_parse_from(v).unwrap().execute()
    }

    #[test]
    fn weight_ranges() {
        assert_eq!("3".parse::<WeightRange>().unwrap(), WeightRange(3, 3));
        assert_eq!("2..5".parse::<WeightRange>().unwrap(), WeightRange(2, 5));
        assert_eq!("2..=5".parse::<WeightRange>().unwrap(), WeightRange(2, 5));
        assert!("5..2".parse::<WeightRange>().is_err());
        assert!("x".parse::<WeightRange>().is_err());
    }

    #[test]
    fn unknown_check_is_usage() {
        let o = run(&["verify", "lemma9.9"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("Usage"));
    }

    #[test]
    fn pair_command() {
        let o = run(&["--format", "tsv", "pair", "--cochain", "alpha1:3", "--cycle", "a2"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("\t-12\t"), "{}", o.stdout);
        assert_eq!(run(&["pair", "--cochain", "nosuch", "--cycle", "a2"]).code, 2);
    }

    #[test]
    fn cohomology_command() {
        let o = run(&["--format", "json", "cohomology", "--q", "2", "--weight", "2..3"]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        let o = run(&["cohomology", "--q", "2", "--weight", "3", "--truncations", "10,12"]);
        assert_eq!(o.code, 2);
    }

    #[test]
    fn integrate_command() {
        let o = run(&["-K", "3", "-N", "28", "integrate", "--alpha1", "0,0,1"]);
        assert_eq!(o.code, 1);
        assert!(o.stdout.contains("order 2, weight 8"), "{}", o.stdout);
        assert_eq!(run(&["integrate", "--alpha1", "0,1"]).code, 2);
    }
}
