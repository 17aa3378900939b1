//! `cyclodiv`: command-line surface over the divisor-property toolkit.
//!
//! Every subcommand prints human-readable text by default, a versioned JSON
//! document under `--json`, and (for prime-scan reports) CSV under `--csv`.
//! Exit codes are scriptable: 0 success, 2 parse/usage error, 3 precondition
//! violation, 4 inconclusive within budget, 5 internal invariant breach.

mod parse;

use std::fmt;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cyclodiv_core::cyclotomic::{
    classify_cyclotomic_product, cyclotomic, cyclotomic_substitution_identity,
    product_of_cyclotomics_equals, Classification,
};
use cyclodiv_core::galois::{root_implication_divides, root_order_profile_seeded, split_density};
use cyclodiv_core::numtheory::{primes_up_to, FactorBudget};
use cyclodiv_core::verifier::{
    find_failing_prime, n2_analyze, n2_sufficient_family, radical_property_check, scan,
    DivisibilityReport, N2Status, N2Witness, DEFAULT_FAILURE_SEARCH_LIMIT,
};
use cyclodiv_core::{zsigmondy, Error, ErrorKind, IntPoly};

const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;
const EXIT_INVARIANT: u8 = 5;

#[derive(Parser)]
#[command(
    name = "cyclodiv",
    version,
    about = "Exact tools around the divisor property f(p) | f(p^p)",
    after_help = "Exit codes: 0 ok, 2 parse error, 3 precondition, 4 inconclusive, 5 invariant breach."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print a versioned JSON document instead of human text.
    #[arg(long, global = true)]
    json: bool,

    /// Polynomial as comma-separated coefficients, ascending degree
    /// (alternative to the expression argument).
    #[arg(long, global = true, value_name = "C0,C1,...", allow_hyphen_values = true)]
    coeffs: Option<String>,

    /// Seed for randomized internal search; reported results never depend
    /// on it.
    #[arg(long, global = true, default_value_t = cyclodiv_core::DEFAULT_SEED)]
    seed: u64,

    /// Worker threads for parallel scans (0 keeps the library default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Also write the JSON document to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the d-th cyclotomic polynomial.
    Cyclotomic { d: u64 },

    /// Decide membership in the family x^e0 * prod Phi_d^e.
    Classify { poly: Option<String> },

    /// Check f(p) | f(p^p) at every prime in [from, to].
    Verify {
        poly: Option<String>,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Emit one CSV row per prime: prime, passed, detail.
        #[arg(long)]
        csv: bool,
    },

    /// Bracket the threshold past which the property holds, scanning [2, limit].
    MinN {
        poly: Option<String>,
        #[arg(long)]
        limit: u64,
        /// Emit one CSV row per prime: prime, passed, detail.
        #[arg(long)]
        csv: bool,
    },

    /// Search for the smallest prime at which the property fails.
    FindCounterexample {
        poly: Option<String>,
        #[arg(long, default_value_t = DEFAULT_FAILURE_SEARCH_LIMIT)]
        limit: u64,
    },

    /// Primitive prime divisors of Phi_d(b), with the exception taxonomy.
    Zsigmondy { b: u64, d: u64 },

    /// The primitive-divisor analysis over the whole grid 2..=b-max, 1..=d-max.
    ZsigmondyScan {
        #[arg(long)]
        b_max: u64,
        #[arg(long)]
        d_max: u64,
    },

    /// Fraction of primes up to a limit where f splits into distinct linear factors.
    SplitDensity {
        poly: Option<String>,
        #[arg(long)]
        limit: u64,
    },

    /// Multiplicative orders of the roots of f at each completely-split prime.
    RootOrders {
        poly: Option<String>,
        #[arg(long)]
        limit: u64,
    },

    /// Does every root of h force a root of g (equivalently h | g)?  Decided
    /// exactly and probed at split primes of h.
    RootImplication {
        g: String,
        h: String,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },

    /// Build the certified family Phi_1 * prod Phi_p over distinct primes and
    /// verify it from p = 2.
    N2Family {
        /// Distinct primes, comma separated; empty for the bare Phi_1 family.
        #[arg(long, default_value = "", value_name = "P1,P2,...")]
        primes: String,
        #[arg(long, default_value_t = 500)]
        check_limit: u64,
    },

    /// Full analysis of whether the property can hold at every prime from 2 on.
    N2Analyze {
        poly: Option<String>,
        #[arg(long, default_value_t = DEFAULT_FAILURE_SEARCH_LIMIT)]
        limit: u64,
    },

    /// Check rad(f(n)) | f(n^rad(n)) for all n up to a limit (nonnegative
    /// coefficients).
    RadicalCheck {
        poly: Option<String>,
        #[arg(long)]
        n_limit: u64,
    },

    /// Verify a cyclotomic law by exact expansion over a parameter range.
    IdentityCheck {
        #[arg(long, value_enum)]
        law: Law,
        /// Largest index d for the substitution law.
        #[arg(long)]
        d_max: Option<u64>,
        /// Primes p for the substitution law, comma separated.
        #[arg(long, value_name = "P1,P2,...")]
        primes: Option<String>,
        /// Largest m for the product law (x^m - 1 = prod over d | m).
        #[arg(long)]
        m_max: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Law {
    /// Phi_d(x^p) = Phi_{pd}(x) (p | d) or Phi_{pd}(x) * Phi_d(x) (p not | d).
    Substitution,
    /// x^m - 1 = prod_{d | m} Phi_d(x).
    Product,
}

enum Failure {
    Parse(String),
    Lib(Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Lib(e) => match e.kind() {
                ErrorKind::Precondition => EXIT_PRECONDITION,
                ErrorKind::Invariant => EXIT_INVARIANT,
            },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(m) => write!(f, "{m}"),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Report {
    json: Value,
    human: String,
    csv: Option<String>,
    exit: u8,
}

impl Report {
    fn ok(json: Value, human: String) -> Self {
        Report {
            json,
            human,
            csv: None,
            exit: 0,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // A second build_global in the same process is an error we can
        // ignore: the pool is already sized.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match run(&cli) {
        Ok(report) => {
            if let Some(path) = &cli.out {
                let doc = render_json(&report.json);
                if let Err(e) = fs::write(path, doc) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_PRECONDITION);
                }
            }
            if cli.json {
                print!("{}", render_json(&report.json));
            } else if let Some(csv) = &report.csv {
                print!("{csv}");
            } else {
                print!("{}", report.human);
            }
            ExitCode::from(report.exit)
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report is serializable");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Cyclotomic { d } => cmd_cyclotomic(*d),
        Command::Classify { poly } => cmd_classify(&resolve_poly(cli, poly)?),
        Command::Verify {
            poly,
            from,
            to,
            csv,
        } => cmd_scan(
            cli,
            &resolve_poly(cli, poly)?,
            *from,
            *to,
            *csv,
            "cyclodiv/verify/1",
        ),
        Command::MinN { poly, limit, csv } => cmd_scan(
            cli,
            &resolve_poly(cli, poly)?,
            2,
            *limit,
            *csv,
            "cyclodiv/min-n/1",
        ),
        Command::FindCounterexample { poly, limit } => {
            cmd_find_counterexample(&resolve_poly(cli, poly)?, *limit)
        }
        Command::Zsigmondy { b, d } => cmd_zsigmondy(cli, *b, *d),
        Command::ZsigmondyScan { b_max, d_max } => cmd_zsigmondy_scan(cli, *b_max, *d_max),
        Command::SplitDensity { poly, limit } => {
            cmd_split_density(&resolve_poly(cli, poly)?, *limit)
        }
        Command::RootOrders { poly, limit } => {
            cmd_root_orders(cli, &resolve_poly(cli, poly)?, *limit)
        }
        Command::RootImplication { g, h, budget } => {
            reject_coeffs(cli, "root-implication")?;
            let g = parse_expr(g)?;
            let h = parse_expr(h)?;
            cmd_root_implication(&g, &h, *budget)
        }
        Command::N2Family {
            primes,
            check_limit,
        } => cmd_n2_family(&parse_u64_list(primes)?, *check_limit),
        Command::N2Analyze { poly, limit } => cmd_n2_analyze(&resolve_poly(cli, poly)?, *limit),
        Command::RadicalCheck { poly, n_limit } => {
            cmd_radical_check(&resolve_poly(cli, poly)?, *n_limit)
        }
        Command::IdentityCheck {
            law,
            d_max,
            primes,
            m_max,
        } => cmd_identity_check(*law, *d_max, primes.as_deref(), *m_max),
    }
}

fn parse_expr(text: &str) -> Result<IntPoly, Failure> {
    parse::parse_poly(text).map_err(|e| Failure::Parse(e.to_string()))
}

fn resolve_poly(cli: &Cli, positional: &Option<String>) -> Result<IntPoly, Failure> {
    match (positional, &cli.coeffs) {
        (Some(_), Some(_)) => Err(Failure::Parse(
            "give either a polynomial expression or --coeffs, not both".into(),
        )),
        (Some(text), None) => parse_expr(text),
        (None, Some(list)) => {
            parse::parse_coeff_list(list).map_err(|e| Failure::Parse(e.to_string()))
        }
        (None, None) => Err(Failure::Parse(
            "missing polynomial: pass an expression argument or --coeffs".into(),
        )),
    }
}

fn reject_coeffs(cli: &Cli, command: &str) -> Result<(), Failure> {
    if cli.coeffs.is_some() {
        return Err(Failure::Parse(format!(
            "--coeffs is not supported by {command}; pass expressions"
        )));
    }
    Ok(())
}

fn parse_u64_list(text: &str) -> Result<Vec<u64>, Failure> {
    let mut out = Vec::new();
    for piece in text.split(',') {
        let trimmed = piece.trim();
        if trimmed.is_empty() {
            continue;
        }
        match trimmed.parse::<u64>() {
            Ok(v) => out.push(v),
            Err(_) => {
                return Err(Failure::Parse(format!("invalid integer '{trimmed}'")));
            }
        }
    }
    Ok(out)
}

fn poly_json(f: &IntPoly) -> Value {
    json!({ "display": f.to_string(), "coeffs": f.coeff_strings() })
}

fn factors_json(factors: &[(u64, u32)]) -> Value {
    Value::Array(factors.iter().map(|&(d, e)| json!([d, e])).collect())
}

/// `x^e0 * Phi_1 * Phi_6^2` style rendering; `1` for the empty product.
fn render_family(e0: u32, factors: &[(u64, u32)]) -> String {
    let mut parts = Vec::new();
    match e0 {
        0 => {}
        1 => parts.push("x".to_string()),
        _ => parts.push(format!("x^{e0}")),
    }
    for &(d, e) in factors {
        parts.push(if e == 1 {
            format!("Phi_{d}")
        } else {
            format!("Phi_{d}^{e}")
        });
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" * ")
    }
}

fn cmd_cyclotomic(d: u64) -> Result<Report, Failure> {
    let f = cyclotomic(d)?;
    let degree = f.degree().expect("cyclotomics are nonzero") as u64;
    let json = json!({
        "schema": "cyclodiv/cyclotomic/1",
        "d": d,
        "degree": degree,
        "poly": poly_json(&f),
    });
    Ok(Report::ok(json, format!("Phi_{d}(x) = {f}\n")))
}

fn cmd_classify(f: &IntPoly) -> Result<Report, Failure> {
    match classify_cyclotomic_product(f)? {
        Classification::InFamily(cert) => {
            let json = json!({
                "schema": "cyclodiv/classify/1",
                "poly": poly_json(f),
                "in_family": true,
                "e0": cert.e0(),
                "factors": factors_json(cert.factors()),
                "degree": cert.degree(),
            });
            let human = format!(
                "in family: {}\n",
                render_family(cert.e0(), cert.factors())
            );
            Ok(Report::ok(json, human))
        }
        Classification::NotInFamily(diag) => {
            let json = json!({
                "schema": "cyclodiv/classify/1",
                "poly": poly_json(f),
                "in_family": false,
                "e0": diag.e0,
                "partial": factors_json(&diag.partial),
                "residual": poly_json(&diag.residual),
            });
            let mut human = String::from("not in the cyclotomic-product family\n");
            let peeled = render_family(diag.e0, &diag.partial);
            if peeled != "1" {
                let _ = writeln!(human, "  peeled: {peeled}");
            }
            let _ = writeln!(human, "  residual: {}", diag.residual);
            Ok(Report::ok(json, human))
        }
    }
}

fn scan_json(schema: &str, report: &DivisibilityReport) -> Value {
    json!({
        "schema": schema,
        "poly": poly_json(&report.poly),
        "from": report.lo,
        "to": report.hi,
        "failures": report.failures,
        "passes": report.passes,
        "candidate_n": report.candidate_n,
        "theory_n": report.theory_n,
        "empirical": report.empirical,
        "consistent": report.consistent,
    })
}

fn scan_human(report: &DivisibilityReport) -> String {
    let mut human = format!("f = {}\n", report.poly);
    let _ = writeln!(
        human,
        "primes in [{}, {}]: {} pass, {} fail",
        report.lo,
        report.hi,
        report.passes,
        report.failures.len()
    );
    if !report.failures.is_empty() {
        let list = report
            .failures
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(human, "failures: {list}");
    }
    let _ = writeln!(human, "candidate threshold: {}", report.candidate_n);
    match report.theory_n {
        Some(n) => {
            let _ = writeln!(human, "structural threshold: {n}");
        }
        None => {
            let _ = writeln!(
                human,
                "structural threshold: none (not a cyclotomic product; evidence is empirical)"
            );
        }
    }
    if !report.consistent {
        let _ = writeln!(
            human,
            "INVARIANT BREACH: a failure at or past the structural threshold"
        );
    }
    human
}

fn scan_csv(report: &DivisibilityReport) -> String {
    let mut csv = String::from("prime,passed,detail\n");
    for p in primes_up_to(report.hi) {
        if p < report.lo {
            continue;
        }
        if report.failures.binary_search(&p).is_ok() {
            let _ = writeln!(csv, "{p},false,divisibility fails");
        } else {
            let _ = writeln!(csv, "{p},true,");
        }
    }
    csv
}

fn cmd_scan(
    cli: &Cli,
    f: &IntPoly,
    lo: u64,
    hi: u64,
    csv: bool,
    schema: &str,
) -> Result<Report, Failure> {
    if csv && cli.json {
        return Err(Failure::Parse("choose --json or --csv, not both".into()));
    }
    let report = scan(f, lo, hi)?;
    Ok(Report {
        json: scan_json(schema, &report),
        human: scan_human(&report),
        csv: csv.then(|| scan_csv(&report)),
        exit: if report.consistent { 0 } else { EXIT_INVARIANT },
    })
}

fn cmd_find_counterexample(f: &IntPoly, limit: u64) -> Result<Report, Failure> {
    let found = find_failing_prime(f, limit)?;
    let json = json!({
        "schema": "cyclodiv/find-counterexample/1",
        "poly": poly_json(f),
        "limit": limit,
        "found": found.is_some(),
        "prime": found,
    });
    let (human, exit) = match found {
        Some(p) => (format!("first failing prime: {p}\n"), 0),
        None => (
            format!("no failing prime up to {limit} (inconclusive)\n"),
            EXIT_INCONCLUSIVE,
        ),
    };
    Ok(Report {
        json,
        human,
        csv: None,
        exit,
    })
}

fn zsigmondy_cell_json(r: &zsigmondy::PrimitiveDivisorReport) -> Value {
    json!({
        "b": r.b,
        "d": r.d,
        "value": r.value.to_string(),
        "exception": r.exception.map(|t| t.code()),
        "nonprimitive_part": r.nonprimitive_part.to_string(),
        "primitive_cofactor": r.primitive_cofactor.to_string(),
        "has_primitive_prime": r.has_primitive_prime(),
        "smallest_primitive_prime": r.smallest_primitive_prime.as_ref().map(|q| q.to_string()),
        "cofactor_unfactored": r.cofactor_unfactored,
    })
}

fn cmd_zsigmondy(cli: &Cli, b: u64, d: u64) -> Result<Report, Failure> {
    let budget = FactorBudget::with_seed(cli.seed);
    let r = zsigmondy::analyze(b, d, &budget)?;
    let mut cell = zsigmondy_cell_json(&r);
    cell["schema"] = json!("cyclodiv/zsigmondy/1");
    let mut human = format!("Phi_{d}({b}) = {}\n", r.value);
    match r.exception {
        Some(tag) => {
            let _ = writeln!(
                human,
                "exception {}: no primitive prime divisor",
                tag.code()
            );
        }
        None => {
            let _ = writeln!(
                human,
                "primitive cofactor {} (nonprimitive part {})",
                r.primitive_cofactor, r.nonprimitive_part
            );
            match (&r.smallest_primitive_prime, r.cofactor_unfactored) {
                (Some(q), _) => {
                    let _ = writeln!(human, "smallest primitive prime: {q}");
                }
                (None, true) => {
                    let _ = writeln!(
                        human,
                        "smallest primitive prime unknown: cofactor resisted the factoring budget"
                    );
                }
                (None, false) => {}
            }
        }
    }
    Ok(Report::ok(cell, human))
}

fn cmd_zsigmondy_scan(cli: &Cli, b_max: u64, d_max: u64) -> Result<Report, Failure> {
    let budget = FactorBudget::with_seed(cli.seed);
    let rows = zsigmondy::scan(b_max, d_max, &budget)?;
    let exceptions: Vec<&zsigmondy::PrimitiveDivisorReport> =
        rows.iter().filter(|r| r.exception.is_some()).collect();
    let json = json!({
        "schema": "cyclodiv/zsigmondy-scan/1",
        "b_max": b_max,
        "d_max": d_max,
        "cells": rows.iter().map(zsigmondy_cell_json).collect::<Vec<_>>(),
    });
    let mut human = format!(
        "{} cells (2 <= b <= {b_max}, 1 <= d <= {d_max}); {} exception(s)\n",
        rows.len(),
        exceptions.len()
    );
    for r in exceptions {
        let _ = writeln!(
            human,
            "  (b = {}, d = {}): {}",
            r.b,
            r.d,
            r.exception.expect("filtered").code()
        );
    }
    Ok(Report::ok(json, human))
}

fn cmd_split_density(f: &IntPoly, limit: u64) -> Result<Report, Failure> {
    let r = split_density(f, limit)?;
    let (num, den) = r.density_rational();
    let decimal = format!("{:.6}", r.density());
    let json = json!({
        "schema": "cyclodiv/split-density/1",
        "poly": poly_json(f),
        "prime_limit": limit,
        "primes_tested": r.primes_tested,
        "split_count": r.split_count,
        "density": { "numerator": num, "denominator": den, "decimal": decimal },
    });
    let human = format!(
        "f = {f}\nsplits completely at {} of {} primes <= {limit} (density {decimal})\n",
        r.split_count, r.primes_tested
    );
    Ok(Report::ok(json, human))
}

fn cmd_root_orders(cli: &Cli, f: &IntPoly, limit: u64) -> Result<Report, Failure> {
    let profile = root_order_profile_seeded(f, limit, cli.seed)?;
    let json = json!({
        "schema": "cyclodiv/root-orders/1",
        "poly": poly_json(f),
        "prime_limit": limit,
        "max_order_seen": profile.max_order_seen,
        "records": profile
            .records
            .iter()
            .map(|rec| json!({ "q": rec.q, "orders": rec.orders }))
            .collect::<Vec<_>>(),
    });
    let mut human = format!(
        "f = {f}\n{} completely-split prime(s) <= {limit}; max root order {}\n",
        profile.records.len(),
        profile.max_order_seen
    );
    for rec in profile.records.iter().take(10) {
        let orders = rec
            .orders
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(human, "  q = {}: orders [{orders}]", rec.q);
    }
    if profile.records.len() > 10 {
        let _ = writeln!(human, "  ... {} more", profile.records.len() - 10);
    }
    Ok(Report::ok(json, human))
}

fn cmd_root_implication(g: &IntPoly, h: &IntPoly, budget: u64) -> Result<Report, Failure> {
    let r = root_implication_divides(g, h, budget)?;
    let probe_json = |p: &cyclodiv_core::galois::ImplicationProbe| {
        json!({ "q": p.q, "held": p.held, "probative": p.probative })
    };
    let json = json!({
        "schema": "cyclodiv/root-implication/1",
        "g": poly_json(g),
        "h": poly_json(h),
        "remainder": poly_json(&r.remainder),
        "remainder_bound": r.remainder_bound.to_string(),
        "divides": r.divides,
        "probes": r.probes.iter().map(probe_json).collect::<Vec<_>>(),
        "qualifying": r.qualifying.as_ref().map(probe_json),
        "conclusive": r.conclusive,
        "consistent": r.consistent,
    });
    let mut human = format!("h | g exactly: {}\n", r.divides);
    if !r.divides {
        let _ = writeln!(
            human,
            "remainder g mod h: {} (coefficient bound {})",
            r.remainder, r.remainder_bound
        );
    }
    match &r.qualifying {
        Some(q) => {
            let _ = writeln!(
                human,
                "qualifying split prime {}: implication {} — matches exact division",
                q.q,
                if q.held { "holds" } else { "fails" }
            );
        }
        None => {
            let _ = writeln!(
                human,
                "no qualifying split prime within budget {budget} (inconclusive)"
            );
        }
    }
    if !r.consistent {
        let _ = writeln!(
            human,
            "INVARIANT BREACH: qualifying implication disagrees with exact division"
        );
    }
    let exit = if !r.consistent {
        EXIT_INVARIANT
    } else if !r.conclusive {
        EXIT_INCONCLUSIVE
    } else {
        0
    };
    Ok(Report {
        json,
        human,
        csv: None,
        exit,
    })
}

fn cmd_n2_family(primes: &[u64], check_limit: u64) -> Result<Report, Failure> {
    let cert = n2_sufficient_family(primes)?;
    let f = cert.expand()?;
    let report = scan(&f, 2, check_limit)?;
    let json = json!({
        "schema": "cyclodiv/n2-family/1",
        "primes": primes,
        "factors": factors_json(cert.factors()),
        "poly": poly_json(&f),
        "check_limit": check_limit,
        "failures": report.failures,
        "passes": report.passes,
    });
    let mut human = format!(
        "family {} = {f}\n",
        render_family(cert.e0(), cert.factors())
    );
    let _ = writeln!(
        human,
        "primes in [2, {check_limit}]: {} pass, {} fail",
        report.passes,
        report.failures.len()
    );
    let exit = if report.failures.is_empty() {
        0
    } else {
        let _ = writeln!(
            human,
            "INVARIANT BREACH: a certified family member failed"
        );
        EXIT_INVARIANT
    };
    Ok(Report {
        json,
        human,
        csv: None,
        exit,
    })
}

fn witness_json(w: &N2Witness) -> Value {
    match *w {
        N2Witness::MissingDivisor { d, p, required } => {
            json!({ "kind": "missing_divisor", "d": d, "p": p, "required": required })
        }
        N2Witness::MissingPowerOfThree { d, p } => {
            json!({ "kind": "missing_power_of_three", "d": d, "p": p })
        }
        N2Witness::FailingPrime { p } => json!({ "kind": "failing_prime", "p": p }),
    }
}

fn cmd_n2_analyze(f: &IntPoly, limit: u64) -> Result<Report, Failure> {
    let v = n2_analyze(f, limit)?;
    let json = json!({
        "schema": "cyclodiv/n2-analyze/1",
        "poly": poly_json(f),
        "search_limit": limit,
        "status": v.status.code(),
        "witness": v.witness.as_ref().map(witness_json),
        "notes": v.notes,
    });
    let mut human = format!("f = {f}\nstatus: {}\n", v.status.code());
    if let Some(w) = &v.witness {
        let line = match *w {
            N2Witness::MissingDivisor { d, p, required } => format!(
                "witness: index {d} without {required} = {d}/{p}; fails at p = {p}"
            ),
            N2Witness::MissingPowerOfThree { d, p } => format!(
                "witness: index {d} with no power-of-3 index; fails at p = {p}"
            ),
            N2Witness::FailingPrime { p } => format!("witness: failing prime {p}"),
        };
        let _ = writeln!(human, "{line}");
    }
    for note in &v.notes {
        let _ = writeln!(human, "  note: {note}");
    }
    let exit = if v.status == N2Status::EmpiricallyConsistentUnknown {
        EXIT_INCONCLUSIVE
    } else {
        0
    };
    Ok(Report {
        json,
        human,
        csv: None,
        exit,
    })
}

fn cmd_radical_check(f: &IntPoly, n_limit: u64) -> Result<Report, Failure> {
    let r = radical_property_check(f, n_limit)?;
    let json = json!({
        "schema": "cyclodiv/radical-check/1",
        "poly": poly_json(f),
        "n_limit": n_limit,
        "checked": r.checked,
        "violation": r.violation.as_ref().map(|v| json!({
            "n": v.n,
            "value": v.value.to_string(),
            "radical": v.radical.as_ref().map(|x| x.to_string()),
            "blocking_part": v.blocking_part.to_string(),
            "rhs": v.rhs.to_string(),
        })),
    });
    let human = match &r.violation {
        None => format!("no violation for n <= {n_limit} ({} values checked)\n", r.checked),
        Some(v) => {
            let rad = v
                .radical
                .as_ref()
                .map_or("rad(f(n))".to_string(), |x| x.to_string());
            format!(
                "violation at n = {}: f({}) = {} has radical {} which does not divide f({}^rad({})) = {}\n",
                v.n, v.n, v.value, rad, v.n, v.n, v.rhs
            )
        }
    };
    Ok(Report::ok(json, human))
}

fn cmd_identity_check(
    law: Law,
    d_max: Option<u64>,
    primes: Option<&str>,
    m_max: Option<u64>,
) -> Result<Report, Failure> {
    match law {
        Law::Substitution => {
            if m_max.is_some() {
                return Err(Failure::Parse(
                    "--m-max applies only to --law product".into(),
                ));
            }
            let d_max = d_max.ok_or_else(|| {
                Failure::Parse("--law substitution requires --d-max".into())
            })?;
            let primes = parse_u64_list(primes.ok_or_else(|| {
                Failure::Parse("--law substitution requires --primes".into())
            })?)?;
            if primes.is_empty() {
                return Err(Failure::Parse("--primes must name at least one prime".into()));
            }
            let mut checked = 0u64;
            let mut failures: Vec<(u64, u64)> = Vec::new();
            for d in 1..=d_max {
                for &p in &primes {
                    let r = cyclotomic_substitution_identity(d, p)?;
                    checked += 1;
                    if !r.verified {
                        failures.push((d, p));
                    }
                }
            }
            let json = json!({
                "schema": "cyclodiv/identity-check/1",
                "law": "substitution",
                "d_max": d_max,
                "primes": primes,
                "checked": checked,
                "failures": failures.iter().map(|&(d, p)| json!([d, p])).collect::<Vec<_>>(),
                "all_verified": failures.is_empty(),
            });
            let prime_list = primes
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(", ");
            let mut human = format!(
                "substitution law: {}/{checked} identities verified (d <= {d_max}, p in [{prime_list}])\n",
                checked - failures.len() as u64
            );
            let exit = if failures.is_empty() {
                0
            } else {
                let _ = writeln!(human, "INVARIANT BREACH: {} identities failed", failures.len());
                EXIT_INVARIANT
            };
            Ok(Report {
                json,
                human,
                csv: None,
                exit,
            })
        }
        Law::Product => {
            if d_max.is_some() || primes.is_some() {
                return Err(Failure::Parse(
                    "--d-max/--primes apply only to --law substitution".into(),
                ));
            }
            let m_max = m_max.ok_or_else(|| {
                Failure::Parse("--law product requires --m-max".into())
            })?;
            let mut failures: Vec<u64> = Vec::new();
            for m in 1..=m_max {
                if !product_of_cyclotomics_equals(m)? {
                    failures.push(m);
                }
            }
            let json = json!({
                "schema": "cyclodiv/identity-check/1",
                "law": "product",
                "m_max": m_max,
                "checked": m_max,
                "failures": failures,
                "all_verified": failures.is_empty(),
            });
            let mut human = format!(
                "product law: {}/{m_max} identities verified (x^m - 1 against its cyclotomic product)\n",
                m_max - failures.len() as u64
            );
            let exit = if failures.is_empty() {
                0
            } else {
                let _ = writeln!(human, "INVARIANT BREACH: {} identities failed", failures.len());
                EXIT_INVARIANT
            };
            Ok(Report {
                json,
                human,
                csv: None,
                exit,
            })
        }
    }
}
