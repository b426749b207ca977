use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use krank::mock::{
    f_family, f_family_extrapolated, trace, EisensteinFamily, MockFamily, Route, TraceWeight,
};
use krank::partitions::{count_table, CountTable, ENUMERATION_CEILING};
use krank::qfunctions::{bernoulli, crank_moment, rank_moment, MomentMethod};
use krank::rational::{to_fraction_string, ExactRational};
use krank::verify::{self, Suite, SuiteParams};
use krank::QSeries;

const EXTRAPOLATED_NOTE: &str = "extrapolated (k = 2): produced by the same recursion, not a proven case";

#[derive(Parser)]
#[command(name = "krank", version, about = "Exact q-series for k-rank moments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the mock Eisenstein series f_{k,j}.
    F(FArgs),
    /// Emit count tables, moment series or trace series.
    Table {
        #[command(subcommand)]
        kind: TableKind,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Bfile,
    Csv,
}

#[derive(Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct FArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    j: usize,
    #[arg(long, default_value_t = 30)]
    order: usize,
    /// recursionA, recursionB or logRoute.
    #[arg(long, default_value = "recursionA")]
    route: String,
    /// Permit k = 2.
    #[arg(long)]
    allow_k2: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum TableKind {
    /// N_k(m, n) over |m| <= maxm, n <= maxn.
    #[command(name = "Nk", alias = "nk")]
    Nk {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        maxm: usize,
        #[arg(long)]
        maxn: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Moment series R_{k,j}; k = 1 selects crank moments C_j.
    Moments {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
        #[arg(long, default_value_t = 30)]
        order: usize,
        /// direct, divisor-sum, combinatorial or eisenstein.
        #[arg(long)]
        method: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Trace series Tr_j(w, f_k); k = 1 selects the Eisenstein family G.
    Traces {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value_t = 30)]
        order: usize,
        /// phi or psi.
        #[arg(long, default_value = "phi")]
        method: String,
        #[arg(long)]
        allow_k2: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// all, counts, moments, routes, traces, integrality, pattern, pde,
    /// theta-ode or crank.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    k: Option<u32>,
    /// Largest index j (for the pde suite: the top w-degree).
    #[arg(long)]
    maxj: Option<usize>,
    #[arg(long)]
    maxn: Option<usize>,
    #[arg(long)]
    maxm: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    /// Corrupt one oracle value per suite to confirm failures are caught.
    #[arg(long)]
    inject_fault: bool,
    #[command(flatten)]
    output: Output,
}

/// Exit status 1 marks a failed verification, 2 a usage or configuration
/// error.
enum Failure {
    Verification(String),
    Config(String),
}

impl From<krank::Error> for Failure {
    fn from(e: krank::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::F(a) => cmd_f(a),
        Command::Table { kind } => cmd_table(kind),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(output: &Output, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn coefficient_cell(c: &ExactRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        to_fraction_string(c)
    }
}

fn series_json(object: &str, k: u32, j: usize, s: &QSeries, extra: &[(&str, Value)]) -> String {
    let mut v = json!({
        "object": object,
        "k": k,
        "j": j,
        "order": s.order(),
        "coefficients": s.coeffs().iter().map(to_fraction_string).collect::<Vec<_>>(),
    });
    for (key, val) in extra {
        v[*key] = val.clone();
    }
    let mut out = serde_json::to_string_pretty(&v).expect("serializable");
    out.push('\n');
    out
}

fn series_csv(s: &QSeries) -> String {
    let mut out = String::from("n,coefficient\n");
    for (n, c) in s.coeffs().iter().enumerate() {
        out.push_str(&format!("{n},{}\n", coefficient_cell(c)));
    }
    out
}

fn bfile(s: &QSeries) -> CliResult<String> {
    if let Some(n) = s.first_non_integral() {
        return Err(Failure::Config(format!(
            "b-file needs integer coefficients; coefficient of q^{n} is {}",
            to_fraction_string(&s[n])
        )));
    }
    let mut out = String::new();
    for (n, c) in s.coeffs().iter().enumerate() {
        out.push_str(&format!("{n} {}\n", c.numer()));
    }
    Ok(out)
}

fn check_order(order: usize) -> CliResult<()> {
    if order < 1 {
        return Err(Failure::Config("--order must be at least 1".into()));
    }
    Ok(())
}

fn family_for(k: u32, max_j: usize, order: usize, route: Route, allow_k2: bool) -> CliResult<MockFamily> {
    let max_j = max_j.max(2).div_ceil(2) * 2;
    match k {
        2 if allow_k2 => Ok(f_family_extrapolated(max_j, order, route)?),
        2 => Err(Failure::Config("k = 2 is an extrapolation; pass --allow-k2".into())),
        k if k >= 3 => Ok(f_family(k, max_j, order, route)?),
        k => Err(Failure::Config(format!("k must be at least 2, got {k}"))),
    }
}

fn cmd_f(a: FArgs) -> CliResult<()> {
    check_order(a.order)?;
    if a.j == 0 {
        return Err(Failure::Config("--j must be at least 1".into()));
    }
    let route: Route = a.route.parse()?;
    let fam = family_for(a.k, a.j, a.order, route, a.allow_k2)?;
    let series = fam.member(a.j)?.clone();
    let extrapolated = fam.is_extrapolated();
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut s = String::new();
            if extrapolated {
                s.push_str(&format!("# {EXTRAPOLATED_NOTE}\n"));
            }
            s.push_str(&format!("{series}\n"));
            s
        }
        Format::Json => {
            let mut extra = vec![("route", json!(route.name()))];
            if extrapolated {
                extra.push(("extrapolated", json!(true)));
                extra.push(("note", json!(EXTRAPOLATED_NOTE)));
            }
            series_json("qseries", a.k, a.j, &series, &extra)
        }
        Format::Bfile => {
            let mut shifted = series;
            if a.j >= 2 {
                shifted.add_at(0, &(bernoulli(a.j) / usize_rational(2 * a.j)));
            }
            let mut s = String::new();
            if extrapolated {
                s.push_str(&format!("# {EXTRAPOLATED_NOTE}\n"));
            }
            s.push_str(&bfile(&shifted)?);
            s
        }
        Format::Csv => series_csv(&series),
    };
    emit(&a.output, &text)
}

fn usize_rational(n: usize) -> ExactRational {
    ExactRational::from_integer(n.into())
}

fn table_csv(t: &CountTable) -> String {
    let mut out = String::from("m,n,count\n");
    for (m, n, v) in t.iter() {
        out.push_str(&format!("{m},{n},{v}\n"));
    }
    out
}

fn table_json(t: &CountTable) -> String {
    let rows: Vec<Value> = t
        .iter()
        .map(|(m, n, v)| json!({ "m": m, "n": n, "count": v }))
        .collect();
    let v = json!({
        "object": "count_table",
        "k": t.k(),
        "max_abs_m": t.max_abs_m(),
        "max_n": t.max_n(),
        "rows": rows,
    });
    let mut out = serde_json::to_string_pretty(&v).expect("serializable");
    out.push('\n');
    out
}

fn render_series_table(output: &Output, object: &str, k: u32, j: usize, s: &QSeries, extra: &[(&str, Value)]) -> CliResult<()> {
    let text = match output.format.unwrap_or(Format::Csv) {
        Format::Csv => series_csv(s),
        Format::Json => series_json(object, k, j, s, extra),
        Format::Text => format!("{s}\n"),
        Format::Bfile => bfile(s)?,
    };
    emit(output, &text)
}

fn cmd_table(kind: TableKind) -> CliResult<()> {
    match kind {
        TableKind::Nk { k, maxm, maxn, output } => {
            if maxn > ENUMERATION_CEILING {
                return Err(Failure::Config(format!(
                    "--maxn {maxn} exceeds the enumeration ceiling {ENUMERATION_CEILING}"
                )));
            }
            let t = count_table(k, maxm, maxn)?;
            let text = match output.format.unwrap_or(Format::Csv) {
                Format::Csv => table_csv(&t),
                Format::Json => table_json(&t),
                Format::Text => table_csv(&t),
                Format::Bfile => return Err(Failure::Config("count tables have no b-file form".into())),
            };
            emit(&output, &text)
        }
        TableKind::Moments { k, j, order, method, output } => {
            check_order(order)?;
            let m = match k {
                1 => {
                    let method: MomentMethod = method.as_deref().unwrap_or("eisenstein").parse()?;
                    crank_moment(j, order, method)?
                }
                k if k >= 3 => {
                    let method: MomentMethod = method.as_deref().unwrap_or("direct").parse()?;
                    rank_moment(k, j, order, method)?
                }
                k => return Err(Failure::Config(format!("moment tables need k = 1 or k >= 3, got {k}"))),
            };
            let extra = [("method", json!(m.method.name()))];
            render_series_table(&output, "moment", k, j as usize, &m.series, &extra)
        }
        TableKind::Traces { k, j, order, method, allow_k2, output } => {
            check_order(order)?;
            let weight: TraceWeight = method.parse()?;
            let series = if k == 1 {
                trace(j, weight, &EisensteinFamily::new(j.max(1), order))?
            } else {
                let fam = family_for(k, j, order, Route::RecursionA, allow_k2)?;
                trace(j, weight, &fam)?
            };
            let extra = [("weight", json!(method))];
            render_series_table(&output, "trace", k, j, &series, &extra)
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> CliResult<()> {
    let suite: Suite = a.suite.parse()?;
    if a.order == Some(0) {
        return Err(Failure::Config("--order must be at least 1".into()));
    }
    if let Some(k) = a.k {
        if k < 3 {
            return Err(Failure::Config(format!("verification suites need k >= 3, got {k}")));
        }
    }
    if matches!(a.maxn, Some(n) if n > ENUMERATION_CEILING) {
        return Err(Failure::Config(format!(
            "--maxn exceeds the enumeration ceiling {ENUMERATION_CEILING}"
        )));
    }
    let params = SuiteParams {
        k: a.k,
        max_j: a.maxj,
        max_n: a.maxn,
        max_m: a.maxm,
        order: a.order,
        inject_fault: a.inject_fault,
    };
    let reports = verify::run(suite, &params);
    let all_pass = reports.iter().all(|r| r.passed());
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Json => {
            let v: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "suite": r.suite.name(),
                        "passed": r.passed(),
                        "checks": r.checks.iter().map(|c| json!({
                            "name": c.name,
                            "passed": c.passed,
                            "detail": c.detail,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&json!({ "object": "verification", "passed": all_pass, "suites": v }))
                .expect("serializable");
            s.push('\n');
            s
        }
        _ => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!("{r}\n"));
            }
            s.push_str(if all_pass { "result: PASS\n" } else { "result: FAIL\n" });
            s
        }
    };
    emit(&a.output, &text)?;
    if all_pass {
        Ok(())
    } else {
        Err(Failure::Verification("verification failed".into()))
    }
}
