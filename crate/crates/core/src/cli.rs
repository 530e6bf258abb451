//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the text for stdout and stderr, so the binary only prints.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::catalog::{catalog, lookup, verify_entry_with, Execution, IdentityParams, VerifyReport};
use crate::error::Error;
use crate::param::{parse_complex, Parameter};
use crate::series::{classify_convergence, evaluate, EvalControl, HypSpec};
use crate::tables::{figure1, format_significant, table1};

#[derive(Parser, Debug)]
#[command(name = "hypderiv", version, about = "Generalized hypergeometric functions and their derivative identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate pFq(upper; lower; z) by direct summation.
    Eval(EvalArgs),
    /// Print the c = 1..7 table as CSV.
    Table1 {
        #[arg(long, default_value_t = 15)]
        digits: usize,
    },
    /// Sweep c over a real grid and write CSV.
    Figure1 {
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        c_min: f64,
        #[arg(long, default_value_t = 7.5, allow_hyphen_values = true)]
        c_max: f64,
        #[arg(long, default_value_t = 0.05, allow_hyphen_values = true)]
        step: f64,
        #[arg(long, default_value_t = 15)]
        digits: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check catalog entries against the derivative oracle.
    Verify {
        /// Entry id, or `all`.
        #[arg(long, default_value = "all")]
        identity: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Per-comparison detail.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Run trials on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// List catalog entries and their parameters.
    List,
    /// Print both sides of a catalog entry in the expression text format.
    DumpExpr(DumpArgs),
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Comma-separated upper parameters; may be empty.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    upper: String,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    lower: String,
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, default_value_t = 1e-14)]
    rel_tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_terms: usize,
    #[arg(long, default_value_t = 15)]
    digits: usize,
}

#[derive(Args, Debug)]
struct DumpArgs {
    #[arg(long)]
    identity: String,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    r: String,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    upper: String,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    lower: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    b: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    c: String,
    /// Also evaluate d^n lhs and rhs at this point.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<f64>,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Outcome { code, stdout: String::new(), stderr: stderr.into() }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 { Outcome::ok(text) } else { Outcome::fail(code, text) };
        }
    };
    match cli.command {
        Command::Eval(a) => cmd_eval(&a),
        Command::Table1 { digits } => Outcome::ok(table1().to_csv(digits)),
        Command::Figure1 { c_min, c_max, step, digits, out } => cmd_figure1(c_min, c_max, step, digits, out),
        Command::Verify { identity, trials, seed, tol, csv, sequential } => {
            cmd_verify(&identity, trials, seed, tol, csv, sequential)
        }
        Command::List => cmd_list(),
        Command::DumpExpr(a) => cmd_dump(&a),
    }
}

fn parse_list(s: &str) -> Result<Vec<Parameter>, Error> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
}

fn format_value(v: Complex64, digits: usize) -> String {
    if v.im == 0.0 {
        return format_significant(v.re, digits);
    }
    let im = format_significant(v.im.abs(), digits);
    let sign = if v.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{im}i", format_significant(v.re, digits))
}

fn cmd_eval(a: &EvalArgs) -> Outcome {
    let spec = match (parse_list(&a.upper), parse_list(&a.lower)) {
        (Ok(u), Ok(l)) => HypSpec::new(u, l),
        (Err(e), _) | (_, Err(e)) => return Outcome::fail(2, format!("error: {e}\n")),
    };
    let z = match parse_complex(a.z.trim()) {
        Ok(z) => z,
        Err(e) => return Outcome::fail(2, format!("error: {e}\n")),
    };
    let ctrl = EvalControl { rel_tol: a.rel_tol, max_terms: a.max_terms, ..EvalControl::default() };
    if let Err(e) = spec.validate().and_then(|_| ctrl.check()) {
        return Outcome::fail(2, format!("error: {e}\n"));
    }
    match evaluate(&spec, z, &ctrl) {
        Ok(r) => {
            let class = classify_convergence(&spec, z);
            Outcome::ok(format!(
                "value: {}\nterms_used: {}\nconvergence: {}\n",
                format_value(r.value, a.digits),
                r.terms_used,
                class.name()
            ))
        }
        Err(e @ (Error::NoConvergence { .. } | Error::DomainError(_))) => Outcome::fail(3, format!("error: {e}\n")),
        Err(e) => Outcome::fail(2, format!("error: {e}\n")),
    }
}

fn cmd_figure1(c_min: f64, c_max: f64, step: f64, digits: usize, out: Option<PathBuf>) -> Outcome {
    let csv = match figure1(c_min, c_max, step) {
        Ok(t) => t.to_csv(digits),
        Err(e) => return Outcome::fail(2, format!("error: {e}\n")),
    };
    match out {
        None => Outcome::ok(csv),
        Some(path) => match std::fs::write(&path, &csv) {
            Ok(()) => Outcome::ok(format!("wrote {} rows to {}\n", csv.lines().count() - 1, path.display())),
            Err(e) => Outcome::fail(1, format!("error: cannot write {}: {e}\n", path.display())),
        },
    }
}

fn cmd_verify(id: &str, trials: usize, seed: u64, tol: f64, csv: Option<PathBuf>, sequential: bool) -> Outcome {
    let entries: Vec<_> = if id.eq_ignore_ascii_case("all") {
        catalog().iter().collect()
    } else {
        match lookup(id) {
            Ok(e) => vec![e],
            Err(e) => return Outcome::fail(2, format!("error: {e}\n")),
        }
    };
    let exec = if sequential { Execution::Sequential } else { Execution::default() };
    let ctrl = EvalControl::full_precision();
    let mut reports: Vec<VerifyReport> = Vec::with_capacity(entries.len());
    for e in entries {
        match verify_entry_with(e, trials, seed, tol, &ctrl, exec) {
            Ok(r) => reports.push(r),
            Err(err) => return Outcome::fail(2, format!("error: {err}\n")),
        }
    }
    let mut stdout = String::new();
    for r in &reports {
        let _ = writeln!(stdout, "{}", r.summary());
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(
        stdout,
        "{} of {} entries passed (seed={seed} trials={trials} tol={tol:e})",
        reports.len() - failed,
        reports.len()
    );
    let mut stderr = String::new();
    if let Some(path) = csv {
        let mut body = format!("{}\n", VerifyReport::CSV_HEADER);
        for r in &reports {
            body.push_str(&r.csv_rows());
        }
        if let Err(e) = std::fs::write(&path, body) {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            return Outcome { code: 1, stdout, stderr };
        }
    }
    Outcome { code: if failed == 0 { 0 } else { 1 }, stdout, stderr }
}

fn cmd_list() -> Outcome {
    let mut out = String::new();
    for e in catalog() {
        let _ = writeln!(out, "{:<20} {}", e.id, e.params_schema.join(" "));
    }
    Outcome::ok(out)
}

fn dump_params(a: &DumpArgs) -> Result<IdentityParams, Error> {
    Ok(IdentityParams {
        n: a.n,
        r: a.r.parse()?,
        upper: parse_list(&a.upper)?,
        lower: parse_list(&a.lower)?,
        a: a.a.parse()?,
        b: a.b.parse()?,
        c: a.c.parse()?,
    })
}

fn cmd_dump(a: &DumpArgs) -> Outcome {
    let entry = match lookup(&a.identity) {
        Ok(e) => e,
        Err(e) => return Outcome::fail(2, format!("error: {e}\n")),
    };
    let p = match dump_params(a) {
        Ok(p) => p,
        Err(e) => return Outcome::fail(2, format!("error: {e}\n")),
    };
    let sides = entry.lhs(&p).and_then(|l| Ok((l, entry.rhs(&p)?)));
    let (lhs, rhs) = match sides {
        Ok(s) => s,
        Err(e) => return Outcome::fail(2, format!("error: {e}\n")),
    };
    let mut out =
        format!("# {} {}\n# lhs (differentiated {} times)\n{lhs}# rhs\n{rhs}", entry.id, entry.describe(&p), p.n);
    if let Some(z) = a.z {
        match entry.sides(&p, z, &EvalControl::full_precision()) {
            Ok((l, r)) => {
                let _ = writeln!(out, "# at z = {z}\nlhs: {}\nrhs: {}", format_value(l, 15), format_value(r, 15));
            }
            Err(e) => return Outcome { code: 3, stdout: out, stderr: format!("error: {e}\n") },
        }
    }
    Outcome::ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("hypderiv").chain(args.iter().copied()))
    }

    #[test]
    fn eval_reports_value_terms_and_class() {
        let o = run_args(&["eval", "--upper", "1,1", "--lower", "2", "--z", "0.5"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.starts_with("value: 1.38629436111989\n"), "{}", o.stdout);
        assert!(o.stdout.contains("convergence: "));
    }

    #[test]
    fn eval_exit_codes() {
        let o = run_args(&["eval", "--upper", "0.5", "--lower", "-1", "--z", "0.1"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("SingularLowerParameter"), "{}", o.stderr);
        let o = run_args(&["eval", "--upper", "1,1", "--lower", "", "--z", "0.5"]);
        assert_eq!(o.code, 3, "{}", o.stdout);
        let o = run_args(&["eval", "--upper", "1,1", "--lower", "2", "--z", "0.5", "--max-terms", "5"]);
        assert_eq!(o.code, 3);
    }

    #[test]
    fn eval_at_zero_is_one() {
        for upper in ["0.3-2i", "7,-2.5"] {
            let o = run_args(&["eval", "--upper", upper, "--lower", "2", "--z", "0"]);
            let v: f64 = o.stdout.lines().next().unwrap().trim_start_matches("value: ").parse().unwrap();
            assert_eq!(v, 1.0, "{}", o.stdout);
        }
    }

    #[test]
    fn unknown_identity_and_empty_sweep_exit_2() {
        assert_eq!(run_args(&["verify", "--identity", "nonsense"]).code, 2);
        assert_eq!(run_args(&["dump-expr", "--identity", "nonsense"]).code, 2);
        assert_eq!(run_args(&["figure1", "--c-min", "3", "--c-max", "2"]).code, 2);
    }

    #[test]
    fn dump_expr_round_trips_through_the_text_format() {
        let o = run_args(&[
            "dump-expr",
            "--identity",
            "Th1-4-exceptional",
            "--n",
            "4",
            "--upper",
            "1/2,2/3",
            "--lower",
            "3",
            "--z",
            "0.3333333333333333",
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("rhs: 2.04681438609744"), "{}", o.stdout);
        let rhs = o.stdout.split("# rhs\n").nth(1).unwrap().split("# at").next().unwrap();
        let e: crate::expr::Expr = rhs.parse().unwrap();
        assert_eq!(e.terms.len(), 1);
    }
}
