//! The `eqloc` command line.
//!
//! Exit codes: 0 success, 1 unreadable input (command line, file, JSON, space
//! identifier or class expression), 2 invalid fixed-point data or non-generic
//! `--xi`, 3 the localization sum is not a polynomial, 4 degree errors (an
//! inhomogeneous class, or a class that is not of top degree under `--top`).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use eqloc_core::{ClassExpr, LocalizationProblem, LocalizationResult, LocalizeError, NotPolynomial, ParseDiagnostic};

use crate::document::{ProblemDocument, ResultDocument, Status};
use crate::parallel::localize_parallel;
use crate::space::parse_space;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_POLYNOMIAL: i32 = 3;
pub const EXIT_DEGREE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "eqloc", version, about = "Exact equivariant localization over isolated fixed points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate a characteristic class by summing over fixed points.
    Integrate {
        #[command(flatten)]
        common: Common,
        /// Class expression in c1, c2, ... and e, e.g. "c1^2 + 3*c2".
        #[arg(long)]
        expr: String,
        /// Require a top-degree class and print the scalar integral.
        #[arg(long)]
        top: bool,
    },
    /// Euler characteristic, as the integral of e, checked against the fixed-point count.
    Euler {
        #[command(flatten)]
        common: Common,
    },
    /// Certify that the localization sum is a polynomial (zero below the top degree).
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        expr: String,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[command(flatten)]
    source: Source,
    /// Restrict to the circle with these weights (comma separated).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    xi: Option<Vec<i64>>,
    /// Include the per-fixed-point terms.
    #[arg(long)]
    terms: bool,
    /// Print a JSON result document instead of the text report.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in space: sphere, point, cpn:<n> or product:<space>,<space>.
    #[arg(long)]
    space: Option<String>,
    /// Problem document (JSON).
    #[arg(long)]
    file: Option<PathBuf>,
}

/// Everything an invocation writes, and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
    document: Option<Box<ResultDocument>>,
    report: Option<String>,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), document: None, report: None }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let json = match &cli.command {
        Command::Integrate { common, .. } | Command::Euler { common } | Command::Check { common, .. } => common.json,
    };
    match execute(&cli.command) {
        Ok((document, report)) => Outcome {
            code: EXIT_OK,
            stdout: if json { document.to_json() + "\n" } else { report },
            stderr: String::new(),
        },
        Err(f) => {
            let stdout = if json {
                f.document.map_or_else(|| ResultDocument::error(&f.message), |d| *d).to_json() + "\n"
            } else {
                f.report.unwrap_or_default()
            };
            Outcome { code: f.code, stdout, stderr: format!("eqloc: {}\n", f.message) }
        }
    }
}

fn execute(command: &Command) -> Result<(ResultDocument, String), Failure> {
    match command {
        Command::Integrate { common, expr, top } => {
            let problem = load(common)?;
            let expr = parse_expr(expr)?;
            integrate(&problem, &expr, *top, common.terms)
        }
        Command::Euler { common } => {
            let problem = load(common)?;
            euler(&problem, common.terms)
        }
        Command::Check { common, expr } => {
            let problem = load(common)?;
            let expr = parse_expr(expr)?;
            check(&problem, &expr, common.terms)
        }
    }
}

fn load(common: &Common) -> Result<LocalizationProblem, Failure> {
    let problem = match (&common.source.space, &common.source.file) {
        (Some(id), _) => parse_space(id).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
            let doc = ProblemDocument::from_json(&text)
                .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
            doc.to_problem().map_err(|e| Failure::new(EXIT_INVALID, format!("{}: {e}", path.display())))?
        }
        (None, None) => unreachable!("clap requires a problem source"),
    };
    match &common.xi {
        Some(xi) => problem.circle_reduce(xi).map_err(|e| Failure::new(EXIT_INVALID, e.to_string())),
        None => Ok(problem),
    }
}

fn parse_expr(text: &str) -> Result<ClassExpr, Failure> {
    ClassExpr::parse(text).map_err(|d| Failure::new(EXIT_PARSE, render_diagnostic(text, &d)))
}

fn render_diagnostic(text: &str, d: &ParseDiagnostic) -> String {
    format!("{d}\n  {text}\n  {:>width$}", "^", width = d.offset + 1)
}

fn localize_or_fail(problem: &LocalizationProblem, expr: &ClassExpr) -> Result<LocalizationResult, Failure> {
    localize_parallel(problem, expr).map_err(|e| match e {
        LocalizeError::NotPolynomial(np) => not_polynomial(expr, &np),
        LocalizeError::Invalid(v) => Failure::new(EXIT_INVALID, v.to_string()),
        LocalizeError::Degree(d) => Failure::new(EXIT_DEGREE, d.to_string()),
        other => Failure::new(EXIT_DEGREE, other.to_string()),
    })
}

fn not_polynomial(expr: &ClassExpr, np: &NotPolynomial) -> Failure {
    let mut doc = ResultDocument::new(Status::NotPolynomial);
    doc.expr = Some(expr.to_string());
    doc.torus_rank = Some(np.sum.rank());
    doc.class_degree = Some(np.class_degree);
    doc.dimension = Some(np.dimension);
    doc.residual = Some(np.sum.to_string());
    doc.set_per_point(&np.per_point_terms);
    let mut report = format!("not a polynomial: {}\n", np.sum);
    write_terms(&mut report, &np.per_point_terms);
    Failure {
        code: EXIT_NOT_POLYNOMIAL,
        message: "localization sum does not cancel to a polynomial; the fixed-point data is inconsistent".into(),
        document: Some(Box::new(doc)),
        report: Some(report),
    }
}

fn write_terms(out: &mut String, terms: &[(String, eqloc_core::FactoredRational)]) {
    for (name, t) in terms {
        writeln!(out, "  {name}: {t}").unwrap();
    }
}

fn base_document(expr: &ClassExpr, result: &LocalizationResult, terms: bool) -> ResultDocument {
    let mut doc = ResultDocument::new(Status::Polynomial);
    doc.expr = Some(expr.to_string());
    doc.class_degree = Some(result.class_degree);
    doc.dimension = Some(result.dimension);
    doc.set_value(&result.value);
    if terms {
        doc.set_per_point(&result.per_point_terms);
    }
    doc
}

fn integrate(
    problem: &LocalizationProblem,
    expr: &ClassExpr,
    top: bool,
    terms: bool,
) -> Result<(ResultDocument, String), Failure> {
    if top {
        let degree = expr.degree(problem.half_dim()).map_err(|e| Failure::new(EXIT_DEGREE, e.to_string()))?;
        if degree != problem.dimension() {
            return Err(Failure::new(
                EXIT_DEGREE,
                format!("--top: class {expr} has degree {degree}, the manifold has dimension {}", problem.dimension()),
            ));
        }
    }
    let result = localize_or_fail(problem, expr)?;
    let mut doc = base_document(expr, &result, terms);
    let mut report = if top {
        let scalar = result.value.as_constant().expect("top-degree integral is constant").to_string();
        doc.top = Some(scalar.clone());
        scalar
    } else {
        result.value.to_string()
    };
    report.push('\n');
    if terms {
        write_terms(&mut report, &result.per_point_terms);
    }
    Ok((doc, report))
}

fn euler(problem: &LocalizationProblem, terms: bool) -> Result<(ResultDocument, String), Failure> {
    let expr = ClassExpr::Euler;
    let result = localize_or_fail(problem, &expr)?;
    let count = problem.points().len();
    let chi = result.value.as_constant().expect("integral of e is constant");
    if chi != eqloc_core::Scalar::from_integer(count.into()) {
        return Err(Failure::new(
            EXIT_NOT_POLYNOMIAL,
            format!("integral of e is {chi} but there are {count} fixed points"),
        ));
    }
    let mut doc = base_document(&expr, &result, terms);
    doc.top = Some(chi.to_string());
    doc.fixed_point_count = Some(count);
    let mut report = format!("{chi}\nfixed points: {count}\n");
    if terms {
        write_terms(&mut report, &result.per_point_terms);
    }
    Ok((doc, report))
}

fn check(problem: &LocalizationProblem, expr: &ClassExpr, terms: bool) -> Result<(ResultDocument, String), Failure> {
    let result = localize_or_fail(problem, expr)?;
    let mut doc = base_document(expr, &result, terms);
    let mut report = if result.class_degree < result.dimension {
        if !result.value.is_zero() {
            let mut doc = doc;
            doc.status = Status::Error;
            doc.vanishes = Some(false);
            doc.error = Some("class of degree below the dimension integrates to a nonzero value".into());
            return Err(Failure {
                code: EXIT_NOT_POLYNOMIAL,
                message: format!("counterexample to vanishing: {}", result.value),
                document: Some(Box::new(doc)),
                report: Some(format!("counterexample: {}\n", result.value)),
            });
        }
        doc.vanishes = Some(true);
        "ok: vanishes\n".to_string()
    } else {
        format!("ok: polynomial {}\n", result.value)
    };
    if terms {
        write_terms(&mut report, &result.per_point_terms);
    }
    Ok((doc, report))
}
