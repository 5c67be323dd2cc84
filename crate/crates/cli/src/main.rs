//! `realquad`: factor real polynomials into linear and quadratic factors.
//!
//! Coefficients are always given in ascending order, constant term first.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use realquad::json;
use realquad::selfcheck::run_invariant_suite;
use realquad::{
    curves_grid, divide_quadratic, factor_completely, Error, Factorization, Polynomial,
    QuadDivisor, Window,
};

const ASCENDING_NOTE: &str = "Coefficients are ASCENDING: c0 is the constant term. \
x^3 - 2x + 5 is written 5,-2,0,1";

#[derive(Parser, Debug)]
#[command(name = "realquad", version, about, after_help = ASCENDING_NOTE)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor into leading coefficient, real linear factors and irreducible
    /// quadratics x^2 - A·x - B.
    #[command(after_help = ASCENDING_NOTE)]
    Factor {
        #[command(flatten)]
        input: Input,
        /// Accepted residual relative to |leading|·(1 + max|c|).
        #[arg(long, env = "REALQUAD_TOL", default_value_t = 1e-6, value_parser = positive)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Divide by x^2 - a·x - b and print the quotient and the remainder p·x + q.
    #[command(after_help = ASCENDING_NOTE)]
    Divide {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long)]
        json: bool,
    },
    /// Run the invariant suite on one polynomial; exit status 1 if any check fails.
    #[command(after_help = ASCENDING_NOTE)]
    Verify {
        #[command(flatten)]
        input: Input,
        /// Factorization residual accepted, relative to |leading|·(1 + max|c|).
        #[arg(long, env = "REALQUAD_TOL", default_value_t = 1e-6, value_parser = positive)]
        tol: f64,
    },
    /// Sample p(a, b) and q(a, b) on a grid and write them as JSON.
    #[command(after_help = ASCENDING_NOTE)]
    Curves {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
        amin: f64,
        #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
        amax: f64,
        #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
        bmin: f64,
        #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
        bmax: f64,
        #[arg(long, default_value_t = 400)]
        na: usize,
        #[arg(long, default_value_t = 300)]
        nb: usize,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Factor the polynomial and add every extracted (A, B) as a marker.
        #[arg(long)]
        mark_factors: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Comma-separated ascending coefficients, e.g. -1,-1,0,-1,1.
    #[arg(long, allow_hyphen_values = true, value_name = "C0,C1,...")]
    coeffs: Option<String>,
    /// File of ascending coefficients separated by commas or whitespace;
    /// `#` starts a comment.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("must be a positive number".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_coeffs(text: &str) -> Result<Vec<f64>, String> {
    let fields: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|s| !s.is_empty())
        .collect();
    if fields.is_empty() {
        return Err("no coefficients given".into());
    }
    fields
        .iter()
        .map(|s| {
            s.parse::<f64>()
                .map_err(|e| format!("bad coefficient {s:?}: {e}"))
        })
        .collect()
}

impl Input {
    fn polynomial(&self) -> Result<Polynomial, String> {
        let text = match (&self.coeffs, &self.file) {
            (Some(c), None) => c.clone(),
            (None, Some(p)) => {
                fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?
            }
            _ => return Err("give exactly one of --coeffs and --file".into()),
        };
        let f = Polynomial::try_new(parse_coeffs(&text)?).map_err(|e| e.to_string())?;
        if f.is_zero() {
            return Err("the zero polynomial cannot be processed".into());
        }
        Ok(f)
    }

    /// Like [`Input::polynomial`] but also requires degree >= `min`.
    fn polynomial_of_degree(&self, min: usize) -> Result<Polynomial, String> {
        let f = self.polynomial()?;
        if f.degree() < min {
            return Err(format!(
                "degree {} given, this command needs degree >= {min}",
                f.degree()
            ));
        }
        Ok(f)
    }
}

/// Exits with status 2 through clap's usage error path.
fn usage_error(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

fn pipeline_error(e: &Error) -> ExitCode {
    match e.stage() {
        Some(stage) => eprintln!("realquad: {stage} stage failed: {e}"),
        None => eprintln!("realquad: {e}"),
    }
    ExitCode::from(1)
}

fn print_factorization(out: &mut impl Write, fact: &Factorization) -> io::Result<()> {
    writeln!(out, "leading    {}", fact.leading)?;
    for r in &fact.linear_roots {
        writeln!(out, "linear     x - ({r})")?;
    }
    for q in &fact.quadratics {
        let im = (-q.discriminant()).sqrt() / 2.0;
        let flag = if q.degenerate { "  [degenerate]" } else { "" };
        writeln!(
            out,
            "quadratic  x^2 - ({})x - ({})   roots {} ± {}i{flag}",
            q.a,
            q.b,
            q.a / 2.0,
            im
        )?;
    }
    writeln!(out, "residual   {:e}", fact.residual)
}

fn factor(f: &Polynomial, tol: f64, as_json: bool) -> ExitCode {
    let fact = match factor_completely(f) {
        Ok(fact) => fact,
        Err(e) => return pipeline_error(&e),
    };
    let mut out = io::stdout().lock();
    let written = if as_json {
        writeln!(out, "{}", fact.to_json())
    } else {
        print_factorization(&mut out, &fact)
    };
    if written.is_err() {
        return ExitCode::from(1);
    }
    let bound = tol * fact.leading.abs().max(1.0) * (1.0 + f.max_abs_coeff());
    if fact.residual > bound {
        eprintln!(
            "realquad: verification failed: residual {:e} exceeds tolerance {bound:e}",
            fact.residual
        );
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

fn divide(f: &Polynomial, a: f64, b: f64, as_json: bool) -> ExitCode {
    let r = match divide_quadratic(f, QuadDivisor::new(a, b)) {
        Ok(r) => r,
        Err(e) => return pipeline_error(&e),
    };
    if as_json {
        println!(
            "{{\"quotient\":{},\"p\":{},\"q\":{}}}",
            json::array(r.quotient.coeffs().iter().copied()),
            json::number(r.p),
            json::number(r.q)
        );
    } else {
        println!("quotient {}", r.quotient);
        println!("p {}", r.p);
        println!("q {}", r.q);
    }
    ExitCode::SUCCESS
}

fn verify(f: &Polynomial, tol: f64) -> ExitCode {
    let checks = run_invariant_suite(f, tol);
    for c in &checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        println!("[{mark}] {}: {}", c.name, c.detail);
    }
    if checks.iter().all(|c| c.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn curves(
    f: &Polynomial,
    window: Window,
    na: usize,
    nb: usize,
    out: Option<PathBuf>,
    mark: bool,
) -> ExitCode {
    let mut grid = match curves_grid(f, window, na, nb) {
        Ok(g) => g,
        Err(e) => usage_error(e),
    };
    if mark {
        match factor_completely(f) {
            Ok(fact) => grid.mark_factors(&fact),
            Err(e) => return pipeline_error(&e),
        }
    }
    let text = grid.to_json();
    let written = match &out {
        Some(path) => fs::write(path, text + "\n"),
        None => writeln!(io::stdout().lock(), "{text}"),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("realquad: cannot write output: {e}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Factor { input, tol, json } => {
            let f = input
                .polynomial_of_degree(1)
                .unwrap_or_else(|e| usage_error(e));
            factor(&f, tol, json)
        }
        Command::Divide { input, a, b, json } => {
            let f = input
                .polynomial_of_degree(2)
                .unwrap_or_else(|e| usage_error(e));
            if !a.is_finite() || !b.is_finite() {
                usage_error("--a and --b must be finite");
            }
            divide(&f, a, b, json)
        }
        Command::Verify { input, tol } => {
            let f = input.polynomial().unwrap_or_else(|e| usage_error(e));
            verify(&f, tol)
        }
        Command::Curves {
            input,
            amin,
            amax,
            bmin,
            bmax,
            na,
            nb,
            out,
            mark_factors,
        } => {
            let f = input.polynomial().unwrap_or_else(|e| usage_error(e));
            curves(
                &f,
                Window::new(amin, amax, bmin, bmax),
                na,
                nb,
                out,
                mark_factors,
            )
        }
    }
}
