//! Command-line front end.
//!
//! Exit codes: `0` success, `2` usage error (including unknown group names),
//! `3` a computation precondition failed.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::json;
use thiserror::Error;

use weylstab::characters::{character_from_label, schur_character_g2, Character};
use weylstab::json::rational_to_value;
use weylstab::quadrature::{self, DEFAULT_GRID};
use weylstab::spectra::{self, freudenthal_eigenvalue, ScaleConvention};
use weylstab::stability;
use weylstab::{integrate_class_function, verify_quadrature, Rational, RootSystem, StabilityReport, TorusPolynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Computation(_) => EXIT_COMPUTATION,
        }
    }
}

fn computation<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Computation(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "weylstab", version, about = "Exact Lie-theoretic spectra, characters and torus integrals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandRequest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScaleArg {
    Fh,
    Killing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Cosine,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Weyl,
    Schur,
}

#[derive(Debug, Subcommand)]
pub enum CommandRequest {
    /// Laplacian eigenvalue for the irreducible representation with the given
    /// fundamental-weight coordinates.
    Eigenvalue {
        group: String,
        #[arg(required = true)]
        coords: Vec<u32>,
        #[arg(long, value_enum, default_value = "fh")]
        scale: ScaleArg,
        #[arg(long)]
        json: bool,
    },
    /// Irreducible character on the maximal torus.
    Character {
        group: String,
        #[arg(required = true)]
        coords: Vec<u32>,
        #[arg(long, value_enum, default_value = "cosine")]
        form: FormArg,
        /// `schur` is available for G2 only.
        #[arg(long, value_enum, default_value = "weyl")]
        route: RouteArg,
        #[arg(long)]
        json: bool,
    },
    /// Exact Haar integral of a named class function: `one`, `chi ...`,
    /// `chi2 ...` (|χ|²) or `chi3 ...` (χ³).
    Integrate {
        group: String,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Neutral-direction scan and cube-integral instability test.
    Stability {
        group: String,
        /// Upper bound on |λ+ρ|² (unit-short-root scale).
        #[arg(long, allow_hyphen_values = true)]
        bound: Option<String>,
        /// Einstein constant in the Killing scale.
        #[arg(long, default_value = "1/4", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check an exact integral against grid quadrature.
    Verify {
        group: String,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match run(&cli.command) {
            Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
            Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
        },
        Err(e) if !e.use_stderr() => Outcome { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() },
        Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: e.to_string() },
    }
}

fn group(name: &str) -> Result<RootSystem, CliError> {
    RootSystem::preset(name).map_err(|_| CliError::Usage(format!("unknown group {name:?}; expected G2, A1 or A2")))
}

fn label(rs: &RootSystem, coords: &[u32]) -> Result<Vec<i64>, CliError> {
    if coords.len() != rs.rank() {
        return Err(CliError::Usage(format!(
            "{} has rank {}, got {} coordinates",
            rs.name(),
            rs.rank(),
            coords.len()
        )));
    }
    Ok(coords.iter().map(|&c| i64::from(c)).collect())
}

fn parse_rational(s: &str, what: &str) -> Result<Rational, CliError> {
    s.trim().parse::<Rational>().map_err(|_| CliError::Usage(format!("{what}: expected a rational like 13 or 1/4, got {s:?}")))
}

/// A named class function on the torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expression {
    One,
    Chi(Vec<i64>),
    ChiAbsSquared(Vec<i64>),
    ChiCubed(Vec<i64>),
}

impl Expression {
    pub fn parse(text: &str, rs: &RootSystem) -> Result<Self, CliError> {
        let mut words = text.split_whitespace();
        let head = words.next().ok_or_else(|| CliError::Usage("empty expression".into()))?;
        let coords = words
            .map(|w| w.parse::<u32>().map_err(|_| CliError::Usage(format!("bad coordinate {w:?} in expression"))))
            .collect::<Result<Vec<_>, _>>()?;
        match head {
            "one" if coords.is_empty() => Ok(Expression::One),
            "one" => Err(CliError::Usage("`one` takes no coordinates".into())),
            "chi" => Ok(Expression::Chi(label(rs, &coords)?)),
            "chi2" => Ok(Expression::ChiAbsSquared(label(rs, &coords)?)),
            "chi3" => Ok(Expression::ChiCubed(label(rs, &coords)?)),
            other => Err(CliError::Usage(format!("unknown expression {other:?}; expected one, chi, chi2 or chi3"))),
        }
    }

    pub fn polynomial(&self, rs: &RootSystem) -> Result<TorusPolynomial, CliError> {
        let chi = |l: &[i64]| character_from_label(rs, l).map(Character::into_poly).map_err(computation);
        Ok(match self {
            Expression::One => TorusPolynomial::one(rs.rank()),
            Expression::Chi(l) => chi(l)?,
            Expression::ChiAbsSquared(l) => {
                let c = chi(l)?;
                &c * &c.conj()
            }
            Expression::ChiCubed(l) => chi(l)?.pow(3),
        })
    }
}

fn label_string(rs: &RootSystem, w: &weylstab::Weight) -> String {
    let l = rs.dominant_label(w).unwrap_or_default();
    let parts: Vec<String> = l.iter().map(i64::to_string).collect();
    format!("Γ({})", parts.join(","))
}

pub fn run(cmd: &CommandRequest) -> Result<String, CliError> {
    match cmd {
        CommandRequest::Eigenvalue { group: g, coords, scale, json } => {
            let rs = group(g)?;
            let l = label(&rs, coords)?;
            let e = freudenthal_eigenvalue(&rs, &rs.weight_from_fundamental(&l)).map_err(computation)?;
            let e = match scale {
                ScaleArg::Fh => e,
                ScaleArg::Killing => e.to_killing(),
            };
            if *json {
                let scale = match e.scale_convention() {
                    ScaleConvention::Killing => "killing",
                    _ => "fh",
                };
                Ok(format!(
                    "{}\n",
                    json!({ "group": rs.name(), "highest_weight": l, "scale": scale, "value": rational_to_value(e.value()) })
                ))
            } else {
                Ok(format!("{}\n", e.value()))
            }
        }
        CommandRequest::Character { group: g, coords, form, route, json } => {
            let rs = group(g)?;
            let l = label(&rs, coords)?;
            let chi = match route {
                RouteArg::Weyl => character_from_label(&rs, &l).map_err(computation)?,
                RouteArg::Schur if rs.name() == "G2" => {
                    schur_character_g2(coords[0], coords[1]).map_err(computation)?
                }
                RouteArg::Schur => return Err(CliError::Usage("the Schur route is only available for G2".into())),
            };
            if *json || *form == FormArg::Json {
                Ok(format!("{}\n", chi.poly().to_json()))
            } else {
                Ok(format!("{}\n", chi.poly()))
            }
        }
        CommandRequest::Integrate { group: g, expr, json } => {
            let rs = group(g)?;
            let f = Expression::parse(expr, &rs)?.polynomial(&rs)?;
            let v = integrate_class_function(&rs, &f).map_err(computation)?;
            if *json {
                Ok(format!(
                    "{}\n",
                    json!({
                        "group": rs.name(),
                        "expr": expr,
                        "unit_haar": rational_to_value(&v.unit_haar_value),
                        "raw_torus": {
                            "coefficient": rational_to_value(&v.raw_torus_coefficient),
                            "pi_power": v.pi_power,
                            "display": v.raw_display(),
                        },
                    })
                ))
            } else {
                Ok(format!(
                    "unit_haar = {}\nraw_torus = {}\nnote: ∫ f dV for the Killing metric is vol(G)·unit_haar, a positive multiple not computed here\n",
                    v.unit_haar_value,
                    v.raw_display()
                ))
            }
        }
        CommandRequest::Stability { group: g, bound, lambda, json } => {
            let rs = group(g)?;
            let lam = parse_rational(lambda, "--lambda")?;
            let bound = bound.as_deref().map(|b| parse_rational(b, "--bound")).transpose()?;
            let effective = bound.clone().unwrap_or_else(|| stability::neutral_search_bound(&rs, &lam));
            let report = stability::analyze(&rs, &lam, Some(&effective)).map_err(computation)?;
            if *json {
                Ok(format!("{}\n", report.to_json()))
            } else {
                Ok(render_report(&rs, &report, &effective))
            }
        }
        CommandRequest::Verify { group: g, expr, grid, json } => {
            let rs = group(g)?;
            let f = Expression::parse(expr, &rs)?.polynomial(&rs)?;
            let check = verify_quadrature(&rs, &f, *grid).map_err(computation)?;
            let verdict = if check.pass { "PASS" } else { "FAIL" };
            let out = if *json {
                format!(
                    "{}\n",
                    json!({
                        "group": rs.name(),
                        "expr": expr,
                        "grid": check.grid,
                        "exact": rational_to_value(&check.exact_value),
                        "quadrature": [check.float_value.re, check.float_value.im],
                        "abs_error": check.abs_error,
                        "tolerance": quadrature::TOLERANCE,
                        "verdict": verdict,
                    })
                )
            } else {
                format!(
                    "exact = {}\nquadrature = {:.12} (grid {})\nabs_error = {:e}\n{verdict}\n",
                    check.exact_value, check.float_value.re, check.grid, check.abs_error
                )
            };
            if check.pass {
                Ok(out)
            } else {
                Err(CliError::Computation(format!("quadrature disagrees with exact value\n{out}")))
            }
        }
    }
}

fn render_report(rs: &RootSystem, report: &StabilityReport, bound: &Rational) -> String {
    let mut out = String::new();
    let lam = &report.einstein_constant;
    let target = -(lam * Rational::from_integer(2.into()));
    let _ = writeln!(out, "group: {}", report.group);
    let _ = writeln!(
        out,
        "einstein constant: {} (Killing), {} (FH)",
        lam,
        spectra::einstein_constant_in(rs, lam, &ScaleConvention::FhUnitShortRoot)
    );
    let _ = writeln!(out, "search: |λ+ρ|² ≤ {bound}");
    let _ = writeln!(out, "neutral directions (eigenvalue = -2Λ = {target}): {}", report.neutral_weights.len());
    for e in &report.neutral_weights {
        let _ = writeln!(
            out,
            "  {}  eigenvalue {} (Killing), {} (FH)",
            label_string(rs, e.highest_weight()),
            e.to_killing().value(),
            e.to_fh().value()
        );
    }
    for (w, integral) in &report.cube_integrals {
        let _ = writeln!(
            out,
            "  ∫ χ³ for {}: unit Haar {}, torus integral {}",
            label_string(rs, w),
            integral.unit_haar_value,
            integral.raw_display()
        );
        if let Some(f) = integral.unit_haar_value.to_f64() {
            let _ = writeln!(out, "    (≈ {f})");
        }
    }
    let _ = writeln!(out, "verdict: {}", report.verdict);
    out
}
