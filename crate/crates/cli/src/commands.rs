use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use apollonian::apollonius::ApolloniusSpec;
use apollonian::document::{curve_document, equioptic_document, CurveDocument, EquiopticDocument};
use apollonian::equioptic::{equioptic_curve, Circle};
use apollonian::render::{render_svg, Figure, Scene};
use apollonian::verify::{write_sweep_csv, CheckConfig, CheckRegistry, SuiteReport};
use apollonian::CurvatureSign;

use crate::args::{
    ApolloniusArgs, CircleArg, Command, Common, EquiopticArgs, FigureId, Format, RenderArgs,
    VerifyArgs,
};

/// Invalid input (exit 2) or an I/O failure while writing output (exit 1).
#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Output(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Invalid(_) => ExitCode::from(2),
            CliError::Output(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(msg) => f.write_str(msg),
            CliError::Output(e) => write!(f, "writing output: {e}"),
        }
    }
}

impl From<apollonian::Error> for CliError {
    fn from(e: apollonian::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn invalid<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Invalid(msg.into()))
}

pub fn dispatch(command: Command) -> CliResult<ExitCode> {
    match command {
        Command::Apollonius(a) => apollonius(a),
        Command::Equioptic(a) => equioptic(a),
        Command::Verify(a) => verify(a),
        Command::Render(a) => render(a),
    }
}

/// Output is assembled in full before anything is written, so a failure
/// never leaves a partial file behind.
fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(CliError::Output),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(CliError::Output)
        }
    }
}

fn require_format(common: &Common, allowed: Format) -> CliResult<()> {
    match common.format {
        Some(f) if f != allowed => {
            invalid(format!("--format {f:?} is not supported here; use {allowed:?}").to_lowercase())
        }
        _ => Ok(()),
    }
}

fn check_samples(n: usize) -> CliResult<()> {
    if n < 8 {
        return invalid(format!("--n {n} is too small (need at least 8)"));
    }
    Ok(())
}

fn spec(sign: CurvatureSign, d: f64, k: f64) -> CliResult<ApolloniusSpec> {
    Ok(ApolloniusSpec::new(d, k, sign)?)
}

fn circle(c: &CircleArg, sign: CurvatureSign) -> CliResult<Circle> {
    Ok(Circle::at(c.x, c.y, c.r, sign)?)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    text
}

fn apollonius(a: ApolloniusArgs) -> CliResult<ExitCode> {
    require_format(&a.common, Format::Json)?;
    check_samples(a.common.n)?;
    let doc = curve_document(&spec(a.geometry.into(), a.d, a.k)?, a.common.n)?;
    emit(a.common.out.as_deref(), &to_json(&doc))?;
    Ok(ExitCode::SUCCESS)
}

fn equioptic(a: EquiopticArgs) -> CliResult<ExitCode> {
    require_format(&a.common, Format::Json)?;
    check_samples(a.common.n)?;
    let sign = a.geometry.into();
    let result = equioptic_curve(&circle(&a.c1, sign)?, &circle(&a.c2, sign)?, sign)?;
    let doc = equioptic_document(&result, a.common.n)?;
    emit(a.common.out.as_deref(), &to_json(&doc))?;
    Ok(ExitCode::SUCCESS)
}

fn summary_csv(report: &SuiteReport) -> String {
    let mut out = String::from("check,passed,cases,failures,max_residual,tolerance,seed\n");
    for c in &report.checks {
        out.push_str(&format!(
            "{},{},{},{},{:e},{:e},{}\n",
            c.name, c.passed, c.cases, c.failures, c.max_residual, c.tolerance, report.seed
        ));
    }
    out
}

fn verify(a: VerifyArgs) -> CliResult<ExitCode> {
    check_samples(a.common.n)?;
    let registry = CheckRegistry::with_defaults();
    let names: Vec<&str> = match a.sweep.trim() {
        "all" => Vec::new(),
        list => list.split(',').map(str::trim).collect(),
    };
    for name in &names {
        if registry.get(name).is_none() {
            return invalid(format!(
                "unknown sweep `{name}`; available: all, {}",
                registry.names().join(", ")
            ));
        }
    }
    let config = CheckConfig {
        seed: a.seed,
        samples: a.common.n,
        geometry: a.geometry.map(Into::into),
        d: a.d,
        k: a.k,
        perturbation: a.inject_perturbation,
    };
    for sign in config.geometries() {
        spec(sign, a.d, a.k)?;
    }
    let scale_only = names == ["small-scale"];
    if (names.is_empty() || names.contains(&"small-scale")) && a.k == 1.0 {
        return invalid("the small-scale sweep needs k != 1");
    }
    let format = a.common.format.unwrap_or(if scale_only {
        Format::Csv
    } else {
        Format::Json
    });

    let report = registry.run_suite(&names, &config)?;
    let text = match format {
        Format::Json => to_json(&report),
        Format::Csv if scale_only => {
            let rows: Vec<_> = report
                .checks
                .iter()
                .flat_map(|c| c.rows.iter().copied())
                .collect();
            let mut buf = Vec::new();
            write_sweep_csv(&rows, &mut buf).map_err(CliError::Output)?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
        Format::Csv => summary_csv(&report),
        Format::Svg => return invalid("--format svg is not supported here; use json or csv"),
    };
    emit(a.common.out.as_deref(), &text)?;
    let passed = report.checks.iter().filter(|c| c.passed).count();
    eprintln!(
        "verify: {passed}/{} checks passed (seed {})",
        report.checks.len(),
        report.seed
    );
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn figure(id: FigureId) -> Figure {
    match id {
        FigureId::OneLeft => Figure::HyperbolicEllipse,
        FigureId::OneRight => Figure::HyperbolicSemiHyperbola,
        FigureId::TwoLeft => Figure::EllipticNear,
        FigureId::TwoRight => Figure::EllipticQuarter,
    }
}

/// A scene file, or a curve or equioptic document written by this tool.
fn scene_from_file(path: &Path) -> CliResult<Scene> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("reading {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let bad = |e: serde_json::Error| CliError::Invalid(format!("{}: {e}", path.display()));
    if value.get("circles").is_some() {
        let doc: EquiopticDocument = serde_json::from_value(value).map_err(bad)?;
        Ok(Scene::from_equioptic_document(&doc)?)
    } else if value.get("epsilon").is_some() {
        let doc: CurveDocument = serde_json::from_value(value).map_err(bad)?;
        Ok(Scene::from_curve_document(&doc)?)
    } else {
        serde_json::from_value(value).map_err(bad)
    }
}

fn render(a: RenderArgs) -> CliResult<ExitCode> {
    require_format(&a.common, Format::Svg)?;
    check_samples(a.common.n)?;
    let n = a.common.n;
    let curve_args = a.d.is_some() || a.k.is_some();
    let circle_args = a.c1.is_some() || a.c2.is_some();
    let sources = [
        a.input.is_some(),
        a.figure.is_some(),
        curve_args,
        circle_args,
    ];
    if sources.iter().filter(|&&s| s).count() != 1 {
        return invalid("render needs exactly one of: INPUT file, --figure, --d/--k, or --c1/--c2");
    }
    let scene = if let Some(path) = &a.input {
        scene_from_file(path)?
    } else if let Some(id) = a.figure {
        if a.geometry.is_some() {
            return invalid("--figure fixes the geometry; drop --geometry");
        }
        figure(id).scene(n)?
    } else {
        let Some(geometry) = a.geometry else {
            return invalid("--geometry is required with --d/--k or --c1/--c2");
        };
        let sign = geometry.into();
        if curve_args {
            let (Some(d), Some(k)) = (a.d, a.k) else {
                return invalid("both --d and --k are required");
            };
            Scene::from_curve_document(&curve_document(&spec(sign, d, k)?, n)?)?
        } else {
            let (Some(c1), Some(c2)) = (a.c1, a.c2) else {
                return invalid("both --c1 and --c2 are required");
            };
            let result = equioptic_curve(&circle(&c1, sign)?, &circle(&c2, sign)?, sign)?;
            Scene::from_equioptic_document(&equioptic_document(&result, n)?)?
        }
    };
    emit(a.common.out.as_deref(), &render_svg(&scene))?;
    Ok(ExitCode::SUCCESS)
}
