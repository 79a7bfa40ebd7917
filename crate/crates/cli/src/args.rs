use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use apollonian::CurvatureSign;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "apollonian",
    version,
    about = "Generalized Apollonius and equioptic curves in the hyperbolic and elliptic planes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical curve for focal distance d and circumference ratio k, as JSON.
    Apollonius(ApolloniusArgs),
    /// Equioptic curve of two circles, as JSON.
    Equioptic(EquiopticArgs),
    /// Run verification checks; exits 1 if any fails.
    Verify(VerifyArgs),
    /// Render a figure preset, a curve, or a scene/document JSON file to SVG.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Geometry {
    Hyperbolic,
    Elliptic,
}

impl From<Geometry> for CurvatureSign {
    fn from(g: Geometry) -> Self {
        match g {
            Geometry::Hyperbolic => CurvatureSign::Hyperbolic,
            Geometry::Elliptic => CurvatureSign::Elliptic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    #[value(name = "1l")]
    OneLeft,
    #[value(name = "1r")]
    OneRight,
    #[value(name = "2l")]
    TwoLeft,
    #[value(name = "2r")]
    TwoRight,
}

/// `x,y,r`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleArg {
    pub x: f64,
    pub y: f64,
    pub r: f64,
}

/// Decimal number, or the literal `pi/2`.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let v = if t.eq_ignore_ascii_case("pi/2") {
        FRAC_PI_2
    } else {
        t.parse::<f64>()
            .map_err(|_| format!("`{s}` is not a number"))?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

pub fn parse_circle(s: &str) -> Result<CircleArg, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [x, y, r] = parts.as_slice() else {
        return Err(format!("`{s}` must have the form x,y,r"));
    };
    Ok(CircleArg {
        x: parse_number(x)?,
        y: parse_number(y)?,
        r: parse_number(r)?,
    })
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Sample count.
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct ApolloniusArgs {
    #[arg(long, value_enum)]
    pub geometry: Geometry,
    /// Distance between the foci.
    #[arg(long, value_parser = parse_number)]
    pub d: f64,
    /// Circumference ratio.
    #[arg(long, value_parser = parse_number)]
    pub k: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct EquiopticArgs {
    #[arg(long, value_enum)]
    pub geometry: Geometry,
    /// First circle as centre-x,centre-y,radius in chart coordinates.
    #[arg(long, value_parser = parse_circle, allow_hyphen_values = true)]
    pub c1: CircleArg,
    #[arg(long, value_parser = parse_circle, allow_hyphen_values = true)]
    pub c2: CircleArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Restrict to one geometry; both by default.
    #[arg(long, value_enum)]
    pub geometry: Option<Geometry>,
    /// Comma-separated check names, or `all`.
    #[arg(long, default_value = "all")]
    pub sweep: String,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Focal distance for the scale sweep.
    #[arg(long, value_parser = parse_number, default_value = "1")]
    pub d: f64,
    /// Ratio for the scale sweep.
    #[arg(long, value_parser = parse_number, default_value = "2")]
    pub k: f64,
    #[command(flatten)]
    pub common: Common,
    /// Offset added to expected ratios; a negative control for the suite.
    #[arg(long, hide = true, value_parser = parse_number, default_value = "0")]
    pub inject_perturbation: f64,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Scene, curve or equioptic JSON file.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub figure: Option<FigureId>,
    #[arg(long, value_enum)]
    pub geometry: Option<Geometry>,
    #[arg(long, value_parser = parse_number)]
    pub d: Option<f64>,
    #[arg(long, value_parser = parse_number)]
    pub k: Option<f64>,
    #[arg(long, value_parser = parse_circle, allow_hyphen_values = true)]
    pub c1: Option<CircleArg>,
    #[arg(long, value_parser = parse_circle, allow_hyphen_values = true)]
    pub c2: Option<CircleArg>,
    #[command(flatten)]
    pub common: Common,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(parse_number("pi/2").unwrap(), FRAC_PI_2);
        assert_eq!(parse_number("0.65").unwrap(), 0.65);
        assert!(parse_number("inf").is_err());
        assert!(parse_number("x").is_err());
    }

    #[test]
    fn circles() {
        assert_eq!(
            parse_circle("-0.2,0.1,0.3").unwrap(),
            CircleArg {
                x: -0.2,
                y: 0.1,
                r: 0.3
            }
        );
        assert!(parse_circle("1,2").is_err());
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
