//! Flag parsing and validation into a [`RunConfig`].

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use polypi_core::catalog::{CatalogConfig, ChordSelector};
use polypi_core::geometry::Frame;
use polypi_core::search::{SearchParams, TargetConstant};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Unit {
    Side,
    Circumradius,
    Diameter,
}

impl From<Unit> for Frame {
    fn from(u: Unit) -> Frame {
        match u {
            Unit::Side => Frame::SideUnit,
            Unit::Circumradius => Frame::CircumradiusUnit,
            Unit::Diameter => Frame::DiameterUnit,
        }
    }
}

/// Search regular-polygon chord intersections for distances close to a constant.
#[derive(Debug, Parser)]
#[command(name = "polypi", version)]
pub struct Cli {
    /// Number of polygon vertices (at least 3).
    #[arg(long, default_value_t = 12)]
    pub n: u32,

    /// Chord lines to use: `all`, or `steps=5`, `steps=1,5`, ...
    #[arg(long, default_value = "all")]
    pub selector: String,

    /// Unit of length.
    #[arg(long, value_enum, default_value_t = Unit::Side)]
    pub unit: Unit,

    /// `pi`, a decimal literal, or a fraction p/q.
    #[arg(long, default_value = "pi")]
    pub target: String,

    /// Number of ranked distances to report.
    #[arg(long, default_value_t = 10)]
    pub top: usize,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write a diagram of the best hit to this file.
    #[arg(long)]
    pub svg: Option<PathBuf>,

    /// Minimum working precision in bits for certified evaluation.
    #[arg(long, default_value_t = 128)]
    pub bits: u32,

    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,

    /// Compare the best hit across these polygon sizes instead of a single run.
    #[arg(long, value_delimiter = ',')]
    pub compare: Option<Vec<u32>>,

    /// Load the catalog from this JSON file if it matches, else build and save it.
    #[arg(long)]
    pub catalog_cache: Option<PathBuf>,

    /// Use only chord crossings as endpoints, not the polygon vertices.
    #[arg(long)]
    pub no_vertices: bool,

    /// Half-width of the double-precision prefilter around the target.
    #[arg(long, default_value_t = 0.05)]
    pub window: f64,

    /// Fractional digits printed for each distance.
    #[arg(long, default_value_t = 20)]
    pub places: u32,
}

/// Validated settings for one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: u32,
    pub selector: ChordSelector,
    pub unit: Frame,
    pub target: TargetConstant,
    pub top_k: usize,
    pub format: Format,
    pub svg_path: Option<PathBuf>,
    pub precision_bits: u32,
    pub jobs: usize,
    pub compare: Option<Vec<u32>>,
    pub catalog_cache_path: Option<PathBuf>,
    pub include_vertices: bool,
    pub prune_window: f64,
    pub decimal_places: u32,
}

impl RunConfig {
    pub fn catalog_config(&self) -> CatalogConfig {
        CatalogConfig::new(self.n)
            .with_selector(self.selector.clone())
            .with_frame(self.unit)
            .with_vertices(self.include_vertices)
    }

    pub fn search_params(&self) -> SearchParams {
        SearchParams {
            top_k: self.top_k,
            prune_window: self.prune_window,
            unit: self.unit,
            min_bits: self.precision_bits,
            decimal_places: self.decimal_places,
        }
    }
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self, CliError> {
        let selector = ChordSelector::parse(&cli.selector).map_err(|e| CliError::usage("--selector", e.to_string()))?;
        let sizes: Vec<u32> = cli.compare.clone().unwrap_or_else(|| vec![cli.n]);
        if sizes.is_empty() {
            return Err(CliError::usage("--compare", "empty list"));
        }
        let flag = if cli.compare.is_some() { "--compare" } else { "--n" };
        for &n in &sizes {
            if n < 3 {
                return Err(CliError::usage(flag, format!("polygon size {n} is below 3")));
            }
            selector
                .validate(n)
                .map_err(|e| CliError::usage("--selector", format!("{e} (n = {n})")))?;
        }
        if cli.compare.is_some() && cli.svg.is_some() {
            return Err(CliError::usage("--svg", "not available with --compare"));
        }
        if cli.compare.is_some() && cli.catalog_cache.is_some() {
            return Err(CliError::usage("--catalog-cache", "not available with --compare"));
        }
        let target = TargetConstant::parse(&cli.target).map_err(|e| CliError::usage("--target", e.to_string()))?;
        if cli.top == 0 {
            return Err(CliError::usage("--top", "must be at least 1"));
        }
        if cli.bits < 8 {
            return Err(CliError::usage("--bits", "must be at least 8"));
        }
        if cli.window.is_nan() || cli.window <= 0.0 {
            return Err(CliError::usage("--window", "must be positive"));
        }
        if cli.places > 1000 {
            return Err(CliError::usage("--places", "at most 1000"));
        }
        Ok(RunConfig {
            n: cli.n,
            selector,
            unit: cli.unit.into(),
            target,
            top_k: cli.top,
            format: cli.format,
            svg_path: cli.svg,
            precision_bits: cli.bits,
            jobs: cli.jobs,
            compare: cli.compare,
            catalog_cache_path: cli.catalog_cache,
            include_vertices: !cli.no_vertices,
            prune_window: cli.window,
            decimal_places: cli.places,
        })
    }
}

/// Outcome of parsing the command line.
#[derive(Debug)]
pub enum Parsed {
    Run(Box<RunConfig>),
    /// `--help` or `--version`: print and exit successfully.
    Info(String),
}

pub fn parse_args<I, T>(args: I) -> Result<Parsed, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => Ok(Parsed::Run(Box::new(RunConfig::try_from(cli)?))),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                Ok(Parsed::Info(e.to_string()))
            }
            _ => {
                let flag = e
                    .get(clap::error::ContextKind::InvalidArg)
                    .map(|v| v.to_string())
                    .unwrap_or_else(|| "arguments".to_string());
                let rendered = e.to_string();
                let first = rendered.lines().next().unwrap_or_default();
                Err(CliError::Usage {
                    flag: known_flag(&flag),
                    message: first.trim_start_matches("error: ").to_string(),
                })
            }
        },
    }
}

/// Flag names reported by clap, mapped onto the static names used in errors.
fn known_flag(s: &str) -> &'static str {
    const KNOWN: [&str; 14] = [
        "--n",
        "--selector",
        "--unit",
        "--target",
        "--top",
        "--format",
        "--svg",
        "--bits",
        "--jobs",
        "--compare",
        "--catalog-cache",
        "--no-vertices",
        "--window",
        "--places",
    ];
    KNOWN
        .iter()
        .find(|k| {
            s.starts_with(*k)
                && s[k.len()..]
                    .chars()
                    .next()
                    .is_none_or(|c| !c.is_ascii_alphanumeric() && c != '-')
        })
        .copied()
        .unwrap_or("arguments")
}
