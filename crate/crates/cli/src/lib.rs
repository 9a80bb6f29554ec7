//! Command-line front end: runs the catalog and search pipeline and renders
//! reports as text, JSON or CSV, with optional SVG diagrams.

pub mod cache;
pub mod config;
pub mod error;
pub mod report;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use polypi_core::catalog::{is_constructible, Catalog, CatalogConfig};
use polypi_core::par;
use polypi_core::search::scan_distances;

pub use config::{parse_args, Format, Parsed, RunConfig};
pub use error::CliError;
pub use report::{CatalogStats, ComparisonRow, FieldSummary, HitRecord, Report, Timing};
pub use svg::emit_svg;

/// A finished run: the report plus the SVG document, if one was requested.
pub struct Outcome {
    pub report: Report,
    pub svg: Option<String>,
}

fn millis(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn ranked(catalog: &Catalog, config: &RunConfig) -> Result<Vec<HitRecord>, CliError> {
    let hits =
        scan_distances(catalog, &config.target, &config.search_params()).map_err(CliError::internal("search"))?;
    Ok(hits
        .iter()
        .enumerate()
        .map(|(i, h)| HitRecord::new(catalog, h, i + 1, config.decimal_places))
        .collect())
}

fn single(config: &RunConfig) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let catalog_config = config.catalog_config();
    let (catalog, source) = match &config.catalog_cache_path {
        Some(path) => cache::load_or_build(path, &catalog_config)?,
        None => (
            Catalog::build(&catalog_config).map_err(CliError::internal("catalog"))?,
            cache::Source::Built,
        ),
    };
    let catalog_ms = millis(start);
    let search_start = Instant::now();
    let hits = ranked(&catalog, config)?;
    let search_ms = millis(search_start);
    let svg = config.svg_path.as_ref().map(|_| emit_svg(&catalog, hits.first()));
    let report = Report {
        format_version: report::REPORT_VERSION,
        config: report::ConfigEcho::new(config),
        field: Some(FieldSummary::new(&catalog.field)),
        catalog: Some(CatalogStats::new(&catalog)),
        hits,
        comparison: Vec::new(),
        notes: Vec::new(),
        timing: Timing {
            jobs: config.jobs,
            threads: par::current_threads(),
            catalog_source: source.name().to_string(),
            catalog_ms,
            search_ms,
            total_ms: millis(start),
        },
    };
    Ok(Outcome { report, svg })
}

fn comparison(config: &RunConfig, sizes: &[u32]) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (mut catalog_ms, mut search_ms) = (0.0, 0.0);
    let per_n = RunConfig {
        top_k: 1,
        ..config.clone()
    };
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let wrap = |module: &'static str| {
            move |e| CliError::Internal {
                module,
                source: polypi_core::Error::ForPolygon { n, source: Box::new(e) },
            }
        };
        let t = Instant::now();
        let catalog = Catalog::build(&CatalogConfig {
            n,
            ..per_n.catalog_config()
        })
        .map_err(wrap("catalog"))?;
        catalog_ms += millis(t);
        let t = Instant::now();
        let hits = scan_distances(&catalog, &per_n.target, &per_n.search_params()).map_err(wrap("search"))?;
        search_ms += millis(t);
        rows.push(ComparisonRow {
            n,
            constructible: is_constructible(n as u64),
            field: FieldSummary::new(&catalog.field),
            catalog: CatalogStats::new(&catalog),
            best: hits
                .first()
                .map(|h| HitRecord::new(&catalog, h, 1, config.decimal_places)),
        });
    }
    let mut notes = vec![format!(
        "distances are measured in {} units for every polygon size",
        config.unit
    )];
    if !config.include_vertices {
        notes.push("polygon vertices are excluded as endpoints".to_string());
    }
    let report = Report {
        format_version: report::REPORT_VERSION,
        config: report::ConfigEcho::new(config),
        field: None,
        catalog: None,
        hits: Vec::new(),
        comparison: rows,
        notes,
        timing: Timing {
            jobs: config.jobs,
            threads: par::current_threads(),
            catalog_source: cache::Source::Built.name().to_string(),
            catalog_ms,
            search_ms,
            total_ms: millis(start),
        },
    };
    Ok(Outcome { report, svg: None })
}

/// Runs the pipeline for `config` on a pool of `config.jobs` workers.
pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    par::with_jobs(config.jobs, || match &config.compare {
        Some(sizes) => comparison(config, sizes),
        None => single(config),
    })
}

/// The rendered report for the configured format.
pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(report.to_text()),
        Format::Json => report.to_json().map(|mut s| {
            s.push('\n');
            s
        }),
        Format::Csv => report.to_csv(),
    }
}

fn run_inner(args: Vec<OsString>, out: &mut dyn Write) -> Result<(), CliError> {
    let config = match parse_args(args)? {
        Parsed::Info(text) => {
            let _ = write!(out, "{text}");
            return Ok(());
        }
        Parsed::Run(config) => config,
    };
    let outcome = execute(&config)?;
    if let (Some(path), Some(svg)) = (&config.svg_path, &outcome.svg) {
        std::fs::write(path, svg).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    let text = render(&outcome.report, config.format)?;
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

/// Entry point shared by the binary and tests: returns the process exit code
/// (0 success, 2 usage error, 1 internal error).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    match run_inner(args, out) {
        Ok(()) => 0,
        Err(e) => {
            let kind = match e {
                CliError::Usage { .. } => "usage error",
                _ => "error",
            };
            let _ = writeln!(err, "polypi: {kind}: {e}");
            e.exit_code()
        }
    }
}
