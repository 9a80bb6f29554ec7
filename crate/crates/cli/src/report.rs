//! The serialisable run report and its text, JSON and CSV renderings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use polypi_core::catalog::{Catalog, PointKind};
use polypi_core::numberfield::{FieldDescriptor, SurdForm};
use polypi_core::search::{render_decimal, Hit};

use crate::config::RunConfig;
use crate::error::CliError;

pub const REPORT_VERSION: u32 = 1;

/// Fixed CSV header.
pub const CSV_COLUMNS: [&str; 12] = [
    "n",
    "unit",
    "p_id",
    "q_id",
    "decimal",
    "abs_error_hi",
    "digits",
    "complexity",
    "surd",
    "minpoly",
    "p_provenance",
    "q_provenance",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format_version: u32,
    pub config: ConfigEcho,
    /// Present for single-polygon runs.
    pub field: Option<FieldSummary>,
    pub catalog: Option<CatalogStats>,
    pub hits: Vec<HitRecord>,
    /// One row per polygon size in comparison runs.
    pub comparison: Vec<ComparisonRow>,
    pub notes: Vec<String>,
    /// Execution details; the only part allowed to differ between identical runs.
    pub timing: Timing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub n: Vec<u32>,
    pub selector: String,
    pub unit: String,
    pub target: String,
    pub top_k: usize,
    pub precision_bits: u32,
    pub include_vertices: bool,
    pub prune_window: f64,
    pub decimal_places: u32,
}

impl ConfigEcho {
    pub fn new(config: &RunConfig) -> Self {
        ConfigEcho {
            n: config.compare.clone().unwrap_or_else(|| vec![config.n]),
            selector: config.selector.to_string(),
            unit: config.unit.to_string(),
            target: config.target.name(),
            top_k: config.top_k,
            precision_bits: config.precision_bits,
            include_vertices: config.include_vertices,
            prune_window: config.prune_window,
            decimal_places: config.decimal_places,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSummary {
    /// Coordinates live in Q(2cos(2π/conductor)).
    pub conductor: u64,
    pub degree: usize,
    pub minpoly: String,
}

impl FieldSummary {
    pub fn new(field: &FieldDescriptor) -> Self {
        FieldSummary {
            conductor: field.conductor(),
            degree: field.degree(),
            minpoly: field.minpoly().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogStats {
    pub lines: usize,
    pub points: usize,
    pub vertices: usize,
    pub crossings: usize,
}

impl CatalogStats {
    pub fn new(catalog: &Catalog) -> Self {
        let crossings = catalog.crossing_count();
        CatalogStats {
            lines: catalog.lines.len(),
            points: catalog.points.len(),
            vertices: catalog.points.len() - crossings,
            crossings,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Endpoint {
    pub id: usize,
    /// Vertex index, or `None` for a chord crossing.
    pub vertex: Option<u32>,
    /// Chord lines through the point, as vertex index pairs.
    pub provenance: Vec<[u32; 2]>,
    /// Coordinates from 64-bit certified midpoints.
    pub approx: [f64; 2],
}

impl Endpoint {
    fn new(catalog: &Catalog, id: usize) -> Self {
        let p = catalog.point(id);
        Endpoint {
            id,
            vertex: match p.kind {
                PointKind::Vertex(k) => Some(k),
                PointKind::Crossing => None,
            },
            provenance: p
                .provenance
                .iter()
                .map(|&l| {
                    let r = catalog.line(l);
                    [r.i, r.j]
                })
                .collect(),
            approx: [p.approx.0, p.approx.1],
        }
    }

    pub fn provenance_text(&self) -> String {
        let parts: Vec<String> = self.provenance.iter().map(|[i, j]| format!("{i}-{j}")).collect();
        parts.join(";")
    }

    pub fn label(&self) -> String {
        match self.vertex {
            Some(k) => format!("A{k}"),
            None => format!("P{}", self.id),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HitRecord {
    /// 1-based position in the ranking.
    pub rank: usize,
    pub p: Endpoint,
    pub q: Endpoint,
    /// Squared distance in the power basis of 2cos(2π/conductor), lowest degree first.
    pub sq_value: Vec<String>,
    /// The distance in closed form.
    pub surd: String,
    /// Minimal polynomial of the squared distance.
    pub minpoly: String,
    /// Its integer coefficients, leading term first.
    pub minpoly_coefficients: Vec<String>,
    pub decimal: String,
    /// Outward-rounded bounds on |distance − target|.
    pub abs_error_lo: String,
    pub abs_error_hi: String,
    pub precision_bits: u32,
    pub digits: u32,
    pub complexity: u32,
    /// Point pairs realising exactly this distance.
    pub pair_count: usize,
}

impl HitRecord {
    pub fn new(catalog: &Catalog, hit: &Hit, rank: usize, places: u32) -> Self {
        let coeffs = hit.minpoly.coefficients();
        HitRecord {
            rank,
            p: Endpoint::new(catalog, hit.p_id),
            q: Endpoint::new(catalog, hit.q_id),
            sq_value: hit.sq_value.coeffs().iter().map(|c| c.to_string()).collect(),
            surd: surd_string(hit, places),
            minpoly: hit.minpoly.to_string(),
            minpoly_coefficients: coeffs.iter().rev().map(BigInt::to_string).collect(),
            decimal: hit.decimal.clone(),
            abs_error_lo: scientific(hit.abs_error.lo(), 6, false),
            abs_error_hi: scientific(hit.abs_error.hi(), 6, true),
            precision_bits: hit.bits,
            digits: hit.digits,
            complexity: hit.complexity,
            pair_count: hit.pair_count,
        }
    }

    fn csv_row(&self, n: u32, unit: &str) -> Vec<String> {
        vec![
            n.to_string(),
            unit.to_string(),
            self.p.id.to_string(),
            self.q.id.to_string(),
            self.decimal.clone(),
            self.abs_error_hi.clone(),
            self.digits.to_string(),
            self.complexity.to_string(),
            self.surd.clone(),
            self.minpoly.clone(),
            self.p.provenance_text(),
            self.q.provenance_text(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub n: u32,
    pub constructible: bool,
    pub field: FieldSummary,
    pub catalog: CatalogStats,
    pub best: Option<HitRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub jobs: usize,
    pub threads: usize,
    /// `built` or `cache`.
    pub catalog_source: String,
    pub catalog_ms: f64,
    pub search_ms: f64,
    pub total_ms: f64,
}

/// `sqrt(a ± b*sqrt(d))` for quadratic squared distances, else
/// `sqrt(root([coefficients], approx=<squared value>))`.
pub fn surd_string(hit: &Hit, places: u32) -> String {
    match &hit.surd {
        SurdForm::Quadratic(s) if s.is_rational() => format!("sqrt({})", s.a()),
        SurdForm::Quadratic(s) => {
            let sign = if s.b().is_negative() { '-' } else { '+' };
            format!("sqrt({} {} {}*sqrt({}))", s.a(), sign, s.b().abs(), s.d())
        }
        SurdForm::NotQuadratic => {
            let coeffs: Vec<String> = hit.minpoly.coefficients().iter().rev().map(BigInt::to_string).collect();
            let (approx, _) = render_decimal(&hit.sq_value, places, hit.bits);
            format!("sqrt(root([{}], approx={approx}))", coeffs.join(", "))
        }
    }
}

/// `x` (nonnegative) in scientific notation with `sig` significant digits,
/// rounded up or down.
pub fn scientific(x: &BigRational, sig: u32, up: bool) -> String {
    assert!(sig >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    assert!(x.is_positive(), "bounds are nonnegative");
    let pow10 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(BigInt::from(10).pow(e as u32))
        } else {
            BigRational::one() / BigRational::from_integer(BigInt::from(10).pow((-e) as u32))
        }
    };
    // Estimate the decimal exponent from bit lengths, then correct exactly.
    let bits = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut e = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    while pow10(e) > *x {
        e -= 1;
    }
    while pow10(e + 1) <= *x {
        e += 1;
    }
    let scaled = x / pow10(e - sig as i64 + 1);
    let mut m = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    if m == BigInt::from(10).pow(sig) {
        m /= 10;
        e += 1;
    }
    let digits = m.to_string();
    let (head, tail) = digits.split_at(1);
    let tail = tail.trim_end_matches('0');
    if tail.is_empty() {
        format!("{head}e{e}")
    } else {
        format!("{head}.{tail}e{e}")
    }
}

impl Report {
    pub fn to_json(&self) -> Result<String, CliError> {
        serde_json::to_string_pretty(self).map_err(|e| CliError::Encode(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Report, CliError> {
        serde_json::from_str(s).map_err(|e| CliError::Encode(e.to_string()))
    }

    /// Rows with [`CSV_COLUMNS`]: ranked hits, or one best hit per size.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let enc = |e: csv::Error| CliError::Encode(e.to_string());
        w.write_record(CSV_COLUMNS).map_err(enc)?;
        let unit = self.config.unit.as_str();
        if self.comparison.is_empty() {
            let n = self.config.n[0];
            for h in &self.hits {
                w.write_record(h.csv_row(n, unit)).map_err(enc)?;
            }
        } else {
            for row in &self.comparison {
                if let Some(h) = &row.best {
                    w.write_record(h.csv_row(row.n, unit)).map_err(enc)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Encode(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Encode(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        let vertices = if c.include_vertices {
            "with vertices"
        } else {
            "crossings only"
        };
        let _ = writeln!(
            s,
            "target {}  unit {}  selector {}  {}",
            c.target, c.unit, c.selector, vertices
        );
        if let (Some(f), Some(k)) = (&self.field, &self.catalog) {
            let _ = writeln!(
                s,
                "n = {}: field Q(2cos(2pi/{})) of degree {}, minimal polynomial {}",
                c.n[0], f.conductor, f.degree, f.minpoly
            );
            let _ = writeln!(
                s,
                "catalog: {} lines, {} points ({} vertices, {} crossings)",
                k.lines, k.points, k.vertices, k.crossings
            );
            let _ = writeln!(s);
            let _ = writeln!(
                s,
                "{:>4}  {:<24} {:>12}  {:>6}  {:>4}  {:<10} closed form",
                "rank", "distance", "error <=", "digits", "cx", "endpoints"
            );
            for h in &self.hits {
                let _ = writeln!(
                    s,
                    "{:>4}  {:<24} {:>12}  {:>6}  {:>4}  {:<10} {}",
                    h.rank,
                    h.decimal,
                    h.abs_error_hi,
                    h.digits,
                    h.complexity,
                    format!("{}-{}", h.p.label(), h.q.label()),
                    h.surd
                );
            }
        } else {
            let _ = writeln!(
                s,
                "{:>4}  {:<6} {:>6} {:>7}  {:<24} {:>12}  {:>6}  closed form",
                "n", "constr", "lines", "points", "best distance", "error <=", "digits"
            );
            for r in &self.comparison {
                let (dec, err, dig, surd) = match &r.best {
                    Some(h) => (
                        h.decimal.as_str(),
                        h.abs_error_hi.as_str(),
                        h.digits.to_string(),
                        h.surd.as_str(),
                    ),
                    None => ("-", "-", "-".to_string(), "-"),
                };
                let _ = writeln!(
                    s,
                    "{:>4}  {:<6} {:>6} {:>7}  {:<24} {:>12}  {:>6}  {}",
                    r.n,
                    if r.constructible { "yes" } else { "no" },
                    r.catalog.lines,
                    r.catalog.points,
                    dec,
                    err,
                    dig,
                    surd
                );
            }
        }
        for note in &self.notes {
            let _ = writeln!(s, "note: {note}");
        }
        let t = &self.timing;
        let _ = writeln!(
            s,
            "time: catalog {:.1} ms ({}), search {:.1} ms, total {:.1} ms on {} thread(s)",
            t.catalog_ms, t.catalog_source, t.search_ms, t.total_ms, t.threads
        );
        s
    }
}
