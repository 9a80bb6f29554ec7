//! JSON persistence of catalogs so repeated runs skip the intersection pass.

use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use polypi_core::catalog::{Catalog, CatalogConfig, PointKind};
use polypi_core::geometry::Point;
use polypi_core::numberfield::FieldElement;

use crate::error::CliError;

pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheFile {
    pub format_version: u32,
    pub n: u32,
    pub selector: String,
    pub unit: String,
    pub include_vertices: bool,
    pub conductor: u64,
    pub points: Vec<CachedPoint>,
}

/// Exact coordinates as rational strings in the power basis, lowest degree first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CachedPoint {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub vertex: Option<u32>,
    pub provenance: Vec<usize>,
}

impl CacheFile {
    pub fn from_catalog(catalog: &Catalog) -> Self {
        let coeffs = |e: &FieldElement| e.coeffs().iter().map(|c| c.to_string()).collect();
        CacheFile {
            format_version: CACHE_VERSION,
            n: catalog.config.n,
            selector: catalog.config.selector.to_string(),
            unit: catalog.config.frame.to_string(),
            include_vertices: catalog.config.include_vertices,
            conductor: catalog.field.conductor(),
            points: catalog
                .points
                .iter()
                .map(|p| CachedPoint {
                    x: coeffs(&p.point.x),
                    y: coeffs(&p.point.y),
                    vertex: match p.kind {
                        PointKind::Vertex(k) => Some(k),
                        PointKind::Crossing => None,
                    },
                    provenance: p.provenance.clone(),
                })
                .collect(),
        }
    }

    /// Whether this file was written for `config`.
    pub fn matches(&self, config: &CatalogConfig) -> bool {
        self.format_version == CACHE_VERSION
            && self.n == config.n
            && self.selector == config.selector.to_string()
            && self.unit == config.frame.to_string()
            && self.include_vertices == config.include_vertices
    }

    /// Rebuilds the catalog; every stored incidence is rechecked exactly.
    pub fn to_catalog(&self, config: &CatalogConfig, path: &Path) -> Result<Catalog, CliError> {
        let bad = |message: String| CliError::Cache {
            path: path.to_path_buf(),
            message,
        };
        let field = polypi_core::numberfield::FieldDescriptor::for_ngon(config.n as u64);
        if field.conductor() != self.conductor {
            return Err(bad(format!(
                "conductor {} does not match {}",
                self.conductor,
                field.conductor()
            )));
        }
        let element = |c: &[String]| -> Result<FieldElement, CliError> {
            if c.len() != field.degree() {
                return Err(bad(format!(
                    "expected {} coefficients, found {}",
                    field.degree(),
                    c.len()
                )));
            }
            let parsed = c
                .iter()
                .map(|s| s.parse::<BigRational>().map_err(|_| bad(format!("bad rational `{s}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FieldElement::from_coeffs(&field, parsed))
        };
        let mut stored = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let point = Point::new(element(&p.x)?, element(&p.y)?);
            let kind = p.vertex.map_or(PointKind::Crossing, PointKind::Vertex);
            stored.push((point, kind, p.provenance.clone()));
        }
        Catalog::from_parts(config, stored).map_err(|e| bad(e.to_string()))
    }
}

/// Where a catalog came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Built,
    Cache,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Built => "built",
            Source::Cache => "cache",
        }
    }
}

/// Loads the catalog from `path` when it holds one for `config`; otherwise
/// builds it and writes the file.
pub fn load_or_build(path: &Path, config: &CatalogConfig) -> Result<(Catalog, Source), CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(io)?;
        let file: CacheFile = serde_json::from_str(&text).map_err(|e| CliError::Cache {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        if file.matches(config) {
            return Ok((file.to_catalog(config, path)?, Source::Cache));
        }
    }
    let catalog = Catalog::build(config).map_err(CliError::internal("catalog"))?;
    let text =
        serde_json::to_string(&CacheFile::from_catalog(&catalog)).map_err(|e| CliError::Encode(e.to_string()))?;
    std::fs::write(path, text).map_err(io)?;
    Ok((catalog, Source::Built))
}
