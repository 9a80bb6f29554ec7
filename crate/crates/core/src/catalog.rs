//! Chord lines of a regular polygon and the deduplicated set of their
//! intersection points.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{ngon_vertices, Frame, Intersection, Line, Point};
use crate::numberfield::FieldDescriptor;
use crate::par;

/// Which chord lines take part in the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ChordSelector {
    All,
    /// Only chords whose circular step is in the set; `{k}` gives the edge
    /// lines of the star polygon {n/k}.
    Steps(BTreeSet<u32>),
}

impl ChordSelector {
    pub fn steps<I: IntoIterator<Item = u32>>(steps: I) -> Self {
        ChordSelector::Steps(steps.into_iter().collect())
    }

    /// Parses `all`, `steps=5` or `steps=1,5`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "all" {
            return Ok(ChordSelector::All);
        }
        let list = s
            .strip_prefix("steps=")
            .ok_or_else(|| Error::InvalidConfig(format!("unknown selector `{s}`")))?;
        let steps = list
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidConfig(format!("bad step `{t}` in selector")))
            })
            .collect::<Result<BTreeSet<u32>>>()?;
        Ok(ChordSelector::Steps(steps))
    }

    pub fn validate(&self, n: u32) -> Result<()> {
        if let ChordSelector::Steps(steps) = self {
            if steps.is_empty() {
                return Err(Error::InvalidConfig("empty step set".into()));
            }
            if let Some(bad) = steps.iter().find(|&&s| s == 0 || s > n / 2) {
                return Err(Error::InvalidConfig(format!(
                    "step {bad} out of range 1..={} for n = {n}",
                    n / 2
                )));
            }
        }
        Ok(())
    }

    pub fn includes(&self, step: u32) -> bool {
        match self {
            ChordSelector::All => true,
            ChordSelector::Steps(s) => s.contains(&step),
        }
    }
}

impl fmt::Display for ChordSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChordSelector::All => f.write_str("all"),
            ChordSelector::Steps(s) => {
                let parts: Vec<String> = s.iter().map(u32::to_string).collect();
                write!(f, "steps={}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CatalogConfig {
    pub n: u32,
    pub selector: ChordSelector,
    pub frame: Frame,
    pub include_vertices: bool,
}

impl CatalogConfig {
    /// All chords, side-unit frame, vertices included.
    pub fn new(n: u32) -> Self {
        CatalogConfig {
            n,
            selector: ChordSelector::All,
            frame: Frame::SideUnit,
            include_vertices: true,
        }
    }

    pub fn with_selector(mut self, selector: ChordSelector) -> Self {
        self.selector = selector;
        self
    }

    pub fn with_frame(mut self, frame: Frame) -> Self {
        self.frame = frame;
        self
    }

    pub fn with_vertices(mut self, include: bool) -> Self {
        self.include_vertices = include;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::InvalidConfig(format!("n = {} is below 3", self.n)));
        }
        self.selector.validate(self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineRecord {
    pub id: usize,
    pub i: u32,
    pub j: u32,
    pub step: u32,
    pub line: Line,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointKind {
    Vertex(u32),
    Crossing,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogPoint {
    pub id: usize,
    pub point: Point,
    pub kind: PointKind,
    /// Sorted ids of every selected line through the point.
    pub provenance: Vec<usize>,
    /// Midpoint of a 64-bit enclosure of each coordinate.
    pub approx: (f64, f64),
}

impl CatalogPoint {
    pub fn is_vertex(&self) -> bool {
        matches!(self.kind, PointKind::Vertex(_))
    }
}

/// Gauss–Wantzel: n = 2^a times a product of distinct Fermat primes.
pub fn is_constructible(n: u64) -> bool {
    const FERMAT_PRIMES: [u64; 5] = [3, 5, 17, 257, 65537];
    if n < 3 {
        return false;
    }
    let mut m = n >> n.trailing_zeros();
    for p in FERMAT_PRIMES {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
    }
    m == 1
}

pub fn circular_step(n: u32, i: u32, j: u32) -> u32 {
    let d = i.abs_diff(j);
    d.min(n - d)
}

/// One record per selected vertex pair, ordered by (i, j).
pub fn enumerate_lines(field: &Arc<FieldDescriptor>, config: &CatalogConfig, vertices: &[Point]) -> Vec<LineRecord> {
    let n = config.n;
    let pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| config.selector.includes(circular_step(n, i, j)))
        .collect();
    debug_assert!(vertices.iter().all(|v| v.x.field().conductor() == field.conductor()));
    let lines = par::map_slice(&pairs, |&(i, j)| {
        Line::through(&vertices[i as usize], &vertices[j as usize]).expect("polygon vertices are distinct")
    });
    pairs
        .into_iter()
        .zip(lines)
        .enumerate()
        .map(|(id, ((i, j), line))| LineRecord {
            id,
            i,
            j,
            step: circular_step(n, i, j),
            line,
        })
        .collect()
}

/// Every exact intersection point of the selected chord lines, plus vertices
/// if requested.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub config: CatalogConfig,
    pub field: Arc<FieldDescriptor>,
    pub vertices: Vec<Point>,
    pub lines: Vec<LineRecord>,
    pub points: Vec<CatalogPoint>,
}

impl Catalog {
    pub fn build(config: &CatalogConfig) -> Result<Catalog> {
        config.validate()?;
        let n = config.n;
        let field = FieldDescriptor::for_ngon(n as u64);
        let vertices = ngon_vertices(&field, n as u64, config.frame);
        let lines = enumerate_lines(&field, config, &vertices);

        let crossings = par::flat_map_range(lines.len(), |a| {
            let mut out = Vec::new();
            for b in a + 1..lines.len() {
                if let Intersection::Point(p) = lines[a].line.intersect(&lines[b].line) {
                    out.push((p, a, b));
                }
            }
            out
        });

        let mut merged: HashMap<Point, BTreeSet<usize>> = HashMap::new();
        for (p, a, b) in crossings {
            let e = merged.entry(p).or_default();
            e.insert(a);
            e.insert(b);
        }
        let vertex_index: HashMap<&Point, u32> = vertices.iter().enumerate().map(|(k, v)| (v, k as u32)).collect();
        if config.include_vertices {
            for v in &vertices {
                merged.entry(v.clone()).or_default();
            }
        } else {
            merged.retain(|p, _| !vertex_index.contains_key(p));
        }

        let mut entries: Vec<(Point, BTreeSet<usize>)> = merged.into_iter().collect();
        // Lines through a vertex are exactly the chords ending there.
        for (p, prov) in entries.iter_mut() {
            if let Some(&k) = vertex_index.get(&*p) {
                prov.extend(lines.iter().filter(|l| l.i == k || l.j == k).map(|l| l.id));
            }
        }
        let approx = par::map_slice(&entries, |(p, _)| p.to_f64());
        let mut keyed: Vec<((f64, f64), Point, BTreeSet<usize>)> = entries
            .into_iter()
            .zip(approx)
            .map(|((p, prov), a)| (a, p, prov))
            .collect();
        keyed.sort_by(|l, r| compare_points(l.0, &l.1, r.0, &r.1));

        let points = keyed
            .into_iter()
            .enumerate()
            .map(|(id, (approx, point, prov))| CatalogPoint {
                id,
                kind: vertex_index
                    .get(&point)
                    .map_or(PointKind::Crossing, |&k| PointKind::Vertex(k)),
                point,
                provenance: prov.into_iter().collect(),
                approx,
            })
            .collect();

        Ok(Catalog {
            config: config.clone(),
            field,
            vertices,
            lines,
            points,
        })
    }

    /// Reassembles a catalog from stored points, recomputing lines and
    /// checking every stored incidence exactly.
    pub fn from_parts(config: &CatalogConfig, stored: Vec<(Point, PointKind, Vec<usize>)>) -> Result<Catalog> {
        config.validate()?;
        let field = FieldDescriptor::for_ngon(config.n as u64);
        let vertices = ngon_vertices(&field, config.n as u64, config.frame);
        let lines = enumerate_lines(&field, config, &vertices);
        let mut points = Vec::with_capacity(stored.len());
        for (id, (point, kind, provenance)) in stored.into_iter().enumerate() {
            if point.x.field().conductor() != field.conductor() {
                return Err(Error::InvalidConfig("stored point from a different field".into()));
            }
            for &l in &provenance {
                let ok = lines.get(l).is_some_and(|r| r.line.contains(&point));
                if !ok {
                    return Err(Error::InvalidConfig(format!("stored point {id} is not on line {l}")));
                }
            }
            let approx = point.to_f64();
            points.push(CatalogPoint {
                id,
                point,
                kind,
                provenance,
                approx,
            });
        }
        Ok(Catalog {
            config: config.clone(),
            field,
            vertices,
            lines,
            points,
        })
    }

    pub fn n(&self) -> u32 {
        self.config.n
    }

    pub fn point(&self, id: usize) -> &CatalogPoint {
        &self.points[id]
    }

    pub fn line(&self, id: usize) -> &LineRecord {
        &self.lines[id]
    }

    /// Id of the chord line through vertices `i` and `j`, if selected.
    pub fn line_between(&self, i: u32, j: u32) -> Option<usize> {
        let (i, j) = (i.min(j), i.max(j));
        self.lines.binary_search_by(|l| (l.i, l.j).cmp(&(i, j))).ok()
    }

    pub fn find_point(&self, p: &Point) -> Option<&CatalogPoint> {
        self.points.iter().find(|c| &c.point == p)
    }

    pub fn crossing_count(&self) -> usize {
        self.points.iter().filter(|p| !p.is_vertex()).count()
    }
}

pub fn build_catalog(config: &CatalogConfig) -> Result<Catalog> {
    Catalog::build(config)
}

fn compare_points(la: (f64, f64), lp: &Point, ra: (f64, f64), rp: &Point) -> Ordering {
    la.0.total_cmp(&ra.0)
        .then(la.1.total_cmp(&ra.1))
        .then_with(|| lp.x.cmp_value(&rp.x))
        .then_with(|| lp.y.cmp_value(&rp.y))
}
