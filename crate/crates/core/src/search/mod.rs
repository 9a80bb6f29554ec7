//! Ranking catalog distances by closeness to a target constant.
//!
//! A double-precision pass keeps the point pairs whose distance lies within a
//! window around the target. Survivors get exact squared distances, which are
//! merged when equal, and certified error enclosures; the ranking order is then
//! certified by raising precision until neighbouring enclosures separate.

mod digits;
mod target;

use std::collections::HashMap;

pub use digits::{matching_digits, matching_digits_of, render_decimal, sqrt_decimal, Enclosable, SqrtOf, MAX_BITS};
pub use target::TargetConstant;

use crate::catalog::{is_constructible, Catalog, CatalogConfig, ChordSelector};
use crate::error::{Error, Result};
use crate::geometry::{squared_distance, Frame};
use crate::numberfield::{CertifiedInterval, FieldElement, IntPolynomial, SurdForm};
use crate::par;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchParams {
    pub top_k: usize,
    /// Half-width of the double-precision prefilter around the target.
    pub prune_window: f64,
    pub unit: Frame,
    /// Precision floor for certified evaluation.
    pub min_bits: u32,
    /// Fractional digits of `Hit::decimal`.
    pub decimal_places: u32,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            top_k: 10,
            prune_window: 0.05,
            unit: Frame::SideUnit,
            min_bits: 128,
            decimal_places: 20,
        }
    }
}

impl SearchParams {
    pub fn validate(&self) -> Result<()> {
        if self.top_k == 0 {
            return Err(Error::InvalidConfig("top_k must be positive".into()));
        }
        if self.prune_window.is_nan() || self.prune_window <= 0.0 {
            return Err(Error::InvalidConfig("prune window must be positive".into()));
        }
        if self.min_bits < 8 {
            return Err(Error::InvalidConfig("precision floor must be at least 8 bits".into()));
        }
        Ok(())
    }

    /// Same parameters with the prefilter disabled.
    pub fn unpruned(&self) -> Self {
        SearchParams {
            prune_window: f64::INFINITY,
            ..self.clone()
        }
    }
}

/// One distinct distance value, represented by its simplest point pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Hit {
    pub p_id: usize,
    pub q_id: usize,
    /// Exact squared distance in the catalog's unit.
    pub sq_value: FieldElement,
    pub surd: SurdForm,
    pub minpoly: IntPolynomial,
    pub decimal: String,
    /// Enclosure of |distance − target|.
    pub abs_error: CertifiedInterval,
    pub digits: u32,
    pub complexity: u32,
    /// Number of point pairs at exactly this distance.
    pub pair_count: usize,
    /// Precision behind both `decimal` and `abs_error`.
    pub bits: u32,
}

/// Distinct chord lines needed to pin down both endpoints: a vertex costs
/// nothing, a crossing two lines, and a line shared by both crossings counts once.
pub fn complexity(catalog: &Catalog, p_id: usize, q_id: usize) -> u32 {
    let p = catalog.point(p_id);
    let q = catalog.point(q_id);
    match (p.is_vertex(), q.is_vertex()) {
        (true, true) => 0,
        (true, false) | (false, true) => 2,
        (false, false) => {
            // Two distinct crossings share at most one line.
            let shared = p.provenance.iter().any(|l| q.provenance.binary_search(l).is_ok());
            if shared {
                3
            } else {
                4
            }
        }
    }
}

/// Certified |√sq − target| at `bits`.
fn error_enclosure(sq: &FieldElement, target: &TargetConstant, bits: u32) -> CertifiedInterval {
    let d = SqrtOf(sq).enclose(bits);
    let t = target.enclosure(bits);
    d.sub(&t).abs()
}

struct Candidate {
    p_id: usize,
    q_id: usize,
    sq: FieldElement,
    complexity: u32,
    pair_count: usize,
    bits: u32,
    error: CertifiedInterval,
}

fn rank_key(a: &Candidate, b: &Candidate) -> std::cmp::Ordering {
    a.error
        .hi()
        .cmp(b.error.hi())
        .then(a.complexity.cmp(&b.complexity))
        .then((a.p_id, a.q_id).cmp(&(b.p_id, b.q_id)))
}

/// Pairs `(i, j)`, i < j, whose approximate distance is within `window` of
/// `t`, plus the largest approximate error seen over all pairs.
fn prefilter(catalog: &Catalog, t: f64, window: f64) -> (Vec<(usize, usize)>, f64) {
    let pts: Vec<(f64, f64)> = catalog.points.iter().map(|p| p.approx).collect();
    let per_row = par::map_range(pts.len(), |i| {
        let (xi, yi) = pts[i];
        let mut keep = Vec::new();
        let mut worst: f64 = 0.0;
        for (j, &(xj, yj)) in pts.iter().enumerate().skip(i + 1) {
            let err = ((xi - xj).hypot(yi - yj) - t).abs();
            worst = worst.max(err);
            if err < window {
                keep.push((i, j));
            }
        }
        (keep, worst)
    });
    let worst = per_row.iter().map(|r| r.1).fold(0.0, f64::max);
    (per_row.into_iter().flat_map(|r| r.0).collect(), worst)
}

/// Exact values for the pairs, merged by equality, with certified errors.
fn evaluate(catalog: &Catalog, target: &TargetConstant, pairs: &[(usize, usize)], bits: u32) -> Vec<Candidate> {
    let values = par::map_slice(pairs, |&(i, j)| {
        squared_distance(&catalog.points[i].point, &catalog.points[j].point)
    });
    let mut groups: HashMap<FieldElement, (u32, usize, usize, usize)> = HashMap::new();
    for (&(i, j), sq) in pairs.iter().zip(values) {
        let c = complexity(catalog, i, j);
        groups
            .entry(sq)
            .and_modify(|e| {
                if (c, i, j) < (e.0, e.1, e.2) {
                    *e = (c, i, j, e.3);
                }
                e.3 += 1;
            })
            .or_insert((c, i, j, 1));
    }
    let mut reps: Vec<(FieldElement, (u32, usize, usize, usize))> = groups.into_iter().collect();
    reps.sort_by_key(|(_, (_, i, j, _))| (*i, *j));
    let errors = par::map_slice(&reps, |(sq, _)| error_enclosure(sq, target, bits));
    reps.into_iter()
        .zip(errors)
        .map(|((sq, (c, i, j, count)), error)| Candidate {
            p_id: i,
            q_id: j,
            sq,
            complexity: c,
            pair_count: count,
            bits,
            error,
        })
        .collect()
}

/// Raises precision on candidates whose enclosures leave the order of the top
/// `k` (and the boundary to the first excluded value) undecided.
fn certify_order(cands: &mut [Candidate], target: &TargetConstant, k: usize) {
    loop {
        cands.sort_by(rank_key);
        let m = k.min(cands.len());
        if m == 0 {
            return;
        }
        let mut refine = vec![false; cands.len()];
        for i in 0..m.saturating_sub(1) {
            if cands[i].error.hi() >= cands[i + 1].error.lo() {
                refine[i] = true;
                refine[i + 1] = true;
            }
        }
        let boundary = cands[m - 1].error.hi().clone();
        for (j, c) in cands.iter().enumerate().skip(m) {
            if c.error.lo() <= &boundary {
                refine[j] = true;
                refine[m - 1] = true;
            }
        }
        let todo: Vec<usize> = (0..cands.len())
            .filter(|&i| refine[i] && cands[i].bits < MAX_BITS)
            .collect();
        if todo.is_empty() {
            return;
        }
        let updated = par::map_slice(&todo, |&i| {
            let bits = cands[i].bits * 2;
            (bits, error_enclosure(&cands[i].sq, target, bits))
        });
        for (&i, (bits, err)) in todo.iter().zip(updated) {
            cands[i].bits = bits;
            cands[i].error = err;
        }
    }
}

fn finish(c: Candidate, target: &TargetConstant, params: &SearchParams) -> Hit {
    let (decimal, bits) = render_decimal(&SqrtOf(&c.sq), params.decimal_places, c.bits);
    let abs_error = if bits == c.bits {
        c.error
    } else {
        error_enclosure(&c.sq, target, bits)
    };
    Hit {
        p_id: c.p_id,
        q_id: c.q_id,
        surd: c.sq.as_quadratic_surd(),
        minpoly: c.sq.minpoly(),
        digits: matching_digits(&c.sq, target),
        decimal,
        abs_error,
        complexity: c.complexity,
        pair_count: c.pair_count,
        bits,
        sq_value: c.sq,
    }
}

/// Ranks the distinct distances of the catalog by certified distance to the
/// target and returns the best `params.top_k`.
pub fn scan_distances(catalog: &Catalog, target: &TargetConstant, params: &SearchParams) -> Result<Vec<Hit>> {
    params.validate()?;
    if catalog.points.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    if params.unit != catalog.config.frame {
        return Err(Error::InvalidConfig(format!(
            "search unit {} does not match catalog frame {}",
            params.unit, catalog.config.frame
        )));
    }
    let t = target.approx_f64();
    let mut window = params.prune_window;
    loop {
        let (pairs, worst) = prefilter(catalog, t, window);
        let everything = window > worst + 1e-6;
        let mut cands = evaluate(catalog, target, &pairs, params.min_bits);
        certify_order(&mut cands, target, params.top_k);
        let enough = cands.len() >= params.top_k && {
            let kth = cands[params.top_k - 1].error.hi_f64();
            kth <= window / 2.0
        };
        if enough || everything {
            cands.truncate(params.top_k);
            return Ok(cands.into_iter().map(|c| finish(c, target, params)).collect());
        }
        window *= 2.0;
    }
}

/// Best hit per polygon size, with constructibility flags.
#[derive(Clone, Debug, PartialEq)]
pub struct CompareRow {
    pub n: u32,
    pub constructible: bool,
    pub lines: usize,
    pub points: usize,
    pub best: Option<Hit>,
}

pub fn compare_across_n(
    n_list: &[u32],
    selector: &ChordSelector,
    include_vertices: bool,
    target: &TargetConstant,
    params: &SearchParams,
) -> Result<Vec<CompareRow>> {
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let wrap = |e: Error| Error::ForPolygon { n, source: Box::new(e) };
        let config = CatalogConfig {
            n,
            selector: selector.clone(),
            frame: params.unit,
            include_vertices,
        };
        let catalog = Catalog::build(&config).map_err(wrap)?;
        let one = SearchParams {
            top_k: 1,
            ..params.clone()
        };
        let best = scan_distances(&catalog, target, &one).map_err(wrap)?.into_iter().next();
        rows.push(CompareRow {
            n,
            constructible: is_constructible(n as u64),
            lines: catalog.lines.len(),
            points: catalog.points.len(),
            best,
        });
    }
    Ok(rows)
}
