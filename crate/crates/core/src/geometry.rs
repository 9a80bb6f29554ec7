//! Exact points and lines over field-element coordinates.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::numberfield::{FieldDescriptor, FieldElement};

/// Coordinate frame for polygon vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Frame {
    /// A₀ = (0, 0), A₁ = (1, 0): the side has unit length.
    SideUnit,
    /// Vertex k at (cos 2πk/n, sin 2πk/n).
    CircumradiusUnit,
    /// Vertex k at ½(cos 2πk/n, sin 2πk/n): the circumscribed diameter is 1.
    DiameterUnit,
}

impl Frame {
    pub fn name(self) -> &'static str {
        match self {
            Frame::SideUnit => "side",
            Frame::CircumradiusUnit => "circumradius",
            Frame::DiameterUnit => "diameter",
        }
    }

    pub fn from_name(s: &str) -> Option<Frame> {
        match s {
            "side" => Some(Frame::SideUnit),
            "circumradius" => Some(Frame::CircumradiusUnit),
            "diameter" => Some(Frame::DiameterUnit),
            _ => None,
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl Point {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        assert_eq!(
            x.field().conductor(),
            y.field().conductor(),
            "point coordinates from different fields"
        );
        Point { x, y }
    }

    pub fn origin(field: &Arc<FieldDescriptor>) -> Self {
        Point::new(FieldElement::zero(field), FieldElement::zero(field))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// (cos 2πk/n, sin 2πk/n) as exact field elements; requires lcm(n, 4) | M.
fn unit_direction(field: &Arc<FieldDescriptor>, n: u64, k: i64) -> (FieldElement, FieldElement) {
    let m = field.conductor();
    assert!(
        m.is_multiple_of(n) && m.is_multiple_of(4),
        "field of conductor {m} does not hold the {n}-gon"
    );
    let step = (m / n) as i64;
    let half = BigRational::new(1.into(), 2.into());
    let c = FieldElement::generator_cos(field, k * step).scale(&half);
    // sin θ = cos(π/2 - θ)
    let s = FieldElement::generator_cos(field, (m / 4) as i64 - k * step).scale(&half);
    (c, s)
}

/// Exact coordinates of vertex `k` of the regular n-gon in `frame`.
pub fn ngon_vertex(field: &Arc<FieldDescriptor>, n: u64, k: u64, frame: Frame) -> Point {
    assert!(n >= 3 && k < n, "vertex index out of range");
    match frame {
        Frame::SideUnit => {
            let mut p = Point::origin(field);
            for j in 0..k {
                let (c, s) = unit_direction(field, n, j as i64);
                p = Point::new(&p.x + &c, &p.y + &s);
            }
            p
        }
        Frame::CircumradiusUnit => {
            let (c, s) = unit_direction(field, n, k as i64);
            Point::new(c, s)
        }
        Frame::DiameterUnit => {
            let (c, s) = unit_direction(field, n, k as i64);
            let half = BigRational::new(1.into(), 2.into());
            Point::new(c.scale(&half), s.scale(&half))
        }
    }
}

/// All n vertices in order; SideUnit coordinates are accumulated in one pass.
pub fn ngon_vertices(field: &Arc<FieldDescriptor>, n: u64, frame: Frame) -> Vec<Point> {
    match frame {
        Frame::SideUnit => {
            let mut out = Vec::with_capacity(n as usize);
            let mut p = Point::origin(field);
            for j in 0..n {
                out.push(p.clone());
                let (c, s) = unit_direction(field, n, j as i64);
                p = Point::new(&p.x + &c, &p.y + &s);
            }
            out
        }
        _ => (0..n).map(|k| ngon_vertex(field, n, k, frame)).collect(),
    }
}

/// Squared side length of the polygon measured in `frame` units.
pub fn side_length_squared(field: &Arc<FieldDescriptor>, n: u64, frame: Frame) -> FieldElement {
    match frame {
        Frame::SideUnit => FieldElement::one(field),
        _ => {
            let v = ngon_vertices(field, n, frame);
            squared_distance(&v[0], &v[1])
        }
    }
}

/// The line a·x + b·y + c = 0, scaled so the first nonzero of (a, b) is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    Point(Point),
    Parallel,
    Coincident,
}

impl Line {
    /// Canonical line from raw coefficients; `None` when a = b = 0.
    pub fn from_coeffs(a: FieldElement, b: FieldElement, c: FieldElement) -> Option<Line> {
        let pivot = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return None;
        };
        if pivot.is_one() {
            return Some(Line { a, b, c });
        }
        let inv = pivot.inverse().ok()?;
        Some(Line {
            a: &a * &inv,
            b: &b * &inv,
            c: &c * &inv,
        })
    }

    pub fn through(p: &Point, q: &Point) -> Result<Line> {
        let a = &p.y - &q.y;
        let b = &q.x - &p.x;
        let c = -(&(&a * &p.x) + &(&b * &p.y));
        Line::from_coeffs(a, b, c).ok_or(Error::CoincidentPoints)
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn c(&self) -> &FieldElement {
        &self.c
    }

    /// Coefficients rescaled so that the x coefficient equals `a`.
    pub fn scaled_to_a(&self, a: &FieldElement) -> Option<(FieldElement, FieldElement, FieldElement)> {
        if self.a.is_zero() {
            return None;
        }
        let f = a.checked_div(&self.a).ok()?;
        Some((a.clone(), &self.b * &f, &self.c * &f))
    }

    pub fn contains(&self, p: &Point) -> bool {
        (&(&(&self.a * &p.x) + &(&self.b * &p.y)) + &self.c).is_zero()
    }

    /// Whether `(a, b, c)` describes this same line.
    pub fn is_equation_of(&self, a: &FieldElement, b: &FieldElement, c: &FieldElement) -> bool {
        Line::from_coeffs(a.clone(), b.clone(), c.clone()).as_ref() == Some(self)
    }

    pub fn intersect(&self, other: &Line) -> Intersection {
        let det = &(&self.a * &other.b) - &(&other.a * &self.b);
        if det.is_zero() {
            // Canonical scaling makes parallel lines share (a, b).
            return if self.c == other.c {
                Intersection::Coincident
            } else {
                Intersection::Parallel
            };
        }
        let inv = det.inverse().expect("nonzero determinant");
        let x = &(&(&self.b * &other.c) - &(&other.b * &self.c)) * &inv;
        let y = &(&(&self.c * &other.a) - &(&other.c * &self.a)) * &inv;
        Intersection::Point(Point::new(x, y))
    }

    pub fn perpendicular(&self, other: &Line) -> bool {
        (&(&self.a * &other.a) + &(&self.b * &other.b)).is_zero()
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})x + ({})y + ({}) = 0", self.a, self.b, self.c)
    }
}

pub fn squared_distance(p: &Point, q: &Point) -> FieldElement {
    let dx = &p.x - &q.x;
    let dy = &p.y - &q.y;
    &dx.square() + &dy.square()
}
