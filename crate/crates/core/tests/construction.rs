//! The twelve-gon construction checked by exact field-element equality.

use std::sync::Arc;

use polypi_core::catalog::{Catalog, CatalogConfig};
use polypi_core::geometry::{ngon_vertex, squared_distance, Frame, Intersection, Line, Point};
use polypi_core::numberfield::{FieldDescriptor, FieldElement, QuadraticSurd, SurdForm};
use polypi_core::search::{complexity, matching_digits, sqrt_decimal, TargetConstant};

use num_bigint::BigInt;
use num_rational::BigRational;

struct Q3 {
    k: Arc<FieldDescriptor>,
    s3: FieldElement,
}

impl Q3 {
    fn new() -> Self {
        let k = FieldDescriptor::for_ngon(12);
        assert_eq!(k.degree(), 2);
        let s3 = FieldElement::generator(&k);
        Q3 { k, s3 }
    }

    /// a + b·√3 with rational a = an/ad and b = bn/bd.
    fn v(&self, an: i64, ad: i64, bn: i64, bd: i64) -> FieldElement {
        let a = FieldElement::from_ratio(&self.k, an, ad);
        let b = self.s3.scale(&BigRational::new(bn.into(), bd.into()));
        &a + &b
    }

    fn p(&self, x: FieldElement, y: FieldElement) -> Point {
        Point::new(x, y)
    }

    fn vertex(&self, i: u64) -> Point {
        ngon_vertex(&self.k, 12, i, Frame::SideUnit)
    }
}

fn meet(a: &Line, b: &Line) -> Point {
    match a.intersect(b) {
        Intersection::Point(p) => p,
        other => panic!("expected a crossing, got {other:?}"),
    }
}

#[test]
fn generator_is_root_three() {
    let q = Q3::new();
    assert_eq!(q.s3.square(), FieldElement::from_int(&q.k, 3));
    assert!(q.s3.signum().is_gt());
    assert_eq!(FieldElement::generator_cos(&q.k, 2), FieldElement::one(&q.k));
    assert!(FieldElement::generator_cos(&q.k, 3).is_zero());
    assert_eq!(q.s3.inverse().unwrap(), q.v(0, 1, 1, 3));
    assert_eq!(&q.v(1, 1, 1, 1) * &q.v(1, 1, -1, 1), FieldElement::from_int(&q.k, -2));
}

#[test]
fn vertex_coordinates() {
    let q = Q3::new();
    let cases = [
        (3, q.v(3, 2, 1, 2), q.v(1, 2, 1, 2)),
        (6, q.v(1, 1, 0, 1), q.v(2, 1, 1, 1)),
        (7, q.v(0, 1, 0, 1), q.v(2, 1, 1, 1)),
        (8, q.v(0, 1, -1, 2), q.v(3, 2, 1, 1)),
        (9, q.v(-1, 2, -1, 2), q.v(3, 2, 1, 2)),
        (11, q.v(0, 1, -1, 2), q.v(1, 2, 0, 1)),
    ];
    for (i, x, y) in cases {
        assert_eq!(q.vertex(i), q.p(x, y), "vertex {i}");
    }
    assert_eq!(q.vertex(0), Point::origin(&q.k));
    assert_eq!(q.vertex(1), q.p(q.v(1, 1, 0, 1), q.v(0, 1, 0, 1)));
}

#[test]
fn construction_lines_and_points() {
    let q = Q3::new();
    let l_11_6 = Line::through(&q.vertex(11), &q.vertex(6)).unwrap();
    // (3/2 + √3)x − (1 + √3/2)y + (2 + √3) = 0
    assert!(l_11_6.is_equation_of(&q.v(3, 2, 1, 1), &q.v(-1, 1, -1, 2), &q.v(2, 1, 1, 1)));

    let side = Line::through(&q.vertex(0), &q.vertex(1)).unwrap();
    let r = meet(&l_11_6, &side);
    assert_eq!(r, q.p(q.v(0, 1, -2, 3), q.v(0, 1, 0, 1)));
    // R = (−2/√3, 0)
    let minus_two_over_root3 = FieldElement::from_int(&q.k, -2).checked_div(&q.s3).unwrap();
    assert_eq!(r.x, minus_two_over_root3);

    let l_3_8 = Line::through(&q.vertex(3), &q.vertex(8)).unwrap();
    let l_7_9 = Line::through(&q.vertex(7), &q.vertex(9)).unwrap();
    // A₃A₈ as (1 + √3/2)x + (3/2 + √3)y = c and A₇A₉ as y = x + d.
    let (_, b38, c38) = l_3_8.scaled_to_a(&q.v(1, 1, 1, 2)).unwrap();
    assert_eq!(b38, q.v(3, 2, 1, 1));
    assert_eq!(-c38, q.v(9, 2, 5, 2));
    let (_, b79, d) = l_7_9.scaled_to_a(&FieldElement::one(&q.k)).unwrap();
    assert_eq!(b79, FieldElement::from_int(&q.k, -1));
    assert_eq!(d, q.v(2, 1, 1, 1));

    let s = meet(&l_3_8, &l_7_9);
    assert_eq!(s, q.p(q.v(-3, 2, 1, 2), q.v(1, 2, 3, 2)));

    let rs = squared_distance(&r, &s);
    assert_eq!(rs, q.v(40, 3, -2, 1));
    assert_eq!(
        rs.as_quadratic_surd(),
        SurdForm::Quadratic(QuadraticSurd::new(
            BigRational::new(40.into(), 3.into()),
            BigRational::from_integer((-2).into()),
            BigInt::from(3)
        ))
    );
    assert_eq!(matching_digits(&rs, &TargetConstant::Pi), 4);
    assert!(sqrt_decimal(&rs, 20, 128).starts_with("3.14153333"));
}

#[test]
fn side_proof_identities() {
    let q = Q3::new();
    let side = Line::through(&q.vertex(0), &q.vertex(1)).unwrap();
    let l_11_6 = Line::through(&q.vertex(11), &q.vertex(6)).unwrap();
    let r = meet(&l_11_6, &side);
    // |A₁R| = 1 + 2/√3
    let len = &FieldElement::one(&q.k) + &FieldElement::from_int(&q.k, 2).checked_div(&q.s3).unwrap();
    assert_eq!(squared_distance(&q.vertex(1), &r), len.square());
    assert_eq!(len.square(), q.v(7, 3, 4, 3));

    let l_3_8 = Line::through(&q.vertex(3), &q.vertex(8)).unwrap();
    let l_6_11 = Line::through(&q.vertex(6), &q.vertex(11)).unwrap();
    assert!(l_3_8.perpendicular(&l_6_11));
    assert!(!l_3_8.perpendicular(&side));
}

#[test]
fn construction_points_in_catalog() {
    let q = Q3::new();
    let catalog = Catalog::build(&CatalogConfig::new(12)).unwrap();
    assert_eq!(catalog.lines.len(), 66);
    let r = catalog.find_point(&q.p(q.v(0, 1, -2, 3), q.v(0, 1, 0, 1))).expect("R");
    let s = catalog.find_point(&q.p(q.v(-3, 2, 1, 2), q.v(1, 2, 3, 2))).expect("S");
    let l = |i, j| catalog.line_between(i, j).unwrap();
    assert!(r.provenance.contains(&l(6, 11)) && r.provenance.contains(&l(0, 1)));
    assert!(s.provenance.contains(&l(3, 8)) && s.provenance.contains(&l(7, 9)));
    assert_eq!(complexity(&catalog, r.id, s.id), 4);
    assert_eq!(squared_distance(&r.point, &s.point), q.v(40, 3, -2, 1));
}
