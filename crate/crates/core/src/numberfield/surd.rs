//! Minimal polynomials of field elements and quadratic-surd recognition.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::FieldElement;
use super::poly::IntPolynomial;

/// `a + b·√d` with `d` squarefree and positive; `d = 1` exactly when `b = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

/// Result of closed-form recognition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurdForm {
    Quadratic(QuadraticSurd),
    NotQuadratic,
}

impl QuadraticSurd {
    /// Canonicalises `a + b·√radicand` by pulling square factors out of the radicand.
    pub fn new(a: BigRational, b: BigRational, radicand: BigInt) -> Self {
        assert!(radicand.is_positive(), "radicand must be positive");
        if b.is_zero() {
            return QuadraticSurd { a, b, d: BigInt::one() };
        }
        let (f, d) = square_part(&radicand);
        let b = b * BigRational::from_integer(f);
        if d.is_one() {
            QuadraticSurd {
                a: a + b,
                b: BigRational::zero(),
                d,
            }
        } else {
            QuadraticSurd { a, b, d }
        }
    }

    pub fn rational(a: BigRational) -> Self {
        Self::new(a, BigRational::zero(), BigInt::one())
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}*sqrt({})", self.a, sign, self.b.abs(), self.d)
    }
}

/// Writes `n = f² · r` with `r` squarefree, returning `(f, r)` for `n > 0`.
///
/// Trial division runs up to a fixed bound; a leftover cofactor is tested for
/// being a perfect square. Cofactors below the bound cubed are then exactly
/// squarefree; larger ones are assumed so.
pub(crate) fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    const BOUND: u64 = 100_000;
    let mut rest = n.clone();
    let mut f = BigInt::one();
    let mut r = BigInt::one();
    let mut p: u64 = 2;
    while p <= BOUND {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            f *= pb.pow(e / 2);
            if e % 2 == 1 {
                r *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let s = rest.sqrt();
        if &s * &s == rest {
            f *= s;
        } else {
            r *= rest;
        }
    }
    (f, r)
}

/// Primitive integer minimal polynomial of `x` over ℚ, with positive leading
/// coefficient, found as the first linear dependency among 1, x, x², …
pub fn element_minpoly(x: &FieldElement) -> IntPolynomial {
    if let Some(q) = x.as_rational() {
        return IntPolynomial::new(vec![-q.numer().clone(), q.denom().clone()]);
    }
    let d = x.field().degree();
    let mut powers = vec![FieldElement::one(x.field())];
    for k in 1..=d {
        powers.push(&powers[k - 1] * x);
        if !d.is_multiple_of(k) {
            continue;
        }
        if let Some(c) = solve_dependency(&powers[..k], &powers[k]) {
            // x^k = sum c_i x^i  =>  x^k - sum c_i x^i = 0
            let mut rat: Vec<BigRational> = c.into_iter().map(|v| -v).collect();
            rat.push(BigRational::one());
            let den = rat.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            let ints = rat
                .iter()
                .map(|r| (r * BigRational::from_integer(den.clone())).to_integer())
                .collect();
            return IntPolynomial::new(ints).primitive();
        }
    }
    unreachable!("powers up to the field degree are always dependent")
}

/// Solves `sum c_i basis_i = target` exactly, if a solution exists.
fn solve_dependency(basis: &[FieldElement], target: &FieldElement) -> Option<Vec<BigRational>> {
    let rows = target.coeffs().len();
    let cols = basis.len();
    // Augmented matrix, one row per power-basis coordinate.
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| b.coeffs()[r].clone()).collect();
            row.push(target.coeffs()[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        let pivot = m[row].clone();
        for (r, target) in m.iter_mut().enumerate() {
            if r != row && !target[col].is_zero() {
                let factor = target[col].clone();
                for (v, p) in target.iter_mut().zip(&pivot).skip(col) {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = m[r][cols].clone();
    }
    Some(sol)
}

impl FieldElement {
    pub fn minpoly(&self) -> IntPolynomial {
        element_minpoly(self)
    }

    /// Closed form `a + b√D` when the element has degree at most two over ℚ.
    pub fn as_quadratic_surd(&self) -> SurdForm {
        if let Some(q) = self.as_rational() {
            return SurdForm::Quadratic(QuadraticSurd::rational(q.clone()));
        }
        let mp = element_minpoly(self);
        if mp.degree() != Some(2) {
            return SurdForm::NotQuadratic;
        }
        let c = mp.coefficients();
        let (c0, c1, c2) = (&c[0], &c[1], &c[2]);
        let disc: BigInt = c1 * c1 - BigInt::from(4) * c2 * c0;
        let two_a = BigRational::from_integer(c2 * BigInt::from(2));
        let a = BigRational::from_integer(-c1.clone()) / &two_a;
        let (f, d) = square_part(&disc);
        let mag = BigRational::from_integer(f) / &two_a;
        // x - a = ±mag·√d, the sign read off exactly.
        let offset = self - &FieldElement::from_rational(self.field(), a.clone());
        let b = match offset.signum() {
            Ordering::Less => -mag.abs(),
            _ => mag.abs(),
        };
        SurdForm::Quadratic(QuadraticSurd::new(a, b, d))
    }
}
