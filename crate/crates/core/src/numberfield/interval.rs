//! Closed intervals with dyadic rational endpoints that enclose an exact real.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `[lo, hi]` with `lo <= hi`; every constructor rounds outward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CertifiedInterval {
    lo: BigRational,
    hi: BigRational,
}

pub(crate) fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits as usize
}

/// `floor(x * 2^w)`.
pub(crate) fn floor_scaled(x: &BigRational, w: u64) -> BigInt {
    (x.numer() << w as usize).div_floor(x.denom())
}

/// `ceil(x * 2^w)`.
pub(crate) fn ceil_scaled(x: &BigRational, w: u64) -> BigInt {
    -((-x.numer() << w as usize).div_floor(x.denom()))
}

fn ceil_sqrt(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &r * &r == *n {
        r
    } else {
        r + 1
    }
}

impl CertifiedInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        CertifiedInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        CertifiedInterval { lo: x.clone(), hi: x }
    }

    /// `[lo / 2^w, hi / 2^w]`.
    pub fn from_scaled(lo: BigInt, hi: BigInt, w: u64) -> Self {
        let d = pow2(w);
        Self::new(BigRational::new(lo, d.clone()), BigRational::new(hi, d))
    }

    /// Smallest enclosure of `x` on the grid `2^-w`.
    pub fn around(x: &BigRational, w: u64) -> Self {
        Self::from_scaled(floor_scaled(x, w), ceil_scaled(x, w), w)
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Smallest absolute value over the interval.
    pub fn mag_lo(&self) -> BigRational {
        if self.lo.is_positive() {
            self.lo.clone()
        } else if self.hi.is_negative() {
            -self.hi.clone()
        } else {
            BigRational::zero()
        }
    }

    /// Largest absolute value over the interval.
    pub fn mag_hi(&self) -> BigRational {
        std::cmp::max(self.lo.abs(), self.hi.abs())
    }

    /// Certified sign, `None` when the interval straddles or touches zero
    /// without being exactly zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// `Some(ordering)` when every point of `self` compares the same way to
    /// every point of `other`.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::new(lo, hi)
    }

    /// `{|x| : x in self}`.
    pub fn abs(&self) -> Self {
        Self::new(self.mag_lo(), self.mag_hi())
    }

    /// Union hull of two intervals.
    pub fn hull(&self, other: &Self) -> Self {
        Self::new(
            std::cmp::min(&self.lo, &other.lo).clone(),
            std::cmp::max(&self.hi, &other.hi).clone(),
        )
    }

    /// Outward rounding of both endpoints to the grid `2^-w`.
    pub fn round_out(&self, w: u64) -> Self {
        Self::from_scaled(floor_scaled(&self.lo, w), ceil_scaled(&self.hi, w), w)
    }

    /// Enclosure of the square root with endpoints on the grid `2^-w`.
    /// Negative parts of the interval are clamped to zero.
    pub fn sqrt(&self, w: u64) -> Self {
        let zero = BigRational::zero();
        let lo = std::cmp::max(&self.lo, &zero);
        let hi = std::cmp::max(&self.hi, &zero);
        // sqrt(x) * 2^w = sqrt(x * 2^2w)
        let lo_s = floor_scaled(lo, 2 * w).sqrt();
        let hi_s = ceil_sqrt(&ceil_scaled(hi, 2 * w));
        Self::from_scaled(lo_s, hi_s, w)
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for CertifiedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo_f64(), self.hi_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rounding_is_outward() {
        let x = q(1, 3);
        let i = CertifiedInterval::around(&x, 10);
        assert!(i.contains(&x));
        assert!(i.width() <= q(1, 1024));
        let neg = CertifiedInterval::around(&-x.clone(), 10);
        assert!(neg.contains(&-x));
    }

    #[test]
    fn sqrt_encloses() {
        let two = CertifiedInterval::point(q(2, 1));
        let r = two.sqrt(60);
        let sq = r.mul(&r);
        assert!(sq.contains(&q(2, 1)));
        assert!(r.width() <= q(1, 1 << 59));
        let four = CertifiedInterval::point(q(4, 1)).sqrt(8);
        assert!(four.is_point());
        assert_eq!(four.lo(), &q(2, 1));
    }

    #[test]
    fn arithmetic_and_compare() {
        let a = CertifiedInterval::new(q(-1, 1), q(2, 1));
        let b = CertifiedInterval::new(q(3, 1), q(4, 1));
        assert_eq!(a.mul(&b), CertifiedInterval::new(q(-4, 1), q(8, 1)));
        assert_eq!(a.sub(&b), CertifiedInterval::new(q(-5, 1), q(-1, 1)));
        assert_eq!(a.compare(&b), Some(Ordering::Less));
        assert_eq!(a.sign(), None);
        assert_eq!(a.abs(), CertifiedInterval::new(q(0, 1), q(2, 1)));
        assert_eq!(b.neg().sign(), Some(Ordering::Less));
    }
}
