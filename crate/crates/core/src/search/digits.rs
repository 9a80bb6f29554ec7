//! Certified decimal rendering and digit-agreement counting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use super::target::{floor_rational, rational_sqrt, TargetConstant};
use crate::numberfield::{CertifiedInterval, FieldElement};

/// Largest working precision tried before giving up on separating a value
/// from a rounding or truncation boundary.
pub const MAX_BITS: u32 = 1 << 14;

/// Upper limit for [`matching_digits`], reached only when the value equals the target.
pub const MAX_MATCHING_DIGITS: u32 = 1000;

/// A real number known through exact data or certified enclosures.
pub trait Enclosable {
    fn enclose(&self, bits: u32) -> CertifiedInterval;
    /// The exact value when it is rational.
    fn exact(&self) -> Option<BigRational>;
}

/// √x for a nonnegative field element.
pub struct SqrtOf<'a>(pub &'a FieldElement);

impl Enclosable for SqrtOf<'_> {
    fn enclose(&self, bits: u32) -> CertifiedInterval {
        self.0.eval_interval(bits + 2).sqrt(bits as u64 + 2)
    }

    fn exact(&self) -> Option<BigRational> {
        self.0.as_rational().and_then(rational_sqrt)
    }
}

impl Enclosable for FieldElement {
    fn enclose(&self, bits: u32) -> CertifiedInterval {
        self.eval_interval(bits.max(8))
    }

    fn exact(&self) -> Option<BigRational> {
        self.as_rational().cloned()
    }
}

impl Enclosable for TargetConstant {
    fn enclose(&self, bits: u32) -> CertifiedInterval {
        self.enclosure(bits)
    }

    fn exact(&self) -> Option<BigRational> {
        self.exact_rational().cloned()
    }
}

fn ten_pow(d: u32) -> BigInt {
    BigInt::from(10).pow(d)
}

/// `x · 10^places` rounded half to even.
fn round_half_even_scaled(x: &BigRational, places: u32) -> BigInt {
    let y = x * BigRational::from_integer(ten_pow(places));
    let fl = floor_rational(&y);
    let frac = &y - BigRational::from_integer(fl.clone());
    let half = BigRational::new(1.into(), 2.into());
    if frac > half || (frac == half && fl.is_odd()) {
        fl + 1
    } else {
        fl
    }
}

fn format_scaled(v: &BigInt, places: u32) -> String {
    let neg = v.is_negative();
    let digits = v.abs().to_string();
    let p = places as usize;
    let padded = if digits.len() <= p {
        format!("{}{}", "0".repeat(p + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - p);
    let sign = if neg { "-" } else { "" };
    if p == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Decimal string with `places` fractional digits, rounded half to even, from
/// an enclosure narrow enough that both endpoints round alike. Returns the
/// string and the precision that settled it.
pub fn render_decimal<E: Enclosable + ?Sized>(value: &E, places: u32, min_bits: u32) -> (String, u32) {
    if let Some(q) = value.exact() {
        return (format_scaled(&round_half_even_scaled(&q, places), places), min_bits);
    }
    let mut bits = min_bits.max(places * 4 + 16);
    loop {
        let i = value.enclose(bits);
        let lo = round_half_even_scaled(i.lo(), places);
        let hi = round_half_even_scaled(i.hi(), places);
        if lo == hi || bits >= MAX_BITS {
            let v = if lo == hi {
                lo
            } else {
                round_half_even_scaled(&i.midpoint(), places)
            };
            return (format_scaled(&v, places), bits);
        }
        bits *= 2;
    }
}

/// Truncation toward zero of `x · 10^d`.
fn trunc_scaled(x: &BigRational, d: u32) -> BigInt {
    let y = x * BigRational::from_integer(ten_pow(d));
    if y.is_negative() {
        -floor_rational(&-y)
    } else {
        floor_rational(&y)
    }
}

/// Truncation of a value to `d` fractional digits, escalating precision until
/// the enclosure no longer straddles a truncation boundary. Exact rationals,
/// including square roots of rational squares, are truncated exactly.
fn truncated<E: Enclosable + ?Sized>(
    value: &E,
    d: u32,
    cache: &mut (u32, Option<CertifiedInterval>),
) -> Option<BigInt> {
    if let Some(q) = value.exact() {
        return Some(trunc_scaled(&q, d));
    }
    loop {
        let need = d * 4 + 24;
        if cache.1.is_none() || cache.0 < need {
            cache.0 = cache.0.max(need);
            cache.1 = Some(value.enclose(cache.0));
        }
        let i = cache.1.as_ref().unwrap();
        let lo = trunc_scaled(i.lo(), d);
        let hi = trunc_scaled(i.hi(), d);
        if lo == hi {
            return Some(lo);
        }
        if cache.0 >= MAX_BITS {
            return None;
        }
        cache.0 *= 2;
        cache.1 = None;
    }
}

/// Number of fractional digits on which the truncated expansions of
/// `√value_sq` and the target agree (0 when even the first one differs).
pub fn matching_digits(value_sq: &FieldElement, target: &TargetConstant) -> u32 {
    matching_digits_of(&SqrtOf(value_sq), target)
}

/// [`matching_digits`] for any pair of enclosable values.
pub fn matching_digits_of<A: Enclosable + ?Sized, B: Enclosable + ?Sized>(value: &A, target: &B) -> u32 {
    let mut vc = (64, None);
    let mut tc = (64, None);
    let mut agreed = 0;
    for d in 1..=MAX_MATCHING_DIGITS {
        let (Some(a), Some(b)) = (truncated(value, d, &mut vc), truncated(target, d, &mut tc)) else {
            break;
        };
        if a != b {
            break;
        }
        agreed = d;
    }
    agreed
}

/// √value_sq rendered to `places` digits.
pub fn sqrt_decimal(value_sq: &FieldElement, places: u32, min_bits: u32) -> String {
    render_decimal(&SqrtOf(value_sq), places, min_bits).0
}
