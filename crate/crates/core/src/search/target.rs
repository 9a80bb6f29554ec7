//! Target constants with certified enclosures at any precision.

use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numberfield::{pow2_rational, CertifiedInterval, FieldElement};

/// The constant a search approximates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetConstant {
    Pi,
    /// An exact rational, e.g. parsed from a decimal literal.
    Rational {
        value: BigRational,
        label: String,
    },
    /// `base · √factor_sq`, used to carry a target across a change of unit.
    Scaled {
        base: Box<TargetConstant>,
        factor_sq: FieldElement,
    },
}

impl TargetConstant {
    /// `pi`, a decimal literal such as `2.71828` or `-1.5e3`, or a fraction `p/q`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("pi") {
            return Ok(TargetConstant::Pi);
        }
        let value =
            parse_rational_literal(s).ok_or_else(|| Error::InvalidConfig(format!("cannot parse target `{s}`")))?;
        Ok(TargetConstant::Rational {
            value,
            label: s.to_string(),
        })
    }

    pub fn rational(value: BigRational) -> Self {
        let label = value.to_string();
        TargetConstant::Rational { value, label }
    }

    pub fn scaled(self, factor_sq: FieldElement) -> Self {
        TargetConstant::Scaled {
            base: Box::new(self),
            factor_sq,
        }
    }

    pub fn name(&self) -> String {
        match self {
            TargetConstant::Pi => "pi".to_string(),
            TargetConstant::Rational { label, .. } => label.clone(),
            TargetConstant::Scaled { base, factor_sq } => {
                format!("{}*sqrt({})", base.name(), factor_sq)
            }
        }
    }

    pub fn exact_rational(&self) -> Option<&BigRational> {
        match self {
            TargetConstant::Rational { value, .. } => Some(value),
            _ => None,
        }
    }

    /// Enclosure of width at most `2^(1-bits)`.
    pub fn enclosure(&self, bits: u32) -> CertifiedInterval {
        let bits = bits.max(8) as u64;
        match self {
            TargetConstant::Pi => pi_enclosure(bits + 2),
            TargetConstant::Rational { value, .. } => CertifiedInterval::around(value, bits + 1),
            TargetConstant::Scaled { base, factor_sq } => {
                let budget = pow2_rational(1 - bits as i64);
                let mut w = bits + 16;
                loop {
                    let b = base.enclosure(w as u32);
                    let f = factor_sq.eval_interval(w as u32).sqrt(w + 2);
                    let prod = b.mul(&f).round_out(bits + 4);
                    if prod.width() <= budget {
                        return prod;
                    }
                    w *= 2;
                }
            }
        }
    }

    pub fn approx_f64(&self) -> f64 {
        match self {
            TargetConstant::Pi => std::f64::consts::PI,
            TargetConstant::Rational { value, .. } => value.to_f64().unwrap_or(f64::NAN),
            _ => self.enclosure(64).midpoint_f64(),
        }
    }
}

impl fmt::Display for TargetConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn parse_rational_literal(s: &str) -> Option<BigRational> {
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().ok()? / 10;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut v = if scale >= 0 {
        BigRational::from_integer(all * ten.pow(scale as u32))
    } else {
        BigRational::new(all, ten.pow((-scale) as u32))
    };
    if neg {
        v = -v;
    }
    Some(v)
}

/// `(value, error bound)` in units of `2^-w` for atan(1/x) by its alternating
/// Taylor series, with every division floored.
fn atan_inv_scaled(x: u64, w: u64) -> (BigInt, BigInt) {
    let x2 = BigInt::from(x * x);
    let mut power = (BigInt::one() << w as usize) / BigInt::from(x);
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    // Each power is low by less than 2 units and each term by less than 3; the
    // omitted tail is below 2 units.
    (sum, BigInt::from(3 * (k + 1) + 2))
}

struct PiCache {
    scale: u64,
    lo: BigInt,
    hi: BigInt,
}

static PI_CACHE: RwLock<Option<PiCache>> = RwLock::new(None);

/// π ∈ [lo, hi] / 2^w by Machin's formula π = 16 atan(1/5) − 4 atan(1/239).
fn pi_scaled(w: u64) -> (BigInt, BigInt) {
    let (a5, e5) = atan_inv_scaled(5, w);
    let (a239, e239) = atan_inv_scaled(239, w);
    let s = a5 * 16 - a239 * 4;
    let e = e5 * 16 + e239 * 4;
    (&s - &e, &s + &e)
}

fn pi_enclosure(w: u64) -> CertifiedInterval {
    {
        let cache = PI_CACHE.read().unwrap();
        if let Some(c) = cache.as_ref() {
            if c.scale >= w + 48 {
                return CertifiedInterval::from_scaled(c.lo.clone(), c.hi.clone(), c.scale).round_out(w);
            }
        }
    }
    let scale = (w + 64).max(256);
    let (lo, hi) = pi_scaled(scale);
    let mut cache = PI_CACHE.write().unwrap();
    let tighter = cache.as_ref().is_none_or(|c| c.scale < scale);
    if tighter {
        // Intersect with the previous enclosure so cached results stay nested.
        let (lo, hi) = match cache.as_ref() {
            Some(c) => {
                let up = (scale - c.scale) as usize;
                (lo.max(&c.lo << up), hi.min(&c.hi << up))
            }
            None => (lo, hi),
        };
        *cache = Some(PiCache { scale, lo, hi });
    }
    let c = cache.as_ref().unwrap();
    CertifiedInterval::from_scaled(c.lo.clone(), c.hi.clone(), c.scale).round_out(w)
}

/// `floor(x)` for rationals.
pub(crate) fn floor_rational(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Exact square root when `q` is the square of a rational.
pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}
