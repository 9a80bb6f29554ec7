//! Exact arithmetic in the real cyclotomic field ℚ(2cos(2π/M)).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{pow2, CertifiedInterval};
use super::poly::{real_cyclotomic_minpoly, totient, IntPolynomial};
use crate::error::{Error, Result};

/// Integer-scaled enclosure `[lo, hi] / 2^scale` of the field generator.
#[derive(Debug, Clone)]
struct GeneratorEnclosure {
    scale: u64,
    lo: BigInt,
    hi: BigInt,
}

/// The field K_M = ℚ(g), g = 2cos(2π/M), with its minimal polynomial and
/// the tables used by multiplication and by `generator_cos`.
///
/// Immutable apart from an internal cache of the generator's enclosure, which
/// only ever tightens.
pub struct FieldDescriptor {
    conductor: u64,
    minpoly: IntPolynomial,
    degree: usize,
    /// `reduction[k]` holds g^(degree + k) reduced modulo the minimal polynomial.
    reduction: Vec<Vec<BigInt>>,
    /// `cos_table[j]` holds 2cos(2πj/M) for 0 <= j <= M/2.
    cos_table: Vec<Vec<BigRational>>,
    generator: RwLock<GeneratorEnclosure>,
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDescriptor")
            .field("conductor", &self.conductor)
            .field("minpoly", &self.minpoly.to_string())
            .field("degree", &self.degree)
            .finish()
    }
}

/// Conductor of the field holding every vertex coordinate of the regular n-gon.
pub fn ngon_conductor(n: u64) -> u64 {
    n.lcm(&4)
}

impl FieldDescriptor {
    pub fn new(conductor: u64) -> Arc<FieldDescriptor> {
        assert!(conductor >= 1, "conductor must be positive");
        let minpoly = real_cyclotomic_minpoly(conductor);
        let degree = minpoly.degree().unwrap();
        debug_assert_eq!(degree as u64, if conductor <= 2 { 1 } else { totient(conductor) / 2 });

        let reduction = reduction_table(&minpoly);
        let generator = initial_enclosure(conductor, &minpoly);
        let mut field = FieldDescriptor {
            conductor,
            minpoly,
            degree,
            reduction,
            cos_table: Vec::new(),
            generator: RwLock::new(generator),
        };
        field.cos_table = field.build_cos_table();
        Arc::new(field)
    }

    pub fn for_ngon(n: u64) -> Arc<FieldDescriptor> {
        Self::new(ngon_conductor(n))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn build_cos_table(&self) -> Vec<Vec<BigRational>> {
        let half = (self.conductor / 2) as usize;
        let mut table = Vec::with_capacity(half + 1);
        let two = self.rational_coeffs(BigRational::from_integer(2.into()));
        let g = self.generator_coeffs();
        table.push(two);
        if half >= 1 {
            table.push(g.clone());
        }
        for k in 1..half {
            let next = sub_coeffs(&self.mul_coeffs(&g, &table[k]), &table[k - 1]);
            table.push(next);
        }
        table
    }

    fn rational_coeffs(&self, q: BigRational) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.degree];
        v[0] = q;
        v
    }

    fn generator_coeffs(&self) -> Vec<BigRational> {
        if self.degree == 1 {
            // g is rational: the root of x + c0.
            let c0 = &self.minpoly.coefficients()[0];
            return vec![BigRational::from_integer(-c0.clone())];
        }
        let mut v = vec![BigRational::zero(); self.degree];
        v[1] = BigRational::one();
        v
    }

    fn mul_coeffs(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let d = self.degree;
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let (low, high) = prod.split_at_mut(d);
        for (k, c) in high.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, r) in low.iter_mut().zip(&self.reduction[k]) {
                if !r.is_zero() {
                    *slot += c * r;
                }
            }
        }
        prod.truncate(d);
        prod
    }

    /// Enclosure of g on the grid `2^-w`, refining the cache when needed.
    fn generator_scaled(&self, w: u64) -> (BigInt, BigInt) {
        {
            let cached = self.generator.read().unwrap();
            if cached.scale >= w && width_ok(&cached, w) {
                return round_to_scale(&cached, w);
            }
        }
        let mut cached = self.generator.write().unwrap();
        if !(cached.scale >= w && width_ok(&cached, w)) {
            *cached = refine(&self.minpoly, &cached, w + 4);
        }
        round_to_scale(&cached, w)
    }
}

fn width_ok(e: &GeneratorEnclosure, w: u64) -> bool {
    // (hi - lo) / 2^scale <= 2^-(w+2)
    e.scale >= w + 2 && (&e.hi - &e.lo) <= pow2(e.scale - w - 2)
}

fn round_to_scale(e: &GeneratorEnclosure, w: u64) -> (BigInt, BigInt) {
    let d = pow2(e.scale - w);
    let lo = e.lo.div_floor(&d);
    let hi = -((-&e.hi).div_floor(&d));
    (lo, hi)
}

fn reduction_table(minpoly: &IntPolynomial) -> Vec<Vec<BigInt>> {
    let d = minpoly.degree().unwrap();
    if d < 2 {
        return Vec::new();
    }
    let mc = minpoly.coefficients();
    // g^d = -sum_{i<d} m_i g^i
    let mut cur: Vec<BigInt> = mc[..d].iter().map(|c| -c).collect();
    let mut table = vec![cur.clone()];
    for _ in 1..d - 1 {
        // multiply by g: shift up and fold the overflow back in
        let top = cur[d - 1].clone();
        let mut next = vec![BigInt::zero(); d];
        next[1..d].clone_from_slice(&cur[..d - 1]);
        for (slot, m) in next.iter_mut().zip(mc) {
            *slot -= &top * m;
        }
        cur = next;
        table.push(cur.clone());
    }
    table
}

const INITIAL_SCALE: u64 = 48;

/// Isolating enclosure of 2cos(2π/M) among the roots of its minimal polynomial.
fn initial_enclosure(conductor: u64, minpoly: &IntPolynomial) -> GeneratorEnclosure {
    let d = minpoly.degree().unwrap();
    if d == 1 {
        let root = -minpoly.coefficients()[0].clone();
        let s = INITIAL_SCALE;
        let v = root << s as usize;
        return GeneratorEnclosure {
            scale: s,
            lo: v.clone(),
            hi: v,
        };
    }
    let approx = 2.0 * (2.0 * std::f64::consts::PI / conductor as f64).cos();
    // The other conjugates 2cos(2πk/M), gcd(k, M) = 1, must stay outside the bracket.
    let nearest = (2..=conductor / 2)
        .filter(|k| k.gcd(&conductor) == 1)
        .map(|k| (2.0 * (2.0 * std::f64::consts::PI * k as f64 / conductor as f64).cos() - approx).abs())
        .fold(f64::INFINITY, f64::min);
    let radius_units: i64 = 1 << 12; // 2^-36 at scale 48
    assert!(
        nearest > 2.0f64.powi(-30),
        "conjugate roots too close to isolate for conductor {conductor}"
    );
    let center = BigInt::from((approx * 2f64.powi(INITIAL_SCALE as i32)).round() as i64);
    let lo = &center - radius_units;
    let hi = &center + radius_units;
    let slo = minpoly.eval_dyadic_scaled(&lo, INITIAL_SCALE).sign();
    let shi = minpoly.eval_dyadic_scaled(&hi, INITIAL_SCALE).sign();
    assert!(
        slo != shi && slo != num_bigint::Sign::NoSign && shi != num_bigint::Sign::NoSign,
        "failed to bracket the generator for conductor {conductor}"
    );
    GeneratorEnclosure {
        scale: INITIAL_SCALE,
        lo,
        hi,
    }
}

/// Tightens an isolating bracket to width at most 2^-(target+2) on scale `target + 2`
/// or finer. Newton steps propose a tight bracket which is accepted only after an
/// exact sign-change check inside the current one; bisection is the fallback.
fn refine(minpoly: &IntPolynomial, cur: &GeneratorEnclosure, target: u64) -> GeneratorEnclosure {
    if cur.lo == cur.hi {
        let s = target + 2;
        let v = &cur.lo << (s - cur.scale) as usize;
        return GeneratorEnclosure {
            scale: s,
            lo: v.clone(),
            hi: v,
        };
    }
    let deriv = derivative(minpoly);
    let s = (target + 8).max(cur.scale);
    let up = (s - cur.scale) as usize;
    let (lo_s, hi_s) = (&cur.lo << up, &cur.hi << up);
    let sign_lo = minpoly.eval_dyadic_scaled(&cur.lo, cur.scale).sign();

    // Newton from the midpoint at the final scale. The scaled values satisfy
    // f(x) * 2^(s d) and f'(x) * 2^(s (d-1)), so the step is f_s / f'_s / 2^s in
    // real units, i.e. f_s / f'_s in units of 2^-s.
    let mut x: BigInt = (&lo_s + &hi_s) >> 1usize;
    for _ in 0..64 {
        let f = minpoly.eval_dyadic_scaled(&x, s);
        let fp = deriv.eval_dyadic_scaled(&x, s);
        if fp.is_zero() {
            break;
        }
        let step = f / fp;
        x -= &step;
        if step.abs() <= BigInt::one() {
            break;
        }
    }
    let pad = BigInt::from(4);
    let cand_lo = &x - &pad;
    let cand_hi = &x + &pad;
    if cand_lo >= lo_s && cand_hi <= hi_s {
        let a = minpoly.eval_dyadic_scaled(&cand_lo, s).sign();
        let b = minpoly.eval_dyadic_scaled(&cand_hi, s).sign();
        if a == sign_lo && b != sign_lo && b != num_bigint::Sign::NoSign {
            return GeneratorEnclosure {
                scale: s,
                lo: cand_lo,
                hi: cand_hi,
            };
        }
    }

    // Bisection fallback.
    let (mut lo, mut hi) = (lo_s, hi_s);
    while &hi - &lo > pad {
        let mid: BigInt = (&lo + &hi) >> 1usize;
        let sm = minpoly.eval_dyadic_scaled(&mid, s).sign();
        if sm == num_bigint::Sign::NoSign {
            return GeneratorEnclosure {
                scale: s,
                lo: mid.clone(),
                hi: mid,
            };
        }
        if sm == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    GeneratorEnclosure { scale: s, lo, hi }
}

fn derivative(p: &IntPolynomial) -> IntPolynomial {
    IntPolynomial::new(
        p.coefficients()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

fn sub_coeffs(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// An element Σ cᵢ gⁱ of K_M in the power basis of the generator.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<FieldDescriptor>,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement(M={}, {})", self.field.conductor, self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "g^{i}")?,
                _ => write!(f, "{mag}*g^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl FieldElement {
    pub fn from_coeffs(field: &Arc<FieldDescriptor>, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(
            coeffs.len(),
            field.degree,
            "coefficient vector length must equal the degree"
        );
        FieldElement {
            field: Arc::clone(field),
            coeffs,
        }
    }

    pub fn zero(field: &Arc<FieldDescriptor>) -> Self {
        Self::from_rational(field, BigRational::zero())
    }

    pub fn one(field: &Arc<FieldDescriptor>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Arc<FieldDescriptor>, q: BigRational) -> Self {
        Self::from_coeffs(field, field.rational_coeffs(q))
    }

    pub fn from_int(field: &Arc<FieldDescriptor>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(field: &Arc<FieldDescriptor>, num: i64, den: i64) -> Self {
        Self::from_rational(field, BigRational::new(num.into(), den.into()))
    }

    /// The generator g = 2cos(2π/M).
    pub fn generator(field: &Arc<FieldDescriptor>) -> Self {
        Self::from_coeffs(field, field.generator_coeffs())
    }

    /// 2cos(2πj/M) for any integer j.
    pub fn generator_cos(field: &Arc<FieldDescriptor>, j: i64) -> Self {
        let m = field.conductor as i64;
        let r = j.rem_euclid(m);
        let r = r.min(m - r) as usize;
        Self::from_coeffs(field, field.cos_table[r].clone())
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element is the rational q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.field.conductor, other.field.conductor,
            "field elements from different fields"
        );
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm of the
    /// representative polynomial against the minimal polynomial over ℚ.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, q.recip()));
        }
        let modulus: Vec<BigRational> = self
            .field
            .minpoly
            .coefficients()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let a = trim(self.coeffs.clone());
        // Invariant: r_i ≡ s_i * a (mod modulus).
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because the modulus is irreducible.
        debug_assert_eq!(r1.len(), 1);
        let c = r1[0].recip();
        let mut coeffs = vec![BigRational::zero(); self.field.degree];
        for (slot, s) in coeffs.iter_mut().zip(s1.iter()) {
            *slot = s * &c;
        }
        debug_assert!(s1.len() <= self.field.degree);
        Ok(Self::from_coeffs(&self.field, coeffs))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Enclosure of the element at fixed-point precision `w`, without padding.
    pub(crate) fn eval_fixed(&self, w: u64) -> CertifiedInterval {
        if let Some(q) = self.as_rational() {
            return CertifiedInterval::around(q, w);
        }
        let (gl, gh) = self.field.generator_scaled(w);
        let one = pow2(w);
        let mut plo = one.clone();
        let mut phi = one;
        let mut sum_lo = BigInt::zero();
        let mut sum_hi = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                let prods = [&plo * &gl, &plo * &gh, &phi * &gl, &phi * &gh];
                let mn = prods.iter().min().unwrap();
                let mx = prods.iter().max().unwrap();
                let d = pow2(w);
                let nlo = mn.div_floor(&d);
                let nhi = -((-mx).div_floor(&d));
                plo = nlo;
                phi = nhi;
            }
            if c.is_zero() {
                continue;
            }
            let (p, q) = (c.numer(), c.denom());
            let (a, b) = (p * &plo, p * &phi);
            let (mn, mx) = if a <= b { (a, b) } else { (b, a) };
            sum_lo += mn.div_floor(q);
            sum_hi += -((-mx).div_floor(q));
        }
        CertifiedInterval::from_scaled(sum_lo, sum_hi, w)
    }

    /// Enclosure of the real value with width at most `2^(1-bits) * max(1, |x|)`.
    ///
    /// Results are nested across precisions: the enclosure for `bits` contains
    /// the midpoint of the enclosure for any `bits' > bits`.
    pub fn eval_interval(&self, bits: u32) -> CertifiedInterval {
        assert!(bits >= 8, "precision must be at least 8 bits");
        let bits = bits as u64;
        if let Some(q) = self.as_rational() {
            // Grid roundings of a fixed rational are nested across scales.
            return CertifiedInterval::around(q, bits);
        }
        // Magnitude exponent from a fixed-precision evaluation so that the
        // width budget depends on the element only.
        let base = self.eval_fixed(64);
        let mag = base.mag_lo();
        let e = if mag >= BigRational::one() {
            (mag.to_integer().bits() as i64 - 1).max(0) as u64
        } else {
            0
        };
        // Budget W = 2^(1 - bits + e): the inner enclosure must reach W/8 and
        // is then padded by W/4 on each side.
        let exp = e as i64 - bits as i64;
        let inner_target = pow2_rational(exp - 2);
        let pad = pow2_rational(exp - 1);
        let mut w = (bits + 16).max(64);
        loop {
            let inner = self.eval_fixed(w);
            if inner.width() <= inner_target {
                return CertifiedInterval::new(inner.lo() - &pad, inner.hi() + &pad);
            }
            w *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(q) = self.as_rational() {
            return num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN);
        }
        self.eval_fixed(64).midpoint_f64()
    }

    /// Exact sign, via enclosures of increasing precision.
    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if let Some(q) = self.as_rational() {
            return q.cmp(&BigRational::zero());
        }
        let mut w = 64;
        loop {
            if let Some(s) = self.eval_fixed(w).sign() {
                return s;
            }
            w *= 2;
        }
    }

    /// Exact comparison of real values.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        self.check_same(other);
        if self == other {
            return Ordering::Equal;
        }
        (self - other).signum()
    }
}

pub(crate) fn pow2_rational(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        self.check_same(rhs);
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        self.check_same(rhs);
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: sub_coeffs(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        self.check_same(rhs);
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: self.field.mul_coeffs(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q12() -> Arc<FieldDescriptor> {
        FieldDescriptor::new(12)
    }

    #[test]
    fn generator_cos_values() {
        let k = q12();
        assert!(FieldElement::generator_cos(&k, 2).is_one());
        assert!(FieldElement::generator_cos(&k, 3).is_zero());
        assert_eq!(FieldElement::generator_cos(&k, 1), FieldElement::generator(&k));
        assert_eq!(FieldElement::generator_cos(&k, 6), FieldElement::from_int(&k, -2));
        assert_eq!(FieldElement::generator_cos(&k, -1), FieldElement::generator_cos(&k, 11));
        assert_eq!(FieldElement::generator_cos(&k, 0), FieldElement::from_int(&k, 2));
    }

    #[test]
    fn sqrt3_arithmetic() {
        let k = q12();
        let g = FieldElement::generator(&k);
        let one = FieldElement::one(&k);
        assert_eq!((&one + &g) * (&one - &g), FieldElement::from_int(&k, -2));
        assert_eq!(g.inverse().unwrap(), g.scale(&BigRational::new(1.into(), 3.into())));
        assert_eq!(FieldElement::zero(&k).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn solving_the_r_equation() {
        // (3/2 + g) x = -2 - g at y = 0 gives x = -2g/3.
        let k = q12();
        let g = FieldElement::generator(&k);
        let a = &FieldElement::from_ratio(&k, 3, 2) + &g;
        let rhs = -(&FieldElement::from_int(&k, 2) + &g);
        let x = rhs.checked_div(&a).unwrap();
        assert_eq!(x, g.scale(&BigRational::new((-2).into(), 3.into())));
        // (2 + g) / (1 + g/2) is exactly 2.
        let half_g = g.scale(&BigRational::new(1.into(), 2.into()));
        let den = &FieldElement::one(&k) + &half_g;
        let num = &FieldElement::from_int(&k, 2) + &g;
        assert_eq!(num.checked_div(&den).unwrap(), FieldElement::from_int(&k, 2));
    }

    #[test]
    fn degree_four_inverse() {
        let k = FieldDescriptor::new(20);
        assert_eq!(k.degree(), 4);
        let g = FieldElement::generator(&k);
        let x = &(&g.pow(3) + &g) - &FieldElement::from_ratio(&k, 7, 5);
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
    }

    #[test]
    fn eval_sqrt3_and_zero() {
        let k = q12();
        let zero = FieldElement::zero(&k).eval_interval(64);
        assert!(zero.is_point());
        assert!(zero.lo().is_zero());
        let g = FieldElement::generator(&k).eval_interval(64);
        // √3 = 1.73205080756887729352744634150587236694280525381038...
        let den: BigInt = BigInt::from(10).pow(40);
        let lo = BigRational::new(
            "17320508075688772935274463415058723669428".parse().unwrap(),
            den.clone(),
        );
        let hi = BigRational::new("17320508075688772935274463415058723669429".parse().unwrap(), den);
        assert!(g.lo() <= &lo && g.hi() >= &hi);
        assert!(g.width() <= BigRational::new(1.into(), BigInt::one() << 63usize));
    }

    #[test]
    fn generator_refines_to_high_precision() {
        let k = FieldDescriptor::new(20);
        let g = FieldElement::generator(&k);
        let i = g.eval_interval(1000);
        let sq = i.mul(&i);
        // g^4 - 5 g^2 + 5 = 0 at g = 2cos(π/10)
        let p = sq
            .mul(&sq)
            .sub(&sq.mul(&CertifiedInterval::point(BigRational::from_integer(5.into()))));
        let p = p.add(&CertifiedInterval::point(BigRational::from_integer(5.into())));
        assert!(p.contains(&BigRational::zero()));
        assert!(i.width() <= BigRational::new(1.into(), BigInt::one() << 998usize));
    }

    #[test]
    fn signum_and_compare() {
        let k = q12();
        let g = FieldElement::generator(&k);
        let a = &g - &FieldElement::from_ratio(&k, 17, 10);
        assert_eq!(a.signum(), Ordering::Greater);
        assert_eq!(g.cmp_value(&FieldElement::from_int(&k, 2)), Ordering::Less);
        assert_eq!(g.cmp_value(&g), Ordering::Equal);
    }
}
