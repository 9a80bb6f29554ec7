//! Dense integer polynomials and the real cyclotomic minimal polynomials built from them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer polynomial with coefficients in ascending degree order.
///
/// Always canonical: no trailing zero coefficients, so the zero polynomial is
/// the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    pub fn from_i64s(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coefficients.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Exact division by a monic divisor. Panics if the divisor is not monic
    /// or does not divide `self`.
    pub fn div_exact_monic(&self, divisor: &Self) -> Self {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree().unwrap();
        let Some(nd) = self.degree() else {
            return Self::zero();
        };
        assert!(nd >= dd, "divisor degree exceeds dividend degree");
        let mut rem = self.coefficients.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd].clone();
            if q.is_zero() {
                continue;
            }
            for (i, d) in divisor.coefficients.iter().enumerate() {
                rem[k + i] -= &q * d;
            }
            quot[k] = q;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        Self::new(quot)
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        let Some(lead) = self.leading() else {
            return Self::zero();
        };
        let g = self.coefficients.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let g = if lead.is_negative() { -g } else { g };
        Self::new(self.coefficients.iter().map(|c| c / &g).collect())
    }

    /// Evaluates `self(num / 2^shift) * 2^(shift * deg)`, an exact integer.
    pub fn eval_dyadic_scaled(&self, num: &BigInt, shift: u64) -> BigInt {
        // Homogenised Horner: sum a_i num^i 2^{shift (deg - i)}.
        let mut out = BigInt::zero();
        let mut scale = BigInt::one();
        for a in self.coefficients.iter().rev() {
            out = out * num + a * &scale;
            scale <<= shift as usize;
        }
        out
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + bigint_to_f64(c))
    }
}

pub(crate) fn bigint_to_f64(x: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// The cyclotomic polynomial Φ_m, by exact division of z^m - 1 by Φ_d for
/// every proper divisor d of m.
pub fn cyclotomic(m: u64) -> IntPolynomial {
    fn go(m: u64, memo: &mut BTreeMap<u64, IntPolynomial>) -> IntPolynomial {
        if let Some(p) = memo.get(&m) {
            return p.clone();
        }
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = BigInt::from(-1);
        num[m as usize] = BigInt::one();
        let mut acc = IntPolynomial::new(num);
        for d in divisors(m) {
            if d < m {
                let phi_d = go(d, memo);
                acc = acc.div_exact_monic(&phi_d);
            }
        }
        memo.insert(m, acc.clone());
        acc
    }
    assert!(m >= 1);
    go(m, &mut BTreeMap::new())
}

/// Monic minimal polynomial of 2cos(2π/m).
///
/// For m ≥ 3 the palindromic Φ_m(z) equals z^h Ψ(z + 1/z) with h = φ(m)/2;
/// matching coefficients from the top down gives a triangular system for Ψ.
pub fn real_cyclotomic_minpoly(m: u64) -> IntPolynomial {
    assert!(m >= 1, "conductor must be positive");
    match m {
        1 => return IntPolynomial::from_i64s(&[-2, 1]),
        2 => return IntPolynomial::from_i64s(&[2, 1]),
        _ => {}
    }
    let phi = cyclotomic(m);
    let h = (totient(m) / 2) as usize;
    debug_assert_eq!(phi.degree(), Some(2 * h));
    let pc = phi.coefficients();
    // z^h (z + 1/z)^k = sum_i C(k, i) z^{h + k - 2i}; the z^{h+t} coefficient
    // collects c_k C(k, (k - t)/2) over k ≥ t with k ≡ t (mod 2).
    let mut psi = vec![BigInt::zero(); h + 1];
    for t in (0..=h).rev() {
        let mut v = pc[h + t].clone();
        let mut k = t + 2;
        while k <= h {
            v -= &psi[k] * binomial(k as u64, ((k - t) / 2) as u64);
            k += 2;
        }
        psi[t] = v;
    }
    IntPolynomial::new(psi)
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
