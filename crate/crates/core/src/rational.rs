//! Exact scalars: rationals, Gaussian-rational coefficients and their
//! textual forms.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{HeckeError, Result};

/// Coefficient field of the Hecke algebra: Gaussian rationals.
pub type Coefficient = Complex<BigRational>;

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn real(r: BigRational) -> Coefficient {
    Complex::new(r, BigRational::zero())
}

/// Parses `"p/q"`, `"n"` or `"-p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || HeckeError::Parse(format!("'{s}' is not a rational number"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Natural form used in element syntax: `3`, `-1/2`.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serialized form used in reports: always `num/den`.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Whether `r` is an integer multiple of `1/p^k` for some `k`.
pub fn has_p_power_denominator(r: &BigRational, p: u64) -> bool {
    let mut d = r.denom().clone();
    let p = BigInt::from(p);
    while (&d % &p).is_zero() {
        d /= &p;
    }
    d.is_one()
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

/// Rational upper bound on `sqrt(r)` for `r >= 0`, exact when `r` is the
/// square of a rational.
pub fn sqrt_upper(r: &BigRational, scale_bits: u32) -> BigRational {
    assert!(!r.is_negative(), "square root of a negative rational");
    let (n, d) = (r.numer(), r.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        return BigRational::new(rn, rd);
    }
    // sqrt(n/d) = sqrt(n d) / d <= ceil(sqrt(n d S^2)) / (d S)
    let scale = BigInt::one() << scale_bits;
    let radicand = n * d * &scale * &scale;
    let mut root = radicand.sqrt();
    if &root * &root < radicand {
        root += 1;
    }
    BigRational::new(root, d * scale)
}

/// Rational lower bound on `sqrt(r)`, exact for rational squares.
pub fn sqrt_lower(r: &BigRational, scale_bits: u32) -> BigRational {
    assert!(!r.is_negative(), "square root of a negative rational");
    let (n, d) = (r.numer(), r.denom());
    let scale = BigInt::one() << scale_bits;
    let radicand = n * d * &scale * &scale;
    BigRational::new(radicand.sqrt(), d * scale)
}

/// A norm value together with whether it is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormBound {
    pub value: BigRational,
    pub exact: bool,
}

impl NormBound {
    pub fn zero() -> Self {
        NormBound { value: BigRational::zero(), exact: true }
    }

    pub fn add(&mut self, other: NormBound) {
        self.value += other.value;
        self.exact &= other.exact;
    }

    pub fn label(&self) -> &'static str {
        if self.exact {
            "EXACT"
        } else {
            "UPPER_BOUND"
        }
    }
}

/// `|c|` for a Gaussian rational: exact when `c` is real, otherwise the
/// smaller of `|a| + |b|` and a scaled integer-square-root upper bound.
pub fn modulus_bound(c: &Coefficient) -> NormBound {
    if c.im.is_zero() {
        return NormBound { value: c.re.abs(), exact: true };
    }
    if c.re.is_zero() {
        return NormBound { value: c.im.abs(), exact: true };
    }
    let norm_sq = &c.re * &c.re + &c.im * &c.im;
    let root = sqrt_upper(&norm_sq, 40);
    let exact = &root * &root == norm_sq;
    let crude = c.re.abs() + c.im.abs();
    NormBound { value: root.min(crude), exact }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientJson {
    pub num_re: String,
    pub den_re: String,
    pub num_im: String,
    pub den_im: String,
}

impl From<&Coefficient> for CoefficientJson {
    fn from(c: &Coefficient) -> Self {
        CoefficientJson {
            num_re: c.re.numer().to_string(),
            den_re: c.re.denom().to_string(),
            num_im: c.im.numer().to_string(),
            den_im: c.im.denom().to_string(),
        }
    }
}

impl CoefficientJson {
    pub fn to_coefficient(&self) -> Result<Coefficient> {
        let part = |n: &str, d: &str| parse_rational(&format!("{n}/{d}"));
        Ok(Complex::new(part(&self.num_re, &self.den_re)?, part(&self.num_im, &self.den_im)?))
    }
}
