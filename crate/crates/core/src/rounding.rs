//! Upward-rounded floating point: each operation returns a float that is
//! never below the exact real result.

use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Smallest float we can cheaply certify to be `>= r`.
pub fn from_rational_up(r: &BigRational) -> f64 {
    let x = r.to_f64().unwrap_or(f64::INFINITY);
    if !x.is_finite() {
        return x;
    }
    match BigRational::from_float(x) {
        Some(exact) if &exact >= r => x,
        _ => x.next_up(),
    }
}

pub fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s;
    }
    // TwoSum: s + err == a + b exactly
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    if err > 0.0 {
        s.next_up()
    } else {
        s
    }
}

pub fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    if a.mul_add(b, -p) > 0.0 {
        p.next_up()
    } else {
        p
    }
}

/// Upper bound on `sqrt(x)` for `x >= 0`.
pub fn sqrt_up(x: f64) -> f64 {
    let s = x.sqrt();
    if !s.is_finite() {
        return s;
    }
    if s.mul_add(s, -x) < 0.0 {
        s.next_up()
    } else {
        s
    }
}
