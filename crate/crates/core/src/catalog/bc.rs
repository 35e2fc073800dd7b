use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{HeckeError, Result};
use crate::group::{GroupOracle, SeededRng};
use crate::rational::{fmt_rational, parse_rational};

/// The affine map `x ↦ a·x + b` written `(b, a)`, with `a > 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AxB {
    pub b: BigRational,
    pub a: BigRational,
}

/// `(Q ⋊ Q⁺, Z)`: the ax+b group over the rationals with Γ the integer
/// translations. `(b, a)(b', a') = (b + a·b', a·a')`.
#[derive(Debug, Clone)]
pub struct BcPair {
    gens: Vec<AxB>,
}

impl Default for BcPair {
    fn default() -> Self {
        BcPair { gens: vec![AxB { b: BigRational::one(), a: BigRational::one() }] }
    }
}

impl BcPair {
    pub fn element(&self, b: BigRational, a: BigRational) -> AxB {
        assert!(a.is_positive(), "dilation must be positive");
        AxB { b, a }
    }
}

impl GroupOracle for BcPair {
    type Element = AxB;

    fn name(&self) -> String {
        "bc-axb".into()
    }

    fn identity(&self) -> AxB {
        AxB { b: BigRational::zero(), a: BigRational::one() }
    }

    fn multiply(&self, x: &AxB, y: &AxB) -> AxB {
        AxB { b: &x.b + &x.a * &y.b, a: &x.a * &y.a }
    }

    fn invert(&self, x: &AxB) -> AxB {
        AxB { b: -&x.b / &x.a, a: x.a.recip() }
    }

    fn in_gamma(&self, g: &AxB) -> bool {
        g.a.is_one() && g.b.is_integer()
    }

    fn gamma_generators(&self) -> &[AxB] {
        &self.gens
    }

    fn coset_rep(&self, g: &AxB) -> AxB {
        // gΓ = {(b + a·n, a)}; reduce b modulo a
        let q = (&g.b / &g.a).floor();
        AxB { b: &g.b - &g.a * q, a: g.a.clone() }
    }

    fn format_element(&self, g: &AxB) -> String {
        format!("{},{}", fmt_rational(&g.b), fmt_rational(&g.a))
    }

    fn parse_element(&self, s: &str) -> Result<AxB> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 2 {
            return Err(HeckeError::Parse(format!("'{s}': expected 'b,a'")));
        }
        let b = parse_rational(parts[0])?;
        let a = parse_rational(parts[1])?;
        if !a.is_positive() {
            return Err(HeckeError::Parse(format!("'{s}': dilation a must be positive")));
        }
        Ok(AxB { b, a })
    }

    fn sample_element(&self, rng: &mut SeededRng) -> AxB {
        const SMALL: [i64; 4] = [1, 2, 3, 4];
        let num = SMALL[rng.gen_range(0..SMALL.len())];
        let den = SMALL[rng.gen_range(0..SMALL.len())];
        let b = BigRational::new(BigInt::from(rng.gen_range(-6..=6)), BigInt::from(rng.gen_range(1..=4)));
        AxB { b, a: BigRational::new(BigInt::from(num), BigInt::from(den)) }
    }
}
