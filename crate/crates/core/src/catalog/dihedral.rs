use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use super::{parse_signed_pair, Sign};
use crate::error::{HeckeError, Result};
use crate::group::{GroupOracle, SeededRng};

/// Element `(m, ±)` of `Z ⋊ Z/2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DElem {
    pub offset: BigInt,
    pub sign: Sign,
}

/// The infinite dihedral group with Γ generated by the reflection `(0, -)`.
/// Multiplication is `(a, s)(b, t) = (a + s·b, s·t)`.
#[derive(Debug, Clone)]
pub struct InfiniteDihedral {
    gens: Vec<DElem>,
}

impl Default for InfiniteDihedral {
    fn default() -> Self {
        InfiniteDihedral { gens: vec![DElem { offset: BigInt::zero(), sign: Sign::Minus }] }
    }
}

impl InfiniteDihedral {
    pub fn element(&self, offset: i64, sign: Sign) -> DElem {
        DElem { offset: BigInt::from(offset), sign }
    }
}

impl GroupOracle for InfiniteDihedral {
    type Element = DElem;

    fn name(&self) -> String {
        "infinite-dihedral".into()
    }

    fn identity(&self) -> DElem {
        DElem { offset: BigInt::zero(), sign: Sign::Plus }
    }

    fn multiply(&self, a: &DElem, b: &DElem) -> DElem {
        let offset = match a.sign {
            Sign::Plus => &a.offset + &b.offset,
            Sign::Minus => &a.offset - &b.offset,
        };
        DElem { offset, sign: a.sign * b.sign }
    }

    fn invert(&self, a: &DElem) -> DElem {
        let offset = match a.sign {
            Sign::Plus => -&a.offset,
            Sign::Minus => a.offset.clone(),
        };
        DElem { offset, sign: a.sign }
    }

    fn in_gamma(&self, g: &DElem) -> bool {
        g.offset.is_zero()
    }

    fn gamma_generators(&self) -> &[DElem] {
        &self.gens
    }

    fn coset_rep(&self, g: &DElem) -> DElem {
        DElem { offset: g.offset.clone(), sign: Sign::Plus }
    }

    fn format_element(&self, g: &DElem) -> String {
        format!("{},{}", g.offset, g.sign)
    }

    fn parse_element(&self, s: &str) -> Result<DElem> {
        let (offset, sign) = parse_signed_pair(s)?;
        if !offset.is_integer() {
            return Err(HeckeError::Parse(format!("'{s}': offset must be an integer")));
        }
        Ok(DElem { offset: offset.to_integer(), sign })
    }

    fn sample_element(&self, rng: &mut SeededRng) -> DElem {
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        self.element(rng.gen_range(-4..=4), sign)
    }
}
