use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{parse_signed_pair, Sign};
use crate::error::{HeckeError, Result};
use crate::group::{GroupOracle, SeededRng};
use crate::rational::{fmt_rational, frac, has_p_power_denominator};

/// Element `(q, ±)` of `Z_{p^∞} ⋊ Z/2`, with `q` a fraction mod 1 whose
/// denominator is a power of `p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QElem {
    pub offset: BigRational,
    pub sign: Sign,
}

/// The generalized dihedral group of the p-quasicyclic group, with Γ the
/// order-two subgroup `{(0, +), (0, -)}`. Multiplication is
/// `(a, s)(b, t) = (a + s·b, s·t)`.
#[derive(Debug, Clone)]
pub struct QuasicyclicDihedral {
    p: u64,
    gens: Vec<QElem>,
}

impl QuasicyclicDihedral {
    pub fn new(p: u64) -> Self {
        QuasicyclicDihedral {
            p,
            gens: vec![QElem { offset: BigRational::zero(), sign: Sign::Minus }],
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn element(&self, offset: BigRational, sign: Sign) -> QElem {
        QElem { offset: frac(&offset), sign }
    }
}

impl GroupOracle for QuasicyclicDihedral {
    type Element = QElem;

    fn name(&self) -> String {
        format!("quasicyclic-dihedral(p={})", self.p)
    }

    fn identity(&self) -> QElem {
        QElem { offset: BigRational::zero(), sign: Sign::Plus }
    }

    fn multiply(&self, a: &QElem, b: &QElem) -> QElem {
        self.element(&a.offset + a.sign.act(&b.offset), a.sign * b.sign)
    }

    fn invert(&self, a: &QElem) -> QElem {
        // (a, s)^-1 = (-s·a, s)
        self.element(-a.sign.act(&a.offset), a.sign)
    }

    fn in_gamma(&self, g: &QElem) -> bool {
        g.offset.is_zero()
    }

    fn gamma_generators(&self) -> &[QElem] {
        &self.gens
    }

    fn coset_rep(&self, g: &QElem) -> QElem {
        QElem { offset: g.offset.clone(), sign: Sign::Plus }
    }

    fn format_element(&self, g: &QElem) -> String {
        format!("{},{}", fmt_rational(&g.offset), g.sign)
    }

    fn parse_element(&self, s: &str) -> Result<QElem> {
        let (offset, sign) = parse_signed_pair(s)?;
        if !has_p_power_denominator(&offset, self.p) {
            return Err(HeckeError::Parse(format!(
                "offset {} does not have a power-of-{} denominator",
                fmt_rational(&offset),
                self.p
            )));
        }
        Ok(self.element(offset, sign))
    }

    fn sample_element(&self, rng: &mut SeededRng) -> QElem {
        let mut max_exp = 0u32;
        while self.p.pow(max_exp + 1) <= 64 {
            max_exp += 1;
        }
        let den = self.p.pow(rng.gen_range(0..=max_exp.max(1)));
        let num = rng.gen_range(0..den);
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let offset = if den.is_one() {
            BigRational::zero()
        } else {
            BigRational::new(BigInt::from(num), BigInt::from(den))
        };
        self.element(offset, sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn offsets_reduce_mod_one() {
        let g = QuasicyclicDihedral::new(2);
        let a = g.parse_element("-1/4,+").unwrap();
        assert_eq!(a.offset, rat(3, 4));
        let b = g.parse_element("1/2,-").unwrap();
        assert_eq!(g.multiply(&b, &b), g.identity());
        assert!(g.parse_element("1/3,+").is_err());
    }

    #[test]
    fn inverse_of_translation() {
        let g = QuasicyclicDihedral::new(3);
        let a = g.parse_element("1/9,+").unwrap();
        assert_eq!(g.invert(&a).offset, rat(8, 9));
        assert_eq!(g.multiply(&a, &g.invert(&a)), g.identity());
    }
}
