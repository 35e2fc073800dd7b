use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::Rng;

use crate::error::{HeckeError, Result};
use crate::group::{random_gamma, GroupOracle, SeededRng};
use crate::hnf::column_hnf;
use crate::rational::{fmt_rational, has_p_power_denominator, parse_rational};

/// An element of `SL₂(Z[1/p])` stored as `m / p^exp` with `m` an integer
/// matrix `[a, b, c, d]` (row-major) and `exp` minimal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sl2Elem {
    pub exp: u32,
    pub m: [BigInt; 4],
}

/// `(SL₂(Z[1/p]), SL₂(Z))`. Cosets `gΓ` are canonicalized through the
/// lattice `g·Z²`: scale to a primitive integer matrix, then take the
/// column Hermite normal form.
#[derive(Debug, Clone)]
pub struct Sl2Localized {
    p: u64,
    gens: Vec<Sl2Elem>,
}

fn ints(v: [i64; 4]) -> [BigInt; 4] {
    v.map(BigInt::from)
}

impl Sl2Localized {
    pub fn new(p: u64) -> Self {
        let plain = |m| Sl2Elem { exp: 0, m: ints(m) };
        Sl2Localized { p, gens: vec![plain([0, -1, 1, 0]), plain([1, 1, 0, 1])] }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn normalize(&self, mut exp: u32, mut m: [BigInt; 4]) -> Sl2Elem {
        let p = BigInt::from(self.p);
        while exp > 0 && m.iter().all(|x| x.is_multiple_of(&p)) {
            for x in m.iter_mut() {
                *x /= &p;
            }
            exp -= 1;
        }
        Sl2Elem { exp, m }
    }

    /// `diag(p^k, p^-k)`.
    pub fn diagonal(&self, k: u32) -> Sl2Elem {
        let p = BigInt::from(self.p);
        let big = Pow::pow(&p, 2 * k);
        self.normalize(k, [big, BigInt::zero(), BigInt::zero(), BigInt::one()])
    }

    pub fn entries(&self, g: &Sl2Elem) -> [BigRational; 4] {
        let den = Pow::pow(&BigInt::from(self.p), g.exp);
        g.m.clone().map(|x| BigRational::new(x, den.clone()))
    }
}

impl GroupOracle for Sl2Localized {
    type Element = Sl2Elem;

    fn name(&self) -> String {
        format!("sl2-localized(p={})", self.p)
    }

    fn identity(&self) -> Sl2Elem {
        Sl2Elem { exp: 0, m: ints([1, 0, 0, 1]) }
    }

    fn multiply(&self, x: &Sl2Elem, y: &Sl2Elem) -> Sl2Elem {
        let [a, b, c, d] = &x.m;
        let [e, f, g, h] = &y.m;
        self.normalize(
            x.exp + y.exp,
            [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h],
        )
    }

    fn invert(&self, x: &Sl2Elem) -> Sl2Elem {
        // det(m) = p^(2 exp), so (m / p^exp)^-1 = adj(m) / p^exp
        let [a, b, c, d] = &x.m;
        Sl2Elem { exp: x.exp, m: [d.clone(), -b, -c, a.clone()] }
    }

    fn in_gamma(&self, g: &Sl2Elem) -> bool {
        g.exp == 0
    }

    fn gamma_generators(&self) -> &[Sl2Elem] {
        &self.gens
    }

    fn coset_rep(&self, g: &Sl2Elem) -> Sl2Elem {
        let [a, b, c, d] = g.m.clone();
        let h = column_hnf(&vec![vec![a, b], vec![c, d]]).expect("SL2 elements are nonsingular");
        self.normalize(
            g.exp,
            [h[0][0].clone(), h[0][1].clone(), h[1][0].clone(), h[1][1].clone()],
        )
    }

    fn format_element(&self, g: &Sl2Elem) -> String {
        self.entries(g).iter().map(fmt_rational).collect::<Vec<_>>().join(",")
    }

    fn parse_element(&self, s: &str) -> Result<Sl2Elem> {
        let entries: Vec<BigRational> = s.split(',').map(parse_rational).collect::<Result<_>>()?;
        if entries.len() != 4 {
            return Err(HeckeError::Parse(format!("'{s}': expected four rationals a,b,c,d")));
        }
        if entries.iter().any(|e| !has_p_power_denominator(e, self.p)) {
            return Err(HeckeError::Parse(format!(
                "'{s}': entries must have power-of-{} denominators",
                self.p
            )));
        }
        if &entries[0] * &entries[3] - &entries[1] * &entries[2] != BigRational::one() {
            return Err(HeckeError::Parse(format!("'{s}': determinant is not 1")));
        }
        let mut exp = 0u32;
        let p = BigInt::from(self.p);
        let mut scale = BigInt::one();
        while entries.iter().any(|e| !(e * BigRational::from_integer(scale.clone())).is_integer()) {
            exp += 1;
            scale *= &p;
        }
        let m = [0, 1, 2, 3].map(|i| (&entries[i] * BigRational::from_integer(scale.clone())).to_integer());
        Ok(self.normalize(exp, m))
    }

    fn sample_element(&self, rng: &mut SeededRng) -> Sl2Elem {
        let left = random_gamma(self, rng, 4);
        if rng.gen_bool(0.3) {
            return left;
        }
        let right = random_gamma(self, rng, 4);
        let mut d = self.diagonal(1);
        if rng.gen_bool(0.5) {
            d = self.invert(&d);
        }
        self.multiply(&self.multiply(&left, &d), &right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_normalize() {
        let g = Sl2Localized::new(2);
        let d = g.parse_element("2,0,0,1/2").unwrap();
        assert_eq!(d, g.diagonal(1));
        assert_eq!(d.exp, 1);
        assert_eq!(g.format_element(&d), "2,0,0,1/2");
        assert!(g.parse_element("2,0,0,1").is_err());
        assert!(g.parse_element("3,0,0,1/3").is_err());
        assert_eq!(g.multiply(&d, &g.invert(&d)), g.identity());
    }

    #[test]
    fn coset_rep_is_constant_on_cosets() {
        let g = Sl2Localized::new(3);
        let d = g.diagonal(1);
        let rep = g.coset_rep(&d);
        for gamma in g.gamma_generators() {
            assert_eq!(g.coset_rep(&g.multiply(&d, gamma)), rep);
        }
        assert!(g.in_gamma(&g.multiply(&g.invert(&d), &rep)));
    }
}
