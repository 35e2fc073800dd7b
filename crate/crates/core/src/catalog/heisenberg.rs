use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{HeckeError, Result};
use crate::group::{GroupOracle, SeededRng};
use crate::rational::{fmt_rational, frac, int, parse_rational, rat};

/// The unitriangular matrix `[[1, x, z], [0, 1, y], [0, 0, 1]]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ut3 {
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
}

impl Ut3 {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Self {
        Ut3 { x, y, z }
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer() && self.z.is_integer()
    }

    /// Membership in the subgroup whose superdiagonal is integral.
    pub fn superdiagonal_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }
}

/// `(UT₃(Q), UT₃(Z))`, the rational Heisenberg group over its integer points.
#[derive(Debug, Clone)]
pub struct Heisenberg {
    gens: Vec<Ut3>,
}

impl Default for Heisenberg {
    fn default() -> Self {
        let (o, l) = (BigRational::zero(), BigRational::one());
        Heisenberg {
            gens: vec![
                Ut3::new(l.clone(), o.clone(), o.clone()),
                Ut3::new(o.clone(), l.clone(), o.clone()),
                Ut3::new(o.clone(), o, l),
            ],
        }
    }
}

impl GroupOracle for Heisenberg {
    type Element = Ut3;

    fn name(&self) -> String {
        "heisenberg".into()
    }

    fn identity(&self) -> Ut3 {
        Ut3::new(BigRational::zero(), BigRational::zero(), BigRational::zero())
    }

    fn multiply(&self, a: &Ut3, b: &Ut3) -> Ut3 {
        Ut3::new(&a.x + &b.x, &a.y + &b.y, &a.z + &b.z + &a.x * &b.y)
    }

    fn invert(&self, a: &Ut3) -> Ut3 {
        Ut3::new(-&a.x, -&a.y, &a.x * &a.y - &a.z)
    }

    fn in_gamma(&self, g: &Ut3) -> bool {
        g.is_integral()
    }

    fn gamma_generators(&self) -> &[Ut3] {
        &self.gens
    }

    /// `(x, y, z)(a, b, c) = (x + a, y + b, z + c + x·b)`; choosing `a`, `b`
    /// then `c` brings every entry into `[0, 1)`, and that point is unique.
    fn coset_rep(&self, g: &Ut3) -> Ut3 {
        let b = -g.y.floor();
        Ut3::new(frac(&g.x), frac(&g.y), frac(&(&g.z + &g.x * &b)))
    }

    fn format_element(&self, g: &Ut3) -> String {
        let (o, l) = ("0".to_string(), "1".to_string());
        [
            l.clone(),
            fmt_rational(&g.x),
            fmt_rational(&g.z),
            o.clone(),
            l.clone(),
            fmt_rational(&g.y),
            o.clone(),
            o,
            l,
        ]
        .join(",")
    }

    fn parse_element(&self, s: &str) -> Result<Ut3> {
        let entries: Vec<BigRational> =
            s.split(',').map(parse_rational).collect::<Result<_>>()?;
        if entries.len() != 9 {
            return Err(HeckeError::Parse(format!(
                "'{s}': expected nine comma-separated rationals (row-major 3x3)"
            )));
        }
        let unit = [0, 4, 8].iter().all(|&i| entries[i].is_one());
        let lower = [3, 6, 7].iter().all(|&i| entries[i].is_zero());
        if !unit || !lower {
            return Err(HeckeError::Parse(format!("'{s}' is not upper unitriangular")));
        }
        Ok(Ut3::new(entries[1].clone(), entries[5].clone(), entries[2].clone()))
    }

    fn sample_element(&self, rng: &mut SeededRng) -> Ut3 {
        let entry = |rng: &mut SeededRng| {
            let den = rng.gen_range(1..=4);
            if rng.gen_bool(0.25) {
                int(rng.gen_range(-2..=2))
            } else {
                rat(rng.gen_range(-4..=4), den)
            }
        };
        let x = entry(rng);
        let y = entry(rng);
        let z = entry(rng);
        Ut3::new(x, y, z)
    }
}
