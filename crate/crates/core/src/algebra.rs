//! The Hecke algebra over the double-coset basis: sparse elements with exact
//! Gaussian-rational coefficients, convolution, involution and L¹-norm.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::{DoubleCoset, GroupOracle, HeckePair, SeededRng};
use crate::rational::{modulus_bound, real, Coefficient, CoefficientJson, NormBound};

#[derive(Debug, Clone)]
pub struct Term<E> {
    pub coset: DoubleCoset<E>,
    pub coeff: Coefficient,
}

/// A finitely supported function on double cosets. Terms are keyed by the
/// canonical double-coset key; zero coefficients are never stored.
#[derive(Debug, Clone)]
pub struct HeckeElement<E> {
    terms: BTreeMap<E, Term<E>>,
}

impl<E: Clone + Ord> Default for HeckeElement<E> {
    fn default() -> Self {
        HeckeElement { terms: BTreeMap::new() }
    }
}

impl<E: Clone + Ord> PartialEq for HeckeElement<E> {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(other.terms.iter())
                .all(|((k1, t1), (k2, t2))| k1 == k2 && t1.coeff == t2.coeff)
    }
}

impl<E: Clone + Ord> HeckeElement<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The characteristic function `χ_c`.
    pub fn basis(c: &DoubleCoset<E>) -> Self {
        Self::single(c, real(BigRational::one()))
    }

    pub fn single(c: &DoubleCoset<E>, coeff: Coefficient) -> Self {
        let mut f = Self::zero();
        f.add_term(c, coeff);
        f
    }

    pub fn add_term(&mut self, c: &DoubleCoset<E>, coeff: Coefficient) {
        if coeff.is_zero() {
            return;
        }
        let key = c.key().clone();
        match self.terms.get_mut(&key) {
            Some(t) => {
                t.coeff = &t.coeff + coeff;
                if t.coeff.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, Term { coset: c.canonical(), coeff });
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term<E>> {
        self.terms.values()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &E) -> Coefficient {
        self.terms.get(key).map(|t| t.coeff.clone()).unwrap_or_else(Coefficient::zero)
    }

    pub fn support(&self) -> Vec<DoubleCoset<E>> {
        self.terms.values().map(|t| t.coset.clone()).collect()
    }

    pub fn keys(&self) -> impl Iterator<Item = &E> {
        self.terms.keys()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for t in other.terms() {
            out.add_term(&t.coset, t.coeff.clone());
        }
        out
    }

    pub fn scale(&self, s: &Coefficient) -> Self {
        let mut out = Self::zero();
        for t in self.terms() {
            out.add_term(&t.coset, &t.coeff * s);
        }
        out
    }

    /// Whether every coefficient is a nonnegative real.
    pub fn is_nonnegative(&self) -> bool {
        self.terms().all(|t| t.coeff.im.is_zero() && t.coeff.re >= BigRational::zero())
    }
}

/// `ΓgΓ * ΓhΓ = Σ_{wΓ ⊆ ΓhΓ} L(g)/L(gw) · ΓgwΓ`, computed from the keys of
/// both factors and memoized per key pair.
pub fn coset_product<O: GroupOracle>(
    pair: &HeckePair<O>,
    g: &DoubleCoset<O::Element>,
    h: &DoubleCoset<O::Element>,
) -> Result<HeckeElement<O::Element>> {
    let terms = match pair.cached_product(g.key(), h.key()) {
        Some(t) => t,
        None => {
            let mut acc: BTreeMap<O::Element, (DoubleCoset<O::Element>, BigRational)> = BTreeMap::new();
            let lg = BigRational::from_integer(BigInt::from(g.l()));
            for w in h.left_reps() {
                let c = pair.double_coset(&pair.mul(g.key(), w))?;
                let ratio = &lg / BigRational::from_integer(BigInt::from(c.l()));
                acc.entry(c.key().clone())
                    .and_modify(|e| e.1 += &ratio)
                    .or_insert((c.canonical(), ratio));
            }
            let terms: Arc<[_]> = acc.into_values().collect();
            pair.store_product(g.key().clone(), h.key().clone(), terms)
        }
    };
    let mut out = HeckeElement::zero();
    for (c, q) in terms.iter() {
        out.add_term(c, real(q.clone()));
    }
    Ok(out)
}

/// Coefficient of `ΓsΓ` in `ΓgΓ * ΓhΓ`, as `L(g)·C_{g,h}(s)/L(s)` with
/// `C_{g,h}(s) = #{wΓ ⊆ ΓhΓ : ΓgwΓ = ΓsΓ}`.
pub fn structure_coefficient<O: GroupOracle>(
    pair: &HeckePair<O>,
    g: &DoubleCoset<O::Element>,
    h: &DoubleCoset<O::Element>,
    s: &DoubleCoset<O::Element>,
) -> Result<BigRational> {
    let mut count = 0u64;
    for w in h.left_reps() {
        if pair.same_double_coset(s.rep(), &pair.mul(g.rep(), w))? {
            count += 1;
        }
    }
    Ok(BigRational::new(BigInt::from(g.l() * count), BigInt::from(s.l())))
}

/// The product rebuilt from structure coefficients over the candidate
/// support `{ΓgwΓ}`; an independent path to [`coset_product`].
pub fn product_via_structure_coefficients<O: GroupOracle>(
    pair: &HeckePair<O>,
    g: &DoubleCoset<O::Element>,
    h: &DoubleCoset<O::Element>,
) -> Result<HeckeElement<O::Element>> {
    let mut candidates: BTreeMap<O::Element, DoubleCoset<O::Element>> = BTreeMap::new();
    for w in h.left_reps() {
        let c = pair.double_coset(&pair.mul(g.rep(), w))?;
        candidates.entry(c.key().clone()).or_insert(c);
    }
    let mut out = HeckeElement::zero();
    for s in candidates.values() {
        out.add_term(s, real(structure_coefficient(pair, g, h, s)?));
    }
    Ok(out)
}

pub fn convolve<O: GroupOracle>(
    pair: &HeckePair<O>,
    f1: &HeckeElement<O::Element>,
    f2: &HeckeElement<O::Element>,
) -> Result<HeckeElement<O::Element>> {
    let mut out = HeckeElement::zero();
    for a in f1.terms() {
        for b in f2.terms() {
            let coeff = &a.coeff * &b.coeff;
            for t in coset_product(pair, &a.coset, &b.coset)?.terms() {
                out.add_term(&t.coset, &t.coeff * &coeff);
            }
        }
    }
    Ok(out)
}

/// `f*(ΓgΓ) = Δ(g⁻¹)·conj(f(Γg⁻¹Γ))`, i.e. `(χ_s)* = Δ(s)·χ_{Γs⁻¹Γ}`.
pub fn involution<O: GroupOracle>(
    pair: &HeckePair<O>,
    f: &HeckeElement<O::Element>,
) -> Result<HeckeElement<O::Element>> {
    let mut out = HeckeElement::zero();
    for t in f.terms() {
        let inv = pair.double_coset(&pair.inv(t.coset.key()))?;
        out.add_term(&inv, t.coeff.conj() * t.coset.delta().clone());
    }
    Ok(out)
}

/// `‖f‖ = Σ |f(ΓgΓ)|·L(g)`; exact unless some coefficient has an irrational
/// modulus, in which case a certified upper bound.
pub fn l1_norm<E: Clone + Ord>(f: &HeckeElement<E>) -> NormBound {
    let mut total = NormBound::zero();
    for t in f.terms() {
        let m = modulus_bound(&t.coeff);
        total.add(NormBound {
            value: m.value * BigRational::from_integer(BigInt::from(t.coset.l())),
            exact: m.exact,
        });
    }
    total
}

/// A random element supported on up to `max_terms` double cosets of sampled
/// elements, with small integer (optionally Gaussian) coefficients.
pub fn sample_element<O: GroupOracle>(
    pair: &HeckePair<O>,
    rng: &mut SeededRng,
    max_terms: usize,
    nonnegative: bool,
) -> Result<HeckeElement<O::Element>> {
    let mut f = HeckeElement::zero();
    let n = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..n {
        let c = pair.double_coset(&pair.sample_element(rng))?;
        let coeff = if nonnegative {
            let q = BigRational::new(BigInt::from(rng.gen_range(1..=5)), BigInt::from(rng.gen_range(1..=3)));
            real(q)
        } else {
            Coefficient::new(
                BigRational::new(BigInt::from(rng.gen_range(-4..=4)), BigInt::from(rng.gen_range(1..=3))),
                BigRational::from_integer(BigInt::from(rng.gen_range(-2..=2))),
            )
        };
        f.add_term(&c, coeff);
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub key: String,
    pub coefficient: CoefficientJson,
    #[serde(rename = "L")]
    pub l: u64,
    #[serde(rename = "R")]
    pub r: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeElementJson {
    pub terms: Vec<TermJson>,
}

pub fn element_json<O: GroupOracle>(
    pair: &HeckePair<O>,
    f: &HeckeElement<O::Element>,
) -> HeckeElementJson {
    HeckeElementJson {
        terms: f
            .terms()
            .map(|t| TermJson {
                key: pair.fmt(t.coset.key()),
                coefficient: CoefficientJson::from(&t.coeff),
                l: t.coset.l(),
                r: t.coset.r(),
            })
            .collect(),
    }
}
