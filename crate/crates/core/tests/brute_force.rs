//! Cross-checks against direct computations inside finite groups: double
//! cosets as explicit sets and convolution as an explicit sum over G.

use std::collections::{BTreeMap, BTreeSet};

use hecke_core::algebra::{coset_product, involution, HeckeElement};
use hecke_core::catalog::{self, af_filtration_check, finite_perm, QuasicyclicDihedral, Sign};
use hecke_core::graph::{closure, successors};
use hecke_core::group::{GroupOracle, HeckePair};
use hecke_core::rational::{rat, real};
use num_bigint::BigInt;
use num_rational::BigRational;

/// A finite group `H` with `Γ ⊆ H`, listed explicitly.
struct Finite<'a, O: GroupOracle> {
    oracle: &'a O,
    elements: Vec<O::Element>,
    gamma: Vec<O::Element>,
}

impl<'a, O: GroupOracle> Finite<'a, O> {
    fn new(oracle: &'a O, elements: Vec<O::Element>) -> Self {
        let gamma = elements.iter().filter(|g| oracle.in_gamma(g)).cloned().collect();
        Finite { oracle, elements, gamma }
    }

    fn double_coset(&self, g: &O::Element) -> BTreeSet<O::Element> {
        let mut out = BTreeSet::new();
        for a in &self.gamma {
            for b in &self.gamma {
                out.insert(self.oracle.multiply(&self.oracle.multiply(a, g), b));
            }
        }
        out
    }

    fn all_double_cosets(&self) -> Vec<BTreeSet<O::Element>> {
        let mut seen: Vec<BTreeSet<O::Element>> = Vec::new();
        for g in &self.elements {
            if !seen.iter().any(|d| d.contains(g)) {
                seen.push(self.double_coset(g));
            }
        }
        seen
    }

    /// `|ΓgΓ| / |Γ|`.
    fn l(&self, g: &O::Element) -> u64 {
        (self.double_coset(g).len() / self.gamma.len()) as u64
    }

    /// `(f1 * f2)(x) = (1/|Γ|) Σ_{h ∈ H} f1(h) f2(h⁻¹x)` for indicator
    /// functions of double cosets.
    fn convolve_at(&self, a: &BTreeSet<O::Element>, b: &BTreeSet<O::Element>, x: &O::Element) -> BigRational {
        let count = self
            .elements
            .iter()
            .filter(|h| a.contains(h) && b.contains(&self.oracle.multiply(&self.oracle.invert(h), x)))
            .count();
        BigRational::new(BigInt::from(count), BigInt::from(self.gamma.len()))
    }
}

fn brute_products<O: GroupOracle>(pair: &HeckePair<O>, finite: &Finite<O>) {
    let cosets = finite.all_double_cosets();
    for a in &cosets {
        for b in &cosets {
            let ga = pair.double_coset(a.first().unwrap()).unwrap();
            let gb = pair.double_coset(b.first().unwrap()).unwrap();
            let engine = coset_product(pair, &ga, &gb).unwrap();
            let mut expected = HeckeElement::zero();
            for s in &cosets {
                let x = s.first().unwrap();
                let v = finite.convolve_at(a, b, x);
                expected.add_term(&pair.double_coset(x).unwrap(), real(v));
            }
            assert_eq!(engine, expected);
        }
    }
}

#[test]
fn s4_double_cosets_match_enumeration() {
    let pair = HeckePair::new(finite_perm());
    let all = pair.oracle().all_elements();
    assert_eq!(all.len(), 24);
    let finite = Finite::new(pair.oracle(), all.clone());
    let cosets = finite.all_double_cosets();
    let engine_keys: BTreeSet<_> = all.iter().map(|g| pair.double_coset(g).unwrap().key().clone()).collect();
    assert_eq!(cosets.len(), engine_keys.len());
    assert_eq!(cosets.len(), 7);
    for g in &all {
        assert_eq!(pair.l_value(g).unwrap(), finite.l(g));
        for h in &all {
            let same = finite.double_coset(g).contains(h);
            assert_eq!(pair.same_double_coset(g, h).unwrap(), same);
        }
    }
}

#[test]
fn s4_products_match_convolution_sum() {
    let pair = HeckePair::new(finite_perm());
    let finite = Finite::new(pair.oracle(), pair.oracle().all_elements());
    brute_products(&pair, &finite);
}

#[test]
fn s3_group_algebra_products_are_group_products() {
    let (pair, _) = catalog::build("group-algebra", None).unwrap();
    let catalog::AnyPair::Perm(pair) = pair else { unreachable!() };
    let finite = Finite::new(pair.oracle(), pair.oracle().all_elements());
    brute_products(&pair, &finite);
    for g in pair.oracle().all_elements() {
        let c = pair.double_coset(&g).unwrap();
        let succ = successors(&pair, &c).unwrap();
        assert_eq!(succ.len(), 1);
        assert_eq!(succ[0].key(), pair.gamma_coset().unwrap().key());
    }
}

/// `{(k/2^n, ±)}`, the dihedral group of order `2^(n+1)` inside the
/// 2-quasicyclic dihedral group.
fn dihedral_layer(q: &QuasicyclicDihedral, n: u32) -> Vec<hecke_core::catalog::QElem> {
    let den = 1i64 << n;
    let mut out = Vec::new();
    for k in 0..den {
        for s in [Sign::Plus, Sign::Minus] {
            out.push(q.element(rat(k, den), s));
        }
    }
    out
}

#[test]
fn quasicyclic_products_match_finite_layer() {
    let pair = HeckePair::new(QuasicyclicDihedral::new(2));
    let finite = Finite::new(pair.oracle(), dihedral_layer(pair.oracle(), 4));
    for g in &finite.elements {
        assert_eq!(pair.l_value(g).unwrap(), finite.l(g));
    }
    brute_products(&pair, &finite);
}

#[test]
fn quasicyclic_closure_lengths_match_doubling() {
    // Successors of Γ(q,-)Γ computed by hand: {Γ, Γ(2q,-)Γ}; the chain
    // from 1/2^k halves its denominator at each step.
    let pair = HeckePair::new(QuasicyclicDihedral::new(2));
    for k in 1..=8u32 {
        let g = pair.oracle().element(rat(1, 1 << k), Sign::Minus);
        let c = closure(&pair, &pair.double_coset(&g).unwrap(), 64).unwrap();
        assert!(c.is_complete());
        assert_eq!(c.len(), k as usize + 1);
    }
}

#[test]
fn af_dimension_of_the_order_eight_layer() {
    let (pair, entry) = catalog::build("quasicyclic-dihedral", Some(2)).unwrap();
    let catalog::AnyPair::Quasicyclic(pair) = pair else { unreachable!() };
    let g = pair.parse("1/4,+").unwrap();
    let report = af_filtration_check(&pair, &entry, &g, 4096).unwrap();
    let finite = Finite::new(pair.oracle(), dihedral_layer(pair.oracle(), 2));
    assert_eq!(report.subgroup_order, 8);
    assert_eq!(report.dimension, finite.all_double_cosets().len());
    assert_eq!(report.dimension, 3);
    let e = pair.parse("0,-").unwrap();
    assert_eq!(af_filtration_check(&pair, &entry, &e, 4096).unwrap().dimension, 1);

    let (d, entry) = catalog::build("infinite-dihedral", None).unwrap();
    let catalog::AnyPair::Dihedral(d) = d else { unreachable!() };
    let g = d.parse("1,+").unwrap();
    assert!(af_filtration_check(&d, &entry, &g, 4096).unwrap_err().is_budget_exhausted());
}

#[test]
fn involution_matches_definition_on_s4() {
    // In a finite group Δ = 1, so (χ_s)* is the indicator of s⁻¹'s coset.
    let pair = HeckePair::new(finite_perm());
    for g in pair.oracle().all_elements() {
        let c = pair.double_coset(&g).unwrap();
        let star = involution(&pair, &HeckeElement::basis(&c)).unwrap();
        let expected = HeckeElement::basis(&pair.double_coset(&pair.inv(&g)).unwrap());
        assert_eq!(star, expected);
    }
}

#[test]
fn dihedral_successors_by_conjugation() {
    // successors(ΓgΓ) = {Γ g⁻¹ γ g Γ : γ ∈ Γ}, with Γ = {e, r} listed.
    let (pair, _) = catalog::build("infinite-dihedral", None).unwrap();
    let catalog::AnyPair::Dihedral(pair) = pair else { unreachable!() };
    let gamma = [pair.identity(), pair.parse("0,-").unwrap()];
    for m in -5i64..=5 {
        for s in ["+", "-"] {
            let g = pair.parse(&format!("{m},{s}")).unwrap();
            let expected: BTreeSet<_> = gamma
                .iter()
                .map(|x| pair.double_coset(&pair.mul(&pair.mul(&pair.inv(&g), x), &g)).unwrap().key().clone())
                .collect();
            let got: BTreeSet<_> = successors(&pair, &pair.double_coset(&g).unwrap())
                .unwrap()
                .iter()
                .map(|c| c.key().clone())
                .collect();
            assert_eq!(got, expected, "g = {m},{s}");
        }
    }
}

#[test]
fn structure_counts_for_the_reflection_square() {
    // t = (1,-): left cosets of ΓtΓ are (1,-)Γ and (-1,-)Γ; t(1,-) = e and
    // t(-1,-) = (2,+), so ΓtΓ*ΓtΓ = 2·Γ + (2/L((2,+)))·Γ(2,+)Γ.
    let (pair, _) = catalog::build("infinite-dihedral", None).unwrap();
    let catalog::AnyPair::Dihedral(pair) = pair else { unreachable!() };
    let t = pair.double_coset(&pair.parse("1,-").unwrap()).unwrap();
    let two = pair.parse("2,+").unwrap();
    let mut by_key: BTreeMap<String, BigRational> = BTreeMap::new();
    for term in coset_product(&pair, &t, &t).unwrap().terms() {
        by_key.insert(pair.fmt(term.coset.key()), term.coeff.re.clone());
    }
    let two_key = pair.fmt(pair.double_coset(&two).unwrap().key());
    assert_eq!(by_key.len(), 2);
    assert_eq!(by_key["0,+"], rat(2, 1));
    assert_eq!(by_key[&two_key], rat(2, 1) / rat(pair.l_value(&two).unwrap() as i64, 1));
}
