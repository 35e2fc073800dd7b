//! Iterated commutators and the family probes built on them: witness
//! sequences for successor paths, the subnormal stairway check, collapse
//! probes, directedness, the quadratic relation, a protonormality falsifier
//! and restriction of a pair to an intermediate subgroup.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{HeckeError, Result};
use crate::graph::self_product;
use crate::group::{
    random_gamma, seeded_rng, DoubleCoset, GroupOracle, HeckePair, SeededRng, DEFAULT_WORD_LENGTH,
};
use crate::rational::{int, real};

/// `[s, t] = s⁻¹t⁻¹st`.
pub fn commutator<O: GroupOracle>(pair: &HeckePair<O>, s: &O::Element, t: &O::Element) -> O::Element {
    let st = pair.mul(s, t);
    let ts = pair.mul(t, s);
    pair.mul(&pair.inv(&ts), &st)
}

/// Left-nested `[g, γ₁, …, γₙ] = [[g, γ₁, …, γₙ₋₁], γₙ]`.
pub fn iterated_commutator<O: GroupOracle>(
    pair: &HeckePair<O>,
    g: &O::Element,
    gammas: &[O::Element],
) -> Result<O::Element> {
    let mut x = g.clone();
    for (index, gamma) in gammas.iter().enumerate() {
        if !pair.oracle().in_gamma(gamma) {
            return Err(HeckeError::NotInGamma { index });
        }
        x = commutator(pair, &x, gamma);
    }
    Ok(x)
}

/// For a path `c₀ → c₁ → … → cₙ` in the successor graph, elements
/// `γ₁, …, γₙ ∈ Γ` with `Γ[g, γ₁, …, γᵢ]Γ = cᵢ`, where `g` is the
/// representative of `c₀`.
///
/// Successors of `ΓxΓ` are the cosets `Γx⁻¹γxΓ`; if `γxΓ = wΓ` then
/// `x⁻¹γxΓ = x⁻¹wΓ`, and `[x, γ⁻¹] = x⁻¹γxγ⁻¹` lies in `Γx⁻¹γxΓ`.
pub fn witness_sequence<O: GroupOracle>(
    pair: &HeckePair<O>,
    path: &[DoubleCoset<O::Element>],
) -> Result<Vec<O::Element>> {
    let Some(first) = path.first() else {
        return Ok(Vec::new());
    };
    let mut x = first.rep().clone();
    let mut gammas = Vec::new();
    for (i, target) in path.iter().enumerate().skip(1) {
        let xinv = pair.inv(&x);
        let mut found = None;
        for (w, gamma) in pair.coset_transversal(&x)? {
            if pair.same_double_coset(target.rep(), &pair.mul(&xinv, &w))? {
                found = Some(pair.inv(&gamma));
                break;
            }
        }
        let gamma = found.ok_or(HeckeError::NotASuccessorPath { index: i })?;
        x = commutator(pair, &x, &gamma);
        if !pair.same_double_coset(target.rep(), &x)? {
            return Err(HeckeError::CheckFailed("witness does not land in the target coset"));
        }
        gammas.push(gamma);
    }
    Ok(gammas)
}

/// Whether `gammas` witnesses `path`, re-checked from scratch.
pub fn verify_witness<O: GroupOracle>(
    pair: &HeckePair<O>,
    path: &[DoubleCoset<O::Element>],
    gammas: &[O::Element],
) -> Result<bool> {
    if path.is_empty() {
        return Ok(gammas.is_empty());
    }
    if gammas.len() + 1 != path.len() {
        return Ok(false);
    }
    let g = path[0].rep();
    for i in 1..path.len() {
        let x = iterated_commutator(pair, g, &gammas[..i])?;
        if !pair.same_double_coset(path[i].rep(), &x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

type Membership<E> = Box<dyn Fn(&E) -> bool + Send + Sync>;

/// `G = H₀ ⊇ H₁ ⊇ … ⊇ Hₙ = Γ`, each level a membership predicate.
pub struct SubnormalChain<E> {
    levels: Vec<(String, Membership<E>)>,
    /// `declared_normal[i]`: the catalog asserts `Hᵢ₊₁ ⊴ Hᵢ`.
    pub declared_normal: Vec<bool>,
}

impl<E> SubnormalChain<E> {
    pub fn new(levels: Vec<(String, Membership<E>)>, declared_normal: Vec<bool>) -> Self {
        assert!(!levels.is_empty(), "a chain has at least one level");
        assert_eq!(declared_normal.len(), levels.len() - 1);
        SubnormalChain { levels, declared_normal }
    }

    /// The chain `G ⊇ Γ` of length one.
    pub fn trivial(gamma: Membership<E>) -> Self {
        Self::new(vec![("G".into(), Box::new(|_: &E| true)), ("Gamma".into(), gamma)], vec![true])
    }

    /// Number of inclusions `n`.
    pub fn len(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, level: usize, g: &E) -> bool {
        (self.levels[level].1)(g)
    }

    pub fn level_name(&self, level: usize) -> &str {
        &self.levels[level].0
    }
}

/// Outcome of a probe, serialized as
/// `{test, input, verdict, samples, seed, counterexample?}` plus details.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub test: String,
    pub input: String,
    pub verdict: String,
    pub passed: bool,
    pub samples: usize,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub details: Value,
}

fn random_sequence<O: GroupOracle>(pair: &HeckePair<O>, rng: &mut SeededRng, len: usize) -> Vec<O::Element> {
    (0..len).map(|_| random_gamma(pair.oracle(), rng, DEFAULT_WORD_LENGTH)).collect()
}

/// Like [`random_sequence`] but avoids the identity, which would make every
/// later commutator trivial.
fn nontrivial_sequence<O: GroupOracle>(pair: &HeckePair<O>, rng: &mut SeededRng, len: usize) -> Vec<O::Element> {
    let e = pair.identity();
    (0..len)
        .map(|_| {
            let mut w = random_gamma(pair.oracle(), rng, DEFAULT_WORD_LENGTH);
            for _ in 0..16 {
                if w != e {
                    break;
                }
                w = random_gamma(pair.oracle(), rng, DEFAULT_WORD_LENGTH);
            }
            w
        })
        .collect()
}

fn show_seq<O: GroupOracle>(pair: &HeckePair<O>, seq: &[O::Element]) -> String {
    seq.iter().map(|x| format!("[{}]", pair.fmt(x))).collect::<Vec<_>>().join(" ")
}

/// Checks `[g, γ₁, …, γₖ] ∈ Hₖ` for every `k` on random γ-sequences of the
/// chain's length.
pub fn chain_condition_b<O: GroupOracle>(
    pair: &HeckePair<O>,
    g: &O::Element,
    chain: &SubnormalChain<O::Element>,
    samples: usize,
    seed: u64,
) -> ProbeReport {
    let mut rng = seeded_rng(seed);
    let n = chain.len();
    let mut counterexample = None;
    for _ in 0..samples {
        let seq = random_sequence(pair, &mut rng, n);
        let mut x = g.clone();
        for k in 1..=n {
            x = commutator(pair, &x, &seq[k - 1]);
            if !chain.contains(k, &x) {
                counterexample = Some(format!(
                    "gammas {} give {} outside {}",
                    show_seq(pair, &seq[..k]),
                    pair.fmt(&x),
                    chain.level_name(k)
                ));
                break;
            }
        }
        if counterexample.is_some() {
            break;
        }
    }
    let passed = counterexample.is_none();
    ProbeReport {
        test: "chain_condition_b".into(),
        input: pair.fmt(g),
        verdict: if passed { "pass".into() } else { "fail".into() },
        passed,
        samples,
        seed: Some(seed),
        counterexample,
        details: json!({
            "chain": (0..=n).map(|i| chain.level_name(i).to_string()).collect::<Vec<_>>(),
        }),
    }
}

/// Sampled normality of each declared inclusion: `h⁻¹xh ∈ Hᵢ₊₁` for
/// `h ∈ Hᵢ`, `x ∈ Hᵢ₊₁` drawn from `pool` (elements outside a level are
/// skipped for that level).
pub fn chain_normality_check<O: GroupOracle>(
    pair: &HeckePair<O>,
    chain: &SubnormalChain<O::Element>,
    pool: &[O::Element],
) -> Option<String> {
    for i in 0..chain.len() {
        if !chain.declared_normal[i] {
            continue;
        }
        for h in pool.iter().filter(|h| chain.contains(i, h)) {
            for x in pool.iter().filter(|x| chain.contains(i + 1, x)) {
                let conj = pair.mul(&pair.mul(&pair.inv(h), x), h);
                if !chain.contains(i + 1, &conj) {
                    return Some(format!(
                        "{} conjugated by {} leaves {}",
                        pair.fmt(x),
                        pair.fmt(h),
                        chain.level_name(i + 1)
                    ));
                }
            }
        }
    }
    None
}

/// Follows random sequences of nontrivial γ up to `horizon` steps and
/// records the distinct double cosets `Γ[g, γ₁, …, γₖ]Γ` met along the way.
pub fn stabilization_probe<O: GroupOracle>(
    pair: &HeckePair<O>,
    g: &O::Element,
    samples: usize,
    horizon: usize,
    seed: u64,
) -> Result<ProbeReport> {
    let horizon = horizon.max(1);
    let mut rng = seeded_rng(seed);
    let mut distinct: Vec<BTreeSet<O::Element>> = vec![BTreeSet::new(); horizon];
    let mut collapsed = 0usize;
    let mut max_steps = 0usize;
    let mut first_miss = None;
    for _ in 0..samples {
        let seq = nontrivial_sequence(pair, &mut rng, horizon);
        let mut x = g.clone();
        let mut hit = if pair.oracle().in_gamma(&x) { Some(0) } else { None };
        for (k, gamma) in seq.iter().enumerate() {
            x = commutator(pair, &x, gamma);
            distinct[k].insert(pair.double_coset(&x)?.key().clone());
            if hit.is_none() && pair.oracle().in_gamma(&x) {
                hit = Some(k + 1);
            }
        }
        match hit {
            Some(k) => {
                collapsed += 1;
                max_steps = max_steps.max(k);
            }
            None => {
                if first_miss.is_none() {
                    first_miss = Some(show_seq(pair, &seq));
                }
            }
        }
    }
    let all = collapsed == samples;
    let counts: Vec<usize> = distinct.iter().map(|s| s.len()).collect();
    let total = distinct.iter().flatten().collect::<BTreeSet<_>>().len();
    Ok(ProbeReport {
        test: "stabilization_probe".into(),
        input: pair.fmt(g),
        verdict: if all {
            format!("every sequence reached Gamma within {max_steps} steps")
        } else {
            format!(
                "{} of {samples} sequences stayed outside Gamma; {total} distinct cosets within {horizon} steps",
                samples - collapsed
            )
        },
        passed: all,
        samples,
        seed: Some(seed),
        counterexample: first_miss,
        details: json!({
            "horizon": horizon,
            "collapsed": collapsed,
            "max_steps_to_collapse": max_steps,
            "distinct_per_step": counts,
            "distinct_total": total,
        }),
    })
}

/// Whether `t` lies in `T = {t : Γ ⊆ tΓt⁻¹}`. Since
/// `L(t) = [Γ : Γ ∩ tΓt⁻¹]`, this is exactly `L(t) = 1`; the report also
/// gives `R(t)`, and `R(t) = 1` is the mirrored condition `t⁻¹ ∈ T`.
pub fn directed_test<O: GroupOracle>(pair: &HeckePair<O>, t: &O::Element) -> Result<ProbeReport> {
    let l = pair.l_value(t)?;
    let r = pair.r_value(t)?;
    let passed = l == 1;
    Ok(ProbeReport {
        test: "directed_test".into(),
        input: pair.fmt(t),
        verdict: if passed { "t in T".into() } else { "t not in T".into() },
        passed,
        samples: 0,
        seed: None,
        counterexample: None,
        details: json!({
            "L": l,
            "R": r,
            "containment_checked": "Gamma ⊆ tΓt⁻¹ (L(t) = 1)",
            "inverse_in_T": r == 1,
        }),
    })
}

/// Whether `(χ_c)* * χ_c = L(s)·χ_Γ + (L(s) − 1)·χ_c`.
pub fn quadratic_relation_test<O: GroupOracle>(
    pair: &HeckePair<O>,
    c: &DoubleCoset<O::Element>,
) -> Result<ProbeReport> {
    let product = self_product(pair, c)?;
    let gamma = pair.gamma_coset()?;
    let l = c.l() as i64;
    let mut expected = crate::algebra::HeckeElement::single(&gamma, real(int(l)));
    expected.add_term(c, real(int(l - 1)));
    let passed = product == expected;
    let support: Vec<String> = product.keys().map(|k| pair.fmt(k)).collect();
    Ok(ProbeReport {
        test: "quadratic_relation_test".into(),
        input: pair.fmt(c.rep()),
        verdict: match (passed, l) {
            (true, 1) => "holds (degenerate: L = 1)".into(),
            (true, _) => "holds".into(),
            (false, _) => "fails".into(),
        },
        passed,
        samples: 0,
        seed: None,
        counterexample: None,
        details: json!({ "L": l, "support": support }),
    })
}

/// Looks for an element separating `Γs⁻¹Γs` from `s⁻¹ΓsΓ`. Finding none
/// proves nothing.
pub fn protonormal_falsifier<O: GroupOracle>(
    pair: &HeckePair<O>,
    s: &O::Element,
    samples: usize,
    seed: u64,
) -> Result<ProbeReport> {
    let mut rng = seeded_rng(seed);
    let sinv = pair.inv(s);
    let mut counterexample = None;
    for _ in 0..samples {
        let a = pair.sample_gamma(&mut rng);
        let b = pair.sample_gamma(&mut rng);
        // γ s⁻¹ γ' s ∈ s⁻¹ΓsΓ  iff  s·x ∈ ΓsΓ
        let left = pair.mul(&pair.mul(&pair.mul(&a, &sinv), &b), s);
        if !pair.same_double_coset(s, &pair.mul(s, &left))? {
            counterexample = Some(format!("{} lies in Γs⁻¹Γs but not in s⁻¹ΓsΓ", pair.fmt(&left)));
            break;
        }
        // s⁻¹ γ s γ' ∈ Γs⁻¹Γs  iff  y·s⁻¹ ∈ Γs⁻¹Γ
        let right = pair.mul(&pair.mul(&pair.mul(&sinv, &a), s), &b);
        if !pair.same_double_coset(&sinv, &pair.mul(&right, &sinv))? {
            counterexample = Some(format!("{} lies in s⁻¹ΓsΓ but not in Γs⁻¹Γs", pair.fmt(&right)));
            break;
        }
    }
    let passed = counterexample.is_none();
    Ok(ProbeReport {
        test: "protonormal_falsifier".into(),
        input: pair.fmt(s),
        verdict: if passed { format!("NoCounterexample({samples})") } else { "Counterexample".into() },
        passed,
        samples,
        seed: Some(seed),
        counterexample,
        details: Value::Null,
    })
}

/// An intermediate subgroup `Γ ⊆ K ⊆ G` presented as a pair `(K, Γ)` on the
/// same element type, so keys agree with the ambient pair.
pub struct Restricted<O: GroupOracle> {
    inner: Arc<O>,
    label: String,
    member: Arc<dyn Fn(&O::Element) -> bool + Send + Sync>,
    generators: Vec<O::Element>,
}

impl<O: GroupOracle> GroupOracle for Restricted<O> {
    type Element = O::Element;

    fn name(&self) -> String {
        format!("{} restricted to {}", self.inner.name(), self.label)
    }

    fn identity(&self) -> O::Element {
        self.inner.identity()
    }

    fn multiply(&self, a: &O::Element, b: &O::Element) -> O::Element {
        self.inner.multiply(a, b)
    }

    fn invert(&self, a: &O::Element) -> O::Element {
        self.inner.invert(a)
    }

    fn in_gamma(&self, g: &O::Element) -> bool {
        self.inner.in_gamma(g)
    }

    fn gamma_generators(&self) -> &[O::Element] {
        self.inner.gamma_generators()
    }

    fn coset_rep(&self, g: &O::Element) -> O::Element {
        self.inner.coset_rep(g)
    }

    fn format_element(&self, g: &O::Element) -> String {
        self.inner.format_element(g)
    }

    fn parse_element(&self, s: &str) -> Result<O::Element> {
        self.inner.parse_element(s)
    }

    /// A random word in the subgroup generators, multiplied by a random
    /// element of Γ.
    fn sample_element(&self, rng: &mut SeededRng) -> O::Element {
        let mut x = random_gamma(&*self.inner, rng, 3);
        if !self.generators.is_empty() {
            for _ in 0..rng.gen_range(1..=3) {
                let g = &self.generators[rng.gen_range(0..self.generators.len())];
                let g = if rng.gen_bool(0.5) { g.clone() } else { self.inner.invert(g) };
                x = self.inner.multiply(&x, &g);
            }
        }
        x
    }

    fn contains(&self, g: &O::Element) -> bool {
        self.inner.contains(g) && (self.member)(g)
    }

    fn enumerate_left_cosets(&self, g: &O::Element, budget: usize) -> Result<Vec<O::Element>> {
        self.inner.enumerate_left_cosets(g, budget)
    }
}

/// Restricts `(G, Γ)` to `(K, Γ)` for `K` given by a membership predicate
/// and a few generators used for sampling. Γ ⊆ K is checked on the gamma
/// generators and on random words in them.
pub fn restrict_pair<O: GroupOracle + Clone>(
    pair: &HeckePair<O>,
    label: &str,
    member: impl Fn(&O::Element) -> bool + Send + Sync + 'static,
    generators: Vec<O::Element>,
) -> Result<HeckePair<Restricted<O>>> {
    let inner = pair.oracle().clone();
    let mut rng = seeded_rng(0x5EB);
    for gen in inner.gamma_generators() {
        if !member(gen) {
            return Err(HeckeError::GammaNotContained(inner.format_element(gen)));
        }
    }
    for _ in 0..64 {
        let w = random_gamma(&inner, &mut rng, DEFAULT_WORD_LENGTH);
        if !member(&w) {
            return Err(HeckeError::GammaNotContained(inner.format_element(&w)));
        }
    }
    if let Some(bad) = generators.iter().find(|g| !member(g)) {
        return Err(HeckeError::NotInGroup(inner.format_element(bad)));
    }
    Ok(HeckePair::with_budget(
        Restricted { inner: Arc::new(inner), label: label.to_string(), member: Arc::new(member), generators },
        pair.coset_budget(),
    ))
}
