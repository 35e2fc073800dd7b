//! The group-oracle contract and the coset machinery built on it: left-coset
//! orbits, the counting functions L and R, the modular function and canonical
//! double-coset identities.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::error::{BudgetKind, HeckeError, Result};

/// Default number of left cosets a single orbit may reach.
pub const DEFAULT_COSET_BUDGET: usize = 10_000;

/// Maximum length of random words in the gamma generators.
pub const DEFAULT_WORD_LENGTH: usize = 8;

/// The seeded generator used by every randomized routine.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A concrete pair `(G, Γ)` described through its operations.
///
/// `Ord` on elements is the total order used for canonical keys. The
/// canonical coset representative must satisfy `coset_rep(g) Γ = g Γ` and
/// `coset_rep(g) == coset_rep(h)` exactly when `g⁻¹h ∈ Γ`.
pub trait GroupOracle: Send + Sync {
    type Element: Clone + Ord + Hash + Debug + Send + Sync;

    fn name(&self) -> String;
    fn identity(&self) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn invert(&self, a: &Self::Element) -> Self::Element;
    fn in_gamma(&self, g: &Self::Element) -> bool;
    /// A finite generating set of Γ.
    fn gamma_generators(&self) -> &[Self::Element];
    fn coset_rep(&self, g: &Self::Element) -> Self::Element;
    fn format_element(&self, g: &Self::Element) -> String;
    fn parse_element(&self, s: &str) -> Result<Self::Element>;
    /// A random element of moderate size, used by the invariant suites.
    fn sample_element(&self, rng: &mut SeededRng) -> Self::Element;

    /// Membership in the ambient group; only restricted pairs override this.
    fn contains(&self, _g: &Self::Element) -> bool {
        true
    }

    /// Canonical representatives of `ΓgΓ/Γ`. Pairs whose Γ is not finitely
    /// generated override this hook.
    fn enumerate_left_cosets(
        &self,
        g: &Self::Element,
        budget: usize,
    ) -> Result<Vec<Self::Element>> {
        bfs_left_cosets(self, g, budget)
    }
}

/// Orbit of `gΓ` under left multiplication by the gamma generators, sorted.
pub fn bfs_left_cosets<O: GroupOracle + ?Sized>(
    oracle: &O,
    g: &O::Element,
    budget: usize,
) -> Result<Vec<O::Element>> {
    Ok(left_coset_transversal(oracle, g, budget)?
        .into_iter()
        .map(|(w, _)| w)
        .collect())
}

/// Like [`bfs_left_cosets`] but also returns, for every coset `wΓ`, an
/// explicit `γ ∈ Γ` with `γ g Γ = w Γ`.
pub fn left_coset_transversal<O: GroupOracle + ?Sized>(
    oracle: &O,
    g: &O::Element,
    budget: usize,
) -> Result<Vec<(O::Element, O::Element)>> {
    let start = oracle.coset_rep(g);
    let mut seen: HashMap<O::Element, O::Element> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone(), oracle.identity());
    queue.push_back(start);
    while let Some(w) = queue.pop_front() {
        let gamma_w = seen[&w].clone();
        for gen in oracle.gamma_generators() {
            let next = oracle.coset_rep(&oracle.multiply(gen, &w));
            if seen.contains_key(&next) {
                continue;
            }
            if seen.len() >= budget {
                let mut partial: Vec<_> = seen.keys().cloned().collect();
                partial.sort();
                return Err(HeckeError::BudgetExhausted {
                    kind: BudgetKind::Cosets,
                    budget,
                    partial: partial.iter().take(32).map(|e| oracle.format_element(e)).collect(),
                });
            }
            seen.insert(next.clone(), oracle.multiply(gen, &gamma_w));
            queue.push_back(next);
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// A random word of length at most `max_len` in the gamma generators and
/// their inverses.
pub fn random_gamma<O: GroupOracle + ?Sized>(
    oracle: &O,
    rng: &mut SeededRng,
    max_len: usize,
) -> O::Element {
    let gens = oracle.gamma_generators();
    let mut word = oracle.identity();
    if gens.is_empty() {
        return word;
    }
    let len = rng.gen_range(0..=max_len);
    for _ in 0..len {
        let g = &gens[rng.gen_range(0..gens.len())];
        let letter = if rng.gen_bool(0.5) { g.clone() } else { oracle.invert(g) };
        word = oracle.multiply(&word, &letter);
    }
    word
}

#[derive(Debug)]
struct CosetData<E> {
    key: E,
    left_reps: Arc<[E]>,
    l: u64,
    r: u64,
    delta: BigRational,
}

/// A double coset `ΓgΓ`, identified by its canonical key (the smallest
/// canonical left-coset representative it contains).
#[derive(Debug, Clone)]
pub struct DoubleCoset<E> {
    rep: E,
    data: Arc<CosetData<E>>,
}

impl<E: Clone + Ord> DoubleCoset<E> {
    pub fn key(&self) -> &E {
        &self.data.key
    }

    /// The representative this record was built from.
    pub fn rep(&self) -> &E {
        &self.rep
    }

    pub fn left_reps(&self) -> &[E] {
        &self.data.left_reps
    }

    pub fn l(&self) -> u64 {
        self.data.l
    }

    pub fn r(&self) -> u64 {
        self.data.r
    }

    pub fn delta(&self) -> &BigRational {
        &self.data.delta
    }

    /// Whether the left coset with canonical representative `w` lies in
    /// this double coset.
    pub fn contains_coset(&self, w: &E) -> bool {
        self.data.left_reps.binary_search(w).is_ok()
    }

    pub fn same_as(&self, other: &DoubleCoset<E>) -> bool {
        self.data.key == other.data.key
    }

    /// The same double coset, represented by its key.
    pub fn canonical(&self) -> DoubleCoset<E> {
        DoubleCoset { rep: self.data.key.clone(), data: self.data.clone() }
    }
}

/// The coset engine over a pluggable oracle. Orbits and double-coset records
/// are memoized behind a lock; all results are immutable.
pub struct HeckePair<O: GroupOracle> {
    oracle: O,
    coset_budget: usize,
    orbits: Mutex<HashMap<O::Element, Arc<[O::Element]>>>,
    cosets: Mutex<HashMap<O::Element, Arc<CosetData<O::Element>>>>,
    products: Mutex<HashMap<(O::Element, O::Element), ProductTerms<O::Element>>>,
}

/// Expansion of a product of two basis elements, keyed by the factors' keys.
pub(crate) type ProductTerms<E> = Arc<[(DoubleCoset<E>, BigRational)]>;

impl<O: GroupOracle> HeckePair<O> {
    pub fn new(oracle: O) -> Self {
        Self::with_budget(oracle, DEFAULT_COSET_BUDGET)
    }

    pub fn with_budget(oracle: O, coset_budget: usize) -> Self {
        HeckePair {
            oracle,
            coset_budget: coset_budget.max(1),
            orbits: Mutex::new(HashMap::new()),
            cosets: Mutex::new(HashMap::new()),
            products: Mutex::new(HashMap::new()),
        }
    }

    pub fn oracle(&self) -> &O {
        &self.oracle
    }

    pub fn coset_budget(&self) -> usize {
        self.coset_budget
    }

    pub fn fmt(&self, g: &O::Element) -> String {
        self.oracle.format_element(g)
    }

    pub fn parse(&self, s: &str) -> Result<O::Element> {
        let g = self.oracle.parse_element(s)?;
        self.check_member(&g)?;
        Ok(g)
    }

    pub fn mul(&self, a: &O::Element, b: &O::Element) -> O::Element {
        self.oracle.multiply(a, b)
    }

    pub fn inv(&self, a: &O::Element) -> O::Element {
        self.oracle.invert(a)
    }

    pub fn identity(&self) -> O::Element {
        self.oracle.identity()
    }

    fn check_member(&self, g: &O::Element) -> Result<()> {
        if self.oracle.contains(g) {
            Ok(())
        } else {
            Err(HeckeError::NotInGroup(self.fmt(g)))
        }
    }

    /// Canonical representatives of the left cosets in `ΓgΓ`, sorted.
    pub fn left_cosets(&self, g: &O::Element, budget: usize) -> Result<Arc<[O::Element]>> {
        self.check_member(g)?;
        let rep = self.oracle.coset_rep(g);
        if let Some(orbit) = self.orbits.lock().expect("orbit cache").get(&rep) {
            if orbit.len() <= budget {
                return Ok(orbit.clone());
            }
            return Err(HeckeError::BudgetExhausted {
                kind: BudgetKind::Cosets,
                budget,
                partial: orbit.iter().take(32).map(|e| self.fmt(e)).collect(),
            });
        }
        let orbit: Arc<[O::Element]> = self.oracle.enumerate_left_cosets(&rep, budget)?.into();
        let mut cache = self.orbits.lock().expect("orbit cache");
        if let Some(existing) = cache.get(&rep) {
            return Ok(existing.clone());
        }
        for w in orbit.iter() {
            cache.insert(w.clone(), orbit.clone());
        }
        Ok(orbit)
    }

    fn orbit(&self, g: &O::Element) -> Result<Arc<[O::Element]>> {
        self.left_cosets(g, self.coset_budget)
    }

    pub fn l_value(&self, g: &O::Element) -> Result<u64> {
        Ok(self.orbit(g)?.len() as u64)
    }

    pub fn r_value(&self, g: &O::Element) -> Result<u64> {
        self.l_value(&self.inv(g))
    }

    pub fn delta(&self, g: &O::Element) -> Result<BigRational> {
        Ok(BigRational::new(
            BigInt::from(self.l_value(g)?),
            BigInt::from(self.r_value(g)?),
        ))
    }

    pub fn double_coset(&self, g: &O::Element) -> Result<DoubleCoset<O::Element>> {
        let orbit = self.orbit(g)?;
        let key = orbit[0].clone();
        if let Some(data) = self.cosets.lock().expect("coset cache").get(&key) {
            return Ok(DoubleCoset { rep: g.clone(), data: data.clone() });
        }
        let l = orbit.len() as u64;
        let r = self.r_value(g)?;
        let data = Arc::new(CosetData {
            key: key.clone(),
            left_reps: orbit,
            l,
            r,
            delta: BigRational::new(BigInt::from(l), BigInt::from(r)),
        });
        let data = self
            .cosets
            .lock()
            .expect("coset cache")
            .entry(key)
            .or_insert(data)
            .clone();
        Ok(DoubleCoset { rep: g.clone(), data })
    }

    /// The trivial double coset `Γ = ΓeΓ`.
    pub fn gamma_coset(&self) -> Result<DoubleCoset<O::Element>> {
        self.double_coset(&self.identity())
    }

    /// Record for `Γg⁻¹Γ`, built from the inverse of `c`'s representative.
    pub fn inverse_coset(&self, c: &DoubleCoset<O::Element>) -> Result<DoubleCoset<O::Element>> {
        self.double_coset(&self.inv(c.rep()))
    }

    /// Whether `h ∈ ΓgΓ`.
    pub fn same_double_coset(&self, g: &O::Element, h: &O::Element) -> Result<bool> {
        self.check_member(h)?;
        let c = self.double_coset(g)?;
        Ok(c.contains_coset(&self.oracle.coset_rep(h)))
    }

    pub(crate) fn cached_product(
        &self,
        a: &O::Element,
        b: &O::Element,
    ) -> Option<ProductTerms<O::Element>> {
        self.products.lock().expect("product cache").get(&(a.clone(), b.clone())).cloned()
    }

    pub(crate) fn store_product(
        &self,
        a: O::Element,
        b: O::Element,
        terms: ProductTerms<O::Element>,
    ) -> ProductTerms<O::Element> {
        self.products.lock().expect("product cache").entry((a, b)).or_insert(terms).clone()
    }

    pub fn sample_gamma(&self, rng: &mut SeededRng) -> O::Element {
        random_gamma(&self.oracle, rng, DEFAULT_WORD_LENGTH)
    }

    pub fn sample_element(&self, rng: &mut SeededRng) -> O::Element {
        self.oracle.sample_element(rng)
    }

    /// Pairs `(w, γ)` with `γ g Γ = w Γ`, one per left coset in `ΓgΓ`.
    pub fn coset_transversal(&self, g: &O::Element) -> Result<Vec<(O::Element, O::Element)>> {
        self.check_member(g)?;
        left_coset_transversal(&self.oracle, g, self.coset_budget)
    }
}

/// Outcome of a named invariant check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, failure: Option<String>, samples: usize) -> Self {
        CheckOutcome {
            name: name.to_string(),
            passed: failure.is_none(),
            detail: failure.unwrap_or_else(|| format!("{samples} samples")),
        }
    }
}

/// Group-law and canonicalization checks on sampled elements.
pub fn verify_oracle<O: GroupOracle>(
    pair: &HeckePair<O>,
    samples: usize,
    seed: u64,
) -> Vec<CheckOutcome> {
    let oracle = pair.oracle();
    let mut rng = seeded_rng(seed);
    let e = oracle.identity();
    let mut group_law = None;
    let mut canon = None;
    let mut gamma = None;
    if !oracle.in_gamma(&e) {
        gamma = Some("identity is not in gamma".to_string());
    }
    for gen in oracle.gamma_generators() {
        if !oracle.in_gamma(gen) && gamma.is_none() {
            gamma = Some(format!("generator {} fails membership", pair.fmt(gen)));
        }
    }
    for _ in 0..samples {
        let a = oracle.sample_element(&mut rng);
        let b = oracle.sample_element(&mut rng);
        let c = oracle.sample_element(&mut rng);
        if group_law.is_none() {
            let ab_c = oracle.multiply(&oracle.multiply(&a, &b), &c);
            let a_bc = oracle.multiply(&a, &oracle.multiply(&b, &c));
            if ab_c != a_bc {
                group_law = Some(format!("associativity fails at {}", pair.fmt(&a)));
            } else if oracle.multiply(&a, &e) != a || oracle.multiply(&e, &a) != a {
                group_law = Some(format!("identity law fails at {}", pair.fmt(&a)));
            } else if oracle.multiply(&a, &oracle.invert(&a)) != e {
                group_law = Some(format!("inverse law fails at {}", pair.fmt(&a)));
            }
        }
        let g = random_gamma(oracle, &mut rng, DEFAULT_WORD_LENGTH);
        if gamma.is_none() && !oracle.in_gamma(&g) {
            gamma = Some(format!("word {} in the generators fails membership", pair.fmt(&g)));
        }
        if canon.is_none() {
            let rep = oracle.coset_rep(&a);
            if oracle.coset_rep(&rep) != rep {
                canon = Some(format!("coset_rep not idempotent at {}", pair.fmt(&a)));
            } else if !oracle.in_gamma(&oracle.multiply(&oracle.invert(&a), &rep)) {
                canon = Some(format!("coset_rep leaves the coset of {}", pair.fmt(&a)));
            } else if oracle.coset_rep(&oracle.multiply(&a, &g)) != rep {
                canon = Some(format!("coset_rep not constant on the coset of {}", pair.fmt(&a)));
            }
        }
    }
    vec![
        CheckOutcome::new("group laws", group_law, samples),
        CheckOutcome::new("gamma membership", gamma, samples),
        CheckOutcome::new("coset canonicalization", canon, samples),
    ]
}

/// The double-coset invariants: `L(g) = R(g⁻¹)`, multiplicativity of the
/// modular function, key stability under Γ on both sides, and closedness of
/// every computed orbit.
pub fn verify_coset_invariants<O: GroupOracle>(
    pair: &HeckePair<O>,
    samples: usize,
    seed: u64,
) -> Result<Vec<CheckOutcome>> {
    let oracle = pair.oracle();
    let mut rng = seeded_rng(seed);
    let mut lr = None;
    let mut modular = None;
    let mut stable = None;
    let mut closed = None;
    for _ in 0..samples {
        let g = pair.sample_element(&mut rng);
        let h = pair.sample_element(&mut rng);
        let ginv = pair.inv(&g);
        if lr.is_none() && pair.l_value(&g)? != pair.r_value(&ginv)? {
            lr = Some(format!("L != R(inverse) at {}", pair.fmt(&g)));
        }
        if modular.is_none()
            && pair.delta(&pair.mul(&g, &h))? != pair.delta(&g)? * pair.delta(&h)?
        {
            modular = Some(format!("delta not multiplicative at {}, {}", pair.fmt(&g), pair.fmt(&h)));
        }
        let g1 = pair.sample_gamma(&mut rng);
        let g2 = pair.sample_gamma(&mut rng);
        let moved = pair.mul(&pair.mul(&g1, &g), &g2);
        if stable.is_none() && pair.double_coset(&moved)?.key() != pair.double_coset(&g)?.key() {
            stable = Some(format!("key moved under gamma at {}", pair.fmt(&g)));
        }
        if closed.is_none() {
            let reps = pair.double_coset(&g)?;
            let set: HashSet<_> = reps.left_reps().iter().collect();
            if set.len() != reps.left_reps().len() {
                closed = Some(format!("duplicate left reps at {}", pair.fmt(&g)));
            }
            'outer: for w in reps.left_reps() {
                for gen in oracle.gamma_generators() {
                    if !set.contains(&oracle.coset_rep(&oracle.multiply(gen, w))) {
                        closed = Some(format!("orbit not closed at {}", pair.fmt(&g)));
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(vec![
        CheckOutcome::new("L(g) = R(g^-1)", lr, samples),
        CheckOutcome::new("delta multiplicative", modular, samples),
        CheckOutcome::new("key stable under gamma", stable, samples),
        CheckOutcome::new("orbit closed and duplicate-free", closed, samples),
    ])
}
