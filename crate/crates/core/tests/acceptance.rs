//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact rational equalities unless a line says otherwise.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use hecke_core::algebra::{
    convolve, coset_product, involution, l1_norm, product_via_structure_coefficients, sample_element,
    HeckeElement,
};
use hecke_core::catalog::{self, heisenberg_chain, AnyPair, CatalogEntry, Ut3, PAIR_NAMES};
use hecke_core::certify::{beta_bound, in_region_b, l1_certificate, relations, sample_region_b};
use hecke_core::commutator::{chain_condition_b, iterated_commutator, restrict_pair, witness_sequence, verify_witness};
use hecke_core::graph::{closure, ClosureReport, ClosureStatus};
use hecke_core::group::{seeded_rng, GroupOracle, HeckePair};
use hecke_core::rational::rat;
use hecke_core::{with_pair, HeckeError};
use num_bigint::BigInt;
use num_rational::BigRational;

const SEED: u64 = 0xC05E7;
const CLOSURE_BUDGET: usize = 256;

type Verdict = std::result::Result<String, String>;

fn fail<T>(msg: impl Into<String>) -> std::result::Result<T, String> {
    Err(msg.into())
}

fn ok_or_fail<T>(r: hecke_core::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn catalog_pairs() -> Vec<(AnyPair, CatalogEntry)> {
    PAIR_NAMES.iter().map(|n| catalog::build(n, None).expect("catalog builds")).collect()
}

fn algebra_laws<O: GroupOracle>(pair: &HeckePair<O>, triples: usize) -> Verdict {
    let mut rng = seeded_rng(SEED);
    let unit = HeckeElement::basis(&ok_or_fail(pair.gamma_coset())?);
    for i in 0..triples {
        let f1 = ok_or_fail(sample_element(pair, &mut rng, 2, false))?;
        let f2 = ok_or_fail(sample_element(pair, &mut rng, 2, false))?;
        let f3 = ok_or_fail(sample_element(pair, &mut rng, 2, false))?;
        let left = ok_or_fail(convolve(pair, &ok_or_fail(convolve(pair, &f1, &f2))?, &f3))?;
        let right = ok_or_fail(convolve(pair, &f1, &ok_or_fail(convolve(pair, &f2, &f3))?))?;
        if left != right {
            return fail(format!("associativity fails on triple {i}"));
        }
        let s1 = ok_or_fail(involution(pair, &f1))?;
        if ok_or_fail(involution(pair, &s1))? != f1 {
            return fail(format!("involution not involutive on sample {i}"));
        }
        let s2 = ok_or_fail(involution(pair, &f2))?;
        let lhs = ok_or_fail(involution(pair, &ok_or_fail(convolve(pair, &f1, &f2))?))?;
        if lhs != ok_or_fail(convolve(pair, &s2, &s1))? {
            return fail(format!("involution not anti-multiplicative on sample {i}"));
        }
        if ok_or_fail(convolve(pair, &unit, &f1))? != f1 || ok_or_fail(convolve(pair, &f1, &unit))? != f1 {
            return fail(format!("chi_Gamma is not a unit on sample {i}"));
        }
    }
    Ok(format!("{triples} triples"))
}

fn l1_identities<O: GroupOracle>(pair: &HeckePair<O>, samples: usize) -> Verdict {
    let mut rng = seeded_rng(SEED ^ 2);
    for i in 0..samples {
        let f1 = ok_or_fail(sample_element(pair, &mut rng, 3, true))?;
        let f2 = ok_or_fail(sample_element(pair, &mut rng, 3, true))?;
        let prod = ok_or_fail(convolve(pair, &f1, &f2))?;
        let (n1, n2, np) = (l1_norm(&f1), l1_norm(&f2), l1_norm(&prod));
        if !(n1.exact && n2.exact && np.exact) || np.value != &n1.value * &n2.value {
            return fail(format!("||f1*f2|| != ||f1||*||f2|| on sample {i}"));
        }
        let sq = ok_or_fail(convolve(pair, &ok_or_fail(involution(pair, &f1))?, &f1))?;
        if l1_norm(&sq).value != &n1.value * &n1.value {
            return fail(format!("||f* * f|| != ||f||^2 on sample {i}"));
        }
    }
    Ok(format!("{samples} pairs"))
}

fn product_paths<O: GroupOracle>(pair: &HeckePair<O>, samples: usize) -> Verdict {
    let mut rng = seeded_rng(SEED ^ 3);
    for i in 0..samples {
        let g = ok_or_fail(pair.double_coset(&pair.sample_element(&mut rng)))?;
        let h = ok_or_fail(pair.double_coset(&pair.sample_element(&mut rng)))?;
        let a = ok_or_fail(coset_product(pair, &g, &h))?;
        let b = ok_or_fail(product_via_structure_coefficients(pair, &g, &h))?;
        if a != b {
            return fail(format!("paths disagree on pair {i}: {} * {}", pair.fmt(g.rep()), pair.fmt(h.rep())));
        }
    }
    Ok(format!("{samples} coset pairs"))
}

/// Closures of the designated seed coset and 25 sampled cosets.
fn closure_corpus<O: GroupOracle>(
    pair: &HeckePair<O>,
    entry: &CatalogEntry,
) -> std::result::Result<Vec<ClosureReport<O::Element>>, String> {
    let mut rng = seeded_rng(SEED ^ 5);
    let mut roots = vec![ok_or_fail(pair.parse(&entry.seed_coset))?];
    roots.extend((0..25).map(|_| pair.sample_element(&mut rng)));
    roots
        .iter()
        .map(|g| ok_or_fail(closure(pair, &ok_or_fail(pair.double_coset(g))?, CLOSURE_BUDGET)))
        .collect()
}

fn positive_closures<O: GroupOracle>(
    pair: &HeckePair<O>,
    entry: &CatalogEntry,
) -> std::result::Result<Vec<ClosureReport<O::Element>>, String> {
    let corpus = closure_corpus(pair, entry)?;
    if let Some(c) = corpus.iter().find(|c| !c.is_complete()) {
        return fail(format!("{}: closure of {} not Complete", entry.name, pair.fmt(c.root.rep())));
    }
    Ok(corpus)
}

fn row_identities<O: GroupOracle>(pair: &HeckePair<O>, entry: &CatalogEntry) -> std::result::Result<usize, String> {
    let mut rows = 0;
    for c in positive_closures(pair, entry)? {
        let rel = ok_or_fail(relations(pair, &c))?;
        if let Some(row) = rel.row_identity_violation() {
            return fail(format!("{}: row {row} violates the identity", entry.name));
        }
        rows += rel.dim();
    }
    Ok(rows)
}

fn dominance<O: GroupOracle>(pair: &HeckePair<O>, entry: &CatalogEntry) -> std::result::Result<usize, String> {
    let mut rng = seeded_rng(SEED ^ 10);
    let corpus = positive_closures(pair, entry)?;
    for c in &corpus {
        let rel = ok_or_fail(relations(pair, c))?;
        let z = rel.z();
        for _ in 0..100 {
            let x = sample_region_b(&rel, &mut rng);
            if !ok_or_fail(in_region_b(&x, &rel))? {
                return fail("sampled point outside B");
            }
            if x.iter().zip(&z).any(|(a, b)| a > b) {
                return fail(format!("{}: point of B exceeds z", entry.name));
            }
        }
        let beta_sq = beta_bound(&rel);
        let max_l = rel.cosets.iter().map(|c| c.l()).max().unwrap_or(1);
        if beta_sq < max_l as f64 {
            return fail(format!("{}: beta^2 = {beta_sq} < max L = {max_l}", entry.name));
        }
    }
    Ok(corpus.len())
}

fn witnesses<O: GroupOracle>(pair: &HeckePair<O>, entry: &CatalogEntry) -> std::result::Result<usize, String> {
    let mut paths = 0;
    for c in positive_closures(pair, entry)?.iter().filter(|c| c.len() <= 20) {
        for path in c.bfs_paths() {
            let gammas = ok_or_fail(witness_sequence(pair, &path))?;
            if !ok_or_fail(verify_witness(pair, &path, &gammas))? {
                return fail(format!("{}: witness fails to verify", entry.name));
            }
            paths += 1;
        }
    }
    Ok(paths)
}

fn per_pair(
    pairs: &[(AnyPair, CatalogEntry)],
    positive_only: bool,
    mut check: impl FnMut(&AnyPair, &CatalogEntry) -> std::result::Result<String, String>,
) -> Verdict {
    let mut details = Vec::new();
    for (pair, entry) in pairs {
        if positive_only && !entry.positive {
            continue;
        }
        details.push(format!("{}: {}", entry.name, check(pair, entry).map_err(|e| format!("{}: {e}", entry.name))?));
    }
    Ok(details.join("; "))
}

fn criterion_5() -> Verdict {
    let (pair, _) = catalog::build("group-algebra", None).map_err(|e| e.to_string())?;
    let AnyPair::Perm(pair) = pair else { unreachable!() };
    let mut checked = 0;
    for g in pair.oracle().all_elements() {
        if g == pair.identity() {
            continue;
        }
        let c = ok_or_fail(closure(&pair, &ok_or_fail(pair.double_coset(&g))?, CLOSURE_BUDGET))?;
        if !c.is_complete() || c.len() != 2 {
            return fail(format!("closure of {} has {} vertices", pair.fmt(&g), c.len()));
        }
        checked += 1;
    }
    Ok(format!("{checked} non-identity elements, each closure {{delta_g, delta_e}}"))
}

fn criterion_6() -> Verdict {
    let (pair, _) = catalog::build("bc-axb", None).map_err(|e| e.to_string())?;
    let AnyPair::Bc(pair) = pair else { unreachable!() };
    let t = ok_or_fail(pair.parse("0,1/2"))?;
    let (l, r) = (ok_or_fail(pair.l_value(&t))?, ok_or_fail(pair.r_value(&t))?);
    let tc = ok_or_fail(pair.double_coset(&t))?;
    let c = ok_or_fail(closure(&pair, &tc, CLOSURE_BUDGET))?;
    let expected: BTreeSet<_> = [tc.key().clone(), ok_or_fail(pair.gamma_coset())?.key().clone()].into();
    let cert = ok_or_fail(l1_certificate(&pair, &c))?;
    let bounds: Vec<_> = c.vertices.iter().map(|v| cert.bounds[v.key()].clone()).collect();
    let mut problems = Vec::new();
    if r != 1 {
        problems.push(format!("R(t) = {r}, expected 1"));
    }
    if !c.is_complete() || c.keys() != expected {
        problems.push(format!("closure has {} vertices", c.len()));
    }
    if bounds != vec![rat(1, 1), rat(1, 1)] {
        problems.push("bounds are not (1,1)".to_string());
    }
    let detail = format!("L(t) = {l}, R(t) = {r}, closure size {}, bounds (1,1) = {}", c.len(), bounds == vec![rat(1, 1), rat(1, 1)]);
    if problems.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", problems.join("; ")))
    }
}

fn criterion_7() -> Verdict {
    let (pair, _) = catalog::build("quasicyclic-dihedral", Some(2)).map_err(|e| e.to_string())?;
    let AnyPair::Quasicyclic(pair) = pair else { unreachable!() };
    let mut sizes = Vec::new();
    for k in 1..=6u32 {
        let g = ok_or_fail(pair.parse(&format!("1/{},-", 1u64 << k)))?;
        let c = ok_or_fail(closure(&pair, &ok_or_fail(pair.double_coset(&g))?, CLOSURE_BUDGET))?;
        if !c.is_complete() || c.len() != k as usize + 1 {
            return fail(format!("k = {k}: {} vertices, status {:?}", c.len(), c.status));
        }
        let cert = ok_or_fail(l1_certificate(&pair, &c))?;
        if !cert.checks.all() {
            return fail(format!("k = {k}: checks {:?}", cert.checks));
        }
        for v in &c.vertices {
            if cert.bounds[v.key()] != BigRational::from_integer(BigInt::from(v.l())) {
                return fail(format!("k = {k}: bound differs from L at {}", pair.fmt(v.key())));
            }
        }
        sizes.push(c.len());
    }
    Ok(format!("sizes {sizes:?}, all four checks pass, bounds = L"))
}

fn criterion_8() -> Verdict {
    let (pair, entry) = catalog::build("heisenberg", None).map_err(|e| e.to_string())?;
    let AnyPair::Heisenberg(pair) = pair else { unreachable!() };
    let s = ok_or_fail(pair.parse(&entry.seed_coset))?;
    let chain = heisenberg_chain();
    let report = chain_condition_b(&pair, &s, &chain, 1000, SEED);
    if !report.passed {
        return fail(format!("chain_condition_b: {:?}", report.counterexample));
    }
    let mut rng = seeded_rng(SEED);
    for i in 0..1000 {
        let gammas = [pair.sample_gamma(&mut rng), pair.sample_gamma(&mut rng)];
        let x = ok_or_fail(iterated_commutator(&pair, &s, &gammas))?;
        if !pair.oracle().in_gamma(&x) {
            return fail(format!("[s, g1, g2] outside Gamma on sample {i}"));
        }
    }
    let corpus = positive_closures(&pair, &entry)?;
    let largest = corpus.iter().map(|c| c.len()).max().unwrap_or(0);
    Ok(format!(
        "1000 stairway samples pass, [s,g1,g2] in Gamma 1000/1000, {} closures Complete (largest {largest})",
        corpus.len()
    ))
}

fn criterion_9() -> Verdict {
    let (pair, _) = catalog::build("infinite-dihedral", None).map_err(|e| e.to_string())?;
    let AnyPair::Dihedral(pair) = pair else { unreachable!() };
    let root = ok_or_fail(pair.double_coset(&ok_or_fail(pair.parse("1,-"))?))?;
    let c = ok_or_fail(closure(&pair, &root, 50))?;
    if c.status != ClosureStatus::BudgetExhausted {
        return fail("infinite dihedral closure did not exhaust budget 50");
    }
    let first: BTreeSet<_> = c.vertices[1..12].iter().map(|v| v.key().clone()).collect();
    let mut expected = BTreeSet::from([ok_or_fail(pair.gamma_coset())?.key().clone()]);
    for j in 1..=10 {
        let g = ok_or_fail(pair.parse(&format!("{},-", 1i64 << j)))?;
        expected.insert(ok_or_fail(pair.double_coset(&g))?.key().clone());
    }
    if first != expected {
        return fail("first discovered vertices are not Gamma and Gamma(2^j,-)Gamma, j = 1..10");
    }

    let (sl2, entry) = catalog::build("sl2-localized", Some(2)).map_err(|e| e.to_string())?;
    let AnyPair::Sl2(sl2) = sl2 else { unreachable!() };
    let d = ok_or_fail(sl2.double_coset(&ok_or_fail(sl2.parse(&entry.seed_coset))?))?;
    let sl2_outcome = match closure(&sl2, &d, 50) {
        Ok(r) if r.status == ClosureStatus::BudgetExhausted => format!("status BudgetExhausted at {} vertices", r.len()),
        Ok(r) => return fail(format!("sl2-localized closure Complete with {} vertices", r.len())),
        Err(e @ HeckeError::BudgetExhausted { .. }) => format!("BudgetExhausted raised by inner orbit: {e}"),
        Err(e) => return fail(e.to_string()),
    };
    Ok(format!("dihedral: BudgetExhausted, doubling law holds; sl2-localized(2): {sl2_outcome}"))
}

fn criterion_11() -> Verdict {
    let (pair, _) = catalog::build("heisenberg", None).map_err(|e| e.to_string())?;
    let AnyPair::Heisenberg(pair) = pair else { unreachable!() };
    let gens: Vec<Ut3> = ["1,1,0,0,1,0,0,0,1", "1,0,0,0,1,1,0,0,1", "1,0,1/2,0,1,0,0,0,1", "1,0,1/3,0,1,0,0,0,1", "1,0,1/5,0,1,0,0,0,1"]
        .iter()
        .map(|s| pair.parse(s).expect("generator"))
        .collect();
    let sub = ok_or_fail(restrict_pair(&pair, "H2", Ut3::superdiagonal_integral, gens))?;
    let mut rng = seeded_rng(SEED ^ 11);
    let mut sizes = Vec::new();
    for _ in 0..10 {
        let g = sub.sample_element(&mut rng);
        let inner = ok_or_fail(closure(&sub, &ok_or_fail(sub.double_coset(&g))?, CLOSURE_BUDGET))?;
        let outer = ok_or_fail(closure(&pair, &ok_or_fail(pair.double_coset(&g))?, CLOSURE_BUDGET))?;
        if inner.keys() != outer.keys() || inner.status != outer.status {
            return fail(format!("closures of {} differ", pair.fmt(&g)));
        }
        sizes.push(inner.len());
    }
    Ok(format!("10 H2-cosets, identical key sets (sizes {sizes:?})"))
}

fn run(n: usize, title: &str, check: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    let secs = start.elapsed().as_secs_f64();
    match &outcome {
        Ok(d) => println!("PASS [{n:>2}] {title}: {d} ({secs:.1}s)"),
        Err(d) => println!("FAIL [{n:>2}] {title}: {d} ({secs:.1}s)"),
    }
    outcome.is_ok()
}

fn main() -> ExitCode {
    let pairs = catalog_pairs();
    let results = [
        run(1, "algebra laws on all catalog pairs", || {
            per_pair(&pairs, false, |p, _| with_pair!(p, p => algebra_laws(p, 200)))
        }),
        run(2, "L1 multiplicativity", || per_pair(&pairs, false, |p, _| with_pair!(p, p => l1_identities(p, 100)))),
        run(3, "product formula equals structure-coefficient reconstruction", || {
            per_pair(&pairs, false, |p, _| with_pair!(p, p => product_paths(p, 100)))
        }),
        run(4, "row identity of every relations matrix", || {
            per_pair(&pairs, true, |p, e| with_pair!(p, p => row_identities(p, e).map(|n| format!("{n} rows"))))
        }),
        run(5, "group-algebra closures have two elements", criterion_5),
        run(6, "directed closure of t = (0,1/2)", criterion_6),
        run(7, "quasicyclic chains and certificates", criterion_7),
        run(8, "Heisenberg stairway and closures", criterion_8),
        run(9, "negative pairs exhaust budget 50", criterion_9),
        run(10, "region-B dominance and beta^2 >= max L", || {
            per_pair(&pairs, true, |p, e| with_pair!(p, p => dominance(p, e).map(|n| format!("{n} closures"))))
        }),
        run(11, "restriction to H2 preserves closures", criterion_11),
        run(12, "witness sequences for BFS paths", || {
            per_pair(&pairs, true, |p, e| with_pair!(p, p => witnesses(p, e).map(|n| format!("{n} paths"))))
        }),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
