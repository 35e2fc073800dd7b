//! Randomized invariants over every catalog pair.

use hecke_core::algebra::{convolve, involution, sample_element};
use hecke_core::catalog::{self, heisenberg_chain, AnyPair, PAIR_NAMES};
use hecke_core::certify::{beta_bound, element_bound, l1_certificate, relations};
use hecke_core::commutator::{chain_normality_check, stabilization_probe};
use hecke_core::graph::{closure, successors};
use hecke_core::group::{seeded_rng, verify_coset_invariants, verify_oracle, GroupOracle, HeckePair};
use hecke_core::rational::sqrt_lower;
use hecke_core::with_pair;
use num_rational::BigRational;
use proptest::prelude::*;

#[test]
fn oracle_and_coset_suites_pass() {
    for name in PAIR_NAMES {
        let (p, _) = catalog::build(name, None).unwrap();
        with_pair!(&p, p => {
            for check in verify_oracle(p, 1000, 1) {
                assert!(check.passed, "{name}: {} {}", check.name, check.detail);
            }
            for check in verify_coset_invariants(p, 100, 2).unwrap() {
                assert!(check.passed, "{name}: {} {}", check.name, check.detail);
            }
        });
    }
}

fn closure_properties<O: GroupOracle>(pair: &HeckePair<O>, seed: u64) {
    let mut rng = seeded_rng(seed);
    for _ in 0..5 {
        let root = pair.double_coset(&pair.sample_element(&mut rng)).unwrap();
        let small = closure(pair, &root, 3).unwrap();
        let big = closure(pair, &root, 256).unwrap();
        assert!(small.keys().is_subset(&big.keys()));
        if small.is_complete() {
            assert_eq!(small.keys(), big.keys());
        }
        if big.is_complete() {
            let keys = big.keys();
            for v in &big.vertices {
                for s in successors(pair, v).unwrap() {
                    assert!(keys.contains(s.key()), "not co-hereditary");
                    assert!(big.edges.contains(&(v.key().clone(), s.key().clone())));
                }
            }
            let cert = l1_certificate(pair, &big).unwrap();
            let rel = relations(pair, &big).unwrap();
            // exact lower bound for β = Σ sqrt(row sums), squared
            let beta_low: BigRational = rel
                .lambda
                .iter()
                .map(|row| sqrt_lower(&row.iter().cloned().sum(), 60))
                .sum();
            let reported = BigRational::from_float(beta_bound(&rel)).unwrap();
            assert!(reported >= &beta_low * &beta_low);
            assert_eq!(cert.beta_squared, beta_bound(&rel));
            let f = hecke_core::algebra::HeckeElement::basis(&big.root);
            assert_eq!(
                element_bound(&f, &cert.bounds, |e| pair.fmt(e)).unwrap().value,
                hecke_core::algebra::l1_norm(&f).value
            );
        }
        for (a, b) in &big.edges {
            assert!(big.levels[b] <= big.levels[a] + 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closures_are_monotone_and_co_hereditary(seed in any::<u64>(), which in 0usize..7) {
        let (p, e) = catalog::build(PAIR_NAMES[which], None).unwrap();
        if e.positive {
            with_pair!(&p, p => closure_properties(p, seed));
        }
    }

    #[test]
    fn involution_laws(seed in any::<u64>(), which in 0usize..7) {
        let (p, _) = catalog::build(PAIR_NAMES[which], None).unwrap();
        with_pair!(&p, p => {
            let mut rng = seeded_rng(seed);
            let f = sample_element(p, &mut rng, 3, false).unwrap();
            let g = sample_element(p, &mut rng, 3, false).unwrap();
            let fs = involution(p, &f).unwrap();
            prop_assert_eq!(involution(p, &fs).unwrap(), f.clone());
            let lhs = involution(p, &convolve(p, &f, &g).unwrap()).unwrap();
            let rhs = convolve(p, &involution(p, &g).unwrap(), &fs).unwrap();
            prop_assert_eq!(lhs, rhs);
        });
    }
}

#[test]
fn heisenberg_chain_is_normal_on_samples() {
    let (p, _) = catalog::build("heisenberg", None).unwrap();
    let AnyPair::Heisenberg(p) = p else { unreachable!() };
    let mut rng = seeded_rng(4);
    let mut pool: Vec<_> = (0..60).map(|_| p.sample_element(&mut rng)).collect();
    pool.extend((0..30).map(|_| p.sample_gamma(&mut rng)));
    pool.push(p.parse("1,2,1/3,0,1,-1,0,0,1").unwrap());
    pool.push(p.parse("1,0,1/2,0,1,5,0,0,1").unwrap());
    assert_eq!(chain_normality_check(&p, &heisenberg_chain(), &pool), None);
}

#[test]
fn collapse_implies_finite_closure() {
    for name in ["heisenberg", "quasicyclic-dihedral", "finite-perm", "group-algebra", "bc-axb"] {
        let (p, _) = catalog::build(name, None).unwrap();
        with_pair!(&p, p => {
            let mut rng = seeded_rng(17);
            for _ in 0..5 {
                let g = p.sample_element(&mut rng);
                let probe = stabilization_probe(p, &g, 1000, 4, 17).unwrap();
                if probe.passed {
                    let c = closure(p, &p.double_coset(&g).unwrap(), 256).unwrap();
                    assert!(c.is_complete(), "{name}");
                }
            }
        });
    }
}

#[test]
fn dihedral_probe_grows_with_horizon() {
    let (p, _) = catalog::build("infinite-dihedral", None).unwrap();
    let AnyPair::Dihedral(p) = p else { unreachable!() };
    let g = p.parse("1,-").unwrap();
    let short = stabilization_probe(&p, &g, 200, 2, 5).unwrap();
    let long = stabilization_probe(&p, &g, 200, 6, 5).unwrap();
    let count = |r: &hecke_core::commutator::ProbeReport| -> usize {
        r.details["distinct_total"].as_u64().unwrap() as usize
    };
    assert!(!long.passed);
    assert!(count(&long) > count(&short));
    let e = stabilization_probe(&p, &p.identity(), 10, 3, 5).unwrap();
    assert!(e.passed);
}
