//! The concrete pairs shipped with the engine, their declared family tags and
//! designated seed cosets.

mod bc;
mod dihedral;
mod heisenberg;
mod perm;
mod quasicyclic;
mod sl2;

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use num_rational::BigRational;
use serde::Serialize;

pub use bc::{AxB, BcPair};
pub use dihedral::{DElem, InfiniteDihedral};
pub use heisenberg::{Heisenberg, Ut3};
pub use perm::{Perm, PermGroup};
pub use quasicyclic::{QElem, QuasicyclicDihedral};
pub use sl2::{Sl2Elem, Sl2Localized};

use crate::error::{BudgetKind, HeckeError, Result};
use crate::group::{GroupOracle, HeckePair, DEFAULT_COSET_BUDGET};
use crate::rational::parse_rational;

/// Default number of elements a generated subgroup may reach.
pub const DEFAULT_SUBGROUP_BUDGET: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn act(self, x: &BigRational) -> BigRational {
        match self {
            Sign::Plus => x.clone(),
            Sign::Minus => -x,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Parses `"q,±"`.
pub(crate) fn parse_signed_pair(s: &str) -> Result<(BigRational, Sign)> {
    let (q, sign) = s
        .rsplit_once(',')
        .ok_or_else(|| HeckeError::Parse(format!("'{s}': expected 'q,+' or 'q,-'")))?;
    let sign = match sign.trim() {
        "+" => Sign::Plus,
        "-" => Sign::Minus,
        other => return Err(HeckeError::Parse(format!("'{other}' is not a sign"))),
    };
    Ok((parse_rational(q)?, sign))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum PairFamily {
    FiniteIndex,
    Directed,
    Iwahori,
    Protonormal,
    Subnormal,
    Ascendant,
    FinitelyManyConjugates,
    FiniteByNilpotent,
    Hypercentral,
    FCWithFiniteGamma,
    LocallyNilpotentFiniteGamma,
    LocallyFiniteFiniteGamma,
    /// In none of the families.
    #[serde(rename = "None")]
    Unclassified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Declared,
    SampleChecked,
}

/// A family tag is metadata: only its sample-checkable consequences are
/// ever asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairFamilyTag {
    pub family: PairFamily,
    pub provenance: Provenance,
}

fn declared(families: &[PairFamily]) -> Vec<PairFamilyTag> {
    families
        .iter()
        .map(|&family| PairFamilyTag { family, provenance: Provenance::Declared })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: BTreeMap<String, u64>,
    pub description: String,
    pub element_syntax: String,
    pub tags: Vec<PairFamilyTag>,
    /// Human description of the declared subnormal chain, if any.
    pub chain: Option<String>,
    pub seed_coset: String,
    /// Whether closures are expected to stay finite.
    pub positive: bool,
    pub expectations: Vec<String>,
}

impl CatalogEntry {
    pub fn has_tag(&self, family: PairFamily) -> bool {
        self.tags.iter().any(|t| t.family == family)
    }
}

pub const PAIR_NAMES: [&str; 7] = [
    "finite-perm",
    "group-algebra",
    "quasicyclic-dihedral",
    "infinite-dihedral",
    "heisenberg",
    "sl2-localized",
    "bc-axb",
];

/// A built pair of any catalog kind. Use [`with_pair!`](crate::with_pair)
/// to run generic code against it.
pub enum AnyPair {
    Perm(HeckePair<PermGroup>),
    Quasicyclic(HeckePair<QuasicyclicDihedral>),
    Dihedral(HeckePair<InfiniteDihedral>),
    Heisenberg(HeckePair<Heisenberg>),
    Sl2(HeckePair<Sl2Localized>),
    Bc(HeckePair<BcPair>),
}

/// Evaluates `$body` with `$p` bound to the concrete `HeckePair` inside an
/// [`AnyPair`].
#[macro_export]
macro_rules! with_pair {
    ($any:expr, $p:ident => $body:expr) => {
        match $any {
            $crate::catalog::AnyPair::Perm($p) => $body,
            $crate::catalog::AnyPair::Quasicyclic($p) => $body,
            $crate::catalog::AnyPair::Dihedral($p) => $body,
            $crate::catalog::AnyPair::Heisenberg($p) => $body,
            $crate::catalog::AnyPair::Sl2($p) => $body,
            $crate::catalog::AnyPair::Bc($p) => $body,
        }
    };
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn prime_param(name: &str, p: Option<u64>) -> Result<u64> {
    let p = p.unwrap_or(2);
    if !is_prime(p) {
        return Err(HeckeError::BadParams(format!("{name}: p = {p} is not prime")));
    }
    Ok(p)
}

fn expectations(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// The catalog entry for `name`, without building the oracle.
pub fn entry(name: &str, p: Option<u64>) -> Result<CatalogEntry> {
    use PairFamily::*;
    let mut params = BTreeMap::new();
    let e = match name {
        "finite-perm" => CatalogEntry {
            name: name.into(),
            params,
            description: "S4 over the subgroup generated by (1 2)".into(),
            element_syntax: "cycle notation on 1..4, e.g. \"(1 3)(2 4)\"".into(),
            tags: declared(&[FiniteIndex, FCWithFiniteGamma, LocallyFiniteFiniteGamma]),
            chain: None,
            seed_coset: "(1 3)".into(),
            positive: true,
            expectations: expectations(&["every closure is finite", "algebra dimension 7"]),
        },
        "group-algebra" => CatalogEntry {
            name: name.into(),
            params,
            description: "S3 over the trivial subgroup (the group algebra)".into(),
            element_syntax: "cycle notation on 1..3, e.g. \"(1 2 3)\"".into(),
            tags: declared(&[FiniteIndex, Protonormal, Subnormal, LocallyFiniteFiniteGamma]),
            chain: Some("G ⊵ {e}".into()),
            seed_coset: "(1 2 3)".into(),
            positive: true,
            expectations: expectations(&["closure of a non-identity g is {g, e}"]),
        },
        "quasicyclic-dihedral" => {
            let p = prime_param(name, p)?;
            params.insert("p".into(), p);
            let mut tags = vec![LocallyFiniteFiniteGamma, FCWithFiniteGamma];
            if p == 2 {
                tags.extend([Hypercentral, LocallyNilpotentFiniteGamma, Ascendant]);
            }
            CatalogEntry {
                name: name.into(),
                params,
                description: format!("Z_({p}^inf) ⋊ Z/2 over the order-two subgroup {{(0,+), (0,-)}}"),
                element_syntax: format!("\"q,s\" with q a rational mod 1 with {p}-power denominator and s in {{+,-}}"),
                tags: declared(&tags),
                chain: None,
                seed_coset: format!("1/{},-", p * p * p),
                positive: true,
                expectations: expectations(&[
                    "every closure is finite",
                    "closure of (1/p^k,-) is the chain 1/p^k -> ... -> 1/p -> Γ",
                ]),
            }
        }
        "infinite-dihedral" => CatalogEntry {
            name: name.into(),
            params,
            description: "Z ⋊ Z/2 over the order-two subgroup generated by (0,-)".into(),
            element_syntax: "\"m,s\" with m an integer and s in {+,-}".into(),
            tags: declared(&[Unclassified]),
            chain: None,
            seed_coset: "1,-".into(),
            positive: false,
            expectations: expectations(&["closure of (1,-) exhausts every budget: offsets double"]),
        },
        "heisenberg" => CatalogEntry {
            name: name.into(),
            params,
            description: "UT3(Q) over UT3(Z)".into(),
            element_syntax: "nine comma-separated rationals, row-major, upper unitriangular".into(),
            tags: declared(&[Subnormal, Ascendant, FiniteByNilpotent, Hypercentral]),
            chain: Some("G ⊵ H1 (superdiagonal integral) ⊵ Γ".into()),
            seed_coset: "1,1/2,0,0,1,0,0,0,1".into(),
            positive: true,
            expectations: expectations(&["every closure is finite", "[s,γ1,γ2] ∈ Γ"]),
        },
        "sl2-localized" => {
            let p = prime_param(name, p)?;
            params.insert("p".into(), p);
            CatalogEntry {
                name: name.into(),
                params,
                description: format!(
                    "SL2(Z[1/{p}]) over SL2(Z), the exact stand-in for (SL2(Q_p), SL2(Z_p))"
                ),
                element_syntax: format!("\"a,b,c,d\" row-major, entries with {p}-power denominators, det 1"),
                tags: declared(&[Unclassified]),
                chain: None,
                seed_coset: format!("{p},0,0,1/{p}"),
                positive: false,
                expectations: expectations(&["closure of diag(p,1/p) exhausts the budget"]),
            }
        }
        "bc-axb" => CatalogEntry {
            name: name.into(),
            params,
            description: "Q ⋊ Q+ over the integer translations".into(),
            element_syntax: "\"b,a\" for x ↦ a·x + b, with a > 0".into(),
            tags: declared(&[Directed]),
            chain: None,
            seed_coset: "0,1/2".into(),
            positive: true,
            expectations: expectations(&["closure of (0,1/2) is {ΓtΓ, Γ}"]),
        },
        _ => return Err(HeckeError::UnknownPair(name.to_string())),
    };
    Ok(e)
}

/// Builds the oracle for `name` with the default coset budget.
pub fn build(name: &str, p: Option<u64>) -> Result<(AnyPair, CatalogEntry)> {
    build_with_budget(name, p, DEFAULT_COSET_BUDGET)
}

pub fn build_with_budget(
    name: &str,
    p: Option<u64>,
    coset_budget: usize,
) -> Result<(AnyPair, CatalogEntry)> {
    let e = entry(name, p)?;
    let prime = e.params.get("p").copied().unwrap_or(2);
    let pair = match name {
        "finite-perm" => AnyPair::Perm(HeckePair::with_budget(finite_perm(), coset_budget)),
        "group-algebra" => AnyPair::Perm(HeckePair::with_budget(group_algebra(), coset_budget)),
        "quasicyclic-dihedral" => {
            AnyPair::Quasicyclic(HeckePair::with_budget(QuasicyclicDihedral::new(prime), coset_budget))
        }
        "infinite-dihedral" => {
            AnyPair::Dihedral(HeckePair::with_budget(InfiniteDihedral::default(), coset_budget))
        }
        "heisenberg" => AnyPair::Heisenberg(HeckePair::with_budget(Heisenberg::default(), coset_budget)),
        "sl2-localized" => AnyPair::Sl2(HeckePair::with_budget(Sl2Localized::new(prime), coset_budget)),
        "bc-axb" => AnyPair::Bc(HeckePair::with_budget(BcPair::default(), coset_budget)),
        _ => unreachable!("entry() rejects unknown names"),
    };
    Ok((pair, e))
}

pub fn finite_perm() -> PermGroup {
    PermGroup::new("finite-perm", 4, vec![Perm::transposition(4, 0, 1)])
}

pub fn group_algebra() -> PermGroup {
    PermGroup::new("group-algebra", 3, vec![])
}

/// Every catalog entry with default parameters.
pub fn listing() -> Vec<CatalogEntry> {
    PAIR_NAMES.iter().map(|n| entry(n, None).expect("catalog names are valid")).collect()
}

/// Result of computing `H = ⟨Γ, g⟩` and the dimension of `H(H, Γ)`.
#[derive(Debug, Clone, Serialize)]
pub struct AfReport {
    pub element: String,
    pub tagged_locally_finite: bool,
    pub subgroup_order: usize,
    /// Number of Γ-double cosets inside the generated subgroup.
    pub dimension: usize,
}

/// Elements of `⟨Γ, g⟩`, generated by closing under right multiplication by
/// the generators. Only terminates for finite subgroups, hence the budget.
pub fn generated_subgroup<O: GroupOracle>(
    pair: &HeckePair<O>,
    g: &O::Element,
    budget: usize,
) -> Result<Vec<O::Element>> {
    let oracle = pair.oracle();
    let mut gens: Vec<O::Element> = oracle.gamma_generators().to_vec();
    gens.push(g.clone());
    // inverses are needed when the closure is run on a group that might be
    // infinite; for finite ones they are powers anyway
    let inverses: Vec<_> = gens.iter().map(|x| oracle.invert(x)).collect();
    gens.extend(inverses);
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(oracle.identity());
    queue.push_back(oracle.identity());
    while let Some(x) = queue.pop_front() {
        for s in &gens {
            let y = oracle.multiply(&x, s);
            if seen.contains(&y) {
                continue;
            }
            if seen.len() >= budget {
                let mut partial: Vec<_> = seen.into_iter().collect();
                partial.sort();
                return Err(HeckeError::BudgetExhausted {
                    kind: BudgetKind::Subgroup,
                    budget,
                    partial: partial.iter().take(32).map(|e| pair.fmt(e)).collect(),
                });
            }
            seen.insert(y.clone());
            queue.push_back(y);
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The finite-dimensional step of the AF filtration `Hₙ = ⟨Γ, g₁, …, gₙ⟩`
/// for a single element.
pub fn af_filtration_check<O: GroupOracle>(
    pair: &HeckePair<O>,
    entry: &CatalogEntry,
    g: &O::Element,
    budget: usize,
) -> Result<AfReport> {
    let elements = generated_subgroup(pair, g, budget)?;
    let mut keys = HashSet::new();
    for x in &elements {
        keys.insert(pair.double_coset(x)?.key().clone());
    }
    Ok(AfReport {
        element: pair.fmt(g),
        tagged_locally_finite: entry.has_tag(PairFamily::LocallyFiniteFiniteGamma),
        subgroup_order: elements.len(),
        dimension: keys.len(),
    })
}

/// The subnormal chain `UT₃(Q) ⊵ {superdiagonal integral} ⊵ UT₃(Z)`.
pub fn heisenberg_chain() -> crate::commutator::SubnormalChain<Ut3> {
    crate::commutator::SubnormalChain::new(
        vec![
            ("G".into(), Box::new(|_: &Ut3| true)),
            ("H1".into(), Box::new(|g: &Ut3| g.superdiagonal_integral())),
            ("Gamma".into(), Box::new(|g: &Ut3| g.is_integral())),
        ],
        vec![true, true],
    )
}

/// Parses an integer-valued option the way catalog parameters are given.
pub fn parse_prime(s: &str) -> Result<u64> {
    s.parse::<u64>().map_err(|_| HeckeError::BadParams(format!("'{s}' is not a positive integer")))
}
