//! Norm bounds for finite co-hereditary closures: the relations matrix,
//! the crude β² bound and the exact L¹ certificate.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::HeckeElement;
use crate::error::{HeckeError, Result};
use crate::graph::{self_product, ClosureReport};
use crate::group::{DoubleCoset, GroupOracle, HeckePair, SeededRng};
use crate::linalg::{determinant, inverse, mat_vec, RatMatrix};
use crate::rational::{modulus_bound, rational_string, NormBound};
use crate::rounding::{add_up, from_rational_up, mul_up, sqrt_up};

fn q(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(χ_i)* * χ_i = Σ_j λ_ij χ_j` over the vertices of a closure.
#[derive(Debug, Clone)]
pub struct RelationsMatrix<E> {
    pub cosets: Vec<DoubleCoset<E>>,
    pub lambda: RatMatrix,
}

impl<E: Clone + Ord> RelationsMatrix<E> {
    pub fn dim(&self) -> usize {
        self.cosets.len()
    }

    /// `z = (L(s_1), …, L(s_n))`.
    pub fn z(&self) -> Vec<BigRational> {
        self.cosets.iter().map(|c| q(c.l())).collect()
    }

    /// Index of the first row violating `Σ_j λ_ij L_j = L_i²`.
    pub fn row_identity_violation(&self) -> Option<usize> {
        let z = self.z();
        mat_vec(&self.lambda, &z)
            .iter()
            .zip(&z)
            .position(|(lhs, zi)| lhs != &(zi * zi))
    }
}

pub fn relations<O: GroupOracle>(
    pair: &HeckePair<O>,
    closure: &ClosureReport<O::Element>,
) -> Result<RelationsMatrix<O::Element>> {
    if !closure.is_complete() {
        return Err(HeckeError::NotComplete);
    }
    let cosets = closure.vertices.clone();
    let index: BTreeMap<&O::Element, usize> =
        cosets.iter().enumerate().map(|(i, c)| (c.key(), i)).collect();
    let n = cosets.len();
    let mut lambda = vec![vec![BigRational::zero(); n]; n];
    for (i, c) in cosets.iter().enumerate() {
        for t in self_product(pair, c)?.terms() {
            let j = *index
                .get(t.coset.key())
                .ok_or(HeckeError::CheckFailed("successor outside the closure"))?;
            if !t.coeff.im.is_zero() || t.coeff.re.is_negative() {
                return Err(HeckeError::CheckFailed("relation coefficient not a nonnegative rational"));
            }
            lambda[i][j] = t.coeff.re.clone();
        }
    }
    let rel = RelationsMatrix { cosets, lambda };
    if let Some(row) = rel.row_identity_violation() {
        return Err(HeckeError::RowIdentityViolation { row });
    }
    Ok(rel)
}

/// `β² = (Σ_i √(Σ_j λ_ij))²`, rounded upward at every step.
pub fn beta_bound<E: Clone + Ord>(rel: &RelationsMatrix<E>) -> f64 {
    let mut beta = 0.0;
    for row in &rel.lambda {
        let sum: BigRational = row.iter().fold(BigRational::zero(), |a, b| a + b);
        beta = add_up(beta, sqrt_up(from_rational_up(&sum)));
    }
    mul_up(beta, beta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateChecks {
    pub az_equals_z_squared: bool,
    pub a_nonsingular: bool,
    pub inverse_columns_nonnegative: bool,
    pub diagonal_dominates: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.az_equals_z_squared
            && self.a_nonsingular
            && self.inverse_columns_nonnegative
            && self.diagonal_dominates
    }

    fn first_failure(&self) -> Option<&'static str> {
        [
            (self.az_equals_z_squared, "az_equals_z_squared"),
            (self.a_nonsingular, "a_nonsingular"),
            (self.inverse_columns_nonnegative, "inverse_columns_nonnegative"),
            (self.diagonal_dominates, "diagonal_dominates"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, name)| name)
    }
}

#[derive(Debug, Clone)]
pub struct BoundCertificate<E> {
    pub relations: RelationsMatrix<E>,
    pub z: Vec<u64>,
    pub a: RatMatrix,
    pub checks: CertificateChecks,
    pub beta_squared: f64,
    /// Certified universal-norm bound per basis element: `L(s_i)`.
    pub bounds: BTreeMap<E, BigRational>,
}

/// `a_ii = 2z_i − λ_ii`, `a_ij = −λ_ij`.
pub fn tangent_matrix<E: Clone + Ord>(rel: &RelationsMatrix<E>) -> RatMatrix {
    let z = rel.z();
    rel.lambda
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, l)| if i == j { &z[i] * q(2) - l } else { -l })
                .collect()
        })
        .collect()
}

pub fn verify_checks<E: Clone + Ord>(rel: &RelationsMatrix<E>, a: &RatMatrix) -> CertificateChecks {
    let z = rel.z();
    let az = mat_vec(a, &z);
    let az_equals_z_squared = az.iter().zip(&z).all(|(x, zi)| x == &(zi * zi));
    let a_nonsingular = !determinant(a).is_zero();
    let inverse_columns_nonnegative = a_nonsingular
        && inverse(a).is_some_and(|inv| inv.iter().flatten().all(|x| !x.is_negative()));
    let diagonal_dominates = (0..rel.dim()).all(|i| a[i][i] >= z[i] && z[i].is_positive());
    CertificateChecks { az_equals_z_squared, a_nonsingular, inverse_columns_nonnegative, diagonal_dominates }
}

/// Builds and verifies the certificate. A failed check is an error: the
/// checks are theorems for genuine closures.
pub fn l1_certificate<O: GroupOracle>(
    pair: &HeckePair<O>,
    closure: &ClosureReport<O::Element>,
) -> Result<BoundCertificate<O::Element>> {
    let rel = relations(pair, closure)?;
    let a = tangent_matrix(&rel);
    let checks = verify_checks(&rel, &a);
    if let Some(which) = checks.first_failure() {
        return Err(HeckeError::CheckFailed(which));
    }
    let beta_squared = beta_bound(&rel);
    let bounds = rel.cosets.iter().map(|c| (c.key().clone(), q(c.l()))).collect();
    Ok(BoundCertificate {
        z: rel.cosets.iter().map(|c| c.l()).collect(),
        relations: rel,
        a,
        checks,
        beta_squared,
        bounds,
    })
}

/// `Σ |f(s)|·bound(s)` over the support of `f`.
pub fn element_bound<E: Clone + Ord>(
    f: &HeckeElement<E>,
    certs: &BTreeMap<E, BigRational>,
    fmt: impl Fn(&E) -> String,
) -> Result<NormBound> {
    let mut total = NormBound::zero();
    for t in f.terms() {
        let bound = certs
            .get(t.coset.key())
            .ok_or_else(|| HeckeError::MissingCertificate(fmt(t.coset.key())))?;
        let m = modulus_bound(&t.coeff);
        total.add(NormBound { value: m.value * bound, exact: m.exact });
    }
    Ok(total)
}

/// Membership in `B = {x : x_i² ≤ Σ_j λ_ij x_j for all i}`.
pub fn in_region_b<E: Clone + Ord>(x: &[BigRational], rel: &RelationsMatrix<E>) -> Result<bool> {
    if x.len() != rel.dim() {
        return Err(HeckeError::DimensionMismatch { expected: rel.dim(), found: x.len() });
    }
    let rhs = mat_vec(&rel.lambda, x);
    Ok(x.iter().zip(&rhs).all(|(xi, r)| xi * xi <= *r))
}

/// A random point of `B`. Along a ray `t·d` with `d ≥ 0` the constraints read
/// `t ≤ (Σ_j λ_ij d_j) / d_i²`, so `B ∩ ray` is an exact segment `[0, t*]`;
/// the sample is a random rational point of that segment (often its end).
pub fn sample_region_b<E: Clone + Ord>(rel: &RelationsMatrix<E>, rng: &mut SeededRng) -> Vec<BigRational> {
    let n = rel.dim();
    let d: Vec<BigRational> = loop {
        let d: Vec<_> = (0..n).map(|_| q(rng.gen_range(0..=6))).collect();
        if d.iter().any(|x| !x.is_zero()) {
            break d;
        }
    };
    let ld = mat_vec(&rel.lambda, &d);
    let t_max = d
        .iter()
        .zip(&ld)
        .filter(|(di, _)| !di.is_zero())
        .map(|(di, l)| l / (di * di))
        .min()
        .expect("nonzero direction");
    let u = if rng.gen_bool(0.3) {
        q(1)
    } else {
        BigRational::new(BigInt::from(rng.gen_range(0..=64)), BigInt::from(64))
    };
    let t = t_max * u;
    d.into_iter().map(|x| x * &t).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub cosets: Vec<String>,
    pub lambda: Vec<Vec<String>>,
    pub z: Vec<u64>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub checks: CertificateChecks,
    pub beta_squared: f64,
    pub bounds: BTreeMap<String, String>,
}

pub fn certificate_json<O: GroupOracle>(
    pair: &HeckePair<O>,
    cert: &BoundCertificate<O::Element>,
) -> CertificateJson {
    let strings = |m: &RatMatrix| -> Vec<Vec<String>> {
        m.iter().map(|r| r.iter().map(rational_string).collect()).collect()
    };
    CertificateJson {
        cosets: cert.relations.cosets.iter().map(|c| pair.fmt(c.key())).collect(),
        lambda: strings(&cert.relations.lambda),
        z: cert.z.clone(),
        a: strings(&cert.a),
        checks: cert.checks,
        beta_squared: cert.beta_squared,
        bounds: cert.bounds.iter().map(|(k, v)| (pair.fmt(k), rational_string(v))).collect(),
    }
}
