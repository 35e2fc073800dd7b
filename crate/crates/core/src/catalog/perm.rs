use rand::seq::SliceRandom;

use crate::error::{HeckeError, Result};
use crate::group::{GroupOracle, SeededRng};

/// A permutation of `{0, .., n-1}` in one-line form; `(a * b)(x) = a(b(x))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a, b);
        p
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    /// Disjoint-cycle notation with 1-based points, `()` for the identity.
    pub fn cycles(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = self.0[x] as usize;
            }
            out.push('(');
            out.push_str(&cycle.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `(123)`.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Perm> {
        let bad = |why: &str| HeckeError::Parse(format!("'{s}': {why}"));
        let mut perm = Perm::identity(n);
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(|| bad("unbalanced parenthesis"))?;
            if !rest.starts_with('(') {
                return Err(bad("expected '('"));
            }
            let body = &rest[1..body_end];
            rest = rest[body_end + 1..].trim_start();
            let points: Vec<usize> = if body.contains(|c: char| c.is_whitespace() || c == ',') {
                body.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>().map_err(|_| bad("bad point")))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad("bad point")))
                    .collect::<Result<_>>()?
            };
            if points.iter().any(|&p| p == 0 || p > n) {
                return Err(bad("point out of range"));
            }
            let mut uniq = points.clone();
            uniq.sort_unstable();
            uniq.dedup();
            if uniq.len() != points.len() {
                return Err(bad("repeated point in a cycle"));
            }
            let mut cycle = Perm::identity(n);
            for (i, &p) in points.iter().enumerate() {
                cycle.0[p - 1] = (points[(i + 1) % points.len()] - 1) as u8;
            }
            // cycles written left to right act right to left
            perm = perm.compose(&cycle);
        }
        Ok(perm)
    }
}

/// `(S_n, Γ)` for a subgroup Γ given by generators.
#[derive(Debug, Clone)]
pub struct PermGroup {
    label: String,
    n: usize,
    gens: Vec<Perm>,
    gamma: Vec<Perm>,
}

impl PermGroup {
    pub fn new(label: &str, n: usize, gens: Vec<Perm>) -> Self {
        let mut gamma = vec![Perm::identity(n)];
        let mut i = 0;
        while i < gamma.len() {
            for g in &gens {
                let next = g.compose(&gamma[i]);
                if !gamma.contains(&next) {
                    gamma.push(next);
                }
            }
            i += 1;
        }
        gamma.sort();
        PermGroup { label: label.to_string(), n, gens, gamma }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn gamma_elements(&self) -> &[Perm] {
        &self.gamma
    }

    /// Every element of `S_n`, in lexicographic order.
    pub fn all_elements(&self) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..self.n as u8).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl GroupOracle for PermGroup {
    type Element = Perm;

    fn name(&self) -> String {
        self.label.clone()
    }

    fn identity(&self) -> Perm {
        Perm::identity(self.n)
    }

    fn multiply(&self, a: &Perm, b: &Perm) -> Perm {
        a.compose(b)
    }

    fn invert(&self, a: &Perm) -> Perm {
        a.inverse()
    }

    fn in_gamma(&self, g: &Perm) -> bool {
        self.gamma.binary_search(g).is_ok()
    }

    fn gamma_generators(&self) -> &[Perm] {
        &self.gens
    }

    fn coset_rep(&self, g: &Perm) -> Perm {
        self.gamma.iter().map(|h| g.compose(h)).min().expect("gamma contains the identity")
    }

    fn format_element(&self, g: &Perm) -> String {
        g.cycles()
    }

    fn parse_element(&self, s: &str) -> Result<Perm> {
        Perm::parse_cycles(s, self.n)
    }

    fn sample_element(&self, rng: &mut SeededRng) -> Perm {
        let mut images: Vec<u8> = (0..self.n as u8).collect();
        images.shuffle(rng);
        Perm(images)
    }
}
