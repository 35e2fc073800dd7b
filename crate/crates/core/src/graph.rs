//! The successor graph on the double-coset basis: successors, the levels
//! `Sⁿ`, budgeted co-hereditary closures and their exports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::{convolve, involution, HeckeElement};
use crate::error::{BudgetKind, HeckeError, Result};
use crate::group::{DoubleCoset, GroupOracle, HeckePair};
use crate::rational::rational_string;

/// Default number of vertices a closure may reach.
pub const DEFAULT_CLOSURE_BUDGET: usize = 256;

/// The expansion `(χ_c)* * χ_c`.
pub fn self_product<O: GroupOracle>(
    pair: &HeckePair<O>,
    c: &DoubleCoset<O::Element>,
) -> Result<HeckeElement<O::Element>> {
    let f = HeckeElement::basis(c);
    convolve(pair, &involution(pair, &f)?, &f)
}

/// Support of `(χ_c)* * χ_c`, sorted by key.
pub fn successors<O: GroupOracle>(
    pair: &HeckePair<O>,
    c: &DoubleCoset<O::Element>,
) -> Result<Vec<DoubleCoset<O::Element>>> {
    Ok(self_product(pair, c)?.support())
}

/// `Sⁿ({root})`, sorted by key.
pub fn level_set<O: GroupOracle>(
    pair: &HeckePair<O>,
    root: &DoubleCoset<O::Element>,
    n: usize,
    budget: usize,
) -> Result<Vec<DoubleCoset<O::Element>>> {
    let mut level: BTreeMap<O::Element, DoubleCoset<O::Element>> = BTreeMap::new();
    level.insert(root.key().clone(), root.clone());
    for _ in 0..n {
        let mut next = BTreeMap::new();
        for c in level.values() {
            for s in successors(pair, c)? {
                next.entry(s.key().clone()).or_insert(s);
            }
            if next.len() > budget {
                return Err(HeckeError::BudgetExhausted {
                    kind: BudgetKind::Level,
                    budget,
                    partial: next.values().take(32).map(|c| pair.fmt(c.key())).collect(),
                });
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureStatus {
    Complete,
    BudgetExhausted,
}

#[derive(Debug, Clone)]
pub struct ClosureReport<E> {
    pub root: DoubleCoset<E>,
    /// Vertices in discovery order (level by level, key order within a level).
    pub vertices: Vec<DoubleCoset<E>>,
    pub edges: BTreeSet<(E, E)>,
    pub levels: BTreeMap<E, usize>,
    /// BFS tree: the vertex through which each non-root vertex was found.
    pub parents: BTreeMap<E, E>,
    pub status: ClosureStatus,
    pub budget: usize,
}

impl<E: Clone + Ord> ClosureReport<E> {
    pub fn is_complete(&self) -> bool {
        self.status == ClosureStatus::Complete
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn keys(&self) -> BTreeSet<E> {
        self.vertices.iter().map(|v| v.key().clone()).collect()
    }

    pub fn vertex(&self, key: &E) -> Option<&DoubleCoset<E>> {
        self.vertices.iter().find(|v| v.key() == key)
    }

    /// The BFS tree path from the root to `key`.
    pub fn tree_path(&self, key: &E) -> Option<Vec<DoubleCoset<E>>> {
        let mut path = vec![self.vertex(key)?.clone()];
        let mut cur = key.clone();
        while let Some(p) = self.parents.get(&cur) {
            path.push(self.vertex(p)?.clone());
            cur = p.clone();
        }
        path.reverse();
        Some(path)
    }

    /// Every root-to-vertex path of the BFS tree.
    pub fn bfs_paths(&self) -> Vec<Vec<DoubleCoset<E>>> {
        self.vertices
            .iter()
            .filter_map(|v| self.tree_path(v.key()))
            .collect()
    }
}

#[cfg(feature = "parallel")]
fn expand<O: GroupOracle>(
    pair: &HeckePair<O>,
    frontier: &[DoubleCoset<O::Element>],
) -> Result<Vec<Vec<DoubleCoset<O::Element>>>> {
    use rayon::prelude::*;
    frontier.par_iter().map(|c| successors(pair, c)).collect()
}

#[cfg(not(feature = "parallel"))]
fn expand<O: GroupOracle>(
    pair: &HeckePair<O>,
    frontier: &[DoubleCoset<O::Element>],
) -> Result<Vec<Vec<DoubleCoset<O::Element>>>> {
    frontier.iter().map(|c| successors(pair, c)).collect()
}

/// Breadth-first closure `∪ Sⁿ({root})`, stopping once the vertex count
/// would exceed `budget`. Frontiers are expanded concurrently when the
/// `parallel` feature is on; the result does not depend on scheduling.
pub fn closure<O: GroupOracle>(
    pair: &HeckePair<O>,
    root: &DoubleCoset<O::Element>,
    budget: usize,
) -> Result<ClosureReport<O::Element>> {
    let budget = budget.max(1);
    let mut report = ClosureReport {
        root: root.clone(),
        vertices: vec![root.clone()],
        edges: BTreeSet::new(),
        levels: BTreeMap::from([(root.key().clone(), 0)]),
        parents: BTreeMap::new(),
        status: ClosureStatus::Complete,
        budget,
    };
    let mut frontier = vec![root.clone()];
    let mut depth = 0;
    let mut pending: Vec<(O::Element, O::Element)> = Vec::new();
    'bfs: while !frontier.is_empty() {
        depth += 1;
        let expanded = expand(pair, &frontier)?;
        let mut next = Vec::new();
        for (v, succ) in frontier.iter().zip(expanded) {
            for s in succ {
                pending.push((v.key().clone(), s.key().clone()));
                if report.levels.contains_key(s.key()) {
                    continue;
                }
                if report.vertices.len() >= budget {
                    report.status = ClosureStatus::BudgetExhausted;
                    break 'bfs;
                }
                report.levels.insert(s.key().clone(), depth);
                report.parents.insert(s.key().clone(), v.key().clone());
                report.vertices.push(s.clone());
                next.push(s);
            }
        }
        next.sort_by(|a, b| a.key().cmp(b.key()));
        frontier = next;
    }
    report.edges = pending
        .into_iter()
        .filter(|(_, b)| report.levels.contains_key(b))
        .collect();
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub key: String,
    pub rep: String,
    #[serde(rename = "L")]
    pub l: u64,
    #[serde(rename = "R")]
    pub r: u64,
    pub delta: String,
    pub level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureJson {
    pub root: String,
    pub status: ClosureStatus,
    pub budget: usize,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[String; 2]>,
}

pub fn closure_json<O: GroupOracle>(
    pair: &HeckePair<O>,
    report: &ClosureReport<O::Element>,
) -> ClosureJson {
    ClosureJson {
        root: pair.fmt(report.root.key()),
        status: report.status,
        budget: report.budget,
        vertices: report
            .vertices
            .iter()
            .map(|v| VertexJson {
                key: pair.fmt(v.key()),
                rep: pair.fmt(v.rep()),
                l: v.l(),
                r: v.r(),
                delta: rational_string(v.delta()),
                level: report.levels[v.key()],
            })
            .collect(),
        edges: report
            .edges
            .iter()
            .map(|(a, b)| [pair.fmt(a), pair.fmt(b)])
            .collect(),
    }
}

pub fn export_json<O: GroupOracle>(pair: &HeckePair<O>, report: &ClosureReport<O::Element>) -> String {
    serde_json::to_string_pretty(&closure_json(pair, report)).expect("closure JSON")
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz text; nodes are named by their printed key and labelled with
/// their representative and L.
pub fn export_dot<O: GroupOracle>(pair: &HeckePair<O>, report: &ClosureReport<O::Element>) -> String {
    let mut out = String::from("digraph closure {\n");
    for v in &report.vertices {
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"{} (L={})\"];",
            dot_escape(&pair.fmt(v.key())),
            dot_escape(&pair.fmt(v.rep())),
            v.l()
        );
    }
    for (a, b) in &report.edges {
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", dot_escape(&pair.fmt(a)), dot_escape(&pair.fmt(b)));
    }
    out.push_str("}\n");
    out
}
