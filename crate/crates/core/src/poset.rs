//! Generic finite posets: Hasse diagram, grading, intervals, chains, Möbius
//! function, Eulerian test, order complexes and shelling checks.
//!
//! Elements are addressed by their index in the list passed to
//! [`FinitePoset::build`]. Up-sets and down-sets are stored as bitsets, so
//! interval membership and parity counts are word operations.

use std::collections::HashMap;
use std::fmt::{self, Display, Write as _};
use std::hash::Hash;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::BitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("element {0} listed twice")]
    DuplicateElement(String),

    #[error("relation is not reflexive at {0}")]
    NotReflexive(String),

    #[error("relation is not antisymmetric: {a} <= {b} and {b} <= {a}")]
    NotAntisymmetric { a: String, b: String },

    #[error("relation is not transitive: {a} <= {b} <= {c} but not {a} <= {c}")]
    NotTransitive { a: String, b: String, c: String },

    #[error("{0} is not an element of the poset")]
    UnknownElement(String),

    #[error("{x} and {y} are not comparable")]
    Incomparable { x: String, y: String },

    #[error("poset is not graded")]
    Ungraded,

    #[error("interval has length {length}; at least {needed} is required")]
    DegenerateInterval { length: usize, needed: usize },

    #[error("facet {index} has {size} vertices, expected {expected}")]
    NonPure { index: usize, size: usize, expected: usize },
}

/// Outcome of the Jordan-Dedekind chain check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grading {
    Graded { rank: Vec<usize> },
    /// Two saturated chains with different lengths. They share the top; they
    /// share the bottom too unless the poset has minimal elements at different
    /// depths below the same element.
    NotGraded { short: Vec<usize>, long: Vec<usize> },
}

/// Closed interval `[bottom, top]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub bottom: usize,
    pub top: usize,
    pub members: BitSet,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerianReport {
    /// Every interval `[x,y]`, `x < y`, has as many even-rank as odd-rank members.
    pub parity: bool,
    /// `μ(x,y) = (-1)^{ρ(y)-ρ(x)}` for all `x ≤ y`.
    pub mobius: bool,
    pub parity_witness: Option<(usize, usize)>,
    pub mobius_witness: Option<(usize, usize)>,
}

impl EulerianReport {
    pub fn is_eulerian(&self) -> bool {
        self.parity && self.mobius
    }

    pub fn tests_agree(&self) -> bool {
        self.parity == self.mobius
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellingReport {
    pub is_shelling: bool,
    /// 1-based position of the first facet whose intersection with the
    /// earlier facets is not pure of codimension one.
    pub first_failure: Option<usize>,
}

/// Extra drawing instructions for [`FinitePoset::to_dot`].
pub struct DotStyle<'a> {
    pub name: &'a str,
    pub edge_label: Option<&'a dyn Fn(usize, usize) -> Option<String>>,
    /// Nodes drawn blue; edges between two highlighted nodes are blue too.
    pub highlight: Option<&'a BitSet>,
}

impl Default for DotStyle<'_> {
    fn default() -> Self {
        Self { name: "poset", edge_label: None, highlight: None }
    }
}

#[derive(Serialize)]
struct HasseJson<'a, T: Serialize> {
    schema: &'static str,
    elements: &'a [T],
    edges: Vec<[usize; 2]>,
    ranks: Option<&'a [usize]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

pub struct FinitePoset<T> {
    elements: Vec<T>,
    index: HashMap<T, usize>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    covers_up: Vec<Vec<usize>>,
    covers_down: Vec<Vec<usize>>,
    /// Linear extension: every element appears after everything below it.
    linear: Vec<usize>,
    grading: Grading,
    mobius_rows: Vec<OnceLock<Vec<i64>>>,
}

impl<T: Clone + Eq + Hash + Display> FinitePoset<T> {
    /// Builds the poset, checking that `leq` is a partial order on `elements`.
    pub fn build(elements: Vec<T>, leq: impl Fn(&T, &T) -> bool) -> Result<Self, PosetError> {
        let m = elements.len();
        let mut index = HashMap::with_capacity(m);
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(e.to_string()));
            }
        }
        let mut up = vec![BitSet::new(m); m];
        let mut down = vec![BitSet::new(m); m];
        for i in 0..m {
            if !leq(&elements[i], &elements[i]) {
                return Err(PosetError::NotReflexive(elements[i].to_string()));
            }
            for j in 0..m {
                if leq(&elements[i], &elements[j]) {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        for i in 0..m {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(PosetError::NotAntisymmetric {
                        a: elements[i].to_string(),
                        b: elements[j].to_string(),
                    });
                }
                if !up[j].is_subset(&up[i]) {
                    let mut missing = up[j].clone();
                    missing.difference_with(&up[i]);
                    let k = missing.iter().next().expect("non-subset has a witness");
                    return Err(PosetError::NotTransitive {
                        a: elements[i].to_string(),
                        b: elements[j].to_string(),
                        c: elements[k].to_string(),
                    });
                }
            }
        }

        let mut covers_up = vec![Vec::new(); m];
        let mut covers_down = vec![Vec::new(); m];
        for i in 0..m {
            let mut strict = up[i].clone();
            strict.remove(i);
            let mut cov = strict.clone();
            for k in strict.iter() {
                let mut above_k = up[k].clone();
                above_k.remove(k);
                cov.difference_with(&above_k);
            }
            for j in cov.iter() {
                covers_up[i].push(j);
                covers_down[j].push(i);
            }
        }

        let mut linear: Vec<usize> = (0..m).collect();
        linear.sort_by_key(|&i| (down[i].count(), i));

        let grading = grade(&covers_up, &covers_down, &linear, &up, &down);
        Ok(Self {
            elements,
            index,
            up,
            down,
            covers_up,
            covers_down,
            linear,
            grading,
            mobius_rows: (0..m).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn index_of(&self, x: &T) -> Result<usize, PosetError> {
        self.index.get(x).copied().ok_or_else(|| PosetError::UnknownElement(x.to_string()))
    }

    fn name(&self, i: usize) -> String {
        self.elements[i].to_string()
    }
}

impl<T> FinitePoset<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn up_set(&self, i: usize) -> &BitSet {
        &self.up[i]
    }

    pub fn down_set(&self, i: usize) -> &BitSet {
        &self.down[i]
    }

    /// Elements covering `i`, ascending by index.
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.covers_up[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.covers_down[i]
    }

    /// Hasse edges `(x, y)` with `y` covering `x`, sorted.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        self.covers_up.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&j| (i, j))).collect()
    }

    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        self.covers_up[i].binary_search(&j).is_ok()
    }

    /// A linear extension of the order.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.covers_down[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.covers_up[i].is_empty()).collect()
    }

    /// The unique minimum, if there is one.
    pub fn bottom(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn is_graded(&self) -> bool {
        matches!(self.grading, Grading::Graded { .. })
    }

    /// Rank function; `None` when the poset is not graded.
    pub fn ranks(&self) -> Option<&[usize]> {
        match &self.grading {
            Grading::Graded { rank } => Some(rank),
            Grading::NotGraded { .. } => None,
        }
    }

    pub fn rank(&self, i: usize) -> Option<usize> {
        self.ranks().map(|r| r[i])
    }
}

impl<T: Clone + Eq + Hash + Display> FinitePoset<T> {
    pub fn interval(&self, bottom: usize, top: usize) -> Result<Interval, PosetError> {
        if !self.leq(bottom, top) {
            return Err(PosetError::Incomparable { x: self.name(bottom), y: self.name(top) });
        }
        let mut members = self.up[bottom].clone();
        members.intersect_with(&self.down[top]);
        Ok(Interval { bottom, top, members })
    }

    /// All saturated chains from bottom to top, each listed bottom first.
    /// Depth-first in ascending index order.
    pub fn maximal_chains(&self, iv: &Interval) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![iv.bottom];
        self.chains_rec(iv, &mut path, &mut out);
        out
    }

    fn chains_rec(&self, iv: &Interval, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().expect("path is never empty");
        if last == iv.top {
            out.push(path.clone());
            return;
        }
        for &c in &self.covers_up[last] {
            if iv.members.contains(c) {
                path.push(c);
                self.chains_rec(iv, path, out);
                path.pop();
            }
        }
    }

    /// Number of saturated chains from `bottom` to `top`.
    pub fn count_maximal_chains(&self, iv: &Interval) -> u128 {
        let mut count = vec![0u128; self.len()];
        count[iv.bottom] = 1;
        for &z in &self.linear {
            if !iv.members.contains(z) || count[z] == 0 {
                continue;
            }
            for &c in &self.covers_up[z] {
                if iv.members.contains(c) {
                    count[c] += count[z];
                }
            }
        }
        count[iv.top]
    }

    fn mobius_row(&self, x: usize) -> &[i64] {
        self.mobius_rows[x].get_or_init(|| {
            let mut mu = vec![0i64; self.len()];
            for &z in &self.linear {
                if !self.up[x].contains(z) {
                    continue;
                }
                if z == x {
                    mu[z] = 1;
                    continue;
                }
                let mut sum = 0;
                for w in self.down[z].iter() {
                    if w != z && self.up[x].contains(w) {
                        sum += mu[w];
                    }
                }
                mu[z] = -sum;
            }
            mu
        })
    }

    /// `μ(x, y)`, memoized per `x`.
    pub fn mobius(&self, x: usize, y: usize) -> Result<i64, PosetError> {
        if !self.leq(x, y) {
            return Err(PosetError::Incomparable { x: self.name(x), y: self.name(y) });
        }
        Ok(self.mobius_row(x)[y])
    }

    /// Runs both the parity-count test and the Möbius test over all `x < y`.
    pub fn is_eulerian(&self) -> Result<EulerianReport, PosetError> {
        let rank = self.ranks().ok_or(PosetError::Ungraded)?;
        let mut even = BitSet::new(self.len());
        for (i, &r) in rank.iter().enumerate() {
            if r % 2 == 0 {
                even.insert(i);
            }
        }
        let mut report = EulerianReport { parity: true, mobius: true, parity_witness: None, mobius_witness: None };
        for x in 0..self.len() {
            for y in self.up[x].iter() {
                if report.parity && x != y {
                    let size = self.up[x].intersection_count(&self.down[y]);
                    let evens = self.up[x].intersection_count3(&self.down[y], &even);
                    if 2 * evens != size {
                        report.parity = false;
                        report.parity_witness = Some((x, y));
                    }
                }
                if report.mobius {
                    let expected = if (rank[y] - rank[x]) % 2 == 0 { 1 } else { -1 };
                    if self.mobius_row(x)[y] != expected {
                        report.mobius = false;
                        report.mobius_witness = Some((x, y));
                    }
                }
            }
        }
        Ok(report)
    }

    /// Maximal chains of the open interval `(bottom, top)`, in chain
    /// enumeration order. Requires length at least 2.
    pub fn order_complex_facets(&self, iv: &Interval) -> Result<Vec<Vec<usize>>, PosetError> {
        self.order_complex_facets_by(iv, |_: &[usize]| ())
    }

    /// As [`order_complex_facets`](Self::order_complex_facets), stably sorted by
    /// `key` of the closed chain (for instance its label word).
    pub fn order_complex_facets_by<K: Ord>(
        &self,
        iv: &Interval,
        key: impl Fn(&[usize]) -> K,
    ) -> Result<Vec<Vec<usize>>, PosetError> {
        let mut chains = self.maximal_chains(iv);
        let length = chains.iter().map(|c| c.len() - 1).max().unwrap_or(0);
        if length < 2 {
            return Err(PosetError::DegenerateInterval { length, needed: 2 });
        }
        chains.sort_by_cached_key(|c| key(c));
        Ok(chains.into_iter().map(|c| c[1..c.len() - 1].to_vec()).collect())
    }

    /// DOT rendering with one `rank=same` subgraph per rank.
    pub fn to_dot(&self, style: &DotStyle<'_>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", style.name);
        let _ = writeln!(s, "  rankdir=BT;");
        let _ = writeln!(s, "  node [shape=plaintext];");
        let lit = |b: usize| style.highlight.is_some_and(|h| h.contains(b));
        for (i, e) in self.elements.iter().enumerate() {
            let color = if lit(i) { ", fontcolor=blue" } else { "" };
            let _ = writeln!(s, "  n{i} [label=\"{e}\"{color}];");
        }
        if let Some(rank) = self.ranks() {
            let top = rank.iter().copied().max().unwrap_or(0);
            for r in 0..=top {
                let level: Vec<String> =
                    (0..self.len()).filter(|&i| rank[i] == r).map(|i| format!("n{i}")).collect();
                if !level.is_empty() {
                    let _ = writeln!(s, "  {{ rank=same; {}; }}", level.join("; "));
                }
            }
        }
        for (a, b) in self.hasse_edges() {
            let mut attrs = Vec::new();
            if let Some(lab) = style.edge_label.and_then(|f| f(a, b)) {
                attrs.push(format!("label=\"{lab}\""));
            }
            if lit(a) && lit(b) {
                attrs.push("color=blue".to_string());
            }
            if attrs.is_empty() {
                let _ = writeln!(s, "  n{a} -> n{b};");
            } else {
                let _ = writeln!(s, "  n{a} -> n{b} [{}];", attrs.join(", "));
            }
        }
        s.push_str("}\n");
        s
    }
}

impl<T: Serialize> FinitePoset<T> {
    /// `{"schema": "poset-shell/1", "elements", "edges", "ranks", "labels"?}`.
    pub fn to_json(&self, labels: Option<&dyn Fn(usize, usize) -> String>) -> serde_json::Value {
        let edges: Vec<[usize; 2]> = self.hasse_edges().into_iter().map(|(a, b)| [a, b]).collect();
        let labels = labels.map(|f| edges.iter().map(|&[a, b]| f(a, b)).collect());
        serde_json::to_value(HasseJson {
            schema: "poset-shell/1",
            elements: &self.elements,
            edges,
            ranks: self.ranks(),
            labels,
        })
        .expect("Hasse diagram serializes")
    }
}

impl<T: Display> fmt::Debug for FinitePoset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset")
            .field("len", &self.elements.len())
            .field("hasse_edges", &self.covers_up.iter().map(Vec::len).sum::<usize>())
            .field("graded", &matches!(self.grading, Grading::Graded { .. }))
            .finish()
    }
}

/// Shortest and longest saturated chains from `x` to every element above it,
/// with predecessor links for reconstruction.
struct ChainExtremes {
    shortest: Vec<usize>,
    longest: Vec<usize>,
    short_pred: Vec<usize>,
    long_pred: Vec<usize>,
}

fn chain_extremes(x: usize, covers_up: &[Vec<usize>], linear: &[usize], up: &[BitSet]) -> ChainExtremes {
    let m = covers_up.len();
    let mut ex = ChainExtremes {
        shortest: vec![usize::MAX; m],
        longest: vec![0; m],
        short_pred: vec![usize::MAX; m],
        long_pred: vec![usize::MAX; m],
    };
    ex.shortest[x] = 0;
    for &z in linear {
        if !up[x].contains(z) || ex.shortest[z] == usize::MAX {
            continue;
        }
        for &c in &covers_up[z] {
            if ex.shortest[z] + 1 < ex.shortest[c] {
                ex.shortest[c] = ex.shortest[z] + 1;
                ex.short_pred[c] = z;
            }
            if ex.longest[z] + 1 > ex.longest[c] {
                ex.longest[c] = ex.longest[z] + 1;
                ex.long_pred[c] = z;
            }
        }
    }
    ex
}

fn walk_back(pred: &[usize], from: usize, to: usize) -> Vec<usize> {
    let mut chain = vec![to];
    let mut cur = to;
    while cur != from {
        cur = pred[cur];
        chain.push(cur);
    }
    chain.reverse();
    chain
}

/// Jordan-Dedekind check: graded iff between any comparable pair all
/// saturated chains have the same length, and the resulting rank (longest
/// chain from a minimal element) rises by one along every cover.
fn grade(
    covers_up: &[Vec<usize>],
    covers_down: &[Vec<usize>],
    linear: &[usize],
    up: &[BitSet],
    down: &[BitSet],
) -> Grading {
    let m = covers_up.len();
    for x in 0..m {
        let ex = chain_extremes(x, covers_up, linear, up);
        for y in up[x].iter() {
            if ex.shortest[y] != ex.longest[y] {
                return Grading::NotGraded {
                    short: walk_back(&ex.short_pred, x, y),
                    long: walk_back(&ex.long_pred, x, y),
                };
            }
        }
    }
    let mut rank = vec![0usize; m];
    for &z in linear {
        rank[z] = covers_down[z].iter().map(|&w| rank[w] + 1).max().unwrap_or(0);
    }
    for z in 0..m {
        for &w in &covers_down[z] {
            if rank[w] + 1 != rank[z] {
                // Two minimal elements below z at different depths.
                let mins: Vec<usize> = down[z].iter().filter(|&b| covers_down[b].is_empty()).collect();
                let a = *mins.iter().max_by_key(|&&b| chain_extremes(b, covers_up, linear, up).longest[z]).unwrap();
                let b = *mins.iter().min_by_key(|&&b| chain_extremes(b, covers_up, linear, up).longest[z]).unwrap();
                let ea = chain_extremes(a, covers_up, linear, up);
                let eb = chain_extremes(b, covers_up, linear, up);
                return Grading::NotGraded {
                    short: walk_back(&eb.long_pred, b, z),
                    long: walk_back(&ea.long_pred, a, z),
                };
            }
        }
    }
    Grading::Graded { rank }
}

/// Checks that each facet meets the union of the earlier ones in a pure
/// subcomplex of codimension one. Facets are vertex lists; order inside a
/// facet is irrelevant.
pub fn verify_shelling(facets: &[Vec<usize>]) -> Result<ShellingReport, PosetError> {
    let Some(first) = facets.first() else {
        return Ok(ShellingReport { is_shelling: true, first_failure: None });
    };
    let size = first.len();
    let sets: Vec<Vec<usize>> = facets
        .iter()
        .enumerate()
        .map(|(index, f)| {
            let mut v = f.clone();
            v.sort_unstable();
            v.dedup();
            if v.len() != size {
                Err(PosetError::NonPure { index: index + 1, size: v.len(), expected: size })
            } else {
                Ok(v)
            }
        })
        .collect::<Result<_, _>>()?;
    for j in 1..sets.len() {
        let meets: Vec<Vec<usize>> = sets[..j]
            .iter()
            .map(|g| sets[j].iter().copied().filter(|v| g.binary_search(v).is_ok()).collect())
            .collect();
        // The intersection complex is generated by these faces; it is pure of
        // codimension one iff every inclusion-maximal face has size - 1 vertices.
        let pure = meets.iter().enumerate().all(|(a, face)| {
            let maximal = !meets
                .iter()
                .enumerate()
                .any(|(b, other)| b != a && other.len() > face.len() && face.iter().all(|v| other.contains(v)));
            !maximal || face.len() + 1 == size
        });
        if !pure {
            return Ok(ShellingReport { is_shelling: false, first_failure: Some(j + 1) });
        }
    }
    Ok(ShellingReport { is_shelling: true, first_failure: None })
}
