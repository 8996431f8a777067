//! Edge labels on `P_n`, Jordan-Hölder words, and the EL check.
//!
//! A cover gets the label of the move producing it: the rise `(i,j)` for a
//! c-move (original matrix indices), `(i,i)` for a d-move, and
//! `(source column, target column)` for an r-move. Labels are compared
//! lexicographically.

use std::fmt;

use rayon::prelude::*;
use serde::ser::{Serialize, SerializeTuple, Serializer};

use crate::covers::{classify_cover, is_cover_oracle, CoverMove};
use crate::error::{Error, Result};
use crate::poset::{FinitePoset, PosetError};
use crate::rook::PartialInvolution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub i: usize,
    pub j: usize,
}

impl Label {
    pub fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.i)?;
        t.serialize_element(&self.j)?;
        t.end()
    }
}

/// Labels along a saturated chain, bottom first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct JordanHolderWord(pub Vec<Label>);

impl JordanHolderWord {
    pub fn is_weakly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }
}

impl fmt::Display for JordanHolderWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

pub fn move_label(m: &CoverMove) -> Label {
    match *m {
        CoverMove::C { i, j, .. } => Label::new(i, j),
        CoverMove::D { i, .. } => Label::new(i, i),
        CoverMove::R { source_col, target_col, .. } => Label::new(source_col, target_col),
    }
}

/// Label of the cover `x ⋖ y`.
pub fn label(x: &PartialInvolution, y: &PartialInvolution) -> Result<Label> {
    classify_cover(x, y).map(|m| move_label(&m))
}

/// Label word of a saturated chain given bottom first.
pub fn jordan_holder(chain: &[PartialInvolution]) -> Result<JordanHolderWord> {
    chain
        .windows(2)
        .enumerate()
        .map(|(step, w)| {
            if is_cover_oracle(&w[0], &w[1]) {
                label(&w[0], &w[1])
            } else {
                Err(Error::UnsaturatedChain { step: step + 1 })
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(JordanHolderWord)
}

/// Labels on every Hasse edge, stored in the order of
/// [`FinitePoset::upper_covers`].
#[derive(Clone, Debug)]
pub struct EdgeLabels<L> {
    by_lower: Vec<Vec<L>>,
    covers: Vec<Vec<usize>>,
}

impl<L> EdgeLabels<L> {
    pub fn new<T>(poset: &FinitePoset<T>, mut f: impl FnMut(usize, usize) -> Result<L>) -> Result<Self> {
        let covers: Vec<Vec<usize>> = (0..poset.len()).map(|x| poset.upper_covers(x).to_vec()).collect();
        let by_lower = covers
            .iter()
            .enumerate()
            .map(|(x, cs)| cs.iter().map(|&y| f(x, y)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { by_lower, covers })
    }

    pub fn get(&self, x: usize, y: usize) -> Option<&L> {
        let k = self.covers.get(x)?.binary_search(&y).ok()?;
        Some(&self.by_lower[x][k])
    }

    /// `(upper cover, label)` pairs out of `x`.
    pub fn out_edges(&self, x: usize) -> impl Iterator<Item = (usize, &L)> {
        self.covers[x].iter().copied().zip(&self.by_lower[x])
    }

    /// Label word of a chain of element indices.
    pub fn word(&self, chain: &[usize]) -> Option<Vec<L>>
    where
        L: Clone,
    {
        chain.windows(2).map(|w| self.get(w[0], w[1]).cloned()).collect()
    }
}

/// Labels every Hasse edge of a built `P_n` by its move.
pub fn pn_edge_labels(poset: &FinitePoset<PartialInvolution>) -> Result<EdgeLabels<Label>> {
    EdgeLabels::new(poset, |x, y| label(poset.element(x), poset.element(y)))
}

/// One interval `[bottom, top]`, `bottom < top`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IntervalVerdict {
    pub bottom: String,
    pub top: String,
    /// Weakly increasing maximal chains, capped at 2 (2 means two or more).
    pub increasing_count: usize,
    /// The increasing chain exists, is unique, and its word is the lex-least.
    pub lex_first_increasing: bool,
}

impl IntervalVerdict {
    pub fn passes(&self) -> bool {
        self.increasing_count == 1 && self.lex_first_increasing
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ElReport {
    pub intervals_checked: usize,
    /// Every nontrivial interval, ordered by bottom then top element index.
    pub verdicts: Vec<IntervalVerdict>,
}

impl ElReport {
    pub fn violations(&self) -> impl Iterator<Item = &IntervalVerdict> {
        self.verdicts.iter().filter(|v| !v.passes())
    }

    pub fn violation_count(&self) -> usize {
        self.violations().count()
    }

    pub fn passed(&self) -> bool {
        self.violation_count() == 0
    }
}

/// Increasing chains from the current bottom ending with a given label.
struct Ending<L> {
    last: Option<L>,
    count: usize,
    word: Vec<L>,
}

fn check_from<T: fmt::Display, L: Ord + Clone>(
    poset: &FinitePoset<T>,
    labels: &EdgeLabels<L>,
    x: usize,
) -> Vec<IntervalVerdict> {
    let m = poset.len();
    let up = poset.up_set(x);
    let mut endings: Vec<Vec<Ending<L>>> = (0..m).map(|_| Vec::new()).collect();
    let mut lexmin: Vec<Option<Vec<L>>> = vec![None; m];
    endings[x].push(Ending { last: None, count: 1, word: Vec::new() });
    lexmin[x] = Some(Vec::new());
    for &z in poset.linear_extension() {
        if !up.contains(z) {
            continue;
        }
        let here = std::mem::take(&mut endings[z]);
        let best = lexmin[z].clone().expect("reachable from x");
        for (c, l) in labels.out_edges(z) {
            let mut cand = best.clone();
            cand.push(l.clone());
            if lexmin[c].as_ref().is_none_or(|cur| cand < *cur) {
                lexmin[c] = Some(cand);
            }
            for e in &here {
                if e.last.as_ref().is_some_and(|last| last > l) {
                    continue;
                }
                let key = Some(l.clone());
                match endings[c].iter_mut().find(|t| t.last == key) {
                    Some(t) => t.count = (t.count + e.count).min(2),
                    None => {
                        let mut word = e.word.clone();
                        word.push(l.clone());
                        endings[c].push(Ending { last: key, count: e.count.min(2), word });
                    }
                }
            }
        }
        endings[z] = here;
    }
    up.iter()
        .filter(|&y| y != x)
        .map(|y| {
            let count = endings[y].iter().map(|e| e.count).sum::<usize>().min(2);
            let lex_first = count == 1 && Some(&endings[y].iter().find(|e| e.count > 0).unwrap().word) == lexmin[y].as_ref();
            IntervalVerdict {
                bottom: poset.element(x).to_string(),
                top: poset.element(y).to_string(),
                increasing_count: count,
                lex_first_increasing: lex_first,
            }
        })
        .collect()
}

/// Checks the EL conditions on every interval `[x,y]`, `x < y`: exactly one
/// weakly increasing maximal chain, whose word is lexicographically least.
///
/// `jobs` sizes a dedicated worker pool; `None` uses the global pool. The
/// result does not depend on the number of workers.
pub fn verify_el<T, L>(poset: &FinitePoset<T>, labels: &EdgeLabels<L>, jobs: Option<usize>) -> Result<ElReport>
where
    T: fmt::Display + Sync,
    L: Ord + Clone + Send + Sync,
{
    if !poset.is_graded() {
        return Err(PosetError::Ungraded.into());
    }
    let run = || -> Vec<IntervalVerdict> {
        (0..poset.len()).into_par_iter().map(|x| check_from(poset, labels, x)).flatten_iter().collect()
    };
    let verdicts = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    Ok(ElReport { intervals_checked: verdicts.len(), verdicts })
}

/// `(-1)^ℓ` times the number of maximal chains of `[x,y]` whose label word is
/// strictly decreasing, `ℓ` the length of the interval.
pub fn decreasing_chain_mobius<T, L>(poset: &FinitePoset<T>, labels: &EdgeLabels<L>, x: usize, y: usize) -> Result<i64>
where
    T: Clone + Eq + std::hash::Hash + fmt::Display,
    L: Ord + Clone,
{
    let rank = poset.ranks().ok_or(PosetError::Ungraded)?;
    let iv = poset.interval(x, y)?;
    // (last label, number of strictly decreasing chains ending with it)
    let mut endings: Vec<Vec<(Option<L>, i64)>> = vec![Vec::new(); poset.len()];
    endings[x].push((None, 1));
    for &z in poset.linear_extension() {
        if !iv.contains(z) || z == y {
            continue;
        }
        let here = endings[z].clone();
        for (c, l) in labels.out_edges(z) {
            if !iv.contains(c) {
                continue;
            }
            for (last, n) in &here {
                if last.as_ref().is_some_and(|last| l >= last) {
                    continue;
                }
                let key = Some(l.clone());
                match endings[c].iter_mut().find(|(k, _)| *k == key) {
                    Some((_, t)) => *t += n,
                    None => endings[c].push((key, *n)),
                }
            }
        }
    }
    let count: i64 = endings[y].iter().map(|(_, n)| n).sum();
    let sign = if (rank[y] - rank[x]) % 2 == 0 { 1 } else { -1 };
    Ok(sign * count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cached_partial_involution_poset;

    fn p(s: &str) -> PartialInvolution {
        s.parse().unwrap()
    }

    fn chain(words: &[&str]) -> Vec<PartialInvolution> {
        words.iter().map(|w| p(w)).collect()
    }

    #[test]
    fn worked_labels() {
        assert_eq!(label(&p("(4,3,2,1,0)"), &p("(4,5,0,1,2)")).unwrap(), Label::new(3, 5));
        assert_eq!(label(&p("(6,5,0,0,2,1)"), &p("(0,5,6,0,2,3)")).unwrap(), Label::new(1, 3));
        assert_eq!(label(&p("(4,3,2,1,0)"), &p("(4,0,3,1,5)")).unwrap(), Label::new(2, 3));
        assert!(label(&p("(1,2,3)"), &p("(0,0,0)")).is_err());
    }

    #[test]
    fn jordan_holder_examples() {
        let w = jordan_holder(&chain(&["(1,2,3)", "(1,2,0)", "(1,0,3)"])).unwrap();
        assert_eq!(w.0, [Label::new(3, 3), Label::new(2, 2)]);
        let w = jordan_holder(&chain(&["(1,2,3)", "(2,1,3)"])).unwrap();
        assert_eq!(w.0, [Label::new(1, 2)]);
        let w = jordan_holder(&chain(&["(1,2,3)", "(2,1,3)", "(3,2,1)", "(3,0,1)"])).unwrap();
        assert_eq!(w.to_string(), "((1,2),(1,3),(2,2))");
        let err = jordan_holder(&chain(&["(1,2,3)", "(1,2,0)", "(1,0,0)"])).unwrap_err();
        assert_eq!(err, Error::UnsaturatedChain { step: 2 });
    }

    #[test]
    fn word_predicates() {
        let w = JordanHolderWord(vec![Label::new(1, 2), Label::new(1, 2), Label::new(2, 1)]);
        assert!(w.is_weakly_increasing());
        assert!(!w.is_strictly_decreasing());
        assert!(JordanHolderWord(vec![Label::new(2, 2), Label::new(1, 3)]).is_strictly_decreasing());
        assert_eq!(serde_json::to_string(&w).unwrap(), "[[1,2],[1,2],[2,1]]");
    }

    /// Boolean lattice on two atoms with chosen labels on the four edges.
    fn diamond(labels: [u8; 4]) -> (FinitePoset<u32>, EdgeLabels<u8>) {
        let poset = FinitePoset::build((0..4).collect(), |a, b| a & !b == 0).unwrap();
        let edges = [(0, 1), (0, 2), (1, 3), (2, 3)];
        let lab = EdgeLabels::new(&poset, |x, y| {
            Ok(labels[edges.iter().position(|&e| e == (x, y)).unwrap()])
        })
        .unwrap();
        (poset, lab)
    }

    #[test]
    fn diamond_with_two_increasing_chains_is_reported() {
        let (poset, lab) = diamond([1, 1, 2, 2]);
        let rep = verify_el(&poset, &lab, Some(1)).unwrap();
        let bad: Vec<_> = rep.violations().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].bottom.as_str(), bad[0].top.as_str(), bad[0].increasing_count), ("0", "3", 2));
        let (poset, lab) = diamond([1, 2, 3, 1]);
        assert!(verify_el(&poset, &lab, None).unwrap().passed());
        // one increasing chain that is not the lex-least one
        let (poset, lab) = diamond([2, 1, 3, 0]);
        let rep = verify_el(&poset, &lab, None).unwrap();
        let v = rep.violations().next().unwrap();
        assert_eq!((v.increasing_count, v.lex_first_increasing), (1, false));
    }

    #[test]
    fn decreasing_chains_give_mobius_on_p3() {
        let p3 = cached_partial_involution_poset(3).unwrap();
        let lab = pn_edge_labels(p3).unwrap();
        for x in 0..p3.len() {
            for y in p3.up_set(x).iter() {
                assert_eq!(decreasing_chain_mobius(p3, &lab, x, y).unwrap(), p3.mobius(x, y).unwrap());
            }
        }
        let a = p3.index_of(&p("(1,2,3)")).unwrap();
        let b = p3.index_of(&p("(1,2,0)")).unwrap();
        assert_eq!(decreasing_chain_mobius(p3, &lab, a, b).unwrap(), -1);
    }

    #[test]
    fn p3_is_el_and_jobs_do_not_matter() {
        let p3 = cached_partial_involution_poset(3).unwrap();
        let lab = pn_edge_labels(p3).unwrap();
        let one = verify_el(p3, &lab, Some(1)).unwrap();
        assert!(one.passed());
        assert_eq!(one, verify_el(p3, &lab, Some(4)).unwrap());
    }
}
