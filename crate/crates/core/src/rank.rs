//! Rank-control matrices, the D statistic, and the order comparators.
//!
//! Two directions are in play and every comparator says which one it uses:
//!
//! * [`leq_rooks`] is the Bruhat-Chevalley-Renner order on `R_n` via truncation
//!   and containment. The zero rook is the minimum.
//! * [`leq_partial_involutions`] is the opposite of rank-control domination on
//!   `P_n`. The identity is the minimum and the zero rook the maximum.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::rook::{permutations, PartialInvolution, Rook};

/// `r_{kl}` = number of 1s of the rook in rows `≤ k` and columns `≤ l`.
///
/// Stored with the zero border row and column, so `get(0, l)` and `get(k, 0)`
/// are valid and return 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RankControlMatrix {
    n: usize,
    entries: Vec<u16>,
}

impl RankControlMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `r_{kl}` for `0 ≤ k, l ≤ n`.
    pub fn get(&self, k: usize, l: usize) -> usize {
        self.entries[k * (self.n + 1) + l] as usize
    }

    /// The `n × n` block without the border, row-major.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (1..=self.n).map(|k| (1..=self.n).map(|l| self.get(k, l)).collect()).collect()
    }
}

impl Serialize for RankControlMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.n))?;
        for row in self.rows() {
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl fmt::Display for RankControlMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        let width = rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
        for (idx, row) in rows.iter().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            f.write_str("(")?;
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v:>width$}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

pub fn rank_control(x: &Rook) -> RankControlMatrix {
    let n = x.n();
    let w = n + 1;
    let mut entries = vec![0u16; w * w];
    for l in 1..=n {
        let a = x.entry(l);
        for k in 1..=n {
            let here = u16::from(a != 0 && a <= k);
            entries[k * w + l] = entries[k * w + l - 1] + here;
        }
    }
    RankControlMatrix { n, entries }
}

/// `A ≤_R B`: entrywise comparison.
pub fn leq_entrywise(a: &RankControlMatrix, b: &RankControlMatrix) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::SizeMismatch { left: a.n, right: b.n });
    }
    Ok(a.entries.iter().zip(&b.entries).all(|(x, y)| x <= y))
}

/// `#{(i,j) : 1 ≤ i ≤ j ≤ n, r_{ij} = r_{i-1,j-1}}`.
pub fn d_invariant(x: &Rook) -> usize {
    let r = rank_control(x);
    let n = x.n();
    (1..=n)
        .flat_map(|i| (i..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| r.get(i, j) == r.get(i - 1, j - 1))
        .count()
}

/// Non-increasing rearrangement.
pub fn sort_desc<T: Ord + Copy>(a: &[T]) -> Vec<T> {
    let mut v = a.to_vec();
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

/// `a ≤_c b`: componentwise after sorting both non-increasingly.
pub fn leq_containment<T: Ord + Copy>(a: &[T], b: &[T]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch { left: a.len(), right: b.len() });
    }
    Ok(sort_desc(a).iter().zip(&sort_desc(b)).all(|(x, y)| x <= y))
}

fn truncations_leq(x: &Rook, y: &Rook, upto: usize) -> bool {
    (1..=upto).all(|k| {
        let a = sort_desc(&x.word()[..k]);
        let b = sort_desc(&y.word()[..k]);
        a.iter().zip(&b).all(|(p, q)| p <= q)
    })
}

/// BCR order on `R_n`: every truncation of `x` is `≤_c` the same truncation of
/// `y`. Zero rook at the bottom.
///
/// # Panics
/// If the sizes differ.
pub fn leq_rooks(x: &Rook, y: &Rook) -> bool {
    assert_eq!(x.n(), y.n(), "leq_rooks on rooks of different sizes");
    truncations_leq(x, y, x.n())
}

/// Bruhat order on `S_n` through truncations `k = 1..n-1` only.
pub fn leq_perms(x: &Rook, y: &Rook) -> Result<bool> {
    for p in [x, y] {
        if !p.is_permutation() {
            return Err(Error::NotPermutation(p.to_string()));
        }
    }
    if x.n() != y.n() {
        return Err(Error::SizeMismatch { left: x.n(), right: y.n() });
    }
    Ok(truncations_leq(x, y, x.n().saturating_sub(1)))
}

/// Order on `P_n`: `x ≤ y` iff `R(y) ≤_R R(x)`. Identity at the bottom, zero
/// rook at the top.
///
/// # Panics
/// If the sizes differ.
pub fn leq_partial_involutions(x: &PartialInvolution, y: &PartialInvolution) -> bool {
    leq_entrywise(&rank_control(y.as_rook()), &rank_control(x.as_rook())).expect("partial involutions of different sizes")
}

/// Number of inversions.
pub fn inversions(x: &Rook) -> usize {
    let w = x.word();
    (0..w.len()).flat_map(|i| (i + 1..w.len()).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count()
}

/// Bruhat order on `S_n` as the reflexive-transitive closure of
/// `σ → σ·(i j)` whenever the swap raises the inversion count by exactly one.
/// Independent of the truncation criterion.
pub struct BruhatOracle {
    n: usize,
    index: HashMap<Rook, usize>,
    up: Vec<BitSet>,
}

impl BruhatOracle {
    pub const MAX_N: usize = 6;

    pub fn new(n: usize) -> Result<Self> {
        if n > Self::MAX_N {
            return Err(Error::TooLarge { n, limit: Self::MAX_N });
        }
        let perms = permutations(n);
        let index: HashMap<Rook, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let len: Vec<usize> = perms.iter().map(inversions).collect();
        let mut order: Vec<usize> = (0..perms.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(len[i]));
        let mut up = vec![BitSet::new(perms.len()); perms.len()];
        for &p in &order {
            up[p].insert(p);
            let w = perms[p].word();
            for i in 0..n {
                for j in i + 1..n {
                    let mut v = w.to_vec();
                    v.swap(i, j);
                    let q = index[&Rook::from_word_unchecked(v)];
                    if len[q] == len[p] + 1 {
                        let above = up[q].clone();
                        up[p].union_with(&above);
                    }
                }
            }
        }
        Ok(Self { n, index, up })
    }

    /// Shared instance for size `n`.
    pub fn get(n: usize) -> Result<&'static Self> {
        static CACHE: [OnceLock<BruhatOracle>; BruhatOracle::MAX_N + 1] =
            [const { OnceLock::new() }; BruhatOracle::MAX_N + 1];
        if n > Self::MAX_N {
            return Err(Error::TooLarge { n, limit: Self::MAX_N });
        }
        if let Some(o) = CACHE[n].get() {
            return Ok(o);
        }
        let built = Self::new(n)?;
        Ok(CACHE[n].get_or_init(|| built))
    }

    pub fn leq(&self, x: &Rook, y: &Rook) -> Result<bool> {
        let idx = |p: &Rook| {
            if p.n() != self.n {
                return Err(Error::SizeMismatch { left: p.n(), right: self.n });
            }
            self.index.get(p).copied().ok_or_else(|| Error::NotPermutation(p.to_string()))
        };
        Ok(self.up[idx(x)?].contains(idx(y)?))
    }
}

/// Bruhat comparison of permutations by the transposition-closure oracle.
pub fn bruhat_perm_oracle(x: &Rook, y: &Rook) -> Result<bool> {
    BruhatOracle::get(x.n())?.leq(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rook::{all_partial_involutions, all_rooks};

    fn r(s: &str) -> Rook {
        s.parse().unwrap()
    }

    fn p(s: &str) -> PartialInvolution {
        s.parse().unwrap()
    }

    #[test]
    fn rank_control_examples() {
        assert_eq!(rank_control(&r("(1,0,3)")).rows(), [[1, 1, 1], [1, 1, 1], [1, 1, 2]]);
        assert!(rank_control(&Rook::zero(4)).rows().iter().flatten().all(|&v| v == 0));
        let y = rank_control(&r("(5,2,3,8,1,6,0,4)"));
        let expected = [
            [0, 0, 0, 0, 1, 1, 1, 1],
            [0, 1, 1, 1, 2, 2, 2, 2],
            [0, 1, 2, 2, 3, 3, 3, 3],
            [0, 1, 2, 2, 3, 3, 3, 4],
            [1, 2, 3, 3, 4, 4, 4, 5],
            [1, 2, 3, 3, 4, 5, 5, 6],
            [1, 2, 3, 3, 4, 5, 5, 6],
            [1, 2, 3, 4, 5, 6, 6, 7],
        ];
        assert_eq!(y.rows(), expected);
        assert_eq!(y.get(0, 3), 0);
        assert_eq!(y.get(3, 0), 0);
    }

    #[test]
    fn display_and_json() {
        let m = rank_control(&r("(1,0,3)"));
        assert_eq!(m.to_string(), "(1 1 1)\n(1 1 1)\n(1 1 2)");
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[1,1,1],[1,1,1],[1,1,2]]");
    }

    #[test]
    fn entrywise_examples() {
        let a = rank_control(&r("(3,0,1)"));
        let b = rank_control(&r("(1,0,3)"));
        assert!(leq_entrywise(&a, &b).unwrap());
        assert!(leq_entrywise(&a, &a).unwrap());
        assert!(!leq_entrywise(&rank_control(&Rook::identity(3)), &rank_control(&Rook::zero(3))).unwrap());
        assert!(matches!(
            leq_entrywise(&a, &rank_control(&Rook::zero(2))),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_invariant(&r("(1,0,3)")), 2);
        for n in 0..=6 {
            assert_eq!(d_invariant(&Rook::identity(n)), 0);
            assert_eq!(d_invariant(&Rook::zero(n)), n * (n + 1) / 2);
        }
    }

    #[test]
    fn containment_examples() {
        assert_eq!(sort_desc(&[4, 0, 2, 3, 1]), [4, 3, 2, 1, 0]);
        assert_eq!(sort_desc(&[3, 2, 1]), [3, 2, 1]);
        assert_eq!(sort_desc(&[0, 1, 2]), [2, 1, 0]);
        assert!(leq_containment(&[4, 0, 2, 3, 1], &[4, 3, 0, 5, 1]).unwrap());
        assert!(leq_containment(&[2, 1], &[2, 1]).unwrap());
        assert!(!leq_containment(&[1, 0], &[0, 0]).unwrap());
        assert!(leq_containment(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn rook_order_examples() {
        assert!(leq_rooks(&r("(0,1,2,3,4)"), &r("(4,3,2,5,1)")));
        assert!(leq_rooks(&r("(2,0,1)"), &r("(2,0,1)")));
        assert!(!leq_rooks(&r("(3,2,1)"), &Rook::zero(3)));
        assert!(leq_rooks(&Rook::zero(3), &r("(3,2,1)")));
    }

    #[test]
    fn perm_order_examples() {
        assert!(leq_perms(&r("(2,1,3)"), &r("(3,2,1)")).unwrap());
        assert!(!leq_perms(&r("(3,1,2)"), &r("(2,3,1)")).unwrap());
        for s in permutations(4) {
            assert!(leq_perms(&Rook::identity(4), &s).unwrap());
        }
        assert!(leq_perms(&r("(1,0,2)"), &r("(1,2,3)")).is_err());
    }

    #[test]
    fn partial_involution_order_examples() {
        assert!(leq_partial_involutions(&p("(1,2,3)"), &p("(0,0,0)")));
        assert!(leq_partial_involutions(&p("(1,0,3)"), &p("(3,0,1)")));
        assert!(!leq_partial_involutions(&p("(1,2,0)"), &p("(1,3,2)")));
        assert!(!leq_partial_involutions(&p("(1,3,2)"), &p("(1,2,0)")));
    }

    #[test]
    fn oracle_examples() {
        assert!(bruhat_perm_oracle(&r("(1,2,3)"), &r("(3,2,1)")).unwrap());
        assert!(!bruhat_perm_oracle(&r("(2,1,3)"), &r("(1,3,2)")).unwrap());
        assert!(!bruhat_perm_oracle(&r("(1,3,2)"), &r("(2,1,3)")).unwrap());
        assert!(matches!(BruhatOracle::new(7), Err(Error::TooLarge { .. })));
        assert!(bruhat_perm_oracle(&r("(1,0,2)"), &r("(1,2,3)")).is_err());
    }

    #[test]
    fn oracle_agrees_with_truncation_on_s4() {
        let s4 = permutations(4);
        let disagreements = s4
            .iter()
            .flat_map(|x| s4.iter().map(move |y| (x, y)))
            .filter(|(x, y)| bruhat_perm_oracle(x, y).unwrap() != leq_perms(x, y).unwrap())
            .count();
        assert_eq!(disagreements, 0);
    }

    #[test]
    fn rank_control_invariants_exhaustive() {
        for n in 0..=5 {
            for x in all_rooks(n) {
                let m = rank_control(&x);
                for k in 1..=n {
                    for l in 1..=n {
                        let v = m.get(k, l);
                        assert!(v <= k.min(l));
                        let dk = v - m.get(k - 1, l);
                        let dl = v - m.get(k, l - 1);
                        assert!(dk <= 1 && dl <= 1, "{x} at ({k},{l})");
                    }
                }
            }
        }
    }

    fn assert_partial_order<T: PartialEq>(els: &[T], leq: impl Fn(&T, &T) -> bool) {
        for a in els {
            assert!(leq(a, a));
            for b in els {
                if a != b && leq(a, b) {
                    assert!(!leq(b, a));
                }
                if leq(a, b) {
                    for c in els {
                        if leq(b, c) {
                            assert!(leq(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn comparators_are_partial_orders_n4() {
        assert_partial_order(&all_rooks(4), leq_rooks);
        assert_partial_order(&all_partial_involutions(4), leq_partial_involutions);
    }
}
