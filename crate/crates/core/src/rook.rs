//! Rooks (partial permutation matrices) and partial involutions in one-line
//! notation.
//!
//! A rook of size `n` is stored as its one-line word `a_1 .. a_n`: `a_j` is the
//! row of the 1 in column `j`, or `0` when column `j` is empty. The matrix is a
//! derived view. All enumerators return their results sorted lexicographically
//! by word so that every report built on top of them is deterministic.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partial permutation in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Rook {
    word: Vec<u8>,
}

impl Rook {
    /// Builds a rook from its one-line word, rejecting out-of-range entries
    /// and repeated rows.
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for (j, &a) in word.iter().enumerate() {
            let a = a as usize;
            if a > n {
                return Err(Error::EntryOutOfRange { col: j + 1, value: a, n });
            }
            if a != 0 {
                if seen[a] {
                    return Err(Error::RepeatedRow { row: a });
                }
                seen[a] = true;
            }
        }
        Ok(Self { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<u8>) -> Self {
        debug_assert!(Self::new(word.clone()).is_ok(), "invalid rook word {word:?}");
        Self { word }
    }

    pub fn zero(n: usize) -> Self {
        Self { word: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        Self { word: (1..=n as u8).collect() }
    }

    /// The permutation `(n, n-1, .., 1)`.
    pub fn reversal(n: usize) -> Self {
        Self { word: (1..=n as u8).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Row of the 1 in column `col` (1-based), `0` if the column is empty.
    pub fn entry(&self, col: usize) -> usize {
        self.word[col - 1] as usize
    }

    /// Number of nonzero entries, i.e. the `k` with `self ∈ R_{n,k}`.
    pub fn rank(&self) -> usize {
        self.word.iter().filter(|&&a| a != 0).count()
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.n()
    }

    /// `a_i = j != 0` implies `a_j = i`: the matrix equals its transpose.
    pub fn is_symmetric(&self) -> bool {
        self.word
            .iter()
            .enumerate()
            .all(|(j, &a)| a == 0 || self.word[a as usize - 1] as usize == j + 1)
    }

    /// Columns (1-based) holding a 1.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&j| self.entry(j) != 0).collect()
    }

    pub fn from_matrix(m: &[Vec<u8>]) -> Result<Self> {
        let n = m.len();
        let mut word = vec![0u8; n];
        let mut row_used = vec![false; n];
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedMatrix(format!(
                    "row {} has length {} in a {n}x{n} matrix",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => {
                        if row_used[i] {
                            return Err(Error::RepeatedRow { row: i + 1 });
                        }
                        if word[j] != 0 {
                            return Err(Error::RepeatedColumn { col: j + 1 });
                        }
                        row_used[i] = true;
                        word[j] = (i + 1) as u8;
                    }
                    other => {
                        return Err(Error::MalformedMatrix(format!(
                            "entry ({},{}) is {other}",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        Ok(Self { word })
    }

    /// Matrix with a 1 at `(i,j)` iff `a_j = i`.
    pub fn to_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        let mut m = vec![vec![0u8; n]; n];
        for (j, &a) in self.word.iter().enumerate() {
            if a != 0 {
                m[a as usize - 1][j] = 1;
            }
        }
        m
    }
}

impl TryFrom<Vec<u8>> for Rook {
    type Error = Error;

    fn try_from(word: Vec<u8>) -> Result<Self> {
        Self::new(word)
    }
}

impl From<Rook> for Vec<u8> {
    fn from(r: Rook) -> Self {
        r.word
    }
}

impl fmt::Display for Rook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, a) in self.word.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Rook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rook{self}")
    }
}

/// Parses `"(3,0,4,0)"`; whitespace around entries and parentheses is ignored.
impl FromStr for Rook {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| parse_err("expected parentheses"))?;
        if body.trim().is_empty() {
            return Ok(Self::zero(0));
        }
        let word = body
            .split(',')
            .map(|tok| tok.trim().parse::<u8>().map_err(|e| parse_err(&e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(word)
    }
}

/// A symmetric rook.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Rook", into = "Rook")]
pub struct PartialInvolution(Rook);

impl PartialInvolution {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        Self::try_from(Rook::new(word)?)
    }

    pub(crate) fn from_word_unchecked(word: Vec<u8>) -> Self {
        let r = Rook::from_word_unchecked(word);
        debug_assert!(r.is_symmetric(), "{r} is not symmetric");
        Self(r)
    }

    pub fn zero(n: usize) -> Self {
        Self(Rook::zero(n))
    }

    pub fn identity(n: usize) -> Self {
        Self(Rook::identity(n))
    }

    pub fn as_rook(&self) -> &Rook {
        &self.0
    }

    pub fn into_rook(self) -> Rook {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn word(&self) -> &[u8] {
        self.0.word()
    }

    pub fn entry(&self, col: usize) -> usize {
        self.0.entry(col)
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn is_permutation(&self) -> bool {
        self.0.is_permutation()
    }
}

impl TryFrom<Rook> for PartialInvolution {
    type Error = Error;

    fn try_from(r: Rook) -> Result<Self> {
        if r.is_symmetric() {
            Ok(Self(r))
        } else {
            Err(Error::NotSymmetric(r.to_string()))
        }
    }
}

impl From<PartialInvolution> for Rook {
    fn from(p: PartialInvolution) -> Self {
        p.0
    }
}

impl fmt::Display for PartialInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for PartialInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialInvolution{}", self.0)
    }
}

impl FromStr for PartialInvolution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::try_from(s.parse::<Rook>()?)
    }
}

/// Fixed points, exceedances and defects of a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexPartition {
    pub fixed: BTreeSet<usize>,
    pub exceedance: BTreeSet<usize>,
    pub defect: BTreeSet<usize>,
}

pub fn index_partition(sigma: &Rook) -> Result<IndexPartition> {
    if !sigma.is_permutation() {
        return Err(Error::NotPermutation(sigma.to_string()));
    }
    let mut part = IndexPartition {
        fixed: BTreeSet::new(),
        exceedance: BTreeSet::new(),
        defect: BTreeSet::new(),
    };
    for i in 1..=sigma.n() {
        let v = sigma.entry(i);
        match v.cmp(&i) {
            std::cmp::Ordering::Equal => part.fixed.insert(i),
            std::cmp::Ordering::Greater => part.exceedance.insert(i),
            std::cmp::Ordering::Less => part.defect.insert(i),
        };
    }
    Ok(part)
}

/// All rooks of size `n` with exactly `k` nonzero entries, lexicographic by
/// word. Empty when `k > n`.
pub fn enumerate_rooks(n: usize, k: usize) -> Vec<Rook> {
    fn go(n: usize, k: usize, word: &mut Vec<u8>, used: &mut [bool], placed: usize, out: &mut Vec<Rook>) {
        let col = word.len();
        if col == n {
            if placed == k {
                out.push(Rook::from_word_unchecked(word.clone()));
            }
            return;
        }
        let remaining = n - col;
        // empty column, if enough columns remain for the outstanding 1s
        if k - placed < remaining {
            word.push(0);
            go(n, k, word, used, placed, out);
            word.pop();
        }
        if placed < k {
            for row in 1..=n {
                if !used[row] {
                    used[row] = true;
                    word.push(row as u8);
                    go(n, k, word, used, placed + 1, out);
                    word.pop();
                    used[row] = false;
                }
            }
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(n, k, &mut Vec::with_capacity(n), &mut vec![false; n + 1], 0, &mut out);
    }
    out
}

/// All of `R_n`, lexicographic by word.
pub fn all_rooks(n: usize) -> Vec<Rook> {
    let mut all: Vec<Rook> = (0..=n).flat_map(|k| enumerate_rooks(n, k)).collect();
    all.sort();
    all
}

pub fn permutations(n: usize) -> Vec<Rook> {
    enumerate_rooks(n, n)
}

/// Partial involutions with `k` nonzero entries, lexicographic by word.
///
/// Generated directly (each index is empty, fixed, or paired with a later
/// index) rather than by filtering `enumerate_rooks`.
pub fn enumerate_partial_involutions(n: usize, k: usize) -> Vec<PartialInvolution> {
    fn go(word: &mut [u8], pos: usize, k_left: usize, out: &mut Vec<PartialInvolution>) {
        let n = word.len();
        if pos == n {
            if k_left == 0 {
                out.push(PartialInvolution::from_word_unchecked(word.to_vec()));
            }
            return;
        }
        if word[pos] != 0 {
            go(word, pos + 1, k_left, out);
            return;
        }
        go(word, pos + 1, k_left, out);
        if k_left >= 1 {
            word[pos] = (pos + 1) as u8;
            go(word, pos + 1, k_left - 1, out);
            word[pos] = 0;
        }
        if k_left >= 2 {
            for partner in pos + 1..n {
                if word[partner] == 0 {
                    word[pos] = (partner + 1) as u8;
                    word[partner] = (pos + 1) as u8;
                    go(word, pos + 1, k_left - 2, out);
                    word[pos] = 0;
                    word[partner] = 0;
                }
            }
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(&mut vec![0; n], 0, k, &mut out);
    }
    out.sort();
    out
}

/// All of `P_n`, lexicographic by word.
pub fn all_partial_involutions(n: usize) -> Vec<PartialInvolution> {
    let mut all: Vec<_> = (0..=n).flat_map(|k| enumerate_partial_involutions(n, k)).collect();
    all.sort();
    all
}

/// `I_n`: the invertible partial involutions.
pub fn involutions(n: usize) -> Vec<PartialInvolution> {
    enumerate_partial_involutions(n, n)
}

/// `τ_n`, counted by enumeration; `τ_0 = 1`.
pub fn involution_count(n: usize) -> u64 {
    involutions(n).len() as u64
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// `k! * C(n,k)^2`.
pub fn rook_count_formula(n: usize, k: usize) -> u64 {
    let c = binomial(n as u64, k as u64);
    factorial(k as u64) * c * c
}

/// `(|R_{n,n-1} ∪ R_{n,n}|, |P_{n,n-1} ∪ P_{n,n}|)` by direct enumeration.
pub fn union_cardinalities(n: usize) -> Result<(u64, u64)> {
    if n == 0 {
        return Err(Error::RankOutOfRange { n, k: 0 });
    }
    let rooks = enumerate_rooks(n, n - 1).len() + enumerate_rooks(n, n).len();
    let invs = enumerate_partial_involutions(n, n - 1).len() + enumerate_partial_involutions(n, n).len();
    Ok((rooks as u64, invs as u64))
}

/// Coefficient used in `τ_{n+1} = τ_n + c(n) τ_{n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecurrenceVariant {
    /// `c(n) = n`; agrees with enumeration.
    Corrected,
    /// `c(n) = n - 1`, as it appears in the literature this crate follows.
    AsPrinted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceCheck {
    pub n: usize,
    pub variant: RecurrenceVariant,
    /// `τ_{n+1}` by enumeration.
    pub enumerated: u64,
    /// Right-hand side from enumerated `τ_n`, `τ_{n-1}`.
    pub predicted: u64,
    pub holds: bool,
}

/// Checks the involution recurrence at `n ≥ 1` against enumeration.
pub fn check_involution_recurrence(n: usize, variant: RecurrenceVariant) -> RecurrenceCheck {
    assert!(n >= 1, "recurrence is stated for n >= 1");
    let coeff = match variant {
        RecurrenceVariant::Corrected => n as u64,
        RecurrenceVariant::AsPrinted => n as u64 - 1,
    };
    let enumerated = involution_count(n + 1);
    let predicted = involution_count(n) + coeff * involution_count(n - 1);
    RecurrenceCheck { n, variant, enumerated, predicted, holds: enumerated == predicted }
}
