//! Covers in `P_n`: rises and covering transformations on involutions, the
//! c-, d- and r-moves, and the rank-control cover oracle.
//!
//! A move pushes 1s to the *first available* position: the smallest index in
//! the allowed range whose row and column are empty. A push is legal only if
//! the 1 travelling right does not jump over a column whose 1 sits lower. That
//! jump would destroy a rise, and the result would be comparable but not a
//! cover.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rank::{d_invariant, leq_partial_involutions};
use crate::rook::PartialInvolution;

/// Type of a rise by the classes of its endpoints: f(ixed), e(xceedance),
/// d(efect).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RiseType {
    Ff,
    Fe,
    Ef,
    /// `i < σ(i) < j < σ(j)`
    EeCrossing,
    /// `i < j < σ(i) < σ(j)`
    EeNoncrossing,
    Ed,
    Fd,
    Df,
    Dd,
    De,
}

impl RiseType {
    pub fn is_suitable_type(self) -> bool {
        matches!(self, Self::Ff | Self::Fe | Self::Ef | Self::EeCrossing | Self::EeNoncrossing | Self::Ed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Rise {
    pub i: usize,
    pub j: usize,
    pub kind: RiseType,
    pub free: bool,
}

/// A free rise of suitable type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SuitableRise(Rise);

impl SuitableRise {
    pub fn rise(&self) -> Rise {
        self.0
    }

    pub fn positions(&self) -> (usize, usize) {
        (self.0.i, self.0.j)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Fixed,
    Exceedance,
    Defect,
}

fn class(sigma: &PartialInvolution, i: usize) -> Class {
    let v = sigma.entry(i);
    match v.cmp(&i) {
        std::cmp::Ordering::Equal => Class::Fixed,
        std::cmp::Ordering::Greater => Class::Exceedance,
        std::cmp::Ordering::Less => Class::Defect,
    }
}

/// All rises `(i,j)` of `sigma`, ascending. Columns holding 0 never take part.
pub fn rises(sigma: &PartialInvolution) -> Vec<Rise> {
    use Class::*;
    let n = sigma.n();
    let mut out = Vec::new();
    for i in 1..=n {
        let a = sigma.entry(i);
        if a == 0 {
            continue;
        }
        for j in i + 1..=n {
            let b = sigma.entry(j);
            if b == 0 || a >= b {
                continue;
            }
            let free = !(i + 1..j).any(|k| {
                let v = sigma.entry(k);
                a < v && v < b
            });
            let kind = match (class(sigma, i), class(sigma, j)) {
                (Fixed, Fixed) => RiseType::Ff,
                (Fixed, Exceedance) => RiseType::Fe,
                (Exceedance, Fixed) => RiseType::Ef,
                (Exceedance, Exceedance) if a < j => RiseType::EeCrossing,
                (Exceedance, Exceedance) => RiseType::EeNoncrossing,
                (Exceedance, Defect) => RiseType::Ed,
                (Fixed, Defect) => RiseType::Fd,
                (Defect, Fixed) => RiseType::Df,
                (Defect, Defect) => RiseType::Dd,
                (Defect, Exceedance) => RiseType::De,
            };
            out.push(Rise { i, j, kind, free });
        }
    }
    out
}

fn require_involution(sigma: &PartialInvolution) -> Result<()> {
    if sigma.is_permutation() {
        Ok(())
    } else {
        Err(Error::NotPermutation(sigma.to_string()))
    }
}

/// Suitable rises of a full involution, in lexicographic order of `(i,j)`.
pub fn suitable_rises(sigma: &PartialInvolution) -> Result<Vec<SuitableRise>> {
    require_involution(sigma)?;
    Ok(rises(sigma).into_iter().filter(|r| r.free && r.kind.is_suitable_type()).map(SuitableRise).collect())
}

/// The involution covering `sigma` obtained from the suitable rise `(i,j)`.
///
/// | type | result |
/// |------|--------|
/// | ff | pair `(i,j)` |
/// | fe | pair `(i,σj)`, `j` fixed |
/// | ef | pair `(i,j)`, `σi` fixed |
/// | ee crossing | pair `(i,σj)`, `σi` and `j` fixed |
/// | ee noncrossing | pairs `(i,σj)`, `(j,σi)` |
/// | ed | pairs `(i,σj)`, `(σi,j)` |
pub fn ct(sigma: &PartialInvolution, i: usize, j: usize) -> Result<PartialInvolution> {
    let rise = suitable_rises(sigma)?
        .into_iter()
        .find(|r| r.positions() == (i, j))
        .ok_or_else(|| Error::NotSuitable { sigma: sigma.to_string(), i, j })?;
    let mut w = sigma.word().to_vec();
    let si = sigma.entry(i);
    let sj = sigma.entry(j);
    let fix = |p: usize, w: &mut Vec<u8>| w[p - 1] = p as u8;
    let pair = |p: usize, q: usize, w: &mut Vec<u8>| {
        w[p - 1] = q as u8;
        w[q - 1] = p as u8;
    };
    match rise.rise().kind {
        RiseType::Ff => pair(i, j, &mut w),
        RiseType::Fe => {
            fix(j, &mut w);
            pair(i, sj, &mut w);
        }
        RiseType::Ef => {
            fix(si, &mut w);
            pair(i, j, &mut w);
        }
        RiseType::EeCrossing => {
            fix(si, &mut w);
            fix(j, &mut w);
            pair(i, sj, &mut w);
        }
        RiseType::EeNoncrossing => {
            pair(i, sj, &mut w);
            pair(j, si, &mut w);
        }
        RiseType::Ed => {
            pair(i, sj, &mut w);
            pair(si, j, &mut w);
        }
        _ => unreachable!("suitable rises have suitable types"),
    }
    Ok(PartialInvolution::from_word_unchecked(w))
}

/// Restriction of `x` to its nonzero rows and columns, relabelled `1..m`,
/// together with the original indices.
pub fn compress(x: &PartialInvolution) -> (PartialInvolution, Vec<usize>) {
    let support: Vec<usize> = (1..=x.n()).filter(|&j| x.entry(j) != 0).collect();
    let mut pos = vec![0u8; x.n() + 1];
    for (k, &s) in support.iter().enumerate() {
        pos[s] = (k + 1) as u8;
    }
    let word = support.iter().map(|&s| pos[x.entry(s)]).collect();
    (PartialInvolution::from_word_unchecked(word), support)
}

/// Inverse of [`compress`].
pub fn expand(sigma: &PartialInvolution, support: &[usize], n: usize) -> PartialInvolution {
    let mut w = vec![0u8; n];
    for (k, &s) in support.iter().enumerate() {
        w[s - 1] = support[sigma.entry(k + 1) - 1] as u8;
    }
    PartialInvolution::from_word_unchecked(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RVariant {
    /// The 1 at `(a,b)` moves right, its mirror down.
    RightDown,
    /// The 1 at `(b,a)` moves right, its mirror down, staying off the diagonal.
    DownRight,
    /// The pair `(a,b),(b,a)` becomes `(b,b)` plus a diagonal 1 further down.
    CollapseToDiagonal { diagonal: usize },
    /// As the collapse, but no diagonal slot is left and the second 1 leaves.
    PushOut,
}

/// How a cover of `P_n` arises from its lower element. Indices refer to the
/// `n × n` matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "params")]
pub enum CoverMove {
    /// Covering transformation of the compressed involution at rise `(i,j)`.
    #[serde(rename = "c")]
    C { i: usize, j: usize, rise: RiseType },
    /// Diagonal 1 at `(i,i)` moves to `(t,t)`, or out when `target` is `None`.
    #[serde(rename = "d")]
    D { i: usize, target: Option<usize> },
    /// The 1 in column `source_col` moves right to `target_col`.
    #[serde(rename = "r")]
    R { source_col: usize, target_col: usize, variant: RVariant },
}

impl fmt::Display for CoverMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::C { i, j, rise } => write!(f, "c({i},{j}) {rise:?}"),
            Self::D { i, target: Some(t) } => write!(f, "d({i}->{t})"),
            Self::D { i, target: None } => write!(f, "d({i}->out)"),
            Self::R { source_col, target_col, variant } => write!(f, "r({source_col}->{target_col}) {variant:?}"),
        }
    }
}

fn occupied(x: &PartialInvolution) -> Vec<bool> {
    let mut occ = vec![false; x.n() + 2];
    for j in 1..=x.n() {
        occ[j] = x.entry(j) != 0;
    }
    occ
}

fn first_free(occ: &[bool], range: std::ops::Range<usize>) -> Option<usize> {
    range.into_iter().find(|&t| !occ[t])
}

/// True if some column strictly between `from` and `to` holds a 1 below row `row`.
fn jumps(x: &PartialInvolution, from: usize, to: usize, row: usize) -> bool {
    (from + 1..to.min(x.n() + 1)).any(|k| x.entry(k) > row)
}

fn with_pair(mut w: Vec<u8>, p: usize, q: usize) -> Vec<u8> {
    w[p - 1] = q as u8;
    w[q - 1] = p as u8;
    w
}

/// c-moves: covering transformations applied to the compressed involution.
pub fn c_moves(x: &PartialInvolution) -> Vec<(CoverMove, PartialInvolution)> {
    let (sigma, support) = compress(x);
    suitable_rises(&sigma)
        .expect("compressed partial involution is an involution")
        .into_iter()
        .map(|r| {
            let (i, j) = r.positions();
            let y = expand(&ct(&sigma, i, j).expect("rise is suitable"), &support, x.n());
            (CoverMove::C { i: support[i - 1], j: support[j - 1], rise: r.rise().kind }, y)
        })
        .collect()
}

/// d-moves: a diagonal 1 slides to the next free diagonal slot or out.
pub fn d_moves(x: &PartialInvolution) -> Vec<(CoverMove, PartialInvolution)> {
    let n = x.n();
    let occ = occupied(x);
    let mut out = Vec::new();
    for i in (1..=n).filter(|&i| x.entry(i) == i) {
        let target = first_free(&occ, i + 1..n + 1);
        if jumps(x, i, target.unwrap_or(n + 1), i) {
            continue;
        }
        let mut w = x.word().to_vec();
        w[i - 1] = 0;
        if let Some(t) = target {
            w[t - 1] = t as u8;
        }
        out.push((CoverMove::D { i, target }, PartialInvolution::from_word_unchecked(w)));
    }
    out
}

/// r-moves on each off-diagonal pair `(a,b)`, `a < b`.
pub fn r_moves(x: &PartialInvolution) -> Vec<(CoverMove, PartialInvolution)> {
    let n = x.n();
    let occ = occupied(x);
    let mut out = Vec::new();
    for a in 1..=n {
        let b = x.entry(a);
        if b <= a {
            continue;
        }
        let mut cleared = x.word().to_vec();
        cleared[a - 1] = 0;
        cleared[b - 1] = 0;

        if let Some(c) = first_free(&occ, b + 1..n + 1) {
            if !jumps(x, b, c, a) {
                let y = with_pair(cleared.clone(), a, c);
                let mv = CoverMove::R { source_col: b, target_col: c, variant: RVariant::RightDown };
                out.push((mv, PartialInvolution::from_word_unchecked(y)));
            }
        }

        let between = first_free(&occ, a + 1..b);
        if let Some(c) = between {
            if !jumps(x, a, c, b) {
                let y = with_pair(cleared.clone(), c, b);
                let mv = CoverMove::R { source_col: a, target_col: c, variant: RVariant::DownRight };
                out.push((mv, PartialInvolution::from_word_unchecked(y)));
            }
        } else {
            let c = first_free(&occ, b + 1..n + 1);
            if !jumps(x, a, b, b) && !jumps(x, b, c.unwrap_or(n + 1), b) {
                let mut y = cleared;
                y[b - 1] = b as u8;
                if let Some(c) = c {
                    y[c - 1] = c as u8;
                }
                let variant = match c {
                    Some(diagonal) => RVariant::CollapseToDiagonal { diagonal },
                    None => RVariant::PushOut,
                };
                out.push((CoverMove::R { source_col: a, target_col: b, variant }, PartialInvolution::from_word_unchecked(y)));
            }
        }
    }
    out
}

/// Every cover of `x` with the move producing it: c-moves, then d, then r.
pub fn labeled_covers(x: &PartialInvolution) -> Vec<(CoverMove, PartialInvolution)> {
    let mut out = c_moves(x);
    out.extend(d_moves(x));
    out.extend(r_moves(x));
    out
}

/// Elements covering `x`, sorted.
pub fn covers_of(x: &PartialInvolution) -> Vec<PartialInvolution> {
    let mut ys: Vec<_> = labeled_covers(x).into_iter().map(|(_, y)| y).collect();
    ys.sort();
    ys
}

/// Every push of the three kinds to *any* free target, without the legality
/// filter, plus the c-moves. A superset of [`labeled_covers`]; used to check
/// that no cover can be explained by two different moves.
pub fn candidate_moves(x: &PartialInvolution) -> Vec<(CoverMove, PartialInvolution)> {
    let n = x.n();
    let occ = occupied(x);
    let free_after = |from: usize| (from + 1..=n).filter(|&t| !occ[t]).map(Some).chain([None]);
    let mut out = c_moves(x);
    for i in (1..=n).filter(|&i| x.entry(i) == i) {
        for target in free_after(i) {
            let mut w = x.word().to_vec();
            w[i - 1] = 0;
            if let Some(t) = target {
                w[t - 1] = t as u8;
            }
            out.push((CoverMove::D { i, target }, PartialInvolution::from_word_unchecked(w)));
        }
    }
    for a in 1..=n {
        let b = x.entry(a);
        if b <= a {
            continue;
        }
        let mut cleared = x.word().to_vec();
        cleared[a - 1] = 0;
        cleared[b - 1] = 0;
        for c in (b + 1..=n).filter(|&t| !occ[t]) {
            let mv = CoverMove::R { source_col: b, target_col: c, variant: RVariant::RightDown };
            out.push((mv, PartialInvolution::from_word_unchecked(with_pair(cleared.clone(), a, c))));
        }
        for c in (a + 1..b).filter(|&t| !occ[t]) {
            let mv = CoverMove::R { source_col: a, target_col: c, variant: RVariant::DownRight };
            out.push((mv, PartialInvolution::from_word_unchecked(with_pair(cleared.clone(), c, b))));
        }
        for c in free_after(b) {
            let mut y = cleared.clone();
            y[b - 1] = b as u8;
            if let Some(c) = c {
                y[c - 1] = c as u8;
            }
            let variant = match c {
                Some(diagonal) => RVariant::CollapseToDiagonal { diagonal },
                None => RVariant::PushOut,
            };
            out.push((CoverMove::R { source_col: a, target_col: b, variant }, PartialInvolution::from_word_unchecked(y)));
        }
    }
    out
}

/// `y` covers `x` in `(P_n, ≤)`: `R(y) ≤_R R(x)` and `D(y) = D(x) + 1`.
pub fn is_cover_oracle(x: &PartialInvolution, y: &PartialInvolution) -> bool {
    x.n() == y.n() && d_invariant(y.as_rook()) == d_invariant(x.as_rook()) + 1 && leq_partial_involutions(x, y)
}

/// The unique move taking `x` to the cover `y`.
pub fn classify_cover(x: &PartialInvolution, y: &PartialInvolution) -> Result<CoverMove> {
    if !is_cover_oracle(x, y) {
        return Err(Error::NotACover { from: x.to_string(), to: y.to_string() });
    }
    let hits: Vec<CoverMove> = labeled_covers(x).into_iter().filter(|(_, z)| z == y).map(|(m, _)| m).collect();
    match hits.as_slice() {
        [m] => Ok(*m),
        [] => Err(Error::UnclassifiedCover { from: x.to_string(), to: y.to_string() }),
        _ => Err(Error::AmbiguousCover { from: x.to_string(), to: y.to_string(), count: hits.len() }),
    }
}
