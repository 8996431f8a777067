//! The maps `ψ: R_{n,n-1} ∪ R_{n,n} → S_{n+1}` and
//! `φ: P_{n,n-1} ∪ P_{n,n} → I_{n+1}`, isomorphism checks, the labeling of
//! `I_{n+1}` pulled back through `φ`, and the 3-element intervals that stop
//! `R_{n,k}` and `P_{n,k}` from being Eulerian when `k ≤ n-2`.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::labeling::{label, EdgeLabels, Label};
use crate::poset::FinitePoset;
use crate::rank::{bruhat_perm_oracle, leq_partial_involutions, leq_rooks};
use crate::rook::{
    all_partial_involutions, all_rooks, enumerate_partial_involutions, enumerate_rooks, involutions, permutations,
    PartialInvolution, Rook,
};

fn check_corank_at_most_one(x: &Rook) -> Result<()> {
    if x.rank() + 1 >= x.n() {
        Ok(())
    } else {
        Err(Error::RankOutOfRange { n: x.n(), k: x.rank() })
    }
}

/// `(a_1+1, …, a_n+1, a_x)` where `a_x` is the value of `[n+1]` not yet used.
pub fn psi(x: &Rook) -> Result<Rook> {
    check_corank_at_most_one(x)?;
    let n = x.n();
    let mut word: Vec<u8> = x.word().iter().map(|&a| a + 1).collect();
    let mut used = vec![false; n + 2];
    for &v in &word {
        used[v as usize] = true;
    }
    let missing = (1..=n + 1).find(|&v| !used[v]).expect("n values among n+1");
    word.push(missing as u8);
    Rook::new(word)
}

pub fn psi_inverse(s: &Rook) -> Result<Rook> {
    if !s.is_permutation() || s.n() == 0 {
        return Err(Error::NotPermutation(s.to_string()));
    }
    let n = s.n() - 1;
    let word: Vec<u8> = s.word()[..n].iter().map(|&v| v - 1).collect();
    let x = Rook::new(word)?;
    check_corank_at_most_one(&x)?;
    Ok(x)
}

/// Replaces each empty column `i` by `b_i = n+1`, `b_{n+1} = i`; a
/// permutation gets `b_{n+1} = n+1`.
pub fn phi(x: &PartialInvolution) -> Result<PartialInvolution> {
    check_corank_at_most_one(x.as_rook())?;
    let n = x.n();
    let mut word: Vec<u8> = x.word().to_vec();
    let mut last = n + 1;
    for (i, a) in word.iter_mut().enumerate() {
        if *a == 0 {
            *a = (n + 1) as u8;
            last = i + 1;
        }
    }
    word.push(last as u8);
    PartialInvolution::new(word)
}

pub fn phi_inverse(u: &PartialInvolution) -> Result<PartialInvolution> {
    if !u.is_permutation() || u.n() == 0 {
        return Err(Error::NotPermutation(u.to_string()));
    }
    let big = u.n() as u8;
    let word = u.word()[..u.n() - 1].iter().map(|&v| if v == big { 0 } else { v }).collect();
    PartialInvolution::new(word)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetIsomorphismReport {
    pub bijective: bool,
    pub order_preserving_forward: bool,
    pub order_preserving_backward: bool,
    pub witness: Option<String>,
}

impl PosetIsomorphismReport {
    pub fn is_isomorphism(&self) -> bool {
        self.bijective && self.order_preserving_forward && self.order_preserving_backward
    }
}

/// Checks that `map` is a bijection `domain → codomain` with
/// `x ≤ y ⇔ map(x) ≤ map(y)`. Stops at the first failure.
pub fn verify_isomorphism<A, B>(
    map: impl Fn(&A) -> Result<B>,
    domain: &FinitePoset<A>,
    codomain: &FinitePoset<B>,
) -> PosetIsomorphismReport
where
    A: Clone + Eq + Hash + Display,
    B: Clone + Eq + Hash + Display,
{
    let mut rep = PosetIsomorphismReport {
        bijective: false,
        order_preserving_forward: false,
        order_preserving_backward: false,
        witness: None,
    };
    let mut image = Vec::with_capacity(domain.len());
    for x in domain.elements() {
        let fx = match map(x) {
            Ok(fx) => fx,
            Err(e) => {
                rep.witness = Some(format!("{x}: {e}"));
                return rep;
            }
        };
        match codomain.index_of(&fx) {
            Ok(i) => image.push(i),
            Err(_) => {
                rep.witness = Some(format!("{x} maps to {fx}, outside the codomain"));
                return rep;
            }
        }
    }
    let distinct: BTreeSet<usize> = image.iter().copied().collect();
    if distinct.len() != image.len() || image.len() != codomain.len() {
        rep.witness = Some(format!(
            "{} elements map onto {} distinct images in a codomain of {}",
            image.len(),
            distinct.len(),
            codomain.len()
        ));
        return rep;
    }
    rep.bijective = true;
    let mut forward = None;
    let mut backward = None;
    for a in 0..domain.len() {
        for b in 0..domain.len() {
            let here = domain.leq(a, b);
            let there = codomain.leq(image[a], image[b]);
            if here && !there && forward.is_none() {
                forward = Some((a, b));
            }
            if there && !here && backward.is_none() {
                backward = Some((a, b));
            }
        }
    }
    rep.order_preserving_forward = forward.is_none();
    rep.order_preserving_backward = backward.is_none();
    rep.witness = forward.or(backward).map(|(a, b)| {
        let (x, y) = (domain.element(a), domain.element(b));
        let (fx, fy) = (codomain.element(image[a]), codomain.element(image[b]));
        format!("{x} vs {y} maps to {fx} vs {fy}")
    });
    rep
}

/// Which family an operation targets: rooks or partial involutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Rooks,
    Involutions,
}

/// `R_{n,n-1} ∪ R_{n,n}` under the BCR order.
pub fn rook_union_poset(n: usize) -> Result<FinitePoset<Rook>> {
    if n == 0 {
        return Err(Error::RankOutOfRange { n, k: 0 });
    }
    let mut els = enumerate_rooks(n, n - 1);
    els.extend(enumerate_rooks(n, n));
    els.sort();
    Ok(FinitePoset::build(els, leq_rooks)?)
}

/// `P_{n,n-1} ∪ P_{n,n}` under the order of `P_n`.
pub fn involution_union_poset(n: usize) -> Result<FinitePoset<PartialInvolution>> {
    if n == 0 {
        return Err(Error::RankOutOfRange { n, k: 0 });
    }
    let mut els = enumerate_partial_involutions(n, n - 1);
    els.extend(enumerate_partial_involutions(n, n));
    els.sort();
    Ok(FinitePoset::build(els, leq_partial_involutions)?)
}

/// `S_m` under the transposition-closure Bruhat oracle.
pub fn symmetric_group_poset(m: usize) -> Result<FinitePoset<Rook>> {
    crate::rank::BruhatOracle::get(m)?;
    Ok(FinitePoset::build(permutations(m), |x, y| bruhat_perm_oracle(x, y).expect("size checked"))?)
}

/// `I_m` under the same oracle, restricted to involutions.
pub fn involution_group_poset(m: usize) -> Result<FinitePoset<PartialInvolution>> {
    crate::rank::BruhatOracle::get(m)?;
    Ok(FinitePoset::build(involutions(m), |x, y| {
        bruhat_perm_oracle(x.as_rook(), y.as_rook()).expect("size checked")
    })?)
}

/// `ψ` onto `S_{n+1}`.
pub fn verify_psi(n: usize) -> Result<PosetIsomorphismReport> {
    Ok(verify_isomorphism(psi, &rook_union_poset(n)?, &symmetric_group_poset(n + 1)?))
}

/// `φ` onto `I_{n+1}`.
pub fn verify_phi(n: usize) -> Result<PosetIsomorphismReport> {
    Ok(verify_isomorphism(phi, &involution_union_poset(n)?, &involution_group_poset(n + 1)?))
}

/// The three elements of an interval of length 2 in `R_{n,k}` or `P_{n,k}`.
pub fn counterexample_triple(n: usize, k: usize, side: Side) -> Result<[Rook; 3]> {
    if k == 0 || k + 2 > n {
        return Err(Error::RankOutOfRange { n, k });
    }
    // z = 0, 1, 2 zeros inserted next to the moving entry
    let build = |z: usize| -> Vec<u8> {
        match side {
            // (0..0, 1, 0^z, 2..k)
            Side::Rooks => {
                let mut w = vec![0u8; n - k - z];
                w.push(1);
                w.extend(std::iter::repeat_n(0, z));
                w.extend(2..=k as u8);
                w
            }
            // (1..k-1, 0^z, k+z, 0..0)
            Side::Involutions => {
                let mut w: Vec<u8> = (1..k as u8).collect();
                w.extend(std::iter::repeat_n(0, z));
                w.push((k + z) as u8);
                w.resize(n, 0);
                w
            }
        }
    };
    let words = [build(0), build(1), build(2)];
    Ok(words.map(|w| Rook::new(w).expect("template is a rook")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub side: Side,
    pub n: usize,
    pub k: usize,
    pub triple: Vec<String>,
    /// Members of the closed interval between the first and last of the
    /// triple, inside the subposet of rank-`k` elements.
    pub interval: Vec<String>,
    pub exactly_three: bool,
}

/// Builds the triple for `(n, k)` and scans the interval it spans in
/// `R_{n,k}` (rook side) or `P_{n,k}` (involution side).
pub fn eulerian_counterexample(n: usize, k: usize, side: Side) -> Result<CounterexampleReport> {
    let triple = counterexample_triple(n, k, side)?;
    let members: Vec<String> = match side {
        Side::Rooks => interval_members(FinitePoset::build(enumerate_rooks(n, k), leq_rooks)?, &triple[0], &triple[2])?,
        Side::Involutions => {
            let sub = FinitePoset::build(enumerate_partial_involutions(n, k), leq_partial_involutions)?;
            let lo = PartialInvolution::try_from(triple[0].clone())?;
            let hi = PartialInvolution::try_from(triple[2].clone())?;
            interval_members(sub, &lo, &hi)?
        }
    };
    let triple: Vec<String> = triple.iter().map(ToString::to_string).collect();
    let exactly_three = {
        let a: BTreeSet<&String> = members.iter().collect();
        let b: BTreeSet<&String> = triple.iter().collect();
        members.len() == 3 && a == b
    };
    Ok(CounterexampleReport { side, n, k, triple, interval: members, exactly_three })
}

fn interval_members<T: Clone + Eq + Hash + Display>(p: FinitePoset<T>, lo: &T, hi: &T) -> Result<Vec<String>> {
    let iv = p.interval(p.index_of(lo)?, p.index_of(hi)?)?;
    Ok(iv.members.iter().map(|i| p.element(i).to_string()).collect())
}

/// Whether `R_{n,n-1} ∪ R_{n,n}` is exactly `[(0,1,…,n-1), (n,…,1)]` in `R_n`.
pub fn rook_union_is_interval(n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::RankOutOfRange { n, k: 0 });
    }
    let lo = Rook::new((0..n as u8).collect())?;
    let hi = Rook::reversal(n);
    let inside: Vec<Rook> = all_rooks(n).into_iter().filter(|z| leq_rooks(&lo, z) && leq_rooks(z, &hi)).collect();
    let expected = enumerate_rooks(n, n - 1).len() + enumerate_rooks(n, n).len();
    Ok(inside.len() == expected && inside.iter().all(|z| z.rank() + 1 >= n))
}

/// Whether `P_{n,n-1} ∪ P_{n,n}` is exactly `[ι, (0,n,n-1,…,2)]` in `P_n`.
pub fn involution_union_is_interval(n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::RankOutOfRange { n, k: 0 });
    }
    let lo = PartialInvolution::identity(n);
    let mut w = vec![0u8];
    w.extend((2..=n as u8).rev());
    let hi = PartialInvolution::new(w)?;
    let inside: Vec<PartialInvolution> = all_partial_involutions(n)
        .into_iter()
        .filter(|z| leq_partial_involutions(&lo, z) && leq_partial_involutions(z, &hi))
        .collect();
    let expected = enumerate_partial_involutions(n, n - 1).len() + enumerate_partial_involutions(n, n).len();
    Ok(inside.len() == expected && inside.iter().all(|z| z.rank() + 1 >= n))
}

/// `I_{n+1}` with each cover labelled by its preimage under `φ` in `P_n`.
pub struct TransportedLabeling {
    pub poset: FinitePoset<PartialInvolution>,
    pub labels: EdgeLabels<Label>,
    pub isomorphism: PosetIsomorphismReport,
}

pub fn transport_labeling(n: usize) -> Result<TransportedLabeling> {
    let isomorphism = verify_phi(n)?;
    if !isomorphism.is_isomorphism() {
        return Err(Error::NotIsomorphism(isomorphism.witness.unwrap_or_default()));
    }
    let poset = involution_group_poset(n + 1)?;
    let labels = EdgeLabels::new(&poset, |u, v| {
        label(&phi_inverse(poset.element(u))?, &phi_inverse(poset.element(v))?)
    })?;
    Ok(TransportedLabeling { poset, labels, isomorphism })
}

/// Pairs of `P_n` on which the BCR order and the order of `P_n` are compared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderComparison {
    pub n: usize,
    pub comparable_in_pn: usize,
    pub comparable_in_rn: usize,
    /// `x ≤ y` in both.
    pub same_direction: usize,
    /// `x ≤ y` in `P_n` and `y ≤ x` in `R_n`.
    pub opposite_direction: usize,
}

/// Counts how `leq_rooks` relates to `leq_partial_involutions` on `P_n`.
/// Descriptive only.
pub fn compare_orders_on_pn(n: usize) -> OrderComparison {
    let els = all_partial_involutions(n);
    let mut c = OrderComparison { n, comparable_in_pn: 0, comparable_in_rn: 0, same_direction: 0, opposite_direction: 0 };
    for x in &els {
        for y in &els {
            if x == y {
                continue;
            }
            let pn = leq_partial_involutions(x, y);
            let rn = leq_rooks(x.as_rook(), y.as_rook());
            c.comparable_in_pn += usize::from(pn);
            c.comparable_in_rn += usize::from(rn);
            c.same_direction += usize::from(pn && rn);
            c.opposite_direction += usize::from(pn && leq_rooks(y.as_rook(), x.as_rook()));
        }
    }
    c
}
