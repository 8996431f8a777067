//! Bruhat-Chevalley-Renner posets of rooks and partial involutions.
//!
//! Elements are rooks in one-line notation ([`Rook`], [`PartialInvolution`]).
//! [`rank`] holds the comparators, [`poset`] a generic finite poset engine,
//! [`covers`] the explicit cover moves on `P_n`, [`labeling`] the edge labeling
//! and EL checks, and [`embeddings`] the maps into `S_{n+1}` and `I_{n+1}`.
//!
//! Conventions: on `R_n` the zero rook is the bottom; on `P_n` the identity is
//! the bottom and the zero rook is the top. Indices in words and labels are
//! 1-based.

pub mod bitset;
pub mod covers;
pub mod embeddings;
pub mod error;
pub mod labeling;
pub mod poset;
pub mod rank;
pub mod rook;

pub use bitset::BitSet;
pub use covers::{classify_cover, covers_of, is_cover_oracle, CoverMove};
pub use error::{Error, Result};
pub use labeling::{Label, JordanHolderWord};
pub use poset::{FinitePoset, Interval, PosetError};
pub use rank::{d_invariant, leq_partial_involutions, leq_rooks, rank_control, RankControlMatrix};
pub use rook::{PartialInvolution, Rook};

use std::sync::OnceLock;

/// `P_n` built as a poset under [`leq_partial_involutions`].
pub fn partial_involution_poset(n: usize) -> Result<FinitePoset<PartialInvolution>> {
    Ok(FinitePoset::build(rook::all_partial_involutions(n), leq_partial_involutions)?)
}

/// `P_{n,k}` as a poset in its own right (own Hasse diagram and ranks).
pub fn partial_involution_subposet(n: usize, k: usize) -> Result<FinitePoset<PartialInvolution>> {
    if k > n {
        return Err(Error::RankOutOfRange { n, k });
    }
    Ok(FinitePoset::build(rook::enumerate_partial_involutions(n, k), leq_partial_involutions)?)
}

/// `R_n` under [`leq_rooks`].
pub fn rook_poset(n: usize) -> Result<FinitePoset<Rook>> {
    Ok(FinitePoset::build(rook::all_rooks(n), leq_rooks)?)
}

pub fn rook_subposet(n: usize, k: usize) -> Result<FinitePoset<Rook>> {
    if k > n {
        return Err(Error::RankOutOfRange { n, k });
    }
    Ok(FinitePoset::build(rook::enumerate_rooks(n, k), leq_rooks)?)
}

/// Process-wide cache of `P_n` for small `n`, shared by tests and the CLI.
pub fn cached_partial_involution_poset(n: usize) -> Result<&'static FinitePoset<PartialInvolution>> {
    const CAP: usize = 6;
    static CACHE: [OnceLock<FinitePoset<PartialInvolution>>; CAP + 1] = [const { OnceLock::new() }; CAP + 1];
    if n > CAP {
        return Err(Error::TooLarge { n, limit: CAP });
    }
    if let Some(p) = CACHE[n].get() {
        return Ok(p);
    }
    let built = partial_involution_poset(n)?;
    Ok(CACHE[n].get_or_init(|| built))
}
