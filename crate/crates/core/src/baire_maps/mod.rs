//! Continuous maps between sequence spaces: the coordinatewise bijection
//! `ω → ω+1`, Brouwer codings of compact presentations, the cell-tree
//! evaluator, and operations moving universal families along maps.

mod cell_tree;
mod presentation;
mod transfer;

use std::fmt;
use std::marker::PhantomData;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stream::{Letter, Stream};

pub use cell_tree::{cell_tree_eval, CellEval, CellTree, NodeKind};
pub use presentation::{
    partition_check, BinaryPresentation, BrouwerMap, CompactPresentation, CoordState, OmegaPlusCell,
    OmegaPlusPresentation, SPresentation, STAR,
};
pub use transfer::{
    product_sum_uu, s_transfer, transfer_uu, IndexedStream, ProductSumFamily, STransfer, TransferFamily,
    TransferParam,
};

/// A letter of `ω + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum OmegaPlusOne {
    Fin(u64),
    Omega,
}

impl fmt::Display for OmegaPlusOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaPlusOne::Fin(n) => write!(f, "{n}"),
            OmegaPlusOne::Omega => f.write_str("ω"),
        }
    }
}

/// `π(0) = ω`, `π(n+1) = n`.
pub fn pi(n: u64) -> OmegaPlusOne {
    match n {
        0 => OmegaPlusOne::Omega,
        n => OmegaPlusOne::Fin(n - 1),
    }
}

pub fn pi_inverse(a: OmegaPlusOne) -> u64 {
    match a {
        OmegaPlusOne::Omega => 0,
        OmegaPlusOne::Fin(n) => n + 1,
    }
}

/// Coordinatewise `π`; one input letter gives one output letter.
pub fn pi_stream_map(x: &Stream<u64>) -> Stream<OmegaPlusOne> {
    x.map(|n| pi(*n))
}

pub fn pi_stream_inverse(x: &Stream<OmegaPlusOne>) -> Stream<u64> {
    x.map(|a| pi_inverse(*a))
}

/// A continuous map given on finite prefixes.
///
/// `image` is monotone, and `image(w)` has at least `k` letters whenever
/// `|w| >= modulus(k)`.
pub trait PrefixMap: Send + Sync {
    type In: Letter;
    type Out: Letter;

    fn image(&self, w: &[Self::In]) -> Result<Vec<Self::Out>>;
    fn modulus(&self, k: usize) -> usize;
}

/// The image stream of `x` under `f`.
pub fn apply_stream<M>(f: &M, x: &Stream<M::In>) -> Stream<M::Out>
where
    M: PrefixMap + Clone + 'static,
{
    let (f, x) = (f.clone(), x.clone());
    Stream::from_prefix_fn(move |k| {
        let mut out = f.image(&x.truncate(f.modulus(k))?)?;
        if out.len() < k {
            return Err(Error::StreamExhausted { index: out.len() });
        }
        out.truncate(k);
        Ok(out)
    })
}

/// The identity on `L^ω`.
pub struct IdentityMap<L>(PhantomData<fn() -> L>);

impl<L> IdentityMap<L> {
    pub fn new() -> Self {
        IdentityMap(PhantomData)
    }
}

impl<L> Default for IdentityMap<L> {
    fn default() -> Self {
        Self::new()
    }
}

impl<L> Clone for IdentityMap<L> {
    fn clone(&self) -> Self {
        Self::new()
    }
}

impl<L: Letter> PrefixMap for IdentityMap<L> {
    type In = L;
    type Out = L;

    fn image(&self, w: &[L]) -> Result<Vec<L>> {
        Ok(w.to_vec())
    }

    fn modulus(&self, k: usize) -> usize {
        k
    }
}

/// The continuous bijection `ω^ω → 2^ω`: `π` followed by the Brouwer coding
/// of `(ω+1)^ω`.
#[derive(Clone, Debug, Default)]
pub struct BaireToCantor {
    inner: BrouwerMap<OmegaPlusPresentation>,
}

pub fn baire_to_cantor() -> BaireToCantor {
    BaireToCantor::default()
}

impl BaireToCantor {
    pub fn brouwer(&self) -> &BrouwerMap<OmegaPlusPresentation> {
        &self.inner
    }

    /// A depth by which the images of `x` and `y` differ, or `None` when the
    /// streams agree on their first `horizon` letters.
    ///
    /// With `i` the first difference and `j` the smaller finite value of
    /// `π(x_i), π(y_i)`, coordinate `i` separates at its `(j+1)`-st visit,
    /// which happens in schedule round `i + j`.
    pub fn separation(&self, x: &Stream<u64>, y: &Stream<u64>, horizon: usize) -> Result<Option<usize>> {
        let (a, b) = (x.truncate(horizon)?, y.truncate(horizon)?);
        let Some(i) = (0..horizon).find(|&i| a[i] != b[i]) else {
            return Ok(None);
        };
        let j = match (pi(a[i]), pi(b[i])) {
            (OmegaPlusOne::Fin(p), OmegaPlusOne::Fin(q)) => p.min(q),
            (OmegaPlusOne::Fin(p), _) | (_, OmegaPlusOne::Fin(p)) => p,
            _ => unreachable!("distinct letters"),
        } as usize;
        let rounds = i + j + 1;
        let fx = self.image(&x.truncate(rounds)?)?;
        let fy = self.image(&y.truncate(rounds)?)?;
        let k = fx
            .iter()
            .zip(&fy)
            .position(|(p, q)| p != q)
            .ok_or_else(|| Error::PresentationViolation {
                depth: rounds,
                reason: "coordinate failed to separate in its scheduled round".into(),
            })?;
        Ok(Some(k + 1))
    }
}

impl PrefixMap for BaireToCantor {
    type In = u64;
    type Out = u8;

    fn image(&self, w: &[u64]) -> Result<Vec<u8>> {
        let v: Vec<OmegaPlusOne> = w.iter().map(|n| pi(*n)).collect();
        self.inner.image(&v)
    }

    fn modulus(&self, k: usize) -> usize {
        self.inner.modulus(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_examples() {
        let z = pi_stream_map(&Stream::constant(0));
        assert_eq!(z.truncate(3).unwrap(), vec![OmegaPlusOne::Omega; 3]);
        let x = Stream::from_letter_fn(|i| i as u64 + 1);
        let y = pi_stream_map(&x);
        assert_eq!(
            y.truncate(3).unwrap(),
            vec![OmegaPlusOne::Fin(0), OmegaPlusOne::Fin(1), OmegaPlusOne::Fin(2)]
        );
        assert_eq!(pi_stream_inverse(&y).truncate(20).unwrap(), x.truncate(20).unwrap());
    }

    #[test]
    fn baire_to_cantor_total_on_zero() {
        let f = baire_to_cantor();
        let img = apply_stream(&f, &Stream::constant(0)).truncate(40).unwrap();
        assert!(img.iter().all(|b| *b == 1));
    }

    #[test]
    fn modulus_is_coherent() {
        let f = baire_to_cantor();
        let x = Stream::from_letter_fn(|i| ((i * 7) % 5) as u64);
        for k in 0..30 {
            let w = x.truncate(f.modulus(k) + 8).unwrap();
            let base = f.image(&w[..f.modulus(k)]).unwrap();
            assert!(base.len() >= k);
            for j in 0..=8 {
                assert!(f.image(&w[..f.modulus(k) + j]).unwrap().starts_with(&base));
            }
        }
    }

    #[test]
    fn separation_examples() {
        let f = baire_to_cantor();
        let x = Stream::constant(0u64);
        let y = Stream::periodic(vec![0, 0, 3], vec![0]).unwrap();
        let k = f.separation(&x, &y, 10).unwrap().unwrap();
        let fx = apply_stream(&f, &x).truncate(k).unwrap();
        let fy = apply_stream(&f, &y).truncate(k).unwrap();
        assert_ne!(fx, fy);
        assert_eq!(fx[..k - 1], fy[..k - 1]);
        assert_eq!(f.separation(&x, &x, 10).unwrap(), None);
    }
}
