//! Compact zero-dimensional spaces given by finitely branching refinement
//! trees, and their first/rest Brouwer codings onto `2^ω`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{int, pow2, Q};
use crate::stream::Letter;

use super::{OmegaPlusOne, PrefixMap};

/// A refinement tree of clopen cells over a perfect compact space whose
/// points are words over `Letter`.
pub trait CompactPresentation: Send + Sync {
    type Letter: Letter;
    type Cell: Clone + fmt::Debug + Send + Sync;

    fn root(&self) -> Self::Cell;
    /// A finite nonempty partition of `c`, in presentation order.
    fn children(&self, c: &Self::Cell) -> Vec<Self::Cell>;
    /// The index of the child holding every point that extends `w`, if `w` decides it.
    fn locate(&self, c: &Self::Cell, w: &[Self::Letter]) -> Option<usize>;
    /// Upper bound on the diameter of cells at refinement depth `d`; tends to 0.
    fn diameter_bound(&self, d: usize) -> Q;
    /// The number of refinement steps below `c` within which some cell has two children.
    fn split_modulus(&self, c: &Self::Cell) -> usize;
    /// Input letters that determine `k` output bits of the Brouwer coding.
    fn modulus(&self, k: usize) -> usize;
}

/// The first/rest coding: child `i` of `m` emits `1^i 0`, the last emits
/// `1^(m-1)`, and a lone child emits nothing.
#[derive(Clone, Debug, Default)]
pub struct BrouwerMap<P> {
    pub presentation: P,
}

pub fn child_code(i: usize, m: usize) -> Vec<u8> {
    let mut code = vec![1; i];
    if i + 1 < m {
        code.push(0);
    }
    code
}

impl<P: CompactPresentation> BrouwerMap<P> {
    pub fn new(presentation: P) -> Self {
        BrouwerMap { presentation }
    }

    /// Children of `c`, failing on an empty partition.
    fn split(&self, c: &P::Cell, depth: usize) -> Result<Vec<P::Cell>> {
        let ch = self.presentation.children(c);
        if ch.is_empty() {
            return Err(Error::PresentationViolation {
                depth,
                reason: format!("cell {c:?} has no children"),
            });
        }
        Ok(ch)
    }

    /// Walks down from the root; `choose` picks a child index among `m >= 2`
    /// or stops the walk. Lone children are followed for at most `σ` steps.
    fn walk(
        &self,
        mut choose: impl FnMut(&P::Cell, &[P::Cell]) -> Option<usize>,
    ) -> Result<(P::Cell, usize, Vec<u8>)> {
        let p = &self.presentation;
        let mut cell = p.root();
        let mut depth = 0;
        let mut code = Vec::new();
        let mut streak = 0;
        let mut limit = 0;
        loop {
            let ch = self.split(&cell, depth)?;
            if ch.len() == 1 {
                if streak == 0 {
                    limit = p.split_modulus(&cell);
                }
                streak += 1;
                if streak > limit {
                    return Err(Error::PresentationViolation {
                        depth,
                        reason: format!("no split within σ = {limit}"),
                    });
                }
                cell = ch.into_iter().next().expect("one child");
                depth += 1;
                continue;
            }
            streak = 0;
            let Some(i) = choose(&cell, &ch) else {
                return Ok((cell, depth, code));
            };
            code.extend(child_code(i, ch.len()));
            cell = ch[i].clone();
            depth += 1;
        }
    }

    /// The deepest cell whose code is a prefix of `bits`, with its depth and code.
    pub fn pull_back(&self, bits: &[u8]) -> Result<(P::Cell, usize, Vec<u8>)> {
        let mut pos = 0;
        self.walk(|_, ch| {
            let m = ch.len();
            let mut i = 0;
            let mut j = pos;
            loop {
                if i + 1 == m {
                    break;
                }
                match bits.get(j) {
                    None => return None,
                    Some(1) => {
                        i += 1;
                        j += 1;
                    }
                    Some(_) => {
                        j += 1;
                        break;
                    }
                }
            }
            pos = j;
            Some(i)
        })
    }

    /// All cells at refinement depth `d` with their codes, in presentation order.
    pub fn image_cells(&self, d: usize) -> Result<Vec<(P::Cell, Vec<u8>)>> {
        let mut level = vec![(self.presentation.root(), Vec::new())];
        for depth in 0..d {
            let mut next = Vec::new();
            for (c, code) in level {
                let ch = self.split(&c, depth)?;
                let m = ch.len();
                for (i, c) in ch.into_iter().enumerate() {
                    let mut w: Vec<u8> = code.clone();
                    w.extend(child_code(i, m));
                    next.push((c, w));
                }
            }
            level = next;
        }
        Ok(level)
    }
}

impl<P: CompactPresentation> PrefixMap for BrouwerMap<P> {
    type In = P::Letter;
    type Out = u8;

    fn image(&self, w: &[P::Letter]) -> Result<Vec<u8>> {
        let p = &self.presentation;
        Ok(self.walk(|c, _| p.locate(c, w))?.2)
    }

    fn modulus(&self, k: usize) -> usize {
        self.presentation.modulus(k)
    }
}

/// Whether `codes` cut every depth-`d` binary cylinder into an exact partition:
/// the codes meeting `[w]` are pairwise incomparable and their parts of `[w]`
/// have total measure `2^-d`. Returns the first offending cylinder.
pub fn partition_check(codes: &[Vec<u8>], d: usize) -> std::result::Result<(), Vec<u8>> {
    let set: BTreeSet<&Vec<u8>> = codes.iter().collect();
    if set.len() != codes.len() {
        return Err(Vec::new());
    }
    for n in 0..(1u64 << d) {
        let w: Vec<u8> = (0..d).map(|i| ((n >> (d - 1 - i)) & 1) as u8).collect();
        let meets: Vec<&Vec<u8>> = codes
            .iter()
            .filter(|c| c.starts_with(&w) || w.starts_with(c))
            .collect();
        for (a, i) in meets.iter().zip(0..) {
            for b in &meets[i + 1..] {
                if a.starts_with(b) || b.starts_with(a) {
                    return Err(w);
                }
            }
        }
        let mass: Q = meets
            .iter()
            .map(|c| int(1) / pow2(c.len().max(d) as u32))
            .sum();
        if mass != int(1) / pow2(d as u32) {
            return Err(w);
        }
    }
    Ok(())
}

/// `2^ω` cut by its binary cylinders; its Brouwer coding is the identity.
#[derive(Clone, Copy, Debug, Default)]
pub struct BinaryPresentation;

impl CompactPresentation for BinaryPresentation {
    type Letter = u8;
    type Cell = Vec<u8>;

    fn root(&self) -> Vec<u8> {
        Vec::new()
    }

    fn children(&self, c: &Vec<u8>) -> Vec<Vec<u8>> {
        (0..2)
            .map(|b| {
                let mut w = c.clone();
                w.push(b);
                w
            })
            .collect()
    }

    fn locate(&self, c: &Vec<u8>, w: &[u8]) -> Option<usize> {
        w.get(c.len()).map(|b| *b as usize)
    }

    fn diameter_bound(&self, d: usize) -> Q {
        int(1) / int(d as i128 + 1)
    }

    fn split_modulus(&self, _: &Vec<u8>) -> usize {
        0
    }

    fn modulus(&self, k: usize) -> usize {
        k
    }
}

/// The state of one coordinate of `(ω+1)^ω`: `{k}` or the tail `[k, ω]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoordState {
    Single(u64),
    Tail(u64),
}

impl CoordState {
    /// Diameter under `d(m, ω) = 1/(m+1)`.
    pub fn diameter(self) -> Q {
        match self {
            CoordState::Single(_) => int(0),
            CoordState::Tail(k) => int(1) / int(k as i128 + 1),
        }
    }
}

/// A product cell of `(ω+1)^ω` after `step` schedule steps; coordinates past
/// the recorded ones are `[0, ω]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OmegaPlusCell {
    pub coords: Vec<CoordState>,
    pub step: usize,
}

impl OmegaPlusCell {
    pub fn coord(&self, i: usize) -> CoordState {
        self.coords.get(i).copied().unwrap_or(CoordState::Tail(0))
    }

    /// Diameter under the product metric `Σ 2^-i d(x_i, y_i)`.
    pub fn diameter(&self) -> Q {
        let n = self.coords.len();
        let head: Q = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, s)| s.diameter() / pow2(i as u32))
            .sum();
        head + int(2) / pow2(n as u32)
    }
}

/// The coordinate split at schedule step `t`: rounds `r = 0, 1, …` visit
/// coordinates `0..=r` in order.
pub fn schedule(t: usize) -> usize {
    let mut r = 0;
    let mut start = 0;
    while start + r + 1 <= t {
        start += r + 1;
        r += 1;
    }
    t - start
}

/// `(ω+1)^ω`, each visit splitting a tail coordinate `[k, ω]` into `{k}`
/// and `[k+1, ω]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct OmegaPlusPresentation;

impl CompactPresentation for OmegaPlusPresentation {
    type Letter = OmegaPlusOne;
    type Cell = OmegaPlusCell;

    fn root(&self) -> OmegaPlusCell {
        OmegaPlusCell {
            coords: Vec::new(),
            step: 0,
        }
    }

    fn children(&self, c: &OmegaPlusCell) -> Vec<OmegaPlusCell> {
        let i = schedule(c.step);
        let with = |s: CoordState| {
            let mut coords = c.coords.clone();
            if coords.len() <= i {
                coords.resize(i + 1, CoordState::Tail(0));
            }
            coords[i] = s;
            OmegaPlusCell {
                coords,
                step: c.step + 1,
            }
        };
        match c.coord(i) {
            CoordState::Single(k) => vec![with(CoordState::Single(k))],
            CoordState::Tail(k) => vec![with(CoordState::Single(k)), with(CoordState::Tail(k + 1))],
        }
    }

    fn locate(&self, c: &OmegaPlusCell, w: &[OmegaPlusOne]) -> Option<usize> {
        let i = schedule(c.step);
        let a = w.get(i)?;
        match c.coord(i) {
            CoordState::Single(_) => Some(0),
            CoordState::Tail(k) => Some((*a != OmegaPlusOne::Fin(k)) as usize),
        }
    }

    /// With `r_i` visits to coordinate `i` in the first `d` steps, every
    /// cell is within `Σ 2^-i / (r_i + 1)`.
    fn diameter_bound(&self, d: usize) -> Q {
        let mut visits = Vec::new();
        for t in 0..d {
            let i = schedule(t);
            if visits.len() <= i {
                visits.resize(i + 1, 0i128);
            }
            visits[i] += 1;
        }
        let n = visits.len();
        let head: Q = visits
            .iter()
            .enumerate()
            .map(|(i, r)| int(1) / (int(r + 1) * pow2(i as u32)))
            .sum();
        head + int(2) / pow2(n as u32)
    }

    fn split_modulus(&self, c: &OmegaPlusCell) -> usize {
        (0..)
            .find(|j| matches!(c.coord(schedule(c.step + j)), CoordState::Tail(_)))
            .expect("each round opens a fresh coordinate")
    }

    /// Rounds `0..k` read coordinates `0..k` and emit at least one bit each.
    fn modulus(&self, k: usize) -> usize {
        k
    }
}

/// The `S` marker symbol.
pub const STAR: u8 = 2;

/// `S = 2^ω ∪ {0^n ⋆ x : n > 0}` cut by word cylinders; a nonempty all-zero
/// word has the three children `w0, w1, w⋆`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SPresentation;

impl CompactPresentation for SPresentation {
    type Letter = u8;
    type Cell = Vec<u8>;

    fn root(&self) -> Vec<u8> {
        Vec::new()
    }

    fn children(&self, c: &Vec<u8>) -> Vec<Vec<u8>> {
        let star = !c.is_empty() && c.iter().all(|b| *b == 0);
        let letters: &[u8] = if star { &[0, 1, STAR] } else { &[0, 1] };
        letters
            .iter()
            .map(|b| {
                let mut w = c.clone();
                w.push(*b);
                w
            })
            .collect()
    }

    fn locate(&self, c: &Vec<u8>, w: &[u8]) -> Option<usize> {
        w.get(c.len()).map(|b| *b as usize)
    }

    fn diameter_bound(&self, d: usize) -> Q {
        int(1) / int(d as i128 + 1)
    }

    fn split_modulus(&self, _: &Vec<u8>) -> usize {
        0
    }

    fn modulus(&self, k: usize) -> usize {
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_is_identity() {
        let f = BrouwerMap::new(BinaryPresentation);
        let w = vec![1, 0, 0, 1, 1, 0];
        assert_eq!(f.image(&w).unwrap(), w);
        assert_eq!(f.pull_back(&w).unwrap().0, w);
    }

    #[test]
    fn s_coding_examples() {
        let f = BrouwerMap::new(SPresentation);
        assert_eq!(f.image(&[0, 0, STAR, 1, 0]).unwrap(), vec![0, 0, 1, 1, 1, 0]);
        assert_eq!(f.image(&[0, 1, 1]).unwrap(), vec![0, 1, 0, 1]);
        assert_eq!(f.image(&[1, 0, 1]).unwrap(), vec![1, 0, 1]);
        assert_eq!(f.image(&[0, 0, 0]).unwrap(), vec![0, 0, 0]);
        assert_eq!(f.pull_back(&[0, 0, 1, 1, 1]).unwrap().0, vec![0, 0, STAR, 1]);
    }

    #[test]
    fn schedule_rounds() {
        let v: Vec<usize> = (0..10).map(schedule).collect();
        assert_eq!(v, vec![0, 0, 1, 0, 1, 2, 0, 1, 2, 3]);
    }

    #[test]
    fn depth_six_cells_partition() {
        let f = BrouwerMap::new(OmegaPlusPresentation);
        for d in 0..=8 {
            let codes: Vec<Vec<u8>> = f.image_cells(d).unwrap().into_iter().map(|c| c.1).collect();
            assert_eq!(partition_check(&codes, d.min(6)), Ok(()));
        }
        let g = BrouwerMap::new(SPresentation);
        let codes: Vec<Vec<u8>> = g.image_cells(6).unwrap().into_iter().map(|c| c.1).collect();
        assert_eq!(partition_check(&codes, 6), Ok(()));
        assert!(partition_check(&[vec![0], vec![0, 1], vec![1]], 2).is_err());
        assert!(partition_check(&[vec![0]], 1).is_err());
    }

    #[test]
    fn diameter_bounds_dominate_cells() {
        let p = OmegaPlusPresentation;
        let f = BrouwerMap::new(p);
        for d in 0..10 {
            let bound = p.diameter_bound(d);
            for (c, _) in f.image_cells(d).unwrap() {
                assert!(c.diameter() <= bound);
            }
            assert!(p.diameter_bound(d + 1) <= bound);
        }
        assert!(p.diameter_bound(500) < crate::rational::q(1, 10));
    }

    #[derive(Clone, Copy)]
    struct Stalling;

    impl CompactPresentation for Stalling {
        type Letter = u8;
        type Cell = usize;

        fn root(&self) -> usize {
            0
        }

        fn children(&self, c: &usize) -> Vec<usize> {
            vec![c + 1]
        }

        fn locate(&self, _: &usize, _: &[u8]) -> Option<usize> {
            Some(0)
        }

        fn diameter_bound(&self, _: usize) -> Q {
            int(1)
        }

        fn split_modulus(&self, _: &usize) -> usize {
            3
        }

        fn modulus(&self, k: usize) -> usize {
            k
        }
    }

    #[test]
    fn never_splitting_branch_is_rejected() {
        let err = BrouwerMap::new(Stalling).image(&[0, 1]).unwrap_err();
        assert!(matches!(err, Error::PresentationViolation { depth: 3, .. }), "{err}");
    }
}
