//! Finite descriptions of points, cylinders, clopen sets and open regions in
//! the instance spaces.

mod clopen;
mod interval;
pub mod parse;
mod region;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{is_dyadic, show, show_dyadic, Q};
use crate::stream::Periodic;

pub use clopen::{canon_bits, complement_bits, ClopenSet, Relation};
pub use interval::{IntervalUnion, RatInterval};
pub use region::{basis_from_universal, union_of_selected, Positive, RectangleList, RegionDesc};

/// The instance spaces understood by the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SpaceTag {
    /// `2^ω`
    Cantor,
    /// `ω^ω`
    Baire,
    /// `ω × 2^ω`
    OmegaCantor,
    /// the reals, through the dyadic interval basis
    RealsDyadic,
    /// the rationals, through rational intervals
    Rationals,
    /// the discrete space `ω`
    Omega,
    /// `ℚ × 2^ω`
    RationalsCantor,
}

impl SpaceTag {
    pub fn name(self) -> &'static str {
        match self {
            SpaceTag::Cantor => "cantor",
            SpaceTag::Baire => "baire",
            SpaceTag::OmegaCantor => "omega-x-cantor",
            SpaceTag::RealsDyadic => "reals-dyadic",
            SpaceTag::Rationals => "rationals",
            SpaceTag::Omega => "omega",
            SpaceTag::RationalsCantor => "rationals-x-cantor",
        }
    }

    pub fn from_name(s: &str) -> Option<SpaceTag> {
        [
            SpaceTag::Cantor,
            SpaceTag::Baire,
            SpaceTag::OmegaCantor,
            SpaceTag::RealsDyadic,
            SpaceTag::Rationals,
            SpaceTag::Omega,
            SpaceTag::RationalsCantor,
        ]
        .into_iter()
        .find(|t| t.name() == s)
    }

    fn check(self, found: SpaceTag) -> Result<()> {
        if self == found {
            Ok(())
        } else {
            Err(Error::TagMismatch {
                expected: self,
                found,
            })
        }
    }
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite binary word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Bits(pub Vec<u8>);

impl Bits {
    pub fn empty() -> Self {
        Bits(Vec::new())
    }

    pub fn from_str_bits(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(0),
                '1' => Some(1),
                _ => None,
            })
            .collect::<Option<Vec<u8>>>()
            .map(Bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, b: u8) -> Bits {
        let mut v = self.0.clone();
        v.push(b);
        Bits(v)
    }

    pub fn is_prefix_of(&self, other: &Bits) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn comparable(&self, other: &Bits) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// All words of length exactly `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> Vec<Bits> {
        (0..1u64 << n)
            .map(|m| Bits((0..n).map(|i| ((m >> (n - 1 - i)) & 1) as u8).collect()))
            .collect()
    }

    /// All words of length at most `n`, shortest first.
    pub fn all_up_to(n: usize) -> Vec<Bits> {
        (0..=n).flat_map(Bits::all_of_length).collect()
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

fn join_nats(v: &[u64]) -> String {
    v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

/// A basic open set of one of the instance spaces.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Cylinder {
    Cantor(Bits),
    Baire(Vec<u64>),
    OmegaCantor { row: u64, word: Bits },
    Dyadic(RatInterval),
    Rational(RatInterval),
    Omega(BTreeSet<u64>),
    RationalCantor { interval: RatInterval, word: Bits },
}

impl Cylinder {
    pub fn cantor(s: &str) -> Cylinder {
        Cylinder::Cantor(Bits::from_str_bits(s).expect("binary word"))
    }

    pub fn dyadic(lo: Q, hi: Q) -> Result<Cylinder> {
        if !is_dyadic(&lo) || !is_dyadic(&hi) {
            return Err(Error::InvalidInput(format!(
                "({}, {}) has non-dyadic endpoints",
                show(&lo),
                show(&hi)
            )));
        }
        Ok(Cylinder::Dyadic(RatInterval::new(lo, hi)?))
    }

    pub fn rational(lo: Q, hi: Q) -> Result<Cylinder> {
        Ok(Cylinder::Rational(RatInterval::new(lo, hi)?))
    }

    pub fn tag(&self) -> SpaceTag {
        match self {
            Cylinder::Cantor(_) => SpaceTag::Cantor,
            Cylinder::Baire(_) => SpaceTag::Baire,
            Cylinder::OmegaCantor { .. } => SpaceTag::OmegaCantor,
            Cylinder::Dyadic(_) => SpaceTag::RealsDyadic,
            Cylinder::Rational(_) => SpaceTag::Rationals,
            Cylinder::Omega(_) => SpaceTag::Omega,
            Cylinder::RationalCantor { .. } => SpaceTag::RationalsCantor,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (Cylinder::Cantor(w), Point::Cantor(x)) => x.extends(&w.0),
            (Cylinder::Baire(w), Point::Baire(x)) => x.extends(w),
            (Cylinder::OmegaCantor { row, word }, Point::OmegaCantor(r, x)) => {
                row == r && x.extends(&word.0)
            }
            (Cylinder::Dyadic(i), Point::Real(x)) => i.contains(x),
            (Cylinder::Rational(i), Point::Rational(x)) => i.contains(x),
            (Cylinder::Omega(s), Point::Omega(n)) => s.contains(n),
            (Cylinder::RationalCantor { interval, word }, Point::RationalCantor(q, x)) => {
                interval.contains(q) && x.extends(&word.0)
            }
            _ => false,
        }
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cylinder::Cantor(w) if w.is_empty() => write!(f, "[]"),
            Cylinder::Cantor(w) => write!(f, "{w}"),
            Cylinder::Baire(w) => write!(f, "<{}>", join_nats(w)),
            Cylinder::OmegaCantor { row, word } if word.is_empty() => write!(f, "{row}:[]"),
            Cylinder::OmegaCantor { row, word } => write!(f, "{row}:[{word}]"),
            Cylinder::Dyadic(i) => write!(f, "({},{})", show_dyadic(&i.lo), show_dyadic(&i.hi)),
            Cylinder::Rational(i) => write!(f, "({},{})", show(&i.lo), show(&i.hi)),
            Cylinder::Omega(s) => {
                let v: Vec<u64> = s.iter().copied().collect();
                write!(f, "{{{}}}", join_nats(&v))
            }
            Cylinder::RationalCantor { interval, word } if word.is_empty() => {
                write!(f, "({},{})x[]", show(&interval.lo), show(&interval.hi))
            }
            Cylinder::RationalCantor { interval, word } => {
                write!(f, "({},{})x[{}]", show(&interval.lo), show(&interval.hi), word)
            }
        }
    }
}

/// A finitely described point. Sequence coordinates are eventually periodic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Point {
    Cantor(Periodic<u8>),
    Baire(Periodic<u64>),
    OmegaCantor(u64, Periodic<u8>),
    Real(Q),
    Rational(Q),
    Omega(u64),
    RationalCantor(Q, Periodic<u8>),
}

impl Point {
    pub fn tag(&self) -> SpaceTag {
        match self {
            Point::Cantor(_) => SpaceTag::Cantor,
            Point::Baire(_) => SpaceTag::Baire,
            Point::OmegaCantor(..) => SpaceTag::OmegaCantor,
            Point::Real(_) => SpaceTag::RealsDyadic,
            Point::Rational(_) => SpaceTag::Rationals,
            Point::Omega(_) => SpaceTag::Omega,
            Point::RationalCantor(..) => SpaceTag::RationalsCantor,
        }
    }

    /// Parse a cantor point such as `01(10)`.
    pub fn cantor(s: &str) -> Point {
        parse::parse_point(SpaceTag::Cantor, s).expect("cantor point")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Cantor(p) => write!(f, "{p}"),
            Point::Baire(p) => write!(f, "{p}"),
            Point::OmegaCantor(r, p) => write!(f, "{r}:{p}"),
            Point::Real(x) => write!(f, "{}", show_dyadic_or_plain(x)),
            Point::Rational(x) => write!(f, "{}", show(x)),
            Point::Omega(n) => write!(f, "{n}"),
            Point::RationalCantor(x, p) => write!(f, "{}:{}", show(x), p),
        }
    }
}

fn show_dyadic_or_plain(x: &Q) -> String {
    if is_dyadic(x) {
        show_dyadic(x)
    } else {
        show(x)
    }
}
