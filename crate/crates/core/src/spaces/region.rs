use std::fmt;

use super::{ClopenSet, Cylinder, IntervalUnion, Point, RatInterval, SpaceTag};
use crate::error::{Error, Result};
use crate::stream::Periodic;

/// Positive part of a region: the whole space or a finite union of cylinders.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Positive {
    All,
    Gens(ClopenSet),
}

/// An open set: a positive part with finitely many eventually periodic points removed.
///
/// Canonical: removed points lie in the positive part, sorted, without
/// duplicates; interval members touching at an endpoint are merged with the
/// shared endpoint removed. Equal sets have equal descriptions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RegionDesc {
    tag: SpaceTag,
    positive: Positive,
    removed: Vec<Point>,
}

impl RegionDesc {
    pub fn new(tag: SpaceTag, positive: Positive, removed: Vec<Point>) -> Result<Self> {
        for p in &removed {
            tag.check(p.tag())?;
        }
        let mut positive = match positive {
            Positive::Gens(c) => {
                tag.check(c.tag())?;
                Positive::Gens(c)
            }
            Positive::All => Positive::All,
        };
        let mut removed = removed;
        if let Positive::Gens(c) = positive.clone() {
            if matches!(tag, SpaceTag::RealsDyadic | SpaceTag::Rationals) {
                let parts: Vec<RatInterval> = c
                    .generators()
                    .iter()
                    .filter_map(|g| match g {
                        Cylinder::Dyadic(i) | Cylinder::Rational(i) => Some(i.clone()),
                        _ => None,
                    })
                    .collect();
                let (merged, glued) = IntervalUnion::new(parts).merge_touching();
                let wrap = if tag == SpaceTag::RealsDyadic {
                    Cylinder::Dyadic
                } else {
                    Cylinder::Rational
                };
                let point = |x| {
                    if tag == SpaceTag::RealsDyadic {
                        Point::Real(x)
                    } else {
                        Point::Rational(x)
                    }
                };
                removed.extend(glued.into_iter().map(point));
                positive = Positive::Gens(ClopenSet::normalize(
                    tag,
                    merged.parts().iter().cloned().map(wrap).collect(),
                )?);
            }
            if matches!(tag, SpaceTag::Cantor | SpaceTag::Baire) && c == ClopenSet::whole(tag)? {
                positive = Positive::All;
            }
        }
        let keep = |p: &Point| match &positive {
            Positive::All => true,
            Positive::Gens(c) => c.contains(p),
        };
        removed.retain(keep);
        removed.sort();
        removed.dedup();
        if tag == SpaceTag::Omega && !removed.is_empty() {
            return Err(Error::InvalidInput(
                "points of omega are isolated; a removal list must be empty".into(),
            ));
        }
        Ok(RegionDesc {
            tag,
            positive,
            removed,
        })
    }

    pub fn all(tag: SpaceTag) -> Self {
        RegionDesc {
            tag,
            positive: Positive::All,
            removed: Vec::new(),
        }
    }

    pub fn empty(tag: SpaceTag) -> Self {
        RegionDesc {
            tag,
            positive: Positive::Gens(ClopenSet::empty(tag)),
            removed: Vec::new(),
        }
    }

    pub fn from_clopen(c: ClopenSet) -> Result<Self> {
        RegionDesc::new(c.tag(), Positive::Gens(c), Vec::new())
    }

    pub fn from_cylinders(tag: SpaceTag, gens: Vec<Cylinder>) -> Result<Self> {
        RegionDesc::from_clopen(ClopenSet::normalize(tag, gens)?)
    }

    pub fn tag(&self) -> SpaceTag {
        self.tag
    }

    pub fn positive(&self) -> &Positive {
        &self.positive
    }

    pub fn removed(&self) -> &[Point] {
        &self.removed
    }

    pub fn is_empty(&self) -> bool {
        matches!(&self.positive, Positive::Gens(c) if c.is_empty())
    }

    pub fn is_all(&self) -> bool {
        self.positive == Positive::All && self.removed.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        let pos = match &self.positive {
            Positive::All => p.tag() == self.tag,
            Positive::Gens(c) => c.contains(p),
        };
        pos && !self.removed.contains(p)
    }

    /// Remove further points.
    pub fn without(&self, points: &[Point]) -> Result<RegionDesc> {
        let mut removed = self.removed.clone();
        removed.extend(points.iter().cloned());
        RegionDesc::new(self.tag, self.positive.clone(), removed)
    }

    pub fn union(&self, other: &RegionDesc) -> Result<RegionDesc> {
        self.tag.check(other.tag)?;
        let positive = match (&self.positive, &other.positive) {
            (Positive::All, _) | (_, Positive::All) => Positive::All,
            (Positive::Gens(a), Positive::Gens(b)) => Positive::Gens(a.union(b)?),
        };
        let removed: Vec<Point> = self
            .removed
            .iter()
            .chain(other.removed.iter())
            .filter(|p| !self.contains(p) && !other.contains(p))
            .cloned()
            .collect();
        RegionDesc::new(self.tag, positive, removed)
    }

    pub fn intersection(&self, other: &RegionDesc) -> Result<RegionDesc> {
        self.tag.check(other.tag)?;
        let positive = match (&self.positive, &other.positive) {
            (Positive::All, p) | (p, Positive::All) => p.clone(),
            (Positive::Gens(a), Positive::Gens(b)) => Positive::Gens(a.intersection(b)?),
        };
        let mut removed = self.removed.clone();
        removed.extend(other.removed.iter().cloned());
        RegionDesc::new(self.tag, positive, removed)
    }
}

impl fmt::Display for RegionDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.positive {
            Positive::All => f.write_str("ALL")?,
            Positive::Gens(c) => write!(f, "{c}")?,
        }
        if !self.removed.is_empty() {
            let pts: Vec<String> = self.removed.iter().map(|p| p.to_string()).collect();
            write!(f, "\\{{{}}}", pts.join(","))?;
        }
        Ok(())
    }
}

/// A finite union of rectangles `B_n × C_n`, `B_n` clopen in `2^ω`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RectangleList {
    pub rects: Vec<(ClopenSet, RegionDesc)>,
}

impl RectangleList {
    pub fn new(rects: Vec<(ClopenSet, RegionDesc)>) -> Result<Self> {
        if let Some((_, first)) = rects.first() {
            for (b, c) in &rects {
                SpaceTag::Cantor.check(b.tag())?;
                first.tag().check(c.tag())?;
            }
        }
        Ok(RectangleList { rects })
    }

    /// `U_x`, computed from the definition.
    pub fn section(&self, x: &Periodic<u8>) -> Result<RegionDesc> {
        let tag = self
            .rects
            .first()
            .map(|(_, c)| c.tag())
            .ok_or_else(|| Error::InvalidInput("empty rectangle list".into()))?;
        let px = Point::Cantor(x.clone());
        let mut acc = RegionDesc::empty(tag);
        for (b, c) in &self.rects {
            if b.contains(&px) {
                acc = acc.union(c)?;
            }
        }
        Ok(acc)
    }
}

/// The regions `C_n` of a rectangle list; the section at `x` is the union of
/// the `C_n` whose `B_n` contains `x`.
pub fn basis_from_universal(u: &RectangleList) -> Result<Vec<RegionDesc>> {
    if u.rects.is_empty() {
        return Err(Error::InvalidInput("empty rectangle list".into()));
    }
    Ok(u.rects.iter().map(|(_, c)| c.clone()).collect())
}

/// Union of the selected regions over the parameter `x`.
pub fn union_of_selected(u: &RectangleList, basis: &[RegionDesc], x: &Periodic<u8>) -> Result<RegionDesc> {
    let tag = basis
        .first()
        .map(|c| c.tag())
        .ok_or_else(|| Error::InvalidInput("empty basis".into()))?;
    let px = Point::Cantor(x.clone());
    let mut acc = RegionDesc::empty(tag);
    for ((b, _), c) in u.rects.iter().zip(basis) {
        if b.contains(&px) {
            acc = acc.union(c)?;
        }
    }
    Ok(acc)
}
