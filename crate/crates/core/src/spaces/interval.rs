use crate::error::{Error, Result};
use crate::rational::{show, Q};

/// An open interval `(lo, hi)` with rational endpoints, `lo < hi`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RatInterval {
    pub lo: Q,
    pub hi: Q,
}

impl RatInterval {
    pub fn new(lo: Q, hi: Q) -> Result<Self> {
        if lo < hi {
            Ok(RatInterval { lo, hi })
        } else {
            Err(Error::InvalidInput(format!(
                "empty interval ({}, {})",
                show(&lo),
                show(&hi)
            )))
        }
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.lo < *x && *x < self.hi
    }

    /// Whether the closure `[lo, hi]` contains `x`.
    pub fn closure_contains(&self, x: &Q) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn intersect(&self, other: &RatInterval) -> Option<RatInterval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo < hi).then_some(RatInterval { lo, hi })
    }

    pub fn within(&self, other: &RatInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn midpoint(&self) -> Q {
        (self.lo + self.hi) / Q::from_integer(2)
    }
}

/// A finite union of open intervals in canonical form: sorted, pairwise
/// disjoint, overlapping members merged. Members may touch at an endpoint
/// (that endpoint is not in the union).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct IntervalUnion(Vec<RatInterval>);

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion(Vec::new())
    }

    pub fn new(mut parts: Vec<RatInterval>) -> Self {
        parts.sort();
        let mut out: Vec<RatInterval> = Vec::with_capacity(parts.len());
        for p in parts {
            match out.last_mut() {
                Some(last) if p.lo < last.hi => {
                    if p.hi > last.hi {
                        last.hi = p.hi;
                    }
                }
                _ => out.push(p),
            }
        }
        IntervalUnion(out)
    }

    pub fn parts(&self) -> &[RatInterval] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.0.iter().any(|i| i.contains(x))
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        IntervalUnion::new(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    pub fn intersect(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut parts = Vec::new();
        for a in &self.0 {
            for b in &other.0 {
                if let Some(c) = a.intersect(b) {
                    parts.push(c);
                }
            }
        }
        IntervalUnion::new(parts)
    }

    /// Whether the closed interval `[lo, hi]` lies inside the union.
    pub fn covers_closed(&self, lo: &Q, hi: &Q) -> bool {
        self.0.iter().any(|i| i.lo < *lo && *hi < i.hi)
    }

    /// Whether the open interval `(lo, hi)` lies inside the union.
    pub fn covers_open(&self, lo: &Q, hi: &Q) -> bool {
        self.0.iter().any(|i| i.lo <= *lo && *hi <= i.hi)
    }

    pub fn subset_of(&self, other: &IntervalUnion) -> bool {
        self.0.iter().all(|i| other.covers_open(&i.lo, &i.hi))
    }

    /// Every endpoint of every member, sorted and deduplicated.
    pub fn endpoints(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self.0.iter().flat_map(|i| [i.lo, i.hi]).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Merge members that touch at an endpoint; returns the merged union and
    /// the touching points, which the merged union now contains.
    pub fn merge_touching(&self) -> (IntervalUnion, Vec<Q>) {
        let mut out: Vec<RatInterval> = Vec::new();
        let mut glued = Vec::new();
        for p in &self.0 {
            match out.last_mut() {
                Some(last) if last.hi == p.lo => {
                    glued.push(p.lo);
                    last.hi = p.hi;
                }
                _ => out.push(p.clone()),
            }
        }
        (IntervalUnion(out), glued)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    fn iv(a: Q, b: Q) -> RatInterval {
        RatInterval::new(a, b).unwrap()
    }

    #[test]
    fn merging() {
        let u = IntervalUnion::new(vec![iv(int(0), int(2)), iv(int(1), int(3)), iv(int(3), int(4))]);
        assert_eq!(u.parts(), &[iv(int(0), int(3)), iv(int(3), int(4))]);
        assert!(!u.contains(&int(3)));
        assert!(u.covers_closed(&q(1, 2), &q(5, 2)));
        assert!(!u.covers_closed(&q(1, 2), &int(3)));
        let (m, glued) = u.merge_touching();
        assert_eq!(m.parts(), &[iv(int(0), int(4))]);
        assert_eq!(glued, vec![int(3)]);
        assert!(RatInterval::new(int(1), int(1)).is_err());
    }
}
