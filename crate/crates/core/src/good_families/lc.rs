use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{BasisRule, CheckVerdict, UnionVerdict};
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::family::{Membership, UniversalFamily};
use crate::rational::{ceil_int, floor_int, int, least_dyadic_between, pow2, Q};
use crate::spaces::{
    Bits, ClopenSet, Cylinder, IntervalUnion, Point, Positive, RatInterval, RegionDesc, SpaceTag,
};
use crate::stream::Periodic;

/// `G_U = {b : cl(b) ⊆ U}` over `ω × 2^ω` or the reals, with an optional
/// hand-written rule in place of the closure test.
#[derive(Clone)]
pub struct GoodSetDesc {
    region: RegionDesc,
    custom: Option<BasisRule>,
}

fn check_lc_tag(tag: SpaceTag) -> Result<()> {
    match tag {
        SpaceTag::OmegaCantor | SpaceTag::RealsDyadic => Ok(()),
        t => Err(Error::UnsupportedOperation(format!(
            "{t} is not a locally compact instance"
        ))),
    }
}

impl GoodSetDesc {
    /// Replace the membership rule, keeping the region for the soundness check.
    pub fn with_rule(&self, f: impl Fn(&Cylinder) -> bool + Send + Sync + 'static) -> Self {
        GoodSetDesc {
            region: self.region.clone(),
            custom: Some(Arc::new(f)),
        }
    }

    pub fn region(&self) -> &RegionDesc {
        &self.region
    }

    pub fn tag(&self) -> SpaceTag {
        self.region.tag()
    }

    pub fn member(&self, b: &Cylinder) -> bool {
        if b.tag() != self.tag() {
            return false;
        }
        match &self.custom {
            Some(f) => f(b),
            None => closure_within(b, &self.region),
        }
    }
}

impl fmt::Debug for GoodSetDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GoodSetDesc({}{})", self.region, if self.custom.is_some() { ", custom" } else { "" })
    }
}

impl fmt::Display for GoodSetDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G[{}]", self.region)
    }
}

/// Whether `cl(b) ⊆ U`; cells of `ω × 2^ω` are their own closures and a
/// dyadic interval `(a, b)` has closure `[a, b]`.
pub fn closure_within(b: &Cylinder, u: &RegionDesc) -> bool {
    match b {
        Cylinder::OmegaCantor { row, word } => {
            let inside = match u.positive() {
                Positive::All => true,
                Positive::Gens(c) => {
                    let cell = ClopenSet::normalize(SpaceTag::OmegaCantor, vec![b.clone()])
                        .expect("one tag");
                    cell.subset_of(c).unwrap_or(false)
                }
            };
            inside
                && !u.removed().iter().any(|p| match p {
                    Point::OmegaCantor(r, x) => r == row && x.extends(&word.0),
                    _ => false,
                })
        }
        Cylinder::Dyadic(i) => {
            let inside = match u.positive() {
                Positive::All => true,
                Positive::Gens(c) => interval_union(c).covers_closed(&i.lo, &i.hi),
            };
            inside
                && !u.removed().iter().any(|p| match p {
                    Point::Real(x) => i.closure_contains(x),
                    _ => false,
                })
        }
        _ => false,
    }
}

pub(crate) fn interval_union(c: &ClopenSet) -> IntervalUnion {
    IntervalUnion::new(
        c.generators()
            .iter()
            .filter_map(|g| match g {
                Cylinder::Dyadic(i) | Cylinder::Rational(i) => Some(i.clone()),
                _ => None,
            })
            .collect(),
    )
}

pub fn lc_encode_open(u: &RegionDesc) -> Result<GoodSetDesc> {
    check_lc_tag(u.tag())?;
    Ok(GoodSetDesc {
        region: u.clone(),
        custom: None,
    })
}

/// Tightest dyadic interval with denominator `2^k` containing `y`.
fn tight_dyadic(y: &Q, k: u32) -> RatInterval {
    let scale = pow2(k);
    let t = y * scale;
    let lo = if t.is_integer() {
        t.to_integer() - 1
    } else {
        floor_int(&t)
    };
    let hi = if t.is_integer() {
        t.to_integer() + 1
    } else {
        ceil_int(&t)
    };
    RatInterval::new(int(lo) / scale, int(hi) / scale).expect("lo < hi")
}

/// Search for a member of `G` containing `y` among the basic sets of
/// description size at most `budget`: dyadic intervals with denominator up to
/// `2^budget`, or cells `({n}, [y↾k])` with `k <= budget`.
pub fn family_union_member(g: &GoodSetDesc, y: &Point, budget: usize) -> UnionVerdict {
    for k in 0..=budget {
        let b = match y {
            Point::Real(x) => Cylinder::Dyadic(tight_dyadic(x, k as u32)),
            Point::OmegaCantor(row, x) => Cylinder::OmegaCantor {
                row: *row,
                word: Bits(x.truncate(k)),
            },
            _ => return UnionVerdict::OutAtBudget(budget),
        };
        if g.member(&b) {
            return UnionVerdict::In(b);
        }
    }
    UnionVerdict::OutAtBudget(budget)
}

/// The union of a fragment's members, built once per check.
enum MemberCover {
    Cells(ClopenSet),
    Reals(IntervalUnion),
}

impl MemberCover {
    fn new(members: &[&Cylinder]) -> Self {
        match members.first() {
            Some(Cylinder::OmegaCantor { .. }) => MemberCover::Cells(
                ClopenSet::normalize(
                    SpaceTag::OmegaCantor,
                    members.iter().map(|c| (*c).clone()).collect(),
                )
                .expect("one tag"),
            ),
            _ => MemberCover::Reals(IntervalUnion::new(
                members
                    .iter()
                    .filter_map(|c| match c {
                        Cylinder::Dyadic(j) => Some(j.clone()),
                        _ => None,
                    })
                    .collect(),
            )),
        }
    }

    /// Whether `cl(b)` lies inside the union.
    fn covers(&self, b: &Cylinder) -> bool {
        match (self, b) {
            (MemberCover::Cells(cover), Cylinder::OmegaCantor { .. }) => {
                let cell = ClopenSet::normalize(SpaceTag::OmegaCantor, vec![b.clone()]).expect("one tag");
                cell.subset_of(cover).unwrap_or(false)
            }
            (MemberCover::Reals(cover), Cylinder::Dyadic(i)) => cover.covers_closed(&i.lo, &i.hi),
            _ => false,
        }
    }
}

/// Check goodness on a fragment: members have closure inside the region,
/// and non-members have closure not covered by the members of the fragment.
pub fn lc_goodness_check(g: &GoodSetDesc, fragment: &[Cylinder]) -> CheckVerdict {
    let verdicts: Vec<bool> = fragment.iter().map(|b| g.member(b)).collect();
    let members: Vec<&Cylinder> = fragment.iter().zip(&verdicts).filter(|p| *p.1).map(|p| p.0).collect();
    let cover = MemberCover::new(&members);
    for (b, &is_member) in fragment.iter().zip(&verdicts) {
        if is_member {
            if !closure_within(b, &g.region) {
                return CheckVerdict::Fail {
                    witness: b.clone(),
                    reason: "member whose closure leaves the region".into(),
                };
            }
        } else if cover.covers(b) {
            return CheckVerdict::Fail {
                witness: b.clone(),
                reason: "closure covered by members but not a member".into(),
            };
        }
    }
    CheckVerdict::Pass
}

/// Dyadic intervals `(a/2^k, b/2^k)` with `lo <= a/2^k < b/2^k <= hi`.
pub fn dyadic_fragment(k: u32, lo: &Q, hi: &Q) -> Vec<Cylinder> {
    let scale = pow2(k);
    let first = ceil_int(&(lo * scale));
    let last = floor_int(&(hi * scale));
    let mut out = Vec::new();
    for a in first..=last {
        for b in a + 1..=last {
            out.push(Cylinder::Dyadic(
                RatInterval::new(int(a) / scale, int(b) / scale).expect("a < b"),
            ));
        }
    }
    out
}

/// Cells `({n}, [s])` with `n < rows` and `|s| <= len`.
pub fn omega_cantor_fragment(rows: u64, len: usize) -> Vec<Cylinder> {
    (0..rows)
        .flat_map(|row| {
            Bits::all_up_to(len)
                .into_iter()
                .map(move |word| Cylinder::OmegaCantor { row, word })
        })
        .collect()
}

/// Two distinct good families inside `N(F0, F1)`.
#[derive(Clone, Debug)]
pub struct LcSplit {
    pub first: GoodSetDesc,
    pub second: GoodSetDesc,
    /// One removed point per forbidden element.
    pub z_b: Vec<Point>,
    /// The point removed from the second region only.
    pub z: Point,
    /// In the first family and not in the second.
    pub witness: Cylinder,
}

/// `U_1 = Y ∖ {z_b : b ∈ F1}`, `U_2 = U_1 ∖ {z}`, with `z_b ∈ cl(b) ∖ cl(⋃F0)`
/// and `z` outside `cl(⋃(F0 ∪ F1))`.
pub fn lc_split_neighborhood(tag: SpaceTag, f0: &[Cylinder], f1: &[Cylinder]) -> Result<LcSplit> {
    check_lc_tag(tag)?;
    for b in f0.iter().chain(f1) {
        if b.tag() != tag {
            return Err(Error::TagMismatch {
                expected: tag,
                found: b.tag(),
            });
        }
    }
    let mut z_b = Vec::new();
    for b in f1 {
        let p = match tag {
            SpaceTag::OmegaCantor => omega_cantor_escape(b, f0),
            _ => real_escape(b, f0),
        };
        match p {
            Some(p) => z_b.push(p),
            None => {
                let f0s: Vec<String> = f0.iter().map(|c| c.to_string()).collect();
                return Err(Error::InconsistentNeighborhood(format!(
                    "cl({b}) ⊆ cl({})",
                    f0s.join(" ∪ ")
                )));
            }
        }
    }
    let (z, witness) = match tag {
        SpaceTag::OmegaCantor => {
            let used: BTreeSet<u64> = f0
                .iter()
                .chain(f1)
                .filter_map(|c| match c {
                    Cylinder::OmegaCantor { row, .. } => Some(*row),
                    _ => None,
                })
                .collect();
            let row = (0..).find(|r| !used.contains(r)).expect("finitely many rows used");
            let zero = Periodic::constant(0u8);
            let k = (0..)
                .find(|&k| {
                    let word = zero.truncate(k);
                    !z_b.iter().any(|p| matches!(p, Point::OmegaCantor(r, x) if *r == row && x.extends(&word)))
                })
                .expect("z differs from every z_b");
            (
                Point::OmegaCantor(row, zero.clone()),
                Cylinder::OmegaCantor {
                    row,
                    word: Bits(zero.truncate(k)),
                },
            )
        }
        _ => {
            let top = f0
                .iter()
                .chain(f1)
                .filter_map(|c| match c {
                    Cylinder::Dyadic(i) => Some(i.hi),
                    _ => None,
                })
                .max()
                .unwrap_or_else(|| int(0));
            let zq = int(floor_int(&top) + 1);
            let w = (0u32..)
                .map(|k| tight_dyadic(&zq, k))
                .find(|i| !z_b.iter().any(|p| matches!(p, Point::Real(x) if i.closure_contains(x))))
                .expect("z differs from every z_b");
            (Point::Real(zq), Cylinder::Dyadic(w))
        }
    };
    let u1 = RegionDesc::all(tag).without(&z_b)?;
    let u2 = u1.without(std::slice::from_ref(&z))?;
    Ok(LcSplit {
        first: lc_encode_open(&u1)?,
        second: lc_encode_open(&u2)?,
        z_b,
        z,
        witness,
    })
}

/// Least point of the cell `b` outside the cells of `f0`.
fn omega_cantor_escape(b: &Cylinder, f0: &[Cylinder]) -> Option<Point> {
    let Cylinder::OmegaCantor { row, word } = b else {
        return None;
    };
    let cell = ClopenSet::normalize(SpaceTag::Cantor, vec![Cylinder::Cantor(word.clone())]).ok()?;
    let taken = ClopenSet::normalize(
        SpaceTag::Cantor,
        f0.iter()
            .filter_map(|c| match c {
                Cylinder::OmegaCantor { row: r, word } if r == row => {
                    Some(Cylinder::Cantor(word.clone()))
                }
                _ => None,
            })
            .collect(),
    )
    .ok()?;
    let rest = cell.difference(&taken).ok()?;
    let w = rest.words().into_iter().min()?;
    Some(Point::OmegaCantor(*row, Periodic::padded(w.0, 0)))
}

/// Dyadic of least denominator inside `cl(b) ∖ cl(⋃f0)`.
fn real_escape(b: &Cylinder, f0: &[Cylinder]) -> Option<Point> {
    let Cylinder::Dyadic(i) = b else {
        return None;
    };
    let mut cuts: Vec<Q> = vec![i.lo, i.hi];
    let closed: Vec<(Q, Q)> = f0
        .iter()
        .filter_map(|c| match c {
            Cylinder::Dyadic(j) => Some((j.lo, j.hi)),
            _ => None,
        })
        .collect();
    for (a, c) in &closed {
        for x in [a, c] {
            if i.lo < *x && *x < i.hi {
                cuts.push(*x);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut best: Option<Q> = None;
    for w in cuts.windows(2) {
        let mid = (w[0] + w[1]) / int(2);
        if closed.iter().any(|(a, c)| *a <= mid && mid <= *c) {
            continue;
        }
        let cand = least_dyadic_between(&w[0], &w[1]).expect("nonempty segment");
        let key = |x: &Q| (*x.denom(), x.abs(), *x);
        if best.as_ref().is_none_or(|b| key(&cand) < key(b)) {
            best = Some(cand);
        }
    }
    best.map(Point::Real)
}

/// The family `{(G, y) : ∃ b ∈ G, y ∈ b}` over a locally compact instance.
#[derive(Clone, Copy, Debug)]
pub struct LcFamily {
    pub tag: SpaceTag,
}

impl UniversalFamily for LcFamily {
    type Param = GoodSetDesc;
    type Point = Point;
    type Set = RegionDesc;

    fn member(&self, g: &GoodSetDesc, y: &Point, depth: usize) -> Result<Membership> {
        if y.tag() != self.tag {
            return Err(Error::TagMismatch {
                expected: self.tag,
                found: y.tag(),
            });
        }
        Ok(match family_union_member(g, y, depth) {
            UnionVerdict::In(_) => Membership::In,
            UnionVerdict::OutAtBudget(_) if g.custom.is_none() && !g.region.contains(y) => {
                Membership::Out
            }
            UnionVerdict::OutAtBudget(_) => Membership::Unknown { depth },
        })
    }

    fn encode(&self, u: &RegionDesc) -> Result<GoodSetDesc> {
        lc_encode_open(u)
    }
}
