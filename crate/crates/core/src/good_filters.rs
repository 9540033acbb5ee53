//! Open subsets of countable non-compact spaces coded by good filters on the
//! poset of conditions `(B, F)`: `B` basic, `F` finite, `B ∩ F = ∅`, ordered
//! by `p <= q` iff `B_q ⊆ B_p` and `F_q ⊆ F_p`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{ceil_int, floor_int, int, pow2, q, rationals_in_height_order, show, Q};
use crate::spaces::{Cylinder, Point, Positive, RegionDesc, SpaceTag};
use crate::stream::Periodic;

/// A countable metric space with a basis closed under finite unions whose
/// members all have infinite complement.
pub trait CountableSpace: Send + Sync {
    type Pt: Clone + Ord + fmt::Debug + fmt::Display + Send + Sync;
    type Basic: Clone + fmt::Debug + fmt::Display + Send + Sync;
    type Region: Clone + fmt::Debug + fmt::Display + Send + Sync;

    fn tag(&self) -> SpaceTag;
    fn empty_basic(&self) -> Self::Basic;
    fn union(&self, a: &Self::Basic, b: &Self::Basic) -> Self::Basic;
    fn basic_contains(&self, b: &Self::Basic, x: &Self::Pt) -> bool;
    fn basic_subset(&self, a: &Self::Basic, b: &Self::Basic) -> bool;
    /// The `i`-th point in the canonical order.
    fn point(&self, i: usize) -> Self::Pt;
    /// A basic neighbourhood of `x`, shrinking to `{x}` as `k` grows.
    fn ball(&self, x: &Self::Pt, k: u32) -> Self::Basic;
    fn region_contains(&self, u: &Self::Region, x: &Self::Pt) -> bool;
    fn basic_within(&self, b: &Self::Basic, u: &Self::Region) -> bool;
    /// Some point of `b ∖ u`.
    fn point_outside(&self, b: &Self::Basic, u: &Self::Region) -> Option<Self::Pt>;
    /// A `k` with `ball(x, k) ⊆ u` whenever `x ∈ u`.
    fn radius_exponent(&self, u: &Self::Region, x: &Self::Pt) -> u32;
}

/// The discrete space `ω`; basic sets are the finite sets, regions are
/// characteristic words.
#[derive(Clone, Copy, Debug, Default)]
pub struct OmegaSpace;

/// A finite subset of `ω`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OmegaSet(pub BTreeSet<u64>);

impl OmegaSet {
    pub fn of(v: impl IntoIterator<Item = u64>) -> Self {
        OmegaSet(v.into_iter().collect())
    }
}

impl fmt::Display for OmegaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// The characteristic word of a subset of `ω`, e.g. `(10)` for the evens.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OmegaRegion(pub Periodic<u8>);

impl OmegaRegion {
    pub fn finite(v: impl IntoIterator<Item = u64>) -> Self {
        let set: BTreeSet<u64> = v.into_iter().collect();
        let len = set.iter().next_back().map_or(0, |m| m + 1);
        let word = (0..len).map(|i| set.contains(&i) as u8).collect();
        OmegaRegion(Periodic::padded(word, 0))
    }

    pub fn from_region(r: &RegionDesc) -> Result<Self> {
        if r.tag() != SpaceTag::Omega {
            return Err(Error::TagMismatch {
                expected: SpaceTag::Omega,
                found: r.tag(),
            });
        }
        Ok(match r.positive() {
            Positive::All => OmegaRegion(Periodic::constant(1)),
            Positive::Gens(c) => OmegaRegion::finite(c.generators().iter().flat_map(|g| match g {
                Cylinder::Omega(s) => s.iter().copied().collect::<Vec<_>>(),
                _ => Vec::new(),
            })),
        })
    }

    pub fn contains(&self, n: u64) -> bool {
        self.0.letter(n as usize) == 1
    }
}

impl fmt::Display for OmegaRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl CountableSpace for OmegaSpace {
    type Pt = u64;
    type Basic = OmegaSet;
    type Region = OmegaRegion;

    fn tag(&self) -> SpaceTag {
        SpaceTag::Omega
    }

    fn empty_basic(&self) -> OmegaSet {
        OmegaSet::default()
    }

    fn union(&self, a: &OmegaSet, b: &OmegaSet) -> OmegaSet {
        OmegaSet(a.0.union(&b.0).copied().collect())
    }

    fn basic_contains(&self, b: &OmegaSet, x: &u64) -> bool {
        b.0.contains(x)
    }

    fn basic_subset(&self, a: &OmegaSet, b: &OmegaSet) -> bool {
        a.0.is_subset(&b.0)
    }

    fn point(&self, i: usize) -> u64 {
        i as u64
    }

    fn ball(&self, x: &u64, _: u32) -> OmegaSet {
        OmegaSet::of([*x])
    }

    fn region_contains(&self, u: &OmegaRegion, x: &u64) -> bool {
        u.contains(*x)
    }

    fn basic_within(&self, b: &OmegaSet, u: &OmegaRegion) -> bool {
        b.0.iter().all(|x| u.contains(*x))
    }

    fn point_outside(&self, b: &OmegaSet, u: &OmegaRegion) -> Option<u64> {
        b.0.iter().copied().find(|x| !u.contains(*x))
    }

    fn radius_exponent(&self, _: &OmegaRegion, _: &u64) -> u32 {
        0
    }
}

/// `(lo, hi) ∩ ℚ` minus the integers above `cutoff`; a missing endpoint is infinite.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatPiece {
    pub lo: Option<Q>,
    pub hi: Option<Q>,
    pub cutoff: Option<i128>,
}

impl RatPiece {
    pub fn new(lo: Option<Q>, hi: Option<Q>, cutoff: Option<i128>) -> Result<Self> {
        if let (Some(a), Some(b)) = (&lo, &hi) {
            if a >= b {
                return Err(Error::InvalidInput("piece needs lo < hi".into()));
            }
        }
        if hi.is_none() && cutoff.is_none() {
            return Err(Error::InvalidInput(
                "an upward unbounded piece needs an integer cutoff".into(),
            ));
        }
        Ok(RatPiece { lo, hi, cutoff })
    }

    pub fn interval(lo: Q, hi: Q) -> Result<Self> {
        RatPiece::new(Some(lo), Some(hi), None)
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.lo.is_none_or(|a| a < *x)
            && self.hi.is_none_or(|b| *x < b)
            && !(x.is_integer() && self.cutoff.is_some_and(|c| x.to_integer() > c))
    }

    fn critical(&self, out: &mut Vec<Q>) {
        out.extend(self.lo);
        out.extend(self.hi);
        if let Some(c) = self.cutoff {
            out.push(int(c));
            out.push(int(c + 1));
        }
    }
}

impl fmt::Display for RatPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lo.as_ref().map_or("-inf".into(), show);
        let hi = self.hi.as_ref().map_or("inf".into(), show);
        write!(f, "({lo},{hi})")?;
        if let Some(c) = self.cutoff {
            write!(f, "\\Z>{c}")?;
        }
        Ok(())
    }
}

/// A finite union of pieces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RatBasic(pub Vec<RatPiece>);

impl RatBasic {
    pub fn new(mut pieces: Vec<RatPiece>) -> Self {
        pieces.sort();
        pieces.dedup();
        RatBasic(pieces)
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.0.iter().any(|p| p.contains(x))
    }
}

impl fmt::Display for RatBasic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let v: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&v.join("∪"))
    }
}

/// The rationals with the canonical order by height, then value.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalSpace;

/// Points deciding any statement `∀x (x ∈ A → x ∈ B)` for sets whose
/// membership only changes at the given critical points: the points
/// themselves, plus one non-integer and one integer (when present) inside
/// each gap, including the two unbounded gaps.
fn sample_points(mut crit: Vec<Q>) -> Vec<Q> {
    crit.sort();
    crit.dedup();
    let mut out = crit.clone();
    if crit.is_empty() {
        return vec![int(0), q(1, 2)];
    }
    let first = crit[0];
    let last = crit[crit.len() - 1];
    out.push(int(floor_int(&first) - 1));
    out.push(int(floor_int(&first) - 1) - q(1, 2));
    out.push(int(ceil_int(&last) + 1));
    out.push(int(ceil_int(&last) + 1) + q(1, 2));
    for w in crit.windows(2) {
        let (a, b) = (w[0], w[1]);
        let least_int = int(floor_int(&a) + 1);
        if least_int < b {
            out.push(least_int);
        }
        let mut d: i128 = 2;
        loop {
            let x = a + (b - a) / int(d);
            if !x.is_integer() {
                out.push(x);
                break;
            }
            d += 1;
        }
    }
    out
}

fn region_critical(u: &RegionDesc, out: &mut Vec<Q>) {
    if let Positive::Gens(c) = u.positive() {
        for g in c.generators() {
            if let Cylinder::Rational(i) = g {
                out.push(i.lo);
                out.push(i.hi);
            }
        }
    }
    for p in u.removed() {
        if let Point::Rational(x) = p {
            out.push(*x);
        }
    }
}

impl CountableSpace for RationalSpace {
    type Pt = Q;
    type Basic = RatBasic;
    type Region = RegionDesc;

    fn tag(&self) -> SpaceTag {
        SpaceTag::Rationals
    }

    fn empty_basic(&self) -> RatBasic {
        RatBasic::default()
    }

    fn union(&self, a: &RatBasic, b: &RatBasic) -> RatBasic {
        RatBasic::new(a.0.iter().chain(&b.0).cloned().collect())
    }

    fn basic_contains(&self, b: &RatBasic, x: &Q) -> bool {
        b.contains(x)
    }

    fn basic_subset(&self, a: &RatBasic, b: &RatBasic) -> bool {
        let mut crit = Vec::new();
        for p in a.0.iter().chain(&b.0) {
            p.critical(&mut crit);
        }
        sample_points(crit)
            .iter()
            .all(|x| !a.contains(x) || b.contains(x))
    }

    fn point(&self, i: usize) -> Q {
        rationals_in_height_order().nth(i).expect("infinite enumeration")
    }

    fn ball(&self, x: &Q, k: u32) -> RatBasic {
        let r = int(1) / pow2(k);
        RatBasic::new(vec![RatPiece::interval(x - r, x + r).expect("r > 0")])
    }

    fn region_contains(&self, u: &RegionDesc, x: &Q) -> bool {
        u.contains(&Point::Rational(*x))
    }

    fn basic_within(&self, b: &RatBasic, u: &RegionDesc) -> bool {
        self.point_outside(b, u).is_none()
    }

    fn point_outside(&self, b: &RatBasic, u: &RegionDesc) -> Option<Q> {
        let mut crit = Vec::new();
        for p in &b.0 {
            p.critical(&mut crit);
        }
        region_critical(u, &mut crit);
        sample_points(crit)
            .into_iter()
            .find(|x| b.contains(x) && !u.contains(&Point::Rational(*x)))
    }

    fn radius_exponent(&self, u: &RegionDesc, x: &Q) -> u32 {
        let mut crit = Vec::new();
        region_critical(u, &mut crit);
        let gap = crit
            .iter()
            .filter(|c| *c != x)
            .map(|c| (c - x).abs_value())
            .min()
            .unwrap_or_else(|| int(1));
        (0..).find(|k| int(1) / pow2(*k) < gap).expect("gap > 0")
    }
}

trait AbsValue {
    fn abs_value(&self) -> Self;
}

impl AbsValue for Q {
    fn abs_value(&self) -> Q {
        if *self < int(0) {
            -*self
        } else {
            *self
        }
    }
}

/// A condition `(B, F)` with `B ∩ F = ∅`.
pub struct Condition<S: CountableSpace> {
    pub b: S::Basic,
    pub f: BTreeSet<S::Pt>,
}

impl<S: CountableSpace> Clone for Condition<S> {
    fn clone(&self) -> Self {
        Condition {
            b: self.b.clone(),
            f: self.f.clone(),
        }
    }
}

impl<S: CountableSpace> fmt::Debug for Condition<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: CountableSpace> fmt::Display for Condition<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.f.iter().map(|x| x.to_string()).collect();
        write!(f, "({}, {{{}}})", self.b, pts.join(","))
    }
}

impl<S: CountableSpace> Condition<S> {
    pub fn new(space: &S, b: S::Basic, f: impl IntoIterator<Item = S::Pt>) -> Result<Self> {
        let f: BTreeSet<S::Pt> = f.into_iter().collect();
        if let Some(x) = f.iter().find(|x| space.basic_contains(&b, x)) {
            return Err(Error::InvalidInput(format!("{x} lies in both B and F")));
        }
        Ok(Condition { b, f })
    }

    /// The top element `(∅, ∅)`.
    pub fn top(space: &S) -> Self {
        Condition {
            b: space.empty_basic(),
            f: BTreeSet::new(),
        }
    }
}

/// How two conditions compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PosetRelation {
    Equal,
    /// `p <= q`
    Leq,
    /// `q <= p`
    Geq,
    Incompatible,
    Compatible,
}

fn leq<S: CountableSpace>(space: &S, p: &Condition<S>, q: &Condition<S>) -> bool {
    space.basic_subset(&q.b, &p.b) && q.f.is_subset(&p.f)
}

pub fn poset_relate<S: CountableSpace>(space: &S, p: &Condition<S>, q: &Condition<S>) -> PosetRelation {
    let pq = leq(space, p, q);
    let qp = leq(space, q, p);
    if pq && qp {
        PosetRelation::Equal
    } else if pq {
        PosetRelation::Leq
    } else if qp {
        PosetRelation::Geq
    } else if incompatible(space, p, q) {
        PosetRelation::Incompatible
    } else {
        PosetRelation::Compatible
    }
}

/// `(B_p ∪ B_q) ∩ (F_p ∪ F_q) ≠ ∅`; otherwise `(B_p ∪ B_q, F_p ∪ F_q)` is a common extension.
fn incompatible<S: CountableSpace>(space: &S, p: &Condition<S>, q: &Condition<S>) -> bool {
    let b = space.union(&p.b, &q.b);
    p.f.iter().chain(&q.f).any(|x| space.basic_contains(&b, x))
}

fn meet<S: CountableSpace>(space: &S, p: &Condition<S>, q: &Condition<S>) -> Option<Condition<S>> {
    if incompatible(space, p, q) {
        return None;
    }
    Some(Condition {
        b: space.union(&p.b, &q.b),
        f: p.f.union(&q.f).cloned().collect(),
    })
}

type ConditionRule<S> = Arc<dyn Fn(&Condition<S>) -> bool + Send + Sync>;

/// `G_U = {p : B_p ⊆ U and F_p ∩ U = ∅}`, or a hand-written rule.
pub struct FilterDesc<S: CountableSpace> {
    pub space: S,
    pub region: S::Region,
    custom: Option<ConditionRule<S>>,
}

impl<S: CountableSpace + Clone> Clone for FilterDesc<S> {
    fn clone(&self) -> Self {
        FilterDesc {
            space: self.space.clone(),
            region: self.region.clone(),
            custom: self.custom.clone(),
        }
    }
}

impl<S: CountableSpace> fmt::Debug for FilterDesc<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FilterDesc({}{})", self.region, if self.custom.is_some() { ", custom" } else { "" })
    }
}

impl<S: CountableSpace> FilterDesc<S> {
    pub fn with_rule(self, f: impl Fn(&Condition<S>) -> bool + Send + Sync + 'static) -> Self {
        FilterDesc {
            custom: Some(Arc::new(f)),
            ..self
        }
    }

    pub fn member(&self, p: &Condition<S>) -> bool {
        match &self.custom {
            Some(f) => f(p),
            None => {
                self.space.basic_within(&p.b, &self.region)
                    && !p.f.iter().any(|x| self.space.region_contains(&self.region, x))
            }
        }
    }
}

pub fn gfil_encode_open<S: CountableSpace>(space: S, u: S::Region) -> FilterDesc<S> {
    FilterDesc {
        space,
        region: u,
        custom: None,
    }
}

/// Verdict for one filter axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomVerdict {
    Pass,
    Fail(String),
}

impl AxiomVerdict {
    pub fn is_pass(&self) -> bool {
        *self == AxiomVerdict::Pass
    }
}

/// Verdicts for axioms (1) upward closure, (2) common refinements,
/// (3) covering and (4) genericity, in that order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport(pub [AxiomVerdict; 4]);

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.0.iter().all(AxiomVerdict::is_pass)
    }
}

/// Check the four filter axioms over a universe of conditions and a set of points.
///
/// Existential quantifiers range over the universe together with the
/// canonical witnesses `(ball(x), ∅)` and `(∅, {x})`.
pub fn gfil_axioms_check<S: CountableSpace>(
    g: &FilterDesc<S>,
    universe: &[Condition<S>],
    points: &[S::Pt],
) -> AxiomReport {
    let s = &g.space;
    let members: Vec<&Condition<S>> = universe.iter().filter(|p| g.member(p)).collect();

    let upward = members
        .iter()
        .find_map(|p| {
            universe
                .iter()
                .find(|q| leq(s, p, q) && !g.member(q))
                .map(|q| format!("{p} in G, {q} above it is not"))
        })
        .map_or(AxiomVerdict::Pass, AxiomVerdict::Fail);

    let mut directed = AxiomVerdict::Pass;
    'outer: for (i, p) in members.iter().enumerate() {
        for q in &members[i..] {
            let ok = meet(s, p, q).is_some_and(|r| g.member(&r));
            if !ok {
                directed = AxiomVerdict::Fail(format!("{p} and {q} have no common refinement in G"));
                break 'outer;
            }
        }
    }

    let witnesses = |x: &S::Pt| -> Vec<Condition<S>> {
        let k = s.radius_exponent(&g.region, x);
        vec![
            Condition {
                b: s.ball(x, k),
                f: BTreeSet::new(),
            },
            Condition {
                b: s.empty_basic(),
                f: BTreeSet::from([x.clone()]),
            },
        ]
    };

    let covering = points
        .iter()
        .find(|x| {
            let hit = |p: &Condition<S>| {
                g.member(p) && (s.basic_contains(&p.b, x) || p.f.contains(*x))
            };
            !members.iter().any(|p| hit(p)) && !witnesses(x).iter().any(hit)
        })
        .map_or(AxiomVerdict::Pass, |x| {
            AxiomVerdict::Fail(format!("no member puts {x} in B ∪ F"))
        });

    let generic = universe
        .iter()
        .find(|p| {
            if g.member(p) {
                return false;
            }
            let blocks = |q: &Condition<S>| g.member(q) && incompatible(s, p, q);
            if members.iter().any(|q| blocks(q)) {
                return false;
            }
            let mut cands: Vec<S::Pt> = p.f.iter().cloned().collect();
            cands.extend(s.point_outside(&p.b, &g.region));
            !cands.iter().flat_map(witnesses).any(|q| blocks(&q))
        })
        .map_or(AxiomVerdict::Pass, |p| {
            AxiomVerdict::Fail(format!("{p} is neither in G nor incompatible with a member"))
        });

    AxiomReport([upward, directed, covering, generic])
}

/// `r = (B_p ∪ ball(x), F_p)` and `q = (B_p, F_p ∪ {x})` for the least `x`
/// outside `B_p ∪ F_p`; both lie below `p` and are incompatible.
pub fn gfil_split_below<S: CountableSpace>(space: &S, p: &Condition<S>) -> (Condition<S>, Condition<S>) {
    let x = (0..)
        .map(|i| space.point(i))
        .find(|x| !space.basic_contains(&p.b, x) && !p.f.contains(x))
        .expect("B is co-infinite and F finite");
    let k = (0..)
        .find(|k| {
            let b = space.ball(&x, *k);
            !p.f.iter().any(|y| space.basic_contains(&b, y))
        })
        .expect("F is finite and avoids x");
    let r = Condition {
        b: space.union(&p.b, &space.ball(&x, k)),
        f: p.f.clone(),
    };
    let mut f = p.f.clone();
    f.insert(x);
    (r, Condition { b: p.b.clone(), f })
}

/// `x ∈ U_G`: whether some member condition has `x ∈ B`. The witness
/// `(ball(x, k), ∅)` with `k` from the region decides it for encoded filters.
pub fn gfil_decode<S: CountableSpace>(g: &FilterDesc<S>, x: &S::Pt) -> bool {
    let k = g.space.radius_exponent(&g.region, x);
    (0..=k).any(|j| {
        g.member(&Condition {
            b: g.space.ball(x, j),
            f: BTreeSet::new(),
        })
    })
}

/// All conditions `(B, F)` with `B, F ⊆ {0..n}` disjoint.
pub fn omega_universe(n: u64) -> Vec<Condition<OmegaSpace>> {
    let mut out = Vec::new();
    let k = n + 1;
    let total = 3u64.pow(k as u32);
    for code in 0..total {
        let mut c = code;
        let mut b = BTreeSet::new();
        let mut f = BTreeSet::new();
        for i in 0..k {
            match c % 3 {
                1 => {
                    b.insert(i);
                }
                2 => {
                    f.insert(i);
                }
                _ => {}
            }
            c /= 3;
        }
        out.push(Condition { b: OmegaSet(b), f });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::parse::parse_region;

    fn oc(b: &[u64], f: &[u64]) -> Condition<OmegaSpace> {
        Condition::new(&OmegaSpace, OmegaSet::of(b.iter().copied()), f.iter().copied()).unwrap()
    }

    #[test]
    fn omega_regions_from_text() {
        assert!(parse_region(SpaceTag::Omega, "ALL\\{3}").is_err());
        let r = OmegaRegion::from_region(&parse_region(SpaceTag::Omega, "ALL").unwrap()).unwrap();
        assert!((0..20).all(|n| r.contains(n)));
        let r = OmegaRegion::from_region(&parse_region(SpaceTag::Omega, "{1,2}").unwrap()).unwrap();
        assert_eq!(r, OmegaRegion::finite([1, 2]));
    }

    fn evens() -> OmegaRegion {
        OmegaRegion(Periodic::new(vec![], vec![1, 0]).unwrap())
    }

    #[test]
    fn relate_examples() {
        let s = OmegaSpace;
        assert_eq!(poset_relate(&s, &oc(&[0, 1], &[]), &oc(&[2], &[0])), PosetRelation::Incompatible);
        assert_eq!(poset_relate(&s, &oc(&[0], &[]), &oc(&[0, 1], &[])), PosetRelation::Geq);
        assert_eq!(poset_relate(&s, &oc(&[], &[]), &oc(&[3], &[4])), PosetRelation::Geq);
        assert_eq!(poset_relate(&s, &oc(&[1], &[]), &oc(&[2], &[])), PosetRelation::Compatible);
        assert!(Condition::new(&s, OmegaSet::of([1]), [1]).is_err());
    }

    #[test]
    fn encode_examples() {
        let first_ten = OmegaRegion::finite((0..10).filter(|n| n % 2 == 0));
        let g = gfil_encode_open(OmegaSpace, first_ten);
        assert!(g.member(&oc(&[0, 2], &[1, 3])));
        assert!(!g.member(&oc(&[0, 1], &[])));
        let e = gfil_encode_open(OmegaSpace, OmegaRegion::finite([]));
        assert!(e.member(&oc(&[], &[0, 5, 9])) && !e.member(&oc(&[1], &[])));
        let u = parse_region(SpaceTag::Rationals, "(0,1)").unwrap();
        let g = gfil_encode_open(RationalSpace, u);
        let p = Condition::new(
            &RationalSpace,
            RatBasic::new(vec![RatPiece::interval(q(1, 4), q(1, 2)).unwrap()]),
            [int(2)],
        )
        .unwrap();
        assert!(g.member(&p));
        let p = Condition::new(&RationalSpace, RatBasic::default(), [q(1, 3)]).unwrap();
        assert!(!g.member(&p));
    }

    #[test]
    fn axioms_examples() {
        let uni = omega_universe(5);
        let pts: Vec<u64> = (0..8).collect();
        let g = gfil_encode_open(OmegaSpace, evens());
        assert!(gfil_axioms_check(&g, &uni, &pts).all_pass());
        let base = gfil_encode_open(OmegaSpace, evens());
        let no_top = gfil_encode_open(OmegaSpace, evens())
            .with_rule(move |p| !(p.b.0.is_empty() && p.f.is_empty()) && base.member(p));
        let r = gfil_axioms_check(&no_top, &uni, &pts);
        assert!(!r.0[0].is_pass());
        let no_seven = gfil_encode_open(OmegaSpace, evens())
            .with_rule(|p| !p.b.0.contains(&7) && !p.f.contains(&7));
        let r = gfil_axioms_check(&no_seven, &uni, &[7]);
        assert!(!r.0[2].is_pass());
    }

    #[test]
    fn split_examples() {
        let s = OmegaSpace;
        let (r, q) = gfil_split_below(&s, &oc(&[], &[]));
        assert_eq!((r.b, r.f), (OmegaSet::of([0]), BTreeSet::new()));
        assert_eq!((q.b, q.f), (OmegaSet::default(), BTreeSet::from([0])));
        let p = oc(&[0], &[1]);
        let (r, q) = gfil_split_below(&s, &p);
        assert_eq!(r.b, OmegaSet::of([0, 2]));
        assert_eq!(q.f, BTreeSet::from([1, 2]));
        assert_eq!(poset_relate(&s, &r, &q), PosetRelation::Incompatible);
        let rs = RationalSpace;
        let p = Condition::new(&rs, RatBasic::new(vec![RatPiece::interval(int(0), int(1)).unwrap()]), []).unwrap();
        let (r, q) = gfil_split_below(&rs, &p);
        assert_eq!(q.f, BTreeSet::from([int(-1)]));
        assert!(rs.basic_contains(&r.b, &int(-1)));
        assert_eq!(poset_relate(&rs, &r, &q), PosetRelation::Incompatible);
    }

    #[test]
    fn decode_examples() {
        let g = gfil_encode_open(OmegaSpace, evens());
        assert!(gfil_decode(&g, &4));
        assert!(!gfil_decode(&g, &3));
        let e = gfil_encode_open(OmegaSpace, OmegaRegion::finite([]));
        assert!(!gfil_decode(&e, &0));
        let u = parse_region(SpaceTag::Rationals, "(0,1)|(1,2)\\{1/2}").unwrap();
        let g = gfil_encode_open(RationalSpace, u.clone());
        for x in crate::rational::rationals_up_to_height(6) {
            assert_eq!(gfil_decode(&g, &x), u.contains(&Point::Rational(x)), "{x}");
        }
    }

    #[test]
    fn rational_subsets() {
        let rs = RationalSpace;
        let tail = RatBasic::new(vec![RatPiece::new(Some(int(0)), None, Some(3)).unwrap()]);
        let bounded = RatBasic::new(vec![RatPiece::interval(int(0), int(10)).unwrap()]);
        assert!(!rs.basic_subset(&bounded, &tail));
        let cut = RatBasic::new(vec![RatPiece::new(Some(int(0)), Some(int(10)), Some(3)).unwrap()]);
        assert!(rs.basic_subset(&cut, &tail) && rs.basic_subset(&cut, &bounded));
        assert!(!rs.basic_contains(&tail, &int(4)) && rs.basic_contains(&tail, &q(9, 2)));
    }
}
