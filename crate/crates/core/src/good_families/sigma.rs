use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{BasisRule, CheckVerdict, UnionVerdict};
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::{ceil_int, half, height, int, least_height_between, pow2, q, rationals_up_to_height, Q};
use crate::spaces::{Bits, ClopenSet, Cylinder, Point, Positive, RatInterval, RegionDesc, SpaceTag};
use crate::stream::Periodic;

/// `G_U = {b : cl(b) ⊆ U}` over `ℚ × 2^ω`, basic sets `(I ∩ ℚ) × [s]`.
#[derive(Clone)]
pub struct SigmaFamily {
    region: RegionDesc,
    custom: Option<BasisRule>,
}

impl SigmaFamily {
    pub fn with_rule(&self, f: impl Fn(&Cylinder) -> bool + Send + Sync + 'static) -> Self {
        SigmaFamily {
            region: self.region.clone(),
            custom: Some(Arc::new(f)),
        }
    }

    pub fn region(&self) -> &RegionDesc {
        &self.region
    }

    pub fn member(&self, b: &Cylinder) -> bool {
        if b.tag() != SpaceTag::RationalsCantor {
            return false;
        }
        match &self.custom {
            Some(f) => f(b),
            None => sigma_closure_within(b, &self.region),
        }
    }
}

impl fmt::Debug for SigmaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SigmaFamily({}{})", self.region, if self.custom.is_some() { ", custom" } else { "" })
    }
}

impl fmt::Display for SigmaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G[{}]", self.region)
    }
}

fn parts(b: &Cylinder) -> Option<(&RatInterval, &Bits)> {
    match b {
        Cylinder::RationalCantor { interval, word } => Some((interval, word)),
        _ => None,
    }
}

/// Words `w` of the pieces `(J, w)` with `x ∈ J`.
fn fibre<'a>(pieces: impl Iterator<Item = &'a Cylinder>, x: &Q) -> ClopenSet {
    let words = pieces
        .filter_map(parts)
        .filter(|(j, _)| j.contains(x))
        .map(|(_, w)| Cylinder::Cantor(w.clone()))
        .collect();
    ClopenSet::normalize(SpaceTag::Cantor, words).expect("cantor words")
}

fn word_set(s: &Bits) -> ClopenSet {
    ClopenSet::normalize(SpaceTag::Cantor, vec![Cylinder::Cantor(s.clone())]).expect("cantor word")
}

/// Whether `{x} × [s] ⊆ U`.
fn slice_within(u: &RegionDesc, x: &Q, s: &Bits) -> bool {
    let covered = match u.positive() {
        Positive::All => true,
        Positive::Gens(c) => word_set(s).subset_of(&fibre(c.generators().iter(), x)).unwrap_or(false),
    };
    covered
        && !u
            .removed()
            .iter()
            .any(|p| matches!(p, Point::RationalCantor(y, z) if y == x && z.extends(&s.0)))
}

/// Whether `cl(b) = ([lo, hi] ∩ ℚ) × [s]` lies in `U`. The fibre of `U` is
/// constant between consecutive endpoints, so endpoints and one point per
/// gap decide it.
pub fn sigma_closure_within(b: &Cylinder, u: &RegionDesc) -> bool {
    let Some((i, s)) = parts(b) else { return false };
    let mut cuts = vec![i.lo, i.hi];
    if let Positive::Gens(c) = u.positive() {
        for (j, _) in c.generators().iter().filter_map(parts) {
            for x in [j.lo, j.hi] {
                if i.lo < x && x < i.hi {
                    cuts.push(x);
                }
            }
        }
    }
    for p in u.removed() {
        if let Point::RationalCantor(x, _) = p {
            if i.lo < *x && *x < i.hi {
                cuts.push(*x);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mids: Vec<Q> = cuts.windows(2).map(|w| (w[0] + w[1]) / int(2)).collect();
    cuts.iter().chain(&mids).all(|x| slice_within(u, x, s))
}

pub fn sigma_encode_open(u: &RegionDesc) -> Result<SigmaFamily> {
    if u.tag() != SpaceTag::RationalsCantor {
        return Err(Error::TagMismatch {
            expected: SpaceTag::RationalsCantor,
            found: u.tag(),
        });
    }
    Ok(SigmaFamily {
        region: u.clone(),
        custom: None,
    })
}

/// Search `(x - 2^{-k}, x + 2^{-k}) × [y↾k]`, `k <= budget`, for a member.
pub fn sigma_union_member(g: &SigmaFamily, x: &Q, y: &Periodic<u8>, budget: usize) -> UnionVerdict {
    for k in 0..=budget {
        let r = int(1) / pow2(k as u32);
        let b = Cylinder::RationalCantor {
            interval: RatInterval::new(x - r, x + r).expect("r > 0"),
            word: Bits(y.truncate(k)),
        };
        if g.member(&b) {
            return UnionVerdict::In(b);
        }
    }
    UnionVerdict::OutAtBudget(budget)
}

/// Check the σ-compact goodness condition on a fragment at stage `n`:
/// members have `cl(b) ∩ K_n` inside the region, and a non-member never has
/// `cl(b) ∩ K_n` covered by the members of the fragment. Coverage only grows
/// as `n` shrinks, so stage `n` decides every stage up to `n`.
pub fn sigma_goodness_check(g: &SigmaFamily, fragment: &[Cylinder], n: u128) -> CheckVerdict {
    let k_n = rationals_up_to_height(n);
    let members: Vec<&Cylinder> = fragment.iter().filter(|b| g.member(b)).collect();
    for b in fragment {
        let Some((i, s)) = parts(b) else { continue };
        let slice: Vec<&Q> = k_n.iter().filter(|x| i.closure_contains(x)).collect();
        if g.member(b) {
            if let Some(x) = slice.iter().find(|x| !slice_within(&g.region, x, s)) {
                return CheckVerdict::Fail {
                    witness: b.clone(),
                    reason: format!("member whose closure leaves the region at {}", crate::rational::show(x)),
                };
            }
        } else {
            let target = word_set(s);
            let covered = slice.iter().all(|x| {
                target
                    .subset_of(&fibre(members.iter().copied(), x))
                    .unwrap_or(false)
            });
            if covered {
                return CheckVerdict::Fail {
                    witness: b.clone(),
                    reason: format!("closure ∩ K_{n} covered by members but not a member"),
                };
            }
        }
    }
    CheckVerdict::PassAt(n as usize)
}

/// Basic sets `(a, b) × [s]` with `a < b` taken from `endpoints` and `|s| <= len`.
pub fn rational_cantor_fragment(endpoints: &[Q], len: usize) -> Vec<Cylinder> {
    let mut pts = endpoints.to_vec();
    pts.sort();
    pts.dedup();
    let mut out = Vec::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            for w in Bits::all_up_to(len) {
                out.push(Cylinder::RationalCantor {
                    interval: RatInterval::new(*a, *b).expect("a < b"),
                    word: w,
                });
            }
        }
    }
    out
}

/// Pairwise distinct good families `G_{U_Q}` inside `N(F0, F1)`.
#[derive(Clone, Debug)]
pub struct SigmaSplit {
    pub families: Vec<SigmaFamily>,
    /// `u_j ∈ cl(c_j) ∖ ⋃ cl(b_i)` for each forbidden `c_j`.
    pub u: Vec<Point>,
    /// `Z = {(m, 0^ω) : m > bound}`.
    pub bound: i128,
}

/// Least-height point of `cl(c) ∖ ⋃ cl(b_i)`, the cantor coordinate the
/// least point of the remaining fibre.
fn escape(c: &Cylinder, f0: &[Cylinder]) -> Option<Point> {
    let (i, s) = parts(c)?;
    let mut cuts = vec![i.lo, i.hi];
    for (j, _) in f0.iter().filter_map(parts) {
        for x in [j.lo, j.hi] {
            if i.lo < x && x < i.hi {
                cuts.push(x);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut cands: Vec<Q> = cuts.clone();
    for w in cuts.windows(2) {
        cands.extend(least_height_between(&w[0], &w[1]));
    }
    cands.sort_by_key(|x| (height(x), *x));
    for x in cands {
        let taken = ClopenSet::normalize(
            SpaceTag::Cantor,
            f0.iter()
                .filter_map(parts)
                .filter(|(j, _)| j.closure_contains(&x))
                .map(|(_, w)| Cylinder::Cantor(w.clone()))
                .collect(),
        )
        .expect("cantor words");
        let rest = word_set(s).difference(&taken).expect("cantor");
        if let Some(w) = rest.words().into_iter().min() {
            return Some(Point::RationalCantor(x, Periodic::padded(w.0, 0)));
        }
    }
    None
}

/// `U_Q = ((-(M+1), M+1/2) × 2^ω ∖ {u_j}) ∪ ⋃_{m ∈ Q} (m - 1/2, m + 1/2) × 2^ω`,
/// `M` bounding every endpoint in absolute value, so that `U_Q ∩ Z = Q`.
pub fn sigma_family_split(f0: &[Cylinder], f1: &[Cylinder], qs: &[BTreeSet<i128>]) -> Result<SigmaSplit> {
    for b in f0.iter().chain(f1) {
        if b.tag() != SpaceTag::RationalsCantor {
            return Err(Error::TagMismatch {
                expected: SpaceTag::RationalsCantor,
                found: b.tag(),
            });
        }
    }
    for (j, qj) in qs.iter().enumerate() {
        if qs[..j].contains(qj) {
            return Err(Error::DuplicateQ(j));
        }
    }
    let mut u = Vec::new();
    for c in f1 {
        match escape(c, f0) {
            Some(p) => u.push(p),
            None => {
                let f0s: Vec<String> = f0.iter().map(|b| b.to_string()).collect();
                return Err(Error::InconsistentNeighborhood(format!(
                    "cl({c}) ⊆ cl({})",
                    f0s.join(" ∪ ")
                )));
            }
        }
    }
    let bound = f0
        .iter()
        .chain(f1)
        .filter_map(parts)
        .map(|(i, _)| ceil_int(&i.lo.abs()).max(ceil_int(&i.hi.abs())))
        .max()
        .unwrap_or(0);
    let mut families = Vec::new();
    for qset in qs {
        if let Some(m) = qset.iter().find(|m| **m <= bound) {
            return Err(Error::InvalidInput(format!("{m} is not in Z (needs m > {bound})")));
        }
        let mut gens = vec![Cylinder::RationalCantor {
            interval: RatInterval::new(-int(bound + 1), int(bound) + half())?,
            word: Bits::empty(),
        }];
        for m in qset {
            gens.push(Cylinder::RationalCantor {
                interval: RatInterval::new(int(*m) - half(), int(*m) + half())?,
                word: Bits::empty(),
            });
        }
        let region = RegionDesc::from_cylinders(SpaceTag::RationalsCantor, gens)?.without(&u)?;
        families.push(sigma_encode_open(&region)?);
    }
    Ok(SigmaSplit { families, u, bound })
}

/// A basic set in exactly one of `G_{U_a}`, `G_{U_b}`: a small interval
/// around the least integer in the symmetric difference.
pub fn sigma_distinct_witness(a: &BTreeSet<i128>, b: &BTreeSet<i128>) -> Option<Cylinder> {
    let m = a.symmetric_difference(b).min()?;
    Some(Cylinder::RationalCantor {
        interval: RatInterval::new(int(*m) - q(1, 4), int(*m) + q(1, 4)).expect("nonempty"),
        word: Bits::empty(),
    })
}
