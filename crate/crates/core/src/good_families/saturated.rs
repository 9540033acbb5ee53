use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{BasisRule, CheckVerdict, UnionVerdict};
use crate::error::{Error, Result};
use crate::spaces::{Cylinder, Point, Positive, RegionDesc, SpaceTag};
use crate::stream::Periodic;

/// `G = {s ∈ B : [s] ⊆ W}` over the Baire space, `B` the cylinders of
/// length at least one.
#[derive(Clone)]
pub struct SaturatedFamilyDesc {
    region: RegionDesc,
    custom: Option<BasisRule>,
}

impl SaturatedFamilyDesc {
    pub fn with_rule(&self, f: impl Fn(&Cylinder) -> bool + Send + Sync + 'static) -> Self {
        SaturatedFamilyDesc {
            region: self.region.clone(),
            custom: Some(Arc::new(f)),
        }
    }

    pub fn region(&self) -> &RegionDesc {
        &self.region
    }

    pub fn member(&self, s: &Cylinder) -> bool {
        let Cylinder::Baire(w) = s else { return false };
        if w.is_empty() {
            return false;
        }
        match &self.custom {
            Some(f) => f(s),
            None => cylinder_within(w, &self.region),
        }
    }
}

impl fmt::Debug for SaturatedFamilyDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SaturatedFamilyDesc({}{})", self.region, if self.custom.is_some() { ", custom" } else { "" })
    }
}

impl fmt::Display for SaturatedFamilyDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G[{}]", self.region)
    }
}

fn cylinder_within(w: &[u64], u: &RegionDesc) -> bool {
    let covered = match u.positive() {
        Positive::All => true,
        Positive::Gens(c) => c
            .generators()
            .iter()
            .any(|g| matches!(g, Cylinder::Baire(p) if w.starts_with(p))),
    };
    covered
        && !u
            .removed()
            .iter()
            .any(|p| matches!(p, Point::Baire(x) if x.extends(w)))
}

/// `t ◁ s`: `cl(t) ⊆ s` and `diam(t) <= diam(s)/2` under `d(x, y) = 1/(k+1)`,
/// which for cylinders is `t ⊇ s` and `|t| + 1 >= 2(|s| + 1)`.
pub fn refines(t: &[u64], s: &[u64]) -> bool {
    t.starts_with(s) && t.len() + 1 >= 2 * (s.len() + 1)
}

fn baire_words(gens: &[Cylinder]) -> Result<Vec<Vec<u64>>> {
    gens.iter()
        .map(|g| match g {
            Cylinder::Baire(w) if w.is_empty() => Err(Error::BasisViolation(
                "the root cylinder is not a basic set".into(),
            )),
            Cylinder::Baire(w) => Ok(w.clone()),
            other => Err(Error::TagMismatch {
                expected: SpaceTag::Baire,
                found: other.tag(),
            }),
        })
        .collect()
}

pub fn sat_encode_open(w: &RegionDesc) -> Result<SaturatedFamilyDesc> {
    if w.tag() != SpaceTag::Baire {
        return Err(Error::TagMismatch {
            expected: SpaceTag::Baire,
            found: w.tag(),
        });
    }
    match w.positive() {
        Positive::All => {
            return Err(Error::BasisViolation(
                "the root cylinder is not a basic set".into(),
            ))
        }
        Positive::Gens(c) => {
            baire_words(c.generators())?;
        }
    }
    Ok(SaturatedFamilyDesc {
        region: w.clone(),
        custom: None,
    })
}

/// Search `[y↾k]`, `1 <= k <= budget`, for a member containing `y`.
pub fn sat_union_member(g: &SaturatedFamilyDesc, y: &Periodic<u64>, budget: usize) -> UnionVerdict {
    for k in 1..=budget {
        let b = Cylinder::Baire(y.truncate(k));
        if g.member(&b) {
            return UnionVerdict::In(b);
        }
    }
    UnionVerdict::OutAtBudget(budget)
}

/// Check both saturation conditions on a fragment.
///
/// Condition (1) is checked for pairs inside the fragment. Condition (2) is
/// checked for every non-member `s` of the fragment with refinements of length
/// at most `depth`, over the letters occurring in the fragment and the region
/// plus one fresh letter.
pub fn sat_verify_fragment(g: &SaturatedFamilyDesc, fragment: &[Cylinder], depth: usize) -> CheckVerdict {
    let words: Vec<&Vec<u64>> = fragment
        .iter()
        .filter_map(|c| match c {
            Cylinder::Baire(w) if !w.is_empty() => Some(w),
            _ => None,
        })
        .collect();
    for s in &words {
        if !g.member(&Cylinder::Baire((*s).clone())) {
            continue;
        }
        for t in &words {
            if t.starts_with(s) && !g.member(&Cylinder::Baire((*t).clone())) {
                return CheckVerdict::Fail {
                    witness: Cylinder::Baire((*t).clone()),
                    reason: format!("condition (1): inside member <{}> but not a member", join(s)),
                };
            }
        }
    }
    let mut letters: BTreeSet<u64> = words.iter().flat_map(|w| w.iter().copied()).collect();
    if let Positive::Gens(c) = g.region.positive() {
        for gen in c.generators() {
            if let Cylinder::Baire(w) = gen {
                letters.extend(w.iter().copied());
            }
        }
    }
    for p in g.region.removed() {
        if let Point::Baire(x) = p {
            letters.extend(x.prefix().iter().chain(x.period()).copied());
        }
    }
    let fresh = letters.iter().next_back().map_or(0, |m| m + 1);
    letters.insert(fresh);
    let alphabet: Vec<u64> = letters.into_iter().collect();
    for s in &words {
        if g.member(&Cylinder::Baire((*s).clone())) {
            continue;
        }
        let shortest = 2 * s.len() + 1;
        if shortest > depth {
            continue;
        }
        let all_in = (shortest..=depth).all(|len| {
            extensions(s, len, &alphabet)
                .into_iter()
                .all(|t| g.member(&Cylinder::Baire(t)))
        });
        if all_in {
            return CheckVerdict::Fail {
                witness: Cylinder::Baire((*s).clone()),
                reason: format!("condition (2): every refinement up to length {depth} is a member"),
            };
        }
    }
    CheckVerdict::PassAt(depth)
}

fn join(w: &[u64]) -> String {
    w.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

fn extensions(s: &[u64], len: usize, alphabet: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![s.to_vec()];
    for _ in s.len()..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |a| {
                    let mut v = w.clone();
                    v.push(*a);
                    v
                })
            })
            .collect();
    }
    out
}

/// All words of length `1..=len` over `0..letters`.
pub fn baire_fragment(letters: u64, len: usize) -> Vec<Cylinder> {
    let alphabet: Vec<u64> = (0..letters).collect();
    (1..=len)
        .flat_map(|l| extensions(&[], l, &alphabet))
        .map(Cylinder::Baire)
        .collect()
}

/// Two distinct saturated families in `N(F0, F1)`.
#[derive(Clone, Debug)]
pub struct SatSplit {
    /// The family of `W = ⋃F0`.
    pub first: SaturatedFamilyDesc,
    /// The family of `r ∪ W`.
    pub second: SaturatedFamilyDesc,
    /// Least point of `t_j ∖ W` for each forbidden `t_j`.
    pub x: Vec<Periodic<u64>>,
    /// A point whose first letter no constraint uses.
    pub z: Periodic<u64>,
    /// `[⟨z(0)⟩]`, a member of the second family only.
    pub r: Cylinder,
}

pub fn sat_split_neighborhood(f0: &[Cylinder], f1: &[Cylinder]) -> Result<SatSplit> {
    let w0 = baire_words(f0)?;
    let w1 = baire_words(f1)?;
    let covered = |u: &[u64]| w0.iter().any(|g| u.starts_with(g));
    let mut xs = Vec::new();
    for t in &w1 {
        if covered(t) {
            return Err(Error::InconsistentNeighborhood(format!(
                "[<{}>] ⊆ ⋃F0",
                join(t)
            )));
        }
        let longest = w0.iter().map(Vec::len).max().unwrap_or(0);
        let mut u = t.clone();
        while u.len() < longest {
            let c = (0..)
                .find(|c| {
                    let mut v = u.clone();
                    v.push(*c);
                    !covered(&v)
                })
                .expect("finitely many generators");
            u.push(c);
        }
        xs.push(Periodic::padded(u, 0));
    }
    let used: BTreeSet<u64> = w0.iter().chain(&w1).map(|w| w[0]).collect();
    let m = (0..).find(|m| !used.contains(m)).expect("finitely many letters used");
    let z = Periodic::padded(vec![m], 0);
    let r = Cylinder::Baire(vec![m]);
    let w = RegionDesc::from_cylinders(SpaceTag::Baire, f0.to_vec())?;
    let mut with_r = f0.to_vec();
    with_r.push(r.clone());
    let w_r = RegionDesc::from_cylinders(SpaceTag::Baire, with_r)?;
    Ok(SatSplit {
        first: sat_encode_open(&w)?,
        second: sat_encode_open(&w_r)?,
        x: xs,
        z,
        r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::parse::parse_region;

    fn bw(v: &[u64]) -> Cylinder {
        Cylinder::Baire(v.to_vec())
    }

    #[test]
    fn encode_examples() {
        let g = sat_encode_open(&parse_region(SpaceTag::Baire, "<0>").unwrap()).unwrap();
        assert!(g.member(&bw(&[0])) && g.member(&bw(&[0, 5, 1])));
        assert!(!g.member(&bw(&[1])));
        let e = sat_encode_open(&RegionDesc::empty(SpaceTag::Baire)).unwrap();
        assert!(baire_fragment(3, 3).iter().all(|s| !e.member(s)));
        let g = sat_encode_open(&parse_region(SpaceTag::Baire, "<0>\\{<>(<0>)}").unwrap()).unwrap();
        assert!(!g.member(&bw(&[0])));
        assert!(!g.member(&bw(&[0, 0])) && !g.member(&bw(&[0, 0, 0, 0])));
        assert!(g.member(&bw(&[0, 1])) && g.member(&bw(&[0, 0, 3])));
        assert!(matches!(
            sat_encode_open(&parse_region(SpaceTag::Baire, "<>").unwrap()),
            Err(Error::BasisViolation(_))
        ));
    }

    #[test]
    fn refinement_relation() {
        assert!(refines(&[0, 1, 2], &[0]));
        assert!(!refines(&[0, 1], &[0]));
        assert!(refines(&[4], &[]));
    }

    #[test]
    fn verify_examples() {
        let frag = baire_fragment(3, 3);
        let g = sat_encode_open(&parse_region(SpaceTag::Baire, "<0>").unwrap()).unwrap();
        assert_eq!(sat_verify_fragment(&g, &frag, 3), CheckVerdict::PassAt(3));
        let bad = g.with_rule(|s| matches!(s, Cylinder::Baire(w) if w.len() >= 3 && w[0] == 0));
        match sat_verify_fragment(&bad, &frag, 3) {
            CheckVerdict::Fail { witness, .. } => assert_eq!(witness, bw(&[0])),
            v => panic!("{v:?}"),
        }
        let e = sat_encode_open(&RegionDesc::empty(SpaceTag::Baire)).unwrap();
        assert_eq!(sat_verify_fragment(&e, &frag, 3), CheckVerdict::PassAt(3));
    }

    #[test]
    fn split_examples() {
        let s = sat_split_neighborhood(&[bw(&[0])], &[bw(&[1])]).unwrap();
        assert_eq!(s.x, vec![Periodic::padded(vec![1], 0)]);
        assert_eq!(s.r, bw(&[2]));
        assert!(s.second.member(&s.r) && !s.first.member(&s.r));
        let s = sat_split_neighborhood(&[], &[]).unwrap();
        assert_eq!(s.z, Periodic::constant(0));
        assert_eq!(s.r, bw(&[0]));
        assert!(baire_fragment(3, 2).iter().all(|c| !s.first.member(c)));
        assert!(s.second.member(&bw(&[0, 2])));
        assert!(matches!(
            sat_split_neighborhood(&[bw(&[1])], &[bw(&[1, 1])]),
            Err(Error::InconsistentNeighborhood(_))
        ));
    }
}
