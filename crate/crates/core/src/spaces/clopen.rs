use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Bits, Cylinder, IntervalUnion, Point, RatInterval, SpaceTag};
use crate::error::{Error, Result};

/// A finite union of cylinders in canonical form.
///
/// Generators form an antichain; binary siblings are merged into their parent,
/// interval generators are merged when they overlap. Equal sets have equal
/// canonical forms, so `==` decides set equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ClopenSet {
    tag: SpaceTag,
    gens: Vec<Cylinder>,
}

/// Exact relation between the sets denoted by two clopen descriptions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    Subset,
    Superset,
    Disjoint,
    Overlapping,
}

trait Label: Clone + PartialEq {
    fn join(&self, other: &Self) -> Self;
    fn is_empty(&self) -> bool;
    /// A saturated label absorbs everything below it.
    fn saturated(&self) -> bool;
}

impl Label for () {
    fn join(&self, _: &Self) -> Self {}
    fn is_empty(&self) -> bool {
        false
    }
    fn saturated(&self) -> bool {
        true
    }
}

impl Label for IntervalUnion {
    fn join(&self, other: &Self) -> Self {
        self.union(other)
    }
    fn is_empty(&self) -> bool {
        IntervalUnion::is_empty(self)
    }
    fn saturated(&self) -> bool {
        false
    }
}

/// Coarsest antichain of labelled binary cylinders denoting the same function
/// from `2^ω` to labels.
fn canon_labelled<L: Label>(items: &[(Bits, L)]) -> Vec<(Bits, L)> {
    fn rec<L: Label>(node: Bits, inherited: Option<L>, items: Vec<&(Bits, L)>) -> Vec<(Bits, L)> {
        let mut here = inherited;
        let mut deeper = Vec::new();
        for it in items {
            if it.0.len() == node.len() {
                here = Some(match here {
                    Some(h) => h.join(&it.1),
                    None => it.1.clone(),
                });
            } else {
                deeper.push(it);
            }
        }
        let here = here.filter(|l| !l.is_empty());
        if deeper.is_empty() || here.as_ref().is_some_and(|l| l.saturated()) {
            return here.map(|l| vec![(node, l)]).unwrap_or_default();
        }
        let d = node.len();
        let (zeros, ones): (Vec<_>, Vec<_>) = deeper.into_iter().partition(|it| it.0 .0[d] == 0);
        let left = rec(node.child(0), here.clone(), zeros);
        let right = rec(node.child(1), here, ones);
        if left.len() == 1
            && right.len() == 1
            && left[0].0.len() == d + 1
            && right[0].0.len() == d + 1
            && left[0].1 == right[0].1
        {
            return vec![(node, left[0].1.clone())];
        }
        let mut out = left;
        out.extend(right);
        out
    }
    rec(Bits::empty(), None, items.iter().collect())
}

/// Canonical antichain of binary words denoting the same clopen subset of `2^ω`.
pub fn canon_bits(words: &[Bits]) -> Vec<Bits> {
    let items: Vec<(Bits, ())> = words.iter().map(|w| (w.clone(), ())).collect();
    canon_labelled(&items).into_iter().map(|(w, _)| w).collect()
}

/// Canonical complement of a clopen subset of `2^ω`.
pub fn complement_bits(words: &[Bits]) -> Vec<Bits> {
    fn rec(node: Bits, words: &[Bits], out: &mut Vec<Bits>) {
        if words.iter().any(|w| w.is_prefix_of(&node)) {
            return;
        }
        if !words.iter().any(|w| node.is_prefix_of(w)) {
            out.push(node);
            return;
        }
        rec(node.child(0), words, out);
        rec(node.child(1), words, out);
    }
    let mut out = Vec::new();
    rec(Bits::empty(), words, &mut out);
    canon_bits(&out)
}

fn intersect_cyl(a: &Cylinder, b: &Cylinder) -> Option<Cylinder> {
    let longer = |x: &Bits, y: &Bits| {
        if x.is_prefix_of(y) {
            Some(y.clone())
        } else if y.is_prefix_of(x) {
            Some(x.clone())
        } else {
            None
        }
    };
    match (a, b) {
        (Cylinder::Cantor(x), Cylinder::Cantor(y)) => longer(x, y).map(Cylinder::Cantor),
        (Cylinder::Baire(x), Cylinder::Baire(y)) => {
            if y.starts_with(x) {
                Some(Cylinder::Baire(y.clone()))
            } else if x.starts_with(y) {
                Some(Cylinder::Baire(x.clone()))
            } else {
                None
            }
        }
        (
            Cylinder::OmegaCantor { row: r, word: x },
            Cylinder::OmegaCantor { row: s, word: y },
        ) if r == s => longer(x, y).map(|word| Cylinder::OmegaCantor { row: *r, word }),
        (Cylinder::Dyadic(i), Cylinder::Dyadic(j)) => i.intersect(j).map(Cylinder::Dyadic),
        (Cylinder::Rational(i), Cylinder::Rational(j)) => i.intersect(j).map(Cylinder::Rational),
        (Cylinder::Omega(s), Cylinder::Omega(t)) => {
            let c: BTreeSet<u64> = s.intersection(t).copied().collect();
            (!c.is_empty()).then_some(Cylinder::Omega(c))
        }
        (
            Cylinder::RationalCantor { interval: i, word: x },
            Cylinder::RationalCantor { interval: j, word: y },
        ) => {
            let interval = i.intersect(j)?;
            let word = longer(x, y)?;
            Some(Cylinder::RationalCantor { interval, word })
        }
        _ => None,
    }
}

impl ClopenSet {
    pub fn empty(tag: SpaceTag) -> Self {
        ClopenSet {
            tag,
            gens: Vec::new(),
        }
    }

    /// The whole space, for the spaces where it is a single cylinder.
    pub fn whole(tag: SpaceTag) -> Result<Self> {
        match tag {
            SpaceTag::Cantor => Ok(ClopenSet {
                tag,
                gens: vec![Cylinder::Cantor(Bits::empty())],
            }),
            SpaceTag::Baire => Ok(ClopenSet {
                tag,
                gens: vec![Cylinder::Baire(Vec::new())],
            }),
            _ => Err(Error::UnsupportedOperation(format!(
                "{tag} is not a finite union of basic sets"
            ))),
        }
    }

    /// Bring a list of generators into canonical form.
    pub fn normalize(tag: SpaceTag, gens: Vec<Cylinder>) -> Result<Self> {
        for g in &gens {
            tag.check(g.tag())?;
        }
        let gens = match tag {
            SpaceTag::Cantor => {
                let words: Vec<Bits> = gens
                    .into_iter()
                    .map(|g| match g {
                        Cylinder::Cantor(w) => w,
                        _ => unreachable!(),
                    })
                    .collect();
                canon_bits(&words).into_iter().map(Cylinder::Cantor).collect()
            }
            SpaceTag::OmegaCantor => {
                let mut rows: BTreeMap<u64, Vec<Bits>> = BTreeMap::new();
                for g in gens {
                    if let Cylinder::OmegaCantor { row, word } = g {
                        rows.entry(row).or_default().push(word);
                    }
                }
                rows.into_iter()
                    .flat_map(|(row, words)| {
                        canon_bits(&words)
                            .into_iter()
                            .map(move |word| Cylinder::OmegaCantor { row, word })
                    })
                    .collect()
            }
            SpaceTag::Baire => {
                let mut words: Vec<Vec<u64>> = gens
                    .into_iter()
                    .map(|g| match g {
                        Cylinder::Baire(w) => w,
                        _ => unreachable!(),
                    })
                    .collect();
                words.sort_by_key(|w| w.len());
                let mut kept: Vec<Vec<u64>> = Vec::new();
                for w in words {
                    if !kept.iter().any(|k| w.starts_with(k)) {
                        kept.push(w);
                    }
                }
                kept.sort();
                kept.into_iter().map(Cylinder::Baire).collect()
            }
            SpaceTag::RealsDyadic | SpaceTag::Rationals => {
                let parts: Vec<RatInterval> = gens
                    .into_iter()
                    .map(|g| match g {
                        Cylinder::Dyadic(i) | Cylinder::Rational(i) => i,
                        _ => unreachable!(),
                    })
                    .collect();
                let wrap = if tag == SpaceTag::RealsDyadic {
                    Cylinder::Dyadic
                } else {
                    Cylinder::Rational
                };
                IntervalUnion::new(parts)
                    .parts()
                    .iter()
                    .cloned()
                    .map(wrap)
                    .collect()
            }
            SpaceTag::Omega => {
                let all: BTreeSet<u64> = gens
                    .into_iter()
                    .flat_map(|g| match g {
                        Cylinder::Omega(s) => s,
                        _ => unreachable!(),
                    })
                    .collect();
                if all.is_empty() {
                    Vec::new()
                } else {
                    vec![Cylinder::Omega(all)]
                }
            }
            SpaceTag::RationalsCantor => {
                let items: Vec<(Bits, IntervalUnion)> = gens
                    .into_iter()
                    .map(|g| match g {
                        Cylinder::RationalCantor { interval, word } => {
                            (word, IntervalUnion::new(vec![interval]))
                        }
                        _ => unreachable!(),
                    })
                    .collect();
                let mut out: Vec<Cylinder> = canon_labelled(&items)
                    .into_iter()
                    .flat_map(|(word, label)| {
                        label
                            .parts()
                            .iter()
                            .cloned()
                            .map(|interval| Cylinder::RationalCantor {
                                interval,
                                word: word.clone(),
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
                out.sort_by(|a, b| match (a, b) {
                    (
                        Cylinder::RationalCantor { interval: i, word: x },
                        Cylinder::RationalCantor { interval: j, word: y },
                    ) => (x, i).cmp(&(y, j)),
                    _ => a.cmp(b),
                });
                out
            }
        };
        Ok(ClopenSet { tag, gens })
    }

    pub fn tag(&self) -> SpaceTag {
        self.tag
    }

    pub fn generators(&self) -> &[Cylinder] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.gens.iter().any(|g| g.contains(p))
    }

    /// Binary words of a cantor clopen set.
    pub fn words(&self) -> Vec<Bits> {
        self.gens
            .iter()
            .filter_map(|g| match g {
                Cylinder::Cantor(w) => Some(w.clone()),
                _ => None,
            })
            .collect()
    }

    /// Longest prefix length among the generators (binary spaces).
    pub fn depth(&self) -> usize {
        self.gens
            .iter()
            .map(|g| match g {
                Cylinder::Cantor(w) => w.len(),
                Cylinder::OmegaCantor { word, .. } => word.len(),
                Cylinder::RationalCantor { word, .. } => word.len(),
                Cylinder::Baire(w) => w.len(),
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// The depth-`d` words covered by a cantor clopen set (`d >= depth`).
    pub fn leaf_expansion(&self, d: usize) -> BTreeSet<Bits> {
        let mut out = BTreeSet::new();
        for w in self.words() {
            let extra = d.saturating_sub(w.len());
            for tail in Bits::all_of_length(extra) {
                let mut v = w.0.clone();
                v.extend(tail.0);
                out.insert(Bits(v));
            }
        }
        out
    }

    /// Whether the cylinder `[w]` meets this cantor clopen set.
    pub fn meets_word(&self, w: &Bits) -> bool {
        self.gens.iter().any(|g| match g {
            Cylinder::Cantor(x) => x.comparable(w),
            _ => false,
        })
    }

    /// Whether the cylinder `[w]` lies inside this cantor clopen set.
    pub fn covers_word(&self, w: &Bits) -> bool {
        self.gens.iter().any(|g| match g {
            Cylinder::Cantor(x) => x.is_prefix_of(w),
            _ => false,
        })
    }

    pub fn union(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.tag.check(other.tag)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        ClopenSet::normalize(self.tag, gens)
    }

    pub fn intersection(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.tag.check(other.tag)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                if let Some(c) = intersect_cyl(a, b) {
                    gens.push(c);
                }
            }
        }
        ClopenSet::normalize(self.tag, gens)
    }

    /// Complement in the whole space; only `2^ω` has clopen complements of
    /// finite unions among the instance spaces.
    pub fn complement(&self) -> Result<ClopenSet> {
        match self.tag {
            SpaceTag::Cantor => Ok(ClopenSet {
                tag: self.tag,
                gens: complement_bits(&self.words())
                    .into_iter()
                    .map(Cylinder::Cantor)
                    .collect(),
            }),
            t => Err(Error::UnsupportedOperation(format!(
                "complement over {t} is not a finite union of basic sets"
            ))),
        }
    }

    /// `self ∖ other` for the zero-dimensional spaces with binary fibres and for `ω`.
    pub fn difference(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.tag.check(other.tag)?;
        match self.tag {
            SpaceTag::Cantor => self.intersection(&other.complement()?),
            SpaceTag::OmegaCantor => {
                let mut gens = Vec::new();
                let rows: BTreeSet<u64> = self
                    .gens
                    .iter()
                    .filter_map(|g| match g {
                        Cylinder::OmegaCantor { row, .. } => Some(*row),
                        _ => None,
                    })
                    .collect();
                for row in rows {
                    let words_in = |set: &ClopenSet| -> Vec<Bits> {
                        set.gens
                            .iter()
                            .filter_map(|g| match g {
                                Cylinder::OmegaCantor { row: r, word } if *r == row => {
                                    Some(word.clone())
                                }
                                _ => None,
                            })
                            .collect()
                    };
                    let mine = ClopenSet::normalize(
                        SpaceTag::Cantor,
                        words_in(self).into_iter().map(Cylinder::Cantor).collect(),
                    )?;
                    let theirs = ClopenSet::normalize(
                        SpaceTag::Cantor,
                        words_in(other).into_iter().map(Cylinder::Cantor).collect(),
                    )?;
                    for w in mine.difference(&theirs)?.words() {
                        gens.push(Cylinder::OmegaCantor { row, word: w });
                    }
                }
                ClopenSet::normalize(self.tag, gens)
            }
            SpaceTag::Omega => {
                let set = |c: &ClopenSet| -> BTreeSet<u64> {
                    c.gens
                        .iter()
                        .flat_map(|g| match g {
                            Cylinder::Omega(s) => s.clone(),
                            _ => BTreeSet::new(),
                        })
                        .collect()
                };
                let d: BTreeSet<u64> = set(self).difference(&set(other)).copied().collect();
                ClopenSet::normalize(self.tag, vec![Cylinder::Omega(d)])
            }
            t => Err(Error::UnsupportedOperation(format!("difference over {t}"))),
        }
    }

    /// Exact relation between the denoted sets.
    pub fn relate(&self, other: &ClopenSet) -> Result<Relation> {
        let meet = self.intersection(other)?;
        Ok(if self == other {
            Relation::Equal
        } else if meet.is_empty() {
            Relation::Disjoint
        } else if meet == *self {
            Relation::Subset
        } else if meet == *other {
            Relation::Superset
        } else {
            Relation::Overlapping
        })
    }

    pub fn subset_of(&self, other: &ClopenSet) -> Result<bool> {
        Ok(matches!(
            self.relate(other)?,
            Relation::Equal | Relation::Subset
        ) || self.is_empty())
    }
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("EMPTY");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join("|"))
    }
}
