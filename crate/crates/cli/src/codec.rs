//! Text front end for the codecs: a set description in, a parameter rendering
//! out, and back.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use uuniv::good_families::{baire_fragment, dyadic_fragment, lc_encode_open, omega_cantor_fragment, sat_encode_open};
use uuniv::good_filters::{gfil_encode_open, omega_universe, OmegaRegion, OmegaSpace};
use uuniv::nice_trees::{decode_clopen, encode_closed, tree_levels, CDesc, NiceTreeDesc, Niceness};
use uuniv::rational::{ceil_int, floor_int, int, Q};
use uuniv::spaces::parse::{parse_point, parse_region};
use uuniv::spaces::{Bits, Cylinder, Point, Positive, RegionDesc, SpaceTag};
use uuniv::stream::Stream;
use uuniv::z_space::{z_decode, z_encode, ZClosedDesc, ZParam, ZSetDesc};

use crate::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codec {
    /// Closed subsets of `2^ω` as nice trees.
    NiceTree,
    /// Closed subsets of `Z` as points of `ω × 2^ω`.
    Z,
    /// Open subsets of a locally compact space as good families.
    GoodFamily,
    /// Open subsets of `ω^ω` as saturated families.
    Saturated,
    /// Subsets of `ω` as good filters.
    GoodFilter,
}

impl Codec {
    pub const ALL: [Codec; 5] = [Codec::NiceTree, Codec::Z, Codec::GoodFamily, Codec::Saturated, Codec::GoodFilter];

    pub fn name(self) -> &'static str {
        match self {
            Codec::NiceTree => "nice-tree",
            Codec::Z => "z",
            Codec::GoodFamily => "good-family",
            Codec::Saturated => "saturated",
            Codec::GoodFilter => "good-filter",
        }
    }

    pub fn from_name(s: &str) -> Option<Codec> {
        Codec::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Spaces the codec accepts; the first is the default.
    pub fn spaces(self) -> &'static [&'static str] {
        match self {
            Codec::NiceTree => &["cantor"],
            Codec::Z => &["z"],
            Codec::GoodFamily => &["reals-dyadic", "omega-x-cantor"],
            Codec::Saturated => &["baire"],
            Codec::GoodFilter => &["omega"],
        }
    }

    pub fn default_depth(self) -> u64 {
        match self {
            Codec::NiceTree => 4,
            Codec::Z => 16,
            Codec::GoodFamily => 3,
            Codec::Saturated => 2,
            Codec::GoodFilter => 3,
        }
    }
}

/// Resolve `--space` and `--codec`, inferring whichever is missing.
pub fn resolve(space: Option<&str>, codec: Option<&str>) -> Result<(String, Codec)> {
    let codec = match codec {
        Some(c) => Some(Codec::from_name(c).ok_or_else(|| {
            let names: Vec<&str> = Codec::ALL.iter().map(|c| c.name()).collect();
            CliError::Usage(format!("unknown codec `{c}`; expected one of {}", names.join(", ")))
        })?),
        None => None,
    };
    match (space, codec) {
        (None, None) => Err(CliError::Usage("give --space or --codec".into())),
        (None, Some(c)) => Ok((c.spaces()[0].to_string(), c)),
        (Some(s), None) => Codec::ALL
            .into_iter()
            .find(|c| c.spaces().contains(&s))
            .map(|c| (s.to_string(), c))
            .ok_or_else(|| CliError::Usage(format!("no codec for space `{s}`"))),
        (Some(s), Some(c)) if c.spaces().contains(&s) => Ok((s.to_string(), c)),
        (Some(s), Some(c)) => Err(CliError::Usage(format!(
            "codec {} does not apply to space `{s}`; it takes {}",
            c.name(),
            c.spaces().join(", ")
        ))),
    }
}

fn tag(space: &str) -> SpaceTag {
    SpaceTag::from_name(space).expect("resolved spaces are tags")
}

/// Render the parameter of a described set.
pub fn run_encode(space: Option<&str>, codec: Option<&str>, text: &str, depth: Option<u64>) -> Result<String> {
    let (space, codec) = resolve(space, codec)?;
    let d = depth.unwrap_or(codec.default_depth()) as usize;
    match codec {
        Codec::NiceTree => encode_nice_tree(text, d),
        Codec::Z => encode_z(text, d),
        Codec::GoodFamily => encode_good_family(tag(&space), text, d),
        Codec::Saturated => encode_saturated(text, d),
        Codec::GoodFilter => encode_filter(text, d),
    }
}

/// Recover the set described by a rendered parameter.
pub fn run_decode(space: Option<&str>, codec: Option<&str>, text: &str) -> Result<String> {
    let (space, codec) = resolve(space, codec)?;
    match codec {
        Codec::NiceTree => decode_nice_tree(text),
        Codec::Z => decode_z(text),
        Codec::GoodFamily | Codec::Saturated => Ok(format!("{}\n", parse_region(tag(&space), text)?)),
        Codec::GoodFilter => Err(CliError::Usage(
            "good-filter parameters have no text form; use `verify --suite gfil-axioms` or `fuzz`".into(),
        )),
    }
}

fn encode_nice_tree(text: &str, d: usize) -> Result<String> {
    let c = CDesc::parse(text)?;
    let t = encode_closed(&c);
    let levels = tree_levels(&t, d);
    let mut out = format!("{t}\n");
    for k in 0..=d {
        let nodes: Vec<String> = levels.nodes.iter().filter(|s| s.len() == k).map(Bits::to_string).collect();
        let shown = if nodes.is_empty() { "∅".to_string() } else { nodes.join(",") };
        out.push_str(&format!("level {k}: {shown}\n"));
    }
    Ok(out)
}

/// A comma-separated node set, checked for niceness at its greatest length.
fn decode_nice_tree(text: &str) -> Result<String> {
    let text = text.trim();
    let mut nodes = BTreeSet::new();
    if !(text.is_empty() || text == "EMPTY" || text == "∅") {
        for part in text.split(',') {
            let part = part.trim();
            let bits = if part == "ε" { Some(Bits::empty()) } else { Bits::from_str_bits(part) };
            nodes.insert(bits.ok_or_else(|| CliError::Usage(format!("`{part}` is not a binary word")))?);
        }
    }
    let d = nodes.iter().map(Bits::len).max().unwrap_or(0);
    let nodes = Arc::new(nodes);
    let t = {
        let nodes = nodes.clone();
        NiceTreeDesc::custom(move |s| nodes.contains(s))
    };
    match tree_levels(&t, d).verdict {
        Niceness::Pass => Ok(format!("{}\n", decode_clopen(&t, d))),
        Niceness::MissingChild(s) => Err(CliError::Usage(format!("not a nice tree: node {s} has no child"))),
        Niceness::NotDownwardClosed(s) => {
            Err(CliError::Usage(format!("not a nice tree: node {s} has no parent")))
        }
    }
}

fn encode_z(text: &str, d: usize) -> Result<String> {
    let set = ZSetDesc::parse(text)?;
    let p = z_encode(&ZClosedDesc::from_set(&set)?)?;
    let x: String = p.x.truncate(d)?.iter().map(|b| b.to_string()).collect();
    Ok(format!("n = {}\nx↾{d} = {x}\n", p.n))
}

/// `n, x` or `(n, x)` with `x` an eventually periodic bit word.
fn decode_z(text: &str) -> Result<String> {
    let t = text.trim();
    let inner = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
    let (n, x) = inner
        .split_once(',')
        .or_else(|| inner.split_once(':'))
        .ok_or_else(|| CliError::Usage("expected `n, x`".into()))?;
    let n: u64 = n.trim().parse().map_err(|_| CliError::Usage(format!("`{}` is not a natural", n.trim())))?;
    let x = match parse_point(SpaceTag::Cantor, x.trim())? {
        Point::Cantor(p) => p,
        _ => unreachable!("cantor points"),
    };
    Ok(format!("{}\n", z_decode(&ZParam::new(n, Stream::Periodic(x)))?))
}

/// Dyadic window around every endpoint of the region, padded by one.
fn window(u: &RegionDesc) -> (Q, Q) {
    let mut ends: Vec<Q> = u.removed().iter().filter_map(|p| match p {
        Point::Real(x) => Some(*x),
        _ => None,
    }).collect();
    if let Positive::Gens(c) = u.positive() {
        for g in c.generators() {
            if let Cylinder::Dyadic(i) = g {
                ends.push(i.lo);
                ends.push(i.hi);
            }
        }
    }
    let lo = ends.iter().min().map_or(int(-1), |x| int(floor_int(x) - 1));
    let hi = ends.iter().max().map_or(int(2), |x| int(ceil_int(x) + 1));
    (lo, hi)
}

/// Members not contained in another member.
fn maximal(members: Vec<Cylinder>) -> Vec<Cylinder> {
    let mut v = members;
    match v.first() {
        Some(Cylinder::Dyadic(_)) => {
            v.sort_by(|a, b| match (a, b) {
                (Cylinder::Dyadic(a), Cylinder::Dyadic(b)) => a.lo.cmp(&b.lo).then(b.hi.cmp(&a.hi)),
                _ => a.cmp(b),
            });
            let mut reach: Option<Q> = None;
            v.into_iter()
                .filter(|c| match c {
                    Cylinder::Dyadic(i) if reach.is_none_or(|r| i.hi > r) => {
                        reach = Some(i.hi);
                        true
                    }
                    _ => false,
                })
                .collect()
        }
        _ => {
            let inside = |a: &Cylinder, b: &Cylinder| match (a, b) {
                (Cylinder::OmegaCantor { row, word }, Cylinder::OmegaCantor { row: r, word: w }) => {
                    row == r && w.is_prefix_of(word)
                }
                (Cylinder::Baire(s), Cylinder::Baire(t)) => s.starts_with(t),
                _ => false,
            };
            v.iter().filter(|a| !v.iter().any(|b| b != *a && inside(a, b))).cloned().collect()
        }
    }
}

fn join(cs: &[Cylinder]) -> String {
    if cs.is_empty() {
        return "EMPTY".into();
    }
    cs.iter().map(Cylinder::to_string).collect::<Vec<_>>().join("|")
}

fn encode_good_family(tag: SpaceTag, text: &str, d: usize) -> Result<String> {
    let u = parse_region(tag, text)?;
    let g = lc_encode_open(&u)?;
    let (fragment, scope) = match tag {
        SpaceTag::RealsDyadic => {
            let (lo, hi) = window(&u);
            let scope = format!("dyadic intervals with denominator ≤ 2^{d} inside ({lo},{hi})");
            (dyadic_fragment(d as u32, &lo, &hi), scope)
        }
        _ => {
            let rows = max_row(&u) + 2;
            (omega_cantor_fragment(rows, d), format!("cells n:[s] with n < {rows}, |s| ≤ {d}"))
        }
    };
    let members: Vec<Cylinder> = fragment.into_iter().filter(|b| g.member(b)).collect();
    Ok(format!(
        "region = {u}\nscope = {scope}\nmembers = {}\nmaximal = {}\n",
        members.len(),
        join(&maximal(members))
    ))
}

fn max_row(u: &RegionDesc) -> u64 {
    let rows = u.removed().iter().filter_map(|p| match p {
        Point::OmegaCantor(n, _) => Some(*n),
        _ => None,
    });
    let gens: Vec<u64> = match u.positive() {
        Positive::Gens(c) => c
            .generators()
            .iter()
            .filter_map(|g| match g {
                Cylinder::OmegaCantor { row, .. } => Some(*row),
                _ => None,
            })
            .collect(),
        Positive::All => Vec::new(),
    };
    rows.chain(gens).max().unwrap_or(0)
}

fn encode_saturated(text: &str, d: usize) -> Result<String> {
    let w = parse_region(SpaceTag::Baire, text)?;
    let g = sat_encode_open(&w)?;
    let letters = match w.positive() {
        Positive::Gens(c) => c
            .generators()
            .iter()
            .filter_map(|g| match g {
                Cylinder::Baire(s) => s.iter().max().copied(),
                _ => None,
            })
            .max()
            .unwrap_or(0),
        Positive::All => 0,
    } + 2;
    let members: Vec<Cylinder> = baire_fragment(letters, d).into_iter().filter(|b| g.member(b)).collect();
    Ok(format!(
        "region = {w}\nscope = words over {{0..{}}} of length 1..{d}\nmembers = {}\nmaximal = {}\n",
        letters - 1,
        members.len(),
        join(&maximal(members))
    ))
}

fn encode_filter(text: &str, d: usize) -> Result<String> {
    let r = OmegaRegion::from_region(&parse_region(SpaceTag::Omega, text)?)?;
    let g = gfil_encode_open(OmegaSpace, r.clone());
    let universe = omega_universe(d as u64);
    let members = universe.iter().filter(|p| g.member(p)).count();
    let mut by_size: BTreeMap<usize, usize> = BTreeMap::new();
    let mut strongest = None;
    for p in universe.iter().filter(|p| g.member(p)) {
        let size = p.b.0.len() + p.f.len();
        *by_size.entry(size).or_default() += 1;
        if size == d + 1 {
            strongest = Some(p.to_string());
        }
    }
    Ok(format!(
        "region = {r}\nscope = conditions (B, F) with B, F ⊆ {{0..{d}}}\nmembers = {members} of {}\nstrongest = {}\n",
        universe.len(),
        strongest.expect("the trace of the region on {0..d} is a member")
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inference_and_mismatch() {
        assert_eq!(resolve(Some("cantor"), None).unwrap().1, Codec::NiceTree);
        assert_eq!(resolve(None, Some("z")).unwrap().0, "z");
        assert!(resolve(Some("baire"), Some("nice-tree")).is_err());
        assert!(resolve(Some("moon"), None).is_err());
    }

    #[test]
    fn nice_tree_levels() {
        let out = run_encode(Some("cantor"), Some("nice-tree"), "0|11", Some(2)).unwrap();
        assert_eq!(out, "T[0|11]\nlevel 0: ε\nlevel 1: 0,1\nlevel 2: 00,01,11\n");
        assert_eq!(run_decode(None, Some("nice-tree"), "ε,0,1,00,01,11").unwrap(), "0|11\n");
        assert!(run_decode(None, Some("nice-tree"), "ε,0,1,01").is_err());
    }

    #[test]
    fn z_example() {
        let out = run_encode(Some("z"), None, "rows: {(2,5)}", None).unwrap();
        assert_eq!(out, "n = 23\nx↾16 = 0000000000000000\n");
        assert_eq!(run_decode(Some("z"), None, "(23, (0))").unwrap(), "rows: {(2,5)}\n");
    }

    #[test]
    fn maximal_intervals() {
        let out = run_encode(Some("reals-dyadic"), None, "(0,1)", Some(2)).unwrap();
        assert!(out.ends_with("maximal = (1/2^2,3/2^2)\n"), "{out}");
        let out = run_encode(Some("baire"), None, "<1>", Some(2)).unwrap();
        assert!(out.ends_with("maximal = <1>\n"), "{out}");
        let out = run_encode(Some("omega"), None, "{1,2}", Some(2)).unwrap();
        assert!(out.contains("strongest = ({1,2}, {0})"), "{out}");
    }
}
