//! Verification suites. Each runs one property of one module at a chosen
//! depth and reports a single finding; categories group related suites.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use uuniv::baire_maps::{
    apply_stream, baire_to_cantor, partition_check, product_sum_uu, s_transfer, BrouwerMap, IndexedStream,
    OmegaPlusPresentation, SPresentation,
};
use uuniv::family::UniversalFamily;
use uuniv::good_families::{
    baire_fragment, dyadic_fragment, family_union_member, lc_encode_open, lc_goodness_check, lc_split_neighborhood,
    omega_cantor_fragment, sat_encode_open, sat_split_neighborhood, sat_verify_fragment, UnionVerdict,
};
use uuniv::good_filters::{
    gfil_axioms_check, gfil_decode, gfil_encode_open, gfil_split_below, omega_universe, poset_relate, OmegaRegion,
    OmegaSpace, PosetRelation,
};
use uuniv::nice_trees::{
    decode_clopen, empty_section_isolation, encode_closed, nt_isolation_certificate, nt_split_neighborhood,
    tree_levels, CDesc, Isolation, MarkedSearch, NTNeighborhood, NiceTreeDesc, Niceness, NtSearch, NtSplit,
};
use uuniv::rational::{q, rationals_in_height_order, Q};
use uuniv::spaces::{Bits, ClopenSet, Cylinder, Point, RatInterval, RegionDesc, SpaceTag};
use uuniv::stream::{Periodic, Stream};
use uuniv::z_space::{desk_sets, z_decode, z_encode, z_index, z_index_inverse, z_member, ZClosedDesc, ZFamily, ZPoint};

use crate::sample::{geometric, periodic_bits};
use crate::{timed, CertificateRecord, CliError, Finding, Result};

type Outcome = Result<Finding>;

pub struct Suite {
    pub id: &'static str,
    pub category: &'static str,
    pub default_depth: u64,
    /// Inclusive depth range the suite accepts.
    pub depths: (u64, u64),
    run: fn(u64, u64) -> Outcome,
}

pub const SUITES: &[Suite] = &[
    Suite { id: "nt-round-trip", category: "round-trip", default_depth: 4, depths: (0, 4), run: nt_round_trip },
    Suite { id: "nt-uniqueness", category: "uniqueness", default_depth: 4, depths: (0, 4), run: nt_uniqueness },
    Suite { id: "nt-isolation", category: "isolation", default_depth: 3, depths: (0, 3), run: nt_isolation },
    Suite { id: "marked-isolation", category: "isolation", default_depth: 8, depths: (0, 10), run: marked_isolation },
    Suite { id: "z-index", category: "index", default_depth: 20, depths: (1, 26), run: z_index_suite },
    Suite { id: "z-round-trip", category: "round-trip", default_depth: 32, depths: (1, 256), run: z_round_trip },
    Suite { id: "z-uniqueness", category: "uniqueness", default_depth: 32, depths: (1, 256), run: z_uniqueness },
    Suite { id: "lc-round-trip", category: "round-trip", default_depth: 16, depths: (1, 40), run: lc_round_trip },
    Suite { id: "lc-uniqueness", category: "uniqueness", default_depth: 5, depths: (1, 8), run: lc_uniqueness },
    Suite { id: "lc-splitter", category: "splitter", default_depth: 2, depths: (0, 3), run: lc_splitter },
    Suite { id: "sat-splitter", category: "splitter", default_depth: 3, depths: (1, 3), run: sat_splitter },
    Suite { id: "gfil-axioms", category: "axioms", default_depth: 4, depths: (0, 5), run: gfil_axioms },
    Suite { id: "gfil-splitter", category: "splitter", default_depth: 4, depths: (0, 6), run: gfil_splitter },
    Suite { id: "brouwer", category: "brouwer", default_depth: 6, depths: (1, 10), run: brouwer },
    Suite { id: "transfer", category: "transfer", default_depth: 64, depths: (24, 256), run: transfer },
];

/// Suite ids and category names accepted by `verify --suite`.
pub fn suite_ids() -> Vec<&'static str> {
    let mut ids: Vec<&str> = SUITES.iter().map(|s| s.id).collect();
    for s in SUITES {
        if !ids.contains(&s.category) {
            ids.push(s.category);
        }
    }
    ids.push("all");
    ids
}

/// Run a suite, a category of suites, or `all`, in table order.
pub fn run_verify(suite: &str, depth: Option<u64>, seed: u64) -> Result<Vec<CertificateRecord>> {
    let chosen: Vec<&Suite> = SUITES
        .iter()
        .filter(|s| suite == "all" || s.id == suite || s.category == suite)
        .collect();
    if chosen.is_empty() {
        return Err(CliError::Usage(format!(
            "unknown suite `{suite}`; expected one of {}",
            suite_ids().join(", ")
        )));
    }
    if let Some(d) = depth {
        if let Some(s) = chosen.iter().find(|s| d < s.depths.0 || d > s.depths.1) {
            return Err(CliError::Usage(format!(
                "suite {} takes depths {}..={}, not {d}",
                s.id, s.depths.0, s.depths.1
            )));
        }
    }
    chosen
        .into_iter()
        .map(|s| {
            let d = depth.unwrap_or(s.default_depth);
            let (finding, ms) = timed(|| (s.run)(d, seed));
            Ok(CertificateRecord::new(s.id, d, finding?, Some(ms)))
        })
        .collect()
}

fn clopen_of_mask(words: &[Bits], mask: u64) -> ClopenSet {
    let gens = (0..words.len()).filter(|i| mask >> i & 1 == 1).map(|i| Cylinder::Cantor(words[i].clone())).collect();
    ClopenSet::normalize(SpaceTag::Cantor, gens).expect("cantor generators")
}

/// Every clopen set generated at length `d`: the tree decodes back at level
/// `d`, has the expected level `d + 1`, and is nice there.
fn nt_round_trip(d: u64, _seed: u64) -> Outcome {
    let d = d as usize;
    let words = Bits::all_of_length(d);
    let masks = 1u64 << words.len();
    let failure = (0..masks).into_par_iter().find_map_first(|mask| {
        let c = clopen_of_mask(&words, mask);
        let t = encode_closed(&CDesc::from_clopen(c.clone()).expect("cantor"));
        if decode_clopen(&t, d) != c {
            return Some(format!("{c}: decode at level {d} differs"));
        }
        let want: BTreeSet<Bits> = Bits::all_of_length(d + 1)
            .into_iter()
            .filter(|w| (0..words.len()).any(|i| mask >> i & 1 == 1 && words[i].is_prefix_of(w)))
            .collect();
        if t.level(d + 1) != want {
            return Some(format!("{c}: level {} differs", d + 1));
        }
        match tree_levels(&t, d + 1).verdict {
            Niceness::Pass => None,
            v => Some(format!("{c}: {v:?}")),
        }
    });
    let instance = format!("{masks} clopen subsets of 2^ω generated at length {d}");
    Ok(match failure {
        None => Finding::pass(instance),
        Some(w) => Finding::fail(instance, w),
    })
}

/// Distinct clopen sets get distinct trees, told apart by level `d + 1`.
fn nt_uniqueness(d: u64, _seed: u64) -> Outcome {
    let d = d as usize;
    let words = Bits::all_of_length(d);
    let masks = 1u64 << words.len();
    let levels: Vec<BTreeSet<Bits>> = (0..masks)
        .into_par_iter()
        .map(|mask| encode_closed(&CDesc::from_clopen(clopen_of_mask(&words, mask)).expect("cantor")).level(d + 1))
        .collect();
    let distinct: HashSet<&BTreeSet<Bits>> = levels.iter().collect();
    let instance = format!("{masks} clopen subsets of 2^ω generated at length {d}");
    Ok(if distinct.len() as u64 == masks {
        Finding::pass(instance)
    } else {
        Finding::fail(instance, format!("only {} distinct trees at level {}", distinct.len(), d + 1))
    })
}

/// Neighbourhoods `N(F0, F1)` with nodes in `2^{≤d}` and `|F0| + |F1| ≤ 3`.
fn neighborhoods(d: usize) -> Vec<NTNeighborhood> {
    let nodes = Bits::all_up_to(d);
    let mut hoods = Vec::new();
    let mut pick = |chosen: &[usize]| {
        for signs in 0..1u32 << chosen.len() {
            let (mut f0, mut f1) = (Vec::new(), Vec::new());
            for (b, &i) in chosen.iter().enumerate() {
                if signs >> b & 1 == 1 {
                    f1.push(nodes[i].clone());
                } else {
                    f0.push(nodes[i].clone());
                }
            }
            hoods.push(NTNeighborhood::new(f0, f1));
        }
    };
    let n = nodes.len();
    pick(&[]);
    for i in 0..n {
        pick(&[i]);
        for j in i + 1..n {
            pick(&[i, j]);
            for k in j + 1..n {
                pick(&[i, j, k]);
            }
        }
    }
    hoods
}

/// The splitter yields two distinct trees exactly where a nonempty tree
/// exists, and the certificate exactly where only the empty tree does,
/// judged against all trees cut at depth `d`.
fn nt_isolation(d: u64, _seed: u64) -> Outcome {
    let d = d as usize;
    let leaves = Bits::all_of_length(d);
    let trees: Vec<BTreeSet<Bits>> = (0u64..1 << leaves.len())
        .map(|mask| {
            let mut nodes = BTreeSet::new();
            for leaf in (0..leaves.len()).filter(|i| mask >> i & 1 == 1) {
                for k in 0..=d {
                    nodes.insert(Bits(leaves[leaf].0[..k].to_vec()));
                }
            }
            nodes
        })
        .collect();
    let inside = |h: &NTNeighborhood| -> Vec<usize> {
        (0..trees.len())
            .filter(|&m| h.f0.iter().all(|s| trees[m].contains(s)) && !h.f1.iter().any(|s| trees[m].contains(s)))
            .collect()
    };
    let certificate = nt_isolation_certificate();
    let only_empty = inside(&certificate);
    let hoods = neighborhoods(d);
    let instance = |pairs: usize, certified: usize| {
        format!("{} neighbourhoods over 2^≤{d}: {pairs} split, {certified} certified", hoods.len())
    };
    if only_empty != vec![0] {
        return Ok(Finding::fail(instance(0, 0), format!("{certificate} admits a nonempty tree")));
    }
    let (mut pairs, mut certified) = (0, 0);
    for h in &hoods {
        let within = inside(h);
        let nonempty = within.iter().any(|&m| m != 0);
        let problem = match nt_split_neighborhood(h) {
            Ok(NtSplit::Pair { first, second, node }) => {
                pairs += 1;
                if !nonempty {
                    Some("pair reported without a nonempty tree".to_string())
                } else if !(h.contains(&first) && h.contains(&second)) {
                    Some("split leaves the neighbourhood".to_string())
                } else if first.contains(&node) == second.contains(&node) {
                    Some(format!("trees agree at {node}"))
                } else {
                    None
                }
            }
            Ok(NtSplit::OnlyEmptyTree) => {
                certified += 1;
                (within != only_empty).then(|| format!("not equivalent to {certificate}"))
            }
            Ok(NtSplit::Empty) | Err(_) => (!within.is_empty()).then(|| "nonempty neighbourhood not split".to_string()),
        };
        if let Some(p) = problem {
            return Ok(Finding::fail(instance(pairs, certified), format!("{h}: {p}")));
        }
    }
    Ok(Finding::certified(instance(pairs, certified), format!("certificate {certificate}")))
}

/// The empty nice tree is isolated at depth 1, while the marked family has
/// no isolating neighbourhood at any depth up to `d`.
fn marked_isolation(d: u64, _seed: u64) -> Outcome {
    let instance = format!("empty section of NT and of the marked family, depths ≤ {d}");
    let nt = empty_section_isolation(&NtSearch, &NiceTreeDesc::empty(), 1)?;
    let Isolation::Isolated { neighborhood, .. } = nt else {
        return Ok(Finding::fail(instance, "the empty nice tree is not isolated at depth 1"));
    };
    let mut last = String::new();
    for k in 0..=d as usize {
        match empty_section_isolation(&MarkedSearch, &Periodic::constant(0u8), k)? {
            Isolation::Isolated { neighborhood, .. } => {
                return Ok(Finding::fail(instance, format!("marked family isolated at depth {k} by {neighborhood:?}")));
            }
            Isolation::DepthInsufficient { witness, .. } => last = witness,
        }
    }
    Ok(Finding::certified(instance, format!("NT isolated by {neighborhood}; marked family still admits parameter {last} at depth {d}")))
}

/// Every `n ∈ [2, 2^d]` decodes to a preimage and back, and every pair with
/// index in range is hit.
fn z_index_suite(d: u64, _seed: u64) -> Outcome {
    let top = 1u64 << d;
    let instance = format!("{} indices in [2, 2^{d}]", top - 1);
    let failure = (2..=top).into_par_iter().find_map_first(|n| match z_index_inverse(n) {
        Ok((k, l)) if k >= 1 && l >= 1 && (1u64 << (k - 1)) * (2 * l - 1) + 1 == n && z_index(k, l).ok() == Some(n) => {
            None
        }
        Ok((k, l)) => Some(format!("{n} ↦ ({k},{l}) is not a preimage")),
        Err(e) => Some(format!("{n}: {e}")),
    });
    if let Some(w) = failure {
        return Ok(Finding::fail(instance, w));
    }
    let mut forward = 0;
    for k in 1..=d {
        for l in 1.. {
            let n = (1u64 << (k - 1)) * (2 * l - 1) + 1;
            if n > top {
                break;
            }
            if z_index_inverse(n).ok() != Some((k, l)) {
                return Ok(Finding::fail(instance, format!("({k},{l}) does not round-trip")));
            }
            forward += 1;
        }
    }
    Ok(if forward == top - 1 {
        Finding::pass(instance)
    } else {
        Finding::fail(instance, format!("{forward} pairs cover the range"))
    })
}

/// Closed subsets of `Z` generated from `{∞} ∪ [0,3]²`.
fn z_round_trip(d: u64, _seed: u64) -> Outcome {
    let sets = desk_sets();
    let grid = d.min(32);
    let instance = format!("{} closed subsets of Z, membership on [0,{grid})², agreement to depth {d}", sets.len());
    let failure = sets.par_iter().find_map_first(|s| -> Option<String> {
        let check = || -> uuniv::Result<Option<String>> {
            let c = ZClosedDesc::from_set(s)?;
            let p = z_encode(&c)?;
            if !z_decode(&p)?.agrees(&c, d)? {
                return Ok(Some(format!("{s}: decode∘encode differs")));
            }
            for pt in (0..grid).flat_map(|i| (0..grid).map(move |j| ZPoint::At(i, j))).chain([ZPoint::Inf]) {
                if z_member(&p, pt)? != s.contains(pt) {
                    return Ok(Some(format!("{s}: membership at {pt}")));
                }
            }
            Ok(None)
        };
        check().unwrap_or_else(|e| Some(format!("{s}: {e}")))
    });
    Ok(match failure {
        None => Finding::pass(instance),
        Some(w) => Finding::fail(instance, w),
    })
}

/// Distinct closed sets get parameters differing in `n` or in `x↾d`.
fn z_uniqueness(d: u64, _seed: u64) -> Outcome {
    let sets = desk_sets();
    let instance = format!("{} closed subsets of Z", sets.len());
    let mut seen = HashSet::new();
    for s in &sets {
        let p = z_encode(&ZClosedDesc::from_set(s)?)?;
        if !seen.insert((p.n, p.x.truncate(d as usize)?)) {
            return Ok(Finding::insufficient(instance, format!("{s} collides with an earlier set at depth {d}")));
        }
    }
    Ok(Finding::pass(instance))
}

fn dyadic(a: i128, b: i128, den: i128) -> Cylinder {
    Cylinder::Dyadic(RatInterval::new(q(a, den), q(b, den)).expect("a < b"))
}

/// Regions of the reals generated by at most `k` intervals on the 1/8 grid of `[0, 1]`.
fn grid_regions(k: usize) -> Result<Vec<RegionDesc>> {
    let intervals: Vec<Cylinder> = (0..=8).flat_map(|a| (a + 1..=8).map(move |b| dyadic(a, b, 8))).collect();
    let mut regions = BTreeSet::new();
    regions.insert(RegionDesc::empty(SpaceTag::RealsDyadic));
    let mut frontier: Vec<(usize, Vec<Cylinder>)> = vec![(0, Vec::new())];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, gens) in &frontier {
            for (i, c) in intervals.iter().enumerate().skip(*start) {
                let mut g = gens.clone();
                g.push(c.clone());
                regions.insert(RegionDesc::from_cylinders(SpaceTag::RealsDyadic, g.clone())?);
                next.push((i, g));
            }
        }
        frontier = next;
    }
    Ok(regions.into_iter().collect())
}

/// `⋃G_U = U` on rational probes with description budget `d`, and `G_U`
/// passes the goodness check on the basis of size `min(d, 6)`.
fn lc_round_trip(d: u64, _seed: u64) -> Outcome {
    let regions = grid_regions(2)?;
    let probes: Vec<Q> = rationals_in_height_order().filter(|x| *x >= q(-1, 4) && *x <= q(5, 4)).take(200).collect();
    let fragment = dyadic_fragment(d.min(6) as u32, &q(-1, 8), &q(9, 8));
    let instance = format!(
        "{} regions × {} probes; goodness on {} basic sets",
        regions.len(),
        probes.len(),
        fragment.len()
    );
    let findings: Vec<Option<Finding>> = regions
        .par_iter()
        .map(|u| {
            let g = lc_encode_open(u).ok()?;
            for y in &probes {
                let p = Point::Real(*y);
                match family_union_member(&g, &p, d as usize) {
                    UnionVerdict::In(c) if !(u.contains(&p) && c.contains(&p) && g.member(&c)) => {
                        return Some(Finding::fail(&instance, format!("{u}: {c} wrongly covers {y}")));
                    }
                    UnionVerdict::OutAtBudget(b) if u.contains(&p) => {
                        return Some(Finding::insufficient(&instance, format!("{u}: {y} not reached within budget {b}")));
                    }
                    _ => {}
                }
            }
            let verdict = lc_goodness_check(&g, &fragment);
            (!verdict.is_pass()).then(|| Finding::fail(&instance, format!("{u}: {verdict}")))
        })
        .collect();
    for (u, f) in regions.iter().zip(&findings) {
        if let Some(f) = f {
            return Ok(f.clone());
        }
        if lc_encode_open(u).is_err() {
            return Ok(Finding::fail(&instance, format!("{u}: not encodable")));
        }
    }
    Ok(Finding::pass(instance))
}

/// Distinct regions give distinct families, told apart by basic sets of size `≤ d`.
fn lc_uniqueness(d: u64, _seed: u64) -> Outcome {
    let regions = grid_regions(3)?;
    let witnesses = dyadic_fragment(d as u32, &q(-1, 8), &q(9, 8));
    let instance = format!("{} regions on the 1/8 grid, {} witnesses", regions.len(), witnesses.len());
    let signatures: Vec<Vec<bool>> = regions
        .par_iter()
        .map(|u| {
            let g = lc_encode_open(u).expect("dyadic regions encode");
            witnesses.iter().map(|b| g.member(b)).collect()
        })
        .collect();
    let mut seen = std::collections::HashMap::new();
    for (u, s) in regions.iter().zip(&signatures) {
        if let Some(v) = seen.insert(s, u) {
            return Ok(Finding::insufficient(instance, format!("{v} and {u} agree at size {d}")));
        }
    }
    Ok(Finding::pass(instance))
}

/// On cells of `ω × 2^ω` with two rows and words of length `≤ d`: each
/// neighbourhood with `|F0| + |F1| ≤ 2` is split into two good families
/// unless some forbidden cell lies inside the union of the required ones.
fn lc_splitter(d: u64, _seed: u64) -> Outcome {
    let cells = omega_cantor_fragment(2, d as usize);
    let check = omega_cantor_fragment(3, d as usize + 1);
    let mut hoods: Vec<(Vec<Cylinder>, Vec<Cylinder>)> = vec![(vec![], vec![])];
    for (i, a) in cells.iter().enumerate() {
        hoods.push((vec![a.clone()], vec![]));
        hoods.push((vec![], vec![a.clone()]));
        for b in &cells[i + 1..] {
            hoods.push((vec![a.clone(), b.clone()], vec![]));
            hoods.push((vec![], vec![a.clone(), b.clone()]));
        }
        for b in &cells {
            if a != b {
                hoods.push((vec![a.clone()], vec![b.clone()]));
            }
        }
    }
    let instance = |split: usize| format!("{} neighbourhoods over {} cells: {split} split", hoods.len(), cells.len());
    let mut split = 0;
    for (f0, f1) in &hoods {
        let required = ClopenSet::normalize(SpaceTag::OmegaCantor, f0.clone())?;
        let consistent = f1.iter().all(|b| {
            let cell = ClopenSet::normalize(SpaceTag::OmegaCantor, vec![b.clone()]).expect("one tag");
            !cell.subset_of(&required).unwrap_or(false)
        });
        let problem = match lc_split_neighborhood(SpaceTag::OmegaCantor, f0, f1) {
            Ok(s) => {
                split += 1;
                let inside = |g: &uuniv::good_families::GoodSetDesc| {
                    f0.iter().all(|c| g.member(c)) && !f1.iter().any(|c| g.member(c))
                };
                if !consistent {
                    Some("inconsistent yet split".to_string())
                } else if !(inside(&s.first) && inside(&s.second)) {
                    Some("a family leaves the neighbourhood".to_string())
                } else if !(s.first.member(&s.witness) && !s.second.member(&s.witness)) {
                    Some(format!("families agree at {}", s.witness))
                } else {
                    [&s.first, &s.second]
                        .iter()
                        .map(|g| lc_goodness_check(g, &check))
                        .find(|v| !v.is_pass())
                        .map(|v| v.to_string())
                }
            }
            Err(_) => consistent.then(|| "consistent but not split".to_string()),
        };
        if let Some(p) = problem {
            return Ok(Finding::fail(instance(split), format!("N({f0:?}, {f1:?}): {p}")));
        }
    }
    Ok(Finding::pass(instance(split)))
}

/// Saturated families over `ω^ω` on words over `{0,1,2}` of length `≤ d`:
/// encoded regions verify, and neighbourhoods split unless a required word
/// has a forbidden extension.
fn sat_splitter(d: u64, _seed: u64) -> Outcome {
    let cyls = baire_fragment(3, d as usize);
    let mut regions = vec![Vec::new()];
    for (i, a) in cyls.iter().enumerate() {
        regions.push(vec![a.clone()]);
        for b in &cyls[i + 1..] {
            regions.push(vec![a.clone(), b.clone()]);
        }
    }
    let bad_region = regions.par_iter().find_map_first(|gens| {
        let w = RegionDesc::from_cylinders(SpaceTag::Baire, gens.clone()).ok()?;
        let v = sat_encode_open(&w).map(|g| sat_verify_fragment(&g, &cyls, 3));
        match v {
            Ok(v) if v.is_pass() => None,
            Ok(v) => Some(format!("{w}: {v}")),
            Err(e) => Some(format!("{w}: {e}")),
        }
    });
    let mut hoods: Vec<(Vec<Cylinder>, Vec<Cylinder>)> = vec![(vec![], vec![])];
    for (i, a) in cyls.iter().enumerate() {
        hoods.push((vec![a.clone()], vec![]));
        hoods.push((vec![], vec![a.clone()]));
        for b in &cyls[i + 1..] {
            hoods.push((vec![a.clone(), b.clone()], vec![]));
            hoods.push((vec![], vec![a.clone(), b.clone()]));
        }
        for b in &cyls {
            if a != b {
                hoods.push((vec![a.clone()], vec![b.clone()]));
            }
        }
    }
    let instance = format!("{} regions, {} neighbourhoods", regions.len(), hoods.len());
    if let Some(w) = bad_region {
        return Ok(Finding::fail(instance, w));
    }
    let extends = |t: &Cylinder, s: &Cylinder| match (t, s) {
        (Cylinder::Baire(t), Cylinder::Baire(s)) => t.starts_with(s),
        _ => false,
    };
    let bad_hood = hoods.par_iter().find_map_first(|(f0, f1)| {
        let consistent = !f1.iter().any(|t| f0.iter().any(|s| extends(t, s)));
        let problem = match sat_split_neighborhood(f0, f1) {
            Ok(_) if !consistent => Some("inconsistent yet split".to_string()),
            Ok(s) => [&s.first, &s.second]
                .iter()
                .find_map(|g| {
                    let v = sat_verify_fragment(g, &cyls, 3);
                    if !v.is_pass() {
                        Some(v.to_string())
                    } else if !(f0.iter().all(|c| g.member(c)) && !f1.iter().any(|c| g.member(c))) {
                        Some("a family leaves the neighbourhood".to_string())
                    } else {
                        None
                    }
                })
                .or_else(|| (s.first.member(&s.r) == s.second.member(&s.r)).then(|| format!("families agree at {}", s.r))),
            Err(_) => consistent.then(|| "consistent but not split".to_string()),
        };
        problem.map(|p| format!("N({f0:?}, {f1:?}): {p}"))
    });
    Ok(match bad_hood {
        None => Finding::pass(instance),
        Some(w) => Finding::fail(instance, w),
    })
}

/// Filters of the 256 subsets of `{0..7}` satisfy the four axioms on the
/// conditions over `{0..d}` and decode back on `{0..15}`.
fn gfil_axioms(d: u64, _seed: u64) -> Outcome {
    let universe = omega_universe(d);
    let points: Vec<u64> = (0..=d + 2).collect();
    let instance = format!("256 subsets of {{0..7}}; {} conditions", universe.len());
    let failure = (0u32..256).into_par_iter().find_map_first(|mask| {
        let set: Vec<u64> = (0..8).filter(|i| mask >> i & 1 == 1).collect();
        let g = gfil_encode_open(OmegaSpace, OmegaRegion::finite(set.iter().copied()));
        let report = gfil_axioms_check(&g, &universe, &points);
        if !report.all_pass() {
            return Some(format!("{set:?}: {report:?}"));
        }
        (0..16).find(|x| gfil_decode(&g, x) != set.contains(x)).map(|x| format!("{set:?}: decode at {x}"))
    });
    Ok(match failure {
        None => Finding::pass(instance),
        Some(w) => Finding::fail(instance, w),
    })
}

/// Below every condition over `{0..d}` lie two incompatible conditions.
fn gfil_splitter(d: u64, _seed: u64) -> Outcome {
    let universe = omega_universe(d);
    let instance = format!("{} conditions over {{0..{d}}}", universe.len());
    let failure = universe.par_iter().find_map_first(|p| {
        let (r, s) = gfil_split_below(&OmegaSpace, p);
        let ok = poset_relate(&OmegaSpace, &r, &s) == PosetRelation::Incompatible
            && poset_relate(&OmegaSpace, &r, p) == PosetRelation::Leq
            && poset_relate(&OmegaSpace, &s, p) == PosetRelation::Leq;
        (!ok).then(|| format!("split below {p} gives {r}, {s}"))
    });
    Ok(match failure {
        None => Finding::pass(instance),
        Some(w) => Finding::fail(instance, w),
    })
}

fn random_baire(rng: &mut ChaCha8Rng, len: usize) -> Stream<u64> {
    let w: Vec<u64> = (0..len).map(|_| geometric(rng)).collect();
    Stream::Periodic(Periodic::padded(w, 0))
}

/// Depth-`d` image cells of both presentations partition `2^d`, and 1000
/// seeded pairs of `ω^ω` points have images that differ at their splitting depth.
fn brouwer(d: u64, seed: u64) -> Outcome {
    let d = d as usize;
    let instance = format!("image cells at depth {d}; 1000 pairs from seed {seed}");
    let codes: Vec<Vec<u8>> =
        BrouwerMap::new(OmegaPlusPresentation).image_cells(d)?.into_iter().map(|c| c.1).collect();
    if let Err(w) = partition_check(&codes, d) {
        return Ok(Finding::fail(instance, format!("(ω+1)^ω cells fail at {w:?}")));
    }
    let s_codes: Vec<Vec<u8>> = BrouwerMap::new(SPresentation).image_cells(d)?.into_iter().map(|c| c.1).collect();
    if let Err(w) = partition_check(&s_codes, d) {
        return Ok(Finding::fail(instance, format!("S cells fail at {w:?}")));
    }
    let b = baire_to_cantor();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let horizon = 2 * d;
    for _ in 0..1000 {
        let x = random_baire(&mut rng, horizon);
        let y = random_baire(&mut rng, horizon);
        if x.truncate(horizon)? == y.truncate(horizon)? {
            continue;
        }
        let Some(k) = b.separation(&x, &y, horizon)? else {
            return Ok(Finding::fail(instance, format!("{:?}, {:?} not separated", x.truncate(horizon)?, y.truncate(horizon)?)));
        };
        if apply_stream(&b, &x).truncate(k)? == apply_stream(&b, &y).truncate(k)? {
            return Ok(Finding::fail(instance, format!("{:?}, {:?} agree at depth {k}", x.truncate(horizon)?, y.truncate(horizon)?)));
        }
    }
    Ok(Finding::pass(instance))
}

/// The `2^ω × Z` family from the `S` transfer has the right sections on the
/// 1024 generated closed sets, pairwise distinct; the product-sum of three `Z`
/// families agrees with `z_decode` on 1000 seeded queries.
fn transfer(d: u64, seed: u64) -> Outcome {
    let depth = d as usize;
    let probes: Vec<ZPoint> = (0..4).flat_map(|i| (0..4).map(move |j| ZPoint::At(i, j))).chain([ZPoint::Inf]).collect();
    let instance = format!("1024 sections over 2^ω × Z; 1000 product-sum queries from seed {seed}");
    let s = s_transfer(ZFamily, &ZClosedDesc::whole(), &probes, 8)?;
    let mut sections = HashSet::new();
    for set in desk_sets() {
        let p = s.encode(&ZClosedDesc::from_set(&set)?)?;
        let mut row = Vec::new();
        for pt in &probes {
            let m = s.member(&p, pt, depth)?;
            if m.is_in() != set.contains(*pt) {
                return Ok(Finding::fail(instance, format!("{set}: section differs at {pt} ({m:?})")));
            }
            row.push(m.is_in());
        }
        sections.insert(row);
    }
    if sections.len() != 1024 {
        return Ok(Finding::fail(instance, format!("{} distinct sections", sections.len())));
    }
    let ps = product_sum_uu(vec![ZFamily, ZFamily, ZFamily])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let xs: Vec<IndexedStream> = (0..3)
            .map(|_| IndexedStream::new(geometric(&mut rng), Stream::Periodic(periodic_bits(&mut rng))))
            .collect();
        let j = rng.gen_range(0..3);
        let y = if rng.gen_bool(0.1) { ZPoint::Inf } else { ZPoint::At(geometric(&mut rng), geometric(&mut rng)) };
        let got = ps.member(&xs, &(j, y), depth)?;
        let want = z_decode(&xs[j])?.contains(y)?;
        if got.is_in() != want || !(got.is_in() || got.is_out()) {
            return Ok(Finding::fail(instance, format!("part {j} of {xs:?} at {y}: {got:?}")));
        }
    }
    Ok(Finding::pass(instance))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_defaults_in_range() {
        let ids: HashSet<&str> = SUITES.iter().map(|s| s.id).collect();
        assert_eq!(ids.len(), SUITES.len());
        for s in SUITES {
            assert!(s.depths.0 <= s.default_depth && s.default_depth <= s.depths.1, "{}", s.id);
        }
    }

    #[test]
    fn unknown_suite_and_bad_depth() {
        assert!(matches!(run_verify("bogus", None, 0), Err(CliError::Usage(_))));
        assert!(matches!(run_verify("nt-isolation", Some(9), 0), Err(CliError::Usage(_))));
    }

    #[test]
    fn small_suites_pass() {
        for (id, d) in [("nt-round-trip", 2), ("nt-isolation", 2), ("z-index", 10), ("gfil-splitter", 2)] {
            let r = run_verify(id, Some(d), 1).unwrap();
            assert!(r.iter().all(CertificateRecord::passed), "{r:?}");
        }
    }
}
