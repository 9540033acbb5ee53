//! Seeded round-trip fuzzing. Descriptions are drawn sequentially from one
//! ChaCha stream, so a seed fixes every case; checks then run in parallel and
//! the first failure in input order is reported.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use uuniv::good_families::{
    closure_within, family_union_member, lc_encode_open, sat_encode_open, sat_union_member, UnionVerdict,
};
use uuniv::good_filters::{gfil_axioms_check, gfil_decode, gfil_encode_open, omega_universe, OmegaRegion, OmegaSpace};
use uuniv::nice_trees::{encode_closed, tree_levels, CDesc, Niceness};
use uuniv::rational::{q, Q};
use uuniv::spaces::parse::parse_region;
use uuniv::spaces::{Bits, ClopenSet, Cylinder, Point, RatInterval, RegionDesc, SpaceTag};
use uuniv::stream::Periodic;
use uuniv::z_space::{z_decode, z_encode, z_member, ZClosedDesc, ZPoint, ZSetDesc};

use crate::sample::{geometric, periodic_bits, periodic_nats, word};
use crate::{timed, CertificateRecord, CliError, Finding, Result};

/// Codec name, default depth, and what the depth bounds.
pub const FUZZ_CODECS: &[(&str, u64, &str)] = &[
    ("nice-tree", 8, "tree levels compared"),
    ("z", 32, "agreement depth"),
    ("good-family-reals", 16, "union search budget"),
    ("good-family-omega-cantor", 16, "union search budget"),
    ("saturated-baire", 16, "union search budget"),
    ("good-filter-omega", 3, "conditions over {0..depth}"),
];

/// Why a case did not pass.
enum Problem {
    Fail(String),
    Insufficient(String),
}

type Case = std::result::Result<(), Problem>;

fn fail<T>(msg: String) -> std::result::Result<T, Problem> {
    Err(Problem::Fail(msg))
}

pub fn run_fuzz(codec: &str, count: u64, depth: Option<u64>, seed: u64) -> Result<CertificateRecord> {
    let &(name, default_depth, _) = FUZZ_CODECS.iter().find(|c| c.0 == codec).ok_or_else(|| {
        let names: Vec<&str> = FUZZ_CODECS.iter().map(|c| c.0).collect();
        CliError::Usage(format!("unknown fuzz codec `{codec}`; expected one of {}", names.join(", ")))
    })?;
    if count == 0 {
        return Err(CliError::Usage("--count must be positive".into()));
    }
    let d = depth.unwrap_or(default_depth);
    if d == 0 {
        return Err(CliError::Usage("--depth must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instance = format!("{count} random descriptions from seed {seed}");
    let (finding, ms) = timed(|| match name {
        "nice-tree" => drive(&instance, (0..count).map(|_| nice_tree_case(&mut rng)).collect(), |c| check_nice_tree(c, d as usize)),
        "z" => drive(&instance, (0..count).map(|_| z_case(&mut rng)).collect(), |c| check_z(c, d)),
        "good-family-reals" => drive(&instance, (0..count).map(|_| reals_case(&mut rng)).collect(), |c| check_lc(c, d as usize)),
        "good-family-omega-cantor" => drive(&instance, (0..count).map(|_| omega_cantor_case(&mut rng)).collect(), |c| check_lc(c, d as usize)),
        "saturated-baire" => drive(&instance, (0..count).map(|_| baire_case(&mut rng)).collect(), |c| check_saturated(c, d as usize)),
        _ => drive(&instance, (0..count).map(|_| filter_case(&mut rng)).collect(), |c| check_filter(c, d)),
    });
    Ok(CertificateRecord::new(format!("fuzz:{name}"), d, finding, Some(ms)))
}

fn drive<C: Sync>(instance: &str, cases: Vec<C>, check: impl Fn(&C) -> Case + Sync) -> Finding {
    match cases.par_iter().find_map_first(|c| check(c).err()) {
        None => Finding::pass(instance),
        Some(Problem::Fail(w)) => Finding::fail(instance, w),
        Some(Problem::Insufficient(w)) => Finding::insufficient(instance, w),
    }
}

/// A closed subset of `2^ω`: a geometric number of cylinders and points.
fn nice_tree_case(rng: &mut ChaCha8Rng) -> (Vec<Bits>, Vec<Periodic<u8>>) {
    let gens = (0..geometric(rng)).map(|_| Bits(word(rng, 1))).collect();
    let points = (0..geometric(rng)).map(|_| periodic_bits(rng)).collect();
    (gens, points)
}

fn check_nice_tree((gens, points): &(Vec<Bits>, Vec<Periodic<u8>>), d: usize) -> Case {
    let clopen = ClopenSet::normalize(SpaceTag::Cantor, gens.iter().cloned().map(Cylinder::Cantor).collect())
        .map_err(|e| Problem::Fail(e.to_string()))?;
    let c = CDesc::new(clopen, points.clone()).map_err(|e| Problem::Fail(e.to_string()))?;
    match CDesc::parse(&c.to_string()) {
        Ok(back) if back == c => {}
        _ => return fail(format!("{c}: text form does not parse back")),
    }
    let t = encode_closed(&c);
    for s in Bits::all_up_to(d) {
        let meets = gens.iter().any(|g| g.comparable(&s)) || points.iter().any(|p| p.truncate(s.len()) == s.0);
        if t.contains(&s) != meets {
            return fail(format!("{c}: node {s}"));
        }
    }
    match tree_levels(&t, d).verdict {
        Niceness::Pass => Ok(()),
        v => fail(format!("{c}: {v:?}")),
    }
}

/// A closed subset of `Z`: finitely many rows unless `∞` is in.
fn z_case(rng: &mut ChaCha8Rng) -> ZSetDesc {
    let inf = rng.gen_bool(0.5);
    if rng.gen_bool(0.5) {
        let pts: Vec<(u64, u64)> = (0..geometric(rng)).map(|_| (geometric(rng), geometric(rng))).collect();
        return ZSetDesc::finite(inf, pts);
    }
    let rows = (0..geometric(rng)).map(|_| (geometric(rng), periodic_bits(rng))).collect();
    let tail = if inf { periodic_bits(rng) } else { Periodic::constant(0) };
    ZSetDesc::new(inf, rows, tail)
}

fn check_z(s: &ZSetDesc, d: u64) -> Case {
    let err = |e: uuniv::Error| Problem::Fail(format!("{s}: {e}"));
    match ZSetDesc::parse(&s.to_string()) {
        Ok(back) if back == *s => {}
        _ => return fail(format!("{s}: text form does not parse back")),
    }
    let c = ZClosedDesc::from_set(s).map_err(err)?;
    let p = z_encode(&c).map_err(err)?;
    if !z_decode(&p).and_then(|b| b.agrees(&c, d)).map_err(err)? {
        return fail(format!("{s}: decode∘encode differs within depth {d}"));
    }
    for pt in (0..8).flat_map(|i| (0..8).map(move |j| ZPoint::At(i, j))).chain([ZPoint::Inf]) {
        if z_member(&p, pt).map_err(err)? != s.contains(pt) {
            return fail(format!("{s}: membership at {pt}"));
        }
    }
    Ok(())
}

/// An open region with its probe points.
type RegionCase = (RegionDesc, Vec<Point>);

fn random_rational(rng: &mut ChaCha8Rng) -> Q {
    let den = rng.gen_range(1..=16);
    q(rng.gen_range(-2 * den..=3 * den), den)
}

/// Up to a few dyadic intervals inside `(-2, 3)`, minus a few dyadic points.
fn reals_case(rng: &mut ChaCha8Rng) -> RegionCase {
    let gens: Vec<Cylinder> = (0..geometric(rng))
        .map(|_| {
            let k = geometric(rng).min(5) as u32;
            let den = 1i128 << k;
            let a = rng.gen_range(-2 * den..3 * den);
            let len = geometric(rng) as i128 + 1;
            Cylinder::Dyadic(RatInterval::new(q(a, den), q(a + len, den)).expect("a < a + len"))
        })
        .collect();
    let removed: Vec<Point> = (0..geometric(rng))
        .map(|_| Point::Real(q(rng.gen_range(-16..48), 16)))
        .collect();
    let u = RegionDesc::from_cylinders(SpaceTag::RealsDyadic, gens)
        .and_then(|u| u.without(&removed))
        .expect("dyadic region");
    let probes = (0..16).map(|_| Point::Real(random_rational(rng))).chain(removed).collect();
    (u, probes)
}

fn omega_cantor_case(rng: &mut ChaCha8Rng) -> RegionCase {
    let gens: Vec<Cylinder> = (0..geometric(rng))
        .map(|_| Cylinder::OmegaCantor { row: geometric(rng), word: Bits(word(rng, 0)) })
        .collect();
    let removed: Vec<Point> = (0..geometric(rng)).map(|_| Point::OmegaCantor(geometric(rng), periodic_bits(rng))).collect();
    let u = RegionDesc::from_cylinders(SpaceTag::OmegaCantor, gens)
        .and_then(|u| u.without(&removed))
        .expect("omega-x-cantor region");
    let probes = (0..16).map(|_| Point::OmegaCantor(geometric(rng), periodic_bits(rng))).chain(removed).collect();
    (u, probes)
}

/// `⋃G_U` agrees with `U` on the probes: a cover found must be a member
/// inside `U` containing the probe; a probe in `U` left uncovered exhausts
/// the budget.
fn check_lc((u, probes): &RegionCase, budget: usize) -> Case {
    match parse_region(u.tag(), &u.to_string()) {
        Ok(back) if back == *u => {}
        _ => return fail(format!("{u}: text form does not parse back")),
    }
    let g = lc_encode_open(u).map_err(|e| Problem::Fail(format!("{u}: {e}")))?;
    for p in probes {
        match family_union_member(&g, p, budget) {
            UnionVerdict::In(c) => {
                if !(c.contains(p) && g.member(&c) && closure_within(&c, u) && u.contains(p)) {
                    return fail(format!("{u}: {c} wrongly covers {p}"));
                }
            }
            UnionVerdict::OutAtBudget(b) if u.contains(p) => {
                return Err(Problem::Insufficient(format!("{u}: {p} not covered within budget {b}")));
            }
            UnionVerdict::OutAtBudget(_) => {}
        }
    }
    Ok(())
}

/// An open subset of `ω^ω` given by cylinders of length at least one.
fn baire_case(rng: &mut ChaCha8Rng) -> (RegionDesc, Vec<Periodic<u64>>) {
    let gens: Vec<Cylinder> = (0..geometric(rng))
        .map(|_| Cylinder::Baire((0..geometric(rng) + 1).map(|_| geometric(rng)).collect()))
        .collect();
    let w = RegionDesc::from_cylinders(SpaceTag::Baire, gens).expect("baire region");
    let probes = (0..16).map(|_| periodic_nats(rng)).collect();
    (w, probes)
}

fn check_saturated((w, probes): &(RegionDesc, Vec<Periodic<u64>>), budget: usize) -> Case {
    match parse_region(SpaceTag::Baire, &w.to_string()) {
        Ok(back) if back == *w => {}
        _ => return fail(format!("{w}: text form does not parse back")),
    }
    let g = sat_encode_open(w).map_err(|e| Problem::Fail(format!("{w}: {e}")))?;
    for y in probes {
        let inside = w.contains(&Point::Baire(y.clone()));
        match sat_union_member(&g, y, budget) {
            UnionVerdict::In(c) if !inside || !g.member(&c) => return fail(format!("{w}: {c} wrongly covers {y}")),
            UnionVerdict::OutAtBudget(b) if inside => {
                return Err(Problem::Insufficient(format!("{w}: {y} not covered within budget {b}")));
            }
            _ => {}
        }
    }
    Ok(())
}

/// A subset of `ω`: finite three times in four, else eventually periodic.
fn filter_case(rng: &mut ChaCha8Rng) -> OmegaRegion {
    if rng.gen_bool(0.75) {
        OmegaRegion::finite((0..geometric(rng)).map(|_| geometric(rng)))
    } else {
        OmegaRegion(periodic_bits(rng))
    }
}

fn check_filter(r: &OmegaRegion, d: u64) -> Case {
    let g = gfil_encode_open(OmegaSpace, r.clone());
    let universe = omega_universe(d);
    let points: Vec<u64> = (0..=d + 2).collect();
    let report = gfil_axioms_check(&g, &universe, &points);
    if !report.all_pass() {
        return fail(format!("{r}: {report:?}"));
    }
    match (0..32).find(|x| gfil_decode(&g, x) != r.contains(*x)) {
        Some(x) => fail(format!("{r}: decode at {x}")),
        None => Ok(()),
    }
}
