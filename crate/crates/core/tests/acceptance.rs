//! Acceptance gate: one line per criterion, each checked at its stated scale
//! and time limit against oracles computed independently of the library.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use uuniv::baire_maps::{
    apply_stream, baire_to_cantor, partition_check, product_sum_uu, s_transfer, transfer_uu, BrouwerMap,
    IndexedStream, OmegaPlusPresentation, SPresentation, TransferParam,
};
use uuniv::family::{Membership, UniversalFamily};
use uuniv::good_families::{
    dyadic_fragment, family_union_member, lc_encode_open, lc_goodness_check, sat_encode_open,
    sat_split_neighborhood, sat_verify_fragment, baire_fragment,
};
use uuniv::good_filters::{
    gfil_axioms_check, gfil_decode, gfil_encode_open, gfil_split_below, omega_universe, poset_relate,
    OmegaRegion, OmegaSpace, PosetRelation,
};
use uuniv::nice_trees::{
    decode_clopen, empty_section_isolation, encode_closed, nt_isolation_certificate, nt_split_neighborhood,
    CDesc, MarkedSearch, MarkedTreeFamily, NTNeighborhood, NiceTreeDesc, NtSearch, NtSplit,
};
use uuniv::rational::{q, rationals_in_height_order, Q};
use uuniv::spaces::{Bits, ClopenSet, Cylinder, Point, RatInterval, RegionDesc, SpaceTag};
use uuniv::stream::{Periodic, Stream};
use uuniv::z_space::{
    desk_sets, z_decode, z_encode, z_index, z_index_inverse, z_member, ZClosedDesc, ZFamily, ZPoint, ZSetDesc,
};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Letter `n` with probability `2^-(n+1)`.
fn geometric(rng: &mut ChaCha8Rng) -> u64 {
    let mut n = 0;
    while rng.gen_bool(0.5) {
        n += 1;
    }
    n
}

fn criterion_1() -> Check {
    let words = Bits::all_of_length(4);
    let failures: Vec<String> = (0u32..1 << 16)
        .into_par_iter()
        .filter_map(|mask| {
            let chosen: BTreeSet<Bits> =
                (0..16).filter(|i| mask >> i & 1 == 1).map(|i| words[i].clone()).collect();
            let c = ClopenSet::normalize(SpaceTag::Cantor, chosen.iter().cloned().map(Cylinder::Cantor).collect())
                .ok()?;
            let t = encode_closed(&CDesc::from_clopen(c.clone()).ok()?);
            if decode_clopen(&t, 4) != c {
                return Some(format!("decode differs on mask {mask:#06x}"));
            }
            let want: BTreeSet<Bits> = Bits::all_of_length(5)
                .into_iter()
                .filter(|w| chosen.contains(&Bits(w.0[..4].to_vec())))
                .collect();
            (t.level(5) != want).then(|| format!("level 5 differs on mask {mask:#06x}"))
        })
        .collect();
    ensure(failures.is_empty(), || failures[0].clone())?;
    let levels: HashSet<BTreeSet<Bits>> = (0u32..1 << 16)
        .into_par_iter()
        .map(|mask| {
            let gens = (0..16).filter(|i| mask >> i & 1 == 1).map(|i| Cylinder::Cantor(words[i].clone())).collect();
            let c = ClopenSet::normalize(SpaceTag::Cantor, gens).expect("cantor");
            encode_closed(&CDesc::from_clopen(c).expect("cantor")).level(5)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    ensure(levels.len() == 1 << 16, || format!("only {} distinct trees", levels.len()))?;
    Ok("65536 clopen sets: decode∘encode exact, trees pairwise distinct at level 5".into())
}

/// Trees cut to depth 3 are the prefix closures of leaf sets `L ⊆ 2^3`.
fn truncated_trees() -> Vec<BTreeSet<Bits>> {
    (0u32..256)
        .map(|mask| {
            let mut nodes = BTreeSet::new();
            for leaf in Bits::all_of_length(3).iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1) {
                for n in 0..=3 {
                    nodes.insert(Bits(leaf.1 .0[..n].to_vec()));
                }
            }
            nodes
        })
        .collect()
}

fn criterion_2() -> Check {
    let nodes = Bits::all_up_to(3);
    let mut hoods = Vec::new();
    let n = nodes.len();
    for k in 0..=3usize {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            for signs in 0..1u32 << k {
                let (mut f0, mut f1) = (Vec::new(), Vec::new());
                for (b, &i) in idx.iter().enumerate() {
                    if signs >> b & 1 == 1 {
                        f1.push(nodes[i].clone());
                    } else {
                        f0.push(nodes[i].clone());
                    }
                }
                hoods.push(NTNeighborhood::new(f0, f1));
            }
            let mut i = k;
            let mut moved = false;
            while i > 0 {
                i -= 1;
                if idx[i] < n - k + i {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    moved = true;
                    break;
                }
            }
            if !moved {
                break;
            }
        }
    }
    let trees = truncated_trees();
    let certificate: Vec<usize> = {
        let c = nt_isolation_certificate();
        (0..256).filter(|&m| c.f0.iter().all(|s| trees[m].contains(s)) && !c.f1.iter().any(|s| trees[m].contains(s))).collect()
    };
    ensure(certificate == vec![0], || "certificate admits a nonempty tree".into())?;
    let (mut pairs, mut isolated) = (0, 0);
    for h in &hoods {
        let inside: Vec<usize> = (0..256)
            .filter(|&m| h.f0.iter().all(|s| trees[m].contains(s)) && !h.f1.iter().any(|s| trees[m].contains(s)))
            .collect();
        let nonempty = inside.iter().any(|&m| m != 0);
        match nt_split_neighborhood(h) {
            Ok(NtSplit::Pair { first, second, node }) => {
                ensure(nonempty, || format!("{h}: pair reported without a nonempty tree"))?;
                ensure(h.contains(&first) && h.contains(&second), || format!("{h}: split leaves the neighborhood"))?;
                ensure(first.contains(&node) != second.contains(&node), || format!("{h}: trees agree at {node}"))?;
                pairs += 1;
            }
            Ok(NtSplit::OnlyEmptyTree) => {
                ensure(inside == certificate, || format!("{h}: not equivalent to the certificate"))?;
                isolated += 1;
            }
            Ok(NtSplit::Empty) | Err(_) => {
                ensure(inside.is_empty(), || format!("{h}: nonempty neighborhood not split"))?;
            }
        }
    }
    Ok(format!(
        "{} neighborhoods: {pairs} split, {isolated} certified as N(∅,{{ε}})",
        hoods.len()
    ))
}

fn criterion_3() -> Check {
    let top = 1u64 << 20;
    let mut seen = vec![false; top as usize + 1];
    for n in 2..=top {
        let (k, l) = z_index_inverse(n).map_err(|e| e.to_string())?;
        ensure(k >= 1 && l >= 1, || format!("{n} decodes to ({k},{l})"))?;
        ensure((1u64 << (k - 1)) * (2 * l - 1) + 1 == n, || format!("{n} ↦ ({k},{l}) is not a preimage"))?;
        ensure(z_index(k, l).ok() == Some(n), || format!("z_index({k},{l}) != {n}"))?;
        seen[n as usize] = true;
    }
    let mut forward = 0;
    for k in 1..=20u64 {
        for l in 1.. {
            let n = (1u64 << (k - 1)) * (2 * l - 1) + 1;
            if n > top {
                break;
            }
            ensure(z_index_inverse(n).ok() == Some((k, l)), || format!("({k},{l}) does not round-trip"))?;
            forward += 1;
        }
    }
    ensure(forward == top - 1, || format!("{forward} index pairs cover [2, 2^20]"))?;
    Ok(format!("{} indices round-trip both ways", top - 1))
}

fn criterion_4() -> Check {
    let sets = desk_sets();
    let mut params = HashSet::new();
    for d in &sets {
        let c = ZClosedDesc::from_set(d).map_err(|e| e.to_string())?;
        let p = z_encode(&c).map_err(|e| e.to_string())?;
        let x = p.x.truncate(32).map_err(|e| e.to_string())?;
        params.insert((p.n, x));
        let back = z_decode(&p).map_err(|e| e.to_string())?;
        ensure(back.agrees(&c, 32).unwrap_or(false), || format!("{d}: decode∘encode differs"))?;
        for i in 0..32 {
            for j in 0..32 {
                let pt = ZPoint::At(i, j);
                ensure(z_member(&p, pt).ok() == Some(d.contains(pt)), || format!("{d}: membership at {pt}"))?;
            }
        }
        ensure(z_member(&p, ZPoint::Inf).ok() == Some(d.has_inf()), || format!("{d}: membership at inf"))?;
    }
    ensure(params.len() == sets.len(), || format!("{} distinct parameters for {} sets", params.len(), sets.len()))?;
    let p = z_encode(&ZClosedDesc::from_set(&ZSetDesc::finite(false, [(2, 5)])).unwrap()).unwrap();
    ensure(p.n == 23 && p.x.truncate(64).unwrap().iter().all(|b| *b == 0), || "{(2,5)} is not (23, 0)".into())?;
    Ok(format!("{} closed sets: injective, decode∘encode exact at depth 32", sets.len()))
}

fn dyadic(a: i128, b: i128, den: i128) -> Cylinder {
    Cylinder::Dyadic(RatInterval::new(q(a, den), q(b, den)).expect("a < b"))
}

fn criterion_5() -> Check {
    let intervals: Vec<Cylinder> = (0..=8).flat_map(|a| (a + 1..=8).map(move |b| dyadic(a, b, 8))).collect();
    let mut regions = BTreeSet::new();
    let n = intervals.len();
    regions.insert(RegionDesc::empty(SpaceTag::RealsDyadic));
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let gens = vec![intervals[i].clone(), intervals[j].clone(), intervals[k].clone()];
                regions.insert(RegionDesc::from_cylinders(SpaceTag::RealsDyadic, gens).map_err(|e| e.to_string())?);
            }
        }
    }
    let regions: Vec<RegionDesc> = regions.into_iter().collect();
    let probes: Vec<Q> = rationals_in_height_order()
        .filter(|x| *x >= q(-1, 4) && *x <= q(5, 4))
        .take(1000)
        .collect();
    // Size of a dyadic interval is the exponent of its denominator.
    let fragment = dyadic_fragment(8, &q(-1, 8), &q(9, 8));
    let witnesses = dyadic_fragment(5, &q(-1, 8), &q(9, 8));
    let results: Vec<std::result::Result<Vec<bool>, String>> = regions
        .par_iter()
        .map(|u| {
            let g = lc_encode_open(u).map_err(|e| e.to_string())?;
            for y in &probes {
                let p = Point::Real(*y);
                let got = family_union_member(&g, &p, 16).is_in();
                ensure(got == u.contains(&p), || format!("{u}: round trip at {y}"))?;
            }
            ensure(lc_goodness_check(&g, &fragment).is_pass(), || format!("{u}: goodness fails"))?;
            Ok(witnesses.iter().map(|b| g.member(b)).collect())
        })
        .collect();
    let mut signatures = HashSet::new();
    for r in results {
        signatures.insert(r?);
    }
    ensure(signatures.len() == regions.len(), || {
        format!("{} signatures for {} regions", signatures.len(), regions.len())
    })?;
    Ok(format!(
        "{} regions × {} probes exact; goodness on {} basic sets of size ≤ 8; distinct witnesses at size 5 ≤ 9",
        regions.len(),
        probes.len(),
        fragment.len()
    ))
}

fn criterion_6() -> Check {
    let universe = omega_universe(5);
    let points: Vec<u64> = (0..8).collect();
    (0u32..256)
        .into_par_iter()
        .map(|mask| -> std::result::Result<(), String> {
            let set: Vec<u64> = (0..8).filter(|i| mask >> i & 1 == 1).collect();
            let g = gfil_encode_open(OmegaSpace, OmegaRegion::finite(set.iter().copied()));
            let report = gfil_axioms_check(&g, &universe, &points);
            ensure(report.all_pass(), || format!("{set:?}: {report:?}"))?;
            for x in 0..16 {
                ensure(gfil_decode(&g, &x) == set.contains(&x), || format!("{set:?}: decode at {x}"))?;
            }
            Ok(())
        })
        .collect::<std::result::Result<(), String>>()?;
    for p in &universe {
        let (r, q) = gfil_split_below(&OmegaSpace, p);
        ensure(
            poset_relate(&OmegaSpace, &r, &q) == PosetRelation::Incompatible
                && matches!(poset_relate(&OmegaSpace, &r, p), PosetRelation::Leq)
                && matches!(poset_relate(&OmegaSpace, &q, p), PosetRelation::Leq),
            || format!("split below {p} fails"),
        )?;
    }
    Ok(format!("256 regions: axioms, round trip; {} splits incompatible", universe.len()))
}

fn criterion_7() -> Check {
    let cyls = baire_fragment(3, 3);
    let frag = baire_fragment(3, 3);
    let mut regions = vec![Vec::new()];
    for (i, a) in cyls.iter().enumerate() {
        regions.push(vec![a.clone()]);
        for b in &cyls[i + 1..] {
            regions.push(vec![a.clone(), b.clone()]);
        }
    }
    for gens in &regions {
        let w = RegionDesc::from_cylinders(SpaceTag::Baire, gens.clone()).map_err(|e| e.to_string())?;
        let g = sat_encode_open(&w).map_err(|e| e.to_string())?;
        ensure(sat_verify_fragment(&g, &frag, 3).is_pass(), || format!("{w}: fragment check fails"))?;
    }
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
    let prefix = |t: &Cylinder, s: &Cylinder| match (t, s) {
        (Cylinder::Baire(t), Cylinder::Baire(s)) => s.starts_with(t),
        _ => false,
    };
    let mut split = 0;
    for (f0, f1) in &hoods {
        // Membership passes to extensions, so a forbidden extension of a required cylinder is inconsistent.
        let consistent = !f1.iter().any(|t| f0.iter().any(|s| prefix(s, t)));
        match sat_split_neighborhood(f0, f1) {
            Ok(s) => {
                ensure(consistent, || format!("{f0:?} {f1:?}: inconsistent yet split"))?;
                for g in [&s.first, &s.second] {
                    ensure(sat_verify_fragment(g, &frag, 3).is_pass(), || format!("{f0:?} {f1:?}: family fails"))?;
                    ensure(f0.iter().all(|c| g.member(c)) && !f1.iter().any(|c| g.member(c)), || {
                        format!("{f0:?} {f1:?}: family outside the neighborhood")
                    })?;
                }
                ensure(s.first.member(&s.r) != s.second.member(&s.r), || format!("{f0:?} {f1:?}: not distinct"))?;
                split += 1;
            }
            Err(_) => ensure(!consistent, || format!("{f0:?} {f1:?}: consistent but not split"))?,
        }
    }
    Ok(format!("{} regions verified; {split} consistent neighborhoods split", regions.len()))
}

/// An independent run of the `(ω+1)^ω` coding: coordinate states `Tail(k)`
/// as `Some(k)` on the way down, with `π(0) = ω`, `π(n+1) = n`.
fn coding_by_hand(x: &[u64], rounds: usize) -> Vec<u8> {
    let mut tail: Vec<Option<u64>> = vec![Some(0); rounds];
    let mut out = Vec::new();
    for r in 0..rounds {
        for i in 0..=r {
            if let Some(k) = tail[i] {
                let finite = x[i].checked_sub(1);
                if finite == Some(k) {
                    out.push(0);
                    tail[i] = None;
                } else {
                    out.push(1);
                    tail[i] = Some(k + 1);
                }
            }
        }
    }
    out
}

fn random_baire(rng: &mut ChaCha8Rng, len: usize) -> Stream<u64> {
    let w: Vec<u64> = (0..len).map(|_| geometric(rng)).collect();
    Stream::Periodic(Periodic::padded(w, 0))
}

fn criterion_8() -> Check {
    let f = BrouwerMap::new(OmegaPlusPresentation);
    let codes: Vec<Vec<u8>> = f.image_cells(6).map_err(|e| e.to_string())?.into_iter().map(|c| c.1).collect();
    partition_check(&codes, 6).map_err(|w| format!("(ω+1)^ω cells fail at [{w:?}]"))?;
    let g = BrouwerMap::new(SPresentation);
    let s_codes: Vec<Vec<u8>> = g.image_cells(6).map_err(|e| e.to_string())?.into_iter().map(|c| c.1).collect();
    partition_check(&s_codes, 6).map_err(|w| format!("S cells fail at [{w:?}]"))?;

    let b = baire_to_cantor();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut literal_failures, mut first) = (0, None);
    for _ in 0..10_000 {
        let x = random_baire(&mut rng, 12);
        let y = random_baire(&mut rng, 12);
        let fx = apply_stream(&b, &x).truncate(12).map_err(|e| e.to_string())?;
        let fy = apply_stream(&b, &y).truncate(12).map_err(|e| e.to_string())?;
        let (xw, yw) = (x.truncate(12).unwrap(), y.truncate(12).unwrap());
        ensure(fx == coding_by_hand(&xw, 12)[..12], || format!("image of {xw:?} differs from the hand coding"))?;
        if xw == yw {
            continue;
        }
        let k = b.separation(&x, &y, 12).map_err(|e| e.to_string())?.expect("distinct prefixes");
        let (gx, gy) = (apply_stream(&b, &x).truncate(k).unwrap(), apply_stream(&b, &y).truncate(k).unwrap());
        ensure(gx != gy, || format!("{xw:?}, {yw:?} agree at their splitting depth {k}"))?;
        if fx == fy && xw[..6] != yw[..6] {
            literal_failures += 1;
            first.get_or_insert((xw, yw, fx));
        }
    }
    match first {
        None => Ok(format!(
            "{} + {} cells partition 2^6; 10^4 pairs separate at their splitting depth; depth-12 test clean",
            codes.len(),
            s_codes.len()
        )),
        Some((x, y, fx)) => Err(format!(
            "partitions and splitting-depth injectivity hold, but {literal_failures} of 10^4 pairs share \
             a depth-12 image with different 6-prefixes, e.g. {x:?} and {y:?} both give {fx:?}"
        )),
    }
}

fn random_bits(rng: &mut ChaCha8Rng) -> Stream<u8> {
    let pre: Vec<u8> = (0..geometric(rng) + 2).map(|_| rng.gen_range(0..2)).collect();
    let per: Vec<u8> = (0..geometric(rng) + 1).map(|_| rng.gen_range(0..2)).collect();
    Stream::periodic(pre, per).expect("nonempty period")
}

fn random_zpoint(rng: &mut ChaCha8Rng) -> ZPoint {
    if rng.gen_bool(0.1) {
        ZPoint::Inf
    } else {
        ZPoint::At(geometric(rng), geometric(rng))
    }
}

/// `φ⁻¹` by hand: `1v ↦ (0, 1v)`, `0^k10v ↦ (0, 0^k1v)`, `0^k11v ↦ (k, v)`, `0⃗ ↦ (0, 0⃗)`.
fn s_decode_by_hand(z: &[u8]) -> Option<(u64, Vec<u8>)> {
    let k = z.iter().position(|b| *b == 1)?;
    if k == 0 {
        return Some((0, z.to_vec()));
    }
    let rest = z.get(k + 2..)?.to_vec();
    if z[k + 1] == 1 {
        Some((k as u64, rest))
    } else {
        let mut x = vec![0; k];
        x.push(1);
        x.extend(rest);
        Some((0, x))
    }
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let t = transfer_uu(baire_to_cantor(), MarkedTreeFamily);
    for _ in 0..1000 {
        let x = random_baire(&mut rng, 40);
        let y = random_bits(&mut rng);
        let depth = rng.gen_range(0..=4);
        let got = t.member(&TransferParam::Input(x.clone()), &y, depth).map_err(|e| e.to_string())?;
        let fx = coding_by_hand(&x.truncate(40).unwrap(), 40);
        let want = MarkedTreeFamily
            .member(&Stream::Periodic(Periodic::padded(fx, 0)), &y, depth)
            .map_err(|e| e.to_string())?;
        ensure(got == want, || format!("transfer disagrees at {x:?}, {y:?}"))?;
    }
    let ps = product_sum_uu(vec![ZFamily, ZFamily, ZFamily]).map_err(|e| e.to_string())?;
    for _ in 0..1000 {
        let xs: Vec<IndexedStream> = (0..3).map(|_| IndexedStream::new(geometric(&mut rng), random_bits(&mut rng))).collect();
        let j = rng.gen_range(0..3);
        let y = random_zpoint(&mut rng);
        let got = ps.member(&xs, &(j, y), 8).map_err(|e| e.to_string())?;
        let want = z_decode(&xs[j]).and_then(|d| d.contains(y)).map_err(|e| e.to_string())?;
        ensure(got.is_in() == want && got != (Membership::Unknown { depth: 8 }), || format!("product-sum at {j}, {y}"))?;
    }
    let probes: Vec<ZPoint> = (0..4).flat_map(|i| (0..4).map(move |j| ZPoint::At(i, j))).chain([ZPoint::Inf]).collect();
    let s = s_transfer(ZFamily, &ZClosedDesc::whole(), &probes, 8).map_err(|e| e.to_string())?;
    for _ in 0..1000 {
        let z = random_bits(&mut rng);
        let y = random_zpoint(&mut rng);
        let got = s.member(&z, &y, 64).map_err(|e| e.to_string())?;
        let w = z.truncate(200).unwrap();
        let want = match s_decode_by_hand(&w) {
            None => z_member(&IndexedStream::new(0, Stream::constant(0)), y),
            Some((n, x)) => z_member(&IndexedStream::new(n, Stream::Periodic(Periodic::padded(x, 0))), y),
        }
        .map_err(|e| e.to_string())?;
        let exact = match y {
            ZPoint::At(i, j) => (i + j) < 10,
            ZPoint::Inf => true,
        };
        if exact {
            ensure(got.is_in() == want, || format!("s_transfer at {z}, {y}"))?;
        }
    }
    let mut sections = HashSet::new();
    let mut params = HashSet::new();
    for d in desk_sets() {
        let p = s.encode(&ZClosedDesc::from_set(&d).unwrap()).map_err(|e| e.to_string())?;
        params.insert(p.truncate(48).unwrap());
        let mut row = Vec::new();
        for pt in &probes {
            let m = s.member(&p, pt, 64).map_err(|e| e.to_string())?;
            ensure(m.is_in() == d.contains(*pt), || format!("{d}: section differs at {pt}"))?;
            row.push(m.is_in());
        }
        sections.insert(row);
    }
    ensure(sections.len() == 1024 && params.len() == 1024, || {
        format!("{} sections, {} parameters", sections.len(), params.len())
    })?;
    Ok("3 × 1000 queries exact; 1024 sections over 2^ω × Z pairwise distinct".into())
}

fn criterion_10() -> Check {
    let r = empty_section_isolation(&NtSearch, &NiceTreeDesc::empty(), 1).map_err(|e| e.to_string())?;
    ensure(r.is_isolated(), || "NT example not isolated at depth 1".into())?;
    for d in 0..=8 {
        let r = empty_section_isolation(&MarkedSearch, &Periodic::constant(0u8), d).map_err(|e| e.to_string())?;
        ensure(!r.is_isolated(), || format!("marked family isolated at depth {d}"))?;
    }
    Ok("NT isolated by N(∅,{ε}) at depth 1; marked family depth-insufficient for d ≤ 8".into())
}

/// Criteria whose literal statement is false. Criterion 8 asks that a depth-12
/// image fix the 6-prefix, but only 2^12 images exist against infinitely many
/// prefixes, so some pairs must collide. It still runs and prints FAIL.
const KNOWN_UNATTAINABLE: &[usize] = &[8];

fn main() {
    let criteria: [(&str, u64, fn() -> Check); 10] = [
        ("nice-tree codec", 30, criterion_1),
        ("NT isolation", 10, criterion_2),
        ("Z index scheme", 5, criterion_3),
        ("Z codec", 10, criterion_4),
        ("good families (reals-dyadic)", 60, criterion_5),
        ("good filters (omega)", 60, criterion_6),
        ("saturated families (baire)", 30, criterion_7),
        ("Brouwer/π machinery", 30, criterion_8),
        ("transfer/combinators", 60, criterion_9),
        ("negative-result content", 30, criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (verdict, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {limit} s limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!("criterion {:>2} {verdict} [{:.2} s / {limit} s] {name}: {detail}", i + 1, elapsed.as_secs_f64());
        if verdict == "FAIL" {
            failed.push(i + 1);
        }
    }
    let unexpected: Vec<usize> = failed.iter().copied().filter(|i| !KNOWN_UNATTAINABLE.contains(i)).collect();
    let stale: Vec<usize> = KNOWN_UNATTAINABLE.iter().copied().filter(|i| !failed.contains(i)).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?} (known unattainable: {KNOWN_UNATTAINABLE:?})");
    }
    if !unexpected.is_empty() || !stale.is_empty() {
        if !stale.is_empty() {
            eprintln!("criteria listed as unattainable but passing: {stale:?}");
        }
        std::process::exit(1);
    }
}
