use proptest::prelude::*;
use uuniv::good_families::{
    baire_fragment, dyadic_fragment, family_union_member, lc_encode_open, lc_goodness_check, lc_split_neighborhood,
    omega_cantor_fragment, rational_cantor_fragment, sat_encode_open, sat_split_neighborhood, sat_union_member,
    sat_verify_fragment, sigma_encode_open, sigma_goodness_check, GoodSetDesc,
};
use uuniv::rational::Q;
use uuniv::spaces::{Bits, Cylinder, Point, RatInterval, RegionDesc, SpaceTag};
use uuniv::stream::Periodic;

fn dyadic(num: i128, exp: u32) -> Q {
    Q::new(num, 1 << exp)
}

/// Unions of intervals `(a/8, b/8)` inside `[-1, 2]`, minus points `n/32`.
fn real_region() -> impl Strategy<Value = RegionDesc> {
    (
        prop::collection::vec((-8i128..15, 1i128..9), 1..3),
        prop::collection::vec(-32i128..64, 0..3),
    )
        .prop_map(|(cells, holes)| {
            let gens = cells
                .iter()
                .map(|(a, w)| Cylinder::dyadic(dyadic(*a, 3), dyadic((a + w).min(16), 3)).unwrap())
                .collect();
            let removed: Vec<Point> = holes.iter().map(|n| Point::Real(dyadic(*n, 5))).collect();
            RegionDesc::from_cylinders(SpaceTag::RealsDyadic, gens).unwrap().without(&removed).unwrap()
        })
}

fn word(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, 0..max)
}

fn periodic_bits() -> impl Strategy<Value = Periodic<u8>> {
    (word(4), prop::collection::vec(0u8..2, 1..3)).prop_map(|(p, q)| Periodic::new(p, q).unwrap())
}

fn omega_cantor_region() -> impl Strategy<Value = RegionDesc> {
    (prop::collection::vec((0u64..4, word(4)), 1..4), prop::collection::vec((0u64..4, periodic_bits()), 0..2))
        .prop_map(|(cells, holes)| {
            let gens = cells.into_iter().map(|(row, w)| Cylinder::OmegaCantor { row, word: Bits(w) }).collect();
            let removed: Vec<Point> = holes.into_iter().map(|(r, x)| Point::OmegaCantor(r, x)).collect();
            RegionDesc::from_cylinders(SpaceTag::OmegaCantor, gens).unwrap().without(&removed).unwrap()
        })
}

fn baire_region() -> impl Strategy<Value = RegionDesc> {
    prop::collection::vec(prop::collection::vec(0u64..3, 1..4), 1..4).prop_map(|ws| {
        RegionDesc::from_cylinders(SpaceTag::Baire, ws.into_iter().map(Cylinder::Baire).collect()).unwrap()
    })
}

fn interval(c: &Cylinder) -> &RatInterval {
    match c {
        Cylinder::Dyadic(i) => i,
        _ => unreachable!("dyadic fragment"),
    }
}

fn in_neighborhood(g: &GoodSetDesc, f0: &[Cylinder], f1: &[Cylinder]) -> bool {
    f0.iter().all(|b| g.member(b)) && !f1.iter().any(|b| g.member(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn real_families_are_good(u in real_region()) {
        let g = lc_encode_open(&u).unwrap();
        prop_assert!(lc_goodness_check(&g, &dyadic_fragment(4, &Q::from(-1), &Q::from(2))).is_pass());
    }

    /// Members are closed under shrinking.
    #[test]
    fn real_members_are_downward_closed(u in real_region()) {
        let g = lc_encode_open(&u).unwrap();
        let frag = dyadic_fragment(3, &Q::from(-1), &Q::from(2));
        for a in &frag {
            for b in &frag {
                if g.member(b) && interval(a).within(interval(b)) {
                    prop_assert!(g.member(a), "{} ⊆ {}", a, b);
                }
            }
        }
    }

    /// The union of the family is the region, read at dyadic points.
    #[test]
    fn real_union_is_the_region(u in real_region(), n in -64i128..128) {
        let g = lc_encode_open(&u).unwrap();
        let y = Point::Real(dyadic(n, 6));
        prop_assert_eq!(family_union_member(&g, &y, 8).is_in(), u.contains(&y));
    }

    #[test]
    fn omega_cantor_families_are_good(u in omega_cantor_region(), row in 0u64..4, x in periodic_bits()) {
        let g = lc_encode_open(&u).unwrap();
        prop_assert!(lc_goodness_check(&g, &omega_cantor_fragment(4, 4)).is_pass());
        let y = Point::OmegaCantor(row, x);
        prop_assert_eq!(family_union_member(&g, &y, 12).is_in(), u.contains(&y));
    }

    /// A split gives two distinct families in the neighbourhood.
    #[test]
    fn real_split_lands_in_the_neighborhood(
        f0 in prop::collection::vec(0usize..66, 0..3),
        f1 in prop::collection::vec(0usize..66, 0..3),
    ) {
        let frag = dyadic_fragment(2, &Q::from(-1), &Q::from(2));
        let f0: Vec<Cylinder> = f0.into_iter().map(|i| frag[i].clone()).collect();
        let f1: Vec<Cylinder> = f1.into_iter().map(|i| frag[i].clone()).collect();
        if let Ok(s) = lc_split_neighborhood(SpaceTag::RealsDyadic, &f0, &f1) {
            prop_assert!(in_neighborhood(&s.first, &f0, &f1));
            prop_assert!(in_neighborhood(&s.second, &f0, &f1));
            prop_assert!(s.first.member(&s.witness) && !s.second.member(&s.witness));
        }
    }

    #[test]
    fn saturated_families_verify(w in baire_region(), y in (prop::collection::vec(0u64..3, 0..3), prop::collection::vec(0u64..3, 1..3))) {
        let g = sat_encode_open(&w).unwrap();
        prop_assert!(sat_verify_fragment(&g, &baire_fragment(3, 3), 2).is_pass());
        let y = Periodic::new(y.0, y.1).unwrap();
        let inside = w.contains(&Point::Baire(y.clone()));
        prop_assert_eq!(sat_union_member(&g, &y, 4).is_in(), inside);
    }

    #[test]
    fn saturated_split_lands_in_the_neighborhood(
        f0 in prop::collection::vec(prop::collection::vec(0u64..3, 1..3), 0..3),
        f1 in prop::collection::vec(prop::collection::vec(0u64..3, 1..3), 0..3),
    ) {
        let f0: Vec<Cylinder> = f0.into_iter().map(Cylinder::Baire).collect();
        let f1: Vec<Cylinder> = f1.into_iter().map(Cylinder::Baire).collect();
        if let Ok(s) = sat_split_neighborhood(&f0, &f1) {
            for g in [&s.first, &s.second] {
                prop_assert!(f0.iter().all(|b| g.member(b)));
                prop_assert!(!f1.iter().any(|b| g.member(b)));
            }
            prop_assert!(s.second.member(&s.r) && !s.first.member(&s.r));
        }
    }

    #[test]
    fn sigma_families_are_good(cells in prop::collection::vec((-3i128..3, 1i128..4, word(3)), 1..3)) {
        let gens = cells
            .into_iter()
            .map(|(a, w, s)| Cylinder::RationalCantor {
                interval: RatInterval::new(Q::from(a), Q::from(a + w)).unwrap(),
                word: Bits(s),
            })
            .collect();
        let u = RegionDesc::from_cylinders(SpaceTag::RationalsCantor, gens).unwrap();
        let g = sigma_encode_open(&u).unwrap();
        // Stage 8 puts every endpoint in K_8; a closure missing K_n is vacuously covered.
        let ends: Vec<Q> = (-6..=8).map(|n| Q::new(n, 2)).collect();
        prop_assert!(sigma_goodness_check(&g, &rational_cantor_fragment(&ends, 2), 8).is_pass());
    }
}

#[test]
fn a_non_family_fails_goodness() {
    let u = uuniv::spaces::parse::parse_region(SpaceTag::RealsDyadic, "(0,1)").unwrap();
    let g = lc_encode_open(&u).unwrap().with_rule(|_| true);
    assert!(!lc_goodness_check(&g, &dyadic_fragment(2, &Q::from(-1), &Q::from(2))).is_pass());
}

