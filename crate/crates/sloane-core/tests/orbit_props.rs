//! Structural properties of orbit results: cycle validity, minimal
//! period, persistence minimality, budget monotonicity, and determinism.

use proptest::prelude::*;
use sloane_core::numbase::{Base, Natural};
use sloane_core::orbits::{iterate, OrbitBudget, OrbitStatus};
use sloane_core::sloanemaps::{step, step_from_stats, MapSpec};

fn some_map(selector: u8, t: u32, b: u32) -> MapSpec {
    let base = Base::new(b).unwrap();
    if selector % 2 == 0 {
        MapSpec::shifted(t % b, base)
    } else {
        MapSpec::erdos_star(base)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn cycle_is_valid_and_minimal(sel in 0u8..2, t in 0u32..4, b in 2u32..12, n in 0u64..200_000) {
        let map = some_map(sel, t, b);
        let r = iterate(&map, &Natural::from(n), &OrbitBudget::default());
        prop_assume!(r.status.converged());
        let members = &r.cycle_members;
        let len = members.len();
        // stepping around the cycle returns to the entry member
        let mut cur = members[0].clone();
        for expected in members.iter().skip(1) {
            cur = step(&map, &cur);
            prop_assert_eq!(&cur, expected);
        }
        prop_assert_eq!(step(&map, &cur), members[0].clone());
        // no proper divisor of the length is a period
        for d in 1..len {
            if len % d == 0 {
                let mut x = members[0].clone();
                for _ in 0..d {
                    x = step(&map, &x);
                }
                prop_assert_ne!(x, members[0].clone());
            }
        }
        if r.status == OrbitStatus::FixedPoint {
            prop_assert_eq!(len, 1);
        }
    }

    #[test]
    fn persistence_is_minimal(sel in 0u8..2, t in 0u32..4, b in 2u32..12, n in 0u64..200_000) {
        let map = some_map(sel, t, b);
        let r = iterate(&map, &Natural::from(n), &OrbitBudget::default());
        prop_assume!(r.status.converged());
        let nu = r.persistence.unwrap();
        // re-simulate: the iterate at index nu is the first cycle member
        let mut cur = Natural::from(n);
        for k in 0..=nu {
            let inside = r.cycle_members.contains(&cur);
            prop_assert_eq!(inside, k == nu, "orbit index {} of start {}", k, n);
            if k < nu {
                cur = step(&map, &cur);
            }
        }
    }

    #[test]
    fn budgets_are_monotone(sel in 0u8..2, t in 0u32..4, b in 2u32..12, n in 0u64..100_000) {
        let map = some_map(sel, t, b);
        let tight = OrbitBudget::new(6, 64, 4).unwrap();
        let loose = OrbitBudget::new(2000, 1 << 22, 4).unwrap();
        let small = iterate(&map, &Natural::from(n), &tight);
        let large = iterate(&map, &Natural::from(n), &loose);
        if small.status.converged() {
            prop_assert_eq!(small.status, large.status);
            prop_assert_eq!(small.persistence, large.persistence);
            prop_assert_eq!(small.cycle_members, large.cycle_members);
        }
    }

    #[test]
    fn identical_inputs_identical_results(sel in 0u8..2, t in 0u32..4, b in 2u32..12, n in 0u64..100_000) {
        let map = some_map(sel, t, b);
        let a = iterate(&map, &Natural::from(n), &OrbitBudget::default());
        let c = iterate(&map, &Natural::from(n), &OrbitBudget::default());
        prop_assert_eq!(a, c);
    }

    #[test]
    fn stats_route_matches_direct_route(t in 0u32..5, b in 2u32..12, n in 0u64..500_000) {
        let base = Base::new(b).unwrap();
        let nat = Natural::from(n);
        let stats = sloane_core::numbase::digit_stats(&nat, base);
        let shifted = MapSpec::shifted(t, base);
        prop_assert_eq!(step(&shifted, &nat), step_from_stats(&shifted, &stats).unwrap());
        let erdos = MapSpec::erdos_star(base);
        prop_assert_eq!(step(&erdos, &nat), step_from_stats(&erdos, &stats).unwrap());
    }

    #[test]
    fn growth_envelope(t in 1u32..5, b in 2u32..12, n in 1u64..1_000_000) {
        let base = Base::new(b).unwrap();
        let nat = Natural::from(n);
        let len = sloane_core::numbase::to_digits(&nat, base).len() as u32;
        let image = step(&MapSpec::shifted(t, base), &nat);
        prop_assert!(Natural::from(t).pow(len) <= image);
        prop_assert!(image <= Natural::from(b - 1 + t).pow(len));
    }
}

#[test]
fn always_diverging_regime_grows_exhaustively() {
    for b in [2u32, 3, 10] {
        let map = MapSpec::shifted(b, Base::new(b).unwrap());
        assert!(map.is_diverging_regime());
        for n in 1u64..=100_000 {
            let nat = Natural::from(n);
            assert!(step(&map, &nat) > nat, "t=b={b}, n={n}");
        }
    }
}
