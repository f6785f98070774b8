use proptest::prelude::*;

use shtuka_core::anderson::{build_tower, deformation_roundtrip, detecting_degrees, formal_checks, zd_verschiebung_check};
use shtuka_core::drinfeld::catalog_fields;
use shtuka_core::random;
use shtuka_core::{FdAlgebra, FqField};

const PRECISION: usize = 12;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn tower_orders_and_sequences(seed: u64, q in 2..4u32, r in 1..3usize, d in 0..3usize, zeta: bool) {
        let mut rng = random::rng(seed);
        let alg = random::algebra(&mut rng, &FqField::new(q).unwrap(), 3, zeta).unwrap();
        let sh = random::effective_local(&mut rng, &alg, r, d, PRECISION, false).unwrap();
        let tower = build_tower(&sh, 3, 5).unwrap();
        prop_assert_eq!(tower.height, r);
        for (n, &o) in tower.orders.iter().enumerate() {
            prop_assert_eq!(o, (q as u128).pow(((n + 1) * r) as u32));
        }
        let rep = tower.report().unwrap();
        prop_assert!(rep.orders_ok && rep.sequences_ok, "{rep:?}");
    }

    #[test]
    fn deformation_round_trip(seed: u64, q in 2..5u32, r in 1..3usize, d in 1..3usize) {
        let mut rng = random::rng(seed);
        let big = FdAlgebra::truncated(&FqField::new(q).unwrap(), 2, "eps").unwrap();
        let sh = random::effective_local(&mut rng, &big, r, d, PRECISION, true).unwrap();
        let (lift, rt) = deformation_roundtrip(&sh, vec![big.basis(1)], d).unwrap();
        prop_assert!(lift.reduction_ok && lift.hodge_ok);
        prop_assert!(rt.isomorphic, "precision {}", rt.precision);
    }

    #[test]
    fn zd_admissibility_is_monotone(seed: u64, q in 2..4u32, r in 1..3usize, d in 0..3usize) {
        let mut rng = random::rng(seed);
        let alg = random::algebra(&mut rng, &FqField::new(q).unwrap(), 3, false).unwrap();
        let sh = random::effective_local(&mut rng, &alg, r, d, PRECISION, false).unwrap();
        let admissible: Vec<bool> = (0..=3)
            .map(|e| match zd_verschiebung_check(&sh, e) {
                Ok(rep) => {
                    assert!(rep.fv && rep.vf && rep.twisted, "{rep:?}");
                    true
                }
                Err(_) => false,
            })
            .collect();
        prop_assert!(admissible[d]);
        prop_assert!(admissible.windows(2).all(|w| !w[0] || w[1]), "{admissible:?}");
    }

    #[test]
    fn formal_conditions_agree(seed: u64, q in 2..4u32, r in 1..3usize, d in 0..3usize, sharp: bool) {
        let mut rng = random::rng(seed);
        let alg = random::algebra(&mut rng, &FqField::new(q).unwrap(), 3, false).unwrap();
        let sh = random::effective_local(&mut rng, &alg, r, d, PRECISION, sharp).unwrap();
        let fields = catalog_fields(&alg, &detecting_degrees(&alg, r)).unwrap();
        let rep = formal_checks(&sh, &fields).unwrap();
        prop_assert!(rep.agree, "{rep:?}");
    }
}
