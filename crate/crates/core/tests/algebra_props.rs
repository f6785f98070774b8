use proptest::prelude::*;

use shtuka_core::algebra::validate_algebra;
use shtuka_core::random;
use shtuka_core::{FdAlgebra, FqField};

const QS: [u32; 4] = [2, 3, 4, 5];

fn setup(seed: u64, qi: usize) -> (rand_chacha::ChaCha8Rng, FdAlgebra) {
    let mut rng = random::rng(seed);
    let f = FqField::new(QS[qi]).unwrap();
    let alg = random::algebra(&mut rng, &f, 4, true).unwrap();
    (rng, alg)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_algebras_validate(seed: u64, qi in 0..4usize) {
        let (_, alg) = setup(seed, qi);
        let report = validate_algebra(&alg.data());
        prop_assert!(report.is_ok(), "{report:?}");
    }

    #[test]
    fn frobenius_is_fq_linear(seed: u64, qi in 0..4usize) {
        let (mut rng, alg) = setup(seed, qi);
        let x = random::element(&mut rng, &alg);
        let y = random::element(&mut rng, &alg);
        let c = random::element(&mut rng, &FdAlgebra::base_field(alg.field()).unwrap()).0[0];
        prop_assert_eq!(alg.frobenius_q(&alg.add(&x, &y)), alg.add(&alg.frobenius_q(&x), &alg.frobenius_q(&y)));
        prop_assert_eq!(alg.frobenius_q(&alg.scale(c, &x)), alg.scale(c, &alg.frobenius_q(&x)));
        prop_assert_eq!(alg.frobenius_q(&x), alg.pow(&x, alg.q() as u64));
    }

    #[test]
    fn invert_or_residue_vanishes(seed: u64, qi in 0..4usize) {
        let (mut rng, alg) = setup(seed, qi);
        let x = random::element(&mut rng, &alg);
        let (res, to_res) = alg.residue_field().unwrap();
        match alg.invert(&x) {
            Ok(y) => {
                prop_assert_eq!(alg.mul(&x, &y), alg.one());
                prop_assert!(!to_res.apply(&x).is_zero());
            }
            Err(_) => prop_assert!(to_res.apply(&x).is_zero(), "non-unit with residue {}", res.format(&to_res.apply(&x))),
        }
    }

    #[test]
    fn solve_linear_resubstitutes(seed: u64, qi in 0..4usize, rows in 1..4usize, cols in 1..4usize) {
        let (mut rng, alg) = setup(seed, qi);
        let a = random::matrix(&mut rng, &alg, rows, cols);
        let x0: Vec<_> = (0..cols).map(|_| random::element(&mut rng, &alg)).collect();
        let b = a.apply(&alg, &x0);
        let sol = alg.solve_linear(&a, &b).unwrap();
        prop_assert_eq!(a.apply(&alg, &sol.particular), b);
        let zero = vec![alg.zero(); rows];
        for k in &sol.kernel {
            prop_assert_eq!(a.apply(&alg, k), zero.clone());
        }
        let f = alg.field();
        let flat: Vec<Vec<u32>> = sol.kernel.iter().map(|k| shtuka_core::modules::flat_vec(k)).collect();
        let span = shtuka_core::fq::linalg::Subspace::from_vectors(f, cols * alg.dim(), flat.clone());
        prop_assert_eq!(span.dim(), flat.len());
    }
}
