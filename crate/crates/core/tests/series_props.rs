use proptest::prelude::*;

use shtuka_core::random;
use shtuka_core::zseries::{divide_by_z_minus_zeta, ZMatrix, ZSeries};
use shtuka_core::{FdAlgebra, FqField};

const QS: [u32; 3] = [2, 3, 4];

fn setup(seed: u64, qi: usize) -> (rand_chacha::ChaCha8Rng, FdAlgebra) {
    let mut rng = random::rng(seed);
    let f = FqField::new(QS[qi]).unwrap();
    let alg = random::algebra(&mut rng, &f, 4, true).unwrap();
    (rng, alg)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn division_back_multiplies(seed: u64, qi in 0..3usize, d in 0..4usize) {
        let (mut rng, alg) = setup(seed, qi);
        let n = 4 * alg.nu() + 4;
        let (y, x) = random::divisible(&mut rng, &alg, d, n);
        let q = divide_by_z_minus_zeta(&alg, &y, d).unwrap();
        prop_assert_eq!(q.precision(), n - d * alg.nu());
        prop_assert_eq!(&q, &x.truncate(q.precision()));
        let back = q.mul(&alg, &ZSeries::z_minus_zeta_pow(&alg, d, q.precision()));
        prop_assert_eq!(back, y.truncate(q.precision()));
    }

    #[test]
    fn z_minus_zeta_is_injective(seed: u64, qi in 0..3usize, n in 1..8usize) {
        let (mut rng, alg) = setup(seed, qi);
        let x = random::series(&mut rng, &alg, n);
        // One extra term keeps the top coefficient of x visible.
        let padded = ZSeries::from_coeffs(&alg, x.coeffs.clone(), n + 1);
        let y = padded.mul(&alg, &ZSeries::z_minus_zeta(&alg, n + 1));
        prop_assert_eq!(y.is_zero(), x.is_zero());
    }

    #[test]
    fn evaluation_at_zeta(seed: u64, qi in 0..3usize) {
        let (mut rng, alg) = setup(seed, qi);
        let n = 3 * alg.nu() + 2;
        let r = random::element(&mut rng, &alg);
        prop_assert_eq!(ZSeries::constant(&alg, &r, n).eval(&alg, alg.zeta()), r);
        let (y, _) = random::divisible(&mut rng, &alg, 1, n);
        prop_assert!(y.eval(&alg, alg.zeta()).is_zero());

        // Anything in the kernel of evaluation is a multiple of (z - zeta).
        let s = random::series(&mut rng, &alg, n);
        let v = s.eval(&alg, alg.zeta());
        let t = s.sub(&alg, &ZSeries::constant(&alg, &v, n));
        let q = divide_by_z_minus_zeta(&alg, &t, 1).unwrap();
        prop_assert_eq!(q.mul(&alg, &ZSeries::z_minus_zeta(&alg, q.precision())), t.truncate(q.precision()));
    }

    #[test]
    fn det_is_multiplicative(seed: u64, qi in 0..3usize, r in 1..4usize, n in 1..6usize) {
        let (mut rng, alg) = setup(seed, qi);
        let mut m = || ZMatrix::from_rows((0..r).map(|_| (0..r).map(|_| random::series(&mut rng, &alg, n)).collect()).collect());
        let a = m();
        let b = m();
        let lhs = a.mul(&alg, &b).det(&alg).unwrap();
        let rhs = a.det(&alg).unwrap().mul(&alg, &b.det(&alg).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
