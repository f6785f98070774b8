use proptest::prelude::*;
use rand::RngExt;

use shtuka_core::drinfeld::{points, presentation, verify_points, TestAlgebra};
use shtuka_core::hopf::{balanced_check, drinfeld_strictness, mq_roundtrip, primitives};
use shtuka_core::random;
use shtuka_core::rewrite::{Poly, RewriteRing};
use shtuka_core::shtuka::FiniteShtuka;
use shtuka_core::{FdAlgebra, FqField};

fn shtuka(seed: u64, q: u32, r: usize, max_dim: usize) -> (rand_chacha::ChaCha8Rng, FdAlgebra, FiniteShtuka) {
    let mut rng = random::rng(seed);
    let alg = random::algebra(&mut rng, &FqField::new(q).unwrap(), max_dim, true).unwrap();
    let sh = random::finite_shtuka(&mut rng, &alg, r).unwrap();
    (rng, alg, sh)
}

fn random_poly<R: rand::Rng>(rng: &mut R, alg: &FdAlgebra, nvars: usize, q: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..terms {
        let m = (0..nvars).map(|_| rng.random_range(0..2 * q)).collect();
        p = p.add(alg, &Poly::term(alg, m, random::element(rng, alg)));
    }
    p
}

/// `copies` side-by-side copies of the ring.
fn power(ring: &RewriteRing, copies: usize) -> RewriteRing {
    let n = ring.nvars();
    let mut names = vec![];
    let mut rules = vec![];
    for c in 0..copies {
        names.extend(ring.names.iter().map(|s| format!("{s}_{c}")));
        rules.extend(ring.rules.iter().map(|(e, g)| (*e, g.shift_vars(c * n, copies * n))));
    }
    RewriteRing::new(&ring.alg, names, rules).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn point_counts(seed: u64, q in 2..4u32, r in 1..3usize, m in 1..3usize) {
        let (mut rng, alg, sh) = shtuka(seed, q, r, 3);
        let t = TestAlgebra::field(&alg, alg.residue_degree() * m).unwrap();
        let pm = points(&sh, &t).unwrap();
        let bound = (q as u128).pow((r * t.structure.target.dim()) as u32);
        let count = pm.count();
        prop_assert!(count.is_power_of_two() || q != 2);
        prop_assert_eq!(bound % count, 0);
        prop_assert_eq!(count, (q as u128).pow(pm.dim() as u32));
        prop_assert!(verify_points(&sh, &t, &pm));
        let basis = pm.fq_basis();
        if basis.len() >= 2 {
            let i = rng.random_range(0..basis.len());
            let j = rng.random_range(0..basis.len());
            let k = &pm.carrier;
            let sum: Vec<_> = basis[i].iter().zip(&basis[j]).map(|(a, b)| k.add(a, b)).collect();
            prop_assert!(pm.contains(&sum));
        }
    }

    #[test]
    fn normal_form_idempotent_and_linear(seed: u64, q in 2..4u32, r in 1..3usize) {
        let (mut rng, alg, sh) = shtuka(seed, q, r, 3);
        let pres = presentation(&sh);
        let a = random_poly(&mut rng, &alg, r, q, 4);
        let b = random_poly(&mut rng, &alg, r, q, 4);
        let c = random::element(&mut rng, &alg);
        let na = pres.normal_form(&a);
        prop_assert_eq!(pres.normal_form(&na), na.clone());
        let lhs = pres.normal_form(&a.scale(&alg, &c).add(&alg, &b));
        let rhs = na.scale(&alg, &c).add(&alg, &pres.normal_form(&b));
        prop_assert_eq!(lhs, pres.normal_form(&rhs));
    }

    #[test]
    fn comultiplication_coassociative(seed: u64, q in 2..4u32, r in 1..3usize) {
        let (mut rng, alg, sh) = shtuka(seed, q, r, 2);
        let pres = presentation(&sh);
        let x = random_poly(&mut rng, &alg, r, q, 3);
        let dx = pres.comult(&x).unwrap();
        let cube = power(&pres.ring(), 3);
        let v = |i| Poly::var(&alg, i, 3 * r);
        let left: Vec<Poly> = (0..r).map(|i| v(i).add(&alg, &v(r + i))).chain((0..r).map(|i| v(2 * r + i))).collect();
        let right: Vec<Poly> = (0..r).map(&v).chain((0..r).map(|i| v(r + i).add(&alg, &v(2 * r + i)))).collect();
        prop_assert_eq!(cube.reduce(&dx.substitute(&alg, &left)), cube.reduce(&dx.substitute(&alg, &right)));
    }

    #[test]
    fn primitives_reverify(seed: u64, q in 2..4u32, r in 1..3usize) {
        let (_, alg, sh) = shtuka(seed, q, r, 2);
        let pres = presentation(&sh);
        let ring = pres.ring();
        let data = primitives(&pres).unwrap();
        prop_assert_eq!(data.primitive_basis.len(), r);
        for x in &data.primitive_basis {
            let split = x.shift_vars(0, 2 * r).add(&alg, &x.shift_vars(r, 2 * r));
            prop_assert_eq!(pres.comult(x).unwrap(), ring.tensor_square().unwrap().reduce(&split));
            for a in 0..q {
                let ax = ring.reduce(&x.substitute(&alg, &pres.action_images(a)));
                prop_assert_eq!(ax, ring.reduce(&x.scale(&alg, &alg.from_fq(a))));
            }
        }
    }

    #[test]
    fn drinfeld_images_roundtrip_strict_balanced(seed: u64, q in 2..4u32, r in 1..3usize) {
        let (_, alg, sh) = shtuka(seed, q, r, 4);
        let rt = mq_roundtrip(&sh).unwrap();
        prop_assert!(rt.u.is_invertible(&alg));
        prop_assert_eq!(rt.u.mul(&alg, &rt.recovered), sh.matrix.mul(&alg, &rt.u.frob(&alg)));
        let st = drinfeld_strictness(&sh).unwrap();
        prop_assert!(st.strict && st.residuals_vanish && st.matches_colie, "{st:?}");
        prop_assert!(balanced_check(&presentation(&sh)).unwrap().balanced);
    }
}
