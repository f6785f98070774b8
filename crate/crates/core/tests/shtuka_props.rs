use proptest::prelude::*;
use rand::RngExt;

use shtuka_core::random;
use shtuka_core::shtuka::{
    boundedness_check, decompose_etale_nilpotent, dual, nilpotence_checks, sequence_check, tensor, truncate, verschiebung_local,
    FiniteShtuka, LocalShtuka,
};
use shtuka_core::zseries::{ZMatrix, ZSeries};
use shtuka_core::{AMatrix, AlgElem, FdAlgebra, FqField};

const PRECISION: usize = 10;

fn local_at(seed: u64, q: u32, r: usize, d: usize, zeta: bool, n: usize) -> (FdAlgebra, LocalShtuka) {
    let mut rng = random::rng(seed);
    let alg = random::algebra(&mut rng, &FqField::new(q).unwrap(), 3, zeta).unwrap();
    let sh = random::effective_local(&mut rng, &alg, r, d, n, false).unwrap();
    (alg, sh)
}

fn local(seed: u64, q: u32, r: usize, d: usize, zeta: bool) -> (FdAlgebra, LocalShtuka) {
    local_at(seed, q, r, d, zeta, PRECISION)
}

/// Every vector of R^r, when there are at most `cap` of them.
fn all_vectors(alg: &FdAlgebra, r: usize, cap: u64) -> Option<Vec<Vec<AlgElem>>> {
    let n = r * alg.dim();
    let q = alg.q() as u64;
    let total = q.checked_pow(n as u32).filter(|&t| t <= cap)?;
    Some(
        (0..total)
            .map(|mut idx| {
                let flat: Vec<u32> = (0..n)
                    .map(|_| {
                        let c = (idx % q) as u32;
                        idx /= q;
                        c
                    })
                    .collect();
                flat.chunks(alg.dim().max(1)).map(|c| AlgElem(c.to_vec())).collect()
            })
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verschiebung_products(seed: u64, q in 2..4u32, r in 1..3usize, d in 0..3usize, zeta: bool) {
        let (alg, sh) = local(seed, q, r, d, zeta);
        let s = verschiebung_local(&sh, d).unwrap();
        let n = s.precision();
        prop_assert!(n > 0);
        let m = sh.matrix.truncate(n);
        let zd = ZMatrix::scalar(&alg, r, &ZSeries::z_minus_zeta_pow(&alg, d, n));
        prop_assert!(m.mul(&alg, &s).eq_at(&zd, n));
        prop_assert!(s.mul(&alg, &m).eq_at(&zd, n));
    }

    #[test]
    fn decomposition_reassembles(seed: u64, q in 2..4u32, k in 1..3usize, r in 1..4usize) {
        let mut rng = random::rng(seed);
        let alg = FdAlgebra::field_ext(&FqField::new(q).unwrap(), k).unwrap();
        let mut m = random::matrix(&mut rng, &alg, r, r);
        let kill = rng.random_range(0..=r);
        for c in 0..kill {
            for i in 0..r {
                m.set(i, c, alg.zero());
            }
        }
        let sh = FiniteShtuka::new(&alg, m).unwrap();
        let dec = decompose_etale_nilpotent(&sh).unwrap();
        prop_assert_eq!(dec.etale.rank + dec.nilpotent.rank, r);
        prop_assert!(nilpotence_checks(&dec.etale).is_etale);
        prop_assert!(nilpotence_checks(&dec.nilpotent).is_nilpotent);
        let p = &dec.basis_change;
        let block = AMatrix::block_diag(&alg, &dec.etale.matrix, &dec.nilpotent.matrix);
        prop_assert!(p.is_invertible(&alg));
        prop_assert_eq!(sh.matrix.mul(&alg, &p.frob(&alg)), p.mul(&alg, &block));
    }

    #[test]
    fn double_dual_and_unit(seed: u64, q in 2..4u32, r in 1..3usize, d in 0..3usize, zeta: bool) {
        // Each dual spends precision on inverting the determinant.
        let (alg, sh) = local_at(seed, q, r, d, zeta, 4 * PRECISION);
        let dd = dual(&dual(&sh).unwrap()).unwrap();
        let n = dd.precision.min(sh.precision);
        let orig = sh.normalize().unwrap();
        prop_assert_eq!(dd.twist, orig.twist);
        prop_assert!(dd.matrix.eq_at(&orig.matrix, n));

        let unit = LocalShtuka::new(&alg, ZMatrix::identity(&alg, 1, sh.precision), 0).unwrap();
        let t = tensor(&sh, &unit).unwrap();
        prop_assert_eq!(t.twist, sh.twist);
        prop_assert!(t.matrix.eq_at(&sh.matrix, sh.precision));
    }

    #[test]
    fn bounded_implies_cokernel_annihilated(seed: u64, q in 2..4u32, r in 1..3usize, d in 0..3usize, zeta: bool) {
        let (_, sh) = local(seed, q, r, d, zeta);
        for e in 0..=d + 1 {
            if boundedness_check(&sh, e).unwrap().bounded {
                for n in 1..=4 {
                    prop_assert!(truncate(&sh, n).unwrap().cokernel_annihilated(e), "bounded by {e} but level {n} fails");
                }
            }
        }
    }

    #[test]
    fn truncation_sequences_exact(seed: u64, q in 2..4u32, r in 1..3usize, d in 0..3usize, zeta: bool) {
        let (_, sh) = local(seed, q, r, d, zeta);
        for n in 0..=3 {
            for m in 0..=3 - n {
                let rep = sequence_check(&sh, n, m).unwrap();
                prop_assert!(rep.exact, "{rep:?}");
            }
        }
    }

    #[test]
    fn nilpotence_agrees_with_iteration(seed: u64, q in 2..4u32, r in 1..3usize, zeta: bool) {
        let mut rng = random::rng(seed);
        let alg = random::algebra(&mut rng, &FqField::new(q).unwrap(), 2, zeta).unwrap();
        let mut m = random::matrix(&mut rng, &alg, r, r);
        if random::flip(&mut rng) {
            // Strictly upper triangular mod the maximal ideal is nilpotent.
            for i in 0..r {
                for j in 0..=i {
                    m.set(i, j, random::nilpotent(&mut rng, &alg));
                }
            }
        }
        let sh = FiniteShtuka::new(&alg, m).unwrap();
        let Some(vs) = all_vectors(&alg, r, 4096) else { return Ok(()) };
        let steps = r * alg.dim();
        let killed = vs.iter().all(|v| {
            let mut w = v.clone();
            for _ in 0..steps {
                w = sh.apply(&w);
            }
            w.iter().all(AlgElem::is_zero)
        });
        prop_assert_eq!(nilpotence_checks(&sh).is_nilpotent, killed);
    }
}
