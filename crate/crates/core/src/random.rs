//! Seeded generators for the randomized suites.

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgElem, FdAlgebra};
use crate::amatrix::AMatrix;
use crate::error::Result;
use crate::fq::FqField;
use crate::shtuka::{FiniteShtuka, LocalShtuka};
use crate::zseries::{ZMatrix, ZSeries};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for a named case, so suites do not share state.
pub fn case_rng(seed: u64, tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn element<R: Rng>(rng: &mut R, alg: &FdAlgebra) -> AlgElem {
    let q = alg.q();
    AlgElem((0..alg.dim()).map(|_| rng.random_range(0..q)).collect())
}

pub fn unit<R: Rng>(rng: &mut R, alg: &FdAlgebra) -> AlgElem {
    loop {
        let x = element(rng, alg);
        if alg.is_unit(&x) {
            return x;
        }
    }
}

pub fn nilpotent<R: Rng>(rng: &mut R, alg: &FdAlgebra) -> AlgElem {
    let f = alg.field();
    let mut x = alg.zero();
    for m in alg.nilradical() {
        x = alg.add(&x, &alg.scale(rng.random_range(0..f.q()), m));
    }
    x
}

pub fn matrix<R: Rng>(rng: &mut R, alg: &FdAlgebra, rows: usize, cols: usize) -> AMatrix {
    AMatrix { rows, cols, data: (0..rows * cols).map(|_| element(rng, alg)).collect() }
}

pub fn invertible<R: Rng>(rng: &mut R, alg: &FdAlgebra, n: usize) -> AMatrix {
    loop {
        let m = matrix(rng, alg, n, n);
        if m.is_invertible(alg) {
            return m;
        }
    }
}

/// A local Artinian algebra of dimension ≤ max_dim over F_q, with ζ = 0 or
/// a random nilpotent when `zeta` is set.
pub fn algebra<R: Rng>(rng: &mut R, field: &FqField, max_dim: usize, zeta: bool) -> Result<FdAlgebra> {
    let mut choices: Vec<u8> = vec![0];
    if max_dim >= 2 {
        choices.extend([1, 2]);
    }
    if max_dim >= 3 {
        choices.extend([3, 4]);
    }
    if max_dim >= 4 {
        choices.extend([5, 6]);
    }
    let alg = match choices[rng.random_range(0..choices.len())] {
        0 => FdAlgebra::base_field(field)?,
        1 => FdAlgebra::truncated(field, 2, "u")?,
        2 => FdAlgebra::field_ext(field, 2)?,
        3 => FdAlgebra::truncated(field, 3, "u")?,
        4 => FdAlgebra::bivariate(field, 2, 2, "u", "v")?,
        5 => FdAlgebra::truncated(field, 4, "u")?,
        _ => FdAlgebra::tensor(&FdAlgebra::field_ext(field, 2)?, &FdAlgebra::truncated(field, 2, "u")?)?,
    };
    if zeta && !alg.nilradical().is_empty() {
        let z = nilpotent(rng, &alg);
        return alg.with_zeta(z);
    }
    Ok(alg)
}

pub fn finite_shtuka<R: Rng>(rng: &mut R, alg: &FdAlgebra, r: usize) -> Result<FiniteShtuka> {
    FiniteShtuka::new(alg, matrix(rng, alg, r, r))
}

pub fn etale_shtuka<R: Rng>(rng: &mut R, alg: &FdAlgebra, r: usize) -> Result<FiniteShtuka> {
    FiniteShtuka::new(alg, invertible(rng, alg, r))
}

pub fn series<R: Rng>(rng: &mut R, alg: &FdAlgebra, n: usize) -> ZSeries {
    ZSeries::from_coeffs(alg, (0..n).map(|_| element(rng, alg)).collect(), n)
}

/// A matrix over R[[z]] whose constant term is invertible.
pub fn invertible_series<R: Rng>(rng: &mut R, alg: &FdAlgebra, r: usize, n: usize) -> ZMatrix {
    let c0 = invertible(rng, alg, r);
    let rows = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let mut s = series(rng, alg, n);
                    if n > 0 {
                        s.coeffs[0] = c0.get(i, j).clone();
                    }
                    ZSeries::from_coeffs(alg, s.coeffs, n)
                })
                .collect()
        })
        .collect();
    ZMatrix::from_rows(rows)
}

/// U_1·diag((z − ζ)^{a_i})·U_2 with random invertible U_1, U_2 and a_i ≤ d,
/// so that (z − ζ)^d kills the cokernel. At least one a_i equals d when
/// `sharp` is set.
pub fn effective_local<R: Rng>(rng: &mut R, alg: &FdAlgebra, r: usize, d: usize, n: usize, sharp: bool) -> Result<LocalShtuka> {
    let u1 = invertible_series(rng, alg, r, n);
    let u2 = invertible_series(rng, alg, r, n);
    let mut exps: Vec<usize> = (0..r).map(|_| rng.random_range(0..=d)).collect();
    if sharp && r > 0 {
        let i = rng.random_range(0..r);
        exps[i] = d;
    }
    let mut diag = ZMatrix::zeros(alg, r, r, n);
    for (i, &a) in exps.iter().enumerate() {
        diag.set(i, i, ZSeries::z_minus_zeta_pow(alg, a, n));
    }
    LocalShtuka::effective(alg, u1.mul(alg, &diag).mul(alg, &u2))
}

/// A (y, d) pair with y = (z − ζ)^d·x, and the cofactor x.
pub fn divisible<R: Rng>(rng: &mut R, alg: &FdAlgebra, d: usize, n: usize) -> (ZSeries, ZSeries) {
    let x = series(rng, alg, n);
    let y = x.mul(alg, &ZSeries::z_minus_zeta_pow(alg, d, n));
    (y, x)
}

pub fn flip<R: Rng>(rng: &mut R) -> bool {
    rng.random_bool(0.5)
}
