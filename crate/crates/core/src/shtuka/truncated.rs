use serde::Serialize;

use super::finite::{colie, FiniteShtuka};
use super::local::LocalShtuka;
use crate::algebra::{AlgElem, FdAlgebra};
use crate::amatrix::AMatrix;
use crate::error::{Error, Result};
use crate::fq::linalg::{Mat, Subspace};
use crate::modules::flat_vec;

/// M/z^n M as a finite shtuka of rank r·n with its z-action.
///
/// Basis e_i·z^j sits at index j·r + i.
#[derive(Clone, Debug)]
pub struct TruncatedShtuka {
    pub base: FiniteShtuka,
    pub z_action: AMatrix,
    pub level: usize,
    /// Rank of the underlying local shtuka.
    pub local_rank: usize,
}

impl TruncatedShtuka {
    pub fn new(base: FiniteShtuka, z_action: AMatrix, level: usize, local_rank: usize) -> Result<Self> {
        let alg = &base.alg;
        if z_action.rows != base.rank || !z_action.is_square() {
            return Err(Error::DimensionMismatch("z-action size".into()));
        }
        let mut pw = AMatrix::identity(alg, base.rank);
        for _ in 0..level {
            pw = pw.mul(alg, &z_action);
        }
        if !pw.is_zero() {
            return Err(Error::Invalid(format!("z-action is not killed by z^{level}")));
        }
        let lhs = z_action.mul(alg, &base.matrix);
        let rhs = base.matrix.mul(alg, &z_action.frob(alg));
        if lhs != rhs {
            return Err(Error::Invalid("z-action does not commute with F".into()));
        }
        Ok(TruncatedShtuka { base, z_action, level, local_rank })
    }

    pub fn alg(&self) -> &FdAlgebra {
        &self.base.alg
    }

    /// The matrix of (z − ζ)^d acting on M/z^n.
    pub fn z_minus_zeta_pow(&self, d: usize) -> AMatrix {
        let alg = self.alg();
        let r = self.base.rank;
        let a = self.z_action.sub(alg, &AMatrix::scalar(alg, r, alg.zeta()));
        let mut m = AMatrix::identity(alg, r);
        for _ in 0..d {
            m = m.mul(alg, &a);
        }
        m
    }

    /// Whether (z − ζ)^d·M lies in the image of F.
    pub fn cokernel_annihilated(&self, d: usize) -> bool {
        let alg = self.alg();
        let image = self.base.matrix.column_module(alg);
        let zd = self.z_minus_zeta_pow(d);
        (0..zd.cols).all(|j| image.contains(alg.field(), &flat_vec(&zd.col(j))))
    }

    /// Solves T·S = (z − ζ)^d and S·T = (z − ζ)^d on M/z^n, with S commuting
    /// with the z-action.
    pub fn verschiebung(&self, d: usize) -> Result<AMatrix> {
        let alg = self.alg();
        let r = self.base.rank;
        let k = alg.dim();
        let zd = self.z_minus_zeta_pow(d);
        let t = &self.base.matrix;
        let z = &self.z_action;
        let zq = z.frob(alg);
        let mut cols = vec![];
        for a in 0..r {
            for b in 0..r {
                for l in 0..k {
                    let mut e = AMatrix::zeros(alg, r, r);
                    e.set(a, b, alg.basis(l));
                    let mut v = flat_vec(&t.mul(alg, &e).data);
                    v.extend(flat_vec(&e.mul(alg, t).data));
                    v.extend(flat_vec(&zq.mul(alg, &e).sub(alg, &e.mul(alg, z)).data));
                    cols.push(v);
                }
            }
        }
        let mut rhs = flat_vec(&zd.data);
        rhs.extend(flat_vec(&zd.data));
        rhs.extend(std::iter::repeat_n(0, r * r * k));
        let m = Mat::from_cols(3 * r * r * k, &cols);
        let Some((x, _)) = m.solve(alg.field(), &rhs) else {
            let image = t.column_module(alg);
            let witness = (0..r)
                .map(|j| image.quotient_coords(alg.field(), &flat_vec(&zd.col(j))))
                .find(|v| v.iter().any(|&c| c != 0))
                .unwrap_or_default();
            return Err(Error::NotAnnihilated { d, witness });
        };
        Ok(AMatrix { rows: r, cols: r, data: x.chunks(k).map(|c| AlgElem(c.to_vec())).collect() })
    }
}

/// Restriction of scalars of M/z^n M to R.
pub fn truncate(sh: &LocalShtuka, n: usize) -> Result<TruncatedShtuka> {
    let alg = &sh.alg;
    let t = sh.effective_matrix()?;
    let r = sh.rank;
    if r > 0 && t.precision() < n {
        return Err(Error::InsufficientPrecision { needed: n, available: t.precision() });
    }
    let size = r * n;
    let mut m = AMatrix::zeros(alg, size, size);
    let mut z = AMatrix::zeros(alg, size, size);
    for a in 0..n {
        let ta = t.coeff(alg, a);
        for b in 0..n - a {
            for i in 0..r {
                for j in 0..r {
                    m.set((b + a) * r + i, b * r + j, ta.get(i, j).clone());
                }
            }
        }
    }
    for j in 0..n.saturating_sub(1) {
        for i in 0..r {
            z.set((j + 1) * r + i, j * r + i, alg.one());
        }
    }
    TruncatedShtuka::new(FiniteShtuka::new(alg, m)?, z, n, r)
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceReport {
    pub n: usize,
    pub m: usize,
    /// (r·n, r·(n+m), r·m)
    pub ranks: (usize, usize, usize),
    pub injective: bool,
    pub exact_middle: bool,
    pub surjective: bool,
    pub commutes: bool,
    pub exact: bool,
}

/// Checks 0 → M/z^m → M/z^{n+m} → M/z^n → 0, the first map being ×z^n and
/// the second the projection, together with compatibility with F and z.
pub fn sequence_check(sh: &LocalShtuka, n: usize, m: usize) -> Result<SequenceReport> {
    let alg = &sh.alg;
    let f = alg.field();
    let r = sh.rank;
    let small = truncate(sh, m)?;
    let mid = truncate(sh, n + m)?;
    let quot = truncate(sh, n)?;
    let mut inc = AMatrix::zeros(alg, r * (n + m), r * m);
    for j in 0..m {
        for i in 0..r {
            inc.set((j + n) * r + i, j * r + i, alg.one());
        }
    }
    let mut proj = AMatrix::zeros(alg, r * n, r * (n + m));
    for j in 0..n {
        for i in 0..r {
            proj.set(j * r + i, j * r + i, alg.one());
        }
    }
    let k = alg.dim();
    let inc_f = inc.flatten(alg);
    let proj_f = proj.flatten(alg);
    let injective = inc_f.rank(f) == r * m * k;
    let surjective = proj_f.rank(f) == r * n * k;
    let image = Subspace::from_vectors(f, inc_f.rows, (0..inc_f.cols).map(|j| inc_f.col(j)));
    let kernel = Subspace::from_vectors(f, proj_f.cols, proj_f.kernel(f));
    let exact_middle = image.equals(f, &kernel);
    let commutes = inc.mul(alg, &small.base.matrix) == mid.base.matrix.mul(alg, &inc)
        && proj.mul(alg, &mid.base.matrix) == quot.base.matrix.mul(alg, &proj)
        && inc.mul(alg, &small.z_action) == mid.z_action.mul(alg, &inc)
        && proj.mul(alg, &mid.z_action) == quot.z_action.mul(alg, &proj);
    Ok(SequenceReport {
        n,
        m,
        ranks: (r * n, r * (n + m), r * m),
        injective,
        exact_middle,
        surjective,
        commutes,
        exact: injective && exact_middle && surjective && commutes,
    })
}

/// F_q-dimension of ω for the truncation at level n.
pub fn omega_dim(sh: &LocalShtuka, n: usize) -> Result<usize> {
    Ok(colie(&truncate(sh, n)?.base).omega_dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqField;
    use crate::shtuka::local::boundedness_check;
    use crate::zseries::{ZMatrix, ZSeries};

    fn f2() -> FdAlgebra {
        FdAlgebra::base_field(&FqField::new(2).unwrap()).unwrap()
    }

    fn swap(r: &FdAlgebra, n: usize) -> LocalShtuka {
        let zero = ZSeries::zero(r, n);
        LocalShtuka::effective(r, ZMatrix::from_rows(vec![vec![zero.clone(), ZSeries::z(r, n)], vec![ZSeries::one(r, n), zero]])).unwrap()
    }

    #[test]
    fn truncation_examples() {
        let r = f2();
        let sh = LocalShtuka::effective(&r, ZMatrix::scalar(&r, 1, &ZSeries::z(&r, 4))).unwrap();
        let t = truncate(&sh, 2).unwrap();
        let want = AMatrix::from_fq(&r, 2, 2, &[0, 0, 1, 0]);
        assert_eq!(t.base.matrix, want);
        assert_eq!(t.z_action, want);
        let one = LocalShtuka::effective(&r, ZMatrix::identity(&r, 1, 4)).unwrap();
        assert_eq!(truncate(&one, 1).unwrap().base.matrix, AMatrix::identity(&r, 1));
        let tate = LocalShtuka::tate(&r, 1, 4).unwrap();
        assert!(truncate(&tate, 1).unwrap().base.matrix.is_zero());
    }

    #[test]
    fn sequence_examples() {
        let r = f2();
        let sh = LocalShtuka::effective(&r, ZMatrix::scalar(&r, 1, &ZSeries::z(&r, 4))).unwrap();
        let rep = sequence_check(&sh, 1, 1).unwrap();
        assert!(rep.exact);
        assert_eq!(rep.ranks, (1, 2, 1));
        let rep = sequence_check(&swap(&r, 5), 1, 2).unwrap();
        assert!(rep.exact);
        assert_eq!(rep.ranks, (2, 6, 4));
        assert!(sequence_check(&swap(&r, 5), 0, 3).unwrap().exact);
    }

    #[test]
    fn bounded_implies_annihilated_cokernel() {
        let r = f2();
        let sh = swap(&r, 6);
        assert!(boundedness_check(&sh, 1).unwrap().bounded);
        for n in 1..=4 {
            assert!(truncate(&sh, n).unwrap().cokernel_annihilated(1));
        }
        let v = truncate(&sh, 3).unwrap().verschiebung(1).unwrap();
        assert_eq!(v.rows, 6);
    }
}
