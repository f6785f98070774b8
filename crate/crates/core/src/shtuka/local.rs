use serde::Serialize;

use super::finite::{nilpotence_checks, FiniteShtuka};
use crate::algebra::{AlgebraHom, FdAlgebra};
use crate::error::{Error, Result};
use crate::zseries::{divide_by_z_minus_zeta, p_power_bound, solve_series_determined, ZMatrix, ZSeries};

/// A local shtuka of rank r at precision N: F = (z − ζ)^twist · matrix.
///
/// Columns of `matrix` are the images of σ*e_j. A non-effective object keeps
/// a negative `twist` instead of carrying Laurent entries.
#[derive(Clone, Debug)]
pub struct LocalShtuka {
    pub alg: FdAlgebra,
    pub rank: usize,
    pub precision: usize,
    pub matrix: ZMatrix,
    pub twist: i64,
    /// Least e with det(matrix)·w = (z − ζ)^e solvable.
    pub det_exponent: usize,
}

impl LocalShtuka {
    /// Builds and validates with the default bound E_max = N − ν.
    pub fn new(alg: &FdAlgebra, matrix: ZMatrix, twist: i64) -> Result<Self> {
        let n = if matrix.rows == 0 { 1 } else { matrix.precision() };
        Self::with_bound(alg, matrix, twist, n.saturating_sub(alg.nu()))
    }

    pub fn with_bound(alg: &FdAlgebra, matrix: ZMatrix, twist: i64, e_max: usize) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare);
        }
        if matrix.entries.iter().any(|s| s.coeffs.iter().any(|c| c.0.len() != alg.dim())) {
            return Err(Error::AlgebraMismatch);
        }
        let rank = matrix.rows;
        let precision = if rank == 0 { usize::MAX } else { matrix.precision() };
        if rank > 0 && precision == 0 {
            return Err(Error::PrecisionExhausted);
        }
        let det_exponent = if rank == 0 { 0 } else { det_exponent(alg, &matrix, e_max)?.0 };
        Ok(LocalShtuka { alg: alg.clone(), rank, precision, matrix, twist: if rank == 0 { 0 } else { twist }, det_exponent })
    }

    /// Effective object from an F_q-matrix of polynomials, at precision n.
    pub fn effective(alg: &FdAlgebra, matrix: ZMatrix) -> Result<Self> {
        Self::new(alg, matrix, 0)
    }

    /// The Tate object 1(n).
    pub fn tate(alg: &FdAlgebra, n: i64, precision: usize) -> Result<Self> {
        let m = if n >= 0 {
            ZMatrix::scalar(alg, 1, &ZSeries::z_minus_zeta_pow(alg, n as usize, precision))
        } else {
            ZMatrix::identity(alg, 1, precision)
        };
        Self::new(alg, m, n.min(0))
    }

    /// Pushes positive twists into the matrix and pulls common (z − ζ)
    /// factors out of negative ones.
    pub fn normalize(&self) -> Result<LocalShtuka> {
        let alg = &self.alg;
        if self.rank == 0 {
            return Ok(self.clone());
        }
        let mut m = self.matrix.clone();
        let mut twist = self.twist;
        if twist > 0 {
            m = m.scale(alg, &ZSeries::z_minus_zeta_pow(alg, twist as usize, m.precision()));
            twist = 0;
        }
        while twist < 0 && m.precision() > alg.nu() {
            let divided: Result<Vec<ZSeries>> = m.entries.iter().map(|s| divide_by_z_minus_zeta(alg, s, 1)).collect();
            match divided {
                Ok(entries) => {
                    m = ZMatrix { rows: m.rows, cols: m.cols, entries };
                    twist += 1;
                }
                Err(_) => break,
            }
        }
        LocalShtuka::new(alg, m, twist)
    }

    pub fn is_effective(&self) -> bool {
        self.twist >= 0 || self.normalize().is_ok_and(|s| s.twist >= 0)
    }

    /// Matrix of F for an effective object.
    pub fn effective_matrix(&self) -> Result<ZMatrix> {
        let n = self.normalize()?;
        if n.twist < 0 {
            return Err(Error::NotEffective(n.twist));
        }
        Ok(n.matrix)
    }

    /// Tensoring with 1(−twist), which makes the object effective.
    pub fn effectivize(&self) -> Result<(LocalShtuka, i64)> {
        let n = self.normalize()?;
        let shift = -n.twist.min(0);
        Ok((n.tate_twist(shift)?.normalize()?, shift))
    }

    pub fn tate_twist(&self, n: i64) -> Result<LocalShtuka> {
        LocalShtuka::new(&self.alg, self.matrix.clone(), self.twist + n)
    }

    pub fn restrict(&self, h: &AlgebraHom) -> Result<LocalShtuka> {
        if h.source != self.alg {
            return Err(Error::AlgebraMismatch);
        }
        if !h.structure {
            return Err(Error::InvalidHom("base change must respect ζ".into()));
        }
        LocalShtuka::new(&h.target, self.matrix.map(h), self.twist)
    }

    /// The reduction of the effective matrix modulo z.
    pub fn special_fiber(&self) -> Result<FiniteShtuka> {
        let m = self.effective_matrix()?;
        FiniteShtuka::new(&self.alg, m.coeff(&self.alg, 0))
    }
}

/// Least e ≤ e_max with det·w = (z − ζ)^e solvable, with w.
fn det_exponent(alg: &FdAlgebra, m: &ZMatrix, e_max: usize) -> Result<(usize, ZSeries, usize)> {
    let det = m.det(alg)?;
    let n = det.precision();
    let a = ZMatrix::scalar(alg, 1, &det);
    for e in 0..=e_max {
        let b = ZMatrix::scalar(alg, 1, &ZSeries::z_minus_zeta_pow(alg, e, n));
        if let Ok((w, prec)) = solve_series_determined(alg, &a, &b, n) {
            return Ok((e, w.get(0, 0).clone(), prec));
        }
    }
    Err(Error::NotALocalShtuka(e_max))
}

fn check_same(a: &LocalShtuka, b: &LocalShtuka) -> Result<()> {
    if !a.alg.same(&b.alg) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

pub fn tensor(a: &LocalShtuka, b: &LocalShtuka) -> Result<LocalShtuka> {
    check_same(a, b)?;
    let alg = &a.alg;
    let n = a.precision.min(b.precision);
    let m = a.matrix.truncate(n).kron(alg, &b.matrix.truncate(n));
    LocalShtuka::new(alg, m, a.twist + b.twist)
}

/// The dual: F^∨ = (T^t)^{-1}·(z − ζ)^{-twist}, written as adj(T)^t·w with
/// twist −twist − e where det(T)·w = (z − ζ)^e.
pub fn dual(a: &LocalShtuka) -> Result<LocalShtuka> {
    let alg = &a.alg;
    if a.rank == 0 {
        return Ok(a.clone());
    }
    let (e, w, wprec) = det_exponent(alg, &a.matrix, a.det_exponent)?;
    let n = a.precision.min(wprec);
    if n <= alg.nu() {
        return Err(Error::PrecisionExhausted);
    }
    let adj = a.matrix.truncate(n).adjugate(alg)?.transpose();
    let m = adj.scale(alg, &w.truncate(n));
    LocalShtuka::new(alg, m, -a.twist - e as i64)?.normalize()
}

pub fn hom(a: &LocalShtuka, b: &LocalShtuka) -> Result<LocalShtuka> {
    tensor(&dual(a)?, b)
}

/// Outcome of a boundedness test.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundCertificate {
    /// det = (z − ζ)^d · unit.
    Unit { unit: Vec<String> },
    /// det is not divisible by (z − ζ)^d.
    NotDivisible { step: usize, index: usize, residual: Vec<u32> },
    /// The quotient exists but is not a unit.
    NotUnit { quotient: Vec<String> },
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundednessReport {
    pub d: usize,
    pub bounded: bool,
    pub certificate: BoundCertificate,
}

/// Whether the top exterior power of F(σ*M) equals (z − ζ)^d·∧^r M.
pub fn boundedness_check(sh: &LocalShtuka, d: usize) -> Result<BoundednessReport> {
    let alg = &sh.alg;
    let m = sh.effective_matrix()?;
    let det = if sh.rank == 0 {
        ZSeries::one(alg, d * alg.nu() + 1)
    } else {
        m.det(alg)?
    };
    let fmt = |s: &ZSeries| s.coeffs.iter().map(|c| alg.format(c)).collect::<Vec<_>>();
    let certificate = match divide_by_z_minus_zeta(alg, &det, d) {
        Ok(u) if u.is_unit_series(alg) => BoundCertificate::Unit { unit: fmt(&u) },
        Ok(u) => BoundCertificate::NotUnit { quotient: fmt(&u) },
        Err(Error::NotDivisible { step, index, residual }) => BoundCertificate::NotDivisible { step, index, residual },
        Err(e) => return Err(e),
    };
    Ok(BoundednessReport { d, bounded: matches!(certificate, BoundCertificate::Unit { .. }), certificate })
}

/// Solves T·S = (z − ζ)^d·Id and checks S·T = (z − ζ)^d·Id. The result is
/// truncated to the precision at which S is determined.
pub fn verschiebung_local(sh: &LocalShtuka, d: usize) -> Result<ZMatrix> {
    let alg = &sh.alg;
    let t = sh.effective_matrix()?;
    let r = sh.rank;
    let n = t.precision();
    if r == 0 {
        return Ok(ZMatrix::zeros(alg, 0, 0, n));
    }
    let target = ZMatrix::scalar(alg, r, &ZSeries::z_minus_zeta_pow(alg, d, n));
    let (s, prec) = solve_series_determined(alg, &t, &target, n)
        .map_err(|f| Error::NotAnnihilated { d, witness: f.class })?;
    if prec == 0 {
        return Err(Error::PrecisionExhausted);
    }
    let ts = t.truncate(prec).mul(alg, &s);
    let st = s.mul(alg, &t.truncate(prec));
    let target = target.truncate(prec);
    if !ts.eq_at(&target, prec) || !st.eq_at(&target, prec) {
        return Err(Error::NotAnnihilated { d, witness: vec![] });
    }
    Ok(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalNilpotenceReport {
    pub is_etale: bool,
    pub is_topologically_nilpotent: bool,
}

pub fn local_nilpotence_checks(sh: &LocalShtuka) -> Result<LocalNilpotenceReport> {
    let alg = &sh.alg;
    let m = sh.effective_matrix()?;
    let is_etale = sh.rank == 0 || m.det(alg)?.is_unit_series(alg);
    let is_topologically_nilpotent = nilpotence_checks(&sh.special_fiber()?).is_nilpotent;
    Ok(LocalNilpotenceReport { is_etale, is_topologically_nilpotent })
}

/// Least N0 with z^{N0} ∈ (z − ζ)^e: the precision a determinant inverse costs.
pub fn inverse_cost(sh: &LocalShtuka) -> usize {
    p_power_bound(&sh.alg, sh.det_exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqField;

    fn f2() -> FdAlgebra {
        FdAlgebra::base_field(&FqField::new(2).unwrap()).unwrap()
    }

    fn dual_numbers() -> FdAlgebra {
        FdAlgebra::truncated(&FqField::new(2).unwrap(), 2, "e").unwrap()
    }

    fn z(alg: &FdAlgebra, n: usize) -> ZSeries {
        ZSeries::z(alg, n)
    }

    /// diag(z, z − ε) over F_2[ε]/(ε²) with ζ = 0.
    fn epsilon_example(n: usize) -> LocalShtuka {
        let r = dual_numbers();
        let eps = ZSeries::constant(&r, &r.basis(1), n);
        let m = ZMatrix::from_rows(vec![
            vec![z(&r, n), ZSeries::zero(&r, n)],
            vec![ZSeries::zero(&r, n), z(&r, n).sub(&r, &eps)],
        ]);
        LocalShtuka::effective(&r, m).unwrap()
    }

    #[test]
    fn tate_objects() {
        let r = f2();
        let one = LocalShtuka::tate(&r, 1, 6).unwrap();
        let two = tensor(&one, &one).unwrap();
        assert_eq!(two.matrix.get(0, 0), &ZSeries::z_minus_zeta_pow(&r, 2, 6));
        for n in [-2i64, 0, 3] {
            let d = dual(&LocalShtuka::tate(&r, n, 8).unwrap()).unwrap();
            let want = LocalShtuka::tate(&r, -n, 8).unwrap().normalize().unwrap();
            assert_eq!(d.twist, want.twist);
            assert!(d.matrix.eq_at(&want.matrix, d.precision.min(want.precision)));
        }
    }

    #[test]
    fn tensor_with_rank_one() {
        let r = f2();
        let n = 5;
        let a = LocalShtuka::effective(&r, ZMatrix::scalar(&r, 1, &z(&r, n))).unwrap();
        let zero = ZSeries::zero(&r, n);
        let b = LocalShtuka::effective(&r, ZMatrix::from_rows(vec![vec![zero.clone(), z(&r, n)], vec![ZSeries::one(&r, n), zero.clone()]])).unwrap();
        let t = tensor(&a, &b).unwrap();
        let want = ZMatrix::from_rows(vec![vec![zero.clone(), z(&r, n).mul(&r, &z(&r, n))], vec![z(&r, n), zero]]);
        assert_eq!(t.matrix, want);
    }

    #[test]
    fn boundedness_examples() {
        let sh = epsilon_example(8);
        let rep = boundedness_check(&sh, 2).unwrap();
        assert!(!rep.bounded);
        assert!(matches!(rep.certificate, BoundCertificate::NotDivisible { .. }));
        let r = f2();
        assert!(boundedness_check(&LocalShtuka::tate(&r, 3, 8).unwrap(), 3).unwrap().bounded);
        let n = 6;
        let zero = ZSeries::zero(&r, n);
        let sw = LocalShtuka::effective(&r, ZMatrix::from_rows(vec![vec![zero.clone(), z(&r, n)], vec![ZSeries::one(&r, n), zero]])).unwrap();
        assert!(boundedness_check(&sw, 1).unwrap().bounded);
    }

    #[test]
    fn verschiebung_examples() {
        let r = f2();
        let s = verschiebung_local(&LocalShtuka::tate(&r, 1, 6).unwrap(), 1).unwrap();
        assert!(s.eq_at(&ZMatrix::identity(&r, 1, s.precision()), s.precision()));
        let sh = epsilon_example(8);
        let s = verschiebung_local(&sh, 2).unwrap();
        assert!(s.eq_at(&sh.matrix, s.precision()));
        assert!(s.precision() >= 6);
        assert!(matches!(verschiebung_local(&sh, 1), Err(Error::NotAnnihilated { .. })));
    }

    #[test]
    fn nilpotence_and_effectivity() {
        let r = f2();
        let rep = local_nilpotence_checks(&LocalShtuka::effective(&r, ZMatrix::scalar(&r, 1, &z(&r, 4))).unwrap()).unwrap();
        assert!(rep.is_topologically_nilpotent && !rep.is_etale);
        let neg = LocalShtuka::tate(&r, -2, 6).unwrap();
        assert!(!neg.is_effective());
        let (eff, shift) = neg.effectivize().unwrap();
        assert_eq!(shift, 2);
        assert_eq!(eff.twist, 0);
        // (z − ζ)·T with twist −1 is effective.
        let t = LocalShtuka::new(&r, ZMatrix::scalar(&r, 1, &z(&r, 6)), -1).unwrap();
        assert!(t.is_effective());
    }

    #[test]
    fn double_dual_restores_epsilon_example() {
        let sh = epsilon_example(16);
        let dd = dual(&dual(&sh).unwrap()).unwrap();
        assert_eq!(dd.twist, 0);
        assert!(dd.matrix.eq_at(&sh.matrix, dd.precision));
    }
}
