use serde::Serialize;

use crate::algebra::{AlgElem, AlgebraHom, FdAlgebra};
use crate::amatrix::AMatrix;
use crate::error::{Error, Result};
use crate::fq::linalg::{Mat, Subspace};
use crate::fq::Fq;
use crate::modules::{flat_vec, minimal_generators, unflat_vec};

/// A finite F_q-shtuka: R^r with F(σ*e_j) = column j of `matrix`.
///
/// On coordinates the semilinear map is v ↦ matrix · v^{(q)}.
#[derive(Clone, Debug)]
pub struct FiniteShtuka {
    pub alg: FdAlgebra,
    pub rank: usize,
    pub matrix: AMatrix,
}

impl FiniteShtuka {
    pub fn new(alg: &FdAlgebra, matrix: AMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare);
        }
        if matrix.data.iter().any(|x| x.0.len() != alg.dim()) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(FiniteShtuka { alg: alg.clone(), rank: matrix.rows, matrix })
    }

    /// Matrix with entries from F_q, given row by row.
    pub fn from_fq(alg: &FdAlgebra, r: usize, entries: &[Fq]) -> Result<Self> {
        if entries.len() != r * r {
            return Err(Error::DimensionMismatch(format!("{} entries for rank {r}", entries.len())));
        }
        Self::new(alg, AMatrix::from_fq(alg, r, r, entries))
    }

    /// The semilinear structure map on coordinates.
    pub fn apply(&self, v: &[AlgElem]) -> Vec<AlgElem> {
        let vq: Vec<AlgElem> = v.iter().map(|x| self.alg.frobenius_q(x)).collect();
        self.matrix.apply(&self.alg, &vq)
    }

    /// Base change along an algebra homomorphism.
    pub fn restrict(&self, h: &AlgebraHom) -> Result<FiniteShtuka> {
        if h.source != self.alg {
            return Err(Error::AlgebraMismatch);
        }
        FiniteShtuka::new(&h.target, self.matrix.map(h))
    }

    /// Semilinear conjugation by an invertible U: U^{-1}·T·U^{(q)}.
    pub fn conjugate(&self, u: &AMatrix) -> Result<FiniteShtuka> {
        let inv = u.inverse(&self.alg).ok_or(Error::NotAUnit)?;
        let m = inv.mul(&self.alg, &self.matrix).mul(&self.alg, &u.frob(&self.alg));
        FiniteShtuka::new(&self.alg, m)
    }
}

/// Matrix of F^n: T·T^{(q)}·…·T^{(q^{n-1})}.
pub fn iterate_frobenius(sh: &FiniteShtuka, n: usize) -> AMatrix {
    let alg = &sh.alg;
    let mut acc = AMatrix::identity(alg, sh.rank);
    let mut twisted = sh.matrix.clone();
    for _ in 0..n {
        acc = acc.mul(alg, &twisted);
        twisted = twisted.frob(alg);
    }
    acc
}

/// Cokernel and kernel of the R-linear map F: σ*M → M.
#[derive(Clone, Debug, Serialize)]
pub struct CoLieData {
    /// dim_{F_q} of ω = coker F.
    pub omega_dim: usize,
    /// dim_{F_q} of n = ker F.
    pub n_dim: usize,
    /// dim_{F_q} of the image of F.
    pub image_dim: usize,
    /// Flattened coordinates (index i·k + l) whose unit vectors represent a basis of ω.
    pub omega_positions: Vec<usize>,
    /// For each basis element b_l of R, the matrix of multiplication by b_l on ω.
    pub omega_action: Vec<Vec<Vec<Fq>>>,
    /// F_q-basis of ker F as vectors over R.
    pub n_basis: Vec<Vec<AlgElem>>,
}

impl CoLieData {
    /// Cokernel and kernel of an R-linear map given by `m` (rows × cols over R).
    pub fn of_map(alg: &FdAlgebra, m: &AMatrix) -> CoLieData {
        let f = alg.field();
        let k = alg.dim();
        let flat = m.flatten(alg);
        let image = Subspace::from_vectors(f, flat.rows, (0..flat.cols).map(|j| flat.col(j)));
        let positions = image.free_positions();
        let omega_action = (0..k)
            .map(|l| {
                let b = alg.basis(l);
                // Columns: images of the representatives; rows: ω coordinates.
                let cols: Vec<Vec<Fq>> = positions
                    .iter()
                    .map(|&pos| {
                        let mut v = vec![0; flat.rows];
                        v[pos] = 1;
                        let rv = unflat_vec(alg, &v);
                        let prod: Vec<AlgElem> = rv.iter().map(|x| alg.mul(&b, x)).collect();
                        image.quotient_coords(f, &flat_vec(&prod))
                    })
                    .collect();
                let mm = Mat::from_cols(positions.len(), &cols);
                (0..mm.rows).map(|i| mm.row(i).to_vec()).collect()
            })
            .collect();
        let n_basis: Vec<Vec<AlgElem>> = flat.kernel(f).into_iter().map(|v| unflat_vec(alg, &v)).collect();
        CoLieData { omega_dim: positions.len(), n_dim: n_basis.len(), image_dim: image.dim(), omega_positions: positions, omega_action, n_basis }
    }
}

/// ω = coker F and n = ker F for the R-linear structure map.
pub fn colie(sh: &FiniteShtuka) -> CoLieData {
    CoLieData::of_map(&sh.alg, &sh.matrix)
}

/// Étale / nilpotent verdicts for a finite shtuka.
#[derive(Clone, Debug, Serialize)]
pub struct NilpotenceReport {
    pub is_etale: bool,
    pub is_nilpotent: bool,
    /// Exponent at which nilpotence was certified (or tested).
    pub bound: usize,
}

/// The exponent r·(n+1) after which a nilpotent F must vanish, where q^n
/// kills every nilpotent element of R.
pub fn nilpotence_bound(sh: &FiniteShtuka) -> usize {
    sh.rank * (sh.alg.nil_frobenius_exponent() + 1)
}

pub fn nilpotence_checks(sh: &FiniteShtuka) -> NilpotenceReport {
    let bound = nilpotence_bound(sh);
    NilpotenceReport {
        is_etale: sh.matrix.is_invertible(&sh.alg),
        is_nilpotent: iterate_frobenius(sh, bound).is_zero(),
        bound,
    }
}

/// The splitting M = M_ét ⊕ M_nil over a finite field.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub etale: FiniteShtuka,
    pub nilpotent: FiniteShtuka,
    /// Columns: basis of M_ét followed by basis of M_nil.
    pub basis_change: AMatrix,
}

/// Fitting decomposition of a finite shtuka over a field: M_ét = im F^r and
/// M_nil = {v : F^r(σ^{r*}v) = 0}.
pub fn decompose_etale_nilpotent(sh: &FiniteShtuka) -> Result<Decomposition> {
    let alg = &sh.alg;
    if !alg.is_field() {
        return Err(Error::BaseNotField);
    }
    let r = sh.rank;
    let fr = iterate_frobenius(sh, r);
    let cols: Vec<Vec<AlgElem>> = (0..r).map(|j| fr.col(j)).collect();
    let et_basis = minimal_generators(alg, r, &cols);

    // ker F^r is an R-subspace; M_nil is its preimage under v ↦ v^{(q^r)}.
    let ker: Vec<Vec<AlgElem>> = fr.flatten(alg).kernel(alg.field()).into_iter().map(|v| unflat_vec(alg, &v)).collect();
    let ker_basis = minimal_generators(alg, r, &ker);
    let untwist = |v: &Vec<AlgElem>| -> Vec<AlgElem> {
        let mut w = v.clone();
        for _ in 0..r {
            w = w.iter().map(|x| alg.frobenius_inv(x).unwrap()).collect();
        }
        w
    };
    let nil_basis: Vec<Vec<AlgElem>> = ker_basis.iter().map(untwist).collect();
    if et_basis.len() + nil_basis.len() != r {
        return Err(Error::Invalid(format!("Fitting ranks {} + {} != {r}", et_basis.len(), nil_basis.len())));
    }
    let mut all = et_basis.clone();
    all.extend(nil_basis.iter().cloned());
    let p = AMatrix::from_cols(alg, r, &all);
    let conj = sh.conjugate(&p)?;
    let s = et_basis.len();
    let block = |lo: usize, hi: usize| {
        let n = hi - lo;
        let mut m = AMatrix::zeros(alg, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, conj.matrix.get(lo + i, lo + j).clone());
            }
        }
        m
    };
    // Off-diagonal blocks vanish because both summands are F-stable.
    for i in 0..r {
        for j in 0..r {
            if (i < s) != (j < s) && !conj.matrix.get(i, j).is_zero() {
                return Err(Error::Invalid("summands are not F-stable".into()));
            }
        }
    }
    Ok(Decomposition {
        etale: FiniteShtuka::new(alg, block(0, s))?,
        nilpotent: FiniteShtuka::new(alg, block(s, r))?,
        basis_change: p,
    })
}

/// Solves T·S = S·T = c·Id for a finite shtuka, with c ∈ R.
pub fn verschiebung_finite(sh: &FiniteShtuka, c: &AlgElem) -> Result<AMatrix> {
    let alg = &sh.alg;
    let r = sh.rank;
    let k = alg.dim();
    let f = alg.field();
    // Unknown S entries (a, b, l) at index (a·r + b)·k + l.
    let nunk = r * r * k;
    let mut cols = vec![];
    for a in 0..r {
        for b in 0..r {
            for l in 0..k {
                let mut e = AMatrix::zeros(alg, r, r);
                e.set(a, b, alg.basis(l));
                let ts = sh.matrix.mul(alg, &e);
                let st = e.mul(alg, &sh.matrix);
                let mut v = flat_vec(&ts.data);
                v.extend(flat_vec(&st.data));
                cols.push(v);
            }
        }
    }
    let target = AMatrix::scalar(alg, r, c);
    let mut rhs = flat_vec(&target.data);
    rhs.extend(flat_vec(&target.data));
    let m = Mat::from_cols(2 * r * r * k, &cols);
    debug_assert_eq!(m.cols, nunk);
    let Some((x, _)) = m.solve(f, &rhs) else {
        // Witness: the class of c·e_j modulo the image of T, if any column fails.
        let image = sh.matrix.column_module(alg);
        let w = (0..r)
            .map(|j| image.quotient_coords(f, &flat_vec(&target.col(j))))
            .find(|v| v.iter().any(|&t| t != 0))
            .unwrap_or_default();
        return Err(Error::NotAnnihilated { d: 0, witness: w });
    };
    Ok(AMatrix { rows: r, cols: r, data: unflat_vec(alg, &x) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqField;

    fn f2() -> FdAlgebra {
        FdAlgebra::base_field(&FqField::new(2).unwrap()).unwrap()
    }

    #[test]
    fn iterate_examples() {
        let r = f2();
        let sh = FiniteShtuka::from_fq(&r, 2, &[0, 1, 0, 0]).unwrap();
        assert!(iterate_frobenius(&sh, 2).is_zero());
        let id = FiniteShtuka::from_fq(&r, 2, &[1, 0, 0, 1]).unwrap();
        assert_eq!(iterate_frobenius(&id, 5), AMatrix::identity(&r, 2));
        // Over F_4 with q = 4: [w] twice gives w·w^4 = w^2.
        let f4 = FdAlgebra::base_field(&FqField::new(4).unwrap()).unwrap();
        let w = f4.from_fq(FqField::new(4).unwrap().generator());
        let sh = FiniteShtuka::new(&f4, AMatrix::scalar(&f4, 1, &w)).unwrap();
        assert_eq!(iterate_frobenius(&sh, 2).get(0, 0), &f4.mul(&w, &w));
    }

    #[test]
    fn colie_examples() {
        let r = f2();
        let c = colie(&FiniteShtuka::from_fq(&r, 1, &[0]).unwrap());
        assert_eq!((c.omega_dim, c.n_dim), (1, 1));
        let c = colie(&FiniteShtuka::from_fq(&r, 1, &[1]).unwrap());
        assert_eq!((c.omega_dim, c.n_dim), (0, 0));
        let d = FdAlgebra::truncated(&FqField::new(2).unwrap(), 2, "e").unwrap();
        let sh = FiniteShtuka::new(&d, AMatrix::scalar(&d, 1, &d.basis(1))).unwrap();
        let c = colie(&sh);
        assert_eq!((c.omega_dim, c.n_dim), (1, 1));
        assert_eq!(c.n_basis, vec![vec![d.basis(1)]]);
        assert_eq!(c.omega_dim + c.image_dim, 2);
    }

    #[test]
    fn nilpotence_examples() {
        let r = f2();
        let rep = nilpotence_checks(&FiniteShtuka::from_fq(&r, 1, &[1]).unwrap());
        assert!(rep.is_etale && !rep.is_nilpotent);
        let d = FdAlgebra::truncated(&FqField::new(2).unwrap(), 2, "e").unwrap();
        let sh = FiniteShtuka::new(&d, AMatrix::scalar(&d, 1, &d.basis(1))).unwrap();
        let rep = nilpotence_checks(&sh);
        assert!(rep.is_nilpotent && !rep.is_etale);
        assert_eq!(rep.bound, 2);
    }

    #[test]
    fn decomposition_examples() {
        let r = f2();
        let d = decompose_etale_nilpotent(&FiniteShtuka::from_fq(&r, 2, &[1, 0, 0, 0]).unwrap()).unwrap();
        assert_eq!((d.etale.rank, d.nilpotent.rank), (1, 1));
        assert_eq!(d.etale.matrix.get(0, 0), &r.one());
        assert!(d.nilpotent.matrix.is_zero());
        let d = decompose_etale_nilpotent(&FiniteShtuka::from_fq(&r, 2, &[0, 1, 0, 0]).unwrap()).unwrap();
        assert_eq!((d.etale.rank, d.nilpotent.rank), (0, 2));
        let sh = FiniteShtuka::from_fq(&r, 2, &[1, 1, 0, 0]).unwrap();
        let d = decompose_etale_nilpotent(&sh).unwrap();
        assert_eq!(d.etale.rank, 1);
        assert_eq!(d.basis_change.col(0), vec![r.one(), r.zero()]);
        assert_eq!(d.basis_change.col(1), vec![r.one(), r.one()]);
        let dual = FdAlgebra::truncated(&FqField::new(2).unwrap(), 2, "e").unwrap();
        let sh = FiniteShtuka::from_fq(&dual, 1, &[1]).unwrap();
        assert!(matches!(decompose_etale_nilpotent(&sh), Err(Error::BaseNotField)));
    }

    #[test]
    fn finite_verschiebung_zero() {
        let r = f2();
        let s = verschiebung_finite(&FiniteShtuka::from_fq(&r, 1, &[0]).unwrap(), &r.zero()).unwrap();
        assert!(s.is_zero());
        assert!(verschiebung_finite(&FiniteShtuka::from_fq(&r, 1, &[0]).unwrap(), &r.one()).is_err());
    }
}
