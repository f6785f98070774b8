use crate::error::{Error, Result};
use crate::fq::linalg::Mat;

use super::{AlgElem, FdAlgebra};

/// An F_q-algebra homomorphism, stored as the matrix of images of the
/// source basis (columns).
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    pub source: FdAlgebra,
    pub target: FdAlgebra,
    pub matrix: Mat,
    /// Structure maps must also carry ζ to ζ.
    pub structure: bool,
}

impl AlgebraHom {
    pub fn new(source: FdAlgebra, target: FdAlgebra, matrix: Mat, structure: bool) -> Result<Self> {
        if matrix.rows != target.dim() || matrix.cols != source.dim() {
            return Err(Error::InvalidHom(format!("matrix is {}x{}, expected {}x{}", matrix.rows, matrix.cols, target.dim(), source.dim())));
        }
        let h = AlgebraHom { source, target, matrix, structure };
        h.check()?;
        Ok(h)
    }

    pub fn identity(alg: &FdAlgebra) -> Self {
        AlgebraHom { source: alg.clone(), target: alg.clone(), matrix: Mat::identity(alg.dim()), structure: true }
    }

    fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.apply(&s.one()) != t.one() {
            return Err(Error::InvalidHom("not unital".into()));
        }
        for i in 0..s.dim() {
            for j in i..s.dim() {
                let lhs = self.apply(&s.mul(&s.basis(i), &s.basis(j)));
                let rhs = t.mul(&self.apply(&s.basis(i)), &self.apply(&s.basis(j)));
                if lhs != rhs {
                    return Err(Error::InvalidHom(format!("not multiplicative on basis pair ({i}, {j})")));
                }
            }
        }
        if self.structure && self.apply(s.zeta()) != *t.zeta() {
            return Err(Error::InvalidHom("does not carry zeta to zeta".into()));
        }
        Ok(())
    }

    pub fn apply(&self, x: &AlgElem) -> AlgElem {
        AlgElem(self.matrix.apply(self.source.field(), &x.0))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &AlgebraHom) -> Result<AlgebraHom> {
        if self.target != next.source {
            return Err(Error::AlgebraMismatch);
        }
        Ok(AlgebraHom {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: next.matrix.mul(self.source.field(), &self.matrix),
            structure: self.structure && next.structure,
        })
    }
}
