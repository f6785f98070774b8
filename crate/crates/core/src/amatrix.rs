//! Matrices over an [`FdAlgebra`].

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElem, AlgebraHom, FdAlgebra};
use crate::fq::linalg::{Mat, Subspace};
use crate::fq::Fq;

/// Determinant by dynamic programming over column subsets, valid over any
/// commutative ring (no division).
pub(crate) fn det_by_subsets<T: Clone>(
    n: usize,
    entry: impl Fn(usize, usize) -> T,
    zero: T,
    one: T,
    add: impl Fn(&T, &T) -> T,
    neg: impl Fn(&T) -> T,
    mul: impl Fn(&T, &T) -> T,
) -> T {
    let mut dp: Vec<Option<T>> = vec![None; 1 << n];
    dp[0] = Some(one);
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].clone() else { continue };
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for c in 0..n {
            if mask & (1 << c) != 0 {
                continue;
            }
            let mut term = mul(&cur, &entry(row, c));
            if (mask >> (c + 1)).count_ones() % 2 == 1 {
                term = neg(&term);
            }
            let next = mask | (1 << c);
            dp[next] = Some(match &dp[next] {
                Some(v) => add(v, &term),
                None => term,
            });
        }
    }
    dp[(1 << n) - 1].clone().unwrap_or(zero)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<AlgElem>,
}

impl AMatrix {
    pub fn zeros(alg: &FdAlgebra, rows: usize, cols: usize) -> Self {
        AMatrix { rows, cols, data: vec![alg.zero(); rows * cols] }
    }

    pub fn identity(alg: &FdAlgebra, n: usize) -> Self {
        let mut m = Self::zeros(alg, n, n);
        for i in 0..n {
            m.set(i, i, alg.one());
        }
        m
    }

    pub fn scalar(alg: &FdAlgebra, n: usize, c: &AlgElem) -> Self {
        let mut m = Self::zeros(alg, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(_alg: &FdAlgebra, rows: Vec<Vec<AlgElem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        AMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(alg: &FdAlgebra, rows: usize, cols: &[Vec<AlgElem>]) -> Self {
        let mut m = Self::zeros(alg, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Entries given as F_q scalars.
    pub fn from_fq(alg: &FdAlgebra, rows: usize, cols: usize, entries: &[Fq]) -> Self {
        AMatrix { rows, cols, data: entries.iter().map(|&c| alg.from_fq(c)).collect() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &AlgElem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: AlgElem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn col(&self, j: usize) -> Vec<AlgElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(AlgElem::is_zero)
    }

    pub fn mul(&self, alg: &FdAlgebra, b: &AMatrix) -> AMatrix {
        assert_eq!(self.cols, b.rows, "matrix shapes do not compose");
        let mut c = Self::zeros(alg, self.rows, b.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..b.cols {
                    let bk = b.get(k, j);
                    if bk.is_zero() {
                        continue;
                    }
                    let v = alg.add(c.get(i, j), &alg.mul(a, bk));
                    c.set(i, j, v);
                }
            }
        }
        c
    }

    pub fn apply(&self, alg: &FdAlgebra, v: &[AlgElem]) -> Vec<AlgElem> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(alg.zero(), |acc, j| alg.add(&acc, &alg.mul(self.get(i, j), &v[j]))))
            .collect()
    }

    pub fn add(&self, alg: &FdAlgebra, b: &AMatrix) -> AMatrix {
        AMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&b.data).map(|(x, y)| alg.add(x, y)).collect() }
    }

    pub fn sub(&self, alg: &FdAlgebra, b: &AMatrix) -> AMatrix {
        AMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&b.data).map(|(x, y)| alg.sub(x, y)).collect() }
    }

    pub fn scale(&self, alg: &FdAlgebra, c: &AlgElem) -> AMatrix {
        AMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| alg.mul(c, x)).collect() }
    }

    /// Entrywise x ↦ x^q.
    pub fn frob(&self, alg: &FdAlgebra) -> AMatrix {
        AMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| alg.frobenius_q(x)).collect() }
    }

    pub fn frob_pow(&self, alg: &FdAlgebra, i: usize) -> AMatrix {
        AMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| alg.frobenius_pow(x, i)).collect() }
    }

    pub fn transpose(&self) -> AMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        AMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map(&self, h: &AlgebraHom) -> AMatrix {
        AMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| h.apply(x)).collect() }
    }

    pub fn det(&self, alg: &FdAlgebra) -> AlgElem {
        assert!(self.is_square());
        det_by_subsets(self.rows, |i, j| self.get(i, j).clone(), alg.zero(), alg.one(), |a, b| alg.add(a, b), |a| alg.neg(a), |a, b| alg.mul(a, b))
    }

    /// The F_q-matrix of v ↦ self·v on R^cols ≅ F_q^{cols·k}.
    pub fn flatten(&self, alg: &FdAlgebra) -> Mat {
        let k = alg.dim();
        let f = alg.field();
        let mut m = Mat::zeros(self.rows * k, self.cols * k);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for l in 0..k {
                    let prod = alg.mul(a, &alg.basis(l));
                    for (t, &c) in prod.0.iter().enumerate() {
                        if c != 0 {
                            m.set(i * k + t, j * k + l, f.add(m.get(i * k + t, j * k + l), c));
                        }
                    }
                }
            }
        }
        m
    }

    /// F_q-span of the R-span of the columns, as a subspace of F_q^{rows·k}.
    pub fn column_module(&self, alg: &FdAlgebra) -> Subspace {
        let flat = self.flatten(alg);
        Subspace::from_vectors(alg.field(), flat.rows, (0..flat.cols).map(|j| flat.col(j)))
    }

    /// Inverse over R, if the matrix is invertible.
    pub fn inverse(&self, alg: &FdAlgebra) -> Option<AMatrix> {
        let n = self.rows;
        if !self.is_square() {
            return None;
        }
        let k = alg.dim();
        let inv = self.flatten(alg).inverse(alg.field())?;
        // The flattened inverse is R-linear; read off the images of e_j·1.
        let cols: Vec<Vec<AlgElem>> = (0..n).map(|j| inv.col(j * k).chunks(k).map(|c| AlgElem(c.to_vec())).collect()).collect();
        Some(AMatrix::from_cols(alg, n, &cols))
    }

    pub fn is_invertible(&self, alg: &FdAlgebra) -> bool {
        self.is_square() && alg.is_unit(&self.det(alg))
    }

    pub fn kron(&self, alg: &FdAlgebra, b: &AMatrix) -> AMatrix {
        let mut m = Self::zeros(alg, self.rows * b.rows, self.cols * b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        m.set(i * b.rows + k, j * b.cols + l, alg.mul(self.get(i, j), b.get(k, l)));
                    }
                }
            }
        }
        m
    }

    /// Block-diagonal sum.
    pub fn block_diag(alg: &FdAlgebra, a: &AMatrix, b: &AMatrix) -> AMatrix {
        let mut m = Self::zeros(alg, a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        m
    }

    pub fn format(&self, alg: &FdAlgebra) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| alg.format(self.get(i, j))).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqField;

    #[test]
    fn det_and_inverse() {
        let f = FqField::new(3).unwrap();
        let r = FdAlgebra::truncated(&f, 2, "t").unwrap();
        let t = r.basis(1);
        let one = r.one();
        // [[1, t], [t, 1]] has det 1 - t^2 = 1
        let m = AMatrix::from_rows(&r, vec![vec![one.clone(), t.clone()], vec![t.clone(), one.clone()]]);
        assert_eq!(m.det(&r), one);
        let inv = m.inverse(&r).unwrap();
        assert_eq!(m.mul(&r, &inv), AMatrix::identity(&r, 2));
        let sing = AMatrix::from_rows(&r, vec![vec![t.clone(), one.clone()], vec![r.zero(), t.clone()]]);
        assert!(sing.inverse(&r).is_none());
        assert!(!sing.is_invertible(&r));
    }

    #[test]
    fn det_matches_permutation_sum() {
        let f = FqField::new(5).unwrap();
        let r = FdAlgebra::base_field(&f).unwrap();
        let m = AMatrix::from_fq(&r, 3, 3, &[1, 2, 3, 0, 4, 1, 2, 2, 2]);
        // 1(8-2) - 2(0-2) + 3(0-8) = 6 + 4 - 24 = -14 = 1 mod 5
        assert_eq!(m.det(&r), r.from_fq(1));
    }
}
