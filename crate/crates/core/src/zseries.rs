//! Truncated power series R[z]/(z^N) over an [`FdAlgebra`], and matrices of
//! them.
//!
//! Precision is explicit: binary operations truncate to the smaller operand,
//! and division by (z − ζ) consumes ν coefficients per step, where ν is the
//! nilpotency index of ζ.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElem, AlgebraHom, FdAlgebra};
use crate::amatrix::{det_by_subsets, AMatrix};
use crate::error::{Error, Result};
use crate::fq::linalg::{Mat, Subspace};
use crate::fq::Fq;

/// A power series known modulo z^precision; `coeffs[i]` multiplies z^i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZSeries {
    pub coeffs: Vec<AlgElem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
}

/// `a op b` at the common precision.
pub fn series_arith(alg: &FdAlgebra, a: &ZSeries, b: &ZSeries, op: SeriesOp) -> Result<ZSeries> {
    if a.coeffs.first().map(|c| c.0.len()) != Some(alg.dim()) || b.coeffs.first().map(|c| c.0.len()) != Some(alg.dim()) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(match op {
        SeriesOp::Add => a.add(alg, b),
        SeriesOp::Mul => a.mul(alg, b),
    })
}

/// Applies x ↦ x^q to every coefficient; z is fixed.
pub fn series_frobenius(alg: &FdAlgebra, a: &ZSeries) -> ZSeries {
    a.frob(alg)
}

impl ZSeries {
    pub fn zero(alg: &FdAlgebra, n: usize) -> Self {
        ZSeries { coeffs: vec![alg.zero(); n] }
    }

    pub fn constant(alg: &FdAlgebra, c: &AlgElem, n: usize) -> Self {
        let mut s = Self::zero(alg, n);
        if n > 0 {
            s.coeffs[0] = c.clone();
        }
        s
    }

    pub fn one(alg: &FdAlgebra, n: usize) -> Self {
        Self::constant(alg, &alg.one(), n)
    }

    /// c·z^i.
    pub fn monomial(alg: &FdAlgebra, c: &AlgElem, i: usize, n: usize) -> Self {
        let mut s = Self::zero(alg, n);
        if i < n {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn z(alg: &FdAlgebra, n: usize) -> Self {
        Self::monomial(alg, &alg.one(), 1, n)
    }

    /// z − ζ.
    pub fn z_minus_zeta(alg: &FdAlgebra, n: usize) -> Self {
        let mut s = Self::z(alg, n);
        if n > 0 {
            s.coeffs[0] = alg.neg(alg.zeta());
        }
        s
    }

    /// (z − ζ)^d.
    pub fn z_minus_zeta_pow(alg: &FdAlgebra, d: usize, n: usize) -> Self {
        let base = Self::z_minus_zeta(alg, n);
        (0..d).fold(Self::one(alg, n), |acc, _| acc.mul(alg, &base))
    }

    /// From a polynomial coefficient list, padded or truncated to precision n.
    pub fn from_coeffs(alg: &FdAlgebra, mut coeffs: Vec<AlgElem>, n: usize) -> Self {
        coeffs.resize(n, alg.zero());
        ZSeries { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn truncate(&self, n: usize) -> Self {
        ZSeries { coeffs: self.coeffs[..n.min(self.coeffs.len())].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(AlgElem::is_zero)
    }

    pub fn add(&self, alg: &FdAlgebra, b: &ZSeries) -> ZSeries {
        ZSeries { coeffs: self.coeffs.iter().zip(&b.coeffs).map(|(x, y)| alg.add(x, y)).collect() }
    }

    pub fn sub(&self, alg: &FdAlgebra, b: &ZSeries) -> ZSeries {
        ZSeries { coeffs: self.coeffs.iter().zip(&b.coeffs).map(|(x, y)| alg.sub(x, y)).collect() }
    }

    pub fn neg(&self, alg: &FdAlgebra) -> ZSeries {
        ZSeries { coeffs: self.coeffs.iter().map(|x| alg.neg(x)).collect() }
    }

    pub fn mul(&self, alg: &FdAlgebra, b: &ZSeries) -> ZSeries {
        let n = self.precision().min(b.precision());
        let mut out = vec![alg.zero(); n];
        for (i, x) in self.coeffs.iter().take(n).enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().take(n - i).enumerate() {
                if y.is_zero() {
                    continue;
                }
                out[i + j] = alg.add(&out[i + j], &alg.mul(x, y));
            }
        }
        ZSeries { coeffs: out }
    }

    pub fn scale(&self, alg: &FdAlgebra, c: &AlgElem) -> ZSeries {
        ZSeries { coeffs: self.coeffs.iter().map(|x| alg.mul(c, x)).collect() }
    }

    /// Multiplication by z^k (precision unchanged).
    pub fn shift(&self, alg: &FdAlgebra, k: usize) -> ZSeries {
        let n = self.precision();
        let mut out = vec![alg.zero(); n];
        if k < n {
            out[k..].clone_from_slice(&self.coeffs[..n - k]);
        }
        ZSeries { coeffs: out }
    }

    pub fn frob(&self, alg: &FdAlgebra) -> ZSeries {
        ZSeries { coeffs: self.coeffs.iter().map(|x| alg.frobenius_q(x)).collect() }
    }

    pub fn map(&self, h: &AlgebraHom) -> ZSeries {
        ZSeries { coeffs: self.coeffs.iter().map(|x| h.apply(x)).collect() }
    }

    /// A series is a unit iff its constant term is.
    pub fn is_unit_series(&self, alg: &FdAlgebra) -> bool {
        self.coeffs.first().is_some_and(|c| alg.invert(c).is_ok())
    }

    pub fn inverse(&self, alg: &FdAlgebra) -> Result<ZSeries> {
        let inv0 = alg.invert(self.coeffs.first().ok_or(Error::PrecisionExhausted)?)?;
        let n = self.precision();
        let mut b = vec![inv0.clone()];
        for i in 1..n {
            let mut acc = alg.zero();
            for j in 1..=i {
                acc = alg.add(&acc, &alg.mul(&self.coeffs[j], &b[i - j]));
            }
            b.push(alg.neg(&alg.mul(&inv0, &acc)));
        }
        Ok(ZSeries { coeffs: b })
    }

    /// Evaluation z ↦ x; exact when x is nilpotent of index ≤ precision.
    pub fn eval(&self, alg: &FdAlgebra, x: &AlgElem) -> AlgElem {
        self.coeffs.iter().rev().fold(alg.zero(), |acc, c| alg.add(&alg.mul(&acc, x), c))
    }

    /// F_q coordinates, coefficient by coefficient.
    pub fn flat(&self) -> Vec<Fq> {
        self.coeffs.iter().flat_map(|c| c.0.iter().copied()).collect()
    }

    pub fn unflat(alg: &FdAlgebra, v: &[Fq]) -> ZSeries {
        ZSeries { coeffs: v.chunks(alg.dim()).map(|c| AlgElem(c.to_vec())).collect() }
    }

    pub fn format(&self, alg: &FdAlgebra) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let cs = alg.format(c);
                let cs = if cs.contains(' ') && i > 0 { format!("({cs})") } else { cs };
                match (i, cs.as_str()) {
                    (0, _) => cs,
                    (1, "1") => "z".into(),
                    (1, _) => format!("{cs}*z"),
                    (_, "1") => format!("z^{i}"),
                    _ => format!("{cs}*z^{i}"),
                }
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        format!("{body} + O(z^{})", self.precision())
    }
}

/// One division step: x with (z − ζ)·x = y, checked by back-multiplication.
fn divide_once(alg: &FdAlgebra, y: &ZSeries, step: usize) -> Result<ZSeries> {
    let nu = alg.nu();
    let n = y.precision();
    if n <= nu {
        return Err(Error::InsufficientPrecision { needed: nu + 1, available: n });
    }
    let out = n - nu;
    let zeta_pows: Vec<AlgElem> = (0..nu).map(|j| alg.pow(alg.zeta(), j as u64)).collect();
    let x = ZSeries {
        coeffs: (0..out)
            .map(|i| (0..nu).fold(alg.zero(), |acc, j| alg.add(&acc, &alg.mul(&zeta_pows[j], &y.coeffs[i + 1 + j]))))
            .collect(),
    };
    let back = ZSeries::z_minus_zeta(alg, out).mul(alg, &x);
    for i in 0..out {
        if back.coeffs[i] != y.coeffs[i] {
            return Err(Error::NotDivisible { step, index: i, residual: alg.sub(&y.coeffs[i], &back.coeffs[i]).0 });
        }
    }
    Ok(x)
}

/// Divides y by (z − ζ)^d. The result has precision `precision(y) − d·ν`.
pub fn divide_by_z_minus_zeta(alg: &FdAlgebra, y: &ZSeries, d: usize) -> Result<ZSeries> {
    let needed = d * alg.nu() + 1;
    if y.precision() < needed {
        return Err(Error::InsufficientPrecision { needed, available: y.precision() });
    }
    let mut x = y.clone();
    for step in 0..d {
        x = divide_once(alg, &x, step)?;
    }
    Ok(x)
}

/// Remainder of a polynomial modulo the monic (z − ζ)^d; length d.
pub fn reduce_mod_z_minus_zeta_pow(alg: &FdAlgebra, poly: &[AlgElem], d: usize) -> Vec<AlgElem> {
    if d == 0 {
        return vec![];
    }
    let m = ZSeries::z_minus_zeta_pow(alg, d, d + 1).coeffs;
    let mut r = poly.to_vec();
    while r.len() > d {
        let top = r.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = r.len() - d;
        for (i, mi) in m[..d].iter().enumerate() {
            r[shift + i] = alg.sub(&r[shift + i], &alg.mul(&top, mi));
        }
    }
    r.resize(d, alg.zero());
    r
}

/// The least power of p that is ≥ max(d, ν). Multiplication by z^N0 then
/// lies in (z − ζ)^d·R[[z]], since (z − ζ)^{p^t} = z^{p^t} once p^t ≥ ν.
pub fn p_power_bound(alg: &FdAlgebra, d: usize) -> usize {
    let target = d.max(alg.nu()).max(1);
    let p = alg.p() as usize;
    let mut n = 1;
    while n < target {
        n *= p;
    }
    n
}

/// A matrix of series with a common precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<ZSeries>,
}

impl ZMatrix {
    pub fn zeros(alg: &FdAlgebra, rows: usize, cols: usize, n: usize) -> Self {
        ZMatrix { rows, cols, entries: vec![ZSeries::zero(alg, n); rows * cols] }
    }

    pub fn identity(alg: &FdAlgebra, r: usize, n: usize) -> Self {
        Self::scalar(alg, r, &ZSeries::one(alg, n))
    }

    pub fn scalar(alg: &FdAlgebra, r: usize, s: &ZSeries) -> Self {
        let mut m = Self::zeros(alg, r, r, s.precision());
        for i in 0..r {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ZSeries>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        ZMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(alg: &FdAlgebra, rows: usize, cols: &[Vec<ZSeries>], n: usize) -> Self {
        let mut m = Self::zeros(alg, rows, cols.len(), n);
        for (j, c) in cols.iter().enumerate() {
            for (i, s) in c.iter().enumerate() {
                m.set(i, j, s.clone());
            }
        }
        m
    }

    /// Constant matrix.
    pub fn from_amatrix(alg: &FdAlgebra, a: &AMatrix, n: usize) -> Self {
        ZMatrix { rows: a.rows, cols: a.cols, entries: a.data.iter().map(|c| ZSeries::constant(alg, c, n)).collect() }
    }

    pub fn precision(&self) -> usize {
        self.entries.iter().map(ZSeries::precision).min().unwrap_or(usize::MAX)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &ZSeries {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, s: ZSeries) {
        self.entries[i * self.cols + j] = s;
    }

    pub fn col(&self, j: usize) -> Vec<ZSeries> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ZSeries::is_zero)
    }

    pub fn truncate(&self, n: usize) -> ZMatrix {
        ZMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|s| s.truncate(n)).collect() }
    }

    /// Coefficient matrix of z^a.
    pub fn coeff(&self, alg: &FdAlgebra, a: usize) -> AMatrix {
        AMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.entries.iter().map(|s| s.coeffs.get(a).cloned().unwrap_or_else(|| alg.zero())).collect(),
        }
    }

    pub fn mul(&self, alg: &FdAlgebra, b: &ZMatrix) -> ZMatrix {
        assert_eq!(self.cols, b.rows, "matrix shapes do not compose");
        let n = self.precision().min(b.precision());
        let mut c = ZMatrix::zeros(alg, self.rows, b.cols, n);
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
                    let v = c.get(i, j).add(alg, &a.mul(alg, bk));
                    c.set(i, j, v);
                }
            }
        }
        c
    }

    pub fn add(&self, alg: &FdAlgebra, b: &ZMatrix) -> ZMatrix {
        ZMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().zip(&b.entries).map(|(x, y)| x.add(alg, y)).collect() }
    }

    pub fn sub(&self, alg: &FdAlgebra, b: &ZMatrix) -> ZMatrix {
        ZMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().zip(&b.entries).map(|(x, y)| x.sub(alg, y)).collect() }
    }

    pub fn scale(&self, alg: &FdAlgebra, s: &ZSeries) -> ZMatrix {
        ZMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x.mul(alg, s)).collect() }
    }

    pub fn frob(&self, alg: &FdAlgebra) -> ZMatrix {
        ZMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x.frob(alg)).collect() }
    }

    pub fn map(&self, h: &AlgebraHom) -> ZMatrix {
        ZMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x.map(h)).collect() }
    }

    pub fn transpose(&self) -> ZMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ZMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn kron(&self, alg: &FdAlgebra, b: &ZMatrix) -> ZMatrix {
        let n = self.precision().min(b.precision());
        let mut m = ZMatrix::zeros(alg, self.rows * b.rows, self.cols * b.cols, n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        m.set(i * b.rows + k, j * b.cols + l, self.get(i, j).mul(alg, b.get(k, l)));
                    }
                }
            }
        }
        m
    }

    pub fn det(&self, alg: &FdAlgebra) -> Result<ZSeries> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = if self.rows == 0 { 1 } else { self.precision() };
        Ok(det_by_subsets(
            self.rows,
            |i, j| self.get(i, j).clone(),
            ZSeries::zero(alg, n),
            ZSeries::one(alg, n),
            |a, b| a.add(alg, b),
            |a| a.neg(alg),
            |a, b| a.mul(alg, b),
        ))
    }

    /// Adjugate (transpose of the cofactor matrix).
    pub fn adjugate(&self, alg: &FdAlgebra) -> Result<ZMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let r = self.rows;
        let n = self.precision();
        let mut adj = ZMatrix::zeros(alg, r, r, n);
        if r == 1 {
            adj.set(0, 0, ZSeries::one(alg, n));
            return Ok(adj);
        }
        for i in 0..r {
            for j in 0..r {
                let minor = ZMatrix::from_rows(
                    (0..r).filter(|&a| a != i).map(|a| (0..r).filter(|&b| b != j).map(|b| self.get(a, b).clone()).collect()).collect(),
                );
                let mut c = minor.det(alg)?;
                if (i + j) % 2 == 1 {
                    c = c.neg(alg);
                }
                adj.set(j, i, c);
            }
        }
        Ok(adj)
    }

    /// Exact equality of the first n coefficients of every entry.
    pub fn eq_at(&self, other: &ZMatrix, n: usize) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.truncate(n) == b.truncate(n))
    }

    pub fn format(&self, alg: &FdAlgebra) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).format(alg)).collect()).collect()
    }
}

/// The F_q-matrix of X ↦ A·X on column vectors of series modulo z^n.
/// Unknown layout: (column entry c, power t, basis l) ↦ (c·n + t)·k + l.
pub fn flatten_series_map(alg: &FdAlgebra, a: &ZMatrix, n: usize) -> Mat {
    let k = alg.dim();
    let f = alg.field();
    let mut m = Mat::zeros(a.rows * n * k, a.cols * n * k);
    for c in 0..a.cols {
        for i in 0..a.rows {
            let s = a.get(i, c);
            for (sp, coef) in s.coeffs.iter().enumerate().take(n) {
                if coef.is_zero() {
                    continue;
                }
                for l in 0..k {
                    let prod = alg.mul(coef, &alg.basis(l));
                    for t in 0..n - sp {
                        let col = (c * n + t) * k + l;
                        let row0 = (i * n + sp + t) * k;
                        for (x, &v) in prod.0.iter().enumerate() {
                            if v != 0 {
                                m.set(row0 + x, col, f.add(m.get(row0 + x, col), v));
                            }
                        }
                    }
                }
            }
        }
    }
    m
}

/// A column vector of series as F_q coordinates modulo z^n.
pub fn flatten_series_vec(alg: &FdAlgebra, v: &[ZSeries], n: usize) -> Vec<Fq> {
    let k = alg.dim();
    let mut out = Vec::with_capacity(v.len() * n * k);
    for s in v {
        for t in 0..n {
            match s.coeffs.get(t) {
                Some(c) => out.extend_from_slice(&c.0),
                None => out.extend(std::iter::repeat_n(0, k)),
            }
        }
    }
    out
}

pub fn unflatten_series_vec(alg: &FdAlgebra, v: &[Fq], n: usize) -> Vec<ZSeries> {
    let k = alg.dim();
    v.chunks(n * k).map(|c| ZSeries::unflat(alg, c)).collect()
}

/// Failure of [`solve_series`]: the first unsolvable right-hand column and
/// its class modulo the image.
#[derive(Clone, Debug)]
pub struct SeriesSolveFailure {
    pub column: usize,
    pub class: Vec<Fq>,
}

/// Solves A·X = B modulo z^n column by column.
pub fn solve_series(alg: &FdAlgebra, a: &ZMatrix, b: &ZMatrix, n: usize) -> std::result::Result<ZMatrix, SeriesSolveFailure> {
    let flat = flatten_series_map(alg, a, n);
    let f = alg.field();
    let image = Subspace::from_vectors(f, flat.rows, (0..flat.cols).map(|j| flat.col(j)));
    let mut cols = vec![];
    for j in 0..b.cols {
        let rhs = flatten_series_vec(alg, &b.col(j), n);
        match flat.solve(f, &rhs) {
            Some((x, _)) => cols.push(unflatten_series_vec(alg, &x, n)),
            None => return Err(SeriesSolveFailure { column: j, class: image.quotient_coords(f, &rhs) }),
        }
    }
    Ok(ZMatrix::from_cols(alg, a.cols, &cols, n))
}

/// Solves A·X = B modulo z^n and truncates X to the precision at which it
/// is uniquely determined (the lowest z-degree met by the kernel of A).
pub fn solve_series_determined(alg: &FdAlgebra, a: &ZMatrix, b: &ZMatrix, n: usize) -> std::result::Result<(ZMatrix, usize), SeriesSolveFailure> {
    let x = solve_series(alg, a, b, n)?;
    let k = alg.dim();
    let kernel = flatten_series_map(alg, a, n).kernel(alg.field());
    let det_prec = kernel
        .iter()
        .flat_map(|v| v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| (i / k) % n))
        .min()
        .unwrap_or(n);
    Ok((x.truncate(det_prec), det_prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqField;

    fn dual(q: u32) -> FdAlgebra {
        FdAlgebra::truncated(&FqField::new(q).unwrap(), 2, "e").unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = FdAlgebra::base_field(&FqField::new(2).unwrap()).unwrap();
        let one_plus_z = ZSeries::one(&r, 3).add(&r, &ZSeries::z(&r, 3));
        let sq = series_arith(&r, &one_plus_z, &one_plus_z, SeriesOp::Mul).unwrap();
        assert_eq!(sq, ZSeries::one(&r, 3).add(&r, &ZSeries::monomial(&r, &r.one(), 2, 3)));

        let d = dual(2);
        let e = d.basis(1);
        let s = ZSeries::constant(&d, &e, 3).add(&d, &ZSeries::z(&d, 3));
        assert_eq!(series_frobenius(&d, &s), ZSeries::z(&d, 3));

        let dz = d.with_zeta(e.clone()).unwrap();
        let a = ZSeries::z_minus_zeta(&dz, 3);
        let b = ZSeries::z(&dz, 3).add(&dz, &ZSeries::constant(&dz, &e, 3));
        assert_eq!(a.mul(&dz, &b), ZSeries::monomial(&dz, &dz.one(), 2, 3));
    }

    #[test]
    fn division_examples() {
        let r = FdAlgebra::base_field(&FqField::new(2).unwrap()).unwrap();
        assert_eq!(divide_by_z_minus_zeta(&r, &ZSeries::z(&r, 4), 1).unwrap(), ZSeries::one(&r, 3));

        let d = dual(2);
        let e = d.basis(1);
        let dz = d.with_zeta(e.clone()).unwrap();
        let y = ZSeries::monomial(&dz, &dz.one(), 2, 6);
        let x = divide_by_z_minus_zeta(&dz, &y, 1).unwrap();
        assert_eq!(x, ZSeries::z(&dz, 4).add(&dz, &ZSeries::constant(&dz, &e, 4)));

        let y = ZSeries::z(&d, 4).sub(&d, &ZSeries::constant(&d, &e, 4));
        match divide_by_z_minus_zeta(&d, &y, 1) {
            Err(Error::NotDivisible { index: 0, residual, .. }) => assert_eq!(residual, e.0),
            other => panic!("{other:?}"),
        }
        assert!(matches!(divide_by_z_minus_zeta(&d, &ZSeries::z(&d, 1), 1), Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn determinant_examples() {
        let d = dual(2);
        let e = d.basis(1);
        let n = 4;
        let z = ZSeries::z(&d, n);
        let z_e = z.sub(&d, &ZSeries::constant(&d, &e, n));
        let zero = ZSeries::zero(&d, n);
        let m = ZMatrix::from_rows(vec![vec![z.clone(), zero.clone()], vec![zero.clone(), z_e]]);
        let det = m.det(&d).unwrap();
        // z^2 + e z (char 2)
        let expect = ZSeries::monomial(&d, &d.one(), 2, n).add(&d, &ZSeries::monomial(&d, &e, 1, n));
        assert_eq!(det, expect);
        assert_eq!(ZMatrix::identity(&d, 2, n).det(&d).unwrap(), ZSeries::one(&d, n));
        let one = ZSeries::one(&d, n);
        let m = ZMatrix::from_rows(vec![vec![zero.clone(), z.clone()], vec![one, zero]]);
        assert_eq!(m.det(&d).unwrap(), z);
    }

    #[test]
    fn unit_series() {
        let d = dual(2);
        let one_z = ZSeries::one(&d, 3).add(&d, &ZSeries::z(&d, 3));
        assert!(one_z.is_unit_series(&d));
        assert!(!ZSeries::z(&d, 3).is_unit_series(&d));
        let ez = ZSeries::constant(&d, &d.basis(1), 3).add(&d, &ZSeries::z(&d, 3));
        assert!(!ez.is_unit_series(&d));
        let inv = one_z.inverse(&d).unwrap();
        assert_eq!(inv.mul(&d, &one_z), ZSeries::one(&d, 3));
    }

    #[test]
    fn reduction_mod_power() {
        let d = dual(3);
        let dz = d.with_zeta(d.basis(1)).unwrap();
        // z^2 mod (z - e)^2 = 2 e z - e^2 = 2 e z
        let r = reduce_mod_z_minus_zeta_pow(&dz, &[dz.zero(), dz.zero(), dz.one()], 2);
        assert_eq!(r, vec![dz.zero(), dz.scale(2, &dz.basis(1))]);
    }
}
