//! Dense linear algebra over F_q: the exact kernel every module reduces to.

use super::{Fq, FqField};

/// A dense row-major matrix over F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fq>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<Fq>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x;
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Fq>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Mat { rows: rows.len(), cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Fq) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Fq> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, f: &FqField, b: &Mat) -> Mat {
        assert_eq!(self.cols, b.rows);
        let mut c = Mat::zeros(self.rows, b.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..b.cols {
                    let x = f.mul(a, b.get(k, j));
                    if x != 0 {
                        let y = f.add(c.get(i, j), x);
                        c.set(i, j, y);
                    }
                }
            }
        }
        c
    }

    pub fn apply(&self, f: &FqField, v: &[Fq]) -> Vec<Fq> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| if a == 0 || b == 0 { acc } else { f.add(acc, f.mul(a, b)) })
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn rank(&self, f: &FqField) -> usize {
        Subspace::from_vectors(f, self.cols, (0..self.rows).map(|i| self.row(i).to_vec())).dim()
    }

    /// An F_q-basis of {x : self·x = 0}.
    pub fn kernel(&self, f: &FqField) -> Vec<Vec<Fq>> {
        let rowspace = Subspace::from_vectors(f, self.cols, (0..self.rows).map(|i| self.row(i).to_vec()));
        rowspace.annihilator(f)
    }

    /// A particular solution of self·x = b together with a kernel basis,
    /// or None if the system is inconsistent.
    pub fn solve(&self, f: &FqField, b: &[Fq]) -> Option<(Vec<Fq>, Vec<Vec<Fq>>)> {
        assert_eq!(b.len(), self.rows);
        let n = self.cols;
        let aug = (0..self.rows).map(|i| {
            let mut r = self.row(i).to_vec();
            r.push(b[i]);
            r
        });
        let s = Subspace::from_vectors(f, n + 1, aug);
        if s.pivots.contains(&n) {
            return None;
        }
        let mut x = vec![0; n];
        for (row, &p) in s.rows.iter().zip(&s.pivots) {
            x[p] = row[n];
        }
        let kernel = self.kernel(f);
        Some((x, kernel))
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self, f: &FqField) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = (0..n).map(|i| {
            let mut r = self.row(i).to_vec();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        });
        let s = Subspace::from_vectors(f, 2 * n, aug);
        if s.dim() < n || s.pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for (row, &p) in s.rows.iter().zip(&s.pivots) {
            for j in 0..n {
                inv.set(p, j, row[n + j]);
            }
        }
        Some(inv)
    }
}

/// An F_q-subspace of F_q^n kept in fully reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub n: usize,
    pub rows: Vec<Vec<Fq>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(n: usize) -> Self {
        Subspace { n, rows: vec![], pivots: vec![] }
    }

    pub fn from_vectors(f: &FqField, n: usize, vs: impl IntoIterator<Item = Vec<Fq>>) -> Self {
        let mut s = Self::new(n);
        for v in vs {
            s.insert(f, v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces v against the echelon rows; the result is zero iff v lies in the span.
    pub fn reduce(&self, f: &FqField, v: &mut [Fq]) {
        debug_assert_eq!(v.len(), self.n);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                let nc = f.neg(c);
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(nc, r));
                    }
                }
            }
        }
    }

    pub fn contains(&self, f: &FqField, v: &[Fq]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds v to the span; returns true if the dimension grew.
    pub fn insert(&mut self, f: &FqField, mut v: Vec<Fq>) -> bool {
        self.reduce(f, &mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[p]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                let nc = f.neg(c);
                for (x, &r) in row.iter_mut().zip(&v) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(nc, r));
                    }
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn basis(&self) -> &[Vec<Fq>] {
        &self.rows
    }

    pub fn contains_subspace(&self, f: &FqField, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(f, v))
    }

    pub fn equals(&self, f: &FqField, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(f, other)
    }

    /// Positions not used as pivots; unit vectors there span a complement.
    pub fn free_positions(&self) -> Vec<usize> {
        let mut used = vec![false; self.n];
        for &p in &self.pivots {
            used[p] = true;
        }
        (0..self.n).filter(|&i| !used[i]).collect()
    }

    /// Coordinates of the class of v in F_q^n / self, relative to the unit
    /// vectors at `free_positions()`.
    pub fn quotient_coords(&self, f: &FqField, v: &[Fq]) -> Vec<Fq> {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        self.free_positions().into_iter().map(|i| w[i]).collect()
    }

    /// Basis of {x : <row, x> = 0 for every row}.
    pub fn annihilator(&self, f: &FqField) -> Vec<Vec<Fq>> {
        self.free_positions()
            .into_iter()
            .map(|fc| {
                let mut x = vec![0; self.n];
                x[fc] = 1;
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = f.neg(row[fc]);
                }
                x
            })
            .collect()
    }

    pub fn intersect(&self, f: &FqField, other: &Subspace) -> Subspace {
        // Zassenhaus: rows (u | u) and (w | 0); the part with zero left half is the intersection.
        let n = self.n;
        let mut z = Subspace::new(2 * n);
        for u in &self.rows {
            let mut r = u.clone();
            r.extend_from_slice(u);
            z.insert(f, r);
        }
        for w in &other.rows {
            let mut r = w.clone();
            r.extend(std::iter::repeat_n(0, n));
            z.insert(f, r);
        }
        Subspace::from_vectors(
            f,
            n,
            z.rows.iter().zip(&z.pivots).filter(|(_, &p)| p >= n).map(|(r, _)| r[n..].to_vec()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_kernel() {
        let f = FqField::new(3).unwrap();
        // x + y = 1, y + 2z = 0 over F_3
        let a = Mat::from_rows(3, &[vec![1, 1, 0], vec![0, 1, 2]]);
        let (x, k) = a.solve(&f, &[1, 0]).unwrap();
        assert_eq!(a.apply(&f, &x), vec![1, 0]);
        assert_eq!(k.len(), 1);
        assert_eq!(a.apply(&f, &k[0]), vec![0, 0]);
        let b = Mat::from_rows(2, &[vec![1, 1], vec![1, 1]]);
        assert!(b.solve(&f, &[1, 0]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FqField::new(4).unwrap();
        let a = Mat::from_rows(2, &[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse(&f).unwrap();
        assert_eq!(a.mul(&f, &inv), Mat::identity(2));
    }

    #[test]
    fn intersection() {
        let f = FqField::new(2).unwrap();
        let a = Subspace::from_vectors(&f, 3, [vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::from_vectors(&f, 3, [vec![1, 1, 0], vec![0, 0, 1]]);
        let c = a.intersect(&f, &b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&f, &[1, 1, 0]));
    }
}
