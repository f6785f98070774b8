//! Finite-dimensional commutative local F_q-algebras given by structure
//! constants, with a designated nilpotent element ζ.
//!
//! Elements are coordinate vectors in the algebra's basis; all operations go
//! through the owning [`FdAlgebra`]. Every R-linear problem is flattened to an
//! F_q-linear one via the multiplication matrices.

mod hom;
mod presets;

pub use hom::AlgebraHom;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fq::linalg::{Mat, Subspace};
use crate::fq::{Fq, FqField};

/// An element of an [`FdAlgebra`], as coordinates over F_q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgElem(pub Vec<Fq>);

impl AlgElem {
    pub fn coords(&self) -> &[Fq] {
        &self.0
    }
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// Raw algebra description, before validation.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub field: FqField,
    pub names: Vec<String>,
    /// `consts[i][j]` holds the coordinates of b_i·b_j.
    pub consts: Vec<Vec<Vec<Fq>>>,
    pub zeta: Vec<Fq>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    Shape,
    Commutativity,
    Associativity,
    Unit,
    ZetaNilpotence,
    Locality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// Indices of basis elements exhibiting the failure.
    Basis(Vec<usize>),
    /// An element exhibiting the failure, e.g. a nontrivial idempotent.
    Element(Vec<Fq>),
    Message(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Witness,
}

/// Outcome of [`validate_algebra`]; empty iff every axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| format!("{:?} ({:?})", v.axiom, v.witness)).collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn raw_mul(f: &FqField, k: usize, table: &[Fq], x: &[Fq], y: &[Fq]) -> Vec<Fq> {
    let mut out = vec![0; k];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let c = f.mul(a, b);
            let row = &table[(i * k + j) * k..(i * k + j + 1) * k];
            for (o, &t) in out.iter_mut().zip(row) {
                if t != 0 {
                    *o = f.add(*o, f.mul(c, t));
                }
            }
        }
    }
    out
}

fn raw_pow(f: &FqField, k: usize, table: &[Fq], x: &[Fq], mut n: u64) -> Vec<Fq> {
    let mut r = vec![0; k];
    r[0] = 1;
    let mut b = x.to_vec();
    while n > 0 {
        if n & 1 == 1 {
            r = raw_mul(f, k, table, &r, &b);
        }
        n >>= 1;
        if n > 0 {
            b = raw_mul(f, k, table, &b, &b);
        }
    }
    r
}

/// Checks the algebra axioms exhaustively over the basis.
pub fn validate_algebra(data: &AlgebraData) -> ValidationReport {
    let mut v = vec![];
    let f = &data.field;
    let k = data.names.len();
    let shape_ok = k >= 1
        && data.consts.len() == k
        && data.consts.iter().all(|row| row.len() == k && row.iter().all(|c| c.len() == k))
        && data.zeta.len() == k
        && data.consts.iter().flatten().flatten().chain(&data.zeta).all(|&c| c < f.q());
    if !shape_ok {
        v.push(Violation { axiom: Axiom::Shape, witness: Witness::Message(format!("expected {k}x{k}x{k} tensor and length-{k} zeta")) });
        return ValidationReport { violations: v };
    }
    let table: Vec<Fq> = data.consts.iter().flatten().flatten().copied().collect();
    let unit = |j: usize| {
        let mut e = vec![0; k];
        e[j] = 1;
        e
    };
    if let Some(j) = (0..k).find(|&j| data.consts[0][j] != unit(j) || data.consts[j][0] != unit(j)) {
        v.push(Violation { axiom: Axiom::Unit, witness: Witness::Basis(vec![0, j]) });
    }
    'comm: for i in 0..k {
        for j in i + 1..k {
            if data.consts[i][j] != data.consts[j][i] {
                v.push(Violation { axiom: Axiom::Commutativity, witness: Witness::Basis(vec![i, j]) });
                break 'comm;
            }
        }
    }
    'assoc: for i in 0..k {
        for j in 0..k {
            let ij = &data.consts[i][j];
            for l in 0..k {
                let left = raw_mul(f, k, &table, ij, &unit(l));
                let right = raw_mul(f, k, &table, &unit(i), &data.consts[j][l]);
                if left != right {
                    v.push(Violation { axiom: Axiom::Associativity, witness: Witness::Basis(vec![i, j, l]) });
                    break 'assoc;
                }
            }
        }
    }
    if !v.is_empty() {
        return ValidationReport { violations: v };
    }
    if raw_pow(f, k, &table, &data.zeta, k as u64).iter().any(|&c| c != 0) {
        v.push(Violation { axiom: Axiom::ZetaNilpotence, witness: Witness::Element(data.zeta.clone()) });
    }
    // Local iff {x : x^q = x} is just F_q; each local factor contributes one copy of F_q.
    let frob = frobenius_matrix(f, k, &table);
    let mut fixed = frob.clone();
    for i in 0..k {
        fixed.set(i, i, f.sub(fixed.get(i, i), 1));
    }
    let ker = fixed.kernel(f);
    if ker.len() != 1 {
        let mut witness = None;
        'search: for x in &ker {
            for c in f.elements() {
                let mut y = x.clone();
                y[0] = f.sub(y[0], c);
                let e = raw_pow(f, k, &table, &y, f.q() as u64 - 1);
                if e.iter().any(|&t| t != 0) && e != unit(0) {
                    witness = Some(e);
                    break 'search;
                }
            }
        }
        v.push(Violation {
            axiom: Axiom::Locality,
            witness: witness.map(Witness::Element).unwrap_or(Witness::Message(format!("{} independent Frobenius-fixed elements", ker.len()))),
        });
    }
    ValidationReport { violations: v }
}

fn frobenius_matrix(f: &FqField, k: usize, table: &[Fq]) -> Mat {
    let cols: Vec<Vec<Fq>> = (0..k)
        .map(|j| {
            let mut e = vec![0; k];
            e[j] = 1;
            raw_pow(f, k, table, &e, f.q() as u64)
        })
        .collect();
    Mat::from_cols(k, &cols)
}

struct Inner {
    field: FqField,
    k: usize,
    names: Vec<String>,
    table: Vec<Fq>,
    zeta: AlgElem,
    nu: usize,
    frob: Mat,
    nil: Vec<AlgElem>,
    nil_frob_exp: usize,
}

/// A validated finite-dimensional commutative local F_q-algebra with ζ.
#[derive(Clone)]
pub struct FdAlgebra(Arc<Inner>);

impl fmt::Debug for FdAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FdAlgebra(q={}, basis={:?}, zeta={})", self.q(), self.0.names, self.format(&self.0.zeta))
    }
}

impl PartialEq for FdAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.k == other.0.k && self.0.table == other.0.table && self.0.zeta == other.0.zeta)
    }
}
impl Eq for FdAlgebra {}

impl FdAlgebra {
    /// Validates `data` and builds the algebra.
    pub fn new(data: AlgebraData) -> Result<Self> {
        let report = validate_algebra(&data);
        if !report.is_ok() {
            return Err(Error::InvalidAlgebra(report));
        }
        let f = data.field.clone();
        let k = data.names.len();
        let table: Vec<Fq> = data.consts.iter().flatten().flatten().copied().collect();
        let frob = frobenius_matrix(&f, k, &table);

        // Nilradical = kernel of a high enough Frobenius power.
        let mut t = 0;
        while (f.q() as u64).pow(t) < k as u64 {
            t += 1;
        }
        let mut ft = Mat::identity(k);
        for _ in 0..t {
            ft = frob.mul(&f, &ft);
        }
        let nil: Vec<AlgElem> = ft.kernel(&f).into_iter().map(AlgElem).collect();
        let mut nil_frob_exp = 0;
        let mut cur: Vec<Vec<Fq>> = nil.iter().map(|x| x.0.clone()).collect();
        while cur.iter().any(|x| x.iter().any(|&c| c != 0)) {
            cur = cur.iter().map(|x| frob.apply(&f, x)).collect();
            nil_frob_exp += 1;
        }
        let zeta = AlgElem(data.zeta.clone());
        let mut nu = 1;
        let mut z = zeta.0.clone();
        while z.iter().any(|&c| c != 0) {
            z = raw_mul(&f, k, &table, &z, &zeta.0);
            nu += 1;
        }
        Ok(FdAlgebra(Arc::new(Inner { field: f, k, names: data.names, table, zeta, nu, frob, nil, nil_frob_exp })))
    }

    /// The raw data this algebra was built from.
    pub fn data(&self) -> AlgebraData {
        let k = self.0.k;
        let consts = (0..k).map(|i| (0..k).map(|j| self.0.table[(i * k + j) * k..(i * k + j + 1) * k].to_vec()).collect()).collect();
        AlgebraData { field: self.0.field.clone(), names: self.0.names.clone(), consts, zeta: self.0.zeta.0.clone() }
    }

    /// The same algebra with a different designated ζ.
    pub fn with_zeta(&self, zeta: AlgElem) -> Result<Self> {
        let mut d = self.data();
        d.zeta = zeta.0;
        Self::new(d)
    }

    pub fn same(&self, other: &FdAlgebra) -> bool {
        self == other
    }

    pub fn field(&self) -> &FqField {
        &self.0.field
    }
    pub fn q(&self) -> u32 {
        self.0.field.q()
    }
    pub fn p(&self) -> u32 {
        self.0.field.p()
    }
    pub fn dim(&self) -> usize {
        self.0.k
    }
    pub fn names(&self) -> &[String] {
        &self.0.names
    }
    pub fn zeta(&self) -> &AlgElem {
        &self.0.zeta
    }
    /// Nilpotency index ν of ζ: the least ν ≥ 1 with ζ^ν = 0.
    pub fn nu(&self) -> usize {
        self.0.nu
    }
    pub fn zeta_is_zero(&self) -> bool {
        self.0.zeta.is_zero()
    }
    /// F_q-basis of the nilradical (= maximal ideal).
    pub fn nilradical(&self) -> &[AlgElem] {
        &self.0.nil
    }
    /// Least n with x^{q^n} = 0 for every nilpotent x.
    pub fn nil_frobenius_exponent(&self) -> usize {
        self.0.nil_frob_exp
    }
    pub fn is_field(&self) -> bool {
        self.0.nil.is_empty()
    }
    /// Degree over F_q of the residue field.
    pub fn residue_degree(&self) -> usize {
        self.0.k - self.0.nil.len()
    }
    /// Matrix of x ↦ x^q on coordinates.
    pub fn frobenius_mat(&self) -> &Mat {
        &self.0.frob
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem(vec![0; self.0.k])
    }
    pub fn one(&self) -> AlgElem {
        self.basis(0)
    }
    pub fn basis(&self, i: usize) -> AlgElem {
        let mut v = vec![0; self.0.k];
        v[i] = 1;
        AlgElem(v)
    }
    pub fn from_fq(&self, c: Fq) -> AlgElem {
        let mut v = vec![0; self.0.k];
        v[0] = c;
        AlgElem(v)
    }
    pub fn from_int(&self, n: i64) -> AlgElem {
        self.from_fq(self.0.field.from_int(n))
    }

    pub fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let f = &self.0.field;
        AlgElem(a.0.iter().zip(&b.0).map(|(&x, &y)| f.add(x, y)).collect())
    }
    pub fn sub(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let f = &self.0.field;
        AlgElem(a.0.iter().zip(&b.0).map(|(&x, &y)| f.sub(x, y)).collect())
    }
    pub fn neg(&self, a: &AlgElem) -> AlgElem {
        let f = &self.0.field;
        AlgElem(a.0.iter().map(|&x| f.neg(x)).collect())
    }
    pub fn scale(&self, c: Fq, a: &AlgElem) -> AlgElem {
        let f = &self.0.field;
        AlgElem(a.0.iter().map(|&x| f.mul(c, x)).collect())
    }
    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        AlgElem(raw_mul(&self.0.field, self.0.k, &self.0.table, &a.0, &b.0))
    }
    pub fn pow(&self, a: &AlgElem, n: u64) -> AlgElem {
        AlgElem(raw_pow(&self.0.field, self.0.k, &self.0.table, &a.0, n))
    }
    /// x ↦ x^q.
    pub fn frobenius_q(&self, a: &AlgElem) -> AlgElem {
        AlgElem(self.0.frob.apply(&self.0.field, &a.0))
    }
    /// x ↦ x^{q^i}.
    pub fn frobenius_pow(&self, a: &AlgElem, i: usize) -> AlgElem {
        let mut x = a.clone();
        for _ in 0..i {
            x = self.frobenius_q(&x);
        }
        x
    }
    /// x ↦ x^{q^{-1}}; only defined on fields.
    pub fn frobenius_inv(&self, a: &AlgElem) -> Result<AlgElem> {
        if !self.is_field() {
            return Err(Error::BaseNotField);
        }
        Ok(self.frobenius_pow(a, self.0.k - 1))
    }

    /// Matrix of y ↦ a·y.
    pub fn mul_matrix(&self, a: &AlgElem) -> Mat {
        let cols: Vec<Vec<Fq>> = (0..self.0.k).map(|j| self.mul(a, &self.basis(j)).0).collect();
        Mat::from_cols(self.0.k, &cols)
    }

    pub fn is_unit(&self, a: &AlgElem) -> bool {
        self.mul_matrix(a).rank(&self.0.field) == self.0.k
    }

    pub fn invert(&self, a: &AlgElem) -> Result<AlgElem> {
        self.mul_matrix(a).solve(&self.0.field, &self.one().0).map(|(x, _)| AlgElem(x)).ok_or(Error::NotAUnit)
    }

    /// Whether the F_q-span of `basis` is an ideal.
    pub fn is_ideal(&self, basis: &[AlgElem]) -> bool {
        let f = &self.0.field;
        let s = Subspace::from_vectors(f, self.0.k, basis.iter().map(|x| x.0.clone()));
        basis.iter().all(|x| (0..self.0.k).all(|j| s.contains(f, &self.mul(x, &self.basis(j)).0)))
    }

    /// F_q-span of all products of `n` elements of the ideal spanned by `basis`.
    pub fn ideal_power(&self, basis: &[AlgElem], n: usize) -> Vec<AlgElem> {
        let f = &self.0.field;
        let mut cur: Vec<AlgElem> = Subspace::from_vectors(f, self.0.k, std::iter::once(self.one().0)).rows.into_iter().map(AlgElem).collect();
        for _ in 0..n {
            let prods = cur.iter().flat_map(|a| basis.iter().map(move |b| (a, b))).map(|(a, b)| self.mul(a, b).0);
            cur = Subspace::from_vectors(f, self.0.k, prods).rows.into_iter().map(AlgElem).collect();
        }
        cur
    }

    /// The quotient by the ideal spanned by `ideal`, with the projection.
    ///
    /// Basis representatives are 1 followed by the first standard basis
    /// vectors independent modulo the ideal.
    pub fn quotient(&self, ideal: &[AlgElem]) -> Result<(FdAlgebra, AlgebraHom)> {
        let f = &self.0.field;
        let k = self.0.k;
        if !self.is_ideal(ideal) {
            return Err(Error::Invalid("quotient by a subspace that is not an ideal".into()));
        }
        let mut span = Subspace::from_vectors(f, k, ideal.iter().map(|x| x.0.clone()));
        if span.contains(f, &self.one().0) {
            return Err(Error::Invalid("quotient by the unit ideal".into()));
        }
        let ideal_dim = span.dim();
        let mut reps = vec![];
        for j in 0..k {
            if span.insert(f, self.basis(j).0) {
                reps.push(j);
            }
        }
        let m = reps.len();
        // Change of basis: columns = representatives then ideal basis.
        let ideal_basis = Subspace::from_vectors(f, k, ideal.iter().map(|x| x.0.clone())).rows;
        let mut cols: Vec<Vec<Fq>> = reps.iter().map(|&j| self.basis(j).0).collect();
        cols.extend(ideal_basis);
        debug_assert_eq!(cols.len(), m + ideal_dim);
        let p = Mat::from_cols(k, &cols).inverse(f).expect("complement is a basis");
        let project = |x: &AlgElem| -> Vec<Fq> { p.apply(f, &x.0)[..m].to_vec() };
        let consts = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| project(&self.mul(&self.basis(a), &self.basis(b)))).collect())
            .collect();
        let names = reps.iter().map(|&j| self.0.names[j].clone()).collect();
        let target = FdAlgebra::new(AlgebraData { field: f.clone(), names, consts, zeta: project(&self.0.zeta) })?;
        let hom_cols: Vec<Vec<Fq>> = (0..k).map(|j| project(&self.basis(j))).collect();
        let hom = AlgebraHom::new(self.clone(), target.clone(), Mat::from_cols(m, &hom_cols), true)?;
        Ok((target, hom))
    }

    /// The residue field R/m (as an algebra over F_q) and the projection.
    pub fn residue_field(&self) -> Result<(FdAlgebra, AlgebraHom)> {
        self.quotient(&self.0.nil.clone())
    }

    /// Solves A·x = b with A over this algebra, flattened to F_q.
    pub fn solve_linear(&self, a: &crate::amatrix::AMatrix, b: &[AlgElem]) -> Result<LinearSolution> {
        if a.rows != b.len() {
            return Err(Error::DimensionMismatch(format!("{} rows vs {} right-hand entries", a.rows, b.len())));
        }
        let k = self.0.k;
        let flat = a.flatten(self);
        let rhs: Vec<Fq> = b.iter().flat_map(|x| x.0.iter().copied()).collect();
        let (x, ker) = flat.solve(&self.0.field, &rhs).ok_or(Error::NoSolution)?;
        let unflatten = |v: Vec<Fq>| -> Vec<AlgElem> { v.chunks(k).map(|c| AlgElem(c.to_vec())).collect() };
        Ok(LinearSolution { particular: unflatten(x), kernel: ker.into_iter().map(unflatten).collect() })
    }

    /// Readable form like `1 + 2*e`.
    pub fn format(&self, a: &AlgElem) -> String {
        let f = &self.0.field;
        let terms: Vec<String> = a
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let name = &self.0.names[i];
                let cs = f.format(c);
                let cs = if f.e() > 1 && cs.contains('+') { format!("({cs})") } else { cs };
                match (i, c) {
                    (0, _) => cs,
                    (_, 1) => name.clone(),
                    _ => format!("{cs}*{name}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Solution set of a linear system: particular solution plus an F_q-basis
/// of the homogeneous solutions.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub particular: Vec<AlgElem>,
    pub kernel: Vec<Vec<AlgElem>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amatrix::AMatrix;

    fn f(q: u32) -> FqField {
        FqField::new(q).unwrap()
    }

    #[test]
    fn dual_numbers_validate() {
        let r = FdAlgebra::truncated(&f(2), 2, "e").unwrap();
        assert!(validate_algebra(&r.data()).is_ok());
        assert_eq!(r.nilradical().len(), 1);
        let (res, _) = r.residue_field().unwrap();
        assert_eq!(res.dim(), 1);
    }

    #[test]
    fn product_ring_is_not_local() {
        // F_2 x F_2 with basis 1, e1 (e1^2 = e1).
        let data = AlgebraData {
            field: f(2),
            names: vec!["1".into(), "e1".into()],
            consts: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]],
            zeta: vec![0, 0],
        };
        let rep = validate_algebra(&data);
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].axiom, Axiom::Locality);
        let Witness::Element(w) = &rep.violations[0].witness else { panic!() };
        assert!(w == &vec![0, 1] || w == &vec![1, 1]);
    }

    #[test]
    fn zeta_nilpotency_index() {
        let r = FdAlgebra::truncated(&f(3), 3, "t").unwrap();
        let r = r.with_zeta(r.basis(1)).unwrap();
        assert_eq!(r.nu(), 3);
        assert!(r.with_zeta(r.one()).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let r = FdAlgebra::truncated(&f(2), 2, "e").unwrap();
        let x = r.add(&r.one(), &r.basis(1));
        assert_eq!(r.frobenius_q(&x), r.one());
        let f4 = FdAlgebra::field_ext(&f(2), 2).unwrap();
        let w = f4.basis(1);
        assert_eq!(f4.frobenius_q(&w), f4.add(&w, &f4.one()));
        let r3 = FdAlgebra::truncated(&f(3), 2, "t").unwrap();
        assert!(r3.frobenius_q(&r3.basis(1)).is_zero());
    }

    #[test]
    fn invert_examples() {
        let r = FdAlgebra::truncated(&f(2), 2, "e").unwrap();
        let x = r.add(&r.one(), &r.basis(1));
        assert_eq!(r.invert(&x).unwrap(), x);
        assert_eq!(r.invert(&r.basis(1)), Err(Error::NotAUnit));
        let r3 = FdAlgebra::truncated(&f(3), 2, "t").unwrap();
        let y = r3.add(&r3.one(), &r3.basis(1));
        assert_eq!(r3.invert(&y).unwrap(), AlgElem(vec![1, 2]));
    }

    #[test]
    fn nilradical_examples() {
        let f4 = FdAlgebra::field_ext(&f(2), 2).unwrap();
        assert!(f4.nilradical().is_empty());
        assert_eq!(f4.residue_field().unwrap().0.dim(), 2);
        let b = FdAlgebra::bivariate(&f(2), 2, 2, "z", "e").unwrap();
        assert_eq!(b.dim(), 3);
        assert_eq!(b.nilradical().len(), 2);
        assert_eq!(b.residue_degree(), 1);
    }

    #[test]
    fn solve_linear_examples() {
        let r = FdAlgebra::truncated(&f(2), 2, "e").unwrap();
        let e = r.basis(1);
        let a = AMatrix::from_rows(&r, vec![vec![e.clone()]]);
        let s = r.solve_linear(&a, &[r.zero()]).unwrap();
        assert_eq!(s.kernel, vec![vec![e.clone()]]);
        let u = r.add(&r.one(), &e);
        let s = r.solve_linear(&AMatrix::from_rows(&r, vec![vec![u.clone()]]), &[r.one()]).unwrap();
        assert_eq!(s.particular, vec![u]);
        assert!(s.kernel.is_empty());
        assert_eq!(r.solve_linear(&a, &[r.one()]).unwrap_err(), Error::NoSolution);
    }

    #[test]
    fn quotient_by_ideal() {
        let r = FdAlgebra::truncated(&f(3), 3, "t").unwrap();
        let (s, h) = r.quotient(&[r.basis(2)]).unwrap();
        assert_eq!(s.dim(), 2);
        let t = h.apply(&r.basis(1));
        assert!(s.mul(&t, &t).is_zero());
    }
}
