//! Standard algebras: finite fields, truncated polynomial rings, the
//! two-variable monomial quotient and tensor products.

use crate::error::{Error, Result};
use crate::fq::linalg::{Mat, Subspace};
use crate::fq::{poly, Fq, FqField};

use super::{AlgElem, AlgebraData, AlgebraHom, FdAlgebra};

fn power_names(var: &str, n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        })
        .collect()
}

impl FdAlgebra {
    /// The prime field F_q itself (dimension 1).
    pub fn base_field(field: &FqField) -> Result<Self> {
        Self::new(AlgebraData { field: field.clone(), names: vec!["1".into()], consts: vec![vec![vec![1]]], zeta: vec![0] })
    }

    /// F_{q^m} = F_q[x]/(g) for the first irreducible g of degree m; ζ = 0.
    pub fn field_ext(field: &FqField, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        if m == 1 {
            return Self::base_field(field);
        }
        let g = poly::find_irreducible(field, m);
        Self::poly_quotient(field, &g, "x")
    }

    /// F_q[x]/(g) for a monic g; the result must be local.
    pub fn poly_quotient(field: &FqField, g: &[Fq], var: &str) -> Result<Self> {
        let m = poly::degree(g).filter(|&d| d >= 1).ok_or_else(|| Error::Invalid("modulus must have positive degree".into()))?;
        let consts = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut mono = vec![0; i + j + 1];
                        mono[i + j] = 1;
                        let mut r = poly::rem(field, &mono, g);
                        r.resize(m, 0);
                        r
                    })
                    .collect()
            })
            .collect();
        Self::new(AlgebraData { field: field.clone(), names: power_names(var, m), consts, zeta: vec![0; m] })
    }

    /// F_q[u]/(u^n) with ζ = 0.
    pub fn truncated(field: &FqField, n: usize, var: &str) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        let consts = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![0; n];
                        if i + j < n {
                            v[i + j] = 1;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Self::new(AlgebraData { field: field.clone(), names: power_names(var, n), consts, zeta: vec![0; n] })
    }

    /// F_q[u, v]/(u^a, v^b, uv) with basis 1, u, …, u^{a-1}, v, …, v^{b-1}; ζ = 0.
    pub fn bivariate(field: &FqField, a: usize, b: usize, u: &str, v: &str) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Invalid("exponents must be positive".into()));
        }
        let k = a + b - 1;
        // (variable, exponent) for each basis index.
        let idx: Vec<(u8, usize)> = std::iter::once((0, 0)).chain((1..a).map(|i| (1, i))).chain((1..b).map(|i| (2, i))).collect();
        let find = |var: u8, e: usize| -> Option<usize> {
            if e == 0 {
                return Some(0);
            }
            match var {
                1 if e < a => Some(e),
                2 if e < b => Some(a - 1 + e),
                _ => None,
            }
        };
        let consts = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let (vi, ei) = idx[i];
                        let (vj, ej) = idx[j];
                        let mut out = vec![0; k];
                        let target = match (vi, vj) {
                            (0, _) => Some(j),
                            (_, 0) => Some(i),
                            (x, y) if x == y => find(x, ei + ej),
                            _ => None,
                        };
                        if let Some(t) = target {
                            out[t] = 1;
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        let mut names = power_names(u, a);
        names.extend(power_names(v, b).into_iter().skip(1));
        Self::new(AlgebraData { field: field.clone(), names, consts, zeta: vec![0; k] })
    }

    /// A ⊗_{F_q} B with basis a_i ⊗ b_j at index i·dim(B) + j and ζ = ζ_A ⊗ 1 + 1 ⊗ ζ_B.
    pub fn tensor(a: &FdAlgebra, b: &FdAlgebra) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::AlgebraMismatch);
        }
        let f = a.field();
        let (ka, kb) = (a.dim(), b.dim());
        let k = ka * kb;
        let mut consts = vec![vec![vec![0; k]; k]; k];
        for i in 0..ka {
            for j in 0..kb {
                for s in 0..ka {
                    for t in 0..kb {
                        let pa = a.mul(&a.basis(i), &a.basis(s));
                        let pb = b.mul(&b.basis(j), &b.basis(t));
                        let out = &mut consts[i * kb + j][s * kb + t];
                        for (x, &ca) in pa.0.iter().enumerate() {
                            for (y, &cb) in pb.0.iter().enumerate() {
                                out[x * kb + y] = f.add(out[x * kb + y], f.mul(ca, cb));
                            }
                        }
                    }
                }
            }
        }
        let names = (0..ka)
            .flat_map(|i| {
                (0..kb).map(move |j| match (i, j) {
                    (0, 0) => "1".to_string(),
                    (_, 0) => a.names()[i].clone(),
                    (0, _) => b.names()[j].clone(),
                    _ => format!("{}*{}", a.names()[i], b.names()[j]),
                })
            })
            .collect();
        let mut zeta = vec![0; k];
        for (x, &c) in a.zeta().0.iter().enumerate() {
            zeta[x * kb] = f.add(zeta[x * kb], c);
        }
        for (y, &c) in b.zeta().0.iter().enumerate() {
            zeta[y] = f.add(zeta[y], c);
        }
        Self::new(AlgebraData { field: f.clone(), names, consts, zeta })
    }

    /// The inclusion A → A ⊗ B, a ↦ a ⊗ 1.
    pub fn tensor_left(a: &FdAlgebra, b: &FdAlgebra, ab: &FdAlgebra) -> Result<AlgebraHom> {
        let kb = b.dim();
        let cols: Vec<Vec<Fq>> = (0..a.dim())
            .map(|i| {
                let mut v = vec![0; ab.dim()];
                v[i * kb] = 1;
                v
            })
            .collect();
        AlgebraHom::new(a.clone(), ab.clone(), Mat::from_cols(ab.dim(), &cols), b.zeta_is_zero())
    }

    /// The inclusion B → A ⊗ B, b ↦ 1 ⊗ b.
    pub fn tensor_right(b: &FdAlgebra, ab: &FdAlgebra) -> Result<AlgebraHom> {
        let cols: Vec<Vec<Fq>> = (0..b.dim())
            .map(|j| {
                let mut v = vec![0; ab.dim()];
                v[j] = 1;
                v
            })
            .collect();
        AlgebraHom::new(b.clone(), ab.clone(), Mat::from_cols(ab.dim(), &cols), false)
    }

    /// An element generating this field over F_q, with its minimal polynomial.
    pub fn field_generator(&self) -> Result<(AlgElem, Vec<Fq>)> {
        if !self.is_field() {
            return Err(Error::BaseNotField);
        }
        let f = self.field();
        let k = self.dim();
        let q = f.q() as usize;
        // Try basis vectors first, then small combinations.
        let total = (q as u64).saturating_pow(k as u32);
        for idx in 1..total.min(1 << 20) {
            let mut t = idx;
            let coords: Vec<Fq> = (0..k)
                .map(|_| {
                    let c = (t % q as u64) as Fq;
                    t /= q as u64;
                    c
                })
                .collect();
            let g = AlgElem(coords);
            if let Some(mp) = self.min_poly(&g) {
                if mp.len() == k + 1 {
                    return Ok((g, mp));
                }
            }
        }
        Err(Error::Invalid("no field generator found".into()))
    }

    /// Monic minimal polynomial of x over F_q (constant term first).
    pub fn min_poly(&self, x: &AlgElem) -> Option<Vec<Fq>> {
        let f = self.field();
        let k = self.dim();
        let mut powers = vec![self.one()];
        let mut s = Subspace::new(k);
        s.insert(f, self.one().0);
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            if s.contains(f, &next.0) {
                let cols: Vec<Vec<Fq>> = powers.iter().map(|p| p.0.clone()).collect();
                let m = Mat::from_cols(k, &cols);
                let (c, _) = m.solve(f, &next.0)?;
                let mut mp: Vec<Fq> = c.iter().map(|&v| f.neg(v)).collect();
                mp.push(1);
                return Some(mp);
            }
            s.insert(f, next.0.clone());
            powers.push(next);
        }
    }

    /// An embedding of the field `small` into the field `big`, if one exists.
    pub fn embed_field(small: &FdAlgebra, big: &FdAlgebra) -> Result<AlgebraHom> {
        if !small.is_field() || !big.is_field() {
            return Err(Error::BaseNotField);
        }
        if !big.dim().is_multiple_of(small.dim()) {
            return Err(Error::Invalid(format!("F_q^{} does not embed in F_q^{}", small.dim(), big.dim())));
        }
        let f = small.field();
        let (gamma, mp) = small.field_generator()?;
        // Roots of mp lie in the subfield fixed by Frob^{dim small}.
        let l = small.dim();
        let mut fix = Mat::identity(big.dim());
        for _ in 0..l {
            fix = big.frobenius_mat().mul(f, &fix);
        }
        for i in 0..big.dim() {
            fix.set(i, i, f.sub(fix.get(i, i), 1));
        }
        let sub = fix.kernel(f);
        let q = f.q() as u64;
        let n = (q).pow(sub.len() as u32);
        let eval = |x: &AlgElem| {
            let mut acc = big.zero();
            for &c in mp.iter().rev() {
                acc = big.add(&big.mul(&acc, x), &big.from_fq(c));
            }
            acc
        };
        for idx in 0..n {
            let mut t = idx;
            let mut x = big.zero();
            for v in &sub {
                let c = (t % q) as Fq;
                t /= q;
                x = big.add(&x, &big.scale(c, &AlgElem(v.clone())));
            }
            if !eval(&x).is_zero() {
                continue;
            }
            // small basis -> coordinates in powers of gamma -> powers of x.
            let pcols: Vec<Vec<Fq>> = (0..l).map(|i| small.pow(&gamma, i as u64).0).collect();
            let to_powers = Mat::from_cols(l, &pcols).inverse(f).expect("gamma generates");
            let xcols: Vec<Vec<Fq>> = (0..l).map(|i| big.pow(&x, i as u64).0).collect();
            let xm = Mat::from_cols(big.dim(), &xcols);
            return AlgebraHom::new(small.clone(), big.clone(), xm.mul(f, &to_powers), false);
        }
        Err(Error::Invalid("minimal polynomial has no root".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_f4_into_f16() {
        let f = FqField::new(2).unwrap();
        let f4 = FdAlgebra::field_ext(&f, 2).unwrap();
        let f16 = FdAlgebra::field_ext(&f, 4).unwrap();
        let h = FdAlgebra::embed_field(&f4, &f16).unwrap();
        let w = h.apply(&f4.basis(1));
        assert_eq!(f16.pow(&w, 3), f16.one());
        assert!(FdAlgebra::embed_field(&f4, &FdAlgebra::field_ext(&f, 3).unwrap()).is_err());
    }

    #[test]
    fn tensor_of_field_and_dual_numbers() {
        let f = FqField::new(3).unwrap();
        let a = FdAlgebra::field_ext(&f, 2).unwrap();
        let b = FdAlgebra::truncated(&f, 2, "e").unwrap();
        let ab = FdAlgebra::tensor(&a, &b).unwrap();
        assert_eq!(ab.dim(), 4);
        assert_eq!(ab.nilradical().len(), 2);
        FdAlgebra::tensor_left(&a, &b, &ab).unwrap();
        FdAlgebra::tensor_right(&b, &ab).unwrap();
    }
}
