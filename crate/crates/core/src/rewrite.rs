//! Sparse polynomials over an [`FdAlgebra`] and quotient rings presented by
//! one monic rewrite rule per variable, X_j^{e_j} → g_j.
//!
//! Normal forms use the monomials with every exponent below its bound. The
//! rules must make some degree drop, which holds for the Drinfeld relations
//! X_j^q → Σ t_ij X_i and for univariate monic relations.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::algebra::{AlgElem, FdAlgebra};
use crate::error::{Error, Result};
use crate::fq::Fq;

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, AlgElem>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(alg: &FdAlgebra, c: &AlgElem, nvars: usize) -> Self {
        Self::term(alg, vec![0; nvars], c.clone())
    }

    pub fn one(alg: &FdAlgebra, nvars: usize) -> Self {
        Self::constant(alg, &alg.one(), nvars)
    }

    pub fn term(_alg: &FdAlgebra, m: Monomial, c: AlgElem) -> Self {
        let mut p = Poly::zero(m.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(alg: &FdAlgebra, i: usize, nvars: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::term(alg, m, alg.one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alg: &FdAlgebra, m: &[u32]) -> AlgElem {
        self.terms.get(m).cloned().unwrap_or_else(|| alg.zero())
    }

    fn add_term(&mut self, alg: &FdAlgebra, m: Monomial, c: &AlgElem) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => alg.add(old, c),
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, alg: &FdAlgebra, b: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &b.terms {
            out.add_term(alg, m.clone(), c);
        }
        out
    }

    pub fn sub(&self, alg: &FdAlgebra, b: &Poly) -> Poly {
        self.add(alg, &b.neg(alg))
    }

    pub fn neg(&self, alg: &FdAlgebra) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), alg.neg(c))).collect() }
    }

    pub fn scale(&self, alg: &FdAlgebra, c: &AlgElem) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, x) in &self.terms {
            out.add_term(alg, m.clone(), &alg.mul(c, x));
        }
        out
    }

    /// Product without reduction.
    pub fn mul(&self, alg: &FdAlgebra, b: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars.max(b.nvars));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &b.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(alg, m, &alg.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, alg: &FdAlgebra, n: u32) -> Poly {
        let mut acc = Poly::one(alg, self.nvars);
        for _ in 0..n {
            acc = acc.mul(alg, self);
        }
        acc
    }

    /// Embeds into more variables, placing variable i at `offset + i`.
    pub fn shift_vars(&self, offset: usize, nvars: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; nvars];
                e[offset..offset + m.len()].copy_from_slice(m);
                (e, c.clone())
            })
            .collect();
        Poly { nvars, terms }
    }

    /// Substitutes X_i ↦ images[i] (no reduction).
    pub fn substitute(&self, alg: &FdAlgebra, images: &[Poly]) -> Poly {
        let nv = images.first().map_or(0, |p| p.nvars);
        let mut out = Poly::zero(nv);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(alg, c, nv);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(alg, &images[i].pow(alg, e));
                }
            }
            out = out.add(alg, &t);
        }
        out
    }

    /// Applies x ↦ x^q to every coefficient.
    pub fn frob_coeffs(&self, alg: &FdAlgebra) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(alg, m.clone(), &alg.frobenius_q(c));
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn format(&self, alg: &FdAlgebra, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
                    .collect();
                let cs = alg.format(c);
                match (mono.is_empty(), cs.as_str()) {
                    (true, _) => cs,
                    (false, "1") => mono.join("*"),
                    _ if cs.contains(' ') => format!("({cs})*{}", mono.join("*")),
                    _ => format!("{cs}*{}", mono.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// R[X_1..X_n]/(X_j^{e_j} − g_j), a free R-module on the reduced monomials.
#[derive(Debug)]
pub struct RewriteRing {
    pub alg: FdAlgebra,
    pub names: Vec<String>,
    /// (e_j, g_j) per variable.
    pub rules: Vec<(u32, Poly)>,
    memo: RefCell<HashMap<Monomial, Poly>>,
}

impl Clone for RewriteRing {
    fn clone(&self) -> Self {
        RewriteRing { alg: self.alg.clone(), names: self.names.clone(), rules: self.rules.clone(), memo: RefCell::new(HashMap::new()) }
    }
}

impl RewriteRing {
    pub fn new(alg: &FdAlgebra, names: Vec<String>, rules: Vec<(u32, Poly)>) -> Result<Self> {
        if names.len() != rules.len() {
            return Err(Error::DimensionMismatch("one rule per variable".into()));
        }
        if rules.iter().any(|(e, g)| *e == 0 || g.nvars != names.len()) {
            return Err(Error::Invalid("malformed rewrite rule".into()));
        }
        Ok(RewriteRing { alg: alg.clone(), names, rules, memo: RefCell::new(HashMap::new()) })
    }

    /// Two copies of the ring side by side (variables X_i, then X_i').
    pub fn tensor_square(&self) -> Result<RewriteRing> {
        let n = self.nvars();
        let mut names: Vec<String> = self.names.iter().map(|s| format!("{s}⊗1")).collect();
        names.extend(self.names.iter().map(|s| format!("1⊗{s}")));
        let mut rules: Vec<(u32, Poly)> = self.rules.iter().map(|(e, g)| (*e, g.shift_vars(0, 2 * n))).collect();
        rules.extend(self.rules.iter().map(|(e, g)| (*e, g.shift_vars(n, 2 * n))));
        RewriteRing::new(&self.alg, names, rules)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn bounds(&self) -> Vec<u32> {
        self.rules.iter().map(|r| r.0).collect()
    }

    /// Number of reduced monomials.
    pub fn rank(&self) -> usize {
        self.rules.iter().map(|r| r.0 as usize).product()
    }

    /// Reduced monomials in mixed-radix order, first variable fastest.
    pub fn basis_monomials(&self) -> Vec<Monomial> {
        let b = self.bounds();
        (0..self.rank())
            .map(|mut idx| {
                b.iter()
                    .map(|&e| {
                        let d = (idx % e as usize) as u32;
                        idx /= e as usize;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    pub fn index_of(&self, m: &[u32]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (&e, &x) in self.bounds().iter().zip(m) {
            idx += x as usize * stride;
            stride *= e as usize;
        }
        idx
    }

    fn reduce_monomial(&self, m: &Monomial) -> Poly {
        let n = self.nvars();
        let Some(j) = (0..n).find(|&j| m[j] >= self.rules[j].0) else {
            return Poly::term(&self.alg, m.clone(), self.alg.one());
        };
        if let Some(p) = self.memo.borrow().get(m) {
            return p.clone();
        }
        let mut rest = m.clone();
        rest[j] -= self.rules[j].0;
        let shifted = self.rules[j].1.mul(&self.alg, &Poly::term(&self.alg, rest, self.alg.one()));
        let out = self.reduce(&shifted);
        self.memo.borrow_mut().insert(m.clone(), out.clone());
        out
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars());
        for (m, c) in &p.terms {
            let r = self.reduce_monomial(m);
            for (rm, rc) in r.terms {
                out.add_term(&self.alg, rm, &self.alg.mul(c, &rc));
            }
        }
        out
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&a.mul(&self.alg, b))
    }

    pub fn pow(&self, a: &Poly, n: u64) -> Poly {
        let mut acc = Poly::one(&self.alg, self.nvars());
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// F_q coordinates of a reduced element: monomial index·k + basis index.
    pub fn coords(&self, p: &Poly) -> Vec<Fq> {
        let k = self.alg.dim();
        let mut v = vec![0; self.rank() * k];
        for (m, c) in &self.reduce(p).terms {
            let i = self.index_of(m);
            v[i * k..(i + 1) * k].copy_from_slice(&c.0);
        }
        v
    }

    /// Coordinates over R, one entry per reduced monomial.
    pub fn r_coords(&self, p: &Poly) -> Vec<AlgElem> {
        let mut v = vec![self.alg.zero(); self.rank()];
        for (m, c) in &self.reduce(p).terms {
            v[self.index_of(m)] = c.clone();
        }
        v
    }

    pub fn from_r_coords(&self, v: &[AlgElem]) -> Poly {
        let mut p = Poly::zero(self.nvars());
        for (m, c) in self.basis_monomials().into_iter().zip(v) {
            p.add_term(&self.alg, m, c);
        }
        p
    }

    /// The algebra map X_i ↦ images[i] into `target`, on a reduced element.
    pub fn map_into(&self, target: &RewriteRing, images: &[Poly], x: &Poly, cache: &mut HashMap<Monomial, Poly>) -> Poly {
        let alg = &self.alg;
        let mut out = Poly::zero(target.nvars());
        for (m, c) in &self.reduce(x).terms {
            let img = match cache.get(m) {
                Some(p) => p.clone(),
                None => {
                    let mut t = Poly::one(alg, target.nvars());
                    for (i, &e) in m.iter().enumerate() {
                        if e > 0 {
                            t = target.mul(&t, &target.pow(&images[i], e as u64));
                        }
                    }
                    cache.insert(m.clone(), t.clone());
                    t
                }
            };
            out = out.add(alg, &img.scale(alg, c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqField;

    #[test]
    fn idempotent_rule() {
        let r = FdAlgebra::base_field(&FqField::new(2).unwrap()).unwrap();
        let x = Poly::var(&r, 0, 1);
        let ring = RewriteRing::new(&r, vec!["X".into()], vec![(2, x.clone())]).unwrap();
        assert_eq!(ring.reduce(&x.pow(&r, 3)), x);
        assert_eq!(ring.rank(), 2);
        let again = ring.reduce(&ring.reduce(&x.pow(&r, 5)));
        assert_eq!(again, ring.reduce(&x.pow(&r, 5)));
    }

    #[test]
    fn chained_rules() {
        // X1^2 = X2, X2^2 = 0
        let r = FdAlgebra::base_field(&FqField::new(2).unwrap()).unwrap();
        let ring = RewriteRing::new(&r, vec!["X1".into(), "X2".into()], vec![(2, Poly::var(&r, 1, 2)), (2, Poly::zero(2))]).unwrap();
        let x1 = Poly::var(&r, 0, 2);
        assert_eq!(ring.pow(&x1, 2), Poly::var(&r, 1, 2));
        assert!(ring.pow(&x1, 4).is_zero());
        assert_eq!(ring.basis_monomials().len(), 4);
        assert_eq!(ring.index_of(&[1, 1]), 3);
    }
}
