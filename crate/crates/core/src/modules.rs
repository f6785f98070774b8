//! Submodules of R^n for a local algebra R, handled as F_q-subspaces.
//!
//! Minimal generating sets come from Nakayama's lemma: a family generates
//! the module iff its images span W/mW over the residue field.

use crate::algebra::{AlgElem, FdAlgebra};
use crate::fq::linalg::Subspace;
use crate::fq::Fq;

pub fn flat_vec(v: &[AlgElem]) -> Vec<Fq> {
    v.iter().flat_map(|c| c.0.iter().copied()).collect()
}

pub fn unflat_vec(alg: &FdAlgebra, v: &[Fq]) -> Vec<AlgElem> {
    v.chunks(alg.dim()).map(|c| AlgElem(c.to_vec())).collect()
}

fn scaled(alg: &FdAlgebra, c: &AlgElem, v: &[AlgElem]) -> Vec<Fq> {
    v.iter().flat_map(|x| alg.mul(c, x).0).collect()
}

/// F_q-subspace underlying the R-span of `vecs` inside R^n.
pub fn r_span(alg: &FdAlgebra, n: usize, vecs: &[Vec<AlgElem>]) -> Subspace {
    let f = alg.field();
    let mut s = Subspace::new(n * alg.dim());
    for v in vecs {
        for l in 0..alg.dim() {
            s.insert(f, scaled(alg, &alg.basis(l), v));
        }
    }
    s
}

/// A minimal generating set of the R-span of `vecs`, chosen greedily from
/// `vecs` in order.
pub fn minimal_generators(alg: &FdAlgebra, n: usize, vecs: &[Vec<AlgElem>]) -> Vec<Vec<AlgElem>> {
    let f = alg.field();
    let mut current = Subspace::new(n * alg.dim());
    for v in vecs {
        for m in alg.nilradical() {
            current.insert(f, scaled(alg, m, v));
        }
    }
    let mut chosen = vec![];
    for v in vecs {
        if current.contains(f, &flat_vec(v)) {
            continue;
        }
        for l in 0..alg.dim() {
            current.insert(f, scaled(alg, &alg.basis(l), v));
        }
        chosen.push(v.clone());
    }
    chosen
}

/// Whether the R-span of `vecs` is free, together with a basis when it is.
pub fn free_basis(alg: &FdAlgebra, n: usize, vecs: &[Vec<AlgElem>]) -> (bool, Vec<Vec<AlgElem>>) {
    let gens = minimal_generators(alg, n, vecs);
    let dim = r_span(alg, n, vecs).dim();
    (dim == gens.len() * alg.dim(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqField;

    #[test]
    fn ideal_generated_by_epsilon_is_not_free() {
        let r = FdAlgebra::truncated(&FqField::new(2).unwrap(), 2, "e").unwrap();
        let e = r.basis(1);
        let (free, gens) = free_basis(&r, 1, &[vec![e.clone()]]);
        assert!(!free);
        assert_eq!(gens.len(), 1);
        // (1, e) and (e, 0) generate a free module of rank 1? No: (e,0) = e·(1,e) - (0, e^2) = e·(1,e).
        let (free, gens) = free_basis(&r, 2, &[vec![r.one(), e.clone()], vec![e.clone(), r.zero()]]);
        assert!(free);
        assert_eq!(gens.len(), 1);
    }
}
