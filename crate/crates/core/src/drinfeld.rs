//! The group scheme attached to a finite shtuka: Spec of
//! R[X_1..X_r]/(X_j^q − Σ_i t_ij X_i) with X_i primitive and [a]X_i = a·X_i.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{AlgElem, AlgebraHom, FdAlgebra};
use crate::amatrix::AMatrix;
use crate::error::{Error, Result};
use crate::fq::linalg::{Mat, Subspace};
use crate::fq::Fq;
use crate::modules::{flat_vec, unflat_vec};
use crate::rewrite::{Monomial, Poly, RewriteRing};
use crate::shtuka::{nilpotence_checks, FiniteShtuka, TruncatedShtuka};

/// Upper bound on the number of tensor-square monomials we are willing to build.
pub const TENSOR_SQUARE_BUDGET: usize = 6561;

#[derive(Clone, Debug)]
pub struct DrinfeldPresentation {
    pub alg: FdAlgebra,
    pub rank: usize,
    /// X_j^q = Σ_i relations[i][j]·X_i.
    pub relations: AMatrix,
    pub q: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderCertificate {
    pub order: u128,
    /// Number of reduced monomials X^m with 0 ≤ m_i < q, enumerated.
    pub monomials: usize,
}

pub fn presentation(sh: &FiniteShtuka) -> DrinfeldPresentation {
    DrinfeldPresentation { alg: sh.alg.clone(), rank: sh.rank, relations: sh.matrix.clone(), q: sh.alg.q() }
}

impl DrinfeldPresentation {
    pub fn var_names(&self) -> Vec<String> {
        (1..=self.rank).map(|i| format!("X{i}")).collect()
    }

    /// The coordinate ring as a rewrite system.
    pub fn ring(&self) -> RewriteRing {
        let r = self.rank;
        let alg = &self.alg;
        let rules = (0..r)
            .map(|j| {
                let g = (0..r).fold(Poly::zero(r), |acc, i| acc.add(alg, &Poly::var(alg, i, r).scale(alg, self.relations.get(i, j))));
                (self.q, g)
            })
            .collect();
        RewriteRing::new(alg, self.var_names(), rules).expect("well-formed Drinfeld rules")
    }

    /// f_j = X_j^q − Σ_i t_ij X_i, as unreduced polynomials.
    pub fn relation_polys(&self) -> Vec<Poly> {
        let alg = &self.alg;
        let r = self.rank;
        (0..r)
            .map(|j| {
                let lin = (0..r).fold(Poly::zero(r), |acc, i| acc.add(alg, &Poly::var(alg, i, r).scale(alg, self.relations.get(i, j))));
                Poly::var(alg, j, r).pow(alg, self.q).sub(alg, &lin)
            })
            .collect()
    }

    pub fn order(&self) -> Result<OrderCertificate> {
        let order = (self.q as u128).checked_pow(self.rank as u32).ok_or_else(|| Error::BudgetExceeded("order overflows".into()))?;
        if order > 1 << 20 {
            return Err(Error::BudgetExceeded(format!("{order} monomials")));
        }
        let monomials = self.ring().basis_monomials().len();
        Ok(OrderCertificate { order, monomials })
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.ring().reduce(p)
    }

    /// Images of the generators under Δ: X_i ⊗ 1 + 1 ⊗ X_i.
    pub fn comult_images(&self) -> Vec<Poly> {
        let r = self.rank;
        (0..r).map(|i| Poly::var(&self.alg, i, 2 * r).add(&self.alg, &Poly::var(&self.alg, r + i, 2 * r))).collect()
    }

    /// Δ(x) reduced in the tensor square.
    pub fn comult(&self, x: &Poly) -> Result<Poly> {
        let ring = self.ring();
        if ring.rank() * ring.rank() > TENSOR_SQUARE_BUDGET {
            return Err(Error::BudgetExceeded(format!("{} tensor-square monomials", ring.rank() * ring.rank())));
        }
        let sq = ring.tensor_square()?;
        Ok(ring.map_into(&sq, &self.comult_images(), x, &mut HashMap::new()))
    }

    /// [a](X_i) = a·X_i.
    pub fn action_images(&self, a: Fq) -> Vec<Poly> {
        let c = self.alg.from_fq(a);
        (0..self.rank).map(|i| Poly::var(&self.alg, i, self.rank).scale(&self.alg, &c)).collect()
    }
}

/// An R-algebra T given by its structure map.
#[derive(Clone, Debug)]
pub struct TestAlgebra {
    pub name: String,
    pub carrier: FdAlgebra,
    pub structure: AlgebraHom,
}

impl TestAlgebra {
    pub fn new(name: impl Into<String>, structure: AlgebraHom) -> Self {
        TestAlgebra { name: name.into(), carrier: structure.target.clone(), structure }
    }

    pub fn is_field(&self) -> bool {
        self.carrier.is_field()
    }

    /// F_{q^m}, reached through the residue field of R.
    pub fn field(base: &FdAlgebra, m: usize) -> Result<TestAlgebra> {
        let (res, to_res) = base.residue_field()?;
        let big = FdAlgebra::field_ext(base.field(), m)?;
        let h = to_res.then(&FdAlgebra::embed_field(&res, &big)?)?;
        Ok(TestAlgebra::new(format!("F_{}^{m}", base.q()), h))
    }

    /// F_{q^m}[ε]/(ε^n), reached through the residue field of R.
    pub fn thickened_field(base: &FdAlgebra, m: usize, n: usize) -> Result<TestAlgebra> {
        let field = Self::field(base, m)?;
        let eps = FdAlgebra::truncated(base.field(), n, "eps")?;
        let t = FdAlgebra::tensor(&field.carrier, &eps)?;
        let h = field.structure.then(&FdAlgebra::tensor_left(&field.carrier, &eps, &t)?)?;
        let name = if m == 1 { format!("F_{}[eps]/(eps^{n})", base.q()) } else { format!("F_{}^{m}[eps]/(eps^{n})", base.q()) };
        Ok(TestAlgebra::new(name, h))
    }

    /// R itself.
    pub fn base(base: &FdAlgebra) -> TestAlgebra {
        TestAlgebra::new("R", AlgebraHom::identity(base))
    }
}

/// The fields F_{q^m} for the listed degrees that receive R.
pub fn catalog_fields(base: &FdAlgebra, degrees: &[usize]) -> Result<Vec<TestAlgebra>> {
    let f = base.residue_degree();
    degrees.iter().filter(|&&m| m % f == 0).map(|&m| TestAlgebra::field(base, m)).collect()
}

/// The default catalog: F_{q^m} for m ≤ 6, F_q[ε]/(ε^n) for n ≤ 4 and
/// F_{q^2}[ε]/(ε^2), all through the residue field (degrees adjusted to
/// be multiples of the residue degree).
pub fn default_catalog(base: &FdAlgebra) -> Result<Vec<TestAlgebra>> {
    let f = base.residue_degree();
    let mut out = vec![];
    for m in 1..=6 {
        if m % f == 0 {
            out.push(TestAlgebra::field(base, m)?);
        }
    }
    for n in 2..=4 {
        out.push(TestAlgebra::thickened_field(base, f, n)?);
    }
    out.push(TestAlgebra::thickened_field(base, 2 * f, 2)?);
    Ok(out)
}

/// The T-points of a finite shtuka, an F_q-subspace of T^r.
#[derive(Clone, Debug)]
pub struct PointModule {
    pub test: String,
    pub carrier: FdAlgebra,
    pub rank: usize,
    pub space: Subspace,
    /// Transpose of the z-action when the source is truncated.
    pub z_action: Option<AMatrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointSummary {
    pub test: String,
    pub dim: usize,
    pub count: String,
    pub basis: Vec<Vec<String>>,
}

impl PointModule {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// q^dim, saturating.
    pub fn count(&self) -> u128 {
        (self.carrier.q() as u128).saturating_pow(self.dim() as u32)
    }

    pub fn fq_basis(&self) -> Vec<Vec<AlgElem>> {
        self.space.basis().iter().map(|v| unflat_vec(&self.carrier, v)).collect()
    }

    pub fn contains(&self, h: &[AlgElem]) -> bool {
        self.space.contains(self.carrier.field(), &flat_vec(h))
    }

    /// F_q-matrix of the z-action restricted to the ambient T^r.
    pub fn z_flat(&self) -> Option<Mat> {
        self.z_action.as_ref().map(|z| z.flatten(&self.carrier))
    }

    pub fn summary(&self) -> PointSummary {
        let c = &self.carrier;
        PointSummary {
            test: self.test.clone(),
            dim: self.dim(),
            count: self.count().to_string(),
            basis: self.fq_basis().iter().map(|h| h.iter().map(|x| c.format(x)).collect()).collect(),
        }
    }
}

/// The F_q-linear map Φ(h)_j = h_j^q − Σ_i φ(t_ij)·h_i on T^r, flattened.
fn point_equations(sh: &FiniteShtuka, t: &TestAlgebra) -> Mat {
    let c = &t.carrier;
    let f = c.field();
    let r = sh.rank;
    let k = c.dim();
    let phi = sh.matrix.map(&t.structure);
    let frob = c.frobenius_mat();
    let mut m = Mat::zeros(r * k, r * k);
    // Diagonal blocks: Frobenius of T.
    for j in 0..r {
        for a in 0..k {
            for b in 0..k {
                m.set(j * k + a, j * k + b, frob.get(a, b));
            }
        }
    }
    // Minus φ(t_ij)·h_i.
    for i in 0..r {
        for j in 0..r {
            let mul = c.mul_matrix(phi.get(i, j));
            for a in 0..k {
                for b in 0..k {
                    let v = f.sub(m.get(j * k + a, i * k + b), mul.get(a, b));
                    m.set(j * k + a, i * k + b, v);
                }
            }
        }
    }
    m
}

pub fn points(sh: &FiniteShtuka, t: &TestAlgebra) -> Result<PointModule> {
    if !t.structure.source.same(&sh.alg) {
        return Err(Error::AlgebraMismatch);
    }
    let c = &t.carrier;
    let m = point_equations(sh, t);
    let space = Subspace::from_vectors(c.field(), sh.rank * c.dim(), m.kernel(c.field()));
    Ok(PointModule { test: t.name.clone(), carrier: c.clone(), rank: sh.rank, space, z_action: None })
}

/// Points of a truncation, with z acting by h ↦ Zᵗh.
pub fn truncated_points(tr: &TruncatedShtuka, t: &TestAlgebra) -> Result<PointModule> {
    let mut pm = points(&tr.base, t)?;
    pm.z_action = Some(tr.z_action.map(&t.structure).transpose());
    Ok(pm)
}

/// Whether every listed point satisfies the defining equations and sums of
/// basis points stay in the module.
pub fn verify_points(sh: &FiniteShtuka, t: &TestAlgebra, pm: &PointModule) -> bool {
    let c = &t.carrier;
    let m = point_equations(sh, t);
    let basis = pm.space.basis();
    let ok = basis.iter().all(|v| m.apply(c.field(), v).iter().all(|&x| x == 0));
    let closed = basis.windows(2).all(|w| {
        let s: Vec<Fq> = w[0].iter().zip(&w[1]).map(|(&a, &b)| c.field().add(a, b)).collect();
        m.apply(c.field(), &s).iter().all(|&x| x == 0)
    });
    ok && closed
}

#[derive(Clone, Debug, Serialize)]
pub struct RadicialReport {
    pub radicial: bool,
    /// Point dimensions over the residue field and its quadratic extension.
    pub residue_points: Vec<(String, usize)>,
    pub consistent: bool,
}

/// Radicial iff F is nilpotent, cross-checked on points over two fields.
pub fn radicial_check(sh: &FiniteShtuka) -> Result<RadicialReport> {
    let radicial = nilpotence_checks(sh).is_nilpotent;
    let f = sh.alg.residue_degree();
    let mut residue_points = vec![];
    for m in [f, 2 * f] {
        let t = TestAlgebra::field(&sh.alg, m)?;
        residue_points.push((t.name.clone(), points(sh, &t)?.dim()));
    }
    let trivial = residue_points.iter().all(|(_, d)| *d == 0);
    Ok(RadicialReport { radicial, consistent: !radicial || trivial, residue_points })
}

/// Exponent vectors of the monomial basis, as a certificate.
pub fn monomial_basis(pres: &DrinfeldPresentation) -> Vec<Monomial> {
    pres.ring().basis_monomials()
}
