//! z-divisible local Anderson modules, handled through their effective
//! local shtukas and a finite window of truncations.

use serde::Serialize;

use crate::algebra::{AlgElem, AlgebraHom, FdAlgebra};
use crate::drinfeld::{presentation, truncated_points, DrinfeldPresentation, PointModule, TestAlgebra};
use crate::error::{Error, Result};
use crate::fq::linalg::{Mat, Subspace};
use crate::modules::{flat_vec, minimal_generators};
use crate::shtuka::truncated::omega_dim;
use crate::shtuka::{nilpotence_checks, sequence_check, truncate, verschiebung_local, LocalShtuka, TruncatedShtuka};
use crate::zseries::{
    flatten_series_map, p_power_bound, reduce_mod_z_minus_zeta_pow, solve_series_determined, ZMatrix, ZSeries,
};

/// Default search bound for the nilpotence order d.
pub const DEFAULT_D_MAX: usize = 8;

/// Least d ≤ d_max with (z − ζ)^d killing coker F, found by solving for V.
pub fn nilpotence_order(sh: &LocalShtuka, d_max: usize) -> Result<usize> {
    let mut last = None;
    for d in 0..=d_max {
        match verschiebung_local(sh, d) {
            Ok(_) => return Ok(d),
            Err(e @ Error::NotAnnihilated { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    let witness = match last {
        Some(Error::NotAnnihilated { witness, .. }) => format!("{witness:?}"),
        _ => String::new(),
    };
    Err(Error::NotAndersonDivisible(format!("(z - zeta)^{d_max} does not kill coker F; class {witness}")))
}

#[derive(Clone, Debug)]
pub struct AndersonTower {
    pub source: LocalShtuka,
    pub levels: Vec<TruncatedShtuka>,
    pub presentations: Vec<DrinfeldPresentation>,
    pub height: usize,
    pub d: usize,
    pub orders: Vec<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub height: usize,
    pub d: usize,
    pub orders: Vec<String>,
    pub orders_ok: bool,
    /// (n, m, exact) for all n, m ≥ 1 with n + m ≤ n_max.
    pub sequences: Vec<(usize, usize, bool)>,
    pub sequences_ok: bool,
}

pub fn build_tower(sh: &LocalShtuka, n_max: usize, d_max: usize) -> Result<AndersonTower> {
    let m = sh.effective_matrix()?;
    if sh.rank > 0 && m.precision() < n_max {
        return Err(Error::InsufficientPrecision { needed: n_max, available: m.precision() });
    }
    let d = nilpotence_order(sh, d_max)?;
    let mut levels = vec![];
    let mut presentations = vec![];
    let mut orders = vec![];
    for n in 1..=n_max {
        let t = truncate(sh, n)?;
        let p = presentation(&t.base);
        orders.push(p.order()?.order);
        presentations.push(p);
        levels.push(t);
    }
    Ok(AndersonTower { source: sh.clone(), levels, presentations, height: sh.rank, d, orders })
}

impl AndersonTower {
    pub fn n_max(&self) -> usize {
        self.levels.len()
    }

    pub fn q(&self) -> u128 {
        self.source.alg.q() as u128
    }

    pub fn report(&self) -> Result<TowerReport> {
        let q = self.q();
        let orders_ok = self.orders.iter().enumerate().all(|(i, &o)| Some(o) == q.checked_pow(((i + 1) * self.height) as u32));
        let n_max = self.n_max();
        let mut sequences = vec![];
        for n in 1..n_max {
            for m in 1..=n_max - n {
                sequences.push((n, m, sequence_check(&self.source, n, m)?.exact));
            }
        }
        let sequences_ok = sequences.iter().all(|s| s.2);
        Ok(TowerReport {
            height: self.height,
            d: self.d,
            orders: self.orders.iter().map(u128::to_string).collect(),
            orders_ok,
            sequences,
            sequences_ok,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaReport {
    /// dim_{F_q} ω at levels 1..n_max.
    pub dims: Vec<usize>,
    pub n_stab: usize,
    pub bound: usize,
    pub within_bound: bool,
}

/// The transition maps ω_{n+1} → ω_n are surjective, so they are bijective
/// exactly when the dimensions agree.
pub fn omega_stabilization(tower: &AndersonTower) -> Result<OmegaReport> {
    let dims: Vec<usize> = (1..=tower.n_max()).map(|n| omega_dim(&tower.source, n)).collect::<Result<_>>()?;
    let last = dims.last().copied().unwrap_or(0);
    let n_stab = dims.iter().rposition(|&x| x != last).map_or(1, |i| i + 2);
    let bound = p_power_bound(&tower.source.alg, tower.d);
    Ok(OmegaReport { dims, n_stab, bound, within_bound: n_stab <= bound })
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatnessReport {
    pub level: usize,
    pub test: String,
    /// (i, dim ker z^{n−i}, dim im z^i, equal)
    pub checks: Vec<(usize, usize, usize, bool)>,
    pub holds: bool,
}

/// ker(z^{n−i}) = im(z^i) on the T-points of level n.
pub fn point_flatness(tower: &AndersonTower, n: usize, t: &TestAlgebra) -> Result<FlatnessReport> {
    let pm = truncated_points(&tower.levels[n - 1], t)?;
    let f = pm.carrier.field();
    let z = pm.z_flat().expect("truncated points carry z");
    let pow = |e: usize| {
        let mut m = Mat::identity(z.rows);
        for _ in 0..e {
            m = z.mul(f, &m);
        }
        m
    };
    let basis = pm.space.basis().to_vec();
    let mut checks = vec![];
    for i in 0..=n {
        let a = pow(n - i);
        let b = pow(i);
        // Kernel of z^{n−i} restricted to the point module.
        let images: Vec<Vec<_>> = basis.iter().map(|v| a.apply(f, v)).collect();
        let coeffs = Mat::from_cols(z.rows, &images).kernel(f);
        let ker = Subspace::from_vectors(
            f,
            z.rows,
            coeffs.iter().map(|c| {
                let mut v = vec![0; z.rows];
                for (coef, bv) in c.iter().zip(&basis) {
                    for (x, y) in v.iter_mut().zip(bv) {
                        *x = f.add(*x, f.mul(*coef, *y));
                    }
                }
                v
            }),
        );
        let im = Subspace::from_vectors(f, z.rows, basis.iter().map(|v| b.apply(f, v)));
        checks.push((i, ker.dim(), im.dim(), ker.equals(f, &im)));
    }
    Ok(FlatnessReport { level: n, test: t.name.clone(), holds: checks.iter().all(|c| c.3), checks })
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusKernelReport {
    pub i: usize,
    pub d: usize,
    pub level: usize,
    pub test: String,
    pub frobenius_kernel_dim: usize,
    pub target_dim: usize,
    pub contained: bool,
}

/// G[F^i](T) ⊆ G[z^{i·d}](T), computed inside the level max(n_max, i·d + 1).
pub fn frobenius_kernel_check(sh: &LocalShtuka, d: usize, i: usize, t: &TestAlgebra, n_max: usize) -> Result<FrobeniusKernelReport> {
    if !sh.alg.zeta_is_zero() {
        return Err(Error::ZetaNotZero);
    }
    let level = n_max.max(i * d + 1);
    let tr = truncate(sh, level)?;
    let pm: PointModule = truncated_points(&tr, t)?;
    let c = &pm.carrier;
    let f = c.field();
    let k = c.dim();
    let size = pm.rank * k;
    // Points whose coordinates all satisfy h^{q^i} = 0.
    let mut frob = Mat::identity(k);
    for _ in 0..i {
        frob = c.frobenius_mat().mul(f, &frob);
    }
    let basis = pm.space.basis().to_vec();
    let images: Vec<Vec<_>> = basis
        .iter()
        .map(|v| v.chunks(k).flat_map(|h| frob.apply(f, h)).collect())
        .collect();
    let coeffs = Mat::from_cols(size, &images).kernel(f);
    let combine = |c: &Vec<u32>| {
        let mut v = vec![0; size];
        for (coef, bv) in c.iter().zip(&basis) {
            for (x, y) in v.iter_mut().zip(bv) {
                *x = f.add(*x, f.mul(*coef, *y));
            }
        }
        v
    };
    let fk: Vec<Vec<u32>> = coeffs.iter().map(combine).collect();
    let r = sh.rank;
    let cut = i * d;
    let high = |v: &Vec<u32>| v[cut * r * k..].iter().all(|&x| x == 0);
    let contained = fk.iter().all(high);
    // G[z^{id}](T): points with the coordinates of degree ≥ id vanishing.
    let mut rows = vec![];
    for idx in cut * r * k..size {
        let mut e = vec![0; size];
        e[idx] = 1;
        rows.push(e);
    }
    let coord = Mat::from_rows(size, &rows);
    let target = Mat::from_cols(rows.len(), &basis.iter().map(|v| coord.apply(f, v)).collect::<Vec<_>>()).kernel(f).len();
    Ok(FrobeniusKernelReport { i, d, level, test: t.name.clone(), frobenius_kernel_dim: fk.len(), target_dim: target, contained })
}

#[derive(Clone, Debug, Serialize)]
pub struct ZdVerschiebungReport {
    pub d: usize,
    pub precision: usize,
    pub v: Vec<Vec<String>>,
    pub fv: bool,
    pub vf: bool,
    pub twisted: bool,
}

/// With ζ = 0: T·S = S·T = z^d and T^{(q)}·S^{(q)} = z^d.
pub fn zd_verschiebung_check(sh: &LocalShtuka, d: usize) -> Result<ZdVerschiebungReport> {
    let alg = &sh.alg;
    if !alg.zeta_is_zero() {
        return Err(Error::ZetaNotZero);
    }
    let s = verschiebung_local(sh, d)?;
    let n = s.precision().min(if sh.rank == 0 { usize::MAX } else { sh.precision });
    let t = sh.effective_matrix()?.truncate(n);
    let zd = ZMatrix::scalar(alg, sh.rank, &ZSeries::monomial(alg, &alg.one(), d, n));
    let fv = t.mul(alg, &s).eq_at(&zd, n);
    let vf = s.mul(alg, &t).eq_at(&zd, n);
    let twisted = t.frob(alg).mul(alg, &s.frob(alg)).eq_at(&zd, n);
    Ok(ZdVerschiebungReport { d, precision: n, v: s.format(alg), fv, vf, twisted })
}

/// Reduces a series modulo (z − ζ)^d, which needs precision ≥ p_power_bound(d).
pub fn series_mod(alg: &FdAlgebra, s: &ZSeries, d: usize) -> Result<Vec<AlgElem>> {
    if d == 0 {
        return Ok(vec![]);
    }
    let need = p_power_bound(alg, d);
    if s.precision() < need {
        return Err(Error::InsufficientPrecision { needed: need, available: s.precision() });
    }
    Ok(reduce_mod_z_minus_zeta_pow(alg, &s.coeffs, d))
}

/// F_q-subspace of H = (R[z]/(z − ζ)^d)^r spanned over R[z] by `gens`, each
/// a vector of r residues (coefficient lists of length d).
/// Coordinates: (i·d + t)·k + l.
pub fn h_span(alg: &FdAlgebra, r: usize, d: usize, gens: &[Vec<Vec<AlgElem>>]) -> Subspace {
    let f = alg.field();
    let k = alg.dim();
    let mut s = Subspace::new(r * d * k);
    for g in gens {
        for t in 0..d {
            for l in 0..k {
                let v: Vec<u32> = g
                    .iter()
                    .flat_map(|res| {
                        let mut shifted = vec![alg.zero(); t];
                        shifted.extend(res.iter().map(|c| alg.mul(&alg.basis(l), c)));
                        flat_vec(&reduce_mod_z_minus_zeta_pow(alg, &shifted, d))
                    })
                    .collect();
                s.insert(f, v);
            }
        }
    }
    s
}

/// Columns of a series matrix reduced modulo (z − ζ)^d.
pub fn columns_mod(alg: &FdAlgebra, m: &ZMatrix, d: usize) -> Result<Vec<Vec<Vec<AlgElem>>>> {
    (0..m.cols).map(|j| m.col(j).iter().map(|s| series_mod(alg, s, d)).collect()).collect()
}

#[derive(Clone, Debug)]
pub struct HodgeData {
    pub d: usize,
    pub rank: usize,
    pub alg: FdAlgebra,
    /// Generators of Fil: columns of V reduced modulo (z − ζ)^d.
    pub fil_gens: Vec<Vec<Vec<AlgElem>>>,
    pub fil: Subspace,
    pub h_dim: usize,
    pub coker_f_dim: usize,
    pub coker_v_dim: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HodgeSummary {
    pub d: usize,
    pub h_dim: usize,
    pub fil_dim: usize,
    pub coker_f_dim: usize,
    pub coker_v_dim: usize,
    pub exact: bool,
    pub fil_gens: Vec<Vec<String>>,
}

impl HodgeData {
    pub fn summary(&self) -> HodgeSummary {
        let alg = &self.alg;
        HodgeSummary {
            d: self.d,
            h_dim: self.h_dim,
            fil_dim: self.fil.dim(),
            coker_f_dim: self.coker_f_dim,
            coker_v_dim: self.coker_v_dim,
            exact: self.exact,
            fil_gens: self
                .fil_gens
                .iter()
                .map(|g| g.iter().map(|res| ZSeries::from_coeffs(alg, res.clone(), res.len().max(1)).format(alg)).collect())
                .collect(),
        }
    }
}

/// Fil = V(M) mod (z − ζ)^d inside H = σ*M/(z − ζ)^d σ*M, with the check
/// 0 → coker F → H → coker V → 0.
pub fn hodge_filtration(sh: &LocalShtuka, d: usize) -> Result<HodgeData> {
    let alg = &sh.alg;
    let r = sh.rank;
    let k = alg.dim();
    let v = verschiebung_local(sh, d)?;
    let fil_gens = columns_mod(alg, &v, d)?;
    let fil = h_span(alg, r, d, &fil_gens);
    let level = p_power_bound(alg, d);
    let coker_f_dim = if d == 0 { 0 } else { omega_dim(sh, level)? };
    let coker_v_dim = if d == 0 || r == 0 {
        0
    } else {
        let flat = flatten_series_map(alg, &v, level);
        r * level * k - flat.rank(alg.field())
    };
    let h_dim = r * d * k;
    let exact = fil.dim() == coker_f_dim && coker_f_dim + coker_v_dim == h_dim;
    Ok(HodgeData { d, rank: r, alg: alg.clone(), fil_gens, fil, h_dim, coker_f_dim, coker_v_dim, exact })
}

/// Lifting data over R for a shtuka over R/I with I^q = 0.
#[derive(Clone, Debug)]
pub struct DeformationProblem {
    pub big: FdAlgebra,
    pub ideal: Vec<AlgElem>,
    pub quotient: AlgebraHom,
    pub small: LocalShtuka,
    pub d: usize,
    /// Generators over R of the candidate filtration in H_R.
    pub fil_big: Vec<Vec<Vec<AlgElem>>>,
}

impl DeformationProblem {
    pub fn new(big: &FdAlgebra, ideal: Vec<AlgElem>, small: LocalShtuka, d: usize, fil_big: Vec<Vec<Vec<AlgElem>>>) -> Result<Self> {
        let (_, quotient) = big.quotient(&ideal)?;
        // The given small shtuka lives over its own copy of R/I; match by data.
        let small = if small.alg.same(&quotient.target) {
            small
        } else {
            let iso = AlgebraHom::new(small.alg.clone(), quotient.target.clone(), Mat::identity(small.alg.dim()), true)
                .map_err(|_| Error::NotAFiltration("the small shtuka does not live over R/I".into()))?;
            small.restrict(&iso)?
        };
        let p = DeformationProblem { big: big.clone(), ideal, quotient, small, d, fil_big };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let big = &self.big;
        let q = big.q() as usize;
        if !big.ideal_power(&self.ideal, q).iter().all(AlgElem::is_zero) {
            return Err(Error::NotAFiltration("I^q is not zero".into()));
        }
        if !self.quotient.structure {
            return Err(Error::NotAFiltration("R → R/I must respect ζ".into()));
        }
        let r = self.small.rank;
        let d = self.d;
        if self.fil_big.iter().any(|g| g.len() != r || g.iter().any(|res| res.len() != d)) {
            return Err(Error::NotAFiltration("filtration generators have the wrong shape".into()));
        }
        // Reduction modulo I is the Hodge filtration of the small shtuka.
        let small_alg = &self.quotient.target;
        let hodge = hodge_filtration(&self.small, d)?;
        let reduced: Vec<Vec<Vec<AlgElem>>> =
            self.fil_big.iter().map(|g| g.iter().map(|res| res.iter().map(|c| self.quotient.apply(c)).collect()).collect()).collect();
        let red_span = h_span(small_alg, r, d, &reduced);
        if !red_span.equals(small_alg.field(), &hodge.fil) {
            return Err(Error::NotAFiltration("does not reduce to the Hodge filtration".into()));
        }
        // H/Fil free: dim(H/Fil) = k·dim(H/(Fil + mH)).
        let k = big.dim();
        let fil = h_span(big, r, d, &self.fil_big);
        let mut with_m = fil.clone();
        for i in 0..r {
            for t in 0..d {
                for m in big.nilradical() {
                    let mut v = vec![0; r * d * k];
                    v[(i * d + t) * k..(i * d + t + 1) * k].copy_from_slice(&m.0);
                    with_m.insert(big.field(), v);
                }
            }
        }
        let quot = r * d * k - fil.dim();
        let gens = r * d * k - with_m.dim();
        if quot != gens * k {
            return Err(Error::NotAFiltration(format!("H/Fil has dimension {quot} but {gens} generators")));
        }
        Ok(())
    }

    /// An F_q-linear section of R → R/I.
    fn section(&self) -> Result<Mat> {
        let f = self.big.field();
        let m = &self.quotient.matrix;
        let small_k = m.rows;
        let cols: Vec<Vec<u32>> = (0..small_k)
            .map(|i| {
                let mut e = vec![0; small_k];
                e[i] = 1;
                m.solve(f, &e).map(|(x, _)| x).ok_or(Error::NoLift("R → R/I is not surjective".into()))
            })
            .collect::<Result<_>>()?;
        Ok(Mat::from_cols(self.big.dim(), &cols))
    }
}

#[derive(Clone, Debug)]
pub struct Lift {
    pub shtuka: LocalShtuka,
    /// Basis of M inside σ*M = j*M'.
    pub basis: ZMatrix,
    /// B mod I = V'·C.
    pub c: ZMatrix,
    /// Coordinates of σ*b in j*M': the coefficientwise j*(C).
    pub j: ZMatrix,
    pub precision: usize,
    pub reduction_ok: bool,
    pub hodge_ok: bool,
}

/// M = {v ∈ j*M' : v mod (z − ζ)^d ∈ Fil}, V = inclusion, F = (z − ζ)^d·V^{-1}.
pub fn deform_lift(prob: &DeformationProblem) -> Result<Lift> {
    let big = &prob.big;
    let small = &prob.small;
    let small_alg = &prob.quotient.target;
    let r = small.rank;
    let d = prob.d;
    let k = big.dim();
    let f = big.field();
    let n = small.precision;
    let n0 = p_power_bound(big, d).max(p_power_bound(small_alg, d));

    // Generators of M as polynomials: Fil lifts and (z − ζ)^d·e_i.
    let zd = ZSeries::z_minus_zeta_pow(big, d, n);
    let mut gens: Vec<Vec<ZSeries>> =
        prob.fil_big.iter().map(|g| g.iter().map(|res| ZSeries::from_coeffs(big, res.clone(), n)).collect()).collect();
    for i in 0..r {
        let mut v = vec![ZSeries::zero(big, n); r];
        v[i] = zd.clone();
        gens.push(v);
    }
    // Nakayama over R[[z]]: M/(m, z)M, read off modulo z^{N0+1} ⊂ zM.
    let level = n0 + 1;
    if n < level + n0 {
        return Err(Error::InsufficientPrecision { needed: level + n0, available: n });
    }
    let trunc = |v: &Vec<ZSeries>| -> Vec<AlgElem> {
        v.iter().flat_map(|s| (0..level).map(|t| s.coeffs.get(t).cloned().unwrap_or_else(|| big.zero()))).collect()
    };
    let mut maximal = Subspace::new(r * level * k);
    for g in &gens {
        for t in 0..level {
            let shifted: Vec<ZSeries> = g.iter().map(|s| s.shift(big, t)).collect();
            for l in 0..k {
                let b = big.basis(l);
                if t == 0 && !big.nilradical().contains(&b) && !big.nilradical().is_empty() {
                    // Multiples by m_R are added below.
                }
                let scaled: Vec<ZSeries> = shifted.iter().map(|s| s.scale(big, &b)).collect();
                if t > 0 {
                    maximal.insert(f, flat_vec(&trunc(&scaled)));
                }
            }
            if t == 0 {
                for m in big.nilradical() {
                    let scaled: Vec<ZSeries> = g.iter().map(|s| s.scale(big, m)).collect();
                    maximal.insert(f, flat_vec(&trunc(&scaled)));
                }
            }
        }
    }
    let mut chosen = vec![];
    for g in &gens {
        let v = flat_vec(&trunc(g));
        if maximal.contains(f, &v) {
            continue;
        }
        // Add the R[[z]]-multiples of g to the running span (mod z^level).
        for t in 0..level {
            for l in 0..k {
                let scaled: Vec<ZSeries> = g.iter().map(|s| s.shift(big, t).scale(big, &big.basis(l))).collect();
                maximal.insert(f, flat_vec(&trunc(&scaled)));
            }
        }
        chosen.push(g.clone());
    }
    if chosen.len() != r {
        return Err(Error::NotAFiltration(format!("the lattice needs {} generators, expected {r}", chosen.len())));
    }
    let b = ZMatrix::from_cols(big, r, &chosen, n);

    // C = V'^{-1}·(B mod I).
    let v_small = verschiebung_local(small, d)?;
    let b_bar = b.map(&prob.quotient).truncate(v_small.precision());
    let (c, cprec) = solve_series_determined(small_alg, &v_small, &b_bar, v_small.precision())
        .map_err(|_| Error::NoLift("B mod I is not in the image of V'".into()))?;
    // J = j*(C): lift coefficients along a section, then raise to the q-th power.
    let sec = prob.section()?;
    let lift_elem = |x: &AlgElem| big.frobenius_q(&AlgElem(sec.apply(f, &x.0)));
    let j = ZMatrix {
        rows: c.rows,
        cols: c.cols,
        entries: c.entries.iter().map(|s| ZSeries { coeffs: s.coeffs.iter().map(lift_elem).collect() }).collect(),
    };
    // B·F = (z − ζ)^d·J.
    let np = cprec.min(n);
    let rhs = j.truncate(np).scale(big, &ZSeries::z_minus_zeta_pow(big, d, np));
    let (fm, fprec) = solve_series_determined(big, &b.truncate(np), &rhs, np).map_err(|_| Error::NoLift("no F with B·F = (z - zeta)^d·J".into()))?;
    if fprec == 0 {
        return Err(Error::PrecisionExhausted);
    }
    let shtuka = LocalShtuka::effective(big, fm.clone())?;

    // F mod I = C^{-1}·T'·C^{(q)}, i.e. C·(F mod I) = T'·C^{(q)}.
    let p = fprec.min(cprec);
    let t_small = small.effective_matrix()?.truncate(p);
    let c_p = c.truncate(p);
    let lhs = c_p.mul(small_alg, &fm.map(&prob.quotient).truncate(p));
    let rhs = t_small.mul(small_alg, &c_p.frob(small_alg));
    let reduction_ok = lhs.eq_at(&rhs, p);

    // Hodge filtration of the lift, moved into j*M' coordinates by J.
    let hodge_ok = match verschiebung_local(&shtuka, d) {
        Ok(v) => {
            let jv = j.truncate(v.precision()).mul(big, &v);
            match columns_mod(big, &jv, d) {
                Ok(cols) => h_span(big, r, d, &cols).equals(f, &h_span(big, r, d, &prob.fil_big)),
                Err(_) => false,
            }
        }
        Err(_) => false,
    };
    Ok(Lift { shtuka, basis: b, c, j, precision: p, reduction_ok, hodge_ok })
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTripReport {
    pub precision: usize,
    pub isomorphic: bool,
}

/// Starting from M over R: lifts (M mod I, Fil(M)) and compares with M via
/// X = V_M^{-1}·B, which must be invertible with T·X^{(q)} = X·F.
pub fn deformation_roundtrip(sh: &LocalShtuka, ideal: Vec<AlgElem>, d: usize) -> Result<(Lift, RoundTripReport)> {
    let big = &sh.alg;
    let (_, quot) = big.quotient(&ideal)?;
    let small = sh.restrict(&quot)?;
    let hodge = hodge_filtration(sh, d)?;
    let prob = DeformationProblem::new(big, ideal, small, d, hodge.fil_gens.clone())?;
    let lift = deform_lift(&prob)?;
    let v = verschiebung_local(sh, d)?;
    let n = v.precision().min(lift.precision);
    let (x, xprec) = solve_series_determined(big, &v.truncate(n), &lift.basis.truncate(n), n).map_err(|_| Error::NoLift("lattices differ".into()))?;
    let p = xprec.min(lift.shtuka.precision);
    let x = x.truncate(p);
    let invertible = x.det(big).map(|det| det.is_unit_series(big)).unwrap_or(false);
    let t = sh.effective_matrix()?.truncate(p);
    let lhs = t.mul(big, &x.frob(big));
    let rhs = x.mul(big, &lift.shtuka.matrix.truncate(p));
    let isomorphic = invertible && lhs.eq_at(&rhs, p);
    Ok((lift, RoundTripReport { precision: p, isomorphic }))
}

#[derive(Clone, Debug, Serialize)]
pub struct FormalReport {
    /// Some iterate of F lands in zM (series computation).
    pub topologically_nilpotent: bool,
    /// F mod z is nilpotent (finite shtuka at level 1).
    pub level1_nilpotent: bool,
    /// G[z](T) = 0 for every listed field T.
    pub level1_points_trivial: bool,
    pub fields: Vec<(String, usize)>,
    pub agree: bool,
}

/// Field degrees that detect a nonzero étale part of rank ≤ r: a Frobenius
/// element of GL_s(F_q) fixes a nonzero vector over a degree q^j − 1
/// extension for some j ≤ s.
pub fn detecting_degrees(alg: &FdAlgebra, r: usize) -> Vec<usize> {
    let q = alg.q() as usize;
    let f = alg.residue_degree();
    let mut out: Vec<usize> = (1..=r.max(1)).map(|j| f * (q.pow(j as u32) - 1)).collect();
    out.push(f);
    out.sort();
    out.dedup();
    out
}

pub fn formal_checks(sh: &LocalShtuka, fields: &[TestAlgebra]) -> Result<FormalReport> {
    let alg = &sh.alg;
    let m = sh.effective_matrix()?;
    let r = sh.rank;
    let bound = r * (alg.nil_frobenius_exponent() + 1);
    let mut it = ZMatrix::identity(alg, r, m.precision().min(2));
    let mut tw = m.truncate(m.precision().min(2));
    for _ in 0..bound {
        it = it.mul(alg, &tw);
        tw = tw.frob(alg);
    }
    let topologically_nilpotent = r == 0 || it.coeff(alg, 0).is_zero();
    let level1 = truncate(sh, 1)?;
    let level1_nilpotent = nilpotence_checks(&level1.base).is_nilpotent;
    let mut dims = vec![];
    for t in fields {
        dims.push((t.name.clone(), truncated_points(&level1, t)?.dim()));
    }
    let level1_points_trivial = dims.iter().all(|x| x.1 == 0);
    Ok(FormalReport {
        agree: topologically_nilpotent == level1_nilpotent && level1_nilpotent == level1_points_trivial,
        topologically_nilpotent,
        level1_nilpotent,
        level1_points_trivial,
        fields: dims,
    })
}

/// Minimal number of R-generators of the module spanned by vectors in R^n.
pub fn generator_count(alg: &FdAlgebra, n: usize, vecs: &[Vec<AlgElem>]) -> usize {
    minimal_generators(alg, n, vecs).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqField;

    fn f2() -> FdAlgebra {
        FdAlgebra::base_field(&FqField::new(2).unwrap()).unwrap()
    }

    fn dual() -> FdAlgebra {
        FdAlgebra::truncated(&FqField::new(2).unwrap(), 2, "e").unwrap()
    }

    fn scalar(alg: &FdAlgebra, s: ZSeries) -> LocalShtuka {
        LocalShtuka::effective(alg, ZMatrix::scalar(alg, 1, &s)).unwrap()
    }

    fn swap(alg: &FdAlgebra, n: usize) -> LocalShtuka {
        let zero = ZSeries::zero(alg, n);
        LocalShtuka::effective(alg, ZMatrix::from_rows(vec![vec![zero.clone(), ZSeries::z(alg, n)], vec![ZSeries::one(alg, n), zero]])).unwrap()
    }

    #[test]
    fn tower_examples() {
        let r = f2();
        let t = build_tower(&scalar(&r, ZSeries::z(&r, 8)), 3, 8).unwrap();
        assert_eq!(t.orders, vec![2, 4, 8]);
        assert_eq!(t.d, 1);
        assert!(t.report().unwrap().sequences_ok);
        let t = build_tower(&scalar(&r, ZSeries::one(&r, 8)), 2, 8).unwrap();
        assert_eq!((t.orders.clone(), t.d), (vec![2, 4], 0));
        let e = dual();
        let eps = ZSeries::constant(&e, &e.basis(1), 10);
        let m = ZMatrix::from_rows(vec![
            vec![ZSeries::z(&e, 10), ZSeries::zero(&e, 10)],
            vec![ZSeries::zero(&e, 10), ZSeries::z(&e, 10).sub(&e, &eps)],
        ]);
        let t = build_tower(&LocalShtuka::effective(&e, m).unwrap(), 2, 8).unwrap();
        assert_eq!((t.height, t.d), (2, 2));
    }

    #[test]
    fn omega_examples() {
        let r = f2();
        let t = build_tower(&scalar(&r, ZSeries::z(&r, 8)), 4, 8).unwrap();
        let o = omega_stabilization(&t).unwrap();
        assert_eq!((o.n_stab, o.dims.clone()), (1, vec![1, 1, 1, 1]));
        let t = build_tower(&scalar(&r, ZSeries::one(&r, 8)), 3, 8).unwrap();
        assert_eq!(omega_stabilization(&t).unwrap().dims, vec![0, 0, 0]);
        let t = build_tower(&LocalShtuka::tate(&r, 2, 8).unwrap(), 4, 8).unwrap();
        let o = omega_stabilization(&t).unwrap();
        assert_eq!((o.n_stab, o.within_bound), (2, true));
    }

    #[test]
    fn frobenius_kernel_examples() {
        let r = f2();
        let t = TestAlgebra::thickened_field(&r, 1, 2).unwrap();
        let rep = frobenius_kernel_check(&scalar(&r, ZSeries::z(&r, 8)), 1, 1, &t, 2).unwrap();
        assert!(rep.contained);
        assert_eq!((rep.frobenius_kernel_dim, rep.target_dim), (1, 1));
        let et = frobenius_kernel_check(&scalar(&r, ZSeries::one(&r, 8)), 0, 1, &TestAlgebra::field(&r, 2).unwrap(), 2).unwrap();
        assert_eq!(et.frobenius_kernel_dim, 0);
    }

    #[test]
    fn zd_verschiebung_examples() {
        let r = f2();
        let rep = zd_verschiebung_check(&LocalShtuka::tate(&r, 2, 8).unwrap(), 2).unwrap();
        assert!(rep.fv && rep.vf && rep.twisted);
        assert_eq!(rep.v, vec![vec!["1 + O(z^6)".to_string()]]);
        let sw = swap(&r, 8);
        let rep = zd_verschiebung_check(&sw, 1).unwrap();
        assert!(rep.fv && rep.vf && rep.twisted);
        let z2 = scalar(&r, ZSeries::monomial(&r, &r.one(), 2, 8));
        assert!(matches!(zd_verschiebung_check(&z2, 1), Err(Error::NotAnnihilated { .. })));
    }

    #[test]
    fn hodge_examples() {
        let r = f2();
        let h = hodge_filtration(&scalar(&r, ZSeries::z(&r, 8)), 1).unwrap();
        assert_eq!((h.h_dim, h.fil.dim()), (1, 1));
        assert!(h.exact);
        let h = hodge_filtration(&swap(&r, 8), 1).unwrap();
        assert!(h.exact);
        assert_eq!(h.fil.dim(), 1);
        assert!(h.fil.contains(r.field(), &[0, 1]));
        let h = hodge_filtration(&scalar(&r, ZSeries::one(&r, 8)), 0).unwrap();
        assert_eq!((h.h_dim, h.fil.dim()), (0, 0));
    }

    #[test]
    fn deformation_examples() {
        let big = dual();
        let small_alg = f2();
        let small = swap(&small_alg, 12);
        let eps = big.basis(1);
        let constant = vec![vec![vec![big.zero()], vec![big.one()]]];
        let prob = DeformationProblem::new(&big, vec![eps.clone()], small.clone(), 1, constant).unwrap();
        let lift = deform_lift(&prob).unwrap();
        assert!(lift.reduction_ok && lift.hodge_ok);
        assert!(lift.shtuka.matrix.eq_at(&swap(&big, 12).matrix, lift.precision));

        let bent = vec![vec![vec![eps.clone()], vec![big.one()]]];
        let prob = DeformationProblem::new(&big, vec![eps.clone()], small, 1, bent).unwrap();
        let lift = deform_lift(&prob).unwrap();
        assert!(lift.reduction_ok && lift.hodge_ok);
        assert!(!lift.shtuka.matrix.eq_at(&swap(&big, 12).matrix, lift.precision));

        let (_, rt) = deformation_roundtrip(&swap(&big, 12), vec![eps], 1).unwrap();
        assert!(rt.isomorphic);
        let (_, rt) = deformation_roundtrip(&swap(&small_alg, 12), vec![], 1).unwrap();
        assert!(rt.isomorphic);
    }

    #[test]
    fn formal_examples() {
        let r = f2();
        let fields = crate::drinfeld::catalog_fields(&r, &detecting_degrees(&r, 2)).unwrap();
        let rep = formal_checks(&swap(&r, 6), &fields).unwrap();
        assert!(rep.agree && rep.topologically_nilpotent);
        let rep = formal_checks(&scalar(&r, ZSeries::one(&r, 6)), &fields).unwrap();
        assert!(rep.agree && !rep.level1_points_trivial);
        let rep = formal_checks(&scalar(&r, ZSeries::z(&r, 6)), &fields).unwrap();
        assert!(rep.agree && rep.topologically_nilpotent);
    }
}
