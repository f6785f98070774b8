//! The theorem battery: thirteen executable criteria over seeded random
//! families and fixed examples.

use std::collections::HashMap;

use rand::{Rng, RngExt};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElem, FdAlgebra};
use crate::amatrix::AMatrix;
use crate::anderson::{
    build_tower, deform_lift, deformation_roundtrip, detecting_degrees, formal_checks, frobenius_kernel_check, hodge_filtration,
    nilpotence_order, omega_stabilization, point_flatness, zd_verschiebung_check, DeformationProblem,
};
use crate::drinfeld::{catalog_fields, default_catalog, monomial_basis, points, presentation, verify_points, TestAlgebra};
use crate::rewrite::Poly;
use crate::error::{Error, Result};
use crate::fq::FqField;
use crate::hopf::{balanced_check, mq_roundtrip, mu_p_obstruction, strictness_check, UnivariatePresentation};
use crate::random;
use crate::shtuka::{boundedness_check, decompose_etale_nilpotent, nilpotence_checks, truncate, verschiebung_local, BoundCertificate, FiniteShtuka, LocalShtuka};
use crate::zseries::{divide_by_z_minus_zeta, ZMatrix, ZSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Floor for the precision of random local shtukas; a case with
    /// exponent d over an algebra with nu gets at least 4·(d + nu).
    pub precision: usize,
    pub d_max: usize,
    pub e_max: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: random::DEFAULT_SEED, precision: 12, d_max: crate::anderson::DEFAULT_D_MAX, e_max: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub pass: bool,
    pub cases: usize,
    pub failed: usize,
    /// Aggregate facts worth printing.
    pub notes: Vec<String>,
    /// The first few failing cases.
    pub failures: Vec<String>,
}

const MAX_FAILURES: usize = 5;

struct Tally {
    cases: usize,
    failed: usize,
    notes: Vec<String>,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failed: 0, notes: vec![], failures: vec![] }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn error(&mut self, what: String, e: &Error) {
        self.check(false, || format!("{what}: {e}"));
    }

    fn finish(self, id: u8, title: &str) -> CriterionResult {
        CriterionResult {
            id,
            title: title.into(),
            pass: self.failed == 0 && self.cases > 0,
            cases: self.cases,
            failed: self.failed,
            notes: self.notes,
            failures: self.failures,
        }
    }
}

pub const TITLES: [&str; 13] = [
    "order law",
    "etale point saturation",
    "round trip through primitives",
    "etale/nilpotent decomposition",
    "Verschiebung identities",
    "annihilated but not bounded",
    "tower laws",
    "strictness examples",
    "balanced criterion",
    "radicial/formal equivalence",
    "Frobenius-kernel bound",
    "deformation equivalence",
    "division law",
];

pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> Result<CriterionResult> {
    let title = TITLES.get(id.wrapping_sub(1) as usize).ok_or_else(|| Error::Invalid(format!("no criterion {id}")))?;
    let mut rng = random::case_rng(cfg.seed, id as u64);
    let mut t = Tally::new();
    match id {
        1 => order_law(&mut rng, &mut t)?,
        2 => etale_saturation(&mut rng, &mut t)?,
        3 => roundtrip(&mut rng, &mut t)?,
        4 => decomposition(&mut rng, &mut t)?,
        5 => verschiebung_identities(&mut rng, cfg, &mut t)?,
        6 => epsilon_counterexample(&mut t)?,
        7 => tower_laws(&mut rng, cfg, &mut t)?,
        8 => strictness_examples(&mut t)?,
        9 => balanced(&mut t)?,
        10 => formal_equivalence(&mut rng, cfg, &mut t)?,
        11 => frobenius_kernels(&mut rng, cfg, &mut t)?,
        12 => deformations(&mut rng, cfg, &mut t)?,
        13 => division_law(&mut rng, &mut t)?,
        _ => unreachable!(),
    }
    Ok(t.finish(id, title))
}

pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<CriterionResult>> {
    (1..=13).map(|id| run_criterion(id, cfg)).collect()
}

fn field(q: u32) -> Result<FqField> {
    FqField::new(q)
}

fn pick<R: Rng, T: Copy>(rng: &mut R, xs: &[T]) -> T {
    xs[rng.random_range(0..xs.len())]
}

fn order_law<R: Rng>(rng: &mut R, t: &mut Tally) -> Result<()> {
    for case in 0..50 {
        let q = pick(rng, &[2, 3]);
        let r = rng.random_range(1..=3);
        let alg = random::algebra(rng, &field(q)?, 4, true)?;
        let sh = random::finite_shtuka(rng, &alg, r)?;
        let pres = presentation(&sh);
        let cert = pres.order()?;
        // Oracle: the exponent vectors in [0, q)^r.
        let mut want: Vec<Vec<u32>> = vec![vec![]];
        for _ in 0..r {
            want = want.into_iter().flat_map(|m| (0..q).map(move |e| [m.clone(), vec![e]].concat())).collect();
        }
        let mut got = monomial_basis(&pres);
        got.sort();
        want.sort();
        // The relations vanish and normal forms multiply associatively.
        let ring = pres.ring();
        let rels_vanish = pres.relation_polys().iter().all(|f| ring.reduce(f).is_zero());
        let mut assoc = true;
        for _ in 0..4 {
            let [a, b, c] = [0; 3].map(|_| {
                let m: Vec<u32> = (0..r).map(|_| rng.random_range(0..q)).collect();
                Poly::term(&alg, m, random::element(rng, &alg))
            });
            assoc &= ring.mul(&ring.mul(&a, &b), &c) == ring.mul(&a, &ring.mul(&b, &c));
        }
        let expect = (q as u128).pow(r as u32);
        t.check(cert.order == expect && cert.monomials as u128 == expect && got == want && rels_vanish && assoc, || {
            format!("case {case}: q={q} r={r} dim R={} order {}", alg.dim(), cert.order)
        });
    }
    Ok(())
}

fn etale_saturation<R: Rng>(rng: &mut R, t: &mut Tally) -> Result<()> {
    let mut cache: HashMap<(u32, usize, usize), TestAlgebra> = HashMap::new();
    let mut bases: HashMap<(u32, usize), FdAlgebra> = HashMap::new();
    let mut saturations = vec![];
    let mut literal = 0;
    for case in 0..20 {
        // Frobenius acts through GL_r(F_q); these pairs have element orders ≤ 8.
        let (q, r) = pick(rng, &[(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]);
        let k = rng.random_range(1..=2);
        let base = match bases.get(&(q, k)) {
            Some(b) => b.clone(),
            None => {
                let b = FdAlgebra::field_ext(&field(q)?, k)?;
                bases.insert((q, k), b.clone());
                b
            }
        };
        let sh = random::etale_shtuka(rng, &base, r)?;
        let mut counts = vec![];
        let mut verified = true;
        for m in 1..=8 {
            let ta = match cache.get(&(q, k, m)) {
                Some(x) => x.clone(),
                None => {
                    let x = TestAlgebra::field(&base, k * m)?;
                    cache.insert((q, k, m), x.clone());
                    x
                }
            };
            let pm = points(&sh, &ta)?;
            verified &= verify_points(&sh, &ta, &pm);
            counts.push(pm.count());
        }
        let full = (q as u128).pow(r as u32);
        let sat = counts.iter().position(|&c| c == full).map(|i| i + 1);
        let divisible_monotone = (1..=8).all(|a| (a..=8).filter(|b| b % a == 0).all(|b| counts[a - 1] <= counts[b - 1]));
        if counts.windows(2).all(|w| w[0] <= w[1]) {
            literal += 1;
        }
        saturations.push(sat.unwrap_or(0));
        t.check(verified && sat.is_some() && divisible_monotone, || format!("case {case}: q={q} k={k} r={r} counts {counts:?}"));
    }
    t.notes.push(format!("saturation degrees {saturations:?}"));
    t.notes.push(format!("monotone along divisibility in all cases; literally monotone in {literal}/20"));
    Ok(())
}

fn roundtrip<R: Rng>(rng: &mut R, t: &mut Tally) -> Result<()> {
    for case in 0..30 {
        let q = pick(rng, &[2, 3]);
        let r = rng.random_range(1..=2);
        let alg = random::algebra(rng, &field(q)?, 4, true)?;
        let sh = random::finite_shtuka(rng, &alg, r)?;
        match mq_roundtrip(&sh) {
            Ok(rt) => {
                let ok = rt.u.is_invertible(&alg) && rt.u.mul(&alg, &rt.recovered) == sh.matrix.mul(&alg, &rt.u.frob(&alg));
                t.check(ok, || format!("case {case}: certificate does not verify"));
            }
            Err(e) => t.error(format!("case {case}: q={q} r={r} dim R={}", alg.dim()), &e),
        }
    }
    Ok(())
}

fn decomposition<R: Rng>(rng: &mut R, t: &mut Tally) -> Result<()> {
    for case in 0..30 {
        let q = pick(rng, &[2, 3]);
        let k = rng.random_range(1..=2);
        let r = rng.random_range(1..=3);
        let alg = FdAlgebra::field_ext(&field(q)?, k)?;
        // Bias towards mixed cases: a random matrix is usually invertible.
        let mut m = random::matrix(rng, &alg, r, r);
        if random::flip(rng) && r > 1 {
            let c = rng.random_range(0..r);
            for i in 0..r {
                m.set(i, c, alg.zero());
            }
        }
        let sh = FiniteShtuka::new(&alg, m)?;
        match decompose_etale_nilpotent(&sh) {
            Ok(d) => {
                let p = &d.basis_change;
                let block = AMatrix::block_diag(&alg, &d.etale.matrix, &d.nilpotent.matrix);
                let ok = d.etale.rank + d.nilpotent.rank == r
                    && nilpotence_checks(&d.etale).is_etale
                    && nilpotence_checks(&d.nilpotent).is_nilpotent
                    && p.is_invertible(&alg)
                    && sh.matrix.mul(&alg, &p.frob(&alg)) == p.mul(&alg, &block);
                t.check(ok, || format!("case {case}: q={q} k={k} r={r}"));
            }
            Err(e) => t.error(format!("case {case}"), &e),
        }
    }
    Ok(())
}

fn local_shtuka(alg: &FdAlgebra, m: ZMatrix, cfg: &SuiteConfig) -> Result<LocalShtuka> {
    match cfg.e_max {
        Some(e) => LocalShtuka::with_bound(alg, m, 0, e),
        None => LocalShtuka::effective(alg, m),
    }
}

fn random_local<R: Rng>(rng: &mut R, alg: &FdAlgebra, r: usize, d: usize, cfg: &SuiteConfig) -> Result<LocalShtuka> {
    let n = cfg.precision.max(4 * (d + alg.nu()));
    let sh = random::effective_local(rng, alg, r, d, n, true)?;
    local_shtuka(alg, sh.matrix, cfg)
}

fn verschiebung_identities<R: Rng>(rng: &mut R, cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let mut twisted = 0;
    for case in 0..20 {
        let q = pick(rng, &[2, 3]);
        let zeta = random::flip(rng);
        let alg = random::algebra(rng, &field(q)?, 3, zeta)?;
        let r = rng.random_range(1..=2);
        let d = rng.random_range(0..=2);
        let sh = random_local(rng, &alg, r, d, cfg)?;
        let s = match verschiebung_local(&sh, d) {
            Ok(s) => s,
            Err(e) => {
                t.error(format!("case {case}"), &e);
                continue;
            }
        };
        let n = s.precision();
        let m = sh.matrix.truncate(n);
        let zd = ZMatrix::scalar(&alg, r, &ZSeries::z_minus_zeta_pow(&alg, d, n));
        let mut ok = n > 0 && m.mul(&alg, &s).eq_at(&zd, n) && s.mul(&alg, &m).eq_at(&zd, n);
        if alg.zeta_is_zero() {
            twisted += 1;
            ok &= zd_verschiebung_check(&sh, d).map(|rep| rep.fv && rep.vf && rep.twisted).unwrap_or(false);
        }
        t.check(ok, || format!("case {case}: q={q} r={r} d={d} precision {n}"));
    }
    t.notes.push(format!("twisted square checked in {twisted} cases with zeta = 0"));
    Ok(())
}

/// diag(z, z − ε) over F_2[ε]/(ε²) with ζ = 0.
pub fn epsilon_example(n: usize) -> Result<LocalShtuka> {
    let alg = FdAlgebra::truncated(&field(2)?, 2, "eps")?;
    let eps = ZSeries::constant(&alg, &alg.basis(1), n);
    let z = ZSeries::z(&alg, n);
    let m = ZMatrix::from_rows(vec![vec![z.clone(), ZSeries::zero(&alg, n)], vec![ZSeries::zero(&alg, n), z.sub(&alg, &eps)]]);
    LocalShtuka::effective(&alg, m)
}

fn epsilon_counterexample(t: &mut Tally) -> Result<()> {
    let sh = epsilon_example(10)?;
    let alg = sh.alg.clone();
    let level = 4;
    let tr = truncate(&sh, level)?;
    let killed2 = tr.cokernel_annihilated(2);
    let killed1 = tr.cokernel_annihilated(1);
    t.check(killed2 && !killed1, || format!("z^2 kills coker F at level {level}: {killed2}; z kills it: {killed1}"));
    t.check(nilpotence_order(&sh, 8).ok() == Some(2), || "nilpotence order is not 2".into());
    let rep = boundedness_check(&sh, 2)?;
    let witness = match &rep.certificate {
        BoundCertificate::NotDivisible { step, index, residual } => {
            t.notes.push(format!("witness: step {step}, coefficient {index}, residual {}", alg.format(&AlgElem(residual.clone()))));
            AlgElem(residual.clone()) == alg.basis(1) || AlgElem(residual.clone()) == alg.neg(&alg.basis(1))
        }
        _ => false,
    };
    t.check(!rep.bounded && witness, || format!("bounded = {}, certificate {:?}", rep.bounded, rep.certificate));
    Ok(())
}

fn tower_laws<R: Rng>(rng: &mut R, cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let n_max = 4;
    let mut flat_fail = vec![];
    for case in 0..10 {
        let zeta = random::flip(rng);
        let alg = random::algebra(rng, &field(2)?, 2, zeta)?;
        let r = rng.random_range(1..=2);
        let d = rng.random_range(0..=2);
        let sh = random_local(rng, &alg, r, d, cfg)?;
        let tower = match build_tower(&sh, n_max, cfg.d_max) {
            Ok(x) => x,
            Err(e) => {
                t.error(format!("case {case}"), &e);
                continue;
            }
        };
        let rep = tower.report()?;
        let omega = omega_stabilization(&tower)?;
        let f = alg.residue_degree();
        let tests = [TestAlgebra::field(&alg, f)?, TestAlgebra::thickened_field(&alg, f, 2)?, TestAlgebra::field(&alg, 2 * f)?];
        let mut flat = true;
        for n in 1..=n_max {
            for ta in &tests {
                let fr = point_flatness(&tower, n, ta)?;
                if !fr.holds {
                    flat = false;
                    if flat_fail.len() < 3 {
                        let bad = fr.checks.iter().find(|c| !c.3).unwrap();
                        flat_fail.push(format!(
                            "case {case} (r={r}, dim R={}): level {n} over {}: i={} dim ker z^(n-i) = {} but dim im z^i = {}",
                            alg.dim(),
                            ta.name,
                            bad.0,
                            bad.1,
                            bad.2
                        ));
                    }
                }
            }
        }
        t.check(rep.orders_ok && rep.sequences_ok && omega.within_bound && flat, || {
            format!(
                "case {case}: orders {} sequences {} omega N={} (bound {}) point flatness {flat}",
                rep.orders_ok, rep.sequences_ok, omega.n_stab, omega.bound
            )
        });
    }
    t.notes.extend(flat_fail);
    Ok(())
}

fn strictness_examples(t: &mut Tally) -> Result<()> {
    for q in [2, 3, 4] {
        let alg = FdAlgebra::base_field(&field(q)?)?;
        let pair = UnivariatePresentation::alpha_q(&alg).deformation();
        let v = strictness_check(&pair, &pair.naive_lifts())?;
        t.check(v.strict, || format!("alpha_q over F_{q} not strict"));
        let pair = UnivariatePresentation::constant(&alg).deformation();
        let v = strictness_check(&pair, &pair.naive_lifts())?;
        t.check(v.strict, || format!("constant F_{q} not strict"));
    }
    let f4 = FdAlgebra::base_field(&field(4)?)?;
    let pair = UnivariatePresentation::alpha_p(&f4).deformation();
    let v = strictness_check(&pair, &pair.naive_lifts())?;
    // Witness: N-action a^2 where a is expected.
    let witness = (0..4u32).find_map(|a| {
        let x = f4.from_fq(a);
        let w = &v.witnesses[a as usize];
        (w.n_action == f4.format(&f4.pow(&x, 2)) && w.n_action != w.a).then(|| format!("a = {}: N-action {} = a^2", w.a, w.n_action))
    });
    t.check(!v.strict && witness.is_some(), || "alpha_2 over F_4 lacks the a^2 witness".into());
    t.notes.extend(witness);
    for p in [2, 3] {
        let alg = FdAlgebra::base_field(&field(p)?)?;
        let o = mu_p_obstruction(&alg)?;
        t.check(o.obstructed && o.forced == format!("Y^{p}"), || format!("mu_{p}: forced [p] = {}", o.forced));
        t.notes.push(format!("mu_{p}: [p](Y) = {} in R[Y]/(Y^{})", o.forced, p + 1));
    }
    Ok(())
}

fn balanced(t: &mut Tally) -> Result<()> {
    let f4 = FdAlgebra::base_field(&field(4)?)?;
    let mut count = 0;
    for r in 1..=2usize {
        let total = 4usize.pow((r * r) as u32);
        for code in 0..total {
            let entries: Vec<u32> = (0..r * r).map(|i| ((code >> (2 * i)) & 3) as u32).collect();
            let sh = FiniteShtuka::from_fq(&f4, r, &entries)?;
            let rep = balanced_check(&presentation(&sh))?;
            count += 1;
            t.check(rep.balanced, || format!("T = {entries:?}: eigen ranks {:?}", rep.eigen_ranks));
        }
    }
    t.notes.push(format!("{count} Drinfeld images over F_4 checked"));
    let alpha2 = UnivariatePresentation::alpha_p(&f4).hopf()?;
    let rep = crate::hopf::balanced_check_of(&alpha2)?;
    t.check(!rep.balanced && rep.eigen_ranks == vec![1, 0], || format!("alpha_2: {:?}", rep.eigen_ranks));
    Ok(())
}

fn zeta_zero_family<R: Rng>(rng: &mut R, cfg: &SuiteConfig) -> Result<Vec<LocalShtuka>> {
    let mut out = vec![];
    for _ in 0..20 {
        let q = pick(rng, &[2, 3]);
        let alg = random::algebra(rng, &field(q)?, 3, false)?;
        let r = rng.random_range(1..=2);
        let d = rng.random_range(0..=2);
        // A sharp diagonal exponent pattern with every a_i ≥ 1 is formal.
        let sh = if random::flip(rng) {
            let u1 = random::invertible_series(rng, &alg, r, cfg.precision);
            let u2 = random::invertible_series(rng, &alg, r, cfg.precision);
            let mut diag = ZMatrix::zeros(&alg, r, r, cfg.precision);
            for i in 0..r {
                diag.set(i, i, ZSeries::z_minus_zeta_pow(&alg, rng.random_range(1..=d.max(1)), cfg.precision));
            }
            local_shtuka(&alg, u1.mul(&alg, &diag).mul(&alg, &u2), cfg)?
        } else {
            random_local(rng, &alg, r, d, cfg)?
        };
        out.push(sh);
    }
    Ok(out)
}

fn formal_equivalence<R: Rng>(rng: &mut R, cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let family = zeta_zero_family(rng, cfg)?;
    let mut formal = 0;
    for (case, sh) in family.iter().enumerate() {
        let fields = catalog_fields(&sh.alg, &detecting_degrees(&sh.alg, sh.rank))?;
        let rep = formal_checks(sh, &fields)?;
        formal += rep.topologically_nilpotent as usize;
        t.check(rep.agree, || {
            format!(
                "case {case}: nilpotent {} level-1 {} points trivial {}",
                rep.topologically_nilpotent, rep.level1_nilpotent, rep.level1_points_trivial
            )
        });
    }
    t.notes.push(format!("{formal}/20 formal"));
    Ok(())
}

fn frobenius_kernels<R: Rng>(rng: &mut R, cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let family = zeta_zero_family(rng, cfg)?;
    let mut strict = 0;
    for (case, sh) in family.iter().enumerate() {
        let d = match nilpotence_order(sh, cfg.d_max) {
            Ok(d) => d,
            Err(e) => {
                t.error(format!("case {case}"), &e);
                continue;
            }
        };
        for ta in default_catalog(&sh.alg)? {
            for i in 1..=2 {
                match frobenius_kernel_check(sh, d, i, &ta, 1) {
                    Ok(rep) => {
                        strict += (rep.frobenius_kernel_dim < rep.target_dim) as usize;
                        t.check(rep.contained, || format!("case {case}: i={i} d={d} over {}", ta.name));
                    }
                    Err(e) => t.error(format!("case {case} over {}", ta.name), &e),
                }
            }
        }
    }
    t.notes.push(format!("{strict} strict containments"));
    Ok(())
}

fn deformations<R: Rng>(rng: &mut R, cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let big = FdAlgebra::truncated(&field(2)?, 2, "eps")?;
    let small_alg = FdAlgebra::base_field(&field(2)?)?;
    let eps = big.basis(1);
    let n = cfg.precision.max(12);
    for case in 0..10 {
        // (restrict, Hodge) after lifting.
        let small = random::effective_local(rng, &small_alg, 2, 1, n, true)?;
        let hodge = hodge_filtration(&small, 1)?;
        let fil: Vec<Vec<Vec<AlgElem>>> = hodge
            .fil
            .basis()
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&c| {
                        let noise = if random::flip(rng) { eps.clone() } else { big.zero() };
                        vec![big.add(&big.from_fq(c), &noise)]
                    })
                    .collect()
            })
            .collect();
        let lifted = DeformationProblem::new(&big, vec![eps.clone()], small, 1, fil).and_then(|p| deform_lift(&p));
        match lifted {
            Ok(l) => t.check(l.reduction_ok && l.hodge_ok, || format!("case {case}: lift reduction {} hodge {}", l.reduction_ok, l.hodge_ok)),
            Err(e) => t.error(format!("case {case}: lift"), &e),
        }
        // Lifting after (restrict, Hodge).
        let m = random::effective_local(rng, &big, 2, 1, n, true)?;
        match deformation_roundtrip(&m, vec![eps.clone()], 1) {
            Ok((_, rt)) => t.check(rt.isomorphic, || format!("case {case}: round trip not isomorphic at precision {}", rt.precision)),
            Err(e) => t.error(format!("case {case}: round trip"), &e),
        }
    }
    Ok(())
}

fn division_law<R: Rng>(rng: &mut R, t: &mut Tally) -> Result<()> {
    for case in 0..100 {
        let q = pick(rng, &[2, 3]);
        let alg = random::algebra(rng, &field(q)?, 4, true)?;
        let d = rng.random_range(1..=3);
        let n = d * alg.nu() + 1 + rng.random_range(0..6);
        let (y, x) = random::divisible(rng, &alg, d, n);
        match divide_by_z_minus_zeta(&alg, &y, d) {
            Ok(got) => {
                let p = got.precision();
                let back = got.mul(&alg, &ZSeries::z_minus_zeta_pow(&alg, d, p));
                t.check(back == y.truncate(p) && got == x.truncate(p), || format!("divisible case {case}: back-multiplication differs"));
            }
            Err(e) => t.error(format!("divisible case {case}"), &e),
        }
    }
    for case in 0..100 {
        let q = pick(rng, &[2, 3]);
        let alg = random::algebra(rng, &field(q)?, 4, true)?;
        let d = rng.random_range(1..=3);
        let s = rng.random_range(0..d);
        let n = d * alg.nu() + 1 + rng.random_range(0..6);
        // y = (z − ζ)^s·((z − ζ)^{d−s}·x + c): the quotient after s steps
        // takes the value c ≠ 0 at z = ζ.
        let c = loop {
            let c = random::element(rng, &alg);
            if !c.is_zero() {
                break c;
            }
        };
        let x = random::series(rng, &alg, n);
        let inner = x.mul(&alg, &ZSeries::z_minus_zeta_pow(&alg, d - s, n)).add(&alg, &ZSeries::constant(&alg, &c, n));
        let y = inner.mul(&alg, &ZSeries::z_minus_zeta_pow(&alg, s, n));
        match divide_by_z_minus_zeta(&alg, &y, d) {
            Err(Error::NotDivisible { step, index, residual }) => {
                t.check(step == s && index == 0 && AlgElem(residual.clone()) == c, || {
                    format!("case {case}: witness (step {step}, index {index}) but expected (step {s}, index 0)")
                })
            }
            other => t.check(false, || format!("non-divisible case {case}: {other:?}")),
        }
    }
    Ok(())
}
