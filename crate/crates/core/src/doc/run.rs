use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use super::expr::{parse_element, parse_series};
use super::{Command, CommandResult, DocError, Header, ObjectSpec, Options, ProblemDocument, Report, Resolved, RingPreset, Status, TestSpec, ZetaSpec};
use crate::algebra::{validate_algebra, AlgElem, AlgebraData, FdAlgebra};
use crate::amatrix::AMatrix;
use crate::anderson::{
    build_tower, deform_lift, frobenius_kernel_check, hodge_filtration, nilpotence_order, omega_stabilization, zd_verschiebung_check, DeformationProblem,
};
use crate::drinfeld::{points, presentation, radicial_check, truncated_points, TestAlgebra};
use crate::error::{Error, Result};
use crate::fq::FqField;
use crate::hopf::{balanced_check, mq_roundtrip, mu_p_obstruction, primitives, strictness_check, UnivariatePresentation};
use crate::shtuka::{
    boundedness_check, colie, decompose_etale_nilpotent, dual, hom, local_nilpotence_checks, nilpotence_checks, sequence_check, tensor, truncate,
    verschiebung_finite, verschiebung_local, FiniteShtuka, LocalShtuka,
};
use crate::suite::run_criterion;
use crate::zseries::{divide_by_z_minus_zeta, reduce_mod_z_minus_zeta_pow, ZMatrix};

enum Object {
    Finite(FiniteShtuka),
    Local(LocalShtuka),
    Deformation(Box<DeformationProblem>),
}

struct Ctx {
    alg: FdAlgebra,
    opts: Resolved,
    objects: BTreeMap<String, Object>,
}

fn build_ring(spec: &super::RingSpec) -> Result<FdAlgebra> {
    let alg = match &spec.preset {
        RingPreset::Fq { q } => FdAlgebra::base_field(&FqField::new(*q)?)?,
        RingPreset::Extension { q, m } => FdAlgebra::field_ext(&FqField::new(*q)?, *m)?,
        RingPreset::Truncated { q, n, var } => FdAlgebra::truncated(&FqField::new(*q)?, *n, var)?,
        RingPreset::Bivariate { q, a, b, vars } => FdAlgebra::bivariate(&FqField::new(*q)?, *a, *b, &vars.0, &vars.1)?,
        RingPreset::Structure { q, names, consts } => {
            let field = FqField::new(*q)?;
            let data = AlgebraData { field, names: names.clone(), consts: consts.clone(), zeta: vec![0; names.len()] };
            let report = validate_algebra(&data);
            if !report.is_ok() {
                return Err(Error::InvalidAlgebra(report));
            }
            FdAlgebra::new(data)?
        }
    };
    match &spec.zeta {
        None => Ok(alg),
        Some(ZetaSpec::Expr(s)) => {
            let z = parse_element(&alg, s)?;
            alg.with_zeta(z)
        }
        Some(ZetaSpec::Coords(c)) => {
            if c.len() != alg.dim() {
                return Err(Error::DimensionMismatch(format!("zeta needs {} coordinates", alg.dim())));
            }
            alg.with_zeta(AlgElem(c.clone()))
        }
    }
}

fn square(rows: &[Vec<String>]) -> Result<usize> {
    let r = rows.len();
    if rows.iter().any(|row| row.len() != r) {
        return Err(Error::NotSquare);
    }
    Ok(r)
}

fn local_from(alg: &FdAlgebra, m: ZMatrix, twist: i64, opts: &Resolved) -> Result<LocalShtuka> {
    match opts.e_max {
        Some(e) => LocalShtuka::with_bound(alg, m, twist, e),
        None => LocalShtuka::new(alg, m, twist),
    }
}

fn series_matrix(alg: &FdAlgebra, rows: &[Vec<String>], n: usize) -> Result<ZMatrix> {
    square(rows)?;
    let rows = rows.iter().map(|row| row.iter().map(|s| parse_series(alg, s, n)).collect()).collect::<Result<Vec<Vec<_>>>>()?;
    Ok(ZMatrix::from_rows(rows))
}

fn build_object(alg: &FdAlgebra, spec: &ObjectSpec, opts: &Resolved) -> Result<Object> {
    Ok(match spec {
        ObjectSpec::Finite { matrix } => {
            square(matrix)?;
            let rows = matrix.iter().map(|row| row.iter().map(|s| parse_element(alg, s)).collect()).collect::<Result<Vec<Vec<_>>>>()?;
            Object::Finite(FiniteShtuka::new(alg, AMatrix::from_rows(alg, rows))?)
        }
        ObjectSpec::Local { matrix, twist, precision } => {
            let m = series_matrix(alg, matrix, precision.unwrap_or(opts.precision))?;
            Object::Local(local_from(alg, m, *twist, opts)?)
        }
        ObjectSpec::Deformation { ideal, small, d, fil } => {
            let ideal = ideal.iter().map(|s| parse_element(alg, s)).collect::<Result<Vec<_>>>()?;
            let (small_alg, quot) = alg.quotient(&ideal)?;
            let m = series_matrix(alg, small, opts.precision)?.map(&quot);
            let small = local_from(&small_alg, m, 0, opts)?;
            let r = small.rank;
            let gens = fil
                .iter()
                .map(|g| {
                    if g.len() != r {
                        return Err(Error::DimensionMismatch(format!("filtration generators need {r} entries")));
                    }
                    g.iter().map(|s| Ok(reduce_mod_z_minus_zeta_pow(alg, &parse_series(alg, s, opts.precision)?.coeffs, *d))).collect()
                })
                .collect::<Result<Vec<_>>>()?;
            Object::Deformation(Box::new(DeformationProblem::new(alg, ideal, small, *d, gens)?))
        }
    })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

fn local_value(sh: &LocalShtuka) -> Value {
    json!({
        "rank": sh.rank,
        "twist": sh.twist,
        "precision": sh.precision,
        "matrix": sh.matrix.format(&sh.alg),
    })
}

fn test_algebra(alg: &FdAlgebra, t: &TestSpec) -> Result<TestAlgebra> {
    match t {
        TestSpec::Base => Ok(TestAlgebra::base(alg)),
        TestSpec::Field(m) => TestAlgebra::field(alg, *m),
        TestSpec::Thickened { m, n } => TestAlgebra::thickened_field(alg, *m, *n),
    }
}

impl Ctx {
    fn finite(&self, name: &str) -> Result<&FiniteShtuka> {
        match self.objects.get(name) {
            Some(Object::Finite(s)) => Ok(s),
            _ => Err(Error::Invalid(format!("{name:?} is not a finite shtuka"))),
        }
    }

    fn local(&self, name: &str) -> Result<&LocalShtuka> {
        match self.objects.get(name) {
            Some(Object::Local(s)) => Ok(s),
            _ => Err(Error::Invalid(format!("{name:?} is not a local shtuka"))),
        }
    }

    /// Returns the value and whether the command counts as failed.
    fn exec(&mut self, cmd: &Command) -> Result<(Value, bool)> {
        let alg = self.alg.clone();
        let ok = |v: Value| Ok((v, false));
        match cmd {
            Command::ValidateRing => {
                let rep = validate_algebra(&alg.data());
                ok(json!({
                    "dim": alg.dim(),
                    "names": alg.names(),
                    "zeta": alg.format(alg.zeta()),
                    "zeta_nilpotency": alg.nu(),
                    "nilradical": alg.nilradical().iter().map(|x| alg.format(x)).collect::<Vec<_>>(),
                    "residue_degree": alg.residue_degree(),
                    "violations": to_value(&rep.violations),
                }))
            }
            Command::Order { object } => {
                let pres = presentation(self.finite(object)?);
                let cert = pres.order()?;
                let names = pres.var_names();
                ok(json!({
                    "order": cert.order.to_string(),
                    "monomials": cert.monomials,
                    "relations": pres.relation_polys().iter().map(|p| p.format(&alg, &names)).collect::<Vec<_>>(),
                }))
            }
            Command::Points { object, test, level } => {
                let t = test_algebra(&alg, test)?;
                let pm = match (self.objects.get(object.as_str()), level) {
                    (Some(Object::Finite(sh)), None) => points(sh, &t)?,
                    (Some(Object::Local(sh)), Some(n)) => truncated_points(&truncate(sh, *n)?, &t)?,
                    _ => return Err(Error::Invalid("points need a finite shtuka, or a local shtuka with a level".into())),
                };
                ok(to_value(&pm.summary()))
            }
            Command::Radicial { object } => ok(to_value(&radicial_check(self.finite(object)?)?)),
            Command::Colie { object } => {
                let c = colie(self.finite(object)?);
                ok(json!({"omega_dim": c.omega_dim, "n_dim": c.n_dim, "image_dim": c.image_dim}))
            }
            Command::Nilpotence { object } => match self.objects.get(object.as_str()) {
                Some(Object::Finite(sh)) => ok(to_value(&nilpotence_checks(sh))),
                Some(Object::Local(sh)) => ok(to_value(&local_nilpotence_checks(sh)?)),
                _ => Err(Error::Invalid(format!("{object:?} is not a shtuka"))),
            },
            Command::Decompose { object } => {
                let d = decompose_etale_nilpotent(self.finite(object)?)?;
                ok(json!({
                    "etale_rank": d.etale.rank,
                    "nilpotent_rank": d.nilpotent.rank,
                    "etale": d.etale.matrix.format(&alg),
                    "nilpotent": d.nilpotent.matrix.format(&alg),
                    "basis_change": d.basis_change.format(&alg),
                }))
            }
            Command::Verschiebung { object, d, c } => match self.objects.get(object.as_str()) {
                Some(Object::Finite(sh)) => {
                    let c = parse_element(&alg, c.as_deref().ok_or_else(|| Error::Invalid("finite Verschiebung needs c".into()))?)?;
                    ok(json!({"v": verschiebung_finite(sh, &c)?.format(&alg)}))
                }
                Some(Object::Local(sh)) => {
                    let d = d.ok_or_else(|| Error::Invalid("local Verschiebung needs d".into()))?;
                    let v = verschiebung_local(sh, d)?;
                    ok(json!({"v": v.format(&alg), "precision": v.precision()}))
                }
                _ => Err(Error::Invalid(format!("{object:?} is not a shtuka"))),
            },
            Command::Primitives { object } => {
                let pres = presentation(self.finite(object)?);
                let names = pres.var_names();
                let h = primitives(&pres)?;
                ok(json!({
                    "basis": h.primitive_basis.iter().map(|p| p.format(&alg, &names)).collect::<Vec<_>>(),
                    "frobenius_matrix": h.frobenius_matrix.format(&alg),
                }))
            }
            Command::Roundtrip { object } => {
                let rt = mq_roundtrip(self.finite(object)?)?;
                ok(json!({"verified": true, "u": rt.u.format(&alg), "recovered": rt.recovered.format(&alg)}))
            }
            Command::Balanced { object } => ok(to_value(&balanced_check(&presentation(self.finite(object)?))?)),
            Command::Strictness { family, q } => {
                let base = FdAlgebra::base_field(&FqField::new(*q)?)?;
                let up = match family.as_str() {
                    "alpha_q" => UnivariatePresentation::alpha_q(&base),
                    "alpha_p" => UnivariatePresentation::alpha_p(&base),
                    "constant" => UnivariatePresentation::constant(&base),
                    other => return Err(Error::Invalid(format!("unknown family {other:?}; expected alpha_q, alpha_p or constant"))),
                };
                up.validate()?;
                let pair = up.deformation();
                ok(to_value(&strictness_check(&pair, &pair.naive_lifts())?))
            }
            Command::MuP { p } => {
                let base = FdAlgebra::base_field(&FqField::new(*p)?)?;
                if base.field().e() != 1 {
                    return Err(Error::Invalid("p must be prime".into()));
                }
                ok(to_value(&mu_p_obstruction(&base)?))
            }
            Command::Monoidal { operation, a, b, n, store } => {
                let x = self.local(a)?;
                let y = || b.as_deref().ok_or_else(|| Error::Invalid(format!("{operation} needs b"))).and_then(|b| self.local(b));
                let out = match operation.as_str() {
                    "tensor" => tensor(x, y()?)?,
                    "hom" => hom(x, y()?)?,
                    "dual" => dual(x)?,
                    "tate_twist" => x.tate_twist(n.ok_or_else(|| Error::Invalid("tate_twist needs n".into()))?)?,
                    other => return Err(Error::Invalid(format!("unknown operation {other:?}"))),
                };
                let v = local_value(&out);
                if let Some(s) = store {
                    self.objects.insert(s.clone(), Object::Local(out));
                }
                ok(v)
            }
            Command::Boundedness { object, d } => ok(to_value(&boundedness_check(self.local(object)?, *d)?)),
            Command::Divide { series, d } => {
                let y = parse_series(&alg, series, self.opts.precision)?;
                match divide_by_z_minus_zeta(&alg, &y, *d) {
                    Ok(x) => ok(json!({"divisible": true, "quotient": x.format(&alg)})),
                    Err(Error::NotDivisible { step, index, residual }) => ok(json!({
                        "divisible": false,
                        "witness": {"step": step, "index": index, "residual": alg.format(&AlgElem(residual))},
                    })),
                    Err(e) => Err(e),
                }
            }
            Command::Truncate { object, n } => {
                let t = truncate(self.local(object)?, *n)?;
                ok(json!({"rank": t.base.rank, "matrix": t.base.matrix.format(&alg), "z_action": t.z_action.format(&alg)}))
            }
            Command::Sequence { object, n, m } => ok(to_value(&sequence_check(self.local(object)?, *n, *m)?)),
            Command::Tower { object, n_max } => {
                let tower = build_tower(self.local(object)?, *n_max, self.opts.d_max)?;
                let rep = tower.report()?;
                let failed = !(rep.orders_ok && rep.sequences_ok);
                Ok((to_value(&rep), failed))
            }
            Command::Omega { object, n_max } => {
                let tower = build_tower(self.local(object)?, *n_max, self.opts.d_max)?;
                ok(to_value(&omega_stabilization(&tower)?))
            }
            Command::FrobeniusKernel { object, i, test, n_max } => {
                let sh = self.local(object)?;
                let d = nilpotence_order(sh, self.opts.d_max)?;
                let t = test_algebra(&alg, test)?;
                ok(to_value(&frobenius_kernel_check(sh, d, *i, &t, n_max.unwrap_or(1))?))
            }
            Command::ZdVerschiebung { object, d } => ok(to_value(&zd_verschiebung_check(self.local(object)?, *d)?)),
            Command::Hodge { object, d } => ok(to_value(&hodge_filtration(self.local(object)?, *d)?.summary())),
            Command::Deform { object } => {
                let Some(Object::Deformation(prob)) = self.objects.get(object.as_str()) else {
                    return Err(Error::Invalid(format!("{object:?} is not a deformation problem")));
                };
                let lift = deform_lift(prob)?;
                let failed = !(lift.reduction_ok && lift.hodge_ok);
                Ok((
                    json!({
                        "lift": local_value(&lift.shtuka),
                        "basis": lift.basis.format(&alg),
                        "precision": lift.precision,
                        "reduction_ok": lift.reduction_ok,
                        "hodge_ok": lift.hodge_ok,
                    }),
                    failed,
                ))
            }
            Command::VerifyPaper { criteria } => {
                let ids: Vec<u8> = criteria.clone().unwrap_or_else(|| (1..=13).collect());
                let cfg = self.opts.suite_config();
                let results = ids.iter().map(|&id| run_criterion(id, &cfg)).collect::<Result<Vec<_>>>()?;
                let passed = results.iter().filter(|r| r.pass).count();
                let failed = results.len() - passed;
                Ok((json!({"passed": passed, "failed": failed, "criteria": to_value(&results)}), failed > 0))
            }
        }
    }
}

/// Validates the ring and objects, then runs the commands in order.
/// `overrides` (flags, environment) take precedence over document options.
pub fn run(doc: &ProblemDocument, overrides: &Options) -> std::result::Result<Report, DocError> {
    let opts = doc.options.overlay(overrides).resolve();
    let alg = build_ring(&doc.ring).map_err(|e| DocError::Validation { path: "ring".into(), message: e.to_string() })?;
    let mut objects = BTreeMap::new();
    for (name, spec) in &doc.objects {
        let o = build_object(&alg, spec, &opts).map_err(|e| DocError::Validation { path: format!("objects.{name}"), message: e.to_string() })?;
        objects.insert(name.clone(), o);
    }
    let mut ctx = Ctx { alg, opts: opts.clone(), objects };
    let mut results = vec![];
    for (index, cmd) in doc.commands.iter().enumerate() {
        let start = Instant::now();
        let out = ctx.exec(cmd);
        let elapsed_us = opts.timings.then(|| start.elapsed().as_micros() as u64);
        let input = serde_json::to_value(cmd).unwrap_or(Value::Null);
        results.push(match out {
            Ok((value, failed)) => CommandResult {
                index,
                op: cmd.name(),
                input,
                status: if failed { Status::Failed } else { Status::Ok },
                value: Some(value),
                error: None,
                elapsed_us,
            },
            Err(e) => CommandResult { index, op: cmd.name(), input, status: Status::Failed, value: None, error: Some(e.to_string()), elapsed_us },
        });
    }
    Ok(Report { header: Header::new(opts), results })
}
