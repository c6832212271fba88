//! One report builder per command. Every report is a JSON object whose arrays follow
//! the deterministic orders of the library (class tables, basis order, prime order).

use std::collections::BTreeSet;
use std::sync::Arc;

use aql_core::fk::{
    graded_dimension, twist_isomorphism_check, BasisKey, Cocycle, FkAlgebra, FkConfig, Pairing,
};
use aql_core::preprojective::{lift_space, nilpotent_lifts};
use aql_core::rep::{
    commutator_chi, hom_dim, iso_classes, kac_polynomial, stability_status, standard_stability,
    is_generic, ChiEntry, Fingerprint, HallContext, StabilityKind, StabilityVerdict, StabilityWeight,
};
use aql_core::roots::coxeter_matrix;
use aql_core::{
    classify_affine, AffineRootSystem, Budget, CoxeterOrbit, IntRep, LatticeVector, PrimeField,
    Quiver, RootClass,
};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::json::{element, fp_matrix, int, int_matrix, key, poly, rep, uint, vector};
use crate::task::{quiver_digest, CocycleChoice, Command, TaskDescriptor, Variant};

/// Steps allowed when following a Coxeter orbit.
const ORBIT_STEPS: usize = 256;

struct Ctx<'a> {
    task: &'a TaskDescriptor,
    quiver: Arc<Quiver>,
    budget: Budget,
}

impl Ctx<'_> {
    fn dims(&self) -> Vec<LatticeVector> {
        self.task
            .params
            .dims
            .iter()
            .flatten()
            .map(|d| LatticeVector::new(d.clone()))
            .collect()
    }

    fn dim(&self, i: usize, what: &str) -> CliResult<LatticeVector> {
        self.dims()
            .get(i)
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("{} needs --dim for {what}", self.task.command)))
    }

    fn nonnegative_dim(&self, i: usize, what: &str) -> CliResult<LatticeVector> {
        let d = self.dim(i, what)?;
        if !d.is_nonnegative() {
            return Err(CliError::Usage(format!("{what} {d} is not a dimension vector")));
        }
        Ok(d)
    }

    fn primes(&self) -> Vec<u64> {
        self.task.params.primes.clone().unwrap_or_default()
    }

    fn fields(&self) -> CliResult<Vec<PrimeField>> {
        let primes = self.primes();
        if primes.is_empty() {
            return Err(CliError::Usage("--primes is empty".into()));
        }
        Ok(primes.into_iter().map(PrimeField::new).collect::<aql_core::Result<_>>()?)
    }

    fn cutoff(&self) -> u32 {
        self.task.params.cutoff.unwrap_or(2)
    }

    fn root_system(&self) -> CliResult<AffineRootSystem> {
        Ok(AffineRootSystem::new(&self.quiver)?)
    }

    fn theta(&self) -> CliResult<StabilityWeight> {
        match &self.task.params.theta {
            Some(t) => Ok(StabilityWeight::new(LatticeVector::new(t.clone()))),
            None => Ok(standard_stability(&self.quiver, &StabilityKind::Regular)?),
        }
    }

    fn vertex_ids(&self, vs: &[usize]) -> Value {
        vs.iter().map(|&i| Value::String(self.quiver.vertices()[i].clone())).collect()
    }
}

/// Runs a task and returns its report.
pub fn execute_task(task: &TaskDescriptor) -> CliResult<Value> {
    let ctx = Ctx {
        task,
        quiver: Arc::new(task.quiver.build()?),
        budget: task.budget(),
    };
    let body = match task.command {
        Command::Forms => forms(&ctx)?,
        Command::AffineInfo => affine_info(&ctx)?,
        Command::Roots => roots(&ctx)?,
        Command::Coxeter => coxeter(&ctx)?,
        Command::Tubes => tubes(&ctx)?,
        Command::FkVerify => fk_verify(&ctx)?,
        Command::FkBracket => fk_bracket(&ctx)?,
        Command::Kac => kac(&ctx)?,
        Command::Hall => hall(&ctx)?,
        Command::HallChi => hall_chi(&ctx)?,
        Command::Stability => stability(&ctx)?,
        Command::Generic => generic(&ctx)?,
        Command::PpMoment => pp_moment(&ctx)?,
        Command::PpLifts => pp_lifts(&ctx)?,
    };
    let mut out = match body {
        Value::Object(m) => m,
        _ => return Err(CliError::Internal("report body is not an object".into())),
    };
    out.insert("task".into(), Value::String(task.command.name().into()));
    out.insert("quiver_digest".into(), Value::String(quiver_digest(&task.quiver)));
    Ok(Value::Object(out))
}

fn forms(c: &Ctx) -> CliResult<Value> {
    let q = &c.quiver;
    let mut out = json!({
        "euler_matrix": int_matrix(&q.euler_matrix()),
        "cartan_matrix": int_matrix(&q.cartan_matrix()),
    });
    let dims = c.dims();
    if let Some(a) = dims.first() {
        let b = dims.get(1).unwrap_or(a);
        out["pair"] = json!({
            "alpha": vector(a),
            "beta": vector(b),
            "euler": int(q.euler_form(a, b)?),
            "euler_reversed": int(q.euler_form(b, a)?),
            "symmetrized": int(q.symmetrized_form(a, b)?),
            "tits_alpha": int(q.tits_form(a)?),
            "tits_beta": int(q.tits_form(b)?),
        });
    }
    Ok(out)
}

fn affine_info(c: &Ctx) -> CliResult<Value> {
    let q = &c.quiver;
    let data = classify_affine(q)?;
    let defects = c
        .dims()
        .iter()
        .map(|a| Ok(json!({ "dim": vector(a), "defect": int(q.euler_form(&data.delta, a)?) })))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(json!({
        "type": data.affine_type.to_string(),
        "delta": vector(&data.delta),
        "extending_vertices": c.vertex_ids(&data.extending_vertices),
        "n": data.n,
        "has_oriented_cycle": data.has_oriented_cycle,
        "defects": defects,
    }))
}

fn roots(c: &Ctx) -> CliResult<Value> {
    let rs = c.root_system()?;
    let bound = match c.dims().first() {
        Some(b) => b.clone(),
        None => c.cutoff() as i64 * rs.delta(),
    };
    let list = rs
        .enumerate_positive_roots(&bound, &c.budget)?
        .into_iter()
        .map(|r| {
            Ok(json!({
                "vector": vector(&r.vector),
                "kind": if r.is_real { "real" } else { "imaginary" },
                "regular": r.is_regular,
                "level": int(r.level),
                "multiplicity": int(r.multiplicity),
                "defect": int(rs.defect(&r.vector)?),
            }))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(json!({ "bound": vector(&bound), "count": list.len(), "roots": list }))
}

fn coxeter(c: &Ctx) -> CliResult<Value> {
    let data = coxeter_matrix(&c.quiver)?;
    let dims = c.dims();
    let mut out = json!({
        "matrix": int_matrix(&data.matrix),
        "euler_matrix": int_matrix(&data.euler_matrix),
        "inverse_euler": int_matrix(&data.inverse_euler),
        "images": dims
            .iter()
            .map(|a| json!({ "dim": vector(a), "image": vector(&data.matrix.apply(a)) }))
            .collect::<Vec<_>>(),
    });
    if !dims.is_empty() {
        let rs = c.root_system()?;
        let orbits = dims
            .iter()
            .map(|a| {
                Ok(match rs.coxeter_orbit(a, ORBIT_STEPS)? {
                    CoxeterOrbit::Periodic { orbit, period } => json!({
                        "start": vector(a),
                        "kind": "periodic",
                        "period": period,
                        "orbit": orbit.iter().map(vector).collect::<Vec<_>>(),
                    }),
                    CoxeterOrbit::Infinite => json!({ "start": vector(a), "kind": "infinite" }),
                    CoxeterOrbit::Unresolved { steps } => {
                        json!({ "start": vector(a), "kind": "unresolved", "steps": steps })
                    }
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        out["orbits"] = Value::Array(orbits);
    }
    Ok(out)
}

fn tubes(c: &Ctx) -> CliResult<Value> {
    let rs = c.root_system()?;
    let t = rs.tube_skeleton()?;
    let excess: usize = t.periods.iter().map(|p| p - 1).sum();
    Ok(json!({
        "periods": t.periods,
        "orbits": t.orbits.iter().map(|o| o.iter().map(vector).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "n": rs.n(),
        "sum_period_minus_one": excess,
        "identity_holds": excess + 1 == rs.n(),
    }))
}

fn fk_config(c: &Ctx, rs: &AffineRootSystem) -> FkConfig {
    let pairing = match c.task.params.variant {
        Some(Variant::Literal) => Pairing::Literal,
        _ => Pairing::Symmetrized,
    };
    let cocycle = match c.task.params.cocycle {
        Some(CocycleChoice::EpsStar) => Cocycle::Twisted,
        _ => Cocycle::Plain,
    };
    FkConfig::new(rs, c.cutoff()).with_pairing(pairing).with_cocycle(cocycle)
}

fn fk_verify(c: &Ctx) -> CliResult<Value> {
    let rs = c.root_system()?;
    let cfg = fk_config(c, &rs);
    let alg = FkAlgebra::new(&rs, cfg)?;
    let jacobi = alg.verify_jacobi()?;
    let antisymmetry = alg.verify_antisymmetry()?;
    let serre = alg.verify_serre()?;
    let twist = twist_isomorphism_check(&rs, cfg)?;

    let grades: BTreeSet<LatticeVector> = alg.basis().iter().map(|k| alg.grade(k)).collect();
    let mut graded_ok = true;
    let graded = grades
        .iter()
        .map(|g| {
            let found = alg.basis_count_at(g) as i64;
            let expected = graded_dimension(&rs, g)?;
            graded_ok &= found == expected;
            Ok(json!({ "grade": vector(g), "basis": found, "expected": int(expected) }))
        })
        .collect::<CliResult<Vec<_>>>()?;

    Ok(json!({
        "variant": c.task.params.variant,
        "cocycle": c.task.params.cocycle,
        "cutoff": c.cutoff(),
        "basis_size": alg.basis().len(),
        "triples_checked": jacobi.triples_checked,
        "skipped": jacobi.skipped,
        "violations": jacobi.violations.iter().map(|v| json!({
            "x": key(&v.x),
            "y": key(&v.y),
            "z": key(&v.z),
            "residual": element(&v.residual),
        })).collect::<Vec<_>>(),
        "antisymmetry_failures": antisymmetry
            .iter()
            .map(|(x, y)| json!([key(x), key(y)]))
            .collect::<Vec<_>>(),
        "serre": {
            "passed": serre.passed(),
            "skipped": serre.skipped(),
            "checks": serre.checks.iter().map(|s| json!({
                "i": c.quiver.vertices()[s.i],
                "j": c.quiver.vertices()[s.j],
                "power": s.power,
                "vanishes": s.vanishes,
                "lower_nonzero": s.lower_nonzero,
            })).collect::<Vec<_>>(),
        },
        "twist": {
            "pairs_checked": twist.pairs_checked,
            "failures": twist.failures.iter().map(|(x, y)| json!([key(x), key(y)])).collect::<Vec<_>>(),
        },
        "graded_dimensions": graded,
        "graded_dimensions_match": graded_ok,
    }))
}

fn fk_bracket(c: &Ctx) -> CliResult<Value> {
    let rs = c.root_system()?;
    let alg = FkAlgebra::new(&rs, fk_config(c, &rs))?;
    let a = c.dim(0, "the first grade")?;
    let b = c.dim(1, "the second grade")?;
    let at = |g: &LatticeVector| -> Vec<BasisKey> {
        alg.basis().iter().filter(|k| &alg.grade(k) == g).cloned().collect()
    };
    let (xs, ys) = (at(&a), at(&b));
    for (g, ks) in [(&a, &xs), (&b, &ys)] {
        if ks.is_empty() {
            return Err(CliError::Usage(format!(
                "grade {g} has no basis elements at cutoff {}",
                c.cutoff()
            )));
        }
    }
    let mut table = Vec::new();
    for x in &xs {
        for y in &ys {
            let r = alg.bracket_keys(x, y)?;
            table.push(json!({ "x": key(x), "y": key(y), "bracket": element(&r) }));
        }
    }
    Ok(json!({
        "variant": c.task.params.variant,
        "cocycle": c.task.params.cocycle,
        "cutoff": c.cutoff(),
        "grades": [vector(&a), vector(&b)],
        "brackets": table,
    }))
}

fn kac(c: &Ctx) -> CliResult<Value> {
    let dim = c.nonnegative_dim(0, "the dimension vector")?;
    let primes = c.primes();
    let a = kac_polynomial(&c.quiver, &dim, &primes, &c.budget)?;
    let constant = a.coefficients.eval(0);
    let mut verdicts = json!({
        "degree_bound": a.degree_bound,
        "interpolation_primes": primes[..a.degree_bound + 1],
        "held_out_primes": primes[a.degree_bound + 1..],
        "constant_term": int(constant),
        "value_at_one": int(a.coefficients.eval(1)),
    });
    if let Ok(rs) = c.root_system() {
        let class = rs.classify_root(&dim)?;
        verdicts["root"] = match class {
            RootClass::NonRoot => json!({ "is_root": false }),
            RootClass::Root(r) => {
                let g = graded_dimension(&rs, &dim)?;
                json!({
                    "is_root": true,
                    "kind": if r.is_real { "real" } else { "imaginary" },
                    "graded_dimension": int(g),
                    "constant_term_matches": constant == g as i128,
                })
            }
        };
    }
    Ok(json!({
        "dim": vector(&dim),
        "primes": primes,
        "counts": primes.iter().zip(&a.counts).map(|(p, n)| json!({ "prime": p, "count": uint(*n as u128) })).collect::<Vec<_>>(),
        "polynomial": poly(&a.coefficients),
        "verdicts": verdicts,
    }))
}

fn hall(c: &Ctx) -> CliResult<Value> {
    let x = c.nonnegative_dim(0, "the sub dimension")?;
    let y = c.nonnegative_dim(1, "the quotient dimension")?;
    let z = &x + &y;
    let mut per_prime = Vec::new();
    for f in c.fields()? {
        let ctx = HallContext::new(c.quiver.clone(), f, c.budget);
        let (tx, ty, tz) = (ctx.table(&x)?, ctx.table(&y)?, ctx.table(&z)?);
        let mut entries = Vec::new();
        for i in 0..tx.len() {
            let fx = ctx.indicator(&tx.representative(i))?;
            for j in 0..ty.len() {
                let prod = ctx.product(&fx, &ctx.indicator(&ty.representative(j))?)?;
                for (k, &g) in prod.values.iter().enumerate() {
                    if g != 0 {
                        entries.push(json!({ "x": i, "y": j, "z": k, "count": int(g) }));
                    }
                }
            }
        }
        let classes = |t: &aql_core::rep::ClassTable| -> Vec<Value> {
            (0..t.len())
                .map(|k| json!({ "rep": rep(&t.representative(k)), "orbit_size": uint(t.orbit_size(k) as u128) }))
                .collect()
        };
        per_prime.push(json!({
            "prime": f.p(),
            "classes": { "x": classes(&tx), "y": classes(&ty), "z": classes(&tz) },
            "hall_numbers": entries,
        }));
    }
    Ok(json!({
        "dims": { "x": vector(&x), "y": vector(&y), "z": vector(&z) },
        "primes": c.primes(),
        "results": per_prime,
    }))
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn fingerprint(fp: &Fingerprint) -> Value {
    json!({
        "end_dim": fp.end_dim,
        "hom_from_simples": fp.hom_from_simples,
        "hom_to_simples": fp.hom_to_simples,
    })
}

fn hall_chi(c: &Ctx) -> CliResult<Value> {
    let x = c.nonnegative_dim(0, "the acting dimension")?;
    let y = c.nonnegative_dim(1, "the acted-on dimension")?;
    let k = c.task.params.cutoff.unwrap_or(1);
    let sx = IntRep::zero(c.quiver.clone(), x.clone())?;
    let sy = IntRep::zero(c.quiver.clone(), y.clone())?;
    // (ad a)^k b = sum_j (-1)^j C(k, j) a^(k-j) b a^j
    let terms: Vec<(i64, Vec<IntRep>)> = (0..=k)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let mut word = vec![sx.clone(); (k - j) as usize];
            word.push(sy.clone());
            word.extend(std::iter::repeat_n(sx.clone(), j as usize));
            (sign * binomial(k, j), word)
        })
        .collect();
    let bound = crate::task::hall_chi_degree_bound(&x, &y, k);
    let primes = c.primes();
    let entries = commutator_chi(&c.quiver, &terms, &primes, bound, &c.budget)?;
    let target = &(k as i64 * &x) + &y;
    let entry = |e: &ChiEntry| {
        json!({
            "fingerprint": fingerprint(&e.fingerprint),
            "class_counts": e.class_counts.iter().map(|(p, n)| json!({ "prime": p, "classes": n })).collect::<Vec<_>>(),
            "values": e.counts.iter().map(|(p, v)| json!({ "prime": p, "value": int(*v) })).collect::<Vec<_>>(),
            "representatives": e.representatives.iter().map(rep).collect::<Vec<_>>(),
            "polynomial": poly(&e.polynomial),
            "chi": int(e.chi),
        })
    };
    Ok(json!({
        "dims": { "x": vector(&x), "y": vector(&y), "target": vector(&target) },
        "power": k,
        "primes": primes,
        "degree_bound": bound,
        "terms": terms.iter().map(|(coeff, w)| json!({
            "coefficient": coeff,
            "word": w.iter().map(|r| vector(r.dim())).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "families": entries.iter().map(entry).collect::<Vec<_>>(),
        "all_vanish": entries.iter().all(|e| e.chi == 0),
    }))
}

fn verdict_name(v: &StabilityVerdict) -> &'static str {
    match v {
        StabilityVerdict::Stable => "stable",
        StabilityVerdict::Semistable => "semistable",
        StabilityVerdict::Unstable { .. } => "unstable",
    }
}

fn stability(c: &Ctx) -> CliResult<Value> {
    let dim = c.nonnegative_dim(0, "the dimension vector")?;
    let theta = c.theta()?;
    let mut per_prime = Vec::new();
    for f in c.fields()? {
        let table = iso_classes(&c.quiver, &dim, f, &c.budget)?;
        let (mut stable, mut semistable) = (0usize, 0usize);
        let mut stable_reps = Vec::new();
        for k in 0..table.len() {
            let x = table.representative(k);
            let v = stability_status(&x, &theta, &c.budget)?;
            semistable += v.is_semistable() as usize;
            if v.is_stable() {
                stable += 1;
                stable_reps.push(rep(&x));
            }
        }
        per_prime.push(json!({
            "prime": f.p(),
            "classes": table.len(),
            "stable": stable,
            "semistable": semistable,
            "unstable": table.len() - semistable,
            "stable_representatives": stable_reps,
        }));
    }
    Ok(json!({
        "dim": vector(&dim),
        "theta": vector(&theta.theta),
        "primes": c.primes(),
        "counts": per_prime,
        "polynomial": Value::Null,
        "verdicts": { "generic": is_generic(&c.quiver, &theta, &dim, &c.budget)? },
    }))
}

fn generic(c: &Ctx) -> CliResult<Value> {
    let theta = c.theta()?;
    let dims = c.dims();
    if dims.is_empty() {
        return Err(CliError::Usage("generic needs at least one --dim".into()));
    }
    let results = dims
        .iter()
        .map(|a| {
            Ok(json!({
                "dim": vector(a),
                "pairing": int(theta.pairing(a)),
                "generic": is_generic(&c.quiver, &theta, a, &c.budget)?,
            }))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(json!({ "theta": vector(&theta.theta), "results": results }))
}

fn pp_moment(c: &Ctx) -> CliResult<Value> {
    let dim = c.nonnegative_dim(0, "the dimension vector")?;
    let mut per_prime = Vec::new();
    for f in c.fields()? {
        let table = iso_classes(&c.quiver, &dim, f, &c.budget)?;
        let (mut zero_fiber, mut nilpotent) = (0u128, 0u128);
        for k in 0..table.len() {
            let x = table.representative(k);
            let orbit = table.orbit_size(k) as u128;
            let lift_dim = lift_space(&x)?.len() as u32;
            let fiber = (f.p() as u128)
                .checked_pow(lift_dim)
                .ok_or_else(|| CliError::Internal("fiber size overflows".into()))?;
            zero_fiber += orbit * fiber;
            nilpotent += orbit * nilpotent_lifts(&x, &c.budget)?.len() as u128;
        }
        per_prime.push(json!({
            "prime": f.p(),
            "classes": table.len(),
            "moment_zero_points": uint(zero_fiber),
            "nilpotent_points": uint(nilpotent),
        }));
    }
    Ok(json!({
        "dim": vector(&dim),
        "primes": c.primes(),
        "counts": per_prime,
    }))
}

fn pp_lifts(c: &Ctx) -> CliResult<Value> {
    let dim = c.nonnegative_dim(0, "the dimension vector")?;
    let tits = c.quiver.tits_form(&dim)?;
    // without an explicit weight, stability is only reported when the regular weight exists
    let theta = match &c.task.params.theta {
        Some(_) => Some(c.theta()?),
        None => standard_stability(&c.quiver, &StabilityKind::Regular).ok(),
    }
    .filter(|t| t.pairing(&dim) == 0);
    let mut per_prime = Vec::new();
    let mut law_holds = true;
    for f in c.fields()? {
        let table = iso_classes(&c.quiver, &dim, f, &c.budget)?;
        let mut classes = Vec::new();
        for k in 0..table.len() {
            let x = table.representative(k);
            let end = hom_dim(&x, &x)? as i64;
            let basis = lift_space(&x)?;
            let holds = basis.len() as i64 == end - tits;
            law_holds &= holds;
            let verdict = match &theta {
                Some(t) => Value::from(verdict_name(&stability_status(&x, t, &c.budget)?)),
                None => Value::Null,
            };
            classes.push(json!({
                "rep": rep(&x),
                "orbit_size": uint(table.orbit_size(k) as u128),
                "end_dim": end,
                "lift_dim": basis.len(),
                "fiber_law": holds,
                "nilpotent_lifts": nilpotent_lifts(&x, &c.budget)?.len(),
                "stability": verdict,
                "lift_basis": basis
                    .iter()
                    .map(|b| b.iter().map(fp_matrix).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            }));
        }
        per_prime.push(json!({ "prime": f.p(), "classes": classes }));
    }
    Ok(json!({
        "dim": vector(&dim),
        "tits": int(tits),
        "theta": theta.as_ref().map(|t| vector(&t.theta)),
        "primes": c.primes(),
        "results": per_prime,
        "fiber_law_holds": law_holds,
    }))
}
