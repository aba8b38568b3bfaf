//! Acceptance gate: one pass/fail line per criterion, nonzero exit if any
//! criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use skewalg_core::fuzz::generate_batch;
use skewalg_core::instance::InstanceFile;
use skewalg_core::invariants::invariant_suite;
use skewalg_core::linalg::{vec_add, vec_scale, AffineSolutionSet, Field, Scalar, Vector};
use skewalg_core::paction::PartialAction;
use skewalg_core::separability::{
    build_certificate, decide_global, decide_separability, extract_witness, isotropy_transport_psi,
    isotropy_witness_transport, oracle_separability, oracle_solutions, verify_separability_element,
};
use skewalg_core::skewring::SkewRing;
use skewalg_core::tensor::{Factor, Mid, TensorOverA};

fn instance(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances").join(name)
}

fn load(name: &str, field: Option<Field>) -> PartialAction {
    let text = std::fs::read_to_string(instance(name)).expect("instance file");
    let mut file = InstanceFile::parse(&text).expect("parses");
    if let Some(f) = field {
        file = file.with_field(f);
    }
    file.build().expect("builds")
}

fn cli(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_skewalg")).args(args).output().expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (report, out.status.code().unwrap_or(-1))
}

fn v(f: Field, xs: &[i64]) -> Vector {
    xs.iter().map(|&x| f.from_i64(x)).collect()
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, bound: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < bound, format!("took {t:?}, bound {bound:?}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let f = Field::Rational;
    let pa = load("partial_edge.json", None);
    let verdict = decide_separability(&pa).map_err(|e| e.to_string())?;
    ensure(verdict.separable, "not separable")?;
    let line = AffineSolutionSet { particular: Some(v(f, &[1, 0, 1, 1])), kernel_basis: vec![v(f, &[0, 1, -1, 0])] };
    ensure(verdict.family.same_set(&line), "witness family is not v1 + λv2 + (1-λ)v3 + v4")?;

    let sr = SkewRing::build(&pa).map_err(|e| e.to_string())?;
    ensure(sr.dim() == 6, "skew ring is not 6-dimensional")?;
    let t = TensorOverA::new(&sr, Factor::Whole, Factor::Whole, Mid::Base).map_err(|e| e.to_string())?;
    let grp = pa.groupoid();
    let mono = |g: &str, a: Vector| sr.coords(&sr.monomial(grp.find_morphism(g).unwrap(), a).unwrap());
    for lam in 0..=2 {
        let l: Scalar = f.from_i64(lam);
        let one = f.one();
        let a = vec_add(&v(f, &[1, 0, 1, 1]), &vec_scale(&l, &v(f, &[0, 1, -1, 0])));
        let cert = build_certificate(&pa, &a).map_err(|e| e.to_string())?;

        let a1 = vec![one.clone(), l.clone(), f.zero(), f.zero()];
        let a2 = vec![f.zero(), f.zero(), &one - &l, one.clone()];
        let pairs = [
            (mono("id:e1", a1), mono("id:e1", v(f, &[1, 1, 0, 0]))),
            (mono("g", vec_scale(&l, &v(f, &[0, 0, 1, 0]))), mono("g^-1", v(f, &[0, 1, 0, 0]))),
            (mono("g^-1", vec_scale(&(&one - &l), &v(f, &[0, 1, 0, 0]))), mono("g", v(f, &[0, 0, 1, 0]))),
            (mono("id:e2", a2), mono("id:e2", v(f, &[0, 0, 1, 1]))),
        ];
        let mut x = vec![f.zero(); t.ambient_dim()];
        for (p, q) in &pairs {
            x = vec_add(&x, &t.pure(&sr, p, q).map_err(|e| e.to_string())?);
        }
        ensure(t.project(&x) == cert.idempotent_x, format!("certificate differs from x_λ at λ = {lam}"))?;
        let (unit, commutes) = verify_separability_element(&sr, &t, &cert.idempotent_x);
        ensure(unit && commutes && cert.checks.all(), format!("certificate checks fail at λ = {lam}"))?;
    }
    let (report, code) = cli(&["separability", instance("partial_edge.json").to_str().unwrap()]);
    ensure(code == 0 && report["separable"] == Value::Bool(true), "CLI does not report separable")?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("separable, family matches, x_λ reproduced for λ = 0, 1, 2 in {:?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let mut msgs = Vec::new();
    for (file, p, expected) in
        [("zero_cross_gf3.json", Some(3), true), ("zero_cross_q.json", None, true), ("zero_cross_gf2.json", Some(2), false)]
    {
        let start = Instant::now();
        let pa = load(file, None);
        let field = p.map(|p| Field::prime(p).unwrap()).unwrap_or(Field::Rational);
        ensure(pa.field() == field, format!("{file} is over {}", pa.field()))?;
        let decided = decide_separability(&pa).map_err(|e| e.to_string())?.separable;
        let oracle = oracle_separability(&pa).map_err(|e| e.to_string())?.separable;
        ensure(decided == expected, format!("{field}: decision {decided}"))?;
        ensure(oracle == expected, format!("{field}: oracle {oracle}"))?;
        within(start, Duration::from_secs(1))?;
        msgs.push(format!("{field} {}", if expected { "separable" } else { "not separable" }));
    }
    Ok(format!("{}, oracle agrees", msgs.join(", ")))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let (report, code) = cli(&["fuzz", "--seed", "1", "--count", "25", "--max-morphisms", "6", "--max-dim", "6"]);
    let summary = report["summary"].as_array().cloned().unwrap_or_default();
    let mut parts = Vec::new();
    for field in ["Q", "GF(2)"] {
        let s = summary.iter().find(|s| s["field"] == field).ok_or(format!("no {field} summary"))?;
        let agree = s["agreements"].as_u64().unwrap_or(0);
        ensure(agree == 25, format!("{field}: {agree}/25"))?;
        parts.push(format!("{field} {agree}/25"));
    }
    ensure(code == 0, format!("fuzz exit code {code}"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} in {:?}", parts.join(", "), start.elapsed()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut actions = vec![("partial_edge".to_string(), load("partial_edge.json", None))];
    for f in ["zero_cross_q.json", "zero_cross_gf2.json", "zero_cross_gf3.json", "glued_edge_pair.json"] {
        actions.push((f.to_string(), load(f, None)));
    }
    for (i, inst) in generate_batch(1, 10, 6, 6).into_iter().enumerate() {
        actions.push((format!("fuzz #{i}"), inst.realize(Field::Rational)));
    }
    let mut total = 0;
    for (name, pa) in &actions {
        let suite = invariant_suite(pa).map_err(|e| format!("{name}: {e}"))?;
        for c in &suite {
            ensure(c.passed, format!("{name}: {} ({})", c.name, c.detail))?;
        }
        total += suite.len();
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{total} checks on {} instances in {:?}", actions.len(), start.elapsed()))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let pa = load("swap_global.json", None);
    let d = decide_separability(&pa).map_err(|e| e.to_string())?;
    let g = decide_global(&pa).map_err(|e| e.to_string())?;
    ensure(d.separable == g.separable, "global decision differs")?;
    let b = d.family.particular.clone().ok_or("no witness")?;
    let moved = isotropy_witness_transport(&pa, 0, &b).map_err(|e| e.to_string())?;
    ensure(moved.trace_is_unit && moved.central_in_corner, "transported witness fails t_ii(a) = 1_i")?;
    let s = pa.groupoid().find_morphism("s").ok_or("no arrow s")?;
    let psi = isotropy_transport_psi(&pa, s).map_err(|e| e.to_string())?;
    ensure(psi.is_ring_isomorphism() && psi.unital, "ψ is not a unital ring isomorphism")?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("decisions agree ({}), transport and ψ verified in {:?}", d.separable, start.elapsed()))
}

fn criterion_6() -> Outcome {
    let mut separable = 0;
    let mut total = 0;
    for inst in generate_batch(1, 25, 6, 6) {
        for f in [Field::Rational, Field::prime(2).unwrap()] {
            let pa = inst.realize(f);
            let sr = SkewRing::build(&pa).map_err(|e| e.to_string())?;
            let t = TensorOverA::new(&sr, Factor::Whole, Factor::Whole, Mid::Base).map_err(|e| e.to_string())?;
            let (set, _) = oracle_solutions(&sr, &t);
            total += 1;
            let Some(x) = &set.particular else { continue };
            separable += 1;
            let w = extract_witness(&pa, &sr, &t, x).map_err(|e| e.to_string())?;
            ensure(w.central && w.traces_are_units, format!("{} over {f}: extracted a fails", inst.description))?;
        }
    }
    Ok(format!("{separable} separable of {total} runs, every extracted a is central with t_i(a) = 1_i"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("1 partial edge reproduction", criterion_1),
        ("2 zero cross arrows by characteristic", criterion_2),
        ("3 decision equals oracle on fuzz seed 1", criterion_3),
        ("4 invariant suite", criterion_4),
        ("5 global swap case", criterion_5),
        ("6 oracle witness extraction", criterion_6),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(msg) => println!("criterion {name}: PASS ({msg})"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({msg})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 6 acceptance criteria passed");
}
