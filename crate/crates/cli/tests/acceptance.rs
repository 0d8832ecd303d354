//! One line per acceptance criterion; exits nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use redop::confluence::{Granularity, JoinResult};
use redop::duality::{adjoint, apply_dual, dual_operator, represent, val_form};
use redop::groebner::{build_quotient, operator_from_groebner, tests_support::binary_value_relations, verify_groebner};
use redop::linalg::rank;
use redop::parse::parse_series;
use redop::standard_basis::{is_standard_basis, operator_family};
use redop::syntactic::{check_syntactic, greatest_ideal_in, sample_witnesses, SyntacticOptions, SyntacticVerdict};
use redop::{Mode, MonomialContext, QOperator, QSeries, Representation, Q};
use redop_cli::report::Report;

const RUNTIME_LIMIT: Duration = Duration::from_secs(5);
const DROPPED_TRUNCATION: u32 = 8;
const JOIN_TRUNCATION: u32 = 12;
const JOIN_EPSILON: u32 = 10;
const JOIN_BUDGET: usize = 1000;
const ORACLE_SYSTEMS: u64 = 120;
const ORACLE_TRUNCATION: u32 = 6;
const DISCRETE_FAMILIES: u64 = 120;
const LATTICE_TRIPLES: u64 = 120;
const DUALITY_CASES: u64 = 120;
const WORD_LENGTH: u32 = 4;
const GROEBNER_LENGTH: u32 = 6;
const SYNTACTIC_SAMPLES: usize = 200;
const SOUNDNESS_SYSTEMS: u64 = 60;
const SOUNDNESS_TRUNCATION: u32 = 6;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn xyz() -> Arc<MonomialContext> {
    Arc::new(MonomialContext::commutative(["x", "y", "z"], Mode::Adic).unwrap())
}

fn series(ctx: &Arc<MonomialContext>, text: &str) -> QSeries {
    parse_series(ctx, text).unwrap()
}

fn problem(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "problems", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (code, out) = redop_cli::run(["redop", "check-standard-basis", &problem("standard-basis.prob"), "--json"]);
    let elapsed = start.elapsed();
    let report: Report = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    check(code == 0 && report.exit == 0, || format!("exit {code}"))?;
    check(report.truncation == Some(8), || format!("truncation {:?}", report.truncation))?;
    check(report.verdict == "standard basis up to degree 8", || report.verdict.clone())?;
    check(report.obstructions.is_empty(), || format!("obstructions {:?}", report.obstructions))?;
    check(elapsed < RUNTIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("exit 0, no obstructions, {} ms", elapsed.as_millis()))
}

fn criterion_2() -> Outcome {
    let c = xyz();
    let gens = vec![series(&c, "z - y"), series(&c, "z - x")];
    let d = DROPPED_TRUNCATION;
    let verdict = is_standard_basis(&gens, &c, d).map_err(|e| e.to_string())?;
    check(!verdict.is_standard_basis, || "reported a standard basis".into())?;
    let y = c.variable(1);
    check(verdict.report.minimal == [y.clone()], || format!("minimal {:?}", verdict.report.minimal))?;
    let (g, witness) = &verdict.report.witnesses[0];
    check(*g == y, || "witness for the wrong monomial".into())?;
    // the kernel element x - y, scaled to a monic leading monomial y
    check(*witness == series(&c, "x - y").scale(&q(-1)).truncate(d), || format!("witness {witness}"))?;

    // dense elimination over all multiples of degree <= d
    let one = c.one();
    let multiples: Vec<QSeries> = c
        .monomials_up_to(d)
        .iter()
        .flat_map(|m| gens.iter().map(|f| f.mul_monomials(m, &one)))
        .collect();
    let rules = dense_rules(&c, d, &multiples);
    let lms: Vec<_> = gens.iter().map(|f| f.leading_monomial().unwrap().clone()).collect();
    let oracle: Vec<_> = rules.keys().filter(|h| !lms.iter().any(|l| l.divides(h))).cloned().collect();
    let oracle_minimal: Vec<_> =
        oracle.iter().filter(|h| !oracle.iter().any(|o| o != *h && o.divides(h))).cloned().collect();
    check(oracle_minimal == [y.clone()], || format!("oracle minimal {oracle_minimal:?}"))?;
    let mut found = verdict.report.obstructions.clone();
    let mut expected = oracle.clone();
    found.sort();
    expected.sort();
    check(found == expected, || "obstruction set differs from the oracle".into())?;
    let oracle_witness = series(&c, "y").sub(&rules[&y]).unwrap().truncate(d);
    check(*witness == oracle_witness, || format!("oracle witness {oracle_witness}"))?;
    Ok(format!("minimal {{y}}, witness {witness}, {} obstructions match elimination", expected.len()))
}

fn criterion_3() -> Outcome {
    let c = xyz();
    let gens: Vec<QSeries> = ["z - y", "z - x", "y - y^2", "x - x^2"].iter().map(|s| series(&c, s)).collect();
    let fam = operator_family(&gens, &c, JOIN_TRUNCATION).map_err(|e| e.to_string())?;
    let res = fam
        .joinable(&series(&c, "x"), &series(&c, "y"), Granularity::Rule, JOIN_EPSILON, JOIN_BUDGET)
        .map_err(|e| e.to_string())?;
    let JoinResult::Yes { witness, traces } = res else {
        return Err("not joinable".into());
    };
    check(witness.is_zero(), || format!("witness {witness}"))?;
    check(traces.iter().all(|t| t.is_monotone()), || "traces not monotone".into())?;
    let steps: Vec<usize> = traces.iter().map(|t| t.steps.len()).collect();
    Ok(format!("yes, witness 0, monotone traces of {} and {} steps", steps[0], steps[1]))
}

fn criterion_4() -> Outcome {
    let mut discrepancies = Vec::new();
    let mut confluent = 0;
    for seed in 0..ORACLE_SYSTEMS {
        let (c, gens) = random_power_series_system(&mut rng(seed));
        let fam = operator_family(&gens, &c, ORACLE_TRUNCATION).unwrap();
        let obs = fam.is_confluent().confluent;
        let s = fam.s_series_reduce_all().unwrap().iter().all(|p| p.residual.is_zero());
        confluent += obs as usize;
        if obs != s {
            discrepancies.push(seed);
        }
    }
    check(discrepancies.is_empty(), || format!("discrepancies at seeds {discrepancies:?}"))?;
    Ok(format!("{ORACLE_SYSTEMS} systems, {confluent} standard bases, 0 discrepancies"))
}

fn lattice_laws(a: &QOperator, b: &QOperator, d: &QOperator) -> bool {
    let meet = |x: &QOperator, y: &QOperator| QOperator::meet(&[x, y]).unwrap();
    let join = |x: &QOperator, y: &QOperator| x.join(y).unwrap();
    let m = meet(a, b);
    let j = join(a, b);
    m == meet(b, a)
        && j == join(b, a)
        && meet(&m, d) == meet(a, &meet(b, d))
        && join(&j, d) == join(a, &join(b, d))
        && meet(a, a) == *a
        && join(a, a) == *a
        && meet(a, &j) == *a
        && join(a, &m) == *a
        && m.preceq(a).unwrap()
        && m.preceq(b).unwrap()
        && a.preceq(&j).unwrap()
        && b.preceq(&j).unwrap()
}

fn criterion_5() -> Outcome {
    let c = small_discrete();
    let mut mismatches = Vec::new();
    let mut confluent = 0;
    for seed in 0..DISCRETE_FAMILIES {
        let f = random_family(&mut rng(seed), &c, 1);
        let verdict = f.is_confluent().confluent;
        confluent += verdict as usize;
        if verdict != brute_force_confluent(&f) {
            mismatches.push(seed);
        }
    }
    check(mismatches.is_empty(), || format!("Obs disagrees with brute force at seeds {mismatches:?}"))?;
    let mut broken = Vec::new();
    for seed in 0..LATTICE_TRIPLES {
        let mut r = rng(10_000 + seed);
        let a = random_operator(&mut r, &c, 1, 3);
        let b = random_operator(&mut r, &c, 1, 3);
        let d = random_operator(&mut r, &c, 1, 3);
        if !lattice_laws(&a, &b, &d) {
            broken.push(seed);
        }
    }
    check(broken.is_empty(), || format!("lattice laws fail at seeds {broken:?}"))?;
    Ok(format!(
        "{DISCRETE_FAMILIES} families ({confluent} confluent) match brute force, {LATTICE_TRIPLES} lattice triples"
    ))
}

fn criterion_6() -> Outcome {
    let c = binary_words();
    for seed in 0..DUALITY_CASES {
        let mut r = rng(20_000 + seed);
        let t = random_word_operator(&mut r, WORD_LENGTH);
        let d = dual_operator(&t, WORD_LENGTH).unwrap();
        check(d.normal_forms() == t.heads().cloned().collect::<Vec<_>>(), || format!("nf(T!) != red(T), seed {seed}"))?;
        check(d.heads().cloned().collect::<Vec<_>>() == t.normal_forms(), || format!("red(T!) != nf(T), seed {seed}"))?;
        let phi = random_form(&mut r, &c, WORD_LENGTH);
        let v = random_vector(&mut r, &c, WORD_LENGTH, 4);
        let lhs = apply_dual(&d, &phi).unwrap().pair(&v).unwrap();
        let rhs = phi.pair(&v.sub(&t.apply(&v).unwrap()).unwrap()).unwrap();
        check(lhs == rhs, || format!("<T!(phi), v> = {lhs} but <phi, v - T(v)> = {rhs}, seed {seed}"))?;
        let star = adjoint(&t, &phi).unwrap();
        check(star.pair(&v).unwrap() == phi.pair(&t.apply(&v).unwrap()).unwrap(), || format!("adjoint, seed {seed}"))?;
    }
    Ok(format!("{DUALITY_CASES} random (T, phi, v) at length {WORD_LENGTH}, identities exact"))
}

fn criterion_7() -> Outcome {
    let c = binary_words();
    let rels = binary_value_relations::<Q>(&c);
    let l = GROEBNER_LENGTH;
    let gb = verify_groebner(&rels, &c, l).map_err(|e| e.to_string())?;
    check(gb.holds && gb.ambiguities.iter().all(|a| a.residual.is_zero()), || "an ambiguity does not resolve".into())?;

    let s = val_form::<Q>(&c, l + 2).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for u in c.monomials_up_to(l) {
        for v in c.monomials_up_to(l - u.degree()) {
            for f in &rels {
                let value = s.pair(&f.mul_monomials(&u, &v)).unwrap();
                check(value == q(0), || format!("<S, {u:?} f {v:?}> = {value}"))?;
                pairs += 1;
            }
        }
    }

    let t = operator_from_groebner(&rels, &c, l).map_err(|e| e.to_string())?;
    let s = val_form::<Q>(&c, l).unwrap();
    let sp = match represent(&s, &t, l).map_err(|e| e.to_string())? {
        Representation::Represented(sp) => sp,
        other => return Err(format!("{other:?}")),
    };
    let x1 = c.variable(0);
    for w in c.monomials_up_to(l) {
        let expected = if w == x1 { q(1) } else { q(0) };
        check(sp.value(&w).unwrap() == expected, || format!("S' = {sp}"))?;
    }

    let a = build_quotient(&rels, &c, 64).map_err(|e| e.to_string())?;
    let i = a.basis().iter().position(|m| *m == x1).ok_or("x1 is not a basis word")?;
    let form: Vec<Q> = (0..a.dim()).map(|j| if j == i { q(1) } else { q(0) }).collect();
    let ideal = greatest_ideal_in(&a, &form);
    check(ideal.is_empty(), || format!("greatest ideal has dimension {}", ideal.len()))?;
    let options = SyntacticOptions { witness: Some(form), ..SyntacticOptions::default() };
    check(matches!(check_syntactic(&a, &options).verdict, SyntacticVerdict::Syntactic { .. }), || "not syntactic".into())?;
    check(
        matches!(check_syntactic(&a, &SyntacticOptions::default()).verdict, SyntacticVerdict::Syntactic { .. }),
        || "random search found no witness".into(),
    )?;
    Ok(format!("{} ambiguities resolve, {pairs} pairings vanish, S' = {sp}, ideal {{0}}, syntactic", gb.ambiguities.len()))
}

fn criterion_8() -> Outcome {
    let c = Arc::new(MonomialContext::noncommutative(["x", "y"], Mode::Discrete).unwrap());
    let rels: Vec<QSeries> = ["x*x", "x*y", "y*x", "y*y"].iter().map(|s| series(&c, s)).collect();
    let a = build_quotient(&rels, &c, 64).map_err(|e| e.to_string())?;
    let report = check_syntactic(&a, &SyntacticOptions::default());
    let SyntacticVerdict::NotSyntactic { annihilator } = report.verdict else {
        return Err(format!("{:?}", report.verdict));
    };
    let x = a.coordinates(&series(&c, "x"));
    let y = a.coordinates(&series(&c, "y"));
    let mut rows = annihilator.clone();
    rows.extend([x, y]);
    check(annihilator.len() == 2 && rank(&rows, a.dim()) == 2, || "annihilator is not span{x, y}".into())?;
    let witnesses = sample_witnesses::<Q>(a.dim(), SYNTACTIC_SAMPLES, 0);
    let zero_ideal = witnesses.iter().filter(|w| greatest_ideal_in(&a, w).is_empty()).count();
    check(zero_ideal == 0, || format!("{zero_ideal} witnesses give ideal {{0}}"))?;
    Ok(format!("annihilator span{{x, y}}, {SYNTACTIC_SAMPLES} seeded witnesses all leave a nonzero ideal"))
}

fn criterion_9() -> Outcome {
    let d = SOUNDNESS_TRUNCATION;
    let mut total = 0;
    for seed in 0..SOUNDNESS_SYSTEMS {
        let (c, gens) = random_power_series_system(&mut rng(30_000 + seed));
        let low = operator_family(&gens, &c, d).unwrap().obstructions().obstructions;
        let high: Vec<_> = operator_family(&gens, &c, d + 2)
            .unwrap()
            .obstructions()
            .obstructions
            .into_iter()
            .filter(|m| m.degree() <= d)
            .collect();
        check(low == high, || format!("seed {seed}: {low:?} at D, {high:?} at D+2"))?;
        total += low.len();
    }
    Ok(format!("{SOUNDNESS_SYSTEMS} systems, {total} obstructions stable from D={d} to D={}", d + 2))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = Vec::new();
    for (n, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS criterion {n}: {detail}"),
            Err(detail) => {
                println!("FAIL criterion {n}: {detail}");
                failed.push(n);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
