use std::sync::Arc;

use redop::confluence::{FamilyMember, Granularity, JoinResult, RewriteTrace, Strategy};
use redop::duality::{dual_operator, represent, val_form};
use redop::groebner::{build_quotient, operator_from_groebner, verify_groebner, AmbiguityKind};
use redop::parse::parse_series;
use redop::standard_basis::{default_truncation, is_standard_basis, operator_family};
use redop::syntactic::{check_syntactic, greatest_ideal_in, SyntacticOptions};
use redop::{
    Comparison, LinearForm, Mode, MonomialContext, OperatorFamily, QAlgebra, QFamily, QForm, QOperator, QSeries,
    Representation, Series, Setting, SyntacticVerdict, Q,
};
use serde_json::Value;

use crate::problem::{Located, Problem, ProblemError, SeriesDef, DEFAULT_LIST};
use crate::report::{ContextInfo, Report, TraceStep, Witness};
use crate::{Command, Options};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Problem(#[from] ProblemError),
    #[error("{0}")]
    Engine(#[from] redop::Error),
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

pub fn context_info(ctx: &MonomialContext) -> ContextInfo {
    ContextInfo {
        mode: match ctx.mode() {
            Mode::Adic => "adic",
            Mode::Discrete => "discrete",
        }
        .to_string(),
        setting: match ctx.setting() {
            Setting::Commutative => "commutative",
            Setting::Noncommutative => "noncommutative",
        }
        .to_string(),
        vars: ctx.variables().to_vec(),
    }
}

fn mono(ctx: &MonomialContext, m: &redop::Monomial) -> String {
    ctx.display(m).to_string()
}

fn rule_lines(op: &QOperator) -> Vec<Value> {
    let ctx = op.context();
    op.rules().map(|(h, t)| Value::String(format!("{} -> {}", mono(ctx, h), t))).collect()
}

fn need_problem(p: Option<&Problem>) -> Result<&Problem> {
    p.ok_or_else(|| CliError::Usage("this command needs a problem file".into()))
}

fn truncation(p: &Problem, opts: &Options, default: Option<u32>) -> Result<u32> {
    opts.truncation
        .or(p.truncation)
        .or(default)
        .ok_or_else(|| CliError::Usage("missing section `truncation`".into()))
}

fn param<'a>(p: &'a Problem, key: &str) -> Result<&'a Located> {
    p.param(key).ok_or_else(|| CliError::Usage(format!("missing parameter `{key}` in the params section")))
}

fn vector(p: &Problem, opts: &Options, key: &str) -> Result<QSeries> {
    match (&opts.poly, key) {
        (Some(text), "vector") => Ok(parse_series(&p.ctx, text)?),
        _ => Ok(param(p, key)?.series(&p.ctx)?),
    }
}

fn choice<T: Copy>(p: &Problem, key: &str, options: &[(&str, T)], default: T) -> Result<T> {
    match p.param(key) {
        None => Ok(default),
        Some(item) => options.iter().find(|(n, _)| *n == item.text).map(|(_, v)| *v).ok_or_else(|| {
            let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
            item.error(0, format!("expected one of {}", names.join(", "))).into()
        }),
    }
}

fn natural(p: &Problem, key: &str, default: usize) -> Result<usize> {
    match p.param(key) {
        None => Ok(default),
        Some(item) => item.text.parse().map_err(|_| item.error(0, "expected a natural number").into()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Principal,
    Span,
    Ideal,
}

fn kind(p: &Problem) -> Result<Kind> {
    let default = match (p.ctx.mode(), p.ctx.setting()) {
        (Mode::Adic, Setting::Commutative) => Kind::Principal,
        (Mode::Discrete, Setting::Noncommutative) => Kind::Ideal,
        _ => Kind::Span,
    };
    choice(p, "kind", &[("principal", Kind::Principal), ("span", Kind::Span), ("ideal", Kind::Ideal)], default)
}

/// Operators named in `operators = A, B`, or every generator list, or one
/// operator per generator of `R`.
fn operator_list(p: &Problem, d: u32) -> Result<Vec<(String, QOperator)>> {
    if let Some(item) = p.param("operators") {
        return item
            .text
            .split(',')
            .map(|name| {
                let name = name.trim();
                let gens = p
                    .list(name)
                    .ok_or_else(|| item.error(0, format!("no generator list named `{name}`")))?;
                Ok((name.to_string(), QOperator::from_kernel(gens, &p.ctx, d)?))
            })
            .collect();
    }
    if p.lists.len() >= 2 {
        return p
            .lists
            .iter()
            .map(|(name, gens)| Ok((name.clone(), QOperator::from_kernel(gens, &p.ctx, d)?)))
            .collect();
    }
    p.generators()
        .iter()
        .enumerate()
        .map(|(i, g)| Ok((format!("f{}", i + 1), QOperator::from_kernel(std::slice::from_ref(g), &p.ctx, d)?)))
        .collect()
}

fn family(p: &Problem, d: u32) -> Result<QFamily> {
    if kind(p)? == Kind::Principal && p.param("operators").is_none() {
        return Ok(operator_family(p.generators(), &p.ctx, d)?);
    }
    let members = operator_list(p, d)?
        .into_iter()
        .map(|(label, operator)| FamilyMember { label, operator, generator: None })
        .collect();
    Ok(OperatorFamily::new(members)?)
}

fn family_truncation(p: &Problem, opts: &Options) -> Result<u32> {
    let default = (kind(p)? == Kind::Principal).then(|| default_truncation(p.generators()));
    truncation(p, opts, default)
}

/// The single operator of `dual` and `represent`.
fn single_operator(p: &Problem, d: u32) -> Result<QOperator> {
    let gens = match p.param("operators") {
        Some(item) => p.list(item.text.trim()).ok_or_else(|| item.error(0, "no generator list with this name"))?,
        None if p.list(DEFAULT_LIST).is_none() && !p.lists.is_empty() => p.lists[0].1.as_slice(),
        None => p.generators(),
    };
    Ok(match kind(p)? {
        Kind::Ideal => operator_from_groebner(gens, &p.ctx, d)?,
        _ => QOperator::from_kernel(gens, &p.ctx, d)?,
    })
}

fn form(p: Option<&Problem>, ctx: &Arc<MonomialContext>, name: &str, length: u32) -> Result<QForm> {
    let def = match p.and_then(|p| p.series_def(name)) {
        Some(d) => d.clone(),
        None if name == "val" => SeriesDef::Val,
        None => return usage(format!("unknown series `{name}`")),
    };
    Ok(match def {
        SeriesDef::Val => val_form(ctx, length)?,
        SeriesDef::Poly(s) => LinearForm::new(&s, length)?,
    })
}

fn trace_steps(branch: usize, t: &RewriteTrace<Q>) -> Vec<TraceStep> {
    let ctx = t.start.context();
    t.steps
        .iter()
        .map(|s| TraceStep {
            branch,
            step: s.granularity.to_string(),
            operator: s.label.clone(),
            head: mono(ctx, &s.head),
            result: s.result.to_string(),
            distance: s.distance.to_string(),
        })
        .collect()
}

fn epsilon_and_family(p: &Problem, opts: &Options) -> Result<(u32, QFamily)> {
    let d = family_truncation(p, opts)?;
    let k = opts.epsilon.unwrap_or(d);
    // distances below 2^-D cannot be resolved, so work at least to degree k
    let d = if p.ctx.mode() == Mode::Adic { d.max(k) } else { d };
    Ok((k, family(p, d)?))
}

fn traversal(p: &Problem) -> Result<(Granularity, Strategy)> {
    let g = choice(p, "granularity", &[("rule", Granularity::Rule), ("operator", Granularity::Operator)], Granularity::Rule)?;
    let s = choice(
        p,
        "strategy",
        &[
            ("greatest-first", Strategy::GreatestFirst),
            ("greatest-last", Strategy::GreatestLast),
            ("least-first", Strategy::LeastFirst),
        ],
        Strategy::GreatestFirst,
    )?;
    Ok((g, s))
}

fn quotient(p: &Problem, opts: &Options) -> Result<QAlgebra> {
    let l = truncation(p, opts, Some(6))?;
    let v = verify_groebner(p.generators(), &p.ctx, l)?;
    if !v.holds {
        return usage(format!("the relations are not a Gröbner basis up to length {l}"));
    }
    let bound = natural(p, "bound", 1000)?;
    Ok(build_quotient(p.generators(), &p.ctx, bound)?)
}

/// Values of a form on the basis of `a`, read from a polynomial supported on
/// normal words.
fn basis_form(a: &QAlgebra, item: &Located, ctx: &Arc<MonomialContext>) -> Result<Vec<Q>> {
    let s = item.series(ctx)?;
    if let Some(m) = s.support().find(|m| !a.basis().contains(m)) {
        return Err(item.error(0, format!("{} is not a normal word of the quotient", mono(ctx, m))).into());
    }
    Ok(a.basis().iter().map(|m| s.get(m).cloned().unwrap_or_default()).collect())
}

fn span_text(a: &QAlgebra, vectors: &[Vec<Q>]) -> String {
    if vectors.is_empty() {
        return "{0}".into();
    }
    let items: Vec<String> = vectors.iter().map(|v| a.element(v).to_string()).collect();
    format!("span{{{}}}", items.join(", "))
}

fn q_text(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn execute(command: Command, problem: Option<&Problem>, opts: &Options) -> Result<Report> {
    let ctx_info = problem.map(|p| context_info(&p.ctx));
    let mut r = Report::new(command.name(), ctx_info);
    match command {
        Command::CheckStandardBasis => {
            let p = need_problem(problem)?;
            let d = truncation(p, opts, Some(default_truncation(p.generators())))?;
            let v = is_standard_basis(p.generators(), &p.ctx, d)?;
            r.truncation = Some(d);
            let ctx = &p.ctx;
            r.obstructions = v.report.minimal.iter().map(|m| mono(ctx, m)).collect();
            r.witnesses = v
                .report
                .witnesses
                .iter()
                .map(|(m, w)| Witness { monomial: mono(ctx, m), series: w.to_string() })
                .collect();
            r.set("generators", p.generators().len());
            r.set("obstruction_count", v.report.obstructions.len());
            if v.is_standard_basis {
                r.verdict = format!("standard basis up to degree {d}");
            } else {
                r.verdict = format!("not a standard basis up to degree {d}");
                r.exit = 1;
            }
        }
        Command::Obstructions => {
            let p = need_problem(problem)?;
            let d = family_truncation(p, opts)?;
            let f = family(p, d)?;
            let rep = f.obstructions();
            let ctx = &p.ctx;
            r.truncation = Some(d);
            r.obstructions = rep.minimal.iter().map(|m| mono(ctx, m)).collect();
            r.witnesses = rep.witnesses.iter().map(|(m, w)| Witness { monomial: mono(ctx, m), series: w.to_string() }).collect();
            r.set("all", Value::Array(rep.obstructions.iter().map(|m| Value::String(mono(ctx, m))).collect()));
            r.set("operators", Value::Array(f.members().iter().map(|m| Value::String(m.label.clone())).collect()));
            if rep.is_empty() {
                r.verdict = format!("confluent up to degree {d}");
            } else {
                r.verdict = format!("not confluent up to degree {d}");
                r.exit = 1;
            }
        }
        Command::Reduce => {
            let p = need_problem(problem)?;
            let d = family_truncation(p, opts)?;
            let f = family(p, d)?;
            let v = vector(p, opts, "vector")?;
            let out = f.meet().apply(&v)?;
            r.truncation = Some(d);
            r.verdict = format!("{v} => {out}");
            r.set("result", out.to_string());
        }
        Command::Trace => {
            let p = need_problem(problem)?;
            let (k, f) = epsilon_and_family(p, opts)?;
            let (g, s) = traversal(p)?;
            let v = vector(p, opts, "vector")?;
            let t = f.rewrite_trace(&v, g, s, k, opts.budget)?;
            r.truncation = Some(f.truncation());
            r.trace = trace_steps(0, &t);
            r.set("target", t.target.to_string());
            r.set("final_distance", t.final_distance.to_string());
            if t.complete {
                r.verdict = format!("reached 2^-{k} of {} after {} steps", t.target, t.steps.len());
            } else {
                r.verdict = format!("not within 2^-{k} of {} after {} steps", t.target, t.steps.len());
                r.exit = 1;
            }
        }
        Command::Joinable => {
            let p = need_problem(problem)?;
            let (k, f) = epsilon_and_family(p, opts)?;
            let (g, _) = traversal(p)?;
            let left = vector(p, opts, "left")?;
            let right = vector(p, opts, "right")?;
            let j = f.joinable(&left, &right, g, k, opts.budget)?;
            r.truncation = Some(f.truncation());
            let [t1, t2] = j.traces();
            r.trace = trace_steps(0, t1);
            r.trace.extend(trace_steps(1, t2));
            match &j {
                JoinResult::Yes { witness, .. } => {
                    r.verdict = format!("joinable within 2^-{k}: common target {witness}");
                    r.set("witness", witness.to_string());
                }
                JoinResult::NotWithinBudget { .. } => {
                    r.verdict = format!("not joinable within 2^-{k} and {} steps", opts.budget);
                    r.exit = 1;
                }
            }
        }
        Command::Meet | Command::Join => {
            let p = need_problem(problem)?;
            let d = truncation(p, opts, None)?;
            let ops = operator_list(p, d)?;
            let Some(((_, first), rest)) = ops.split_first() else {
                return usage("no operators given");
            };
            let out = if command == Command::Meet {
                let refs: Vec<&QOperator> = ops.iter().map(|(_, o)| o).collect();
                QOperator::meet(&refs)?
            } else {
                rest.iter().try_fold(first.clone(), |acc, (_, o)| acc.join(o))?
            };
            let names: Vec<&str> = ops.iter().map(|(n, _)| n.as_str()).collect();
            r.truncation = Some(d);
            r.verdict = format!("{} of {}: {} rules", command.name(), names.join(", "), out.num_rules());
            r.set("rules", Value::Array(rule_lines(&out)));
        }
        Command::Compare => {
            let p = need_problem(problem)?;
            let d = truncation(p, opts, None)?;
            let ops = operator_list(p, d)?;
            let [(n1, t1), (n2, t2)] = ops.as_slice() else {
                return usage(format!("compare needs exactly two operators, got {}", ops.len()));
            };
            let c = t1.compare(t2)?;
            r.truncation = Some(d);
            r.verdict = match c {
                Comparison::Equal => format!("{n1} = {n2}"),
                Comparison::Less => format!("{n1} < {n2}"),
                Comparison::Greater => format!("{n1} > {n2}"),
                Comparison::Incomparable => format!("{n1} and {n2} are incomparable"),
            };
            r.set("comparison", c.to_string());
            if c == Comparison::Incomparable {
                r.exit = 1;
            }
        }
        Command::Dual => {
            let p = need_problem(problem)?;
            let l = truncation(p, opts, None)?;
            let t = single_operator(p, l)?;
            let d = dual_operator(&t, l)?;
            r.truncation = Some(l);
            r.verdict = format!("dual operator up to length {l}: {} rules", d.num_rules());
            r.set("rules", Value::Array(rule_lines(&d)));
            r.set("normal_forms", Value::Array(d.normal_forms().iter().map(|m| Value::String(mono(&p.ctx, m))).collect()));
        }
        Command::Pair => {
            let ctx = match problem {
                Some(p) => p.ctx.clone(),
                None => Arc::new(MonomialContext::noncommutative(["x1", "x0"], Mode::Discrete)?),
            };
            let target: QSeries = match (&opts.word, &opts.poly) {
                (Some(digits), None) => {
                    let mut letters = Vec::new();
                    for ch in digits.chars() {
                        let name = format!("x{ch}");
                        match ctx.variable_index(&name) {
                            Some(i) => letters.push(i),
                            None => return usage(format!("no variable `{name}` for digit `{ch}`")),
                        }
                    }
                    if ctx.setting() != Setting::Noncommutative {
                        return usage("--word needs a noncommutative context");
                    }
                    Series::monomial(&ctx, ctx.word(&letters), Q::from_integer(1.into()))
                }
                (None, Some(text)) => parse_series(&ctx, text)?,
                _ => return usage("pair needs exactly one of --word or --poly"),
            };
            let name = opts.series.clone().unwrap_or_else(|| "val".into());
            let length = target.max_degree().unwrap_or(0);
            let s = form(problem, &ctx, &name, length)?;
            let value = s.pair(&target)?;
            r.verdict = value.to_string();
            r.set("series", name);
            r.set("polynomial", target.to_string());
        }
        Command::Represent => {
            let p = need_problem(problem)?;
            let l = truncation(p, opts, None)?;
            let t = single_operator(p, l)?;
            let name = match (&opts.series, p.param("series")) {
                (Some(n), _) => n.clone(),
                (None, Some(item)) => item.text.clone(),
                (None, None) => "val".into(),
            };
            let s = form(Some(p), &p.ctx, &name, l)?;
            r.truncation = Some(l);
            match represent(&s, &t, l)? {
                Representation::Represented(sp) => {
                    r.verdict = format!("represented up to length {l}: {name}' = {sp}");
                    r.set("restriction", sp.to_string());
                }
                Representation::NotRepresented { word, expected, found } => {
                    let w = mono(&p.ctx, &word);
                    r.verdict = format!("not represented: at {w}, <{name}, {w}> = {expected} but <{name}', T({w})> = {found}");
                    r.set("word", w);
                    r.exit = 1;
                }
            }
        }
        Command::VerifyGroebner => {
            let p = need_problem(problem)?;
            let l = truncation(p, opts, Some(6))?;
            let v = verify_groebner(p.generators(), &p.ctx, l)?;
            r.truncation = Some(l);
            let lines: Vec<Value> = v
                .ambiguities
                .iter()
                .map(|a| {
                    let kind = match a.kind {
                        AmbiguityKind::Overlap => "overlap",
                        AmbiguityKind::Inclusion => "inclusion",
                    };
                    Value::String(format!(
                        "{kind} {} (f{}, f{}): residual {}",
                        mono(&p.ctx, &a.word),
                        a.relations.0 + 1,
                        a.relations.1 + 1,
                        a.residual
                    ))
                })
                .collect();
            r.set("ambiguities", Value::Array(lines));
            if v.holds {
                r.verdict = format!("Gröbner basis up to length {l}");
            } else {
                r.verdict = format!("not a Gröbner basis up to length {l}");
                r.exit = 1;
            }
        }
        Command::CheckSyntactic => {
            let p = need_problem(problem)?;
            let a = quotient(p, opts)?;
            let witness = match (p.param("witness"), &opts.series) {
                (Some(item), _) => Some(basis_form(&a, item, &p.ctx)?),
                (None, Some(name)) => {
                    let l = a.basis().iter().map(|m| m.degree()).max().unwrap_or(0);
                    let s = form(Some(p), &p.ctx, name, l)?;
                    Some(a.basis().iter().map(|m| s.value(m)).collect::<std::result::Result<Vec<_>, _>>()?)
                }
                (None, None) => None,
            };
            let samples = natural(p, "samples", 200)?;
            let rep = check_syntactic(&a, &SyntacticOptions { witness, samples, seed: opts.seed });
            r.set("basis", Value::Array(a.basis().iter().map(|m| Value::String(mono(&p.ctx, m))).collect()));
            r.set("examined", rep.examined.len());
            match rep.verdict {
                SyntacticVerdict::Syntactic { witness } => {
                    r.verdict = format!("syntactic: greatest ideal in ker(s) is {{0}} for s = {}", a.element(&witness));
                    r.set("witness", q_text(&witness));
                }
                SyntacticVerdict::NotSyntactic { annihilator } => {
                    r.verdict = format!("not syntactic: annihilator {} has dimension {}", span_text(&a, &annihilator), annihilator.len());
                    r.set("annihilator", Value::Array(annihilator.iter().map(|v| q_text(v)).collect()));
                    r.exit = 1;
                }
                SyntacticVerdict::Unknown { samples } => {
                    r.verdict = format!("unknown: no witness among {samples} samples (seed {}) and no refutation", opts.seed);
                    r.exit = 1;
                }
            }
        }
        Command::GreatestIdeal => {
            let p = need_problem(problem)?;
            let a = quotient(p, opts)?;
            let s = basis_form(&a, param(p, "form")?, &p.ctx)?;
            let j = greatest_ideal_in(&a, &s);
            r.verdict = format!("greatest ideal in ker(s): {}", span_text(&a, &j));
            r.set("dimension", j.len());
            r.set("basis", Value::Array(a.basis().iter().map(|m| Value::String(mono(&p.ctx, m))).collect()));
        }
    }
    Ok(r)
}
