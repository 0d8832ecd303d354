//! Seeded random instances and brute-force oracles shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use redop::{Mode, Monomial, MonomialContext, OperatorFamily, Precision, QOperator, QSeries, Series, Q};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn nonzero(rng: &mut ChaCha8Rng) -> Q {
    let n = *[-3, -2, -1, 1, 2, 3].choose(rng).unwrap();
    q(n)
}

/// Four variables at degree `<= 1`: the five basis elements `1, d, c, b, a`.
pub fn small_discrete() -> Arc<MonomialContext> {
    Arc::new(MonomialContext::commutative(["a", "b", "c", "d"], Mode::Discrete).unwrap())
}

/// Random combination of `terms` distinct monomials of degree `<= degree`.
pub fn random_vector(rng: &mut ChaCha8Rng, ctx: &Arc<MonomialContext>, degree: u32, terms: usize) -> QSeries {
    let all = ctx.monomials_up_to(degree);
    let picked: Vec<Monomial> = all.choose_multiple(rng, terms.min(all.len())).cloned().collect();
    Series::from_terms(ctx, picked.into_iter().map(|m| (m, nonzero(rng))), Precision::Exact)
}

pub fn random_kernel(rng: &mut ChaCha8Rng, ctx: &Arc<MonomialContext>, degree: u32, max_gens: usize) -> Vec<QSeries> {
    let k = rng.gen_range(0..=max_gens);
    (0..k)
        .map(|_| {
            let t = rng.gen_range(1..=3);
            random_vector(rng, ctx, degree, t)
        })
        .filter(|v| !v.is_zero())
        .collect()
}

pub fn random_operator(rng: &mut ChaCha8Rng, ctx: &Arc<MonomialContext>, degree: u32, max_gens: usize) -> QOperator {
    let gens = random_kernel(rng, ctx, degree, max_gens);
    QOperator::from_kernel(&gens, ctx, degree).unwrap()
}

pub fn random_family(rng: &mut ChaCha8Rng, ctx: &Arc<MonomialContext>, degree: u32) -> OperatorFamily<Q> {
    let n = rng.gen_range(1..=3);
    let ops = (0..n).map(|_| random_operator(rng, ctx, degree, 2)).collect();
    OperatorFamily::from_operators(ops).unwrap()
}

fn key(v: &QSeries) -> Vec<(Monomial, Q)> {
    v.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Classical confluence by exhaustive search: every basis element reaches
/// exactly one irreducible vector through whole-operator steps.
pub fn brute_force_confluent(family: &OperatorFamily<Q>) -> bool {
    let ctx = family.context();
    for g in ctx.monomials_up_to(family.truncation()) {
        let start = Series::from_terms(ctx, [(g, q(1))], Precision::Exact);
        let mut seen = BTreeSet::new();
        let mut terminal = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if !seen.insert(key(&v)) {
                continue;
            }
            assert!(seen.len() < 20_000, "rewriting graph unexpectedly large");
            let mut moved = false;
            for m in family.members() {
                let w = m.operator.apply(&v).unwrap();
                if w != v {
                    moved = true;
                    queue.push_back(w);
                }
            }
            if !moved {
                terminal.insert(key(&v));
            }
        }
        if terminal.len() != 1 {
            return false;
        }
    }
    true
}

/// Rule table of `ker^{-1}(span gens)` by dense reduced row echelon form,
/// with columns sorted from the greatest monomial for the rewriting order.
pub fn dense_rules(ctx: &Arc<MonomialContext>, degree: u32, gens: &[QSeries]) -> BTreeMap<Monomial, QSeries> {
    let mut cols = ctx.monomials_up_to(degree);
    cols.sort_by(|a, b| ctx.cmp_red(b, a));
    let n = cols.len();
    let mut rows: Vec<Vec<Q>> = gens
        .iter()
        .map(|g| cols.iter().map(|m| g.get(m).cloned().unwrap_or_else(|| q(0))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != q(0)) else { continue };
        rows.swap(r, p);
        let inv = q(1) / rows[r][c].clone();
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && rows[i][c] != q(0) {
                let f = rows[i][c].clone();
                rows[i] = rows[i].iter().zip(&rows[r]).map(|(a, b)| a - &f * b).collect();
            }
        }
        pivots.push(c);
        r += 1;
    }
    let precision = match ctx.mode() {
        Mode::Adic => Precision::Degree(degree),
        Mode::Discrete => Precision::Exact,
    };
    pivots
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let tail = (0..n)
                .filter(|&j| j != c && rows[i][j] != q(0))
                .map(|j| (cols[j].clone(), -rows[i][j].clone()));
            (cols[c].clone(), Series::from_terms(ctx, tail, precision))
        })
        .collect()
}

/// A random system of at most three generators of degree `<= 3` in at most
/// three variables, adic commutative.
pub fn random_power_series_system(rng: &mut ChaCha8Rng) -> (Arc<MonomialContext>, Vec<QSeries>) {
    let nvars = rng.gen_range(1..=3);
    let names = ["x", "y", "z"];
    let ctx = Arc::new(MonomialContext::commutative(names[..nvars].to_vec(), Mode::Adic).unwrap());
    let ngens = rng.gen_range(1..=3);
    let mut gens = Vec::new();
    while gens.len() < ngens {
        let terms = rng.gen_range(1..=3);
        let all: Vec<Monomial> = ctx.monomials_up_to(3).into_iter().filter(|m| m.degree() > 0).collect();
        let picked: Vec<Monomial> = all.choose_multiple(rng, terms.min(all.len())).cloned().collect();
        let g = Series::from_terms(&ctx, picked.into_iter().map(|m| (m, nonzero(rng))), Precision::Exact);
        if !g.is_zero() {
            gens.push(g);
        }
    }
    (ctx, gens)
}

/// Two letters, discrete, noncommutative: words up to length `L`.
pub fn binary_words() -> Arc<MonomialContext> {
    Arc::new(MonomialContext::noncommutative(["x1", "x0"], Mode::Discrete).unwrap())
}

pub fn random_word_operator(rng: &mut ChaCha8Rng, length: u32) -> QOperator {
    random_operator(rng, &binary_words(), length, 5)
}

pub fn random_form(rng: &mut ChaCha8Rng, ctx: &Arc<MonomialContext>, length: u32) -> redop::LinearForm<Q> {
    let mut values: Vec<(Monomial, Q)> = Vec::new();
    for m in ctx.monomials_up_to(length) {
        if rng.gen_bool(0.5) {
            values.push((m, q(rng.gen_range(-4..=4))));
        }
    }
    redop::LinearForm::from_values(ctx, length, values)
}
