//! Standard bases of ideals of power series.
//!
//! Each generator `f` gives the principal operator `T(f)` whose kernel is the
//! closed ideal spanned by the multiples `m·f`. A set of generators is a
//! standard basis exactly when the family of their principal operators is
//! confluent.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::confluence::{FamilyMember, ObstructionReport, OperatorFamily};
use crate::error::Error;
use crate::monomial::{Mode, Monomial, MonomialContext, Setting};
use crate::operator::ReductionOperator;
use crate::scalar::Scalar;
use crate::series::{Precision, Series};

#[derive(Clone, Debug, PartialEq)]
pub struct StandardBasisVerdict<F: Scalar> {
    pub truncation: u32,
    pub is_standard_basis: bool,
    pub report: ObstructionReport<F>,
}

/// Default working degree for a generating set: `2·max deg + 4`.
pub fn default_truncation<F: Scalar>(gens: &[Series<F>]) -> u32 {
    let top = gens.iter().filter_map(Series::max_degree).max().unwrap_or(0);
    2 * top + 4
}

/// The operator `T(f)` of the ideal generated by `f`, truncated at `truncation`.
///
/// Heads are the multiples of `lm(f)`; tails follow the recursion
/// `T(lm·m) = T(m·(lm - f/lc))`, evaluated in rewriting order so every
/// value it needs is already known.
pub fn principal_operator<F: Scalar>(
    f: &Series<F>,
    ctx: &Arc<MonomialContext>,
    truncation: u32,
) -> Result<ReductionOperator<F>, Error> {
    if f.context() != ctx {
        return Err(Error::ContextMismatch);
    }
    if ctx.setting() != Setting::Commutative {
        return Err(Error::Unsupported("a commutative context"));
    }
    if f.is_zero() {
        return Err(Error::ZeroGenerator { index: 0 });
    }
    let value_precision = match ctx.mode() {
        Mode::Adic => {
            if let Precision::Degree(p) = f.precision() {
                if p < truncation {
                    return Err(Error::InsufficientPrecision { precision: p, truncation });
                }
            }
            Precision::Degree(truncation)
        }
        Mode::Discrete => {
            if let Some(d) = f.max_degree().filter(|&d| d > truncation) {
                return Err(Error::OutsideTruncation { degree: d, truncation });
            }
            Precision::Exact
        }
    };
    let (lm, lc) = f.leading_term()?;
    let scale = -(F::one() / lc.clone());
    let rest: Vec<(Monomial, F)> = f
        .terms()
        .filter(|(m, _)| *m != lm)
        .map(|(m, c)| (m.clone(), c.clone() * scale.clone()))
        .collect();

    let mut heads: Vec<Monomial> = ctx
        .monomials_up_to(truncation)
        .into_iter()
        .filter(|m| lm.divides(m))
        .collect();
    heads.sort_by(|a, b| ctx.cmp_red(a, b));

    let mut table: BTreeMap<Monomial, Series<F>> = BTreeMap::new();
    for head in heads {
        let cofactor = head.quotient(lm).expect("multiple of lm");
        let mut tail = Series::zero(ctx, value_precision);
        for (u, c) in &rest {
            let m = cofactor.mul(u);
            if m.degree() > truncation {
                continue;
            }
            match table.get(&m) {
                Some(t) => tail.add_scaled(c, t),
                None => tail.add_term(m, c.clone()),
            }
        }
        table.insert(head, tail);
    }
    Ok(ReductionOperator::from_rules_unchecked(ctx, truncation, table))
}

/// `F(R) = {T(f) : f ∈ R}`, members labelled `f1, f2, ...` by position.
pub fn operator_family<F: Scalar>(
    gens: &[Series<F>],
    ctx: &Arc<MonomialContext>,
    truncation: u32,
) -> Result<OperatorFamily<F>, Error> {
    let members = gens
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let operator = principal_operator(f, ctx, truncation).map_err(|e| match e {
                Error::ZeroGenerator { .. } => Error::ZeroGenerator { index: i },
                e => e,
            })?;
            Ok(FamilyMember { label: format!("f{}", i + 1), operator, generator: Some(f.clone()) })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    OperatorFamily::new(members)
}

/// Whether `gens` is a standard basis of the ideal it generates, up to degree
/// `truncation`. Only meaningful for power series, so the context must be
/// commutative and adic.
pub fn is_standard_basis<F: Scalar>(
    gens: &[Series<F>],
    ctx: &Arc<MonomialContext>,
    truncation: u32,
) -> Result<StandardBasisVerdict<F>, Error> {
    if ctx.mode() != Mode::Adic || ctx.setting() != Setting::Commutative {
        return Err(Error::Unsupported("a commutative adic context"));
    }
    let family = operator_family(gens, ctx, truncation)?;
    let verdict = family.is_confluent();
    Ok(StandardBasisVerdict { truncation, is_standard_basis: verdict.confluent, report: verdict.report })
}
