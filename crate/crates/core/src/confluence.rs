//! Families of reduction operators, their obstructions and topological
//! rewriting.
//!
//! A family `F` rewrites `v →_F T(v)` for each `T ∈ F`. It is confluent when
//! every monomial that is a normal form for all of `F` is still a normal form
//! for the meet `∧F`; the monomials where this fails are the obstructions.
//! Rewriting is exposed at two granularities: whole-operator steps
//! `v ↦ T(v)`, and rule steps replacing one monomial occurrence.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::monomial::{Mode, Monomial, MonomialContext, Setting};
use crate::operator::ReductionOperator;
use crate::scalar::Scalar;
use crate::series::{Distance, Series};

/// One labelled operator of a family. Principal operators keep their
/// defining generator so rule steps can use the elementary reduction
/// `lm(f)·m ↦ (lm(f) - f/lc(f))·m`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMember<F: Scalar> {
    pub label: String,
    pub operator: ReductionOperator<F>,
    pub generator: Option<Series<F>>,
}

#[derive(Clone, Debug)]
pub struct OperatorFamily<F: Scalar> {
    ctx: Arc<MonomialContext>,
    truncation: u32,
    members: Vec<FamilyMember<F>>,
    meet: ReductionOperator<F>,
}

/// Rewriting granularity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Granularity {
    /// `v ↦ T(v)` for a whole operator.
    Operator,
    /// Replace a single monomial occurrence using one rule.
    Rule,
}

/// Which reducible monomial and which operator to use next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Greatest reducible monomial for the rewriting order, first operator
    /// of the family that reduces it.
    #[default]
    GreatestFirst,
    /// Greatest reducible monomial, last operator that reduces it.
    GreatestLast,
    /// Smallest reducible monomial, first operator that reduces it.
    LeastFirst,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RewriteStep<F: Scalar> {
    pub granularity: Granularity,
    pub label: String,
    pub head: Monomial,
    pub result: Series<F>,
    /// `δ(result, target)`.
    pub distance: Distance,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RewriteTrace<F: Scalar> {
    pub start: Series<F>,
    pub target: Series<F>,
    pub steps: Vec<RewriteStep<F>>,
    pub final_distance: Distance,
    /// Whether the target was reached within `2^-epsilon_exp`.
    pub complete: bool,
    pub epsilon_exp: u32,
}

impl<F: Scalar> RewriteTrace<F> {
    pub fn last(&self) -> &Series<F> {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    /// Distances to the target never increase along the trace.
    pub fn is_monotone(&self) -> bool {
        let mut prev: Option<Distance> = None;
        for s in &self.steps {
            if let Some(p) = prev {
                if s.distance.cmp_bound(p) == Ordering::Greater {
                    return false;
                }
            }
            prev = Some(s.distance);
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum JoinResult<F: Scalar> {
    Yes { witness: Series<F>, traces: [RewriteTrace<F>; 2] },
    /// No common target was reached within the step budget and `ε`.
    NotWithinBudget { traces: [RewriteTrace<F>; 2] },
}

impl<F: Scalar> JoinResult<F> {
    pub fn is_yes(&self) -> bool {
        matches!(self, JoinResult::Yes { .. })
    }

    pub fn traces(&self) -> &[RewriteTrace<F>; 2] {
        match self {
            JoinResult::Yes { traces, .. } | JoinResult::NotWithinBudget { traces } => traces,
        }
    }
}

/// `Obs_F` up to the truncation degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport<F: Scalar> {
    pub truncation: u32,
    /// All obstructions, increasing deglex.
    pub obstructions: Vec<Monomial>,
    /// Obstructions not divisible by a smaller obstruction.
    pub minimal: Vec<Monomial>,
    /// For each minimal obstruction `g`, the kernel element `g - (∧F)(g)`.
    pub witnesses: Vec<(Monomial, Series<F>)>,
}

impl<F: Scalar> ObstructionReport<F> {
    pub fn is_empty(&self) -> bool {
        self.obstructions.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConfluenceVerdict<F: Scalar> {
    /// Confluent up to degree `report.truncation`.
    pub confluent: bool,
    pub report: ObstructionReport<F>,
}

/// Residual of the S-series of one pair of principal generators.
#[derive(Clone, Debug, PartialEq)]
pub struct PairResidual<F: Scalar> {
    pub labels: (String, String),
    pub common_multiple: Monomial,
    pub s_series: Series<F>,
    pub residual: Series<F>,
}

/// `v = Σ λ_i (g_i - T_i(g_i)) + r` with every `g_i` at most `lm(v)` and
/// `lm(r)` strictly below `lm(v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleDecomposition<F: Scalar> {
    pub target: Series<F>,
    /// `(λ_i, g_i, label of T_i)`.
    pub terms: Vec<(F, Monomial, String)>,
    pub remainder: Series<F>,
}

impl<F: Scalar> OperatorFamily<F> {
    pub fn new(members: Vec<FamilyMember<F>>) -> Result<Self, Error> {
        let first = members.first().ok_or(Error::EmptyFamily)?;
        let ctx = first.operator.context().clone();
        let truncation = first.operator.truncation();
        let mut labels = BTreeSet::new();
        for m in &members {
            if !labels.insert(m.label.as_str()) {
                return Err(Error::InvalidContext(format!("duplicate family label `{}`", m.label)));
            }
            if m.operator.context() != &ctx {
                return Err(Error::ContextMismatch);
            }
            if m.operator.truncation() != truncation {
                return Err(Error::TruncationMismatch(truncation, m.operator.truncation()));
            }
        }
        let ops: Vec<&ReductionOperator<F>> = members.iter().map(|m| &m.operator).collect();
        let meet = ReductionOperator::meet(&ops)?;
        Ok(Self { ctx, truncation, members, meet })
    }

    /// A family of operators given without generators, labelled `T1, T2, ...`.
    pub fn from_operators(ops: Vec<ReductionOperator<F>>) -> Result<Self, Error> {
        Self::new(
            ops.into_iter()
                .enumerate()
                .map(|(i, operator)| FamilyMember { label: format!("T{}", i + 1), operator, generator: None })
                .collect(),
        )
    }

    pub fn context(&self) -> &Arc<MonomialContext> {
        &self.ctx
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn members(&self) -> &[FamilyMember<F>] {
        &self.members
    }

    /// The cached `∧F`.
    pub fn meet(&self) -> &ReductionOperator<F> {
        &self.meet
    }

    fn is_reducible(&self, m: &Monomial) -> bool {
        self.members.iter().any(|mem| mem.operator.is_head(m))
    }

    /// `nf(F)`: monomials of degree `<= D` fixed by every operator.
    pub fn normal_forms(&self) -> Vec<Monomial> {
        self.ctx
            .monomials_up_to(self.truncation)
            .into_iter()
            .filter(|m| !self.is_reducible(m))
            .collect()
    }

    pub fn obstructions(&self) -> ObstructionReport<F> {
        let obstructions: Vec<Monomial> = self
            .normal_forms()
            .into_iter()
            .filter(|m| self.meet.is_head(m))
            .collect();
        let minimal: Vec<Monomial> = obstructions
            .iter()
            .filter(|g| !obstructions.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        let witnesses = minimal
            .iter()
            .map(|g| {
                let mut w = Series::from_terms(&self.ctx, [(g.clone(), F::one())], self.meet.image_of(g).precision());
                w.add_scaled(&-F::one(), &self.meet.image_of(g));
                (g.clone(), w)
            })
            .collect();
        ObstructionReport { truncation: self.truncation, obstructions, minimal, witnesses }
    }

    pub fn is_confluent(&self) -> ConfluenceVerdict<F> {
        let report = self.obstructions();
        ConfluenceVerdict { confluent: report.is_empty(), report }
    }

    /// The single-monomial replacement used by a rule step: what `1·g`
    /// becomes.
    fn rule_replacement(&self, member: &FamilyMember<F>, g: &Monomial) -> Series<F> {
        match &member.generator {
            Some(f) => elementary_replacement(f, g, self.truncation)
                .unwrap_or_else(|| member.operator.image_of(g)),
            None => member.operator.image_of(g),
        }
    }

    /// Picks the next reducible monomial of `v` and the member reducing it.
    fn select(&self, v: &Series<F>, strategy: Strategy) -> Option<(Monomial, F, usize)> {
        let mut candidates: Box<dyn Iterator<Item = (&Monomial, &F)>> = match strategy {
            Strategy::GreatestFirst | Strategy::GreatestLast => v.terms_red_desc(),
            Strategy::LeastFirst => {
                let items: Vec<_> = v.terms_red_desc().collect();
                Box::new(items.into_iter().rev())
            }
        };
        let (m, c) = candidates.find(|(m, _)| self.is_reducible(m))?;
        let mut owners = self.members.iter().enumerate().filter(|(_, mem)| mem.operator.is_head(m));
        let idx = match strategy {
            Strategy::GreatestLast => owners.next_back()?.0,
            _ => owners.next()?.0,
        };
        Some((m.clone(), c.clone(), idx))
    }

    fn step(&self, v: &Series<F>, granularity: Granularity, strategy: Strategy) -> Option<(Series<F>, Monomial, usize)> {
        let (m, c, idx) = self.select(v, strategy)?;
        let member = &self.members[idx];
        let next = match granularity {
            Granularity::Operator => member.operator.apply(v).expect("admitted vector"),
            Granularity::Rule => {
                let mut next = v.clone();
                next.remove(&m);
                next.add_scaled(&c, &self.rule_replacement(member, &m));
                next
            }
        };
        Some((next, m, idx))
    }

    fn admit(&self, v: &Series<F>) -> Result<Series<F>, Error> {
        // apply of the meet checks the context and truncation bounds
        self.meet.apply(v)?;
        Ok(match self.ctx.mode() {
            Mode::Adic => v.truncate(self.truncation),
            Mode::Discrete => v.clone(),
        })
    }

    /// Rewrites `v` toward `(∧F)(v)` until it is within `2^-epsilon_exp` of
    /// it, no rewriting applies, or `budget` steps are spent.
    pub fn rewrite_trace(
        &self,
        v: &Series<F>,
        granularity: Granularity,
        strategy: Strategy,
        epsilon_exp: u32,
        budget: usize,
    ) -> Result<RewriteTrace<F>, Error> {
        let target = self.meet.apply(v)?;
        self.rewrite_toward(v, &target, granularity, strategy, epsilon_exp, budget)
    }

    /// Like [`rewrite_trace`](Self::rewrite_trace) with an explicit target.
    pub fn rewrite_toward(
        &self,
        v: &Series<F>,
        target: &Series<F>,
        granularity: Granularity,
        strategy: Strategy,
        epsilon_exp: u32,
        budget: usize,
    ) -> Result<RewriteTrace<F>, Error> {
        let mut current = self.admit(v)?;
        let mut steps = Vec::new();
        let reached = |cur: &Series<F>| -> Result<(bool, Distance), Error> {
            let diff = cur.sub(target)?;
            let d = diff.norm();
            // equal on every known degree: nothing further can be resolved
            Ok((d.within(epsilon_exp) || diff.is_zero(), d))
        };
        let (mut done, mut dist) = reached(&current)?;
        while !done && steps.len() < budget {
            let Some((next, head, idx)) = self.step(&current, granularity, strategy) else {
                break;
            };
            current = next;
            (done, dist) = reached(&current)?;
            steps.push(RewriteStep {
                granularity,
                label: self.members[idx].label.clone(),
                head,
                result: current.clone(),
                distance: dist,
            });
        }
        Ok(RewriteTrace {
            start: v.clone(),
            target: target.clone(),
            steps,
            final_distance: dist,
            complete: done,
            epsilon_exp,
        })
    }

    /// Budget-bounded search for a common `⇒_F` target of `v1` and `v2`.
    pub fn joinable(
        &self,
        v1: &Series<F>,
        v2: &Series<F>,
        granularity: Granularity,
        epsilon_exp: u32,
        budget: usize,
    ) -> Result<JoinResult<F>, Error> {
        let witness = if v1 == v2 { self.admit(v1)? } else { self.meet.apply(v1)? };
        let strategy = Strategy::default();
        let t1 = self.rewrite_toward(v1, &witness, granularity, strategy, epsilon_exp, budget)?;
        let t2 = self.rewrite_toward(v2, &witness, granularity, strategy, epsilon_exp, budget)?;
        Ok(if t1.complete && t2.complete {
            JoinResult::Yes { witness, traces: [t1, t2] }
        } else {
            JoinResult::NotWithinBudget { traces: [t1, t2] }
        })
    }

    /// Fully reduces `v` by elementary rule steps (default strategy).
    pub fn reduce_by_rules(&self, v: &Series<F>) -> Result<Series<F>, Error> {
        let mut current = self.admit(v)?;
        while let Some((next, _, _)) = self.step(&current, Granularity::Rule, Strategy::GreatestFirst) {
            current = next;
        }
        Ok(current)
    }

    /// Reduces the S-series of every pair of principal generators whose
    /// common multiple has degree `<= D`.
    pub fn s_series_reduce_all(&self) -> Result<Vec<PairResidual<F>>, Error> {
        if self.ctx.setting() != Setting::Commutative {
            return Err(Error::Unsupported("a commutative context"));
        }
        let gens: Vec<(&str, &Series<F>)> = self
            .members
            .iter()
            .map(|m| m.generator.as_ref().map(|g| (m.label.as_str(), g)).ok_or_else(|| Error::MissingGenerator(m.label.clone())))
            .collect::<Result<_, _>>()?;
        let mut out = Vec::new();
        for (i, (li, fi)) in gens.iter().enumerate() {
            for (lj, fj) in gens.iter().skip(i + 1) {
                let (mi, ci) = fi.leading_term()?;
                let (mj, cj) = fj.leading_term()?;
                let lcm = mi.lcm(mj).expect("commutative");
                if lcm.degree() > self.truncation {
                    continue;
                }
                let ui = lcm.quotient(mi).expect("divides");
                let uj = lcm.quotient(mj).expect("divides");
                let one = self.ctx.one();
                let mut s = fi.mul_monomials(&ui, &one).scale(&(F::one() / ci.clone()));
                s.add_scaled(&-(F::one() / cj.clone()), &fj.mul_monomials(&uj, &one));
                let s = self.admit(&s)?;
                let residual = self.reduce_by_rules(&s)?;
                out.push(PairResidual {
                    labels: (li.to_string(), lj.to_string()),
                    common_multiple: lcm,
                    s_series: s,
                    residual,
                });
            }
        }
        Ok(out)
    }

    /// An admissible decomposition of `v ∈ ker(∧F)`, read off the rule-table
    /// rewriting of `v` to its `F`-normal form.
    pub fn admissible_decomposition(&self, v: &Series<F>) -> Result<AdmissibleDecomposition<F>, Error> {
        if !self.meet.apply(v)?.is_zero() {
            return Err(Error::NotInKernel);
        }
        let target = self.admit(v)?;
        let mut current = target.clone();
        let mut grouped: BTreeMap<(Monomial, usize), F> = BTreeMap::new();
        while let Some((m, c, idx)) = self.select(&current, Strategy::GreatestFirst) {
            let t = self.members[idx].operator.image_of(&m);
            current.remove(&m);
            current.add_scaled(&c, &t);
            let e = grouped.entry((m, idx)).or_insert_with(F::zero);
            *e = e.clone() + c;
        }
        if let (Ok((lv, _)), Ok((lr, _))) = (target.leading_term(), current.leading_term()) {
            if self.ctx.cmp_red(lr, lv) != Ordering::Less {
                return Err(Error::NotAdmissible);
            }
        }
        let mut terms: Vec<(F, Monomial, String)> = grouped
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((m, idx), c)| (c, m, self.members[idx].label.clone()))
            .collect();
        terms.sort_by(|a, b| self.ctx.cmp_red(&b.1, &a.1).then_with(|| a.2.cmp(&b.2)));
        Ok(AdmissibleDecomposition { target, terms, remainder: current })
    }

    pub fn member(&self, label: &str) -> Option<&FamilyMember<F>> {
        self.members.iter().find(|m| m.label == label)
    }
}

impl<F: Scalar> AdmissibleDecomposition<F> {
    /// Re-checks every invariant by direct arithmetic against `family`.
    pub fn validate(&self, family: &OperatorFamily<F>) -> bool {
        let ctx = family.context();
        let mut rebuilt = self.remainder.clone();
        let lv = self.target.leading_monomial();
        for (lambda, g, label) in &self.terms {
            let Some(member) = family.member(label) else {
                return false;
            };
            if lambda.is_zero() || !member.operator.is_head(g) {
                return false;
            }
            if let Some(lv) = lv {
                if ctx.cmp_red(g, lv) == Ordering::Greater {
                    return false;
                }
            }
            let mut k = Series::from_terms(ctx, [(g.clone(), F::one())], self.remainder.precision());
            k.add_scaled(&-F::one(), &member.operator.image_of(g));
            rebuilt.add_scaled(lambda, &k);
        }
        if let (Some(lv), Some(lr)) = (lv, self.remainder.leading_monomial()) {
            if ctx.cmp_red(lr, lv) != Ordering::Less {
                return false;
            }
        }
        if !family.meet().apply(&self.remainder).map(|r| r.is_zero()).unwrap_or(false) {
            return false;
        }
        rebuilt.sub(&self.target).map(|d| d.is_zero()).unwrap_or(false)
    }
}

/// `g ↦ a·(lm(f) - f/lc(f))·b` when `g = a·lm(f)·b`, truncated at `truncation`
/// in adic mode.
fn elementary_replacement<F: Scalar>(f: &Series<F>, g: &Monomial, truncation: u32) -> Option<Series<F>> {
    let ctx = f.context();
    let (lm, lc) = f.leading_term().ok()?;
    let (left, right) = match ctx.setting() {
        Setting::Commutative => (g.quotient(lm)?, ctx.one()),
        Setting::Noncommutative => g.split_at_factor(lm)?,
    };
    let mut out = f.mul_monomials(&left, &right).scale(&-(F::one() / lc.clone()));
    out.remove(g);
    Some(match ctx.mode() {
        Mode::Adic => out.truncate(truncation),
        Mode::Discrete => out,
    })
}

impl fmt::Display for Granularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Granularity::Operator => "operator-step",
            Granularity::Rule => "rule-step",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_series;
    use crate::standard_basis::operator_family;
    use crate::Q;

    fn adic() -> Arc<MonomialContext> {
        Arc::new(MonomialContext::commutative(["x", "y", "z"], Mode::Adic).unwrap())
    }

    fn abc() -> Arc<MonomialContext> {
        Arc::new(MonomialContext::commutative(["c", "b", "a"], Mode::Discrete).unwrap())
    }

    fn s(c: &Arc<MonomialContext>, e: &str) -> Series<Q> {
        parse_series(c, e).unwrap()
    }

    fn family_r(d: u32) -> OperatorFamily<Q> {
        let c = adic();
        let r: Vec<_> = ["z - y", "z - x", "y - y^2", "x - x^2"].iter().map(|e| s(&c, e)).collect();
        operator_family(&r, &c, d).unwrap()
    }

    fn family_r_prime(d: u32) -> OperatorFamily<Q> {
        let c = adic();
        let r: Vec<_> = ["z - y", "z - x"].iter().map(|e| s(&c, e)).collect();
        operator_family(&r, &c, d).unwrap()
    }

    fn discrete_pair() -> OperatorFamily<Q> {
        let c = abc();
        let t1 = ReductionOperator::from_kernel(&[s(&c, "c - b")], &c, 1).unwrap();
        let t2 = ReductionOperator::from_kernel(&[s(&c, "c - a")], &c, 1).unwrap();
        OperatorFamily::from_operators(vec![t1, t2]).unwrap()
    }

    #[test]
    fn obstruction_examples() {
        assert!(family_r(8).obstructions().is_empty());
        let f = discrete_pair();
        let rep = f.obstructions();
        assert_eq!(rep.obstructions, vec![f.context().variable(1)]);
        let fp = family_r_prime(8);
        let rep = fp.obstructions();
        let c = fp.context();
        assert_eq!(rep.minimal, vec![c.variable(1)]);
        assert_eq!(rep.witnesses[0].1, s(c, "y - x").truncate(8));
    }

    #[test]
    fn confluence_verdicts() {
        assert!(family_r(8).is_confluent().confluent);
        assert!(!discrete_pair().is_confluent().confluent);
        let c = abc();
        let t = ReductionOperator::from_kernel(&[s(&c, "c - b"), s(&c, "b - 1")], &c, 1).unwrap();
        assert!(OperatorFamily::from_operators(vec![t]).unwrap().is_confluent().confluent);
    }

    #[test]
    fn rule_trace_follows_the_diagram() {
        let f = family_r(8);
        let c = f.context().clone();
        let t = f.rewrite_trace(&s(&c, "z"), Granularity::Rule, Strategy::GreatestFirst, 5, 100).unwrap();
        let shown: Vec<String> = t.steps.iter().map(|st| st.result.to_string()).collect();
        assert_eq!(shown, vec!["y", "y^2", "y^3", "y^4", "y^5"]);
        assert!(t.complete);
        assert_eq!(t.final_distance, Distance::Pow2(5));
        assert!(t.is_monotone());
    }

    #[test]
    fn operator_trace_annihilates() {
        let f = family_r(8);
        let c = f.context().clone();
        let t = f.rewrite_trace(&s(&c, "z"), Granularity::Operator, Strategy::GreatestFirst, 5, 100).unwrap();
        let shown: Vec<String> = t.steps.iter().map(|st| st.result.to_string()).collect();
        assert_eq!(shown, vec!["y", "0"]);
        let normal = f.rewrite_trace(&s(&c, "0"), Granularity::Rule, Strategy::GreatestFirst, 5, 100).unwrap();
        assert!(normal.steps.is_empty() && normal.complete);
    }

    #[test]
    fn joinable_examples() {
        let f = family_r(12);
        let c = f.context().clone();
        let j = f.joinable(&s(&c, "x"), &s(&c, "y"), Granularity::Rule, 10, 1000).unwrap();
        match &j {
            JoinResult::Yes { witness, traces } => {
                assert!(witness.is_zero());
                assert!(traces.iter().all(RewriteTrace::is_monotone));
            }
            _ => panic!("expected yes"),
        }
        let d = discrete_pair();
        let dc = d.context().clone();
        let j = d.joinable(&s(&dc, "b"), &s(&dc, "a"), Granularity::Rule, 1, 100).unwrap();
        assert!(!j.is_yes());
        let v = s(&dc, "c + 2b");
        assert!(d.joinable(&v, &v, Granularity::Operator, 3, 0).unwrap().is_yes());
    }

    #[test]
    fn s_series_examples() {
        let res = family_r(8).s_series_reduce_all().unwrap();
        assert_eq!(res.len(), 6);
        assert!(res.iter().all(|r| r.residual.is_zero()));
        let res = family_r_prime(8).s_series_reduce_all().unwrap();
        assert_eq!(res.len(), 1);
        let c = adic();
        assert_eq!(res[0].residual.leading_monomial(), Some(&c.variable(1)));
        let single = family_r_prime(8);
        let one = OperatorFamily::new(vec![single.members()[0].clone()]).unwrap();
        assert!(one.s_series_reduce_all().unwrap().is_empty());
        assert!(matches!(discrete_pair().s_series_reduce_all(), Err(Error::MissingGenerator(_))));
    }

    #[test]
    fn admissible_decomposition_examples() {
        let f = family_r(8);
        let c = f.context().clone();
        let zero = f.admissible_decomposition(&s(&c, "0")).unwrap();
        assert!(zero.terms.is_empty() && zero.remainder.is_zero());
        let t = &f.members()[0];
        let z = c.variable(2);
        let mut v = Series::from_terms(&c, [(z.clone(), Q::from_integer(1.into()))], crate::Precision::Degree(8));
        v.add_scaled(&-Q::from_integer(1.into()), &t.operator.image_of(&z));
        let d = f.admissible_decomposition(&v).unwrap();
        assert_eq!(d.terms, vec![(Q::from_integer(1.into()), z, t.label.clone())]);
        assert!(d.remainder.is_zero());
        let d = f.admissible_decomposition(&s(&c, "x - y")).unwrap();
        assert!(d.validate(&f));
        let labels: Vec<_> = d.terms.iter().map(|t| c.display(&t.1).to_string()).collect();
        assert_eq!(labels, vec!["y", "x"]);
        assert!(matches!(f.admissible_decomposition(&s(&c, "1")), Err(Error::NotInKernel)));
        // non-confluent: the witness of the obstruction has no admissible decomposition
        let fp = family_r_prime(8);
        assert!(matches!(fp.admissible_decomposition(&s(&c, "x - y")), Err(Error::NotAdmissible)));
    }
}
