//! Reduction operators as inter-reduced rule tables truncated at a degree.
//!
//! An operator `T` is stored as the map `g ↦ T(g)` over its reducible
//! monomials (heads) of degree `<= D`. The kernel elements `g - T(g)` form the
//! reduced basis of `ker(T)`: each has leading monomial `g` with coefficient
//! `1` and no head occurs in any tail. Two operators are equal exactly when
//! their tables are.
//!
//! In discrete mode the truncation restricts `T` to the span of monomials of
//! degree `<= D`. In adic mode it is the image of `T` on series known up to
//! degree `D`; leading monomials (lowest degree) survive truncation, so heads
//! of degree `<= D` are exact.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::monomial::{Mode, Monomial, MonomialContext};
use crate::scalar::Scalar;
use crate::series::{Precision, Series};

/// Outcome of comparing two operators for `⪯` (`T1 ⪯ T2` iff `ker(T2) ⊆ ker(T1)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Equal,
    /// `T1 ⪯ T2` strictly.
    Less,
    /// `T2 ⪯ T1` strictly.
    Greater,
    Incomparable,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Equal => "equal",
            Comparison::Less => "less",
            Comparison::Greater => "greater",
            Comparison::Incomparable => "incomparable",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionOperator<F: Scalar> {
    ctx: Arc<MonomialContext>,
    truncation: u32,
    rules: BTreeMap<Monomial, Series<F>>,
}

impl<F: Scalar> ReductionOperator<F> {
    /// The identity: zero kernel, every monomial is a normal form.
    pub fn identity(ctx: &Arc<MonomialContext>, truncation: u32) -> Self {
        Self { ctx: ctx.clone(), truncation, rules: BTreeMap::new() }
    }

    /// The operator whose kernel is the linear span of `gens`, truncated at `truncation`.
    pub fn from_kernel(
        gens: &[Series<F>],
        ctx: &Arc<MonomialContext>,
        truncation: u32,
    ) -> Result<Self, Error> {
        let mut op = Self::identity(ctx, truncation);
        for (index, g) in gens.iter().enumerate() {
            if g.context() != ctx {
                return Err(Error::ContextMismatch);
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator { index });
            }
            if let Precision::Degree(p) = g.precision() {
                if p < truncation {
                    return Err(Error::InsufficientPrecision { precision: p, truncation });
                }
            }
            let v = op.admit(g)?;
            op.insert_kernel_element(v);
        }
        Ok(op)
    }

    /// Builds an operator from an explicit table `head ↦ T(head)`, checking
    /// every invariant.
    pub fn from_rules(
        ctx: &Arc<MonomialContext>,
        truncation: u32,
        rules: impl IntoIterator<Item = (Monomial, Series<F>)>,
    ) -> Result<Self, Error> {
        let mut table = BTreeMap::new();
        for (head, tail) in rules {
            if tail.context() != ctx || !ctx.contains(&head) {
                return Err(Error::ContextMismatch);
            }
            if head.degree() > truncation {
                return Err(Error::OutsideTruncation { degree: head.degree(), truncation });
            }
            let tail = match ctx.mode() {
                Mode::Adic => tail.truncate(truncation),
                Mode::Discrete => tail,
            };
            for m in tail.support() {
                if ctx.cmp_red(m, &head) != Ordering::Less {
                    return Err(Error::InvalidContext(format!(
                        "tail monomial {} is not smaller than head {}",
                        ctx.display(m),
                        ctx.display(&head)
                    )));
                }
                if m.degree() > truncation {
                    return Err(Error::OutsideTruncation { degree: m.degree(), truncation });
                }
            }
            table.insert(head, tail);
        }
        for tail in table.values() {
            if let Some(m) = tail.support().find(|m| table.contains_key(*m)) {
                return Err(Error::InvalidContext(format!(
                    "rule table is not inter-reduced: head {} occurs in a tail",
                    ctx.display(m)
                )));
            }
        }
        Ok(Self { ctx: ctx.clone(), truncation, rules: table })
    }

    /// Table assembled by trusted code that already guarantees the invariants.
    pub(crate) fn from_rules_unchecked(
        ctx: &Arc<MonomialContext>,
        truncation: u32,
        rules: BTreeMap<Monomial, Series<F>>,
    ) -> Self {
        Self { ctx: ctx.clone(), truncation, rules }
    }

    pub fn context(&self) -> &Arc<MonomialContext> {
        &self.ctx
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Precision carried by values of this operator.
    fn value_precision(&self) -> Precision {
        match self.ctx.mode() {
            Mode::Adic => Precision::Degree(self.truncation),
            Mode::Discrete => Precision::Exact,
        }
    }

    /// The rule table `head ↦ T(head)` in increasing deglex order of heads.
    pub fn rules(&self) -> impl Iterator<Item = (&Monomial, &Series<F>)> {
        self.rules.iter()
    }

    pub fn num_rules(&self) -> usize {
        self.rules.len()
    }

    pub fn is_identity(&self) -> bool {
        self.rules.is_empty()
    }

    /// `red(T)` within degree `<= D`.
    pub fn heads(&self) -> impl Iterator<Item = &Monomial> {
        self.rules.keys()
    }

    pub fn is_head(&self, m: &Monomial) -> bool {
        self.rules.contains_key(m)
    }

    pub fn rule(&self, head: &Monomial) -> Option<&Series<F>> {
        self.rules.get(head)
    }

    /// `nf(T)` within degree `<= D`, increasing deglex.
    pub fn normal_forms(&self) -> Vec<Monomial> {
        self.ctx
            .monomials_up_to(self.truncation)
            .into_iter()
            .filter(|m| !self.rules.contains_key(m))
            .collect()
    }

    /// `T(g)` for a single monomial of degree `<= D`.
    pub fn image_of(&self, g: &Monomial) -> Series<F> {
        match self.rules.get(g) {
            Some(t) => t.clone(),
            None => Series::from_terms(&self.ctx, [(g.clone(), F::one())], self.value_precision()),
        }
    }

    /// The reduced kernel basis `g - T(g)`, one per head.
    pub fn kernel_elements(&self) -> Vec<Series<F>> {
        self.rules.iter().map(|(g, t)| self.kernel_element(g, t)).collect()
    }

    fn kernel_element(&self, g: &Monomial, t: &Series<F>) -> Series<F> {
        let mut v = Series::from_terms(&self.ctx, [(g.clone(), F::one())], self.value_precision());
        v.add_scaled(&-F::one(), t);
        v
    }

    /// Checks the context and brings `v` into the truncated space.
    fn admit(&self, v: &Series<F>) -> Result<Series<F>, Error> {
        if v.context() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        match self.ctx.mode() {
            Mode::Adic => Ok(v.truncate(self.truncation)),
            Mode::Discrete => {
                if let Some(d) = v.max_degree().filter(|&d| d > self.truncation) {
                    return Err(Error::OutsideTruncation { degree: d, truncation: self.truncation });
                }
                Ok(v.clone())
            }
        }
    }

    fn apply_admitted(&self, v: &Series<F>) -> Series<F> {
        let precision = match self.ctx.mode() {
            Mode::Adic => v.precision().min(Precision::Degree(self.truncation)),
            Mode::Discrete => v.precision(),
        };
        let mut out = Series::zero(&self.ctx, precision);
        for (m, c) in v.terms() {
            match self.rules.get(m) {
                Some(t) => {
                    for (tm, tc) in t.terms() {
                        out.add_term(tm.clone(), c.clone() * tc.clone());
                    }
                }
                None => out.add_term(m.clone(), c.clone()),
            }
        }
        out
    }

    /// `T(v)`. Tails never contain heads, so rewriting every head once
    /// reaches the normal form that iterated rewriting would.
    pub fn apply(&self, v: &Series<F>) -> Result<Series<F>, Error> {
        let v = self.admit(v)?;
        Ok(self.apply_admitted(&v))
    }

    /// Whether `v ∈ ker(T)` up to the truncation degree.
    pub fn kernel_membership(&self, v: &Series<F>) -> Result<bool, Error> {
        if self.ctx.mode() == Mode::Adic {
            if let Precision::Degree(p) = v.precision() {
                if p < self.truncation {
                    return Err(Error::InsufficientPrecision { precision: p, truncation: self.truncation });
                }
            }
        }
        Ok(self.apply(v)?.is_zero())
    }

    /// Adds an (admitted) vector to the kernel, keeping the table reduced.
    fn insert_kernel_element(&mut self, v: Series<F>) {
        let r = self.apply_admitted(&v);
        let Ok((head, lc)) = r.leading_term() else {
            return;
        };
        let head = head.clone();
        let inv = F::one() / lc.clone();
        // T(head) = head - r / lc(r)
        let mut tail = r.scale(&-inv);
        tail.remove(&head);
        let tail = tail.with_precision(self.value_precision());
        for t in self.rules.values_mut() {
            if let Some(a) = t.remove(&head) {
                t.add_scaled(&a, &tail);
            }
        }
        self.rules.insert(head, tail);
    }

    fn check_compatible(&self, other: &Self) -> Result<(), Error> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.truncation != other.truncation {
            return Err(Error::TruncationMismatch(self.truncation, other.truncation));
        }
        Ok(())
    }

    /// `∧ ops`: the operator whose kernel is the sum of the kernels.
    pub fn meet(ops: &[&ReductionOperator<F>]) -> Result<ReductionOperator<F>, Error> {
        let (first, rest) = ops.split_first().ok_or(Error::EmptyFamily)?;
        let mut out = (*first).clone();
        for op in rest {
            out.check_compatible(op)?;
            for k in op.kernel_elements() {
                out.insert_kernel_element(k);
            }
        }
        Ok(out)
    }

    /// `self ∨ other`: the operator whose kernel is `ker(self) ∩ ker(other)`,
    /// computed inside the degree `<= D` space.
    pub fn join(&self, other: &ReductionOperator<F>) -> Result<ReductionOperator<F>, Error> {
        self.check_compatible(other)?;
        let basis = self.kernel_elements();
        let images: Vec<Series<F>> = basis.iter().map(|k| other.apply_admitted(k)).collect();
        let mut out = Self::identity(&self.ctx, self.truncation);
        for combo in null_combinations(&images) {
            let mut v = Series::zero(&self.ctx, self.value_precision());
            for (i, c) in combo {
                v.add_scaled(&c, &basis[i]);
            }
            out.insert_kernel_element(v);
        }
        Ok(out)
    }

    /// `self ⪯ other`, i.e. `ker(other) ⊆ ker(self)`.
    pub fn preceq(&self, other: &ReductionOperator<F>) -> Result<bool, Error> {
        self.check_compatible(other)?;
        Ok(other.kernel_elements().iter().all(|k| self.apply_admitted(k).is_zero()))
    }

    pub fn compare(&self, other: &ReductionOperator<F>) -> Result<Comparison, Error> {
        let le = self.preceq(other)?;
        let ge = other.preceq(self)?;
        Ok(match (le, ge) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Less,
            (false, true) => Comparison::Greater,
            (false, false) => Comparison::Incomparable,
        })
    }

    /// The same operator seen at a lower truncation degree.
    pub fn restrict(&self, truncation: u32) -> ReductionOperator<F> {
        assert!(truncation <= self.truncation, "restriction can only lower the truncation");
        let precision = match self.ctx.mode() {
            Mode::Adic => Precision::Degree(truncation),
            Mode::Discrete => Precision::Exact,
        };
        let rules = self
            .rules
            .iter()
            .filter(|(g, _)| g.degree() <= truncation)
            .map(|(g, t)| (g.clone(), t.with_precision(precision)))
            .collect();
        Self { ctx: self.ctx.clone(), truncation, rules }
    }
}

/// Linear relations among `vectors`: every returned map `{i ↦ c_i}` satisfies
/// `Σ c_i · vectors[i] = 0`, and together they span all such relations.
fn null_combinations<F: Scalar>(vectors: &[Series<F>]) -> Vec<BTreeMap<usize, F>> {
    // pivot monomial -> (vector with that leading monomial, its combination)
    let mut pivots: BTreeMap<Monomial, (Series<F>, BTreeMap<usize, F>)> = BTreeMap::new();
    let mut out = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut v = v.clone();
        let mut combo = BTreeMap::from([(i, F::one())]);
        loop {
            let Ok((lm, lc)) = v.leading_term() else {
                out.push(combo);
                break;
            };
            let (lm, lc) = (lm.clone(), lc.clone());
            match pivots.get(&lm) {
                Some((p, pc)) => {
                    let f = -(lc / p.get(&lm).expect("pivot").clone());
                    v.add_scaled(&f, p);
                    for (j, c) in pc {
                        let e = combo.entry(*j).or_insert_with(F::zero);
                        *e = e.clone() + f.clone() * c.clone();
                    }
                    combo.retain(|_, c| !c.is_zero());
                }
                None => {
                    pivots.insert(lm, (v, combo));
                    break;
                }
            }
        }
    }
    out
}

impl<F: Scalar> fmt::Display for ReductionOperator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rules.is_empty() {
            return write!(f, "identity (D = {})", self.truncation);
        }
        for (i, (g, t)) in self.rules.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{} -> {}", self.ctx.display(g), t)?;
        }
        Ok(())
    }
}
