//! Truncated series with exact coefficients, the metric δ and leading terms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::monomial::{Mode, Monomial, MonomialContext};
use crate::scalar::{pow2_inv, Scalar};

/// How far the coefficients of a series are known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Precision {
    /// Every coefficient is known: a polynomial.
    Exact,
    /// Coefficients of monomials of degree `<= D` are known; the rest are not.
    Degree(u32),
}

impl Precision {
    pub fn min(self, other: Precision) -> Precision {
        match (self, other) {
            (Precision::Exact, p) | (p, Precision::Exact) => p,
            (Precision::Degree(a), Precision::Degree(b)) => Precision::Degree(a.min(b)),
        }
    }

    pub fn covers(self, degree: u32) -> bool {
        match self {
            Precision::Exact => true,
            Precision::Degree(d) => degree <= d,
        }
    }

    pub fn bound(self) -> Option<u32> {
        match self {
            Precision::Exact => None,
            Precision::Degree(d) => Some(d),
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Exact => f.write_str("exact"),
            Precision::Degree(d) => write!(f, "O(deg {})", d + 1),
        }
    }
}

/// Value of the metric δ. Every nonzero distance is a power of `1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distance {
    Zero,
    /// `2^-k`; `Pow2(0)` is the discrete distance `1`.
    Pow2(u32),
    /// The two series agree on every known degree `<= D`, so the true
    /// distance is at most `2^-(D+1)` but cannot be resolved further.
    BelowResolution(u32),
}

impl Distance {
    /// Whether `δ <= 2^-k` is established.
    pub fn within(self, k: u32) -> bool {
        match self {
            Distance::Zero => true,
            Distance::Pow2(j) => j >= k,
            Distance::BelowResolution(d) => d + 1 >= k,
        }
    }

    /// The exact value, when it is resolved.
    pub fn value<F: Scalar>(self) -> Option<F> {
        match self {
            Distance::Zero => Some(F::zero()),
            Distance::Pow2(k) => Some(pow2_inv(k)),
            Distance::BelowResolution(_) => None,
        }
    }

    /// Upper bound exponent: the distance is at most `2^-k` for the returned
    /// `k` (`None` for zero).
    fn bound_exponent(self) -> Option<u32> {
        match self {
            Distance::Zero => None,
            Distance::Pow2(k) => Some(k),
            Distance::BelowResolution(d) => Some(d + 1),
        }
    }

    /// Compares upper bounds; `BelowResolution(D)` ranks just under `2^-D`.
    pub fn cmp_bound(self, other: Distance) -> Ordering {
        match (self.bound_exponent(), other.bound_exponent()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => b.cmp(&a),
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Zero => f.write_str("0"),
            Distance::Pow2(0) => f.write_str("1"),
            Distance::Pow2(k) => write!(f, "2^-{k}"),
            Distance::BelowResolution(d) => write!(f, "<2^-{d}"),
        }
    }
}

/// A finitely supported series over the monomials of a context.
///
/// Terms are kept in a map ordered by deglex, so the leading term is the last
/// entry in discrete mode and the first in adic mode. Zero coefficients are
/// never stored and no stored monomial exceeds the precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<F: Scalar> {
    ctx: Arc<MonomialContext>,
    terms: BTreeMap<Monomial, F>,
    precision: Precision,
}

impl<F: Scalar> Series<F> {
    pub fn zero(ctx: &Arc<MonomialContext>, precision: Precision) -> Self {
        Self { ctx: ctx.clone(), terms: BTreeMap::new(), precision }
    }

    pub fn monomial(ctx: &Arc<MonomialContext>, m: Monomial, coeff: F) -> Self {
        Self::from_terms(ctx, [(m, coeff)], Precision::Exact)
    }

    pub fn constant(ctx: &Arc<MonomialContext>, coeff: F) -> Self {
        Self::monomial(ctx, ctx.one(), coeff)
    }

    /// Sums duplicate monomials, drops zeros and anything above `precision`.
    pub fn from_terms(
        ctx: &Arc<MonomialContext>,
        terms: impl IntoIterator<Item = (Monomial, F)>,
        precision: Precision,
    ) -> Self {
        let mut out = Self::zero(ctx, precision);
        for (m, c) in terms {
            debug_assert!(ctx.contains(&m), "monomial does not belong to the context");
            out.add_term(m, c);
        }
        out
    }

    pub fn context(&self) -> &Arc<MonomialContext> {
        &self.ctx
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing deglex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> + ExactSizeIterator {
        self.terms.iter()
    }

    /// Terms from the leading monomial downwards in the rewriting order.
    pub fn terms_red_desc(&self) -> Box<dyn Iterator<Item = (&Monomial, &F)> + '_> {
        match self.ctx.mode() {
            Mode::Discrete => Box::new(self.terms.iter().rev()),
            Mode::Adic => Box::new(self.terms.iter()),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains_key(m)
    }

    /// Coefficient lookup without the precision check; `None` for zero.
    pub fn get(&self, m: &Monomial) -> Option<&F> {
        self.terms.get(m)
    }

    /// The coefficient of `g`, failing when `g` lies beyond the precision.
    pub fn coefficient(&self, g: &Monomial) -> Result<F, Error> {
        if let Precision::Degree(d) = self.precision {
            if g.degree() > d {
                return Err(Error::UnknownCoefficient { degree: g.degree(), precision: d });
            }
        }
        Ok(self.terms.get(g).cloned().unwrap_or_else(F::zero))
    }

    /// Adds `c·m` in place; ignored when `m` lies beyond the precision.
    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() || !self.precision.covers(m.degree()) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c · other` in place; precision drops to the minimum.
    pub fn add_scaled(&mut self, c: &F, other: &Series<F>) {
        self.precision = self.precision.min(other.precision);
        self.drop_above_precision();
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), c.clone() * a.clone());
        }
    }

    /// Removes the term at `m`, returning its coefficient.
    pub fn remove(&mut self, m: &Monomial) -> Option<F> {
        self.terms.remove(m)
    }

    fn drop_above_precision(&mut self) {
        if let Precision::Degree(d) = self.precision {
            self.terms.retain(|m, _| m.degree() <= d);
        }
    }

    fn check_ctx(&self, other: &Series<F>) -> Result<(), Error> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Series<F>) -> Result<Series<F>, Error> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        out.add_scaled(&F::one(), other);
        Ok(out)
    }

    pub fn sub(&self, other: &Series<F>) -> Result<Series<F>, Error> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        out.add_scaled(&-F::one(), other);
        Ok(out)
    }

    pub fn neg(&self) -> Series<F> {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Series<F> {
        if c.is_zero() {
            return Self::zero(&self.ctx, self.precision);
        }
        Self {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
            precision: self.precision,
        }
    }

    /// Product in the (non)commutative algebra; terms above the resulting
    /// precision are dropped.
    pub fn mul(&self, other: &Series<F>) -> Result<Series<F>, Error> {
        self.check_ctx(other)?;
        let mut out = Self::zero(&self.ctx, self.precision.min(other.precision));
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                let m = m1.mul(m2);
                if out.precision.covers(m.degree()) {
                    out.add_term(m, a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    /// `left · self · right` for monomials `left`, `right`.
    pub fn mul_monomials(&self, left: &Monomial, right: &Monomial) -> Series<F> {
        let mut out = Self::zero(&self.ctx, self.precision);
        for (m, a) in &self.terms {
            out.add_term(left.mul(m).mul(right), a.clone());
        }
        out
    }

    /// Drops everything above degree `d` and lowers the precision to `d`.
    pub fn truncate(&self, d: u32) -> Series<F> {
        let precision = self.precision.min(Precision::Degree(d));
        let mut out = Self { ctx: self.ctx.clone(), terms: self.terms.clone(), precision };
        out.drop_above_precision();
        out
    }

    /// Replaces the precision marker without touching terms (terms above the
    /// new precision are dropped).
    pub fn with_precision(&self, precision: Precision) -> Series<F> {
        let mut out = Self { ctx: self.ctx.clone(), terms: self.terms.clone(), precision };
        out.drop_above_precision();
        out
    }

    /// The graded component `v_n`: terms of degree `n`.
    pub fn graded_component(&self, n: u32) -> Series<F> {
        Self {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            precision: Precision::Exact,
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Leading monomial and coefficient for the rewriting order.
    pub fn leading_term(&self) -> Result<(&Monomial, &F), Error> {
        let entry = match self.ctx.mode() {
            Mode::Discrete => self.terms.iter().next_back(),
            Mode::Adic => self.terms.iter().next(),
        };
        entry.ok_or(Error::NoLeadingTerm)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading_term().ok().map(|(m, _)| m)
    }

    /// Monomials `g` of the support with `d(g) >= eps`.
    pub fn support_above(&self, eps: &F) -> Result<Vec<Monomial>, Error> {
        if *eps <= F::zero() {
            return Err(Error::NonPositiveThreshold);
        }
        Ok(self
            .terms
            .keys()
            .filter(|m| pow2_inv::<F>(self.ctx.weight(m)) >= *eps)
            .cloned()
            .collect())
    }

    /// The metric `δ(self, other) = max d(g)` over the support of the difference.
    pub fn distance(&self, other: &Series<F>) -> Result<Distance, Error> {
        let diff = self.sub(other)?;
        Ok(diff.norm())
    }

    /// `δ(self, 0)`.
    pub fn norm(&self) -> Distance {
        match self.terms.keys().map(|m| self.ctx.weight(m)).min() {
            Some(w) => Distance::Pow2(w),
            None => match self.precision {
                Precision::Exact => Distance::Zero,
                Precision::Degree(d) => Distance::BelowResolution(d),
            },
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&F) -> F) -> Series<F> {
        Series::from_terms(
            &self.ctx,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
            self.precision,
        )
    }

    /// Re-homes the same terms in a context with identical alphabet (for
    /// example switching between discrete and adic mode).
    pub fn in_context(&self, ctx: &Arc<MonomialContext>) -> Result<Series<F>, Error> {
        if !self.ctx.same_alphabet(ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(Self { ctx: ctx.clone(), terms: self.terms.clone(), precision: self.precision })
    }
}

impl<F: Scalar> fmt::Display for Series<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms_red_desc().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", self.ctx.display(m))?;
            } else {
                write!(f, "{abs}*{}", self.ctx.display(m))?;
            }
        }
        Ok(())
    }
}
