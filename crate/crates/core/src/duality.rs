//! Series as linear forms on polynomials, dual operators and
//! representations.
//!
//! A linear form on `K G` is identified with the series of its values on the
//! monomials; only the coefficients up to a word length `L` are stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::Error;
use crate::monomial::{Mode, Monomial, MonomialContext, Setting};
use crate::operator::ReductionOperator;
use crate::scalar::Scalar;
use crate::series::{Precision, Series};

/// A linear form known on every monomial of degree `<= length`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<F: Scalar> {
    series: Series<F>,
    length: u32,
}

impl<F: Scalar> LinearForm<F> {
    /// Wraps `series` (any mode) as a form known up to `length`.
    pub fn new(series: &Series<F>, length: u32) -> Result<Self, Error> {
        if let Precision::Degree(p) = series.precision() {
            if p < length {
                return Err(Error::InsufficientPrecision { precision: p, truncation: length });
            }
        }
        let ctx = Arc::new(series.context().with_mode(Mode::Adic));
        let series = series.in_context(&ctx)?.truncate(length);
        Ok(Self { series, length })
    }

    pub fn zero(ctx: &Arc<MonomialContext>, length: u32) -> Self {
        let ctx = Arc::new(ctx.with_mode(Mode::Adic));
        Self { series: Series::zero(&ctx, Precision::Degree(length)), length }
    }

    /// The form with the given values on monomials, zero elsewhere.
    pub fn from_values(
        ctx: &Arc<MonomialContext>,
        length: u32,
        values: impl IntoIterator<Item = (Monomial, F)>,
    ) -> Self {
        let ctx = Arc::new(ctx.with_mode(Mode::Adic));
        Self { series: Series::from_terms(&ctx, values, Precision::Degree(length)), length }
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn series(&self) -> &Series<F> {
        &self.series
    }

    pub fn context(&self) -> &Arc<MonomialContext> {
        self.series.context()
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    /// `⟨S, w⟩` for one monomial.
    pub fn value(&self, w: &Monomial) -> Result<F, Error> {
        self.series.coefficient(w)
    }

    /// `⟨S, f⟩ = Σ_w S(w)·f(w)`.
    pub fn pair(&self, f: &Series<F>) -> Result<F, Error> {
        let ctx = self.context();
        if !ctx.same_alphabet(f.context()) || ctx.setting() != f.context().setting() {
            return Err(Error::ContextMismatch);
        }
        let mut acc = F::zero();
        for (w, c) in f.terms() {
            acc = acc + self.value(w)? * c.clone();
        }
        Ok(acc)
    }

    /// The restriction to the monomials in `keep`.
    pub fn restrict_to(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let terms = self.series.terms().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone()));
        Self { series: Series::from_terms(self.context(), terms, Precision::Degree(self.length)), length: self.length }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        let length = self.length.min(other.length);
        Ok(Self { series: self.series.sub(&other.series)?.truncate(length), length })
    }
}

impl<F: Scalar> fmt::Display for LinearForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // forms are listed in increasing length, like polynomials
        if self.series.is_zero() {
            return f.write_str("0");
        }
        let ctx = self.context();
        let mut first = true;
        for (m, c) in self.series.terms() {
            let (neg, abs) = if c.is_negative() { (true, -c.clone()) } else { (false, c.clone()) };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", ctx.display(m))?;
            } else {
                write!(f, "{abs}*{}", ctx.display(m))?;
            }
        }
        Ok(())
    }
}

/// The integer whose binary digits are the bits of `w`, most significant
/// first. The empty word has value 0.
pub fn val_coeff(bits: &[bool]) -> BigUint {
    bits.iter().fold(BigUint::zero(), |acc, &b| (acc << 1u32) + BigUint::from(u8::from(b)))
}

/// Reads a word over the letters `x0`, `x1` of `ctx` as binary digits.
pub fn word_bits(ctx: &MonomialContext, w: &Monomial) -> Result<Vec<bool>, Error> {
    let (_, one) = binary_letters(ctx)?;
    let letters = w.letters().ok_or(Error::Unsupported("a noncommutative context"))?;
    Ok(letters.iter().map(|&l| l as usize == one).collect())
}

fn binary_letters(ctx: &MonomialContext) -> Result<(usize, usize), Error> {
    if ctx.setting() != Setting::Noncommutative || ctx.num_variables() != 2 {
        return Err(Error::Unsupported("a noncommutative context on the letters x0, x1"));
    }
    match (ctx.variable_index("x0"), ctx.variable_index("x1")) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Unsupported("a noncommutative context on the letters x0, x1")),
    }
}

/// The series `Σ val(w)·w` over words of length `<= length`.
pub fn val_form<F: Scalar>(ctx: &Arc<MonomialContext>, length: u32) -> Result<LinearForm<F>, Error> {
    binary_letters(ctx)?;
    let values = ctx
        .monomials_up_to(length)
        .into_iter()
        .map(|w| {
            let bits = word_bits(ctx, &w).expect("binary context");
            let c = bits.iter().fold(F::zero(), |acc, &b| {
                let twice = acc.clone() + acc;
                if b {
                    twice + F::one()
                } else {
                    twice
                }
            });
            (w, c)
        })
        .collect::<Vec<_>>();
    Ok(LinearForm::from_values(ctx, length, values))
}

fn restricted<F: Scalar>(t: &ReductionOperator<F>, length: u32) -> Result<ReductionOperator<F>, Error> {
    if t.context().mode() != Mode::Discrete {
        return Err(Error::Unsupported("an operator on polynomials (discrete mode)"));
    }
    match t.truncation().cmp(&length) {
        Ordering::Less => Err(Error::TruncationMismatch(t.truncation(), length)),
        Ordering::Equal => Ok(t.clone()),
        Ordering::Greater => Ok(t.restrict(length)),
    }
}

/// `T^! = id - T*` on forms known up to `length`, as a reduction operator
/// for the opposite order. Its normal forms are `red(T)` and its heads are
/// `nf(T)`: `T^!(g) = -Σ_{g' ∈ red(T)} ⟨g, T(g')⟩ g'` for `g ∈ nf(T)`.
pub fn dual_operator<F: Scalar>(t: &ReductionOperator<F>, length: u32) -> Result<ReductionOperator<F>, Error> {
    let t = restricted(t, length)?;
    let ctx = Arc::new(t.context().with_mode(Mode::Adic));
    let mut tails: BTreeMap<Monomial, Series<F>> = t
        .normal_forms()
        .into_iter()
        .map(|g| (g, Series::zero(&ctx, Precision::Degree(length))))
        .collect();
    for (head, tail) in t.rules() {
        for (g, c) in tail.terms() {
            tails.get_mut(g).expect("tails hold normal forms").add_term(head.clone(), -c.clone());
        }
    }
    ReductionOperator::from_rules(&ctx, length, tails)
}

/// `T*(φ)`, the form `g ↦ ⟨φ, T(g)⟩`.
pub fn adjoint<F: Scalar>(t: &ReductionOperator<F>, phi: &LinearForm<F>) -> Result<LinearForm<F>, Error> {
    let t = restricted(t, phi.length())?;
    let values = t
        .context()
        .monomials_up_to(phi.length())
        .into_iter()
        .map(|g| Ok((g.clone(), phi.pair(&t.image_of(&g))?)))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(LinearForm::from_values(t.context(), phi.length(), values))
}

/// Applies an operator produced by [`dual_operator`] to a form.
pub fn apply_dual<F: Scalar>(dual: &ReductionOperator<F>, phi: &LinearForm<F>) -> Result<LinearForm<F>, Error> {
    let s = phi.series().in_context(dual.context())?;
    LinearForm::new(&dual.apply(&s)?, dual.truncation().min(phi.length()))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Representation<F: Scalar> {
    /// `S` factors through `T`; `S′` is its restriction to `nf(T)`.
    Represented(LinearForm<F>),
    /// The check `⟨S, g⟩ = ⟨S′, T(g)⟩` fails at `word`.
    NotRepresented { word: Monomial, expected: F, found: F },
}

/// Whether `S` vanishes on `ker(T)` up to length `length`, and if so the
/// induced form on normal forms.
pub fn represent<F: Scalar>(
    s: &LinearForm<F>,
    t: &ReductionOperator<F>,
    length: u32,
) -> Result<Representation<F>, Error> {
    if s.length() < length {
        return Err(Error::InsufficientPrecision { precision: s.length(), truncation: length });
    }
    let t = restricted(t, length)?;
    let s = LinearForm::new(s.series(), length)?;
    let s_prime = s.restrict_to(|m| !t.is_head(m));
    for (g, tail) in t.rules() {
        let expected = s.value(g)?;
        let found = s_prime.pair(tail)?;
        if expected != found {
            return Ok(Representation::NotRepresented { word: g.clone(), expected, found });
        }
    }
    Ok(Representation::Represented(s_prime))
}
