//! Noncommutative Gröbner bases up to a word length, and finite-dimensional
//! quotients `K⟨X⟩/I`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::linalg::Matrix;
use crate::monomial::{Mode, Monomial, MonomialContext, Setting};
use crate::operator::ReductionOperator;
use crate::scalar::Scalar;
use crate::series::{Precision, Series};

/// Where a rule is applied when a word contains its head several times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Occurrence {
    #[default]
    Leftmost,
    Rightmost,
}

/// Which reducible word of a polynomial is rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WordChoice {
    #[default]
    Greatest,
    Least,
}

/// The rewriting system `lm(f) → lm(f) - f/lc(f)` of a list of relations.
#[derive(Clone, Debug)]
pub struct WordRewriter<F: Scalar> {
    ctx: Arc<MonomialContext>,
    rules: Vec<(Vec<u32>, Series<F>)>,
}

impl<F: Scalar> WordRewriter<F> {
    pub fn new(relations: &[Series<F>], ctx: &Arc<MonomialContext>) -> Result<Self, Error> {
        if ctx.setting() != Setting::Noncommutative || ctx.mode() != Mode::Discrete {
            return Err(Error::Unsupported("a discrete noncommutative context"));
        }
        let mut rules = Vec::new();
        for (index, f) in relations.iter().enumerate() {
            if f.context() != ctx {
                return Err(Error::ContextMismatch);
            }
            if f.is_zero() {
                return Err(Error::ZeroGenerator { index });
            }
            let (lm, lc) = f.leading_term()?;
            let mut tail = f.scale(&-(F::one() / lc.clone()));
            tail.remove(lm);
            rules.push((lm.letters().expect("word").to_vec(), tail));
        }
        Ok(Self { ctx: ctx.clone(), rules })
    }

    pub fn context(&self) -> &Arc<MonomialContext> {
        &self.ctx
    }

    /// Leading words of the relations.
    pub fn heads(&self) -> impl Iterator<Item = &[u32]> {
        self.rules.iter().map(|(h, _)| h.as_slice())
    }

    fn find(&self, w: &[u32], occurrence: Occurrence) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (r, (head, _)) in self.rules.iter().enumerate() {
            if head.len() > w.len() {
                continue;
            }
            let mut positions = (0..=w.len() - head.len()).filter(|&p| &w[p..p + head.len()] == head.as_slice());
            let pos = match occurrence {
                Occurrence::Leftmost => positions.next(),
                Occurrence::Rightmost => positions.next_back(),
            };
            if let Some(p) = pos {
                let better = match (best, occurrence) {
                    (None, _) => true,
                    (Some((_, bp)), Occurrence::Leftmost) => p < bp,
                    (Some((_, bp)), Occurrence::Rightmost) => p > bp,
                };
                if better {
                    best = Some((r, p));
                }
            }
        }
        best
    }

    pub fn is_normal(&self, w: &Monomial) -> bool {
        self.find(w.letters().expect("word"), Occurrence::Leftmost).is_none()
    }

    /// Normal form with the default strategy.
    pub fn normal_form(&self, f: &Series<F>) -> Series<F> {
        self.normal_form_by(f, WordChoice::Greatest, Occurrence::Leftmost)
    }

    pub fn normal_form_by(&self, f: &Series<F>, choice: WordChoice, occurrence: Occurrence) -> Series<F> {
        let mut current = f.clone();
        loop {
            let found = {
                let mut terms: Box<dyn Iterator<Item = (&Monomial, &F)>> = match choice {
                    WordChoice::Greatest => Box::new(current.terms().rev()),
                    WordChoice::Least => Box::new(current.terms()),
                };
                terms.find_map(|(m, c)| {
                    self.find(m.letters().expect("word"), occurrence).map(|hit| (m.clone(), c.clone(), hit))
                })
            };
            let Some((m, c, (r, p))) = found else {
                return current;
            };
            let (head, tail) = &self.rules[r];
            let w = m.letters().expect("word");
            let left = self.ctx.word(&w[..p].iter().map(|&l| l as usize).collect::<Vec<_>>());
            let right = self.ctx.word(&w[p + head.len()..].iter().map(|&l| l as usize).collect::<Vec<_>>());
            current.remove(&m);
            current.add_scaled(&c, &tail.mul_monomials(&left, &right));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmbiguityKind {
    /// `a = uv`, `b = vw` with `u`, `v`, `w` nonempty.
    Overlap,
    /// `b = u·a·w`.
    Inclusion,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ambiguity<F: Scalar> {
    pub kind: AmbiguityKind,
    /// Indices of the two relations.
    pub relations: (usize, usize),
    pub word: Monomial,
    pub residual: Series<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerVerdict<F: Scalar> {
    /// Every ambiguity up to `max_length` resolves.
    pub holds: bool,
    pub max_length: u32,
    pub ambiguities: Vec<Ambiguity<F>>,
}

impl<F: Scalar> GroebnerVerdict<F> {
    pub fn failures(&self) -> impl Iterator<Item = &Ambiguity<F>> {
        self.ambiguities.iter().filter(|a| !a.residual.is_zero())
    }
}

fn to_word(ctx: &MonomialContext, letters: &[u32]) -> Monomial {
    ctx.word(&letters.iter().map(|&l| l as usize).collect::<Vec<_>>())
}

/// Checks every overlap and inclusion ambiguity among the leading words of
/// `relations` whose word has length `<= max_length`.
pub fn verify_groebner<F: Scalar>(
    relations: &[Series<F>],
    ctx: &Arc<MonomialContext>,
    max_length: u32,
) -> Result<GroebnerVerdict<F>, Error> {
    let rw = WordRewriter::new(relations, ctx)?;
    let one = ctx.one();
    let mut ambiguities = Vec::new();
    let branch = |r: usize, left: &Monomial, right: &Monomial| -> Series<F> {
        rw.rules[r].1.mul_monomials(left, right)
    };
    let max = max_length as usize;
    for (i, (a, _)) in rw.rules.iter().enumerate() {
        for (j, (b, _)) in rw.rules.iter().enumerate() {
            // overlaps: a suffix of a equals a prefix of b
            for k in 1..a.len().min(b.len()) {
                if a[a.len() - k..] != b[..k] || a.len() + b.len() - k > max {
                    continue;
                }
                let u = to_word(ctx, &a[..a.len() - k]);
                let w = to_word(ctx, &b[k..]);
                let mut word = a.clone();
                word.extend_from_slice(&b[k..]);
                let mut s = branch(i, &one, &w);
                s.add_scaled(&-F::one(), &branch(j, &u, &one));
                ambiguities.push(Ambiguity {
                    kind: AmbiguityKind::Overlap,
                    relations: (i, j),
                    word: to_word(ctx, &word),
                    residual: rw.normal_form(&s),
                });
            }
            // inclusions: a occurs inside b
            if i == j || a.len() > b.len() || b.len() > max {
                continue;
            }
            for p in 0..=b.len() - a.len() {
                if b[p..p + a.len()] != a[..] {
                    continue;
                }
                if a.len() == b.len() && i > j {
                    // equal heads: one ambiguity per unordered pair
                    continue;
                }
                let u = to_word(ctx, &b[..p]);
                let w = to_word(ctx, &b[p + a.len()..]);
                let mut s = branch(j, &one, &one);
                s.add_scaled(&-F::one(), &branch(i, &u, &w));
                ambiguities.push(Ambiguity {
                    kind: AmbiguityKind::Inclusion,
                    relations: (i, j),
                    word: to_word(ctx, b),
                    residual: rw.normal_form(&s),
                });
            }
        }
    }
    let holds = ambiguities.iter().all(|a| a.residual.is_zero());
    Ok(GroebnerVerdict { holds, max_length, ambiguities })
}

/// The operator on words of length `<= max_length` sending each word to its
/// normal form. Its kernel is `I` truncated at `max_length` when `relations`
/// is a Gröbner basis.
pub fn operator_from_groebner<F: Scalar>(
    relations: &[Series<F>],
    ctx: &Arc<MonomialContext>,
    max_length: u32,
) -> Result<ReductionOperator<F>, Error> {
    let rw = WordRewriter::new(relations, ctx)?;
    let mut rules = BTreeMap::new();
    for w in ctx.monomials_up_to(max_length) {
        if !rw.is_normal(&w) {
            let nf = rw.normal_form(&Series::from_terms(ctx, [(w.clone(), F::one())], Precision::Exact));
            rules.insert(w, nf);
        }
    }
    Ok(ReductionOperator::from_rules_unchecked(ctx, max_length, rules))
}

/// A finite-dimensional algebra `K⟨X⟩/I` on the basis of normal words.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<F: Scalar> {
    rewriter: WordRewriter<F>,
    basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    table: Vec<Vec<Vec<F>>>,
}

/// Enumerates the normal words of a Gröbner basis and the structure
/// constants of their products. Fails once more than `bound` normal words
/// have been found.
pub fn build_quotient<F: Scalar>(
    relations: &[Series<F>],
    ctx: &Arc<MonomialContext>,
    bound: usize,
) -> Result<QuotientAlgebra<F>, Error> {
    let rewriter = WordRewriter::new(relations, ctx)?;
    let mut basis = Vec::new();
    let mut level: Vec<Vec<u32>> = if rewriter.is_normal(&ctx.one()) { vec![vec![]] } else { vec![] };
    while !level.is_empty() {
        basis.extend(level.iter().map(|w| to_word(ctx, w)));
        if basis.len() > bound {
            return Err(Error::InfiniteDimensional { bound });
        }
        let mut next = Vec::new();
        for w in &level {
            for x in 0..ctx.num_variables() as u32 {
                let mut v = w.clone();
                v.push(x);
                if !rewriter.heads().any(|h| v.ends_with(h)) {
                    next.push(v);
                }
            }
        }
        level = next;
    }
    basis.sort();
    let index: BTreeMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut algebra = QuotientAlgebra { rewriter, basis, index, table: Vec::new() };
    let n = algebra.basis.len();
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let w = algebra.basis[i].mul(&algebra.basis[j]);
            table[i][j] = algebra.coordinates(&Series::from_terms(ctx, [(w, F::one())], Precision::Exact));
        }
    }
    algebra.table = table;
    Ok(algebra)
}

impl<F: Scalar> QuotientAlgebra<F> {
    pub fn context(&self) -> &Arc<MonomialContext> {
        &self.rewriter.ctx
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Normal words, increasing deglex.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn rewriter(&self) -> &WordRewriter<F> {
        &self.rewriter
    }

    /// Index of the empty word, absent only for the zero algebra.
    pub fn unit(&self) -> Option<usize> {
        self.index.get(&self.context().one()).copied()
    }

    pub fn unit_vector(&self) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        if let Some(u) = self.unit() {
            v[u] = F::one();
        }
        v
    }

    /// Coordinates of `e_i · e_j`.
    pub fn structure_constants(&self, i: usize, j: usize) -> &[F] {
        &self.table[i][j]
    }

    /// Coordinates of the class of a polynomial.
    pub fn coordinates(&self, f: &Series<F>) -> Vec<F> {
        let nf = self.rewriter.normal_form(f);
        let mut v = vec![F::zero(); self.dim()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// The polynomial `Σ a_i e_i`.
    pub fn element(&self, a: &[F]) -> Series<F> {
        Series::from_terms(self.context(), self.basis.iter().cloned().zip(a.iter().cloned()), Precision::Exact)
    }

    /// Images of the variables, in context order.
    pub fn generators(&self) -> Vec<Vec<F>> {
        let ctx = self.context();
        (0..ctx.num_variables())
            .map(|x| self.coordinates(&Series::from_terms(ctx, [(ctx.variable(x), F::one())], Precision::Exact)))
            .collect()
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let s = ai.clone() * bj.clone();
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].clone() + s.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of `a ↦ x·a`, column `j` holding `x·e_j`.
    pub fn left_matrix(&self, x: &[F]) -> Matrix<F> {
        self.mult_matrix(|e| self.mul(x, e))
    }

    /// Matrix of `a ↦ a·x`.
    pub fn right_matrix(&self, x: &[F]) -> Matrix<F> {
        self.mult_matrix(|e| self.mul(e, x))
    }

    fn mult_matrix(&self, image: impl Fn(&[F]) -> Vec<F>) -> Matrix<F> {
        let n = self.dim();
        let mut m = vec![vec![F::zero(); n]; n];
        for j in 0..n {
            let mut e = vec![F::zero(); n];
            e[j] = F::one();
            for (k, c) in image(&e).into_iter().enumerate() {
                m[k][j] = c;
            }
        }
        m
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        let e = |i: usize| {
            let mut v = vec![F::zero(); n];
            v[i] = F::one();
            v
        };
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let ij = self.mul(&e(i), &e(j));
                    let jk = self.mul(&e(j), &e(k));
                    self.mul(&ij, &e(k)) == self.mul(&e(i), &jk)
                })
            })
        })
    }
}

impl<F: Scalar> fmt::Display for QuotientAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = self.context();
        let names: Vec<String> = self.basis.iter().map(|m| ctx.display(m).to_string()).collect();
        writeln!(f, "basis: {{{}}}", names.join(", "))?;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                writeln!(f, "{} * {} = {}", names[i], names[j], self.element(&self.table[i][j]))?;
            }
        }
        Ok(())
    }
}

#[doc(hidden)]
pub mod tests_support {
    use super::*;

    /// The four relations presenting the quotient attached to the binary
    /// value series, in the context `x1 > x0`.
    pub fn binary_value_relations<F: Scalar>(ctx: &Arc<MonomialContext>) -> Vec<Series<F>> {
        ["x0*x0 - 3*x0 + 2", "x0*x1 - x1 - 2*x0 + 2", "x1*x0 - 2*x1 - x0 + 2", "x1*x1 - 3*x1 + 2"]
            .iter()
            .map(|e| crate::parse::parse_series(ctx, e).expect("well-formed relation"))
            .collect()
    }
}
