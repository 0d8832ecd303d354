//! Greatest ideals inside hyperplanes and the syntacticity check for finite
//! dimensional algebras.
//!
//! `A` is syntactic when some linear form `s` on `A` has no nonzero ideal
//! inside `ker(s)`. A provided witness is checked directly; otherwise an
//! annihilator of dimension at least 2 refutes syntacticity (every hyperplane
//! meets it, and each line inside it is an ideal), and seeded random witnesses
//! are tried before giving up with an honest `unknown`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::groebner::QuotientAlgebra;
use crate::linalg::{null_space, rank, row_times, Matrix};
use crate::scalar::Scalar;

/// Left and right multiplication matrices of every generator.
fn multiplications<F: Scalar>(a: &QuotientAlgebra<F>) -> Vec<Matrix<F>> {
    a.generators().iter().flat_map(|x| [a.left_matrix(x), a.right_matrix(x)]).collect()
}

/// The largest two-sided ideal of `a` contained in `ker(form)`.
///
/// Computed on the dual side: the functionals `b ↦ form(u·b·v)` span a space
/// `W`, closed under composition with the generator multiplications, and
/// the ideal is the common kernel of `W`.
pub fn greatest_ideal_in<F: Scalar>(a: &QuotientAlgebra<F>, form: &[F]) -> Matrix<F> {
    let n = a.dim();
    let mults = multiplications(a);
    let mut w: Matrix<F> = vec![form.to_vec()];
    let mut frontier = w.clone();
    let mut r = rank(&w, n);
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for phi in &frontier {
            for m in &mults {
                let psi = row_times(phi, m);
                w.push(psi.clone());
                let r2 = rank(&w, n);
                if r2 > r {
                    r = r2;
                    next.push(psi);
                } else {
                    w.pop();
                }
            }
        }
        frontier = next;
    }
    null_space(&w, n)
}

/// The ideal generated by `x`: the span of `u·x·v` over all `u`, `v`.
pub fn generated_ideal<F: Scalar>(a: &QuotientAlgebra<F>, x: &[F]) -> Matrix<F> {
    let n = a.dim();
    let gens = a.generators();
    let mut basis: Matrix<F> = Vec::new();
    let mut frontier = vec![x.to_vec()];
    while let Some(v) = frontier.pop() {
        basis.push(v.clone());
        if rank(&basis, n) < basis.len() {
            basis.pop();
            continue;
        }
        for g in &gens {
            frontier.push(a.mul(g, &v));
            frontier.push(a.mul(&v, g));
        }
    }
    basis
}

/// `{b : x·b = b·x = 0}` for every generator `x`.
pub fn annihilator<F: Scalar>(a: &QuotientAlgebra<F>) -> Matrix<F> {
    let rows: Matrix<F> = multiplications(a).into_iter().flatten().collect();
    null_space(&rows, a.dim())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntacticOptions<F> {
    /// A candidate form, given by its values on the basis.
    pub witness: Option<Vec<F>>,
    /// Number of random witnesses to try.
    pub samples: usize,
    pub seed: u64,
}

impl<F> Default for SyntacticOptions<F> {
    fn default() -> Self {
        Self { witness: None, samples: 200, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SyntacticVerdict<F: Scalar> {
    /// `ker(witness)` contains no nonzero ideal.
    Syntactic { witness: Vec<F> },
    /// The annihilator has dimension `>= 2`; its basis is the certificate.
    NotSyntactic { annihilator: Matrix<F> },
    /// Neither a witness nor a refutation was found.
    Unknown { samples: usize },
}

/// One examined witness and the greatest ideal inside its kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessCheck<F: Scalar> {
    pub witness: Vec<F>,
    pub ideal: Matrix<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SyntacticReport<F: Scalar> {
    pub verdict: SyntacticVerdict<F>,
    pub examined: Vec<WitnessCheck<F>>,
}

fn random_form<F: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> Vec<F> {
    (0..n)
        .map(|_| F::from_i64(rng.gen_range(-9..=9)) / F::from_i64(rng.gen_range(1..=5)))
        .collect()
}

pub fn check_syntactic<F: Scalar>(a: &QuotientAlgebra<F>, options: &SyntacticOptions<F>) -> SyntacticReport<F> {
    let mut examined = Vec::new();
    let try_witness = |w: Vec<F>, examined: &mut Vec<WitnessCheck<F>>| {
        let ideal = greatest_ideal_in(a, &w);
        let ok = ideal.is_empty();
        examined.push(WitnessCheck { witness: w.clone(), ideal });
        ok.then_some(w)
    };
    if let Some(w) = &options.witness {
        if let Some(witness) = try_witness(w.clone(), &mut examined) {
            return SyntacticReport { verdict: SyntacticVerdict::Syntactic { witness }, examined };
        }
    }
    let ann = annihilator(a);
    if ann.len() >= 2 {
        return SyntacticReport { verdict: SyntacticVerdict::NotSyntactic { annihilator: ann }, examined };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for _ in 0..options.samples {
        let w = random_form(&mut rng, a.dim());
        if let Some(witness) = try_witness(w, &mut examined) {
            return SyntacticReport { verdict: SyntacticVerdict::Syntactic { witness }, examined };
        }
    }
    SyntacticReport { verdict: SyntacticVerdict::Unknown { samples: options.samples }, examined }
}

/// Random witnesses drawn exactly as [`check_syntactic`] draws them.
pub fn sample_witnesses<F: Scalar>(dim: usize, count: usize, seed: u64) -> Vec<Vec<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_form(&mut rng, dim)).collect()
}
