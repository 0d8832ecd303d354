//! Monomials, the monomial context and the two rewriting orders.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// Whether variables commute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Setting {
    Commutative,
    Noncommutative,
}

/// Topology on the span of monomials.
///
/// `Discrete` is the polynomial algebra with `d ≡ 1` and rewriting along the
/// monomial order. `Adic` is the completion for the ideal generated by the
/// variables, with `d(m) = 2^-deg(m)` and rewriting along the opposite order,
/// so the leading monomial of a series is its smallest monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Discrete,
    Adic,
}

/// Monomial order. Only degree-lexicographic is shipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Deglex,
}

/// Variables, setting, order and mode shared by every series of a problem.
///
/// Variables are listed in descending precedence: `["x", "y", "z"]` means
/// `x > y > z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialContext {
    setting: Setting,
    variables: Vec<String>,
    order: MonomialOrder,
    mode: Mode,
}

impl MonomialContext {
    pub fn new<S: Into<String>>(
        setting: Setting,
        variables: impl IntoIterator<Item = S>,
        mode: Mode,
    ) -> Result<Self, Error> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        if variables.is_empty() {
            return Err(Error::InvalidContext("no variables declared".into()));
        }
        for (i, v) in variables.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidContext("empty variable name".into()));
            }
            if variables[..i].contains(v) {
                return Err(Error::InvalidContext(format!("variable `{v}` declared twice")));
            }
        }
        Ok(Self { setting, variables, order: MonomialOrder::Deglex, mode })
    }

    pub fn commutative<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        mode: Mode,
    ) -> Result<Self, Error> {
        Self::new(Setting::Commutative, variables, mode)
    }

    pub fn noncommutative<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        mode: Mode,
    ) -> Result<Self, Error> {
        Self::new(Setting::Noncommutative, variables, mode)
    }

    pub fn setting(&self) -> Setting {
        self.setting
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    /// The same alphabet and setting with a different topology.
    pub fn with_mode(&self, mode: Mode) -> Self {
        Self { mode, ..self.clone() }
    }

    /// Same variables and setting; modes may differ.
    pub fn same_alphabet(&self, other: &Self) -> bool {
        self.setting == other.setting && self.variables == other.variables
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn one(&self) -> Monomial {
        match self.setting {
            Setting::Commutative => Monomial::Exponents(vec![0; self.variables.len()]),
            Setting::Noncommutative => Monomial::Word(Vec::new()),
        }
    }

    pub fn variable(&self, index: usize) -> Monomial {
        assert!(index < self.variables.len(), "variable index out of range");
        match self.setting {
            Setting::Commutative => {
                let mut e = vec![0; self.variables.len()];
                e[index] = 1;
                Monomial::Exponents(e)
            }
            Setting::Noncommutative => Monomial::Word(vec![index as u32]),
        }
    }

    pub fn word(&self, letters: &[usize]) -> Monomial {
        assert_eq!(self.setting, Setting::Noncommutative);
        Monomial::Word(letters.iter().map(|&i| i as u32).collect())
    }

    pub fn exponents(&self, exps: &[u32]) -> Monomial {
        assert_eq!(self.setting, Setting::Commutative);
        assert_eq!(exps.len(), self.variables.len());
        Monomial::Exponents(exps.to_vec())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        match (self.setting, m) {
            (Setting::Commutative, Monomial::Exponents(e)) => e.len() == self.variables.len(),
            (Setting::Noncommutative, Monomial::Word(w)) => {
                w.iter().all(|&l| (l as usize) < self.variables.len())
            }
            _ => false,
        }
    }

    /// The weight `d(m)` as an exponent of `1/2`: `d(m) = 2^-weight(m)`.
    pub fn weight(&self, m: &Monomial) -> u32 {
        match self.mode {
            Mode::Discrete => 0,
            Mode::Adic => m.degree(),
        }
    }

    /// Compares with respect to the rewriting order: deglex in discrete
    /// mode, reversed deglex in adic mode.
    pub fn cmp_red(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.mode {
            Mode::Discrete => a.cmp(b),
            Mode::Adic => b.cmp(a),
        }
    }

    /// All monomials of degree at most `max_degree`, in increasing deglex order.
    pub fn monomials_up_to(&self, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for deg in 0..=max_degree {
            out.extend(self.monomials_of_degree(deg));
        }
        out
    }

    /// Monomials of exactly `degree`, in increasing deglex order.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let n = self.variables.len();
        let mut out = Vec::new();
        match self.setting {
            Setting::Commutative => {
                let mut exps = vec![0u32; n];
                compositions(degree, 0, &mut exps, &mut out);
            }
            Setting::Noncommutative => {
                let mut word = vec![0u32; degree as usize];
                loop {
                    out.push(Monomial::Word(word.clone()));
                    // odometer over letter indices
                    let mut pos = word.len();
                    loop {
                        if pos == 0 {
                            out.sort();
                            return out;
                        }
                        pos -= 1;
                        if (word[pos] as usize) + 1 < n {
                            word[pos] += 1;
                            for w in word.iter_mut().skip(pos + 1) {
                                *w = 0;
                            }
                            break;
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Formats a monomial with this context's variable names.
    pub fn display<'a>(&'a self, m: &'a Monomial) -> MonomialDisplay<'a> {
        MonomialDisplay { ctx: self, m }
    }
}

fn compositions(remaining: u32, idx: usize, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if idx + 1 == exps.len() {
        exps[idx] = remaining;
        out.push(Monomial::Exponents(exps.clone()));
        return;
    }
    for e in 0..=remaining {
        exps[idx] = e;
        compositions(remaining - e, idx + 1, exps, out);
    }
    exps[idx] = 0;
}

/// A commutative monomial (exponent vector) or a noncommutative one (word of
/// variable indices). Index `0` is the variable of highest precedence.
///
/// `Ord` is degree-lexicographic for the variable precedence of the context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Monomial {
    Exponents(Vec<u32>),
    Word(Vec<u32>),
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        match self {
            Monomial::Exponents(e) => e.iter().sum(),
            Monomial::Word(w) => w.len() as u32,
        }
    }

    pub fn is_one(&self) -> bool {
        self.degree() == 0
    }

    /// Product; concatenation for words.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        match (self, other) {
            (Monomial::Exponents(a), Monomial::Exponents(b)) => {
                Monomial::Exponents(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Monomial::Word(a), Monomial::Word(b)) => {
                let mut w = a.clone();
                w.extend_from_slice(b);
                Monomial::Word(w)
            }
            _ => panic!("mixing commutative and noncommutative monomials"),
        }
    }

    /// Two-sided divisibility: componentwise for exponents, factor (contiguous
    /// subword) for words.
    pub fn divides(&self, other: &Monomial) -> bool {
        match (self, other) {
            (Monomial::Exponents(a), Monomial::Exponents(b)) => a.iter().zip(b).all(|(x, y)| x <= y),
            (Monomial::Word(a), Monomial::Word(b)) => find_factor(b, a, 0).is_some(),
            _ => false,
        }
    }

    /// `other / self` for commutative monomials.
    pub fn quotient(&self, divisor: &Monomial) -> Option<Monomial> {
        match (self, divisor) {
            (Monomial::Exponents(a), Monomial::Exponents(b)) => {
                if a.iter().zip(b).all(|(x, y)| x >= y) {
                    Some(Monomial::Exponents(a.iter().zip(b).map(|(x, y)| x - y).collect()))
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Option<Monomial> {
        match (self, other) {
            (Monomial::Exponents(a), Monomial::Exponents(b)) => {
                Some(Monomial::Exponents(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()))
            }
            _ => None,
        }
    }

    pub fn letters(&self) -> Option<&[u32]> {
        match self {
            Monomial::Word(w) => Some(w),
            Monomial::Exponents(_) => None,
        }
    }

    pub fn exps(&self) -> Option<&[u32]> {
        match self {
            Monomial::Exponents(e) => Some(e),
            Monomial::Word(_) => None,
        }
    }

    /// Splits a word at the first occurrence of `factor`: `self = left·factor·right`.
    pub fn split_at_factor(&self, factor: &Monomial) -> Option<(Monomial, Monomial)> {
        let (w, f) = (self.letters()?, factor.letters()?);
        let at = find_factor(w, f, 0)?;
        Some((Monomial::Word(w[..at].to_vec()), Monomial::Word(w[at + f.len()..].to_vec())))
    }
}

pub(crate) fn find_factor(hay: &[u32], needle: &[u32], from: usize) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (from..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| match (self, other) {
            (Monomial::Exponents(a), Monomial::Exponents(b)) => a.cmp(b),
            // smaller index = higher precedence letter
            (Monomial::Word(a), Monomial::Word(b)) => b.cmp(a),
            (Monomial::Exponents(_), Monomial::Word(_)) => Ordering::Less,
            (Monomial::Word(_), Monomial::Exponents(_)) => Ordering::Greater,
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct MonomialDisplay<'a> {
    ctx: &'a MonomialContext,
    m: &'a Monomial,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return f.write_str("1");
        }
        let vars = &self.ctx.variables;
        let mut first = true;
        let mut put = |f: &mut fmt::Formatter<'_>, idx: usize, pow: u32| -> fmt::Result {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&vars[idx])?;
            if pow > 1 {
                write!(f, "^{pow}")?;
            }
            Ok(())
        };
        match self.m {
            Monomial::Exponents(e) => {
                for (i, &p) in e.iter().enumerate() {
                    if p > 0 {
                        put(f, i, p)?;
                    }
                }
            }
            Monomial::Word(w) => {
                // group runs of equal letters as powers
                let mut i = 0;
                while i < w.len() {
                    let mut j = i;
                    while j < w.len() && w[j] == w[i] {
                        j += 1;
                    }
                    put(f, w[i] as usize, (j - i) as u32)?;
                    i = j;
                }
            }
        }
        Ok(())
    }
}
