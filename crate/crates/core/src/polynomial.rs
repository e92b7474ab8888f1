//! Sparse multivariate polynomials over ℚ, initial forms and the combinatorial
//! well-poisedness predicates.
//!
//! Initial forms use the MAXIMUM convention: `in_ω(f)` keeps the terms whose
//! exponents maximise `⟨ω, a⟩`. Many texts use the minimum instead.
//!
//! Term indices follow the order in which terms first appear in the input;
//! merging like terms keeps the position of the first occurrence. Printing
//! uses descending graded-lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{dot_exponent, format_rational, gcd_u32, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Indices of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&j| self.0[j] != 0).collect()
    }

    /// Sum of the entries (`⟨1, a⟩`).
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&e| int(i64::from(e))).collect()
    }

    /// gcd of the entries; 0 for the zero vector.
    pub fn content(&self) -> u32 {
        self.0.iter().fold(0, |g, &e| gcd_u32(g, e))
    }
}

/// Graded lexicographic: total degree first, then the first differing entry.
impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: Rational,
    pub exponent: ExponentVector,
}

impl Term {
    pub fn new(coefficient: Rational, exponent: impl Into<ExponentVector>) -> Self {
        Term {
            coefficient,
            exponent: exponent.into(),
        }
    }
}

/// A rational weight, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(pub Vec<Rational>);

impl WeightVector {
    pub fn from_ints(values: &[i64]) -> Self {
        WeightVector(values.iter().map(|&v| int(v)).collect())
    }

    pub fn zero(n: usize) -> Self {
        WeightVector(vec![Rational::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn pair(&self, exponent: &ExponentVector) -> Rational {
        dot_exponent(&self.0, exponent.entries())
    }
}

#[derive(Clone, Debug)]
pub struct SparsePolynomial {
    variables: Vec<String>,
    terms: Vec<Term>,
}

impl SparsePolynomial {
    /// Builds a polynomial in `n` variables named `x1, …, xn`.
    pub fn new(n: usize, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        Self::with_variables(names, terms)
    }

    /// Merges like terms (first occurrence fixes the position) and drops zero coefficients.
    pub fn with_variables(
        variables: Vec<String>,
        terms: impl IntoIterator<Item = Term>,
    ) -> Result<Self> {
        let n = variables.len();
        if n == 0 {
            return Err(Error::Malformed("no variables declared".into()));
        }
        let mut merged: Vec<Term> = Vec::new();
        for term in terms {
            if term.exponent.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: term.exponent.len(),
                });
            }
            match merged.iter_mut().find(|t| t.exponent == term.exponent) {
                Some(existing) => existing.coefficient += term.coefficient,
                None => merged.push(term),
            }
        }
        merged.retain(|t| !t.coefficient.is_zero());
        if merged.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(SparsePolynomial {
            variables,
            terms: merged,
        })
    }

    /// Parses `±`-separated monomials such as `3/2*x^2*y - z`.
    pub fn parse(text: &str, variables: &[&str]) -> Result<Self> {
        let names: Vec<String> = variables.iter().map(|v| v.to_string()).collect();
        let terms = parser::parse_terms(text, &names)?;
        Self::with_variables(names, terms)
    }

    pub fn n(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term(&self, i: usize) -> Result<&Term> {
        self.terms.get(i).ok_or(Error::TermIndex {
            index: i,
            len: self.terms.len(),
        })
    }

    /// Number of terms, `K`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn exponents(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.iter().map(|t| &t.exponent)
    }

    pub fn has_constant_term(&self) -> bool {
        self.exponents().any(ExponentVector::is_constant)
    }

    /// `f_S`: the terms with the given indices, in their original order.
    pub fn sub_sum(&self, indices: &[usize]) -> Result<Self> {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if idx.is_empty() {
            return Err(Error::EmptySubset);
        }
        let terms = idx
            .iter()
            .map(|&i| self.term(i).cloned())
            .collect::<Result<Vec<_>>>()?;
        Ok(SparsePolynomial {
            variables: self.variables.clone(),
            terms,
        })
    }

    fn sorted_terms(&self) -> Vec<&Term> {
        let mut v: Vec<&Term> = self.terms.iter().collect();
        v.sort_by(|a, b| b.exponent.cmp(&a.exponent));
        v
    }
}

/// Same variables and the same set of terms, irrespective of term order.
impl PartialEq for SparsePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.variables == other.variables && self.sorted_terms() == other.sorted_terms()
    }
}

impl Eq for SparsePolynomial {}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, term) in self.sorted_terms().into_iter().enumerate() {
            let negative = term.coefficient.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = term.coefficient.abs();
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() || term.exponent.is_constant() {
                factors.push(format_rational(&magnitude));
            }
            for (j, &e) in term.exponent.entries().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.variables[j].clone()),
                    _ => factors.push(format!("{}^{}", self.variables[j], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Indices of the terms maximising `⟨ω, a_i⟩`, ascending.
pub fn initial_terms(f: &SparsePolynomial, weight: &WeightVector) -> Result<Vec<usize>> {
    check_dim(f.n(), weight.len())?;
    let values: Vec<Rational> = f.exponents().map(|a| weight.pair(a)).collect();
    let max = values.iter().max().expect("polynomials are nonempty");
    Ok((0..values.len()).filter(|&i| values[i] == *max).collect())
}

/// `in_ω(f)`: the sub-sum of terms whose exponents maximise `⟨ω, a⟩`.
pub fn initial_form(f: &SparsePolynomial, weight: &WeightVector) -> Result<SparsePolynomial> {
    f.sub_sum(&initial_terms(f, weight)?)
}

/// First pair of terms (in index order) sharing a variable, with that variable.
pub fn shared_variable(f: &SparsePolynomial) -> Option<(usize, usize, usize)> {
    let mut owner: Vec<Option<usize>> = vec![None; f.n()];
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, a) in f.exponents().enumerate() {
        for j in a.support() {
            match owner[j] {
                Some(prev) => {
                    let candidate = (prev, i, j);
                    if best.is_none_or(|b| (candidate.0, candidate.1) < (b.0, b.1)) {
                        best = Some(candidate);
                    }
                }
                None => owner[j] = Some(i),
            }
        }
    }
    best.map(|(i, k, j)| (j, i, k))
}

pub fn is_disjointly_supported(f: &SparsePolynomial) -> bool {
    shared_variable(f).is_none()
}

/// gcd of all entries of both vectors; 0 when every entry is zero.
pub fn exponent_gcd(a: &ExponentVector, b: &ExponentVector) -> Result<u32> {
    check_dim(a.len(), b.len())?;
    Ok(gcd_u32(a.content(), b.content()))
}

fn supports_disjoint(a: &ExponentVector, b: &ExponentVector) -> bool {
    a.entries()
        .iter()
        .zip(b.entries())
        .all(|(&x, &y)| x == 0 || y == 0)
}

/// Irreducibility of `c₁x^{a₁} + c₂x^{a₂}` over an algebraically closed field:
/// disjoint supports and joint exponent gcd 1.
pub fn is_irreducible_binomial(t1: &Term, t2: &Term) -> Result<bool> {
    if t1.exponent == t2.exponent {
        return Err(Error::IdenticalExponents);
    }
    let g = exponent_gcd(&t1.exponent, &t2.exponent)?;
    Ok(g == 1 && supports_disjoint(&t1.exponent, &t2.exponent))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Variable index shared by the two (0-based) terms.
    SharedVariable {
        variable: usize,
        terms: (usize, usize),
    },
    /// Two terms whose joint exponent gcd exceeds one.
    CommonDivisor { terms: (usize, usize), gcd: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellPoisedReport {
    pub well_poised: bool,
    pub monomial: bool,
    pub witness: Option<Witness>,
}

/// Classifies `f` by the disjoint-support and pairwise-gcd criterion. Shared variables are
/// reported before gcd failures; within each kind the lexicographically first pair wins.
pub fn is_well_poised(f: &SparsePolynomial) -> WellPoisedReport {
    let monomial = f.is_monomial();
    if let Some((variable, i, j)) = shared_variable(f) {
        return WellPoisedReport {
            well_poised: false,
            monomial,
            witness: Some(Witness::SharedVariable {
                variable,
                terms: (i, j),
            }),
        };
    }
    let exps: Vec<&ExponentVector> = f.exponents().collect();
    for i in 0..exps.len() {
        for j in i + 1..exps.len() {
            let g = gcd_u32(exps[i].content(), exps[j].content());
            if g != 1 {
                return WellPoisedReport {
                    well_poised: false,
                    monomial,
                    witness: Some(Witness::CommonDivisor {
                        terms: (i, j),
                        gcd: g,
                    }),
                };
            }
        }
    }
    WellPoisedReport {
        well_poised: true,
        monomial,
        witness: None,
    }
}

mod parser {
    use std::str::FromStr;

    use super::*;

    #[derive(Clone, Debug, PartialEq)]
    enum Token {
        Number(BigInt),
        Ident(String),
        Plus,
        Minus,
        Star,
        Caret,
        Slash,
    }

    fn tokenize(text: &str) -> Result<Vec<Token>> {
        let chars: Vec<char> = text.chars().collect();
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                c if c.is_whitespace() => i += 1,
                '+' | '-' | '*' | '^' | '/' => {
                    tokens.push(match c {
                        '+' => Token::Plus,
                        '-' => Token::Minus,
                        '*' => Token::Star,
                        '^' => Token::Caret,
                        _ => Token::Slash,
                    });
                    i += 1;
                }
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    tokens.push(Token::Number(BigInt::from_str(&s).expect("digits")));
                }
                c if c.is_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    tokens.push(Token::Ident(chars[start..i].iter().collect()));
                }
                other => return Err(Error::Malformed(format!("unexpected character `{other}`"))),
            }
        }
        Ok(tokens)
    }

    struct Cursor<'a> {
        tokens: &'a [Token],
        pos: usize,
        names: &'a [String],
    }

    impl Cursor<'_> {
        fn peek(&self) -> Option<&Token> {
            self.tokens.get(self.pos)
        }

        fn next(&mut self) -> Option<Token> {
            let t = self.tokens.get(self.pos).cloned();
            self.pos += 1;
            t
        }

        fn monomial(&mut self, sign: Rational) -> Result<Term> {
            let mut coefficient = sign;
            let mut exponent = vec![0u32; self.names.len()];
            loop {
                match self.next() {
                    Some(Token::Number(p)) => {
                        let mut value = Rational::from_integer(p);
                        if self.peek() == Some(&Token::Slash) {
                            self.pos += 1;
                            match self.next() {
                                Some(Token::Number(q)) if !q.is_zero() => {
                                    value /= Rational::from_integer(q);
                                }
                                _ => {
                                    return Err(Error::Malformed("bad rational coefficient".into()))
                                }
                            }
                        }
                        coefficient *= value;
                    }
                    Some(Token::Ident(name)) => {
                        let j = self
                            .names
                            .iter()
                            .position(|v| *v == name)
                            .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                        let power = if self.peek() == Some(&Token::Caret) {
                            self.pos += 1;
                            match self.next() {
                                Some(Token::Number(e)) => u32::try_from(e).map_err(|_| {
                                    Error::Malformed(format!("exponent of `{name}` too large"))
                                })?,
                                Some(Token::Minus) => return Err(Error::NegativeExponent(name)),
                                _ => {
                                    return Err(Error::Malformed(format!(
                                        "missing exponent after `{name}^`"
                                    )))
                                }
                            }
                        } else {
                            1
                        };
                        exponent[j] = exponent[j]
                            .checked_add(power)
                            .ok_or_else(|| Error::Malformed("exponent overflow".into()))?;
                    }
                    Some(t) => return Err(Error::Malformed(format!("unexpected token {t:?}"))),
                    None => return Err(Error::Malformed("dangling operator".into())),
                }
                match self.peek() {
                    Some(Token::Star) => self.pos += 1,
                    Some(Token::Plus) | Some(Token::Minus) | None => break,
                    Some(t) => return Err(Error::Malformed(format!("unexpected token {t:?}"))),
                }
            }
            Ok(Term::new(coefficient, exponent))
        }
    }

    pub(super) fn parse_terms(text: &str, names: &[String]) -> Result<Vec<Term>> {
        let tokens = tokenize(text)?;
        if tokens.is_empty() {
            return Err(Error::Malformed("empty input".into()));
        }
        let mut cursor = Cursor {
            tokens: &tokens,
            pos: 0,
            names,
        };
        let mut terms = Vec::new();
        let mut first = true;
        while cursor.peek().is_some() {
            let sign = match cursor.peek() {
                Some(Token::Plus) => {
                    cursor.pos += 1;
                    Rational::one()
                }
                Some(Token::Minus) => {
                    cursor.pos += 1;
                    -Rational::one()
                }
                _ if first => Rational::one(),
                Some(t) => return Err(Error::Malformed(format!("unexpected token {t:?}"))),
                None => unreachable!(),
            };
            first = false;
            terms.push(cursor.monomial(sign)?);
        }
        Ok(terms)
    }
}
