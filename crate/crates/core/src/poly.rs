//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] carries its ordered variable list and a map from
//! [`ExponentVector`] to nonzero [`BigRational`] coefficients. Zero
//! coefficients are never stored, so structural equality is mathematical
//! equality.
//!
//! Text input follows a small grammar for expanded polynomials:
//!
//! ```text
//! poly   := term (("+"|"-") term)* ;
//! term   := coeff ("*"? mono)? | mono ;
//! mono   := factor ("*"? factor)* ;
//! factor := var ("^" nat)? ;
//! coeff  := nat ("/" nat)? ;
//! var    := letter (letter|digit)* ;
//! ```
//!
//! Whitespace is ignored and the first term may carry a leading `-`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponents `(m_1, ..., m_r)` of a monomial `x_1^m_1 ... x_r^m_r`.
///
/// Ordered lexicographically, which is the monomial order used everywhere
/// a deterministic basis is needed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zeros(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    /// `x_i`, as an exponent vector.
    pub fn unit(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        ExponentVector(exps)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// Exponent-wise sum, i.e. the exponents of the product monomial.
    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

/// A polynomial in a fixed, ordered list of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    variables: Vec<String>,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl Polynomial {
    pub fn zero(variables: Vec<String>) -> Self {
        Polynomial {
            variables,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(variables: Vec<String>, c: BigRational) -> Self {
        let n = variables.len();
        let mut p = Polynomial::zero(variables);
        p.add_term(ExponentVector::zeros(n), c);
        p
    }

    pub fn one(variables: Vec<String>) -> Self {
        Polynomial::constant(variables, BigRational::one())
    }

    /// Single term `c * x^m`.
    pub fn monomial(
        variables: Vec<String>,
        exponents: ExponentVector,
        c: BigRational,
    ) -> Result<Self> {
        if exponents.len() != variables.len() {
            return Err(Error::VariableMismatch);
        }
        let mut p = Polynomial::zero(variables);
        p.add_term(exponents, c);
        Ok(p)
    }

    /// Builds a polynomial from arbitrary terms, combining repeated exponents.
    pub fn from_terms<I>(variables: Vec<String>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        let mut p = Polynomial::zero(variables);
        for (exps, c) in terms {
            if exps.len() != p.nvars() {
                return Err(Error::VariableMismatch);
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    /// Parses `text` over the given ordered variable list.
    pub fn parse(text: &str, variables: &[&str]) -> Result<Self> {
        let vars = variables.iter().map(|v| v.to_string()).collect();
        parse_polynomial(text, vars)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter()
    }

    /// The support: exponent vectors with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys()
    }

    pub fn coefficient(&self, exponents: &ExponentVector) -> BigRational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, exps: ExponentVector, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.variables != other.variables {
            return Err(Error::VariableMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = Polynomial::zero(self.variables.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Product with a monomial `x^m` (coefficient one).
    pub fn mul_monomial(&self, m: &ExponentVector) -> Polynomial {
        Polynomial {
            variables: self.variables.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.mul(m), c.clone())).collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            variables: self.variables.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.variables.clone());
        }
        Polynomial {
            variables: self.variables.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Formal partial derivative with respect to the variable at `index` (0-based).
    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial> {
        if index >= self.nvars() {
            return Err(Error::IndexOutOfRange {
                index,
                count: self.nvars(),
            });
        }
        let mut out = Polynomial::zero(self.variables.clone());
        for (e, c) in &self.terms {
            let k = e.get(index);
            if k == 0 {
                continue;
            }
            let mut exps = e.0.clone();
            exps[index] -= 1;
            out.add_term(ExponentVector(exps), c * BigRational::from_integer(k.into()));
        }
        Ok(out)
    }

    /// All partial derivatives `(f_1, ..., f_r)`.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars())
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Renames nothing, but reorders variables: variable `j` of the result
    /// is variable `order[j]` of `self`.
    pub fn permute_variables(&self, order: &[usize]) -> Result<Polynomial> {
        let n = self.nvars();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::VariableMismatch);
        }
        let variables = order.iter().map(|&i| self.variables[i].clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let exps = order.iter().map(|&i| e.get(i)).collect();
                (ExponentVector(exps), c.clone())
            })
            .collect();
        Ok(Polynomial { variables, terms })
    }
}

/// Parses `text` over the ordered variable list `variables`.
pub fn parse_polynomial(text: &str, variables: Vec<String>) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        variables: &variables,
    };
    let terms = parser.poly()?;
    Polynomial::from_terms(variables.clone(), terms)
}

/// Variable names occurring in `text`, sorted and deduplicated.
pub fn scan_variables(text: &str) -> Result<Vec<String>> {
    let mut names: Vec<String> = tokenize(text)?
        .into_iter()
        .filter_map(|t| match t.kind {
            TokenKind::Ident(name) => Some(name),
            _ => None,
        })
        .collect();
    names.sort();
    names.dedup();
    Ok(names)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Nat(BigUint),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    position: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let kind = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => TokenKind::Plus,
            '-' => TokenKind::Minus,
            '*' => TokenKind::Star,
            '/' => TokenKind::Slash,
            '^' => TokenKind::Caret,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                tokens.push(Token {
                    kind: TokenKind::Nat(digits.parse().expect("decimal digits")),
                    position: start,
                });
                continue;
            }
            c if c.is_alphabetic() => {
                while i < chars.len() && (chars[i].is_alphanumeric()) {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(chars[start..i].iter().collect()),
                    position: start,
                });
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    position: start,
                    expected: "term, operator or whitespace".into(),
                })
            }
        };
        tokens.push(Token {
            kind,
            position: start,
        });
        i += 1;
    }
    tokens.push(Token {
        kind: TokenKind::End,
        position: chars.len(),
    });
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    variables: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &TokenKind {
        &self.tokens[self.pos].kind
    }

    fn position(&self) -> usize {
        self.tokens[self.pos].position
    }

    fn bump(&mut self) -> TokenKind {
        let kind = self.tokens[self.pos].kind.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        kind
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Syntax {
            position: self.position(),
            expected: expected.into(),
        })
    }

    fn poly(&mut self) -> Result<Vec<(ExponentVector, BigRational)>> {
        let mut terms = Vec::new();
        let mut negative = false;
        if *self.peek() == TokenKind::Minus {
            self.bump();
            negative = true;
        }
        loop {
            let (e, c) = self.term()?;
            terms.push((e, if negative { -c } else { c }));
            match self.peek() {
                TokenKind::Plus => negative = false,
                TokenKind::Minus => negative = true,
                TokenKind::End => break,
                _ => return self.error("`+`, `-` or end of input"),
            }
            self.bump();
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(ExponentVector, BigRational)> {
        match self.peek().clone() {
            TokenKind::Nat(num) => {
                self.bump();
                let coeff = if *self.peek() == TokenKind::Slash {
                    self.bump();
                    let at = self.position();
                    match self.bump() {
                        TokenKind::Nat(den) if !den.is_zero() => {
                            BigRational::new(BigInt::from(num), BigInt::from(den))
                        }
                        _ => {
                            return Err(Error::Syntax {
                                position: at,
                                expected: "nonzero natural denominator".into(),
                            })
                        }
                    }
                } else {
                    BigRational::from_integer(BigInt::from(num))
                };
                let exps = match self.peek() {
                    TokenKind::Star => {
                        self.bump();
                        self.mono()?
                    }
                    TokenKind::Ident(_) => self.mono()?,
                    _ => ExponentVector::zeros(self.variables.len()),
                };
                Ok((exps, coeff))
            }
            TokenKind::Ident(_) => Ok((self.mono()?, BigRational::one())),
            _ => self.error("coefficient or variable"),
        }
    }

    fn mono(&mut self) -> Result<ExponentVector> {
        let mut exps = vec![0u32; self.variables.len()];
        self.factor(&mut exps)?;
        loop {
            match self.peek() {
                TokenKind::Star => {
                    self.bump();
                    self.factor(&mut exps)?;
                }
                TokenKind::Ident(_) => self.factor(&mut exps)?,
                _ => break,
            }
        }
        Ok(ExponentVector(exps))
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let name = match self.peek().clone() {
            TokenKind::Ident(name) => name,
            _ => return self.error("variable"),
        };
        self.bump();
        let index = self
            .variables
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
        let mut power = 1u32;
        if *self.peek() == TokenKind::Caret {
            self.bump();
            let at = self.position();
            power = match self.bump() {
                TokenKind::Nat(n) => n.to_u32().ok_or(Error::Syntax {
                    position: at,
                    expected: "exponent below 2^32".into(),
                })?,
                _ => {
                    return Err(Error::Syntax {
                        position: at,
                        expected: "natural exponent".into(),
                    })
                }
            };
        }
        exps[index] = exps[index].checked_add(power).ok_or(Error::Syntax {
            position: self.position(),
            expected: "exponent below 2^32".into(),
        })?;
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    /// Writes the polynomial in the input grammar, largest exponent vector first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = e
                .as_slice()
                .iter()
                .zip(&self.variables)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
