//! Bivariate polynomials in `x` and `λ` with exact rational coefficients.
//!
//! A [`Poly`] is a sparse map from [`Monomial`] to a nonzero [`Rational`]. Because no
//! zero coefficient is ever stored, structural equality of two values is exactly
//! polynomial equality, and that is what every identity check relies on.
//!
//! Text form (`l` stands for `λ`):
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := 'x' ['^' nat] | 'l' ['^' nat]
//! coeff  := int ['/' posint]
//! ```
//!
//! [`Poly::from_str`] also accepts parentheses, a leading unary minus and the
//! character `λ` for `l`. [`Display`](fmt::Display) emits the canonical form: terms by
//! descending `x`-degree, then ascending `λ`-degree; unit coefficients are elided on
//! nonconstant terms and signs are folded into the separators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// The two indeterminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Lambda,
}

/// Exponent pair `x^x · λ^lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub x: u32,
    pub lambda: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, lambda: 0 };

    pub fn new(x: u32, lambda: u32) -> Self {
        Monomial { x, lambda }
    }

    fn mul(self, other: Monomial) -> Monomial {
        Monomial {
            x: self.x + other.x,
            lambda: self.lambda + other.lambda,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1, 0)
    }

    pub fn lambda() -> Self {
        Poly::monomial(Rational::one(), 0, 1)
    }

    pub fn constant(value: Rational) -> Self {
        Poly::monomial(value, 0, 0)
    }

    pub fn int(value: i64) -> Self {
        Poly::constant(int(value))
    }

    pub fn monomial(coeff: Rational, x: u32, lambda: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Monomial::new(x, lambda), coeff);
        }
        Poly { terms }
    }

    /// Builds a polynomial from arbitrary `(monomial, coefficient)` pairs, merging
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut out = Poly::zero();
        for (mono, coeff) in terms {
            out.add_term(mono, coeff);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0, 0).is_one()
    }

    /// True when the polynomial has no `x` or `λ` dependence.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.coeff(0, 0))
    }

    pub fn coeff(&self, x: u32, lambda: u32) -> Rational {
        self.terms
            .get(&Monomial::new(x, lambda))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest power of `var`, or `None` for the zero polynomial.
    pub fn degree(&self, var: Var) -> Option<u32> {
        self.terms.keys().map(|m| exponent(m, var)).max()
    }

    /// The coefficient of `x^power`, as a polynomial in `λ` alone.
    pub fn x_coeff(&self, power: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.x == power)
                .map(|(m, c)| (Monomial::new(0, m.lambda), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Poly {
        if factor.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * factor)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact formal partial derivative.
    pub fn derivative(&self, var: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = exponent(m, var);
            if e == 0 {
                continue;
            }
            let lowered = match var {
                Var::X => Monomial::new(m.x - 1, m.lambda),
                Var::Lambda => Monomial::new(m.x, m.lambda - 1),
            };
            out.add_term(lowered, c * int(i64::from(e)));
        }
        out
    }

    /// Exact evaluation at `λ = at_lambda`, `x = at_x` by nested Horner schemes.
    pub fn eval(&self, at_lambda: &Rational, at_x: &Rational) -> Rational {
        let Some(top) = self.degree(Var::X) else {
            return Rational::zero();
        };
        let mut acc = Rational::zero();
        for power in (0..=top).rev() {
            acc = acc * at_x + horner(&self.x_coeff(power), Var::Lambda, at_lambda);
        }
        acc
    }

    /// Substitutes whichever of `λ` and `x` are given and keeps the rest symbolic.
    pub fn eval_partial(&self, at_lambda: Option<&Rational>, at_x: Option<&Rational>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = *m;
            if let Some(l) = at_lambda {
                coeff *= rational_pow(l, m.lambda);
                mono.lambda = 0;
            }
            if let Some(x) = at_x {
                coeff *= rational_pow(x, m.x);
                mono.x = 0;
            }
            out.add_term(mono, coeff);
        }
        out
    }

    /// Composition `p(x, λ) ↦ p(replacement, λ)`.
    pub fn substitute_x(&self, replacement: &Poly) -> Poly {
        let Some(top) = self.degree(Var::X) else {
            return Poly::zero();
        };
        let mut acc = Poly::zero();
        for power in (0..=top).rev() {
            acc = &(&acc * replacement) + &self.x_coeff(power);
        }
        acc
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Terms in canonical display order.
    fn display_order(&self) -> Vec<(&Monomial, &Rational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.x.cmp(&a.x).then(a.lambda.cmp(&b.lambda)));
        terms
    }
}

fn exponent(m: &Monomial, var: Var) -> u32 {
    match var {
        Var::X => m.x,
        Var::Lambda => m.lambda,
    }
}

fn horner(univariate: &Poly, var: Var, at: &Rational) -> Rational {
    let Some(top) = univariate.degree(var) else {
        return Rational::zero();
    };
    let mut acc = Rational::zero();
    for power in (0..=top).rev() {
        let coeff = match var {
            Var::X => univariate.coeff(power, 0),
            Var::Lambda => univariate.coeff(0, power),
        };
        acc = acc * at + coeff;
    }
    acc
}

fn rational_pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

impl From<Rational> for Poly {
    fn from(value: Rational) -> Self {
        Poly::constant(value)
    }
}

impl From<i64> for Poly {
    fn from(value: i64) -> Self {
        Poly::int(value)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;

    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(*mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (mono, coeff)) in self.display_order().into_iter().enumerate() {
            let negative = coeff.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = coeff.abs();
            let mut factors = Vec::new();
            if mono.lambda > 0 {
                factors.push(power_token("l", mono.lambda));
            }
            if mono.x > 0 {
                factors.push(power_token("x", mono.x));
            }
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

fn power_token(symbol: &str, exp: u32) -> String {
    if exp == 1 {
        symbol.to_string()
    } else {
        format!("{symbol}^{exp}")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        let mut parser = Parser::new(s);
        let poly = parser.expr()?;
        parser.skip_ws();
        match parser.peek() {
            None => Ok(poly),
            Some((offset, c)) => Err(Error::Parse {
                offset,
                message: format!("unexpected character `{c}`"),
            }),
        }
    }
}

/// Parses the polynomial text grammar. Equivalent to `text.parse::<Poly>()`.
pub fn parse(text: &str) -> Result<Poly> {
    text.parse()
}

/// Recursive-descent parser over byte offsets.
struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, char)> {
        self.text[self.pos..].chars().next().map(|c| (self.pos, c))
    }

    fn bump(&mut self) {
        if let Some((_, c)) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while let Some((_, c)) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.bump();
        }
    }

    fn error<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        self.skip_ws();
        let mut negate = false;
        if let Some((_, c @ ('+' | '-'))) = self.peek() {
            negate = c == '-';
            self.bump();
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            self.skip_ws();
            match self.peek() {
                Some((_, '+')) => {
                    self.bump();
                    acc += &self.term()?;
                }
                Some((_, '-')) => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if let Some((_, '*')) = self.peek() {
                self.bump();
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        self.skip_ws();
        let base = match self.peek() {
            Some((_, 'x')) => {
                self.bump();
                Poly::x()
            }
            Some((_, 'l' | 'λ')) => {
                self.bump();
                Poly::lambda()
            }
            Some((_, '(')) => {
                self.bump();
                let inner = self.expr()?;
                self.skip_ws();
                match self.peek() {
                    Some((_, ')')) => self.bump(),
                    _ => return self.error("expected `)`"),
                }
                inner
            }
            Some((_, c)) if c.is_ascii_digit() => return self.coefficient(),
            Some(_) => return self.error("expected a coefficient, `x`, `l` or `(`"),
            None => return self.error("unexpected end of input"),
        };
        self.skip_ws();
        if let Some((_, '^')) = self.peek() {
            self.bump();
            self.skip_ws();
            let exp = self.natural()?;
            let exp = u32::try_from(exp).or_else(|_| self.error("exponent too large"))?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn coefficient(&mut self) -> Result<Poly> {
        let numer = self.natural()?;
        self.skip_ws();
        if let Some((_, '/')) = self.peek() {
            self.bump();
            self.skip_ws();
            let at = self.pos;
            let denom = self.natural()?;
            if denom.is_zero() {
                return Err(Error::Parse {
                    offset: at,
                    message: "denominator must be positive".to_string(),
                });
            }
            return Ok(Poly::constant(Rational::new(numer, denom)));
        }
        Ok(Poly::constant(Rational::from_integer(numer)))
    }

    fn natural(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while let Some((_, c)) = self.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            self.bump();
        }
        if start == self.pos {
            return self.error("expected a natural number");
        }
        Ok(self.text[start..self.pos]
            .parse()
            .expect("digits always parse"))
    }
}
