//! Sparse multivariate polynomials over the rationals.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// A named indeterminate.
///
/// `Coef { offset, branch }` is the coefficient of `t^{m_j + offset}` in the
/// `j`-th local section (`j = branch`); offsets 1, 2, 3 are the usual
/// `α_j, β_j, γ_j`. Anything else is a plain named variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Coef { offset: u32, branch: u32 },
    Var(String),
}

impl Symbol {
    pub fn alpha(j: u32) -> Self {
        Symbol::Coef { offset: 1, branch: j }
    }
    pub fn beta(j: u32) -> Self {
        Symbol::Coef { offset: 2, branch: j }
    }
    pub fn gamma(j: u32) -> Self {
        Symbol::Coef { offset: 3, branch: j }
    }
    pub fn coef(offset: u32, branch: u32) -> Self {
        Symbol::Coef { offset, branch }
    }
    /// Same as [`Symbol::parse`], so that printing and reading agree.
    pub fn var(name: &str) -> Self {
        Self::parse(name)
    }

    /// Parse `a3`, `b1`, `g2`, `c5_4` (offset 5, branch 4) or a bare name.
    pub fn parse(name: &str) -> Self {
        let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        if let Some(rest) = name.strip_prefix('c') {
            if let Some((k, j)) = rest.split_once('_') {
                if digits(k) && digits(j) {
                    return Symbol::coef(k.parse().unwrap(), j.parse().unwrap());
                }
            }
        }
        let mut chars = name.chars();
        if let Some(f) = chars.next() {
            let rest = chars.as_str();
            if digits(rest) {
                let j = rest.parse().unwrap();
                match f {
                    'a' => return Symbol::alpha(j),
                    'b' => return Symbol::beta(j),
                    'g' => return Symbol::gamma(j),
                    _ => {}
                }
            }
        }
        Symbol::Var(name.to_string())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Coef { offset: 1, branch } => write!(f, "a{branch}"),
            Symbol::Coef { offset: 2, branch } => write!(f, "b{branch}"),
            Symbol::Coef { offset: 3, branch } => write!(f, "g{branch}"),
            Symbol::Coef { offset, branch } => write!(f, "c{offset}_{branch}"),
            Symbol::Var(name) => f.write_str(name),
        }
    }
}

/// Product of symbol powers, kept sorted by symbol with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn of(sym: Symbol, exp: u32) -> Self {
        if exp == 0 {
            Self::one()
        } else {
            Monomial(vec![(sym, exp)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn exponent(&self, s: &Symbol) -> u32 {
        self.0.iter().find(|(t, _)| t == s).map_or(0, |(_, e)| *e)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    out.push(a.clone());
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// Split off `s^e`, returning the cofactor.
    fn without(&self, s: &Symbol) -> (u32, Monomial) {
        let e = self.exponent(s);
        let rest = self.0.iter().filter(|(t, _)| t != s).cloned().collect();
        (e, Monomial(rest))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::of(s, 1), BigRational::one());
        p
    }

    pub fn var(name: &str) -> Self {
        Self::symbol(Symbol::var(name))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::one())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.terms.keys().any(|m| m.exponent(s) > 0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Write `self = a · s + b` with `s` absent from `a` and `b`, if possible.
    pub fn linear_in(&self, s: &Symbol) -> Option<(Polynomial, Polynomial)> {
        let mut a = Self::zero();
        let mut b = Self::zero();
        for (m, c) in &self.terms {
            match m.without(s) {
                (0, rest) => b.add_term(rest, c.clone()),
                (1, rest) => a.add_term(rest, c.clone()),
                _ => return None,
            }
        }
        if a.contains(s) || b.contains(s) {
            return None;
        }
        Some((a, b))
    }

    /// Partial derivative.
    pub fn derivative(&self, s: &Symbol) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(s);
            if e > 0 {
                out.add_term(rest.mul(&Monomial::of(s.clone(), e - 1)), c * rat(e as i64));
            }
        }
        out
    }

    /// Replace `s` by `value` everywhere.
    pub fn substitute(&self, s: &Symbol, value: &Polynomial) -> Self {
        if !self.contains(s) {
            return self.clone();
        }
        let mut powers: Vec<Polynomial> = vec![Self::one()];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(s);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest_poly = Self::zero();
            rest_poly.add_term(rest, c.clone());
            out = out + &rest_poly * &powers[e as usize];
        }
        out
    }

    /// Evaluate with every symbol bound; returns `None` when a symbol is unbound.
    pub fn eval(&self, env: &HashMap<Symbol, BigRational>) -> Option<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (s, e) in &m.0 {
                let x = env.get(s)?;
                v *= num_traits::pow(x.clone(), *e as usize);
            }
            total += v;
        }
        Some(total)
    }

    /// Partial evaluation: bound symbols are replaced by their values.
    pub fn eval_partial(&self, env: &HashMap<Symbol, BigRational>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            let mut rest = Vec::new();
            for (s, e) in &m.0 {
                match env.get(s) {
                    Some(x) => v *= num_traits::pow(x.clone(), *e as usize),
                    None => rest.push((s.clone(), *e)),
                }
            }
            out.add_term(Monomial(rest), v);
        }
        out
    }

    /// Rescale by ±1 so the lexicographically least monomial has positive
    /// coefficient. Two polynomials agree up to sign iff their normal forms agree.
    pub fn sign_normalized(&self) -> Self {
        match self.terms.iter().next() {
            Some((_, c)) if c.is_negative() => -self.clone(),
            _ => self.clone(),
        }
    }

    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        self.sign_normalized() == other.sign_normalized()
    }

    /// Parse expressions such as `2*a1 + a1^2 - b2` or `a3*(2*b1 - b2)`.
    pub fn parse(input: &str) -> Result<Self, ParseError> {
        let mut p = Parser {
            src: input.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(ParseError::Trailing(p.pos));
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form: monomials in sorted order, explicit rational
    /// coefficients, `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.clone() + rhs.clone()
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.clone() - rhs.clone()
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected character at byte {0}")]
    Unexpected(usize),
    #[error("trailing input at byte {0}")]
    Trailing(usize),
    #[error("division by zero at byte {0}")]
    DivByZero(usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let d = self.unary()?.as_constant().ok_or(ParseError::Unexpected(at))?;
                    if d.is_zero() {
                        return Err(ParseError::DivByZero(at));
                    }
                    acc = acc.scale(&d.recip());
                }
                // Implicit multiplication: `2a1`, `a1(b1+b2)`.
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            return Ok(base.pow(e.to_u32().ok_or(ParseError::Unexpected(self.pos))?));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(if start == self.src.len() {
                ParseError::Eof
            } else {
                ParseError::Unexpected(start)
            });
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            None => Err(ParseError::Eof),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(ParseError::Unexpected(self.pos));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Polynomial::constant(BigRational::from_integer(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Polynomial::symbol(Symbol::parse(name)))
            }
            Some(_) => Err(ParseError::Unexpected(self.pos)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s).unwrap()
    }

    #[test]
    fn symbols_round_trip() {
        for name in ["a1", "b12", "g3", "c5_4", "x", "y"] {
            assert_eq!(Symbol::parse(name).to_string(), name);
        }
        assert_eq!(Symbol::parse("a2"), Symbol::alpha(2));
        assert_eq!(Symbol::parse("c3_2"), Symbol::gamma(2));
    }

    #[test]
    fn arithmetic() {
        let a = p("2*a1 - a2");
        assert_eq!((&a * &a).to_string(), p("4*a1^2 - 4*a1*a2 + a2^2").to_string());
        assert!((&a - &a).is_zero());
        assert_eq!(p("(x-1)*(y-1)"), p("x*y - x - y + 1"));
        assert_eq!(p("1/2*x + x/2"), p("x"));
        assert_eq!(p("2a1"), p("2*a1"));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p("-a2 + 2*a1").to_string(), "2*a1 - a2");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(p("x/3 - 1").to_string(), "-1 + 1/3*x");
    }

    #[test]
    fn sign_normal_form() {
        assert!(p("2*a1 - a2").eq_up_to_sign(&p("a2 - 2*a1")));
        assert!(!p("2*a1 - a2").eq_up_to_sign(&p("2*a1 + a2")));
    }

    #[test]
    fn calculus() {
        let f = p("x^3*y + 2*x*y^2");
        assert_eq!(f.derivative(&Symbol::var("x")), p("3*x^2*y + 2*y^2"));
        assert_eq!(f.substitute(&Symbol::var("y"), &p("x + 1")), p("x^4 + x^3 + 2*x^3 + 4*x^2 + 2*x"));
        let (a, b) = p("3*g2 + a1*b1").linear_in(&Symbol::gamma(2)).unwrap();
        assert_eq!(a, Polynomial::int(3));
        assert_eq!(b, p("a1*b1"));
        assert!(p("g2^2").linear_in(&Symbol::gamma(2)).is_none());
    }

    #[test]
    fn evaluation() {
        let env: HashMap<Symbol, BigRational> = [(Symbol::var("x"), rat(2)), (Symbol::var("y"), rat(3))].into();
        assert_eq!(p("x*y*(x-y)").eval(&env), Some(rat(-6)));
        assert_eq!(p("x*z").eval(&env), None);
        assert_eq!(p("x*z").eval_partial(&env), p("2*z"));
    }
}
