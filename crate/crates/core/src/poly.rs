//! Dense univariate polynomials over a [`FieldSpec`].
//!
//! Coefficients are stored in ascending degree with no trailing zeros, so the
//! zero polynomial is the empty vector and structural equality is polynomial
//! equality. The text form accepted by [`Poly::parse`] and produced by
//! `Display` is a signed sum of `c`, `c*t`, `t^k` and `c*t^k` terms.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Degree of a polynomial, with `NegInf` for the zero polynomial.
///
/// `NegInf` orders below every finite degree, so `max` over component degrees
/// gives the height of a triple with zero entries directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(field: FieldSpec, mut coeffs: Vec<FieldElement>) -> Result<Self> {
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
            }
        }
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Ok(Poly { field, coeffs })
    }

    fn from_trusted(field: FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_trusted(c.field(), vec![c])
    }

    /// The indeterminate `t`.
    pub fn t(field: FieldSpec) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::from_trusted(field, coeffs)
    }

    /// Convenience constructor from small integer coefficients, ascending.
    pub fn from_i64s(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::from_trusted(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for elements of `K` (including zero).
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading(&self) -> Result<&FieldElement> {
        self.coeffs.last().ok_or(Error::ZeroPolynomial)
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Self::from_trusted(self.field, coeffs))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(Self::from_trusted(self.field, coeffs))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &FieldElement) -> Poly {
        Self::from_trusted(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Halves every coefficient.
    pub fn halve(&self) -> Poly {
        Self::from_trusted(self.field, self.coeffs.iter().map(FieldElement::halve).collect())
    }

    pub fn square(&self) -> Poly {
        self * self
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }

    /// Euclidean division: returns `(q, r)` with `self = q*divisor + r`, `deg r < deg divisor`.
    pub fn euclid_divide(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(divisor)?;
        let lead_inv = divisor.leading().map_err(|_| Error::DivisionByZero)?.invert()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((
            Self::from_trusted(self.field, quot),
            Self::from_trusted(self.field, rem),
        ))
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Ok(l) => self.scale(&l.invert().expect("leading coefficient is nonzero")),
            Err(_) => self.clone(),
        }
    }

    /// Monic gcd of two polynomials, not both zero.
    pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
        a.check_same(b)?;
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let (_, r) = r0.euclid_divide(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
        }
        Ok(r0.monic())
    }

    /// Extended Euclid: `(g, s, u)` with `s*a + u*b = g`, `g` the monic gcd.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        a.check_same(b)?;
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let field = a.field;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
        let (mut u0, mut u1) = (Poly::zero(field), Poly::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.euclid_divide(&r1)?;
            let s = &s0 - &(&q * &s1);
            let u = &u0 - &(&q * &u1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            u0 = std::mem::replace(&mut u1, u);
        }
        let inv = r0.leading()?.invert()?;
        Ok((r0.scale(&inv), s0.scale(&inv), u0.scale(&inv)))
    }

    /// Monic generator of the ideal spanned by `ps`.
    pub fn gcd_many(ps: &[Poly]) -> Result<Poly> {
        let mut nonzero = ps.iter().filter(|p| !p.is_zero());
        let first = nonzero.next().ok_or(Error::ZeroIdeal)?;
        for p in ps {
            first.check_same(p)?;
        }
        let mut g = first.monic();
        for p in nonzero {
            if g.is_one() {
                break;
            }
            g = Poly::gcd(&g, p)?;
        }
        Ok(g)
    }

    /// `self(inner(t))`, by Horner's rule.
    pub fn compose(&self, inner: &Poly) -> Result<Poly> {
        self.check_same(inner)?;
        let mut acc = Poly::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        Ok(acc)
    }

    pub fn eval(&self, at: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * at) + c)
    }

    /// Parses the polynomial text grammar in the given field.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Poly> {
        Parser::new(text, field).parse()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = if c.is_negative() { -c } else { c.clone() };
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, magnitude.is_one()) {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{magnitude}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{magnitude}*t^{k}")?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    field: FieldSpec,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, field: FieldSpec) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            field,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.pos, message))
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        Ok(&self.src[start..self.pos])
    }

    fn parse(mut self) -> Result<Poly> {
        let mut acc: Vec<FieldElement> = Vec::new();
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            None => return self.err("empty polynomial"),
            _ => false,
        };
        loop {
            let (mut c, k) = self.term()?;
            if negate {
                c = -c;
            }
            if acc.len() <= k {
                acc.resize(k + 1, self.field.zero());
            }
            acc[k] = &acc[k] + &c;
            match self.peek() {
                None => break,
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(other) => return self.err(format!("unexpected `{}`", other as char)),
            }
            self.pos += 1;
        }
        Ok(Poly::from_trusted(self.field, acc))
    }

    fn term(&mut self) -> Result<(FieldElement, usize)> {
        match self.peek() {
            Some(b't') => Ok((self.field.one(), self.monomial()?)),
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                let num = self.digits()?;
                let coeff_text = if self.eat(b'/') {
                    if self.field.is_finite() {
                        self.pos -= 1;
                        return self.err("fraction syntax is not valid in a prime field");
                    }
                    let den = self.digits()?;
                    format!("{num}/{den}")
                } else {
                    num.to_string()
                };
                let c = self
                    .field
                    .parse_element(&coeff_text)
                    .map_err(|e| match e {
                        Error::Parse { message, .. } => Error::parse(start, message),
                        Error::DivisionByZero => Error::parse(start, "zero denominator"),
                        other => other,
                    })?;
                if self.eat(b'*') {
                    if self.peek() != Some(b't') {
                        return self.err("expected `t` after `*`");
                    }
                    Ok((c, self.monomial()?))
                } else {
                    Ok((c, 0))
                }
            }
            Some(other) => self.err(format!("unexpected `{}`", other as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn monomial(&mut self) -> Result<usize> {
        self.pos += 1; // 't'
        if self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphanumeric() {
            return self.err("only the indeterminate `t` is accepted");
        }
        if self.eat(b'^') {
            let start = self.pos;
            let k = self.digits()?;
            k.parse::<usize>()
                .map_err(|_| Error::parse(start, "exponent too large"))
        } else {
            Ok(1)
        }
    }
}
