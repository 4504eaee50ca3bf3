//! Exact coefficient fields: the rationals and prime fields of odd characteristic.
//!
//! Both fields live behind the same [`FieldElement`] type so that polynomials,
//! triples and matrices can be built once and instantiated at runtime from a
//! [`FieldSpec`] such as `q` or `fp:7`. Elements are always kept in canonical
//! form, so structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest accepted modulus; keeps residue products inside `u64`.
const MAX_MODULUS: u64 = u32::MAX as u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

/// Which field the coefficients come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    modulus: Option<u64>,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { modulus: None };

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    /// The prime field `F_p`; rejects 2 and composite moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if !(3..=MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(FieldSpec { modulus: Some(p) })
    }

    pub fn kind(&self) -> FieldKind {
        match self.modulus {
            None => FieldKind::Rationals,
            Some(_) => FieldKind::PrimeField,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_finite(&self) -> bool {
        self.modulus.is_some()
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self.modulus {
            None => FieldElement(Repr::Rational(BigRational::from_integer(BigInt::from(n)))),
            Some(p) => FieldElement(Repr::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            }),
        }
    }

    fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self.modulus {
            None => FieldElement(Repr::Rational(BigRational::from_integer(n.clone()))),
            Some(p) => {
                let r = ((n % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                let value = u64::try_from(r).expect("residue fits in u64");
                FieldElement(Repr::Residue { value, modulus: p })
            }
        }
    }

    /// Builds `num / den`. Over `F_p` this is `num * den^{-1}`.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<FieldElement> {
        match self.modulus {
            None => Ok(FieldElement(Repr::Rational(r.clone()))),
            Some(_) => self
                .from_bigint(r.numer())
                .checked_div(&self.from_bigint(r.denom())),
        }
    }

    /// Residue with the given canonical value. Only meaningful for prime fields.
    pub fn residue(&self, value: u64) -> FieldElement {
        match self.modulus {
            None => self.from_i64(value as i64),
            Some(p) => FieldElement(Repr::Residue {
                value: value % p,
                modulus: p,
            }),
        }
    }

    /// All elements of a prime field in ascending residue order; `None` for `Q`.
    pub fn elements(&self) -> Option<Vec<FieldElement>> {
        self.modulus
            .map(|p| (0..p).map(|v| self.residue(v)).collect())
    }

    /// Parses `n` or `n/d` (rationals) or an integer (prime fields, reduced mod p).
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let s = text.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.trim_start()),
            None => (false, s),
        };
        let (num_txt, den_txt) = match body.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (body, None),
        };
        let parse_int = |t: &str| -> Result<BigInt> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(0, format!("invalid field element `{text}`")));
            }
            Ok(t.parse::<BigInt>().expect("digits parse"))
        };
        let mut num = parse_int(num_txt)?;
        if neg {
            num = -num;
        }
        match den_txt {
            None => Ok(self.from_bigint(&num)),
            Some(d) => {
                if self.is_finite() {
                    return Err(Error::parse(
                        0,
                        format!("fraction `{text}` is not valid in a prime field"),
                    ));
                }
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(FieldElement(Repr::Rational(BigRational::new(num, den))))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "q"),
            Some(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::rationals());
        }
        let p = s
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown field `{s}` (use `q` or `fp:<p>`)")))?;
        FieldSpec::prime(p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// An element of `Q` or `F_p` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement(Repr);

impl FieldElement {
    pub fn field(&self) -> FieldSpec {
        match self.0 {
            Repr::Rational(_) => FieldSpec::RATIONALS,
            Repr::Residue { modulus, .. } => FieldSpec {
                modulus: Some(modulus),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    /// The canonical rational value, if this is an element of `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Residue { .. } => None,
        }
    }

    /// The canonical residue in `[0, p)`, if this is an element of `F_p`.
    pub fn as_residue(&self) -> Option<u64> {
        match self.0 {
            Repr::Rational(_) => None,
            Repr::Residue { value, .. } => Some(value),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.field().to_string(),
                other.field().to_string(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a + b)),
            (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => {
                FieldElement(Repr::Residue {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                })
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a * b)),
            (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => {
                FieldElement(Repr::Residue {
                    value: a * b % modulus,
                    modulus: *modulus,
                })
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        self.checked_mul(&other.invert()?)
    }

    /// Multiplicative inverse.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(r) => FieldElement(Repr::Rational(r.recip())),
            Repr::Residue { value, modulus } => FieldElement(Repr::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            }),
        })
    }

    /// `a / 2`, always defined in odd characteristic.
    pub fn halve(&self) -> Self {
        let two = self.field().from_i64(2);
        self.checked_div(&two).expect("2 is invertible in odd characteristic")
    }

    pub fn square(&self) -> Self {
        self * self
    }

    fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Rational(r) => FieldElement(Repr::Rational(-r)),
            Repr::Residue { value, modulus } => FieldElement(Repr::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            }),
        }
    }

    /// Sign used when rendering: negative rationals print with a leading `-`.
    pub(crate) fn is_negative(&self) -> bool {
        matches!(&self.0, Repr::Rational(r) if r.is_negative())
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator forms panic on mixed fields; use the `checked_*` methods when the
// operands may come from different sources.

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}
