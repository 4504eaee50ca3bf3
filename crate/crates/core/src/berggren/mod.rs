//! Descent decomposition of standard Pythagorean triples.
//!
//! A standard triple (SPT) `Q = (x, y, z)` with `x != 0` is written uniquely as
//!
//! ```text
//! Q^T = c * M_{f_1} * ... * M_{f_k} * S_f^T
//! ```
//!
//! with `c` a nonzero constant and every `f_i`, `f` non-constant. The word is
//! found by repeatedly applying `M_f^{-1}` with `f` the Euclidean quotient of
//! `z` by `x`, which strictly lowers the height, until `deg z = 2 deg x`; at
//! that point the triple is `c * S_f` and `c`, `f` can be read off.
//!
//! Triples `(0, c, c)` have no such word; they are represented with the
//! [`Base::Axis`] marker.

mod tree;

pub use tree::{enumerate_tree, render_dot, CoefficientBound, TreeNode, TreeNodeJson};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{Degree, Poly};
use crate::transform::{mf, mf_inverse, Mat3};
use crate::triple::{Classification, Triple};

/// Innermost factor of a word: `S_f`, or the axis triple `(0, 1, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    Axis,
    Poly(Poly),
}

/// `c * M_{f_1} ... M_{f_k} * S_base`, with `word = [f_1, ..., f_k]`.
///
/// The stored order is the order of the displayed product, so reconstruction
/// applies `M_{f_k}` to `S_base` first and `M_{f_1}` last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BerggrenWord {
    pub c: FieldElement,
    pub word: Vec<Poly>,
    pub base: Base,
}

/// `{"c":"<elt>","word":["<poly>",...],"base":"<poly>"|"AXIS"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    pub c: String,
    pub word: Vec<String>,
    pub base: String,
}

impl BerggrenWord {
    pub fn field(&self) -> FieldSpec {
        self.c.field()
    }

    pub fn to_json(&self) -> WordJson {
        WordJson {
            c: self.c.to_string(),
            word: self.word.iter().map(Poly::to_string).collect(),
            base: match &self.base {
                Base::Axis => "AXIS".to_string(),
                Base::Poly(f) => f.to_string(),
            },
        }
    }

    pub fn from_json(json: &WordJson, field: FieldSpec) -> Result<Self> {
        let word = json
            .word
            .iter()
            .map(|s| Poly::parse(s, field))
            .collect::<Result<Vec<_>>>()?;
        let base = if json.base.trim() == "AXIS" {
            Base::Axis
        } else {
            Base::Poly(Poly::parse(&json.base, field)?)
        };
        Ok(BerggrenWord {
            c: field.parse_element(&json.c)?,
            word,
            base,
        })
    }

    /// Height of the reconstructed triple: `2 * (sum deg f_i + deg base)`.
    pub fn height(&self) -> usize {
        let base = match &self.base {
            Base::Axis => 0,
            Base::Poly(f) => f.degree().finite().unwrap_or(0),
        };
        2 * (base
            + self
                .word
                .iter()
                .map(|f| f.degree().finite().unwrap_or(0))
                .sum::<usize>())
    }
}

impl fmt::Display for BerggrenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.c)?;
        for g in &self.word {
            write!(f, " * M_{{{g}}}")?;
        }
        match &self.base {
            Base::Axis => write!(f, " * (0, 1, 1)"),
            Base::Poly(g) => write!(f, " * S_{{{g}}}"),
        }
    }
}

/// What the base case recovers from `Q = c * S_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCase {
    /// Constant quotient of `y` by `x^2`.
    pub a: FieldElement,
    /// `y - a x^2`.
    pub b: Poly,
    /// `z - a x^2`.
    pub beta: Poly,
    pub c: FieldElement,
    pub f: Poly,
}

fn spt_or_err(q: &Triple) -> Result<()> {
    match q.classify() {
        Classification::Spt => Ok(()),
        other => Err(Error::NotSpt(other.to_string())),
    }
}

fn twice(d: Degree) -> Degree {
    match d {
        Degree::NegInf => Degree::NegInf,
        Degree::Finite(n) => Degree::Finite(2 * n),
    }
}

/// One descent step: `f = z quo x` and `M_f^{-1} Q`.
///
/// Requires an SPT with `x != 0` and `deg z != 2 deg x`; the result is again an
/// SPT with nonzero first entry and strictly smaller height.
pub fn descent_step(q: &Triple) -> Result<(Poly, Triple)> {
    if !q.is_spt() {
        return Err(Error::NotDescendable("input is not an SPT".into()));
    }
    if q.x.is_zero() {
        return Err(Error::NotDescendable("x = 0".into()));
    }
    if q.z.degree() == twice(q.x.degree()) {
        return Err(Error::NotDescendable("deg z = 2 deg x (base case)".into()));
    }
    descend(q)
}

fn descend(q: &Triple) -> Result<(Poly, Triple)> {
    let (f, _) = q.z.euclid_divide(&q.x)?;
    if f.is_constant() {
        return Err(Error::InvariantViolation(format!(
            "descent quotient {f} is constant for {q}"
        )));
    }
    let next = mf_inverse(&f).apply(q);
    if next.x.is_zero() || next.height() >= q.height() || !next.has_standard_shape() {
        return Err(Error::InvariantViolation(format!(
            "descent by M_{{{f}}} from {q} gave {next}"
        )));
    }
    Ok((f, next))
}

/// Reads `c` and `f` off an SPT with `x != 0` and `deg z = 2 deg x`.
pub fn base_case_extract(q: &Triple) -> Result<BaseCase> {
    spt_or_err(q)?;
    if q.x.is_zero() || q.z.degree() != twice(q.x.degree()) {
        return Err(Error::NotDescendable(
            "base case needs x != 0 and deg z = 2 deg x".into(),
        ));
    }
    extract(q)
}

fn extract(q: &Triple) -> Result<BaseCase> {
    let field = q.field();
    let x2 = q.x.square();
    let (quot, b) = q.y.euclid_divide(&x2)?;
    if quot.degree() != Degree::Finite(0) {
        return Err(Error::InvariantViolation(format!(
            "quotient of y by x^2 is not a nonzero constant: {quot}"
        )));
    }
    let a = quot.coeff(0);
    let beta = &q.z - &x2.scale(&a);
    if b != -&beta {
        return Err(Error::InvariantViolation(format!("b = {b} but beta = {beta}")));
    }
    // 1 + 4ab = 0
    let four_a = a.checked_mul(&field.from_i64(4))?;
    let check = &Poly::one(field) + &b.scale(&four_a);
    if !check.is_zero() {
        return Err(Error::InvariantViolation(format!("1 + 4ab = {check}")));
    }
    let f = q.x.scale(&a.checked_mul(&field.from_i64(2))?);
    let c = four_a.invert()?;
    if Triple::make_s(&f).triple.scale(&c)? != *q {
        return Err(Error::InvariantViolation(format!("{q} != {c} * S_{{{f}}}")));
    }
    Ok(BaseCase { a, b, beta, c, f })
}

/// The unique word of an SPT; `(0, c, c)` maps to `(c, [], AXIS)`.
pub fn decompose(q: &Triple) -> Result<BerggrenWord> {
    spt_or_err(q)?;
    if q.x.is_zero() {
        return Ok(BerggrenWord {
            c: q.y.leading()?.clone(),
            word: Vec::new(),
            base: Base::Axis,
        });
    }
    let mut word = Vec::new();
    let mut current = q.clone();
    while current.z.degree() != twice(current.x.degree()) {
        let (f, next) = descend(&current)?;
        word.push(f);
        current = next;
    }
    let base = extract(&current)?;
    let result = BerggrenWord {
        c: base.c,
        word,
        base: Base::Poly(base.f),
    };
    let check = reconstruct(&result, q.field())?;
    if check != *q {
        return Err(Error::InvariantViolation(format!(
            "word {result} reconstructs to {check}, not {q}"
        )));
    }
    Ok(result)
}

/// `c * M_{f_1} ... M_{f_k} * S_base`, or `(0, c, c)` for the axis marker.
pub fn reconstruct(w: &BerggrenWord, field: FieldSpec) -> Result<Triple> {
    if w.c.field() != field {
        return Err(Error::FieldMismatch(field.to_string(), w.c.field().to_string()));
    }
    if w.c.is_zero() {
        return Err(Error::MalformedWord("c must be nonzero".into()));
    }
    for f in &w.word {
        if f.field() != field {
            return Err(Error::FieldMismatch(field.to_string(), f.field().to_string()));
        }
        if f.is_constant() {
            return Err(Error::MalformedWord(format!("word entry {f} is constant")));
        }
    }
    let mut q = match &w.base {
        Base::Axis => {
            if !w.word.is_empty() {
                return Err(Error::MalformedWord(
                    "an AXIS base cannot carry word entries".into(),
                ));
            }
            return Ok(Triple::axis(&w.c));
        }
        Base::Poly(f) => {
            if f.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), f.field().to_string()));
            }
            if f.is_constant() {
                return Err(Error::MalformedWord(format!("base {f} is constant")));
            }
            Triple::make_s(f).triple.scale(&w.c)?
        }
    };
    for f in w.word.iter().rev() {
        q = mf(f).apply(&q);
    }
    Ok(q)
}

/// Result of bringing a non-standard primitive triple to standard form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    /// Type of the input triple.
    pub kind: Classification,
    /// The constant `f` with `M_f^{-1} Q` standard.
    pub f: FieldElement,
    /// `M_f^{-1}`.
    pub matrix: Mat3,
    pub triple: Triple,
}

/// Chooses the constant `f` for the triple's type and applies `M_f^{-1}`.
///
/// * Type I: `f = 0`
/// * Type II: `f = l(x) / (2 l(z))`
/// * Type III: `f = l(x) / (2 (l(z) - l(y)))`
/// * Type IV: `f = -l(x) / (2 l(y))`
pub fn normalize_to_spt(q: &Triple) -> Result<Normalization> {
    let kind = q.classify();
    let lead = |p: &Poly| p.leading().cloned();
    let f = match kind {
        Classification::Spt => return Err(Error::AlreadySpt),
        Classification::NotPythagorean | Classification::NotPrimitive => {
            return Err(Error::NotSpt(kind.to_string()))
        }
        Classification::TypeI => q.field().zero(),
        Classification::TypeII => lead(&q.x)?.checked_div(&lead(&q.z)?)?.halve(),
        Classification::TypeIII => {
            let diff = &lead(&q.z)? - &lead(&q.y)?;
            lead(&q.x)?.checked_div(&diff)?.halve()
        }
        Classification::TypeIV => -(lead(&q.x)?.checked_div(&lead(&q.y)?)?.halve()),
    };
    let matrix = mf_inverse(&Poly::constant(f.clone()));
    let triple = matrix.apply(q);
    if !triple.is_spt() || triple.height() != q.height() {
        return Err(Error::InvariantViolation(format!(
            "normalizing {q} ({kind}) with f = {f} gave {triple}"
        )));
    }
    Ok(Normalization {
        kind,
        f,
        matrix,
        triple,
    })
}
