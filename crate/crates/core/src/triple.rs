//! Pythagorean triples over `K[t]` and their classification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{Degree, Poly};

/// A non-zero triple `(x, y, z)` of polynomials over one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triple {
    pub x: Poly,
    pub y: Poly,
    pub z: Poly,
}

/// Outcome of [`Triple::classify`].
///
/// Tags are decided in priority order: Pythagorean, then primitive, then
/// standard, then the four non-standard degree patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "SPT")]
    Spt,
    TypeI,
    TypeII,
    TypeIII,
    TypeIV,
    NotPythagorean,
    NotPrimitive,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Spt => "SPT",
            Classification::TypeI => "TypeI",
            Classification::TypeII => "TypeII",
            Classification::TypeIII => "TypeIII",
            Classification::TypeIV => "TypeIV",
            Classification::NotPythagorean => "NotPythagorean",
            Classification::NotPrimitive => "NotPrimitive",
        }
    }

    /// True for the five tags a primitive Pythagorean triple can carry.
    pub fn is_primitive_pythagorean(&self) -> bool {
        !matches!(
            self,
            Classification::NotPythagorean | Classification::NotPrimitive
        )
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `S_f = (2f, f^2 - 1, f^2 + 1)` together with whether `f` was constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFamily {
    pub triple: Triple,
    /// Set when `f` is constant; the triple is then Pythagorean but not standard.
    pub degenerate: bool,
}

/// JSON encoding `{"x": "<poly>", "y": "<poly>", "z": "<poly>"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleJson {
    pub x: String,
    pub y: String,
    pub z: String,
}

impl Triple {
    pub fn new(x: Poly, y: Poly, z: Poly) -> Result<Self> {
        let field = x.field();
        for p in [&y, &z] {
            if p.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), p.field().to_string()));
            }
        }
        if x.is_zero() && y.is_zero() && z.is_zero() {
            return Err(Error::ZeroTriple);
        }
        Ok(Triple { x, y, z })
    }

    pub fn parse(x: &str, y: &str, z: &str, field: FieldSpec) -> Result<Self> {
        Triple::new(
            Poly::parse(x, field)?,
            Poly::parse(y, field)?,
            Poly::parse(z, field)?,
        )
    }

    /// `(0, c, c)`.
    pub fn axis(c: &FieldElement) -> Self {
        let field = c.field();
        Triple {
            x: Poly::zero(field),
            y: Poly::constant(c.clone()),
            z: Poly::constant(c.clone()),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.x.field()
    }

    pub fn components(&self) -> [&Poly; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// `x^2 + y^2 - z^2 = 0`.
    pub fn is_pythagorean(&self) -> bool {
        let lhs = &self.x.square() + &self.y.square();
        lhs == self.z.square()
    }

    pub fn gcd(&self) -> Poly {
        Poly::gcd_many(&[self.x.clone(), self.y.clone(), self.z.clone()])
            .expect("triple is non-zero")
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd().is_one()
    }

    /// Maximum component degree.
    pub fn height(&self) -> Degree {
        self.x.degree().max(self.y.degree()).max(self.z.degree())
    }

    /// Degree pattern of the standard form: `deg x < deg y = deg z`, `l(y) = l(z)`.
    /// Primitivity and the Pythagorean equation are not checked here.
    pub(crate) fn has_standard_shape(&self) -> bool {
        self.x.degree() < self.y.degree()
            && self.y.degree() == self.z.degree()
            && self.y.leading().ok() == self.z.leading().ok()
    }

    pub fn is_spt(&self) -> bool {
        self.classify() == Classification::Spt
    }

    pub fn classify(&self) -> Classification {
        if !self.is_pythagorean() {
            return Classification::NotPythagorean;
        }
        if !self.is_primitive() {
            return Classification::NotPrimitive;
        }
        let (dx, dy, dz) = (self.x.degree(), self.y.degree(), self.z.degree());
        if dx < dy && dy == dz {
            let (ly, lz) = (self.y.leading().unwrap(), self.z.leading().unwrap());
            if ly == lz {
                return Classification::Spt;
            }
            debug_assert_eq!(ly, &-lz);
            return Classification::TypeI;
        }
        if dy < dx && dx == dz {
            return Classification::TypeII;
        }
        if dx == dy && dy == dz {
            return Classification::TypeIII;
        }
        if dz < dx && dx == dy {
            // l(x)^2 + l(y)^2 = 0, i.e. l(x) = ±i l(y)
            debug_assert!((&self.x.leading().unwrap().square()
                + &self.y.leading().unwrap().square())
                .is_zero());
            return Classification::TypeIV;
        }
        // The leading terms of x^2 + y^2 = z^2 rule out every other pattern.
        unreachable!("Pythagorean triple with impossible degree pattern: {self}")
    }

    /// `S_f = (2f, f^2 - 1, f^2 + 1)`.
    pub fn make_s(f: &Poly) -> SFamily {
        let field = f.field();
        let one = Poly::one(field);
        let f2 = f.square();
        SFamily {
            triple: Triple {
                x: f.scale(&field.from_i64(2)),
                y: &f2 - &one,
                z: &f2 + &one,
            },
            degenerate: f.is_constant(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if c.field() != self.field() {
            return Err(Error::FieldMismatch(self.field().to_string(), c.field().to_string()));
        }
        Ok(Triple {
            x: self.x.scale(c),
            y: self.y.scale(c),
            z: self.z.scale(c),
        })
    }

    /// Splits off the monic gcd: returns the primitive triple and the removed factor.
    pub fn divide_out_gcd(&self) -> Result<(Triple, Poly)> {
        let g = self.gcd();
        let div = |p: &Poly| -> Result<Poly> {
            let (q, r) = p.euclid_divide(&g)?;
            debug_assert!(r.is_zero());
            Ok(q)
        };
        let reduced = Triple {
            x: div(&self.x)?,
            y: div(&self.y)?,
            z: div(&self.z)?,
        };
        Ok((reduced, g))
    }

    pub fn to_json(&self) -> TripleJson {
        TripleJson {
            x: self.x.to_string(),
            y: self.y.to_string(),
            z: self.z.to_string(),
        }
    }

    pub fn from_json(json: &TripleJson, field: FieldSpec) -> Result<Self> {
        Triple::parse(&json.x, &json.y, &json.z, field)
    }

    /// Deterministic ordering key: height first, then rendered components.
    pub fn sort_key(&self) -> (Degree, String, String, String) {
        (
            self.height(),
            self.x.to_string(),
            self.y.to_string(),
            self.z.to_string(),
        )
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}
