//! 3x3 matrices over `K[t]` and the named generators acting on triples.
//!
//! All generators preserve the form `x^2 + y^2 - z^2`, i.e. satisfy
//! `A^T J A = J` with `J = diag(1, 1, -1)`. That also gives the inverse of any
//! orthogonal matrix for free: `A^{-1} = J A^T J`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::Poly;
use crate::triple::Triple;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat3 {
    field: FieldSpec,
    rows: [[Poly; 3]; 3],
}

/// The named matrices: `M_f`, `R_f`, `T_c`, `P_xy`, `U_d` and `J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Mf(Poly),
    Rf(Poly),
    Tc(FieldElement),
    Pxy,
    Ud(u8),
    J,
}

/// JSON descriptor, e.g. `{"kind":"Mf","f":"t"}` or `{"kind":"Tc","c":"3"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<u8>,
}

impl GeneratorKind {
    pub fn to_json(&self) -> GeneratorJson {
        let mut json = GeneratorJson {
            kind: self.name().to_string(),
            f: None,
            c: None,
            d: None,
        };
        match self {
            GeneratorKind::Mf(f) | GeneratorKind::Rf(f) => json.f = Some(f.to_string()),
            GeneratorKind::Tc(c) => json.c = Some(c.to_string()),
            GeneratorKind::Ud(d) => json.d = Some(*d),
            GeneratorKind::Pxy | GeneratorKind::J => {}
        }
        json
    }

    pub fn from_json(json: &GeneratorJson, field: FieldSpec) -> Result<Self> {
        let missing = |what: &str| Error::InvalidArgument(format!("{} needs `{what}`", json.kind));
        Ok(match json.kind.as_str() {
            "Mf" => GeneratorKind::Mf(Poly::parse(json.f.as_deref().ok_or_else(|| missing("f"))?, field)?),
            "Rf" => GeneratorKind::Rf(Poly::parse(json.f.as_deref().ok_or_else(|| missing("f"))?, field)?),
            "Tc" => GeneratorKind::Tc(field.parse_element(json.c.as_deref().ok_or_else(|| missing("c"))?)?),
            "Pxy" => GeneratorKind::Pxy,
            "Ud" => GeneratorKind::Ud(json.d.ok_or_else(|| missing("d"))?),
            "J" => GeneratorKind::J,
            other => return Err(Error::InvalidArgument(format!("unknown generator `{other}`"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::Mf(_) => "Mf",
            GeneratorKind::Rf(_) => "Rf",
            GeneratorKind::Tc(_) => "Tc",
            GeneratorKind::Pxy => "Pxy",
            GeneratorKind::Ud(_) => "Ud",
            GeneratorKind::J => "J",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::Mf(p) => write!(f, "M_{{{p}}}"),
            GeneratorKind::Rf(p) => write!(f, "R_{{{p}}}"),
            GeneratorKind::Tc(c) => write!(f, "T_{{{c}}}"),
            GeneratorKind::Pxy => write!(f, "P_xy"),
            GeneratorKind::Ud(d) => write!(f, "U_{d}"),
            GeneratorKind::J => write!(f, "J"),
        }
    }
}

impl Mat3 {
    pub fn from_rows(rows: [[Poly; 3]; 3]) -> Result<Self> {
        let field = rows[0][0].field();
        for p in rows.iter().flatten() {
            if p.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), p.field().to_string()));
            }
        }
        Ok(Mat3 { field, rows })
    }

    /// Matrix with constant integer entries.
    pub fn from_i64(field: FieldSpec, rows: [[i64; 3]; 3]) -> Self {
        Mat3 {
            field,
            rows: rows.map(|r| r.map(|c| Poly::constant(field.from_i64(c)))),
        }
    }

    pub fn identity(field: FieldSpec) -> Self {
        Self::from_i64(field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn j(field: FieldSpec) -> Self {
        Self::from_i64(field, [[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[[Poly; 3]; 3] {
        &self.rows
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat3::identity(self.field)
    }

    pub fn transpose(&self) -> Mat3 {
        let r = &self.rows;
        Mat3 {
            field: self.field,
            rows: std::array::from_fn(|i| std::array::from_fn(|j| r[j][i].clone())),
        }
    }

    pub fn checked_mul(&self, other: &Mat3) -> Result<Mat3> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(self.mul(other))
    }

    /// Matrix product; panics on mixed fields (see [`Mat3::checked_mul`]).
    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let (a, b) = (&self.rows, &other.rows);
        Mat3 {
            field: self.field,
            rows: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let s = &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
                    &s + &(&a[i][2] * &b[2][j])
                })
            }),
        }
    }

    /// Action on the column vector `v`.
    pub fn apply_vec(&self, v: &[Poly; 3]) -> [Poly; 3] {
        std::array::from_fn(|i| {
            let r = &self.rows[i];
            let s = &(&r[0] * &v[0]) + &(&r[1] * &v[1]);
            &s + &(&r[2] * &v[2])
        })
    }

    pub fn checked_apply(&self, q: &Triple) -> Result<Triple> {
        if self.field != q.field() {
            return Err(Error::FieldMismatch(self.field.to_string(), q.field().to_string()));
        }
        Ok(self.apply(q))
    }

    /// `A (x, y, z)^T`.
    pub fn apply(&self, q: &Triple) -> Triple {
        let [x, y, z] = self.apply_vec(&[q.x.clone(), q.y.clone(), q.z.clone()]);
        Triple { x, y, z }
    }

    /// `A^T J A = J`.
    pub fn is_orthogonal(&self) -> bool {
        let j = Mat3::j(self.field);
        self.transpose().mul(&j).mul(self) == j
    }

    /// `J A^T J`, the inverse of an orthogonal matrix.
    pub fn orthogonal_inverse(&self) -> Result<Mat3> {
        if !self.is_orthogonal() {
            return Err(Error::NotOrthogonal);
        }
        let j = Mat3::j(self.field);
        Ok(j.mul(&self.transpose()).mul(&j))
    }

    pub fn product<'a>(field: FieldSpec, factors: impl IntoIterator<Item = &'a Mat3>) -> Mat3 {
        factors
            .into_iter()
            .fold(Mat3::identity(field), |acc, m| acc.mul(m))
    }

    pub fn to_json(&self) -> Vec<String> {
        self.rows.iter().flatten().map(Poly::to_string).collect()
    }

    pub fn from_json(entries: &[String], field: FieldSpec) -> Result<Mat3> {
        if entries.len() != 9 {
            return Err(Error::InvalidArgument(format!(
                "matrix needs 9 entries, got {}",
                entries.len()
            )));
        }
        let polys = entries
            .iter()
            .map(|s| Poly::parse(s, field))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat3 {
            field,
            rows: std::array::from_fn(|i| std::array::from_fn(|j| polys[3 * i + j].clone())),
        })
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}, {}, {}]", r[0], r[1], r[2])?;
        }
        Ok(())
    }
}

fn check_field(p: &Poly, field: FieldSpec) -> Result<()> {
    if p.field() == field {
        Ok(())
    } else {
        Err(Error::FieldMismatch(field.to_string(), p.field().to_string()))
    }
}

/// The matrix of a named generator.
pub fn generator(kind: &GeneratorKind, field: FieldSpec) -> Result<Mat3> {
    match kind {
        GeneratorKind::Mf(f) => {
            check_field(f, field)?;
            Ok(mf(f))
        }
        GeneratorKind::Rf(f) => {
            check_field(f, field)?;
            Ok(rf(f))
        }
        GeneratorKind::Tc(c) => {
            if c.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
            }
            tc(c)
        }
        GeneratorKind::Pxy => Ok(Mat3::from_i64(field, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])),
        GeneratorKind::Ud(1) => Ok(Mat3::from_i64(field, [[1, 0, 0], [0, -1, 0], [0, 0, 1]])),
        GeneratorKind::Ud(2) => Ok(Mat3::from_i64(field, [[-1, 0, 0], [0, -1, 0], [0, 0, 1]])),
        GeneratorKind::Ud(3) => Ok(Mat3::from_i64(field, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]])),
        GeneratorKind::Ud(d) => Err(Error::InvalidArgument(format!("U_d needs d in 1..=3, got {d}"))),
        GeneratorKind::J => Ok(Mat3::j(field)),
    }
}

/// Entries `2f` and `2f^2` shared by `M_f`, `R_f` and `M_f^{-1}`.
fn two_f_terms(f: &Poly) -> (Poly, Poly, Poly) {
    let field = f.field();
    let two = field.from_i64(2);
    let f2 = f.scale(&two);
    let ff2 = f.square().scale(&two);
    (f2, ff2, Poly::one(field))
}

/// `M_f = R_f U_1`.
pub fn mf(f: &Poly) -> Mat3 {
    let (f2, ff2, one) = two_f_terms(f);
    Mat3 {
        field: f.field(),
        rows: [
            [-&one, f2.clone(), f2.clone()],
            [-&f2, &ff2 - &one, ff2.clone()],
            [-&f2, ff2.clone(), &ff2 + &one],
        ],
    }
}

/// The reflection across `w = (1, f, f)`.
pub fn rf(f: &Poly) -> Mat3 {
    let (f2, ff2, one) = two_f_terms(f);
    Mat3 {
        field: f.field(),
        rows: [
            [-&one, -&f2, f2.clone()],
            [-&f2, &one - &ff2, ff2.clone()],
            [-&f2, -&ff2, &ff2 + &one],
        ],
    }
}

/// Closed form of `M_f^{-1} = U_1 R_f`.
pub fn mf_inverse(f: &Poly) -> Mat3 {
    let (f2, ff2, one) = two_f_terms(f);
    Mat3 {
        field: f.field(),
        rows: [
            [-&one, -&f2, f2.clone()],
            [f2.clone(), &ff2 - &one, -&ff2],
            [-&f2, -&ff2, &ff2 + &one],
        ],
    }
}

/// `T_c`, mapping `(0, 1, 1)` to `(0, c, c)`.
pub fn tc(c: &FieldElement) -> Result<Mat3> {
    let inv = c.invert()?;
    let field = c.field();
    let plus = Poly::constant((c + &inv).halve());
    let minus = Poly::constant((c - &inv).halve());
    Ok(Mat3 {
        field,
        rows: [
            [Poly::one(field), Poly::zero(field), Poly::zero(field)],
            [Poly::zero(field), plus.clone(), minus.clone()],
            [Poly::zero(field), minus, plus],
        ],
    })
}

/// The bilinear form `<u, v> = u1 v1 + u2 v2 - u3 v3`.
pub fn pairing(u: &[Poly; 3], v: &[Poly; 3]) -> Poly {
    let s = &(&u[0] * &v[0]) + &(&u[1] * &v[1]);
    &s - &(&u[2] * &v[2])
}

/// Reflection of `v` across `w`: `v - 2 <v, w> / Q(w) * w`.
///
/// Only defined here when `Q(w)` is a nonzero constant, so the result stays in
/// `K[t]^3`.
pub fn reflect(w: &[Poly; 3], v: &[Poly; 3]) -> Result<[Poly; 3]> {
    let norm = pairing(w, w);
    if norm.is_zero() {
        return Err(Error::IsotropicVector);
    }
    if !norm.is_constant() {
        return Err(Error::NonUnitNorm(norm.to_string()));
    }
    let field = norm.field();
    let factor = field.from_i64(2).checked_div(norm.leading()?)?;
    let k = pairing(v, w).scale(&factor);
    Ok(std::array::from_fn(|i| &v[i] - &(&k * &w[i])))
}

/// Checks `R_a R_b = R_{a-b} R_0` and `R_a R_0 R_b = R_{a+b}`.
pub fn rf_identities(a: &Poly, b: &Poly) -> bool {
    let r0 = rf(&Poly::zero(a.field()));
    let (ra, rb) = (rf(a), rf(b));
    let first = ra.mul(&rb) == rf(&(a - b)).mul(&r0);
    let second = ra.mul(&r0).mul(&rb) == rf(&(a + b));
    first && second
}
