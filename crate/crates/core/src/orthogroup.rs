//! Factorization in the orthogonal group of `x^2 + y^2 - z^2` over `K[t]`.
//!
//! Any orthogonal `A` is split as
//!
//! ```text
//! A = N^{-1} * M_{f_1} ... M_{f_k} * M_{g/2} * T_c * S
//! ```
//!
//! where `A (0,1,1)^T` is normalized by `N`, decomposed into its Berggren word
//! `c, [f_1..f_k], g`, and `S` fixes `(0, 1, 1)`. Every `M_f` is then written as
//! `R_f P_xy R_0 P_xy` and `S` as one or two reflections, so the output only
//! uses `R_f`, `P_xy` and `T_c`.

use crate::berggren::{decompose, normalize_to_spt, Base};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::Poly;
use crate::transform::{generator, mf, mf_inverse, rf, tc, GeneratorJson, GeneratorKind, Mat3};
use crate::triple::{Classification, Triple};

/// A product of `R_f`, `P_xy` and `T_c` factors, read left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorWord {
    field: FieldSpec,
    factors: Vec<GeneratorKind>,
}

impl GeneratorWord {
    pub fn new(field: FieldSpec, factors: Vec<GeneratorKind>) -> Result<Self> {
        for g in &factors {
            if !matches!(
                g,
                GeneratorKind::Rf(_) | GeneratorKind::Pxy | GeneratorKind::Tc(_)
            ) {
                return Err(Error::InvalidArgument(format!(
                    "{g} is not one of R_f, P_xy, T_c"
                )));
            }
        }
        Ok(GeneratorWord { field, factors })
    }

    pub fn factors(&self) -> &[GeneratorKind] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The matrix product of the factors.
    pub fn product(&self) -> Result<Mat3> {
        let mats = self
            .factors
            .iter()
            .map(|g| generator(g, self.field))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat3::product(self.field, &mats))
    }

    pub fn to_json(&self) -> Vec<GeneratorJson> {
        self.factors.iter().map(GeneratorKind::to_json).collect()
    }

    pub fn from_json(json: &[GeneratorJson], field: FieldSpec) -> Result<Self> {
        let factors = json
            .iter()
            .map(|g| GeneratorKind::from_json(g, field))
            .collect::<Result<Vec<_>>>()?;
        GeneratorWord::new(field, factors)
    }
}

/// An element of the stabilizer of `(0, 1, 1)`, determined by its first row
/// `(a1, a2, -a2)` with `a1 = ±1`.
///
/// `a1 = -1` is the reflection `R_{-a2/2}`; `a1 = 1` is `R_{-a2/2} U_3`, and
/// `U_3 = R_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerForm {
    pub a1: FieldElement,
    pub a2: Poly,
}

impl StabilizerForm {
    /// The reflection parameter `-a2/2`.
    pub fn reflection_parameter(&self) -> Poly {
        -&self.a2.halve()
    }

    /// Reflections whose product is this element; empty for the identity.
    pub fn factors(&self) -> Vec<GeneratorKind> {
        let field = self.a2.field();
        let f = self.reflection_parameter();
        if !self.a1.is_one() {
            vec![GeneratorKind::Rf(f)]
        } else if f.is_zero() {
            Vec::new()
        } else {
            vec![GeneratorKind::Rf(f), GeneratorKind::Rf(Poly::zero(field))]
        }
    }

    pub fn expand(&self) -> Mat3 {
        let field = self.a2.field();
        let r = rf(&self.reflection_parameter());
        if self.a1.is_one() {
            r.mul(&rf(&Poly::zero(field)))
        } else {
            r
        }
    }

    /// The closed form
    /// `[[a1, a2, -a2], [-a1 a2, 1 - a2^2/2, a2^2/2], [-a1 a2, -a2^2/2, 1 + a2^2/2]]`.
    pub fn closed_form(&self) -> Mat3 {
        let field = self.a2.field();
        let one = Poly::one(field);
        let a1 = Poly::constant(self.a1.clone());
        let a2 = self.a2.clone();
        let half_sq = a2.square().halve();
        let off = -&(&a1 * &a2);
        Mat3::from_rows([
            [a1, a2.clone(), -&a2],
            [off.clone(), &one - &half_sq, half_sq.clone()],
            [off, -&half_sq, &one + &half_sq],
        ])
        .expect("entries share the field")
    }
}

fn axis(field: FieldSpec) -> Triple {
    Triple::axis(&field.one())
}

/// Reads off the stabilizer form of an orthogonal matrix fixing `(0, 1, 1)`.
pub fn stabilizer_factor(r: &Mat3) -> Result<StabilizerForm> {
    if !r.is_orthogonal() {
        return Err(Error::NotOrthogonal);
    }
    let field = r.field();
    let e = axis(field);
    if r.apply(&e) != e {
        return Err(Error::NotStabilizer);
    }
    let a1 = r.entry(0, 0);
    let form = StabilizerForm {
        a1: if a1.is_constant() { a1.coeff(0) } else { field.zero() },
        a2: r.entry(0, 1).clone(),
    };
    let unit = form.a1.is_one() || (-&form.a1).is_one();
    if !unit || form.closed_form() != *r || form.expand() != *r {
        return Err(Error::InvariantViolation(format!(
            "stabilizer element does not match the closed form:\n{r}"
        )));
    }
    Ok(form)
}

/// `M_f = R_f P_xy R_0 P_xy`.
pub fn expand_mf(f: &Poly) -> Vec<GeneratorKind> {
    vec![
        GeneratorKind::Rf(f.clone()),
        GeneratorKind::Pxy,
        GeneratorKind::Rf(Poly::zero(f.field())),
        GeneratorKind::Pxy,
    ]
}

/// `M_f^{-1} = P_xy R_0 P_xy R_f`.
pub fn expand_mf_inverse(f: &Poly) -> Vec<GeneratorKind> {
    vec![
        GeneratorKind::Pxy,
        GeneratorKind::Rf(Poly::zero(f.field())),
        GeneratorKind::Pxy,
        GeneratorKind::Rf(f.clone()),
    ]
}

/// Orbit data for a primitive triple: `Q = M_{n} M_{f_1} ... M_{f_k} M_{g/2} T_c (0,1,1)`.
struct OrbitPath {
    /// Constant `f` of the normalization, when `Q` was not standard.
    normalizer: Option<Poly>,
    /// `f_1, ..., f_k`, then `g/2` for a polynomial base.
    chain: Vec<Poly>,
    c: FieldElement,
}

fn orbit_path(q: &Triple) -> Result<OrbitPath> {
    let (normalizer, spt) = match q.classify() {
        Classification::Spt => (None, q.clone()),
        Classification::NotPrimitive => return Err(Error::NotPrimitive),
        Classification::NotPythagorean => {
            return Err(Error::NotSpt(Classification::NotPythagorean.to_string()))
        }
        _ => {
            let n = normalize_to_spt(q)?;
            (Some(Poly::constant(n.f)), n.triple)
        }
    };
    let word = decompose(&spt)?;
    let mut chain = word.word;
    if let Base::Poly(g) = word.base {
        chain.push(g.halve());
    }
    Ok(OrbitPath {
        normalizer,
        chain,
        c: word.c,
    })
}

/// An orthogonal matrix sending `(0, 1, 1)` to `q`.
pub fn orbit_map(q: &Triple) -> Result<Mat3> {
    let field = q.field();
    let path = orbit_path(q)?;
    let mut m = match &path.normalizer {
        Some(f) => mf(f),
        None => Mat3::identity(field),
    };
    for f in &path.chain {
        m = m.mul(&mf(f));
    }
    Ok(m.mul(&tc(&path.c)?))
}

/// Writes an orthogonal matrix as a product of `R_f`, `P_xy` and `T_c`.
///
/// The result is the canonical pipeline output, not a shortest word; `T_1`
/// factors are dropped.
pub fn factor(a: &Mat3) -> Result<GeneratorWord> {
    if !a.is_orthogonal() {
        return Err(Error::NotOrthogonal);
    }
    let field = a.field();
    let q = a.apply(&axis(field));
    let path = orbit_path(&q)?;

    let mut factors = Vec::new();
    // residual = T_c^{-1} M_{chain}^{-1} ... N A
    let mut residual = a.clone();
    if let Some(f) = &path.normalizer {
        factors.extend(expand_mf(f));
        residual = mf_inverse(f).mul(&residual);
    }
    for f in &path.chain {
        factors.extend(expand_mf(f));
        residual = mf_inverse(f).mul(&residual);
    }
    if !path.c.is_one() {
        factors.push(GeneratorKind::Tc(path.c.clone()));
    }
    residual = tc(&path.c.invert()?)?.mul(&residual);
    factors.extend(stabilizer_factor(&residual)?.factors());

    let word = GeneratorWord::new(field, factors)?;
    if word.product()? != *a {
        return Err(Error::InvariantViolation(
            "factor product does not reproduce the input".into(),
        ));
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn pq(s: &str) -> Poly {
        Poly::parse(s, q()).unwrap()
    }

    #[test]
    fn stabilizer_examples() {
        let t = Poly::t(q());
        let s = stabilizer_factor(&rf(&t)).unwrap();
        assert_eq!(s.a1, q().from_i64(-1));
        assert_eq!(s.a2, pq("-2*t"));
        assert_eq!(s.reflection_parameter(), t);
        assert_eq!(s.factors(), vec![GeneratorKind::Rf(t.clone())]);

        let s = stabilizer_factor(&Mat3::identity(q())).unwrap();
        assert!(s.a1.is_one());
        assert!(s.a2.is_zero());
        assert!(s.factors().is_empty());
        let r0 = rf(&Poly::zero(q()));
        assert!(r0.mul(&r0).is_identity());

        let s = stabilizer_factor(&generator(&GeneratorKind::Ud(3), q()).unwrap()).unwrap();
        assert_eq!(s.a1, q().from_i64(-1));
        assert!(s.a2.is_zero());
    }

    #[test]
    fn stabilizer_errors() {
        let d = Mat3::from_i64(q(), [[1, 0, 0], [0, 1, 0], [0, 0, 2]]);
        assert_eq!(stabilizer_factor(&d), Err(Error::NotOrthogonal));
        let m = mf(&Poly::t(q()));
        assert_eq!(stabilizer_factor(&m), Err(Error::NotStabilizer));
        let t3 = tc(&q().from_i64(3)).unwrap();
        assert_eq!(stabilizer_factor(&t3), Err(Error::NotStabilizer));
    }

    #[test]
    fn factor_examples() {
        let c3 = q().from_i64(3);
        let w = factor(&tc(&c3).unwrap()).unwrap();
        assert_eq!(w.factors(), &[GeneratorKind::Tc(c3)]);

        let t = Poly::t(q());
        let w = factor(&rf(&t)).unwrap();
        assert_eq!(w.factors(), &[GeneratorKind::Rf(t.clone())]);

        let w = factor(&mf(&t)).unwrap();
        assert_eq!(
            w.factors(),
            &[
                GeneratorKind::Rf(t.clone()),
                GeneratorKind::Pxy,
                GeneratorKind::Rf(Poly::zero(q())),
                GeneratorKind::Pxy
            ]
        );
        assert!(factor(&Mat3::identity(q())).unwrap().is_empty());
        let d = Mat3::from_i64(q(), [[1, 0, 0], [0, 1, 0], [0, 0, 2]]);
        assert_eq!(factor(&d), Err(Error::NotOrthogonal));
    }

    #[test]
    fn inverse_expansion() {
        let f = pq("t^2-3");
        let m = Mat3::product(
            q(),
            &expand_mf_inverse(&f)
                .iter()
                .map(|g| generator(g, q()).unwrap())
                .collect::<Vec<_>>(),
        );
        assert_eq!(m, mf_inverse(&f));
    }

    #[test]
    fn orbit_examples() {
        assert!(orbit_map(&axis(q())).unwrap().is_identity());
        let c = q().from_ratio(5, 2).unwrap();
        assert_eq!(orbit_map(&Triple::axis(&c)).unwrap(), tc(&c).unwrap());
        let s = Triple::make_s(&Poly::t(q())).triple;
        let m = orbit_map(&s).unwrap();
        assert_eq!(m, mf(&pq("1/2*t")));
        assert_eq!(m.apply(&axis(q())), s);

        let not_prim = Triple::parse("2*t^2", "t^3-t", "t^3+t", q()).unwrap();
        assert_eq!(orbit_map(&not_prim), Err(Error::NotPrimitive));
        let not_pyth = Triple::parse("t", "t", "t", q()).unwrap();
        assert!(matches!(orbit_map(&not_pyth), Err(Error::NotSpt(_))));

        for (field, xyz) in [
            (q(), ["t^2-1", "2*t", "t^2+1"]),
            (q(), ["3", "4", "5"]),
            (fp(5), ["t^2+1", "2*t^2+3", "2*t"]),
        ] {
            let t = Triple::parse(xyz[0], xyz[1], xyz[2], field).unwrap();
            let m = orbit_map(&t).unwrap();
            assert!(m.is_orthogonal());
            assert_eq!(m.apply(&axis(field)), t);
        }
    }

    #[test]
    fn generator_word_validation() {
        assert!(GeneratorWord::new(q(), vec![GeneratorKind::J]).is_err());
        assert!(GeneratorWord::new(q(), vec![GeneratorKind::Mf(Poly::t(q()))]).is_err());
        let w = GeneratorWord::new(q(), vec![GeneratorKind::Pxy, GeneratorKind::Rf(pq("t"))]).unwrap();
        let json = serde_json::to_string(&w.to_json()).unwrap();
        assert_eq!(json, r#"[{"kind":"Pxy"},{"kind":"Rf","f":"t"}]"#);
        let back: Vec<GeneratorJson> = serde_json::from_str(&json).unwrap();
        assert_eq!(GeneratorWord::from_json(&back, q()).unwrap(), w);
    }

    fn arb_form() -> impl Strategy<Value = StabilizerForm> {
        (
            prop::sample::select(vec![q(), fp(3), fp(5), fp(13)]),
            any::<bool>(),
            prop::collection::vec(-5i64..6, 0..5),
        )
            .prop_map(|(field, neg, cs)| StabilizerForm {
                a1: field.from_i64(if neg { -1 } else { 1 }),
                a2: Poly::from_i64s(field, &cs),
            })
    }

    proptest! {
        #[test]
        fn stabilizer_round_trip(form in arb_form()) {
            let m = form.expand();
            prop_assert_eq!(&m, &form.closed_form());
            prop_assert_eq!(stabilizer_factor(&m).unwrap(), form);
        }
    }
}
