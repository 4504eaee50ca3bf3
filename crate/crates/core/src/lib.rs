//! Polynomial Pythagorean triples over `K[t]`, for `K = Q` or `F_p` with `p` odd.
//!
//! Every standard triple `(x, y, z)` with `x != 0` factors uniquely as
//! `c * M_{f_1} ... M_{f_k} * S_f` ([`berggren`]); the orthogonal group of
//! `x^2 + y^2 - z^2` over `K[t]` is generated by `R_f`, `P_xy` and `T_c`
//! ([`orthogroup`]). The [`oracle`] module re-derives small cases by raw
//! coefficient search.

pub mod berggren;
pub mod cli;
pub mod error;
pub mod field;
pub mod oracle;
pub mod orthogroup;
pub mod poly;
pub mod transform;
pub mod triple;

pub use berggren::{Base, BerggrenWord};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldKind, FieldSpec};
pub use orthogroup::GeneratorWord;
pub use poly::{Degree, Poly};
pub use transform::{GeneratorKind, Mat3};
pub use triple::{Classification, Triple};
