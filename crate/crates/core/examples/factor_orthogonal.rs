//! Factor orthogonal matrices over K[t] into R_f, P_xy and T_c.

use polyberg::orthogroup::{factor, stabilizer_factor, StabilizerForm};
use polyberg::transform::{generator, mf, tc};
use polyberg::{FieldSpec, GeneratorKind, Mat3, Poly};

fn main() -> polyberg::Result<()> {
    let q = FieldSpec::rationals();
    let t = Poly::t(q);
    let f = Poly::parse("t^2-1/3", q)?;

    let a = Mat3::product(
        q,
        &[
            mf(&t),
            tc(&q.from_i64(3))?,
            generator(&GeneratorKind::J, q)?,
            mf(&f),
        ],
    );
    println!("A = M_t T_3 J M_{{{f}}}:\n{a}");
    println!("orthogonal: {}", a.is_orthogonal());

    let word = factor(&a)?;
    let names: Vec<String> = word.factors().iter().map(ToString::to_string).collect();
    println!("A = {}", names.join(" "));
    assert_eq!(word.product()?, a);

    // elements fixing (0, 1, 1) have a closed form in their first row
    let form = StabilizerForm { a1: q.one(), a2: Poly::parse("2*t", q)? };
    let s = form.closed_form();
    println!("stabilizer with first row (1, 2t, -2t):\n{s}");
    let back = stabilizer_factor(&s)?;
    println!("as reflections: {:?}", back.factors().iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(())
}
