//! Exact arithmetic in Q and F_p, and polynomial Euclidean division and gcd.

use polyberg::{FieldSpec, Poly};

fn main() -> polyberg::Result<()> {
    let q = FieldSpec::rationals();
    let a = q.parse_element("3/4")?;
    let b = q.parse_element("-5/6")?;
    println!("in {q}: {a} + {b} = {}, {a} / {b} = {}", &a + &b, a.checked_div(&b)?);

    let f7: FieldSpec = "fp:7".parse()?;
    let three = f7.from_i64(3);
    println!("in {f7}: 1/3 = {}, 3^2 = {}", three.invert()?, three.square());

    let z = Poly::parse("4*t^4-3*t^2+1", q)?;
    let x = Poly::parse("4*t^3-2*t", q)?;
    let (quot, rem) = z.euclid_divide(&x)?;
    println!("({z}) = ({quot}) * ({x}) + ({rem})");

    let g = Poly::gcd_many(&[
        Poly::parse("3*t^2", q)?,
        Poly::parse("6*t", q)?,
    ])?;
    println!("gcd(3*t^2, 6*t) = {g}");

    let inner = Poly::parse("t^2+1", q)?;
    println!("({x}) o ({inner}) = {}", x.compose(&inner)?);
    Ok(())
}
