//! Classify triples: standard, the four non-standard types, and the failures.

use polyberg::{FieldSpec, Triple};

fn main() -> polyberg::Result<()> {
    let q = FieldSpec::rationals();
    let f5 = FieldSpec::prime(5)?;
    let samples = [
        (q, ["2*t", "t^2-1", "t^2+1"]),
        (q, ["2*t", "1-t^2", "t^2+1"]),
        (q, ["t^2-1", "2*t", "t^2+1"]),
        (q, ["3*t", "4*t", "5*t+1"]),
        (q, ["6*t^2+6", "8*t^2+8", "10*t^2+10"]),
        (q, ["t", "t", "t"]),
        (f5, ["t^2+1", "2*t^2+3", "2*t"]),
        (f5, ["1", "2", "0"]),
    ];
    for (field, [x, y, z]) in samples {
        let t = Triple::parse(x, y, z, field)?;
        println!("{:>5}  {t:<40} {}", field.to_string(), t.classify());
    }

    // divide out a common factor before classifying
    let t = Triple::parse("2*t^2", "t^3-t", "t^3+t", q)?;
    let (primitive, g) = t.divide_out_gcd()?;
    println!("{t} = ({g}) * {primitive}, which is {}", primitive.classify());
    Ok(())
}
