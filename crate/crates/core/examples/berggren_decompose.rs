//! Unique Berggren words: descend a standard triple to its base, then rebuild it.

use polyberg::berggren::{base_case_extract, decompose, descent_step, reconstruct};
use polyberg::{FieldSpec, Triple};

fn main() -> polyberg::Result<()> {
    let q = FieldSpec::rationals();
    let mut t = Triple::parse("4*t^3-2*t", "4*t^4-5*t^2+1", "4*t^4-3*t^2+1", q)?;
    println!("start: {t}, height {}", t.height());
    while let Ok((f, next)) = descent_step(&t) {
        println!("  quotient f = {f}: M_f^-1 Q = {next}, height {}", next.height());
        t = next;
    }
    let base = base_case_extract(&t)?;
    println!("  base case: c = {}, f = {}", base.c, base.f);

    let target = Triple::parse("4*t^3-2*t", "4*t^4-5*t^2+1", "4*t^4-3*t^2+1", q)?;
    let word = decompose(&target)?;
    println!("word: {word}");
    println!("json: {}", serde_json::to_string(&word.to_json()).unwrap());
    assert_eq!(reconstruct(&word, q)?, target);

    // the same pipeline over a finite field
    let f3 = FieldSpec::prime(3)?;
    let s = Triple::parse("t", "t^2-1", "t^2+1", f3)?;
    println!("over {f3}: {s} = {}", decompose(&s)?);
    Ok(())
}
