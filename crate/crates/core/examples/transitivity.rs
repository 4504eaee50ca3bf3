//! Every primitive triple lies in the orbit of (0, 1, 1): build the matrix
//! carrying the axis to a given triple, including non-standard ones.

use polyberg::berggren::normalize_to_spt;
use polyberg::orthogroup::{factor, orbit_map};
use polyberg::{FieldSpec, Triple};

fn main() -> polyberg::Result<()> {
    let q = FieldSpec::rationals();
    let f13 = FieldSpec::prime(13)?;
    let targets = [
        Triple::parse("4*t^3-2*t", "4*t^4-5*t^2+1", "4*t^4-3*t^2+1", q)?,
        Triple::parse("t^2-1", "2*t", "t^2+1", q)?,
        Triple::parse("2*t", "1-t^2", "t^2+1", q)?,
        Triple::parse("3", "4", "5", q)?,
        // (2ab, a^2 - b^2, a^2 + b^2) with a = 5t + 1, b = t and 5^2 = -1
        Triple::parse("10*t^2+2*t", "11*t^2+10*t+1", "10*t+1", f13)?,
    ];
    for target in targets {
        let axis = Triple::axis(&target.field().one());
        let a = orbit_map(&target)?;
        assert_eq!(a.apply(&axis), target);
        let kind = target.classify();
        println!("{target} [{kind}] = A (0, 1, 1) with A a product of {} generators", factor(&a)?.len());
        if let Ok(n) = normalize_to_spt(&target) {
            println!("  normalized by M_{}^-1 to {}", n.f, n.triple);
        }
    }
    Ok(())
}
