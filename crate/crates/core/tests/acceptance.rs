//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use polyberg::berggren::{decompose, normalize_to_spt, reconstruct};
use polyberg::oracle::{brute_force_triples, cross_validate, SearchBounds};
use polyberg::orthogroup::{factor, orbit_map, stabilizer_factor, StabilizerForm};
use polyberg::transform::{generator, mf, rf, rf_identities};
use polyberg::{
    Base, BerggrenWord, Classification, Degree, FieldElement, FieldSpec, GeneratorKind, Mat3,
    Poly, Triple,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fp(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn fields() -> [FieldSpec; 4] {
    [FieldSpec::rationals(), fp(3), fp(5), fp(13)]
}

fn element(rng: &mut ChaCha8Rng, field: FieldSpec) -> FieldElement {
    match field.modulus() {
        Some(p) => field.residue(rng.gen_range(0..p)),
        None => field
            .from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
            .unwrap(),
    }
}

fn unit(rng: &mut ChaCha8Rng, field: FieldSpec) -> FieldElement {
    loop {
        let c = element(rng, field);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Uniform coefficients below the top, non-zero leading coefficient.
fn poly_of_degree(rng: &mut ChaCha8Rng, field: FieldSpec, deg: usize) -> Poly {
    let mut cs: Vec<FieldElement> = (0..deg).map(|_| element(rng, field)).collect();
    cs.push(unit(rng, field));
    Poly::new(field, cs).unwrap()
}

fn poly_up_to(rng: &mut ChaCha8Rng, field: FieldSpec, max_deg: usize) -> Poly {
    let cs: Vec<FieldElement> = (0..=max_deg).map(|_| element(rng, field)).collect();
    Poly::new(field, cs).unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, field: FieldSpec) -> BerggrenWord {
    let k = rng.gen_range(0..=4);
    BerggrenWord {
        c: unit(rng, field),
        word: (0..k)
            .map(|_| {
                let d = rng.gen_range(1..=3);
                poly_of_degree(rng, field, d)
            })
            .collect(),
        base: {
            let d = rng.gen_range(1..=3);
            Base::Poly(poly_of_degree(rng, field, d))
        },
    }
}

fn criterion_1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let per_field = 1000;
    for field in fields() {
        for _ in 0..per_field {
            let w = random_word(&mut rng, field);
            let q = reconstruct(&w, field).map_err(|e| format!("reconstruct {w}: {e}"))?;
            let back = decompose(&q).map_err(|e| format!("decompose {q}: {e}"))?;
            ensure(back == w, || format!("{w} came back as {back}"))?;
        }
        let axis = Triple::axis(&field.from_i64(2));
        let w = decompose(&axis).map_err(|e| e.to_string())?;
        ensure(w.base == Base::Axis && reconstruct(&w, field) == Ok(axis), || {
            format!("axis triple over {field} did not round trip")
        })?;
    }
    Ok(format!("{per_field} random words per field over q, fp:3, fp:5, fp:13"))
}

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut cases = 0;
    for field in fields() {
        for _ in 0..300 {
            let q = reconstruct(&random_word(&mut rng, field), field).unwrap();
            let d = rng.gen_range(1..=3);
            let f = poly_of_degree(&mut rng, field, d);
            let image = mf(&f).apply(&q);
            let expected = 2 * d + q.height().finite().unwrap();
            ensure(image.height() == Degree::Finite(expected), || {
                format!("h(M_{{{f}}} {q}) = {} != {expected}", image.height())
            })?;
            ensure(!image.x.is_zero() && image.is_spt(), || {
                format!("M_{{{f}}} {q} = {image} is not standard with x != 0")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} random (f, Q) pairs"))
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut cases = 0;
    for field in fields() {
        let id = Mat3::identity(field);
        let r0 = rf(&Poly::zero(field));
        let pxy = generator(&GeneratorKind::Pxy, field).unwrap();
        let u1 = generator(&GeneratorKind::Ud(1), field).unwrap();
        ensure(pxy.mul(&r0).mul(&pxy) == u1, || format!("U_1 != P_xy R_0 P_xy over {field}"))?;
        for d in 1..=3u8 {
            let u = generator(&GeneratorKind::Ud(d), field).unwrap();
            ensure(u.is_orthogonal(), || format!("U_{d} not orthogonal"))?;
        }
        ensure(Mat3::j(field).is_orthogonal() && pxy.is_orthogonal(), || "J or P_xy".into())?;
        for _ in 0..250 {
            let a = poly_up_to(&mut rng, field, 3);
            let b = poly_up_to(&mut rng, field, 3);
            let c = unit(&mut rng, field);
            for g in [
                GeneratorKind::Mf(a.clone()),
                GeneratorKind::Rf(a.clone()),
                GeneratorKind::Tc(c.clone()),
            ] {
                let m = generator(&g, field).unwrap();
                ensure(m.is_orthogonal(), || format!("{g} is not orthogonal"))?;
            }
            let ra = rf(&a);
            let rb = rf(&b);
            ensure(ra.mul(&ra) == id, || format!("R_{{{a}}}^2 != I"))?;
            ensure(ra.mul(&rb) == rf(&(&a - &b)).mul(&r0), || {
                format!("R_a R_b != R_(a-b) R_0 for a = {a}, b = {b}")
            })?;
            ensure(ra.mul(&r0).mul(&rb) == rf(&(&a + &b)), || {
                format!("R_a R_0 R_b != R_(a+b) for a = {a}, b = {b}")
            })?;
            ensure(rf_identities(&a, &b), || "rf_identities".into())?;
            ensure(mf(&a) == ra.mul(&u1), || format!("M_f != R_f U_1 for f = {a}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} random parameter sets over 4 fields"))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let bounds = SearchBounds::new(fp(3), 4).map_err(|e| e.to_string())?;
    let report = cross_validate(&bounds, 4).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.is_clean(), || format!("violations: {:?}", report.violations))?;
    for h in ["2", "4"] {
        let c = report
            .counts_by_height
            .get(h)
            .ok_or_else(|| format!("no triples of height {h}"))?;
        ensure(c.tree_spt == c.brute_force_spt && c.tree_spt > 0, || {
            format!("height {h}: tree {} vs search {}", c.tree_spt, c.brute_force_spt)
        })?;
    }
    ensure(elapsed.as_secs() < 300, || format!("took {elapsed:?}"))?;
    let sizes: Vec<String> = report
        .counts_by_height
        .iter()
        .filter(|(_, c)| c.tree_spt > 0)
        .map(|(h, c)| format!("h{h}={}", c.tree_spt))
        .collect();
    Ok(format!(
        "fp:3 max_deg 4, {} candidates, SPT sets equal ({}), {:.1}s",
        bounds.candidates(),
        sizes.join(" "),
        elapsed.as_secs_f64()
    ))
}

fn criterion_5() -> Check {
    let mut total = 0;
    for (p, d) in [(3, 2), (5, 1)] {
        let field = fp(p);
        let triples = brute_force_triples(&SearchBounds::new(field, d).unwrap(), 4)
            .map_err(|e| e.to_string())?;
        let axis = Triple::axis(&field.one());
        for q in &triples {
            let m = orbit_map(q).map_err(|e| format!("orbit_map {q}: {e}"))?;
            ensure(m.is_orthogonal() && m.apply(&axis) == *q, || {
                format!("orbit map of {q} over {field} misses")
            })?;
        }
        total += triples.len();
    }
    Ok(format!("{total} primitive triples over fp:3 (deg <= 2) and fp:5 (deg <= 1)"))
}

fn random_generator(rng: &mut ChaCha8Rng, field: FieldSpec) -> GeneratorKind {
    match rng.gen_range(0..6) {
        0 => GeneratorKind::Mf(poly_up_to(rng, field, 2)),
        1 => GeneratorKind::Rf(poly_up_to(rng, field, 2)),
        2 => GeneratorKind::Tc(unit(rng, field)),
        3 => GeneratorKind::Pxy,
        4 => GeneratorKind::Ud(rng.gen_range(1..=3)),
        _ => GeneratorKind::J,
    }
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut cases = 0;
    for field in fields() {
        for _ in 0..250 {
            let len = rng.gen_range(0..=6);
            let gens: Vec<GeneratorKind> = (0..len).map(|_| random_generator(&mut rng, field)).collect();
            let mats: Vec<Mat3> = gens.iter().map(|g| generator(g, field).unwrap()).collect();
            let a = Mat3::product(field, &mats);
            let word = factor(&a).map_err(|e| format!("factor failed on {gens:?}: {e}"))?;
            ensure(
                word.factors().iter().all(|g| {
                    matches!(g, GeneratorKind::Rf(_) | GeneratorKind::Pxy | GeneratorKind::Tc(_))
                }),
                || "factor used a generator outside R_f, P_xy, T_c".into(),
            )?;
            ensure(word.product().unwrap() == a, || format!("product mismatch for {gens:?}"))?;
            cases += 1;

            let form = StabilizerForm {
                a1: if rng.gen_bool(0.5) { field.one() } else { -field.one() },
                a2: poly_up_to(&mut rng, field, 3),
            };
            let s = form.closed_form();
            ensure(s.is_orthogonal(), || "closed form not orthogonal".into())?;
            let back = stabilizer_factor(&s).map_err(|e| format!("stabilizer {s}: {e}"))?;
            ensure(back == form && form.expand() == s, || {
                format!("stabilizer closed form mismatch for a2 = {}", form.a2)
            })?;
        }
    }
    Ok(format!("{cases} random products plus stabilizer closed forms"))
}

/// `(2ab, a^2 - b^2, a^2 + b^2)`, primitive whenever `gcd(a, b) = 1`.
fn from_pair(a: &Poly, b: &Poly) -> Triple {
    let two = a.field().from_i64(2);
    Triple::new(
        (a * b).scale(&two),
        &a.square() - &b.square(),
        &a.square() + &b.square(),
    )
    .unwrap()
}

fn sqrt_minus_one(field: FieldSpec) -> Option<FieldElement> {
    field
        .elements()?
        .into_iter()
        .find(|e| (&e.square() + &field.one()).is_zero())
}

/// Whether leading coefficients for `kind` exist: type III needs non-zero
/// `u^2 + v^2 = w^2`, type IV needs a square root of -1.
fn kind_occurs(field: FieldSpec, kind: Classification) -> bool {
    let Some(all) = field.elements() else {
        return kind != Classification::TypeIV;
    };
    match kind {
        Classification::TypeIII => {
            let units: Vec<_> = all.into_iter().filter(|e| !e.is_zero()).collect();
            units.iter().any(|u| {
                units.iter().any(|v| {
                    units
                        .iter()
                        .any(|w| &u.square() + &v.square() == w.square())
                })
            })
        }
        Classification::TypeIV => sqrt_minus_one(field).is_some(),
        _ => true,
    }
}

/// A primitive triple of the requested type, built from coprime `(a, b)`.
fn constructed(rng: &mut ChaCha8Rng, field: FieldSpec, kind: Classification) -> Option<Triple> {
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let b = poly_of_degree(rng, field, n);
        let small = poly_up_to(rng, field, n - 1);
        let a = match kind {
            Classification::TypeI => poly_up_to(rng, field, n - 1),
            Classification::TypeII => &b + &small,
            Classification::TypeIII => {
                // leading coefficients 2k, k^2 - 1, k^2 + 1 must all be non-zero
                let k = unit(rng, field);
                let k2 = k.square();
                if (&k2 - &field.one()).is_zero() || (&k2 + &field.one()).is_zero() {
                    continue;
                }
                &b.scale(&k) + &small
            }
            Classification::TypeIV => &b.scale(&sqrt_minus_one(field)?) + &small,
            _ => unreachable!(),
        };
        if a.is_zero() || !Poly::gcd(&a, &b).unwrap().is_one() {
            continue;
        }
        let q = from_pair(&a, &b).scale(&unit(rng, field)).unwrap();
        if q.classify() == kind {
            return Some(q);
        }
    }
    None
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut per_kind = [0usize; 4];
    let kinds = [
        Classification::TypeI,
        Classification::TypeII,
        Classification::TypeIII,
        Classification::TypeIV,
    ];
    for field in fields().into_iter().chain([fp(7)]) {
        for (i, kind) in kinds.iter().enumerate() {
            if !kind_occurs(field, *kind) {
                continue;
            }
            for _ in 0..50 {
                let q = constructed(&mut rng, field, *kind)
                    .ok_or_else(|| format!("could not build a {kind} triple over {field}"))?;
                let n = normalize_to_spt(&q).map_err(|e| format!("normalize {q}: {e}"))?;
                ensure(
                    n.kind == *kind
                        && n.triple.is_spt()
                        && n.triple.height() == q.height()
                        && n.matrix.is_orthogonal()
                        && n.matrix.apply(&q) == n.triple,
                    || format!("normalizing {q} gave {}", n.triple),
                )?;
                per_kind[i] += 1;
            }
        }
    }

    // constant triples: type IV needs a square root of -1
    let q = FieldSpec::rationals();
    let mut constants = 0;
    let rationals: Vec<FieldElement> = (-8..=8)
        .flat_map(|n| (1..=4).map(move |d| (n, d)))
        .map(|(n, d)| q.from_ratio(n, d).unwrap())
        .collect();
    let mut spaces: Vec<(FieldSpec, Vec<FieldElement>)> = vec![(q, rationals)];
    for p in [3, 7] {
        spaces.push((fp(p), fp(p).elements().unwrap()));
    }
    for (field, values) in &spaces {
        for x in values {
            for y in values {
                for z in values {
                    if x.is_zero() && y.is_zero() && z.is_zero() {
                        continue;
                    }
                    let t = Triple::new(
                        Poly::constant(x.clone()),
                        Poly::constant(y.clone()),
                        Poly::constant(z.clone()),
                    )
                    .unwrap();
                    ensure(t.classify() != Classification::TypeIV, || {
                        format!("{t} over {field} classified as TypeIV")
                    })?;
                    constants += 1;
                }
            }
        }
    }
    let witness = Triple::parse("1", "2", "0", fp(5)).unwrap();
    ensure(witness.classify() == Classification::TypeIV, || "fp:5 witness".into())?;
    Ok(format!(
        "normalized I/II/III/IV = {}/{}/{}/{}; {constants} constant triples over q, fp:3, fp:7 have no TypeIV",
        per_kind[0], per_kind[1], per_kind[2], per_kind[3]
    ))
}

fn run_bin(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_polyberg"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn criterion_8() -> Check {
    let decompose_args = [
        "decompose", "--field", "q", "4*t^3-2*t", "4*t^4-5*t^2+1", "4*t^4-3*t^2+1",
    ];
    let generate_args = ["generate", "--field", "fp:3", "--max-height", "2", "--format", "dot"];
    let reconstruct_args = [
        "reconstruct", "--field", "q", r#"{"c":"1","word":[],"base":"t^2"}"#,
    ];
    let golden: [(&[&str], Option<&str>); 3] = [
        (&decompose_args, Some("{\"c\":\"1\",\"word\":[\"t\"],\"base\":\"t\"}\n")),
        (&generate_args, None),
        (&reconstruct_args, Some("(2*t^2, t^4-1, t^4+1)\n")),
    ];
    for (args, expected) in golden {
        let (first, code) = run_bin(args);
        let (second, _) = run_bin(args);
        ensure(code == 0, || format!("{args:?} exited {code}"))?;
        ensure(first == second, || format!("{args:?} output differs between runs"))?;
        let text = String::from_utf8(first).map_err(|e| e.to_string())?;
        match expected {
            Some(e) => ensure(text == e, || format!("{args:?} printed {text:?}"))?,
            None => ensure(
                text.starts_with("digraph") && text.matches("[label=").count() == 12,
                || format!("unexpected dot output {text:?}"),
            )?,
        }
    }
    Ok("decompose, generate --format dot, reconstruct are byte-stable".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("uniqueness round trip", criterion_1),
        ("height law", criterion_2),
        ("generator orthogonality", criterion_3),
        ("oracle equivalence", criterion_4),
        ("transitivity", criterion_5),
        ("orthogonal factorization", criterion_6),
        ("normalization", criterion_7),
        ("cli golden output", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {} {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
