//! Enumerate the Berggren tree up to a height bound and print it as DOT.
//!
//! Usage: `cargo run --example generate_tree -- [p] [max_height]`

use polyberg::berggren::{enumerate_tree, render_dot, CoefficientBound};
use polyberg::FieldSpec;

fn main() -> polyberg::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    let max_height: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(4);

    let field = FieldSpec::prime(p)?;
    let nodes = enumerate_tree(field, max_height, None, 0)?;
    eprintln!("{} standard triples over {field} with height <= {max_height}", nodes.len());
    for n in nodes.iter().take(5) {
        eprintln!("  h={} {}  =  {}", n.height, n.triple, n.word);
    }

    // over Q the coefficients need a bound
    let bound = CoefficientBound { max_numerator: 1, max_denominator: 2 };
    let q_nodes = enumerate_tree(FieldSpec::rationals(), 2, Some(&bound), 0)?;
    eprintln!("{} height-2 nodes over q with coefficients in {{0, ±1/2, ±1}}", q_nodes.len());

    print!("{}", render_dot(&nodes));
    Ok(())
}
