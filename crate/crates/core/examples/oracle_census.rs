//! Brute-force every small triple over F_p and cross-check the tree.
//!
//! Usage: `cargo run --release --example oracle_census -- [p] [max_deg] [jobs]`

use std::time::Instant;

use polyberg::oracle::{cross_validate, SearchBounds};
use polyberg::FieldSpec;

fn main() -> polyberg::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().ok());
    let p = args.next().flatten().unwrap_or(3);
    let max_deg = args.next().flatten().unwrap_or(3) as usize;
    let jobs = args.next().flatten().unwrap_or(0) as usize;

    let bounds = SearchBounds::new(FieldSpec::prime(p)?, max_deg)?;
    let start = Instant::now();
    let report = cross_validate(&bounds, jobs)?;
    println!("{} candidates in {:.2?}", bounds.candidates(), start.elapsed());
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    if !report.is_clean() {
        std::process::exit(1);
    }
    Ok(())
}
