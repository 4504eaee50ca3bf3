//! Brute-force ground truth over small prime fields.
//!
//! [`brute_force_triples`] walks every coefficient vector `(x, y, z)` with all
//! degrees at most `max_deg` and keeps the primitive solutions of
//! `x^2 + y^2 = z^2`. It shares nothing with the descent code beyond the gcd,
//! so [`cross_validate`] can compare the two routes element for element.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::berggren::{decompose, enumerate_tree, reconstruct};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::orthogroup::orbit_map;
use crate::poly::Poly;
use crate::triple::Triple;

/// Largest accepted number of candidate triples.
pub const SEARCH_CAP: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    field: FieldSpec,
    max_deg: usize,
}

impl SearchBounds {
    pub fn new(field: FieldSpec, max_deg: usize) -> Result<Self> {
        if !field.is_finite() {
            return Err(Error::InvalidArgument(
                "brute-force search needs a prime field".into(),
            ));
        }
        let b = SearchBounds { field, max_deg };
        let size = b.candidates();
        if size > SEARCH_CAP {
            return Err(Error::SearchTooLarge(size));
        }
        Ok(b)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    /// `p^(3 (max_deg + 1))`, saturating.
    pub fn candidates(&self) -> u128 {
        let p = self.field.modulus().unwrap_or(0) as u128;
        let exp = 3 * (self.max_deg as u32 + 1);
        p.checked_pow(exp).unwrap_or(u128::MAX)
    }
}

/// Coefficient tables for every polynomial of degree `<= max_deg`.
///
/// Polynomial `i` has coefficient `k` equal to digit `k` of `i` in base `p`, so
/// a contiguous index range shares its leading coefficients.
struct Tables {
    p: u32,
    n: usize,
    count: usize,
    coeffs: Vec<u32>,
    squares: Vec<u32>,
}

impl Tables {
    fn new(p: u32, max_deg: usize) -> Self {
        let n = max_deg + 1;
        let count = (p as usize).pow(n as u32);
        let sq_len = 2 * n - 1;
        let mut coeffs = vec![0u32; count * n];
        let mut squares = vec![0u32; count * sq_len];
        for i in 0..count {
            let c = &mut coeffs[i * n..(i + 1) * n];
            let mut rest = i;
            for slot in c.iter_mut() {
                *slot = (rest % p as usize) as u32;
                rest /= p as usize;
            }
            let s = &mut squares[i * sq_len..(i + 1) * sq_len];
            for a in 0..n {
                for b in 0..n {
                    s[a + b] = (s[a + b] + c[a] * c[b]) % p;
                }
            }
        }
        Tables {
            p,
            n,
            count,
            coeffs,
            squares,
        }
    }

    fn sq(&self, i: usize) -> &[u32] {
        let len = 2 * self.n - 1;
        &self.squares[i * len..(i + 1) * len]
    }

    fn coeffs(&self, i: usize) -> &[u32] {
        &self.coeffs[i * self.n..(i + 1) * self.n]
    }

    fn poly(&self, field: FieldSpec, i: usize) -> Poly {
        let cs = self
            .coeffs(i)
            .iter()
            .map(|&c| field.residue(c as u64))
            .collect();
        Poly::new(field, cs).expect("residues of the field")
    }
}

fn raw_degree(c: &[u32]) -> Option<usize> {
    c.iter().rposition(|&v| v != 0)
}

/// Standard shape read straight off coefficient vectors: `x != 0`,
/// `deg x < deg y = deg z` and equal leading coefficients of `y` and `z`.
fn raw_standard_with_nonzero_x(x: &[u32], y: &[u32], z: &[u32]) -> bool {
    match (raw_degree(x), raw_degree(y), raw_degree(z)) {
        (Some(dx), Some(dy), Some(dz)) => dx < dy && dy == dz && y[dy] == z[dz],
        _ => false,
    }
}

/// A primitive triple found by the search, with its raw standard-shape flag.
struct Hit {
    triple: Triple,
    standard: bool,
}

fn search(bounds: &SearchBounds, jobs: usize) -> Result<Vec<Hit>> {
    let field = bounds.field;
    let p = field.modulus().expect("prime field") as u32;
    let tables = Tables::new(p, bounds.max_deg);
    let sq_len = 2 * tables.n - 1;

    // z is split by its leading coefficient block: with `lead` top coefficients
    // fixed, each block is a contiguous index range.
    let lead = tables.n.min(2);
    let block = (p as usize).pow((tables.n - lead) as u32);
    let blocks = tables.count / block;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let raw: Vec<(usize, usize, usize)> = pool.install(|| {
        (0..blocks)
            .into_par_iter()
            .flat_map_iter(|b| {
                let tables = &tables;
                let mut found = Vec::new();
                let mut need = vec![0u32; sq_len];
                for zi in b * block..(b + 1) * block {
                    let zz = tables.sq(zi);
                    for xi in 0..tables.count {
                        let xx = tables.sq(xi);
                        for k in 0..sq_len {
                            need[k] = (zz[k] + tables.p - xx[k]) % tables.p;
                        }
                        for yi in 0..tables.count {
                            if tables.sq(yi) == need.as_slice() && (xi | yi | zi) != 0 {
                                found.push((xi, yi, zi));
                            }
                        }
                    }
                }
                found
            })
            .collect()
    });

    let hits: Vec<Hit> = pool.install(|| {
        raw.par_iter()
            .filter_map(|&(xi, yi, zi)| {
                let triple = Triple {
                    x: tables.poly(field, xi),
                    y: tables.poly(field, yi),
                    z: tables.poly(field, zi),
                };
                triple.is_primitive().then(|| Hit {
                    standard: raw_standard_with_nonzero_x(
                        tables.coeffs(xi),
                        tables.coeffs(yi),
                        tables.coeffs(zi),
                    ),
                    triple,
                })
            })
            .collect()
    });
    let mut keyed: Vec<_> = hits.into_iter().map(|h| (h.triple.sort_key(), h)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, h)| h).collect())
}

/// Every primitive Pythagorean triple with component degrees `<= max_deg`,
/// in canonical order (height, then rendered components).
pub fn brute_force_triples(bounds: &SearchBounds, jobs: usize) -> Result<Vec<Triple>> {
    Ok(search(bounds, jobs)?.into_iter().map(|h| h.triple).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsJson {
    pub field: String,
    pub max_deg: usize,
    pub candidates: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightCounts {
    /// Primitive triples of this height found by the search.
    pub primitive: usize,
    /// Of those, standard with `x != 0`.
    pub brute_force_spt: usize,
    /// Tree nodes of this height.
    pub tree_spt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub bounds: BoundsJson,
    pub counts_by_height: BTreeMap<String, HeightCounts>,
    pub classification_counts: BTreeMap<String, usize>,
    pub violations: Vec<String>,
}

impl CensusReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares the search against the tree and the orbit construction.
///
/// Checks that the standard triples with `x != 0` coincide with the tree
/// nodes, that every tree word round-trips, that every primitive triple gets a
/// Pythagorean classification, and that `orbit_map(q) (0,1,1)^T = q` for every
/// primitive triple.
pub fn cross_validate(bounds: &SearchBounds, jobs: usize) -> Result<CensusReport> {
    let field = bounds.field;
    let hits = search(bounds, jobs)?;
    let nodes = enumerate_tree(field, bounds.max_deg, None, jobs)?;
    let mut violations = Vec::new();

    let mut counts: BTreeMap<usize, HeightCounts> = BTreeMap::new();
    for h in &hits {
        let entry = counts
            .entry(h.triple.height().finite().unwrap_or(0))
            .or_default();
        entry.primitive += 1;
        if h.standard {
            entry.brute_force_spt += 1;
        }
    }
    for n in &nodes {
        counts.entry(n.height).or_default().tree_spt += 1;
    }

    let oracle_set: HashSet<&Triple> = hits.iter().filter(|h| h.standard).map(|h| &h.triple).collect();
    let tree_set: HashSet<&Triple> = nodes.iter().map(|n| &n.triple).collect();
    if tree_set.len() != nodes.len() {
        violations.push(format!(
            "tree emitted {} duplicate triples",
            nodes.len() - tree_set.len()
        ));
    }
    let mut missing: Vec<&&Triple> = oracle_set.difference(&tree_set).collect();
    let mut extra: Vec<&&Triple> = tree_set.difference(&oracle_set).collect();
    missing.sort_by_key(|t| t.sort_key());
    extra.sort_by_key(|t| t.sort_key());
    violations.extend(missing.iter().map(|t| format!("missing from tree: {t}")));
    violations.extend(extra.iter().map(|t| format!("not found by search: {t}")));

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;

    let word_violations: Vec<String> = pool.install(|| {
        nodes
            .par_iter()
            .filter_map(|n| {
                let rebuilt = reconstruct(&n.word, field);
                let back = rebuilt.as_ref().ok().map(decompose);
                match (rebuilt, back) {
                    (Ok(t), Some(Ok(w))) if t == n.triple && w == n.word => None,
                    _ => Some(format!("word round trip failed for {}", n.triple)),
                }
            })
            .collect()
    });
    violations.extend(word_violations);

    let per_triple: Vec<(String, Option<String>)> = pool.install(|| {
        hits.par_iter()
            .map(|h| {
                let class = h.triple.classify();
                let mut problem = None;
                if !class.is_primitive_pythagorean() {
                    problem = Some(format!("{} classified as {class}", h.triple));
                } else if h.standard != (class == crate::triple::Classification::Spt && !h.triple.x.is_zero()) {
                    problem = Some(format!("{} classified as {class} against raw shape", h.triple));
                } else {
                    let axis = Triple::axis(&field.one());
                    match orbit_map(&h.triple) {
                        Ok(m) if m.is_orthogonal() && m.apply(&axis) == h.triple => {}
                        Ok(_) => problem = Some(format!("orbit map misses {}", h.triple)),
                        Err(e) => problem = Some(format!("orbit map failed for {}: {e}", h.triple)),
                    }
                }
                (class.to_string(), problem)
            })
            .collect()
    });
    let mut classification_counts = BTreeMap::new();
    for (class, problem) in per_triple {
        *classification_counts.entry(class).or_insert(0) += 1;
        violations.extend(problem);
    }

    Ok(CensusReport {
        bounds: BoundsJson {
            field: field.to_string(),
            max_deg: bounds.max_deg,
            candidates: bounds.candidates().to_string(),
        },
        counts_by_height: counts
            .into_iter()
            .map(|(h, c)| (h.to_string(), c))
            .collect(),
        classification_counts,
        violations,
    })
}
