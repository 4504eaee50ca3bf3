//! Bounded materialization of the Berggren tree.
//!
//! Roots are the triples `c * S_f`; the children of a node `Q` are `M_g Q` for
//! every non-constant `g`, at height `2 deg g + h(Q)`. Because heights only grow,
//! a height bound cuts the tree to a finite set when the coefficients range
//! over a finite set.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Base, BerggrenWord, WordJson};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::Poly;
use crate::transform::mf;
use crate::triple::{Triple, TripleJson};

/// Finite coefficient range for enumeration over `Q`: every `n/d` with
/// `|n| <= max_numerator` and `1 <= d <= max_denominator`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoefficientBound {
    pub max_numerator: u64,
    pub max_denominator: u64,
}

impl CoefficientBound {
    pub fn values(&self) -> Vec<FieldElement> {
        let mut out: Vec<BigRational> = Vec::new();
        let n = self.max_numerator as i64;
        for d in 1..=self.max_denominator.max(1) as i64 {
            for k in -n..=n {
                out.push(BigRational::new(BigInt::from(k), BigInt::from(d)));
            }
        }
        out.sort();
        out.dedup();
        let q = FieldSpec::rationals();
        out.iter()
            .map(|r| q.from_rational(r).expect("rational field"))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub triple: Triple,
    pub word: BerggrenWord,
    pub height: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNodeJson {
    pub height: usize,
    pub triple: TripleJson,
    pub word: WordJson,
}

impl TreeNode {
    pub fn to_json(&self) -> TreeNodeJson {
        TreeNodeJson {
            height: self.height,
            triple: self.triple.to_json(),
            word: self.word.to_json(),
        }
    }
}

/// All polynomials of exact degree `deg` with coefficients from `coeffs`.
fn polys_of_degree(field: FieldSpec, coeffs: &[FieldElement], deg: usize) -> Vec<Poly> {
    let leads: Vec<&FieldElement> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; deg];
    loop {
        for lead in &leads {
            let mut cs: Vec<FieldElement> = idx.iter().map(|&i| coeffs[i].clone()).collect();
            cs.push((*lead).clone());
            out.push(Poly::new(field, cs).expect("coefficients share the field"));
        }
        // odometer over the lower coefficients
        let mut k = 0;
        loop {
            if k == deg {
                return out;
            }
            idx[k] += 1;
            if idx[k] < coeffs.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Every SPT with `x != 0` and height at most `max_height`, each exactly once,
/// sorted by height and then by rendered triple.
///
/// Over `Q` a [`CoefficientBound`] is required; it limits the coefficients of
/// `c`, the base and every word entry. `jobs = 0` uses rayon's default pool.
pub fn enumerate_tree(
    field: FieldSpec,
    max_height: usize,
    bound: Option<&CoefficientBound>,
    jobs: usize,
) -> Result<Vec<TreeNode>> {
    let coeffs = match (field.elements(), bound) {
        (Some(all), _) => all,
        (None, Some(b)) => b.values(),
        (None, None) => return Err(Error::UnboundedEnumeration),
    };
    let max_deg = max_height / 2;
    let by_degree: Vec<Vec<Poly>> = (0..=max_deg)
        .map(|d| {
            if d == 0 {
                Vec::new()
            } else {
                polys_of_degree(field, &coeffs, d)
            }
        })
        .collect();
    let units: Vec<FieldElement> = coeffs.iter().filter(|c| !c.is_zero()).cloned().collect();

    let roots: Vec<(FieldElement, Poly)> = units
        .iter()
        .flat_map(|c| {
            by_degree
                .iter()
                .flatten()
                .map(move |f| (c.clone(), f.clone()))
        })
        .collect();

    let grow = |(c, base): &(FieldElement, Poly)| -> Vec<TreeNode> {
        let root = TreeNode {
            triple: Triple::make_s(base).triple.scale(c).expect("c is a unit"),
            word: BerggrenWord {
                c: c.clone(),
                word: Vec::new(),
                base: Base::Poly(base.clone()),
            },
            height: 2 * base.degree().finite().expect("base is non-constant"),
        };
        let mut out = Vec::new();
        let mut stack = vec![root];
        while let Some(node) = stack.pop() {
            let budget = (max_height - node.height) / 2;
            for (d, gs) in by_degree.iter().enumerate().take(budget + 1).skip(1) {
                for g in gs {
                    let mut word = Vec::with_capacity(node.word.word.len() + 1);
                    word.push(g.clone());
                    word.extend(node.word.word.iter().cloned());
                    stack.push(TreeNode {
                        triple: mf(g).apply(&node.triple),
                        word: BerggrenWord {
                            c: node.word.c.clone(),
                            word,
                            base: node.word.base.clone(),
                        },
                        height: node.height + 2 * d,
                    });
                }
            }
            out.push(node);
        }
        out
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let nodes: Vec<TreeNode> = pool.install(|| roots.par_iter().flat_map_iter(grow).collect());

    let mut keyed: Vec<_> = nodes.into_iter().map(|n| (n.triple.sort_key(), n)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, n)| n).collect())
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering: one node per triple, an edge `M_{f}` from each node to
/// the child obtained by prepending `f` to its word.
pub fn render_dot(nodes: &[TreeNode]) -> String {
    let index: HashMap<&BerggrenWord, usize> =
        nodes.iter().enumerate().map(|(i, n)| (&n.word, i)).collect();
    let mut out = String::from("digraph berggren {\n  node [shape=box];\n");
    for (i, n) in nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&n.triple.to_string()));
    }
    for (i, n) in nodes.iter().enumerate() {
        let Some((head, rest)) = n.word.word.split_first() else {
            continue;
        };
        let parent = BerggrenWord {
            c: n.word.c.clone(),
            word: rest.to_vec(),
            base: n.word.base.clone(),
        };
        if let Some(p) = index.get(&parent) {
            let _ = writeln!(out, "  n{p} -> n{i} [label=\"M_{{{}}}\"];", escape(&head.to_string()));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berggren::decompose;
    use crate::poly::Degree;
    use std::collections::HashSet;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn f3_height_two() {
        let f3 = fp(3);
        let nodes = enumerate_tree(f3, 2, None, 1).unwrap();
        assert_eq!(nodes.len(), 12);
        let bases: HashSet<String> = nodes
            .iter()
            .map(|n| match &n.word.base {
                Base::Poly(f) => f.to_string(),
                Base::Axis => unreachable!(),
            })
            .collect();
        let expected: HashSet<String> = ["t", "2*t", "t+1", "t+2", "2*t+1", "2*t+2"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(bases, expected);
        assert!(nodes.iter().all(|n| n.word.word.is_empty() && n.height == 2));
    }

    #[test]
    fn odd_bounds() {
        let f3 = fp(3);
        assert_eq!(
            enumerate_tree(f3, 3, None, 2).unwrap(),
            enumerate_tree(f3, 2, None, 2).unwrap()
        );
        assert!(enumerate_tree(f3, 1, None, 1).unwrap().is_empty());
        assert!(enumerate_tree(fp(7), 0, None, 1).unwrap().is_empty());
    }

    #[test]
    fn rationals_need_a_bound() {
        let q = FieldSpec::rationals();
        assert_eq!(enumerate_tree(q, 2, None, 1), Err(Error::UnboundedEnumeration));
        let bound = CoefficientBound { max_numerator: 1, max_denominator: 2 };
        // values: -1, -1/2, 0, 1/2, 1
        assert_eq!(bound.values().len(), 5);
        let nodes = enumerate_tree(q, 2, Some(&bound), 2).unwrap();
        // 4 choices of c, 4 * 5 linear bases
        assert_eq!(nodes.len(), 4 * 20);
    }

    #[test]
    fn nodes_are_distinct_spts_with_matching_words() {
        for (field, h) in [(fp(3), 4), (fp(5), 2), (fp(3), 6)] {
            let nodes = enumerate_tree(field, h, None, 0).unwrap();
            let triples: HashSet<&Triple> = nodes.iter().map(|n| &n.triple).collect();
            assert_eq!(triples.len(), nodes.len());
            for n in &nodes {
                assert!(n.triple.is_spt());
                assert_eq!(n.triple.height(), Degree::Finite(n.height));
                assert_eq!(n.word.height(), n.height);
                assert_eq!(decompose(&n.triple).unwrap(), n.word);
            }
        }
    }

    #[test]
    fn independent_of_worker_count() {
        let a = enumerate_tree(fp(3), 4, None, 1).unwrap();
        let b = enumerate_tree(fp(3), 4, None, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dot_output() {
        let nodes = enumerate_tree(fp(3), 2, None, 1).unwrap();
        let dot = render_dot(&nodes);
        assert_eq!(dot.matches("[label=").count(), 12);
        assert!(!dot.contains("->"));

        let nodes = enumerate_tree(fp(3), 4, None, 1).unwrap();
        let dot = render_dot(&nodes);
        let edges = nodes.iter().filter(|n| !n.word.word.is_empty()).count();
        assert_eq!(dot.matches("->").count(), edges);
        assert!(dot.contains("[label=\"M_{t}\"]"));
    }
}
