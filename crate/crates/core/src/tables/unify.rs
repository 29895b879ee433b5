//! Matching a concrete Dynkin diagram against parameterized patterns.
//!
//! Each label slot gives one multiplicative equation in the unknown
//! parameter images; together with the row relations this is a linear
//! system over `Z` acting on the abelian group of the input's context.
//! The Smith form of the coefficient matrix reduces it to independent
//! root extractions, each with finitely many solutions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{builtin_rows, eval_word, ParamKind, PatternDiagram, Slot, TableError, TableRow};
use crate::braiding::DynkinData;
use crate::lattice;
use crate::scalars::{Order, Scalar, ScalarContext, Word};

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// An input diagram recognized as a relabeled table diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    pub row_id: String,
    pub heck_row: u32,
    /// 0-based index of the diagram within the row.
    pub diagram: usize,
    /// Pattern vertex `v` sits at input vertex `permutation[v]`.
    pub permutation: [usize; 3],
    /// Parameter images, in the row's parameter order.
    pub assignment: Vec<(String, Scalar)>,
}

impl fmt::Display for Match {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {} D{}", self.row_id, self.diagram + 1)?;
        if self.permutation != [0, 1, 2] {
            let [a, b, c] = self.permutation.map(|v| v + 1);
            write!(f, " relabeled tau{a}{b}{c}")?;
        }
        if !self.assignment.is_empty() {
            let parts: Vec<String> = self.assignment.iter().map(|(n, x)| format!("{n} = {x}")).collect();
            write!(f, " with {}", parts.join(", "))?;
        }
        Ok(())
    }
}

fn word_exponents(w: &Word, names: &[&str]) -> Vec<BigInt> {
    let mut v = lattice::zero_vector(names.len());
    for (n, e) in &w.factors {
        let k = names.iter().position(|m| m == n).expect("pattern parameters are declared");
        v[k] += *e;
    }
    v
}

fn sign(ctx: &Arc<ScalarContext>, w: &Word) -> Scalar {
    if w.negative {
        ctx.minus_one()
    } else {
        ctx.one()
    }
}

/// All parameter assignments making `pattern`, with vertex `v` placed at
/// `perm[v]`, equal to `d`. Constraints are not checked here.
fn solve(row: &TableRow, pattern: &PatternDiagram, d: &DynkinData, perm: [usize; 3]) -> Vec<Vec<Scalar>> {
    let ctx = d.context();
    let names: Vec<&str> = row.params.iter().map(|p| p.name.as_str()).collect();
    let k = names.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for (w, slot) in pattern.slots() {
        let target = match slot {
            Slot::Vertex(v) => d.vertex(perm[v]),
            Slot::Edge(a, b) => d.edge(perm[a], perm[b]),
        };
        rows.push(word_exponents(w, &names));
        rhs.push(target * &sign(ctx, w));
    }
    for w in &row.relations {
        rows.push(word_exponents(w, &names));
        rhs.push(sign(ctx, w));
    }
    if k == 0 {
        return if rhs.iter().all(Scalar::is_one) { vec![Vec::new()] } else { Vec::new() };
    }
    let snf = lattice::smith(&rows, k);
    let r = snf.rank();
    if r < k {
        // a parameter absent from every slot; patterns never do this
        return Vec::new();
    }
    // U·B, written multiplicatively
    let ub: Vec<Scalar> = snf
        .u
        .iter()
        .map(|urow| urow.iter().zip(&rhs).fold(ctx.one(), |acc, (c, b)| if c.is_zero() { acc } else { &acc * &b.pow_big(c) }))
        .collect();
    if ub[r..].iter().any(|x| !x.is_one()) {
        return Vec::new();
    }
    let mut ys: Vec<Vec<Scalar>> = vec![Vec::new()];
    for (dk, target) in snf.diag.iter().zip(&ub) {
        let roots = ctx.nth_roots(target, dk);
        if roots.is_empty() {
            return Vec::new();
        }
        ys = ys
            .into_iter()
            .flat_map(|prefix| {
                roots.iter().map(move |y| {
                    let mut v = prefix.clone();
                    v.push(y.clone());
                    v
                })
            })
            .collect();
    }
    ys.into_iter()
        .map(|y| {
            (0..k)
                .map(|t| snf.v[t].iter().zip(&y).fold(ctx.one(), |acc, (c, yu)| if c.is_zero() { acc } else { &acc * &yu.pow_big(c) }))
                .collect()
        })
        .collect()
}

fn satisfies_constraints(row: &TableRow, values: &[Scalar]) -> bool {
    for (param, x) in row.params.iter().zip(values) {
        let ok = match (&param.kind, x.order()) {
            (ParamKind::Free { not_orders }, Order::Finite(n)) => !not_orders.contains(&n),
            (ParamKind::Free { .. }, Order::Infinite) => true,
            (ParamKind::PrimitiveRoot { orders }, Order::Finite(n)) => orders.contains(&n),
            (ParamKind::PrimitiveRoot { .. }, Order::Infinite) => false,
        };
        if !ok {
            return false;
        }
    }
    let index = |n: &str| row.params.iter().position(|p| p.name == n).expect("declared");
    row.distinct.iter().all(|(a, b)| values[index(a)] != values[index(b)])
}

/// Every way `d` arises from the tables for characteristic `d`'s context.
pub fn match_diagram(d: &DynkinData) -> Result<Vec<Match>, TableError> {
    let p = d.context().char_p();
    let rows = builtin_rows(p)?;
    if d.theta() != 3 {
        return Err(TableError::RankMismatch(d.theta()));
    }
    let ctx = d.context();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for row in rows {
        for (di, pattern) in row.diagrams.iter().enumerate() {
            for perm in PERMUTATIONS {
                for values in solve(row, pattern, d, perm) {
                    if !satisfies_constraints(row, &values) {
                        continue;
                    }
                    let assignment: HashMap<String, Scalar> =
                        row.params.iter().map(|p| p.name.clone()).zip(values.iter().cloned()).collect();
                    let rebuilt = pattern.instantiate(ctx, &assignment).relabel(&perm);
                    assert_eq!(&rebuilt, d, "unsound match for row {} D{}", row.id, di + 1);
                    debug_assert!(row.relations.iter().all(|w| eval_word(ctx, w, &assignment).is_one()));
                    let key = (row.id.clone(), di, perm, values.iter().map(ToString::to_string).collect::<Vec<_>>());
                    if seen.insert(key) {
                        out.push(Match {
                            row_id: row.id.clone(),
                            heck_row: row.heck_row,
                            diagram: di,
                            permutation: perm,
                            assignment: row.params.iter().map(|p| p.name.clone()).zip(values).collect(),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}
