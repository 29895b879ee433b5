//! Randomized contexts, faithful finite-field embeddings and brute-force
//! oracles shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;
use rand::rngs::StdRng;
use rand::Rng;

use nichols_core::field::{FieldElem, FiniteField};
use nichols_core::reflections::reflect;
use nichols_core::scalars::{Generator, Scalar, ScalarContext};
use nichols_core::DynkinData;

/// A context whose torsion is all of it, together with one embedding.
pub struct FiniteSetup {
    pub ctx: Arc<ScalarContext>,
    pub gens: Vec<Generator>,
    pub field: FiniteField,
}

/// Largest field degree the oracle will enumerate over.
const MAX_DEGREE: usize = 6;

/// Random context over `p` generated by one or two elements of pairwise
/// coprime orders `<= 12`, none divisible by `p`.
pub fn random_finite_context(rng: &mut StdRng, p: u64) -> FiniteSetup {
    loop {
        let count = rng.random_range(1..=2);
        let mut orders: Vec<u64> = Vec::new();
        while orders.len() < count {
            let n: u64 = rng.random_range(2..=12);
            if !n.is_multiple_of(p) && orders.iter().all(|m| m.gcd(&n) == 1) {
                orders.push(n);
            }
        }
        // one generator is sometimes given its order by a relation instead
        let by_relation = rng.random_bool(0.3);
        let names = ["a", "b"];
        let mut gens = Vec::new();
        let mut relations = Vec::new();
        for (k, n) in orders.iter().enumerate() {
            if by_relation && k == 0 {
                gens.push(Generator::free(names[k]));
                relations.push(format!("{}^{n}", names[k]));
            } else {
                gens.push(Generator::of_order(names[k], *n));
            }
        }
        let Ok(ctx) = ScalarContext::new(p, &gens, &relations) else {
            continue;
        };
        let exponent = ctx.torsion_exponent().expect("torsion is finite");
        // degree of the smallest field holding the torsion
        let degree = (1..=MAX_DEGREE as u32).find(|&k| (p as u128).pow(k) % exponent as u128 == 1 % exponent as u128);
        if degree.is_none() {
            continue;
        }
        let field = FiniteField::with_root_of_unity(p, exponent).expect("exponent is coprime to p");
        let gens = orders.iter().zip(names).map(|(n, name)| Generator::of_order(name, *n)).collect();
        return FiniteSetup { ctx, gens, field };
    }
}

/// Up to `count` faithful embeddings: each generator goes to a primitive
/// root of its own order.
pub fn embeddings(rng: &mut StdRng, setup: &FiniteSetup, count: usize) -> Vec<HashMap<String, FieldElem>> {
    let choices: Vec<Vec<FieldElem>> =
        setup.gens.iter().map(|g| setup.field.primitive_nth_roots(g.order.expect("finite generator"))).collect();
    let total: usize = choices.iter().map(Vec::len).product();
    let mut out = Vec::new();
    for _ in 0..count.min(total) {
        let m = setup.gens.iter().zip(&choices).map(|(g, c)| (g.name.clone(), c[rng.random_range(0..c.len())].clone())).collect();
        out.push(m);
    }
    out
}

/// A random element: a signed monomial with small exponents.
pub fn random_scalar(rng: &mut StdRng, ctx: &Arc<ScalarContext>, names: &[&str], spread: i64) -> Scalar {
    let mut x = if rng.random_bool(0.5) { ctx.minus_one() } else { ctx.one() };
    for n in names {
        let e = rng.random_range(-spread..=spread);
        x = &x * &ctx.generator(n).unwrap().pow(e);
    }
    x
}

/// Random rank-3 Dynkin data; labels equal to `±1` and missing edges are
/// drawn more often than uniform sampling would give.
pub fn random_dynkin(rng: &mut StdRng, ctx: &Arc<ScalarContext>, names: &[&str], spread: i64) -> DynkinData {
    let draw = |rng: &mut StdRng, allow_one: bool| {
        let roll = rng.random_range(0..8);
        if roll == 0 {
            ctx.minus_one()
        } else if roll == 1 && allow_one {
            ctx.one()
        } else {
            random_scalar(rng, ctx, names, spread)
        }
    };
    let diag: Vec<Scalar> = (0..3).map(|_| draw(rng, true)).collect();
    let mut edges = Vec::new();
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        let e = if rng.random_bool(0.25) { ctx.one() } else { draw(rng, false) };
        edges.push((i, j, e));
    }
    DynkinData::from_edges(diag, &edges).unwrap()
}

/// `1 + q + ... + q^(n-1)` computed in the field.
pub fn field_qnum(f: &FiniteField, q: &FieldElem, n: u64) -> FieldElem {
    let mut sum = f.zero();
    let mut pow = f.one();
    for _ in 0..n {
        sum = f.add(&sum, &pow);
        pow = f.mul(&pow, q);
    }
    sum
}

/// `-min{m : (m+1)_q (q^m e - 1) = 0}` by direct search in the field.
pub fn brute_cartan_entry(f: &FiniteField, q: &FieldElem, e: &FieldElem) -> i64 {
    let one = f.one();
    let mut qm = f.one();
    for m in 0..f.size() {
        if f.is_zero(&field_qnum(f, q, m + 1)) || f.mul(&qm, e) == one {
            return -(m as i64);
        }
        qm = f.mul(&qm, q);
    }
    unreachable!("a finite field always terminates the search")
}

/// Field images of a diagram's labels: vertices and the symmetric edge table.
pub struct FieldDiagram {
    pub vertices: Vec<FieldElem>,
    pub edges: Vec<Vec<FieldElem>>,
}

pub fn embed(setup: &FiniteSetup, emb: &HashMap<String, FieldElem>, d: &DynkinData) -> FieldDiagram {
    let ev = |s: &Scalar| setup.ctx.eval_finite_field(&setup.field, emb, s).unwrap();
    let n = d.theta();
    FieldDiagram {
        vertices: (0..n).map(|i| ev(d.vertex(i))).collect(),
        edges: (0..n).map(|i| (0..n).map(|j| ev(d.edge(i, j))).collect()).collect(),
    }
}

/// `chi(b, b)` and `chi(b, c) chi(c, b)` for the bicharacter with the given
/// vertex and edge labels.
fn form(f: &FiniteField, fd: &FieldDiagram, b: &[i64], c: &[i64]) -> FieldElem {
    let n = b.len();
    let mut acc = f.one();
    for l in 0..n {
        acc = f.mul(&acc, &f.pow_i64(&fd.vertices[l], 2 * b[l] * c[l]));
        for m in l + 1..n {
            acc = f.mul(&acc, &f.pow_i64(&fd.edges[l][m], b[l] * c[m] + b[m] * c[l]));
        }
    }
    acc
}

fn self_form(f: &FiniteField, fd: &FieldDiagram, b: &[i64]) -> FieldElem {
    let n = b.len();
    let mut acc = f.one();
    for l in 0..n {
        acc = f.mul(&acc, &f.pow_i64(&fd.vertices[l], b[l] * b[l]));
        for m in l + 1..n {
            acc = f.mul(&acc, &f.pow_i64(&fd.edges[l][m], b[l] * b[m]));
        }
    }
    acc
}

/// The reflection at `i` computed from the bicharacter on
/// `alpha_j - a_ij alpha_i`, with Cartan entries found by brute force.
pub fn brute_reflect(f: &FiniteField, fd: &FieldDiagram, i: usize) -> FieldDiagram {
    let n = fd.vertices.len();
    let basis: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let mut v = vec![0i64; n];
            v[j] = 1;
            if j == i {
                v[i] = -1;
            } else {
                v[i] = -brute_cartan_entry(f, &fd.vertices[i], &fd.edges[i][j]);
            }
            v
        })
        .collect();
    FieldDiagram {
        vertices: basis.iter().map(|b| self_form(f, fd, b)).collect(),
        edges: (0..n).map(|j| (0..n).map(|k| if j == k { f.one() } else { form(f, fd, &basis[j], &basis[k]) }).collect()).collect(),
    }
}

/// Outcome of comparing the engine to the oracles on one diagram under one
/// embedding. Returns a description of the first disagreement.
pub fn compare_with_oracle(setup: &FiniteSetup, emb: &HashMap<String, FieldElem>, d: &DynkinData) -> Result<(), String> {
    let f = &setup.field;
    let fd = embed(setup, emb, d);
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let sym = d.cartan_entry(i, j);
            let brute = brute_cartan_entry(f, &fd.vertices[i], &fd.edges[i][j]);
            if sym != Some(brute) {
                return Err(format!("{d}: a_{}{} symbolic {sym:?}, field {brute}", i + 1, j + 1));
            }
        }
        let r = reflect(d, i).map_err(|e| format!("{d}: reflect {} failed: {e}", i + 1))?;
        let got = embed(setup, emb, &r);
        let want = brute_reflect(f, &fd, i);
        if got.vertices != want.vertices || got.edges != want.edges {
            return Err(format!("{d}: reflection {} gives {r}, field oracle disagrees", i + 1));
        }
    }
    Ok(())
}
