mod common;

use std::collections::HashMap;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{compare_with_oracle, embeddings, field_qnum, random_dynkin, random_finite_context, random_scalar};
use nichols_core::{FiniteField, Generator, Order, ScalarContext, ScalarError};

#[test]
fn cartan_entries_and_reflections_match_field_computation() {
    let mut rng = StdRng::seed_from_u64(11);
    for round in 0..40 {
        let p = [2u64, 3, 5, 7][round % 4];
        let setup = random_finite_context(&mut rng, p);
        let names: Vec<&str> = setup.gens.iter().map(|g| g.name.as_str()).collect();
        let embs = embeddings(&mut rng, &setup, 2);
        for _ in 0..8 {
            let d = random_dynkin(&mut rng, &setup.ctx, &names, 12);
            for emb in &embs {
                if let Err(e) = compare_with_oracle(&setup, emb, &d) {
                    panic!("p = {p}, {:?}: {e}", setup.gens);
                }
            }
        }
    }
}

#[test]
fn orders_and_qnums_match_field_computation() {
    let mut rng = StdRng::seed_from_u64(12);
    for round in 0..40 {
        let p = [2u64, 3, 5, 7][round % 4];
        let setup = random_finite_context(&mut rng, p);
        let names: Vec<&str> = setup.gens.iter().map(|g| g.name.as_str()).collect();
        let f = &setup.field;
        for emb in embeddings(&mut rng, &setup, 2) {
            for _ in 0..10 {
                let q = random_scalar(&mut rng, &setup.ctx, &names, 12);
                let image = setup.ctx.eval_finite_field(f, &emb, &q).unwrap();
                assert_eq!(q.order(), Order::Finite(f.mult_order(&image)), "{q}");
                for n in 1..=14 {
                    assert_eq!(q.qnum_is_zero(n), f.is_zero(&field_qnum(f, &image, n)), "({n})_{q}");
                }
            }
        }
    }
}

#[test]
fn discrete_log_and_roots_agree_with_search() {
    let mut rng = StdRng::seed_from_u64(13);
    for round in 0..30 {
        let p = [2u64, 3, 5, 7][round % 4];
        let setup = random_finite_context(&mut rng, p);
        let names: Vec<&str> = setup.gens.iter().map(|g| g.name.as_str()).collect();
        let ctx = &setup.ctx;
        let exponent = ctx.torsion_exponent().unwrap();
        let all = elements(ctx, &names);
        for _ in 0..10 {
            let base = random_scalar(&mut rng, ctx, &names, 12);
            let target = random_scalar(&mut rng, ctx, &names, 12);
            let search = (0..exponent).find(|&m| base.pow(m as i64) == target);
            assert_eq!(base.discrete_log(&target), search, "log of {target} to base {base}");
            let d: u64 = rng.random_range(1..=6);
            let roots = ctx.nth_roots(&target, &BigInt::from(d));
            let expected: Vec<_> = all.iter().filter(|y| y.pow(d as i64) == target).collect();
            assert_eq!(roots.len(), expected.len(), "{d}-th roots of {target}");
            assert!(roots.iter().all(|y| y.pow(d as i64) == target));
        }
    }
}

/// Every element of a finite context, by enumerating signed monomials.
fn elements(ctx: &std::sync::Arc<ScalarContext>, names: &[&str]) -> Vec<nichols_core::Scalar> {
    let exponent = ctx.torsion_exponent().unwrap() as i64;
    let mut out = vec![ctx.one(), ctx.minus_one()];
    for n in names {
        let g = ctx.generator(n).unwrap();
        let mut next = Vec::new();
        for x in &out {
            for e in 0..exponent {
                next.push(x * &g.pow(e));
            }
        }
        out = next;
    }
    out.sort_by_key(ToString::to_string);
    out.dedup();
    out
}

#[test]
fn evaluation_examples() {
    let ctx = ScalarContext::new(7, &[Generator::of_order("z", 3)], &[] as &[&str]).unwrap();
    let f = FiniteField::new(7, 1);
    let z2 = ctx.parse("z^2").unwrap();
    let good: HashMap<_, _> = [("z".to_string(), f.from_int(2))].into();
    assert_eq!(ctx.eval_finite_field(&f, &good, &z2).unwrap(), f.from_int(4));
    let bad: HashMap<_, _> = [("z".to_string(), f.from_int(3))].into();
    assert!(matches!(ctx.eval_finite_field(&f, &bad, &z2), Err(ScalarError::AssignmentViolatesRelations(_))));

    let ctx = ScalarContext::new(5, &[Generator::free("q")], &[] as &[&str]).unwrap();
    let f = FiniteField::new(5, 1);
    let m: HashMap<_, _> = [("q".to_string(), f.from_int(2))].into();
    assert_eq!(ctx.eval_finite_field(&f, &m, &ctx.parse("q^-1").unwrap()).unwrap(), f.from_int(3));
}

#[test]
fn free_generators_specialize_consistently() {
    // a homomorphism need not be faithful, but equal scalars stay equal
    let mut rng = StdRng::seed_from_u64(14);
    let ctx = ScalarContext::new(5, &[Generator::free("q"), Generator::free("r")], &["q^2*r^-1"]).unwrap();
    let f = FiniteField::new(5, 2);
    for x in f.elements().skip(1).take(10) {
        let m: HashMap<_, _> = [("q".to_string(), x.clone()), ("r".to_string(), f.mul(&x, &x))].into();
        for _ in 0..20 {
            let a = random_scalar(&mut rng, &ctx, &["q", "r"], 5);
            let b = random_scalar(&mut rng, &ctx, &["q", "r"], 5);
            let lhs = ctx.eval_finite_field(&f, &m, &(&a * &b)).unwrap();
            let rhs = f.mul(&ctx.eval_finite_field(&f, &m, &a).unwrap(), &ctx.eval_finite_field(&f, &m, &b).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}
