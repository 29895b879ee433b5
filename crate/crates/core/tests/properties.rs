use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use proptest::prelude::*;

use nichols_core::reflections::{mat_mul, reflect, simple_reflection_matrix};
use nichols_core::{CartanMatrix, DynkinData, Generator, Order, Scalar, ScalarContext};

/// Two free generators, a sixth root of unity and a free generator tied to
/// the others by a relation.
fn mixed(p: u64) -> Arc<ScalarContext> {
    static CTX: OnceLock<Vec<Arc<ScalarContext>>> = OnceLock::new();
    let all = CTX.get_or_init(|| {
        [0u64, 5, 7]
            .iter()
            .map(|&p| {
                let gens = [Generator::free("q"), Generator::free("r"), Generator::of_order("z", 6), Generator::free("s")];
                ScalarContext::new(p, &gens, &["q*r*s*z"]).unwrap()
            })
            .collect()
    });
    all[[0u64, 5, 7].iter().position(|&c| c == p).unwrap()].clone()
}

fn scalar(ctx: &Arc<ScalarContext>, e: &[i64; 4]) -> Scalar {
    ["q", "r", "z", "s"].iter().zip(e).fold(ctx.one(), |acc, (n, k)| &acc * &ctx.generator(n).unwrap().pow(*k))
}

fn exps() -> impl Strategy<Value = [i64; 4]> {
    prop::array::uniform4(-8i64..=8)
}

fn small_exps() -> impl Strategy<Value = [i64; 4]> {
    prop::array::uniform4(-2i64..=2)
}

fn chars() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![0u64, 5, 7])
}

proptest! {
    #[test]
    fn normal_form_is_canonical(p in chars(), a in exps(), b in exps()) {
        let ctx = mixed(p);
        let x = scalar(&ctx, &a);
        let y = scalar(&ctx, &b);
        prop_assert_eq!(&(&(&x * &y) * &y.inv()), &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x * &x.inv()).is_one());
        prop_assert_eq!(ctx.parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn order_detects_exact_powers(p in chars(), a in exps(), n in 1i64..=13) {
        let x = scalar(&mixed(p), &a);
        match x.order() {
            Order::Finite(k) => {
                prop_assert!(x.pow(k as i64).is_one());
                prop_assert_eq!(x.pow(n).is_one(), n % k as i64 == 0);
                prop_assert!(p == 0 || k % p != 0);
                prop_assert!(x.in_primitive_roots(k));
            }
            Order::Infinite => prop_assert!(!x.pow(n).is_one()),
        }
    }

    #[test]
    fn discrete_log_is_a_witness(p in chars(), a in exps(), m in 0i64..20) {
        let x = scalar(&mixed(p), &a);
        let t = x.pow(m);
        let k = x.discrete_log(&t).expect("a power has a logarithm");
        prop_assert!(k as i64 <= m);
        prop_assert_eq!(x.pow(k as i64), t);
    }

    #[test]
    fn roots_contain_the_original(p in chars(), a in exps(), d in 1u64..=6) {
        let ctx = mixed(p);
        let x = scalar(&ctx, &a);
        let c = x.pow(d as i64);
        let roots = ctx.nth_roots(&c, &BigInt::from(d));
        prop_assert!(roots.contains(&x));
        prop_assert!(roots.iter().all(|y| y.pow(d as i64) == c));
    }

    #[test]
    fn reflection_is_an_involution(
        p in chars(),
        v in prop::array::uniform3(small_exps()),
        e in prop::array::uniform3(small_exps()),
        signs in prop::array::uniform6(any::<bool>()),
    ) {
        let ctx = mixed(p);
        let sign = |k: usize, x: Scalar| if signs[k] { &x * &ctx.minus_one() } else { x };
        let diag: Vec<Scalar> = (0..3).map(|k| sign(k, scalar(&ctx, &v[k]))).collect();
        let edges: Vec<(usize, usize, Scalar)> =
            [(0, 1), (1, 2), (0, 2)].iter().enumerate().map(|(k, &(i, j))| (i, j, sign(k + 3, scalar(&ctx, &e[k])))).collect();
        let d = DynkinData::from_edges(diag, &edges).unwrap();
        for i in 0..3 {
            if !d.i_finite(i) {
                continue;
            }
            let r = reflect(&d, i).unwrap();
            prop_assert_eq!(r.cartan_row(i).unwrap(), d.cartan_row(i).unwrap());
            prop_assert_eq!(&reflect(&r, i).unwrap(), &d);
        }
    }

    #[test]
    fn relabeling_composes(perm in Just([0usize, 1, 2]).prop_shuffle(), a in exps(), b in exps(), c in exps()) {
        let ctx = mixed(7);
        let [x, y, z] = [a, b, c].map(|e| scalar(&ctx, &e));
        let d = DynkinData::triangle(x.clone(), y.clone(), z.clone(), &x * &y, &y * &z, &x * &z).unwrap();
        let moved = d.relabel(&perm);
        let mut inverse = [0usize; 3];
        for (v, &t) in perm.iter().enumerate() {
            inverse[t] = v;
            prop_assert_eq!(moved.vertex(t), d.vertex(v));
        }
        prop_assert_eq!(moved.relabel(&inverse), d);
    }

    #[test]
    fn simple_reflections_are_involutions(a12 in 0i64..4, a21 in 0i64..4, a23 in 0i64..4, a32 in 0i64..4, i in 0usize..3) {
        let (a12, a21) = if a12 == 0 || a21 == 0 { (0, 0) } else { (-a12, -a21) };
        let (a23, a32) = if a23 == 0 || a32 == 0 { (0, 0) } else { (-a23, -a32) };
        let a = CartanMatrix(vec![vec![2, a12, 0], vec![a21, 2, a23], vec![0, a32, 2]]);
        let s = simple_reflection_matrix(&a, i);
        let id: Vec<Vec<i64>> = (0..3).map(|r| (0..3).map(|c| i64::from(r == c)).collect()).collect();
        prop_assert_eq!(mat_mul(&s, &s), id);
    }
}
