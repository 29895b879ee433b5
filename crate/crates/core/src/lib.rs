//! Symbolic engine for rank-3 Nichols algebras of diagonal type over fields
//! of positive characteristic.
//!
//! Scalars live in a finitely generated abelian group presented by
//! generators and monomial relations ([`ScalarContext`]). Dynkin data over
//! such a context can be reflected ([`reflect`]), closed into a Cartan graph
//! ([`CartanGraph`]), equipped with real roots ([`real_roots`]) and looked up
//! in the built-in classification tables ([`classify`]).
//!
//! ```
//! use nichols_core::{classify, DynkinData, Generator, Limits, ScalarContext};
//!
//! let ctx = ScalarContext::new(7, &[Generator::free("q")], &[] as &[&str]).unwrap();
//! let [a, b, c, d, e] = ["q", "q^-1", "q", "q^-1", "q"].map(|s| ctx.parse(s).unwrap());
//! let x = DynkinData::chain(a, b, c, d, e).unwrap();
//! let result = classify(&x, &Limits::default()).unwrap();
//! assert_eq!(result.rows()[0].0, "1");
//! ```

pub mod braiding;
pub mod field;
pub mod lattice;
pub mod neighborhoods;
pub mod reflections;
pub mod scalars;
pub mod tables;
pub mod weyl;

pub use braiding::{BraidingError, BraidingMatrix, CartanMatrix, DynkinData};
pub use field::{FieldElem, FiniteField};
pub use neighborhoods::{find_good_point, Kind, NeighborhoodError, NeighborhoodWitness};
pub use reflections::{reflect, simple_reflection_matrix, IntMatrix, ReflectError};
pub use scalars::{Generator, Order, ParseError, Scalar, ScalarContext, ScalarError};
pub use tables::{
    classify, is_finite_dimensional_nichols, match_diagram, verify_all_tables, ClassifyResult, Match, TableError, TablesReport, Verdict,
};
pub use weyl::{
    enumerate_morphisms, real_roots, weyl_groupoid_order, CartanGraph, GroupoidOrder, Limits, RootSystemData, RootVerdict, WeylError,
};
