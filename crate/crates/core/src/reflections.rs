//! The reflection `r_i` on Dynkin diagrams and the simple reflection
//! matrices `s_i` acting on root lattices.

use thiserror::Error;

use crate::braiding::{BraidingError, CartanMatrix, DynkinData};
use crate::scalars::{Order, Scalar};

/// Square integer matrix, row-major.
pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflectError {
    #[error("not {}-finite: no Cartan entry a_{}{}", .i + 1, .i + 1, .j + 1)]
    NotIFinite { i: usize, j: usize },
    #[error("no reflection case applies at vertex {} for neighbor {}", .i + 1, .j + 1)]
    CaseExhaustion { i: usize, j: usize },
    #[error("vertex {} is out of range for rank {theta}", .i + 1)]
    VertexOutOfRange { i: usize, theta: usize },
}

impl From<BraidingError> for ReflectError {
    fn from(e: BraidingError) -> Self {
        match e {
            BraidingError::NotIFinite { i, j } => ReflectError::NotIFinite { i, j },
            other => unreachable!("reflection on valid Dynkin data raised {other}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Case {
    /// `q_ii = 1`.
    Unit,
    /// `q_ij q_ji = q_ii^{a_ij}`.
    Power,
    /// `q_ii` is a primitive `(1 - a_ij)`-th root of unity.
    Root,
}

fn classify(q: &Scalar, edge: &Scalar, a: i64) -> Option<Case> {
    if *edge == q.pow(a) {
        return Some(Case::Power);
    }
    if q.order() == Order::Finite((1 - a) as u64) {
        return Some(Case::Root);
    }
    if q.is_one() {
        return Some(Case::Unit);
    }
    None
}

fn vertex_label(case: Case, qii: &Scalar, qjj: &Scalar, e: &Scalar, a: i64) -> Scalar {
    match case {
        Case::Unit => qjj * &e.pow(-a),
        Case::Power => qjj.clone(),
        Case::Root => &(qii * qjj) * &e.pow(-a),
    }
}

fn edge_label(case: Case, qii: &Scalar, e: &Scalar) -> Scalar {
    match case {
        Case::Unit => e.inv(),
        Case::Power => e.clone(),
        Case::Root => &qii.pow(2) * &e.inv(),
    }
}

/// `R_i(D)`.
pub fn reflect(d: &DynkinData, i: usize) -> Result<DynkinData, ReflectError> {
    let n = d.theta();
    if i >= n {
        return Err(ReflectError::VertexOutOfRange { i, theta: n });
    }
    let row = d.cartan_row(i)?;
    let qii = d.vertex(i);
    let mut cases = vec![Case::Power; n];
    for j in (0..n).filter(|&j| j != i) {
        let case = classify(qii, d.edge(i, j), row[j]).ok_or(ReflectError::CaseExhaustion { i, j })?;
        if cfg!(debug_assertions) && case == Case::Power && qii.order() == Order::Finite((1 - row[j]) as u64) {
            debug_assert_eq!(
                vertex_label(Case::Power, qii, d.vertex(j), d.edge(i, j), row[j]),
                vertex_label(Case::Root, qii, d.vertex(j), d.edge(i, j), row[j])
            );
            debug_assert_eq!(edge_label(Case::Power, qii, d.edge(i, j)), edge_label(Case::Root, qii, d.edge(i, j)));
        }
        cases[j] = case;
    }

    let one = d.context().one();
    let mut diag = Vec::with_capacity(n);
    let mut edge = vec![vec![one; n]; n];
    for j in 0..n {
        diag.push(if j == i { qii.clone() } else { vertex_label(cases[j], qii, d.vertex(j), d.edge(i, j), row[j]) });
    }
    for j in (0..n).filter(|&j| j != i) {
        let e = edge_label(cases[j], qii, d.edge(i, j));
        edge[i][j] = e.clone();
        edge[j][i] = e;
        for k in (j + 1..n).filter(|&k| k != i) {
            let l = pair_label(d, i, j, k, cases[j], cases[k], row[j], row[k]);
            edge[j][k] = l.clone();
            edge[k][j] = l;
        }
    }
    Ok(DynkinData::new(diag, edge).expect("reflection preserves symmetry"))
}

#[allow(clippy::too_many_arguments)]
fn pair_label(d: &DynkinData, i: usize, j: usize, k: usize, cj: Case, ck: Case, aij: i64, aik: i64) -> Scalar {
    let qii = d.vertex(i);
    let ejk = d.edge(j, k);
    let eij = d.edge(i, j);
    let eik = d.edge(i, k);
    if qii.is_one() {
        return &(ejk * &eij.pow(-aik)) * &eik.pow(-aij);
    }
    match (cj, ck) {
        (Case::Power, Case::Power) => ejk.clone(),
        (Case::Power, Case::Root) => ejk * &(eik * &qii.inv()).pow(-aij),
        (Case::Root, Case::Power) => ejk * &(eij * &qii.inv()).pow(-aik),
        (Case::Root, Case::Root) => &(ejk * &qii.pow(2)) * &(eij * eik).pow(-aij),
        (Case::Unit, _) | (_, Case::Unit) => unreachable!("unit case needs q_ii = 1"),
    }
}

/// Matrix of `s_i`: column `j` is `α_j - a_ij α_i`.
pub fn simple_reflection_matrix(a: &CartanMatrix, i: usize) -> IntMatrix {
    let n = a.theta();
    let mut s: IntMatrix = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
    for j in 0..n {
        s[i][j] -= a.get(i, j);
    }
    s
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n).map(|r| (0..m).map(|c| (0..b.len()).map(|k| a[r][k] * b[k][c]).sum()).collect()).collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}
