//! Braiding matrices, Dynkin diagrams and generalized Cartan matrices.
//!
//! Vertex indices are 0-based throughout the API and 1-based in all
//! human-readable output.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::scalars::{Order, Scalar, ScalarContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidingError {
    #[error("braiding matrix is not square: row {row} has {len} entries, expected {theta}")]
    NotSquare { row: usize, len: usize, theta: usize },
    #[error("rank must be at least 1")]
    EmptyMatrix,
    #[error("edge labels are not symmetric at ({}, {})", .0 + 1, .1 + 1)]
    AsymmetricEdges(usize, usize),
    #[error("edge label at ({v}, {v}) must be 1", v = .0 + 1)]
    NontrivialLoop(usize),
    #[error("vertex {} is out of range for rank {theta}", .index + 1)]
    VertexOutOfRange { index: usize, theta: usize },
    #[error("not {}-finite: no Cartan entry a_{}{}", .i + 1, .i + 1, .j + 1)]
    NotIFinite { i: usize, j: usize },
    #[error("scalars belong to different contexts")]
    ContextMismatch,
}

/// A full braiding matrix `(q_ij)`.
#[derive(Debug, Clone)]
pub struct BraidingMatrix {
    ctx: Arc<ScalarContext>,
    entries: Vec<Vec<Scalar>>,
}

impl PartialEq for BraidingMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for BraidingMatrix {}

impl BraidingMatrix {
    pub fn new(entries: Vec<Vec<Scalar>>) -> Result<Self, BraidingError> {
        let theta = entries.len();
        let ctx = entries.first().and_then(|r| r.first()).ok_or(BraidingError::EmptyMatrix)?.context().clone();
        for (row, r) in entries.iter().enumerate() {
            if r.len() != theta {
                return Err(BraidingError::NotSquare { row, len: r.len(), theta });
            }
            if r.iter().any(|x| !Arc::ptr_eq(x.context(), &ctx)) {
                return Err(BraidingError::ContextMismatch);
            }
        }
        Ok(BraidingMatrix { ctx, entries })
    }

    pub fn theta(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    pub fn context(&self) -> &Arc<ScalarContext> {
        &self.ctx
    }

    /// Vertex labels `q_ii` and edge labels `q_ij q_ji`.
    pub fn to_dynkin(&self) -> DynkinData {
        let n = self.theta();
        let diag = (0..n).map(|i| self.entries[i][i].clone()).collect();
        let edge = (0..n)
            .map(|i| (0..n).map(|j| if i == j { self.ctx.one() } else { &self.entries[i][j] * &self.entries[j][i] }).collect())
            .collect();
        DynkinData { ctx: self.ctx.clone(), diag, edge }
    }
}

/// The Dynkin diagram of a diagonal braiding: vertex labels and a symmetric
/// matrix of edge labels with ones on the diagonal.
#[derive(Clone)]
pub struct DynkinData {
    ctx: Arc<ScalarContext>,
    diag: Vec<Scalar>,
    edge: Vec<Vec<Scalar>>,
}

impl PartialEq for DynkinData {
    fn eq(&self, other: &Self) -> bool {
        self.diag == other.diag && self.edge == other.edge
    }
}

impl Eq for DynkinData {}

impl std::hash::Hash for DynkinData {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.diag.hash(state);
        self.edge.hash(state);
    }
}

impl DynkinData {
    pub fn new(diag: Vec<Scalar>, edge: Vec<Vec<Scalar>>) -> Result<Self, BraidingError> {
        let theta = diag.len();
        let ctx = diag.first().ok_or(BraidingError::EmptyMatrix)?.context().clone();
        if diag.iter().any(|x| !Arc::ptr_eq(x.context(), &ctx)) {
            return Err(BraidingError::ContextMismatch);
        }
        if edge.len() != theta {
            return Err(BraidingError::NotSquare { row: edge.len(), len: 0, theta });
        }
        for (i, row) in edge.iter().enumerate() {
            if row.len() != theta {
                return Err(BraidingError::NotSquare { row: i, len: row.len(), theta });
            }
            for (j, x) in row.iter().enumerate() {
                if !Arc::ptr_eq(x.context(), &ctx) {
                    return Err(BraidingError::ContextMismatch);
                }
                if i == j && !x.is_one() {
                    return Err(BraidingError::NontrivialLoop(i));
                }
                if *x != edge[j][i] {
                    return Err(BraidingError::AsymmetricEdges(i, j));
                }
            }
        }
        Ok(DynkinData { ctx, diag, edge })
    }

    /// Build from vertex labels and a list of `(i, j, label)` edges; missing edges are 1.
    pub fn from_edges(diag: Vec<Scalar>, edges: &[(usize, usize, Scalar)]) -> Result<Self, BraidingError> {
        let theta = diag.len();
        let ctx = diag.first().ok_or(BraidingError::EmptyMatrix)?.context().clone();
        let mut edge = vec![vec![ctx.one(); theta]; theta];
        for (i, j, x) in edges {
            for v in [*i, *j] {
                if v >= theta {
                    return Err(BraidingError::VertexOutOfRange { index: v, theta });
                }
            }
            if i == j {
                return Err(BraidingError::NontrivialLoop(*i));
            }
            edge[*i][*j] = x.clone();
            edge[*j][*i] = x.clone();
        }
        DynkinData::new(diag, edge)
    }

    /// Three vertices in a row: `v1 -e12- v2 -e23- v3`.
    pub fn chain(v1: Scalar, e12: Scalar, v2: Scalar, e23: Scalar, v3: Scalar) -> Result<Self, BraidingError> {
        DynkinData::from_edges(vec![v1, v2, v3], &[(0, 1, e12), (1, 2, e23)])
    }

    pub fn triangle(v1: Scalar, v2: Scalar, v3: Scalar, e12: Scalar, e23: Scalar, e13: Scalar) -> Result<Self, BraidingError> {
        DynkinData::from_edges(vec![v1, v2, v3], &[(0, 1, e12), (1, 2, e23), (0, 2, e13)])
    }

    pub fn theta(&self) -> usize {
        self.diag.len()
    }

    pub fn context(&self) -> &Arc<ScalarContext> {
        &self.ctx
    }

    pub fn vertex(&self, i: usize) -> &Scalar {
        &self.diag[i]
    }

    pub fn edge(&self, i: usize, j: usize) -> &Scalar {
        &self.edge[i][j]
    }

    pub fn vertices(&self) -> &[Scalar] {
        &self.diag
    }

    /// Move vertex `v` to position `target[v]`.
    ///
    /// Panics if `target` is not a permutation of `0..theta`.
    pub fn relabel(&self, target: &[usize]) -> DynkinData {
        let n = self.theta();
        assert_eq!(target.len(), n);
        let mut seen = vec![false; n];
        for &t in target {
            assert!(t < n && !seen[t], "not a permutation");
            seen[t] = true;
        }
        let mut diag = self.diag.clone();
        let mut edge = self.edge.clone();
        for a in 0..n {
            diag[target[a]] = self.diag[a].clone();
            for b in 0..n {
                edge[target[a]][target[b]] = self.edge[a][b].clone();
            }
        }
        DynkinData { ctx: self.ctx.clone(), diag, edge }
    }

    /// Canonical string: vertex labels, then upper-triangle edge labels row by row.
    pub fn key(&self) -> String {
        let n = self.theta();
        let verts: Vec<String> = self.diag.iter().map(ToString::to_string).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push(self.edge[i][j].to_string());
            }
        }
        format!("{}|{}", verts.join(","), edges.join(","))
    }

    pub fn is_indecomposable(&self) -> bool {
        let n = self.theta();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if !seen[w] && !self.edge[v][w].is_one() {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `a_ij = -min{m : (m+1)_{q_ii} = 0 or q_ii^m q_ij q_ji = 1}`, if the minimum exists.
    pub fn cartan_entry(&self, i: usize, j: usize) -> Option<i64> {
        assert_ne!(i, j, "cartan_entry needs distinct vertices");
        let q = &self.diag[i];
        let from_qnum = if q.is_one() {
            match self.ctx.char_p() {
                0 => None,
                p => Some(p - 1),
            }
        } else {
            match q.order() {
                Order::Finite(n) => Some(n - 1),
                Order::Infinite => None,
            }
        };
        let from_edge = q.discrete_log(&self.edge[i][j].inv());
        let m = match (from_qnum, from_edge) {
            (Some(a), Some(b)) => a.min(b),
            (a, b) => a.or(b)?,
        };
        Some(-(m as i64))
    }

    pub fn i_finite(&self, i: usize) -> bool {
        (0..self.theta()).all(|j| j == i || self.cartan_entry(i, j).is_some())
    }

    pub fn cartan_matrix(&self) -> Result<CartanMatrix, BraidingError> {
        let n = self.theta();
        let mut a = vec![vec![2i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    a[i][j] = self.cartan_entry(i, j).ok_or(BraidingError::NotIFinite { i, j })?;
                }
            }
        }
        Ok(CartanMatrix(a))
    }

    /// Row `i` of the Cartan matrix.
    pub fn cartan_row(&self, i: usize) -> Result<Vec<i64>, BraidingError> {
        (0..self.theta()).map(|j| if i == j { Ok(2) } else { self.cartan_entry(i, j).ok_or(BraidingError::NotIFinite { i, j }) }).collect()
    }
}

impl fmt::Display for DynkinData {
    /// `vertices [v1, v2, v3]; edges 1-2: x, 2-3: y`, omitting trivial edges.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts: Vec<String> = self.diag.iter().map(ToString::to_string).collect();
        write!(f, "vertices [{}]; edges ", verts.join(", "))?;
        let n = self.theta();
        let mut any = false;
        for i in 0..n {
            for j in i + 1..n {
                if !self.edge[i][j].is_one() {
                    if any {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}-{}: {}", i + 1, j + 1, self.edge[i][j])?;
                    any = true;
                }
            }
        }
        if !any {
            f.write_str("none")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DynkinData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DynkinData({self})")
    }
}

/// A generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanMatrix(pub Vec<Vec<i64>>);

impl CartanMatrix {
    pub fn theta(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    /// `B_kl = A_{perm[k] perm[l]}`.
    pub fn permuted(&self, perm: &[usize]) -> CartanMatrix {
        CartanMatrix(perm.iter().map(|&k| perm.iter().map(|&l| self.0[k][l]).collect()).collect())
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.0.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            write!(f, "[{} ]", cells.join(""))?;
        }
        Ok(())
    }
}
