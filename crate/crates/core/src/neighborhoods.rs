//! Good A3, B3 and C3 neighborhoods of points in rank-three Cartan graphs.

use std::fmt;

use thiserror::Error;

use crate::braiding::CartanMatrix;
use crate::weyl::CartanGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NeighborhoodError {
    #[error("good neighborhoods are defined for rank 3, got rank {0}")]
    RankMismatch(usize),
    #[error("the Cartan graph is decomposable")]
    Decomposable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    A3,
    B3,
    C3,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::A3 => "A3",
            Kind::B3 => "B3",
            Kind::C3 => "C3",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WitnessData {
    A3 { a: i64, b: i64, c: i64, d: i64 },
    Single { a: i64 },
}

/// A good neighborhood together with the relabeling that exhibits it.
///
/// Position `k` of the definition corresponds to vertex `permutation[k]`
/// of the point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NeighborhoodWitness {
    pub kind: Kind,
    pub permutation: [usize; 3],
    pub data: WitnessData,
}

impl fmt::Display for NeighborhoodWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.permutation.map(|v| v + 1);
        write!(f, "{} via ({x} {y} {z}), ", self.kind)?;
        match self.data {
            WitnessData::A3 { a, b, c, d } => write!(f, "(a,b,c,d) = ({a},{b},{c},{d})"),
            WitnessData::Single { a } => write!(f, "a = {a}"),
        }
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

const A3_LIST: [(i64, i64, i64, i64); 6] = [(1, 0, 0, 1), (1, 1, 1, 1), (1, 1, 1, 2), (1, 1, 2, 3), (2, 1, 1, 2), (2, 1, 2, 2)];

fn m(rows: [[i64; 3]; 3]) -> CartanMatrix {
    CartanMatrix(rows.iter().map(|r| r.to_vec()).collect())
}

fn type_a() -> CartanMatrix {
    m([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
}

fn type_b() -> CartanMatrix {
    m([[2, -1, 0], [-1, 2, -1], [0, -2, 2]])
}

fn type_c() -> CartanMatrix {
    m([[2, -1, 0], [-1, 2, -2], [0, -1, 2]])
}

/// The graph seen through a relabeling of the vertex set.
struct View<'a> {
    g: &'a CartanGraph,
    perm: [usize; 3],
}

impl View<'_> {
    /// `r_k` in relabeled numbering.
    fn r(&self, x: usize, k: usize) -> usize {
        self.g.reflect(x, self.perm[k])
    }

    fn a(&self, x: usize) -> CartanMatrix {
        self.g.point(x).cartan.permuted(&self.perm)
    }
}

/// `A` equals `shape` except possibly at the listed free positions, whose
/// negated values are returned.
fn match_shape(a: &CartanMatrix, shape: &CartanMatrix, free: &[(usize, usize)]) -> Option<Vec<i64>> {
    for i in 0..3 {
        for j in 0..3 {
            if !free.contains(&(i, j)) && a.get(i, j) != shape.get(i, j) {
                return None;
            }
        }
    }
    Some(free.iter().map(|&(i, j)| -a.get(i, j)).collect())
}

fn check_a3(v: &View<'_>, x: usize) -> Option<WitnessData> {
    if v.a(x) != type_a() {
        return None;
    }
    let a = match_shape(&v.a(v.r(x, 0)), &type_a(), &[(1, 2)])?[0];
    let bc = match_shape(&v.a(v.r(x, 1)), &type_a(), &[(0, 2), (2, 0)])?;
    let d = match_shape(&v.a(v.r(x, 2)), &type_a(), &[(1, 0)])?[0];
    let data = (a, bc[0], bc[1], d);
    let ok = A3_LIST.contains(&data) || (data == (2, 1, 2, 3) && -v.a(v.r(v.r(x, 0), 2)).get(1, 0) == 3);
    ok.then_some(WitnessData::A3 { a, b: bc[0], c: bc[1], d })
}

fn check_b3(v: &View<'_>, x: usize) -> Option<WitnessData> {
    let b = type_b();
    if v.a(x) != b || v.a(v.r(x, 0)) != b || v.a(v.r(x, 1)) != b {
        return None;
    }
    let a = match_shape(&v.a(v.r(x, 2)), &b, &[(1, 0)])?[0];
    let side = -v.a(v.r(v.r(x, 2), 0)).get(1, 2);
    ((a == 1 || a == 2) && (side == 1 || side == 2)).then_some(WitnessData::Single { a })
}

fn check_c3(v: &View<'_>, x: usize) -> Option<WitnessData> {
    let c = type_c();
    if v.a(x) != c || v.a(v.r(x, 0)) != c || v.a(v.r(x, 1)) != c {
        return None;
    }
    let a = match_shape(&v.a(v.r(x, 2)), &c, &[(1, 0)])?[0];
    (a == 1 || a == 2).then_some(WitnessData::Single { a })
}

fn detect(
    g: &CartanGraph,
    x: usize,
    kind: Kind,
    check: fn(&View<'_>, usize) -> Option<WitnessData>,
) -> Result<Option<NeighborhoodWitness>, NeighborhoodError> {
    Ok(witnesses_of(g, x, kind, check)?.into_iter().next())
}

fn witnesses_of(
    g: &CartanGraph,
    x: usize,
    kind: Kind,
    check: fn(&View<'_>, usize) -> Option<WitnessData>,
) -> Result<Vec<NeighborhoodWitness>, NeighborhoodError> {
    if g.theta() != 3 {
        return Err(NeighborhoodError::RankMismatch(g.theta()));
    }
    Ok(PERMUTATIONS
        .iter()
        .filter_map(|&perm| check(&View { g, perm }, x).map(|data| NeighborhoodWitness { kind, permutation: perm, data }))
        .collect())
}

pub fn good_a3(g: &CartanGraph, x: usize) -> Result<Option<NeighborhoodWitness>, NeighborhoodError> {
    detect(g, x, Kind::A3, check_a3)
}

pub fn good_b3(g: &CartanGraph, x: usize) -> Result<Option<NeighborhoodWitness>, NeighborhoodError> {
    detect(g, x, Kind::B3, check_b3)
}

pub fn good_c3(g: &CartanGraph, x: usize) -> Result<Option<NeighborhoodWitness>, NeighborhoodError> {
    detect(g, x, Kind::C3, check_c3)
}

/// Every witness at `x`, sorted by kind and then permutation.
pub fn all_witnesses(g: &CartanGraph, x: usize) -> Result<Vec<NeighborhoodWitness>, NeighborhoodError> {
    let mut out = witnesses_of(g, x, Kind::A3, check_a3)?;
    out.extend(witnesses_of(g, x, Kind::B3, check_b3)?);
    out.extend(witnesses_of(g, x, Kind::C3, check_c3)?);
    Ok(out)
}

/// Least witness at `x` in the order A3 < B3 < C3, then permutation.
pub fn best_witness(g: &CartanGraph, x: usize) -> Result<Option<NeighborhoodWitness>, NeighborhoodError> {
    Ok(good_a3(g, x)?.or(good_b3(g, x)?).or(good_c3(g, x)?))
}

/// First point, in graph order, carrying a good neighborhood.
pub fn find_good_point(g: &CartanGraph) -> Result<Option<(usize, NeighborhoodWitness)>, NeighborhoodError> {
    if g.theta() != 3 {
        return Err(NeighborhoodError::RankMismatch(g.theta()));
    }
    if !cartan_indecomposable(&g.point(0).cartan) {
        return Err(NeighborhoodError::Decomposable);
    }
    for x in 0..g.len() {
        if let Some(w) = best_witness(g, x)? {
            return Ok(Some((x, w)));
        }
    }
    Ok(None)
}

fn cartan_indecomposable(a: &CartanMatrix) -> bool {
    let n = a.theta();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if !seen[w] && a.get(v, w) != 0 {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
