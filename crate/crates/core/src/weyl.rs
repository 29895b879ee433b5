//! Cartan graphs generated by reflections, their exchange graphs, real
//! roots and Weyl groupoid morphisms.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::braiding::{CartanMatrix, DynkinData};
use crate::reflections::{self, IntMatrix, ReflectError};

/// Search bounds. Exceeding any of them yields a bounded, not a proven, verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_points: usize,
    pub max_roots: usize,
    pub max_coeff: i64,
    pub morphism_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_points: 256, max_roots: 256, max_coeff: 100, morphism_cap: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("point reached by {} is not {}-finite (no Cartan entry a_{}{})", format_word(.word), .i + 1, .i + 1, .j + 1)]
    NotAdmitsAllReflections { word: Vec<usize>, i: usize, j: usize },
    #[error("more than {0} points in the orbit")]
    PointLimitExceeded(usize),
    #[error("semi-Cartan law fails at the point reached by {}, reflection {}", format_word(.word), .i + 1)]
    SemiCartanViolation { word: Vec<usize>, i: usize },
    #[error("more than {0} morphisms")]
    CapExceeded(usize),
    #[error("internal reflection failure at {}: {source}", format_word(.word))]
    Reflection { word: Vec<usize>, source: ReflectError },
}

/// `r_2 r_1` style rendering of a reflection word; the empty word is `base`.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "base".to_string();
    }
    word.iter().rev().map(|i| format!("r{}", i + 1)).collect::<Vec<_>>().join(" ")
}

/// An object of the Cartan graph.
#[derive(Debug, Clone)]
pub struct Point {
    pub key: String,
    pub dynkin: DynkinData,
    pub cartan: CartanMatrix,
}

/// Points with their Cartan matrices and the involutions `r_i`.
#[derive(Debug, Clone)]
pub struct CartanGraph {
    theta: usize,
    points: Vec<Point>,
    index: HashMap<String, usize>,
    /// `neighbors[x][i]` is `r_i(x)`.
    neighbors: Vec<Vec<usize>>,
    /// Reflection word from the base point; first letter applied first.
    words: Vec<Vec<usize>>,
}

impl CartanGraph {
    /// Orbit of `d` under all reflections, in breadth-first order from `d`.
    pub fn build(d: &DynkinData, limits: &Limits) -> Result<Self, WeylError> {
        let theta = d.theta();
        let mut g = CartanGraph { theta, points: Vec::new(), index: HashMap::new(), neighbors: Vec::new(), words: Vec::new() };
        g.insert(d.clone(), Vec::new())?;
        let mut next = 0;
        while next < g.points.len() {
            let x = next;
            next += 1;
            for i in 0..theta {
                let y = reflections::reflect(&g.points[x].dynkin, i)
                    .map_err(|source| WeylError::Reflection { word: g.words[x].clone(), source })?;
                let key = y.key();
                let target = match g.index.get(&key) {
                    Some(&t) => t,
                    None => {
                        if g.points.len() >= limits.max_points {
                            return Err(WeylError::PointLimitExceeded(limits.max_points));
                        }
                        let mut w = g.words[x].clone();
                        w.push(i);
                        g.insert(y, w)?
                    }
                };
                g.neighbors[x][i] = target;
            }
        }
        g.check_semi_cartan()?;
        Ok(g)
    }

    fn insert(&mut self, d: DynkinData, word: Vec<usize>) -> Result<usize, WeylError> {
        let cartan = d.cartan_matrix().map_err(|e| match e {
            crate::braiding::BraidingError::NotIFinite { i, j } => WeylError::NotAdmitsAllReflections { word: word.clone(), i, j },
            other => unreachable!("{other}"),
        })?;
        let key = d.key();
        let k = self.points.len();
        self.index.insert(key.clone(), k);
        self.points.push(Point { key, dynkin: d, cartan });
        self.neighbors.push(vec![k; self.theta]);
        self.words.push(word);
        Ok(k)
    }

    fn check_semi_cartan(&self) -> Result<(), WeylError> {
        for x in 0..self.points.len() {
            for i in 0..self.theta {
                let y = self.neighbors[x][i];
                if self.neighbors[y][i] != x || self.points[x].cartan.0[i] != self.points[y].cartan.0[i] {
                    return Err(WeylError::SemiCartanViolation { word: self.words[x].clone(), i });
                }
            }
        }
        Ok(())
    }

    /// Keep the first `n` points; reflections leaving them become loops.
    /// Only useful as a deliberately broken fixture.
    pub fn truncated(&self, n: usize) -> CartanGraph {
        let n = n.clamp(1, self.points.len());
        let points = self.points[..n].to_vec();
        let index = points.iter().enumerate().map(|(k, p)| (p.key.clone(), k)).collect();
        let neighbors = (0..n).map(|x| self.neighbors[x].iter().map(|&y| if y < n { y } else { x }).collect()).collect();
        CartanGraph { theta: self.theta, points, index, neighbors, words: self.words[..n].to_vec() }
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, x: usize) -> &Point {
        &self.points[x]
    }

    /// Index of the point with the given key.
    pub fn find(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// `r_i(x)`.
    pub fn reflect(&self, x: usize, i: usize) -> usize {
        self.neighbors[x][i]
    }

    /// Reflection word leading from the base point to `x`.
    pub fn word(&self, x: usize) -> &[usize] {
        &self.words[x]
    }

    /// `s_i` as a map into `x`, from `r_i(x)`.
    pub fn simple_reflection_into(&self, x: usize, i: usize) -> IntMatrix {
        reflections::simple_reflection_matrix(&self.points[self.neighbors[x][i]].cartan, i)
    }

    pub fn exchange_graph(&self) -> ExchangeGraph {
        let mut edges: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
        for x in 0..self.points.len() {
            for i in 0..self.theta {
                let y = self.neighbors[x][i];
                if x < y {
                    edges.entry((x, y)).or_default().insert(i);
                }
            }
        }
        ExchangeGraph { vertices: self.points.len(), edges }
    }
}

/// Labeled undirected graph with an `i`-edge between `X != r_i(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeGraph {
    pub vertices: usize,
    /// `(x, y)` with `x < y`, mapped to the 0-based reflection labels.
    pub edges: BTreeMap<(usize, usize), BTreeSet<usize>>,
}

impl ExchangeGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Graphviz rendering.
    pub fn to_dot(&self, graph: &CartanGraph) -> String {
        let mut out = String::from("graph exchange {\n");
        let names: Vec<String> = graph.points.iter().map(|p| point_digest(&p.key)).collect();
        for (p, name) in graph.points.iter().zip(&names) {
            let label = p.dynkin.to_string().replace('"', "\\\"");
            let _ = writeln!(out, "  \"{name}\" [label=\"{label}\"];");
        }
        for ((x, y), labels) in &self.edges {
            let l: Vec<String> = labels.iter().map(|i| (i + 1).to_string()).collect();
            let _ = writeln!(out, "  \"{}\" -- \"{}\" [label=\"{}\"];", names[*x], names[*y], l.join(","));
        }
        out.push_str("}\n");
        out
    }
}

/// Short stable identifier for a point key.
pub fn point_digest(key: &str) -> String {
    let h = Sha256::digest(key.as_bytes());
    let hex: String = h.iter().take(6).map(|b| format!("{b:02x}")).collect();
    format!("p{hex}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootVerdict {
    Finite,
    /// Some bound was hit; the root system is presumed infinite.
    ExceededBound(String),
}

/// Real roots at every point of a Cartan graph.
#[derive(Debug, Clone)]
pub struct RootSystemData {
    pub roots: Vec<BTreeSet<Vec<i64>>>,
    pub verdict: RootVerdict,
}

impl RootSystemData {
    pub fn is_finite(&self) -> bool {
        self.verdict == RootVerdict::Finite
    }

    pub fn positive(&self, x: usize) -> impl Iterator<Item = &Vec<i64>> {
        self.roots[x].iter().filter(|r| r.iter().all(|&c| c >= 0))
    }

    pub fn positive_count(&self, x: usize) -> usize {
        self.positive(x).count()
    }
}

fn unit(theta: usize, i: usize) -> Vec<i64> {
    (0..theta).map(|k| i64::from(k == i)).collect()
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|c| -c).collect()
}

/// Closure `Δ^X = {±α_i} ∪ ⋃_i s_i(Δ^{r_i X})`, iterated to a fixpoint.
pub fn real_roots(g: &CartanGraph, limits: &Limits) -> RootSystemData {
    let n = g.theta;
    let mut roots: Vec<BTreeSet<Vec<i64>>> = (0..g.len()).map(|_| (0..n).flat_map(|i| [unit(n, i), neg(&unit(n, i))]).collect()).collect();
    let mats: Vec<Vec<IntMatrix>> = (0..g.len()).map(|x| (0..n).map(|i| g.simple_reflection_into(x, i)).collect()).collect();
    let mut dirty: VecDeque<usize> = (0..g.len()).collect();
    let mut queued: HashSet<usize> = dirty.iter().copied().collect();
    while let Some(y) = dirty.pop_front() {
        queued.remove(&y);
        for i in 0..n {
            let x = g.neighbors[y][i];
            // s_i into x maps roots of r_i(x) = y
            let images: Vec<Vec<i64>> = roots[y].iter().map(|b| reflections::mat_vec(&mats[x][i], b)).collect();
            let mut grew = false;
            for r in images {
                if r.iter().any(|c| c.abs() > limits.max_coeff) {
                    return RootSystemData {
                        roots,
                        verdict: RootVerdict::ExceededBound(format!("coefficient above {}", limits.max_coeff)),
                    };
                }
                grew |= roots[x].insert(r);
            }
            if roots[x].len() > limits.max_roots {
                return RootSystemData {
                    roots,
                    verdict: RootVerdict::ExceededBound(format!("more than {} roots at one point", limits.max_roots)),
                };
            }
            if grew && queued.insert(x) {
                dirty.push_back(x);
            }
        }
    }
    RootSystemData { roots, verdict: RootVerdict::Finite }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: u8,
    pub point: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, axiom: u8, point: usize, detail: String) {
        self.violations.push(AxiomViolation { axiom, point, detail });
    }
}

fn sign_coherent(r: &[i64]) -> bool {
    r.iter().all(|&c| c >= 0) || r.iter().all(|&c| c <= 0)
}

/// `|Δ^X ∩ (ℕ₀α_m + ℕ₀α_n)|`.
fn rank_two_count(roots: &BTreeSet<Vec<i64>>, m: usize, n: usize) -> usize {
    roots.iter().filter(|r| r.iter().enumerate().all(|(k, &c)| if k == m || k == n { c >= 0 } else { c == 0 })).count()
}

fn alternate(g: &CartanGraph, x: usize, m: usize, n: usize, times: usize) -> usize {
    let mut y = x;
    for _ in 0..times {
        y = g.neighbors[y][n];
        y = g.neighbors[y][m];
    }
    y
}

fn sign_violations(g: &CartanGraph, r: &RootSystemData, report: &mut AxiomReport) {
    for x in 0..g.len() {
        if let Some(bad) = r.roots[x].iter().find(|b| !sign_coherent(b)) {
            report.push(1, x, format!("root {bad:?} is neither positive nor negative"));
        }
    }
}

fn period_violations(g: &CartanGraph, r: &RootSystemData, axiom: u8, report: &mut AxiomReport) {
    for x in 0..g.len() {
        for m in 0..g.theta {
            for n in m + 1..g.theta {
                let l = rank_two_count(&r.roots[x], m, n);
                if alternate(g, x, m, n, l) != x {
                    report.push(axiom, x, format!("(r{} r{})^{l} does not fix the point", m + 1, n + 1));
                }
            }
        }
    }
}

/// Cartan graph axioms: sign decomposition and the rank-two periods.
pub fn verify_cartan_graph_axioms(g: &CartanGraph, r: &RootSystemData) -> AxiomReport {
    let mut report = AxiomReport::default();
    if !r.is_finite() {
        report.push(0, 0, "root system is not finite".into());
        return report;
    }
    sign_violations(g, r, &mut report);
    period_violations(g, r, 2, &mut report);
    report
}

/// Root system axioms: sign decomposition, only ±α_i on the axes,
/// compatibility with the reflections, and the rank-two periods.
pub fn verify_root_system_axioms(g: &CartanGraph, r: &RootSystemData) -> AxiomReport {
    let mut report = AxiomReport::default();
    if !r.is_finite() {
        report.push(0, 0, "root system is not finite".into());
        return report;
    }
    let n = g.theta;
    sign_violations(g, r, &mut report);
    for x in 0..g.len() {
        for i in 0..n {
            let on_axis: Vec<&Vec<i64>> = r.roots[x].iter().filter(|b| b.iter().enumerate().all(|(k, &c)| k == i || c == 0)).collect();
            let expected = [neg(&unit(n, i)), unit(n, i)];
            if on_axis.len() != 2 || !on_axis.iter().all(|b| expected.contains(b)) {
                report.push(2, x, format!("multiples of α{} other than ±α{}", i + 1, i + 1));
            }
            let y = g.neighbors[x][i];
            let s = g.simple_reflection_into(y, i);
            let image: BTreeSet<Vec<i64>> = r.roots[x].iter().map(|b| reflections::mat_vec(&s, b)).collect();
            if image != r.roots[y] {
                report.push(3, x, format!("s{} does not carry the roots onto the neighbor's", i + 1));
            }
        }
    }
    period_violations(g, r, 4, &mut report);
    report
}

/// Edges where `s_i` fails to map `Δ^{r_i X}_+ \ {α_i}` onto `Δ^X_+ \ {α_i}`.
pub fn positive_root_bijection_violations(g: &CartanGraph, r: &RootSystemData) -> Vec<(usize, usize)> {
    let n = g.theta;
    let mut bad = Vec::new();
    for x in 0..g.len() {
        for i in 0..n {
            let y = g.neighbors[x][i];
            let ai = unit(n, i);
            let s = g.simple_reflection_into(x, i);
            let src: BTreeSet<Vec<i64>> = r.positive(y).filter(|b| **b != ai).map(|b| reflections::mat_vec(&s, b)).collect();
            let dst: BTreeSet<Vec<i64>> = r.positive(x).filter(|b| **b != ai).cloned().collect();
            if src != dst {
                bad.push((x, i));
            }
        }
    }
    bad
}

/// A morphism `source -> target` of the Weyl groupoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub matrix: IntMatrix,
}

/// All morphisms into `x`, found by extending words one reflection at a time.
pub fn enumerate_morphisms(g: &CartanGraph, x: usize, cap: usize) -> Result<Vec<Morphism>, WeylError> {
    let n = g.theta;
    let id: IntMatrix = (0..n).map(|i| unit(n, i)).collect();
    let mut seen: HashSet<(usize, IntMatrix)> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert((x, id.clone()));
    queue.push_back((x, id));
    while let Some((y, w)) = queue.pop_front() {
        out.push(Morphism { source: y, target: x, matrix: w.clone() });
        if out.len() > cap {
            return Err(WeylError::CapExceeded(cap));
        }
        for i in 0..n {
            let z = g.neighbors[y][i];
            let w2 = reflections::mat_mul(&w, &g.simple_reflection_into(y, i));
            if seen.insert((z, w2.clone())) {
                queue.push_back((z, w2));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupoidOrder {
    Finite(u64),
    ExceededBound,
}

/// Number of morphisms in the Weyl groupoid.
pub fn weyl_groupoid_order(g: &CartanGraph, cap: usize) -> GroupoidOrder {
    let mut total = 0u64;
    for x in 0..g.len() {
        match enumerate_morphisms(g, x, cap) {
            Ok(m) => total += m.len() as u64,
            Err(_) => return GroupoidOrder::ExceededBound,
        }
    }
    GroupoidOrder::Finite(total)
}
