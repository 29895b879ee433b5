//! The classification tables: parameterized diagram patterns per
//! characteristic, their exchange graphs, and classification of inputs by
//! matching against them.

mod unify;
mod verify;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Deserialize;
use thiserror::Error;

use crate::braiding::DynkinData;
use crate::scalars::{parse_word, Generator, Scalar, ScalarContext, ScalarError, Word};

pub use unify::{match_diagram, Match};
pub use verify::{
    classify, is_finite_dimensional_nichols, verify_all_tables, verify_row, ClassifyResult, RowReport, TablesReport, Verdict,
};

/// The embedded table data.
pub const TABLES_TOML: &str = include_str!("../../data/tables.toml");

const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("the tables cover positive characteristic only")]
    UnsupportedChar,
    #[error("classification needs rank 3, got rank {0}")]
    RankMismatch(usize),
    #[error("input diagram is decomposable")]
    DecomposableInput,
    #[error("table lookup and root system disagree: {0}")]
    InternalTableMismatch(String),
    #[error("bad table data: {0}")]
    Data(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharClass {
    Two,
    Three,
    Greater,
}

impl CharClass {
    pub fn of(p: u64) -> Result<CharClass, TableError> {
        match p {
            0 => Err(TableError::UnsupportedChar),
            2 => Ok(CharClass::Two),
            3 => Ok(CharClass::Three),
            _ => Ok(CharClass::Greater),
        }
    }

    fn parse(s: &str) -> Option<CharClass> {
        match s {
            "2" => Some(CharClass::Two),
            "3" => Some(CharClass::Three),
            ">3" => Some(CharClass::Greater),
            _ => None,
        }
    }
}

impl fmt::Display for CharClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CharClass::Two => "p=2",
            CharClass::Three => "p=3",
            CharClass::Greater => "p>3",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamKind {
    /// Generic parameter; must avoid the listed multiplicative orders.
    Free { not_orders: Vec<u64> },
    /// Primitive root of unity of one of the listed orders.
    PrimitiveRoot { orders: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub kind: ParamKind,
}

/// A diagram pattern: labels are signed monomials in the row's parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternDiagram {
    pub vertices: [Word; 3],
    /// Symmetric; the diagonal is unused.
    pub edges: [[Word; 3]; 3],
    pub triangle: bool,
}

impl PatternDiagram {
    pub fn instantiate(&self, ctx: &Arc<ScalarContext>, assignment: &HashMap<String, Scalar>) -> DynkinData {
        let eval = |w: &Word| eval_word(ctx, w, assignment);
        let diag = self.vertices.iter().map(eval).collect();
        let edge = (0..3).map(|i| (0..3).map(|j| if i == j { ctx.one() } else { eval(&self.edges[i][j]) }).collect()).collect();
        DynkinData::new(diag, edge).expect("patterns are symmetric")
    }

    /// The six label slots in the order vertices, then edges 1-2, 2-3, 1-3.
    pub fn slots(&self) -> [(&Word, Slot); 6] {
        [
            (&self.vertices[0], Slot::Vertex(0)),
            (&self.vertices[1], Slot::Vertex(1)),
            (&self.vertices[2], Slot::Vertex(2)),
            (&self.edges[0][1], Slot::Edge(0, 1)),
            (&self.edges[1][2], Slot::Edge(1, 2)),
            (&self.edges[0][2], Slot::Edge(0, 2)),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Vertex(usize),
    Edge(usize, usize),
}

pub(crate) fn eval_word(ctx: &Arc<ScalarContext>, w: &Word, assignment: &HashMap<String, Scalar>) -> Scalar {
    let mut x = if w.negative { ctx.minus_one() } else { ctx.one() };
    for (name, e) in &w.factors {
        x = &x * &assignment[name].pow(*e);
    }
    x
}

/// A vertex of a printed exchange graph: diagram `diagram` relabeled by `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExchangeVertex {
    /// 0-based diagram index within the row.
    pub diagram: usize,
    /// Vertex `v` of the diagram moves to position `tau[v]`.
    pub tau: [usize; 3],
}

impl fmt::Display for ExchangeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tau != [0, 1, 2] {
            let [a, b, c] = self.tau.map(|t| t + 1);
            write!(f, "tau{a}{b}{c} ")?;
        }
        write!(f, "D{}", self.diagram + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeErratum {
    /// 0-based index into the printed edge list.
    pub edge: usize,
    pub label: usize,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexErratum {
    pub vertex: usize,
    pub replacement: ExchangeVertex,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exchange {
    /// As printed.
    pub vertices: Vec<ExchangeVertex>,
    /// As printed: `(from, to, label)`, 0-based vertices and labels.
    pub edges: Vec<(usize, usize, usize)>,
    pub edge_errata: Vec<EdgeErratum>,
    pub vertex_errata: Vec<VertexErratum>,
}

impl Exchange {
    /// Vertices with errata applied.
    pub fn corrected_vertices(&self) -> Vec<ExchangeVertex> {
        let mut v = self.vertices.clone();
        for e in &self.vertex_errata {
            v[e.vertex] = e.replacement;
        }
        v
    }

    /// Edges with errata applied.
    pub fn corrected_edges(&self) -> Vec<(usize, usize, usize)> {
        let mut v = self.edges.clone();
        for e in &self.edge_errata {
            v[e.edge].2 = e.label;
        }
        v
    }

    pub fn notes(&self) -> Vec<String> {
        let v = self.vertex_errata.iter().map(|e| format!("vertex {}: {}", e.vertex + 1, e.note));
        let e = self.edge_errata.iter().map(|e| format!("edge {}: {}", e.edge + 1, e.note));
        v.chain(e).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub char_class: CharClass,
    pub id: String,
    pub heck_row: u32,
    pub params: Vec<Param>,
    /// Monomials required to equal 1.
    pub relations: Vec<Word>,
    /// Parameter pairs required to differ.
    pub distinct: Vec<(String, String)>,
    pub diagrams: Vec<PatternDiagram>,
    pub exchange: Exchange,
}

/// A concrete realization of a row's parameters.
#[derive(Debug, Clone)]
pub struct Instantiation {
    pub label: String,
    pub ctx: Arc<ScalarContext>,
    pub assignment: HashMap<String, Scalar>,
}

impl TableRow {
    /// One realization per choice of root orders: free parameters become
    /// free generators, roots of unity generators of the chosen order.
    pub fn instantiations(&self, p: u64) -> Result<Vec<Instantiation>, ScalarError> {
        let mut choices: Vec<Vec<(String, Option<u64>)>> = vec![Vec::new()];
        for param in &self.params {
            let options: Vec<Option<u64>> = match &param.kind {
                ParamKind::Free { .. } => vec![None],
                ParamKind::PrimitiveRoot { orders } => orders.iter().map(|&n| Some(n)).collect(),
            };
            choices = choices
                .into_iter()
                .flat_map(|c| {
                    options.iter().map(move |o| {
                        let mut c = c.clone();
                        c.push((param.name.clone(), *o));
                        c
                    })
                })
                .collect();
        }
        let relations: Vec<String> = self.relations.iter().map(word_to_string).collect();
        choices
            .into_iter()
            .map(|choice| {
                let gens: Vec<Generator> = choice.iter().map(|(n, o)| Generator { name: n.clone(), order: *o }).collect();
                let ctx = ScalarContext::new(p, &gens, &relations)?;
                let assignment =
                    gens.iter().map(|g| Ok((g.name.clone(), ctx.generator(&g.name)?))).collect::<Result<HashMap<_, _>, ScalarError>>()?;
                let label = choice.iter().filter_map(|(n, o)| o.map(|o| format!("{n} in G'_{o}"))).collect::<Vec<_>>().join(", ");
                Ok(Instantiation { label, ctx, assignment })
            })
            .collect()
    }

    /// The diagram printed at exchange-graph vertex `v`, instantiated.
    pub fn vertex_diagram(&self, v: &ExchangeVertex, inst: &Instantiation) -> DynkinData {
        self.diagrams[v.diagram].instantiate(&inst.ctx, &inst.assignment).relabel(&v.tau)
    }
}

pub(crate) fn word_to_string(w: &Word) -> String {
    let mut parts: Vec<String> = w.factors.iter().map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") }).collect();
    if parts.is_empty() {
        parts.push("1".into());
    }
    let body = parts.join("*");
    if w.negative {
        format!("-{body}")
    } else {
        body
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format_version: u32,
    row: Vec<RawRow>,
    exchange: Vec<RawExchange>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    char: String,
    id: String,
    heck_row: u32,
    params: Vec<RawParam>,
    #[serde(default)]
    relations: Vec<String>,
    #[serde(default)]
    distinct: Vec<(String, String)>,
    diagrams: Vec<RawDiagram>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParam {
    name: String,
    not_orders: Option<Vec<u64>>,
    orders: Option<Vec<u64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    chain: Option<[String; 5]>,
    triangle: Option<[String; 6]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExchange {
    row: String,
    vertices: Vec<String>,
    edges: Vec<[usize; 3]>,
    #[serde(default)]
    edge_errata: Vec<RawEdgeErratum>,
    #[serde(default)]
    vertex_errata: Vec<RawVertexErratum>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdgeErratum {
    edge: usize,
    label: usize,
    note: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertexErratum {
    vertex: usize,
    replacement: String,
    note: String,
}

fn data_err(row: &str, msg: impl fmt::Display) -> TableError {
    TableError::Data(format!("row {row}: {msg}"))
}

fn parse_label(row: &str, s: &str, params: &[Param]) -> Result<Word, TableError> {
    let w = parse_word(s).map_err(|e| data_err(row, e))?;
    if let Some((n, _)) = w.factors.iter().find(|(n, _)| !params.iter().any(|p| p.name == *n)) {
        return Err(data_err(row, format!("undeclared parameter `{n}`")));
    }
    Ok(w)
}

fn parse_vertex(row: &str, s: &str, diagrams: usize) -> Result<ExchangeVertex, TableError> {
    let bad = || data_err(row, format!("bad exchange vertex `{s}`"));
    let (tau, d) = match s.split_once(' ') {
        Some((t, d)) => {
            let digits = t.strip_prefix("tau").ok_or_else(bad)?;
            let v: Vec<usize> = digits.chars().map(|c| c.to_digit(10).map(|x| x as usize)).collect::<Option<_>>().ok_or_else(bad)?;
            if v.len() != 3 || (0..3).any(|k| !v.contains(&(k + 1))) {
                return Err(bad());
            }
            ([v[0] - 1, v[1] - 1, v[2] - 1], d)
        }
        None => ([0, 1, 2], s),
    };
    let l: usize = d.strip_prefix('D').and_then(|x| x.parse().ok()).ok_or_else(bad)?;
    if l == 0 || l > diagrams {
        return Err(bad());
    }
    Ok(ExchangeVertex { diagram: l - 1, tau })
}

/// Parse a tables file.
pub fn parse_tables(text: &str) -> Result<Vec<TableRow>, TableError> {
    let raw: RawFile = toml::from_str(text).map_err(|e| TableError::Data(e.to_string()))?;
    if raw.format_version != FORMAT_VERSION {
        return Err(TableError::Data(format!("unsupported format_version {}", raw.format_version)));
    }
    let mut exchanges: HashMap<String, RawExchange> = HashMap::new();
    for e in raw.exchange {
        let id = e.row.clone();
        if exchanges.insert(id.clone(), e).is_some() {
            return Err(data_err(&id, "duplicate exchange graph"));
        }
    }
    let mut rows = Vec::new();
    for r in raw.row {
        let id = r.id.clone();
        let char_class = CharClass::parse(&r.char).ok_or_else(|| data_err(&id, format!("bad char `{}`", r.char)))?;
        let params: Vec<Param> = r
            .params
            .into_iter()
            .map(|p| {
                let kind = match (p.not_orders, p.orders) {
                    (Some(not_orders), None) => ParamKind::Free { not_orders },
                    (None, Some(orders)) if !orders.is_empty() => ParamKind::PrimitiveRoot { orders },
                    _ => return Err(data_err(&id, format!("parameter `{}` needs exactly one of not_orders, orders", p.name))),
                };
                Ok(Param { name: p.name, kind })
            })
            .collect::<Result<_, _>>()?;
        let relations = r.relations.iter().map(|s| parse_label(&id, s, &params)).collect::<Result<_, _>>()?;
        for (a, b) in &r.distinct {
            for n in [a, b] {
                if !params.iter().any(|p| p.name == *n) {
                    return Err(data_err(&id, format!("undeclared parameter `{n}`")));
                }
            }
        }
        let mut diagrams = Vec::new();
        for d in &r.diagrams {
            let (labels, triangle): (Vec<&String>, bool) = match (&d.chain, &d.triangle) {
                (Some(c), None) => (c.iter().collect(), false),
                (None, Some(t)) => (t.iter().collect(), true),
                _ => return Err(data_err(&id, "diagram needs exactly one of chain, triangle")),
            };
            let w: Vec<Word> = labels.iter().map(|s| parse_label(&id, s, &params)).collect::<Result<_, _>>()?;
            let one = Word { negative: false, factors: Vec::new() };
            let (verts, e12, e23, e13) = if triangle {
                ([w[0].clone(), w[1].clone(), w[2].clone()], w[3].clone(), w[4].clone(), w[5].clone())
            } else {
                ([w[0].clone(), w[2].clone(), w[4].clone()], w[1].clone(), w[3].clone(), one.clone())
            };
            let edges = [[one.clone(), e12.clone(), e13.clone()], [e12, one.clone(), e23.clone()], [e13, e23, one]];
            diagrams.push(PatternDiagram { vertices: verts, edges, triangle });
        }
        let ex = exchanges.get(&id).ok_or_else(|| data_err(&id, "no exchange graph"))?;
        let vertices: Vec<ExchangeVertex> = ex.vertices.iter().map(|s| parse_vertex(&id, s, diagrams.len())).collect::<Result<_, _>>()?;
        let n = vertices.len();
        let edges: Vec<(usize, usize, usize)> = ex
            .edges
            .iter()
            .map(|&[a, b, l]| {
                if a == 0 || b == 0 || a > n || b > n || a == b || !(1..=3).contains(&l) {
                    Err(data_err(&id, format!("bad exchange edge [{a}, {b}, {l}]")))
                } else {
                    Ok((a - 1, b - 1, l - 1))
                }
            })
            .collect::<Result<_, _>>()?;
        let edge_errata = ex
            .edge_errata
            .iter()
            .map(|e| {
                if e.edge == 0 || e.edge > edges.len() || !(1..=3).contains(&e.label) {
                    return Err(data_err(&id, "bad edge erratum"));
                }
                Ok(EdgeErratum { edge: e.edge - 1, label: e.label - 1, note: e.note.clone() })
            })
            .collect::<Result<_, _>>()?;
        let vertex_errata = ex
            .vertex_errata
            .iter()
            .map(|e| {
                if e.vertex == 0 || e.vertex > n {
                    return Err(data_err(&id, "bad vertex erratum"));
                }
                let replacement = parse_vertex(&id, &e.replacement, diagrams.len())?;
                Ok(VertexErratum { vertex: e.vertex - 1, replacement, note: e.note.clone() })
            })
            .collect::<Result<_, _>>()?;
        rows.push(TableRow {
            char_class,
            id,
            heck_row: r.heck_row,
            params,
            relations,
            distinct: r.distinct,
            diagrams,
            exchange: Exchange { vertices, edges, edge_errata, vertex_errata },
        });
    }
    Ok(rows)
}

fn all_rows() -> &'static [TableRow] {
    static ROWS: OnceLock<Vec<TableRow>> = OnceLock::new();
    ROWS.get_or_init(|| parse_tables(TABLES_TOML).expect("embedded tables are well formed"))
}

/// Rows of the table for characteristic `p`.
pub fn builtin_rows(p: u64) -> Result<Vec<&'static TableRow>, TableError> {
    let class = CharClass::of(p)?;
    Ok(all_rows().iter().filter(|r| r.char_class == class).collect())
}
