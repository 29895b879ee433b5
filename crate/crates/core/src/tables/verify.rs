//! Classification of inputs and the self-check of the tables against the
//! reflection engine.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{builtin_rows, match_diagram, CharClass, Match, TableError, TableRow};
use crate::braiding::DynkinData;
use crate::neighborhoods;
use crate::weyl::{self, CartanGraph, Limits, RootSystemData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// All reflections exist and the root system closed within bounds.
    Finite,
    /// Reflections fail or a bound was hit.
    Infinite(String),
}

#[derive(Debug, Clone)]
pub struct ClassifyResult {
    pub matches: Vec<Match>,
    pub verdict: Verdict,
    pub graph: Option<CartanGraph>,
    pub roots: Option<RootSystemData>,
}

impl ClassifyResult {
    /// Distinct matched rows, in table order.
    pub fn rows(&self) -> Vec<(&str, u32)> {
        let mut out: Vec<(&str, u32)> = Vec::new();
        for m in &self.matches {
            if !out.iter().any(|(id, _)| *id == m.row_id) {
                out.push((&m.row_id, m.heck_row));
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.verdict == Verdict::Finite
    }
}

/// Look `d` up in the tables and, independently, decide finiteness of its
/// root system. The two answers must agree.
pub fn classify(d: &DynkinData, limits: &Limits) -> Result<ClassifyResult, TableError> {
    CharClass::of(d.context().char_p())?;
    if d.theta() != 3 {
        return Err(TableError::RankMismatch(d.theta()));
    }
    if !d.is_indecomposable() {
        return Err(TableError::DecomposableInput);
    }
    let matches = match_diagram(d)?;
    let (verdict, graph, roots) = match CartanGraph::build(d, limits) {
        Err(e) => (Verdict::Infinite(e.to_string()), None, None),
        Ok(g) => {
            let r = weyl::real_roots(&g, limits);
            let v = match &r.verdict {
                weyl::RootVerdict::Finite => Verdict::Finite,
                weyl::RootVerdict::ExceededBound(why) => Verdict::Infinite(format!("root closure: {why}")),
            };
            (v, Some(g), Some(r))
        }
    };
    let finite = verdict == Verdict::Finite;
    if finite == matches.is_empty() {
        let detail = if finite {
            format!("{d} has a finite root system but matches no row")
        } else {
            format!("{d} matches {} but its root system is not finite", matches[0])
        };
        return Err(TableError::InternalTableMismatch(detail));
    }
    Ok(ClassifyResult { matches, verdict, graph, roots })
}

/// Whether the Nichols algebra of `d` is finite dimensional: the diagram is
/// in the tables and every vertex label is a root of unity.
pub fn is_finite_dimensional_nichols(d: &DynkinData, limits: &Limits) -> Result<bool, TableError> {
    let c = classify(d, limits)?;
    Ok(!c.matches.is_empty() && d.vertices().iter().all(|q| q.order().is_finite()))
}

/// Outcome of checking one table row against the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReport {
    pub char_class: CharClass,
    pub row_id: String,
    pub instantiations: Vec<String>,
    pub points: usize,
    pub positive_roots: Option<usize>,
    pub witness: Option<String>,
    pub failures: Vec<String>,
    /// Corrections applied to the printed exchange graph.
    pub errata: Vec<String>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TablesReport {
    pub p: u64,
    pub rows: Vec<RowReport>,
}

impl TablesReport {
    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.rows.len()
    }
}

/// Check one row in characteristic `p`: orbit diagrams, exchange graph,
/// classification round trip, good neighborhood and both axiom systems.
pub fn verify_row(row: &TableRow, p: u64, limits: &Limits) -> RowReport {
    let mut report = RowReport {
        char_class: row.char_class,
        row_id: row.id.clone(),
        instantiations: Vec::new(),
        points: 0,
        positive_roots: None,
        witness: None,
        failures: Vec::new(),
        errata: row.exchange.notes(),
    };
    let insts = match row.instantiations(p) {
        Ok(i) => i,
        Err(e) => {
            report.failures.push(format!("cannot instantiate: {e}"));
            return report;
        }
    };
    for inst in insts {
        let tag = if inst.label.is_empty() { String::new() } else { format!("[{}] ", inst.label) };
        report.instantiations.push(inst.label.clone());
        let mut fail = |m: String| report.failures.push(format!("{tag}{m}"));
        let base = row.diagrams[0].instantiate(&inst.ctx, &inst.assignment);
        let g = match CartanGraph::build(&base, limits) {
            Ok(g) => g,
            Err(e) => {
                fail(format!("orbit: {e}"));
                continue;
            }
        };
        let vertices = row.exchange.corrected_vertices();
        let mut mapped = Vec::with_capacity(vertices.len());
        for v in &vertices {
            let d = row.vertex_diagram(v, &inst);
            match g.find(&d.key()) {
                Some(x) => mapped.push(x),
                None => fail(format!("{v} = {d} is not in the orbit")),
            }
        }
        let used: BTreeSet<usize> = vertices.iter().map(|v| v.diagram).collect();
        if used.len() != row.diagrams.len() {
            fail("exchange graph does not use every diagram of the row".into());
        }
        if mapped.len() == vertices.len() {
            if mapped.iter().collect::<BTreeSet<_>>().len() != mapped.len() {
                fail("two exchange vertices name the same point".into());
            }
            if g.len() != vertices.len() {
                fail(format!("orbit has {} points, exchange graph {}", g.len(), vertices.len()));
            }
            let mut expected: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
            for (a, b, l) in row.exchange.corrected_edges() {
                let (x, y) = (mapped[a], mapped[b]);
                expected.entry((x.min(y), x.max(y))).or_default().insert(l);
            }
            let actual = g.exchange_graph().edges;
            if expected != actual {
                fail(format!("exchange edges differ: expected {}, computed {}", describe(&expected, &mapped), describe(&actual, &mapped)));
            }
        }
        let roots = weyl::real_roots(&g, limits);
        if !roots.is_finite() {
            fail("root system exceeded the bounds".into());
            continue;
        }
        report.points = g.len();
        report.positive_roots = Some(roots.positive_count(0));
        for (x, point) in g.points().iter().enumerate() {
            match super::classify(&point.dynkin, limits) {
                Ok(c) if c.matches.iter().any(|m| m.row_id == row.id) => {}
                Ok(_) => fail(format!("point {} does not classify as row {}", x + 1, row.id)),
                Err(e) => fail(format!("point {}: {e}", x + 1)),
            }
        }
        match neighborhoods::find_good_point(&g) {
            Ok(Some((x, w))) => report.witness = Some(format!("point {}: {w}", x + 1)),
            Ok(None) => fail("no point with a good neighborhood".into()),
            Err(e) => fail(e.to_string()),
        }
        for v in weyl::verify_cartan_graph_axioms(&g, &roots).violations {
            fail(format!("Cartan graph axiom ({}) at point {}: {}", v.axiom, v.point + 1, v.detail));
        }
        for v in weyl::verify_root_system_axioms(&g, &roots).violations {
            fail(format!("root system axiom ({}) at point {}: {}", v.axiom, v.point + 1, v.detail));
        }
    }
    report
}

fn describe(edges: &BTreeMap<(usize, usize), BTreeSet<usize>>, mapped: &[usize]) -> String {
    let name = |x: &usize| mapped.iter().position(|m| m == x).map_or(format!("p{}", x + 1), |k| format!("v{}", k + 1));
    let parts: Vec<String> = edges
        .iter()
        .map(|((a, b), ls)| {
            let l: Vec<String> = ls.iter().map(|l| (l + 1).to_string()).collect();
            format!("{}-{}:{}", name(a), name(b), l.join(","))
        })
        .collect();
    format!("[{}]", parts.join(" "))
}

/// Run [`verify_row`] on every row of the table for `p`, in parallel.
pub fn verify_all_tables(p: u64, limits: &Limits) -> Result<TablesReport, TableError> {
    let rows = builtin_rows(p)?;
    let reports = rows.par_iter().map(|r| verify_row(r, p, limits)).collect();
    Ok(TablesReport { p, rows: reports })
}
