//! One function per subcommand. Each returns the text report, the JSON
//! result and whether the answer was positive.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{CliError, Kind};
use crate::input::{InputDocument, Source};
use nichols_core::neighborhoods::WitnessData;
use nichols_core::weyl::{format_word, point_digest, RootVerdict};
use nichols_core::{
    classify, find_good_point, is_finite_dimensional_nichols, real_roots, reflect, verify_all_tables, CartanGraph, CartanMatrix,
    DynkinData, Limits, ScalarContext,
};

pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub positive: bool,
}

fn dynkin_json(d: &DynkinData) -> Value {
    let n = d.theta();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !d.edge(i, j).is_one() {
                edges.push(json!({ "i": i + 1, "j": j + 1, "label": d.edge(i, j).to_string() }));
            }
        }
    }
    json!({ "vertices": d.vertices().iter().map(ToString::to_string).collect::<Vec<_>>(), "edges": edges })
}

fn matrix_json(a: &CartanMatrix) -> Value {
    json!(a.rows())
}

fn inline_matrix(a: &CartanMatrix) -> String {
    let rows: Vec<String> =
        a.rows().iter().map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

pub fn cartan(doc: &InputDocument) -> Result<Outcome, CliError> {
    let a = doc.dynkin.cartan_matrix()?;
    let mut text = String::new();
    if let Source::Matrix(_) = doc.source {
        let _ = writeln!(text, "dynkin: {}", doc.dynkin);
    }
    let _ = writeln!(text, "{a}");
    Ok(Outcome {
        text,
        json: json!({ "theta": doc.theta(), "dynkin": dynkin_json(&doc.dynkin), "cartan": matrix_json(&a) }),
        positive: true,
    })
}

pub fn reflect_at(doc: &InputDocument, vertex: usize) -> Result<Outcome, CliError> {
    if vertex == 0 || vertex > doc.theta() {
        return Err(CliError::new(
            Kind::Validation,
            "VertexOutOfRange",
            format!("vertex {vertex} is out of range for rank {}", doc.theta()),
        ));
    }
    let r = reflect(&doc.dynkin, vertex - 1)?;
    let text = format!("r{vertex}: {r}\n");
    Ok(Outcome { text, json: json!({ "vertex": vertex, "input": dynkin_json(&doc.dynkin), "output": dynkin_json(&r) }), positive: true })
}

pub fn orbit(doc: &InputDocument, limits: &Limits) -> Result<(Outcome, CartanGraph), CliError> {
    let g = CartanGraph::build(&doc.dynkin, limits)?;
    let ex = g.exchange_graph();
    let mut text = String::new();
    let mut points = Vec::new();
    for (x, p) in g.points().iter().enumerate() {
        let word = format_word(g.word(x));
        let _ = writeln!(text, "point {} ({word}): {}", x + 1, p.dynkin);
        let _ = writeln!(text, "  cartan {}", inline_matrix(&p.cartan));
        points.push(json!({
            "index": x + 1,
            "id": point_digest(&p.key),
            "word": word,
            "dynkin": dynkin_json(&p.dynkin),
            "cartan": matrix_json(&p.cartan),
        }));
    }
    let mut edges = Vec::new();
    let _ = writeln!(text, "exchange graph: {} points, {} edges", g.len(), ex.edge_count());
    for ((x, y), labels) in &ex.edges {
        let l: Vec<usize> = labels.iter().map(|i| i + 1).collect();
        let shown: Vec<String> = l.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "  {} -{}- {}", x + 1, shown.join(","), y + 1);
        edges.push(json!({ "from": x + 1, "to": y + 1, "labels": l }));
    }
    let json = json!({ "points": points, "edges": edges });
    Ok((Outcome { text, json, positive: true }, g))
}

pub fn roots(doc: &InputDocument, limits: &Limits) -> Result<Outcome, CliError> {
    let g = CartanGraph::build(&doc.dynkin, limits)?;
    let r = real_roots(&g, limits);
    let (verdict, reason) = match &r.verdict {
        RootVerdict::Finite => ("finite", None),
        RootVerdict::ExceededBound(why) => ("exceeded_bound", Some(why.clone())),
    };
    let mut text = String::new();
    match &reason {
        None => {
            let noun = if g.len() == 1 { "point" } else { "points" };
            let _ = writeln!(text, "verdict: finite ({} {noun})", g.len());
        }
        Some(why) => {
            let _ = writeln!(text, "verdict: bound exceeded, presumed infinite ({why})");
        }
    }
    let mut points = Vec::new();
    for x in 0..g.len() {
        let pos: Vec<&Vec<i64>> = r.positive(x).collect();
        let _ = writeln!(text, "point {} ({}): {} positive roots", x + 1, format_word(g.word(x)), pos.len());
        if reason.is_none() {
            for b in &pos {
                let cells: Vec<String> = b.iter().map(ToString::to_string).collect();
                let _ = writeln!(text, "  ({})", cells.join(", "));
            }
        }
        points.push(json!({ "index": x + 1, "positive_count": pos.len(), "positive": pos }));
    }
    Ok(Outcome { text, json: json!({ "verdict": verdict, "reason": reason, "points": points }), positive: reason.is_none() })
}

pub fn classify_input(doc: &InputDocument, limits: &Limits) -> Result<Outcome, CliError> {
    let c = classify(&doc.dynkin, limits)?;
    let fd = is_finite_dimensional_nichols(&doc.dynkin, limits)?;
    let mut text = String::new();
    let rows = c.rows();
    if rows.is_empty() {
        let reason = match &c.verdict {
            nichols_core::Verdict::Infinite(why) => why.clone(),
            nichols_core::Verdict::Finite => String::new(),
        };
        let _ = writeln!(text, "verdict: not in the tables; root system not finite ({reason})");
    } else {
        let names: Vec<String> = rows.iter().map(|(id, heck)| format!("row {id} (heck row {heck})")).collect();
        let _ = writeln!(text, "verdict: finite root system, {}", names.join(", "));
        let _ = writeln!(text, "finite-dimensional Nichols algebra: {}", if fd { "yes" } else { "no" });
        for m in &c.matches {
            let _ = writeln!(text, "  {m}");
        }
    }
    let matches: Vec<Value> = c
        .matches
        .iter()
        .map(|m| {
            let assignment: serde_json::Map<String, Value> = m.assignment.iter().map(|(n, x)| (n.clone(), json!(x.to_string()))).collect();
            json!({
                "row": m.row_id,
                "heck_row": m.heck_row,
                "diagram": m.diagram + 1,
                "permutation": m.permutation.map(|v| v + 1),
                "assignment": assignment,
            })
        })
        .collect();
    let verdict = if c.is_finite() { "finite" } else { "infinite" };
    Ok(Outcome {
        text,
        json: json!({
            "verdict": verdict,
            "rows": rows.iter().map(|(id, heck)| json!({ "row": id, "heck_row": heck })).collect::<Vec<_>>(),
            "matches": matches,
            "finite_dimensional": fd,
        }),
        positive: !rows.is_empty(),
    })
}

pub fn good_neighborhood(doc: &InputDocument, limits: &Limits) -> Result<Outcome, CliError> {
    let g = CartanGraph::build(&doc.dynkin, limits)?;
    match find_good_point(&g)? {
        None => Ok(Outcome {
            text: format!("no good neighborhood among {} points\n", g.len()),
            json: json!({ "found": false, "points": g.len() }),
            positive: false,
        }),
        Some((x, w)) => {
            let word = format_word(g.word(x));
            let text = format!("point {} ({word}): {w}\n  {}\n", x + 1, g.point(x).dynkin);
            let data = match w.data {
                WitnessData::A3 { a, b, c, d } => json!({ "a": a, "b": b, "c": c, "d": d }),
                WitnessData::Single { a } => json!({ "a": a }),
            };
            Ok(Outcome {
                text,
                json: json!({
                    "found": true,
                    "point": x + 1,
                    "word": word,
                    "kind": w.kind.to_string(),
                    "permutation": w.permutation.map(|v| v + 1),
                    "data": data,
                }),
                positive: true,
            })
        }
    }
}

pub fn verify_tables(p: u64, limits: &Limits) -> Result<Outcome, CliError> {
    ScalarContext::new(p, &[], &[] as &[&str])
        .map_err(|e| CliError::new(Kind::Validation, crate::error::scalar_code(&e), e.to_string()))?;
    let report = verify_all_tables(p, limits)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for r in &report.rows {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let roots = r.positive_roots.map_or("-".to_string(), |n| n.to_string());
        let _ = writeln!(text, "{status} row {:<4} points {:>2}  positive roots {:>3}", r.row_id, r.points, roots);
        if let Some(w) = &r.witness {
            let _ = writeln!(text, "     good neighborhood at {w}");
        }
        for e in &r.errata {
            let _ = writeln!(text, "     erratum: {e}");
        }
        for f in &r.failures {
            let _ = writeln!(text, "     failure: {f}");
        }
        rows.push(json!({
            "row": r.row_id,
            "passed": r.passed(),
            "instantiations": r.instantiations,
            "points": r.points,
            "positive_roots": r.positive_roots,
            "witness": r.witness,
            "errata": r.errata,
            "failures": r.failures,
        }));
    }
    let _ = writeln!(text, "{}/{} rows pass for p = {p}", report.passed(), report.rows.len());
    Ok(Outcome {
        text,
        json: json!({ "p": p, "passed": report.passed(), "total": report.rows.len(), "rows": rows }),
        positive: report.all_passed(),
    })
}
