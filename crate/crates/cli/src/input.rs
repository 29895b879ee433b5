//! The TOML input document.

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{scalar_code, CliError, Kind, Location};
use nichols_core::{BraidingMatrix, DynkinData, Generator, Scalar, ScalarContext, ScalarError};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    p: Spanned<i64>,
    #[serde(default)]
    generator: Vec<RawGenerator>,
    #[serde(default)]
    relations: Vec<Spanned<String>>,
    matrix: Option<Spanned<Vec<Vec<Spanned<String>>>>>,
    dynkin: Option<Spanned<RawDynkin>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    name: Spanned<String>,
    order: Option<Spanned<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDynkin {
    vertices: Vec<Spanned<String>>,
    #[serde(default)]
    edges: BTreeMap<String, Spanned<String>>,
}

/// How the braiding was given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Matrix(BraidingMatrix),
    Dynkin,
}

/// A validated input file.
#[derive(Debug, Clone)]
pub struct InputDocument {
    pub p: u64,
    pub generators: Vec<Generator>,
    pub relations: Vec<String>,
    pub context: Arc<ScalarContext>,
    pub source: Source,
    pub dynkin: DynkinData,
}

impl InputDocument {
    pub fn theta(&self) -> usize {
        self.dynkin.theta()
    }
}

/// 1-based line and column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

struct Doc<'a> {
    text: &'a str,
}

impl Doc<'_> {
    fn loc(&self, span: Range<usize>, path: impl Into<String>) -> Location {
        let (line, column) = line_col(self.text, span.start);
        Location { line: Some(line), column: Some(column), path: Some(path.into()), word: None }
    }

    fn invalid(&self, code: &'static str, message: impl Into<String>, span: Range<usize>, path: impl Into<String>) -> CliError {
        CliError::new(Kind::Validation, code, message).with_location(self.loc(span, path))
    }

    /// Parse one expression; expression errors point at the offending
    /// character inside the string literal.
    fn expr(&self, ctx: &Arc<ScalarContext>, s: &Spanned<String>, path: String) -> Result<Scalar, CliError> {
        ctx.parse(s.get_ref()).map_err(|e| {
            let mut loc = self.loc(s.span(), path);
            if let ScalarError::Parse(pe) = &e {
                // skip the opening quote
                loc.column = loc.column.map(|c| c + pe.column);
            }
            CliError::new(Kind::Validation, scalar_code(&e), e.to_string()).with_location(loc)
        })
    }
}

/// Parse and validate an input document.
pub fn parse_input(text: &str) -> Result<InputDocument, CliError> {
    let raw: RawDocument = toml::from_str(text).map_err(|e| {
        let mut err = CliError::new(Kind::Syntax, "SyntaxError", e.message().trim().to_string());
        if let Some(span) = e.span() {
            let (line, column) = line_col(text, span.start);
            err = err.with_location(Location::at(line, column));
        }
        err
    })?;
    let doc = Doc { text };

    let p =
        u64::try_from(*raw.p.get_ref()).map_err(|_| doc.invalid("InvalidChar", "characteristic must be nonnegative", raw.p.span(), "p"))?;

    let mut generators = Vec::new();
    for (k, g) in raw.generator.iter().enumerate() {
        let order = match &g.order {
            None => None,
            Some(o) => Some(u64::try_from(*o.get_ref()).ok().filter(|n| *n > 0).ok_or_else(|| {
                doc.invalid("ZeroOrder", "generator order must be positive", o.span(), format!("generator[{}].order", k + 1))
            })?),
        };
        generators.push(Generator { name: g.name.get_ref().clone(), order });
    }
    let relations: Vec<String> = raw.relations.iter().map(|r| r.get_ref().clone()).collect();

    let context = ScalarContext::new(p, &generators, &relations).map_err(|e| {
        let code = scalar_code(&e);
        let base = CliError::new(Kind::Validation, code, e.to_string());
        match context_error_site(&raw, &e, p) {
            Some((span, path)) => base.with_location(doc.loc(span, path)),
            None => base,
        }
    })?;

    let (source, dynkin) = match (&raw.matrix, &raw.dynkin) {
        (Some(_), Some(d)) => {
            return Err(doc.invalid("ConflictingBraiding", "give either `matrix` or `[dynkin]`, not both", d.span(), "dynkin"));
        }
        (None, None) => {
            return Err(CliError::new(Kind::Validation, "MissingBraiding", "the input needs a `matrix` or a `[dynkin]` table"));
        }
        (Some(m), None) => {
            let rows = m.get_ref();
            let theta = rows.len();
            if theta == 0 {
                return Err(doc.invalid("EmptyMatrix", "the matrix has no rows", m.span(), "matrix"));
            }
            let mut entries = Vec::with_capacity(theta);
            for (i, row) in rows.iter().enumerate() {
                if row.len() != theta {
                    return Err(doc.invalid(
                        "NotSquare",
                        format!("matrix row {} has {} entries, expected {theta}", i + 1, row.len()),
                        m.span(),
                        format!("matrix[{}]", i + 1),
                    ));
                }
                let parsed = row
                    .iter()
                    .enumerate()
                    .map(|(j, s)| doc.expr(&context, s, format!("matrix[{}][{}]", i + 1, j + 1)))
                    .collect::<Result<Vec<_>, _>>()?;
                entries.push(parsed);
            }
            let matrix = BraidingMatrix::new(entries).map_err(|e| CliError::from(e).with_location(doc.loc(m.span(), "matrix")))?;
            let d = matrix.to_dynkin();
            (Source::Matrix(matrix), d)
        }
        (None, Some(d)) => {
            let raw_d = d.get_ref();
            let theta = raw_d.vertices.len();
            if theta == 0 {
                return Err(doc.invalid("EmptyMatrix", "`vertices` is empty", d.span(), "dynkin.vertices"));
            }
            let diag = raw_d
                .vertices
                .iter()
                .enumerate()
                .map(|(i, s)| doc.expr(&context, s, format!("dynkin.vertices[{}]", i + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            let mut edges = Vec::new();
            let mut seen = std::collections::BTreeSet::new();
            for (key, label) in &raw_d.edges {
                let path = format!("dynkin.edges.\"{key}\"");
                let (i, j) = parse_edge_key(key, theta).ok_or_else(|| {
                    doc.invalid(
                        "BadEdgeKey",
                        format!("edge key `{key}` must be `i-j` with distinct vertices 1..{theta}"),
                        label.span(),
                        &path,
                    )
                })?;
                if !seen.insert((i.min(j), i.max(j))) {
                    return Err(doc.invalid("DuplicateEdge", format!("edge {}-{} given twice", i + 1, j + 1), label.span(), &path));
                }
                edges.push((i, j, doc.expr(&context, label, path)?));
            }
            let dynkin = DynkinData::from_edges(diag, &edges).map_err(|e| CliError::from(e).with_location(doc.loc(d.span(), "dynkin")))?;
            (Source::Dynkin, dynkin)
        }
    };

    Ok(InputDocument { p, generators, relations, context, source, dynkin })
}

fn parse_edge_key(key: &str, theta: usize) -> Option<(usize, usize)> {
    let (a, b) = key.split_once('-')?;
    let i: usize = a.trim().parse().ok()?;
    let j: usize = b.trim().parse().ok()?;
    (i >= 1 && j >= 1 && i <= theta && j <= theta && i != j).then(|| (i - 1, j - 1))
}

/// Best guess at the input item responsible for a context error.
fn context_error_site(raw: &RawDocument, e: &ScalarError, p: u64) -> Option<(Range<usize>, String)> {
    let generator_named = |name: &str| {
        raw.generator.iter().position(|g| g.name.get_ref() == name).map(|k| (raw.generator[k].name.span(), format!("generator[{}]", k + 1)))
    };
    let relation_with = |needle: &str| {
        raw.relations.iter().position(|r| r.get_ref().contains(needle)).map(|k| (raw.relations[k].span(), format!("relations[{}]", k + 1)))
    };
    match e {
        ScalarError::InvalidChar(_) => Some((raw.p.span(), "p".into())),
        ScalarError::DuplicateGenerator(n) | ScalarError::InvalidGeneratorName(n) | ScalarError::ZeroOrder(n) => raw
            .generator
            .iter()
            .rposition(|g| g.name.get_ref() == n)
            .map(|k| (raw.generator[k].name.span(), format!("generator[{}]", k + 1))),
        ScalarError::UnknownGenerator(n) => relation_with(n),
        ScalarError::BadRelation { relation, .. } => relation_with(relation),
        ScalarError::Parse(pe) => relation_with(&pe.expr),
        ScalarError::TorsionDivisibleByP { .. } => raw
            .generator
            .iter()
            .find(|g| g.order.as_ref().is_some_and(|o| p > 0 && (*o.get_ref() as u64).is_multiple_of(p)))
            .and_then(|g| generator_named(g.name.get_ref())),
        _ => None,
    }
}
