use serde_json::{json, Value};
use thiserror::Error;

use nichols_core::{BraidingError, NeighborhoodError, ReflectError, ScalarError, TableError, WeylError};

/// Broad error category; decides the exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// The input file is not well-formed TOML.
    Syntax,
    /// Well-formed input that the engine cannot accept.
    Validation,
    /// The engine ran and gave a negative answer.
    Negative,
    /// The tables and the root system computation disagree.
    Internal,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Syntax => "SyntaxError",
            Kind::Validation => "ValidationError",
            Kind::Negative => "EngineNegative",
            Kind::Internal => "InternalError",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Kind::Negative => 1,
            Kind::Syntax | Kind::Validation => 2,
            Kind::Internal => 3,
        }
    }
}

/// Where in the input an error sits.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Location {
    pub line: Option<usize>,
    pub column: Option<usize>,
    /// Key path such as `matrix[2][1]`.
    pub path: Option<String>,
    /// Reflection word leading to the offending point.
    pub word: Option<String>,
}

impl Location {
    pub fn at(line: usize, column: usize) -> Self {
        Location { line: Some(line), column: Some(column), ..Default::default() }
    }

    pub fn word(word: String) -> Self {
        Location { word: Some(word), ..Default::default() }
    }

    fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(p) = &self.path {
            parts.push(p.clone());
        }
        match (self.line, self.column) {
            (Some(l), Some(c)) => parts.push(format!("line {l}, column {c}")),
            (Some(l), None) => parts.push(format!("line {l}")),
            _ => {}
        }
        if let Some(w) = &self.word {
            parts.push(format!("reflection word {w}"));
        }
        parts.join(", ")
    }

    fn to_json(&self) -> Value {
        json!({ "line": self.line, "column": self.column, "path": self.path, "word": self.word })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}[{code}]: {message}{}", kind.name(), location.as_ref().map(|l| format!(" ({})", l.describe())).unwrap_or_default())]
pub struct CliError {
    pub kind: Kind,
    /// Stable machine-readable code.
    pub code: &'static str,
    pub message: String,
    pub location: Option<Box<Location>>,
}

impl CliError {
    pub fn new(kind: Kind, code: &'static str, message: impl Into<String>) -> Self {
        CliError { kind, code, message: message.into(), location: None }
    }

    pub fn with_location(mut self, location: Location) -> Self {
        self.location = Some(Box::new(location));
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "code": self.code,
            "message": self.message,
            "location": self.location.as_ref().map(|l| l.to_json()),
        })
    }
}

pub fn scalar_code(e: &ScalarError) -> &'static str {
    match e {
        ScalarError::InvalidChar(_) => "InvalidChar",
        ScalarError::TorsionDivisibleByP { .. } => "TorsionDivisibleByP",
        ScalarError::BadRelation { .. } => "BadRelation",
        ScalarError::UnknownGenerator(_) => "UnknownGenerator",
        ScalarError::DuplicateGenerator(_) => "DuplicateGenerator",
        ScalarError::InvalidGeneratorName(_) => "InvalidGeneratorName",
        ScalarError::ZeroOrder(_) => "ZeroOrder",
        ScalarError::NonCyclicTorsion(_) => "NonCyclicTorsion",
        ScalarError::MinusOneTrivial => "MinusOneTrivial",
        ScalarError::TorsionTooLarge => "TorsionTooLarge",
        ScalarError::Parse(_) => "ExpressionSyntax",
        ScalarError::ContextMismatch
        | ScalarError::FieldMismatch { .. }
        | ScalarError::MissingAssignment(_)
        | ScalarError::AssignmentViolatesRelations(_) => "ScalarError",
    }
}

impl From<BraidingError> for CliError {
    fn from(e: BraidingError) -> Self {
        let (kind, code) = match e {
            BraidingError::NotIFinite { .. } => (Kind::Negative, "NotIFinite"),
            BraidingError::NotSquare { .. } => (Kind::Validation, "NotSquare"),
            BraidingError::EmptyMatrix => (Kind::Validation, "EmptyMatrix"),
            BraidingError::AsymmetricEdges(..) => (Kind::Validation, "AsymmetricEdges"),
            BraidingError::NontrivialLoop(_) => (Kind::Validation, "NontrivialLoop"),
            BraidingError::VertexOutOfRange { .. } => (Kind::Validation, "VertexOutOfRange"),
            BraidingError::ContextMismatch => (Kind::Validation, "ContextMismatch"),
        };
        CliError::new(kind, code, e.to_string())
    }
}

impl From<ReflectError> for CliError {
    fn from(e: ReflectError) -> Self {
        let (kind, code) = match e {
            ReflectError::NotIFinite { .. } => (Kind::Negative, "NotIFinite"),
            ReflectError::VertexOutOfRange { .. } => (Kind::Validation, "VertexOutOfRange"),
            ReflectError::CaseExhaustion { .. } => (Kind::Internal, "CaseExhaustion"),
        };
        CliError::new(kind, code, e.to_string())
    }
}

impl From<WeylError> for CliError {
    fn from(e: WeylError) -> Self {
        let message = e.to_string();
        match e {
            WeylError::NotAdmitsAllReflections { word, .. } => {
                CliError::new(Kind::Negative, "NotIFinite", message).with_location(Location::word(nichols_core::weyl::format_word(&word)))
            }
            WeylError::PointLimitExceeded(_) => CliError::new(Kind::Negative, "PointLimitExceeded", message),
            WeylError::CapExceeded(_) => CliError::new(Kind::Negative, "MorphismCapExceeded", message),
            WeylError::SemiCartanViolation { word, .. } => CliError::new(Kind::Internal, "SemiCartanViolation", message)
                .with_location(Location::word(nichols_core::weyl::format_word(&word))),
            WeylError::Reflection { word, .. } => CliError::new(Kind::Internal, "ReflectionFailure", message)
                .with_location(Location::word(nichols_core::weyl::format_word(&word))),
        }
    }
}

impl From<TableError> for CliError {
    fn from(e: TableError) -> Self {
        let (kind, code) = match e {
            TableError::UnsupportedChar => (Kind::Validation, "UnsupportedChar"),
            TableError::RankMismatch(_) => (Kind::Validation, "RankMismatch"),
            TableError::DecomposableInput => (Kind::Validation, "DecomposableInput"),
            TableError::InternalTableMismatch(_) => (Kind::Internal, "InternalTableMismatch"),
            TableError::Data(_) => (Kind::Internal, "TableData"),
        };
        CliError::new(kind, code, e.to_string())
    }
}

impl From<NeighborhoodError> for CliError {
    fn from(e: NeighborhoodError) -> Self {
        let code = match e {
            NeighborhoodError::RankMismatch(_) => "RankMismatch",
            NeighborhoodError::Decomposable => "DecomposableInput",
        };
        CliError::new(Kind::Validation, code, e.to_string())
    }
}
