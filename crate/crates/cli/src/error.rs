use richgeom::arrangement::ArrangementError;
use richgeom::cuttings::CuttingError;
use richgeom::exactgeom::GeomError;
use richgeom::extremal::ExtremalError;
use richgeom::lemmalab::LemmaError;
use richgeom::richmaps::RichError;

/// Usage, parse and I/O failures exit with 1; errors raised by the library
/// (guards, violated hypotheses, degenerate inputs) exit with 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("{kind} error: {message}")]
    Library { kind: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library { .. } => 2,
            _ => 1,
        }
    }
}

fn guard_or(kind: &'static str, guard: bool, message: String) -> CliError {
    CliError::Library {
        kind: if guard { "guard" } else { kind },
        message,
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        guard_or(
            "geometry",
            matches!(e, GeomError::GuardExceeded { .. }),
            e.to_string(),
        )
    }
}

impl From<RichError> for CliError {
    fn from(e: RichError) -> Self {
        let guard = matches!(
            e,
            RichError::GuardExceeded { .. } | RichError::Geom(GeomError::GuardExceeded { .. })
        );
        guard_or("census", guard, e.to_string())
    }
}

impl From<ArrangementError> for CliError {
    fn from(e: ArrangementError) -> Self {
        CliError::Library {
            kind: "arrangement",
            message: e.to_string(),
        }
    }
}

impl From<CuttingError> for CliError {
    fn from(e: CuttingError) -> Self {
        CliError::Library {
            kind: "cutting",
            message: e.to_string(),
        }
    }
}

impl From<ExtremalError> for CliError {
    fn from(e: ExtremalError) -> Self {
        CliError::Library {
            kind: "construction",
            message: e.to_string(),
        }
    }
}

impl From<LemmaError> for CliError {
    fn from(e: LemmaError) -> Self {
        match e {
            LemmaError::Rich(r) => r.into(),
            LemmaError::HypothesisViolated(m) => CliError::Library {
                kind: "hypothesis",
                message: m,
            },
            other => CliError::Library {
                kind: "lemma",
                message: other.to_string(),
            },
        }
    }
}
