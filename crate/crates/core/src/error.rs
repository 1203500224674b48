use crate::witness::WitnessViolation;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{what} exceeds the {limit} cap (got {actual})")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("anchor {0} is not in the host graph")]
    AnchorNotInGraph(String),

    #[error("pattern has no edges; no copy can contain an edge anchor")]
    EdgelessPattern,

    #[error("host graph has no {0} anchors")]
    EmptyAnchorSet(&'static str),

    #[error("no clique of the requested order contains edge ({0}, {1})")]
    NoCliqueOnEdge(usize, usize),

    #[error("side set too small: need at least {needed}, have {got}")]
    SideSetTooSmall { needed: usize, got: usize },

    #[error("invalid witness: {}", format_violations(.0))]
    InvalidWitness(Vec<WitnessViolation>),
}

fn format_violations(violations: &[WitnessViolation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
